//! Factorization of squarefree primitive integer polynomials: factor modulo
//! a small prime, Hensel-lift, then recombine subsets of the lifted factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{self, PolyP};

pub(crate) type IntPoly = Vec<BigInt>;

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn reduce_mod_p(f: &[BigInt], p: u64) -> PolyP {
    let pb = BigInt::from(p);
    let mut out: PolyP = f
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Primes `p >= 5` not dividing the leading coefficient for which
/// `f mod p` stays squarefree (equivalently `p` does not divide the
/// discriminant), in increasing order.
pub(crate) fn good_primes(f: &[BigInt]) -> impl Iterator<Item = u64> + '_ {
    let n = f.len() - 1;
    (5u64..).filter(|&p| is_prime(p)).filter(move |&p| {
        let fp = reduce_mod_p(f, p);
        if fp.len() != n + 1 {
            return false;
        }
        let g = modp::gcd(&fp, &modp::derivative(&fp, p), p);
        g.len() == 1
    })
}

#[cfg(test)]
pub(crate) fn choose_prime(f: &[BigInt]) -> u64 {
    good_primes(f).next().unwrap()
}

/// Number of good primes tried; the one giving the fewest modular factors
/// is used, since recombination is exponential in that count.
const PRIME_TRIALS: usize = 8;

fn to_big(a: &[u64]) -> IntPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn mul_int(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn mod_poly(a: &[BigInt], m: &BigInt) -> IntPoly {
    a.iter().map(|c| c.mod_floor(m)).collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Lifts `target = g * h (mod p)` to `mod p^k`, where `g` is monic and
/// `h` has leading coefficient `lc(target)`. Returns `(G, H)` with
/// `target = G * H (mod p^k)`, `G` monic.
fn hensel_step_pair(target: &[BigInt], g: &[u64], h: &[u64], p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (one, s, t) = modp::ext_gcd(g, h, p);
    debug_assert_eq!(one, vec![1]);
    let pb = BigInt::from(p);
    let modulus = pb.pow(k);
    let mut big_g = to_big(g);
    let mut big_h = to_big(h);
    *big_h.last_mut().unwrap() = target.last().unwrap().mod_floor(&modulus);
    let mut pk = pb.clone();
    for _ in 1..k {
        let pk1 = &pk * &pb;
        let prod = mul_int(&big_g, &big_h);
        let n = target.len().max(prod.len());
        let e: IntPoly = (0..n)
            .map(|i| {
                let a = target.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                (a - b).mod_floor(&pk1)
            })
            .collect();
        debug_assert!(e.iter().all(|c| c.is_multiple_of(&pk)));
        let e_bar = reduce_mod_p(&e.iter().map(|c| c / &pk).collect::<Vec<_>>(), p);
        let te = modp::mul(&t, &e_bar, p);
        let (q, dg) = modp::div_rem(&te, g, p);
        let dh = modp::add(&modp::mul(&s, &e_bar, p), &modp::mul(&q, h, p), p);
        for (i, c) in dg.iter().enumerate() {
            big_g[i] += &pk * BigInt::from(*c);
        }
        for (i, c) in dh.iter().enumerate() {
            big_h[i] += &pk * BigInt::from(*c);
        }
        big_g = mod_poly(&big_g, &pk1);
        big_h = mod_poly(&big_h, &pk1);
        pk = pk1;
    }
    (big_g, big_h)
}

/// Lifts `f = lc * prod factors (mod p)` to monic factors modulo `p^k`.
fn multifactor_lift(f: &[BigInt], factors: &[PolyP], p: u64, k: u32) -> Vec<IntPoly> {
    let modulus = BigInt::from(p).pow(k);
    let lc = f.last().unwrap().clone();
    if factors.len() == 1 {
        let inv = mod_inverse(&lc, &modulus);
        return vec![mod_poly(
            &f.iter().map(|c| c * &inv).collect::<Vec<_>>(),
            &modulus,
        )];
    }
    let lc_p = lc.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let rest = factors[1..]
        .iter()
        .fold(vec![lc_p], |acc, g| modp::mul(&acc, g, p));
    let (g, h) = hensel_step_pair(f, &factors[0], &rest, p, k);
    let mut out = vec![g];
    out.extend(multifactor_lift(&h, &factors[1..], p, k));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> IntPoly {
    let half = m / 2;
    a.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

pub(crate) fn content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

pub(crate) fn primitive(f: &[BigInt]) -> IntPoly {
    let c = content(f);
    let sign = if f.last().is_some_and(|x| x.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let mut out: IntPoly = f.iter().map(|x| x / &c * &sign).collect();
    while out.last().is_some_and(|x| x.is_zero()) {
        out.pop();
    }
    out
}

/// Exact quotient over `Z` when `d` divides `f`. Gives up at the first
/// leading coefficient that does not divide, which rejects most false
/// candidates after a step or two.
fn divides(f: &[BigInt], d: &[BigInt]) -> Option<IntPoly> {
    let (n, m) = (f.len(), d.len());
    if m > n {
        return None;
    }
    if !d[0].is_zero() && !(&f[0] % &d[0]).is_zero() {
        return None;
    }
    let lc = d.last().unwrap();
    let mut r = f.to_vec();
    let mut q = vec![BigInt::zero(); n - m + 1];
    for i in (0..=n - m).rev() {
        let (c, rem) = r[i + m - 1].div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, x) in d.iter().enumerate() {
                r[i + j] -= &c * x;
            }
        }
        q[i] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
fn next_subset(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Irreducible factors over `Z` of a squarefree primitive `f` with
/// positive leading coefficient.
pub(crate) fn factor_squarefree(f: &[BigInt]) -> Vec<IntPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let mut best: Option<(u64, Vec<PolyP>)> = None;
    for p in good_primes(f).take(PRIME_TRIALS) {
        let modular = modp::berlekamp(&modp::monic(&reduce_mod_p(f, p), p), p);
        if modular.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| modular.len() < b.len()) {
            best = Some((p, modular));
        }
    }
    let (p, modular) = best.expect("some prime is good");
    let lc = f.last().unwrap();
    // Any factor of lc * f has coefficients below lc * 2^n * (n+1) * |f|_inf.
    let norm = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = lc.abs() * (BigInt::one() << n) * BigInt::from(n + 1) * norm * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    while pb.pow(k) <= bound {
        k += 1;
    }
    let modulus = pb.pow(k);
    let mut lifted = multifactor_lift(f, &modular, p, k);

    let mut remaining = f.to_vec();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let lc_cur = remaining.last().unwrap().clone();
        // The constant term of a true factor times lc divides lc * f(0).
        let target = &lc_cur * &remaining[0];
        let mut idx: Vec<usize> = (0..size).collect();
        let mut hit = None;
        loop {
            let c0 = idx.iter().fold(lc_cur.clone(), |acc, &i| {
                (acc * &lifted[i][0]).mod_floor(&modulus)
            });
            let c0 = symmetric(&[c0], &modulus).pop().unwrap_or_default();
            let plausible = target.is_zero() || (!c0.is_zero() && (&target % &c0).is_zero());
            if plausible {
                let cand = idx.iter().fold(vec![lc_cur.clone()], |acc, &i| {
                    mod_poly(&mul_int(&acc, &lifted[i]), &modulus)
                });
                let cand = primitive(&symmetric(&cand, &modulus));
                if let Some(q) = divides(&remaining, &cand) {
                    hit = Some((idx.clone(), cand, q));
                    break;
                }
            }
            if !next_subset(&mut idx, lifted.len()) {
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                remaining = q;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    if remaining.len() > 1 {
        found.push(primitive(&remaining));
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(cs: &[i64]) -> IntPoly {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn product(fs: &[IntPoly]) -> IntPoly {
        fs.iter().fold(ip(&[1]), |acc, f| mul_int(&acc, f))
    }

    #[test]
    fn prime_choice_skips_bad_primes() {
        // t^2 + 1 is squarefree mod 5; 5 does not divide lc.
        assert_eq!(choose_prime(&ip(&[1, 0, 1])), 5);
        // 5 t^2 + 1: lc divisible by 5 -> 7
        assert_eq!(choose_prime(&ip(&[1, 0, 5])), 7);
        // t^2 - 5: discriminant 20 divisible by 5 -> 7
        assert_eq!(choose_prime(&ip(&[-5, 0, 1])), 7);
    }

    #[test]
    fn subsets_in_order() {
        let mut idx = vec![0, 1];
        let mut seen = vec![idx.clone()];
        while next_subset(&mut idx, 4) {
            seen.push(idx.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 + 1 is irreducible over Z but splits modulo every prime.
        let f = ip(&[1, 0, 0, 0, 1]);
        assert_eq!(factor_squarefree(&f), vec![f]);
    }

    #[test]
    fn non_monic_product() {
        let a = ip(&[1, 0, 3]); // 3x^2 + 1
        let b = ip(&[-1, 2]); // 2x - 1
        let c = ip(&[5, 1, 1]); // x^2 + x + 5
        let f = product(&[a.clone(), b.clone(), c.clone()]);
        let mut got = factor_squarefree(&f);
        got.sort();
        let mut want = vec![a, b, c];
        want.sort();
        assert_eq!(got, want);
    }
}
