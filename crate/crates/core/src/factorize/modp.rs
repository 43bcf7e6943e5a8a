//! Dense polynomials over `F_p` for a small prime `p`, with Berlekamp
//! factorization. Coefficients are low degree first, trimmed.

pub(crate) type PolyP = Vec<u64>;

fn trim(mut a: PolyP) -> PolyP {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime: a^(p-2)
    pow_mod(a % p, p - 2, p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub(crate) fn add(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % p)
            .collect(),
    )
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0) % p) % p)
            .collect(),
    )
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> PolyP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub(crate) fn scale(a: &[u64], c: u64, p: u64) -> PolyP {
    trim(a.iter().map(|&x| x * c % p).collect())
}

pub(crate) fn div_rem(a: &[u64], d: &[u64], p: u64) -> (PolyP, PolyP) {
    let d = trim(d.to_vec());
    let dd = d.len() - 1;
    let inv = inv_mod(d[dd], p);
    let mut rem = trim(a.to_vec());
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0u64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd] * inv % p;
        if c == 0 {
            continue;
        }
        for (j, &dj) in d.iter().enumerate() {
            rem[k + j] = (rem[k + j] + p - c * dj % p) % p;
        }
        quot[k] = c;
    }
    rem.truncate(dd);
    (trim(quot), trim(rem))
}

pub(crate) fn monic(a: &[u64], p: u64) -> PolyP {
    match a.last() {
        Some(&lc) => scale(a, inv_mod(lc, p), p),
        None => Vec::new(),
    }
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = div_rem(&a, &b, p).1;
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(g, s, t)` with `s a + t b = g` monic.
pub(crate) fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (PolyP, PolyP, PolyP) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = inv_mod(*r0.last().unwrap_or(&1), p);
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

pub(crate) fn derivative(a: &[u64], p: u64) -> PolyP {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * (i as u64 % p) % p)
            .collect(),
    )
}

fn pow_rem(base: &[u64], mut e: u64, m: &[u64], p: u64) -> PolyP {
    let mut acc = vec![1u64];
    let mut b = div_rem(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = div_rem(&mul(&acc, &b, p), m, p).1;
        }
        b = div_rem(&mul(&b, &b, p), m, p).1;
        e >>= 1;
    }
    acc
}

/// Kernel of a matrix over `F_p` (rows given), as basis vectors.
fn nullspace(mut rows: Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..ncols {
                    rows[k][j] = (rows[k][j] + p - f * rows[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - rows[i][free]) % p;
        }
        basis.push(v);
    }
    basis
}

/// Monic irreducible factors of a monic squarefree `f` over `F_p`
/// (Berlekamp). Deterministic.
pub(crate) fn berlekamp(f: &[u64], p: u64) -> Vec<PolyP> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // Row i holds x^(i p) mod f; the Berlekamp subalgebra is the kernel of
    // (Q - I)^T.
    let xp = pow_rem(&[0, 1], p, f, p);
    let mut q = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for _ in 0..n {
        let mut row = cur.clone();
        row.resize(n, 0);
        q.push(row);
        cur = div_rem(&mul(&cur, &xp, p), f, p).1;
    }
    let mut m = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let v = (q[i][j] + if i == j { p - 1 } else { 0 }) % p;
            m[j][i] = v;
        }
    }
    let basis = nullspace(m, n, p);
    let r = basis.len();
    let mut factors = vec![f.to_vec()];
    for h in basis.iter().map(|v| trim(v.clone())) {
        if factors.len() == r {
            break;
        }
        if h.len() <= 1 {
            continue;
        }
        let mut next = Vec::new();
        for g in factors {
            if g.len() <= 2 {
                next.push(g);
                continue;
            }
            let mut rest = g;
            for s in 0..p {
                if rest.len() <= 2 {
                    break;
                }
                let hs = sub(&h, &[s], p);
                let d = gcd(&rest, &hs, p);
                if d.len() > 1 && d.len() < rest.len() {
                    rest = monic(&div_rem(&rest, &d, p).0, p);
                    next.push(d);
                }
            }
            next.push(rest);
        }
        factors = next;
    }
    factors.sort();
    factors
}
