//! Raw representation of tower elements.
//!
//! An element at level `L` is a polynomial in the `L`-th generator whose
//! coefficients live strictly below `L`. Elements are always stored at the
//! lowest level that contains them, so structural equality is field
//! equality.

use num_traits::{One, Zero};

use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Elem {
    Rat(Rational),
    /// `coeffs.len()` is in `2..=deg(minpoly_level)` and the last entry is
    /// nonzero.
    Alg {
        level: usize,
        coeffs: Vec<Elem>,
    },
}

/// Minimal polynomial of one generator: monic, low degree first, with
/// coefficients strictly below the generator's level.
pub(crate) type MinPoly = Vec<Elem>;

/// Lookup of minimal polynomials by level.
pub(crate) trait Gens {
    fn minpoly(&self, level: usize) -> &[Elem];
}

impl Gens for Vec<MinPoly> {
    fn minpoly(&self, level: usize) -> &[Elem] {
        &self[level]
    }
}

impl Elem {
    pub fn zero() -> Elem {
        Elem::Rat(Rational::zero())
    }

    pub fn one() -> Elem {
        Elem::Rat(Rational::one())
    }

    #[cfg(test)]
    pub fn int(n: i64) -> Elem {
        Elem::Rat(Rational::from_integer(n.into()))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Elem::Rat(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Elem::Rat(q) if q.is_one())
    }

    /// Number of generators needed to express the element.
    pub fn height(&self) -> usize {
        match self {
            Elem::Rat(_) => 0,
            Elem::Alg { level, .. } => level + 1,
        }
    }

    /// The element as a polynomial in generator `level` (which must be at
    /// least the element's own level).
    pub fn coeffs_at(&self, level: usize) -> Vec<Elem> {
        match self {
            Elem::Alg { level: l, coeffs } if *l == level => coeffs.clone(),
            other => vec![other.clone()],
        }
    }

    pub fn normalize(level: usize, mut coeffs: Vec<Elem>) -> Elem {
        while coeffs.last().is_some_and(Elem::is_zero) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => Elem::zero(),
            1 => coeffs.pop().unwrap(),
            _ => Elem::Alg { level, coeffs },
        }
    }

    pub fn neg(&self) -> Elem {
        match self {
            Elem::Rat(q) => Elem::Rat(-q),
            Elem::Alg { level, coeffs } => Elem::Alg {
                level: *level,
                coeffs: coeffs.iter().map(Elem::neg).collect(),
            },
        }
    }

    pub fn add(&self, other: &Elem) -> Elem {
        match (self, other) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a + b),
            _ => {
                let level = self.height().max(other.height()) - 1;
                let a = self.coeffs_at(level);
                let b = other.coeffs_at(level);
                let n = a.len().max(b.len());
                let sum = (0..n)
                    .map(|i| match (a.get(i), b.get(i)) {
                        (Some(x), Some(y)) => x.add(y),
                        (Some(x), None) | (None, Some(x)) => x.clone(),
                        (None, None) => unreachable!(),
                    })
                    .collect();
                Elem::normalize(level, sum)
            }
        }
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        self.add(&other.neg())
    }

    pub fn mul<G: Gens + ?Sized>(&self, other: &Elem, gens: &G) -> Elem {
        match (self, other) {
            (Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a * b),
            _ => {
                let (ha, hb) = (self.height(), other.height());
                let level = ha.max(hb) - 1;
                if ha != hb {
                    // One side is a scalar with respect to `level`.
                    let (scalar, poly) = if ha < hb {
                        (self, other)
                    } else {
                        (other, self)
                    };
                    let coeffs = poly
                        .coeffs_at(level)
                        .iter()
                        .map(|c| c.mul(scalar, gens))
                        .collect();
                    return Elem::normalize(level, coeffs);
                }
                let a = self.coeffs_at(level);
                let b = other.coeffs_at(level);
                let prod = poly_mul(&a, &b, gens);
                Elem::normalize(level, reduce(prod, gens.minpoly(level), gens))
            }
        }
    }

    pub fn inv<G: Gens + ?Sized>(&self, gens: &G) -> Option<Elem> {
        match self {
            Elem::Rat(q) => (!q.is_zero()).then(|| Elem::Rat(q.recip())),
            Elem::Alg { level, coeffs } => {
                let level = *level;
                // Extended Euclid against the minimal polynomial over the
                // sub-tower; the last nonzero remainder is a unit.
                let mut r0 = gens.minpoly(level).to_vec();
                let mut r1 = coeffs.clone();
                let mut s0: Vec<Elem> = Vec::new();
                let mut s1: Vec<Elem> = vec![Elem::one()];
                while r1.len() > 1 {
                    let (q, r) = poly_divrem(&r0, &r1, gens);
                    r0 = std::mem::replace(&mut r1, r);
                    let qs = poly_mul(&q, &s1, gens);
                    let s = poly_sub(&s0, &qs);
                    s0 = std::mem::replace(&mut s1, s);
                }
                let c = r1.first()?.inv(gens)?;
                let scaled = s1.iter().map(|x| x.mul(&c, gens)).collect();
                Some(Elem::normalize(
                    level,
                    reduce(scaled, gens.minpoly(level), gens),
                ))
            }
        }
    }
}

fn trim(mut p: Vec<Elem>) -> Vec<Elem> {
    while p.last().is_some_and(Elem::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn poly_mul<G: Gens + ?Sized>(a: &[Elem], b: &[Elem], gens: &G) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Elem::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y, gens));
        }
    }
    trim(out)
}

fn poly_sub(a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len().max(b.len());
    let zero = Elem::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero).sub(b.get(i).unwrap_or(&zero)))
            .collect(),
    )
}

fn poly_divrem<G: Gens + ?Sized>(a: &[Elem], d: &[Elem], gens: &G) -> (Vec<Elem>, Vec<Elem>) {
    let d = trim(d.to_vec());
    let dd = d.len() - 1;
    let inv = d[dd].inv(gens).expect("nonzero leading coefficient");
    let mut rem = trim(a.to_vec());
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Elem::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].mul(&inv, gens);
        if c.is_zero() {
            continue;
        }
        for (j, dj) in d.iter().enumerate() {
            rem[k + j] = rem[k + j].sub(&c.mul(dj, gens));
        }
        quot[k] = c;
    }
    rem.truncate(dd);
    (trim(quot), trim(rem))
}

/// Reduces a polynomial in a generator modulo its monic minimal polynomial.
pub(crate) fn reduce<G: Gens + ?Sized>(mut p: Vec<Elem>, minpoly: &[Elem], gens: &G) -> Vec<Elem> {
    let d = minpoly.len() - 1;
    while p.len() > d {
        let top = p.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = p.len() - d;
        for (j, mj) in minpoly.iter().take(d).enumerate() {
            p[shift + j] = p[shift + j].sub(&top.mul(mj, gens));
        }
    }
    trim(p)
}
