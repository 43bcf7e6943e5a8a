//! Univariate factorization over `Q` and over number-field towers, and the
//! factor-extend loop that adjoins all roots of a polynomial.

mod modp;
mod trager;
mod zassenhaus;

use std::cmp::Ordering;
use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::numfield::{Embedding, FieldElement, Tower};
use crate::poly::UniPoly;
use crate::scalar::{Field, Rational};

/// `f / gcd(f, f')`, monic.
pub fn squarefree_part<K: Field>(f: &UniPoly<K>) -> Result<UniPoly<K>> {
    if f.is_zero() {
        return Err(Error::InvalidInput(
            "squarefree part of the zero polynomial".into(),
        ));
    }
    Ok(f.squarefree_part())
}

fn cmp_poly<K: Field + Ord>(a: &UniPoly<K>, b: &UniPoly<K>) -> Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Irreducible factorization over `Q`: monic factors with multiplicities,
/// sorted by degree and then by coefficients.
pub fn factor_rational(f: &UniPoly<Rational>) -> Result<Vec<(UniPoly<Rational>, usize)>> {
    if f.is_zero() {
        return Err(Error::InvalidInput(
            "factorization of the zero polynomial".into(),
        ));
    }
    let mut out = Vec::new();
    for (g, mult) in f.squarefree_decomposition() {
        let denom = g
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = g
            .coeffs()
            .iter()
            .map(|c| (c * Rational::from_integer(denom.clone())).to_integer())
            .collect();
        for h in zassenhaus::factor_squarefree(&zassenhaus::primitive(&ints)) {
            let q = UniPoly::new(h.into_iter().map(Rational::from_integer).collect());
            out.push((q.monic(), mult));
        }
    }
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// Irreducible factorization over `tower`. Coefficients of `f` may live in
/// any sub-tower of `tower`; the factors are monic, tagged with `tower`,
/// and sorted by degree and then by coefficient representatives.
pub fn factor_univariate(
    f: &UniPoly<FieldElement>,
    tower: &Tower,
) -> Result<Vec<(UniPoly<FieldElement>, usize)>> {
    if f.is_zero() {
        return Err(Error::InvalidInput(
            "factorization of the zero polynomial".into(),
        ));
    }
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| c.embed(tower))
        .collect::<Result<Vec<_>>>()?;
    let f = UniPoly::new(coeffs);
    if tower.is_rational() {
        let q = f.map(|c| c.to_rational().expect("rational tower"));
        return Ok(factor_rational(&q)?
            .into_iter()
            .map(|(g, m)| (g.map(|c| tower.rational_element(c.clone())), m))
            .collect());
    }
    let mut out = Vec::new();
    for (g, mult) in f.squarefree_decomposition() {
        for h in trager::factor_squarefree(&g, tower)? {
            let h = h
                .monic()
                .map(|c| c.embed(tower).expect("coefficients lie in tower"));
            out.push((h, mult));
        }
    }
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Ok(out)
}

/// A root of a polynomial, the tower it was found in and the inclusion of
/// the input tower into it.
#[derive(Clone, Debug)]
pub struct Root {
    pub value: FieldElement,
    pub tower: Tower,
    pub embedding: Embedding,
}

/// All distinct roots of `f`, together with the final tower, which extends
/// every tower appearing in the roots.
#[derive(Clone, Debug)]
pub struct AdjoinedRoots {
    pub roots: Vec<Root>,
    pub tower: Tower,
}

/// Factors `f`, extends the tower by the first nonlinear factor, re-factors
/// the remaining nonlinear factors over the new tower and repeats until
/// every factor is linear. Roots are sorted by the degree of the smallest
/// sub-tower containing them and then by representative.
pub fn adjoin_roots(f: &UniPoly<FieldElement>, tower: &Tower) -> Result<AdjoinedRoots> {
    if f.deg() == 0 {
        return Err(Error::InvalidInput(
            "adjoin_roots needs a polynomial of positive degree".into(),
        ));
    }
    let mut current = tower.clone();
    let mut pending = VecDeque::from([squarefree_part(f)?]);
    let mut roots = Vec::new();
    while !pending.is_empty() {
        let mut nonlinear = Vec::new();
        for g in pending.drain(..) {
            for (h, _) in factor_univariate(&g, &current)? {
                if h.deg() == 1 {
                    roots.push(Root {
                        value: -h.coeff(0),
                        tower: current.clone(),
                        embedding: Embedding::new(tower, &current)?,
                    });
                } else {
                    nonlinear.push(h);
                }
            }
        }
        if let Some(first) = nonlinear.first() {
            let name = current.fresh_name(first);
            current = current.extend_unchecked(&name, first)?.0;
        }
        pending.extend(nonlinear);
    }
    roots.sort_by(|a, b| {
        let da = a.tower.prefix(a.value.height()).degree();
        let db = b.tower.prefix(b.value.height()).degree();
        da.cmp(&db).then_with(|| a.value.cmp(&b.value))
    });
    Ok(AdjoinedRoots {
        roots,
        tower: current,
    })
}
