//! Factorization over a tower by Trager's norm method, one generator at a
//! time: the norm down to the sub-tower is factored recursively and the
//! factors are pulled back with gcds.

use num_traits::One;

use crate::error::Result;
use crate::numfield::{FieldElement, Tower};
use crate::poly::UniPoly;
use crate::scalar::Field;

type Poly = UniPoly<FieldElement>;

/// Shift constants `0, 1, -1, 2, -2, ...`.
fn shifts() -> impl Iterator<Item = i64> {
    (0..).map(|k: i64| if k % 2 == 1 { (k + 1) / 2 } else { -k / 2 })
}

/// `N(x) = Res_y(m(y), g(x, y))` where `g` is written over the sub-tower in
/// the top generator `y`. Computed by evaluating at `deg N + 1` rational
/// nodes and interpolating.
fn norm(g: &Poly, tower: &Tower, minpoly: &Poly) -> Result<Poly> {
    let n = tower.len();
    let sub = tower.prefix(n - 1);
    let rows = g
        .coeffs()
        .iter()
        .map(|c| Ok(c.embed(tower)?.top_coeffs()))
        .collect::<Result<Vec<_>>>()?;
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let top = g.deg() * minpoly.deg();
    let mut xs = Vec::with_capacity(top + 1);
    let mut ys = Vec::with_capacity(top + 1);
    for node in 0..=top as i64 {
        let x0 = sub.rational_element(crate::scalar::rat(node));
        let mut at = vec![sub.rational_element(crate::scalar::rat(0)); width];
        let mut power = FieldElement::one();
        for row in &rows {
            for (k, c) in row.iter().enumerate() {
                at[k] = &at[k] + &(c * &power);
            }
            power = &power * &x0;
        }
        ys.push(minpoly.resultant(&UniPoly::new(at)));
        xs.push(x0);
    }
    Ok(UniPoly::interpolate(&xs, &ys))
}

/// Monic irreducible factors of a monic squarefree `f` over a tower with
/// at least one generator.
pub(crate) fn factor_squarefree(f: &Poly, tower: &Tower) -> Result<Vec<Poly>> {
    if f.deg() <= 1 {
        return Ok(vec![f.clone()]);
    }
    let n = tower.len();
    let sub = tower.prefix(n - 1);
    let alpha = tower.generator(n - 1);
    let minpoly = tower.minpoly(n - 1);
    for c in shifts() {
        let ca = &alpha * &FieldElement::from_i64(c);
        let g = f.compose(&UniPoly::new(vec![-ca.clone(), FieldElement::one()]));
        let nm = norm(&g, tower, &minpoly)?;
        if nm.gcd(&nm.derivative()).deg() > 0 {
            continue;
        }
        let back = UniPoly::new(vec![ca, FieldElement::one()]);
        let mut out = Vec::new();
        for (p, _) in super::factor_univariate(&nm, &sub)? {
            let lifted = p.map(|c| c.embed(tower).expect("sub-tower embeds"));
            let h = g.gcd(&lifted);
            if h.deg() > 0 {
                out.push(h.compose(&back));
            }
        }
        return Ok(out);
    }
    unreachable!("shift sequence is infinite")
}
