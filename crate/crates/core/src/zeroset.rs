//! Finite common zero sets of bivariate polynomial systems over a growing
//! number-field tower.

use std::fmt;

use num_traits::Zero;

use crate::bipoly::{gcd_tuple, BiPoly, Var};
use crate::error::{Error, Result};
use crate::factorize::adjoin_roots;
use crate::numfield::{FieldElement, Tower};
use crate::poly::UniPoly;
use crate::scalar::Field;

type Poly = BiPoly<FieldElement>;
type Uni = UniPoly<FieldElement>;

/// An affine point `(u, v)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Point {
    pub u: FieldElement,
    pub v: FieldElement,
}

impl Point {
    pub fn new(u: FieldElement, v: FieldElement) -> Point {
        Point { u, v }
    }

    pub fn origin() -> Point {
        Point {
            u: FieldElement::zero(),
            v: FieldElement::zero(),
        }
    }

    /// Number of tower generators the coordinates use.
    pub fn height(&self) -> usize {
        self.u.height().max(self.v.height())
    }

    /// The smallest sub-tower of `tower` containing both coordinates.
    pub fn minimal_tower(&self, tower: &Tower) -> Tower {
        tower.prefix(self.height())
    }

    pub fn is_origin(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn embed(&self, tower: &Tower) -> Result<Point> {
        Ok(Point {
            u: self.u.embed(tower)?,
            v: self.v.embed(tower)?,
        })
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Restriction {
    None,
    /// Only zeros with `u = 0`.
    UZero,
    /// Only zeros with `v = 0`.
    VZero,
}

/// The zeros, tagged with `tower`, which extends the input tower.
#[derive(Clone, Debug)]
pub struct ZeroSet {
    pub points: Vec<Point>,
    pub tower: Tower,
}

fn sort_points(points: &mut [Point], tower: &Tower) {
    points.sort_by(|a, b| {
        let da = a.minimal_tower(tower).degree();
        let db = b.minimal_tower(tower).degree();
        da.cmp(&db).then_with(|| a.cmp(b))
    });
}

fn uni_gcd(polys: impl IntoIterator<Item = Uni>) -> Uni {
    polys.into_iter().fold(Uni::zero(), |g, p| g.gcd(&p))
}

/// Common zeros of `polys` over the algebraic closure. The system must
/// have a constant gcd. New generators are appended to `tower` as needed
/// and every point is checked by substitution.
pub fn zero_set(polys: &[Poly], tower: &Tower, restriction: Restriction) -> Result<ZeroSet> {
    if polys.is_empty() {
        return Err(Error::InvalidInput("zero set of an empty system".into()));
    }
    let g = gcd_tuple(polys)?;
    if !g.is_constant() {
        return Err(Error::NonConstantGcd);
    }
    let polys: Vec<Poly> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    if polys.iter().any(|p| p.is_constant()) {
        return Ok(ZeroSet {
            points: Vec::new(),
            tower: tower.clone(),
        });
    }
    let zero = FieldElement::zero();
    let (mut points, current) = match restriction {
        Restriction::VZero | Restriction::UZero => {
            let x = if restriction == Restriction::VZero {
                Var::V
            } else {
                Var::U
            };
            let h = uni_gcd(polys.iter().map(|p| p.substitute(x, &zero)));
            if h.deg() == 0 {
                (Vec::new(), tower.clone())
            } else {
                let roots = adjoin_roots(&h, tower)?;
                let pts = roots
                    .roots
                    .into_iter()
                    .map(|r| match x {
                        Var::V => Point::new(r.value, zero.clone()),
                        Var::U => Point::new(zero.clone(), r.value),
                    })
                    .collect();
                (pts, roots.tower)
            }
        }
        Restriction::None => solve_full(&polys, tower)?,
    };
    for p in &polys {
        for pt in &points {
            if !p.eval(&pt.u, &pt.v).is_zero() {
                return Err(Error::Invariant(format!("{pt:?} is not a zero of {p}")));
            }
        }
    }
    for pt in points.iter_mut() {
        *pt = pt.embed(&current)?;
    }
    sort_points(&mut points, &current);
    points.dedup();
    Ok(ZeroSet {
        points,
        tower: current,
    })
}

/// Eliminating polynomial in `u`: the gcd of the nonzero pairwise
/// resultants in `v`, or of a pair of generic combinations if all of them
/// vanish.
fn eliminant(polys: &[Poly]) -> Result<Uni> {
    let mut res = Vec::new();
    for i in 0..polys.len() {
        if polys[i].deg_in(Var::V) == 0 {
            res.push(polys[i].substitute(Var::V, &FieldElement::zero()));
        }
        for j in i + 1..polys.len() {
            if polys[i].deg_in(Var::V) == 0 && polys[j].deg_in(Var::V) == 0 {
                continue;
            }
            let r = polys[i].resultant(&polys[j], Var::V)?;
            if !r.is_zero() {
                res.push(r);
            }
        }
    }
    if !res.is_empty() {
        return Ok(uni_gcd(res));
    }
    // Every pair shares a factor. Two members with distinct Vandermonde
    // coefficient vectors are coprime for all but finitely many choices.
    for k in 1..=64i64 {
        let combo = |c: i64| {
            polys.iter().enumerate().fold(Poly::zero(), |acc, (j, p)| {
                &acc + &p.scale(&FieldElement::from_i64(c.pow(j as u32)))
            })
        };
        let (a, b) = (combo(k), combo(-k - 1));
        if a.deg_in(Var::V) == 0 && b.deg_in(Var::V) == 0 {
            continue;
        }
        let r = a.resultant(&b, Var::V)?;
        if !r.is_zero() {
            return Ok(r.monic());
        }
    }
    Err(Error::Invariant(
        "no coprime pair found for elimination".into(),
    ))
}

fn solve_full(polys: &[Poly], tower: &Tower) -> Result<(Vec<Point>, Tower)> {
    let r = eliminant(polys)?;
    if r.deg() == 0 {
        return Ok((Vec::new(), tower.clone()));
    }
    let u_roots = adjoin_roots(&r, tower)?;
    let mut current = u_roots.tower;
    let mut points = Vec::new();
    for root in u_roots.roots {
        let u0 = root.value.embed(&current)?;
        let fiber = uni_gcd(polys.iter().map(|p| p.substitute(Var::U, &u0)));
        if fiber.is_zero() {
            return Err(Error::Invariant("positive-dimensional fiber".into()));
        }
        if fiber.deg() == 0 {
            continue;
        }
        let v_roots = adjoin_roots(&fiber, &current)?;
        current = v_roots.tower;
        for v0 in v_roots.roots {
            let pt = Point::new(u0.clone(), v0.value);
            if polys.iter().all(|p| p.eval(&pt.u, &pt.v).is_zero()) {
                points.push(pt);
            }
        }
    }
    Ok((points, current))
}
