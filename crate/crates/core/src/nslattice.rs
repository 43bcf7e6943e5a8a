//! Neron-Severi lattices of blown-up planes and quadrics: classes,
//! intersection numbers, the real structure and numerical invariants.

use std::fmt;

use crate::baselocus::{BasepointTree, Node, Step};
use crate::error::{Error, Result};
use crate::linseries::{monomial_basis, series_through, BasisSpec};
use crate::numfield::Conjugation;
use crate::zeroset::Point;

/// A lattice basis together with the number `r` of exceptional classes.
///
/// `Type1(r)` is `e0, e1, ..., er` with `e0^2 = 1` and `ej^2 = -1`, for
/// blowups of the plane. `Type2(r)` is `l0, l1, eps1, ..., epsr` with
/// `l0 . l1 = 1` and `epsj^2 = -1`, for blowups of `P1 x P1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Type1(usize),
    Type2(usize),
}

impl Basis {
    pub fn exceptional_count(self) -> usize {
        match self {
            Basis::Type1(r) | Basis::Type2(r) => r,
        }
    }

    /// Number of non-exceptional generators.
    pub fn degree_rank(self) -> usize {
        match self {
            Basis::Type1(_) => 1,
            Basis::Type2(_) => 2,
        }
    }

    pub fn rank(self) -> usize {
        self.degree_rank() + self.exceptional_count()
    }

    pub fn tag(self) -> &'static str {
        match self {
            Basis::Type1(_) => "type1",
            Basis::Type2(_) => "type2",
        }
    }

    fn generator_name(self, idx: usize) -> String {
        match (self, idx) {
            (Basis::Type1(_), i) => format!("e{i}"),
            (Basis::Type2(_), 0) => "l0".into(),
            (Basis::Type2(_), 1) => "l1".into(),
            (Basis::Type2(_), i) => format!("eps{}", i - 1),
        }
    }
}

/// An integer combination of basis generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NSClass {
    basis: Basis,
    coeffs: Vec<i64>,
}

impl NSClass {
    pub fn new(basis: Basis, coeffs: Vec<i64>) -> Result<NSClass> {
        if coeffs.len() != basis.rank() {
            return Err(Error::InvalidInput(format!(
                "{} with {} exceptional classes needs {} coefficients, got {}",
                basis.tag(),
                basis.exceptional_count(),
                basis.rank(),
                coeffs.len()
            )));
        }
        Ok(NSClass { basis, coeffs })
    }

    pub fn zero(basis: Basis) -> NSClass {
        NSClass {
            basis,
            coeffs: vec![0; basis.rank()],
        }
    }

    /// The `idx`-th basis generator.
    pub fn generator(basis: Basis, idx: usize) -> NSClass {
        let mut c = NSClass::zero(basis);
        c.coeffs[idx] = 1;
        c
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Coefficients of `e0`, or of `l0, l1`.
    pub fn degree_part(&self) -> &[i64] {
        &self.coeffs[..self.basis.degree_rank()]
    }

    pub fn exceptional(&self) -> &[i64] {
        &self.coeffs[self.basis.degree_rank()..]
    }

    pub fn checked_add(&self, other: &NSClass) -> Result<NSClass> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(NSClass {
            basis: self.basis,
            coeffs,
        })
    }

    pub fn scale(&self, k: i64) -> NSClass {
        NSClass {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }
}

impl fmt::Display for NSClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let name = self.basis.generator_name(i);
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match c.abs() {
                1 => f.write_str(&name)?,
                a => write!(f, "{a}*{name}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// The intersection number of two classes.
pub fn intersect(c: &NSClass, d: &NSClass) -> Result<i64> {
    if c.basis != d.basis {
        return Err(Error::BasisMismatch);
    }
    let tail: i64 = c
        .exceptional()
        .iter()
        .zip(d.exceptional())
        .map(|(a, b)| a * b)
        .sum();
    let head = match c.basis {
        Basis::Type1(_) => c.coeffs[0] * d.coeffs[0],
        Basis::Type2(_) => c.coeffs[0] * d.coeffs[1] + c.coeffs[1] * d.coeffs[0],
    };
    Ok(head - tail)
}

/// Gram matrix of the intersection form on the basis generators.
pub fn gram(basis: Basis) -> Vec<Vec<i64>> {
    let n = basis.rank();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    intersect(&NSClass::generator(basis, i), &NSClass::generator(basis, j))
                        .expect("same basis")
                })
                .collect()
        })
        .collect()
}

/// Lattice data of a blown-up surface: the hyperplane class `h`, the
/// canonical class `k`, and the real structure as a pairing of exceptional
/// indices when it could be determined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeContext {
    pub basis: Basis,
    pub h: NSClass,
    pub k: NSClass,
    /// `involution[i] = j` when the exceptional classes `i` and `j` (counted
    /// from zero) are swapped.
    pub involution: Option<Vec<usize>>,
}

/// Lattice data for the surface obtained by blowing up every node of
/// `tree`, embedded by curves of the given degree through the tree.
/// Exceptional classes follow the pre-order of the tree.
pub fn class_of_series(tree: &BasepointTree, spec: BasisSpec) -> LatticeContext {
    let nodes = tree.nodes();
    let r = nodes.len();
    let mults = nodes.iter().map(|n| -(n.mult as i64));
    let ones = std::iter::repeat_n(1, r);
    let (basis, h, k): (Basis, Vec<i64>, Vec<i64>) = match spec {
        BasisSpec::Degree(d) => (
            Basis::Type1(r),
            std::iter::once(d as i64).chain(mults).collect(),
            std::iter::once(-3).chain(ones).collect(),
        ),
        BasisSpec::Bidegree(a, b) => (
            Basis::Type2(r),
            [a as i64, b as i64].into_iter().chain(mults).collect(),
            [-2, -2].into_iter().chain(ones).collect(),
        ),
    };
    LatticeContext {
        basis,
        h: NSClass { basis, coeffs: h },
        k: NSClass { basis, coeffs: k },
        involution: conjugate_pairing(tree),
    }
}

fn conjugate_node(conj: &Conjugation, n: &Node) -> Option<(Vec<Step>, Point)> {
    let point = |p: &Point| -> Option<Point> {
        Some(Point::new(conj.apply(&p.u).ok()?, conj.apply(&p.v).ok()?))
    };
    let sequence = n
        .sequence
        .iter()
        .map(|s| {
            Some(Step {
                point: point(&s.point)?,
                chart: s.chart,
            })
        })
        .collect::<Option<Vec<_>>>()?;
    Some((sequence, point(&n.point)?))
}

/// Pairs each node with the node obtained by conjugating every coordinate
/// of its point and blowup sequence.
fn conjugate_pairing(tree: &BasepointTree) -> Option<Vec<usize>> {
    let conj = Conjugation::complex(&tree.tower).ok()?;
    let nodes = tree.nodes();
    let mut perm = Vec::with_capacity(nodes.len());
    for n in &nodes {
        let (seq, pt) = conjugate_node(&conj, n)?;
        let j = nodes
            .iter()
            .position(|m| m.sequence == seq && m.point == pt)?;
        if nodes[j].mult != n.mult {
            return None;
        }
        perm.push(j);
    }
    perm.iter()
        .enumerate()
        .all(|(i, &j)| perm[j] == i)
        .then_some(perm)
}

pub fn degree_of_surface(ctx: &LatticeContext) -> i64 {
    intersect(&ctx.h, &ctx.h).expect("h has one basis")
}

fn half(n: i64, what: &str) -> Result<i64> {
    if n % 2 != 0 {
        return Err(Error::Invariant(format!("{what} has odd numerator {n}")));
    }
    Ok(n / 2)
}

fn hk(ctx: &LatticeContext) -> Result<(i64, i64)> {
    Ok((intersect(&ctx.h, &ctx.h)?, intersect(&ctx.h, &ctx.k)?))
}

/// Arithmetic genus of a general hyperplane section, `(h^2 + h.k)/2 + 1`.
pub fn sectional_genus(ctx: &LatticeContext) -> Result<i64> {
    let (hh, hk) = hk(ctx)?;
    Ok(half(hh + hk, "sectional genus")? + 1)
}

/// Arithmetic genus from Riemann-Roch, `h0 - (h^2 - h.k)/2 - 1`.
pub fn arithmetic_genus(ctx: &LatticeContext, h0: i64) -> Result<i64> {
    if h0 < 1 {
        return Err(Error::InvalidInput(format!(
            "h0 must be positive, got {h0}"
        )));
    }
    let (hh, hk) = hk(ctx)?;
    Ok(h0 - half(hh - hk, "arithmetic genus")? - 1)
}

pub fn adjoint_class(ctx: &LatticeContext) -> NSClass {
    ctx.h.checked_add(&ctx.k).expect("h and k share a basis")
}

/// Dimension of the space of curves in class `c`: curves of the degree
/// given by the non-exceptional part, passing through the nodes of `tree`
/// with multiplicity minus the matching exceptional coefficient. Zero if
/// any of these is negative. Nodes with multiplicity zero are dropped with
/// everything infinitely near to them.
pub fn h0_of_class(c: &NSClass, tree: &BasepointTree) -> Result<usize> {
    let r = tree.len();
    if c.basis.exceptional_count() != r {
        return Err(Error::InvalidInput(format!(
            "class has {} exceptional coefficients but the tree has {r} nodes",
            c.basis.exceptional_count()
        )));
    }
    if c.degree_part().iter().any(|&a| a < 0) || c.exceptional().iter().any(|&a| a > 0) {
        return Ok(0);
    }
    let spec = match c.basis {
        Basis::Type1(_) => BasisSpec::Degree(c.coeffs[0] as u32),
        Basis::Type2(_) => BasisSpec::Bidegree(c.coeffs[0] as u32, c.coeffs[1] as u32),
    };
    let mults = c.exceptional().to_vec();
    let reduced = tree.with_multiplicities(|i, _| -mults[i]);
    Ok(series_through(&reduced, &monomial_basis(spec))?.len())
}

/// Image of `c` under the real structure: exceptional coefficients are
/// permuted by the pairing and the rest is fixed.
pub fn involution_image(ctx: &LatticeContext, c: &NSClass) -> Result<NSClass> {
    if c.basis != ctx.basis {
        return Err(Error::BasisMismatch);
    }
    let perm = ctx
        .involution
        .as_ref()
        .ok_or_else(|| Error::ConjugationUnavailable("no pairing of exceptional classes".into()))?;
    let off = c.basis.degree_rank();
    let mut coeffs = c.coeffs.clone();
    for (i, &j) in perm.iter().enumerate() {
        coeffs[off + j] = c.coeffs[off + i];
    }
    Ok(NSClass {
        basis: c.basis,
        coeffs,
    })
}
