//! Linear series with prescribed basepoints: constraint matrices, kernels,
//! monomial bases, completion and adjoints.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::baselocus::{get_basepoints_with_limit, BasepointTree, Node, DEFAULT_MAX_DEPTH};
use crate::bipoly::{BiPoly, Chart, Var};
use crate::error::{Error, Result};
use crate::linalg;
use crate::numfield::{FieldElement, Tower};

type Poly = BiPoly<FieldElement>;

/// Which polynomials a complete series may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisSpec {
    /// Total degree at most `d`: an affine chart of the projective plane.
    Degree(u32),
    /// Degree at most `a` in `u` and at most `b` in `v`: an affine chart of
    /// `P1 x P1`.
    Bidegree(u32, u32),
}

impl BasisSpec {
    pub fn admits(&self, p: &Poly) -> bool {
        match *self {
            BasisSpec::Degree(d) => p.total_degree() <= d,
            BasisSpec::Bidegree(a, b) => p.deg_in(Var::U) <= a && p.deg_in(Var::V) <= b,
        }
    }
}

impl FromStr for BasisSpec {
    type Err = Error;

    /// Accepts `deg:d` and `bideg:a,b`.
    fn from_str(s: &str) -> Result<BasisSpec> {
        let bad = || Error::InvalidInput(format!("bad basis {s:?}, expected deg:d or bideg:a,b"));
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
        match s.split_once(':') {
            Some(("deg", d)) => Ok(BasisSpec::Degree(num(d)?)),
            Some(("bideg", ab)) => {
                let (a, b) = ab.split_once(',').ok_or_else(bad)?;
                Ok(BasisSpec::Bidegree(num(a)?, num(b)?))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for BasisSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisSpec::Degree(d) => write!(f, "deg:{d}"),
            BasisSpec::Bidegree(a, b) => write!(f, "bideg:{a},{b}"),
        }
    }
}

/// An ordered, linearly independent tuple of polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSeries {
    gens: Vec<Poly>,
    tower: Tower,
}

/// Exponents occurring in any of `polys`, in a fixed order.
fn support(polys: &[Poly]) -> Vec<(u32, u32)> {
    let mut keys: Vec<(u32, u32)> = polys
        .iter()
        .flat_map(|p| p.terms().map(|(k, _)| *k))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    keys
}

fn coefficient_rows(polys: &[Poly], keys: &[(u32, u32)]) -> Vec<Vec<FieldElement>> {
    polys
        .iter()
        .map(|p| keys.iter().map(|&(a, b)| p.coeff(a, b)).collect())
        .collect()
}

impl LinearSeries {
    pub fn new(gens: Vec<Poly>, tower: &Tower) -> Result<LinearSeries> {
        let keys = support(&gens);
        if gens.iter().any(Poly::is_zero)
            || linalg::rank(&coefficient_rows(&gens, &keys), keys.len()) != gens.len()
        {
            return Err(Error::DependentGenerators);
        }
        Ok(LinearSeries {
            gens,
            tower: tower.clone(),
        })
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Dimension of the span of `self` and `other` together.
    fn joint_rank(&self, other: &[Poly]) -> usize {
        let all: Vec<Poly> = self.gens.iter().chain(other).cloned().collect();
        let keys = support(&all);
        linalg::rank(&coefficient_rows(&all, &keys), keys.len())
    }

    /// True when every polynomial in `polys` lies in the span of `self`.
    pub fn spans(&self, polys: &[Poly]) -> bool {
        self.joint_rank(polys) == self.len()
    }

    pub fn same_span(&self, other: &LinearSeries) -> bool {
        self.len() == other.len() && self.spans(&other.gens)
    }

    /// Canonical generators of the span: reduced row echelon form of the
    /// coefficient matrix over the monomials in descending order.
    pub fn canonical(&self) -> Vec<Poly> {
        let mut keys = support(&self.gens);
        keys.reverse();
        let (rows, _) = linalg::rref(&coefficient_rows(&self.gens, &keys), keys.len());
        rows.iter()
            .map(|row| Poly::from_terms(keys.iter().copied().zip(row.iter().cloned())))
            .collect()
    }
}

/// Which derivative condition produced a row of a constraint matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RowTag {
    /// Index of the node in pre-order.
    pub node: usize,
    pub a: u32,
    pub b: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintMatrix {
    pub rows: Vec<Vec<FieldElement>>,
    pub tags: Vec<RowTag>,
    pub ncols: usize,
}

/// All monomials allowed by `spec`, as a series over `Q`. Total degree
/// bases list exponents in descending lexicographic order, e.g.
/// `u^2, u*v, u, v^2, v, 1`; bidegree bases in ascending order, e.g.
/// `1, v, u, u*v` for `(1, 1)`.
pub fn monomial_basis(spec: BasisSpec) -> LinearSeries {
    let keys: Vec<(u32, u32)> = match spec {
        BasisSpec::Degree(d) => {
            let mut k: Vec<_> = (0..=d)
                .flat_map(|a| (0..=d - a).map(move |b| (a, b)))
                .collect();
            k.sort_unstable_by(|x, y| y.cmp(x));
            k
        }
        BasisSpec::Bidegree(a, b) => (0..=a).flat_map(|i| (0..=b).map(move |j| (i, j))).collect(),
    };
    let gens = keys
        .into_iter()
        .map(|(a, b)| Poly::monomial(num_traits::One::one(), a, b))
        .collect();
    LinearSeries {
        gens,
        tower: Tower::rational(),
    }
}

/// Rows of derivative conditions imposing every node of `tree` on
/// combinations of `g`.
pub fn set_basepoints(tree: &BasepointTree, g: &LinearSeries) -> ConstraintMatrix {
    let mut out = ConstraintMatrix {
        rows: Vec::new(),
        tags: Vec::new(),
        ncols: g.len(),
    };
    let mut counter = 0;
    add_rows(&tree.roots, g.gens(), &mut counter, &mut out);
    out
}

fn add_rows(nodes: &[Node], gens: &[Poly], counter: &mut usize, out: &mut ConstraintMatrix) {
    for n in nodes {
        let idx = *counter;
        *counter += 1;
        let (u0, v0) = (&n.point.u, &n.point.v);
        for a in 0..n.mult {
            for b in 0..n.mult - a {
                out.rows
                    .push(gens.iter().map(|g| g.deriv_eval(a, b, u0, v0)).collect());
                out.tags.push(RowTag { node: idx, a, b });
            }
        }
        for (chart, children) in [(Chart::T, &n.children_t), (Chart::S, &n.children_s)] {
            let next: Vec<Poly> = gens
                .iter()
                .map(|g| {
                    g.pullback(u0, v0, chart)
                        .div_rem_power(chart.exceptional(), n.mult)
                        .0
                })
                .collect();
            add_rows(children, &next, counter, out);
        }
    }
}

/// Canonical kernel basis of the constraint matrix.
pub fn kernel_basis(m: &ConstraintMatrix) -> Vec<Vec<FieldElement>> {
    linalg::kernel(&m.rows, m.ncols)
}

/// The series of combinations of `g` passing through `tree` with the
/// prescribed multiplicities.
pub fn series_through(tree: &BasepointTree, g: &LinearSeries) -> Result<LinearSeries> {
    let m = set_basepoints(tree, g);
    let gens = kernel_basis(&m)
        .iter()
        .map(|k| {
            k.iter().zip(g.gens()).fold(Poly::zero(), |acc, (c, p)| {
                if c.is_zero() {
                    acc
                } else {
                    &acc + &p.scale(c)
                }
            })
        })
        .collect();
    let tower = tree.tower.join(g.tower())?;
    LinearSeries::new(gens, &tower)
}

/// The largest series in `spec` with the same basepoints as `f`.
pub fn complete_series(f: &LinearSeries, spec: BasisSpec) -> Result<LinearSeries> {
    complete_series_with_limit(f, spec, DEFAULT_MAX_DEPTH)
}

pub fn complete_series_with_limit(
    f: &LinearSeries,
    spec: BasisSpec,
    max_depth: usize,
) -> Result<LinearSeries> {
    if let Some(p) = f.gens().iter().find(|p| !spec.admits(p)) {
        return Err(Error::InvalidInput(format!("{p} does not fit in {spec}")));
    }
    let tree = get_basepoints_with_limit(f.gens(), f.tower(), max_depth)?;
    series_through(&tree, &monomial_basis(spec))
}

/// Curves of degree `d - 3` through every basepoint of `f` with
/// multiplicity one less.
pub fn adjoint_series(f: &LinearSeries, d: u32) -> Result<LinearSeries> {
    adjoint_series_with_limit(f, d, DEFAULT_MAX_DEPTH)
}

pub fn adjoint_series_with_limit(
    f: &LinearSeries,
    d: u32,
    max_depth: usize,
) -> Result<LinearSeries> {
    if d < 3 {
        return Err(Error::NoAdjoint(d as i64));
    }
    let tree = get_basepoints_with_limit(f.gens(), f.tower(), max_depth)?;
    let reduced = tree.with_multiplicities(|_, m| m as i64 - 1);
    series_through(&reduced, &monomial_basis(BasisSpec::Degree(d - 3)))
}
