//! Basepoints of a linear series, including infinitely near ones, found by
//! iterated blowups.

use num_traits::{One, Zero};

use crate::bipoly::{exact_div_power, gcd_tuple, pullback_blowup, BiPoly, Chart, Var};
use crate::error::{Error, Result};
use crate::numfield::{FieldElement, Tower};
use crate::scalar::Field;
use crate::zeroset::{zero_set, Point, Restriction};

type Poly = BiPoly<FieldElement>;

pub const DEFAULT_MAX_DEPTH: usize = 32;

/// One blowup: the center and the chart in which the computation continues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub point: Point,
    pub chart: Chart,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    /// Blowups leading to the surface on which `point` lives.
    pub sequence: Vec<Step>,
    pub point: Point,
    pub mult: u32,
    /// Infinitely near basepoints on the exceptional curve `v = 0` of chart `T`.
    pub children_t: Vec<Node>,
    /// Infinitely near basepoints on the exceptional curve `u = 0` of chart `S`.
    pub children_s: Vec<Node>,
}

impl Node {
    pub fn new(sequence: Vec<Step>, point: Point, mult: u32) -> Node {
        Node {
            sequence,
            point,
            mult,
            children_t: Vec::new(),
            children_s: Vec::new(),
        }
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a Node>) {
        out.push(self);
        for c in self.children_t.iter().chain(&self.children_s) {
            c.collect(out);
        }
    }

    fn depth(&self) -> usize {
        1 + self
            .children_t
            .iter()
            .chain(&self.children_s)
            .map(Node::depth)
            .max()
            .unwrap_or(0)
    }
}

/// The basepoint tree of a series: the basepoints in the plane, each with
/// its infinitely near basepoints, over the tower all coordinates live in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasepointTree {
    pub roots: Vec<Node>,
    pub tower: Tower,
}

impl BasepointTree {
    pub fn empty(tower: &Tower) -> BasepointTree {
        BasepointTree {
            roots: Vec::new(),
            tower: tower.clone(),
        }
    }

    /// All nodes in pre-order: a node, then its `T` subtree, then its `S`
    /// subtree.
    pub fn nodes(&self) -> Vec<&Node> {
        let mut out = Vec::new();
        for r in &self.roots {
            r.collect(&mut out);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.nodes().len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Length of the longest chain of nodes.
    pub fn depth(&self) -> usize {
        self.roots.iter().map(Node::depth).max().unwrap_or(0)
    }

    /// Fails with `RecursionLimitExceeded` if some node lies more than
    /// `max_depth` blowups deep, matching the guard of [`get_basepoints_with_limit`].
    pub fn check_depth(&self, max_depth: usize) -> Result<()> {
        if self.depth() > max_depth + 1 {
            return Err(Error::RecursionLimitExceeded(max_depth));
        }
        Ok(())
    }

    /// Same shape with every multiplicity replaced by `f(node index, mult)`
    /// (indices in pre-order). Nodes mapped to `0` are dropped together with
    /// their subtrees.
    pub fn with_multiplicities(&self, f: impl Fn(usize, u32) -> i64) -> BasepointTree {
        fn go(nodes: &[Node], counter: &mut usize, f: &dyn Fn(usize, u32) -> i64) -> Vec<Node> {
            let mut out = Vec::new();
            for n in nodes {
                let idx = *counter;
                *counter += 1;
                let children_t = go(&n.children_t, counter, f);
                let children_s = go(&n.children_s, counter, f);
                let m = f(idx, n.mult);
                if m > 0 {
                    out.push(Node {
                        sequence: n.sequence.clone(),
                        point: n.point.clone(),
                        mult: m as u32,
                        children_t,
                        children_s,
                    });
                }
            }
            out
        }
        let mut counter = 0;
        BasepointTree {
            roots: go(&self.roots, &mut counter, &f),
            tower: self.tower.clone(),
        }
    }
}

/// Multiplicity of the series at `p`: the exponent of `v` in the gcd of
/// the pullbacks to chart `T` of the blowup at `p`. Zero when `p` is not a
/// basepoint.
pub fn multiplicity(polys: &[Poly], p: &Point) -> Result<u32> {
    let pulled = pullback_blowup(polys, &p.u, &p.v, Chart::T);
    let g = gcd_tuple(&pulled)?;
    Ok(g.terms().map(|(&(_, b), _)| b).min().unwrap_or(0))
}

/// Strict transform of the series along a blowup sequence.
pub fn strict_transform(polys: &[Poly], sequence: &[Step]) -> Result<Vec<Poly>> {
    let mut cur = polys.to_vec();
    for step in sequence {
        let m = multiplicity(&cur, &step.point)?;
        if m == 0 {
            return Err(Error::NotABasepoint);
        }
        let pulled = pullback_blowup(&cur, &step.point.u, &step.point.v, step.chart);
        cur = exact_div_power(&pulled, step.chart.exceptional(), m)?;
    }
    Ok(cur)
}

/// Basepoint tree with the default recursion guard.
pub fn get_basepoints(polys: &[Poly], tower: &Tower) -> Result<BasepointTree> {
    get_basepoints_with_limit(polys, tower, DEFAULT_MAX_DEPTH)
}

/// Basepoint tree; fails with `RecursionLimitExceeded` if a basepoint
/// would need more than `max_depth` blowups to reach.
pub fn get_basepoints_with_limit(
    polys: &[Poly],
    tower: &Tower,
    max_depth: usize,
) -> Result<BasepointTree> {
    let mut tower = tower.clone();
    let roots = search(
        polys,
        Vec::new(),
        Restriction::None,
        &[],
        &mut tower,
        max_depth,
    )?;
    Ok(BasepointTree { roots, tower })
}

fn search(
    polys: &[Poly],
    sequence: Vec<Step>,
    restriction: Restriction,
    exclude: &[Point],
    tower: &mut Tower,
    max_depth: usize,
) -> Result<Vec<Node>> {
    let zs = zero_set(polys, tower, restriction)?;
    *tower = zs.tower;
    let points: Vec<Point> = zs
        .points
        .into_iter()
        .filter(|p| !seen_in_t_chart(p, exclude))
        .collect();
    if !points.is_empty() && sequence.len() > max_depth {
        return Err(Error::RecursionLimitExceeded(max_depth));
    }
    let mut nodes = Vec::with_capacity(points.len());
    for p in points {
        let pulled_t = pullback_blowup(polys, &p.u, &p.v, Chart::T);
        let g = gcd_tuple(&pulled_t)?;
        let m = g.total_degree();
        if m == 0 || g != BiPoly::monomial(FieldElement::one(), 0, m) {
            return Err(Error::Invariant(format!(
                "gcd of pullbacks at {p:?} is {g}, not a power of v"
            )));
        }
        let pulled_s = pullback_blowup(polys, &p.u, &p.v, Chart::S);
        debug_assert_eq!(
            gcd_tuple(&pulled_s).map(|g| g.total_degree()),
            Ok(m),
            "charts disagree on the multiplicity"
        );
        let extend = |chart| {
            let mut s = sequence.clone();
            s.push(Step {
                point: p.clone(),
                chart,
            });
            s
        };
        let ft = exact_div_power(&pulled_t, Var::V, m)?;
        let children_t = search(
            &ft,
            extend(Chart::T),
            Restriction::VZero,
            &[],
            tower,
            max_depth,
        )?;
        let t_points: Vec<Point> = children_t.iter().map(|n| n.point.clone()).collect();
        let fs = exact_div_power(&pulled_s, Var::U, m)?;
        let children_s = search(
            &fs,
            extend(Chart::S),
            Restriction::UZero,
            &t_points,
            tower,
            max_depth,
        )?;
        nodes.push(Node {
            sequence: sequence.clone(),
            point: p,
            mult: m,
            children_t,
            children_s,
        });
    }
    Ok(nodes)
}

/// True for an `S`-chart point `(0, w)`, `w != 0`, whose direction was
/// already found as `(1/w, 0)` in the `T` chart.
fn seen_in_t_chart(p: &Point, t_points: &[Point]) -> bool {
    if !p.u.is_zero() || p.v.is_zero() {
        return false;
    }
    let inv = p.v.inverse().expect("nonzero");
    t_points.iter().any(|q| q.v.is_zero() && q.u == inv)
}
