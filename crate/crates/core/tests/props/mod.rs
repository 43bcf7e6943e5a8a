//! Randomized checks over `Q`, `Q(i)` and `Q(sqrt 2)` with degrees up to 4.
//! Shared by the `properties` and `acceptance` test targets; each check
//! returns the minimal failing input as an error message.

use std::sync::OnceLock;

use basepoints::baselocus::multiplicity;
use basepoints::bipoly::gcd_tuple;
use basepoints::factorize::{factor_rational, factor_univariate};
use basepoints::linalg::{kernel, mat_vec, rank};
use basepoints::nslattice::{gram, intersect, involution_image};
use basepoints::parse::parse_tower;
use basepoints::{
    Basis, Field, FieldElement, LatticeContext, NSClass, Point, Poly, Rational, Tower, UniPoly, Var,
};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestRunner;

pub const CASES: u32 = 256;

fn runner() -> TestRunner {
    TestRunner::new(ProptestConfig {
        cases: CASES,
        failure_persistence: None,
        ..ProptestConfig::default()
    })
}

pub type Check = fn() -> Result<(), String>;

/// Every suite, by name.
pub const SUITES: &[(&str, Check)] = &[
    ("factor_product_round_trip", factor_product_round_trip),
    (
        "rational_factor_product_round_trip",
        rational_factor_product_round_trip,
    ),
    ("gcd_divides_all", gcd_divides_all),
    (
        "resultant_vanishes_iff_common_factor",
        resultant_vanishes_iff_common_factor,
    ),
    (
        "multiplicity_is_minimal_order",
        multiplicity_is_minimal_order,
    ),
    ("kernel_annihilates", kernel_annihilates),
    ("involution_is_involutive", involution_is_involutive),
    (
        "intersection_form_is_unimodular",
        intersection_form_is_unimodular,
    ),
];

fn towers() -> &'static [Tower] {
    static T: OnceLock<Vec<Tower>> = OnceLock::new();
    T.get_or_init(|| {
        vec![
            Tower::rational(),
            parse_tower([("i", "t^2 + 1")]).unwrap(),
            parse_tower([("s", "t^2 - 2")]).unwrap(),
        ]
    })
}

/// `a + b*g` where `g` generates the tower, or just `a` over `Q`.
fn elem(tower: &Tower, (a, b): (i64, i64)) -> FieldElement {
    let a = FieldElement::from_i64(a);
    if tower.is_rational() {
        a
    } else {
        a + FieldElement::from_i64(b) * tower.generator(0)
    }
}

fn coeff() -> impl Strategy<Value = (i64, i64)> {
    (-3i64..=3, -2i64..=2)
}

fn uni(tower: &Tower, cs: &[(i64, i64)]) -> UniPoly {
    UniPoly::new(cs.iter().map(|&c| elem(tower, c)).collect())
}

/// Terms `(a, b, coeff)` with `a + b <= max_deg`.
fn terms(max_deg: u32, len: usize) -> impl Strategy<Value = Vec<(u32, u32, (i64, i64))>> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, coeff()), 0..=len).prop_map(move |ts| {
        ts.into_iter()
            .filter(|&(a, b, _)| a + b <= max_deg)
            .collect()
    })
}

fn bipoly(tower: &Tower, ts: &[(u32, u32, (i64, i64))]) -> Poly {
    ts.iter().fold(Poly::zero(), |acc, &(a, b, c)| {
        &acc + &Poly::monomial(elem(tower, c), a, b)
    })
}

fn ord_at(f: &Poly, p: &Point) -> Option<u32> {
    (0..=f.total_degree()).find(|&n| (0..=n).any(|a| !f.deriv_eval(a, n - a, &p.u, &p.v).is_zero()))
}

fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(k) = (c..n).find(|&k| !m[k][c].is_zero()) else {
            return Rational::zero();
        };
        if k != c {
            m.swap(k, c);
            d = -d;
        }
        d *= m[c][c].clone();
        for i in c + 1..n {
            let f = m[i][c].clone() / m[c][c].clone();
            for j in c..n {
                let x = m[c][j].clone() * f.clone();
                m[i][j] -= x;
            }
        }
    }
    d
}

pub fn factor_product_round_trip() -> Result<(), String> {
    let strategy = (
        0usize..3,
        prop::collection::vec(prop::collection::vec(coeff(), 2..=3), 1..=3),
    );
    runner()
        .run(&strategy, |(t, parts)| {
            let tower = &towers()[t];
            let mut f = UniPoly::one();
            for p in &parts {
                let g = uni(tower, p);
                if f.deg() + g.deg() <= 4 {
                    f = &f * &g;
                }
            }
            prop_assume!(!f.is_zero() && f.deg() >= 1);
            let factors = factor_univariate(&f, tower).unwrap();
            let mut prod = UniPoly::constant(f.lc());
            let mut total = 0;
            for (g, m) in &factors {
                prop_assert!(g.deg() >= 1);
                prop_assert!(g.lc().is_one());
                prod = &prod * &g.pow(*m as u32);
                total += g.deg() * m;
            }
            prop_assert_eq!(total, f.deg());
            prop_assert_eq!(prod, f);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn rational_factor_product_round_trip() -> Result<(), String> {
    let strategy = (prop::collection::vec(-6i64..=6, 2..=5),);
    runner()
        .run(&strategy, |(cs,)| {
            let f = basepoints::poly::UniPoly::<Rational>::from_i64s(&cs);
            prop_assume!(f.deg() >= 1);
            let factors = factor_rational(&f).unwrap();
            let prod = factors.iter().fold(
                basepoints::poly::UniPoly::constant(f.lc()),
                |acc, (g, m)| &acc * &g.pow(*m as u32),
            );
            prop_assert_eq!(prod, f);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn gcd_divides_all() -> Result<(), String> {
    let strategy = (0usize..3, terms(2, 4), terms(2, 4), terms(2, 3));
    runner()
        .run(&strategy, |(t, a, b, c)| {
            let tower = &towers()[t];
            let (a, b, c) = (bipoly(tower, &a), bipoly(tower, &b), bipoly(tower, &c));
            let (f, g) = (&a * &c, &b * &c);
            prop_assume!(!f.is_zero() || !g.is_zero());
            let d = gcd_tuple(&[f.clone(), g.clone()]).unwrap();
            prop_assert!(f.exact_div(&d).is_some(), "{} does not divide {}", d, f);
            prop_assert!(g.exact_div(&d).is_some(), "{} does not divide {}", d, g);
            if !c.is_zero() {
                prop_assert!(
                    d.exact_div(&c).is_some(),
                    "common factor {} missing from {}",
                    c,
                    d
                );
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn resultant_vanishes_iff_common_factor() -> Result<(), String> {
    let strategy = (0usize..3, terms(2, 4), terms(2, 4), terms(2, 3));
    runner()
        .run(&strategy, |(t, a, b, c)| {
            let tower = &towers()[t];
            let (a, b, c) = (bipoly(tower, &a), bipoly(tower, &b), bipoly(tower, &c));
            let (f, g) = (&a * &c, &b * &c);
            prop_assume!(!f.is_zero() && !g.is_zero());
            prop_assume!(f.deg_in(Var::V) > 0 || g.deg_in(Var::V) > 0);
            let r = f.resultant(&g, Var::V).unwrap();
            prop_assert_eq!(r.is_zero(), f.gcd(&g).deg_in(Var::V) > 0);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn multiplicity_is_minimal_order() -> Result<(), String> {
    let strategy = (
        0usize..2,
        prop::collection::vec(terms(4, 5), 1..=3),
        (coeff(), coeff()),
    );
    runner()
        .run(&strategy, |(t, series, p)| {
            let tower = &towers()[t];
            let p = Point::new(elem(tower, p.0), elem(tower, p.1));
            // Translate so that the random terms describe the local expansion at p.
            let (mu, mv) = (-p.u.clone(), -p.v.clone());
            let polys: Vec<Poly> = series
                .iter()
                .map(|ts| bipoly(tower, ts).translate(&mu, &mv))
                .filter(|f| !f.is_zero())
                .collect();
            prop_assume!(!polys.is_empty());
            let by_order = polys.iter().filter_map(|f| ord_at(f, &p)).min().unwrap();
            prop_assert_eq!(multiplicity(&polys, &p).unwrap(), by_order);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn kernel_annihilates() -> Result<(), String> {
    let strategy = (
        0usize..3,
        1usize..=6,
        prop::collection::vec(prop::collection::vec(coeff(), 6), 0..=5),
    );
    runner()
        .run(&strategy, |(t, ncols, rows)| {
            let tower = &towers()[t];
            let m: Vec<Vec<FieldElement>> = rows
                .iter()
                .map(|r| r[..ncols].iter().map(|&c| elem(tower, c)).collect())
                .collect();
            let k = kernel(&m, ncols);
            for v in &k {
                prop_assert!(mat_vec(&m, v).iter().all(|x| x.is_zero()));
            }
            prop_assert_eq!(rank(&m, ncols) + k.len(), ncols);
            prop_assert_eq!(rank(&k, ncols), k.len());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn involution_is_involutive() -> Result<(), String> {
    let strategy = (
        any::<bool>(),
        0usize..=8,
        prop::collection::vec((0usize..8, 0usize..8), 0..=4),
        prop::collection::vec(-5i64..=5, 10),
    );
    runner()
        .run(&strategy, |(type2, r, swaps, coeffs)| {
            let mut perm: Vec<usize> = (0..r).collect();
            for (a, b) in swaps {
                let (a, b) = (a % r.max(1), b % r.max(1));
                if a < r && b < r && perm[a] == a && perm[b] == b {
                    perm.swap(a, b);
                }
            }
            let basis = if type2 {
                Basis::Type2(r)
            } else {
                Basis::Type1(r)
            };
            let c = NSClass::new(basis, coeffs[..basis.rank()].to_vec()).unwrap();
            let ctx = LatticeContext {
                basis,
                h: NSClass::zero(basis),
                k: NSClass::zero(basis),
                involution: Some(perm),
            };
            let once = involution_image(&ctx, &c).unwrap();
            prop_assert_eq!(involution_image(&ctx, &once).unwrap(), c.clone());
            prop_assert_eq!(intersect(&once, &once).unwrap(), intersect(&c, &c).unwrap());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn intersection_form_is_unimodular() -> Result<(), String> {
    let strategy = (
        any::<bool>(),
        0usize..=10,
        prop::collection::vec(-4i64..=4, 36),
    );
    runner()
        .run(&strategy, |(type2, r, xs)| {
            let basis = if type2 {
                Basis::Type2(r)
            } else {
                Basis::Type1(r)
            };
            let n = basis.rank();
            let g = gram(basis);
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(g[i][j], g[j][i]);
                }
            }
            let q: Vec<Vec<Rational>> = g
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect();
            let d = det(q);
            prop_assert!(d == Rational::one() || d == -Rational::one(), "det {}", d);
            let class = |k: usize| NSClass::new(basis, xs[k * n..(k + 1) * n].to_vec()).unwrap();
            let (a, b, c) = (class(0), class(1), class(2));
            let ab = a.checked_add(&b).unwrap();
            prop_assert_eq!(
                intersect(&ab, &c).unwrap(),
                intersect(&a, &c).unwrap() + intersect(&b, &c).unwrap()
            );
            prop_assert_eq!(intersect(&a, &b).unwrap(), intersect(&b, &a).unwrap());
            Ok(())
        })
        .map_err(|e| e.to_string())
}
