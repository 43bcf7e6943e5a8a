//! Sparse polynomials in two variables `u`, `v`, with subresultant gcd and
//! resultant, blowup pullbacks and derivative evaluation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::scalar::{write_term, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    U,
    V,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::U => Var::V,
            Var::V => Var::U,
        }
    }
}

/// Affine charts of the blowup of a point. In chart `T` the exceptional
/// curve is `v = 0`, in chart `S` it is `u = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Chart {
    T,
    S,
}

impl Chart {
    /// The variable cutting out the exceptional curve in this chart.
    pub fn exceptional(self) -> Var {
        match self {
            Chart::T => Var::V,
            Chart::S => Var::U,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Chart::T => "t",
            Chart::S => "s",
        }
    }
}

/// Terms are keyed by `(deg_u, deg_v)`; zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct BiPoly<K> {
    terms: BTreeMap<(u32, u32), K>,
}

impl<K: Field> Default for BiPoly<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Field> BiPoly<K> {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: K, a: u32, b: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        BiPoly { terms }
    }

    pub fn u() -> Self {
        Self::monomial(K::one(), 1, 0)
    }

    pub fn v() -> Self {
        Self::monomial(K::one(), 0, 1)
    }

    pub fn var(x: Var) -> Self {
        match x {
            Var::U => Self::u(),
            Var::V => Self::v(),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), K)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, key: (u32, u32), c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&(u32, u32), &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: u32, b: u32) -> K {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    pub fn deg_in(&self, x: Var) -> u32 {
        self.terms
            .keys()
            .map(|&(a, b)| if x == Var::U { a } else { b })
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(a, b)| a + b).max().unwrap_or(0)
    }

    /// Smallest total degree of a term: the order of vanishing at the
    /// origin. `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).min()
    }

    /// Leading term in the lexicographic order with `u > v`.
    pub fn leading(&self) -> Option<((u32, u32), &K)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c))
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, x)| (*k, x.clone() * c.clone())))
    }

    /// Scaled so that the lexicographic leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading().and_then(|(_, c)| c.inverse()) {
            Some(inv) => self.scale(&inv),
            None => Self::zero(),
        }
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> BiPoly<L> {
        BiPoly::from_terms(self.terms.iter().map(|(k, c)| (*k, f(c))))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, u0: &K, v0: &K) -> K {
        self.substitute(Var::U, u0).eval(v0)
    }

    /// Substitutes `x = value`, leaving a polynomial in the other variable.
    pub fn substitute(&self, x: Var, value: &K) -> UniPoly<K> {
        let mut coeffs: Vec<K> = Vec::new();
        for (&(a, b), c) in &self.terms {
            let (e_sub, e_keep) = if x == Var::U { (a, b) } else { (b, a) };
            let e_keep = e_keep as usize;
            if coeffs.len() <= e_keep {
                coeffs.resize(e_keep + 1, K::zero());
            }
            let term = c.clone() * value.pow(e_sub);
            coeffs[e_keep] = coeffs[e_keep].clone() + term;
        }
        UniPoly::new(coeffs)
    }

    /// Embeds a univariate polynomial as a polynomial in `x`.
    pub fn from_uni(x: Var, p: &UniPoly<K>) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(e, c)| {
            let e = e as u32;
            (if x == Var::U { (e, 0) } else { (0, e) }, c.clone())
        }))
    }

    /// Coefficients with respect to `x`, each a polynomial in the other
    /// variable; entry `k` multiplies `x^k`.
    pub fn coeffs_in(&self, x: Var) -> Vec<UniPoly<K>> {
        let n = if self.is_zero() {
            0
        } else {
            self.deg_in(x) as usize + 1
        };
        let mut raw: Vec<Vec<K>> = vec![Vec::new(); n];
        for (&(a, b), c) in &self.terms {
            let (main, other) = if x == Var::U { (a, b) } else { (b, a) };
            let row = &mut raw[main as usize];
            if row.len() <= other as usize {
                row.resize(other as usize + 1, K::zero());
            }
            row[other as usize] = c.clone();
        }
        raw.into_iter().map(UniPoly::new).collect()
    }

    pub fn from_coeffs_in(x: Var, coeffs: &[UniPoly<K>]) -> Self {
        let mut terms = Vec::new();
        for (main, p) in coeffs.iter().enumerate() {
            for (other, c) in p.coeffs().iter().enumerate() {
                let (main, other) = (main as u32, other as u32);
                terms.push((
                    if x == Var::U {
                        (main, other)
                    } else {
                        (other, main)
                    },
                    c.clone(),
                ));
            }
        }
        Self::from_terms(terms)
    }

    pub fn swap(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())))
    }

    /// `self(pu, pv)`.
    pub fn compose(&self, pu: &Self, pv: &Self) -> Self {
        let mut upow = vec![Self::one()];
        let mut vpow = vec![Self::one()];
        let mut acc = Self::zero();
        for (&(a, b), c) in &self.terms {
            while upow.len() <= a as usize {
                let next = upow.last().unwrap() * pu;
                upow.push(next);
            }
            while vpow.len() <= b as usize {
                let next = vpow.last().unwrap() * pv;
                vpow.push(next);
            }
            let term = (&upow[a as usize] * &vpow[b as usize]).scale(c);
            acc = &acc + &term;
        }
        acc
    }

    /// `self(u + u0, v + v0)`.
    pub fn translate(&self, u0: &K, v0: &K) -> Self {
        let pu = &Self::u() + &Self::constant(u0.clone());
        let pv = &Self::v() + &Self::constant(v0.clone());
        self.compose(&pu, &pv)
    }

    /// Pullback along translation to `(u0, v0)` followed by the blowup
    /// chart: `f(uv + u0, v + v0)` for `T`, `f(u + u0, uv + v0)` for `S`.
    pub fn pullback(&self, u0: &K, v0: &K, chart: Chart) -> Self {
        let uv = &Self::u() * &Self::v();
        let (pu, pv) = match chart {
            Chart::T => (
                &uv + &Self::constant(u0.clone()),
                &Self::v() + &Self::constant(v0.clone()),
            ),
            Chart::S => (
                &Self::u() + &Self::constant(u0.clone()),
                &uv + &Self::constant(v0.clone()),
            ),
        };
        self.compose(&pu, &pv)
    }

    /// Writes `self = q * x^m + r` with `deg_x r < m`.
    pub fn div_rem_power(&self, x: Var, m: u32) -> (Self, Self) {
        let mut q = Self::zero();
        let mut r = Self::zero();
        for (&(a, b), c) in &self.terms {
            let e = if x == Var::U { a } else { b };
            if e >= m {
                let key = if x == Var::U { (a - m, b) } else { (a, b - m) };
                q.terms.insert(key, c.clone());
            } else {
                r.terms.insert((a, b), c.clone());
            }
        }
        (q, r)
    }

    /// `self / x^m`, failing unless the division is exact.
    pub fn exact_div_power(&self, x: Var, m: u32) -> Result<Self> {
        let (q, r) = self.div_rem_power(x, m);
        if !r.is_zero() {
            let name = if x == Var::U { "u" } else { "v" };
            return Err(Error::NotDivisible(format!("{name}^{m}")));
        }
        Ok(q)
    }

    /// `self / d` when `d` divides `self`, by division on lexicographic
    /// leading terms.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let ((da, db), dc) = d.leading()?;
        let dc_inv = dc.inverse()?;
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some(((a, b), c)) = r.leading() {
            if a < da || b < db {
                return None;
            }
            let t = Self::monomial(c.clone() * dc_inv.clone(), a - da, b - db);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    pub fn derivative(&self, x: Var) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(&(a, b), c)| {
            let e = if x == Var::U { a } else { b };
            (e > 0).then(|| {
                let key = if x == Var::U { (a - 1, b) } else { (a, b - 1) };
                (key, c.clone() * K::from_i64(e as i64))
            })
        }))
    }

    /// `d^(a+b) f / du^a dv^b` evaluated at `(u0, v0)`, without factorial
    /// normalization.
    pub fn deriv_eval(&self, a: u32, b: u32, u0: &K, v0: &K) -> K {
        let mut d = self.clone();
        for _ in 0..a {
            d = d.derivative(Var::U);
        }
        for _ in 0..b {
            d = d.derivative(Var::V);
        }
        d.eval(u0, v0)
    }

    /// Greatest common divisor, monic in the lexicographic leading term.
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let x = if self.deg_in(Var::V).max(other.deg_in(Var::V))
            >= self.deg_in(Var::U).max(other.deg_in(Var::U))
        {
            Var::V
        } else {
            Var::U
        };
        let a = self.coeffs_in(x);
        let b = other.coeffs_in(x);
        Self::from_coeffs_in(x, &subresultant_gcd(a, b)).monic()
    }

    /// Resultant eliminating `x`, as a polynomial in the other variable.
    /// Equals the Sylvester determinant with respect to `x`.
    pub fn resultant(&self, other: &Self, x: Var) -> Result<UniPoly<K>> {
        if self.is_zero() || other.is_zero() {
            return Ok(UniPoly::zero());
        }
        if self.deg_in(x) == 0 && other.deg_in(x) == 0 {
            return Err(Error::InvalidInput(
                "resultant needs positive degree in the eliminated variable".into(),
            ));
        }
        Ok(subresultant_resultant(
            self.coeffs_in(x),
            other.coeffs_in(x),
        ))
    }

    /// Formats with the given variable names; terms in descending
    /// lexicographic order (first variable first).
    pub fn fmt_with(&self, names: [&str; 2]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            let mut parts = Vec::new();
            for (name, e) in [(names[0], a), (names[1], b)] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            write_term(&mut out, c, &parts.join("*"), i == 0);
        }
        out
    }
}

/// Main-variable representation: coefficient `k` multiplies `x^k`.
type Dense<K> = Vec<UniPoly<K>>;

fn dense_trim<K: Field>(mut a: Dense<K>) -> Dense<K> {
    while a.last().is_some_and(UniPoly::is_zero) {
        a.pop();
    }
    a
}

fn dense_deg<K: Field>(a: &Dense<K>) -> usize {
    a.len().saturating_sub(1)
}

fn content<K: Field>(a: &Dense<K>) -> UniPoly<K> {
    a.iter().fold(UniPoly::zero(), |g, c| g.gcd(c))
}

fn div_coeffs<K: Field>(a: &Dense<K>, d: &UniPoly<K>) -> Dense<K> {
    a.iter()
        .map(|c| {
            c.exact_div(d)
                .expect("exact division in the coefficient ring")
        })
        .collect()
}

fn scale_dense<K: Field>(a: &Dense<K>, c: &UniPoly<K>) -> Dense<K> {
    dense_trim(a.iter().map(|x| x * c).collect())
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`.
fn prem<K: Field>(a: &Dense<K>, b: &Dense<K>) -> Dense<K> {
    let db = dense_deg(b);
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    let mut steps = (dense_deg(a) + 1).saturating_sub(db);
    while !r.is_empty() && dense_deg(&r) >= db {
        let shift = dense_deg(&r) - db;
        let lr = r.last().unwrap().clone();
        r = r.iter().map(|c| c * &lb).collect();
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = &r[shift + j] - &(&lr * bj);
        }
        r = dense_trim(r);
        steps -= 1;
    }
    let factor = lb.pow(steps as u32);
    scale_dense(&r, &factor)
}

fn subresultant_gcd<K: Field>(a: Dense<K>, b: Dense<K>) -> Dense<K> {
    let (mut a, mut b) = (dense_trim(a), dense_trim(b));
    if dense_deg(&b) > dense_deg(&a) {
        std::mem::swap(&mut a, &mut b);
    }
    if b.is_empty() {
        return a;
    }
    let ca = content(&a);
    let cb = content(&b);
    let d = ca.gcd(&cb);
    a = div_coeffs(&a, &ca);
    b = div_coeffs(&b, &cb);
    let mut g = UniPoly::one();
    let mut h = UniPoly::one();
    loop {
        let delta = (dense_deg(&a) - dense_deg(&b)) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            break;
        }
        if dense_deg(&r) == 0 {
            return vec![d];
        }
        a = b;
        let divisor = &g * &h.pow(delta);
        b = div_coeffs(&r, &divisor);
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant division")
        };
    }
    let cb = content(&b);
    scale_dense(&div_coeffs(&b, &cb), &d)
}

fn subresultant_resultant<K: Field>(a: Dense<K>, b: Dense<K>) -> UniPoly<K> {
    let (mut a, mut b) = (dense_trim(a), dense_trim(b));
    let mut sign = false;
    if dense_deg(&a) < dense_deg(&b) {
        if dense_deg(&a) % 2 == 1 && dense_deg(&b) % 2 == 1 {
            sign = !sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if dense_deg(&b) == 0 {
        let r = b[0].pow(dense_deg(&a) as u32);
        return if sign { -&r } else { r };
    }
    let ca = content(&a);
    let cb = content(&b);
    a = div_coeffs(&a, &ca);
    b = div_coeffs(&b, &cb);
    let t = &ca.pow(dense_deg(&b) as u32) * &cb.pow(dense_deg(&a) as u32);
    let mut g = UniPoly::one();
    let mut h = UniPoly::one();
    loop {
        let (da, db) = (dense_deg(&a), dense_deg(&b));
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let r = prem(&a, &b);
        a = b;
        let divisor = &g * &h.pow(delta);
        b = div_coeffs(&r, &divisor);
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant division")
        };
        if b.is_empty() {
            return UniPoly::zero();
        }
        if dense_deg(&b) == 0 {
            break;
        }
    }
    let da = dense_deg(&a) as u32;
    let lb = b.last().unwrap().clone();
    let h = if da == 0 {
        h
    } else {
        lb.pow(da)
            .exact_div(&h.pow(da - 1))
            .expect("subresultant division")
    };
    let r = &t * &h;
    if sign {
        -&r
    } else {
        r
    }
}

/// Gcd of a nonempty list, monic in the lexicographic leading term.
pub fn gcd_tuple<K: Field>(polys: &[BiPoly<K>]) -> Result<BiPoly<K>> {
    if polys.iter().all(BiPoly::is_zero) {
        return Err(Error::InvalidInput(
            "gcd of an empty or all-zero list".into(),
        ));
    }
    Ok(polys.iter().fold(BiPoly::zero(), |g, p| g.gcd(p)))
}

/// Applies [`BiPoly::pullback`] to every member.
pub fn pullback_blowup<K: Field>(
    polys: &[BiPoly<K>],
    u0: &K,
    v0: &K,
    chart: Chart,
) -> Vec<BiPoly<K>> {
    polys.iter().map(|p| p.pullback(u0, v0, chart)).collect()
}

/// Divides every member by `x^m`, failing unless each division is exact.
pub fn exact_div_power<K: Field>(polys: &[BiPoly<K>], x: Var, m: u32) -> Result<Vec<BiPoly<K>>> {
    polys.iter().map(|p| p.exact_div_power(x, m)).collect()
}

impl<K: Field> fmt::Display for BiPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(["u", "v"]))
    }
}

impl<K: Field> fmt::Debug for BiPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(["u", "v"]))
    }
}

impl<K: Field> Add for &BiPoly<K> {
    type Output = BiPoly<K>;
    fn add(self, rhs: Self) -> BiPoly<K> {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<K: Field> Neg for &BiPoly<K> {
    type Output = BiPoly<K>;
    fn neg(self) -> BiPoly<K> {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl<K: Field> Sub for &BiPoly<K> {
    type Output = BiPoly<K>;
    fn sub(self, rhs: Self) -> BiPoly<K> {
        self + &(-rhs)
    }
}

impl<K: Field> Mul for &BiPoly<K> {
    type Output = BiPoly<K>;
    fn mul(self, rhs: Self) -> BiPoly<K> {
        let mut out = BiPoly::zero();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &rhs.terms {
                out.add_term((a + c, b + d), x.clone() * y.clone());
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<K: Field> $tr for BiPoly<K> {
            type Output = BiPoly<K>;
            fn $m(self, rhs: Self) -> BiPoly<K> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<K: Field> Neg for BiPoly<K> {
    type Output = BiPoly<K>;
    fn neg(self) -> BiPoly<K> {
        -&self
    }
}
