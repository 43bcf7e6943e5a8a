//! Exact arithmetic in towers of number fields `Q(a_1, ..., a_k)`.
//!
//! A [`Tower`] is an ordered list of generators, each with a monic
//! irreducible minimal polynomial over the tower below it. A
//! [`FieldElement`] stores a canonical representative reduced modulo every
//! minimal polynomial, so two elements are equal exactly when their
//! representatives coincide. Extending a tower never changes the
//! representative of an old element: the embedding into a larger tower is
//! the identity on representatives.

mod conjugation;
pub(crate) mod elem;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::scalar::{Field, Rational};

pub use conjugation::Conjugation;
pub(crate) use elem::Elem;
use elem::Gens;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Generator {
    pub name: String,
    /// Monic, low degree first, coefficients below this generator's level.
    pub minpoly: Vec<Elem>,
}

impl Gens for [Generator] {
    fn minpoly(&self, level: usize) -> &[Elem] {
        &self[level].minpoly
    }
}

impl Gens for Vec<Generator> {
    fn minpoly(&self, level: usize) -> &[Elem] {
        &self[level].minpoly
    }
}

/// `Q` extended successively by roots of irreducible polynomials.
#[derive(Clone)]
pub struct Tower {
    gens: Arc<Vec<Generator>>,
}

fn rational_gens() -> Arc<Vec<Generator>> {
    static EMPTY: OnceLock<Arc<Vec<Generator>>> = OnceLock::new();
    EMPTY.get_or_init(|| Arc::new(Vec::new())).clone()
}

impl Tower {
    /// The tower with no generators, i.e. `Q`.
    pub fn rational() -> Tower {
        Tower {
            gens: rational_gens(),
        }
    }

    /// Number of generators.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    /// Same as [`Tower::is_rational`].
    pub fn is_empty(&self) -> bool {
        self.is_rational()
    }

    pub fn is_rational(&self) -> bool {
        self.gens.is_empty()
    }

    /// Degree of the tower over `Q`.
    pub fn degree(&self) -> usize {
        self.gens.iter().map(|g| g.minpoly.len() - 1).product()
    }

    pub fn names(&self) -> Vec<&str> {
        self.gens.iter().map(|g| g.name.as_str()).collect()
    }

    pub fn name(&self, j: usize) -> &str {
        &self.gens[j].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// The `j`-th generator as an element of this tower.
    pub fn generator(&self, j: usize) -> FieldElement {
        assert!(j < self.len(), "generator index out of range");
        FieldElement {
            repr: Elem::Alg {
                level: j,
                coeffs: vec![Elem::zero(), Elem::one()],
            },
            tower: self.clone(),
        }
    }

    /// Minimal polynomial of the `j`-th generator over `self.prefix(j)`.
    pub fn minpoly(&self, j: usize) -> UniPoly<FieldElement> {
        let sub = self.prefix(j);
        UniPoly::new(
            self.gens[j]
                .minpoly
                .iter()
                .map(|e| sub.wrap(e.clone()))
                .collect(),
        )
    }

    /// The sub-tower generated by the first `j` generators.
    pub fn prefix(&self, j: usize) -> Tower {
        if j >= self.len() {
            return self.clone();
        }
        if j == 0 {
            return Tower::rational();
        }
        Tower {
            gens: Arc::new(self.gens[..j].to_vec()),
        }
    }

    /// True when `self` is a sub-tower of `other`.
    pub fn is_prefix_of(&self, other: &Tower) -> bool {
        Arc::ptr_eq(&self.gens, &other.gens)
            || (self.len() <= other.len() && other.gens[..self.len()] == self.gens[..])
    }

    /// The smaller tower containing both, when one extends the other.
    pub fn join(&self, other: &Tower) -> Result<Tower> {
        if self.is_prefix_of(other) {
            Ok(other.clone())
        } else if other.is_prefix_of(self) {
            Ok(self.clone())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn rational_element(&self, q: Rational) -> FieldElement {
        self.wrap(Elem::Rat(q))
    }

    pub(crate) fn wrap(&self, repr: Elem) -> FieldElement {
        debug_assert!(repr.height() <= self.len());
        FieldElement {
            repr,
            tower: self.clone(),
        }
    }

    pub(crate) fn gens(&self) -> &[Generator] {
        &self.gens
    }

    /// Adjoins a root of `minpoly`, which must be monic, of degree at least
    /// two and irreducible over `self`. Irreducibility is re-checked here.
    pub fn extend(
        &self,
        name: &str,
        minpoly: &UniPoly<FieldElement>,
    ) -> Result<(Tower, Embedding, FieldElement)> {
        self.check_extension(name, minpoly)?;
        let factors = crate::factorize::factor_univariate(minpoly, self)?;
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(Error::InvalidExtension(format!(
                "{} is reducible over the current tower",
                minpoly.fmt_with("t")
            )));
        }
        let (tower, root) = self.extend_unchecked(name, minpoly)?;
        let emb = Embedding {
            source: self.clone(),
            target: tower.clone(),
        };
        Ok((tower, emb, root))
    }

    fn check_extension(&self, name: &str, minpoly: &UniPoly<FieldElement>) -> Result<()> {
        if minpoly.deg() < 2 {
            return Err(Error::InvalidExtension(format!(
                "minimal polynomial {} has degree below 2",
                minpoly.fmt_with("t")
            )));
        }
        if !minpoly.lc().is_one() {
            return Err(Error::InvalidExtension(
                "minimal polynomial is not monic".into(),
            ));
        }
        let valid_name = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid_name {
            return Err(Error::InvalidExtension(format!(
                "bad generator name {name:?}"
            )));
        }
        if self.index_of(name).is_some() {
            return Err(Error::InvalidExtension(format!(
                "generator {name} already declared"
            )));
        }
        Ok(())
    }

    /// Adjoins without the irreducibility check; used where the polynomial
    /// comes straight out of [`crate::factorize::factor_univariate`].
    pub(crate) fn extend_unchecked(
        &self,
        name: &str,
        minpoly: &UniPoly<FieldElement>,
    ) -> Result<(Tower, FieldElement)> {
        self.check_extension(name, minpoly)?;
        let mut coeffs = Vec::with_capacity(minpoly.coeffs().len());
        for c in minpoly.coeffs() {
            if !c.tower.is_prefix_of(self) {
                return Err(Error::FieldMismatch);
            }
            coeffs.push(c.repr.clone());
        }
        let mut gens = self.gens.as_ref().clone();
        gens.push(Generator {
            name: name.to_string(),
            minpoly: coeffs,
        });
        let tower = Tower {
            gens: Arc::new(gens),
        };
        let root = tower.generator(tower.len() - 1);
        Ok((tower, root))
    }

    /// A fresh generator name: `i` for a root of `t^2 + 1`, else `a<n>`.
    pub fn fresh_name(&self, minpoly: &UniPoly<FieldElement>) -> String {
        let is_i =
            minpoly.coeffs().len() == 3 && minpoly.coeff(0).is_one() && minpoly.coeff(1).is_zero();
        if is_i && self.index_of("i").is_none() {
            return "i".to_string();
        }
        (1..)
            .map(|n| format!("a{n}"))
            .find(|n| self.index_of(n).is_none())
            .unwrap()
    }
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.gens, &other.gens) || self.gens == other.gens
    }
}

impl Eq for Tower {}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q")?;
        if !self.is_rational() {
            write!(f, "(")?;
            for j in 0..self.len() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}: {}", self.name(j), self.minpoly(j).fmt_with("t"))?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Inclusion of a tower into an extension of it.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Tower,
    target: Tower,
}

impl Embedding {
    pub fn new(source: &Tower, target: &Tower) -> Result<Embedding> {
        if !source.is_prefix_of(target) {
            return Err(Error::FieldMismatch);
        }
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
        })
    }

    pub fn identity(tower: &Tower) -> Embedding {
        Embedding {
            source: tower.clone(),
            target: tower.clone(),
        }
    }

    pub fn source(&self) -> &Tower {
        &self.source
    }

    pub fn target(&self) -> &Tower {
        &self.target
    }

    pub fn apply(&self, x: &FieldElement) -> Result<FieldElement> {
        if !x.tower.is_prefix_of(&self.source) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.target.wrap(x.repr.clone()))
    }
}

/// An element of a number-field tower.
#[derive(Clone)]
pub struct FieldElement {
    repr: Elem,
    tower: Tower,
}

impl FieldElement {
    pub fn rational(q: Rational) -> FieldElement {
        Tower::rational().wrap(Elem::Rat(q))
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub(crate) fn repr(&self) -> &Elem {
        &self.repr
    }

    /// Number of generators the element actually uses.
    pub fn height(&self) -> usize {
        self.repr.height()
    }

    /// The same value, tagged with an extension of its tower.
    pub fn embed(&self, target: &Tower) -> Result<FieldElement> {
        Embedding::new(&self.tower, target)?.apply(self)
    }

    fn joined(&self, other: &FieldElement) -> Result<Tower> {
        self.tower.join(&other.tower)
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        let t = self.joined(other)?;
        Ok(t.wrap(self.repr.add(&other.repr)))
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        let t = self.joined(other)?;
        Ok(t.wrap(self.repr.sub(&other.repr)))
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        let t = self.joined(other)?;
        let repr = self.repr.mul(&other.repr, t.gens());
        Ok(t.wrap(repr))
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        let t = self.joined(other)?;
        let inv = other.repr.inv(t.gens()).ok_or(Error::DivisionByZero)?;
        Ok(t.wrap(self.repr.mul(&inv, t.gens())))
    }

    /// Coefficients of `self` as a polynomial in the top generator of its
    /// tower, as elements of the tower one level down.
    pub fn top_coeffs(&self) -> Vec<FieldElement> {
        let n = self.tower.len();
        assert!(n > 0, "rational tower has no top generator");
        let sub = self.tower.prefix(n - 1);
        self.repr
            .coeffs_at(n - 1)
            .into_iter()
            .map(|e| sub.wrap(e))
            .collect()
    }

    /// Inverse of [`FieldElement::top_coeffs`]: `sum c_j a^j` for the top
    /// generator `a` of `tower`.
    pub fn from_top_coeffs(tower: &Tower, coeffs: &[FieldElement]) -> FieldElement {
        let a = tower.generator(tower.len() - 1);
        let mut acc = tower.wrap(Elem::zero());
        for c in coeffs.iter().rev() {
            acc = acc * a.clone() + c.clone();
        }
        acc
    }

    pub fn fmt_repr(&self) -> String {
        fmt_elem(&self.repr, self.tower.gens())
    }
}

fn elem_is_atomic(e: &Elem) -> bool {
    match e {
        Elem::Rat(_) => true,
        Elem::Alg { coeffs, .. } => {
            let mut nz = coeffs.iter().filter(|c| !c.is_zero());
            matches!((nz.next(), nz.next()), (Some(c), None) if elem_is_atomic(c))
        }
    }
}

fn fmt_elem(e: &Elem, gens: &[Generator]) -> String {
    match e {
        Elem::Rat(q) => q.to_string(),
        Elem::Alg { level, coeffs } => {
            let name = &gens[*level].name;
            let mut out = String::new();
            let mut first = true;
            for (k, c) in coeffs.iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                let mono = match k {
                    0 => String::new(),
                    1 => name.clone(),
                    _ => format!("{name}^{k}"),
                };
                let text = fmt_elem(c, gens);
                let (neg, body) = if elem_is_atomic(c) {
                    match text.strip_prefix('-') {
                        Some(rest) => (true, rest.to_string()),
                        None => (false, text),
                    }
                } else {
                    (false, format!("({text})"))
                };
                match (first, neg) {
                    (true, true) => out.push('-'),
                    (true, false) => {}
                    (false, true) => out.push_str(" - "),
                    (false, false) => out.push_str(" + "),
                }
                if mono.is_empty() {
                    out.push_str(&body);
                } else if body == "1" {
                    out.push_str(&mono);
                } else {
                    out.push_str(&body);
                    out.push('*');
                    out.push_str(&mono);
                }
                first = false;
            }
            out
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_repr())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_repr())
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr
            && (self.repr.height() == 0 || self.tower.join(&other.tower).is_ok())
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on canonical representatives; only meaningful
/// within one tower, where it gives a deterministic total order.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.repr.cmp(&other.repr)
    }
}

macro_rules! panicking_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}
panicking_op!(Add, add, checked_add);
panicking_op!(Sub, sub, checked_sub);
panicking_op!(Mul, mul, checked_mul);
panicking_op!(Div, div, checked_div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            repr: self.repr.neg(),
            tower: self.tower,
        }
    }
}

impl Zero for FieldElement {
    fn zero() -> Self {
        FieldElement::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }
}

impl One for FieldElement {
    fn one() -> Self {
        FieldElement::rational(Rational::one())
    }
    fn is_one(&self) -> bool {
        self.repr.is_one()
    }
}

impl Field for FieldElement {
    fn inverse(&self) -> Option<Self> {
        self.repr.inv(self.tower.gens()).map(|r| self.tower.wrap(r))
    }

    fn from_rational(q: &Rational) -> Self {
        FieldElement::rational(q.clone())
    }

    fn to_rational(&self) -> Option<Rational> {
        match &self.repr {
            Elem::Rat(q) => Some(q.clone()),
            Elem::Alg { .. } => None,
        }
    }

    fn is_atomic(&self) -> bool {
        elem_is_atomic(&self.repr)
    }
}
