//! Complex conjugation on a tower, as far as the tower allows it.

use num_traits::{Signed, Zero};

use super::{Elem, FieldElement, Tower};
use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::scalar::{Field, Rational};

/// An involutive automorphism of a tower that fixes `Q`, determined by the
/// image of each generator.
#[derive(Clone, Debug)]
pub struct Conjugation {
    tower: Tower,
    /// Image of generator `j`, tagged with the sub-tower of its first
    /// `j + 1` generators.
    images: Vec<FieldElement>,
}

/// Number of distinct real roots of a rational polynomial (Sturm).
pub(crate) fn real_root_count(f: &UniPoly<Rational>) -> usize {
    if f.deg() == 0 {
        return 0;
    }
    let mut seq = vec![f.clone(), f.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    let changes = |signs: Vec<i32>| {
        let nz: Vec<i32> = signs.into_iter().filter(|&s| s != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let sign = |q: &Rational| {
        if q.is_positive() {
            1
        } else if q.is_negative() {
            -1
        } else {
            0
        }
    };
    let at_pos: Vec<i32> = seq.iter().map(|p| sign(&p.lc())).collect();
    let at_neg: Vec<i32> = seq
        .iter()
        .map(|p| sign(&p.lc()) * if p.deg() % 2 == 1 { -1 } else { 1 })
        .collect();
    changes(at_neg) - changes(at_pos)
}

impl Conjugation {
    /// Builds the conjugation generator by generator. A generator with a
    /// rational minimal polynomial whose roots are all real is fixed.
    /// Otherwise it is sent to the first other root of the conjugated
    /// minimal polynomial that keeps the map involutive.
    pub fn complex(tower: &Tower) -> Result<Conjugation> {
        let mut images: Vec<FieldElement> = Vec::with_capacity(tower.len());
        for j in 0..tower.len() {
            let level = tower.prefix(j + 1);
            let alpha = level.generator(j);
            let minpoly = tower.minpoly(j);
            let partial = Conjugation {
                tower: tower.prefix(j),
                images: images.clone(),
            };
            let rational = minpoly
                .coeffs()
                .iter()
                .map(|c| c.to_rational())
                .collect::<Option<Vec<_>>>()
                .map(UniPoly::new);
            if let Some(q) = &rational {
                if real_root_count(q) == q.deg() {
                    images.push(alpha);
                    continue;
                }
            }
            let conj = UniPoly::new(
                minpoly
                    .coeffs()
                    .iter()
                    .map(|c| partial.apply(c))
                    .collect::<Result<Vec<_>>>()?,
            );
            let mut chosen = None;
            for (h, _) in crate::factorize::factor_univariate(&conj, &level)? {
                if h.deg() != 1 {
                    continue;
                }
                let root = -h.coeff(0);
                if root == alpha {
                    continue;
                }
                let mut trial = images.clone();
                trial.push(root.clone());
                let candidate = Conjugation {
                    tower: level.clone(),
                    images: trial,
                };
                if candidate.apply(&candidate.apply(&alpha)?)? == alpha {
                    chosen = Some(root);
                    break;
                }
            }
            match chosen {
                Some(root) => images.push(root),
                None => {
                    return Err(Error::ConjugationUnavailable(format!(
                        "no conjugate root of {} in the tower",
                        minpoly.fmt_with("t")
                    )))
                }
            }
        }
        Ok(Conjugation {
            tower: tower.clone(),
            images,
        })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// Image of the `j`-th generator.
    pub fn image(&self, j: usize) -> &FieldElement {
        &self.images[j]
    }

    pub fn apply(&self, x: &FieldElement) -> Result<FieldElement> {
        let compatible = x.tower().is_prefix_of(&self.tower)
            || (self.tower.is_prefix_of(x.tower()) && x.height() <= self.tower.len());
        if !compatible {
            return Err(Error::FieldMismatch);
        }
        Ok(self.apply_elem(x.repr()))
    }

    fn apply_elem(&self, e: &Elem) -> FieldElement {
        match e {
            Elem::Rat(q) => self.tower.rational_element(q.clone()),
            Elem::Alg { level, coeffs } => {
                let img = self.images[*level]
                    .embed(&self.tower)
                    .expect("image lies in tower");
                let mut acc = self.tower.rational_element(Rational::zero());
                for c in coeffs.iter().rev() {
                    acc = &(&acc * &img) + &self.apply_elem(c);
                }
                acc
            }
        }
    }

    pub fn apply_poly(&self, f: &UniPoly<FieldElement>) -> Result<UniPoly<FieldElement>> {
        Ok(UniPoly::new(
            f.coeffs()
                .iter()
                .map(|c| self.apply(c))
                .collect::<Result<Vec<_>>>()?,
        ))
    }
}
