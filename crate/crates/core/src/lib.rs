//! Basepoints of linear series of plane curves, including infinitely near
//! ones, with exact arithmetic over towers of number fields.
//!
//! The arithmetic layers are generic over a [`scalar::Field`]; the geometric
//! layers work over [`FieldElement`], since solving for basepoints adjoins
//! new algebraic numbers as it goes.

pub mod baselocus;
pub mod bipoly;
pub mod error;
pub mod factorize;
pub mod linalg;
pub mod linseries;
pub mod nslattice;
pub mod numfield;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod zeroset;

pub use baselocus::{get_basepoints, BasepointTree, Node, Step};
pub use bipoly::{Chart, Var};
pub use error::{Error, Result};
pub use linseries::{BasisSpec, LinearSeries};
pub use nslattice::{Basis, LatticeContext, NSClass};
pub use numfield::{FieldElement, Tower};
pub use scalar::{Field, Rational};
pub use zeroset::Point;

/// Bivariate polynomial over a number-field tower.
pub type Poly = bipoly::BiPoly<FieldElement>;
/// Bivariate polynomial over `Q`.
pub type RationalPoly = bipoly::BiPoly<Rational>;
/// Univariate polynomial over a number-field tower.
pub type UniPoly = poly::UniPoly<FieldElement>;
