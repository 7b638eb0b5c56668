//! Polynomial arithmetic, Gröbner bases, linear algebra and Hilbert series.

pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod vector;

pub use field::{Field, Rational, Scalar};
pub use groebner::{
    buchberger, groebner, kernel, minimal_generators, GbOutput, GroebnerBasis, InputKind,
};
pub use hilbert::{HilbertSeries, LaurentPoly};
pub use linalg::DenseMatrix;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_poly, PolyParseError};
pub use vector::{Term, TermOrder, Vector};
