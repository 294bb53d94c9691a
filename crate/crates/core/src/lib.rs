//! Exact linear algebra for singular sheaves on plane curves.
//!
//! A zero-dimensional scheme `Z` of length `(d-1)(d-2)/2` in the plane that
//! lies on no curve of degree `d - 3` determines a fibre: the projective
//! space of degree-`d` curves through `Z`, of dimension `3d - 1`. The
//! sheaves over that fibre that fail to be locally free on their support
//! are those whose curve is singular at a point of `Z` in the sense of
//! [`localfree`]. This crate computes these loci, their intersections,
//! and the Kronecker module that resolves the ideal of `Z`.
//!
//! Everything is generic over a [`scalar::Field`]; the aliases below fix
//! arbitrary-precision rationals, which is what the command-line tool uses.
//! Every verdict is a rank or a vanishing test on rational data, so results
//! over `Q` hold over its algebraic closure.

pub mod error;
pub mod exactalg;
pub mod formats;
pub mod kronecker;
pub mod linsys;
pub mod localfree;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod schemes;
pub mod singloci;

pub use error::Error;
pub use scalar::{Field, Rational};

pub type QMatrix = exactalg::Matrix<Rational>;
pub type QHomPoly = poly::HomPoly<Rational>;
pub type QLocalPoly = poly::LocalPoly<Rational>;
pub type QPointConfig = schemes::PointConfig<Rational>;
pub type QFibre = linsys::Fibre<Rational>;
pub type QKronecker = kronecker::KroneckerModule<Rational>;
