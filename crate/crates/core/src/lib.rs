//! Exact classification of flat epimorphisms, universal localisations and
//! classical localisations for a catalog of concrete noetherian rings.
//!
//! The arithmetic core is generic over exact integer types through
//! [`scalar::Int`]; the aliases below fix it to arbitrary precision.

pub mod abgroup;
pub mod catalog;
pub mod divisors;
pub mod elliptic;
pub mod error;
pub mod lcohom;
pub mod poly;
pub mod quadorder;
pub mod scalar;
pub mod segre;
pub mod spectool;
pub mod verdict;

pub use catalog::{classify, catalog_list, CatalogEntry};
pub use error::{Error, Result};
pub use verdict::{Tri, Verdict, Witness};

pub use num_bigint::BigInt;

pub type Rational = num_rational::BigRational;
pub type IntMatrix = abgroup::Matrix<BigInt>;
pub type GroupPresentation = abgroup::AbelianGroupPresentation<BigInt>;
pub type Curve = elliptic::WeierstrassCurve<BigInt>;
pub type Point = elliptic::ECPoint<BigInt>;
pub type ImagQuadOrder = quadorder::QuadOrder<BigInt>;
pub type ImagQuadIdeal = quadorder::QuadIdeal<BigInt>;
pub type Polynomial = poly::Poly<BigInt>;
