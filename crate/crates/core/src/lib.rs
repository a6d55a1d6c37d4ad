//! Ribbon graphs, their stable degenerations and the cell structure of the
//! combinatorial moduli space.

pub mod canon;
pub mod cli;
pub mod collapse;
pub mod corpus;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod io;
pub mod metric;
pub mod perm;
pub mod stable;
pub mod surface;

pub use error::{RibbonError, Result};
pub use graph::{Cell, PointedRibbonGraph, Pointing, RibbonGraph};

/// Exact scalar used wherever values are compared.
pub type Rational = num_rational::BigRational;
pub type Lengths = metric::Lengths<Rational>;
pub type StableMetric = metric::StableMetric<Rational>;
pub type Projection = metric::Projection<Rational>;
pub type Poly = metric::Poly<Rational>;
pub type LambdaMap = metric::LambdaMap<Rational>;
