//! Exact rational, polynomial, series, matrix and linear-programming
//! primitives.

pub mod factor;
pub mod gcd;
pub mod linalg;
pub mod lp;
pub mod poly;
pub mod rational;
pub mod series;

pub use gcd::{gcd, squarefree_decompose};
pub use linalg::{pivot_orders, Matrix, PivotOrders};
pub use lp::{lp_max, LinearProgram, LpError, LpSolution, Relation};
pub use poly::{Exponent, Polynomial};
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use series::{series_substitute, TruncatedSeries};
