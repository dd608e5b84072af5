//! Exact scalar algebra: rationals, polynomials, canonical rational
//! functions, the expression grammar, and truncated power-series jets.

pub mod chart;
pub mod expression;
pub mod jet;
pub mod parse;
pub mod poly;
pub mod rational;

pub use chart::{Chart, ChartError};
pub use expression::{canonicalize, Expression, ExprError};
pub use jet::{jet_evaluate, Jet};
pub use parse::{parse_expression, ParseError};
pub use rational::{parse_rat, rat_to_string, Int, Rat};
