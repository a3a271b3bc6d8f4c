//! Small well-known algebras used throughout the tests, docs and CLI examples.

use crate::algebra::{parse_algebra, AlgebraRef};
use crate::lambda::LambdaSpec;
use std::sync::Arc;

pub const BUTTERFLY_QA: &str = "\
vertices: 1 2 3 4 5
arrow a: 1 -> 3
arrow b: 2 -> 3
arrow c: 1 -> 4
arrow d: 2 -> 5
arrow e: 3 -> 4
arrow f: 3 -> 5
relation: e a
relation: e b
relation: f a
relation: f b
";

pub const KRONECKER_QA: &str = "\
vertices: 1 2
arrow a: 1 -> 2
arrow b: 1 -> 2
";

pub const A2_QA: &str = "\
vertices: 1 2
arrow a: 1 -> 2
";

/// Two triangles glued at a middle vertex, all length-2 paths zero.
pub fn butterfly() -> AlgebraRef {
    Arc::new(parse_algebra(BUTTERFLY_QA).unwrap())
}

/// Two parallel arrows `1 -> 2`, no relations.
pub fn kronecker() -> AlgebraRef {
    Arc::new(parse_algebra(KRONECKER_QA).unwrap())
}

/// Single arrow `1 -> 2`.
pub fn a2() -> AlgebraRef {
    Arc::new(parse_algebra(A2_QA).unwrap())
}

/// One vertex with a loop `b` and relation `b^n`, i.e. K[x]/(x^n).
pub fn loop_algebra(n: usize) -> AlgebraRef {
    let b = std::iter::repeat("b").take(n).collect::<Vec<_>>().join(" ");
    Arc::new(parse_algebra(&format!("vertices: 1\narrow b: 1 -> 1\nrelation: {b}\n")).unwrap())
}

/// The two-vertex algebra with arrow `a: 1 -> 2`, loop `b` at 2 and relations
/// `b^n`, `b^2 a`.
pub fn lambda(n: usize) -> AlgebraRef {
    LambdaSpec::new(n).unwrap().algebra()
}
