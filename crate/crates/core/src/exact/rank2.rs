use std::cmp::Ordering;
use std::ops::Add;

use serde::{Deserialize, Serialize};

/// Rank-2 value `(v1, v2)`: `v1` is the t₁-order, `v2` the t₂-order.
/// Ordered lexicographically with `v2` deciding first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Rank2Val {
    pub v1: i64,
    pub v2: i64,
}

impl Rank2Val {
    pub const fn new(v1: i64, v2: i64) -> Self {
        Self { v1, v2 }
    }
}

impl Ord for Rank2Val {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.v2, self.v1).cmp(&(other.v2, other.v1))
    }
}

impl PartialOrd for Rank2Val {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Rank2Val {
    type Output = Rank2Val;
    fn add(self, rhs: Rank2Val) -> Rank2Val {
        Rank2Val::new(self.v1 + rhs.v1, self.v2 + rhs.v2)
    }
}

pub fn rank2_compare(a: Rank2Val, b: Rank2Val) -> Ordering {
    a.cmp(&b)
}
