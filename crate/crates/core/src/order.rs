//! The natural partial order on a semigroup.

use crate::table::CayleyTable;

/// `a ≤ b` iff `a = eb = bf` for some idempotents `e`, `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaturalOrder {
    pub leq: Vec<Vec<bool>>,
    pub maximal: Vec<bool>,
}

impl NaturalOrder {
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn is_maximal(&self, a: usize) -> bool {
        self.maximal[a]
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.maximal.len()).filter(|&a| self.maximal[a]).collect()
    }
}

/// Computes the natural order with respect to the idempotent set `idempotents`.
pub fn natural_order(s: &CayleyTable, idempotents: &[usize]) -> NaturalOrder {
    let n = s.order();
    let leq: Vec<Vec<bool>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    idempotents.iter().any(|&e| s.mul(e, b) == a)
                        && idempotents.iter().any(|&f| s.mul(b, f) == a)
                })
                .collect()
        })
        .collect();
    let maximal = (0..n).map(|a| (0..n).all(|b| b == a || !leq[a][b])).collect();
    NaturalOrder { leq, maximal }
}
