//! Validated Cayley tables.

use crate::error::{Error, Result};

/// A finite semigroup given by its multiplication table over `0..order`.
///
/// Construction goes through [`CayleyTable::from_rows`] (or [`validate_table`]),
/// which checks that every entry is in range and that the product is
/// associative. Values of this type are immutable afterwards.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    order: usize,
    table: Vec<u32>,
    labels: Option<Vec<String>>,
}

/// Validates a raw square grid and returns the semigroup it describes.
pub fn validate_table(raw: &[Vec<i64>]) -> Result<CayleyTable> {
    CayleyTable::from_rows(raw)
}

impl CayleyTable {
    pub fn from_rows<T: Copy + TryInto<usize>>(rows: &[Vec<T>]) -> Result<Self> {
        let table = Self::grid(rows)?;
        table.check_associative()?;
        Ok(table)
    }

    /// Builds a table from a flat row-major vector without checking
    /// associativity. Range is still checked.
    pub fn from_flat(order: usize, flat: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyTable);
        }
        if flat.len() != order * order {
            return Err(Error::NotSquare { row: 0, len: flat.len(), expected: order * order });
        }
        let mut table = Vec::with_capacity(flat.len());
        for (k, &v) in flat.iter().enumerate() {
            if v >= order {
                return Err(Error::OutOfRange(k / order, k % order));
            }
            table.push(v as u32);
        }
        Ok(CayleyTable { order, table, labels: None })
    }

    /// Like [`from_flat`](Self::from_flat) but also requires associativity.
    pub fn from_flat_checked(order: usize, flat: Vec<usize>) -> Result<Self> {
        let table = Self::from_flat(order, flat)?;
        table.check_associative()?;
        Ok(table)
    }

    /// Parses a grid into a table whose associativity has not been checked.
    /// Used for negative controls; everything else should go through
    /// [`from_rows`](Self::from_rows).
    pub fn grid<T: Copy + TryInto<usize>>(rows: &[Vec<T>]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::EmptyTable);
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::NotSquare { row: i, len: row.len(), expected: order });
            }
            for (j, &v) in row.iter().enumerate() {
                match v.try_into() {
                    Ok(v) if v < order => table.push(v as u32),
                    _ => return Err(Error::OutOfRange(i, j)),
                }
            }
        }
        Ok(CayleyTable { order, table, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::Parse(format!(
                "{} labels given for a table of order {}",
                labels.len(),
                self.order
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Returns the first triple violating associativity, in lexicographic order.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(i, j);
                for k in 0..n {
                    if self.mul(ij, k) != self.mul(i, self.mul(j, k)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    fn check_associative(&self) -> Result<()> {
        match self.associativity_violation() {
            Some((i, j, k)) => Err(Error::NotAssociative(i, j, k)),
            None => Ok(()),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.mul(i, j)).collect())
            .collect()
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.order).filter(|&a| self.is_idempotent(a)).collect()
    }

    /// The table obtained by renaming element `a` to `perm[a]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<CayleyTable> {
        let n = self.order;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::BadSpec("relabeling is not a permutation".into()));
        }
        let mut flat = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                flat[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        CayleyTable::from_flat(n, flat)
    }

    /// The multiplication table restricted to `elements`, reindexed by
    /// position. `None` if the subset is not closed.
    pub fn restrict(&self, elements: &[usize]) -> Option<CayleyTable> {
        let k = elements.len();
        let mut pos = vec![usize::MAX; self.order];
        for (i, &e) in elements.iter().enumerate() {
            pos[e] = i;
        }
        let mut flat = Vec::with_capacity(k * k);
        for &a in elements {
            for &b in elements {
                let p = pos[self.mul(a, b)];
                if p == usize::MAX {
                    return None;
                }
                flat.push(p);
            }
        }
        CayleyTable::from_flat(k, flat).ok()
    }

    /// The opposite semigroup, `a * b := b * a`.
    pub fn opposite(&self) -> CayleyTable {
        let n = self.order;
        let flat = (0..n * n).map(|k| self.mul(k % n, k / n)).collect();
        CayleyTable::from_flat(n, flat).expect("transpose of a valid table")
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Checks that `map` is a homomorphism from `self` into `other`.
    pub fn is_homomorphism(&self, other: &CayleyTable, map: &[usize]) -> bool {
        map.len() == self.order
            && map.iter().all(|&m| m < other.order)
            && (0..self.order).all(|a| {
                (0..self.order).all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b]))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_semigroup() {
        let t = validate_table(&[vec![0]]).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.mul(0, 0), 0);
    }

    #[test]
    fn left_zero_two_is_valid() {
        // all 8 triples: (xy)z = x = x(yz)
        let t = validate_table(&[vec![0, 0], vec![1, 1]]).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(t.mul(x, y), x);
            }
        }
    }

    #[test]
    fn malformed_grids() {
        assert!(matches!(
            validate_table(&[vec![0, 1], vec![1, 1], vec![]]),
            Err(Error::NotSquare { .. })
        ));
        assert_eq!(validate_table(&[vec![0, 2], vec![1, 1]]), Err(Error::OutOfRange(0, 1)));
        assert_eq!(validate_table(&[vec![0, -1], vec![1, 1]]), Err(Error::OutOfRange(0, 1)));
        assert_eq!(validate_table(&[]), Err(Error::EmptyTable));
    }

    #[test]
    fn first_failing_triple_reported() {
        // x*y = y+1 mod 2 is not associative: (0*0)*0 = 1*0 = 1, 0*(0*0) = 0*1 = 0
        let err = validate_table(&[vec![1, 0], vec![1, 0]]).unwrap_err();
        assert_eq!(err, Error::NotAssociative(0, 0, 0));
    }

    #[test]
    fn relabel_and_restrict() {
        let z3 = validate_table(&[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        let r = z3.relabel(&[0, 2, 1]).unwrap();
        assert_eq!(r.mul(2, 2), 1);
        assert!(z3.restrict(&[0]).is_some());
        assert!(z3.restrict(&[0, 1]).is_none());
        assert!(z3.relabel(&[0, 0, 1]).is_err());
    }
}
