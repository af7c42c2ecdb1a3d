//! Breakable subsemigroups: the families 𝒜₂(S), 𝒜₃(S), 𝒜₂-bar(S), their
//! chain structure, and their characterizations inside P(S).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::power::{PowerSemigroup, DEFAULT_ENUMERATION_BOUND};
use crate::subset::{bits, Subset};

/// Default bound for scans that quantify over all of P(S) for each subset.
pub const DEFAULT_SCAN_BOUND: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ChunkKind {
    LeftZero,
    RightZero,
    /// A cyclic group of order two; only allowed as the top chunk.
    OrderTwoGroupTop,
}

/// A subsemigroup written as a chain of chunks, lowest first. For `a` in a
/// lower chunk and `b` in a higher one, `ab = ba = a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakableForm {
    pub chain: Vec<Subset>,
    pub kinds: Vec<ChunkKind>,
}

impl BreakableForm {
    /// True iff the form has no group chunk, i.e. it witnesses (A₂).
    pub fn is_breakable(&self) -> bool {
        !self.kinds.contains(&ChunkKind::OrderTwoGroupTop)
    }

    pub fn union_mask(&self) -> u32 {
        self.chain.iter().fold(0, |m, c| m | c.mask())
    }

    /// Re-checks every structural invariant against the multiplication of `p`.
    pub fn check(&self, p: &PowerSemigroup) -> bool {
        let s = p.table();
        let mut seen = 0u32;
        for (i, (chunk, kind)) in self.chain.iter().zip(&self.kinds).enumerate() {
            if seen & chunk.mask() != 0 {
                return false;
            }
            seen |= chunk.mask();
            let ok = match kind {
                ChunkKind::LeftZero => p.is_left_zero_mask(chunk.mask()),
                ChunkKind::RightZero => p.is_right_zero_mask(chunk.mask()),
                ChunkKind::OrderTwoGroupTop => {
                    i + 1 == self.chain.len() && chunk.len() == 2 && {
                        let g = chunk.elements().find(|&g| !s.is_idempotent(g));
                        g.is_some_and(|g| {
                            let e = s.mul(g, g);
                            chunk.contains(e) && s.is_idempotent(e) && s.mul(g, e) == g
                                && s.mul(e, g) == g
                        })
                    }
                }
            };
            if !ok {
                return false;
            }
            for higher in &self.chain[i + 1..] {
                for a in chunk.elements() {
                    for b in higher.elements() {
                        if s.mul(a, b) != a || s.mul(b, a) != a {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Outcome of a characterization scan over P(S).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scan {
    pub counterexample: Option<Subset>,
}

impl Scan {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Whether every product of `n` factors from `mask` (with repetition)
/// lands among those factors.
pub fn satisfies_an_mask(p: &PowerSemigroup, mask: u32, n: usize) -> bool {
    fn go(p: &PowerSemigroup, mask: u32, left: usize, product: usize, factors: u32) -> bool {
        if left == 0 {
            return factors >> product & 1 == 1;
        }
        bits(mask).all(|x| go(p, mask, left - 1, p.table().mul(product, x), factors | 1 << x))
    }
    if n == 0 {
        return false;
    }
    bits(mask).all(|x| go(p, mask, n - 1, x, 1 << x))
}

pub fn is_a2_mask(p: &PowerSemigroup, mask: u32) -> bool {
    let s = p.table();
    bits(mask).all(|x| {
        bits(mask).all(|y| {
            let xy = s.mul(x, y);
            xy == x || xy == y
        })
    })
}

pub fn is_a3_mask(p: &PowerSemigroup, mask: u32) -> bool {
    p.is_subsemigroup_mask(mask) && satisfies_an_mask(p, mask, 3)
}

pub fn is_a2bar_mask(p: &PowerSemigroup, mask: u32) -> bool {
    is_a2_mask(p, mask) && p.decomposition().is_some_and(|d| d.id_mask(mask).len() == 1)
}

/// Condition (Aₙ) on a subsemigroup.
pub fn satisfies_an(p: &PowerSemigroup, a: Subset, n: usize) -> Result<bool> {
    if a.order() != p.order() {
        return Err(Error::ParentMismatch(a.order(), p.order()));
    }
    if !p.is_subsemigroup_mask(a.mask()) {
        return Err(Error::NotSubsemigroup(a.mask()));
    }
    Ok(satisfies_an_mask(p, a.mask(), n))
}

fn enumerate(p: &PowerSemigroup, pred: impl Fn(u32) -> bool) -> Result<Vec<Subset>> {
    p.bounded(DEFAULT_ENUMERATION_BOUND)?;
    Ok((1..=p.full_mask()).filter(|&m| pred(m)).map(|m| p.subset(m)).collect())
}

pub fn enumerate_a2(p: &PowerSemigroup) -> Result<Vec<Subset>> {
    enumerate(p, |m| is_a2_mask(p, m))
}

pub fn enumerate_a3(p: &PowerSemigroup) -> Result<Vec<Subset>> {
    p.bounded(DEFAULT_ENUMERATION_BOUND)?;
    // 𝒜₃ ⊆ EP, and idempotency is the cheaper filter
    Ok(p.ep_masks().into_iter().filter(|&m| is_a3_mask(p, m)).map(|m| p.subset(m)).collect())
}

pub fn enumerate_a2bar(p: &PowerSemigroup) -> Result<Vec<Subset>> {
    if p.decomposition().is_none() {
        return Err(Error::NotCompletelyRegular);
    }
    enumerate(p, |m| is_a2bar_mask(p, m))
}

/// Splits a member of 𝒜₃(S) into its chain of left zero, right zero and
/// (at the top) order-two group chunks.
pub fn structural_form(p: &PowerSemigroup, a: Subset) -> Result<BreakableForm> {
    if a.order() != p.order() || !is_a3_mask(p, a.mask()) {
        return Err(Error::NotA3(a.mask()));
    }
    let s = p.table();
    let mut rest = a.mask();
    let mut top = None;
    if let Some(g) = bits(rest).find(|&g| !s.is_idempotent(g)) {
        let t = 1u32 << g | 1 << s.mul(g, g);
        rest &= !t;
        top = Some(t);
    }

    // distinct elements of one left/right zero chunk never commute
    let elems: Vec<usize> = bits(rest).collect();
    let mut chunk_of: Vec<usize> = (0..elems.len()).collect();
    for i in 0..elems.len() {
        for j in 0..i {
            if s.mul(elems[i], elems[j]) != s.mul(elems[j], elems[i]) {
                let (ci, cj) = (chunk_of[i], chunk_of[j]);
                for c in chunk_of.iter_mut() {
                    if *c == ci {
                        *c = cj;
                    }
                }
            }
        }
    }
    let mut by_root = std::collections::BTreeMap::<usize, u32>::new();
    for (i, &e) in elems.iter().enumerate() {
        *by_root.entry(chunk_of[i]).or_default() |= 1 << e;
    }
    let mut chunks: Vec<u32> = by_root.into_values().collect();
    chunks.sort_by(|&x, &y| {
        if x == y {
            std::cmp::Ordering::Equal
        } else if p.ep_leq_mask(x, y) {
            std::cmp::Ordering::Less
        } else if p.ep_leq_mask(y, x) {
            std::cmp::Ordering::Greater
        } else {
            x.trailing_zeros().cmp(&y.trailing_zeros())
        }
    });

    let mut chain = Vec::new();
    let mut kinds = Vec::new();
    for c in chunks {
        chain.push(p.subset(c));
        kinds.push(if p.is_left_zero_mask(c) { ChunkKind::LeftZero } else { ChunkKind::RightZero });
    }
    if let Some(t) = top {
        chain.push(p.subset(t));
        kinds.push(ChunkKind::OrderTwoGroupTop);
    }
    let form = BreakableForm { chain, kinds };
    if !form.check(p) || form.union_mask() != a.mask() {
        return Err(Error::NotA3(a.mask()));
    }
    Ok(form)
}

/// For `A ∈ EP(S)`: no `B ≠ A` with `B² = BA = A`.
pub fn a3_characterization(p: &PowerSemigroup, a: Subset) -> Result<Scan> {
    p.bounded(DEFAULT_SCAN_BOUND)?;
    if a.order() != p.order() || !p.is_idempotent_subset(a) {
        return Err(Error::NotIdempotent(a.mask()));
    }
    Ok(Scan { counterexample: a3_counterexample(p, a.mask()).map(|m| p.subset(m)) })
}

pub(crate) fn a3_counterexample(p: &PowerSemigroup, a: u32) -> Option<u32> {
    (1..=p.full_mask())
        .find(|&b| b != a && p.mul_mask(b, a) == a && p.mul_mask(b, b) == a)
}

/// For `A ∈ 𝒜₃(S)`: every `B` with `AS = BS` and `BA = AB = A` is idempotent.
pub fn a2_characterization(p: &PowerSemigroup, a: Subset) -> Result<Scan> {
    p.bounded(DEFAULT_SCAN_BOUND)?;
    if a.order() != p.order() || !is_a3_mask(p, a.mask()) {
        return Err(Error::NotA3(a.mask()));
    }
    Ok(Scan { counterexample: a2_counterexample(p, a.mask()).map(|m| p.subset(m)) })
}

pub(crate) fn a2_counterexample(p: &PowerSemigroup, a: u32) -> Option<u32> {
    let full = p.full_mask();
    let a_s = p.mul_mask(a, full);
    (1..=full).find(|&b| {
        p.mul_mask(b, a) == a
            && p.mul_mask(a, b) == a
            && p.mul_mask(b, full) == a_s
            && p.mul_mask(b, b) != b
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::CayleyTable;

    fn power(rows: &[&[usize]]) -> PowerSemigroup {
        let t = CayleyTable::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
            .unwrap();
        PowerSemigroup::new(&t).unwrap()
    }

    fn cyclic(n: usize) -> PowerSemigroup {
        let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        PowerSemigroup::new(&CayleyTable::from_rows(&rows).unwrap()).unwrap()
    }

    fn clifford3() -> PowerSemigroup {
        power(&[&[0, 1, 2], &[1, 0, 2], &[2, 2, 2]])
    }

    fn masks(v: &[Subset]) -> Vec<u32> {
        v.iter().map(|s| s.mask()).collect()
    }

    #[test]
    fn an_conditions() {
        let z2 = cyclic(2);
        let full = z2.subset(0b11);
        assert_eq!(satisfies_an(&z2, full, 3), Ok(true));
        assert_eq!(satisfies_an(&z2, full, 2), Ok(false));
        let z3 = cyclic(3);
        assert_eq!(satisfies_an(&z3, z3.subset(0b111), 3), Ok(false));
        let l2 = power(&[&[0, 0], &[1, 1]]);
        assert_eq!(satisfies_an(&l2, l2.subset(0b11), 2), Ok(true));
        assert_eq!(satisfies_an(&z2, z2.subset(0b10), 3), Err(Error::NotSubsemigroup(0b10)));
    }

    #[test]
    fn families() {
        let l2 = power(&[&[0, 0], &[1, 1]]);
        assert_eq!(masks(&enumerate_a2(&l2).unwrap()), vec![1, 2, 3]);
        assert_eq!(masks(&enumerate_a2bar(&l2).unwrap()), vec![1, 2, 3]);
        let z2 = cyclic(2);
        assert_eq!(masks(&enumerate_a3(&z2).unwrap()), vec![0b01, 0b11]);
        assert_eq!(masks(&enumerate_a2(&z2).unwrap()), vec![0b01]);
        let c = clifford3();
        assert!(masks(&enumerate_a2(&c).unwrap()).contains(&0b101));
    }

    #[test]
    fn structural_forms() {
        let c = clifford3();
        let f = structural_form(&c, c.subset(0b111)).unwrap();
        assert_eq!(masks(&f.chain), vec![0b100, 0b011]);
        assert_eq!(f.kinds, vec![ChunkKind::LeftZero, ChunkKind::OrderTwoGroupTop]);
        assert!(!f.is_breakable());
        let f = structural_form(&c, c.subset(0b101)).unwrap();
        assert_eq!(masks(&f.chain), vec![0b100, 0b001]);
        assert!(f.is_breakable());
        let f = structural_form(&c, c.subset(0b001)).unwrap();
        assert_eq!(f.chain.len(), 1);
        assert_eq!(structural_form(&c, c.subset(0b010)), Err(Error::NotA3(0b010)));
    }

    #[test]
    fn a3_scan() {
        let z2 = cyclic(2);
        assert!(a3_characterization(&z2, z2.subset(0b11)).unwrap().holds());
        let z3 = cyclic(3);
        let scan = a3_characterization(&z3, z3.subset(0b111)).unwrap();
        assert!(!scan.holds());
        // B = {1,2}: B² = BA = A
        assert_eq!(z3.mul_mask(0b110, 0b110), 0b111);
        assert_eq!(z3.mul_mask(0b110, 0b111), 0b111);
        assert!(a3_characterization(&z3, z3.subset(0b001)).unwrap().holds());
        assert_eq!(a3_characterization(&z3, z3.subset(0b010)), Err(Error::NotIdempotent(0b010)));
    }

    #[test]
    fn a2_scan() {
        let c = clifford3();
        let scan = a2_characterization(&c, c.subset(0b111)).unwrap();
        assert!(!scan.holds());
        // dropping the group identity: B = {z, a}
        let (a, b) = (0b111, 0b110);
        assert_eq!((c.mul_mask(b, a), c.mul_mask(a, b)), (a, a));
        assert_eq!(c.mul_mask(b, 0b111), c.mul_mask(a, 0b111));
        assert_eq!(c.mul_mask(b, b), 0b101);
        assert!(a2_characterization(&c, c.subset(0b101)).unwrap().holds());
        assert!(a2_characterization(&c, c.subset(0b001)).unwrap().holds());
        let z3 = cyclic(3);
        assert_eq!(a2_characterization(&z3, z3.subset(0b111)), Err(Error::NotA3(0b111)));
    }
}
