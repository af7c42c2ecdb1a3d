//! The power semigroup P(S): subset products, idempotent subsets and the
//! relations on them.
//!
//! P(S) is never materialized. Products are evaluated from a lookup table
//! that stores, for every element `a` and every byte-aligned chunk of a mask,
//! the image of that chunk under left multiplication by `a`. A product `AB`
//! is then `|A| * ceil(n / 8)` lookups.

use crate::breakable;
use crate::error::{Error, Result};
use crate::green::{self, GreenData};
use crate::structure::{self, Decomposition};
use crate::subset::{bits, full_mask, submasks, Subset, MAX_SUBSET_ORDER};
use crate::table::CayleyTable;

/// Default bound on the order for whole-P(S) enumerations.
pub const DEFAULT_ENUMERATION_BOUND: usize = 16;

/// The covering relations on EP(S): no intermediate member of EP(S),
/// 𝒜₂(S), or 𝒜₂-bar(S) respectively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoverKind {
    Ep,
    A2,
    A2Bar,
}

#[derive(Debug, Clone)]
pub struct PowerSemigroup {
    table: CayleyTable,
    green: GreenData,
    decomposition: Option<Decomposition>,
    chunks: usize,
    lut: Vec<u32>,
}

impl PowerSemigroup {
    pub fn new(table: &CayleyTable) -> Result<Self> {
        let n = table.order();
        if n > MAX_SUBSET_ORDER {
            return Err(Error::OrderTooLarge { order: n, bound: MAX_SUBSET_ORDER });
        }
        let chunks = n.div_ceil(8);
        let mut lut = vec![0u32; n * chunks * 256];
        for a in 0..n {
            for c in 0..chunks {
                let base = (a * chunks + c) * 256;
                for byte in 1..256usize {
                    let low = byte.trailing_zeros() as usize;
                    let b = c * 8 + low;
                    let rest = lut[base + (byte & (byte - 1))];
                    lut[base + byte] = if b < n { rest | 1 << table.mul(a, b) } else { rest };
                }
            }
        }
        let green = green::green_relations(table);
        let decomposition = structure::decompose_with(table, &green).ok();
        Ok(PowerSemigroup { table: table.clone(), green, decomposition, chunks, lut })
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn green(&self) -> &GreenData {
        &self.green
    }

    /// Present iff S is completely regular.
    pub fn decomposition(&self) -> Option<&Decomposition> {
        self.decomposition.as_ref()
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn full_mask(&self) -> u32 {
        full_mask(self.order())
    }

    /// Number of elements of P(S).
    pub fn size(&self) -> usize {
        self.full_mask() as usize
    }

    pub fn subset(&self, mask: u32) -> Subset {
        Subset::from_mask(self.order(), mask)
    }

    #[inline]
    pub fn mul_mask(&self, a: u32, b: u32) -> u32 {
        let mut out = 0;
        for x in bits(a) {
            let base = x * self.chunks * 256;
            for c in 0..self.chunks {
                out |= self.lut[base + c * 256 + ((b >> (8 * c)) & 0xff) as usize];
            }
        }
        out
    }

    #[inline]
    pub fn mul3_mask(&self, a: u32, b: u32, c: u32) -> u32 {
        self.mul_mask(self.mul_mask(a, b), c)
    }

    fn check(&self, a: Subset) -> Result<()> {
        if a.order() != self.order() {
            return Err(Error::ParentMismatch(a.order(), self.order()));
        }
        Ok(())
    }

    pub fn subset_product(&self, a: Subset, b: Subset) -> Result<Subset> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.subset(self.mul_mask(a.mask(), b.mask())))
    }

    pub fn is_idempotent_mask(&self, a: u32) -> bool {
        self.mul_mask(a, a) == a
    }

    pub fn is_idempotent_subset(&self, a: Subset) -> bool {
        self.is_idempotent_mask(a.mask())
    }

    /// All idempotents of P(S), ascending by mask.
    pub fn enumerate_ep(&self) -> Result<Vec<Subset>> {
        self.enumerate_ep_bounded(DEFAULT_ENUMERATION_BOUND)
    }

    pub fn enumerate_ep_bounded(&self, bound: usize) -> Result<Vec<Subset>> {
        self.bounded(bound)?;
        Ok(self.ep_masks().into_iter().map(|m| self.subset(m)).collect())
    }

    pub(crate) fn ep_masks(&self) -> Vec<u32> {
        (1..=self.full_mask()).filter(|&m| self.is_idempotent_mask(m)).collect()
    }

    pub(crate) fn bounded(&self, bound: usize) -> Result<()> {
        if self.order() > bound {
            return Err(Error::OrderTooLarge { order: self.order(), bound });
        }
        Ok(())
    }

    /// `A ≤ B` iff `A = AB = BA`, for idempotent masks.
    #[inline]
    pub fn ep_leq_mask(&self, a: u32, b: u32) -> bool {
        self.mul_mask(a, b) == a && self.mul_mask(b, a) == a
    }

    pub fn ep_leq(&self, a: Subset, b: Subset) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        for x in [a, b] {
            if !self.is_idempotent_subset(x) {
                return Err(Error::NotIdempotent(x.mask()));
            }
        }
        Ok(self.ep_leq_mask(a.mask(), b.mask()))
    }

    /// Whether `B` covers `A` for the given relation: `A < B` with no `C`
    /// of the relevant family strictly between them.
    pub fn covers(&self, a: Subset, b: Subset, kind: CoverKind) -> Result<bool> {
        if a == b || !self.ep_leq(a, b)? {
            return Err(Error::NotComparable(a.mask(), b.mask()));
        }
        if kind == CoverKind::A2Bar && self.decomposition.is_none() {
            return Err(Error::NotCompletelyRegular);
        }
        Ok(self.covering_witness(a.mask(), b.mask(), kind).is_none())
    }

    /// An intermediate `C` with `A < C < B` of the given kind, if one exists.
    pub(crate) fn covering_witness(&self, a: u32, b: u32, kind: CoverKind) -> Option<u32> {
        (1..=self.full_mask()).find(|&c| {
            c != a
                && c != b
                && self.is_idempotent_mask(c)
                && self.ep_leq_mask(a, c)
                && self.ep_leq_mask(c, b)
                && match kind {
                    CoverKind::Ep => true,
                    CoverKind::A2 => breakable::is_a2_mask(self, c),
                    CoverKind::A2Bar => {
                        breakable::is_a2_mask(self, c)
                            && self.decomposition.as_ref().is_some_and(|d| d.id_mask(c).len() == 1)
                    }
                }
        })
    }

    /// `AS`.
    pub fn right_ideal(&self, a: Subset) -> Subset {
        self.subset(self.mul_mask(a.mask(), self.full_mask()))
    }

    /// `AS¹ = A ∪ AS`.
    pub fn right_ideal_one(&self, a: Subset) -> Subset {
        self.subset(a.mask() | self.mul_mask(a.mask(), self.full_mask()))
    }

    /// `SA`.
    pub fn left_ideal(&self, a: Subset) -> Subset {
        self.subset(self.mul_mask(self.full_mask(), a.mask()))
    }

    /// Membership bitmap of `X · P(S)¹` (when `right`) or `P(S)¹ · X`.
    fn principal_one_sided(&self, x: u32, right: bool) -> Vec<bool> {
        let mut seen = vec![false; self.size() + 1];
        seen[x as usize] = true;
        for y in 1..=self.full_mask() {
            let p = if right { self.mul_mask(x, y) } else { self.mul_mask(y, x) };
            seen[p as usize] = true;
        }
        seen
    }

    /// The H-class of `X` in P(S), computed from the definition (mutual
    /// membership in principal left and right ideals of P(S)). When S is
    /// completely regular the scan only visits subsets with the same id-set.
    pub fn h_class(&self, x: Subset) -> Result<Vec<Subset>> {
        self.check(x)?;
        let xm = x.mask();
        let right_x = self.principal_one_sided(xm, true);
        let left_x = self.principal_one_sided(xm, false);
        let id_x = self.decomposition.as_ref().map(|d| d.id_mask(xm));
        let mut class = Vec::new();
        for y in 1..=self.full_mask() {
            if let (Some(d), Some(id)) = (&self.decomposition, id_x) {
                if d.id_mask(y) != id {
                    continue;
                }
            }
            if !right_x[y as usize] || !left_x[y as usize] {
                continue;
            }
            if y == xm || (self.principal_one_sided(y, true)[xm as usize]
                && self.principal_one_sided(y, false)[xm as usize])
            {
                class.push(self.subset(y));
            }
        }
        Ok(class)
    }

    /// `H_{{e}}` in P(S) for an idempotent element `e`.
    pub fn power_h_of_idempotent_singleton(&self, e: usize) -> Result<Vec<Subset>> {
        if e >= self.order() || !self.table.is_idempotent(e) {
            return Err(Error::NotIdempotentElement(e));
        }
        self.h_class(Subset::singleton(self.order(), e))
    }

    /// `H_E` in P(S) for a left zero subsemigroup `E`.
    pub fn power_h_of_left_zero_set(&self, e: Subset) -> Result<Vec<Subset>> {
        self.check(e)?;
        if !self.is_left_zero_mask(e.mask()) {
            return Err(Error::NotLeftZero(e.mask()));
        }
        self.h_class(e)
    }

    /// `{Ea : a ∈ H_e(S)}` for any `e ∈ E`, sorted by mask.
    pub fn left_zero_h_class_formula(&self, e: Subset) -> Result<Vec<Subset>> {
        self.check(e)?;
        if !self.is_left_zero_mask(e.mask()) {
            return Err(Error::NotLeftZero(e.mask()));
        }
        let rep = e.min_element();
        let h = self.green.hclass[rep];
        let mut out: Vec<Subset> = (0..self.order())
            .filter(|&a| self.green.hclass[a] == h)
            .map(|a| self.subset(self.mul_mask(e.mask(), 1 << a)))
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn is_left_zero_mask(&self, e: u32) -> bool {
        bits(e).all(|x| bits(e).all(|y| self.table.mul(x, y) == x))
    }

    pub fn is_right_zero_mask(&self, e: u32) -> bool {
        bits(e).all(|x| bits(e).all(|y| self.table.mul(x, y) == y))
    }

    /// Left zero subsemigroups of S, ascending by mask.
    pub fn left_zero_subsets(&self) -> Vec<Subset> {
        (1..=self.full_mask())
            .filter(|&m| self.is_left_zero_mask(m))
            .map(|m| self.subset(m))
            .collect()
    }

    pub fn is_subsemigroup_mask(&self, a: u32) -> bool {
        self.mul_mask(a, a) & !a == 0
    }

    /// Nonempty subsets of `mask`.
    pub fn subsets_of(&self, mask: u32) -> impl Iterator<Item = u32> {
        submasks(mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(rows: &[&[usize]]) -> CayleyTable {
        CayleyTable::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn cyclic(n: usize) -> CayleyTable {
        let rows: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        CayleyTable::from_rows(&rows).unwrap()
    }

    fn l2() -> PowerSemigroup {
        PowerSemigroup::new(&table(&[&[0, 0], &[1, 1]])).unwrap()
    }

    fn clifford3() -> PowerSemigroup {
        PowerSemigroup::new(&table(&[&[0, 1, 2], &[1, 0, 2], &[2, 2, 2]])).unwrap()
    }

    fn naive_product(s: &CayleyTable, a: u32, b: u32) -> u32 {
        let mut m = 0;
        for x in bits(a) {
            for y in bits(b) {
                m |= 1 << s.mul(x, y);
            }
        }
        m
    }

    #[test]
    fn products() {
        let p = l2();
        let ab = p.subset(0b11);
        assert_eq!(p.subset_product(ab, p.subset(0b01)).unwrap(), ab);
        let z2 = PowerSemigroup::new(&cyclic(2)).unwrap();
        assert_eq!(z2.mul_mask(0b10, 0b10), 0b01);
        let z3 = PowerSemigroup::new(&cyclic(3)).unwrap();
        assert_eq!(z3.mul_mask(0b110, 0b110), 0b111);
        assert_eq!(
            p.subset_product(ab, Subset::singleton(3, 0)),
            Err(Error::ParentMismatch(3, 2))
        );
    }

    #[test]
    fn lut_matches_naive_products_on_wide_table() {
        // order 11 crosses a chunk boundary
        let s = cyclic(11);
        let p = PowerSemigroup::new(&s).unwrap();
        for a in [1u32, 0b101, 0x7ff, 0x400, 0x3a5] {
            for b in [1u32, 0x700, 0x7ff, 0x155, 0x0f0] {
                assert_eq!(p.mul_mask(a, b), naive_product(&s, a, b));
            }
        }
    }

    #[test]
    fn idempotent_subsets() {
        let z2 = PowerSemigroup::new(&cyclic(2)).unwrap();
        assert!(z2.is_idempotent_mask(0b11));
        assert!(!z2.is_idempotent_mask(0b10));
        assert!(l2().is_idempotent_mask(0b11));
        assert_eq!(l2().enumerate_ep().unwrap().len(), 3);
        let ep: Vec<u32> = z2.enumerate_ep().unwrap().iter().map(|s| s.mask()).collect();
        assert_eq!(ep, vec![0b01, 0b11]);
        let trivial = PowerSemigroup::new(&table(&[&[0]])).unwrap();
        assert_eq!(trivial.enumerate_ep().unwrap().len(), 1);
        assert!(matches!(z2.enumerate_ep_bounded(1), Err(Error::OrderTooLarge { .. })));
    }

    #[test]
    fn ep_order() {
        let c = clifford3();
        let z = c.subset(0b100);
        let e = c.subset(0b001);
        assert_eq!(c.ep_leq(z, e), Ok(true));
        assert_eq!(c.ep_leq(e, e), Ok(true));
        assert_eq!(c.ep_leq(c.subset(0b010), e), Err(Error::NotIdempotent(0b010)));
        let z2 = PowerSemigroup::new(&cyclic(2)).unwrap();
        assert_eq!(z2.ep_leq(z2.subset(0b01), z2.subset(0b11)), Ok(false));
    }

    #[test]
    fn covering() {
        let c = clifford3();
        let ze = c.subset(0b101);
        let e = c.subset(0b001);
        assert_eq!(c.covers(ze, e, CoverKind::Ep), Ok(true));
        assert_eq!(c.covers(ze, e, CoverKind::A2), Ok(true));
        assert_eq!(c.covers(ze, e, CoverKind::A2Bar), Ok(true));
        assert_eq!(c.covers(e, ze, CoverKind::Ep), Err(Error::NotComparable(0b001, 0b101)));
        // {z} < {z,e} < {e}
        assert_eq!(c.covers(c.subset(0b100), e, CoverKind::Ep), Ok(false));
    }

    #[test]
    fn h_classes_of_singletons() {
        let z2 = PowerSemigroup::new(&cyclic(2)).unwrap();
        let h: Vec<u32> =
            z2.power_h_of_idempotent_singleton(0).unwrap().iter().map(|s| s.mask()).collect();
        assert_eq!(h, vec![0b01, 0b10]);
        let h = l2().power_h_of_idempotent_singleton(0).unwrap();
        assert_eq!(h, vec![Subset::singleton(2, 0)]);
        let trivial = PowerSemigroup::new(&table(&[&[0]])).unwrap();
        assert_eq!(trivial.power_h_of_idempotent_singleton(0).unwrap().len(), 1);
        assert_eq!(z2.power_h_of_idempotent_singleton(1), Err(Error::NotIdempotentElement(1)));
    }

    #[test]
    fn h_classes_of_left_zero_sets() {
        let p = l2();
        let e = p.subset(0b11);
        assert_eq!(p.power_h_of_left_zero_set(e).unwrap(), vec![e]);
        assert_eq!(p.left_zero_h_class_formula(e).unwrap(), vec![e]);
        // rectangular band 2x2, (i,l) = 2i + l; L-class {(0,0),(1,0)} = {0, 2}
        let rows: Vec<Vec<usize>> =
            (0..4).map(|a| (0..4).map(|b| (a / 2) * 2 + b % 2).collect()).collect();
        let rb = PowerSemigroup::new(&CayleyTable::from_rows(&rows).unwrap()).unwrap();
        let e = rb.subset(0b0101);
        assert_eq!(rb.power_h_of_left_zero_set(e).unwrap(), vec![e]);
        assert_eq!(rb.power_h_of_left_zero_set(rb.subset(0b0011)), Err(Error::NotLeftZero(0b11)));
    }

    #[test]
    fn right_ideals() {
        let p = l2();
        assert_eq!(p.right_ideal(p.subset(0b01)).mask(), 0b01);
        assert_eq!(p.right_ideal(p.subset(0b11)).mask(), 0b11);
        let z2 = PowerSemigroup::new(&cyclic(2)).unwrap();
        assert_eq!(z2.right_ideal(z2.subset(0b10)).mask(), 0b11);
    }
}
