//! Nonempty subsets of a small semigroup, stored as bitmasks.

use std::fmt;

use crate::error::{Error, Result};

/// Largest parent order a [`Subset`] can address.
pub const MAX_SUBSET_ORDER: usize = 32;

/// A nonempty subset of a semigroup of order `order`; an element of P(S).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    order: u8,
    mask: u32,
}

#[inline]
pub(crate) fn full_mask(order: usize) -> u32 {
    if order >= 32 {
        u32::MAX
    } else {
        (1u32 << order) - 1
    }
}

/// Iterates the set bits of a mask in ascending order.
#[inline]
pub(crate) fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// Iterates the nonempty submasks of `mask`, in increasing numeric order.
pub(crate) fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut sub: u32 = 0;
    std::iter::from_fn(move || {
        sub = sub.wrapping_sub(mask) & mask;
        (sub != 0).then_some(sub)
    })
}

impl Subset {
    pub fn new(order: usize, mask: u32) -> Result<Self> {
        if order == 0 || order > MAX_SUBSET_ORDER {
            return Err(Error::OrderTooLarge { order, bound: MAX_SUBSET_ORDER });
        }
        if mask == 0 {
            return Err(Error::EmptySubset);
        }
        if mask & !full_mask(order) != 0 {
            return Err(Error::OutOfRange(31 - mask.leading_zeros() as usize, 0));
        }
        Ok(Subset { order: order as u8, mask })
    }

    pub(crate) fn from_mask(order: usize, mask: u32) -> Self {
        debug_assert!(mask != 0 && mask & !full_mask(order) == 0);
        Subset { order: order as u8, mask }
    }

    pub fn from_elements(order: usize, elements: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &e in elements {
            if e >= order {
                return Err(Error::OutOfRange(e, 0));
            }
            mask |= 1 << e;
        }
        Subset::new(order, mask)
    }

    pub fn singleton(order: usize, a: usize) -> Self {
        Subset::from_mask(order, 1 << a)
    }

    pub fn full(order: usize) -> Self {
        Subset::from_mask(order, full_mask(order))
    }

    #[inline]
    pub fn mask(self) -> u32 {
        self.mask
    }

    #[inline]
    pub fn order(self) -> usize {
        self.order as usize
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_singleton(self) -> bool {
        self.mask.is_power_of_two()
    }

    /// The sole element of a singleton.
    pub fn sole(self) -> Option<usize> {
        self.is_singleton().then(|| self.mask.trailing_zeros() as usize)
    }

    pub fn min_element(self) -> usize {
        self.mask.trailing_zeros() as usize
    }

    pub fn contains(self, a: usize) -> bool {
        a < 32 && self.mask >> a & 1 == 1
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        bits(self.mask)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset { order: self.order, mask: self.mask | other.mask }
    }

    /// `self ∖ other`, or `None` when nothing remains.
    pub fn minus(self, other: Subset) -> Option<Subset> {
        let m = self.mask & !other.mask;
        (m != 0).then_some(Subset { order: self.order, mask: m })
    }

    pub fn intersect(self, other: Subset) -> Option<Subset> {
        let m = self.mask & other.mask;
        (m != 0).then_some(Subset { order: self.order, mask: m })
    }

    /// All nonempty subsets of this subset.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let order = self.order;
        submasks(self.mask).map(move |mask| Subset { order, mask })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}
