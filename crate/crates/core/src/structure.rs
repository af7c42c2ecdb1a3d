//! Semilattice decomposition `S = [Y; S_α]` of a completely regular semigroup.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::green::{self, GreenData};
use crate::subset::Subset;
use crate::table::CayleyTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ComponentKind {
    LeftZero,
    RightZero,
    /// Completely simple, neither left nor right zero.
    CS0,
}

impl ComponentKind {
    pub fn is_zero_kind(self) -> bool {
        matches!(self, ComponentKind::LeftZero | ComponentKind::RightZero)
    }
}

/// The structure semilattice `Y` and the completely simple components.
///
/// Component ids follow the smallest element each component contains, so
/// component 0 always holds element 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub semilattice: CayleyTable,
    pub component_of: Vec<usize>,
    pub components: Vec<Vec<usize>>,
    pub classification: Vec<ComponentKind>,
}

/// The set `id A = {α : A ∩ S_α ≠ ∅}`, as a bitmask over component ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdSet(pub u64);

impl IdSet {
    pub fn ids(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            (m != 0).then(|| {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                i
            })
        })
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, alpha: usize) -> bool {
        self.0 >> alpha & 1 == 1
    }

    pub fn is_subset_of(self, other: IdSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn single(alpha: usize) -> IdSet {
        IdSet(1 << alpha)
    }
}

/// Decomposes a completely regular semigroup into its D-classes.
pub fn decompose(s: &CayleyTable) -> Result<Decomposition> {
    let green = green::green_relations(s);
    decompose_with(s, &green)
}

pub fn decompose_with(s: &CayleyTable, green: &GreenData) -> Result<Decomposition> {
    if !green.is_completely_regular() {
        return Err(Error::NotCompletelyRegular);
    }
    let count = GreenData::class_count(&green.dclass);
    let components: Vec<Vec<usize>> =
        (0..count).map(|d| GreenData::class_members(&green.dclass, d)).collect();
    let reps: Vec<usize> = components.iter().map(|c| c[0]).collect();
    let flat = (0..count * count)
        .map(|k| green.dclass[s.mul(reps[k / count], reps[k % count])])
        .collect();
    let semilattice = CayleyTable::from_flat_checked(count, flat)
        .map_err(|_| Error::NotSimpleComponent(0))?;

    let mut classification = Vec::with_capacity(count);
    for (alpha, members) in components.iter().enumerate() {
        let sub = s.restrict(members).ok_or(Error::NotSimpleComponent(alpha))?;
        if !green::is_completely_simple(&sub).map_err(|_| Error::NotSimpleComponent(alpha))? {
            return Err(Error::NotSimpleComponent(alpha));
        }
        classification.push(if green::is_left_zero(&sub) {
            ComponentKind::LeftZero
        } else if green::is_right_zero(&sub) {
            ComponentKind::RightZero
        } else {
            ComponentKind::CS0
        });
    }
    Ok(Decomposition { semilattice, component_of: green.dclass.clone(), components, classification })
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    /// `αβ` in `Y`.
    pub fn meet(&self, alpha: usize, beta: usize) -> usize {
        self.semilattice.mul(alpha, beta)
    }

    /// `α ≤ β` in `Y`.
    pub fn le(&self, alpha: usize, beta: usize) -> bool {
        self.meet(alpha, beta) == alpha
    }

    /// `α < β` in `Y`.
    pub fn lt(&self, alpha: usize, beta: usize) -> bool {
        alpha != beta && self.le(alpha, beta)
    }

    pub fn component_mask(&self, alpha: usize) -> u32 {
        self.components[alpha].iter().fold(0, |m, &a| m | 1 << a)
    }

    pub fn component_subset(&self, alpha: usize) -> Subset {
        Subset::from_mask(self.component_of.len(), self.component_mask(alpha))
    }

    pub fn id_mask(&self, mask: u32) -> IdSet {
        IdSet(crate::subset::bits(mask).fold(0, |m, a| m | 1 << self.component_of[a]))
    }

    /// `(id A)(id B)` computed in `Y`.
    pub fn id_product(&self, a: IdSet, b: IdSet) -> IdSet {
        let mut m = 0u64;
        for x in a.ids() {
            for y in b.ids() {
                m |= 1 << self.meet(x, y);
            }
        }
        IdSet(m)
    }

    /// Whether the ids form a chain in `Y`.
    pub fn is_chain(&self, ids: IdSet) -> bool {
        ids.ids().all(|x| ids.ids().all(|y| self.le(x, y) || self.le(y, x)))
    }

    /// Maximal ids of the set with respect to the order of `Y`.
    pub fn maximal_ids(&self, ids: IdSet) -> IdSet {
        IdSet(ids.ids().filter(|&x| ids.ids().all(|y| !self.lt(x, y))).fold(0, |m, x| m | 1 << x))
    }
}

pub fn id_set(a: Subset, d: &Decomposition) -> Result<IdSet> {
    if a.order() != d.component_of.len() {
        return Err(Error::ParentMismatch(a.order(), d.component_of.len()));
    }
    Ok(d.id_mask(a.mask()))
}

/// `A ∩ S_α`; `None` when the slice is empty.
pub fn component_slice(a: Subset, alpha: usize, d: &Decomposition) -> Option<Subset> {
    a.intersect(d.component_subset(alpha))
}
