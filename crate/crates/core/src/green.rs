//! Green's relations and the complete-regularity predicates.

use crate::error::{Error, Result};
use crate::table::CayleyTable;

/// Per-element Green's class ids together with the group data of each
/// H-class that happens to be a group.
///
/// Class ids are assigned in order of first appearance, so the class of
/// element 0 is always 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenData {
    pub lclass: Vec<usize>,
    pub rclass: Vec<usize>,
    pub hclass: Vec<usize>,
    pub dclass: Vec<usize>,
    pub idempotent: Vec<bool>,
    /// `a⁰`, the identity of `H_a`, when `H_a` is a group.
    pub local_identity: Vec<Option<usize>>,
    /// `a⁻¹` inside `H_a`, when `H_a` is a group.
    pub local_inverse: Vec<Option<usize>>,
}

impl GreenData {
    pub fn order(&self) -> usize {
        self.lclass.len()
    }

    pub fn is_completely_regular(&self) -> bool {
        self.local_identity.iter().all(Option::is_some)
    }

    /// `a⁰`. Panics if `H_a` is not a group.
    pub fn identity_of(&self, a: usize) -> usize {
        self.local_identity[a].expect("H-class is not a group")
    }

    pub fn class_members(classes: &[usize], id: usize) -> Vec<usize> {
        (0..classes.len()).filter(|&a| classes[a] == id).collect()
    }

    pub fn class_count(classes: &[usize]) -> usize {
        classes.iter().max().map_or(0, |m| m + 1)
    }

    pub fn class_size(classes: &[usize], a: usize) -> usize {
        classes.iter().filter(|&&c| c == classes[a]).count()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
}

fn number_classes<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut seen = std::collections::BTreeMap::new();
    keys.iter()
        .map(|k| {
            let next = seen.len();
            *seen.entry(k.clone()).or_insert(next)
        })
        .collect()
}

fn right_ideals(s: &CayleyTable) -> Vec<Bits> {
    let n = s.order();
    (0..n)
        .map(|a| {
            let mut b = Bits::new(n);
            b.insert(a);
            for x in 0..n {
                b.insert(s.mul(a, x));
            }
            b
        })
        .collect()
}

fn left_ideals(s: &CayleyTable) -> Vec<Bits> {
    let n = s.order();
    (0..n)
        .map(|a| {
            let mut b = Bits::new(n);
            b.insert(a);
            for x in 0..n {
                b.insert(s.mul(x, a));
            }
            b
        })
        .collect()
}

/// Principal two-sided ideal classes (Green's J). Used to cross-check D.
pub fn j_classes(s: &CayleyTable) -> Vec<usize> {
    let n = s.order();
    let right = right_ideals(s);
    let ideals: Vec<Bits> = (0..n)
        .map(|a| {
            let mut b = right[a].clone();
            for x in 0..n {
                if right[a].contains(x) {
                    for y in 0..n {
                        b.insert(s.mul(y, x));
                    }
                }
            }
            b
        })
        .collect();
    number_classes(&ideals)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut x = x;
    while parent[x] != r {
        let next = parent[x];
        parent[x] = r;
        x = next;
    }
    r
}

/// Computes L, R, H and D classes plus the local group data.
pub fn green_relations(s: &CayleyTable) -> GreenData {
    let n = s.order();
    let lclass = number_classes(&left_ideals(s));
    let rclass = number_classes(&right_ideals(s));
    let hkeys: Vec<(usize, usize)> = (0..n).map(|a| (lclass[a], rclass[a])).collect();
    let hclass = number_classes(&hkeys);

    // D is the join of L and R.
    let mut parent: Vec<usize> = (0..n).collect();
    let mut first_l = vec![usize::MAX; n];
    let mut first_r = vec![usize::MAX; n];
    for a in 0..n {
        for first in [&mut first_l[lclass[a]], &mut first_r[rclass[a]]] {
            if *first == usize::MAX {
                *first = a;
            } else {
                let (x, y) = (find(&mut parent, *first), find(&mut parent, a));
                parent[x.max(y)] = x.min(y);
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|a| find(&mut parent, a)).collect();
    let dclass = number_classes(&roots);

    let idempotent: Vec<bool> = (0..n).map(|a| s.is_idempotent(a)).collect();
    let mut local_identity = vec![None; n];
    let mut local_inverse = vec![None; n];
    for a in 0..n {
        let Some(e) = (0..n).find(|&e| idempotent[e] && hclass[e] == hclass[a]) else {
            continue;
        };
        local_identity[a] = Some(e);
        local_inverse[a] =
            (0..n).find(|&x| hclass[x] == hclass[a] && s.mul(a, x) == e && s.mul(x, a) == e);
    }
    GreenData { lclass, rclass, hclass, dclass, idempotent, local_identity, local_inverse }
}

/// Every element has `x` with `a = axa` and `ax = xa`.
pub fn is_completely_regular(s: &CayleyTable) -> bool {
    let n = s.order();
    (0..n).all(|a| (0..n).any(|x| s.mul(s.mul(a, x), a) == a && s.mul(a, x) == s.mul(x, a)))
}

/// Checks the identity `a = (ax)⁰ a`; requires complete regularity.
pub fn is_completely_simple(s: &CayleyTable) -> Result<bool> {
    let green = green_relations(s);
    if !green.is_completely_regular() {
        return Err(Error::NotCompletelyRegular);
    }
    let n = s.order();
    Ok((0..n).all(|a| (0..n).all(|x| s.mul(green.identity_of(s.mul(a, x)), a) == a)))
}

pub fn is_left_zero(s: &CayleyTable) -> bool {
    let n = s.order();
    (0..n).all(|a| (0..n).all(|x| s.mul(a, x) == a))
}

pub fn is_right_zero(s: &CayleyTable) -> bool {
    let n = s.order();
    (0..n).all(|a| (0..n).all(|x| s.mul(x, a) == a))
}
