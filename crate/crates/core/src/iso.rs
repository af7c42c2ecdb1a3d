//! Isomorphism search between Cayley tables, materialized power tables, and
//! the maps that connect them.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::green::{green_relations, GreenData};
use crate::power::PowerSemigroup;
use crate::subset::{bits, MAX_SUBSET_ORDER};
use crate::table::CayleyTable;

/// Default cap on the number of elements of a materialized power table.
pub const DEFAULT_POWER_TABLE_BOUND: usize = 1 << 12;

/// Default node budget for [`find_isomorphisms`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 5_000_000;

/// What the indices of an [`IsoMap`] refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Carrier {
    /// Elements `0..order` of a semigroup.
    Elements { order: usize },
    /// Nonempty subsets of a semigroup of the given order; index `k` is the
    /// subset with mask `k + 1`.
    Subsets { order: usize },
    /// Components of a structure semilattice.
    Components { count: usize },
}

impl Carrier {
    pub fn len(self) -> usize {
        match self {
            Carrier::Elements { order } => order,
            Carrier::Subsets { order } => (1usize << order) - 1,
            Carrier::Components { count } => count,
        }
    }
}

/// A bijection between two carriers, with its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IsoMap {
    pub domain: Carrier,
    pub codomain: Carrier,
    pub forward: Vec<usize>,
    pub inverse: Vec<usize>,
    /// Set once the map has been checked to be a morphism.
    pub verified: bool,
}

impl IsoMap {
    /// Builds the map and its inverse; fails unless `forward` is a bijection.
    pub fn new(domain: Carrier, codomain: Carrier, forward: Vec<usize>) -> Result<Self> {
        let n = domain.len();
        if forward.len() != n || codomain.len() != n {
            return Err(Error::NotIsomorphism("carrier sizes differ".into()));
        }
        let mut inverse = vec![usize::MAX; n];
        for (x, &y) in forward.iter().enumerate() {
            if y >= n || inverse[y] != usize::MAX {
                return Err(Error::NotIsomorphism(format!("not injective at {x}")));
            }
            inverse[y] = x;
        }
        Ok(IsoMap { domain, codomain, forward, inverse, verified: false })
    }

    pub fn identity(carrier: Carrier) -> Self {
        let v: Vec<usize> = (0..carrier.len()).collect();
        IsoMap { domain: carrier, codomain: carrier, forward: v.clone(), inverse: v, verified: true }
    }

    /// Checks `map(xy) = map(x) map(y)` against the two tables and records it.
    pub fn verify(mut self, domain: &CayleyTable, codomain: &CayleyTable) -> Result<Self> {
        if domain.order() != self.forward.len() || codomain.order() != self.forward.len() {
            return Err(Error::NotIsomorphism("table order does not match carrier".into()));
        }
        if !domain.is_homomorphism(codomain, &self.forward) {
            return Err(Error::NotIsomorphism("product not preserved".into()));
        }
        self.verified = true;
        Ok(self)
    }

    pub fn apply(&self, x: usize) -> usize {
        self.forward[x]
    }

    pub fn apply_inverse(&self, y: usize) -> usize {
        self.inverse[y]
    }

    /// Image of a subset mask, for maps over subset carriers.
    pub fn image_mask(&self, mask: u32) -> u32 {
        self.forward[mask as usize - 1] as u32 + 1
    }

    pub fn preimage_mask(&self, mask: u32) -> u32 {
        self.inverse[mask as usize - 1] as u32 + 1
    }

    /// Whether every singleton is sent to a singleton.
    pub fn preserves_singletons(&self) -> bool {
        match self.domain {
            Carrier::Subsets { order } => {
                (0..order).all(|a| self.image_mask(1 << a).is_power_of_two())
            }
            _ => true,
        }
    }
}

/// P(S) as a Cayley table over subset indices (`mask - 1`).
pub fn power_table(s: &CayleyTable, bound: usize) -> Result<CayleyTable> {
    let n = s.order();
    if n >= MAX_SUBSET_ORDER || (1usize << n) - 1 > bound {
        return Err(Error::OrderTooLarge { order: n, bound });
    }
    let p = PowerSemigroup::new(s)?;
    let m = (1usize << n) - 1;
    let mut flat = Vec::with_capacity(m * m);
    for a in 1..=m as u32 {
        for b in 1..=m as u32 {
            flat.push(p.mul_mask(a, b) as usize - 1);
        }
    }
    CayleyTable::from_flat(m, flat)
}

/// The map `A ↦ φ(A)` on P(S) induced by an element isomorphism.
pub fn lift(phi: &IsoMap) -> Result<IsoMap> {
    let Carrier::Elements { order } = phi.domain else {
        return Err(Error::NotIsomorphism("only element maps lift".into()));
    };
    if !phi.verified {
        return Err(Error::NotIsomorphism("element map has not been verified".into()));
    }
    let forward = (1..=((1u32 << order) - 1))
        .map(|m| bits(m).fold(0u32, |acc, a| acc | 1 << phi.apply(a)) as usize - 1)
        .collect();
    let mut psi = IsoMap::new(
        Carrier::Subsets { order },
        Carrier::Subsets { order: match phi.codomain {
            Carrier::Elements { order } => order,
            _ => return Err(Error::NotIsomorphism("codomain is not an element carrier".into())),
        } },
        forward,
    )?;
    psi.verified = true;
    Ok(psi)
}

/// Per-element invariants in the order they are compared: degree profile,
/// idempotency, Green's class sizes.
fn stage_invariants(t: &CayleyTable, green: &GreenData) -> [Vec<Vec<usize>>; 3] {
    let n = t.order();
    let degree = (0..n)
        .map(|a| {
            let mut row: Vec<usize> = (0..n).map(|x| t.mul(a, x)).collect();
            let mut col: Vec<usize> = (0..n).map(|x| t.mul(x, a)).collect();
            let fix_r = (0..n).filter(|&x| t.mul(a, x) == a).count();
            let fix_l = (0..n).filter(|&x| t.mul(x, a) == a).count();
            row.sort_unstable();
            row.dedup();
            col.sort_unstable();
            col.dedup();
            let hits = (0..n * n).filter(|&k| t.mul(k / n, k % n) == a).count();
            vec![row.len(), col.len(), fix_r, fix_l, hits]
        })
        .collect();
    let idem = (0..n).map(|a| vec![usize::from(t.is_idempotent(a))]).collect();
    let sizes = (0..n)
        .map(|a| {
            [&green.lclass, &green.rclass, &green.hclass, &green.dclass]
                .iter()
                .map(|c| GreenData::class_size(c, a))
                .collect()
        })
        .collect();
    [degree, idem, sizes]
}

fn multiset<K: Ord + Clone>(v: &[K]) -> Vec<K> {
    let mut v = v.to_vec();
    v.sort();
    v
}

/// Renames signatures of both tables to shared small integers.
fn joint_colors<K: Ord + Clone>(a: &[K], b: &[K]) -> (Vec<usize>, Vec<usize>) {
    let mut ids = BTreeMap::new();
    for k in a.iter().chain(b) {
        let next = ids.len();
        ids.entry(k.clone()).or_insert(next);
    }
    let ids: BTreeMap<K, usize> = ids.into_keys().enumerate().map(|(i, k)| (k, i)).collect();
    (a.iter().map(|k| ids[k]).collect(), b.iter().map(|k| ids[k]).collect())
}

/// Colour refinement over the multiplication: a colour is refined by the
/// multiset of (colour of y, colour of xy, colour of yx).
fn refine(a: &CayleyTable, b: &CayleyTable, ca: &mut Vec<usize>, cb: &mut Vec<usize>) -> bool {
    let sig = |t: &CayleyTable, c: &[usize]| -> Vec<(usize, Vec<(usize, usize, usize)>)> {
        let n = t.order();
        (0..n)
            .map(|x| {
                let mut v: Vec<_> = (0..n).map(|y| (c[y], c[t.mul(x, y)], c[t.mul(y, x)])).collect();
                v.sort_unstable();
                (c[x], v)
            })
            .collect()
    };
    loop {
        let classes = ca.iter().chain(cb.iter()).collect::<std::collections::BTreeSet<_>>().len();
        let (sa, sb) = (sig(a, ca), sig(b, cb));
        if multiset(&sa) != multiset(&sb) {
            return false;
        }
        let (na, nb) = joint_colors(&sa, &sb);
        *ca = na;
        *cb = nb;
        let after = ca.iter().chain(cb.iter()).collect::<std::collections::BTreeSet<_>>().len();
        if after == classes {
            return true;
        }
    }
}

struct Search<'a> {
    a: &'a CayleyTable,
    b: &'a CayleyTable,
    ca: Vec<usize>,
    cb: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    assigned: Vec<usize>,
    limit: usize,
    budget: u64,
    nodes: u64,
    found: Vec<Vec<usize>>,
}

const UNSET: usize = usize::MAX;

impl Search<'_> {
    /// Assigns `x ↦ y` and closes under products of assigned elements.
    /// Returns false on conflict; the trail length before the call is the
    /// undo point.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            if self.map[x] != UNSET {
                if self.map[x] != y {
                    return false;
                }
                continue;
            }
            if self.used[y] || self.ca[x] != self.cb[y] {
                return false;
            }
            self.map[x] = y;
            self.used[y] = true;
            self.assigned.push(x);
            for k in 0..self.assigned.len() {
                let z = self.assigned[k];
                let fz = self.map[z];
                for (p, q) in [(self.a.mul(x, z), self.b.mul(y, fz)), (self.a.mul(z, x), self.b.mul(fz, y))] {
                    match self.map[p] {
                        UNSET => queue.push((p, q)),
                        v if v != q => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let x = self.assigned.pop().unwrap();
            self.used[self.map[x]] = false;
            self.map[x] = UNSET;
        }
    }

    fn run(&mut self) -> Result<()> {
        if self.found.len() >= self.limit {
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded(self.budget));
        }
        let n = self.a.order();
        // unassigned element with the fewest candidates
        let mut best: Option<(usize, usize)> = None;
        for x in (0..n).filter(|&x| self.map[x] == UNSET) {
            let count = (0..n).filter(|&y| !self.used[y] && self.cb[y] == self.ca[x]).count();
            if best.is_none_or(|(_, c)| count < c) {
                best = Some((x, count));
            }
        }
        let Some((x, _)) = best else {
            self.found.push(self.map.clone());
            return Ok(());
        };
        for y in 0..n {
            if self.used[y] || self.cb[y] != self.ca[x] {
                continue;
            }
            let mark = self.assigned.len();
            if self.assign(x, y) {
                self.run()?;
            }
            self.undo(mark);
            if self.found.len() >= self.limit {
                break;
            }
        }
        Ok(())
    }
}

/// Up to `limit` isomorphisms from `a` onto `b`, in the order the
/// backtracking finds them. An empty result means the tables are not
/// isomorphic.
pub fn find_isomorphisms(a: &CayleyTable, b: &CayleyTable, limit: usize) -> Result<Vec<IsoMap>> {
    find_isomorphisms_with_budget(a, b, limit, DEFAULT_SEARCH_BUDGET)
}

/// Isomorphisms `P(S) → P(S′)` found by searching the materialized power
/// tables, expressed on subset carriers.
pub fn find_power_isomorphisms(
    s: &CayleyTable,
    t: &CayleyTable,
    limit: usize,
) -> Result<Vec<IsoMap>> {
    let (ps, pt) = (power_table(s, DEFAULT_POWER_TABLE_BOUND)?, power_table(t, DEFAULT_POWER_TABLE_BOUND)?);
    let (ds, dt) = (Carrier::Subsets { order: s.order() }, Carrier::Subsets { order: t.order() });
    Ok(find_isomorphisms(&ps, &pt, limit)?
        .into_iter()
        .map(|m| IsoMap { domain: ds, codomain: dt, ..m })
        .collect())
}

pub fn find_isomorphisms_with_budget(
    a: &CayleyTable,
    b: &CayleyTable,
    limit: usize,
    budget: u64,
) -> Result<Vec<IsoMap>> {
    let n = a.order();
    if n != b.order() || limit == 0 {
        return Ok(Vec::new());
    }
    let (ga, gb) = (green_relations(a), green_relations(b));
    let (sa, sb) = (stage_invariants(a, &ga), stage_invariants(b, &gb));
    let mut keys_a: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut keys_b: Vec<Vec<usize>> = vec![Vec::new(); n];
    for stage in 0..3 {
        for x in 0..n {
            keys_a[x].extend(&sa[stage][x]);
            keys_b[x].extend(&sb[stage][x]);
        }
        if multiset(&keys_a) != multiset(&keys_b) {
            return Ok(Vec::new());
        }
    }
    let (mut ca, mut cb) = joint_colors(&keys_a, &keys_b);
    if !refine(a, b, &mut ca, &mut cb) {
        return Ok(Vec::new());
    }
    let mut search = Search {
        a,
        b,
        ca,
        cb,
        map: vec![UNSET; n],
        used: vec![false; n],
        assigned: Vec::new(),
        limit,
        budget,
        nodes: 0,
        found: Vec::new(),
    };
    search.run()?;
    let (da, db) = (Carrier::Elements { order: n }, Carrier::Elements { order: n });
    search
        .found
        .into_iter()
        .map(|f| IsoMap::new(da, db, f)?.verify(a, b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, FamilySpec};

    fn fam(s: FamilySpec) -> CayleyTable {
        build(&s).unwrap()
    }

    #[test]
    fn left_zero_automorphisms() {
        let l2 = fam(FamilySpec::LeftZero(2));
        assert_eq!(find_isomorphisms(&l2, &l2, 10).unwrap().len(), 2);
    }

    #[test]
    fn group_vs_left_zero() {
        let (z2, l2) = (fam(FamilySpec::CyclicGroup(2)), fam(FamilySpec::LeftZero(2)));
        assert!(find_isomorphisms(&z2, &l2, 10).unwrap().is_empty());
    }

    #[test]
    fn cyclic_three_automorphisms() {
        let z3 = fam(FamilySpec::CyclicGroup(3));
        let isos = find_isomorphisms(&z3, &z3, 10).unwrap();
        let mut maps: Vec<Vec<usize>> = isos.into_iter().map(|m| m.forward).collect();
        maps.sort();
        assert_eq!(maps, vec![vec![0, 1, 2], vec![0, 2, 1]]);
    }

    #[test]
    fn limit_and_budget() {
        let l4 = fam(FamilySpec::LeftZero(4));
        assert_eq!(find_isomorphisms(&l4, &l4, 5).unwrap().len(), 5);
        assert_eq!(find_isomorphisms(&l4, &l4, 100).unwrap().len(), 24);
        assert_eq!(
            find_isomorphisms_with_budget(&l4, &l4, 100, 3),
            Err(Error::SearchBudgetExceeded(3))
        );
    }

    #[test]
    fn power_tables() {
        let l2 = fam(FamilySpec::LeftZero(2));
        let p = power_table(&l2, DEFAULT_POWER_TABLE_BOUND).unwrap();
        assert_eq!(p.order(), 3);
        assert!(crate::green::is_left_zero(&p));
        let z2 = fam(FamilySpec::CyclicGroup(2));
        let p = power_table(&z2, DEFAULT_POWER_TABLE_BOUND).unwrap();
        // index 2 is {0,1}, which absorbs everything
        assert!((0..3).all(|x| p.mul(2, x) == 2 && p.mul(x, 2) == 2));
        assert_eq!(p.mul(1, 1), 0);
        let t1 = fam(FamilySpec::CyclicGroup(1));
        assert_eq!(power_table(&t1, 8).unwrap().order(), 1);
        assert!(power_table(&z2, 2).is_err());
    }

    #[test]
    fn lifting() {
        let l2 = fam(FamilySpec::LeftZero(2));
        let id = IsoMap::identity(Carrier::Elements { order: 2 });
        assert_eq!(lift(&id).unwrap(), IsoMap::identity(Carrier::Subsets { order: 2 }));
        let swap = IsoMap::new(Carrier::Elements { order: 2 }, Carrier::Elements { order: 2 }, vec![1, 0])
            .unwrap()
            .verify(&l2, &l2)
            .unwrap();
        let psi = lift(&swap).unwrap();
        assert_eq!(psi.image_mask(0b01), 0b10);
        assert_eq!(psi.image_mask(0b11), 0b11);
        assert!(psi.preserves_singletons());
        let p = power_table(&l2, 8).unwrap();
        assert!(psi.clone().verify(&p, &p).is_ok());
    }

    #[test]
    fn not_bijective() {
        let c = Carrier::Elements { order: 2 };
        assert!(IsoMap::new(c, c, vec![0, 0]).is_err());
    }
}
