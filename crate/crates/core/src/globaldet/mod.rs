//! From an isomorphism `ψ: P(S) → P(S′)` of completely regular semigroups to
//! an isomorphism `η: S → S′`.
//!
//! The pipeline is: [`extract_theta`] recovers the semilattice isomorphism
//! `θ: Y → Y′` from the images of the components; components that are
//! neither left nor right zero are mapped by `ψ` itself on singletons; left
//! and right zero components are split into [`RhoPartition`] blocks which
//! `ψ` matches up block by block, and [`construct_eta`] pairs the elements
//! of matched blocks in ascending order.

mod suite;

pub use suite::{
    statement_catalogue, suite_semigroup_records, verify_statement_suite, Record, Tally, Verdict,
    SUITE_BOUND,
};

use crate::breakable;
use crate::error::{Error, Result};
use crate::green::{green_relations, GreenData};
use crate::iso::{power_table, Carrier, IsoMap, DEFAULT_POWER_TABLE_BOUND};
use crate::order::{natural_order, NaturalOrder};
use crate::power::{PowerSemigroup, DEFAULT_ENUMERATION_BOUND};
use crate::structure::{ComponentKind, Decomposition};
use crate::subset::bits;
use crate::table::CayleyTable;

/// Everything derived from one completely regular semigroup that the
/// pipeline and the statement suite need.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub table: CayleyTable,
    pub power: PowerSemigroup,
    pub decomposition: Decomposition,
    pub order: NaturalOrder,
    ep: Vec<bool>,
    a3: Vec<bool>,
    a2: Vec<bool>,
    rho: Vec<Option<RhoPartition>>,
    power_green: Option<GreenData>,
}

impl Analysis {
    pub fn new(table: &CayleyTable) -> Result<Self> {
        let power = PowerSemigroup::new(table)?;
        power.bounded(DEFAULT_ENUMERATION_BOUND)?;
        let decomposition = power.decomposition().cloned().ok_or(Error::NotCompletelyRegular)?;
        let order = natural_order(table, &table.idempotents());
        let size = power.full_mask() as usize + 1;
        let mut ep = vec![false; size];
        let mut a3 = vec![false; size];
        let mut a2 = vec![false; size];
        for m in 1..size as u32 {
            ep[m as usize] = power.is_idempotent_mask(m);
            a3[m as usize] = ep[m as usize] && breakable::is_a3_mask(&power, m);
            a2[m as usize] = a3[m as usize] && breakable::is_a2_mask(&power, m);
        }
        let rho = (0..decomposition.len())
            .map(|alpha| rho_partition(table, &decomposition, &order, alpha).ok())
            .collect();
        let power_green = (table.order() <= SUITE_BOUND)
            .then(|| power_table(table, DEFAULT_POWER_TABLE_BOUND).map(|p| green_relations(&p)))
            .transpose()?;
        Ok(Analysis { table: table.clone(), power, decomposition, order, ep, a3, a2, rho, power_green })
    }

    pub fn n(&self) -> usize {
        self.table.order()
    }

    pub fn full(&self) -> u32 {
        self.power.full_mask()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.power.mul_mask(a, b)
    }

    pub fn is_ep(&self, m: u32) -> bool {
        self.ep[m as usize]
    }

    pub fn is_a3(&self, m: u32) -> bool {
        self.a3[m as usize]
    }

    pub fn is_a2(&self, m: u32) -> bool {
        self.a2[m as usize]
    }

    pub fn is_a2bar(&self, m: u32) -> bool {
        self.a2[m as usize] && self.decomposition.id_mask(m).len() == 1
    }

    pub fn masks(&self) -> impl Iterator<Item = u32> {
        1..=self.full()
    }

    /// ρ on a left or right zero component; `None` for CS₀ components.
    pub fn rho(&self, alpha: usize) -> Option<&RhoPartition> {
        self.rho[alpha].as_ref()
    }

    /// Green's relations of the materialized power table (index = mask - 1),
    /// for orders up to [`SUITE_BOUND`].
    pub fn power_green(&self) -> Option<&GreenData> {
        self.power_green.as_ref()
    }

    pub fn identity_of(&self, a: usize) -> usize {
        self.power.green().identity_of(a)
    }

    /// `a⁰` as a mask.
    pub fn identity_mask(&self, a: usize) -> u32 {
        1 << self.identity_of(a)
    }

    pub fn component_of(&self, a: usize) -> usize {
        self.decomposition.component_of[a]
    }
}

/// The blocks of `ρ_α` on one left or right zero component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoPartition {
    pub component: usize,
    /// Blocks in ascending order of their smallest element; each block is
    /// sorted.
    pub blocks: Vec<Vec<usize>>,
    /// Maximality in the natural order, per element of the component (in
    /// component order).
    pub maximal: Vec<bool>,
}

impl RhoPartition {
    pub fn block_of(&self, a: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&a))
    }

    pub fn block_mask(&self, k: usize) -> u32 {
        self.blocks[k].iter().fold(0, |m, &a| m | 1 << a)
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.block_of(a).is_some() && self.block_of(a) == self.block_of(b)
    }
}

/// Computes `ρ_α`: two elements are related iff they are equal, or both are
/// maximal and agree on every sandwich `a b a` with `b` in a lower component
/// and every `c a c` with `c` in a higher component. Components not
/// comparable with `α` impose nothing.
pub fn rho_partition(
    s: &CayleyTable,
    d: &Decomposition,
    order: &NaturalOrder,
    alpha: usize,
) -> Result<RhoPartition> {
    if !d.classification[alpha].is_zero_kind() {
        return Err(Error::WrongComponentKind(alpha));
    }
    let members = &d.components[alpha];
    let lower: Vec<usize> =
        (0..s.order()).filter(|&b| d.lt(d.component_of[b], alpha)).collect();
    let upper: Vec<usize> =
        (0..s.order()).filter(|&c| d.lt(alpha, d.component_of[c])).collect();
    let signature = |a: usize| -> Vec<usize> {
        lower
            .iter()
            .map(|&b| s.mul(s.mul(a, b), a))
            .chain(upper.iter().map(|&c| s.mul(s.mul(c, a), c)))
            .collect()
    };
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut sigs: Vec<Option<Vec<usize>>> = Vec::new();
    for &a in members {
        let key = order.is_maximal(a).then(|| signature(a));
        match key.as_ref().and_then(|k| sigs.iter().position(|s| s.as_ref() == Some(k))) {
            Some(k) => blocks[k].push(a),
            None => {
                blocks.push(vec![a]);
                sigs.push(key);
            }
        }
    }
    Ok(RhoPartition {
        component: alpha,
        blocks,
        maximal: members.iter().map(|&a| order.is_maximal(a)).collect(),
    })
}

fn check_psi(psi: &IsoMap, s: &Analysis, t: &Analysis) -> Result<()> {
    let expected = (Carrier::Subsets { order: s.n() }, Carrier::Subsets { order: t.n() });
    if (psi.domain, psi.codomain) != expected {
        return Err(Error::NotIsomorphism("psi does not act on P(S) -> P(S')".into()));
    }
    if !psi.verified {
        return Err(Error::NotIsomorphism("psi has not been verified".into()));
    }
    Ok(())
}

/// `θ(α)` = the single component met by `ψ(S_α)`, checked to be a semilattice
/// isomorphism with `ψ(P(S_α)) = P(S′_θ(α))`.
pub fn extract_theta(psi: &IsoMap, s: &Analysis, t: &Analysis) -> Result<IsoMap> {
    check_psi(psi, s, t)?;
    let (d, d2) = (&s.decomposition, &t.decomposition);
    let mut theta = Vec::with_capacity(d.len());
    for alpha in 0..d.len() {
        let image = psi.image_mask(d.component_mask(alpha));
        let ids = d2.id_mask(image);
        if ids.len() != 1 {
            return Err(Error::ThetaNotSingleton { component: alpha, ids: ids.ids().collect() });
        }
        theta.push(ids.ids().next().unwrap());
    }
    let carrier = |count| Carrier::Components { count };
    let map = IsoMap::new(carrier(d.len()), carrier(d2.len()), theta)
        .map_err(|e| Error::ThetaNotIsomorphism(e.to_string()))?;
    let map = map
        .verify(&d.semilattice, &d2.semilattice)
        .map_err(|e| Error::ThetaNotIsomorphism(e.to_string()))?;
    for alpha in 0..d.len() {
        let (src, dst) = (d.component_mask(alpha), d2.component_mask(map.apply(alpha)));
        if src.count_ones() != dst.count_ones() {
            return Err(Error::ThetaNotIsomorphism(format!("|S_{alpha}| differs from its image")));
        }
        if let Some(a) = s.power.subsets_of(src).find(|&a| psi.image_mask(a) & !dst != 0) {
            return Err(Error::ThetaNotIsomorphism(format!(
                "psi({a:#b}) leaves P(S'_{})",
                map.apply(alpha)
            )));
        }
    }
    Ok(map)
}

/// Builds `η: S → S′` from `ψ` and verifies it is an isomorphism.
pub fn construct_eta(psi: &IsoMap, s: &Analysis, t: &Analysis) -> Result<IsoMap> {
    let theta = extract_theta(psi, s, t)?;
    let d = &s.decomposition;
    let mut eta = vec![usize::MAX; s.n()];
    for alpha in 0..d.len() {
        let target = theta.apply(alpha);
        match d.classification[alpha] {
            ComponentKind::CS0 => {
                for &a in &d.components[alpha] {
                    eta[a] = sole_image(psi, a)?;
                }
            }
            ComponentKind::LeftZero | ComponentKind::RightZero => {
                let rho = s.rho(alpha).ok_or(Error::WrongComponentKind(alpha))?;
                let rho2 = t.rho(target).ok_or(Error::WrongComponentKind(target))?;
                for block in &rho.blocks {
                    let a = block[0];
                    let image = psi.image_mask(1 << a);
                    if !s.order.is_maximal(a) {
                        sole_image(psi, a)?;
                    }
                    let mut targets = bits(image).map(|x| rho2.block_of(x));
                    let first = targets.next().flatten().ok_or(Error::BlockChoiceDependent(a))?;
                    if targets.any(|k| k != Some(first)) {
                        return Err(Error::BlockChoiceDependent(a));
                    }
                    let dest = &rho2.blocks[first];
                    if dest.len() != block.len() {
                        return Err(Error::BlockSizeMismatch {
                            element: a,
                            size: block.len(),
                            target: dest.len(),
                        });
                    }
                    for (&x, &y) in block.iter().zip(dest) {
                        eta[x] = y;
                    }
                }
            }
        }
    }
    let carrier = |order| Carrier::Elements { order };
    IsoMap::new(carrier(s.n()), carrier(t.n()), eta)
        .and_then(|m| m.verify(&s.table, &t.table))
        .map_err(|e| Error::EtaNotMorphism(e.to_string()))
}

fn sole_image(psi: &IsoMap, a: usize) -> Result<usize> {
    let image = psi.image_mask(1 << a);
    if !image.is_power_of_two() {
        return Err(Error::PsiImageNotSingleton { element: a, image });
    }
    Ok(image.trailing_zeros() as usize)
}
