//! Constructors for the standard families of (mostly completely regular)
//! semigroups, exhaustive enumeration of small orders, and the named
//! verification corpus.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::green;
use crate::table::CayleyTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    LeftZero(usize),
    RightZero(usize),
    CyclicGroup(usize),
    KleinFour,
    /// `I × Λ` with `(i, λ)(j, μ) = (i, μ)`.
    RectBand(usize, usize),
    /// `M[G; I, Λ; P]` with `P` given as `|Λ|` rows of `|I|` group elements.
    ReesMatrix { group: CayleyTable, sandwich: Vec<Vec<usize>> },
    /// `[Y; S_α; φ_{α,β}]`. `homs` lists `(α, β, map)` for every `α > β` in `Y`.
    StrongSemilattice {
        semilattice: CayleyTable,
        components: Vec<CayleyTable>,
        homs: Vec<(usize, usize, Vec<usize>)>,
    },
    DirectProduct(Box<FamilySpec>, Box<FamilySpec>),
    Explicit(CayleyTable),
}

fn bad(reason: impl Into<String>) -> Error {
    Error::BadSpec(reason.into())
}

fn positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(bad(format!("{what} must be positive")));
    }
    Ok(())
}

fn table_from(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<CayleyTable> {
    CayleyTable::from_flat_checked(n, (0..n * n).map(|k| f(k / n, k % n)).collect())
}

/// Identity element of a group table, if the table is a group.
pub fn group_identity(g: &CayleyTable) -> Option<usize> {
    let n = g.order();
    let e = (0..n).find(|&e| (0..n).all(|x| g.mul(e, x) == x && g.mul(x, e) == x))?;
    (0..n).all(|x| (0..n).any(|y| g.mul(x, y) == e)).then_some(e)
}

fn group_inverse(g: &CayleyTable, e: usize, x: usize) -> usize {
    (0..g.order()).find(|&y| g.mul(x, y) == e).expect("group element has an inverse")
}

/// Rescales the sandwich matrix so that its first row and first column are
/// the group identity. The resulting Rees matrix semigroup is isomorphic.
pub fn normalize_sandwich(group: &CayleyTable, p: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let e = group_identity(group).ok_or_else(|| bad("Rees matrix base is not a group"))?;
    let rows = p.len();
    let cols = p.first().map_or(0, Vec::len);
    positive(rows, "|Λ|")?;
    positive(cols, "|I|")?;
    if p.iter().any(|r| r.len() != cols || r.iter().any(|&x| x >= group.order())) {
        return Err(bad("sandwich matrix is ragged or has entries outside the group"));
    }
    let v: Vec<usize> = (0..cols).map(|i| group_inverse(group, e, p[0][i])).collect();
    let u: Vec<usize> =
        (0..rows).map(|l| group_inverse(group, e, group.mul(p[l][0], v[0]))).collect();
    Ok((0..rows)
        .map(|l| (0..cols).map(|i| group.mul(group.mul(u[l], p[l][i]), v[i])).collect())
        .collect())
}

/// Builds the table described by `spec`.
pub fn build(spec: &FamilySpec) -> Result<CayleyTable> {
    match spec {
        FamilySpec::LeftZero(n) => {
            positive(*n, "order")?;
            table_from(*n, |a, _| a)
        }
        FamilySpec::RightZero(n) => {
            positive(*n, "order")?;
            table_from(*n, |_, b| b)
        }
        FamilySpec::CyclicGroup(n) => {
            positive(*n, "order")?;
            table_from(*n, |a, b| (a + b) % n)
        }
        FamilySpec::KleinFour => table_from(4, |a, b| a ^ b),
        FamilySpec::RectBand(p, q) => {
            positive(*p, "|I|")?;
            positive(*q, "|Λ|")?;
            table_from(p * q, |a, b| (a / q) * q + b % q)
        }
        FamilySpec::ReesMatrix { group, sandwich } => {
            let p = normalize_sandwich(group, sandwich)?;
            let (lambdas, is, g) = (p.len(), p[0].len(), group.order());
            // (i, x, λ) -> (i * |G| + x) * |Λ| + λ
            let t = table_from(is * g * lambdas, |a, b| {
                let (i, x, l) = (a / (g * lambdas), a / lambdas % g, a % lambdas);
                let (j, y, m) = (b / (g * lambdas), b / lambdas % g, b % lambdas);
                (i * g + group.mul(group.mul(x, p[l][j]), y)) * lambdas + m
            })?;
            if !green::is_completely_simple(&t)? {
                return Err(bad("Rees matrix construction is not completely simple"));
            }
            Ok(t)
        }
        FamilySpec::StrongSemilattice { semilattice, components, homs } => {
            build_strong_semilattice(semilattice, components, homs)
        }
        FamilySpec::DirectProduct(a, b) => {
            let (a, b) = (build(a)?, build(b)?);
            let m = b.order();
            table_from(a.order() * m, |x, y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m))
        }
        FamilySpec::Explicit(t) => Ok(t.clone()),
    }
}

fn build_strong_semilattice(
    y: &CayleyTable,
    components: &[CayleyTable],
    homs: &[(usize, usize, Vec<usize>)],
) -> Result<CayleyTable> {
    let k = y.order();
    if !y.is_commutative() || !(0..k).all(|a| y.is_idempotent(a)) {
        return Err(bad("structure table is not a semilattice"));
    }
    if components.len() != k {
        return Err(bad("one component per semilattice element required"));
    }
    let below = |a: usize, b: usize| a != b && y.mul(a, b) == b;
    let mut phi: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; k]; k];
    for a in 0..k {
        phi[a][a] = Some((0..components[a].order()).collect());
    }
    for (a, b, map) in homs {
        let (a, b) = (*a, *b);
        if a >= k || b >= k || !below(a, b) {
            return Err(bad(format!("hom ({a}, {b}) does not go down the semilattice")));
        }
        if !components[a].is_homomorphism(&components[b], map) {
            return Err(bad(format!("map ({a}, {b}) is not a homomorphism")));
        }
        phi[a][b] = Some(map.clone());
    }
    for a in 0..k {
        for b in 0..k {
            if below(a, b) && phi[a][b].is_none() {
                return Err(bad(format!("missing hom ({a}, {b})")));
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if below(a, b) && below(b, c) {
                    let (ab, bc, ac) = (
                        phi[a][b].as_ref().unwrap(),
                        phi[b][c].as_ref().unwrap(),
                        phi[a][c].as_ref().unwrap(),
                    );
                    if (0..ab.len()).any(|x| bc[ab[x]] != ac[x]) {
                        return Err(bad(format!("homs do not compose along {a} > {b} > {c}")));
                    }
                }
            }
        }
    }
    let offsets: Vec<usize> = components
        .iter()
        .scan(0, |acc, c| {
            let o = *acc;
            *acc += c.order();
            Some(o)
        })
        .collect();
    let n: usize = components.iter().map(CayleyTable::order).sum();
    let locate = |x: usize| {
        let a = offsets.iter().rposition(|&o| o <= x).unwrap();
        (a, x - offsets[a])
    };
    let t = table_from(n, |x, z| {
        let ((a, xi), (b, zi)) = (locate(x), locate(z));
        let c = y.mul(a, b);
        let (xp, zp) = (phi[a][c].as_ref().unwrap()[xi], phi[b][c].as_ref().unwrap()[zi]);
        offsets[c] + components[c].mul(xp, zp)
    })?;
    if !green::is_completely_regular(&t) {
        return Err(bad("strong semilattice is not completely regular"));
    }
    Ok(t)
}

/// The lexicographically least relabeling of `t`, as a flat table.
pub fn canonical_form(t: &CayleyTable) -> Vec<usize> {
    let n = t.order();
    (0..n)
        .permutations(n)
        .map(|perm| {
            let r = t.relabel(&perm).expect("permutation");
            (0..n * n).map(|k| r.mul(k / n, k % n)).collect::<Vec<_>>()
        })
        .min()
        .expect("at least one permutation")
}

/// All semigroups of order `n ≤ 3` up to isomorphism that pass `filter`,
/// ordered by canonical form.
pub fn enumerate_small(n: usize, filter: impl Fn(&CayleyTable) -> bool) -> Result<Vec<CayleyTable>> {
    if n == 0 || n > 3 {
        return Err(Error::OrderTooLarge { order: n, bound: 3 });
    }
    let cells = n * n;
    let mut forms = BTreeSet::new();
    let mut flat = vec![0usize; cells];
    loop {
        if let Ok(t) = CayleyTable::from_flat_checked(n, flat.clone()) {
            forms.insert(canonical_form(&t));
        }
        let mut k = 0;
        while k < cells && flat[k] == n - 1 {
            flat[k] = 0;
            k += 1;
        }
        if k == cells {
            break;
        }
        flat[k] += 1;
    }
    Ok(forms
        .into_iter()
        .map(|f| CayleyTable::from_flat(n, f).expect("canonical form is valid"))
        .filter(|t| filter(t))
        .collect())
}

/// `k`-element chain semilattice; element 0 is the top, products take the lower.
pub fn chain(k: usize) -> Result<CayleyTable> {
    positive(k, "chain length")?;
    table_from(k, |a, b| a.max(b))
}

/// Z₂ over a trivial group: `{e, a, z}` with `{e, a} ≅ Z₂` and `z` a zero.
pub fn clifford3() -> CayleyTable {
    build(&strong_chain2(FamilySpec::CyclicGroup(2), FamilySpec::CyclicGroup(1), vec![0, 0]))
        .expect("valid construction")
}

/// A strong semilattice over the 2-chain with `top` above `bottom`.
pub fn strong_chain2(top: FamilySpec, bottom: FamilySpec, hom: Vec<usize>) -> FamilySpec {
    FamilySpec::StrongSemilattice {
        semilattice: chain(2).expect("chain"),
        components: vec![build(&top).expect("valid top"), build(&bottom).expect("valid bottom")],
        homs: vec![(0, 1, hom)],
    }
}

/// Which parts of the corpus to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusProfile {
    /// Every semigroup of order at most three, up to isomorphism.
    Exhaustive3,
    /// Constructed completely regular families up to order 10.
    CrFamilies,
    /// Both of the above.
    Full,
}

fn named_families() -> Vec<(String, FamilySpec)> {
    use FamilySpec::*;
    let z = |n| build(&CyclicGroup(n)).expect("cyclic");
    let boxed = |s: FamilySpec| Box::new(s);
    let v_semilattice =
        CayleyTable::from_rows(&[vec![0, 2, 2], vec![2, 1, 2], vec![2, 2, 2]]).expect("V");
    let mut out: Vec<(&str, FamilySpec)> = vec![
        ("T1", CyclicGroup(1)),
        ("L2", LeftZero(2)),
        ("R2", RightZero(2)),
        ("Z2", CyclicGroup(2)),
        ("Y2", Explicit(chain(2).unwrap())),
        ("L3", LeftZero(3)),
        ("R3", RightZero(3)),
        ("Z3", CyclicGroup(3)),
        ("Y3", Explicit(chain(3).unwrap())),
        ("V3", Explicit(v_semilattice.clone())),
        ("Clifford3", Explicit(clifford3())),
        ("L2-over-T1", strong_chain2(LeftZero(2), CyclicGroup(1), vec![0, 0])),
        ("R2-over-T1", strong_chain2(RightZero(2), CyclicGroup(1), vec![0, 0])),
        ("T1-over-L2", strong_chain2(CyclicGroup(1), LeftZero(2), vec![0])),
        ("T1-over-R2", strong_chain2(CyclicGroup(1), RightZero(2), vec![1])),
        ("L4", LeftZero(4)),
        ("R4", RightZero(4)),
        ("Z4", CyclicGroup(4)),
        ("Klein4", KleinFour),
        ("RectBand2x2", RectBand(2, 2)),
        ("Rees-Z2-1x2", ReesMatrix { group: z(2), sandwich: vec![vec![0], vec![0]] }),
        ("Rees-Z2-2x1", ReesMatrix { group: z(2), sandwich: vec![vec![0, 1]] }),
        ("Z2-over-Z2", strong_chain2(CyclicGroup(2), CyclicGroup(2), vec![0, 1])),
        ("L2-over-Z2", strong_chain2(LeftZero(2), CyclicGroup(2), vec![0, 0])),
        ("L2-over-L2", strong_chain2(LeftZero(2), LeftZero(2), vec![0, 1])),
        ("L2-over-R2", strong_chain2(LeftZero(2), RightZero(2), vec![1, 1])),
        ("Z3-over-T1", strong_chain2(CyclicGroup(3), CyclicGroup(1), vec![0, 0, 0])),
        ("L2xY2", DirectProduct(boxed(LeftZero(2)), boxed(Explicit(chain(2).unwrap())))),
        ("R2xY2", DirectProduct(boxed(RightZero(2)), boxed(Explicit(chain(2).unwrap())))),
        ("L2xZ2", DirectProduct(boxed(LeftZero(2)), boxed(CyclicGroup(2)))),
        ("Y2xY2", DirectProduct(boxed(Explicit(chain(2).unwrap())), boxed(Explicit(chain(2).unwrap())))),
        ("L5", LeftZero(5)),
        ("R5", RightZero(5)),
        ("Z5", CyclicGroup(5)),
        (
            "L2-over-Z2-over-T1",
            StrongSemilattice {
                semilattice: chain(3).unwrap(),
                components: vec![build(&LeftZero(2)).unwrap(), z(2), z(1)],
                homs: vec![(0, 1, vec![0, 0]), (0, 2, vec![0, 0]), (1, 2, vec![0, 0])],
            },
        ),
        (
            "V-L2-R2-T1",
            StrongSemilattice {
                semilattice: v_semilattice,
                components: vec![build(&LeftZero(2)).unwrap(), build(&RightZero(2)).unwrap(), z(1)],
                homs: vec![(0, 2, vec![0, 0]), (1, 2, vec![0, 0])],
            },
        ),
        ("L3-over-L2", strong_chain2(LeftZero(3), LeftZero(2), vec![0, 1, 1])),
        ("Clifford3xL2", DirectProduct(boxed(Explicit(clifford3())), boxed(LeftZero(2)))),
        ("RectBand2x3", RectBand(2, 3)),
        ("Rees-Z3-1x2", ReesMatrix { group: z(3), sandwich: vec![vec![0], vec![0]] }),
        ("Z6", CyclicGroup(6)),
        ("RectBand2x2-over-Z2", strong_chain2(RectBand(2, 2), CyclicGroup(2), vec![0, 0, 0, 0])),
        ("Rees-Z2-2x2", ReesMatrix { group: z(2), sandwich: vec![vec![0, 0], vec![0, 1]] }),
        ("Z2xRectBand2x2", DirectProduct(boxed(CyclicGroup(2)), boxed(RectBand(2, 2)))),
        ("RectBand3x3", RectBand(3, 3)),
        ("L2xZ5", DirectProduct(boxed(LeftZero(2)), boxed(CyclicGroup(5)))),
    ];
    // relabeled copies make non-identical isomorphic pairs
    out.push(("Clifford3-relabeled", Explicit(clifford3().relabel(&[2, 0, 1]).unwrap())));
    out.push((
        "L2-over-Z2-relabeled",
        Explicit(build(&strong_chain2(LeftZero(2), CyclicGroup(2), vec![0, 0])).unwrap()
            .relabel(&[3, 1, 0, 2])
            .unwrap()),
    ));
    out.into_iter().map(|(n, s)| (n.to_string(), s)).collect()
}

/// The order-12 completely regular semigroup used for performance checks:
/// `L₂ × Z₂ × Clifford3`.
pub fn order12_benchmark() -> CayleyTable {
    use FamilySpec::*;
    build(&DirectProduct(
        Box::new(DirectProduct(Box::new(LeftZero(2)), Box::new(CyclicGroup(2)))),
        Box::new(Explicit(clifford3())),
    ))
    .expect("valid construction")
}

/// The deterministic named corpus.
pub fn corpus(profile: CorpusProfile) -> Vec<(String, CayleyTable)> {
    let mut out = Vec::new();
    if matches!(profile, CorpusProfile::Exhaustive3 | CorpusProfile::Full) {
        for n in 1..=3 {
            for (k, t) in enumerate_small(n, |_| true).expect("n <= 3").into_iter().enumerate() {
                out.push((format!("ord{n}-{k:02}"), t));
            }
        }
    }
    if matches!(profile, CorpusProfile::CrFamilies | CorpusProfile::Full) {
        for (name, spec) in named_families() {
            out.push((name, build(&spec).expect("corpus families are valid")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::{is_completely_regular, is_completely_simple, is_left_zero};
    use crate::structure::decompose;

    #[test]
    fn basic_families() {
        let l2 = build(&FamilySpec::LeftZero(2)).unwrap();
        assert_eq!(l2.rows(), vec![vec![0, 0], vec![1, 1]]);
        assert!(is_left_zero(&l2));
        assert!(build(&FamilySpec::LeftZero(0)).is_err());
        let k = build(&FamilySpec::KleinFour).unwrap();
        assert_eq!(group_identity(&k), Some(0));
    }

    #[test]
    fn rees_matrix_over_z2() {
        let z2 = build(&FamilySpec::CyclicGroup(2)).unwrap();
        let t = build(&FamilySpec::ReesMatrix { group: z2, sandwich: vec![vec![0], vec![0]] })
            .unwrap();
        assert_eq!(t.order(), 4);
        assert_eq!(is_completely_simple(&t), Ok(true));
        // not a band: H-classes are copies of Z2
        assert_eq!(t.idempotents().len(), 2);
    }

    #[test]
    fn sandwich_normalization() {
        let z3 = build(&FamilySpec::CyclicGroup(3)).unwrap();
        let p = normalize_sandwich(&z3, &[vec![1, 2], vec![2, 2]]).unwrap();
        assert_eq!(p[0], vec![0, 0]);
        assert_eq!(p[1][0], 0);
        let lz = build(&FamilySpec::LeftZero(2)).unwrap();
        assert!(normalize_sandwich(&lz, &[vec![0]]).is_err());
    }

    #[test]
    fn clifford_three_from_strong_semilattice() {
        let c = clifford3();
        assert_eq!(c.rows(), vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]]);
        assert!(is_completely_regular(&c));
    }

    #[test]
    fn strong_semilattice_rejects_bad_homs() {
        let spec = strong_chain2(FamilySpec::CyclicGroup(2), FamilySpec::CyclicGroup(2), vec![1, 0]);
        assert!(matches!(build(&spec), Err(Error::BadSpec(_))));
        let missing = FamilySpec::StrongSemilattice {
            semilattice: chain(2).unwrap(),
            components: vec![build(&FamilySpec::CyclicGroup(1)).unwrap(); 2],
            homs: vec![],
        };
        assert!(matches!(build(&missing), Err(Error::BadSpec(_))));
    }

    #[test]
    fn small_enumeration_counts() {
        assert_eq!(enumerate_small(1, |_| true).unwrap().len(), 1);
        let two = enumerate_small(2, |_| true).unwrap();
        assert_eq!(two.len(), 5);
        // Z2, L2, R2 and the 2-chain; the null semigroup is not completely regular
        assert_eq!(enumerate_small(2, is_completely_regular).unwrap().len(), 4);
        assert!(enumerate_small(4, |_| true).is_err());
    }

    #[test]
    fn corpus_contents() {
        let c = corpus(CorpusProfile::Full);
        for name in ["L2", "R2", "Z2", "Z3", "Clifford3", "RectBand2x2", "Rees-Z2-1x2"] {
            assert!(c.iter().any(|(n, _)| n == name), "{name} missing");
        }
        assert_eq!(c, corpus(CorpusProfile::Full));
        for (name, t) in &c {
            assert!(t.associativity_violation().is_none(), "{name}");
            assert!(t.order() <= 10, "{name}");
        }
        for (name, t) in corpus(CorpusProfile::CrFamilies) {
            assert!(decompose(&t).is_ok(), "{name} not completely regular");
        }
        let big = order12_benchmark();
        assert_eq!(big.order(), 12);
        assert!(is_completely_regular(&big));
    }
}
