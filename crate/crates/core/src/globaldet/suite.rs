//! Exhaustive checks of the structural statements behind global determinism,
//! evaluated against one concrete isomorphism `ψ: P(S) → P(S′)`.

use serde::Serialize;

use super::{construct_eta, extract_theta, Analysis};
use crate::breakable::{a2_counterexample, a3_counterexample};
use crate::error::{Error, Result};
use crate::iso::IsoMap;
use crate::power::CoverKind;
use crate::structure::ComponentKind;
use crate::subset::{bits, submasks, Subset};

/// Largest semigroup order accepted by [`verify_statement_suite`].
pub const SUITE_BOUND: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// No instance of the statement's hypotheses occurred.
    Vacuous,
}

/// The outcome of one statement on one instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Record {
    pub statement: &'static str,
    pub anchor: &'static str,
    pub instance: String,
    pub verdict: Verdict,
    /// Number of quantifier instances evaluated.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Accumulates checks for one statement, keeping the first failure.
#[derive(Debug, Default)]
pub struct Tally {
    pub checked: usize,
    pub witness: Option<String>,
}

impl Tally {
    pub fn new() -> Self {
        Tally::default()
    }

    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn fail(&mut self, witness: String) {
        self.check(false, || witness);
    }

    pub fn into_record(self, statement: &'static str, instance: &str) -> Record {
        let verdict = match (&self.witness, self.checked) {
            (Some(_), _) => Verdict::Fail,
            (None, 0) => Verdict::Vacuous,
            (None, _) => Verdict::Pass,
        };
        Record {
            statement,
            anchor: anchor(statement),
            instance: instance.to_string(),
            verdict,
            checked: self.checked,
            witness: self.witness,
        }
    }
}

const CATALOGUE: &[(&str, &str)] = &[
    ("a2-bijection", "psi restricts to a bijection A2(S) -> A2(S')"),
    ("a2-characterization", "A in A3(S): A in A2(S) iff ([AS = BS, BA = AB = A] => B^2 = B)"),
    ("a2-pair-union", "{a,b} in A2(S), a in S_alpha, b in S_beta, alpha < beta => psi({a,b}) = psi(a) u psi(b), |psi(a)| = 1"),
    ("a2bar-bijection", "psi restricts to a bijection A2bar(S) -> A2bar(S')"),
    ("a3-bijection", "psi restricts to a bijection A3(S) -> A3(S')"),
    ("a3-characterization", "A in EP(S): A in A3(S) iff (B^2 = BA = A => B = A)"),
    ("a3-element-structure", "A in EP(S), (B^2 = BA = A => B = A) => a^3 = a, ab in {a,b,a0,b0}, id A a chain, H-, L/R- and top-slice structure"),
    ("a3-local-identities", "A in A3(S) => a0 in A; B subset A, B^2 = A => B = A"),
    ("a3-square-roots", "A in A3(S): B^2 = A => id B = id A; id B <= id A, BA = AB = A => B <= A; BA = B^2 = A => B = A"),
    ("cs0-singleton", "S_alpha in CS0 => psi maps S_alpha isomorphically onto S'_theta(alpha)"),
    ("ep-order-slices", "A in A2(S), B in EP(S), A <= B => B_alpha <= A_alpha on id A n id B; equal at a common maximum"),
    ("eta-isomorphism", "eta = union of the block pairings is an isomorphism S -> S'"),
    ("local-identity-absorbs-image", "s in S' => s psi(S) = s0 psi(S)"),
    ("nonmax-singleton", "S_alpha left/right zero, a not maximal => |psi(a)| = 1"),
    ("peel-cover", "A in A2(S), alpha not maximal in id A, a in A_alpha => A \\ {a} in A2(S), A covers-EP A \\ {a}"),
    ("power-green-ideals", "A R B in P(S) => AS = BS; A D B in P(S) => id A = id B"),
    ("r-related-ideals", "A, B mutually R-covered in S => AS = BS and psi(A)S' = psi(B)S'"),
    ("rho-sandwich", "A subset of a rho_alpha => ABA = aBa (B in P(S_beta), beta < alpha), CAC = CaC (C in P(S_gamma), gamma > alpha)"),
    ("rho-transfer", "A in P(S_alpha), s in psi(a): A subset of a rho_alpha iff psi(A) subset of s rho_theta(alpha)"),
    ("rho-translation", "a1 rho_alpha a2, b in S_beta, beta < alpha => a1 b = a2 b, b a1 = b a2"),
    ("sandwich-preimage", "alpha > beta, a in S_alpha, B in P(S_beta), s in psi(a) => psi^-1(s) B psi^-1(s) = aBa"),
    ("sandwich-singleton", "alpha > beta => |psi(a) t psi(a)| = 1 (t in S'_theta(beta)), |s psi(b) s| = 1 (s in S'_theta(alpha))"),
    ("theta-component-iso", "theta(alpha) = id psi(S_alpha) is a semilattice isomorphism with psi(P(S_alpha)) = P(S'_theta(alpha))"),
];

/// Every statement id the suite emits, with its formula, sorted by id.
pub fn statement_catalogue() -> &'static [(&'static str, &'static str)] {
    CATALOGUE
}

fn anchor(statement: &str) -> &'static str {
    CATALOGUE.iter().find(|(id, _)| *id == statement).map_or("", |(_, a)| a)
}

struct Ctx<'a> {
    s: &'a Analysis,
    t: &'a Analysis,
    psi: &'a IsoMap,
}

impl Ctx<'_> {
    fn psi(&self, m: u32) -> u32 {
        self.psi.image_mask(m)
    }

    fn psi_inv(&self, m: u32) -> u32 {
        self.psi.preimage_mask(m)
    }

    fn fs(&self, m: u32) -> String {
        fmt(self.s, m)
    }

    fn ft(&self, m: u32) -> String {
        fmt(self.t, m)
    }
}

fn fmt(a: &Analysis, m: u32) -> String {
    Subset::from_mask(a.n(), m).to_string()
}

/// Runs every statement on `(S, S′, ψ)`; one record per statement.
pub fn verify_statement_suite(
    s: &Analysis,
    t: &Analysis,
    psi: &IsoMap,
    instance: &str,
) -> Result<Vec<Record>> {
    let bound = s.n().max(t.n());
    if bound > SUITE_BOUND {
        return Err(Error::OrderTooLarge { order: bound, bound: SUITE_BOUND });
    }
    super::check_psi(psi, s, t)?;
    let c = Ctx { s, t, psi };
    let mut out = vec![
        bijection(&c, Analysis::is_a3).into_record("a3-bijection", instance),
        bijection(&c, Analysis::is_a2).into_record("a2-bijection", instance),
        bijection(&c, Analysis::is_a2bar).into_record("a2bar-bijection", instance),
        a3_characterization(s).into_record("a3-characterization", instance),
        a2_characterization(s).into_record("a2-characterization", instance),
        a3_local_identities(s).into_record("a3-local-identities", instance),
        a3_square_roots(s).into_record("a3-square-roots", instance),
        a3_element_structure(s).into_record("a3-element-structure", instance),
        power_green_ideals(s).into_record("power-green-ideals", instance),
        r_related_ideals(&c).into_record("r-related-ideals", instance),
        local_identity_absorbs(&c).into_record("local-identity-absorbs-image", instance),
        ep_order_slices(s).into_record("ep-order-slices", instance),
        peel_cover(s).into_record("peel-cover", instance),
        a2_pair_union(&c).into_record("a2-pair-union", instance),
        nonmax_singleton(&c).into_record("nonmax-singleton", instance),
        sandwich_preimage(&c).into_record("sandwich-preimage", instance),
        rho_sandwich(s).into_record("rho-sandwich", instance),
        rho_translation(s).into_record("rho-translation", instance),
    ];
    let mut theta_tally = Tally::new();
    match extract_theta(psi, s, t) {
        Ok(theta) => {
            theta_tally.checked = s.decomposition.len();
            out.push(cs0_singleton(&c, &theta).into_record("cs0-singleton", instance));
            out.push(sandwich_singleton(&c, &theta).into_record("sandwich-singleton", instance));
            out.push(rho_transfer(&c, &theta).into_record("rho-transfer", instance));
        }
        Err(e) => {
            theta_tally.fail(e.to_string());
            for id in ["cs0-singleton", "sandwich-singleton", "rho-transfer"] {
                let mut tally = Tally::new();
                tally.fail("theta unavailable".into());
                out.push(tally.into_record(id, instance));
            }
        }
    }
    out.push(theta_tally.into_record("theta-component-iso", instance));
    let mut eta = Tally::new();
    match construct_eta(psi, s, t) {
        Ok(map) => eta.check(map.verified, || format!("unverified eta {:?}", map.forward)),
        Err(e) => eta.fail(e.to_string()),
    }
    out.push(eta.into_record("eta-isomorphism", instance));
    out.sort_by_key(|r| r.statement);
    Ok(out)
}

/// The statements that depend on `S` alone and quantify over its subsets,
/// for corpus members that take part in no sweep pair.
pub fn suite_semigroup_records(s: &Analysis, instance: &str) -> Vec<Record> {
    vec![
        a3_characterization(s).into_record("a3-characterization", instance),
        a2_characterization(s).into_record("a2-characterization", instance),
    ]
}

fn bijection(c: &Ctx, member: fn(&Analysis, u32) -> bool) -> Tally {
    let mut tally = Tally::new();
    for m in c.s.masks() {
        let (here, there) = (member(c.s, m), member(c.t, c.psi(m)));
        if here || there {
            tally.check(here == there, || {
                format!("A = {} (member: {here}), psi(A) = {} (member: {there})", c.fs(m), c.ft(c.psi(m)))
            });
        }
    }
    tally
}

fn a3_characterization(s: &Analysis) -> Tally {
    let mut tally = Tally::new();
    for a in s.masks().filter(|&a| s.is_ep(a)) {
        let cx = a3_counterexample(&s.power, a);
        tally.check(s.is_a3(a) == cx.is_none(), || {
            format!("A = {}, in A3: {}, root B = {:?}", fmt(s, a), s.is_a3(a), cx.map(|b| fmt(s, b)))
        });
    }
    tally
}

fn a2_characterization(s: &Analysis) -> Tally {
    let mut tally = Tally::new();
    for a in s.masks().filter(|&a| s.is_a3(a)) {
        let cx = a2_counterexample(&s.power, a);
        tally.check(s.is_a2(a) == cx.is_none(), || {
            format!("A = {}, in A2: {}, B = {:?}", fmt(s, a), s.is_a2(a), cx.map(|b| fmt(s, b)))
        });
    }
    tally
}

fn a3_local_identities(s: &Analysis) -> Tally {
    let mut tally = Tally::new();
    for a in s.masks().filter(|&a| s.is_a3(a)) {
        for x in bits(a) {
            tally.check(a & s.identity_mask(x) != 0, || format!("A = {}, a = {x}", fmt(s, a)));
        }
        for b in submasks(a) {
            if s.mul(b, b) == a {
                tally.check(b == a, || format!("A = {}, B = {}", fmt(s, a), fmt(s, b)));
            }
        }
    }
    tally
}

fn a3_square_roots(s: &Analysis) -> Tally {
    let d = &s.decomposition;
    let mut tally = Tally::new();
    for a in s.masks().filter(|&a| s.is_a3(a)) {
        let ida = d.id_mask(a);
        for b in s.masks() {
            let (bb, ba, ab) = (s.mul(b, b), s.mul(b, a), s.mul(a, b));
            let w = || format!("A = {}, B = {}", fmt(s, a), fmt(s, b));
            if bb == a {
                tally.check(d.id_mask(b) == ida, w);
            }
            if d.id_mask(b).is_subset_of(ida) && ba == a && ab == a {
                tally.check(b & !a == 0, w);
            }
            if ba == a && bb == a {
                tally.check(b == a, w);
            }
        }
    }
    tally
}

fn a3_element_structure(s: &Analysis) -> Tally {
    let (d, g, tb) = (&s.decomposition, s.power.green(), &s.table);
    let mut tally = Tally::new();
    for a in s.masks().filter(|&a| s.is_ep(a) && a3_counterexample(&s.power, a).is_none()) {
        let w = |what: &str| format!("A = {}: {what}", fmt(s, a));
        let ids = d.id_mask(a);
        let maximal = d.maximal_ids(ids);
        tally.check(d.is_chain(ids), || w("id A is not a chain"));
        for x in bits(a) {
            let x0 = s.identity_of(x);
            tally.check(tb.mul(tb.mul(x, x), x) == x && a >> x0 & 1 == 1, || w(&format!("a = {x}")));
            for y in bits(a) {
                let xy = tb.mul(x, y);
                let allowed = [x, y, x0, s.identity_of(y)];
                tally.check(allowed.contains(&xy), || w(&format!("{x}*{y} = {xy}")));
            }
            if !tb.is_idempotent(x) {
                let h: Vec<usize> = bits(a).filter(|&y| g.hclass[y] == g.hclass[x]).collect();
                let mut expected = vec![x, x0];
                expected.sort_unstable();
                tally.check(h == expected, || w(&format!("H_{x} n A = {h:?}")));
            }
        }
        for alpha in ids.ids() {
            let slice: Vec<usize> = bits(a & d.component_mask(alpha)).collect();
            let one_l = slice.iter().all(|&x| g.lclass[x] == g.lclass[slice[0]]);
            let one_r = slice.iter().all(|&x| g.rclass[x] == g.rclass[slice[0]]);
            tally.check(one_l || one_r, || w(&format!("slice {alpha} spans L and R")));
            if maximal.contains(alpha) {
                if let Some(&x) = slice.iter().find(|&&x| !tb.is_idempotent(x)) {
                    let mut expected = vec![x, s.identity_of(x)];
                    expected.sort_unstable();
                    tally.check(slice == expected, || w(&format!("top slice {slice:?}")));
                }
                continue;
            }
            let left = slice.iter().all(|&x| slice.iter().all(|&y| tb.mul(x, y) == x));
            let right = slice.iter().all(|&x| slice.iter().all(|&y| tb.mul(x, y) == y));
            tally.check(left || right, || w(&format!("slice {alpha} not a zero semigroup")));
            for beta in ids.ids().filter(|&beta| d.lt(alpha, beta)) {
                for &x in &slice {
                    for y in bits(a & d.component_mask(beta)) {
                        tally.check(tb.mul(x, y) == x && tb.mul(y, x) == x, || {
                            w(&format!("{x} below {y} not absorbed"))
                        });
                    }
                }
            }
        }
    }
    tally
}

fn power_green_ideals(s: &Analysis) -> Tally {
    let mut tally = Tally::new();
    let Some(pg) = s.power_green() else { return tally };
    let d = &s.decomposition;
    let full = s.full();
    for a in s.masks() {
        for b in s.masks().filter(|&b| b > a) {
            let (i, j) = ((a - 1) as usize, (b - 1) as usize);
            let w = || format!("A = {}, B = {}", fmt(s, a), fmt(s, b));
            if pg.rclass[i] == pg.rclass[j] {
                tally.check(s.mul(a, full) == s.mul(b, full), w);
            }
            if pg.dclass[i] == pg.dclass[j] {
                tally.check(d.id_mask(a) == d.id_mask(b), w);
            }
        }
    }
    tally
}

fn r_related_ideals(c: &Ctx) -> Tally {
    let (s, g) = (c.s, c.s.power.green());
    // R-class masks for every element
    let rmask: Vec<u32> = (0..s.n())
        .map(|x| bits(s.full()).filter(|&y| g.rclass[y] == g.rclass[x]).fold(0, |m, y| m | 1 << y))
        .collect();
    let mut tally = Tally::new();
    let (full, full_t) = (s.full(), c.t.full());
    for a in s.masks() {
        for b in s.masks().filter(|&b| b > a) {
            let mutual = bits(a).all(|x| rmask[x] & b != 0) && bits(b).all(|y| rmask[y] & a != 0);
            if mutual {
                let ok = s.mul(a, full) == s.mul(b, full)
                    && c.t.mul(c.psi(a), full_t) == c.t.mul(c.psi(b), full_t);
                tally.check(ok, || format!("A = {}, B = {}", c.fs(a), c.fs(b)));
            }
        }
    }
    tally
}

fn local_identity_absorbs(c: &Ctx) -> Tally {
    let t = c.t;
    let image = c.psi(c.s.full());
    let mut tally = Tally::new();
    for x in 0..t.n() {
        let lhs = t.mul(1 << x, image);
        let rhs = t.mul(t.identity_mask(x), image);
        tally.check(lhs == rhs, || format!("s = {x}: {} vs {}", c.ft(lhs), c.ft(rhs)));
    }
    tally
}

fn ep_order_slices(s: &Analysis) -> Tally {
    let d = &s.decomposition;
    let mut tally = Tally::new();
    for a in s.masks().filter(|&a| s.is_a2(a)) {
        let ida = d.id_mask(a);
        for b in s.masks().filter(|&b| s.is_ep(b) && s.power.ep_leq_mask(a, b)) {
            let idb = d.id_mask(b);
            let (max_a, max_b) = (d.maximal_ids(ida), d.maximal_ids(idb));
            for alpha in ida.ids().filter(|&x| idb.contains(x)) {
                let comp = d.component_mask(alpha);
                let (sa, sb) = (a & comp, b & comp);
                let w = || format!("A = {}, B = {}, alpha = {alpha}", fmt(s, a), fmt(s, b));
                tally.check(sb & !sa == 0, w);
                if max_a.contains(alpha) && max_b.contains(alpha) {
                    tally.check(sa == sb, w);
                }
            }
        }
    }
    tally
}

fn peel_cover(s: &Analysis) -> Tally {
    let d = &s.decomposition;
    let mut tally = Tally::new();
    for a in s.masks().filter(|&a| s.is_a2(a)) {
        let ids = d.id_mask(a);
        let maximal = d.maximal_ids(ids);
        for alpha in ids.ids().filter(|&x| !maximal.contains(x)) {
            for x in bits(a & d.component_mask(alpha)) {
                let b = a & !(1 << x);
                let ok = s.is_a2(b)
                    && s.power.ep_leq_mask(a, b)
                    && s.power.covering_witness(a, b, CoverKind::Ep).is_none();
                tally.check(ok, || format!("A = {}, a = {x}", fmt(s, a)));
            }
        }
    }
    tally
}

fn a2_pair_union(c: &Ctx) -> Tally {
    let s = c.s;
    let mut tally = Tally::new();
    for a in 0..s.n() {
        for b in 0..s.n() {
            let pair = 1 << a | 1 << b;
            if a == b || !s.is_a2(pair) || !s.decomposition.lt(s.component_of(a), s.component_of(b)) {
                continue;
            }
            let (pa, pb) = (c.psi(1 << a), c.psi(1 << b));
            tally.check(c.psi(pair) == pa | pb && pa.is_power_of_two(), || {
                format!("a = {a}, b = {b}: psi({{a,b}}) = {}, psi(a) = {}", c.ft(c.psi(pair)), c.ft(pa))
            });
        }
    }
    tally
}

fn nonmax_singleton(c: &Ctx) -> Tally {
    let s = c.s;
    let mut tally = Tally::new();
    for a in (0..s.n()).filter(|&a| !s.order.is_maximal(a)) {
        if s.decomposition.classification[s.component_of(a)].is_zero_kind() {
            let image = c.psi(1 << a);
            tally.check(image.is_power_of_two(), || format!("a = {a}: psi(a) = {}", c.ft(image)));
        }
    }
    tally
}

fn sandwich_preimage(c: &Ctx) -> Tally {
    let (s, d) = (c.s, &c.s.decomposition);
    let mut tally = Tally::new();
    for a in 0..s.n() {
        let alpha = s.component_of(a);
        for beta in (0..d.len()).filter(|&beta| d.lt(beta, alpha)) {
            for b in s.power.subsets_of(d.component_mask(beta)) {
                let aba = s.power.mul3_mask(1 << a, b, 1 << a);
                for x in bits(c.psi(1 << a)) {
                    let pre = c.psi_inv(1 << x);
                    let lhs = s.power.mul3_mask(pre, b, pre);
                    tally.check(lhs == aba, || {
                        format!("a = {a}, B = {}, s = {x}: {} vs {}", c.fs(b), c.fs(lhs), c.fs(aba))
                    });
                }
            }
        }
    }
    tally
}

fn rho_sandwich(s: &Analysis) -> Tally {
    let d = &s.decomposition;
    let mut tally = Tally::new();
    for alpha in 0..d.len() {
        let Some(rho) = s.rho(alpha) else { continue };
        for (k, block) in rho.blocks.iter().enumerate() {
            let bm = rho.block_mask(k);
            for a_set in s.power.subsets_of(bm) {
                for &a in block {
                    let am = 1 << a;
                    for other in 0..d.len() {
                        let below = d.lt(other, alpha);
                        if !below && !d.lt(alpha, other) {
                            continue;
                        }
                        for x in s.power.subsets_of(d.component_mask(other)) {
                            let (lhs, rhs) = if below {
                                (s.power.mul3_mask(a_set, x, a_set), s.power.mul3_mask(am, x, am))
                            } else {
                                (s.power.mul3_mask(x, a_set, x), s.power.mul3_mask(x, am, x))
                            };
                            tally.check(lhs == rhs, || {
                                format!("A = {}, a = {a}, X = {}", fmt(s, a_set), fmt(s, x))
                            });
                        }
                    }
                }
            }
        }
    }
    tally
}

fn rho_translation(s: &Analysis) -> Tally {
    let (d, tb) = (&s.decomposition, &s.table);
    let mut tally = Tally::new();
    for alpha in 0..d.len() {
        let Some(rho) = s.rho(alpha) else { continue };
        for block in &rho.blocks {
            for (&x, &y) in block.iter().zip(block.iter().skip(1)) {
                for b in (0..s.n()).filter(|&b| d.lt(s.component_of(b), alpha)) {
                    tally.check(tb.mul(x, b) == tb.mul(y, b) && tb.mul(b, x) == tb.mul(b, y), || {
                        format!("a1 = {x}, a2 = {y}, b = {b}")
                    });
                }
            }
        }
    }
    tally
}

fn cs0_singleton(c: &Ctx, theta: &IsoMap) -> Tally {
    let (s, t, d) = (c.s, c.t, &c.s.decomposition);
    let mut tally = Tally::new();
    for alpha in (0..d.len()).filter(|&x| d.classification[x] == ComponentKind::CS0) {
        let members = &d.components[alpha];
        let target = t.decomposition.component_mask(theta.apply(alpha));
        let image: Vec<u32> = members.iter().map(|&a| c.psi(1 << a)).collect();
        let singletons = image.iter().all(|m| m.is_power_of_two() && m & target == *m);
        let morphism = singletons
            && members.iter().enumerate().all(|(i, &x)| {
                members.iter().enumerate().all(|(j, &y)| c.psi(1 << s.table.mul(x, y)) == t.mul(image[i], image[j]))
            });
        tally.check(singletons && morphism, || {
            format!("component {alpha}: images {:?}", image.iter().map(|&m| c.ft(m)).collect::<Vec<_>>())
        });
    }
    tally
}

fn sandwich_singleton(c: &Ctx, theta: &IsoMap) -> Tally {
    let (t, d) = (c.t, &c.s.decomposition);
    let d2 = &t.decomposition;
    let mut tally = Tally::new();
    for alpha in 0..d.len() {
        for beta in (0..d.len()).filter(|&beta| d.lt(beta, alpha)) {
            for a in bits(d.component_mask(alpha)) {
                let pa = c.psi(1 << a);
                for x in bits(d2.component_mask(theta.apply(beta))) {
                    let m = t.power.mul3_mask(pa, 1 << x, pa);
                    tally.check(m.is_power_of_two(), || format!("a = {a}, t = {x}: {}", c.ft(m)));
                }
            }
            for x in bits(d2.component_mask(theta.apply(alpha))) {
                for b in bits(d.component_mask(beta)) {
                    let m = t.power.mul3_mask(1 << x, c.psi(1 << b), 1 << x);
                    tally.check(m.is_power_of_two(), || format!("s = {x}, b = {b}: {}", c.ft(m)));
                }
            }
        }
    }
    tally
}

fn rho_transfer(c: &Ctx, theta: &IsoMap) -> Tally {
    let (s, t, d) = (c.s, c.t, &c.s.decomposition);
    let mut tally = Tally::new();
    for alpha in 0..d.len() {
        let (Some(rho), Some(rho2)) = (s.rho(alpha), t.rho(theta.apply(alpha))) else {
            if d.classification[alpha].is_zero_kind() {
                tally.fail(format!("component {alpha} has no rho partition on the image side"));
            }
            continue;
        };
        for a in bits(d.component_mask(alpha)) {
            let class = rho.block_mask(rho.block_of(a).unwrap());
            for x in bits(c.psi(1 << a)) {
                let Some(k) = rho2.block_of(x) else {
                    tally.fail(format!("a = {a}: s = {x} outside S'_theta(alpha)"));
                    continue;
                };
                let class2 = rho2.block_mask(k);
                for sub in s.power.subsets_of(d.component_mask(alpha)) {
                    let here = sub & !class == 0;
                    let there = c.psi(sub) & !class2 == 0;
                    tally.check(here == there, || {
                        format!("a = {a}, s = {x}, A = {}: {here} vs {there}", c.fs(sub))
                    });
                }
            }
        }
    }
    tally
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, clifford3, FamilySpec};
    use crate::iso::{find_isomorphisms, find_power_isomorphisms, lift, Carrier};

    fn all_pass(records: &[Record]) {
        for r in records {
            assert_ne!(r.verdict, Verdict::Fail, "{r:?}");
        }
    }

    #[test]
    fn catalogue_sorted_and_complete() {
        let ids: Vec<&str> = CATALOGUE.iter().map(|(id, _)| *id).collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        assert_eq!(ids, sorted);
        let s = Analysis::new(&clifford3()).unwrap();
        let psi = IsoMap::identity(Carrier::Subsets { order: 3 });
        let records = verify_statement_suite(&s, &s, &psi, "clifford3").unwrap();
        let emitted: Vec<&str> = records.iter().map(|r| r.statement).collect();
        assert_eq!(emitted, ids);
        all_pass(&records);
    }

    #[test]
    fn twisted_left_zero() {
        let t = build(&FamilySpec::LeftZero(2)).unwrap();
        let s = Analysis::new(&t).unwrap();
        let psis = find_power_isomorphisms(&t, &t, 8).unwrap();
        assert_eq!(psis.len(), 6);
        for psi in &psis {
            let records = verify_statement_suite(&s, &s, psi, "L2").unwrap();
            all_pass(&records);
            let a3 = records.iter().find(|r| r.statement == "a3-bijection").unwrap();
            assert_eq!(a3.checked, 3);
        }
    }

    #[test]
    fn pair_union_on_clifford() {
        let s = Analysis::new(&clifford3()).unwrap();
        let psi = IsoMap::identity(Carrier::Subsets { order: 3 });
        let records = verify_statement_suite(&s, &s, &psi, "c3").unwrap();
        let r = records.iter().find(|r| r.statement == "a2-pair-union").unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        // {z, e} is the only breakable pair across components
        assert_eq!(r.checked, 1);
    }

    #[test]
    fn local_identity_on_z2() {
        let t = build(&FamilySpec::CyclicGroup(2)).unwrap();
        let s = Analysis::new(&t).unwrap();
        let phi = find_isomorphisms(&t, &t, 1).unwrap().remove(0);
        let records = verify_statement_suite(&s, &s, &lift(&phi).unwrap(), "Z2").unwrap();
        let r = records.iter().find(|r| r.statement == "local-identity-absorbs-image").unwrap();
        assert_eq!((r.verdict, r.checked), (Verdict::Pass, 2));
    }

    #[test]
    fn broken_psi_is_caught() {
        // a bijection of P(Z2) that is declared verified but is not a morphism
        let s = Analysis::new(&build(&FamilySpec::CyclicGroup(2)).unwrap()).unwrap();
        let c = Carrier::Subsets { order: 2 };
        let mut psi = IsoMap::new(c, c, vec![2, 1, 0]).unwrap();
        psi.verified = true;
        let records = verify_statement_suite(&s, &s, &psi, "bad").unwrap();
        assert!(records.iter().any(|r| r.verdict == Verdict::Fail && r.witness.is_some()));
    }

    #[test]
    fn too_large() {
        let s = Analysis::new(&build(&FamilySpec::LeftZero(7)).unwrap()).unwrap();
        let psi = IsoMap::identity(Carrier::Subsets { order: 7 });
        assert!(matches!(verify_statement_suite(&s, &s, &psi, "L7"), Err(Error::OrderTooLarge { .. })));
    }
}
