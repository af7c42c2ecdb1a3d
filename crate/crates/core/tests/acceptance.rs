//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion does.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use crglobal::breakable::{a2_characterization, a3_characterization, structural_form, ChunkKind};
use crglobal::families::{corpus, order12_benchmark, CorpusProfile};
use crglobal::globaldet::{
    construct_eta, extract_theta, statement_catalogue, verify_statement_suite, Analysis, Verdict,
};
use crglobal::green::{green_relations, is_completely_regular};
use crglobal::iso::{find_isomorphisms, find_power_isomorphisms, lift, IsoMap};
use crglobal::power::PowerSemigroup;
use crglobal::structure::ComponentKind;
use crglobal::verify::{run, Profile, VerifyOptions};
use crglobal::{breakable, CayleyTable};

fn cr_corpus(max: usize) -> Vec<(String, CayleyTable)> {
    corpus(CorpusProfile::Full)
        .into_iter()
        .filter(|(_, t)| t.order() <= max && is_completely_regular(t))
        .collect()
}

fn elems(m: u32) -> Vec<usize> {
    (0..32).filter(|&i| m >> i & 1 == 1).collect()
}

fn naive_product(t: &CayleyTable, a: u32, b: u32) -> u32 {
    let mut out = 0;
    for x in elems(a) {
        for y in elems(b) {
            out |= 1 << t.mul(x, y);
        }
    }
    out
}

fn naive_an(t: &CayleyTable, a: u32, arity: usize) -> bool {
    let xs = elems(a);
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..arity {
        tuples = tuples
            .into_iter()
            .flat_map(|v| xs.iter().map(move |&x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    tuples.iter().all(|v| {
        let p = v[1..].iter().fold(v[0], |acc, &x| t.mul(acc, x));
        v.contains(&p)
    })
}

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn report(&mut self, id: &str, title: &str, ok: bool, detail: String) {
        println!("criterion {id} [{title}]: {} ({detail})", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failures.push(format!("{id}: {detail}"));
        }
    }
}

/// Every ψ between powers of equal-order corpus pairs up to order five, from
/// lifted element isomorphisms and from raw power-table search.
fn psi_sweep() -> Vec<(String, Analysis, Analysis, IsoMap, bool)> {
    let members = cr_corpus(5);
    let mut out = Vec::new();
    for i in 0..members.len() {
        for j in i..members.len() {
            let ((n1, t1), (n2, t2)) = (&members[i], &members[j]);
            if t1.order() != t2.order() {
                continue;
            }
            let (s, t) = (Analysis::new(t1).unwrap(), Analysis::new(t2).unwrap());
            let mut seen = BTreeSet::new();
            let lifted = find_isomorphisms(t1, t2, 8).unwrap().into_iter().map(|p| (lift(&p).unwrap(), true));
            let raw = find_power_isomorphisms(t1, t2, 8).unwrap().into_iter().map(|p| (p, false));
            for (psi, is_lift) in lifted.chain(raw) {
                if seen.insert(psi.forward.clone()) {
                    out.push((format!("{n1} -> {n2}"), s.clone(), t.clone(), psi, is_lift));
                }
            }
        }
    }
    out
}

fn psi_is_morphism(s: &CayleyTable, t: &CayleyTable, psi: &IsoMap) -> bool {
    let full = (1u32 << s.order()) - 1;
    (1..=full).all(|a| {
        (1..=full).all(|b| {
            psi.image_mask(naive_product(s, a, b)) == naive_product(t, psi.image_mask(a), psi.image_mask(b))
        })
    })
}

#[test]
fn acceptance() {
    let mut out = Outcome { failures: Vec::new() };
    let six = cr_corpus(6);

    // 1: characterization of A3 inside EP(S)
    let start = Instant::now();
    let (mut checked, mut bad) = (0, Vec::new());
    for (name, t) in &six {
        let p = PowerSemigroup::new(t).unwrap();
        for a in p.enumerate_ep().unwrap() {
            let scan = a3_characterization(&p, a).unwrap().holds();
            checked += 1;
            if scan != naive_an(t, a.mask(), 3) {
                bad.push(format!("{name} {a}"));
            }
        }
    }
    let took = start.elapsed();
    out.report(
        "1",
        "A3 characterization",
        bad.is_empty() && took < Duration::from_secs(30),
        format!("{checked} idempotent subsets over {} semigroups, {took:.2?}, mismatches {bad:?}", six.len()),
    );

    // 2: characterization of A2 inside A3
    let start = Instant::now();
    let (mut checked, mut bad) = (0, Vec::new());
    for (name, t) in &six {
        let p = PowerSemigroup::new(t).unwrap();
        for a in breakable::enumerate_a3(&p).unwrap() {
            let scan = a2_characterization(&p, a).unwrap().holds();
            checked += 1;
            if scan != naive_an(t, a.mask(), 2) {
                bad.push(format!("{name} {a}"));
            }
        }
    }
    let took = start.elapsed();
    out.report(
        "2",
        "A2 characterization",
        bad.is_empty() && took < Duration::from_secs(30),
        format!("{checked} members of A3, {took:.2?}, mismatches {bad:?}"),
    );

    // 3: chain structure of A2 and A3 members
    let (mut checked, mut bad) = (0, Vec::new());
    for (name, t) in &six {
        let p = PowerSemigroup::new(t).unwrap();
        let a2: Vec<u32> = breakable::enumerate_a2(&p).unwrap().iter().map(|a| a.mask()).collect();
        for a in breakable::enumerate_a3(&p).unwrap() {
            checked += 1;
            let form = structural_form(&p, a).unwrap();
            let chunks: Vec<u32> = form.chain.iter().map(|c| c.mask()).collect();
            let mut ok = chunks.iter().fold(0, |m, c| m | c) == a.mask()
                && chunks.iter().map(|c| c.count_ones()).sum::<u32>() == a.mask().count_ones()
                && (form.kinds.iter().all(|k| *k != ChunkKind::OrderTwoGroupTop)) == a2.contains(&a.mask());
            for (i, (&c, kind)) in chunks.iter().zip(&form.kinds).enumerate() {
                let es = elems(c);
                ok &= match kind {
                    ChunkKind::LeftZero => es.iter().all(|&x| es.iter().all(|&y| t.mul(x, y) == x)),
                    ChunkKind::RightZero => es.iter().all(|&x| es.iter().all(|&y| t.mul(x, y) == y)),
                    ChunkKind::OrderTwoGroupTop => {
                        i + 1 == chunks.len()
                            && es.len() == 2
                            && es.iter().filter(|&&x| t.mul(x, x) == x).count() == 1
                            && es.iter().all(|&x| es.iter().all(|&y| es.contains(&t.mul(x, y))))
                    }
                };
                for &h in &chunks[i + 1..] {
                    ok &= es.iter().all(|&x| elems(h).iter().all(|&y| t.mul(x, y) == x && t.mul(y, x) == x));
                }
            }
            if !ok {
                bad.push(format!("{name} {a}"));
            }
        }
    }
    out.report("3", "chain structure", bad.is_empty(), format!("{checked} forms, bad {bad:?}"));

    // 4: H-classes of singletons and left zero subsets in P(S)
    let start = Instant::now();
    let (mut checked, mut bad) = (0, Vec::new());
    for (name, t) in &six {
        let p = PowerSemigroup::new(t).unwrap();
        let g = green_relations(t);
        let full = (1u32 << t.order()) - 1;
        let pt = CayleyTable::from_flat(
            full as usize,
            (1..=full).flat_map(|a| (1..=full).map(move |b| (a, b))).map(|(a, b)| naive_product(t, a, b) as usize - 1).collect(),
        )
        .unwrap();
        let pg = green_relations(&pt);
        let h_of = |m: u32| -> Vec<u32> {
            (1..=full).filter(|&x| pg.hclass[(x - 1) as usize] == pg.hclass[(m - 1) as usize]).collect()
        };
        for e in t.idempotents() {
            checked += 1;
            let expected: Vec<u32> = (0..t.order()).filter(|&a| g.hclass[a] == g.hclass[e]).map(|a| 1 << a).collect();
            let got: Vec<u32> = p.power_h_of_idempotent_singleton(e).unwrap().iter().map(|x| x.mask()).collect();
            if got != expected || h_of(1 << e) != expected {
                bad.push(format!("{name} e={e}"));
            }
        }
        for lz in p.left_zero_subsets() {
            checked += 1;
            let e = elems(lz.mask())[0];
            let mut expected: Vec<u32> = (0..t.order())
                .filter(|&a| g.hclass[a] == g.hclass[e])
                .map(|a| naive_product(t, lz.mask(), 1 << a))
                .collect();
            expected.sort_unstable();
            expected.dedup();
            let got: Vec<u32> = p.power_h_of_left_zero_set(lz).unwrap().iter().map(|x| x.mask()).collect();
            if got != expected || h_of(lz.mask()) != expected {
                bad.push(format!("{name} E={lz}"));
            }
        }
    }
    let took = start.elapsed();
    out.report(
        "4",
        "H-classes in P(S)",
        bad.is_empty() && took < Duration::from_secs(60),
        format!("{checked} classes, {took:.2?}, bad {bad:?}"),
    );

    // 5 and 6: theta and eta for every psi of the pairwise sweep
    let start = Instant::now();
    let sweep = psi_sweep();
    let twisted = sweep.iter().any(|(_, s, _, psi, _)| {
        s.decomposition.len() == 1
            && s.decomposition.classification[0] == ComponentKind::LeftZero
            && s.n() > 1
            && !psi.preserves_singletons()
    });
    let raw_count = sweep.iter().filter(|x| !x.4).count();
    let (mut bad_theta, mut bad_eta) = (Vec::new(), Vec::new());
    for (k, (pair, s, t, psi, _)) in sweep.iter().enumerate() {
        if !psi_is_morphism(&s.table, &t.table, psi) {
            bad_theta.push(format!("{pair} #{k}: psi is not a morphism"));
            continue;
        }
        match extract_theta(psi, s, t) {
            Ok(theta) => {
                let (d, d2) = (&s.decomposition, &t.decomposition);
                let iso = (0..d.len()).all(|a| {
                    (0..d.len()).all(|b| theta.apply(d.meet(a, b)) == d2.meet(theta.apply(a), theta.apply(b)))
                });
                let restricts = (0..d.len()).all(|alpha| {
                    let (src, dst) = (d.component_mask(alpha), d2.component_mask(theta.apply(alpha)));
                    let images: BTreeSet<u32> =
                        (1..=src).filter(|&m| m & !src == 0).map(|m| psi.image_mask(m)).collect();
                    let targets: BTreeSet<u32> = (1..=dst).filter(|&m| m & !dst == 0).collect();
                    images == targets
                });
                if !(iso && restricts) {
                    bad_theta.push(format!("{pair} #{k}"));
                }
            }
            Err(e) => bad_theta.push(format!("{pair} #{k}: {e}")),
        }
        match construct_eta(psi, s, t) {
            Ok(eta) => {
                let n = s.n();
                let mut seen = vec![false; n];
                let bij = eta.forward.iter().all(|&y| y < n && !std::mem::replace(&mut seen[y], true));
                let hom = (0..n).all(|a| {
                    (0..n).all(|b| eta.forward[s.table.mul(a, b)] == t.table.mul(eta.forward[a], eta.forward[b]))
                });
                if !(bij && hom) {
                    bad_eta.push(format!("{pair} #{k}"));
                }
            }
            Err(e) => bad_eta.push(format!("{pair} #{k}: {e}")),
        }
    }
    let took = start.elapsed();
    out.report(
        "5",
        "component isomorphism theta",
        bad_theta.is_empty() && sweep.len() >= 20 && twisted,
        format!(
            "{} psi ({raw_count} from power search), singleton-moving psi on a left zero semigroup: {twisted}, bad {bad_theta:?}",
            sweep.len()
        ),
    );
    out.report(
        "6",
        "element isomorphism eta",
        bad_eta.is_empty() && took < Duration::from_secs(120),
        format!("{} psi, {took:.2?}, bad {bad_eta:?}", sweep.len()),
    );

    // 7: the statement suite on the same psi, with coverage
    let mut fails = Vec::new();
    let mut exercised = BTreeSet::new();
    for (k, (pair, s, t, psi, _)) in sweep.iter().enumerate() {
        for r in verify_statement_suite(s, t, psi, &format!("{pair} #{k}")).unwrap() {
            match r.verdict {
                Verdict::Pass => {
                    exercised.insert(r.statement);
                }
                Verdict::Fail => fails.push(format!("{} {}: {:?}", r.statement, r.instance, r.witness)),
                Verdict::Vacuous => {}
            }
        }
    }
    let missing: Vec<&str> =
        statement_catalogue().iter().map(|(id, _)| *id).filter(|id| !exercised.contains(id)).collect();
    out.report(
        "7",
        "statement suite",
        fails.is_empty() && missing.is_empty(),
        format!(
            "{} statements exercised, never instantiated {missing:?}, failures {:?}",
            exercised.len(),
            fails.iter().take(5).collect::<Vec<_>>()
        ),
    );

    // 8: EP and A3 enumeration at order 12
    let big = order12_benchmark();
    let start = Instant::now();
    let p = PowerSemigroup::new(&big).unwrap();
    let ep = p.enumerate_ep().unwrap();
    let a3 = breakable::enumerate_a3(&p).unwrap();
    let took = start.elapsed();
    out.report(
        "8",
        "order-12 enumeration",
        took < Duration::from_secs(10) && !a3.is_empty() && a3.len() <= ep.len(),
        format!("|EP| = {}, |A3| = {}, {took:.2?}", ep.len(), a3.len()),
    );

    // 9: byte-identical reports
    let opts = VerifyOptions { profile: Profile::Full, ..Default::default() };
    let (r1, r2) = (run(&opts), run(&opts));
    let (j1, j2) = (r1.to_json_lines(), r2.to_json_lines());
    out.report(
        "9",
        "deterministic report",
        j1 == j2 && r1.passed(),
        format!("{} bytes, {} records, all pass: {}", j1.len(), r1.records.len(), r1.passed()),
    );

    assert!(out.failures.is_empty(), "failed criteria: {:#?}", out.failures);
}
