//! Corpus-wide verification: per-semigroup checks, the pairwise sweep over
//! isomorphisms of power semigroups, and coverage accounting.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::breakable::structural_form;
use crate::families::{corpus, CorpusProfile};
use crate::globaldet::{
    statement_catalogue, verify_statement_suite, Analysis, Record, Tally, Verdict,
};
use crate::green::is_completely_regular;
use crate::iso::{find_isomorphisms, find_power_isomorphisms, lift, power_table, IsoMap, DEFAULT_POWER_TABLE_BOUND};
use crate::structure::ComponentKind;
use crate::table::CayleyTable;

/// Minimum number of distinct ψ the sweep must exercise.
pub const MIN_PSI_INSTANCES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// Orders up to 4 everywhere.
    Quick,
    /// Orders up to 6 for per-semigroup checks and up to 5 for the sweep.
    Full,
}

impl Profile {
    fn semigroup_bound(self) -> usize {
        match self {
            Profile::Quick => 4,
            Profile::Full => 6,
        }
    }

    fn sweep_bound(self) -> usize {
        match self {
            Profile::Quick => 4,
            Profile::Full => 5,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub profile: Profile,
    /// Cap on ψ per pair and per search kind.
    pub psi_limit: usize,
    /// Extra, unvalidated table appended to the corpus.
    pub inject: Option<(String, CayleyTable)>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { profile: Profile::Full, psi_limit: 8, inject: None }
    }
}

const CORPUS_STATEMENTS: &[(&str, &str)] = &[
    ("breakable-structure", "A in A3(S) => A is a chain of left/right zero chunks, topped by at most one group of order two"),
    ("h-class-idempotent", "e in E(S) => H_{e}(P(S)) = H_e(S)"),
    ("h-class-left-zero", "E left zero, e in E => H_E(P(S)) = {Ea : a in H_e(S)}"),
    ("lift-is-power-iso", "phi: S -> S' isomorphism => A -> phi(A) is an isomorphism P(S) -> P(S')"),
    ("power-iso-consistency", "P(S) isomorphic to P(S') iff S isomorphic to S'"),
    ("psi-coverage", "the sweep exercises enough psi, including one not preserving singletons on a left zero semigroup"),
    ("statement-coverage", "every statement is instantiated by at least one psi"),
    ("table-valid", "every corpus table is associative"),
];

fn corpus_record(tally: Tally, statement: &'static str, instance: &str) -> Record {
    let mut r = tally.into_record(statement, instance);
    if let Some((_, a)) = CORPUS_STATEMENTS.iter().find(|(id, _)| *id == statement) {
        r.anchor = a;
    }
    r
}

/// Full result of a verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<Record>,
    pub psi_count: usize,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.verdict != Verdict::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.verdict == Verdict::Fail)
    }

    /// One JSON object per line, in record order.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    /// Pass/fail counts per statement, sorted by statement id.
    pub fn summary(&self) -> String {
        let mut by_id: BTreeMap<&str, [usize; 4]> = BTreeMap::new();
        for r in &self.records {
            let e = by_id.entry(r.statement).or_default();
            e[match r.verdict {
                Verdict::Pass => 0,
                Verdict::Fail => 1,
                Verdict::Vacuous => 2,
            }] += 1;
            e[3] += r.checked;
        }
        let mut out = String::new();
        writeln!(out, "{:<30} {:>6} {:>6} {:>8} {:>10}", "statement", "pass", "fail", "vacuous", "checked")
            .unwrap();
        for (id, [p, f, v, c]) in &by_id {
            writeln!(out, "{id:<30} {p:>6} {f:>6} {v:>8} {c:>10}").unwrap();
        }
        let fails = self.failures().count();
        writeln!(out, "records: {}, psi: {}, failures: {fails}", self.records.len(), self.psi_count)
            .unwrap();
        out
    }
}

/// Where a ψ came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Source {
    Lift,
    Search,
}

struct PairOutcome {
    records: Vec<Record>,
    psi: usize,
    twisted_left_zero: bool,
}

/// Runs every check over the deterministic corpus.
pub fn run(opts: &VerifyOptions) -> Report {
    let mut members = corpus(CorpusProfile::Full);
    if let Some(extra) = &opts.inject {
        members.push(extra.clone());
    }
    let mut records = Vec::new();
    let mut valid = Vec::new();
    for (name, t) in &members {
        let mut tally = Tally::new();
        let violation = t.associativity_violation();
        tally.check(violation.is_none(), || {
            let (i, j, k) = violation.unwrap();
            format!("({i}*{j})*{k} != {i}*({j}*{k})")
        });
        records.push(corpus_record(tally, "table-valid", name));
        if violation.is_none() && is_completely_regular(t) {
            valid.push((name.as_str(), t));
        }
    }

    let small: Vec<_> =
        valid.iter().filter(|(_, t)| t.order() <= opts.profile.semigroup_bound()).collect();
    let per_semigroup: Vec<Vec<Record>> =
        small.par_iter().map(|(name, t)| semigroup_checks(name, t)).collect();
    records.extend(per_semigroup.into_iter().flatten());

    let sweep: Vec<_> =
        valid.iter().filter(|(_, t)| t.order() <= opts.profile.sweep_bound()).collect();
    let mut pairs = Vec::new();
    for i in 0..sweep.len() {
        for j in i..sweep.len() {
            if sweep[i].1.order() == sweep[j].1.order() {
                pairs.push((sweep[i], sweep[j]));
            }
        }
    }
    let outcomes: Vec<PairOutcome> = pairs
        .par_iter()
        .map(|&(&(n1, t1), &(n2, t2))| pair_checks(n1, t1, n2, t2, opts.psi_limit))
        .collect();
    let psi_count: usize = outcomes.iter().map(|o| o.psi).sum();
    let twisted = outcomes.iter().any(|o| o.twisted_left_zero);
    records.extend(outcomes.into_iter().flat_map(|o| o.records));

    let mut tally = Tally::new();
    tally.check(psi_count >= MIN_PSI_INSTANCES, || format!("only {psi_count} psi"));
    tally.check(twisted, || "no psi moving singletons on a left zero semigroup".into());
    records.push(corpus_record(tally, "psi-coverage", "sweep"));
    let exercised: BTreeSet<&str> = records
        .iter()
        .filter(|r| r.verdict == Verdict::Pass)
        .map(|r| r.statement)
        .collect();
    let mut tally = Tally::new();
    for (id, _) in statement_catalogue() {
        tally.check(exercised.contains(id), || format!("{id} never instantiated"));
    }
    records.push(corpus_record(tally, "statement-coverage", "sweep"));
    Report { records, psi_count }
}

fn semigroup_checks(name: &str, t: &CayleyTable) -> Vec<Record> {
    let s = match Analysis::new(t) {
        Ok(s) => s,
        Err(e) => {
            let mut tally = Tally::new();
            tally.fail(e.to_string());
            return vec![corpus_record(tally, "breakable-structure", name)];
        }
    };
    let p = &s.power;
    let mut structure = Tally::new();
    for a in s.masks().filter(|&a| s.is_a3(a)) {
        let form = structural_form(p, p.subset(a));
        let ok = form.as_ref().is_ok_and(|f| {
            f.check(p) && f.union_mask() == a && f.is_breakable() == s.is_a2(a)
        });
        structure.check(ok, || format!("A = {}: {form:?}", p.subset(a)));
    }
    let mut h_singleton = Tally::new();
    let g = p.green();
    for e in t.idempotents() {
        let got = p.power_h_of_idempotent_singleton(e).map(|v| v.iter().map(|x| x.mask()).collect());
        let expected: Vec<u32> =
            (0..t.order()).filter(|&a| g.hclass[a] == g.hclass[e]).map(|a| 1 << a).collect();
        h_singleton.check(got.as_ref() == Ok(&expected), || format!("e = {e}: {got:?}"));
    }
    let mut h_left_zero = Tally::new();
    for lz in p.left_zero_subsets() {
        let got = p.power_h_of_left_zero_set(lz);
        let expected = p.left_zero_h_class_formula(lz);
        h_left_zero.check(got.is_ok() && got == expected, || format!("E = {lz}: {got:?}"));
    }
    let mut out = crate::globaldet::suite_semigroup_records(&s, name);
    out.push(corpus_record(structure, "breakable-structure", name));
    out.push(corpus_record(h_singleton, "h-class-idempotent", name));
    out.push(corpus_record(h_left_zero, "h-class-left-zero", name));
    out
}

fn pair_checks(n1: &str, t1: &CayleyTable, n2: &str, t2: &CayleyTable, limit: usize) -> PairOutcome {
    let pair = format!("{n1} -> {n2}");
    let mut records = Vec::new();
    let fail = |id: &'static str, msg: String| {
        let mut tally = Tally::new();
        tally.fail(msg);
        corpus_record(tally, id, &pair)
    };
    let (s, t) = match (Analysis::new(t1), Analysis::new(t2)) {
        (Ok(s), Ok(t)) => (s, t),
        (Err(e), _) | (_, Err(e)) => {
            records.push(fail("power-iso-consistency", e.to_string()));
            return PairOutcome { records, psi: 0, twisted_left_zero: false };
        }
    };
    let (p1, p2) = match (
        power_table(t1, DEFAULT_POWER_TABLE_BOUND),
        power_table(t2, DEFAULT_POWER_TABLE_BOUND),
    ) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            records.push(fail("power-iso-consistency", e.to_string()));
            return PairOutcome { records, psi: 0, twisted_left_zero: false };
        }
    };
    let phis = find_isomorphisms(t1, t2, limit);
    let raw = find_power_isomorphisms(t1, t2, limit);
    let (phis, raw) = match (phis, raw) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            records.push(fail("power-iso-consistency", e.to_string()));
            return PairOutcome { records, psi: 0, twisted_left_zero: false };
        }
    };
    let mut consistency = Tally::new();
    consistency.check(phis.is_empty() == raw.is_empty(), || {
        format!("{} element isomorphisms, {} power isomorphisms", phis.len(), raw.len())
    });
    records.push(corpus_record(consistency, "power-iso-consistency", &pair));

    let mut lifted = Tally::new();
    let mut candidates: Vec<(Source, IsoMap)> = Vec::new();
    for phi in &phis {
        match lift(phi).and_then(|psi| psi.verify(&p1, &p2)) {
            Ok(psi) => {
                lifted.check(true, String::new);
                candidates.push((Source::Lift, psi));
            }
            Err(e) => lifted.fail(format!("phi = {:?}: {e}", phi.forward)),
        }
    }
    if !phis.is_empty() {
        records.push(corpus_record(lifted, "lift-is-power-iso", &pair));
    }
    candidates.extend(raw.into_iter().map(|psi| (Source::Search, psi)));
    let mut seen = BTreeSet::new();
    candidates.retain(|(_, psi)| seen.insert(psi.forward.clone()));

    let left_zero = s.decomposition.len() == 1
        && s.decomposition.classification[0] == ComponentKind::LeftZero
        && s.n() > 1;
    let mut twisted_left_zero = false;
    for (k, (source, psi)) in candidates.iter().enumerate() {
        twisted_left_zero |= left_zero && !psi.preserves_singletons();
        let tag = match source {
            Source::Lift => "lift",
            Source::Search => "search",
        };
        let instance = format!("{pair} psi#{k} ({tag})");
        match verify_statement_suite(&s, &t, psi, &instance) {
            Ok(rs) => records.extend(rs),
            Err(e) => records.push(fail("eta-isomorphism", format!("{instance}: {e}"))),
        }
    }
    PairOutcome { records, psi: candidates.len(), twisted_left_zero }
}
