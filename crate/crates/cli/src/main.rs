use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crglobal::breakable::{self, a2_characterization, a3_characterization, structural_form};
use crglobal::families::{corpus, CorpusProfile};
use crglobal::format::{parse_table_file, read_table, TableFile};
use crglobal::globaldet::{construct_eta, verify_statement_suite, Analysis, Verdict};
use crglobal::green::{green_relations, is_completely_regular, is_left_zero, is_right_zero, GreenData};
use crglobal::iso::find_power_isomorphisms;
use crglobal::order::natural_order;
use crglobal::power::PowerSemigroup;
use crglobal::structure::decompose_with;
use crglobal::table::CayleyTable;
use crglobal::verify::{self, Profile, VerifyOptions};

const EXIT_NO_ISO: u8 = 1;
const EXIT_OPERATIONAL: u8 = 2;
const EXIT_FALSIFIED: u8 = 3;

/// Environment override for the default order bound.
const MAX_ORDER_ENV: &str = "CRGLOBAL_MAX_ORDER";
/// Path of an unvalidated table appended to the `verify` corpus.
const INJECT_ENV: &str = "CRGLOBAL_INJECT_TABLE";

#[derive(Parser)]
#[command(name = "crglobal", version, about = "Completely regular semigroups and their power semigroups")]
struct Cli {
    /// Reserved; every command is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Green's relations, regularity, and the semilattice decomposition.
    Analyze { path: PathBuf },
    /// Breakable subsemigroups with their chain forms.
    Breakable {
        path: PathBuf,
        /// Largest accepted order [default: 12]
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Search isomorphisms of power semigroups and rebuild element isomorphisms.
    Globaliso {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = 8)]
        limit: usize,
        /// Write every constructed element isomorphism to this file as JSON.
        #[arg(long)]
        emit_eta: Option<PathBuf>,
        /// Largest accepted order [default: 5]
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Run every check over the built-in corpus.
    Verify {
        #[arg(long, value_enum, default_value_t = ProfileArg::Full)]
        profile: ProfileArg,
        /// Write the JSON-lines report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Write every corpus table as JSON into a directory.
    ExportCorpus { dir: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze { path } => analyze(&path),
        Command::Breakable { path, max_order } => {
            max_order_or_default(max_order, breakable::DEFAULT_SCAN_BOUND)
                .and_then(|bound| breakable_cmd(&path, bound))
        }
        Command::Globaliso { left, right, limit, emit_eta, max_order } => {
            max_order_or_default(max_order, 5)
                .and_then(|bound| globaliso(&left, &right, limit, emit_eta.as_deref(), bound))
        }
        Command::Verify { profile, report } => verify_cmd(profile, report.as_deref()),
        Command::ExportCorpus { dir } => export_corpus(&dir),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_OPERATIONAL)
        }
    }
}

fn max_order_or_default(flag: Option<usize>, default: usize) -> Result<usize> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(MAX_ORDER_ENV) {
        Ok(v) => v.trim().parse().with_context(|| format!("{MAX_ORDER_ENV}={v:?}")),
        Err(_) => Ok(default),
    }
}

fn load(path: &Path) -> Result<CayleyTable> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (_, table) = read_table(&text).with_context(|| format!("loading {}", path.display()))?;
    Ok(table)
}

fn class_profile(classes: &[usize]) -> String {
    let count = GreenData::class_count(classes);
    let mut sizes: Vec<usize> =
        (0..count).map(|c| classes.iter().filter(|&&x| x == c).count()).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    format!("{count} classes, sizes {sizes:?}")
}

fn analyze(path: &Path) -> Result<u8> {
    let t = load(path)?;
    let g = green_relations(&t);
    println!("order: {}", t.order());
    println!("idempotents: {:?}", t.idempotents());
    println!("L: {}", class_profile(&g.lclass));
    println!("R: {}", class_profile(&g.rclass));
    println!("H: {}", class_profile(&g.hclass));
    println!("D: {}", class_profile(&g.dclass));
    let regular = is_completely_regular(&t);
    println!("completely regular: {}", yes_no(regular));
    if !regular {
        println!("completely simple: no");
        return Ok(0);
    }
    let d = decompose_with(&t, &g)?;
    println!("completely simple: {}", yes_no(d.len() == 1));
    if is_left_zero(&t) {
        println!("left zero, |Y|={}", d.len());
    } else if is_right_zero(&t) {
        println!("right zero, |Y|={}", d.len());
    } else {
        println!("|Y|={}", d.len());
    }
    for (alpha, members) in d.components.iter().enumerate() {
        let labels: Vec<String> = members.iter().map(|&a| t.label(a)).collect();
        println!("S_{alpha}: {:?} {{{}}}", d.classification[alpha], labels.join(","));
    }
    println!("Y: {:?}", d.semilattice.rows());
    let order = natural_order(&t, &t.idempotents());
    println!("maximal: {:?}", order.maximal_elements());
    Ok(0)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn breakable_cmd(path: &Path, bound: usize) -> Result<u8> {
    let t = load(path)?;
    if t.order() > bound {
        bail!("order {} exceeds the bound {bound}", t.order());
    }
    if !is_completely_regular(&t) {
        bail!("not completely regular");
    }
    let p = PowerSemigroup::new(&t)?;
    let a3 = breakable::enumerate_a3(&p)?;
    let a2 = breakable::enumerate_a2(&p)?;
    let a2bar = breakable::enumerate_a2bar(&p)?;
    println!("A3: {} members", a3.len());
    println!("A2: {} members", a2.len());
    println!("A2bar: {} members", a2bar.len());
    let mut consistent = true;
    for a in &a3 {
        let form = structural_form(&p, *a)?;
        let chunks: Vec<String> =
            form.chain.iter().zip(&form.kinds).map(|(c, k)| format!("{k:?}{c}")).collect();
        let in_a2 = a2.contains(a);
        let c3 = a3_characterization(&p, *a)?.holds();
        let c2 = a2_characterization(&p, *a)?.holds();
        consistent &= c3 && c2 == in_a2 && form.is_breakable() == in_a2;
        let tag = if a2bar.contains(a) {
            "A2bar"
        } else if in_a2 {
            "A2"
        } else {
            "A3"
        };
        println!("{a} {tag}: {}", chunks.join(" < "));
    }
    let ep = p.enumerate_ep()?;
    for a in ep.iter().filter(|a| !a3.contains(a)) {
        consistent &= !a3_characterization(&p, *a)?.holds();
    }
    println!("characterizations: {}", if consistent { "consistent" } else { "INCONSISTENT" });
    Ok(if consistent { 0 } else { EXIT_FALSIFIED })
}

fn globaliso(left: &Path, right: &Path, limit: usize, emit: Option<&Path>, bound: usize) -> Result<u8> {
    let (s, t) = (load(left)?, load(right)?);
    for x in [&s, &t] {
        if x.order() > bound {
            bail!("order {} exceeds the bound {bound}", x.order());
        }
        if !is_completely_regular(x) {
            bail!("not completely regular");
        }
    }
    if s.order() != t.order() {
        println!("no isomorphism: orders {} and {} differ", s.order(), t.order());
        return Ok(EXIT_NO_ISO);
    }
    let (sa, ta) = (Analysis::new(&s)?, Analysis::new(&t)?);
    let psis = find_power_isomorphisms(&s, &t, limit)?;
    if psis.is_empty() {
        println!("no isomorphism between the power semigroups");
        return Ok(EXIT_NO_ISO);
    }
    let mut failed = false;
    let mut etas = Vec::new();
    for (k, psi) in psis.iter().enumerate() {
        let records = verify_statement_suite(&sa, &ta, psi, &format!("psi#{k}"))?;
        let fails: Vec<_> = records.iter().filter(|r| r.verdict == Verdict::Fail).collect();
        let eta = construct_eta(psi, &sa, &ta);
        let moves = if psi.preserves_singletons() { "" } else { ", moves singletons" };
        match &eta {
            Ok(eta) => println!("psi#{k}{moves}: eta = {:?}, {} failures", eta.forward, fails.len()),
            Err(e) => println!("psi#{k}{moves}: eta failed: {e}"),
        }
        for r in &fails {
            println!("  FAIL {}: {}", r.statement, r.witness.as_deref().unwrap_or(""));
        }
        failed |= !fails.is_empty() || eta.is_err();
        if let Ok(eta) = eta {
            etas.push(json!({ "psi": k, "eta": eta.forward }));
        }
    }
    if let Some(path) = emit {
        let text = serde_json::to_string_pretty(&etas)?;
        fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    println!("{} psi checked", psis.len());
    Ok(if failed { EXIT_FALSIFIED } else { 0 })
}

fn verify_cmd(profile: ProfileArg, report_path: Option<&Path>) -> Result<u8> {
    let mut opts = VerifyOptions {
        profile: match profile {
            ProfileArg::Quick => Profile::Quick,
            ProfileArg::Full => Profile::Full,
        },
        ..Default::default()
    };
    if let Ok(path) = std::env::var(INJECT_ENV) {
        let text = fs::read_to_string(&path).with_context(|| format!("reading {path}"))?;
        let file = parse_table_file(&text)?;
        let table = CayleyTable::grid(&file.table)?;
        opts.inject = Some((file.name.unwrap_or_else(|| "injected".into()), table));
    }
    let report = verify::run(&opts);
    let lines = report.to_json_lines();
    match report_path {
        Some(path) => {
            fs::write(path, lines).with_context(|| format!("writing {}", path.display()))?;
            print!("{}", report.summary());
        }
        None => {
            print!("{lines}");
            eprint!("{}", report.summary());
        }
    }
    for r in report.failures() {
        eprintln!("FAIL {} [{}]: {}", r.statement, r.instance, r.witness.as_deref().unwrap_or(""));
    }
    Ok(if report.passed() { 0 } else { EXIT_FALSIFIED })
}

fn export_corpus(dir: &Path) -> Result<u8> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let members = corpus(CorpusProfile::Full);
    for (name, t) in &members {
        let file = TableFile::from_table(Some(name), t);
        let path = dir.join(format!("{name}.json"));
        fs::write(&path, file.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    println!("wrote {} tables to {}", members.len(), dir.display());
    Ok(0)
}
