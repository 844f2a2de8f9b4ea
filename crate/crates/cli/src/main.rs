use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use simcore::abacus::{build_l, is_core_beta_by_structure, to_abacus, CoreTriple};
use simcore::enumerate::{
    enumerate_oracle, enumerate_pair_ideals, enumerate_structural_capped, enumerate_subset_filter,
    grid, verify_theorem_capped, EnumReport, CAP_ENV, DEFAULT_CAP, MAX_CAP,
};
use simcore::formulas::{l_cardinality, max_size_formula};
use simcore::gbs::{build_family_profile, class_membership, is_generalized_beta_set, profile_of, FamilyKind};
use simcore::partition::is_simultaneous_core;
use simcore::{BetaSet, Error, Partition};

/// Simultaneous (s, ms-1, ms+1)-core partitions: beta-sets, abacus diagrams,
/// generalized beta-sets, closed forms and exhaustive enumeration.
#[derive(Parser)]
#[command(name = "simcore", version)]
struct Cli {
    /// Print JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON result to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads for enumeration (default: available cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Largest |L_m(s)| the structural enumerator accepts.
    #[arg(long, global = true, env = CAP_ENV, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hook lengths of every box.
    Hooks { parts: Vec<u64> },
    /// Conjugate partition.
    Conjugate { parts: Vec<u64> },
    /// First-column hook lengths.
    Beta { parts: Vec<u64> },
    /// Partition with the given beta-set.
    Unbeta {
        #[arg(num_args = 0..)]
        elements: Vec<IntList>,
    },
    /// Size of the partition with the given beta-set.
    Size {
        beta: IntList,
    },
    /// Whether a partition is a core for every listed modulus.
    Iscore {
        #[arg(long)]
        moduli: IntList,
        parts: Vec<u64>,
    },
    /// Text abacus diagram of a beta-set.
    Abacus {
        #[arg(long)]
        modulus: u64,
        /// Draw at least this many rows.
        #[arg(long, default_value_t = 1)]
        rows: u64,
        beta: IntList,
    },
    /// The set L_m(s).
    #[command(name = "L")]
    L(Triple),
    /// Four-condition membership test on the ms-abacus.
    CheckStructural {
        #[command(flatten)]
        triple: Triple,
        beta: IntList,
    },
    /// Generalized beta-set test and class labels.
    GbsCheck {
        #[command(flatten)]
        triple: Triple,
        beta: IntList,
    },
    /// Block profile (t; n; a) of a block-consecutive set.
    Profile {
        #[command(flatten)]
        triple: Triple,
        beta: IntList,
    },
    /// Member of one of the S, T, P, Pprime, Q families.
    Family {
        #[arg(long)]
        kind: FamilyKind,
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        triple: Triple,
    },
    /// All (s, ms-1, ms+1)-cores.
    Enumerate {
        #[command(flatten)]
        triple: Triple,
        #[arg(long, value_enum, default_value_t = Engine::Structural)]
        engine: Engine,
        /// Include every enumerated beta-set.
        #[arg(long)]
        all: bool,
    },
    /// All (a, b)-cores for a coprime pair.
    Pair {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        all: bool,
    },
    /// Closed-form maximum size.
    Formula(Triple),
    /// Full verification record at one point.
    Verify(Triple),
    /// Verification records over a grid of points.
    VerifyGrid {
        #[arg(long, default_value_t = 2)]
        smin: u64,
        #[arg(long)]
        smax: u64,
        #[arg(long, default_value_t = 1)]
        mmin: u64,
        #[arg(long)]
        mmax: u64,
    },
}

#[derive(clap::Args, Clone, Copy)]
struct Triple {
    #[arg(long)]
    s: u64,
    #[arg(long)]
    m: u64,
}

impl Triple {
    fn core(self) -> Result<CoreTriple, Error> {
        CoreTriple::new(self.s, self.m)
    }
}

#[derive(ValueEnum, Clone, Copy)]
enum Engine {
    Structural,
    Oracle,
    Filter,
}

/// Comma-separated non-negative integers; the empty string is the empty list.
#[derive(Clone, Debug)]
struct IntList(Vec<u64>);

impl std::str::FromStr for IntList {
    type Err = String;

    fn from_str(raw: &str) -> Result<Self, String> {
        raw.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u64>().map_err(|e| format!("{t:?}: {e}")))
            .collect::<Result<_, _>>()
            .map(IntList)
    }
}

/// A command's result: JSON for machines, text for people, and whether it
/// counts as success.
struct Output {
    json: Value,
    text: String,
    ok: bool,
}

impl Output {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Output { json, text: text.into(), ok: true }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn compact(v: &Value) -> String {
    v.to_string()
}

fn beta(raw: &IntList) -> Result<BetaSet, Error> {
    BetaSet::new(raw.0.clone())
}

fn report_text(r: &EnumReport) -> String {
    let mut out = format!(
        "count: {}\nmax size: {}\nmaximizers: {}\n",
        r.count(),
        r.max_size(),
        r.argmax().len()
    );
    for b in r.argmax() {
        out.push_str(&format!("  {} -> {}\n", b, b.to_partition()));
    }
    if let Some(all) = r.all() {
        out.push_str("all:\n");
        for b in all {
            out.push_str(&format!("  {b}\n"));
        }
    }
    out
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let cap = cli.cap.min(MAX_CAP);
    let out = match &cli.command {
        Command::Hooks { parts } => {
            let grid = Partition::new(parts.clone())?.hook_grid();
            let text = grid
                .rows
                .iter()
                .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("\n");
            Output::new(to_json(&grid.rows), text)
        }
        Command::Conjugate { parts } => {
            let p = Partition::new(parts.clone())?.conjugate();
            let j = to_json(&p);
            Output::new(j.clone(), compact(&j))
        }
        Command::Beta { parts } => {
            let b = Partition::new(parts.clone())?.beta_set();
            let j = to_json(&b);
            Output::new(j.clone(), compact(&j))
        }
        Command::Unbeta { elements } => {
            let flat: Vec<u64> = elements.iter().flat_map(|l| l.0.iter().copied()).collect();
            let b = BetaSet::new(flat)?;
            let j = to_json(&b.to_partition());
            Output::new(j.clone(), compact(&j))
        }
        Command::Size { beta: raw } => {
            let size = beta(raw)?.f()?;
            Output::new(json!(size), size.to_string())
        }
        Command::Iscore { moduli, parts } => {
            let p = Partition::new(parts.clone())?;
            let b = p.beta_set();
            let verdict = is_simultaneous_core(&b, &moduli.0)?;
            let per: Vec<Value> = moduli
                .0
                .iter()
                .map(|&q| json!({"modulus": q, "core": b.is_s_core(q)}))
                .collect();
            Output::new(
                json!({"partition": p, "moduli": moduli.0, "core": verdict, "per_modulus": per}),
                verdict.to_string(),
            )
        }
        Command::Abacus { modulus, rows, beta: raw } => {
            let d = to_abacus(&beta(raw)?, *modulus)?;
            let text = d.render(*rows);
            let mut j = to_json(&d);
            j["text"] = json!(text);
            Output::new(j, text.trim_end())
        }
        Command::L(t) => {
            let ct = t.core()?;
            let l = build_l(&ct);
            let p = l.to_partition();
            let text = format!(
                "{l}\npartition: {p}\nsize: {}\n{}",
                l.f()?,
                to_abacus(&l, ct.ms())?.render(1).trim_end()
            );
            Output::new(
                json!({
                    "s": ct.s(), "m": ct.m(), "beta": l, "partition": p,
                    "size": l.f()?, "cardinality": l_cardinality(&ct),
                }),
                text,
            )
        }
        Command::CheckStructural { triple, beta: raw } => {
            let ct = triple.core()?;
            let verdict = is_core_beta_by_structure(&beta(raw)?, &ct);
            Output::new(json!(verdict), verdict.to_string())
        }
        Command::GbsCheck { triple, beta: raw } => {
            let ct = triple.core()?;
            let b = beta(raw)?;
            let verdict = is_generalized_beta_set(&b, &ct);
            let labels = class_membership(&b, &ct).labels();
            Output::new(
                json!({"generalized_beta_set": verdict, "classes": labels}),
                format!("{verdict}\nclasses: {}", labels.join(" ")),
            )
        }
        Command::Profile { triple, beta: raw } => {
            let ct = triple.core()?;
            let p = profile_of(&beta(raw)?, &ct)?;
            let j = to_json(&p);
            Output::new(j.clone(), compact(&j))
        }
        Command::Family { kind, k, triple } => {
            let ct = triple.core()?;
            let p = build_family_profile(*kind, *k, &ct)?;
            let b = p.decode();
            let size = b.f()?;
            Output::new(
                json!({"kind": kind.name(), "k": k, "beta": b, "profile": p, "size": size}),
                format!("{b}\nsize: {size}"),
            )
        }
        Command::Enumerate { triple, engine, all } => {
            let ct = triple.core()?;
            let r = match engine {
                Engine::Structural => enumerate_structural_capped(&ct, *all, cap)?,
                Engine::Oracle => enumerate_oracle(&ct, ct.ms(), *all)?,
                Engine::Filter => enumerate_subset_filter(&ct, *all)?,
            };
            Output::new(to_json(&r), report_text(&r))
        }
        Command::Pair { a, b, all } => {
            let r = enumerate_pair_ideals(*a, *b, *all)?;
            let t = &r.tally;
            Output::new(
                to_json(&r),
                format!("count: {}\nmax size: {}\nsize sum: {}", t.count, t.max_size, t.size_sum),
            )
        }
        Command::Formula(t) => {
            let v = max_size_formula(&t.core()?);
            Output::new(to_json(&v), v.to_string())
        }
        Command::Verify(t) => {
            let rec = verify_theorem_capped(&t.core()?, cap)?;
            let text = verify_text(&rec);
            Output { ok: rec.passed, json: to_json(&rec), text }
        }
        Command::VerifyGrid { smin, smax, mmin, mmax } => {
            let points = grid(*smin, *smax, *mmin, *mmax, cap);
            let mut records = Vec::new();
            let mut text = String::new();
            for ct in &points {
                let rec = verify_theorem_capped(ct, cap)?;
                text.push_str(&format!(
                    "{} s={} m={} max={} maximizers={}\n",
                    if rec.passed { "PASS" } else { "FAIL" },
                    rec.s,
                    rec.m,
                    rec.max_size,
                    rec.argmax.len()
                ));
                records.push(rec);
            }
            let failed = records.iter().filter(|r| !r.passed).count();
            text.push_str(&format!("{} points, {failed} failed", records.len()));
            Output {
                ok: failed == 0,
                json: json!({"points": records.len(), "failed": failed, "records": records}),
                text,
            }
        }
    };
    Ok(out)
}

fn verify_text(rec: &simcore::VerificationRecord) -> String {
    let mut out = format!(
        "s={} m={} count={} max={} formula={}\n",
        rec.s, rec.m, rec.count, rec.max_size, rec.formula
    );
    for p in &rec.argmax_partitions {
        out.push_str(&format!("  maximizer {p}\n"));
    }
    for c in &rec.checks {
        let status = serde_json::to_value(c.status).expect("serializable");
        out.push_str(&format!("  {:<32} {}\n", c.name, status.as_str().unwrap_or("?")));
    }
    out.push_str(if rec.passed { "passed" } else { "failed" });
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        // only fails if a global pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text.trim_end());
            }
            if let Some(path) = &cli.out {
                let body = serde_json::to_string_pretty(&out.json).expect("serializable");
                if let Err(e) = std::fs::write(path, body + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn int_lists() {
        assert_eq!("1, 3,5".parse::<IntList>().unwrap().0, vec![1, 3, 5]);
        assert!("".parse::<IntList>().unwrap().0.is_empty());
        assert!("1,-2".parse::<IntList>().is_err());
    }
}
