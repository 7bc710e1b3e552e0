mod report;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use multicross::census::{self, CensusResult, CensusShard, InvariantTable};
use multicross::diagram::{two_crossing_corpus, MultiCrossingDiagram};
use multicross::skein::{self, CrossingType};
use multicross::splits::{self, Split};
use multicross::{laws, LaurentPoly};

use report::{Checkpoint, Format, Report};

#[derive(Parser)]
#[command(name = "multicross", version, about = "Brackets, skein relations and crossing spectra for multi-crossing knot projections")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    workers: Option<u16>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Operations on non-crossing matchings.
    #[command(subcommand)]
    Split(SplitCmd),
    /// Skein relations of crossing types.
    #[command(subcommand)]
    Skein(SkeinCmd),
    /// Kauffman bracket of a diagram file.
    Bracket {
        #[arg(long)]
        diagram: PathBuf,
        /// Also compute it from double crossings only and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Jones polynomial (in A, t = A^-4) of a knot diagram.
    Jones {
        #[arg(long)]
        diagram: PathBuf,
        /// Identify the knot against this invariant table.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Check span inequalities and extremal states.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Connected sum of two knot diagrams.
    Compose {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value_t = 0)]
        edge_a: usize,
        #[arg(long, default_value_t = 0)]
        edge_b: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Double the order of every crossing of a knot diagram.
    Double {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long, default_value_t = 0)]
        basepoint: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Identify every knot with a single n-crossing diagram.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Write one witness diagram per knot into this directory.
        #[arg(long)]
        witnesses: Option<PathBuf>,
    },
    /// Least single-crossing order of each table knot.
    Spectrum {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long)]
        table: PathBuf,
    },
    /// Invariant table maintenance.
    #[command(subcommand)]
    Table(TableCmd),
}

#[derive(Subcommand)]
enum SplitCmd {
    /// Split-move distance between two splits.
    Dist(SplitPair),
    /// Number of loops formed by gluing two splits.
    Closure(SplitPair),
    /// All splits with n arcs.
    Enum {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
struct SplitPair {
    /// Written as (0,1)(2,3)...
    #[arg(long)]
    s: Split,
    #[arg(long)]
    t: Split,
}

#[derive(Subcommand)]
enum SkeinCmd {
    /// The skein relation of one crossing type.
    Gen {
        #[arg(long = "type")]
        crossing: CrossingType,
    },
    /// Number of crossing types of order n realizing each width.
    Widths {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Run the split and skein law checks at order n.
    Laws {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Every span inequality that applies to the diagram.
    Bounds {
        #[arg(long)]
        diagram: PathBuf,
    },
    /// Extreme summand exponents and the all-high / all-low states attaining them.
    States {
        #[arg(long)]
        diagram: PathBuf,
    },
    /// Span inequalities over a seeded sample of two-crossing diagrams.
    Corpus {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
}

#[derive(Subcommand)]
enum TableCmd {
    /// Compute Jones keys for a fixture directory and write the table.
    Build {
        #[arg(long)]
        fixtures: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new().num_threads(w as usize).build_global().expect("thread pool starts once");
    }
    let command_line = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    match run(&cli.command) {
        Ok((payload, discrepancies)) => {
            let report = Report::new(command_line, payload, discrepancies, start.elapsed().as_millis() as u64);
            print!("{}", report.emit(cli.format));
            std::process::exit(report.exit_code());
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

type Outcome = anyhow::Result<(Value, Vec<String>)>;

fn load_diagram(path: &Path) -> anyhow::Result<MultiCrossingDiagram> {
    MultiCrossingDiagram::load(path).with_context(|| format!("loading diagram {}", path.display()))
}

fn load_table(path: &Path) -> anyhow::Result<InvariantTable> {
    InvariantTable::load(path).with_context(|| format!("loading table {}", path.display()))
}

fn write_diagram(path: &Path, d: &MultiCrossingDiagram) -> anyhow::Result<()> {
    std::fs::write(path, d.to_json() + "\n").with_context(|| format!("writing {}", path.display()))
}

fn note_resumed(ckpt: &Checkpoint, total: usize) {
    if ckpt.len() > 0 {
        eprintln!("resuming: {} of {total} shards already done", ckpt.len());
    }
}

fn poly(p: &LaurentPoly) -> Value {
    json!(p.to_string())
}

fn run(command: &Command) -> Outcome {
    match command {
        Command::Split(cmd) => run_split(cmd),
        Command::Skein(cmd) => run_skein(cmd),
        Command::Bracket { diagram, oracle } => {
            let d = load_diagram(diagram)?;
            let b = d.bracket()?;
            let mut payload = json!({"bracket": poly(&b), "span": b.span().ok()});
            let mut problems = Vec::new();
            if *oracle {
                let o = d.bracket_oracle()?;
                payload["oracle"] = poly(&o);
                if o != b {
                    problems.push(format!("oracle disagrees on {}", d.to_json()));
                }
            }
            Ok((payload, problems))
        }
        Command::Jones { diagram, table } => {
            let d = load_diagram(diagram)?;
            let j = d.jones()?;
            let mut payload = json!({"jones": poly(&j), "writhe": d.writhe(&Default::default())});
            if let Some(path) = table {
                let id = load_table(path)?.identify(&j);
                payload["knot"] = match id {
                    Some(id) => json!({"name": id.display_name(), "chirality": id.chirality}),
                    None => json!("unknown"),
                };
            }
            Ok((payload, vec![]))
        }
        Command::Verify(cmd) => run_verify(cmd),
        Command::Compose { a, b, edge_a, edge_b, out } => {
            let (da, db) = (load_diagram(a)?, load_diagram(b)?);
            let sum = da.connect_sum(*edge_a, &db, *edge_b)?;
            let (ba, bb, bs) = (da.bracket()?, db.bracket()?, sum.bracket()?);
            let mut problems = Vec::new();
            if &ba * &bb != bs {
                problems.push("bracket of the sum is not the product of brackets".to_string());
            }
            finish_diagram(sum, out.as_deref(), json!({"bracket": poly(&bs)}), problems)
        }
        Command::Double { diagram, basepoint, out } => {
            let d = load_diagram(diagram)?;
            let doubled = d.double_order(*basepoint)?;
            let (before, after) = (d.jones()?, doubled.jones()?);
            let mut problems = Vec::new();
            if before != after {
                problems.push(format!("Jones changed from {before} to {after}"));
            }
            finish_diagram(doubled, out.as_deref(), json!({"jones": poly(&after)}), problems)
        }
        Command::Census { n, table, checkpoint, witnesses } => run_census(*n, table, checkpoint.as_deref(), witnesses.as_deref()),
        Command::Spectrum { max_n, table } => {
            let table = load_table(table)?;
            if !(census::MIN_ORDER..=census::MAX_ORDER).contains(max_n) {
                bail!("--max-n must lie in {}..={}", census::MIN_ORDER, census::MAX_ORDER);
            }
            let results: Vec<CensusResult> =
                (census::MIN_ORDER..=*max_n).map(|n| census::census(n, &table)).collect::<Result<_, _>>()?;
            let report = census::spectrum_report(&table, &results);
            let rows: BTreeMap<String, Value> = report
                .rows
                .iter()
                .map(|r| (r.name.clone(), json!(r.minimal_order)))
                .collect();
            Ok((json!({"max_n": max_n, "minimal_single_crossing_order": rows}), report.doubling_gaps))
        }
        Command::Table(TableCmd::Build { fixtures, out }) => {
            let loaded = census::load_fixtures(fixtures)?;
            match census::build_invariant_table(&loaded) {
                Ok(table) => {
                    table.save(out)?;
                    Ok((json!({"entries": table.len(), "out": out.display().to_string()}), vec![]))
                }
                Err(e @ census::CensusError::Collision { .. }) => Ok((json!({"entries": 0}), vec![e.to_string()])),
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn finish_diagram(d: MultiCrossingDiagram, out: Option<&Path>, mut payload: Value, problems: Vec<String>) -> Outcome {
    payload["crossings"] = json!(d.crossings.len());
    payload["orders"] = json!(d.order_counts());
    match out {
        Some(path) => {
            write_diagram(path, &d)?;
            payload["out"] = json!(path.display().to_string());
        }
        None => payload["diagram"] = serde_json::to_value(&d)?,
    }
    Ok((payload, problems))
}

fn run_split(cmd: &SplitCmd) -> Outcome {
    match cmd {
        SplitCmd::Dist(SplitPair { s, t }) => Ok((json!({"distance": splits::split_distance(s, t)?}), vec![])),
        SplitCmd::Closure(SplitPair { s, t }) => Ok((json!({"closure": splits::closure_count(s, t)?}), vec![])),
        SplitCmd::Enum { n } => {
            let all = splits::enumerate_splits(*n)?;
            Ok((json!({"n": n, "count": all.len(), "splits": all.iter().map(|s| s.to_string()).collect::<Vec<_>>()}), vec![]))
        }
    }
}

fn run_skein(cmd: &SkeinCmd) -> Outcome {
    match cmd {
        SkeinCmd::Gen { crossing } => {
            let r = skein::build_relation(crossing)?;
            let histogram: BTreeMap<String, u64> = r.histogram().into_iter().map(|(p, m)| (p.to_string(), m)).collect();
            Ok((
                json!({
                    "type": crossing.to_string(),
                    "width": r.width(),
                    "highest": r.highest(),
                    "lowest": r.lowest(),
                    "support": r.support().len(),
                    "histogram": histogram,
                    "terms": r.to_text().lines().collect::<Vec<_>>(),
                }),
                vec![],
            ))
        }
        SkeinCmd::Widths { n, checkpoint } => {
            let job = format!("skein widths --n {n}");
            let types = skein::all_types(*n)?;
            let ckpt = Checkpoint::open(checkpoint.as_deref(), &job)?;
            note_resumed(&ckpt, types.len());
            let ckpt = Mutex::new(ckpt);
            let widths: Vec<u32> = types
                .par_iter()
                .map(|t| -> anyhow::Result<u32> {
                    let key = t.to_string();
                    if let Some(w) = ckpt.lock().expect("checkpoint lock").get::<u32>(&key) {
                        return Ok(w);
                    }
                    let w = skein::relation_width(t)?;
                    ckpt.lock().expect("checkpoint lock").put(&job, &key, &w)?;
                    Ok(w)
                })
                .collect::<anyhow::Result<_>>()?;
            let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
            for w in &widths {
                *counts.entry(*w).or_insert(0) += 1;
            }
            let bound = (n * n / 2) as u32;
            let problems = types
                .iter()
                .zip(&widths)
                .filter(|(_, w)| **w > bound)
                .map(|(t, w)| format!("type {t} has width {w} > {bound}"))
                .collect();
            Ok((json!({"n": n, "types": types.len(), "widths": counts}), problems))
        }
        SkeinCmd::Laws { n } => {
            let reports = laws::run_all(*n)?;
            let mut problems = Vec::new();
            let mut payload = serde_json::Map::new();
            for r in &reports {
                payload.insert(r.law.clone(), json!({"checked": r.checked, "violations": r.violation_count}));
                for v in &r.violations {
                    problems.push(format!("{} (n={}): {v}", r.law, r.n));
                }
            }
            Ok((Value::Object(payload), problems))
        }
    }
}

fn run_verify(cmd: &VerifyCmd) -> Outcome {
    match cmd {
        VerifyCmd::Bounds { diagram } => {
            let d = load_diagram(diagram)?;
            let report = d.verify_span_bound()?;
            let problems = bound_failures(&d, &report);
            Ok((serde_json::to_value(&report)?, problems))
        }
        VerifyCmd::States { diagram } => {
            let d = load_diagram(diagram)?;
            let ext = d.extremal_states()?;
            let mut problems = Vec::new();
            if ext.size_smax.is_none() {
                problems.push(format!("no all-high state attains M = {} in {}", ext.top, d.to_json()));
            }
            if ext.size_smin.is_none() {
                problems.push(format!("no all-low state attains m = {} in {}", ext.bottom, d.to_json()));
            }
            Ok((serde_json::to_value(&ext)?, problems))
        }
        VerifyCmd::Corpus { seed, count, max_n } => {
            if !(3..=5).contains(max_n) {
                bail!("--max-n must lie in 3..=5");
            }
            let corpus = two_crossing_corpus(*seed, *count, 3..=*max_n)?;
            let results: Vec<Vec<String>> = corpus
                .par_iter()
                .map(|d| d.verify_span_bound().map(|r| bound_failures(d, &r)))
                .collect::<Result<_, _>>()?;
            let problems: Vec<String> = results.into_iter().flatten().collect();
            Ok((json!({"seed": seed, "diagrams": corpus.len(), "failing": problems.len()}), problems))
        }
    }
}

fn bound_failures(d: &MultiCrossingDiagram, report: &multicross::diagram::SpanReport) -> Vec<String> {
    let mut out: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.holds)
        .map(|c| format!("{}: {} > {} in {}", c.name, c.value, c.bound, d.to_json()))
        .collect();
    if report.size_smax.is_none() || report.size_smin.is_none() {
        out.push(format!("no all-high or all-low extreme state in {}", d.to_json()));
    }
    out
}

fn run_census(n: usize, table: &Path, checkpoint: Option<&Path>, witnesses: Option<&Path>) -> Outcome {
    let table = load_table(table)?;
    let types = census::census_types(n)?;
    let exteriors = census::knot_exteriors(n)?;
    let per_type = splits::enumerate_splits(n)?.len();
    let job = format!("census --n {n}");
    let ckpt = Checkpoint::open(checkpoint, &job)?;
    note_resumed(&ckpt, types.len());
    let ckpt = Mutex::new(ckpt);
    let shards: Vec<CensusShard> = types
        .par_iter()
        .map(|t| -> anyhow::Result<CensusShard> {
            let key = t.to_string();
            if let Some(s) = ckpt.lock().expect("checkpoint lock").get::<CensusShard>(&key) {
                return Ok(s);
            }
            let shard = census::census_shard(t, &exteriors, per_type, &table)?;
            ckpt.lock().expect("checkpoint lock").put(&job, &key, &shard)?;
            Ok(shard)
        })
        .collect::<anyhow::Result<_>>()?;
    let result = CensusResult::merge(n, shards);
    let problems = result.reverify(&table);
    if let Some(dir) = witnesses {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for f in &result.found {
            write_diagram(&dir.join(format!("{}.json", f.name.replace('#', "+"))), &f.witness)?;
        }
    }
    let found: BTreeMap<String, Value> = result
        .found
        .iter()
        .map(|f| (f.name.clone(), json!({"diagrams": f.count, "chiralities": f.chiralities, "witness": f.witness.to_json()})))
        .collect();
    let unknown: Vec<Value> = result.unknown.iter().map(|u| json!({"jones": u.jones, "diagrams": u.count})).collect();
    let payload = json!({
        "n": n,
        "candidates": result.candidates,
        "knot_diagrams": result.knot_diagrams,
        "unknots": result.unknots,
        "found": found,
        "unknown": unknown,
    });
    Ok((payload, problems))
}
