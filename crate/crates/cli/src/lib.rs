//! Command-line front end for the `biquotient` crate.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit
//! status together with what would be written to stdout and stderr, so the
//! binary and the tests share one code path.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use biquotient::classify::{
    classify_su2, classify_su2xsu2, verify_known_classification, ClassificationReport, PairRecord,
    Source,
};
use biquotient::freeness::{
    descent_analysis, is_effectively_free, restriction_prune, ActionSpec, FreenessVerdict,
};
use biquotient::notation::MapDescriptor;
use biquotient::reps::{enumerate_su2, enumerate_su2xsu2, su2_name, Flavor, Su2Rep};
use biquotient::spin::verify_spin7;
use biquotient::weyl::{verify_weyl, GroupKind};
use biquotient::{Check, Error};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "biquotient", version, about = "Exact freeness checks for biquotients G//SU(2) and G//SU(2)^2")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Write the document to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List representations of SU(2) or SU(2)xSU(2) of a given dimension.
    EnumerateReps {
        #[arg(long, default_value = "su2", value_parser = parse_source)]
        source: Source,
        #[arg(long, default_value_t = 7)]
        dim: u32,
        #[arg(long, value_enum, default_value_t = FlavorArg::Orthogonal)]
        flavor: FlavorArg,
        /// Keep only SU(2)xSU(2) representations nontrivial on both factors.
        #[arg(long)]
        finite_kernel: bool,
    },
    /// Decide whether (left, right) acts effectively freely on the group.
    CheckFree {
        #[arg(long, value_parser = parse_group)]
        group: GroupKind,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Test every candidate pair of homomorphisms.
    Classify {
        #[arg(long, value_parser = parse_group)]
        group: GroupKind,
        #[arg(long, default_value = "su2xsu2", value_parser = parse_source)]
        source: Source,
        /// Include every tested pair, with witnesses and restriction data.
        #[arg(long)]
        audit: bool,
    },
    /// Check the octonion and spin constructions of the Spin(7) torus.
    VerifySpin7,
    /// Check Weyl group orders, centers and torus relations.
    VerifyWeyl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Orthogonal,
    Complex,
}

fn parse_group(s: &str) -> Result<GroupKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_source(s: &str) -> Result<Source, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// The persisted result of one invocation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub command: String,
    pub version: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Value,
    pub exact_arithmetic: bool,
}

impl OutputDocument {
    fn new(command: &str, inputs: BTreeMap<String, String>, results: Value) -> Self {
        Self {
            command: command.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            inputs,
            results,
            exact_arithmetic: true,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Produced {
    doc: OutputDocument,
    table: String,
    mismatch: Option<String>,
}

enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    status: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    status: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let produced = match execute(&cli.command) {
        Ok(p) => p,
        Err(Failure::Usage(msg)) => {
            return Outcome {
                status: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
    };
    emit(produced, cli.format, cli.out.as_deref())
}

fn emit(produced: Produced, format: Format, path: Option<&std::path::Path>) -> Outcome {
    let body = match format {
        Format::Json => produced.doc.to_json(),
        Format::Table => produced.table,
    };
    let mut out = Outcome::default();
    match path {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                out.status = EXIT_USAGE;
                out.stderr = format!("error: cannot write {}: {e}\n", path.display());
                return out;
            }
        }
        None => out.stdout = body,
    }
    if let Some(m) = produced.mismatch {
        out.status = EXIT_MISMATCH;
        out.stderr.push_str(&format!("verification mismatch:\n{m}\n"));
    }
    out
}

fn execute(command: &Command) -> Result<Produced, Failure> {
    match command {
        Command::EnumerateReps {
            source,
            dim,
            flavor,
            finite_kernel,
        } => enumerate_reps(*source, *dim, *flavor, *finite_kernel),
        Command::CheckFree { group, left, right } => check_free(*group, left, right),
        Command::Classify {
            group,
            source,
            audit,
        } => classify(*group, *source, *audit),
        Command::VerifySpin7 => Ok(checks("verify-spin7", verify_spin7())),
        Command::VerifyWeyl => Ok(checks("verify-weyl", verify_weyl())),
    }
}

fn inputs(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| ((*k).to_string(), v.clone())).collect()
}

fn enumerate_reps(source: Source, dim: u32, flavor: FlavorArg, finite_kernel: bool) -> Result<Produced, Failure> {
    let flavor = match flavor {
        FlavorArg::Orthogonal => Flavor::Orthogonal,
        FlavorArg::Complex => Flavor::Complex,
    };
    let rows: Vec<(String, String, bool)> = match source {
        Source::Su2 => enumerate_su2(dim, flavor)
            .iter()
            .map(|r: &Su2Rep| (r.to_string(), name_if_labelled(r), r.is_trivial()))
            .collect(),
        Source::Su2xSu2 => enumerate_su2xsu2(dim, flavor, finite_kernel)
            .iter()
            .map(|r| (r.to_string(), String::new(), r.is_trivial()))
            .collect(),
    };
    let mut table = String::new();
    for (rep, label, _) in &rows {
        if label.is_empty() {
            let _ = writeln!(table, "{rep}");
        } else {
            let _ = writeln!(table, "{label}  {rep}");
        }
    }
    let _ = writeln!(table, "{} representations", rows.len());
    let results = json!({
        "count": rows.len(),
        "representations": rows.iter().map(|(rep, label, trivial)| {
            let mut v = json!({ "rep": rep, "trivial": trivial });
            if !label.is_empty() {
                v["label"] = json!(label);
            }
            v
        }).collect::<Vec<_>>(),
    });
    let doc = OutputDocument::new(
        "enumerate-reps",
        inputs(&[
            ("source", source.to_string()),
            ("dim", dim.to_string()),
            ("flavor", format!("{flavor:?}").to_lowercase()),
            ("finite_kernel", finite_kernel.to_string()),
        ]),
        results,
    );
    Ok(Produced {
        doc,
        table,
        mismatch: None,
    })
}

fn name_if_labelled(r: &Su2Rep) -> String {
    let n = su2_name(r);
    if n.len() == 1 {
        n
    } else {
        String::new()
    }
}

/// Parses a map descriptor, pointing at the offending character on error.
fn descriptor(flag: &str, text: &str) -> Result<MapDescriptor, Failure> {
    text.parse().map_err(|e| match e {
        Error::Parse { pos, msg } => Failure::Usage(format!(
            "invalid --{flag} `{text}` at position {pos}: {msg}\n  {text}\n  {}^",
            " ".repeat(pos)
        )),
        other => Failure::Usage(other.to_string()),
    })
}

fn check_free(group: GroupKind, left: &str, right: &str) -> Result<Produced, Failure> {
    let l = descriptor("left", left)?;
    let r = descriptor("right", right)?;
    let params = match (l.params(), r.params()) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::ParamMismatch { left: a, right: b }.into())
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => 1,
    };
    let spec = ActionSpec::new(l.torus_map(group, params)?, r.torus_map(group, params)?)?;
    let verdict = is_effectively_free(&spec)?;
    let mut results = json!({
        "group": group,
        "left": l,
        "right": r,
        "left_weights": spec.left.to_string(),
        "right_weights": spec.right.to_string(),
    });
    merge(&mut results, serde_json::to_value(&verdict).expect("serializable"));
    let mut table = format!(
        "{}: f1 = {l} {}, f2 = {r} {}\n",
        group.display_name(),
        spec.left,
        spec.right
    );
    table.push_str(&verdict_line(&verdict));
    if let Some(w) = verdict.witness() {
        results["witness_verified"] = json!(w.verify(&spec));
    }
    if params == 2 {
        let prune = restriction_prune(&spec)?;
        for p in &prune.restrictions {
            let _ = writeln!(
                table,
                "  {:?} restriction: ({}, {}) {}",
                p.restriction,
                p.left,
                p.right,
                if p.verdict.is_free() { "free" } else { "not free" }
            );
        }
        results["prune"] = serde_json::to_value(&prune).expect("serializable");
    }
    if group == GroupKind::Spin7 && verdict.is_free() {
        let d = descent_analysis(&spec)?;
        let _ = writeln!(
            table,
            "  deck point: {}; SO(7) verdict: {}",
            d.deck_point.as_ref().map_or("none".to_string(), ToString::to_string),
            if d.so7_verdict.is_free() { "free" } else { "not free" }
        );
        results["descent"] = serde_json::to_value(&d).expect("serializable");
    }
    let doc = OutputDocument::new(
        "check-free",
        inputs(&[
            ("group", group.name().to_string()),
            ("left", left.to_string()),
            ("right", right.to_string()),
        ]),
        results,
    );
    Ok(Produced {
        doc,
        table,
        mismatch: None,
    })
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn verdict_line(v: &FreenessVerdict) -> String {
    match v {
        FreenessVerdict::Free => "effectively free\n".into(),
        FreenessVerdict::NotFree(w) => format!(
            "not free: t = {} (order {}), f1(t) = {}, f2(t) = {}, w = {}\n",
            w.point, w.order, w.left_image, w.right_image, w.weyl
        ),
    }
}

fn pair_line(p: &PairRecord) -> String {
    let mut s = format!("({}, {})  {}", p.left, p.right, match &p.verdict {
        FreenessVerdict::Free => "free".to_string(),
        FreenessVerdict::NotFree(w) => format!("not free at t = {} via {}", w.point, w.weyl),
    });
    if let Some(by) = &p.pruned_by {
        let _ = write!(s, "  [pruned: {by}]");
    }
    if let Some(d) = &p.descent {
        let _ = write!(
            s,
            "  [deck point: {}; SO(7): {}]",
            d.deck_point.as_ref().map_or("none".to_string(), ToString::to_string),
            if d.so7_verdict.is_free() { "free" } else { "not free" }
        );
    }
    s
}

fn classify(group: GroupKind, source: Source, audit: bool) -> Result<Produced, Failure> {
    let report: ClassificationReport = match source {
        Source::Su2 => classify_su2(group)?,
        Source::Su2xSu2 => classify_su2xsu2(group)?,
    };
    let shown: Vec<&PairRecord> = if audit {
        report.pairs.iter().collect()
    } else {
        report.free_inhomogeneous().collect()
    };
    let mut table = format!(
        "{} // {}: {} pairs tested\n",
        group.display_name(),
        match source {
            Source::Su2 => "SU(2)",
            Source::Su2xSu2 => "SU(2)xSU(2)",
        },
        report.pairs.len()
    );
    for p in &shown {
        let _ = writeln!(table, "  {}", pair_line(p));
    }
    let c = &report.counts;
    let _ = writeln!(
        table,
        "free inhomogeneous: {}, homogeneous: {}, rank-1 equivalent: {}, not free: {}, pruned: {}",
        c.free_inhomogeneous, c.homogeneous, c.rank1_equivalent, c.not_free, c.pruned
    );
    if let Some(n) = c.deck_points {
        let _ = writeln!(table, "free pairs with a deck point: {n}");
    }
    let mut results = json!({
        "group": group,
        "source": source,
        "pairs": shown,
        "counts": c,
    });
    let mut mismatch = None;
    if source == Source::Su2xSu2 {
        match verify_known_classification(&report) {
            Ok(m) => {
                let _ = writeln!(table, "known classification: {} rows matched", m.len());
                results["known_rows"] = serde_json::to_value(&m).expect("serializable");
            }
            Err(Error::Mismatch(msg)) => mismatch = Some(msg),
            Err(e) => return Err(e.into()),
        }
    }
    let doc = OutputDocument::new(
        "classify",
        inputs(&[
            ("group", group.name().to_string()),
            ("source", source.to_string()),
            ("audit", audit.to_string()),
        ]),
        results,
    );
    Ok(Produced {
        doc,
        table,
        mismatch,
    })
}

fn checks(command: &str, list: Vec<Check>) -> Produced {
    let failed: Vec<&Check> = list.iter().filter(|c| !c.passed).collect();
    let mut table = String::new();
    for c in &list {
        let _ = write!(table, "[{}] {}", if c.passed { "pass" } else { "FAIL" }, c.name);
        if !c.detail.is_empty() && !c.passed {
            let _ = write!(table, ": {}", c.detail);
        }
        table.push('\n');
    }
    let mismatch = (!failed.is_empty()).then(|| {
        failed
            .iter()
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect::<Vec<_>>()
            .join("\n")
    });
    let doc = OutputDocument::new(
        command,
        BTreeMap::new(),
        json!({ "passed": failed.is_empty(), "checks": list }),
    );
    Produced {
        doc,
        table,
        mismatch,
    }
}
