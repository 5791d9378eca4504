//! The `oracle-lab` command line.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on
//! usage or input errors, 3 when a result is unknown or a run was cut
//! short by its budget, 4 on an internal error.

use std::ffi::OsString;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::io;
use crate::nucleus::{enumerate_nuclei, nucleus_leq, sup_nuclei, validate_table};
use crate::oracle::{
    forces, instance_prenucleus, oracle_modality, oracle_modality_bruteforce, validate_container,
    verify_retraction_tables, verify_theorems, Budget, TheoremId,
};
use crate::pca::membership::{check_oracle_membership, verify_certificate, MembershipVerdict};
use crate::pca::weihrauch::{check_weihrauch, OracleQueries, WeihrauchOutcome};
use crate::pca::{EvalResult, Signature, DEFAULT_FUEL};
use crate::trees::sheaf::{sheaf_classify, sheaf_search};
use crate::trees::suite::{run_suite, GenParams, TreeSuite};
use crate::trees::{delta, equifoliate, members, EquiTree, Members};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "oracle-lab", version, about = "Oracle modalities, nuclei, trees and realizers on finite models")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Reduction steps per evaluation.
    #[arg(long, global = true, default_value_t = DEFAULT_FUEL)]
    fuel: u64,
    /// Depth bound for tree membership.
    #[arg(long, global = true, default_value_t = 8)]
    depth: usize,
    /// Cap on checked instances per theorem.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include wall-clock timings (json output is then not reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Downset frames of posets.
    #[command(subcommand)]
    Frame(FrameCmd),
    /// Nuclei on a frame.
    #[command(subcommand)]
    Nuclei(NucleiCmd),
    /// Oracle modalities of containers.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Seeded verification of the modality theorems.
    Verify(VerifyArgs),
    /// Oracle-computation trees.
    #[command(subcommand)]
    Trees(TreesCmd),
    /// Combinatory evaluation.
    #[command(subcommand)]
    Pca(PcaCmd),
    /// Checking supplied Weihrauch reducers.
    #[command(subcommand)]
    Weihrauch(WeihrauchCmd),
    /// Membership of realizers in oracle modalities.
    #[command(subcommand)]
    OracleTree(OracleTreeCmd),
}

#[derive(Subcommand, Debug)]
enum FrameCmd {
    /// Build the downset frame and check its laws.
    Build {
        #[arg(long)]
        poset: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum NucleiCmd {
    Enumerate {
        #[arg(long)]
        poset: PathBuf,
    },
    Validate {
        #[arg(long)]
        nucleus: PathBuf,
    },
    /// Least nucleus above all given ones.
    Sup {
        #[arg(long, required = true)]
        nucleus: Vec<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    Compute {
        #[arg(long)]
        container: PathBuf,
    },
    /// Compare the fixed-point and brute-force computations, and relate
    /// the result to a nucleus when one is given.
    Compare {
        #[arg(long)]
        container: PathBuf,
        #[arg(long)]
        nucleus: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    One(TheoremId),
    All,
}

fn parse_target(s: &str) -> std::result::Result<Target, String> {
    if s == "all" {
        return Ok(Target::All);
    }
    s.parse().map(Target::One).map_err(|e: Error| e.to_string())
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// retraction, forcing, oracle-leq, sup, least-above, surjection,
    /// instance-reducibility or all.
    #[arg(value_parser = parse_target)]
    theorem: Target,
    #[arg(long)]
    poset: PathBuf,
    /// Check these tables instead of the enumerated nuclei (retraction only).
    #[arg(long)]
    nucleus: Vec<PathBuf>,
    /// Random instances per theorem.
    #[arg(long, default_value_t = 500)]
    samples: usize,
    /// Enumerate every container with up to this many shapes.
    #[arg(long, default_value_t = 1)]
    exhaustive_shapes: usize,
}

#[derive(Subcommand, Debug)]
enum TreesCmd {
    /// Seeded property suites.
    Suite {
        /// One suite; all when omitted.
        #[arg(long)]
        suite: Option<TreeSuite>,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
    /// Equifoliate check, members and descent of one tree.
    Check {
        #[arg(long)]
        container: PathBuf,
        #[arg(long)]
        tree: PathBuf,
    },
    /// Sheaf classification for a Boolean predicate on shapes.
    Classify {
        /// One flag per shape, e.g. `1,0,1`.
        #[arg(long, value_delimiter = ',')]
        answered: Vec<u8>,
        #[arg(long)]
        xsize: usize,
    },
}

#[derive(Subcommand, Debug)]
enum PcaCmd {
    Eval {
        #[arg(long)]
        term: String,
        #[arg(long)]
        signature: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum WeihrauchCmd {
    Check {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        l1: String,
        #[arg(long)]
        l2: String,
        #[arg(long)]
        signature: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum OracleTreeCmd {
    Check {
        /// Extended Weihrauch predicate file.
        #[arg(long, conflicts_with = "asm", required_unless_present = "asm")]
        pred: Option<PathBuf>,
        /// Partitioned assembly file.
        #[arg(long)]
        asm: Option<PathBuf>,
        /// JSON array of leaf realizers.
        #[arg(long)]
        s: PathBuf,
        #[arg(long)]
        term: String,
        #[arg(long)]
        signature: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Pass,
    Fail,
    Unknown,
}

impl Status {
    fn code(self) -> i32 {
        match self {
            Status::Pass => EXIT_PASS,
            Status::Fail => EXIT_FAIL,
            Status::Unknown => EXIT_UNKNOWN,
        }
    }

    fn of_checks(failed: bool, incomplete: bool) -> Status {
        if failed {
            Status::Fail
        } else if incomplete {
            Status::Unknown
        } else {
            Status::Pass
        }
    }
}

struct Outcome {
    status: Status,
    checks: usize,
    body: Value,
    text: String,
}

impl Command {
    fn name(&self) -> String {
        let (verb, sub) = match self {
            Command::Frame(FrameCmd::Build { .. }) => ("frame", "build".to_string()),
            Command::Nuclei(c) => (
                "nuclei",
                match c {
                    NucleiCmd::Enumerate { .. } => "enumerate",
                    NucleiCmd::Validate { .. } => "validate",
                    NucleiCmd::Sup { .. } => "sup",
                }
                .to_string(),
            ),
            Command::Oracle(c) => (
                "oracle",
                match c {
                    OracleCmd::Compute { .. } => "compute",
                    OracleCmd::Compare { .. } => "compare",
                }
                .to_string(),
            ),
            Command::Verify(v) => (
                "verify",
                match v.theorem {
                    Target::All => "all".to_string(),
                    Target::One(id) => id.to_string(),
                },
            ),
            Command::Trees(c) => (
                "trees",
                match c {
                    TreesCmd::Suite { .. } => "suite",
                    TreesCmd::Check { .. } => "check",
                    TreesCmd::Classify { .. } => "classify",
                }
                .to_string(),
            ),
            Command::Pca(PcaCmd::Eval { .. }) => ("pca", "eval".to_string()),
            Command::Weihrauch(WeihrauchCmd::Check { .. }) => ("weihrauch", "check".to_string()),
            Command::OracleTree(OracleTreeCmd::Check { .. }) => ("oracle-tree", "check".to_string()),
        };
        format!("{verb} {sub}")
    }
}

/// Parses `args` (including the program name), runs the command, writes
/// the report, and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let command = cli.command.name();
    let start = Instant::now();
    let result = panic::catch_unwind(AssertUnwindSafe(|| execute(&cli.command, &cli.global)));
    match result {
        Ok(Ok(outcome)) => {
            let elapsed = start.elapsed().as_millis() as u64;
            let rendered = render(&command, &cli.global, &outcome, elapsed);
            let written = match &cli.global.output {
                Some(path) => fs::write(path, rendered),
                None => {
                    print!("{rendered}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => outcome.status.code(),
                Err(e) => {
                    eprintln!("error: cannot write report: {e}");
                    EXIT_USAGE
                }
            }
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::InternalInvariant(_) => EXIT_INTERNAL,
                _ => EXIT_USAGE,
            }
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            let bug = json!({
                "bug": msg,
                "command": command,
                "seed": cli.global.seed,
                "version": env!("CARGO_PKG_VERSION"),
            });
            eprintln!("internal error, please report:\n{bug:#}");
            EXIT_INTERNAL
        }
    }
}

fn render(command: &str, g: &Global, o: &Outcome, elapsed_ms: u64) -> String {
    match g.format {
        Format::Json => {
            let mut header = json!({
                "command": command,
                "seed": g.seed,
                "version": env!("CARGO_PKG_VERSION"),
            });
            if g.timings {
                header["elapsed_ms"] = json!(elapsed_ms);
            }
            let report = json!({
                "header": header,
                "body": o.body,
                "checks": o.checks,
                "status": o.status,
            });
            format!("{report:#}\n")
        }
        Format::Text => {
            let mut out = format!(
                "oracle-lab {} | {command} | seed {}\n",
                env!("CARGO_PKG_VERSION"),
                g.seed
            );
            out.push_str(&o.text);
            if !o.text.is_empty() && !o.text.ends_with('\n') {
                out.push('\n');
            }
            let status = match o.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Unknown => "unknown",
            };
            out.push_str(&format!("{} checks, {status}", o.checks));
            if g.timings {
                out.push_str(&format!(" ({elapsed_ms} ms)"));
            }
            out.push('\n');
            out
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn execute(cmd: &Command, g: &Global) -> Result<Outcome> {
    match cmd {
        Command::Frame(FrameCmd::Build { poset }) => frame_build(poset),
        Command::Nuclei(c) => nuclei(c),
        Command::Oracle(c) => oracle(c),
        Command::Verify(v) => verify(v, g),
        Command::Trees(c) => trees(c, g),
        Command::Pca(PcaCmd::Eval { term, signature }) => pca_eval(term, signature.as_deref(), g),
        Command::Weihrauch(WeihrauchCmd::Check {
            f,
            g: gpath,
            l1,
            l2,
            signature,
        }) => weihrauch(f, gpath, l1, l2, signature.as_deref(), g),
        Command::OracleTree(OracleTreeCmd::Check {
            pred,
            asm,
            s,
            term,
            signature,
        }) => oracle_tree(pred.as_deref(), asm.as_deref(), s, term, signature.as_deref(), g),
    }
}

fn frame_build(poset: &Path) -> Result<Outcome> {
    let p = io::load_poset(poset)?;
    let f = Frame::downsets(&p)?;
    let failures = f.check_laws();
    let elements: Vec<Value> = (0..f.len()).map(|x| io::elem_json(&f, x)).collect();
    let failure_text: Vec<String> = failures.iter().map(|l| format!("{l:?}")).collect();
    let mut text = format!("poset: {} elements\ncarrier: {} downsets\n", p.len(), f.len());
    for x in 0..f.len() {
        text.push_str(&format!("  {}\n", f.render_ix(x)));
    }
    for l in &failure_text {
        text.push_str(&format!("law failure: {l}\n"));
    }
    Ok(Outcome {
        status: Status::of_checks(!failures.is_empty(), false),
        checks: 1,
        body: json!({
            "poset": p.to_spec(),
            "carrier": f.len(),
            "elements": elements,
            "law_failures": failure_text,
        }),
        text,
    })
}

fn table_text(f: &Frame, table: &[usize]) -> String {
    table
        .iter()
        .enumerate()
        .map(|(x, &y)| format!("{}↦{}", f.render_ix(x), f.render_ix(y)))
        .collect::<Vec<_>>()
        .join("  ")
}

fn nuclei(c: &NucleiCmd) -> Result<Outcome> {
    match c {
        NucleiCmd::Enumerate { poset } => {
            let f = Frame::downsets(&io::load_poset(poset)?)?;
            let all = enumerate_nuclei(&f)?;
            let mut text = format!("{} nuclei on a carrier of {}\n", all.len(), f.len());
            for (i, j) in all.iter().enumerate() {
                text.push_str(&format!("  [{i}] {}\n", table_text(&f, j.table_ix())));
            }
            let tables: Vec<Value> = all.iter().map(|j| io::table_json(&f, j.table_ix())).collect();
            Ok(Outcome {
                status: Status::Pass,
                checks: all.len(),
                body: json!({ "frame": f.poset().to_spec(), "count": all.len(), "nuclei": tables }),
                text,
            })
        }
        NucleiCmd::Validate { nucleus } => {
            let (f, table) = io::load_table(nucleus, None)?;
            let report = validate_table(&f, &table)?;
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| {
                    let w: Vec<Value> = v.witness.iter().map(|&e| io::elem_json(&f, e.index())).collect();
                    json!({ "law": v.law, "witness": w })
                })
                .collect();
            let text = format!("{}\n{}\n", table_text(&f, &table), report.describe(&f));
            Ok(Outcome {
                status: Status::of_checks(!report.valid, false),
                checks: 1,
                body: json!({ "table": io::table_json(&f, &table), "valid": report.valid, "violations": violations }),
                text,
            })
        }
        NucleiCmd::Sup { nucleus } => {
            let first = io::load_nucleus(&nucleus[0], None)?;
            let f = first.frame().clone();
            let mut js = vec![first];
            for p in &nucleus[1..] {
                js.push(io::load_nucleus(p, Some(&f))?);
            }
            let s = sup_nuclei(&f, &js)?;
            let mut bounded = true;
            for j in &js {
                bounded &= nucleus_leq(j, &s)?;
            }
            if !bounded {
                return Err(Error::InternalInvariant("sup is not an upper bound".into()));
            }
            Ok(Outcome {
                status: Status::Pass,
                checks: js.len(),
                body: json!({ "inputs": js.len(), "sup": io::table_json(&f, s.table_ix()) }),
                text: format!("sup of {} nuclei\n  {}\n", js.len(), table_text(&f, s.table_ix())),
            })
        }
    }
}

fn oracle(c: &OracleCmd) -> Result<Outcome> {
    match c {
        OracleCmd::Compute { container } => {
            let c = io::load_container(container, None)?;
            let f = c.frame().clone();
            let j = oracle_modality(&c);
            let single = instance_prenucleus(&c);
            Ok(Outcome {
                status: Status::Pass,
                checks: 1,
                body: json!({
                    "container": io::container_json(&c),
                    "well_formed": validate_container(&c),
                    "modality": io::table_json(&f, j.table_ix()),
                    "single_query": io::table_json(&f, single.table_ix()),
                }),
                text: format!(
                    "{c:?}\nmodality:     {}\nsingle query: {}\n",
                    table_text(&f, j.table_ix()),
                    table_text(&f, single.table_ix())
                ),
            })
        }
        OracleCmd::Compare { container, nucleus } => {
            let c = io::load_container(container, None)?;
            let f = c.frame().clone();
            let kleene = oracle_modality(&c);
            let brute = oracle_modality_bruteforce(&c);
            let agree = kleene == brute;
            let mut text = format!(
                "fixed point: {}\nbrute force: {}\nagree: {agree}\n",
                table_text(&f, kleene.table_ix()),
                table_text(&f, brute.table_ix())
            );
            let mut body = json!({
                "fixed_point": io::table_json(&f, kleene.table_ix()),
                "brute_force": io::table_json(&f, brute.table_ix()),
                "agree": agree,
            });
            let mut failed = !agree;
            let mut checks = 1;
            if let Some(path) = nucleus {
                let j = io::load_nucleus(path, Some(&f))?;
                let forced = forces(&j, &c)?;
                let below = nucleus_leq(&kleene, &j)?;
                failed |= forced != below;
                checks += 1;
                text.push_str(&format!("nucleus forces the container: {forced}\nmodality below nucleus: {below}\n"));
                body["forces"] = json!(forced);
                body["modality_below_nucleus"] = json!(below);
            }
            Ok(Outcome {
                status: Status::of_checks(failed, false),
                checks,
                body,
                text,
            })
        }
    }
}

fn verify(v: &VerifyArgs, g: &Global) -> Result<Outcome> {
    let f = Frame::downsets(&io::load_poset(&v.poset)?)?;
    let reports = if v.nucleus.is_empty() {
        let budget = Budget {
            seed: g.seed,
            exhaustive_shapes: v.exhaustive_shapes,
            samples: v.samples,
            max_checks: g.budget,
            ..Budget::default()
        };
        let ids: Vec<TheoremId> = match v.theorem {
            Target::All => TheoremId::ALL.to_vec(),
            Target::One(id) => vec![id],
        };
        verify_theorems(&f, &ids, &budget)?
    } else {
        if v.theorem != Target::One(TheoremId::Retraction) {
            return Err(Error::Format("--nucleus applies to `verify retraction` only".into()));
        }
        let tables = v
            .nucleus
            .iter()
            .map(|p| io::load_table(p, Some(&f)).map(|(_, t)| t))
            .collect::<Result<Vec<_>>>()?;
        vec![verify_retraction_tables(&f, &tables, g.seed)?]
    };
    let mut text = String::new();
    let mut body = Vec::new();
    for r in &reports {
        text.push_str(&format!(
            "{}: {}/{} checked, {} failures{}\n",
            r.theorem,
            r.checked,
            r.total,
            r.failures.len(),
            if r.complete { "" } else { " (incomplete)" }
        ));
        for fl in &r.failures {
            text.push_str(&format!("  {fl}\n"));
        }
        let mut value = to_value(r);
        if !g.timings {
            value.as_object_mut().expect("struct").remove("elapsed_ms");
        }
        body.push(value);
    }
    Ok(Outcome {
        status: Status::of_checks(
            reports.iter().any(|r| !r.passed()),
            reports.iter().any(|r| !r.complete),
        ),
        checks: reports.iter().map(|r| r.checked).sum(),
        body: json!({ "reports": body }),
        text,
    })
}

fn trees(c: &TreesCmd, g: &Global) -> Result<Outcome> {
    match c {
        TreesCmd::Suite { suite, cases } => {
            let suites: Vec<TreeSuite> = match suite {
                Some(s) => vec![*s],
                None => TreeSuite::ALL.to_vec(),
            };
            let params = GenParams::default();
            let reports: Vec<_> = suites.iter().map(|&s| run_suite(s, g.seed, *cases, &params)).collect();
            let mut text = String::new();
            for r in &reports {
                text.push_str(&format!("{}: {} cases, {} failures\n", r.suite, r.cases, r.failures.len()));
                for fl in &r.failures {
                    text.push_str(&format!("  {fl}\n"));
                }
            }
            Ok(Outcome {
                status: Status::of_checks(reports.iter().any(|r| !r.passed()), false),
                checks: reports.iter().map(|r| r.cases).sum(),
                body: json!({ "reports": to_value(&reports) }),
                text,
            })
        }
        TreesCmd::Check { container, tree } => {
            let c = io::load_set_container(container)?;
            let t = io::load_tree(tree, &c)?;
            let label = |v: usize| t.values[v].clone();
            let member_json = |m: &Members| match m {
                Members::All => json!("all"),
                Members::Finite(s) => json!(s.iter().map(|&v| label(v)).collect::<Vec<_>>()),
            };
            let all_members = members(&c, &t.tree);
            let mut body = json!({
                "degenerate": c.is_degenerate(),
                "members": member_json(&all_members),
            });
            let mut text = format!("degenerate container: {}\nmembers: {}\n", c.is_degenerate(), body["members"]);
            let status = match equifoliate(&c, &t.tree) {
                Ok(_) => {
                    let e = EquiTree::new(&c, t.tree.clone()).map_err(|e| Error::InvalidTree(format!("{e:?}")))?;
                    let d = delta(&c, &e)?;
                    let dv = match d {
                        crate::trees::CanonicalSheafElement::Collapsed => json!("collapsed"),
                        crate::trees::CanonicalSheafElement::Pure(v) => json!({ "pure": label(v) }),
                    };
                    text.push_str(&format!("equifoliate: yes\ndescends to: {dv}\n"));
                    body["equifoliate"] = json!(true);
                    body["delta"] = dv;
                    Status::Pass
                }
                Err(w) => {
                    let wv = json!({
                        "path": w.path,
                        "value": label(w.x),
                        "member_of_child": w.u,
                        "not_member_of_child": w.v,
                    });
                    text.push_str(&format!(
                        "equifoliate: no, at path {:?} `{}` is a member of child {} but not of child {}\n",
                        w.path,
                        label(w.x),
                        w.u,
                        w.v
                    ));
                    body["equifoliate"] = json!(false);
                    body["witness"] = wv;
                    Status::Fail
                }
            };
            Ok(Outcome {
                status,
                checks: 1,
                body,
                text,
            })
        }
        TreesCmd::Classify { answered, xsize } => {
            let p: Vec<bool> = answered.iter().map(|&b| b != 0).collect();
            let closed = sheaf_classify(&p, *xsize);
            let (searched, candidates) = sheaf_search(&p, *xsize);
            let agree = searched == closed.verdict;
            let text = format!(
                "class: {:?}\nverdict: {}\nexhaustive search agrees: {agree} ({candidates} candidates satisfy (ii))\n",
                closed.class,
                match &closed.verdict {
                    crate::trees::sheaf::SheafVerdict::Sheaf(d) => format!("sheaf, structure map {:?}", d.tables),
                    crate::trees::sheaf::SheafVerdict::NotSheaf(c) => format!("not a sheaf: {c}"),
                }
            );
            Ok(Outcome {
                status: Status::of_checks(!agree, false),
                checks: 1,
                body: json!({ "classification": to_value(&closed), "search_agrees": agree }),
                text,
            })
        }
    }
}

fn signature(path: Option<&Path>, fuel: u64) -> Result<Signature> {
    match path {
        Some(p) => io::load_signature(p, fuel),
        None => Ok(Signature::standard()),
    }
}

fn pca_eval(src: &str, sig_path: Option<&Path>, g: &Global) -> Result<Outcome> {
    let sig = signature(sig_path, g.fuel)?;
    let t = sig.parse(src)?;
    let (r, steps) = sig.eval_counting(&t, g.fuel);
    let (status, text) = match &r {
        EvalResult::Value(v) => (Status::Pass, format!("{t}\n⇝ {v}\n{steps} steps\n")),
        EvalResult::Diverged { fuel } => (Status::Unknown, format!("{t}\nno normal form within {fuel} steps\n")),
    };
    Ok(Outcome {
        status,
        checks: 1,
        body: json!({ "term": t, "result": to_value(&r), "steps": steps, "fuel": g.fuel }),
        text,
    })
}

fn weihrauch(
    f: &Path,
    gpath: &Path,
    l1: &str,
    l2: &str,
    sig_path: Option<&Path>,
    g: &Global,
) -> Result<Outcome> {
    let sig = signature(sig_path, g.fuel)?;
    let fp = io::load_predicate(f, &sig, g.fuel)?;
    let gp = io::load_predicate(gpath, &sig, g.fuel)?;
    let (l1, l2) = (sig.parse(l1)?, sig.parse(l2)?);
    let v = check_weihrauch(&sig, &fp, &gp, &l1, &l2, g.fuel);
    let status = match v.outcome {
        WeihrauchOutcome::Accepted => Status::Pass,
        WeihrauchOutcome::Rejected { .. } => Status::Fail,
        WeihrauchOutcome::Unknown { .. } => Status::Unknown,
    };
    let mut text = String::new();
    for o in &v.obligations {
        text.push_str(&format!("  {}: {:?}\n", o.path, o.status));
    }
    text.push_str(&match &v.outcome {
        WeihrauchOutcome::Accepted => "accepted\n".to_string(),
        WeihrauchOutcome::Rejected { path, reason } => format!("rejected at {path}: {reason}\n"),
        WeihrauchOutcome::Unknown { path, reason } => format!("unknown at {path}: {reason}\n"),
    });
    Ok(Outcome {
        status,
        checks: v.obligations.len(),
        body: json!({ "l1": l1, "l2": l2, "verdict": to_value(&v) }),
        text,
    })
}

fn oracle_tree(
    pred: Option<&Path>,
    asm: Option<&Path>,
    s: &Path,
    src: &str,
    sig_path: Option<&Path>,
    g: &Global,
) -> Result<Outcome> {
    let sig = signature(sig_path, g.fuel)?;
    let set = io::load_term_set(s, &sig, g.fuel)?;
    let t = sig.parse(src)?;
    let oracle: Box<dyn OracleQueries> = match (pred, asm) {
        (Some(p), _) => Box::new(io::load_predicate(p, &sig, g.fuel)?),
        (None, Some(a)) => Box::new(io::load_assembly(a, &sig, g.fuel)?),
        (None, None) => return Err(Error::Format("one of --pred or --asm is required".into())),
    };
    let v = check_oracle_membership(&sig, &*oracle, &set, &t, g.depth, g.fuel);
    if let Some(cert) = v.certificate() {
        if !verify_certificate(&sig, &*oracle, &set, &t, cert, g.fuel) {
            return Err(Error::InternalInvariant("member certificate does not re-verify".into()));
        }
    }
    let (status, text) = match &v {
        MembershipVerdict::Member { certificate } => (
            Status::Pass,
            format!("member, certificate of depth {}\n", certificate.depth()),
        ),
        MembershipVerdict::NotMember { path, reason } => {
            (Status::Fail, format!("not a member at /{}: {reason}\n", path.join("/")))
        }
        MembershipVerdict::Unknown { path, reason } => {
            (Status::Unknown, format!("unknown at /{}: {reason}\n", path.join("/")))
        }
    };
    Ok(Outcome {
        status,
        checks: 1,
        body: json!({ "term": t, "depth": g.depth, "fuel": g.fuel, "result": to_value(&v) }),
        text,
    })
}
