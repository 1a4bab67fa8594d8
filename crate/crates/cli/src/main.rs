//! `laxtop`: check finite spaces, build lax comma constructions, decide
//! descent and run the verification suites from the command line.
//!
//! Exit codes: 0 success, 1 a checked property fails, 2 usage or input
//! error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use laxtop::descent::{
    laxcomma_effective_descent, top_effective_descent_check, Category, DescentReport, Tri, Verdict,
    Witness,
};
use laxtop::enumerate::{enumerate_orders, Mode, OrderKind, DEFAULT_POINT_CAP};
use laxtop::famx::{fam_effective_descent_check, FamCriterion, DEFAULT_THETA_CAP};
use laxtop::finspace::{sober_report, FiniteSpace};
use laxtop::harness::{run_harness, HarnessConfig, SUITES};
use laxtop::io;
use laxtop::laxcomma::{
    exponentiability_report, exponential_object, initial_lift, lax_coequalizer, lax_equalizer,
    lax_product, lax_sum, verify_universal_property, ExponentiabilityConfig,
    ExponentiabilityVerdict, LaxMorphism, LaxObject, OracleConfig, OracleReport, UniversalInstance,
};
use laxtop::order::{distributivity_report, heyting_report, lattice_report};
use laxtop::vietoris::{vietoris_algebra_check, vietoris_monad, vietoris_space};

#[derive(Parser)]
#[command(
    name = "laxtop",
    version,
    about = "Lax comma categories over finite spaces"
)]
struct Cli {
    /// Print machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check order-theoretic and topological properties of a space.
    Check {
        space: PathBuf,
        /// Comma-separated properties; all of them when omitted.
        #[arg(long, value_delimiter = ',')]
        props: Vec<Prop>,
    },
    /// Build a limit, colimit, exponential or initial lift.
    Construct {
        #[arg(value_enum)]
        kind: Construction,
        /// Object files (product, sum, exponential: exponent then codomain),
        /// morphism files (equalizer, coequalizer) or leg files (lift).
        files: Vec<PathBuf>,
        /// Base space for files that omit it.
        #[arg(long)]
        base: Option<PathBuf>,
        /// Underlying space of the initial lift.
        #[arg(long)]
        space: Option<PathBuf>,
        /// Check the result against its universal property.
        #[arg(long)]
        verify: bool,
    },
    /// Decide descent and effective descent of a morphism.
    Descent {
        #[arg(long, value_enum)]
        category: DescentCategory,
        /// Base space for files that omit it.
        #[arg(long)]
        base: Option<PathBuf>,
        morphism: PathBuf,
    },
    /// Exponentiability of a lax object, optionally with an exponential.
    Expo {
        object: PathBuf,
        /// Also build the exponential into this object.
        #[arg(long)]
        codomain: Option<PathBuf>,
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 24)]
        samples: usize,
    },
    /// The lower Vietoris space of a space, monad laws and algebra check.
    Vietoris { space: PathBuf },
    /// Enumerate finite posets or preorders.
    Enumerate {
        n: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Poset)]
        kind: KindArg,
        #[arg(long)]
        labeled: bool,
    },
    /// Run the verification suites.
    PaperCheck {
        #[arg(long, default_value_t = 4)]
        max_points: usize,
        /// Oracle budget; the LAXTOP_CAP environment variable overrides it.
        #[arg(long, default_value_t = 1_000_000)]
        oracle_cap: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run only these suites (repeatable).
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// List the suites and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Prop {
    T0,
    Sober,
    Lattice,
    Complete,
    Heyting,
    Distributive,
    Frame,
    Continuous,
    OpContinuous,
    CompletelyDistributive,
    VietorisAlgebra,
}

impl Prop {
    fn name(self) -> &'static str {
        match self {
            Prop::T0 => "t0",
            Prop::Sober => "sober",
            Prop::Lattice => "lattice",
            Prop::Complete => "complete",
            Prop::Heyting => "heyting",
            Prop::Distributive => "distributive",
            Prop::Frame => "frame",
            Prop::Continuous => "continuous",
            Prop::OpContinuous => "op-continuous",
            Prop::CompletelyDistributive => "completely-distributive",
            Prop::VietorisAlgebra => "vietoris-algebra",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Construction {
    Product,
    Sum,
    Equalizer,
    Coequalizer,
    Exponential,
    Lift,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DescentCategory {
    Top,
    Fam,
    Laxcomma,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Poset,
    Preorder,
}

/// Outcome of a command: what to print and whether every checked property
/// held.
struct Outcome {
    json: Value,
    text: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                print!("{}", io::to_pretty(&out.json));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Check { space, props } => check(space, props),
        Command::Construct {
            kind,
            files,
            base,
            space,
            verify,
        } => construct(*kind, files, base.as_deref(), space.as_deref(), *verify),
        Command::Descent {
            category,
            base,
            morphism,
        } => descent(*category, base.as_deref(), morphism),
        Command::Expo {
            object,
            codomain,
            base,
            seed,
            samples,
        } => expo(
            object,
            codomain.as_deref(),
            base.as_deref(),
            *seed,
            *samples,
        ),
        Command::Vietoris { space } => vietoris(space),
        Command::Enumerate { n, kind, labeled } => enumerate(*n, *kind, *labeled),
        Command::PaperCheck {
            max_points,
            oracle_cap,
            seed,
            suites,
            list,
        } => paper_check(*max_points, *oracle_cap, *seed, suites, *list),
    }
}

// ---------------------------------------------------------------------------
// Files

fn read_json(path: &Path) -> Result<Value> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    io::parse_json(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Loads a file and a resolver for the string references inside it, which
/// name further files relative to its directory.
fn load(path: &Path) -> Result<(Value, impl Fn(&str) -> laxtop::Result<Value>)> {
    let value = read_json(path)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let resolve = move |r: &str| -> laxtop::Result<Value> {
        let p = dir.join(r);
        let text = std::fs::read_to_string(&p).map_err(|e| laxtop::Error::Schema {
            field: r.to_string(),
            message: format!("cannot read {}: {e}", p.display()),
        })?;
        io::parse_json(&text)
    };
    Ok((value, resolve))
}

fn load_space(path: &Path) -> Result<FiniteSpace> {
    let v = read_json(path)?;
    io::space_from_value(&v, "$").with_context(|| format!("in {}", path.display()))
}

fn load_base(path: Option<&Path>) -> Result<Option<FiniteSpace>> {
    path.map(load_space).transpose()
}

fn load_object(path: &Path, base: Option<&FiniteSpace>) -> Result<LaxObject> {
    let (v, resolve) = load(path)?;
    io::lax_object_from_value(&v, "$", base, &resolve)
        .with_context(|| format!("in {}", path.display()))
}

fn load_morphism(path: &Path, base: Option<&FiniteSpace>) -> Result<LaxMorphism> {
    let (v, resolve) = load(path)?;
    io::lax_morphism_from_value(&v, "$", base, &resolve)
        .with_context(|| format!("in {}", path.display()))
}

// ---------------------------------------------------------------------------
// Text rendering

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_object(obj: &LaxObject) -> String {
    let mut s = format!(
        "object over {} on {} point(s)\n",
        obj.base().name(),
        obj.len()
    );
    for a in obj.space().points() {
        s.push_str(&format!(
            "  {:<16} -> {}\n",
            obj.space().label(a),
            obj.base().label(obj.value(a))
        ));
    }
    let pairs: Vec<String> = obj
        .space()
        .order_pairs()
        .into_iter()
        .filter(|(x, y)| x != y)
        .map(|(x, y)| format!("{}<={}", obj.space().label(x), obj.space().label(y)))
        .collect();
    s.push_str(&format!("  order: {}\n", pairs.join(" ")));
    s
}

fn oracle_value(r: &OracleReport) -> Value {
    json!({
        "kind": r.kind,
        "passed": r.passed,
        "test_objects": r.test_objects,
        "checks": r.checks,
        "counterexample": r.counterexample,
        "candidates_refuted": r.candidates_refuted.map(|(k, n)| json!({"refuted": k, "total": n})),
        "surviving_candidate": r.surviving_candidate,
        "construction_error": r.construction_error,
    })
}

fn render_oracle(r: &OracleReport) -> String {
    let mut s = format!(
        "oracle ({}): {} over {} test objects, {} checks\n",
        r.kind,
        if r.passed { "passed" } else { "FAILED" },
        r.test_objects,
        r.checks
    );
    if let Some(c) = &r.counterexample {
        s.push_str(&format!("  counterexample: {c}\n"));
    }
    if let Some((k, n)) = r.candidates_refuted {
        s.push_str(&format!("  candidate structure maps refuted: {k}/{n}\n"));
    }
    if let Some(e) = &r.construction_error {
        s.push_str(&format!("  construction refused: {e}\n"));
    }
    s
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Pair { lo, hi } => format!("pair {lo} <= {hi} has no lift"),
        Witness::Chain { points } => format!("chain {} has no lift", points.join(" <= ")),
        Witness::Join { lo, hi, w } => {
            format!("w = {w} is not covered over {lo} <= {hi}")
        }
        Witness::JoinCover {
            lo,
            hi,
            expected,
            got,
        } => format!("over {lo} <= {hi} the lifts join to {got}, expected {expected}"),
        Witness::FilterLevel { u, v, lo, hi } => {
            format!("{lo} <= {hi} in level {u} has no lift in level {v}")
        }
        Witness::FamIndex { index } => format!("index {index} has an empty fibre"),
        Witness::FamJoin { index, w } => format!("w = {w} is not covered over index {index}"),
        Witness::Theta { index, theta } => {
            format!(
                "descent datum ({}) over {index} does not split",
                theta.join(",")
            )
        }
    }
}

fn verdict_text(v: &Verdict) -> String {
    match &v.witness {
        Some(w) => format!("{} ({})", v.value.as_str(), witness_text(w)),
        None => v.value.as_str().to_string(),
    }
}

// ---------------------------------------------------------------------------
// Commands

fn check(path: &Path, props: &[Prop]) -> Result<Outcome> {
    let space = load_space(path)?;
    let all = [
        Prop::T0,
        Prop::Sober,
        Prop::Lattice,
        Prop::Complete,
        Prop::Heyting,
        Prop::Distributive,
        Prop::Frame,
        Prop::Continuous,
        Prop::OpContinuous,
        Prop::CompletelyDistributive,
        Prop::VietorisAlgebra,
    ];
    // Without an explicit list every property is reported and none is
    // required to hold.
    let required = !props.is_empty();
    let props: &[Prop] = if required { props } else { &all };
    let lr = lattice_report(&space).ok();
    let complete = lr.as_ref().is_some_and(|r| r.is_complete_lattice);
    let dist = if complete {
        distributivity_report(&space).ok()
    } else {
        None
    };
    let mut results = Vec::new();
    for &p in props {
        let holds = match p {
            Prop::T0 => space.is_t0(),
            Prop::Sober => space.is_t0() && sober_report(&space)?.is_sober,
            Prop::Lattice => lr
                .as_ref()
                .is_some_and(|r| r.is_meet_semilattice && r.is_join_semilattice),
            Prop::Complete => complete,
            Prop::Heyting => heyting_report(&space).is_ok_and(|r| r.is_heyting),
            Prop::Distributive => dist.as_ref().is_some_and(|d| d.is_distributive),
            Prop::Frame => dist.as_ref().is_some_and(|d| d.is_frame),
            Prop::Continuous => dist.as_ref().is_some_and(|d| d.is_continuous_lattice),
            Prop::OpContinuous => dist.as_ref().is_some_and(|d| d.is_op_continuous_lattice),
            Prop::CompletelyDistributive => {
                dist.as_ref().is_some_and(|d| d.is_completely_distributive)
            }
            Prop::VietorisAlgebra => {
                space.is_t0() && vietoris_algebra_check(&space).is_ok_and(|r| r.is_algebra)
            }
        };
        results.push((p.name(), holds));
    }
    let ok = !required || results.iter().all(|(_, h)| *h);
    let mut text = format!("{} ({} points)\n", space.name(), space.len());
    for (name, holds) in &results {
        text.push_str(&format!("  {name:<24} {}\n", yes_no(*holds)));
    }
    let props_json: serde_json::Map<String, Value> = results
        .iter()
        .map(|(n, h)| (n.to_string(), Value::Bool(*h)))
        .collect();
    Ok(Outcome {
        json: json!({"space": space.name(), "points": space.len(), "properties": props_json}),
        text,
        ok,
    })
}

fn construct(
    kind: Construction,
    files: &[PathBuf],
    base: Option<&Path>,
    space: Option<&Path>,
    verify: bool,
) -> Result<Outcome> {
    let base = load_base(base)?;
    let oracle = OracleConfig {
        budget: oracle_cap(OracleConfig::default().budget)?,
        ..OracleConfig::default()
    };
    let objects = |files: &[PathBuf]| -> Result<Vec<LaxObject>> {
        files
            .iter()
            .map(|f| load_object(f, base.as_ref()))
            .collect()
    };
    let pair = |files: &[PathBuf]| -> Result<(LaxMorphism, LaxMorphism)> {
        if files.len() != 2 {
            bail!("expected two morphism files");
        }
        Ok((
            load_morphism(&files[0], base.as_ref())?,
            load_morphism(&files[1], base.as_ref())?,
        ))
    };
    let need_base = |objs: &[LaxObject]| -> Result<FiniteSpace> {
        match (objs.first(), &base) {
            (Some(o), _) => Ok(o.base().clone()),
            (None, Some(b)) => Ok(b.clone()),
            (None, None) => bail!("no objects given; pass --base"),
        }
    };
    let (object, instance) = match kind {
        Construction::Product => {
            let objs = objects(files)?;
            let b = need_base(&objs)?;
            let p = lax_product(&b, &objs)?;
            (
                p.object,
                Some(UniversalInstance::Product {
                    base: b,
                    factors: objs,
                }),
            )
        }
        Construction::Sum => {
            let objs = objects(files)?;
            let b = need_base(&objs)?;
            (lax_sum(&b, &objs)?.object, None)
        }
        Construction::Equalizer => {
            let (f, g) = pair(files)?;
            (lax_equalizer(&f, &g)?.0, None)
        }
        Construction::Coequalizer => {
            let (f, g) = pair(files)?;
            let q = lax_coequalizer(&f, &g)?;
            (q.object, Some(UniversalInstance::Coequalizer { f, g }))
        }
        Construction::Exponential => {
            let objs = objects(files)?;
            let [a, b] = objs.as_slice() else {
                bail!("expected an exponent file and a codomain file");
            };
            let instance = UniversalInstance::Exponential {
                exponent: a.clone(),
                codomain: b.clone(),
            };
            match exponential_object(a, b) {
                Ok(e) => (e.object, Some(instance)),
                Err(e) if verify => {
                    let r = verify_universal_property(&instance, &oracle)?;
                    return Ok(Outcome {
                        json: json!({"object": null, "error": e.to_string(), "oracle": oracle_value(&r)}),
                        text: format!("no exponential: {e}\n{}", render_oracle(&r)),
                        ok: false,
                    });
                }
                Err(e) => return Err(e.into()),
            }
        }
        Construction::Lift => {
            let space_path = space.context("lift needs --space")?;
            let lift_space = load_space(space_path)?;
            let mut cone = Vec::new();
            for f in files {
                let (v, resolve) = load(f)?;
                let obj_v = v
                    .get("object")
                    .context("leg file needs an `object` field")?;
                let obj_v = match obj_v {
                    Value::String(r) => resolve(r)?,
                    other => other.clone(),
                };
                let obj = io::lax_object_from_value(&obj_v, "$.object", base.as_ref(), &resolve)?;
                let map_v = json!({
                    "source": io::space_to_value(&lift_space),
                    "target": io::space_to_value(obj.space()),
                    "map": v.get("map").cloned().unwrap_or(Value::Null),
                });
                let map = io::map_from_value(&map_v, "$", &io::no_references)?;
                cone.push((map, obj));
            }
            let b = match (cone.first(), &base) {
                (Some((_, o)), _) => o.base().clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => bail!("no legs given; pass --base"),
            };
            let obj = initial_lift(&lift_space, &b, &cone)?;
            (
                obj,
                Some(UniversalInstance::InitialLift {
                    space: lift_space,
                    base: b,
                    cone,
                }),
            )
        }
    };
    let mut json_out = json!({"object": io::lax_object_to_value(&object)});
    let mut text = render_object(&object);
    let mut ok = true;
    if verify {
        match instance {
            Some(inst) => {
                let r = verify_universal_property(&inst, &oracle)?;
                ok = r.passed;
                text.push_str(&render_oracle(&r));
                json_out["oracle"] = oracle_value(&r);
            }
            None => text.push_str("no oracle for this construction\n"),
        }
    }
    Ok(Outcome {
        json: json_out,
        text,
        ok,
    })
}

fn descent(category: DescentCategory, base: Option<&Path>, path: &Path) -> Result<Outcome> {
    let base = load_base(base)?;
    let report = match category {
        DescentCategory::Top => {
            let (v, resolve) = load(path)?;
            let f = io::map_from_value(&v, "$", &resolve)?;
            top_effective_descent_check(&f)
        }
        DescentCategory::Fam => {
            let (v, resolve) = load(path)?;
            let f = io::fam_morphism_from_value(&v, "$", base.as_ref(), &resolve)?;
            fam_report(&f)?
        }
        DescentCategory::Laxcomma => {
            let f = load_morphism(path, base.as_ref())?;
            laxcomma_effective_descent(&f)?
        }
    };
    let ok = report.is_descent.value != Tri::False && report.is_effective.value != Tri::False;
    let mut text = format!(
        "category:  {}\ncriterion: {}\ndescent:   {}\neffective: {}\n",
        report.category.as_str(),
        report.criterion,
        verdict_text(&report.is_descent),
        verdict_text(&report.is_effective)
    );
    for p in &report.preconditions_checked {
        text.push_str(&format!("  checked: {p}\n"));
    }
    for n in &report.notes {
        text.push_str(&format!("  note: {n}\n"));
    }
    Ok(Outcome {
        json: io::descent_report_to_value(&report),
        text,
        ok,
    })
}

fn fam_report(f: &laxtop::famx::FamMorphism) -> Result<DescentReport> {
    let r = fam_effective_descent_check(f, DEFAULT_THETA_CAP)?;
    let t = f.target();
    let descent = match &r.descent.failure {
        None => Verdict::yes(),
        Some(laxtop::famx::FamDescentFailure::NotSurjective { index }) => {
            Verdict::no(Witness::FamIndex {
                index: t.index()[*index].clone(),
            })
        }
        Some(laxtop::famx::FamDescentFailure::Join { index, w }) => Verdict::no(Witness::FamJoin {
            index: t.index()[*index].clone(),
            w: t.base().label(*w).to_string(),
        }),
    };
    let effective = if descent.is_false() {
        descent.clone()
    } else if let Some((index, theta)) = &r.theta_witness {
        Verdict::no(Witness::Theta {
            index: t.index()[*index].clone(),
            theta: theta
                .iter()
                .map(|&x| t.base().label(x).to_string())
                .collect(),
        })
    } else {
        Verdict::yes()
    };
    let mut notes = vec![format!("descent data checked: {}", r.thetas_checked)];
    if r.criterion == FamCriterion::Reconstructed {
        notes.push("non-frame base: splitting test is a reconstructed criterion".into());
    }
    Ok(DescentReport {
        category: Category::Fam,
        is_descent: descent,
        is_effective: effective,
        preconditions_checked: vec!["base is a finite lattice".into()],
        criterion: r.criterion.as_str().to_string(),
        notes,
    })
}

fn expo(
    object: &Path,
    codomain: Option<&Path>,
    base: Option<&Path>,
    seed: u64,
    samples: usize,
) -> Result<Outcome> {
    let base = load_base(base)?;
    let obj = load_object(object, base.as_ref())?;
    let config = ExponentiabilityConfig {
        seed,
        samples,
        ..ExponentiabilityConfig::default()
    };
    let r = exponentiability_report(&obj, &config)?;
    let x = obj.base();
    let witness = r
        .witness
        .as_ref()
        .map(|(a, s)| json!({"point": obj.space().label(*a), "family": x.labels_of(s)}));
    let mut json_out = json!({
        "verdict": r.verdict.as_str(),
        "witness": witness,
        "adjoint_failure": r.adjoint_failure.map(|a| obj.space().label(a).to_string()),
        "sufficient_only": r.sufficient_only,
        "lan_samples": {
            "seed": r.lan_samples.seed,
            "tested": r.lan_samples.tested,
            "commuting": r.lan_samples.commuting,
            "first_failure": r.lan_samples.first_failure,
            "pointwise_checks": r.lan_samples.pointwise_checks,
        },
    });
    let mut text = format!("exponentiable: {}\n", r.verdict.as_str());
    if let Some((a, s)) = &r.witness {
        text.push_str(&format!(
            "  witness: at {} the meet with the join of {{{}}} is not preserved\n",
            obj.space().label(*a),
            x.labels_of(s).join(",")
        ));
    }
    text.push_str(&format!(
        "  Kan extension samples: {}/{} commute (seed {})\n",
        r.lan_samples.commuting, r.lan_samples.tested, r.lan_samples.seed
    ));
    if let Some(c) = codomain {
        let b = load_object(c, base.as_ref())?;
        match exponential_object(&obj, &b) {
            Ok(e) => {
                text.push_str("exponential:\n");
                text.push_str(&render_object(&e.object));
                json_out["exponential"] = io::lax_object_to_value(&e.object);
            }
            Err(e) => {
                text.push_str(&format!("exponential: none ({e})\n"));
                json_out["exponential"] = Value::Null;
            }
        }
    }
    Ok(Outcome {
        json: json_out,
        text,
        ok: r.verdict != ExponentiabilityVerdict::NotExponentiable,
    })
}

fn vietoris(path: &Path) -> Result<Outcome> {
    let space = load_space(path)?;
    let vs = vietoris_space(&space)?;
    let sets: Vec<Vec<String>> = vs.sets.iter().map(|s| space.labels_of(s)).collect();
    let mut text = format!("V{} has {} points (closed sets):\n", space.name(), vs.len());
    for (i, s) in sets.iter().enumerate() {
        text.push_str(&format!(
            "  {:<16} {{{}}}\n",
            vs.space.label(i),
            s.join(",")
        ));
    }
    let mut json_out = json!({
        "space": io::space_to_value(&vs.space),
        "sets": sets,
    });
    let mut ok = true;
    match vietoris_monad(&space) {
        Ok(m) => {
            let assoc = match m.associativity_law {
                Some(b) => json!(b),
                None => json!("skipped"),
            };
            ok &= m.left_unit_law && m.right_unit_law && m.associativity_law != Some(false);
            text.push_str(&format!(
                "monad laws: left unit {}, right unit {}, associativity {}\n",
                yes_no(m.left_unit_law),
                yes_no(m.right_unit_law),
                m.associativity_law.map_or("skipped", yes_no)
            ));
            json_out["monad"] = json!({
                "left_unit_law": m.left_unit_law,
                "right_unit_law": m.right_unit_law,
                "associativity_law": assoc,
            });
        }
        Err(laxtop::Error::CapExceeded(why)) => {
            text.push_str(&format!("monad laws: skipped ({why})\n"));
            json_out["monad"] = json!({"skipped": why});
        }
        Err(e) => return Err(e.into()),
    }
    match vietoris_algebra_check(&space) {
        Ok(a) => {
            text.push_str(&format!("algebra via infima: {}\n", yes_no(a.is_algebra)));
            json_out["algebra"] = json!({
                "is_algebra": a.is_algebra,
                "continuous": a.continuous,
                "unit_law": a.unit_law,
                "associativity_law": a.associativity_law,
            });
        }
        Err(e) => {
            text.push_str(&format!("algebra via infima: no ({e})\n"));
            json_out["algebra"] = json!({"is_algebra": false, "reason": e.to_string()});
        }
    }
    Ok(Outcome {
        json: json_out,
        text,
        ok,
    })
}

fn enumerate(n: usize, kind: KindArg, labeled: bool) -> Result<Outcome> {
    let kind = match kind {
        KindArg::Poset => OrderKind::Poset,
        KindArg::Preorder => OrderKind::Preorder,
    };
    let mode = if labeled {
        Mode::Labeled
    } else {
        Mode::Unlabeled
    };
    let spaces = enumerate_orders(n, kind, mode, DEFAULT_POINT_CAP)?;
    let mut text = format!("{} order(s) on {n} point(s)\n", spaces.len());
    for s in &spaces {
        let pairs: Vec<String> = s
            .order_pairs()
            .into_iter()
            .filter(|(x, y)| x != y)
            .map(|(x, y)| format!("{}<={}", s.label(x), s.label(y)))
            .collect();
        text.push_str(&format!("  {:<8} {}\n", s.name(), pairs.join(" ")));
    }
    Ok(Outcome {
        json: json!({
            "count": spaces.len(),
            "spaces": spaces.iter().map(io::space_to_value).collect::<Vec<_>>(),
        }),
        text,
        ok: true,
    })
}

/// `LAXTOP_CAP` overrides the configured oracle budget.
fn oracle_cap(default: usize) -> Result<usize> {
    match std::env::var("LAXTOP_CAP") {
        Ok(v) => {
            let cap: usize = v.parse().context("LAXTOP_CAP must be a positive integer")?;
            if cap == 0 {
                bail!("LAXTOP_CAP must be a positive integer");
            }
            Ok(cap)
        }
        Err(_) => Ok(default),
    }
}

fn paper_check(
    max_points: usize,
    cap: usize,
    seed: u64,
    suites: &[String],
    list: bool,
) -> Result<Outcome> {
    if list {
        let text: String = SUITES
            .iter()
            .map(|(n, d)| format!("{n:<30} {d}\n"))
            .collect();
        let json_out = json!(SUITES
            .iter()
            .map(|(n, d)| json!({"name": n, "description": d}))
            .collect::<Vec<_>>());
        return Ok(Outcome {
            json: json_out,
            text,
            ok: true,
        });
    }
    let config = HarnessConfig {
        max_points,
        oracle_cap: oracle_cap(cap)?,
        seed,
        suites: suites.to_vec(),
    };
    let report = run_harness(&config)?;
    let mut text = String::new();
    for s in &report.suites {
        text.push_str(&format!(
            "{:<4} {:<30} {:>7}/{:<7}\n",
            if s.ok() { "ok" } else { "FAIL" },
            s.name,
            s.passed,
            s.instances
        ));
        if let Some(e) = &s.error {
            text.push_str(&format!("       error: {e}\n"));
        }
        for w in &s.witnesses {
            text.push_str(&format!("       witness: {w}\n"));
        }
    }
    text.push_str(if report.all_passed() {
        "all suites passed\n"
    } else {
        "some suites failed\n"
    });
    Ok(Outcome {
        json: report.to_value(),
        text,
        ok: report.all_passed(),
    })
}
