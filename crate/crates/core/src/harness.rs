//! Exhaustive verification suites.
//!
//! Each suite sweeps a finite universe of spaces, objects or morphisms and
//! counts how many instances satisfy a property. Suites run in parallel and
//! the report is deterministic for a fixed configuration.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::descent::{
    all_w_failure, filtration_verdict, forgetful_preservation_check, frame_verdict,
    join_cover_failure, lax_pullback, regular_epi_to_point, top_descent_check,
    top_effective_descent_check, top_level_lifting_in, Lifts, Witness,
};
use crate::enumerate::{
    brute_force_unlabeled, enumerate_posets, lattices_up_to, posets_up_to, preorders_up_to, Mode,
    OrderKind, DEFAULT_POINT_CAP,
};
use crate::error::{Error, Result};
use crate::famx::{
    fam_descent_in, fam_effective_descent_check, fam_pullback, to_fam, to_fam_morphism,
    FamMorphism, FamObject,
};
use crate::finspace::{
    enumerate_cmaps, for_each_cmap_table, is_quotient_map, sober_report, sum_space, CMap,
    FiniteSpace,
};
use crate::fixtures::{antichain2, diamond, div12, m3};
use crate::laxcomma::{
    exponentiability_report, exponential_object, function_space, lan_by_neighbourhoods,
    lan_by_order, lax_coequalizer, lax_failure, lax_product, verify_universal_property,
    ExponentiabilityConfig, ExponentiabilityVerdict, LaxMorphism, LaxObject, OracleConfig,
    UniversalInstance,
};
use crate::order::{
    distributivity_report, lattice_report, order_to_space, Lattice, OrderTopologyKind,
};
use crate::vietoris::{vietoris_algebra_check, vietoris_monad};

pub const FORMAT_VERSION: u32 = 1;
const MAX_WITNESSES: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarnessConfig {
    /// Largest space size swept by the suites that scale with it.
    pub max_points: usize,
    /// Budget of candidate maps per oracle run.
    pub oracle_cap: usize,
    /// Seed for sampled checks.
    pub seed: u64,
    /// Suites to run; empty means all.
    pub suites: Vec<String>,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            max_points: 4,
            oracle_cap: 1_000_000,
            seed: 0,
            suites: Vec::new(),
        }
    }
}

impl HarnessConfig {
    fn validate(&self) -> Result<()> {
        if self.max_points == 0 || self.oracle_cap == 0 {
            return Err(Error::Schema {
                field: "config".into(),
                message: "max_points and oracle_cap must be positive".into(),
            });
        }
        if let Some(bad) = self.suites.iter().find(|s| suite_fn(s).is_none()) {
            return Err(Error::Schema {
                field: "suites".into(),
                message: format!("unknown suite `{bad}`"),
            });
        }
        Ok(())
    }

    fn oracle(&self) -> OracleConfig {
        OracleConfig {
            max_points: 2,
            budget: self.oracle_cap,
        }
    }

    /// `max_points` clamped to a suite's ceiling.
    fn points(&self, ceiling: usize) -> usize {
        self.max_points.min(ceiling)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: String,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    /// The first few failing instances.
    pub witnesses: Vec<String>,
    /// Set when the suite stopped on an error.
    pub error: Option<String>,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.error.is_none()
    }

    pub fn to_value(&self) -> Value {
        json!({
            "name": self.name,
            "instances": self.instances,
            "passed": self.passed,
            "failed": self.failed,
            "witnesses": self.witnesses,
            "error": self.error,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub format_version: u32,
    pub config: HarnessConfig,
    pub suites: Vec<SuiteResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::ok)
    }

    pub fn to_value(&self) -> Value {
        json!({
            "format_version": self.format_version,
            "config": {
                "max_points": self.config.max_points,
                "oracle_cap": self.config.oracle_cap,
                "seed": self.config.seed,
                "suites": self.config.suites,
            },
            "all_passed": self.all_passed(),
            "suites": self.suites.iter().map(SuiteResult::to_value).collect::<Vec<_>>(),
        })
    }
}

#[derive(Default)]
struct Tally {
    instances: usize,
    failed: usize,
    witnesses: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failed += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.failed += other.failed;
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
        self
    }
}

/// Runs `f` on every item in parallel and merges the tallies in item order.
fn sweep<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<Tally> + Sync) -> Result<Tally> {
    let parts: Vec<Result<Tally>> = items.par_iter().map(&f).collect();
    let mut total = Tally::default();
    for p in parts {
        total = total.merge(p?);
    }
    Ok(total)
}

type SuiteFn = fn(&HarnessConfig) -> Result<Tally>;

/// Suite names with a one-line description, in run order.
pub const SUITES: &[(&str, &str)] = &[
    (
        "poset-counts",
        "unlabeled poset counts agree with brute-force dedup",
    ),
    ("finite-sober", "every finite T0 space is sober"),
    (
        "complete-lattice-equivalence",
        "complete lattice iff sober with finite meets iff Vietoris algebra",
    ),
    (
        "vietoris-monad",
        "unit and multiplication laws of the lower Vietoris monad",
    ),
    (
        "product-oracle",
        "lax products satisfy their universal property",
    ),
    (
        "initial-lift-oracle",
        "initial lifts of small cones are initial",
    ),
    (
        "coequalizer-oracle",
        "lax coequalisers are universal and both Kan formulas agree",
    ),
    (
        "exponential-mates",
        "currying is a bijection of lax hom-sets",
    ),
    (
        "exponential-point-and-power",
        "exponentials of (X,1) by (1,x) and (I,top)",
    ),
    (
        "exponential-underlying-space",
        "exponentials live on the monotone-map poset",
    ),
    (
        "exponentiability",
        "join-preservation verdicts match the oracle",
    ),
    (
        "descent-separation",
        "pair lifting versus 2-chain lifting in Top",
    ),
    (
        "effective-implies-descent",
        "effective descent maps are descent maps and quotients",
    ),
    (
        "sierpinski-descent",
        "over S: Top effective descent plus lifting in the closed parts",
    ),
    (
        "all-w-join-cover-coherence",
        "all-w lifting iff join cover over frame bases",
    ),
    (
        "filtration-descent",
        "filtration criterion agrees with the join cover over C3",
    ),
    (
        "forgetful-preservation",
        "effective lax maps stay effective in Top and descent in Fam",
    ),
    (
        "fam-frame-shortcut",
        "over a frame, Fam effective descent equals descent",
    ),
    (
        "fam-pullback-stability",
        "Fam descent maps are stable under pullback",
    ),
    (
        "lax-pullback-meets",
        "lax pullbacks carry the meet of structure maps",
    ),
    (
        "lower-topology-lattices",
        "lattices with the lower topology are complete and compatible",
    ),
];

fn suite_fn(name: &str) -> Option<SuiteFn> {
    Some(match name {
        "poset-counts" => poset_counts,
        "finite-sober" => finite_sober,
        "complete-lattice-equivalence" => complete_lattice_equivalence,
        "vietoris-monad" => vietoris_monad_laws,
        "product-oracle" => product_oracle,
        "initial-lift-oracle" => initial_lift_oracle,
        "coequalizer-oracle" => coequalizer_oracle,
        "exponential-mates" => exponential_mates,
        "exponential-point-and-power" => exponential_point_and_power,
        "exponential-underlying-space" => exponential_underlying_space,
        "exponentiability" => exponentiability,
        "descent-separation" => descent_separation,
        "effective-implies-descent" => effective_implies_descent,
        "sierpinski-descent" => sierpinski_descent,
        "all-w-join-cover-coherence" => all_w_join_cover_coherence,
        "filtration-descent" => filtration_descent,
        "forgetful-preservation" => forgetful_preservation,
        "fam-frame-shortcut" => fam_frame_shortcut,
        "fam-pullback-stability" => fam_pullback_stability,
        "lax-pullback-meets" => lax_pullback_meets,
        "lower-topology-lattices" => lower_topology_lattices,
        _ => return None,
    })
}

/// Runs a single suite. Errors inside the suite become report content.
pub fn run_suite(name: &str, config: &HarnessConfig) -> Result<SuiteResult> {
    let f = suite_fn(name).ok_or_else(|| Error::Schema {
        field: "suites".into(),
        message: format!("unknown suite `{name}`"),
    })?;
    Ok(match f(config) {
        Ok(t) => SuiteResult {
            name: name.to_string(),
            instances: t.instances,
            passed: t.instances - t.failed,
            failed: t.failed,
            witnesses: t.witnesses,
            error: None,
        },
        Err(e) => SuiteResult {
            name: name.to_string(),
            instances: 0,
            passed: 0,
            failed: 0,
            witnesses: Vec::new(),
            error: Some(e.to_string()),
        },
    })
}

/// Runs the configured suites (all by default).
pub fn run_harness(config: &HarnessConfig) -> Result<Report> {
    config.validate()?;
    let names: Vec<&str> = if config.suites.is_empty() {
        SUITES.iter().map(|(n, _)| *n).collect()
    } else {
        SUITES
            .iter()
            .map(|(n, _)| *n)
            .filter(|n| config.suites.iter().any(|s| s == n))
            .collect()
    };
    let suites = names
        .par_iter()
        .map(|n| run_suite(n, config))
        .collect::<Result<Vec<_>>>()?;
    Ok(Report {
        format_version: FORMAT_VERSION,
        config: config.clone(),
        suites,
    })
}

// ---------------------------------------------------------------------------
// Universes

/// Every object `(A, α)` with `A` drawn from `spaces`.
pub fn lax_objects(base: &FiniteSpace, spaces: &[FiniteSpace]) -> Vec<LaxObject> {
    spaces
        .iter()
        .flat_map(|s| {
            enumerate_cmaps(s, base)
                .into_iter()
                .map(LaxObject::from_map)
        })
        .collect()
}

/// Every lax morphism `a → b`.
pub fn lax_morphisms(a: &LaxObject, b: &LaxObject) -> Vec<LaxMorphism> {
    let mut out = Vec::new();
    for_each_cmap_table(a.space(), b.space(), usize::MAX, |t| {
        if lax_failure(t, a, b).is_none() {
            let map = CMap::new_unchecked(a.space().clone(), b.space().clone(), t.to_vec());
            out.push(LaxMorphism::new_unchecked(a.clone(), b.clone(), map));
        }
        true
    })
    .expect("unbounded budget");
    out
}

/// Every lax morphism between objects from `objects`, optionally only the
/// surjective ones.
fn all_morphisms(objects: &[LaxObject], surjective: bool) -> Vec<LaxMorphism> {
    let mut out = Vec::new();
    for a in objects {
        for b in objects {
            if surjective && a.len() < b.len() {
                continue;
            }
            out.extend(
                lax_morphisms(a, b)
                    .into_iter()
                    .filter(|f| !surjective || f.map().is_surjective()),
            );
        }
    }
    out
}

fn describe_morphism(f: &LaxMorphism) -> String {
    format!(
        "A={:?} alpha={:?} B={:?} beta={:?} f={:?}",
        f.source().space().order_pairs(),
        f.source().alpha().table(),
        f.target().space().order_pairs(),
        f.target().alpha().table(),
        f.map().table()
    )
}

fn describe_object(o: &LaxObject) -> String {
    format!(
        "space={:?} alpha={:?}",
        o.space().order_pairs(),
        o.alpha().table()
    )
}

fn frame_bases(max: usize) -> Result<Vec<FiniteSpace>> {
    let mut out = Vec::new();
    for l in lattices_up_to(max) {
        if l.is_empty() {
            continue;
        }
        if distributivity_report(&l)?.is_frame {
            out.push(l);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Spaces, lattices, Vietoris

const POSET_COUNTS: [usize; 5] = [1, 1, 2, 5, 16];

fn poset_counts(c: &HarnessConfig) -> Result<Tally> {
    let mut t = Tally::default();
    for n in 0..=c.points(4) {
        let fast = enumerate_posets(n, Mode::Unlabeled)?.len();
        let brute = brute_force_unlabeled(n, OrderKind::Poset, DEFAULT_POINT_CAP)?.len();
        t.record(fast == brute && fast == POSET_COUNTS[n], || {
            format!("n={n}: canonical {fast}, brute force {brute}")
        });
    }
    Ok(t)
}

fn finite_sober(c: &HarnessConfig) -> Result<Tally> {
    sweep(&posets_up_to(c.max_points), |p| {
        let mut t = Tally::default();
        let r = sober_report(p)?;
        t.record(r.is_sober, || format!("{:?}", p.order_pairs()));
        Ok(t)
    })
}

fn complete_lattice_equivalence(c: &HarnessConfig) -> Result<Tally> {
    sweep(&posets_up_to(c.max_points), |p| {
        let mut t = Tally::default();
        let lr = lattice_report(p)?;
        let sober = sober_report(p)?.is_sober;
        let algebra = match vietoris_algebra_check(p) {
            Ok(r) => r.is_algebra,
            Err(Error::MeetsMissing(_)) => false,
            Err(e) => return Err(e),
        };
        let complete = lr.is_complete_lattice;
        let meets = sober && lr.has_finite_meets;
        t.record(complete == meets && complete == algebra, || {
            format!(
                "{:?}: complete={complete} sober+meets={meets} algebra={algebra}",
                p.order_pairs()
            )
        });
        Ok(t)
    })
}

fn vietoris_monad_laws(c: &HarnessConfig) -> Result<Tally> {
    sweep(&posets_up_to(c.points(3)), |p| {
        let mut t = Tally::default();
        let m = vietoris_monad(p)?;
        t.record(
            m.left_unit_law && m.right_unit_law && m.associativity_law != Some(false),
            || format!("{:?}", p.order_pairs()),
        );
        Ok(t)
    })
}

fn lower_topology_lattices(c: &HarnessConfig) -> Result<Tally> {
    sweep(&lattices_up_to(c.points(4) + 1), |l| {
        let mut t = Tally::default();
        if l.is_empty() {
            return Ok(t);
        }
        let lower = order_to_space(l, OrderTopologyKind::Lower)?;
        let complete = lattice_report(&lower.space)?.is_complete_lattice;
        let scp = crate::descent::scp_meet_compat_check(&lower.space)?;
        t.record(complete && scp, || format!("{:?}", l.order_pairs()));
        Ok(t)
    })
}

// ---------------------------------------------------------------------------
// Limits and colimits

fn product_oracle(c: &HarnessConfig) -> Result<Tally> {
    let oracle = c.oracle();
    let mut instances = Vec::new();
    for base in lattices_up_to(c.points(3)) {
        if base.is_empty() {
            continue;
        }
        let objs = lax_objects(&base, &preorders_up_to(1));
        instances.push((base.clone(), Vec::new()));
        for (i, a) in objs.iter().enumerate() {
            instances.push((base.clone(), vec![a.clone()]));
            for b in &objs[i..] {
                instances.push((base.clone(), vec![a.clone(), b.clone()]));
            }
        }
    }
    let mut t = sweep(&instances, |(base, factors)| {
        let mut t = Tally::default();
        let r = verify_universal_property(
            &UniversalInstance::Product {
                base: base.clone(),
                factors: factors.clone(),
            },
            &oracle,
        )?;
        t.record(r.passed, || format!("{factors:?}: {:?}", r.counterexample));
        Ok(t)
    })?;
    // Without binary meets there is no product of the two points.
    let x = antichain2();
    let pts = [LaxObject::point(&x, 0), LaxObject::point(&x, 1)];
    let missing = matches!(lax_product(&x, &pts), Err(Error::MeetsMissing(_)));
    t.record(missing, || {
        "antichain product did not report missing meets".into()
    });
    Ok(t)
}

fn initial_lift_oracle(c: &HarnessConfig) -> Result<Tally> {
    let oracle = c.oracle();
    let spaces = preorders_up_to(2);
    let mut t = Tally::default();
    for base in lattices_up_to(c.points(4)) {
        if base.is_empty() {
            continue;
        }
        let objs = lax_objects(&base, &spaces);
        for a in &spaces {
            let legs: Vec<(CMap, LaxObject)> = objs
                .iter()
                .flat_map(|o| {
                    enumerate_cmaps(a, o.space())
                        .into_iter()
                        .map(|m| (m, o.clone()))
                })
                .collect();
            let mut cones: Vec<Vec<(CMap, LaxObject)>> = vec![Vec::new()];
            for (i, l) in legs.iter().enumerate() {
                cones.push(vec![l.clone()]);
                for r in &legs[i..] {
                    cones.push(vec![l.clone(), r.clone()]);
                }
            }
            let part = sweep(&cones, |cone| {
                let mut t = Tally::default();
                let r = verify_universal_property(
                    &UniversalInstance::InitialLift {
                        space: a.clone(),
                        base: base.clone(),
                        cone: cone.clone(),
                    },
                    &oracle,
                )?;
                t.record(r.passed, || {
                    format!(
                        "base {} cone of {} legs: {:?}",
                        base.name(),
                        cone.len(),
                        r.counterexample
                    )
                });
                Ok(t)
            })?;
            t = t.merge(part);
        }
    }
    // A base without binary meets has no products.
    let x = antichain2();
    let pts = [LaxObject::point(&x, 0), LaxObject::point(&x, 1)];
    let missing = matches!(lax_product(&x, &pts), Err(Error::MeetsMissing(_)));
    t.record(missing, || {
        "antichain product did not report missing meets".into()
    });
    Ok(t)
}

fn coequalizer_oracle(c: &HarnessConfig) -> Result<Tally> {
    let oracle = c.oracle();
    let spaces = preorders_up_to(2);
    let mut t = Tally::default();
    for base in [FiniteSpace::chain(3), div12()] {
        let lat = Lattice::new(&base)?;
        let objs = lax_objects(&base, &spaces);
        let mut pairs = Vec::new();
        for a in &objs {
            for b in &objs {
                let homs = lax_morphisms(a, b);
                for (i, f) in homs.iter().enumerate() {
                    for g in &homs[i..] {
                        pairs.push((f.clone(), g.clone()));
                    }
                }
            }
        }
        let part = sweep(&pairs, |(f, g)| {
            let mut t = Tally::default();
            let r = verify_universal_property(
                &UniversalInstance::Coequalizer {
                    f: f.clone(),
                    g: g.clone(),
                },
                &oracle,
            )?;
            t.record(r.passed, || {
                format!(
                    "{} / g={:?}: {:?}",
                    describe_morphism(f),
                    g.map().table(),
                    r.counterexample
                )
            });
            let q = lax_coequalizer(f, g)?;
            let beta = f.target().alpha();
            let by_nbhd = lan_by_neighbourhoods(&lat, beta, q.quotient.map());
            let by_order = lan_by_order(&lat, beta, q.quotient.map());
            t.record(
                by_nbhd == by_order && by_order.as_slice() == q.object.alpha().table(),
                || format!("Kan formulas differ on {}", describe_morphism(f)),
            );
            Ok(t)
        })?;
        t = t.merge(part);
    }
    Ok(t)
}

fn lax_pullback_meets(_: &HarnessConfig) -> Result<Tally> {
    let mut t = Tally::default();
    for base in [FiniteSpace::chain(3), diamond()] {
        let lat = Lattice::new(&base)?;
        let small = lax_objects(&base, &preorders_up_to(2));
        let targets = lax_objects(&base, &preorders_up_to(1));
        let mut cospans = Vec::new();
        for c in &targets {
            let into: Vec<LaxMorphism> = small.iter().flat_map(|a| lax_morphisms(a, c)).collect();
            for (i, f) in into.iter().enumerate() {
                for g in &into[i..] {
                    cospans.push((f.clone(), g.clone()));
                }
            }
        }
        let part = sweep(&cospans, |(f, g)| {
            let mut t = Tally::default();
            let p = lax_pullback(f, g)?;
            let meets = p.object.space().points().all(|w| {
                let (i, j) = (p.left.apply(w), p.right.apply(w));
                p.object.value(w) == lat.meet(f.source().value(i), g.source().value(j))
            });
            let fam = fam_pullback(&to_fam_morphism(f), &to_fam_morphism(g))?;
            let mut lhs = to_fam(&p.object).values().to_vec();
            let mut rhs = fam.object.values().to_vec();
            lhs.sort_unstable();
            rhs.sort_unstable();
            t.record(meets && lhs == rhs, || describe_morphism(f));
            Ok(t)
        })?;
        t = t.merge(part);
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// Exponentials

fn exponential_mates(c: &HarnessConfig) -> Result<Tally> {
    let oracle = c.oracle();
    let mut t = Tally::default();
    for base in [FiniteSpace::sierpinski(), FiniteSpace::chain(3)] {
        let objs = lax_objects(&base, &preorders_up_to(2));
        let pairs: Vec<(LaxObject, LaxObject)> = objs
            .iter()
            .flat_map(|a| objs.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        let part = sweep(&pairs, |(a, b)| {
            let mut t = Tally::default();
            let r = verify_universal_property(
                &UniversalInstance::Exponential {
                    exponent: a.clone(),
                    codomain: b.clone(),
                },
                &oracle,
            )?;
            t.record(r.passed, || {
                format!(
                    "A: {} B: {}: {:?}",
                    describe_object(a),
                    describe_object(b),
                    r.counterexample
                )
            });
            Ok(t)
        })?;
        t = t.merge(part);
    }
    Ok(t)
}

fn exponential_point_and_power(_: &HarnessConfig) -> Result<Tally> {
    let mut t = Tally::default();
    for base in [FiniteSpace::sierpinski(), FiniteSpace::chain(3), div12()] {
        let lat = Lattice::new(&base)?;
        let generic = LaxObject::generic(&base);
        for x in base.points() {
            let e = exponential_object(&LaxObject::point(&base, x), &generic)?;
            let ok = e
                .maps
                .iter()
                .enumerate()
                .all(|(i, h)| Some(e.object.value(i)) == lat.implies(x, h[0]));
            t.record(ok, || {
                format!("{}: (1,{}) exponent", base.name(), base.label(x))
            });
        }
        for n in 0..=2 {
            let labels: Vec<String> = (0..n).map(|i| format!("i{i}")).collect();
            let i_space = FiniteSpace::discrete("I", &labels)?;
            let top = LaxObject::constant(&i_space, &base, lat.top());
            let e = exponential_object(&top, &generic)?;
            let meets = e
                .maps
                .iter()
                .enumerate()
                .all(|(k, h)| e.object.value(k) == lat.meet_all(h.iter().copied()));
            let space = e.object.space();
            let pointwise = space.points().all(|p| {
                space
                    .points()
                    .all(|q| space.le(p, q) == (0..n).all(|i| base.le(e.maps[p][i], e.maps[q][i])))
            });
            t.record(
                meets && pointwise && e.maps.len() == base.len().pow(n as u32),
                || format!("{}: (I,top) exponent with |I|={n}", base.name()),
            );
        }
    }
    Ok(t)
}

fn exponential_underlying_space(_: &HarnessConfig) -> Result<Tally> {
    let base = FiniteSpace::chain(3);
    let objs = lax_objects(&base, &preorders_up_to(2));
    let mut t = Tally::default();
    for a in &objs {
        for b in &objs {
            let e = exponential_object(a, b)?;
            let (space, maps) = function_space(a.space(), b.space());
            t.record(
                maps == e.maps && space.natural_order() == e.object.space().natural_order(),
                || format!("A: {} B: {}", describe_object(a), describe_object(b)),
            );
        }
    }
    Ok(t)
}

fn exponentiability(c: &HarnessConfig) -> Result<Tally> {
    let config = ExponentiabilityConfig {
        seed: c.seed,
        ..ExponentiabilityConfig::default()
    };
    let mut t = Tally::default();

    // M3: (1,a) is not exponentiable, refuted by a ∧ (b ∨ c).
    let x = m3();
    let (a, b, cc) = (x.index_of("a")?, x.index_of("b")?, x.index_of("c")?);
    let r = exponentiability_report(&LaxObject::point(&x, a), &config)?;
    t.record(
        r.verdict == ExponentiabilityVerdict::NotExponentiable
            && r.witness == Some((0, vec![b, cc])),
        || format!("M3 (1,a): {:?} {:?}", r.verdict, r.witness),
    );
    let oracle = verify_universal_property(
        &UniversalInstance::Exponential {
            exponent: LaxObject::point(&x, a),
            codomain: LaxObject::generic(&x),
        },
        &c.oracle(),
    )?;
    let all_refuted = oracle.candidates_refuted.is_some_and(|(k, n)| k == n)
        && oracle.surviving_candidate.is_none();
    t.record(!oracle.passed && all_refuted, || {
        format!("M3 (1,a) oracle: {:?}", oracle.candidates_refuted)
    });

    // Over a frame every object is exponentiable.
    for base in frame_bases(c.points(4))? {
        let objs = lax_objects(&base, &preorders_up_to(2));
        let part = sweep(&objs, |o| {
            let mut t = Tally::default();
            let r = exponentiability_report(o, &config)?;
            t.record(
                r.verdict == ExponentiabilityVerdict::Exponentiable
                    && r.lan_samples.commuting == r.lan_samples.tested,
                || format!("{}: {}", base.name(), describe_object(o)),
            );
            Ok(t)
        })?;
        t = t.merge(part);
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// Descent

/// Three 2-chains covering the pairs of `0 < 1 < 2`, mapped onto the chain.
pub fn three_chains_cover() -> CMap {
    let c2 = FiniteSpace::chain(2);
    let sum = sum_space(&[c2.clone(), c2.clone(), c2]);
    CMap::new(sum.space, FiniteSpace::chain(3), vec![0, 1, 1, 2, 0, 2])
        .expect("each chain maps monotonically")
}

/// The sum of one 3-chain per chain `b0 <= b1 <= b2` of `b`, mapped onto `b`.
pub fn chain_cover(b: &FiniteSpace) -> Result<CMap> {
    let mut table = Vec::new();
    let mut parts = Vec::new();
    for b0 in b.points() {
        for b1 in b.up(b0) {
            for b2 in b.up(b1) {
                parts.push(FiniteSpace::chain(3));
                table.extend([b0, b1, b2]);
            }
        }
    }
    let sum = sum_space(&parts);
    CMap::new(sum.space, b.clone(), table)
}

fn descent_separation(c: &HarnessConfig) -> Result<Tally> {
    let mut t = Tally::default();
    let r = top_effective_descent_check(&three_chains_cover());
    let chain = Witness::Chain {
        points: vec!["0".into(), "1".into(), "2".into()],
    };
    t.record(
        r.is_descent.is_true()
            && r.is_effective.is_false()
            && r.is_effective.witness == Some(chain),
        || format!("three 2-chains: {r:?}"),
    );
    for b in preorders_up_to(c.points(3)) {
        let cover = chain_cover(&b)?;
        let r = top_effective_descent_check(&cover);
        t.record(r.is_effective.is_true(), || {
            format!("chain cover of {:?}", b.order_pairs())
        });
    }
    Ok(t)
}

fn effective_implies_descent(c: &HarnessConfig) -> Result<Tally> {
    let spaces = preorders_up_to(c.points(4));
    let pairs: Vec<(&FiniteSpace, &FiniteSpace)> = spaces
        .iter()
        .flat_map(|a| spaces.iter().map(move |b| (a, b)))
        .collect();
    sweep(&pairs, |(a, b)| {
        let mut t = Tally::default();
        for f in enumerate_cmaps(a, b) {
            let d = top_descent_check(&f);
            let e = top_effective_descent_check(&f);
            let ok = (!e.is_effective.is_true() || e.is_descent.is_true())
                && (!d.is_descent.is_true() || is_quotient_map(&f));
            t.record(ok, || {
                format!(
                    "{:?} -> {:?}: {:?}",
                    a.order_pairs(),
                    b.order_pairs(),
                    f.table()
                )
            });
        }
        Ok(t)
    })
}

fn sierpinski_descent(c: &HarnessConfig) -> Result<Tally> {
    let s = FiniteSpace::sierpinski();
    let lat = Lattice::new(&s)?;
    let objs = lax_objects(&s, &preorders_up_to(c.points(3)));
    sweep(&objs, |a| {
        let mut t = Tally::default();
        for b in &objs {
            for f in lax_morphisms(a, b) {
                let cover = frame_verdict(&lat, &f).is_true();
                let top = top_effective_descent_check(f.map()).is_effective.is_true();
                let closed = top_level_lifting_in(&lat, &f).is_true();
                t.record(cover == (top && closed), || describe_morphism(&f));
            }
        }
        Ok(t)
    })
}

fn all_w_join_cover_coherence(c: &HarnessConfig) -> Result<Tally> {
    let spaces = preorders_up_to(c.points(3));
    let mut t = Tally::default();
    for base in frame_bases(c.points(4))? {
        let lat = Lattice::new(&base)?;
        let objs = lax_objects(&base, &spaces);
        let part = sweep(&objs, |a| {
            let mut t = Tally::default();
            for b in objs.iter().filter(|b| b.len() <= a.len()) {
                for f in lax_morphisms(a, b) {
                    if !f.map().is_surjective()
                        || !fam_descent_in(&lat, &to_fam_morphism(&f)).is_descent
                    {
                        continue;
                    }
                    let lifts = Lifts::new(f.map());
                    let all_w = all_w_failure(&lat, &f, &lifts).is_none();
                    let cover = join_cover_failure(&lat, &f, &lifts).is_none();
                    t.record(all_w == cover, || {
                        format!("{}: {}", base.name(), describe_morphism(&f))
                    });
                }
            }
            Ok(t)
        })?;
        t = t.merge(part);
    }
    Ok(t)
}

fn filtration_descent(c: &HarnessConfig) -> Result<Tally> {
    let base = FiniteSpace::chain(3);
    let lat = Lattice::new(&base)?;
    let dist = distributivity_report(&base)?;
    let objs = lax_objects(&base, &preorders_up_to(c.points(3)));
    sweep(&objs, |a| {
        let mut t = Tally::default();
        for b in &objs {
            for f in lax_morphisms(a, b) {
                let levels = filtration_verdict(&lat, &dist, &f).value;
                let cover = frame_verdict(&lat, &f).value;
                t.record(levels == cover, || describe_morphism(&f));
            }
        }
        Ok(t)
    })
}

fn forgetful_preservation(_: &HarnessConfig) -> Result<Tally> {
    let mut t = Tally::default();
    for base in [
        FiniteSpace::sierpinski(),
        FiniteSpace::chain(3),
        diamond(),
        m3(),
    ] {
        let lat = Lattice::new(&base)?;
        let objs = lax_objects(&base, &preorders_up_to(2));
        let morphisms = all_morphisms(&objs, true);
        let part = sweep(&morphisms, |f| {
            let mut t = Tally::default();
            let r = forgetful_preservation_check(f)?;
            t.record(r.holds, || {
                format!("{}: {}", base.name(), describe_morphism(f))
            });
            Ok(t)
        })?;
        t = t.merge(part);
        for o in objs.iter().filter(|o| !o.is_empty()) {
            let sup = lat.join_all(o.alpha().table().iter().copied());
            for g in base.points() {
                let regular = regular_epi_to_point(o, g);
                let ok = match regular {
                    Ok(r) => r == (g == sup),
                    Err(Error::NotLax(_)) => !base.le(sup, g),
                    Err(e) => return Err(e),
                };
                t.record(ok, || {
                    format!(
                        "{}: regular epi onto ({}) from {}",
                        base.name(),
                        base.label(g),
                        describe_object(o)
                    )
                });
            }
        }
    }
    Ok(t)
}

/// Every family of size at most `n` over `base`.
fn families(base: &FiniteSpace, n: usize) -> Vec<FamObject> {
    let mut out = Vec::new();
    for size in 0..=n {
        let d = FiniteSpace::discrete("I", &(0..size).map(|i| i.to_string()).collect::<Vec<_>>())
            .expect("distinct labels");
        for m in enumerate_cmaps(&d, base) {
            out.push(FamObject::from_values(base, m.table().to_vec()).expect("valid values"));
        }
    }
    out
}

fn fam_morphisms(a: &FamObject, b: &FamObject) -> Vec<FamMorphism> {
    let n = a.len();
    let mut out = Vec::new();
    let total = b.len().checked_pow(n as u32).unwrap_or(0);
    if b.is_empty() && n > 0 {
        return out;
    }
    for code in 0..total.max(1) {
        let mut c = code;
        let map: Vec<usize> = (0..n)
            .map(|_| {
                let j = c % b.len().max(1);
                c /= b.len().max(1);
                j
            })
            .collect();
        if let Ok(f) = FamMorphism::new(a.clone(), b.clone(), map) {
            out.push(f);
        }
    }
    out
}

fn fam_frame_shortcut(_: &HarnessConfig) -> Result<Tally> {
    let mut t = Tally::default();
    for base in [FiniteSpace::sierpinski(), FiniteSpace::chain(3)] {
        let fams = families(&base, 3);
        for a in &fams {
            for b in fams.iter().filter(|b| b.len() <= a.len()) {
                for f in fam_morphisms(a, b) {
                    let r = fam_effective_descent_check(&f, crate::famx::DEFAULT_THETA_CAP)?;
                    t.record(r.is_effective == r.descent.is_descent, || {
                        format!(
                            "{}: {:?} -> {:?} via {:?}",
                            base.name(),
                            a.values(),
                            b.values(),
                            f.map()
                        )
                    });
                }
            }
        }
    }
    Ok(t)
}

fn fam_pullback_stability(_: &HarnessConfig) -> Result<Tally> {
    let mut t = Tally::default();
    for base in [FiniteSpace::chain(3), m3()] {
        let lat = Lattice::new(&base)?;
        let fams = families(&base, 2);
        for k in &fams {
            let into: Vec<FamMorphism> = fams.iter().flat_map(|a| fam_morphisms(a, k)).collect();
            for f in into.iter().filter(|f| fam_descent_in(&lat, f).is_descent) {
                for g in &into {
                    let p = fam_pullback(f, g)?;
                    t.record(fam_descent_in(&lat, &p.right).is_descent, || {
                        format!("{}: f={:?} g={:?}", base.name(), f.map(), g.map())
                    });
                }
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> HarnessConfig {
        HarnessConfig {
            max_points: 2,
            ..HarnessConfig::default()
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        let c = HarnessConfig {
            suites: vec!["no-such-suite".into()],
            ..HarnessConfig::default()
        };
        assert!(matches!(run_harness(&c), Err(Error::Schema { .. })));
        assert!(run_suite("no-such-suite", &c).is_err());
    }

    #[test]
    fn filter_selects_one_suite() {
        let c = HarnessConfig {
            suites: vec!["sierpinski-descent".into()],
            ..small()
        };
        let r = run_harness(&c).unwrap();
        assert_eq!(r.suites.len(), 1);
        assert_eq!(r.suites[0].name, "sierpinski-descent");
        assert!(r.all_passed());
    }

    #[test]
    fn lax_morphisms_are_lax() {
        let base = FiniteSpace::chain(3);
        let objs = lax_objects(&base, &preorders_up_to(1));
        assert_eq!(objs.len(), 1 + 3);
        let ms = lax_morphisms(&objs[1], &objs[3]);
        assert_eq!(ms.len(), 1);
        assert!(lax_morphisms(&objs[3], &objs[1]).is_empty());
    }

    #[test]
    fn families_and_morphisms_count() {
        let s = FiniteSpace::sierpinski();
        assert_eq!(families(&s, 2).len(), 1 + 2 + 4);
        let a = FamObject::from_values(&s, vec![0, 1]).unwrap();
        let b = FamObject::from_values(&s, vec![1]).unwrap();
        assert_eq!(fam_morphisms(&a, &b).len(), 1);
        assert_eq!(fam_morphisms(&b, &a).len(), 1);
    }

    #[test]
    fn chain_cover_lifts_every_chain() {
        let b = FiniteSpace::chain(3);
        let cover = chain_cover(&b).unwrap();
        assert!(top_effective_descent_check(&cover).is_effective.is_true());
    }

    #[test]
    fn small_suites_pass_and_are_deterministic() {
        let c = HarnessConfig {
            suites: vec![
                "poset-counts".into(),
                "finite-sober".into(),
                "complete-lattice-equivalence".into(),
                "descent-separation".into(),
                "fam-frame-shortcut".into(),
            ],
            ..small()
        };
        let a = run_harness(&c).unwrap();
        let b = run_harness(&c).unwrap();
        for s in &a.suites {
            assert!(s.ok(), "{s:?}");
            assert!(s.instances > 0, "{}", s.name);
        }
        assert_eq!(
            crate::io::to_pretty(&a.to_value()),
            crate::io::to_pretty(&b.to_value())
        );
    }
}
