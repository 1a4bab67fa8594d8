//! Brute-force universal-property oracle.
//!
//! Every construction is tested against all lax objects `(C, γ)` whose
//! space is a preorder on at most `max_points` points (one per isomorphism
//! class) and whose structure map is any monotone `γ`. Mediating maps are
//! found by enumerating every continuous map, never by the construction
//! under test.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::exponential::{exponential_object, function_space};
use super::{initial_lift, lax_coequalizer, lax_failure, lax_product, LaxMorphism, LaxObject};
use crate::enumerate::preorders_up_to;
use crate::error::{Error, Result};
use crate::finspace::{enumerate_cmaps, for_each_cmap_table, CMap, FiniteSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest test space.
    pub max_points: usize,
    /// Total number of candidate maps the oracle may enumerate.
    pub budget: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_points: 2,
            budget: 1_000_000,
        }
    }
}

/// A construction to check.
#[derive(Debug, Clone)]
pub enum UniversalInstance {
    Product {
        base: FiniteSpace,
        factors: Vec<LaxObject>,
    },
    Coequalizer {
        f: LaxMorphism,
        g: LaxMorphism,
    },
    Exponential {
        exponent: LaxObject,
        codomain: LaxObject,
    },
    InitialLift {
        space: FiniteSpace,
        base: FiniteSpace,
        cone: Vec<(CMap, LaxObject)>,
    },
}

impl UniversalInstance {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Product { .. } => "product",
            Self::Coequalizer { .. } => "coequalizer",
            Self::Exponential { .. } => "exponential",
            Self::InitialLift { .. } => "initial_lift",
        }
    }

    fn base(&self) -> &FiniteSpace {
        match self {
            Self::Product { base, .. } | Self::InitialLift { base, .. } => base,
            Self::Coequalizer { f, .. } => f.source().base(),
            Self::Exponential { exponent, .. } => exponent.base(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub kind: &'static str,
    pub passed: bool,
    /// Test objects `(C, γ)` examined.
    pub test_objects: usize,
    /// Individual cones, cocones or maps examined.
    pub checks: usize,
    pub counterexample: Option<String>,
    /// When the construction refuses to build an exponential: how many
    /// candidate structure maps on the Top exponential were refuted, out of
    /// how many.
    pub candidates_refuted: Option<(usize, usize)>,
    /// A candidate structure map that no test refuted, if any.
    pub surviving_candidate: Option<Vec<usize>>,
    /// Why the construction itself failed, if it did.
    pub construction_error: Option<String>,
}

impl OracleReport {
    fn new(kind: &'static str) -> Self {
        OracleReport {
            kind,
            passed: true,
            test_objects: 0,
            checks: 0,
            counterexample: None,
            candidates_refuted: None,
            surviving_candidate: None,
            construction_error: None,
        }
    }
}

struct Budget {
    used: AtomicUsize,
    limit: usize,
}

impl Budget {
    fn new(limit: usize) -> Self {
        Budget {
            used: AtomicUsize::new(0),
            limit,
        }
    }

    fn charge(&self, n: usize) -> Result<()> {
        let used = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if used > self.limit {
            return Err(Error::CapExceeded(format!(
                "oracle budget of {} candidate maps",
                self.limit
            )));
        }
        Ok(())
    }

    /// All continuous tables `src → tgt`, charged against the budget.
    fn homs(&self, src: &FiniteSpace, tgt: &FiniteSpace) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        let remaining = self.limit.saturating_sub(self.used.load(Ordering::Relaxed));
        for_each_cmap_table(src, tgt, remaining, |t| {
            out.push(t.to_vec());
            true
        })?;
        self.charge(out.len())?;
        Ok(out)
    }
}

/// Every test object over `base`.
pub fn test_objects(base: &FiniteSpace, max_points: usize) -> Vec<LaxObject> {
    let mut out = Vec::new();
    for c in preorders_up_to(max_points) {
        for gamma in enumerate_cmaps(&c, base) {
            out.push(LaxObject::from_map(gamma));
        }
    }
    out
}

fn describe(obj: &LaxObject) -> String {
    format!(
        "C={:?} gamma={:?}",
        obj.space().order_pairs(),
        obj.alpha().table()
    )
}

/// Per-test-object outcome: checks performed and first failure.
type Outcome = Result<(usize, Option<String>)>;

fn run(
    kind: &'static str,
    tests: &[LaxObject],
    check: impl Fn(&LaxObject) -> Outcome + Sync,
) -> Result<OracleReport> {
    let outcomes: Vec<Outcome> = tests.par_iter().map(&check).collect();
    let mut report = OracleReport::new(kind);
    for (obj, out) in tests.iter().zip(outcomes) {
        let (checks, failure) = out?;
        report.test_objects += 1;
        report.checks += checks;
        if let (Some(f), None) = (failure, &report.counterexample) {
            report.passed = false;
            report.counterexample = Some(format!("{}: {f}", describe(obj)));
        }
    }
    Ok(report)
}

fn is_lax(table: &[usize], src: &LaxObject, tgt: &LaxObject) -> bool {
    lax_failure(table, src, tgt).is_none()
}

fn compose(second: &[usize], first: &[usize]) -> Vec<usize> {
    first.iter().map(|&x| second[x]).collect()
}

/// Checks the construction in `instance` against its universal property.
pub fn verify_universal_property(
    instance: &UniversalInstance,
    config: &OracleConfig,
) -> Result<OracleReport> {
    let budget = Budget::new(config.budget);
    let tests = test_objects(instance.base(), config.max_points);
    match instance {
        UniversalInstance::Product { base, factors } => {
            verify_product(base, factors, &tests, &budget)
        }
        UniversalInstance::Coequalizer { f, g } => verify_coequalizer(f, g, &tests, &budget),
        UniversalInstance::Exponential { exponent, codomain } => {
            verify_exponential(exponent, codomain, &tests, &budget)
        }
        UniversalInstance::InitialLift { space, base, cone } => {
            verify_initial_lift(space, base, cone, &tests, &budget)
        }
    }
}

fn verify_product(
    base: &FiniteSpace,
    factors: &[LaxObject],
    tests: &[LaxObject],
    budget: &Budget,
) -> Result<OracleReport> {
    let prod = lax_product(base, factors)?;
    let p = &prod.object;
    let projections: Vec<&[usize]> = prod.projections.iter().map(|m| m.map().table()).collect();
    for (pr, obj) in projections.iter().zip(factors) {
        if !is_lax(pr, p, obj) {
            let mut r = OracleReport::new("product");
            r.passed = false;
            r.counterexample = Some("a projection is not lax".into());
            return Ok(r);
        }
    }
    run("product", tests, |c| {
        let mut lax_legs: Vec<Vec<Vec<usize>>> = Vec::new();
        for a in factors {
            let homs = budget.homs(c.space(), a.space())?;
            lax_legs.push(homs.into_iter().filter(|t| is_lax(t, c, a)).collect());
        }
        let mut counts: HashMap<Vec<Vec<usize>>, usize> = HashMap::new();
        for m in budget.homs(c.space(), p.space())? {
            if is_lax(&m, c, p) {
                let legs: Vec<Vec<usize>> = projections.iter().map(|pr| compose(pr, &m)).collect();
                *counts.entry(legs).or_default() += 1;
            }
        }
        let mut checks = 0;
        let mut failure = None;
        for_each_tuple(&lax_legs, &mut |cone| {
            checks += 1;
            let n = counts.get(cone).copied().unwrap_or(0);
            if n != 1 {
                failure = Some(format!("cone {cone:?} has {n} lax mediating maps"));
                return false;
            }
            true
        });
        Ok((checks, failure))
    })
}

/// Visits the cartesian product of `choices` in lexicographic order.
fn for_each_tuple<T: Clone>(choices: &[Vec<T>], f: &mut dyn FnMut(&[T]) -> bool) {
    fn rec<T: Clone>(
        choices: &[Vec<T>],
        cur: &mut Vec<T>,
        f: &mut dyn FnMut(&[T]) -> bool,
    ) -> bool {
        if cur.len() == choices.len() {
            return f(cur);
        }
        for x in &choices[cur.len()] {
            cur.push(x.clone());
            let go = rec(choices, cur, f);
            cur.pop();
            if !go {
                return false;
            }
        }
        true
    }
    rec(choices, &mut Vec::new(), f);
}

fn verify_coequalizer(
    f: &LaxMorphism,
    g: &LaxMorphism,
    tests: &[LaxObject],
    budget: &Budget,
) -> Result<OracleReport> {
    let co = lax_coequalizer(f, g)?;
    let b = f.target();
    let q_obj = &co.object;
    let q = co.quotient.map().table();
    let (ft, gt) = (f.map().table(), g.map().table());
    if !is_lax(q, b, q_obj) || compose(q, ft) != compose(q, gt) {
        let mut r = OracleReport::new("coequalizer");
        r.passed = false;
        r.counterexample = Some("the quotient does not coequalize laxly".into());
        return Ok(r);
    }
    run("coequalizer", tests, |c| {
        let ks: Vec<Vec<usize>> = budget
            .homs(q_obj.space(), c.space())?
            .into_iter()
            .filter(|k| is_lax(k, q_obj, c))
            .collect();
        let mut checks = 0;
        for h in budget.homs(b.space(), c.space())? {
            if !is_lax(&h, b, c) || compose(&h, ft) != compose(&h, gt) {
                continue;
            }
            checks += 1;
            let n = ks.iter().filter(|k| compose(k, q) == h).count();
            if n != 1 {
                return Ok((
                    checks,
                    Some(format!("cocone {h:?} has {n} lax factorizations")),
                ));
            }
        }
        Ok((checks, None))
    })
}

/// Checks laxness is preserved both ways by currying, for a structure map
/// `delta` on the Top exponential. Returns checks made and first failure.
fn mate_check(
    a: &LaxObject,
    b: &LaxObject,
    exp: &LaxObject,
    maps: &[Vec<usize>],
    c: &LaxObject,
    budget: &Budget,
) -> Outcome {
    let prod = lax_product(a.base(), &[a.clone(), c.clone()])?;
    let index: HashMap<&[usize], usize> = maps
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), i))
        .collect();
    let homs_pb = budget.homs(prod.object.space(), b.space())?;
    let homs_ce = budget.homs(c.space(), exp.space())?;
    if homs_pb.len() != homs_ce.len() {
        return Ok((
            0,
            Some(format!(
                "{} continuous maps A×C→B but {} maps C→B^A",
                homs_pb.len(),
                homs_ce.len()
            )),
        ));
    }
    let lax_pb = homs_pb
        .iter()
        .filter(|f| is_lax(f, &prod.object, b))
        .count();
    let lax_ce = homs_ce.iter().filter(|g| is_lax(g, c, exp)).count();
    let mut checks = 0;
    for f in &homs_pb {
        checks += 1;
        let mate: Option<Vec<usize>> = c
            .space()
            .points()
            .map(|z| {
                let col: Vec<usize> = a
                    .space()
                    .points()
                    .map(|x| f[prod.product.index_of_tuple(&[x, z])])
                    .collect();
                index.get(col.as_slice()).copied()
            })
            .collect();
        let Some(mate) = mate else {
            return Ok((checks, Some(format!("map {f:?} has no continuous mate"))));
        };
        if !is_lax(&mate, c, exp) && is_lax(f, &prod.object, b) {
            return Ok((
                checks,
                Some(format!("lax map {f:?} has non-lax mate {mate:?}")),
            ));
        }
        if is_lax(&mate, c, exp) && !is_lax(f, &prod.object, b) {
            return Ok((
                checks,
                Some(format!("non-lax map {f:?} has lax mate {mate:?}")),
            ));
        }
    }
    if lax_pb != lax_ce {
        return Ok((
            checks,
            Some(format!(
                "{lax_pb} lax maps A×C→B but {lax_ce} lax maps C→B^A"
            )),
        ));
    }
    Ok((checks, None))
}

fn verify_exponential(
    a: &LaxObject,
    b: &LaxObject,
    tests: &[LaxObject],
    budget: &Budget,
) -> Result<OracleReport> {
    match exponential_object(a, b) {
        Ok(exp) => {
            let ev = exp.evaluation.map().table();
            if !is_lax(ev, &exp.product.object, b) {
                let mut r = OracleReport::new("exponential");
                r.passed = false;
                r.counterexample = Some("evaluation is not lax".into());
                return Ok(r);
            }
            run("exponential", tests, |c| {
                mate_check(a, b, &exp.object, &exp.maps, c, budget)
            })
        }
        Err(e @ (Error::NotHeyting(..) | Error::MeetsMissing(_))) => {
            refute_candidates(a, b, tests, budget, e.to_string())
        }
        Err(e) => Err(e),
    }
}

/// The construction refused. Since the underlying space of an exponential
/// must be the Top exponential, try every structure map on it.
fn refute_candidates(
    a: &LaxObject,
    b: &LaxObject,
    tests: &[LaxObject],
    budget: &Budget,
    why: String,
) -> Result<OracleReport> {
    let base = a.base();
    let (space, maps) = function_space(a.space(), b.space());
    let candidates = budget.homs(&space, base)?;
    let mut report = OracleReport::new("exponential");
    report.passed = false;
    report.construction_error = Some(why);
    let mut refuted = 0;
    for delta in &candidates {
        let exp = LaxObject::new(space.clone(), base.clone(), delta.clone())?;
        let mut killed = false;
        for c in tests {
            report.test_objects += 1;
            let (checks, failure) = mate_check(a, b, &exp, &maps, c, budget)?;
            report.checks += checks;
            if let Some(f) = failure {
                if report.counterexample.is_none() {
                    report.counterexample =
                        Some(format!("candidate {delta:?}: {}: {f}", describe(c)));
                }
                killed = true;
                break;
            }
        }
        if killed {
            refuted += 1;
        } else if report.surviving_candidate.is_none() {
            report.surviving_candidate = Some(delta.clone());
        }
    }
    report.candidates_refuted = Some((refuted, candidates.len()));
    Ok(report)
}

fn verify_initial_lift(
    space: &FiniteSpace,
    base: &FiniteSpace,
    cone: &[(CMap, LaxObject)],
    tests: &[LaxObject],
    budget: &Budget,
) -> Result<OracleReport> {
    let lift = initial_lift(space, base, cone)?;
    for (f, obj) in cone {
        if !is_lax(f.table(), &lift, obj) {
            let mut r = OracleReport::new("initial_lift");
            r.passed = false;
            r.counterexample = Some(format!("leg into {:?} is not lax", obj.space().name()));
            return Ok(r);
        }
    }
    run("initial_lift", tests, |c| {
        let mut checks = 0;
        for h in budget.homs(c.space(), space)? {
            checks += 1;
            let into_lift = is_lax(&h, c, &lift);
            let legs_lax = cone
                .iter()
                .all(|(f, obj)| is_lax(&compose(f.table(), &h), c, obj));
            if into_lift != legs_lax {
                return Ok((
                    checks,
                    Some(format!(
                        "map {h:?}: lax into lift = {into_lift}, composites lax = {legs_lax}"
                    )),
                ));
            }
        }
        Ok((checks, None))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::m3;

    #[test]
    fn product_of_points_passes() {
        let x = FiniteSpace::chain(3);
        let r = verify_universal_property(
            &UniversalInstance::Product {
                base: x.clone(),
                factors: vec![LaxObject::point(&x, 1), LaxObject::point(&x, 2)],
            },
            &OracleConfig::default(),
        )
        .unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.checks > 0);
    }

    #[test]
    fn trivial_coequalizer_passes() {
        let x = FiniteSpace::chain(3);
        let obj = LaxObject::new(FiniteSpace::sierpinski(), x, vec![0, 2]).unwrap();
        let id = LaxMorphism::identity(&obj);
        let r = verify_universal_property(
            &UniversalInstance::Coequalizer {
                f: id.clone(),
                g: id,
            },
            &OracleConfig::default(),
        )
        .unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn m3_point_a_has_no_exponential() {
        let m = m3();
        let a = m.index_of("a").unwrap();
        let r = verify_universal_property(
            &UniversalInstance::Exponential {
                exponent: LaxObject::point(&m, a),
                codomain: LaxObject::generic(&m),
            },
            &OracleConfig::default(),
        )
        .unwrap();
        assert!(!r.passed);
        let (refuted, total) = r.candidates_refuted.unwrap();
        assert_eq!(refuted, total);
        assert!(r.surviving_candidate.is_none());
    }

    #[test]
    fn chain_exponential_passes() {
        let x = FiniteSpace::chain(3);
        let r = verify_universal_property(
            &UniversalInstance::Exponential {
                exponent: LaxObject::point(&x, 1),
                codomain: LaxObject::generic(&x),
            },
            &OracleConfig::default(),
        )
        .unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn budget_is_enforced() {
        let x = FiniteSpace::chain(3);
        let err = verify_universal_property(
            &UniversalInstance::Product {
                base: x.clone(),
                factors: vec![LaxObject::generic(&x), LaxObject::generic(&x)],
            },
            &OracleConfig {
                max_points: 2,
                budget: 10,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::CapExceeded(_)));
    }
}
