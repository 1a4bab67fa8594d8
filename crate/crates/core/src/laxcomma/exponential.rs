//! Exponentials `(B,β)^{(A,α)} = (B^A, α⇒β)` and exponentiability verdicts.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{lan_extension_in, lax_product, LaxMorphism, LaxObject, LaxProduct};
use crate::error::{Error, Result};
use crate::finspace::{enumerate_cmaps, product_space, quotient_by_classes, CMap, FiniteSpace};
use crate::order::{greatest, infimum, lattice_report, upper_adjoint, Lattice, DEFAULT_SUBSET_CAP};

/// An exponential object together with the data needed to curry.
#[derive(Debug, Clone)]
pub struct Exponential {
    /// `(B^A, δ)`.
    pub object: LaxObject,
    pub exponent: LaxObject,
    pub codomain: LaxObject,
    /// Point tables of the monotone maps `A → B`, indexed like `object`.
    pub maps: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    /// `(A,α) × (B^A,δ)`.
    pub product: LaxProduct,
    /// `ev(a, h) = h(a)`.
    pub evaluation: LaxMorphism,
}

impl Exponential {
    pub fn index_of_map(&self, table: &[usize]) -> Option<usize> {
        self.index.get(table).copied()
    }
}

fn map_label(space: &FiniteSpace, table: &[usize]) -> String {
    let parts: Vec<&str> = table.iter().map(|&b| space.label(b)).collect();
    format!("[{}]", parts.join(","))
}

/// The finite Top exponential `B^A`: monotone maps, pointwise order.
pub fn function_space(a: &FiniteSpace, b: &FiniteSpace) -> (FiniteSpace, Vec<Vec<usize>>) {
    let maps: Vec<Vec<usize>> = enumerate_cmaps(a, b)
        .into_iter()
        .map(|m| m.table().to_vec())
        .collect();
    let labels = maps.iter().map(|t| map_label(b, t)).collect();
    let space = FiniteSpace::from_preorder(format!("{}^{}", b.name(), a.name()), labels, |i, j| {
        a.points().all(|x| b.le(maps[i][x], maps[j][x]))
    })
    .expect("distinct tables give distinct labels");
    (space, maps)
}

/// Greatest `z` with `x ∧ z <= y`, in a base with binary meets.
pub fn implication(base: &FiniteSpace, x: usize, y: usize) -> Option<usize> {
    let cands: Vec<usize> = base
        .points()
        .filter(|&z| infimum(base, &[x, z]).is_some_and(|m| base.le(m, y)))
        .collect();
    greatest(base, &cands)
}

fn require_binary_meets(base: &FiniteSpace) -> Result<()> {
    for x in base.points() {
        for y in x + 1..base.len() {
            if infimum(base, &[x, y]).is_none() {
                return Err(Error::MeetsMissing(base.labels_of(&[x, y])));
            }
        }
    }
    Ok(())
}

/// `(B,β)^{(A,α)}` with structure map `h ↦ ⋀_a (α(a) ⇒ β(h(a)))`.
pub fn exponential_object(a_obj: &LaxObject, b_obj: &LaxObject) -> Result<Exponential> {
    let base = a_obj.base();
    if b_obj.base() != base {
        return Err(Error::BaseMismatch);
    }
    require_binary_meets(base)?;
    if a_obj.is_empty() && infimum(base, &[]).is_none() {
        return Err(Error::MeetsMissing(vec![]));
    }
    let mut imp: HashMap<(usize, usize), usize> = HashMap::new();
    for a in a_obj.space().points() {
        for b in b_obj.space().points() {
            let (x, y) = (a_obj.value(a), b_obj.value(b));
            if let std::collections::hash_map::Entry::Vacant(e) = imp.entry((x, y)) {
                let z = implication(base, x, y).ok_or_else(|| {
                    Error::NotHeyting(base.label(x).to_string(), base.label(y).to_string())
                })?;
                e.insert(z);
            }
        }
    }
    let (space, maps) = function_space(a_obj.space(), b_obj.space());
    let delta: Vec<usize> = maps
        .iter()
        .map(|h| {
            let vals: Vec<usize> = a_obj
                .space()
                .points()
                .map(|a| imp[&(a_obj.value(a), b_obj.value(h[a]))])
                .collect();
            infimum(base, &vals).ok_or_else(|| Error::MeetsMissing(base.labels_of(&vals)))
        })
        .collect::<Result<_>>()?;
    let object = LaxObject::new(space, base.clone(), delta)
        .map_err(|e| Error::Internal(format!("exponential structure map: {e}")))?;
    let index = maps
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, t)| (t, i))
        .collect();
    let product = lax_product(base, &[a_obj.clone(), object.clone()])?;
    let ev: Vec<usize> = product
        .object
        .space()
        .points()
        .map(|p| {
            let t = product.product.tuple(p);
            maps[t[1]][t[0]]
        })
        .collect();
    let ev_map = CMap::new(product.object.space().clone(), b_obj.space().clone(), ev)
        .map_err(|e| Error::Internal(format!("evaluation: {e}")))?;
    let evaluation = LaxMorphism::new(product.object.clone(), b_obj.clone(), ev_map)
        .map_err(|e| Error::Internal(format!("evaluation: {e}")))?;
    Ok(Exponential {
        object,
        exponent: a_obj.clone(),
        codomain: b_obj.clone(),
        maps,
        index,
        product,
        evaluation,
    })
}

/// Curries `f: A × C → B` (table over the product with `A` first) into
/// `C → B^A`.
pub fn mate(exp: &Exponential, c: &FiniteSpace, f: &[usize]) -> Option<Vec<usize>> {
    let a = exp.exponent.space();
    c.points()
        .map(|z| {
            let col: Vec<usize> = a.points().map(|x| f[x * c.len() + z]).collect();
            exp.index_of_map(&col)
        })
        .collect()
}

/// Uncurries `g: C → B^A` into a table over `A × C`.
pub fn uncurry(exp: &Exponential, c: &FiniteSpace, g: &[usize]) -> Vec<usize> {
    let a = exp.exponent.space();
    let mut out = vec![0; a.len() * c.len()];
    for x in a.points() {
        for z in c.points() {
            out[x * c.len() + z] = exp.maps[g[z]][x];
        }
    }
    out
}

/// Knobs for [`exponentiability_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentiabilityConfig {
    /// Random quotients tested against the Kan-extension criterion.
    pub samples: usize,
    pub seed: u64,
    /// Largest domain of a sampled quotient.
    pub max_points: usize,
}

impl Default for ExponentiabilityConfig {
    fn default() -> Self {
        ExponentiabilityConfig {
            samples: 24,
            seed: 0,
            max_points: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExponentiabilityVerdict {
    Exponentiable,
    NotExponentiable,
    /// Base is a meet-semilattice but not a lattice and the sufficient
    /// condition holds.
    SufficientOnly,
    /// Base is a meet-semilattice but not a lattice and the sufficient
    /// condition fails; no finite criterion decides this case.
    Unknown,
}

impl ExponentiabilityVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Exponentiable => "true",
            Self::NotExponentiable => "false",
            Self::SufficientOnly => "sufficient-only",
            Self::Unknown => "unknown",
        }
    }

    /// `Some` only for the decided verdicts.
    pub fn decided(self) -> Option<bool> {
        match self {
            Self::Exponentiable => Some(true),
            Self::NotExponentiable => Some(false),
            _ => None,
        }
    }
}

/// Outcome of the sampled Kan-extension commutation check
/// `α ⊓ Lan_q γ = Lan_{1×q}(α ⊓ γ)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LanSampleReport {
    pub seed: u64,
    pub tested: usize,
    pub commuting: usize,
    /// First sample where the two sides differ, described.
    pub first_failure: Option<String>,
    /// Pointwise checks of the neighbourhood form of the meet.
    pub pointwise_checks: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentiabilityReport {
    pub verdict: ExponentiabilityVerdict,
    /// `(a, S)` with `α(a) ∧ ⋁S ≠ ⋁(α(a) ∧ S)`.
    pub witness: Option<(usize, Vec<usize>)>,
    /// Point where `α(a) ∧ −` has no upper adjoint (non-lattice regime).
    pub adjoint_failure: Option<usize>,
    /// The base is not a lattice, so only a sufficient condition was
    /// checked.
    pub sufficient_only: bool,
    pub lan_samples: LanSampleReport,
}

/// First `S ⊆ X`, ordered by size then lexicographically, with
/// `x ∧ ⋁S ≠ ⋁(x ∧ S)`.
pub fn join_preservation_failure(lat: &Lattice, x: usize) -> Option<Vec<usize>> {
    let n = lat.len();
    for size in 0..=n {
        let mut found = None;
        for_each_combination(n, size, &mut |s| {
            let lhs = lat.meet(x, lat.join_all(s.iter().copied()));
            let rhs = lat.join_all(s.iter().map(|&y| lat.meet(x, y)));
            if lhs != rhs {
                found = Some(s.to_vec());
                return false;
            }
            true
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Visits `k`-subsets of `0..n` in lexicographic order until `f` says stop.
pub(crate) fn for_each_combination(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        if !f(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A quotient sample `q: C → D` with `γ: C → X`.
struct Sample {
    gamma: CMap,
    q: CMap,
}

impl Sample {
    fn describe(&self) -> String {
        format!(
            "C={:?} gamma={:?} q={:?}",
            self.gamma.source().order_pairs(),
            self.gamma.table(),
            self.q.table()
        )
    }
}

fn random_sample(rng: &mut ChaCha8Rng, base: &FiniteSpace, max_points: usize) -> Sample {
    let n = rng.gen_range(1..=max_points.max(1));
    let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let bits: Vec<bool> = (0..n * n).map(|_| rng.gen_bool(0.3)).collect();
    let c = FiniteSpace::from_relation("C", labels, |i, j| i == j || bits[i * n + j])
        .expect("fresh labels");
    let gammas = enumerate_cmaps(&c, base);
    let gamma = gammas[rng.gen_range(0..gammas.len())].clone();
    let raw: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let mut ids: Vec<usize> = Vec::new();
    let class: Vec<usize> = raw
        .iter()
        .map(|r| match ids.iter().position(|x| x == r) {
            Some(i) => i,
            None => {
                ids.push(*r);
                ids.len() - 1
            }
        })
        .collect();
    let (_, q) = quotient_by_classes(&c, &class, ids.len(), "D".into());
    Sample { gamma, q }
}

/// The refuting sample for a failed join: discrete `S → 1` with `γ` listing
/// the members of `S`.
fn witness_sample(base: &FiniteSpace, s: &[usize]) -> Sample {
    let labels: Vec<String> = (0..s.len()).map(|i| format!("c{i}")).collect();
    let c = FiniteSpace::discrete("S", &labels).expect("fresh labels");
    let gamma = CMap::new(c.clone(), base.clone(), s.to_vec()).expect("discrete source");
    let q = CMap::constant(&c, &FiniteSpace::point(), 0);
    Sample { gamma, q }
}

/// Evaluates both sides of the commutation on one sample; also checks the
/// neighbourhood form of the left side pointwise. Returns whether the two
/// sides agree and the number of pointwise checks made.
fn commutes(lat: &Lattice, obj: &LaxObject, sample: &Sample) -> Result<(bool, usize)> {
    let base = obj.base();
    let a = obj.space();
    let (c, d) = (sample.q.source(), sample.q.target());
    let lan = lan_extension_in(lat, &sample.gamma, &sample.q)?;

    let ac = product_space(&[a.clone(), c.clone()]);
    let ad = product_space(&[a.clone(), d.clone()]);
    let meet_ac: Vec<usize> = ac
        .space
        .points()
        .map(|p| {
            let t = ac.tuple(p);
            lat.meet(obj.value(t[0]), sample.gamma.apply(t[1]))
        })
        .collect();
    let meet_ac = CMap::new(ac.space.clone(), base.clone(), meet_ac)?;
    let one_q: Vec<usize> = ac
        .space
        .points()
        .map(|p| {
            let t = ac.tuple(p);
            ad.index_of_tuple(&[t[0], sample.q.apply(t[1])])
        })
        .collect();
    let one_q = CMap::new(ac.space.clone(), ad.space.clone(), one_q)?;
    let rhs = lan_extension_in(lat, &meet_ac, &one_q)?;

    let opens = d.open_sets();
    let mut checks = 0;
    let mut agree = true;
    for p in ad.space.points() {
        let t = ad.tuple(p);
        let lhs = lat.meet(obj.value(t[0]), lan.apply(t[1]));
        agree &= lhs == rhs.apply(p);
        let nbhd = lat.meet_all(opens.iter().filter(|v| v.contains(&t[1])).map(|v| {
            lat.meet(
                obj.value(t[0]),
                lat.join_all(
                    sample
                        .q
                        .preimage(v)
                        .into_iter()
                        .map(|z| sample.gamma.apply(z)),
                ),
            )
        }));
        checks += 1;
        if nbhd != lhs {
            return Err(Error::Internal(format!(
                "neighbourhood form of the meet disagrees at {}",
                ad.space.label(p)
            )));
        }
    }
    Ok((agree, checks))
}

/// Decides whether `(A, α)` is exponentiable over a finite lattice base.
///
/// Over a lattice the verdict is exact: exponentiable iff each
/// `α(a) ∧ −` preserves all joins. The Kan-extension commutation is then
/// sampled; a sample that contradicts the verdict is an internal error.
/// Over a meet-semilattice that is not a lattice only a sufficient
/// condition is checked.
pub fn exponentiability_report(
    obj: &LaxObject,
    config: &ExponentiabilityConfig,
) -> Result<ExponentiabilityReport> {
    let base = obj.base();
    let report = lattice_report(base).map_err(|e| Error::NotALattice(e.to_string()))?;
    if let Some((x, y)) = report.meet_failure {
        return Err(Error::NotALattice(format!(
            "no meet of {} and {}",
            base.label(x),
            base.label(y)
        )));
    }
    if base.is_empty() {
        return Err(Error::NotALattice("empty base".into()));
    }
    if !report.is_complete_lattice {
        let adjoint_failure = obj.space().points().find(|&a| {
            let f: Vec<usize> = base
                .points()
                .map(|y| infimum(base, &[obj.value(a), y]).expect("binary meets"))
                .collect();
            upper_adjoint(&f, base, base).is_none()
        });
        return Ok(ExponentiabilityReport {
            verdict: if adjoint_failure.is_none() {
                ExponentiabilityVerdict::SufficientOnly
            } else {
                ExponentiabilityVerdict::Unknown
            },
            witness: None,
            adjoint_failure,
            sufficient_only: true,
            lan_samples: LanSampleReport {
                seed: config.seed,
                ..Default::default()
            },
        });
    }
    if base.len() > DEFAULT_SUBSET_CAP {
        return Err(Error::CapExceeded(format!(
            "join preservation over {} points",
            base.len()
        )));
    }
    let lat = Lattice::new(base)?;
    let witness = obj
        .space()
        .points()
        .find_map(|a| join_preservation_failure(&lat, obj.value(a)).map(|s| (a, s)));

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut samples: Vec<Sample> = (0..config.samples)
        .map(|_| random_sample(&mut rng, base, config.max_points))
        .collect();
    if let Some((_, s)) = &witness {
        samples.push(witness_sample(base, s));
    }
    let mut lan = LanSampleReport {
        seed: config.seed,
        ..Default::default()
    };
    for s in &samples {
        let (ok, checks) = commutes(&lat, obj, s)?;
        lan.tested += 1;
        lan.pointwise_checks += checks;
        if ok {
            lan.commuting += 1;
        } else if lan.first_failure.is_none() {
            lan.first_failure = Some(s.describe());
        }
    }
    match (&witness, &lan.first_failure) {
        (None, Some(desc)) => {
            return Err(Error::Internal(format!(
                "joins are preserved but the Kan extension does not commute: {desc}"
            )))
        }
        (Some(_), None) => {
            return Err(Error::Internal(
                "joins fail but every sampled Kan extension commutes".into(),
            ))
        }
        _ => {}
    }
    Ok(ExponentiabilityReport {
        verdict: if witness.is_none() {
            ExponentiabilityVerdict::Exponentiable
        } else {
            ExponentiabilityVerdict::NotExponentiable
        },
        witness,
        adjoint_failure: None,
        sufficient_only: false,
        lan_samples: lan,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::laxcomma::is_lax_morphism;

    #[test]
    fn exponential_of_a_point() {
        let x = FiniteSpace::chain(3);
        let e = exponential_object(&LaxObject::point(&x, 1), &LaxObject::generic(&x)).unwrap();
        assert_eq!(e.object.space().len(), 3);
        assert_eq!(e.object.alpha().table(), &[0, 2, 2]);
        assert!(
            is_lax_morphism(e.evaluation.map(), &e.product.object, &e.codomain)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn exponent_top_point_is_identity() {
        let x = FiniteSpace::chain(3);
        let b = LaxObject::new(FiniteSpace::sierpinski(), x.clone(), vec![0, 1]).unwrap();
        let e = exponential_object(&LaxObject::point(&x, 2), &b).unwrap();
        assert_eq!(e.object.alpha().table(), b.alpha().table());
    }

    #[test]
    fn exponent_of_discrete_top_is_meet() {
        let x = FiniteSpace::chain(3);
        let i = FiniteSpace::discrete("I", &["i", "j"]).unwrap();
        let e =
            exponential_object(&LaxObject::constant(&i, &x, 2), &LaxObject::generic(&x)).unwrap();
        for (h, t) in e.maps.iter().enumerate() {
            assert_eq!(e.object.value(h), *t.iter().min().unwrap());
        }
    }

    #[test]
    fn empty_exponent_is_terminal() {
        let x = FiniteSpace::chain(3);
        let e = exponential_object(
            &LaxObject::constant(&FiniteSpace::empty(), &x, 0),
            &LaxObject::generic(&x),
        )
        .unwrap();
        assert_eq!(e.object.alpha().table(), &[2]);
    }

    #[test]
    fn m3_has_no_implication() {
        let m = m3();
        let a = m.index_of("a").unwrap();
        let err =
            exponential_object(&LaxObject::point(&m, a), &LaxObject::generic(&m)).unwrap_err();
        assert!(matches!(err, Error::NotHeyting(ref x, _) if x == "a"));
    }

    #[test]
    fn mate_round_trip() {
        let x = FiniteSpace::sierpinski();
        let a = LaxObject::generic(&x);
        let e = exponential_object(&a, &a).unwrap();
        let c = FiniteSpace::point();
        for g in 0..e.maps.len() {
            let f = uncurry(&e, &c, &[g]);
            assert_eq!(mate(&e, &c, &f).unwrap(), vec![g]);
        }
    }

    #[test]
    fn m3_point_a_is_not_exponentiable() {
        let m = m3();
        let a = m.index_of("a").unwrap();
        let r = exponentiability_report(&LaxObject::point(&m, a), &Default::default()).unwrap();
        assert_eq!(r.verdict, ExponentiabilityVerdict::NotExponentiable);
        let (_, s) = r.witness.unwrap();
        assert_eq!(m.labels_of(&s), vec!["b", "c"]);
        assert!(r.lan_samples.first_failure.is_some());
    }

    #[test]
    fn m3_top_and_chains_are_exponentiable() {
        let m = m3();
        let top = m.index_of("top").unwrap();
        let r = exponentiability_report(&LaxObject::point(&m, top), &Default::default()).unwrap();
        assert_eq!(r.verdict, ExponentiabilityVerdict::Exponentiable);
        let x = FiniteSpace::chain(3);
        let r = exponentiability_report(&LaxObject::generic(&x), &Default::default()).unwrap();
        assert_eq!(r.verdict, ExponentiabilityVerdict::Exponentiable);
        assert_eq!(r.lan_samples.tested, r.lan_samples.commuting);
    }

    #[test]
    fn non_lattice_bases() {
        let anti = antichain2();
        assert!(matches!(
            exponentiability_report(&LaxObject::point(&anti, 0), &Default::default()),
            Err(Error::NotALattice(_))
        ));
        // V shape: a bottom below two maximal points. Without a top no
        // `x ∧ −` has an upper adjoint, so the sufficient check cannot pass.
        let v = FiniteSpace::from_order("V", &["o", "p", "q"], &[("o", "p"), ("o", "q")]).unwrap();
        let r = exponentiability_report(&LaxObject::point(&v, 1), &Default::default()).unwrap();
        assert!(r.sufficient_only);
        assert_eq!(r.verdict, ExponentiabilityVerdict::Unknown);
        assert_eq!(r.adjoint_failure, Some(0));
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, &mut |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
    }
}
