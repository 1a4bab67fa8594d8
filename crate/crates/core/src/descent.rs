//! Descent and effective descent.
//!
//! On a finite space every ultrafilter is principal and `⟨a⟩` converges to
//! `y` exactly when `a <= y`. Convergence conditions therefore become order
//! conditions: descent maps in `Top` lift pairs `b' <= b`, effective descent
//! maps lift chains `b0 <= b1 <= b2`.
//!
//! For `Top⇓X` with `X` a frame, `f: (A,α) → (B,β)` is effective for
//! descent iff it is so in `Top` and `β(b') = ⋁ α(a')` over lifts of every
//! `b' <= b`. For other lattices only a sufficient bundle is known and the
//! verdict may be [`Tri::Unknown`].

use crate::error::{Error, Result};
use crate::famx::{
    fam_descent_in, fam_effective_descent_check, to_fam_morphism, FamDescentFailure, FamMorphism,
    FamObject,
};
use crate::finspace::{product_space, CMap, FiniteSpace};
use crate::laxcomma::{lax_coequalizer, lax_equalizer, lax_product, LaxMorphism, LaxObject};
use crate::order::{distributivity_report, least, DistributivityReport, Lattice};

/// Which category a verdict is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Top,
    Fam,
    LaxComma,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Top => "top",
            Self::Fam => "fam",
            Self::LaxComma => "laxcomma",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl Tri {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::True => "true",
            Self::False => "false",
            Self::Unknown => "unknown",
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Self::True
        } else {
            Self::False
        }
    }
}

/// A concrete datum refuting a descent condition. Points are given by label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `lo <= hi` in the codomain has no lift `a' <= a`.
    Pair { lo: String, hi: String },
    /// A chain in the codomain with no lifted chain.
    Chain { points: Vec<String> },
    /// `w <= β(lo)` is not the join of `w ∧ α(a')` over lifts of `lo <= hi`.
    Join { lo: String, hi: String, w: String },
    /// `β(lo)` differs from the join of `α(a')` over lifts of `lo <= hi`.
    JoinCover {
        lo: String,
        hi: String,
        expected: String,
        got: String,
    },
    /// For `v ⋘ u`, the pair `lo <= hi` inside `B_u` has no lift inside `A_v`.
    FilterLevel {
        u: String,
        v: String,
        lo: String,
        hi: String,
    },
    /// A codomain index with an empty fibre.
    FamIndex { index: String },
    /// `w <= β(index)` is not covered by the fibre.
    FamJoin { index: String, w: String },
    /// A descent datum on the fibre over `index` that does not split.
    Theta { index: String, theta: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub value: Tri,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn yes() -> Self {
        Self {
            value: Tri::True,
            witness: None,
        }
    }

    pub fn no(witness: Witness) -> Self {
        Self {
            value: Tri::False,
            witness: Some(witness),
        }
    }

    pub fn unknown() -> Self {
        Self {
            value: Tri::Unknown,
            witness: None,
        }
    }

    fn from_failure(failure: Option<Witness>) -> Self {
        match failure {
            None => Self::yes(),
            Some(w) => Self::no(w),
        }
    }

    pub fn is_true(&self) -> bool {
        self.value == Tri::True
    }

    pub fn is_false(&self) -> bool {
        self.value == Tri::False
    }
}

/// Criterion tag for effective descent in `Top`: finite chain lifting is a
/// reduction of the ultrafilter-chain characterisation and is kept apart
/// from the other criteria.
pub const CHAIN_LIFTING: &str = "finite 2-chain lifting oracle";
pub const JOIN_COVER: &str = "frame base: Top effective descent and join cover";
pub const SUFFICIENT_BUNDLE: &str =
    "non-frame base: Top effective descent, Fam effective descent and all-w lifting (sufficient)";
pub const FILTRATION: &str = "completely distributive base: level-wise lifting";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentReport {
    pub category: Category,
    pub is_descent: Verdict,
    pub is_effective: Verdict,
    pub preconditions_checked: Vec<String>,
    pub criterion: String,
    pub notes: Vec<String>,
}

// ---------------------------------------------------------------------------
// Smallest convergence points

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaReport {
    /// `table[a]` is the smallest convergence point of `⟨a⟩`.
    pub table: Vec<usize>,
    /// `σ(⟨a⟩) <= z` iff `⟨a⟩` converges to `z`, for all `a, z`.
    pub adjunction: bool,
}

/// Points `y` such that every open neighbourhood of `y` contains `a`, i.e.
/// whose smallest neighbourhood `↓y` does.
fn convergence_points(space: &FiniteSpace, a: usize) -> Vec<usize> {
    space
        .points()
        .filter(|&y| space.down(y).contains(&a))
        .collect()
}

/// Smallest convergence points of principal ultrafilters.
pub fn sigma(space: &FiniteSpace) -> Result<SigmaReport> {
    if !space.is_t0() {
        return Err(Error::NotT0(space.name().to_string()));
    }
    let mut table = Vec::with_capacity(space.len());
    let mut adjunction = true;
    for a in space.points() {
        let conv = convergence_points(space, a);
        let s = least(space, &conv).ok_or_else(|| {
            Error::Internal(format!(
                "no smallest convergence point for {}",
                space.label(a)
            ))
        })?;
        adjunction &= space.points().all(|z| space.le(s, z) == conv.contains(&z));
        table.push(s);
    }
    Ok(SigmaReport { table, adjunction })
}

fn lattice_of(base: &FiniteSpace) -> Result<Lattice> {
    Lattice::new(base).map_err(|e| Error::NotALattice(e.to_string()))
}

/// Binary meets commute with smallest convergence points:
/// `σ(U∧(𝔵)) = ∧(σ×σ)(𝔵)` for every principal ultrafilter `𝔵` on `X×X`.
pub fn scp_meet_compat_check(x: &FiniteSpace) -> Result<bool> {
    let lat = lattice_of(x)?;
    let prod = product_space(&[x.clone(), x.clone()]);
    let sx = sigma(x)?;
    let sxx = sigma(&prod.space)?;
    let meet_of = |p: usize| {
        let t = prod.tuple(p);
        lat.meet(t[0], t[1])
    };
    for p in prod.space.points() {
        let t = prod.tuple(p);
        // Push ⟨(x,y)⟩ along ∧, then take σ in X.
        let left = sx.table[meet_of(p)];
        // Take σ in X×X, then apply ∧.
        let right = meet_of(sxx.table[p]);
        let split = lat.meet(sx.table[t[0]], sx.table[t[1]]);
        if left != right || left != split {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Descent in Top

/// `lifts[b'][b]` lists the `a'` with `a' <= a`, `f(a') = b'`, `f(a) = b`.
pub(crate) struct Lifts {
    lifts: Vec<Vec<Vec<usize>>>,
}

impl Lifts {
    pub(crate) fn new(f: &CMap) -> Self {
        let (a, b) = (f.source(), f.target());
        let mut lifts = vec![vec![Vec::new(); b.len()]; b.len()];
        for lo in a.points() {
            let mut seen = vec![false; b.len()];
            for hi in a.up(lo) {
                let t = f.apply(hi);
                if !seen[t] {
                    seen[t] = true;
                    lifts[f.apply(lo)][t].push(lo);
                }
            }
        }
        Self { lifts }
    }

    fn of(&self, lo: usize, hi: usize) -> &[usize] {
        &self.lifts[lo][hi]
    }
}

fn pair_failure(f: &CMap, lifts: &Lifts) -> Option<Witness> {
    let b = f.target();
    for lo in b.points() {
        for hi in b.points() {
            if b.le(lo, hi) && lifts.of(lo, hi).is_empty() {
                return Some(Witness::Pair {
                    lo: b.label(lo).to_string(),
                    hi: b.label(hi).to_string(),
                });
            }
        }
    }
    None
}

fn chain_failure(f: &CMap) -> Option<Witness> {
    let (a, b) = (f.source(), f.target());
    let n = b.len();
    let mut lifted = vec![false; n * n * n];
    for mid in a.points() {
        let lows: Vec<usize> = a.down(mid).iter().map(|&x| f.apply(x)).collect();
        let highs: Vec<usize> = a.up(mid).iter().map(|&x| f.apply(x)).collect();
        let m = f.apply(mid);
        for &l in &lows {
            for &h in &highs {
                lifted[(l * n + m) * n + h] = true;
            }
        }
    }
    for b0 in 0..n {
        for b1 in b.up(b0) {
            for b2 in b.up(b1) {
                if !lifted[(b0 * n + b1) * n + b2] {
                    return Some(Witness::Chain {
                        points: b.labels_of(&[b0, b1, b2]),
                    });
                }
            }
        }
    }
    None
}

/// Descent in `Top`: every `b' <= b` (including `b' = b`, so surjectivity)
/// lifts to some `a' <= a`.
pub fn top_descent_check(f: &CMap) -> DescentReport {
    let lifts = Lifts::new(f);
    let descent = Verdict::from_failure(pair_failure(f, &lifts));
    let effective = if descent.is_false() {
        descent.clone()
    } else {
        Verdict::unknown()
    };
    DescentReport {
        category: Category::Top,
        is_descent: descent,
        is_effective: effective,
        preconditions_checked: Vec::new(),
        criterion: "finite pair lifting".into(),
        notes: Vec::new(),
    }
}

/// Effective descent in `Top`: pair lifting and 2-chain lifting.
pub fn top_effective_descent_check(f: &CMap) -> DescentReport {
    let mut report = top_descent_check(f);
    report.is_effective = Verdict::from_failure(chain_failure(f));
    report.criterion = CHAIN_LIFTING.into();
    report
}

// ---------------------------------------------------------------------------
// Descent in Top⇓X

fn lax_lattice(f: &LaxMorphism) -> Result<Lattice> {
    lattice_of(f.source().base())
}

pub(crate) fn all_w_failure(lat: &Lattice, f: &LaxMorphism, lifts: &Lifts) -> Option<Witness> {
    let (src, tgt) = (f.source(), f.target());
    let (b, x) = (tgt.space(), lat.space());
    for lo in b.points() {
        for hi in b.up(lo) {
            for w in x.down(tgt.value(lo)) {
                let j = lat.join_all(lifts.of(lo, hi).iter().map(|&a| lat.meet(w, src.value(a))));
                if j != w {
                    return Some(Witness::Join {
                        lo: b.label(lo).to_string(),
                        hi: b.label(hi).to_string(),
                        w: x.label(w).to_string(),
                    });
                }
            }
        }
    }
    None
}

pub(crate) fn join_cover_failure(lat: &Lattice, f: &LaxMorphism, lifts: &Lifts) -> Option<Witness> {
    let (src, tgt) = (f.source(), f.target());
    let (b, x) = (tgt.space(), lat.space());
    for lo in b.points() {
        for hi in b.up(lo) {
            let got = lat.join_all(lifts.of(lo, hi).iter().map(|&a| src.value(a)));
            let expected = tgt.value(lo);
            if got != expected {
                return Some(Witness::JoinCover {
                    lo: b.label(lo).to_string(),
                    hi: b.label(hi).to_string(),
                    expected: x.label(expected).to_string(),
                    got: x.label(got).to_string(),
                });
            }
        }
    }
    None
}

/// Every `w <= β(b')` is the join of `w ∧ α(a')` over lifts `a' <= a` of
/// each `b' <= b`.
pub fn all_w_lifting_check(f: &LaxMorphism) -> Result<Verdict> {
    let lat = lax_lattice(f)?;
    if !scp_meet_compat_check(lat.space())? {
        return Err(Error::Internal(
            "binary meets do not preserve smallest convergence points".into(),
        ));
    }
    let lifts = Lifts::new(f.map());
    Ok(Verdict::from_failure(all_w_failure(&lat, f, &lifts)))
}

/// The join condition alone: `β(b') = ⋁ α(a')` over lifts of each `b' <= b`.
pub fn join_condition(f: &LaxMorphism) -> Result<Verdict> {
    let lat = lax_lattice(f)?;
    let lifts = Lifts::new(f.map());
    Ok(Verdict::from_failure(join_cover_failure(&lat, f, &lifts)))
}

fn fam_witness(fam: &FamMorphism, failure: &FamDescentFailure) -> Witness {
    let t = fam.target();
    match *failure {
        FamDescentFailure::NotSurjective { index } => Witness::FamIndex {
            index: t.index()[index].clone(),
        },
        FamDescentFailure::Join { index, w } => Witness::FamJoin {
            index: t.index()[index].clone(),
            w: t.base().label(w).to_string(),
        },
    }
}

/// Descent in `Top⇓X` is only decided negatively: it projects to descent
/// in `Top` and in `Fam(X)`, and effective descent implies descent.
fn lax_descent_verdict(
    lat: &Lattice,
    f: &LaxMorphism,
    top: &DescentReport,
    effective: &Verdict,
) -> Verdict {
    if effective.is_true() {
        return Verdict::yes();
    }
    if top.is_descent.is_false() {
        return top.is_descent.clone();
    }
    let fam = to_fam_morphism(f);
    let report = fam_descent_in(lat, &fam);
    match report.failure {
        Some(ref failure) => Verdict::no(fam_witness(&fam, failure)),
        None => Verdict::unknown(),
    }
}

/// Effective descent over a frame: effective in `Top` and the join cover.
///
/// On a non-frame base the verdict is downgraded to unknown; refutations
/// that do not depend on the frame law are still reported.
pub fn join_cover_check(f: &LaxMorphism) -> Result<DescentReport> {
    let lat = lax_lattice(f)?;
    let base = lat.space();
    let is_frame = distributivity_report(base)?.is_frame;
    let scp = scp_meet_compat_check(base)?;
    if !scp {
        return Err(Error::Internal(
            "binary meets do not preserve smallest convergence points".into(),
        ));
    }
    let top = top_effective_descent_check(f.map());
    let lifts = Lifts::new(f.map());
    let mut notes = Vec::new();
    let preconditions = vec![
        "base is a finite lattice".to_string(),
        format!("base is a frame: {is_frame}"),
        "binary meets preserve smallest convergence points".to_string(),
    ];
    let effective = if top.is_effective.is_false() {
        top.is_effective.clone()
    } else if is_frame {
        frame_verdict(&lat, f)
    } else {
        let all_w = all_w_failure(&lat, f, &lifts);
        notes.push(format!(
            "join cover: {}",
            if join_cover_failure(&lat, f, &lifts).is_none() {
                "holds"
            } else {
                "fails"
            }
        ));
        notes.push(format!(
            "all-w lifting: {}",
            if all_w.is_none() { "holds" } else { "fails" }
        ));
        Verdict::unknown()
    };
    let descent = lax_descent_verdict(&lat, f, &top, &effective);
    Ok(DescentReport {
        category: Category::LaxComma,
        is_descent: descent,
        is_effective: effective,
        preconditions_checked: preconditions,
        criterion: JOIN_COVER.into(),
        notes,
    })
}

/// Effective descent in `Top⇓X` over a finite lattice base.
///
/// Frames get a definitive answer. Otherwise the map is effective when it
/// is effective in `Top`, its family image is effective in `Fam(X)` and the
/// all-w lifting condition holds; it is refuted only by a failure in `Top`
/// or of descent in `Fam(X)`; anything else is unknown.
pub fn laxcomma_effective_descent(f: &LaxMorphism) -> Result<DescentReport> {
    let lat = lax_lattice(f)?;
    if distributivity_report(lat.space())?.is_frame {
        return join_cover_check(f);
    }
    let top = top_effective_descent_check(f.map());
    let fam = to_fam_morphism(f);
    let fam_report = fam_effective_descent_check(&fam, crate::famx::DEFAULT_THETA_CAP)?;
    let all_w = all_w_lifting_check(f)?;
    let mut notes = vec![
        format!("Top effective descent: {}", top.is_effective.value.as_str()),
        format!(
            "Fam effective descent ({}): {}",
            fam_report.criterion.as_str(),
            fam_report.is_effective
        ),
        format!("all-w lifting: {}", all_w.value.as_str()),
    ];
    let effective = if top.is_effective.is_false() {
        top.is_effective.clone()
    } else if let Some(ref failure) = fam_report.descent.failure {
        Verdict::no(fam_witness(&fam, failure))
    } else if fam_report.is_effective && all_w.is_true() {
        Verdict::yes()
    } else {
        if let Some((index, ref theta)) = fam_report.theta_witness {
            let w = Witness::Theta {
                index: fam.target().index()[index].clone(),
                theta: theta
                    .iter()
                    .map(|&t| lat.space().label(t).to_string())
                    .collect(),
            };
            notes.push(format!("non-splitting descent datum: {w:?}"));
        }
        if let Some(ref w) = all_w.witness {
            notes.push(format!("all-w lifting fails at {w:?}"));
        }
        Verdict::unknown()
    };
    let descent = lax_descent_verdict(&lat, f, &top, &effective);
    Ok(DescentReport {
        category: Category::LaxComma,
        is_descent: descent,
        is_effective: effective,
        preconditions_checked: vec![
            "base is a finite lattice".into(),
            "base is a frame: false".into(),
            "binary meets preserve smallest convergence points".into(),
        ],
        criterion: SUFFICIENT_BUNDLE.into(),
        notes,
    })
}

/// Effective descent in `Top⇓X` for a completely distributive base, read off
/// the filtrations `A_v = α⁻¹(↑v)` and `B_u = β⁻¹(↑u)`: every `b' <= b` in
/// `B_u` lifts into `A_v` for every `v ⋘ u`. The verdict is cross-checked
/// against [`join_cover_check`].
pub fn cd_filtration_descent_check(f: &LaxMorphism) -> Result<DescentReport> {
    let lat = lax_lattice(f)?;
    let base = lat.space();
    let dist = distributivity_report(base)?;
    if !dist.is_completely_distributive {
        return Err(Error::NotCompletelyDistributive(base.name().to_string()));
    }
    let top = top_effective_descent_check(f.map());
    let effective = filtration_verdict(&lat, &dist, f);
    let cover = join_cover_check(f)?;
    if cover.is_effective.value != effective.value {
        return Err(Error::Internal(format!(
            "filtration verdict {} disagrees with join cover verdict {}",
            effective.value.as_str(),
            cover.is_effective.value.as_str()
        )));
    }
    Ok(DescentReport {
        category: Category::LaxComma,
        is_descent: lax_descent_verdict(&lat, f, &top, &effective),
        is_effective: effective,
        preconditions_checked: vec!["base is completely distributive".into()],
        criterion: FILTRATION.into(),
        notes: Vec::new(),
    })
}

/// Effective descent via filtration levels, given the base's
/// distributivity data.
pub(crate) fn filtration_verdict(
    lat: &Lattice,
    dist: &DistributivityReport,
    f: &LaxMorphism,
) -> Verdict {
    let top = top_effective_descent_check(f.map());
    if top.is_effective.is_false() {
        return top.is_effective;
    }
    let base = lat.space();
    let (src, tgt) = (f.source(), f.target());
    let b = tgt.space();
    let lifts = Lifts::new(f.map());
    for u in base.points() {
        for lo in b.points().filter(|&p| base.le(u, tgt.value(p))) {
            for hi in b.up(lo) {
                for v in base.points().filter(|&v| dist.totally_below[v][u]) {
                    if !lifts.of(lo, hi).iter().any(|&a| base.le(v, src.value(a))) {
                        return Verdict::no(Witness::FilterLevel {
                            u: base.label(u).to_string(),
                            v: base.label(v).to_string(),
                            lo: b.label(lo).to_string(),
                            hi: b.label(hi).to_string(),
                        });
                    }
                }
            }
        }
    }
    Verdict::yes()
}

/// Effective descent over a frame base: Top effective descent, then the
/// join cover.
pub(crate) fn frame_verdict(lat: &Lattice, f: &LaxMorphism) -> Verdict {
    let top = top_effective_descent_check(f.map());
    if top.is_effective.is_false() {
        return top.is_effective;
    }
    Verdict::from_failure(join_cover_failure(lat, f, &Lifts::new(f.map())))
}

/// Pair lifting for the restriction `A₀ → B₀` to the parts sitting over the
/// top of the base. Over the Sierpinski space these are the closed parts
/// `α⁻¹(1)` and `β⁻¹(1)`.
pub fn top_level_pair_lifting(f: &LaxMorphism) -> Result<Verdict> {
    Ok(top_level_lifting_in(&lax_lattice(f)?, f))
}

pub(crate) fn top_level_lifting_in(lat: &Lattice, f: &LaxMorphism) -> Verdict {
    let (src, tgt) = (f.source(), f.target());
    let b = tgt.space();
    let lifts = Lifts::new(f.map());
    for lo in b.points().filter(|&p| tgt.value(p) == lat.top()) {
        for hi in b.up(lo) {
            if !lifts.of(lo, hi).iter().any(|&a| src.value(a) == lat.top()) {
                return Verdict::no(Witness::Pair {
                    lo: b.label(lo).to_string(),
                    hi: b.label(hi).to_string(),
                });
            }
        }
    }
    Verdict::yes()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreservationReport {
    /// The lax verdict was definitively true, so the check applied.
    pub applicable: bool,
    pub top_effective: Tri,
    pub fam_descent: Tri,
    pub holds: bool,
    pub violation: Option<String>,
}

/// Whenever `f` is effective in `Top⇓X`, its underlying map is effective in
/// `Top` and its family image is a descent map in `Fam(X)`.
pub fn forgetful_preservation_check(f: &LaxMorphism) -> Result<PreservationReport> {
    let lat = lax_lattice(f)?;
    let lax = laxcomma_effective_descent(f)?;
    if !lax.is_effective.is_true() {
        return Ok(PreservationReport {
            applicable: false,
            top_effective: Tri::Unknown,
            fam_descent: Tri::Unknown,
            holds: true,
            violation: None,
        });
    }
    let top = top_effective_descent_check(f.map()).is_effective.value;
    let fam = Tri::from_bool(fam_descent_in(&lat, &to_fam_morphism(f)).is_descent);
    let violation = match (top, fam) {
        (Tri::True, Tri::True) => None,
        (Tri::True, _) => Some("family image is not a descent map".to_string()),
        _ => Some("underlying map is not effective in Top".to_string()),
    };
    Ok(PreservationReport {
        applicable: true,
        top_effective: top,
        fam_descent: fam,
        holds: violation.is_none(),
        violation,
    })
}

/// Whether `(B,β) → (1,γ)` is a regular epimorphism, decided by building the
/// coequaliser of its kernel pair. Agrees with `γ = ⋁β` for nonempty `B`.
pub fn regular_epi_to_point(obj: &LaxObject, gamma: usize) -> Result<bool> {
    let base = obj.base();
    let point = LaxObject::point(base, gamma);
    let bang = CMap::constant(obj.space(), point.space(), 0);
    let f = LaxMorphism::new(obj.clone(), point.clone(), bang)?;
    let kernel = lax_pullback(&f, &f)?;
    let coeq = lax_coequalizer(&kernel.left, &kernel.right)?;
    let q = &coeq.object;
    Ok(q.len() == 1 && q.value(0) == gamma)
}

/// A pullback in `Top⇓X` with its two legs.
#[derive(Debug, Clone)]
pub struct LaxPullback {
    pub object: LaxObject,
    pub left: LaxMorphism,
    pub right: LaxMorphism,
}

/// Pullback of `f: (A,α) → (C,γ) ← (B,β): g`: the product equalised along
/// `f∘π₁` and `g∘π₂`.
pub fn lax_pullback(f: &LaxMorphism, g: &LaxMorphism) -> Result<LaxPullback> {
    if f.target() != g.target() {
        return Err(Error::NotComposable);
    }
    let base = f.source().base();
    let prod = lax_product(base, &[f.source().clone(), g.source().clone()])?;
    let fp = f.after(&prod.projections[0])?;
    let gp = g.after(&prod.projections[1])?;
    let (object, emb) = lax_equalizer(&fp, &gp)?;
    let left = prod.projections[0].after(&emb)?;
    let right = prod.projections[1].after(&emb)?;
    Ok(LaxPullback {
        object,
        left,
        right,
    })
}

/// The family image of a lax pullback, indexed like the `Fam(X)` pullback.
pub fn fam_image_of_pullback(p: &LaxPullback) -> FamObject {
    crate::famx::to_fam(&p.object)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finspace::{enumerate_cmaps, sum_space};
    use crate::fixtures::*;

    fn s() -> FiniteSpace {
        FiniteSpace::sierpinski()
    }

    /// Three 2-chains covering the pairs of `0 < 1 < 2`.
    pub(crate) fn three_chains() -> CMap {
        let c2 = FiniteSpace::chain(2);
        let sum = sum_space(&[c2.clone(), c2.clone(), c2]);
        CMap::new(
            sum.space.clone(),
            FiniteSpace::chain(3),
            vec![0, 1, 1, 2, 0, 2],
        )
        .unwrap()
    }

    #[test]
    fn sigma_on_sierpinski_is_identity() {
        let r = sigma(&s()).unwrap();
        assert_eq!(r.table, vec![0, 1]);
        assert!(r.adjunction);
        assert_eq!(sigma(&FiniteSpace::point()).unwrap().table, vec![0]);
    }

    #[test]
    fn sigma_rejects_non_t0() {
        let i = FiniteSpace::indiscrete("I", &["x", "y"]).unwrap();
        assert!(matches!(sigma(&i), Err(Error::NotT0(_))));
    }

    #[test]
    fn meets_preserve_convergence_points() {
        for x in [c3(), m3(), div12()] {
            assert!(scp_meet_compat_check(&x).unwrap());
        }
        assert!(matches!(
            scp_meet_compat_check(&antichain2()),
            Err(Error::NotALattice(_))
        ));
    }

    #[test]
    fn identity_is_effective() {
        let r = top_effective_descent_check(&CMap::identity(&c3()));
        assert!(r.is_descent.is_true() && r.is_effective.is_true());
    }

    #[test]
    fn discrete_to_sierpinski_is_not_descent() {
        let f = CMap::new(d2(), s(), vec![0, 1]).unwrap();
        let r = top_descent_check(&f);
        assert_eq!(
            r.is_descent.witness,
            Some(Witness::Pair {
                lo: "0".into(),
                hi: "1".into()
            })
        );
        assert!(r.is_effective.is_false());
    }

    #[test]
    fn fold_is_descent() {
        let sum = sum_space(&[s(), s()]);
        let fold = sum
            .copairing(&[CMap::identity(&s()), CMap::identity(&s())])
            .unwrap();
        assert!(top_effective_descent_check(&fold).is_effective.is_true());
    }

    #[test]
    fn three_chains_separate_descent_from_effective() {
        let r = top_effective_descent_check(&three_chains());
        assert!(r.is_descent.is_true());
        assert_eq!(
            r.is_effective.witness,
            Some(Witness::Chain {
                points: vec!["0".into(), "1".into(), "2".into()]
            })
        );
        assert_eq!(r.criterion, CHAIN_LIFTING);
    }

    #[test]
    fn effective_implies_descent_on_small_maps() {
        for a in crate::enumerate::posets_up_to(3) {
            for b in crate::enumerate::posets_up_to(3) {
                for f in enumerate_cmaps(&a, &b) {
                    let r = top_effective_descent_check(&f);
                    if r.is_effective.is_true() {
                        assert!(r.is_descent.is_true());
                    }
                }
            }
        }
    }

    fn lax(space: &FiniteSpace, base: &FiniteSpace, alpha: Vec<usize>) -> LaxObject {
        LaxObject::new(space.clone(), base.clone(), alpha).unwrap()
    }

    #[test]
    fn identity_passes_join_cover() {
        let obj = lax(&c3(), &s(), vec![0, 1, 1]);
        let r = join_cover_check(&LaxMorphism::identity(&obj)).unwrap();
        assert!(r.is_effective.is_true());
        assert!(
            cd_filtration_descent_check(&LaxMorphism::identity(&lax(&s(), &c3(), vec![0, 2])))
                .unwrap()
                .is_effective
                .is_true()
        );
    }

    #[test]
    fn missing_lift_over_top_level_fails() {
        // A = two points both over 0, mapping onto S with β = id.
        let a = lax(&s(), &s(), vec![0, 0]);
        let b = lax(&s(), &s(), vec![0, 1]);
        let f = LaxMorphism::from_table(a, b, vec![0, 1]).unwrap();
        let r = join_cover_check(&f).unwrap();
        assert!(r.is_effective.is_false());
        assert!(matches!(
            r.is_effective.witness,
            Some(Witness::JoinCover { .. })
        ));
        assert!(top_level_pair_lifting(&f).unwrap().is_false());
        assert!(all_w_lifting_check(&f).unwrap().is_false());
    }

    #[test]
    fn point_codomain_reduces_to_fam_descent() {
        let base = s();
        let a = lax(&d2(), &base, vec![0, 1]);
        let b = LaxObject::point(&base, 1);
        let f = LaxMorphism::from_table(a, b, vec![0, 0]).unwrap();
        let fam = fam_descent_in(&Lattice::new(&base).unwrap(), &to_fam_morphism(&f));
        assert_eq!(all_w_lifting_check(&f).unwrap().is_true(), fam.is_descent);
    }

    #[test]
    fn non_frame_base_is_labelled() {
        let base = m3();
        let obj = LaxObject::point(&base, 1);
        let r = laxcomma_effective_descent(&LaxMorphism::identity(&obj)).unwrap();
        assert_eq!(r.criterion, SUFFICIENT_BUNDLE);
        assert_ne!(r.is_effective.value, Tri::False);
        let down = join_cover_check(&LaxMorphism::identity(&obj)).unwrap();
        assert_eq!(down.is_effective.value, Tri::Unknown);
    }

    #[test]
    fn non_completely_distributive_is_rejected() {
        let obj = LaxObject::point(&m3(), 0);
        assert!(matches!(
            cd_filtration_descent_check(&LaxMorphism::identity(&obj)),
            Err(Error::NotCompletelyDistributive(_))
        ));
    }

    #[test]
    fn regular_epi_to_point_is_the_join() {
        let base = div12();
        let lat = Lattice::new(&base).unwrap();
        let obj = lax(
            &d2(),
            &base,
            vec![base.index_of("4").unwrap(), base.index_of("6").unwrap()],
        );
        let sup = lat.join(obj.value(0), obj.value(1));
        assert!(regular_epi_to_point(&obj, sup).unwrap());
        assert!(!regular_epi_to_point(&obj, lat.top()).unwrap() || sup == lat.top());
    }

    #[test]
    fn pullback_meets_structure_maps() {
        let base = c3();
        let a = lax(&s(), &base, vec![0, 2]);
        let c = lax(&d2(), &base, vec![1, 2]);
        let t = LaxObject::point(&base, 2);
        let f = LaxMorphism::from_table(a, t.clone(), vec![0, 0]).unwrap();
        let g = LaxMorphism::from_table(c, t, vec![0, 0]).unwrap();
        let p = lax_pullback(&f, &g).unwrap();
        let lat = Lattice::new(&base).unwrap();
        for w in p.object.space().points() {
            let (i, j) = (p.left.apply(w), p.right.apply(w));
            let expected = lat.meet(f.source().value(i), g.source().value(j));
            assert_eq!(p.object.value(w), expected);
        }
        let fam = crate::famx::fam_pullback(&to_fam_morphism(&f), &to_fam_morphism(&g)).unwrap();
        let mut lhs = fam_image_of_pullback(&p).values().to_vec();
        let mut rhs = fam.object.values().to_vec();
        lhs.sort();
        rhs.sort();
        assert_eq!(lhs, rhs);
    }
}
