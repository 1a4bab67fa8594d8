//! `Fam(X)`: families of points of `X` indexed by finite sets.
//!
//! A morphism `(x_i)_{i∈I} → (y_k)_{k∈K}` is an index map `f` with
//! `x_i <= y_{f(i)}`. Forgetting the topology of a lax object gives a family.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::finspace::FiniteSpace;
use crate::laxcomma::{LaxMorphism, LaxObject};
use crate::order::{distributivity_report, infimum, Lattice};

/// Default bound on the number of descent data examined per fibre.
pub const DEFAULT_THETA_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamObject {
    base: FiniteSpace,
    index: Vec<String>,
    values: Vec<usize>,
}

impl FamObject {
    pub fn new(base: FiniteSpace, index: Vec<String>, values: Vec<usize>) -> Result<Self> {
        let mut seen = HashSet::new();
        for i in &index {
            if !seen.insert(i.as_str()) {
                return Err(Error::DuplicatePoint(i.clone()));
            }
        }
        if values.len() != index.len() {
            return Err(Error::NotTotal(
                index.get(values.len()).cloned().unwrap_or_default(),
            ));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= base.len()) {
            return Err(Error::UnknownLabel(v.to_string()));
        }
        Ok(FamObject {
            base,
            index,
            values,
        })
    }

    /// Family with indices `0..n`.
    pub fn from_values(base: &FiniteSpace, values: Vec<usize>) -> Result<Self> {
        let index = (0..values.len()).map(|i| i.to_string()).collect();
        Self::new(base.clone(), index, values)
    }

    pub fn base(&self) -> &FiniteSpace {
        &self.base
    }

    pub fn index(&self) -> &[String] {
        &self.index
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn value(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamMorphism {
    source: FamObject,
    target: FamObject,
    map: Vec<usize>,
}

impl FamMorphism {
    pub fn new(source: FamObject, target: FamObject, map: Vec<usize>) -> Result<Self> {
        if source.base != target.base {
            return Err(Error::BaseMismatch);
        }
        if map.len() != source.len() {
            return Err(Error::NotTotal(
                source.index.get(map.len()).cloned().unwrap_or_default(),
            ));
        }
        for (i, &k) in map.iter().enumerate() {
            if k >= target.len() {
                return Err(Error::UnknownLabel(k.to_string()));
            }
            if !source.base.le(source.values[i], target.values[k]) {
                return Err(Error::NotLax(source.index[i].clone()));
            }
        }
        Ok(FamMorphism {
            source,
            target,
            map,
        })
    }

    pub fn identity(obj: &FamObject) -> Self {
        FamMorphism {
            source: obj.clone(),
            target: obj.clone(),
            map: (0..obj.len()).collect(),
        }
    }

    pub fn source(&self) -> &FamObject {
        &self.source
    }

    pub fn target(&self) -> &FamObject {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn fibre(&self, k: usize) -> Vec<usize> {
        (0..self.map.len()).filter(|&i| self.map[i] == k).collect()
    }
}

/// Underlying family of a lax object.
pub fn to_fam(obj: &LaxObject) -> FamObject {
    FamObject {
        base: obj.base().clone(),
        index: obj.space().labels().to_vec(),
        values: obj.alpha().table().to_vec(),
    }
}

pub fn to_fam_morphism(f: &LaxMorphism) -> FamMorphism {
    FamMorphism {
        source: to_fam(f.source()),
        target: to_fam(f.target()),
        map: f.map().table().to_vec(),
    }
}

fn lattice_of(base: &FiniteSpace) -> Result<Lattice> {
    Lattice::new(base).map_err(|e| Error::NotALattice(e.to_string()))
}

/// Why a family morphism fails to be a descent morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamDescentFailure {
    /// Target index with an empty fibre.
    NotSurjective { index: usize },
    /// `w <= β(b)` but `w ≠ ⋁_{f(a)=b} w ∧ α(a)`.
    Join { index: usize, w: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamDescentReport {
    pub is_descent: bool,
    pub failure: Option<FamDescentFailure>,
}

/// Descent in `Fam(X)`: `f` is onto and for every `b` and `w <= β(b)`,
/// `w = ⋁_{f(a)=b} w ∧ α(a)`.
pub fn fam_descent_check(f: &FamMorphism) -> Result<FamDescentReport> {
    let lat = lattice_of(&f.source.base)?;
    Ok(fam_descent_in(&lat, f))
}

pub(crate) fn fam_descent_in(lat: &Lattice, f: &FamMorphism) -> FamDescentReport {
    let x = lat.space();
    for b in 0..f.target.len() {
        let fibre = f.fibre(b);
        if fibre.is_empty() {
            return FamDescentReport {
                is_descent: false,
                failure: Some(FamDescentFailure::NotSurjective { index: b }),
            };
        }
        let top = f.target.values[b];
        for w in x.points().filter(|&w| x.le(w, top)) {
            let j = lat.join_all(fibre.iter().map(|&a| lat.meet(w, f.source.values[a])));
            if j != w {
                return FamDescentReport {
                    is_descent: false,
                    failure: Some(FamDescentFailure::Join { index: b, w }),
                };
            }
        }
    }
    FamDescentReport {
        is_descent: true,
        failure: None,
    }
}

/// Which test decided effective descent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamCriterion {
    /// Base is a frame: descent morphisms are effective.
    Frame,
    /// Per-fibre splitting of descent data, assembled for non-frame bases.
    Reconstructed,
}

impl FamCriterion {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Frame => "frame",
            Self::Reconstructed => "reconstructed criterion",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamEffectiveReport {
    pub is_effective: bool,
    pub criterion: FamCriterion,
    pub descent: FamDescentReport,
    /// Whether every enumerated descent datum splits.
    pub theta_splits: bool,
    /// A datum `θ` on the fibre over `index` that does not split, listed in
    /// fibre order.
    pub theta_witness: Option<(usize, Vec<usize>)>,
    pub thetas_checked: usize,
}

/// Effective descent in `Fam(X)`.
///
/// Over a frame this is the descent verdict. Otherwise every fibre's
/// connected descent data `θ` (with `θ(a) <= α(a)` and
/// `α(a') ∧ θ(a) = θ(a') ∧ α(a)`) must split as `θ(a) = α(a) ∧ ⋁θ`. The
/// splitting test also runs over frames, where it must always pass.
pub fn fam_effective_descent_check(f: &FamMorphism, cap: usize) -> Result<FamEffectiveReport> {
    let lat = lattice_of(&f.source.base)?;
    let is_frame = distributivity_report(lat.space())?.is_frame;
    let descent = fam_descent_in(&lat, f);
    let criterion = if is_frame {
        FamCriterion::Frame
    } else {
        FamCriterion::Reconstructed
    };
    let mut report = FamEffectiveReport {
        is_effective: false,
        criterion,
        descent: descent.clone(),
        theta_splits: true,
        theta_witness: None,
        thetas_checked: 0,
    };
    for b in 0..f.target.len() {
        let fibre = f.fibre(b);
        let (checked, witness) = split_fibre(&lat, f, &fibre, cap)?;
        report.thetas_checked += checked;
        if let Some(theta) = witness {
            report.theta_splits = false;
            report.theta_witness = Some((b, theta));
            break;
        }
    }
    if is_frame && !report.theta_splits {
        return Err(Error::Internal(
            "descent data over a frame failed to split".into(),
        ));
    }
    report.is_effective = descent.is_descent && report.theta_splits;
    Ok(report)
}

/// Enumerates connected descent data on one fibre; returns how many were
/// checked and the first one that does not split.
fn split_fibre(
    lat: &Lattice,
    f: &FamMorphism,
    fibre: &[usize],
    cap: usize,
) -> Result<(usize, Option<Vec<usize>>)> {
    let x = lat.space();
    let alpha: Vec<usize> = fibre.iter().map(|&a| f.source.values[a]).collect();
    let choices: Vec<Vec<usize>> = alpha
        .iter()
        .map(|&v| x.points().filter(|&w| x.le(w, v)).collect())
        .collect();
    let total = choices
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.len()))
        .unwrap_or(usize::MAX);
    if total > cap {
        return Err(Error::CapExceeded(format!(
            "{total} candidate descent data on one fibre"
        )));
    }
    let mut theta = Vec::with_capacity(fibre.len());
    let mut checked = 0;
    let mut witness = None;
    fn rec(
        lat: &Lattice,
        alpha: &[usize],
        choices: &[Vec<usize>],
        theta: &mut Vec<usize>,
        checked: &mut usize,
        witness: &mut Option<Vec<usize>>,
    ) {
        if witness.is_some() {
            return;
        }
        let k = theta.len();
        if k == alpha.len() {
            *checked += 1;
            let sup = lat.join_all(theta.iter().copied());
            if (0..k).any(|i| theta[i] != lat.meet(alpha[i], sup)) {
                *witness = Some(theta.clone());
            }
            return;
        }
        for &t in &choices[k] {
            // Compatibility with every earlier member of the fibre.
            if (0..k).all(|j| lat.meet(alpha[j], t) == lat.meet(theta[j], alpha[k])) {
                theta.push(t);
                rec(lat, alpha, choices, theta, checked, witness);
                theta.pop();
            }
        }
    }
    rec(
        lat,
        &alpha,
        &choices,
        &mut theta,
        &mut checked,
        &mut witness,
    );
    Ok((checked, witness))
}

/// Pullback of a cospan `f: (I,x) → (K,z) ← (J,y): g`: pairs `(i,j)` with
/// `f(i) = g(j)`, carrying `x_i ∧ y_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamPullback {
    pub object: FamObject,
    pub left: FamMorphism,
    pub right: FamMorphism,
}

pub fn fam_pullback(f: &FamMorphism, g: &FamMorphism) -> Result<FamPullback> {
    if f.target != g.target {
        return Err(Error::NotComposable);
    }
    let base = &f.source.base;
    let mut index = Vec::new();
    let mut values = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in 0..f.source.len() {
        for j in 0..g.source.len() {
            if f.map[i] == g.map[j] {
                let (xi, yj) = (f.source.values[i], g.source.values[j]);
                let m = infimum(base, &[xi, yj])
                    .ok_or_else(|| Error::MeetsMissing(base.labels_of(&[xi, yj])))?;
                index.push(format!("({},{})", f.source.index[i], g.source.index[j]));
                values.push(m);
                left.push(i);
                right.push(j);
            }
        }
    }
    let object = FamObject::new(base.clone(), index, values)?;
    Ok(FamPullback {
        left: FamMorphism::new(object.clone(), f.source.clone(), left)?,
        right: FamMorphism::new(object.clone(), g.source.clone(), right)?,
        object,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finspace::CMap;
    use crate::fixtures::m3;
    use crate::laxcomma::lax_sum;

    fn fam(base: &FiniteSpace, v: &[usize]) -> FamObject {
        FamObject::from_values(base, v.to_vec()).unwrap()
    }

    #[test]
    fn forgetting_topology() {
        let s = FiniteSpace::sierpinski();
        let obj = LaxObject::generic(&s);
        let f = to_fam(&obj);
        assert_eq!(f.values(), &[0, 1]);
        assert_eq!(f.len(), 2);
        let id = to_fam_morphism(&LaxMorphism::identity(&obj));
        assert_eq!(id, FamMorphism::identity(&f));

        let sum = lax_sum(&s, &[obj.clone(), LaxObject::point(&s, 1)]).unwrap();
        assert_eq!(to_fam(&sum.object).values(), &[0, 1, 1]);
    }

    #[test]
    fn sierpinski_descent_examples() {
        let s = FiniteSpace::sierpinski();
        let f = FamMorphism::new(fam(&s, &[0, 0]), fam(&s, &[1]), vec![0, 0]).unwrap();
        let r = fam_descent_check(&f).unwrap();
        assert!(!r.is_descent);
        assert_eq!(r.failure, Some(FamDescentFailure::Join { index: 0, w: 1 }));

        let f = FamMorphism::new(fam(&s, &[0, 1]), fam(&s, &[1]), vec![0, 0]).unwrap();
        assert!(fam_descent_check(&f).unwrap().is_descent);
        let e = fam_effective_descent_check(&f, DEFAULT_THETA_CAP).unwrap();
        assert!(e.is_effective);
        assert_eq!(e.criterion, FamCriterion::Frame);
    }

    #[test]
    fn empty_fibre_is_not_descent() {
        let s = FiniteSpace::sierpinski();
        let f = FamMorphism::new(fam(&s, &[]), fam(&s, &[0]), vec![]).unwrap();
        let r = fam_descent_check(&f).unwrap();
        assert_eq!(
            r.failure,
            Some(FamDescentFailure::NotSurjective { index: 0 })
        );
    }

    #[test]
    fn identity_is_effective() {
        let m = m3();
        let obj = fam(&m, &[1, 2, 4]);
        let r =
            fam_effective_descent_check(&FamMorphism::identity(&obj), DEFAULT_THETA_CAP).unwrap();
        assert!(r.is_effective);
        assert_eq!(r.criterion, FamCriterion::Reconstructed);
    }

    #[test]
    fn m3_fibre_over_top() {
        let m = m3();
        let (a, b, top) = (1, 2, 4);
        let f = FamMorphism::new(fam(&m, &[a, b]), fam(&m, &[top]), vec![0, 0]).unwrap();
        // top ∧ (a ∨ b) = top but c ≤ top gives c ≠ ⊥.
        let r = fam_descent_check(&f).unwrap();
        assert!(!r.is_descent);
        let e = fam_effective_descent_check(&f, DEFAULT_THETA_CAP).unwrap();
        assert!(!e.is_effective);
        assert!(e.thetas_checked > 0);
    }

    #[test]
    fn pullbacks_carry_meets() {
        let x = FiniteSpace::chain(3);
        let f = FamMorphism::new(fam(&x, &[1, 2]), fam(&x, &[2]), vec![0, 0]).unwrap();
        let g = FamMorphism::new(fam(&x, &[0, 2]), fam(&x, &[2]), vec![0, 0]).unwrap();
        let p = fam_pullback(&f, &g).unwrap();
        assert_eq!(p.object.values(), &[0, 1, 0, 2]);
        assert_eq!(p.object.index()[1], "(0,1)");
    }

    #[test]
    fn lax_condition_enforced() {
        let s = FiniteSpace::sierpinski();
        let err = FamMorphism::new(fam(&s, &[1]), fam(&s, &[0]), vec![0]).unwrap_err();
        assert_eq!(err, Error::NotLax("0".into()));
        let _ = CMap::identity(&s);
    }
}
