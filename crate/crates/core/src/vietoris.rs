//! The lower Vietoris monad on finite spaces.
//!
//! `VZ` is the set of closed (up-closed) subsets of `Z` with the hit
//! topology, generated by `{A : A ∩ W ≠ ∅}` for open `W`. Its natural order
//! is reverse containment.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::finspace::{CMap, FiniteSpace};
use crate::order::infimum;

/// Largest base for which `VVZ` is built.
pub const DOUBLE_VIETORIS_CAP: usize = 5;

/// Largest `VVZ` for which `VVVZ` (needed by associativity) is built.
pub const TRIPLE_VIETORIS_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VietorisSpace {
    pub base: FiniteSpace,
    pub space: FiniteSpace,
    /// `sets[i]` is the closed subset of `base` that is point `i`.
    pub sets: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl VietorisSpace {
    pub fn index_of_set(&self, set: &[usize]) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

fn set_label(z: &FiniteSpace, set: &[usize]) -> String {
    format!("{{{}}}", z.labels_of(set).join(","))
}

fn hits(set: &[usize], w: &[usize]) -> bool {
    set.iter().any(|x| w.contains(x))
}

/// `VZ` with the order induced by the hit sets, checked against reverse
/// containment.
pub fn vietoris_space(z: &FiniteSpace) -> Result<VietorisSpace> {
    let sets = z.closed_sets();
    let opens = z.open_sets();
    let labels: Vec<String> = sets.iter().map(|s| set_label(z, s)).collect();
    // A <= B iff every hit set containing B contains A.
    let hit_order = |i: usize, j: usize| {
        opens
            .iter()
            .all(|w| !hits(&sets[j], w) || hits(&sets[i], w))
    };
    for i in 0..sets.len() {
        for j in 0..sets.len() {
            let contains = sets[j].iter().all(|x| sets[i].contains(x));
            if hit_order(i, j) != contains {
                return Err(Error::Internal(format!(
                    "hit topology order disagrees with reverse containment at {} and {}",
                    labels[i], labels[j]
                )));
            }
        }
    }
    let space = FiniteSpace::from_preorder(format!("V({})", z.name()), labels, |i, j| {
        sets[j].iter().all(|x| sets[i].contains(x))
    })?;
    let index = sets
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    Ok(VietorisSpace {
        base: z.clone(),
        space,
        sets,
        index,
    })
}

/// Every open set of the hit topology, generated from the hit sets by
/// finite unions and intersections. Each open is a sorted list of points
/// of `VZ`.
pub fn hit_topology(vz: &VietorisSpace) -> BTreeSet<Vec<usize>> {
    let n = vz.len();
    let mut family: BTreeSet<Vec<usize>> = BTreeSet::new();
    family.insert(vec![]);
    family.insert((0..n).collect());
    for w in vz.base.open_sets() {
        family.insert((0..n).filter(|&i| hits(&vz.sets[i], &w)).collect());
    }
    loop {
        let members: Vec<Vec<usize>> = family.iter().cloned().collect();
        let before = family.len();
        for (i, u) in members.iter().enumerate() {
            for v in &members[i + 1..] {
                let union: BTreeSet<usize> = u.iter().chain(v).copied().collect();
                family.insert(union.into_iter().collect());
                family.insert(u.iter().filter(|x| v.contains(x)).copied().collect());
            }
        }
        if family.len() == before {
            return family;
        }
    }
}

/// `Vf(A)` = closure of `f[A]`.
pub fn vietoris_functor_map(f: &CMap, vs: &VietorisSpace, vt: &VietorisSpace) -> Result<CMap> {
    if &vs.base != f.source() || &vt.base != f.target() {
        return Err(Error::NotComposable);
    }
    let table = vs
        .sets
        .iter()
        .map(|a| {
            let img = f.target().closure(&f.image(a));
            vt.index_of_set(&img)
                .ok_or_else(|| Error::Internal("closure of an image is not closed".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    CMap::new(vs.space.clone(), vt.space.clone(), table)
}

/// Unit `z ↦ ↑z`.
pub fn vietoris_unit(vz: &VietorisSpace) -> Result<CMap> {
    let z = &vz.base;
    let table = z
        .points()
        .map(|x| {
            vz.index_of_set(&z.up(x))
                .expect("principal up-sets are closed")
        })
        .collect();
    CMap::new(z.clone(), vz.space.clone(), table)
}

/// Multiplication `VVZ → VZ`, `𝒜 ↦ ⋃𝒜`.
pub fn vietoris_mult(vvz: &VietorisSpace, vz: &VietorisSpace) -> Result<CMap> {
    if vvz.base != vz.space {
        return Err(Error::NotComposable);
    }
    let table = vvz
        .sets
        .iter()
        .map(|family| {
            let union: BTreeSet<usize> = family
                .iter()
                .flat_map(|&i| vz.sets[i].iter().copied())
                .collect();
            let union: Vec<usize> = union.into_iter().collect();
            vz.index_of_set(&union)
                .ok_or_else(|| Error::Internal("union of closed sets is not closed".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    CMap::new(vvz.space.clone(), vz.space.clone(), table)
}

/// Monad structure on one base with the outcome of every law.
#[derive(Debug, Clone)]
pub struct VietorisMonad {
    pub vz: VietorisSpace,
    pub vvz: VietorisSpace,
    pub unit: CMap,
    pub mult: CMap,
    /// `m ∘ e_V = id`.
    pub left_unit_law: bool,
    /// `m ∘ V e = id`.
    pub right_unit_law: bool,
    /// `m ∘ m_V = m ∘ V m`; `None` when `VVVZ` exceeds the cap.
    pub associativity_law: Option<bool>,
}

fn check_base_cap(z: &FiniteSpace) -> Result<()> {
    if z.len() > DOUBLE_VIETORIS_CAP {
        return Err(Error::CapExceeded(format!(
            "double Vietoris space over {} points (cap {DOUBLE_VIETORIS_CAP})",
            z.len()
        )));
    }
    Ok(())
}

pub fn vietoris_monad(z: &FiniteSpace) -> Result<VietorisMonad> {
    check_base_cap(z)?;
    let vz = vietoris_space(z)?;
    let vvz = vietoris_space(&vz.space)?;
    let unit = vietoris_unit(&vz)?;
    let mult = vietoris_mult(&vvz, &vz)?;
    let id: Vec<usize> = (0..vz.len()).collect();

    let unit_v = vietoris_unit(&vvz)?;
    let left_unit_law = mult.after(&unit_v)?.table() == id.as_slice();
    let v_unit = vietoris_functor_map(&unit, &vz, &vvz)?;
    let right_unit_law = mult.after(&v_unit)?.table() == id.as_slice();

    let associativity_law = if vvz.len() <= TRIPLE_VIETORIS_CAP {
        let vvvz = vietoris_space(&vvz.space)?;
        let mult_v = vietoris_mult(&vvvz, &vvz)?;
        let v_mult = vietoris_functor_map(&mult, &vvvz, &vvz)?;
        Some(mult.after(&mult_v)?.table() == mult.after(&v_mult)?.table())
    } else {
        None
    };
    Ok(VietorisMonad {
        vz,
        vvz,
        unit,
        mult,
        left_unit_law,
        right_unit_law,
        associativity_law,
    })
}

/// Outcome of testing `A ↦ ⋀A` as a Vietoris algebra structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VietorisAlgebraReport {
    pub is_algebra: bool,
    /// `a(A) = ⋀A`, indexed like the points of `VX`.
    pub structure_map: Vec<usize>,
    pub continuous: bool,
    /// `a ∘ e = id`.
    pub unit_law: bool,
    /// `a ∘ Va = a ∘ m`.
    pub associativity_law: bool,
}

/// Tests whether `X` is a lower Vietoris algebra via `a(A) = ⋀A`.
///
/// Fails with `MeetsMissing` when some closed set has no infimum; the
/// unit law forces this structure map, so there is no other candidate.
pub fn vietoris_algebra_check(x: &FiniteSpace) -> Result<VietorisAlgebraReport> {
    if !x.is_t0() {
        return Err(Error::NotT0(x.name().to_string()));
    }
    check_base_cap(x)?;
    let vx = vietoris_space(x)?;
    let a: Vec<usize> = vx
        .sets
        .iter()
        .map(|s| infimum(x, s).ok_or_else(|| Error::MeetsMissing(x.labels_of(s))))
        .collect::<Result<_>>()?;
    let continuous = crate::finspace::is_continuous(&a, &vx.space, x);
    let unit = vietoris_unit(&vx)?;
    let unit_law = x.points().all(|p| a[unit.apply(p)] == p);
    let associativity_law = if continuous {
        let vvx = vietoris_space(&vx.space)?;
        let a_map = CMap::new(vx.space.clone(), x.clone(), a.clone())?;
        let va = vietoris_functor_map(&a_map, &vvx, &vx)?;
        let m = vietoris_mult(&vvx, &vx)?;
        (0..vvx.len()).all(|f| a[va.apply(f)] == a[m.apply(f)])
    } else {
        false
    };
    Ok(VietorisAlgebraReport {
        is_algebra: continuous && unit_law && associativity_law,
        structure_map: a,
        continuous,
        unit_law,
        associativity_law,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn vietoris_of_sierpinski() {
        let v = vietoris_space(&FiniteSpace::sierpinski()).unwrap();
        assert_eq!(v.sets, vec![vec![], vec![1], vec![0, 1]]);
        let (e, one, all) = (0, 1, 2);
        assert!(v.space.le(all, one) && v.space.le(one, e));
        assert!(v.space.is_chain());
    }

    #[test]
    fn vietoris_of_point_and_d2() {
        let v = vietoris_space(&FiniteSpace::point()).unwrap();
        assert_eq!(v.len(), 2);
        let v = vietoris_space(&d2()).unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(v.space.order_pairs().len(), 9);
    }

    #[test]
    fn functor_on_maps() {
        let s = FiniteSpace::sierpinski();
        let (vd, vs) = (vietoris_space(&d2()).unwrap(), vietoris_space(&s).unwrap());
        let f = CMap::constant(&d2(), &s, 0);
        let vf = vietoris_functor_map(&f, &vd, &vs).unwrap();
        let p = vd.index_of_set(&[0]).unwrap();
        assert_eq!(vs.sets[vf.apply(p)], vec![0, 1]);
        assert_eq!(vs.sets[vf.apply(0)], Vec::<usize>::new());
        let id = vietoris_functor_map(&CMap::identity(&s), &vs, &vs).unwrap();
        assert_eq!(id.table(), &[0, 1, 2]);
    }

    #[test]
    fn monad_laws() {
        for z in [FiniteSpace::point(), FiniteSpace::sierpinski(), d2(), c3()] {
            let m = vietoris_monad(&z).unwrap();
            assert!(m.left_unit_law && m.right_unit_law, "{}", z.name());
            assert_eq!(m.associativity_law, Some(true), "{}", z.name());
        }
        let m = vietoris_monad(&FiniteSpace::sierpinski()).unwrap();
        assert_eq!(m.vz.sets[m.unit.apply(0)], vec![0, 1]);
    }

    #[test]
    fn algebras() {
        let r = vietoris_algebra_check(&c3()).unwrap();
        assert!(r.is_algebra);
        let v = vietoris_space(&c3()).unwrap();
        assert_eq!(r.structure_map[v.index_of_set(&[]).unwrap()], 2);
        assert!(
            vietoris_algebra_check(&FiniteSpace::point())
                .unwrap()
                .is_algebra
        );
        assert!(matches!(
            vietoris_algebra_check(&antichain2()),
            Err(Error::MeetsMissing(_))
        ));
        assert!(vietoris_algebra_check(&m3()).unwrap().is_algebra);
    }

    #[test]
    fn hit_topology_is_the_lower_topology() {
        let v = vietoris_space(&FiniteSpace::sierpinski()).unwrap();
        let opens = hit_topology(&v);
        let expect: BTreeSet<Vec<usize>> = v.space.open_sets().into_iter().collect();
        assert_eq!(opens, expect);
    }
}
