//! The lax comma category `Top⇓X` over a finite base space `X`.
//!
//! An object `(A, α)` is a finite space with a continuous structure map
//! `α: A → X`; a morphism `f: (A, α) → (B, β)` is a continuous map with
//! `α(a) <= β(f(a))` for every point `a`.

mod exponential;
pub mod oracle;

use std::fmt;

use crate::error::{Error, Result};
use crate::finspace::{
    is_continuous, product_space, quotient_by_pairs, subspace, sum_space, CMap, FiniteSpace,
    Product, Sum,
};
use crate::order::{infimum, lattice_report, Lattice};

pub use exponential::{
    exponentiability_report, exponential_object, function_space, implication, mate, uncurry,
    ExponentiabilityConfig, ExponentiabilityReport, ExponentiabilityVerdict, Exponential,
    LanSampleReport,
};
pub use oracle::{verify_universal_property, OracleConfig, OracleReport, UniversalInstance};

/// An object `(A, α)` of `Top⇓X`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaxObject {
    alpha: CMap,
}

impl fmt::Debug for LaxObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.space(), self.alpha)
    }
}

impl LaxObject {
    pub fn new(space: FiniteSpace, base: FiniteSpace, alpha: Vec<usize>) -> Result<Self> {
        Ok(LaxObject {
            alpha: CMap::new(space, base, alpha)?,
        })
    }

    pub fn from_map(alpha: CMap) -> Self {
        LaxObject { alpha }
    }

    pub fn from_labels<S: AsRef<str>>(
        space: FiniteSpace,
        base: FiniteSpace,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        Ok(LaxObject {
            alpha: CMap::from_labels(space, base, pairs)?,
        })
    }

    /// `(A, x)` with the constant structure map.
    pub fn constant(space: &FiniteSpace, base: &FiniteSpace, x: usize) -> Self {
        LaxObject {
            alpha: CMap::constant(space, base, x),
        }
    }

    /// The one-point object `(1, x)`.
    pub fn point(base: &FiniteSpace, x: usize) -> Self {
        Self::constant(&FiniteSpace::point(), base, x)
    }

    /// `(X, 1_X)`.
    pub fn generic(base: &FiniteSpace) -> Self {
        LaxObject {
            alpha: CMap::identity(base),
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        self.alpha.source()
    }

    pub fn base(&self) -> &FiniteSpace {
        self.alpha.target()
    }

    pub fn alpha(&self) -> &CMap {
        &self.alpha
    }

    #[inline]
    pub fn value(&self, a: usize) -> usize {
        self.alpha.apply(a)
    }

    pub fn len(&self) -> usize {
        self.space().len()
    }

    pub fn is_empty(&self) -> bool {
        self.space().is_empty()
    }
}

/// Outcome of checking the lax triangle `α <= β·f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LaxCheck {
    pub holds: bool,
    /// First point where the triangle fails.
    pub witness: Option<usize>,
}

/// Checks `α(a) <= β(f(a))` for every `a`.
pub fn is_lax_morphism(f: &CMap, src: &LaxObject, tgt: &LaxObject) -> Result<LaxCheck> {
    if src.base() != tgt.base() {
        return Err(Error::BaseMismatch);
    }
    if f.source() != src.space() || f.target() != tgt.space() {
        return Err(Error::NotComposable);
    }
    let witness = lax_failure(f.table(), src, tgt);
    Ok(LaxCheck {
        holds: witness.is_none(),
        witness,
    })
}

#[inline]
pub(crate) fn lax_failure(table: &[usize], src: &LaxObject, tgt: &LaxObject) -> Option<usize> {
    let x = src.base();
    src.space()
        .points()
        .find(|&a| !x.le(src.value(a), tgt.value(table[a])))
}

/// A morphism of `Top⇓X`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaxMorphism {
    source: LaxObject,
    target: LaxObject,
    map: CMap,
}

impl fmt::Debug for LaxMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.map)
    }
}

impl LaxMorphism {
    pub fn new(source: LaxObject, target: LaxObject, map: CMap) -> Result<Self> {
        let check = is_lax_morphism(&map, &source, &target)?;
        if let Some(a) = check.witness {
            return Err(Error::NotLax(source.space().label(a).to_string()));
        }
        Ok(LaxMorphism {
            source,
            target,
            map,
        })
    }

    pub fn from_table(source: LaxObject, target: LaxObject, table: Vec<usize>) -> Result<Self> {
        let map = CMap::new(source.space().clone(), target.space().clone(), table)?;
        Self::new(source, target, map)
    }

    pub(crate) fn new_unchecked(source: LaxObject, target: LaxObject, map: CMap) -> Self {
        debug_assert!(lax_failure(map.table(), &source, &target).is_none());
        LaxMorphism {
            source,
            target,
            map,
        }
    }

    pub fn identity(obj: &LaxObject) -> Self {
        Self::new_unchecked(obj.clone(), obj.clone(), CMap::identity(obj.space()))
    }

    pub fn source(&self) -> &LaxObject {
        &self.source
    }

    pub fn target(&self) -> &LaxObject {
        &self.target
    }

    pub fn map(&self) -> &CMap {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map.apply(a)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &LaxMorphism) -> Result<LaxMorphism> {
        if first.target != self.source {
            return Err(Error::NotComposable);
        }
        Ok(Self::new_unchecked(
            first.source.clone(),
            self.target.clone(),
            self.map.after(&first.map)?,
        ))
    }
}

fn common_base<'a>(base: &'a FiniteSpace, objects: &[LaxObject]) -> Result<&'a FiniteSpace> {
    if objects.iter().any(|o| o.base() != base) {
        return Err(Error::BaseMismatch);
    }
    Ok(base)
}

/// A lax sum with its injections.
#[derive(Debug, Clone)]
pub struct LaxSum {
    pub object: LaxObject,
    pub injections: Vec<LaxMorphism>,
    pub sum: Sum,
}

/// Sum: the topological sum with the copaired structure map.
pub fn lax_sum(base: &FiniteSpace, objects: &[LaxObject]) -> Result<LaxSum> {
    common_base(base, objects)?;
    let spaces: Vec<FiniteSpace> = objects.iter().map(|o| o.space().clone()).collect();
    let sum = sum_space(&spaces);
    let mut alpha = vec![0; sum.space.len()];
    for (inj, obj) in sum.injections.iter().zip(objects) {
        for a in obj.space().points() {
            alpha[inj.apply(a)] = obj.value(a);
        }
    }
    let object = LaxObject {
        alpha: CMap::new(sum.space.clone(), base.clone(), alpha)?,
    };
    let injections = sum
        .injections
        .iter()
        .zip(objects)
        .map(|(inj, obj)| LaxMorphism::new_unchecked(obj.clone(), object.clone(), inj.clone()))
        .collect();
    Ok(LaxSum {
        object,
        injections,
        sum,
    })
}

fn check_parallel(f: &LaxMorphism, g: &LaxMorphism) -> Result<()> {
    if f.source != g.source || f.target != g.target {
        return Err(Error::NotParallel);
    }
    Ok(())
}

/// Equaliser: the Top equaliser with the restricted structure map.
pub fn lax_equalizer(f: &LaxMorphism, g: &LaxMorphism) -> Result<(LaxObject, LaxMorphism)> {
    check_parallel(f, g)?;
    let src = f.source();
    let agree: Vec<usize> = src
        .space()
        .points()
        .filter(|&a| f.apply(a) == g.apply(a))
        .collect();
    let (_, emb) = subspace(src.space(), &agree);
    let obj = LaxObject {
        alpha: src.alpha.after(&emb)?,
    };
    let m = LaxMorphism::new_unchecked(obj.clone(), src.clone(), emb);
    Ok((obj, m))
}

/// A lax product with its projections.
#[derive(Debug, Clone)]
pub struct LaxProduct {
    pub object: LaxObject,
    pub projections: Vec<LaxMorphism>,
    pub product: Product,
}

impl LaxProduct {
    /// Mediating map of a cone, if it is a lax morphism.
    pub fn mediate(&self, source: &LaxObject, legs: &[LaxMorphism]) -> Result<LaxMorphism> {
        let maps: Vec<CMap> = legs.iter().map(|l| l.map().clone()).collect();
        if maps.is_empty() {
            let map = CMap::constant(source.space(), self.object.space(), 0);
            return LaxMorphism::new(source.clone(), self.object.clone(), map);
        }
        let map = self.product.pairing(&maps)?;
        LaxMorphism::new(source.clone(), self.object.clone(), map)
    }
}

/// Checks that the base has infima of all families of the given arity and
/// returns the first failing family otherwise.
pub fn meets_of_arity(base: &FiniteSpace, arity: usize) -> std::result::Result<(), Vec<usize>> {
    if arity == 0 {
        return match infimum(base, &[]) {
            Some(_) => Ok(()),
            None => Err(vec![]),
        };
    }
    if arity >= 2 {
        for x in base.points() {
            for y in x + 1..base.len() {
                if infimum(base, &[x, y]).is_none() {
                    return Err(vec![x, y]);
                }
            }
        }
    }
    Ok(())
}

/// Product: the Top product with the pointwise meet `⊓ α_i` of the
/// structure maps.
pub fn lax_product(base: &FiniteSpace, objects: &[LaxObject]) -> Result<LaxProduct> {
    common_base(base, objects)?;
    if let Err(family) = meets_of_arity(base, objects.len()) {
        return Err(Error::MeetsMissing(base.labels_of(&family)));
    }
    let spaces: Vec<FiniteSpace> = objects.iter().map(|o| o.space().clone()).collect();
    let product = product_space(&spaces);
    let alpha: Vec<usize> = product
        .space
        .points()
        .map(|p| {
            let vals: Vec<usize> = product
                .tuple(p)
                .iter()
                .zip(objects)
                .map(|(&c, o)| o.value(c))
                .collect();
            infimum(base, &vals).ok_or_else(|| Error::MeetsMissing(base.labels_of(&vals)))
        })
        .collect::<Result<_>>()?;
    let object = LaxObject {
        alpha: CMap::new(product.space.clone(), base.clone(), alpha)?,
    };
    let projections = product
        .projections
        .iter()
        .zip(objects)
        .map(|(pr, o)| LaxMorphism::new_unchecked(object.clone(), o.clone(), pr.clone()))
        .collect();
    Ok(LaxProduct {
        object,
        projections,
        product,
    })
}

/// Left Kan extension by the open-neighbourhood formula
/// `c ↦ ⋀_{V ∋ c open} ⋁_{b ∈ q⁻¹(V)} β(b)`, enumerating every open `V`.
pub fn lan_by_neighbourhoods(lat: &Lattice, beta: &CMap, q: &CMap) -> Vec<usize> {
    let c_space = q.target();
    let opens = c_space.open_sets();
    c_space
        .points()
        .map(|c| {
            lat.meet_all(
                opens
                    .iter()
                    .filter(|v| v.contains(&c))
                    .map(|v| lat.join_all(q.preimage(v).into_iter().map(|b| beta.apply(b)))),
            )
        })
        .collect()
}

/// Left Kan extension by the order formula `c ↦ ⋁{β(b) : q(b) <= c}`.
pub fn lan_by_order(lat: &Lattice, beta: &CMap, q: &CMap) -> Vec<usize> {
    let c_space = q.target();
    c_space
        .points()
        .map(|c| {
            lat.join_all(
                q.source()
                    .points()
                    .filter(|&b| c_space.le(q.apply(b), c))
                    .map(|b| beta.apply(b)),
            )
        })
        .collect()
}

/// `Lan_q β` for `β: B → X`, `q: B → C`, with `X` a finite lattice.
///
/// Computed from the neighbourhood formula and cross-checked against the
/// order formula; a disagreement is an internal error.
pub fn lan_extension(beta: &CMap, q: &CMap) -> Result<CMap> {
    if beta.source() != q.source() {
        return Err(Error::NotComposable);
    }
    let lat = Lattice::new(beta.target()).map_err(|e| Error::NotACompleteLattice(e.to_string()))?;
    lan_extension_in(&lat, beta, q)
}

pub(crate) fn lan_extension_in(lat: &Lattice, beta: &CMap, q: &CMap) -> Result<CMap> {
    let by_nbhd = lan_by_neighbourhoods(lat, beta, q);
    let by_order = lan_by_order(lat, beta, q);
    if by_nbhd != by_order {
        return Err(Error::Internal(format!(
            "Kan extension formulas disagree: {by_nbhd:?} vs {by_order:?}"
        )));
    }
    let map = CMap::new(q.target().clone(), beta.target().clone(), by_nbhd)
        .map_err(|e| Error::Internal(format!("Kan extension not continuous: {e}")))?;
    if let Some(b) = q
        .source()
        .points()
        .find(|&b| !lat.le(beta.apply(b), map.apply(q.apply(b))))
    {
        return Err(Error::Internal(format!(
            "Kan extension does not dominate at {}",
            q.source().label(b)
        )));
    }
    Ok(map)
}

/// A coequaliser with its quotient morphism.
#[derive(Debug, Clone)]
pub struct LaxCoequalizer {
    pub object: LaxObject,
    pub quotient: LaxMorphism,
}

/// Coequaliser: the Top quotient `q` with structure map `Lan_q β`.
pub fn lax_coequalizer(f: &LaxMorphism, g: &LaxMorphism) -> Result<LaxCoequalizer> {
    check_parallel(f, g)?;
    let target = f.target();
    let pairs: Vec<(usize, usize)> = f
        .source()
        .space()
        .points()
        .map(|a| (f.apply(a), g.apply(a)))
        .collect();
    let (_, q) = quotient_by_pairs(target.space(), &pairs);
    let gamma = lan_extension(target.alpha(), &q)?;
    let object = LaxObject { alpha: gamma };
    let quotient = LaxMorphism::new_unchecked(target.clone(), object.clone(), q);
    Ok(LaxCoequalizer { object, quotient })
}

/// Initial lift of a cone `(f_i: A → A_i)` against `(A_i, α_i)`:
/// `γ(a) = ⋀_i α_i(f_i(a))`.
pub fn initial_lift(
    space: &FiniteSpace,
    base: &FiniteSpace,
    cone: &[(CMap, LaxObject)],
) -> Result<LaxObject> {
    let lat = Lattice::new(base).map_err(|e| Error::NotACompleteLattice(e.to_string()))?;
    for (f, obj) in cone {
        if obj.base() != base {
            return Err(Error::BaseMismatch);
        }
        if f.source() != space || f.target() != obj.space() {
            return Err(Error::NotComposable);
        }
    }
    let gamma: Vec<usize> = space
        .points()
        .map(|a| lat.meet_all(cone.iter().map(|(f, o)| o.value(f.apply(a)))))
        .collect();
    LaxObject::new(space.clone(), base.clone(), gamma)
        .map_err(|e| Error::Internal(format!("initial lift not continuous: {e}")))
}

/// A chain-indexed filtration `u ↦ A_u` of a space by closed subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    pub base: FiniteSpace,
    pub space: FiniteSpace,
    /// `levels[u]` is `A_u`, sorted.
    pub levels: Vec<Vec<usize>>,
}

fn chain_check(base: &FiniteSpace) -> Result<()> {
    for x in base.points() {
        for y in base.points() {
            if !base.comparable(x, y) {
                return Err(Error::NotAChain(
                    base.label(x).to_string(),
                    base.label(y).to_string(),
                ));
            }
        }
    }
    if !base.is_t0() {
        return Err(Error::NotT0(base.name().to_string()));
    }
    Ok(())
}

/// `(A, α) ↦ (α⁻¹(↑u))_u`.
pub fn to_filtration(obj: &LaxObject) -> Result<Filtration> {
    let base = obj.base();
    chain_check(base)?;
    let levels = base
        .points()
        .map(|u| obj.alpha().preimage(&base.up(u)))
        .collect();
    Ok(Filtration {
        base: base.clone(),
        space: obj.space().clone(),
        levels,
    })
}

/// `(A_u)_u ↦ (a ↦ ⋁{u : a ∈ A_u})`.
///
/// On a finite chain every level is a successor, so the intersection
/// condition reduces to nesting: `A_⊥ = A` and `u <= v ⇒ A_v ⊆ A_u`.
pub fn from_filtration(filtration: &Filtration) -> Result<LaxObject> {
    let base = &filtration.base;
    let space = &filtration.space;
    chain_check(base)?;
    if filtration.levels.len() != base.len() {
        return Err(Error::BadFiltration(format!(
            "{} levels for a {}-point chain",
            filtration.levels.len(),
            base.len()
        )));
    }
    for (u, level) in filtration.levels.iter().enumerate() {
        if level.iter().any(|&a| a >= space.len()) {
            return Err(Error::BadFiltration(
                "level mentions an unknown point".into(),
            ));
        }
        if !space.is_closed(level) {
            return Err(Error::NotClosedLevel(base.label(u).to_string()));
        }
    }
    let bottom = base
        .points()
        .find(|&u| base.points().all(|v| base.le(u, v)));
    if let Some(b) = bottom {
        if filtration.levels[b].len() != space.len() {
            return Err(Error::BadFiltration(
                "bottom level is not the whole space".into(),
            ));
        }
    }
    for u in base.points() {
        for v in base.points() {
            if base.le(u, v)
                && !filtration.levels[v]
                    .iter()
                    .all(|a| filtration.levels[u].contains(a))
            {
                return Err(Error::BadFiltration(format!(
                    "level {} is not contained in level {}",
                    base.label(v),
                    base.label(u)
                )));
            }
        }
    }
    let alpha: Vec<usize> = space
        .points()
        .map(|a| {
            base.points()
                .filter(|&u| filtration.levels[u].contains(&a))
                .max_by(|&u, &v| {
                    if base.le(u, v) {
                        std::cmp::Ordering::Less
                    } else {
                        std::cmp::Ordering::Greater
                    }
                })
                .ok_or_else(|| Error::BadFiltration("point in no level".into()))
        })
        .collect::<Result<_>>()?;
    LaxObject::new(space.clone(), base.clone(), alpha)
}

/// Both sides of the distributivity comparison
/// `(A,α)×(B,β) + (A,α)×(C,γ) → (A,α)×((B,β)+(C,γ))`.
///
/// Returns the canonical comparison map, which is an isomorphism of lax
/// objects exactly when it is bijective and both it and its inverse are lax.
pub fn distributivity_comparison(
    base: &FiniteSpace,
    a: &LaxObject,
    b: &LaxObject,
    c: &LaxObject,
) -> Result<(LaxObject, LaxObject, Vec<usize>)> {
    let bc = lax_sum(base, &[b.clone(), c.clone()])?;
    let lhs = lax_product(base, &[a.clone(), bc.object.clone()])?;
    let ab = lax_product(base, &[a.clone(), b.clone()])?;
    let ac = lax_product(base, &[a.clone(), c.clone()])?;
    let rhs = lax_sum(base, &[ab.object.clone(), ac.object.clone()])?;
    // rhs point -> lhs point
    let table: Vec<usize> = rhs
        .object
        .space()
        .points()
        .map(|p| {
            let (k, x) = rhs.sum.locate(p);
            let prod = if k == 0 { &ab } else { &ac };
            let t = prod.product.tuple(x);
            let summand_point = bc.injections[k].apply(t[1]);
            lhs.product.index_of_tuple(&[t[0], summand_point])
        })
        .collect();
    Ok((rhs.object, lhs.object, table))
}

/// True iff `table` is a bijection whose forward and inverse maps are both
/// continuous lax morphisms.
pub fn is_lax_isomorphism(table: &[usize], src: &LaxObject, tgt: &LaxObject) -> bool {
    if table.len() != tgt.len() {
        return false;
    }
    let mut inv = vec![usize::MAX; tgt.len()];
    for (x, &y) in table.iter().enumerate() {
        if inv[y] != usize::MAX {
            return false;
        }
        inv[y] = x;
    }
    is_continuous(table, src.space(), tgt.space())
        && is_continuous(&inv, tgt.space(), src.space())
        && lax_failure(table, src, tgt).is_none()
        && lax_failure(&inv, tgt, src).is_none()
}

/// Whether the base admits every construction in this module.
pub fn base_is_complete_lattice(base: &FiniteSpace) -> bool {
    lattice_report(base).is_ok_and(|r| r.is_complete_lattice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn s() -> FiniteSpace {
        FiniteSpace::sierpinski()
    }

    fn c3() -> FiniteSpace {
        FiniteSpace::chain(3)
    }

    fn d2() -> FiniteSpace {
        FiniteSpace::discrete("D2", &["p", "q"]).unwrap()
    }

    #[test]
    fn lax_triangle() {
        let x = s();
        let lo = LaxObject::point(&x, 0);
        let hi = LaxObject::point(&x, 1);
        let f = CMap::identity(&FiniteSpace::point());
        assert!(is_lax_morphism(&f, &lo, &hi).unwrap().holds);
        let back = is_lax_morphism(&f, &hi, &lo).unwrap();
        assert!(!back.holds);
        assert_eq!(back.witness, Some(0));
        let obj = LaxObject::generic(&x);
        assert!(
            is_lax_morphism(&CMap::identity(&x), &obj, &obj)
                .unwrap()
                .holds
        );
        let other = LaxObject::point(&c3(), 0);
        assert_eq!(
            is_lax_morphism(&f, &lo, &other).unwrap_err(),
            Error::BaseMismatch
        );
    }

    #[test]
    fn sums() {
        let x = s();
        let sum = lax_sum(&x, &[LaxObject::point(&x, 0), LaxObject::point(&x, 1)]).unwrap();
        assert_eq!(sum.object.space().order_pairs(), vec![(0, 0), (1, 1)]);
        assert_eq!(sum.object.alpha().table(), &[0, 1]);

        let empty = lax_sum(&x, &[]).unwrap();
        assert!(empty.object.is_empty());

        let g = LaxObject::generic(&x);
        let sum = lax_sum(&x, &[g.clone(), g]).unwrap();
        assert_eq!(sum.object.alpha().table(), &[0, 1, 0, 1]);
        assert_eq!(sum.injections.len(), 2);
    }

    #[test]
    fn equalizers() {
        let x = s();
        let obj = LaxObject::new(d2(), x.clone(), vec![0, 1]).unwrap();
        let id = LaxMorphism::identity(&obj);
        let (e, _) = lax_equalizer(&id, &id).unwrap();
        assert_eq!(e.space().len(), 2);

        let cp = LaxMorphism::from_table(obj.clone(), obj.clone(), vec![0, 0]).unwrap_err();
        assert!(matches!(cp, Error::NotLax(_)));
        let obj0 = LaxObject::new(d2(), x.clone(), vec![0, 0]).unwrap();
        let cp = LaxMorphism::from_table(obj0.clone(), obj0.clone(), vec![0, 0]).unwrap();
        let id0 = LaxMorphism::identity(&obj0);
        let (e, m) = lax_equalizer(&id0, &cp).unwrap();
        assert_eq!(e.space().labels(), &["p"]);
        assert_eq!(m.map().table(), &[0]);

        let swap = LaxMorphism::from_table(obj0.clone(), obj0.clone(), vec![1, 0]).unwrap();
        let (e, _) = lax_equalizer(&id0, &swap).unwrap();
        assert!(e.is_empty());

        let other = LaxMorphism::identity(&obj);
        assert_eq!(lax_equalizer(&id0, &other).unwrap_err(), Error::NotParallel);
    }

    #[test]
    fn products() {
        let x = c3();
        let p = lax_product(&x, &[LaxObject::point(&x, 1), LaxObject::point(&x, 2)]).unwrap();
        assert_eq!(p.object.alpha().table(), &[1]);

        let e = lax_product(&x, &[]).unwrap();
        assert_eq!(e.object.alpha().table(), &[2]);

        let a = LaxObject::new(s(), x.clone(), vec![0, 2]).unwrap();
        let p = lax_product(&x, &[a, LaxObject::point(&x, 2)]).unwrap();
        assert_eq!(p.object.space().len(), 2);
        assert_eq!(p.object.alpha().table(), &[0, 2]);

        let anti = antichain2();
        let err = lax_product(
            &anti,
            &[LaxObject::point(&anti, 0), LaxObject::point(&anti, 1)],
        )
        .unwrap_err();
        assert_eq!(err, Error::MeetsMissing(vec!["a".into(), "b".into()]));
        assert!(matches!(lax_product(&anti, &[]), Err(Error::MeetsMissing(v)) if v.is_empty()));
    }

    #[test]
    fn kan_extensions() {
        let x = c3();
        let beta = CMap::new(d2(), x.clone(), vec![0, 2]).unwrap();
        let id = CMap::identity(&d2());
        assert_eq!(lan_extension(&beta, &id).unwrap().table(), &[0, 2]);
        let to_one = CMap::constant(&d2(), &FiniteSpace::point(), 0);
        assert_eq!(lan_extension(&beta, &to_one).unwrap().table(), &[2]);

        let sx = s();
        let beta = CMap::identity(&sx);
        let to_one = CMap::constant(&sx, &FiniteSpace::point(), 0);
        assert_eq!(lan_extension(&beta, &to_one).unwrap().table(), &[1]);

        let anti = antichain2();
        let beta = CMap::identity(&anti);
        assert!(matches!(
            lan_extension(&beta, &CMap::identity(&anti)),
            Err(Error::NotACompleteLattice(_))
        ));
    }

    #[test]
    fn kan_extension_of_empty_fibre_is_bottom() {
        let x = c3();
        let beta = CMap::new(FiniteSpace::point(), x.clone(), vec![2]).unwrap();
        let q = CMap::new(FiniteSpace::point(), d2(), vec![0]).unwrap();
        assert_eq!(lan_extension(&beta, &q).unwrap().table(), &[2, 0]);
    }

    #[test]
    fn coequalizers() {
        let x = c3();
        let one = LaxObject::point(&x, 0);
        let b = LaxObject::new(d2(), x.clone(), vec![1, 2]).unwrap();
        let f = LaxMorphism::from_table(one.clone(), b.clone(), vec![0]).unwrap();
        let g = LaxMorphism::from_table(one, b.clone(), vec![1]).unwrap();
        let co = lax_coequalizer(&f, &g).unwrap();
        assert_eq!(co.object.alpha().table(), &[2]);

        let co = lax_coequalizer(&f, &f).unwrap();
        assert_eq!(co.object.space().len(), 2);
        assert_eq!(co.object.alpha().table(), b.alpha().table());

        // Collapse of a 2-chain (S, α=(0,2)).
        let b = LaxObject::new(s(), x.clone(), vec![0, 2]).unwrap();
        let d = LaxObject::constant(&d2(), &x, 0);
        let f = LaxMorphism::from_table(d.clone(), b.clone(), vec![0, 0]).unwrap();
        let g = LaxMorphism::from_table(d, b, vec![0, 1]).unwrap();
        let co = lax_coequalizer(&f, &g).unwrap();
        assert_eq!(co.object.space().len(), 1);
        assert_eq!(co.object.alpha().table(), &[2]);
    }

    #[test]
    fn initial_lifts() {
        let x = c3();
        let a = s();
        let lift = initial_lift(&a, &x, &[]).unwrap();
        assert_eq!(lift.alpha().table(), &[2, 2]);

        let obj = LaxObject::new(a.clone(), x.clone(), vec![0, 1]).unwrap();
        let lift = initial_lift(&a, &x, &[(CMap::identity(&a), obj.clone())]).unwrap();
        assert_eq!(lift, obj);

        let one = FiniteSpace::point();
        let id = CMap::identity(&one);
        let lift = initial_lift(
            &one,
            &x,
            &[
                (id.clone(), LaxObject::point(&x, 1)),
                (id, LaxObject::point(&x, 2)),
            ],
        )
        .unwrap();
        assert_eq!(lift.alpha().table(), &[1]);
    }

    #[test]
    fn filtrations() {
        let x = c3();
        let obj = LaxObject::new(s(), x.clone(), vec![0, 2]).unwrap();
        let f = to_filtration(&obj).unwrap();
        assert_eq!(f.levels, vec![vec![0, 1], vec![1], vec![1]]);
        assert_eq!(from_filtration(&f).unwrap(), obj);

        let bottom = LaxObject::constant(&s(), &x, 0);
        let f = to_filtration(&bottom).unwrap();
        assert_eq!(f.levels, vec![vec![0, 1], vec![], vec![]]);
        assert_eq!(from_filtration(&f).unwrap(), bottom);

        let m = m3();
        assert!(matches!(
            to_filtration(&LaxObject::point(&m, 0)),
            Err(Error::NotAChain(..))
        ));
        let bad = Filtration {
            base: x.clone(),
            space: s(),
            levels: vec![vec![0, 1], vec![0], vec![]],
        };
        assert_eq!(
            from_filtration(&bad).unwrap_err(),
            Error::NotClosedLevel("1".into())
        );
        let bad = Filtration {
            base: x,
            space: s(),
            levels: vec![vec![0, 1], vec![], vec![1]],
        };
        assert!(matches!(
            from_filtration(&bad),
            Err(Error::BadFiltration(_))
        ));
    }

    #[test]
    fn product_distributes_over_sum() {
        let x = c3();
        let a = LaxObject::new(s(), x.clone(), vec![1, 2]).unwrap();
        let b = LaxObject::point(&x, 2);
        let c = LaxObject::new(d2(), x.clone(), vec![0, 1]).unwrap();
        let (rhs, lhs, table) = distributivity_comparison(&x, &a, &b, &c).unwrap();
        assert!(is_lax_isomorphism(&table, &rhs, &lhs));
    }
}
