//! Lattice-theoretic analysis of the natural order of a finite space.
//!
//! Bounds are found by exhaustive search. For T0 spaces they are unique.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::finspace::FiniteSpace;

/// Default point-count cap for the subset quantifications behind the
/// way-above and totally-below relations.
pub const DEFAULT_SUBSET_CAP: usize = 12;

/// Greatest element of `candidates`, if any.
pub fn greatest(space: &FiniteSpace, candidates: &[usize]) -> Option<usize> {
    candidates
        .iter()
        .copied()
        .find(|&g| candidates.iter().all(|&c| space.le(c, g)))
}

pub fn least(space: &FiniteSpace, candidates: &[usize]) -> Option<usize> {
    candidates
        .iter()
        .copied()
        .find(|&g| candidates.iter().all(|&c| space.le(g, c)))
}

pub fn lower_bounds(space: &FiniteSpace, set: &[usize]) -> Vec<usize> {
    space
        .points()
        .filter(|&z| set.iter().all(|&x| space.le(z, x)))
        .collect()
}

pub fn upper_bounds(space: &FiniteSpace, set: &[usize]) -> Vec<usize> {
    space
        .points()
        .filter(|&z| set.iter().all(|&x| space.le(x, z)))
        .collect()
}

/// Greatest lower bound of `set`; `⋀∅` is the top when it exists.
pub fn infimum(space: &FiniteSpace, set: &[usize]) -> Option<usize> {
    greatest(space, &lower_bounds(space, set))
}

/// Least upper bound of `set`; `⋁∅` is the bottom when it exists.
pub fn supremum(space: &FiniteSpace, set: &[usize]) -> Option<usize> {
    least(space, &upper_bounds(space, set))
}

/// A finite (hence complete) lattice with precomputed operation tables.
#[derive(Clone, Debug)]
pub struct Lattice {
    space: FiniteSpace,
    meet: Vec<usize>,
    join: Vec<usize>,
    top: usize,
    bottom: usize,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space
    }
}

impl Lattice {
    pub fn new(space: &FiniteSpace) -> Result<Self> {
        if !space.is_t0() {
            return Err(Error::NotT0(space.name().to_string()));
        }
        let n = space.len();
        let top = infimum(space, &[])
            .ok_or_else(|| Error::NotACompleteLattice("no top element".into()))?;
        let bottom = supremum(space, &[])
            .ok_or_else(|| Error::NotACompleteLattice("no bottom element".into()))?;
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                meet[x * n + y] = infimum(space, &[x, y]).ok_or_else(|| {
                    Error::NotACompleteLattice(format!(
                        "no meet of {} and {}",
                        space.label(x),
                        space.label(y)
                    ))
                })?;
                join[x * n + y] = supremum(space, &[x, y]).ok_or_else(|| {
                    Error::NotACompleteLattice(format!(
                        "no join of {} and {}",
                        space.label(x),
                        space.label(y)
                    ))
                })?;
            }
        }
        Ok(Lattice {
            space: space.clone(),
            meet,
            join,
            top,
            bottom,
        })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.space.le(x, y)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// `x ⇒ y`: the greatest `z` with `x ∧ z <= y`, when it exists.
    pub fn implies(&self, x: usize, y: usize) -> Option<usize> {
        let cands: Vec<usize> = self
            .space
            .points()
            .filter(|&z| self.le(self.meet(x, z), y))
            .collect();
        greatest(&self.space, &cands)
    }

    pub fn label(&self, x: usize) -> &str {
        self.space.label(x)
    }
}

/// Meets, joins and bounds of a T0 space's natural order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeReport {
    pub top: Option<usize>,
    pub bottom: Option<usize>,
    pub meet_table: Vec<Vec<Option<usize>>>,
    pub join_table: Vec<Vec<Option<usize>>>,
    /// All binary meets exist.
    pub is_meet_semilattice: bool,
    /// All binary joins exist.
    pub is_join_semilattice: bool,
    /// All finite meets exist, the empty one (top) included.
    pub has_finite_meets: bool,
    pub is_complete_lattice: bool,
    pub meet_failure: Option<(usize, usize)>,
    pub join_failure: Option<(usize, usize)>,
}

impl LatticeReport {
    pub fn has_top(&self) -> bool {
        self.top.is_some()
    }

    pub fn has_bottom(&self) -> bool {
        self.bottom.is_some()
    }
}

pub fn lattice_report(x: &FiniteSpace) -> Result<LatticeReport> {
    if !x.is_t0() {
        return Err(Error::NotT0(x.name().to_string()));
    }
    let table = |f: fn(&FiniteSpace, &[usize]) -> Option<usize>| -> Vec<Vec<Option<usize>>> {
        x.points()
            .map(|a| x.points().map(|b| f(x, &[a, b])).collect())
            .collect()
    };
    let meet_table = table(infimum);
    let join_table = table(supremum);
    let first_missing = |t: &Vec<Vec<Option<usize>>>| {
        x.points()
            .flat_map(|a| x.points().map(move |b| (a, b)))
            .find(|&(a, b)| t[a][b].is_none())
    };
    let meet_failure = first_missing(&meet_table);
    let join_failure = first_missing(&join_table);
    let top = infimum(x, &[]);
    let bottom = supremum(x, &[]);
    let is_meet_semilattice = meet_failure.is_none();
    let is_join_semilattice = join_failure.is_none();
    Ok(LatticeReport {
        top,
        bottom,
        has_finite_meets: is_meet_semilattice && top.is_some(),
        is_complete_lattice: is_meet_semilattice
            && is_join_semilattice
            && top.is_some()
            && bottom.is_some(),
        meet_table,
        join_table,
        is_meet_semilattice,
        is_join_semilattice,
        meet_failure,
        join_failure,
    })
}

/// Which order-compatible topology to put on a poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderTopologyKind {
    /// Closed sets generated by the principal up-sets `↑a`.
    Lower,
    /// Closed sets are the up-sets stable under codirected infima.
    Scott,
    /// Closed sets are all up-sets.
    Alexandroff,
}

impl OrderTopologyKind {
    pub const ALL: [OrderTopologyKind; 3] = [
        OrderTopologyKind::Lower,
        OrderTopologyKind::Scott,
        OrderTopologyKind::Alexandroff,
    ];
}

/// A topology built on a poset, kept as its explicit closed-set family.
#[derive(Debug, Clone)]
pub struct OrderTopology {
    pub kind: OrderTopologyKind,
    pub closed_sets: BTreeSet<Vec<usize>>,
    pub space: FiniteSpace,
}

/// Nonempty subsets in which any two elements have a common lower bound
/// inside the subset.
fn is_codirected(space: &FiniteSpace, set: &[usize]) -> bool {
    !set.is_empty()
        && set.iter().all(|&a| {
            set.iter()
                .all(|&b| set.iter().any(|&c| space.le(c, a) && space.le(c, b)))
        })
}

fn is_directed(space: &FiniteSpace, set: &[usize]) -> bool {
    !set.is_empty()
        && set.iter().all(|&a| {
            set.iter()
                .all(|&b| set.iter().any(|&c| space.le(a, c) && space.le(b, c)))
        })
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..(1u64 << n)).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap || n >= 63 {
        return Err(Error::CapExceeded(format!(
            "subset quantification over {n} points (cap {cap})"
        )));
    }
    Ok(())
}

/// Builds the requested topology on a finite partial order.
pub fn order_to_space(order: &FiniteSpace, kind: OrderTopologyKind) -> Result<OrderTopology> {
    for x in order.points() {
        for y in x + 1..order.len() {
            if order.equiv(x, y) {
                return Err(Error::NotAPartialOrder(
                    order.label(x).to_string(),
                    order.label(y).to_string(),
                ));
            }
        }
    }
    let all: Vec<usize> = order.points().collect();
    let closed: BTreeSet<Vec<usize>> = match kind {
        OrderTopologyKind::Alexandroff => order.closed_sets().into_iter().collect(),
        OrderTopologyKind::Scott => {
            check_cap(order.len(), DEFAULT_SUBSET_CAP)?;
            let codirected: Vec<(Vec<usize>, Option<usize>)> = subsets(order.len())
                .filter(|s| is_codirected(order, s))
                .map(|s| {
                    let m = infimum(order, &s);
                    (s, m)
                })
                .collect();
            order
                .closed_sets()
                .into_iter()
                .filter(|a| {
                    let m = order.mask(a);
                    codirected
                        .iter()
                        .all(|(s, inf)| !s.iter().all(|&x| m[x]) || inf.is_none_or(|i| m[i]))
                })
                .collect()
        }
        OrderTopologyKind::Lower => {
            let mut family: BTreeSet<Vec<usize>> = BTreeSet::new();
            family.insert(vec![]);
            family.insert(all.clone());
            for a in order.points() {
                family.insert(order.up(a));
            }
            loop {
                let members: Vec<Vec<usize>> = family.iter().cloned().collect();
                let mut grew = false;
                for (i, u) in members.iter().enumerate() {
                    for v in &members[i + 1..] {
                        let mut union: Vec<usize> = u.iter().chain(v).copied().collect();
                        union.sort_unstable();
                        union.dedup();
                        let inter: Vec<usize> =
                            u.iter().copied().filter(|x| v.contains(x)).collect();
                        grew |= family.insert(union);
                        grew |= family.insert(inter);
                    }
                }
                if !grew {
                    break;
                }
            }
            family
        }
    };
    let opens: Vec<Vec<String>> = closed
        .iter()
        .map(|c| {
            let m = order.mask(c);
            all.iter()
                .filter(|&&x| !m[x])
                .map(|&x| order.label(x).to_string())
                .collect()
        })
        .collect();
    let space = FiniteSpace::from_opens(
        format!("{}[{kind:?}]", order.name()),
        order.labels(),
        &opens,
    )?;
    if space.natural_order() != order.natural_order() {
        return Err(Error::Internal(format!(
            "{kind:?} topology does not induce the given order"
        )));
    }
    Ok(OrderTopology {
        kind,
        closed_sets: closed,
        space,
    })
}

/// Heyting implication table of a meet-semilattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeytingReport {
    pub is_heyting: bool,
    pub implication_table: Vec<Vec<Option<usize>>>,
    pub failure: Option<(usize, usize)>,
}

pub fn heyting_report(x: &FiniteSpace) -> Result<HeytingReport> {
    let report = lattice_report(x)?;
    if let Some((a, b)) = report.meet_failure {
        return Err(Error::NoMeets(
            x.label(a).to_string(),
            x.label(b).to_string(),
        ));
    }
    let meet = |a: usize, b: usize| report.meet_table[a][b].expect("binary meets exist");
    let implication_table: Vec<Vec<Option<usize>>> = x
        .points()
        .map(|a| {
            x.points()
                .map(|b| {
                    let cands: Vec<usize> = x.points().filter(|&z| x.le(meet(a, z), b)).collect();
                    greatest(x, &cands)
                })
                .collect()
        })
        .collect();
    let failure = x
        .points()
        .flat_map(|a| x.points().map(move |b| (a, b)))
        .find(|&(a, b)| implication_table[a][b].is_none());
    Ok(HeytingReport {
        is_heyting: failure.is_none(),
        implication_table,
        failure,
    })
}

/// Frame, (op-)continuity and complete-distributivity verdicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributivityReport {
    pub is_frame: bool,
    pub is_distributive: bool,
    /// `(a, b, c)` with `a ∧ (b ∨ c) ≠ (a ∧ b) ∨ (a ∧ c)`.
    pub distributivity_failure: Option<(usize, usize, usize)>,
    /// `way_above[x][y]` iff `x ≫ y`.
    pub way_above: Vec<Vec<bool>>,
    /// `way_below[x][y]` iff `x ≪ y`.
    pub way_below: Vec<Vec<bool>>,
    /// `totally_below[v][u]` iff `v ⋘ u`.
    pub totally_below: Vec<Vec<bool>>,
    /// Every element is the join of the elements way below it.
    pub is_continuous_lattice: bool,
    /// Every element is the meet of the elements way above it.
    pub is_op_continuous_lattice: bool,
    pub is_completely_distributive: bool,
    /// Elements that fail the respective reconstruction.
    pub continuity_failure: Option<usize>,
    pub op_continuity_failure: Option<usize>,
    pub complete_distributivity_failure: Option<usize>,
}

pub fn distributivity_report(x: &FiniteSpace) -> Result<DistributivityReport> {
    distributivity_report_capped(x, DEFAULT_SUBSET_CAP)
}

pub fn distributivity_report_capped(x: &FiniteSpace, cap: usize) -> Result<DistributivityReport> {
    let lat = Lattice::new(x)?;
    check_cap(x.len(), cap)?;
    let n = x.len();
    let pts: Vec<usize> = x.points().collect();

    let mut distributivity_failure = None;
    'outer: for &a in &pts {
        for &b in &pts {
            for &c in &pts {
                let lhs = lat.meet(a, lat.join(b, c));
                let rhs = lat.join(lat.meet(a, b), lat.meet(a, c));
                if lhs != rhs {
                    distributivity_failure = Some((a, b, c));
                    break 'outer;
                }
            }
        }
    }
    let is_frame = pts
        .iter()
        .all(|&a| pts.iter().all(|&b| lat.implies(a, b).is_some()));

    let mask_of = |s: &[usize]| s.iter().fold(0u64, |m, &i| m | 1 << i);
    let down_mask: Vec<u64> = pts.iter().map(|&p| mask_of(&x.down(p))).collect();
    let up_mask: Vec<u64> = pts.iter().map(|&p| mask_of(&x.up(p))).collect();

    let mut codirected = Vec::new();
    let mut directed = Vec::new();
    let mut any = Vec::new();
    for s in subsets(n) {
        let m = mask_of(&s);
        if is_codirected(x, &s) {
            codirected.push((lat.meet_all(s.iter().copied()), m));
        }
        if is_directed(x, &s) {
            directed.push((lat.join_all(s.iter().copied()), m));
        }
        any.push((lat.join_all(s.iter().copied()), m));
    }

    // x ≫ y: every codirected S with ⋀S <= y meets ↓x.
    let way_above: Vec<Vec<bool>> = pts
        .iter()
        .map(|&a| {
            pts.iter()
                .map(|&b| {
                    codirected
                        .iter()
                        .filter(|(inf, _)| x.le(*inf, b))
                        .all(|(_, m)| m & down_mask[a] != 0)
                })
                .collect()
        })
        .collect();
    // x ≪ y: every directed S with y <= ⋁S meets ↑x.
    let way_below: Vec<Vec<bool>> = pts
        .iter()
        .map(|&a| {
            pts.iter()
                .map(|&b| {
                    directed
                        .iter()
                        .filter(|(sup, _)| x.le(b, *sup))
                        .all(|(_, m)| m & up_mask[a] != 0)
                })
                .collect()
        })
        .collect();
    // v ⋘ u: every S with u <= ⋁S meets ↑v.
    let totally_below: Vec<Vec<bool>> = pts
        .iter()
        .map(|&v| {
            pts.iter()
                .map(|&u| {
                    any.iter()
                        .filter(|(sup, _)| x.le(u, *sup))
                        .all(|(_, m)| m & up_mask[v] != 0)
                })
                .collect()
        })
        .collect();

    let continuity_failure = pts
        .iter()
        .copied()
        .find(|&y| lat.join_all(pts.iter().copied().filter(|&a| way_below[a][y])) != y);
    let op_continuity_failure = pts
        .iter()
        .copied()
        .find(|&y| lat.meet_all(pts.iter().copied().filter(|&a| way_above[a][y])) != y);
    let complete_distributivity_failure = pts
        .iter()
        .copied()
        .find(|&u| lat.join_all(pts.iter().copied().filter(|&v| totally_below[v][u])) != u);

    Ok(DistributivityReport {
        is_frame,
        is_distributive: distributivity_failure.is_none(),
        distributivity_failure,
        way_above,
        way_below,
        totally_below,
        is_continuous_lattice: continuity_failure.is_none(),
        is_op_continuous_lattice: op_continuity_failure.is_none(),
        is_completely_distributive: complete_distributivity_failure.is_none(),
        continuity_failure,
        op_continuity_failure,
        complete_distributivity_failure,
    })
}

/// The upper adjoint `g(y) = max{x : f(x) <= y}` of a monotone map, when
/// every such maximum exists.
pub fn upper_adjoint(
    f: &[usize],
    source: &FiniteSpace,
    target: &FiniteSpace,
) -> Option<Vec<usize>> {
    target
        .points()
        .map(|y| {
            let cands: Vec<usize> = source.points().filter(|&x| target.le(f[x], y)).collect();
            greatest(source, &cands)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn chain_is_a_complete_lattice() {
        let c3 = FiniteSpace::chain(3);
        let r = lattice_report(&c3).unwrap();
        assert!(r.is_complete_lattice);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(r.meet_table[a][b], Some(a.min(b)));
                assert_eq!(r.join_table[a][b], Some(a.max(b)));
            }
        }
        assert_eq!((r.bottom, r.top), (Some(0), Some(2)));
    }

    #[test]
    fn antichain_has_no_meets() {
        let r = lattice_report(&antichain2()).unwrap();
        assert!(!r.is_meet_semilattice);
        assert_eq!(r.meet_failure, Some((0, 1)));
        assert!(!r.is_complete_lattice);
    }

    #[test]
    fn divisor_lattice() {
        let d = div12();
        let r = lattice_report(&d).unwrap();
        let ix = |s: &str| d.index_of(s).unwrap();
        assert!(r.is_complete_lattice);
        assert_eq!(r.top, Some(ix("1")));
        assert_eq!(r.bottom, Some(ix("12")));
        assert_eq!(r.meet_table[ix("4")][ix("6")], Some(ix("12")));
        assert_eq!(r.join_table[ix("4")][ix("6")], Some(ix("2")));
    }

    #[test]
    fn not_t0_is_rejected() {
        let i = FiniteSpace::indiscrete("I", &["a", "b"]).unwrap();
        assert_eq!(lattice_report(&i).unwrap_err(), Error::NotT0("I".into()));
    }

    #[test]
    fn lower_topology_on_chain() {
        let c3 = FiniteSpace::chain(3);
        let t = order_to_space(&c3, OrderTopologyKind::Lower).unwrap();
        let expected: BTreeSet<Vec<usize>> = [vec![], vec![2], vec![1, 2], vec![0, 1, 2]]
            .into_iter()
            .collect();
        assert_eq!(t.closed_sets, expected);
        for kind in OrderTopologyKind::ALL {
            let p = order_to_space(&FiniteSpace::point(), kind).unwrap();
            assert_eq!(p.space.len(), 1);
        }
        let i = FiniteSpace::indiscrete("I", &["a", "b"]).unwrap();
        assert!(matches!(
            order_to_space(&i, OrderTopologyKind::Lower),
            Err(Error::NotAPartialOrder(..))
        ));
    }

    #[test]
    fn heyting_on_chain() {
        let r = heyting_report(&FiniteSpace::chain(3)).unwrap();
        assert!(r.is_heyting);
        assert_eq!(r.implication_table[2][1], Some(1));
        assert_eq!(r.implication_table[1][0], Some(0));
        assert_eq!(r.implication_table[0][2], Some(2));
        // x <= y gives x => y = top.
        for x in 0..3 {
            for y in x..3 {
                assert_eq!(r.implication_table[x][y], Some(2));
            }
        }
    }

    #[test]
    fn m3_is_not_heyting() {
        let m = m3();
        let r = heyting_report(&m).unwrap();
        assert!(!r.is_heyting);
        let (a, b) = (m.index_of("a").unwrap(), m.index_of("b").unwrap());
        assert_eq!(r.implication_table[a][b], None);
        assert!(matches!(
            heyting_report(&antichain2()),
            Err(Error::NoMeets(..))
        ));
    }

    #[test]
    fn distributivity_of_chain() {
        let c3 = FiniteSpace::chain(3);
        let r = distributivity_report(&c3).unwrap();
        for v in 0..3 {
            for u in 0..3 {
                assert_eq!(r.totally_below[v][u], v <= u && u != 0, "{v} <<< {u}");
            }
        }
        assert!(r.is_completely_distributive && r.is_frame);
    }

    #[test]
    fn m3_is_not_a_frame() {
        let m = m3();
        let r = distributivity_report(&m).unwrap();
        assert!(!r.is_frame);
        assert!(!r.is_distributive);
        assert!(!r.is_completely_distributive);
        let (a, b, c) = r.distributivity_failure.unwrap();
        let lat = Lattice::new(&m).unwrap();
        assert_ne!(
            lat.meet(a, lat.join(b, c)),
            lat.join(lat.meet(a, b), lat.meet(a, c))
        );
        assert!(r.is_continuous_lattice && r.is_op_continuous_lattice);
    }

    #[test]
    fn two_element_lattice_is_everything() {
        let r = distributivity_report(&FiniteSpace::sierpinski()).unwrap();
        assert!(r.is_frame);
        assert!(r.is_continuous_lattice);
        assert!(r.is_op_continuous_lattice);
        assert!(r.is_completely_distributive);
    }

    #[test]
    fn distributivity_requires_a_complete_lattice() {
        assert!(matches!(
            distributivity_report(&antichain2()),
            Err(Error::NotACompleteLattice(_))
        ));
        let big = FiniteSpace::chain(13);
        assert!(matches!(
            distributivity_report(&big),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn upper_adjoint_of_meet_with_element() {
        let c3 = FiniteSpace::chain(3);
        let lat = Lattice::new(&c3).unwrap();
        let f: Vec<usize> = (0..3).map(|z| lat.meet(1, z)).collect();
        let g = upper_adjoint(&f, &c3, &c3).unwrap();
        assert_eq!(g, vec![0, 2, 2]);
    }
}
