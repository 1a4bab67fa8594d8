//! Finite topological spaces and continuous maps.
//!
//! Every finite space is Alexandroff, so a topology on a finite set is the
//! same thing as a preorder on it. A [`FiniteSpace`] stores the *natural
//! order*: `x <= y` iff every open neighbourhood of `y` contains `x`. Under
//! this convention open sets are exactly the down-closed sets, closed sets are
//! the up-closed sets, the closure of a set is its up-closure and the smallest
//! open neighbourhood of `x` is `↓x`. Continuous maps are the monotone maps.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};

/// How a space was originally described.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Opens,
    Order,
    Derived,
}

struct Inner {
    name: String,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    le: BitMatrix,
    provenance: Provenance,
}

/// A finite topological space, stored as its natural-order preorder.
///
/// Cloning is cheap: the point table and order are shared.
#[derive(Clone)]
pub struct FiniteSpace {
    inner: Arc<Inner>,
}

impl PartialEq for FiniteSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.labels == other.inner.labels && self.inner.le == other.inner.le)
    }
}

impl Eq for FiniteSpace {}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .strict_pairs()
            .into_iter()
            .map(|(x, y)| format!("{}<={}", self.label(x), self.label(y)))
            .collect();
        write!(
            f,
            "{}{:?} [{}]",
            self.name(),
            self.labels(),
            pairs.join(", ")
        )
    }
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicatePoint(l.clone()));
        }
    }
    Ok(index)
}

impl FiniteSpace {
    fn build(
        name: impl Into<String>,
        labels: Vec<String>,
        le: BitMatrix,
        provenance: Provenance,
    ) -> Result<Self> {
        let index = index_labels(&labels)?;
        Ok(FiniteSpace {
            inner: Arc::new(Inner {
                name: name.into(),
                labels,
                index,
                le,
                provenance,
            }),
        })
    }

    /// Space whose natural order is the reflexive-transitive closure of
    /// `pairs`.
    pub fn from_order<S: AsRef<str>>(
        name: impl Into<String>,
        points: &[S],
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let labels: Vec<String> = points.iter().map(|p| p.as_ref().to_string()).collect();
        let index = index_labels(&labels)?;
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(s.to_string()))
        };
        let mut le = BitMatrix::new(labels.len());
        for (x, y) in pairs {
            le.set(lookup(x.as_ref())?, lookup(y.as_ref())?);
        }
        le.close_preorder();
        Self::build(name, labels, le, Provenance::Order)
    }

    /// Space given by an explicit family of open sets.
    ///
    /// The family must contain `∅` and the whole set and be closed under
    /// binary unions and intersections (finite, so that is all it takes).
    pub fn from_opens<S: AsRef<str>>(
        name: impl Into<String>,
        points: &[S],
        opens: &[Vec<S>],
    ) -> Result<Self> {
        let labels: Vec<String> = points.iter().map(|p| p.as_ref().to_string()).collect();
        let index = index_labels(&labels)?;
        let n = labels.len();
        let mut family: BTreeSet<Vec<bool>> = BTreeSet::new();
        for open in opens {
            let mut mask = vec![false; n];
            for p in open {
                let i = index
                    .get(p.as_ref())
                    .copied()
                    .ok_or_else(|| Error::UnknownLabel(p.as_ref().to_string()))?;
                mask[i] = true;
            }
            family.insert(mask);
        }
        let show = |m: &Vec<bool>| {
            let members: Vec<&str> = (0..n)
                .filter(|&i| m[i])
                .map(|i| labels[i].as_str())
                .collect();
            format!("{{{}}}", members.join(","))
        };
        if !family.contains(&vec![false; n]) {
            return Err(Error::NotATopology("the empty set is not open".into()));
        }
        if !family.contains(&vec![true; n]) {
            return Err(Error::NotATopology("the full set is not open".into()));
        }
        let members: Vec<&Vec<bool>> = family.iter().collect();
        for (i, u) in members.iter().enumerate() {
            for v in &members[i + 1..] {
                let union: Vec<bool> = u.iter().zip(v.iter()).map(|(a, b)| *a || *b).collect();
                if !family.contains(&union) {
                    return Err(Error::NotATopology(format!(
                        "union of {} and {} is not open",
                        show(u),
                        show(v)
                    )));
                }
                let meet: Vec<bool> = u.iter().zip(v.iter()).map(|(a, b)| *a && *b).collect();
                if !family.contains(&meet) {
                    return Err(Error::NotATopology(format!(
                        "intersection of {} and {} is not open",
                        show(u),
                        show(v)
                    )));
                }
            }
        }
        // x <= y iff every open containing y contains x.
        let le = BitMatrix::from_fn(n, |x, y| family.iter().all(|u| !u[y] || u[x]));
        Self::build(name, labels, le, Provenance::Opens)
    }

    /// Space from a relation on freshly generated points; the
    /// reflexive-transitive closure is taken.
    pub fn from_relation(
        name: impl Into<String>,
        labels: Vec<String>,
        rel: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let mut le = BitMatrix::from_fn(labels.len(), rel);
        le.close_preorder();
        Self::build(name, labels, le, Provenance::Derived)
    }

    /// Like [`from_relation`](Self::from_relation) but the relation is
    /// already known to be a preorder.
    pub(crate) fn from_preorder(
        name: impl Into<String>,
        labels: Vec<String>,
        rel: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let le = BitMatrix::from_fn(labels.len(), rel);
        debug_assert!({
            let mut c = le.clone();
            c.close_preorder();
            c == le
        });
        Self::build(name, labels, le, Provenance::Derived)
    }

    pub fn empty() -> Self {
        Self::from_preorder("0", vec![], |_, _| false).expect("empty space")
    }

    pub fn point() -> Self {
        Self::from_preorder("1", vec!["*".into()], |_, _| true).expect("one-point space")
    }

    pub fn discrete<S: AsRef<str>>(name: impl Into<String>, points: &[S]) -> Result<Self> {
        let labels = points.iter().map(|p| p.as_ref().to_string()).collect();
        let mut s = Self::from_preorder(name, labels, |x, y| x == y)?;
        Arc::get_mut(&mut s.inner).expect("fresh").provenance = Provenance::Order;
        Ok(s)
    }

    pub fn indiscrete<S: AsRef<str>>(name: impl Into<String>, points: &[S]) -> Result<Self> {
        let labels = points.iter().map(|p| p.as_ref().to_string()).collect();
        Self::from_preorder(name, labels, |_, _| true)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_preorder(format!("C{n}"), labels, |x, y| x <= y).expect("chain")
    }

    /// Sierpinski space: points `0`, `1`, with `{1}` the only non-trivial
    /// closed set, so `0 <= 1`.
    pub fn sierpinski() -> Self {
        let mut s = Self::chain(2);
        Arc::get_mut(&mut s.inner).expect("fresh").name = "S".into();
        s
    }

    pub fn with_name(&self, name: impl Into<String>) -> Self {
        let mut le = BitMatrix::new(self.len());
        for x in self.points() {
            for y in self.points() {
                if self.le(x, y) {
                    le.set(x, y);
                }
            }
        }
        FiniteSpace {
            inner: Arc::new(Inner {
                name: name.into(),
                labels: self.inner.labels.clone(),
                index: self.inner.index.clone(),
                le,
                provenance: self.inner.provenance,
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn provenance(&self) -> Provenance {
        self.inner.provenance
    }

    pub fn len(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.labels.is_empty()
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.inner.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.inner
            .index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut out: Vec<usize> = labels
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Result<_>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn labels_of(&self, set: &[usize]) -> Vec<String> {
        set.iter().map(|&i| self.label(i).to_string()).collect()
    }

    /// Natural order: `x <= y` iff every open neighbourhood of `y`
    /// contains `x`.
    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.inner.le.get(x, y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.le(x, y) && !self.le(y, x)
    }

    #[inline]
    pub fn equiv(&self, x: usize, y: usize) -> bool {
        self.le(x, y) && self.le(y, x)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.le(x, y) || self.le(y, x)
    }

    /// All pairs `(x, y)` with `x <= y`, in index order.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in self.points() {
            for y in self.points() {
                if self.le(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    fn strict_pairs(&self) -> Vec<(usize, usize)> {
        self.order_pairs()
            .into_iter()
            .filter(|&(x, y)| x != y)
            .collect()
    }

    /// The natural order as a boolean table.
    pub fn natural_order(&self) -> Vec<Vec<bool>> {
        self.points()
            .map(|x| self.points().map(|y| self.le(x, y)).collect())
            .collect()
    }

    /// Natural order as sorted label pairs.
    pub fn natural_order_labels(&self) -> Vec<(String, String)> {
        let mut v: Vec<(String, String)> = self
            .order_pairs()
            .into_iter()
            .map(|(x, y)| (self.label(x).to_string(), self.label(y).to_string()))
            .collect();
        v.sort();
        v
    }

    pub fn is_t0(&self) -> bool {
        self.points()
            .all(|x| (x + 1..self.len()).all(|y| !self.equiv(x, y)))
    }

    pub fn is_chain(&self) -> bool {
        self.points()
            .all(|x| self.points().all(|y| self.comparable(x, y)))
    }

    /// The same points with the reverse order.
    pub fn dual(&self) -> Self {
        Self::from_preorder(
            format!("{}^op", self.name()),
            self.labels().to_vec(),
            |x, y| self.le(y, x),
        )
        .expect("dual")
    }

    pub fn down(&self, x: usize) -> Vec<usize> {
        self.points().filter(|&y| self.le(y, x)).collect()
    }

    pub fn up(&self, x: usize) -> Vec<usize> {
        self.points().filter(|&y| self.le(x, y)).collect()
    }

    pub fn mask(&self, set: &[usize]) -> Vec<bool> {
        let mut m = vec![false; self.len()];
        for &i in set {
            m[i] = true;
        }
        m
    }

    pub fn up_closure(&self, set: &[usize]) -> Vec<usize> {
        self.points()
            .filter(|&y| set.iter().any(|&x| self.le(x, y)))
            .collect()
    }

    pub fn down_closure(&self, set: &[usize]) -> Vec<usize> {
        self.points()
            .filter(|&y| set.iter().any(|&x| self.le(y, x)))
            .collect()
    }

    /// Topological closure: the up-closure in the natural order.
    pub fn closure(&self, set: &[usize]) -> Vec<usize> {
        self.up_closure(set)
    }

    /// Largest open (down-closed) subset of `set`.
    pub fn interior(&self, set: &[usize]) -> Vec<usize> {
        let m = self.mask(set);
        self.points()
            .filter(|&x| self.down(x).into_iter().all(|y| m[y]))
            .collect()
    }

    pub fn is_open(&self, set: &[usize]) -> bool {
        let m = self.mask(set);
        set.iter()
            .all(|&x| self.points().all(|y| !self.le(y, x) || m[y]))
    }

    pub fn is_closed(&self, set: &[usize]) -> bool {
        let m = self.mask(set);
        set.iter()
            .all(|&x| self.points().all(|y| !self.le(x, y) || m[y]))
    }

    /// Points ordered so that every point comes after everything strictly
    /// above it.
    fn top_down_order(&self) -> Vec<usize> {
        let mut pts: Vec<usize> = self.points().collect();
        pts.sort_by_key(|&x| (std::cmp::Reverse(self.up(x).len()), x));
        pts
    }

    /// Every up-closed (closed) subset, each sorted, in a deterministic
    /// order.
    pub fn closed_sets(&self) -> Vec<Vec<usize>> {
        let order = self.top_down_order();
        let mut out = Vec::new();
        let mut state: Vec<Option<bool>> = vec![None; self.len()];
        self.extend_up_sets(&order, 0, &mut state, &mut out);
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    fn extend_up_sets(
        &self,
        order: &[usize],
        k: usize,
        state: &mut Vec<Option<bool>>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == order.len() {
            out.push(self.points().filter(|&x| state[x] == Some(true)).collect());
            return;
        }
        let x = order[k];
        let forced_out = order[..k]
            .iter()
            .any(|&y| self.le(x, y) && state[y] == Some(false));
        let forced_in = order[..k]
            .iter()
            .any(|&y| self.le(y, x) && state[y] == Some(true));
        let choices: &[bool] = match (forced_in, forced_out) {
            (true, true) => &[],
            (true, false) => &[true],
            (false, true) => &[false],
            (false, false) => &[false, true],
        };
        for &c in choices {
            state[x] = Some(c);
            self.extend_up_sets(order, k + 1, state, out);
        }
        state[x] = None;
    }

    /// Every down-closed (open) subset.
    pub fn open_sets(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .closed_sets()
            .into_iter()
            .map(|c| {
                let m = self.mask(&c);
                self.points().filter(|&x| !m[x]).collect()
            })
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Open sets containing `x`.
    pub fn neighbourhoods(&self, x: usize) -> Vec<Vec<usize>> {
        self.open_sets()
            .into_iter()
            .filter(|u| u.contains(&x))
            .collect()
    }
}

/// A continuous (monotone) map between finite spaces.
#[derive(Clone, PartialEq, Eq)]
pub struct CMap {
    source: FiniteSpace,
    target: FiniteSpace,
    table: Vec<usize>,
}

impl fmt::Debug for CMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .source
            .points()
            .map(|x| {
                format!(
                    "{}->{}",
                    self.source.label(x),
                    self.target.label(self.table[x])
                )
            })
            .collect();
        write!(
            f,
            "{} -> {} {{{}}}",
            self.source.name(),
            self.target.name(),
            pairs.join(", ")
        )
    }
}

/// Monotonicity of a point table; for finite spaces this is continuity.
pub fn is_continuous(table: &[usize], source: &FiniteSpace, target: &FiniteSpace) -> bool {
    first_discontinuity(table, source, target).is_none()
}

fn first_discontinuity(
    table: &[usize],
    source: &FiniteSpace,
    target: &FiniteSpace,
) -> Option<(usize, usize)> {
    for x in source.points() {
        for y in source.points() {
            if source.le(x, y) && !target.le(table[x], table[y]) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Continuity checked through preimages of open sets.
pub fn preimages_open(table: &[usize], source: &FiniteSpace, target: &FiniteSpace) -> bool {
    target.open_sets().iter().all(|u| {
        let m = target.mask(u);
        let pre: Vec<usize> = source.points().filter(|&x| m[table[x]]).collect();
        source.is_open(&pre)
    })
}

impl CMap {
    pub fn new(source: FiniteSpace, target: FiniteSpace, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() {
            let missing = source
                .labels()
                .get(table.len())
                .cloned()
                .unwrap_or_else(|| "<extra entries>".into());
            return Err(Error::NotTotal(missing));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= target.len()) {
            return Err(Error::UnknownLabel(format!("#{bad}")));
        }
        if let Some((x, y)) = first_discontinuity(&table, &source, &target) {
            return Err(Error::NotContinuous {
                lo: source.label(x).to_string(),
                hi: source.label(y).to_string(),
            });
        }
        Ok(CMap {
            source,
            target,
            table,
        })
    }

    pub(crate) fn new_unchecked(
        source: FiniteSpace,
        target: FiniteSpace,
        table: Vec<usize>,
    ) -> Self {
        debug_assert!(is_continuous(&table, &source, &target));
        CMap {
            source,
            target,
            table,
        }
    }

    /// Map given by label pairs; must be total.
    pub fn from_labels<S: AsRef<str>>(
        source: FiniteSpace,
        target: FiniteSpace,
        pairs: &[(S, S)],
    ) -> Result<Self> {
        let mut table = vec![usize::MAX; source.len()];
        for (x, y) in pairs {
            table[source.index_of(x.as_ref())?] = target.index_of(y.as_ref())?;
        }
        if let Some(i) = table.iter().position(|&t| t == usize::MAX) {
            return Err(Error::NotTotal(source.label(i).to_string()));
        }
        Self::new(source, target, table)
    }

    pub fn identity(space: &FiniteSpace) -> Self {
        CMap::new_unchecked(space.clone(), space.clone(), space.points().collect())
    }

    pub fn constant(source: &FiniteSpace, target: &FiniteSpace, y: usize) -> Self {
        CMap::new_unchecked(source.clone(), target.clone(), vec![y; source.len()])
    }

    pub fn source(&self) -> &FiniteSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteSpace {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &CMap) -> Result<CMap> {
        if first.target != self.source {
            return Err(Error::NotComposable);
        }
        Ok(CMap::new_unchecked(
            first.source.clone(),
            self.target.clone(),
            first.table.iter().map(|&y| self.table[y]).collect(),
        ))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &y in &self.table {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.table
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn image(&self, set: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = set.iter().map(|&x| self.table[x]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn preimage(&self, set: &[usize]) -> Vec<usize> {
        let m = self.target.mask(set);
        self.source.points().filter(|&x| m[self.table[x]]).collect()
    }

    /// Fibre over a single target point.
    pub fn fibre(&self, y: usize) -> Vec<usize> {
        self.source
            .points()
            .filter(|&x| self.table[x] == y)
            .collect()
    }

    pub fn label_pairs(&self) -> Vec<(String, String)> {
        self.source
            .points()
            .map(|x| {
                (
                    self.source.label(x).to_string(),
                    self.target.label(self.table[x]).to_string(),
                )
            })
            .collect()
    }
}

/// Report of the T0 reflection.
#[derive(Debug, Clone)]
pub struct T0Report {
    pub is_t0: bool,
    pub reflection: FiniteSpace,
    pub eta: CMap,
}

/// Quotient by `x ≡ y iff x <= y <= x`.
pub fn t0_report(space: &FiniteSpace) -> T0Report {
    let mut class = vec![usize::MAX; space.len()];
    let mut k = 0;
    for x in space.points() {
        if class[x] == usize::MAX {
            for y in space.points() {
                if space.equiv(x, y) {
                    class[y] = k;
                }
            }
            k += 1;
        }
    }
    let (reflection, eta) = quotient_by_classes(space, &class, k, format!("T0({})", space.name()));
    T0Report {
        is_t0: k == space.len(),
        reflection,
        eta,
    }
}

/// Closure, interior and minimal open neighbourhoods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub closure: Vec<usize>,
    pub interior: Vec<usize>,
    pub min_open_nbhd: Vec<Vec<usize>>,
}

pub fn closure_ops<S: AsRef<str>>(space: &FiniteSpace, subset: &[S]) -> Result<ClosureReport> {
    let set = space.indices_of(subset)?;
    Ok(ClosureReport {
        closure: space.closure(&set),
        interior: space.interior(&set),
        min_open_nbhd: space.points().map(|x| space.down(x)).collect(),
    })
}

/// A product together with its projections.
#[derive(Debug, Clone)]
pub struct Product {
    pub space: FiniteSpace,
    pub projections: Vec<CMap>,
    factors: Vec<FiniteSpace>,
}

impl Product {
    pub fn factors(&self) -> &[FiniteSpace] {
        &self.factors
    }

    /// Coordinates of a product point.
    pub fn tuple(&self, p: usize) -> Vec<usize> {
        self.projections.iter().map(|pr| pr.apply(p)).collect()
    }

    /// Product point with the given coordinates.
    pub fn index_of_tuple(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&c, f)| acc * f.len() + c)
    }

    /// The unique map into the product with the given components.
    pub fn pairing(&self, legs: &[CMap]) -> Result<CMap> {
        let src = legs
            .first()
            .map(|l| l.source().clone())
            .ok_or(Error::NotParallel)?;
        if legs.len() != self.factors.len() || legs.iter().any(|l| *l.source() != src) {
            return Err(Error::NotParallel);
        }
        let table = src
            .points()
            .map(|c| self.index_of_tuple(&legs.iter().map(|l| l.apply(c)).collect::<Vec<_>>()))
            .collect();
        CMap::new(src, self.space.clone(), table)
    }
}

fn tuple_label(parts: &[&str]) -> String {
    format!("({})", parts.join(","))
}

/// Product space with the componentwise order (= product topology).
pub fn product_space(spaces: &[FiniteSpace]) -> Product {
    let total: usize = spaces.iter().map(|s| s.len()).product();
    let coords = |mut p: usize| {
        let mut c = vec![0; spaces.len()];
        for (i, s) in spaces.iter().enumerate().rev() {
            c[i] = p % s.len();
            p /= s.len();
        }
        c
    };
    let all: Vec<Vec<usize>> = (0..total).map(coords).collect();
    let labels: Vec<String> = all
        .iter()
        .map(|c| {
            let parts: Vec<&str> = c.iter().zip(spaces).map(|(&i, s)| s.label(i)).collect();
            tuple_label(&parts)
        })
        .collect();
    let name = if spaces.is_empty() {
        "1".to_string()
    } else {
        spaces
            .iter()
            .map(|s| s.name())
            .collect::<Vec<_>>()
            .join("x")
    };
    let space = FiniteSpace::from_preorder(name, labels, |p, q| {
        spaces
            .iter()
            .enumerate()
            .all(|(i, s)| s.le(all[p][i], all[q][i]))
    })
    .expect("tuple labels are distinct");
    let projections = spaces
        .iter()
        .enumerate()
        .map(|(i, s)| {
            CMap::new_unchecked(space.clone(), s.clone(), all.iter().map(|c| c[i]).collect())
        })
        .collect();
    Product {
        space,
        projections,
        factors: spaces.to_vec(),
    }
}

/// A sum together with its injections.
#[derive(Debug, Clone)]
pub struct Sum {
    pub space: FiniteSpace,
    pub injections: Vec<CMap>,
}

impl Sum {
    /// Summand index and point within that summand.
    pub fn locate(&self, p: usize) -> (usize, usize) {
        for (k, inj) in self.injections.iter().enumerate() {
            if let Some(x) = inj.table().iter().position(|&q| q == p) {
                return (k, x);
            }
        }
        unreachable!("every sum point lies in some summand")
    }

    /// Copairing `[f_0, ..., f_k]`.
    pub fn copairing(&self, legs: &[CMap]) -> Result<CMap> {
        if legs.len() != self.injections.len() {
            return Err(Error::NotParallel);
        }
        let target = match legs.first() {
            Some(l) => l.target().clone(),
            None => return Err(Error::NotParallel),
        };
        let mut table = vec![0; self.space.len()];
        for (inj, leg) in self.injections.iter().zip(legs) {
            if *leg.target() != target || leg.source() != inj.source() {
                return Err(Error::NotParallel);
            }
            for x in inj.source().points() {
                table[inj.apply(x)] = leg.apply(x);
            }
        }
        CMap::new(self.space.clone(), target, table)
    }
}

fn injection_tag(k: usize, n: usize) -> String {
    match (n, k) {
        (2, 0) => "inl".into(),
        (2, 1) => "inr".into(),
        _ => format!("in{k}"),
    }
}

/// Disjoint union; injections are open embeddings.
pub fn sum_space(spaces: &[FiniteSpace]) -> Sum {
    let mut labels = Vec::new();
    let mut owner = Vec::new();
    for (k, s) in spaces.iter().enumerate() {
        for x in s.points() {
            labels.push(format!("{}:{}", injection_tag(k, spaces.len()), s.label(x)));
            owner.push((k, x));
        }
    }
    let name = if spaces.is_empty() {
        "0".to_string()
    } else {
        spaces
            .iter()
            .map(|s| s.name())
            .collect::<Vec<_>>()
            .join("+")
    };
    let space = FiniteSpace::from_preorder(name, labels, |p, q| {
        owner[p].0 == owner[q].0 && spaces[owner[p].0].le(owner[p].1, owner[q].1)
    })
    .expect("tagged labels are distinct");
    let mut offset = 0;
    let injections = spaces
        .iter()
        .map(|s| {
            let inj = CMap::new_unchecked(
                s.clone(),
                space.clone(),
                (offset..offset + s.len()).collect(),
            );
            offset += s.len();
            inj
        })
        .collect();
    Sum { space, injections }
}

/// Subspace on `subset` with the embedding.
pub fn subspace(base: &FiniteSpace, subset: &[usize]) -> (FiniteSpace, CMap) {
    let mut pts: Vec<usize> = subset.to_vec();
    pts.sort_unstable();
    pts.dedup();
    let labels = base.labels_of(&pts);
    let space = FiniteSpace::from_preorder(format!("{}|sub", base.name()), labels, |i, j| {
        base.le(pts[i], pts[j])
    })
    .expect("labels are inherited");
    let emb = CMap::new_unchecked(space.clone(), base.clone(), pts);
    (space, emb)
}

/// Quotient along a class assignment `class[x] ∈ 0..k` (must be onto),
/// with the final topology. Class labels are the lexicographically
/// smallest member label.
pub(crate) fn quotient_by_classes(
    base: &FiniteSpace,
    class: &[usize],
    k: usize,
    name: String,
) -> (FiniteSpace, CMap) {
    let mut labels: Vec<Option<&str>> = vec![None; k];
    for x in base.points() {
        let l = base.label(x);
        let slot = &mut labels[class[x]];
        if slot.is_none_or(|cur| l < cur) {
            *slot = Some(l);
        }
    }
    let labels: Vec<String> = labels
        .into_iter()
        .map(|l| l.expect("class assignment is onto").to_string())
        .collect();
    let space = FiniteSpace::from_relation(name, labels, |i, j| {
        base.points()
            .any(|x| class[x] == i && base.points().any(|y| class[y] == j && base.le(x, y)))
    })
    .expect("representative labels are distinct");
    let map = CMap::new_unchecked(base.clone(), space.clone(), class.to_vec());
    (space, map)
}

/// Quotient identifying the classes of an arbitrary equivalence relation
/// given as a list of generating pairs.
pub fn quotient_by_pairs(base: &FiniteSpace, pairs: &[(usize, usize)]) -> (FiniteSpace, CMap) {
    let mut parent: Vec<usize> = base.points().collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut class = vec![usize::MAX; base.len()];
    let mut ids: HashMap<usize, usize> = HashMap::new();
    for x in base.points() {
        let r = find(&mut parent, x);
        let next = ids.len();
        class[x] = *ids.entry(r).or_insert(next);
    }
    quotient_by_classes(base, &class, ids.len(), format!("{}/~", base.name()))
}

/// Which induced construction to perform.
#[derive(Debug, Clone)]
pub enum Induced {
    /// Subspace on the given labels.
    Subspace(Vec<String>),
    /// Quotient along a surjective point table onto the listed class labels.
    Quotient {
        classes: Vec<String>,
        table: Vec<(String, String)>,
    },
}

/// Subspace or quotient with its canonical map.
pub fn induced_space(base: &FiniteSpace, data: &Induced) -> Result<(FiniteSpace, CMap)> {
    match data {
        Induced::Subspace(labels) => {
            let set = base.indices_of(labels)?;
            Ok(subspace(base, &set))
        }
        Induced::Quotient { classes, table } => {
            let index = index_labels(classes)?;
            let mut class = vec![usize::MAX; base.len()];
            for (x, c) in table {
                let xi = base.index_of(x)?;
                class[xi] = *index.get(c).ok_or_else(|| Error::UnknownLabel(c.clone()))?;
            }
            if let Some(i) = class.iter().position(|&c| c == usize::MAX) {
                return Err(Error::NotTotal(base.label(i).to_string()));
            }
            let mut hit = vec![false; classes.len()];
            for &c in &class {
                hit[c] = true;
            }
            if let Some(i) = hit.iter().position(|h| !h) {
                return Err(Error::NotSurjective(classes[i].clone()));
            }
            let space = FiniteSpace::from_relation(
                format!("{}/~", base.name()),
                classes.clone(),
                |i, j| {
                    base.points().any(|x| {
                        class[x] == i && base.points().any(|y| class[y] == j && base.le(x, y))
                    })
                },
            )?;
            let map = CMap::new_unchecked(base.clone(), space.clone(), class);
            Ok((space, map))
        }
    }
}

/// True iff surjective and the target carries the final topology.
pub fn is_quotient_map(map: &CMap) -> bool {
    if !map.is_surjective() {
        return false;
    }
    let tgt = map.target();
    let src = map.source();
    let mut generated = BitMatrix::from_fn(tgt.len(), |i, j| {
        src.points()
            .any(|x| map.apply(x) == i && src.points().any(|y| map.apply(y) == j && src.le(x, y)))
    });
    generated.close_preorder();
    tgt.points()
        .all(|i| tgt.points().all(|j| generated.get(i, j) == tgt.le(i, j)))
}

/// An irreducible closed set with its generic point, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Irreducible {
    pub set: Vec<usize>,
    pub generic_point: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoberReport {
    pub is_sober: bool,
    pub irreducibles: Vec<Irreducible>,
}

/// Enumerates irreducible closed sets and their generic points.
pub fn sober_report(space: &FiniteSpace) -> Result<SoberReport> {
    if !space.is_t0() {
        return Err(Error::NotT0(space.name().to_string()));
    }
    let closed = space.closed_sets();
    let mut irreducibles = Vec::new();
    for c in closed.iter().filter(|c| !c.is_empty()) {
        let proper: Vec<&Vec<usize>> = closed
            .iter()
            .filter(|d| d.len() < c.len() && d.iter().all(|x| c.contains(x)))
            .collect();
        let splits = proper.iter().enumerate().any(|(i, d1)| {
            proper[i..]
                .iter()
                .any(|d2| c.iter().all(|x| d1.contains(x) || d2.contains(x)))
        });
        if splits {
            continue;
        }
        let generic_point = c.iter().copied().find(|&g| space.closure(&[g]) == *c);
        irreducibles.push(Irreducible {
            set: c.clone(),
            generic_point,
        });
    }
    Ok(SoberReport {
        is_sober: irreducibles.iter().all(|i| i.generic_point.is_some()),
        irreducibles,
    })
}

/// Calls `visit` on every monotone table `source → target`, in
/// lexicographic order (first point most significant). Stops early when
/// `visit` returns `false`. Returns the number of tables visited, or
/// `CapExceeded` once `budget` is exhausted.
pub fn for_each_cmap_table(
    source: &FiniteSpace,
    target: &FiniteSpace,
    budget: usize,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<usize> {
    let n = source.len();
    let mut table = vec![0usize; n];
    let mut count = 0usize;
    let mut stop = false;
    fn rec(
        k: usize,
        source: &FiniteSpace,
        target: &FiniteSpace,
        table: &mut Vec<usize>,
        count: &mut usize,
        budget: usize,
        stop: &mut bool,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<()> {
        if *stop {
            return Ok(());
        }
        if k == source.len() {
            *count += 1;
            if *count > budget {
                return Err(Error::CapExceeded(format!(
                    "more than {budget} candidate maps"
                )));
            }
            if !visit(table) {
                *stop = true;
            }
            return Ok(());
        }
        for y in target.points() {
            let ok = (0..k).all(|j| {
                (!source.le(j, k) || target.le(table[j], y))
                    && (!source.le(k, j) || target.le(y, table[j]))
            });
            if ok {
                table[k] = y;
                rec(k + 1, source, target, table, count, budget, stop, visit)?;
                if *stop {
                    return Ok(());
                }
            }
        }
        Ok(())
    }
    if n > 0 && target.is_empty() {
        return Ok(0);
    }
    rec(
        0, source, target, &mut table, &mut count, budget, &mut stop, &mut visit,
    )?;
    Ok(count)
}

/// All continuous maps `source → target`, lexicographically ordered.
pub fn enumerate_cmaps(source: &FiniteSpace, target: &FiniteSpace) -> Vec<CMap> {
    let mut out = Vec::new();
    for_each_cmap_table(source, target, usize::MAX, |t| {
        out.push(CMap::new_unchecked(
            source.clone(),
            target.clone(),
            t.to_vec(),
        ));
        true
    })
    .expect("unbounded budget");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> FiniteSpace {
        FiniteSpace::from_opens("S", &["0", "1"], &[vec![], vec!["0"], vec!["0", "1"]]).unwrap()
    }

    fn d2() -> FiniteSpace {
        FiniteSpace::discrete("D2", &["p", "q"]).unwrap()
    }

    #[test]
    fn sierpinski_from_opens() {
        let s = s();
        assert_eq!(
            s.natural_order_labels(),
            vec![
                ("0".to_string(), "0".to_string()),
                ("0".into(), "1".into()),
                ("1".into(), "1".into())
            ]
        );
        assert_eq!(s.provenance(), Provenance::Opens);
        assert!(s.is_t0());
    }

    #[test]
    fn discrete_from_all_subsets() {
        let d = FiniteSpace::from_opens(
            "D2",
            &["p", "q"],
            &[vec![], vec!["p"], vec!["q"], vec!["p", "q"]],
        )
        .unwrap();
        assert_eq!(
            d.natural_order(),
            vec![vec![true, false], vec![false, true]]
        );
    }

    #[test]
    fn topology_errors() {
        let err = FiniteSpace::from_opens("X", &["p", "q"], &[vec![], vec!["p"]]).unwrap_err();
        assert!(matches!(err, Error::NotATopology(_)));
        let err = FiniteSpace::from_opens(
            "X",
            &["p", "q", "r"],
            &[vec![], vec!["p"], vec!["q"], vec!["p", "q", "r"]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotATopology(m) if m.contains("union")));
        assert_eq!(
            FiniteSpace::discrete("X", &["a", "a"]).unwrap_err(),
            Error::DuplicatePoint("a".into())
        );
        assert_eq!(
            FiniteSpace::from_order("X", &["a"], &[("a", "b")]).unwrap_err(),
            Error::UnknownLabel("b".into())
        );
    }

    #[test]
    fn indiscrete_order_is_total() {
        let i = FiniteSpace::indiscrete("I", &["a", "b"]).unwrap();
        assert_eq!(i.order_pairs().len(), 4);
        assert!(!i.is_t0());
    }

    #[test]
    fn t0_reflections() {
        let r = t0_report(&s());
        assert!(r.is_t0);
        assert_eq!(r.reflection.len(), 2);
        assert_eq!(r.eta.table(), &[0, 1]);

        let i = FiniteSpace::indiscrete("I", &["a", "b"]).unwrap();
        let r = t0_report(&i);
        assert!(!r.is_t0);
        assert_eq!(r.reflection.len(), 1);
        assert_eq!(r.eta.table(), &[0, 0]);

        let x =
            FiniteSpace::from_order("X", &["a", "b", "c"], &[("a", "b"), ("b", "a"), ("b", "c")])
                .unwrap();
        let r = t0_report(&x);
        assert!(!r.is_t0);
        assert_eq!(r.reflection.labels(), &["a".to_string(), "c".to_string()]);
        assert!(r.reflection.lt(0, 1));
        assert_eq!(r.eta.table(), &[0, 0, 1]);
        assert!(is_quotient_map(&r.eta));
    }

    #[test]
    fn closure_and_interior() {
        let s = s();
        let r = closure_ops(&s, &["0"]).unwrap();
        assert_eq!(r.closure, vec![0, 1]);
        let r = closure_ops(&s, &["1"]).unwrap();
        assert_eq!(r.interior, Vec::<usize>::new());
        assert_eq!(r.closure, vec![1]);
        let r = closure_ops::<&str>(&s, &[]).unwrap();
        assert!(r.closure.is_empty() && r.interior.is_empty());
        assert_eq!(r.min_open_nbhd, vec![vec![0], vec![0, 1]]);
        assert!(closure_ops(&s, &["7"]).is_err());
    }

    #[test]
    fn continuity() {
        let s = s();
        assert!(is_continuous(&[0, 1], &s, &s));
        assert!(!is_continuous(&[1, 0], &s, &s));
        assert!(is_continuous(&[1, 1], &s, &s));
        assert!(matches!(
            CMap::new(s.clone(), s.clone(), vec![1, 0]),
            Err(Error::NotContinuous { .. })
        ));
    }

    #[test]
    fn products() {
        let s = s();
        let p = product_space(&[s.clone(), s.clone()]);
        assert_eq!(p.space.len(), 4);
        assert_eq!(p.space.label(1), "(0,1)");
        // (0,1) and (1,0) are incomparable; (0,0) is below everything.
        assert!(!p.space.comparable(1, 2));
        assert!(p.space.points().all(|q| p.space.le(0, q)));

        let e = product_space(&[]);
        assert_eq!(e.space.len(), 1);

        let p = product_space(&[s.clone(), d2()]);
        let a = p.index_of_tuple(&[0, 0]);
        let b = p.index_of_tuple(&[1, 0]);
        let c = p.index_of_tuple(&[1, 1]);
        assert!(p.space.le(a, b));
        assert!(!p.space.le(a, c));
    }

    #[test]
    fn product_opens_are_generated_by_boxes() {
        // Brute force: the topology generated by products of opens.
        let s = s();
        let p = product_space(&[s.clone(), s.clone()]);
        let mut generated: BTreeSet<Vec<usize>> = BTreeSet::new();
        let opens = s.open_sets();
        let boxes: Vec<Vec<usize>> = opens
            .iter()
            .flat_map(|u| opens.iter().map(move |v| (u.clone(), v.clone())))
            .map(|(u, v)| {
                p.space
                    .points()
                    .filter(|&q| u.contains(&p.tuple(q)[0]) && v.contains(&p.tuple(q)[1]))
                    .collect()
            })
            .collect();
        for mask in 0u32..(1 << boxes.len()) {
            let mut set: Vec<usize> = (0..boxes.len())
                .filter(|i| mask >> i & 1 == 1)
                .flat_map(|i| boxes[i].clone())
                .collect();
            set.sort_unstable();
            set.dedup();
            generated.insert(set);
        }
        let expected: BTreeSet<Vec<usize>> = p.space.open_sets().into_iter().collect();
        assert_eq!(generated, expected);
    }

    #[test]
    fn sums() {
        let s = s();
        let sum = sum_space(&[s.clone(), s.clone()]);
        assert_eq!(sum.space.len(), 4);
        assert_eq!(sum.space.label(0), "inl:0");
        assert!(sum.space.le(0, 1) && sum.space.le(2, 3) && !sum.space.comparable(1, 2));
        assert!(sum_space(&[]).space.is_empty());
        let one_plus_one = sum_space(&[FiniteSpace::point(), FiniteSpace::point()]);
        assert_eq!(one_plus_one.space.order_pairs(), vec![(0, 0), (1, 1)]);
        for inj in &sum.injections {
            assert!(sum
                .space
                .is_open(&inj.image(&inj.source().points().collect::<Vec<_>>())));
        }
    }

    #[test]
    fn induced_spaces() {
        let s = s();
        let (sub, emb) = induced_space(&s, &Induced::Subspace(vec!["1".into()])).unwrap();
        assert_eq!(sub.len(), 1);
        assert_eq!(emb.table(), &[1]);

        let (q, _) = induced_space(
            &d2(),
            &Induced::Quotient {
                classes: vec!["*".into()],
                table: vec![("p".into(), "*".into()), ("q".into(), "*".into())],
            },
        )
        .unwrap();
        assert_eq!(q.len(), 1);

        let err = induced_space(
            &d2(),
            &Induced::Quotient {
                classes: vec!["x".into(), "y".into(), "z".into()],
                table: vec![("p".into(), "x".into()), ("q".into(), "y".into())],
            },
        )
        .unwrap_err();
        assert_eq!(err, Error::NotSurjective("z".into()));

        // S+S with the two tops identified: a V with two minimal points.
        let sum = sum_space(&[s.clone(), s.clone()]);
        let (v, map) = quotient_by_pairs(&sum.space, &[(1, 3)]);
        assert_eq!(v.len(), 3);
        assert_eq!(v.labels(), &["inl:0", "inl:1", "inr:0"]);
        assert!(v.lt(0, 1) && v.lt(2, 1) && !v.comparable(0, 2));
        assert!(is_quotient_map(&map));
    }

    #[test]
    fn sober_examples() {
        let r = sober_report(&s()).unwrap();
        assert!(r.is_sober);
        assert_eq!(
            r.irreducibles,
            vec![
                Irreducible {
                    set: vec![1],
                    generic_point: Some(1)
                },
                Irreducible {
                    set: vec![0, 1],
                    generic_point: Some(0)
                },
            ]
        );
        let r = sober_report(&d2()).unwrap();
        assert_eq!(r.irreducibles.len(), 2);
        assert!(r.is_sober);
        assert!(sober_report(&FiniteSpace::indiscrete("I", &["a", "b"]).unwrap()).is_err());
    }

    #[test]
    fn quotient_maps() {
        let s = s();
        let to_point = CMap::constant(&s, &FiniteSpace::point(), 0);
        assert!(is_quotient_map(&to_point));
        let d_to_s = CMap::new(d2(), s.clone(), vec![0, 1]).unwrap();
        assert!(!is_quotient_map(&d_to_s));
        assert!(is_quotient_map(&CMap::identity(&s)));
    }

    #[test]
    fn map_enumeration() {
        let s = s();
        let maps = enumerate_cmaps(&s, &s);
        let tables: Vec<&[usize]> = maps.iter().map(|m| m.table()).collect();
        assert_eq!(tables, vec![&[0, 0][..], &[0, 1], &[1, 1]]);
        assert_eq!(
            enumerate_cmaps(&FiniteSpace::point(), &FiniteSpace::chain(3)).len(),
            3
        );
        assert_eq!(enumerate_cmaps(&d2(), &s).len(), 4);
        assert_eq!(enumerate_cmaps(&FiniteSpace::empty(), &s).len(), 1);
        assert_eq!(enumerate_cmaps(&s, &FiniteSpace::empty()).len(), 0);
        assert!(for_each_cmap_table(&d2(), &s, 3, |_| true).is_err());
    }

    #[test]
    fn open_and_closed_set_enumeration() {
        let c3 = FiniteSpace::chain(3);
        assert_eq!(
            c3.closed_sets(),
            vec![vec![], vec![2], vec![1, 2], vec![0, 1, 2]]
        );
        assert_eq!(
            c3.open_sets(),
            vec![vec![], vec![0], vec![0, 1], vec![0, 1, 2]]
        );
        let i = FiniteSpace::indiscrete("I", &["a", "b"]).unwrap();
        assert_eq!(i.closed_sets(), vec![vec![], vec![0, 1]]);
        assert_eq!(d2().closed_sets().len(), 4);
    }
}
