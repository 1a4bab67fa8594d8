//! Enumeration of finite posets and preorders, labeled or up to isomorphism.
//!
//! Orders are grown one point at a time: a new last point is attached by
//! choosing a down-set `D` of points below it and an up-set `U` of points
//! above it with `D <= U` elementwise. Every labeled order arises exactly
//! once. Isomorphism classes are separated by a canonical form computed
//! from colour refinement followed by a search within colour cells.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::finspace::FiniteSpace;
use crate::order::lattice_report;

/// Largest point count enumerated unless a caller asks for more.
pub const DEFAULT_POINT_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Poset,
    Preorder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Labeled,
    Unlabeled,
}

/// Row-major order matrix on `n` points.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
struct Matrix {
    n: usize,
    bits: Vec<bool>,
}

impl Matrix {
    fn get(&self, x: usize, y: usize) -> bool {
        self.bits[x * self.n + y]
    }

    fn of(space: &FiniteSpace) -> Self {
        let n = space.len();
        Matrix {
            n,
            bits: (0..n * n).map(|i| space.le(i / n, i % n)).collect(),
        }
    }

    fn to_space(&self, name: String) -> FiniteSpace {
        let labels = (0..self.n).map(|i| i.to_string()).collect();
        FiniteSpace::from_preorder(name, labels, |x, y| self.get(x, y)).expect("numeric labels")
    }

    /// Matrix after relabelling: new point `i` is old point `perm[i]`.
    fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n;
        Matrix {
            n,
            bits: (0..n * n)
                .map(|i| self.get(perm[i / n], perm[i % n]))
                .collect(),
        }
    }

    /// All one-point extensions, in a fixed order.
    fn extensions(&self, kind: OrderKind) -> Vec<Matrix> {
        let n = self.n;
        let mut out = Vec::new();
        for dmask in 0u32..(1 << n) {
            let in_d = |x: usize| dmask >> x & 1 == 1;
            let d_ok = (0..n).all(|x| !in_d(x) || (0..n).all(|y| !self.get(y, x) || in_d(y)));
            if !d_ok {
                continue;
            }
            for umask in 0u32..(1 << n) {
                let in_u = |x: usize| umask >> x & 1 == 1;
                if kind == OrderKind::Poset && dmask & umask != 0 {
                    continue;
                }
                let u_ok = (0..n).all(|x| !in_u(x) || (0..n).all(|y| !self.get(x, y) || in_u(y)));
                let cross = (0..n).all(|d| !in_d(d) || (0..n).all(|u| !in_u(u) || self.get(d, u)));
                if !(u_ok && cross) {
                    continue;
                }
                let m = n + 1;
                let bits = (0..m * m)
                    .map(|i| {
                        let (x, y) = (i / m, i % m);
                        match (x == n, y == n) {
                            (true, true) => true,
                            (false, true) => in_d(x),
                            (true, false) => in_u(y),
                            (false, false) => self.get(x, y),
                        }
                    })
                    .collect();
                out.push(Matrix { n: m, bits });
            }
        }
        out
    }
}

fn empty_matrix() -> Matrix {
    Matrix { n: 0, bits: vec![] }
}

/// Isomorphism-invariant colouring by iterated refinement on the
/// multisets of colours strictly below and strictly above each point.
fn refine_colours(m: &Matrix) -> Vec<usize> {
    let n = m.n;
    let mut colour = vec![0usize; n];
    let mut classes = if n == 0 { 0 } else { 1 };
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|x| {
                let mut below: Vec<usize> = (0..n)
                    .filter(|&y| y != x && m.get(y, x) && !m.get(x, y))
                    .map(|y| colour[y])
                    .collect();
                let mut above: Vec<usize> = (0..n)
                    .filter(|&y| y != x && m.get(x, y) && !m.get(y, x))
                    .map(|y| colour[y])
                    .collect();
                let mut equiv: Vec<usize> = (0..n)
                    .filter(|&y| y != x && m.get(x, y) && m.get(y, x))
                    .map(|y| colour[y])
                    .collect();
                below.sort_unstable();
                above.sort_unstable();
                equiv.sort_unstable();
                (colour[x], below, above, equiv)
            })
            .collect();
        let distinct: Vec<_> = sigs.iter().collect::<BTreeSet<_>>().into_iter().collect();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(&s).expect("present"))
            .collect();
        let count = distinct.len();
        colour = next;
        if count == classes {
            return colour;
        }
        classes = count;
    }
}

/// Canonical matrix: the lexicographically smallest relabelling among those
/// that list points in increasing colour.
fn canonical_matrix(m: &Matrix) -> Matrix {
    let colour = refine_colours(m);
    let mut order: Vec<usize> = (0..m.n).collect();
    order.sort_by_key(|&x| (colour[x], x));
    let mut best: Option<Matrix> = None;
    let mut perm = Vec::with_capacity(m.n);
    let mut used = vec![false; m.n];
    search_cells(m, &colour, &order, &mut perm, &mut used, &mut best);
    best.unwrap_or_else(empty_matrix)
}

fn search_cells(
    m: &Matrix,
    colour: &[usize],
    order: &[usize],
    perm: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Option<Matrix>,
) {
    let k = perm.len();
    if k == m.n {
        let cand = m.permuted(perm);
        if best.as_ref().is_none_or(|b| cand < *b) {
            *best = Some(cand);
        }
        return;
    }
    // Prune: compare the already-fixed leading block against the best.
    if let Some(b) = best.as_ref() {
        let mut cmp = std::cmp::Ordering::Equal;
        'outer: for i in 0..k {
            for j in 0..k {
                let c = m.get(perm[i], perm[j]).cmp(&b.get(i, j));
                if c != std::cmp::Ordering::Equal {
                    cmp = c;
                    break 'outer;
                }
            }
        }
        if cmp == std::cmp::Ordering::Greater {
            return;
        }
    }
    let want = colour[order[k]];
    for &x in order {
        if colour[x] == want && !used[x] {
            used[x] = true;
            perm.push(x);
            search_cells(m, colour, order, perm, used, best);
            perm.pop();
            used[x] = false;
        }
    }
}

/// Canonical form of a finite space's order: equal exactly for isomorphic
/// spaces.
pub fn canonical_form(space: &FiniteSpace) -> Vec<bool> {
    canonical_matrix(&Matrix::of(space)).bits
}

/// Isomorphism test by trying every bijection.
pub fn are_isomorphic_brute(a: &FiniteSpace, b: &FiniteSpace) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let (ma, mb) = (Matrix::of(a), Matrix::of(b));
    let mut found = false;
    for_each_permutation(a.len(), &mut |p| {
        if ma.permuted(p) == mb {
            found = true;
            return false;
        }
        true
    });
    found
}

fn for_each_permutation(n: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(perm: &mut Vec<usize>, used: &mut [bool], f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if perm.len() == used.len() {
            return f(perm);
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                perm.push(x);
                let go = rec(perm, used, f);
                perm.pop();
                used[x] = false;
                if !go {
                    return false;
                }
            }
        }
        true
    }
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], f);
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded(format!(
            "{n} points exceeds the cap of {cap}"
        )));
    }
    Ok(())
}

fn labeled_matrices(n: usize, kind: OrderKind) -> Vec<Matrix> {
    let mut level = vec![empty_matrix()];
    for _ in 0..n {
        level = level.iter().flat_map(|m| m.extensions(kind)).collect();
    }
    level
}

fn unlabeled_matrices(n: usize, kind: OrderKind) -> Vec<Matrix> {
    let mut level = vec![empty_matrix()];
    for _ in 0..n {
        let next: BTreeSet<Matrix> = level
            .iter()
            .flat_map(|m| m.extensions(kind))
            .map(|m| canonical_matrix(&m))
            .collect();
        level = next.into_iter().collect();
    }
    level
}

fn prefix(kind: OrderKind) -> &'static str {
    match kind {
        OrderKind::Poset => "P",
        OrderKind::Preorder => "Q",
    }
}

/// All orders of the given kind on `n` points, with labels `0..n`.
///
/// Unlabeled mode yields one canonical representative per isomorphism
/// class, sorted by canonical form.
pub fn enumerate_orders(
    n: usize,
    kind: OrderKind,
    mode: Mode,
    cap: usize,
) -> Result<Vec<FiniteSpace>> {
    check_cap(n, cap)?;
    let ms = match mode {
        Mode::Labeled => labeled_matrices(n, kind),
        Mode::Unlabeled => unlabeled_matrices(n, kind),
    };
    Ok(ms
        .iter()
        .enumerate()
        .map(|(i, m)| m.to_space(format!("{}{n}.{i}", prefix(kind))))
        .collect())
}

pub fn enumerate_posets(n: usize, mode: Mode) -> Result<Vec<FiniteSpace>> {
    enumerate_orders(n, OrderKind::Poset, mode, DEFAULT_POINT_CAP)
}

/// Unlabeled posets on `0..=max` points.
pub fn posets_up_to(max: usize) -> Vec<FiniteSpace> {
    (0..=max)
        .flat_map(|n| {
            enumerate_orders(n, OrderKind::Poset, Mode::Unlabeled, usize::MAX).expect("uncapped")
        })
        .collect()
}

/// Unlabeled preorders on `0..=max` points.
pub fn preorders_up_to(max: usize) -> Vec<FiniteSpace> {
    (0..=max)
        .flat_map(|n| {
            enumerate_orders(n, OrderKind::Preorder, Mode::Unlabeled, usize::MAX).expect("uncapped")
        })
        .collect()
}

/// Unlabeled finite lattices on `1..=max` points.
pub fn lattices_up_to(max: usize) -> Vec<FiniteSpace> {
    posets_up_to(max)
        .into_iter()
        .filter(|p| lattice_report(p).is_ok_and(|r| r.is_complete_lattice))
        .collect()
}

/// Independent count of isomorphism classes: generate every labeled order
/// and keep one per class using the brute-force isomorphism test.
pub fn brute_force_unlabeled(n: usize, kind: OrderKind, cap: usize) -> Result<Vec<FiniteSpace>> {
    let labeled = enumerate_orders(n, kind, Mode::Labeled, cap)?;
    let mut reps: Vec<FiniteSpace> = Vec::new();
    for s in labeled {
        if !reps.iter().any(|r| are_isomorphic_brute(r, &s)) {
            reps.push(s);
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_poset_counts() {
        let counts: Vec<usize> = (0..=4)
            .map(|n| enumerate_posets(n, Mode::Labeled).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 3, 19, 219]);
    }

    #[test]
    fn unlabeled_poset_counts() {
        let counts: Vec<usize> = (1..=5)
            .map(|n| enumerate_posets(n, Mode::Unlabeled).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63]);
    }

    #[test]
    fn preorder_counts() {
        let labeled: Vec<usize> = (0..=3)
            .map(|n| {
                enumerate_orders(n, OrderKind::Preorder, Mode::Labeled, 6)
                    .unwrap()
                    .len()
            })
            .collect();
        assert_eq!(labeled, vec![1, 1, 4, 29]);
        let unlabeled: Vec<usize> = (0..=4)
            .map(|n| {
                enumerate_orders(n, OrderKind::Preorder, Mode::Unlabeled, 6)
                    .unwrap()
                    .len()
            })
            .collect();
        assert_eq!(unlabeled, vec![1, 1, 3, 9, 33]);
    }

    #[test]
    fn brute_force_agrees() {
        for n in 0..=4 {
            for kind in [OrderKind::Poset, OrderKind::Preorder] {
                let fast = enumerate_orders(n, kind, Mode::Unlabeled, 6).unwrap().len();
                let slow = brute_force_unlabeled(n, kind, 6).unwrap().len();
                assert_eq!(fast, slow, "n={n} {kind:?}");
            }
        }
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let a = FiniteSpace::from_order("a", &["x", "y", "z"], &[("x", "y")]).unwrap();
        let b = FiniteSpace::from_order("b", &["x", "y", "z"], &[("z", "x")]).unwrap();
        let c = FiniteSpace::chain(3);
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_ne!(canonical_form(&a), canonical_form(&c));
        assert!(are_isomorphic_brute(&a, &b));
        assert!(!are_isomorphic_brute(&a, &c));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_orders(7, OrderKind::Poset, Mode::Unlabeled, 6),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn small_lattices() {
        let counts: Vec<usize> = (1..=5)
            .map(|n| lattices_up_to(n).len() - lattices_up_to(n - 1).len())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5]);
    }
}
