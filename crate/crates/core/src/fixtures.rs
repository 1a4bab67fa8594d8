//! Named small spaces used throughout the examples and tests.

use crate::finspace::FiniteSpace;

/// `⊥ < a, b, c < ⊤`.
pub fn m3() -> FiniteSpace {
    FiniteSpace::from_order(
        "M3",
        &["bot", "a", "b", "c", "top"],
        &[
            ("bot", "a"),
            ("bot", "b"),
            ("bot", "c"),
            ("a", "top"),
            ("b", "top"),
            ("c", "top"),
        ],
    )
    .unwrap()
}

/// Divisors of 12 with `n ⪯ m` iff `m | n`.
pub fn div12() -> FiniteSpace {
    let ds = [1u32, 2, 3, 4, 6, 12];
    let labels: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
    let mut pairs = Vec::new();
    for &n in &ds {
        for &m in &ds {
            if n % m == 0 {
                pairs.push((n.to_string(), m.to_string()));
            }
        }
    }
    FiniteSpace::from_order("Div12", &labels, &pairs).unwrap()
}

pub fn antichain2() -> FiniteSpace {
    FiniteSpace::discrete("A2", &["a", "b"]).unwrap()
}

/// The 3-chain `0 < 1 < 2`.
pub fn c3() -> FiniteSpace {
    FiniteSpace::chain(3)
}

/// The 2-point discrete space on `p`, `q`.
pub fn d2() -> FiniteSpace {
    FiniteSpace::discrete("D2", &["p", "q"]).unwrap()
}

/// The diamond `⊥ < a, b < ⊤`, a non-chain frame.
pub fn diamond() -> FiniteSpace {
    FiniteSpace::from_order(
        "M2",
        &["bot", "a", "b", "top"],
        &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
    )
    .unwrap()
}

/// The pentagon `⊥ < a < b < ⊤`, `⊥ < c < ⊤`, a non-distributive lattice.
pub fn n5() -> FiniteSpace {
    FiniteSpace::from_order(
        "N5",
        &["bot", "a", "b", "c", "top"],
        &[
            ("bot", "a"),
            ("a", "b"),
            ("b", "top"),
            ("bot", "c"),
            ("c", "top"),
        ],
    )
    .unwrap()
}
