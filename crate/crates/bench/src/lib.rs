//! Workloads shared by the benchmarks.

use laxtop::fixtures::{c3, m3};
use laxtop::harness::{chain_cover, lax_objects};
use laxtop::{CMap, FiniteSpace, LaxMorphism, LaxObject};

/// Every lax object over `base` whose space is an `n`-chain.
pub fn chain_objects(base: &FiniteSpace, n: usize) -> Vec<LaxObject> {
    lax_objects(base, &[FiniteSpace::chain(n)])
}

/// The chain cover of the 3-chain, used for descent checks.
pub fn c3_cover() -> CMap {
    chain_cover(&c3()).expect("chains of C3 cover it")
}

/// The chain cover of the 2-chain made lax over `M3`, with `α` constant at
/// top. Larger covers exceed the default budget for descent data.
pub fn m3_lax_cover() -> LaxMorphism {
    let base = m3();
    let top = base.index_of("top").expect("M3 has a top");
    let f = chain_cover(&FiniteSpace::chain(2)).expect("chains of a chain cover it");
    let src = LaxObject::constant(f.source(), &base, top);
    let tgt = LaxObject::constant(f.target(), &base, top);
    LaxMorphism::new(src, tgt, f).expect("constant structure maps are lax")
}
