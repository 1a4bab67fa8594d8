use proptest::prelude::*;

use laxtop::descent::{top_descent_check, top_effective_descent_check};
use laxtop::enumerate::lattices_up_to;
use laxtop::finspace::{enumerate_cmaps, is_quotient_map};
use laxtop::harness::lax_morphisms;
use laxtop::io::{parse_space, space_to_string};
use laxtop::laxcomma::{lan_by_neighbourhoods, lan_by_order};
use laxtop::order::Lattice;
use laxtop::{CMap, FiniteSpace, LaxObject};

fn space(n: usize, bits: &[bool]) -> FiniteSpace {
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    FiniteSpace::from_relation("R", labels, |x, y| bits[x * 4 + y]).unwrap()
}

prop_compose! {
    fn any_space(max: usize)(n in 1..=max, bits in prop::collection::vec(any::<bool>(), 16)) -> FiniteSpace {
        space(n, &bits)
    }
}

fn pick_map(source: &FiniteSpace, target: &FiniteSpace, seed: usize) -> CMap {
    let maps = enumerate_cmaps(source, target);
    maps[seed % maps.len()].clone()
}

fn small_lattice(seed: usize) -> FiniteSpace {
    let all = lattices_up_to(4);
    all[seed % all.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn order_form_round_trips(s in any_space(4)) {
        let back = parse_space(&space_to_string(&s)).unwrap();
        prop_assert_eq!(back.labels(), s.labels());
        prop_assert_eq!(back.natural_order(), s.natural_order());
    }

    #[test]
    fn closure_and_interior_are_dual(s in any_space(4), mask in 0u8..16) {
        let set: Vec<usize> = s.points().filter(|&p| mask >> p & 1 == 1).collect();
        let complement = |v: &[usize]| -> Vec<usize> { s.points().filter(|p| !v.contains(p)).collect() };
        prop_assert_eq!(complement(&s.closure(&set)), s.interior(&complement(&set)));
        prop_assert!(s.is_open(&s.interior(&set)));
        prop_assert!(s.is_closed(&s.closure(&set)));
    }

    #[test]
    fn kan_formulas_agree(
        lat_seed in any::<usize>(),
        b in any_space(3),
        c in any_space(3),
        beta_seed in any::<usize>(),
        q_seed in any::<usize>(),
    ) {
        let x = small_lattice(lat_seed);
        let lat = Lattice::new(&x).unwrap();
        let beta = pick_map(&b, &x, beta_seed);
        let q = pick_map(&b, &c, q_seed);
        prop_assert_eq!(lan_by_neighbourhoods(&lat, &beta, &q), lan_by_order(&lat, &beta, &q));
    }

    #[test]
    fn lax_morphisms_compose(
        lat_seed in any::<usize>(),
        spaces in prop::collection::vec(any_space(2), 3),
        seeds in prop::collection::vec(any::<usize>(), 5),
    ) {
        let x = small_lattice(lat_seed);
        let objs: Vec<LaxObject> = spaces
            .iter()
            .zip(&seeds)
            .map(|(s, &k)| LaxObject::from_map(pick_map(s, &x, k)))
            .collect();
        let fs = lax_morphisms(&objs[0], &objs[1]);
        let gs = lax_morphisms(&objs[1], &objs[2]);
        prop_assume!(!fs.is_empty() && !gs.is_empty());
        let f = &fs[seeds[3] % fs.len()];
        let g = &gs[seeds[4] % gs.len()];
        let h = g.after(f).unwrap();
        for a in objs[0].space().points() {
            prop_assert!(x.le(objs[0].value(a), objs[2].value(h.apply(a))));
        }
    }

    #[test]
    fn effective_descent_implies_descent(a in any_space(4), b in any_space(3), seed in any::<usize>()) {
        let f = pick_map(&a, &b, seed);
        let descent = top_descent_check(&f).is_descent;
        let effective = top_effective_descent_check(&f).is_effective;
        if effective.is_true() {
            prop_assert!(descent.is_true());
        }
        if descent.is_true() {
            prop_assert!(f.is_surjective());
            prop_assert!(is_quotient_map(&f));
        }
    }
}
