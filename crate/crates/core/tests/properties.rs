use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tdcat::generate::{monotone_maps, random_lattice, random_relabel};
use tdcat::order::{adjunction_witness, ccd_check, distributivity_oracle, down_sets, left_adjoint, right_adjoint, way_below};
use tdcat::{FinPoset, Order, SizeGuard};

fn lattice(seed: u64, size: usize) -> FinPoset {
    random_lattice(&mut ChaCha8Rng::seed_from_u64(seed), size)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ccd_matches_distributivity(seed in any::<u64>(), size in 2usize..8) {
        let l = lattice(seed, size);
        let g = SizeGuard::default();
        prop_assert_eq!(ccd_check(&l, &g).unwrap().ccd, distributivity_oracle(&l).unwrap().distributive);
    }

    #[test]
    fn ccd_is_self_dual(seed in any::<u64>(), size in 2usize..8) {
        let l = lattice(seed, size);
        let g = SizeGuard::default();
        prop_assert_eq!(ccd_check(&l, &g).unwrap().ccd, ccd_check(&l.opposite(), &g).unwrap().ccd);
    }

    #[test]
    fn ccd_survives_relabelling(seed in any::<u64>(), size in 2usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_lattice(&mut rng, size);
        let m = random_relabel(&mut rng, &l);
        let g = SizeGuard::default();
        prop_assert_eq!(ccd_check(&l, &g).unwrap().ccd, ccd_check(&m, &g).unwrap().ccd);
    }

    #[test]
    fn computed_adjoints_satisfy_the_hom_equivalence(seed in any::<u64>(), a in 1usize..5, b in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_lattice(&mut rng, a);
        let q = random_lattice(&mut rng, b);
        let maps = monotone_maps(&p, &q);
        let f = &maps[rng.gen_range(0..maps.len())];
        if let Ok(g) = left_adjoint(f, &p, &q) {
            prop_assert!(adjunction_witness(&g, f, &p, &q).is_none());
        }
        if let Ok(h) = right_adjoint(f, &p, &q) {
            prop_assert!(adjunction_witness(f, &h, &q, &p).is_none());
        }
    }

    #[test]
    fn finite_way_below_is_the_order(seed in any::<u64>(), size in 1usize..8) {
        let l = lattice(seed, size);
        let wb = way_below(&l, &SizeGuard::default()).unwrap();
        for x in 0..l.size() {
            for y in 0..l.size() {
                prop_assert_eq!(wb.holds(x, y), l.leq(x, y));
            }
        }
    }
}

#[test]
fn down_set_counts() {
    let g = SizeGuard::default();
    for n in 0..6 {
        assert_eq!(down_sets(&FinPoset::chain(n), &g).unwrap().len(), n + 1);
    }
    let names = ["a", "b", "c", "d"];
    assert_eq!(down_sets(&FinPoset::antichain(&names), &g).unwrap().len(), 16);
}
