use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use flk_core::arith::factor::{factor_rational_poly, is_irreducible};
use flk_core::arith::{ratio, QPoly, Rat};
use flk_core::covering::pairing::{sigma_inverse_series, series_involution};
use flk_core::covering::series::{magnus_expand, series_identity, series_mat_mul};
use flk_core::covering::{cover_presentation, FreeWord, GroupRingElem, TruncSeries};
use flk_core::devissage::witt_reduce;
use flk_core::fixtures::{random_form, random_invertible, random_module};
use flk_core::primitives::is_primitive;
use flk_core::witt::hilbert::{hilbert_symbol, Place};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    (prop_oneof![-60i64..=-1, 1i64..=60], 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

fn group_ring_elem(mu: usize) -> impl Strategy<Value = GroupRingElem> {
    let letter = (0..mu, prop_oneof![Just(1i8), Just(-1i8)]);
    let word = prop::collection::vec(letter, 0..4).prop_map(|l| FreeWord::from_letters(&l));
    prop::collection::vec((word, -3i64..=3), 0..4).prop_map(|ts| GroupRingElem::from_terms(ts.into_iter().map(|(w, c)| (w, Rat::from_integer(c.into())))))
}

fn places() -> Vec<Place> {
    let mut v: Vec<Place> = [2u64, 3, 5, 7, 11, 13].into_iter().map(Place::prime).collect();
    v.push(Place::Infinity);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hilbert_symbol_is_symmetric_and_bimultiplicative(a in nonzero_rat(), b in nonzero_rat(), c in nonzero_rat()) {
        for v in places() {
            let ab = hilbert_symbol(&a, &b, &v).unwrap();
            prop_assert_eq!(ab, hilbert_symbol(&b, &a, &v).unwrap());
            let ac = hilbert_symbol(&a, &c, &v).unwrap();
            prop_assert_eq!(ab * ac, hilbert_symbol(&a, &(&b * &c), &v).unwrap());
            prop_assert_eq!(hilbert_symbol(&a, &(-&a), &v).unwrap(), 1);
        }
    }

    #[test]
    fn factorization_multiplies_back(c in prop::collection::vec(-6i64..=6, 2..7)) {
        let p = QPoly::from_i64(&c);
        prop_assume!(p.deg() >= 1);
        let f = factor_rational_poly(&p).unwrap();
        let mut prod = QPoly::constant(f.content.clone());
        for (q, e) in &f.factors {
            prop_assert!(is_irreducible(q));
            prod = &prod * &q.pow(*e);
        }
        prop_assert_eq!(prod, p);
    }

    #[test]
    fn inverse_and_determinant(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let a = random_invertible(&mut r, n, false);
        let b = random_invertible(&mut r, n, false);
        prop_assert!((&a * &a.inverse().unwrap()).is_identity());
        prop_assert_eq!((&a * &b).det(), a.det() * b.det());
    }

    #[test]
    fn magnus_is_multiplicative(g in group_ring_elem(2), h in group_ring_elem(2), d in 0usize..5) {
        let lhs = magnus_expand(&g.mul(&h), d);
        prop_assert_eq!(lhs, magnus_expand(&g, d).mul(&magnus_expand(&h, d)));
        prop_assert_eq!(magnus_expand(&g.bar(), d), series_involution(&magnus_expand(&g, d)));
    }

    #[test]
    fn involution_is_an_involution(g in group_ring_elem(2), h in group_ring_elem(2), d in 0usize..5) {
        let s: TruncSeries = magnus_expand(&g, d).add(&magnus_expand(&h, d).scale(&ratio(1, 3)));
        prop_assert_eq!(series_involution(&series_involution(&s)), s);
    }

    #[test]
    fn dual_is_involutive(seed in any::<u64>(), mu in 1usize..4, dim in 1usize..6) {
        let v = random_module(&mut rng(seed), mu, dim, true);
        prop_assert_eq!(v.dual().dual(), v.clone());
        prop_assert_eq!(is_primitive(&v), is_primitive(&v.dual()));
    }

    #[test]
    fn cover_inverse_identity(seed in any::<u64>(), mu in 1usize..3, dim in 1usize..5) {
        let v = random_module(&mut rng(seed), mu, dim, true);
        let p = cover_presentation(&v);
        prop_assert!(p.augmentation().is_identity());
        let d = 5;
        let inv: Vec<Vec<TruncSeries>> = sigma_inverse_series(&v).iter().map(|r| r.iter().map(|s| s.truncate(d)).collect()).collect();
        prop_assert_eq!(series_mat_mul(&p.magnus(d), &inv), series_identity(dim, d));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn metabolic_forms_reduce_to_nothing(seed in any::<u64>(), mu in 1usize..4, half in 1usize..3, sym in any::<bool>()) {
        let zeta = if sym { 1 } else { -1 };
        let f = random_form(&mut rng(seed), mu, 2 * half, zeta);
        let d = witt_reduce(&f.direct_sum(&f.neg()).unwrap(), seed).unwrap();
        prop_assert!(d.is_empty());
    }
}
