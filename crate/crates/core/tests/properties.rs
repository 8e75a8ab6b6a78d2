use eostrata_core::bkwin::{psi_from_window, window_from_psi, GluingMode};
use eostrata_core::coeffring::{ff_frobenius, ff_frobenius_inverse, frob_lift_apply};
use eostrata_core::grp::{parabolic_membership, random_group_element, zip_membership};
use eostrata_core::loopgrp::{
    kplus_act, kplus_mul, omega_welldef_check, random_coset_elem, random_k1_element, u_adic_snf, KPlusElem,
};
use eostrata_core::series::{mat_invert, mat_is_in_k1};
use eostrata_core::verify::{adapted_suite, base_change_suite, gluing_instance};
use eostrata_core::zip::{random_zip_element, zip_act};
use eostrata_core::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_field() -> impl Strategy<Value = Gf> {
    prop::sample::select(vec![(2u64, 1usize), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)])
        .prop_map(|(p, r)| Gf::new(p, r).unwrap())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_frobenius_is_automorphism(f in small_field(), a in 0u32..64, b in 0u32..64) {
        let q = f.order();
        let (x, y) = (f.elem(a % q).unwrap(), f.elem(b % q).unwrap());
        prop_assert_eq!(ff_frobenius(&f, f.add(&x, &y)), f.add(&ff_frobenius(&f, x), &ff_frobenius(&f, y)));
        prop_assert_eq!(ff_frobenius(&f, f.mul(&x, &y)), f.mul(&ff_frobenius(&f, x), &ff_frobenius(&f, y)));
        prop_assert_eq!(ff_frobenius_inverse(&f, ff_frobenius(&f, x)), x);
        let mut z = x;
        for _ in 0..f.degree() {
            z = ff_frobenius(&f, z);
        }
        prop_assert_eq!(z, x);
    }

    #[test]
    fn frobenius_lift_reduces_to_pth_power(
        p in prop::sample::select(vec![2u64, 3, 5]),
        m in 1u32..4,
        d in 1usize..6,
        h in prop::collection::vec(0u64..200, 0..4),
        c in prop::collection::vec(0u64..1000, 6),
    ) {
        let h: Vec<u64> = h.into_iter().take(d.saturating_sub(1)).collect();
        let base = RelBase::new(p, m, d, FrobLiftSpec::new(h)).unwrap();
        let x = base.from_coeffs(&c[..d]).unwrap();
        let modp = RelBase::mod_p(p, d).unwrap();
        let lhs = base.reduce_mod_p(&frob_lift_apply(&base, &x));
        let rhs = modp.pow(&base.reduce_mod_p(&x), p);
        prop_assert_eq!(lhs, rhs);
        let plain = RelBase::new(p, m, d, FrobLiftSpec::standard()).unwrap();
        prop_assert_eq!(base.reduce_mod_p(&frob_lift_apply(&base, &x)), plain.reduce_mod_p(&frob_lift_apply(&plain, &x)));
        let k = base.constant(c[0]);
        prop_assert_eq!(frob_lift_apply(&base, &k), k);
    }

    #[test]
    fn phi_factors_through_sigma_and_substitution(f in small_field(), n in 1usize..20, seed: u64) {
        let s = SeriesRing::new(f, n).unwrap();
        let mut g = rng(seed);
        let a = s.random(&mut g);
        let b = s.random(&mut g);
        prop_assert_eq!(s.phi(&a).0, s.subst_u_to_up(&s.sigma(&a)).0);
        prop_assert_eq!(s.phi(&a).0, s.sigma(&s.subst_u_to_up(&a).0));
        prop_assert_eq!(s.mul(&a, &b), s.mul(&b, &a));
        let c = s.random(&mut g);
        prop_assert_eq!(s.mul(&a, &s.add(&b, &c)), s.add(&s.mul(&a, &b), &s.mul(&a, &c)));
        prop_assert_eq!(s.phi(&s.mul(&a, &b)).0, s.mul(&s.phi(&a).0, &s.phi(&b).0));
        prop_assert_eq!(s.sigma(&s.mul(&a, &b)), s.mul(&s.sigma(&a), &s.sigma(&b)));
    }

    #[test]
    fn laurent_inverse_round_trip(f in small_field(), n in 2usize..16, v in 0i64..3, seed: u64) {
        prop_assume!(n as i64 > v);
        let s = SeriesRing::new(f, n).unwrap();
        let a = s.shift(&s.random_unit(&mut rng(seed)), -v);
        let inv = s.inv(&a).unwrap();
        let one = s.mul(&a, &inv);
        prop_assert_eq!(one.prec(), n as i64 - v);
        prop_assert_eq!(one, s.one());
    }

    #[test]
    fn matrix_inverse_and_normality_of_k1(n in 1usize..5, trunc in 1usize..24, seed: u64) {
        let s = SeriesRing::new(Gf::prime(3).unwrap(), trunc).unwrap();
        let spec = GroupSpec::GL(n);
        let mut g = rng(seed);
        let m = random_group_element(&spec, &s, &mut g);
        let inv = mat_invert(&s, &m).unwrap();
        prop_assert!(inv.mul(&s, &m).is_identity(&s));
        let h = random_k1_element(&spec, &s, &mut g);
        prop_assert!(mat_is_in_k1(&s, &m.mul(&s, &h).mul(&s, &inv)).unwrap());
    }

    #[test]
    fn weyl_length_and_orders(idx in 0usize..48, jdx in 0usize..48, kind in 0usize..3) {
        let spec = [GroupSpec::GL(3), GroupSpec::GL(4), GroupSpec::GSp(6)][kind];
        let w = WeylGroup::of_group(&spec).unwrap();
        let (x, y) = (idx % w.size(), jdx % w.size());
        prop_assert_eq!(w.length(x), w.length(w.inverse(x)));
        prop_assert!(w.bruhat_leq(x, x) && w.bruhat_leq(w.identity(), x) && w.bruhat_leq(x, w.longest()));
        prop_assert_eq!(w.bruhat_leq(x, y), w.bruhat_leq(w.inverse(x), w.inverse(y)));
        let empty = JSubset::new(std::iter::empty());
        prop_assert_eq!(w.preceq(&empty, x, y).unwrap(), w.bruhat_leq(x, y));
        prop_assert!(w.length(w.mul(x, y)) <= w.length(x) + w.length(y));
    }

    #[test]
    fn zip_group_is_closed_and_acts(seed: u64, cfg in 0usize..3) {
        let (spec, chi) = eostrata_core::verify::standard_configs().remove(cfg);
        let f = Gf::new(2, 2).unwrap();
        let mut g = rng(seed);
        let z1 = random_zip_element(&spec, &chi, &f, &mut g);
        let z2 = random_zip_element(&spec, &chi, &f, &mut g);
        prop_assert!(zip_membership(&f, &z1.mul(&f, &z2), &chi));
        prop_assert!(zip_membership(&f, &z1.inverse(&f).unwrap(), &chi));
        let x = random_group_element(&spec, &f, &mut g);
        let lhs = zip_act(&f, &spec, &chi, &z1.mul(&f, &z2), &x).unwrap();
        let rhs = zip_act(&f, &spec, &chi, &z1, &zip_act(&f, &spec, &chi, &z2, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let both = parabolic_membership(&chi, &f, &x, Part::PPlus) && parabolic_membership(&chi, &f, &x, Part::PMinus);
        prop_assert_eq!(both, parabolic_membership(&chi, &f, &x, Part::Levi));
    }

    #[test]
    fn kplus_action_is_compatible(seed: u64) {
        let s = SeriesRing::new(Gf::prime(2).unwrap(), 8).unwrap();
        let spec = GroupSpec::GSp(4);
        let mut g = rng(seed);
        let mut elt = || KPlusElem {
            alpha: random_k1_element(&spec, &s, &mut g),
            beta: random_k1_element(&spec, &s, &mut g),
            gamma: random_group_element(&spec, &s, &mut g),
        };
        let (x, y) = (elt(), elt());
        let t = random_group_element(&spec, &s, &mut rng(seed ^ 1));
        let a = kplus_act(&s, &kplus_mul(&s, &x, &y).unwrap(), &t).unwrap();
        let b = kplus_act(&s, &x, &kplus_act(&s, &y, &t).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn smith_form_round_trip(seed: u64, n in 2usize..4, p in prop::sample::select(vec![2u64, 3])) {
        let s = SeriesRing::new(Gf::prime(p).unwrap(), 4 * p as usize + 2).unwrap();
        let w: Vec<i64> = (0..n).map(|i| i64::from(i == 0)).collect();
        let chi = Cochar::new(w).unwrap();
        let c = random_coset_elem(&GroupSpec::GL(n), &chi, &s, &mut rng(seed)).unwrap();
        let t = c.materialize(&s).unwrap();
        let snf = u_adic_snf(&s, &t).unwrap();
        prop_assert_eq!(snf.reassemble(&s), t);
        prop_assert_eq!(snf.valuations[0], p as i64);
    }

    #[test]
    fn omega_refactorization(seed: u64) {
        let (spec, chi) = eostrata_core::verify::standard_configs().remove(1);
        let f = Gf::prime(2).unwrap();
        let table = classify_orbits(&spec, &chi, &f).unwrap();
        let s = SeriesRing::new(f, 10).unwrap();
        let mut g = rng(seed);
        let c = random_coset_elem(&spec, &chi, &s, &mut g).unwrap();
        prop_assert!(omega_welldef_check(&s, &spec, &table, &c, &mut g).unwrap().ok());
    }

    #[test]
    fn window_identities(seed: u64) {
        prop_assert!(adapted_suite(4, seed).passed());
        prop_assert!(base_change_suite(4, seed).passed());
    }

    #[test]
    fn gluing_instances(seed: u64, p in prop::sample::select(vec![2u64, 3]), d in 2usize..5, gauge: bool) {
        let mode = if gauge { GluingMode::Gauge } else { GluingMode::LeftCongruent };
        prop_assert!(gluing_instance(p, 2, d, mode, &mut rng(seed)).unwrap());
    }

    #[test]
    fn psi_round_trip(seed: u64, r1 in 0usize..4) {
        let base = RelBase::new(3, 2, 3, FrobLiftSpec::new(vec![2])).unwrap();
        let frame = bkwin::FrameRing::new(base.clone(), 10).unwrap();
        let s = frame.series();
        let mut g = rng(seed);
        let psi = loop {
            let m = Matrix::from_fn(3, 3, |_, _| s.random(&mut g));
            if base.is_unit(&series::mat_constant_term(s, &m).unwrap().det(&base)) {
                break m;
            }
        };
        let w = window_from_psi(&frame, &psi, r1, 3 - r1).unwrap();
        prop_assert!(psi_from_window(&frame, &w).ring_eq(s, &psi));
    }
}
