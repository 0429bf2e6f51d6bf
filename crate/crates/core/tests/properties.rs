use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use arithpoly::arith::{int, rat, sigma_k, ArithFn, Rat};
use arithpoly::bounds::{majorant_eval, optimize_kappa, Grid, Majorant, MajorantKind, Variant};
use arithpoly::eta::{e4_reciprocal_coeffs, eisenstein_coeffs, eta_power_coeffs, eta_product_expansion, series_inverse};
use arithpoly::polyrec::{build_sequence, RationalPoly};
use arithpoly::zeros::{all_roots, isolate_real_roots, real_roots_report};

fn big(digits: &str) -> BigInt {
    digits.parse().unwrap()
}

fn monotone_h() -> impl Strategy<Value = ArithFn> {
    prop::collection::vec(0i64..4, 12).prop_map(|steps| {
        let mut acc = 1i64;
        let values = steps
            .into_iter()
            .map(|s| {
                let v = acc;
                acc += s;
                int(v)
            })
            .collect();
        ArithFn::custom("sample", values).unwrap()
    })
}

fn builtin() -> impl Strategy<Value = ArithFn> {
    prop_oneof![
        Just(ArithFn::one()),
        Just(ArithFn::id()),
        Just(ArithFn::sigma()),
        Just(ArithFn::sigma3()),
        Just(ArithFn::square()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_round_trip(a in "-?[1-9][0-9]{0,40}", b in "[1-9][0-9]{0,40}", c in "-?[1-9][0-9]{0,40}", d in "[1-9][0-9]{0,40}") {
        let x = Rat::new(big(&a), big(&b));
        let y = Rat::new(big(&c), big(&d));
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&(&x * &y) / &y, x);
    }

    #[test]
    fn sigma_k_multiplicative(m in 1u64..300, n in 1u64..300, k in 0u32..5) {
        prop_assume!(num_integer::gcd(m, n) == 1);
        prop_assert_eq!(sigma_k(m * n, k).unwrap(), sigma_k(m, k).unwrap() * sigma_k(n, k).unwrap());
    }

    #[test]
    fn degree_and_leading_coefficient(g in builtin(), h in monotone_h(), n in 0usize..12) {
        let seq = build_sequence(&g, &h, n).unwrap();
        let p = seq.get(n).unwrap();
        prop_assert_eq!(p.degree(), Some(n));
        let prod = (1..=n as u64).fold(Rat::one(), |acc, j| acc * h.eval(j).unwrap());
        prop_assert_eq!(p.leading(), Rat::one() / prod);
    }

    #[test]
    fn toy_roots_are_negated_h(h in monotone_h(), n in 1usize..10) {
        let seq = build_sequence(&ArithFn::one(), &h, n).unwrap();
        let rep = real_roots_report(seq.get(n).unwrap(), &rat(1, 1_000_000)).unwrap().unwrap();
        let mut want: Vec<Rat> = (0..n as u64).map(|j| -h.eval_h(j).unwrap()).collect();
        want.sort();
        let got: Vec<Rat> = rep.roots.iter().map(|r| r.re.clone()).collect();
        prop_assert_eq!(got, want);
        prop_assert!(rep.roots.iter().all(|r| r.rad.is_zero()));
    }

    #[test]
    fn root_count_equals_degree(coeffs in prop::collection::vec(-20i64..20, 2..14)) {
        let mut c = coeffs;
        if *c.last().unwrap() == 0 {
            *c.last_mut().unwrap() = 1;
        }
        let p = RationalPoly::from_ints(&c);
        let rep = all_roots(&p, 128, &rat(1, 1_000_000_000)).unwrap();
        prop_assert_eq!(rep.roots.len(), p.degree().unwrap());
        let real = isolate_real_roots(&p);
        for iv in &real {
            let hit = rep
                .roots
                .iter()
                .any(|r| r.im.abs() <= r.rad && &r.re + &r.rad >= iv.lo && &r.re - &r.rad <= iv.hi);
            prop_assert!(hit, "real root in {} not covered", iv);
        }
    }

    #[test]
    fn sign_law_beyond_threshold(n in 1usize..25, delta in 1i64..1000) {
        let seq = build_sequence(&ArithFn::sigma(), &ArithFn::id(), n).unwrap();
        let x = -(rat(119, 11) * int(n as i64 - 1) + rat(delta, 100));
        let v = seq.get(n).unwrap().eval(&x);
        let signed = if n % 2 == 0 { v } else { -v };
        prop_assert!(signed.is_positive());
    }

    #[test]
    fn eta_powers_match_product(r in -30i64..=30, n in 0usize..=30) {
        let t = eta_power_coeffs(r, n).unwrap();
        let direct = eta_product_expansion(r, n);
        prop_assert_eq!(t.values, direct.into_iter().map(Rat::from_integer).collect::<Vec<_>>());
    }

    #[test]
    fn majorants_are_nondecreasing(g in prop_oneof![Just(ArithFn::one()), Just(ArithFn::id()), Just(ArithFn::sigma()), Just(ArithFn::sigma3())], kind in prop_oneof![Just(MajorantKind::G1), Just(MajorantKind::G2)], j in 1i64..98) {
        let m = Majorant::preset(kind, &g).unwrap();
        let a = majorant_eval(&m, &rat(j, 100)).unwrap();
        let b = majorant_eval(&m, &rat(j + 1, 100)).unwrap();
        prop_assert!(a <= b);
    }
}

#[test]
fn integer_valued_sigma_polynomials() {
    let seq = build_sequence(&ArithFn::sigma(), &ArithFn::id(), 20).unwrap();
    let mut fact = BigInt::one();
    for n in 0..=20 {
        if n > 0 {
            fact *= n;
        }
        let p = seq.get(n).unwrap();
        assert!(p.coeffs().iter().all(|c| (c * Rat::from_integer(fact.clone())).is_integer()));
        for z in -24..=24 {
            assert!(p.eval(&int(z)).is_integer(), "n = {n}, z = {z}");
        }
    }
}

#[test]
fn reciprocal_matches_series_inverse() {
    let n = 60;
    let e4 = eisenstein_coeffs(4, n).unwrap();
    let inv = series_inverse(&e4.values, n).unwrap();
    let beta = e4_reciprocal_coeffs(n).unwrap();
    assert_eq!(inv, beta.values);
    for (m, b) in beta.values.iter().enumerate() {
        assert_eq!(b.is_positive(), m % 2 == 0);
    }
}

#[test]
fn b_never_worse_than_a() {
    let grid = Grid { denominator: 200, digits: 6 };
    for g in [ArithFn::one(), ArithFn::id(), ArithFn::sigma(), ArithFn::sigma3()] {
        let a = optimize_kappa(Variant::A, &Majorant::preset(MajorantKind::G1, &g).unwrap(), &grid).unwrap();
        let b = optimize_kappa(Variant::B, &Majorant::preset(MajorantKind::G2, &g).unwrap(), &grid).unwrap();
        assert!(b.kappa <= a.kappa, "{}: {} vs {}", g.name(), b.kappa, a.kappa);
    }
}

#[test]
fn recurrence_holds_for_custom_pairs() {
    let g = ArithFn::custom("g", vec![int(1), rat(-1, 2), int(3), int(0), rat(5, 7), int(2)]).unwrap();
    let h = ArithFn::custom("h", vec![int(1), rat(3, 2), int(2), int(2), int(7), int(9)]).unwrap();
    let seq = build_sequence(&g, &h, 6).unwrap();
    for n in 1..=6 {
        assert!(seq.check_recurrence(n).unwrap());
    }
}

#[test]
fn roots_inside_b_threshold() {
    for g in [ArithFn::id(), ArithFn::one()] {
        let (rep, _) = arithpoly::suites::zero_free_suite(&g, None, 60, 128, &rat(1, 1_000_000_000), 2).unwrap();
        let failed: Vec<_> = rep.checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{}: {failed:?}", g.name());
    }
}
