mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use plurilab::bounds::{alpha_of, beta_sequence, condition_iv, condition_v, min_birational_m, refine_xi, Scenario};
use plurilab::rational::{self, int, ratio, Rational};
use plurilab::wps::{catalog, monomial_counts};
use plurilab::{infer_basket, Basket, BasketSingularity, InferenceProblem, PluriData};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn point(r_max: u32) -> impl Strategy<Value = BasketSingularity> {
    (2..=r_max)
        .prop_flat_map(|r| (1..r, Just(r)))
        .prop_filter("coprime", |(b, r)| b.gcd(r) == 1)
        .prop_map(|(b, r)| BasketSingularity::new(b as i64, r as i64).unwrap())
}

fn basket(r_max: u32, size_max: usize) -> impl Strategy<Value = Basket> {
    prop::collection::vec(point(r_max), 0..=size_max).prop_map(Basket::from_points)
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..2000, 1i64..500).prop_map(|(n, d)| ratio(n, d))
}

fn scenario() -> impl Strategy<Value = Scenario> {
    (2i64..=6, 1i64..=3, 2i64..=12, 2i64..=4, any::<bool>()).prop_map(|(m0, p, k, g, flags)| {
        let sc = Scenario::new(m0, p, ratio(1, k), g, m0 + 2).unwrap();
        if flags {
            sc.even_nonhyperelliptic()
        } else {
            sc
        }
    })
}

proptest! {
    #[test]
    fn conjugation_symmetry(q in point(100), m in 2i64..300) {
        prop_assert_eq!(q.correction(m).unwrap(), q.conjugate().correction(m).unwrap());
    }

    #[test]
    fn periodicity_step(q in point(100), m in 2i64..300) {
        let r = q.r() as i64;
        let step = q.correction(m + r).unwrap() - q.correction(m).unwrap();
        prop_assert_eq!(step, ratio(r * r - 1, 12));
    }

    #[test]
    fn corrections_are_nonnegative_and_monotone(q in point(100), m in 2i64..300) {
        let a = q.correction(m).unwrap();
        prop_assert!(a >= int(0));
        prop_assert!(q.correction(m + 1).unwrap() >= a);
    }

    #[test]
    fn chi_zero_chain(b in basket(40, 8), k3 in positive_rational()) {
        let d = PluriData::new(0, k3, b).unwrap();
        let p: Vec<Rational> = (2..=5).map(|m| d.plurigenus(m).unwrap()).collect();
        prop_assert!(p[0] > int(0));
        prop_assert!(p.windows(2).all(|w| w[1] > w[0]), "{:?}", p);
    }

    #[test]
    fn negative_chi_forces_p2_above_3(b in basket(40, 8), k3 in positive_rational(), chi in -10i64..=-1) {
        let d = PluriData::new(chi, k3, b).unwrap();
        prop_assert!(d.plurigenus(2).unwrap() > int(3));
    }

    #[test]
    fn raw_counts_match_enumeration(w in prop::array::uniform5(1u32..=7)) {
        let n_max = 40usize;
        let counts = monomial_counts(&w, n_max);
        let mut brute = vec![0u64; n_max + 1];
        for e0 in 0..=n_max / w[0] as usize {
            for e1 in 0..=n_max / w[1] as usize {
                for e2 in 0..=n_max / w[2] as usize {
                    for e3 in 0..=n_max / w[3] as usize {
                        let base = e0 * w[0] as usize + e1 * w[1] as usize + e2 * w[2] as usize + e3 * w[3] as usize;
                        let mut n = base;
                        while n <= n_max {
                            brute[n] += 1;
                            n += w[4] as usize;
                        }
                    }
                }
            }
        }
        for n in 0..=n_max {
            prop_assert_eq!(&counts[n], &BigInt::from(brute[n]));
        }
    }

    #[test]
    fn inference_output_is_normalized(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = common::consistent_data(&mut rng, 12, 5, 10);
        let problem = InferenceProblem::new(common::sequence(&data, 10), Some(data.chi), Some(data.k3.clone()))
            .with_bounds(12, 5);
        let first = infer_basket(&problem);
        prop_assert_eq!(&first, &infer_basket(&problem));
        if let Ok(res) = first {
            prop_assert!(res.basket.points().all(|q| q.b() <= q.r() - q.b()));
            for m in 2..=10 {
                prop_assert_eq!(res.basket.correction_sum(m).unwrap(), data.basket.correction_sum(m).unwrap());
            }
        }
    }

    #[test]
    fn refine_never_decreases(sc in scenario(), xi in positive_rational(), dm in 2i64..40) {
        let m = sc.m0 + dm;
        prop_assert!(refine_xi(&sc, m, &xi) >= xi);
    }

    #[test]
    fn alpha_increases_in_m_and_xi(sc in scenario(), xi in positive_rational(), dm in 2i64..40) {
        let m = sc.m0 + dm;
        if rational::is_positive(&sc.coefficient(m)) {
            let bigger = &xi + ratio(1, 97);
            prop_assert!(alpha_of(&sc, m, &bigger) > alpha_of(&sc, m, &xi));
            prop_assert!(alpha_of(&sc, m + 1, &xi) > alpha_of(&sc, m, &xi));
        }
    }

    #[test]
    fn saturation_is_a_fixed_point(sc in scenario()) {
        let m_hi = 8 * sc.m0;
        let res = min_birational_m(&sc, m_hi).unwrap();
        prop_assert!(res.replays(&sc));
        for m in sc.m0 + 2..=m_hi {
            prop_assert_eq!(refine_xi(&sc, m, &res.xi_final), res.xi_final.clone());
        }
    }

    #[test]
    fn condition_ordering(sc in scenario(), a in positive_rational(), b in positive_rational(), pos in any::<bool>()) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if hi > int(2) && condition_v(&sc, &hi, pos) {
            prop_assert!(condition_iv(&sc, &hi, pos));
        }
        if condition_v(&sc, &lo, pos) {
            prop_assert!(condition_v(&sc, &hi, pos));
        }
    }

    #[test]
    fn xi_above_one_third_fires_at_14(excess in positive_rational(), g in 2i64..=4) {
        let sc = Scenario::new(3, 1, ratio(1, 3), g, 8).unwrap();
        let xi = ratio(1, 3) + excess;
        prop_assert!(alpha_of(&sc, 14, &xi) > int(2));
    }

    #[test]
    fn beta_is_increasing_and_bounded(m0 in 1i64..=12, p in 1i64..=6, t0 in 1i64..=5) {
        let seq = beta_sequence(m0, p, t0, 200).unwrap();
        prop_assert!(seq.is_strictly_increasing());
        prop_assert!(seq.terms().last().unwrap() < &seq.limit());
    }
}

#[test]
fn catalog_plurigenera_are_integral() {
    for (x, chi, b) in
        [(catalog::x28(), 0, "1/2,1/3,1/5"), (catalog::x16(), -1, "2*1/2,1/3"), (catalog::x22(), 0, "5*1/2,1/3,1/4")]
    {
        let d = PluriData::new(chi, x.k3().unwrap(), b.parse().unwrap()).unwrap();
        for m in 2..=100 {
            let p = d.plurigenus(m).unwrap();
            assert!(rational::is_integral(&p) && p >= int(0), "{x} m = {m}");
            assert_eq!(Rational::from_integer(x.plurigenus(m).unwrap()), p);
        }
    }
}

#[test]
fn volume_asymptotics() {
    for x in [catalog::x28(), catalog::x16(), catalog::x22()] {
        let k3 = x.k3().unwrap();
        let m = 1000i64;
        let ratio6 = Rational::from_integer(x.plurigenus(m).unwrap() * 6) / int(m * m * m);
        let gap = if ratio6 > k3 { &ratio6 - &k3 } else { &k3 - &ratio6 };
        assert!(gap < &k3 / int(10), "{x}");
    }
}
