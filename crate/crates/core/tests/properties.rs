use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skeinfill::laurent::rat;
use skeinfill::oracle::qt_mult_pairs;
use skeinfill::report::fill_with_steps;
use skeinfill::selftest::{random_element, random_laurent, random_matrix};
use skeinfill::torus::fg_mult_pairs;
use skeinfill::{
    corank_at_order, cyclotomic, cyclotomic_orders, fg_mult, lp_gcd, multicurve_to_fg, smith_normal_form, unknot,
    FillOptions, LaurentPoly, Matrix, PairClass, Slope, TorusElement,
};

fn lp_strategy() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -5i64..=5), 0..5).prop_map(|t| {
        let pairs: Vec<(i64, i64)> = t;
        LaurentPoly::from_ints(&pairs)
    })
}

fn element(seed: u64) -> TorusElement {
    random_element(&mut ChaCha8Rng::seed_from_u64(seed), 3, 5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in lp_strategy(), b in lp_strategy(), c in lp_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, LaurentPoly::zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn gcd_divides_both(a in lp_strategy(), b in lp_strategy(), c in lp_strategy()) {
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let (x, y) = (&a * &c, &b * &c);
        let g = lp_gcd(&x, &y).unwrap();
        prop_assert!(g.is_canonical());
        prop_assert!(g.divides(&x) && g.divides(&y));
        prop_assert!(c.divides(&g));
    }

    #[test]
    fn canonical_is_idempotent(a in lp_strategy(), k in -6i64..=6, n in 1i64..=7) {
        let c = a.canonical();
        prop_assert_eq!(c.canonical(), c.clone());
        // multiplying by a unit does not move the canonical associate
        prop_assert_eq!(a.shift(k).scale(&rat(-n, 3)).canonical(), c);
    }

    #[test]
    fn fg_associative(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (a, b, c) = (element(s1), element(s2), element(s3));
        prop_assert_eq!(fg_mult(&fg_mult(&a, &b), &c), fg_mult(&a, &fg_mult(&b, &c)));
    }

    #[test]
    fn quantum_torus_agrees(a in (-25i64..=25, -25i64..=25), b in (-25i64..=25, -25i64..=25)) {
        let (a, b) = (PairClass::new(a.0, a.1), PairClass::new(b.0, b.1));
        prop_assert_eq!(qt_mult_pairs(a, b).unwrap(), fg_mult_pairs(a, b));
    }

    #[test]
    fn empty_class_acts_as_two(s in any::<u64>()) {
        let e = element(s);
        let two = LaurentPoly::from_int(2);
        prop_assert_eq!(fg_mult(&TorusElement::basis(0, 0), &e), e.scale(&two));
        prop_assert_eq!(fg_mult(&e, &TorusElement::basis(0, 0)), e.scale(&two));
    }

    #[test]
    fn multicurve_is_a_power(p in -4i64..=4, q in -4i64..=4, n in 0usize..=5) {
        prop_assume!(num_integer::Integer::gcd(&p, &q) == 1);
        let mut power = TorusElement::empty_link();
        for _ in 0..n {
            power = fg_mult(&power, &TorusElement::basis(p, q));
        }
        prop_assert_eq!(multicurve_to_fg(p, q, n).unwrap(), power);
    }

    #[test]
    fn row_units_leave_factors_alone(seed in any::<u64>(), k in -5i64..=5, c in 1i64..=9, row in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix(&mut rng, 4, 3);
        let unit = LaurentPoly::a_pow(k).scale(&rat(c, 2));
        let rows: Vec<Vec<LaurentPoly>> = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .map(|e| if i == row { e * &unit } else { e.clone() })
                    .collect()
            })
            .collect();
        let scaled = Matrix::from_rows(rows, m.cols());
        prop_assert_eq!(smith_normal_form(&m, false).factors, smith_normal_form(&scaled, false).factors);
    }

    #[test]
    fn random_laurent_is_nonzero(seed in any::<u64>()) {
        let p = random_laurent(&mut ChaCha8Rng::seed_from_u64(seed), 4);
        prop_assert!(!p.is_zero() && p.span().unwrap() <= 4);
    }
}

#[test]
fn cyclotomic_products() {
    for m in 1..=30u64 {
        let mut prod = LaurentPoly::one();
        for d in (1..=m).filter(|d| m % d == 0) {
            prod = &prod * &cyclotomic(d);
        }
        let want = LaurentPoly::from_ints(&[(m as i64, 1), (0, -1)]);
        assert_eq!(prod, want, "prod of Phi_d over d | {m}");
        assert_eq!(cyclotomic_orders(&cyclotomic(m)).unwrap(), vec![(m, 1)]);
    }
}

#[test]
fn specialization_matches_direct_rank() {
    let u = unknot();
    for (p, q) in [(2, 1), (3, 1), (5, 2), (6, 1), (7, 3)] {
        let (report, steps) = fill_with_steps(&u, Slope::new(p, q).unwrap(), FillOptions::default()).unwrap();
        let m = &steps.last().unwrap().matrix;
        for order in [2u64, 6, 10, 14, 18] {
            if report.inconclusive_orders.contains(&order) {
                continue;
            }
            let jump = report.torsion_orders.iter().find(|t| t.order == order).map_or(0, |t| t.jump);
            assert_eq!(
                corank_at_order(m, order),
                report.generic_dimension + jump,
                "slope {p}/{q} at order {order}"
            );
        }
    }
}
