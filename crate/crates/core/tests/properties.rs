//! Property tests over random inputs.

mod oracles;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use zetadr::dr::{build_dr, inner_product, TestFn, Truncation};
use zetadr::exact;
use zetadr::family::{Family, FamilyParams};
use zetadr::numerics::{compensated_sum, HPReal};

fn rational() -> impl Strategy<Value = BigRational> {
    (-500i64..500, 1i64..60).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compensated_sum_is_permutation_stable(xs in prop::collection::vec(-1e6f64..1e6, 1..60), seed in any::<u64>()) {
        let d = 50;
        let vals: Vec<HPReal> = xs.iter().map(|x| HPReal::from_f64(*x, d)).collect();
        let mut perm = vals.clone();
        // deterministic shuffle from the seed
        let mut s = seed | 1;
        for i in (1..perm.len()).rev() {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            perm.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let a = compensated_sum(&vals);
        let b = compensated_sum(&perm);
        let total: f64 = xs.iter().map(|x| x.abs()).sum();
        let bound = 4.0 * 1e-49 * total.max(1.0);
        prop_assert!((&a - &b).abs().to_f64() <= bound);
    }

    #[test]
    fn bernoulli_polynomial_matches_oracle_and_reflects(n in 0usize..25, q in rational()) {
        let ob = oracles::bernoulli_plus(30);
        let v = exact::bernoulli_poly(n, &q).unwrap();
        prop_assert_eq!(&v, &oracles::bernoulli_poly(&ob, n, &q));
        let r = exact::bernoulli_poly(n, &(BigRational::from_integer(1.into()) - &q)).unwrap();
        prop_assert_eq!(r, if n % 2 == 0 { v } else { -v });
    }

    #[test]
    fn hurwitz_shift(m in 0usize..20, q in rational()) {
        // ζ(-m, q) - ζ(-m, q+1) = q^m
        let one = BigRational::from_integer(1.into());
        let a = exact::hurwitz_neg(m, &q).unwrap();
        let b = exact::hurwitz_neg(m, &(&q + &one)).unwrap();
        let mut p = one.clone();
        for _ in 0..m { p *= &q; }
        prop_assert_eq!(a - b, p);
    }

    #[test]
    fn rational_parse_round_trips(q in rational()) {
        prop_assert_eq!(exact::parse_rational(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn decimal_parse_round_trips(x in -1e12f64..1e12) {
        let v = HPReal::from_f64(x, 64);
        let back = HPReal::parse(&v.to_decimal(64), 64).unwrap();
        prop_assert!((&v - &back).abs() <= &v.abs() * &HPReal::pow10(-60, 64));
    }
}

#[test]
fn truncation_growth_stays_within_tail_bound() {
    let d = 64;
    let comb = build_dr(Family::Rzf, &FamilyParams::new(d)).unwrap();
    let mut prev: Option<(HPReal, HPReal)> = None;
    for cap in [40usize, 50, 60, 80] {
        let t = Truncation { geometric: cap, factorial: cap, tolerance: 1.0 };
        let r = inner_product(&comb, &TestFn::One, &t, 0).unwrap();
        if let Some((v, tail)) = &prev {
            assert!((&r.value.re - v).abs() <= *tail, "cap {cap}");
        }
        prev = Some((r.value.re, r.tail_bound));
    }
}

#[test]
fn value_side_precision_monotone() {
    // the same exact sum converted at p and 2p differs only below 10^-p
    let s = exact::alternating_factorial_sum(60, exact::zeta_neg).unwrap();
    let a = HPReal::from_ratio(&s, 64);
    let b = HPReal::from_ratio(&s, 128);
    assert!((&a.with_digits(128) - &b).abs() <= HPReal::pow10(-62, 128));
}
