use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use pf_spectra::poly::{exact_div, gcd, power_series_root, resultant, resultant_bivar, BivarPoly, IntPoly};
use proptest::prelude::*;

const COEFF: i64 = 1_000_000;

fn poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-COEFF..=COEFF, 0..=max_deg + 1).prop_map(|v| IntPoly::from_i64(&v))
}

/// Degree exactly in `lo..=hi`, nonzero leading coefficient.
fn poly_deg(lo: usize, hi: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    (lo..=hi)
        .prop_flat_map(move |d| (prop::collection::vec(-bound..=bound, d), (1..=bound), any::<bool>()))
        .prop_map(|(mut v, lead, neg)| {
            v.push(if neg { -lead } else { lead });
            IntPoly::from_i64(&v)
        })
}

fn monic(lo: usize, hi: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    (lo..=hi).prop_flat_map(move |d| prop::collection::vec(-bound..=bound, d)).prop_map(|mut v| {
        v.push(1);
        IntPoly::from_i64(&v)
    })
}

/// Determinant by fraction-free Bareiss elimination.
fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `det` of the Sylvester matrix of `a` and `b`.
fn sylvester_resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    let (m, n) = (a.deg(), b.deg());
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut r = vec![BigInt::zero(); size];
        for (j, c) in a.coeffs().iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    for i in 0..m {
        let mut r = vec![BigInt::zero(); size];
        for (j, c) in b.coeffs().iter().rev().enumerate() {
            r[i + j] = c.clone();
        }
        rows.push(r);
    }
    bareiss(rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in poly(8), b in poly(8), c in poly(8)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &IntPoly::zero(), a.clone());
        prop_assert_eq!(&a * &IntPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!((&a * &b).deg(), a.deg() + b.deg());
        }
    }

    #[test]
    fn exact_div_round_trip(a in poly(8), b in poly_deg(0, 6, COEFF)) {
        let prod = &a * &b;
        prop_assert_eq!(exact_div(&prod, &b).unwrap(), a);
    }

    #[test]
    fn exact_div_rejects_remainder(a in poly_deg(0, 5, 100), b in monic(1, 4, 100), r in 1i64..=100) {
        let p = &(&a * &b) + &IntPoly::from_i64(&[r]);
        prop_assert!(exact_div(&p, &b).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn resultant_matches_sylvester(a in poly_deg(1, 6, 1000), b in poly_deg(1, 6, 1000)) {
        prop_assert_eq!(resultant(&a, &b).unwrap(), sylvester_resultant(&a, &b));
    }

    #[test]
    fn resultant_antisymmetry(a in poly_deg(1, 6, 1000), b in poly_deg(1, 6, 1000)) {
        let ab = resultant(&a, &b).unwrap();
        let ba = resultant(&b, &a).unwrap();
        if (a.deg() * b.deg()) % 2 == 1 {
            prop_assert_eq!(ab, -ba);
        } else {
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn resultant_vanishes_on_common_factor(
        a in poly_deg(0, 4, 100),
        b in poly_deg(0, 4, 100),
        f in poly_deg(1, 3, 100),
    ) {
        let fa = &f * &a;
        let fb = &f * &b;
        prop_assert!(resultant(&fa, &fb).unwrap().is_zero());
    }

    #[test]
    fn resultant_nonzero_iff_coprime(a in poly_deg(1, 5, 20), b in poly_deg(1, 5, 20)) {
        let r = resultant(&a, &b).unwrap();
        let common = gcd(&a, &b).deg() > 0;
        prop_assert_eq!(r.is_zero(), common);
    }

    #[test]
    fn resultant_multiplicative(a in poly_deg(1, 4, 100), b in poly_deg(1, 4, 100), c in poly_deg(1, 4, 100)) {
        let lhs = resultant(&a, &(&b * &c)).unwrap();
        prop_assert_eq!(lhs, resultant(&a, &b).unwrap() * resultant(&a, &c).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bivariate_resultant_specializes(
        p in monic(1, 4, 20),
        r in prop::collection::vec(poly_deg(0, 3, 20), 1..=4),
        nus in prop::collection::vec(-50i64..=50, 5),
    ) {
        let r = BivarPoly::new(r);
        let s = resultant_bivar(&p, &r).unwrap();
        for nu in nus {
            let nu = BigInt::from(nu);
            let spec = r.eval_nu(&nu);
            let direct = if spec.is_zero() { BigInt::zero() } else { resultant(&p, &spec).unwrap() };
            prop_assert_eq!(s.eval(&nu), direct);
        }
    }

    #[test]
    fn power_series_root_recovers(
        tail in prop::collection::vec(-30i64..=30, 0..=6),
        last in 1i64..=30,
        neg in any::<bool>(),
        k in 2u32..=4,
    ) {
        let mut v = vec![1];
        v.extend(tail);
        v.push(if neg { -last } else { last });
        let u = IntPoly::from_i64(&v);
        let p = u.pow(k);
        prop_assert_eq!(power_series_root(&p, k).unwrap(), u.clone());
        if k % 2 == 1 {
            prop_assert_eq!(power_series_root(&-p.clone(), k).unwrap(), -u);
        }
    }

    #[test]
    fn power_series_root_rejects_non_powers(u in monic(1, 4, 10), k in 2u32..=4) {
        let mut coeffs: Vec<BigInt> = u.pow(k).coeffs().to_vec();
        coeffs[0] = BigInt::one();
        coeffs[1] += 1;
        let p = IntPoly::new(coeffs);
        if let Ok(root) = power_series_root(&p, k) {
            prop_assert_eq!(root.pow(k), p);
        }
    }
}

#[test]
fn bareiss_oracle_sanity() {
    let a = IntPoly::from_i64(&[-2, 0, 1]);
    let b = IntPoly::from_i64(&[1, 1, 0, 1]);
    assert_eq!(sylvester_resultant(&a, &b), BigInt::from(-17));
    let big = BigInt::from(10).pow(30);
    let c = IntPoly::new(vec![big.clone(), BigInt::one()]);
    let d = IntPoly::from_i64(&[0, 1]);
    assert_eq!(resultant(&c, &d).unwrap().abs(), big);
}
