//! Newton ratios for iterated polynomials far outside the filled Julia set
//! or the connectedness locus, where `G_m` itself overflows.
//!
//! Values are carried as `a·2^e` with `e ≥ 0` and `|a|` renormalized into a
//! safe range, so only the ratio `F/F'` is ever formed explicitly.

use crate::C64;

#[derive(Clone, Copy, Debug)]
pub(crate) enum Target {
    /// `F(c) = G_m(c)`, derivative in c.
    Center,
    /// `F(z) = f_c^n(z) − z`, derivative in z.
    Cycle(C64),
}

const RENORM: f64 = 1e10;

#[inline]
fn pow2(e: i64) -> f64 {
    if e > 1100 {
        f64::INFINITY
    } else if e < -1100 {
        0.0
    } else {
        2f64.powi(e as i32)
    }
}

/// `F(x)/F'(x)` for `n` iterations of `z^D + c`, or `None` when not finite.
pub(crate) fn iterate_ratio(degree: u32, n: usize, target: Target, x: C64) -> Option<C64> {
    let d = degree as i64;
    let df = degree as f64;
    let center = matches!(target, Target::Center);
    let (c, mut a, mut b) = match target {
        Target::Center => (x, C64::new(0.0, 0.0), C64::new(0.0, 0.0)),
        Target::Cycle(c) => (c, x, C64::new(1.0, 0.0)),
    };
    // Plain iteration until the values get large, then hand the state over
    // to the scaled loop with zero exponents.
    let mut done = 0;
    while done < n {
        if a.re.abs().max(a.im.abs()).max(b.re.abs().max(b.im.abs())) > RENORM {
            break;
        }
        let mut ad1 = a;
        for _ in 2..degree {
            ad1 *= a;
        }
        b = ad1 * b * df;
        if center {
            b.re += 1.0;
        }
        a = ad1 * a + c;
        done += 1;
    }
    // Exponents e, f and the matching factors 2^-e, 2^-f.
    let (mut e, mut f) = (0i64, 0i64);
    let (mut se, mut sf) = (1.0f64, 1.0f64);
    for _ in done..n {
        let mut ad1 = a;
        for _ in 2..degree {
            ad1 *= a;
        }
        b = ad1 * b * df;
        // f ← (D−1)e + f
        f += (d - 1) * e;
        if e != 0 {
            sf *= se.powi(degree as i32 - 1);
        }
        if center {
            b.re += sf;
        }
        a = ad1 * a;
        if e != 0 {
            e *= d;
            se = se.powi(degree as i32);
        }
        a += c * se;
        if a.re.abs().max(a.im.abs()) > RENORM {
            let k = a.re.abs().max(a.im.abs()).log2().floor() as i64;
            let p = pow2(-k);
            a *= p;
            se *= p;
            e += k;
        }
        if b.re.abs().max(b.im.abs()) > RENORM {
            let k = b.re.abs().max(b.im.abs()).log2().floor() as i64;
            let p = pow2(-k);
            b *= p;
            sf *= p;
            f += k;
        }
    }
    let (num, den) = if center { (a, b) } else { (a - x * se, b - sf) };
    let r = num / den * pow2(e - f);
    (r.re.is_finite() && r.im.is_finite()).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::eval_gm;

    #[test]
    fn matches_direct_ratio_inside() {
        let c = C64::new(-0.3, 0.6);
        let (g, dg) = eval_gm(2, 6, c).unwrap();
        let r = iterate_ratio(2, 6, Target::Center, c).unwrap();
        assert!((r - g / dg).norm() < 1e-13 * (g / dg).norm().max(1.0));
    }

    #[test]
    fn outside_matches_unscaled_ratio() {
        let c = C64::new(2.2, 0.1);
        let (mut g, mut dg) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        for _ in 0..9 {
            dg = g * dg * 2.0 + 1.0;
            g = g * g + c;
        }
        let r = iterate_ratio(2, 9, Target::Center, c).unwrap();
        assert!((r - g / dg).norm() < 1e-12 * (g / dg).norm());
        let far = iterate_ratio(2, 40, Target::Center, c).unwrap();
        assert!(far.norm() > 0.0 && far.norm() < 1e-9);
    }

    #[test]
    fn cycle_ratio_matches_direct() {
        let c = C64::new(-1.0, 0.1);
        let z = C64::new(0.4, -0.2);
        let (mut g, mut dg) = (z, C64::new(1.0, 0.0));
        for _ in 0..3 {
            dg = dg * g * 2.0;
            g = g * g + c;
        }
        let direct = (g - z) / (dg - 1.0);
        let r = iterate_ratio(2, 3, Target::Cycle(c), z).unwrap();
        assert!((r - direct).norm() < 1e-13);
    }
}
