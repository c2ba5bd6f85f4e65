//! Floating-point kernel for `f_c(z) = z^D + c`: critical orbits, centers,
//! periodic cycles and their multipliers.

mod centers;
mod cycles;
mod pointset;
mod scaled;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::dd::{cabs, Real};
use crate::error::{Error, Result};

pub use centers::{escape_bound_check, find_centers, CenterConfig, CenterRecord};
pub(crate) use centers::center_from_start;
pub use cycles::{find_cycles, CycleConfig, CycleRecord};
pub(crate) use pointset::{van_der_corput, PointSet};
pub(crate) use scaled::{iterate_ratio, Target};

/// Escape radius for the `eval_gm` iteration.
pub const ESCAPE_BOUND: f64 = 4.0;

/// `z^k` by repeated squaring.
pub fn cpowi<T: Real>(z: Complex<T>, k: u32) -> Complex<T> {
    let mut acc = Complex::<T>::one();
    let mut base = z;
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base;
        }
        k >>= 1;
        if k > 0 {
            base = base * base;
        }
    }
    acc
}

/// `(G_m(c), G'_m(c))` from `g ← g^D + c`, `g' ← D g^(D−1) g' + 1`.
pub fn eval_gm<T: Real>(degree: u32, m: usize, c: Complex<T>) -> Result<(Complex<T>, Complex<T>)> {
    let dd = T::from_f64(degree as f64);
    let mut g = Complex::<T>::zero();
    let mut dg = Complex::<T>::zero();
    for _ in 0..m {
        let gd1 = cpowi(g, degree - 1);
        dg = (gd1 * dg).scale(dd) + Complex::one();
        g = gd1 * g + c;
        if !(cabs(g).to_f64() <= ESCAPE_BOUND) {
            return Err(Error::Overflow);
        }
    }
    Ok((g, dg))
}

/// Critical-orbit value `G_m(c)` without the escape check.
pub fn orbit_value<T: Real>(degree: u32, m: usize, c: Complex<T>) -> Complex<T> {
    let mut g = Complex::<T>::zero();
    for _ in 0..m {
        g = cpowi(g, degree) + c;
    }
    g
}

/// Bound `2^(1/(D−1))` on `|c|` over the connectedness locus and on `|z|`
/// over filled Julia sets of its members.
pub fn escape_radius(degree: u32) -> f64 {
    2f64.powf(1.0 / (degree as f64 - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Dd, C64};

    #[test]
    fn eval_examples() {
        let (g, dg) = eval_gm(2, 2, C64::new(-1.0, 0.0)).unwrap();
        assert_eq!(g, C64::new(0.0, 0.0));
        assert_eq!(dg, C64::new(-1.0, 0.0));
        let (g, dg) = eval_gm(2, 1, C64::new(0.0, 0.0)).unwrap();
        assert_eq!((g, dg), (C64::new(0.0, 0.0), C64::new(1.0, 0.0)));
        let (g, _) = eval_gm(2, 3, C64::new(-1.7548777, 0.0)).unwrap();
        assert!(g.norm() < 1e-6);
        assert!(matches!(eval_gm(2, 3, C64::new(3.0, 0.0)), Err(Error::Overflow)));
    }

    #[test]
    fn extended_matches_baseline() {
        let c = C64::new(0.1, 0.15);
        let (g, dg) = eval_gm(3, 5, c).unwrap();
        let cd = crate::dd::cdd(c);
        let (gd, dgd) = eval_gm::<Dd>(3, 5, cd).unwrap();
        assert!((crate::dd::to_c64(gd) - g).norm() < 1e-12);
        assert!((crate::dd::to_c64(dgd) - dg).norm() < 1e-12);
    }

    #[test]
    fn power() {
        let z = C64::new(0.5, -1.25);
        assert!((cpowi(z, 5) - z * z * z * z * z).norm() < 1e-14);
        assert_eq!(cpowi(z, 0), C64::new(1.0, 0.0));
    }
}
