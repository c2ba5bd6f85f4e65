use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::IntPoly;

/// Polynomial in ν whose coefficients are polynomials in c.
///
/// `nu_coeffs[k]` is the coefficient of `ν^k`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BivarPoly {
    nu_coeffs: Vec<IntPoly>,
}

impl BivarPoly {
    pub fn new(mut nu_coeffs: Vec<IntPoly>) -> Self {
        while nu_coeffs.last().is_some_and(IntPoly::is_zero) {
            nu_coeffs.pop();
        }
        BivarPoly { nu_coeffs }
    }

    pub fn nu_coeffs(&self) -> &[IntPoly] {
        &self.nu_coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.nu_coeffs.is_empty()
    }

    pub fn degree_nu(&self) -> Option<usize> {
        self.nu_coeffs.len().checked_sub(1)
    }

    /// Degree in c for generic ν.
    pub fn degree_c(&self) -> Option<usize> {
        self.nu_coeffs.iter().filter_map(IntPoly::degree).max()
    }

    /// Specializes ν to an integer, leaving a polynomial in c.
    pub fn eval_nu(&self, nu: &BigInt) -> IntPoly {
        let width = self.degree_c().map_or(0, |d| d + 1);
        let mut acc = vec![BigInt::zero(); width];
        let mut power = BigInt::one();
        for p in &self.nu_coeffs {
            if !power.is_zero() {
                for (a, c) in acc.iter_mut().zip(p.coeffs()) {
                    *a += c * &power;
                }
            }
            power *= nu;
        }
        IntPoly::new(acc)
    }

    /// Specializes c to an integer, leaving a polynomial in ν.
    pub fn eval_c(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.nu_coeffs.iter().map(|p| p.eval(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_both_ways() {
        // r = (c + 1) + c^2 ν
        let r = BivarPoly::new(vec![IntPoly::from_i64(&[1, 1]), IntPoly::from_i64(&[0, 0, 1])]);
        assert_eq!(r.degree_nu(), Some(1));
        assert_eq!(r.degree_c(), Some(2));
        assert_eq!(r.eval_nu(&BigInt::from(3)), IntPoly::from_i64(&[1, 1, 3]));
        assert_eq!(r.eval_nu(&BigInt::zero()), IntPoly::from_i64(&[1, 1]));
        assert_eq!(r.eval_c(&BigInt::from(2)), IntPoly::from_i64(&[3, 4]));
    }

    #[test]
    fn trailing_zero_coefficients_trimmed() {
        let r = BivarPoly::new(vec![IntPoly::one(), IntPoly::zero()]);
        assert_eq!(r.degree_nu(), Some(0));
        assert!(BivarPoly::new(vec![IntPoly::zero()]).is_zero());
    }
}
