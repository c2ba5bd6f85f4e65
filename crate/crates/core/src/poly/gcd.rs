use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{prem, IntPoly};

const PRIMES: [u64; 4] = [2_147_483_647, 2_147_483_629, 2_147_483_587, 2_147_483_579];

/// Primitive gcd with positive leading coefficient.
///
/// `gcd(p, 0)` is the primitive part of `p`; `gcd(0, 0)` is zero.
pub fn gcd(p: &IntPoly, q: &IntPoly) -> IntPoly {
    if q.is_zero() {
        return p.primitive_part().normalize_sign();
    }
    if p.is_zero() {
        return q.primitive_part().normalize_sign();
    }
    if p.deg() == 0 || q.deg() == 0 || coprime_mod_prime(p, q) {
        return IntPoly::one();
    }
    let (mut a, mut b) = if p.deg() >= q.deg() {
        (p.primitive_part(), q.primitive_part())
    } else {
        (q.primitive_part(), p.primitive_part())
    };
    loop {
        let r = prem(&a, &b).expect("b is nonzero");
        if r.is_zero() {
            return b.normalize_sign();
        }
        if r.deg() == 0 {
            return IntPoly::one();
        }
        a = b;
        b = r.primitive_part();
    }
}

/// True when the images modulo a prime not dividing either leading
/// coefficient are coprime, which forces the integer gcd to be 1.
fn coprime_mod_prime(p: &IntPoly, q: &IntPoly) -> bool {
    for &m in &PRIMES {
        let big = BigInt::from(m);
        let lp = p.leading().unwrap().mod_floor(&big);
        let lq = q.leading().unwrap().mod_floor(&big);
        if lp.is_zero() || lq.is_zero() {
            continue;
        }
        let a = reduce(p, &big);
        let b = reduce(q, &big);
        return gcd_degree_mod(a, b, m) == 0;
    }
    false
}

fn reduce(p: &IntPoly, m: &BigInt) -> Vec<u64> {
    p.coeffs()
        .iter()
        .map(|c| c.mod_floor(m).to_u64().unwrap())
        .collect()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut e, mut base, mut acc) = (m - 2, a % m, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, m: u64) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), m);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let f = (*a.last().unwrap() as u128 * inv as u128 % m as u128) as u64;
            for (i, &c) in b.iter().enumerate() {
                let sub = (f as u128 * c as u128 % m as u128) as u64;
                a[i + shift] = (a[i + shift] + m - sub) % m;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn examples() {
        assert_eq!(gcd(&p(&[0, 1, 1]), &p(&[0, 1])), p(&[0, 1]));
        assert_eq!(gcd(&p(&[4, -6, 2]), &IntPoly::zero()), p(&[2, -3, 1]));
        assert_eq!(gcd(&p(&[-4, 6, -2]), &IntPoly::zero()), p(&[2, -3, 1]));
        assert!(gcd(&IntPoly::zero(), &IntPoly::zero()).is_zero());
        let u = p(&[1, 3, 2, 1]);
        assert_eq!(gcd(&u, &u.derivative()), IntPoly::one());
    }

    #[test]
    fn shared_factor_recovered() {
        let f = p(&[3, -1, 2]);
        let a = &f * &p(&[1, 1]);
        let b = &(&f * &p(&[5, 0, 1])).scale(&BigInt::from(-6));
        assert_eq!(gcd(&a, b), f);
    }

    #[test]
    fn modular_path_agrees_with_prs() {
        let a = p(&[1, 2, 3, 4, 5]);
        let b = p(&[7, 0, -1, 1]);
        assert_eq!(gcd_degree_mod(reduce(&a, &BigInt::from(PRIMES[0])), reduce(&b, &BigInt::from(PRIMES[0])), PRIMES[0]), 0);
        assert_eq!(gcd(&a, &b), IntPoly::one());
        let sq = &a * &a;
        assert_eq!(gcd(&sq, &sq.derivative()), a);
    }
}
