//! Small integer helpers: divisors, the Möbius function, center counts.

/// Divisors of `n` in increasing order.
pub fn divisors(n: usize) -> Vec<usize> {
    assert!(n > 0, "divisors of zero");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn proper_divisors(n: usize) -> Vec<usize> {
    let mut d = divisors(n);
    d.pop();
    d
}

pub fn mobius(n: usize) -> i64 {
    assert!(n > 0, "mobius of zero");
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn mobius_sum(n: usize, term: impl Fn(usize) -> i128) -> usize {
    let s: i128 = divisors(n)
        .into_iter()
        .map(|d| mobius(n / d) as i128 * term(d))
        .sum();
    usize::try_from(s).expect("Möbius sum is a nonnegative count")
}

/// Number of centers of exact period `m` for `z^D + c`, i.e. `deg H_m`.
pub fn center_count(degree: u32, m: usize) -> usize {
    mobius_sum(m, |d| (degree as i128).pow(d as u32 - 1))
}

/// Number of points of exact period `n` for a degree-`D` polynomial map.
pub fn periodic_point_count(degree: u32, n: usize) -> usize {
    mobius_sum(n, |d| (degree as i128).pow(d as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_sorted() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(proper_divisors(9), vec![1, 3]);
    }

    #[test]
    fn mobius_values() {
        let expect = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1];
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(mobius(i + 1), e, "mu({})", i + 1);
        }
    }

    #[test]
    fn center_counts() {
        let d2: Vec<_> = (1..=6).map(|m| center_count(2, m)).collect();
        assert_eq!(d2, vec![1, 1, 3, 6, 15, 27]);
        assert_eq!(center_count(3, 1), 1);
        assert_eq!(center_count(3, 2), 2);
    }

    #[test]
    fn periodic_counts() {
        assert_eq!(periodic_point_count(2, 1), 2);
        assert_eq!(periodic_point_count(2, 2), 2);
        assert_eq!(periodic_point_count(2, 3), 6);
        assert_eq!(periodic_point_count(3, 2), 6);
    }
}
