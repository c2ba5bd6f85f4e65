//! Polynomial root finding and root-set comparison.

use num_complex::Complex;
use num_traits::Zero;

use crate::dd::{cabs, to_c64, Real};
use crate::error::{Error, Result};
use crate::C64;

#[derive(Clone, Copy, Debug)]
pub struct AberthConfig {
    pub max_iter: usize,
    /// Accept a root when its Newton correction is at most
    /// `accept_tol · max(1, |z|)`.
    pub accept_tol: f64,
}

impl Default for AberthConfig {
    fn default() -> Self {
        AberthConfig { max_iter: 1000, accept_tol: 1e-10 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Root<T> {
    pub z: Complex<T>,
    /// Newton correction `|p(z)/p'(z)|` at the returned point.
    pub residual: f64,
}

/// `p(z)/p'(z)` with coefficients constant-term first. For `|z| > 1` the
/// reversed polynomial is evaluated at `1/z` to keep the Horner sums bounded.
pub fn newton_ratio<T: Real>(coeffs: &[Complex<T>], z: Complex<T>) -> Complex<T> {
    let n = coeffs.len() - 1;
    if cabs(z) <= T::one() {
        let mut p = Complex::<T>::zero();
        let mut dp = Complex::<T>::zero();
        for c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + *c;
        }
        p / dp
    } else {
        let w = Complex::<T>::new(T::one(), T::zero()) / z;
        let mut q = Complex::<T>::zero();
        let mut dq = Complex::<T>::zero();
        for c in coeffs.iter() {
            dq = dq * w + q;
            q = q * w + *c;
        }
        let nn = T::from_f64(n as f64);
        z * q / (q.scale(nn) - w * dq)
    }
}

/// Horner evaluation, constant term first.
pub fn eval_poly<T: Real>(coeffs: &[Complex<T>], z: Complex<T>) -> Complex<T> {
    coeffs.iter().rev().fold(Complex::zero(), |acc, c| acc * z + *c)
}

/// All roots of a polynomial by Aberth–Ehrlich simultaneous iteration
/// followed by Newton polishing. Roots come back sorted by `(re, im)`.
pub fn aberth<T: Real>(coeffs: &[Complex<T>], cfg: &AberthConfig) -> Result<Vec<Root<T>>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        return Err(Error::ZeroInput);
    }
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mags: Vec<f64> = coeffs.iter().map(|c| to_c64(*c).norm()).collect();
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    let work = &coeffs[zeros..];
    aberth_by(&mags, |z| newton_ratio(work, z), cfg)
}

/// Aberth iteration driven by a caller-supplied Newton ratio `p(z)/p'(z)`.
///
/// `magnitudes` are `|a_k|`, constant term first; they fix the degree, the
/// number of zero roots and the starting circle.
pub fn aberth_by<T: Real>(
    magnitudes: &[f64],
    ratio: impl Fn(Complex<T>) -> Complex<T>,
    cfg: &AberthConfig,
) -> Result<Vec<Root<T>>> {
    let n = magnitudes.len().saturating_sub(1);
    let zeros = magnitudes.iter().take_while(|&&a| a == 0.0).count();
    if n == 0 || zeros > n {
        return Ok(Vec::new());
    }
    let m = n - zeros;
    // Zero roots are split off so the starting radius is well defined.
    let radius = (magnitudes[zeros] / magnitudes[n]).powf(1.0 / m as f64);
    let radius = if radius.is_finite() && radius > 0.0 { radius } else { 1.0 };

    let z: Vec<Complex<T>> = (0..m)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / m as f64 + 0.4;
            let w = C64::from_polar(radius, t);
            Complex::new(T::from_f64(w.re), T::from_f64(w.im))
        })
        .collect();
    aberth_from(z, zeros, ratio, cfg)
}

/// Aberth iteration from explicit starting points for the nonzero roots;
/// `zeros` roots at the origin are appended to the result.
pub fn aberth_from<T: Real>(
    mut z: Vec<Complex<T>>,
    zeros: usize,
    ratio: impl Fn(Complex<T>) -> Complex<T>,
    cfg: &AberthConfig,
) -> Result<Vec<Root<T>>> {
    let m = z.len();
    let stop = 64.0 * T::EPSILON;
    let mut done = vec![false; m];
    for _ in 0..cfg.max_iter {
        let mut all_done = true;
        for i in 0..m {
            if done[i] {
                continue;
            }
            let r = ratio(z[i]);
            let mut s = Complex::<T>::zero();
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    s = s + Complex::<T>::new(T::one(), T::zero()) / (z[i] - *zj);
                }
            }
            let w = r / (Complex::new(T::one(), T::zero()) - r * s);
            z[i] = z[i] - w;
            let step = to_c64(w).norm();
            if step <= stop * to_c64(z[i]).norm().max(1e-300) || !step.is_finite() {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }

    let mut roots: Vec<Root<T>> = z.into_iter().map(|zi| polish_by(&ratio, zi, 3)).collect();
    roots.extend((0..zeros).map(|_| Root { z: Complex::zero(), residual: 0.0 }));
    sort_roots(&mut roots);

    let unconverged: Vec<usize> = roots
        .iter()
        .enumerate()
        .filter(|(_, r)| !(r.residual <= cfg.accept_tol * to_c64(r.z).norm().max(1.0)))
        .map(|(i, _)| i)
        .collect();
    if !unconverged.is_empty() {
        return Err(Error::NonConvergence {
            roots: roots.iter().map(|r| to_c64(r.z)).collect(),
            unconverged,
        });
    }
    Ok(roots)
}

/// A few Newton steps; keeps the best point seen.
pub fn newton_polish<T: Real>(coeffs: &[Complex<T>], z0: Complex<T>, steps: usize) -> Root<T> {
    polish_by(&|z| newton_ratio(coeffs, z), z0, steps)
}

fn polish_by<T: Real>(ratio: &impl Fn(Complex<T>) -> Complex<T>, z0: Complex<T>, steps: usize) -> Root<T> {
    let mut z = z0;
    let mut r = ratio(z);
    let mut best = Root { z, residual: to_c64(r).norm() };
    for _ in 0..steps {
        if !(best.residual > 0.0) {
            break;
        }
        z = z - r;
        r = ratio(z);
        let res = to_c64(r).norm();
        if res < best.residual {
            best = Root { z, residual: res };
        } else {
            break;
        }
    }
    if !best.residual.is_finite() {
        best.residual = f64::INFINITY;
    }
    best
}

pub fn sort_roots<T: Real>(roots: &mut [Root<T>]) {
    roots.sort_by(|a, b| cmp_c64(to_c64(a.z), to_c64(b.z)));
}

/// Lexicographic order on `(re, im)`; NaN sorts last.
pub fn cmp_c64(a: C64, b: C64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Expands `∏ (x − r_i)`, constant term first.
pub fn poly_from_roots(roots: &[C64]) -> Vec<C64> {
    let mut p = vec![C64::new(1.0, 0.0)];
    for &r in roots {
        p.push(C64::zero());
        for k in (1..p.len()).rev() {
            p[k] = p[k - 1] - r * p[k];
        }
        p[0] = -r * p[0];
    }
    p
}

/// Minimum-total-distance perfect matching between two equal-size point
/// sets; returns the largest distance among matched pairs.
pub fn matching_distance(a: &[C64], b: &[C64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "matching needs equal sizes, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Ok(0.0);
    }
    let cost: Vec<Vec<f64>> = a.iter().map(|x| b.iter().map(|y| (x - y).norm()).collect()).collect();
    let assign = hungarian(&cost);
    Ok(assign
        .iter()
        .enumerate()
        .map(|(i, &j)| cost[i][j])
        .fold(0.0, f64::max))
}

/// Square assignment problem; `result[i]` is the column matched to row `i`.
fn hungarian(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    let inf = f64::INFINITY;
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut out = vec![0; n];
    for j in 1..=n {
        out[p[j] - 1] = j - 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::{cdd, Dd};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn cubic_roots() {
        // (x − 1)(x + 2)(x − 3i)
        let roots = [c(1.0, 0.0), c(-2.0, 0.0), c(0.0, 3.0)];
        let p = poly_from_roots(&roots);
        let found = aberth(&p, &AberthConfig::default()).unwrap();
        let z: Vec<C64> = found.iter().map(|r| r.z).collect();
        assert!(matching_distance(&z, &roots).unwrap() < 1e-12);
        assert!(z.windows(2).all(|w| cmp_c64(w[0], w[1]).is_le()));
    }

    #[test]
    fn linear_and_zero_roots() {
        let p = [c(-0.5, 0.0), c(2.0, 0.0)];
        let r = aberth(&p, &AberthConfig::default()).unwrap();
        assert!((r[0].z - c(0.25, 0.0)).norm() < 1e-15);
        let q = [c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)];
        let r = aberth(&q, &AberthConfig::default()).unwrap();
        let z: Vec<C64> = r.iter().map(|r| r.z).collect();
        assert!(matching_distance(&z, &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap() < 1e-14);
    }

    #[test]
    fn wide_magnitude_spread() {
        let roots: Vec<C64> = (0..12).map(|k| C64::from_polar(4f64.powi(-k), 0.3 * k as f64)).collect();
        let p = poly_from_roots(&roots);
        let found = aberth(&p, &AberthConfig::default()).unwrap();
        for r in &roots {
            let best = found.iter().map(|f| (f.z - r).norm() / r.norm()).fold(f64::MAX, f64::min);
            assert!(best < 1e-8, "root {r} missed, rel err {best}");
        }
    }

    #[test]
    fn extended_precision_roots() {
        let roots = [c(0.1, 0.2), c(-0.7, 0.0), c(1.5, -0.25)];
        let p: Vec<_> = poly_from_roots(&roots).into_iter().map(cdd).collect();
        let found = aberth::<Dd>(&p, &AberthConfig { accept_tol: 1e-25, ..Default::default() }).unwrap();
        assert!(found.iter().all(|r| r.residual < 1e-25));
    }

    #[test]
    fn reversed_evaluation_consistent() {
        let p = [c(1.0, 0.0), c(3.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)];
        for z in [c(0.3, 0.1), c(2.0, -3.0)] {
            let direct = eval_poly(&p, z);
            let dp = [c(3.0, 0.0), c(4.0, 0.0), c(3.0, 0.0)];
            let expect = direct / eval_poly(&dp, z);
            assert!((newton_ratio(&p, z) - expect).norm() < 1e-14);
        }
    }

    #[test]
    fn hungarian_beats_greedy() {
        let a = [c(0.0, 0.0), c(1.0, 0.0)];
        let b = [c(1.1, 0.0), c(0.2, 0.0)];
        assert!((matching_distance(&a, &b).unwrap() - 0.2).abs() < 1e-15);
        assert!(matching_distance(&a, &b[..1]).is_err());
    }
}
