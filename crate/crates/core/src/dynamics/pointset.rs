use std::collections::HashMap;

use crate::C64;

/// Planar point set answering "is there a stored point within `tol`?"
/// through a uniform grid with cells much wider than `tol`.
pub(crate) struct PointSet {
    tol: f64,
    cell: f64,
    grid: HashMap<(i64, i64), Vec<C64>>,
    len: usize,
}

impl PointSet {
    pub fn new(tol: f64) -> Self {
        PointSet { tol, cell: (tol * 1e3).max(1e-12), grid: HashMap::new(), len: 0 }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    fn key(&self, z: C64) -> (i64, i64) {
        ((z.re / self.cell).floor() as i64, (z.im / self.cell).floor() as i64)
    }

    pub fn contains(&self, z: C64) -> bool {
        let (kx, ky) = self.key(z);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(v) = self.grid.get(&(kx + dx, ky + dy)) {
                    if v.iter().any(|w| (w - z).norm() <= self.tol) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Inserts `z` unless a stored point is within `tol`; reports insertion.
    pub fn insert(&mut self, z: C64) -> bool {
        if self.contains(z) {
            return false;
        }
        let k = self.key(z);
        self.grid.entry(k).or_default().push(z);
        self.len += 1;
        true
    }
}

/// Base-2 van der Corput sequence: 0, 1/2, 1/4, 3/4, 1/8, …
pub(crate) fn van_der_corput(i: u64) -> f64 {
    i.reverse_bits() as f64 / 2f64.powi(64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedup_across_cells() {
        let mut s = PointSet::new(1e-9);
        assert!(s.insert(C64::new(0.0, 0.0)));
        assert!(!s.insert(C64::new(5e-10, -5e-10)));
        assert!(s.insert(C64::new(2e-9, 0.0)));
        assert!(!s.insert(C64::new(-1e-6 + 1e-6, 0.0)));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn vdc_prefix() {
        let v: Vec<f64> = (0..4).map(van_der_corput).collect();
        assert_eq!(v, vec![0.0, 0.5, 0.25, 0.75]);
    }
}
