//! Canonical quantization of floating-point values.
//!
//! Group elements are hashed by quantized keys. Rounding each entry to a
//! fixed grid alone is not stable: two float computations of the same real
//! value can straddle a grid boundary. Instead a [`Quantizer`] maintains a
//! dictionary of representative values; an incoming entry snaps to the
//! nearest representative within `eps` and takes its grid index as key.
//! Representatives are required to stay `min_gap` apart, so a snap is never
//! ambiguous; a new value closer than `min_gap` to an existing one (but
//! outside `eps`) aborts with a tolerance fault rather than guessing.

use crate::{Error, Result};

/// Grid resolution for canonical keys (2^-32).
pub const KEY_GRID: f64 = 4294967296.0;

/// Snap tolerance: keys are equal iff entries agree to within this.
pub const EPS_KEY: f64 = 2e-9;

/// Minimum separation enforced between distinct representative values.
pub const MIN_VALUE_GAP: f64 = 1e-6;

/// Dictionary of snapped representative values.
#[derive(Debug, Clone)]
pub struct Quantizer {
    eps: f64,
    min_gap: f64,
    /// Sorted representative values.
    values: Vec<f64>,
    /// Grid index of each representative, parallel to `values`.
    keys: Vec<i64>,
}

impl Quantizer {
    pub fn new(eps: f64, min_gap: f64) -> Self {
        Quantizer {
            eps,
            min_gap,
            values: Vec::new(),
            keys: Vec::new(),
        }
    }

    /// Quantizer tuned for orthogonal matrix entries.
    pub fn for_matrix_entries() -> Self {
        Quantizer::new(EPS_KEY, MIN_VALUE_GAP)
    }

    fn nearest(&self, x: f64) -> Option<(usize, f64)> {
        if self.values.is_empty() {
            return None;
        }
        let i = self.values.partition_point(|v| *v < x);
        let mut best: Option<(usize, f64)> = None;
        for j in [i.wrapping_sub(1), i] {
            if let Some(v) = self.values.get(j) {
                let d = (x - v).abs();
                if best.is_none_or(|(_, bd)| d < bd) {
                    best = Some((j, d));
                }
            }
        }
        best
    }

    /// Snaps `x`, inserting a new representative when none is close.
    pub fn key_insert(&mut self, x: f64) -> Result<i64> {
        match self.nearest(x) {
            Some((j, d)) if d <= self.eps => Ok(self.keys[j]),
            Some((_, d)) if d < self.min_gap => Err(Error::Tolerance {
                what: format!("value {x:.17e} falls in the dead zone of the key dictionary"),
                deviation: d,
            }),
            _ => {
                let key = (x * KEY_GRID).round() as i64;
                let i = self.values.partition_point(|v| *v < x);
                self.values.insert(i, x);
                self.keys.insert(i, key);
                Ok(key)
            }
        }
    }

    /// Snaps `x` against the existing dictionary only.
    pub fn key_lookup(&self, x: f64) -> Option<i64> {
        match self.nearest(x) {
            Some((j, d)) if d <= self.eps => Some(self.keys[j]),
            _ => None,
        }
    }

    pub fn key_insert_slice(&mut self, xs: &[f64]) -> Result<Vec<i64>> {
        xs.iter().map(|x| self.key_insert(*x)).collect()
    }

    pub fn key_lookup_slice(&self, xs: &[f64]) -> Option<Vec<i64>> {
        xs.iter().map(|x| self.key_lookup(*x)).collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snaps_nearby_values_to_one_key() {
        let mut q = Quantizer::new(1e-9, 1e-6);
        let x = std::f64::consts::FRAC_1_SQRT_2;
        let a = q.key_insert(x).unwrap();
        let b = q.key_insert(x + 3e-10).unwrap();
        let c = q.key_insert(x - 3e-10).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn distinct_values_get_distinct_keys() {
        let mut q = Quantizer::new(1e-9, 1e-6);
        let a = q.key_insert(0.5).unwrap();
        let b = q.key_insert(-0.5).unwrap();
        let c = q.key_insert(3.0f64.sqrt() / 2.0).unwrap();
        assert!(a != b && b != c && a != c);
    }

    #[test]
    fn dead_zone_is_a_fault() {
        let mut q = Quantizer::new(1e-9, 1e-6);
        q.key_insert(0.25).unwrap();
        assert!(q.key_insert(0.25 + 1e-7).is_err());
    }

    #[test]
    fn lookup_does_not_insert() {
        let mut q = Quantizer::new(1e-9, 1e-6);
        q.key_insert(1.0).unwrap();
        assert!(q.key_lookup(1.0 + 1e-10).is_some());
        assert!(q.key_lookup(0.123).is_none());
        assert_eq!(q.len(), 1);
    }
}
