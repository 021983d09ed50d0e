//! Goodness-of-fit and summary statistics for the sampler law tests.

use std::collections::BTreeMap;

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Pearson test outcome.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

fn p_value(statistic: f64, dof: usize) -> f64 {
    if dof == 0 {
        return 1.0;
    }
    let dist = ChiSquared::new(dof as f64).expect("positive degrees of freedom");
    dist.sf(statistic)
}

/// Pearson goodness of fit of `observed` counts against category
/// probabilities `expected`. A count in a zero-probability category yields
/// `p = 0`.
pub fn chi_square_gof(observed: &[u64], expected: &[f64]) -> ChiSquare {
    assert_eq!(observed.len(), expected.len());
    let total: u64 = observed.iter().sum();
    let mut statistic = 0.0;
    let mut cells = 0usize;
    for (&o, &p) in observed.iter().zip(expected) {
        if p <= 0.0 {
            if o > 0 {
                return ChiSquare {
                    statistic: f64::INFINITY,
                    dof: 0,
                    p_value: 0.0,
                };
            }
            continue;
        }
        let e = p * total as f64;
        statistic += (o as f64 - e).powi(2) / e;
        cells += 1;
    }
    let dof = cells.saturating_sub(1);
    ChiSquare {
        statistic,
        dof,
        p_value: p_value(statistic, dof),
    }
}

/// Two-sample chi-square homogeneity test over aligned category counts.
pub fn chi_square_two_sample(a: &[u64], b: &[u64]) -> ChiSquare {
    assert_eq!(a.len(), b.len());
    let na: u64 = a.iter().sum();
    let nb: u64 = b.iter().sum();
    let ka = (nb as f64 / na as f64).sqrt();
    let kb = (na as f64 / nb as f64).sqrt();
    let mut statistic = 0.0;
    let mut cells = 0usize;
    for (&x, &y) in a.iter().zip(b) {
        if x + y == 0 {
            continue;
        }
        statistic += (ka * x as f64 - kb * y as f64).powi(2) / (x + y) as f64;
        cells += 1;
    }
    let dof = cells.saturating_sub(1);
    ChiSquare {
        statistic,
        dof,
        p_value: p_value(statistic, dof),
    }
}

/// Tally of hashable outcomes in first-seen-independent (sorted) order.
#[derive(Clone, Debug, Default)]
pub struct Tally<K: Ord> {
    counts: BTreeMap<K, u64>,
}

impl<K: Ord + Clone> Tally<K> {
    pub fn new() -> Self {
        Tally {
            counts: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, key: K) {
        *self.counts.entry(key).or_insert(0) += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, key: &K) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    /// Counts aligned with `keys`; outcomes not in `keys` are summed into a
    /// trailing extra cell.
    pub fn aligned(&self, keys: &[K]) -> Vec<u64> {
        let mut out: Vec<u64> = keys.iter().map(|k| self.count(k)).collect();
        let listed: u64 = out.iter().sum();
        out.push(self.total() - listed);
        out
    }

    pub fn keys(&self) -> Vec<K> {
        self.counts.keys().cloned().collect()
    }

    /// Goodness of fit against an exact law given as `(outcome, probability)`.
    pub fn against(&self, law: &[(K, f64)]) -> ChiSquare {
        let keys: Vec<K> = law.iter().map(|(k, _)| k.clone()).collect();
        let mut probs: Vec<f64> = law.iter().map(|(_, p)| *p).collect();
        probs.push(0.0);
        chi_square_gof(&self.aligned(&keys), &probs)
    }

    /// Two-sample test against another tally over the union of outcomes.
    pub fn versus(&self, other: &Tally<K>) -> ChiSquare {
        let mut keys = self.keys();
        keys.extend(other.keys());
        keys.sort();
        keys.dedup();
        let a: Vec<u64> = keys.iter().map(|k| self.count(k)).collect();
        let b: Vec<u64> = keys.iter().map(|k| other.count(k)).collect();
        chi_square_two_sample(&a, &b)
    }
}

/// Linear-interpolation quantile (type 7) of unsorted data.
pub fn quantile(data: &[f64], q: f64) -> f64 {
    if data.is_empty() {
        return f64::NAN;
    }
    let mut v = data.to_vec();
    v.sort_by(f64::total_cmp);
    let h = (v.len() - 1) as f64 * q.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    v[lo] + (h - lo as f64) * (v[hi] - v[lo])
}

pub fn median(data: &[f64]) -> f64 {
    quantile(data, 0.5)
}

pub fn iqr(data: &[f64]) -> f64 {
    quantile(data, 0.75) - quantile(data, 0.25)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gof_perfect_fit_has_p_one() {
        let c = chi_square_gof(&[25, 25, 25, 25], &[0.25; 4]);
        assert_eq!(c.statistic, 0.0);
        assert_eq!(c.dof, 3);
        assert!((c.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gof_known_value() {
        // statistic = (10²+10²)/50 = 4, dof 1: p = P(χ²₁ > 4) ≈ 0.0455
        let c = chi_square_gof(&[60, 40], &[0.5, 0.5]);
        assert!((c.statistic - 4.0).abs() < 1e-12);
        assert!((c.p_value - 0.045_500_263_896_358_4).abs() < 1e-9);
    }

    #[test]
    fn gof_impossible_outcome() {
        assert_eq!(chi_square_gof(&[5, 1], &[1.0, 0.0]).p_value, 0.0);
    }

    #[test]
    fn two_sample_identical() {
        let c = chi_square_two_sample(&[10, 20, 30], &[20, 40, 60]);
        assert!(c.statistic.abs() < 1e-12);
        assert_eq!(c.dof, 2);
    }

    #[test]
    fn tally_alignment() {
        let mut t = Tally::new();
        for k in [3, 1, 3, 7] {
            t.add(k);
        }
        assert_eq!(t.aligned(&[1, 3]), vec![1, 2, 1]);
        assert_eq!(t.distinct(), 3);
    }

    #[test]
    fn quantiles() {
        let d = [4.0, 1.0, 3.0, 2.0];
        assert_eq!(median(&d), 2.5);
        assert_eq!(quantile(&d, 0.0), 1.0);
        assert_eq!(quantile(&d, 1.0), 4.0);
        assert_eq!(iqr(&d), 1.5);
    }
}
