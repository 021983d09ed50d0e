use std::ops::Range;

use super::loop_erasure::last_visits;
use crate::error::{Error, Result};
use crate::walk::Walk;

/// Times `t ∈ [0, L)` with `X[0, t] ∩ X[t+1, L] = ∅`.
///
/// `t` is a cut time exactly when no vertex seen up to `t` is seen again
/// later, i.e. when the running maximum of last-visit times equals `t`.
pub fn cut_times(x: &Walk) -> Vec<usize> {
    let xs = x.vertices();
    let last = last_visits(xs);
    let end = xs.len() - 1;
    let mut reach = 0;
    let mut out = Vec::new();
    for (t, &v) in xs.iter().enumerate().take(end) {
        reach = reach.max(last[v]);
        if reach == t {
            out.push(t);
        }
    }
    out
}

/// Distinct vertices visited at cut times, sorted.
pub fn cut_points(x: &Walk) -> Vec<usize> {
    let xs = x.vertices();
    let mut out: Vec<usize> = cut_times(x).into_iter().map(|t| xs[t]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Index ranges of the `i`-th segment pair: `B_i = X[(i−1)r, ir−s)` and
/// `A_i = X[(i−1)r+s, ir−2s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub index: usize,
    pub b: Range<usize>,
    pub a: Range<usize>,
}

impl Segment {
    pub fn b_slice<'w>(&self, x: &'w Walk) -> &'w [usize] {
        x.half_open(self.b.start, self.b.end)
    }

    pub fn a_slice<'w>(&self, x: &'w Walk) -> &'w [usize] {
        x.half_open(self.a.start, self.a.end)
    }
}

/// The `⌊L/r⌋` segment pairs of a walk of length `L`; empty when `L < r`.
pub fn segment_decomposition(x: &Walk, r: usize, s: usize) -> Result<Vec<Segment>> {
    if r == 0 || 3 * s >= r {
        return Err(Error::invalid(format!(
            "segment decomposition needs 3s < r, got r = {r}, s = {s}"
        )));
    }
    Ok((1..=x.len() / r)
        .map(|i| Segment {
            index: i,
            b: (i - 1) * r..i * r - s,
            a: (i - 1) * r + s..i * r - 2 * s,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ust::loop_erase;

    fn walk(v: &[usize]) -> Walk {
        Walk::new(v.to_vec()).unwrap()
    }

    // Direct definition: prefix and suffix vertex sets are disjoint.
    fn brute_cut_times(xs: &[usize]) -> Vec<usize> {
        (0..xs.len() - 1)
            .filter(|&t| xs[..=t].iter().all(|v| !xs[t + 1..].contains(v)))
            .collect()
    }

    #[test]
    fn injective_walk_cuts_everywhere() {
        assert_eq!(cut_times(&walk(&[3, 1, 4, 0])), vec![0, 1, 2]);
    }

    #[test]
    fn hand_checked_cases() {
        let x = walk(&[0, 1, 0, 2]);
        assert_eq!(cut_times(&x), vec![2]);
        assert_eq!(cut_points(&x), vec![0]);
        let closed = walk(&[0, 1, 2, 0]);
        assert_eq!(cut_times(&closed), brute_cut_times(closed.vertices()));
        assert!(cut_times(&closed).is_empty());
        assert!(cut_times(&walk(&[7])).is_empty());
    }

    #[test]
    fn agrees_with_definition_and_survives_erasure() {
        let xs = [0, 1, 2, 1, 3, 4, 3, 5, 6, 6, 7, 5, 8];
        let x = walk(&xs);
        assert_eq!(cut_times(&x), brute_cut_times(&xs));
        let le = loop_erase(&x).path;
        assert!(cut_points(&x).iter().all(|p| le.contains(p)));
    }

    #[test]
    fn segments() {
        let x = walk(&(0..=30).collect::<Vec<_>>());
        let one = segment_decomposition(&walk(&(0..=10).collect::<Vec<_>>()), 10, 1).unwrap();
        assert_eq!(
            one,
            vec![Segment {
                index: 1,
                b: 0..9,
                a: 1..8
            }]
        );
        let segs = segment_decomposition(&x, 10, 2).unwrap();
        assert_eq!(segs.len(), 3);
        for s in &segs {
            assert!(s.b.start <= s.a.start && s.a.end <= s.b.end && !s.a.is_empty());
        }
        assert_eq!(segs[2].a_slice(&x), &[22, 23, 24, 25]);
        assert!(segment_decomposition(&walk(&[0; 5]), 10, 1)
            .unwrap()
            .is_empty());
        assert!(segment_decomposition(&x, 9, 3).is_err());
    }
}
