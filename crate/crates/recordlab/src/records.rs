//! Streaming counters for the three record types and for maxima.

use crate::geometry::{dominates, join, Point};

/// Counts and (optionally) 1-based arrival indices of records in one sequence.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RecordTally {
    pub n: usize,
    pub pareto_count: usize,
    pub chain_count: usize,
    pub dominating_count: usize,
    pub maxima_count: usize,
    pub pareto_indices: Vec<usize>,
    pub chain_indices: Vec<usize>,
    pub dominating_indices: Vec<usize>,
}

/// Count dominating records: arrivals strictly above the running
/// componentwise maximum of all earlier points. O(n d) time, O(d) space.
pub fn count_dominating(seq: &[Point], keep_indices: bool) -> RecordTally {
    let mut tally = RecordTally {
        n: seq.len(),
        ..Default::default()
    };
    let mut running_max: Option<Point> = None;
    for (i, p) in seq.iter().enumerate() {
        match &running_max {
            None => {
                tally.dominating_count += 1;
                if keep_indices {
                    tally.dominating_indices.push(i + 1);
                }
                running_max = Some(p.clone());
            }
            Some(m) => {
                if dominates(p, m) {
                    tally.dominating_count += 1;
                    if keep_indices {
                        tally.dominating_indices.push(i + 1);
                    }
                }
                running_max = Some(join(m, p));
            }
        }
    }
    tally
}

/// Count chain records: maintain the current top record `r`; a point extends
/// the chain iff it dominates `r`.
pub fn count_chain(seq: &[Point], keep_indices: bool) -> RecordTally {
    let mut tally = RecordTally {
        n: seq.len(),
        ..Default::default()
    };
    let mut top: Option<&Point> = None;
    for (i, p) in seq.iter().enumerate() {
        let is_record = match top {
            None => true,
            Some(r) => dominates(p, r),
        };
        if is_record {
            tally.chain_count += 1;
            if keep_indices {
                tally.chain_indices.push(i + 1);
            }
            top = Some(p);
        }
    }
    tally
}

/// Incremental set of current maxima, stored as a flat array with linear
/// scan and evict-on-insert. Prefix maxima sets stay small, so the total
/// cost is roughly O(n^{2-1/d} d) for random input.
#[derive(Debug, Clone, Default)]
pub struct MaximaSet {
    points: Vec<Point>,
}

impl MaximaSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Insert a point. Returns true iff the point is not dominated by any
    /// current maximum (i.e. it is a Pareto record of the stream so far).
    /// Dominance of an earlier point implies dominance of a prefix maximum,
    /// so checking the maintained set suffices.
    pub fn insert(&mut self, p: &Point) -> bool {
        if self.points.iter().any(|m| dominates(m, p)) {
            return false;
        }
        self.points.retain(|m| !dominates(p, m));
        self.points.push(p.clone());
        true
    }
}

/// Count Pareto records via the incremental maxima set.
pub fn count_pareto(seq: &[Point], keep_indices: bool) -> RecordTally {
    let mut tally = RecordTally {
        n: seq.len(),
        ..Default::default()
    };
    let mut maxima = MaximaSet::new();
    for (i, p) in seq.iter().enumerate() {
        if maxima.insert(p) {
            tally.pareto_count += 1;
            if keep_indices {
                tally.pareto_indices.push(i + 1);
            }
        }
    }
    tally.maxima_count = maxima.len();
    tally
}

/// Sorted-by-first-coordinate specialization for d=2 used by the large-n
/// runs: maxima kept ordered by x ascending (hence y descending), record
/// test and eviction by binary search.
#[derive(Debug, Clone, Default)]
pub struct MaximaSet2D {
    // (x, y) with x strictly increasing and y strictly decreasing
    pts: Vec<(f64, f64)>,
}

impl MaximaSet2D {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn insert(&mut self, x: f64, y: f64) -> bool {
        // First maximum with x' > x; it has the largest y among those, so it
        // decides dominance.
        let idx = self.pts.partition_point(|&(px, _)| px <= x);
        if idx < self.pts.len() && self.pts[idx].1 > y {
            return false;
        }
        // Evict maxima dominated by (x, y): a contiguous run ending at idx-1.
        let mut lo = idx;
        while lo > 0 && self.pts[lo - 1].0 < x && self.pts[lo - 1].1 < y {
            lo -= 1;
        }
        self.pts.splice(lo..idx, [(x, y)]);
        true
    }
}

/// Count maxima of a point set: points dominated by no other. Order of the
/// input does not matter.
pub fn count_maxima(points: &[Point]) -> usize {
    let mut maxima = MaximaSet::new();
    for p in points {
        maxima.insert(p);
    }
    maxima.len()
}

/// Lift a sequence to dimension d+1 by appending the reversed arrival index
/// `(n+1-i)/(n+1)` as an extra coordinate. The maxima of the lifted set are
/// exactly the Pareto records of the sequence.
pub fn lift_to_extended(seq: &[Point]) -> Vec<Point> {
    let n = seq.len();
    seq.iter()
        .enumerate()
        .map(|(i, p)| {
            let mut coords = p.0.clone();
            coords.push((n - i) as f64 / (n + 1) as f64);
            Point(coords)
        })
        .collect()
}

/// Brute-force O(n^2 d) oracle used by tests and validation runs.
pub mod oracle {
    use super::*;

    pub fn pareto_indices(seq: &[Point]) -> Vec<usize> {
        (0..seq.len())
            .filter(|&k| (0..k).all(|i| !dominates(&seq[i], &seq[k])))
            .map(|k| k + 1)
            .collect()
    }

    pub fn dominating_indices(seq: &[Point]) -> Vec<usize> {
        (0..seq.len())
            .filter(|&k| (0..k).all(|i| dominates(&seq[k], &seq[i])))
            .map(|k| k + 1)
            .collect()
    }

    pub fn maxima_count(points: &[Point]) -> usize {
        (0..points.len())
            .filter(|&k| (0..points.len()).all(|i| i == k || !dominates(&points[i], &points[k])))
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{sample_point, Model, RngStream};

    fn fig1() -> Vec<Point> {
        vec![
            Point(vec![-3.5, 5.5]),
            Point(vec![-1.0, 3.0]),
            Point(vec![-1.5, 7.0]),
            Point(vec![-2.0, 4.5]),
            Point(vec![-5.5, 6.5]),
            Point(vec![0.5, 6.0]),
            Point(vec![1.5, 8.0]),
            Point(vec![-4.5, 2.0]),
        ]
    }

    fn d1(seq: &[f64]) -> Vec<Point> {
        seq.iter().map(|&x| Point(vec![x])).collect()
    }

    #[test]
    fn fig1_counts() {
        let seq = fig1();
        let dom = count_dominating(&seq, true);
        assert_eq!(dom.dominating_count, 2);
        assert_eq!(dom.dominating_indices, vec![1, 7]);

        let chain = count_chain(&seq, true);
        assert_eq!(chain.chain_count, 3);
        assert_eq!(chain.chain_indices, vec![1, 3, 7]);

        let pareto = count_pareto(&seq, true);
        assert_eq!(pareto.pareto_count, 5);
        assert_eq!(pareto.pareto_indices, vec![1, 2, 3, 6, 7]);

        assert_eq!(count_maxima(&seq), 1);
    }

    #[test]
    fn empty_and_singleton() {
        assert_eq!(count_dominating(&[], false).dominating_count, 0);
        assert_eq!(count_chain(&[], false).chain_count, 0);
        assert_eq!(count_pareto(&[], false).pareto_count, 0);
        assert_eq!(count_maxima(&[]), 0);
        let single = vec![Point(vec![0.5, 0.5])];
        assert_eq!(count_dominating(&single, false).dominating_count, 1);
        assert_eq!(count_maxima(&lift_to_extended(&single)), 1);
    }

    #[test]
    fn d1_reduces_to_classical_records() {
        let seq = d1(&[0.2, 0.5, 0.3, 0.7]);
        assert_eq!(count_dominating(&seq, false).dominating_count, 3);
        assert_eq!(count_chain(&seq, false).chain_count, 3);
        assert_eq!(count_pareto(&seq, false).pareto_count, 3);
        assert_eq!(count_maxima(&seq), 1);
    }

    #[test]
    fn increasing_chain() {
        let seq: Vec<Point> = (0..10).map(|i| Point(vec![i as f64, i as f64])).collect();
        assert_eq!(count_chain(&seq, false).chain_count, 10);
        assert_eq!(count_pareto(&seq, false).pareto_count, 10);
    }

    #[test]
    fn antichain_maxima() {
        assert_eq!(
            count_maxima(&[Point(vec![1.0, 0.0]), Point(vec![0.0, 1.0])]),
            2
        );
    }

    #[test]
    fn lifted_maxima_equal_pareto_records() {
        assert_eq!(count_maxima(&lift_to_extended(&fig1())), 5);
        let model = Model::simplex(2).unwrap();
        for stream in 0..8 {
            let mut rng = RngStream::new(11, stream);
            let seq: Vec<Point> = (0..200).map(|_| sample_point(model, &mut rng)).collect();
            assert_eq!(
                count_maxima(&lift_to_extended(&seq)),
                count_pareto(&seq, false).pareto_count,
                "stream {stream}"
            );
            assert_eq!(
                count_pareto(&seq, false).pareto_count,
                oracle::pareto_indices(&seq).len()
            );
        }
    }

    #[test]
    fn counters_agree_with_oracle_random() {
        for (d, n, stream) in [(1usize, 300usize, 0u64), (2, 500, 1), (3, 400, 2), (6, 200, 3)] {
            let model = Model::hypercube(d).unwrap();
            let mut rng = RngStream::new(99, stream);
            let seq: Vec<Point> = (0..n).map(|_| sample_point(model, &mut rng)).collect();
            let pareto = count_pareto(&seq, true);
            let dom = count_dominating(&seq, true);
            assert_eq!(pareto.pareto_indices, oracle::pareto_indices(&seq));
            assert_eq!(dom.dominating_indices, oracle::dominating_indices(&seq));
            assert_eq!(count_maxima(&seq), oracle::maxima_count(&seq));
            // inclusion chain: dominating <= chain <= pareto
            let chain = count_chain(&seq, true);
            assert!(dom
                .dominating_indices
                .iter()
                .all(|i| chain.chain_indices.contains(i)));
            assert!(chain
                .chain_indices
                .iter()
                .all(|i| pareto.pareto_indices.contains(i)));
        }
    }

    #[test]
    fn maxima_permutation_invariant_pareto_not() {
        let seq = fig1();
        let mut rev = seq.clone();
        rev.reverse();
        assert_eq!(count_maxima(&seq), count_maxima(&rev));
        // order-sensitivity: reversed Fig. 1 sequence yields a different tally
        assert_ne!(
            count_pareto(&seq, false).pareto_count,
            count_pareto(&rev, false).pareto_count
        );
    }

    #[test]
    fn maxima2d_matches_generic() {
        let model = Model::simplex(2).unwrap();
        let mut rng = RngStream::new(7, 0);
        let seq: Vec<Point> = (0..2000).map(|_| sample_point(model, &mut rng)).collect();
        let mut fast = MaximaSet2D::new();
        let mut slow = MaximaSet::new();
        for p in &seq {
            assert_eq!(fast.insert(p.0[0], p.0[1]), slow.insert(p));
            assert_eq!(fast.len(), slow.len());
        }
    }

    #[test]
    fn duplicated_points_are_incomparable() {
        let p = Point(vec![0.5, 0.5]);
        let seq = vec![p.clone(), p.clone()];
        assert_eq!(count_pareto(&seq, false).pareto_count, 2);
        assert_eq!(count_maxima(&seq), 2);
        assert_eq!(count_dominating(&seq, false).dominating_count, 1);
    }
}
