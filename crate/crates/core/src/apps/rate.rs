use crate::towerpres::{OrbitIndexer, OrbitWalker, TowerBound};

/// Lower bound on `r(j)`, the largest run length a tower string of length
/// `j` can stand for: the walk's record, or the milestone `(2^j - 1, 1, 1, 0)`
/// whose encoding has length `j`.
pub fn tower_r_lower(j: usize, walker: Option<&OrbitWalker>, ix: &mut OrbitIndexer) -> TowerBound {
    let walked = walker.map_or(TowerBound::from(0), |w| w.r_lower(j));
    if j == 0 {
        return walked;
    }
    let e = j.min(63) as u32;
    walked.max_lower(ix.milestone_index((1u64 << e) - 1))
}

/// `max { r(j) + (n - j) : 1 ≤ j ≤ n - min_rest }`, the longest original
/// string behind a compressed one of length `n` whose run part `u_k` has
/// length `j` and whose remainder has at least `min_rest` symbols. Zero when
/// no split fits.
pub fn run_compressed_rate(
    n: usize,
    min_rest: usize,
    mut r: impl FnMut(usize) -> TowerBound,
) -> TowerBound {
    let mut best = TowerBound::from(0);
    if n < min_rest + 1 {
        return best;
    }
    for j in 1..=n - min_rest {
        best = best.max_lower(r(j).plus((n - j) as u64));
    }
    best
}
