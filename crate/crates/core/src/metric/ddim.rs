use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;
use crate::points::DistanceMatrix;

/// Radii examined per center.
const RADII_PER_CENTER: usize = 32;

/// Size of a greedy cover of the closed ball `B(c, r)` by balls of radius
/// `r/2` centred at points of the ball.
pub fn greedy_half_cover(d: &DistanceMatrix, center: usize, r: f64) -> usize {
    let ball: Vec<usize> = (0..d.len()).filter(|&x| d.get(center, x) <= r).collect();
    let mut covered = alloc::vec![false; ball.len()];
    let mut count = 0;
    for a in 0..ball.len() {
        if covered[a] {
            continue;
        }
        count += 1;
        for b in a..ball.len() {
            if !covered[b] && d.get(ball[a], ball[b]) <= 0.5 * r {
                covered[b] = true;
            }
        }
    }
    count
}

/// Upper-bound estimate of the doubling dimension: `log₂` of the largest
/// greedy half-radius cover over every center and up to 32 log-spaced radii
/// from that center's distance list.
pub fn estimate_doubling_dimension(d: &DistanceMatrix) -> Result<f64> {
    let n = d.len();
    if n < 2 {
        return Err(Error::domain("doubling estimate needs at least two points"));
    }
    let mut worst = 1usize;
    for c in 0..n {
        let mut radii: Vec<f64> = d.row(c).iter().copied().filter(|&x| x > 0.0).collect();
        radii.sort_by(f64::total_cmp);
        radii.dedup();
        for r in pick_log_spaced(&radii, RADII_PER_CENTER) {
            worst = worst.max(greedy_half_cover(d, c, r));
        }
    }
    Ok(math::log2(worst as f64))
}

/// Up to `count` values of the sorted list, spread evenly in log scale and
/// always including both ends.
fn pick_log_spaced(sorted: &[f64], count: usize) -> Vec<f64> {
    if sorted.len() <= count {
        return sorted.to_vec();
    }
    let lo = math::ln(sorted[0]);
    let hi = math::ln(sorted[sorted.len() - 1]);
    let mut out = Vec::with_capacity(count);
    let mut idx = 0;
    for j in 0..count {
        let target = lo + (hi - lo) * j as f64 / (count - 1) as f64;
        while idx + 1 < sorted.len() && math::ln(sorted[idx]) < target {
            idx += 1;
        }
        if out.last() != Some(&sorted[idx]) {
            out.push(sorted[idx]);
        }
    }
    out
}
