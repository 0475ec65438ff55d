//! Prominence-filtered peak detection on sampled curves.

use crate::series::RealSeries;

/// Domain topology for peak search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeakDomain {
    /// Endpoints are hard boundaries and never count as peaks.
    Linear,
    /// First and last samples are neighbours (angular scans).
    Periodic,
}

/// Local maxima whose height exceeds the neighbouring minima on *both* sides
/// by at least `prominence`. Returns the x locations of accepted peaks in
/// ascending order. Flat plateaus count once, at their left edge.
pub fn find_peaks(s: &RealSeries, prominence: f64, domain: PeakDomain) -> Vec<f64> {
    assert!(prominence > 0.0, "prominence must be positive");
    let pts = s.points();
    let n = pts.len();
    if n < 3 {
        return Vec::new();
    }
    let y = |i: usize| pts[i].1;

    // candidate maxima: strictly above the previous distinct value and at
    // least as high as the next distinct value
    let mut candidates = Vec::new();
    let idx = |i: isize| -> usize { ((i % n as isize) + n as isize) as usize % n };
    let range: Box<dyn Iterator<Item = usize>> = match domain {
        PeakDomain::Linear => Box::new(1..n - 1),
        PeakDomain::Periodic => Box::new(0..n),
    };
    for i in range {
        // previous distinct neighbour
        let mut l = i as isize - 1;
        let mut steps = 0;
        while steps < n && y(idx(l)) == y(i) {
            if domain == PeakDomain::Linear && l == 0 {
                break;
            }
            l -= 1;
            steps += 1;
        }
        let mut r = i as isize + 1;
        steps = 0;
        while steps < n && y(idx(r)) == y(i) {
            if domain == PeakDomain::Linear && r == (n - 1) as isize {
                break;
            }
            r += 1;
            steps += 1;
        }
        let yl = y(idx(l));
        let yr = y(idx(r));
        if yl == y(i) && yr == y(i) {
            continue; // constant region
        }
        // left edge of plateaus only
        let left_neighbor = y(idx(i as isize - 1));
        if yl < y(i) && yr < y(i) && left_neighbor < y(i) {
            candidates.push(i);
        }
    }

    // prominence: walk outward to the valley floor on each side
    let mut peaks = Vec::new();
    for &i in &candidates {
        let h = y(i);
        let valley = |dir: isize| -> f64 {
            let mut j = i as isize + dir;
            let mut low = h;
            let mut steps = 0;
            loop {
                if domain == PeakDomain::Linear && (j < 0 || j >= n as isize) {
                    break;
                }
                if steps >= n {
                    break;
                }
                let v = y(idx(j));
                if v > h {
                    break; // reached a higher peak; valley floor is settled
                }
                low = low.min(v);
                j += dir;
                steps += 1;
            }
            low
        };
        let left_min = valley(-1);
        let right_min = valley(1);
        if h - left_min >= prominence && h - right_min >= prominence {
            peaks.push(pts[i].0);
        }
    }
    peaks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::linear_grid;

    #[test]
    fn constant_series_has_no_peaks() {
        let s = RealSeries::from_fn(&linear_grid(0.0, 1.0, 50), |_| 1.0).unwrap();
        assert!(find_peaks(&s, 0.1, PeakDomain::Linear).is_empty());
        assert!(find_peaks(&s, 0.1, PeakDomain::Periodic).is_empty());
    }

    #[test]
    fn sin_3theta_periodic_three_peaks() {
        let n = 240;
        let xs: Vec<f64> = (0..n)
            .map(|i| 2.0 * std::f64::consts::PI * i as f64 / n as f64)
            .collect();
        let s = RealSeries::from_fn(&xs, |t| (3.0 * t).sin()).unwrap();
        let peaks = find_peaks(&s, 0.5, PeakDomain::Periodic);
        assert_eq!(peaks.len(), 3);
    }

    #[test]
    fn endpoints_excluded_on_linear_domain() {
        // monotone ramp: the top sample is at the boundary, not a peak
        let s = RealSeries::from_fn(&linear_grid(0.0, 1.0, 20), |x| x).unwrap();
        assert!(find_peaks(&s, 0.1, PeakDomain::Linear).is_empty());
    }

    #[test]
    fn prominence_filters_small_wiggles() {
        let xs = linear_grid(0.0, 10.0, 400);
        let s = RealSeries::from_fn(&xs, |x| (x).sin() + 0.05 * (20.0 * x).sin()).unwrap();
        let peaks = find_peaks(&s, 0.5, PeakDomain::Linear);
        assert_eq!(peaks.len(), 2); // main sine peaks near pi/2 and 5pi/2 only
    }

    #[test]
    fn boundary_peak_found_in_periodic_domain() {
        let n = 100;
        let xs: Vec<f64> = (0..n)
            .map(|i| 2.0 * std::f64::consts::PI * i as f64 / n as f64)
            .collect();
        // maximum at theta = 0 (first sample)
        let s = RealSeries::from_fn(&xs, |t| t.cos()).unwrap();
        assert_eq!(find_peaks(&s, 0.5, PeakDomain::Periodic).len(), 1);
        assert_eq!(find_peaks(&s, 0.5, PeakDomain::Linear).len(), 0);
    }
}
