use crate::error::{Error, Result};

use super::SweepRecord;

/// Height (bits) a turning point must clear on both sides to count as a local
/// extremum; filters round-off ripples on flat stretches.
pub const MIN_PROMINENCE: f64 = 1e-6;

/// Negativity level treated as zero when locating sign changes.
pub const NEGATIVITY_ZERO: f64 = 1e-6;

/// Relative depth tolerance (of the u_L range) for two minima to be the same
/// point of the cycle.
const RECURRENCE_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub t_gamma: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub ul_max: Extremum,
    pub ul_min: Extremum,
    /// Times where negativity crosses [`NEGATIVITY_ZERO`], linearly
    /// interpolated between records.
    pub negativity_zeros: Vec<f64>,
    /// Times of the prominent local minima of u_L.
    pub ul_minima: Vec<f64>,
    pub period_estimate: Option<f64>,
    /// Lowest u_L between the first and second interior maxima.
    pub first_alpha_minimum: Option<Extremum>,
    /// Lowest u_L between the second and third interior maxima.
    pub first_beta_minimum: Option<Extremum>,
}

/// Indices of local minima whose depth is at least `prominence` on both sides.
///
/// A flat bottom is reported once, at its first index. Endpoints are never
/// reported.
pub fn local_minima(values: &[f64], prominence: f64) -> Vec<usize> {
    let n = values.len();
    let mut out = Vec::new();
    for i in 1..n.saturating_sub(1) {
        let v = values[i];
        let rises = |iter: &mut dyn Iterator<Item = f64>, allow_equal: bool| {
            for u in iter {
                if u < v || (!allow_equal && u == v) {
                    return false;
                }
                if u > v + prominence {
                    return true;
                }
            }
            false
        };
        if rises(&mut values[..i].iter().rev().copied(), false)
            && rises(&mut values[i + 1..].iter().copied(), true)
        {
            out.push(i);
        }
    }
    out
}

pub fn local_maxima(values: &[f64], prominence: f64) -> Vec<usize> {
    let negated: Vec<f64> = values.iter().map(|v| -v).collect();
    local_minima(&negated, prominence)
}

pub fn summarize(records: &[SweepRecord]) -> Result<SweepSummary> {
    if records.len() < 2 {
        return Err(Error::TooFewRecords(records.len()));
    }
    let ul: Vec<f64> = records.iter().map(|r| r.u_l).collect();
    let at = |i: usize| Extremum {
        t_gamma: records[i].t_gamma,
        value: ul[i],
    };

    // first occurrence wins on ties
    let mut imax = 0;
    let mut imin = 0;
    for (i, &u) in ul.iter().enumerate() {
        if u > ul[imax] {
            imax = i;
        }
        if u < ul[imin] {
            imin = i;
        }
    }
    let range = ul[imax] - ul[imin];

    let negativity_zeros = records
        .windows(2)
        .filter_map(|w| {
            let (a, b) = (
                w[0].negativity - NEGATIVITY_ZERO,
                w[1].negativity - NEGATIVITY_ZERO,
            );
            if (a <= 0.0) != (b <= 0.0) {
                let frac = a / (a - b);
                Some(w[0].t_gamma + frac * (w[1].t_gamma - w[0].t_gamma))
            } else {
                None
            }
        })
        .collect();

    let minima = local_minima(&ul, MIN_PROMINENCE);
    let maxima = local_maxima(&ul, MIN_PROMINENCE);
    let lowest_between = |from: usize, to: usize| {
        let mut best = from;
        for i in from..=to {
            if ul[i] < ul[best] {
                best = i;
            }
        }
        at(best)
    };

    Ok(SweepSummary {
        ul_max: at(imax),
        ul_min: at(imin),
        negativity_zeros,
        ul_minima: minima.iter().map(|&i| records[i].t_gamma).collect(),
        period_estimate: estimate_period(records, &ul, &minima, range),
        first_alpha_minimum: (maxima.len() >= 2).then(|| lowest_between(maxima[0], maxima[1])),
        first_beta_minimum: (maxima.len() >= 3).then(|| lowest_between(maxima[1], maxima[2])),
    })
}

/// Period of u_L from recurrences of its first local minimum.
///
/// Minima whose depth matches the first one (within a small fraction of the
/// u_L range) mark the same phase of successive cycles; the period is their
/// mean spacing. A cycle may hold more than one minimum, so consecutive
/// minima are not assumed to be one period apart. Without any recurrence the
/// mean spacing of successive minima is returned.
fn estimate_period(
    records: &[SweepRecord],
    ul: &[f64],
    minima: &[usize],
    range: f64,
) -> Option<f64> {
    if minima.len() < 2 {
        return None;
    }
    let tol = RECURRENCE_TOL * range.max(f64::EPSILON);
    let first = ul[minima[0]];
    let recurring: Vec<f64> = minima
        .iter()
        .filter(|&&i| (ul[i] - first).abs() <= tol)
        .map(|&i| records[i].t_gamma)
        .collect();
    let times = if recurring.len() >= 2 {
        recurring
    } else {
        minima.iter().map(|&i| records[i].t_gamma).collect()
    };
    Some((times[times.len() - 1] - times[0]) / (times.len() - 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn records_from(ul: &[f64], dt: f64) -> Vec<SweepRecord> {
        ul.iter()
            .enumerate()
            .map(|(i, &u)| SweepRecord {
                t_gamma: i as f64 * dt,
                u_l: u,
                u_b: u - 1.0,
                sxb: u / 2.0,
                szb: u / 2.0,
                negativity: 0.0,
                g_plus: 1.0,
                g_minus: 1.0,
            })
            .collect()
    }

    #[test]
    fn too_few_records() {
        assert!(matches!(
            summarize(&records_from(&[1.0], 1.0)),
            Err(Error::TooFewRecords(1))
        ));
    }

    #[test]
    fn monotone_decreasing_has_no_period() {
        let ul: Vec<f64> = (0..100).map(|i| 3.0 - 0.01 * i as f64).collect();
        let s = summarize(&records_from(&ul, 0.5)).unwrap();
        assert_eq!(s.ul_max.t_gamma, 0.0);
        assert_eq!(s.period_estimate, None);
        assert!(s.ul_minima.is_empty());
        assert!(s.first_beta_minimum.is_none());
    }

    #[test]
    fn period_of_single_minimum_cycle() {
        let ul: Vec<f64> = (0..=1000).map(|i| (i as f64 * 0.1).cos()).collect();
        let s = summarize(&records_from(&ul, 0.1)).unwrap();
        let period = s.period_estimate.unwrap();
        assert!(
            (period - 2.0 * std::f64::consts::PI).abs() < 0.1,
            "{period}"
        );
    }

    #[test]
    fn period_of_two_minimum_cycle() {
        // Alternating shallow and deep minima; the cycle spans both.
        let ul: Vec<f64> = (0..=2000)
            .map(|i| {
                let t = i as f64 * 0.05;
                t.cos() + 0.45 * (2.0 * t + 0.7).cos()
            })
            .collect();
        let s = summarize(&records_from(&ul, 0.05)).unwrap();
        assert!(s.ul_minima.len() >= 4);
        let period = s.period_estimate.unwrap();
        assert!(
            (period - 2.0 * std::f64::consts::PI).abs() < 0.1,
            "{period}"
        );
    }

    #[test]
    fn prominence_filters_ripple() {
        let mut ul = vec![1.0; 50];
        ul[10] = 1.0 - 1e-12;
        ul[20] = 0.5;
        assert_eq!(local_minima(&ul, MIN_PROMINENCE), vec![20]);
        let flat_bottom = [2.0, 1.0, 1.0, 1.0, 2.0];
        assert_eq!(local_minima(&flat_bottom, MIN_PROMINENCE), vec![1]);
        assert_eq!(local_maxima(&[0.0, 1.0, 0.0], MIN_PROMINENCE), vec![1]);
    }

    #[test]
    fn negativity_crossings_interpolated() {
        let mut recs = records_from(&[0.0; 5], 1.0);
        for (r, n) in recs.iter_mut().zip([0.5, 0.0, 0.0, 0.3, 0.6]) {
            r.negativity = n;
        }
        let s = summarize(&recs).unwrap();
        assert_eq!(s.negativity_zeros.len(), 2);
        assert!((s.negativity_zeros[0] - 1.0).abs() < 1e-5);
        assert!((s.negativity_zeros[1] - 2.0).abs() < 1e-4);
    }

    #[test]
    fn alpha_and_beta_windows() {
        // maxima at t = 1, 3, 5 with minima 0.8 then 0.2 in between
        let ul = [0.0, 1.0, 0.8, 1.0, 0.2, 1.0, 0.5];
        let s = summarize(&records_from(&ul, 1.0)).unwrap();
        assert_eq!(s.first_alpha_minimum.unwrap().value, 0.8);
        let beta = s.first_beta_minimum.unwrap();
        assert_eq!((beta.t_gamma, beta.value), (4.0, 0.2));
        assert!(s.ul_max.value >= s.ul_min.value);
    }
}
