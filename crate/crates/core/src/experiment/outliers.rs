//! Per-channel robust outlier rejection.
//!
//! A sample is dropped when any of its six channels lies further than
//! `threshold * 1.4826 * MAD` from that channel's median. 1.4826 scales the
//! median absolute deviation to a normal standard deviation. When more than
//! half of a channel is identical the MAD collapses to zero; the scale then
//! falls back to `1.2533 * mean absolute deviation` (the normal-consistent
//! mean deviation), and a channel with zero spread under both is left alone.

use super::sensor::SensorSample;

pub const DEFAULT_THRESHOLD_SIGMA: f64 = 3.0;

const MAD_TO_SIGMA: f64 = 1.4826;
const MEAN_AD_TO_SIGMA: f64 = 1.253_314;

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Robust centre and sigma-equivalent spread of one channel.
fn centre_and_scale(values: &[f64]) -> (f64, f64) {
    let mut buf = values.to_vec();
    let centre = median(&mut buf);
    let mut dev: Vec<f64> = values.iter().map(|v| (v - centre).abs()).collect();
    let mean_ad = dev.iter().sum::<f64>() / dev.len() as f64;
    let mad = median(&mut dev);
    if mad > 0.0 {
        (centre, MAD_TO_SIGMA * mad)
    } else {
        (centre, MEAN_AD_TO_SIGMA * mean_ad)
    }
}

/// Drops samples with any channel beyond `threshold_sigma` robust deviations.
///
/// Order of the retained samples is preserved.
pub fn remove_outliers(samples: &[SensorSample], threshold_sigma: f64) -> Vec<SensorSample> {
    if samples.is_empty() {
        return Vec::new();
    }
    let limits: Vec<(f64, f64)> = (0..6)
        .map(|ch| {
            let column: Vec<f64> = samples.iter().map(|s| s.wrench.channels()[ch]).collect();
            centre_and_scale(&column)
        })
        .collect();
    samples
        .iter()
        .filter(|s| {
            s.wrench
                .channels()
                .iter()
                .zip(&limits)
                .all(|(v, &(centre, scale))| {
                    scale == 0.0 || (v - centre).abs() <= threshold_sigma * scale
                })
        })
        .copied()
        .collect()
}
