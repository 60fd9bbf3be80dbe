use serde::{Deserialize, Serialize};

use super::SecurityError;
use crate::scalar::Real;

pub const DEFAULT_MAX_FPR: f64 = 0.005;
pub const DEFAULT_MIN_TPR: f64 = 0.975;
/// Search limit for the number of images.
pub const MAX_IMAGES: usize = 5000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CueRecovery {
    /// Images shown.
    pub images: usize,
    /// Correct labels needed to accept.
    pub threshold: usize,
}

/// `P[Bin(k, q) >= t]` for every `t` in `0..=k+1`.
pub fn binomial_upper_tails<T: Real>(k: usize, q: T) -> Vec<T> {
    let mut pmf = vec![T::zero(); k + 1];
    if q <= T::zero() {
        pmf[0] = T::one();
    } else if q >= T::one() {
        pmf[k] = T::one();
    } else {
        let (lq, lnq) = (q.ln(), (T::one() - q).ln());
        let mut ln_choose = T::zero();
        for (i, p) in pmf.iter_mut().enumerate() {
            if i > 0 {
                ln_choose = ln_choose + (T::count(k - i + 1) / T::count(i)).ln();
            }
            *p = (ln_choose + T::count(i) * lq + T::count(k - i) * lnq).exp();
        }
    }
    let mut tails = vec![T::zero(); k + 2];
    for i in (0..=k).rev() {
        tails[i] = tails[i + 1] + pmf[i];
    }
    tails
}

/// Fewest images `k`, with a pass threshold `t`, such that someone without
/// the primed memory (per-image accuracy `n`) passes with probability at most
/// `max_fpr` while the primed owner (accuracy `p`) passes with probability at
/// least `min_tpr`.
pub fn cue_recovery_min_images<T: Real>(p: T, n: T, max_fpr: T, min_tpr: T) -> Result<CueRecovery, SecurityError> {
    let unit = |x: T| x >= T::zero() && x <= T::one();
    if !unit(p) || !unit(n) || p <= n {
        return Err(SecurityError::InvalidPriming {
            p: p.as_f64(),
            n: n.as_f64(),
        });
    }
    if !(max_fpr > T::zero() && max_fpr < min_tpr && min_tpr < T::one()) {
        return Err(SecurityError::Config(format!(
            "need 0 < max_fpr < min_tpr < 1, got {max_fpr} and {min_tpr}"
        )));
    }
    for k in 1..=MAX_IMAGES {
        let tail_n = binomial_upper_tails(k, n);
        let tail_p = binomial_upper_tails(k, p);
        if let Some(t) = (0..=k + 1).find(|&t| tail_n[t] <= max_fpr) {
            if tail_p[t] >= min_tpr {
                return Ok(CueRecovery { images: k, threshold: t });
            }
        }
    }
    Err(SecurityError::Unreachable(format!(
        "no test with at most {MAX_IMAGES} images separates p={p} from n={n}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_separation() {
        let r = cue_recovery_min_images(1.0f64, 0.0, 0.005, 0.975).unwrap();
        assert_eq!(r, CueRecovery { images: 1, threshold: 1 });
    }

    #[test]
    fn tails_sum_to_one() {
        let t = binomial_upper_tails(20, 0.3f64);
        assert!((t[0] - 1.0).abs() < 1e-12);
        assert_eq!(t[21], 0.0);
    }

    #[test]
    fn invalid_priming() {
        assert!(matches!(
            cue_recovery_min_images(0.5f64, 0.5, 0.005, 0.975),
            Err(SecurityError::InvalidPriming { .. })
        ));
        assert!(cue_recovery_min_images(0.4f64, 0.5, 0.005, 0.975).is_err());
        assert!(cue_recovery_min_images(0.9f64, 0.5, 0.5, 0.4).is_err());
    }
}
