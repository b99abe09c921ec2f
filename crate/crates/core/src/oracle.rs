//! Brute-force checks of the classification on finite windows.
//!
//! Aperiodicity cannot be observed on a finite window, so the oracle
//! falsifies every candidate period up to a bound instead. For aperiodic
//! blocks the cascade supplies cheap witnesses: the symbols at `k_j` and
//! `k_j + d 2^{r_j+1} L` differ for odd `d`, and any period `p` dividing
//! that distance is refuted by the pair.

use num_integer::Integer;

use crate::cf::PeriodicCF;
use crate::error::{Error, Result};
use crate::period::{analyze, AnalysisConfig, Classification, PeriodAnalysis};
use crate::symbols::{kronecker_sequence, Sign};

pub const DEFAULT_WINDOW: usize = 600;
pub const MIN_WINDOW: usize = 4;

/// A pair of indices `i < j`, `j = i mod p`, whose symbols differ.
pub type Witness = (usize, usize);

/// Smallest `p <= N/2` with `seq[k] == seq[k + p]` for every valid `k`.
pub fn empirical_period<T: PartialEq>(seq: &[T]) -> Result<Option<usize>> {
    if seq.len() < MIN_WINDOW {
        return Err(Error::WindowTooShort {
            len: seq.len(),
            needed: MIN_WINDOW,
        });
    }
    Ok((1..=seq.len() / 2).find(|&p| first_mismatch(seq, p).is_none()))
}

/// First `(k, k + p)` with differing entries.
pub fn first_mismatch<T: PartialEq>(seq: &[T], p: usize) -> Option<Witness> {
    (0..seq.len().saturating_sub(p))
        .find(|&k| seq[k] != seq[k + p])
        .map(|k| (k, k + p))
}

/// Witness from the cascade of an aperiodic analysis, if one fits the window.
pub fn cascade_witness(analysis: &PeriodAnalysis, seq: &[Sign], p: usize) -> Option<Witness> {
    let period = analysis.period();
    analysis.cascade().iter().find_map(|step| {
        let stride = step.flip_stride(period)?;
        let stride = usize::try_from(stride).ok()?;
        // smallest odd d with p | d * stride
        let d = p / p.gcd(&stride);
        if d.is_multiple_of(2) {
            return None;
        }
        let i = usize::try_from(step.k).ok()?;
        let j = i.checked_add(d.checked_mul(stride)?)?;
        (j < seq.len() && seq[i] != seq[j]).then_some((i, j))
    })
}

fn witness_for(analysis: &PeriodAnalysis, seq: &[Sign], p: usize) -> Option<Witness> {
    if analysis.classification.is_aperiodic() {
        if let Some(w) = cascade_witness(analysis, seq, p) {
            return Some(w);
        }
    }
    first_mismatch(seq, p)
}

/// Looks for a pair of indices refuting period `p` on the first `window`
/// Kronecker symbols.
pub fn falsify_period(cf: &PeriodicCF, p: usize, window: usize) -> Result<Option<Witness>> {
    if p == 0 || window < 2 * p {
        return Err(Error::WindowTooShort {
            len: window,
            needed: 2 * p.max(1),
        });
    }
    let analysis = analyze(cf, &AnalysisConfig::default())?;
    let seq = kronecker_sequence(cf, window);
    Ok(witness_for(&analysis, &seq, p))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodReport {
    pub window_length: usize,
    pub empirical_period: Option<usize>,
    pub falsified_periods: Vec<(usize, Witness)>,
    pub verdict_agreement: bool,
}

impl PeriodReport {
    pub fn is_falsified(&self, p: usize) -> bool {
        self.falsified_periods.iter().any(|&(q, _)| q == p)
    }
}

/// Compares the classification against the first `window` Kronecker symbols,
/// testing every candidate period `1..=max_period`.
pub fn cross_check(cf: &PeriodicCF, window: usize, max_period: usize) -> Result<PeriodReport> {
    let analysis = analyze(cf, &AnalysisConfig::default())?;
    cross_check_analysis(&analysis, window, max_period)
}

pub fn cross_check_analysis(
    analysis: &PeriodAnalysis,
    window: usize,
    max_period: usize,
) -> Result<PeriodReport> {
    let needed = (2 * max_period).max(MIN_WINDOW);
    if window < needed {
        return Err(Error::WindowTooShort {
            len: window,
            needed,
        });
    }
    let seq = kronecker_sequence(&analysis.cf, window);
    let falsified_periods: Vec<_> = (1..=max_period)
        .filter_map(|p| witness_for(analysis, &seq, p).map(|w| (p, w)))
        .collect();
    let empirical = empirical_period(&seq)?;

    let base = analysis.period();
    let problem = match &analysis.classification {
        Classification::PeriodicL { period } => first_mismatch(&seq, *period)
            .map(|(i, j)| format!("claimed period {period} broken at ({i}, {j})")),
        Classification::Periodic2L { period, witness } => {
            if let Some((i, j)) = first_mismatch(&seq, *period) {
                Some(format!("claimed period {period} broken at ({i}, {j})"))
            } else if witness + base < seq.len() && seq[*witness] == seq[witness + base] {
                Some(format!(
                    "subcritical index {witness} does not break period {base}"
                ))
            } else {
                None
            }
        }
        Classification::Aperiodic { .. } => (1..=max_period)
            .find(|&p| {
                falsified_periods
                    .binary_search_by_key(&p, |&(q, _)| q)
                    .is_err()
            })
            .map(|p| format!("candidate period {p} survives a window of {window}")),
    };
    if let Some(msg) = problem {
        return Err(Error::OracleMismatch(msg));
    }
    Ok(PeriodReport {
        window_length: window,
        empirical_period: empirical,
        falsified_periods,
        verdict_agreement: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block(q: &[u64]) -> PeriodicCF {
        PeriodicCF::from_u64s(q).unwrap()
    }

    #[test]
    fn alternating_sequence() {
        let seq = [1, -1, 1, -1, 1, -1];
        assert_eq!(empirical_period(&seq), Ok(Some(2)));
        assert_eq!(
            empirical_period(&[1, 2, 3]),
            Err(Error::WindowTooShort { len: 3, needed: 4 })
        );
        assert_eq!(empirical_period(&[1, 2, 3, 4]), Ok(None));
    }

    #[test]
    fn example_one_period() {
        let seq = kronecker_sequence(&block(&[1, 2, 3]), 120);
        assert_eq!(empirical_period(&seq), Ok(Some(12)));
    }

    #[test]
    fn example_two_has_no_period_in_window() {
        let seq = kronecker_sequence(&block(&[1, 2, 5]), 600);
        assert_eq!(empirical_period(&seq), Ok(None));
    }

    #[test]
    fn falsification_examples() {
        let cf = block(&[1, 2, 5]);
        // first cascade level is (19, 0) with L = 24: flip at 19 + 2 * 24
        assert_eq!(falsify_period(&cf, 12, 100), Ok(Some((19, 67))));
        let cf = block(&[1, 2, 3]);
        assert_eq!(falsify_period(&cf, 12, 120), Ok(None));
        let w = falsify_period(&cf, 6, 60).unwrap().unwrap();
        assert_eq!((w.1 - w.0) % 6, 0);
        assert!(falsify_period(&cf, 40, 60).is_err());
    }

    #[test]
    fn cross_check_examples() {
        let r = cross_check(&block(&[1, 2, 3]), 240, 60).unwrap();
        assert!(r.verdict_agreement);
        assert_eq!(r.empirical_period, Some(12));
        assert!(!r.is_falsified(12) && r.is_falsified(6));

        let r = cross_check(&block(&[1, 2, 5]), 600, 48).unwrap();
        assert!((1..=48).all(|p| r.is_falsified(p)));

        assert!(
            cross_check(&block(&[2]), 100, 20)
                .unwrap()
                .verdict_agreement
        );
        assert!(matches!(
            cross_check(&block(&[2]), 30, 20),
            Err(Error::WindowTooShort { .. })
        ));
    }
}
