//! Period analysis of the Kronecker sequence.
//!
//! Given a block of length `l`, pick an even multiple `L` of `l` that is a
//! period of the Jacobi sequence with `D_L = I mod 4`, write
//! `D_L = I + 2^m U` with `U` not entirely even, and let `e = v_2(u)` for
//! the lower-left entry `u` of `U`. A convergent `k < L` with
//! `s_k = 3 mod 4` and `2^{m+e} | t_k` is critical; the Kronecker sequence
//! is aperiodic exactly when one exists. Otherwise it has period `L`, or
//! `2L` if some `k < L` has `s_k = 3 mod 4` and `v_2(t_k) = m + e - 1`.

use num_bigint::BigUint;

use crate::cf::{matrix_at, PeriodicCF};
use crate::error::{Error, Result};
use crate::symbols::{jacobi_sequence, SymbolValue};
use crate::twoadic::{mod4, valuation, Mod2kMatrix, TwoAdicWalker};

pub const DEFAULT_D_MAX: usize = 24;
pub const DEFAULT_PRECISION: u32 = 128;
pub const MAX_PRECISION: u32 = 4096;
pub const DEFAULT_CASCADE_DEPTH: usize = 8;

/// Number of shifted windows of length `L` compared when confirming that
/// `L` is a period of the Jacobi sequence.
pub const JACOBI_CHECK_PERIODS: usize = 2;

/// Smallest even `L = d l`, `d <= d_max`, with `D_L = I mod 4` that is also
/// a period of the Jacobi sequence on `JACOBI_CHECK_PERIODS * L` shifts.
pub fn find_period(cf: &PeriodicCF, d_max: usize) -> Result<usize> {
    let l = cf.len();
    let limit = d_max * l;
    // (s_k, t_k) mod 4 for k = -1 ..= limit - 1, stored at k + 1
    let mut residues: Vec<(u8, u8)> = Vec::with_capacity(limit + 1);
    residues.push((1, 0));
    let (mut prev, mut cur) = ((0u8, 1u8), (1u8, 0u8));
    for k in 0..limit {
        let a = mod4(cf.quotient(k as u64));
        let next = ((a * cur.0 + prev.0) & 3, (a * cur.1 + prev.1) & 3);
        prev = cur;
        cur = next;
        residues.push(cur);
    }

    let mut jacobi = Vec::new();
    for d in 1..=d_max {
        let period = d * l;
        if period % 2 == 1 {
            continue;
        }
        let (s1, t1) = residues[period];
        let (s2, t2) = residues[period - 1];
        if (s1, s2, t1, t2) != (1, 0, 0, 1) {
            continue;
        }
        if repeats_jacobi(cf, period, &mut jacobi) {
            return Ok(period);
        }
    }
    Err(Error::NoPeriodFound { d_max })
}

fn repeats_jacobi(cf: &PeriodicCF, period: usize, cache: &mut Vec<SymbolValue>) -> bool {
    let needed = (JACOBI_CHECK_PERIODS + 1) * period;
    if cache.len() < needed {
        *cache = jacobi_sequence(cf, needed);
    }
    (0..JACOBI_CHECK_PERIODS * period).all(|k| cache[k] == cache[k + period])
}

/// Accepts a caller-chosen `L` if it meets the same conditions as
/// [`find_period`]: an even multiple of `l`, `D_L = I mod 4`, and a period
/// of the Jacobi sequence.
pub fn check_period(cf: &PeriodicCF, period: usize) -> Result<usize> {
    let admissible = period > 0
        && period.is_multiple_of(2)
        && period.is_multiple_of(cf.len())
        && matrix_at(cf, period as u64 - 1).is_identity_mod4()
        && repeats_jacobi(cf, period, &mut Vec::new());
    if admissible {
        Ok(period)
    } else {
        Err(Error::InvalidPeriod { period })
    }
}

/// `D_L = I + 2^m U` with `U` reduced mod `2^bits`, and `e = v_2(u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub period: usize,
    pub m: u32,
    pub e: u32,
    pub u: Mod2kMatrix,
}

impl Decomposition {
    /// `m + e`, the 2-adic threshold for criticality.
    pub fn threshold(&self) -> u64 {
        u64::from(self.m + self.e)
    }

    pub fn precision(&self) -> u32 {
        self.u.bits()
    }
}

pub fn decompose(cf: &PeriodicCF, period: usize, bits: u32) -> Result<Decomposition> {
    if period == 0 {
        return Err(Error::NotIdentityMod4 { period });
    }
    let d = matrix_at(cf, period as u64 - 1);
    if !d.is_identity_mod4() {
        return Err(Error::NotIdentityMod4 { period });
    }
    let [[s, s_prev], [t, t_prev]] = &d.entries;
    let diff = [[s - 1u32, s_prev.clone()], [t.clone(), t_prev - 1u32]];
    let m = diff
        .iter()
        .flatten()
        .filter_map(valuation)
        .min()
        .expect("t_{L-1} is positive");
    let e = valuation(t).expect("t_{L-1} is positive") - m;
    if e + 2 > u64::from(bits).saturating_sub(m) {
        return Err(Error::PrecisionExhausted { bits });
    }
    let m = m as u32;
    let u = Mod2kMatrix::new(bits, diff.map(|row| row.map(|x| x >> m)));
    Ok(Decomposition {
        period,
        m,
        e: e as u32,
        u,
    })
}

/// A convergent picked out by [`critical_scan`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanHit {
    pub k: usize,
    pub s: BigUint,
    pub t: BigUint,
    pub valuation: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CriticalScan {
    /// `k < L`, `s_k = 3 mod 4`, `v_2(t_k) >= m + e`.
    pub critical: Vec<ScanHit>,
    /// `k < L`, `s_k = 3 mod 4`, `v_2(t_k) = m + e - 1`.
    pub subcritical: Vec<ScanHit>,
}

pub fn critical_scan(cf: &PeriodicCF, period: usize, m: u32, e: u32) -> CriticalScan {
    let threshold = u64::from(m + e);
    let mut scan = CriticalScan::default();
    for c in cf.convergents().take(period) {
        if mod4(&c.s) != 3 {
            continue;
        }
        let Some(v) = valuation(&c.t) else { continue };
        let hit = || ScanHit {
            k: c.k as usize,
            s: c.s.clone(),
            t: c.t.clone(),
            valuation: v,
        };
        if v >= threshold {
            scan.critical.push(hit());
        } else if v + 1 == threshold {
            scan.subcritical.push(hit());
        }
    }
    scan
}

/// `v_2` of the lower-left entry of `D_{2^r L} - I`, by `r` squarings of
/// `D_L` mod `2^bits`.
pub fn threshold_valuation(cf: &PeriodicCF, period: usize, r: u32, bits: u32) -> Result<u64> {
    let walker = TwoAdicWalker::new(cf, bits);
    let mut d = walker.matrix_at(period as u64 - 1);
    for _ in 0..r {
        d = d.square();
    }
    match valuation(d.lower_left()) {
        Some(v) if v + 2 <= u64::from(bits) => Ok(v),
        _ => Err(Error::PrecisionExhausted { bits }),
    }
}

/// One level `(k_j, r_j)`: `s_{k_j}/t_{k_j}` is critical with respect to
/// `2^{r_j} L` but not `2^{r_j + 1} L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CascadeStep {
    pub k: u64,
    pub r: u32,
}

impl CascadeStep {
    /// `2^{r+1} L`: the Kronecker symbol at `k + d 2^{r+1} L` is `(-1)^d`
    /// times the one at `k`.
    pub fn flip_stride(&self, period: usize) -> Option<u64> {
        1u64.checked_shl(self.r + 1)?.checked_mul(period as u64)
    }
}

/// Follows `k_{j+1} = k_j + 2^{r_j} L` for `depth` levels, reading
/// `v_2(t_{k_j})` mod `2^bits`.
pub fn cascade(
    cf: &PeriodicCF,
    dec: &Decomposition,
    first_critical: u64,
    depth: usize,
    bits: u32,
) -> Result<Vec<CascadeStep>> {
    let walker = TwoAdicWalker::new(cf, bits);
    let threshold = dec.threshold();
    let period = dec.period as u64;
    let mut steps = Vec::with_capacity(depth);
    let mut k = first_critical;
    for level in 0..depth {
        let d = walker.matrix_at(k);
        let v = match valuation(d.lower_left()) {
            Some(v) if v + 2 < u64::from(bits) => v,
            _ => return Err(Error::PrecisionExhausted { bits }),
        };
        if mod4(d.upper_left()) != 3 || v < threshold {
            return Err(Error::NotCritical { index: k });
        }
        let r = (v - threshold) as u32;
        steps.push(CascadeStep { k, r });
        if level + 1 < depth {
            k = 1u64
                .checked_shl(r)
                .and_then(|stride| stride.checked_mul(period))
                .and_then(|stride| k.checked_add(stride))
                .ok_or(Error::IndexOverflow)?;
        }
    }
    Ok(steps)
}

/// Retries `op` with doubled precision on `PrecisionExhausted`.
pub fn with_escalation<T>(
    start: u32,
    max: u32,
    mut op: impl FnMut(u32) -> Result<T>,
) -> Result<(T, u32)> {
    let mut bits = start;
    loop {
        match op(bits) {
            Err(Error::PrecisionExhausted { .. }) if bits < max => {
                bits = bits.saturating_mul(2).min(max);
            }
            other => return other.map(|v| (v, bits)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    PeriodicL {
        period: usize,
    },
    Periodic2L {
        period: usize,
        witness: usize,
    },
    Aperiodic {
        first_critical: usize,
        cascade: Vec<CascadeStep>,
    },
}

impl Classification {
    /// Period of the Kronecker sequence, `None` when aperiodic.
    pub fn period(&self) -> Option<usize> {
        match self {
            Classification::PeriodicL { period } | Classification::Periodic2L { period, .. } => {
                Some(*period)
            }
            Classification::Aperiodic { .. } => None,
        }
    }

    pub fn is_aperiodic(&self) -> bool {
        matches!(self, Classification::Aperiodic { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Classification::PeriodicL { .. } => "periodic-L",
            Classification::Periodic2L { .. } => "periodic-2L",
            Classification::Aperiodic { .. } => "aperiodic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub d_max: usize,
    pub precision: u32,
    pub max_precision: u32,
    pub cascade_depth: usize,
    /// Use this `L` instead of searching; validated by [`check_period`].
    pub period: Option<usize>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            d_max: DEFAULT_D_MAX,
            precision: DEFAULT_PRECISION,
            max_precision: MAX_PRECISION,
            cascade_depth: DEFAULT_CASCADE_DEPTH,
            period: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodAnalysis {
    pub cf: PeriodicCF,
    pub decomposition: Decomposition,
    pub scan: CriticalScan,
    pub classification: Classification,
    /// Precision actually used after escalation.
    pub precision: u32,
}

impl PeriodAnalysis {
    pub fn period(&self) -> usize {
        self.decomposition.period
    }

    pub fn cascade(&self) -> &[CascadeStep] {
        match &self.classification {
            Classification::Aperiodic { cascade, .. } => cascade,
            _ => &[],
        }
    }
}

pub fn analyze(cf: &PeriodicCF, config: &AnalysisConfig) -> Result<PeriodAnalysis> {
    let period = match config.period {
        Some(p) => check_period(cf, p)?,
        None => find_period(cf, config.d_max)?,
    };
    let (decomposition, mut precision) =
        with_escalation(config.precision, config.max_precision, |bits| {
            decompose(cf, period, bits)
        })?;
    let scan = critical_scan(cf, period, decomposition.m, decomposition.e);
    let classification = if let Some(first) = scan.critical.first() {
        let (steps, bits) = if config.cascade_depth == 0 {
            (Vec::new(), precision)
        } else {
            with_escalation(precision, config.max_precision, |bits| {
                cascade(
                    cf,
                    &decomposition,
                    first.k as u64,
                    config.cascade_depth,
                    bits,
                )
            })?
        };
        precision = bits;
        Classification::Aperiodic {
            first_critical: first.k,
            cascade: steps,
        }
    } else if let Some(w) = scan.subcritical.first() {
        Classification::Periodic2L {
            period: 2 * period,
            witness: w.k,
        }
    } else {
        Classification::PeriodicL { period }
    };
    Ok(PeriodAnalysis {
        cf: cf.clone(),
        decomposition,
        scan,
        classification,
        precision,
    })
}

pub fn classify(cf: &PeriodicCF) -> Result<Classification> {
    analyze(cf, &AnalysisConfig::default()).map(|a| a.classification)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block(q: &[u64]) -> PeriodicCF {
        PeriodicCF::from_u64s(q).unwrap()
    }

    #[test]
    fn periods_of_examples() {
        assert_eq!(find_period(&block(&[1, 2, 3]), 24), Ok(6));
        // D_12 = I mod 4 for [1,2,5] but the Jacobi sequence only repeats up
        // to sign after 12 terms; 24 is the first genuine period.
        assert_eq!(find_period(&block(&[1, 2, 5]), 24), Ok(24));
        assert_eq!(find_period(&block(&[1, 2, 2]), 24), Ok(36));
        assert_eq!(
            find_period(&block(&[1, 2, 2]), 6),
            Err(Error::NoPeriodFound { d_max: 6 })
        );
    }

    #[test]
    fn caller_chosen_periods() {
        let cf = block(&[1, 2, 2]);
        assert_eq!(check_period(&cf, 72), Ok(72));
        assert_eq!(
            check_period(&cf, 18),
            Err(Error::InvalidPeriod { period: 18 })
        );
        assert_eq!(
            check_period(&cf, 35),
            Err(Error::InvalidPeriod { period: 35 })
        );
        let cf = block(&[1, 2, 5]);
        assert_eq!(
            check_period(&cf, 12),
            Err(Error::InvalidPeriod { period: 12 })
        );
        let config = AnalysisConfig {
            period: Some(48),
            ..AnalysisConfig::default()
        };
        let a = analyze(&cf, &config).unwrap();
        assert_eq!(
            (a.period(), a.decomposition.m, a.decomposition.e),
            (48, 4, 0)
        );
        assert!(a.classification.is_aperiodic());
    }

    #[test]
    fn smallest_mod4_identity_need_not_be_jacobi_period() {
        // D_18 = I mod 4 for [1,2,2], but 18 is not a period of the Jacobi sequence.
        let cf = block(&[1, 2, 2]);
        assert!(matrix_at(&cf, 17).is_identity_mod4());
        let j = jacobi_sequence(&cf, 54);
        assert!((0..36).any(|k| j[k] != j[k + 18]));
    }

    #[test]
    fn decompositions_of_examples() {
        let d = decompose(&block(&[1, 2, 3]), 6, 128).unwrap();
        assert_eq!((d.m, d.e), (2, 0));
        assert_eq!(d.u.lower_left(), &BigUint::from(21u32));

        let d = decompose(&block(&[1, 2, 5]), 12, 128).unwrap();
        assert_eq!((d.m, d.e), (2, 0));

        let d = decompose(&block(&[1, 2, 2]), 36, 128).unwrap();
        assert_eq!((d.m, d.e), (3, 1));
    }

    #[test]
    fn decompose_rejects_non_identity() {
        assert_eq!(
            decompose(&block(&[1, 2, 3]), 3, 128),
            Err(Error::NotIdentityMod4 { period: 3 })
        );
        assert_eq!(
            decompose(&block(&[1, 2, 2]), 36, 4),
            Err(Error::PrecisionExhausted { bits: 4 })
        );
    }

    #[test]
    fn scans_of_examples() {
        let scan = critical_scan(&block(&[1, 2, 3]), 6, 2, 0);
        assert!(scan.critical.is_empty());
        assert_eq!(
            scan.subcritical.iter().map(|h| h.k).collect::<Vec<_>>(),
            vec![1]
        );

        let scan = critical_scan(&block(&[1, 2, 5]), 12, 2, 0);
        assert_eq!(scan.critical[0].k, 7);
        assert_eq!(scan.critical[0].t, BigUint::from(668u32));

        let scan = critical_scan(&block(&[1, 2, 2]), 36, 3, 1);
        assert_eq!(scan.critical[0].k, 6);
        assert_eq!(scan.critical[0].valuation, 6);
    }

    #[test]
    fn classification_of_examples() {
        assert_eq!(
            classify(&block(&[1, 2, 3])),
            Ok(Classification::Periodic2L {
                period: 12,
                witness: 1
            })
        );
        let c = classify(&block(&[1, 2, 5])).unwrap();
        assert!(matches!(
            c,
            Classification::Aperiodic {
                first_critical: 19,
                ..
            }
        ));
        let c = classify(&block(&[1, 2, 2])).unwrap();
        assert!(matches!(
            c,
            Classification::Aperiodic {
                first_critical: 6,
                ..
            }
        ));
    }

    #[test]
    fn threshold_valuations() {
        let cf = block(&[1, 2, 5]);
        assert_eq!(threshold_valuation(&cf, 12, 0, 64), Ok(2));
        assert_eq!(threshold_valuation(&cf, 12, 1, 64), Ok(3));
        assert_eq!(
            threshold_valuation(&cf, 12, 62, 64),
            Err(Error::PrecisionExhausted { bits: 64 })
        );
    }

    #[test]
    fn cascade_of_example_two() {
        let cf = block(&[1, 2, 5]);
        let dec = decompose(&cf, 12, 128).unwrap();
        let steps = cascade(&cf, &dec, 7, 4, 128).unwrap();
        let pairs: Vec<_> = steps.iter().map(|s| (s.k, s.r)).collect();
        assert_eq!(pairs, vec![(7, 0), (19, 1), (43, 3), (139, 6)]);
        assert_eq!(
            cascade(&cf, &dec, 8, 1, 128),
            Err(Error::NotCritical { index: 8 })
        );
    }

    #[test]
    fn cascade_of_example_three() {
        let cf = block(&[1, 2, 2]);
        let dec = decompose(&cf, 36, 128).unwrap();
        let steps = cascade(&cf, &dec, 6, 1, 128).unwrap();
        assert_eq!(steps, vec![CascadeStep { k: 6, r: 2 }]);
    }

    #[test]
    fn escalation_doubles_until_success() {
        let cf = block(&[1, 2, 5]);
        let (v, bits) = with_escalation(16, 4096, |b| threshold_valuation(&cf, 12, 20, b)).unwrap();
        assert_eq!(v, 22);
        assert_eq!(bits, 32);
        assert!(with_escalation(8, 16, |b| threshold_valuation(&cf, 12, 20, b)).is_err());
    }
}
