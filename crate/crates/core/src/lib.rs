//! Convergents of purely periodic continued fractions, their Jacobi and
//! Kronecker symbol sequences, and an exact decision procedure for whether
//! the Kronecker sequence is periodic.
//!
//! ```
//! use kroncf::{classify, Classification, PeriodicCF};
//!
//! let cf = PeriodicCF::from_u64s(&[1, 2, 3]).unwrap();
//! assert_eq!(
//!     classify(&cf).unwrap(),
//!     Classification::Periodic2L { period: 12, witness: 1 }
//! );
//! ```

pub mod cf;
pub mod error;
pub mod oracle;
pub mod period;
pub mod symbols;
pub mod twoadic;

pub use cf::{
    cf_of_rational, convergents, matrix_at, normalize_period, quad_irrational_of, Convergent,
    ConvergentMatrix, Normalized, PeriodicCF, QuadIrrational,
};
pub use error::{Error, Result};
pub use oracle::{cross_check, empirical_period, falsify_period, PeriodReport, Witness};
pub use period::{
    analyze, cascade, check_period, classify, critical_scan, decompose, find_period,
    threshold_valuation, AnalysisConfig, CascadeStep, Classification, CriticalScan, Decomposition,
    PeriodAnalysis, ScanHit,
};
pub use symbols::{
    epsilon, jacobi, jacobi_sequence, kronecker, kronecker_sequence, reciprocal_jacobi_sequence,
    Sign, SymbolValue,
};
pub use twoadic::{matrix_at_mod2, valuation, Mod2kMatrix, TwoAdicWalker};
