//! Serializable reports. Every big integer is carried as a decimal string.

use std::fmt::Write as _;

use kroncf::{
    quad_irrational_of, Classification, PeriodAnalysis, PeriodReport, ScanHit, SymbolValue,
};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticForm {
    pub p: String,
    pub d: String,
    pub q: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hit {
    pub k: usize,
    pub s: String,
    pub t: String,
    pub v2: u64,
}

impl From<&ScanHit> for Hit {
    fn from(h: &ScanHit) -> Self {
        Hit {
            k: h.k,
            s: h.s.to_string(),
            t: h.t.to_string(),
            v2: h.valuation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassificationRecord {
    PeriodicL { period: usize },
    Periodic2l { period: usize, witness: usize },
    Aperiodic { first_critical: usize },
}

impl From<&Classification> for ClassificationRecord {
    fn from(c: &Classification) -> Self {
        match c {
            Classification::PeriodicL { period } => {
                ClassificationRecord::PeriodicL { period: *period }
            }
            Classification::Periodic2L { period, witness } => ClassificationRecord::Periodic2l {
                period: *period,
                witness: *witness,
            },
            Classification::Aperiodic { first_critical, .. } => ClassificationRecord::Aperiodic {
                first_critical: *first_critical,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadeRecord {
    pub k: u64,
    pub r: u32,
    /// `2^(r+1) L`: the symbols at `k` and `k + d * stride` differ for odd `d`.
    pub stride: String,
}

impl CascadeRecord {
    pub fn new(k: u64, r: u32, period: usize) -> Self {
        CascadeRecord {
            k,
            r,
            stride: (BigUint::from(period) << (r + 1)).to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub window: usize,
    pub max_period: usize,
    pub empirical_period: Option<usize>,
    pub falsified: Vec<(usize, (usize, usize))>,
    pub agreement: bool,
}

impl OracleSummary {
    pub fn new(report: &PeriodReport, max_period: usize) -> Self {
        OracleSummary {
            window: report.window_length,
            max_period,
            empirical_period: report.empirical_period,
            falsified: report.falsified_periods.clone(),
            agreement: report.verdict_agreement,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub block: Vec<String>,
    pub l: usize,
    pub quadratic_irrational: QuadraticForm,
    #[serde(rename = "L")]
    pub period: usize,
    pub m: u32,
    pub e: u32,
    pub precision: u32,
    /// `U` reduced mod `2^precision`.
    pub u: [[String; 2]; 2],
    pub critical: Vec<Hit>,
    pub subcritical: Vec<Hit>,
    pub classification: ClassificationRecord,
    pub cascade: Vec<CascadeRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
}

impl AnalysisReport {
    pub fn new(a: &PeriodAnalysis) -> Self {
        let z = quad_irrational_of(&a.cf);
        let period = a.period();
        AnalysisReport {
            block: a.cf.quotients().iter().map(ToString::to_string).collect(),
            l: a.cf.len(),
            quadratic_irrational: QuadraticForm {
                p: z.p.to_string(),
                d: z.d.to_string(),
                q: z.q.to_string(),
            },
            period,
            m: a.decomposition.m,
            e: a.decomposition.e,
            precision: a.decomposition.precision(),
            u: a.decomposition
                .u
                .entries()
                .clone()
                .map(|row| row.map(|x| x.to_string())),
            critical: a.scan.critical.iter().map(Hit::from).collect(),
            subcritical: a.scan.subcritical.iter().map(Hit::from).collect(),
            classification: (&a.classification).into(),
            cascade: a
                .cascade()
                .iter()
                .map(|s| CascadeRecord::new(s.k, s.r, period))
                .collect(),
            oracle: None,
        }
    }

    pub fn is_aperiodic(&self) -> bool {
        matches!(self.classification, ClassificationRecord::Aperiodic { .. })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// `U` mod 16, as printed by the text format.
    pub fn u_mod16(&self) -> [[u8; 2]; 2] {
        self.u.clone().map(|row| {
            row.map(|x| {
                let n: BigUint = x.parse().expect("decimal entry");
                (n % 16u32).to_u32_digits().first().copied().unwrap_or(0) as u8
            })
        })
    }

    pub fn classification_text(&self) -> String {
        match &self.classification {
            ClassificationRecord::PeriodicL { period } => format!("periodic, period {period} (L)"),
            ClassificationRecord::Periodic2l { period, witness } => {
                format!("periodic, period {period} (2L), subcritical k={witness}")
            }
            ClassificationRecord::Aperiodic { first_critical } => {
                format!("aperiodic, first critical k={first_critical}")
            }
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let z = &self.quadratic_irrational;
        let hits = |hits: &[Hit]| -> String {
            if hits.is_empty() {
                return "none".into();
            }
            hits.iter()
                .map(|h| format!("k={} s={} t={} v2={}", h.k, h.s, h.t, h.v2))
                .collect::<Vec<_>>()
                .join("; ")
        };
        let u = self.u_mod16();
        writeln!(out, "block           [{}]", self.block.join(",")).unwrap();
        writeln!(out, "l               {}", self.l).unwrap();
        writeln!(out, "z               ({} + sqrt({}))/{}", z.p, z.d, z.q).unwrap();
        writeln!(out, "L               {}", self.period).unwrap();
        writeln!(out, "m               {}", self.m).unwrap();
        writeln!(out, "e               {}", self.e).unwrap();
        writeln!(
            out,
            "U mod 16        [[{}, {}], [{}, {}]]",
            u[0][0], u[0][1], u[1][0], u[1][1]
        )
        .unwrap();
        writeln!(out, "critical        {}", hits(&self.critical)).unwrap();
        writeln!(out, "subcritical     {}", hits(&self.subcritical)).unwrap();
        writeln!(out, "classification  {}", self.classification_text()).unwrap();
        if !self.cascade.is_empty() {
            let steps: Vec<_> = self
                .cascade
                .iter()
                .map(|c| format!("({}, {})", c.k, c.r))
                .collect();
            writeln!(out, "cascade         {}", steps.join(", ")).unwrap();
        }
        if let Some(o) = &self.oracle {
            let emp = o
                .empirical_period
                .map_or("none".to_string(), |p| p.to_string());
            writeln!(
                out,
                "oracle          window {}, empirical period {}, {}/{} candidates falsified, {}",
                o.window,
                emp,
                o.falsified.len(),
                o.max_period,
                if o.agreement { "agrees" } else { "disagrees" }
            )
            .unwrap();
        }
        out
    }

    pub const CSV_HEADER: [&'static str; 10] = [
        "block",
        "l",
        "L",
        "m",
        "e",
        "classification",
        "period",
        "first_critical",
        "critical",
        "subcritical",
    ];

    pub fn csv_row(&self) -> Vec<String> {
        let (label, period, first) = match &self.classification {
            ClassificationRecord::PeriodicL { period } => {
                ("periodic-L", period.to_string(), String::new())
            }
            ClassificationRecord::Periodic2l { period, .. } => {
                ("periodic-2L", period.to_string(), String::new())
            }
            ClassificationRecord::Aperiodic { first_critical } => {
                ("aperiodic", String::new(), first_critical.to_string())
            }
        };
        let ks = |hits: &[Hit]| {
            hits.iter()
                .map(|h| h.k.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        vec![
            format!("[{}]", self.block.join(",")),
            self.l.to_string(),
            self.period.to_string(),
            self.m.to_string(),
            self.e.to_string(),
            label.to_string(),
            period,
            first,
            ks(&self.critical),
            ks(&self.subcritical),
        ]
    }
}

/// One row of the convergent table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergentRow {
    pub k: usize,
    pub s: String,
    pub t: String,
    pub jacobi: String,
    pub reciprocal: String,
    pub kronecker: String,
}

impl ConvergentRow {
    pub const CSV_HEADER: [&'static str; 6] = ["k", "s", "t", "jacobi", "reciprocal", "kronecker"];

    pub fn new(
        k: usize,
        s: &BigUint,
        t: &BigUint,
        jacobi: SymbolValue,
        reciprocal: SymbolValue,
        kronecker: SymbolValue,
    ) -> Self {
        ConvergentRow {
            k,
            s: s.to_string(),
            t: t.to_string(),
            jacobi: jacobi.to_string(),
            reciprocal: reciprocal.to_string(),
            kronecker: kronecker.to_string(),
        }
    }

    pub fn fields(&self) -> [String; 6] {
        [
            self.k.to_string(),
            self.s.clone(),
            self.t.clone(),
            self.jacobi.clone(),
            self.reciprocal.clone(),
            self.kronecker.clone(),
        ]
    }
}

/// A batch record: a report or the error for that line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchRecord {
    pub line: usize,
    pub input: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<AnalysisReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub code: i32,
    pub message: String,
}
