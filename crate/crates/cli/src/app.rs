use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kroncf::oracle::cross_check_analysis;
use kroncf::symbols::all_sequences;
use kroncf::{analyze, AnalysisConfig, Classification, PeriodAnalysis, PeriodicCF};
use rayon::prelude::*;
use thiserror::Error;

use crate::parse::{parse_block, ParseError};
use crate::report::{
    AnalysisReport, BatchRecord, CascadeRecord, ConvergentRow, ErrorRecord, OracleSummary,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_APERIODIC: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "kroncf",
    version,
    about = "Kronecker symbols of continued fraction convergents"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalysisArgs {
    /// Starting 2-adic precision in bits; doubled on demand.
    #[arg(long, env = "KRONCF_PRECISION", default_value_t = kroncf::period::DEFAULT_PRECISION)]
    pub precision: u32,
    /// Use this L instead of searching for it.
    #[arg(long)]
    pub period: Option<usize>,
}

impl AnalysisArgs {
    fn config(&self, depth: usize) -> Result<AnalysisConfig, CliError> {
        if self.precision == 0 {
            return Err(CliError::Usage("--precision must be positive".into()));
        }
        Ok(AnalysisConfig {
            precision: self.precision,
            max_precision: self.precision.max(kroncf::period::MAX_PRECISION),
            cascade_depth: depth,
            period: self.period,
            ..AnalysisConfig::default()
        })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print convergents with their symbols.
    Expand {
        /// Block such as "1,2,3" or "[1,2,3]"; "-" reads stdin.
        block: String,
        #[arg(long, default_value_t = 12)]
        count: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Classify the Kronecker sequence of a block.
    Analyze {
        block: String,
        #[command(flatten)]
        analysis: AnalysisArgs,
        #[arg(long, default_value_t = kroncf::period::DEFAULT_CASCADE_DEPTH)]
        depth: usize,
        /// Also run the brute-force oracle.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        common: Common,
    },
    /// List the critical cascade of an aperiodic block.
    Cascade {
        block: String,
        #[arg(long, default_value_t = kroncf::period::DEFAULT_CASCADE_DEPTH)]
        depth: usize,
        #[command(flatten)]
        analysis: AnalysisArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Check the classification against a finite window of symbols.
    Verify {
        block: String,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        analysis: AnalysisArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Analyze one block per line of a file ("-" for stdin).
    Batch {
        input: PathBuf,
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        analysis: AnalysisArgs,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
pub struct WindowArgs {
    /// Number of symbols the oracle looks at (default max(600, 2P)).
    #[arg(long)]
    pub window: Option<usize>,
    /// Largest candidate period tested (default 4L).
    #[arg(long)]
    pub max_period: Option<usize>,
}

impl WindowArgs {
    fn resolve(&self, period: usize) -> (usize, usize) {
        let max_period = self.max_period.unwrap_or(4 * period);
        let window = self
            .window
            .unwrap_or_else(|| kroncf::oracle::DEFAULT_WINDOW.max(2 * max_period));
        (window, max_period)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Analysis(#[from] kroncf::Error),
    #[error("block is not aperiodic ({0}); there is no cascade")]
    NotAperiodic(&'static str),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::NotAperiodic(_) => EXIT_USAGE,
            CliError::Analysis(kroncf::Error::OracleMismatch(_)) => EXIT_MISMATCH,
            CliError::Analysis(kroncf::Error::WindowTooShort { .. }) => EXIT_USAGE,
            CliError::Parse(_) | CliError::Analysis(_) | CliError::Io(_) | CliError::Csv(_) => {
                EXIT_INPUT
            }
        }
    }
}

fn read_block(arg: &str) -> Result<PeriodicCF, CliError> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(parse_block(&s)?)
    } else {
        Ok(parse_block(arg)?)
    }
}

fn emit(common: &Common, body: &str) -> Result<(), CliError> {
    match &common.output {
        Some(path) => fs::write(path, body)?,
        None => io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn csv_string(
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Right-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            rows.iter()
                .map(|r| r[c].len())
                .chain([header[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable") + "\n"
}

pub fn expand_rows(cf: &PeriodicCF, count: usize) -> Vec<ConvergentRow> {
    let (jac, rec, kro) = all_sequences(cf, count);
    cf.convergents()
        .take(count)
        .enumerate()
        .map(|(k, c)| ConvergentRow::new(k, &c.s, &c.t, jac[k], rec[k], kro[k].into()))
        .collect()
}

fn run_analysis(
    cf: &PeriodicCF,
    args: &AnalysisArgs,
    depth: usize,
) -> Result<PeriodAnalysis, CliError> {
    Ok(analyze(cf, &args.config(depth)?)?)
}

fn with_oracle(analysis: &PeriodAnalysis, window: &WindowArgs) -> Result<AnalysisReport, CliError> {
    let mut report = AnalysisReport::new(analysis);
    let (n, p) = window.resolve(analysis.period());
    let check = cross_check_analysis(analysis, n, p)?;
    report.oracle = Some(OracleSummary::new(&check, p));
    Ok(report)
}

fn classification_exit(c: &Classification) -> i32 {
    if c.is_aperiodic() {
        EXIT_APERIODIC
    } else {
        EXIT_OK
    }
}

fn render_report(report: &AnalysisReport, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
        Format::Csv => csv_string(&AnalysisReport::CSV_HEADER, [report.csv_row()])?,
    })
}

fn batch_record(
    line: usize,
    input: &str,
    analysis: &AnalysisArgs,
    window: &WindowArgs,
    oracle: bool,
) -> BatchRecord {
    let result = parse_block(input)
        .map_err(CliError::from)
        .and_then(|cf| run_analysis(&cf, analysis, kroncf::period::DEFAULT_CASCADE_DEPTH))
        .and_then(|a| {
            if oracle {
                with_oracle(&a, window)
            } else {
                Ok(AnalysisReport::new(&a))
            }
        });
    let (report, error) = match result {
        Ok(r) => (Some(r), None),
        Err(e) => (
            None,
            Some(ErrorRecord {
                code: e.exit_code(),
                message: e.to_string(),
            }),
        ),
    };
    BatchRecord {
        line,
        input: input.to_string(),
        report,
        error,
    }
}

/// Splits batch input into (1-based line number, block) pairs, skipping
/// blanks and `#` comments.
pub fn batch_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.split('#').next().unwrap_or("").trim()))
        .filter(|(_, line)| !line.is_empty())
        .collect()
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Expand {
            block,
            count,
            common,
        } => {
            let cf = read_block(&block)?;
            let rows = expand_rows(&cf, count);
            let body = match common.format {
                Format::Text => table(
                    &ConvergentRow::CSV_HEADER,
                    &rows.iter().map(|r| r.fields().to_vec()).collect::<Vec<_>>(),
                ),
                Format::Json => rows.iter().map(json_line).collect(),
                Format::Csv => csv_string(
                    &ConvergentRow::CSV_HEADER,
                    rows.iter().map(|r| r.fields().to_vec()),
                )?,
            };
            emit(&common, &body)?;
            Ok(EXIT_OK)
        }
        Command::Analyze {
            block,
            analysis,
            depth,
            oracle,
            window,
            common,
        } => {
            let cf = read_block(&block)?;
            let a = run_analysis(&cf, &analysis, depth)?;
            let report = if oracle {
                with_oracle(&a, &window)?
            } else {
                AnalysisReport::new(&a)
            };
            emit(&common, &render_report(&report, common.format)?)?;
            Ok(classification_exit(&a.classification))
        }
        Command::Cascade {
            block,
            depth,
            analysis,
            common,
        } => {
            let cf = read_block(&block)?;
            let a = run_analysis(&cf, &analysis, depth.max(1))?;
            if !a.classification.is_aperiodic() {
                return Err(CliError::NotAperiodic(a.classification.label()));
            }
            let rows: Vec<_> = a
                .cascade()
                .iter()
                .take(depth)
                .map(|s| CascadeRecord::new(s.k, s.r, a.period()))
                .collect();
            let header = ["k", "r", "stride"];
            let fields =
                |c: &CascadeRecord| vec![c.k.to_string(), c.r.to_string(), c.stride.clone()];
            let body = match common.format {
                Format::Text => {
                    format!("L = {}\n", a.period())
                        + &table(&header, &rows.iter().map(fields).collect::<Vec<_>>())
                }
                Format::Json => rows.iter().map(json_line).collect(),
                Format::Csv => csv_string(&header, rows.iter().map(fields))?,
            };
            emit(&common, &body)?;
            Ok(EXIT_APERIODIC)
        }
        Command::Verify {
            block,
            window,
            analysis,
            common,
        } => {
            let cf = read_block(&block)?;
            let a = run_analysis(&cf, &analysis, kroncf::period::DEFAULT_CASCADE_DEPTH)?;
            let report = with_oracle(&a, &window)?;
            let o = report.oracle.as_ref().expect("oracle ran");
            let body = match common.format {
                Format::Text => format!(
                    "{}: {}\nwindow {}, empirical period {}, {} of {} candidate periods falsified\nagreement\n",
                    report.block.join(","),
                    report.classification_text(),
                    o.window,
                    o.empirical_period.map_or("none".to_string(), |p| p.to_string()),
                    o.falsified.len(),
                    o.max_period,
                ),
                Format::Json => json_line(o),
                Format::Csv => csv_string(
                    &["window", "max_period", "empirical_period", "falsified", "agreement"],
                    [vec![
                        o.window.to_string(),
                        o.max_period.to_string(),
                        o.empirical_period.map_or(String::new(), |p| p.to_string()),
                        o.falsified.len().to_string(),
                        o.agreement.to_string(),
                    ]],
                )?,
            };
            emit(&common, &body)?;
            Ok(EXIT_OK)
        }
        Command::Batch {
            input,
            oracle,
            window,
            analysis,
            common,
        } => {
            let text = if input.as_os_str() == "-" {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            } else {
                fs::read_to_string(&input)?
            };
            analysis.config(0)?;
            let records: Vec<BatchRecord> = batch_lines(&text)
                .par_iter()
                .map(|&(line, block)| batch_record(line, block, &analysis, &window, oracle))
                .collect();
            let body = match common.format {
                Format::Json => records.iter().map(json_line).collect(),
                Format::Text => records
                    .iter()
                    .map(|r| match (&r.report, &r.error) {
                        (Some(rep), _) => format!(
                            "{}: [{}] L={} m={} e={} {}\n",
                            r.line,
                            rep.block.join(","),
                            rep.period,
                            rep.m,
                            rep.e,
                            rep.classification_text()
                        ),
                        (None, Some(err)) => format!("{}: error: {}\n", r.line, err.message),
                        (None, None) => unreachable!("record without report or error"),
                    })
                    .collect(),
                Format::Csv => {
                    let mut header = vec!["line", "error"];
                    header.extend(AnalysisReport::CSV_HEADER);
                    csv_string(
                        &header,
                        records.iter().map(|r| {
                            let mut row = vec![
                                r.line.to_string(),
                                r.error
                                    .as_ref()
                                    .map_or(String::new(), |e| e.message.clone()),
                            ];
                            match &r.report {
                                Some(rep) => row.extend(rep.csv_row()),
                                None => {
                                    row.push(r.input.clone());
                                    row.extend(
                                        (1..AnalysisReport::CSV_HEADER.len())
                                            .map(|_| String::new()),
                                    );
                                }
                            }
                            row
                        }),
                    )?
                }
            };
            emit(&common, &body)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args`, runs the command and reports errors on stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("kroncf: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_exit_codes() {
        let code = |e: CliError| e.exit_code();
        assert_eq!(
            code(kroncf::Error::OracleMismatch("x".into()).into()),
            EXIT_MISMATCH
        );
        assert_eq!(
            code(kroncf::Error::PrecisionExhausted { bits: 4096 }.into()),
            EXIT_INPUT
        );
        assert_eq!(code(CliError::NotAperiodic("periodic-L")), EXIT_USAGE);
    }

    #[test]
    fn batch_lines_skip_comments() {
        let text = "# header\n\n1,2 # trailing\n  3  \n#\n";
        assert_eq!(batch_lines(text), [(3, "1,2"), (4, "3")]);
    }
}
