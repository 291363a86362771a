//! Command-line front end.
//!
//! Output is deterministic: rows are sorted by eigenvalue or index, floats
//! carry 12 significant digits, and multiplicities are decimal strings in
//! JSON. Diagnostics go to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::cayley_oracle::{closed_walk_counts, oracle_multiplicity_table};
use crate::error::Error;
use crate::semicircle::{atom_position, semicircle_mass, SemicircleReport};
use crate::spectrum::{hook_bound, multiplicity_table, SpectrumTable};
use crate::factorial;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Histogram range for `semicircle`.
const HISTOGRAM_EDGE: f64 = 1.1;

#[derive(Parser, Debug)]
#[command(
    name = "star-spectrum",
    version,
    about = "Exact spectrum of the star-transposition Cayley graph of S_n"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// File for auxiliary output (the `semicircle` histogram CSV).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Oracle {
    Walk,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MomentSource {
    /// Dynamic programming over the group.
    Walk,
    /// Power sums of the multiplicity table.
    Table,
}

impl MomentSource {
    fn name(self) -> &'static str {
        match self {
            MomentSource::Walk => "walk",
            MomentSource::Table => "table",
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalue multiplicities from the tableau formula.
    Spectrum {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// List eigenvalues in [-(n-1), n-1] with multiplicity zero too.
        #[arg(long)]
        include_zeros: bool,
    },
    /// Compare the formula against the closed-walk oracle.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_enum, default_value_t = Oracle::Walk)]
        oracle: Oracle,
    },
    /// Closed-walk counts W_k and traces n! W_k for k = 0..=k_max.
    Moments {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        k_max: u32,
        #[arg(long, value_enum, default_value_t = MomentSource::Walk)]
        source: MomentSource,
    },
    /// Moment ratios, Kolmogorov distance and a histogram against the semicircle law.
    Semicircle {
        #[arg(long, required = true, num_args = 1.., value_delimiter = ',',
              value_parser = clap::value_parser!(u32).range(1..))]
        n: Vec<u32>,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        p_max: u32,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
        bins: u32,
    },
    /// Hook-shape lower bound next to the true multiplicity.
    Bound {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
    },
}

enum Failure {
    Lib(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Result of one subcommand: text for stdout plus an exit code.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK }
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(outcome) => {
            if let Err(e) = stdout.write_all(outcome.text.as_bytes()) {
                let _ = writeln!(stderr, "error: writing output: {e}");
                return EXIT_IO;
            }
            outcome.code
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::SizeLimit { .. } => EXIT_LIMIT,
                Error::InvalidArgument(_) => EXIT_USAGE,
            }
        }
        Err(Failure::Io(path, e)) => {
            let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
            EXIT_IO
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Spectrum { n, include_zeros } => {
            spectrum_cmd(n as usize, include_zeros, cli.format).map(Outcome::ok)
        }
        Command::Verify { n, oracle } => verify_cmd(n as usize, oracle, cli.format),
        Command::Moments { n, k_max, source } => {
            moments_cmd(n as usize, k_max as usize, source, cli.format).map(Outcome::ok)
        }
        Command::Semicircle {
            ref n,
            p_max,
            bins,
        } => {
            let ns: Vec<usize> = n.iter().map(|&v| v as usize).collect();
            semicircle_cmd(&ns, p_max as usize, bins as usize, cli.out.as_deref(), cli.format)
                .map(Outcome::ok)
        }
        Command::Bound { n } => bound_cmd(n as usize, cli.format).map(Outcome::ok),
    }
}

fn spectrum_cmd(n: usize, include_zeros: bool, format: Format) -> Result<String, Failure> {
    let table = multiplicity_table(n)?;
    let rows: Vec<(i64, BigUint)> = if include_zeros {
        table.full_range()
    } else {
        table.nonzero().map(|(k, m)| (k, m.clone())).collect()
    };
    Ok(match format {
        Format::Json => {
            let mut mul = Map::new();
            for (k, m) in &rows {
                mul.insert(k.to_string(), Value::String(m.to_string()));
            }
            json_line(&json!({ "n": n, "multiplicities": mul }))
        }
        Format::Csv => render_csv(
            &["eigenvalue", "multiplicity"],
            rows.iter().map(|(k, m)| vec![k.to_string(), m.to_string()]),
        ),
        Format::Table => render_table(
            &["eigenvalue", "multiplicity"],
            rows.iter().map(|(k, m)| vec![k.to_string(), m.to_string()]),
        ),
    })
}

fn verify_cmd(n: usize, oracle: Oracle, format: Format) -> Result<Outcome, Failure> {
    let Oracle::Walk = oracle;
    let expected = oracle_multiplicity_table(n)?;
    let actual = multiplicity_table(n)?;
    let radius = n as i64 - 1;
    let diff: Vec<(i64, BigUint, BigUint)> = (-radius..=radius)
        .map(|k| (k, actual.get(k), expected.get(k)))
        .filter(|(_, a, e)| a != e)
        .collect();
    let identical = diff.is_empty();
    let eigenvalues = actual.support().len();
    let total = actual.total();

    let text = match format {
        Format::Json => {
            let diff_json: Vec<Value> = diff
                .iter()
                .map(|(k, a, e)| {
                    json!({ "eigenvalue": k, "formula": a.to_string(), "oracle": e.to_string() })
                })
                .collect();
            json_line(&json!({
                "n": n,
                "oracle": "walk",
                "identical": identical,
                "eigenvalues": eigenvalues,
                "total": total.to_string(),
                "diff": diff_json,
            }))
        }
        Format::Csv => render_csv(
            &["eigenvalue", "formula", "oracle", "match"],
            (-radius..=radius).map(|k| {
                let (a, e) = (actual.get(k), expected.get(k));
                vec![k.to_string(), a.to_string(), e.to_string(), (a == e).to_string()]
            }),
        ),
        Format::Table => {
            if identical {
                format!("n = {n}: identical, {eigenvalues} eigenvalues, total {total}\n")
            } else {
                let mut s = format!("n = {n}: MISMATCH at {} eigenvalues\n", diff.len());
                s.push_str(&render_table(
                    &["eigenvalue", "formula", "oracle"],
                    diff.iter()
                        .map(|(k, a, e)| vec![k.to_string(), a.to_string(), e.to_string()]),
                ));
                s
            }
        }
    };
    Ok(Outcome {
        text,
        code: if identical { EXIT_OK } else { EXIT_MISMATCH },
    })
}

fn moments_cmd(
    n: usize,
    k_max: usize,
    source: MomentSource,
    format: Format,
) -> Result<String, Failure> {
    let fact = factorial(n);
    let walks: Vec<BigUint> = match source {
        MomentSource::Walk => closed_walk_counts(n, k_max)?.counts,
        MomentSource::Table => {
            let table = multiplicity_table(n)?;
            let fact = BigInt::from(fact.clone());
            (0..=k_max)
                .map(|k| {
                    let w = table.power_sum(k as u32) / &fact;
                    w.to_biguint().expect("even power sums are non-negative, odd ones vanish")
                })
                .collect()
        }
    };
    let rows: Vec<Vec<String>> = walks
        .iter()
        .enumerate()
        .map(|(k, w)| vec![k.to_string(), w.to_string(), (&fact * w).to_string()])
        .collect();
    Ok(match format {
        Format::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "k": r[0].parse::<u64>().unwrap(), "walks": r[1], "trace": r[2] }))
                .collect();
            json_line(&json!({
                "n": n,
                "k_max": k_max,
                "source": source.name(),
                "moments": list,
            }))
        }
        Format::Csv => render_csv(&["k", "walks", "trace"], rows),
        Format::Table => render_table(&["k", "walks", "trace"], rows),
    })
}

/// `(bin_left, bin_right, empirical, semicircle)` over `[-1.1, 1.1]`.
/// Atoms outside the range are counted in the nearest edge bin.
pub fn histogram(table: &SpectrumTable, bins: usize) -> Vec<(f64, f64, f64, f64)> {
    let width = 2.0 * HISTOGRAM_EDGE / bins as f64;
    let mut counts = vec![BigUint::zero(); bins];
    for (k, m) in table.nonzero() {
        let x = atom_position(table.n(), k);
        let raw = ((x + HISTOGRAM_EDGE) / width).floor();
        let idx = raw.clamp(0.0, (bins - 1) as f64) as usize;
        counts[idx] += m;
    }
    let total = BigInt::from(factorial(table.n()));
    counts
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let left = -HISTOGRAM_EDGE + i as f64 * width;
            let right = if i + 1 == bins {
                HISTOGRAM_EDGE
            } else {
                -HISTOGRAM_EDGE + (i + 1) as f64 * width
            };
            let empirical = num_rational::BigRational::new(BigInt::from(c), total.clone());
            let empirical = num_traits::ToPrimitive::to_f64(&empirical).expect("finite");
            let semi = semicircle_mass(left, right).expect("ordered bin edges");
            (left, right, empirical, semi)
        })
        .collect()
}

fn semicircle_cmd(
    ns: &[usize],
    p_max: usize,
    bins: usize,
    out: Option<&Path>,
    format: Format,
) -> Result<String, Failure> {
    let mut reports = Vec::with_capacity(ns.len());
    let mut csv = String::from("n,bin_left,bin_right,empirical_mass,semicircle_mass\n");
    for &n in ns {
        let table = multiplicity_table(n)?;
        reports.push(SemicircleReport::from_table(&table, p_max));
        for (l, r, e, s) in histogram(&table, bins) {
            csv.push_str(&format!("{n},{},{},{},{}\n", sig(l), sig(r), sig(e), sig(s)));
        }
    }
    if let Some(path) = out {
        fs::write(path, csv).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    }

    let mut headers = vec!["n".to_string(), "kolmogorov_distance".to_string()];
    headers.extend((1..=p_max).map(|p| format!("ratio_p{p}")));
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            let mut row = vec![r.n.to_string(), sig(r.kolmogorov_distance)];
            row.extend(r.moment_ratios.iter().map(|&(_, v)| sig(v)));
            row
        })
        .collect();
    let header_refs: Vec<&str> = headers.iter().map(String::as_str).collect();
    Ok(match format {
        Format::Json => {
            let list: Vec<Value> = reports
                .iter()
                .map(|r| {
                    let mut ratios = Map::new();
                    for &(p, v) in &r.moment_ratios {
                        ratios.insert(p.to_string(), sig_json(v));
                    }
                    json!({
                        "n": r.n,
                        "moment_ratios": ratios,
                        "kolmogorov_distance": sig_json(r.kolmogorov_distance),
                    })
                })
                .collect();
            json_line(&json!({
                "n_values": ns,
                "p_max": p_max,
                "bins": bins,
                "histogram": out.map(|p| p.display().to_string()),
                "reports": list,
            }))
        }
        Format::Csv => render_csv(&header_refs, rows),
        Format::Table => render_table(&header_refs, rows),
    })
}

fn bound_cmd(n: usize, format: Format) -> Result<String, Failure> {
    let table = multiplicity_table(n)?;
    let mut rows = Vec::with_capacity(n - 1);
    for l in 1..n {
        let bound = hook_bound(n, l)?;
        let up = table.get(l as i64);
        let down = table.get(-(l as i64));
        let satisfied = up >= bound && down >= bound;
        rows.push((l, bound, up, satisfied));
    }
    let string_rows = || {
        rows.iter()
            .map(|(l, b, m, s)| vec![l.to_string(), b.to_string(), m.to_string(), s.to_string()])
    };
    Ok(match format {
        Format::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|(l, b, m, s)| {
                    json!({
                        "l": l,
                        "bound": b.to_string(),
                        "multiplicity": m.to_string(),
                        "satisfied": s,
                    })
                })
                .collect();
            json_line(&json!({ "n": n, "rows": list }))
        }
        Format::Csv => render_csv(&["l", "bound", "multiplicity", "satisfied"], string_rows()),
        Format::Table => render_table(&["l", "bound", "multiplicity", "satisfied"], string_rows()),
    })
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

/// `x` rounded to 12 significant digits, in plain decimal notation.
pub fn sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn sig_json(x: f64) -> Value {
    let rounded: f64 = sig(x).parse().expect("decimal");
    json!(rounded)
}

fn render_csv<R, C>(headers: &[&str], rows: R) -> String
where
    R: IntoIterator<Item = C>,
    C: AsRef<[String]>,
{
    let mut s = headers.join(",");
    s.push('\n');
    for row in rows {
        s.push_str(&row.as_ref().join(","));
        s.push('\n');
    }
    s
}

/// Right-aligned columns separated by two spaces.
fn render_table<R, C>(headers: &[&str], rows: R) -> String
where
    R: IntoIterator<Item = C>,
    C: AsRef<[String]>,
{
    let rows: Vec<C> = rows.into_iter().collect();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row.as_ref()) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let mut s = cells
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.push('\n');
        s
    };
    let mut out = line(&mut headers.iter().copied());
    for row in &rows {
        out.push_str(&line(&mut row.as_ref().iter().map(String::as_str)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("star-spectrum").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn sig_formatting() {
        assert_eq!(sig(0.0), "0");
        assert_eq!(sig(1.0), "1");
        assert_eq!(sig(-1.1), "-1.1");
        assert_eq!(sig(2415.0 / 2592.0), "0.931712962963");
        assert_eq!(sig(35.0 / 36.0), "0.972222222222");
        assert_eq!(sig(1.0 / 24.0), "0.0416666666667");
        assert_eq!(sig(123456.789), "123456.789");
    }

    #[test]
    fn spectrum_formats() {
        let (code, out, _) = run_capture(&["spectrum", "--n", "2", "--format", "json"]);
        assert_eq!(code, 0);
        assert_eq!(out, "{\"n\":2,\"multiplicities\":{\"-1\":\"1\",\"1\":\"1\"}}\n");
        let (_, out, _) = run_capture(&["spectrum", "--n", "4", "--format", "csv"]);
        assert_eq!(
            out,
            "eigenvalue,multiplicity\n-3,1\n-2,6\n-1,3\n0,4\n1,3\n2,6\n3,1\n"
        );
        let (_, out, _) =
            run_capture(&["spectrum", "--n", "3", "--format", "csv", "--include-zeros"]);
        assert!(out.contains("\n0,0\n"));
        let (_, out, _) = run_capture(&["spectrum", "--n", "3", "--format", "csv"]);
        assert!(!out.contains("\n0,"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture(&["spectrum", "--n", "0"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["spectrum", "--n", "x"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["spectrum", "--n", "51"]).0, EXIT_LIMIT);
        assert_eq!(run_capture(&["verify", "--n", "30"]).0, EXIT_LIMIT);
        assert_eq!(run_capture(&["moments", "--n", "12", "--k-max", "2"]).0, EXIT_LIMIT);
        assert_eq!(run_capture(&["bound", "--n", "1"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["nonsense"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn verify_reports() {
        let (code, out, _) = run_capture(&["verify", "--n", "5"]);
        assert_eq!(code, 0);
        assert_eq!(out, "n = 5: identical, 9 eigenvalues, total 120\n");
        assert_eq!(run_capture(&["verify", "--n", "3"]).0, 0);
        let (_, out, _) = run_capture(&["verify", "--n", "3", "--format", "json"]);
        assert_eq!(
            out,
            "{\"n\":3,\"oracle\":\"walk\",\"identical\":true,\"eigenvalues\":4,\"total\":\"6\",\"diff\":[]}\n"
        );
    }

    #[test]
    fn moments_rows() {
        let (_, out, _) = run_capture(&["moments", "--n", "3", "--k-max", "4", "--format", "csv"]);
        assert_eq!(out, "k,walks,trace\n0,1,6\n1,0,0\n2,2,12\n3,0,0\n4,6,36\n");
        let (_, table_src, _) = run_capture(&[
            "moments", "--n", "6", "--k-max", "8", "--format", "csv", "--source", "table",
        ]);
        let (_, walk_src, _) =
            run_capture(&["moments", "--n", "6", "--k-max", "8", "--format", "csv"]);
        assert_eq!(table_src, walk_src);
        assert!(walk_src.contains("\n2,5,3600\n"));
        let (code, _, _) = run_capture(&[
            "moments", "--n", "20", "--k-max", "4", "--source", "table",
        ]);
        assert_eq!(code, 0);
    }

    #[test]
    fn bound_rows() {
        let (_, out, _) = run_capture(&["bound", "--n", "4", "--format", "csv"]);
        assert_eq!(out, "l,bound,multiplicity,satisfied\n1,3,3,true\n2,6,6,true\n3,1,1,true\n");
        let (_, out, _) = run_capture(&["bound", "--n", "2", "--format", "csv"]);
        assert_eq!(out, "l,bound,multiplicity,satisfied\n1,1,1,true\n");
    }

    #[test]
    fn histogram_masses() {
        let t = multiplicity_table(16).unwrap();
        let h = histogram(&t, 8);
        assert_eq!(h.len(), 8);
        let total: f64 = h.iter().map(|r| r.2).sum();
        assert!((total - 1.0).abs() <= 1e-12);
        let semi: f64 = h.iter().map(|r| r.3).sum();
        assert!((semi - 1.0).abs() <= 1e-12);

        let t4 = multiplicity_table(4).unwrap();
        let h4 = histogram(&t4, 4);
        let bin = h4.iter().find(|r| r.0 <= 0.75 && 0.75 < r.1).unwrap();
        assert!(bin.2 >= 1.0 / 24.0);
    }

    #[test]
    fn semicircle_writes_histogram() {
        let dir = std::env::temp_dir().join(format!("star-spectrum-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("hist.csv");
        let (code, out, _) = run_capture(&[
            "semicircle",
            "--n",
            "36",
            "--p-max",
            "2",
            "--bins",
            "8",
            "--format",
            "csv",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("n,kolmogorov_distance,ratio_p1,ratio_p2\n36,"));
        assert!(out.contains(",0.972222222222,0.931712962963\n"));
        let csv = fs::read_to_string(&path).unwrap();
        assert_eq!(csv.lines().count(), 9);
        fs::remove_dir_all(&dir).unwrap();

        let bad = run_capture(&["semicircle", "--n", "4", "--out", "/nonexistent/dir/h.csv"]);
        assert_eq!(bad.0, EXIT_IO);
    }

    #[test]
    fn json_round_trips() {
        for args in [
            vec!["spectrum", "--n", "9", "--format", "json", "--include-zeros"],
            vec!["bound", "--n", "7", "--format", "json"],
            vec!["moments", "--n", "5", "--k-max", "6", "--format", "json"],
            vec!["verify", "--n", "4", "--format", "json"],
            vec!["semicircle", "--n", "9,16", "--format", "json"],
        ] {
            let (code, out, _) = run_capture(&args);
            assert_eq!(code, 0);
            let parsed: Value = serde_json::from_str(&out).unwrap();
            assert_eq!(json_line(&parsed), out, "{args:?}");
        }
    }
}
