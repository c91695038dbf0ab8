//! Argument definitions and the subcommand implementations.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use duursma_core::exact::{is_prime, parse_rational, rational_to_string};
use duursma_core::enumerator::EnumeratorDocument;
use duursma_core::theta::{qseries_p_integrality, NOME};
use duursma_core::zeta::{
    eisenstein_zeta, exact_roots, interlace_check, p_integrality_report, rha_check_numeric,
    rha_check_structural,
};
use duursma_core::{
    eisenstein_closed_form, h1, load_enumerator, normalize, normalized_eisenstein, reynolds_power,
    th_map, zeta_via_linear_system, zeta_via_series, Error, FormalWeightEnumerator, Normalized,
    Rational, UniPoly, ZetaMethod, ZetaPolynomial,
};
use serde_json::{json, Value};

use crate::corpus;
use crate::format::{approx_unipoly, latex_bivariate, latex_unipoly, rational_strings, Format};
use crate::verify::{self, VerifyConfig};

#[derive(Debug, Parser)]
#[command(name = "duursma", version, about = "Eisenstein polynomials of H1 and their zeta polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalized Eisenstein polynomial of degree L.
    Eisenstein(EisensteinArgs),
    /// Zeta polynomial of an Eisenstein polynomial or of an enumerator file.
    Zeta(ZetaArgs),
    /// Run every check and write a JSON report.
    Verify(VerifyArgs),
    /// The two degree-8/12 tables.
    Table(TableArgs),
    /// Root moduli of a zeta polynomial.
    Rha(RhaArgs),
    /// Exact root angles and arc coverage between degrees L and L+4.
    Interlace(InterlaceArgs),
    /// p-integrality of the zeta polynomial, the enumerator and the unit check at p.
    Pintegral(PintegralArgs),
    /// Theta series of an enumerator.
    Theta(ThetaArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EisensteinMethod {
    Average,
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Series,
    Linsys,
    Closed,
    Expanded,
}

impl From<MethodArg> for ZetaMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Series => ZetaMethod::Series,
            MethodArg::Linsys => ZetaMethod::LinearSystem,
            MethodArg::Closed => ZetaMethod::Closed,
            MethodArg::Expanded => ZetaMethod::Expanded,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Plain,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Eisenstein,
    Zeta,
}

#[derive(Debug, Args)]
pub struct EisensteinArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub ell: u32,
    #[arg(long, value_enum, default_value = "closed")]
    pub method: EisensteinMethod,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
}

/// Either `--ell` or `--input`.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Degree of the Eisenstein polynomial (multiple of 4, at least 8).
    #[arg(long)]
    pub ell: Option<u32>,
    /// Enumerator JSON document.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value = "2")]
    pub q: String,
    #[arg(long, value_enum, default_value = "series")]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,
    /// Recompute with every applicable method and fail on disagreement.
    #[arg(long)]
    pub check: bool,
    /// Also print decimal approximations.
    #[arg(long)]
    pub approx: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u32).range(12..))]
    pub max_ell: u32,
    #[arg(long, default_value_t = 97, value_parser = clap::value_parser!(u64).range(3..))]
    pub max_prime: u64,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    pub theta_order: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Directory of enumerator documents (default: the bundled corpus).
    #[arg(long)]
    pub corpus: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub which: Which,
    #[arg(long, value_enum, default_value = "latex")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RhaArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value = "2")]
    pub q: String,
    #[arg(long, default_value_t = verify::RHA_TOLERANCE)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct InterlaceArgs {
    #[arg(long)]
    pub ell: u32,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct PintegralArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = 200)]
    pub order: usize,
    /// Also check p-integrality of the computed coefficients.
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: ReportFormat,
}

/// Normal completion: text for stdout, and whether everything checked out.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub ok: bool,
    pub message: Option<String>,
}

impl Outcome {
    fn success(stdout: String) -> Self {
        Self {
            stdout,
            ok: true,
            message: None,
        }
    }
}

/// Aborted run, carrying the exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SingularSystem(_)
            | Error::InexactDivision
            | Error::ExclusionMismatch
            | Error::NonConvergence { .. }
            | Error::UnitCheckFailed(_) => 1,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

pub fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Eisenstein(a) => eisenstein(a),
        Command::Zeta(a) => zeta(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Table(a) => table(a),
        Command::Rha(a) => rha(a),
        Command::Interlace(a) => interlace(a),
        Command::Pintegral(a) => pintegral(a),
        Command::Theta(a) => theta(a),
    }
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn read_enumerator(path: &PathBuf) -> Result<FormalWeightEnumerator, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(load_enumerator(&text)?)
}

fn parse_q(q: &str) -> Result<Rational, Failure> {
    Ok(parse_rational(q)?)
}

fn eisenstein(a: EisensteinArgs) -> CmdResult {
    let raw = match a.method {
        EisensteinMethod::Average => reynolds_power(&h1(), a.ell as usize)?,
        EisensteinMethod::Closed => eisenstein_closed_form(a.ell)?,
    };
    let method = match a.method {
        EisensteinMethod::Average => "average",
        EisensteinMethod::Closed => "closed",
    };
    let out = match (normalize(&raw)?, a.format) {
        (Normalized::Zero, Format::Json) => json_line(&json!({
            "ell": a.ell,
            "method": method,
            "zero": true,
            "coefficients": null,
        })),
        (Normalized::Zero, _) => "ZERO\n".to_owned(),
        (Normalized::Enumerator(f), Format::Plain) => format!("{f}\n"),
        (Normalized::Enumerator(f), Format::Latex) => format!("{}\n", latex_bivariate(f.as_bivariate())),
        (Normalized::Enumerator(f), Format::Json) => json_line(&json!({
            "ell": a.ell,
            "method": method,
            "zero": false,
            "coefficients": EnumeratorDocument::from_enumerator(&f).coefficients,
        })),
    };
    Ok(Outcome::success(out))
}

fn zeta_of(
    source: &Source,
    enumerator: Option<&FormalWeightEnumerator>,
    q: &Rational,
    method: ZetaMethod,
) -> Result<ZetaPolynomial, Failure> {
    let two = Rational::from_integer(2.into());
    match (method, source.ell, enumerator) {
        (ZetaMethod::Closed | ZetaMethod::Expanded, None, _) => Err(Failure::usage(format!(
            "method {} needs --ell",
            method.name()
        ))),
        (ZetaMethod::Closed | ZetaMethod::Expanded, Some(_), _) if *q != two => Err(Failure::usage(
            format!("method {} is only defined for q = 2", method.name()),
        )),
        (_, Some(ell), _) if *q == two => Ok(eisenstein_zeta(ell, method)?),
        (ZetaMethod::LinearSystem, _, Some(f)) => Ok(zeta_via_linear_system(f, q)?),
        (ZetaMethod::Series, _, Some(f)) => Ok(zeta_via_series(f, q)?),
        (m, Some(ell), _) => {
            let f = normalized_eisenstein(ell)?;
            zeta_of(&Source { ell: None, input: None }, Some(&f), q, m)
        }
        (_, None, None) => Err(Failure::usage("one of --ell or --input is required")),
    }
}

fn load_source(source: &Source) -> Result<Option<FormalWeightEnumerator>, Failure> {
    source.input.as_ref().map(read_enumerator).transpose()
}

fn zeta(a: ZetaArgs) -> CmdResult {
    let q = parse_q(&a.q)?;
    let input = load_source(&a.source)?;
    let z = zeta_of(&a.source, input.as_ref(), &q, a.method.into())?;

    let mut mismatch = Vec::new();
    if a.check {
        for m in ZetaMethod::ALL {
            if input.is_some() && matches!(m, ZetaMethod::Closed | ZetaMethod::Expanded) {
                continue;
            }
            match zeta_of(&a.source, input.as_ref(), &q, m) {
                Ok(other) if other.poly == z.poly => {}
                Ok(_) => mismatch.push(m.name().to_owned()),
                Err(f) if f.code == 2 => {}
                Err(f) => mismatch.push(format!("{}: {}", m.name(), f.message)),
            }
        }
    }

    let out = match a.format {
        Format::Plain => {
            let mut s = format!("{}\n", z.poly);
            if a.approx {
                s += &format!("{}\n", approx_unipoly(&z.poly, "T"));
            }
            s
        }
        Format::Latex => format!("{}\n", latex_unipoly(&z.poly, "T")),
        Format::Json => {
            let ell = a.source.ell;
            let structural = ell.map(rha_check_structural).transpose().ok().flatten();
            let numeric = rha_check_numeric(&z, verify::RHA_TOLERANCE).ok().map(|r| r.max_deviation);
            let interlace = ell.and_then(|l| interlace_check(l).ok()).map(|r| r.arcs_covered);
            let valuations: serde_json::Map<String, Value> = p_integrality_report(&z.poly)
                .min_valuations
                .into_iter()
                .map(|(p, v)| (p.to_string(), json!(v)))
                .collect();
            let mut v = json!({
                "ell": ell,
                "q": rational_to_string(&z.q),
                "method": ZetaMethod::from(a.method).name(),
                "coefficients": rational_strings(z.poly.coeffs()),
                "rha": { "structural": structural, "numeric_max_deviation": numeric },
                "interlace_with_next": interlace,
                "valuations": valuations,
            });
            if a.check {
                v["cross_check"] = json!({ "mismatched": mismatch });
            }
            if a.approx {
                v["approx"] = json!(approx_unipoly(&z.poly, "T"));
            }
            json_line(&v)
        }
    };
    Ok(Outcome {
        stdout: out,
        ok: mismatch.is_empty(),
        message: (!mismatch.is_empty()).then(|| format!("methods disagree: {}", mismatch.join(", "))),
    })
}

fn verify_cmd(a: VerifyArgs) -> CmdResult {
    let (corpus, label) = match &a.corpus {
        None => (corpus::bundled(), "bundled".to_owned()),
        Some(dir) => (
            corpus::from_dir(dir)
                .map_err(|e| Failure::usage(format!("cannot read corpus {}: {e}", dir.display())))?,
            dir.display().to_string(),
        ),
    };
    let config = VerifyConfig {
        max_ell: a.max_ell,
        max_prime: a.max_prime,
        theta_order: a.theta_order as usize,
        jobs: a.jobs as usize,
        corpus_label: label,
    };
    let report = verify::run(&config, corpus);
    let text = report.to_json();
    let message = (!report.overall).then(|| {
        let failed: Vec<String> = report
            .failures()
            .map(|e| format!("{} {}: {}", e.check, e.parameters, e.witness))
            .collect();
        format!("verification failed:\n{}", failed.join("\n"))
    });
    let stdout = match &a.report {
        Some(path) => {
            fs::write(path, &text)
                .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
            format!(
                "overall: {}\nentries: {}, passed: {}, expected exclusions: {}, failed: {}\n",
                if report.overall { "PASS" } else { "FAIL" },
                report.summary.total,
                report.summary.passed,
                report.summary.expected_exclusions,
                report.summary.failed
            )
        }
        None => text,
    };
    Ok(Outcome {
        stdout,
        ok: report.overall,
        message,
    })
}

pub const EISENSTEIN_FOOTNOTE: &str =
    "The x_1^8 term of the degree-8 row corrects a misprinted x_2^8 in the original table.";

fn table(a: TableArgs) -> CmdResult {
    let rows: Vec<(u32, String, String, Value)> = [8u32, 12]
        .into_iter()
        .map(|ell| -> Result<_, Failure> {
            Ok(match a.which {
                Which::Eisenstein => {
                    let f = normalized_eisenstein(ell)?;
                    (
                        ell,
                        f.to_string(),
                        latex_bivariate(f.as_bivariate()),
                        json!(EnumeratorDocument::from_enumerator(&f).coefficients),
                    )
                }
                Which::Zeta => {
                    let z = eisenstein_zeta(ell, ZetaMethod::LinearSystem)?;
                    (
                        ell,
                        z.poly.to_string(),
                        latex_unipoly(&z.poly, "T"),
                        rational_strings(z.poly.coeffs()),
                    )
                }
            })
        })
        .collect::<Result<_, _>>()?;
    let footnote = (a.which == Which::Eisenstein).then_some(EISENSTEIN_FOOTNOTE);
    let out = match a.format {
        Format::Latex => {
            let header = match a.which {
                Which::Eisenstein => "$\\ell$ & $\\widetilde{\\varphi_{\\ell}^{H_1}}(x_0,x_1)$",
                Which::Zeta => "$\\ell$ & $P_{\\widetilde{\\varphi_{\\ell}^{H_1}}}(T)$",
            };
            let mut s = String::from("\\begin{tabular}{c|c}\n\\noalign{\\hrule height0.8pt}\n");
            s += &format!("{header}\\\\\\hline\n");
            s += &format!("${}$ & ${}$\\\\\\hline\n", rows[0].0, rows[0].2);
            s += &format!("${}$ & ${}$\\\\\n", rows[1].0, rows[1].2);
            s += "\\noalign{\\hrule height0.8pt}\n\\end{tabular}\n";
            if let Some(note) = footnote {
                s += &format!("% {note}\n");
            }
            s
        }
        Format::Plain => {
            let mut s = String::new();
            for (ell, plain, _, _) in &rows {
                s += &format!("{ell:>2} | {plain}\n");
            }
            if let Some(note) = footnote {
                s += &format!("\nNote: {note}\n");
            }
            s
        }
        Format::Json => json_line(&json!({
            "which": match a.which { Which::Eisenstein => "eisenstein", Which::Zeta => "zeta" },
            "rows": rows.iter().map(|(ell, _, latex, c)| json!({ "ell": ell, "coefficients": c, "latex": latex })).collect::<Vec<_>>(),
            "footnote": footnote,
        })),
    };
    Ok(Outcome::success(out))
}

fn rha(a: RhaArgs) -> CmdResult {
    let q = parse_q(&a.q)?;
    let input = load_source(&a.source)?;
    let z = zeta_of(&a.source, input.as_ref(), &q, ZetaMethod::Series)?;
    let structural = match a.source.ell {
        Some(ell) if q == Rational::from_integer(2.into()) => Some(rha_check_structural(ell)?),
        _ => None,
    };
    let numeric = rha_check_numeric(&z, a.tolerance)?;
    let ok = numeric.verdict && structural.unwrap_or(true);
    let out = match a.format {
        ReportFormat::Json => json_line(&json!({
            "ell": a.source.ell,
            "q": rational_to_string(&q),
            "structural": structural,
            "numeric": numeric,
            "verdict": ok,
        })),
        ReportFormat::Plain => {
            let mut s = String::new();
            if let Some(b) = structural {
                s += &format!("structural identity: {b}\n");
            }
            s += &format!(
                "roots: {}\nmax deviation from q^(-1/2): {:e}\ntolerance: {:e}\nverdict: {}\n",
                numeric.roots.len(),
                numeric.max_deviation,
                numeric.tolerance,
                if ok { "PASS" } else { "FAIL" }
            );
            s
        }
    };
    Ok(Outcome {
        stdout: out,
        ok,
        message: (!ok).then(|| "root moduli off the expected circle".to_owned()),
    })
}

fn interlace(a: InterlaceArgs) -> CmdResult {
    let roots = exact_roots(a.ell)?;
    let next = exact_roots(a.ell + 4)?;
    let report = interlace_check(a.ell)?;
    let out = match a.format {
        ReportFormat::Json => json_line(&json!({
            "roots": roots,
            "next_roots": next,
            "interlace": report,
        })),
        ReportFormat::Plain => {
            let show = |v: &[duursma_core::zeta::RationalAngle]| {
                v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(" ")
            };
            format!(
                "modulus^2: {}\nangles/pi (ell={}): {}\nangles/pi (ell={}): {}\ncommon: {}\narcs covered: {}/{}\nverdict: {}\n",
                rational_to_string(&roots.modulus_squared),
                a.ell,
                show(&roots.angles),
                a.ell + 4,
                show(&next.angles),
                show(&report.common_angles),
                report.arcs.iter().filter(|x| x.count > 0).count(),
                report.arcs.len(),
                if report.arcs_covered { "PASS" } else { "FAIL" }
            )
        }
    };
    Ok(Outcome {
        stdout: out,
        ok: report.arcs_covered,
        message: (!report.arcs_covered).then(|| "an arc has no zero of the next polynomial".to_owned()),
    })
}

fn pintegral(a: PintegralArgs) -> CmdResult {
    if a.p < 3 || !is_prime(a.p) {
        return Err(Failure::usage(format!("{} is not an odd prime", a.p)));
    }
    let entries = verify::prime_checks(a.p);
    let ok = entries.iter().all(|e| e.verdict);
    let out = match a.format {
        ReportFormat::Json => json_line(&json!({ "p": a.p, "entries": entries, "verdict": ok })),
        ReportFormat::Plain => entries
            .iter()
            .map(|e| format!("{:<22} {:<18} {}\n", e.check, serde_json::to_string(&e.status).unwrap_or_default().trim_matches('"'), e.witness))
            .collect(),
    };
    Ok(Outcome {
        stdout: out,
        ok,
        message: (!ok).then(|| format!("p-integrality check failed at p = {}", a.p)),
    })
}

fn theta(a: ThetaArgs) -> CmdResult {
    let f = match (&a.source.input, a.source.ell) {
        (Some(path), _) => read_enumerator(path)?,
        (None, Some(ell)) => normalized_eisenstein(ell)?,
        (None, None) => return Err(Failure::usage("one of --ell or --input is required")),
    };
    let s = th_map(&f, a.order);
    let integrality = a.p.map(|p| qseries_p_integrality(&s, p)).transpose()?;
    let ok = integrality.as_ref().is_none_or(|r| r.integral);
    let out = match a.format {
        ReportFormat::Json => {
            let mut v = serde_json::to_value(&s).expect("series serializes");
            if let Some(r) = &integrality {
                v["integrality"] = json!(r);
            }
            json_line(&v)
        }
        ReportFormat::Plain => {
            let poly = UniPoly::new(s.coeffs().to_vec());
            let mut out = format!("{} + O(u^{})\n", poly.display_in("u"), a.order + 1);
            out += &format!("u = {NOME}\n");
            if let Some(r) = &integrality {
                out += &format!(
                    "{}-integral: {}\n",
                    r.p,
                    if r.integral { "yes" } else { "no" }
                );
            }
            out
        }
    };
    Ok(Outcome {
        stdout: out,
        ok,
        message: (!ok).then(|| "series is not p-integral".to_owned()),
    })
}
