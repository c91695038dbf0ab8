//! Text renderings shared by the subcommands.

use duursma_core::exact::rational_to_string;
use duursma_core::{HomogBivariate, Rational, UniPoly};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Latex,
}

fn latex_power(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_owned(),
        2..=9 => format!("{var}^{k}"),
        _ => format!("{var}^{{{k}}}"),
    }
}

fn push_sign(out: &mut String, negative: bool) {
    if negative {
        out.push('-');
    } else if !out.is_empty() {
        out.push('+');
    }
}

/// `x_0^{12}-33 x_0^8 x_1^4-33 x_0^4 x_1^8+x_1^{12}`
pub fn latex_bivariate(f: &HomogBivariate) -> String {
    let n = f.degree();
    let mut out = String::new();
    for (i, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        push_sign(&mut out, c.is_negative());
        let mono: Vec<String> = [latex_power("x_0", n - i), latex_power("x_1", i)]
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect();
        let mono = mono.join(" ");
        out.push_str(&coefficient_term(&c.abs(), &mono));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `c m` for integers, `\frac{a m}{b}` otherwise; unit coefficients drop out.
fn coefficient_term(mag: &Rational, mono: &str) -> String {
    let num = mag.numer().to_string();
    let den = mag.denom();
    let top = match (mono.is_empty(), mag.numer().is_one()) {
        (true, _) => num,
        (false, true) => mono.to_owned(),
        (false, false) => format!("{num} {mono}"),
    };
    if den.is_one() {
        top
    } else {
        format!("\\frac{{{top}}}{{{den}}}")
    }
}

/// `\frac{1}{5}+\frac{2 T}{5}+\frac{2 T^2}{5}`
pub fn latex_unipoly(p: &UniPoly, var: &str) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        push_sign(&mut out, c.is_negative());
        out.push_str(&coefficient_term(&c.abs(), &latex_power(var, k)));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn approx(x: &Rational) -> String {
    format!("{:.15e}", x.to_f64().unwrap_or(f64::NAN))
}

/// Decimal rendering of a polynomial, used only behind `--approx`.
pub fn approx_unipoly(p: &UniPoly, var: &str) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        match (out.is_empty(), c.is_negative()) {
            (true, true) => out.push('-'),
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
            (true, false) => {}
        }
        out.push_str(&approx(&c.abs()));
        match k {
            0 => {}
            1 => out.push_str(&format!(" {var}")),
            _ => out.push_str(&format!(" {var}^{k}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn rational_strings(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(|x| json!(rational_to_string(x))).collect())
}
