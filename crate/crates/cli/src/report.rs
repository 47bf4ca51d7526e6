//! Capacity reports and their JSON/text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;

use capacity_core::ProbVector;
use serde::{Deserialize, Serialize};

/// Solver that produced a reported capacity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverMethod {
    BinaryClosedForm,
    Muroga,
    BlahutArimoto,
    Grid,
}

impl SolverMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::BinaryClosedForm => "binary_closed_form",
            Self::Muroga => "muroga",
            Self::BlahutArimoto => "blahut_arimoto",
            Self::Grid => "grid",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityResult {
    pub capacity: f64,
    pub units: String,
    pub method: SolverMethod,
    #[serde(with = "prob_vector")]
    pub optimal_input: ProbVector,
    #[serde(with = "prob_vector")]
    pub optimal_output: ProbVector,
    pub feasible: bool,
    pub fallback_used: bool,
    pub diagnostics: BTreeMap<String, f64>,
}

mod prob_vector {
    use capacity_core::ProbVector;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(p: &ProbVector, s: S) -> Result<S::Ok, S::Error> {
        p.as_slice().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ProbVector, D::Error> {
        let v = Vec::<f64>::deserialize(d)?;
        ProbVector::new(v).map_err(D::Error::custom)
    }
}

/// Units label for a logarithm base.
pub fn units_for_base(base: f64) -> String {
    if base == 2.0 {
        "bits".to_string()
    } else {
        format!("base-{base} units")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Renders a report: a single-line JSON object (followed by a newline) or a
/// plain-text table.
pub fn emit_report(result: &CapacityResult, format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = to_json(result).expect("reports always serialize");
            out.push('\n');
            out
        }
        Format::Text => to_text(result),
    }
}

pub fn to_json(result: &CapacityResult) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SignificantDigits);
    result.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

pub fn parse_report(json: &str) -> serde_json::Result<CapacityResult> {
    serde_json::from_str(json)
}

fn to_text(r: &CapacityResult) -> String {
    let list = |p: &ProbVector| {
        p.as_slice()
            .iter()
            .map(|&x| format_real(x))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<16}{} {}",
        "capacity",
        format_real(r.capacity),
        r.units
    );
    let _ = writeln!(s, "{:<16}{}", "method", r.method.as_str());
    let _ = writeln!(s, "{:<16}{}", "feasible", r.feasible);
    let _ = writeln!(s, "{:<16}{}", "fallback_used", r.fallback_used);
    let _ = writeln!(s, "{:<16}[{}]", "optimal_input", list(&r.optimal_input));
    let _ = writeln!(s, "{:<16}[{}]", "optimal_output", list(&r.optimal_output));
    if !r.diagnostics.is_empty() {
        let _ = writeln!(s, "diagnostics");
        for (k, v) in &r.diagnostics {
            let _ = writeln!(s, "  {:<18}{}", k, format_real(*v));
        }
    }
    s
}

/// Formats a finite real with 17 significant digits, `%.17g` style: positional
/// for decimal exponents in `[-5, 17)`, scientific otherwise, trailing zeros
/// trimmed, and always with a fractional part or exponent so it reads back as
/// a float.
pub fn format_real(v: f64) -> String {
    if v == 0.0 {
        return "0.0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.16e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let sign = if negative { "-" } else { "" };

    if (-5..17).contains(&exp) {
        let (int_part, frac_part) = if exp >= 0 {
            let split = exp as usize + 1;
            (digits[..split].to_string(), digits[split..].to_string())
        } else {
            let zeros = "0".repeat((-exp - 1) as usize);
            ("0".to_string(), format!("{zeros}{digits}"))
        };
        let frac = frac_part.trim_end_matches('0');
        let frac = if frac.is_empty() { "0" } else { frac };
        format!("{sign}{int_part}.{frac}")
    } else {
        let frac = digits[1..].trim_end_matches('0');
        let frac = if frac.is_empty() { "0" } else { frac };
        format!("{sign}{}.{frac}e{exp}", &digits[..1])
    }
}

/// Compact JSON with reals rendered by [`format_real`].
struct SignificantDigits;

impl serde_json::ser::Formatter for SignificantDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_real(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}
