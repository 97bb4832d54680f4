use serde::Serialize;

use super::Format;
use crate::closedform::Problem;
use crate::exactmath::{format_exact, to_decimal_string, Rational};
use crate::montecarlo::SimResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula1,
    Formula2,
    Oracle,
    Simulate,
}

impl Method {
    fn as_str(self) -> &'static str {
        match self {
            Method::Formula1 => "formula1",
            Method::Formula2 => "formula2",
            Method::Oracle => "oracle",
            Method::Simulate => "simulate",
        }
    }
}

/// One result line. Field order is the JSON key order and the CSV column
/// order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputRecord {
    pub n: usize,
    pub k: usize,
    pub exact: String,
    /// Exact value for exact methods, the estimate for `simulate`.
    pub float: f64,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub successes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_error: Option<f64>,
    #[serde(skip)]
    float_text: String,
    #[serde(skip)]
    std_error_text: String,
}

pub(crate) fn render_f64(x: f64, digits: usize) -> String {
    match Rational::from_float(x) {
        Some(r) => to_decimal_string(&r, digits),
        None => x.to_string(),
    }
}

fn parse_decimal(text: &str) -> f64 {
    text.parse().unwrap_or(f64::NAN)
}

impl OutputRecord {
    pub fn exact(prob: Problem, value: &Rational, method: Method, digits: u16) -> Self {
        let float_text = to_decimal_string(value, digits as usize);
        Self {
            n: prob.n(),
            k: prob.k(),
            exact: format_exact(value),
            float: parse_decimal(&float_text),
            method,
            samples: None,
            seed: None,
            successes: None,
            std_error: None,
            float_text,
            std_error_text: String::new(),
        }
    }

    pub fn simulated(prob: Problem, exact: &Rational, result: &SimResult, digits: u16) -> Self {
        let float_text = render_f64(result.estimate, digits as usize);
        let std_error_text = render_f64(result.std_error, digits as usize);
        Self {
            n: prob.n(),
            k: prob.k(),
            exact: format_exact(exact),
            float: parse_decimal(&float_text),
            method: Method::Simulate,
            samples: Some(result.samples),
            seed: Some(result.seed),
            successes: Some(result.successes),
            std_error: Some(parse_decimal(&std_error_text)),
            float_text,
            std_error_text,
        }
    }

    pub fn float_text(&self) -> &str {
        &self.float_text
    }

    fn plain(&self) -> String {
        format!("p({},{}) = {} ≈ {}", self.n, self.k, self.exact, self.float_text)
    }

    fn csv_core(&self) -> String {
        format!("{},{},{},{}", self.n, self.k, self.exact, self.float_text)
    }

    fn json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

const CSV_TABLE_HEADER: &str = "n,k,exact,float";
const CSV_RECORD_HEADER: &str = "n,k,exact,float,method";
const CSV_SIM_HEADER: &str = "n,k,exact,float,method,samples,seed,successes,std_error";

pub(crate) fn render_one(record: &OutputRecord, format: Format) -> String {
    match format {
        Format::Plain => format!("{}\n", record.plain()),
        Format::Json => format!("{}\n", record.json()),
        Format::Csv => format!(
            "{CSV_RECORD_HEADER}\n{},{}\n",
            record.csv_core(),
            record.method.as_str()
        ),
    }
}

pub(crate) fn render_table(records: &[OutputRecord], format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Plain => {
            for r in records {
                s.push_str(&r.plain());
                s.push('\n');
            }
        }
        Format::Json => {
            s.push_str(&serde_json::to_string(records).expect("records serialize"));
            s.push('\n');
        }
        Format::Csv => {
            s.push_str(CSV_TABLE_HEADER);
            s.push('\n');
            for r in records {
                s.push_str(&r.csv_core());
                s.push('\n');
            }
        }
    }
    s
}

pub(crate) fn render_simulation(
    record: &OutputRecord,
    result: &SimResult,
    exact: &Rational,
    format: Format,
    digits: u16,
) -> String {
    let digits = digits as usize;
    match format {
        Format::Plain => {
            let z = result.z_score(crate::exactmath::to_f64(exact));
            format!(
                "p({},{}) ≈ {} ± {} (simulate: {}/{} samples, seed {})\n\
                 exact {} ≈ {}, z = {}\n",
                record.n,
                record.k,
                record.float_text,
                record.std_error_text,
                result.successes,
                result.samples,
                result.seed,
                record.exact,
                to_decimal_string(exact, digits),
                render_f64(z, 4.min(digits)),
            )
        }
        Format::Json => format!("{}\n", record.json()),
        Format::Csv => format!(
            "{CSV_SIM_HEADER}\n{},{},{},{},{},{}\n",
            record.csv_core(),
            record.method.as_str(),
            result.samples,
            result.seed,
            result.successes,
            record.std_error_text,
        ),
    }
}
