use serde::{Deserialize, Serialize};

use crate::coding::BoundReport;
use crate::gmin::GMinResult;
use crate::locus::{ChernoffMin, WitnessTriple};
use crate::serde_ext::opt_ext_real;

/// Significant digits used for CSV values.
pub const CSV_DIGITS: usize = 12;

/// One output row. Only the fields relevant to the emitting subcommand are
/// populated; [`columns`] fixes which fields appear in CSV output, and in
/// which order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub channel: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub slope: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub p_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub q_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub y: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub p1_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub p2_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub tilted_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clamped: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub exponent: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub prob_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub r_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub rho_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub s_star: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub d_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub d_inf: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window_lo: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window_hi: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_ext_real")]
    pub count: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warnings: Option<String>,
}

/// Whole-run JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub command: String,
    pub records: Vec<SweepRecord>,
}

/// CSV column order for each subcommand.
pub fn columns(command: &str) -> &'static [&'static str] {
    match command {
        "gmin" => &["alpha", "eps", "method", "value", "p_star", "q_star"],
        "locus" => &[
            "eps", "alpha", "slope", "x", "y", "p1_star", "p2_star", "tilted_star", "clamped",
        ],
        "chernoff-min" => &[
            "eps", "value", "alpha", "x", "y", "p1_star", "p2_star", "tilted_star",
        ],
        "bound" => &[
            "channel", "rate", "method", "n", "exponent", "prob_bound", "r_star", "rho_star",
            "s_star", "d_s", "d_inf", "window_lo", "window_hi", "warnings",
        ],
        "spectrum" => &["l", "count"],
        _ => &[],
    }
}

impl SweepRecord {
    pub fn from_gmin(g: &GMinResult) -> Self {
        Self {
            alpha: Some(g.alpha),
            eps: Some(g.eps),
            method: Some(g.method.as_str().to_string()),
            value: Some(g.value),
            p_star: Some(g.p_star),
            q_star: Some(g.q_star),
            ..Self::default()
        }
    }

    pub fn from_witness(w: &WitnessTriple) -> Self {
        Self {
            eps: Some(w.eps),
            alpha: Some(w.alpha),
            slope: Some(w.slope()),
            x: Some(w.point.0),
            y: Some(w.point.1),
            p1_star: Some(w.p1_star.probs()[0]),
            p2_star: Some(w.p2_star.probs()[0]),
            tilted_star: Some(w.q_star.probs()[0]),
            clamped: Some(w.clamped),
            ..Self::default()
        }
    }

    pub fn from_chernoff(c: &ChernoffMin) -> Self {
        Self {
            value: Some(c.value),
            clamped: None,
            slope: None,
            ..Self::from_witness(&c.witness)
        }
    }

    pub fn from_bound(channel: String, b: &BoundReport) -> Self {
        let window = b.partition.as_ref().and_then(|p| p.window);
        Self {
            channel: Some(channel),
            rate: Some(b.rate),
            method: Some(b.method.as_str().to_string()),
            n: Some(b.n),
            exponent: Some(b.exponent),
            prob_bound: Some(b.prob_bound),
            r_star: b.r_star,
            rho_star: b.rho_star,
            s_star: b.s_star,
            d_s: b.d_s,
            d_inf: b.d_inf,
            window_lo: window.map(|w| w[0]),
            window_hi: window.map(|w| w[1]),
            warnings: (!b.warnings.is_empty()).then(|| b.warnings.join("; ")),
            ..Self::default()
        }
    }

    fn cell(&self, column: &str) -> String {
        let real = |v: Option<f64>| v.map(format_sig).unwrap_or_default();
        let int = |v: Option<usize>| v.map(|i| i.to_string()).unwrap_or_default();
        match column {
            "channel" => self.channel.clone().unwrap_or_default(),
            "rate" => real(self.rate),
            "method" => self.method.clone().unwrap_or_default(),
            "n" => int(self.n),
            "alpha" => real(self.alpha),
            "eps" => real(self.eps),
            "slope" => real(self.slope),
            "value" => real(self.value),
            "p_star" => real(self.p_star),
            "q_star" => real(self.q_star),
            "x" => real(self.x),
            "y" => real(self.y),
            "p1_star" => real(self.p1_star),
            "p2_star" => real(self.p2_star),
            "tilted_star" => real(self.tilted_star),
            "clamped" => self.clamped.map(|b| b.to_string()).unwrap_or_default(),
            "exponent" => real(self.exponent),
            "prob_bound" => real(self.prob_bound),
            "r_star" => real(self.r_star),
            "rho_star" => real(self.rho_star),
            "s_star" => real(self.s_star),
            "d_s" => real(self.d_s),
            "d_inf" => real(self.d_inf),
            "window_lo" => int(self.window_lo),
            "window_hi" => int(self.window_hi),
            "l" => int(self.l),
            "count" => real(self.count),
            "warnings" => self.warnings.clone().unwrap_or_default(),
            _ => String::new(),
        }
    }
}

/// Formats `x` with [`CSV_DIGITS`] significant digits, dropping trailing
/// zeros; infinities print as `inf` and `-inf`.
pub fn format_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", CSV_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..CSV_DIGITS as i32).contains(&exp) {
        let decimals = (CSV_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn render_csv(doc: &Document) -> Result<String, csv::Error> {
    let cols = columns(&doc.command);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(cols)?;
    for r in &doc.records {
        w.write_record(cols.iter().map(|c| r.cell(c)))?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn render_json(doc: &Document) -> serde_json::Result<String> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}
