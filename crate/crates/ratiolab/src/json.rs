//! JSON output with every float written to 17 significant digits.

use std::io::{self, Write};

use ratiolab_core::inellipse::InEllipse;
use ratiolab_core::theorem::{MonteCarloStats, TheoremReport, Witness};
use ratiolab_core::ComplexValue;
use serde::Serialize;
use serde_json::{json, Map, Value};

/// `{:.16e}`: one digit before the point and sixteen after.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

struct FixedDigits;

impl serde_json::ser::Formatter for FixedDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        w.write_all(format_f64(v).as_bytes())
    }
}

/// Compact single-line JSON.
pub fn to_line(v: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedDigits);
    v.serialize(&mut ser).expect("serializing a Value cannot fail");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// A finite float, or `null`.
pub fn number(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

pub fn complex(z: ComplexValue) -> Value {
    json!({ "re": number(z.re), "im": number(z.im) })
}

pub fn witness(w: &Witness) -> Value {
    match *w {
        Witness::Configuration {
            index,
            roots,
            sigma1,
            sigma2,
            path,
        } => json!({
            "kind": "configuration",
            "index": index,
            "roots": roots.iter().map(|z| complex(*z)).collect::<Vec<_>>(),
            "sigma1": complex(sigma1),
            "sigma2": complex(sigma2),
            "path": path.as_str(),
        }),
        Witness::Ratios { sigma1, sigma2 } => json!({
            "kind": "ratios",
            "sigma1": complex(sigma1),
            "sigma2": complex(sigma2),
        }),
        Witness::Parameter { t, value } => json!({
            "kind": "parameter",
            "t": number(t),
            "value": number(value),
        }),
    }
}

pub fn report(r: &TheoremReport) -> Value {
    let metrics: Map<String, Value> = r
        .metrics
        .iter()
        .map(|m| (m.name.to_string(), number(m.value)))
        .collect();
    json!({
        "claim_id": r.claim.as_str(),
        "check": r.check,
        "passed": r.passed,
        "margin": number(r.margin),
        "witness": r.witness.as_ref().map(witness),
        "metrics": metrics,
    })
}

pub fn monte_carlo(s: &MonteCarloStats) -> Value {
    let metrics: Map<String, Value> = s
        .metrics()
        .iter()
        .map(|m| (m.name.to_string(), number(m.value)))
        .collect();
    json!({ "monte_carlo": metrics })
}

pub fn ellipse(e: &InEllipse) -> Value {
    json!({
        "center": complex(e.center),
        "focus1": complex(e.focus1),
        "focus2": complex(e.focus2),
        "semi_major": number(e.semi_major),
        "semi_minor": number(e.semi_minor),
        "tangency_points": e.tangency_points.iter().map(|z| complex(*z)).collect::<Vec<_>>(),
        "incidence_residuals": e.incidence_residuals().map(number).to_vec(),
        "tangency_misalignment": e.tangency_misalignment().map(number).to_vec(),
    })
}
