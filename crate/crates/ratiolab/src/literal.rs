//! Complex literals such as `-4-1i`, `2i`, `1.7320508i`, `0.5+2e-3i`.
//!
//! Grammar: an optional sign and a decimal real part, optionally followed by
//! a signed decimal imaginary part ending in `i`; or a lone signed decimal
//! ending in `i`. No spaces. Decimals may carry an exponent.

use ratiolab_core::ComplexValue;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("invalid complex literal {0:?} (expected forms like 1, -2.5, 3i, -4-1i, 0.5+2e-3i)")]
pub struct LiteralError(pub String);

fn decimal(s: &str) -> Option<f64> {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    let starts_ok = body.starts_with(|c: char| c.is_ascii_digit() || c == '.');
    let chars_ok = body
        .chars()
        .all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-'));
    if !starts_ok || !chars_ok {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Position of the sign that separates the real and imaginary parts.
fn split_point(s: &str) -> Option<usize> {
    let b = s.as_bytes();
    (1..b.len())
        .rev()
        .find(|&k| matches!(b[k], b'+' | b'-') && !matches!(b[k - 1], b'e' | b'E'))
}

pub fn parse_complex(s: &str) -> Result<ComplexValue, LiteralError> {
    let err = || LiteralError(s.to_string());
    if s.is_empty() || s.chars().any(char::is_whitespace) {
        return Err(err());
    }
    let Some(head) = s.strip_suffix('i') else {
        return decimal(s).map(ComplexValue::real).ok_or_else(err);
    };
    match split_point(head) {
        Some(k) => {
            let re = decimal(&head[..k]).ok_or_else(err)?;
            let im = decimal(&head[k..]).ok_or_else(err)?;
            Ok(ComplexValue::new(re, im))
        }
        None => decimal(head).map(ComplexValue::imag).ok_or_else(err),
    }
}
