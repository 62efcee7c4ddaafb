//! Number formatting shared by every command.

use serde_json::Value;

/// Significant digits used unless `--precision` says otherwise.
pub const DEFAULT_PRECISION: usize = 6;

/// `%g`-style formatting with `digits` significant digits: fixed notation
/// for moderate magnitudes, scientific otherwise, trailing zeros removed.
pub fn format_sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // Round first so that e.g. 9.9999996 reports exponent 1, not 0.
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{exp}", trim_zeros(mantissa))
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Rounds every number in a JSON tree to `digits` significant digits.
pub fn round_json(value: Value, digits: usize) -> Value {
    match value {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => {
            let rounded = n
                .as_f64()
                .and_then(|x| format_sig(x, digits).parse::<f64>().ok())
                .and_then(serde_json::Number::from_f64);
            rounded.map_or(Value::Number(n), Value::Number)
        }
        Value::Array(items) => {
            Value::Array(items.into_iter().map(|v| round_json(v, digits)).collect())
        }
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(k, v)| (k, round_json(v, digits)))
                .collect(),
        ),
        other => other,
    }
}
