use std::f64::consts::PI;

fn decimal(text: &str) -> Option<f64> {
    let plausible = !text.is_empty()
        && text.chars().any(|c| c.is_ascii_digit())
        && text
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'));
    if !plausible {
        return None;
    }
    text.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// `[sign][coefficient][*]pi[/denominator]`
fn pi_fraction(text: &str) -> Option<f64> {
    let (sign, body) = match text.as_bytes().first()? {
        b'-' => (-1.0, &text[1..]),
        b'+' => (1.0, &text[1..]),
        _ => (1.0, text),
    };
    let at = body.find("pi")?;
    let (coefficient, rest) = (&body[..at], &body[at + 2..]);
    let coefficient = coefficient.strip_suffix('*').unwrap_or(coefficient);
    let coefficient = if coefficient.is_empty() {
        1.0
    } else {
        unsigned_decimal(coefficient)?
    };
    let denominator = match rest {
        "" => 1.0,
        _ => unsigned_decimal(rest.strip_prefix('/')?).filter(|d| *d != 0.0)?,
    };
    Some(sign * coefficient * PI / denominator)
}

fn unsigned_decimal(text: &str) -> Option<f64> {
    if text.starts_with(['-', '+']) {
        return None;
    }
    decimal(text)
}

/// Parses a decimal or pi-fraction number.
pub fn parse_float(text: &str) -> Result<f64, String> {
    let text = text.trim();
    decimal(text)
        .or_else(|| pi_fraction(text))
        .ok_or_else(|| format!("malformed number `{text}`"))
}

/// Like [`parse_float`], with an optional `deg` suffix converting degrees to radians.
pub fn parse_angle(text: &str) -> Result<f64, String> {
    let text = text.trim();
    match text.strip_suffix("deg") {
        Some(degrees) => parse_float(degrees)
            .map(f64::to_radians)
            .map_err(|_| format!("malformed angle `{text}`")),
        None => parse_float(text),
    }
}
