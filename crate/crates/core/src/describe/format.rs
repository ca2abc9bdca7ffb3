//! Number rendering shared by all description text.

/// Rounds to `sig` significant figures, ties away from zero.
pub fn round_sig(x: f64, sig: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(sig - 1 - magnitude);
    // the tiny nudge keeps decimal ties such as 2.345 (stored as
    // 2.34499999...) rounding up as written
    let rounded = (x.abs() * scale * (1.0 + 1e-12) + 0.5).floor() / scale;
    rounded.copysign(x)
}

/// Three significant figures, half-up, without trailing zeros:
/// `23.0 -> "23"`, `1234.5 -> "1230"`, `0.015 -> "0.015"`.
pub fn format_sig3(x: f64) -> String {
    let r = round_sig(x, 3);
    if r == 0.0 {
        return "0".into();
    }
    let magnitude = r.abs().log10().floor() as i32;
    let decimals = (2 - magnitude).max(0) as usize;
    trim_zeros(format!("{r:.decimals$}"))
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// Length in meters, switching to kilometers above 1,000 m.
pub fn format_length(m: f64) -> String {
    if m.abs() > 1000.0 {
        format!("{} km", format_sig3(m / 1000.0))
    } else {
        format!("{} m", format_sig3(m))
    }
}

/// Area in square meters, switching to square kilometers above 1 km².
pub fn format_area(m2: f64) -> String {
    if m2.abs() > 1e6 {
        format!("{} km²", format_sig3(m2 / 1e6))
    } else {
        format!("{} m²", format_sig3(m2))
    }
}

/// Planar coordinate in meters with at most two decimals.
pub fn format_coordinate(v: f64) -> String {
    let s = trim_zeros(format!("{v:.2}"));
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// "a" or "an" for a phrase opening with a number read aloud ("an 8
/// o'clock slope", "an 11:30 o'clock slope").
pub fn article(phrase: &str) -> &'static str {
    if phrase.starts_with('8') || phrase.starts_with("11") || phrase.starts_with("18") {
        "an"
    } else {
        "a"
    }
}

/// Joins items as "a, b and c".
pub fn join_and(items: &[String]) -> String {
    match items.len() {
        0 => String::new(),
        1 => items[0].clone(),
        n => format!("{} and {}", items[..n - 1].join(", "), items[n - 1]),
    }
}
