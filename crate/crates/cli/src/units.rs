//! Unit suffixes accepted on the command line. Everything past this module
//! is plain SI.

const LENGTH: &[(&str, f64)] = &[("nm", 1e-9), ("um", 1e-6), ("μm", 1e-6), ("mm", 1e-3), ("cm", 1e-2), ("m", 1.0)];
const TIME: &[(&str, f64)] = &[("us", 1e-6), ("μs", 1e-6), ("ms", 1e-3), ("s", 1.0)];
const MASS: &[(&str, f64)] = &[("mg", 1e-6), ("kg", 1.0), ("g", 1e-3)];

/// Parses `value[suffix]`. A bare number is taken as already in SI.
pub fn parse_quantity(input: &str, units: &[(&str, f64)]) -> Result<f64, String> {
    let s = input.trim();
    let mut by_length: Vec<&(&str, f64)> = units.iter().collect();
    by_length.sort_by_key(|(u, _)| std::cmp::Reverse(u.len()));
    let (number, scale) = by_length
        .into_iter()
        .find_map(|(u, f)| s.strip_suffix(u).map(|rest| (rest.trim_end(), *f)))
        .unwrap_or((s, 1.0));
    let v: f64 = number.parse().map_err(|_| {
        let suffixes: Vec<&str> = units.iter().map(|(u, _)| *u).collect();
        format!("cannot parse '{input}' (number with optional suffix {})", suffixes.join("/"))
    })?;
    let v = v * scale;
    if !v.is_finite() {
        return Err(format!("'{input}' is not finite"));
    }
    Ok(v)
}

pub fn parse_length(s: &str) -> Result<f64, String> {
    parse_quantity(s, LENGTH)
}

pub fn parse_time(s: &str) -> Result<f64, String> {
    parse_quantity(s, TIME)
}

pub fn parse_mass(s: &str) -> Result<f64, String> {
    parse_quantity(s, MASS)
}

/// Comma-separated times; the empty string is the empty grid.
pub fn parse_time_list(s: &str) -> Result<Vec<f64>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_time).collect()
}
