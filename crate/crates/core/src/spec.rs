//! Helpers for the `name:key=value,...` specification strings.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Splits `name:rest` into `(name, rest)`; `rest` is empty when absent.
pub(crate) fn split_head(s: &str) -> (&str, &str) {
    match s.find(':') {
        Some(i) => (s[..i].trim(), s[i + 1..].trim()),
        None => (s.trim(), ""),
    }
}

/// Parses `k=v,k=v` into a map of reals.
pub(crate) fn parse_params(rest: &str) -> Result<BTreeMap<String, f64>> {
    let mut out = BTreeMap::new();
    if rest.trim().is_empty() {
        return Ok(out);
    }
    for part in rest.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| parse_err(format!("expected key=value, got `{part}`")))?;
        let v: f64 = v.trim().parse().map_err(|_| parse_err(format!("bad number `{}` for `{}`", v.trim(), k.trim())))?;
        if out.insert(k.trim().to_string(), v).is_some() {
            return Err(parse_err(format!("duplicate key `{}`", k.trim())));
        }
    }
    Ok(out)
}

/// Takes a required key out of a parameter map.
pub(crate) fn take(map: &mut BTreeMap<String, f64>, key: &str, what: &str) -> Result<f64> {
    map.remove(key).ok_or_else(|| parse_err(format!("{what} needs `{key}=`")))
}

pub(crate) fn ensure_empty(map: &BTreeMap<String, f64>, what: &str) -> Result<()> {
    match map.keys().next() {
        Some(k) => Err(parse_err(format!("unknown key `{k}` for {what}"))),
        None => Ok(()),
    }
}

/// Parses a complex literal such as `1.5`, `-2i`, `0.3-0.1i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    t.parse::<Complex64>().map_err(|_| parse_err(format!("bad complex number `{s}`")))
}

/// Splits on `sep` at bracket depth zero.
pub(crate) fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_and_complex() {
        let m = parse_params("s=0.5, r=2").unwrap();
        assert_eq!(m["s"], 0.5);
        assert_eq!(m["r"], 2.0);
        assert!(parse_params("s").is_err());
        assert_eq!(parse_complex("0.3-0.1i").unwrap(), Complex64::new(0.3, -0.1));
        assert_eq!(parse_complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(parse_complex("1+0i").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(split_top("a;(b;c);d", ';'), vec!["a", "(b;c)", "d"]);
    }
}
