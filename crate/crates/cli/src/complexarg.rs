//! Complex numbers on the command line, written `a+bi`.
//!
//! Accepted forms: a plain float (`5`, `-2.5e-3`), a pure imaginary part
//! (`2i`, `-i`, `i`), or both parts with an explicit sign between them
//! (`1+2i`, `-1.5-0.25i`, `1e-3+2e+4i`). Whitespace around the literal is
//! ignored; whitespace inside it is not.

use num_complex::Complex64;

pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s = text.trim();
    let bad = || format!("`{text}` is not a complex literal of the form a+bi");
    if s.is_empty() {
        return Err(bad());
    }
    if !s.ends_with('i') {
        let re: f64 = s.parse().map_err(|_| bad())?;
        return finite(Complex64::new(re, 0.0), bad);
    }
    let body = &s[..s.len() - 1];
    let bytes = body.as_bytes();
    // The sign separating the two parts is the rightmost '+'/'-' that is
    // neither leading nor part of an exponent.
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re_text, im_text) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re: f64 = if re_text.is_empty() {
        0.0
    } else {
        re_text.parse().map_err(|_| bad())?
    };
    let im: f64 = match im_text {
        "" | "+" => 1.0,
        "-" => -1.0,
        _ => im_text.parse().map_err(|_| bad())?,
    };
    finite(Complex64::new(re, im), bad)
}

fn finite(v: Complex64, bad: impl Fn() -> String) -> Result<Complex64, String> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

/// Render a value the way the parser reads it: bare real when the
/// imaginary part is exactly zero, `a+bi` otherwise.
pub fn format_complex(v: Complex64) -> String {
    if v.im == 0.0 {
        format!("{}", v.re)
    } else if v.im < 0.0 || v.im.is_nan() {
        format!("{}{}i", v.re, v.im)
    } else {
        format!("{}+{}i", v.re, v.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(text: &str, re: f64, im: f64) {
        let v = parse_complex(text).unwrap();
        assert_eq!((v.re, v.im), (re, im), "parsing {text:?}");
    }

    #[test]
    fn plain_reals() {
        ok("5", 5.0, 0.0);
        ok("-2.5", -2.5, 0.0);
        ok(" 1e-3 ", 1e-3, 0.0);
    }

    #[test]
    fn pure_imaginaries() {
        ok("2i", 0.0, 2.0);
        ok("i", 0.0, 1.0);
        ok("-i", 0.0, -1.0);
        ok("-0.5i", 0.0, -0.5);
    }

    #[test]
    fn both_parts() {
        ok("1+2i", 1.0, 2.0);
        ok("1-2i", 1.0, -2.0);
        ok("-1.5-0.25i", -1.5, -0.25);
        ok("1e-3+2e+4i", 1e-3, 2e4);
        ok("3+i", 3.0, 1.0);
        ok("3-i", 3.0, -1.0);
    }

    #[test]
    fn rejects_malformed_and_nonfinite() {
        for text in ["", "abc", "1+2j", "1++2i", "2ii", "inf", "nan+1i", "1 + 2i"] {
            assert!(parse_complex(text).is_err(), "{text:?} should be rejected");
        }
    }

    #[test]
    fn formatting_round_trips() {
        for v in [
            Complex64::new(24.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(-1.5, 0.25),
        ] {
            assert_eq!(parse_complex(&format_complex(v)).unwrap(), v);
        }
    }
}
