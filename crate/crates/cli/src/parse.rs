//! Argument syntax: complex numbers as `re+imi` (parentheses optional),
//! grids as `start:stop:count`, integer ranges as `lo:hi`, and
//! comma-separated lists of any of these.

use selzet::Complex;

use crate::CliError;

pub fn complex(text: &str) -> Result<Complex, CliError> {
    let bad = || CliError::Usage(format!("cannot parse complex number {text:?}"));
    let mut s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.starts_with('(') && s.ends_with(')') {
        s = s[1..s.len() - 1].to_string();
    }
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return s.parse::<f64>().map(|re| Complex::new(re, 0.0)).map_err(|_| bad());
    };
    // the sign that starts the imaginary part: not leading, not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (body[..k].parse::<f64>().map_err(|_| bad())?, coefficient(&body[k..]).ok_or_else(bad)?),
        None => (0.0, coefficient(body).ok_or_else(bad)?),
    };
    Ok(Complex::new(re, im))
}

fn coefficient(s: &str) -> Option<f64> {
    match s {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => s.parse().ok(),
    }
}

/// Inverse of [`complex`]; shortest representation that parses back exactly.
pub fn format_complex(z: Complex) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

pub fn complex_list(text: &str) -> Result<Vec<Complex>, CliError> {
    let mut out = Vec::new();
    for item in text.split(',') {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [one] => out.push(complex(one)?),
            [a, b, n] => {
                let (a, b) = (complex(a)?, complex(b)?);
                let n: usize = n
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("grid count in {item:?} is not a positive integer")))?;
                match n {
                    0 => return Err(CliError::Usage(format!("grid {item:?} has no points"))),
                    1 => out.push(a),
                    _ => out.extend((0..n).map(|k| a + (b - a) * (k as f64 / (n - 1) as f64))),
                }
            }
            _ => return Err(CliError::Usage(format!("expected a value or start:stop:count, got {item:?}"))),
        }
    }
    Ok(out)
}

pub fn int_list(text: &str) -> Result<Vec<i64>, CliError> {
    let int = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| CliError::Usage(format!("cannot parse integer {s:?}")))
    };
    let mut out = Vec::new();
    for item in text.split(',') {
        match item.split_once(':') {
            None => out.push(int(item)?),
            Some((lo, hi)) => {
                let (lo, hi) = (int(lo)?, int(hi)?);
                if hi < lo {
                    return Err(CliError::Usage(format!("empty range {item:?}")));
                }
                out.extend(lo..=hi);
            }
        }
    }
    Ok(out)
}

pub fn real_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("cannot parse number {s:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        let cases = [
            ("2", (2.0, 0.0)),
            ("-0.5", (-0.5, 0.0)),
            ("1+2i", (1.0, 2.0)),
            ("(1.5-0.25i)", (1.5, -0.25)),
            ("i", (0.0, 1.0)),
            ("-i", (0.0, -1.0)),
            ("3-i", (3.0, -1.0)),
            ("1e-3+2E+1i", (1e-3, 20.0)),
            ("-2e-2-1e-2i", (-2e-2, -1e-2)),
            (" 1 + 2 i ", (1.0, 2.0)),
        ];
        for (text, (re, im)) in cases {
            assert_eq!(complex(text).unwrap(), Complex::new(re, im), "{text}");
        }
        for bad in ["", "abc", "1+", "1+2", "()", "1+2k"] {
            assert!(complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn format_round_trips() {
        for z in [
            Complex::new(0.1, 0.0),
            Complex::new(-1.0 / 3.0, 2.0 / 7.0),
            Complex::new(1e300, -1e-300),
            Complex::new(0.0, -0.0),
        ] {
            let back = complex(&format_complex(z)).unwrap();
            assert_eq!(back.re.to_bits(), z.re.to_bits());
            assert_eq!(back.im, z.im);
        }
    }

    #[test]
    fn grids_and_lists() {
        let g = complex_list("1:2:5").unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g[4], Complex::new(2.0, 0.0));
        assert_eq!(g[1], Complex::new(1.25, 0.0));
        let g = complex_list("1+i:1+3i:3,5").unwrap();
        assert_eq!(g, vec![Complex::new(1.0, 1.0), Complex::new(1.0, 2.0), Complex::new(1.0, 3.0), Complex::new(5.0, 0.0)]);
        assert!(complex_list("1:2:0").is_err());
        assert!(complex_list("1:2").is_err());
        assert_eq!(int_list("-2:1,7").unwrap(), vec![-2, -1, 0, 1, 7]);
        assert!(int_list("3:1").is_err());
    }
}
