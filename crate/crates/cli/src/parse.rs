//! Flag value parsers and number formatting shared by the subcommands.

use num_complex::Complex64;
use theta_sum::TruncationPolicy;

/// Parse `RE`, `RE+IMj` or `RE-IMj` (also with `i` for the unit, and a
/// bare `IMj`). Exponent signs such as `1e-3+2e-1j` are not split on.
pub fn complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    let bad = || format!("cannot parse '{s}' as RE or RE+IMj");
    let Some(body) = t.strip_suffix(['j', 'i']) else {
        return t
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad());
    };
    // Split at the last sign that is not the leading one and not part of
    // an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    let im = im
        .trim_start_matches('+')
        .parse::<f64>()
        .map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

/// Comma-separated list of complex values.
pub fn complex_list(s: &str) -> Result<Vec<Complex64>, String> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(complex)
        .collect()
}

/// `optimal`, `fixed:N` or `target:EPS:CAP`.
pub fn policy(s: &str) -> Result<TruncationPolicy, String> {
    let parts: Vec<&str> = s.trim().split(':').collect();
    let policy = match parts.as_slice() {
        ["optimal"] => TruncationPolicy::OptimalFirstMin,
        ["fixed", n] => TruncationPolicy::Fixed(
            n.parse()
                .map_err(|_| format!("fixed:N needs an integer count (got '{n}')"))?,
        ),
        ["target", eps, cap] => TruncationPolicy::ErrorTarget {
            eps: eps.parse().map_err(|_| format!("bad eps '{eps}'"))?,
            cap: cap.parse().map_err(|_| format!("bad cap '{cap}'"))?,
        },
        _ => {
            return Err(format!(
                "policy must be optimal, fixed:N or target:EPS:CAP (got '{s}')"
            ))
        }
    };
    policy.validate().map_err(|e| e.to_string())?;
    Ok(policy)
}

/// 17 significant digits: round-trips every binary64 value.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// Shortest round-trip form, in plain notation for moderate magnitudes.
pub fn human(x: f64) -> String {
    if x == 0.0 || (1e-4..1e7).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub fn human_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{} {sign} {}j", human(z.re), human(z.im.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(complex("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(complex("-1").unwrap(), Complex64::new(-1.0, 0.0));
        assert_eq!(complex("0.5+0.3j").unwrap(), Complex64::new(0.5, 0.3));
        assert_eq!(complex("0.5-0.3j").unwrap(), Complex64::new(0.5, -0.3));
        assert_eq!(complex("1e-3+2e-1j").unwrap(), Complex64::new(1e-3, 0.2));
        assert_eq!(complex("1e-3-2E+1i").unwrap(), Complex64::new(1e-3, -20.0));
        assert_eq!(complex("2j").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(complex("-2.5e-2j").unwrap(), Complex64::new(0.0, -0.025));
        assert_eq!(complex("1-j").unwrap(), Complex64::new(1.0, -1.0));
        assert!(complex("abc").is_err());
        assert!(complex("1+2").is_err());
        assert!(complex("").is_err());
    }

    #[test]
    fn complex_lists() {
        let v = complex_list("0.1, 0.5+0.3j,2").unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[1], Complex64::new(0.5, 0.3));
    }

    #[test]
    fn policies() {
        assert_eq!(
            policy("optimal").unwrap(),
            TruncationPolicy::OptimalFirstMin
        );
        assert_eq!(policy("fixed:4").unwrap(), TruncationPolicy::Fixed(4));
        assert_eq!(
            policy("target:1e-12:50").unwrap(),
            TruncationPolicy::ErrorTarget {
                eps: 1e-12,
                cap: 50
            }
        );
        assert!(policy("fixed:0").is_err());
        assert!(policy("target:0:5").is_err());
        assert!(policy("fixed").is_err());
        assert!(policy("best").is_err());
    }

    #[test]
    fn sci_round_trips() {
        for x in [0.1, 1.0 / 3.0, 7.504e-4, f64::MIN_POSITIVE, -2.5e300, 0.0] {
            let s = sci(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn human_forms() {
        assert_eq!(human(0.369), "0.369");
        assert_eq!(human(3.6e-8), "3.6e-8");
        assert_eq!(human_complex(Complex64::new(1.0, -0.5)), "1 - 0.5j");
    }
}
