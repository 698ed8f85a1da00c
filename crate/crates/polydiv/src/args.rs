//! Parsers for numeric command-line values.

use polydiv_core::estimator::WindowKind;

/// An exact non-negative integer written in decimal or scientific notation
/// (`1000000`, `1e6`, `2.5e3`). Fractional values are rejected.
pub fn parse_count(s: &str) -> Result<u64, String> {
    let t = s.trim().replace('_', "");
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = t[i + 1..]
                .parse()
                .map_err(|_| format!("bad exponent in {s:?}"))?;
            (&t[..i], e)
        }
        None => (t.as_str(), 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(format!("{s:?} is not a non-negative number"));
    }
    let digits = format!("{int}{frac}");
    let scale = exp - frac.len() as i32;
    let (keep, dropped) = if scale >= 0 {
        (digits.clone(), "")
    } else {
        let cut = digits.len().saturating_sub((-scale) as usize);
        (digits[..cut].to_string(), &digits[cut..])
    };
    if dropped.chars().any(|c| c != '0') {
        return Err(format!("{s:?} is not an integer"));
    }
    let mut v: u64 = if keep.is_empty() {
        0
    } else {
        keep.parse().map_err(|_| format!("{s:?} is out of range"))?
    };
    for _ in 0..scale.max(0) {
        v = v.checked_mul(10).ok_or_else(|| format!("{s:?} is out of range"))?;
    }
    Ok(v)
}

pub fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("{s:?} is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

/// `lo:hi:steps`, log-spaced.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

pub fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, steps] = parts[..] else {
        return Err(format!("{s:?}: expected lo:hi:steps"));
    };
    Ok(Grid {
        lo: parse_real(lo)?,
        hi: parse_real(hi)?,
        steps: parse_count(steps)? as usize,
    })
}

/// The `--z` value: a number, a multiple of `y` (`2y`, `1.5y`) or `y^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ZSpec {
    Fixed(f64),
    Relative(WindowKind),
}

impl ZSpec {
    pub fn resolve(&self, y: f64) -> f64 {
        match self {
            ZSpec::Fixed(z) => *z,
            ZSpec::Relative(k) => k.z_for(y),
        }
    }

    pub fn kind(&self) -> Option<WindowKind> {
        match self {
            ZSpec::Fixed(_) => None,
            ZSpec::Relative(k) => Some(*k),
        }
    }
}

pub fn parse_z(s: &str) -> Result<ZSpec, String> {
    let t = s.trim();
    if t == "y^2" || t == "y2" {
        return Ok(ZSpec::Relative(WindowKind::Square));
    }
    if let Some(c) = t.strip_suffix('y') {
        let c = c.trim_end_matches('*');
        let c = if c.is_empty() { 1.0 } else { parse_real(c)? };
        return Ok(ZSpec::Relative(WindowKind::Multiple(c)));
    }
    Ok(ZSpec::Fixed(parse_real(t)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(parse_count("1e7"), Ok(10_000_000));
        assert_eq!(parse_count("2.5e3"), Ok(2500));
        assert_eq!(parse_count("1000000"), Ok(1_000_000));
        assert_eq!(parse_count("1.0"), Ok(1));
        assert_eq!(parse_count("12_000"), Ok(12_000));
        assert!(parse_count("2.5").is_err());
        assert!(parse_count("1e-1").is_err());
        assert!(parse_count("-3").is_err());
        assert!(parse_count("1e30").is_err());
        assert_eq!(parse_count("1500e-2"), Ok(15));
    }

    #[test]
    fn windows() {
        assert_eq!(parse_z("2y"), Ok(ZSpec::Relative(WindowKind::Multiple(2.0))));
        assert_eq!(parse_z("y^2"), Ok(ZSpec::Relative(WindowKind::Square)));
        assert_eq!(parse_z("2e3"), Ok(ZSpec::Fixed(2000.0)));
        let g = parse_grid("100:1000:5").unwrap();
        assert_eq!((g.lo, g.hi, g.steps), (100.0, 1000.0, 5));
    }
}
