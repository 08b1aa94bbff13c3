//! Shared decimal formatting: 12 significant digits, `%g`-style.
//!
//! Twelve digits are comfortably inside f64's 15-digit round-trip range, so
//! parsing a printed value and printing it again reproduces the same bytes.

/// Formats `x` with 12 significant digits, positional for moderate exponents
/// and scientific otherwise, trailing zeros trimmed.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{:.11e}", x);
    let (mantissa, exp) = s.split_once('e').expect("exponential format");
    let exp: i32 = exp.parse().expect("exponent");
    let neg = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    debug_assert_eq!(digits.len(), 12);

    let body = if (-4..12).contains(&exp) {
        if exp >= 0 {
            let cut = (exp + 1) as usize;
            let int = &digits[..cut];
            let frac = digits[cut..].trim_end_matches('0');
            if frac.is_empty() {
                int.to_string()
            } else {
                format!("{int}.{frac}")
            }
        } else {
            let frac = digits.trim_end_matches('0');
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), frac)
        }
    } else {
        let head = &digits[..1];
        let tail = digits[1..].trim_end_matches('0');
        if tail.is_empty() {
            format!("{head}e{exp}")
        } else {
            format!("{head}.{tail}e{exp}")
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_values() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(-2.5), "-2.5");
        assert_eq!(sig12(10.0), "10");
        assert_eq!(sig12(0.1), "0.1");
        assert_eq!(sig12(18.181818181818), "18.1818181818");
    }

    #[test]
    fn extreme_values_go_scientific() {
        assert_eq!(sig12(1e15), "1e15");
        assert_eq!(sig12(1.25e-7), "1.25e-7");
    }

    #[test]
    fn print_parse_print_is_stable() {
        for &x in &[
            std::f64::consts::PI,
            1.0 / 3.0,
            -123456.789,
            9.87654321e-12,
            484.0 / 15.0,
            1e11,
            1e12,
        ] {
            let once = sig12(x);
            let back: f64 = once.parse().unwrap();
            assert_eq!(sig12(back), once, "unstable for {x}");
        }
    }
}
