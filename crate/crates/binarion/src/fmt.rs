//! Deterministic numeric formatting shared by `Display` impls and the CLI.

/// Format `v` with `digits` significant digits, trailing zeros trimmed.
///
/// Plain decimal notation, no exponent form. Identical inputs format
/// identically, which keeps CLI output byte-stable across runs.
pub fn sig_digits(v: f64, digits: u32) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// [`sig_digits`] at the 12-digit precision used for human-readable output.
pub fn sig12(v: f64) -> String {
    sig_digits(v, 12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_numbers_trim_to_integers() {
        assert_eq!(sig12(2.0), "2");
        assert_eq!(sig12(2.0000000000000004), "2");
        assert_eq!(sig12(34.0), "34");
        assert_eq!(sig12(-4.0), "-4");
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(-0.0), "0");
    }

    #[test]
    fn fractions_keep_twelve_significant_digits() {
        assert_eq!(sig12(std::f64::consts::LN_2), "0.69314718056");
        assert_eq!(sig12(0.5), "0.5");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(1234.56789), "1234.56789");
    }

    #[test]
    fn small_magnitudes_do_not_collapse_to_zero() {
        assert_eq!(sig12(1e-9), "0.000000001");
        assert_eq!(sig12(-2.5e-7), "-0.00000025");
    }
}
