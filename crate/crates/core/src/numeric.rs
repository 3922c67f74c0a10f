//! Small numeric helpers shared by the bound formulas.

/// How close a float must be to an integer before we treat it as that
/// integer. Bound formulas evaluate small rationals (or spectra accurate to
/// ~1e-10), so anything within 1e-9 of an integer *is* that integer
/// mathematically and must not be ceiled past it.
const SNAP: f64 = 1e-9;

/// Ceiling that snaps near-integers first.
///
/// `ceil_i64(2.0000000000004) == 2`, not 3 — essential when the argument is
/// exactly an integer in exact arithmetic but carries float noise, e.g.
/// `d * (1 - 1/d)` or a logarithm that lands on an integer power.
pub fn ceil_i64(x: f64) -> i64 {
    let rounded = x.round();
    if (x - rounded).abs() < SNAP {
        rounded as i64
    } else {
        x.ceil() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::ceil_i64;

    #[test]
    fn snaps_float_noise_around_integers() {
        assert_eq!(ceil_i64(2.0), 2);
        assert_eq!(ceil_i64(2.0 + 4e-10), 2);
        assert_eq!(ceil_i64(2.0 - 4e-10), 2);
        assert_eq!(ceil_i64(2.0001), 3);
        assert_eq!(ceil_i64(1.1), 2);
        assert_eq!(ceil_i64(-0.5), 0);
        assert_eq!(ceil_i64(-1.0 - 4e-10), -1);
        assert_eq!(ceil_i64(0.0), 0);
        // 11 * (5/6 - 1/11) = 49/6: genuinely fractional, plain ceiling.
        assert_eq!(ceil_i64(11.0 * (5.0 / 6.0 - 1.0 / 11.0)), 9);
    }
}
