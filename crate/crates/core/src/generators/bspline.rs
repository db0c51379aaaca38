//! Cardinal B-splines by the convolution recursion.

/// Value of the cardinal B-spline of order `n` (supported on `[0, n]`),
/// the n-fold convolution of the indicator of the unit interval.
/// `n` must be >= 1; callers validate.
pub fn bspline_unchecked(n: u32, t: f64) -> f64 {
    if n == 1 {
        // Half-open on the right so integer translates tile the line.
        return if (0.0..1.0).contains(&t) { 1.0 } else { 0.0 };
    }
    if t <= 0.0 || t >= n as f64 {
        return 0.0;
    }
    let nm = (n - 1) as f64;
    (t / nm) * bspline_unchecked(n - 1, t) + ((n as f64 - t) / nm) * bspline_unchecked(n - 1, t - 1.0)
}
