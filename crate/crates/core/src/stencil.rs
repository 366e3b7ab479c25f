//! Shared finite-difference and quadrature stencils on a uniform grid.

/// Composite trapezoid rule for samples spaced `h` apart.
pub fn trapezoid(values: &[f64], h: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => {
            let inner: f64 = values[1..n - 1].iter().sum();
            h * (inner + 0.5 * (values[0] + values[n - 1]))
        }
    }
}

/// Trapezoid of `f(j)` for `j = 0..n`, without materializing the samples.
pub fn trapezoid_by<F: Fn(usize) -> f64>(n: usize, h: f64, f: F) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let mut acc = 0.5 * (f(0) + f(n - 1));
    for j in 1..n - 1 {
        acc += f(j);
    }
    h * acc
}

/// Centered first derivative with second-order one-sided stencils at both ends.
pub fn derivative(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = vec![0.0; n];
    if n < 3 {
        if n == 2 {
            let d = (values[1] - values[0]) / h;
            out[0] = d;
            out[1] = d;
        }
        return out;
    }
    out[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h);
    for j in 1..n - 1 {
        out[j] = (values[j + 1] - values[j - 1]) / (2.0 * h);
    }
    out[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * h);
    out
}

/// Radial derivative of an odd field (such as `w = r u`): at `j = 0` the odd
/// extension turns the centered stencil into `w_1 / h`.
pub fn odd_derivative(values: &[f64], h: f64) -> Vec<f64> {
    let mut out = derivative(values, h);
    if values.len() >= 2 {
        out[0] = values[1] / h;
    }
    out
}

/// `|x|^{q-1} x`, with the integer fast path when `q` is integral.
#[inline]
pub fn signed_pow(x: f64, q: f64) -> f64 {
    if q == q.trunc() && q.abs() < 64.0 {
        let k = q as i32;
        if k % 2 == 1 {
            x.powi(k)
        } else {
            x.abs().powi(k) * x.signum()
        }
    } else {
        x.abs().powf(q).copysign(x)
    }
}

/// `|x|^q`.
#[inline]
pub fn abs_pow(x: f64, q: f64) -> f64 {
    if q == q.trunc() && q.abs() < 64.0 {
        x.abs().powi(q as i32)
    } else {
        x.abs().powf(q)
    }
}
