/// Minimizer of a smooth unimodal `f` on `[lo, hi]`.
///
/// Golden-section search narrows the bracket to ~1e-6; the last digits come
/// from bisecting on the sign of a central-difference slope, which is not
/// limited by the flatness of `f` near its minimum.
pub fn locate_minimum<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-6 * (1.0 + a.abs().max(b.abs())) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    let (mut a, mut b) = ((a - 1e-6).max(lo), (b + 1e-6).min(hi));
    let h = 1e-5 * (1.0 + a.abs().max(b.abs()));
    let slope = |t: f64| f(t + h) - f(t - h);
    if slope(a) > 0.0 {
        return a;
    }
    if slope(b) < 0.0 {
        return b;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if slope(m) < 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}
