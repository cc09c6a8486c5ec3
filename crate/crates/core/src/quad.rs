//! Adaptive Simpson quadrature.

fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
    let m = 0.5 * (a + b);
    let fm = f(m);
    (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64, m: f64, fm: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let (lm, flm, left) = simpson(f, a, fa, m, fm);
    let (rm, frm, right) = simpson(f, m, fm, b, fb);
    let delta = left + right - whole;
    if depth == 0 || libm::fabs(delta) <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    refine(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) + refine(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
}

/// `int_a^b f` to absolute tolerance `tol`. The interval is pre-split into
/// 64 panels so narrow peaks are not missed by the first Simpson estimate.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    const PANELS: usize = 64;
    let h = (b - a) / PANELS as f64;
    (0..PANELS)
        .map(|i| {
            let lo = a + h * i as f64;
            let hi = if i + 1 == PANELS { b } else { lo + h };
            let (flo, fhi) = (f(lo), f(hi));
            let (m, fm, whole) = simpson(&f, lo, flo, hi, fhi);
            refine(&f, lo, flo, hi, fhi, m, fm, whole, tol / PANELS as f64, 40)
        })
        .sum()
}
