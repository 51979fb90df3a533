//! Chord lengths of non-decreasing lines through axis-aligned rectangles.
//!
//! Angles `mu` are inclinations in `[0, pi/4]`.

/// Length of segment `ab` inside `[xlo, xhi] x [ylo, yhi]`.
pub(crate) fn rect_clip(a: [f64; 2], b: [f64; 2], xlo: f64, xhi: f64, ylo: f64, yhi: f64) -> f64 {
    let mut t0 = 0.0f64;
    let mut t1 = 1.0f64;
    for (k, lo, hi) in [(0, xlo, xhi), (1, ylo, yhi)] {
        let d = b[k] - a[k];
        if d == 0.0 {
            if a[k] < lo || a[k] > hi {
                return 0.0;
            }
            continue;
        }
        let (p, q) = ((lo - a[k]) / d, (hi - a[k]) / d);
        t0 = t0.max(p.min(q));
        t1 = t1.min(p.max(q));
        if t0 > t1 {
            return 0.0;
        }
    }
    (t1 - t0) * ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt()
}

/// Chord inside `[x_r - w, x_r] x [ylo, yhi]` of the line through
/// `(x_r, y_r)` with inclination `mu`.
pub(crate) fn chord_from_right(y_r: f64, mu: f64, w: f64, ylo: f64, yhi: f64) -> f64 {
    let t = mu.tan();
    if t == 0.0 {
        return if ylo <= y_r && y_r <= yhi { w } else { 0.0 };
    }
    let u_lo = ((y_r - yhi) / t).max(0.0);
    let u_hi = ((y_r - ylo) / t).min(w);
    (u_hi - u_lo).max(0.0) / mu.cos()
}

/// Largest [`chord_from_right`] over `y_r in [ca, cb]`, `mu in [mua, mub]`.
pub(crate) fn max_chord_from_right(ca: f64, cb: f64, mua: f64, mub: f64, w: f64, ylo: f64, yhi: f64) -> f64 {
    let y_r = yhi.clamp(ca, cb);
    let corner = ((y_r - ylo) / w).atan().clamp(mua, mub);
    [mua, mub, corner]
        .into_iter()
        .map(|mu| chord_from_right(y_r, mu, w, ylo, yhi))
        .fold(0.0, f64::max)
}

/// Smallest [`chord_from_right`] over the same parameter box.
pub(crate) fn min_chord_from_right(ca: f64, cb: f64, mua: f64, mub: f64, w: f64, ylo: f64, yhi: f64) -> f64 {
    let mut m = f64::INFINITY;
    for y_r in [ca, cb] {
        for mu in [mua, mub] {
            m = m.min(chord_from_right(y_r, mu, w, ylo, yhi));
        }
    }
    m
}

/// Length from `q` along inclination `mu` until leaving `x <= xhi, y <= yhi`.
pub(crate) fn forward(q: [f64; 2], mu: f64, xhi: f64, yhi: f64) -> f64 {
    let along_x = ((xhi - q[0]) / mu.cos()).max(0.0);
    let s = mu.sin();
    if s == 0.0 {
        return along_x;
    }
    along_x.min(((yhi - q[1]) / s).max(0.0))
}

/// Length from `q` against inclination `mu` until leaving `x >= xlo, y >= ylo`.
pub(crate) fn backward(q: [f64; 2], mu: f64, xlo: f64, ylo: f64) -> f64 {
    let along_x = ((q[0] - xlo) / mu.cos()).max(0.0);
    let s = mu.sin();
    if s == 0.0 {
        return along_x;
    }
    along_x.min(((q[1] - ylo) / s).max(0.0))
}

/// Largest [`forward`] from the fixed point `q` over `mu in [mua, mub]`.
pub(crate) fn max_forward(q: [f64; 2], mua: f64, mub: f64, xhi: f64, yhi: f64) -> f64 {
    let corner = (yhi - q[1]).atan2(xhi - q[0]).clamp(mua, mub);
    [mua, mub, corner]
        .into_iter()
        .map(|mu| forward(q, mu, xhi, yhi))
        .fold(0.0, f64::max)
}

/// Lower bound on the chord through a point of segment `qa..qb` (coordinates
/// non-decreasing from `qa` to `qb`) with inclination in `[mua, mub]`, inside
/// `[xlo, xhi] x [ylo, yhi]`.
pub(crate) fn min_chord_through(
    qa: [f64; 2],
    qb: [f64; 2],
    mua: f64,
    mub: f64,
    (xlo, xhi, ylo, yhi): (f64, f64, f64, f64),
) -> f64 {
    let f = forward(qb, mua, xhi, yhi).min(forward(qb, mub, xhi, yhi));
    let b = backward(qa, mua, xlo, ylo).min(backward(qa, mub, xlo, ylo));
    f + b
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn rect_clip_examples() {
        assert!((rect_clip([-1.0, 0.5], [3.0, 0.5], 0.0, 2.0, 0.0, 1.0) - 2.0).abs() < 1e-15);
        assert!((rect_clip([0.0, 0.0], [2.0, 2.0], 0.0, 1.0, 0.0, 1.0) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(rect_clip([0.0, 2.0], [1.0, 3.0], 0.0, 1.0, 0.0, 1.0), 0.0);
    }

    #[test]
    fn right_chord_matches_clip() {
        let (w, ylo, yhi) = (2.0, 0.0, 1.5);
        for y_r in [-0.5, 0.0, 0.7, 1.5, 2.2, 3.4] {
            for mu in [0.0, 0.2, 0.5, FRAC_PI_4] {
                let t = f64::tan(mu);
                let a = [0.0 - 10.0, y_r - (w + 10.0) * t];
                let b = [w, y_r];
                let direct = rect_clip(a, b, 0.0, w, ylo, yhi);
                let c = chord_from_right(y_r, mu, w, ylo, yhi);
                assert!((direct - c).abs() < 1e-12, "{y_r} {mu}: {direct} vs {c}");
            }
        }
    }

    #[test]
    fn max_and_min_bracket_samples() {
        let (w, ylo, yhi) = (1.0, 0.0, 2.0);
        let (ca, cb, mua, mub) = (1.4, 2.6, 0.1, 0.6);
        let hi = max_chord_from_right(ca, cb, mua, mub, w, ylo, yhi);
        let lo = min_chord_from_right(ca, cb, mua, mub, w, ylo, yhi);
        for i in 0..=40 {
            for j in 0..=40 {
                let y = ca + (cb - ca) * i as f64 / 40.0;
                let mu = mua + (mub - mua) * j as f64 / 40.0;
                let c = chord_from_right(y, mu, w, ylo, yhi);
                assert!(c <= hi + 1e-12 && c >= lo - 1e-12);
            }
        }
    }

    #[test]
    fn forward_chord_bounds() {
        let q = [0.0, 0.3];
        let best = max_forward(q, 0.0, FRAC_PI_4, 2.0, 1.0);
        for j in 0..=50 {
            let mu = FRAC_PI_4 * j as f64 / 50.0;
            assert!(forward(q, mu, 2.0, 1.0) <= best + 1e-12);
        }
    }
}
