//! Bjontegaard rate difference between two RD curves.
//!
//! Log-rate is interpolated over quality with a monotone piecewise
//! cubic (Fritsch-Carlson), integrated analytically over the
//! overlapping quality interval. The classic cubic-polynomial fit is
//! available as a cross-check variant.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum BdError {
    /// Fewer than two points.
    TooFewPoints(usize),
    /// Rates not strictly increasing, or quality decreasing in rate.
    NotMonotone { index: usize },
    /// Rates must be positive for log-domain interpolation.
    NonPositiveRate(f64),
    /// Quality ranges of the two curves do not overlap.
    NoOverlap,
    /// Equal quality at different rates; log-rate is not a function of
    /// quality on this curve.
    DegenerateQuality { index: usize },
}

impl fmt::Display for BdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BdError::TooFewPoints(n) => write!(f, "need at least 2 RD points, got {n}"),
            BdError::NotMonotone { index } => {
                write!(f, "curve not monotone at point {index}")
            }
            BdError::NonPositiveRate(r) => write!(f, "non-positive rate {r}"),
            BdError::NoOverlap => write!(f, "quality ranges do not overlap"),
            BdError::DegenerateQuality { index } => {
                write!(f, "repeated quality value at point {index}")
            }
        }
    }
}

impl std::error::Error for BdError {}

/// A rate-distortion curve: `(rate_bits, quality)` points sorted by
/// rate, rate strictly increasing and quality non-decreasing.
#[derive(Debug, Clone, PartialEq)]
pub struct RdCurve {
    points: Vec<(f64, f64)>,
}

impl RdCurve {
    pub fn new(mut points: Vec<(f64, f64)>) -> Result<RdCurve, BdError> {
        if points.len() < 2 {
            return Err(BdError::TooFewPoints(points.len()));
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (i, w) in points.windows(2).enumerate() {
            if w[1].0 <= w[0].0 {
                return Err(BdError::NotMonotone { index: i + 1 });
            }
            if w[1].1 < w[0].1 {
                return Err(BdError::NotMonotone { index: i + 1 });
            }
        }
        for &(r, _) in &points {
            if r <= 0.0 {
                return Err(BdError::NonPositiveRate(r));
            }
        }
        Ok(RdCurve { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    fn quality_range(&self) -> (f64, f64) {
        (
            self.points.first().unwrap().1,
            self.points.last().unwrap().1,
        )
    }

    // (quality, ln rate) knots; quality must be strictly increasing.
    fn log_knots(&self) -> Result<(Vec<f64>, Vec<f64>), BdError> {
        let mut xs = Vec::with_capacity(self.points.len());
        let mut ys = Vec::with_capacity(self.points.len());
        for (i, &(r, q)) in self.points.iter().enumerate() {
            if i > 0 && q <= xs[i - 1] {
                return Err(BdError::DegenerateQuality { index: i });
            }
            xs.push(q);
            ys.push(r.ln());
        }
        Ok((xs, ys))
    }
}

/// Monotone piecewise-cubic interpolant (Fritsch-Carlson slopes).
struct Pchip {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl Pchip {
    fn new(xs: Vec<f64>, ys: Vec<f64>) -> Pchip {
        let n = xs.len();
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let d: Vec<f64> = ys
            .windows(2)
            .zip(h.iter())
            .map(|(w, &hh)| (w[1] - w[0]) / hh)
            .collect();
        let mut m = vec![0.0; n];
        if n == 2 {
            m[0] = d[0];
            m[1] = d[0];
        } else {
            m[0] = edge_slope(h[0], h[1], d[0], d[1]);
            m[n - 1] = edge_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
            for i in 1..n - 1 {
                if d[i - 1] * d[i] <= 0.0 {
                    m[i] = 0.0;
                } else {
                    let w1 = 2.0 * h[i] + h[i - 1];
                    let w2 = h[i] + 2.0 * h[i - 1];
                    m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
                }
            }
        }
        Pchip { xs, ys, slopes: m }
    }

    fn piece(&self, i: usize) -> (f64, f64, f64, f64, f64) {
        let h = self.xs[i + 1] - self.xs[i];
        let d = (self.ys[i + 1] - self.ys[i]) / h;
        let c2 = (3.0 * d - 2.0 * self.slopes[i] - self.slopes[i + 1]) / h;
        let c3 = (self.slopes[i] + self.slopes[i + 1] - 2.0 * d) / (h * h);
        (self.ys[i], self.slopes[i], c2, c3, h)
    }

    #[cfg(test)]
    fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let i = match self.xs.binary_search_by(|v| v.total_cmp(&x)) {
            Ok(i) => i.min(n - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(n - 2),
        };
        let (y0, m0, c2, c3, _) = self.piece(i);
        let s = x - self.xs[i];
        y0 + m0 * s + c2 * s * s + c3 * s * s * s
    }

    /// Exact integral over `[a, b]` (both inside the knot range).
    fn integrate(&self, a: f64, b: f64) -> f64 {
        let n = self.xs.len();
        let mut total = 0.0;
        for i in 0..n - 1 {
            let lo = self.xs[i].max(a);
            let hi = self.xs[i + 1].min(b);
            if lo >= hi {
                continue;
            }
            let (y0, m0, c2, c3, _) = self.piece(i);
            let anti = |s: f64| {
                y0 * s + m0 * s * s / 2.0 + c2 * s * s * s / 3.0 + c3 * s * s * s * s / 4.0
            };
            total += anti(hi - self.xs[i]) - anti(lo - self.xs[i]);
        }
        total
    }
}

fn edge_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    // Three-point one-sided estimate with the Fritsch-Carlson clamps.
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m * d0 <= 0.0 {
        0.0
    } else if d0 * d1 <= 0.0 && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}

fn overlap(baseline: &RdCurve, test: &RdCurve) -> Result<(f64, f64), BdError> {
    let (b_lo, b_hi) = baseline.quality_range();
    let (t_lo, t_hi) = test.quality_range();
    let lo = b_lo.max(t_lo);
    let hi = b_hi.min(t_hi);
    if lo >= hi {
        return Err(BdError::NoOverlap);
    }
    Ok((lo, hi))
}

/// Average percent rate difference of `test` against `baseline` at
/// equal quality. Negative means `test` spends fewer bits.
pub fn bd_rate(baseline: &RdCurve, test: &RdCurve) -> Result<f64, BdError> {
    let (lo, hi) = overlap(baseline, test)?;
    let (bx, by) = baseline.log_knots()?;
    let (tx, ty) = test.log_knots()?;
    let pb = Pchip::new(bx, by);
    let pt = Pchip::new(tx, ty);
    let mean_diff = (pt.integrate(lo, hi) - pb.integrate(lo, hi)) / (hi - lo);
    Ok(100.0 * (mean_diff.exp() - 1.0))
}

/// Classic variant: least-squares cubic polynomial of ln rate over
/// quality (exact interpolation on 4-point curves), kept as a
/// cross-check for the monotone interpolant.
pub fn bd_rate_classic(baseline: &RdCurve, test: &RdCurve) -> Result<f64, BdError> {
    let (lo, hi) = overlap(baseline, test)?;
    let (bx, by) = baseline.log_knots()?;
    let (tx, ty) = test.log_knots()?;
    // Shared centering keeps the normal equations well conditioned.
    let center = (lo + hi) / 2.0;
    let scale = ((hi - lo) / 2.0).max(1e-9);
    let ib = integrate_cubic_fit(&bx, &by, lo, hi, center, scale);
    let it = integrate_cubic_fit(&tx, &ty, lo, hi, center, scale);
    let mean_diff = (it - ib) / (hi - lo);
    Ok(100.0 * (mean_diff.exp() - 1.0))
}

fn integrate_cubic_fit(xs: &[f64], ys: &[f64], lo: f64, hi: f64, center: f64, scale: f64) -> f64 {
    let u: Vec<f64> = xs.iter().map(|&x| (x - center) / scale).collect();
    // Normal equations for a cubic in u.
    let mut ata = [[0.0f64; 4]; 4];
    let mut atb = [0.0f64; 4];
    for (ui, &yi) in u.iter().zip(ys.iter()) {
        let pow: Vec<f64> = (0..4).map(|k| ui.powi(k)).collect();
        for r in 0..4 {
            for c in 0..4 {
                ata[r][c] += pow[r] * pow[c];
            }
            atb[r] += pow[r] * yi;
        }
    }
    let coef = solve4(&mut ata, &mut atb);
    // Integrate sum(c_k u^k) du over u(lo)..u(hi), then scale back.
    let ulo = (lo - center) / scale;
    let uhi = (hi - center) / scale;
    let anti = |x: f64| {
        coef[0] * x + coef[1] * x * x / 2.0 + coef[2] * x * x * x / 3.0
            + coef[3] * x * x * x * x / 4.0
    };
    (anti(uhi) - anti(ulo)) * scale
}

fn solve4(a: &mut [[f64; 4]; 4], b: &mut [f64; 4]) -> [f64; 4] {
    // Gaussian elimination with partial pivoting.
    for col in 0..4 {
        let mut pivot = col;
        for r in col + 1..4 {
            if a[r][col].abs() > a[pivot][col].abs() {
                pivot = r;
            }
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let diag = a[col][col];
        for r in col + 1..4 {
            let factor = a[r][col] / diag;
            for c in col..4 {
                a[r][c] -= factor * a[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    let mut x = [0.0f64; 4];
    for r in (0..4).rev() {
        let mut acc = b[r];
        for c in r + 1..4 {
            acc -= a[r][c] * x[c];
        }
        x[r] = acc / a[r][r];
    }
    x
}
