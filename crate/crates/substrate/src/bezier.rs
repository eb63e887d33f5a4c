use capillary_core::{Error, Real, Result, Side, Surface};

/// Cubic Bezier segment with control points `(x_i, y_i)`, `i = 1..=4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicBezierSegment<T> {
    pub x: [T; 4],
    pub y: [T; 4],
}

/// Bernstein weights `B_1..B_4` at `ell`.
pub fn bernstein<T: Real>(ell: T) -> [T; 4] {
    let s = T::one() - ell;
    let three = T::lit(3.0);
    [s * s * s, three * s * s * ell, three * s * ell * ell, ell * ell * ell]
}

fn combine<T: Real>(w: &[T; 4], p: &[T; 4]) -> T {
    w[0] * p[0] + w[1] * p[1] + w[2] * p[2] + w[3] * p[3]
}

/// Derivative of a cubic in Bernstein form with coefficients `p`.
fn derivative<T: Real>(p: &[T; 4], ell: T) -> T {
    let s = T::one() - ell;
    let three = T::lit(3.0);
    three * (s * s * (p[1] - p[0]) + T::lit(2.0) * s * ell * (p[2] - p[1]) + ell * ell * (p[3] - p[2]))
}

/// Point on the segment at parameter `ell`.
pub fn bezier_eval<T: Real>(seg: &CubicBezierSegment<T>, ell: T) -> Result<(T, T)> {
    if !(ell >= T::zero() && ell <= T::one()) {
        return Err(Error::Domain(format!("Bezier parameter {ell} outside [0, 1]")));
    }
    let w = bernstein(ell);
    Ok((combine(&w, &seg.x), combine(&w, &seg.y)))
}

/// Parameter `ell` with `x(ell) = x`, by Newton steps safeguarded with bisection.
pub fn bezier_inverse<T: Real>(seg: &CubicBezierSegment<T>, x: T) -> Result<T> {
    seg.check_monotone()?;
    let (x0, x1) = (seg.x[0], seg.x[3]);
    if !(x >= x0 && x <= x1) {
        return Err(Error::Domain(format!("x = {x} outside segment [{x0}, {x1}]")));
    }
    if x == x0 {
        return Ok(T::zero());
    }
    if x == x1 {
        return Ok(T::one());
    }
    let tol = T::lit(1e-14) * (x1 - x0);
    let (mut lo, mut hi) = (T::zero(), T::one());
    let mut ell = (x - x0) / (x1 - x0);
    for _ in 0..100 {
        let f = combine(&bernstein(ell), &seg.x) - x;
        if f.abs() <= tol {
            return Ok(ell);
        }
        if f < T::zero() {
            lo = ell;
        } else {
            hi = ell;
        }
        let next = ell - f / derivative(&seg.x, ell);
        ell = if next > lo && next < hi { next } else { T::lit(0.5) * (lo + hi) };
        if hi - lo <= T::epsilon() {
            return Ok(ell);
        }
    }
    Ok(ell)
}

impl<T: Real> CubicBezierSegment<T> {
    pub fn new(x: [T; 4], y: [T; 4]) -> Result<Self> {
        let seg = Self { x, y };
        seg.check_monotone()?;
        Ok(seg)
    }

    /// Errors unless `x(ell)` is strictly increasing on `[0, 1]`.
    pub fn check_monotone(&self) -> Result<()> {
        let d = [self.x[1] - self.x[0], self.x[2] - self.x[1], self.x[3] - self.x[2]];
        // dx/dl = 3 (d0 s^2 + 2 d1 s l + d2 l^2): check both ends and the interior extremum
        let mut min = d[0].min(d[2]);
        let curv = d[0] - T::lit(2.0) * d[1] + d[2];
        if curv != T::zero() {
            let l = (d[0] - d[1]) / curv;
            if l > T::zero() && l < T::one() {
                min = min.min(derivative(&self.x, l) / T::lit(3.0));
            }
        }
        if !(min > T::zero()) {
            return Err(Error::Invariant("Bezier segment x(l) is not strictly increasing".into()));
        }
        Ok(())
    }

    /// `(w, dw/dx)` at parameter `ell`.
    pub fn graph_at(&self, ell: T) -> (T, T) {
        let y = combine(&bernstein(ell), &self.y);
        (y, derivative(&self.y, ell) / derivative(&self.x, ell))
    }
}

/// How `w(x)` is recovered from the parametric curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InverseMode {
    /// Safeguarded Newton inversion of `x(ell)`.
    #[default]
    Newton,
    /// Piecewise-linear interpolation through `samples + 1` points per segment.
    Sampled { samples: usize },
}

/// Graph `w(x) = y(ell(x))` of consecutive cubic Bezier segments.
#[derive(Debug, Clone, PartialEq)]
pub struct BezierProfile<T> {
    segments: Vec<CubicBezierSegment<T>>,
    mode: InverseMode,
    samples: Vec<Vec<(T, T)>>,
}

impl<T: Real> BezierProfile<T> {
    pub fn new(segments: Vec<CubicBezierSegment<T>>, mode: InverseMode) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidInput("Bezier profile needs at least one segment".into()));
        }
        for s in &segments {
            s.check_monotone()?;
        }
        for pair in segments.windows(2) {
            if pair[0].x[3] != pair[1].x[0] || pair[0].y[3] != pair[1].y[0] {
                return Err(Error::InvalidInput("Bezier segments are not joined end to end".into()));
            }
        }
        let samples = match mode {
            InverseMode::Newton => Vec::new(),
            InverseMode::Sampled { samples } => {
                if samples == 0 {
                    return Err(Error::InvalidInput("need at least one sample interval".into()));
                }
                segments
                    .iter()
                    .map(|s| {
                        (0..=samples)
                            .map(|i| bezier_eval(s, T::from_count(i) / T::from_count(samples)))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        };
        Ok(Self { segments, mode, samples })
    }

    pub fn segments(&self) -> &[CubicBezierSegment<T>] {
        &self.segments
    }

    pub fn mode(&self) -> InverseMode {
        self.mode
    }

    fn locate(&self, x: T) -> Result<usize> {
        self.check_inside(x)?;
        Ok(self.segments.iter().position(|s| x <= s.x[3]).unwrap_or(self.segments.len() - 1))
    }

    fn eval_in(&self, i: usize, x: T) -> Result<(T, T)> {
        match self.mode {
            InverseMode::Newton => {
                let seg = &self.segments[i];
                Ok(seg.graph_at(bezier_inverse(seg, x)?))
            }
            InverseMode::Sampled { .. } => {
                let pts = &self.samples[i];
                let k = pts.partition_point(|p| p.0 < x).clamp(1, pts.len() - 1);
                let (p, q) = (pts[k - 1], pts[k]);
                let slope = (q.1 - p.1) / (q.0 - p.0);
                Ok((p.1 + slope * (x - p.0), slope))
            }
        }
    }
}

impl<T: Real> Surface<T> for BezierProfile<T> {
    fn height(&self, x: T) -> Result<T> {
        let i = self.locate(x)?;
        Ok(self.eval_in(i, x)?.0)
    }

    fn slope(&self, x: T, side: Side) -> Result<T> {
        let i = self.locate(x)?;
        let at_joint = x == self.segments[i].x[3] && i + 1 < self.segments.len();
        if !at_joint {
            return Ok(self.eval_in(i, x)?.1);
        }
        let left = self.eval_in(i, x)?.1;
        let right = self.eval_in(i + 1, x)?.1;
        Ok(match side {
            Side::Left => left,
            Side::Right => right,
            Side::Average => T::lit(0.5) * (left + right),
        })
    }

    fn domain(&self) -> (T, T) {
        (self.segments[0].x[0], self.segments[self.segments.len() - 1].x[3])
    }
}

/// Control points of the teapot cross-section (bottom and mouth).
pub const TEAPOT_X: [f64; 10] = [-2.0, -4.0 / 3.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, 4.0 / 3.0, 2.0, 2.655, 2.846, 4.0];
pub const TEAPOT_Y: [f64; 10] = [0.78, 0.0, 0.0, 0.0, 0.0, 0.0, 0.78, 1.142, 2.146, 2.5];

/// Teapot profile over `[-2, 4]` from segments (1-4), (4-7), (7-10).
pub fn teapot_profile<T: Real>(mode: InverseMode) -> Result<BezierProfile<T>> {
    let seg = |k: usize| {
        let px = [0, 1, 2, 3].map(|i| T::lit(TEAPOT_X[k + i]));
        let py = [0, 1, 2, 3].map(|i| T::lit(TEAPOT_Y[k + i]));
        CubicBezierSegment::new(px, py)
    };
    BezierProfile::new(vec![seg(0)?, seg(3)?, seg(6)?], mode)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn teapot() -> BezierProfile<f64> {
        teapot_profile(InverseMode::Newton).unwrap()
    }

    #[test]
    fn endpoints_interpolate() {
        let s = teapot().segments()[0];
        assert_eq!(bezier_eval(&s, 0.0).unwrap(), (-2.0, 0.78));
        assert_eq!(bezier_eval(&s, 1.0).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn partition_of_unity() {
        let b = bernstein(0.3f64);
        assert!((b.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn parameter_out_of_range() {
        let s = teapot().segments()[0];
        assert!(matches!(bezier_eval(&s, 1.5), Err(Error::Domain(_))));
        assert!(matches!(bezier_inverse(&s, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn inverse_endpoints_and_round_trip() {
        let s = teapot().segments()[2];
        assert_eq!(bezier_inverse(&s, 2.0).unwrap(), 0.0);
        assert_eq!(bezier_inverse(&s, 4.0).unwrap(), 1.0);
        let (x, _) = bezier_eval(&s, 0.5).unwrap();
        assert!((bezier_inverse(&s, x).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn non_monotone_rejected() {
        let bad = CubicBezierSegment { x: [0.0, 2.0, -1.0, 1.0], y: [0.0; 4] };
        assert!(matches!(bad.check_monotone(), Err(Error::Invariant(_))));
        assert!(matches!(bezier_inverse(&bad, 0.5), Err(Error::Invariant(_))));
    }

    #[test]
    fn teapot_values() {
        let t = teapot();
        assert!((t.height(-2.0).unwrap() - 0.78).abs() < 1e-15);
        assert!((t.height(4.0).unwrap() - 2.5).abs() < 1e-15);
        assert!(t.height(0.0).unwrap().abs() < 1e-15);
        assert_eq!(t.domain(), (-2.0, 4.0));
    }

    #[test]
    fn corner_slopes() {
        let t = teapot();
        let left = t.slope(2.0, Side::Left).unwrap();
        let right = t.slope(2.0, Side::Right).unwrap();
        assert!((left - 1.17).abs() < 1e-12);
        assert!((right - 0.362 / 0.655).abs() < 1e-12);
        assert!((t.slope(2.0, Side::Average).unwrap() - 0.5 * (left + right)).abs() < 1e-15);
    }

    #[test]
    fn domain_exit() {
        assert!(matches!(teapot().height(4.5), Err(Error::DomainExit { .. })));
    }

    #[test]
    fn sampled_mode_close_to_newton() {
        let exact = teapot();
        let lin = teapot_profile::<f64>(InverseMode::Sampled { samples: 4000 }).unwrap();
        for i in 0..=60 {
            let x = -2.0 + 0.1 * i as f64;
            assert!((exact.height(x).unwrap() - lin.height(x).unwrap()).abs() < 1e-6);
        }
    }
}
