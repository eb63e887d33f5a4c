use capillary_core::{Real, Result, Side, Surface};

/// Groove texture `w(x) = A (sin kx + sin(kx/2) + cos 2kx)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Groove<T> {
    pub amplitude: T,
    pub wavenumber: T,
}

/// Value and exact derivative of the groove texture at `x`.
pub fn groove_eval<T: Real>(amplitude: T, k: T, x: T) -> (T, T) {
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let w = amplitude * ((k * x).sin() + (half * k * x).sin() + (two * k * x).cos());
    let dw = amplitude * (k * (k * x).cos() + half * k * (half * k * x).cos() - two * k * (two * k * x).sin());
    (w, dw)
}

impl<T: Real> Surface<T> for Groove<T> {
    fn height(&self, x: T) -> Result<T> {
        Ok(groove_eval(self.amplitude, self.wavenumber, x).0)
    }

    fn slope(&self, x: T, _side: Side) -> Result<T> {
        Ok(groove_eval(self.amplitude, self.wavenumber, x).1)
    }

    fn is_flat(&self) -> bool {
        self.amplitude == T::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_origin() {
        let (w, dw) = groove_eval(0.1f64, 5.0, 0.0);
        assert!((w - 0.1).abs() < 1e-15);
        assert!((dw - 0.75).abs() < 1e-15);
    }

    #[test]
    fn zero_amplitude() {
        assert_eq!(groove_eval(0.0, 7.0, 1.3), (0.0, 0.0));
    }
}
