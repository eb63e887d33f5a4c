use capillary_core::{Error, Real, Result};

/// The saddle system
///
/// ```text
/// [ A    c ] [y]   [f_top]
/// [ e^T  0 ] [mu] = [f_m  ]
/// ```
///
/// with `A` tridiagonal of size `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct BorderedTridiag<T> {
    /// Sub-diagonal `A[i][i-1]`, length `m - 1`.
    pub sub: Vec<T>,
    /// Main diagonal, length `m`.
    pub diag: Vec<T>,
    /// Super-diagonal `A[i][i+1]`, length `m - 1`.
    pub sup: Vec<T>,
    /// Border column `c`, length `m`.
    pub col: Vec<T>,
    /// Border row `e`, length `m`.
    pub row: Vec<T>,
    /// Right-hand side, length `m + 1`.
    pub rhs: Vec<T>,
}

impl<T: Real> BorderedTridiag<T> {
    pub fn size(&self) -> usize {
        self.diag.len()
    }

    fn validate(&self) -> Result<()> {
        let m = self.diag.len();
        if m == 0 {
            return Err(Error::Dimension("empty tridiagonal block".into()));
        }
        let lens = [self.sub.len() + 1, self.sup.len() + 1, self.col.len(), self.row.len(), self.rhs.len() - 1];
        if self.rhs.is_empty() || lens.iter().any(|&l| l != m) {
            return Err(Error::Dimension(format!(
                "inconsistent lengths: diag {m}, sub {}, sup {}, col {}, row {}, rhs {}",
                self.sub.len(),
                self.sup.len(),
                self.col.len(),
                self.row.len(),
                self.rhs.len()
            )));
        }
        let finite = [&self.sub, &self.diag, &self.sup, &self.col, &self.row, &self.rhs]
            .iter()
            .all(|v| v.iter().all(|x| x.is_finite()));
        if !finite {
            return Err(Error::InvalidInput("non-finite entry in bordered system".into()));
        }
        Ok(())
    }

    /// `(A y + c mu, e . y)`, the product with the bordered matrix.
    pub fn apply(&self, y: &[T], mu: T) -> Vec<T> {
        let m = self.diag.len();
        let mut out = Vec::with_capacity(m + 1);
        for i in 0..m {
            let mut v = self.diag[i] * y[i] + self.col[i] * mu;
            if i > 0 {
                v += self.sub[i - 1] * y[i - 1];
            }
            if i + 1 < m {
                v += self.sup[i] * y[i + 1];
            }
            out.push(v);
        }
        out.push(self.row.iter().zip(y).fold(T::zero(), |acc, (e, v)| acc + *e * *v));
        out
    }
}

/// Solves the bordered system by block elimination: one LU factorisation of
/// `A`, two triangular sweeps and a scalar Schur complement for `mu`.
pub fn solve_bordered_tridiag<T: Real>(sys: &BorderedTridiag<T>) -> Result<(Vec<T>, T)> {
    sys.validate()?;
    let m = sys.size();
    let eps = T::epsilon() * T::lit(16.0);

    // forward elimination applied to both right-hand sides
    let mut upper = vec![T::zero(); m];
    let mut pivots = vec![T::zero(); m];
    let mut y1 = vec![T::zero(); m];
    let mut y2 = vec![T::zero(); m];
    for i in 0..m {
        let l = if i > 0 { sys.sub[i - 1] } else { T::zero() };
        let u_prev = if i > 0 { upper[i - 1] } else { T::zero() };
        let pivot = sys.diag[i] - l * u_prev;
        let scale = sys.diag[i].abs() + l.abs() + if i + 1 < m { sys.sup[i].abs() } else { T::zero() };
        if !(pivot.abs() > eps * scale) {
            return Err(Error::Singular(format!("zero pivot in row {i} of the tridiagonal block")));
        }
        pivots[i] = pivot;
        if i + 1 < m {
            upper[i] = sys.sup[i] / pivot;
        }
        let (p1, p2) = if i > 0 { (y1[i - 1], y2[i - 1]) } else { (T::zero(), T::zero()) };
        y1[i] = (sys.rhs[i] - l * p1) / pivot;
        y2[i] = (sys.col[i] - l * p2) / pivot;
    }
    for i in (0..m.saturating_sub(1)).rev() {
        y1[i] = y1[i] - upper[i] * y1[i + 1];
        y2[i] = y2[i] - upper[i] * y2[i + 1];
    }

    let mut ey1 = T::zero();
    let mut ey2 = T::zero();
    let mut size = T::zero();
    for i in 0..m {
        ey1 += sys.row[i] * y1[i];
        ey2 += sys.row[i] * y2[i];
        size += (sys.row[i] * y2[i]).abs();
    }
    if !(ey2.abs() > eps * size) || !ey2.is_finite() {
        return Err(Error::Singular("vanishing Schur complement of the border".into()));
    }
    let mu = (ey1 - sys.rhs[m]) / ey2;
    let y = y1.iter().zip(&y2).map(|(a, b)| *a - mu * *b).collect();
    Ok((y, mu))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one_block() {
        let sys = BorderedTridiag {
            sub: vec![],
            diag: vec![2.0],
            sup: vec![],
            col: vec![1.0],
            row: vec![1.0],
            rhs: vec![3.0, 0.25],
        };
        let (y, mu) = solve_bordered_tridiag(&sys).unwrap();
        assert_eq!(y, vec![0.25]);
        assert_eq!(mu, 3.0 - 2.0 * 0.25);
    }

    #[test]
    fn dimension_mismatch() {
        let sys = BorderedTridiag {
            sub: vec![1.0],
            diag: vec![2.0],
            sup: vec![],
            col: vec![1.0],
            row: vec![1.0],
            rhs: vec![1.0, 1.0],
        };
        assert!(matches!(solve_bordered_tridiag(&sys), Err(Error::Dimension(_))));
    }

    #[test]
    fn non_finite_input() {
        let sys = BorderedTridiag {
            sub: vec![],
            diag: vec![f64::NAN],
            sup: vec![],
            col: vec![1.0],
            row: vec![1.0],
            rhs: vec![1.0, 1.0],
        };
        assert!(matches!(solve_bordered_tridiag(&sys), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn singular_schur() {
        let sys = BorderedTridiag {
            sub: vec![0.0],
            diag: vec![1.0, 1.0],
            sup: vec![0.0],
            col: vec![1.0, 0.0],
            row: vec![0.0, 1.0],
            rhs: vec![1.0, 1.0, 1.0],
        };
        assert!(matches!(solve_bordered_tridiag(&sys), Err(Error::Singular(_))));
    }

    #[test]
    fn singular_pivot() {
        let sys = BorderedTridiag {
            sub: vec![1.0],
            diag: vec![1.0, 1.0],
            sup: vec![1.0],
            col: vec![1.0, 1.0],
            row: vec![1.0, 2.0],
            rhs: vec![1.0, 1.0, 1.0],
        };
        assert!(matches!(solve_bordered_tridiag(&sys), Err(Error::Singular(_))));
    }
}
