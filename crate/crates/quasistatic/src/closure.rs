//! Small dense Newton solver with a central-difference Jacobian.

use capillary_core::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosureOptions<T> {
    pub tol: T,
    pub max_iter: usize,
}

impl<T: Real> Default for ClosureOptions<T> {
    fn default() -> Self {
        Self { tol: T::lit(1e-12), max_iter: 60 }
    }
}

fn max_abs<T: Real, const K: usize>(r: &[T; K]) -> T {
    r.iter().fold(T::zero(), |m, v| if v.is_nan() { T::nan() } else { m.max(v.abs()) })
}

/// Gaussian elimination with partial pivoting on a `K x K` system.
pub(crate) fn solve_dense<T: Real, const K: usize>(mut a: [[T; K]; K], mut rhs: [T; K]) -> Result<[T; K]> {
    for col in 0..K {
        let pivot = (col..K)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(col);
        if !(a[pivot][col].abs() > T::zero()) {
            return Err(Error::Singular(format!("zero pivot in column {col}")));
        }
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..K {
            let f = a[row][col] / a[col][col];
            for k in col..K {
                let v = a[col][k];
                a[row][k] -= f * v;
            }
            let v = rhs[col];
            rhs[row] -= f * v;
        }
    }
    let mut x = [T::zero(); K];
    for row in (0..K).rev() {
        let mut s = rhs[row];
        for k in row + 1..K {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Ok(x)
}

/// Solves `f(x) = 0` from `x0`, damping by halving until the residual drops.
pub fn newton_fd<T: Real, const K: usize, F>(mut f: F, x0: [T; K], opts: &ClosureOptions<T>) -> Result<[T; K]>
where
    F: FnMut(&[T; K]) -> Result<[T; K]>,
{
    let mut x = x0;
    let mut r = f(&x)?;
    let mut norm = max_abs(&r);
    let rel = T::epsilon().cbrt();
    for iter in 0..=opts.max_iter {
        if norm <= opts.tol {
            return Ok(x);
        }
        if !norm.is_finite() || iter == opts.max_iter {
            break;
        }
        let mut jac = [[T::zero(); K]; K];
        for k in 0..K {
            let h = rel * T::one().max(x[k].abs());
            let mut xp = x;
            let mut xm = x;
            xp[k] += h;
            xm[k] -= h;
            let (fp, fm) = (f(&xp)?, f(&xm)?);
            for i in 0..K {
                jac[i][k] = (fp[i] - fm[i]) / (h + h);
            }
        }
        let neg = r.map(|v| -v);
        let dx = solve_dense(jac, neg)?;
        let mut step = T::one();
        let mut accepted = false;
        for _ in 0..30 {
            let mut trial = x;
            for k in 0..K {
                trial[k] += step * dx[k];
            }
            if let Ok(tr) = f(&trial) {
                let tn = max_abs(&tr);
                if tn < norm {
                    x = trial;
                    r = tr;
                    norm = tn;
                    accepted = true;
                    break;
                }
            }
            step *= T::lit(0.5);
        }
        if !accepted {
            break;
        }
    }
    Err(Error::NonConvergence { iterations: opts.max_iter, residual: norm.as_f64() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_solve() {
        let a = [[0.0, 2.0, 1.0], [1.0, 1.0, 0.0], [3.0, 0.0, 1.0]];
        let x = solve_dense::<f64, 3>(a, [5.0, 3.0, 4.0]).unwrap();
        for (v, e) in x.iter().zip([1.0, 2.0, 1.0]) {
            assert!((v - e).abs() < 1e-14);
        }
        assert!(solve_dense([[1.0, 2.0], [2.0, 4.0]], [1.0, 1.0]).is_err());
    }

    #[test]
    fn newton_on_circle_line() {
        let x = newton_fd(|x: &[f64; 2]| Ok([x[0] * x[0] + x[1] * x[1] - 1.0, x[0] - x[1]]), [1.0, 0.2], &ClosureOptions::default())
            .unwrap();
        assert!((x[0] - 0.5f64.sqrt()).abs() < 1e-12);
    }
}
