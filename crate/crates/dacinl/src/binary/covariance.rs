//! Covariance structure of the first `m` block increments
//! `N^(m) = (N_1, ..., N_m)`.
//!
//! `N^(m) = T Z` for a lower-triangular `T`, so `Sigma^(m) = T T^T` with
//! `Sigma_jl = -2^-(j+l)` off the diagonal and `2^-l - 2^-2l` on it, and
//! `det Sigma^(m) = 2^{-m(m+3)/2}`. The inverse is obtained numerically from
//! the triangular factor rather than from any closed-form entry table.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub const MAX_COV_ORDER: usize = 30;

fn check_order(order: usize) -> Result<()> {
    if order < 1 {
        return Err(Error::OrderTooSmall {
            name: "order",
            min: 1,
            got: order,
        });
    }
    if order > MAX_COV_ORDER {
        return Err(Error::OrderTooLarge {
            name: "order",
            got: order,
            max: MAX_COV_ORDER,
            hint: "the determinant underflows beyond this size",
        });
    }
    Ok(())
}

/// `Sigma^(m)`: covariance matrix of the first `m` block increments.
pub fn cov_matrix(order: usize) -> Result<DMatrix<f64>> {
    check_order(order)?;
    Ok(DMatrix::from_fn(order, order, |j, l| {
        let (j, l) = ((j + 1) as f64, (l + 1) as f64);
        if j == l {
            (-l).exp2() - (-2.0 * l).exp2()
        } else {
            -(-(j + l)).exp2()
        }
    }))
}

/// Lower-triangular factor `T` with `N^(m) = T Z`:
/// rows are the coefficients of `N_l` over `Z_1..Z_l`.
pub fn triangular_factor(order: usize) -> Result<DMatrix<f64>> {
    check_order(order)?;
    Ok(DMatrix::from_fn(order, order, |row, col| {
        let (l, j) = ((row + 1) as f64, (col + 1) as f64);
        if col + 1 < row + 1 {
            ((-(j + 1.0) / 2.0) - (l - j)).exp2()
        } else if col == row {
            -((-(l + 1.0) / 2.0).exp2())
        } else {
            0.0
        }
    }))
}

/// `det Sigma^(m) = 2^{-m(m+3)/2}`, cross-checked against the numerical
/// determinant up to order 10.
pub fn det_cov(order: usize) -> Result<f64> {
    check_order(order)?;
    let m = order as f64;
    let closed = (-(m * (m + 3.0)) / 2.0).exp2();
    if order <= 10 {
        let numeric = cov_matrix(order)?.determinant();
        let rel = (numeric - closed).abs() / closed;
        if rel > 1e-10 {
            return Err(Error::InvariantViolation(format!(
                "determinant of Sigma^({order}): closed form {closed} vs numeric {numeric}"
            )));
        }
    }
    Ok(closed)
}

fn invert_lower_triangular(t: &DMatrix<f64>) -> DMatrix<f64> {
    let m = t.nrows();
    let mut inv = DMatrix::zeros(m, m);
    for col in 0..m {
        for row in col..m {
            let rhs = if row == col { 1.0 } else { 0.0 };
            let mut acc = rhs;
            for k in col..row {
                acc -= t[(row, k)] * inv[(k, col)];
            }
            inv[(row, col)] = acc / t[(row, row)];
        }
    }
    inv
}

/// `(Sigma^(m))^-1` via forward substitution on the triangular factor;
/// the result is verified to satisfy `Sigma Sigma^-1 = I` to 1e-10 per entry.
pub fn inv_cov(order: usize) -> Result<DMatrix<f64>> {
    let t = triangular_factor(order)?;
    let t_inv = invert_lower_triangular(&t);
    let sigma_inv = t_inv.transpose() * &t_inv;
    let product = cov_matrix(order)? * &sigma_inv;
    for row in 0..order {
        for col in 0..order {
            let expected = if row == col { 1.0 } else { 0.0 };
            if (product[(row, col)] - expected).abs() > 1e-10 {
                return Err(Error::InvariantViolation(format!(
                    "Sigma^({order}) inverse check failed at ({row}, {col}): {}",
                    product[(row, col)]
                )));
            }
        }
    }
    Ok(sigma_inv)
}
