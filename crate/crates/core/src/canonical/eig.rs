//! Symmetric 3×3 eigenproblems and small least-squares solves.

use nalgebra::{DMatrix, DVector, Matrix3, SymmetricEigen};

use crate::error::{Error, Result};
use crate::exactmath::mat3::{self, Mat3};

fn to_na(m: &Mat3<f64>) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| m[i][j])
}

/// Eigenvalues in ascending order and orthonormal eigenvector columns.
///
/// Eigenvalues closer than `tol · ‖M‖` form one cluster; its eigenspace basis
/// is rebuilt by Gram-Schmidt on the projections of `e1, e2, e3` in order.
pub fn symmetric_eig3(m: &Mat3<f64>, tol: f64) -> Result<([f64; 3], Mat3<f64>)> {
    let norm = mat3::max_abs(m);
    for i in 0..3 {
        for j in 0..i {
            if (m[i][j] - m[j][i]).abs() > tol * norm.max(f64::MIN_POSITIVE) {
                return Err(Error::usage("matrix is not symmetric"));
            }
        }
    }
    let sym = (to_na(m) + to_na(m).transpose()) * 0.5;
    let e = SymmetricEigen::new(sym);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| e.eigenvalues[a].total_cmp(&e.eigenvalues[b]));
    let vals = order.map(|k| e.eigenvalues[k]);
    let mut cols: [[f64; 3]; 3] = order.map(|k| std::array::from_fn(|i| e.eigenvectors[(i, k)]));
    let gap = tol * norm;
    let mut start = 0;
    while start < 3 {
        let mut end = start + 1;
        while end < 3 && vals[end] - vals[end - 1] <= gap {
            end += 1;
        }
        if end - start > 1 {
            complete_cluster(&mut cols, start, end);
        }
        start = end;
    }
    Ok((vals, mat3::from_columns([&cols[0], &cols[1], &cols[2]])))
}

fn complete_cluster(cols: &mut [[f64; 3]; 3], start: usize, end: usize) {
    let span: Vec<[f64; 3]> = cols[start..end].to_vec();
    let project = |v: &[f64; 3]| -> [f64; 3] {
        let mut p = [0.0; 3];
        for u in &span {
            let d = mat3::dot(u, v);
            for i in 0..3 {
                p[i] += d * u[i];
            }
        }
        p
    };
    let mut chosen: Vec<[f64; 3]> = Vec::new();
    for k in 0..3 {
        if chosen.len() == end - start {
            break;
        }
        let mut e = [0.0; 3];
        e[k] = 1.0;
        let mut w = project(&e);
        for u in &chosen {
            let d = mat3::dot(u, &w);
            for i in 0..3 {
                w[i] -= d * u[i];
            }
        }
        let n = mat3::dot(&w, &w).sqrt();
        if n > 1e-6 {
            chosen.push(w.map(|x| x / n));
        }
    }
    for (i, c) in chosen.into_iter().enumerate() {
        cols[start + i] = c;
    }
}

/// Minimum-norm least-squares solution of `M x = b` and an orthonormal basis
/// of the numerical kernel of `M` (singular values below `rel · σ_max`).
pub fn min_norm_solve(rows: &[Vec<f64>], rhs: &[f64], n: usize, rel: f64) -> (Vec<f64>, Vec<Vec<f64>>) {
    if rows.is_empty() {
        let kernel = (0..n).map(|k| (0..n).map(|i| if i == k { 1.0 } else { 0.0 }).collect()).collect();
        return (vec![0.0; n], kernel);
    }
    let m = DMatrix::from_fn(rows.len(), n, |i, j| rows[i][j]);
    let b = DVector::from_column_slice(rhs);
    // pad to a square system so the SVD returns a full right basis
    let pad = rows.len().max(n);
    let mut sq = DMatrix::zeros(pad, n);
    sq.view_mut((0, 0), (rows.len(), n)).copy_from(&m);
    let mut bp = DVector::zeros(pad);
    bp.rows_mut(0, rows.len()).copy_from(&b);
    let svd = sq.svd(true, true);
    let smax = svd.singular_values.max();
    let cut = rel * smax.max(f64::MIN_POSITIVE);
    let u = svd.u.as_ref().expect("requested U");
    let vt = svd.v_t.as_ref().expect("requested V^T");
    let mut x = DVector::zeros(n);
    let mut kernel = Vec::new();
    for k in 0..svd.singular_values.len() {
        let s = svd.singular_values[k];
        let v = vt.row(k).transpose();
        if s > cut {
            x += v * (u.column(k).dot(&bp) / s);
        } else {
            kernel.push(v.iter().copied().collect());
        }
    }
    (x.iter().copied().collect(), kernel)
}
