//! Cyclic Jacobi eigendecomposition for small dense symmetric matrices.
//!
//! The iterative QR implementations behind `nalgebra`'s `SymmetricEigen`
//! and `SVD` return eigen/singular *values* accurately but their vector
//! output can carry ~1e-8 residuals, mixing clustered eigenspaces. The
//! subspace machinery needs vectors good to machine precision, so it uses
//! this solver instead. Quadratic-size inputs only; everything in this
//! crate is small and dense by design.

use nalgebra::DMatrix;

/// Eigenvalues and eigenvectors of a symmetric matrix, sorted by
/// descending eigenvalue (ties by index; deterministic).
///
/// Residuals `‖A·v − λv‖` come out at machine precision.
pub fn jacobi_eigen(mut a: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "symmetric input");
    let mut vects = DMatrix::<f64>::identity(n, n);
    if n <= 1 {
        return (a.diagonal().iter().copied().collect(), vects);
    }
    let scale = a.amax().max(f64::MIN_POSITIVE);
    let tol = f64::EPSILON * scale;
    for _sweep in 0..64 {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[(p, q)].abs());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() <= tol * 1e-2 {
                    continue;
                }
                // classic symmetric Schur rotation
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = c * aip - s * aiq;
                    a[(i, q)] = s * aip + c * aiq;
                }
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = c * apj - s * aqj;
                    a[(q, j)] = s * apj + c * aqj;
                }
                for i in 0..n {
                    let vip = vects[(i, p)];
                    let viq = vects[(i, q)];
                    vects[(i, p)] = c * vip - s * viq;
                    vects[(i, q)] = s * vip + c * viq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| {
        a[(y, y)].partial_cmp(&a[(x, x)]).expect("finite eigenvalues").then(x.cmp(&y))
    });
    let values: Vec<f64> = order.iter().map(|&k| a[(k, k)]).collect();
    let mut sorted = DMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        sorted.set_column(col, &vects.column(k));
    }
    (values, sorted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn residuals_at_machine_precision() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for trial in 0..50 {
            let n = rng.gen_range(2..12);
            let raw = DMatrix::from_fn(n, n, |_, _| rng.gen::<f64>() * 2.0 - 1.0);
            let sym = (&raw + raw.transpose()) * 0.5;
            let (values, vectors) = jacobi_eigen(sym.clone());
            for (k, lambda) in values.iter().enumerate() {
                let v = vectors.column(k);
                let r = (&sym * v - v * *lambda).norm();
                assert!(r < 1e-12, "trial {trial}: residual {r}");
            }
            // orthonormal vectors
            let gram = vectors.tr_mul(&vectors);
            assert!((gram - DMatrix::<f64>::identity(n, n)).amax() < 1e-12);
            // sorted descending
            for w in values.windows(2) {
                assert!(w[0] >= w[1]);
            }
        }
    }

    #[test]
    fn clustered_eigenvalues_stay_clean() {
        // the case that breaks iterative QR vector accumulation: a PSD
        // matrix with a repeated unit eigenvalue next to a small one
        let mut rng = ChaCha12Rng::seed_from_u64(9);
        for _ in 0..20 {
            let n = 6;
            let raw = DMatrix::from_fn(n, n, |_, _| rng.gen::<f64>() * 2.0 - 1.0);
            let q = raw.qr().q();
            let mut lambda = DMatrix::zeros(n, n);
            for (k, l) in [1.0, 1.0, 1.0, 0.1, 0.0, 0.0].iter().enumerate() {
                lambda[(k, k)] = *l;
            }
            let sym = &q * lambda * q.transpose();
            let sym = (&sym + sym.transpose()) * 0.5;
            let (values, vectors) = jacobi_eigen(sym.clone());
            for (k, lambda) in values.iter().enumerate() {
                let v = vectors.column(k);
                let r = (&sym * v - v * *lambda).norm();
                assert!(r < 1e-13, "residual {r}");
            }
        }
    }
}
