use super::{FdConfig, Matrix, Vector};

pub fn g_inner(g: &Matrix, a: &Vector, b: &Vector) -> f64 {
    a.dot(&(g * b))
}

pub fn g_norm(g: &Matrix, a: &Vector) -> f64 {
    g_inner(g, a, a).max(0.0).sqrt()
}

/// Modified Gram-Schmidt in the `g` inner product.
///
/// Vectors whose post-projection norm falls below
/// `rank_threshold * (largest input norm)` are dropped, so the output is an
/// orthonormal basis of the input span.
pub fn orthonormalize(basis: &[Vector], g: &Matrix, cfg: &FdConfig) -> Vec<Vector> {
    let max_norm = basis.iter().map(|v| g_norm(g, v)).fold(0.0, f64::max);
    if max_norm == 0.0 {
        return Vec::new();
    }
    let cutoff = cfg.rank_threshold * max_norm;
    let mut out: Vec<Vector> = Vec::with_capacity(basis.len());
    for v in basis {
        let mut w = v.clone();
        // two passes keep the result orthogonal to machine precision
        for _ in 0..2 {
            for q in &out {
                let c = g_inner(g, q, &w);
                w -= q * c;
            }
        }
        let norm = g_norm(g, &w);
        if norm > cutoff {
            out.push(w / norm);
        }
    }
    out
}

/// Null space of `a` (rows x cols) by SVD with relative cutoff. Returns an
/// orthonormal (Euclidean) basis and the numerical rank.
pub fn null_space(a: &Matrix, rank_threshold: f64) -> (Vec<Vector>, usize) {
    let (m, n) = a.shape();
    // pad to square so the SVD yields a full right-singular basis
    let size = m.max(n);
    let mut padded = Matrix::zeros(size, n);
    padded.view_mut((0, 0), (m, n)).copy_from(a);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = rank_threshold * sigma_max;
    let mut basis = Vec::new();
    let mut rank = 0;
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if sigma_max > 0.0 && s > cutoff {
            rank += 1;
        } else {
            basis.push(v_t.row(i).transpose());
        }
    }
    (basis, rank)
}

/// `P = B B^T G` for a `g`-orthonormal basis `B`: the `g`-orthogonal
/// projector onto its span.
pub fn projector_onto(basis: &[Vector], g: &Matrix) -> Matrix {
    let n = g.nrows();
    let mut p = Matrix::zeros(n, n);
    for b in basis {
        p += b * (g * b).transpose();
    }
    p
}

/// `g`-norm of the component of `v` orthogonal to the span of a
/// `g`-orthonormal basis.
pub fn span_residual(basis: &[Vector], g: &Matrix, v: &Vector) -> f64 {
    let mut w = v.clone();
    for b in basis {
        let c = g_inner(g, b, &w);
        w -= b * c;
    }
    g_norm(g, &w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_row_slice(xs)
    }

    #[test]
    fn gram_schmidt_textbook() {
        let cfg = FdConfig::default();
        let g = Matrix::identity(2, 2);
        let out = orthonormalize(&[v(&[1.0, 0.0]), v(&[1.0, 1.0])], &g, &cfg);
        assert_eq!(out.len(), 2);
        assert!((&out[0] - v(&[1.0, 0.0])).norm() < 1e-15);
        assert!((&out[1] - v(&[0.0, 1.0])).norm() < 1e-15);
    }

    #[test]
    fn gram_schmidt_scaled_metric() {
        let cfg = FdConfig::default();
        let g = Matrix::identity(3, 3) * 0.25;
        let out = orthonormalize(&[v(&[1.0, 0.0, 0.0])], &g, &cfg);
        assert!((&out[0] - v(&[2.0, 0.0, 0.0])).norm() < 1e-15);
    }

    #[test]
    fn gram_schmidt_drops_dependent() {
        let cfg = FdConfig::default();
        let g = Matrix::identity(3, 3);
        let a = v(&[1.0, 2.0, -1.0]);
        let out = orthonormalize(&[a.clone(), a * 2.0], &g, &cfg);
        assert_eq!(out.len(), 1);
        assert!(orthonormalize(&[], &g, &cfg).is_empty());
    }

    #[test]
    fn null_space_of_projection() {
        let a = Matrix::from_row_slice(1, 3, &[0.0, 0.0, 1.0]);
        let (basis, rank) = null_space(&a, 1e-8);
        assert_eq!(rank, 1);
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert!(b[2].abs() < 1e-14);
        }
    }
}
