use num_complex::Complex64;

use super::{ModelError, POSITIVITY_FLOOR, VALIDATION_TOLERANCE};

/// The system's reduced density operator in the observable eigenbasis,
/// validated to be Hermitian, unit-trace, and positive semidefinite up to
/// round-off.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>, // row-major, dim * dim
}

impl DensityMatrix {
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self, ModelError> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(ModelError::NotSquare(entries.len()));
        }
        let mut asymmetry = 0.0f64;
        for i in 0..dim {
            for j in i..dim {
                let d = (entries[i * dim + j] - entries[j * dim + i].conj()).norm();
                asymmetry = asymmetry.max(d);
            }
        }
        if asymmetry > VALIDATION_TOLERANCE {
            return Err(ModelError::NotHermitian(asymmetry));
        }
        let trace: Complex64 = (0..dim).map(|i| entries[i * dim + i]).sum();
        if (trace - Complex64::new(1.0, 0.0)).norm() > VALIDATION_TOLERANCE {
            return Err(ModelError::TraceNotOne(trace.re));
        }
        let rho = Self { dim, entries };
        let min = rho
            .eigenvalues()
            .first()
            .copied()
            .unwrap_or(f64::NEG_INFINITY);
        if min < POSITIVITY_FLOOR {
            return Err(ModelError::NotPositiveSemidefinite(min));
        }
        Ok(rho)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Eigenvalues in ascending order.
    ///
    /// The Hermitian matrix `H = A + iB` is embedded as the real symmetric
    /// matrix `[[A, -B], [B, A]]`, whose spectrum is that of `H` with every
    /// eigenvalue doubled; a cyclic Jacobi sweep then diagonalizes the
    /// embedding and the duplicates are collapsed by taking every other
    /// sorted value.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let n = self.dim;
        let m = 2 * n;
        let mut real = vec![0.0f64; m * m];
        for i in 0..n {
            for j in 0..n {
                let z = self.get(i, j);
                real[i * m + j] = z.re;
                real[(i + n) * m + (j + n)] = z.re;
                real[i * m + (j + n)] = -z.im;
                real[(i + n) * m + j] = z.im;
            }
        }
        let mut eigen = jacobi_eigenvalues(&mut real, m);
        eigen.sort_by(|a, b| a.partial_cmp(b).unwrap());
        eigen.into_iter().step_by(2).collect()
    }

    /// Row-major `[re, im]` pairs, the wire format for JSON export.
    pub fn to_row_major_pairs(&self) -> Vec<[f64; 2]> {
        self.entries.iter().map(|z| [z.re, z.im]).collect()
    }
}

/// Eigenvalues of a real symmetric matrix by the cyclic Jacobi method.
/// Destroys `a` (row-major, n*n). Adequate for the small matrices handled
/// here; convergence is quadratic once the off-diagonal mass is small.
fn jacobi_eigenvalues(a: &mut [f64], n: usize) -> Vec<f64> {
    const MAX_SWEEPS: usize = 64;
    let idx = |i: usize, j: usize| i * n + j;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[idx(i, j)] * a[idx(i, j)];
            }
        }
        if off.sqrt() < 1e-14 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[idx(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[idx(p, p)];
                let aqq = a[idx(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[idx(k, p)];
                    let akq = a[idx(k, q)];
                    a[idx(k, p)] = c * akp - s * akq;
                    a[idx(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[idx(p, k)];
                    let aqk = a[idx(q, k)];
                    a[idx(p, k)] = c * apk - s * aqk;
                    a[idx(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[idx(i, i)]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn maximally_mixed_qubit() {
        let rho = DensityMatrix::new(2, vec![c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)])
            .unwrap();
        assert_eq!(rho.trace(), c(1.0, 0.0));
        let eig = rho.eigenvalues();
        assert!((eig[0] - 0.5).abs() < 1e-12);
        assert!((eig[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn pure_state_with_phases() {
        // |psi> = sqrt(.3)|0> + e^{i phi} sqrt(.7)|1>
        let a0 = c(0.3f64.sqrt(), 0.0);
        let a1 = Complex64::from_polar(0.7f64.sqrt(), 0.9);
        let entries = vec![
            a0 * a0.conj(),
            a0 * a1.conj(),
            a1 * a0.conj(),
            a1 * a1.conj(),
        ];
        let rho = DensityMatrix::new(2, entries).unwrap();
        let eig = rho.eigenvalues();
        assert!(eig[0].abs() < 1e-12);
        assert!((eig[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn non_hermitian_rejected() {
        let err = DensityMatrix::new(
            2,
            vec![c(0.5, 0.0), c(0.1, 0.0), c(0.2, 0.0), c(0.5, 0.0)],
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::NotHermitian(_)));
    }

    #[test]
    fn wrong_trace_rejected() {
        let err = DensityMatrix::new(2, vec![c(0.6, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)])
            .unwrap_err();
        assert!(matches!(err, ModelError::TraceNotOne(_)));
    }

    #[test]
    fn negative_eigenvalue_rejected() {
        // Hermitian with unit trace but eigenvalues 1.1 and -0.1.
        let err = DensityMatrix::new(
            2,
            vec![c(0.5, 0.0), c(0.6, 0.0), c(0.6, 0.0), c(0.5, 0.0)],
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::NotPositiveSemidefinite(_)));
    }

    #[test]
    fn non_square_rejected() {
        assert!(matches!(
            DensityMatrix::new(2, vec![c(1.0, 0.0); 3]),
            Err(ModelError::NotSquare(3))
        ));
    }

    #[test]
    fn export_pairs_are_row_major() {
        let rho = DensityMatrix::new(
            2,
            vec![c(0.5, 0.0), c(0.25, 0.1), c(0.25, -0.1), c(0.5, 0.0)],
        )
        .unwrap();
        let pairs = rho.to_row_major_pairs();
        assert_eq!(pairs[1], [0.25, 0.1]);
        assert_eq!(pairs[2], [0.25, -0.1]);
    }
}
