//! Small fixed-size linear algebra: 3-vectors, 3x3 matrices, and the cyclic
//! Jacobi eigensolvers the rest of the crate is built on.
//!
//! Everything here is dependency-free and deterministic; the matrices are
//! tiny enough that Jacobi sweeps converge to machine precision in a handful
//! of iterations.

use num_complex::Complex64;

/// A real 3-vector.
pub type Vec3 = [f64; 3];

pub fn dot(u: Vec3, v: Vec3) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub fn cross(u: Vec3, v: Vec3) -> Vec3 {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

pub fn norm(v: Vec3) -> f64 {
    dot(v, v).sqrt()
}

pub fn scale(v: Vec3, s: f64) -> Vec3 {
    [v[0] * s, v[1] * s, v[2] * s]
}

pub fn add(u: Vec3, v: Vec3) -> Vec3 {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2]]
}

pub fn sub(u: Vec3, v: Vec3) -> Vec3 {
    [u[0] - v[0], u[1] - v[1], u[2] - v[2]]
}

/// Returns `v / |v|`, or `None` for a vector of norm below `1e-300`.
pub fn normalized(v: Vec3) -> Option<Vec3> {
    let n = norm(v);
    if n < 1e-300 {
        None
    } else {
        Some(scale(v, 1.0 / n))
    }
}

/// A real 3x3 matrix in row-major storage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
    pub const ZERO: Mat3 = Mat3([[0.0; 3]; 3]);

    pub fn diag(d: Vec3) -> Mat3 {
        Mat3([[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]])
    }

    /// Outer product `u v^T`.
    pub fn outer(u: Vec3, v: Vec3) -> Mat3 {
        let mut m = [[0.0; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = u[i] * v[j];
            }
        }
        Mat3(m)
    }

    pub fn transpose(&self) -> Mat3 {
        let a = &self.0;
        Mat3([
            [a[0][0], a[1][0], a[2][0]],
            [a[0][1], a[1][1], a[2][1]],
            [a[0][2], a[1][2], a[2][2]],
        ])
    }

    pub fn mul(&self, rhs: &Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = 0.0;
                for (k, rhs_row) in rhs.0.iter().enumerate() {
                    acc += self.0[i][k] * rhs_row[j];
                }
                out[i][j] = acc;
            }
        }
        Mat3(out)
    }

    pub fn mul_vec(&self, v: Vec3) -> Vec3 {
        [dot(self.0[0], v), dot(self.0[1], v), dot(self.0[2], v)]
    }

    pub fn add(&self, rhs: &Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = self.0[i][j] + rhs.0[i][j];
            }
        }
        Mat3(out)
    }

    pub fn sub(&self, rhs: &Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = self.0[i][j] - rhs.0[i][j];
            }
        }
        Mat3(out)
    }

    pub fn scaled(&self, s: f64) -> Mat3 {
        let mut out = self.0;
        for row in out.iter_mut() {
            for e in row.iter_mut() {
                *e *= s;
            }
        }
        Mat3(out)
    }

    pub fn det(&self) -> f64 {
        let a = &self.0;
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    }

    pub fn column(&self, j: usize) -> Vec3 {
        [self.0[0][j], self.0[1][j], self.0[2][j]]
    }

    pub fn set_column(&mut self, j: usize, v: Vec3) {
        self.0[0][j] = v[0];
        self.0[1][j] = v[1];
        self.0[2][j] = v[2];
    }

    /// Largest absolute difference from another matrix.
    pub fn max_abs_diff(&self, rhs: &Mat3) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                d = d.max((self.0[i][j] - rhs.0[i][j]).abs());
            }
        }
        d
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }
}

/// Eigen-decomposition of a symmetric 3x3 matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues sorted descending and the matrix whose columns are the
/// matching orthonormal eigenvectors. The input must be symmetric; only the
/// upper triangle is read.
pub fn sym_eigen_3x3(m: &Mat3) -> (Vec3, Mat3) {
    let mut a = m.0;
    let mut v = Mat3::IDENTITY.0;

    for _sweep in 0..64 {
        let off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
        if off < 1e-30 {
            break;
        }
        for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let apq = a[p][q];
            if apq.abs() < 1e-300 {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
            let t = if theta >= 0.0 {
                1.0 / (theta + (1.0 + theta * theta).sqrt())
            } else {
                -1.0 / (-theta + (1.0 + theta * theta).sqrt())
            };
            let c = 1.0 / (1.0 + t * t).sqrt();
            let s = t * c;

            // A <- J^T A J on rows/columns p and q.
            for k in 0..3 {
                let akp = a[k][p];
                let akq = a[k][q];
                a[k][p] = c * akp - s * akq;
                a[k][q] = s * akp + c * akq;
            }
            for k in 0..3 {
                let apk = a[p][k];
                let aqk = a[q][k];
                a[p][k] = c * apk - s * aqk;
                a[q][k] = s * apk + c * aqk;
            }
            a[p][q] = 0.0;
            a[q][p] = 0.0;
            for row in v.iter_mut() {
                let vp = row[p];
                let vq = row[q];
                row[p] = c * vp - s * vq;
                row[q] = s * vp + c * vq;
            }
        }
    }

    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| a[j][j].partial_cmp(&a[i][i]).unwrap());
    let vals = [
        a[order[0]][order[0]],
        a[order[1]][order[1]],
        a[order[2]][order[2]],
    ];
    let mut vecs = Mat3::ZERO;
    for (dst, &src) in order.iter().enumerate() {
        vecs.set_column(dst, Mat3(v).column(src));
    }
    (vals, vecs)
}

/// Eigenvalues of a Hermitian 4x4 matrix by cyclic Jacobi sweeps, sorted
/// descending. Each pivot first strips the phase of the off-diagonal entry,
/// then applies the usual real rotation.
pub fn herm_eigenvalues_4x4(m: &[[Complex64; 4]; 4]) -> [f64; 4] {
    let mut a = *m;

    for _sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..4 {
            for q in (p + 1)..4 {
                off += a[p][q].norm_sqr();
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..4 {
            for q in (p + 1)..4 {
                let apq = a[p][q];
                let h = apq.norm();
                if h < 1e-300 {
                    continue;
                }
                // Phase so that the pivot entry becomes real positive, then a
                // standard symmetric rotation annihilates it.
                let phase = apq / h;
                let theta = (a[q][q].re - a[p][p].re) / (2.0 * h);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Unitary J: J[p][p]=c, J[p][q]=s*phase, J[q][p]=-s*conj(phase), J[q][q]=c.
                let jpp = Complex64::new(c, 0.0);
                let jpq = phase * s;
                let jqp = -phase.conj() * s;
                let jqq = Complex64::new(c, 0.0);

                // columns: A <- A J
                for k in 0..4 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = akp * jpp + akq * jqp;
                    a[k][q] = akp * jpq + akq * jqq;
                }
                // rows: A <- J^H A
                for k in 0..4 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[q][k] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[p][q] = Complex64::new(0.0, 0.0);
                a[q][p] = Complex64::new(0.0, 0.0);
            }
        }
    }

    let mut vals = [a[0][0].re, a[1][1].re, a[2][2].re, a[3][3].re];
    vals.sort_by(|x, y| y.partial_cmp(x).unwrap());
    vals
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64, msg: &str) {
        assert!((a - b).abs() <= tol, "{msg}: {a} vs {b}");
    }

    #[test]
    fn sym_eigen_diagonal() {
        let (vals, vecs) = sym_eigen_3x3(&Mat3::diag([0.2, 0.9, 0.5]));
        assert_close(vals[0], 0.9, 1e-14, "largest");
        assert_close(vals[1], 0.5, 1e-14, "middle");
        assert_close(vals[2], 0.2, 1e-14, "smallest");
        // eigenvector for 0.9 is +-e2
        assert_close(vecs.column(0)[1].abs(), 1.0, 1e-14, "axis");
    }

    #[test]
    fn sym_eigen_reconstructs() {
        let m = Mat3([[2.0, -0.4, 0.1], [-0.4, 1.0, 0.3], [0.1, 0.3, -0.5]]);
        let (vals, v) = sym_eigen_3x3(&m);
        let rec = v.mul(&Mat3::diag(vals)).mul(&v.transpose());
        assert!(rec.max_abs_diff(&m) < 1e-13, "V D V^T != M");
        let vtv = v.transpose().mul(&v);
        assert!(
            vtv.max_abs_diff(&Mat3::IDENTITY) < 1e-13,
            "V not orthogonal"
        );
    }

    #[test]
    fn herm_eigenvalues_match_known() {
        // diag(1, 0, 0, 0) in a rotated basis built from a phase.
        let z = Complex64::new(0.0, 0.0);
        let half = Complex64::new(0.5, 0.0);
        let ihalf = Complex64::new(0.0, 0.5);
        // [[1/2, i/2],[ -i/2, 1/2]] (+) zero block: eigenvalues 1, 0, 0, 0
        let m = [
            [half, ihalf, z, z],
            [-ihalf, half, z, z],
            [z, z, z, z],
            [z, z, z, z],
        ];
        let vals = herm_eigenvalues_4x4(&m);
        assert_close(vals[0], 1.0, 1e-14, "top");
        for v in &vals[1..] {
            assert_close(*v, 0.0, 1e-14, "rest");
        }
    }

    #[test]
    fn herm_eigenvalues_trace_preserved() {
        let c = Complex64::new;
        let m = [
            [c(0.3, 0.0), c(0.1, 0.2), c(0.0, -0.1), c(0.05, 0.0)],
            [c(0.1, -0.2), c(0.25, 0.0), c(0.02, 0.03), c(0.0, 0.1)],
            [c(0.0, 0.1), c(0.02, -0.03), c(0.2, 0.0), c(-0.04, 0.0)],
            [c(0.05, 0.0), c(0.0, -0.1), c(-0.04, 0.0), c(0.25, 0.0)],
        ];
        let vals = herm_eigenvalues_4x4(&m);
        assert_close(vals.iter().sum::<f64>(), 1.0, 1e-13, "trace");
    }
}
