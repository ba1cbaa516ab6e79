//! Piecewise-linear Galerkin elements on a uniform 1D mesh with homogeneous
//! Dirichlet ends, and the tridiagonal algebra they need.

use crate::error::{Error, Result};

/// Uniform mesh of (a, b) with M subintervals; unknowns are the M−1
/// interior nodes x_j = a + j·h.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mesh1D {
    a: f64,
    b: f64,
    cells: usize,
}

impl Mesh1D {
    pub fn new(a: f64, b: f64, cells: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && b > a) {
            return Err(Error::InvalidParameter(format!("bad domain ({a}, {b})")));
        }
        if cells < 2 {
            return Err(Error::InvalidParameter(format!("need at least 2 cells, got {cells}")));
        }
        Ok(Self { a, b, cells })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn h(&self) -> f64 {
        (self.b - self.a) / self.cells as f64
    }

    pub fn unknowns(&self) -> usize {
        self.cells - 1
    }

    /// Coordinate of node j, 0 ≤ j ≤ M.
    pub fn node(&self, j: usize) -> f64 {
        if j == self.cells {
            self.b
        } else {
            self.a + j as f64 * self.h()
        }
    }

    /// Interior node coordinates x_1..x_{M−1}.
    pub fn interior_nodes(&self) -> Vec<f64> {
        (1..self.cells).map(|j| self.node(j)).collect()
    }
}

/// Tridiagonal matrix stored by diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct TriDiagMatrix {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
}

impl TriDiagMatrix {
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::InvalidParameter("empty matrix".into()));
        }
        for off in [&sub, &sup] {
            if off.len() != n - 1 {
                return Err(Error::LengthMismatch {
                    expected: n - 1,
                    got: off.len(),
                });
            }
        }
        Ok(Self { sub, diag, sup })
    }

    /// Symmetric matrix with constant diagonals.
    pub fn constant(n: usize, diag: f64, off: f64) -> Self {
        Self {
            sub: vec![off; n.saturating_sub(1)],
            diag: vec![diag; n],
            sup: vec![off; n.saturating_sub(1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.sub == self.sup
    }

    /// y = A x
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim()];
        self.mul_vec_into(x, &mut y);
        y
    }

    pub fn mul_vec_into(&self, x: &[f64], y: &mut [f64]) {
        let n = self.dim();
        assert_eq!(x.len(), n);
        assert_eq!(y.len(), n);
        for i in 0..n {
            let mut v = self.diag[i] * x[i];
            if i > 0 {
                v += self.sub[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                v += self.sup[i] * x[i + 1];
            }
            y[i] = v;
        }
    }

    /// α·self + β·other
    pub fn combine(&self, alpha: f64, other: &TriDiagMatrix, beta: f64) -> TriDiagMatrix {
        assert_eq!(self.dim(), other.dim());
        let lin = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(x, y)| alpha * x + beta * y).collect();
        TriDiagMatrix {
            sub: lin(&self.sub, &other.sub),
            diag: lin(&self.diag, &other.diag),
            sup: lin(&self.sup, &other.sup),
        }
    }

    /// Infinity norm (max absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s += self.sub[i - 1].abs();
                }
                if i + 1 < n {
                    s += self.sup[i].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    /// LU factorization without pivoting, for repeated solves.
    pub fn factor(&self) -> Result<TriDiagFactor> {
        let n = self.dim();
        let mut upper = vec![0.0; n.saturating_sub(1)];
        let mut pivot = vec![0.0; n];
        let mut p = self.diag[0];
        for i in 0..n {
            if i > 0 {
                p = self.diag[i] - self.sub[i - 1] * upper[i - 1];
            }
            if p == 0.0 || !p.is_finite() {
                return Err(Error::Singular { row: i });
            }
            pivot[i] = p;
            if i + 1 < n {
                upper[i] = self.sup[i] / p;
            }
        }
        Ok(TriDiagFactor {
            sub: self.sub.clone(),
            upper,
            pivot,
        })
    }
}

/// Thomas-algorithm factors of a tridiagonal matrix.
#[derive(Debug, Clone)]
pub struct TriDiagFactor {
    sub: Vec<f64>,
    upper: Vec<f64>,
    pivot: Vec<f64>,
}

impl TriDiagFactor {
    /// Solves in place: `rhs` becomes the solution.
    pub fn solve_in_place(&self, rhs: &mut [f64]) -> Result<()> {
        let n = self.pivot.len();
        if rhs.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: rhs.len(),
            });
        }
        rhs[0] /= self.pivot[0];
        for i in 1..n {
            rhs[i] = (rhs[i] - self.sub[i - 1] * rhs[i - 1]) / self.pivot[i];
        }
        for i in (0..n - 1).rev() {
            rhs[i] -= self.upper[i] * rhs[i + 1];
        }
        Ok(())
    }
}

/// Solves A x = rhs by the Thomas algorithm.
pub fn thomas_solve(a: &TriDiagMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    if rhs.len() != a.dim() {
        return Err(Error::LengthMismatch {
            expected: a.dim(),
            got: rhs.len(),
        });
    }
    let mut x = rhs.to_vec();
    a.factor()?.solve_in_place(&mut x)?;
    Ok(x)
}

/// Consistent mass matrix: 2h/3 on the diagonal, h/6 off it.
pub fn assemble_mass(mesh: &Mesh1D) -> TriDiagMatrix {
    let h = mesh.h();
    TriDiagMatrix::constant(mesh.unknowns(), 2.0 * h / 3.0, h / 6.0)
}

/// Stiffness matrix: 2/h on the diagonal, −1/h off it.
pub fn assemble_stiffness(mesh: &Mesh1D) -> TriDiagMatrix {
    let h = mesh.h();
    TriDiagMatrix::constant(mesh.unknowns(), 2.0 / h, -1.0 / h)
}

const GAUSS3_X: [f64; 3] = [-0.774_596_669_241_483_4, 0.0, 0.774_596_669_241_483_4];
const GAUSS3_W: [f64; 3] = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];

/// Load vector (f, φ_j) with 3-point Gauss quadrature on each element.
pub fn assemble_load<F: Fn(f64) -> f64>(mesh: &Mesh1D, f: F) -> Vec<f64> {
    let h = mesh.h();
    let n = mesh.unknowns();
    let mut load = vec![0.0; n];
    for e in 0..mesh.cells() {
        let xl = mesh.node(e);
        let (mut left, mut right) = (0.0, 0.0);
        for (g, w) in GAUSS3_X.iter().zip(GAUSS3_W) {
            let s = 0.5 * (g + 1.0);
            let fv = w * f(xl + s * h);
            left += fv * (1.0 - s);
            right += fv * s;
        }
        // element e spans nodes e and e+1; unknown k is node k+1
        if e >= 1 {
            load[e - 1] += 0.5 * h * left;
        }
        if e < n {
            load[e] += 0.5 * h * right;
        }
    }
    load
}

/// sqrt(h Σ_j v_j²) over the interior nodes.
pub fn discrete_l2_norm(mesh: &Mesh1D, v: &[f64]) -> f64 {
    (mesh.h() * v.iter().map(|x| x * x).sum::<f64>()).sqrt()
}

/// Nodal values g(x_j) at the interior nodes.
pub fn nodal_interpolate<G: Fn(f64) -> f64>(mesh: &Mesh1D, g: G) -> Vec<f64> {
    mesh.interior_nodes().into_iter().map(g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn mass_entries() {
        let mesh = Mesh1D::new(0.0, 1.0, 4).unwrap();
        let m = assemble_mass(&mesh);
        assert!(m.diag.iter().all(|&d| (d - 1.0 / 6.0).abs() < 1e-15));
        assert!(m.sub.iter().all(|&d| (d - 1.0 / 24.0).abs() < 1e-15));
        assert!(m.is_symmetric());
        // interior row sum equals ∫φ_j = h
        let row = m.sub[0] + m.diag[1] + m.sup[1];
        assert!((row - 0.25).abs() < 1e-15);
    }

    #[test]
    fn stiffness_entries() {
        let s = assemble_stiffness(&Mesh1D::new(0.0, 1.0, 2).unwrap());
        assert_eq!(s.diag, vec![4.0]);
        let s = assemble_stiffness(&Mesh1D::new(0.0, 1.0, 8).unwrap());
        for i in 1..6 {
            assert!((s.sub[i - 1] + s.diag[i] + s.sup[i]).abs() < 1e-12);
        }
        assert!(s.factor().unwrap().pivot.iter().all(|&p| p > 0.0));
    }

    #[test]
    fn load_vectors() {
        let mesh = Mesh1D::new(0.0, 1.0, 4).unwrap();
        assert!(assemble_load(&mesh, |_| 1.0).iter().all(|&v| (v - 0.25).abs() < 1e-15));
        let lin = assemble_load(&mesh, |x| x);
        for (j, v) in lin.iter().enumerate() {
            assert!((v - 0.25 * mesh.node(j + 1)).abs() < 1e-15);
        }
        assert!(assemble_load(&mesh, |_| 0.0).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn thomas_small_cases() {
        let id = TriDiagMatrix::constant(3, 1.0, 0.0);
        assert_eq!(thomas_solve(&id, &[1.0, 2.0, 3.0]).unwrap(), vec![1.0, 2.0, 3.0]);
        let a = TriDiagMatrix::constant(2, 2.0, 1.0);
        let x = thomas_solve(&a, &[3.0, 3.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - 1.0).abs() < 1e-15);
        let z = TriDiagMatrix::constant(2, 0.0, 1.0);
        assert!(matches!(thomas_solve(&z, &[1.0, 1.0]), Err(Error::Singular { row: 0 })));
        assert!(thomas_solve(&a, &[1.0]).is_err());
    }

    #[test]
    fn norms_and_interpolation() {
        let mesh = Mesh1D::new(0.0, 1.0, 4).unwrap();
        assert_eq!(discrete_l2_norm(&mesh, &[0.0; 3]), 0.0);
        assert!((discrete_l2_norm(&mesh, &[1.0; 3]) - (0.75f64).sqrt()).abs() < 1e-15);
        let s = nodal_interpolate(&mesh, |x| (PI * x).sin());
        let r = 0.5f64.sqrt();
        assert!((s[0] - r).abs() < 1e-15 && (s[1] - 1.0).abs() < 1e-15 && (s[2] - r).abs() < 1e-15);
        let fine = Mesh1D::new(0.0, 1.0, 128).unwrap();
        let v = nodal_interpolate(&fine, |x| (PI * x).sin());
        assert!((discrete_l2_norm(&fine, &v) - r).abs() < 1e-3);
    }

    #[test]
    fn mesh_validation() {
        assert!(Mesh1D::new(0.0, 1.0, 1).is_err());
        assert!(Mesh1D::new(1.0, 0.0, 4).is_err());
        let m = Mesh1D::new(0.0, 10.0, 128).unwrap();
        assert_eq!(m.node(128), 10.0);
        assert_eq!(m.unknowns(), 127);
    }
}
