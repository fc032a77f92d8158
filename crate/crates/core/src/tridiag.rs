//! Implicit diffusion operator `I − dt·d·L` on a uniform grid with reflecting
//! (ghost-node) Neumann ends, pre-factored for repeated Thomas solves.

/// LU factors of the tridiagonal matrix
///
/// ```text
/// [ 1+2r  -2r                 ]
/// [  -r  1+2r   -r            ]
/// [        ...  ...  ...      ]
/// [             -2r    1+2r   ]
/// ```
///
/// with `r = d·dt/dx²`. The matrix is strictly diagonally dominant, so the
/// elimination never pivots and never divides by zero.
#[derive(Debug, Clone)]
pub struct NeumannDiffusion {
    sub: Vec<f64>,
    inv_pivot: Vec<f64>,
    upper: Vec<f64>,
}

impl NeumannDiffusion {
    pub fn new(n: usize, r: f64) -> Self {
        assert!(n >= 2, "need at least two nodes");
        assert!(r.is_finite() && r >= 0.0, "r must be non-negative");
        let diag = 1.0 + 2.0 * r;
        let mut sub = vec![-r; n];
        let mut sup = vec![-r; n];
        sub[0] = 0.0;
        sup[0] = -2.0 * r;
        sub[n - 1] = -2.0 * r;
        sup[n - 1] = 0.0;

        let mut inv_pivot = vec![0.0; n];
        let mut upper = vec![0.0; n];
        inv_pivot[0] = 1.0 / diag;
        upper[0] = sup[0] * inv_pivot[0];
        for i in 1..n {
            inv_pivot[i] = 1.0 / (diag - sub[i] * upper[i - 1]);
            upper[i] = sup[i] * inv_pivot[i];
        }
        Self {
            sub,
            inv_pivot,
            upper,
        }
    }

    pub fn len(&self) -> usize {
        self.inv_pivot.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inv_pivot.is_empty()
    }

    /// Overwrites `rhs` with the solution.
    pub fn solve_in_place(&self, rhs: &mut [f64]) {
        let n = self.len();
        assert_eq!(rhs.len(), n, "right-hand side length mismatch");
        rhs[0] *= self.inv_pivot[0];
        for i in 1..n {
            rhs[i] = (rhs[i] - self.sub[i] * rhs[i - 1]) * self.inv_pivot[i];
        }
        for i in (0..n - 1).rev() {
            rhs[i] -= self.upper[i] * rhs[i + 1];
        }
    }
}
