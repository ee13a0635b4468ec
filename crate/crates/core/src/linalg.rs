//! Small exact linear algebra over the rationals.

use crate::Q;
use num_traits::{One, Zero};

/// Expresses vectors in terms of a fixed linearly independent family.
#[derive(Debug, Clone)]
pub struct Expander {
    rank: usize,
    dim: usize,
    // E with E * B = [I_r; 0]
    e: Vec<Vec<Q>>,
}

impl Expander {
    /// Returns `None` if the family is linearly dependent.
    pub fn new(basis: &[Vec<Q>], dim: usize) -> Option<Self> {
        let r = basis.len();
        // augmented [B | I], B is dim x r with basis vectors as columns
        let mut m: Vec<Vec<Q>> = (0..dim)
            .map(|i| {
                let mut row: Vec<Q> = basis.iter().map(|b| b[i].clone()).collect();
                row.extend((0..dim).map(|j| if i == j { Q::one() } else { Q::zero() }));
                row
            })
            .collect();
        let mut row = 0;
        for col in 0..r {
            let piv = (row..dim).find(|&i| !m[i][col].is_zero())?;
            m.swap(row, piv);
            let inv = m[row][col].recip();
            for x in m[row].iter_mut() {
                *x *= &inv;
            }
            for i in 0..dim {
                if i != row && !m[i][col].is_zero() {
                    let f = m[i][col].clone();
                    let (src, dst) = if i < row {
                        let (a, b) = m.split_at_mut(row);
                        (&b[0], &mut a[i])
                    } else {
                        let (a, b) = m.split_at_mut(i);
                        (&a[row], &mut b[0])
                    };
                    for (d, s) in dst.iter_mut().zip(src.iter()) {
                        if !s.is_zero() {
                            *d -= &f * s;
                        }
                    }
                }
            }
            row += 1;
        }
        let e = m.into_iter().map(|row| row[r..].to_vec()).collect();
        Some(Expander { rank: r, dim, e })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Coefficients of `x` over the family, or `None` if `x` is outside its span.
    pub fn expand(&self, x: &[Q]) -> Option<Vec<Q>> {
        let y: Vec<Q> = self
            .e
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect();
        if y[self.rank..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut y = y;
        y.truncate(self.rank);
        debug_assert_eq!(x.len(), self.dim);
        Some(y)
    }
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let cols: Vec<Vec<Q>> = (0..n).map(|j| (0..n).map(|i| a[i][j].clone()).collect()).collect();
    let ex = Expander::new(&cols, n)?;
    // E * A = I, so E is the inverse
    Some(ex.e)
}

pub fn determinant_nonzero(a: &[Vec<Q>]) -> bool {
    inverse(a).is_some()
}
