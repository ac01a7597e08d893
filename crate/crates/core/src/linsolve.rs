//! Exact dense linear solving over big rationals (Gaussian elimination with pivoting).

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Rat;

/// Solves the square system A·x = b exactly. Errors with `SingularSystem` when A is singular.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Result<Vec<Rat>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    let mut m: Vec<Vec<Rat>> = a.to_vec();
    let mut rhs: Vec<Rat> = b.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or(Error::SingularSystem)?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].recip();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..n {
                let t = &factor * &m[col][c];
                m[r][c] -= t;
            }
            let t = &factor * &rhs[col];
            rhs[r] -= t;
        }
    }
    // Back substitution.
    let mut x = vec![Rat::zero(); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row].clone();
        for c in row + 1..n {
            acc -= &m[row][c] * &x[c];
        }
        x[row] = acc / &m[row][row];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratq};

    #[test]
    fn solves_small_system() {
        // 2x + y = 5, x − 3y = −1  →  x = 2, y = 1
        let a = vec![vec![rat(2), rat(1)], vec![rat(1), rat(-3)]];
        let b = vec![rat(5), rat(-1)];
        assert_eq!(solve(&a, &b).unwrap(), vec![rat(2), rat(1)]);
    }

    #[test]
    fn exact_fractions() {
        let a = vec![vec![ratq(1, 3), ratq(1, 7)], vec![ratq(2, 5), ratq(3, 11)]];
        let b = vec![rat(1), rat(0)];
        let x = solve(&a, &b).unwrap();
        // Verify by substitution.
        for (row, want) in a.iter().zip(&b) {
            let got: Rat = row.iter().zip(&x).map(|(c, v)| c * v).sum();
            assert_eq!(&got, want);
        }
    }

    #[test]
    fn detects_singularity() {
        let a = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        let b = vec![rat(1), rat(2)];
        assert_eq!(solve(&a, &b), Err(Error::SingularSystem));
    }
}
