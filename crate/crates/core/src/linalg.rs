//! Small exact linear algebra over the rationals and integers.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

/// Determinant by fraction-free Bareiss elimination.
pub fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Reduced row echelon form; returns pivot columns.
pub fn rref(a: &mut [Vec<Rational64>]) -> Vec<usize> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rational64::one() / a[r][c];
        for x in a[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                for j in 0..cols {
                    let t = a[r][j] * f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the rational kernel of an integer matrix.
pub fn kernel(m: &[Vec<i64>]) -> Vec<Vec<Rational64>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<Rational64>> =
        m.iter().map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect()).collect();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational64::zero(); cols];
            v[f] = Rational64::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f];
            }
            v
        })
        .collect()
}

/// Solve `m x = rhs` over the rationals when the solution is unique.
pub fn solve_unique(m: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<Rational64>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut row: Vec<Rational64> = r.iter().map(|&x| Rational64::from_integer(x)).collect();
            row.push(Rational64::from_integer(b));
            row
        })
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let pivots = rref(&mut a);
    if pivots.len() != cols || pivots.contains(&cols) {
        return None;
    }
    Some((0..n.min(cols)).map(|i| a[i][cols]).collect())
}

/// Rational vector to integers when every entry is integral.
pub fn integral(v: &[Rational64]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

pub fn is_nonneg(v: &[i64]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_matches_cofactor() {
        assert_eq!(det(&[vec![2, -1], vec![-1, 2]]), 3);
        assert_eq!(det(&[vec![2, -2], vec![-2, 2]]), 0);
        assert_eq!(det(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]), 4);
    }

    #[test]
    fn kernel_of_affine_a1() {
        let k = kernel(&[vec![2, -2], vec![-2, 2]]);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![Rational64::one(), Rational64::one()]);
    }

    #[test]
    fn unique_solution() {
        let x = solve_unique(&[vec![2, -1], vec![-1, 2]], &[1, 0]).unwrap();
        assert_eq!(x, vec![Rational64::new(2, 3), Rational64::new(1, 3)]);
        assert!(solve_unique(&[vec![2, -2], vec![-2, 2]], &[0, 0]).is_none());
    }
}
