//! Dense linear algebra over F_q for q ∈ {2, 3}.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

#[inline]
fn inv(x: u8, q: u8) -> u8 {
    debug_assert!(x != 0);
    // in F_2 and F_3 every nonzero element is its own inverse
    let _ = q;
    x
}

/// Row-major matrix with entries in `0..q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend_from_slice(r);
        }
        Self { rows: rows.len(), cols, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u8) {
        self.data[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// `self · x` for a column vector `x`.
    pub fn apply(&self, x: &[u8], q: u8) -> Vec<u8> {
        debug_assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let s: u32 = row.iter().zip(x).map(|(&a, &b)| a as u32 * b as u32).sum();
                (s % q as u32) as u8
            })
            .collect()
    }

    pub fn mul(&self, other: &Mat, q: u8) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s: u32 = (0..self.cols).map(|k| self.get(i, k) as u32 * other.get(k, j) as u32).sum();
                out.set(i, j, (s % q as u32) as u8);
            }
        }
        out
    }

    pub fn add(&self, other: &Mat, q: u8) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % q).collect(),
        }
    }

    pub fn neg(&self, q: u8) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| (q - a) % q).collect() }
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn from_columns(cols: &[Vec<u8>], rows: usize) -> Mat {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn rank(&self, q: u8) -> usize {
        let rows: Vec<Vec<u8>> = (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect();
        Subspace::span(self.cols, &rows, q).dim()
    }
}

/// A subspace of F_q^n held as a reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subspace {
    pub ambient: usize,
    pub rows: Vec<Vec<u8>>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Self { ambient: n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect();
        Self { ambient: n, rows, pivots: (0..n).collect() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Span of arbitrary vectors.
    pub fn span(n: usize, vectors: &[Vec<u8>], q: u8) -> Self {
        let mut a: Vec<Vec<u8>> = vectors.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == a.len() {
                break;
            }
            let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
            a.swap(r, p);
            let s = inv(a[r][c], q);
            for x in a[r].iter_mut() {
                *x = (*x * s) % q;
            }
            for i in 0..a.len() {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in 0..n {
                        a[i][j] = (a[i][j] + (q - f) * a[r][j] % q) % q;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        Self { ambient: n, rows: a, pivots }
    }

    /// Remainder of `v` after eliminating pivot columns; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[u8], q: u8) -> Vec<u8> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = out[p];
            if f != 0 {
                for (o, &x) in out.iter_mut().zip(row) {
                    *o = (*o + (q - f) * x % q) % q;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u8], q: u8) -> bool {
        self.reduce(v, q).iter().all(|&x| x == 0)
    }

    pub fn contains_space(&self, other: &Subspace, q: u8) -> bool {
        other.rows.iter().all(|r| self.contains(r, q))
    }

    /// Coordinates of a vector known to lie in the span, in terms of `rows`.
    pub fn coords(&self, v: &[u8]) -> Vec<u8> {
        self.pivots.iter().map(|&p| v[p]).collect()
    }

    pub fn sum(&self, other: &Subspace, q: u8) -> Subspace {
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Subspace::span(self.ambient, &all, q)
    }
}

/// Every subspace of F_q^n, each exactly once, in a fixed order.
pub fn all_subspaces(n: usize, q: u8) -> Arc<Vec<Subspace>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u8), Arc<Vec<Subspace>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache").get(&(n, q)) {
        return v.clone();
    }
    let mut out = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            // free entries: row r, column c > pivot r, c not a pivot
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| (pivots[r] + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
                .collect();
            let total = (q as usize).pow(free.len() as u32);
            for code in 0..total {
                let mut rows = vec![vec![0u8; n]; k];
                for (r, &p) in pivots.iter().enumerate() {
                    rows[r][p] = 1;
                }
                let mut c = code;
                for &(r, col) in &free {
                    rows[r][col] = (c % q as usize) as u8;
                    c /= q as usize;
                }
                out.push(Subspace { ambient: n, rows, pivots: pivots.clone() });
            }
        }
    }
    let out = Arc::new(out);
    cache.lock().expect("cache").insert((n, q), out.clone());
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Number of subspaces of F_q^n (the Galois number sum), without enumerating.
pub fn count_subspaces(n: usize, q: u8) -> u128 {
    let q = q as u128;
    (0..=n)
        .map(|k| {
            let mut num = 1u128;
            let mut den = 1u128;
            for i in 0..k {
                num *= q.pow((n - i) as u32) - 1;
                den *= q.pow((i + 1) as u32) - 1;
            }
            num / den
        })
        .sum()
}

/// Every invertible n×n matrix over F_q together with its inverse.
pub fn general_linear(n: usize, q: u8) -> Arc<Vec<(Mat, Mat)>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u8), Arc<Vec<(Mat, Mat)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache").get(&(n, q)) {
        return v.clone();
    }
    let total = (q as u64).pow((n * n) as u32);
    let mut mats = Vec::new();
    for code in 0..total {
        let mut m = Mat::zeros(n, n);
        let mut c = code;
        for x in m.data.iter_mut() {
            *x = (c % q as u64) as u8;
            c /= q as u64;
        }
        if m.rank(q) == n {
            mats.push(m);
        }
    }
    let with_inverse: Vec<(Mat, Mat)> = mats
        .iter()
        .map(|g| {
            let inv = mats.iter().find(|h| g.mul(h, q) == Mat::identity(n)).expect("group").clone();
            (g.clone(), inv)
        })
        .collect();
    let out = Arc::new(with_inverse);
    cache.lock().expect("cache").insert((n, q), out.clone());
    out
}

/// `|GL_n(F_q)|`.
pub fn gl_order(n: usize, q: u8) -> u128 {
    let q = q as u128;
    (0..n).map(|i| q.pow(n as u32) - q.pow(i as u32)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts_match_galois_numbers() {
        for q in [2u8, 3] {
            for n in 0..5 {
                assert_eq!(all_subspaces(n, q).len() as u128, count_subspaces(n, q), "n={n} q={q}");
            }
        }
        assert_eq!(count_subspaces(4, 2), 67);
    }

    #[test]
    fn subspaces_are_distinct() {
        let s = all_subspaces(3, 3);
        let mut set = std::collections::BTreeSet::new();
        for x in s.iter() {
            assert!(set.insert(x.clone()));
            assert_eq!(Subspace::span(3, &x.rows, 3), *x);
        }
    }

    #[test]
    fn general_linear_orders() {
        assert_eq!(general_linear(2, 2).len() as u128, gl_order(2, 2));
        assert_eq!(general_linear(2, 3).len() as u128, gl_order(2, 3));
        assert_eq!(general_linear(3, 2).len(), 168);
    }

    #[test]
    fn reduce_and_coords() {
        let s = Subspace::span(3, &[vec![1, 1, 0], vec![0, 1, 1]], 2);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[1, 0, 1], 2));
        assert!(!s.contains(&[1, 0, 0], 2));
        let v = [1, 0, 1];
        let c = s.coords(&v);
        let mut back = vec![0u8; 3];
        for (row, &k) in s.rows.iter().zip(&c) {
            for (b, &x) in back.iter_mut().zip(row) {
                *b = (*b + k * x) % 2;
            }
        }
        assert_eq!(back, v);
    }
}
