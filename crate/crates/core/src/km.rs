//! Graphs, symmetric Cartan matrices, dimension vectors and weights.

use std::collections::BTreeSet;
use std::ops::Deref;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::linalg;

/// Undirected multigraph with optional orientation.
///
/// `orientation[k] == true` orients edge `k` from its first to its second endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverGraph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    orientation: Option<Vec<bool>>,
}

/// One arrow of the doubled quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    /// Whether the arrow belongs to the chosen orientation (sign +1 in the moment map).
    pub positive: bool,
}

impl QuiverGraph {
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(usize, usize)>,
        orientation: Option<Vec<bool>>,
    ) -> Result<Self> {
        let n = vertices.len();
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= n || b >= n) {
            return precondition(format!("edge ({a},{b}) leaves the vertex set of size {n}"));
        }
        if let Some(o) = &orientation {
            if o.len() != edges.len() {
                return precondition("orientation must cover every edge exactly once");
            }
        }
        let distinct: BTreeSet<&String> = vertices.iter().collect();
        if distinct.len() != n {
            return precondition("vertex labels must be distinct");
        }
        Ok(Self { vertices, edges, orientation })
    }

    /// Graph with vertices labelled `0..n`.
    pub fn with_indices(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges, None)
    }

    /// Finite type A_n path.
    pub fn finite_a(n: usize) -> Self {
        Self::with_indices(n, (1..n).map(|i| (i - 1, i)).collect()).expect("valid path")
    }

    /// Affine type A_n: a cycle on n + 1 vertices, two parallel edges when n = 1.
    pub fn affine_a(n: usize) -> Self {
        let m = n + 1;
        let edges = if n == 1 { vec![(0, 1), (0, 1)] } else { (0..m).map(|i| (i, (i + 1) % m)).collect() };
        Self::with_indices(m, edges).expect("valid cycle")
    }

    /// One vertex with one loop.
    pub fn jordan() -> Self {
        Self::with_indices(1, vec![(0, 0)]).expect("valid loop")
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn orientation(&self) -> Option<&[bool]> {
        self.orientation.as_deref()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn loops_at(&self, i: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == i && b == i).count()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(a, b)| a == b)
    }

    /// Arrows of the doubled quiver, in pairs `(h, h̄)` per edge.
    pub fn arrows(&self) -> Vec<Arrow> {
        let mut out = Vec::with_capacity(2 * self.edges.len());
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            let forward = self.orientation.as_ref().is_none_or(|o| o[k]);
            let (s, t) = if forward { (a, b) } else { (b, a) };
            out.push(Arrow { src: s, dst: t, positive: true });
            out.push(Arrow { src: t, dst: s, positive: false });
        }
        out
    }
}

/// Symmetric generalized Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanMatrix(Vec<Vec<i64>>);

impl CartanMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return precondition("Cartan matrix must be square");
            }
            if row[i] > 2 || (2 - row[i]) % 2 != 0 {
                return precondition(format!("diagonal entry {} at {i} is not 2 - 2k", row[i]));
            }
            for j in 0..n {
                if entries[j][i] != row[j] {
                    return precondition("Cartan matrix must be symmetric");
                }
                if i != j && row[j] > 0 {
                    return precondition("off-diagonal Cartan entries must be nonpositive");
                }
            }
        }
        Ok(Self(entries))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }

    /// `C v`.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.0.iter().map(|row| row.iter().zip(v).map(|(c, x)| c * x).sum()).collect()
    }

    /// `ᵗx C y`.
    pub fn form(&self, x: &[i64], y: &[i64]) -> i64 {
        x.iter().zip(self.apply(y)).map(|(a, b)| a * b).sum()
    }

    pub fn has_loops(&self) -> bool {
        (0..self.len()).any(|i| self.0[i][i] < 2)
    }

    pub fn restrict(&self, subset: &[usize]) -> CartanMatrix {
        CartanMatrix(subset.iter().map(|&i| subset.iter().map(|&j| self.0[i][j]).collect()).collect())
    }

    /// Connected components of `subset` in the graph of nonzero off-diagonal entries.
    pub fn components(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &s in &sorted {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &sorted {
                    if y != x && self.0[x][y] != 0 && seen.insert(y) {
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.len()).collect();
        self.components(&all).len() <= 1
    }

    /// Positive definite, by leading principal minors.
    pub fn is_finite_type(&self) -> bool {
        (1..=self.len()).all(|k| {
            let minor: Vec<Vec<i64>> = self.0[..k].iter().map(|r| r[..k].to_vec()).collect();
            linalg::det(&minor) > 0
        })
    }

    /// Connected, loop-free, with a one-dimensional kernel spanned by a positive vector.
    pub fn is_affine_type(&self) -> bool {
        self.null_root().is_ok()
    }

    /// The primitive positive kernel vector δ, normalized so that δ₀ = 1.
    pub fn delta(&self) -> Result<DimVector> {
        let d = self.null_root()?;
        if d[0] != 1 {
            return Err(Error::Unsupported(format!(
                "vertex 0 is not an extending vertex (kernel generator {d:?})"
            )));
        }
        Ok(DimVector(d))
    }

    fn null_root(&self) -> Result<Vec<i64>> {
        let reject = |why: &str| Err(Error::Unsupported(format!("not of affine type: {why}")));
        if self.is_empty() || self.has_loops() {
            return reject("empty or has loops");
        }
        if !self.is_connected() {
            return reject("disconnected");
        }
        let ker = linalg::kernel(&self.0);
        if ker.len() != 1 {
            return reject("kernel dimension is not 1");
        }
        let v = &ker[0];
        let lcm = v.iter().fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));
        let mut ints: Vec<i64> = v.iter().map(|x| (x * lcm).to_integer()).collect();
        let g = ints.iter().fold(0i64, |acc, x| num_integer::gcd(acc, *x));
        for x in ints.iter_mut() {
            *x /= g;
        }
        if ints.iter().all(|x| x.is_negative()) {
            ints.iter_mut().for_each(|x| *x = -*x);
        }
        if !ints.iter().all(|x| x.is_positive()) {
            return reject("kernel vector is not positive");
        }
        Ok(ints)
    }
}

/// Nonnegative integer vector indexed by vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct DimVector(Vec<i64>);

impl TryFrom<Vec<i64>> for DimVector {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        DimVector::new(v)
    }
}

impl From<DimVector> for Vec<i64> {
    fn from(v: DimVector) -> Self {
        v.0
    }
}

impl Deref for DimVector {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl DimVector {
    pub fn new(v: Vec<i64>) -> Result<Self> {
        if v.iter().any(|x| x.is_negative()) {
            return precondition(format!("dimension vector {v:?} has a negative entry"));
        }
        Ok(Self(v))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise `self ≤ other`.
    pub fn fits_in(&self, other: &[i64]) -> bool {
        self.0.iter().zip(other).all(|(a, b)| a <= b)
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.0.clone()
    }

    pub fn add(&self, other: &[i64]) -> DimVector {
        DimVector(self.0.iter().zip(other).map(|(a, b)| a + b).collect())
    }

    /// `self − other` when nonnegative.
    pub fn checked_sub(&self, other: &[i64]) -> Option<DimVector> {
        let d: Vec<i64> = self.0.iter().zip(other).map(|(a, b)| a - b).collect();
        linalg::is_nonneg(&d).then_some(DimVector(d))
    }

    pub fn scale(&self, k: i64) -> DimVector {
        DimVector(self.0.iter().map(|x| x * k).collect())
    }

    /// Every vector `0 ≤ x ≤ self`, in lexicographic order.
    pub fn box_below(&self) -> Vec<DimVector> {
        let mut out = vec![Vec::with_capacity(self.len())];
        for &b in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=b).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(DimVector).collect()
    }

    /// All nonnegative vectors of length `n` with entry sum at most `bound`.
    pub fn all_with_total_at_most(n: usize, bound: i64) -> Vec<DimVector> {
        let mut out = Vec::new();
        let mut cur = vec![0; n];
        fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<DimVector>) {
            if i == cur.len() {
                out.push(DimVector(cur.clone()));
                return;
            }
            for x in 0..=left {
                cur[i] = x;
                rec(i + 1, left - x, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, bound, &mut cur, &mut out);
        out.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
        out
    }
}

/// A weight `w − v` with an optional explicit δ-degree shift.
///
/// `framing` holds the fundamental-weight coefficients, `content` the simple-root
/// coefficients. Content may go negative during reflection arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineWeight {
    pub framing: DimVector,
    pub content: Vec<i64>,
    #[serde(with = "crate::rational::serde_rational")]
    pub extra_degree: Rational64,
}

impl AffineWeight {
    pub fn new(framing: DimVector, content: Vec<i64>) -> Self {
        Self { framing, content, extra_degree: Rational64::zero() }
    }

    pub fn highest(framing: DimVector) -> Self {
        let n = framing.len();
        Self::new(framing, vec![0; n])
    }

    /// All pairings `⟨h_i, w − v⟩`.
    pub fn pairings(&self, c: &CartanMatrix) -> Vec<i64> {
        let cv = c.apply(&self.content);
        self.framing.iter().zip(cv).map(|(w, x)| w - x).collect()
    }
}

/// Cartan matrix of a graph: `2 − 2·loops` on the diagonal, minus edge counts off it.
pub fn cartan_from_graph(graph: &QuiverGraph) -> CartanMatrix {
    let n = graph.len();
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in graph.edges() {
        if a == b {
            c[a][a] -= 2;
        } else {
            c[a][b] -= 1;
            c[b][a] -= 1;
        }
    }
    CartanMatrix(c)
}

/// `p(x) = 1 − ½ ᵗxCx`. The form is even for every symmetric Cartan matrix.
pub fn p_value(x: &[i64], c: &CartanMatrix) -> i64 {
    1 - c.form(x, x) / 2
}

/// `⟨h_i, w − v⟩ = w_i − (Cv)_i`.
pub fn pairing(i: usize, wv: &AffineWeight, c: &CartanMatrix) -> i64 {
    wv.framing[i] - c.0[i].iter().zip(&wv.content).map(|(a, b)| a * b).sum::<i64>()
}

/// Base graph plus a vertex `∞` joined to vertex `i` by `w_i` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedQuiver {
    pub base: QuiverGraph,
    pub framing: DimVector,
    pub graph: QuiverGraph,
}

impl ExtendedQuiver {
    /// Index of the new vertex.
    pub fn infinity(&self) -> usize {
        self.base.len()
    }
}

pub fn extend_quiver(graph: &QuiverGraph, w: &DimVector) -> Result<ExtendedQuiver> {
    if w.len() != graph.len() {
        return precondition("framing length differs from the vertex count");
    }
    let inf = graph.len();
    let mut vertices = graph.vertices().to_vec();
    let mut label = "∞".to_string();
    while vertices.contains(&label) {
        label.push('\'');
    }
    vertices.push(label);
    let mut edges = graph.edges().to_vec();
    for (i, &wi) in w.iter().enumerate() {
        for _ in 0..wi {
            edges.push((inf, i));
        }
    }
    let orientation = graph.orientation().map(|o| {
        let mut o = o.to_vec();
        o.resize(edges.len(), true);
        o
    });
    Ok(ExtendedQuiver {
        base: graph.clone(),
        framing: w.clone(),
        graph: QuiverGraph::new(vertices, edges, orientation)?,
    })
}

/// Expected dimension: `ᵗv(2w − Cv)` when framed, `2 − ᵗvCv` otherwise.
pub fn expected_dim(v: &[i64], w: &[i64], c: &CartanMatrix) -> i64 {
    let cv = c.apply(v);
    if w.iter().any(|&x| x != 0) {
        v.iter().zip(w).zip(cv).map(|((vi, wi), ci)| vi * (2 * wi - ci)).sum()
    } else {
        2 - c.form(v, v)
    }
}

/// `ᵗx y`.
pub fn dot(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}
