//! Explicit framed modules of the doubled quiver over F₂ or F₃, with brute-force
//! stability verdicts, Harder–Narasimhan and Jordan–Hölder filtrations.

pub mod linear;

use std::cell::RefCell;
use std::collections::HashMap;

use num_rational::Rational64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::km::{Arrow, DimVector, QuiverGraph};
use crate::stability::{normalize, slope, StabilityParam};
use linear::{all_subspaces, count_subspaces, general_linear, gl_order, Mat, Subspace};

/// Candidate-subspace budget for submodule enumeration.
pub const SUBSPACE_BUDGET: u128 = 1_000_000;
const ISO_BUDGET: u128 = 2_000_000;

/// A point `(B, a, b)` with graded dimensions `v`, `w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedModule {
    pub field: u8,
    pub v: DimVector,
    pub w: DimVector,
    pub arrows: Vec<Arrow>,
    /// `B_h : V_src → V_dst`, one per arrow of the doubled quiver.
    pub maps: Vec<Mat>,
    /// `a_i : W_i → V_i`.
    pub a: Vec<Mat>,
    /// `b_i : V_i → W_i`.
    pub b: Vec<Mat>,
}

impl GradedModule {
    pub fn zero(graph: &QuiverGraph, field: u8, v: &DimVector, w: &DimVector) -> Result<Self> {
        if field != 2 && field != 3 {
            return precondition("field must be F_2 or F_3");
        }
        if v.len() != graph.len() || w.len() != graph.len() {
            return precondition("dimension vectors must match the vertex count");
        }
        let arrows = graph.arrows();
        let d = |i: usize| v[i] as usize;
        let e = |i: usize| w[i] as usize;
        Ok(Self {
            field,
            v: v.clone(),
            w: w.clone(),
            maps: arrows.iter().map(|h| Mat::zeros(d(h.dst), d(h.src))).collect(),
            a: (0..graph.len()).map(|i| Mat::zeros(d(i), e(i))).collect(),
            b: (0..graph.len()).map(|i| Mat::zeros(e(i), d(i))).collect(),
            arrows,
        })
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }

    pub fn is_framed(&self) -> bool {
        !self.w.is_zero()
    }

    fn entries_mut(&mut self) -> impl Iterator<Item = &mut u8> {
        self.maps
            .iter_mut()
            .chain(self.a.iter_mut())
            .chain(self.b.iter_mut())
            .flat_map(|m| m.data.iter_mut())
    }

    /// Number of matrix entries.
    pub fn entry_count(&self) -> usize {
        self.maps.iter().chain(&self.a).chain(&self.b).map(|m| m.data.len()).sum()
    }

    /// Fill all entries from the base-q digits of `code`.
    pub fn with_code(&self, mut code: u64) -> Self {
        let q = self.field as u64;
        let mut out = self.clone();
        for x in out.entries_mut() {
            *x = (code % q) as u8;
            code /= q;
        }
        out
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> Self {
        let q = self.field;
        let mut out = self.clone();
        for x in out.entries_mut() {
            *x = rng.gen_range(0..q);
        }
        out
    }

    /// Direct sum of two modules on the same graph and field.
    pub fn direct_sum(&self, other: &GradedModule) -> Result<GradedModule> {
        if self.field != other.field || self.arrows != other.arrows {
            return precondition("direct sum needs the same graph and field");
        }
        let block = |x: &Mat, y: &Mat| {
            let mut m = Mat::zeros(x.rows + y.rows, x.cols + y.cols);
            for i in 0..x.rows {
                for j in 0..x.cols {
                    m.set(i, j, x.get(i, j));
                }
            }
            for i in 0..y.rows {
                for j in 0..y.cols {
                    m.set(x.rows + i, x.cols + j, y.get(i, j));
                }
            }
            m
        };
        Ok(GradedModule {
            field: self.field,
            v: self.v.add(&other.v),
            w: self.w.add(&other.w),
            arrows: self.arrows.clone(),
            maps: self.maps.iter().zip(&other.maps).map(|(x, y)| block(x, y)).collect(),
            a: self.a.iter().zip(&other.a).map(|(x, y)| block(x, y)).collect(),
            b: self.b.iter().zip(&other.b).map(|(x, y)| block(x, y)).collect(),
        })
    }

    pub fn satisfies_moment_map(&self) -> bool {
        moment_map(self).iter().all(Mat::is_zero)
    }
}

/// `Σ_{in(h)=i} ε(h) B_h B_h̄ + a_i b_i` at each vertex.
pub fn moment_map(m: &GradedModule) -> Vec<Mat> {
    let q = m.field;
    let mut out: Vec<Mat> = (0..m.n()).map(|i| m.a[i].mul(&m.b[i], q)).collect();
    for (k, h) in m.arrows.iter().enumerate() {
        // arrows come in pairs (h, h̄)
        let bar = k ^ 1;
        let term = m.maps[k].mul(&m.maps[bar], q);
        let term = if h.positive { term } else { term.neg(q) };
        out[h.dst] = out[h.dst].add(&term, q);
    }
    out
}

/// A submodule `(V', δW)`: `w_flag` is true when `δW = W`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Submodule {
    pub spaces: Vec<Subspace>,
    pub w_flag: bool,
}

impl Submodule {
    pub fn dims(&self) -> Vec<i64> {
        self.spaces.iter().map(|s| s.dim() as i64).collect()
    }

    fn size(&self) -> i64 {
        self.dims().iter().sum::<i64>() + i64::from(self.w_flag)
    }

    fn key(&self) -> (bool, Vec<&Vec<Vec<u8>>>) {
        (self.w_flag, self.spaces.iter().map(|s| &s.rows).collect())
    }
}

fn is_invariant(m: &GradedModule, spaces: &[Subspace]) -> bool {
    let q = m.field;
    m.arrows.iter().zip(&m.maps).all(|(h, bh)| {
        spaces[h.src].rows.iter().all(|x| spaces[h.dst].contains(&bh.apply(x, q), q))
    })
}

fn in_kernel_of_b(m: &GradedModule, spaces: &[Subspace]) -> bool {
    let q = m.field;
    spaces.iter().zip(&m.b).all(|(s, b)| s.rows.iter().all(|x| b.apply(x, q).iter().all(|&y| y == 0)))
}

fn contains_image_of_a(m: &GradedModule, spaces: &[Subspace]) -> bool {
    let q = m.field;
    spaces.iter().zip(&m.a).all(|(s, a)| (0..a.cols).all(|j| s.contains(&a.column(j), q)))
}

/// Every submodule including `(0, 0)`.
fn all_submodules(m: &GradedModule) -> Result<Vec<Submodule>> {
    let q = m.field;
    let candidates: u128 = m.v.iter().map(|&d| count_subspaces(d as usize, q)).product();
    if candidates > SUBSPACE_BUDGET {
        return Err(Error::Budget(format!("{candidates} candidate graded subspaces exceed {SUBSPACE_BUDGET}")));
    }
    let lists: Vec<_> = m.v.iter().map(|&d| all_subspaces(d as usize, q)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; m.n()];
    loop {
        let spaces: Vec<Subspace> = idx.iter().zip(&lists).map(|(&k, l)| l[k].clone()).collect();
        if is_invariant(m, &spaces) {
            if in_kernel_of_b(m, &spaces) {
                out.push(Submodule { spaces: spaces.clone(), w_flag: false });
            }
            if m.is_framed() && contains_image_of_a(m, &spaces) {
                out.push(Submodule { spaces, w_flag: true });
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Both kinds of submodule, excluding `(0, 0)` and including `(V, W)`.
pub fn enumerate_submodules(m: &GradedModule) -> Result<Vec<Submodule>> {
    Ok(all_submodules(m)?.into_iter().filter(|s| s.size() > 0).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Verdict {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl Verdict {
    pub fn is_semistable(self) -> bool {
        self != Verdict::Unstable
    }
}

/// The submodule lattice of one module, with containments precomputed.
pub struct SubmoduleLattice<'a> {
    module: &'a GradedModule,
    subs: Vec<Submodule>,
    zero: usize,
    full: usize,
    above: Vec<Vec<bool>>,
}

impl<'a> SubmoduleLattice<'a> {
    pub fn new(module: &'a GradedModule) -> Result<Self> {
        let subs = all_submodules(module)?;
        let q = module.field;
        let zero = subs.iter().position(|s| s.size() == 0).expect("zero submodule");
        let full_size = module.v.total() + i64::from(module.is_framed());
        let full = subs.iter().position(|s| s.size() == full_size).expect("whole module");
        let n = subs.len();
        let mut above = vec![vec![false; n]; n];
        for (t, big) in subs.iter().enumerate() {
            for (u, small) in subs.iter().enumerate() {
                above[t][u] = (!small.w_flag || big.w_flag)
                    && big.spaces.iter().zip(&small.spaces).all(|(b, s)| s.dim() <= b.dim() && b.contains_space(s, q));
            }
        }
        Ok(Self { module, subs, zero, full, above })
    }

    pub fn submodules(&self) -> &[Submodule] {
        &self.subs
    }

    fn piece(&self, t: usize, u: usize) -> (Vec<i64>, bool) {
        let dt = self.subs[t].dims();
        let du = self.subs[u].dims();
        (dt.iter().zip(&du).map(|(a, b)| a - b).collect(), self.subs[t].w_flag && !self.subs[u].w_flag)
    }

    fn piece_slope(&self, zt: &StabilityParam, t: usize, u: usize) -> Rational64 {
        let (d, f) = self.piece(t, u);
        slope(zt, &d, f).expect("nonzero piece")
    }

    /// Strictly between `u` and `t` in the lattice: `u ⊊ x ⊆ t`.
    fn between(&self, u: usize, t: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.subs.len()).filter(move |&x| x != u && self.above[x][u] && self.above[t][x])
    }

    /// Semistability (and stability) of the subquotient `t / u`.
    fn piece_verdict(&self, zt: &StabilityParam, t: usize, u: usize) -> Verdict {
        let s = self.piece_slope(zt, t, u);
        let mut verdict = Verdict::Stable;
        for x in self.between(u, t) {
            if x == t {
                continue;
            }
            let sx = self.piece_slope(zt, x, u);
            if sx > s {
                return Verdict::Unstable;
            }
            if sx == s {
                verdict = Verdict::StrictlySemistable;
            }
        }
        verdict
    }

    pub fn verdict(&self, zt: &StabilityParam) -> Verdict {
        self.piece_verdict(zt, self.full, self.zero)
    }

    /// Greedy Harder–Narasimhan chain from the bottom: `0 = U_0 ⊊ U_1 ⊊ … ⊊ U_m = M`.
    fn hn_chain(&self, zt: &StabilityParam) -> Vec<usize> {
        let mut chain = vec![self.zero];
        let mut cur = self.zero;
        while cur != self.full {
            let best = (0..self.subs.len())
                .filter(|&t| t != cur && self.above[t][cur])
                .max_by(|&x, &y| {
                    self.piece_slope(zt, x, cur)
                        .cmp(&self.piece_slope(zt, y, cur))
                        .then(self.subs[x].size().cmp(&self.subs[y].size()))
                        .then(self.subs[y].key().cmp(&self.subs[x].key()))
                })
                .expect("the whole module lies above");
            chain.push(best);
            cur = best;
        }
        chain
    }

    fn filtration_from_chain(&self, zt: &StabilityParam, chain: &[usize]) -> HNFiltration {
        // flag top-down: V⁰ ⊃ V¹ ⊃ … ⊃ V^N, pieces gr_k = V^k / V^{k+1}
        let top_down: Vec<usize> = chain.iter().rev().copied().collect();
        let mut pieces = Vec::new();
        for k in 0..top_down.len() - 1 {
            let (t, u) = (top_down[k], top_down[k + 1]);
            let (dims, w_flag) = self.piece(t, u);
            pieces.push(HNPiece { dims, w_flag, slope: self.piece_slope(zt, t, u) });
        }
        let k_w = pieces.iter().position(|p| p.w_flag);
        HNFiltration {
            flag: top_down[..top_down.len() - 1].iter().map(|&i| self.subs[i].clone()).collect(),
            pieces,
            k_w,
        }
    }

    pub fn hn_filtration(&self, zt: &StabilityParam) -> HNFiltration {
        self.filtration_from_chain(zt, &self.hn_chain(zt))
    }

    /// Every chain with semistable pieces of strictly decreasing slope from bottom to top.
    pub fn all_hn_chains(&self, zt: &StabilityParam) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut chain = vec![self.zero];
        self.search(zt, &mut chain, None, &mut out);
        out
    }

    fn search(&self, zt: &StabilityParam, chain: &mut Vec<usize>, prev: Option<Rational64>, out: &mut Vec<Vec<usize>>) {
        let cur = *chain.last().expect("nonempty");
        if cur == self.full {
            out.push(chain.clone());
            return;
        }
        for t in 0..self.subs.len() {
            if t == cur || !self.above[t][cur] {
                continue;
            }
            let s = self.piece_slope(zt, t, cur);
            if prev.is_some_and(|p| s >= p) || !self.piece_verdict(zt, t, cur).is_semistable() {
                continue;
            }
            chain.push(t);
            self.search(zt, chain, Some(s), out);
            chain.pop();
        }
    }

    pub fn hn_chain_indices(&self, zt: &StabilityParam) -> Vec<usize> {
        self.hn_chain(zt)
    }

    /// A Jordan–Hölder chain: minimal equal-slope steps, ties broken by `tie`.
    pub fn jh_chain(&self, zt: &StabilityParam, tie: TieBreak) -> Result<Vec<usize>> {
        if !self.verdict(zt).is_semistable() {
            return precondition("Jordan–Hölder factors need a semistable module");
        }
        let s = self.piece_slope(zt, self.full, self.zero);
        let mut chain = vec![self.zero];
        let mut cur = self.zero;
        while cur != self.full {
            let cands = (0..self.subs.len()).filter(|&t| t != cur && self.above[t][cur] && self.piece_slope(zt, t, cur) == s);
            let pick = match tie {
                TieBreak::Smallest => cands.min_by(|&x, &y| {
                    self.subs[x].size().cmp(&self.subs[y].size()).then(self.subs[x].key().cmp(&self.subs[y].key()))
                }),
                TieBreak::Largest => cands.min_by(|&x, &y| {
                    self.subs[x].size().cmp(&self.subs[y].size()).then(self.subs[y].key().cmp(&self.subs[x].key()))
                }),
            }
            .expect("the whole module has the same slope");
            if self.piece_verdict(zt, pick, cur) != Verdict::Stable {
                return Err(Error::Internal("Jordan–Hölder step is not stable".into()));
            }
            chain.push(pick);
            cur = pick;
        }
        Ok(chain)
    }

    pub fn jh_factors(&self, zt: &StabilityParam, tie: TieBreak) -> Result<Vec<JHFactor>> {
        let chain = self.jh_chain(zt, tie)?;
        let mut out = Vec::new();
        for pair in chain.windows(2) {
            let quotient = subquotient(self.module, &self.subs[pair[1]], &self.subs[pair[0]]);
            let (dims, w_flag) = self.piece(pair[1], pair[0]);
            out.push(JHFactor { dims, w_flag, iso_class: canonical_form(&quotient)? });
        }
        out.sort();
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    Smallest,
    Largest,
}

/// One graded piece of a Harder–Narasimhan filtration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HNPiece {
    pub dims: Vec<i64>,
    pub w_flag: bool,
    #[serde(with = "crate::rational::serde_rational")]
    pub slope: Rational64,
}

/// `V = V⁰ ⊃ V¹ ⊃ … ⊃ V^N ⊃ 0` with pieces of strictly increasing slope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HNFiltration {
    pub flag: Vec<Submodule>,
    pub pieces: Vec<HNPiece>,
    /// Index of the piece carrying `W`, when the module is framed.
    pub k_w: Option<usize>,
}

impl HNFiltration {
    pub fn length(&self) -> usize {
        self.pieces.len()
    }
}

/// A Jordan–Hölder factor with its isomorphism class over F_q.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct JHFactor {
    pub dims: Vec<i64>,
    pub w_flag: bool,
    pub iso_class: Vec<u8>,
}

fn normalized(m: &GradedModule, zt: &StabilityParam) -> Result<StabilityParam> {
    if zt.zeta.len() != m.n() {
        return precondition("stability parameter length differs from the vertex count");
    }
    if m.v.is_zero() && !m.is_framed() {
        return precondition("the zero module has no slope");
    }
    match zt.zeta_inf {
        Some(_) => Ok(zt.clone()),
        None => normalize(zt, &m.v, &m.w),
    }
}

pub fn stability_verdict(m: &GradedModule, zt: &StabilityParam) -> Result<Verdict> {
    let zt = normalized(m, zt)?;
    Ok(SubmoduleLattice::new(m)?.verdict(&zt))
}

pub fn hn_filtration(m: &GradedModule, zt: &StabilityParam) -> Result<HNFiltration> {
    let zt = normalized(m, zt)?;
    Ok(SubmoduleLattice::new(m)?.hn_filtration(&zt))
}

/// Number of Harder–Narasimhan flags found by exhaustive search.
pub fn hn_flag_count(m: &GradedModule, zt: &StabilityParam) -> Result<usize> {
    let zt = normalized(m, zt)?;
    Ok(SubmoduleLattice::new(m)?.all_hn_chains(&zt).len())
}

pub fn jh_factors(m: &GradedModule, zt: &StabilityParam) -> Result<Vec<JHFactor>> {
    let zt = normalized(m, zt)?;
    SubmoduleLattice::new(m)?.jh_factors(&zt, TieBreak::Smallest)
}

/// The module `T / U` for submodules `U ⊆ T`.
pub fn subquotient(m: &GradedModule, upper: &Submodule, lower: &Submodule) -> GradedModule {
    let q = m.field;
    let n = m.n();
    let reps: Vec<Subspace> = (0..n)
        .map(|i| {
            let reduced: Vec<Vec<u8>> = upper.spaces[i].rows.iter().map(|r| lower.spaces[i].reduce(r, q)).collect();
            Subspace::span(m.v[i] as usize, &reduced, q)
        })
        .collect();
    let coords = |i: usize, y: &[u8]| reps[i].coords(&lower.spaces[i].reduce(y, q));
    let dims: Vec<i64> = reps.iter().map(|r| r.dim() as i64).collect();
    let framed = upper.w_flag && !lower.w_flag;
    let w = if framed { m.w.clone() } else { DimVector::zeros(n) };
    let maps = m
        .arrows
        .iter()
        .zip(&m.maps)
        .map(|(h, bh)| {
            let cols: Vec<Vec<u8>> = reps[h.src].rows.iter().map(|r| coords(h.dst, &bh.apply(r, q))).collect();
            Mat::from_columns(&cols, dims[h.dst] as usize)
        })
        .collect();
    let a = (0..n)
        .map(|i| {
            if framed {
                let cols: Vec<Vec<u8>> = (0..m.a[i].cols).map(|j| coords(i, &m.a[i].column(j))).collect();
                Mat::from_columns(&cols, dims[i] as usize)
            } else {
                Mat::zeros(dims[i] as usize, 0)
            }
        })
        .collect();
    let b = (0..n)
        .map(|i| {
            if framed {
                let cols: Vec<Vec<u8>> = reps[i].rows.iter().map(|r| m.b[i].apply(r, q)).collect();
                Mat::from_columns(&cols, m.w[i] as usize)
            } else {
                Mat::zeros(0, dims[i] as usize)
            }
        })
        .collect();
    GradedModule {
        field: q,
        v: DimVector::new(dims).expect("dimensions"),
        w,
        arrows: m.arrows.clone(),
        maps,
        a,
        b,
    }
}

thread_local! {
    static ISO_CACHE: RefCell<HashMap<GradedModule, Vec<u8>>> = RefCell::new(HashMap::new());
}

/// Lexicographically minimal encoding over all changes of basis in `V`.
pub fn canonical_form(m: &GradedModule) -> Result<Vec<u8>> {
    if let Some(hit) = ISO_CACHE.with(|c| c.borrow().get(m).cloned()) {
        return Ok(hit);
    }
    let q = m.field;
    let order: u128 = m.v.iter().map(|&d| gl_order(d as usize, q)).product();
    if order > ISO_BUDGET {
        return Err(Error::Budget(format!("isomorphism search over {order} basis changes")));
    }
    let groups: Vec<_> = m.v.iter().map(|&d| general_linear(d as usize, q)).collect();
    let mut best: Option<Vec<u8>> = None;
    let mut idx = vec![0usize; m.n()];
    loop {
        let g = |i: usize| &groups[i][idx[i]];
        let mut enc = Vec::new();
        enc.extend(m.v.iter().map(|&x| x as u8));
        enc.extend(m.w.iter().map(|&x| x as u8));
        for (h, bh) in m.arrows.iter().zip(&m.maps) {
            enc.extend(g(h.dst).0.mul(bh, q).mul(&g(h.src).1, q).data);
        }
        for i in 0..m.n() {
            enc.extend(g(i).0.mul(&m.a[i], q).data);
        }
        for i in 0..m.n() {
            enc.extend(m.b[i].mul(&g(i).1, q).data);
        }
        if best.as_ref().is_none_or(|b| enc < *b) {
            best = Some(enc);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                let out = best.expect("at least the identity");
                ISO_CACHE.with(|c| c.borrow_mut().insert(m.clone(), out.clone()));
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < groups[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::StabilityParam;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dv(v: &[i64]) -> DimVector {
        DimVector::new(v.to_vec()).unwrap()
    }

    fn a1_module(a: u8, b: u8) -> GradedModule {
        let mut m = GradedModule::zero(&QuiverGraph::finite_a(1), 2, &dv(&[1]), &dv(&[1])).unwrap();
        m.a[0].data = vec![a];
        m.b[0].data = vec![b];
        m
    }

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn moment_map_examples() {
        let g = QuiverGraph::finite_a(2);
        let m = GradedModule::zero(&g, 3, &dv(&[2, 1]), &dv(&[1, 1])).unwrap();
        assert!(moment_map(&m).iter().all(Mat::is_zero));
        let mut m = a1_module(1, 1);
        assert_eq!(moment_map(&m)[0].data, vec![1]);
        m.b[0].data = vec![0];
        assert!(m.satisfies_moment_map());
        let j = QuiverGraph::jordan();
        let mut m = GradedModule::zero(&j, 3, &dv(&[2]), &dv(&[0])).unwrap();
        m.maps[0] = Mat::from_rows(&[vec![0, 1], vec![0, 0]], 2);
        m.maps[1] = Mat::from_rows(&[vec![0, 0], vec![1, 0]], 2);
        // xy − yx = diag(1, −1)
        assert_eq!(moment_map(&m)[0].data, vec![1, 0, 0, 2]);
    }

    #[test]
    fn submodule_examples() {
        let subs = enumerate_submodules(&a1_module(0, 0)).unwrap();
        let kinds: Vec<(Vec<i64>, bool)> = subs.iter().map(|s| (s.dims(), s.w_flag)).collect();
        assert!(kinds.contains(&(vec![1], false)));
        assert!(kinds.contains(&(vec![0], true)));
        assert!(kinds.contains(&(vec![1], true)));
        let subs = enumerate_submodules(&a1_module(0, 1)).unwrap();
        assert!(!subs.iter().any(|s| s.dims() == vec![1] && !s.w_flag));
        let m = GradedModule::zero(&QuiverGraph::finite_a(1), 2, &dv(&[0]), &dv(&[1])).unwrap();
        let subs = enumerate_submodules(&m).unwrap();
        assert_eq!(subs.len(), 1);
        assert!(subs[0].w_flag);
    }

    #[test]
    fn budget_is_enforced() {
        let m = GradedModule::zero(&QuiverGraph::finite_a(1), 3, &dv(&[9]), &dv(&[0])).unwrap();
        assert!(matches!(enumerate_submodules(&m), Err(Error::Budget(_))));
    }

    #[test]
    fn verdict_examples() {
        let zt = StabilityParam::from_ints(&[1]);
        assert_eq!(stability_verdict(&a1_module(0, 1), &zt).unwrap(), Verdict::Stable);
        assert_eq!(stability_verdict(&a1_module(0, 0), &zt).unwrap(), Verdict::Unstable);
        let zero = StabilityParam::zero(1);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = QuiverGraph::affine_a(1);
        let t = GradedModule::zero(&g, 2, &dv(&[2, 1]), &dv(&[1, 1])).unwrap();
        for _ in 0..20 {
            let m = t.random(&mut rng);
            assert!(stability_verdict(&m, &StabilityParam::zero(2)).unwrap().is_semistable());
        }
        assert!(stability_verdict(&a1_module(1, 1), &zero).unwrap().is_semistable());
    }

    #[test]
    fn hn_examples() {
        let zt = StabilityParam { zeta: vec![r(1)], zeta_inf: Some(r(-1)) };
        let hn = hn_filtration(&a1_module(0, 0), &zt).unwrap();
        assert_eq!(hn.pieces.len(), 2);
        assert_eq!((hn.pieces[0].dims.clone(), hn.pieces[0].w_flag, hn.pieces[0].slope), (vec![0], true, r(-1)));
        assert_eq!((hn.pieces[1].dims.clone(), hn.pieces[1].w_flag, hn.pieces[1].slope), (vec![1], false, r(1)));
        assert_eq!(hn.k_w, Some(0));
        // semistable: trivial flag
        let hn = hn_filtration(&a1_module(0, 1), &StabilityParam::from_ints(&[1])).unwrap();
        assert_eq!(hn.length(), 1);
        // direct sum of two stable modules with distinct slopes
        let g = QuiverGraph::finite_a(2);
        let s1 = GradedModule::zero(&g, 2, &dv(&[1, 0]), &dv(&[0, 0])).unwrap();
        let s2 = GradedModule::zero(&g, 2, &dv(&[0, 1]), &dv(&[0, 0])).unwrap();
        let m = s1.direct_sum(&s2).unwrap();
        let zt = StabilityParam { zeta: vec![r(1), r(-1)], zeta_inf: Some(r(0)) };
        let hn = hn_filtration(&m, &zt).unwrap();
        assert_eq!(hn.length(), 2);
        assert_eq!(hn.pieces[1].dims, vec![1, 0]);
        assert!(hn.pieces[0].slope < hn.pieces[1].slope);
    }

    #[test]
    fn jh_examples() {
        let zero = StabilityParam::zero(1);
        let f = jh_factors(&a1_module(0, 1), &zero).unwrap();
        let kinds: Vec<(Vec<i64>, bool)> = f.iter().map(|x| (x.dims.clone(), x.w_flag)).collect();
        assert_eq!(kinds, vec![(vec![0], true), (vec![1], false)]);
        // S ⊕ S at a vertex with zero parameter
        let g = QuiverGraph::finite_a(1);
        let s = GradedModule::zero(&g, 2, &dv(&[1]), &dv(&[0])).unwrap();
        let ss = s.direct_sum(&s).unwrap();
        let f = jh_factors(&ss, &zero).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0], f[1]);
        // stable ⇒ one factor
        let f = jh_factors(&a1_module(0, 1), &StabilityParam::from_ints(&[1])).unwrap();
        assert_eq!(f.len(), 1);
        assert!(jh_factors(&a1_module(0, 0), &StabilityParam::from_ints(&[1])).is_err());
    }

    #[test]
    fn random_modules_have_unique_hn_and_consistent_jh() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = QuiverGraph::finite_a(2);
        let t = GradedModule::zero(&g, 3, &dv(&[1, 2]), &dv(&[1, 0])).unwrap();
        for _ in 0..40 {
            let m = t.random(&mut rng);
            for z in [[1, -1], [0, 0], [2, 1], [-1, 1]] {
                let zt = normalize(&StabilityParam::from_ints(&z), &m.v, &m.w).unwrap();
                let lat = SubmoduleLattice::new(&m).unwrap();
                let chains = lat.all_hn_chains(&zt);
                assert_eq!(chains.len(), 1);
                assert_eq!(chains[0], lat.hn_chain_indices(&zt));
                let hn = lat.hn_filtration(&zt);
                assert!(hn.pieces.windows(2).all(|p| p[0].slope < p[1].slope));
                if lat.verdict(&zt).is_semistable() {
                    assert_eq!(lat.jh_factors(&zt, TieBreak::Smallest).unwrap(), lat.jh_factors(&zt, TieBreak::Largest).unwrap());
                }
            }
        }
    }

    #[test]
    fn see_saw_on_submodules() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = QuiverGraph::affine_a(1);
        let t = GradedModule::zero(&g, 2, &dv(&[2, 1]), &dv(&[1, 0])).unwrap();
        let zt = normalize(&StabilityParam::from_ints(&[2, -3]), &dv(&[2, 1]), &dv(&[1, 0])).unwrap();
        for _ in 0..20 {
            let m = t.random(&mut rng);
            for s in enumerate_submodules(&m).unwrap() {
                let d = s.dims();
                let rest: Vec<i64> = m.v.iter().zip(&d).map(|(a, b)| a - b).collect();
                let quotient_size = rest.iter().sum::<i64>() + i64::from(!s.w_flag);
                if quotient_size == 0 {
                    continue;
                }
                let s1 = slope(&zt, &d, s.w_flag).unwrap();
                let s2 = slope(&zt, &rest, !s.w_flag).unwrap();
                assert_eq!(s1 <= r(0), s2 >= r(0));
            }
        }
    }

    #[test]
    fn verdict_is_shift_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = QuiverGraph::finite_a(2);
        let t = GradedModule::zero(&g, 2, &dv(&[1, 1]), &dv(&[1, 1])).unwrap();
        for _ in 0..20 {
            let m = t.random(&mut rng);
            let zt = normalize(&StabilityParam::from_ints(&[1, -2]), &m.v, &m.w).unwrap();
            let mut shifted = zt.shifted(r(3));
            shifted.zeta_inf = zt.zeta_inf.map(|x| x + 3);
            assert_eq!(stability_verdict(&m, &zt).unwrap(), stability_verdict(&m, &shifted).unwrap());
        }
    }

    #[test]
    fn subquotient_dimensions() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = QuiverGraph::finite_a(2);
        let t = GradedModule::zero(&g, 2, &dv(&[2, 1]), &dv(&[0, 1])).unwrap();
        let m = t.random(&mut rng);
        let lat = SubmoduleLattice::new(&m).unwrap();
        for up in lat.submodules() {
            let zero = &lat.submodules()[lat.zero];
            let sq = subquotient(&m, up, zero);
            assert_eq!(sq.v.to_vec(), up.dims());
            assert_eq!(sq.is_framed(), up.w_flag);
        }
        assert_eq!(canonical_form(&m).unwrap(), canonical_form(&m).unwrap());
    }
}
