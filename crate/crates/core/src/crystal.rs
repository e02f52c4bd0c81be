//! Crystals of affine type A_{r−1}: level-one crystals realized on r-regular
//! partitions, tensor products with Fock shifts, highest-weight counting.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::km::{cartan_from_graph, CartanMatrix, QuiverGraph};
use crate::strata::partitions;

/// A partition colored by residues `(col − row + i₀) mod r`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ColoredPartition {
    pub parts: Vec<i64>,
    pub residue_shift: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sign {
    Plus,
    Minus,
}

impl ColoredPartition {
    pub fn empty(rank: usize, residue_shift: usize) -> Self {
        Self { parts: Vec::new(), residue_shift, rank }
    }

    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    fn residue(&self, row: usize, col: i64) -> usize {
        (col - row as i64 + self.residue_shift as i64).rem_euclid(self.rank as i64) as usize
    }

    /// Number of boxes of each residue.
    pub fn content(&self) -> Vec<i64> {
        let mut out = vec![0; self.rank];
        for (row, &len) in self.parts.iter().enumerate() {
            for col in 0..len {
                out[self.residue(row, col)] += 1;
            }
        }
        out
    }

    /// No part repeated `rank` or more times.
    pub fn is_regular(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1])
            && self.parts.iter().all(|&p| p > 0)
            && self.parts.windows(self.rank).all(|w| w[0] != w[self.rank - 1])
    }

    /// Addable and removable `i`-nodes as (row, sign), read by decreasing content.
    fn signature(&self, i: usize) -> Vec<(usize, Sign)> {
        let mut nodes = Vec::new();
        let len = self.parts.len();
        for row in 0..=len {
            let cur = if row < len { self.parts[row] } else { 0 };
            if (row == 0 || self.parts[row - 1] > cur) && self.residue(row, cur) == i {
                nodes.push((cur - row as i64, row, Sign::Plus));
            }
            if row < len && (row + 1 == len || self.parts[row + 1] < cur) && self.residue(row, cur - 1) == i {
                nodes.push((cur - 1 - row as i64, row, Sign::Minus));
            }
        }
        nodes.sort_by_key(|&(content, _, _)| -content);
        nodes.into_iter().map(|(_, row, s)| (row, s)).collect()
    }

    fn add_at(&self, row: usize) -> Self {
        let mut out = self.clone();
        if row == out.parts.len() {
            out.parts.push(1);
        } else {
            out.parts[row] += 1;
        }
        out
    }

    fn remove_at(&self, row: usize) -> Self {
        let mut out = self.clone();
        out.parts[row] -= 1;
        if out.parts[row] == 0 {
            out.parts.pop();
        }
        out
    }
}

/// Cancel adjacent `+−` pairs; the survivors read `−…−+…+`.
fn reduce<T: Copy>(word: &[(T, Sign)]) -> Vec<(T, Sign)> {
    let mut stack: Vec<(T, Sign)> = Vec::new();
    for &x in word {
        if x.1 == Sign::Minus && stack.last().is_some_and(|y| y.1 == Sign::Plus) {
            stack.pop();
        } else {
            stack.push(x);
        }
    }
    stack
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Direction {
    E,
    F,
}

/// An element of `⊗_p (B(Λ_{μ_p}) ⊗ T_{−|κ^p|δ})`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TensorElement {
    pub factors: Vec<ColoredPartition>,
    /// One partition per factor recording its δ-shift.
    pub fock_shifts: Vec<Vec<i64>>,
}

/// `Σ_p Λ_{μ_p} − Σ_i content_i α_i − delta_shift·δ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CrystalWeight {
    pub level: usize,
    pub alpha_content: Vec<i64>,
    pub extra_delta_shift: i64,
}

impl CrystalWeight {
    /// α-content with the δ-shift folded in.
    pub fn total_content(&self) -> Vec<i64> {
        self.alpha_content.iter().map(|x| x + self.extra_delta_shift).collect()
    }
}

impl TensorElement {
    pub fn highest(rank: usize, residues: &[usize]) -> Self {
        Self {
            factors: residues.iter().map(|&i| ColoredPartition::empty(rank, i)).collect(),
            fock_shifts: vec![Vec::new(); residues.len()],
        }
    }

    pub fn rank(&self) -> usize {
        self.factors.first().map_or(0, |f| f.rank)
    }

    pub fn weight(&self) -> CrystalWeight {
        let mut content = vec![0; self.rank()];
        for f in &self.factors {
            for (c, x) in content.iter_mut().zip(f.content()) {
                *c += x;
            }
        }
        CrystalWeight {
            level: self.factors.len(),
            alpha_content: content,
            extra_delta_shift: self.fock_shifts.iter().map(|k| k.iter().sum::<i64>()).sum(),
        }
    }

    /// Total α-content including δ-shifts.
    pub fn depth(&self) -> i64 {
        self.weight().total_content().iter().sum()
    }

    fn reduced_signature(&self, i: usize) -> Vec<((usize, usize), Sign)> {
        let word: Vec<((usize, usize), Sign)> = self
            .factors
            .iter()
            .enumerate()
            .flat_map(|(p, f)| f.signature(i).into_iter().map(move |(row, s)| ((p, row), s)))
            .collect();
        reduce(&word)
    }

    pub fn epsilon(&self, i: usize) -> usize {
        self.reduced_signature(i).iter().filter(|x| x.1 == Sign::Minus).count()
    }

    pub fn phi(&self, i: usize) -> usize {
        self.reduced_signature(i).iter().filter(|x| x.1 == Sign::Plus).count()
    }

    pub fn is_highest(&self) -> bool {
        (0..self.rank()).all(|i| self.epsilon(i) == 0)
    }
}

/// `e_i` or `f_i`; `None` when the operator annihilates the element.
pub fn kashiwara(elem: &TensorElement, i: usize, dir: Direction) -> Option<TensorElement> {
    let sig = elem.reduced_signature(i);
    let ((p, row), _) = match dir {
        Direction::F => *sig.iter().find(|x| x.1 == Sign::Plus)?,
        Direction::E => *sig.iter().rev().find(|x| x.1 == Sign::Minus)?,
    };
    let mut out = elem.clone();
    out.factors[p] = match dir {
        Direction::F => elem.factors[p].add_at(row),
        Direction::E => elem.factors[p].remove_at(row),
    };
    Some(out)
}

pub fn epsilon(elem: &TensorElement, i: usize) -> usize {
    elem.epsilon(i)
}

/// Elements of `B(Λ_{i₀})` with at most `depth` boxes, generated from `∅` by the `f_i`.
pub fn crystal_b_lambda(r: usize, i0: usize, depth: i64) -> Result<BTreeSet<ColoredPartition>> {
    if r < 2 || i0 >= r {
        return precondition("need r ≥ 2 and a residue below r");
    }
    let start = TensorElement::highest(r, &[i0]);
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        if !seen.insert(x.factors[0].clone()) {
            continue;
        }
        if x.factors[0].size() == depth {
            continue;
        }
        for i in 0..r {
            if let Some(y) = kashiwara(&x, i, Direction::F) {
                if !seen.contains(&y.factors[0]) {
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(seen)
}

/// The Cartan matrix of affine A_{r−1}.
pub fn affine_cartan(r: usize) -> CartanMatrix {
    cartan_from_graph(&QuiverGraph::affine_a(r - 1))
}

/// A truncated tensor-product crystal.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TensorCrystal {
    pub rank: usize,
    pub residues: Vec<usize>,
    pub depth: i64,
    pub with_fock: bool,
    pub elements: Vec<TensorElement>,
}

impl TensorCrystal {
    /// All elements of total α-content at most `depth`.
    pub fn build(r: usize, residues: &[usize], depth: i64, with_fock: bool) -> Result<Self> {
        if residues.is_empty() {
            return precondition("need at least one tensor factor");
        }
        let mut per_factor = Vec::new();
        for &i in residues {
            let mut elems: Vec<ColoredPartition> = crystal_b_lambda(r, i, depth)?.into_iter().collect();
            elems.sort_by_key(|e| e.size());
            per_factor.push(elems);
        }
        let shifts: Vec<Vec<i64>> = if with_fock {
            (0..=depth / r as i64).flat_map(partitions).collect()
        } else {
            vec![Vec::new()]
        };
        let mut elements = Vec::new();
        let mut factors = Vec::new();
        let mut fock = Vec::new();
        Self::fill(&per_factor, &shifts, r as i64, depth, &mut factors, &mut fock, &mut elements);
        elements.sort();
        Ok(Self { rank: r, residues: residues.to_vec(), depth, with_fock, elements })
    }

    fn fill(
        per_factor: &[Vec<ColoredPartition>],
        shifts: &[Vec<i64>],
        r: i64,
        budget: i64,
        factors: &mut Vec<ColoredPartition>,
        fock: &mut Vec<Vec<i64>>,
        out: &mut Vec<TensorElement>,
    ) {
        let p = factors.len();
        if p == per_factor.len() {
            out.push(TensorElement { factors: factors.clone(), fock_shifts: fock.clone() });
            return;
        }
        for shift in shifts {
            let cost = r * shift.iter().sum::<i64>();
            if cost > budget {
                continue;
            }
            for x in &per_factor[p] {
                if x.size() + cost > budget {
                    break;
                }
                factors.push(x.clone());
                fock.push(shift.clone());
                Self::fill(per_factor, shifts, r, budget - cost - x.size(), factors, fock, out);
                factors.pop();
                fock.pop();
            }
        }
    }

    /// Element counts keyed by total α-content.
    pub fn character(&self) -> BTreeMap<Vec<i64>, u64> {
        let mut out = BTreeMap::new();
        for x in &self.elements {
            *out.entry(x.weight().total_content()).or_insert(0) += 1;
        }
        out
    }

    /// Counts of elements with `ε_i = 0` for every `i`, keyed by total α-content.
    pub fn highest_weight_counts(&self) -> BTreeMap<Vec<i64>, u64> {
        let all: Vec<usize> = (0..self.rank).collect();
        let mut out = BTreeMap::new();
        for (_, w) in levi_highest(self, &all) {
            *out.entry(w.total_content()).or_insert(0) += 1;
        }
        out
    }
}

/// Elements with `ε_i = 0` for all `i` in the subset, with their weights.
pub fn levi_highest(crystal: &TensorCrystal, i0: &[usize]) -> Vec<(TensorElement, CrystalWeight)> {
    crystal
        .elements
        .iter()
        .filter(|x| i0.iter().all(|&i| x.epsilon(i) == 0))
        .map(|x| (x.clone(), x.weight()))
        .collect()
}

/// Coefficients of `Π_{n≥1} (1 − qⁿ)` up to `q^n`.
pub fn euler_coefficients(n: usize) -> Vec<i64> {
    let mut c = vec![0i64; n + 1];
    c[0] = 1;
    for k in 1..=n {
        for j in (k..=n).rev() {
            c[j] -= c[j - k];
        }
    }
    c
}

/// Highest-weight counts of the Fock tensor crystal with one δ-shift factor
/// divided out, keyed by α-content.
pub fn mv_counts(r: usize, residues: &[usize], depth: i64) -> Result<BTreeMap<Vec<i64>, u64>> {
    let hw = TensorCrystal::build(r, residues, depth, true)?.highest_weight_counts();
    let euler = euler_coefficients((depth / r as i64) as usize);
    let mut out = BTreeMap::new();
    for v in hw.keys() {
        let mut total = 0i64;
        for (k, e) in euler.iter().enumerate() {
            let lower: Vec<i64> = v.iter().map(|x| x - k as i64).collect();
            if lower.iter().any(|&x| x < 0) {
                break;
            }
            total += e * hw.get(&lower).copied().unwrap_or(0) as i64;
        }
        if total < 0 {
            return Err(crate::Error::Internal(format!("negative highest-weight count at {v:?}")));
        }
        if total > 0 {
            out.insert(v.clone(), total as u64);
        }
    }
    Ok(out)
}

/// Number of highest-weight elements at content `v`, one δ-shift factor divided out.
pub fn mv_count(r: usize, residues: &[usize], v: &[i64], depth: i64) -> Result<u64> {
    let total: i64 = v.iter().sum();
    if total > depth {
        return precondition("depth must cover the content");
    }
    if v.iter().any(|&x| x < 0) {
        return Ok(0);
    }
    Ok(mv_counts(r, residues, total)?.get(v).copied().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::km::DimVector;
    use crate::mult::freudenthal;

    fn cp(parts: &[i64], i0: usize, r: usize) -> ColoredPartition {
        ColoredPartition { parts: parts.to_vec(), residue_shift: i0, rank: r }
    }

    fn single(p: ColoredPartition) -> TensorElement {
        TensorElement { factors: vec![p], fock_shifts: vec![vec![]] }
    }

    #[test]
    fn level_one_character_matches_freudenthal() {
        for r in [2usize, 3, 4] {
            let c = affine_cartan(r);
            for i0 in 0..r {
                let depth = 8;
                let elems = crystal_b_lambda(r, i0, depth).unwrap();
                assert!(elems.iter().all(|e| e.is_regular()));
                let mut counts: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
                for e in &elems {
                    *counts.entry(e.content()).or_insert(0) += 1;
                }
                let table = freudenthal(&DimVector::unit(r, i0), &c, depth).unwrap();
                for v in DimVector::all_with_total_at_most(r, depth) {
                    let want = table.get_u64(&v).unwrap();
                    assert_eq!(counts.get(&v.to_vec()).copied().unwrap_or(0), want, "r={r} i0={i0} v={v:?}");
                }
            }
        }
    }

    #[test]
    fn examples() {
        let b = crystal_b_lambda(2, 0, 0).unwrap();
        assert_eq!(b.len(), 1);
        let b = crystal_b_lambda(2, 0, 4).unwrap();
        let at = |v: &[i64]| b.iter().filter(|e| e.content() == v).map(|e| e.parts.clone()).collect::<Vec<_>>();
        assert_eq!(at(&[1, 1]), vec![vec![2]]);
        let mut two = at(&[2, 2]);
        two.sort();
        assert_eq!(two, vec![vec![3, 1], vec![4]]);
        let empty = single(ColoredPartition::empty(2, 0));
        assert_eq!(kashiwara(&empty, 0, Direction::F).unwrap().factors[0].parts, vec![1]);
        assert!((0..2).all(|i| kashiwara(&empty, i, Direction::E).is_none()));
        let one = single(cp(&[1], 0, 2));
        assert_eq!((one.epsilon(0), one.epsilon(1)), (1, 0));
    }

    #[test]
    fn crystal_axioms_on_tensor_products() {
        let cr = TensorCrystal::build(3, &[0, 2], 6, false).unwrap();
        let c = affine_cartan(3);
        for x in &cr.elements {
            let wt = x.weight();
            for i in 0..3 {
                // ⟨h_i, wt⟩ = φ_i − ε_i
                let pairing = (0..2).map(|p| i64::from(cr.residues[p] == i)).sum::<i64>() - c.apply(&wt.alpha_content)[i];
                assert_eq!(x.phi(i) as i64 - x.epsilon(i) as i64, pairing);
                if let Some(y) = kashiwara(x, i, Direction::F) {
                    assert_eq!(kashiwara(&y, i, Direction::E).as_ref(), Some(x));
                    assert_eq!(y.epsilon(i), x.epsilon(i) + 1);
                    let mut expect = wt.alpha_content.clone();
                    expect[i] += 1;
                    assert_eq!(y.weight().alpha_content, expect);
                }
                if let Some(y) = kashiwara(x, i, Direction::E) {
                    assert_eq!(kashiwara(&y, i, Direction::F).as_ref(), Some(x));
                }
            }
        }
    }

    #[test]
    fn tensor_character_is_multiplicative() {
        let (r, depth) = (2usize, 8i64);
        let cr = TensorCrystal::build(r, &[0, 1], depth, true).unwrap().character();
        let f0 = TensorCrystal::build(r, &[0], depth, false).unwrap().character();
        let f1 = TensorCrystal::build(r, &[1], depth, false).unwrap().character();
        // partitions into 2 colors: coefficient of q^k in P(q)²
        let pp = |k: i64| (0..=k).map(|j| partitions(j).len() * partitions(k - j).len()).sum::<usize>() as u64;
        for v in DimVector::all_with_total_at_most(r, depth) {
            let mut want = 0;
            for (a, x) in &f0 {
                for (b, y) in &f1 {
                    let rest: Vec<i64> = (0..r).map(|i| v[i] - a[i] - b[i]).collect();
                    if rest.iter().all(|&t| t >= 0 && t == rest[0]) {
                        want += x * y * pp(rest[0]);
                    }
                }
            }
            assert_eq!(cr.get(&v.to_vec()).copied().unwrap_or(0), want, "v={v:?}");
        }
    }

    #[test]
    fn levi_branching_reproduces_the_character() {
        let depth = 4;
        let cr = TensorCrystal::build(2, &[0], depth, false).unwrap();
        assert_eq!(levi_highest(&cr, &[]).len(), cr.elements.len());
        let hw = levi_highest(&cr, &[1]);
        assert!(hw.iter().any(|(x, _)| x.factors[0].parts.is_empty()));
        let c = affine_cartan(2);
        let mut rebuilt: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
        for (_, w) in &hw {
            let h1 = i64::from(cr.residues[0] == 1) - c.apply(&w.alpha_content)[1];
            for k in 0..=h1 {
                let mut v = w.alpha_content.clone();
                v[1] += k;
                if v.iter().sum::<i64>() <= depth {
                    *rebuilt.entry(v).or_insert(0) += 1;
                }
            }
        }
        assert_eq!(rebuilt, cr.character());
    }

    #[test]
    fn mv_examples() {
        assert_eq!(mv_count(2, &[0, 1], &[0, 0], 0).unwrap(), 1);
        assert_eq!(mv_count(2, &[0], &[1, 0], 1).unwrap(), 0);
        // single factor: only the vacuum survives the Fock division
        let single = mv_counts(3, &[1], 9).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(euler_coefficients(7), vec![1, -1, -1, 0, 0, 1, 0, 1]);
    }
}
