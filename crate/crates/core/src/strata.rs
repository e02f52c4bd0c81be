//! Strata of quiver varieties at Levi and ALE faces, and the normal-slice data
//! (Ĉ, v̂, ŵ) of each stratum.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{internal, precondition, Result};
use crate::km::{dot, CartanMatrix, DimVector};
use crate::nonempty::{affine_levi_nonempty, affine_stratum_nonempty, cb_stable_nonempty, delta_minus_highest};
use crate::stability::levi_face;

/// A stratum at a Levi face: `v⁰` plus the part of `v` living on the Levi subgraph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LeviStratum {
    pub v0: DimVector,
    /// `v − v⁰`, supported on I⁰; its own stratification is left unevaluated.
    pub residual: DimVector,
}

/// Strata of `M_{ζ•}(v, w)` at the Levi face vanishing on `i0`.
pub fn enumerate_strata_levi(c: &CartanMatrix, v: &DimVector, w: &DimVector, i0: &[usize]) -> Result<Vec<LeviStratum>> {
    if c.has_loops() {
        return precondition("Levi strata need a loop-free graph");
    }
    if v.len() != c.len() || w.len() != c.len() {
        return precondition("vector lengths differ from the rank");
    }
    let face = levi_face(c.len(), i0)?;
    let zeta = face.param();
    let affine = c.is_affine_type() && !w.is_zero();
    let mut out = Vec::new();
    for v0 in v.box_below() {
        let residual = DimVector::new(v.iter().zip(v0.iter()).map(|(a, b)| a - b).collect())?;
        if residual.iter().enumerate().any(|(i, &x)| x != 0 && !face.zero_part.contains(&i)) {
            continue;
        }
        let ok = if affine {
            affine_levi_nonempty(c, &v0, w, &face.zero_part)?
        } else if w.is_zero() && v0.is_zero() {
            true
        } else if w.is_zero() && !zeta.dot(&v0).is_zero() {
            false
        } else {
            cb_stable_nonempty(c, &v0, w, &zeta)?.nonempty
        };
        if ok {
            out.push(LeviStratum { v0, residual });
        }
    }
    out.sort();
    Ok(out)
}

/// Index of a stratum at an ALE face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StratumIndex {
    pub v0: DimVector,
    /// Multiplicities of distinct points of the surface, largest first.
    pub lambda: Vec<i64>,
    /// Copies of the vertex simple `S_i` for each `i ∈ I₀⁰`.
    pub m_vals: BTreeMap<usize, i64>,
    /// Copies of the module of dimension `δ − α_h^c`, one entry per component `c`.
    pub n_vals: Vec<(Vec<usize>, i64)>,
}

impl StratumIndex {
    /// `v⁰ + |λ|δ + Σ m_i e_i + Σ n_c (δ − α_h^c)`.
    pub fn total(&self, c: &CartanMatrix) -> Result<DimVector> {
        let delta = c.delta()?;
        let size: i64 = self.lambda.iter().sum();
        let mut v = self.v0.add(&delta.scale(size));
        for (&i, &m) in &self.m_vals {
            v = v.add(&DimVector::unit(c.len(), i).scale(m));
        }
        let comps: Vec<usize> = self.n_vals.iter().flat_map(|(k, _)| k.iter().copied()).collect();
        for ((_, b), (_, n)) in delta_minus_highest(c, &comps)?.iter().zip(&self.n_vals) {
            v = v.add(&b.scale(*n));
        }
        Ok(v)
    }

    /// Summands of a point of this stratum as (dimension vector, multiplicity).
    pub fn pieces(&self, c: &CartanMatrix) -> Result<Vec<(DimVector, i64)>> {
        let delta = c.delta()?;
        let mut out: Vec<(DimVector, i64)> = self.lambda.iter().map(|&k| (delta.clone(), k)).collect();
        let comps: Vec<usize> = self.n_vals.iter().flat_map(|(k, _)| k.iter().copied()).collect();
        for ((_, b), (_, n)) in delta_minus_highest(c, &comps)?.into_iter().zip(&self.n_vals) {
            out.push((b, *n));
        }
        for (&i, &m) in &self.m_vals {
            out.push((DimVector::unit(c.len(), i), m));
        }
        Ok(out)
    }
}

/// Partitions of `n` in reverse-lexicographic order.
pub fn partitions(n: i64) -> Vec<Vec<i64>> {
    fn go(n: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Strata of `M_{ζ•}(v, w)` at the ALE face vanishing on `i00`.
pub fn enumerate_strata_ale(c: &CartanMatrix, v: &DimVector, w: &DimVector, i00: &[usize]) -> Result<Vec<StratumIndex>> {
    let delta = c.delta()?;
    if w.is_zero() {
        return precondition("framing must be nonzero");
    }
    let mut i00 = i00.to_vec();
    i00.sort_unstable();
    i00.dedup();
    let slots = delta_minus_highest(c, &i00)?;
    // every direction subtracted from v: δ, then each B_c, then each S_i
    let mut dirs: Vec<DimVector> = vec![delta];
    dirs.extend(slots.iter().map(|(_, b)| b.clone()));
    dirs.extend(i00.iter().map(|&i| DimVector::unit(c.len(), i)));

    let mut out = Vec::new();
    let mut coeffs = vec![0i64; dirs.len()];
    fn walk(
        k: usize,
        rest: DimVector,
        dirs: &[DimVector],
        coeffs: &mut Vec<i64>,
        emit: &mut dyn FnMut(&[i64], &DimVector) -> Result<()>,
    ) -> Result<()> {
        if k == dirs.len() {
            return emit(coeffs, &rest);
        }
        let mut cur = rest;
        let mut t = 0;
        loop {
            coeffs[k] = t;
            walk(k + 1, cur.clone(), dirs, coeffs, emit)?;
            match cur.checked_sub(&dirs[k]) {
                Some(next) => cur = next,
                None => break,
            }
            t += 1;
        }
        coeffs[k] = 0;
        Ok(())
    }
    walk(0, v.clone(), &dirs, &mut coeffs, &mut |cf, v0| {
        if !affine_stratum_nonempty(c, v0, w, &i00)? {
            return Ok(());
        }
        let n_vals: Vec<(Vec<usize>, i64)> = slots.iter().zip(&cf[1..]).map(|((comp, _), &n)| (comp.clone(), n)).collect();
        let m_vals: BTreeMap<usize, i64> = i00.iter().zip(&cf[1 + slots.len()..]).map(|(&i, &m)| (i, m)).collect();
        for lambda in partitions(cf[0]) {
            out.push(StratumIndex { v0: v0.clone(), lambda, m_vals: m_vals.clone(), n_vals: n_vals.clone() });
        }
        Ok(())
    })?;
    Ok(out)
}

/// Normal-slice data of a stratum: a Cartan matrix on the summands with
/// multiplicities `v̂` and framing `ŵ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LocalModel {
    pub hat_cartan: CartanMatrix,
    pub hat_v: Vec<i64>,
    pub hat_w: Vec<i64>,
}

/// Build the local model for `v = v⁰ + Σ v̂_k v^k` with framed summand `v⁰`.
pub fn local_model(c: &CartanMatrix, v0: &DimVector, pieces: &[(DimVector, i64)], w: &DimVector) -> Result<LocalModel> {
    let n = c.len();
    if v0.len() != n || w.len() != n || pieces.iter().any(|(p, m)| p.len() != n || *m < 0) {
        return precondition("summand data does not match the rank");
    }
    let cv0 = c.apply(v0);
    let w_minus: Vec<i64> = w.iter().zip(&cv0).map(|(a, b)| a - b).collect();
    let entries: Vec<Vec<i64>> =
        pieces.iter().map(|(x, _)| pieces.iter().map(|(y, _)| c.form(x, y)).collect()).collect();
    let hat_cartan = match CartanMatrix::new(entries) {
        Ok(m) => m,
        Err(e) => return internal(format!("summand pairing is not a Cartan matrix: {e}")),
    };
    let hat_v: Vec<i64> = pieces.iter().map(|(_, m)| *m).collect();
    let hat_w: Vec<i64> = pieces.iter().map(|(x, _)| dot(x, &w_minus)).collect();
    let model = LocalModel { hat_cartan, hat_v, hat_w };
    let mut v = v0.clone();
    for (x, m) in pieces {
        v = v.add(&x.scale(*m));
    }
    if let Some(k) = weight_identity_failure(&model, c, &pieces.iter().map(|(x, _)| x.clone()).collect::<Vec<_>>(), &v, w) {
        return internal(format!("local-model weight identity fails at summand {k}"));
    }
    Ok(model)
}

/// First `k` where `ŵ_k − Σ_l ĉ_kl v̂_l ≠ ᵗv^k(w − Cv)`.
pub fn weight_identity_failure(
    model: &LocalModel,
    c: &CartanMatrix,
    pieces: &[DimVector],
    v: &[i64],
    w: &[i64],
) -> Option<usize> {
    let cv = c.apply(v);
    let rhs: Vec<i64> = w.iter().zip(&cv).map(|(a, b)| a - b).collect();
    let chv = model.hat_cartan.apply(&model.hat_v);
    (0..pieces.len()).find(|&k| model.hat_w[k] - chv[k] != dot(&pieces[k], &rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum BlockKind {
    Finite,
    Affine,
    Jordan,
}

/// Type of each connected block of a Cartan matrix; `None` for a block of none of the three kinds.
pub fn classify_blocks(c: &CartanMatrix) -> Vec<(Vec<usize>, Option<BlockKind>)> {
    let all: Vec<usize> = (0..c.len()).collect();
    c.components(&all)
        .into_iter()
        .map(|comp| {
            let block = c.restrict(&comp);
            let kind = if block.len() == 1 && block.get(0, 0) == 0 {
                Some(BlockKind::Jordan)
            } else if block.is_finite_type() {
                Some(BlockKind::Finite)
            } else if block.is_affine_type() {
                Some(BlockKind::Affine)
            } else {
                None
            };
            (comp, kind)
        })
        .collect()
}

/// `(dim M − dim stratum) / 2`, the semismall bound on fiber dimensions.
pub fn fiber_dim_bound(ambient_dim: i64, stratum_dim: i64) -> Result<i64> {
    if ambient_dim < stratum_dim {
        return precondition("stratum dimension exceeds the ambient dimension");
    }
    if (ambient_dim - stratum_dim) % 2 != 0 {
        return precondition("dimensions have different parity");
    }
    Ok((ambient_dim - stratum_dim) / 2)
}
