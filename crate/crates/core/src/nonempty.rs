//! The Crawley–Boevey criterion for nonemptiness of stable loci, and its
//! closed forms on affine graphs.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::km::{dot, p_value, CartanMatrix, DimVector};
use crate::mult::{freudenthal, highest_root, in_weyl_orbit, positive_roots, WeightMultTable};
use crate::stability::StabilityParam;

/// Why a verdict came out the way it did.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum CBWitness {
    /// Every decomposition satisfies the strict inequality.
    AllDecompositionsPass,
    /// `w = 0` and `v` is not a positive root.
    NotARoot,
    /// `w ≠ 0` and `w − v` is not a weight of `V(w)`.
    NotAWeight,
    /// The first decomposition (in enumeration order) breaking the inequality.
    Violation { v0: DimVector, betas: Vec<DimVector> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CBVerdict {
    pub nonempty: bool,
    pub witness: CBWitness,
    pub decompositions_checked: u64,
}

/// Twice `ᵗx(w − ½Cx)`.
fn twice_framed_energy(x: &[i64], w: &[i64], c: &CartanMatrix) -> i64 {
    2 * dot(x, w) - c.form(x, x)
}

/// Calls `visit` on every multiset of pool entries (nondecreasing indices)
/// summing to `target`; `visit` returns false to stop.
fn for_each_decomposition(
    pool: &[Vec<i64>],
    target: &[i64],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    fn go(
        pool: &[Vec<i64>],
        rest: &mut Vec<i64>,
        start: usize,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if rest.iter().all(|&x| x == 0) {
            return visit(chosen);
        }
        for k in start..pool.len() {
            if !pool[k].iter().zip(rest.iter()).all(|(b, r)| b <= r) {
                continue;
            }
            for (r, b) in rest.iter_mut().zip(&pool[k]) {
                *r -= b;
            }
            chosen.push(k);
            let go_on = go(pool, rest, k, chosen, visit);
            chosen.pop();
            for (r, b) in rest.iter_mut().zip(&pool[k]) {
                *r += b;
            }
            if !go_on {
                return false;
            }
        }
        true
    }
    go(pool, &mut target.to_vec(), 0, &mut Vec::new(), visit)
}

/// Decide `M^s_ζ(v, w) ≠ ∅` by exhaustive decomposition search.
///
/// The weight table (when `w ≠ 0`) and root pool are computed at depth `Σv`,
/// which always suffices.
pub fn cb_stable_nonempty(c: &CartanMatrix, v: &DimVector, w: &DimVector, zeta: &StabilityParam) -> Result<CBVerdict> {
    let n = c.len();
    if v.len() != n || w.len() != n || zeta.zeta.len() != n {
        return precondition("vector lengths differ from the rank");
    }
    let depth = v.total();
    let roots = positive_roots(c, depth.max(1))?;
    let pool: Vec<Vec<i64>> = roots
        .below(v)
        .filter(|(b, _)| zeta.dot(b).is_zero())
        .map(|(b, _)| b.to_vec())
        .collect();
    let mut checked = 0u64;
    let mut violation = None;

    if w.is_zero() {
        if !zeta.dot(v).is_zero() {
            return precondition("unframed criterion needs ζ·v = 0");
        }
        if v.is_zero() || roots.mult(v)?.is_zero() {
            return Ok(CBVerdict { nonempty: false, witness: CBWitness::NotARoot, decompositions_checked: 0 });
        }
        let pv = p_value(v, c);
        for_each_decomposition(&pool, v, &mut |chosen| {
            if chosen.len() < 2 {
                return true;
            }
            checked += 1;
            let total: i64 = chosen.iter().map(|&k| p_value(&pool[k], c)).sum();
            if pv <= total {
                violation = Some((DimVector::zeros(n), chosen.to_vec()));
                return false;
            }
            true
        });
    } else {
        let table = freudenthal(w, c, depth)?;
        if !table.is_weight(v)? {
            return Ok(CBVerdict { nonempty: false, witness: CBWitness::NotAWeight, decompositions_checked: 0 });
        }
        let lhs = twice_framed_energy(v, w, c);
        for v0 in v.box_below() {
            if v0 == *v || !table.is_weight(&v0)? {
                continue;
            }
            let base = twice_framed_energy(&v0, w, c);
            let rest: Vec<i64> = v.iter().zip(v0.iter()).map(|(a, b)| a - b).collect();
            let stopped = !for_each_decomposition(&pool, &rest, &mut |chosen| {
                checked += 1;
                let total: i64 = base + chosen.iter().map(|&k| 2 * p_value(&pool[k], c)).sum::<i64>();
                if lhs <= total {
                    violation = Some((v0.clone(), chosen.to_vec()));
                    return false;
                }
                true
            });
            if stopped {
                break;
            }
        }
    }
    let witness = match violation {
        Some((v0, chosen)) => CBWitness::Violation {
            v0,
            betas: chosen.iter().map(|&k| DimVector::new(pool[k].clone()).expect("root")).collect(),
        },
        None => CBWitness::AllDecompositionsPass,
    };
    Ok(CBVerdict {
        nonempty: matches!(witness, CBWitness::AllDecompositionsPass),
        witness,
        decompositions_checked: checked,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum AleCase {
    /// The imaginary root δ.
    Delta,
    /// A coordinate vector at a vertex of I₀⁰.
    Coordinate,
    /// `δ − α_h` for a component of I₀⁰.
    DeltaMinusHighest,
}

fn check_affine(c: &CartanMatrix) -> Result<DimVector> {
    if !c.is_affine_type() {
        return precondition("affine ADE graph required");
    }
    c.delta()
}

fn check_subset(c: &CartanMatrix, i00: &[usize]) -> Result<()> {
    if i00.iter().any(|&i| i == 0 || i >= c.len()) {
        return precondition("I₀⁰ must lie in I ∖ {0}");
    }
    Ok(())
}

/// `δ − α_h^c` for every connected component `c` of `i00`, in component order.
pub fn delta_minus_highest(c: &CartanMatrix, i00: &[usize]) -> Result<Vec<(Vec<usize>, DimVector)>> {
    let delta = check_affine(c)?;
    check_subset(c, i00)?;
    let mut out = Vec::new();
    for comp in c.components(i00) {
        let top = highest_root(&c.restrict(&comp))?;
        let mut v = delta.to_vec();
        for (k, &i) in comp.iter().enumerate() {
            v[i] -= top[k];
        }
        out.push((comp, DimVector::new(v)?));
    }
    Ok(out)
}

/// Dimension vectors of ζ•-stable modules with `w = 0` on an affine graph.
pub fn ale_stable_dimvectors(c: &CartanMatrix, i00: &[usize]) -> Result<Vec<(DimVector, AleCase)>> {
    let delta = check_affine(c)?;
    check_subset(c, i00)?;
    let mut out = vec![(delta, AleCase::Delta)];
    let mut sorted = i00.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    out.extend(sorted.iter().map(|&i| (DimVector::unit(c.len(), i), AleCase::Coordinate)));
    out.extend(delta_minus_highest(c, &sorted)?.into_iter().map(|(_, v)| (v, AleCase::DeltaMinusHighest)));
    Ok(out)
}

fn weight_table(c: &CartanMatrix, w: &DimVector, v: &DimVector) -> Result<WeightMultTable> {
    freudenthal(w, c, v.total())
}

/// Closed-form nonemptiness of `M^s_{ζ•}(v, w)` at an ALE face.
pub fn affine_stratum_nonempty(c: &CartanMatrix, v: &DimVector, w: &DimVector, i00: &[usize]) -> Result<bool> {
    let delta = check_affine(c)?;
    check_subset(c, i00)?;
    if w.is_zero() {
        return precondition("framing must be nonzero");
    }
    let level = dot(&delta, w);
    let mut r = w.to_vec();
    for (x, y) in r.iter_mut().zip(c.apply(v)) {
        *x -= y;
    }
    if i00.iter().any(|&i| r[i] < 0) {
        return Ok(false);
    }
    for (_, b) in delta_minus_highest(c, i00)? {
        if dot(&b, &r) < 0 {
            return Ok(false);
        }
    }
    if level == 1 {
        in_weyl_orbit(w, v, c)
    } else {
        weight_table(c, w, v)?.is_weight(v)
    }
}

/// Closed-form nonemptiness of `M^s_{ζ•}(v, w)` at the Levi face with zero set `i0`
/// on an affine graph.
pub fn affine_levi_nonempty(c: &CartanMatrix, v: &DimVector, w: &DimVector, i0: &[usize]) -> Result<bool> {
    let delta = check_affine(c)?;
    if w.is_zero() {
        return precondition("framing must be nonzero");
    }
    if i0.iter().any(|&i| i >= c.len()) {
        return precondition("vertex subset out of range");
    }
    let everything = (0..c.len()).all(|i| i0.contains(&i));
    if everything && dot(&delta, w) == 1 {
        return Ok(v.is_zero());
    }
    Ok(is_dominant_on(c, v, w, i0) && weight_table(c, w, v)?.is_weight(v)?)
}

/// `⟨h_i, w − v⟩ ≥ 0` for every `i` in the subset.
pub fn is_dominant_on(c: &CartanMatrix, v: &[i64], w: &[i64], subset: &[usize]) -> bool {
    let cv = c.apply(v);
    subset.iter().all(|&i| w[i] - cv[i] >= 0)
}
