//! Root multiplicities (Peterson recurrence), weight multiplicities (Freudenthal
//! recurrence) and Weyl-group conjugation to the dominant chamber.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{internal, precondition, Error, Result};
use crate::km::{cartan_from_graph, extend_quiver, AffineWeight, CartanMatrix, DimVector, QuiverGraph};

/// Positive roots with multiplicities, up to a height bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub cartan: CartanMatrix,
    pub height_bound: i64,
    pub roots: BTreeMap<DimVector, BigInt>,
}

impl RootDatum {
    pub fn mult(&self, beta: &[i64]) -> Result<BigInt> {
        let h: i64 = beta.iter().sum();
        if h > self.height_bound {
            return Err(Error::Inconclusive {
                depth: self.height_bound as usize,
                what: format!("root multiplicity of {beta:?}"),
            });
        }
        Ok(DimVector::new(beta.to_vec())
            .ok()
            .and_then(|b| self.roots.get(&b).cloned())
            .unwrap_or_default())
    }

    /// Roots `β ≤ v`, each with its multiplicity.
    pub fn below(&self, v: &[i64]) -> impl Iterator<Item = (&DimVector, &BigInt)> + '_ {
        let v = v.to_vec();
        self.roots.iter().filter(move |(b, _)| b.fits_in(&v))
    }
}

/// Peterson's recurrence over a downward-closed set of lattice vectors.
///
/// `(β|β) − 2 ht β` times `c_β` equals `Σ (β'|β'') c_β' c_β''` over ordered splits,
/// where `c_β = Σ_k mult(β/k)/k`.
fn peterson(c: &CartanMatrix, region: &[Vec<i64>]) -> Result<BTreeMap<DimVector, BigInt>> {
    if c.has_loops() {
        return Err(Error::Unsupported("root multiplicities need a loop-free graph".into()));
    }
    let mut order: Vec<&Vec<i64>> = region.iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
    order.sort_by_key(|v| (v.iter().sum::<i64>(), (*v).clone()));

    let mut cval: HashMap<Vec<i64>, BigRational> = HashMap::new();
    let mut support: Vec<Vec<i64>> = Vec::new();
    let mut mults: BTreeMap<DimVector, BigInt> = BTreeMap::new();

    for beta in order {
        let height: i64 = beta.iter().sum();
        // Contribution of proper divisors: Σ_{k ≥ 2} mult(β/k)/k.
        let g = beta.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
        let mut from_divisors = BigRational::zero();
        for k in 2..=g {
            if g % k == 0 {
                let sub: Vec<i64> = beta.iter().map(|x| x / k).collect();
                if let Some(mk) = mults.get(&DimVector::new(sub).expect("nonnegative")) {
                    from_divisors += BigRational::new(mk.clone(), BigInt::from(k));
                }
            }
        }
        let value = if height == 1 {
            BigRational::one()
        } else {
            let mut rhs = BigRational::zero();
            for b1 in &support {
                if !b1.iter().zip(beta).all(|(a, b)| a <= b) {
                    continue;
                }
                let b2: Vec<i64> = beta.iter().zip(b1).map(|(a, b)| a - b).collect();
                let Some(c2) = cval.get(&b2) else { continue };
                let form = c.form(b1, &b2);
                if form != 0 {
                    rhs += &cval[b1] * c2 * BigInt::from(form);
                }
            }
            let coeff = c.form(beta, beta) - 2 * height;
            if coeff == 0 {
                // (β|β) = 2 ht β ≥ 4 rules out β being a root, so c_β comes from divisors only.
                if !rhs.is_zero() {
                    return internal(format!("Peterson recurrence inconsistent at {beta:?}"));
                }
                from_divisors.clone()
            } else {
                rhs / BigInt::from(coeff)
            }
        };
        let m = &value - &from_divisors;
        if !m.is_integer() || m.is_negative() {
            return internal(format!("non-integral root multiplicity {m} at {beta:?}"));
        }
        if !value.is_zero() {
            cval.insert(beta.clone(), value);
            support.push(beta.clone());
        }
        let m = m.to_integer();
        if !m.is_zero() {
            mults.insert(DimVector::new(beta.clone()).expect("nonnegative"), m);
        }
    }
    Ok(mults)
}

/// All positive roots of height at most `bound`.
pub fn positive_roots(c: &CartanMatrix, bound: i64) -> Result<RootDatum> {
    let region: Vec<Vec<i64>> =
        DimVector::all_with_total_at_most(c.len(), bound).into_iter().map(|v| v.to_vec()).collect();
    Ok(RootDatum { cartan: c.clone(), height_bound: bound, roots: peterson(c, &region)? })
}

/// The complete set of positive roots of a finite-type Cartan matrix.
pub fn finite_positive_roots(c: &CartanMatrix) -> Result<RootDatum> {
    if !c.is_finite_type() {
        return precondition("finite type required");
    }
    let mut bound = c.len() as i64 + 1;
    loop {
        let rd = positive_roots(c, bound)?;
        let top = rd.roots.keys().map(|b| b.total()).max().unwrap_or(0);
        if top < bound {
            return Ok(rd);
        }
        bound *= 2;
    }
}

/// The unique root of maximal height of a connected finite-type Cartan matrix.
pub fn highest_root(c: &CartanMatrix) -> Result<DimVector> {
    let rd = finite_positive_roots(c)?;
    let top = rd.roots.keys().map(|b| b.total()).max().unwrap_or(0);
    let tops: Vec<&DimVector> = rd.roots.keys().filter(|b| b.total() == top).collect();
    match tops.as_slice() {
        [one] => Ok((*one).clone()),
        _ => precondition("highest root needs a connected finite-type diagram"),
    }
}

/// Weight multiplicities `dim V(w)_{w−v}` for `Σv ≤ depth`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMultTable {
    pub cartan: CartanMatrix,
    pub highest: DimVector,
    pub depth: i64,
    pub mults: BTreeMap<DimVector, BigInt>,
}

impl WeightMultTable {
    /// Multiplicity at content `v`; contents beyond the depth are unknown.
    pub fn get(&self, v: &[i64]) -> Result<BigInt> {
        if v.iter().any(|x| x.is_negative()) {
            return Ok(BigInt::zero());
        }
        if v.iter().sum::<i64>() > self.depth {
            return Err(Error::Inconclusive { depth: self.depth as usize, what: format!("weight content {v:?}") });
        }
        Ok(self.mults.get(&DimVector::new(v.to_vec())?).cloned().unwrap_or_default())
    }

    pub fn get_u64(&self, v: &[i64]) -> Result<u64> {
        self.get(v)?.to_u64().ok_or_else(|| Error::Internal("multiplicity exceeds u64".into()))
    }

    pub fn is_weight(&self, v: &[i64]) -> Result<bool> {
        Ok(self.get(v)?.is_positive())
    }

    /// Nonzero entries in height order.
    pub fn support(&self) -> impl Iterator<Item = (&DimVector, &BigInt)> {
        self.mults.iter()
    }
}

/// Freudenthal's recurrence in content coordinates, with the simply-laced form `C`:
/// `(2Σv_i(w_i+1) − ᵗvCv)·m(v) = 2 Σ_β mult β Σ_k (w·β − ᵗvCβ + k ᵗβCβ)·m(v − kβ)`.
pub fn freudenthal(w: &DimVector, c: &CartanMatrix, depth: i64) -> Result<WeightMultTable> {
    if w.len() != c.len() {
        return precondition("highest weight length differs from the rank");
    }
    let roots = positive_roots(c, depth)?;
    let root_list: Vec<(Vec<i64>, BigInt, i64, i64)> = roots
        .roots
        .iter()
        .map(|(b, m)| (b.to_vec(), m.clone(), crate::km::dot(w, b), c.form(b, b)))
        .collect();
    let mut table: HashMap<Vec<i64>, BigInt> = HashMap::new();
    let mut mults = BTreeMap::new();
    for v in DimVector::all_with_total_at_most(c.len(), depth) {
        let vv = v.to_vec();
        let m = if v.is_zero() {
            BigInt::one()
        } else {
            let denom: i64 = vv.iter().zip(w.iter()).map(|(x, wi)| 2 * x * (wi + 1)).sum::<i64>() - c.form(&vv, &vv);
            let cv = c.apply(&vv);
            let mut sum = BigInt::zero();
            for (beta, mb, wb, bb) in &root_list {
                if !beta.iter().zip(&vv).all(|(a, b)| a <= b) {
                    continue;
                }
                let vcb: i64 = cv.iter().zip(beta).map(|(a, b)| a * b).sum();
                let mut k = 1;
                loop {
                    let lower: Vec<i64> = vv.iter().zip(beta).map(|(x, b)| x - k * b).collect();
                    if lower.iter().any(|x| x.is_negative()) {
                        break;
                    }
                    if let Some(ml) = table.get(&lower) {
                        let coeff = wb - vcb + k * bb;
                        if coeff != 0 {
                            sum += mb * ml * BigInt::from(coeff);
                        }
                    }
                    k += 1;
                }
            }
            sum *= 2;
            if denom == 0 {
                if !sum.is_zero() {
                    return internal(format!("Freudenthal recurrence degenerate at {vv:?}"));
                }
                BigInt::zero()
            } else {
                let d = BigInt::from(denom);
                if !(&sum % &d).is_zero() {
                    return internal(format!("non-integral weight multiplicity at {vv:?}"));
                }
                let q = sum / d;
                if q.is_negative() {
                    return internal(format!("negative weight multiplicity at {vv:?}"));
                }
                q
            }
        };
        if !m.is_zero() {
            table.insert(vv, m.clone());
            mults.insert(v, m);
        }
    }
    Ok(WeightMultTable { cartan: c.clone(), highest: w.clone(), depth, mults })
}

/// Multiplicity of the root `Σv_iα_i + α_∞` of the extended graph.
pub fn root_mult_extended(graph: &QuiverGraph, v: &DimVector, w: &DimVector) -> Result<BigInt> {
    ExtendedRoots::new(graph, w, v.total())?.mult(v)
}

/// Root multiplicities of the extended graph with `∞`-coefficient at most 1.
#[derive(Debug, Clone)]
pub struct ExtendedRoots {
    depth: i64,
    mults: BTreeMap<DimVector, BigInt>,
}

impl ExtendedRoots {
    pub fn new(graph: &QuiverGraph, w: &DimVector, depth: i64) -> Result<Self> {
        if graph.has_loops() {
            return Err(Error::Unsupported("extended root multiplicities need a loop-free graph".into()));
        }
        let ext = extend_quiver(graph, w)?;
        let c = cartan_from_graph(&ext.graph);
        let mut region = Vec::new();
        for v in DimVector::all_with_total_at_most(graph.len(), depth) {
            for e in 0..=1 {
                let mut x = v.to_vec();
                x.push(e);
                region.push(x);
            }
        }
        Ok(Self { depth, mults: peterson(&c, &region)? })
    }

    pub fn mult(&self, v: &DimVector) -> Result<BigInt> {
        if v.total() > self.depth {
            return Err(Error::Inconclusive { depth: self.depth as usize, what: format!("extended root at {v:?}") });
        }
        let mut x = v.to_vec();
        x.push(1);
        Ok(self.mults.get(&DimVector::new(x)?).cloned().unwrap_or_default())
    }
}

const REFLECTION_BUDGET: usize = 100_000;

/// Reflect at vertices with negative pairing until dominant.
pub fn dominant_conjugate(wv: &AffineWeight, c: &CartanMatrix) -> Result<(AffineWeight, usize)> {
    let mut cur = wv.clone();
    for steps in 0..=REFLECTION_BUDGET {
        let pairings = cur.pairings(c);
        match pairings.iter().position(|&p| p < 0) {
            None => return Ok((cur, steps)),
            Some(i) => cur.content[i] += pairings[i],
        }
    }
    Err(Error::Budget(format!("no dominant conjugate within {REFLECTION_BUDGET} reflections")))
}

/// Simple reflection `s_i` acting on `w − v`.
pub fn reflect(wv: &AffineWeight, i: usize, c: &CartanMatrix) -> AffineWeight {
    let mut out = wv.clone();
    out.content[i] += crate::km::pairing(i, wv, c);
    out
}

/// Whether `w − v` lies in the Weyl orbit of `w`.
pub fn in_weyl_orbit(w: &DimVector, v: &[i64], c: &CartanMatrix) -> Result<bool> {
    let (dom, _) = dominant_conjugate(&AffineWeight::new(w.clone(), v.to_vec()), c)?;
    Ok(dom.content.iter().all(|&x| x == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::km::QuiverGraph;
    use proptest::prelude::*;

    fn dv(v: &[i64]) -> DimVector {
        DimVector::new(v.to_vec()).unwrap()
    }

    fn roots_of(rd: &RootDatum) -> Vec<(Vec<i64>, u64)> {
        rd.roots.iter().map(|(b, m)| (b.to_vec(), m.to_u64().unwrap())).collect()
    }

    fn cartan(g: &QuiverGraph) -> CartanMatrix {
        cartan_from_graph(g)
    }

    #[test]
    fn root_examples() {
        let a2 = cartan(&QuiverGraph::finite_a(2));
        assert_eq!(roots_of(&positive_roots(&a2, 3).unwrap()), vec![(vec![0, 1], 1), (vec![1, 0], 1), (vec![1, 1], 1)]);
        let aff = cartan(&QuiverGraph::affine_a(1));
        assert_eq!(roots_of(&positive_roots(&aff, 2).unwrap()), vec![(vec![0, 1], 1), (vec![1, 0], 1), (vec![1, 1], 1)]);
        let a1 = cartan(&QuiverGraph::finite_a(1));
        assert_eq!(roots_of(&positive_roots(&a1, 5).unwrap()), vec![(vec![1], 1)]);
        assert!(positive_roots(&cartan(&QuiverGraph::jordan()), 2).is_err());
    }

    #[test]
    fn imaginary_roots_of_affine_a_have_rank_multiplicity() {
        for n in 1..4 {
            let c = cartan(&QuiverGraph::affine_a(n));
            let rd = positive_roots(&c, 3 * (n as i64 + 1)).unwrap();
            for m in 1..=3 {
                assert_eq!(rd.mult(&vec![m; n + 1]).unwrap(), BigInt::from(n));
            }
            // real roots have multiplicity one
            for (b, mu) in &rd.roots {
                if c.form(b, b) == 2 {
                    assert!(mu.is_one());
                }
            }
        }
    }

    #[test]
    fn highest_roots() {
        assert_eq!(highest_root(&cartan(&QuiverGraph::finite_a(3))).unwrap(), dv(&[1, 1, 1]));
        let d4 = QuiverGraph::with_indices(4, vec![(0, 3), (1, 3), (2, 3)]).unwrap();
        assert_eq!(highest_root(&cartan(&d4)).unwrap(), dv(&[1, 1, 1, 2]));
        let e6 = QuiverGraph::with_indices(6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]).unwrap();
        assert_eq!(highest_root(&cartan(&e6)).unwrap(), dv(&[1, 2, 3, 2, 1, 2]));
        assert_eq!(finite_positive_roots(&cartan(&e6)).unwrap().roots.len(), 36);
    }

    #[test]
    fn freudenthal_examples() {
        let a1 = cartan(&QuiverGraph::finite_a(1));
        let t = freudenthal(&dv(&[2]), &a1, 4).unwrap();
        assert_eq!(t.get_u64(&[0]).unwrap(), 1);
        assert_eq!(t.get_u64(&[1]).unwrap(), 1);
        assert_eq!(t.get_u64(&[2]).unwrap(), 1);
        assert_eq!(t.get_u64(&[3]).unwrap(), 0);
        assert!(t.get(&[5]).is_err());
        let aff = cartan(&QuiverGraph::affine_a(1));
        let t = freudenthal(&dv(&[1, 0]), &aff, 8).unwrap();
        let partitions = [1u64, 1, 2, 3, 5];
        for m in 0..=4 {
            assert_eq!(t.get_u64(&[m, m]).unwrap(), partitions[m as usize]);
        }
    }

    #[test]
    fn extended_root_examples() {
        let a1 = QuiverGraph::finite_a(1);
        assert_eq!(root_mult_extended(&a1, &dv(&[0]), &dv(&[2])).unwrap(), BigInt::one());
        assert_eq!(root_mult_extended(&a1, &dv(&[1]), &dv(&[2])).unwrap(), BigInt::one());
        assert_eq!(root_mult_extended(&a1, &dv(&[3]), &dv(&[2])).unwrap(), BigInt::zero());
    }

    #[test]
    fn dominant_conjugate_examples() {
        let a1 = cartan(&QuiverGraph::finite_a(1));
        let (d, k) = dominant_conjugate(&AffineWeight::new(dv(&[2]), vec![0]), &a1).unwrap();
        assert_eq!((d.content, k), (vec![0], 0));
        let (d, k) = dominant_conjugate(&AffineWeight::new(dv(&[2]), vec![2]), &a1).unwrap();
        assert_eq!((d.content, k), (vec![0], 1));
        let aff = cartan(&QuiverGraph::affine_a(1));
        let (d, k) = dominant_conjugate(&AffineWeight::new(dv(&[1, 0]), vec![1, 0]), &aff).unwrap();
        assert_eq!((d.content, k), (vec![0, 0], 1));
        assert!(in_weyl_orbit(&dv(&[1, 0]), &[1, 0], &aff).unwrap());
        assert!(!in_weyl_orbit(&dv(&[1, 0]), &[1, 1], &aff).unwrap());
    }

    proptest! {
        #[test]
        fn orbit_invariance(v in proptest::collection::vec(0i64..5, 3), i in 0usize..3) {
            let c = cartan(&QuiverGraph::affine_a(2));
            let w = dv(&[1, 1, 0]);
            let x = AffineWeight::new(w.clone(), v);
            let (d1, _) = dominant_conjugate(&x, &c).unwrap();
            let (d2, _) = dominant_conjugate(&reflect(&x, i, &c), &c).unwrap();
            prop_assert_eq!(&d1, &d2);
            let (d3, k) = dominant_conjugate(&d1, &c).unwrap();
            prop_assert_eq!(k, 0);
            prop_assert_eq!(d3, d1);
        }
    }

    #[test]
    fn weyl_symmetry_and_delta_strings() {
        let c = cartan(&QuiverGraph::affine_a(2));
        let w = dv(&[1, 1, 0]);
        let t = freudenthal(&w, &c, 9).unwrap();
        let delta = [1, 1, 1];
        for (v, m) in t.support() {
            if v.total() + 3 <= 9 {
                let down = v.add(&delta);
                assert!(&t.get(&down).unwrap() >= m, "δ-string shrinks at {v:?}");
            }
            for i in 0..3 {
                let r = reflect(&AffineWeight::new(w.clone(), v.to_vec()), i, &c);
                if r.content.iter().sum::<i64>() <= 9 {
                    assert_eq!(&t.get(&r.content).unwrap(), m, "Weyl symmetry at {v:?}, s_{i}");
                }
            }
        }
    }
}
