//! Slopes, normalization, the root box R₊(v), faces and the standard face constructors.

use std::collections::BTreeSet;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::km::{CartanMatrix, DimVector};

/// A stability parameter `ζ̃ = (ζ, ζ_∞)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StabilityParam {
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub zeta: Vec<Rational64>,
    #[serde(with = "crate::rational::serde_rational_opt", default)]
    pub zeta_inf: Option<Rational64>,
}

impl StabilityParam {
    pub fn new(zeta: Vec<Rational64>) -> Self {
        Self { zeta, zeta_inf: None }
    }

    pub fn from_ints(zeta: &[i64]) -> Self {
        Self::new(zeta.iter().map(|&x| Rational64::from_integer(x)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![Rational64::zero(); n])
    }

    /// `ζ · v`.
    pub fn dot(&self, v: &[i64]) -> Rational64 {
        self.zeta.iter().zip(v).map(|(z, &x)| z * x).sum()
    }

    /// Shift every vertex entry by `c` (leaves ζ_∞ unset).
    pub fn shifted(&self, c: Rational64) -> Self {
        Self::new(self.zeta.iter().map(|z| z + c).collect())
    }
}

/// `(ζ·v + ζ_∞[withW]) / ([withW] + Σv)`.
pub fn slope(zt: &StabilityParam, v: &[i64], with_w: bool) -> Result<Rational64> {
    let size: i64 = v.iter().sum::<i64>() + i64::from(with_w);
    if size == 0 {
        return precondition("slope of the zero object is undefined");
    }
    let inf = if with_w { zt.zeta_inf.unwrap_or_default() } else { Rational64::zero() };
    Ok((zt.dot(v) + inf) / size)
}

/// Choose `ζ_∞` so that the slope of `(V, W)` vanishes.
pub fn normalize(zt: &StabilityParam, v: &[i64], w: &[i64]) -> Result<StabilityParam> {
    let s = zt.dot(v);
    let framed = w.iter().any(|&x| x != 0);
    if !framed && !s.is_zero() {
        return precondition(format!("w = 0 requires ζ·v = 0, got {s}"));
    }
    Ok(StabilityParam { zeta: zt.zeta.clone(), zeta_inf: Some(if framed { -s } else { Rational64::zero() }) })
}

/// `{θ : 0 ≤ θ ≤ v, θ ≠ 0, ᵗθCθ ≤ 2}` in lexicographic order.
pub fn rplus(v: &DimVector, c: &CartanMatrix) -> Vec<DimVector> {
    v.box_below().into_iter().filter(|t| !t.is_zero() && c.form(t, t) <= 2).collect()
}

/// Sign partition of R₊(v) by a parameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Face {
    pub r_zero: BTreeSet<DimVector>,
    pub r_plus: BTreeSet<DimVector>,
    pub r_minus: BTreeSet<DimVector>,
    pub dim_vector: DimVector,
    pub w_is_zero: bool,
}

pub fn face_of(zt: &StabilityParam, v: &DimVector, w: &[i64], c: &CartanMatrix) -> Result<Face> {
    let w_is_zero = w.iter().all(|&x| x == 0);
    if w_is_zero && !zt.dot(v).is_zero() {
        return precondition("w = 0 requires ζ·v = 0");
    }
    let mut face = Face {
        r_zero: BTreeSet::new(),
        r_plus: BTreeSet::new(),
        r_minus: BTreeSet::new(),
        dim_vector: v.clone(),
        w_is_zero,
    };
    for theta in rplus(v, c) {
        if w_is_zero && &theta == v {
            continue;
        }
        let s = zt.dot(&theta);
        let bucket = if s.is_zero() {
            &mut face.r_zero
        } else if s.is_positive() {
            &mut face.r_plus
        } else {
            &mut face.r_minus
        };
        bucket.insert(theta);
    }
    Ok(face)
}

pub fn is_chamber(f: &Face) -> bool {
    f.r_zero.is_empty()
}

/// Whether `f_bullet` lies in the closure of `f`.
pub fn in_closure(f_bullet: &Face, f: &Face) -> Result<bool> {
    if f_bullet.dim_vector != f.dim_vector || f_bullet.w_is_zero != f.w_is_zero {
        return precondition("faces were computed against different (v, w)");
    }
    Ok(f_bullet.r_plus.is_subset(&f.r_plus) && f_bullet.r_minus.is_subset(&f.r_minus))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum FaceKind {
    Levi,
    AleOpen,
    AleBullet,
}

/// A face given by a vertex split together with a parameter realizing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceSpec {
    pub kind: FaceKind,
    /// Vertices where the parameter vanishes (I⁰, or I₀⁰ for ALE faces).
    pub zero_part: Vec<usize>,
    /// Vertices with positive parameter (I⁺, or I₀⁺).
    pub plus_part: Vec<usize>,
    #[serde(with = "crate::rational::serde_rational_vec")]
    pub sample_zeta: Vec<Rational64>,
}

impl FaceSpec {
    pub fn param(&self) -> StabilityParam {
        StabilityParam::new(self.sample_zeta.clone())
    }
}

fn split(n: usize, zero: &[usize], skip: Option<usize>) -> Result<(Vec<usize>, Vec<usize>)> {
    let zero: BTreeSet<usize> = zero.iter().copied().collect();
    if zero.iter().any(|&i| i >= n || Some(i) == skip) {
        return precondition("vertex subset out of range");
    }
    let plus = (0..n).filter(|i| !zero.contains(i) && Some(*i) != skip).collect();
    Ok((zero.into_iter().collect(), plus))
}

/// ζ vanishing on `i0` and equal to 1 elsewhere.
pub fn levi_face(n: usize, i0: &[usize]) -> Result<FaceSpec> {
    let (zero, plus) = split(n, i0, None)?;
    let mut sample = vec![Rational64::zero(); n];
    for &i in &plus {
        sample[i] = Rational64::from_integer(1);
    }
    Ok(FaceSpec { kind: FaceKind::Levi, zero_part: zero, plus_part: plus, sample_zeta: sample })
}

/// ζ with ζ·δ = 0, vanishing on `i00`, 1 on the rest of I₀, ζ₀ solved from ζ·δ = 0.
pub fn ale_face(c: &CartanMatrix, i00: &[usize]) -> Result<FaceSpec> {
    let delta = c.delta()?;
    let (zero, plus) = split(c.len(), i00, Some(0))?;
    let mut sample = vec![Rational64::zero(); c.len()];
    for &i in &plus {
        sample[i] = Rational64::from_integer(1);
    }
    let rest: i64 = plus.iter().map(|&i| delta[i]).sum();
    sample[0] = Rational64::from_integer(-rest);
    let kind = if zero.is_empty() { FaceKind::AleOpen } else { FaceKind::AleBullet };
    Ok(FaceSpec { kind, zero_part: zero, plus_part: plus, sample_zeta: sample })
}

/// A parameter on the Gieseker side of the open ALE face for a fixed `v`:
/// ζ_i = 1 for i ≠ 0 and ζ·δ = −ε with ε = 1/(1 + Σv)².
pub fn gieseker_zeta(c: &CartanMatrix, v: &DimVector) -> Result<StabilityParam> {
    let mut zt = ale_face(c, &[])?.param();
    let eps = Rational64::new(1, (1 + v.total()).pow(2));
    zt.zeta[0] -= eps;
    Ok(zt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::km::{cartan_from_graph, QuiverGraph};
    use proptest::prelude::*;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    fn dv(v: &[i64]) -> DimVector {
        DimVector::new(v.to_vec()).unwrap()
    }

    fn a2() -> CartanMatrix {
        cartan_from_graph(&QuiverGraph::finite_a(2))
    }

    #[test]
    fn slope_examples() {
        let zt = StabilityParam { zeta: vec![r(1), r(1)], zeta_inf: Some(r(-1)) };
        assert_eq!(slope(&zt, &[1, 0], true).unwrap(), r(0));
        let zt = StabilityParam { zeta: vec![r(5), r(7)], zeta_inf: Some(r(0)) };
        assert_eq!(slope(&zt, &[0, 0], true).unwrap(), r(0));
        assert_eq!(slope(&StabilityParam::from_ints(&[3]), &[2], false).unwrap(), r(3));
        assert!(slope(&StabilityParam::from_ints(&[3]), &[0], false).is_err());
    }

    #[test]
    fn normalize_examples() {
        let n = normalize(&StabilityParam::from_ints(&[1, 1]), &[1, 0], &[1, 0]).unwrap();
        assert_eq!(n.zeta_inf, Some(r(-1)));
        let n = normalize(&StabilityParam::from_ints(&[1, -1]), &[1, 1], &[0, 0]).unwrap();
        assert_eq!(n.zeta_inf, Some(r(0)));
        assert!(normalize(&StabilityParam::from_ints(&[1]), &[2], &[0]).is_err());
    }

    #[test]
    fn rplus_examples() {
        let want = vec![dv(&[0, 1]), dv(&[1, 0]), dv(&[1, 1])];
        assert_eq!(rplus(&dv(&[1, 1]), &a2()), want);
        assert!(rplus(&dv(&[0, 0]), &a2()).is_empty());
        let aff = cartan_from_graph(&QuiverGraph::affine_a(1));
        assert_eq!(rplus(&dv(&[1, 1]), &aff), want);
    }

    #[test]
    fn face_examples() {
        let v = dv(&[1, 1]);
        let f = face_of(&StabilityParam::from_ints(&[1, -1]), &v, &[1, 0], &a2()).unwrap();
        assert_eq!(f.r_zero.iter().cloned().collect::<Vec<_>>(), vec![dv(&[1, 1])]);
        assert_eq!(f.r_plus.iter().cloned().collect::<Vec<_>>(), vec![dv(&[1, 0])]);
        assert_eq!(f.r_minus.iter().cloned().collect::<Vec<_>>(), vec![dv(&[0, 1])]);
        assert!(!is_chamber(&f));
        let ch = face_of(&StabilityParam::from_ints(&[1, 1]), &dv(&[2, 1]), &[1, 0], &a2()).unwrap();
        assert!(is_chamber(&ch));
        let z = face_of(&StabilityParam::zero(2), &v, &[1, 0], &a2()).unwrap();
        assert_eq!(z.r_zero.len(), 3);
        assert!(!is_chamber(&z));
    }

    #[test]
    fn closure_examples() {
        let v = dv(&[1, 1]);
        let w = [1, 1];
        let fb = face_of(&StabilityParam::from_ints(&[1, 0]), &v, &w, &a2()).unwrap();
        let f = face_of(&StabilityParam::from_ints(&[1, 1]), &v, &w, &a2()).unwrap();
        let zero = face_of(&StabilityParam::zero(2), &v, &w, &a2()).unwrap();
        assert!(in_closure(&fb, &f).unwrap());
        assert!(!in_closure(&f, &fb).unwrap());
        assert!(in_closure(&f, &f).unwrap());
        assert!(in_closure(&zero, &f).unwrap());
        let other = face_of(&StabilityParam::zero(2), &dv(&[1, 0]), &w, &a2()).unwrap();
        assert!(in_closure(&other, &f).is_err());
    }

    #[test]
    fn face_constructors() {
        assert_eq!(levi_face(2, &[]).unwrap().sample_zeta, vec![r(1), r(1)]);
        assert_eq!(levi_face(2, &[0, 1]).unwrap().sample_zeta, vec![r(0), r(0)]);
        assert_eq!(levi_face(2, &[0]).unwrap().sample_zeta, vec![r(0), r(1)]);
        let aff1 = cartan_from_graph(&QuiverGraph::affine_a(1));
        assert_eq!(ale_face(&aff1, &[]).unwrap().sample_zeta, vec![r(-1), r(1)]);
        assert_eq!(ale_face(&aff1, &[1]).unwrap().sample_zeta, vec![r(0), r(0)]);
        let aff2 = cartan_from_graph(&QuiverGraph::affine_a(2));
        assert_eq!(ale_face(&aff2, &[1]).unwrap().sample_zeta, vec![r(-1), r(0), r(1)]);
        assert!(ale_face(&a2(), &[]).is_err());
        assert!(ale_face(&aff2, &[0]).is_err());
    }

    #[test]
    fn gieseker_parameter_is_a_chamber_next_to_the_open_face() {
        let aff = cartan_from_graph(&QuiverGraph::affine_a(2));
        let v = dv(&[2, 1, 2]);
        let g = gieseker_zeta(&aff, &v).unwrap();
        let fg = face_of(&g, &v, &[1, 0, 0], &aff).unwrap();
        assert!(is_chamber(&fg));
        let fo = face_of(&ale_face(&aff, &[]).unwrap().param(), &v, &[1, 0, 0], &aff).unwrap();
        assert!(in_closure(&fo, &fg).unwrap());
    }

    fn small_zeta(n: usize) -> impl Strategy<Value = StabilityParam> {
        proptest::collection::vec((-4i64..5, 1i64..4), n)
            .prop_map(|v| StabilityParam::new(v.into_iter().map(|(p, q)| Rational64::new(p, q)).collect()))
    }

    proptest! {
        #[test]
        fn see_saw(zt in small_zeta(3), v in proptest::collection::vec(0i64..4, 3),
                   cut in proptest::collection::vec(0i64..4, 3), w_on_sub in any::<bool>()) {
            let sub: Vec<i64> = v.iter().zip(&cut).map(|(a, b)| (*a).min(*b)).collect();
            let quo: Vec<i64> = v.iter().zip(&sub).map(|(a, b)| a - b).collect();
            let zt = normalize(&zt, &v, &[1, 0, 0]).unwrap();
            let sub_size: i64 = sub.iter().sum::<i64>() + i64::from(w_on_sub);
            let quo_size: i64 = quo.iter().sum::<i64>() + i64::from(!w_on_sub);
            prop_assume!(sub_size > 0 && quo_size > 0);
            let total = slope(&zt, &v, true).unwrap();
            let s1 = slope(&zt, &sub, w_on_sub).unwrap();
            let s2 = slope(&zt, &quo, !w_on_sub).unwrap();
            prop_assert_eq!(s1 <= total, s2 >= total);
            prop_assert_eq!(s1 < total, s2 > total);
        }

        #[test]
        fn shift_invariance(zt in small_zeta(3), v in proptest::collection::vec(0i64..3, 3), c in -3i64..4) {
            let aff = cartan_from_graph(&QuiverGraph::affine_a(2));
            let v = DimVector::new(v).unwrap();
            prop_assume!(!v.is_zero());
            let w = [0, 1, 0];
            // Shifting every entry of ζ̃, the ∞ entry included, shifts every slope by c.
            let a = normalize(&zt, &v, &w).unwrap();
            let mut b = a.shifted(Rational64::from_integer(c));
            b.zeta_inf = a.zeta_inf.map(|x| x + c);
            let s_a = slope(&a, &v, true).unwrap();
            let s_b = slope(&b, &v, true).unwrap();
            for t in v.box_below() {
                for flag in [false, true] {
                    if t.is_zero() && !flag { continue; }
                    let x = slope(&a, &t, flag).unwrap() - s_a;
                    let y = slope(&b, &t, flag).unwrap() - s_b;
                    prop_assert_eq!(x.signum(), y.signum());
                }
            }
            prop_assert!(face_of(&zt, &v, &w, &aff).is_ok());
        }

        #[test]
        fn rplus_monotone(v in proptest::collection::vec(0i64..3, 3), d in proptest::collection::vec(0i64..2, 3)) {
            let aff = cartan_from_graph(&QuiverGraph::affine_a(2));
            let small = DimVector::new(v.clone()).unwrap();
            let big = small.add(&d);
            let a: BTreeSet<_> = rplus(&small, &aff).into_iter().collect();
            let b: BTreeSet<_> = rplus(&big, &aff).into_iter().collect();
            prop_assert!(a.is_subset(&b));
        }

        #[test]
        fn closure_is_a_partial_order(zs in proptest::collection::vec(small_zeta(2), 3)) {
            let v = dv(&[2, 1]);
            let w = [0, 1];
            let f: Vec<Face> = zs.iter().map(|z| face_of(z, &v, &w, &a2()).unwrap()).collect();
            for x in &f {
                prop_assert!(in_closure(x, x).unwrap());
                for y in &f {
                    if in_closure(x, y).unwrap() && in_closure(y, x).unwrap() {
                        prop_assert_eq!(x, y);
                    }
                    for z in &f {
                        if in_closure(x, y).unwrap() && in_closure(y, z).unwrap() {
                            prop_assert!(in_closure(x, z).unwrap());
                        }
                    }
                }
            }
        }
    }
}
