//! The acceptance checks, each returning a report with counts and the first failures.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_rational::Rational64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::crystal::{affine_cartan, crystal_b_lambda, TensorCrystal};
use crate::error::{Error, Result};
use crate::km::{cartan_from_graph, AffineWeight, CartanMatrix, DimVector, QuiverGraph};
use crate::levelrank::{charge, gyd_to_maya, gyd_to_weight, transpose, DualityContext, Gyd};
use crate::modrep::{GradedModule, SubmoduleLattice, TieBreak, Verdict};
use crate::mult::{freudenthal, ExtendedRoots};
use crate::nonempty::{affine_stratum_nonempty, ale_stable_dimvectors, cb_stable_nonempty};
use crate::stability::{ale_face, face_of, in_closure, is_chamber, normalize, StabilityParam};
use crate::strata::{classify_blocks, enumerate_strata_ale, local_model};

const KEEP_FAILURES: usize = 10;

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CriterionReport {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    pub failure_count: u64,
    /// The first few failures, as readable messages.
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failure_count: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < KEEP_FAILURES {
            self.failures.push(msg);
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        for f in other.failures {
            if self.failures.len() < KEEP_FAILURES {
                self.failures.push(f);
            }
        }
        self.failure_count += other.failure_count;
    }

    fn error(&mut self, e: Error, ctx: impl FnOnce() -> String) {
        self.checked += 1;
        self.fail(format!("{}: {e}", ctx()));
    }
}

fn finish(id: u8, name: &str, limit: Duration, start: Instant, tally: Tally) -> CriterionReport {
    let elapsed = start.elapsed();
    let mut failures = tally.failures;
    let in_time = elapsed <= limit;
    if !in_time {
        failures.push(format!("took {elapsed:?}, limit {limit:?}"));
    }
    CriterionReport {
        id,
        name: name.to_string(),
        passed: tally.failure_count == 0 && in_time && tally.checked > 0,
        checked: tally.checked,
        failure_count: tally.failure_count,
        failures,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.as_millis(),
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

/// Extended-quiver root multiplicities against Freudenthal weight multiplicities.
pub fn criterion_1() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    for graph in [QuiverGraph::finite_a(2), QuiverGraph::affine_a(1)] {
        let c = cartan_from_graph(&graph);
        for w in DimVector::all_with_total_at_most(graph.len(), 2) {
            let ext = ExtendedRoots::new(&graph, &w, 8);
            let table = freudenthal(&w, &c, 8);
            let (ext, table) = match (ext, table) {
                (Ok(e), Ok(f)) => (e, f),
                (Err(e), _) | (_, Err(e)) => {
                    t.error(e, || format!("setup w={w:?}"));
                    continue;
                }
            };
            for v in DimVector::all_with_total_at_most(graph.len(), 8) {
                match (ext.mult(&v), table.get(&v)) {
                    (Ok(a), Ok(b)) => t.check(a == b, || format!("w={w:?} v={v:?}: root {a} vs weight {b}")),
                    (Err(e), _) | (_, Err(e)) => t.error(e, || format!("w={w:?} v={v:?}")),
                }
            }
        }
    }
    finish(1, "extended-quiver roots match weight multiplicities", secs(10), start, t)
}

/// Zero out each matrix with probability ½ before filling, to make the moment map vanish more often.
fn sparse_random(base: &GradedModule, rng: &mut ChaCha8Rng) -> GradedModule {
    let mut m = base.random(rng);
    for mat in m.maps.iter_mut().chain(m.a.iter_mut()).chain(m.b.iter_mut()) {
        if rng.gen_bool(0.5) {
            mat.data.iter_mut().for_each(|x| *x = 0);
        }
    }
    m
}

/// Random modules with some nonzero map in the zero fiber of the moment map, `v, w ≤ (2, …, 2)`, `v ≠ 0`.
pub fn face_corpus(graph: &QuiverGraph, count: usize, seed: u64) -> Vec<GradedModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = graph.len();
    let mut out = Vec::new();
    while out.len() < count {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let base = GradedModule::zero(graph, 2, &DimVector::new(v).unwrap(), &DimVector::new(w).unwrap())
            .expect("valid dimensions");
        for _ in 0..4000 {
            let m = sparse_random(&base, &mut rng);
            let trivial = m.maps.iter().chain(&m.a).chain(&m.b).all(|x| x.is_zero());
            if !trivial && m.satisfies_moment_map() {
                out.push(m);
                break;
            }
        }
    }
    out
}

/// Parameters for one module: random small integers, their doubles, and zero,
/// each forced onto `ζ·v = 0` when unframed.
fn face_params(v: &[i64], framed: bool, rng: &mut ChaCha8Rng) -> Vec<StabilityParam> {
    let n = v.len();
    let pivot = v.iter().position(|&x| x != 0).expect("nonzero v");
    let mut out = vec![StabilityParam::zero(n)];
    for _ in 0..8 {
        let mut z: Vec<Rational64> = (0..n).map(|_| Rational64::from_integer(rng.gen_range(-2..=2))).collect();
        if !framed {
            let rest: Rational64 = (0..n).filter(|&i| i != pivot).map(|i| z[i] * v[i]).sum();
            z[pivot] = -rest / v[pivot];
        }
        let doubled = z.iter().map(|x| x * 2).collect();
        out.push(StabilityParam::new(z));
        out.push(StabilityParam::new(doubled));
    }
    out
}

/// Face independence, closure monotonicity and chamber collapse on random modules.
pub fn criterion_2(seed: u64) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for (g, graph) in [QuiverGraph::finite_a(2), QuiverGraph::affine_a(1)].into_iter().enumerate() {
        let c = cartan_from_graph(&graph);
        for m in face_corpus(&graph, 120, seed.wrapping_add(g as u64)) {
            let lattice = match SubmoduleLattice::new(&m) {
                Ok(l) => l,
                Err(e) => {
                    t.error(e, || format!("lattice v={:?} w={:?}", m.v, m.w));
                    continue;
                }
            };
            let mut rows = Vec::new();
            for z in face_params(&m.v, m.is_framed(), &mut rng) {
                let face = face_of(&z, &m.v, &m.w, &c).expect("parameter respects w = 0");
                let zt = normalize(&z, &m.v, &m.w).expect("parameter respects w = 0");
                rows.push((z, face, lattice.verdict(&zt)));
            }
            let tag = || format!("v={:?} w={:?} maps={:?}", m.v, m.w, m.maps);
            for (z, f, verdict) in &rows {
                if m.is_framed() && is_chamber(f) {
                    t.check(*verdict != Verdict::StrictlySemistable, || {
                        format!("strictly semistable in a chamber at ζ={z:?}, {}", tag())
                    });
                }
                for (z2, f2, verdict2) in &rows {
                    if f == f2 {
                        t.check(verdict == verdict2, || format!("same face, ζ={z:?} vs {z2:?}: {verdict:?} vs {verdict2:?}, {}", tag()));
                    }
                    // f in the closure of f2
                    if in_closure(f, f2).unwrap_or(false) {
                        let ok = (!verdict2.is_semistable() || verdict.is_semistable())
                            && (*verdict != Verdict::Stable || *verdict2 == Verdict::Stable);
                        t.check(ok, || format!("closure ζ•={z:?} ({verdict:?}) ζ={z2:?} ({verdict2:?}), {}", tag()));
                    }
                }
            }
        }
    }
    finish(2, "stability verdicts follow faces over F_2", secs(60), start, t)
}

fn hn_params(n: usize) -> Vec<Vec<i64>> {
    if n == 1 {
        vec![vec![1], vec![-1], vec![0]]
    } else {
        vec![vec![1, -1], vec![-1, 1], vec![1, 1], vec![-1, -1], vec![2, -1], vec![0, 1], vec![0, 0]]
    }
}

fn hn_check_module(m: &GradedModule, t: &mut Tally) {
    let lattice = match SubmoduleLattice::new(m) {
        Ok(l) => l,
        Err(e) => return t.error(e, || format!("lattice v={:?} w={:?}", m.v, m.w)),
    };
    for z in hn_params(m.n()) {
        let z = StabilityParam::from_ints(&z);
        let zt = if m.is_framed() {
            normalize(&z, &m.v, &m.w).expect("framed")
        } else {
            StabilityParam { zeta: z.zeta.clone(), zeta_inf: Some(Rational64::zero()) }
        };
        let chains = lattice.all_hn_chains(&zt);
        let greedy = lattice.hn_chain_indices(&zt);
        t.check(chains.len() == 1 && chains[0] == greedy, || {
            format!("{} HN flags at ζ={:?}, v={:?} w={:?} maps={:?}", chains.len(), z.zeta, m.v, m.w, m.maps)
        });
        if lattice.verdict(&zt).is_semistable() {
            match (lattice.jh_factors(&zt, TieBreak::Smallest), lattice.jh_factors(&zt, TieBreak::Largest)) {
                (Ok(a), Ok(b)) => t.check(a == b, || format!("JH factors depend on tie-breaking at ζ={:?}, v={:?} w={:?}", z.zeta, m.v, m.w)),
                (Err(e), _) | (_, Err(e)) => t.error(e, || format!("JH v={:?} w={:?}", m.v, m.w)),
            }
        }
    }
}

/// Exhaustive uniqueness of HN flags and tie-break independence of JH factors.
pub fn criterion_3() -> CriterionReport {
    let start = Instant::now();
    let mut jobs = Vec::new();
    for graph in [QuiverGraph::finite_a(1), QuiverGraph::finite_a(2)] {
        let n = graph.len();
        let mut framings = vec![DimVector::zeros(n)];
        framings.extend((0..n).map(|i| DimVector::unit(n, i)));
        for v in DimVector::all_with_total_at_most(n, 4) {
            if v.is_zero() {
                continue;
            }
            for w in &framings {
                jobs.push(GradedModule::zero(&graph, 2, &v, w).expect("valid dimensions"));
            }
        }
    }
    let tallies: Vec<Tally> = jobs
        .par_iter()
        .flat_map_iter(|base| {
            let codes = 1u64 << base.entry_count();
            (0..codes).map(move |code| (base, code))
        })
        .map(|(base, code)| {
            let mut t = Tally::default();
            hn_check_module(&base.with_code(code), &mut t);
            t
        })
        .collect();
    let mut t = Tally::default();
    for x in tallies {
        t.merge(x);
    }
    finish(3, "HN uniqueness and JH tie-break independence", secs(120), start, t)
}

fn criterion_4_grid() -> (CartanMatrix, Vec<DimVector>, Vec<Vec<usize>>) {
    let framings = vec![DimVector::new(vec![1, 0]).unwrap(), DimVector::new(vec![1, 1]).unwrap(), DimVector::new(vec![2, 0]).unwrap()];
    (affine_cartan(2), framings, vec![vec![], vec![1]])
}

/// Crawley–Boevey against the closed-form ALE nonemptiness test.
pub fn criterion_4() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    let (c, framings, subsets) = criterion_4_grid();
    for i00 in &subsets {
        let zeta = ale_face(&c, i00).expect("valid subset").param();
        for w in &framings {
            for v in DimVector::all_with_total_at_most(2, 6) {
                match (cb_stable_nonempty(&c, &v, w, &zeta), affine_stratum_nonempty(&c, &v, w, i00)) {
                    (Ok(cb), Ok(closed)) => t.check(cb.nonempty == closed, || {
                        format!("I00={i00:?} w={w:?} v={v:?}: CB {} vs closed form {closed}", cb.nonempty)
                    }),
                    (Err(e), _) | (_, Err(e)) => t.error(e, || format!("I00={i00:?} w={w:?} v={v:?}")),
                }
            }
        }
    }
    finish(4, "Crawley-Boevey agrees with the ALE closed form", secs(30), start, t)
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0..1u32 << items.len())
        .map(|mask| items.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i).collect())
        .collect()
}

/// Unframed ζ•-stable dimension vectors below δ found by CB against the classification.
pub fn criterion_5() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    for n in 1..=3 {
        let c = affine_cartan(n + 1);
        let delta = c.delta().expect("affine");
        let finite: Vec<usize> = (1..=n).collect();
        for i00 in subsets(&finite) {
            let zeta = ale_face(&c, &i00).expect("valid subset").param();
            let mut found = Vec::new();
            let mut ok = true;
            for v in DimVector::all_with_total_at_most(n + 1, delta.total()) {
                if v.is_zero() || !zeta.dot(&v).is_zero() {
                    continue;
                }
                match cb_stable_nonempty(&c, &v, &DimVector::zeros(n + 1), &zeta) {
                    Ok(r) if r.nonempty => found.push(v),
                    Ok(_) => {}
                    Err(e) => {
                        ok = false;
                        t.error(e, || format!("affine A_{n} I00={i00:?} v={v:?}"));
                    }
                }
            }
            if !ok {
                continue;
            }
            let mut expected: Vec<DimVector> = ale_stable_dimvectors(&c, &i00).expect("valid").into_iter().map(|(v, _)| v).collect();
            expected.sort();
            expected.dedup();
            found.sort();
            t.check(found == expected, || format!("affine A_{n} I00={i00:?}: CB {found:?} vs classification {expected:?}"));
        }
    }
    finish(5, "classification of unframed stable dimension vectors", secs(30), start, t)
}

/// Crystal element counts per weight against Freudenthal.
pub fn criterion_6(depth: i64) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    for r in [2usize, 3] {
        let c = affine_cartan(r);
        for i0 in 0..r {
            let crystal = match crystal_b_lambda(r, i0, depth) {
                Ok(x) => x,
                Err(e) => {
                    t.error(e, || format!("r={r} i0={i0}"));
                    continue;
                }
            };
            let mut counts: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
            for p in &crystal {
                *counts.entry(p.content()).or_insert(0) += 1;
            }
            let table = freudenthal(&DimVector::unit(r, i0), &c, depth).expect("valid weight");
            for x in DimVector::all_with_total_at_most(r, depth) {
                let want = table.get_u64(&x).expect("within depth");
                let got = counts.get(&x.to_vec()).copied().unwrap_or(0);
                t.check(got == want, || format!("r={r} i0={i0} content {x:?}: crystal {got} vs Freudenthal {want}"));
            }
        }
    }
    finish(6, "crystal characters match Freudenthal", secs(60), start, t)
}

/// Level-rank weight-multiplicity duality on the `l = r = 2` grid.
pub fn criterion_7(delta_depth: i64) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    let ctx = DualityContext::new(3 * delta_depth + 4);
    let framings: Vec<DimVector> = vec![vec![2, 0], vec![1, 1], vec![0, 2]].into_iter().map(|f| DimVector::new(f).unwrap()).collect();
    let mut nonzero = 0u64;
    for lam in Gyd::all_in_range(2, 2, -3, 4) {
        if lam.size().abs() > 4 {
            continue;
        }
        for framing in &framings {
            for x0 in 0..=delta_depth {
                for x1 in 0..=x0 + 2 {
                    let mu = AffineWeight::new(framing.clone(), vec![x0, x1]);
                    match ctx.duality_dims(&lam, &mu) {
                        Ok(rep) => {
                            nonzero += u64::from(rep.lhs_dim > 0);
                            t.check(rep.lhs_dim == rep.rhs_dim && rep.degree_relation_holds, || {
                                format!("λ={:?} μ̄={:?}/{:?}: {rep:?}", lam.parts, framing.to_vec(), mu.content)
                            });
                        }
                        Err(e) => t.error(e, || format!("λ={:?} μ̄={:?}/{:?}", lam.parts, framing.to_vec(), mu.content)),
                    }
                }
            }
        }
    }
    t.check(nonzero > 0, || "grid contains no nonzero multiplicity".into());
    finish(7, "level-rank duality of weight multiplicities", secs(300), start, t)
}

/// Transposition, size and charge of Maya diagrams.
pub fn criterion_8() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    for l in 1..=3 {
        for r in 1..=3 {
            for lam in Gyd::all_in_range(l, r, -5, 5) {
                if lam.size().abs() > 5 {
                    continue;
                }
                let tag = || format!("l={l} r={r} λ={:?}", lam.parts);
                match transpose(&lam).and_then(|d| transpose(&d).map(|dd| (d, dd))) {
                    Ok((d, dd)) => {
                        t.check(dd == lam, || format!("{}: double transpose {:?}", tag(), dd.parts));
                        t.check(d.size() == lam.size(), || format!("{}: transpose size {}", tag(), d.size()));
                    }
                    Err(e) => t.error(e, tag),
                }
                let q = charge(&gyd_to_maya(&lam));
                t.check(q == lam.size(), || format!("{}: charge {q}", tag()));
            }
        }
    }
    finish(8, "Maya diagram combinatorics", secs(5), start, t)
}

/// Tensor-product multiplicities against highest-weight counts of the crystal tensor product.
pub fn criterion_9(depth: i64) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    let ctx = DualityContext::new(depth);
    let small: Vec<Gyd> = Gyd::all_in_range(2, 1, -2, 2).into_iter().filter(|g| g.size().abs() <= 2).collect();
    let unit_index = |g: &Gyd| gyd_to_weight(g).framing.iter().position(|&a| a == 1).expect("level one");
    let mut hw_cache: BTreeMap<(usize, usize), BTreeMap<Vec<i64>, u64>> = BTreeMap::new();
    let mut compared = 0u64;
    for lam1 in &small {
        for lam2 in &small {
            let key = (unit_index(lam1), unit_index(lam2));
            let hw = hw_cache.entry(key).or_insert_with(|| {
                TensorCrystal::build(2, &[key.0, key.1], depth, false).expect("valid").highest_weight_counts()
            });
            let lo = lam1.size() + lam2.size() - 2;
            for lam in Gyd::all_in_range(2, 2, lo - 2, lo + 4) {
                if lam.size() != lam1.size() + lam2.size() {
                    continue;
                }
                let tag = || format!("λ={:?} λ1={:?} λ2={:?}", lam.parts, lam1.parts, lam2.parts);
                let u = match ctx.tensor_target(&lam, lam1, lam2) {
                    Ok(u) => u,
                    Err(Error::Inconclusive { .. }) => continue,
                    Err(e) => {
                        t.error(e, tag);
                        continue;
                    }
                };
                let want = u.as_ref().map_or(0, |u| hw.get(u).copied().unwrap_or(0));
                match ctx.tensor_multiplicity(&lam, lam1, lam2) {
                    Ok(got) => {
                        compared += 1;
                        t.check(got == want, || format!("{}: character {got} vs crystal {want}", tag()));
                    }
                    Err(e) => t.error(e, tag),
                }
            }
        }
    }
    t.check(compared > 0, || "no comparable cases".into());
    finish(9, "tensor multiplicities match crystal highest weights", secs(120), start, t)
}

/// The local-model weight identity and block types for every ALE stratum on the grid of criterion 4.
pub fn criterion_10() -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    let (c, framings, subsets) = criterion_4_grid();
    for i00 in &subsets {
        for w in &framings {
            for v in DimVector::all_with_total_at_most(2, 6) {
                let strata = match enumerate_strata_ale(&c, &v, w, i00) {
                    Ok(s) => s,
                    Err(e) => {
                        t.error(e, || format!("I00={i00:?} w={w:?} v={v:?}"));
                        continue;
                    }
                };
                for s in strata {
                    let tag = || format!("I00={i00:?} w={w:?} v={v:?} stratum {s:?}");
                    let model = s.pieces(&c).and_then(|p| local_model(&c, &s.v0, &p, w));
                    match model {
                        Ok(lm) => {
                            let bad = classify_blocks(&lm.hat_cartan).into_iter().filter(|(_, k)| k.is_none()).count();
                            t.check(bad == 0, || format!("{}: {bad} blocks of unknown type", tag()));
                        }
                        Err(e) => t.error(e, tag),
                    }
                }
            }
        }
    }
    finish(10, "local-model identity and block types", secs(10), start, t)
}

/// Named groups of criteria for the command line.
pub const SUITES: &[(&str, &[u8])] = &[
    ("all", &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]),
    ("mult", &[1]),
    ("stability", &[2, 3]),
    ("nonempty", &[4, 5]),
    ("crystal", &[6]),
    ("levelrank", &[7, 8, 9]),
    ("strata", &[10]),
];

/// Options for a suite run; `depth` replaces the default depth of the crystal and level-rank checks.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    pub depth: Option<i64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: 2024, depth: None }
    }
}

pub fn run_criterion(id: u8, opts: VerifyOptions) -> Result<CriterionReport> {
    Ok(match id {
        1 => criterion_1(),
        2 => criterion_2(opts.seed),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(opts.depth.unwrap_or(6)),
        7 => criterion_7(opts.depth.unwrap_or(3)),
        8 => criterion_8(),
        9 => criterion_9(opts.depth.unwrap_or(3)),
        10 => criterion_10(),
        _ => return Err(Error::Precondition(format!("no criterion {id}"))),
    })
}

pub fn run_suite(name: &str, opts: VerifyOptions) -> Result<Vec<CriterionReport>> {
    let Some((_, ids)) = SUITES.iter().find(|(n, _)| *n == name) else {
        let names: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
        return Err(Error::Precondition(format!("unknown suite {name}; expected one of {names:?}")));
    };
    ids.iter().map(|&id| run_criterion(id, opts)).collect()
}

impl CriterionReport {
    /// `PASS 4 name (checked=…, failures=…, 12ms)`.
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {} (checked={}, failures={}, {}ms of {}ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.checked,
            self.failure_count,
            self.elapsed_ms,
            self.limit_ms
        )
    }
}
