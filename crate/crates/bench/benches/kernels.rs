use criterion::{black_box, criterion_group, criterion_main, Criterion};
use quivstrat::crystal::{affine_cartan, crystal_b_lambda, mv_counts};
use quivstrat::levelrank::{gyd_to_weight, DualityContext, Gyd};
use quivstrat::modrep::{GradedModule, SubmoduleLattice};
use quivstrat::mult::ExtendedRoots;
use quivstrat::stability::ale_face;
use quivstrat::{cb_stable_nonempty, freudenthal, normalize, AffineWeight, DimVector, QuiverGraph, StabilityParam};

fn dv(v: &[i64]) -> DimVector {
    DimVector::new(v.to_vec()).unwrap()
}

fn weights(c: &mut Criterion) {
    let cartan = affine_cartan(3);
    c.bench_function("freudenthal affine A2 depth 8", |b| {
        b.iter(|| freudenthal(black_box(&dv(&[1, 1, 0])), &cartan, 8).unwrap())
    });
    let graph = QuiverGraph::affine_a(1);
    c.bench_function("extended roots affine A1 depth 8", |b| {
        b.iter(|| ExtendedRoots::new(&graph, black_box(&dv(&[2, 0])), 8).unwrap())
    });
}

fn nonemptiness(c: &mut Criterion) {
    let cartan = affine_cartan(2);
    let zeta = ale_face(&cartan, &[1]).unwrap().param();
    c.bench_function("crawley-boevey affine A1 v=(3,3)", |b| {
        b.iter(|| cb_stable_nonempty(&cartan, black_box(&dv(&[3, 3])), &dv(&[2, 0]), &zeta).unwrap())
    });
}

fn modules(c: &mut Criterion) {
    let graph = QuiverGraph::finite_a(2);
    let module = GradedModule::zero(&graph, 2, &dv(&[2, 2]), &dv(&[1, 0])).unwrap().with_code(0x5a5);
    let zt = normalize(&StabilityParam::from_ints(&[1, -1]), &module.v, &module.w).unwrap();
    c.bench_function("submodule lattice and HN search A2 v=(2,2)", |b| {
        b.iter(|| SubmoduleLattice::new(black_box(&module)).unwrap().all_hn_chains(&zt).len())
    });
}

fn crystals(c: &mut Criterion) {
    c.bench_function("crystal B(Lambda_0) r=3 depth 8", |b| b.iter(|| crystal_b_lambda(3, black_box(0), 8).unwrap()));
    c.bench_function("mv counts r=2 residues (0,1) depth 6", |b| b.iter(|| mv_counts(2, black_box(&[0, 1]), 6).unwrap()));
    let lam = Gyd::new(vec![1, 0], 2).unwrap();
    let mu = AffineWeight::new(gyd_to_weight(&lam).framing, vec![2, 2]);
    c.bench_function("duality l=r=2 at depth 2", |b| {
        b.iter(|| DualityContext::new(8).duality_dims(black_box(&lam), &mu).unwrap())
    });
}

criterion_group!(benches, weights, nonemptiness, modules, crystals);
criterion_main!(benches);
