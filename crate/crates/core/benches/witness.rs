use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ghocolim_core::algebra::action::{CatAction, GCategory};
use ghocolim_core::algebra::category::FinCategory;
use ghocolim_core::algebra::group::FinGroup;
use ghocolim_core::constructions::nerve::nerve;
use ghocolim_core::homology::{g_equivalence_witness, Coefficients};
use ghocolim_core::par::Exec;
use ghocolim_core::simplicial::sset::SimplicialMap;

/// S3 acting on its one-object category by conjugation.
fn conjugation_category() -> GCategory {
    let g = Arc::new(FinGroup::symmetric(3));
    let cat = FinCategory::one_object(&g);
    let conj: Vec<Vec<usize>> =
        g.elements().map(|a| g.elements().map(|h| g.mul(g.mul(a, h), g.inv(a))).collect()).collect();
    let action = CatAction::new(g.clone(), vec![vec![0]; g.order()], conj).unwrap();
    GCategory::new(cat, action).unwrap()
}

fn witness(c: &mut Criterion) {
    let x = nerve(&conjugation_category(), 4).unwrap();
    let id = SimplicialMap::identity(x.space.clone());
    let coeffs = [Coefficients::Rationals, Coefficients::Prime(2), Coefficients::Prime(3)];
    let mut group = c.benchmark_group("witness_identity_conjugation_nerve");
    group.sample_size(10);
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| g_equivalence_witness(&id, &x, &x, &coeffs, 24, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, witness);
criterion_main!(benches);
