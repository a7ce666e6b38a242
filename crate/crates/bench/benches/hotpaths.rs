use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use affq_core::instances::by_name;
use affq_core::numgrid::grid::Grid;
use affq_core::numgrid::kn::op_kn;
use affq_core::numgrid::star::star;
use affq_core::numgrid::testfam::test_family;
use affq_core::qgops::omega;
use affq_core::sampling::{sample_rng, suite_salt};
use affq_core::symop::sample_point;

fn bench_star(c: &mut Criterion) {
    let g = Grid::new(128, 12.0);
    let fam = test_family();
    let f1 = fam[0].to_ref(&g);
    let f2 = fam[1].to_ref(&g);
    c.bench_function("star_n128", |b| b.iter(|| star(&g, &f1, &f2)));
}

fn bench_op_kn(c: &mut Criterion) {
    let g = Grid::new(128, 12.0);
    let fam = test_family();
    let f = fam[0].to_qv(&g);
    c.bench_function("op_kn_n128", |b| b.iter(|| op_kn(&g, &f)));
}

fn bench_omega_eval(c: &mut Criterion) {
    let model = by_name("axb").expect("registered");
    let om = omega(&model);
    let salt = suite_salt("bench-omega");
    c.bench_function("omega_map_weight", |b| {
        let mut i = 0u64;
        b.iter_batched(
            || {
                i += 1;
                let mut rng = sample_rng(42, salt, i);
                sample_point(&model, 2, 1e-3, &mut rng)
            },
            |x| {
                let y = om.map(&x);
                let w = om.weight_at(&x);
                (y, w)
            },
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, bench_star, bench_op_kn, bench_omega_eval);
criterion_main!(benches);
