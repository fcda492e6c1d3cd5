use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use horosagbi::gc::{gc_polytope, DominantWeight};
use horosagbi::polyhedra::count_lattice_points;
use horosagbi::sagbi::{
    psi_embed, random_element, subduct, verify_sagbi, ChoiceRule, HoroVarietySpec, SubductOptions, VerifyOptions,
};
use horosagbi::symplectic::rep_space;

fn lattice_enumeration(c: &mut Criterion) {
    let w = DominantWeight::sp(&[3, 2, 1]).unwrap();
    let p = gc_polytope(&w);
    c.bench_function("gc_count_sp6_321", |b| b.iter(|| count_lattice_points(black_box(&p)).unwrap()));
}

fn representations(c: &mut Criterion) {
    let w = DominantWeight::sp(&[2, 2]).unwrap();
    c.bench_function("rep_space_sp4_22", |b| b.iter(|| rep_space(black_box(&w)).unwrap()));
    let w = DominantWeight::sp(&[1, 1, 1]).unwrap();
    c.bench_function("rep_space_sp6_111", |b| b.iter(|| rep_space(black_box(&w)).unwrap()));
}

fn sagbi(c: &mut Criterion) {
    let spec = HoroVarietySpec::from_weights(2, vec![vec![1, 0], vec![1, 1]]).unwrap();
    let e = psi_embed(&spec).unwrap();
    c.bench_function("verify_flag_level3", |b| {
        b.iter(|| verify_sagbi(&e, VerifyOptions { max_level: 3, trials: 0, seed: 0, randomized: false }).unwrap())
    });
    let f = random_element(&e, 3, 1);
    c.bench_function("subduct_flag_level3", |b| {
        b.iter(|| subduct(black_box(&f), &e, SubductOptions { rule: ChoiceRule::LowestLex, ..Default::default() }).unwrap())
    });
}

criterion_group!(benches, lattice_enumeration, representations, sagbi);
criterion_main!(benches);
