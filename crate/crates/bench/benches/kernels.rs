use charp::field::binom_mod_p;
use charp::filtration::{integral_closure_monomial, newton_polyhedron};
use charp::fsing::{fedder_fpure, glassbrenner_split_test};
use charp::groebner::{buchberger, normal_form, quotient_membership};
use charp::ideal::IdealGens;
use charp::poly::parse_polynomial;
use charp::{PrimeModulus, QuotientCtx};
use charp_bench::{
    char2_hypersurface, closure_instance, dense_octic, quintic_split_instance,
    symmetric_quadrics,
};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn lucas_binomials(c: &mut Criterion) {
    let p = PrimeModulus::new(7).unwrap();
    c.bench_function("binom_mod_p grid to 2200", |b| {
        b.iter(|| {
            let mut acc = 0u64;
            for m in (0..2200u64).step_by(7) {
                for n in (0..=m).step_by(13) {
                    acc = acc.wrapping_add(binom_mod_p(black_box(m), black_box(n), p));
                }
            }
            acc
        })
    });
}

fn groebner_kernels(c: &mut Criterion) {
    let ideal = symmetric_quadrics();
    c.bench_function("buchberger symmetric quadrics", |b| {
        b.iter(|| buchberger(black_box(&ideal)).unwrap())
    });

    let gb = buchberger(&ideal).unwrap();
    let g = dense_octic();
    c.bench_function("normal_form dense octic", |b| {
        b.iter(|| normal_form(black_box(&g), &gb).unwrap())
    });
}

fn splitting_kernels(c: &mut Criterion) {
    let (f, ideal) = char2_hypersurface();
    c.bench_function("fedder_fpure char 2 quartic", |b| {
        b.iter(|| fedder_fpure(black_box(&f)).unwrap())
    });

    let ring = f.ring().clone();
    let moduli = IdealGens::new(ring.clone(), vec![f.clone()]).unwrap();
    let ctx = QuotientCtx::new(ring.clone(), moduli).unwrap();
    let x = parse_polynomial(&ring, "X").unwrap();
    c.bench_function("quotient membership mod quartic", |b| {
        b.iter(|| quotient_membership(&ctx, black_box(&ideal), &x).unwrap())
    });

    let (f, mult) = quintic_split_instance();
    c.bench_function("glassbrenner p=5 e=2", |b| {
        b.iter(|| glassbrenner_split_test(black_box(&f), &mult, 2, None).unwrap())
    });
}

fn closure_kernels(c: &mut Criterion) {
    let ideal = closure_instance();
    c.bench_function("integral closure 3 vars", |b| {
        b.iter(|| integral_closure_monomial(black_box(&ideal)).unwrap())
    });

    let np = newton_polyhedron(&ideal).unwrap();
    c.bench_function("closure power 3", |b| {
        b.iter(|| np.closure_power(black_box(3)).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = lucas_binomials, groebner_kernels, splitting_kernels, closure_kernels
}
criterion_main!(benches);
