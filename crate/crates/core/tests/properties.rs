use std::cmp::Ordering;

use proptest::prelude::*;

use horosagbi::algebra::{format_polynomial, parse_polynomial, row_echelon, same_span, ExponentVector, Polynomial, TermOrder, Universe};
use horosagbi::gc::{
    gc_polytope, newton_polytope, newton_transform, newton_transform_inverse, DominantWeight, NewtonVariant,
};
use horosagbi::polyhedra::{count_lattice_points, HPolytope, Inequality};
use horosagbi::rational::{q, q_frac};

fn universe() -> Universe {
    Universe::new(2, 2).unwrap()
}

fn exponent() -> impl Strategy<Value = Vec<i64>> {
    // x exponents nonnegative, y exponents Laurent, t nonnegative
    (prop::collection::vec(0i64..4, 4), prop::collection::vec(-3i64..4, 2), 0i64..3)
        .prop_map(|(x, y, t)| [x, y, vec![t]].concat())
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((exponent(), -6i64..7, 1i64..4), 1..6).prop_map(|terms| {
        let u = universe();
        Polynomial::from_terms(u, terms.into_iter().map(|(e, n, d)| (q_frac(n, d), ExponentVector::new(&u, &e).unwrap())))
    })
}

fn ev(e: &[i64]) -> ExponentVector {
    ExponentVector::new(&universe(), e).unwrap()
}

proptest! {
    #[test]
    fn order_is_total_and_compatible(a in exponent(), b in exponent(), c in exponent()) {
        let o = TermOrder::okounkov(universe());
        let (a, b, c) = (ev(&a), ev(&b), ev(&c));
        let ab = o.cmp(&a, &b);
        prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        prop_assert_eq!(o.cmp(&(&a + &c), &(&b + &c)), ab);
    }

    #[test]
    fn initial_terms_multiply(f in polynomial(), g in polynomial()) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let o = TermOrder::okounkov(universe());
        let (cf, ef) = f.initial_term(&o).unwrap();
        let (cg, eg) = g.initial_term(&o).unwrap();
        let (c, e) = (&f * &g).initial_term(&o).unwrap();
        prop_assert_eq!(e, &ef + &eg);
        prop_assert_eq!(c, cf * cg);
    }

    #[test]
    fn text_round_trip(f in polynomial()) {
        let o = TermOrder::okounkov(universe());
        let s = format_polynomial(&f, &o);
        prop_assert_eq!(parse_polynomial(&s, universe()).unwrap(), f);
    }

    #[test]
    fn echelon_keeps_span(fs in prop::collection::vec(polynomial(), 1..5)) {
        let o = TermOrder::okounkov(universe());
        let basis = row_echelon(&fs, &o);
        let mut inits: Vec<ExponentVector> = basis.iter().map(|b| b.initial_term(&o).unwrap().1).collect();
        let before = inits.len();
        inits.sort();
        inits.dedup();
        prop_assert_eq!(inits.len(), before);
        prop_assert!(same_span(&basis, &fs, &o));
    }

    #[test]
    fn unimodular_maps_preserve_counts(
        lo in prop::collection::vec(-2i64..1, 3),
        size in prop::collection::vec(0i64..3, 3),
        shears in prop::collection::vec((0usize..3, 0usize..3, -2i64..3), 0..4),
    ) {
        let mut ineqs = Vec::new();
        for i in 0..3 {
            let mut a = vec![0; 3];
            a[i] = 1;
            ineqs.push(Inequality::from_ints(&a, lo[i]));
            a[i] = -1;
            ineqs.push(Inequality::from_ints(&a, -(lo[i] + size[i])));
        }
        let sum = vec![1; 3];
        ineqs.push(Inequality::from_ints(&sum, lo.iter().sum::<i64>()));
        let p = HPolytope::new(3, ineqs).unwrap();
        let mut m = vec![vec![1i64, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        for (i, j, c) in shears {
            if i != j {
                let src = m[j].clone();
                for (dst, s) in m[i].iter_mut().zip(src) {
                    *dst += c * s;
                }
            }
        }
        let image = p.affine_image(&m, &[q(1), q(-2), q(0)]).unwrap();
        prop_assert_eq!(count_lattice_points(&image).unwrap(), count_lattice_points(&p).unwrap());
    }

    #[test]
    fn dilation_is_linear_in_the_weight(a in 0i64..4, b in 0i64..4, c in 1i64..4) {
        let (a, b) = (a.max(b), a.min(b));
        let w = DominantWeight::sp(&[a, b]).unwrap();
        let scaled = DominantWeight::sp(&[c * a, c * b]).unwrap();
        prop_assert_eq!(gc_polytope(&w).dilate(&q(c)).unwrap().canonical(), gc_polytope(&scaled).canonical());
    }
}

#[test]
fn newton_transform_round_trip() {
    let ws = [DominantWeight::sp(&[1, 0]).unwrap(), DominantWeight::sp(&[1, 1]).unwrap()];
    let d = newton_polytope(&ws, NewtonVariant::Delta).unwrap();
    let back = newton_transform_inverse(&newton_transform(&d, 2).unwrap(), 2).unwrap();
    assert_eq!(back.canonical(), d.canonical());
    let prime = newton_polytope(&ws, NewtonVariant::DeltaPrime).unwrap();
    let forward = newton_transform(&d, 2).unwrap();
    for k in 1..=4 {
        let a = count_lattice_points(&d.dilate(&q(k)).unwrap()).unwrap();
        assert_eq!(a, count_lattice_points(&prime.dilate(&q(k)).unwrap()).unwrap());
        assert_eq!(a, count_lattice_points(&forward.dilate(&q(k)).unwrap()).unwrap());
    }
    assert_eq!(count_lattice_points(&d).unwrap(), 9);
}

#[test]
fn single_weight_newton_polytope() {
    let ws = [DominantWeight::sp(&[1, 0]).unwrap()];
    for variant in [NewtonVariant::Delta, NewtonVariant::DeltaPrime] {
        let p = newton_polytope(&ws, variant).unwrap();
        for k in 1..=4 {
            let binom = (k + 1) * (k + 2) * (k + 3) / 6;
            assert_eq!(count_lattice_points(&p.dilate(&q(k)).unwrap()).unwrap() as i64, binom);
        }
    }
    let origin = newton_polytope(&[DominantWeight::sp(&[0, 0]).unwrap()], NewtonVariant::Delta).unwrap();
    assert_eq!(count_lattice_points(&origin).unwrap(), 1);
}
