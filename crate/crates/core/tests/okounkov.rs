use horosagbi::gc::{gc_prime_polytope, weyl_dim, DominantWeight};
use horosagbi::polyhedra::lattice_points;
use horosagbi::symplectic::{cartan_product, initial_exponent_set, rep_space};

fn check(lambda: &[i64]) {
    let w = DominantWeight::sp(lambda).unwrap();
    let space = rep_space(&w).unwrap();
    let initials = initial_exponent_set(&space, &space.order()).unwrap();
    let polytope = lattice_points(&gc_prime_polytope(&w).unwrap()).unwrap();
    assert_eq!(initials, polytope, "initial exponents differ from Δ' points for {w}");
    assert_eq!(initials.len() as u64, weyl_dim(&w).unwrap());
    assert!(initials.contains(&vec![0; lambda.len() * lambda.len()]));
}

#[test]
fn rank_two_weights() {
    for l in [[1, 0], [1, 1], [2, 0], [2, 1], [2, 2]] {
        check(&l);
    }
}

#[test]
fn rank_three_fundamentals() {
    for l in [[1, 0, 0], [1, 1, 0], [1, 1, 1]] {
        check(&l);
    }
}

#[test]
fn initials_of_products_are_sums() {
    let a = rep_space(&DominantWeight::sp(&[1, 0]).unwrap()).unwrap();
    let b = rep_space(&DominantWeight::sp(&[1, 1]).unwrap()).unwrap();
    let ab = cartan_product(&a, &b).unwrap();
    let ia = initial_exponent_set(&a, &a.order()).unwrap();
    let ib = initial_exponent_set(&b, &b.order()).unwrap();
    let iab = initial_exponent_set(&ab, &ab.order()).unwrap();
    for p in ia.iter() {
        for r in ib.iter() {
            let s: Vec<i64> = p.iter().zip(r).map(|(x, y)| x + y).collect();
            assert!(iab.contains(&s));
        }
    }
}
