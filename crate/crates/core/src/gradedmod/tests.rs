use super::*;
use crate::field::{make_field, Fe};
use crate::linalg::is_zero_vec;
use crate::polyring::{parse, Polynomial};

fn cone(p: u64, cubic: &str) -> Arc<GradedRing> {
    let f = make_field(p, 1).unwrap();
    GradedRing::quotient(&f, vec![parse(&f, cubic).unwrap().monic(&f)])
}

fn polys(r: &GradedRing, v: &[&str]) -> Vec<Polynomial> {
    v.iter().map(|s| parse(r.field(), s).unwrap()).collect()
}

#[test]
fn koszul_syzygy() {
    let r = cone(5, "x^3+y^3+z^3");
    let gens = polys(&r, &["x", "y"]);
    let m = syzygy_module(&r, &gens, 0).unwrap();
    assert_eq!(m.ambient().twists, vec![-1, -1]);
    assert_eq!(hilbert_value(&m, 1), 0);
    let b = graded_piece_basis(&m, 2);
    assert_eq!(b.len(), 1);
    let f = r.field();
    let y = parse(f, "y").unwrap();
    let c = b[0].comps[0].coeff(y.lm().unwrap());
    assert_eq!(b[0].comps[0], y.scale(f, c));
    assert_eq!(b[0].comps[1], parse(f, "-x").unwrap().scale(f, c));
    assert_eq!(hilbert_value(&m, 3), 3);
    assert_eq!(rank_and_degree(&m).unwrap(), (1, -6));
    let pres = m.presentation().unwrap();
    assert_eq!(pres.gen_degrees(), vec![2]);
    assert!(pres.relations.is_empty());
}

#[test]
fn zero_map_kernel_is_source() {
    let r = cone(5, "x^3+y^3+z^3");
    let zero = Polynomial::zero();
    let map = GradedMap::new(TwistedFree::new(vec![-1, 0]), TwistedFree::new(vec![0]), vec![vec![zero.clone(), zero]]).unwrap();
    let m = syzygy_of_map(&r, map);
    for t in 0..5 {
        assert_eq!(hilbert_value(&m, t), r.dim(t - 1) + r.dim(t));
    }
}

#[test]
fn syzygies_compose_to_zero() {
    let r = cone(7, "x^3+y^3+z^3+3*x*y*z");
    let gens = polys(&r, &["x^2+y*z", "y^2", "z^2-x*y", "x*y*z"]);
    let m = syzygy_module(&r, &gens, 3).unwrap();
    let Kind::Kernel(map) = m.kind() else { unreachable!() };
    for t in -1..4 {
        for v in m.piece(t).basis() {
            assert!(is_zero_vec(&map.apply(&r, t, v)));
        }
        assert_eq!(hilbert_value(&m, t), graded_piece_basis(&m, t).len());
    }
}

#[test]
fn fermat_squares_example() {
    let r = cone(5, "x^3+y^3+z^3");
    let m = syzygy_module(&r, &polys(&r, &["x^2", "y^2", "z^2"]), 3).unwrap();
    let b = graded_piece_basis(&m, 0);
    assert_eq!(b.len(), 1);
    let f = r.field();
    let lead = b[0].comps[0].lc().unwrap();
    let want: Vec<Polynomial> = ["x", "y", "z"].iter().map(|s| parse(f, s).unwrap().scale(f, lead)).collect();
    assert_eq!(b[0].comps, want);
    assert_eq!(rank_and_degree(&m).unwrap(), (2, 0));
    let end = hom_module(&m, &m).unwrap();
    assert_eq!(end.dim(), 2);
}

#[test]
fn repeated_generator_endomorphisms() {
    let r = cone(5, "x^3+y^3+z^3");
    let m = syzygy_module(&r, &polys(&r, &["x^2", "y^2", "x^2"]), 3).unwrap();
    assert_eq!(rank_and_degree(&m).unwrap(), (2, 0));
    assert_eq!(hom_module(&m, &m).unwrap().dim(), 8);
}

#[test]
fn free_module_homs() {
    let r = cone(5, "x^3+y^3+z^3");
    let r0 = GradedModule::free(&r, vec![0]);
    let rm1 = GradedModule::free(&r, vec![-1]);
    assert_eq!(hom_module(&rm1, &r0).unwrap().dim(), 3);
    assert_eq!(hom_module(&r0, &rm1).unwrap().dim(), 0);
    assert_eq!(rank_and_degree(&rm1).unwrap(), (1, -3));
    assert_eq!(hilbert_value(&rm1, 1), 1);
    assert_eq!(hilbert_value(&r0, 4), 12);
    assert_eq!(graded_piece_basis(&r0, 0).len(), 1);
    let sum = GradedModule::free(&r, vec![2, -1, 0]);
    assert_eq!(rank_and_degree(&sum).unwrap(), (3, 3));
}

#[test]
fn hom_composition_and_identity() {
    let r = cone(5, "x^3+y^3+z^3");
    let m = syzygy_module(&r, &polys(&r, &["x^2", "y^2", "x^2"]), 3).unwrap();
    let end = hom_module(&m, &m).unwrap();
    let id = Hom::identity(&m).unwrap();
    let c = end.coordinates(&id);
    assert_eq!(end.combine(&c), id);
    for a in &end.basis {
        assert_eq!(a.compose(&id, &m), *a);
        assert_eq!(id.compose(a, &m), *a);
    }
    // image of the identity is the module itself
    let im = image_presentation(&m, &id).unwrap();
    for t in 0..4 {
        assert_eq!(im.piece(t), m.piece(t));
    }
    let zero = Hom::zero(&m, &m, 0).unwrap();
    assert_eq!(hilbert_value(&image_presentation(&m, &zero).unwrap(), 3), 0);
}

#[test]
fn syzygy_degree_formula_small() {
    let r = cone(5, "x^3+y^3+z^3");
    for (gens, m) in [(vec!["x", "y", "z^3"], 3i64), (vec!["x^2", "y^2", "z^2"], 2), (vec!["x", "y"], 2), (vec!["x*y", "y^2", "x^2+z^2"], 4)] {
        let g = polys(&r, &gens);
        let sum: i64 = g.iter().map(|p| p.degree().unwrap() as i64).sum();
        let n = g.len() as i64;
        let md = syzygy_module(&r, &g, m).unwrap();
        assert_eq!(rank_and_degree(&md).unwrap(), (n - 1, -3 * (sum - (n - 1) * m)));
    }
    let _ = Fe::ZERO;
}
