use super::*;
use crate::field::make_field;
use crate::polyring::{parse, CubicCurve};

const FERMAT: &str = "x^3+y^3+z^3";

fn ideal(p: u64, cubic: &str, gens: &[&str]) -> IdealData {
    let f = make_field(p, 1).unwrap();
    let curve = CubicCurve::new(&f, parse(&f, cubic).unwrap()).unwrap();
    IdealData::new(&curve, gens.iter().map(|g| parse(&f, g).unwrap()).collect()).unwrap()
}

fn poly(i: &IdealData, s: &str) -> Polynomial {
    parse(i.field(), s).unwrap()
}

fn verdict(i: &IdealData, s: &str) -> Verdict {
    tight_closure_member(i, &poly(i, s)).unwrap().verdict
}

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

#[test]
fn squares_and_repeated_generators() {
    for p in [5, 7] {
        let i = ideal(p, FERMAT, &["x^2", "y^2", "z^2"]);
        let c = tight_closure_member(&i, &poly(&i, "x*y*z")).unwrap();
        assert_eq!(c.verdict, Verdict::Member);
        assert!(!c.in_ideal);
        assert_eq!(c.summands, vec![SummandReport { rank: 2, degree: 0, class_component_vanishes: false }]);
        assert_eq!(c.formula_degree, 0);
    }
    let i = ideal(5, FERMAT, &["x^2", "y^2", "x^2"]);
    assert_eq!(verdict(&i, "x*y*z"), Verdict::NonMember);
    let i = ideal(5, FERMAT, &["x", "y", "z^3"]);
    assert_eq!(verdict(&i, "z^2"), Verdict::Member);
}

#[test]
fn verdict_depends_only_on_the_ideal() {
    let a = ideal(5, FERMAT, &["x^2", "y^2"]);
    let b = ideal(5, FERMAT, &["x^2", "y^2", "x^2"]);
    for c in ["x*y*z", "z^3", "x*z^2", "x*y*z + z^3", "y*z", "z^2"] {
        assert_eq!(verdict(&a, c), verdict(&b, c), "{c}");
    }
}

#[test]
fn constants_and_ideal_elements() {
    let i = ideal(5, FERMAT, &["x^2", "y^2", "z^2"]);
    let c = tight_closure_member(&i, &poly(&i, "3")).unwrap();
    assert_eq!(c.verdict, Verdict::NonMember);
    let c = tight_closure_member(&i, &poly(&i, "x^2*y - 2*z^3")).unwrap();
    assert!(c.in_ideal);
    assert_eq!(c.verdict, Verdict::Member);
    assert!(c.summands.iter().all(|s| s.class_component_vanishes));
    assert!(tight_closure_member(&i, &Polynomial::zero()).is_err());
    assert!(tight_closure_member(&i, &poly(&i, "x + y^2")).is_err());
}

#[test]
fn slopes() {
    let s = slope_and_threshold(&ideal(5, FERMAT, &["x^2", "y^2", "z^2"])).unwrap();
    assert_eq!((s.mu_min, s.mu_max, s.k, s.semistable), (r(9, 1), r(9, 1), r(3, 1), true));
    let s = slope_and_threshold(&ideal(5, FERMAT, &["x", "y"])).unwrap();
    assert_eq!((s.mu_min, s.mu_max, s.k, s.semistable), (r(6, 1), r(6, 1), r(2, 1), true));
    let s = slope_and_threshold(&ideal(5, FERMAT, &["x", "y", "z^3"])).unwrap();
    assert_eq!((s.mu_min, s.mu_max, s.k, s.semistable), (r(6, 1), r(9, 1), r(5, 2), false));
}

fn gens_display(c: &ClosureIdeal, i: &IdealData) -> Vec<String> {
    c.generators.iter().map(|g| g.display(i.field())).collect()
}

#[test]
fn closure_of_squares() {
    let i = ideal(5, FERMAT, &["x^2", "y^2", "z^2"]);
    let c = tight_closure_ideal(&i).unwrap();
    assert_eq!(gens_display(&c, &i), vec!["x^2", "y^2", "z^2", "x*y*z"]);
    assert_eq!(c.slopes.k, r(3, 1));
    assert_eq!(c.full_from, 3);
    let ring = cone_ring(i.curve());
    for m in 1..=5i64 {
        let got = c.pieces.iter().find(|p| p.degree == m).map_or(ring.dim(m), |p| p.closure.dim());
        let want = if m < 3 { ideal_piece(&i, m).dim() } else { ring.dim(m) };
        assert_eq!(got, want, "degree {m}");
    }
}

#[test]
fn closure_of_lines() {
    let i = ideal(5, FERMAT, &["x", "y"]);
    let c = tight_closure_ideal(&i).unwrap();
    assert_eq!(gens_display(&c, &i), vec!["x", "y", "z^2"]);
    let i = ideal(5, FERMAT, &["x", "y", "z"]);
    let c = tight_closure_ideal(&i).unwrap();
    assert_eq!(gens_display(&c, &i), vec!["x", "y", "z"]);
}

#[test]
fn closure_with_criterion_regime() {
    // μ_min = 6, μ_max = 9: degree 2 is decided by the criterion
    let i = ideal(5, FERMAT, &["x", "y", "z^3"]);
    let c = tight_closure_ideal(&i).unwrap();
    let p2 = c.pieces.iter().find(|p| p.degree == 2).unwrap();
    assert_eq!(p2.regime, Regime::Criterion);
    assert_eq!(p2.closure.dim(), 6);
    assert_eq!(gens_display(&c, &i), vec!["x", "y", "z^2"]);
    // every candidate in a criterion piece agrees with the membership test
    let i = ideal(7, "x^3+y^3+z^3+3*x*y*z", &["x^2", "y^2", "z^3"]);
    let c = tight_closure_ideal(&i).unwrap();
    let ring = cone_ring(i.curve());
    for p in c.pieces.iter().filter(|p| p.regime == Regime::Criterion) {
        for k in 0..ring.dim(p.degree) {
            let mut v = vec![Fe::ZERO; ring.dim(p.degree)];
            v[k] = Fe::ONE;
            let g = ring.poly(&v, p.degree);
            let member = tight_closure_member(&i, &g).unwrap().verdict == Verdict::Member;
            assert_eq!(member, p.closure.contains(i.field(), &v), "{}", g.display(i.field()));
        }
    }
}

#[test]
fn frobenius_oracle() {
    let i = ideal(5, FERMAT, &["x^2", "y^2", "z^2"]);
    assert_eq!(frobenius_member(&i, &poly(&i, "x^2"), 2).unwrap(), FrobeniusResult::Found { e: 0 });
    let i = ideal(2, FERMAT, &["x^2", "y^2", "z^2"]);
    assert_eq!(frobenius_member(&i, &poly(&i, "x*y*z"), 4).unwrap(), FrobeniusResult::Found { e: 2 });
    let i = ideal(2, FERMAT, &["x^2", "y^2", "x^2"]);
    assert_eq!(frobenius_member(&i, &poly(&i, "x*y*z"), 4).unwrap(), FrobeniusResult::NotFound { e_max: 4 });
}

#[test]
fn frobenius_against_normal_forms() {
    // e = 1 membership through a Gröbner basis of the bracket power
    use crate::polyring::{buchberger, normal_form};
    let i = ideal(3, "x^3+y^3+z^3+x*y*z", &["x^2", "y*z", "y^2 + z^2", "x*z"]);
    let f = i.field();
    let mut gens: Vec<Polynomial> = i.gens().iter().map(|g| g.frobenius_power(f, 1)).collect();
    gens.push(i.curve().cubic().clone());
    let gb = buchberger(f, &gens);
    for c in ["x*y", "z^2", "x*y + z^2", "y^2", "x^2 + x*y"] {
        let g = poly(&i, c);
        let want = normal_form(f, &g.frobenius_power(f, 1), &gb).is_zero();
        assert_eq!(frobenius_power_member(&i, &g, 1).unwrap(), want, "{c}");
    }
}
