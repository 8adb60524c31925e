use proptest::prelude::*;

use unisvar::algebra::{AlgebraElement, ReductionSystem};
use unisvar::enumerate::{self, Options};
use unisvar::fixtures;
use unisvar::grassmann::{self, reduce_modulo, Chart, Quotient};
use unisvar::io::parse_quiver_file;
use unisvar::linalg::Matrix;
use unisvar::modvar::{self, MatrixRep};
use unisvar::quiver::PathWord;
use unisvar::scalar::{Field, Scalar};
use unisvar::uniserial::{self, is_route, Mast, SimpleSequence, VarietyPoint};

/// Two parallel pairs of arrows 1 → 2 → 3 with a commutativity relation.
const SQUARE: &str = "NILBOUND 3\nVERTEX 1 2 3\nARROW a 1 2\nARROW c 1 2\nARROW b 2 3\nARROW d 2 3\nREL b*a - d*c\n";

fn square(field: Field) -> ReductionSystem {
    parse_quiver_file(SQUARE).unwrap().with_field(field).to_system().unwrap()
}

fn seq(sys: &ReductionSystem, s: &str) -> SimpleSequence {
    SimpleSequence::parse(sys.quiver(), s).unwrap()
}

fn element(sys: &ReductionSystem, coeffs: &[i64]) -> AlgebraElement {
    let f = sys.field();
    let paths: Vec<PathWord> = (0..sys.quiver().vertex_count())
        .flat_map(|v| sys.quiver().paths_from(v, sys.nilbound()))
        .collect();
    let mut x = AlgebraElement::zero(f);
    for (p, &c) in paths.iter().zip(coeffs) {
        x.add_term(p.clone(), f.from_i64(c));
    }
    x
}

fn point(mast: &Mast, field: Field, values: &[i64]) -> VarietyPoint {
    let vals: Vec<Scalar> = values.iter().map(|&v| field.from_i64(v)).collect();
    VarietyPoint::from_values(mast, &vals[..mast.coordinates().len()])
}

#[test]
fn square_has_a_reducible_mast() {
    let sys = square(Field::Rational);
    let names: Vec<String> = uniserial::masts(&sys, &seq(&sys, "1,2,3"))
        .iter()
        .map(|m| m.name(sys.quiver()))
        .collect();
    assert_eq!(names, ["b*a", "d*a", "b*c", "d*c"]);
    assert!(!sys.is_irreducible(&sys.quiver().parse_path("d*c").unwrap()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent(coeffs in proptest::collection::vec(-3i64..=3, 20)) {
        for field in [Field::Rational, Field::Prime(5)] {
            let sys = square(field);
            let x = element(&sys, &coeffs);
            let nf = sys.normal_form(&x);
            prop_assert_eq!(sys.normal_form(&nf), nf.clone());
            prop_assert!(nf.terms().all(|(p, _)| sys.is_irreducible(p)));
        }
    }

    #[test]
    fn multiplication_is_associative(x in proptest::collection::vec(-2i64..=2, 20),
                                     y in proptest::collection::vec(-2i64..=2, 20),
                                     z in proptest::collection::vec(-2i64..=2, 20)) {
        let sys = square(Field::Rational);
        let (x, y, z) = (element(&sys, &x), element(&sys, &y), element(&sys, &z));
        let left = sys.multiply(&sys.multiply(&x, &y), &z);
        let right = sys.multiply(&x, &sys.multiply(&y, &z));
        prop_assert_eq!(left, right);
        prop_assert_eq!(sys.multiply(&x, &y), sys.multiply(&sys.normal_form(&x), &sys.normal_form(&y)));
    }

    #[test]
    fn equations_agree_with_matrix_relations(values in proptest::collection::vec(-2i64..=2, 4), which in 0usize..4) {
        for field in [Field::Rational, Field::Prime(3)] {
            let sys = square(field);
            let ms = uniserial::masts(&sys, &seq(&sys, "1,2,3"));
            let m = &ms[which];
            let k = point(m, field, &values);
            let eqs = uniserial::variety_equations(&sys, m);
            let x = modvar::theorem_d_matrices(&sys, m, &k).unwrap();
            prop_assert_eq!(uniserial::evaluate_point(&eqs, &k).unwrap(), modvar::satisfies_relations(&sys, &x));
        }
    }

    #[test]
    fn rational_charts_of_fix_b(values in proptest::collection::vec(-4i64..=4, 3), which in 0usize..6) {
        let sys = fixtures::fix_b(Field::Rational);
        let series = seq(&sys, "1,2,3");
        let ms = uniserial::masts(&sys, &series);
        let m = &ms[which];
        let k = point(m, sys.field(), &values);
        let chart = Chart::new(&sys, m).unwrap();
        let c = chart.psi(&k).unwrap();
        prop_assert_eq!(c.intersection_dim(chart.a_p()), 0);
        let pv = chart.pluecker(&c).unwrap();
        prop_assert!(pv.in_principal_chart());
        prop_assert_eq!(chart.recover(&pv).unwrap(), k.clone());

        let e = m.source();
        let vals = k.to_vec(m, sys.field()).unwrap();
        for v in sys.quiver().paths_from(e, sys.nilbound()) {
            if !is_route(sys.quiver(), m, &v) {
                continue;
            }
            let symbolic: Vec<Scalar> = uniserial::reduce_route_symbolic(&sys, m, &v)
                .unwrap()
                .iter()
                .map(|p| p.evaluate(&vals))
                .collect();
            let numeric = reduce_modulo(m.subpath_coordinates(), &c, &sys.path_coordinates(e, &v).unwrap()).unwrap();
            prop_assert_eq!(symbolic, numeric);
        }

        let x = modvar::theorem_d_matrices(&sys, m, &k).unwrap();
        match grassmann::phi_s(&sys, e, &c, &series).unwrap() {
            Quotient::Uniserial { module, .. } => prop_assert!(modvar::is_isomorphic(&module, &x)),
            Quotient::Rejected(r) => prop_assert!(false, "rejected: {:?}", r),
        }
    }

    #[test]
    fn square_charts_over_gf3(which in 0usize..4) {
        let sys = square(Field::Prime(3));
        let series = seq(&sys, "1,2,3");
        let m = &uniserial::masts(&sys, &series)[which];
        let chart = Chart::new(&sys, m).unwrap();
        for k in enumerate::enumerate_points(&sys, m, &Options::default()).unwrap() {
            let c = chart.psi(&k).unwrap();
            prop_assert_eq!(chart.recover(&chart.pluecker(&c).unwrap()).unwrap(), k.clone());
            prop_assert!(grassmann::guni_contains(&sys, m.source(), &c, &series));
        }
    }

    #[test]
    fn isomorphism_is_an_equivalence(i in 0usize..48, j in 0usize..48, l in 0usize..48) {
        let sys = fixtures::fix_b(Field::Prime(2));
        let series = seq(&sys, "1,2,3");
        let modules: Vec<MatrixRep> = uniserial::masts(&sys, &series)
            .iter()
            .flat_map(|m| {
                enumerate::enumerate_points(&sys, m, &Options::default())
                    .unwrap()
                    .into_iter()
                    .map(|k| modvar::theorem_d_matrices(&sys, m, &k).unwrap())
                    .collect::<Vec<_>>()
            })
            .collect();
        let (x, y, z) = (&modules[i], &modules[j], &modules[l]);
        prop_assert!(modvar::is_isomorphic(x, x));
        prop_assert_eq!(modvar::is_isomorphic(x, y), modvar::is_isomorphic(y, x));
        if modvar::is_isomorphic(x, y) && modvar::is_isomorphic(y, z) {
            prop_assert!(modvar::is_isomorphic(x, z));
        }
    }

    #[test]
    fn conjugation_preserves_hom_dimensions(values in proptest::collection::vec(0i64..3, 3),
                                             g in proptest::collection::vec(1i64..3, 3),
                                             lower in 0i64..3) {
        let sys = fixtures::fix_b(Field::Prime(3));
        let f = sys.field();
        let ms = uniserial::masts(&sys, &seq(&sys, "1,2,3"));
        let x = modvar::theorem_d_matrices(&sys, &ms[0], &point(&ms[0], f, &values)).unwrap();
        let y = modvar::theorem_d_matrices(&sys, &ms[5], &point(&ms[5], f, &values)).unwrap();
        // Invertible diagonal blocks: each vertex occurs once.
        let mut t = Matrix::zeros(f, 3, 3);
        for (i, &v) in g.iter().enumerate() {
            t[(i, i)] = f.from_i64(v);
        }
        let gx = x.conjugate(&t).unwrap();
        prop_assert_eq!(modvar::hom_space(&x, &y).dim(), modvar::hom_space(&gx, &y).dim());
        prop_assert_eq!(modvar::hom_space(&y, &x).dim(), modvar::hom_space(&y, &gx).dim());
        prop_assert!(modvar::is_isomorphic(&x, &gx));

        // Over the loop algebra, blocks are full 3x3 matrices.
        let d = fixtures::fix_d(Field::Prime(3));
        let dm = &uniserial::masts(&d, &seq(&d, "v,v,v"))[0];
        let reg = modvar::theorem_d_matrices(&d, dm, &VarietyPoint::new()).unwrap();
        let mut h = Matrix::identity(f, 3);
        h[(2, 0)] = f.from_i64(lower);
        h[(0, 1)] = f.from_i64(values[0]);
        prop_assume!(h.is_invertible());
        let hreg = reg.conjugate(&h).unwrap();
        prop_assert_eq!(modvar::hom_space(&hreg, &reg).dim(), 3);
        prop_assert!(modvar::is_isomorphic(&hreg, &reg));
    }

    #[test]
    fn rational_certificates(a in -5i64..=5, b in -5i64..=5) {
        prop_assume!(a != b);
        let sys = fixtures::fix_a(Field::Rational);
        let m = &uniserial::masts(&sys, &seq(&sys, "1,2"))[0];
        let u = modvar::theorem_d_matrices(&sys, m, &point(m, sys.field(), &[a])).unwrap();
        let u2 = modvar::theorem_d_matrices(&sys, m, &point(m, sys.field(), &[b])).unwrap();
        let cert = modvar::no_degeneration_certificate(&u, &u2).unwrap();
        prop_assert!(cert.verify().is_ok());
        prop_assert_eq!((cert.leaf().lhs, cert.leaf().rhs), (1, 0));
    }
}
