use cwrithe::algebra::{isolate_real_roots, rat, ratio, resultant, Rational, Sign, SturmSequence, UPoly};
use cwrithe::curve::{Link, MoebiusReparam, ProjectiveTransform, RationalSpaceCurve};
use cwrithe::io::{parse_curve_str, write_link, CurveInput};
use cwrithe::projection::{LocusKind, ProjectionCenter, Projector};
use cwrithe::writhe::{build_diagram, crossing_sign, diagram_from_projection, solitary_sign, writhe_unoriented};
use num_traits::Zero;
use proptest::prelude::*;

fn poly(max_deg: usize) -> impl Strategy<Value = UPoly> {
    prop::collection::vec(-4i64..=4, 1..=max_deg + 1).prop_map(|c| UPoly::from_ints(&c))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_filter_map("nonzero", |(n, d)| (n != 0).then(|| ratio(n, d)))
}

fn sign(r: &Rational) -> Sign {
    Sign::from_i32(if r.is_zero() { 0 } else if r > &rat(0) { 1 } else { -1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_vanishes_iff_common_factor(a in poly(4), b in poly(4)) {
        prop_assume!(a.deg() >= 1 && b.deg() >= 1);
        let r = resultant(&a, &b).unwrap();
        prop_assert_eq!(r.is_zero(), !a.gcd(&b).is_constant());
    }

    #[test]
    fn isolation_matches_sturm_count(p in poly(6)) {
        prop_assume!(p.deg() >= 1);
        let q = p.squarefree_part();
        let roots = isolate_real_roots(&q).unwrap();
        prop_assert_eq!(roots.len(), SturmSequence::new(&q).count_all());
        for w in roots.windows(2) {
            prop_assert!(w[0].hi() < w[1].lo());
        }
    }

    #[test]
    fn sign_at_rational_root_is_exact(a in -6i64..=6, d in 1i64..=3, extra in poly(3), q in poly(4)) {
        // p has the rational root a/d and possibly others
        let root = ratio(a, d);
        let lin = UPoly::from_coeffs(vec![-root.clone(), rat(1)]);
        let p = (&lin * &(&extra * &extra + &UPoly::one())).squarefree_part();
        let roots = isolate_real_roots(&p).unwrap();
        let r = roots.iter().find(|r| r.lo() <= &root && &root <= r.hi()).unwrap();
        prop_assert_eq!(r.sign_of(&q), sign(&q.eval(&root)));
    }

    #[test]
    fn reparametrization_commutes_with_evaluation(
        seed in 0u64..500, m in prop::array::uniform4(-4i64..=4), t in -5i64..=5
    ) {
        prop_assume!(m[0] * m[3] - m[1] * m[2] != 0);
        let c = RationalSpaceCurve::sample_random(3, seed, 4).unwrap();
        let mob = MoebiusReparam::from_ints(m[0], m[1], m[2], m[3]).unwrap();
        let t = rat(t);
        if let Some(image) = mob.apply(&t) {
            let lhs = c.reparametrized(&mob).evaluate(&t);
            let rhs = c.evaluate(&image);
            // proportional quadruples
            for i in 0..4 {
                for j in 0..4 {
                    prop_assert_eq!(&lhs[i] * &rhs[j], &lhs[j] * &rhs[i]);
                }
            }
        }
    }

    #[test]
    fn transform_round_trip(seed in 0u64..500, entries in prop::array::uniform16(-5i64..=5)) {
        let m: [[i64; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| entries[4 * i + j]));
        let Ok(t) = ProjectiveTransform::from_ints(m) else { return Ok(()) };
        let c = RationalSpaceCurve::sample_random(4, seed, 4).unwrap();
        prop_assert_eq!(c.transformed(&t).transformed(&t.inverse()), c.clone());
        let p = c.evaluate(&rat(2));
        prop_assert_eq!(t.inverse().apply_point(&t.apply_point(&p)), p);
    }

    #[test]
    fn files_round_trip(seed in 0u64..1000, degree in 1usize..=5, flip in any::<bool>()) {
        let c = RationalSpaceCurve::sample_random(degree, seed, 6).unwrap();
        let l = Link::new(vec![c], flip.then(|| vec![-1])).unwrap();
        prop_assert_eq!(parse_curve_str(&write_link(&l)).unwrap(), CurveInput::Link(l));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn model_members_have_writhe_minus_one(tau in nonzero_rational()) {
        let link = Link::single(RationalSpaceCurve::model(&tau));
        let d = build_diagram(&link, &ProjectionCenter::standard()).unwrap();
        prop_assert_eq!(writhe_unoriented(&d), -1);
        let expected = if tau < rat(0) { LocusKind::Crossing } else { LocusKind::Solitary };
        prop_assert_eq!(d.loci[0].locus.kind, expected);
        // mirror image
        let mirror = ProjectiveTransform::diagonal([1, 1, -1, 1]).unwrap();
        let m = build_diagram(&link.transformed(&mirror), &ProjectionCenter::standard()).unwrap();
        prop_assert_eq!(writhe_unoriented(&m), 1);
    }

    #[test]
    fn cubic_signs_are_choice_independent(seed in 0u64..10_000) {
        let c = RationalSpaceCurve::sample_random(3, seed, 5).unwrap();
        let p = Projector::new(&Link::single(c)).unwrap();
        let d = diagram_from_projection(p.sample_generic_center(seed).unwrap()).unwrap();
        let w = writhe_unoriented(&d);
        prop_assert!(w == 1 || w == -1);
        let link = &d.projection.link;
        for l in &d.loci {
            let again = match l.locus.kind {
                LocusKind::Solitary => solitary_sign(link.component(0), &l.locus, true).unwrap(),
                _ => crossing_sign(&link.flip(0), &l.locus, true).unwrap(),
            };
            prop_assert_eq!(again, l.sign);
        }
    }
}
