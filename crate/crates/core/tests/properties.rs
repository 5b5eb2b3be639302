use euler_cocycles::cocycles::{self, eval_b, eval_c, SnappedValue};
use euler_cocycles::diffeo::{CircleRotation, GeneratorSpec, LetterSpec, SphereGenerator, Word};
use euler_cocycles::geometry::CirclePoint;
use euler_cocycles::zigzag::CircleZigzag;
use euler_cocycles::Q;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Q> {
    (-200i64..200, 1i64..40).prop_map(|(p, q)| Q::new(p, q))
}

fn floor(q: Q) -> i64 {
    q.numer().div_euclid(*q.denom())
}

fn frac(q: Q) -> Q {
    q - Q::from_integer(floor(q))
}

fn letter() -> impl Strategy<Value = LetterSpec> {
    let axis = prop::array::uniform3(-1.0f64..1.0)
        .prop_filter("nonzero", |a| a.iter().map(|x| x * x).sum::<f64>() > 1e-2);
    prop_oneof![
        (axis.clone(), -1.0f64..1.0)
            .prop_map(|(axis, turns)| GeneratorSpec::AxisRotation { axis, turns }),
        (axis, prop::collection::vec(-0.5f64..0.5, 1..4))
            .prop_map(|(axis, coeffs)| GeneratorSpec::Twist { axis, coeffs }),
    ]
    .prop_flat_map(|generator| {
        prop_oneof![Just(1), Just(-1)].prop_map(move |exponent| LetterSpec {
            generator: generator.clone(),
            exponent,
        })
    })
}

proptest! {
    #[test]
    fn circle_c0_closed_form(a in rational(), b in rational()) {
        let z = CircleZigzag::default();
        let t = [Word::rotation(a), Word::rotation(b)];
        let r = eval_c(&z, 0, &t).unwrap();
        prop_assert_eq!(r.snapped, Some(SnappedValue::Integer(-floor(frac(a) + frac(b)))));
        prop_assert_eq!(eval_c(&z, 1, &t).unwrap().raw, r.raw);
    }

    #[test]
    fn circle_b0_closed_form(s in rational(), x in rational()) {
        let z = CircleZigzag::new(CirclePoint::new(x));
        let r = eval_b(&z, 0, &[Word::rotation(s)]).unwrap();
        prop_assert_eq!(r.snapped, Some(SnappedValue::Circle(frac(-s))));
    }

    #[test]
    fn circle_b_lift_bounds_c1(a in rational(), b in rational()) {
        let z = CircleZigzag::default();
        let t = [Word::rotation(a), Word::rotation(b)];
        let lhs = cocycles::b_lift(&z).unwrap().coboundary().eval(&t).unwrap();
        prop_assert_eq!(lhs, cocycles::c(&z, 1).unwrap().eval(&t).unwrap());
    }

    #[test]
    fn circle_words_round_trip(turns in prop::collection::vec((rational(), any::<bool>()), 0..5)) {
        let w = Word::<CircleRotation>::from_json(&serde_json::to_string(&turns.iter().map(|(q, inv)| {
            LetterSpec {
                generator: GeneratorSpec::CircleRotation { turns: euler_cocycles::scalar::format_rational(*q) },
                exponent: if *inv { -1 } else { 1 },
            }
        }).collect::<Vec<_>>()).unwrap()).unwrap();
        prop_assert_eq!(Word::<CircleRotation>::from_json(&w.to_json()).unwrap(), w);
    }

    #[test]
    fn sphere_words_round_trip(spec in prop::collection::vec(letter(), 0..5)) {
        let w = Word::<SphereGenerator>::from_spec(&spec).unwrap();
        let back = Word::<SphereGenerator>::from_json(&w.to_json()).unwrap();
        prop_assert_eq!(&back, &w);
        prop_assert_eq!(back.to_json(), w.to_json());
        prop_assert_eq!(back.len(), spec.len());
    }
}
