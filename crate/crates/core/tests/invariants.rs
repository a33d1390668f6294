use reflection_harmonics::arith::{CycloScalar, RatPoly, RatSeries, Rational};
use reflection_harmonics::group::{catalog, CatalogSpec, ReflectionGroup};
use reflection_harmonics::invariants::{
    fixed_point_basis, harmonic_basis, ideal_component, invariant_basis, invariant_degrees, molien,
    reynolds, HarmonicMethod, Harmonics,
};
use reflection_harmonics::linalg::Echelon;
use reflection_harmonics::poly::{MPoly, Space};

fn group(s: &str) -> ReflectionGroup {
    catalog(&s.parse::<CatalogSpec>().unwrap()).unwrap()
}

fn xy(terms: &[(&[u16], i64)]) -> MPoly {
    MPoly::from_int_terms(Space::Contravariant, 2, terms)
}

fn half() -> CycloScalar {
    CycloScalar::from_rational(Rational::new(1.into(), 2.into()))
}

fn same_span(a: &[MPoly], b: &[MPoly]) -> bool {
    Echelon::from_polys(a) == Echelon::from_polys(b)
}

#[test]
fn reynolds_examples() {
    let b2 = group("weyl:B:2");
    assert_eq!(
        reynolds(&b2, &xy(&[(&[2, 0], 1)])),
        xy(&[(&[2, 0], 1), (&[0, 2], 1)]).scale(&half())
    );
    assert!(reynolds(&b2, &xy(&[(&[1, 0], 1)])).is_zero());
    let inv = xy(&[(&[2, 2], 1)]);
    assert_eq!(reynolds(&b2, &inv), inv);
}

#[test]
fn molien_examples() {
    let triv = ReflectionGroup::generate("triv", 2, vec![], 1).unwrap();
    let den = RatSeries::from_poly(&RatPoly::from_ints(&[1, -2, 1]), 6);
    assert_eq!(molien(&triv, 6), RatSeries::one(6).divide(&den).unwrap());
    for e in [2u32, 5, 7] {
        let mut oracle = vec![0i64; 9];
        for k in (0..=8).step_by(e as usize) {
            oracle[k] = 1;
        }
        assert_eq!(molien(&group(&format!("cyclic:{e}")), 8).to_poly(), RatPoly::from_ints(&oracle));
    }
    let den = &RatPoly::from_ints(&[1, 0, -1]) * &RatPoly::from_ints(&[1, 0, 0, 0, -1]);
    let expected = RatSeries::one(10).divide(&RatSeries::from_poly(&den, 10)).unwrap();
    assert_eq!(molien(&group("weyl:B:2"), 10), expected);
}

#[test]
fn degree_examples() {
    assert_eq!(invariant_degrees(&group("weyl:B:2")).unwrap(), vec![2, 4]);
    assert_eq!(invariant_degrees(&group("cyclic:7")).unwrap(), vec![7]);
    assert_eq!(invariant_degrees(&group("weyl:A:2")).unwrap(), vec![2, 3]);
    assert_eq!(invariant_degrees(&group("gmpn:3:1:2")).unwrap(), vec![3, 6]);
    assert_eq!(invariant_degrees(&group("weyl:G:2")).unwrap(), vec![2, 6]);
}

#[test]
fn non_reflection_group_has_no_degrees() {
    // the rotation by a quarter turn: Molien series is not a product of (1 - t^d)^{-1}
    let rot = reflection_harmonics::poly::SquareMatrix::from_int_rows(&[&[0, -1], &[1, 0]]);
    let g = ReflectionGroup::generate("rot4", 2, vec![rot], 100).unwrap();
    assert!(invariant_degrees(&g).is_err());
}

#[test]
fn invariant_basis_examples() {
    let b2 = group("weyl:B:2");
    let d2 = invariant_basis(&b2, Space::Contravariant, 2);
    assert!(same_span(&d2, &[xy(&[(&[2, 0], 1), (&[0, 2], 1)])]));
    assert!(invariant_basis(&b2, Space::Contravariant, 1).is_empty());
    let mu4 = group("cyclic:4");
    let x4 = MPoly::from_int_terms(Space::Contravariant, 1, &[(&[4], 1)]);
    assert_eq!(invariant_basis(&mu4, Space::Contravariant, 4), vec![x4]);
}

#[test]
fn ideal_examples() {
    let b2 = group("weyl:B:2");
    let f3 = ideal_component(&b2, Space::Contravariant, 3).unwrap();
    let oracle = [
        xy(&[(&[3, 0], 1), (&[1, 2], 1)]),
        xy(&[(&[2, 1], 1), (&[0, 3], 1)]),
    ];
    assert!(same_span(&f3, &oracle));
    assert!(ideal_component(&b2, Space::Contravariant, 0).unwrap().is_empty());
    let mu5 = group("cyclic:5");
    let f5 = ideal_component(&mu5, Space::Contravariant, 5).unwrap();
    assert_eq!(f5, vec![MPoly::from_int_terms(Space::Contravariant, 1, &[(&[5], 1)])]);
}

#[test]
fn harmonic_examples() {
    for e in [1u32, 4, 9] {
        let h = harmonic_basis(&group(&format!("cyclic:{e}")), HarmonicMethod::Perp).unwrap();
        for d in 0..e {
            assert_eq!(
                h.degree(d),
                &[MPoly::from_int_terms(Space::Contravariant, 1, &[(&[d as u16], 1)])]
            );
        }
        assert_eq!(h.total_dim(), e as usize);
    }
    let b2 = group("weyl:B:2");
    for method in [HarmonicMethod::Perp, HarmonicMethod::Derivative] {
        let h = harmonic_basis(&b2, method).unwrap();
        assert_eq!(h.dims(), vec![1, 2, 2, 2, 1]);
        let d3 = [
            xy(&[(&[2, 1], 3), (&[0, 3], -1)]),
            xy(&[(&[3, 0], 1), (&[1, 2], -3)]),
        ];
        assert!(same_span(h.degree(3), &d3));
    }
}

#[test]
fn projection_examples() {
    let b2 = group("weyl:B:2");
    let harm = Harmonics::new(&b2).unwrap();
    let p = xy(&[(&[3, 0], 1), (&[1, 2], -1)]);
    let (h, f) = harm.project(&p).unwrap();
    assert_eq!(h, xy(&[(&[3, 0], 1), (&[1, 2], -3)]).scale(&half()));
    assert_eq!(f, xy(&[(&[3, 0], 1), (&[1, 2], 1)]).scale(&half()));

    let in_h = xy(&[(&[2, 1], 3), (&[0, 3], -1)]);
    assert_eq!(harm.project(&in_h).unwrap(), (in_h.clone(), xy(&[])));
    let inv = xy(&[(&[2, 2], 1)]);
    assert_eq!(harm.project(&inv).unwrap(), (xy(&[]), inv.clone()));
}

#[test]
fn fixed_point_examples() {
    let b2 = group("weyl:B:2");
    let h = harmonic_basis(&b2, HarmonicMethod::Derivative).unwrap();
    let axes: Vec<usize> = (0..b2.reflections().len())
        .filter(|&k| b2.hyperplanes()[b2.reflections()[k].hyperplane].linear_form.num_terms() == 1)
        .collect();
    let sub = b2.reflection_subgroup(&axes).unwrap();
    let fixed = fixed_point_basis(&h, &sub).unwrap();
    assert_eq!(fixed.total_dim(), 2);
    assert!(same_span(fixed.degree(2), &[xy(&[(&[2, 0], 1), (&[0, 2], -1)])]));

    let whole = fixed_point_basis(&h, &b2).unwrap();
    assert_eq!(whole.dims(), vec![1]);

    let mu12 = group("cyclic:12");
    let h12 = harmonic_basis(&mu12, HarmonicMethod::Derivative).unwrap();
    let idx = (0..mu12.order()).find(|&i| *mu12.element(i).get(0, 0) == CycloScalar::zeta(4)).unwrap();
    let mu4 = mu12.subgroup("mu4", &[idx]).unwrap();
    let f = fixed_point_basis(&h12, &mu4).unwrap();
    let expected: Vec<usize> = (0..12).map(|d| usize::from(d % 4 == 0)).collect();
    assert_eq!(f.dims()[..], expected[..9]);
}
