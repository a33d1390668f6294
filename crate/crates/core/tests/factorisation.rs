use reflection_harmonics::arith::{CycloScalar, RatPoly, Rational};
use reflection_harmonics::factorisation::{divisibility, Factorisation};
use reflection_harmonics::group::{catalog, CatalogSpec, ReflectionGroup};
use reflection_harmonics::poly::{MPoly, Space, SquareMatrix};

fn group(s: &str) -> ReflectionGroup {
    catalog(&s.parse::<CatalogSpec>().unwrap()).unwrap()
}

fn contra(terms: &[(&[u16], i64)]) -> MPoly {
    MPoly::from_int_terms(Space::Contravariant, 2, terms)
}

fn co(terms: &[(&[u16], i64)]) -> MPoly {
    MPoly::from_int_terms(Space::Covariant, 2, terms)
}

fn q(n: i64, d: i64) -> CycloScalar {
    CycloScalar::from_rational(Rational::new(n.into(), d.into()))
}

fn b2_pair() -> (ReflectionGroup, ReflectionGroup) {
    let g = group("weyl:B:2");
    let axes: Vec<usize> = (0..g.reflections().len())
        .filter(|&k| g.hyperplanes()[g.reflections()[k].hyperplane].linear_form.num_terms() == 1)
        .collect();
    let sub = g.reflection_subgroup(&axes).unwrap();
    (g, sub)
}

fn cyclic_pair(e: u32, d: u32) -> (ReflectionGroup, ReflectionGroup) {
    let g = group(&format!("cyclic:{e}"));
    let gen = SquareMatrix::scalar(1, CycloScalar::zeta(d));
    let refl: Vec<usize> = g.reflection_index_of(&gen).into_iter().collect();
    let sub = g.reflection_subgroup(&refl).unwrap();
    (g, sub)
}

#[test]
fn b2_xi_values() {
    let (g, sub) = b2_pair();
    let f = Factorisation::new(&g, &sub).unwrap();
    let k = contra(&[(&[2, 0], 1), (&[0, 2], -1)]);
    let x = contra(&[(&[1, 0], 1)]);
    let y = contra(&[(&[0, 1], 1)]);
    let xy = contra(&[(&[1, 1], 1)]);
    assert_eq!(f.xi(&x, &k).unwrap(), contra(&[(&[3, 0], 1), (&[1, 2], -3)]).scale(&q(1, 2)));
    assert_eq!(f.xi(&y, &k).unwrap(), contra(&[(&[2, 1], 3), (&[0, 3], -1)]).scale(&q(1, 2)));
    assert_eq!(f.xi(&xy, &k).unwrap(), contra(&[(&[3, 1], 1), (&[1, 3], -1)]));
    assert!(f.xi(&contra(&[(&[2, 0], 1)]), &k).is_err());
    assert!(f.xi(&x, &x).is_err());
}

#[test]
fn cyclic_xi_is_multiplication() {
    let (g, sub) = cyclic_pair(12, 4);
    let f = Factorisation::new(&g, &sub).unwrap();
    let x = |k: u16| MPoly::from_int_terms(Space::Contravariant, 1, &[(&[k], 1)]);
    for a in 0..4 {
        for b in 0..3 {
            assert_eq!(f.xi(&x(a), &x(4 * b)).unwrap(), x(a + 4 * b));
        }
    }
}

#[test]
fn verify_examples() {
    let (g, sub) = b2_pair();
    let report = Factorisation::new(&g, &sub).unwrap().verify().unwrap();
    assert!(report.bijective && report.passed());
    assert_eq!(report.poincare_rhs, &RatPoly::from_ints(&[1, 2, 1]) * &RatPoly::from_ints(&[1, 0, 1]));
    let trivial = g.reflection_subgroup(&[]).unwrap();
    let all: Vec<usize> = (0..g.reflections().len()).collect();
    let whole = g.reflection_subgroup(&all).unwrap();
    for sub in [&trivial, &whole] {
        let r = Factorisation::new(&g, sub).unwrap().verify().unwrap();
        assert!(r.passed(), "{}", sub.name());
    }
    let r = Factorisation::new(&g, &whole).unwrap().verify().unwrap();
    assert_eq!(r.fixed_poincare, RatPoly::one());
}

#[test]
fn poincare_cyclic() {
    for (e, d) in [(12, 4), (6, 2), (9, 3)] {
        let (g, sub) = cyclic_pair(e, d);
        let (lhs, rhs) = Factorisation::new(&g, &sub).unwrap().poincare();
        assert_eq!(lhs, RatPoly::q_integer(e as usize));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn divisibility_examples() {
    let r = divisibility(&[2, 4], &[2, 2]);
    assert!(r.divides && r.counts_ok);
    assert_eq!(r.counts.iter().find(|c| c.n == 4).map(|c| (c.sub_count, c.count)), Some((0, 1)));
    let same = divisibility(&[2, 4], &[2, 4]);
    assert!(same.passed());
    assert!(same.counts.iter().all(|c| c.sub_count == c.count));
    assert!(!divisibility(&[2, 2], &[3]).divides);
}

#[test]
fn duality_examples() {
    let (g, sub) = b2_pair();
    let f = Factorisation::new(&g, &sub).unwrap();
    let one = co(&[(&[0, 0], 1)]);
    assert_eq!(&f.d_map(&one).unwrap(), g.skew_product());
    assert_eq!(f.d_map(&co(&[(&[1, 1], 1)])).unwrap(), contra(&[(&[2, 0], 3), (&[0, 2], -3)]));
    assert_eq!(f.e_map(&one).unwrap(), contra(&[(&[2, 0], 3), (&[0, 2], -3)]));

    let c1 = f.dual_compare(&co(&[(&[1, 1], 1)]), &one).unwrap();
    assert_eq!(c1.lhs, contra(&[(&[2, 0], 3), (&[0, 2], -3)]));
    assert_eq!(c1.scalar, Some(CycloScalar::one()));
    let c2 = f.dual_compare(&co(&[(&[1, 0], 1)]), &one).unwrap();
    assert_eq!(c2.rhs, contra(&[(&[2, 1], 3), (&[0, 3], -1)]));
    assert_eq!(c2.scalar, Some(q(3, 2)));
}

#[test]
fn cyclic_duality() {
    let (g, sub) = cyclic_pair(6, 2);
    let f = Factorisation::new(&g, &sub).unwrap();
    let one = MPoly::from_int_terms(Space::Covariant, 1, &[(&[0], 1)]);
    // (e-1)!/(e-d)! X^{e-d} with e = 6, d = 2
    assert_eq!(f.e_map(&one).unwrap(), MPoly::from_int_terms(Space::Contravariant, 1, &[(&[4], 5)]));
    let x2 = MPoly::from_int_terms(Space::Covariant, 1, &[(&[2], 1)]);
    assert_eq!(f.d_map(&x2).unwrap(), MPoly::from_int_terms(Space::Contravariant, 1, &[(&[3], 20)]));
}

#[test]
fn equivariance_examples() {
    let (g, sub) = b2_pair();
    let f = Factorisation::new(&g, &sub).unwrap();
    let swap = SquareMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
    assert!(f.equivariance(&swap).unwrap());
    assert!(f.equivariance(&SquareMatrix::identity(2)).unwrap());
    assert!(f.equivariance(&SquareMatrix::scalar(2, CycloScalar::from_int(3))).unwrap());
    let k = contra(&[(&[2, 0], 1), (&[0, 2], -1)]);
    let y = contra(&[(&[0, 1], 1)]);
    assert_eq!(
        f.xi(&y, &k.scale(&q(-1, 1))).unwrap(),
        contra(&[(&[2, 1], 3), (&[0, 3], -1)]).scale(&q(-1, 2))
    );
    let shear = SquareMatrix::from_int_rows(&[&[1, 1], &[0, 1]]);
    assert!(f.equivariance(&shear).is_err());
}
