//! End-to-end acceptance checks. Each criterion prints one PASS or FAIL line;
//! the process exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reflection_harmonics::arith::{CycloScalar, RatPoly, Rational};
use reflection_harmonics::characters::{
    character_table, conjugacy_classes, fake_degrees, induced_trivial_multiplicities, verify_fake_degree_formula,
};
use reflection_harmonics::factorisation::{divisibility, Factorisation};
use reflection_harmonics::group::{catalog, standard_fixtures, CatalogSpec, ReflectionGroup};
use reflection_harmonics::invariants::{
    harmonic_basis, invariant_degrees, poincare_from_degrees, GradedBasis, HarmonicMethod, Harmonics,
};
use reflection_harmonics::linalg::Echelon;
use reflection_harmonics::poly::{act, monomials_of_degree, pairing, MPoly, Monomial, Space, SquareMatrix};
use reflection_harmonics::weyl::{Counting, SubsystemSpec, TwistData};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: reflection_harmonics::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn group(name: &str) -> ReflectionGroup {
    catalog(&name.parse::<CatalogSpec>().unwrap()).unwrap()
}

fn contra(nvars: usize, terms: &[(&[u16], i64)]) -> MPoly {
    MPoly::from_int_terms(Space::Contravariant, nvars, terms)
}

fn half(n: i64) -> CycloScalar {
    CycloScalar::from_rational(Rational::new(n.into(), 2.into()))
}

fn graded(nvars: usize, polys: &[MPoly]) -> GradedBasis {
    let mut spans: BTreeMap<u32, Vec<MPoly>> = BTreeMap::new();
    for p in polys {
        spans.entry(p.homogeneous_degree().unwrap()).or_default().push(p.clone());
    }
    GradedBasis::from_spanning(Space::Contravariant, nvars, spans)
}

fn same_span(a: &GradedBasis, b: &GradedBasis) -> bool {
    a.dims() == b.dims() && b.all().all(|p| a.contains(p))
}

fn rank(polys: &[MPoly]) -> usize {
    Echelon::from_polys(polys).rank()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `B₂` with the subgroup generated by the two coordinate sign changes.
fn b2_pair() -> (ReflectionGroup, ReflectionGroup) {
    let g = group("weyl:B:2");
    let axes: Vec<usize> = (0..g.num_reflections())
        .filter(|&k| g.hyperplanes()[g.reflections()[k].hyperplane].linear_form.num_terms() == 1)
        .collect();
    let sub = g.reflection_subgroup(&axes).unwrap();
    (g, sub)
}

fn cyclic_pair(e: u32, d: u32) -> (ReflectionGroup, ReflectionGroup) {
    let g = group(&format!("cyclic:{e}"));
    let gens: Vec<usize> = if d == 1 {
        Vec::new()
    } else {
        vec![g.reflection_index_of(&SquareMatrix::scalar(1, CycloScalar::zeta(d))).unwrap()]
    };
    let sub = g.reflection_subgroup(&gens).unwrap();
    (g, sub)
}

fn weyl_pair(preset: &str) -> (ReflectionGroup, ReflectionGroup) {
    let (datum, sub) = preset.parse::<SubsystemSpec>().unwrap().resolve().unwrap();
    (datum.weyl_group().clone(), sub.group)
}

/// `G(3,3,2) ⊂ G(3,1,2)`, generated by the order-two antidiagonal reflections.
fn g312_pair() -> (ReflectionGroup, ReflectionGroup) {
    let g = group("gmpn:3:1:2");
    let minus_one = CycloScalar::from_int(-1);
    let anti: Vec<usize> = (0..g.num_reflections())
        .filter(|&k| g.reflections()[k].eigenvalue == minus_one)
        .collect();
    let sub = g.reflection_subgroup(&anti).unwrap();
    (g, sub)
}

fn factorisation_pairs() -> Vec<(&'static str, ReflectionGroup, ReflectionGroup)> {
    let (b2, b2s) = b2_pair();
    let (c3, c3s) = weyl_pair("C3:A1C2");
    let (g2, g2s) = weyl_pair("G2:A2");
    let (m12, m4) = cyclic_pair(12, 4);
    let (g312, g332) = g312_pair();
    vec![
        ("B2 / A1xA1", b2, b2s),
        ("C3 / A1xC2", c3, c3s),
        ("G2 / A2", g2, g2s),
        ("mu12 / mu4", m12, m4),
        ("G(3,1,2) / G(3,3,2)", g312, g332),
    ]
}

fn criterion_1() -> Check {
    let (g, sub) = b2_pair();
    let f = lib(Factorisation::new(&g, &sub))?;
    let xy = contra(2, &[(&[3, 1], 1), (&[1, 3], -1)]);
    ensure(g.skew_product().ratio_to(&xy).is_some(), || format!("Pi = {}", g.skew_product()))?;
    let dims = f.harmonics().basis().dims();
    ensure(dims == [1, 2, 2, 2, 1], || format!("H dims {dims:?}"))?;
    let one = contra(2, &[(&[0, 0], 1)]);
    let x = contra(2, &[(&[1, 0], 1)]);
    let y = contra(2, &[(&[0, 1], 1)]);
    let xy1 = contra(2, &[(&[1, 1], 1)]);
    let sub_h = graded(2, &[one.clone(), x.clone(), y.clone(), xy1.clone()]);
    ensure(same_span(f.sub_harmonics().basis(), &sub_h), || "H' != span{1, X, Y, XY}".into())?;
    let k = contra(2, &[(&[2, 0], 1), (&[0, 2], -1)]);
    ensure(same_span(f.fixed(), &graded(2, &[one, k.clone()])), || "H^G' != span{1, X^2 - Y^2}".into())?;
    let expected = [
        (x, MPoly::from_int_terms(Space::Contravariant, 2, &[(&[3, 0], 1), (&[1, 2], -3)]).scale(&half(1))),
        (y, MPoly::from_int_terms(Space::Contravariant, 2, &[(&[2, 1], 3), (&[0, 3], -1)]).scale(&half(1))),
        (xy1, xy),
    ];
    for (h, want) in expected {
        let got = lib(f.xi(&h, &k))?;
        ensure(got == want, || format!("xi({h} (x) {k}) = {got}, expected {want}"))?;
    }
    Ok(())
}

fn criterion_2() -> Check {
    for e in 1..=12u32 {
        for d in (1..=e).filter(|d| e % d == 0) {
            let (g, sub) = cyclic_pair(e, d);
            let f = lib(Factorisation::new(&g, &sub))?;
            let x = |k: u32| contra(1, &[(&[k as u16], 1)]);
            let want = graded(1, &(0..e / d).map(|j| x(j * d)).collect::<Vec<_>>());
            ensure(same_span(f.fixed(), &want), || format!("mu{e}/mu{d}: H^G' = {:?}", f.fixed().dims()))?;
            for i in 0..d {
                for j in 0..e / d {
                    let got = lib(f.xi(&x(i), &x(j * d)))?;
                    ensure(got == x(i + j * d), || format!("mu{e}/mu{d}: xi(X^{i}, X^{}) = {got}", j * d))?;
                }
            }
        }
    }
    Ok(())
}

fn criterion_3() -> Check {
    for (name, g, sub) in factorisation_pairs() {
        let report = lib(lib(Factorisation::new(&g, &sub))?.verify())?;
        ensure(report.bijective, || format!("{name}: xi not bijective"))?;
        ensure(report.poincare_equal, || format!("{name}: Poincare identity fails"))?;
        ensure(report.fixed_dim * sub.order() == g.order(), || {
            format!("{name}: dim H^G' = {} but |G|/|G'| = {}", report.fixed_dim, g.order() / sub.order())
        })?;
    }
    Ok(())
}

fn criterion_4() -> Check {
    for spec in standard_fixtures() {
        let g = lib(catalog(&spec))?;
        let perp = lib(harmonic_basis(&g, HarmonicMethod::Perp))?;
        let deriv = lib(harmonic_basis(&g, HarmonicMethod::Derivative))?;
        ensure(perp == deriv, || format!("{spec}: perp and derivative bases differ"))?;
        let degrees = lib(invariant_degrees(&g))?;
        let want = poincare_from_degrees(&degrees);
        ensure(perp.poincare() == want, || format!("{spec}: Poin H = {:?}", perp.dims()))?;
        ensure(perp.total_dim() == g.order(), || format!("{spec}: dim H = {}", perp.total_dim()))?;
    }
    Ok(())
}

fn criterion_5() -> Check {
    let mut failures = Vec::new();
    let mut check = |ok: bool, what: String| {
        if !ok {
            failures.push(what);
        }
    };

    let (datum, sub) = "C2:long-A1A1".parse::<SubsystemSpec>().unwrap().resolve().unwrap();
    let c = lib(Counting::new(&datum, &sub))?;
    let w = datum.weyl_group();
    check(c.n() == 4 && c.nprime() == 2, format!("Sp4: N = {}, N' = {}", c.n(), c.nprime()));
    check(c.complement().order() == 2, format!("Sp4: |C| = {}", c.complement().order()));
    check(lib(c.normaliser())?.order() == w.order(), "Sp4: W'C != W".into());
    let split = lib(c.split())?;
    check(split == RatPoly::from_ints(&[0, 0, 0, 0, 1]), format!("Sp4: count {}", split.display_in("q")));

    let (datum, sub) = "C3:A1C2".parse::<SubsystemSpec>().unwrap().resolve().unwrap();
    let c = lib(Counting::new(&datum, &sub))?;
    let w = datum.weyl_group();
    check(c.n() == 9, format!("Sp6: N = {}", c.n()));
    check(c.nprime() == 5, format!("Sp6: N' = {}", c.nprime()));
    check(c.complement().order() == 2, format!("Sp6: |C| = {}, expected 2", c.complement().order()));
    let classes = conjugacy_classes(w);
    let table = lib(character_table(w))?;
    let mult = lib(induced_trivial_multiplicities(w, &classes, &table, &lib(c.normaliser())?))?;
    let nonzero: Vec<usize> = (0..mult.len()).filter(|&i| mult[i] != 0).collect();
    let rho = nonzero.iter().copied().find(|&i| i != 0);
    let sign_changes: Vec<usize> = (0..8)
        .map(|bits: i64| {
            let diag = (0..3).map(|k| CycloScalar::from_int(if bits >> k & 1 == 1 { -1 } else { 1 })).collect();
            classes.class_of[w.index_of(&SquareMatrix::diagonal(diag)).unwrap()]
        })
        .collect();
    let is_one_plus_rho = mult[0] == 1
        && nonzero.len() == 2
        && rho.is_some_and(|r| {
            mult[r] == 1
                && table.degrees[r] == 2
                && sign_changes.iter().all(|&k| table.characters[r][k] == CycloScalar::from_int(2))
        });
    check(is_one_plus_rho, format!("Sp6: Ind(1) multiplicities {mult:?}"));
    if let Some(r) = rho {
        let fake = lib(fake_degrees(w, &classes, &table, c.harmonics()))?;
        let want = RatPoly::from_ints(&[0, 0, 1, 0, 1]);
        check(fake[r] == want, format!("Sp6: fake degree of rho {}", fake[r].display_in("t")));
    }
    let split = lib(c.split())?;
    let want = RatPoly::from_ints(&[1, 0, 1, 0, 1]);
    check(split == want, format!("Sp6: count {}, expected 1 + q^2 + q^4", split.display_in("q")));
    ensure(failures.is_empty(), || failures.join("; "))
}

fn criterion_6() -> Check {
    for (name, g, sub) in factorisation_pairs() {
        let r = lib(verify_fake_degree_formula(&g, &sub))?;
        ensure(r.agree, || {
            format!(
                "{name}: characters {}, fixed space {}, Molien {}",
                r.character_sum.display_in("t"),
                r.fixed_space.display_in("t"),
                r.molien_quotient.display_in("t")
            )
        })?;
    }
    Ok(())
}

const PROPERTY_GROUPS: [&str; 8] = [
    "cyclic:6",
    "weyl:B:2",
    "weyl:G:2",
    "weyl:A:3",
    "weyl:B:3",
    "gmpn:3:1:2",
    "gmpn:4:2:2",
    "gmpn:3:3:3",
];

fn random_poly(rng: &mut ChaCha8Rng, space: Space, nvars: usize, d: u32) -> MPoly {
    MPoly::from_terms(
        space,
        nvars,
        monomials_of_degree(nvars, d)
            .into_iter()
            .map(|m| (m, CycloScalar::from_int(rng.gen_range(-5..=5))))
            .collect::<Vec<(Monomial, CycloScalar)>>(),
    )
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in PROPERTY_GROUPS {
        let g = group(name);
        let l = g.dim();
        let pi = g.skew_product();
        for x in g.elements() {
            let moved = lib(act(x, pi))?;
            ensure(moved == pi.scale(&x.det()), || format!("{name}: Pi is not skew under {x}"))?;
        }
        let h = lib(Harmonics::new(&g))?;
        let n = h.top_degree();
        for d in 0..=n {
            let co = h.covariant_basis().degree(d);
            let contra = h.basis().degree(d);
            let rows = co
                .iter()
                .map(|a| contra.iter().map(|p| lib(pairing(a, p))).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            let full = co.len() == contra.len() && (rows.is_empty() || lib(SquareMatrix::from_rows(rows))?.rank() == co.len());
            ensure(full, || format!("{name}: pairing degenerate in degree {d}"))?;

            let ideal = h.ideal(d).cloned().unwrap_or_default();
            let total = binomial(d as usize + l - 1, l - 1);
            ensure(ideal.rank() + contra.len() == total, || {
                format!("{name}: dim F_{d} + dim H_{d} = {} + {} != {total}", ideal.rank(), contra.len())
            })?;
            let mut joint = ideal.clone();
            for p in contra {
                joint.insert_poly(p);
            }
            ensure(joint.rank() == total, || format!("{name}: H_{d} meets F_{d}"))?;
        }
        for _ in 0..100 {
            let x = &g.elements()[rng.gen_range(0..g.order())];
            let d = rng.gen_range(0..=4);
            let a = random_poly(&mut rng, Space::Covariant, l, d);
            let p = random_poly(&mut rng, Space::Contravariant, l, d);
            let before = lib(pairing(&a, &p))?;
            let after = lib(pairing(&lib(act(x, &a))?, &lib(act(x, &p))?))?;
            ensure(before == after, || format!("{name}: pairing not invariant under {x}"))?;
        }
        let degrees = lib(invariant_degrees(&g))?;
        let r = g.num_reflections().min(8);
        let mut subsets: Vec<Vec<usize>> = (0..r).map(|i| vec![i]).collect();
        subsets.extend((0..r).flat_map(|i| (i + 1..r).map(move |j| vec![i, j])));
        for s in subsets {
            let sub = lib(g.reflection_subgroup(&s))?;
            let sub_degrees = lib(invariant_degrees(&sub))?;
            ensure(divisibility(&degrees, &sub_degrees).passed(), || {
                format!("{name}: divisibility fails for reflections {s:?}")
            })?;
        }
    }
    for (name, g, sub) in factorisation_pairs() {
        let ok = divisibility(&lib(invariant_degrees(&g))?, &lib(invariant_degrees(&sub))?).passed();
        ensure(ok, || format!("{name}: divisibility fails"))?;
    }
    Ok(())
}

fn criterion_8() -> Check {
    let (g, sub) = b2_pair();
    let f = lib(Factorisation::new(&g, &sub))?;
    let n = f.harmonics().top_degree();
    for d in 0..=n {
        let images = f
            .harmonics()
            .covariant_basis()
            .degree(d)
            .iter()
            .map(|h| lib(f.d_map(h)))
            .collect::<Result<Vec<_>, _>>()?;
        for p in &images {
            ensure(f.harmonics().is_harmonic(p) && p.homogeneous_degree() == Some(n - d), || {
                format!("d_map sends degree {d} to {p}")
            })?;
        }
        ensure(rank(&images) == f.harmonics().basis().dim(n - d), || format!("d_map not bijective in degree {d}"))?;
    }
    let e_images = f
        .covariant_fixed()
        .all()
        .map(|a| lib(f.e_map(a)))
        .collect::<Result<Vec<_>, _>>()?;
    ensure(e_images.iter().all(|k| f.fixed().contains(k)), || "e_map leaves H^G'".into())?;
    ensure(rank(&e_images) == f.fixed().total_dim(), || "e_map not onto H^G'".into())?;
    for s in lib(f.dual_scalars())? {
        ensure(s.collinear && s.scalar.as_ref().is_some_and(|c| !c.is_zero()), || {
            format!("dual pair ({}, {}) not collinear", s.h, s.a)
        })?;
    }
    let x = MPoly::var(Space::Covariant, 2, 0);
    let one = MPoly::one(Space::Covariant, 2);
    let s = lib(f.dual_compare(&x, &one))?;
    ensure(s.scalar == Some(half(3)), || format!("scalar for (x, 1) is {:?}", s.scalar))
}

fn criterion_9() -> Check {
    for name in SubsystemSpec::PRESETS {
        let (datum, sub) = name.parse::<SubsystemSpec>().unwrap().resolve().unwrap();
        let c = lib(Counting::new(&datum, &sub))?;
        let split = lib(c.split())?;
        let rank = datum.system().rank();
        let identity = TwistData::split(rank);
        let twisted = lib(c.twisted(&identity))?;
        ensure(twisted == split, || format!("{name}: twisted {} vs split", twisted.display_in("q")))?;
        let classes = lib(c.f_classes(&identity.f0))?;
        let mut total = RatPoly::zero();
        for k in 0..classes.len() {
            let g = (0..classes.len()).map(|j| CycloScalar::from_int(i64::from(j == k))).collect();
            total = &total + &lib(c.twisted(&TwistData { f0: identity.f0.clone(), g: Some(g) }))?;
        }
        ensure(total == split, || format!("{name}: F-class sum {}", total.display_in("q")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("B2 fixture", criterion_1),
        ("cyclic fixtures", criterion_2),
        ("factorisation pairs", criterion_3),
        ("perp and derivative harmonics", criterion_4),
        ("counting fixtures", criterion_5),
        ("fixed-point Poincare three ways", criterion_6),
        ("property suites", criterion_7),
        ("duality", criterion_8),
        ("twisted consistency", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {} ({name}): PASS [{secs:.1}s]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{secs:.1}s] {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
