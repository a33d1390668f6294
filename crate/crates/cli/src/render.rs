use std::fmt::Write;

use reflection_harmonics::weyl::CountingReport;

use crate::{FakeDegreesOutput, GroupSummary, HarmonicsOutput};
use reflection_harmonics::factorisation::FactorisationReport;

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn group(g: &GroupSummary) -> String {
    let mut s = String::new();
    writeln!(s, "group {}", g.name).unwrap();
    writeln!(s, "dimension {}, order {}, reflections {}", g.dim, g.order, g.num_reflections).unwrap();
    writeln!(s, "hyperplanes:").unwrap();
    for h in &g.hyperplanes {
        writeln!(s, "  {}  e = {}", h.linear_form, h.e).unwrap();
    }
    writeln!(s, "reflections:").unwrap();
    for r in &g.reflections {
        writeln!(s, "  {}: {}  hyperplane {}  eigenvalue {}", r.index, r.matrix, r.hyperplane, r.eigenvalue).unwrap();
    }
    writeln!(s, "Pi = {}", g.pi).unwrap();
    match (&g.degrees, &g.poincare) {
        (Some(d), Some(p)) => {
            writeln!(s, "degrees {}", list(d)).unwrap();
            writeln!(s, "Poincare {}", p.display_in("t")).unwrap();
        }
        _ => writeln!(s, "not generated by reflections").unwrap(),
    }
    s
}

pub fn harmonics(h: &HarmonicsOutput) -> String {
    let mut s = String::new();
    writeln!(s, "harmonics of {} ({} method)", h.group, h.method).unwrap();
    writeln!(s, "degrees {}", list(&h.degrees)).unwrap();
    writeln!(s, "Poincare {}", h.poincare.display_in("t")).unwrap();
    for (d, basis) in h.basis.iter() {
        writeln!(s, "degree {d}:").unwrap();
        for p in basis {
            writeln!(s, "  {p}").unwrap();
        }
    }
    s
}

pub fn factorise(r: &FactorisationReport) -> String {
    let mut s = String::new();
    writeln!(s, "{} (order {}) over {} (order {})", r.group, r.group_order, r.subgroup, r.subgroup_order).unwrap();
    writeln!(s, "degrees {} / {}", list(&r.degrees), list(&r.subgroup_degrees)).unwrap();
    writeln!(s, "dim H^G' = {} (index {})", r.fixed_dim, r.index).unwrap();
    writeln!(s, "Poin H^G' = {}", r.fixed_poincare.display_in("t")).unwrap();
    writeln!(s, "Poin H = {}", r.poincare_lhs.display_in("t")).unwrap();
    writeln!(s, "Poin H' * Poin H^G' = {}", r.poincare_rhs.display_in("t")).unwrap();
    writeln!(s, "Poincare identity: {}", yes(r.poincare_equal)).unwrap();
    writeln!(s, "bijective: {}", yes(r.bijective)).unwrap();
    for b in &r.blocks {
        writeln!(s, "  degree {}: rank {} of {}", b.degree, b.rank, b.target_dim).unwrap();
    }
    let eq = r.equivariance_checks.iter().filter(|c| c.passed).count();
    writeln!(s, "equivariance: {eq} of {} normalisers", r.equivariance_checks.len()).unwrap();
    writeln!(s, "degree divisibility: {}", yes(r.divisibility.passed())).unwrap();
    let collinear = r.dual_scalars.iter().filter(|d| d.collinear).count();
    writeln!(s, "dual pairs collinear: {collinear} of {}", r.dual_scalars.len()).unwrap();
    s
}

pub fn fake_degrees(f: &FakeDegreesOutput) -> String {
    let mut s = String::new();
    writeln!(s, "{}: {} classes", f.group, f.table.classes.len()).unwrap();
    writeln!(s, "class sizes {}", list(&f.table.classes.iter().map(|c| c.size).collect::<Vec<_>>())).unwrap();
    for (i, (row, fake)) in f.table.characters.iter().zip(&f.fake_degrees).enumerate() {
        writeln!(s, "chi_{i}: [{}]  fake degree {}", list(row), fake.display_in("t")).unwrap();
    }
    if let Some(r) = &f.fixed_points {
        writeln!(s, "multiplicities in Ind(1): {}", list(&r.multiplicities)).unwrap();
        writeln!(s, "character sum   {}", r.character_sum.display_in("t")).unwrap();
        writeln!(s, "fixed space     {}", r.fixed_space.display_in("t")).unwrap();
        writeln!(s, "Molien quotient {}", r.molien_quotient.display_in("t")).unwrap();
        writeln!(s, "agree: {}", yes(r.agree)).unwrap();
    }
    s
}

pub fn count(c: &CountingReport) -> String {
    let mut s = String::new();
    writeln!(s, "N = {}, N' = {}, |C| = {}", c.n, c.nprime, c.c_order).unwrap();
    if let Some(t) = &c.twist {
        writeln!(s, "|F0| = {}, |Cbar| = {}, F-classes {}", t.f0_order, t.cbar_order, t.f_classes.len()).unwrap();
        for (k, (cl, g)) in t.f_classes.iter().zip(&t.g).enumerate() {
            let members: Vec<String> = cl.iter().map(|i| i.to_string()).collect();
            writeln!(s, "  F-class {k}: W elements {}  g = {g}", members.join(", ")).unwrap();
        }
        writeln!(s, "convention: {}", t.convention).unwrap();
    }
    writeln!(s, "{}", c.polynomial.display_in("q")).unwrap();
    s
}
