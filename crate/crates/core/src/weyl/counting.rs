use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{int, CycloScalar, RatPoly, Rational};
use crate::error::{Error, Result};
use crate::group::{catalog, CatalogSpec, ReflectionGroup, DEFAULT_GROUP_CAP};
use crate::invariants::{fixed_point_basis, GradedBasis, Harmonics};
use crate::poly::{SquareMatrix, Substitution};

use super::roots::{CartanType, RootSystem};

type Root = Vec<Rational>;

/// A root system together with its Weyl group and the reflection of every root.
#[derive(Clone, Debug)]
pub struct RootDatum {
    system: RootSystem,
    group: ReflectionGroup,
    reflection_of: BTreeMap<Root, usize>,
}

impl RootDatum {
    pub fn new(cartan: CartanType) -> Result<Self> {
        let system = RootSystem::new(cartan);
        let group = catalog(&CatalogSpec::Weyl(cartan))?;
        let mut reflection_of = BTreeMap::new();
        for r in system.roots() {
            let idx = group
                .index_of(&system.reflection_matrix(&r))
                .ok_or_else(|| Error::verification("root reflection outside the Weyl group"))?;
            reflection_of.insert(r, idx);
        }
        if system.num_positive() != group.num_reflections() {
            return Err(Error::verification("positive roots and reflections disagree in number"));
        }
        Ok(RootDatum {
            system,
            group,
            reflection_of,
        })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.system.cartan_type()
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn weyl_group(&self) -> &ReflectionGroup {
        &self.group
    }

    pub fn roots(&self) -> Vec<Root> {
        self.system.roots()
    }

    pub fn positives(&self) -> &[Root] {
        self.system.positives()
    }

    pub fn simples(&self) -> &[Root] {
        self.system.simples()
    }

    /// `N = |Φ₊|`.
    pub fn num_positive(&self) -> usize {
        self.system.num_positive()
    }

    /// Index in the Weyl group of `s_α`.
    pub fn reflection_index(&self, alpha: &[Rational]) -> Option<usize> {
        self.reflection_of.get(alpha).copied()
    }

    pub fn reflection_of(&self, alpha: &[Rational]) -> Option<&SquareMatrix> {
        self.reflection_index(alpha).map(|i| self.group.element(i))
    }
}

pub fn build_root_datum(cartan: CartanType) -> Result<RootDatum> {
    RootDatum::new(cartan)
}

/// A closed subsystem `Φ′`, its positive and simple roots, and its Weyl group `W′ ⊆ W`.
#[derive(Clone, Debug)]
pub struct SubsystemData {
    pub roots: Vec<Root>,
    pub positives: Vec<Root>,
    pub simples: Vec<Root>,
    pub group: ReflectionGroup,
}

impl SubsystemData {
    /// `N′ = |Φ′₊|`.
    pub fn num_positive(&self) -> usize {
        self.positives.len()
    }
}

/// Closes `seeds` under the reflections they generate and extracts the simple system of the result.
pub fn subsystem(datum: &RootDatum, seeds: &[Root]) -> Result<SubsystemData> {
    let sys = datum.system();
    for s in seeds {
        if !sys.is_root(s) {
            return Err(Error::usage(format!("{s:?} is not a root of {}", datum.cartan_type())));
        }
    }
    let mut closed: BTreeSet<Root> = seeds.iter().cloned().collect();
    closed.extend(seeds.iter().map(|s| s.iter().map(|x| -x).collect::<Root>()));
    loop {
        let current: Vec<Root> = closed.iter().cloned().collect();
        let mut grew = false;
        for a in &current {
            for b in &current {
                grew |= closed.insert(sys.reflect(a, b));
            }
        }
        if !grew {
            break;
        }
    }
    let positives: Vec<Root> = datum.positives().iter().filter(|r| closed.contains(*r)).cloned().collect();
    let pos_set: BTreeSet<&Root> = positives.iter().collect();
    let simples: Vec<Root> = positives
        .iter()
        .filter(|r| {
            !positives
                .iter()
                .any(|b| pos_set.contains(&r.iter().zip(b).map(|(x, y)| x - y).collect::<Root>()))
        })
        .cloned()
        .collect();
    let w = datum.weyl_group();
    let refl: Vec<usize> = simples
        .iter()
        .map(|a| {
            w.reflection_index_of(datum.reflection_of(a).expect("roots have reflections"))
                .expect("root reflections are reflections")
        })
        .collect();
    let group = w.reflection_subgroup(&refl)?;
    if group.num_reflections() != positives.len() {
        return Err(Error::verification(format!(
            "subsystem with {} positive roots generates {} reflections",
            positives.len(),
            group.num_reflections()
        )));
    }
    let roots = closed.into_iter().collect();
    Ok(SubsystemData {
        roots,
        positives,
        simples,
        group,
    })
}

/// The stabiliser `C` of `Π′` in `W`.
#[derive(Clone, Debug)]
pub struct Complement {
    /// Indices in `W`.
    pub elements: Vec<usize>,
    pub group: ReflectionGroup,
}

impl Complement {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Scans `W` for the setwise stabiliser of `Π′` and checks `N_W(W′) = C ⋉ W′`.
pub fn complement_group(datum: &RootDatum, sub: &SubsystemData) -> Result<Complement> {
    let w = datum.weyl_group();
    let pi: BTreeSet<&Root> = sub.simples.iter().collect();
    let mut elements = Vec::new();
    let mut normaliser = 0usize;
    for (i, x) in w.elements().iter().enumerate() {
        if pi.iter().all(|a| pi.contains(&RootSystem::apply(x, a))) {
            elements.push(i);
        }
        if sub.group.is_normalized_by(x)? {
            normaliser += 1;
        }
    }
    let meet = elements.iter().filter(|&&i| sub.group.contains(w.element(i))).count();
    if meet != 1 || normaliser != elements.len() * sub.group.order() {
        return Err(Error::verification(format!(
            "N_W(W') has order {normaliser}, |C| = {}, |W'| = {}, |C ∩ W'| = {meet}",
            elements.len(),
            sub.group.order()
        )));
    }
    let group = w.subgroup("C", &elements)?;
    if group.order() != elements.len() {
        return Err(Error::verification("stabiliser of the simple system is not closed"));
    }
    Ok(Complement { elements, group })
}

/// A Frobenius twist `F₀` and a function `g` on the `F`-classes of `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistData {
    #[serde(rename = "F0")]
    pub f0: SquareMatrix,
    /// One value per `F`-class, in the order of [`Counting::f_classes`]; absent means `g ≡ 1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<CycloScalar>>,
}

impl TwistData {
    pub fn split(dim: usize) -> Self {
        TwistData {
            f0: SquareMatrix::identity(dim),
            g: None,
        }
    }
}

pub const TWIST_CONVENTION: &str = "cF0^-1 acts on polynomials through its matrix, contragrediently";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSummary {
    pub f0_order: usize,
    pub cbar_order: usize,
    /// `F`-classes of `C`, as indices in `W`.
    pub f_classes: Vec<Vec<usize>>,
    pub g: Vec<CycloScalar>,
    pub convention: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingReport {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "Nprime")]
    pub nprime: usize,
    #[serde(rename = "C_order")]
    pub c_order: usize,
    pub polynomial: RatPoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<TwistSummary>,
}

/// Everything needed to evaluate the counting polynomials for one `(W, W′)`.
#[derive(Clone, Debug)]
pub struct Counting<'a> {
    datum: &'a RootDatum,
    sub: &'a SubsystemData,
    complement: Complement,
    harmonics: Harmonics,
    fixed: GradedBasis,
}

fn matrix_order(m: &SquareMatrix, cap: usize) -> Result<usize> {
    let mut p = m.clone();
    for k in 1..=cap {
        if p.is_identity() {
            return Ok(k);
        }
        p = &p * m;
    }
    Err(Error::CapExceeded {
        what: "order of F0".into(),
        cap,
    })
}

impl<'a> Counting<'a> {
    pub fn new(datum: &'a RootDatum, sub: &'a SubsystemData) -> Result<Self> {
        let complement = complement_group(datum, sub)?;
        let harmonics = Harmonics::new(datum.weyl_group())?;
        let fixed = fixed_point_basis(harmonics.basis(), &sub.group)?;
        let span = datum.num_positive() - sub.num_positive();
        if fixed.max_degree().unwrap_or(0) as usize != span {
            return Err(Error::verification(format!(
                "H(W)^W' has top degree {:?}, expected N - N' = {span}",
                fixed.max_degree()
            )));
        }
        Ok(Counting {
            datum,
            sub,
            complement,
            harmonics,
            fixed,
        })
    }

    pub fn complement(&self) -> &Complement {
        &self.complement
    }

    pub fn harmonics(&self) -> &Harmonics {
        &self.harmonics
    }

    /// `H(W)^{W′}`.
    pub fn fixed(&self) -> &GradedBasis {
        &self.fixed
    }

    pub fn n(&self) -> usize {
        self.datum.num_positive()
    }

    pub fn nprime(&self) -> usize {
        self.sub.num_positive()
    }

    fn span(&self) -> usize {
        self.n() - self.nprime()
    }

    /// `q^{2(N-N′)} Σ_d c_d q^{-d}`.
    fn assemble(&self, coeffs: &[Rational]) -> RatPoly {
        let top = 2 * self.span();
        let mut out = vec![int(0); top + 1];
        for (d, c) in coeffs.iter().enumerate() {
            out[top - d] = c.clone();
        }
        RatPoly::new(out)
    }

    /// `W′C = N_W(W′)`.
    pub fn normaliser(&self) -> Result<ReflectionGroup> {
        let w = self.datum.weyl_group();
        let mut gens: Vec<usize> = self
            .sub
            .group
            .generators()
            .iter()
            .map(|g| w.index_of(g).expect("W' lies in W"))
            .collect();
        gens.extend(&self.complement.elements);
        w.subgroup("W'C", &gens)
    }

    /// The split count `q^{2(N-N′)} Σ_d dim H(W)^{W′C}_d q^{-d}`.
    pub fn split(&self) -> Result<RatPoly> {
        let fixed = fixed_point_basis(&self.fixed, &self.normaliser()?)?;
        let dims: Vec<Rational> = (0..=self.span() as u32).map(|d| int(fixed.dim(d) as i64)).collect();
        Ok(self.assemble(&dims))
    }

    fn check_twist(&self, f0: &SquareMatrix) -> Result<SquareMatrix> {
        let w = self.datum.weyl_group();
        if f0.dim() != w.dim() {
            return Err(Error::usage("F0 has the wrong size"));
        }
        if !w.is_normalized_by(f0)? || !self.sub.group.is_normalized_by(f0)? {
            return Err(Error::usage("F0 must normalise both W and W'"));
        }
        let f0_inv = f0.inverse()?;
        for &c in &self.complement.elements {
            let image = &(f0 * w.element(c)) * &f0_inv;
            if !self.complement.group.contains(&image) {
                return Err(Error::usage("F0 does not normalise C"));
            }
        }
        Ok(f0_inv)
    }

    /// Classes of `C` under `c ↦ x c F(x)⁻¹` with `F(x) = F₀ x F₀⁻¹`; each class is sorted and
    /// classes are ordered by their least element.
    pub fn f_classes(&self, f0: &SquareMatrix) -> Result<Vec<Vec<usize>>> {
        let f0_inv = self.check_twist(f0)?;
        let w = self.datum.weyl_group();
        let mut seen = BTreeSet::new();
        let mut classes = Vec::new();
        for &c in &self.complement.elements {
            if seen.contains(&c) {
                continue;
            }
            let mut class = BTreeSet::new();
            for &x in &self.complement.elements {
                let fx = &(f0 * w.element(x)) * &f0_inv;
                let y = &(w.element(x) * w.element(c)) * &fx.inverse()?;
                class.insert(w.index_of(&y).expect("C is closed"));
            }
            seen.extend(class.iter().copied());
            classes.push(class.into_iter().collect());
        }
        Ok(classes)
    }

    /// `q^{2(N-N′)} Σ_d ⟨H(W)^{W′}_d, γ_g⟩_{C̄} q^{-d}`.
    pub fn twisted(&self, twist: &TwistData) -> Result<RatPoly> {
        Ok(self.twisted_report(twist)?.polynomial)
    }

    pub fn twisted_report(&self, twist: &TwistData) -> Result<CountingReport> {
        let f0 = &twist.f0;
        let classes = self.f_classes(f0)?;
        let g = match &twist.g {
            Some(g) if g.len() != classes.len() => {
                return Err(Error::usage(format!(
                    "g has {} values but C has {} F-classes",
                    g.len(),
                    classes.len()
                )))
            }
            Some(g) => g.clone(),
            None => vec![CycloScalar::one(); classes.len()],
        };
        let w = self.datum.weyl_group();
        let class_of: BTreeMap<usize, usize> = classes
            .iter()
            .enumerate()
            .flat_map(|(k, cl)| cl.iter().map(move |&c| (c, k)))
            .collect();
        let mut gens = self.complement.group.generators().to_vec();
        gens.push(f0.clone());
        let cbar = ReflectionGroup::generate("Cbar", w.dim(), gens, DEFAULT_GROUP_CAP)?;
        let mut sums = vec![CycloScalar::zero(); self.span() + 1];
        for y in cbar.elements() {
            let Some(c) = w.index_of(&(y * f0)) else {
                continue;
            };
            let Some(&k) = class_of.get(&c) else {
                continue;
            };
            if g[k].is_zero() {
                continue;
            }
            let gamma = g[k].conj();
            let sigma = Substitution::contragredient(&y.inverse()?);
            for (d, s) in sums.iter_mut().enumerate() {
                *s += &(&self.fixed.trace(d as u32, &sigma) * &gamma);
            }
        }
        let scale = Rational::new(1.into(), (cbar.order() as i64).into());
        let coeffs = sums
            .iter()
            .map(|s| {
                s.scale(&scale)
                    .as_rational()
                    .cloned()
                    .ok_or_else(|| Error::domain(format!("count has a non-rational coefficient {s}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CountingReport {
            n: self.n(),
            nprime: self.nprime(),
            c_order: self.complement.order(),
            polynomial: self.assemble(&coeffs),
            twist: Some(TwistSummary {
                f0_order: matrix_order(f0, DEFAULT_GROUP_CAP)?,
                cbar_order: cbar.order(),
                f_classes: classes,
                g,
                convention: TWIST_CONVENTION.into(),
            }),
        })
    }

    /// Number of `F`-stable conjugates: `|F₀|` times the twisted count for `g ≡ 1`.
    pub fn f_stable_conjugates(&self, f0: &SquareMatrix) -> Result<RatPoly> {
        let report = self.twisted_report(&TwistData {
            f0: f0.clone(),
            g: None,
        })?;
        let order = report.twist.as_ref().map_or(1, |t| t.f0_order);
        Ok(report.polynomial.scale(&int(order as i64)))
    }

    pub fn split_report(&self) -> Result<CountingReport> {
        Ok(CountingReport {
            n: self.n(),
            nprime: self.nprime(),
            c_order: self.complement.order(),
            polynomial: self.split()?,
            twist: None,
        })
    }
}

pub fn count_split(datum: &RootDatum, sub: &SubsystemData) -> Result<RatPoly> {
    Counting::new(datum, sub)?.split()
}

pub fn count_twisted(datum: &RootDatum, sub: &SubsystemData, twist: &TwistData) -> Result<RatPoly> {
    Counting::new(datum, sub)?.twisted(twist)
}

/// A datum with seed roots, as read from JSON or named by a preset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsystemSpec {
    pub datum: String,
    pub seeds: Vec<Vec<i64>>,
}

impl SubsystemSpec {
    pub const PRESETS: [&'static str; 4] = ["C2:long-A1A1", "C3:A1C2", "C2:full", "G2:A2"];

    pub fn cartan_type(&self) -> Result<CartanType> {
        self.datum.parse()
    }

    pub fn resolve(&self) -> Result<(RootDatum, SubsystemData)> {
        let datum = RootDatum::new(self.cartan_type()?)?;
        let rank = datum.system().rank();
        let seeds = self
            .seeds
            .iter()
            .map(|s| {
                if s.len() != rank {
                    return Err(Error::usage(format!("seed {s:?} should have {rank} coordinates")));
                }
                Ok(s.iter().map(|&x| int(x)).collect())
            })
            .collect::<Result<Vec<Root>>>()?;
        let sub = subsystem(&datum, &seeds)?;
        Ok((datum, sub))
    }
}

impl FromStr for SubsystemSpec {
    type Err = Error;

    /// A preset name, `T:full` for any supported type, or inline JSON.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::usage(format!("bad subsystem JSON: {e}")));
        }
        let spec = |datum: &str, seeds: &[&[i64]]| SubsystemSpec {
            datum: datum.into(),
            seeds: seeds.iter().map(|r| r.to_vec()).collect(),
        };
        Ok(match s {
            "C2:long-A1A1" => spec("C2", &[&[2, 0], &[0, 2]]),
            "C3:A1C2" => spec("C3", &[&[2, 0, 0], &[0, 1, -1], &[0, 0, 2]]),
            "G2:A2" => spec("G2", &[&[0, 1], &[3, 1], &[3, 2]]),
            _ => match s.split_once(':') {
                Some((t, "full")) => {
                    let cartan: CartanType = t.parse()?;
                    let sys = RootSystem::new(cartan);
                    SubsystemSpec {
                        datum: cartan.to_string(),
                        seeds: sys
                            .simples()
                            .iter()
                            .map(|r| {
                                r.iter()
                                    .map(|x| i64::try_from(x.to_integer()).expect("integral simple roots"))
                                    .collect()
                            })
                            .collect(),
                    }
                }
                _ => {
                    return Err(Error::usage(format!(
                        "unknown subsystem {s:?}; expected one of {:?}, T:full or JSON",
                        Self::PRESETS
                    )))
                }
            },
        })
    }
}
