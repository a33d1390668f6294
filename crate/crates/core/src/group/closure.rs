use std::collections::{HashMap, VecDeque};

use num_integer::Integer;

use crate::arith::{CycloScalar, Rational};
use crate::error::{Error, Result};
use crate::poly::{matrix, MPoly, Space, SquareMatrix};

pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// A reflecting hyperplane together with its pointwise stabilizer order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    /// `L_H ∈ V*`, scaled so its first nonzero coefficient is 1.
    pub linear_form: MPoly,
    /// The root line `im(r - 1) ⊂ V` as a covariant linear form, same scaling rule.
    pub root: MPoly,
    /// Number of group elements fixing the hyperplane pointwise.
    pub e: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflection {
    /// Index into [`ReflectionGroup::elements`].
    pub element: usize,
    /// Index into [`ReflectionGroup::hyperplanes`].
    pub hyperplane: usize,
    /// The non-unit eigenvalue, i.e. the determinant.
    pub eigenvalue: CycloScalar,
}

/// A finite matrix group with its element list and reflection data.
///
/// Although named for reflection groups, any finite subgroup of `GL(V)` is
/// accepted; for a group not generated by reflections the hyperplane data
/// simply describes the reflections it happens to contain.
#[derive(Clone, Debug)]
pub struct ReflectionGroup {
    name: String,
    dim: usize,
    field_order: u32,
    generators: Vec<SquareMatrix>,
    elements: Vec<SquareMatrix>,
    inverses: Vec<usize>,
    index: HashMap<Vec<Rational>, usize>,
    reflections: Vec<Reflection>,
    hyperplanes: Vec<Hyperplane>,
    pi: MPoly,
    varpi: MPoly,
}

fn normalized_form(space: Space, coeffs: &[CycloScalar]) -> MPoly {
    let n = coeffs.len();
    let lead = coeffs.iter().find(|c| !c.is_zero()).expect("nonzero linear form");
    let inv = lead.inv().expect("nonzero");
    MPoly::from_terms(
        space,
        n,
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (crate::poly::Monomial::var(n, i), c * &inv)),
    )
}

impl ReflectionGroup {
    /// Breadth-first closure of `gens` inside `GL_dim`.
    ///
    /// Elements are numbered in discovery order, starting with the identity;
    /// each new element is `g·s` for an earlier `g` and a generator `s`, in
    /// generator order.
    pub fn generate(name: impl Into<String>, dim: usize, gens: Vec<SquareMatrix>, cap: usize) -> Result<Self> {
        for g in &gens {
            if g.dim() != dim {
                return Err(Error::usage(format!(
                    "generator of size {} in a group of dimension {dim}",
                    g.dim()
                )));
            }
            if g.det().is_zero() {
                return Err(Error::domain("singular generator"));
            }
        }
        let field_order = gens.iter().fold(1u32, |acc, g| acc.lcm(&g.field_order()));
        let mut elements = vec![SquareMatrix::identity(dim)];
        let mut index = HashMap::new();
        index.insert(elements[0].key_at(field_order), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in &gens {
                let prod = &elements[i] * s;
                let key = prod.key_at(field_order);
                if index.contains_key(&key) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "group closure".into(),
                        cap,
                    });
                }
                index.insert(key, elements.len());
                queue.push_back(elements.len());
                elements.push(prod);
            }
        }
        let mut group = ReflectionGroup {
            name: name.into(),
            dim,
            field_order,
            generators: gens,
            elements,
            inverses: Vec::new(),
            index,
            reflections: Vec::new(),
            hyperplanes: Vec::new(),
            pi: MPoly::one(Space::Contravariant, dim),
            varpi: MPoly::one(Space::Covariant, dim),
        };
        group.inverses = (0..group.order())
            .map(|i| {
                let inv = group.elements[i].inverse().expect("group elements are invertible");
                group.index_of(&inv).expect("closure contains inverses")
            })
            .collect();
        group.detect_reflections();
        Ok(group)
    }

    fn detect_reflections(&mut self) {
        let id = SquareMatrix::identity(self.dim);
        let mut hyperplanes: Vec<Hyperplane> = Vec::new();
        let mut reflections = Vec::new();
        for (i, g) in self.elements.iter().enumerate() {
            let diff = g - &id;
            if diff.rank() != 1 {
                continue;
            }
            let row = diff.rows().into_iter().find(|r| r.iter().any(|c| !c.is_zero())).unwrap();
            let col = (0..self.dim).map(|j| diff.col(j)).find(|c| c.iter().any(|x| !x.is_zero())).unwrap();
            let form = normalized_form(Space::Contravariant, &row);
            let h = match hyperplanes.iter().position(|h| h.linear_form == form) {
                Some(h) => h,
                None => {
                    hyperplanes.push(Hyperplane {
                        linear_form: form,
                        root: normalized_form(Space::Covariant, &col),
                        e: 0,
                    });
                    hyperplanes.len() - 1
                }
            };
            reflections.push(Reflection {
                element: i,
                hyperplane: h,
                eigenvalue: g.det(),
            });
        }
        for h in &mut hyperplanes {
            let coeffs: Vec<CycloScalar> = (0..self.dim)
                .map(|i| h.linear_form.coeff(&crate::poly::Monomial::var(self.dim, i)))
                .collect();
            let basis = matrix::kernel(&[coeffs], self.dim);
            h.e = self
                .elements
                .iter()
                .filter(|g| basis.iter().all(|v| g.apply(v) == *v))
                .count();
        }
        let mut pi = MPoly::one(Space::Contravariant, self.dim);
        let mut varpi = MPoly::one(Space::Covariant, self.dim);
        for h in &hyperplanes {
            pi = &pi * &h.linear_form.pow(h.e as u32 - 1);
            varpi = &varpi * &h.root.pow(h.e as u32 - 1);
        }
        self.reflections = reflections;
        self.hyperplanes = hyperplanes;
        self.pi = pi;
        self.varpi = varpi;
    }

    /// Closure of the given reflections of `self`; hyperplane data is recomputed for the subgroup.
    pub fn reflection_subgroup(&self, refl_indices: &[usize]) -> Result<ReflectionGroup> {
        let mut gens = Vec::new();
        for &r in refl_indices {
            let refl = self.reflections.get(r).ok_or_else(|| {
                Error::usage(format!(
                    "reflection index {r} out of range (group has {} reflections)",
                    self.reflections.len()
                ))
            })?;
            gens.push(self.elements[refl.element].clone());
        }
        let name = format!("{}<{}>", self.name, join(refl_indices));
        let sub = Self::generate(name, self.dim, gens, self.order())?;
        sub.with_field_order(self.field_order)
    }

    /// Closure of arbitrary elements of `self`.
    pub fn subgroup(&self, name: impl Into<String>, element_indices: &[usize]) -> Result<ReflectionGroup> {
        let gens = element_indices
            .iter()
            .map(|&i| {
                self.elements
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::usage(format!("element index {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::generate(name, self.dim, gens, self.order())?.with_field_order(self.field_order)
    }

    /// Re-keys the element index so that lookups agree with an ambient group.
    fn with_field_order(mut self, n: u32) -> Result<Self> {
        if !n.is_multiple_of(self.field_order) {
            return Err(Error::usage("subgroup entries lie outside the ambient field"));
        }
        self.field_order = n;
        self.index = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.key_at(n), i))
            .collect();
        Ok(self)
    }

    /// Indices in `self` of the elements of `sub`, or `None` if `sub` is not contained in `self`.
    pub fn embedding_of(&self, sub: &ReflectionGroup) -> Option<Vec<usize>> {
        sub.elements.iter().map(|g| self.index_of(g)).collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Conductor of the cyclotomic field containing every matrix entry.
    pub fn field_order(&self) -> u32 {
        self.field_order
    }

    pub fn generators(&self) -> &[SquareMatrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[SquareMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &SquareMatrix {
        &self.elements[i]
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn index_of(&self, g: &SquareMatrix) -> Option<usize> {
        if g.dim() != self.dim || !self.field_order.is_multiple_of(g.field_order()) {
            return None;
        }
        self.index.get(&g.key_at(self.field_order)).copied()
    }

    pub fn contains(&self, g: &SquareMatrix) -> bool {
        self.index_of(g).is_some()
    }

    /// Index of `elements[i] · elements[j]`.
    pub fn mul_index(&self, i: usize, j: usize) -> usize {
        self.index_of(&(&self.elements[i] * &self.elements[j]))
            .expect("group is closed")
    }

    pub fn reflections(&self) -> &[Reflection] {
        &self.reflections
    }

    /// Position of `g` in [`reflections`](Self::reflections), if it is a reflection of `self`.
    pub fn reflection_index_of(&self, g: &SquareMatrix) -> Option<usize> {
        let i = self.index_of(g)?;
        self.reflections.iter().position(|r| r.element == i)
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    /// The skew polynomial `Π = ∏ L_H^{e_H - 1}` in `S(V*)`.
    pub fn skew_product(&self) -> &MPoly {
        &self.pi
    }

    /// The analogue of `Π` for the action on `V*`: `∏ α_H^{e_H - 1}` in `S(V)`.
    pub fn covariant_skew_product(&self) -> &MPoly {
        &self.varpi
    }

    /// `N = deg Π`, the number of reflections.
    pub fn num_reflections(&self) -> usize {
        self.reflections.len()
    }

    /// True if `n` conjugates every element of `self` back into `self`.
    pub fn is_normalized_by(&self, n: &SquareMatrix) -> Result<bool> {
        let n_inv = n.inverse()?;
        Ok(self.generators.iter().all(|g| self.contains(&(&(n * g) * &n_inv))))
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}
