use std::sync::{Arc, OnceLock};

use super::dimension::{module_vs_dimension, Length};
use super::engine::{self, Term, TermOrder, Vector};
use super::Ideal;
use crate::polyring::{Monomial, MonomialOrder, Polynomial};
use crate::{Error, Result};

/// Element of a free module `O^r`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FreeModuleElement {
    components: Vec<Polynomial>,
}

impl FreeModuleElement {
    pub fn new(components: Vec<Polynomial>) -> Self {
        Self { components }
    }

    pub fn zero(nvars: usize, rank: usize) -> Self {
        Self {
            components: vec![Polynomial::zero(nvars); rank],
        }
    }

    /// Standard basis vector `e_i`.
    pub fn basis(nvars: usize, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(nvars, rank);
        v.components[i] = Polynomial::one(nvars);
        v
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn scale(&self, f: &Polynomial) -> Self {
        Self {
            components: self.components.iter().map(|c| c * f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// `Σ self_i · values_i`.
    pub fn dot(&self, values: &[Polynomial]) -> Polynomial {
        let nvars = values.first().map_or(0, Polynomial::nvars);
        self.components
            .iter()
            .zip(values)
            .fold(Polynomial::zero(nvars), |acc, (a, b)| &acc + &(a * b))
    }

    /// First `k` components.
    pub fn truncate(&self, k: usize) -> Self {
        Self {
            components: self.components[..k].to_vec(),
        }
    }
}

/// `Σ coeffs_i · vectors_i`.
fn combine(
    nvars: usize,
    rank: usize,
    coeffs: &[Polynomial],
    vectors: &[FreeModuleElement],
) -> FreeModuleElement {
    coeffs
        .iter()
        .zip(vectors)
        .fold(FreeModuleElement::zero(nvars, rank), |acc, (c, v)| {
            acc.add(&v.scale(c))
        })
}

/// Reduced Gröbner basis of a submodule (position-over-term).
#[derive(Debug, Clone)]
pub struct ModuleGb {
    nvars: usize,
    rank: usize,
    order: MonomialOrder,
    basis: Vec<Vector>,
}

impl ModuleGb {
    fn compute(
        nvars: usize,
        rank: usize,
        gens: &[FreeModuleElement],
        order: MonomialOrder,
    ) -> Self {
        let ord = TermOrder::new(order);
        let input = gens
            .iter()
            .map(|g| Vector::from_components(&g.components, ord))
            .collect();
        let basis = engine::groebner(input, ord, rank == 1);
        Self {
            nvars,
            rank,
            order,
            basis,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> Vec<FreeModuleElement> {
        self.basis
            .iter()
            .map(|v| FreeModuleElement::new(v.to_components(self.nvars, self.rank)))
            .collect()
    }

    /// Leading terms as `(position, monomial)`.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.basis
            .iter()
            .map(|v| {
                let t = v.lead().unwrap();
                (t.pos, Monomial::new(t.exp.clone()))
            })
            .collect()
    }

    pub fn normal_form(&self, w: &FreeModuleElement) -> Result<FreeModuleElement> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: w.rank(),
            });
        }
        let ord = TermOrder::new(self.order);
        let v = Vector::from_components(&w.components, ord);
        Ok(FreeModuleElement::new(
            engine::reduce(&v, &self.basis, ord).to_components(self.nvars, self.rank),
        ))
    }

    pub fn satisfies_buchberger_criterion(&self) -> bool {
        engine::is_groebner(&self.basis, TermOrder::new(self.order))
    }
}

/// Submodule of `O^rank` given by generators; its Gröbner basis is cached.
#[derive(Debug, Clone)]
pub struct Submodule {
    nvars: usize,
    rank: usize,
    generators: Vec<FreeModuleElement>,
    cache: OnceLock<Arc<ModuleGb>>,
}

impl Submodule {
    pub fn new(nvars: usize, rank: usize, generators: Vec<FreeModuleElement>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.rank() != rank) {
            return Err(Error::RankMismatch {
                expected: rank,
                found: g.rank(),
            });
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Self {
            nvars,
            rank,
            generators,
            cache: OnceLock::new(),
        })
    }

    pub fn zero(nvars: usize, rank: usize) -> Self {
        Self {
            nvars,
            rank,
            generators: Vec::new(),
            cache: OnceLock::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[FreeModuleElement] {
        &self.generators
    }

    pub fn gb(&self) -> Arc<ModuleGb> {
        self.cache
            .get_or_init(|| {
                Arc::new(ModuleGb::compute(
                    self.nvars,
                    self.rank,
                    &self.generators,
                    MonomialOrder::DegRevLex,
                ))
            })
            .clone()
    }

    pub fn normal_form(&self, w: &FreeModuleElement) -> Result<FreeModuleElement> {
        self.gb().normal_form(w)
    }

    /// Membership; the zero vector is a member of every submodule.
    pub fn contains(&self, w: &FreeModuleElement) -> Result<bool> {
        Ok(self.normal_form(w)?.is_zero())
    }

    pub fn contains_submodule(&self, other: &Submodule) -> bool {
        other
            .generators
            .iter()
            .all(|g| self.contains(g).unwrap_or(false))
    }

    pub fn equals(&self, other: &Submodule) -> bool {
        self.rank == other.rank && self.gb().elements() == other.gb().elements()
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        if other.rank != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Submodule::new(self.nvars, self.rank, gens)
    }

    /// Adds `f·e_i` for every generator `f` of `ideal` and every position `i`.
    pub fn with_multiples(&self, ideal: &Ideal) -> Submodule {
        let mut gens = self.generators.clone();
        for i in 0..self.rank {
            for f in ideal.generators() {
                gens.push(FreeModuleElement::basis(self.nvars, self.rank, i).scale(f));
            }
        }
        Submodule {
            nvars: self.nvars,
            rank: self.rank,
            generators: gens,
            cache: OnceLock::new(),
        }
    }
}

/// Builds the Gröbner basis of `{(v_i, e_i)}` in `O^(rank + s)`; reducing
/// `(w, 0)` against it expresses `w` through the `v_i`.
pub struct Lifter {
    nvars: usize,
    rank: usize,
    count: usize,
    order: TermOrder,
    basis: Vec<Vector>,
    generators: Vec<FreeModuleElement>,
}

fn augmented(vectors: &[FreeModuleElement], nvars: usize, ord: TermOrder) -> Vec<Vector> {
    let rank = vectors.first().map_or(0, FreeModuleElement::rank);
    vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut v = Vector::from_components(&v.components, ord);
            v.terms.push(Term {
                pos: rank + i,
                exp: vec![0; nvars],
                coeff: num_traits::One::one(),
            });
            Vector::from_terms(v.terms, ord)
        })
        .collect()
}

impl Lifter {
    pub fn new(nvars: usize, rank: usize, generators: &[FreeModuleElement]) -> Self {
        let ord = TermOrder::new(MonomialOrder::DegRevLex);
        let basis = engine::groebner(augmented(generators, nvars, ord), ord, false);
        Self {
            nvars,
            rank,
            count: generators.len(),
            order: ord,
            basis,
            generators: generators.to_vec(),
        }
    }

    /// Coefficients `c` with `w = Σ c_i v_i`, or `None` if `w` is not in the span.
    pub fn lift(&self, w: &FreeModuleElement) -> Option<Vec<Polynomial>> {
        assert_eq!(w.rank(), self.rank, "rank mismatch in lift");
        let v = Vector::from_components(&w.components, self.order);
        let r = engine::reduce(&v, &self.basis, self.order);
        if r.terms.iter().any(|t| t.pos < self.rank) {
            return None;
        }
        // invariant: first block minus Σ tracking_i v_i equals w
        let tracking = r
            .shift_positions_down(self.rank)
            .to_components(self.nvars, self.count);
        let coeffs: Vec<Polynomial> = tracking.iter().map(|c| -c).collect();
        debug_assert_eq!(
            combine(self.nvars, self.rank, &coeffs, &self.generators),
            *w
        );
        Some(coeffs)
    }
}

/// Generators of `{c : Σ c_i v_i = 0}` for vectors of a common rank.
///
/// Each returned relation is checked by substitution.
pub fn syzygies(nvars: usize, vectors: &[FreeModuleElement]) -> Result<Submodule> {
    let s = vectors.len();
    let Some(rank) = vectors.first().map(FreeModuleElement::rank) else {
        return Ok(Submodule::zero(nvars, 0));
    };
    if let Some(v) = vectors.iter().find(|v| v.rank() != rank) {
        return Err(Error::RankMismatch {
            expected: rank,
            found: v.rank(),
        });
    }
    let ord = TermOrder::new(MonomialOrder::DegRevLex);
    let basis = engine::groebner(augmented(vectors, nvars, ord), ord, false);
    let syz: Vec<FreeModuleElement> = basis
        .iter()
        .filter(|v| v.min_pos().is_some_and(|p| p >= rank))
        .map(|v| FreeModuleElement::new(v.shift_positions_down(rank).to_components(nvars, s)))
        .collect();
    for c in &syz {
        assert!(
            combine(nvars, rank, c.components(), vectors).is_zero(),
            "syzygy failed substitution check"
        );
    }
    Submodule::new(nvars, s, syz)
}

/// Ring over which a presented module lives.
#[derive(Debug, Clone)]
pub enum Base {
    Polynomial,
    Quotient(Ideal),
}

/// Cokernel presentation `O^n_gens / relations`, optionally over `O/g`.
///
/// Over `O/g` the relations are lifts to `O`, closed under `g·e_i`.
#[derive(Debug, Clone)]
pub struct ModulePresentation {
    pub base: Base,
    pub n_gens: usize,
    pub relations: Submodule,
}

impl ModulePresentation {
    pub fn over_ring(relations: Submodule) -> Self {
        Self {
            base: Base::Polynomial,
            n_gens: relations.rank(),
            relations,
        }
    }

    pub fn over_quotient(g: &Ideal, relations: Submodule) -> Self {
        let relations = relations.with_multiples(g);
        Self {
            base: Base::Quotient(g.clone()),
            n_gens: relations.rank(),
            relations,
        }
    }

    /// Cyclic module `O/I`.
    pub fn cyclic(ideal: &Ideal) -> Self {
        let nvars = ideal.nvars();
        let rel = Submodule::new(
            nvars,
            1,
            ideal
                .generators()
                .iter()
                .map(|f| FreeModuleElement::new(vec![f.clone()]))
                .collect(),
        )
        .expect("rank one");
        Self::over_ring(rel)
    }

    /// Dimension over `k`, counted as standard monomials of the relation module.
    pub fn vs_dimension(&self) -> Length {
        module_vs_dimension(&self.relations)
    }
}
