use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::engine::{self, TermOrder, Vector};
use super::module::{FreeModuleElement, Lifter};
use crate::polyring::{Monomial, MonomialOrder, Polynomial};
use crate::{Error, Result};

/// Reduced Gröbner basis of an ideal for one monomial order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    basis: Vec<Vector>,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    fn compute(nvars: usize, gens: &[Polynomial], order: MonomialOrder) -> Self {
        let ord = TermOrder::new(order);
        let input = gens
            .iter()
            .map(|g| Vector::from_components(std::slice::from_ref(g), ord))
            .collect();
        let basis = engine::groebner(input, ord, true);
        let polys = basis
            .iter()
            .map(|v| v.to_components(nvars, 1).pop().unwrap())
            .collect();
        Self {
            nvars,
            order,
            basis,
            polys,
        }
    }

    /// Monic, interreduced, sorted by descending leading monomial.
    pub fn polynomials(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_unit()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|v| Monomial::new(v.lead().unwrap().exp.clone()))
            .collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let ord = TermOrder::new(self.order);
        let v = Vector::from_components(std::slice::from_ref(f), ord);
        engine::reduce(&v, &self.basis, ord)
            .to_components(self.nvars, 1)
            .pop()
            .unwrap()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        engine::is_groebner(&self.basis, TermOrder::new(self.order))
    }
}

/// A finitely generated ideal of `k[x_0..x_m]`.
///
/// Zero generators are dropped. Reduced Gröbner bases are cached per order;
/// the cache is write-once per order and safe to share between threads.
pub struct Ideal {
    nvars: usize,
    generators: Vec<Polynomial>,
    cache: Mutex<BTreeMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Self {
            nvars: self.nvars,
            generators: self.generators.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Ideal").field(&self.generators).finish()
    }
}

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn groebner(ideal: &Ideal, order: MonomialOrder) -> Arc<GroebnerBasis> {
    ideal.groebner(order)
}

/// Remainder of `f` modulo the reduced basis of `ideal` under `order`.
pub fn normal_form(f: &Polynomial, ideal: &Ideal, order: MonomialOrder) -> Polynomial {
    ideal.groebner(order).normal_form(f)
}

impl Ideal {
    pub fn new(nvars: usize, generators: Vec<Polynomial>) -> Self {
        debug_assert!(generators.iter().all(|g| g.nvars() == nvars));
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Self {
            nvars,
            generators,
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn try_new(nvars: usize, generators: Vec<Polynomial>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::ContextMismatch {
                left: nvars,
                right: g.nvars(),
            });
        }
        Ok(Self::new(nvars, generators))
    }

    pub fn zero(nvars: usize) -> Self {
        Self::new(nvars, Vec::new())
    }

    pub fn unit(nvars: usize) -> Self {
        Self::new(nvars, vec![Polynomial::one(nvars)])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn groebner(&self, order: MonomialOrder) -> Arc<GroebnerBasis> {
        if let Some(gb) = self.cache.lock().unwrap().get(&order) {
            return gb.clone();
        }
        let gb = Arc::new(GroebnerBasis::compute(self.nvars, &self.generators, order));
        self.cache
            .lock()
            .unwrap()
            .entry(order)
            .or_insert(gb)
            .clone()
    }

    /// Reduced basis under degrevlex.
    pub fn gb(&self) -> Arc<GroebnerBasis> {
        self.groebner(MonomialOrder::DegRevLex)
    }

    /// The same ideal, generated by its reduced degrevlex basis.
    pub fn canonical(&self) -> Ideal {
        let gb = self.gb();
        let out = Ideal::new(self.nvars, gb.polynomials().to_vec());
        out.cache
            .lock()
            .unwrap()
            .insert(MonomialOrder::DegRevLex, gb);
        out
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.gb().normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.gb().contains(f)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        let gb = self.gb();
        other.generators.iter().all(|g| gb.contains(g))
    }

    /// Ideal equality via identical reduced bases.
    pub fn equals(&self, other: &Ideal) -> bool {
        self.nvars == other.nvars && self.gb().polynomials() == other.gb().polynomials()
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(self.nvars, gens)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens: Vec<Polynomial> = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                let p = a * b;
                if !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        Ideal::new(self.nvars, gens)
    }

    pub fn power(&self, k: u32) -> Ideal {
        let mut acc = Ideal::unit(self.nvars);
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    /// `I ∩ J` by eliminating `t` from `t·I + (1 − t)·J`.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        if self.is_zero() || other.is_zero() {
            return Ideal::zero(self.nvars);
        }
        let n1 = self.nvars + 1;
        let t = Polynomial::var(n1, 0);
        let one_minus_t = &Polynomial::one(n1) - &t;
        let mut gens: Vec<Polynomial> = self
            .generators
            .iter()
            .map(|f| &t * &f.embed_front(1))
            .collect();
        gens.extend(
            other
                .generators
                .iter()
                .map(|g| &one_minus_t * &g.embed_front(1)),
        );
        let gb = Ideal::new(n1, gens).groebner(MonomialOrder::Block(1));
        let kept = gb
            .polynomials()
            .iter()
            .filter_map(|p| p.contract_front(1))
            .collect();
        Ideal::new(self.nvars, kept)
    }

    /// `I : f`.
    pub fn quotient_by(&self, f: &Polynomial) -> Ideal {
        if f.is_zero() {
            return Ideal::unit(self.nvars);
        }
        let inter = self.intersect(&Ideal::new(self.nvars, vec![f.clone()]));
        let gens = inter
            .generators
            .iter()
            .map(|p| p.div_exact(f).expect("elements of (f) are divisible by f"))
            .collect();
        Ideal::new(self.nvars, gens)
    }

    /// `I : J`.
    pub fn quotient(&self, other: &Ideal) -> Ideal {
        other
            .generators
            .iter()
            .map(|f| self.quotient_by(f))
            .reduce(|a, b| a.intersect(&b))
            .unwrap_or_else(|| Ideal::unit(self.nvars))
    }

    /// Coefficients `c` with `f = Σ c_i · generators[i]`, if `f` is in the ideal.
    pub fn lift(&self, f: &Polynomial) -> Option<Vec<Polynomial>> {
        let gens: Vec<FreeModuleElement> = self
            .generators
            .iter()
            .map(|g| FreeModuleElement::new(vec![g.clone()]))
            .collect();
        Lifter::new(self.nvars, 1, &gens).lift(&FreeModuleElement::new(vec![f.clone()]))
    }

    /// `dim O/I`; `-1` for the unit ideal.
    pub fn krull_dimension(&self) -> i64 {
        super::dimension::krull_dimension(self)
    }

    /// `codim I = nvars - dim O/I`; `None` for the unit ideal.
    pub fn codimension(&self) -> Option<usize> {
        let d = self.krull_dimension();
        (d >= 0).then(|| self.nvars - d as usize)
    }
}
