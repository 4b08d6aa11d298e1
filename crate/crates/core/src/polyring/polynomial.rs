use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder, Rational, RingContext};
use crate::{Error, Result};

/// Sparse polynomial: a finite map from monomials to nonzero rationals.
///
/// Storage order is the plain lexicographic order of exponent vectors and
/// carries no meaning; every order-dependent query takes a [`MonomialOrder`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked ring arithmetic; fails when the operands live in different rings.
pub fn poly_arith(f: &Polynomial, g: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    if f.nvars != g.nvars {
        return Err(Error::ContextMismatch {
            left: f.nvars,
            right: g.nvars,
        });
    }
    Ok(match op {
        ArithOp::Add => f.add_ref(g),
        ArithOp::Sub => f.sub_ref(g),
        ArithOp::Mul => f.mul_ref(g),
    })
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(nvars, Monomial::one(nvars), c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(c.into()))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::term(nvars, Monomial::var(nvars, index), Rational::one())
    }

    pub fn term(nvars: usize, mono: Monomial, c: Rational) -> Self {
        debug_assert_eq!(mono.nvars(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Self { nvars, terms }
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { nvars, terms: map }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Nonzero constant polynomial.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn constant_coeff(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp_exps(&a.0 .0, &b.0 .0))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Terms in descending `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp_exps(&b.0 .0, &a.0 .0));
        v
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, mono: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a * c))
                .collect(),
        }
    }

    /// Scales so the leading coefficient under `order` is one.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    fn add_ref(&self, other: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(a) => {
                    *a += c;
                    if a.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }

    fn sub_ref(&self, other: &Polynomial) -> Polynomial {
        self.add_ref(&other.neg_ref())
    }

    fn neg_ref(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn mul_ref(&self, other: &Polynomial) -> Polynomial {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *terms.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Polynomial> {
        if var >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[var] > 0)
            .map(|(m, c)| {
                let mut e = m.clone();
                let k = e.0[var];
                e.0[var] -= 1;
                (e, c * Rational::from_integer(k.into()))
            });
        Ok(Polynomial::from_terms(self.nvars, terms))
    }

    /// Sets the listed variables to zero.
    pub fn substitute_zero(&self, vars: &[usize]) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m.0[v] == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Prepends `k` fresh variables (indices `0..k` in the result).
    pub fn embed_front(&self, k: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars + k,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0; k];
                    e.extend_from_slice(&m.0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Drops the first `k` variables; `None` if any of them occurs.
    pub fn contract_front(&self, k: usize) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[..k].iter().any(|&e| e > 0) {
                return None;
            }
            terms.insert(Monomial(m.0[k..].to_vec()), c.clone());
        }
        Some(Polynomial {
            nvars: self.nvars - k,
            terms,
        })
    }

    /// Quotient and remainder of division by a single polynomial under `order`.
    pub fn div_rem(&self, divisor: &Polynomial, order: MonomialOrder) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (dm, dc) = divisor.leading_term(order).expect("nonzero");
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut quotient = Polynomial::zero(self.nvars);
        let mut remainder = Polynomial::zero(self.nvars);
        let mut p = self.clone();
        while let Some((m, c)) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
            match m.checked_div(&dm) {
                Some(q) => {
                    let factor = &c / &dc;
                    p = p.sub_ref(&divisor.mul_term(&q, &factor));
                    quotient = quotient.add_ref(&Polynomial::term(self.nvars, q, factor));
                }
                None => {
                    p.terms.remove(&m);
                    remainder.terms.insert(m, c);
                }
            }
        }
        (quotient, remainder)
    }

    /// Exact quotient `self / divisor`, if the division leaves no remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(divisor, MonomialOrder::DegRevLex);
        r.is_zero().then_some(q)
    }

    /// Canonical text form: descending `order`, `^` powers, `*` products,
    /// coefficients as integers or `num/den`.
    pub fn to_text(&self, ctx: &RingContext, order: MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = c.abs();
            let mono = format_monomial(m, ctx);
            if mono.is_empty() {
                let _ = write!(out, "{abs}");
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                let _ = write!(out, "{abs}*{mono}");
            }
        }
        out
    }
}

fn format_monomial(m: &Monomial, ctx: &RingContext) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ctx.var_name(i).to_string()),
            _ => parts.push(format!("{}^{}", ctx.var_name(i), e)),
        }
    }
    parts.join("*")
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        match RingContext::new(&names) {
            Ok(ctx) => write!(f, "{}", self.to_text(&ctx, MonomialOrder::DegRevLex)),
            Err(_) => write!(f, "{:?}", self.terms),
        }
    }
}

fn check_same(a: &Polynomial, b: &Polynomial) {
    assert_eq!(a.nvars, b.nvars, "polynomials from different rings");
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        check_same(self, rhs);
        self.add_ref(rhs)
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        check_same(self, rhs);
        self.sub_ref(rhs)
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        check_same(self, rhs);
        self.mul_ref(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}
