//! Buchberger's algorithm on sparse vectors of a free module `O^r`.
//!
//! An ideal is the rank-one case. Terms are `(position, monomial)` pairs
//! compared position-over-term: a smaller position index is larger, ties
//! are broken by the monomial order. Vectors keep their terms in ascending
//! order so the leading term is the last one.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::polyring::{Monomial, MonomialOrder, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub pos: usize,
    pub exp: Vec<u32>,
    pub coeff: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Vector {
    pub terms: Vec<Term>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct TermOrder {
    pub mono: MonomialOrder,
}

impl TermOrder {
    pub fn new(mono: MonomialOrder) -> Self {
        Self { mono }
    }

    #[inline]
    pub fn cmp(&self, p1: usize, e1: &[u32], p2: usize, e2: &[u32]) -> Ordering {
        p2.cmp(&p1).then_with(|| self.mono.cmp_exps(e1, e2))
    }

    #[inline]
    fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp(a.pos, &a.exp, b.pos, &b.exp)
    }
}

#[inline]
fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl Vector {
    pub fn from_terms(mut terms: Vec<Term>, ord: TermOrder) -> Self {
        terms.sort_by(|a, b| ord.cmp_terms(a, b));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.pos == t.pos && last.exp == t.exp => last.coeff += t.coeff,
                _ => {
                    if out.last().is_some_and(|l| l.coeff.is_zero()) {
                        out.pop();
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|l| l.coeff.is_zero()) {
            out.pop();
        }
        Vector { terms: out }
    }

    pub fn from_components(components: &[Polynomial], ord: TermOrder) -> Self {
        let terms = components
            .iter()
            .enumerate()
            .flat_map(|(pos, p)| {
                p.terms().map(move |(m, c)| Term {
                    pos,
                    exp: m.exponents().to_vec(),
                    coeff: c.clone(),
                })
            })
            .collect();
        Vector::from_terms(terms, ord)
    }

    /// Components as polynomials; positions beyond `rank` are not allowed.
    pub fn to_components(&self, nvars: usize, rank: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            buckets[t.pos].push((Monomial::new(t.exp.clone()), t.coeff.clone()));
        }
        buckets
            .into_iter()
            .map(|b| Polynomial::from_terms(nvars, b))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.last()
    }

    pub fn make_monic(&mut self) {
        if let Some(c) = self.lead().map(|t| t.coeff.clone()) {
            if !c.is_one() {
                let inv = c.recip();
                for t in &mut self.terms {
                    t.coeff *= &inv;
                }
            }
        }
    }

    /// Shifts every position by `-offset`; terms below `offset` must be absent.
    pub fn shift_positions_down(&self, offset: usize) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    pos: t.pos - offset,
                    exp: t.exp.clone(),
                    coeff: t.coeff.clone(),
                })
                .collect(),
        }
    }

    pub fn min_pos(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.pos).min()
    }
}

/// `a - c * x^shift * b`, merging ascending term lists.
fn sub_mul(a: &[Term], c: &Rational, shift: &[u32], b: &[Term], ord: TermOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let scaled = |t: &Term| Term {
        pos: t.pos,
        exp: t.exp.iter().zip(shift).map(|(x, y)| x + y).collect(),
        coeff: -(c * &t.coeff),
    };
    let mut i = 0;
    let mut j = 0;
    let mut pending: Option<Term> = b.first().map(scaled);
    while i < a.len() || pending.is_some() {
        match (a.get(i), pending.as_ref()) {
            (Some(x), Some(y)) => match ord.cmp_terms(x, y) {
                Ordering::Less => {
                    out.push(x.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = b.get(j).map(scaled);
                }
                Ordering::Equal => {
                    let sum = &x.coeff + &y.coeff;
                    if !sum.is_zero() {
                        out.push(Term {
                            pos: x.pos,
                            exp: x.exp.clone(),
                            coeff: sum,
                        });
                    }
                    i += 1;
                    j += 1;
                    pending = b.get(j).map(scaled);
                }
            },
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(_)) => {
                out.push(pending.take().unwrap());
                j += 1;
                pending = b.get(j).map(scaled);
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn find_reducer<'a>(t: &Term, basis: &'a [Vector], skip: Option<usize>) -> Option<&'a Vector> {
    basis.iter().enumerate().find_map(|(k, g)| {
        if Some(k) == skip {
            return None;
        }
        let l = g.lead()?;
        (l.pos == t.pos && divides(&l.exp, &t.exp)).then_some(g)
    })
}

fn reduce_skipping(f: &Vector, basis: &[Vector], skip: Option<usize>, ord: TermOrder) -> Vector {
    let mut p = f.terms.clone();
    let mut rem: Vec<Term> = Vec::new();
    while let Some(lt) = p.last() {
        match find_reducer(lt, basis, skip) {
            Some(g) => {
                let gl = g.lead().unwrap();
                let c = &lt.coeff / &gl.coeff;
                let shift: Vec<u32> = lt.exp.iter().zip(&gl.exp).map(|(x, y)| x - y).collect();
                p = sub_mul(&p, &c, &shift, &g.terms, ord);
            }
            None => rem.push(p.pop().unwrap()),
        }
    }
    rem.reverse();
    Vector { terms: rem }
}

/// Full reduction of `f` by `basis`: no term of the result is divisible
/// by a leading term of the basis.
pub(crate) fn reduce(f: &Vector, basis: &[Vector], ord: TermOrder) -> Vector {
    reduce_skipping(f, basis, None, ord)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Vec<u32>,
    pos: usize,
    degree: u32,
}

fn s_vector(f: &Vector, g: &Vector, lcm: &[u32], ord: TermOrder) -> Vector {
    let fl = f.lead().unwrap();
    let gl = g.lead().unwrap();
    let sf: Vec<u32> = lcm.iter().zip(&fl.exp).map(|(x, y)| x - y).collect();
    let sg: Vec<u32> = lcm.iter().zip(&gl.exp).map(|(x, y)| x - y).collect();
    let scaled_f: Vec<Term> = f
        .terms
        .iter()
        .map(|t| Term {
            pos: t.pos,
            exp: t.exp.iter().zip(&sf).map(|(x, y)| x + y).collect(),
            coeff: &t.coeff / &fl.coeff,
        })
        .collect();
    let c = gl.coeff.recip();
    Vector {
        terms: sub_mul(&scaled_f, &c, &sg, &g.terms, ord),
    }
}

struct Builder {
    ord: TermOrder,
    ideal_mode: bool,
    basis: Vec<Vector>,
    pairs: Vec<Pair>,
    pending: HashSet<(usize, usize)>,
}

impl Builder {
    fn insert(&mut self, mut v: Vector) {
        v.make_monic();
        let new = self.basis.len();
        let nl = v.lead().unwrap().clone();
        for (i, g) in self.basis.iter().enumerate() {
            let gl = g.lead().unwrap();
            if gl.pos != nl.pos {
                continue;
            }
            // coprime leading monomials: the S-polynomial of two polynomials
            // reduces to zero; this does not hold for module elements
            if self.ideal_mode && gl.exp.iter().zip(&nl.exp).all(|(a, b)| *a == 0 || *b == 0) {
                continue;
            }
            let lcm: Vec<u32> = gl.exp.iter().zip(&nl.exp).map(|(a, b)| *a.max(b)).collect();
            let degree = lcm.iter().sum();
            self.pairs.push(Pair {
                i,
                j: new,
                lcm,
                pos: nl.pos,
                degree,
            });
            self.pending.insert((i, new));
        }
        self.basis.push(v);
    }

    fn is_pending(&self, a: usize, b: usize) -> bool {
        self.pending.contains(&(a.min(b), a.max(b)))
    }

    fn chain_criterion(&self, p: &Pair) -> bool {
        self.basis.iter().enumerate().any(|(k, g)| {
            if k == p.i || k == p.j {
                return false;
            }
            let l = g.lead().unwrap();
            l.pos == p.pos
                && divides(&l.exp, &p.lcm)
                && !self.is_pending(p.i, k)
                && !self.is_pending(p.j, k)
        })
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.ord;
        let best = (0..self.pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
                pa.degree
                    .cmp(&pb.degree)
                    .then_with(|| ord.cmp(pa.pos, &pa.lcm, pb.pos, &pb.lcm))
                    .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
            })
            .unwrap();
        let p = self.pairs.swap_remove(best);
        self.pending.remove(&(p.i, p.j));
        Some(p)
    }

    fn run(&mut self) {
        while let Some(p) = self.select() {
            if self.chain_criterion(&p) {
                continue;
            }
            let s = s_vector(&self.basis[p.i], &self.basis[p.j], &p.lcm, self.ord);
            let r = reduce(&s, &self.basis, self.ord);
            if !r.is_zero() {
                self.insert(r);
            }
        }
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens`, monic and
/// sorted by descending leading term.
pub(crate) fn groebner(gens: Vec<Vector>, ord: TermOrder, ideal_mode: bool) -> Vec<Vector> {
    let mut b = Builder {
        ord,
        ideal_mode,
        basis: Vec::new(),
        pairs: Vec::new(),
        pending: HashSet::new(),
    };
    let mut gens: Vec<Vector> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    // small leading terms first keeps the input reduction cheap
    gens.sort_by(|a, b| {
        let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
        ord.cmp(x.pos, &x.exp, y.pos, &y.exp)
    });
    for g in gens {
        let r = reduce(&g, &b.basis, ord);
        if !r.is_zero() {
            b.insert(r);
        }
    }
    b.run();
    interreduce(b.basis, ord)
}

fn interreduce(basis: Vec<Vector>, ord: TermOrder) -> Vec<Vector> {
    let mut minimal: Vec<Vector> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let gl = g.lead().unwrap();
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let hl = h.lead().unwrap();
            k != i && hl.pos == gl.pos && divides(&hl.exp, &gl.exp) && (hl.exp != gl.exp || k < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<Vector> = (0..minimal.len())
        .map(|i| {
            let mut r = reduce_skipping(&minimal[i], &minimal, Some(i), ord);
            r.make_monic();
            r
        })
        .collect();
    out.sort_by(|a, b| {
        let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
        ord.cmp(y.pos, &y.exp, x.pos, &x.exp)
    });
    out
}

/// Buchberger's criterion: every S-vector of `basis` reduces to zero.
pub(crate) fn is_groebner(basis: &[Vector], ord: TermOrder) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (a, b) = (basis[i].lead().unwrap(), basis[j].lead().unwrap());
            if a.pos != b.pos {
                continue;
            }
            let lcm: Vec<u32> = a.exp.iter().zip(&b.exp).map(|(x, y)| *x.max(y)).collect();
            let s = s_vector(&basis[i], &basis[j], &lcm, ord);
            if !reduce(&s, basis, ord).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::polyring::RingContext;

    fn vecs(src: &[&str]) -> Vec<Vector> {
        let ctx = RingContext::new(&["x", "y", "z"]).unwrap();
        let ord = TermOrder::new(MonomialOrder::DegRevLex);
        src.iter()
            .map(|s| Vector::from_components(&[parse_poly(s, &ctx).unwrap()], ord))
            .collect()
    }

    #[test]
    fn cyclic_like_system() {
        let ord = TermOrder::new(MonomialOrder::DegRevLex);
        let gb = groebner(
            vecs(&["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"]),
            ord,
            true,
        );
        assert!(is_groebner(&gb, ord));
        // leading terms of the reduced basis are pairwise non-dividing
        for (i, a) in gb.iter().enumerate() {
            for (j, b) in gb.iter().enumerate() {
                if i != j {
                    assert!(!divides(&a.lead().unwrap().exp, &b.lead().unwrap().exp));
                }
            }
        }
    }

    #[test]
    fn unit_ideal() {
        let ord = TermOrder::new(MonomialOrder::Lex);
        let gb = groebner(vecs(&["x*y - 1", "x"]), ord, true);
        assert_eq!(gb.len(), 1);
        assert!(gb[0].lead().unwrap().exp.iter().all(|&e| e == 0));
    }

    #[test]
    fn merge_cancels() {
        let ord = TermOrder::new(MonomialOrder::DegRevLex);
        let a = vecs(&["x^2 + y"]).pop().unwrap();
        let r = sub_mul(&a.terms, &Rational::one(), &[0, 0, 0], &a.terms, ord);
        assert!(r.is_empty());
    }
}
