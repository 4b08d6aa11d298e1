//! Helpers shared by the integration tests: seeded random inputs and
//! linear-algebra oracles that do not go through the Gröbner engine.

#![allow(dead_code)]

use num_traits::{One, Zero};
use primctl::gb::Ideal;
use primctl::parse::parse_poly;
use primctl::polyring::{Monomial, Polynomial, Rational, RingContext};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn ring(vars: &[&str]) -> RingContext {
    RingContext::new(vars).unwrap()
}

pub fn poly(c: &RingContext, s: &str) -> Polynomial {
    parse_poly(s, c).unwrap()
}

pub fn ideal(c: &RingContext, gens: &[&str]) -> Ideal {
    Ideal::new(c.nvars(), gens.iter().map(|g| poly(c, g)).collect())
}

/// Session file under `tests/data`.
pub fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Exponent vectors of total degree at most `d`, in a fixed order.
pub fn monomials_up_to(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == nvars {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(nvars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, d, &mut Vec::new(), &mut out);
    out
}

/// Random polynomial with at most `terms` terms of degree at most `deg`
/// and small integer coefficients.
pub fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, deg: u32, terms: usize) -> Polynomial {
    let pool = monomials_up_to(nvars, deg);
    let n = rng.gen_range(1..=terms);
    Polynomial::from_terms(
        nvars,
        (0..n).map(|_| {
            let e = pool[rng.gen_range(0..pool.len())].clone();
            let c: i64 = rng.gen_range(-3..=3);
            (Monomial::new(e), Rational::from_integer(c.into()))
        }),
    )
}

/// Rank over `Q` by fraction-exact Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = Rational::one() / &rows[r][c];
        let prow: Vec<Rational> = rows[r].iter().map(|v| v * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&prow) {
                    *v -= &f * p;
                }
            }
        }
        rows[r] = prow;
        r += 1;
    }
    r
}

/// Multiples `m·f_i` of total degree at most `top`, as coefficient rows
/// over the monomials of degree at most `top`.
fn multiples(
    gens: &[Polynomial],
    nvars: usize,
    top: u32,
    basis: &[Vec<u32>],
) -> Vec<Vec<Rational>> {
    let index = |e: &[u32]| basis.iter().position(|b| b.as_slice() == e).unwrap();
    let mut rows = Vec::new();
    for f in gens {
        let fd = f.total_degree().unwrap_or(0);
        if fd > top {
            continue;
        }
        for m in monomials_up_to(nvars, top - fd) {
            let mut row = vec![Rational::zero(); basis.len()];
            for (mono, c) in f.terms() {
                let e: Vec<u32> = mono
                    .exponents()
                    .iter()
                    .zip(&m)
                    .map(|(a, b)| a + b)
                    .collect();
                row[index(&e)] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// `dim_k k[x]_{≤d} / (k[x]_{≤d} ∩ W)` with `W` spanned by the multiples
/// of degree at most `top`, computed as `rank(W + k[x]_{≤d}) − rank W`.
///
/// Equals `dim_k O/I` for a zero-dimensional ideal once `d` bounds the
/// standard monomials and `top` bounds the certificates of membership.
pub fn truncated_quotient_dim(gens: &[Polynomial], nvars: usize, d: u32, top: u32) -> usize {
    let basis = monomials_up_to(nvars, top);
    let w = multiples(gens, nvars, top, &basis);
    let rw = rank(w.clone());
    let mut all = w;
    for (k, b) in basis.iter().enumerate() {
        if b.iter().sum::<u32>() <= d {
            let mut row = vec![Rational::zero(); basis.len()];
            row[k] = Rational::one();
            all.push(row);
        }
    }
    rank(all) - rw
}

/// [`truncated_quotient_dim`] at `(d, d + slack)`, checked stable at `(d + 1, d + 1 + slack)`.
pub fn quotient_dim_oracle(gens: &[Polynomial], nvars: usize, d: u32, slack: u32) -> usize {
    let a = truncated_quotient_dim(gens, nvars, d, d + slack);
    let b = truncated_quotient_dim(gens, nvars, d + 1, d + 1 + slack);
    assert_eq!(
        a, b,
        "truncated quotient dimension has not stabilised at degree {d}"
    );
    a
}
