//! Local freeness of presented modules via Fitting ideals.

use crate::gb::{Base, Ideal, ModulePresentation};
use crate::polyring::{PolyMatrix, Polynomial};

/// Outcome of [`is_locally_free`].
#[derive(Debug, Clone)]
pub enum Freeness {
    LocallyFreeOfRank(usize),
    /// Carries `Fitt_r + g` when it is proper, otherwise `Fitt_{r-1} + g`.
    NotLocallyFree(Ideal),
}

impl Freeness {
    pub fn is_locally_free(&self) -> bool {
        matches!(self, Freeness::LocallyFreeOfRank(_))
    }
}

/// Relation columns reduced mod `g`, zero columns dropped, as an `n_gens × k` matrix.
fn presentation_matrix(module: &ModulePresentation, g: &Ideal) -> PolyMatrix {
    let nvars = g.nvars();
    let n = module.n_gens;
    let mut cols: Vec<Vec<Polynomial>> = Vec::new();
    for rel in module.relations.generators() {
        let c: Vec<Polynomial> = rel.components().iter().map(|e| g.normal_form(e)).collect();
        if c.iter().any(|e| !e.is_zero()) && !cols.contains(&c) {
            cols.push(c);
        }
    }
    let mut m = PolyMatrix::zeros(nvars, n, cols.len());
    for (j, c) in cols.into_iter().enumerate() {
        for (i, e) in c.into_iter().enumerate() {
            m.set(i, j, e);
        }
    }
    m
}

/// `Fitt_j` of the module over `O/g`, as an ideal of `O` containing `g`.
///
/// `Fitt_j` is generated by the `(n − j)`-minors; it is `(1)` for `j ≥ n`
/// and `g` itself for `j < 0`.
pub fn fitting_ideal(module: &ModulePresentation, j: i64) -> Ideal {
    let g = base_ideal(module);
    let n = module.n_gens as i64;
    if j < 0 {
        return g;
    }
    if j >= n {
        return Ideal::unit(g.nvars());
    }
    let m = presentation_matrix(module, &g);
    Ideal::new(g.nvars(), m.minors((n - j) as usize)).sum(&g)
}

fn base_ideal(module: &ModulePresentation) -> Ideal {
    match &module.base {
        Base::Quotient(g) => g.clone(),
        Base::Polynomial => Ideal::zero(module.relations.nvars()),
    }
}

/// Rank-`r` local freeness over `O/g`: `Fitt_r + g = (1)` and `Fitt_{r−1} ⊆ g`.
///
/// Over a principal ideal domain this is freeness.
pub fn is_locally_free(module: &ModulePresentation, r: usize) -> Freeness {
    let g = base_ideal(module);
    let top = fitting_ideal(module, r as i64);
    if !top.is_unit() {
        return Freeness::NotLocallyFree(top.canonical());
    }
    let below = fitting_ideal(module, r as i64 - 1);
    if !g.contains_ideal(&below) {
        return Freeness::NotLocallyFree(below.canonical());
    }
    Freeness::LocallyFreeOfRank(r)
}
