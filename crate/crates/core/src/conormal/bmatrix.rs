//! The congruence `h_i ≡ Σ_j b_ij g_j mod g²` and its normalisation.

use crate::gb::{FreeModuleElement, Ideal, Lifter};
use crate::polyring::{PolyMatrix, Polynomial};
use crate::{Error, Result};

/// `h_i ≡ Σ_j b_ij g_j mod g²` after a change of generators of `g`.
///
/// The first `t` generators carry the nonzero columns of `B` (mod `g`).
#[derive(Debug, Clone)]
pub struct BMatrixData {
    /// Generators of `g` after normalisation, nonzero columns first.
    pub generators: Vec<Polynomial>,
    /// `p × t` matrix of entries reduced mod `g`.
    pub b: PolyMatrix,
    pub t: usize,
    pub p: usize,
    /// `det B` when `t = p`.
    pub det: Option<Polynomial>,
    /// `(g : det) = g`, when `det` is present.
    pub det_nonzero_divisor: Option<bool>,
    /// `t ≥ p`; holds whenever the Jacobian condition does.
    pub t_at_least_p: bool,
    /// Number of normalised generators lying in `∫_h g`, when computed.
    pub torsion_generators: Option<usize>,
    /// Every `h_i − Σ_j b_ij g_j` lies in `g²`.
    pub congruence_holds: bool,
}

impl BMatrixData {
    /// Torsion generators of a minimal generating set number at most `p`.
    pub fn torsion_bound_holds(&self) -> Option<bool> {
        self.torsion_generators.map(|k| k <= self.p)
    }
}

fn column(rows: &[Vec<Polynomial>], j: usize) -> Vec<Polynomial> {
    rows.iter().map(|r| r[j].clone()).collect()
}

/// Lifts each `h_i` into the generators of `g`, reduces coefficients mod
/// `g`, then changes generators `g_c ← g_c + q_c g_j` to clear any column
/// `j` lying in the span of the other nonzero columns modulo `g`.
pub fn extract_b_matrix(h: &Ideal, g: &Ideal) -> Result<BMatrixData> {
    let nvars = g.nvars();
    let hs = h.generators();
    let p = hs.len();
    let mut gens = g.generators().to_vec();
    let n = gens.len();

    let mut rows: Vec<Vec<Polynomial>> = Vec::with_capacity(p);
    for (i, hi) in hs.iter().enumerate() {
        let c = g.lift(hi).ok_or_else(|| {
            Error::DecompositionFailed(format!("generator {} of h is not in g", i + 1))
        })?;
        rows.push(c.iter().map(|e| g.normal_form(e)).collect());
    }

    let multiples: Vec<FreeModuleElement> = g
        .generators()
        .iter()
        .flat_map(|gk| (0..p).map(move |i| FreeModuleElement::basis(nvars, p, i).scale(gk)))
        .collect();
    let nonzero = |rows: &[Vec<Polynomial>], j: usize| rows.iter().any(|r| !r[j].is_zero());
    if p > 0 {
        for j in (0..n).rev() {
            if !nonzero(&rows, j) {
                continue;
            }
            let others: Vec<usize> = (0..n).filter(|&c| c != j && nonzero(&rows, c)).collect();
            if others.is_empty() {
                continue;
            }
            let mut span: Vec<FreeModuleElement> = others
                .iter()
                .map(|&c| FreeModuleElement::new(column(&rows, c)))
                .collect();
            span.extend(multiples.iter().cloned());
            let lifter = Lifter::new(nvars, p, &span);
            if let Some(q) = lifter.lift(&FreeModuleElement::new(column(&rows, j))) {
                let gj = gens[j].clone();
                for (k, &c) in others.iter().enumerate() {
                    gens[c] = &gens[c] + &(&q[k] * &gj);
                }
                for r in rows.iter_mut() {
                    r[j] = Polynomial::zero(nvars);
                }
            }
        }
    }

    let order: Vec<usize> = (0..n)
        .filter(|&j| nonzero(&rows, j))
        .chain((0..n).filter(|&j| !nonzero(&rows, j)))
        .collect();
    let t = (0..n).filter(|&j| nonzero(&rows, j)).count();
    let generators: Vec<Polynomial> = order.iter().map(|&j| gens[j].clone()).collect();
    let b_rows: Vec<Vec<Polynomial>> = rows
        .iter()
        .map(|r| order[..t].iter().map(|&j| r[j].clone()).collect())
        .collect();
    let b = if p == 0 || t == 0 {
        PolyMatrix::zeros(nvars, p, t)
    } else {
        PolyMatrix::from_rows(nvars, b_rows)?
    };

    let g2 = g.power(2);
    let congruence_holds = hs.iter().enumerate().all(|(i, hi)| {
        let s = (0..t).fold(Polynomial::zero(nvars), |acc, j| {
            &acc + &(b.get(i, j) * &generators[j])
        });
        g2.contains(&(hi - &s))
    });
    debug_assert!(Ideal::new(nvars, generators.clone()).equals(g));

    let det = (t == p).then(|| {
        if p == 0 {
            Polynomial::one(nvars)
        } else {
            b.determinant().expect("square")
        }
    });
    let det_nonzero_divisor = det.as_ref().map(|d| g.quotient_by(d).equals(g));
    Ok(BMatrixData {
        generators,
        b,
        t,
        p,
        det,
        det_nonzero_divisor,
        t_at_least_p: t >= p,
        torsion_generators: None,
        congruence_holds,
    })
}
