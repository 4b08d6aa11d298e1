//! Logarithmic derivations `Der_h(O) = {ξ : ξ(h) ⊆ h}` and Jacobian ideals.

use crate::gb::{syzygies, FreeModuleElement, Ideal};
use crate::polyring::{MonomialOrder, PolyMatrix, Polynomial, RingContext};
use crate::{Error, Result};

/// Vector field `Σ a_j ∂/∂x_j`, one coefficient per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    coefficients: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(coefficients: Vec<Polynomial>) -> Self {
        Self { coefficients }
    }

    /// `∂/∂x_j`.
    pub fn coordinate(nvars: usize, j: usize) -> Self {
        let mut c = vec![Polynomial::zero(nvars); nvars];
        c[j] = Polynomial::one(nvars);
        Self { coefficients: c }
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Polynomial::is_zero)
    }

    /// `ξ(f) = Σ a_j ∂f/∂x_j`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if self.coefficients.len() != f.nvars() {
            return Err(Error::LengthMismatch {
                expected: f.nvars(),
                found: self.coefficients.len(),
            });
        }
        let mut acc = Polynomial::zero(f.nvars());
        for (j, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            acc = &acc + &(a * &f.partial_derivative(j)?);
        }
        Ok(acc)
    }

    pub fn to_text(&self, ctx: &RingContext, order: MonomialOrder) -> String {
        let parts: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(j, a)| {
                let d = format!("d/d{}", ctx.var_name(j));
                let text = a.to_text(ctx, order);
                if a.num_terms() > 1 {
                    format!("({text})*{d}")
                } else if text == "1" {
                    d
                } else if text == "-1" {
                    format!("-{d}")
                } else {
                    format!("{text}*{d}")
                }
            })
            .collect();
        let Some((head, rest)) = parts.split_first() else {
            return "0".to_string();
        };
        let mut out = head.clone();
        for part in rest {
            match part.strip_prefix('-') {
                Some(tail) => {
                    out.push_str(" - ");
                    out.push_str(tail);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(part);
                }
            }
        }
        out
    }
}

/// Applies `xi` to `f`.
pub fn apply(xi: &Derivation, f: &Polynomial) -> Result<Polynomial> {
    xi.apply(f)
}

/// A generating set of `Der_h(O)` as an `O`-module.
///
/// The membership condition `ξ(h_i) ∈ h` is `O`-linear in `ξ`, so any
/// generating set of the solution module serves every later use: the
/// syzygies of the columns of `dhᵀ` together with `h_k·e_i`, projected to
/// the derivation coordinates. The trivial fields `h_k ∂/∂x_j` are always
/// included. No attempt is made to minimise the set.
pub fn log_derivations(h: &Ideal) -> Vec<Derivation> {
    let nvars = h.nvars();
    let hs = h.generators();
    let p = hs.len();
    if p == 0 {
        return (0..nvars)
            .map(|j| Derivation::coordinate(nvars, j))
            .collect();
    }
    let mut vectors: Vec<FreeModuleElement> = (0..nvars)
        .map(|j| {
            FreeModuleElement::new(
                hs.iter()
                    .map(|f| f.partial_derivative(j).expect("index in range"))
                    .collect(),
            )
        })
        .collect();
    for hk in hs {
        for i in 0..p {
            vectors.push(FreeModuleElement::basis(nvars, p, i).scale(hk));
        }
    }
    let syz = syzygies(nvars, &vectors).expect("common rank");
    let mut out: Vec<Derivation> = Vec::new();
    let mut push = |d: Derivation| {
        if !d.is_zero() && !out.contains(&d) {
            out.push(d);
        }
    };
    for s in syz.generators() {
        push(Derivation::new(s.components()[..nvars].to_vec()));
    }
    for hk in hs {
        for j in 0..nvars {
            let mut c = vec![Polynomial::zero(nvars); nvars];
            c[j] = hk.clone();
            push(Derivation::new(c));
        }
    }
    debug_assert!(out
        .iter()
        .all(|xi| hs.iter().all(|f| h.contains(&xi.apply(f).unwrap()))));
    out
}

/// Jacobian data of a complete intersection `h = (h_1..h_p)`.
#[derive(Debug, Clone)]
pub struct JacobianData {
    /// `p × (m+1)` matrix of partial derivatives.
    pub matrix: PolyMatrix,
    /// Nonzero `p × p` minors.
    pub minors: Vec<Polynomial>,
    /// `h` plus the maximal minors.
    pub jac_ideal: Ideal,
}

/// `J(h) = h + (p × p minors of dh)`, after checking `codim h = p`.
pub fn jacobian_ideal(h: &Ideal) -> Result<JacobianData> {
    let nvars = h.nvars();
    let hs = h.generators();
    let p = hs.len();
    let codim = h.codimension().unwrap_or(nvars + 1);
    if codim != p {
        return Err(Error::NotCompleteIntersection {
            codim,
            generators: p,
        });
    }
    let rows: Vec<Vec<Polynomial>> = hs
        .iter()
        .map(|f| {
            (0..nvars)
                .map(|j| f.partial_derivative(j).expect("index in range"))
                .collect()
        })
        .collect();
    let matrix = if p == 0 {
        PolyMatrix::zeros(nvars, 0, nvars)
    } else {
        PolyMatrix::from_rows(nvars, rows)?
    };
    let minors = matrix.minors(p);
    let mut gens = hs.to_vec();
    gens.extend(minors.iter().cloned());
    Ok(JacobianData {
        matrix,
        minors,
        jac_ideal: Ideal::new(nvars, gens),
    })
}

/// Whether `J(h)` avoids every minimal prime of `O/g`.
///
/// Decided by `dim O/(J(h) + g) < dim O/g`, which is exact when `g` is
/// unmixed (all minimal primes of the same dimension). Unmixedness is the
/// caller's responsibility.
pub fn check_jacobian_condition(h: &Ideal, g: &Ideal) -> Result<bool> {
    let jac = jacobian_ideal(h)?;
    Ok(jac.jac_ideal.sum(g).krull_dimension() < g.krull_dimension())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gb::Submodule;
    use crate::parse::parse_poly;

    fn ctx(vars: &[&str]) -> RingContext {
        RingContext::new(vars).unwrap()
    }

    fn ideal(c: &RingContext, gens: &[&str]) -> Ideal {
        Ideal::new(
            c.nvars(),
            gens.iter().map(|g| parse_poly(g, c).unwrap()).collect(),
        )
    }

    fn der(c: &RingContext, coeffs: &[&str]) -> Derivation {
        Derivation::new(coeffs.iter().map(|s| parse_poly(s, c).unwrap()).collect())
    }

    fn span(c: &RingContext, ders: &[Derivation]) -> Submodule {
        Submodule::new(
            c.nvars(),
            c.nvars(),
            ders.iter()
                .map(|d| FreeModuleElement::new(d.coefficients().to_vec()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn apply_examples() {
        let c = ctx(&["x", "y"]);
        let p = |s: &str| parse_poly(s, &c).unwrap();
        assert_eq!(
            Derivation::coordinate(2, 0).apply(&p("x^2")).unwrap(),
            p("2*x")
        );
        // weights (3, 2), weighted degree 6
        let euler = der(&c, &["3*x", "2*y"]);
        assert_eq!(euler.apply(&p("x^2 + y^3")).unwrap(), p("6*x^2 + 6*y^3"));
        assert!(der(&c, &["y", "-x"])
            .apply(&p("x^2 + y^2"))
            .unwrap()
            .is_zero());
        assert!(der(&c, &["y"]).apply(&p("x")).is_err());
    }

    #[test]
    fn zero_ideal_gives_all_fields() {
        let c = ctx(&["x", "y", "z"]);
        let ders = log_derivations(&Ideal::zero(3));
        assert_eq!(ders.len(), 3);
        let full = Submodule::new(
            3,
            3,
            (0..3).map(|i| FreeModuleElement::basis(3, 3, i)).collect(),
        )
        .unwrap();
        assert!(span(&c, &ders).equals(&full));
    }

    #[test]
    fn hyperplane() {
        let c = ctx(&["x", "y"]);
        let ders = log_derivations(&ideal(&c, &["x"]));
        let expected = span(&c, &[der(&c, &["x", "0"]), der(&c, &["0", "1"])]);
        assert!(span(&c, &ders).equals(&expected));
    }

    #[test]
    fn cusp_contains_euler_and_hamiltonian() {
        let c = ctx(&["x", "y"]);
        let h = ideal(&c, &["x^2 + y^3"]);
        let ders = log_derivations(&h);
        let s = span(&c, &ders);
        let euler = der(&c, &["3*x", "2*y"]);
        let ham = der(&c, &["3*y^2", "-2*x"]);
        for xi in [&euler, &ham] {
            assert!(s
                .contains(&FreeModuleElement::new(xi.coefficients().to_vec()))
                .unwrap());
        }
        for xi in &ders {
            assert!(h.contains(&xi.apply(&h.generators()[0]).unwrap()));
        }
        // trivial fields present verbatim
        assert!(ders.contains(&der(&c, &["x^2 + y^3", "0"])));
        assert!(ders.contains(&der(&c, &["0", "x^2 + y^3"])));
    }

    #[test]
    fn jacobian_examples() {
        let c = ctx(&["x", "y", "z"]);
        assert!(jacobian_ideal(&ideal(&c, &["x"]))
            .unwrap()
            .jac_ideal
            .is_unit());
        let j = jacobian_ideal(&ideal(&c, &["x^2 + y^3"])).unwrap();
        assert!(j.jac_ideal.equals(&ideal(&c, &["x", "y^2"])));
        let h = ideal(&c, &["x^3 + x*y^3 + 2*x^2*z + 2*z^2"]);
        let j = jacobian_ideal(&h).unwrap();
        let expected = ideal(&c, &["3*x^2 + y^3 + 4*x*z", "3*x*y^2", "2*x^2 + 4*z"]).sum(&h);
        assert!(j.jac_ideal.equals(&expected));
        assert!(matches!(
            jacobian_ideal(&ideal(&c, &["x", "x^2"])),
            Err(Error::NotCompleteIntersection {
                codim: 1,
                generators: 2
            })
        ));
    }

    #[test]
    fn jacobian_condition() {
        let c = ctx(&["x", "y", "z"]);
        let h = ideal(&c, &["x^3 + x*y^3 + 2*x^2*z + 2*z^2"]);
        let g = ideal(&c, &["x^2 + y^3", "z"]);
        assert!(check_jacobian_condition(&h, &g).unwrap());
        assert!(check_jacobian_condition(&ideal(&c, &["x"]), &ideal(&c, &["x", "y"])).unwrap());
        let sq = ideal(&c, &["x^2"]);
        assert!(!check_jacobian_condition(&sq, &sq).unwrap());
    }

    #[test]
    fn text_form() {
        let c = ctx(&["x", "y"]);
        assert_eq!(
            der(&c, &["3*x", "-1"]).to_text(&c, MonomialOrder::DegRevLex),
            "3*x*d/dx - d/dy"
        );
        assert_eq!(
            der(&c, &["x + y", "0"]).to_text(&c, MonomialOrder::DegRevLex),
            "(x + y)*d/dx"
        );
    }
}
