//! Lines `Σ = V(y_1..y_n)` on a complete intersection: normal form of `h`
//! along `Σ`, valuations, `λ̃`, and `Ω¹_X ⊗ O_Σ` by Smith form over `k[x]`.

use super::smith::{smith_normal_form, SmithForm, UniMatrix};
use super::univariate::UniPoly;
use crate::gb::{FreeModuleElement, Ideal, Length, ModulePresentation, Submodule};
use crate::polyring::Polynomial;
use crate::primitive::primitive_ideal;
use crate::{Error, Result};

/// Variable indices: the line coordinate `x` and `y_j` in generator order of `g`.
#[derive(Debug, Clone)]
struct LineCoordinates {
    x: usize,
    y: Vec<usize>,
}

fn coordinates(g: &Ideal) -> Result<LineCoordinates> {
    let nvars = g.nvars();
    let mut y = Vec::new();
    for f in g.generators() {
        let mut terms = f.terms();
        let var = match (terms.next(), terms.next()) {
            (Some((m, _)), None) if m.degree() == 1 => m.exponents().iter().position(|&e| e == 1),
            _ => None,
        };
        match var {
            Some(v) if !y.contains(&v) => y.push(v),
            _ => {
                return Err(Error::NotALineCase(
                    "g must be generated by distinct coordinate variables".into(),
                ))
            }
        }
    }
    let rest: Vec<usize> = (0..nvars).filter(|v| !y.contains(v)).collect();
    match rest.as_slice() {
        [x] => Ok(LineCoordinates { x: *x, y }),
        _ => Err(Error::NotALineCase(format!(
            "g must leave exactly one free variable, found {}",
            rest.len()
        ))),
    }
}

fn ensure_contained(h: &Ideal, g: &Ideal) -> Result<()> {
    match h.generators().iter().position(|f| !g.contains(f)) {
        None => Ok(()),
        Some(i) => Err(Error::NotContained(format!(
            "generator {} of h is not in g",
            i + 1
        ))),
    }
}

/// `∂f/∂v` restricted to the line.
fn restricted_partial(f: &Polynomial, v: usize, c: &LineCoordinates) -> UniPoly {
    let d = f
        .partial_derivative(v)
        .expect("index in range")
        .substitute_zero(&c.y);
    UniPoly::from_polynomial(&d, c.x).expect("only x survives")
}

fn uni_to_poly(u: &UniPoly, nvars: usize, x: usize) -> Polynomial {
    u.to_polynomial(nvars, x)
}

/// `Σ_j m_ij v_j` with univariate coefficients.
fn apply_matrix(m: &UniMatrix, v: &[Polynomial], nvars: usize, x: usize) -> Vec<Polynomial> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Polynomial::zero(nvars), |acc, (a, f)| {
                    &acc + &(&uni_to_poly(a, nvars, x) * f)
                })
        })
        .collect()
}

/// Normal form `h̃_i ≡ b_i y'_i mod g²` along the line.
#[derive(Debug, Clone)]
pub struct LineCaseData {
    /// Index of the line coordinate.
    pub x: usize,
    /// `h̃ = U·h`.
    pub h_tilde: Vec<Polynomial>,
    /// New coordinates `y' = V⁻¹·y`, generating `g`.
    pub y_prime: Vec<Polynomial>,
    /// Monic `b_i = x^{l_i}`.
    pub b: Vec<Polynomial>,
    pub valuations: Vec<usize>,
    pub lambda: u64,
    /// `h̃_i − b_i y'_i ∈ g²` for all `i`.
    pub congruence_holds: bool,
    /// `U·B·V = D` and both transforms invertible.
    pub transforms_verified: bool,
    pub integral: Ideal,
    /// `∫_h g = (y'_1..y'_p) + (y'_{p+1}..y'_n)²`.
    pub integral_formula_holds: bool,
}

/// Diagonalises `h ≡ B·y mod g²` over `k[x]` by unimodular row operations
/// on `h` and coordinate changes on `y`.
///
/// Fails with `NotIcis` when some `b_i` vanishes identically or has a root
/// away from the origin.
pub fn line_normalize(h: &Ideal, g: &Ideal) -> Result<LineCaseData> {
    let c = coordinates(g)?;
    ensure_contained(h, g)?;
    let nvars = g.nvars();
    let hs = h.generators();
    let p = hs.len();
    let n = c.y.len();
    if p > n {
        return Err(Error::NotIcis(format!(
            "{p} equations but only {n} normal directions"
        )));
    }
    let bmat: UniMatrix = hs
        .iter()
        .map(|f| c.y.iter().map(|&v| restricted_partial(f, v, &c)).collect())
        .collect();
    let snf = smith_normal_form(&bmat);
    let transforms_verified = snf.verify(&bmat);
    let diag = snf.diagonal();
    let mut b = Vec::with_capacity(p);
    let mut valuations = Vec::with_capacity(p);
    for (i, d) in diag.iter().enumerate().take(p) {
        if d.is_zero() {
            return Err(Error::NotIcis(format!(
                "b_{} vanishes along the line",
                i + 1
            )));
        }
        if !d.is_monomial() {
            return Err(Error::NotIcis(format!(
                "b_{} has a zero away from the origin; the singular locus is not isolated",
                i + 1
            )));
        }
        valuations.push(d.valuation().expect("nonzero"));
        b.push(uni_to_poly(d, nvars, c.x));
    }
    let ys: Vec<Polynomial> = c.y.iter().map(|&v| Polynomial::var(nvars, v)).collect();
    let h_tilde = apply_matrix(&snf.u, hs, nvars, c.x);
    let y_prime = apply_matrix(&snf.v_inv, &ys, nvars, c.x);
    let g2 = g.power(2);
    let congruence_holds = (0..p).all(|i| g2.contains(&(&h_tilde[i] - &(&b[i] * &y_prime[i]))));

    let integral = primitive_ideal(h, g)?.integral;
    let first = Ideal::new(nvars, y_prime[..p].to_vec());
    let second = Ideal::new(nvars, y_prime[p..].to_vec());
    let integral_formula_holds = integral.equals(&first.sum(&second.power(2)));
    let lambda = valuations.iter().map(|&l| l as u64).sum();
    Ok(LineCaseData {
        x: c.x,
        h_tilde,
        y_prime,
        b,
        valuations,
        lambda,
        congruence_holds,
        transforms_verified,
        integral,
        integral_formula_holds,
    })
}

/// `λ̃ = dim_k O^p/(th(h) + g·O^p)`, `th(h)` spanned by the columns of `dhᵀ`.
pub fn lambda_tilde(h: &Ideal, g: &Ideal) -> Result<Length> {
    coordinates(g)?;
    ensure_contained(h, g)?;
    let nvars = g.nvars();
    let hs = h.generators();
    let p = hs.len();
    if p == 0 {
        return Ok(Length::Finite(0));
    }
    let cols: Vec<FreeModuleElement> = (0..nvars)
        .map(|j| {
            FreeModuleElement::new(
                hs.iter()
                    .map(|f| f.partial_derivative(j).expect("index in range"))
                    .collect(),
            )
        })
        .collect();
    Ok(ModulePresentation::over_quotient(g, Submodule::new(nvars, p, cols)?).vs_dimension())
}

/// `Ω¹_X ⊗ O_Σ = coker(O_Σ^p → O_Σ^{n+1})` by Smith form.
#[derive(Debug, Clone)]
pub struct OmegaLineReport {
    pub smith: SmithForm,
    /// Nonzero non-unit invariant factors.
    pub torsion_factors: Vec<UniPoly>,
    pub torsion_dimension: u64,
    pub free_rank: usize,
    pub lambda: u64,
    /// `1 + (n − p)`, from `Ω¹_X ⊗ O_Σ ≅ O_Σ ⊕ N ⊕ T(M)`.
    pub expected_free_rank: usize,
    pub transforms_verified: bool,
    pub n: usize,
    pub p: usize,
}

impl OmegaLineReport {
    pub fn torsion_matches(&self) -> bool {
        self.torsion_dimension == self.lambda
    }

    pub fn free_rank_matches(&self) -> bool {
        self.free_rank == self.expected_free_rank
    }
}

pub fn omega_line(h: &Ideal, g: &Ideal) -> Result<OmegaLineReport> {
    let line = line_normalize(h, g)?;
    let c = coordinates(g)?;
    let nvars = g.nvars();
    let hs = h.generators();
    let a: UniMatrix = (0..nvars)
        .map(|v| hs.iter().map(|f| restricted_partial(f, v, &c)).collect())
        .collect();
    let smith = smith_normal_form(&a);
    let transforms_verified = smith.verify(&a);
    let diag = smith.diagonal();
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion_factors: Vec<UniPoly> = diag
        .into_iter()
        .filter(|d| !d.is_zero() && !d.is_unit())
        .collect();
    let torsion_dimension = torsion_factors
        .iter()
        .map(|d| d.degree().unwrap_or(0) as u64)
        .sum();
    let n = c.y.len();
    let p = hs.len();
    Ok(OmegaLineReport {
        smith,
        torsion_factors,
        torsion_dimension,
        free_rank: nvars - nonzero,
        lambda: line.lambda,
        expected_free_rank: 1 + n - p,
        transforms_verified,
        n,
        p,
    })
}
