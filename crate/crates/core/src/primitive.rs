//! Primitive ideals `∫_h g = {f ∈ g : ξ(f) ∈ g for all ξ ∈ Der_h}`.
//!
//! For `f = Σ a_i g_i` and any derivation `ξ`, `ξ(f) ≡ Σ a_i ξ(g_i) mod g`.
//! So `∫_h g` is the image under `a ↦ Σ a_i g_i` of the kernel `K` of
//! `O^n → (O/g)^s, a ↦ (Σ a_i ξ_t(g_i))_t`, taken over a generating set
//! `ξ_1..ξ_s` of `Der_h`.

use crate::deriv::{check_jacobian_condition, log_derivations, Derivation};
use crate::gb::{syzygies, FreeModuleElement, Ideal, Submodule};
use crate::polyring::Polynomial;
use crate::{Error, Result};

/// `∫_h g` together with the coefficient module that produced it.
#[derive(Debug, Clone)]
pub struct PrimitiveResult {
    /// Canonical reduced basis of `∫_h g`.
    pub integral: Ideal,
    /// `K = {a ∈ O^n : Σ a_i ξ_t(g_i) ∈ g for all t}`.
    pub witness: Submodule,
    pub h: Ideal,
    pub g: Ideal,
    /// Generating set of `Der_h` used for the computation.
    pub derivations: Vec<Derivation>,
}

impl PrimitiveResult {
    /// `ξ(f) ∈ g` for every listed derivation and every generator `f` of the result.
    pub fn definitional_audit(&self) -> bool {
        self.integral.generators().iter().all(|f| {
            self.derivations
                .iter()
                .all(|xi| self.g.contains(&xi.apply(f).expect("same ring")))
        })
    }

    /// `h + g² ⊆ ∫_h g ⊆ g`.
    pub fn containment_chain(&self) -> bool {
        self.integral.contains_ideal(&self.h)
            && self.integral.contains_ideal(&self.g.power(2))
            && self.g.contains_ideal(&self.integral)
    }
}

fn check_contained(h: &Ideal, g: &Ideal) -> Result<()> {
    match h.generators().iter().position(|f| !g.contains(f)) {
        None => Ok(()),
        Some(i) => Err(Error::NotContained(format!(
            "generator {} of h is not in g",
            i + 1
        ))),
    }
}

/// `∫_h g`, computing `Der_h` from `h`.
pub fn primitive_ideal(h: &Ideal, g: &Ideal) -> Result<PrimitiveResult> {
    check_contained(h, g)?;
    let ders = log_derivations(h);
    primitive_ideal_with(h, g, &ders)
}

/// `∫_h g` for an explicit generating set of `Der_h`.
///
/// The caller guarantees that `derivations` generates `Der_h`; any
/// generating set gives the same ideal.
pub fn primitive_ideal_with(
    h: &Ideal,
    g: &Ideal,
    derivations: &[Derivation],
) -> Result<PrimitiveResult> {
    if h.nvars() != g.nvars() {
        return Err(Error::ContextMismatch {
            left: h.nvars(),
            right: g.nvars(),
        });
    }
    check_contained(h, g)?;
    let nvars = g.nvars();
    let gs = g.generators();
    let n = gs.len();

    // rows r_t = (ξ_t(g_i) mod g)_i; zero rows impose nothing
    let mut rows: Vec<Vec<Polynomial>> = Vec::new();
    for xi in derivations {
        let row = gs
            .iter()
            .map(|gi| xi.apply(gi).map(|v| g.normal_form(&v)))
            .collect::<Result<Vec<_>>>()?;
        if row.iter().any(|v| !v.is_zero()) && !rows.contains(&row) {
            rows.push(row);
        }
    }
    let s = rows.len();

    let witness_gens: Vec<FreeModuleElement> = if n == 0 {
        Vec::new()
    } else if s == 0 {
        (0..n)
            .map(|i| FreeModuleElement::basis(nvars, n, i))
            .collect()
    } else {
        let mut vectors: Vec<FreeModuleElement> = (0..n)
            .map(|i| FreeModuleElement::new(rows.iter().map(|r| r[i].clone()).collect()))
            .collect();
        for gk in gs {
            for t in 0..s {
                vectors.push(FreeModuleElement::basis(nvars, s, t).scale(gk));
            }
        }
        syzygies(nvars, &vectors)?
            .generators()
            .iter()
            .map(|z| z.truncate(n))
            .filter(|a| !a.is_zero())
            .collect()
    };
    let witness = if n == 0 {
        Submodule::zero(nvars, 1)
    } else {
        Submodule::new(nvars, n, witness_gens)?
    };

    let mut gens: Vec<Polynomial> = witness.generators().iter().map(|a| a.dot(gs)).collect();
    gens.extend(h.generators().iter().cloned());
    gens.extend(g.power(2).generators().iter().cloned());
    let integral = Ideal::new(nvars, gens).canonical();

    let result = PrimitiveResult {
        integral,
        witness,
        h: h.clone(),
        g: g.clone(),
        derivations: derivations.to_vec(),
    };
    assert!(result.containment_chain(), "h + g^2 ⊆ ∫_h g ⊆ g violated");
    Ok(result)
}

/// Generators of the second symbolic power of `g/h` in `O/h`, as normal
/// forms modulo `h` of the generators of `∫_h g`. Zero classes are dropped.
///
/// Requires the Jacobian condition; `g` unmixed and radical is assumed.
pub fn symbolic_power_2(h: &Ideal, g: &Ideal) -> Result<Vec<Polynomial>> {
    check_contained(h, g)?;
    if !check_jacobian_condition(h, g)? {
        return Err(Error::JacobianConditionFailed);
    }
    let res = primitive_ideal(h, g)?;
    let mut out: Vec<Polynomial> = Vec::new();
    for f in res.integral.generators() {
        let r = h.normal_form(f);
        if !r.is_zero() && !out.contains(&r) {
            out.push(r);
        }
    }
    Ok(out)
}

/// Outcome of the structural checks on primitive ideals.
#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub integral: Ideal,
    pub contains_h: bool,
    pub contains_g_squared: bool,
    pub inside_g: bool,
    pub definitional_audit: bool,
    pub intersection: Option<IntersectionReport>,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.contains_h
            && self.contains_g_squared
            && self.inside_g
            && self.definitional_audit
            && self.intersection.as_ref().is_none_or(|r| r.holds)
    }
}

/// `∫_h(g₁ ∩ g₂)` against `∫_h g₁ ∩ ∫_h g₂`.
#[derive(Debug, Clone)]
pub struct IntersectionReport {
    pub integral_g1: Ideal,
    pub integral_g2: Ideal,
    pub integral_of_intersection: Ideal,
    pub intersection_of_integrals: Ideal,
    pub holds: bool,
}

/// Checks `h + g² ⊆ ∫_h g ⊆ g`, the definitional audit, and, for a given
/// pair, `∫_h(g₁ ∩ g₂) = ∫_h g₁ ∩ ∫_h g₂`.
pub fn verify_lemma_properties(
    h: &Ideal,
    g: &Ideal,
    pair: Option<(&Ideal, &Ideal)>,
) -> Result<LemmaReport> {
    check_contained(h, g)?;
    let ders = log_derivations(h);
    let res = primitive_ideal_with(h, g, &ders)?;
    let intersection = match pair {
        None => None,
        Some((g1, g2)) => {
            let r1 = primitive_ideal_with(h, g1, &ders)?;
            let r2 = primitive_ideal_with(h, g2, &ders)?;
            let r12 = primitive_ideal_with(h, &g1.intersect(g2), &ders)?;
            let meet = r1.integral.intersect(&r2.integral).canonical();
            let holds = r12.integral.equals(&meet);
            Some(IntersectionReport {
                integral_g1: r1.integral,
                integral_g2: r2.integral,
                integral_of_intersection: r12.integral,
                intersection_of_integrals: meet,
                holds,
            })
        }
    };
    Ok(LemmaReport {
        contains_h: res.integral.contains_ideal(h),
        contains_g_squared: res.integral.contains_ideal(&g.power(2)),
        inside_g: g.contains_ideal(&res.integral),
        definitional_audit: res.definitional_audit(),
        integral: res.integral,
        intersection,
    })
}
