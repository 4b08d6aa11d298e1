//! Conormal module `M = g/(g² + h)` over `O/g`, its torsion part
//! `T = ∫_h g/(g² + h)`, the quotient `N = g/∫_h g`, torsion numbers,
//! freeness certificates and the line case.

mod bmatrix;
mod fitting;
mod line;
mod smith;
mod univariate;

pub use bmatrix::{extract_b_matrix, BMatrixData};
pub use fitting::{fitting_ideal, is_locally_free, Freeness};
pub use line::{lambda_tilde, line_normalize, omega_line, LineCaseData, OmegaLineReport};
pub use smith::{smith_normal_form, SmithForm, UniMatrix};
pub use univariate::UniPoly;

use crate::deriv::check_jacobian_condition;
use crate::gb::{syzygies, FreeModuleElement, Ideal, Length, ModulePresentation, Submodule};
use crate::polyring::Polynomial;
use crate::primitive::{primitive_ideal, PrimitiveResult};
use crate::{Error, Result};

/// `M`, `T`, `N` presented over `O/g`.
#[derive(Debug, Clone)]
pub struct ConormalData {
    pub h: Ideal,
    pub g: Ideal,
    pub primitive: PrimitiveResult,
    /// Generated by the images of `g`'s generators.
    pub m: ModulePresentation,
    /// Generated by the images of the generators of `∫_h g`.
    pub t: ModulePresentation,
    /// Generated by the images of `g`'s generators.
    pub n: ModulePresentation,
    /// `codim h`.
    pub p: usize,
    /// `codim g`.
    pub n_grade: usize,
}

impl ConormalData {
    pub fn integral(&self) -> &Ideal {
        &self.primitive.integral
    }

    /// Generators of `T`.
    pub fn t_generators(&self) -> &[Polynomial] {
        self.primitive.integral.generators()
    }

    /// Expected rank of `N`.
    pub fn rank_target(&self) -> usize {
        self.n_grade.saturating_sub(self.p)
    }

    /// `rel(N) = rel(M) + (coordinates of T's generators) + g·O^n`.
    pub fn exactness_holds(&self) -> bool {
        let nvars = self.g.nvars();
        let n = self.g.generators().len();
        let mut images = Vec::new();
        for f in self.t_generators() {
            match self.g.lift(f) {
                Some(c) => images.push(FreeModuleElement::new(c)),
                None => return false,
            }
        }
        let Ok(images) = Submodule::new(nvars, n, images) else {
            return false;
        };
        match self.m.relations.sum(&images) {
            Ok(s) => s.with_multiples(&self.g).equals(&self.n.relations),
            Err(_) => false,
        }
    }
}

/// `{a ∈ O^k : Σ a_i f_i ∈ target}`.
fn relations_into(nvars: usize, fs: &[Polynomial], target: &Ideal) -> Result<Submodule> {
    let k = fs.len();
    let vectors: Vec<FreeModuleElement> = fs
        .iter()
        .chain(target.generators())
        .map(|f| FreeModuleElement::new(vec![f.clone()]))
        .collect();
    let syz = syzygies(nvars, &vectors)?;
    Submodule::new(
        nvars,
        k,
        syz.generators()
            .iter()
            .map(|s| s.truncate(k))
            .filter(|a| !a.is_zero())
            .collect(),
    )
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

/// Presentations of `M`, `T` and `N`.
///
/// Requires `h ⊆ g`, `h` a complete intersection and the Jacobian condition.
pub fn conormal(h: &Ideal, g: &Ideal) -> Result<ConormalData> {
    ensure_contained(h, g)?;
    if g.is_zero() || g.is_unit() {
        return Err(Error::InvalidRing(
            "g must be a proper nonzero ideal".into(),
        ));
    }
    if !check_jacobian_condition(h, g)? {
        return Err(Error::JacobianConditionFailed);
    }
    let nvars = g.nvars();
    let primitive = primitive_ideal(h, g)?;
    let base = g.power(2).sum(h);
    let gs = g.generators();
    let m = ModulePresentation::over_quotient(g, relations_into(nvars, gs, &base)?);
    let t = ModulePresentation::over_quotient(
        g,
        relations_into(nvars, primitive.integral.generators(), &base)?,
    );
    let n = ModulePresentation::over_quotient(g, relations_into(nvars, gs, &primitive.integral)?);
    Ok(ConormalData {
        h: h.clone(),
        g: g.clone(),
        p: h.codimension().unwrap_or(nvars + 1),
        n_grade: g.codimension().unwrap_or(nvars + 1),
        primitive,
        m,
        t,
        n,
    })
}

/// Torsion number from `T` and, when available, from `O/((b) + g)`.
#[derive(Debug, Clone)]
pub struct TorsionNumber {
    /// `dim_k T`.
    pub value: Length,
    /// `dim_k O/((b) + g)` when `t = p` and `b` is a non-zero divisor mod `g`.
    pub via_determinant: Option<Length>,
    pub b_matrix: BMatrixData,
    pub conormal: ConormalData,
}

impl TorsionNumber {
    pub fn pipelines_agree(&self) -> bool {
        self.via_determinant
            .as_ref()
            .is_none_or(|v| *v == self.value)
    }
}

/// `λ(h, g) = dim_k ∫_h g/(g² + h)`, with the determinant cross-check.
pub fn torsion_number(h: &Ideal, g: &Ideal) -> Result<TorsionNumber> {
    let conormal = conormal(h, g)?;
    let mut b_matrix = extract_b_matrix(h, g)?;
    annotate_torsion_generators(&mut b_matrix, &conormal);
    let value = conormal.t.vs_dimension();
    let via_determinant = match (&b_matrix.det, b_matrix.det_nonzero_divisor) {
        (Some(det), Some(true)) => Some(
            ModulePresentation::cyclic(&Ideal::new(g.nvars(), vec![det.clone()]).sum(g))
                .vs_dimension(),
        ),
        _ => None,
    };
    Ok(TorsionNumber {
        value,
        via_determinant,
        b_matrix,
        conormal,
    })
}

/// Counts normalised generators in `∫_h g` when `g`'s generating set is minimal.
pub fn annotate_torsion_generators(b: &mut BMatrixData, data: &ConormalData) {
    if b.generators.len() == data.n_grade {
        let integral = data.integral();
        b.torsion_generators = Some(b.generators.iter().filter(|f| integral.contains(f)).count());
    }
}

/// Whether `∫_h g = (first block) + (second block)²`.
#[derive(Debug, Clone)]
pub struct MainCheck {
    pub holds: bool,
    pub integral: Ideal,
    pub candidate: Ideal,
    pub p: usize,
}

/// Compares `∫_h g` with `(g_i : i ∈ first) + (g_j : j ∈ second)²`.
///
/// `generators` must generate `g`; `first` and `second` partition their
/// 0-based indices and `first` has `codim h` elements.
pub fn main_theorem_check(
    h: &Ideal,
    generators: &[Polynomial],
    first: &[usize],
    second: &[usize],
) -> Result<MainCheck> {
    let nvars = h.nvars();
    let n = generators.len();
    let mut seen = vec![false; n];
    for &i in first.iter().chain(second) {
        if i >= n {
            return Err(Error::BadSplit(format!(
                "index {} out of range 1..={n}",
                i + 1
            )));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::BadSplit(format!("index {} repeated", i + 1)));
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::BadSplit(format!("index {} missing", i + 1)));
    }
    let p = h.codimension().unwrap_or(nvars + 1);
    if first.len() != p {
        return Err(Error::BadSplit(format!(
            "first block has {} generators, expected {p}",
            first.len()
        )));
    }
    let g = Ideal::new(nvars, generators.to_vec());
    let integral = primitive_ideal(h, &g)?.integral;
    let pick =
        |idx: &[usize]| Ideal::new(nvars, idx.iter().map(|&i| generators[i].clone()).collect());
    let candidate = pick(first).sum(&pick(second).power(2)).canonical();
    Ok(MainCheck {
        holds: integral.equals(&candidate),
        integral,
        candidate,
        p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::polyring::RingContext;

    fn ideal(c: &RingContext, gens: &[&str]) -> Ideal {
        Ideal::new(
            c.nvars(),
            gens.iter().map(|g| parse_poly(g, c).unwrap()).collect(),
        )
    }

    fn xyz() -> RingContext {
        RingContext::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn curve_in_space_is_free_with_torsion_three() {
        let c = xyz();
        let h = ideal(&c, &["x^3 + x*y^3 + 2*x^2*z + 2*z^2"]);
        let g = ideal(&c, &["x^2 + y^3", "z"]);
        let tn = torsion_number(&h, &g).unwrap();
        assert_eq!(tn.value, Length::Finite(3));
        assert_eq!(tn.via_determinant, Some(Length::Finite(3)));
        assert_eq!(tn.b_matrix.t, 1);
        assert_eq!(tn.b_matrix.det, Some(parse_poly("x", &c).unwrap()));
        assert_eq!(tn.b_matrix.torsion_bound_holds(), Some(true));
        assert!(tn.b_matrix.congruence_holds);
        assert!(tn.conormal.exactness_holds());
        assert!(is_locally_free(&tn.conormal.n, 1).is_locally_free());
        let gens = ideal(&c, &["x^2 + y^3 + 2*x*z + z^2", "z"])
            .generators()
            .to_vec();
        assert!(main_theorem_check(&h, &gens, &[0], &[1]).unwrap().holds);
        // T is generated by g1' = x^2 + y^3 + 2xz + z^2
        let t_gen = parse_poly("x^2 + y^3 + 2*x*z + z^2", &c).unwrap();
        let span = ideal(&c, &["x^2 + y^3 + 2*x*z + z^2"])
            .product(&Ideal::unit(3))
            .sum(&g.power(2))
            .sum(&h);
        assert!(tn
            .conormal
            .integral()
            .generators()
            .iter()
            .all(|f| span.contains(f)));
        assert!(tn.conormal.integral().contains(&t_gen));
    }

    #[test]
    fn two_lines_are_not_free() {
        let c = xyz();
        let h = ideal(&c, &["x^2*y + y*z + z^2"]);
        let g = ideal(&c, &["x*y", "z"]);
        let tn = torsion_number(&h, &g).unwrap();
        assert_eq!(tn.value, Length::Finite(1));
        assert_eq!(tn.via_determinant, None);
        assert_eq!(tn.b_matrix.t, 2);
        assert!(tn.b_matrix.t_at_least_p);
        assert!(tn.conormal.exactness_holds());
        assert!(!is_locally_free(&tn.conormal.n, 1).is_locally_free());
        let gens = g.generators().to_vec();
        assert!(!main_theorem_check(&h, &gens, &[0], &[1]).unwrap().holds);
        assert!(!main_theorem_check(&h, &gens, &[1], &[0]).unwrap().holds);
        assert!(matches!(
            main_theorem_check(&h, &gens, &[0, 1], &[]),
            Err(Error::BadSplit(_))
        ));
        assert!(matches!(
            main_theorem_check(&h, &gens, &[0], &[0]),
            Err(Error::BadSplit(_))
        ));
    }

    #[test]
    fn degenerate_pair_fails_guards() {
        let c = RingContext::new(&["x", "y"]).unwrap();
        let h = ideal(&c, &["y^2"]);
        let g = ideal(&c, &["y"]);
        let b = extract_b_matrix(&h, &g).unwrap();
        assert_eq!(b.t, 0);
        assert!(!b.t_at_least_p);
        assert!(matches!(
            conormal(&h, &g),
            Err(Error::JacobianConditionFailed)
        ));
    }

    #[test]
    fn trivial_pair() {
        let c = xyz();
        let g = ideal(&c, &["x", "y"]);
        let tn = torsion_number(&g, &g).unwrap();
        assert_eq!(tn.value, Length::Finite(0));
        assert!(is_locally_free(&tn.conormal.n, 0).is_locally_free());
    }

    #[test]
    fn line_family() {
        let c = RingContext::new(&["x", "y"]).unwrap();
        let g = ideal(&c, &["y"]);
        for k in 1..=3 {
            let h = ideal(&c, &[&format!("x^{k}*y + y^3")]);
            let line = line_normalize(&h, &g).unwrap();
            assert_eq!(line.lambda, k);
            assert!(
                line.congruence_holds && line.transforms_verified && line.integral_formula_holds
            );
            assert_eq!(lambda_tilde(&h, &g).unwrap(), Length::Finite(k));
            assert_eq!(torsion_number(&h, &g).unwrap().value, Length::Finite(k));
            let om = omega_line(&h, &g).unwrap();
            assert_eq!(om.torsion_dimension, k);
            assert_eq!(om.free_rank, 1);
            assert!(om.torsion_matches() && om.free_rank_matches() && om.transforms_verified);
        }
        let smooth = line_normalize(&g, &g).unwrap();
        assert_eq!(smooth.lambda, 0);
    }

    #[test]
    fn line_on_two_lines_surface() {
        let c = xyz();
        let h = ideal(&c, &["x^2*y + y*z + z^2"]);
        let g2 = ideal(&c, &["y", "z"]);
        let line = line_normalize(&h, &g2).unwrap();
        assert_eq!(line.lambda, 2);
        assert!(line.integral_formula_holds);
        assert_eq!(lambda_tilde(&h, &g2).unwrap(), Length::Finite(2));
        assert_eq!(torsion_number(&h, &g2).unwrap().value, Length::Finite(2));
        let om = omega_line(&h, &g2).unwrap();
        assert_eq!(om.free_rank, 2);
        assert!(om.torsion_matches() && om.free_rank_matches());
        assert!(matches!(
            line_normalize(&h, &ideal(&c, &["x*y", "z"])),
            Err(Error::NotALineCase(_))
        ));
    }

    #[test]
    fn non_isolated_singularity_is_rejected() {
        let c = RingContext::new(&["x", "y"]).unwrap();
        let g = ideal(&c, &["y"]);
        let h = ideal(&c, &["(x^2 - 1)*y + y^3"]);
        assert!(matches!(line_normalize(&h, &g), Err(Error::NotIcis(_))));
        let h = ideal(&c, &["y^2"]);
        assert!(matches!(line_normalize(&h, &g), Err(Error::NotIcis(_))));
    }
}
