mod common;

use common::{ideal, poly, random_poly, ring};
use primctl::conormal::{conormal, is_locally_free, main_theorem_check, torsion_number, Freeness};
use primctl::deriv::{check_jacobian_condition, jacobian_ideal, log_derivations, Derivation};
use primctl::gb::{Ideal, Length, ModulePresentation, Submodule};
use primctl::polyring::Polynomial;
use primctl::primitive::{
    primitive_ideal, primitive_ideal_with, symbolic_power_2, verify_lemma_properties,
};
use primctl::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn extra_derivations_leave_the_result_unchanged() {
    let c = ring(&["x", "y", "z"]);
    let h = ideal(&c, &["x^3 + x*y^3 + 2*x^2*z + 2*z^2"]);
    let g = ideal(&c, &["x^2 + y^3", "z"]);
    let ders = log_derivations(&h);
    let base = primitive_ideal_with(&h, &g, &ders).unwrap();
    let mut more = ders.clone();
    for (a, b) in ders.iter().zip(ders.iter().skip(1)) {
        let sum = a
            .coefficients()
            .iter()
            .zip(b.coefficients())
            .map(|(p, q)| &(p * &poly(&c, "y")) + q)
            .collect();
        more.push(Derivation::new(sum));
    }
    let r = primitive_ideal_with(&h, &g, &more).unwrap();
    assert_eq!(
        base.integral.gb().polynomials(),
        r.integral.gb().polynomials()
    );
}

#[test]
fn other_generating_sets_of_h_give_the_same_result() {
    let c = ring(&["x", "y", "z"]);
    let h1 = ideal(&c, &["x^2*y + y*z + z^2"]);
    let h2 = ideal(
        &c,
        &["-3*x^2*y - 3*y*z - 3*z^2", "(x + 1)*(x^2*y + y*z + z^2)"],
    );
    assert!(h1.equals(&h2));
    let g = ideal(&c, &["x*y", "z"]);
    let a = primitive_ideal(&h1, &g).unwrap().integral;
    let b = primitive_ideal(&h2, &g).unwrap().integral;
    assert_eq!(a.gb().polynomials(), b.gb().polynomials());
}

#[test]
fn result_is_independent_of_the_generators_of_g() {
    let c = ring(&["x", "y", "z"]);
    let h = ideal(&c, &["x^3 + x*y^3 + 2*x^2*z + 2*z^2"]);
    let g = ideal(&c, &["x^2 + y^3", "z"]);
    let g_alt = ideal(&c, &["x^2 + y^3 + 2*x*z + z^2", "z", "x*z"]);
    let a = primitive_ideal(&h, &g).unwrap().integral;
    let b = primitive_ideal(&h, &g_alt).unwrap().integral;
    assert!(a.equals(&b));
}

#[test]
fn h_equal_to_g() {
    let c = ring(&["x", "y", "z"]);
    let g = ideal(&c, &["x^2 + y^3", "z"]);
    let rep = verify_lemma_properties(&g, &g, None).unwrap();
    assert!(rep.all_hold());
    assert!(rep.integral.equals(&g));
}

#[test]
fn containment_is_checked() {
    let c = ring(&["x", "y"]);
    let r = primitive_ideal(&ideal(&c, &["x"]), &ideal(&c, &["y"]));
    assert!(matches!(r, Err(Error::NotContained(_))));
    let r = verify_lemma_properties(
        &ideal(&c, &["x*y"]),
        &ideal(&c, &["x"]),
        Some((&ideal(&c, &["x"]), &ideal(&c, &["y"]))),
    );
    assert!(r.unwrap().all_hold());
}

#[test]
fn symbolic_power_examples() {
    let c = ring(&["x", "y", "z"]);
    let h = ideal(&c, &["x^3 + x*y^3 + 2*x^2*z + 2*z^2"]);
    let g = ideal(&c, &["x^2 + y^3", "z"]);
    let sp = symbolic_power_2(&h, &g).unwrap();
    let expected: Vec<Polynomial> = ideal(&c, &["x^2 + y^3 + 2*x*z", "z^2"])
        .gb()
        .polynomials()
        .iter()
        .map(|f| h.normal_form(f))
        .filter(|f| !f.is_zero())
        .collect();
    assert!(Ideal::new(3, sp)
        .sum(&h)
        .equals(&Ideal::new(3, expected).sum(&h)));
    let surface = ideal(&c, &["x^2*y + y*z + z^2"]);
    let sp = symbolic_power_2(&surface, &ideal(&c, &["x", "z"])).unwrap();
    assert!(Ideal::new(3, sp)
        .sum(&surface)
        .equals(&ideal(&c, &["x^2", "z"])));
}

#[test]
fn two_lines_torsion_is_spanned_by_x2y() {
    let c = ring(&["x", "y", "z"]);
    let h = ideal(&c, &["x^2*y + y*z + z^2"]);
    let g = ideal(&c, &["x*y", "z"]);
    let data = conormal(&h, &g).unwrap();
    assert_eq!(data.t.vs_dimension(), Length::Finite(1));
    let base = g.power(2).sum(&h);
    assert!(base.equals(&ideal(&c, &["x^2*y^2", "x*y*z", "z^2", "x^2*y + y*z"])));
    let x2y = poly(&c, "x^2*y");
    assert!(!base.contains(&x2y));
    assert!(base.sum(&Ideal::new(3, vec![x2y])).equals(data.integral()));
    assert!(data.exactness_holds());
}

#[test]
fn split_certificate_implies_local_freeness() {
    let c = ring(&["x", "y", "z"]);
    let cases = [
        (
            vec!["x^3 + x*y^3 + 2*x^2*z + 2*z^2"],
            vec!["x^2 + y^3 + 2*x*z + z^2", "z"],
        ),
        (vec!["x^2*y + y*z + z^2"], vec!["x", "z"]),
        (vec!["x^2*y + y*z + z^2"], vec!["z", "y"]),
    ];
    for (h, g) in cases {
        let h = ideal(&c, &h);
        let gens: Vec<Polynomial> = g.iter().map(|s| poly(&c, s)).collect();
        let g = Ideal::new(3, gens.clone());
        let mc = main_theorem_check(&h, &gens, &[0], &[1]).unwrap();
        if mc.holds {
            let data = conormal(&h, &g).unwrap();
            assert!(matches!(
                is_locally_free(&data.n, data.rank_target()),
                Freeness::LocallyFreeOfRank(1)
            ));
        }
    }
}

#[test]
fn split_holds_on_a_line() {
    let c = ring(&["x", "y"]);
    let h = ideal(&c, &["x^3*y + y^3"]);
    let g = [poly(&c, "y")];
    assert!(main_theorem_check(&h, &g, &[0], &[]).unwrap().holds);
    assert!(primitive_ideal(&h, &ideal(&c, &["y"]))
        .unwrap()
        .integral
        .equals(&ideal(&c, &["y"])));
}

#[test]
fn zero_module_is_free_of_rank_zero() {
    let c = ring(&["x"]);
    let g = ideal(&c, &["x"]);
    let rel = Submodule::new(
        1,
        1,
        vec![primctl::gb::FreeModuleElement::new(vec![poly(&c, "1")])],
    )
    .unwrap();
    let zero = ModulePresentation::over_quotient(&g, rel);
    assert!(matches!(
        is_locally_free(&zero, 0),
        Freeness::LocallyFreeOfRank(0)
    ));
}

#[test]
fn jacobian_condition_failure_is_reported() {
    let c = ring(&["x", "y"]);
    let sq = ideal(&c, &["x^2"]);
    assert!(!check_jacobian_condition(&sq, &sq).unwrap());
    assert!(jacobian_ideal(&sq)
        .unwrap()
        .jac_ideal
        .equals(&ideal(&c, &["x"])));
    assert!(matches!(
        torsion_number(&ideal(&c, &["y^2"]), &ideal(&c, &["y"])),
        Err(Error::JacobianConditionFailed)
    ));
}

#[test]
fn random_hypersurfaces_through_coordinate_lines() {
    // h = y·a + z·b with random a, b: the line y = z = 0 lies on V(h)
    let c = ring(&["x", "y", "z"]);
    let g = ideal(&c, &["y", "z"]);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checked = 0;
    while checked < 8 {
        let a = random_poly(&mut rng, 3, 2, 3);
        let b = random_poly(&mut rng, 3, 2, 3);
        let f = &(&poly(&c, "y") * &a) + &(&poly(&c, "z") * &b);
        if f.is_zero() {
            continue;
        }
        let h = Ideal::new(3, vec![f]);
        let r = primitive_ideal(&h, &g).unwrap();
        assert!(r.definitional_audit() && r.containment_chain());
        checked += 1;
    }
}
