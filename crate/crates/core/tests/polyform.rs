use proptest::prelude::*;
use purespin::polyform::{
    courant_bracket, derivation_action, graph_integrability, sigma_action, sigma_compose, AffineMap, PolyField, PolyForm,
    PolySection,
};
use purespin::random::{self, Rng};
use purespin::Rational;

type F = Rational;

fn setup(seed: u64) -> (Rng, usize) {
    (random::rng(seed), 2 + (seed % 3) as usize)
}

fn closed_three_form(rng: &mut Rng, n: usize) -> PolyForm<F> {
    if n < 3 {
        return PolyForm::zero(n).unwrap();
    }
    random::poly_form(rng, n, 2, 2).unwrap().d().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn d_squares_to_zero(seed in any::<u64>()) {
        let (mut rng, n) = setup(seed);
        for k in 0..n {
            let a = random::poly_form::<F>(&mut rng, n, k, 3).unwrap();
            prop_assert!(a.d().unwrap().d().unwrap().is_zero());
        }
    }

    #[test]
    fn twisted_d_squares_to_zero(seed in any::<u64>()) {
        let (mut rng, n) = setup(seed);
        let h = closed_three_form(&mut rng, n);
        if h.is_zero() {
            return Ok(());
        }
        let a = random::poly_form::<F>(&mut rng, n, 1, 2).unwrap()
            .add(&random::poly_form(&mut rng, n, 0, 2).unwrap()).unwrap();
        prop_assert!(a.d_h(&h).unwrap().d_h(&h).unwrap().is_zero());
    }

    #[test]
    fn cartan_formula(seed in any::<u64>()) {
        let (mut rng, n) = setup(seed);
        let x = random::poly_field::<F>(&mut rng, n, 2).unwrap();
        let k = (seed as usize / 7) % (n + 1);
        let a = random::poly_form::<F>(&mut rng, n, k, 2).unwrap();
        let y = random::poly_field::<F>(&mut rng, n, 1).unwrap();
        // ℒ_X i_Y − i_Y ℒ_X = i_{[X,Y]}
        let lhs = a.interior(&y).unwrap().lie(&x).unwrap().sub(&a.lie(&x).unwrap().interior(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, a.interior(&x.bracket(&y).unwrap()).unwrap());
        // ℒ_X commutes with d
        prop_assert_eq!(a.d().unwrap().lie(&x).unwrap(), a.lie(&x).unwrap().d().unwrap());
    }

    #[test]
    fn lie_bracket_identities(seed in any::<u64>()) {
        let (mut rng, n) = setup(seed);
        let x = random::poly_field::<F>(&mut rng, n, 2).unwrap();
        let y = random::poly_field::<F>(&mut rng, n, 2).unwrap();
        let z = random::poly_field::<F>(&mut rng, n, 1).unwrap();
        prop_assert_eq!(x.bracket(&y).unwrap(), y.bracket(&x).unwrap().neg());
        let jac = x.bracket(&y.bracket(&z).unwrap()).unwrap()
            .add(&y.bracket(&z.bracket(&x).unwrap()).unwrap()).unwrap()
            .add(&z.bracket(&x.bracket(&y).unwrap()).unwrap()).unwrap();
        prop_assert!(jac.is_zero());
        let w = x.add(&z).unwrap();
        prop_assert_eq!(w.bracket(&y).unwrap(), x.bracket(&y).unwrap().add(&z.bracket(&y).unwrap()).unwrap());
    }

    #[test]
    fn b_transform_shifts_twist(seed in any::<u64>()) {
        let (mut rng, n) = setup(seed);
        let h = closed_three_form(&mut rng, n);
        let b = random::poly_form::<F>(&mut rng, n, 2, 2).unwrap();
        let s1 = random::poly_section::<F>(&mut rng, n, 2).unwrap();
        let s2 = random::poly_section::<F>(&mut rng, n, 2).unwrap();
        // τ_B⟦s1, s2⟧_{H+dB} = ⟦τ_B s1, τ_B s2⟧_H
        let h2 = h.add(&b.d().unwrap()).unwrap();
        let lhs = courant_bracket(&s1, &s2, &h2).unwrap().tau_b(&b).unwrap();
        let rhs = courant_bracket(&s1.tau_b(&b).unwrap(), &s2.tau_b(&b).unwrap(), &h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivation_matches_bracket(seed in any::<u64>()) {
        let (mut rng, n) = setup(seed);
        let h = closed_three_form(&mut rng, n);
        let s1 = random::poly_section::<F>(&mut rng, n, 2).unwrap();
        let s2 = random::poly_section::<F>(&mut rng, n, 2).unwrap();
        let b = s1.xi.d().unwrap().sub(&h.interior(&s1.x).unwrap()).unwrap();
        prop_assert_eq!(derivation_action(&s1.x, &b, &s2).unwrap(), courant_bracket(&s1, &s2, &h).unwrap());
    }

    #[test]
    fn graph_routes_agree(seed in any::<u64>()) {
        let (mut rng, n) = setup(seed);
        let omega = random::poly_form::<F>(&mut rng, n, 2, 2).unwrap();
        let h = if seed % 2 == 0 { omega.d().unwrap().neg() } else { closed_three_form(&mut rng, n) };
        let g = graph_integrability(&omega, &h).unwrap();
        prop_assert_eq!(g.formula, g.frame);
    }

    #[test]
    fn sigma_group_law(seed in any::<u64>()) {
        let (mut rng, n) = setup(seed);
        let affine = |rng: &mut Rng| AffineMap::new(random::invertible(rng, n).unwrap(), random::vector(rng, n)).unwrap();
        let (p1, p2) = (affine(&mut rng), affine(&mut rng));
        let b1 = random::poly_form::<F>(&mut rng, n, 2, 1).unwrap();
        let b2 = random::poly_form::<F>(&mut rng, n, 2, 1).unwrap();
        let a = random::poly_form::<F>(&mut rng, n, 1, 2).unwrap().add(&random::poly_form(&mut rng, n, 0, 1).unwrap()).unwrap();
        let two_steps = sigma_action(&p1, &b1, &sigma_action(&p2, &b2, &a).unwrap()).unwrap();
        let (p, b) = sigma_compose((&p1, &b1), (&p2, &b2)).unwrap();
        prop_assert_eq!(two_steps, sigma_action(&p, &b, &a).unwrap());
    }
}

#[test]
fn derivation_examples() {
    let n = 3;
    let zero = PolyForm::<F>::zero(n).unwrap();
    let b = PolyForm::from_strings(n, &[("[1,2]".to_string(), "x3".to_string())].into()).unwrap();
    let y = PolyField::coordinate(n, 0);
    let s = PolySection::new(y.clone(), zero.clone()).unwrap();
    let out = derivation_action(&PolyField::zero(n), &b, &s).unwrap();
    assert!(out.x.is_zero());
    assert_eq!(out.xi, b.interior(&y).unwrap().neg());

    let x = PolyField::new(vec![
        purespin::polyform::Poly::parse(n, "x2").unwrap(),
        purespin::polyform::Poly::zero(n),
        purespin::polyform::Poly::zero(n),
    ])
    .unwrap();
    let eta = PolyForm::from_strings(n, &[("[1]".to_string(), "x1 x3".to_string())].into()).unwrap();
    let s = PolySection::new(PolyField::coordinate(n, 1), eta.clone()).unwrap();
    let out = derivation_action(&x, &zero, &s).unwrap();
    assert_eq!(out.x, x.bracket(&s.x).unwrap());
    assert_eq!(out.xi, eta.lie(&x).unwrap());
}
