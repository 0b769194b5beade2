use serde_json::json;

use crate::dirac::{self, Perturbation, ReducedFiber, ReductionDatum};
use crate::error::{Error, Result};
use crate::exterior::{MultiElement, Side};
use crate::gcs::{self, GCStructure};
use crate::linalg::unit;
use crate::polyform::tduality::{Orientation, TDualityData};
use crate::polyform::{self, PointCheck, PolyForm};
use crate::scalar::{gauss, lift, rat, Gaussian, Rational, Scalar};
use crate::serial;
use crate::spinor::{self, SpinorLine};
use crate::subspace::{Ambient, Subspace};

use super::{kinds, Kind, Outcome, Report};

pub const BUILTINS: [&str; 6] = ["foliation-restrict", "foliation-nontransversal", "cp1", "symplectic-cy", "nitta-toy", "tduality-basic"];

/// Runs a built-in scenario. Every check in its ledger is expected to hold.
pub fn builtin(name: &str) -> Result<Report> {
    let (kind, outcome) = match name {
        "foliation-restrict" => (Kind::Reduce, foliation_restrict()?),
        "foliation-nontransversal" => (Kind::Reduce, foliation_nontransversal()?),
        "cp1" => (Kind::GcsCheck, cp1()?),
        "symplectic-cy" => (Kind::PolyformCheck, symplectic_cy()?),
        "nitta-toy" => (Kind::GcsCheck, nitta_toy()?),
        "tduality-basic" => (Kind::Tduality, tduality_basic()?),
        other => return Err(Error::Parse(format!("unknown built-in scenario {other:?}; see --list"))),
    };
    let expect = super::Expectations { checks: outcome.checks.keys().map(|k| (k.clone(), true)).collect(), values: Default::default() };
    Ok(Report::new(name, kind, outcome, Some(&expect)))
}

type Q = Rational;

fn r(v: &[i64]) -> Vec<Q> {
    v.iter().map(|x| rat(*x, 1)).collect()
}

fn plain(n: usize, rows: Vec<Vec<Q>>) -> Result<Subspace<Q>> {
    Subspace::span(Ambient::plain(n)?, rows)
}

/// `L_{Δ'}` in `T_xN` coordinates for `Δ' = Δ ∩ T_xN`.
fn restricted_distribution(tf: &Subspace<Q>, tn: &Subspace<Q>) -> Result<Subspace<Q>> {
    let cap = tf.intersect(tn)?;
    let coords = cap.rows().iter().map(|v| tn.coords(v)).collect();
    Subspace::distribution(&plain(tn.dim(), coords)?)
}

fn foliation_case(out: &mut Outcome, tag: &str, tf: &Subspace<Q>, tn: &Subspace<Q>) -> Result<()> {
    let l = Subspace::distribution(tf)?;
    let d = ReductionDatum::submanifold(tn.clone())?;
    let red = dirac::reduce(&l, &d)?;
    out.value(&format!("{tag}_intersection_rank"), dirac::intersection_rank(&l, &d)?);
    out.value(&format!("{tag}_reduced"), serial::render_subspace(&red));
    out.check(&format!("{tag}_reduces_to_intersection"), red == restricted_distribution(tf, tn)?);
    let phi = spinor::spinor_of(&l)?;
    let rs = dirac::reduce_spinor(&phi, &d, &Perturbation::None)?;
    out.value(&format!("{tag}_reduced_spinor"), serial::render_element(&rs.form));
    Ok(())
}

fn foliation_restrict() -> Result<Outcome> {
    let mut out = Outcome::default();
    let tf = plain(4, vec![r(&[1, 0, 0, 0]), r(&[0, 1, 0, 0])])?;
    // Transversal: TF + TN = ℝ⁴.
    let tn = plain(4, vec![r(&[1, 0, 0, 0]), r(&[0, 0, 1, 0]), r(&[0, 0, 0, 1])])?;
    foliation_case(&mut out, "transversal", &tf, &tn)?;
    let phi = spinor::spinor_of(&Subspace::distribution(&tf)?)?;
    let d = ReductionDatum::submanifold(tn)?;
    let rs = dirac::reduce_spinor(&phi, &d, &Perturbation::None)?;
    out.check("transversal_spinor_nonzero", !rs.is_zero());
    out.check("transversal_spinor_annihilator", spinor::annihilator(&rs.form)? == dirac::reduce(&phi.lagrangian()?, &d)?);

    // Clean but not transversal: TF ⊂ TN.
    let tn = plain(4, vec![r(&[1, 0, 0, 0]), r(&[0, 1, 0, 0]), r(&[0, 0, 1, 1])])?;
    foliation_case(&mut out, "clean", &tf, &tn)?;
    let d = ReductionDatum::submanifold(tn)?;
    let rs = dirac::reduce_spinor(&phi, &d, &Perturbation::None)?;
    out.check("clean_pullback_vanishes", rs.is_zero());
    Ok(out)
}

fn foliation_nontransversal() -> Result<Outcome> {
    let mut out = Outcome::default();
    let tf = plain(4, vec![r(&[1, 0, 0, 0]), r(&[0, 0, 1, 0])])?;
    let tn = plain(4, vec![r(&[1, 0, 0, 0]), r(&[0, 1, 0, 0])])?;
    let l = Subspace::distribution(&tf)?;
    let d = ReductionDatum::submanifold(tn.clone())?;
    let k = dirac::build_k_input(&d)?;
    let rank = dirac::intersection_rank(&l, &d)?;
    out.value("intersection_rank", rank);
    out.check("not_transversal", rank > 0);
    let red = dirac::reduce(&l, &d)?;
    out.value("reduced", serial::render_subspace(&red));
    out.check("reduces_to_intersection", red == restricted_distribution(&tf, &tn)?);

    // D = span{e4}, a complement of TF + TN.
    let e4 = r(&[0, 0, 0, 1]);
    let dsub = Subspace::span(Ambient::split(4)?, vec![[e4.clone(), r(&[0, 0, 0, 0])].concat()])?;
    dirac::validate_perturbation(&l, &k, &dsub)?;
    let ld = dirac::perturb(&l, &k, &dsub)?;
    let widened = tf.sum(&plain(4, vec![e4.clone()])?)?;
    out.value("perturbed", serial::render_subspace(&ld));
    out.check("perturbed_is_widened_distribution", ld == Subspace::distribution(&widened)?);
    out.check("perturbed_transversal", dirac::intersection_rank(&ld, &d)? == 0);
    out.check("perturbed_same_reduction", dirac::reduce(&ld, &d)? == red);

    let phi = spinor::spinor_of(&l)?;
    let pd = dirac::perturb_spinor(&phi, &dsub)?;
    let contracted = MultiElement::interior(&MultiElement::vector(Side::Vector, &e4)?, &phi.form)?;
    out.check("perturbed_spinor_is_contraction", pd.form.ratio_to(&contracted).is_some());
    let rs = dirac::reduce_spinor(&phi, &d, &Perturbation::Given(dsub))?;
    out.value("reduced_spinor", serial::render_element(&rs.form));
    out.check("reduced_spinor_nonzero", !rs.is_zero());
    out.check("reduced_spinor_annihilator", spinor::annihilator(&rs.form)? == red);
    let auto = dirac::reduce_spinor(&phi, &d, &Perturbation::Auto)?;
    out.check("auto_input_same_line", auto.form.ratio_to(&rs.form).is_some());
    Ok(out)
}

fn complexify_datum(d: &ReductionDatum<Q>) -> Result<ReductionDatum<Gaussian>> {
    let lv = |v: &Vec<Q>| v.iter().map(lift).collect::<Vec<Gaussian>>();
    ReductionDatum::new(
        d.tangent.map_scalars(lift)?,
        d.generators.iter().map(lv).collect(),
        d.moment.iter().map(lv).collect(),
        d.b.as_ref().map(|b| b.map_scalars(lift)),
    )?
    .with_delta(d.delta.map_scalars(lift))
}

/// The circle action on `S³ ⊂ ℂ²` at `p = (x1, y1, x2, y2)`, zero moment.
fn s3_datum(p: &[Q]) -> Result<ReductionDatum<Q>> {
    let tangent = plain(4, vec![p.to_vec()])?.annihilator()?;
    let u = vec![-p[1].clone(), p[0].clone(), -p[3].clone(), p[2].clone()];
    ReductionDatum::new(tangent, vec![u], vec![vec![rat(0, 1); 4]], None)
}

const S3_POINTS: [[(i64, i64); 4]; 8] = [
    [(1, 1), (0, 1), (0, 1), (0, 1)],
    [(3, 5), (4, 5), (0, 1), (0, 1)],
    [(1, 2), (1, 2), (1, 2), (1, 2)],
    [(2, 3), (1, 3), (2, 3), (0, 1)],
    [(0, 1), (3, 5), (4, 5), (0, 1)],
    [(2, 7), (3, 7), (6, 7), (0, 1)],
    [(1, 3), (2, 3), (0, 1), (2, 3)],
    [(4, 9), (-4, 9), (0, 1), (-7, 9)],
];

/// Reduced spinor of `dz1∧dz2 / z1²` at `p` divided by `dz` for `z = z2/z1`.
fn chart_ratio(p: &[Q]) -> Result<Option<Gaussian>> {
    let d = complexify_datum(&s3_datum(p)?)?;
    let i = Gaussian::imag_unit().expect("gaussian");
    let (z1, z2) = (gauss(p[0].clone(), p[1].clone()), gauss(p[2].clone(), p[3].clone()));
    let zero = Gaussian::zero();
    let dz1 = vec![Gaussian::one(), i.clone(), zero.clone(), zero.clone()];
    let dz2 = vec![zero.clone(), zero, Gaussian::one(), i];
    let inv = Gaussian::one() / (z1.clone() * z1.clone());
    let phi = MultiElement::vector(Side::Covector, &dz1)?.wedge(&MultiElement::vector(Side::Covector, &dz2)?)?.scale(&inv);
    let reduced = dirac::reduce_spinor(&SpinorLine::new(phi), &d, &Perturbation::None)?.form;

    // q*dz = (z1 dz2 − z2 dz1) / z1², read on T_pN and solved through dq.
    let qdz: Vec<Gaussian> = dz1.iter().zip(&dz2).map(|(a, b)| (z1.clone() * b.clone() - z2.clone() * a.clone()) * inv.clone()).collect();
    let fiber = ReducedFiber::new(&d)?;
    let on_tn = fiber.pullback(&MultiElement::vector(Side::Covector, &qdz)?)?.linear_coords();
    let Some(beta) = fiber.quotient.transpose().solve(&on_tn)? else {
        return Err(Error::Consistency("q*dz does not vanish on the orbit".into()));
    };
    Ok(reduced.ratio_to(&MultiElement::vector(Side::Covector, &beta)?))
}

fn cp1() -> Result<Outcome> {
    let mut out = Outcome::default();
    let j = GCStructure::from_complex(&gcs::standard_complex(4)?)?;
    let l = gcs::eigenbundle(&j)?;
    let p = r(&[1, 0, 0, 0]);
    let dq = s3_datum(&p)?;
    let compat = gcs::reduction_compatible(&j, &dirac::build_k(&dq)?)?;
    out.value("jk_cap_kperp", compat.jk_cap_kperp);
    out.check("jk_cap_kperp_zero", compat.strong);
    out.check("reduced_generalized_complex", compat.reduced_overlap == 0);

    let d = complexify_datum(&dq)?;
    out.check("transversal", dirac::intersection_rank(&l, &d)? == 0);
    let red = dirac::reduce(&l, &d)?;
    out.value("reduced", serial::render_subspace(&red));
    let cp1 = gcs::eigenbundle(&GCStructure::from_complex(&gcs::standard_complex(2)?)?)?;
    out.check("reduced_is_complex_structure", red == cp1);

    let phi = spinor::spinor_of(&l)?;
    let rs = dirac::reduce_spinor(&phi, &d, &Perturbation::None)?;
    out.value("reduced_spinor", serial::render_element(&rs.form));
    let dz = MultiElement::vector(Side::Covector, &[Gaussian::one(), Gaussian::imag_unit().expect("gaussian")])?;
    out.check("reduced_spinor_is_dz", rs.form.ratio_to(&dz).is_some());
    out.check("reduced_spinor_annihilator", spinor::annihilator(&rs.form)? == red);

    let mut ratios = Vec::new();
    let mut all = true;
    for pt in S3_POINTS {
        let p: Vec<Q> = pt.iter().map(|(a, b)| rat(*a, *b)).collect();
        match chart_ratio(&p)? {
            Some(c) => ratios.push(json!(c.render())),
            None => {
                all = false;
                ratios.push(json!(null));
            }
        }
    }
    out.value("chart_ratios", ratios);
    out.check("chart_spinor_proportional_to_dz", all);
    Ok(out)
}

fn nitta_toy() -> Result<Outcome> {
    let mut out = Outcome::default();
    let omega = MultiElement::basis(4, Side::Covector, &[0, 1])?.add(&MultiElement::basis(4, Side::Covector, &[2, 3])?)?;
    let j = GCStructure::from_symplectic(&omega)?;
    let tn = plain(4, vec![r(&[0, 1, 0, 0]), r(&[0, 0, 1, 0]), r(&[0, 0, 0, 1])])?;
    let d = ReductionDatum::new(tn, vec![unit(4, 1)], vec![vec![rat(0, 1); 4]], None)?;
    let ni = gcs::nitta_intersection(&j, &d, &[unit(4, 0)])?;
    out.value("l_cap_k", serial::render_subspace(&ni.intersection));
    out.check("intersection_matches_formula", ni.matches);
    out.check("anchor_iso", ni.anchor_iso);
    out.check("jk_equals_k", ni.jk_equals_k);
    let compat = gcs::reduction_compatible(&j, &dirac::build_k(&d)?)?;
    out.check("compatible", compat.compatible);
    out.check("reduced_generalized_complex", compat.reduced_overlap == 0);

    let l = gcs::eigenbundle(&j)?;
    let dg = complexify_datum(&d)?;
    out.value("intersection_rank", dirac::intersection_rank(&l, &dg)?);
    let red = dirac::reduce(&l, &dg)?;
    let plane = gcs::eigenbundle(&GCStructure::from_symplectic(&MultiElement::basis(2, Side::Covector, &[0, 1])?)?)?;
    out.check("reduced_is_symplectic", red == plane);
    let phi = gcs::spinor_of_gcs(&j)?;
    let rs = dirac::reduce_spinor(&phi, &dg, &Perturbation::Auto)?;
    out.value("reduced_spinor", serial::render_element(&rs.form));
    out.check("reduced_spinor_nonzero", !rs.is_zero());
    out.check("reduced_spinor_annihilator", !rs.is_zero() && spinor::annihilator(&rs.form)? == red);
    Ok(out)
}

fn sample_points(n: usize, count: usize) -> Vec<Vec<Q>> {
    (0..count as i64).map(|k| (0..n as i64).map(|j| rat((k * (j + 2) + 3 * j) % 7 - 3, 1 + (k + j) % 3)).collect()).collect()
}

fn symplectic_cy() -> Result<Outcome> {
    let mut out = Outcome::default();
    let n = 4;
    let forms = |extra: &str| -> Result<PolyForm<Q>> {
        let mut terms: std::collections::BTreeMap<String, String> =
            [("[1,2]".to_string(), "1".to_string()), ("[3,4]".to_string(), "1".to_string())].into();
        if !extra.is_empty() {
            let (k, v) = extra.split_once('=').expect("key=value");
            terms.insert(k.to_string(), v.to_string());
        }
        PolyForm::from_strings(n, &terms)
    };
    let omega = forms("[1,3]=2 x1")?;
    let points = sample_points(n, 12);
    out.check("omega_closed", omega.is_closed()?);
    let i = Gaussian::imag_unit().expect("gaussian");
    let phi = PolyForm::exp_two_form(&omega.map_scalars(lift::<Gaussian>).scale(&-i.clone()))?;
    out.value("phi", serial::render_form(&phi));
    let gpts: Vec<Vec<Gaussian>> = points.iter().map(|p| p.iter().map(lift).collect()).collect();
    let zero = PolyForm::zero(n)?;
    let rep = polyform::spinor_integrability(&phi, &zero, &gpts)?;
    out.value("sample_points", points.len());
    out.value("passed_points", rep.count(&PointCheck::Pass));
    out.check("integrable_at_samples", rep.passed() && points.len() >= 10);

    let mut matches = true;
    for (p, gp) in points.iter().zip(&gpts) {
        let j = GCStructure::from_symplectic(&omega.eval(p)?)?;
        matches &= gcs::spinor_of_gcs(&j)?.form.ratio_to(&phi.eval(gp)?).is_some();
    }
    out.check("spinor_matches_structure", matches);

    let open = forms("[2,3]=x1")?;
    let psi = PolyForm::exp_two_form(&open.map_scalars(lift::<Gaussian>).scale(&-i))?;
    let control = polyform::spinor_integrability(&psi, &zero, &gpts)?;
    out.value("control_failed_points", control.count(&PointCheck::Fail));
    out.check("control_detected", !open.is_closed()? && control.count(&PointCheck::Fail) > 0);
    Ok(out)
}

fn tduality_basic() -> Result<Outcome> {
    let b = 3;
    let f = |n: usize, terms: &[(&str, &str)]| -> Result<PolyForm<Q>> {
        PolyForm::from_strings(n, &terms.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect())
    };
    let data = TDualityData::new(f(b, &[("[2]", "x1")])?, f(b, &[("[3]", "x2^2")])?, f(b, &[("[1,2,3]", "x1^2 - 1/2")])?)?;
    let n = b + 1;
    let theta1 = data.theta1()?;
    let forms = vec![
        PolyForm::one(n)?,
        theta1.clone(),
        PolyForm::exp_two_form(&f(n, &[("[1,2]", "x3"), ("[2,3]", "1")])?)?,
        f(n, &[("[1]", "1")])?.wedge(&theta1)?,
        PolyForm::exp_two_form(&f(n, &[("[2]", "x1")])?.wedge(&theta1)?)?,
        PolyForm::one(n)?.add(&f(n, &[("[1,2,3,4]", "1")])?)?,
    ];
    let points = sample_points(n, 10);
    let mut out = kinds::tduality_outcome(&data, Orientation::Left, &forms, &points)?;
    let right = kinds::tduality_outcome(&data, Orientation::Right, &[], &[])?;
    out.value(
        "right_orientation",
        json!({
            "tau_one_is_theta2": right.checks["tau_one_is_theta2"],
            "tau_theta1_is_one": right.checks["tau_theta1_is_one"],
            "intertwining": right.checks["intertwining"],
        }),
    );
    Ok(out)
}
