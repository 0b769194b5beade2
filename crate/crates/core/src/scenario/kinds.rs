use serde::Deserialize;
use serde_json::{json, Value};

use crate::dirac::{self, Perturbation};
use crate::error::{Error, Result};
use crate::exterior::Side;
use crate::gcs::{self, GCStructure};
use crate::linalg::Matrix;
use crate::polyform::tduality::{self, Orientation, TDualityData};
use crate::polyform::{self, PointCheck, PolyForm, Submanifold};
use crate::scalar::{Gaussian, Rational, Scalar};
use crate::serial::{self, DatumJson, FormJson, RowsJson, TermsJson};
use crate::spinor::{self, SpinorLine};
use crate::subspace::{Ambient, Subspace};

use super::{payload, Outcome};

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Field {
    #[default]
    Rational,
    Gaussian,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum PerturbJson {
    Mode(String),
    Rows(RowsJson),
}

fn perturbation<F: Scalar>(p: &Option<PerturbJson>, m: usize) -> Result<Perturbation<F>> {
    match p {
        None => Ok(Perturbation::None),
        Some(PerturbJson::Mode(s)) if s == "none" => Ok(Perturbation::None),
        Some(PerturbJson::Mode(s)) if s == "auto" => Ok(Perturbation::Auto),
        Some(PerturbJson::Mode(s)) => Err(Error::Parse(format!("payload.perturbation: unknown mode {s:?}"))),
        Some(PerturbJson::Rows(r)) => Ok(Perturbation::Given(serial::subspace(Ambient::split(m)?, r, "payload.perturbation")?)),
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReducePayload {
    m: usize,
    #[serde(default)]
    field: Field,
    lagrangian: RowsJson,
    datum: DatumJson,
    #[serde(default)]
    perturbation: Option<PerturbJson>,
    #[serde(default)]
    expect_reduced: Option<RowsJson>,
}

pub(super) fn reduce(v: &Value) -> Result<Outcome> {
    let p: ReducePayload = payload(v)?;
    match p.field {
        Field::Rational => reduce_in::<Rational>(&p),
        Field::Gaussian => reduce_in::<Gaussian>(&p),
    }
}

fn reduce_in<F: Scalar>(p: &ReducePayload) -> Result<Outcome> {
    let amb = Ambient::split(p.m)?;
    let l: Subspace<F> = serial::subspace(amb, &p.lagrangian, "payload.lagrangian")?;
    l.require_lagrangian("payload.lagrangian")?;
    let d = p.datum.build::<F>(p.m, "payload.datum")?;
    let mut out = Outcome::default();
    let k0 = dirac::build_k_input(&d)?;
    let rank = dirac::intersection_rank(&l, &d)?;
    out.value("k", serial::render_subspace(&k0));
    out.value("intersection_rank", rank);

    let tr = dirac::check_transversality(&l, &d)?;
    out.check("transversality_biconditional", tr.biconditional);
    out.check("transversality_routes_agree", tr.routes_agree);

    let red = match dirac::reduce(&l, &d) {
        Ok(r) => {
            out.check("reduction_routes_agree", true);
            r
        }
        Err(Error::Consistency(msg)) => {
            out.check("reduction_routes_agree", false);
            out.value("reduction_error", msg);
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    out.check("reduced_lagrangian", red.is_lagrangian()?);
    out.value("reduced", serial::render_subspace(&red));
    if let Some(rows) = &p.expect_reduced {
        let want: Subspace<F> = serial::subspace(red.ambient(), rows, "payload.expect_reduced")?;
        out.check("reduced_matches", want == red);
    }

    let pert = perturbation::<F>(&p.perturbation, p.m)?;
    let dsub = match pert {
        Perturbation::None => None,
        Perturbation::Auto => Some(dirac::perturbation_input(&l, &k0)?),
        Perturbation::Given(ds) => Some(ds),
    };
    if let Some(ds) = dsub {
        dirac::validate_perturbation(&l, &k0, &ds)?;
        let ld = dirac::perturb(&l, &k0, &ds)?;
        out.value("perturbation", serial::render_subspace(&ds));
        out.value("perturbed", serial::render_subspace(&ld));
        out.check("perturbed_lagrangian", ld.is_lagrangian()?);
        out.check("perturbed_transversal", dirac::intersection_rank(&ld, &d)? == 0);
        out.check("perturbed_same_reduction", dirac::reduce(&ld, &d)? == red);
    }
    Ok(out)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpinorPayload {
    m: usize,
    #[serde(default)]
    field: Field,
    form: TermsJson,
    datum: DatumJson,
    #[serde(default)]
    perturbation: Option<PerturbJson>,
}

pub(super) fn spinor(v: &Value) -> Result<Outcome> {
    let p: SpinorPayload = payload(v)?;
    match p.field {
        Field::Rational => spinor_in::<Rational>(&p),
        Field::Gaussian => spinor_in::<Gaussian>(&p),
    }
}

fn spinor_in<F: Scalar>(p: &SpinorPayload) -> Result<Outcome> {
    let phi = serial::element::<F>(&p.form, p.m, Side::Covector, "payload.form")?;
    let d = p.datum.build::<F>(p.m, "payload.datum")?;
    let mut out = Outcome::default();
    let pure = !phi.is_zero() && spinor::is_pure(&phi)?;
    out.check("pure", pure);
    if !pure {
        return Ok(out);
    }
    let line = SpinorLine::new(phi);
    let l = line.lagrangian()?;
    out.value("lagrangian", serial::render_subspace(&l));
    let pert = perturbation::<F>(&p.perturbation, p.m)?;
    let red = dirac::reduce_spinor(&line, &d, &pert)?;
    out.value("intersection_rank", red.intersection_rank);
    out.value("reduced_spinor", serial::render_element(&red.form));
    out.check("reduced_nonzero", !red.is_zero());
    if !red.is_zero() {
        let want = dirac::reduce(&l, &d)?;
        out.check("annihilator_matches_reduction", spinor::annihilator(&red.form)? == want);
    }
    Ok(out)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase")]
enum StructureJson {
    Symplectic(TermsJson),
    Complex(RowsJson),
    Matrix(RowsJson),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct GcsPayload {
    m: usize,
    structure: StructureJson,
    #[serde(default)]
    k: Option<RowsJson>,
    #[serde(default)]
    datum: Option<DatumJson>,
    #[serde(default)]
    dmu: Option<RowsJson>,
}

fn square(rows: &RowsJson, n: usize, path: &str) -> Result<Matrix<Rational>> {
    if rows.len() != n {
        return Err(Error::Parse(format!("{path}: expected {n} rows, got {}", rows.len())));
    }
    Matrix::from_rows(n, serial::rows(rows, n, path)?)
}

pub(super) fn gcs_check(v: &Value) -> Result<Outcome> {
    let p: GcsPayload = payload(v)?;
    let m = p.m;
    let j = match &p.structure {
        StructureJson::Symplectic(t) => GCStructure::from_symplectic(&serial::element(t, m, Side::Covector, "payload.structure.symplectic")?)?,
        StructureJson::Complex(r) => GCStructure::from_complex(&square(r, m, "payload.structure.complex")?)?,
        StructureJson::Matrix(r) => GCStructure::new(square(r, 2 * m, "payload.structure.matrix")?)?,
    };
    let mut out = Outcome::default();
    let l = gcs::eigenbundle(&j)?;
    out.value("l", serial::render_subspace(&l));
    out.check("generalized_complex", gcs::is_generalized_complex(&l)?);
    out.check("reconstructs", gcs::reconstruct(&l)? == j);
    let datum = p.datum.as_ref().map(|d| d.build::<Rational>(m, "payload.datum")).transpose()?;
    let k = match (&p.k, &datum) {
        (Some(rows), _) => Some(serial::subspace::<Rational>(Ambient::split(m)?, rows, "payload.k")?),
        (None, Some(d)) => Some(dirac::build_k(d)?),
        (None, None) => None,
    };
    if let Some(k) = k {
        let c = gcs::reduction_compatible(&j, &k)?;
        out.value("jk_cap_kperp", c.jk_cap_kperp);
        out.value("l_cap_k", c.l_cap_k);
        out.value("reduced_overlap", c.reduced_overlap);
        out.check("compatible", c.compatible);
        out.check("l_cap_k_formula", c.l_cap_k_formula);
        out.check("equivalence_holds", c.equivalence_holds);
    }
    if let (Some(d), Some(rows)) = (&datum, &p.dmu) {
        let dmu = serial::rows(rows, m, "payload.dmu")?;
        let ni = gcs::nitta_intersection(&j, d, &dmu)?;
        out.value("l_cap_k_basis", serial::render_subspace(&ni.intersection));
        out.check("nitta_matches", ni.matches);
        out.check("anchor_iso", ni.anchor_iso);
        out.check("jk_equals_k", ni.jk_equals_k);
    }
    Ok(out)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct TdualityPayload {
    base: usize,
    a1: FormJson,
    a2: FormJson,
    #[serde(default)]
    h: FormJson,
    #[serde(default)]
    orientation: Option<String>,
    #[serde(default)]
    forms: Vec<FormJson>,
    #[serde(default)]
    points: RowsJson,
}

pub(super) fn tduality(v: &Value) -> Result<Outcome> {
    let p: TdualityPayload = payload(v)?;
    let b = p.base;
    let orient = match p.orientation.as_deref() {
        None | Some("left") => Orientation::Left,
        Some("right") => Orientation::Right,
        Some(o) => return Err(Error::Parse(format!("payload.orientation: unknown orientation {o:?}"))),
    };
    let data = TDualityData::new(
        serial::form::<Rational>(&p.a1, b, "payload.a1")?,
        serial::form(&p.a2, b, "payload.a2")?,
        serial::form(&p.h, b, "payload.h")?,
    )?;
    let forms = p
        .forms
        .iter()
        .enumerate()
        .map(|(i, f)| serial::form::<Rational>(f, b + 1, &format!("payload.forms[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let points = serial::rows::<Rational>(&p.points, b + 1, "payload.points")?;
    tduality_outcome(&data, orient, &forms, &points)
}

pub(super) fn tduality_outcome(
    data: &TDualityData<Rational>,
    orient: Orientation,
    forms: &[PolyForm<Rational>],
    points: &[Vec<Rational>],
) -> Result<Outcome> {
    let mut out = Outcome::default();
    let n = data.base() + 1;
    let one = PolyForm::one(n)?;
    let theta1 = data.theta1()?;
    let t_one = tduality::tau(data, &one, orient)?;
    let t_theta = tduality::tau(data, &theta1, orient)?;
    out.value("tau_one", serial::render_form(&t_one));
    out.value("tau_theta1", serial::render_form(&t_theta));
    out.value("theta2", serial::render_form(&data.theta2()?));
    out.check("tau_one_is_theta2", t_one == data.theta2()?);
    out.check("tau_theta1_is_one", t_theta == one);

    let ledger = tduality::intertwining_ledger(data, orient)?;
    let holds = ledger.iter().filter(|e| e.holds).count();
    let anti = ledger.iter().filter(|e| e.anti).count();
    out.value("generators", ledger.len());
    out.value("intertwining_holds", holds);
    out.value("intertwining_anti", anti);
    let failing: Vec<Value> = ledger.iter().filter(|e| !e.holds).take(4).map(|e| json!(e.generator)).collect();
    if !failing.is_empty() {
        out.value("intertwining_first_failures", failing);
    }
    out.check("intertwining", holds == ledger.len());

    if !forms.is_empty() {
        let mut ok = true;
        let mut pure_inputs = 0;
        for f in forms {
            for (a, b) in tduality::purity_report(data, f, points, orient)? {
                ok &= !a || b;
                pure_inputs += usize::from(a);
            }
        }
        out.value("purity_samples", forms.len() * points.len());
        out.value("purity_pure_inputs", pure_inputs);
        out.check("purity_preserved", ok && !points.is_empty());
    }
    Ok(out)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, tag = "check", rename_all = "lowercase")]
enum PolyCheck {
    Graph {
        n: usize,
        omega: FormJson,
        #[serde(default)]
        h: FormJson,
    },
    Spinor {
        n: usize,
        #[serde(default)]
        field: Field,
        phi: FormJson,
        #[serde(default)]
        h: FormJson,
        points: RowsJson,
    },
    Moment {
        n: usize,
        #[serde(default)]
        h: FormJson,
        xi: Vec<FormJson>,
        fields: Vec<Vec<String>>,
        brackets: Vec<Vec<Vec<serial::ScalarJson>>>,
        #[serde(default)]
        constraints: Vec<String>,
        #[serde(default)]
        points: RowsJson,
    },
}

pub(super) fn polyform_check(v: &Value) -> Result<Outcome> {
    let p: PolyCheck = payload(v)?;
    let mut out = Outcome::default();
    match p {
        PolyCheck::Graph { n, omega, h } => {
            let omega = serial::form::<Rational>(&omega, n, "payload.omega")?;
            let h = serial::form(&h, n, "payload.h")?;
            let g = polyform::graph_integrability(&omega, &h)?;
            out.value("defect", serial::render_form(&g.defect));
            out.check("integrable", g.integrable());
            out.check("routes_agree", g.formula == g.frame);
        }
        PolyCheck::Spinor { n, field, phi, h, points } => match field {
            Field::Rational => spinor_points::<Rational>(&mut out, n, &phi, &h, &points)?,
            Field::Gaussian => spinor_points::<Gaussian>(&mut out, n, &phi, &h, &points)?,
        },
        PolyCheck::Moment { n, h, xi, fields, brackets, constraints, points } => {
            let h = serial::form::<Rational>(&h, n, "payload.h")?;
            let xi = xi
                .iter()
                .enumerate()
                .map(|(i, f)| serial::form(f, n, &format!("payload.xi[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let r = xi.len();
            let fields = fields
                .iter()
                .enumerate()
                .map(|(i, f)| serial::field(f, n, &format!("payload.fields[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let brackets = brackets
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    if row.len() != r {
                        return Err(Error::Parse(format!("payload.brackets[{i}]: expected {r} entries")));
                    }
                    row.iter().enumerate().map(|(j, c)| serial::vector(c, r, &format!("payload.brackets[{i}][{j}]"))).collect()
                })
                .collect::<Result<Vec<Vec<Vec<Rational>>>>>()?;
            let sub = if constraints.is_empty() {
                None
            } else {
                Some(Submanifold {
                    constraints: constraints
                        .iter()
                        .enumerate()
                        .map(|(i, s)| serial::poly(s, n, &format!("payload.constraints[{i}]")))
                        .collect::<Result<_>>()?,
                    points: serial::rows(&points, n, "payload.points")?,
                })
            };
            let rep = polyform::moment_conditions(&h, &xi, &fields, &brackets, sub.as_ref())?;
            out.check("closed", rep.closed.iter().all(|b| *b));
            out.check("equivariant", rep.equivariant.iter().flatten().all(|b| *b));
            out.check("isotropic", rep.isotropic.iter().flatten().all(|b| *b));
            out.value("fields_match_brackets", rep.fields_match_brackets);
            if let Some(a) = rep.admissible {
                out.check("admissible", a.iter().all(|b| *b));
            }
        }
    }
    Ok(out)
}

fn spinor_points<F: Scalar>(out: &mut Outcome, n: usize, phi: &FormJson, h: &FormJson, points: &RowsJson) -> Result<()> {
    let phi = serial::form::<F>(phi, n, "payload.phi")?;
    let h = serial::form(h, n, "payload.h")?;
    let pts = serial::rows(points, n, "payload.points")?;
    let rep = polyform::spinor_integrability(&phi, &h, &pts)?;
    out.value("points", pts.len());
    out.value("passed_points", rep.count(&PointCheck::Pass));
    out.value("vanishing_points", rep.count(&PointCheck::Vanishes));
    out.value("impure_points", rep.count(&PointCheck::NotPure));
    out.check("integrable_at_samples", rep.passed());
    Ok(())
}
