//! Randomized property suites.
//!
//! Each suite draws `trials` instances from a seeded generator, cycling the
//! fiber dimension through `min_dim..=max_dim`, and records every violation.
//! Dimensions are visited smallest first, so the first recorded failure is
//! also the smallest one seen.

use serde::Serialize;

use crate::dirac::{self, Perturbation, ReducedFiber, ReductionDatum};
use crate::error::{Error, Result};
use crate::exterior::{MultiElement, Side};
use crate::random::{self, DatumShape, Rng};
use crate::scalar::Scalar;
use crate::spinor;
use crate::subspace::{pairing, Subspace};

const KEPT_FAILURES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub min_dim: usize,
    pub max_dim: usize,
}

impl SuiteConfig {
    pub fn new(seed: u64, trials: usize, min_dim: usize, max_dim: usize) -> Self {
        SuiteConfig { seed, trials, min_dim, max_dim }
    }

    fn dim_for(&self, trial: usize) -> usize {
        let span = self.max_dim - self.min_dim + 1;
        self.min_dim + trial * span / self.trials.max(1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub field: String,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    /// Trials that did not apply (e.g. a datum with `K = 0` in a suite about `L ∩ K ≠ 0`) and were redrawn.
    pub redrawn: usize,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub dim: usize,
    pub check: String,
    pub detail: String,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }

    pub fn summary(&self) -> String {
        format!("{} [{}]: {}/{} (seed {})", self.name, self.field, self.passed, self.trials, self.seed)
    }
}

/// Outcome of one trial: `Ok(None)` passes, `Ok(Some(..))` names the failed check.
type Trial = Result<Option<(String, String)>>;

fn run<F: Scalar>(name: &str, cfg: SuiteConfig, mut trial: impl FnMut(&mut Rng, usize) -> Trial) -> SuiteReport {
    let mut rng = random::rng(cfg.seed);
    let mut rep = SuiteReport {
        name: name.to_string(),
        field: F::NAME.to_string(),
        seed: cfg.seed,
        trials: cfg.trials,
        passed: 0,
        redrawn: 0,
        failures: vec![],
    };
    let mut t = 0;
    while t < cfg.trials {
        let n = cfg.dim_for(t);
        let outcome = match trial(&mut rng, n) {
            Err(Error::Consistency(msg)) if msg == REDRAW => {
                rep.redrawn += 1;
                continue;
            }
            Err(e) => Some(("error".to_string(), e.to_string())),
            Ok(o) => o,
        };
        match outcome {
            None => rep.passed += 1,
            Some((check, detail)) => {
                if rep.failures.len() < KEPT_FAILURES {
                    rep.failures.push(Failure { trial: t, dim: n, check, detail });
                }
            }
        }
        t += 1;
    }
    rep
}

const REDRAW: &str = "redraw";

fn redraw<T>() -> Result<T> {
    Err(Error::Consistency(REDRAW.into()))
}

fn fail(check: &str, detail: String) -> Trial {
    Ok(Some((check.to_string(), detail)))
}

pub fn show_subspace<F: Scalar>(s: &Subspace<F>) -> String {
    let rows: Vec<String> = s
        .rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(Scalar::render).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("span{{{}}}", rows.join(", "))
}

fn show_datum<F: Scalar>(d: &ReductionDatum<F>) -> String {
    format!(
        "tangent={} generators={} b={}",
        show_subspace(&d.tangent),
        d.generators.len(),
        d.b.as_ref().map_or("0".into(), MultiElement::render)
    )
}

/// `annihilator(spinor_of(L)) = L`.
pub fn dictionary_roundtrip<F: Scalar>(cfg: SuiteConfig) -> SuiteReport {
    run::<F>("dictionary-roundtrip", cfg, |rng, n| {
        let l = random::lagrangian::<F>(rng, n)?;
        let phi = spinor::spinor_of(&l)?;
        let back = spinor::annihilator(&phi.form)?;
        if back != l {
            return fail("annihilator", format!("L={} got {}", show_subspace(&l), show_subspace(&back)));
        }
        Ok(None)
    })
}

/// `Π(e)Π(f) + Π(f)Π(e) = 2κ⟨e,f⟩` with `κ` the square factor.
pub fn clifford_relation<F: Scalar>(cfg: SuiteConfig) -> SuiteReport {
    run::<F>("clifford-relation", cfg, |rng, n| {
        let (e, f) = (random::split_vector::<F>(rng, n), random::split_vector::<F>(rng, n));
        let phi = random::element::<F>(rng, n, Side::Covector)?;
        let ef = spinor::clifford_act(&e, &spinor::clifford_act(&f, &phi)?)?;
        let fe = spinor::clifford_act(&f, &spinor::clifford_act(&e, &phi)?)?;
        let two_kappa = spinor::clifford_square_factor::<F>() * F::from_int(2);
        let want = phi.scale(&two_kappa.mul_ref(&pairing(&e, &f)));
        if ef.add(&fe)? != want {
            return fail("anticommutator", format!("e={e:?} f={f:?}"));
        }
        let ee = spinor::clifford_act(&e, &spinor::clifford_act(&e, &phi)?)?;
        if ee != phi.scale(&spinor::clifford_square_factor::<F>().mul_ref(&pairing(&e, &e))) {
            return fail("square", format!("e={e:?}"));
        }
        Ok(None)
    })
}

/// `annihilator(e^B ∧ φ) = τ_{−B}(annihilator φ)`.
pub fn b_action<F: Scalar>(cfg: SuiteConfig) -> SuiteReport {
    run::<F>("b-action", cfg, |rng, n| {
        let l = random::lagrangian::<F>(rng, n)?;
        let b = random::two_form::<F>(rng, n, Side::Covector)?;
        let phi = spinor::spinor_of(&l)?.form;
        let moved = MultiElement::exp_two_form(&b)?.wedge(&phi)?;
        if spinor::annihilator(&moved)? != l.tau_b(&b.neg())? {
            return fail("annihilator", format!("L={} B={}", show_subspace(&l), b.render()));
        }
        Ok(None)
    })
}

/// `F_ν ∘ Π^op(e) = Π(e) ∘ F_ν`.
pub fn fourier_intertwining<F: Scalar>(cfg: SuiteConfig) -> SuiteReport {
    run::<F>("fourier-intertwining", cfg, |rng, n| {
        let e = random::split_vector::<F>(rng, n);
        let x = random::element::<F>(rng, n, Side::Vector)?;
        let nu = MultiElement::top(n, Side::Covector)?.scale(&random::small_nonzero::<F>(rng));
        let lhs = spinor::fourier(&nu, &spinor::clifford_act_op(&e, &x)?)?;
        let rhs = spinor::clifford_act(&e, &spinor::fourier(&nu, &x)?)?;
        if lhs != rhs {
            return fail("intertwining", format!("e={e:?} x={}", x.render()));
        }
        Ok(None)
    })
}

fn transversal_or_not<F: Scalar>(rng: &mut Rng, d: &ReductionDatum<F>, n: usize) -> Result<Subspace<F>> {
    if random::coin(rng, 0.5) {
        if let Some(l) = random::nontransversal(rng, d)? {
            return Ok(l);
        }
    }
    random::lagrangian::<F>(rng, n)
}

/// Both reduction routes agree and produce a Lagrangian.
pub fn reduction_routes<F: Scalar>(cfg: SuiteConfig) -> SuiteReport {
    run::<F>("reduction-routes", cfg, |rng, n| {
        let d = random::datum::<F>(rng, n, DatumShape::default())?;
        let l = transversal_or_not(rng, &d, n)?;
        let a = dirac::reduce_quotient(&l, &d)?;
        let b = dirac::reduce_characterization(&l, &d)?;
        if a != b {
            return fail("routes", format!("L={} {} : {} vs {}", show_subspace(&l), show_datum(&d), show_subspace(&a), show_subspace(&b)));
        }
        if !a.is_lagrangian()? {
            return fail("lagrangian", show_subspace(&a));
        }
        Ok(None)
    })
}

/// `reduce_spinor` vanishes exactly when `L ∩ K ≠ 0`; covariant and
/// contravariant routes agree up to a nonzero scalar; nonzero outputs
/// annihilate the reduced Lagrangian.
pub fn transversality<F: Scalar>(cfg: SuiteConfig) -> SuiteReport {
    run::<F>("transversality-biconditional", cfg, |rng, n| {
        let d = random::datum::<F>(rng, n, DatumShape::default())?;
        let l = transversal_or_not(rng, &d, n)?;
        let rank = dirac::intersection_rank(&l, &d)?;
        let phi = spinor::spinor_of(&l)?;
        let red = dirac::reduce_spinor(&phi, &d, &Perturbation::None)?;
        let ctx = || format!("L={} {}", show_subspace(&l), show_datum(&d));
        if red.is_zero() != (rank > 0) {
            return fail("biconditional", format!("rank={rank} zero={} {}", red.is_zero(), ctx()));
        }
        let rep = dirac::check_transversality(&l, &d)?;
        if !rep.biconditional || !rep.routes_agree || rep.intersection_rank != rank {
            return fail("routes", format!("{:?} {}", (rep.covariant_nonzero, rep.contravariant_nonzero, rep.intersection_rank), ctx()));
        }
        if rank == 0 && spinor::annihilator(&red.form)? != dirac::reduce(&l, &d)? {
            return fail("reduced-annihilator", ctx());
        }
        Ok(None)
    })
}

/// Perturbation conclusions on non-transversal instances.
pub fn perturbation<F: Scalar>(cfg: SuiteConfig) -> SuiteReport {
    run::<F>("perturbation", cfg, |rng, n| {
        let (l, d) = random::nontransversal_pair::<F>(rng, n.max(2))?;
        let k = dirac::build_k_input(&d)?;
        let ctx = || format!("L={} {}", show_subspace(&l), show_datum(&d));
        let dd = dirac::perturbation_input(&l, &k)?;
        let ld = dirac::perturb(&l, &k, &dd)?;
        if !ld.is_lagrangian()? {
            return fail("lagrangian", ctx());
        }
        if !ld.intersect(&k)?.is_zero() {
            return fail("transversal", ctx());
        }
        let kp = k.perp()?;
        if ld.intersect(&kp)?.sum(&k)? != l.intersect(&kp)?.sum(&k)? {
            return fail("same-coisotropic-part", ctx());
        }
        let red = dirac::reduce(&l, &d)?;
        if dirac::reduce(&ld, &d)? != red {
            return fail("same-reduction", ctx());
        }
        let phi_d = dirac::perturb_spinor(&spinor::spinor_of(&l)?, &dd)?;
        if phi_d.form.is_zero() || spinor::annihilator(&phi_d.form)? != ld {
            return fail("perturbed-spinor", ctx());
        }
        let rs = dirac::reduce_spinor(&spinor::spinor_of(&l)?, &d, &Perturbation::Auto)?;
        if rs.is_zero() || spinor::annihilator(&rs.form)? != red {
            return fail("reduced-spinor", ctx());
        }
        Ok(None)
    })
}

fn transversal_lagrangian<F: Scalar>(rng: &mut Rng, d: &ReductionDatum<F>, n: usize) -> Result<Subspace<F>> {
    for _ in 0..20 {
        let l = random::lagrangian::<F>(rng, n)?;
        if dirac::intersection_rank(&l, d)? == 0 {
            return Ok(l);
        }
    }
    redraw()
}

/// Reduced spinors for admissible `B₁ = B₂ + C`, `j*C = dq*B̃`, satisfy
/// `φ¹ = e^{B̃} ∧ φ²`.
pub fn b_covariance<F: Scalar>(cfg: SuiteConfig) -> SuiteReport {
    run::<F>("b-covariance", cfg, |rng, n| {
        let d2 = random::datum::<F>(rng, n, DatumShape::default())?;
        let (b1, _, bt) = random::basic_b_pair(rng, &d2)?;
        let d1 = d2.clone().with_b(Some(b1))?;
        let l = transversal_lagrangian(rng, &d2, n)?;
        if dirac::intersection_rank(&l, &d1)? != 0 {
            return redraw();
        }
        let phi = spinor::spinor_of(&l)?;
        let r1 = dirac::reduce_spinor(&phi, &d1, &Perturbation::None)?.form;
        let r2 = dirac::reduce_spinor(&phi, &d2, &Perturbation::None)?.form;
        if r1 != MultiElement::exp_two_form(&bt)?.wedge(&r2)? {
            return fail("wedge", format!("L={} {} Bt={}", show_subspace(&l), show_datum(&d2), bt.render()));
        }
        Ok(None)
    })
}

/// Invariance under the right-splitting choice: `reduce` through a random
/// lift, and `reduce_spinor` with the matching coframe.
pub fn choice_splitting<F: Scalar>(cfg: SuiteConfig) -> SuiteReport {
    run::<F>("choice-splitting", cfg, |rng, n| {
        let d = random::datum::<F>(rng, n, DatumShape::default())?;
        let l = transversal_or_not(rng, &d, n)?;
        let fiber = ReducedFiber::new(&d)?;
        let choice = random::splitting_choice(rng, &fiber, &d)?;
        let ctx = || format!("L={} {}", show_subspace(&l), show_datum(&d));
        if dirac::reduce_with(&l, &d, &choice)? != dirac::reduce(&l, &d)? {
            return fail("reduce", ctx());
        }
        let phi = spinor::spinor_of(&l)?;
        let a = dirac::reduce_spinor(&phi, &d, &Perturbation::Auto)?.form;
        let split = fiber.splitting(&choice.horizontal_lift)?;
        let b = dirac::reduce_spinor_with(&phi, &d, &Perturbation::Auto, &split)?.form;
        match b.ratio_to(&a) {
            Some(c) if !c.is_zero() => Ok(None),
            _ => fail("spinor", ctx()),
        }
    })
}

/// Two perturbation inputs give reduced spinors in the ratio `det(pr_{D₂}|_{D₁})`.
pub fn choice_perturbation<F: Scalar>(cfg: SuiteConfig) -> SuiteReport {
    run::<F>("choice-perturbation", cfg, |rng, n| {
        let (l, d) = random::nontransversal_pair::<F>(rng, n.max(2))?;
        let k = dirac::build_k_input(&d)?;
        let kl = l.intersect(&k)?;
        let d1 = dirac::perturbation_input(&l, &k)?;
        let comp = random::complement(rng, &kl.perp()?)?;
        let d2 = dirac::perturbation_input_with(&l, &k, &comp)?;
        let phi = spinor::spinor_of(&l)?;
        let r1 = dirac::reduce_spinor(&phi, &d, &Perturbation::Given(d1.clone()))?.form;
        let r2 = dirac::reduce_spinor(&phi, &d, &Perturbation::Given(d2.clone()))?.form;
        let det = dirac::perturbation_det(&kl, &d1, &d2)?;
        if r1.is_zero() || r1 != r2.scale(&det) {
            let got = r1.ratio_to(&r2).map_or("none".into(), |c| c.render());
            return fail("det", format!("predicted {} observed {} L={} {}", det.render(), got, show_subspace(&l), show_datum(&d)));
        }
        Ok(None)
    })
}

/// `δ ↦ cδ` scales the reduced spinor by `c` and keeps its annihilator.
pub fn choice_delta<F: Scalar>(cfg: SuiteConfig) -> SuiteReport {
    run::<F>("choice-delta", cfg, |rng, n| {
        let d = random::datum::<F>(rng, n, DatumShape::default())?;
        let l = transversal_or_not(rng, &d, n)?;
        let c = random::small_nonzero::<F>(rng);
        let scaled = d.clone().with_delta(d.delta.scale(&c))?;
        let phi = spinor::spinor_of(&l)?;
        let a = dirac::reduce_spinor(&phi, &d, &Perturbation::Auto)?.form;
        let b = dirac::reduce_spinor(&phi, &scaled, &Perturbation::Auto)?.form;
        if b != a.scale(&c) {
            return fail("scale", format!("c={} L={} {}", c.render(), show_subspace(&l), show_datum(&d)));
        }
        if spinor::annihilator(&a)? != spinor::annihilator(&b)? {
            return fail("annihilator", show_datum(&d));
        }
        Ok(None)
    })
}

pub const SUITES: [&str; 12] = [
    "dictionary-roundtrip",
    "clifford-relation",
    "b-action",
    "fourier-intertwining",
    "reduction-routes",
    "transversality-biconditional",
    "perturbation",
    "b-covariance",
    "choice-splitting",
    "choice-perturbation",
    "choice-delta",
    "exactness-guard",
];

/// Every exact routine refuses floating point input.
pub fn exactness_guard(cfg: SuiteConfig) -> SuiteReport {
    run::<f64>("exactness-guard", cfg, |rng, n| {
        let l = random::lagrangian::<crate::scalar::Rational>(rng, n)?;
        let rows: Vec<Vec<f64>> = l.rows().iter().map(|r| r.iter().map(f64::from_rational).collect()).collect();
        let attempts: [(&str, Result<()>); 3] = [
            ("span", Subspace::span(l.ambient(), rows.clone()).map(|_| ())),
            ("annihilator", spinor::annihilator(&spinor::spinor_of(&l)?.form.map_scalars(f64::from_rational)).map(|_| ())),
            ("det", crate::linalg::Matrix::<f64>::identity(n).det().map(|_| ())),
        ];
        for (what, res) in attempts {
            if !matches!(res, Err(Error::Inexact { .. })) {
                return fail(what, "floating point input was accepted".into());
            }
        }
        Ok(None)
    })
}

pub fn run_named<F: Scalar>(name: &str, cfg: SuiteConfig) -> Option<SuiteReport> {
    Some(match name {
        "dictionary-roundtrip" => dictionary_roundtrip::<F>(cfg),
        "clifford-relation" => clifford_relation::<F>(cfg),
        "b-action" => b_action::<F>(cfg),
        "fourier-intertwining" => fourier_intertwining::<F>(cfg),
        "reduction-routes" => reduction_routes::<F>(cfg),
        "transversality-biconditional" => transversality::<F>(cfg),
        "perturbation" => perturbation::<F>(cfg),
        "b-covariance" => b_covariance::<F>(cfg),
        "choice-splitting" => choice_splitting::<F>(cfg),
        "choice-perturbation" => choice_perturbation::<F>(cfg),
        "choice-delta" => choice_delta::<F>(cfg),
        "exactness-guard" => exactness_guard(cfg),
        _ => return None,
    })
}
