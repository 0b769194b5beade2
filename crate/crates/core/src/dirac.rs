//! Fiberwise Dirac reduction.
//!
//! A [`ReductionDatum`] describes one point `x ∈ N ⊂ M`: the tangent space
//! `T_xN ⊂ ℝ^m`, generators `u_i` of the vertical space `ker dq_x`, their
//! moment covectors and an optional 2-form `B`. Lagrangians and spinors are
//! given in the input splitting; `B` moves them to the admissible splitting
//! in which `K = vertical ⊕ Ann(T_xN)`.
//!
//! Coordinates: `T_xN` uses the echelon basis `b_1..b_k` of the tangent
//! subspace, and the reduced fiber `T_xN / vertical` uses the canonical
//! quotient coordinates of [`Subspace::quotient_coords`].

use crate::error::{Error, Result};
use crate::exterior::{MultiElement, Side};
use crate::linalg::{dot, Matrix};
use crate::scalar::Scalar;
use crate::spinor::{self, FiberSplitting, SpinorLine};
use crate::subspace::{anchor, coanchor, pairing, split_vec, Ambient, Subspace};

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionDatum<F> {
    pub m: usize,
    /// `T_xN` as a subspace of `ℝ^m`.
    pub tangent: Subspace<F>,
    /// `u_i` at `x`; they span the vertical space.
    pub generators: Vec<Vec<F>>,
    /// Top element of `Λ^r(vertical)`; defaults to `u_1 ∧ ⋯ ∧ u_r`.
    pub delta: MultiElement<F>,
    /// Moment covectors `ξ(u_i)` in the input splitting.
    pub moment: Vec<Vec<F>>,
    /// Change of splitting to an admissible one.
    pub b: Option<MultiElement<F>>,
}

impl<F: Scalar> ReductionDatum<F> {
    pub fn new(tangent: Subspace<F>, generators: Vec<Vec<F>>, moment: Vec<Vec<F>>, b: Option<MultiElement<F>>) -> Result<Self> {
        let m = tangent.ambient().total_dim();
        let mut delta = MultiElement::one(m, Side::Vector)?;
        for u in &generators {
            if u.len() != m {
                return Err(Error::Shape(format!("generator of length {}, ambient {m}", u.len())));
            }
            delta = delta.wedge(&MultiElement::vector(Side::Vector, u)?)?;
        }
        let d = ReductionDatum { m, tangent, generators, delta, moment, b };
        d.validate()?;
        Ok(d)
    }

    /// No symmetry: only the submanifold.
    pub fn submanifold(tangent: Subspace<F>) -> Result<Self> {
        Self::new(tangent, vec![], vec![], None)
    }

    pub fn with_delta(mut self, delta: MultiElement<F>) -> Result<Self> {
        self.delta = delta;
        self.validate()?;
        Ok(self)
    }

    pub fn with_b(mut self, b: Option<MultiElement<F>>) -> Result<Self> {
        self.b = b;
        self.validate()?;
        Ok(self)
    }

    pub fn r(&self) -> usize {
        self.generators.len()
    }

    pub fn vertical(&self) -> Result<Subspace<F>> {
        Subspace::span(Ambient::Plain(self.m), self.generators.clone())
    }

    pub fn b_or_zero(&self) -> Result<MultiElement<F>> {
        match &self.b {
            Some(b) => Ok(b.clone()),
            None => MultiElement::zero(self.m, Side::Covector),
        }
    }

    /// `ξ(u_i) − i_{u_i}B`, the moment covectors in the admissible splitting.
    pub fn effective_moment(&self, i: usize) -> Result<Vec<F>> {
        let mut xi = self.moment[i].clone();
        if let Some(b) = &self.b {
            let u = MultiElement::vector(Side::Vector, &self.generators[i])?;
            let iub = MultiElement::contract(&u, b)?.linear_coords();
            xi = xi.iter().zip(&iub).map(|(a, c)| a.sub_ref(c)).collect();
        }
        Ok(xi)
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.m;
        if self.tangent.ambient() != Ambient::Plain(m) {
            return Err(Error::InvalidDatum("tangent space must live in a plain ambient".into()));
        }
        Ambient::split(m)?;
        let r = self.r();
        if self.moment.len() != r {
            return Err(Error::InvalidDatum(format!("{} moment covectors for {r} generators", self.moment.len())));
        }
        if self.moment.iter().any(|xi| xi.len() != m) {
            return Err(Error::Shape("moment covector length".into()));
        }
        let vert = self.vertical()?;
        if vert.dim() != r {
            return Err(Error::InvalidDatum("generators are linearly dependent".into()));
        }
        if !self.tangent.contains_subspace(&vert)? {
            return Err(Error::InvalidDatum("vertical space is not inside the tangent space".into()));
        }
        if self.delta.dim() != m || self.delta.side() != Side::Vector {
            return Err(Error::InvalidDatum("delta must be a multivector on the ambient".into()));
        }
        if self.delta.is_zero() || self.delta.homogeneous_grade() != Some(r) {
            return Err(Error::InvalidDatum(format!("delta must be a nonzero {r}-vector")));
        }
        if r > 0 && spinor::support(&self.delta)? != vert {
            return Err(Error::InvalidDatum("delta does not span the top power of the vertical space".into()));
        }
        if let Some(b) = &self.b {
            if b.dim() != m || b.side() != Side::Covector || (!b.is_zero() && b.homogeneous_grade() != Some(2)) {
                return Err(Error::InvalidDatum("B must be a 2-form on the ambient".into()));
            }
        }
        for i in 0..r {
            let xi = self.effective_moment(i)?;
            for (j, t) in self.tangent.rows().iter().enumerate() {
                if !dot(&xi, t).is_zero() {
                    return Err(Error::Inadmissible { generator: i, tangent: j });
                }
            }
        }
        Ok(())
    }
}

/// `K = span{u_i} ⊕ Ann(T_xN)` in the admissible splitting.
pub fn build_k<F: Scalar>(d: &ReductionDatum<F>) -> Result<Subspace<F>> {
    d.validate()?;
    let m = d.m;
    let zero = vec![F::zero(); m];
    let mut rows: Vec<Vec<F>> = d.generators.iter().map(|u| split_vec(u, &zero)).collect();
    rows.extend(d.tangent.annihilator()?.rows().iter().map(|a| split_vec(&zero, a)));
    Subspace::span(Ambient::split(m)?, rows)
}

/// `K` expressed in the input splitting, `τ_B(K_∇)`.
pub fn build_k_input<F: Scalar>(d: &ReductionDatum<F>) -> Result<Subspace<F>> {
    let k = build_k(d)?;
    match &d.b {
        Some(b) => k.tau_b(b),
        None => Ok(k),
    }
}

/// Moves a subspace from the input splitting to the admissible one.
pub fn to_admissible<F: Scalar>(l: &Subspace<F>, d: &ReductionDatum<F>) -> Result<Subspace<F>> {
    match &d.b {
        Some(b) => l.tau_b(&b.neg()),
        None => Ok(l.clone()),
    }
}

/// Coordinates of the reduced fiber `T_xN / vertical` and of `K⊥/K`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedFiber<F> {
    pub m: usize,
    pub k: usize,
    pub r: usize,
    /// Rows `b_i`: the echelon basis of `T_xN`; also the matrix of `dj*`.
    pub tangent_basis: Matrix<F>,
    tangent_pivots: Vec<usize>,
    /// `dq` in `T_xN` coordinates, `(k−r) × k`.
    pub quotient: Matrix<F>,
    /// Canonical horizontal lift, `k × (k−r)`, with `quotient · lift = id`.
    pub lift: Matrix<F>,
    /// Generators in `T_xN` coordinates, `r × k`.
    pub vertical: Matrix<F>,
}

impl<F: Scalar> ReducedFiber<F> {
    pub fn new(d: &ReductionDatum<F>) -> Result<Self> {
        let k = d.tangent.dim();
        let vertical =
            Matrix::from_rows(k, d.generators.iter().map(|u| d.tangent.coords(u)).collect())?;
        let whole = Subspace::whole(Ambient::Plain(k));
        let vsub = Subspace::from_matrix(Ambient::Plain(k), &vertical)?;
        let q = whole.quotient_coords(&vsub)?;
        Ok(ReducedFiber {
            m: d.m,
            k,
            r: d.r(),
            tangent_basis: d.tangent.basis().clone(),
            tangent_pivots: d.tangent.pivots().to_vec(),
            quotient: q.project,
            lift: q.lift,
            vertical,
        })
    }

    pub fn dim(&self) -> usize {
        self.k - self.r
    }

    pub fn ambient(&self) -> Result<Ambient> {
        Ambient::split(self.dim())
    }

    /// `k × m` selector with `coords(X) = C X` for `X ∈ T_xN`.
    pub fn coord_matrix(&self) -> Matrix<F> {
        Matrix::from_fn(self.k, self.m, |i, j| if self.tangent_pivots[i] == j { F::one() } else { F::zero() })
    }

    /// Default right inverse `σ` of `dj*` (`m × k`), supported on the pivot coordinates.
    pub fn default_section(&self) -> Matrix<F> {
        self.coord_matrix().transpose()
    }

    /// The map `K⊥ → T_red ⊕ T*_red`, `X + ξ ↦ dq X + η` with `dq*η = dj*ξ`.
    pub fn reduction_matrix(&self) -> Result<Matrix<F>> {
        let top = self.quotient.mul(&self.coord_matrix())?;
        let bottom = self.lift.transpose().mul(&self.tangent_basis)?;
        let (h, m) = (self.dim(), self.m);
        Ok(Matrix::from_fn(2 * h, 2 * m, |i, j| match (i < h, j < m) {
            (true, true) => top[(i, j)].clone(),
            (false, false) => bottom[(i - h, j - m)].clone(),
            _ => F::zero(),
        }))
    }

    /// `(Y, η) ↦ (lift Y, σ(dq* η))` for a right-splitting choice.
    pub fn lift_matrix(&self, choice: &SplittingChoice<F>) -> Result<Matrix<F>> {
        let top = self.tangent_basis.transpose().mul(&choice.horizontal_lift)?;
        let bottom = choice.section.mul(&self.quotient.transpose())?;
        let (h, m) = (self.dim(), self.m);
        Ok(Matrix::from_fn(2 * m, 2 * h, |i, j| match (i < m, j < h) {
            (true, true) => top[(i, j)].clone(),
            (false, false) => bottom[(i - m, j - h)].clone(),
            _ => F::zero(),
        }))
    }

    pub fn default_choice(&self) -> SplittingChoice<F> {
        SplittingChoice { horizontal_lift: self.lift.clone(), section: self.default_section() }
    }

    /// Coframe of `T_xN` dual to `(horizontal lift, generators)`.
    pub fn splitting(&self, horizontal_lift: &Matrix<F>) -> Result<FiberSplitting<F>> {
        let hs: Vec<Vec<F>> = (0..self.dim()).map(|j| horizontal_lift.col(j)).collect();
        FiberSplitting::dual_to(&hs, &self.vertical.row_vecs())
    }

    pub fn delta_in_tangent(&self, delta: &MultiElement<F>) -> Result<MultiElement<F>> {
        MultiElement::push_linear(&self.coord_matrix(), delta)
    }

    /// `dj*` applied to a form on `ℝ^m`.
    pub fn pullback(&self, phi: &MultiElement<F>) -> Result<MultiElement<F>> {
        MultiElement::push_linear(&self.tangent_basis, phi)
    }
}

/// A right-splitting choice: a horizontal lift of the reduced tangent space
/// and a section `σ` of `dj*: T*M → T*N`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplittingChoice<F> {
    /// `k × (k−r)` with `dq · lift = id`.
    pub horizontal_lift: Matrix<F>,
    /// `m × k` with `dj* · σ = id`.
    pub section: Matrix<F>,
}

impl<F: Scalar> SplittingChoice<F> {
    pub fn validate(&self, fiber: &ReducedFiber<F>) -> Result<()> {
        if fiber.quotient.mul(&self.horizontal_lift)? != Matrix::identity(fiber.dim()) {
            return Err(Error::InvalidDatum("horizontal lift is not a section of dq".into()));
        }
        if fiber.tangent_basis.mul(&self.section)? != Matrix::identity(fiber.k) {
            return Err(Error::InvalidDatum("cotangent section is not a right inverse of dj*".into()));
        }
        Ok(())
    }
}

/// `𝔅j(L) = {X + j*β : X ∈ T_xN, X + β ∈ L}` in `T_xN` coordinates.
pub fn restrict<F: Scalar>(l: &Subspace<F>, tangent: &Subspace<F>) -> Result<Subspace<F>> {
    let m = l.ambient().half_dim()?;
    let k = tangent.dim();
    // Rows of L with X ∈ T_xN: preimage of the subspace T_xN ⊕ V*.
    let zero = vec![F::zero(); m];
    let mut rows: Vec<Vec<F>> = tangent.rows().iter().map(|t| split_vec(t, &zero)).collect();
    rows.extend(Subspace::<F>::cotangent(m)?.rows());
    let tn = Subspace::span(l.ambient(), rows)?;
    let inside = l.intersect(&tn)?;
    let j = tangent.basis();
    let mut out = Vec::with_capacity(inside.dim());
    for v in inside.rows() {
        out.push(split_vec(&tangent.coords(anchor(&v)), &j.apply(coanchor(&v))?));
    }
    Subspace::span(Ambient::split(k)?, out)
}

/// Forward image `{f X + η : X + f*η ∈ L}` under `f: V → W` (`dim W × dim V`).
pub fn forward_image<F: Scalar>(f: &Matrix<F>, l: &Subspace<F>) -> Result<Subspace<F>> {
    let v = l.ambient().half_dim()?;
    if f.ncols() != v {
        return Err(Error::Shape("map does not match the fiber".into()));
    }
    let w = f.nrows();
    let (src, tgt) = (Ambient::Plain(v + w), Ambient::split(w)?);
    let ft = f.transpose();
    // (X, η) ↦ (X, f*η) and (X, η) ↦ (f X, η).
    let back = Matrix::from_fn(2 * v, v + w, |i, j| match (i < v, j < v) {
        (true, true) => if i == j { F::one() } else { F::zero() },
        (false, false) => ft[(i - v, j - v)].clone(),
        _ => F::zero(),
    });
    let fwd = Matrix::from_fn(2 * w, v + w, |i, j| match (i < w, j < v) {
        (true, true) => f[(i, j)].clone(),
        (false, false) => if i - w == j - v { F::one() } else { F::zero() },
        _ => F::zero(),
    });
    let gamma = l.preimage(&back, src)?;
    gamma.image(&fwd, tgt)
}

pub fn intersection_rank<F: Scalar>(l: &Subspace<F>, d: &ReductionDatum<F>) -> Result<usize> {
    Ok(to_admissible(l, d)?.intersect(&build_k(d)?)?.dim())
}

/// Quotient route: `(L ∩ K⊥ + K)/K` through the reduction map.
pub fn reduce_quotient<F: Scalar>(l: &Subspace<F>, d: &ReductionDatum<F>) -> Result<Subspace<F>> {
    l.require_lagrangian("reduce")?;
    let fiber = ReducedFiber::new(d)?;
    let k = build_k(d)?;
    let w = to_admissible(l, d)?.intersect(&k.perp()?)?.sum(&k)?;
    w.image(&fiber.reduction_matrix()?, fiber.ambient()?)
}

/// Characterization route: forward image of `𝔅j(L)` under `dq`.
pub fn reduce_characterization<F: Scalar>(l: &Subspace<F>, d: &ReductionDatum<F>) -> Result<Subspace<F>> {
    l.require_lagrangian("reduce")?;
    d.validate()?;
    let fiber = ReducedFiber::new(d)?;
    let bj = restrict(&to_admissible(l, d)?, &d.tangent)?;
    forward_image(&fiber.quotient, &bj)
}

/// Quotient route with an explicit right-splitting choice: pulls
/// `L ∩ K⊥ + K` back along the lift `T_red ⊕ T*_red → K⊥`.
pub fn reduce_with<F: Scalar>(l: &Subspace<F>, d: &ReductionDatum<F>, choice: &SplittingChoice<F>) -> Result<Subspace<F>> {
    l.require_lagrangian("reduce")?;
    let fiber = ReducedFiber::new(d)?;
    choice.validate(&fiber)?;
    let k = build_k(d)?;
    let w = to_admissible(l, d)?.intersect(&k.perp()?)?.sum(&k)?;
    w.preimage(&fiber.lift_matrix(choice)?, fiber.ambient()?)
}

/// The reduced Lagrangian, computed along both routes, which must agree.
pub fn reduce<F: Scalar>(l: &Subspace<F>, d: &ReductionDatum<F>) -> Result<Subspace<F>> {
    let a = reduce_quotient(l, d)?;
    let b = reduce_characterization(l, d)?;
    if a != b {
        return Err(Error::Consistency("quotient and characterization routes disagree".into()));
    }
    if !a.is_lagrangian()? {
        return Err(Error::Consistency("reduced subspace is not Lagrangian".into()));
    }
    Ok(a)
}

/// `D = {e − ½Ae : e ∈ F}` for a complement `F` of `(L∩K)⊥`.
pub fn perturbation_input_with<F: Scalar>(l: &Subspace<F>, k: &Subspace<F>, complement: &Subspace<F>) -> Result<Subspace<F>> {
    let kl = l.intersect(k)?;
    let amb = l.ambient();
    if kl.is_zero() {
        return Ok(Subspace::zero(amb));
    }
    let klp = kl.perp()?;
    if complement.dim() != kl.dim() || !klp.intersect(complement)?.is_zero() {
        return Err(Error::InvalidPerturbation("F is not a complement of (L∩K)⊥".into()));
    }
    let (fs, ks) = (complement.rows(), kl.rows());
    // G[u][s] = ⟨f_u, k_s⟩; A f_t = Σ_s c_s k_s with Σ_s c_s ⟨k_s, f_u⟩ = ⟨f_t, f_u⟩.
    let g = Matrix::from_fn(fs.len(), ks.len(), |u, s| pairing(&fs[u], &ks[s]));
    let mut rows = Vec::with_capacity(fs.len());
    for ft in &fs {
        let rhs: Vec<F> = fs.iter().map(|fu| pairing(ft, fu)).collect();
        let c = g.solve(&rhs)?.ok_or(Error::Singular)?;
        let half = F::from_ratio(1, 2);
        let mut d = ft.clone();
        for (cs, kv) in c.iter().zip(&ks) {
            let w = half.mul_ref(cs);
            for (x, y) in d.iter_mut().zip(kv) {
                *x = x.sub_ref(&w.mul_ref(y));
            }
        }
        rows.push(d);
    }
    Subspace::span(amb, rows)
}

/// Perturbation input from the echelon complement of `(L∩K)⊥`.
pub fn perturbation_input<F: Scalar>(l: &Subspace<F>, k: &Subspace<F>) -> Result<Subspace<F>> {
    let kl = l.intersect(k)?;
    if kl.is_zero() {
        return Ok(Subspace::zero(l.ambient()));
    }
    let klp = kl.perp()?;
    let n = l.ambient().total_dim();
    let free: Vec<Vec<F>> = (0..n).filter(|c| !klp.pivots().contains(c)).map(|c| crate::linalg::unit(n, c)).collect();
    perturbation_input_with(l, k, &Subspace::span(l.ambient(), free)?)
}

/// Checks that `D` is isotropic and `(L∩K)⊥ ⊕ D` is the whole fiber.
pub fn validate_perturbation<F: Scalar>(l: &Subspace<F>, k: &Subspace<F>, d: &Subspace<F>) -> Result<()> {
    if !d.is_isotropic()? {
        return Err(Error::InvalidPerturbation("D is not isotropic".into()));
    }
    let klp = l.intersect(k)?.perp()?;
    if klp.dim() + d.dim() != l.ambient().total_dim() || !klp.intersect(d)?.is_zero() {
        return Err(Error::InvalidPerturbation("D is not a complement of (L∩K)⊥".into()));
    }
    Ok(())
}

/// `L_D = L ∩ D⊥ + D`.
pub fn perturb<F: Scalar>(l: &Subspace<F>, k: &Subspace<F>, d: &Subspace<F>) -> Result<Subspace<F>> {
    l.require_lagrangian("perturb")?;
    validate_perturbation(l, k, d)?;
    l.intersect(&d.perp()?)?.sum(d)
}

/// Word `(d_l, …, d_1)` over the echelon basis `d_1..d_l` of `D`.
pub fn perturbation_word<F: Scalar>(d: &Subspace<F>) -> Vec<Vec<F>> {
    let mut w = d.rows();
    w.reverse();
    w
}

/// `φ_D = Π(d_l)⋯Π(d_1)φ`.
pub fn perturb_spinor<F: Scalar>(phi: &SpinorLine<F>, d: &Subspace<F>) -> Result<SpinorLine<F>> {
    if d.is_zero() {
        return Ok(phi.clone());
    }
    let form = spinor::clifford_word(&perturbation_word(d), &phi.form)?;
    if form.is_zero() {
        return Err(Error::InvalidPerturbation("Π(𝔡)φ vanishes".into()));
    }
    Ok(SpinorLine::new(form))
}

/// `det(pr_{D2}|_{D1})` with `pr_{D2}` the projection along `(L∩K)⊥`,
/// in the echelon bases of `D1` and `D2`.
pub fn perturbation_det<F: Scalar>(kl: &Subspace<F>, d1: &Subspace<F>, d2: &Subspace<F>) -> Result<F> {
    let ks = kl.rows();
    let pm = |d: &Subspace<F>| {
        let ds = d.rows();
        Matrix::from_fn(ks.len(), ds.len(), |s, i| pairing(&ds[i], &ks[s])).det()
    };
    let (a, b) = (pm(d1)?, pm(d2)?);
    if b.is_zero() {
        return Err(Error::Singular);
    }
    Ok(a.div_ref(&b))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Perturbation<F> {
    /// Use the transversal formula as is.
    None,
    /// Compute `D` with [`perturbation_input`].
    Auto,
    /// A given `D`, in the input splitting.
    Given(Subspace<F>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedSpinor<F> {
    /// `C_δ(j*(e^B ∧ Π(𝔡)φ))` on the reduced fiber.
    pub form: MultiElement<F>,
    /// The perturbation input used (input splitting).
    pub perturbation: Subspace<F>,
    /// `dim(L ∩ K)` for the spinor that was pushed forward.
    pub intersection_rank: usize,
}

impl<F: Scalar> ReducedSpinor<F> {
    /// A zero result signals a non-transversal fiber.
    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }
}

pub fn reduce_spinor<F: Scalar>(phi: &SpinorLine<F>, d: &ReductionDatum<F>, pert: &Perturbation<F>) -> Result<ReducedSpinor<F>> {
    let fiber = ReducedFiber::new(d)?;
    let split = fiber.splitting(&fiber.lift)?;
    reduce_spinor_with(phi, d, pert, &split)
}

/// [`reduce_spinor`] with an explicit coframe of `T_xN`; its horizontal part
/// must be `dq` so that the output is in the canonical reduced coordinates.
pub fn reduce_spinor_with<F: Scalar>(
    phi: &SpinorLine<F>,
    d: &ReductionDatum<F>,
    pert: &Perturbation<F>,
    split: &FiberSplitting<F>,
) -> Result<ReducedSpinor<F>> {
    d.validate()?;
    if phi.form.dim() != d.m || phi.form.side() != Side::Covector {
        return Err(Error::SpaceMismatch("spinor does not live on the ambient fiber".into()));
    }
    let fiber = ReducedFiber::new(d)?;
    if split.horizontal != fiber.quotient {
        return Err(Error::InvalidDatum("horizontal coframe must be dq".into()));
    }
    let k0 = build_k_input(d)?;
    let dsub = match pert {
        Perturbation::None => Subspace::zero(k0.ambient()),
        Perturbation::Auto => perturbation_input(&phi.lagrangian()?, &k0)?,
        Perturbation::Given(ds) => {
            validate_perturbation(&phi.lagrangian()?, &k0, ds)?;
            ds.clone()
        }
    };
    let phi_d = perturb_spinor(phi, &dsub)?;
    let psi = MultiElement::exp_two_form(&d.b_or_zero()?)?.wedge(&phi_d.form)?;
    let rank = spinor::annihilator(&psi)?.intersect(&build_k(d)?)?.dim();
    let pulled = fiber.pullback(&psi)?;
    let form = spinor::c_delta(&pulled, &fiber.delta_in_tangent(&d.delta)?, split)?;
    Ok(ReducedSpinor { form, perturbation: dsub, intersection_rank: rank })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransversalityReport<F> {
    pub intersection_rank: usize,
    /// `dq ∘ F_𝔭(dj*φ) ≠ 0`.
    pub covariant_nonzero: bool,
    /// `C_δ(dj*φ) ≠ 0`.
    pub contravariant_nonzero: bool,
    /// Both routes vanish together, and exactly when `L ∩ K ≠ 0`.
    pub biconditional: bool,
    /// `F_ν(covariant) = ratio · contravariant`, when both are nonzero.
    pub ratio: Option<F>,
    pub routes_agree: bool,
    /// `C_δ` with `δ = (−1)^{k(k−r)} F_𝔭(dq*ν)` equals `F_ν ∘ dq ∘ F_𝔭` exactly.
    pub paired_delta_exact: bool,
    pub covariant: MultiElement<F>,
    pub contravariant: MultiElement<F>,
}

pub fn check_transversality<F: Scalar>(l: &Subspace<F>, d: &ReductionDatum<F>) -> Result<TransversalityReport<F>> {
    let fiber = ReducedFiber::new(d)?;
    let split = fiber.splitting(&fiber.lift)?;
    let la = to_admissible(l, d)?;
    let rank = la.intersect(&build_k(d)?)?.dim();
    let phi = spinor::spinor_of(&la)?.form;
    let pulled = fiber.pullback(&phi)?;

    let (k, h) = (fiber.k, fiber.dim());
    let frak_p = MultiElement::top(k, Side::Vector)?;
    let nu = MultiElement::top(h, Side::Covector)?;
    let covariant = MultiElement::push_linear(&fiber.quotient, &spinor::fourier(&frak_p, &pulled)?)?;
    let delta_n = fiber.delta_in_tangent(&d.delta)?;
    let contravariant = spinor::c_delta(&pulled, &delta_n, &split)?;
    let as_form = spinor::fourier(&nu, &covariant)?;

    let dq_nu = MultiElement::push_linear(&fiber.quotient.transpose(), &nu)?;
    let mut paired = spinor::fourier(&frak_p, &dq_nu)?;
    if (k * h) % 2 == 1 {
        paired = paired.neg();
    }
    let paired_delta_exact = spinor::c_delta(&pulled, &paired, &split)? == as_form;

    let (cov_nz, con_nz) = (!covariant.is_zero(), !contravariant.is_zero());
    let ratio = as_form.ratio_to(&contravariant);
    let routes_agree = (!cov_nz && !con_nz) || ratio.is_some();
    Ok(TransversalityReport {
        intersection_rank: rank,
        covariant_nonzero: cov_nz,
        contravariant_nonzero: con_nz,
        biconditional: cov_nz == (rank == 0) && con_nz == (rank == 0),
        ratio,
        routes_agree,
        paired_delta_exact,
        covariant,
        contravariant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    type S = Subspace<Rational>;

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    fn plain(n: usize, rows: &[&[i64]]) -> S {
        S::span(Ambient::Plain(n), rows.iter().map(|x| r(x)).collect()).unwrap()
    }

    #[test]
    fn build_k_examples() {
        let d = ReductionDatum::submanifold(S::whole(Ambient::Plain(3))).unwrap();
        assert!(build_k(&d).unwrap().is_zero());
        let d = ReductionDatum::submanifold(plain(3, &[&[1, 0, 0], &[0, 0, 1]])).unwrap();
        let want = S::span(Ambient::Split(3), vec![r(&[0, 0, 0, 0, 1, 0])]).unwrap();
        assert_eq!(build_k(&d).unwrap(), want);
    }

    #[test]
    fn inadmissible_is_rejected() {
        let tn = plain(2, &[&[1, 0], &[0, 1]]);
        let err = ReductionDatum::new(tn, vec![r(&[1, 0])], vec![r(&[0, 1])], None).unwrap_err();
        assert_eq!(err, Error::Inadmissible { generator: 0, tangent: 1 });
    }

    #[test]
    fn restrict_examples() {
        let tn = plain(3, &[&[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(restrict(&S::cotangent(3).unwrap(), &tn).unwrap(), S::cotangent(2).unwrap());
        assert_eq!(restrict(&S::tangent(3).unwrap(), &tn).unwrap(), S::tangent(2).unwrap());
        let w = MultiElement::basis(3, Side::Covector, &[0, 2]).unwrap();
        let jw = MultiElement::basis(2, Side::Covector, &[0, 1]).unwrap();
        assert_eq!(restrict(&S::graph(&w).unwrap(), &tn).unwrap(), S::graph(&jw).unwrap());
    }

    #[test]
    fn forward_image_examples() {
        let w = MultiElement::basis(2, Side::Covector, &[0, 1]).unwrap();
        let l = S::graph(&w).unwrap();
        assert_eq!(forward_image(&Matrix::identity(2), &l).unwrap(), l);
        let proj = Matrix::from_rows(2, vec![r(&[1, 0])]).unwrap();
        assert_eq!(forward_image(&proj, &l).unwrap(), S::cotangent(1).unwrap());
        assert_eq!(forward_image(&proj, &S::tangent(2).unwrap()).unwrap(), S::tangent(1).unwrap());
    }

    #[test]
    fn foliation_reduction() {
        let delta = plain(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let l = S::distribution(&delta).unwrap();
        let d = ReductionDatum::submanifold(plain(3, &[&[1, 0, 0], &[0, 0, 1]])).unwrap();
        let want = S::distribution(&plain(2, &[&[1, 0]])).unwrap();
        assert_eq!(reduce(&l, &d).unwrap(), want);
        assert_eq!(intersection_rank(&l, &d).unwrap(), 0);
    }

    #[test]
    fn foliation_perturbation() {
        // T𝓕 = T_xN = span{e2, e3}, so L ∩ K = span{e^1}.
        let tf = plain(3, &[&[0, 1, 0], &[0, 0, 1]]);
        let l = S::distribution(&tf).unwrap();
        let d = ReductionDatum::submanifold(plain(3, &[&[0, 1, 0], &[0, 0, 1]])).unwrap();
        let k = build_k(&d).unwrap();
        assert_eq!(l.intersect(&k).unwrap().dim(), 1);
        let dd = perturbation_input(&l, &k).unwrap();
        assert_eq!(dd.dim(), 1);
        assert!(dd.is_isotropic().unwrap());
        let ld = perturb(&l, &k, &dd).unwrap();
        assert!(ld.is_lagrangian().unwrap());
        assert!(ld.intersect(&k).unwrap().is_zero());
        assert_eq!(reduce(&ld, &d).unwrap(), reduce(&l, &d).unwrap());
    }

    #[test]
    fn trivial_perturbation() {
        let l = S::tangent(2).unwrap();
        let k = S::zero(Ambient::Split(2));
        let dd = perturbation_input(&l, &k).unwrap();
        assert!(dd.is_zero());
        assert_eq!(perturb(&l, &k, &dd).unwrap(), l);
    }

    #[test]
    fn trivial_reduce_spinor() {
        let d = ReductionDatum::submanifold(S::whole(Ambient::Plain(2))).unwrap();
        let w = MultiElement::basis(2, Side::Covector, &[0, 1]).unwrap();
        let phi = spinor::spinor_of(&S::graph(&w).unwrap()).unwrap();
        let red = reduce_spinor(&phi, &d, &Perturbation::Auto).unwrap();
        assert_eq!(red.form, phi.form);
    }

    #[test]
    fn transversality_trivial_cases() {
        let d = ReductionDatum::submanifold(S::whole(Ambient::Plain(2))).unwrap();
        let rep = check_transversality(&S::tangent(2).unwrap(), &d).unwrap();
        assert!(rep.covariant_nonzero && rep.contravariant_nonzero && rep.intersection_rank == 0);
        // K = span{e1} ⊕ span{e^2}; L = K is Lagrangian.
        let d = ReductionDatum::new(plain(2, &[&[1, 0]]), vec![r(&[1, 0])], vec![r(&[0, 0])], None).unwrap();
        let k = build_k(&d).unwrap();
        let rep = check_transversality(&k, &d).unwrap();
        assert!(!rep.covariant_nonzero && !rep.contravariant_nonzero);
        assert_eq!(rep.intersection_rank, 2);
        assert!(rep.biconditional && rep.routes_agree);
    }
}
