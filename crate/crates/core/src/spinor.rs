//! Clifford action of the split fiber on forms and multivectors, annihilators,
//! the Lagrangian-to-spinor normal form, Fourier maps and `C_δ`.

use crate::error::{Error, Result};
use crate::exterior::{Blade, MultiElement, Side};
use crate::linalg::{dot, Matrix};
use crate::scalar::Scalar;
use crate::subspace::{anchor, coanchor, Ambient, Subspace};

/// `Π(e)² = FACTOR · ⟨e,e⟩` for the pairing `⟨X+ξ,Y+η⟩ = η(X)+ξ(Y)`.
pub fn clifford_square_factor<F: Scalar>() -> F {
    F::from_ratio(1, 2)
}

/// A spinor with an optional annihilator certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorLine<F> {
    pub form: MultiElement<F>,
    pub certificate: Option<Subspace<F>>,
}

impl<F: Scalar> SpinorLine<F> {
    pub fn new(form: MultiElement<F>) -> Self {
        SpinorLine { form, certificate: None }
    }

    /// Returns the certificate, computing the annihilator when absent.
    pub fn lagrangian(&self) -> Result<Subspace<F>> {
        match &self.certificate {
            Some(l) => Ok(l.clone()),
            None => annihilator(&self.form),
        }
    }
}

fn check_fiber<F: Scalar>(e: &[F], a: &MultiElement<F>) -> Result<()> {
    if e.len() != 2 * a.dim() {
        return Err(Error::Shape(format!(
            "fiber vector of length {} acting on dimension {}",
            e.len(),
            a.dim()
        )));
    }
    Ok(())
}

/// `Π(e)φ = i_{p(e)}φ + s(e)∧φ` on forms.
pub fn clifford_act<F: Scalar>(e: &[F], phi: &MultiElement<F>) -> Result<MultiElement<F>> {
    check_fiber(e, phi)?;
    if phi.side() != Side::Covector {
        return Err(Error::SpaceMismatch("clifford_act acts on forms".into()));
    }
    let x = MultiElement::vector(Side::Vector, anchor(e))?;
    let xi = MultiElement::vector(Side::Covector, coanchor(e))?;
    MultiElement::contract(&x, phi)?.add(&xi.wedge(phi)?)
}

/// `Π^op(e)𝔛 = p(e)∧𝔛 + i_{s(e)}𝔛` on multivectors.
pub fn clifford_act_op<F: Scalar>(e: &[F], x: &MultiElement<F>) -> Result<MultiElement<F>> {
    check_fiber(e, x)?;
    if x.side() != Side::Vector {
        return Err(Error::SpaceMismatch("clifford_act_op acts on multivectors".into()));
    }
    let v = MultiElement::vector(Side::Vector, anchor(e))?;
    let xi = MultiElement::vector(Side::Covector, coanchor(e))?;
    v.wedge(x)?.add(&MultiElement::contract(&xi, x)?)
}

/// Acts with `Π` or `Π^op` according to the side of `a`.
pub fn act<F: Scalar>(e: &[F], a: &MultiElement<F>) -> Result<MultiElement<F>> {
    match a.side() {
        Side::Covector => clifford_act(e, a),
        Side::Vector => clifford_act_op(e, a),
    }
}

/// `Π(w_1)Π(w_2)⋯Π(w_l) a`: the last letter acts first, so the word
/// `(d_l, …, d_1)` realizes `d_l ∧ ⋯ ∧ d_1`.
pub fn clifford_word<F: Scalar>(word: &[Vec<F>], a: &MultiElement<F>) -> Result<MultiElement<F>> {
    if word.is_empty() {
        return Err(Error::Shape("empty Clifford word".into()));
    }
    let mut out = a.clone();
    for e in word.iter().rev() {
        out = act(e, &out)?;
    }
    Ok(out)
}

/// `{e : Π(e)φ = 0}` (or `Π^op` for multivectors).
pub fn annihilator<F: Scalar>(phi: &MultiElement<F>) -> Result<Subspace<F>> {
    if phi.is_zero() {
        return Err(Error::Zero("annihilator of the zero spinor".into()));
    }
    let n = phi.dim();
    let amb = Ambient::split(n)?;
    let mut images: Vec<MultiElement<F>> = Vec::with_capacity(2 * n);
    for k in 0..2 * n {
        images.push(act(&crate::linalg::unit(2 * n, k), phi)?);
    }
    let mut blades: Vec<Blade> = images.iter().flat_map(|m| m.terms().keys().copied()).collect();
    blades.sort_unstable();
    blades.dedup();
    let system = Matrix::from_fn(blades.len(), 2 * n, |i, k| images[k].coeff(blades[i]));
    Subspace::from_matrix(amb, &system.nullspace()?)
}

pub fn is_pure<F: Scalar>(phi: &MultiElement<F>) -> Result<bool> {
    Ok(annihilator(phi)?.dim() == phi.dim())
}

/// Normal form `e^{-ω} ∧ Ω` of the pure spinor line of a Lagrangian `L`.
pub fn spinor_of<F: Scalar>(l: &Subspace<F>) -> Result<SpinorLine<F>> {
    l.require_lagrangian("spinor_of")?;
    let n = l.ambient().half_dim()?;
    let rows = l.rows();
    let xs: Vec<Vec<F>> = rows.iter().map(|r| anchor(r).to_vec()).collect();
    let s = Subspace::span(Ambient::Plain(n), xs.clone())?;
    let x_cols = Matrix::from_cols(n, &xs)?;

    // ξ_a with X_a + ξ_a ∈ L for each echelon basis vector X_a of S.
    let s_rows = s.rows();
    let mut xis = Vec::with_capacity(s_rows.len());
    for sa in &s_rows {
        let c = x_cols.solve(sa)?.ok_or_else(|| Error::Consistency("p(L) basis not in p(L)".into()))?;
        let xi: Vec<F> = (0..n)
            .map(|j| dot(&c, &rows.iter().map(|r| coanchor(r)[j].clone()).collect::<Vec<_>>()))
            .collect();
        xis.push(xi);
    }

    // Basis of V: S's echelon rows, then unit vectors at the non-pivot columns.
    let mut basis = s_rows.clone();
    for j in (0..n).filter(|j| !s.pivots().contains(j)) {
        basis.push(crate::linalg::unit(n, j));
    }
    let p = Matrix::from_cols(n, &basis)?;
    let d = s_rows.len();
    let omega_b = Matrix::from_fn(n, n, |a, b| if a < d && b < d { dot(&xis[a], &s_rows[b]) } else { F::zero() });
    let pinv = p.inverse()?;
    let omega_std = pinv.transpose().mul(&omega_b)?.mul(&pinv)?;
    let omega = MultiElement::two_form_from_matrix(Side::Covector, &omega_std)?;

    let ann = l.intersect(&Subspace::cotangent(n)?)?;
    let mut big_omega = MultiElement::one(n, Side::Covector)?;
    for r in ann.rows() {
        big_omega = big_omega.wedge(&MultiElement::vector(Side::Covector, coanchor(&r))?)?;
    }
    let form = MultiElement::exp_two_form(&omega.neg())?.wedge(&big_omega)?;
    Ok(SpinorLine { form, certificate: Some(l.clone()) })
}

/// `F_ν(a) = i_a ν` for a nonzero top element `ν` on the side dual to `a`.
pub fn fourier<F: Scalar>(nu: &MultiElement<F>, a: &MultiElement<F>) -> Result<MultiElement<F>> {
    if nu.homogeneous_grade() != Some(nu.dim()) {
        return Err(Error::Grade { expected: format!("top ({})", nu.dim()), got: format!("{:?}", nu.grades()) });
    }
    MultiElement::interior(a, nu)
}

/// A coframe of the `N`-fiber adapted to a horizontal/vertical decomposition:
/// `horizontal` rows span `Ann(vertical)` and are identified with the base
/// coframe; `vertical` rows complete them to a basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberSplitting<F> {
    pub horizontal: Matrix<F>,
    pub vertical: Matrix<F>,
}

impl<F: Scalar> FiberSplitting<F> {
    /// The coframe dual to the frame `(horizontal vectors, vertical vectors)`.
    pub fn dual_to(horizontal: &[Vec<F>], vertical: &[Vec<F>]) -> Result<Self> {
        let k = horizontal.first().or(vertical.first()).map_or(0, Vec::len);
        let frame: Vec<Vec<F>> = horizontal.iter().chain(vertical).cloned().collect();
        let inv = Matrix::from_cols(k, &frame)?.inverse()?;
        let h = horizontal.len();
        Ok(FiberSplitting {
            horizontal: inv.select_rows(&(0..h).collect::<Vec<_>>()),
            vertical: inv.select_rows(&(h..k).collect::<Vec<_>>()),
        })
    }
}

/// `{v : v ∧ δ = 0}`, which has dimension `r` exactly when `δ` is a nonzero decomposable r-vector.
pub fn support<F: Scalar>(delta: &MultiElement<F>) -> Result<Subspace<F>> {
    let k = delta.dim();
    let images: Vec<MultiElement<F>> = (0..k)
        .map(|i| MultiElement::basis(k, delta.side(), &[i])?.wedge(delta))
        .collect::<Result<_>>()?;
    let mut blades: Vec<Blade> = images.iter().flat_map(|m| m.terms().keys().copied()).collect();
    blades.sort_unstable();
    blades.dedup();
    let system = Matrix::from_fn(blades.len(), k, |i, j| images[j].coeff(blades[i]));
    Subspace::from_matrix(Ambient::Plain(k), &system.nullspace()?)
}

/// `C_δ`: keeps the terms `α ∧ ξ^V` carrying the full vertical coframe,
/// strips `ξ^V` and scales by `i_{ξ^V} δ`. The output is written in the
/// horizontal coframe.
pub fn c_delta<F: Scalar>(alpha: &MultiElement<F>, delta: &MultiElement<F>, split: &FiberSplitting<F>) -> Result<MultiElement<F>> {
    let k = alpha.dim();
    let (h, r) = (split.horizontal.nrows(), split.vertical.nrows());
    if alpha.side() != Side::Covector || delta.side() != Side::Vector || delta.dim() != k {
        return Err(Error::SpaceMismatch("c_delta takes a form and a multivector on the same fiber".into()));
    }
    if h + r != k || split.horizontal.ncols() != k || split.vertical.ncols() != k {
        return Err(Error::Shape("coframe does not match the fiber dimension".into()));
    }
    if delta.is_zero() {
        return Err(Error::Zero("delta".into()));
    }
    if delta.homogeneous_grade() != Some(r) {
        return Err(Error::Grade { expected: r.to_string(), got: format!("{:?}", delta.grades()) });
    }
    let vert = support(delta)?;
    if vert.dim() != r {
        return Err(Error::InvalidDatum("delta is not decomposable".into()));
    }
    if !split.horizontal.mul(&vert.basis().transpose())?.is_zero() {
        return Err(Error::InvalidDatum("horizontal coframe does not annihilate the vertical space".into()));
    }
    let coframe = split.horizontal.vstack(&split.vertical)?;
    let to_coframe = coframe.inverse().map_err(|_| Error::InvalidDatum("coframe is not a basis".into()))?;
    let beta = MultiElement::push_linear(&to_coframe.transpose(), alpha)?;

    let mut xi_v = MultiElement::one(k, Side::Covector)?;
    for i in 0..r {
        xi_v = xi_v.wedge(&MultiElement::vector(Side::Covector, split.vertical.row(i))?)?;
    }
    let factor = MultiElement::interior(&xi_v, delta)?.coeff(0);

    let vmask: Blade = (((1u64 << k) - 1) & !((1u64 << h) - 1)) as Blade;
    let terms = beta
        .terms()
        .iter()
        .filter(|(b, _)| *b & vmask == vmask)
        .map(|(b, c)| (b & !vmask, c.mul_ref(&factor)));
    MultiElement::from_terms(h, Side::Covector, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    type M = MultiElement<Rational>;

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    fn cov(n: usize, idx: &[usize]) -> M {
        M::basis(n, Side::Covector, idx).unwrap()
    }

    fn mv(n: usize, idx: &[usize]) -> M {
        M::basis(n, Side::Vector, idx).unwrap()
    }

    #[test]
    fn clifford_examples() {
        let one = M::one(2, Side::Covector).unwrap();
        assert_eq!(clifford_act(&r(&[1, 0, 1, 0]), &one).unwrap(), cov(2, &[0]));
        assert_eq!(clifford_act(&r(&[1, 0, 0, 0]), &cov(2, &[0, 1])).unwrap(), cov(2, &[1]));
        assert_eq!(clifford_act(&r(&[0, 0, 1, 0]), &cov(2, &[1])).unwrap(), cov(2, &[0, 1]));
        assert_eq!(clifford_act_op(&r(&[1, 0, 0, 0]), &M::one(2, Side::Vector).unwrap()).unwrap(), mv(2, &[0]));
        assert_eq!(clifford_act_op(&r(&[0, 0, 1, 0]), &mv(2, &[0, 1])).unwrap(), mv(2, &[1]));
        assert_eq!(clifford_act_op(&r(&[1, 0, 1, 0]), &mv(2, &[1])).unwrap(), mv(2, &[0, 1]));
    }

    #[test]
    fn word_examples() {
        let one = M::one(2, Side::Covector).unwrap();
        let w = vec![r(&[0, 0, 1, 0]), r(&[0, 0, 0, 1])];
        assert_eq!(clifford_word(&w, &one).unwrap(), cov(2, &[0, 1]));
        let iso = r(&[1, 0, 0, 1]);
        let phi = cov(2, &[0]).add(&one).unwrap();
        assert!(clifford_word(&[iso.clone(), iso.clone()], &phi).unwrap().is_zero());
        assert_eq!(clifford_word(std::slice::from_ref(&iso), &phi).unwrap(), clifford_act(&iso, &phi).unwrap());
        assert!(clifford_word(&[], &phi).is_err());
    }

    #[test]
    fn annihilator_examples() {
        let one = M::one(3, Side::Covector).unwrap();
        assert_eq!(annihilator(&one).unwrap(), Subspace::tangent(3).unwrap());
        assert_eq!(annihilator(&cov(3, &[0, 1, 2])).unwrap(), Subspace::cotangent(3).unwrap());
        let w = cov(2, &[0, 1]);
        let phi = M::one(2, Side::Covector).unwrap().sub(&w).unwrap();
        assert_eq!(annihilator(&phi).unwrap(), Subspace::graph(&w).unwrap());
        assert!(annihilator(&M::zero(2, Side::Covector).unwrap()).is_err());
    }

    #[test]
    fn purity_examples() {
        let phi = M::one(4, Side::Covector).unwrap().add(&cov(4, &[0, 1, 2, 3])).unwrap();
        assert!(!is_pure(&phi).unwrap());
        assert!(is_pure(&cov(4, &[0, 1, 2, 3]).scale(&rat(7, 3))).unwrap());
    }

    #[test]
    fn spinor_of_examples() {
        let v = Subspace::tangent(2).unwrap();
        assert_eq!(spinor_of(&v).unwrap().form, M::one(2, Side::Covector).unwrap());
        let delta = Subspace::span(Ambient::Plain(2), vec![r(&[1, 0])]).unwrap();
        let l = Subspace::distribution(&delta).unwrap();
        assert_eq!(spinor_of(&l).unwrap().form, cov(2, &[1]));
        let w = cov(2, &[0, 1]);
        let g = Subspace::graph(&w).unwrap();
        let want = M::one(2, Side::Covector).unwrap().sub(&w).unwrap();
        assert_eq!(spinor_of(&g).unwrap().form, want);
        assert!(spinor_of(&Subspace::<Rational>::whole(Ambient::Split(2))).is_err());
    }

    #[test]
    fn fourier_examples() {
        let nu = cov(2, &[0, 1]);
        assert_eq!(fourier(&nu, &mv(2, &[0])).unwrap(), cov(2, &[1]));
        assert_eq!(fourier(&nu, &M::one(2, Side::Vector).unwrap()).unwrap(), nu);
        assert!(fourier(&cov(2, &[0]), &mv(2, &[0])).is_err());
    }

    #[test]
    fn c_delta_examples() {
        // Fiber ℝ², vertical = span{e2}, δ = e2, coframe (f1 | f2).
        let split = FiberSplitting::dual_to(&[r(&[1, 0])], &[r(&[0, 1])]).unwrap();
        let delta = mv(2, &[1]);
        let got = c_delta(&cov(2, &[0, 1]), &delta, &split).unwrap();
        assert_eq!(got, cov(1, &[0]));
        assert!(c_delta(&cov(2, &[0]), &delta, &split).unwrap().is_zero());
        let tripled = c_delta(&cov(2, &[0, 1]), &delta.scale(&rat(3, 1)), &split).unwrap();
        assert_eq!(tripled, got.scale(&rat(3, 1)));
        assert!(c_delta(&cov(2, &[0, 1]), &M::zero(2, Side::Vector).unwrap(), &split).is_err());
        let bad = FiberSplitting { horizontal: Matrix::from_rows(2, vec![r(&[1, 1])]).unwrap(), vertical: split.vertical.clone() };
        assert!(c_delta(&cov(2, &[0, 1]), &delta, &bad).is_err());
    }
}
