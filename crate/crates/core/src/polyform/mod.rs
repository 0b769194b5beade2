//! Differential forms and vector fields with polynomial coefficients on a
//! coordinate chart `ℝ^n`.
//!
//! Forms are sums `Σ f_I dx^I` over increasing index sets (stored as blade
//! masks), fields are coefficient vectors. Everything is exact, so checks
//! such as `d² = 0` are equalities of canonical forms.

mod checks;
mod poly;
pub mod tduality;

use std::collections::BTreeMap;

pub use checks::{
    graph_integrability, moment_conditions, spinor_integrability, GraphIntegrability, MomentReport, PointCheck,
    SpinorIntegrability, Submanifold,
};
pub use poly::{Poly, DEGREE_CAP};

use crate::error::{Error, Result};
use crate::exterior::{blade_indices, contract_blade, grade, wedge_sign, Blade, MultiElement, Side, MAX_DIM};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct PolyForm<F> {
    n: usize,
    terms: BTreeMap<Blade, Poly<F>>,
}

impl<F: Scalar> PolyForm<F> {
    pub fn zero(n: usize) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::DimensionCap { dim: n, cap: MAX_DIM });
        }
        Ok(PolyForm { n, terms: BTreeMap::new() })
    }

    /// The 0-form `f`.
    pub fn function(f: Poly<F>) -> Result<Self> {
        let mut out = Self::zero(f.nvars())?;
        out.insert(0, f);
        Ok(out)
    }

    pub fn one(n: usize) -> Result<Self> {
        Self::function(Poly::one(n))
    }

    /// `dx^{i_1} ∧ ⋯ ∧ dx^{i_k}` (zero-based indices, any order).
    pub fn basis(n: usize, idx: &[usize]) -> Result<Self> {
        let e = MultiElement::<F>::basis(n, Side::Covector, idx)?;
        Self::constant(&e)
    }

    /// A constant-coefficient form.
    pub fn constant(e: &MultiElement<F>) -> Result<Self> {
        if e.side() != Side::Covector {
            return Err(Error::SpaceMismatch("forms are built from covectors".into()));
        }
        let mut out = Self::zero(e.dim())?;
        for (b, c) in e.terms() {
            out.insert(*b, Poly::constant(e.dim(), c.clone()));
        }
        Ok(out)
    }

    /// `Σ f_i dx^i`.
    pub fn one_form(coeffs: Vec<Poly<F>>) -> Result<Self> {
        let n = coeffs.len();
        let mut out = Self::zero(n)?;
        for (i, f) in coeffs.into_iter().enumerate() {
            out.insert(1 << i, f);
        }
        Ok(out)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Blade, Poly<F>)>) -> Result<Self> {
        let mut out = Self::zero(n)?;
        for (b, p) in terms {
            if b >> n != 0 || p.nvars() != n {
                return Err(Error::Shape("term outside the chart".into()));
            }
            out.insert(b, p);
        }
        Ok(out)
    }

    fn insert(&mut self, b: Blade, p: Poly<F>) {
        if p.is_zero() {
            return;
        }
        let v = match self.terms.remove(&b) {
            Some(q) => q.add(&p),
            None => p,
        };
        if !v.is_zero() {
            self.terms.insert(b, v);
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Blade, Poly<F>> {
        &self.terms
    }

    pub fn coeff(&self, b: Blade) -> Poly<F> {
        self.terms.get(&b).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut gs = self.terms.keys().map(|b| grade(*b));
        let g = gs.next()?;
        gs.all(|h| h == g).then_some(g)
    }

    /// Zero or homogeneous of form degree `k`.
    pub fn is_of_degree(&self, k: usize) -> bool {
        self.is_zero() || self.homogeneous_degree() == Some(k)
    }

    pub fn degree_part(&self, k: usize) -> Self {
        let terms = self.terms.iter().filter(|(b, _)| grade(**b) == k).map(|(b, p)| (*b, p.clone())).collect();
        PolyForm { n: self.n, terms }
    }

    fn same(&self, o: &Self) -> Result<()> {
        if self.n != o.n {
            return Err(Error::SpaceMismatch(format!("forms on charts of dimension {} and {}", self.n, o.n)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let mut out = self.clone();
        for (b, p) in &o.terms {
            out.insert(*b, p.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, c: &F) -> Self {
        let terms = self.terms.iter().map(|(b, p)| (*b, p.scale(c))).filter(|(_, p)| !p.is_zero()).collect();
        PolyForm { n: self.n, terms }
    }

    pub fn mul_function(&self, f: &Poly<F>) -> Result<Self> {
        let mut out = Self::zero(self.n)?;
        for (b, p) in &self.terms {
            out.insert(*b, p.mul(f)?);
        }
        Ok(out)
    }

    pub fn wedge(&self, o: &Self) -> Result<Self> {
        self.same(o)?;
        let mut out = Self::zero(self.n)?;
        for (i, p) in &self.terms {
            for (j, q) in &o.terms {
                if let Some(neg) = wedge_sign(*i, *j) {
                    let c = p.mul(q)?;
                    out.insert(i | j, if neg { c.neg() } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `Σ B^k / k!` for a 2-form.
    pub fn exp_two_form(b: &Self) -> Result<Self> {
        if !b.is_of_degree(2) {
            return Err(Error::Grade { expected: "2".into(), got: format!("{:?}", b.degrees()) });
        }
        let mut out = Self::one(b.n)?;
        let mut power = out.clone();
        for k in 1.. {
            power = power.wedge(b)?.scale(&F::from_ratio(1, k));
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(|b| grade(*b)).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// Exterior derivative.
    pub fn d(&self) -> Result<Self> {
        let mut out = Self::zero(self.n)?;
        for (b, p) in &self.terms {
            for j in 0..self.n {
                if let Some(neg) = wedge_sign(1 << j, *b) {
                    let dp = p.deriv(j);
                    out.insert(b | 1 << j, if neg { dp.neg() } else { dp });
                }
            }
        }
        Ok(out)
    }

    pub fn is_closed(&self) -> Result<bool> {
        Ok(self.d()?.is_zero())
    }

    /// `d_H = d − H∧·` for a closed 3-form `H`.
    pub fn d_h(&self, h: &Self) -> Result<Self> {
        require_closed_three_form(h)?;
        self.d()?.sub(&h.wedge(self)?)
    }

    /// Interior product `i_X`.
    pub fn interior(&self, x: &PolyField<F>) -> Result<Self> {
        if x.dim() != self.n {
            return Err(Error::SpaceMismatch("field and form on different charts".into()));
        }
        let mut out = Self::zero(self.n)?;
        for (k, xk) in x.comps.iter().enumerate() {
            if xk.is_zero() {
                continue;
            }
            for (b, p) in &self.terms {
                if let Some((neg, rest)) = contract_blade(k, *b) {
                    let c = p.mul(xk)?;
                    out.insert(rest, if neg { c.neg() } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `ℒ_X = i_X d + d i_X`.
    pub fn lie(&self, x: &PolyField<F>) -> Result<Self> {
        self.d()?.interior(x)?.add(&self.interior(x)?.d()?)
    }

    pub fn eval(&self, point: &[F]) -> Result<MultiElement<F>> {
        let terms = self.terms.iter().map(|(b, p)| Ok((*b, p.eval(point)?))).collect::<Result<Vec<_>>>()?;
        MultiElement::from_terms(self.n, Side::Covector, terms)
    }

    /// Pullback by the affine map `y ↦ A y + b` from an `m`-chart into this one.
    pub fn pullback_affine(&self, map: &AffineMap<F>) -> Result<Self> {
        let (a, b) = (&map.a, &map.b);
        if a.nrows() != self.n {
            return Err(Error::Shape("affine map does not land in this chart".into()));
        }
        let m = a.ncols();
        let mut out = PolyForm::zero(m)?;
        for (bl, p) in &self.terms {
            let coeff = p.compose_affine(a, b)?;
            let mut e = MultiElement::scalar(m, Side::Covector, F::one())?;
            for i in blade_indices(*bl) {
                e = e.wedge(&MultiElement::vector(Side::Covector, a.row(i))?)?;
            }
            for (eb, c) in e.terms() {
                out.insert(*eb, coeff.scale(c));
            }
        }
        Ok(out)
    }

    /// Moves chart variable `i` to `map[i]`; terms along a dropped variable
    /// are an error, as are coefficients depending on it.
    pub fn reindex(&self, n: usize, map: &[Option<usize>]) -> Result<Self> {
        let mut out = Self::zero(n)?;
        for (b, p) in &self.terms {
            let mut e = MultiElement::scalar(n, Side::Covector, F::one())?;
            for i in blade_indices(*b) {
                let j = map[i].ok_or_else(|| Error::SpaceMismatch(format!("term along dropped dx{}", i + 1)))?;
                e = e.wedge(&MultiElement::basis(n, Side::Covector, &[j])?)?;
            }
            let q = p.reindex(n, map)?;
            for (eb, c) in e.terms() {
                out.insert(*eb, q.scale(c));
            }
        }
        Ok(out)
    }

    pub fn map_scalars<G: Scalar>(&self, f: impl Fn(&F) -> G + Copy) -> PolyForm<G> {
        let terms = self.terms.iter().map(|(b, p)| (*b, p.map_scalars(f))).filter(|(_, p)| !p.is_zero()).collect();
        PolyForm { n: self.n, terms }
    }

    /// Polynomial strings keyed by one-based index sets, e.g. `"[1,2]"`.
    pub fn to_strings(&self) -> BTreeMap<String, String> {
        self.terms
            .iter()
            .map(|(b, p)| {
                let idx: Vec<String> = blade_indices(*b).iter().map(|i| (i + 1).to_string()).collect();
                (format!("[{}]", idx.join(",")), p.render())
            })
            .collect()
    }

    pub fn from_strings(n: usize, terms: &BTreeMap<String, String>) -> Result<Self> {
        let mut out = Self::zero(n)?;
        for (k, v) in terms {
            let idx = crate::serial::index_set(k, n)?;
            let e = MultiElement::<F>::basis(n, Side::Covector, &idx)?;
            let p = Poly::parse(n, v)?;
            for (b, c) in e.terms() {
                out.insert(*b, p.scale(c));
            }
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(b, p)| {
                let dx: Vec<String> = blade_indices(*b).iter().map(|i| format!("dx{}", i + 1)).collect();
                let form = if dx.is_empty() { String::new() } else { format!(" {}", dx.join("^")) };
                format!("({}){form}", p.render())
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn require_closed_three_form<F: Scalar>(h: &PolyForm<F>) -> Result<()> {
    if !h.is_of_degree(3) {
        return Err(Error::Grade { expected: "3".into(), got: format!("{:?}", h.degrees()) });
    }
    if !h.is_closed()? {
        return Err(Error::NotClosed("H".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyField<F> {
    comps: Vec<Poly<F>>,
}

impl<F: Scalar> PolyField<F> {
    pub fn new(comps: Vec<Poly<F>>) -> Result<Self> {
        let n = comps.len();
        if n > MAX_DIM {
            return Err(Error::DimensionCap { dim: n, cap: MAX_DIM });
        }
        if comps.iter().any(|p| p.nvars() != n) {
            return Err(Error::Shape("field components must live on the chart".into()));
        }
        Ok(PolyField { comps })
    }

    pub fn zero(n: usize) -> Self {
        PolyField { comps: vec![Poly::zero(n); n] }
    }

    /// `∂/∂x_{i+1}`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut f = Self::zero(n);
        f.comps[i] = Poly::one(n);
        f
    }

    /// The linear field `x ↦ A x`.
    pub fn linear(a: &Matrix<F>) -> Result<Self> {
        let n = a.nrows();
        Self::new((0..n).map(|i| Poly::affine(a.row(i), F::zero())).collect())
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Poly<F>] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    /// Every component has degree at most one with no constant term.
    pub fn is_linear(&self) -> bool {
        self.comps.iter().all(|p| p.degree() <= 1 && p.terms().keys().all(|m| m.iter().sum::<u32>() == 1))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Self::new(self.comps.iter().zip(&o.comps).map(|(a, b)| a.add(b)).collect())
    }

    pub fn scale(&self, c: &F) -> Self {
        PolyField { comps: self.comps.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    /// `X(f) = Σ X_j ∂_j f`.
    pub fn apply(&self, f: &Poly<F>) -> Result<Poly<F>> {
        let mut acc = Poly::zero(f.nvars());
        for (j, xj) in self.comps.iter().enumerate() {
            if !xj.is_zero() {
                acc = acc.add(&xj.mul(&f.deriv(j))?);
            }
        }
        Ok(acc)
    }

    /// `[X, Y]_i = X(Y_i) − Y(X_i)`.
    pub fn bracket(&self, o: &Self) -> Result<Self> {
        if self.dim() != o.dim() {
            return Err(Error::SpaceMismatch("fields on different charts".into()));
        }
        let comps = (0..self.dim())
            .map(|i| Ok(self.apply(&o.comps[i])?.sub(&o.apply(&self.comps[i])?)))
            .collect::<Result<_>>()?;
        Self::new(comps)
    }

    pub fn eval(&self, point: &[F]) -> Result<Vec<F>> {
        self.comps.iter().map(|p| p.eval(point)).collect()
    }
}

/// A section `X + ξ` of `TM ⊕ T*M` over the chart.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySection<F> {
    pub x: PolyField<F>,
    pub xi: PolyForm<F>,
}

impl<F: Scalar> PolySection<F> {
    pub fn new(x: PolyField<F>, xi: PolyForm<F>) -> Result<Self> {
        if x.dim() != xi.dim() {
            return Err(Error::SpaceMismatch("field and form on different charts".into()));
        }
        if !xi.is_of_degree(1) {
            return Err(Error::Grade { expected: "1".into(), got: format!("{:?}", xi.degrees()) });
        }
        Ok(PolySection { x, xi })
    }

    pub fn dim(&self) -> usize {
        self.x.dim()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Self::new(self.x.add(&o.x)?, self.xi.add(&o.xi)?)
    }

    /// `⟨X+ξ, Y+η⟩ = η(X) + ξ(Y)`.
    pub fn pairing(&self, o: &Self) -> Result<Poly<F>> {
        let a = o.xi.interior(&self.x)?.coeff(0);
        let b = self.xi.interior(&o.x)?.coeff(0);
        Ok(a.add(&b))
    }

    /// `X + ξ ↦ X + ξ + i_X B`.
    pub fn tau_b(&self, b: &PolyForm<F>) -> Result<Self> {
        Self::new(self.x.clone(), self.xi.add(&b.interior(&self.x)?)?)
    }
}

/// `⟦X+ξ, Y+η⟧_H = [X,Y] + ℒ_X η − i_Y(dξ − i_X H)`.
pub fn courant_bracket<F: Scalar>(s1: &PolySection<F>, s2: &PolySection<F>, h: &PolyForm<F>) -> Result<PolySection<F>> {
    require_closed_three_form(h)?;
    if s1.dim() != s2.dim() || h.dim() != s1.dim() {
        return Err(Error::SpaceMismatch("sections and H on different charts".into()));
    }
    let x = s1.x.bracket(&s2.x)?;
    let inner = s1.xi.d()?.sub(&h.interior(&s1.x)?)?;
    let xi = s2.xi.lie(&s1.x)?.sub(&inner.interior(&s2.x)?)?;
    PolySection::new(x, xi)
}

/// `(X, B)·(Y+η) = [X,Y] + ℒ_X η − i_Y B`.
pub fn derivation_action<F: Scalar>(x: &PolyField<F>, b: &PolyForm<F>, s: &PolySection<F>) -> Result<PolySection<F>> {
    if !b.is_of_degree(2) {
        return Err(Error::Grade { expected: "2".into(), got: format!("{:?}", b.degrees()) });
    }
    let field = x.bracket(&s.x)?;
    let form = s.xi.lie(x)?.sub(&b.interior(&s.x)?)?;
    PolySection::new(field, form)
}

/// An invertible affine map `x ↦ A x + b` of the chart.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap<F> {
    pub a: Matrix<F>,
    pub b: Vec<F>,
}

impl<F: Scalar> AffineMap<F> {
    pub fn new(a: Matrix<F>, b: Vec<F>) -> Result<Self> {
        if a.nrows() != a.ncols() || b.len() != a.nrows() {
            return Err(Error::Shape("affine map must be square".into()));
        }
        if a.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(AffineMap { a, b })
    }

    pub fn identity(n: usize) -> Self {
        AffineMap { a: Matrix::identity(n), b: vec![F::zero(); n] }
    }

    pub fn inverse(&self) -> Result<Self> {
        let ai = self.a.inverse()?;
        let b = ai.apply(&self.b)?.iter().map(|v| -v.clone()).collect();
        Ok(AffineMap { a: ai, b })
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let a = self.a.mul(&other.a)?;
        let b = self.a.apply(&other.b)?.iter().zip(&self.b).map(|(x, y)| x.add_ref(y)).collect();
        Ok(AffineMap { a, b })
    }
}

/// `Σ_{(ψ,B)} = (ψ⁻¹)* ∘ e^{−B}`.
pub fn sigma_action<F: Scalar>(psi: &AffineMap<F>, b: &PolyForm<F>, alpha: &PolyForm<F>) -> Result<PolyForm<F>> {
    let moved = PolyForm::exp_two_form(&b.neg())?.wedge(alpha)?;
    moved.pullback_affine(&psi.inverse()?)
}

/// The product with `Σ_{(ψ₁,B₁)} ∘ Σ_{(ψ₂,B₂)} = Σ_{(ψ₁ψ₂, B₂ + ψ₂*B₁)}`.
pub fn sigma_compose<F: Scalar>(
    (psi1, b1): (&AffineMap<F>, &PolyForm<F>),
    (psi2, b2): (&AffineMap<F>, &PolyForm<F>),
) -> Result<(AffineMap<F>, PolyForm<F>)> {
    Ok((psi1.compose(psi2)?, b2.add(&b1.pullback_affine(psi2)?)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    type PF = PolyForm<Rational>;

    fn p(n: usize, s: &str) -> Poly<Rational> {
        Poly::parse(n, s).unwrap()
    }

    fn form(n: usize, terms: &[(&str, &str)]) -> PF {
        let m = terms.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        PF::from_strings(n, &m).unwrap()
    }

    #[test]
    fn exterior_derivative() {
        let a = form(2, &[("[2]", "x1")]);
        assert_eq!(a.d().unwrap(), form(2, &[("[1,2]", "1")]));
        let b = form(3, &[("[1]", "x2*x3^2"), ("[2,3]", "x1^3 - x2")]);
        assert!(b.d().unwrap().d().unwrap().is_zero());
    }

    #[test]
    fn twisted_differential() {
        let h = form(3, &[("[1,2,3]", "1")]);
        assert_eq!(PF::one(3).unwrap().d_h(&h).unwrap(), h.neg());
        let a = form(3, &[("[]", "x1*x2"), ("[3]", "x1")]);
        assert!(a.d_h(&h).unwrap().d_h(&h).unwrap().is_zero());
        let open = form(3, &[("[1,2,3]", "1")]).add(&form(3, &[("[1,2]", "x3")])).unwrap();
        assert!(matches!(a.d_h(&open), Err(Error::Grade { .. })));
        let not_closed = form(4, &[("[1,2,3]", "x4")]);
        assert!(matches!(PF::one(4).unwrap().d_h(&not_closed), Err(Error::NotClosed(_))));
    }

    #[test]
    fn courant_examples() {
        let n = 3;
        let zero = PF::zero(n).unwrap();
        let d1 = PolySection::new(PolyField::coordinate(n, 0), zero.clone()).unwrap();
        let mut x1d2 = PolyField::zero(n);
        x1d2.comps[1] = p(n, "x1");
        let s = PolySection::new(x1d2, zero.clone()).unwrap();
        let br = courant_bracket(&d1, &s, &zero).unwrap();
        assert_eq!(br, PolySection::new(PolyField::coordinate(n, 1), zero.clone()).unwrap());

        let h = form(n, &[("[1,2,3]", "1")]);
        let d2 = PolySection::new(PolyField::coordinate(n, 1), zero.clone()).unwrap();
        let br = courant_bracket(&d1, &d2, &h).unwrap();
        assert_eq!(br, PolySection::new(PolyField::zero(n), form(n, &[("[3]", "1")])).unwrap());
    }

    #[test]
    fn courant_self_bracket() {
        // ⟦s, s⟧ = d⟨s,s⟩/2 = d(x2) for s = ∂1 + x2 dx1.
        let n = 2;
        let s = PolySection::new(PolyField::coordinate(n, 0), form(n, &[("[1]", "x2")])).unwrap();
        let br = courant_bracket(&s, &s, &PF::zero(n).unwrap()).unwrap();
        assert!(br.x.is_zero());
        assert_eq!(br.xi, form(n, &[("[2]", "1")]));
        let half = PF::function(s.pairing(&s).unwrap()).unwrap().d().unwrap().scale(&rat(1, 2));
        assert_eq!(br.xi, half);
    }

    #[test]
    fn sigma_rotation() {
        // ψ(x) = R x with R a rational rotation; (ψ⁻¹)*dx1 = (R⁻¹)_{1j} dx^j.
        let r = Matrix::from_rows(2, vec![vec![rat(3, 5), rat(-4, 5)], vec![rat(4, 5), rat(3, 5)]]).unwrap();
        let psi = AffineMap::new(r.clone(), vec![rat(0, 1); 2]).unwrap();
        let out = sigma_action(&psi, &PF::zero(2).unwrap(), &form(2, &[("[1]", "1")])).unwrap();
        assert_eq!(out, form(2, &[("[1]", "3/5"), ("[2]", "4/5")]));
        let id = AffineMap::identity(2);
        let a = form(2, &[("[2]", "x1^2")]);
        assert_eq!(sigma_action(&id, &PF::zero(2).unwrap(), &a).unwrap(), a);
    }

    #[test]
    fn sigma_keeps_top_degree_line() {
        let psi = AffineMap::new(
            Matrix::from_rows(3, vec![vec![rat(1, 1), rat(2, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1), rat(1, 1)]]).unwrap(),
            vec![rat(1, 1), rat(0, 1), rat(-2, 1)],
        )
        .unwrap();
        let b = form(3, &[("[1,2]", "x3"), ("[2,3]", "x1^2")]);
        let vol = form(3, &[("[1,2,3]", "1")]);
        let out = sigma_action(&psi, &b, &vol).unwrap();
        assert_eq!(out.degrees(), vec![3]);
        assert!(out.coeff(0b111).as_constant().is_some_and(|c| !c.is_zero()));
    }
}
