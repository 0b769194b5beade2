//! The T-duality map on invariant forms of two trivialized circle bundles
//! `P_i = base × S¹` with connection forms `θ_i = dt_i + a_i`.
//!
//! Charts: a `P_i` chart is `(x_1..x_b, t_i)` with the fiber coordinate at
//! index `b`; the correspondence chart is `(x_1..x_b, t_1, t_2)`.

use crate::error::{Error, Result};
use crate::exterior::{blade_indices, Blade};
use crate::scalar::Scalar;
use crate::spinor::is_pure;

use super::{Poly, PolyForm};

/// Which side the fiber differential is pulled to before it is dropped.
/// `Left` writes a form as `α + dt∧β` and keeps `β`; `Right` writes it as
/// `α + β∧dt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    #[default]
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TDualityData<F> {
    base: usize,
    a1: PolyForm<F>,
    a2: PolyForm<F>,
    h: PolyForm<F>,
}

impl<F: Scalar> TDualityData<F> {
    /// `a1`, `a2` are base 1-forms and `h` a closed base 3-form (or zero);
    /// `c_1 ∧ c_2` must vanish so that both `H_i` are closed.
    pub fn new(a1: PolyForm<F>, a2: PolyForm<F>, h: PolyForm<F>) -> Result<Self> {
        let base = a1.dim();
        if a2.dim() != base || h.dim() != base {
            return Err(Error::SpaceMismatch("a1, a2 and h must live on the same base chart".into()));
        }
        if base + 2 > crate::exterior::MAX_DIM {
            return Err(Error::DimensionCap { dim: base + 2, cap: crate::exterior::MAX_DIM });
        }
        for (name, a) in [("a1", &a1), ("a2", &a2)] {
            if !a.is_of_degree(1) {
                return Err(Error::Grade { expected: format!("1 for {name}"), got: format!("{:?}", a.degrees()) });
            }
        }
        if !h.is_of_degree(3) {
            return Err(Error::Grade { expected: "3 for h".into(), got: format!("{:?}", h.degrees()) });
        }
        if !h.is_closed()? {
            return Err(Error::NotClosed("h".into()));
        }
        let data = TDualityData { base, a1, a2, h };
        if !data.c1()?.wedge(&data.c2()?)?.is_zero() {
            return Err(Error::NotClosed("c1 ∧ c2 ≠ 0, so H1 and H2 are not closed".into()));
        }
        Ok(data)
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn a1(&self) -> &PolyForm<F> {
        &self.a1
    }

    pub fn a2(&self) -> &PolyForm<F> {
        &self.a2
    }

    pub fn h(&self) -> &PolyForm<F> {
        &self.h
    }

    pub fn c1(&self) -> Result<PolyForm<F>> {
        self.a1.d()
    }

    pub fn c2(&self) -> Result<PolyForm<F>> {
        self.a2.d()
    }

    /// Swaps the two bundles.
    pub fn dual(&self) -> Self {
        TDualityData { base: self.base, a1: self.a2.clone(), a2: self.a1.clone(), h: self.h.clone() }
    }

    /// A base form pulled back to a chart of dimension `n ≥ b`.
    pub fn lift(&self, alpha: &PolyForm<F>, n: usize) -> Result<PolyForm<F>> {
        if alpha.dim() != self.base {
            return Err(Error::SpaceMismatch("expected a base form".into()));
        }
        alpha.reindex(n, &(0..self.base).map(Some).collect::<Vec<_>>())
    }

    /// `θ_1` on the `P_1` chart.
    pub fn theta1(&self) -> Result<PolyForm<F>> {
        self.theta(&self.a1)
    }

    /// `θ_2` on the `P_2` chart.
    pub fn theta2(&self) -> Result<PolyForm<F>> {
        self.theta(&self.a2)
    }

    fn theta(&self, a: &PolyForm<F>) -> Result<PolyForm<F>> {
        let n = self.base + 1;
        PolyForm::basis(n, &[self.base])?.add(&self.lift(a, n)?)
    }

    /// `H_1 = c_2 ∧ θ_1 + h` on the `P_1` chart.
    pub fn h1(&self) -> Result<PolyForm<F>> {
        self.twist(&self.c2()?, &self.theta1()?)
    }

    /// `H_2 = c_1 ∧ θ_2 + h` on the `P_2` chart.
    pub fn h2(&self) -> Result<PolyForm<F>> {
        self.twist(&self.c1()?, &self.theta2()?)
    }

    fn twist(&self, c: &PolyForm<F>, theta: &PolyForm<F>) -> Result<PolyForm<F>> {
        let n = self.base + 1;
        self.lift(c, n)?.wedge(theta)?.add(&self.lift(&self.h, n)?)
    }

    /// `B = θ_1 ∧ θ_2` on the correspondence chart.
    pub fn correspondence_b(&self) -> Result<PolyForm<F>> {
        let n = self.base + 2;
        let t1 = PolyForm::basis(n, &[self.base])?.add(&self.lift(&self.a1, n)?)?;
        let t2 = PolyForm::basis(n, &[self.base + 1])?.add(&self.lift(&self.a2, n)?)?;
        t1.wedge(&t2)
    }
}

fn require_invariant<F: Scalar>(phi: &PolyForm<F>, vars: &[usize]) -> Result<()> {
    for (b, p) in phi.terms() {
        if let Some(v) = vars.iter().find(|v| p.depends_on(**v)) {
            return Err(Error::NotInvariant(format!("coefficient of {:?} depends on x{}", blade_indices(*b), v + 1)));
        }
    }
    Ok(())
}

/// Extracts the `dt` coefficient (chart index `k`) of `φ`.
fn extract<F: Scalar>(phi: &PolyForm<F>, k: usize, orient: Orientation) -> Result<PolyForm<F>> {
    let mut out = Vec::new();
    for (b, p) in phi.terms() {
        if b & (1 << k) == 0 {
            continue;
        }
        let moved = match orient {
            Orientation::Left => (b & ((1 << k) - 1)).count_ones(),
            Orientation::Right => (b >> (k + 1)).count_ones(),
        };
        let rest: Blade = b & !(1 << k);
        out.push((rest, if moved % 2 == 1 { p.neg() } else { p.clone() }));
    }
    PolyForm::from_terms(phi.dim(), out)
}

/// `τ` on a form given on the correspondence chart: extract the `dt_1`
/// coefficient of `e^{θ_1∧θ_2} ∧ φ` and read it on the `P_2` chart.
pub fn tduality_map<F: Scalar>(data: &TDualityData<F>, phi: &PolyForm<F>, orient: Orientation) -> Result<PolyForm<F>> {
    let b = data.base;
    if phi.dim() != b + 2 {
        return Err(Error::SpaceMismatch(format!("expected a form on the {}-dimensional correspondence chart", b + 2)));
    }
    require_invariant(phi, &[b, b + 1])?;
    let moved = PolyForm::exp_two_form(&data.correspondence_b()?)?.wedge(phi)?;
    let pushed = extract(&moved, b, orient)?;
    require_invariant(&pushed, &[b, b + 1])?;
    let mut map: Vec<Option<usize>> = (0..b).map(Some).collect();
    map.push(None);
    map.push(Some(b));
    pushed.reindex(b + 1, &map)
}

/// `τ` on an invariant form on the `P_1` chart.
pub fn tau<F: Scalar>(data: &TDualityData<F>, phi: &PolyForm<F>, orient: Orientation) -> Result<PolyForm<F>> {
    let b = data.base;
    if phi.dim() != b + 1 {
        return Err(Error::SpaceMismatch(format!("expected a form on the {}-dimensional P1 chart", b + 1)));
    }
    require_invariant(phi, &[b])?;
    let up = phi.reindex(b + 2, &(0..=b).map(Some).collect::<Vec<_>>())?;
    tduality_map(data, &up, orient)
}

/// `τ` for the dual pair, taking `P_2` forms back to `P_1`.
pub fn tau_dual<F: Scalar>(data: &TDualityData<F>, psi: &PolyForm<F>, orient: Orientation) -> Result<PolyForm<F>> {
    tau(&data.dual(), psi, orient)
}

/// The generator set `{1, x_1, …, x_b} × dx^I × {1, θ_1}` over all `I ⊂ base`.
pub fn generators<F: Scalar>(data: &TDualityData<F>) -> Result<Vec<(String, PolyForm<F>)>> {
    let b = data.base;
    let n = b + 1;
    let theta = data.theta1()?;
    let mut coeffs = vec![("1".to_string(), Poly::one(n))];
    coeffs.extend((0..b).map(|i| (format!("x{}", i + 1), Poly::var(n, i))));
    let mut out = Vec::new();
    for (cname, c) in &coeffs {
        for mask in 0u32..1 << b {
            let idx = blade_indices(mask);
            let dx = PolyForm::basis(n, &idx)?.mul_function(c)?;
            let dname: Vec<String> = idx.iter().map(|i| format!("dx{}", i + 1)).collect();
            let base_name = if dname.is_empty() { cname.clone() } else { format!("{cname} {}", dname.join("^")) };
            out.push((base_name.clone(), dx.clone()));
            out.push((format!("{base_name} ^ theta1"), dx.wedge(&theta)?));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntertwiningEntry {
    pub generator: String,
    /// `τ(d_{H_1} φ) = d_{H_2}(τ φ)`.
    pub holds: bool,
    /// `τ(d_{H_1} φ) = −d_{H_2}(τ φ)`.
    pub anti: bool,
}

pub fn intertwining_ledger<F: Scalar>(data: &TDualityData<F>, orient: Orientation) -> Result<Vec<IntertwiningEntry>> {
    let (h1, h2) = (data.h1()?, data.h2()?);
    generators(data)?
        .into_iter()
        .map(|(name, g)| {
            let lhs = tau(data, &g.d_h(&h1)?, orient)?;
            let rhs = tau(data, &g, orient)?.d_h(&h2)?;
            Ok(IntertwiningEntry { holds: lhs == rhs, anti: lhs == rhs.neg(), generator: name })
        })
        .collect()
}

/// `(φ(p) pure, τφ(p) pure)` at each sample point `p` of the `P_1` chart.
pub fn purity_report<F: Scalar>(
    data: &TDualityData<F>,
    phi: &PolyForm<F>,
    points: &[Vec<F>],
    orient: Orientation,
) -> Result<Vec<(bool, bool)>> {
    let image = tau(data, phi, orient)?;
    points
        .iter()
        .map(|p| {
            if p.len() != data.base + 1 {
                return Err(Error::Shape("sample points live on the P1 chart".into()));
            }
            let a = phi.eval(p)?;
            let b = image.eval(p)?;
            let pure = |e: &crate::exterior::MultiElement<F>| -> Result<bool> { Ok(!e.is_zero() && is_pure(e)?) };
            Ok((pure(&a)?, pure(&b)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn form(n: usize, terms: &[(&str, &str)]) -> PolyForm<Rational> {
        let m = terms.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        PolyForm::from_strings(n, &m).unwrap()
    }

    fn sample() -> TDualityData<Rational> {
        TDualityData::new(
            form(3, &[("[2]", "x1")]),
            form(3, &[("[3]", "x2^2")]),
            form(3, &[("[1,2,3]", "x1^2 - 1/2")]),
        )
        .unwrap()
    }

    #[test]
    fn generator_values() {
        let d = sample();
        let one = PolyForm::one(4).unwrap();
        assert_eq!(tau(&d, &one, Orientation::Left).unwrap(), d.theta2().unwrap());
        assert_eq!(tau(&d, &d.theta1().unwrap(), Orientation::Left).unwrap(), one);
        assert_eq!(tau(&d, &one, Orientation::Right).unwrap(), d.theta2().unwrap().neg());
        assert_eq!(tau(&d, &d.theta1().unwrap(), Orientation::Right).unwrap(), one);
    }

    #[test]
    fn sign_of_intertwining() {
        let d = sample();
        let left = intertwining_ledger(&d, Orientation::Left).unwrap();
        assert_eq!(left.len(), 64);
        assert!(left.iter().all(|e| e.anti));
        assert!(left.iter().any(|e| !e.holds));
        let right = intertwining_ledger(&d, Orientation::Right).unwrap();
        assert!(right.iter().all(|e| e.holds));
    }

    #[test]
    fn dual_map_inverts() {
        let d = sample();
        for (name, g) in generators(&d).unwrap() {
            let back = tau_dual(&d, &tau(&d, &g, Orientation::Left).unwrap(), Orientation::Left).unwrap();
            assert_eq!(back, g, "{name}");
        }
    }

    #[test]
    fn rejects_dependence_on_fiber() {
        let d = sample();
        let bad = form(4, &[("[1]", "x4")]);
        assert!(matches!(tau(&d, &bad, Orientation::Left), Err(Error::NotInvariant(_))));
        let open = TDualityData::new(form(4, &[("[2]", "x1")]), form(4, &[("[4]", "x3")]), PolyForm::zero(4).unwrap());
        assert!(matches!(open, Err(Error::NotClosed(_))));
    }

    #[test]
    fn purity_preserved() {
        let d = sample();
        let pts: Vec<Vec<Rational>> = (0..10).map(|k| vec![rat(k, 2), rat(1 - k, 3), rat(k * k, 5), rat(7, 1)]).collect();
        let omega = form(4, &[("[1,2]", "x3"), ("[2,3]", "1")]);
        let phi = PolyForm::exp_two_form(&omega).unwrap().wedge(&d.theta1().unwrap()).unwrap();
        for (a, b) in purity_report(&d, &phi, &pts, Orientation::Left).unwrap() {
            assert!(a && b);
        }
        let mixed = PolyForm::one(4).unwrap().add(&form(4, &[("[1,2,3,4]", "1")])).unwrap();
        let pr = purity_report(&d, &mixed, &pts, Orientation::Left).unwrap();
        assert!(pr.iter().all(|(a, _)| !a));
    }
}
