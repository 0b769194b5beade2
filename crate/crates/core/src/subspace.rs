//! Linear subspaces in canonical reduced row-echelon form.
//!
//! Vectors of the split fiber `V ⊕ V*` are coordinate vectors of length `2n`:
//! the first `n` entries are the `V` part, the last `n` the `V*` part.

use crate::error::{Error, Result};
use crate::exterior::{MultiElement, MAX_DIM};
use crate::linalg::{dot, Matrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ambient {
    /// A based space `F^n`.
    Plain(usize),
    /// The split fiber `V ⊕ V*` with `dim V = n`.
    Split(usize),
}

impl Ambient {
    pub fn plain(n: usize) -> Result<Self> {
        if n > 2 * MAX_DIM {
            return Err(Error::DimensionCap { dim: n, cap: 2 * MAX_DIM });
        }
        Ok(Ambient::Plain(n))
    }

    pub fn split(n: usize) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::DimensionCap { dim: 2 * n, cap: 2 * MAX_DIM });
        }
        Ok(Ambient::Split(n))
    }

    pub fn total_dim(self) -> usize {
        match self {
            Ambient::Plain(n) => n,
            Ambient::Split(n) => 2 * n,
        }
    }

    /// `n = dim V` for a split ambient.
    pub fn half_dim(self) -> Result<usize> {
        match self {
            Ambient::Split(n) => Ok(n),
            Ambient::Plain(_) => Err(Error::SpaceMismatch("split fiber required".into())),
        }
    }
}

/// `⟨X+ξ, Y+η⟩ = η(X) + ξ(Y)`.
pub fn pairing<F: Scalar>(u: &[F], v: &[F]) -> F {
    let n = u.len() / 2;
    dot(&u[..n], &v[n..]).add_ref(&dot(&u[n..], &v[..n]))
}

/// Joins a `V` part and a `V*` part into a split-fiber vector.
pub fn split_vec<F: Scalar>(x: &[F], xi: &[F]) -> Vec<F> {
    x.iter().chain(xi).cloned().collect()
}

/// The projection `p` onto `V`.
pub fn anchor<F: Scalar>(v: &[F]) -> &[F] {
    &v[..v.len() / 2]
}

/// The projection `s` onto `V*`.
pub fn coanchor<F: Scalar>(v: &[F]) -> &[F] {
    &v[v.len() / 2..]
}

#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<F> {
    ambient: Ambient,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

/// A linear map `S → S/W` in canonical coordinates, with a chosen section.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMap<F> {
    /// `dim(S/W) × dim(ambient)`; meaningful on vectors of `S`.
    pub project: Matrix<F>,
    /// `dim(ambient) × dim(S/W)`, with `project · lift = id`.
    pub lift: Matrix<F>,
}

impl<F: Scalar> Subspace<F> {
    pub fn span(ambient: Ambient, rows: Vec<Vec<F>>) -> Result<Self> {
        let m = Matrix::from_rows(ambient.total_dim(), rows)?;
        Self::from_matrix(ambient, &m)
    }

    pub fn from_matrix(ambient: Ambient, m: &Matrix<F>) -> Result<Self> {
        if m.ncols() != ambient.total_dim() {
            return Err(Error::Shape(format!(
                "vectors of length {} in an ambient of dimension {}",
                m.ncols(),
                ambient.total_dim()
            )));
        }
        let e = m.rref()?;
        Ok(Subspace { ambient, basis: e.matrix, pivots: e.pivots })
    }

    pub fn zero(ambient: Ambient) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient.total_dim()), pivots: vec![] }
    }

    pub fn whole(ambient: Ambient) -> Self {
        let n = ambient.total_dim();
        Subspace { ambient, basis: Matrix::identity(n), pivots: (0..n).collect() }
    }

    /// `V ⊂ V ⊕ V*`.
    pub fn tangent(n: usize) -> Result<Self> {
        let amb = Ambient::split(n)?;
        Self::from_matrix(amb, &Matrix::from_fn(n, 2 * n, |i, j| if i == j { F::one() } else { F::zero() }))
    }

    /// `V* ⊂ V ⊕ V*`.
    pub fn cotangent(n: usize) -> Result<Self> {
        let amb = Ambient::split(n)?;
        Self::from_matrix(amb, &Matrix::from_fn(n, 2 * n, |i, j| if i + n == j { F::one() } else { F::zero() }))
    }

    /// `Δ ⊕ Ann(Δ)` for a subspace `Δ` of the plain space `V`.
    pub fn distribution(delta: &Subspace<F>) -> Result<Self> {
        let n = delta.ambient.total_dim();
        let amb = Ambient::split(n)?;
        let ann = delta.annihilator()?;
        let zero = vec![F::zero(); n];
        let mut rows: Vec<Vec<F>> = delta.rows().iter().map(|r| split_vec(r, &zero)).collect();
        rows.extend(ann.rows().iter().map(|r| split_vec(&zero, r)));
        Self::span(amb, rows)
    }

    /// Graph `{X + i_X ω}` of a 2-form.
    pub fn graph(omega: &MultiElement<F>) -> Result<Self> {
        let n = omega.dim();
        Self::tangent(n)?.tau_b(omega)
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> Vec<Vec<F>> {
        self.basis.row_vecs()
    }

    /// Coordinates of `v ∈ self` in the echelon basis.
    pub fn coords(&self, v: &[F]) -> Vec<F> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    fn check_same(&self, other: &Self, op: &str) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::SpaceMismatch(format!("{op}: {:?} vs {:?}", self.ambient, other.ambient)));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[F]) -> Result<bool> {
        if v.len() != self.ambient.total_dim() {
            return Err(Error::Shape("vector length does not match the ambient".into()));
        }
        // Reduce against the echelon rows; membership iff nothing is left.
        let mut r = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, b) in r.iter_mut().zip(self.basis.row(i)) {
                if !b.is_zero() {
                    *x = x.sub_ref(&c.mul_ref(b));
                }
            }
        }
        Ok(r.iter().all(Scalar::is_zero))
    }

    pub fn contains_subspace(&self, other: &Self) -> Result<bool> {
        self.check_same(other, "containment")?;
        for r in other.rows() {
            if !self.contains(&r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same(other, "sum")?;
        Self::from_matrix(self.ambient, &self.basis.vstack(&other.basis)?)
    }

    /// Rows spanning `{a : a·v = 0 ∀ v ∈ self}` in the plain dual sense.
    fn functionals(&self) -> Result<Matrix<F>> {
        self.basis.nullspace()
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same(other, "intersect")?;
        let eqs = self.functionals()?.vstack(&other.functionals()?)?;
        Self::from_matrix(self.ambient, &eqs.nullspace()?)
    }

    /// Annihilator of a subspace of a plain space, as a subspace of the dual (same coordinates).
    pub fn annihilator(&self) -> Result<Self> {
        let Ambient::Plain(n) = self.ambient else {
            return Err(Error::SpaceMismatch("annihilator of a split-fiber subspace; use perp".into()));
        };
        Self::from_matrix(Ambient::Plain(n), &self.functionals()?)
    }

    /// Orthogonal complement under the split pairing.
    pub fn perp(&self) -> Result<Self> {
        let n = self.ambient.half_dim()?;
        let swapped = Matrix::from_fn(self.dim(), 2 * n, |i, j| self.basis[(i, (j + n) % (2 * n))].clone());
        Self::from_matrix(self.ambient, &swapped.nullspace()?)
    }

    pub fn is_isotropic(&self) -> Result<bool> {
        self.ambient.half_dim()?;
        let rows = self.rows();
        for (i, a) in rows.iter().enumerate() {
            for b in &rows[i..] {
                if !pairing(a, b).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_lagrangian(&self) -> Result<bool> {
        let n = self.ambient.half_dim()?;
        Ok(self.dim() == n && self.is_isotropic()?)
    }

    pub fn require_lagrangian(&self, what: &str) -> Result<()> {
        if !self.is_lagrangian()? {
            return Err(Error::NotLagrangian(format!("{what} (dimension {})", self.dim())));
        }
        Ok(())
    }

    /// Image under `X+ξ ↦ X + ξ + i_X B`.
    pub fn tau_b(&self, b: &MultiElement<F>) -> Result<Self> {
        let n = self.ambient.half_dim()?;
        if b.dim() != n || b.side() != crate::exterior::Side::Covector {
            return Err(Error::SpaceMismatch("B must be a 2-form on V".into()));
        }
        let bm = MultiElement::two_form_matrix(b)?;
        Self::from_matrix(self.ambient, &self.basis.mul(&tau_matrix(&bm))?)
    }

    /// Image under a linear map given by a `target.total_dim() × ambient.total_dim()` matrix.
    pub fn image(&self, f: &Matrix<F>, target: Ambient) -> Result<Self> {
        if f.ncols() != self.ambient.total_dim() || f.nrows() != target.total_dim() {
            return Err(Error::Shape("linear map does not match the ambients".into()));
        }
        Self::from_matrix(target, &self.basis.mul(&f.transpose())?)
    }

    /// `{v ∈ source : f v ∈ self}`.
    pub fn preimage(&self, f: &Matrix<F>, source: Ambient) -> Result<Self> {
        if f.nrows() != self.ambient.total_dim() || f.ncols() != source.total_dim() {
            return Err(Error::Shape("linear map does not match the ambients".into()));
        }
        let eqs = self.functionals()?.mul(f)?;
        Self::from_matrix(source, &eqs.nullspace()?)
    }

    /// Quotient `self → self/w` using the lexicographically first complementary pivots.
    pub fn quotient_coords(&self, w: &Self) -> Result<QuotientMap<F>> {
        self.check_same(w, "quotient")?;
        if !self.contains_subspace(w)? {
            return Err(Error::NotContained("quotient by a subspace not contained in S".into()));
        }
        // Express W in the coordinates of S's echelon basis.
        let wc = Matrix::from_rows(self.dim(), w.rows().iter().map(|r| self.coords(r)).collect())?.rref()?;
        let free: Vec<usize> = (0..self.dim()).filter(|c| !wc.pivots.contains(c)).collect();
        let total = self.ambient.total_dim();
        // c ↦ c − Σ_p c_p · wrow_p, then keep the free entries.
        let mut project = Matrix::zeros(free.len(), total);
        for (qi, &f) in free.iter().enumerate() {
            project[(qi, self.pivots[f])] = F::one();
            for (r, &p) in wc.pivots.iter().enumerate() {
                let c = wc.matrix[(r, f)].clone();
                if !c.is_zero() {
                    let col = self.pivots[p];
                    project[(qi, col)] = project[(qi, col)].sub_ref(&c);
                }
            }
        }
        let lift = Matrix::from_cols(total, &free.iter().map(|&f| self.basis.row(f).to_vec()).collect::<Vec<_>>())?;
        Ok(QuotientMap { project, lift })
    }

    pub fn map_scalars<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Result<Subspace<G>> {
        Subspace::from_matrix(self.ambient, &Matrix::from_fn(self.dim(), self.ambient.total_dim(), |i, j| f(&self.basis[(i, j)])))
    }

    pub fn conj(&self) -> Result<Self> {
        self.map_scalars(Scalar::conj)
    }
}

/// Matrix `T` (acting on row vectors, `v ↦ v T`) of `X+ξ ↦ X + ξ + i_X B`.
pub fn tau_matrix<F: Scalar>(bm: &Matrix<F>) -> Matrix<F> {
    let n = bm.nrows();
    Matrix::from_fn(2 * n, 2 * n, |i, j| {
        if i == j {
            F::one()
        } else if i < n && j >= n {
            bm[(i, j - n)].clone()
        } else {
            F::zero()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Side;
    use crate::scalar::{rat, Rational};

    type S = Subspace<Rational>;

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn sum_and_intersection() {
        let a = Ambient::Plain(3);
        let s1 = S::span(a, vec![r(&[1, 0, 0])]).unwrap();
        let s2 = S::span(a, vec![r(&[1, 1, 0])]).unwrap();
        assert_eq!(s1.sum(&s2).unwrap(), S::span(a, vec![r(&[1, 0, 0]), r(&[0, 1, 0])]).unwrap());
        assert_eq!(s1.sum(&s1).unwrap(), s1);
        let p = S::span(a, vec![r(&[1, 0, 0]), r(&[0, 1, 0])]).unwrap();
        let q = S::span(a, vec![r(&[0, 1, 0]), r(&[0, 0, 1])]).unwrap();
        assert_eq!(p.intersect(&q).unwrap(), S::span(a, vec![r(&[0, 1, 0])]).unwrap());
        assert!(p.intersect(&S::zero(a)).unwrap().is_zero());
    }

    #[test]
    fn perp_examples() {
        let v = S::tangent(2).unwrap();
        assert_eq!(v.perp().unwrap(), v);
        let amb = Ambient::Split(2);
        assert_eq!(S::zero(amb).perp().unwrap(), S::whole(amb));
        let l = S::span(amb, vec![r(&[1, 0, 1, 0])]).unwrap();
        let p = l.perp().unwrap();
        assert_eq!(p.dim(), 3);
        for v in [r(&[0, 1, 0, 0]), r(&[0, 0, 0, 1]), r(&[1, 0, -1, 0])] {
            assert!(p.contains(&v).unwrap());
        }
    }

    #[test]
    fn lagrangian_examples() {
        assert!(S::cotangent(3).unwrap().is_lagrangian().unwrap());
        let delta = S::span(Ambient::Plain(2), vec![r(&[1, 0])]).unwrap();
        assert!(S::distribution(&delta).unwrap().is_lagrangian().unwrap());
        // Graph of the symmetric form diag(1, 0): X ↦ X^T g.
        let sym = S::span(Ambient::Split(2), vec![r(&[1, 0, 1, 0]), r(&[0, 1, 0, 0])]).unwrap();
        assert!(!sym.is_isotropic().unwrap());
    }

    #[test]
    fn tau_b_example() {
        let b = MultiElement::basis(2, Side::Covector, &[0, 1]).unwrap();
        let got = S::tangent(2).unwrap().tau_b(&b).unwrap();
        let want = S::span(Ambient::Split(2), vec![r(&[1, 0, 0, 1]), r(&[0, 1, -1, 0])]).unwrap();
        assert_eq!(got, want);
        assert_eq!(got.tau_b(&b.neg()).unwrap(), S::tangent(2).unwrap());
    }

    #[test]
    fn quotient_kernel_is_w() {
        let a = Ambient::Plain(3);
        let s = S::span(a, vec![r(&[1, 0, 0]), r(&[0, 1, 0])]).unwrap();
        let w = S::span(a, vec![r(&[1, 1, 0])]).unwrap();
        let q = s.quotient_coords(&w).unwrap();
        assert_eq!(q.project.nrows(), 1);
        assert!(q.project.apply(&r(&[1, 1, 0])).unwrap()[0] == rat(0, 1));
        assert_eq!(q.project.apply(&r(&[1, 0, 0])).unwrap(), q.project.apply(&r(&[0, -1, 0])).unwrap());
        assert_eq!(q.project.mul(&q.lift).unwrap(), Matrix::identity(1));
        assert!(s.quotient_coords(&S::span(a, vec![r(&[0, 0, 1])]).unwrap()).is_err());
    }

    #[test]
    fn split_cap() {
        assert!(Ambient::split(8).is_ok());
        assert!(Ambient::split(9).is_err());
    }
}
