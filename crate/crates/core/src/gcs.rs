//! Generalized almost complex structures on a split fiber.
//!
//! `J` is a real `2n × 2n` matrix acting on column vectors `(X; ξ)`. Its
//! `+i` eigenspace `{e − iJe}` is a Lagrangian over the gaussian rationals.

use serde::Serialize;

use crate::dirac::{build_k, ReductionDatum};
use crate::error::{Error, Result};
use crate::exterior::MultiElement;
use crate::linalg::Matrix;
use crate::scalar::{Gaussian, Rational, Scalar};
use crate::spinor::{self, SpinorLine};
use crate::subspace::{anchor, split_vec, Ambient, Subspace};

#[derive(Debug, Clone, PartialEq)]
pub struct GCStructure {
    j: Matrix<Rational>,
}

/// Gram matrix of `⟨X+ξ, Y+η⟩ = η(X) + ξ(Y)`.
pub fn pairing_matrix<F: Scalar>(n: usize) -> Matrix<F> {
    Matrix::from_fn(2 * n, 2 * n, |i, j| if i + n == j || j + n == i { F::one() } else { F::zero() })
}

pub fn complexify(m: &Matrix<Rational>) -> Matrix<Gaussian> {
    Matrix::from_fn(m.nrows(), m.ncols(), |i, j| Gaussian::from_rational(&m[(i, j)]))
}

pub fn complexify_subspace(s: &Subspace<Rational>) -> Result<Subspace<Gaussian>> {
    s.map_scalars(Gaussian::from_rational)
}

impl GCStructure {
    pub fn new(j: Matrix<Rational>) -> Result<Self> {
        let n2 = j.nrows();
        if n2 != j.ncols() || n2 % 2 == 1 {
            return Err(Error::Shape("J must be a 2n × 2n matrix".into()));
        }
        Ambient::split(n2 / 2)?;
        let minus_one = Matrix::identity(n2).scale(&Rational::from_int(-1));
        if j.mul(&j)? != minus_one {
            return Err(Error::InvalidStructure("J² ≠ −1".into()));
        }
        let g = pairing_matrix::<Rational>(n2 / 2);
        if j.transpose().mul(&g)?.mul(&j)? != g {
            return Err(Error::InvalidStructure("J does not preserve the pairing".into()));
        }
        Ok(GCStructure { j })
    }

    /// `[[0, ω♯⁻¹], [−ω♯, 0]]` with `ω♯X = i_X ω`.
    pub fn from_symplectic(omega: &MultiElement<Rational>) -> Result<Self> {
        let n = omega.dim();
        let sharp = MultiElement::two_form_matrix(omega)?.transpose();
        let inv = sharp.inverse().map_err(|_| Error::InvalidStructure("ω is degenerate".into()))?;
        Self::new(Matrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
            (true, false) => inv[(i, j - n)].clone(),
            (false, true) => -sharp[(i - n, j)].clone(),
            _ => Rational::from_int(0),
        }))
    }

    /// `[[−J₀, 0], [0, J₀*]]` for a complex structure `J₀` on `ℝ^n`.
    pub fn from_complex(j0: &Matrix<Rational>) -> Result<Self> {
        let n = j0.nrows();
        Self::new(Matrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
            (true, true) => -j0[(i, j)].clone(),
            (false, false) => j0[(j - n, i - n)].clone(),
            _ => Rational::from_int(0),
        }))
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.j
    }

    pub fn n(&self) -> usize {
        self.j.nrows() / 2
    }

    /// `J K` for a real subspace.
    pub fn apply_subspace(&self, k: &Subspace<Rational>) -> Result<Subspace<Rational>> {
        k.image(&self.j, k.ambient())
    }
}

/// The standard rotation `e₁ ↦ e₂ ↦ −e₁` on each pair of coordinates.
pub fn standard_complex(n: usize) -> Result<Matrix<Rational>> {
    if n % 2 == 1 {
        return Err(Error::Shape("a complex structure needs even dimension".into()));
    }
    Ok(Matrix::from_fn(n, n, |i, j| {
        if i % 2 == 1 && j == i - 1 {
            Rational::from_int(1)
        } else if i % 2 == 0 && j == i + 1 {
            Rational::from_int(-1)
        } else {
            Rational::from_int(0)
        }
    }))
}

/// `L = {e − iJe}`.
pub fn eigenbundle(j: &GCStructure) -> Result<Subspace<Gaussian>> {
    let n2 = j.j.nrows();
    let i = Gaussian::imag_unit().expect("gaussian field");
    let jc = complexify(&j.j);
    let rows = (0..n2)
        .map(|k| (0..n2).map(|r| {
            let id = if r == k { Gaussian::from_int(1) } else { Gaussian::from_int(0) };
            id - i.clone() * jc[(r, k)].clone()
        }).collect())
        .collect();
    let l = Subspace::span(Ambient::split(n2 / 2)?, rows)?;
    l.require_lagrangian("eigenbundle")?;
    Ok(l)
}

/// `L ∩ L̄ = 0` for a complex Lagrangian.
pub fn is_generalized_complex(l: &Subspace<Gaussian>) -> Result<bool> {
    l.require_lagrangian("is_generalized_complex")?;
    Ok(l.intersect(&l.conj()?)?.is_zero())
}

/// The real `J` whose `+i` eigenspace is `L`.
pub fn reconstruct(l: &Subspace<Gaussian>) -> Result<GCStructure> {
    if !is_generalized_complex(l)? {
        return Err(Error::InvalidStructure("L ∩ L̄ ≠ 0".into()));
    }
    let n2 = l.ambient().total_dim();
    let cols: Vec<Vec<Gaussian>> = l.rows().into_iter().chain(l.conj()?.rows()).collect();
    let p = Matrix::from_cols(n2, &cols)?;
    let i = Gaussian::imag_unit().expect("gaussian field");
    let n = n2 / 2;
    let diag = Matrix::from_fn(n2, n2, |a, b| match (a == b, a < n) {
        (true, true) => i.clone(),
        (true, false) => -i.clone(),
        _ => Gaussian::from_int(0),
    });
    let jc = p.mul(&diag)?.mul(&p.inverse()?)?;
    let mut j = Matrix::zeros(n2, n2);
    for a in 0..n2 {
        for b in 0..n2 {
            let z = &jc[(a, b)];
            if !z.is_real() {
                return Err(Error::Consistency("reconstructed J is not real".into()));
            }
            j[(a, b)] = z.re.clone();
        }
    }
    GCStructure::new(j)
}

pub fn spinor_of_gcs(j: &GCStructure) -> Result<SpinorLine<Gaussian>> {
    spinor::spinor_of(&eigenbundle(j)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Compatibility {
    /// `dim(JK ∩ K⊥)`.
    pub jk_cap_kperp: usize,
    /// `JK ∩ K⊥ ⊆ K`.
    pub compatible: bool,
    /// `JK ∩ K⊥ = 0`.
    pub strong: bool,
    /// `dim_ℂ(L ∩ K_ℂ)`.
    pub l_cap_k: usize,
    /// `L ∩ K_ℂ = {e − iJe : e ∈ K ∩ JK}`.
    pub l_cap_k_formula: bool,
    /// `dim_ℂ(L_red ∩ L̄_red)` in coordinates on `K⊥/K`.
    pub reduced_overlap: usize,
    /// `compatible ⟺ reduced_overlap = 0`.
    pub equivalence_holds: bool,
}

pub fn reduction_compatible(j: &GCStructure, k: &Subspace<Rational>) -> Result<Compatibility> {
    if k.ambient() != Ambient::split(j.n())? {
        return Err(Error::SpaceMismatch("K is not in the fiber of J".into()));
    }
    if !k.is_isotropic()? {
        return Err(Error::NotIsotropic("K".into()));
    }
    let jk = j.apply_subspace(k)?;
    let kp = k.perp()?;
    let x = jk.intersect(&kp)?;
    let compatible = k.contains_subspace(&x)?;

    let l = eigenbundle(j)?;
    let kc = complexify_subspace(k)?;
    let lk = l.intersect(&kc)?;
    let i = Gaussian::imag_unit().expect("gaussian field");
    let jc = complexify(&j.j);
    let formula_rows: Vec<Vec<Gaussian>> = complexify_subspace(&k.intersect(&jk)?)?
        .rows()
        .iter()
        .map(|e| {
            let je = jc.apply(e)?;
            Ok(e.iter().zip(&je).map(|(a, b)| a.clone() - i.clone() * b.clone()).collect())
        })
        .collect::<Result<_>>()?;
    let formula = Subspace::span(l.ambient(), formula_rows)?;

    // L_red = (L ∩ K_ℂ⊥ + K_ℂ)/K_ℂ, in the canonical coordinates of K⊥/K.
    let q = kp.quotient_coords(k)?;
    let proj = complexify(&q.project);
    let red_dim = proj.nrows();
    let lred = l.intersect(&complexify_subspace(&kp)?)?.sum(&kc)?.image(&proj, Ambient::Plain(red_dim))?;
    let overlap = lred.intersect(&lred.conj()?)?.dim();
    Ok(Compatibility {
        jk_cap_kperp: x.dim(),
        compatible,
        strong: x.is_zero(),
        l_cap_k: lk.dim(),
        l_cap_k_formula: formula == lk,
        reduced_overlap: overlap,
        equivalence_holds: compatible == (overlap == 0),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NittaIntersection {
    /// `L ∩ K_ℂ` by direct intersection.
    pub intersection: Subspace<Gaussian>,
    /// `{(u + iv, dμ^v − i dμ^u)}` over the generators.
    pub parametrized: Subspace<Gaussian>,
    pub matches: bool,
    /// The anchor maps `L ∩ K_ℂ` isomorphically onto `vertical ⊗ ℂ`.
    pub anchor_iso: bool,
    /// `JK = K`.
    pub jk_equals_k: bool,
}

/// `L ∩ K_ℂ` under `J(u_i, 0) = (0, dμ^{u_i})`.
pub fn nitta_intersection(j: &GCStructure, d: &ReductionDatum<Rational>, dmu: &[Vec<Rational>]) -> Result<NittaIntersection> {
    let m = d.m;
    if j.n() != m || dmu.len() != d.r() {
        return Err(Error::Shape("J, datum and dμ do not match".into()));
    }
    let zero = vec![Rational::from_int(0); m];
    for (idx, (u, dm)) in d.generators.iter().zip(dmu).enumerate() {
        if j.j.apply(&split_vec(u, &zero))? != split_vec(&zero, dm) {
            return Err(Error::InvalidDatum(format!("J u_{idx} ≠ dμ^(u_{idx})")));
        }
    }
    let k = build_k(d)?;
    let l = eigenbundle(j)?;
    let intersection = l.intersect(&complexify_subspace(&k)?)?;
    let i = Gaussian::imag_unit().expect("gaussian field");
    let mut rows = Vec::new();
    for (u, dm) in d.generators.iter().zip(dmu) {
        let uc: Vec<Gaussian> = u.iter().map(Gaussian::from_rational).collect();
        let dc: Vec<Gaussian> = dm.iter().map(Gaussian::from_rational).collect();
        // u-part: (u, −i dμ^u); v-part: (iv, dμ^v).
        rows.push(split_vec(&uc, &dc.iter().map(|x| -i.clone() * x.clone()).collect::<Vec<_>>()));
        rows.push(split_vec(&uc.iter().map(|x| i.clone() * x.clone()).collect::<Vec<_>>(), &dc));
    }
    let parametrized = Subspace::span(l.ambient(), rows)?;
    let anchors: Vec<Vec<Gaussian>> = intersection.rows().iter().map(|v| anchor(v).to_vec()).collect();
    let anchor_image = Subspace::span(Ambient::Plain(m), anchors)?;
    let vertical = complexify_subspace(&d.vertical()?)?;
    let anchor_iso = intersection.dim() == d.r() && anchor_image == vertical;
    Ok(NittaIntersection {
        matches: parametrized == intersection,
        intersection,
        parametrized,
        anchor_iso,
        jk_equals_k: j.apply_subspace(&k)? == k,
    })
}
