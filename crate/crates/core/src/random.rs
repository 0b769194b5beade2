//! Seeded generators for the randomized suites.
//!
//! Entries are small rationals so that exact arithmetic stays cheap. All
//! generators are deterministic functions of the RNG state.

use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dirac::{build_k, ReducedFiber, ReductionDatum, SplittingChoice};
use crate::error::Result;
use crate::exterior::{MultiElement, Side};
use crate::linalg::Matrix;
use crate::polyform::{Poly, PolyField, PolyForm, PolySection};
use crate::scalar::Scalar;
use crate::subspace::{pairing, split_vec, Ambient, Subspace};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An integer in `[-3, 3]`, halved one time in four.
pub fn small<F: Scalar>(rng: &mut Rng) -> F {
    let n = rng.gen_range(-3i64..=3);
    let q = if rng.gen_ratio(1, 4) { 2 } else { 1 };
    F::from_ratio(n, q)
}

pub fn small_nonzero<F: Scalar>(rng: &mut Rng) -> F {
    loop {
        let x = small::<F>(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Like [`small`], with a random imaginary part when the field has one.
pub fn small_complex<F: Scalar>(rng: &mut Rng) -> F {
    let re = small::<F>(rng);
    match F::imag_unit() {
        Some(i) => re + i * small::<F>(rng),
        None => re,
    }
}

pub fn vector<F: Scalar>(rng: &mut Rng, n: usize) -> Vec<F> {
    (0..n).map(|_| small(rng)).collect()
}

pub fn matrix<F: Scalar>(rng: &mut Rng, rows: usize, cols: usize) -> Matrix<F> {
    Matrix::from_fn(rows, cols, |_, _| small(rng))
}

pub fn invertible<F: Scalar>(rng: &mut Rng, n: usize) -> Result<Matrix<F>> {
    loop {
        let m = matrix::<F>(rng, n, n);
        if !m.det()?.is_zero() {
            return Ok(m);
        }
    }
}

/// A 2-form (or bivector) with roughly half of its coefficients nonzero.
pub fn two_form<F: Scalar>(rng: &mut Rng, n: usize, side: Side) -> Result<MultiElement<F>> {
    let m = Matrix::from_fn(n, n, |i, j| if i < j && rng.gen_bool(0.5) { small(rng) } else { F::zero() });
    MultiElement::two_form_from_matrix(side, &m)
}

/// A homogeneous element of the given grade.
pub fn homogeneous<F: Scalar>(rng: &mut Rng, n: usize, side: Side, grade: usize) -> Result<MultiElement<F>> {
    let terms: Vec<_> = (0u32..1 << n)
        .filter(|b| b.count_ones() as usize == grade)
        .filter_map(|b| rng.gen_bool(0.6).then(|| (b, small::<F>(rng))))
        .collect();
    MultiElement::from_terms(n, side, terms)
}

/// A mixed-degree element.
pub fn element<F: Scalar>(rng: &mut Rng, n: usize, side: Side) -> Result<MultiElement<F>> {
    let terms: Vec<_> = (0u32..1 << n).filter_map(|b| rng.gen_bool(0.4).then(|| (b, small::<F>(rng)))).collect();
    MultiElement::from_terms(n, side, terms)
}

/// A subspace of exactly the requested dimension.
pub fn subspace<F: Scalar>(rng: &mut Rng, ambient: Ambient, dim: usize) -> Result<Subspace<F>> {
    let n = ambient.total_dim();
    loop {
        let s = Subspace::span(ambient, (0..dim).map(|_| vector(rng, n)).collect())?;
        if s.dim() == dim {
            return Ok(s);
        }
    }
}

/// A random element of a subspace.
pub fn element_of<F: Scalar>(rng: &mut Rng, s: &Subspace<F>) -> Vec<F> {
    let mut v = vec![F::zero(); s.ambient().total_dim()];
    for row in s.rows() {
        let c: F = small(rng);
        for (x, y) in v.iter_mut().zip(&row) {
            *x = x.add_ref(&c.mul_ref(y));
        }
    }
    v
}

/// A random subspace of `s` with the given dimension.
pub fn subspace_of<F: Scalar>(rng: &mut Rng, s: &Subspace<F>, dim: usize) -> Result<Subspace<F>> {
    loop {
        let t = Subspace::span(s.ambient(), (0..dim).map(|_| element_of(rng, s)).collect())?;
        if t.dim() == dim {
            return Ok(t);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LagrangianKind {
    Graph,
    Distribution,
    BTransform,
    Completion,
    Orbit,
}

pub const LAGRANGIAN_KINDS: [LagrangianKind; 5] = [
    LagrangianKind::Graph,
    LagrangianKind::Distribution,
    LagrangianKind::BTransform,
    LagrangianKind::Completion,
    LagrangianKind::Orbit,
];

pub fn lagrangian<F: Scalar>(rng: &mut Rng, n: usize) -> Result<Subspace<F>> {
    let kind = *LAGRANGIAN_KINDS.choose(rng).expect("nonempty");
    lagrangian_of_kind(rng, n, kind)
}

pub fn lagrangian_of_kind<F: Scalar>(rng: &mut Rng, n: usize, kind: LagrangianKind) -> Result<Subspace<F>> {
    match kind {
        LagrangianKind::Graph => Subspace::graph(&two_form(rng, n, Side::Covector)?),
        LagrangianKind::Distribution => {
            let d = rng.gen_range(0..=n);
            Subspace::distribution(&subspace(rng, Ambient::Plain(n), d)?)
        }
        LagrangianKind::BTransform => {
            let d = rng.gen_range(0..=n);
            Subspace::distribution(&subspace(rng, Ambient::Plain(n), d)?)?.tau_b(&two_form(rng, n, Side::Covector)?)
        }
        LagrangianKind::Completion => {
            let k = rng.gen_range(0..=n);
            let seed = orbit_lagrangian(rng, n)?;
            let start = subspace_of(rng, &seed, k)?;
            isotropic_completion(rng, &start)
        }
        LagrangianKind::Orbit => orbit_lagrangian(rng, n),
    }
}

/// Image of `V` or `V*` under a random word in B-transforms, β-transforms,
/// `GL(n)` and coordinate swaps `e_i ↔ e^i`.
pub fn orbit_lagrangian<F: Scalar>(rng: &mut Rng, n: usize) -> Result<Subspace<F>> {
    let mut l = if rng.gen_bool(0.5) { Subspace::tangent(n)? } else { Subspace::cotangent(n)? };
    let amb = Ambient::split(n)?;
    for _ in 0..rng.gen_range(1..=4) {
        let g = match rng.gen_range(0..4) {
            0 => b_transform_matrix(&two_form(rng, n, Side::Covector)?)?,
            1 => beta_transform_matrix(&two_form(rng, n, Side::Vector)?)?,
            2 => gl_matrix(&invertible(rng, n)?)?,
            _ => {
                let i = rng.gen_range(0..n);
                Matrix::from_fn(2 * n, 2 * n, |a, b| {
                    let swap = |x: usize| if x == i { n + i } else if x == n + i { i } else { x };
                    if swap(a) == b { F::one() } else { F::zero() }
                })
            }
        };
        l = l.image(&g, amb)?;
    }
    Ok(l)
}

/// `(X, ξ) ↦ (X, ξ + i_X B)` as a `2n × 2n` matrix on column vectors.
pub fn b_transform_matrix<F: Scalar>(b: &MultiElement<F>) -> Result<Matrix<F>> {
    let n = b.dim();
    let bm = MultiElement::two_form_matrix(b)?;
    // (i_X B)_j = Σ_i X_i B(e_i, e_j).
    Ok(Matrix::from_fn(2 * n, 2 * n, |a, c| {
        if a == c {
            F::one()
        } else if a >= n && c < n {
            bm[(c, a - n)].clone()
        } else {
            F::zero()
        }
    }))
}

/// `(X, ξ) ↦ (X + i_ξ β, ξ)`.
pub fn beta_transform_matrix<F: Scalar>(beta: &MultiElement<F>) -> Result<Matrix<F>> {
    let n = beta.dim();
    let bm = MultiElement::two_form_matrix(beta)?;
    Ok(Matrix::from_fn(2 * n, 2 * n, |a, c| {
        if a == c {
            F::one()
        } else if a < n && c >= n {
            bm[(c - n, a)].clone()
        } else {
            F::zero()
        }
    }))
}

/// `(X, ξ) ↦ (A X, A^{-T} ξ)`.
pub fn gl_matrix<F: Scalar>(a: &Matrix<F>) -> Result<Matrix<F>> {
    let n = a.nrows();
    let ait = a.inverse()?.transpose();
    Ok(Matrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => a[(i, j)].clone(),
        (false, false) => ait[(i - n, j - n)].clone(),
        _ => F::zero(),
    }))
}

/// Extends an isotropic subspace to a Lagrangian one null vector at a time.
///
/// Each step takes a null vector `w ∈ S⊥ \ S` from `(L₀ ∩ S⊥) + S` for a
/// random Lagrangian `L₀`, then corrects a random `v ∈ S⊥` along `w` to
/// make it null.
pub fn isotropic_completion<F: Scalar>(rng: &mut Rng, start: &Subspace<F>) -> Result<Subspace<F>> {
    let n = start.ambient().half_dim()?;
    let mut s = start.clone();
    while s.dim() < n {
        let sp = s.perp()?;
        let reference = match rng.gen_range(0..3) {
            0 => Subspace::tangent(n)?,
            1 => Subspace::cotangent(n)?,
            _ => Subspace::graph(&two_form(rng, n, Side::Covector)?)?,
        };
        let lag = reference.intersect(&sp)?.sum(&s)?;
        let w = loop {
            let w = element_of(rng, &lag);
            if !s.contains(&w)? {
                break w;
            }
        };
        let v = loop {
            let v = element_of(rng, &sp);
            let vv = pairing(&v, &v);
            if vv.is_zero() {
                if !s.contains(&v)? {
                    break v;
                }
                continue;
            }
            let vw = pairing(&v, &w);
            if vw.is_zero() {
                continue;
            }
            let c = vv.div_ref(&(vw.add_ref(&vw)));
            let v: Vec<F> = v.iter().zip(&w).map(|(a, b)| a.sub_ref(&c.mul_ref(b))).collect();
            if !s.contains(&v)? {
                break v;
            }
        };
        let mut rows = s.rows();
        rows.push(v);
        s = Subspace::span(s.ambient(), rows)?;
    }
    Ok(s)
}

/// A Lagrangian containing the isotropic subspace `i`: `L' ∩ I⊥ + I`.
pub fn lagrangian_containing<F: Scalar>(rng: &mut Rng, i: &Subspace<F>) -> Result<Subspace<F>> {
    let n = i.ambient().half_dim()?;
    lagrangian::<F>(rng, n)?.intersect(&i.perp()?)?.sum(i)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DatumShape {
    pub max_codim: usize,
    pub max_rank: usize,
    pub with_b: bool,
}

impl Default for DatumShape {
    fn default() -> Self {
        DatumShape { max_codim: 2, max_rank: 2, with_b: true }
    }
}

/// An admissible datum on `ℝ^m`; the moment covectors are `i_u B` plus
/// conormal noise.
pub fn datum<F: Scalar>(rng: &mut Rng, m: usize, shape: DatumShape) -> Result<ReductionDatum<F>> {
    let c = rng.gen_range(0..=shape.max_codim.min(m.saturating_sub(1)));
    let k = m - c;
    let tangent = subspace(rng, Ambient::Plain(m), k)?;
    let r = rng.gen_range(0..=shape.max_rank.min(k));
    let gens = subspace_of(rng, &tangent, r)?;
    let generators: Vec<Vec<F>> = gens.rows().iter().map(|_| element_of(rng, &gens)).collect();
    let generators = if Subspace::span(Ambient::Plain(m), generators.clone())?.dim() == r { generators } else { gens.rows() };
    let b = if shape.with_b && rng.gen_bool(0.7) { Some(two_form(rng, m, Side::Covector)?) } else { None };
    let ann = tangent.annihilator()?;
    let mut moment = Vec::with_capacity(r);
    for u in &generators {
        let mut xi = match &b {
            Some(b) => MultiElement::contract(&MultiElement::vector(Side::Vector, u)?, b)?.linear_coords(),
            None => vec![F::zero(); m],
        };
        let noise = element_of(rng, &ann);
        for (x, y) in xi.iter_mut().zip(&noise) {
            *x = x.add_ref(y);
        }
        moment.push(xi);
    }
    let d = ReductionDatum::new(tangent, generators, moment, b)?;
    if r > 0 && rng.gen_bool(0.3) {
        let c = small_nonzero::<F>(rng);
        let delta = d.delta.scale(&c);
        return d.with_delta(delta);
    }
    Ok(d)
}

/// A Lagrangian in the input splitting that meets `K` nontrivially; `None`
/// when `K = 0`.
pub fn nontransversal<F: Scalar>(rng: &mut Rng, d: &ReductionDatum<F>) -> Result<Option<Subspace<F>>> {
    let k = build_k(d)?;
    if k.is_zero() {
        return Ok(None);
    }
    let dim = rng.gen_range(1..=k.dim());
    let i = subspace_of(rng, &k, dim)?;
    let l = lagrangian_containing(rng, &i)?;
    Ok(Some(match &d.b {
        Some(b) => l.tau_b(b)?,
        None => l,
    }))
}

/// A datum with `K ≠ 0` together with a Lagrangian meeting it.
pub fn nontransversal_pair<F: Scalar>(rng: &mut Rng, m: usize) -> Result<(Subspace<F>, ReductionDatum<F>)> {
    loop {
        let d = datum(rng, m, DatumShape::default())?;
        if let Some(l) = nontransversal(rng, &d)? {
            return Ok((l, d));
        }
    }
}

/// A random right-splitting choice: the canonical one shifted by vertical
/// vectors and conormal covectors.
pub fn splitting_choice<F: Scalar>(rng: &mut Rng, fiber: &ReducedFiber<F>, d: &ReductionDatum<F>) -> Result<SplittingChoice<F>> {
    let mut choice = fiber.default_choice();
    let (k, h) = (fiber.k, fiber.dim());
    let shift = matrix::<F>(rng, fiber.r, h);
    let vt = fiber.vertical.transpose().mul(&shift)?;
    choice.horizontal_lift = choice.horizontal_lift.add(&vt)?;
    let ann = d.tangent.annihilator()?;
    for col in 0..k {
        let a = element_of(rng, &ann);
        for (row, x) in a.iter().enumerate() {
            choice.section[(row, col)] = choice.section[(row, col)].add_ref(x);
        }
    }
    Ok(choice)
}

/// Two admissible changes of splitting `B₁ = B₂ + C` with `j*C = dq*B̃`.
/// Returns `(B₁, B₂, B̃)`.
pub fn basic_b_pair<F: Scalar>(
    rng: &mut Rng,
    d: &ReductionDatum<F>,
) -> Result<(MultiElement<F>, MultiElement<F>, MultiElement<F>)> {
    let fiber = ReducedFiber::new(d)?;
    let m = d.m;
    let b2 = d.b_or_zero()?;
    let bt = two_form::<F>(rng, fiber.dim(), Side::Covector)?;
    // dq*B̃ on T_xN, extended to ℝ^m through the coordinate selector.
    let on_tn = MultiElement::push_linear(&fiber.quotient.transpose(), &bt)?;
    let mut c = MultiElement::push_linear(&fiber.coord_matrix().transpose(), &on_tn)?;
    for a in d.tangent.annihilator()?.rows() {
        let gamma = MultiElement::vector(Side::Covector, &vector::<F>(rng, m))?;
        c = c.add(&MultiElement::vector(Side::Covector, &a)?.wedge(&gamma)?)?;
    }
    Ok((b2.add(&c)?, b2, bt))
}

/// A basis of the complement `F` of `(L∩K)⊥` built from random vectors.
pub fn complement<F: Scalar>(rng: &mut Rng, s: &Subspace<F>) -> Result<Subspace<F>> {
    let n = s.ambient().total_dim();
    let want = n - s.dim();
    loop {
        let f = Subspace::span(s.ambient(), (0..want).map(|_| vector(rng, n)).collect())?;
        if f.dim() == want && s.intersect(&f)?.is_zero() {
            return Ok(f);
        }
    }
}

/// A vector whose pairing with `v` is nonzero, for tests of the Clifford relation.
pub fn split_vector<F: Scalar>(rng: &mut Rng, n: usize) -> Vec<F> {
    split_vec(&vector(rng, n), &vector(rng, n))
}

/// Probability-weighted coin used by suites that mix cases.
pub fn coin(rng: &mut Rng, p: f64) -> bool {
    rng.gen_bool(p)
}

/// A polynomial with up to `terms` monomials of total degree at most `deg`.
pub fn poly<F: Scalar>(rng: &mut Rng, n: usize, deg: u32, terms: usize) -> Result<Poly<F>> {
    let mut p = Poly::zero(n);
    for _ in 0..rng.gen_range(0..=terms) {
        let mut exps = vec![0u32; n];
        for _ in 0..rng.gen_range(0..=deg) {
            exps[rng.gen_range(0..n)] += 1;
        }
        p = p.add(&Poly::monomial(exps, small(rng))?);
    }
    Ok(p)
}

/// A homogeneous polynomial form of form-degree `k`.
pub fn poly_form<F: Scalar>(rng: &mut Rng, n: usize, k: usize, deg: u32) -> Result<PolyForm<F>> {
    let blades: Vec<u32> = (0u32..1 << n).filter(|b| b.count_ones() as usize == k).collect();
    let mut terms = Vec::new();
    for b in blades {
        if rng.gen_bool(0.5) {
            terms.push((b, poly(rng, n, deg, 2)?));
        }
    }
    PolyForm::from_terms(n, terms)
}

pub fn poly_field<F: Scalar>(rng: &mut Rng, n: usize, deg: u32) -> Result<PolyField<F>> {
    PolyField::new((0..n).map(|_| poly(rng, n, deg, 2)).collect::<Result<_>>()?)
}

pub fn poly_section<F: Scalar>(rng: &mut Rng, n: usize, deg: u32) -> Result<PolySection<F>> {
    PolySection::new(poly_field(rng, n, deg)?, poly_form(rng, n, 1, deg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn generated_lagrangians_are_lagrangian() {
        let mut g = rng(7);
        for n in 1..=4 {
            for kind in LAGRANGIAN_KINDS {
                for _ in 0..10 {
                    let l = lagrangian_of_kind::<Rational>(&mut g, n, kind).unwrap();
                    assert!(l.is_lagrangian().unwrap(), "{kind:?} n={n}");
                }
            }
        }
    }

    #[test]
    fn group_matrices_preserve_pairing() {
        let mut g = rng(3);
        let n = 3;
        let mats = [
            b_transform_matrix::<Rational>(&two_form(&mut g, n, Side::Covector).unwrap()).unwrap(),
            beta_transform_matrix::<Rational>(&two_form(&mut g, n, Side::Vector).unwrap()).unwrap(),
            gl_matrix::<Rational>(&invertible(&mut g, n).unwrap()).unwrap(),
        ];
        for a in &mats {
            let (u, v) = (split_vector::<Rational>(&mut g, n), split_vector::<Rational>(&mut g, n));
            assert_eq!(pairing(&a.apply(&u).unwrap(), &a.apply(&v).unwrap()), pairing(&u, &v));
        }
    }

    #[test]
    fn nontransversal_pairs_meet_k() {
        let mut g = rng(11);
        for m in 2..=4 {
            let (l, d) = nontransversal_pair::<Rational>(&mut g, m).unwrap();
            assert!(l.is_lagrangian().unwrap());
            assert!(crate::dirac::intersection_rank(&l, &d).unwrap() > 0);
        }
    }

    #[test]
    fn same_seed_same_output() {
        let a = lagrangian::<Rational>(&mut rng(5), 4).unwrap();
        let b = lagrangian::<Rational>(&mut rng(5), 4).unwrap();
        assert_eq!(a, b);
    }
}
