//! Exterior algebra of a based space `V` (multivectors) or its dual (forms).
//!
//! Basis blades are bitmasks over the standard basis: bit `i` set means the
//! factor `e_{i+1}` (or `e^{i+1}`) appears, and a blade is always read in
//! increasing index order. Index lists in the public API are 0-based; the
//! serialized form is 1-based.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Largest `n` allowed for `V`, so that the split fiber has dimension at most 16.
pub const MAX_DIM: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// Elements of `ΛV`.
    Vector,
    /// Elements of `ΛV*`.
    Covector,
}

impl Side {
    pub fn dual(self) -> Side {
        match self {
            Side::Vector => Side::Covector,
            Side::Covector => Side::Vector,
        }
    }
}

pub type Blade = u32;

pub fn blade(indices: &[usize]) -> Blade {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn blade_indices(b: Blade) -> Vec<usize> {
    (0..32).filter(|i| b & (1 << i) != 0).collect()
}

pub fn grade(b: Blade) -> usize {
    b.count_ones() as usize
}

/// Sign of `e_I ∧ e_J` relative to `e_{I∪J}`, or `None` when they overlap.
pub fn wedge_sign(i: Blade, j: Blade) -> Option<bool> {
    if i & j != 0 {
        return None;
    }
    let mut swaps = 0;
    let mut rest = j;
    while rest != 0 {
        let k = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (i >> (k + 1)).count_ones();
    }
    Some(swaps % 2 == 1)
}

/// `i_{e_k} e_I` as (negated?, blade), zero when `k ∉ I`.
pub fn contract_blade(k: usize, i: Blade) -> Option<(bool, Blade)> {
    if i & (1 << k) == 0 {
        return None;
    }
    let below = (i & ((1 << k) - 1)).count_ones();
    Some((below % 2 == 1, i & !(1 << k)))
}

/// `i_{e_J} e_I = i_{e_{j1}} ∘ ⋯ ∘ i_{e_{jk}} e_I` with `j1 < ⋯ < jk`.
fn interior_blade(j: Blade, i: Blade) -> Option<(bool, Blade)> {
    if j & !i != 0 {
        return None;
    }
    let mut neg = false;
    let mut cur = i;
    for k in blade_indices(j).into_iter().rev() {
        let (s, next) = contract_blade(k, cur)?;
        neg ^= s;
        cur = next;
    }
    Some((neg, cur))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiElement<F> {
    dim: usize,
    side: Side,
    terms: BTreeMap<Blade, F>,
}

impl<F: Scalar> MultiElement<F> {
    pub fn zero(dim: usize, side: Side) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::DimensionCap { dim: 2 * dim, cap: 2 * MAX_DIM });
        }
        Ok(MultiElement { dim, side, terms: BTreeMap::new() })
    }

    pub fn scalar(dim: usize, side: Side, c: F) -> Result<Self> {
        let mut m = Self::zero(dim, side)?;
        m.insert(0, c);
        Ok(m)
    }

    pub fn one(dim: usize, side: Side) -> Result<Self> {
        Self::scalar(dim, side, F::one())
    }

    /// The blade `e_{i1} ∧ ⋯ ∧ e_{ik}` (indices need not be sorted).
    pub fn basis(dim: usize, side: Side, indices: &[usize]) -> Result<Self> {
        let mut m = Self::zero(dim, side)?;
        let mut acc: Option<(bool, Blade)> = Some((false, 0));
        for &i in indices {
            if i >= dim {
                return Err(Error::Shape(format!("index {i} out of range for dimension {dim}")));
            }
            acc = acc.and_then(|(s, b)| wedge_sign(b, 1 << i).map(|t| (s ^ t, b | 1 << i)));
        }
        if let Some((neg, b)) = acc {
            m.insert(b, if neg { -F::one() } else { F::one() });
        }
        Ok(m)
    }

    /// Grade-1 element with the given coordinates.
    pub fn vector(side: Side, coords: &[F]) -> Result<Self> {
        let mut m = Self::zero(coords.len(), side)?;
        for (i, c) in coords.iter().enumerate() {
            m.insert(1 << i, c.clone());
        }
        Ok(m)
    }

    /// Unit top element `e_1 ∧ ⋯ ∧ e_n`.
    pub fn top(dim: usize, side: Side) -> Result<Self> {
        let mut m = Self::zero(dim, side)?;
        m.insert(((1u64 << dim) - 1) as Blade, F::one());
        Ok(m)
    }

    pub fn from_terms(dim: usize, side: Side, terms: impl IntoIterator<Item = (Blade, F)>) -> Result<Self> {
        let mut m = Self::zero(dim, side)?;
        for (b, c) in terms {
            if dim < 32 && b >> dim != 0 {
                return Err(Error::Shape(format!("blade {b:#b} out of range for dimension {dim}")));
            }
            m.insert(b, c);
        }
        Ok(m)
    }

    fn insert(&mut self, b: Blade, c: F) {
        let v = match self.terms.remove(&b) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(b, v);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn terms(&self) -> &BTreeMap<Blade, F> {
        &self.terms
    }

    pub fn coeff(&self, b: Blade) -> F {
        self.terms.get(&b).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The grade if the element is nonzero and homogeneous.
    pub fn homogeneous_grade(&self) -> Option<usize> {
        let mut grades = self.terms.keys().map(|&b| grade(b));
        let g = grades.next()?;
        grades.all(|h| h == g).then_some(g)
    }

    pub fn grade_part(&self, k: usize) -> Self {
        let terms = self.terms.iter().filter(|(b, _)| grade(**b) == k).map(|(b, c)| (*b, c.clone()));
        MultiElement { dim: self.dim, side: self.side, terms: terms.collect() }
    }

    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(|&b| grade(b)).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    /// Coordinates of a grade-≤1 element's grade-1 part.
    pub fn linear_coords(&self) -> Vec<F> {
        (0..self.dim).map(|i| self.coeff(1 << i)).collect()
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = MultiElement { dim: self.dim, side: self.side, terms: BTreeMap::new() };
        if c.is_zero() {
            return out;
        }
        for (b, v) in &self.terms {
            out.terms.insert(*b, v.mul_ref(c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn map_scalars<G: Scalar>(&self, f: impl Fn(&F) -> G) -> MultiElement<G> {
        let mut out = MultiElement { dim: self.dim, side: self.side, terms: BTreeMap::new() };
        for (b, v) in &self.terms {
            out.insert(*b, f(v));
        }
        out
    }

    pub fn conj(&self) -> Self {
        self.map_scalars(Scalar::conj)
    }

    fn same_space(&self, other: &Self, op: &str) -> Result<()> {
        if self.dim != other.dim || self.side != other.side {
            return Err(Error::SpaceMismatch(format!(
                "{op}: ({}, {:?}) vs ({}, {:?})",
                self.dim, self.side, other.dim, other.side
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_space(other, "add")?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.insert(*b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.same_space(other, "wedge")?;
        let mut out = MultiElement { dim: self.dim, side: self.side, terms: BTreeMap::new() };
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                if let Some(neg) = wedge_sign(*i, *j) {
                    let c = a.mul_ref(b);
                    out.insert(i | j, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Contraction by a grade-1 element of the dual side (graded derivation).
    pub fn contract(x: &Self, a: &Self) -> Result<Self> {
        match x.homogeneous_grade() {
            Some(1) | None => {}
            Some(g) => return Err(Error::Grade { expected: "1".into(), got: g.to_string() }),
        }
        if x.dim != a.dim || x.side != a.side.dual() {
            return Err(Error::SpaceMismatch("contract needs dual sides of equal dimension".into()));
        }
        let mut out = MultiElement { dim: a.dim, side: a.side, terms: BTreeMap::new() };
        for (kb, xk) in &x.terms {
            let k = kb.trailing_zeros() as usize;
            for (i, c) in &a.terms {
                if let Some((neg, rest)) = contract_blade(k, *i) {
                    let v = xk.mul_ref(c);
                    out.insert(rest, if neg { -v } else { v });
                }
            }
        }
        Ok(out)
    }

    /// Interior product `i_x a` for `x` on the dual side of `a`, with
    /// `i_{x1∧⋯∧xk} = i_{x1} ∘ ⋯ ∘ i_{xk}`.
    pub fn interior(x: &Self, a: &Self) -> Result<Self> {
        if x.dim != a.dim || x.side != a.side.dual() {
            return Err(Error::SpaceMismatch("interior needs dual sides of equal dimension".into()));
        }
        let mut out = MultiElement { dim: a.dim, side: a.side, terms: BTreeMap::new() };
        for (j, xj) in &x.terms {
            for (i, c) in &a.terms {
                if let Some((neg, rest)) = interior_blade(*j, *i) {
                    let v = xj.mul_ref(c);
                    out.insert(rest, if neg { -v } else { v });
                }
            }
        }
        Ok(out)
    }

    /// `e^B = Σ B^k / k!` for a homogeneous 2-element `B`.
    pub fn exp_two_form(b: &Self) -> Result<Self> {
        if !b.is_zero() && b.homogeneous_grade() != Some(2) {
            return Err(Error::Grade { expected: "2".into(), got: format!("{:?}", b.grades()) });
        }
        let mut out = Self::one(b.dim, b.side)?;
        let mut power = out.clone();
        let mut k = 1;
        loop {
            power = power.wedge(b)?.scale(&F::one().div_ref(&F::from_int(k)));
            if power.is_zero() {
                return Ok(out);
            }
            out = out.add(&power)?;
            k += 1;
        }
    }

    /// Natural extension of a linear map `f: V → W` (given by a `dim W × dim V`
    /// matrix) to an algebra homomorphism `ΛV → ΛW`.
    pub fn push_linear(f: &Matrix<F>, a: &Self) -> Result<Self> {
        if f.ncols() != a.dim {
            return Err(Error::Shape(format!("map has {} columns, element dimension {}", f.ncols(), a.dim)));
        }
        let w = f.nrows();
        let images: Vec<Self> =
            (0..a.dim).map(|j| Self::vector(a.side, &f.col(j))).collect::<Result<_>>()?;
        let mut out = Self::zero(w, a.side)?;
        for (b, c) in &a.terms {
            let mut acc = Self::scalar(w, a.side, c.clone())?;
            for i in blade_indices(*b) {
                acc = acc.wedge(&images[i])?;
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// The scalar `c` with `self = c · other`, if both are nonzero and proportional.
    pub fn ratio_to(&self, other: &Self) -> Option<F> {
        if self.dim != other.dim || self.side != other.side || self.is_zero() || other.is_zero() {
            return None;
        }
        let (b, v) = other.terms.iter().next()?;
        let c = self.coeff(*b).div_ref(v);
        (!c.is_zero() && other.scale(&c) == *self).then_some(c)
    }

    /// Antisymmetric matrix `M[i][j] = B(e_i, e_j)` of a 2-element.
    pub fn two_form_matrix(b: &Self) -> Result<Matrix<F>> {
        if !b.is_zero() && b.homogeneous_grade() != Some(2) {
            return Err(Error::Grade { expected: "2".into(), got: format!("{:?}", b.grades()) });
        }
        let mut m = Matrix::zeros(b.dim, b.dim);
        for (bl, c) in &b.terms {
            let idx = blade_indices(*bl);
            m[(idx[0], idx[1])] = c.clone();
            m[(idx[1], idx[0])] = -c.clone();
        }
        Ok(m)
    }

    /// The 2-element `Σ_{i<j} M[i][j] e^i∧e^j`; only the upper triangle is read.
    pub fn two_form_from_matrix(side: Side, m: &Matrix<F>) -> Result<Self> {
        let n = m.nrows();
        let mut out = Self::zero(n, side)?;
        for i in 0..n {
            for j in i + 1..n {
                out.insert(1 << i | 1 << j, m[(i, j)].clone());
            }
        }
        Ok(out)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let sym = match self.side {
            Side::Vector => "e",
            Side::Covector => "f",
        };
        let mut keys: Vec<&Blade> = self.terms.keys().collect();
        keys.sort_by_key(|b| (grade(**b), blade_indices(**b)));
        keys.iter()
            .map(|b| {
                let idx = blade_indices(**b);
                let name = if idx.is_empty() {
                    "1".to_string()
                } else {
                    idx.iter().map(|i| format!("{sym}{}", i + 1)).collect::<Vec<_>>().join("^")
                };
                format!("({})*{name}", self.terms[*b].render())
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    type M = MultiElement<Rational>;

    fn cov(dim: usize, idx: &[usize]) -> M {
        M::basis(dim, Side::Covector, idx).unwrap()
    }

    fn vecb(dim: usize, idx: &[usize]) -> M {
        M::basis(dim, Side::Vector, idx).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let e1 = cov(2, &[0]);
        let e2 = cov(2, &[1]);
        assert_eq!(e1.wedge(&e2).unwrap(), cov(2, &[0, 1]));
        assert!(e1.wedge(&e1).unwrap().is_zero());
        let a = e1.add(&e2).unwrap();
        let b = e1.sub(&e2).unwrap();
        assert_eq!(a.wedge(&b).unwrap(), cov(2, &[0, 1]).scale(&rat(-2, 1)));
        assert_eq!(cov(3, &[2, 0]), cov(3, &[0, 2]).neg());
    }

    #[test]
    fn contract_examples() {
        let top = cov(2, &[0, 1]);
        assert_eq!(M::contract(&vecb(2, &[0]), &top).unwrap(), cov(2, &[1]));
        assert_eq!(M::contract(&vecb(2, &[1]), &top).unwrap(), cov(2, &[0]).neg());
        assert!(M::contract(&vecb(2, &[0]), &M::one(2, Side::Covector).unwrap()).unwrap().is_zero());
        assert!(M::contract(&vecb(2, &[0, 1]), &top).is_err());
    }

    #[test]
    fn exp_examples() {
        let zero = M::zero(3, Side::Covector).unwrap();
        assert_eq!(M::exp_two_form(&zero).unwrap(), M::one(3, Side::Covector).unwrap());
        let b = cov(2, &[0, 1]);
        assert_eq!(M::exp_two_form(&b).unwrap(), M::one(2, Side::Covector).unwrap().add(&b).unwrap());
        let b4 = cov(4, &[0, 1]).add(&cov(4, &[2, 3])).unwrap();
        let want = M::one(4, Side::Covector).unwrap().add(&b4).unwrap().add(&cov(4, &[0, 1, 2, 3])).unwrap();
        assert_eq!(M::exp_two_form(&b4).unwrap(), want);
        assert!(M::exp_two_form(&cov(3, &[0])).is_err());
    }

    #[test]
    fn push_linear_examples() {
        let d = Matrix::from_rows(2, vec![vec![rat(2, 1), rat(0, 1)], vec![rat(0, 1), rat(3, 1)]]).unwrap();
        assert_eq!(M::push_linear(&d, &vecb(2, &[0, 1])).unwrap(), vecb(2, &[0, 1]).scale(&rat(6, 1)));
        let z = Matrix::zeros(3, 2);
        assert!(M::push_linear(&z, &vecb(2, &[1])).unwrap().is_zero());
        assert!(M::push_linear(&z, &vecb(3, &[1])).is_err());
    }

    #[test]
    fn interior_ordering_convention() {
        // i_{e1∧e2}(e^1∧e^2) = i_{e1} i_{e2} (e^1∧e^2) = i_{e1}(-e^1) = -1
        let v = M::interior(&vecb(2, &[0, 1]), &cov(2, &[0, 1])).unwrap();
        assert_eq!(v, M::scalar(2, Side::Covector, rat(-1, 1)).unwrap());
    }

    #[test]
    fn dimension_cap() {
        assert!(M::zero(8, Side::Vector).is_ok());
        assert_eq!(
            M::zero(9, Side::Vector).unwrap_err(),
            Error::DimensionCap { dim: 18, cap: 16 }
        );
    }

    #[test]
    fn ratio() {
        let a = cov(3, &[0]).add(&cov(3, &[1, 2])).unwrap();
        assert_eq!(a.scale(&rat(3, 2)).ratio_to(&a), Some(rat(3, 2)));
        assert_eq!(cov(3, &[0]).ratio_to(&a), None);
    }
}
