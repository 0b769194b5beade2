//! Polynomials in chart variables `x1..xn` with exact coefficients.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Largest total degree a polynomial may reach.
pub const DEGREE_CAP: usize = 8;

type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq)]
pub struct Poly<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

fn mono_degree(m: &[u32]) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

impl<F: Scalar> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars);
        p.insert(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    /// The coordinate `x_{i+1}` (zero-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Self::zero(nvars);
        p.insert(m, F::one());
        p
    }

    pub fn monomial(exps: Vec<u32>, c: F) -> Result<Self> {
        let d = mono_degree(&exps);
        if d > DEGREE_CAP {
            return Err(Error::DegreeCap { degree: d, cap: DEGREE_CAP });
        }
        let mut p = Self::zero(exps.len());
        p.insert(exps, c);
        Ok(p)
    }

    /// `Σ_j c_j x_j + c_0`.
    pub fn affine(coeffs: &[F], c0: F) -> Self {
        let n = coeffs.len();
        let mut p = Self::constant(n, c0);
        for (j, c) in coeffs.iter().enumerate() {
            p = p.add(&Self::var(n, j).scale(c));
        }
        p
    }

    fn insert(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.add_ref(&c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, F> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| mono_degree(m)).max().unwrap_or(0)
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }

    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m[i] > 0)
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.nvars != o.nvars {
            return Err(Error::SpaceMismatch(format!("polynomials in {} and {} variables", self.nvars, o.nvars)));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "polynomial arity");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), v.mul_ref(c));
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let d = self.degree() + o.degree();
        if !self.is_zero() && !o.is_zero() && d > DEGREE_CAP {
            return Err(Error::DegreeCap { degree: d, cap: DEGREE_CAP });
        }
        let mut out = Self::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let m: Monomial = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.insert(m, x.mul_ref(y));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// `∂/∂x_{i+1}`.
    pub fn deriv(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut m2 = m.clone();
                m2[i] -= 1;
                out.insert(m2, c.mul_ref(&F::from_int(m[i] as i64)));
            }
        }
        out
    }

    pub fn eval(&self, point: &[F]) -> Result<F> {
        if point.len() != self.nvars {
            return Err(Error::Shape(format!("point of length {} for {} variables", point.len(), self.nvars)));
        }
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t = t.mul_ref(x);
                }
            }
            acc = acc.add_ref(&t);
        }
        Ok(acc)
    }

    /// Substitutes `x ↦ A y + b` (`A` is `nvars × m`), giving a polynomial in `y`.
    pub fn compose_affine(&self, a: &Matrix<F>, b: &[F]) -> Result<Self> {
        if a.nrows() != self.nvars || b.len() != self.nvars {
            return Err(Error::Shape("affine substitution does not match the variables".into()));
        }
        let m = a.ncols();
        let images: Vec<Poly<F>> = (0..self.nvars).map(|i| Poly::affine(a.row(i), b[i].clone())).collect();
        let mut out = Poly::zero(m);
        for (mono, c) in &self.terms {
            let mut t = Poly::constant(m, c.clone());
            for (i, &e) in mono.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e)?)?;
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Moves variable `i` to `map[i]` in a ring with `nvars` variables; a
    /// variable mapped to `None` must not occur.
    pub fn reindex(&self, nvars: usize, map: &[Option<usize>]) -> Result<Self> {
        let mut out = Self::zero(nvars);
        for (m, c) in &self.terms {
            let mut m2 = vec![0; nvars];
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => m2[j] += e,
                    None => return Err(Error::NotInvariant(format!("coefficient depends on x{}", i + 1))),
                }
            }
            out.insert(m2, c.clone());
        }
        Ok(out)
    }

    pub fn map_scalars<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.insert(m.clone(), f(c));
        }
        out
    }

    /// Canonical text form, e.g. `x3^2 - 1/2` or `(1+2i)*x1*x2`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| mono_degree(b).cmp(&mono_degree(a)).then_with(|| b.cmp(a)));
        let mut out = String::new();
        for (k, m) in keys.into_iter().enumerate() {
            let c = &self.terms[m];
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                .collect();
            let (neg, mag) = split_sign(c);
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let body = vars.join("*");
            let coeff = if mag.is_one() && !body.is_empty() {
                String::new()
            } else {
                let r = mag.render();
                if r.contains('i') && r.len() > 1 && (r.contains('+') || r[1..].contains('-')) {
                    format!("({r})")
                } else {
                    r
                }
            };
            match (coeff.is_empty(), body.is_empty()) {
                (true, _) => out.push_str(&body),
                (false, true) => out.push_str(&coeff),
                (false, false) => {
                    let _ = write!(out, "{coeff}*{body}");
                }
            }
        }
        out
    }

    pub fn parse(nvars: usize, s: &str) -> Result<Self> {
        Parser { src: s, chars: s.char_indices().peekable(), nvars }.poly()
    }
}

/// Splits off a leading minus sign when the coefficient renders with one
/// and has no other sign inside.
fn split_sign<F: Scalar>(c: &F) -> (bool, F) {
    let r = c.render();
    let inner_sign = r[1..].contains('+') || r[1..].contains('-');
    if r.starts_with('-') && !inner_sign {
        (true, -c.clone())
    } else {
        (false, c.clone())
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    nvars: usize,
}

impl<F: Scalar> Poly<F> {
    fn from_factor(nvars: usize, c: F) -> Self {
        Self::constant(nvars, c)
    }
}

impl Parser<'_> {
    fn err(&self, at: usize, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {at} in {:?}", self.src))
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn number(&mut self) -> String {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        s
    }

    fn poly<F: Scalar>(&mut self) -> Result<Poly<F>> {
        let mut acc = Poly::zero(self.nvars);
        let mut first = true;
        loop {
            let Some((at, c)) = self.peek() else {
                if first {
                    return Err(self.err(self.src.len(), "empty polynomial"));
                }
                return Ok(acc);
            };
            let neg = match c {
                '+' | '-' => {
                    self.chars.next();
                    c == '-'
                }
                _ if first => false,
                _ => return Err(self.err(at, "expected + or -")),
            };
            let t: Poly<F> = self.term()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
            first = false;
        }
    }

    fn term<F: Scalar>(&mut self) -> Result<Poly<F>> {
        let mut acc = Poly::one(self.nvars);
        let mut any = false;
        loop {
            match self.peek() {
                Some((_, '*')) if any => {
                    self.chars.next();
                }
                Some((_, c)) if c.is_ascii_digit() || c == 'x' || c == 'i' || c == '(' => {}
                Some((at, _)) if !any => return Err(self.err(at, "expected a factor")),
                None if !any => return Err(self.err(self.src.len(), "expected a factor")),
                _ => return Ok(acc),
            }
            let f: Poly<F> = self.factor()?;
            acc = acc.mul(&f)?;
            any = true;
        }
    }

    fn factor<F: Scalar>(&mut self) -> Result<Poly<F>> {
        let (at, c) = self.peek().ok_or_else(|| self.err(self.src.len(), "expected a factor"))?;
        let n = self.nvars;
        if c.is_ascii_digit() {
            let mut s = self.number();
            if let Some((_, '/')) = self.peek() {
                self.chars.next();
                self.skip_ws();
                let d = self.number();
                if d.is_empty() {
                    return Err(self.err(at, "missing denominator"));
                }
                s = format!("{s}/{d}");
            }
            return Ok(Poly::from_factor(n, F::parse(&s)?));
        }
        self.chars.next();
        match c {
            'i' => {
                let i = F::imag_unit().ok_or_else(|| self.err(at, "imaginary unit in a real field"))?;
                Ok(Poly::from_factor(n, i))
            }
            '(' => {
                let start = at + 1;
                let mut end = None;
                for (k, ch) in self.chars.by_ref() {
                    if ch == ')' {
                        end = Some(k);
                        break;
                    }
                }
                let end = end.ok_or_else(|| Error::Parse(format!("unclosed parenthesis in {:?}", self.src)))?;
                Ok(Poly::from_factor(n, F::parse(&self.src[start..end])?))
            }
            'x' => {
                let idx = self.number();
                let i: usize = idx.parse().map_err(|_| self.err(at, "expected a variable index"))?;
                if i == 0 || i > n {
                    return Err(self.err(at, &format!("variable x{i} outside x1..x{n}")));
                }
                let mut e = 1u32;
                if let Some((_, '^')) = self.peek() {
                    self.chars.next();
                    self.skip_ws();
                    e = self.number().parse().map_err(|_| self.err(at, "expected an exponent"))?;
                }
                let mut m = vec![0; n];
                m[i - 1] = e;
                Poly::monomial(m, F::one())
            }
            _ => Err(self.err(at, "unexpected character")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Gaussian, Rational};

    type P = Poly<Rational>;

    #[test]
    fn parse_and_render() {
        let p = P::parse(3, "x3^2 - 1/2").unwrap();
        assert_eq!(p.render(), "x3^2 - 1/2");
        let q = P::parse(3, "2*x1*x2 + x1 x2 - 3").unwrap();
        assert_eq!(q.render(), "3*x1*x2 - 3");
        for s in ["0", "-x1", "1/3*x2^3 - x1*x3 + 7", "-2*x1^2"] {
            let p = P::parse(3, s).unwrap();
            assert_eq!(P::parse(3, &p.render()).unwrap(), p, "{s}");
        }
        assert!(P::parse(2, "x3").is_err());
        assert!(P::parse(2, "x1 +").is_err());
        assert!(P::parse(2, "i*x1").is_err());
    }

    #[test]
    fn gaussian_parse() {
        let p = Poly::<Gaussian>::parse(2, "i*x1 + (1/2-3i)*x2 - i").unwrap();
        assert_eq!(Poly::<Gaussian>::parse(2, &p.render()).unwrap(), p);
    }

    #[test]
    fn arithmetic() {
        let x = P::var(2, 0);
        let y = P::var(2, 1);
        let p = x.add(&y).pow(2).unwrap();
        assert_eq!(p.deriv(0), x.scale(&rat(2, 1)).add(&y.scale(&rat(2, 1))));
        assert_eq!(p.eval(&[rat(1, 1), rat(2, 1)]).unwrap(), rat(9, 1));
        assert!(x.pow(9).is_err());
        assert!(x.pow(8).is_ok());
    }

    #[test]
    fn affine_substitution() {
        // p(x, y) = x*y at x = y1 + y2, y = y2 − 1.
        let p = P::parse(2, "x1*x2").unwrap();
        let a = Matrix::from_rows(2, vec![vec![rat(1, 1), rat(1, 1)], vec![rat(0, 1), rat(1, 1)]]).unwrap();
        let q = p.compose_affine(&a, &[rat(0, 1), rat(-1, 1)]).unwrap();
        assert_eq!(q, P::parse(2, "x1*x2 + x2^2 - x1 - x2").unwrap());
    }
}
