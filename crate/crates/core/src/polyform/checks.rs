use crate::error::{Error, Result};
use crate::exterior::MultiElement;
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::spinor::{clifford_act, is_pure};

use super::{courant_bracket, require_closed_three_form, Poly, PolyField, PolyForm, PolySection};

#[derive(Debug, Clone, PartialEq)]
pub struct GraphIntegrability<F> {
    /// `dω + H`.
    pub defect: PolyForm<F>,
    /// Verdict from `dω + H = 0`.
    pub formula: bool,
    /// Verdict from closure of the frame sections `∂_i + i_{∂_i}ω`.
    pub frame: bool,
}

impl<F> GraphIntegrability<F> {
    pub fn integrable(&self) -> bool {
        self.formula && self.frame
    }
}

/// Integrability of the graph of `ω` for the `H`-twisted bracket, by two routes.
/// The frame route also checks each bracket residue against `i_{∂_j} i_{∂_i}(dω + H)`.
pub fn graph_integrability<F: Scalar>(omega: &PolyForm<F>, h: &PolyForm<F>) -> Result<GraphIntegrability<F>> {
    if !omega.is_of_degree(2) {
        return Err(Error::Grade { expected: "2".into(), got: format!("{:?}", omega.degrees()) });
    }
    let n = omega.dim();
    let h = if h.is_zero() { PolyForm::zero(n)? } else { h.clone() };
    if !h.is_zero() {
        require_closed_three_form(&h)?;
    }
    let defect = omega.d()?.add(&h)?;
    let frame: Vec<PolySection<F>> = (0..n)
        .map(|i| {
            let x = PolyField::coordinate(n, i);
            PolySection::new(x.clone(), omega.interior(&x)?)
        })
        .collect::<Result<_>>()?;
    let mut closed = true;
    for i in 0..n {
        for j in i + 1..n {
            let br = courant_bracket(&frame[i], &frame[j], &h)?;
            let residue = br.xi.sub(&omega.interior(&br.x)?)?;
            let expected = defect.interior(&frame[i].x)?.interior(&frame[j].x)?;
            if residue != expected {
                return Err(Error::Consistency(format!("bracket residue of frame pair ({}, {}) disagrees", i + 1, j + 1)));
            }
            closed &= residue.is_zero();
        }
    }
    let formula = defect.is_zero();
    if formula != closed {
        return Err(Error::Consistency("graph integrability routes disagree".into()));
    }
    Ok(GraphIntegrability { defect, formula, frame: closed })
}

#[derive(Debug, Clone, PartialEq)]
pub enum PointCheck {
    Pass,
    Fail,
    /// `φ(p) = 0`.
    Vanishes,
    NotPure,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinorIntegrability<F> {
    pub points: Vec<(Vec<F>, PointCheck)>,
}

impl<F> SpinorIntegrability<F> {
    pub fn passed(&self) -> bool {
        !self.points.is_empty() && self.points.iter().all(|(_, c)| *c == PointCheck::Pass)
    }

    pub fn count(&self, c: &PointCheck) -> usize {
        self.points.iter().filter(|(_, k)| k == c).count()
    }
}

/// Sample-point test of `d_H φ(p) ∈ span{Π(e_a) φ(p)}`.
pub fn spinor_integrability<F: Scalar>(phi: &PolyForm<F>, h: &PolyForm<F>, points: &[Vec<F>]) -> Result<SpinorIntegrability<F>> {
    let n = phi.dim();
    let dphi = if h.is_zero() { phi.d()? } else { phi.d_h(h)? };
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        if p.len() != n {
            return Err(Error::Shape(format!("sample point has {} coordinates, chart has {n}", p.len())));
        }
        let at = phi.eval(p)?;
        let check = if at.is_zero() {
            PointCheck::Vanishes
        } else if !is_pure(&at)? {
            PointCheck::NotPure
        } else if in_clifford_span(&at, &dphi.eval(p)?)? {
            PointCheck::Pass
        } else {
            PointCheck::Fail
        };
        out.push((p.clone(), check));
    }
    Ok(SpinorIntegrability { points: out })
}

fn in_clifford_span<F: Scalar>(phi: &MultiElement<F>, target: &MultiElement<F>) -> Result<bool> {
    let n = phi.dim();
    let blades = 1usize << n;
    let cols = (0..2 * n)
        .map(|a| {
            let mut e = vec![F::zero(); 2 * n];
            e[a] = F::one();
            let v = clifford_act(&e, phi)?;
            Ok((0..blades).map(|b| v.coeff(b as u32)).collect())
        })
        .collect::<Result<Vec<Vec<F>>>>()?;
    let m = Matrix::from_cols(blades, &cols)?;
    let rhs: Vec<F> = (0..blades).map(|b| target.coeff(b as u32)).collect();
    Ok(m.solve(&rhs)?.is_some())
}

/// A chart submanifold `{f_k = 0}` with points on it.
#[derive(Debug, Clone, PartialEq)]
pub struct Submanifold<F> {
    pub constraints: Vec<Poly<F>>,
    pub points: Vec<Vec<F>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    /// `dξ(u_i) − i_{u_i} H = 0`, per generator.
    pub closed: Vec<bool>,
    /// `ξ([u_i, u_j]) = ℒ_{u_i} ξ(u_j)`, per ordered pair.
    pub equivariant: Vec<Vec<bool>>,
    /// `i_{u_i} ξ(u_j) + i_{u_j} ξ(u_i) = 0`, per pair.
    pub isotropic: Vec<Vec<bool>>,
    /// `[u_i, u_j] = Σ c_ij^k u_k` on the chart, per pair.
    pub fields_match_brackets: bool,
    /// `j*ξ(u_i) = 0` at each supplied submanifold point.
    pub admissible: Option<Vec<bool>>,
}

impl MomentReport {
    pub fn all_pass(&self) -> bool {
        self.closed.iter().all(|b| *b)
            && self.equivariant.iter().flatten().all(|b| *b)
            && self.isotropic.iter().flatten().all(|b| *b)
            && self.admissible.as_ref().is_none_or(|a| a.iter().all(|b| *b))
    }
}

/// The three component equations of the equivariant extension, for generators
/// acting by linear fields `u_M` with structure constants `c[i][j][k]`.
pub fn moment_conditions<F: Scalar>(
    h: &PolyForm<F>,
    xi: &[PolyForm<F>],
    fields: &[PolyField<F>],
    brackets: &[Vec<Vec<F>>],
    sub: Option<&Submanifold<F>>,
) -> Result<MomentReport> {
    let r = xi.len();
    if fields.len() != r || brackets.len() != r || brackets.iter().any(|row| row.len() != r || row.iter().any(|c| c.len() != r)) {
        return Err(Error::Shape("moment data must have one form, one field and an r×r×r bracket table".into()));
    }
    let n = h.dim();
    if xi.iter().any(|x| x.dim() != n || !x.is_of_degree(1)) || fields.iter().any(|u| u.dim() != n) {
        return Err(Error::Shape("moment forms must be 1-forms on the chart".into()));
    }
    if fields.iter().any(|u| !u.is_linear()) {
        return Err(Error::InvalidDatum("generator fields must be linear".into()));
    }
    let closed = (0..r)
        .map(|i| Ok(xi[i].d()?.sub(&h.interior(&fields[i])?)?.is_zero()))
        .collect::<Result<Vec<_>>>()?;
    let combo = |c: &[F]| -> Result<PolyForm<F>> {
        let mut acc = PolyForm::zero(n)?;
        for (k, ck) in c.iter().enumerate() {
            acc = acc.add(&xi[k].scale(ck))?;
        }
        Ok(acc)
    };
    let mut equivariant = vec![vec![false; r]; r];
    let mut isotropic = vec![vec![false; r]; r];
    let mut fields_match = true;
    for i in 0..r {
        for j in 0..r {
            equivariant[i][j] = combo(&brackets[i][j])? == xi[j].lie(&fields[i])?;
            let sym = xi[j].interior(&fields[i])?.add(&xi[i].interior(&fields[j])?)?;
            isotropic[i][j] = sym.is_zero();
            let mut expect = PolyField::zero(n);
            for (k, ck) in brackets[i][j].iter().enumerate() {
                expect = expect.add(&fields[k].scale(ck))?;
            }
            fields_match &= fields[i].bracket(&fields[j])? == expect;
        }
    }
    let admissible = sub.map(|s| admissible_at(xi, s)).transpose()?;
    Ok(MomentReport { closed, equivariant, isotropic, fields_match_brackets: fields_match, admissible })
}

fn admissible_at<F: Scalar>(xi: &[PolyForm<F>], sub: &Submanifold<F>) -> Result<Vec<bool>> {
    let n = xi.first().map_or(0, |x| x.dim());
    let dfs = sub.constraints.iter().map(|f| PolyForm::function(f.clone())?.d()).collect::<Result<Vec<_>>>()?;
    sub.points
        .iter()
        .map(|p| {
            for f in &sub.constraints {
                if !f.eval(p)?.is_zero() {
                    return Err(Error::InvalidDatum("sample point is off the submanifold".into()));
                }
            }
            let normals = dfs.iter().map(|d| Ok(d.eval(p)?.linear_coords())).collect::<Result<Vec<_>>>()?;
            let span = Matrix::from_cols(n, &normals)?;
            for x in xi {
                let v = x.eval(p)?;
                let ok = if normals.is_empty() { v.is_zero() } else { span.solve(&v.linear_coords())?.is_some() };
                if !ok {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss, rat, Gaussian, Rational};

    fn form<F: Scalar>(n: usize, terms: &[(&str, &str)]) -> PolyForm<F> {
        let m = terms.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        PolyForm::from_strings(n, &m).unwrap()
    }

    #[test]
    fn graph_examples() {
        let omega = form::<Rational>(3, &[("[1,2]", "x3")]);
        let h = form(3, &[("[1,2,3]", "-1")]);
        assert!(graph_integrability(&omega, &h).unwrap().integrable());
        let zero = PolyForm::zero(3).unwrap();
        let g = graph_integrability(&omega, &zero).unwrap();
        assert!(!g.formula && !g.frame);
        let closed = form::<Rational>(3, &[("[1,2]", "x1^2"), ("[2,3]", "1")]);
        assert!(graph_integrability(&closed, &zero).unwrap().integrable());
    }

    #[test]
    fn spinor_examples() {
        let pts: Vec<Vec<Gaussian>> =
            (0..10).map(|k| (0..4).map(|j| gauss(rat(k * j - 3, 2), rat(0, 1))).collect()).collect();
        let omega = form::<Gaussian>(4, &[("[1,2]", "1"), ("[3,4]", "1")]);
        let i = Gaussian::imag_unit().unwrap();
        let phi = PolyForm::exp_two_form(&omega.scale(&-i)).unwrap();
        let zero = PolyForm::zero(4).unwrap();
        assert!(spinor_integrability(&phi, &zero, &pts).unwrap().passed());

        let rpts: Vec<Vec<Rational>> = (0..10).map(|k| vec![rat(k, 1), rat(1 - k, 3), rat(2, 1)]).collect();
        let h = form::<Rational>(3, &[("[1,2,3]", "1")]);
        let one = PolyForm::one(3).unwrap();
        let rep = spinor_integrability(&one, &h, &rpts).unwrap();
        assert_eq!(rep.count(&PointCheck::Fail), 10);
        let dx1 = form::<Rational>(3, &[("[1]", "1")]);
        assert!(spinor_integrability(&dx1, &PolyForm::zero(3).unwrap(), &rpts).unwrap().passed());
        let vanishing = form::<Rational>(3, &[("[1]", "x2")]);
        let rep = spinor_integrability(&vanishing, &PolyForm::zero(3).unwrap(), &[vec![rat(1, 1), rat(0, 1), rat(0, 1)]]).unwrap();
        assert_eq!(rep.points[0].1, PointCheck::Vanishes);
    }

    #[test]
    fn moment_examples() {
        let n = 2;
        let rot = PolyField::new(vec![Poly::parse(n, "-x2").unwrap(), Poly::parse(n, "x1").unwrap()]).unwrap();
        let zero = PolyForm::<Rational>::zero(n).unwrap();
        let c = vec![vec![vec![rat(0, 1)]]];
        let rep = moment_conditions(&zero, std::slice::from_ref(&zero), std::slice::from_ref(&rot), &c, None).unwrap();
        assert!(rep.all_pass());

        let mu = PolyForm::function(Poly::parse(n, "1/2 x1^2 + 1/2 x2^2").unwrap()).unwrap().d().unwrap();
        let rep = moment_conditions(&zero, &[mu], &[rot], &c, None).unwrap();
        assert!(rep.all_pass() && rep.fields_match_brackets);

        let n = 3;
        let u = PolyField::new(vec![Poly::parse(n, "-x2").unwrap(), Poly::parse(n, "x1").unwrap(), Poly::zero(n)]).unwrap();
        let h = form::<Rational>(n, &[("[1,2,3]", "1")]);
        let zero = PolyForm::zero(n).unwrap();
        let rep = moment_conditions(&h, &[zero], &[u], &c, None).unwrap();
        assert_eq!(rep.closed, vec![false]);
    }

    #[test]
    fn admissibility_on_submanifold() {
        let n = 2;
        let rot = PolyField::new(vec![Poly::parse(n, "-x2").unwrap(), Poly::parse(n, "x1").unwrap()]).unwrap();
        let xi = PolyForm::function(Poly::parse(n, "1/2 x1^2 + 1/2 x2^2").unwrap()).unwrap().d().unwrap();
        let zero = PolyForm::<Rational>::zero(n).unwrap();
        let c = vec![vec![vec![rat(0, 1)]]];
        let circle = Submanifold {
            constraints: vec![Poly::parse(n, "x1^2 + x2^2 - 1").unwrap()],
            points: vec![vec![rat(1, 1), rat(0, 1)], vec![rat(3, 5), rat(4, 5)]],
        };
        let rep = moment_conditions(&zero, std::slice::from_ref(&xi), std::slice::from_ref(&rot), &c, Some(&circle)).unwrap();
        assert_eq!(rep.admissible, Some(vec![true, true]));
        let line = Submanifold { constraints: vec![Poly::parse(n, "x2").unwrap()], points: vec![vec![rat(1, 1), rat(0, 1)]] };
        let rep = moment_conditions(&zero, &[xi], &[rot], &c, Some(&line)).unwrap();
        assert_eq!(rep.admissible, Some(vec![false]));
    }
}
