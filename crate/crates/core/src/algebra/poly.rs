//! Dense homogeneous forms in `x0, x1, x2`.
//!
//! Coefficients of a degree-`d` form are stored in graded-lex order,
//! descending on the exponents `(i, j)` of `(x0, x1)`:
//! `x0^d, x0^(d-1) x1, x0^(d-1) x2, x0^(d-2) x1^2, ...`. The monomial
//! `x0^i x1^j x2^(d-i-j)` sits at index `T(d-i) + (d-i-j)` where
//! `T(m) = m(m+1)/2`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{ElemJson, Field};
use super::linalg::Mat3;
use crate::error::{Error, Result};

/// Number of monomials of degree `d` in three variables.
#[inline]
pub const fn num_monomials(d: u32) -> usize {
    ((d as usize + 1) * (d as usize + 2)) / 2
}

/// Index of `x0^i x1^j x2^(d-i-j)` in the degree-`d` coefficient vector.
#[inline]
pub const fn monomial_index(i: u32, j: u32, d: u32) -> usize {
    let r = (d - i) as usize;
    r * (r + 1) / 2 + (d - i - j) as usize
}

/// Exponent triples of degree `d` in storage order.
pub fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::with_capacity(num_monomials(d));
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

/// A homogeneous polynomial of fixed degree over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogPoly {
    field: Field,
    degree: u32,
    coeffs: Vec<u32>,
}

impl HomogPoly {
    pub fn zero(field: &Field, degree: u32) -> Self {
        HomogPoly {
            field: field.clone(),
            degree,
            coeffs: vec![0; num_monomials(degree)],
        }
    }

    pub fn constant(field: &Field, c: u32) -> Self {
        HomogPoly {
            field: field.clone(),
            degree: 0,
            coeffs: vec![c],
        }
    }

    /// The coordinate form `x_var`.
    pub fn var(field: &Field, var: usize) -> Self {
        let mut e = [0u32; 3];
        e[var] = 1;
        Self::monomial(field, e, 1)
    }

    pub fn monomial(field: &Field, exps: [u32; 3], c: u32) -> Self {
        let d = exps.iter().sum();
        let mut f = Self::zero(field, d);
        f.coeffs[monomial_index(exps[0], exps[1], d)] = c;
        f
    }

    /// Linear form `a0 x0 + a1 x1 + a2 x2`.
    pub fn linear(field: &Field, a: [u32; 3]) -> Self {
        HomogPoly {
            field: field.clone(),
            degree: 1,
            coeffs: a.to_vec(),
        }
    }

    pub fn from_coeffs(field: &Field, degree: u32, coeffs: Vec<u32>) -> Result<Self> {
        if coeffs.len() != num_monomials(degree) {
            return Err(Error::InvalidPolynomial(format!(
                "degree {degree} needs {} coefficients, got {}",
                num_monomials(degree),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|&c| c >= field.order()) {
            return Err(Error::InvalidPolynomial(
                "coefficient outside the field".into(),
            ));
        }
        Ok(HomogPoly {
            field: field.clone(),
            degree,
            coeffs,
        })
    }

    /// Builds a form from `(coefficient, [i, j, k])` terms; the degree is
    /// taken from `degree` so that empty term lists are allowed.
    pub fn from_terms(field: &Field, degree: u32, terms: &[(i64, [u32; 3])]) -> Result<Self> {
        let mut f = Self::zero(field, degree);
        for &(c, e) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: e.iter().sum(),
                });
            }
            let idx = monomial_index(e[0], e[1], degree);
            f.coeffs[idx] = field.add(f.coeffs[idx], field.from_i64(c));
        }
        Ok(f)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, exps: [u32; 3]) -> u32 {
        if exps.iter().sum::<u32>() != self.degree {
            return 0;
        }
        self.coeffs[monomial_index(exps[0], exps[1], self.degree)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Nonzero terms in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, [u32; 3])> + '_ {
        monomials(self.degree)
            .into_iter()
            .zip(self.coeffs.iter().copied())
            .filter(|&(_, c)| c != 0)
            .map(|(e, c)| (c, e))
    }

    fn check_field(&self, other: &HomogPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        Ok(())
    }

    fn check_same(&self, other: &HomogPoly) -> Result<()> {
        self.check_field(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &HomogPoly) -> Result<HomogPoly> {
        self.check_same(other)?;
        let f = &self.field;
        Ok(HomogPoly {
            field: f.clone(),
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &HomogPoly) -> Result<HomogPoly> {
        self.check_same(other)?;
        let f = &self.field;
        Ok(HomogPoly {
            field: f.clone(),
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        })
    }

    /// Exact product; degrees add.
    pub fn try_mul(&self, other: &HomogPoly) -> Result<HomogPoly> {
        self.check_field(other)?;
        let f = &self.field;
        let d = self.degree + other.degree;
        let mut out = vec![0u32; num_monomials(d)];
        let ma = monomials(self.degree);
        let mb = monomials(other.degree);
        for (ea, &ca) in ma.iter().zip(&self.coeffs) {
            if ca == 0 {
                continue;
            }
            for (eb, &cb) in mb.iter().zip(&other.coeffs) {
                if cb == 0 {
                    continue;
                }
                let idx = monomial_index(ea[0] + eb[0], ea[1] + eb[1], d);
                out[idx] = f.add(out[idx], f.mul(ca, cb));
            }
        }
        Ok(HomogPoly {
            field: f.clone(),
            degree: d,
            coeffs: out,
        })
    }

    pub fn scale(&self, c: u32) -> HomogPoly {
        let f = &self.field;
        HomogPoly {
            field: f.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Formal partial derivative with respect to `x_var`.
    pub fn partial(&self, var: usize) -> Result<HomogPoly> {
        if self.degree == 0 {
            return Err(Error::ConstantDerivative);
        }
        assert!(var < 3, "axis index out of range");
        let f = &self.field;
        let d = self.degree - 1;
        let mut out = HomogPoly::zero(f, d);
        for (c, e) in self.terms() {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = e;
            e2[var] -= 1;
            let idx = monomial_index(e2[0], e2[1], d);
            out.coeffs[idx] = f.add(out.coeffs[idx], f.mul(c, f.from_i64(e[var] as i64)));
        }
        Ok(out)
    }

    /// The three partial derivatives.
    pub fn gradient(&self) -> Result<[HomogPoly; 3]> {
        Ok([self.partial(0)?, self.partial(1)?, self.partial(2)?])
    }

    /// Value at a point whose coordinates live in `ext`, which must be this
    /// polynomial's field or an extension of its prime field.
    pub fn eval_in(&self, ext: &Field, pt: &[u32; 3]) -> Result<u32> {
        if !(self.field == *ext || (self.field.is_prime_field() && self.field.p() == ext.p())) {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: ext.to_string(),
            });
        }
        if pt.iter().all(|&c| c == 0) {
            return Err(Error::ZeroPoint);
        }
        Ok(self.eval_unchecked(ext, pt))
    }

    /// Evaluation without the zero-vector and field checks.
    pub(crate) fn eval_unchecked(&self, ext: &Field, pt: &[u32; 3]) -> u32 {
        let d = self.degree as usize;
        let mut pows = [[1u32; 8]; 3];
        let mut big: Vec<[u32; 3]> = Vec::new();
        let use_small = d < 8;
        if use_small {
            for (v, row) in pows.iter_mut().enumerate() {
                for e in 1..=d {
                    row[e] = ext.mul(row[e - 1], pt[v]);
                }
            }
        } else {
            big = vec![[1u32; 3]; d + 1];
            for e in 1..=d {
                for v in 0..3 {
                    big[e][v] = ext.mul(big[e - 1][v], pt[v]);
                }
            }
        }
        let mut acc = 0u32;
        let mut idx = 0usize;
        for i in (0..=d).rev() {
            for j in (0..=d - i).rev() {
                let c = self.coeffs[idx];
                idx += 1;
                if c == 0 {
                    continue;
                }
                let l = d - i - j;
                let m = if use_small {
                    ext.mul(ext.mul(pows[0][i], pows[1][j]), pows[2][l])
                } else {
                    ext.mul(ext.mul(big[i][0], big[j][1]), big[l][2])
                };
                acc = ext.add(acc, ext.mul(c, m));
            }
        }
        acc
    }

    /// Value at a point over this polynomial's own field.
    pub fn eval(&self, pt: &[u32; 3]) -> Result<u32> {
        self.eval_in(&self.field.clone(), pt)
    }

    /// Substitutes `x_i -> sum_j rows[i][j] x_j` without checking that the
    /// matrix is invertible. Entries must lie in this polynomial's field.
    pub fn compose_linear(&self, rows: &[[u32; 3]; 3]) -> HomogPoly {
        let f = &self.field;
        let images: Vec<HomogPoly> = rows.iter().map(|r| HomogPoly::linear(f, *r)).collect();
        // powers[v][e] = (image of x_v)^e
        let d = self.degree as usize;
        let mut powers: Vec<Vec<HomogPoly>> = Vec::with_capacity(3);
        for img in &images {
            let mut row = vec![HomogPoly::constant(f, 1)];
            for e in 1..=d {
                row.push(row[e - 1].try_mul(img).expect("same field"));
            }
            powers.push(row);
        }
        let mut out = HomogPoly::zero(f, self.degree);
        for (c, e) in self.terms() {
            let term = powers[0][e[0] as usize]
                .try_mul(&powers[1][e[1] as usize])
                .and_then(|t| t.try_mul(&powers[2][e[2] as usize]))
                .expect("same field");
            out = out.try_add(&term.scale(c)).expect("same degree");
        }
        out
    }

    /// `f o T`, i.e. `x -> f(T x)`. With this convention
    /// `eval(substitute(f, T), pt) = eval(f, T pt)` and
    /// `substitute(f, T1 T2) = substitute(substitute(f, T1), T2)`.
    pub fn substitute(&self, t: &Mat3) -> Result<HomogPoly> {
        if t.field() != &self.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: t.field().to_string(),
            });
        }
        if t.det() == 0 {
            return Err(Error::SingularMatrix);
        }
        Ok(self.compose_linear(t.rows()))
    }

    /// Scales so the first nonzero coefficient (storage order) is 1.
    /// The zero form is returned unchanged.
    pub fn canonical(&self) -> HomogPoly {
        match self.coeffs.iter().find(|&&c| c != 0) {
            Some(&lead) => self.scale(self.field.inv(lead).expect("nonzero")),
            None => self.clone(),
        }
    }

    /// Whether `self = c * other` for some nonzero scalar `c`.
    pub fn proportional(&self, other: &HomogPoly) -> bool {
        self.degree == other.degree
            && self.field == other.field
            && self.is_zero() == other.is_zero()
            && self.canonical().coeffs == other.canonical().coeffs
    }

    /// Maps coefficients into an extension of the prime field.
    pub fn embed(&self, ext: &Field) -> Result<HomogPoly> {
        if self.field == *ext {
            return Ok(self.clone());
        }
        if !self.field.is_prime_field() || self.field.p() != ext.p() {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: ext.to_string(),
            });
        }
        Ok(HomogPoly {
            field: ext.clone(),
            degree: self.degree,
            coeffs: self.coeffs.clone(),
        })
    }

    /// Applies Frobenius to every coefficient.
    pub fn conjugate(&self) -> HomogPoly {
        let f = &self.field;
        HomogPoly {
            field: f.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|&c| f.frobenius(c)).collect(),
        }
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| ElemJson::encode(&self.field, c))
                .collect(),
            p: self.field.p(),
            k: self.field.k(),
        }
    }
}

impl fmt::Debug for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [deg {} over {}]", self, self.degree, self.field)
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, e) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(v, &x)| {
                    if x == 1 {
                        format!("x{v}")
                    } else {
                        format!("x{v}^{x}")
                    }
                })
                .collect();
            let cs = self.field.format(c);
            if mono.is_empty() {
                write!(f, "{cs}")?;
            } else if c == 1 {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{cs}*{}", mono.join("*"))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl std::ops::$tr<&HomogPoly> for &HomogPoly {
            type Output = HomogPoly;
            /// Panics on mismatched fields or degrees; use the `try_` form to
            /// handle those as errors.
            fn $method(self, rhs: &HomogPoly) -> HomogPoly {
                self.$inner(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl std::ops::Neg for &HomogPoly {
    type Output = HomogPoly;
    fn neg(self) -> HomogPoly {
        let f = &self.field;
        HomogPoly {
            field: f.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }
}

/// Serialized form: `{degree, coeffs, p, k}` with coefficients in storage
/// order. Coefficients may be given as signed integers on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub degree: u32,
    pub coeffs: Vec<ElemJson>,
    pub p: u32,
    #[serde(default = "one")]
    pub k: u32,
}

fn one() -> u32 {
    1
}

impl PolyJson {
    /// Decodes over `field`, which must match the recorded `(p, k)`.
    pub fn decode(&self, field: &Field) -> Result<HomogPoly> {
        if field.p() != self.p || field.k() != self.k {
            return Err(Error::FieldMismatch {
                left: format!("F_{}^{}", self.p, self.k),
                right: field.to_string(),
            });
        }
        self.decode_reinterpreted(field)
    }

    /// Decodes over `field` ignoring the recorded characteristic; integer
    /// coefficients are reduced mod the new prime.
    pub fn decode_reinterpreted(&self, field: &Field) -> Result<HomogPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.decode(field))
            .collect::<Result<Vec<_>>>()?;
        HomogPoly::from_coeffs(field, self.degree, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    fn x(f: &Field, i: usize) -> HomogPoly {
        HomogPoly::var(f, i)
    }

    #[test]
    fn monomial_order_is_graded_lex_descending() {
        let m = monomials(2);
        assert_eq!(
            m,
            vec![
                [2, 0, 0],
                [1, 1, 0],
                [1, 0, 1],
                [0, 2, 0],
                [0, 1, 1],
                [0, 0, 2]
            ]
        );
        for d in 0..8 {
            for (idx, e) in monomials(d).iter().enumerate() {
                assert_eq!(monomial_index(e[0], e[1], d), idx);
            }
            assert_eq!(monomials(d).len(), num_monomials(d));
        }
    }

    #[test]
    fn products_of_monomials() {
        let f = f7();
        assert_eq!(&x(&f, 0) * &x(&f, 1), HomogPoly::monomial(&f, [1, 1, 0], 1));
        let x1x2 = &x(&f, 1) * &x(&f, 2);
        let x0sq = &x(&f, 0) * &x(&f, 0);
        assert_eq!(&x1x2 * &x0sq, HomogPoly::monomial(&f, [2, 1, 1], 1));
    }

    #[test]
    fn difference_of_squares_over_f7() {
        let f = f7();
        let a = &x(&f, 0) + &x(&f, 1);
        let b = &x(&f, 0) - &x(&f, 1);
        let expected = HomogPoly::from_terms(&f, 2, &[(1, [2, 0, 0]), (6, [0, 2, 0])]).unwrap();
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn mismatched_fields_rejected() {
        let a = x(&f7(), 0);
        let b = x(&Field::prime(11).unwrap(), 0);
        assert!(matches!(a.try_mul(&b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn partial_derivatives() {
        let f = f7();
        let g = HomogPoly::monomial(&f, [2, 1, 0], 1);
        assert_eq!(g.partial(0).unwrap(), HomogPoly::monomial(&f, [1, 1, 0], 2));
        // x1 x2^3 + x0^2 x1^2
        let g = HomogPoly::from_terms(&f, 4, &[(1, [0, 1, 3]), (1, [2, 2, 0])]).unwrap();
        let expected = HomogPoly::from_terms(&f, 3, &[(1, [0, 0, 3]), (2, [2, 1, 0])]).unwrap();
        assert_eq!(g.partial(1).unwrap(), expected);
        assert_eq!(
            HomogPoly::constant(&f, 3).partial(0),
            Err(Error::ConstantDerivative)
        );
    }

    #[test]
    fn evaluation_examples() {
        let f = f7();
        let x0x1 = HomogPoly::monomial(&f, [1, 1, 0], 1);
        assert_eq!(x0x1.eval(&[1, 0, 0]).unwrap(), 0);
        let g = HomogPoly::from_terms(&f, 4, &[(1, [0, 1, 3]), (1, [2, 2, 0])]).unwrap();
        assert_eq!(g.eval(&[0, 1, 0]).unwrap(), 0);
        assert_eq!(g.eval(&[0, 0, 0]), Err(Error::ZeroPoint));
    }

    #[test]
    fn display_and_canonical() {
        let f = f7();
        let g = HomogPoly::from_terms(&f, 2, &[(3, [2, 0, 0]), (1, [0, 1, 1])]).unwrap();
        assert_eq!(g.to_string(), "3*x0^2 + x1*x2");
        assert_eq!(g.canonical().to_string(), "x0^2 + 5*x1*x2");
        assert!(g.proportional(&g.scale(4)));
    }

    #[test]
    fn json_round_trip_and_signed_input() {
        let f = f7();
        let g = HomogPoly::from_terms(&f, 2, &[(-1, [2, 0, 0]), (2, [0, 1, 1])]).unwrap();
        let j = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(j, r#"{"degree":2,"coeffs":[6,0,0,0,2,0],"p":7,"k":1}"#);
        let parsed: PolyJson =
            serde_json::from_str(r#"{"degree":2,"coeffs":[-1,0,0,0,2,0],"p":7}"#).unwrap();
        assert_eq!(parsed.decode(&f).unwrap(), g);
    }
}
