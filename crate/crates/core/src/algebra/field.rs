//! Exact arithmetic in `F_p` and its extensions `F_{p^k}`, `k <= 3`.
//!
//! An element of `F_{p^k} = F_p[t]/(m(t))` is stored as a `u32` code
//! `c0 + c1 p + c2 p^2` holding its coordinates in the basis `1, t, t^2`.
//! Prime-field elements are therefore their own residues, and the embedding
//! `F_p -> F_{p^k}` is the identity on codes `< p`.
//!
//! Multiplication in proper extensions goes through discrete log tables
//! built from a primitive element; prime-field products are reduced
//! directly.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order for which log tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Prime, extension degree and defining polynomial of a finite field.
///
/// `modulus` lists the coefficients of the monic defining polynomial from
/// the constant term up to the leading `1`; it is empty for `k = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    #[serde(default)]
    pub modulus: Vec<u32>,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u32) -> Result<()> {
    if p < 5 || !is_prime(p) {
        return Err(Error::InvalidField(format!(
            "characteristic must be a prime >= 5, got {p}"
        )));
    }
    Ok(())
}

/// Evaluates the polynomial with low-to-high coefficients at `x` mod `p`.
fn eval_mod(coeffs: &[u32], x: u32, p: u32) -> u32 {
    coeffs
        .iter()
        .rev()
        .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64) as u32
}

fn has_root(coeffs: &[u32], p: u32) -> bool {
    (0..p).any(|x| eval_mod(coeffs, x, p) == 0)
}

impl FieldSpec {
    /// The field `F_{p^k}` with the default defining polynomial.
    ///
    /// The default is the monic irreducible polynomial whose non-leading
    /// coefficients `(c_{k-1}, ..., c_0)` are lexicographically smallest.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        check_prime(p)?;
        match k {
            1 => Ok(FieldSpec {
                p,
                k,
                modulus: Vec::new(),
            }),
            2 | 3 => {
                let k_us = k as usize;
                let total = (p as u64).pow(k);
                for code in 0..total {
                    // (c_{k-1}, ..., c_0) read as base-p digits, most significant first.
                    let mut rest = code;
                    let mut tail = vec![0u32; k_us];
                    for slot in tail.iter_mut() {
                        *slot = (rest % p as u64) as u32;
                        rest /= p as u64;
                    }
                    let mut coeffs = tail;
                    coeffs.push(1);
                    if !has_root(&coeffs, p) {
                        return Ok(FieldSpec {
                            p,
                            k,
                            modulus: coeffs,
                        });
                    }
                }
                unreachable!("irreducible polynomials of degree {k} exist over every prime field")
            }
            _ => Err(Error::InvalidField(format!(
                "extension degree must be 1, 2 or 3, got {k}"
            ))),
        }
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    /// Validates a user supplied defining polynomial.
    pub fn with_modulus(p: u32, k: u32, modulus: Vec<u32>) -> Result<Self> {
        check_prime(p)?;
        if k == 1 {
            if !modulus.is_empty() {
                return Err(Error::InvalidField("prime fields take no modulus".into()));
            }
            return Ok(FieldSpec { p, k, modulus });
        }
        if !(2..=3).contains(&k) {
            return Err(Error::InvalidField(format!(
                "extension degree must be 1, 2 or 3, got {k}"
            )));
        }
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 {
            return Err(Error::InvalidField(
                "modulus must be monic of degree k".into(),
            ));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(
                "modulus coefficients must be residues".into(),
            ));
        }
        // Degree <= 3: irreducible iff rootless.
        if has_root(&modulus, p) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        Ok(FieldSpec { p, k, modulus })
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.k)
        }
    }
}

struct FieldData {
    spec: FieldSpec,
    q: u32,
    /// `exp[i] = g^i` for `i in 0..q-1`.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`.
    log: Vec<u32>,
    /// Zech logarithms for proper extensions: `g^zech[n] = 1 + g^n`, with
    /// `NO_LOG` where `1 + g^n = 0`.
    zech: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

/// Coordinate-wise sum of two codes.
fn slow_add(spec: &FieldSpec, a: u32, b: u32) -> u32 {
    let p = spec.p;
    let (mut a, mut b) = (a, b);
    let mut out = 0u32;
    let mut place = 1u32;
    for _ in 0..spec.k {
        out += ((a % p + b % p) % p) * place;
        place *= p;
        a /= p;
        b /= p;
    }
    out
}

/// A finite field with precomputed arithmetic tables. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.0.spec)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.spec.fmt(f)
    }
}

/// Schoolbook product of two code-encoded elements reduced by the modulus.
fn slow_mul(spec: &FieldSpec, a: u32, b: u32) -> u32 {
    let p = spec.p as u64;
    let k = spec.k as usize;
    let da = digits(a, spec.p, k);
    let db = digits(b, spec.p, k);
    let mut prod = vec![0u64; 2 * k - 1];
    for i in 0..k {
        for j in 0..k {
            prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
        }
    }
    if k > 1 {
        for deg in (k..2 * k - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            // t^k = -(m_0 + ... + m_{k-1} t^{k-1})
            for (i, &m) in spec.modulus[..k].iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + (p - m as u64) * c) % p;
            }
        }
    }
    let mut code = 0u64;
    for i in (0..k).rev() {
        code = code * p + prod[i];
    }
    code as u32
}

fn digits(a: u32, p: u32, k: usize) -> [u32; 3] {
    let mut out = [0u32; 3];
    let mut rest = a;
    for d in out.iter_mut().take(k) {
        *d = rest % p;
        rest /= p;
    }
    out
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn slow_pow(spec: &FieldSpec, mut base: u32, mut e: u64) -> u32 {
    let mut acc = 1u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = slow_mul(spec, acc, base);
        }
        base = slow_mul(spec, base, base);
        e >>= 1;
    }
    acc
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        let q64 = spec.order();
        if q64 > MAX_FIELD_ORDER {
            return Err(Error::InvalidField(format!(
                "field order {q64} exceeds table limit {MAX_FIELD_ORDER}"
            )));
        }
        let q = q64 as u32;
        let factors = prime_factors(q64 - 1);
        let generator = (2..q)
            .chain(std::iter::once(1))
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| slow_pow(&spec, g, (q64 - 1) / r) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..q - 1 {
            exp.push(cur);
            log[cur as usize] = i;
            cur = slow_mul(&spec, cur, generator);
        }
        let zech = if spec.k == 1 {
            Vec::new()
        } else {
            exp.iter()
                .map(|&e| match slow_add(&spec, 1, e) {
                    0 => NO_LOG,
                    s => log[s as usize],
                })
                .collect()
        };
        Ok(Field(Arc::new(FieldData {
            spec,
            q,
            exp,
            log,
            zech,
        })))
    }

    /// Shorthand for `F_{p^k}` with the default modulus.
    pub fn of(p: u32, k: u32) -> Result<Self> {
        Self::new(FieldSpec::new(p, k)?)
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::of(p, 1)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn p(&self) -> u32 {
        self.0.spec.p
    }

    pub fn k(&self) -> u32 {
        self.0.spec.k
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.spec.k == 1
    }

    /// The prime subfield `F_p`.
    pub fn prime_subfield(&self) -> Field {
        if self.is_prime_field() {
            self.clone()
        } else {
            Field::prime(self.p()).expect("characteristic already validated")
        }
    }

    /// Whether a code lies in the prime subfield.
    #[inline]
    pub fn in_prime_subfield(&self, a: u32) -> bool {
        a < self.0.spec.p
    }

    /// Residue of a signed integer, embedded in the field.
    pub fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p() as i64) as u32
    }

    /// Builds an element from its `k` coordinates (reduced mod p).
    pub fn from_coords(&self, coords: &[i64]) -> Result<u32> {
        if coords.len() != self.k() as usize {
            return Err(Error::InvalidField(format!(
                "{} expects {} coordinates, got {}",
                self,
                self.k(),
                coords.len()
            )));
        }
        let p = self.p() as i64;
        Ok(coords
            .iter()
            .rev()
            .fold(0i64, |acc, &c| acc * p + c.rem_euclid(p)) as u32)
    }

    pub fn coords(&self, a: u32) -> Vec<u32> {
        digits(a, self.p(), self.k() as usize)[..self.k() as usize].to_vec()
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let d = &self.0;
        if d.spec.k == 1 {
            let s = a + b;
            return if s >= d.spec.p { s - d.spec.p } else { s };
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        // a + b = a (1 + b / a)
        let n = d.q - 1;
        let (la, lb) = (d.log[a as usize], d.log[b as usize]);
        let z = d.zech[(if lb >= la { lb - la } else { lb + n - la }) as usize];
        if z == NO_LOG {
            return 0;
        }
        let s = la + z;
        d.exp[(if s >= n { s - n } else { s }) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let d = &self.0;
        if d.spec.k == 1 {
            return if a == 0 { 0 } else { d.spec.p - a };
        }
        if a == 0 {
            return 0;
        }
        // -1 = g^((q-1)/2) in odd characteristic
        let n = d.q - 1;
        let s = d.log[a as usize] + n / 2;
        d.exp[(if s >= n { s - n } else { s }) as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.0.spec.k == 1 {
            return ((a as u64 * b as u64) % self.0.spec.p as u64) as u32;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let d = &self.0;
        let s = d.log[a as usize] + d.log[b as usize];
        let n = d.q - 1;
        d.exp[(if s >= n { s - n } else { s }) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let d = &self.0;
        let n = d.q - 1;
        let l = d.log[a as usize];
        Some(d.exp[((n - l) % n) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let d = &self.0;
        let n = (d.q - 1) as u64;
        d.exp[((d.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// A square root, if one exists in this field.
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return Some(0);
        }
        let d = &self.0;
        let l = d.log[a as usize];
        l.is_multiple_of(2).then(|| d.exp[(l / 2) as usize])
    }

    /// The Frobenius map `a -> a^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p() as u64)
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    /// Renders an element as `c0+c1*t+c2*t^2` (or a bare residue).
    pub fn format(&self, a: u32) -> String {
        if self.is_prime_field() {
            return a.to_string();
        }
        let c = self.coords(a);
        let mut parts = Vec::new();
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            parts.push(match i {
                0 => ci.to_string(),
                1 if ci == 1 => "t".into(),
                1 => format!("{ci}*t"),
                _ if ci == 1 => format!("t^{i}"),
                _ => format!("{ci}*t^{i}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            format!("({})", parts.join("+"))
        }
    }
}

/// JSON shape of a single element: a bare residue for prime fields,
/// otherwise the list of `k` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemJson {
    Residue(i64),
    Coords(Vec<i64>),
}

impl ElemJson {
    pub fn encode(field: &Field, a: u32) -> Self {
        if field.is_prime_field() {
            ElemJson::Residue(a as i64)
        } else {
            ElemJson::Coords(field.coords(a).into_iter().map(i64::from).collect())
        }
    }

    pub fn decode(&self, field: &Field) -> Result<u32> {
        match self {
            ElemJson::Residue(n) => Ok(field.from_i64(*n)),
            ElemJson::Coords(c) => field.from_coords(c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_addition_matches_coordinates() {
        for (p, k) in [(5, 2), (7, 2), (5, 3)] {
            let f = Field::of(p, k).unwrap();
            for a in f.elements() {
                assert_eq!(slow_add(f.spec(), a, f.neg(a)), 0);
                for b in f.elements() {
                    assert_eq!(
                        f.add(a, b),
                        slow_add(f.spec(), a, b),
                        "F_{p}^{k}: {a} + {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn rejects_small_and_composite_characteristic() {
        assert!(FieldSpec::new(2, 1).is_err());
        assert!(FieldSpec::new(3, 1).is_err());
        assert!(FieldSpec::new(9, 1).is_err());
        assert!(FieldSpec::new(5, 4).is_err());
        assert!(FieldSpec::new(5, 1).is_ok());
    }

    #[test]
    fn default_moduli_are_smallest_rootless() {
        // squares mod 7 are {0,1,2,4}; x^2 + 1 has no root
        assert_eq!(FieldSpec::new(7, 2).unwrap().modulus, vec![1, 0, 1]);
        // x^2 + 2 over F_5: -2 = 3 is a non-square
        assert_eq!(FieldSpec::new(5, 2).unwrap().modulus, vec![2, 0, 1]);
        // cubes mod 7 are {0,1,6}; x^3 + 2 is the first rootless cubic
        assert_eq!(FieldSpec::new(7, 3).unwrap().modulus, vec![2, 0, 0, 1]);
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 - 1
        assert!(FieldSpec::with_modulus(7, 2, vec![6, 0, 1]).is_err());
        assert!(FieldSpec::with_modulus(7, 2, vec![1, 0, 1]).is_ok());
    }

    #[test]
    fn tables_agree_with_schoolbook() {
        for (p, k) in [(5, 2), (7, 2), (5, 3)] {
            let f = Field::of(p, k).unwrap();
            for a in f.elements() {
                for b in f.elements().step_by(7) {
                    assert_eq!(f.mul(a, b), slow_mul(f.spec(), a, b));
                }
            }
        }
    }

    #[test]
    fn inverses_and_frobenius() {
        for (p, k) in [(5, 1), (7, 2), (5, 3), (11, 1)] {
            let f = Field::of(p, k).unwrap();
            let q = f.order() as u64;
            for a in f.elements() {
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                assert_eq!(f.pow(a, q), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
        }
    }

    #[test]
    fn prime_subfield_embedding_respects_operations() {
        let base = Field::prime(7).unwrap();
        let ext = Field::of(7, 3).unwrap();
        for a in 0..7 {
            for b in 0..7 {
                assert_eq!(ext.add(a, b), base.add(a, b));
                assert_eq!(ext.mul(a, b), base.mul(a, b));
                assert_eq!(ext.sub(a, b), base.sub(a, b));
            }
            assert_eq!(ext.frobenius(a), a);
        }
    }

    #[test]
    fn square_roots() {
        let f = Field::prime(11).unwrap();
        let squares: Vec<u32> = (1..11).filter(|&a| f.sqrt(a).is_some()).collect();
        assert_eq!(squares, vec![1, 3, 4, 5, 9]);
        let f2 = Field::of(11, 2).unwrap();
        // every element of F_p is a square in F_{p^2}
        for a in 0..11 {
            let r = f2.sqrt(a).unwrap();
            assert_eq!(f2.mul(r, r), a);
        }
    }

    #[test]
    fn element_json_round_trip() {
        let f = Field::of(7, 2).unwrap();
        let a = f.from_coords(&[3, -1]).unwrap();
        assert_eq!(f.coords(a), vec![3, 6]);
        let j = ElemJson::encode(&f, a);
        assert_eq!(serde_json::to_string(&j).unwrap(), "[3,6]");
        assert_eq!(j.decode(&f).unwrap(), a);
        let g = Field::prime(7).unwrap();
        assert_eq!(
            serde_json::to_string(&ElemJson::encode(&g, 5)).unwrap(),
            "5"
        );
    }
}
