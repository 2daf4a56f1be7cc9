//! `(3; 2, 3)`-Kronecker modules: 3x2 matrices of linear forms.

use std::fmt;

use crate::algebra::{linalg, Field, HomogPoly, Mat3};
use crate::error::{Error, Result};

/// A 3x2 matrix of linear forms with columns `z` and `w`.
#[derive(Clone, PartialEq, Eq)]
pub struct KroneckerModule {
    entries: [[HomogPoly; 2]; 3],
}

impl KroneckerModule {
    pub fn new(entries: [[HomogPoly; 2]; 3]) -> Result<Self> {
        let field = entries[0][0].field().clone();
        for e in entries.iter().flatten() {
            if e.degree() != 1 {
                return Err(Error::DegreeMismatch {
                    expected: 1,
                    got: e.degree(),
                });
            }
            if e.field() != &field {
                return Err(Error::FieldMismatch {
                    left: field.to_string(),
                    right: e.field().to_string(),
                });
            }
        }
        Ok(KroneckerModule { entries })
    }

    /// Builds the module from the two columns `z = (z0, z1, z2)` and
    /// `w = (w0, w1, w2)`.
    pub fn from_columns(z: [HomogPoly; 3], w: [HomogPoly; 3]) -> Result<Self> {
        let [z0, z1, z2] = z;
        let [w0, w1, w2] = w;
        Self::new([[z0, w0], [z1, w1], [z2, w2]])
    }

    /// Builds the module from coefficient vectors of its six entries.
    pub fn from_coeffs(field: &Field, rows: [[[u32; 3]; 2]; 3]) -> Result<Self> {
        Self::new(rows.map(|r| r.map(|c| HomogPoly::linear(field, c))))
    }

    /// `(x0 x0; x1 0; 0 x2)`, whose minors cut out the three coordinate
    /// points.
    pub fn standard(field: &Field) -> Self {
        Self::from_coeffs(
            field,
            [
                [[1, 0, 0], [1, 0, 0]],
                [[0, 1, 0], [0, 0, 0]],
                [[0, 0, 0], [0, 0, 1]],
            ],
        )
        .expect("valid linear entries")
    }

    pub fn field(&self) -> &Field {
        self.entries[0][0].field()
    }

    pub fn entries(&self) -> &[[HomogPoly; 2]; 3] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> &HomogPoly {
        &self.entries[row][col]
    }

    pub fn column(&self, col: usize) -> [HomogPoly; 3] {
        [0, 1, 2].map(|r| self.entries[r][col].clone())
    }

    /// The maximal minors `(d0, d1, d2)` taken as the cofactors of a third
    /// column: `d0 = z1 w2 - z2 w1`, `d1 = z2 w0 - z0 w2`,
    /// `d2 = z0 w1 - z1 w0`. With this sign convention
    /// `det(z | w | q) = d0 q0 + d1 q1 + d2 q2`.
    pub fn maximal_minors(&self) -> [HomogPoly; 3] {
        let e = &self.entries;
        let m = |a: usize, b: usize| &(&e[a][0] * &e[b][1]) - &(&e[b][0] * &e[a][1]);
        [m(1, 2), m(2, 0), m(0, 1)]
    }

    /// Stable iff the three maximal minors are linearly independent
    /// quadrics.
    pub fn is_stable(&self) -> bool {
        let rows: Vec<Vec<u32>> = self
            .maximal_minors()
            .iter()
            .map(|d| d.coeffs().to_vec())
            .collect();
        linalg::rank(self.field(), &rows) == 3
    }

    /// Entrywise `f -> f o T`.
    pub fn substitute(&self, t: &Mat3) -> Result<Self> {
        let mut out = self.entries.clone();
        for e in out.iter_mut().flatten() {
            *e = e.substitute(t)?;
        }
        Ok(KroneckerModule { entries: out })
    }
}

impl fmt::Debug for KroneckerModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| format!("{} {}", r[0], r[1]))
            .collect();
        write!(f, "({})", rows.join("; "))
    }
}
