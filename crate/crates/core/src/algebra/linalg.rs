//! Dense Gaussian elimination over finite fields.

use super::field::Field;
use crate::error::{Error, Result};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(field: &Field, rows: &mut [Vec<u32>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(src) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, src);
        let inv = field.inv(rows[r][c]).expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = field.sub(*v, field.mul(factor, pv));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<u32>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Basis of `{x : A x = 0}` where `a` has `ncols` columns.
pub fn nullspace(field: &Field, a: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut m = a.to_vec();
    let pivots = rref(field, &mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u32; ncols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(m[r][fc]);
            }
            v
        })
        .collect()
}

/// One solution of `A x = b`, free variables set to zero; `None` when the
/// system is inconsistent.
pub fn solve(field: &Field, a: &[Vec<u32>], b: &[u32]) -> Option<Vec<u32>> {
    let ncols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<u32>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![0u32; ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][ncols];
    }
    Some(x)
}

/// Incremental rank over a prime field with lazy modular reduction and an
/// early exit once the rank reaches `ncols`.
///
/// Pivot rows are kept normalized (pivot entry 1) and fully reduced against
/// earlier pivots only in their pivot column, which is all a forward
/// reduction needs.
pub struct PrimeRank {
    p: u64,
    ncols: usize,
    /// `pivot_of[c]` = index into `rows` of the pivot row for column `c`.
    pivot_of: Vec<Option<usize>>,
    rows: Vec<Vec<u64>>,
    scratch: Vec<u64>,
}

impl PrimeRank {
    pub fn new(p: u32, ncols: usize) -> Self {
        assert!(
            p < 1 << 20 && ncols < 1 << 20,
            "PrimeRank sized for small primes"
        );
        PrimeRank {
            p: p as u64,
            ncols,
            pivot_of: vec![None; ncols],
            rows: Vec::with_capacity(ncols),
            scratch: vec![0; ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Adds a row given as `(column, residue)` pairs. Returns whether the
    /// rank grew.
    pub fn push_sparse(&mut self, entries: impl IntoIterator<Item = (usize, u32)>) -> bool {
        if self.is_full() {
            return false;
        }
        let p = self.p;
        self.scratch.iter_mut().for_each(|v| *v = 0);
        for (c, v) in entries {
            self.scratch[c] += v as u64;
        }
        // Each elimination step adds less than p^2 <= 2^40 to an entry, and
        // there are at most ncols steps, so u64 never overflows; reduction is
        // only needed where a pivot entry is read.
        for c in 0..self.ncols {
            let v = self.scratch[c] % p;
            self.scratch[c] = v;
            if v == 0 {
                continue;
            }
            match self.pivot_of[c] {
                Some(r) => {
                    let factor = p - v;
                    let row = &self.rows[r];
                    for (s, &x) in self.scratch[c..].iter_mut().zip(&row[c..]) {
                        *s += factor * x;
                    }
                    self.scratch[c] = 0;
                }
                None => {
                    let inv = mod_inv(v, p);
                    let mut row = vec![0u64; self.ncols];
                    row[c] = 1;
                    for (x, &s) in row[c + 1..].iter_mut().zip(&self.scratch[c + 1..]) {
                        *x = (s % p) * inv % p;
                    }
                    self.pivot_of[c] = Some(self.rows.len());
                    self.rows.push(row);
                    return true;
                }
            }
        }
        false
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// A 3x3 matrix over a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat3 {
    field: Field,
    rows: [[u32; 3]; 3],
}

impl Mat3 {
    pub fn new(field: &Field, rows: [[u32; 3]; 3]) -> Self {
        Mat3 {
            field: field.clone(),
            rows,
        }
    }

    pub fn from_i64(field: &Field, rows: [[i64; 3]; 3]) -> Self {
        Mat3::new(field, rows.map(|r| r.map(|v| field.from_i64(v))))
    }

    pub fn identity(field: &Field) -> Self {
        Mat3::new(field, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }

    /// Matrix with the given columns.
    pub fn from_columns(field: &Field, cols: [[u32; 3]; 3]) -> Self {
        let mut rows = [[0u32; 3]; 3];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..3 {
                rows[i][j] = col[i];
            }
        }
        Mat3::new(field, rows)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> &[[u32; 3]; 3] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> [u32; 3] {
        [self.rows[0][j], self.rows[1][j], self.rows[2][j]]
    }

    pub fn det(&self) -> u32 {
        det3(&self.field, &self.rows)
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        let f = &self.field;
        let mut out = [[0u32; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).fold(0, |acc, l| {
                    f.add(acc, f.mul(self.rows[i][l], other.rows[l][j]))
                });
            }
        }
        Mat3::new(f, out)
    }

    pub fn apply(&self, v: &[u32; 3]) -> [u32; 3] {
        let f = &self.field;
        let mut out = [0u32; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..3).fold(0, |acc, l| f.add(acc, f.mul(self.rows[i][l], v[l])));
        }
        out
    }

    pub fn inverse(&self) -> Result<Mat3> {
        let f = &self.field;
        let d = self.det();
        let inv_d = f.inv(d).ok_or(Error::SingularMatrix)?;
        let m = &self.rows;
        let mut out = [[0u32; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                // adjugate: cofactor of (j, i)
                let (r0, r1) = others(j);
                let (c0, c1) = others(i);
                let minor = f.sub(f.mul(m[r0][c0], m[r1][c1]), f.mul(m[r0][c1], m[r1][c0]));
                let cof = if (i + j) % 2 == 0 {
                    minor
                } else {
                    f.neg(minor)
                };
                *v = f.mul(cof, inv_d);
            }
        }
        Ok(Mat3::new(f, out))
    }
}

fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

pub fn det3(f: &Field, m: &[[u32; 3]; 3]) -> u32 {
    let t0 = f.mul(
        m[0][0],
        f.sub(f.mul(m[1][1], m[2][2]), f.mul(m[1][2], m[2][1])),
    );
    let t1 = f.mul(
        m[0][1],
        f.sub(f.mul(m[1][0], m[2][2]), f.mul(m[1][2], m[2][0])),
    );
    let t2 = f.mul(
        m[0][2],
        f.sub(f.mul(m[1][0], m[2][1]), f.mul(m[1][1], m[2][0])),
    );
    f.add(f.sub(t0, t1), t2)
}
