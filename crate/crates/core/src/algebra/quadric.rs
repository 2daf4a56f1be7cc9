//! Classification of plane conics by the rank of their symmetric matrix.

use super::field::Field;
use super::linalg::{nullspace, rank, Mat3};
use super::poly::HomogPoly;
use crate::error::{Error, Result};

/// Factorization type of a nonzero quadratic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuadricSplit {
    /// `q = c * line^2`.
    DoubleLine(HomogPoly),
    /// `q = c * first * second` with distinct lines. When `rational` is
    /// false the lines are Frobenius conjugates with coefficients in the
    /// quadratic extension.
    TwoLines {
        first: HomogPoly,
        second: HomogPoly,
        rational: bool,
    },
    /// Rank 3: a smooth conic.
    Irreducible,
}

impl QuadricSplit {
    /// The linear factors, if any.
    pub fn lines(&self) -> Vec<HomogPoly> {
        match self {
            QuadricSplit::DoubleLine(l) => vec![l.clone()],
            QuadricSplit::TwoLines { first, second, .. } => vec![first.clone(), second.clone()],
            QuadricSplit::Irreducible => Vec::new(),
        }
    }
}

/// Symmetric matrix with `q(x) = x^T M x`.
pub fn symmetric_matrix(q: &HomogPoly) -> [[u32; 3]; 3] {
    let f = q.field();
    let half = f.inv(f.from_i64(2)).expect("odd characteristic");
    let mut m = [[0u32; 3]; 3];
    for (c, e) in q.terms() {
        let vars: Vec<usize> = (0..3).filter(|&v| e[v] > 0).collect();
        match vars.as_slice() {
            [v] => m[*v][*v] = c,
            [a, b] => {
                let h = f.mul(c, half);
                m[*a][*b] = h;
                m[*b][*a] = h;
            }
            _ => unreachable!("degree-2 monomial"),
        }
    }
    m
}

/// Splits a quadratic form into linear factors where possible.
pub fn quadric_split(q: &HomogPoly) -> Result<QuadricSplit> {
    if q.degree() != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            got: q.degree(),
        });
    }
    if q.is_zero() {
        return Err(Error::ZeroQuadric);
    }
    let f = q.field().clone();
    let m = symmetric_matrix(q);
    let rows: Vec<Vec<u32>> = m.iter().map(|r| r.to_vec()).collect();
    match rank(&f, &rows) {
        1 => {
            let i = (0..3)
                .find(|&i| m[i][i] != 0)
                .expect("rank-1 symmetric has a diagonal entry");
            Ok(QuadricSplit::DoubleLine(
                HomogPoly::linear(&f, m[i]).canonical(),
            ))
        }
        2 => split_rank_two(q, &f, &rows),
        _ => Ok(QuadricSplit::Irreducible),
    }
}

fn split_rank_two(q: &HomogPoly, f: &Field, rows: &[Vec<u32>]) -> Result<QuadricSplit> {
    let kernel = nullspace(f, rows, 3);
    let s: [u32; 3] = [kernel[0][0], kernel[0][1], kernel[0][2]];
    // Complete the vertex s to a basis (a, b, s).
    let basis = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let mut chosen = None;
    'outer: for i in 0..3 {
        for j in i + 1..3 {
            let b = Mat3::from_columns(f, [basis[i], basis[j], s]);
            if b.det() != 0 {
                chosen = Some(b);
                break 'outer;
            }
        }
    }
    let b = chosen.expect("a nonzero vector extends to a basis");
    let binv = b.inverse()?;
    let alpha = binv.rows()[0];
    let beta = binv.rows()[1];
    let a_vec = b.column(0);
    let b_vec = b.column(1);
    let sum = [
        f.add(a_vec[0], b_vec[0]),
        f.add(a_vec[1], b_vec[1]),
        f.add(a_vec[2], b_vec[2]),
    ];
    // Binary form Q(α, β) = qa α² + qm αβ + qb β².
    let qa = q.eval_unchecked(f, &a_vec);
    let qb = q.eval_unchecked(f, &b_vec);
    let qm = f.sub(f.sub(q.eval_unchecked(f, &sum), qa), qb);

    if qa == 0 {
        // Q = β (qm α + qb β), qm != 0 because the rank is two
        let first = HomogPoly::linear(f, beta);
        let second = HomogPoly::linear(f, combine(f, qm, &alpha, qb, &beta));
        return Ok(QuadricSplit::TwoLines {
            first: first.canonical(),
            second: second.canonical(),
            rational: true,
        });
    }
    let four = f.from_i64(4);
    let disc = f.sub(f.mul(qm, qm), f.mul(four, f.mul(qa, qb)));
    let (ext, rational) = match f.sqrt(disc) {
        Some(_) => (f.clone(), true),
        None if f.is_prime_field() => (Field::of(f.p(), 2)?, false),
        None => {
            return Err(Error::Precondition(
                "conic splits only over a degree-4 extension".into(),
            ))
        }
    };
    let root = ext
        .sqrt(disc)
        .expect("discriminant is a square in the quadratic extension");
    let inv2a = ext.inv(ext.mul(ext.from_i64(2), qa)).expect("qa != 0");
    let neg_b = ext.neg(qm);
    let t1 = ext.mul(ext.add(neg_b, root), inv2a);
    let t2 = ext.mul(ext.sub(neg_b, root), inv2a);
    // Q = qa (α - t1 β)(α - t2 β)
    let line =
        |t: u32| HomogPoly::linear(&ext, combine(&ext, 1, &alpha, ext.neg(t), &beta)).canonical();
    Ok(QuadricSplit::TwoLines {
        first: line(t1),
        second: line(t2),
        rational,
    })
}

fn combine(f: &Field, c1: u32, v1: &[u32; 3], c2: u32, v2: &[u32; 3]) -> [u32; 3] {
    [0, 1, 2].map(|i| f.add(f.mul(c1, v1[i]), f.mul(c2, v2[i])))
}
