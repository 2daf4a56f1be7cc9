//! Emptiness of projective zero schemes in the plane via Macaulay matrices.
//!
//! Forms `g_1, ..., g_r` have no common zero over the algebraic closure iff
//! the degree-`N` piece of the ideal they generate is everything, for
//! `N = (d1 - 1) + (d2 - 1) + (d3 - 1) + 1` with `d1 >= d2 >= d3` the three
//! largest generator degrees. Rank over `F_p` equals rank over any
//! extension, so the test decides emptiness over the closure.

use super::field::Field;
use super::linalg::{rref, PrimeRank};
use super::poly::{monomial_index, monomials, num_monomials, HomogPoly};
use crate::error::{Error, Result};

/// The Macaulay degree for the given generator degrees, or `None` when
/// fewer than three are supplied.
pub fn macaulay_degree(degrees: &[u32]) -> Option<u32> {
    if degrees.len() < 3 {
        return None;
    }
    let mut d = degrees.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    Some(d[..3].iter().map(|&x| x.saturating_sub(1)).sum::<u32>() + 1)
}

/// Decides whether the forms have no common zero in the projective plane
/// over the algebraic closure of their field.
pub fn is_projectively_empty(gens: &[HomogPoly]) -> Result<bool> {
    let first = gens.first().ok_or(Error::NoGenerators)?;
    let field = first.field().clone();
    for g in gens {
        if g.field() != &field {
            return Err(Error::FieldMismatch {
                left: field.to_string(),
                right: g.field().to_string(),
            });
        }
    }
    let nonzero: Vec<&HomogPoly> = gens.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::AllZeroGenerators);
    }
    if nonzero.iter().any(|g| g.degree() == 0) {
        // a nonzero constant generates the unit ideal
        return Ok(true);
    }
    let degrees: Vec<u32> = nonzero.iter().map(|g| g.degree()).collect();
    let Some(n) = macaulay_degree(&degrees) else {
        // two curves in the plane always meet
        return Ok(false);
    };
    Ok(macaulay_rank(&field, &nonzero, n) == num_monomials(n))
}

/// Rank of the matrix of all products `m * g` landing in degree `n`.
///
/// Over prime fields this stops as soon as the rank is full; generators
/// of degree above `n` contribute nothing.
pub fn macaulay_rank(field: &Field, gens: &[&HomogPoly], n: u32) -> usize {
    let ncols = num_monomials(n);
    if field.is_prime_field() {
        let mut acc = PrimeRank::new(field.p(), ncols);
        for g in gens {
            if g.degree() > n {
                continue;
            }
            let terms: Vec<(u32, [u32; 3])> = g.terms().collect();
            for m in monomials(n - g.degree()) {
                acc.push_sparse(
                    terms
                        .iter()
                        .map(|&(c, e)| (monomial_index(e[0] + m[0], e[1] + m[1], n), c)),
                );
                if acc.is_full() {
                    return ncols;
                }
            }
        }
        acc.rank()
    } else {
        let mut rows = Vec::new();
        for g in gens {
            if g.degree() > n {
                continue;
            }
            for m in monomials(n - g.degree()) {
                let mut row = vec![0u32; ncols];
                for (c, e) in g.terms() {
                    row[monomial_index(e[0] + m[0], e[1] + m[1], n)] = c;
                }
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return 0;
        }
        rref(field, &mut rows).len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn degree_bound() {
        assert_eq!(macaulay_degree(&[1, 1, 1]), Some(1));
        assert_eq!(macaulay_degree(&[2, 2, 2]), Some(4));
        assert_eq!(macaulay_degree(&[2, 2, 2, 3, 3, 3, 3, 3, 3]), Some(7));
        assert_eq!(macaulay_degree(&[1, 1, 3, 3]), Some(5));
        assert_eq!(macaulay_degree(&[3, 3]), None);
    }

    #[test]
    fn irrelevant_ideal_is_empty() {
        let fl = f(7);
        let gens: Vec<_> = (0..3).map(|i| HomogPoly::var(&fl, i)).collect();
        assert!(is_projectively_empty(&gens).unwrap());
    }

    #[test]
    fn three_coordinate_points_survive() {
        let fl = f(7);
        let gens = vec![
            HomogPoly::monomial(&fl, [1, 1, 0], 1),
            HomogPoly::monomial(&fl, [1, 0, 1], 1),
            HomogPoly::monomial(&fl, [0, 1, 1], 1),
        ];
        assert!(!is_projectively_empty(&gens).unwrap());
    }

    #[test]
    fn conjugate_points_are_seen() {
        // x0^2 + x1^2 and x2 meet only over F_{7^2} (−1 is a non-square mod 7)
        let fl = f(7);
        let q = HomogPoly::from_terms(&fl, 2, &[(1, [2, 0, 0]), (1, [0, 2, 0])]).unwrap();
        let x2 = HomogPoly::var(&fl, 2);
        let x2sq = &x2 * &x2;
        assert!(!is_projectively_empty(&[q.clone(), x2.clone(), x2sq]).unwrap());
        let x0 = HomogPoly::var(&fl, 0);
        assert!(is_projectively_empty(&[q, x2, x0]).unwrap());
    }

    #[test]
    fn errors_and_degenerate_inputs() {
        let fl = f(5);
        assert_eq!(is_projectively_empty(&[]), Err(Error::NoGenerators));
        assert_eq!(
            is_projectively_empty(&[HomogPoly::zero(&fl, 2)]),
            Err(Error::AllZeroGenerators)
        );
        let x0 = HomogPoly::var(&fl, 0);
        let x1 = HomogPoly::var(&fl, 1);
        assert!(!is_projectively_empty(&[x0.clone(), x1]).unwrap());
        assert!(is_projectively_empty(&[x0, HomogPoly::constant(&fl, 2)]).unwrap());
    }

    #[test]
    fn extension_coefficients_use_generic_elimination() {
        let ext = Field::of(5, 2).unwrap();
        let gens: Vec<_> = (0..3).map(|i| HomogPoly::var(&ext, i)).collect();
        assert!(is_projectively_empty(&gens).unwrap());
    }
}
