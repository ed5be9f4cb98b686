//! Dimension counts for quadratic algebras T(V)/(R) with dim V = 3.
//!
//! In degree n the spanning rows are V^a (x) R (x) V^b over a + b = n - 2;
//! the algebra dimension is 3^n minus their rank.

use crate::error::{Error, Result};
use crate::exactfield::matrix::sparse_rank;
use crate::tensor::Tensor2;

pub const MAX_DEGREE: usize = 5;

pub fn hilbert_dims(relations: &[Tensor2], nmax: usize) -> Result<Vec<usize>> {
    if nmax > MAX_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "degree {nmax} exceeds the supported bound {MAX_DEGREE}"
        )));
    }
    let mut out = vec![1usize];
    if nmax >= 1 {
        out.push(3);
    }
    for n in 2..=nmax {
        let total = 3usize.pow(n as u32);
        let mut rows = Vec::new();
        for a in 0..=(n - 2) {
            let b = n - 2 - a;
            let left = 3usize.pow(a as u32);
            let right = 3usize.pow(b as u32);
            for u in 0..left {
                for w in 0..right {
                    for f in relations {
                        let mut row = Vec::with_capacity(9);
                        for m in 0..9 {
                            let c = f.coeff_at(m);
                            if c.is_zero() {
                                continue;
                            }
                            row.push(((u * 9 + m) * right + w, c.clone()));
                        }
                        if !row.is_empty() {
                            rows.push(row);
                        }
                    }
                }
            }
        }
        let rank = sparse_rank(rows)?;
        out.push(total - rank);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Tower;

    #[test]
    fn free_algebra_dimensions() {
        assert_eq!(hilbert_dims(&[], 4).unwrap(), vec![1, 3, 9, 27, 81]);
    }

    #[test]
    fn commutative_polynomial_dimensions() {
        let t = Tower::rationals();
        let rels = [
            Tensor2::from_terms(&t, &[("xy", t.int(1)), ("yx", t.int(-1))]).unwrap(),
            Tensor2::from_terms(&t, &[("xz", t.int(1)), ("zx", t.int(-1))]).unwrap(),
            Tensor2::from_terms(&t, &[("yz", t.int(1)), ("zy", t.int(-1))]).unwrap(),
        ];
        assert_eq!(hilbert_dims(&rels, 4).unwrap(), vec![1, 3, 6, 10, 15]);
    }

    #[test]
    fn monomial_relations() {
        let t = Tower::rationals();
        let rels = [
            Tensor2::from_terms(&t, &[("xy", t.int(1))]).unwrap(),
            Tensor2::from_terms(&t, &[("yx", t.int(1))]).unwrap(),
            Tensor2::from_terms(&t, &[("xx", t.int(1))]).unwrap(),
        ];
        assert_eq!(hilbert_dims(&rels, 3).unwrap(), vec![1, 3, 6, 14]);
    }

    #[test]
    fn degree_bound_is_enforced() {
        assert!(hilbert_dims(&[], MAX_DEGREE + 1).is_err());
        assert_eq!(hilbert_dims(&[], 0).unwrap(), vec![1]);
        assert_eq!(hilbert_dims(&[], 1).unwrap(), vec![1, 3]);
    }
}
