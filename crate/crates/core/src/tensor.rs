//! Tensors of degree 2 and 3 over a free module on x, y, z, together with
//! the derivative slices, cyclic shifts, twists and witness computations the
//! superpotential calculus needs.
//!
//! A degree-3 tensor stores 27 coefficients indexed by 9i + 3j + k for the
//! word x_i x_j x_k, with x_0 = x, x_1 = y, x_2 = z. Degree-2 tensors use
//! 3i + j.

use crate::error::{Error, Result};
use crate::exactfield::matrix::ExactMatrix;
use crate::exactfield::{deeper_tower, FieldElement, Tower};

pub const LETTERS: [char; 3] = ['x', 'y', 'z'];

fn letter_index(ch: char) -> Result<usize> {
    LETTERS
        .iter()
        .position(|&c| c == ch)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown variable `{ch}`")))
}

pub fn word3_index(word: &str) -> Result<usize> {
    let chars: Vec<char> = word.chars().collect();
    if chars.len() != 3 {
        return Err(Error::InvalidArgument(format!(
            "expected a length-3 word, got `{word}`"
        )));
    }
    Ok(9 * letter_index(chars[0])? + 3 * letter_index(chars[1])? + letter_index(chars[2])?)
}

pub fn index_word3(idx: usize) -> String {
    debug_assert!(idx < 27);
    let (i, j, k) = (idx / 9, (idx / 3) % 3, idx % 3);
    [LETTERS[i], LETTERS[j], LETTERS[k]].iter().collect()
}

pub fn word2_index(word: &str) -> Result<usize> {
    let chars: Vec<char> = word.chars().collect();
    if chars.len() != 2 {
        return Err(Error::InvalidArgument(format!(
            "expected a length-2 word, got `{word}`"
        )));
    }
    Ok(3 * letter_index(chars[0])? + letter_index(chars[1])?)
}

pub fn index_word2(idx: usize) -> String {
    debug_assert!(idx < 9);
    [LETTERS[idx / 3], LETTERS[idx % 3]].iter().collect()
}

/// A linear substitution on the variables: x_j maps to the j-th column,
/// i.e. x_j -> sum_i m[i][j] x_i.
#[derive(Debug, Clone, PartialEq)]
pub struct LinMap {
    matrix: ExactMatrix,
}

impl LinMap {
    pub fn new(matrix: ExactMatrix) -> Result<LinMap> {
        if matrix.nrows() != 3 || matrix.ncols() != 3 {
            return Err(Error::InvalidArgument("substitution must be 3x3".into()));
        }
        Ok(LinMap { matrix })
    }

    pub fn identity(tower: &Tower) -> LinMap {
        LinMap {
            matrix: ExactMatrix::identity(tower, 3),
        }
    }

    pub fn diagonal(tower: &Tower, d: [FieldElement; 3]) -> Result<LinMap> {
        let mut m = ExactMatrix::zero(tower, 3, 3);
        for (i, v) in d.into_iter().enumerate() {
            m.set(i, i, v);
        }
        LinMap::new(m)
    }

    pub fn from_rows(tower: &Tower, rows: [[FieldElement; 3]; 3]) -> Result<LinMap> {
        let rows: Vec<Vec<FieldElement>> = rows.into_iter().map(|r| r.to_vec()).collect();
        LinMap::new(ExactMatrix::from_rows(tower, &rows)?)
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn tower(&self) -> &Tower {
        self.matrix.tower()
    }

    /// Applies `self` after `other`.
    pub fn compose(&self, other: &LinMap) -> Result<LinMap> {
        LinMap::new(self.matrix.matmul(&other.matrix)?)
    }

    pub fn inverse(&self) -> Result<LinMap> {
        match self.matrix.inverse()? {
            Some(m) => LinMap::new(m),
            None => Err(Error::SingularMap),
        }
    }

    pub fn is_invertible(&self) -> Result<bool> {
        Ok(self.matrix.rank()? == 3)
    }

    pub fn scale(&self, c: &FieldElement) -> LinMap {
        LinMap {
            matrix: self.matrix.scale(c),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Tensor2 {
    tower: Tower,
    coeffs: Vec<FieldElement>,
}

#[derive(Debug, Clone)]
pub struct Tensor3 {
    tower: Tower,
    coeffs: Vec<FieldElement>,
}

impl PartialEq for Tensor2 {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl PartialEq for Tensor3 {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

macro_rules! tensor_common {
    ($ty:ident, $len:expr, $index_word:ident, $word_index:ident) => {
        impl $ty {
            pub fn zero(tower: &Tower) -> $ty {
                $ty {
                    tower: tower.clone(),
                    coeffs: vec![tower.zero(); $len],
                }
            }

            pub fn from_terms(tower: &Tower, terms: &[(&str, FieldElement)]) -> Result<$ty> {
                let mut t = $ty::zero(tower);
                for (word, c) in terms {
                    let idx = $word_index(word)?;
                    t.coeffs[idx] = &t.coeffs[idx] + &c.lift_to(tower)?;
                }
                Ok(t)
            }

            pub fn tower(&self) -> &Tower {
                &self.tower
            }

            pub fn coeffs(&self) -> &[FieldElement] {
                &self.coeffs
            }

            pub fn coeff(&self, word: &str) -> Result<&FieldElement> {
                Ok(&self.coeffs[$word_index(word)?])
            }

            pub fn coeff_at(&self, idx: usize) -> &FieldElement {
                &self.coeffs[idx]
            }

            pub fn set_coeff(&mut self, word: &str, v: FieldElement) -> Result<()> {
                self.coeffs[$word_index(word)?] = v.lift_to(&self.tower)?;
                Ok(())
            }

            pub fn set_coeff_at(&mut self, idx: usize, v: FieldElement) {
                self.coeffs[idx] = v.lift_to(&self.tower).expect("coefficient tower");
            }

            pub fn is_zero(&self) -> bool {
                self.coeffs.iter().all(|c| c.is_zero())
            }

            pub fn scale(&self, s: &FieldElement) -> $ty {
                $ty {
                    tower: deeper_tower(&self.tower, s.tower()).expect("related towers"),
                    coeffs: self.coeffs.iter().map(|c| c * s).collect(),
                }
            }

            pub fn add(&self, other: &$ty) -> $ty {
                $ty {
                    tower: deeper_tower(&self.tower, &other.tower).expect("related towers"),
                    coeffs: self
                        .coeffs
                        .iter()
                        .zip(other.coeffs.iter())
                        .map(|(a, b)| a + b)
                        .collect(),
                }
            }

            pub fn sub(&self, other: &$ty) -> $ty {
                $ty {
                    tower: deeper_tower(&self.tower, &other.tower).expect("related towers"),
                    coeffs: self
                        .coeffs
                        .iter()
                        .zip(other.coeffs.iter())
                        .map(|(a, b)| a - b)
                        .collect(),
                }
            }

            pub fn lift_to(&self, tower: &Tower) -> Result<$ty> {
                Ok($ty {
                    tower: tower.clone(),
                    coeffs: self
                        .coeffs
                        .iter()
                        .map(|c| c.lift_to(tower))
                        .collect::<Result<Vec<_>>>()?,
                })
            }

            /// The scalar mu with `self = mu * other`, when it exists.
            pub fn proportional_to(&self, other: &$ty) -> Result<Option<FieldElement>> {
                let Some(k) = other.coeffs.iter().position(|c| !c.is_zero()) else {
                    return Ok(if self.is_zero() {
                        Some(self.tower.one())
                    } else {
                        None
                    });
                };
                let mu = self.coeffs[k].div(&other.coeffs[k])?;
                if self.sub(&other.scale(&mu).lift_to(&self.tower)?).is_zero() {
                    Ok(Some(mu))
                } else {
                    Ok(None)
                }
            }

            /// Sorted `[word, coefficient]` pairs, zero terms omitted.
            pub fn to_json(&self) -> serde_json::Value {
                let mut terms = Vec::new();
                for (idx, c) in self.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    terms.push(serde_json::json!([$index_word(idx), c.to_json()]));
                }
                serde_json::Value::Array(terms)
            }

            pub fn from_json(tower: &Tower, v: &serde_json::Value) -> Result<$ty> {
                let serde_json::Value::Array(items) = v else {
                    return Err(Error::InvalidArgument(
                        "expected an array of [word, coefficient] pairs".into(),
                    ));
                };
                let mut t = $ty::zero(tower);
                for item in items {
                    let serde_json::Value::Array(pair) = item else {
                        return Err(Error::InvalidArgument(
                            "expected a [word, coefficient] pair".into(),
                        ));
                    };
                    let [w, c] = pair.as_slice() else {
                        return Err(Error::InvalidArgument(
                            "expected a [word, coefficient] pair".into(),
                        ));
                    };
                    let serde_json::Value::String(word) = w else {
                        return Err(Error::InvalidArgument("word must be a string".into()));
                    };
                    let idx = $word_index(word)?;
                    t.coeffs[idx] = FieldElement::from_json(tower, c)?;
                }
                Ok(t)
            }
        }

        impl std::fmt::Display for $ty {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                let mut first = true;
                for (idx, c) in self.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    let cs = c.to_string();
                    let word = $index_word(idx);
                    if cs == "1" {
                        write!(f, "{word}")?;
                    } else if cs == "-1" {
                        write!(f, "-{word}")?;
                    } else if cs.contains(' ') {
                        write!(f, "({cs})*{word}")?;
                    } else {
                        write!(f, "{cs}*{word}")?;
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    };
}

tensor_common!(Tensor2, 9, index_word2, word2_index);
tensor_common!(Tensor3, 27, index_word3, word3_index);

impl Tensor2 {
    /// Substitute m1 on the first slot and m2 on the second.
    pub fn apply2(&self, m1: &LinMap, m2: &LinMap) -> Result<Tensor2> {
        let target = deeper_tower(
            &deeper_tower(&self.tower, m1.tower())?,
            m2.tower(),
        )?;
        let mut out = Tensor2::zero(&target);
        for a in 0..3 {
            for b in 0..3 {
                let w = &self.coeffs[3 * a + b];
                if w.is_zero() {
                    continue;
                }
                for i in 0..3 {
                    let f1 = m1.matrix().at(i, a);
                    if f1.is_zero() {
                        continue;
                    }
                    for j in 0..3 {
                        let f2 = m2.matrix().at(j, b);
                        if f2.is_zero() {
                            continue;
                        }
                        let idx = 3 * i + j;
                        out.coeffs[idx] = &out.coeffs[idx] + &(&(f1 * f2) * w);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl Tensor3 {
    /// a(xyz + yzx + zxy) + b(xzy + yxz + zyx) + c(xxx + yyy + zzz).
    pub fn sklyanin(
        tower: &Tower,
        a: &FieldElement,
        b: &FieldElement,
        c: &FieldElement,
    ) -> Result<Tensor3> {
        Tensor3::from_terms(
            tower,
            &[
                ("xyz", a.clone()),
                ("yzx", a.clone()),
                ("zxy", a.clone()),
                ("xzy", b.clone()),
                ("yxz", b.clone()),
                ("zyx", b.clone()),
                ("xxx", c.clone()),
                ("yyy", c.clone()),
                ("zzz", c.clone()),
            ],
        )
    }

    /// Strip x_i from the front: rows of w starting with x_i.
    pub fn left_deriv(&self, i: usize) -> Tensor2 {
        debug_assert!(i < 3);
        let mut d = Tensor2::zero(&self.tower);
        for j in 0..3 {
            for k in 0..3 {
                d.coeffs[3 * j + k] = self.coeffs[9 * i + 3 * j + k].clone();
            }
        }
        d
    }

    /// Strip x_i from the back: rows of w ending with x_i.
    pub fn right_deriv(&self, i: usize) -> Tensor2 {
        debug_assert!(i < 3);
        let mut d = Tensor2::zero(&self.tower);
        for j in 0..3 {
            for k in 0..3 {
                d.coeffs[3 * j + k] = self.coeffs[9 * j + 3 * k + i].clone();
            }
        }
        d
    }

    /// The shift sending the word ijk to the coefficient of jki.
    pub fn cyclic(&self) -> Tensor3 {
        let mut out = Tensor3::zero(&self.tower);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    out.coeffs[9 * i + 3 * j + k] = self.coeffs[9 * j + 3 * k + i].clone();
                }
            }
        }
        out
    }

    pub fn is_superpotential(&self) -> bool {
        self.cyclic() == *self
    }

    /// Substitute three (possibly different) linear maps on the three slots.
    pub fn apply3(&self, m1: &LinMap, m2: &LinMap, m3: &LinMap) -> Result<Tensor3> {
        let target = deeper_tower(
            &deeper_tower(&deeper_tower(&self.tower, m1.tower())?, m2.tower())?,
            m3.tower(),
        )?;
        let mut out = Tensor3::zero(&target);
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let w = &self.coeffs[9 * a + 3 * b + c];
                    if w.is_zero() {
                        continue;
                    }
                    for i in 0..3 {
                        let f1 = m1.matrix().at(i, a);
                        if f1.is_zero() {
                            continue;
                        }
                        for j in 0..3 {
                            let f2 = m2.matrix().at(j, b);
                            if f2.is_zero() {
                                continue;
                            }
                            let f12 = f1 * f2;
                            for k in 0..3 {
                                let f3 = m3.matrix().at(k, c);
                                if f3.is_zero() {
                                    continue;
                                }
                                let idx = 9 * i + 3 * j + k;
                                out.coeffs[idx] = &out.coeffs[idx] + &(&(&f12 * f3) * w);
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The twist (theta^2, theta, id) applied slotwise.
    pub fn ms_twist(&self, theta: &LinMap) -> Result<Tensor3> {
        let theta2 = theta.compose(theta)?;
        let id = LinMap::identity(theta.tower());
        self.apply3(&theta2, theta, &id)
    }

    /// The scalar by which a slotwise substitution rescales the tensor,
    /// when it does.
    pub fn aut_scalar(&self, m: &LinMap) -> Result<Option<FieldElement>> {
        let moved = self.apply3(m, m, m)?;
        moved.proportional_to(&self.lift_to(moved.tower())?)
    }

    /// The matrix Q with (d1 w, d2 w, d3 w) = Q ((w)d1, (w)d2, (w)d3),
    /// acting on left partials from the right-partial triple. Requires the
    /// left partials to be linearly independent; returns `None` when no
    /// invertible Q exists.
    pub fn tsp_witness(&self) -> Result<Option<ExactMatrix>> {
        let lefts: Vec<Tensor2> = (0..3).map(|i| self.left_deriv(i)).collect();
        let left_rows: Vec<Vec<FieldElement>> =
            lefts.iter().map(|d| d.coeffs.to_vec()).collect();
        let lm = ExactMatrix::from_rows(&self.tower, &left_rows)?;
        if lm.rank()? != 3 {
            return Err(Error::DependentDerivatives);
        }
        // 9x3 system: columns are the right partials
        let mut rm = ExactMatrix::zero(&self.tower, 9, 3);
        for j in 0..3 {
            let d = self.right_deriv(j);
            for r in 0..9 {
                rm.set(r, j, d.coeffs[r].clone());
            }
        }
        let mut q = ExactMatrix::zero(&self.tower, 3, 3);
        for (i, left) in lefts.iter().enumerate() {
            match rm.solve(&left.coeffs)? {
                Some(sol) => {
                    for (j, v) in sol.iter().enumerate() {
                        q.set(i, j, v.clone());
                    }
                }
                None => return Ok(None),
            }
        }
        if q.rank()? != 3 {
            return Ok(None);
        }
        Ok(Some(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Tower {
        Tower::rationals()
    }

    fn swap_map(t: &Tower) -> LinMap {
        LinMap::from_rows(
            t,
            [
                [t.int(0), t.int(1), t.int(0)],
                [t.int(1), t.int(0), t.int(0)],
                [t.int(0), t.int(0), t.int(1)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn word_indexing_round_trips() {
        for idx in 0..27 {
            assert_eq!(word3_index(&index_word3(idx)).unwrap(), idx);
        }
        for idx in 0..9 {
            assert_eq!(word2_index(&index_word2(idx)).unwrap(), idx);
        }
        assert_eq!(word3_index("xyz").unwrap(), 5);
        assert_eq!(word3_index("zzz").unwrap(), 26);
        assert!(word3_index("xy").is_err());
        assert!(word2_index("xw").is_err());
    }

    #[test]
    fn derivatives_of_a_single_word() {
        let t = q();
        let w = Tensor3::from_terms(&t, &[("xyz", t.int(1))]).unwrap();
        let dx = w.left_deriv(0);
        assert_eq!(dx.coeff("yz").unwrap(), &t.int(1));
        assert!(w.left_deriv(1).is_zero());
        let rz = w.right_deriv(2);
        assert_eq!(rz.coeff("xy").unwrap(), &t.int(1));
        assert!(w.right_deriv(0).is_zero());
    }

    #[test]
    fn tensors_reassemble_from_either_derivative() {
        let t = q();
        let mut w = Tensor3::zero(&t);
        for idx in 0..27 {
            w.coeffs[idx] = t.int((idx as i64 * 7 + 3) % 11 - 5);
        }
        for i in 0..3 {
            let ld = w.left_deriv(i);
            let rd = w.right_deriv(i);
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(w.coeffs[9 * i + 3 * j + k], ld.coeffs[3 * j + k]);
                    assert_eq!(w.coeffs[9 * j + 3 * k + i], rd.coeffs[3 * j + k]);
                }
            }
        }
    }

    #[test]
    fn cyclic_shift_has_order_three() {
        let t = q();
        let mut w = Tensor3::zero(&t);
        for idx in 0..27 {
            w.coeffs[idx] = t.int((idx as i64 * 5 + 1) % 13);
        }
        let c1 = w.cyclic();
        let c3 = c1.cyclic().cyclic();
        assert_ne!(c1, w);
        assert_eq!(c3, w);
        // a cyclically symmetrized tensor is a superpotential
        let sym = w.add(&c1).add(&c1.cyclic());
        assert!(sym.is_superpotential());
    }

    #[test]
    fn sklyanin_tensors_are_superpotentials() {
        let t = q();
        let w = Tensor3::sklyanin(&t, &t.int(1), &t.int(2), &t.int(3)).unwrap();
        assert!(w.is_superpotential());
        assert_eq!(w.coeff("xyz").unwrap(), &t.int(1));
        assert_eq!(w.coeff("zyx").unwrap(), &t.int(2));
        assert_eq!(w.coeff("yyy").unwrap(), &t.int(3));
        assert_eq!(w.coeff("xxy").unwrap(), &t.int(0));
    }

    #[test]
    fn superpotential_witness_is_the_identity() {
        let t = q();
        let w = Tensor3::sklyanin(&t, &t.int(1), &t.int(2), &t.int(3)).unwrap();
        let q = w.tsp_witness().unwrap().unwrap();
        assert_eq!(q, ExactMatrix::identity(&t, 3));
    }

    #[test]
    fn twist_of_the_diagonal_sklyanin_tensor() {
        // theta = the x/y swap; the twist permutes words slotwise in the middle
        let t = q();
        let c = t.int(5);
        let w = Tensor3::sklyanin(&t, &t.int(1), &t.int(1), &c).unwrap();
        let tw = w.ms_twist(&swap_map(&t)).unwrap();
        let expect = Tensor3::from_terms(
            &t,
            &[
                ("xxz", t.int(1)),
                ("yzx", t.int(1)),
                ("zyy", t.int(1)),
                ("xzy", t.int(1)),
                ("yyz", t.int(1)),
                ("zxx", t.int(1)),
                ("xyx", c.clone()),
                ("yxy", c.clone()),
                ("zzz", c.clone()),
            ],
        )
        .unwrap();
        assert_eq!(tw, expect);
        assert!(!tw.is_superpotential());
    }

    #[test]
    fn twisted_tensor_witness_is_the_swap() {
        let t = q();
        let w = Tensor3::sklyanin(&t, &t.int(1), &t.int(1), &t.int(5)).unwrap();
        let tw = w.ms_twist(&swap_map(&t)).unwrap();
        // left partials match right partials after swapping the first two
        let q = tw.tsp_witness().unwrap().unwrap();
        assert_eq!(q, swap_map(&t).matrix().clone());
    }

    #[test]
    fn dependent_derivatives_are_rejected() {
        let t = q();
        let w = Tensor3::from_terms(&t, &[("xxx", t.int(1))]).unwrap();
        assert_eq!(w.tsp_witness().unwrap_err(), Error::DependentDerivatives);
    }

    #[test]
    fn witness_can_be_missing() {
        let t = q();
        // independent left partials but no linear relation to the right ones
        let w = Tensor3::from_terms(
            &t,
            &[
                ("xyz", t.int(1)),
                ("yzx", t.int(2)),
                ("zxy", t.int(3)),
                ("xxx", t.int(1)),
            ],
        )
        .unwrap();
        assert_eq!(w.tsp_witness().unwrap(), None);
    }

    #[test]
    fn slotwise_scaling_detection() {
        let t = q();
        let sym = Tensor3::sklyanin(&t, &t.int(1), &t.int(1), &t.int(5)).unwrap();
        let asym = Tensor3::sklyanin(&t, &t.int(1), &t.int(2), &t.int(5)).unwrap();
        let s = swap_map(&t);
        assert_eq!(sym.aut_scalar(&s).unwrap(), Some(t.one()));
        assert_eq!(asym.aut_scalar(&s).unwrap(), None);
        let two = LinMap::diagonal(&t, [t.int(2), t.int(2), t.int(2)]).unwrap();
        assert_eq!(asym.aut_scalar(&two).unwrap(), Some(t.int(8)));
    }

    #[test]
    fn apply2_substitutes_each_slot() {
        let t = q();
        let f = Tensor2::from_terms(&t, &[("xy", t.int(1))]).unwrap();
        let s = swap_map(&t);
        let id = LinMap::identity(&t);
        let g = f.apply2(&s, &id).unwrap();
        assert_eq!(g.coeff("yy").unwrap(), &t.int(1));
        let h = f.apply2(&id, &s).unwrap();
        assert_eq!(h.coeff("xx").unwrap(), &t.int(1));
    }

    #[test]
    fn tensor_serialization_round_trip() {
        let tower = Tower::standard();
        let eta = tower.generator("eta").unwrap();
        let w = Tensor3::from_terms(
            &tower,
            &[
                ("xzx", tower.one()),
                ("zxx", eta.clone()),
                ("xxz", eta.pow(8).unwrap()),
            ],
        )
        .unwrap();
        let j = w.to_json();
        let back = Tensor3::from_json(&tower, &j).unwrap();
        assert_eq!(back, w);
        // zero coefficients are omitted
        let serde_json::Value::Array(items) = &j else {
            panic!("expected array");
        };
        assert_eq!(items.len(), 3);
    }

    #[test]
    fn linmap_inverse_and_compose() {
        let t = q();
        let m = LinMap::from_rows(
            &t,
            [
                [t.int(1), t.int(2), t.int(0)],
                [t.int(0), t.int(1), t.int(0)],
                [t.int(0), t.int(0), t.int(3)],
            ],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        let prod = m.compose(&inv).unwrap();
        assert_eq!(prod, LinMap::identity(&t));
        let sing = LinMap::from_rows(
            &t,
            [
                [t.int(1), t.int(1), t.int(0)],
                [t.int(1), t.int(1), t.int(0)],
                [t.int(0), t.int(0), t.int(1)],
            ],
        )
        .unwrap();
        assert_eq!(sing.inverse().unwrap_err(), Error::SingularMap);
    }
}
