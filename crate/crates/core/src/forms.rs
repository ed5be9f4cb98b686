//! Dense homogeneous forms in three commuting variables x, y, z.
//!
//! Quadratic monomial order: x2, y2, z2, xy, xz, yz.
//! Cubic monomial order: x3, y3, z3, x2y, x2z, xy2, y2z, xz2, yz2, xyz.

use crate::error::{Error, Result};
use crate::exactfield::matrix::ExactMatrix;
use crate::exactfield::{FieldElement, Tower};

pub const DEG2_MONOMIALS: [[u8; 3]; 6] = [
    [2, 0, 0],
    [0, 2, 0],
    [0, 0, 2],
    [1, 1, 0],
    [1, 0, 1],
    [0, 1, 1],
];

pub const DEG3_MONOMIALS: [[u8; 3]; 10] = [
    [3, 0, 0],
    [0, 3, 0],
    [0, 0, 3],
    [2, 1, 0],
    [2, 0, 1],
    [1, 2, 0],
    [0, 2, 1],
    [1, 0, 2],
    [0, 1, 2],
    [1, 1, 1],
];

pub fn deg2_index(e: [u8; 3]) -> usize {
    DEG2_MONOMIALS
        .iter()
        .position(|m| *m == e)
        .expect("exponents of total degree 2")
}

pub fn deg3_index(e: [u8; 3]) -> usize {
    DEG3_MONOMIALS
        .iter()
        .position(|m| *m == e)
        .expect("exponents of total degree 3")
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadForm {
    tower: Tower,
    coeffs: Vec<FieldElement>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CubicForm {
    tower: Tower,
    coeffs: Vec<FieldElement>,
}

impl QuadForm {
    pub fn zero(tower: &Tower) -> QuadForm {
        QuadForm {
            tower: tower.clone(),
            coeffs: vec![tower.zero(); 6],
        }
    }

    pub fn from_coeffs(tower: &Tower, coeffs: [FieldElement; 6]) -> Result<QuadForm> {
        let coeffs = coeffs
            .iter()
            .map(|c| c.lift_to(tower))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuadForm {
            tower: tower.clone(),
            coeffs,
        })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, e: [u8; 3]) -> &FieldElement {
        &self.coeffs[deg2_index(e)]
    }

    pub fn set_coeff(&mut self, e: [u8; 3], v: FieldElement) {
        self.coeffs[deg2_index(e)] = v.lift_to(&self.tower).expect("coefficient tower");
    }

    pub fn eval(&self, p: &[FieldElement; 3]) -> FieldElement {
        let mut acc = self.tower.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let [a, b, g] = DEG2_MONOMIALS[i];
            let mut term = c.clone();
            for _ in 0..a {
                term = &term * &p[0];
            }
            for _ in 0..b {
                term = &term * &p[1];
            }
            for _ in 0..g {
                term = &term * &p[2];
            }
            acc = &acc + &term;
        }
        acc
    }

    /// The form q(Mx) where (Mx)_a = sum_b m[a][b] x_b.
    pub fn compose_linear(&self, m: &ExactMatrix) -> Result<QuadForm> {
        if m.nrows() != 3 || m.ncols() != 3 {
            return Err(Error::InvalidArgument("expected a 3x3 matrix".into()));
        }
        let rows: [[FieldElement; 3]; 3] = [row3(m, 0)?, row3(m, 1)?, row3(m, 2)?];
        let mut out = QuadForm::zero(&self.tower);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let [a, b, g] = DEG2_MONOMIALS[i];
            let mut factors: Vec<&[FieldElement; 3]> = Vec::new();
            for _ in 0..a {
                factors.push(&rows[0]);
            }
            for _ in 0..b {
                factors.push(&rows[1]);
            }
            for _ in 0..g {
                factors.push(&rows[2]);
            }
            let q = lin_lin_mul(&self.tower, factors[0], factors[1])?;
            for (k, qc) in q.coeffs.iter().enumerate() {
                out.coeffs[k] = &out.coeffs[k] + &(c * qc);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl CubicForm {
    pub fn zero(tower: &Tower) -> CubicForm {
        CubicForm {
            tower: tower.clone(),
            coeffs: vec![tower.zero(); 10],
        }
    }

    pub fn from_coeffs(tower: &Tower, coeffs: [FieldElement; 10]) -> Result<CubicForm> {
        let coeffs = coeffs
            .iter()
            .map(|c| c.lift_to(tower))
            .collect::<Result<Vec<_>>>()?;
        Ok(CubicForm {
            tower: tower.clone(),
            coeffs,
        })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, e: [u8; 3]) -> &FieldElement {
        &self.coeffs[deg3_index(e)]
    }

    pub fn lift_to(&self, tower: &Tower) -> Result<CubicForm> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.lift_to(tower))
            .collect::<Result<Vec<_>>>()?;
        Ok(CubicForm {
            tower: tower.clone(),
            coeffs,
        })
    }

    pub fn eval(&self, p: &[FieldElement; 3]) -> FieldElement {
        let mut acc = self.tower.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let [a, b, g] = DEG3_MONOMIALS[i];
            let mut term = c.clone();
            for _ in 0..a {
                term = &term * &p[0];
            }
            for _ in 0..b {
                term = &term * &p[1];
            }
            for _ in 0..g {
                term = &term * &p[2];
            }
            acc = &acc + &term;
        }
        acc
    }

    pub fn scale(&self, s: &FieldElement) -> CubicForm {
        CubicForm {
            tower: self.tower.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn sub(&self, other: &CubicForm) -> CubicForm {
        CubicForm {
            tower: self.tower.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(other.coeffs.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The form c(Mx).
    pub fn compose_linear(&self, m: &ExactMatrix) -> Result<CubicForm> {
        if m.nrows() != 3 || m.ncols() != 3 {
            return Err(Error::InvalidArgument("expected a 3x3 matrix".into()));
        }
        let rows: [[FieldElement; 3]; 3] = [row3(m, 0)?, row3(m, 1)?, row3(m, 2)?];
        let mut out = CubicForm::zero(&self.tower);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let [a, b, g] = DEG3_MONOMIALS[i];
            let mut factors: Vec<&[FieldElement; 3]> = Vec::new();
            for _ in 0..a {
                factors.push(&rows[0]);
            }
            for _ in 0..b {
                factors.push(&rows[1]);
            }
            for _ in 0..g {
                factors.push(&rows[2]);
            }
            let q = lin_lin_mul(&self.tower, factors[0], factors[1])?;
            let cu = quad_lin_mul(&q, factors[2])?;
            for (k, cc) in cu.coeffs.iter().enumerate() {
                out.coeffs[k] = &out.coeffs[k] + &(c * cc);
            }
        }
        Ok(out)
    }
}

fn row3(m: &ExactMatrix, i: usize) -> Result<[FieldElement; 3]> {
    Ok([
        m.at(i, 0).clone(),
        m.at(i, 1).clone(),
        m.at(i, 2).clone(),
    ])
}

/// Product of two linear forms.
pub fn lin_lin_mul(tower: &Tower, a: &[FieldElement; 3], b: &[FieldElement; 3]) -> Result<QuadForm> {
    let mut q = QuadForm::zero(tower);
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let mut e = [0u8; 3];
            e[i] += 1;
            e[j] += 1;
            let k = deg2_index(e);
            q.coeffs[k] = &q.coeffs[k] + &(ai * bj);
        }
    }
    Ok(q)
}

/// Product of a quadratic and a linear form.
pub fn quad_lin_mul(q: &QuadForm, l: &[FieldElement; 3]) -> Result<CubicForm> {
    let mut out = CubicForm::zero(&q.tower);
    for (i, qc) in q.coeffs.iter().enumerate() {
        if qc.is_zero() {
            continue;
        }
        for (j, lc) in l.iter().enumerate() {
            if lc.is_zero() {
                continue;
            }
            let mut e = DEG2_MONOMIALS[i];
            e[j] += 1;
            let k = deg3_index(e);
            out.coeffs[k] = &out.coeffs[k] + &(qc * lc);
        }
    }
    Ok(out)
}

/// The scalar mu with `a = mu * b`, when it exists.
pub fn proportional(a: &CubicForm, b: &CubicForm) -> Result<Option<FieldElement>> {
    let Some(k) = b.coeffs.iter().position(|c| !c.is_zero()) else {
        return Ok(if a.is_zero() {
            Some(a.tower.one())
        } else {
            None
        });
    };
    let mu = a.coeffs[k].div(&b.coeffs[k])?;
    if a.sub(&b.scale(&mu)).is_zero() {
        Ok(Some(mu))
    } else {
        Ok(None)
    }
}
