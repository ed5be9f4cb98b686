//! Exact arithmetic in towers of algebraic extensions of the rationals.
//!
//! A [`Tower`] is a chain Q = T0 < T1 < ... < Tn where each step adjoins a
//! root of a monic polynomial with coefficients one level down. Elements are
//! dense nested coefficient vectors, reduced after every product, so equality
//! of reduced representations is equality in the field.
//!
//! Adjunction is dynamic: no irreducibility test is run. If an adjoined
//! polynomial was reducible, the first inversion of a nonzero non-unit
//! reports [`Error::ZeroDivisor`] naming the offending level.

pub mod matrix;

use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar used at the base of every tower.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Val {
    Q(Rational),
    Ext(Vec<Val>),
}

/// One extension step: a named generator with its monic minimal polynomial.
/// `min_poly` holds the non-leading coefficients c0..c(d-1), one level down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    name: String,
    degree: usize,
    min_poly: Vec<Val>,
}

impl Level {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// A tower of successive algebraic extensions of Q.
#[derive(Debug, Clone)]
pub struct Tower {
    levels: Arc<Vec<Level>>,
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.levels, &other.levels) || self.levels == other.levels
    }
}

impl Eq for Tower {}

/// An element of a fixed tower, always kept in reduced canonical form.
#[derive(Debug, Clone)]
pub struct FieldElement {
    tower: Tower,
    val: Val,
}

fn zero_val(levels: &[Level]) -> Val {
    match levels.split_last() {
        None => Val::Q(Rational::zero()),
        Some((top, lower)) => Val::Ext((0..top.degree).map(|_| zero_val(lower)).collect()),
    }
}

fn rational_val(levels: &[Level], r: Rational) -> Val {
    match levels.split_last() {
        None => Val::Q(r),
        Some((top, lower)) => {
            let mut v: Vec<Val> = (0..top.degree).map(|_| zero_val(lower)).collect();
            v[0] = rational_val(lower, r);
            Val::Ext(v)
        }
    }
}

fn val_is_zero(v: &Val) -> bool {
    match v {
        Val::Q(r) => r.is_zero(),
        Val::Ext(c) => c.iter().all(val_is_zero),
    }
}

fn val_add(levels: &[Level], a: &Val, b: &Val) -> Val {
    match (levels.split_last(), a, b) {
        (None, Val::Q(x), Val::Q(y)) => Val::Q(x + y),
        (Some((_, lower)), Val::Ext(x), Val::Ext(y)) => Val::Ext(
            x.iter()
                .zip(y.iter())
                .map(|(p, q)| val_add(lower, p, q))
                .collect(),
        ),
        _ => unreachable!("value shape does not match tower"),
    }
}

fn val_neg(levels: &[Level], a: &Val) -> Val {
    match (levels.split_last(), a) {
        (None, Val::Q(x)) => Val::Q(-x),
        (Some((_, lower)), Val::Ext(x)) => Val::Ext(x.iter().map(|p| val_neg(lower, p)).collect()),
        _ => unreachable!("value shape does not match tower"),
    }
}

fn val_sub(levels: &[Level], a: &Val, b: &Val) -> Val {
    match (levels.split_last(), a, b) {
        (None, Val::Q(x), Val::Q(y)) => Val::Q(x - y),
        (Some((_, lower)), Val::Ext(x), Val::Ext(y)) => Val::Ext(
            x.iter()
                .zip(y.iter())
                .map(|(p, q)| val_sub(lower, p, q))
                .collect(),
        ),
        _ => unreachable!("value shape does not match tower"),
    }
}

fn val_mul(levels: &[Level], a: &Val, b: &Val) -> Val {
    match (levels.split_last(), a, b) {
        (None, Val::Q(x), Val::Q(y)) => Val::Q(x * y),
        (Some((top, lower)), Val::Ext(x), Val::Ext(y)) => {
            let d = top.degree;
            let mut prod: Vec<Val> = (0..2 * d - 1).map(|_| zero_val(lower)).collect();
            for (i, xi) in x.iter().enumerate() {
                if val_is_zero(xi) {
                    continue;
                }
                for (j, yj) in y.iter().enumerate() {
                    if val_is_zero(yj) {
                        continue;
                    }
                    let t = val_mul(lower, xi, yj);
                    prod[i + j] = val_add(lower, &prod[i + j], &t);
                }
            }
            // reduce with t^d = -(c0 + c1 t + ... + c(d-1) t^(d-1))
            for idx in (d..2 * d - 1).rev() {
                if val_is_zero(&prod[idx]) {
                    continue;
                }
                let c = std::mem::replace(&mut prod[idx], zero_val(lower));
                for (i, mc) in top.min_poly.iter().enumerate() {
                    if val_is_zero(mc) {
                        continue;
                    }
                    let t = val_mul(lower, &c, mc);
                    prod[idx - d + i] = val_sub(lower, &prod[idx - d + i], &t);
                }
            }
            prod.truncate(d);
            Val::Ext(prod)
        }
        _ => unreachable!("value shape does not match tower"),
    }
}

fn poly_trim(p: &mut Vec<Val>) {
    while p.last().is_some_and(val_is_zero) {
        p.pop();
    }
}

fn poly_sub(levels: &[Level], a: &[Val], b: &[Val]) -> Vec<Val> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| zero_val(levels));
        let y = b.get(i).cloned().unwrap_or_else(|| zero_val(levels));
        out.push(val_sub(levels, &x, &y));
    }
    poly_trim(&mut out);
    out
}

fn poly_mul(levels: &[Level], a: &[Val], b: &[Val]) -> Vec<Val> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out: Vec<Val> = (0..a.len() + b.len() - 1).map(|_| zero_val(levels)).collect();
    for (i, x) in a.iter().enumerate() {
        if val_is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if val_is_zero(y) {
                continue;
            }
            let t = val_mul(levels, x, y);
            out[i + j] = val_add(levels, &out[i + j], &t);
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_divmod(levels: &[Level], num: &[Val], den: &[Val]) -> Result<(Vec<Val>, Vec<Val>)> {
    debug_assert!(!den.is_empty());
    let lead_inv = val_inv(levels, den.last().unwrap())?;
    let mut rem: Vec<Val> = num.to_vec();
    poly_trim(&mut rem);
    let dd = den.len() - 1;
    if rem.len() < den.len() {
        return Ok((vec![], rem));
    }
    let mut quot: Vec<Val> = (0..rem.len() - dd).map(|_| zero_val(levels)).collect();
    while rem.len() >= den.len() {
        let k = rem.len() - 1;
        let c = val_mul(levels, &rem[k], &lead_inv);
        if !val_is_zero(&c) {
            let shift = k - dd;
            for (i, dc) in den.iter().enumerate().take(dd) {
                if val_is_zero(dc) {
                    continue;
                }
                let t = val_mul(levels, &c, dc);
                rem[shift + i] = val_sub(levels, &rem[shift + i], &t);
            }
            quot[shift] = c;
        }
        rem.pop();
        poly_trim(&mut rem);
    }
    poly_trim(&mut quot);
    Ok((quot, rem))
}

fn val_inv(levels: &[Level], a: &Val) -> Result<Val> {
    match (levels.split_last(), a) {
        (None, Val::Q(r)) => {
            if r.is_zero() {
                Err(Error::DivisionByZero)
            } else {
                Ok(Val::Q(r.recip()))
            }
        }
        (Some((top, lower)), Val::Ext(coeffs)) => {
            let mut r1: Vec<Val> = coeffs.clone();
            poly_trim(&mut r1);
            if r1.is_empty() {
                return Err(Error::DivisionByZero);
            }
            // fast path: the element lives one level down
            if r1.len() == 1 {
                let inv0 = val_inv(lower, &r1[0])?;
                let mut out: Vec<Val> = (0..top.degree).map(|_| zero_val(lower)).collect();
                out[0] = inv0;
                return Ok(Val::Ext(out));
            }
            let mut r0: Vec<Val> = top.min_poly.clone();
            r0.push(rational_val(lower, Rational::one()));
            let mut t0: Vec<Val> = vec![];
            let mut t1: Vec<Val> = vec![rational_val(lower, Rational::one())];
            while !r1.is_empty() {
                let (q, r2) = poly_divmod(lower, &r0, &r1)?;
                let t2 = poly_sub(lower, &t0, &poly_mul(lower, &q, &t1));
                r0 = std::mem::replace(&mut r1, r2);
                t0 = std::mem::replace(&mut t1, t2);
            }
            // r0 = gcd(a, min_poly) with t0 * a = r0 (mod min_poly)
            if r0.len() == 1 {
                let s = val_inv(lower, &r0[0])?;
                let mut out: Vec<Val> = t0.iter().map(|c| val_mul(lower, c, &s)).collect();
                debug_assert!(out.len() <= top.degree);
                out.resize(top.degree, zero_val(lower));
                Ok(Val::Ext(out))
            } else {
                Err(Error::ZeroDivisor {
                    level: top.name.clone(),
                })
            }
        }
        _ => unreachable!("value shape does not match tower"),
    }
}

fn lift_val(from: &[Level], to: &[Level], val: Val) -> Val {
    debug_assert!(from.len() <= to.len());
    let mut v = val;
    for k in from.len()..to.len() {
        let top = &to[k];
        let lower = &to[..k];
        let mut coeffs: Vec<Val> = (0..top.degree).map(|_| zero_val(lower)).collect();
        coeffs[0] = v;
        v = Val::Ext(coeffs);
    }
    v
}

fn val_to_json(v: &Val) -> serde_json::Value {
    match v {
        Val::Q(r) => serde_json::Value::String(format!("{}/{}", r.numer(), r.denom())),
        Val::Ext(c) => serde_json::Value::Array(c.iter().map(val_to_json).collect()),
    }
}

fn val_from_json(levels: &[Level], v: &serde_json::Value) -> Result<Val> {
    match (levels.split_last(), v) {
        (None, serde_json::Value::String(s)) => {
            let (num, den) = match s.split_once('/') {
                Some((n, d)) => (n, d),
                None => (s.as_str(), "1"),
            };
            let num: BigInt = num
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad numerator in {s:?}")))?;
            let den: BigInt = den
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad denominator in {s:?}")))?;
            if den.is_zero() {
                return Err(Error::InvalidArgument(format!("zero denominator in {s:?}")));
            }
            Ok(Val::Q(Rational::new(num, den)))
        }
        (Some((top, lower)), serde_json::Value::Array(items)) => {
            if items.len() != top.degree {
                return Err(Error::InvalidArgument(format!(
                    "expected {} coefficients at level `{}`, found {}",
                    top.degree,
                    top.name,
                    items.len()
                )));
            }
            Ok(Val::Ext(
                items
                    .iter()
                    .map(|it| val_from_json(lower, it))
                    .collect::<Result<Vec<_>>>()?,
            ))
        }
        _ => Err(Error::InvalidArgument(
            "serialized element does not match tower shape".into(),
        )),
    }
}

impl Tower {
    /// The bottom of every tower: the rational numbers.
    pub fn rationals() -> Tower {
        Tower {
            levels: Arc::new(vec![]),
        }
    }

    /// Adjoin a root of the monic polynomial `t^d + c(d-1) t^(d-1) + ... + c0`
    /// where `min_poly` lists `c0..c(d-1)` as elements of `self`.
    pub fn adjoin(&self, name: &str, min_poly: &[FieldElement]) -> Result<Tower> {
        if min_poly.len() < 2 {
            return Err(Error::InvalidTower(format!(
                "level `{name}` must have degree at least 2"
            )));
        }
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::InvalidTower(format!("bad generator name `{name}`")));
        }
        if self.levels.iter().any(|l| l.name == name) {
            return Err(Error::InvalidTower(format!(
                "generator `{name}` already exists in the tower"
            )));
        }
        let mut coeffs = Vec::with_capacity(min_poly.len());
        for c in min_poly {
            let lifted = c.lift_to(self)?;
            coeffs.push(lifted.val);
        }
        let mut levels = (*self.levels).clone();
        levels.push(Level {
            name: name.to_string(),
            degree: min_poly.len(),
            min_poly: coeffs,
        });
        Ok(Tower {
            levels: Arc::new(levels),
        })
    }

    /// The default tower Q < Q(eta) < Q(eta, qrt3) < Q(eta, qrt3, cbrt2) with
    /// eta a primitive 9th root of unity (t^6 + t^3 + 1), qrt3 = 3^(1/4) and
    /// cbrt2 = 2^(1/3). It contains eps = eta^3 and sqrt3 = qrt3^2.
    pub fn standard() -> Tower {
        let q = Tower::rationals();
        let zero = q.int(0);
        let one = q.int(1);
        let eta = q
            .adjoin(
                "eta",
                &[one.clone(), zero.clone(), zero.clone(), one, zero.clone(), zero],
            )
            .expect("eta level");
        let z1 = eta.int(0);
        let qrt3 = eta
            .adjoin("qrt3", &[eta.int(-3), z1.clone(), z1.clone(), z1])
            .expect("qrt3 level");
        let z2 = qrt3.int(0);
        qrt3.adjoin("cbrt2", &[qrt3.int(-2), z2.clone(), z2])
            .expect("cbrt2 level")
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Product of the level degrees.
    pub fn absolute_degree(&self) -> usize {
        self.levels.iter().map(|l| l.degree).product()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level_names(&self) -> impl Iterator<Item = &str> {
        self.levels.iter().map(|l| l.name.as_str())
    }

    /// The generator adjoined at the named level, as an element of the full tower.
    pub fn generator(&self, name: &str) -> Option<FieldElement> {
        let idx = self.levels.iter().position(|l| l.name == name)?;
        let sub = &self.levels[..=idx];
        let top = &self.levels[idx];
        let lower = &self.levels[..idx];
        let mut coeffs: Vec<Val> = (0..top.degree).map(|_| zero_val(lower)).collect();
        coeffs[1] = rational_val(lower, Rational::one());
        let val = lift_val(sub, &self.levels, Val::Ext(coeffs));
        Some(FieldElement {
            tower: self.clone(),
            val,
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            tower: self.clone(),
            val: zero_val(&self.levels),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> FieldElement {
        self.rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(&self, num: i64, den: i64) -> FieldElement {
        assert!(den != 0, "zero denominator");
        self.rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn rational(&self, r: Rational) -> FieldElement {
        FieldElement {
            tower: self.clone(),
            val: rational_val(&self.levels, r),
        }
    }

    pub fn is_prefix_of(&self, other: &Tower) -> bool {
        self.levels.len() <= other.levels.len()
            && self.levels[..] == other.levels[..self.levels.len()]
    }

    /// All products of generator powers g1^e1 ... gk^ek with ei below the
    /// level degree. Useful as a trial set when hunting for roots that are
    /// already present in the tower.
    pub fn generator_monomials(&self) -> Vec<FieldElement> {
        let mut out = Vec::new();
        let degrees: Vec<usize> = self.levels.iter().map(|l| l.degree).collect();
        let total: usize = degrees.iter().product();
        let mut exps = vec![0usize; degrees.len()];
        for _ in 0..total {
            out.push(FieldElement {
                tower: self.clone(),
                val: monomial_val(&self.levels, &exps),
            });
            for k in 0..degrees.len() {
                exps[k] += 1;
                if exps[k] < degrees[k] {
                    break;
                }
                exps[k] = 0;
            }
        }
        out
    }
}

/// The deeper of two prefix-related towers.
pub fn deeper_tower(a: &Tower, b: &Tower) -> Result<Tower> {
    if a.is_prefix_of(b) {
        Ok(b.clone())
    } else if b.is_prefix_of(a) {
        Ok(a.clone())
    } else {
        Err(Error::TowerMismatch)
    }
}

fn monomial_val(levels: &[Level], exps: &[usize]) -> Val {
    match levels.split_last() {
        None => Val::Q(Rational::one()),
        Some((top, lower)) => {
            let mut v: Vec<Val> = (0..top.degree).map(|_| zero_val(lower)).collect();
            v[exps[exps.len() - 1]] = monomial_val(lower, &exps[..exps.len() - 1]);
            Val::Ext(v)
        }
    }
}

impl FieldElement {
    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn is_zero(&self) -> bool {
        val_is_zero(&self.val)
    }

    pub fn is_one(&self) -> bool {
        self == &self.tower.one()
    }

    /// Re-express the element in a tower that extends its own.
    pub fn lift_to(&self, target: &Tower) -> Result<FieldElement> {
        if self.tower == *target {
            return Ok(self.clone());
        }
        if !self.tower.is_prefix_of(target) {
            return Err(Error::TowerMismatch);
        }
        Ok(FieldElement {
            tower: target.clone(),
            val: lift_val(self.tower.levels(), target.levels(), self.val.clone()),
        })
    }

    pub(crate) fn unify(a: &FieldElement, b: &FieldElement) -> Result<(Tower, Val, Val)> {
        if a.tower == b.tower {
            return Ok((a.tower.clone(), a.val.clone(), b.val.clone()));
        }
        if a.tower.is_prefix_of(&b.tower) {
            let lifted = lift_val(a.tower.levels(), b.tower.levels(), a.val.clone());
            return Ok((b.tower.clone(), lifted, b.val.clone()));
        }
        if b.tower.is_prefix_of(&a.tower) {
            let lifted = lift_val(b.tower.levels(), a.tower.levels(), b.val.clone());
            return Ok((a.tower.clone(), a.val.clone(), lifted));
        }
        Err(Error::TowerMismatch)
    }

    pub fn inv(&self) -> Result<FieldElement> {
        let val = val_inv(self.tower.levels(), &self.val)?;
        Ok(FieldElement {
            tower: self.tower.clone(),
            val,
        })
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        let (tower, a, b) = FieldElement::unify(self, rhs)?;
        let binv = val_inv(tower.levels(), &b)?;
        let val = val_mul(tower.levels(), &a, &binv);
        Ok(FieldElement { tower, val })
    }

    pub fn pow(&self, n: i64) -> Result<FieldElement> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut acc = self.tower.one();
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// The rational value when every higher coefficient vanishes.
    pub fn as_rational(&self) -> Option<Rational> {
        fn walk(v: &Val) -> Option<Rational> {
            match v {
                Val::Q(r) => Some(r.clone()),
                Val::Ext(c) => {
                    if c[1..].iter().all(val_is_zero) {
                        walk(&c[0])
                    } else {
                        None
                    }
                }
            }
        }
        walk(&self.val)
    }

    /// Nested-array JSON form: innermost arrays are the lowest tower level,
    /// leaves are exact `"num/den"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        val_to_json(&self.val)
    }

    pub fn from_json(tower: &Tower, v: &serde_json::Value) -> Result<FieldElement> {
        Ok(FieldElement {
            tower: tower.clone(),
            val: val_from_json(tower.levels(), v)?,
        })
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match FieldElement::unify(self, other) {
            Ok((_, a, b)) => a == b,
            Err(_) => false,
        }
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (_, a, b) = FieldElement::unify(self, other).expect("ordering across unrelated towers");
        a.cmp(&b)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $f:expr) => {
        impl std::ops::$trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                let (tower, a, b) =
                    FieldElement::unify(self, rhs).expect("arithmetic across unrelated towers");
                let val = $f(tower.levels(), &a, &b);
                FieldElement { tower, val }
            }
        }
        impl std::ops::$trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl std::ops::$trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                std::ops::$trait::$method(&self, rhs)
            }
        }
        impl std::ops::$trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                std::ops::$trait::$method(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, val_add);
forward_binop!(Sub, sub, val_sub);
forward_binop!(Mul, mul, val_mul);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            tower: self.tower.clone(),
            val: val_neg(self.tower.levels(), &self.val),
        }
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

fn render_val(levels: &[Level], v: &Val) -> String {
    match (levels.split_last(), v) {
        (None, Val::Q(r)) => r.to_string(),
        (Some((top, lower)), Val::Ext(coeffs)) => {
            let mut terms = Vec::new();
            for (i, c) in coeffs.iter().enumerate() {
                if val_is_zero(c) {
                    continue;
                }
                let cs = render_val(lower, c);
                let gp = match i {
                    0 => String::new(),
                    1 => top.name.clone(),
                    _ => format!("{}^{}", top.name, i),
                };
                let term = if gp.is_empty() {
                    cs
                } else if cs == "1" {
                    gp
                } else if cs == "-1" {
                    format!("-{gp}")
                } else if cs.contains(' ') {
                    format!("({cs})*{gp}")
                } else {
                    format!("{cs}*{gp}")
                };
                terms.push(term);
            }
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        }
        _ => unreachable!("value shape does not match tower"),
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_val(self.tower.levels(), &self.val))
    }
}

/// Polynomial helpers over `FieldElement` coefficients (ascending order).
pub(crate) mod fpoly {
    use super::*;

    pub fn eval(coeffs: &[FieldElement], monic: bool, x: &FieldElement) -> FieldElement {
        // coeffs = c0..c(d-1); when `monic` an implicit leading 1 of degree d.
        let mut acc = if monic {
            x.tower().one()
        } else {
            x.tower().zero()
        };
        for c in coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Divide the monic polynomial with non-leading coefficients `coeffs` by
    /// (t - root), returning the non-leading coefficients of the monic quotient.
    /// The division must be exact.
    pub fn deflate_root(coeffs: &[FieldElement], root: &FieldElement) -> Result<Vec<FieldElement>> {
        let d = coeffs.len();
        let mut quot = vec![root.tower().zero(); d - 1];
        let mut carry = root.tower().one(); // quotient leading 1, not stored
        for i in (0..d).rev() {
            carry = &coeffs[i] + &(&carry * root);
            if i > 0 {
                quot[i - 1] = carry.clone();
            }
        }
        if !carry.is_zero() {
            return Err(Error::InvalidArgument(
                "deflation by a non-root".to_string(),
            ));
        }
        Ok(quot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Tower {
        Tower::rationals()
    }

    fn eps_tower() -> Tower {
        let q = q();
        q.adjoin("eps", &[q.int(1), q.int(1)]).unwrap()
    }

    #[test]
    fn standard_tower_shape() {
        let t = Tower::standard();
        assert_eq!(t.depth(), 3);
        assert_eq!(t.absolute_degree(), 72);
        let names: Vec<&str> = t.level_names().collect();
        assert_eq!(names, ["eta", "qrt3", "cbrt2"]);
    }

    #[test]
    fn standard_tower_constants() {
        let t = Tower::standard();
        let eta = t.generator("eta").unwrap();
        let qrt3 = t.generator("qrt3").unwrap();
        let cbrt2 = t.generator("cbrt2").unwrap();
        let eps = eta.pow(3).unwrap();
        // eps is a primitive cube root of unity
        assert_eq!(&(&eps * &eps) * &eps, t.one());
        assert!((&(&eps * &eps) + &eps + t.one()).is_zero());
        // qrt3^2 squares to 3, cbrt2 cubes to 2
        assert_eq!(qrt3.pow(4).unwrap(), t.int(3));
        assert_eq!(cbrt2.pow(3).unwrap(), t.int(2));
        assert_eq!(eta.pow(9).unwrap(), t.one());
        assert!(eta.pow(3).unwrap() != t.one());
    }

    #[test]
    fn cube_of_one_plus_sqrt3() {
        let t = Tower::standard();
        let sqrt3 = t.generator("qrt3").unwrap().pow(2).unwrap();
        let lambda = &t.one() + &sqrt3;
        let cube = lambda.pow(3).unwrap();
        assert_eq!(cube, &t.int(10) + &(&t.int(6) * &sqrt3));
    }

    #[test]
    fn adjoined_sqrt2_arithmetic() {
        let q = q();
        let t = q.adjoin("sqrt2", &[q.int(-2), q.int(0)]).unwrap();
        let s = t.generator("sqrt2").unwrap();
        let prod = &(&t.one() + &s) * &(&t.one() - &s);
        assert_eq!(prod, t.int(-1));
    }

    #[test]
    fn adjoined_cube_root_over_eps() {
        let te = eps_tower();
        let t = te
            .adjoin("g", &[te.int(2), te.int(0), te.int(0)])
            .unwrap(); // t^3 + 2
        let g = t.generator("g").unwrap();
        let eps = t.generator("eps").unwrap();
        for r in [g.clone(), &g * &eps, &(&g * &eps) * &eps] {
            assert_eq!(r.pow(3).unwrap(), t.int(-2));
        }
    }

    #[test]
    fn adjoined_sqrt_of_six_sqrt3() {
        let q = q();
        let t3 = q.adjoin("sqrt3", &[q.int(-3), q.int(0)]).unwrap();
        let sqrt3 = t3.generator("sqrt3").unwrap();
        let t = t3
            .adjoin("s", &[-(&t3.int(6) * &sqrt3), t3.int(0)])
            .unwrap();
        let s = t.generator("s").unwrap();
        let want = &t.int(6) * &t.generator("sqrt3").unwrap();
        assert_eq!(&s * &s, want);
    }

    #[test]
    fn zero_divisor_reports_level() {
        let q = q();
        let t = q.adjoin("bad", &[q.int(-1), q.int(0)]).unwrap(); // t^2 - 1 is reducible
        let g = t.generator("bad").unwrap();
        let nonunit = &g - &t.one();
        assert!(!nonunit.is_zero());
        match nonunit.inv() {
            Err(Error::ZeroDivisor { level }) => assert_eq!(level, "bad"),
            other => panic!("expected zero divisor, got {other:?}"),
        }
        assert_eq!(t.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn division_round_trips() {
        let t = Tower::standard();
        let eta = t.generator("eta").unwrap();
        let a = &(&t.ratio(3, 2) * &eta.pow(5).unwrap()) + &t.int(7);
        let b = &eta.pow(2).unwrap() - &t.ratio(1, 3);
        let c = a.div(&b).unwrap();
        assert_eq!(&c * &b, a);
        assert_eq!(&eta.inv().unwrap() * &eta, t.one());
    }

    #[test]
    fn lift_and_mixed_arithmetic() {
        let q = q();
        let small = q.adjoin("eps", &[q.int(1), q.int(1)]).unwrap();
        let big = small.adjoin("sqrt2", &[small.int(-2), small.int(0)]).unwrap();
        let eps_small = small.generator("eps").unwrap();
        let s = big.generator("sqrt2").unwrap();
        let sum = &eps_small + &s; // lifts automatically
        assert_eq!(sum.tower(), &big);
        assert_eq!(&sum - &s, eps_small.lift_to(&big).unwrap());
        assert!(q.int(1).lift_to(&big).unwrap().is_one());
        let unrelated = q.adjoin("x", &[q.int(-5), q.int(0)]).unwrap();
        assert_eq!(
            eps_small.lift_to(&unrelated),
            Err(Error::TowerMismatch)
        );
    }

    #[test]
    fn serialization_round_trip_and_shape() {
        let t = Tower::standard();
        let eta = t.generator("eta").unwrap();
        let x = &(&t.ratio(-7, 3) * &eta.pow(7).unwrap())
            + &(&t.generator("cbrt2").unwrap() * &t.generator("qrt3").unwrap());
        let j = x.to_json();
        let back = FieldElement::from_json(&t, &j).unwrap();
        assert_eq!(back, x);
        assert_eq!(back.to_json(), j);
        // outermost array is the last level adjoined
        match &j {
            serde_json::Value::Array(items) => assert_eq!(items.len(), 3),
            other => panic!("expected array, got {other:?}"),
        }
        let r = t.ratio(5, 3).to_json();
        let back = FieldElement::from_json(&t, &r).unwrap();
        assert_eq!(back, t.ratio(5, 3));
    }

    #[test]
    fn rational_leaf_serialization() {
        let q = q();
        let x = q.ratio(-4, 6);
        assert_eq!(x.to_json(), serde_json::json!("-2/3"));
        assert_eq!(
            FieldElement::from_json(&q, &serde_json::json!("9")).unwrap(),
            q.int(9)
        );
        assert!(FieldElement::from_json(&q, &serde_json::json!("1/0")).is_err());
    }

    #[test]
    fn as_rational_and_monomials() {
        let t = Tower::standard();
        assert_eq!(t.ratio(5, 3).as_rational(), Some(Rational::new(5.into(), 3.into())));
        assert_eq!(t.generator("eta").unwrap().as_rational(), None);
        let monomials = t.generator_monomials();
        assert_eq!(monomials.len(), 72);
        assert!(monomials.iter().any(|m| m.is_one()));
        let eta3 = t.generator("eta").unwrap().pow(3).unwrap();
        assert!(monomials.contains(&eta3));
    }

    #[test]
    fn deflate_known_cubic() {
        // c^3 - 3*lambda*c + 2 at lambda = 1 + sqrt3 divides by (c - lambda)
        let q = q();
        let t = q.adjoin("sqrt3", &[q.int(-3), q.int(0)]).unwrap();
        let sqrt3 = t.generator("sqrt3").unwrap();
        let lambda = &t.one() + &sqrt3;
        let coeffs = [t.int(2), -(&t.int(3) * &lambda), t.zero()];
        assert!(fpoly::eval(&coeffs, true, &lambda).is_zero());
        let quot = fpoly::deflate_root(&coeffs, &lambda).unwrap();
        // quotient is c^2 + lambda*c + (lambda^2 - 3*lambda)
        assert_eq!(quot.len(), 2);
        assert_eq!(quot[1], lambda);
        assert_eq!(quot[0], &(&lambda * &lambda) - &(&t.int(3) * &lambda));
        // its discriminant is 6*sqrt3
        let disc = &(&quot[1] * &quot[1]) - &(&t.int(4) * &quot[0]);
        assert_eq!(disc, &t.int(6) * &sqrt3);
    }
}
