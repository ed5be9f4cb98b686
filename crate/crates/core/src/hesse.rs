//! Hesse cubics x^3 + y^3 + z^3 - 3*lambda*xyz with lambda^3 != 1, their
//! group law based at (1:-1:0), torsion subgroups, the finite symmetries
//! used by the classification, and their fixed-point data.

use std::sync::Arc;

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use once_cell::sync::OnceCell;

use crate::error::{Error, Result};
use crate::exactfield::matrix::ExactMatrix;
use crate::exactfield::{fpoly, FieldElement, Rational, Tower};
use crate::forms::{proportional, CubicForm};

/// A point of P^2 in canonical form: the first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [FieldElement; 3],
}

impl ProjPoint {
    pub fn new(coords: [FieldElement; 3]) -> Result<ProjPoint> {
        let [a, b, c] = coords;
        let widest = [&a, &b, &c]
            .into_iter()
            .max_by_key(|e| e.tower().depth())
            .expect("three coordinates")
            .tower()
            .clone();
        let coords = [
            a.lift_to(&widest)?,
            b.lift_to(&widest)?,
            c.lift_to(&widest)?,
        ];
        let Some(k) = coords.iter().position(|e| !e.is_zero()) else {
            return Err(Error::InvalidPoint("all coordinates are zero".into()));
        };
        let inv = coords[k].inv()?;
        Ok(ProjPoint {
            coords: [
                &coords[0] * &inv,
                &coords[1] * &inv,
                &coords[2] * &inv,
            ],
        })
    }

    pub fn from_ints(tower: &Tower, a: i64, b: i64, c: i64) -> Result<ProjPoint> {
        ProjPoint::new([tower.int(a), tower.int(b), tower.int(c)])
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn lift_to(&self, tower: &Tower) -> Result<ProjPoint> {
        Ok(ProjPoint {
            coords: [
                self.coords[0].lift_to(tower)?,
                self.coords[1].lift_to(tower)?,
                self.coords[2].lift_to(tower)?,
            ],
        })
    }

    /// True when some coordinate vanishes, i.e. the point lies on xyz = 0.
    pub fn on_coordinate_triangle(&self) -> bool {
        self.coords.iter().any(|e| e.is_zero())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coords.iter().map(|c| c.to_json()).collect())
    }

    pub fn from_json(tower: &Tower, v: &serde_json::Value) -> Result<ProjPoint> {
        let serde_json::Value::Array(items) = v else {
            return Err(Error::InvalidPoint("expected a coordinate array".into()));
        };
        if items.len() != 3 {
            return Err(Error::InvalidPoint(format!(
                "expected 3 coordinates, found {}",
                items.len()
            )));
        }
        ProjPoint::new([
            FieldElement::from_json(tower, &items[0])?,
            FieldElement::from_json(tower, &items[1])?,
            FieldElement::from_json(tower, &items[2])?,
        ])
    }
}

impl std::fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({} : {} : {})",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

/// Which of the two chord-formula branches to use when adding points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AddBranch {
    First,
    Second,
}

#[derive(Debug)]
struct TorsionData {
    tower: Tower,
    eps: FieldElement,
    e2: Vec<ProjPoint>,
    e3: Vec<ProjPoint>,
    e6: Vec<ProjPoint>,
}

#[derive(Debug)]
struct CurveInner {
    lambda: FieldElement,
    tower: Tower,
    torsion: OnceCell<TorsionData>,
}

/// The smooth Hesse cubic attached to lambda.
#[derive(Debug, Clone)]
pub struct HesseCurve {
    inner: Arc<CurveInner>,
}

impl PartialEq for HesseCurve {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.lambda == other.inner.lambda
    }
}

impl Eq for HesseCurve {}

impl HesseCurve {
    pub fn new(lambda: FieldElement) -> Result<HesseCurve> {
        if lambda.pow(3)? == lambda.tower().one() {
            return Err(Error::InvalidLambda);
        }
        let tower = lambda.tower().clone();
        Ok(HesseCurve {
            inner: Arc::new(CurveInner {
                lambda,
                tower,
                torsion: OnceCell::new(),
            }),
        })
    }

    pub fn lambda(&self) -> &FieldElement {
        &self.inner.lambda
    }

    pub fn tower(&self) -> &Tower {
        &self.inner.tower
    }

    /// The defining cubic form x^3 + y^3 + z^3 - 3*lambda*xyz.
    pub fn equation(&self) -> CubicForm {
        let t = self.tower();
        let z = t.zero();
        CubicForm::from_coeffs(
            t,
            [
                t.one(),
                t.one(),
                t.one(),
                z.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
                z,
                -(&t.int(3) * self.lambda()),
            ],
        )
        .expect("coefficients share the curve tower")
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.equation().eval(p.coords()).is_zero()
    }

    /// Canonicalize and check membership.
    pub fn point(&self, coords: [FieldElement; 3]) -> Result<ProjPoint> {
        let p = ProjPoint::new(coords)?;
        if !self.contains(&p) {
            return Err(Error::NotOnCurve);
        }
        Ok(p)
    }

    /// The group origin (1 : -1 : 0).
    pub fn origin(&self) -> ProjPoint {
        let t = self.tower();
        ProjPoint::new([t.one(), t.int(-1), t.zero()]).expect("origin is well formed")
    }

    pub fn j_invariant(&self) -> Result<FieldElement> {
        let t = self.tower();
        let l3 = self.lambda().pow(3)?;
        let num = &(&t.int(27) * &l3) * &(&l3 + &t.int(8)).pow(3)?;
        let den = (&l3 - &t.one()).pow(3)?;
        num.div(&den)
    }

    pub fn neg(&self, p: &ProjPoint) -> Result<ProjPoint> {
        let [a, b, c] = p.coords();
        ProjPoint::new([b.clone(), a.clone(), c.clone()])
    }

    /// One chord-formula branch; `None` when it degenerates at this input.
    pub fn add_branch(
        &self,
        p: &ProjPoint,
        q: &ProjPoint,
        branch: AddBranch,
    ) -> Result<Option<ProjPoint>> {
        let [a, b, c] = p.coords();
        let [x, y, z] = q.coords();
        let coords = match branch {
            AddBranch::First => [
                &(&(a * c) * &(y * y)) - &(&(b * b) * &(x * z)),
                &(&(b * c) * &(x * x)) - &(&(a * a) * &(y * z)),
                &(&(a * b) * &(z * z)) - &(&(c * c) * &(x * y)),
            ],
            AddBranch::Second => [
                &(&(a * b) * &(x * x)) - &(&(c * c) * &(y * z)),
                &(&(a * c) * &(z * z)) - &(&(b * b) * &(x * y)),
                &(&(b * c) * &(y * y)) - &(&(a * a) * &(x * z)),
            ],
        };
        if coords.iter().all(|e| e.is_zero()) {
            return Ok(None);
        }
        Ok(Some(ProjPoint::new(coords)?))
    }

    /// Group law: first branch, falling back to the second where it vanishes.
    pub fn add(&self, p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint> {
        if let Some(r) = self.add_branch(p, q, AddBranch::First)? {
            return Ok(r);
        }
        match self.add_branch(p, q, AddBranch::Second)? {
            Some(r) => Ok(r),
            None => Err(Error::DegenerateAddition),
        }
    }

    pub fn sub(&self, p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint> {
        self.add(p, &self.neg(q)?)
    }

    pub fn scalar_mul(&self, n: i64, p: &ProjPoint) -> Result<ProjPoint> {
        if n < 0 {
            return self.scalar_mul(-n, &self.neg(p)?);
        }
        let mut acc = self.origin().lift_to(p.coords()[0].tower())?;
        let mut base = p.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.add(&base, &base)?;
            }
        }
        Ok(acc)
    }

    fn torsion_data(&self) -> Result<&TorsionData> {
        self.inner.torsion.get_or_try_init(|| build_torsion(self))
    }

    /// The tower all torsion points live in; extends the curve tower.
    pub fn torsion_tower(&self) -> Result<&Tower> {
        Ok(&self.torsion_data()?.tower)
    }

    /// A primitive cube root of unity in the torsion tower.
    pub fn eps(&self) -> Result<&FieldElement> {
        Ok(&self.torsion_data()?.eps)
    }

    /// The full n-torsion subgroup, n in {2, 3, 6}, sorted.
    pub fn torsion(&self, n: usize) -> Result<&[ProjPoint]> {
        let d = self.torsion_data()?;
        match n {
            2 => Ok(&d.e2),
            3 => Ok(&d.e3),
            6 => Ok(&d.e6),
            _ => Err(Error::InvalidArgument(format!(
                "torsion level {n} not supported (use 2, 3 or 6)"
            ))),
        }
    }

    pub fn auto(&self, kind: AutoKind) -> Result<CurveAuto> {
        CurveAuto::new(self, kind)
    }

    /// Fixed points of the i-th power of the symmetry on the curve.
    pub fn fixed_locus(&self, auto: &CurveAuto, i: i64) -> Result<CurveSubset> {
        let d = self.torsion_data()?;
        let e = auto.reduce(i);
        if e == 0 {
            return Ok(CurveSubset::Entire);
        }
        let pts: Vec<ProjPoint> = match (auto.kind, e) {
            (AutoKind::Tau1, 1) => d.e2.clone(),
            (AutoKind::Tau2, 1) | (AutoKind::Tau2, 5) => vec![self.origin_in(&d.tower)?],
            (AutoKind::Tau2, 2) | (AutoKind::Tau2, 4) => self.inflection_axis(d)?,
            (AutoKind::Tau2, 3) => d.e2.clone(),
            (AutoKind::Tau3, 1) | (AutoKind::Tau3, 3) => {
                vec![self.origin_in(&d.tower)?, self.two_torsion_diagonal(d)?]
            }
            (AutoKind::Tau3, 2) => d.e2.clone(),
            _ => unreachable!("exponent reduced modulo the order"),
        };
        let pts = sorted_unique(pts);
        for p in &pts {
            debug_assert_eq!(auto.apply(p, i)?, *p);
        }
        Ok(CurveSubset::Finite(pts))
    }

    /// Points p with tau^i(3p) = 3p; the locus where translating by p keeps
    /// the twisted pair well behaved.
    pub fn triple_fixed_locus(&self, auto: &CurveAuto, i: i64) -> Result<CurveSubset> {
        let d = self.torsion_data()?;
        let e = auto.reduce(i);
        if e == 0 {
            return Ok(CurveSubset::Entire);
        }
        let pts: Vec<ProjPoint> = match (auto.kind, e) {
            (AutoKind::Tau1, 1) => d.e6.clone(),
            (AutoKind::Tau2, 1) | (AutoKind::Tau2, 5) => d.e3.clone(),
            (AutoKind::Tau2, 2) | (AutoKind::Tau2, 4) => {
                let mut pts = d.e3.clone();
                pts.extend(self.ninth_root_points(d)?);
                pts
            }
            (AutoKind::Tau2, 3) => d.e6.clone(),
            (AutoKind::Tau3, 1) | (AutoKind::Tau3, 3) => {
                let t = self.two_torsion_diagonal(d)?;
                let mut pts = d.e3.clone();
                for r in &d.e3 {
                    pts.push(self.add(&t, r)?);
                }
                pts
            }
            (AutoKind::Tau3, 2) => d.e6.clone(),
            _ => unreachable!("exponent reduced modulo the order"),
        };
        let pts = sorted_unique(pts);
        for p in &pts {
            debug_assert!(self.contains(p));
            let tp = self.scalar_mul(3, p)?;
            debug_assert_eq!(auto.apply(&tp, i)?, tp);
        }
        Ok(CurveSubset::Finite(pts))
    }

    /// The set { r - tau^i(r) : r inflection point }, always a subgroup of
    /// the 3-torsion.
    pub fn inflection_displacements(&self, auto: &CurveAuto, i: i64) -> Result<Vec<ProjPoint>> {
        let d = self.torsion_data()?;
        let mut out = Vec::new();
        for r in &d.e3 {
            let tr = auto.apply(r, i)?;
            out.push(self.sub(r, &tr)?);
        }
        Ok(sorted_unique(out))
    }

    fn origin_in(&self, tower: &Tower) -> Result<ProjPoint> {
        self.origin().lift_to(tower)
    }

    /// The 2-torsion point (1 : 1 : lambda), defined when lambda^3 - 3*lambda^2 + 2 = 0.
    fn two_torsion_diagonal(&self, d: &TorsionData) -> Result<ProjPoint> {
        let l = self.lambda().lift_to(&d.tower)?;
        let p = ProjPoint::new([d.tower.one(), d.tower.one(), l])?;
        if !self.contains(&p) {
            return Err(Error::NotOnCurve);
        }
        Ok(p)
    }

    /// { o, (1:-eps:0), (1:-eps^2:0) }.
    fn inflection_axis(&self, d: &TorsionData) -> Result<Vec<ProjPoint>> {
        let t = &d.tower;
        let eps2 = &d.eps * &d.eps;
        Ok(vec![
            self.origin_in(t)?,
            ProjPoint::new([t.one(), -&d.eps, t.zero()])?,
            ProjPoint::new([t.one(), -&eps2, t.zero()])?,
        ])
    }

    /// The 18 points (eta^a : eta^b : 1) with {a mod 3, b mod 3} = {1, 2},
    /// eta a primitive 9th root of unity. Only on the lambda = 0 curve, and
    /// only when the curve tower carries a generator named `eta`.
    fn ninth_root_points(&self, d: &TorsionData) -> Result<Vec<ProjPoint>> {
        let eta = self
            .tower()
            .generator("eta")
            .ok_or(Error::NeedsGenerator("eta"))?;
        if eta.pow(9)? != self.tower().one() || eta.pow(3)? == self.tower().one() {
            return Err(Error::NeedsGenerator("eta"));
        }
        let eta = eta.lift_to(&d.tower)?;
        let mut pts = Vec::with_capacity(18);
        for a in [2i64, 5, 8] {
            for b in [1i64, 4, 7] {
                pts.push(ProjPoint::new([
                    eta.pow(a)?,
                    eta.pow(b)?,
                    d.tower.one(),
                ])?);
                pts.push(ProjPoint::new([
                    eta.pow(b)?,
                    eta.pow(a)?,
                    d.tower.one(),
                ])?);
            }
        }
        Ok(pts)
    }
}

/// A subset of the curve: everything, or an explicit finite sorted list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveSubset {
    Entire,
    Finite(Vec<ProjPoint>),
}

impl CurveSubset {
    pub fn is_entire(&self) -> bool {
        matches!(self, CurveSubset::Entire)
    }

    pub fn points(&self) -> Option<&[ProjPoint]> {
        match self {
            CurveSubset::Entire => None,
            CurveSubset::Finite(v) => Some(v),
        }
    }

    pub fn contains_point(&self, p: &ProjPoint) -> bool {
        match self {
            CurveSubset::Entire => true,
            CurveSubset::Finite(v) => v.iter().any(|q| q == p),
        }
    }
}

pub(crate) fn sorted_unique(mut pts: Vec<ProjPoint>) -> Vec<ProjPoint> {
    pts.sort();
    pts.dedup();
    pts
}

/// The three finite symmetry families of Hesse cubics used here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutoKind {
    /// (a:b:c) -> (b:a:c), the group inversion; every curve.
    Tau1,
    /// (a:b:c) -> (b:a:eps*c); only lambda = 0.
    Tau2,
    /// The degree-2 Hessian symmetry with matrix rows (eps^2, eps, 1),
    /// (eps, eps^2, 1), (1, 1, 1); only lambda with lambda^2 = 2*lambda + 2.
    Tau3,
}

impl AutoKind {
    pub fn name(&self) -> &'static str {
        match self {
            AutoKind::Tau1 => "tau1",
            AutoKind::Tau2 => "tau2",
            AutoKind::Tau3 => "tau3",
        }
    }

    pub fn from_name(s: &str) -> Option<AutoKind> {
        match s {
            "tau1" => Some(AutoKind::Tau1),
            "tau2" => Some(AutoKind::Tau2),
            "tau3" => Some(AutoKind::Tau3),
            _ => None,
        }
    }
}

/// A finite symmetry of a fixed curve, stored as its 3x3 point action over
/// the curve's torsion tower.
#[derive(Debug, Clone)]
pub struct CurveAuto {
    kind: AutoKind,
    order: usize,
    matrix: ExactMatrix,
}

impl CurveAuto {
    fn new(curve: &HesseCurve, kind: AutoKind) -> Result<CurveAuto> {
        let d = curve.torsion_data()?;
        let t = &d.tower;
        let eps = &d.eps;
        let eps2 = eps * eps;
        let rows: [[FieldElement; 3]; 3] = match kind {
            AutoKind::Tau1 => [
                [t.zero(), t.one(), t.zero()],
                [t.one(), t.zero(), t.zero()],
                [t.zero(), t.zero(), t.one()],
            ],
            AutoKind::Tau2 => [
                [t.zero(), t.one(), t.zero()],
                [t.one(), t.zero(), t.zero()],
                [t.zero(), t.zero(), eps.clone()],
            ],
            AutoKind::Tau3 => [
                [eps2.clone(), eps.clone(), t.one()],
                [eps.clone(), eps2.clone(), t.one()],
                [t.one(), t.one(), t.one()],
            ],
        };
        let matrix = ExactMatrix::from_rows(t, &[rows[0].to_vec(), rows[1].to_vec(), rows[2].to_vec()])?;
        // the matrix must rescale the defining equation
        let g = curve.equation().lift_to(t)?;
        match proportional(&g.compose_linear(&matrix)?, &g)? {
            Some(mu) if !mu.is_zero() => {}
            _ => return Err(Error::AutoUnavailable(kind.name())),
        }
        // projective order: least k with M^k scalar
        let mut power = matrix.clone();
        let mut order = 0;
        for k in 1..=12 {
            if is_scalar_matrix(&power) {
                order = k;
                break;
            }
            power = power.matmul(&matrix)?;
        }
        if order == 0 {
            return Err(Error::AutoUnavailable(kind.name()));
        }
        Ok(CurveAuto {
            kind,
            order,
            matrix,
        })
    }

    pub fn kind(&self) -> AutoKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn tower(&self) -> &Tower {
        self.matrix.tower()
    }

    pub fn reduce(&self, i: i64) -> usize {
        i.rem_euclid(self.order as i64) as usize
    }

    /// The matrix of the i-th power acting on points.
    pub fn point_matrix(&self, i: i64) -> ExactMatrix {
        let e = self.reduce(i);
        let mut m = ExactMatrix::identity(self.matrix.tower(), 3);
        for _ in 0..e {
            m = m.matmul(&self.matrix).expect("3x3 product");
        }
        m
    }

    /// The matrix acting on the coordinate functions: the transpose of the
    /// point action, mapping x_j to sum_i m[i][j] x_i.
    pub fn substitution_matrix(&self, i: i64) -> ExactMatrix {
        self.point_matrix(i).transpose()
    }

    pub fn apply(&self, p: &ProjPoint, i: i64) -> Result<ProjPoint> {
        let m = self.point_matrix(i);
        let t = m.tower();
        let coords = p.lift_to(t)?;
        let [a, b, c] = coords.coords();
        let mut out = [t.zero(), t.zero(), t.zero()];
        for (r, slot) in out.iter_mut().enumerate() {
            *slot = &(&(m.at(r, 0) * a) + &(m.at(r, 1) * b)) + &(m.at(r, 2) * c);
        }
        ProjPoint::new(out)
    }
}

fn is_scalar_matrix(m: &ExactMatrix) -> bool {
    let d = m.at(0, 0);
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                if m.at(i, j) != d {
                    return false;
                }
            } else if !m.at(i, j).is_zero() {
                return false;
            }
        }
    }
    !d.is_zero()
}

// torsion construction

fn build_torsion(curve: &HesseCurve) -> Result<TorsionData> {
    let (tower, eps) = find_or_adjoin_eps(curve.tower())?;
    let lambda = curve.lambda().lift_to(&tower)?;
    let (tower, roots) = solve_two_torsion_cubic(&tower, &lambda, &eps)?;
    let eps = eps.lift_to(&tower)?;

    let origin = curve.origin().lift_to(&tower)?;
    let mut e2 = vec![origin.clone()];
    for r in &roots {
        e2.push(ProjPoint::new([tower.one(), tower.one(), r.lift_to(&tower)?])?);
    }
    let e2 = sorted_unique(e2);
    if e2.len() != 4 {
        return Err(Error::InvalidTower(
            "the 2-torsion cubic produced repeated roots".into(),
        ));
    }

    let eps2 = &eps * &eps;
    let mut e3 = Vec::with_capacity(9);
    for w in [tower.one(), eps.clone(), eps2.clone()] {
        e3.push(ProjPoint::new([tower.one(), -&w, tower.zero()])?);
        e3.push(ProjPoint::new([tower.zero(), tower.one(), -&w])?);
        e3.push(ProjPoint::new([tower.one(), tower.zero(), -&w])?);
    }
    let e3 = sorted_unique(e3);
    if e3.len() != 9 {
        return Err(Error::InvalidTower("inflection points collapsed".into()));
    }

    let mut e6 = Vec::with_capacity(36);
    for s in &e2 {
        for t in &e3 {
            e6.push(curve.add(s, t)?);
        }
    }
    let e6 = sorted_unique(e6);
    if e6.len() != 36 {
        return Err(Error::InvalidTower("6-torsion points collapsed".into()));
    }

    for p in &e2 {
        debug_assert!(curve.contains(p));
        debug_assert_eq!(curve.add(p, p)?, origin);
    }
    for p in &e3 {
        debug_assert!(curve.contains(p));
        debug_assert_eq!(curve.scalar_mul(3, p)?, origin);
    }

    Ok(TorsionData {
        tower,
        eps,
        e2,
        e3,
        e6,
    })
}

fn fresh_level_name(tower: &Tower, base: &str) -> String {
    if tower.generator(base).is_none() {
        return base.to_string();
    }
    for k in 2.. {
        let name = format!("{base}{k}");
        if tower.generator(&name).is_none() {
            return name;
        }
    }
    unreachable!()
}

fn small_rationals(tower: &Tower) -> Vec<FieldElement> {
    [
        (1, 1),
        (-1, 1),
        (2, 1),
        (-2, 1),
        (3, 1),
        (-3, 1),
        (1, 2),
        (-1, 2),
        (1, 3),
        (-1, 3),
        (2, 3),
        (-2, 3),
        (3, 2),
        (-3, 2),
    ]
    .iter()
    .map(|&(n, d)| tower.ratio(n, d))
    .collect()
}

fn find_or_adjoin_eps(tower: &Tower) -> Result<(Tower, FieldElement)> {
    for m in tower.generator_monomials() {
        let v = &(&m * &m) + &(&m + &tower.one());
        if v.is_zero() {
            return Ok((tower.clone(), m));
        }
    }
    let name = fresh_level_name(tower, "eps");
    let bigger = tower.adjoin(&name, &[tower.one(), tower.one()])?;
    let eps = bigger.generator(&name).expect("fresh generator");
    Ok((bigger, eps))
}

/// Trial square roots: generator monomials times small rationals, optionally
/// times 2*eps + 1 (a square root of -3).
fn find_sqrt(
    tower: &Tower,
    d: &FieldElement,
    eps: &FieldElement,
) -> Result<(Tower, FieldElement)> {
    if d.is_zero() {
        return Ok((tower.clone(), tower.zero()));
    }
    let sqrt_m3 = &(&tower.int(2) * eps) + &tower.one();
    let qs = small_rationals(tower);
    for m in tower.generator_monomials() {
        for q in &qs {
            let cand = q * &m;
            if &(&cand * &cand) == d {
                return Ok((tower.clone(), cand));
            }
            let cand = &cand * &sqrt_m3;
            if &(&cand * &cand) == d {
                return Ok((tower.clone(), cand));
            }
        }
    }
    if let Some(r) = d.as_rational() {
        let nd = r.numer() * r.denom();
        let (k, sf) = square_part(&nd.abs());
        let scale = Rational::new(k, r.denom().clone());
        if nd.is_negative() {
            if sf == BigInt::from(3) {
                let s = &tower.rational(scale) * &sqrt_m3;
                return Ok((tower.clone(), s));
            }
            let name = fresh_level_name(tower, "e2s");
            let bigger = tower.adjoin(&name, &[tower.rational(Rational::from_integer(sf)), tower.zero()])?;
            let s = &bigger.rational(scale) * &bigger.generator(&name).expect("fresh generator");
            return Ok((bigger, s));
        }
        if sf.is_one() {
            return Ok((tower.clone(), tower.rational(scale)));
        }
        let name = fresh_level_name(tower, "e2s");
        let bigger = tower.adjoin(
            &name,
            &[-bigger_int(tower, &sf), tower.zero()],
        )?;
        let s = &bigger.rational(scale) * &bigger.generator(&name).expect("fresh generator");
        return Ok((bigger, s));
    }
    let name = fresh_level_name(tower, "e2s");
    let bigger = tower.adjoin(&name, &[-d, tower.zero()])?;
    let s = bigger.generator(&name).expect("fresh generator");
    Ok((bigger, s))
}

fn bigger_int(tower: &Tower, n: &BigInt) -> FieldElement {
    tower.rational(Rational::from_integer(n.clone()))
}

/// n = k^2 * d with d squarefree up to the trial bound.
fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut k = BigInt::one();
    let mut d = n.clone();
    let mut p = BigInt::from(2);
    let bound = BigInt::from(1000);
    while (&p * &p) <= d && p < bound {
        let pp = &p * &p;
        while (&d % &pp).is_zero() {
            d = &d / &pp;
            k *= &p;
        }
        p += 1;
    }
    let s = d.sqrt();
    if (&s * &s) == d {
        k *= &s;
        d = BigInt::one();
    }
    (k, d)
}

/// Roots of c^3 - 3*lambda*c + 2, extending the tower as needed.
fn solve_two_torsion_cubic(
    tower0: &Tower,
    lambda: &FieldElement,
    eps: &FieldElement,
) -> Result<(Tower, Vec<FieldElement>)> {
    let mut tower = tower0.clone();
    let mut cur: Vec<FieldElement> = vec![
        tower.int(2),
        -(&tower.int(3) * lambda),
        tower.zero(),
    ];
    let mut roots: Vec<FieldElement> = Vec::new();
    let mut eps = eps.clone();

    find_trial_roots(&tower, &mut cur, &mut roots)?;

    if cur.len() == 3 {
        // no root in the current tower: adjoin one
        let name = fresh_level_name(&tower, "e2r");
        let bigger = tower.adjoin(&name, &cur)?;
        let root = bigger.generator(&name).expect("fresh generator");
        cur = cur
            .iter()
            .map(|c| c.lift_to(&bigger))
            .collect::<Result<Vec<_>>>()?;
        cur = fpoly::deflate_root(&cur, &root)?;
        roots.push(root);
        eps = eps.lift_to(&bigger)?;
        tower = bigger;
        // the new generator powers may reveal the remaining roots
        find_trial_roots(&tower, &mut cur, &mut roots)?;
    }

    if cur.len() == 2 {
        let b = cur[1].clone();
        let c0 = cur[0].clone();
        let disc = &(&b * &b) - &(&tower.int(4) * &c0);
        let (bigger, s) = find_sqrt(&tower, &disc, &eps)?;
        let b = b.lift_to(&bigger)?;
        let half = bigger.ratio(1, 2);
        roots = roots
            .iter()
            .map(|r| r.lift_to(&bigger))
            .collect::<Result<Vec<_>>>()?;
        roots.push(&(&(-&b) + &s) * &half);
        roots.push(&(&(-&b) - &s) * &half);
        cur.clear();
        tower = bigger;
    }

    if cur.len() == 1 {
        roots.push(-&cur[0]);
    }

    debug_assert_eq!(roots.len(), 3);
    for r in &roots {
        let check = &(&(r * r) * r) - &(&(&tower.int(3) * &lambda.lift_to(&tower)?) * r);
        debug_assert!((&check + &tower.int(2)).is_zero());
    }
    Ok((tower, roots))
}

fn find_trial_roots(
    tower: &Tower,
    cur: &mut Vec<FieldElement>,
    roots: &mut Vec<FieldElement>,
) -> Result<()> {
    'outer: loop {
        if cur.len() < 2 {
            return Ok(());
        }
        let mut candidates: Vec<FieldElement> = Vec::new();
        for c in cur.iter() {
            if c.is_zero() {
                continue;
            }
            for k in 1..=3i64 {
                let scaled = c.div(&tower.int(k))?;
                candidates.push(scaled.clone());
                candidates.push(-scaled);
            }
        }
        let qs = small_rationals(tower);
        candidates.extend(qs.iter().cloned());
        for m in tower.generator_monomials() {
            if m.is_one() {
                continue; // covered by the plain rationals
            }
            for q in &qs {
                candidates.push(q * &m);
            }
        }
        for cand in candidates {
            if fpoly::eval(cur, true, &cand).is_zero() {
                *cur = fpoly::deflate_root(cur, &cand)?;
                roots.push(cand);
                continue 'outer;
            }
        }
        return Ok(());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Tower {
        Tower::rationals()
    }

    fn tower_eps_sqrt2() -> Tower {
        let q = q();
        let t = q.adjoin("eps", &[q.int(1), q.int(1)]).unwrap();
        t.adjoin("sqrt2", &[t.int(-2), t.int(0)]).unwrap()
    }

    fn tower_eta_cbrt2() -> Tower {
        let q = q();
        let t = q
            .adjoin(
                "eta",
                &[q.int(1), q.int(0), q.int(0), q.int(1), q.int(0), q.int(0)],
            )
            .unwrap();
        t.adjoin("cbrt2", &[t.int(-2), t.int(0), t.int(0)]).unwrap()
    }

    fn tower_lambda13() -> Tower {
        let q = q();
        let t = q.adjoin("eps", &[q.int(1), q.int(1)]).unwrap();
        let t = t.adjoin("sqrt3", &[t.int(-3), t.int(0)]).unwrap();
        let s3 = t.generator("sqrt3").unwrap();
        t.adjoin("e2s", &[-(&t.int(6) * &s3), t.zero()]).unwrap()
    }

    fn curve_53() -> HesseCurve {
        HesseCurve::new(tower_eps_sqrt2().ratio(5, 3)).unwrap()
    }

    fn curve_0() -> HesseCurve {
        HesseCurve::new(tower_eta_cbrt2().int(0)).unwrap()
    }

    fn curve_13() -> HesseCurve {
        let t = tower_lambda13();
        let s3 = t.generator("sqrt3").unwrap();
        HesseCurve::new(&t.one() + &s3).unwrap()
    }

    #[test]
    fn smoothness_check() {
        assert_eq!(
            HesseCurve::new(q().int(1)).unwrap_err(),
            Error::InvalidLambda
        );
        let t = tower_eps_sqrt2();
        let eps = t.generator("eps").unwrap();
        assert_eq!(HesseCurve::new(eps).unwrap_err(), Error::InvalidLambda);
        assert!(HesseCurve::new(q().int(0)).is_ok());
    }

    #[test]
    fn membership_and_canonical_form() {
        let e = curve_53();
        let t = e.tower().clone();
        assert!(e.contains(&e.origin()));
        let p = e.point([t.int(1), t.int(1), t.int(2)]).unwrap();
        assert_eq!(p, ProjPoint::from_ints(&t, 1, 1, 2).unwrap());
        assert_eq!(
            e.point([t.int(1), t.int(2), t.int(3)]).unwrap_err(),
            Error::NotOnCurve
        );
        // canonicalization scales the first nonzero coordinate to 1
        let r = ProjPoint::new([t.int(-7), t.int(7), t.int(0)]).unwrap();
        assert_eq!(r, e.origin());
        assert!(ProjPoint::new([t.zero(), t.zero(), t.zero()]).is_err());
    }

    #[test]
    fn j_invariant_values() {
        let e = curve_53();
        assert_eq!(
            e.j_invariant().unwrap(),
            e.tower().rational(Rational::new(
                BigInt::from(4956477625u64),
                BigInt::from(941192u64)
            ))
        );
        let e0 = curve_0();
        assert!(e0.j_invariant().unwrap().is_zero());
    }

    #[test]
    fn addition_identities() {
        let e = curve_53();
        let o = e.origin();
        let t = e.tower().clone();
        let p = e.point([t.int(1), t.int(1), t.int(2)]).unwrap();
        assert_eq!(e.add(&p, &o).unwrap(), p);
        assert_eq!(e.add(&o, &p).unwrap(), p);
        assert_eq!(e.add(&o, &o).unwrap(), o);
        let np = e.neg(&p).unwrap();
        assert_eq!(e.add(&p, &np).unwrap(), o);
    }

    #[test]
    fn two_torsion_doubling_uses_the_fallback_branch() {
        let e = curve_53();
        let t = e.tower().clone();
        let p = e.point([t.int(1), t.int(1), t.int(2)]).unwrap();
        assert_eq!(e.add_branch(&p, &p, AddBranch::First).unwrap(), None);
        let snd = e.add_branch(&p, &p, AddBranch::Second).unwrap().unwrap();
        assert_eq!(snd, e.origin());
        assert_eq!(e.add(&p, &p).unwrap(), e.origin());
    }

    #[test]
    fn branch_formulas_agree_when_both_defined() {
        let e = curve_0();
        let t = e.tower().clone();
        let eta = t.generator("eta").unwrap();
        let p = e
            .point([eta.pow(8).unwrap(), eta.pow(4).unwrap(), t.one()])
            .unwrap();
        let q = e
            .point([t.one(), -eta.pow(3).unwrap(), t.zero()])
            .unwrap();
        let b1 = e.add_branch(&p, &q, AddBranch::First).unwrap().unwrap();
        let b2 = e.add_branch(&p, &q, AddBranch::Second).unwrap().unwrap();
        assert_eq!(b1, b2);
    }

    #[test]
    fn ninth_root_point_multiples() {
        let e = curve_0();
        let t = e.tower().clone();
        let eta = t.generator("eta").unwrap();
        let p = e
            .point([eta.pow(8).unwrap(), eta.pow(4).unwrap(), t.one()])
            .unwrap();
        let double = e.add(&p, &p).unwrap();
        assert_eq!(
            double,
            e.point([eta.clone(), eta.pow(8).unwrap(), eta.pow(3).unwrap()])
                .unwrap()
        );
        let triple = e.scalar_mul(3, &p).unwrap();
        assert_eq!(
            triple,
            e.point([t.one(), -eta.pow(3).unwrap(), t.zero()]).unwrap()
        );
        assert_eq!(e.scalar_mul(9, &p).unwrap(), e.origin());
        assert_eq!(e.scalar_mul(0, &p).unwrap(), e.origin());
        assert_eq!(e.scalar_mul(-3, &p).unwrap(), e.neg(&triple).unwrap());
    }

    #[test]
    fn two_torsion_of_the_rational_curve() {
        let e = curve_53();
        let t = e.tower().clone();
        let e2 = e.torsion(2).unwrap();
        assert_eq!(e2.len(), 4);
        let s2 = t.generator("sqrt2").unwrap();
        let expect = [
            e.origin(),
            ProjPoint::from_ints(&t, 1, 1, 2).unwrap(),
            ProjPoint::new([t.one(), t.one(), &t.int(-1) + &s2]).unwrap(),
            ProjPoint::new([t.one(), t.one(), &t.int(-1) - &s2]).unwrap(),
        ];
        for p in &expect {
            assert!(e2.contains(p), "missing 2-torsion point {p}");
        }
        // no adjunction was needed beyond the curve tower
        assert_eq!(e.torsion_tower().unwrap(), &t);
    }

    #[test]
    fn two_torsion_adjoins_over_plain_rationals() {
        let e = HesseCurve::new(q().ratio(5, 3)).unwrap();
        let tt = e.torsion_tower().unwrap();
        let names: Vec<&str> = tt.level_names().collect();
        assert_eq!(names, ["eps", "e2s"]);
        assert_eq!(tt.absolute_degree(), 4);
        let e2 = e.torsion(2).unwrap();
        assert!(e2.contains(&ProjPoint::from_ints(tt, 1, 1, 2).unwrap()));
    }

    #[test]
    fn two_torsion_cube_roots() {
        let e = curve_0();
        let e2 = e.torsion(2).unwrap();
        assert_eq!(e2.len(), 4);
        let o = e.origin().lift_to(e.torsion_tower().unwrap()).unwrap();
        for p in e2 {
            if *p == o {
                continue;
            }
            let [a, b, c] = p.coords();
            assert_eq!(a, b);
            assert_eq!(c.pow(3).unwrap(), e.tower().int(-2).lift_to(c.tower()).unwrap());
        }
    }

    #[test]
    fn two_torsion_contains_the_diagonal_point() {
        let e = curve_13();
        let t = e.tower().clone();
        let lam = e.lambda().clone();
        let p = ProjPoint::new([t.one(), t.one(), lam]).unwrap();
        assert!(e.contains(&p));
        assert!(e.torsion(2).unwrap().contains(&p));
        assert_eq!(e.add(&p, &p).unwrap(), e.origin());
    }

    #[test]
    fn torsion_group_sizes() {
        for e in [curve_53(), curve_0(), curve_13()] {
            assert_eq!(e.torsion(2).unwrap().len(), 4);
            assert_eq!(e.torsion(3).unwrap().len(), 9);
            assert_eq!(e.torsion(6).unwrap().len(), 36);
            let o = e.origin();
            for p in e.torsion(3).unwrap() {
                assert_eq!(e.scalar_mul(3, p).unwrap(), o);
            }
            for p in e.torsion(6).unwrap() {
                assert_eq!(e.scalar_mul(6, p).unwrap(), o);
            }
        }
    }

    #[test]
    fn inversion_symmetry_on_every_curve() {
        for e in [curve_53(), curve_0(), curve_13()] {
            let a = e.auto(AutoKind::Tau1).unwrap();
            assert_eq!(a.order(), 2);
            // acts as negation
            for p in e.torsion(6).unwrap().iter().take(6) {
                assert_eq!(a.apply(p, 1).unwrap(), e.neg(p).unwrap());
            }
        }
    }

    #[test]
    fn sixfold_symmetry_only_at_lambda_zero() {
        let e = curve_0();
        let a = e.auto(AutoKind::Tau2).unwrap();
        assert_eq!(a.order(), 6);
        assert_eq!(
            curve_53().auto(AutoKind::Tau2).unwrap_err(),
            Error::AutoUnavailable("tau2")
        );
        assert_eq!(
            curve_13().auto(AutoKind::Tau2).unwrap_err(),
            Error::AutoUnavailable("tau2")
        );
        // cube of the generator is the inversion
        let t1 = e.auto(AutoKind::Tau1).unwrap();
        assert_eq!(a.point_matrix(3), t1.point_matrix(1));
    }

    #[test]
    fn fourfold_symmetry_only_at_the_quadratic_lambda() {
        let e = curve_13();
        let a = e.auto(AutoKind::Tau3).unwrap();
        assert_eq!(a.order(), 4);
        assert_eq!(
            curve_0().auto(AutoKind::Tau3).unwrap_err(),
            Error::AutoUnavailable("tau3")
        );
        assert_eq!(
            curve_53().auto(AutoKind::Tau3).unwrap_err(),
            Error::AutoUnavailable("tau3")
        );
        // the square is 3 times the inversion matrix
        let t1 = e.auto(AutoKind::Tau1).unwrap();
        let three = a.tower().int(3);
        assert_eq!(a.point_matrix(2), t1.point_matrix(1).scale(&three));
        // it fixes the diagonal 2-torsion point
        let t = e.tower().clone();
        let p = ProjPoint::new([t.one(), t.one(), e.lambda().clone()]).unwrap();
        assert_eq!(a.apply(&p, 1).unwrap(), p.lift_to(a.tower()).unwrap());
    }

    #[test]
    fn fixed_loci_tables() {
        let e = curve_53();
        let a1 = e.auto(AutoKind::Tau1).unwrap();
        assert!(e.fixed_locus(&a1, 0).unwrap().is_entire());
        let f = e.fixed_locus(&a1, 1).unwrap();
        assert_eq!(f.points().unwrap().len(), 4);
        assert_eq!(f.points().unwrap(), e.torsion(2).unwrap());

        let e0 = curve_0();
        let a2 = e0.auto(AutoKind::Tau2).unwrap();
        let o = e0.origin().lift_to(e0.torsion_tower().unwrap()).unwrap();
        for i in [1, 5] {
            assert_eq!(
                e0.fixed_locus(&a2, i).unwrap().points().unwrap(),
                std::slice::from_ref(&o)
            );
        }
        for i in [2, 4] {
            let pts = e0.fixed_locus(&a2, i).unwrap();
            let pts = pts.points().unwrap();
            assert_eq!(pts.len(), 3);
            let eps = e0.eps().unwrap().clone();
            let tt = e0.torsion_tower().unwrap();
            assert!(pts.contains(&ProjPoint::new([tt.one(), -&eps, tt.zero()]).unwrap()));
        }
        assert_eq!(
            e0.fixed_locus(&a2, 3).unwrap().points().unwrap(),
            e0.torsion(2).unwrap()
        );

        let e1 = curve_13();
        let a3 = e1.auto(AutoKind::Tau3).unwrap();
        for i in [1, 3] {
            let pts = e1.fixed_locus(&a3, i).unwrap();
            let pts = pts.points().unwrap();
            assert_eq!(pts.len(), 2);
            let tt = e1.torsion_tower().unwrap();
            let diag =
                ProjPoint::new([tt.one(), tt.one(), e1.lambda().lift_to(tt).unwrap()]).unwrap();
            assert!(pts.contains(&diag));
        }
        assert_eq!(
            e1.fixed_locus(&a3, 2).unwrap().points().unwrap(),
            e1.torsion(2).unwrap()
        );
    }

    #[test]
    fn triple_fixed_loci_sizes() {
        let e = curve_53();
        let a1 = e.auto(AutoKind::Tau1).unwrap();
        assert!(e.triple_fixed_locus(&a1, 0).unwrap().is_entire());
        assert_eq!(
            e.triple_fixed_locus(&a1, 1).unwrap().points().unwrap(),
            e.torsion(6).unwrap()
        );

        let e0 = curve_0();
        let a2 = e0.auto(AutoKind::Tau2).unwrap();
        assert_eq!(
            e0.triple_fixed_locus(&a2, 1).unwrap().points().unwrap(),
            e0.torsion(3).unwrap()
        );
        let big = e0.triple_fixed_locus(&a2, 2).unwrap();
        let big = big.points().unwrap();
        assert_eq!(big.len(), 27);
        for p in e0.torsion(3).unwrap() {
            assert!(big.contains(p));
        }
        assert_eq!(
            e0.triple_fixed_locus(&a2, 3).unwrap().points().unwrap(),
            e0.torsion(6).unwrap()
        );

        let e1 = curve_13();
        let a3 = e1.auto(AutoKind::Tau3).unwrap();
        let set = e1.triple_fixed_locus(&a3, 1).unwrap();
        let set = set.points().unwrap();
        assert_eq!(set.len(), 18);
        let tt = e1.torsion_tower().unwrap();
        let diag = ProjPoint::new([tt.one(), tt.one(), e1.lambda().lift_to(tt).unwrap()]).unwrap();
        assert!(set.contains(&diag));
        // the set is exactly {o, diag} + 3-torsion
        let mut expect = Vec::new();
        for s in [e1.origin().lift_to(tt).unwrap(), diag] {
            for r in e1.torsion(3).unwrap() {
                expect.push(e1.add(&s, r).unwrap());
            }
        }
        expect.sort();
        expect.dedup();
        assert_eq!(set, expect.as_slice());
        assert_eq!(
            e1.triple_fixed_locus(&a3, 2).unwrap().points().unwrap(),
            e1.torsion(6).unwrap()
        );
    }

    #[test]
    fn eta_points_need_the_right_generator() {
        // lambda = 0 over a tower without a 9th root of unity
        let qq = q();
        let te = qq.adjoin("eps", &[qq.int(1), qq.int(1)]).unwrap();
        let tc = te.adjoin("cbrt2", &[te.int(-2), te.int(0), te.int(0)]).unwrap();
        let e = HesseCurve::new(tc.int(0)).unwrap();
        let a2 = e.auto(AutoKind::Tau2).unwrap();
        assert_eq!(
            e.triple_fixed_locus(&a2, 2).unwrap_err(),
            Error::NeedsGenerator("eta")
        );
        // but the small loci still work
        assert_eq!(
            e.triple_fixed_locus(&a2, 1).unwrap().points().unwrap().len(),
            9
        );
    }

    #[test]
    fn displacement_subgroups() {
        let e = curve_53();
        let a1 = e.auto(AutoKind::Tau1).unwrap();
        assert_eq!(
            e.inflection_displacements(&a1, 0).unwrap(),
            vec![e.origin().lift_to(e.torsion_tower().unwrap()).unwrap()]
        );
        // inversion displaces r to 2r, covering all of the 3-torsion
        assert_eq!(
            e.inflection_displacements(&a1, 1).unwrap(),
            e.torsion(3).unwrap().to_vec()
        );

        let e0 = curve_0();
        let a2 = e0.auto(AutoKind::Tau2).unwrap();
        assert_eq!(
            e0.inflection_displacements(&a2, 1).unwrap(),
            e0.torsion(3).unwrap().to_vec()
        );
        let disp2 = e0.inflection_displacements(&a2, 2).unwrap();
        assert_eq!(disp2.len(), 3);
        let tt = e0.torsion_tower().unwrap();
        let eps = e0.eps().unwrap().clone();
        assert!(disp2.contains(&ProjPoint::new([tt.one(), -&eps, tt.zero()]).unwrap()));
        assert!(disp2.contains(&e0.origin().lift_to(tt).unwrap()));

        let e1 = curve_13();
        let a3 = e1.auto(AutoKind::Tau3).unwrap();
        assert_eq!(
            e1.inflection_displacements(&a3, 1).unwrap(),
            e1.torsion(3).unwrap().to_vec()
        );
    }

    #[test]
    fn point_serialization_round_trip() {
        let e = curve_0();
        let tt = e.torsion_tower().unwrap();
        for p in e.torsion(6).unwrap().iter().take(8) {
            let j = p.to_json();
            let back = ProjPoint::from_json(tt, &j).unwrap();
            assert_eq!(&back, p);
        }
    }
}
