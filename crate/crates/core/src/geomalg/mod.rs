//! Quadratic algebras attached to a Hesse curve together with one of its
//! symmetries: relation spaces, regularity, isomorphism orbits, and the
//! classification of the finite families.

pub mod hilbert;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::matrix::{echelonize_rows, intersect_rowspaces, ExactMatrix};
use crate::exactfield::{deeper_tower, FieldElement, Tower};
use crate::forms::{quad_lin_mul, QuadForm, DEG3_MONOMIALS};
use crate::hesse::{sorted_unique, AddBranch, AutoKind, CurveAuto, CurveSubset, HesseCurve, ProjPoint};
use crate::tensor::{LinMap, Tensor2, Tensor3};

/// A curve together with the map q -> p + tau^i(q).
#[derive(Debug, Clone)]
pub struct PairDescriptor {
    curve: HesseCurve,
    auto: CurveAuto,
    point: ProjPoint,
    exponent: usize,
}

impl PairDescriptor {
    pub fn new(
        curve: &HesseCurve,
        kind: AutoKind,
        point: &ProjPoint,
        exponent: i64,
    ) -> Result<Self> {
        let auto = curve.auto(kind)?;
        let tt = curve.torsion_tower()?.clone();
        let point = point.lift_to(&tt)?;
        if !curve.contains(&point) {
            return Err(Error::NotOnCurve);
        }
        let exponent = auto.reduce(exponent);
        Ok(PairDescriptor {
            curve: curve.clone(),
            auto,
            point,
            exponent,
        })
    }

    pub fn curve(&self) -> &HesseCurve {
        &self.curve
    }

    pub fn auto(&self) -> &CurveAuto {
        &self.auto
    }

    pub fn point(&self) -> &ProjPoint {
        &self.point
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    /// p + tau^i(q), evaluated through the group law.
    pub fn sigma_apply(&self, q: &ProjPoint) -> Result<ProjPoint> {
        let moved = self.auto.apply(q, self.exponent as i64)?;
        self.curve.add(&self.point, &moved)
    }

    /// The three coordinates of p + tau^i(x:y:z) as quadratic forms, on the
    /// chart where the chosen addition branch does not vanish.
    pub fn sigma_quadratics(&self, branch: AddBranch) -> Result<[QuadForm; 3]> {
        let tt = self.curve.torsion_tower()?.clone();
        let [a, b, c] = self.point.coords().clone();
        // coordinates of p + (x:y:z) with p = (a:b:c) fixed
        let raw: [[(FieldElement, [u8; 3]); 2]; 3] = match branch {
            AddBranch::First => [
                [(&a * &c, [0, 2, 0]), (-&(&b * &b), [1, 0, 1])],
                [(&b * &c, [2, 0, 0]), (-&(&a * &a), [0, 1, 1])],
                [(&a * &b, [0, 0, 2]), (-&(&c * &c), [1, 1, 0])],
            ],
            AddBranch::Second => [
                [(&a * &b, [2, 0, 0]), (-&(&c * &c), [0, 1, 1])],
                [(&a * &c, [0, 0, 2]), (-&(&b * &b), [1, 1, 0])],
                [(&b * &c, [0, 2, 0]), (-&(&a * &a), [1, 0, 1])],
            ],
        };
        let lin = self.auto.point_matrix(self.exponent as i64);
        let mut out = Vec::with_capacity(3);
        for terms in raw {
            let mut q = QuadForm::zero(&tt);
            for (coeff, expo) in terms {
                q.set_coeff(expo, coeff);
            }
            out.push(q.compose_linear(&lin)?);
        }
        Ok([out[0].clone(), out[1].clone(), out[2].clone()])
    }

    fn branch_relation_rows(&self, branch: AddBranch) -> Result<Vec<Vec<FieldElement>>> {
        let tt = self.curve.torsion_tower()?.clone();
        let g = self.curve.equation().lift_to(&tt)?;
        let quads = self.sigma_quadratics(branch)?;
        // columns: the nine c_jk, then a multiplier for the curve equation
        let mut m = ExactMatrix::zero(&tt, DEG3_MONOMIALS.len(), 10);
        for j in 0..3 {
            let mut unit = [tt.zero(), tt.zero(), tt.zero()];
            unit[j] = tt.one();
            for (k, quad) in quads.iter().enumerate() {
                let cubic = quad_lin_mul(quad, &unit)?;
                for (row, coeff) in cubic.coeffs().iter().enumerate() {
                    m.set(row, 3 * j + k, coeff.clone());
                }
            }
        }
        for (row, coeff) in g.coeffs().iter().enumerate() {
            m.set(row, 9, -coeff);
        }
        let kernel = m.nullspace()?;
        let rows: Vec<Vec<FieldElement>> = kernel.into_iter().map(|v| v[..9].to_vec()).collect();
        echelonize_rows(&tt, rows)
    }

    /// Relation candidates read off from one addition branch alone.
    pub fn branch_relations(&self, branch: AddBranch) -> Result<RelationSpace> {
        let tt = self.curve.torsion_tower()?.clone();
        let rows = self.branch_relation_rows(branch)?;
        RelationSpace::from_rows(&tt, rows)
    }

    /// Quadratic elements sum c_jk x_j (x) x_k vanishing on the graph of sigma:
    /// the first slot is evaluated at a curve point, the second at its image.
    pub fn relations(&self) -> Result<RelationSpace> {
        let tt = self.curve.torsion_tower()?.clone();
        let first = self.branch_relation_rows(AddBranch::First)?;
        let second = self.branch_relation_rows(AddBranch::Second)?;
        let common = intersect_rowspaces(&tt, &first, &second, 9)?;
        if common.len() != 3 {
            return Err(Error::UnexpectedDimension {
                expected: 3,
                got: common.len(),
            });
        }
        RelationSpace::from_rows(&tt, common)
    }

    /// tau^i fixes 3p and p has no zero coordinate.
    pub fn is_regular(&self) -> Result<bool> {
        if self.point.on_coordinate_triangle() {
            return Ok(false);
        }
        let triple = self.curve.scalar_mul(3, &self.point)?;
        let moved = self.auto.apply(&triple, self.exponent as i64)?;
        Ok(moved == triple)
    }

    /// Points reachable from p by powers of tau and the displacement subgroup
    /// attached to tau^i. Two pairs with the same exponent are isomorphic
    /// exactly when their base points share this orbit.
    pub fn orbit(&self) -> Result<Vec<ProjPoint>> {
        let disp = self
            .curve
            .inflection_displacements(&self.auto, self.exponent as i64)?;
        let mut out = Vec::new();
        for l in 0..self.auto.order() {
            let moved = self.auto.apply(&self.point, l as i64)?;
            for r in &disp {
                out.push(self.curve.add(&moved, r)?);
            }
        }
        Ok(sorted_unique(out))
    }
}

/// Both descriptors must live on the same curve with the same symmetry kind,
/// and neither base point may lie on the coordinate triangle.
pub fn pairs_isomorphic(a: &PairDescriptor, b: &PairDescriptor) -> Result<bool> {
    if a.curve != b.curve {
        return Err(Error::InvalidArgument(
            "pairs live on different curves".into(),
        ));
    }
    if a.auto.kind() != b.auto.kind() {
        return Err(Error::InvalidArgument(
            "pairs use different symmetry kinds".into(),
        ));
    }
    if a.point.on_coordinate_triangle() || b.point.on_coordinate_triangle() {
        return Err(Error::InvalidArgument(
            "orbit comparison needs base points with no zero coordinate".into(),
        ));
    }
    if a.exponent != b.exponent {
        return Ok(false);
    }
    let orbit = a.orbit()?;
    let target = b.point.lift_to(a.curve.torsion_tower()?)?;
    Ok(orbit.contains(&target))
}

/// Echelonized span of quadratic tensors.
#[derive(Debug, Clone)]
pub struct RelationSpace {
    tower: Tower,
    basis: Vec<Tensor2>,
}

impl RelationSpace {
    pub fn from_tensors(tower: &Tower, tensors: &[Tensor2]) -> Result<Self> {
        let mut rows = Vec::with_capacity(tensors.len());
        for t in tensors {
            let lifted = t.lift_to(tower)?;
            rows.push(lifted.coeffs().to_vec());
        }
        let rows = echelonize_rows(tower, rows)?;
        Self::from_rows(tower, rows)
    }

    fn from_rows(tower: &Tower, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let mut basis = Vec::with_capacity(rows.len());
        for row in rows {
            let mut t = Tensor2::zero(tower);
            for (idx, coeff) in row.into_iter().enumerate() {
                t.set_coeff_at(idx, coeff);
            }
            basis.push(t);
        }
        Ok(RelationSpace {
            tower: tower.clone(),
            basis,
        })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn basis(&self) -> &[Tensor2] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, t: &Tensor2) -> Result<bool> {
        let tower = deeper_tower(&self.tower, t.tower())?;
        let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(self.basis.len() + 1);
        for b in &self.basis {
            rows.push(b.lift_to(&tower)?.coeffs().to_vec());
        }
        rows.push(t.lift_to(&tower)?.coeffs().to_vec());
        let echelon = echelonize_rows(&tower, rows)?;
        Ok(echelon.len() == self.basis.len())
    }

    pub fn equals(&self, other: &RelationSpace) -> Result<bool> {
        if self.dim() != other.dim() {
            return Ok(false);
        }
        for t in &other.basis {
            if !self.contains(t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Image of the map r -> f(q, r) over all relations f, as a matrix whose
    /// kernel is the fiber of the point scheme projection over q.
    pub fn fiber_at(&self, q: &ProjPoint) -> Result<ProjPoint> {
        let tower = deeper_tower(&self.tower, q.coords()[0].tower())?;
        let q = q.lift_to(&tower)?;
        let mut m = ExactMatrix::zero(&tower, self.basis.len(), 3);
        for (row, f) in self.basis.iter().enumerate() {
            let f = f.lift_to(&tower)?;
            for k in 0..3 {
                let mut acc = tower.zero();
                for j in 0..3 {
                    acc = &acc + &(f.coeff_at(3 * j + k) * &q.coords()[j]);
                }
                m.set(row, k, acc);
            }
        }
        let kernel = m.nullspace()?;
        if kernel.len() != 1 {
            return Err(Error::FiberNotPoint { dim: kernel.len() });
        }
        let v = kernel.into_iter().next().unwrap();
        ProjPoint::new([v[0].clone(), v[1].clone(), v[2].clone()])
    }

    pub fn hilbert_dims(&self, nmax: usize) -> Result<Vec<usize>> {
        hilbert::hilbert_dims(&self.basis, nmax)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.basis.iter().map(|t| t.to_json()).collect())
    }
}

/// The left partial derivatives of a cubic tensor span its relation space.
pub fn derivation_quotient_relations(w: &Tensor3) -> Result<RelationSpace> {
    let derivs = [w.left_deriv(0), w.left_deriv(1), w.left_deriv(2)];
    RelationSpace::from_tensors(w.tower(), &derivs)
}

/// Cubic tensor whose derivation quotient matches the translation pair at p.
pub fn sklyanin_potential(curve: &HesseCurve, p: &ProjPoint) -> Result<Tensor3> {
    if !curve.contains(p) {
        return Err(Error::NotOnCurve);
    }
    let [a, b, c] = p.coords();
    Tensor3::sklyanin(a.tower(), a, b, c)
}

/// Projective matrix acting on points as translation by a point of order
/// dividing three. Normalized to determinant one.
pub fn translation_matrix(curve: &HesseCurve, r: &ProjPoint) -> Result<ExactMatrix> {
    let tt = curve.torsion_tower()?.clone();
    let r = r.lift_to(&tt)?;
    if curve.scalar_mul(3, &r)? != curve.origin() {
        return Err(Error::InvalidArgument(
            "translation matrices exist only for points killed by three".into(),
        ));
    }
    let eps = curve.eps()?.clone();
    let one = tt.one();
    let zero = tt.zero();
    // generators: diag(eps^2, 1, eps) translates by (1 : -eps : 0),
    // the cyclic shift translates by (1 : 0 : -1)
    let u = curve.point([one.clone(), -&eps, zero.clone()])?;
    let v = curve.point([one.clone(), zero.clone(), -&one])?;
    let d = ExactMatrix::from_rows(
        &tt,
        &[
            vec![&eps * &eps, zero.clone(), zero.clone()],
            vec![zero.clone(), one.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), eps.clone()],
        ],
    )?;
    let s = ExactMatrix::from_rows(
        &tt,
        &[
            vec![zero.clone(), one.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), one.clone()],
            vec![one.clone(), zero.clone(), zero.clone()],
        ],
    )?;
    for a in 0..3i64 {
        for b in 0..3i64 {
            let au = curve.scalar_mul(a, &u)?;
            let bv = curve.scalar_mul(b, &v)?;
            if curve.add(&au, &bv)? == r {
                let mut m = ExactMatrix::identity(&tt, 3);
                for _ in 0..a {
                    m = d.matmul(&m)?;
                }
                for _ in 0..b {
                    m = s.matmul(&m)?;
                }
                debug_assert!({
                    let o = curve.origin();
                    let moved = apply_point_matrix(&m, &o)?;
                    moved == curve.add(&o, &r)?
                });
                return Ok(m);
            }
        }
    }
    unreachable!("generators span the nine translation classes")
}

fn apply_point_matrix(m: &ExactMatrix, p: &ProjPoint) -> Result<ProjPoint> {
    let p = p.lift_to(m.tower())?;
    let mut out = Vec::with_capacity(3);
    for i in 0..3 {
        let mut acc = m.tower().zero();
        for j in 0..3 {
            acc = &acc + &(m.at(i, j) * &p.coords()[j]);
        }
        out.push(acc);
    }
    ProjPoint::new([out[0].clone(), out[1].clone(), out[2].clone()])
}

/// Scalar by which the substitution induced by translation-by-r rescales a
/// cubic tensor, or None when it is not preserved.
pub fn translation_scalar(
    curve: &HesseCurve,
    w: &Tensor3,
    r: &ProjPoint,
) -> Result<Option<FieldElement>> {
    let m = translation_matrix(curve, r)?;
    let theta = LinMap::new(m.transpose())?;
    w.aut_scalar(&theta)
}

/// Whether the substitution t preserves the translation potential at p up to
/// a scalar. The base point must avoid the coordinate triangle.
pub fn paut_membership(curve: &HesseCurve, p: &ProjPoint, t: &LinMap) -> Result<bool> {
    let tt = curve.torsion_tower()?;
    let p = p.lift_to(tt)?;
    if p.on_coordinate_triangle() {
        return Err(Error::InvalidArgument(
            "potential symmetry groups are defined away from the coordinate triangle".into(),
        ));
    }
    let w = sklyanin_potential(curve, &p)?;
    Ok(w.aut_scalar(t)?.is_some())
}

/// Confirms on the lambda = 0 curve that no pair obtained by translating a
/// base point and cubing the symmetry is isomorphic to either exceptional
/// pair: the reachable exponents {0, 3} miss {2, 4}. Samples every order-six
/// torsion point off the coordinate triangle plus the exceptional base point.
pub fn verify_type_e_not_twist(curve: &HesseCurve) -> Result<bool> {
    if !curve.lambda().is_zero() {
        return Err(Error::InvalidArgument(
            "the exceptional pairs live on the lambda = 0 curve".into(),
        ));
    }
    let targets = [
        PairDescriptor::new(curve, AutoKind::Tau2, &exceptional_base_point(curve, 2)?, 2)?,
        PairDescriptor::new(curve, AutoKind::Tau2, &exceptional_base_point(curve, 4)?, 4)?,
    ];
    let mut samples: Vec<ProjPoint> = curve
        .torsion(6)?
        .iter()
        .filter(|p| !p.on_coordinate_triangle())
        .cloned()
        .collect();
    samples.push(exceptional_base_point(curve, 2)?);
    for p in &samples {
        for r in curve.torsion(3)? {
            let moved = curve.add(p, r)?;
            for j in [0i64, 3] {
                let induced = PairDescriptor::new(curve, AutoKind::Tau2, &moved, j)?;
                for target in &targets {
                    if pairs_isomorphic(&induced, target)? {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Cubic tensors on the lambda = 0 curve whose derivation quotients realize
/// the order-six pairs with exponents two and four. Unlike every other
/// family they are not twists of a translation potential.
pub fn exceptional_potential(curve: &HesseCurve, exponent: usize) -> Result<Tensor3> {
    check_exceptional_args(curve, exponent)?;
    let tt = curve.torsion_tower()?;
    let eta = tt
        .generator("eta")
        .ok_or(Error::NeedsGenerator("eta"))?;
    let h = |k: i64| eta.pow(k).expect("unit power");
    let one = tt.one();
    let terms: [(&str, FieldElement); 9] = if exponent == 2 {
        [
            ("xzx", one.clone()),
            ("zxx", h(1)),
            ("xxz", h(8)),
            ("yxy", one.clone()),
            ("xyy", h(4)),
            ("yyx", h(5)),
            ("zyz", one),
            ("yzz", h(7)),
            ("zzy", h(2)),
        ]
    } else {
        [
            ("xzx", one.clone()),
            ("zxx", h(8)),
            ("xxz", h(1)),
            ("yxy", one.clone()),
            ("xyy", h(5)),
            ("yyx", h(4)),
            ("zyz", one),
            ("yzz", h(2)),
            ("zzy", h(7)),
        ]
    };
    Tensor3::from_terms(tt, &terms)
}

/// Base point of the pair whose relations the exceptional potential cuts out.
pub fn exceptional_base_point(curve: &HesseCurve, exponent: usize) -> Result<ProjPoint> {
    check_exceptional_args(curve, exponent)?;
    let tt = curve.torsion_tower()?;
    let eta = tt
        .generator("eta")
        .ok_or(Error::NeedsGenerator("eta"))?;
    let h = |k: i64| eta.pow(k).expect("unit power");
    let coords = if exponent == 2 {
        [h(8), h(4), tt.one()]
    } else {
        [h(1), h(5), tt.one()]
    };
    curve.point(coords)
}

fn check_exceptional_args(curve: &HesseCurve, exponent: usize) -> Result<()> {
    if exponent != 2 && exponent != 4 {
        return Err(Error::InvalidArgument(
            "exceptional potentials exist for exponents two and four".into(),
        ));
    }
    if !curve.lambda().is_zero() {
        return Err(Error::InvalidArgument(
            "exceptional potentials live on the lambda = 0 curve".into(),
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TypeTag {
    A,
    B,
    E,
    H,
}

impl TypeTag {
    pub fn name(self) -> &'static str {
        match self {
            TypeTag::A => "A",
            TypeTag::B => "B",
            TypeTag::E => "E",
            TypeTag::H => "H",
        }
    }
}

pub fn type_tag(kind: AutoKind, exponent: usize, order: usize) -> TypeTag {
    if exponent == 0 {
        TypeTag::A
    } else if 2 * exponent == order {
        TypeTag::B
    } else {
        match kind {
            AutoKind::Tau1 => TypeTag::B,
            AutoKind::Tau2 => TypeTag::E,
            AutoKind::Tau3 => TypeTag::H,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IsoClass {
    pub representative: String,
    pub representative_coords: serde_json::Value,
    pub members: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExponentFamily {
    pub exponent: usize,
    pub tag: TypeTag,
    /// true when every curve point is a candidate base point
    pub whole_curve: bool,
    pub candidates: Option<usize>,
    pub regular: Option<usize>,
    pub classes: Vec<IsoClass>,
    /// regular sample base points reported for the continuous family
    pub regular_samples: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub lambda: String,
    pub j_invariant: String,
    pub kind: String,
    pub order: usize,
    pub families: Vec<ExponentFamily>,
}

impl Classification {
    pub fn family(&self, exponent: usize) -> Option<&ExponentFamily> {
        self.families.iter().find(|f| f.exponent == exponent)
    }

    pub fn class_count(&self, tag: TypeTag) -> usize {
        self.families
            .iter()
            .filter(|f| f.tag == tag)
            .map(|f| f.classes.len())
            .sum()
    }
}

/// Enumerates, for every power of the chosen symmetry, the finite base locus,
/// its regular members, and their isomorphism classes.
pub fn classify(curve: &HesseCurve, kind: AutoKind) -> Result<Classification> {
    let auto = curve.auto(kind)?;
    let tt = curve.torsion_tower()?.clone();
    let mut families = Vec::new();
    for i in 0..auto.order() {
        let tag = type_tag(kind, i, auto.order());
        let locus = curve.triple_fixed_locus(&auto, i as i64)?;
        match locus {
            CurveSubset::Entire => {
                let mut samples = Vec::new();
                for p in curve.torsion(2)? {
                    if *p == curve.origin() {
                        continue;
                    }
                    let pair = PairDescriptor::new(curve, kind, p, i as i64)?;
                    if pair.is_regular()? {
                        samples.push(p.to_string());
                    }
                }
                families.push(ExponentFamily {
                    exponent: i,
                    tag,
                    whole_curve: true,
                    candidates: None,
                    regular: None,
                    classes: Vec::new(),
                    regular_samples: samples,
                });
            }
            CurveSubset::Finite(points) => {
                let regular: Vec<ProjPoint> = points
                    .iter()
                    .filter(|p| !p.on_coordinate_triangle())
                    .cloned()
                    .collect();
                let mut remaining = regular.clone();
                let mut classes = Vec::new();
                let mut seeds = canonical_seeds(curve, kind, i)?;
                for p in &regular {
                    seeds.push(p.clone());
                }
                for seed in seeds {
                    let seed = seed.lift_to(&tt)?;
                    if !remaining.contains(&seed) {
                        continue;
                    }
                    let pair = PairDescriptor::new(curve, kind, &seed, i as i64)?;
                    let orbit = pair.orbit()?;
                    debug_assert!(orbit.iter().all(|q| regular.contains(q)));
                    classes.push(IsoClass {
                        representative: seed.to_string(),
                        representative_coords: seed.to_json(),
                        members: orbit.len(),
                    });
                    remaining.retain(|q| !orbit.contains(q));
                }
                debug_assert!(remaining.is_empty());
                families.push(ExponentFamily {
                    exponent: i,
                    tag,
                    whole_curve: false,
                    candidates: Some(points.len()),
                    regular: Some(regular.len()),
                    classes,
                    regular_samples: Vec::new(),
                });
            }
        }
    }
    Ok(Classification {
        lambda: curve.lambda().to_string(),
        j_invariant: curve.j_invariant()?.to_string(),
        kind: kind.name().to_string(),
        order: auto.order(),
        families,
    })
}

/// Preferred orbit representatives so reported classes match the published
/// normal forms.
fn canonical_seeds(curve: &HesseCurve, kind: AutoKind, exponent: usize) -> Result<Vec<ProjPoint>> {
    let auto = curve.auto(kind)?;
    let tag = type_tag(kind, exponent, auto.order());
    match tag {
        TypeTag::B => {
            let origin = curve.origin();
            Ok(curve
                .torsion(2)?
                .iter()
                .filter(|p| **p != origin)
                .cloned()
                .collect())
        }
        TypeTag::H => {
            let tt = curve.torsion_tower()?.clone();
            let lam = curve.lambda().lift_to(&tt)?;
            let p = curve.point([tt.one(), tt.one(), lam])?;
            Ok(vec![p])
        }
        TypeTag::E => {
            let tt = curve.torsion_tower()?.clone();
            let eta = match tt.generator("eta") {
                Some(e) => e,
                None => return Ok(Vec::new()),
            };
            let pow = |k: i64| eta.pow(k).expect("unit power");
            let seed = if exponent == 2 {
                [pow(8), pow(4), tt.one()]
            } else {
                [pow(1), pow(5), tt.one()]
            };
            match curve.point(seed) {
                Ok(p) => Ok(vec![p]),
                Err(_) => Ok(Vec::new()),
            }
        }
        TypeTag::A => Ok(Vec::new()),
    }
}
