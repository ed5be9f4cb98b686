//! Machine-checked reproduction of the published computations: named checks
//! over the three distinguished curves, collected into a report.

use serde::Serialize;

use crate::error::Result;
use crate::exactfield::Tower;
use crate::hesse::HesseCurve;

/// lambda = 5/3 over Q(eps, sqrt2). Generic: only the order-two symmetry
/// is linear.
pub fn lambda_five_thirds() -> Result<HesseCurve> {
    let q = Tower::rationals();
    let t = q.adjoin("eps", &[q.int(1), q.int(1)])?;
    let t = t.adjoin("sqrt2", &[t.int(-2), t.int(0)])?;
    HesseCurve::new(t.ratio(5, 3))
}

/// lambda = 0 over Q(eta, cbrt2) with eta a primitive ninth root of unity.
/// Carries the order-six symmetry.
pub fn lambda_zero() -> Result<HesseCurve> {
    let q = Tower::rationals();
    let t = q.adjoin(
        "eta",
        &[q.int(1), q.int(0), q.int(0), q.int(1), q.int(0), q.int(0)],
    )?;
    let t = t.adjoin("cbrt2", &[t.int(-2), t.int(0), t.int(0)])?;
    HesseCurve::new(t.int(0))
}

/// lambda = 1 + sqrt3 over Q(eps, sqrt3, e2s) with e2s^2 = 6 sqrt3.
/// Carries the order-four symmetry.
pub fn lambda_one_plus_sqrt3() -> Result<HesseCurve> {
    let q = Tower::rationals();
    let t = q.adjoin("eps", &[q.int(1), q.int(1)])?;
    let t = t.adjoin("sqrt3", &[t.int(-3), t.int(0)])?;
    let s3 = t.generator("sqrt3").expect("sqrt3 generator");
    let t = t.adjoin("e2s", &[-(&t.int(6) * &s3), t.zero()])?;
    HesseCurve::new(&t.one() + &s3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// the recomputed value disagrees with a published table entry
    Erratum,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
}

impl Check {
    pub fn new(name: &str, status: Status, details: impl Into<String>) -> Check {
        Check {
            name: name.to_string(),
            status,
            details: details.into(),
        }
    }

    pub fn pass(name: &str, details: impl Into<String>) -> Check {
        Check::new(name, Status::Pass, details)
    }

    pub fn expect(name: &str, ok: bool, details: impl Into<String>) -> Check {
        Check::new(name, if ok { Status::Pass } else { Status::Fail }, details)
    }
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count()
    }

    pub fn errata(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Erratum)
            .count()
    }
}

/// Deterministic 64-bit generator for sampling-based checks.
pub(crate) struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

use crate::exactfield::FieldElement;
use crate::geomalg::{
    classify, derivation_quotient_relations, exceptional_base_point, exceptional_potential,
    pairs_isomorphic, paut_membership, sklyanin_potential, translation_matrix,
    verify_type_e_not_twist, PairDescriptor, TypeTag,
};
use crate::hesse::{sorted_unique, AddBranch, AutoKind, ProjPoint};
use crate::tensor::{LinMap, Tensor2, Tensor3};

/// The symmetry kind a curve supports beyond the generic order-two one.
pub fn preferred_kind(curve: &HesseCurve) -> AutoKind {
    for kind in [AutoKind::Tau2, AutoKind::Tau3] {
        if curve.auto(kind).is_ok() {
            return kind;
        }
    }
    AutoKind::Tau1
}

fn order_two_points(curve: &HesseCurve) -> Result<Vec<ProjPoint>> {
    let origin = curve.origin();
    Ok(curve
        .torsion(2)?
        .iter()
        .filter(|p| **p != origin)
        .cloned()
        .collect())
}

fn substitution(curve: &HesseCurve, kind: AutoKind, i: i64) -> Result<LinMap> {
    let auto = curve.auto(kind)?;
    LinMap::new(auto.substitution_matrix(i))
}

fn twisted_potential(
    curve: &HesseCurve,
    p: &ProjPoint,
    kind: AutoKind,
    i: i64,
) -> Result<Tensor3> {
    let w = sklyanin_potential(curve, &p.lift_to(curve.torsion_tower()?)?)?;
    w.ms_twist(&substitution(curve, kind, i)?)
}

fn check_group_law_units(curves: &[&HesseCurve]) -> Result<Check> {
    let name = "group-law-units-and-commutativity";
    let mut pairs = 0usize;
    for curve in curves {
        let pts = curve.torsion(6)?;
        let origin = curve.origin();
        for p in pts {
            if &curve.add(p, &origin)? != p || &curve.add(&origin, p)? != p {
                return Ok(Check::expect(name, false, format!("identity fails at {p}")));
            }
            if curve.add(p, &curve.neg(p)?)? != origin {
                return Ok(Check::expect(name, false, format!("inverse fails at {p}")));
            }
        }
        for (idx, p) in pts.iter().enumerate() {
            for q in &pts[idx..] {
                if curve.add(p, q)? != curve.add(q, p)? {
                    return Ok(Check::expect(
                        name,
                        false,
                        format!("commutativity fails at {p}, {q}"),
                    ));
                }
                pairs += 1;
            }
        }
    }
    Ok(Check::pass(
        name,
        format!("identity, inverse, and {pairs} unordered sums on three curves"),
    ))
}

fn check_branch_agreement(curves: &[&HesseCurve]) -> Result<Check> {
    let name = "group-law-branch-agreement";
    let mut both = 0usize;
    for curve in curves {
        let pts = curve.torsion(6)?;
        for p in pts {
            for q in pts {
                let first = curve.add_branch(p, q, AddBranch::First)?;
                let second = curve.add_branch(p, q, AddBranch::Second)?;
                if let (Some(a), Some(b)) = (&first, &second) {
                    if a != b {
                        return Ok(Check::expect(
                            name,
                            false,
                            format!("branches disagree at {p} + {q}"),
                        ));
                    }
                    both += 1;
                }
                if first.is_none() && second.is_none() {
                    return Ok(Check::expect(
                        name,
                        false,
                        format!("both branches degenerate at {p} + {q}"),
                    ));
                }
            }
        }
    }
    Ok(Check::pass(
        name,
        format!("{both} torsion sums computed on both branches"),
    ))
}

fn check_associativity(curves: &[&HesseCurve]) -> Result<Check> {
    let name = "group-law-associativity-sample";
    let mut rng = SplitMix64(0x5eed_0001);
    let mut triples = 0usize;
    for curve in curves {
        let pts = curve.torsion(6)?;
        for _ in 0..168 {
            let p = &pts[rng.below(pts.len())];
            let q = &pts[rng.below(pts.len())];
            let r = &pts[rng.below(pts.len())];
            let lhs = curve.add(&curve.add(p, q)?, r)?;
            let rhs = curve.add(p, &curve.add(q, r)?)?;
            if lhs != rhs {
                return Ok(Check::expect(
                    name,
                    false,
                    format!("associativity fails at {p}, {q}, {r}"),
                ));
            }
            triples += 1;
        }
    }
    Ok(Check::pass(name, format!("{triples} deterministic triples")))
}

fn check_torsion_cardinalities(curves: &[&HesseCurve]) -> Result<Check> {
    let name = "torsion-cardinalities";
    for curve in curves {
        let sizes = (
            curve.torsion(2)?.len(),
            curve.torsion(3)?.len(),
            curve.torsion(6)?.len(),
        );
        if sizes != (4, 9, 36) {
            return Ok(Check::expect(
                name,
                false,
                format!("lambda = {}: got {:?}", curve.lambda(), sizes),
            ));
        }
        for p in curve.torsion(3)? {
            if !p.on_coordinate_triangle() {
                return Ok(Check::expect(
                    name,
                    false,
                    format!("order-three point {p} off the coordinate triangle"),
                ));
            }
        }
    }
    Ok(Check::pass(name, "4, 9, 36 on all three curves"))
}

fn check_two_torsion_lambda_zero(c0: &HesseCurve) -> Result<Check> {
    let name = "two-torsion-roots-lambda-zero";
    let tt = c0.torsion_tower()?.clone();
    let cbrt2 = tt.generator("cbrt2").expect("cbrt2 generator");
    let eps = c0.eps()?.clone();
    let mut expected = vec![c0.origin()];
    let mut factor = tt.one();
    for _ in 0..3 {
        let c = -&(&cbrt2 * &factor);
        expected.push(c0.point([tt.one(), tt.one(), c])?);
        factor = &factor * &eps;
    }
    let expected = sorted_unique(expected);
    let ok = expected == c0.torsion(2)?.to_vec();
    Ok(Check::expect(
        name,
        ok,
        "roots are -cbrt2 times the three cube roots of unity",
    ))
}

fn check_fixed_loci(curves: &[&HesseCurve]) -> Result<Check> {
    let name = "fixed-loci";
    let mut finite = 0usize;
    for curve in curves {
        let kind = preferred_kind(curve);
        let auto = curve.auto(kind)?;
        for i in 0..auto.order() as i64 {
            let brute: Vec<ProjPoint> = curve
                .torsion(6)?
                .iter()
                .filter(|p| auto.apply(p, i).map(|m| &m == *p).unwrap_or(false))
                .cloned()
                .collect();
            match curve.fixed_locus(&auto, i)? {
                crate::hesse::CurveSubset::Entire => {
                    if i != 0 || brute.len() != 36 {
                        return Ok(Check::expect(
                            name,
                            false,
                            format!("power {i} reported as the whole curve"),
                        ));
                    }
                }
                crate::hesse::CurveSubset::Finite(pts) => {
                    for p in &pts {
                        if auto.apply(p, i)? != *p {
                            return Ok(Check::expect(
                                name,
                                false,
                                format!("{p} not fixed by power {i}"),
                            ));
                        }
                    }
                    if sorted_unique(pts.clone()) != sorted_unique(brute) {
                        return Ok(Check::expect(
                            name,
                            false,
                            format!(
                                "closed form differs from torsion scan at power {i}, lambda = {}",
                                curve.lambda()
                            ),
                        ));
                    }
                    finite += pts.len();
                }
            }
        }
    }
    Ok(Check::pass(
        name,
        format!("{finite} fixed points matched against torsion scans"),
    ))
}

fn eta_candidate_points(c0: &HesseCurve) -> Result<Vec<ProjPoint>> {
    let tt = c0.torsion_tower()?.clone();
    let eta = tt.generator("eta").expect("eta generator");
    let h = |k: u32| eta.pow(k as i64).expect("unit power");
    let mut out = Vec::new();
    for (first, second) in [([2u32, 5, 8], [1u32, 4, 7]), ([1, 4, 7], [2, 5, 8])] {
        for a in first {
            for b in second {
                out.push(c0.point([h(a), h(b), tt.one()])?);
            }
        }
    }
    Ok(sorted_unique(out))
}

fn check_triple_fixed_loci(curves: &[&HesseCurve]) -> Result<Check> {
    let name = "triple-fixed-loci";
    let mut checked = 0usize;
    for curve in curves {
        let kind = preferred_kind(curve);
        let auto = curve.auto(kind)?;
        for i in 0..auto.order() as i64 {
            let brute: Vec<ProjPoint> = curve
                .torsion(6)?
                .iter()
                .filter(|p| {
                    let triple = curve.scalar_mul(3, p).expect("torsion triple");
                    auto.apply(&triple, i).expect("symmetry power") == triple
                })
                .cloned()
                .collect();
            match curve.triple_fixed_locus(&auto, i)? {
                crate::hesse::CurveSubset::Entire => {
                    if brute.len() != 36 {
                        return Ok(Check::expect(name, false, format!("power {i} not free")));
                    }
                }
                crate::hesse::CurveSubset::Finite(pts) => {
                    for p in &pts {
                        let triple = curve.scalar_mul(3, p)?;
                        if auto.apply(&triple, i)? != triple {
                            return Ok(Check::expect(
                                name,
                                false,
                                format!("{p} fails the defining identity at power {i}"),
                            ));
                        }
                    }
                    let on_torsion: Vec<ProjPoint> = pts
                        .iter()
                        .filter(|p| curve.torsion(6).unwrap().contains(p))
                        .cloned()
                        .collect();
                    if sorted_unique(on_torsion) != sorted_unique(brute) {
                        return Ok(Check::expect(
                            name,
                            false,
                            format!(
                                "torsion slice mismatch at power {i}, lambda = {}",
                                curve.lambda()
                            ),
                        ));
                    }
                    checked += pts.len();
                }
            }
        }
    }
    // the 27-point locus for the square of the order-six symmetry
    let c0 = curves
        .iter()
        .find(|c| c.lambda().is_zero())
        .expect("lambda zero curve");
    let auto = c0.auto(AutoKind::Tau2)?;
    let locus = match c0.triple_fixed_locus(&auto, 2)? {
        crate::hesse::CurveSubset::Finite(pts) => sorted_unique(pts),
        _ => return Ok(Check::expect(name, false, "square power locus not finite")),
    };
    let mut expected: Vec<ProjPoint> = c0.torsion(3)?.to_vec();
    expected.extend(eta_candidate_points(c0)?);
    let expected = sorted_unique(expected);
    if locus != expected {
        return Ok(Check::expect(
            name,
            false,
            "27-point locus differs from the displayed ninth-root points",
        ));
    }
    Ok(Check::pass(
        name,
        format!("{checked} locus points verified; 27-point locus matches the displayed list"),
    ))
}

fn check_displacements(curves: &[&HesseCurve]) -> Result<Check> {
    let name = "displacement-subgroups";
    for curve in curves {
        let kind = preferred_kind(curve);
        let auto = curve.auto(kind)?;
        let expected_sizes: Vec<usize> = match kind {
            AutoKind::Tau1 => vec![1, 9],
            AutoKind::Tau2 => vec![1, 9, 3, 9, 3, 9],
            AutoKind::Tau3 => vec![1, 9, 9, 9],
        };
        for i in 0..auto.order() as i64 {
            let disp = curve.inflection_displacements(&auto, i)?;
            if disp.len() != expected_sizes[i as usize] {
                return Ok(Check::expect(
                    name,
                    false,
                    format!(
                        "power {i} displacement count {} on lambda = {}",
                        disp.len(),
                        curve.lambda()
                    ),
                ));
            }
            for r in &disp {
                for s in &disp {
                    if !disp.contains(&curve.add(r, s)?) {
                        return Ok(Check::expect(
                            name,
                            false,
                            format!("not closed under addition at power {i}"),
                        ));
                    }
                }
            }
        }
        if kind == AutoKind::Tau2 {
            let tt = curve.torsion_tower()?.clone();
            let eps = curve.eps()?.clone();
            let expected = sorted_unique(vec![
                curve.origin(),
                curve.point([tt.one(), -&eps, tt.zero()])?,
                curve.point([tt.one(), -&(&eps * &eps), tt.zero()])?,
            ]);
            for i in [2, 4] {
                let disp = sorted_unique(curve.inflection_displacements(&auto, i)?);
                if disp != expected {
                    return Ok(Check::expect(
                        name,
                        false,
                        format!("power {i} displacement group is not the inflection axis line"),
                    ));
                }
            }
        }
    }
    Ok(Check::pass(
        name,
        "sizes, closure, and the order-three subgroup at the square power",
    ))
}

fn check_classification(
    c53: &HesseCurve,
    c0: &HesseCurve,
    c13: &HesseCurve,
) -> Result<Check> {
    let name = "classification-counts";
    let generic = classify(c53, AutoKind::Tau1)?;
    let zero = classify(c0, AutoKind::Tau2)?;
    let quartic = classify(c13, AutoKind::Tau3)?;
    let counts = (
        generic.class_count(TypeTag::B),
        zero.class_count(TypeTag::B),
        zero.class_count(TypeTag::E),
        quartic.class_count(TypeTag::B),
        quartic.class_count(TypeTag::H),
    );
    if counts != (3, 1, 2, 2, 2) {
        return Ok(Check::expect(name, false, format!("counts {counts:?}")));
    }
    for (cls, fam, expitems) in [
        (&generic, 1usize, (36, 27)),
        (&zero, 3, (36, 27)),
        (&quartic, 2, (36, 27)),
    ] {
        let family = cls.family(fam).expect("family");
        if (family.candidates, family.regular) != (Some(expitems.0), Some(expitems.1)) {
            return Ok(Check::expect(
                name,
                false,
                format!("family {fam} locus sizes {:?}", (family.candidates, family.regular)),
            ));
        }
    }
    Ok(Check::pass(
        name,
        "3 generic, 1 + 2 at lambda = 0, 2 + 2 at lambda = 1 + sqrt3",
    ))
}

struct TableRow {
    curve: HesseCurve,
    kind: AutoKind,
    point: ProjPoint,
    exponent: i64,
    potential: Tensor3,
    tag: TypeTag,
}

/// One entry per published table row, with the potential realized the
/// canonical way: twists for Types A, B, H and fixed coefficient lists for
/// Type E.
fn table_rows(c53: &HesseCurve, c0: &HesseCurve, c13: &HesseCurve) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for curve in [c53, c0, c13] {
        let kind = preferred_kind(curve);
        let auto = curve.auto(kind)?;
        let half = (auto.order() / 2) as i64;
        let roots = order_two_points(curve)?;
        let sample = roots[0].clone();
        rows.push(TableRow {
            curve: curve.clone(),
            kind,
            point: sample.clone(),
            exponent: 0,
            potential: sklyanin_potential(curve, &sample)?,
            tag: TypeTag::A,
        });
        for root in roots {
            rows.push(TableRow {
                curve: curve.clone(),
                kind,
                point: root.clone(),
                exponent: half,
                potential: twisted_potential(curve, &root, kind, half)?,
                tag: TypeTag::B,
            });
        }
    }
    for exponent in [2i64, 4] {
        rows.push(TableRow {
            curve: c0.clone(),
            kind: AutoKind::Tau2,
            point: exceptional_base_point(c0, exponent as usize)?,
            exponent,
            potential: exceptional_potential(c0, exponent as usize)?,
            tag: TypeTag::E,
        });
    }
    let tt = c13.torsion_tower()?.clone();
    let diag = c13.point([tt.one(), tt.one(), c13.lambda().lift_to(&tt)?])?;
    for exponent in [1i64, 3] {
        rows.push(TableRow {
            curve: c13.clone(),
            kind: AutoKind::Tau3,
            point: diag.clone(),
            exponent,
            potential: twisted_potential(c13, &diag, AutoKind::Tau3, exponent)?,
            tag: TypeTag::H,
        });
    }
    Ok(rows)
}

fn type_a_condition(p: &ProjPoint) -> Result<bool> {
    let [a, b, c] = p.coords();
    let abc = &(a * b) * c;
    if abc.is_zero() {
        return Ok(false);
    }
    let cubes = &(&a.pow(3)? + &b.pow(3)?) + &c.pow(3)?;
    Ok(cubes.pow(3)? != (&abc.tower().int(27) * &abc.pow(3)?))
}

fn check_pair_potential_coherence(
    c53: &HesseCurve,
    c0: &HesseCurve,
    c13: &HesseCurve,
) -> Result<Check> {
    let name = "pair-potential-coherence";
    let rows = table_rows(c53, c0, c13)?;
    for row in &rows {
        let pair = PairDescriptor::new(&row.curve, row.kind, &row.point, row.exponent)?;
        if !pair.is_regular()? {
            return Ok(Check::expect(
                name,
                false,
                format!("row at {} power {} not regular", row.point, row.exponent),
            ));
        }
        if row.tag == TypeTag::A && !type_a_condition(&row.point)? {
            return Ok(Check::expect(
                name,
                false,
                format!("translation row condition fails at {}", row.point),
            ));
        }
        let rel = pair.relations()?;
        let dq = derivation_quotient_relations(&row.potential)?;
        if !rel.equals(&dq)? {
            return Ok(Check::expect(
                name,
                false,
                format!(
                    "relations differ from potential derivatives at {} power {}",
                    row.point, row.exponent
                ),
            ));
        }
    }
    // displayed derivative basis of the first exceptional potential
    let tt = c0.torsion_tower()?.clone();
    let eta = tt.generator("eta").expect("eta generator");
    let h = |k: i64| eta.pow(k).expect("unit power");
    let w = exceptional_potential(c0, 2)?;
    let displayed = [
        Tensor2::from_terms(&tt, &[("zx", tt.one()), ("xz", h(8)), ("yy", h(4))])?,
        Tensor2::from_terms(&tt, &[("xy", tt.one()), ("yx", h(5)), ("zz", h(7))])?,
        Tensor2::from_terms(&tt, &[("xx", h(1)), ("yz", tt.one()), ("zy", h(2))])?,
    ];
    for (i, e) in displayed.iter().enumerate() {
        if &w.left_deriv(i) != e {
            return Ok(Check::expect(
                name,
                false,
                format!("displayed derivative {i} differs"),
            ));
        }
    }
    let q2 = exceptional_base_point(c0, 2)?;
    let q4 = exceptional_base_point(c0, 4)?;
    let listed = PairDescriptor::new(c0, AutoKind::Tau2, &q2, 4)?;
    let realized = PairDescriptor::new(c0, AutoKind::Tau2, &q4, 4)?;
    if !pairs_isomorphic(&listed, &realized)? {
        return Ok(Check::expect(
            name,
            false,
            "listed and realized exponent-four base points not in one orbit",
        ));
    }
    Ok(Check::pass(
        name,
        format!("{} rows match their potentials", rows.len()),
    ))
}

fn check_point_fibers(c53: &HesseCurve, c0: &HesseCurve, c13: &HesseCurve) -> Result<Check> {
    let name = "point-fibers";
    let rows = table_rows(c53, c0, c13)?;
    let mut fibers = 0usize;
    for row in &rows {
        // one row per type and curve is enough here; skip repeated roots
        if row.tag == TypeTag::B && row.point != order_two_points(&row.curve)?[0] {
            continue;
        }
        let pair = PairDescriptor::new(&row.curve, row.kind, &row.point, row.exponent)?;
        let rel = pair.relations()?;
        for q in row.curve.torsion(6)? {
            let fiber = rel.fiber_at(q)?;
            if fiber != pair.sigma_apply(q)? {
                return Ok(Check::expect(
                    name,
                    false,
                    format!("fiber at {q} differs for row at {}", row.point),
                ));
            }
            fibers += 1;
        }
    }
    Ok(Check::pass(
        name,
        format!("{fibers} fibers agree with the group-law action"),
    ))
}

fn check_witnesses(c53: &HesseCurve, c0: &HesseCurve, c13: &HesseCurve) -> Result<Check> {
    let name = "superpotential-witnesses";
    let rows = table_rows(c53, c0, c13)?;
    for row in &rows {
        let witness = row.potential.tsp_witness()?;
        if witness.is_none() {
            return Ok(Check::expect(
                name,
                false,
                format!("no witness at {} power {}", row.point, row.exponent),
            ));
        }
        let plain = row.potential.is_superpotential();
        if plain != (row.tag == TypeTag::A) {
            return Ok(Check::expect(
                name,
                false,
                format!(
                    "superpotential flag {plain} at {} power {}",
                    row.point, row.exponent
                ),
            ));
        }
    }
    // the exceptional witness is a known diagonal of ninth roots
    let tt = c0.torsion_tower()?.clone();
    let eta = tt.generator("eta").expect("eta generator");
    let w = exceptional_potential(c0, 2)?;
    let qmat = w.tsp_witness()?.expect("witness");
    for (i, k) in [(0usize, 8i64), (1, 5), (2, 2)] {
        if qmat.at(i, i) != &eta.pow(k)? {
            return Ok(Check::expect(name, false, "diagonal witness entries differ"));
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            if i != j && !qmat.at(i, j).is_zero() {
                return Ok(Check::expect(name, false, "witness is not diagonal"));
            }
        }
    }
    Ok(Check::pass(
        name,
        format!(
            "{} potentials have witnesses; plain superpotentials are exactly the translation rows",
            rows.len()
        ),
    ))
}

fn check_symmetry_scalars(c0: &HesseCurve, c13: &HesseCurve) -> Result<Check> {
    let name = "symmetry-scalars";
    let tt = c13.torsion_tower()?.clone();
    let lam = c13.lambda().lift_to(&tt)?;
    let diag = c13.point([tt.one(), tt.one(), lam])?;
    let w = sklyanin_potential(c13, &diag)?;
    let theta = substitution(c13, AutoKind::Tau3, 1)?;
    let scalar = w.aut_scalar(&theta)?;
    let s3 = tt.generator("sqrt3").expect("sqrt3 generator");
    if scalar != Some(&tt.int(3) * &s3) {
        return Ok(Check::expect(name, false, "order-four scalar is not 3 sqrt3"));
    }
    // the same symmetry must reject every other order-two base point
    for root in order_two_points(c13)? {
        if root == diag {
            continue;
        }
        let other = sklyanin_potential(c13, &root)?;
        if other.aut_scalar(&theta)?.is_some() {
            return Ok(Check::expect(
                name,
                false,
                format!("order-four symmetry preserved off the diagonal at {root}"),
            ));
        }
    }
    // all nine translations act on sampled potentials
    let samples: Vec<(HesseCurve, ProjPoint)> = vec![
        (c13.clone(), order_two_points(c13)?[0].clone()),
        (c0.clone(), order_two_points(c0)?[0].clone()),
        (c0.clone(), exceptional_base_point(c0, 2)?),
    ];
    for (curve, p) in &samples {
        for r in curve.torsion(3)? {
            let m = translation_matrix(curve, r)?;
            let t = LinMap::new(m.transpose())?;
            if !paut_membership(curve, p, &t)? {
                return Ok(Check::expect(
                    name,
                    false,
                    format!("translation by {r} rejected at {p}"),
                ));
            }
        }
    }
    // order-six powers below the cube are never symmetries here
    let base = order_two_points(c0)?[0].clone();
    for (i, expect) in [(1i64, false), (2, false), (3, true)] {
        let t = substitution(c0, AutoKind::Tau2, i)?;
        if paut_membership(c0, &base, &t)? != expect {
            return Ok(Check::expect(
                name,
                false,
                format!("order-six power {i} membership is not {expect}"),
            ));
        }
    }
    Ok(Check::pass(
        name,
        "3 sqrt3 rescaling, translation action, and order-six rejections",
    ))
}

fn check_hilbert(c53: &HesseCurve, c0: &HesseCurve, c13: &HesseCurve) -> Result<Check> {
    let name = "hilbert-dimensions";
    let mut rows: Vec<(HesseCurve, AutoKind, ProjPoint, i64)> = Vec::new();
    for curve in [c53, c0, c13] {
        let kind = preferred_kind(curve);
        let auto = curve.auto(kind)?;
        let half = (auto.order() / 2) as i64;
        let root = order_two_points(curve)?[0].clone();
        rows.push((curve.clone(), kind, root.clone(), 0));
        rows.push((curve.clone(), kind, root, half));
    }
    for exponent in [2i64, 4] {
        for point in [exceptional_base_point(c0, 2)?, exceptional_base_point(c0, 4)?] {
            rows.push((c0.clone(), AutoKind::Tau2, point, exponent));
        }
    }
    let tt = c13.torsion_tower()?.clone();
    let diag = c13.point([tt.one(), tt.one(), c13.lambda().lift_to(&tt)?])?;
    for exponent in [1i64, 3] {
        rows.push((c13.clone(), AutoKind::Tau3, diag.clone(), exponent));
    }
    let count = rows.len();
    for (curve, kind, point, exponent) in rows {
        let pair = PairDescriptor::new(&curve, kind, &point, exponent)?;
        let dims = pair.relations()?.hilbert_dims(4)?;
        if dims != vec![1, 3, 6, 10, 15] {
            return Ok(Check::expect(
                name,
                false,
                format!("dims {dims:?} at {point} power {exponent}"),
            ));
        }
    }
    Ok(Check::pass(
        name,
        format!("(1, 3, 6, 10, 15) for {count} pairs including mirrored powers"),
    ))
}

fn check_type_e_not_twist(c0: &HesseCurve) -> Result<Check> {
    let name = "exceptional-pairs-not-twists";
    let ok = verify_type_e_not_twist(c0)?;
    Ok(Check::expect(
        name,
        ok,
        "28 base points times 18 induced pairs: exponents {0, 3} never meet {2, 4}",
    ))
}

fn check_printed_type_b_condition(c53: &HesseCurve, c13: &HesseCurve) -> Result<Check> {
    let name = "printed-type-b-condition";
    let mut witness = String::new();
    for curve in [c53, c13] {
        let tt = curve.torsion_tower()?.clone();
        let lam = curve.lambda().lift_to(&tt)?;
        for root in order_two_points(curve)? {
            let c = root.coords()[2].clone();
            let correct = &(&c.pow(3)? - &(&(&tt.int(3) * &lam) * &c)) + &tt.int(2);
            if !correct.is_zero() {
                return Ok(Check::expect(
                    name,
                    false,
                    "membership condition fails on an order-two root",
                ));
            }
            let printed = &(&c.pow(3)? - &(&lam * &c)) + &tt.int(2);
            if printed.is_zero() {
                return Ok(Check::expect(
                    name,
                    false,
                    "printed condition unexpectedly holds off lambda = 0",
                ));
            }
            if witness.is_empty() {
                witness = format!(
                    "at lambda = {}, c = {}: printed cubic evaluates to {}, membership cubic to 0",
                    curve.lambda(),
                    c,
                    printed
                );
            }
        }
    }
    Ok(Check::new(name, Status::Erratum, witness))
}

fn check_printed_type_b_potential(c53: &HesseCurve) -> Result<Check> {
    let name = "printed-type-b-potential";
    let tt = c53.torsion_tower()?.clone();
    let root = order_two_points(c53)?[0].clone();
    let c = root.coords()[2].clone();
    let recomputed = twisted_potential(c53, &root, AutoKind::Tau1, 1)?;
    let body = Tensor3::from_terms(
        &tt,
        &[
            ("xxz", tt.one()),
            ("yzx", tt.one()),
            ("zyy", tt.one()),
            ("xzy", tt.one()),
            ("yyz", tt.one()),
            ("zxx", tt.one()),
            ("xyx", c.clone()),
            ("yxy", c.clone()),
            ("zzz", c),
        ],
    )?;
    match recomputed.proportional_to(&body)? {
        Some(_) => Ok(Check::new(
            name,
            Status::Erratum,
            "table prints the malformed monomial x^z where recomputation and the \
             accompanying derivation give x^2 z; the recomputed twist equals the \
             derivation display",
        )),
        None => Ok(Check::expect(
            name,
            false,
            "recomputed twist differs from the derivation display",
        )),
    }
}

fn printed_type_h_terms(
    tt: &Tower,
    lam: &FieldElement,
    eps: &FieldElement,
    exponent: i64,
    corrected: bool,
) -> Result<Tensor3> {
    let (e1, e2) = if exponent == 1 {
        (eps.clone(), &(eps * eps))
    } else {
        (eps * eps, &eps.clone())
    };
    let e2 = e2.clone();
    let one = tt.one();
    let e1l = &e1 * lam;
    let e2l = &e2 * lam;
    let mut terms: Vec<(&str, FieldElement)> = vec![
        ("xyz", e1.clone()),
        ("yzx", lam.clone()),
        ("zxy", e2.clone()),
        ("xzy", lam.clone()),
        ("yxz", e1.clone()),
        ("zyx", e2.clone()),
        ("xxy", e1l.clone()),
        ("xyx", one.clone()),
        ("yxx", e2l.clone()),
        ("xxz", e2.clone()),
        ("xzx", one.clone()),
        ("zxx", e1.clone()),
        ("yyx", e1l.clone()),
        ("yxy", one.clone()),
        ("yyz", e2.clone()),
        ("yzy", one.clone()),
        ("zyy", e1.clone()),
        ("zzx", one.clone()),
        ("zxz", lam.clone()),
        ("xzz", one.clone()),
        ("zzy", one.clone()),
        ("zyz", lam.clone()),
        ("yzz", one.clone()),
        ("xxx", one.clone()),
        ("yyy", one.clone()),
        ("zzz", lam.clone()),
    ];
    // the published row repeats yx^2 inside the y-group where the mirrored
    // pattern calls for x y^2
    terms.push(if corrected {
        ("xyy", e2l)
    } else {
        ("yxx", e2l)
    });
    Tensor3::from_terms(tt, &terms)
}

fn check_printed_type_h_potentials(c13: &HesseCurve) -> Result<Check> {
    let name = "printed-type-h-potentials";
    let tt = c13.torsion_tower()?.clone();
    let eps = c13.eps()?.clone();
    let lam = c13.lambda().lift_to(&tt)?;
    let diag = c13.point([tt.one(), tt.one(), lam.clone()])?;
    let mut scalars = Vec::new();
    for exponent in [1i64, 3] {
        let recomputed = twisted_potential(c13, &diag, AutoKind::Tau3, exponent)?;
        let printed = printed_type_h_terms(&tt, &lam, &eps, exponent, false)?;
        if recomputed.proportional_to(&printed)?.is_some() {
            return Ok(Check::expect(
                name,
                false,
                format!("printed row at power {exponent} matches after all"),
            ));
        }
        let corrected = printed_type_h_terms(&tt, &lam, &eps, exponent, true)?;
        match recomputed.proportional_to(&corrected)? {
            Some(s) => scalars.push(format!("power {exponent}: scalar {s}")),
            None => {
                return Ok(Check::expect(
                    name,
                    false,
                    format!("corrected row at power {exponent} still differs"),
                ))
            }
        }
    }
    Ok(Check::new(
        name,
        Status::Erratum,
        format!(
            "both rows repeat the monomial y x^2 where recomputation gives x y^2; \
             after that correction the twists match ({})",
            scalars.join(", ")
        ),
    ))
}

/// Runs every check over the three distinguished curves.
pub fn verify_tables() -> Result<Report> {
    let c53 = lambda_five_thirds()?;
    let c0 = lambda_zero()?;
    let c13 = lambda_one_plus_sqrt3()?;
    let curves = [&c53, &c0, &c13];
    let mut report = Report::default();
    report.push(check_group_law_units(&curves)?);
    report.push(check_branch_agreement(&curves)?);
    report.push(check_associativity(&curves)?);
    report.push(check_torsion_cardinalities(&curves)?);
    report.push(check_two_torsion_lambda_zero(&c0)?);
    report.push(check_fixed_loci(&curves)?);
    report.push(check_triple_fixed_loci(&curves)?);
    report.push(check_displacements(&curves)?);
    report.push(check_classification(&c53, &c0, &c13)?);
    report.push(check_pair_potential_coherence(&c53, &c0, &c13)?);
    report.push(check_point_fibers(&c53, &c0, &c13)?);
    report.push(check_witnesses(&c53, &c0, &c13)?);
    report.push(check_symmetry_scalars(&c0, &c13)?);
    report.push(check_hilbert(&c53, &c0, &c13)?);
    report.push(check_type_e_not_twist(&c0)?);
    report.push(check_printed_type_b_condition(&c53, &c13)?);
    report.push(check_printed_type_b_potential(&c53)?);
    report.push(check_printed_type_h_potentials(&c13)?);
    Ok(report)
}
