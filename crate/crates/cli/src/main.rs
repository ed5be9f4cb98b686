//! `hessec`: exact queries about Hesse cubics, their torsion geometry, and
//! the quadratic algebras attached to (point, symmetry power) pairs.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use hessec_core::tensor::{index_word2, index_word3};
use hessec_core::{
    classify, exceptional_base_point, exceptional_potential, lambda_one_plus_sqrt3, lambda_zero,
    parse_point, parse_scalar, preferred_kind, sklyanin_potential, verify_tables, AutoKind, Error,
    HesseCurve, LinMap, PairDescriptor, ProjPoint, Status, SymbolTable, Tensor2, Tensor3, Tower,
};

#[derive(Parser)]
#[command(name = "hessec", version, about = "Exact Hesse-curve geometry and its quadratic algebras")]
struct Cli {
    /// Emit machine-readable JSON
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CurveArgs {
    /// Hesse parameter as an exact expression: 0, 5/3, 1+sqrt3, eta^2-1, ...
    #[arg(long)]
    lambda: String,
}

#[derive(Args)]
struct PairArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Base point a:b:c with exact expression coordinates
    #[arg(long)]
    p: String,
    /// Power of the curve's distinguished symmetry
    #[arg(long)]
    i: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Show the curve's invariants and its distinguished symmetry
    Curve(CurveArgs),
    /// List the n-torsion points (n in {2, 3, 6})
    Torsion {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        n: usize,
    },
    /// Show the fixed, candidate, and regular loci of one symmetry power
    Loci {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        i: i64,
    },
    /// Inspect one pair: regularity, quadratic relations, Hilbert dimensions
    Pair(PairArgs),
    /// Show the twisted potential of a pair, its witness, and the plain flag
    Potential(PairArgs),
    /// Enumerate base loci and isomorphism classes for every symmetry power
    Classify(CurveArgs),
    /// Run the full verification battery over the three distinguished curves
    VerifyTables {
        /// Treat published-table discrepancies as failures
        #[arg(long)]
        strict: bool,
    },
}

fn build_curve(expr: &str) -> Result<HesseCurve, Error> {
    let table = SymbolTable::standard();
    let lam = parse_scalar(expr, &table)?;
    if lam.is_zero() {
        return lambda_zero();
    }
    if let Some(r) = lam.as_rational() {
        return HesseCurve::new(Tower::rationals().rational(r));
    }
    if lam == parse_scalar("1 + sqrt3", &table)? {
        return lambda_one_plus_sqrt3();
    }
    HesseCurve::new(lam)
}

fn parse_base_point(curve: &HesseCurve, expr: &str) -> Result<ProjPoint, Error> {
    let table = SymbolTable::for_tower(curve.torsion_tower()?);
    let coords = parse_point(expr, &table)?;
    curve.point(coords)
}

fn scalar_str(c: &hessec_core::FieldElement) -> String {
    let s = c.to_string();
    if s.contains(' ') {
        format!("({s})")
    } else {
        s
    }
}

fn tensor2_string(t: &Tensor2) -> String {
    let mut terms = Vec::new();
    for idx in 0..9 {
        let c = t.coeff_at(idx);
        if c.is_zero() {
            continue;
        }
        let word = index_word2(idx);
        if c.is_one() {
            terms.push(word);
        } else {
            terms.push(format!("{}*{}", scalar_str(c), word));
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn tensor3_string(t: &Tensor3) -> String {
    let mut terms = Vec::new();
    for idx in 0..27 {
        let c = t.coeff_at(idx);
        if c.is_zero() {
            continue;
        }
        let word = index_word3(idx);
        if c.is_one() {
            terms.push(word);
        } else {
            terms.push(format!("{}*{}", scalar_str(c), word));
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn locus_json(curve: &HesseCurve, subset: &hessec_core::CurveSubset) -> serde_json::Value {
    match subset {
        hessec_core::CurveSubset::Entire => json!({ "entire": true }),
        hessec_core::CurveSubset::Finite(pts) => {
            let _ = curve;
            json!({
                "entire": false,
                "points": pts.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            })
        }
    }
}

fn print_locus(label: &str, subset: &hessec_core::CurveSubset) {
    match subset {
        hessec_core::CurveSubset::Entire => println!("{label}: the whole curve"),
        hessec_core::CurveSubset::Finite(pts) => {
            println!("{label}: {} points", pts.len());
            for p in pts {
                println!("  {p}");
            }
        }
    }
}

/// The potential attached to a class representative, matching how the
/// published rows realize it.
fn representative_potential(
    curve: &HesseCurve,
    kind: AutoKind,
    p: &ProjPoint,
    i: i64,
) -> Result<Tensor3, Error> {
    if kind == AutoKind::Tau2 && (i == 2 || i == 4) {
        if let Ok(base) = exceptional_base_point(curve, i as usize) {
            if *p == base {
                return exceptional_potential(curve, i as usize);
            }
        }
    }
    let tt = curve.torsion_tower()?;
    let w = sklyanin_potential(curve, &p.lift_to(tt)?)?;
    if i == 0 {
        return Ok(w);
    }
    let theta = LinMap::new(curve.auto(kind)?.substitution_matrix(i))?;
    w.ms_twist(&theta)
}

fn run_curve(args: &CurveArgs, as_json: bool) -> Result<(), Error> {
    let curve = build_curve(&args.lambda)?;
    let kind = preferred_kind(&curve);
    let auto = curve.auto(kind)?;
    let j = curve.j_invariant()?;
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "lambda": curve.lambda().to_string(),
                "j_invariant": j.to_string(),
                "symmetry": { "kind": kind.name(), "order": auto.order() },
            }))
            .expect("json")
        );
    } else {
        println!("lambda = {}", curve.lambda());
        println!("j-invariant = {j}");
        println!("symmetry: {} (order {})", kind.name(), auto.order());
    }
    Ok(())
}

fn run_torsion(args: &CurveArgs, n: usize, as_json: bool) -> Result<(), Error> {
    let curve = build_curve(&args.lambda)?;
    let pts = curve.torsion(n)?;
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "lambda": curve.lambda().to_string(),
                "n": n,
                "count": pts.len(),
                "points": pts.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            }))
            .expect("json")
        );
    } else {
        println!("|E[{n}]| = {}", pts.len());
        for p in pts {
            println!("  {p}");
        }
    }
    Ok(())
}

fn run_loci(args: &CurveArgs, i: i64, as_json: bool) -> Result<(), Error> {
    let curve = build_curve(&args.lambda)?;
    let kind = preferred_kind(&curve);
    let auto = curve.auto(kind)?;
    let fixed = curve.fixed_locus(&auto, i)?;
    let candidates = curve.triple_fixed_locus(&auto, i)?;
    let regular = match &candidates {
        hessec_core::CurveSubset::Entire => hessec_core::CurveSubset::Entire,
        hessec_core::CurveSubset::Finite(pts) => hessec_core::CurveSubset::Finite(
            pts.iter()
                .filter(|p| !p.on_coordinate_triangle())
                .cloned()
                .collect(),
        ),
    };
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "lambda": curve.lambda().to_string(),
                "kind": kind.name(),
                "exponent": auto.reduce(i),
                "fixed": locus_json(&curve, &fixed),
                "candidates": locus_json(&curve, &candidates),
                "regular": locus_json(&curve, &regular),
            }))
            .expect("json")
        );
    } else {
        println!("symmetry {} power {}", kind.name(), auto.reduce(i));
        print_locus("fixed points", &fixed);
        print_locus("candidate base points", &candidates);
        print_locus("regular base points", &regular);
    }
    Ok(())
}

fn run_pair(args: &PairArgs, as_json: bool) -> Result<(), Error> {
    let curve = build_curve(&args.curve.lambda)?;
    let kind = preferred_kind(&curve);
    let p = parse_base_point(&curve, &args.p)?;
    let pair = PairDescriptor::new(&curve, kind, &p, args.i)?;
    let regular = pair.is_regular()?;
    let relations = pair.relations()?;
    let hilbert = relations.hilbert_dims(4)?;
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "lambda": curve.lambda().to_string(),
                "kind": kind.name(),
                "exponent": pair.exponent(),
                "point": p.to_json(),
                "regular": regular,
                "relations": relations.to_json(),
                "hilbert": hilbert,
            }))
            .expect("json")
        );
    } else {
        println!("point {p}, symmetry {} power {}", kind.name(), pair.exponent());
        println!("regular: {regular}");
        println!("relations:");
        for r in relations.basis() {
            println!("  {}", tensor2_string(r));
        }
        println!(
            "hilbert dimensions: {}",
            hilbert
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
    Ok(())
}

fn run_potential(args: &PairArgs, as_json: bool) -> Result<(), Error> {
    let curve = build_curve(&args.curve.lambda)?;
    let kind = preferred_kind(&curve);
    let auto = curve.auto(kind)?;
    let p = parse_base_point(&curve, &args.p)?;
    let i = auto.reduce(args.i) as i64;
    let w = representative_potential(&curve, kind, &p, i)?;
    let witness = w.tsp_witness()?;
    let plain = w.is_superpotential();
    if as_json {
        let wj = witness.as_ref().map(|q| {
            (0..3)
                .map(|r| (0..3).map(|c| q.at(r, c).to_json()).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "lambda": curve.lambda().to_string(),
                "kind": kind.name(),
                "exponent": i,
                "point": p.to_json(),
                "potential": w.to_json(),
                "witness": wj,
                "superpotential": plain,
            }))
            .expect("json")
        );
    } else {
        println!("point {p}, symmetry {} power {i}", kind.name());
        println!("potential: {}", tensor3_string(&w));
        match &witness {
            Some(q) => {
                println!("witness rows:");
                for r in 0..3 {
                    let row: Vec<String> = (0..3).map(|c| scalar_str(q.at(r, c))).collect();
                    println!("  [{}]", row.join(", "));
                }
            }
            None => println!("witness: none"),
        }
        println!("plain superpotential: {plain}");
    }
    Ok(())
}

fn run_classify(args: &CurveArgs, as_json: bool) -> Result<(), Error> {
    let curve = build_curve(&args.lambda)?;
    let kind = preferred_kind(&curve);
    let cls = classify(&curve, kind)?;
    if !as_json {
        println!("lambda = {}, j-invariant = {}", cls.lambda, cls.j_invariant);
        println!("symmetry: {} (order {})", cls.kind, cls.order);
        for fam in &cls.families {
            if fam.whole_curve {
                println!(
                    "power {} (Type {}): every regular curve point; samples: {}",
                    fam.exponent,
                    fam.tag.name(),
                    fam.regular_samples.join(", ")
                );
            } else {
                let classes: Vec<String> = fam
                    .classes
                    .iter()
                    .map(|c| format!("{} ({} members)", c.representative, c.members))
                    .collect();
                println!(
                    "power {} (Type {}): {} candidates, {} regular, {} classes: {}",
                    fam.exponent,
                    fam.tag.name(),
                    fam.candidates.unwrap_or(0),
                    fam.regular.unwrap_or(0),
                    fam.classes.len(),
                    classes.join("; ")
                );
            }
        }
        return Ok(());
    }
    let tt = curve.torsion_tower()?.clone();
    let mut types = Vec::new();
    for fam in &cls.families {
        if fam.whole_curve {
            // the continuous family is reported through its torsion samples
            let origin = curve.origin();
            for p in curve.torsion(2)? {
                if *p == origin {
                    continue;
                }
                let pair = PairDescriptor::new(&curve, kind, p, fam.exponent as i64)?;
                if !pair.is_regular()? {
                    continue;
                }
                let w = representative_potential(&curve, kind, p, fam.exponent as i64)?;
                types.push(json!({
                    "tag": fam.tag.name(),
                    "exponent": fam.exponent,
                    "representative_point": p.to_json(),
                    "count": serde_json::Value::Null,
                    "relations": pair.relations()?.to_json(),
                    "potential": w.to_json(),
                }));
            }
        } else {
            for class in &fam.classes {
                let p = ProjPoint::from_json(&tt, &class.representative_coords)?;
                let pair = PairDescriptor::new(&curve, kind, &p, fam.exponent as i64)?;
                let w = representative_potential(&curve, kind, &p, fam.exponent as i64)?;
                types.push(json!({
                    "tag": fam.tag.name(),
                    "exponent": fam.exponent,
                    "representative_point": p.to_json(),
                    "count": class.members,
                    "relations": pair.relations()?.to_json(),
                    "potential": w.to_json(),
                }));
            }
        }
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&json!({
            "lambda": cls.lambda,
            "j_invariant": cls.j_invariant,
            "kind": cls.kind,
            "order": cls.order,
            "types": types,
        }))
        .expect("json")
    );
    Ok(())
}

fn run_verify(strict: bool, as_json: bool) -> Result<bool, Error> {
    let report = verify_tables()?;
    let fails = report.failures();
    let errata = report.errata();
    let passes = report.checks.len() - fails - errata;
    if as_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "checks": report.checks,
                "summary": { "pass": passes, "fail": fails, "erratum": errata },
                "strict": strict,
            }))
            .expect("json")
        );
    } else {
        for check in &report.checks {
            let label = match check.status {
                Status::Pass => "PASS   ",
                Status::Fail => "FAIL   ",
                Status::Erratum => "ERRATUM",
            };
            println!("{label} {:<34} {}", check.name, check.details);
        }
        println!("{passes} passed, {fails} failed, {errata} errata");
    }
    Ok(fails == 0 && (!strict || errata == 0))
}

fn main() -> ExitCode {
    // die quietly when a pipeline consumer closes stdout early
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Curve(args) => run_curve(args, cli.json).map(|()| true),
        Command::Torsion { curve, n } => run_torsion(curve, *n, cli.json).map(|()| true),
        Command::Loci { curve, i } => run_loci(curve, *i, cli.json).map(|()| true),
        Command::Pair(args) => run_pair(args, cli.json).map(|()| true),
        Command::Potential(args) => run_potential(args, cli.json).map(|()| true),
        Command::Classify(args) => run_classify(args, cli.json).map(|()| true),
        Command::VerifyTables { strict } => run_verify(*strict, cli.json),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
