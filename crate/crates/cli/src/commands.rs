use std::fmt::Write as _;
use std::path::Path;

use monocat::catenary::{
    adjacent_steps, betti_elements, catenary_of, certify, monoid_catenary, AdjacentStep, Certificate, ChainKind,
    ElementDegrees, InvariantReport, PairPolicy,
};
use monocat::experiments::{
    conjecture_branch, counterexample_path, figure_frobenius_family, gens_text, run_sweep, write_figure_csv,
    write_report_csv, ArithmeticLemmaSweep, ArithmeticSweep, Conjecture12Sweep, Conjecture3Sweep, FigureRow, Grid,
    RunOptions, StrictInequalitySweep, Sweep, SweepReport, Theorem1Sweep,
};
use monocat::factorization::{enumerate_with, EnumerationLimits};
use monocat::families::{
    dissonance, frobenius_family_invariants, gap_family_invariants, set_invariants as family_set_invariants,
    ArithmeticFamily, FrobeniusFamily, FrobeniusInvariants, GapFamily, GapInvariants, GeneralizedArithmeticFamily,
    SetInvariants,
};
use monocat::{Error, LengthProfile, NumericalMonoid, Result};
use serde::Serialize;
use serde_json::Value;

use crate::render::{scalar, Reduced, Rendered, Table};
use crate::{FamilyCommand, Gens, SweepArgs, SweepKind, VerifyArgs};

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn angle(gens: &[u64]) -> String {
    format!("<{}>", gens_text(gens))
}

fn build(gens: &Gens, reduce: bool) -> Result<(NumericalMonoid, Option<Reduced>)> {
    let m = if reduce {
        NumericalMonoid::new(&gens.0)?
    } else {
        NumericalMonoid::with_generators(&gens.0)?
    };
    let reduced = (m.minimal_generators() != gens.0.as_slice()).then(|| Reduced {
        input: gens.0.clone(),
        minimal: m.minimal_generators().to_vec(),
        applied: reduce,
    });
    Ok((m, reduced))
}

fn rendered(m: &NumericalMonoid, reduced: Option<Reduced>, payload: Value, text: String, table: Table) -> Rendered {
    Rendered {
        generators: Some(m.generators().to_vec()),
        reduced,
        payload,
        text,
        table,
        failed: false,
    }
}

#[derive(Serialize)]
struct FactorizationRow {
    coefficients: Vec<u64>,
    length: u64,
}

#[derive(Serialize)]
struct FactorizationsPayload {
    element: u64,
    count: usize,
    factorizations: Vec<FactorizationRow>,
}

pub fn factorizations(gens: &Gens, reduce: bool, element: u64) -> Result<Rendered> {
    let (m, reduced) = build(gens, reduce)?;
    let fs = enumerate_with(&m, element, EnumerationLimits::from_env())?;
    let rows: Vec<FactorizationRow> = fs
        .factorizations()
        .iter()
        .map(|z| FactorizationRow {
            coefficients: z.coeffs().to_vec(),
            length: z.len(),
        })
        .collect();

    let mut header: Vec<String> = m.generators().iter().map(|g| format!("coeff_{g}")).collect();
    header.push("length".into());
    let mut table = Table { header, rows: Vec::new() };
    let mut text = format!("Z({element}) in {}: {} factorizations\n", angle(m.generators()), rows.len());
    for r in &rows {
        let mut row: Vec<String> = r.coefficients.iter().map(u64::to_string).collect();
        row.push(r.length.to_string());
        table.push(row);
        let _ = writeln!(text, "  {:?}  length {}", r.coefficients, r.length);
    }
    let payload = to_value(&FactorizationsPayload {
        element,
        count: rows.len(),
        factorizations: rows,
    })?;
    Ok(rendered(&m, reduced, payload, text, table))
}

#[derive(Serialize)]
struct Witnesses {
    catenary: Option<Certificate>,
    equivalent: Option<Certificate>,
    monotone: Option<Certificate>,
    adjacent: Vec<AdjacentStep>,
}

#[derive(Serialize)]
struct ElementPayload {
    element: u64,
    factorizations: usize,
    degrees: ElementDegrees,
    length_profile: LengthProfile,
    witnesses: Option<Witnesses>,
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn describe(text: &mut String, name: &str, cert: &Option<Certificate>) {
    let Some(cert) = cert else {
        let _ = writeln!(text, "{name}: no certificate");
        return;
    };
    let _ = writeln!(text, "{name} chains (value {}):", cert.value);
    for w in &cert.witnesses {
        let steps: Vec<String> = w.steps.iter().map(|z| format!("{:?}", z.coeffs())).collect();
        let _ = writeln!(text, "  {} [max step {}]", steps.join(" -> "), w.bottleneck);
    }
    if let Some((i, j)) = cert.cut {
        let _ = writeln!(text, "  no chain below {} joins factorizations #{i} and #{j}", cert.value);
    }
}

pub fn element_invariants(gens: &Gens, reduce: bool, element: u64, witness: bool) -> Result<Rendered> {
    let (m, reduced) = build(gens, reduce)?;
    m.require_element(element)?;
    let fs = enumerate_with(&m, element, EnumerationLimits::from_env())?;
    let degrees = ElementDegrees::of(&fs);
    let profile = fs.profile()?;
    let witnesses = witness.then(|| Witnesses {
        catenary: certify(&fs, ChainKind::Any, degrees.catenary, PairPolicy::Spanning),
        equivalent: certify(&fs, ChainKind::EqualLength, degrees.equivalent, PairPolicy::Spanning),
        monotone: certify(&fs, ChainKind::Monotone, degrees.monotone, PairPolicy::Spanning),
        adjacent: adjacent_steps(&fs),
    });

    let mut text = format!("element {element} in {}: {} factorizations\n", angle(m.generators()), fs.len());
    let _ = writeln!(text, "lengths {{{}}}, delta {{{}}}", join(&profile.lengths), join(&profile.delta));
    let _ = writeln!(text, "c(m)     = {}", degrees.catenary);
    let _ = writeln!(text, "c_eq(m)  = {}", degrees.equivalent);
    let _ = writeln!(text, "c_adj(m) = {}", degrees.adjacent);
    let _ = writeln!(text, "c_mon(m) = {}", degrees.monotone);
    if let Some(w) = &witnesses {
        describe(&mut text, "catenary", &w.catenary);
        describe(&mut text, "equal-length", &w.equivalent);
        describe(&mut text, "monotone", &w.monotone);
        for s in &w.adjacent {
            let _ = writeln!(
                text,
                "adjacent lengths {} -> {}: distance {} between #{} and #{}",
                s.lower_length, s.upper_length, s.distance, s.lower, s.upper
            );
        }
    }

    let mut table = Table::new(&[
        "element",
        "factorizations",
        "catenary",
        "equivalent",
        "adjacent",
        "monotone",
        "lengths",
        "delta",
    ]);
    table.push(vec![
        element.to_string(),
        fs.len().to_string(),
        degrees.catenary.to_string(),
        degrees.equivalent.to_string(),
        degrees.adjacent.to_string(),
        degrees.monotone.to_string(),
        join(&profile.lengths),
        join(&profile.delta),
    ]);
    let payload = to_value(&ElementPayload {
        element,
        factorizations: fs.len(),
        degrees,
        length_profile: profile,
        witnesses,
    })?;
    Ok(rendered(&m, reduced, payload, text, table))
}

#[derive(Serialize)]
struct SetPayload {
    frobenius: i64,
    embedding_dimension: usize,
    #[serde(flatten)]
    invariants: SetInvariants,
}

fn report_line(name: &str, r: &InvariantReport) -> String {
    let how = scalar(&serde_json::to_value(r.method).unwrap_or_default());
    let mut line = format!("{name:<8} = {}  ({how}", r.value);
    if !r.is_exact() {
        line.push_str(", lower bound");
    }
    if let Some(b) = r.scan_bound {
        let _ = write!(line, ", scanned to {b}");
    }
    if r.heuristic {
        line.push_str(", heuristic bound");
    }
    line.push_str(")\n");
    line
}

pub fn set_invariants(gens: &Gens, reduce: bool, scan_bound: Option<u64>) -> Result<Rendered> {
    let (m, reduced) = build(gens, reduce)?;
    let inv = family_set_invariants(&m, scan_bound)?;
    let mut text = format!("{}: Frobenius number {}\n", angle(m.generators()), m.frobenius());
    if let Some(f) = &inv.family {
        let _ = writeln!(text, "family {f}");
    }
    let mut table = Table::new(&["invariant", "value", "exactness", "method", "scan_bound", "heuristic"]);
    for (name, r) in [
        ("c(M)", &inv.catenary),
        ("c_eq(M)", &inv.equivalent),
        ("c_adj(M)", &inv.adjacent),
        ("c_mon(M)", &inv.monotone),
    ] {
        text.push_str(&report_line(name, r));
        let v = to_value(r)?;
        table.push(
            ["value", "exactness", "method", "scan_bound", "heuristic"]
                .iter()
                .fold(vec![name.to_string()], |mut row, k| {
                    row.push(scalar(&v[*k]));
                    row
                }),
        );
    }
    let payload = to_value(&SetPayload {
        frobenius: m.frobenius(),
        embedding_dimension: m.embedding_dimension(),
        invariants: inv,
    })?;
    Ok(rendered(&m, reduced, payload, text, table))
}

#[derive(Serialize)]
struct BettiElement {
    element: u64,
    factorizations: usize,
    catenary: u64,
}

#[derive(Serialize)]
struct BettiPayload {
    elements: Vec<BettiElement>,
    scan_bound: u64,
    coefficients: Vec<u64>,
    heuristic: bool,
}

pub fn betti(gens: &Gens, reduce: bool) -> Result<Rendered> {
    let (m, reduced) = build(gens, reduce)?;
    let scan = betti_elements(&m)?;
    let limits = EnumerationLimits::from_env();
    let elements = scan
        .elements
        .iter()
        .map(|&b| {
            let fs = enumerate_with(&m, b, limits)?;
            Ok(BettiElement {
                element: b,
                factorizations: fs.len(),
                catenary: catenary_of(&fs),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut text = format!("Betti elements of {}: {}\n", angle(m.generators()), gens_text(&scan.elements));
    let mut table = Table::new(&["element", "factorizations", "catenary"]);
    for e in &elements {
        let _ = writeln!(text, "  c({}) = {}  ({} factorizations)", e.element, e.catenary, e.factorizations);
        table.push(vec![e.element.to_string(), e.factorizations.to_string(), e.catenary.to_string()]);
    }
    if scan.heuristic {
        let _ = writeln!(text, "scanned to {}; the bound is heuristic", scan.bound);
    }
    let payload = to_value(&BettiPayload {
        elements,
        scan_bound: scan.bound,
        coefficients: scan.coefficients,
        heuristic: scan.heuristic,
    })?;
    Ok(rendered(&m, reduced, payload, text, table))
}

fn summary(r: &SweepReport) -> String {
    let mut text = format!(
        "{} [{}]: {} points, {} skipped, {} counterexamples, support {:.3}\n",
        r.family,
        r.grid,
        r.points.len(),
        r.skipped.len(),
        r.counterexamples.len(),
        r.support_ratio
    );
    for b in &r.branches {
        let _ = writeln!(
            text,
            "  branch {}: {}/{} supported ({:.3})",
            b.branch, b.supported, b.points, b.support_ratio
        );
    }
    for n in &r.ratios {
        let _ = writeln!(text, "  {}: {}/{} = {:.3}", n.name, n.numerator, n.denominator, n.ratio);
    }
    for c in r.counterexamples.iter().take(10) {
        let params: Vec<String> = c.params.iter().map(ToString::to_string).collect();
        let at = c.element.map(|e| format!(" at {e}")).unwrap_or_default();
        let _ = writeln!(
            text,
            "  counterexample ({}){at}: {} expected {} got {}",
            params.join(", "),
            c.claim,
            c.expected,
            c.actual
        );
    }
    if r.counterexamples.len() > 10 {
        let _ = writeln!(text, "  ... {} more", r.counterexamples.len() - 10);
    }
    text
}

fn family_text(payload: &Value, extra: &str) -> String {
    let mut text = String::new();
    if let Value::Object(map) = payload {
        for (k, v) in map {
            if k == "verification" {
                continue;
            }
            match v.get("value") {
                Some(inner) => {
                    let _ = writeln!(text, "{k}: {}", scalar(inner));
                }
                None if !v.is_object() => {
                    let _ = writeln!(text, "{k}: {}", scalar(v));
                }
                None => {}
            }
        }
    }
    text.push_str(extra);
    text
}

fn family_rendered(m: &NumericalMonoid, payload: Value, extra: String, failed: bool) -> Rendered {
    let text = family_text(&payload, &extra);
    let table = Table::fields(&payload);
    Rendered {
        generators: Some(m.generators().to_vec()),
        reduced: None,
        payload,
        text,
        table,
        failed,
    }
}

#[derive(Serialize)]
struct ArithmeticVerification {
    theorems: SweepReport,
    lemmas: SweepReport,
}

#[derive(Serialize)]
struct ArithmeticPayload {
    a: u64,
    d: u64,
    k: u64,
    frobenius: i64,
    catenary_closed: u64,
    equivalent_closed: u64,
    move_element: u64,
    verification: Option<ArithmeticVerification>,
}

#[derive(Serialize)]
struct GenArithVerification {
    conjecture1_2: SweepReport,
    conjecture3: SweepReport,
}

#[derive(Serialize)]
struct GenArithPayload {
    a: u64,
    h: u64,
    d: u64,
    frobenius: i64,
    step_gcd: u64,
    equivalent_closed: u64,
    catenary: InvariantReport,
    branch: String,
    verification: Option<GenArithVerification>,
}

#[derive(Serialize)]
struct GapVerification {
    invariants: GapInvariants,
    strict_inequality: SweepReport,
}

#[derive(Serialize)]
struct GapPayload {
    n: u64,
    a: u64,
    x: u64,
    frobenius: i64,
    equivalent_closed: u64,
    monotone_closed: u64,
    dissonance: u64,
    verification: Option<GapVerification>,
}

#[derive(Serialize)]
struct FrobeniusPayload {
    a: u64,
    expected_betti: Vec<u64>,
    expected_catenary: u64,
    expected_monotone: u64,
    derived_gap: i64,
    stated_gap: i64,
    outside_hypothesis: bool,
    verification: Option<FrobeniusInvariants>,
}

fn bounded(grid: String, bound: Option<u64>) -> Result<Grid> {
    match bound {
        Some(b) => Grid::parse(&format!("{grid};bound={b}")),
        None => Grid::parse(&grid),
    }
}

pub fn family(cmd: &FamilyCommand) -> Result<Rendered> {
    match *cmd {
        FamilyCommand::Arithmetic {
            a,
            d,
            k,
            verify: VerifyArgs { verify, bound },
        } => {
            let fam = ArithmeticFamily::new(a, d, k)?;
            let bound = bound.unwrap_or(400);
            let verification = if verify {
                Some(ArithmeticVerification {
                    theorems: run_sweep(&ArithmeticSweep::single(&fam, bound), &RunOptions::default())?,
                    lemmas: run_sweep(&ArithmeticLemmaSweep::single(&fam, bound), &RunOptions::default())?,
                })
            } else {
                None
            };
            let (extra, failed) = match &verification {
                Some(v) => (
                    format!("{}{}", summary(&v.theorems), summary(&v.lemmas)),
                    !v.theorems.counterexamples.is_empty() || !v.lemmas.counterexamples.is_empty(),
                ),
                None => (String::new(), false),
            };
            let payload = to_value(&ArithmeticPayload {
                a,
                d,
                k,
                frobenius: fam.monoid().frobenius(),
                catenary_closed: fam.catenary_closed(),
                equivalent_closed: if k >= 2 { 2 } else { 0 },
                move_element: fam.move_element(),
                verification,
            })?;
            Ok(family_rendered(fam.monoid(), payload, extra, failed))
        }
        FamilyCommand::GenArith {
            a,
            h,
            d,
            verify: VerifyArgs { verify, bound },
        } => {
            let fam = GeneralizedArithmeticFamily::new(a, h, d)?;
            let catenary = monoid_catenary(fam.monoid())?;
            let branch = conjecture_branch(h, d, catenary.value, fam.equivalent_closed()).to_string();
            let verification = if verify {
                let point = format!("a={a};h={h};d={d}");
                Some(GenArithVerification {
                    conjecture1_2: run_sweep(
                        &Conjecture12Sweep::from_grid(&bounded(point.clone(), bound)?)?,
                        &RunOptions::default(),
                    )?,
                    conjecture3: run_sweep(
                        &Conjecture3Sweep::from_grid(&bounded(point, bound)?)?,
                        &RunOptions::default(),
                    )?,
                })
            } else {
                None
            };
            // Conjectures are reported, never treated as failures.
            let extra = verification
                .as_ref()
                .map(|v| format!("{}{}", summary(&v.conjecture1_2), summary(&v.conjecture3)))
                .unwrap_or_default();
            let payload = to_value(&GenArithPayload {
                a,
                h,
                d,
                frobenius: fam.monoid().frobenius(),
                step_gcd: fam.step_gcd(),
                equivalent_closed: fam.equivalent_closed(),
                catenary,
                branch,
                verification,
            })?;
            Ok(family_rendered(fam.monoid(), payload, extra, false))
        }
        FamilyCommand::Gap {
            n,
            a,
            x,
            verify: VerifyArgs { verify, bound },
        } => {
            let fam = GapFamily::new(n, a, x)?;
            let verification = if verify {
                Some(GapVerification {
                    invariants: gap_family_invariants(&fam, bound)?,
                    strict_inequality: monocat::experiments::strict_inequality_conditions(fam.monoid(), bound)?,
                })
            } else {
                None
            };
            let (extra, failed) = match &verification {
                Some(v) => {
                    let c = &v.invariants.checks;
                    let mut extra = format!(
                        "checks: c_eq closed forms agree {}, c_adj below c_eq {}, c_mon above c {}\n",
                        c.equivalent_matches_dim3, c.adjacent_below_equivalent, c.monotone_above_catenary
                    );
                    let _ = writeln!(
                        extra,
                        "observed c_adj(M) = {} (first at {}), c(M) = {}",
                        v.invariants.adjacent.value, v.invariants.adjacent_element, v.invariants.catenary.value
                    );
                    extra.push_str(&summary(&v.strict_inequality));
                    (extra, !c.all() || !v.strict_inequality.counterexamples.is_empty())
                }
                None => (String::new(), false),
            };
            let payload = to_value(&GapPayload {
                n,
                a,
                x,
                frobenius: fam.monoid().frobenius(),
                equivalent_closed: fam.equivalent_closed(),
                monotone_closed: fam.equivalent_closed(),
                dissonance: dissonance(fam.monoid())?,
                verification,
            })?;
            Ok(family_rendered(fam.monoid(), payload, extra, failed))
        }
        FamilyCommand::Frobenius {
            a,
            verify: VerifyArgs { verify, bound },
        } => {
            let fam = FrobeniusFamily::new(a)?;
            let verification = if verify {
                Some(frobenius_family_invariants(&fam, bound)?)
            } else {
                None
            };
            let (extra, failed) = match &verification {
                Some(v) => {
                    let ok = v.betti_matches() && v.catenary_matches() && v.monotone_matches() && v.gap == v.derived_gap;
                    let extra = format!(
                        "computed: Betti {}, c(M) = {}, c_mon(M) = {}, gap {}\n{}\n",
                        gens_text(&v.betti),
                        v.catenary,
                        v.monotone.value,
                        v.gap,
                        if ok { "all closed forms hold" } else { "closed forms FAIL" }
                    );
                    (extra, !ok)
                }
                None => (String::new(), false),
            };
            let payload = to_value(&FrobeniusPayload {
                a,
                expected_betti: fam.expected_betti(),
                expected_catenary: fam.expected_catenary(),
                expected_monotone: fam.expected_monotone(),
                derived_gap: fam.derived_gap(),
                stated_gap: fam.stated_gap(),
                outside_hypothesis: fam.outside_hypothesis(),
                verification,
            })?;
            Ok(family_rendered(fam.monoid(), payload, extra, failed))
        }
    }
}

#[derive(Serialize)]
struct SweepPayload {
    report: SweepReport,
    out: Option<String>,
    counterexamples_out: Option<String>,
    journal: Option<String>,
}

fn build_sweep(args: &SweepArgs) -> Result<Box<dyn Sweep>> {
    let grid = Grid::parse(&args.grid)?;
    let explicit: Vec<Vec<u64>> = args.gens.iter().map(|g| g.0.clone()).collect();
    if !explicit.is_empty() {
        grid.expect_keys(&["bound"])?;
    }
    Ok(match args.kind {
        SweepKind::Theorem1 if !explicit.is_empty() => {
            Box::new(Theorem1Sweep::explicit(explicit, grid.single_u64_or("bound", 400)?)?)
        }
        SweepKind::StrictInequality if !explicit.is_empty() => {
            let bound = grid.get("bound").map(|_| grid.single_u64_or("bound", 0)).transpose()?;
            Box::new(StrictInequalitySweep::explicit(explicit, bound)?)
        }
        _ if !explicit.is_empty() => {
            return Err(Error::Grid(
                "--gens applies to the theorem1 and strict-inequality sweeps only".into(),
            ))
        }
        SweepKind::Theorem1 => Box::new(Theorem1Sweep::from_grid(&grid)?),
        SweepKind::StrictInequality => Box::new(StrictInequalitySweep::from_grid(&grid)?),
        SweepKind::Arithmetic => Box::new(ArithmeticSweep::from_grid(&grid)?),
        SweepKind::Conjecture12 => Box::new(Conjecture12Sweep::from_grid(&grid)?),
        SweepKind::Conjecture3 => Box::new(Conjecture3Sweep::from_grid(&grid)?),
    })
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

pub fn sweep(args: &SweepArgs) -> Result<Rendered> {
    let sweep = build_sweep(args)?;
    let journal = args
        .journal
        .clone()
        .or_else(|| args.out.as_ref().map(|o| o.with_extension("journal.jsonl")));
    if let (true, Some(j)) = (args.fresh, &journal) {
        if j.exists() {
            std::fs::remove_file(j)?;
        }
    }
    let options = RunOptions { journal: journal.clone() };
    let report = match args.jobs {
        Some(0) => return Err(Error::PreconditionFailed("--jobs must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(|| run_sweep(sweep.as_ref(), &options))?,
        None => run_sweep(sweep.as_ref(), &options)?,
    };
    if let Some(out) = &args.out {
        write_report_csv(&report, out)?;
    }

    let mut header = report.param_names.clone();
    header.extend(report.columns.iter().cloned());
    header.extend(["exact", "branch", "supported"].map(String::from));
    let mut table = Table { header, rows: Vec::new() };
    for p in &report.points {
        let mut row: Vec<String> = p.params.iter().chain(&p.values).map(ToString::to_string).collect();
        row.push(p.exact.to_string());
        row.push(p.branch.clone().unwrap_or_default());
        row.push(p.supported().to_string());
        table.push(row);
    }
    let mut text = summary(&report);
    if let Some(out) = &args.out {
        let _ = writeln!(text, "wrote {} and {}", out.display(), counterexample_path(out).display());
    }
    let failed = matches!(
        args.kind,
        SweepKind::Theorem1 | SweepKind::Arithmetic | SweepKind::StrictInequality
    ) && !report.counterexamples.is_empty();
    let payload = to_value(&SweepPayload {
        report,
        out: args.out.as_deref().map(display),
        counterexamples_out: args.out.as_deref().map(|o| display(&counterexample_path(o))),
        journal: journal.as_deref().map(display),
    })?;
    Ok(Rendered {
        generators: None,
        reduced: None,
        payload,
        text,
        table,
        failed,
    })
}

#[derive(Serialize)]
struct FigurePayload {
    rows: Vec<FigureRow>,
    out: Option<String>,
}

pub fn figure(a_min: u64, a_max: u64, out: Option<&Path>, window: Option<u64>) -> Result<Rendered> {
    let rows = figure_frobenius_family(a_min, a_max, window)?;
    if let Some(path) = out {
        write_figure_csv(&rows, path)?;
    }
    let mut table = Table::new(&[
        "a",
        "generators",
        "catenary",
        "monotone",
        "gap",
        "predicted_catenary",
        "predicted_monotone",
        "derived_gap",
        "stated_gap",
        "betti_matches",
        "monotone_exact",
        "outside_hypothesis",
    ]);
    let mut text = format!(
        "{:>3} {:>6} {:>9} {:>6} {:>10} {:>10}\n",
        "a", "c(M)", "c_mon(M)", "gap", "a^2-4a+2", "a^2-4a-4"
    );
    for r in &rows {
        table.push(vec![
            r.a.to_string(),
            r.generators.clone(),
            r.catenary.to_string(),
            r.monotone.to_string(),
            r.gap.to_string(),
            r.predicted_catenary.to_string(),
            r.predicted_monotone.to_string(),
            r.derived_gap.to_string(),
            r.stated_gap.to_string(),
            r.betti_matches.to_string(),
            r.monotone_exact.to_string(),
            r.outside_hypothesis.to_string(),
        ]);
        let _ = writeln!(
            text,
            "{:>3} {:>6} {:>9} {:>6} {:>10} {:>10}",
            r.a, r.catenary, r.monotone, r.gap, r.derived_gap, r.stated_gap
        );
    }
    if let Some(path) = out {
        let _ = writeln!(text, "wrote {}", path.display());
    }
    let payload = to_value(&FigurePayload {
        rows,
        out: out.map(display),
    })?;
    Ok(Rendered {
        generators: None,
        reduced: None,
        payload,
        text,
        table,
        failed: false,
    })
}
