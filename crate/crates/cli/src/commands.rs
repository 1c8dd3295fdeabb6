use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use balacyc::balanced::{verify_prop1 as prop1_holds, BalancedComplex, Colors, HomologyReport};
use balacyc::cyclo::cyclotomic_poly;
use balacyc::cyclo_complex::{
    change_of_variables_check, fuchs_check, fuchs_vector, validate_primes, verify_theorems as theorem_report,
    CycloComplexSpec, Prop2Context, TheoremReport,
};
use balacyc::fourier::{FiniteAbelianGroup, GroupElement, GroupFunction};
use balacyc::linalg::AbelianGroupStructure;
use balacyc::sweep::{random_vectors, GroupSweep, PrimeSweep, Selection, SweepConfig};
use balacyc::SCHEMA_VERSION;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::parse;
use crate::Select;

/// What a command produced: both renderings and whether everything held.
pub struct Output {
    pub json: Value,
    pub table: String,
    pub verified: bool,
}

type Res<T> = Result<T, String>;

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn big(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

fn braces<T: ToString>(items: &[T]) -> String {
    let inner: Vec<String> = items.iter().map(T::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn tuple(x: &GroupElement) -> String {
    let inner: Vec<String> = x.0.iter().map(u64::to_string).collect();
    format!("({})", inner.join(","))
}

fn colors_label(colors: &Colors) -> String {
    serde_json::to_string(colors).expect("colors serialize")
}

fn phi_of(primes: &[u64]) -> u64 {
    primes.iter().map(|p| p - 1).product()
}

pub fn cyclo(n: &str) -> Res<Output> {
    let n: u64 = n
        .trim()
        .parse()
        .map_err(|_| format!("n must be a positive integer, got {n:?}"))?;
    if n == 0 || n > 100_000 {
        return Err(format!("n must be in 1..=100000, got {n}"));
    }
    let p = cyclotomic_poly(n).map_err(err)?;
    Ok(Output {
        json: json!({
            "schema": SCHEMA_VERSION,
            "n": n,
            "coefficients": p.coeffs().iter().map(big).collect::<Vec<_>>(),
        }),
        table: format!("{p}\n"),
        verified: true,
    })
}

fn homology_table(header: &str, report: &HomologyReport) -> String {
    let mut t = String::new();
    let f: Vec<String> = report.f_vector.iter().map(usize::to_string).collect();
    writeln!(t, "{header}").unwrap();
    writeln!(t, "f-vector  ({})", f.join(", ")).unwrap();
    writeln!(t, "{:<5} {:<24} reduced cohomology", "dim", "reduced homology").unwrap();
    for (dim, h) in &report.homology {
        writeln!(t, "{dim:<5} {:<24} {}", h.to_string(), report.cohomology[dim]).unwrap();
    }
    if !report.uct {
        writeln!(t, "universal coefficients: INCONSISTENT").unwrap();
    }
    t
}

pub fn homology_groups(groups: &str, set: Option<&str>) -> Res<Output> {
    let colors = parse::groups(groups)?;
    let elements = colors.product().elements();
    let a: Vec<GroupElement> = match set {
        Some(s) => parse::group_set(&colors, s)?
            .into_iter()
            .map(|i| elements[i].clone())
            .collect(),
        None => elements,
    };
    let x = BalancedComplex::build(&colors, &a).map_err(err)?;
    let report = x.report();
    let cells: Vec<String> = report.top_cells.iter().map(tuple).collect();
    let header = format!("X(A) over {}, A = {}", colors_label(&colors), braces(&cells));
    Ok(Output {
        table: homology_table(&header, &report),
        verified: report.uct,
        json: serde_json::to_value(&report).map_err(err)?,
    })
}

pub fn homology_primes(primes: &str, set: Option<&str>) -> Res<Output> {
    let primes = parse::primes(primes)?;
    let phi = phi_of(&primes);
    let indices: Vec<u64> = match set {
        Some(s) => parse::index_set(phi, s)?.into_iter().map(|j| j as u64).collect(),
        None => (0..=phi).collect(),
    };
    let spec = CycloComplexSpec::new(&primes, &indices).map_err(err)?;
    let report = spec.build().map_err(err)?.report();
    let mut json = serde_json::to_value(&report).map_err(err)?;
    let obj = json.as_object_mut().expect("report is an object");
    obj.insert("primes".into(), json!(primes));
    obj.insert("n".into(), json!(spec.n));
    obj.insert("indices".into(), json!(spec.a));
    obj.insert("dA".into(), big(&spec.d_a));
    let header = format!("K_A for n = {}, A = {}, d_A = {}", spec.n, braces(&spec.a), spec.d_a);
    Ok(Output {
        table: homology_table(&header, &report),
        verified: report.uct,
        json,
    })
}

/// Resolves a selection, refusing exhaustive sweeps that cannot finish.
fn resolve_positions(sel: &Selection, universe: usize) -> Res<Vec<Vec<usize>>> {
    if sel.all && universe > 20 {
        return Err(format!("exhaustive sweep over {universe} elements is too large"));
    }
    Ok(sel.resolve_positions(universe))
}

#[derive(Serialize)]
struct Case<T> {
    #[serde(rename = "A")]
    a: T,
    holds: bool,
}

fn summary_line(name: &str, target: &str, cases: usize, failures: usize) -> String {
    format!("{name:<20} {target:<22} {cases:>5} cases  {failures} failures\n")
}

fn prop1_cases(colors: &Colors, sel: &Selection) -> Res<Vec<Case<Vec<GroupElement>>>> {
    let elements = colors.product().elements();
    let subsets = resolve_positions(sel, elements.len())?;
    subsets
        .into_par_iter()
        .map(|s| {
            let a: Vec<GroupElement> = s.into_iter().map(|i| elements[i].clone()).collect();
            let holds = prop1_holds(colors, &a).map_err(err)?;
            Ok(Case { a, holds })
        })
        .collect()
}

pub fn verify_prop1(groups: &str, select: &Select) -> Res<Output> {
    let colors = parse::groups(groups)?;
    let sel = parse::selection(select, colors.product().order() as usize, |s| {
        parse::group_set(&colors, s)
    })?;
    let cases = prop1_cases(&colors, &sel)?;
    let failures: Vec<&Case<_>> = cases.iter().filter(|c| !c.holds).collect();
    let mut table = summary_line("verify-prop1", &colors_label(&colors), cases.len(), failures.len());
    for f in &failures {
        let cells: Vec<String> = f.a.iter().map(tuple).collect();
        writeln!(table, "  MISMATCH A = {}", braces(&cells)).unwrap();
    }
    Ok(Output {
        verified: failures.is_empty(),
        json: json!({
            "schema": SCHEMA_VERSION,
            "command": "verify-prop1",
            "groups": colors,
            "seed": select.seed,
            "cases": cases,
            "failures": failures.len(),
            "verified": failures.is_empty(),
        }),
        table,
    })
}

fn index_universe(primes: &[u64]) -> Vec<u64> {
    (0..=phi_of(primes)).collect()
}

fn prop2_cases(primes: &[u64], sel: &Selection) -> Res<Vec<Case<Vec<u64>>>> {
    let ctx = Prop2Context::new(primes).map_err(err)?;
    let universe = index_universe(primes);
    resolve_positions(sel, universe.len())?
        .into_par_iter()
        .map(|s| {
            let a: Vec<u64> = s.into_iter().map(|i| universe[i]).collect();
            let holds = ctx.verify(&a).map_err(err)?;
            Ok(Case { a, holds })
        })
        .collect()
}

pub fn verify_prop2(primes: &str, select: &Select) -> Res<Output> {
    let primes = parse::primes(primes)?;
    let phi = phi_of(&primes);
    let sel = parse::selection(select, phi as usize + 1, |s| parse::index_set(phi, s))?;
    let cases = prop2_cases(&primes, &sel)?;
    let failures: Vec<&Case<_>> = cases.iter().filter(|c| !c.holds).collect();
    let mut table = summary_line("verify-prop2", &format!("{primes:?}"), cases.len(), failures.len());
    for f in &failures {
        writeln!(table, "  MISMATCH A = {}", braces(&f.a)).unwrap();
    }
    Ok(Output {
        verified: failures.is_empty(),
        json: json!({
            "schema": SCHEMA_VERSION,
            "command": "verify-prop2",
            "primes": primes,
            "seed": select.seed,
            "cases": cases,
            "failures": failures.len(),
            "verified": failures.is_empty(),
        }),
        table,
    })
}

fn theorem_cases(primes: &[u64], sel: &Selection) -> Res<Vec<TheoremReport>> {
    let universe = index_universe(primes);
    resolve_positions(sel, universe.len())?
        .into_par_iter()
        .map(|s| {
            let a: Vec<u64> = s.into_iter().map(|i| universe[i]).collect();
            theorem_report(primes, &a).map_err(err)
        })
        .collect()
}

fn row(groups: &std::collections::BTreeMap<String, AbelianGroupStructure>) -> String {
    let parts: Vec<String> = groups.values().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn verify_theorems(primes: &str, select: &Select) -> Res<Output> {
    let primes = parse::primes(primes)?;
    let phi = phi_of(&primes);
    let mut sel = parse::selection(select, phi as usize + 1, |s| parse::index_set(phi, s))?;
    if sel.explicit.iter().any(Vec::is_empty) {
        return Err("A = {} is not covered by the homology table; use `homology --primes ... --set \"\"`".into());
    }
    sel.nonempty = true;
    let reports = theorem_cases(&primes, &sel)?;
    let failures = reports.iter().filter(|r| !r.ok()).count();
    let mut table = summary_line("verify-theorems", &format!("{primes:?}"), reports.len(), failures);
    writeln!(
        table,
        "{:<24} {:>4}  {:<28} {:<28} ok",
        "A", "d_A", "reduced homology", "reduced cohomology"
    )
    .unwrap();
    for r in &reports {
        let mark = if r.ok() { "yes" } else { "NO" };
        writeln!(
            table,
            "{:<24} {:>4}  {:<28} {:<28} {mark}",
            braces(&r.a),
            r.d_a.to_string(),
            row(&r.computed.homology),
            row(&r.computed.cohomology)
        )
        .unwrap();
        if !r.ok() {
            writeln!(
                table,
                "{:<24} {:>4}  {:<28} {:<28} (predicted)",
                "",
                "",
                row(&r.predicted.homology),
                row(&r.predicted.cohomology)
            )
            .unwrap();
        }
    }
    Ok(Output {
        verified: failures == 0,
        json: json!({
            "schema": SCHEMA_VERSION,
            "command": "verify-theorems",
            "primes": primes,
            "seed": select.seed,
            "cases": reports,
            "failures": failures,
            "verified": failures == 0,
        }),
        table,
    })
}

pub fn fuchs(primes: &str) -> Res<Output> {
    let primes = parse::primes(primes)?;
    let n = validate_primes(&primes).map_err(err)?;
    let f = fuchs_vector(&primes).map_err(err)?;
    let holds = fuchs_check(&primes).map_err(err)?;
    Ok(Output {
        json: json!({
            "schema": SCHEMA_VERSION,
            "command": "fuchs",
            "primes": primes,
            "n": n,
            "f": f.iter().map(big).collect::<Vec<_>>(),
            "holds": holds,
        }),
        table: format!(
            "truncated Φ_{n} on Z_{n} is {}a top coboundary of the full join\n",
            if holds { "" } else { "NOT " }
        ),
        verified: holds,
    })
}

#[derive(Serialize)]
struct Family {
    family: &'static str,
    target: Value,
    cases: usize,
    failures: Vec<Value>,
}

fn wedge_family(groups: &[Vec<u64>]) -> Res<Family> {
    let colors = Colors::new(
        groups
            .iter()
            .map(|o| FiniteAbelianGroup::new(o.clone()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?,
    )
    .map_err(err)?;
    let x = BalancedComplex::build(&colors, &colors.product().elements()).map_err(err)?;
    let h = x.homology();
    let k = colors.k();
    let holds = h[..k].iter().all(AbelianGroupStructure::is_trivial)
        && h[k] == AbelianGroupStructure::free(colors.wedge_count() as usize);
    Ok(Family {
        family: "wedge",
        target: json!(groups),
        cases: 1,
        failures: if holds { vec![] } else { vec![json!(groups)] },
    })
}

fn failures_of<T: Serialize>(cases: &[Case<T>]) -> Vec<Value> {
    cases.iter().filter(|c| !c.holds).map(|c| json!(c.a)).collect()
}

fn prop1_family(s: &GroupSweep) -> Res<Family> {
    let colors = parse::groups(&serde_json::to_string(&s.groups).map_err(err)?)?;
    let cases = prop1_cases(&colors, &s.selection)?;
    Ok(Family {
        family: "prop1",
        target: json!(s.groups),
        cases: cases.len(),
        failures: failures_of(&cases),
    })
}

fn theorems_family(s: &PrimeSweep) -> Res<Family> {
    validate_primes(&s.primes).map_err(err)?;
    let sel = Selection {
        nonempty: true,
        ..s.selection.clone()
    };
    let reports = theorem_cases(&s.primes, &sel)?;
    Ok(Family {
        family: "theorems",
        target: json!(s.primes),
        cases: reports.len(),
        failures: reports.iter().filter(|r| !r.ok()).map(|r| json!(r.a)).collect(),
    })
}

fn prop2_family(s: &PrimeSweep) -> Res<Family> {
    let cases = prop2_cases(&s.primes, &s.selection)?;
    Ok(Family {
        family: "prop2",
        target: json!(s.primes),
        cases: cases.len(),
        failures: failures_of(&cases),
    })
}

fn fuchs_family(primes: &[u64]) -> Res<Family> {
    let holds = fuchs_check(primes).map_err(err)?;
    Ok(Family {
        family: "fuchs",
        target: json!(primes),
        cases: 1,
        failures: if holds { vec![] } else { vec![json!(primes)] },
    })
}

fn change_of_variables_family(s: &PrimeSweep) -> Res<Family> {
    validate_primes(&s.primes).map_err(err)?;
    let g = FiniteAbelianGroup::new(s.primes.clone()).map_err(err)?;
    let hs = random_vectors(s.selection.random, g.order() as usize, -3, 3, s.selection.seed);
    let results: Vec<(Vec<i64>, bool)> = hs
        .into_par_iter()
        .map(|v| {
            let h = GroupFunction::from_values(&g, v.iter().map(|&x| BigInt::from(x)).collect()).map_err(err)?;
            Ok((v, change_of_variables_check(&s.primes, &h).map_err(err)?))
        })
        .collect::<Res<_>>()?;
    Ok(Family {
        family: "change-of-variables",
        target: json!(s.primes),
        cases: results.len(),
        failures: results
            .into_iter()
            .filter(|(_, ok)| !ok)
            .map(|(v, _)| json!(v))
            .collect(),
    })
}

pub fn sweep(config: Option<&Path>, seed: u64) -> Res<Output> {
    let (cfg, seed) = match config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let cfg: SweepConfig = serde_json::from_str(&text).map_err(|e| format!("bad sweep config: {e}"))?;
            (cfg, Value::Null)
        }
        None => (SweepConfig::standard(seed), json!(seed)),
    };
    let mut families = Vec::new();
    for g in &cfg.wedge {
        families.push(wedge_family(g)?);
    }
    for s in &cfg.prop1 {
        families.push(prop1_family(s)?);
    }
    for s in &cfg.theorems {
        families.push(theorems_family(s)?);
    }
    for s in &cfg.prop2 {
        families.push(prop2_family(s)?);
    }
    for p in &cfg.fuchs {
        families.push(fuchs_family(p)?);
    }
    for s in &cfg.change_of_variables {
        families.push(change_of_variables_family(s)?);
    }
    let failed: usize = families.iter().map(|f| f.failures.len()).sum();
    let mut table = String::new();
    for f in &families {
        let target = serde_json::to_string(&f.target).expect("target serializes");
        table.push_str(&summary_line(f.family, &target, f.cases, f.failures.len()));
        for bad in &f.failures {
            writeln!(table, "  MISMATCH {bad}").unwrap();
        }
    }
    writeln!(
        table,
        "{}",
        if failed == 0 {
            "all verified"
        } else {
            "MISMATCHES FOUND"
        }
    )
    .unwrap();
    Ok(Output {
        verified: failed == 0,
        json: json!({
            "schema": SCHEMA_VERSION,
            "command": "sweep",
            "seed": seed,
            "families": families,
            "verified": failed == 0,
        }),
        table,
    })
}
