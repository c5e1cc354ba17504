use std::fs;
use std::path::Path;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use ffheights::elliptic::{CurveModel, CurvePoint};
use ffheights::fibers::build_fiber;
use ffheights::heights::{contributing_places, global_height_with, height_limit_oracle, local_height_with, MethodRegistry};
use ffheights::io::{
    matrix_strings, parse_rational, rational_to_string, read_json, AnalyzeReport, CountSmallReport, CountingReport,
    CurveSpec, CurveSummary, FiberTableReport, HeightReport, InequalityJson, IsotrivialReport, LehmerReport,
    LocalHeightsReport, LocalRow, MethodValue, OptimizeReport, PlaceRow, PlaceSpec, PointSpec,
};
use ffheights::lehmer::{
    inequality_check, isotrivial_bound_check, optimize_constant_grid, sigma_count, theorem1_bound, theorem2_bound,
    InequalityInstance,
};
use ffheights::reduction::{bad_places, component_of, localize, minimal_discriminant_degree, Kodaira};
use ffheights::{Error, Result};

use crate::table;
use crate::Command;

pub struct Outcome {
    pub text: String,
    pub json: Value,
    /// False when a mathematical check failed.
    pub ok: bool,
}

fn outcome<T: Serialize>(text: String, report: &T, ok: bool) -> Outcome {
    Outcome { text, json: serde_json::to_value(report).expect("reports serialize"), ok }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load_curve(path: &Path) -> Result<(CurveSpec, CurveModel)> {
    let spec: CurveSpec = read_json(&read(path)?)?;
    let e = spec.build()?;
    Ok((spec, e))
}

/// A points file holds one point or a list of points.
fn load_points(path: &Path, spec: &CurveSpec, e: &CurveModel) -> Result<(Vec<PointSpec>, Vec<CurvePoint>, bool)> {
    let v: Value = read_json(&read(path)?)?;
    let (specs, single): (Vec<PointSpec>, bool) = match v {
        Value::Array(_) => (read_json(&v.to_string())?, false),
        _ => (vec![read_json(&v.to_string())?], true),
    };
    let pts = specs.iter().map(|s| s.build(spec, e)).collect::<Result<_>>()?;
    Ok((specs, pts, single))
}

fn parse_f64(s: &str) -> Result<f64> {
    parse_rational(s)?.to_f64().ok_or_else(|| Error::Input(format!("{s} is out of range")))
}

pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Analyze { curve } => analyze(curve),
        Command::Height { curve, points, method, oracle } => height(curve, points, method, *oracle),
        Command::LocalHeights { curve, points, method } => local_heights(curve, points, method.as_deref()),
        Command::LehmerCheck { curve, points, isotrivial } => lehmer_check(curve, points, *isotrivial),
        Command::OptimizeConstant { grid, j, d } => optimize(*grid, *j, *d),
        Command::CountSmall { curve, generators, bound, torsion, delta, eps } => {
            count_small(curve, generators, bound.as_deref(), torsion.as_deref(), delta.as_deref(), eps.as_deref())
        }
        Command::FiberTable { kind, m } => fiber_table(kind, *m),
        Command::Inequality { alpha, beta, e, constant } => inequality(alpha, beta, e, constant),
    }
}

fn analyze(curve: &Path) -> Result<Outcome> {
    let (spec, e) = load_curve(curve)?;
    let var = spec.point_var().to_string();
    let places = bad_places(&e)?
        .iter()
        .map(|w| localize(&e, w).map(|l| PlaceRow::new(&l, &var)))
        .collect::<Result<Vec<_>>>()?;
    let report = AnalyzeReport {
        curve: CurveSummary::new(&e, &var),
        places,
        minimal_discriminant_degree: minimal_discriminant_degree(&e)?,
    };
    let c = &report.curve;
    let mut text = format!(
        "y^2 = x^3 + ({})x + ({}) over F_{}({var}), [K:F] = {}\ndisc = {}\nj = {}\nh(j) = {}{}\n\n",
        c.a,
        c.b,
        c.p,
        c.degree,
        c.discriminant,
        c.j,
        c.h_j,
        if c.isotrivial { " (isotrivial)" } else { "" }
    );
    let rows: Vec<Vec<String>> = report
        .places
        .iter()
        .map(|r| {
            vec![
                place_text(&r.place),
                r.degree.to_string(),
                r.e.to_string(),
                r.kodaira.clone(),
                r.v_disc.to_string(),
                r.v_c4.map_or("-".into(), |v| v.to_string()),
                r.j_w.to_string(),
                r.component_group.clone(),
            ]
        })
        .collect();
    text += &table::render(&["place", "deg", "e", "type", "v(disc)", "v(c4)", "J_w", "group"], &rows);
    text += &format!("deg(minimal discriminant) = {}\n", report.minimal_discriminant_degree);
    Ok(outcome(text, &report, true))
}

fn place_text(p: &PlaceSpec) -> String {
    match p {
        PlaceSpec::Finite { poly } => poly.clone(),
        PlaceSpec::Infinite => "infinity".into(),
    }
}

fn one_or_many<T: Serialize>(items: &[T], single: bool) -> Value {
    if single {
        serde_json::to_value(&items[0]).expect("reports serialize")
    } else {
        serde_json::to_value(items).expect("reports serialize")
    }
}

fn height(curve: &Path, points: &Path, method: &str, oracle: Option<u32>) -> Result<Outcome> {
    let (spec, e) = load_curve(curve)?;
    let (specs, pts, single) = load_points(points, &spec, &e)?;
    let registry = MethodRegistry::default();
    let m = registry
        .get(method)
        .ok_or_else(|| Error::Input(format!("unknown method {method:?}; available: {}", registry.names().join(", "))))?;
    let var = spec.point_var();
    let mut reports = Vec::new();
    let mut text = String::new();
    for (ps, p) in specs.into_iter().zip(&pts) {
        let h = global_height_with(m, &e, p)?;
        let mut r = HeightReport::new(ps, &h, var);
        if let Some(n) = oracle {
            let half = BigRational::new(1.into(), 2.into());
            r.oracle = Some(height_limit_oracle(&e, p, n)?.iter().map(|v| rational_to_string(&(v * &half))).collect());
        }
        text += &format!("P = {}\nhhat(P) = {}\n", p.display_with(var), r.hhat);
        let rows: Vec<Vec<String>> = r
            .ledger
            .iter()
            .map(|l| {
                vec![place_text(&l.place), l.degree.to_string(), l.e.to_string(), l.kodaira.clone(), l.lambda.clone(), l.method.clone()]
            })
            .collect();
        text += &table::render(&["place", "deg", "e", "type", "lambda", "method"], &rows);
        if let Some(o) = &r.oracle {
            text += &format!("doubling sequence / 2: {}\n", o.join(", "));
        }
        text += "\n";
        reports.push(r);
    }
    Ok(Outcome { text, json: one_or_many(&reports, single), ok: true })
}

fn local_heights(curve: &Path, points: &Path, only: Option<&str>) -> Result<Outcome> {
    let (spec, e) = load_curve(curve)?;
    let (specs, pts, single) = load_points(points, &spec, &e)?;
    let registry = MethodRegistry::default();
    let methods: Vec<_> = match only {
        Some(name) => vec![registry
            .get(name)
            .ok_or_else(|| Error::Input(format!("unknown method {name:?}; available: {}", registry.names().join(", "))))?],
        None => registry.iter().collect(),
    };
    let var = spec.point_var();
    let mut reports = Vec::new();
    let mut text = String::new();
    for (ps, p) in specs.into_iter().zip(&pts) {
        let mut rows = Vec::new();
        if !p.is_infinity() {
            for w in contributing_places(&e, p)? {
                let local = localize(&e, &w)?;
                let e_w = BigRational::from_integer(local.e.into());
                let mut values = Vec::new();
                for m in &methods {
                    let lh = local_height_with(*m, &e, &local, p)?;
                    values.push(MethodValue {
                        method: m.name().to_string(),
                        lambda: rational_to_string(&(lh.value / &e_w)),
                        fallback: lh.method != m.method(),
                    });
                }
                let agree = values.iter().all(|v| v.lambda == values[0].lambda);
                rows.push(LocalRow {
                    place: PlaceSpec::from_place(&w, var),
                    kodaira: local.kodaira.to_string(),
                    component: component_of(&local, p)?.to_string(),
                    values,
                    agree,
                });
            }
        }
        let agree = rows.iter().all(|r| r.agree);
        text += &format!("P = {}\n", p.display_with(var));
        let mut header = vec!["place", "type", "component"];
        header.extend(methods.iter().map(|m| m.name()));
        let trows: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                let mut v = vec![place_text(&r.place), r.kodaira.clone(), r.component.clone()];
                v.extend(r.values.iter().map(|m| if m.fallback { format!("{}*", m.lambda) } else { m.lambda.clone() }));
                v
            })
            .collect();
        text += &table::render(&header, &trows);
        text += if agree { "methods agree\n\n" } else { "METHODS DISAGREE\n\n" };
        reports.push(LocalHeightsReport { point: ps, rows, agree });
    }
    let ok = reports.iter().all(|r| r.agree);
    Ok(Outcome { text, json: one_or_many(&reports, single), ok })
}

fn verdict(passes: bool) -> &'static str {
    if passes {
        "pass"
    } else {
        "FAIL"
    }
}

fn lehmer_check(curve: &Path, points: &Path, isotrivial: bool) -> Result<Outcome> {
    let (spec, e) = load_curve(curve)?;
    let (_, pts, _) = load_points(points, &spec, &e)?;
    if isotrivial {
        let r = IsotrivialReport::from(&isotrivial_bound_check(&e, &pts)?);
        let mut text = format!(
            "deg(minimal discriminant) = {}, [K:F] = {}, bound = {}{}\n",
            r.discriminant_degree,
            r.degree,
            r.bound,
            if r.split { " (split: bound is vacuous)" } else { "" }
        );
        text += &point_rows(&r.points, "12-torsion");
        text += &format!("{}\n", verdict(r.passes));
        return Ok(outcome(text, &r, r.passes));
    }
    let r = LehmerReport::from(&theorem1_bound(&e, &pts).map_err(|err| match err {
        Error::Isotrivial => Error::Input("curve is isotrivial; rerun with --isotrivial".into()),
        other => other,
    })?);
    let mut text = format!("h(j) = {}, [K:F] = {}, bound = {}\n", r.h_j, r.degree, r.bound);
    if r.large_regime {
        text += &format!("large regime: bound = {}\n", r.large_bound);
    }
    text += &point_rows(&r.points, "torsion");
    text += &format!("{}\n", verdict(r.passes));
    Ok(outcome(text, &r, r.passes))
}

fn point_rows(points: &[ffheights::io::PointCheckRow], excluded: &str) -> String {
    let rows: Vec<Vec<String>> = points
        .iter()
        .map(|c| {
            vec![
                c.index.to_string(),
                c.hhat.clone(),
                if c.excluded { excluded.to_string() } else { verdict(c.passes).to_string() },
            ]
        })
        .collect();
    table::render(&["point", "hhat", "result"], &rows)
}

fn optimize(grid: u32, j: f64, d: f64) -> Result<Outcome> {
    let g = optimize_constant_grid(j, d, grid)?;
    let r = OptimizeReport {
        approx: true,
        j,
        d,
        grid,
        delta: g.delta,
        eps: g.eps,
        value: g.value,
        reciprocal: 1.0 / g.value,
    };
    let text = format!(
        "grid {grid}x{grid}, J = {j}, D = {d}\nmax C4 = {:.6e} = 1/{:.1} at delta = {}, eps = {}\n",
        r.value, r.reciprocal, r.delta, r.eps
    );
    Ok(outcome(text, &r, true))
}

fn count_small(
    curve: &Path,
    generators: &Path,
    bound: Option<&str>,
    torsion: Option<&Path>,
    delta: Option<&str>,
    eps: Option<&str>,
) -> Result<Outcome> {
    let (spec, e) = load_curve(curve)?;
    let (_, gens, _) = load_points(generators, &spec, &e)?;
    let tors = match torsion {
        Some(p) => load_points(p, &spec, &e)?.1,
        None => Vec::new(),
    };
    let counting = match (delta, eps) {
        (Some(dl), Some(ep)) => {
            let h_j = ffheights::funcfield::weil_height(e.j_invariant(), e.extension());
            let c = theorem2_bound(parse_f64(dl)?, parse_f64(ep)?, e.degree(), h_j.to_f64().unwrap_or(f64::NAN))?;
            Some(CountingReport {
                approx: true,
                delta: c.delta,
                eps: c.eps,
                b: c.b,
                count_bound: c.count_bound,
                n_bound: c.n_bound,
            })
        }
        (None, None) => None,
        _ => return Err(Error::Input("--delta and --eps go together".into())),
    };
    let b = match (bound, &counting) {
        (Some(s), _) => parse_rational(s)?,
        (None, Some(c)) => BigRational::from_float(c.b).ok_or_else(|| Error::Input("bound is not finite".into()))?,
        (None, None) => return Err(Error::Input("give --B or both --delta and --eps".into())),
    };
    let s = sigma_count(&e, &gens, &tors, &b)?;
    let within_bound = counting.as_ref().is_none_or(|c| (s.count as f64) <= c.count_bound);
    let r = CountSmallReport {
        bound: rational_to_string(&b),
        gram: matrix_strings(&s.gram),
        lattice_points: s.lattice_points,
        torsion: s.torsion,
        count: s.count,
        theorem2: counting,
        within_bound,
    };
    let mut text = format!("Gram matrix:\n{}", table::matrix(&r.gram));
    text += &format!(
        "points with hhat <= {}: {} ({} lattice x {} torsion)\n",
        r.bound, r.count, r.lattice_points, r.torsion
    );
    if let Some(c) = &r.theorem2 {
        text += &format!("counting bound = {:.4} ({})\n", c.count_bound, verdict(within_bound));
    }
    Ok(outcome(text, &r, within_bound))
}

fn fiber_table(kind: &str, m: Option<u32>) -> Result<Outcome> {
    let k = Kodaira::parse(kind, m)?;
    let r = FiberTableReport::new(&build_fiber(k));
    let mut text = format!("type {}\ncomponents: {}\n", r.kodaira, r.components.join(" "));
    text += &format!(
        "multiplicities: {}\n\nintersection matrix:\n{}",
        r.multiplicities.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" "),
        table::matrix(&r.matrix)
    );
    if let (Some(inv), Some(det)) = (&r.reduced_inverse, &r.det) {
        text += &format!("\nreduced inverse:\n{}det = {det}\n", table::matrix(inv));
    }
    for k in &r.kernel {
        text += &format!("kernel: ({})\n", k.join(", "));
    }
    if !r.corrections.is_empty() {
        let rows: Vec<Vec<String>> =
            r.corrections.iter().map(|c| vec![c.component.clone(), c.index.to_string(), c.value.clone()]).collect();
        text += "\n";
        text += &table::render(&["component", "index", "correction"], &rows);
    }
    Ok(outcome(text, &r, true))
}

fn inequality(alpha: &str, beta: &str, e: &[String], constant: &str) -> Result<Outcome> {
    let inst = InequalityInstance::new(
        parse_rational(alpha)?,
        parse_rational(beta)?,
        e.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?,
    )?;
    let c = parse_rational(constant)?;
    let rep = inequality_check(&inst, &c);
    let r = InequalityJson::new(&inst, &c, &rep);
    let text = format!(
        "lhs = {}\nlhs^3 = {}\nstated:  rhs^3 = {}  holds = {}\nrefined: rhs^3 = {}  holds = {}\n",
        r.lhs, r.lhs_cubed, r.rhs_cubed, r.holds, r.refined_rhs_cubed, r.refined_holds
    );
    Ok(outcome(text, &r, r.refined_holds))
}
