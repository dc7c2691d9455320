//! Command dispatch shared by the binary and the integration tests.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::families::{
    self, bounds_report, hypersurface_bounds, max_mult_circuit_system, planar_bounds_table,
    witness_diagram_prediction, witness_system,
};
use crate::gale::{
    cube_example, duality_square, gale_is_convenient, gale_system, hdual_series,
    repair_gale_convenient_b, repair_gale_convenient_d, repair_system_convenient, GaleData,
};
use crate::geometry::{
    covolume_single, mixed_covolume, newton_diagram, staircase_lenient, ConvenientPolytope,
    Staircase, VanishingSumEvaluator,
};
use crate::io::{self, SystemInput};
use crate::matrix::IntMatrix;
use crate::oracle::{
    multiplicity_at_one, multiplicity_at_origin, multiplicity_of_series, nondegeneracy_check,
    shift_system, FaceStatus, Multiplicity, NondegeneracyReport, PolySystem, SeriesMultiplicity,
};
use crate::poly::MultiPoly;
use crate::rat::{format_rat, rat, Rat};
use crate::report::Report;
use crate::support::SparseSystem;

/// Which point the multiplicity is taken at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtPoint {
    One,
    Origin,
}

/// A fully parsed job, ready to dispatch.
pub enum JobSpec {
    Mult {
        input: SystemInput,
        at: AtPoint,
        ceiling: Option<u64>,
        integerize: bool,
        seed: u64,
    },
    Gale {
        input: SystemInput,
        repair: Option<String>,
        seed: u64,
    },
    Hdual {
        input: SystemInput,
        order: Option<u64>,
    },
    Square {
        input: SystemInput,
    },
    Diagram {
        input: SystemInput,
    },
    Covolume {
        polytopes: Vec<Vec<Vec<Rat>>>,
    },
    Bounds {
        input: SystemInput,
        ceiling: Option<u64>,
    },
    Witness {
        n: usize,
        m: u64,
        ceiling: Option<u64>,
    },
    Cyclic {
        d: Vec<i64>,
        n: Option<usize>,
    },
    Hyper {
        n: u64,
        m: u64,
    },
}

pub fn run(job: &JobSpec) -> Result<Report> {
    match job {
        JobSpec::Mult {
            input,
            at,
            ceiling,
            integerize,
            seed,
        } => run_mult(input, *at, *ceiling, *integerize, *seed),
        JobSpec::Gale {
            input,
            repair,
            seed,
        } => run_gale(input, repair.as_deref(), *seed),
        JobSpec::Hdual { input, order } => run_hdual(input, *order),
        JobSpec::Square { input } => run_square(input),
        JobSpec::Diagram { input } => run_diagram(input),
        JobSpec::Covolume { polytopes } => run_covolume(polytopes),
        JobSpec::Bounds { input, ceiling } => run_bounds(input, *ceiling),
        JobSpec::Witness { n, m, ceiling } => run_witness(*n, *m, *ceiling),
        JobSpec::Cyclic { d, n } => run_cyclic(d, *n),
        JobSpec::Hyper { n, m } => run_hyper(*n, *m),
    }
}

fn mult_value(m: Multiplicity) -> Value {
    match m {
        Multiplicity::Finite(v) => json!(v),
        Multiplicity::Infinite => json!("infinite-or-unknown"),
    }
}

fn staircase_value(st: &Staircase) -> Value {
    json!({
        "minimal_points": st.minimal_points,
        "axis_intercepts": st
            .axis_intercepts
            .iter()
            .map(|i| match i {
                Some(v) => json!(v),
                None => json!("vanishes-on-axis"),
            })
            .collect::<Vec<_>>(),
        "convenient": st.is_convenient(),
    })
}

fn row_staircases(system: &SparseSystem) -> Vec<Staircase> {
    (0..system.equations())
        .map(|k| {
            staircase_lenient(
                &VanishingSumEvaluator::for_system_row(&system.coeffs, &system.config, k),
                None,
            )
        })
        .collect()
}

/// Mixed covolume of the shifted Newton polytopes, when every equation is
/// convenient and the system is square.
fn system_covolume(system: &SparseSystem, stairs: &[Staircase]) -> Result<Option<Rat>> {
    if system.equations() != system.config.dim() {
        return Ok(None);
    }
    if !stairs.iter().all(Staircase::is_convenient) {
        return Ok(None);
    }
    let polys: Result<Vec<ConvenientPolytope>> = stairs
        .iter()
        .map(ConvenientPolytope::from_staircase)
        .collect();
    let polys = polys?;
    Ok(Some(if polys.len() == 1 {
        covolume_single(&polys[0])
    } else {
        mixed_covolume(&polys)?
    }))
}

fn nondegeneracy_value(report: &NondegeneracyReport) -> Value {
    let status = |s: FaceStatus| match s {
        FaceStatus::NonDegenerate => "non-degenerate",
        FaceStatus::Degenerate => "degenerate",
        FaceStatus::Unknown => "unknown",
    };
    json!({
        "overall": status(report.overall),
        "faces": report
            .faces
            .iter()
            .map(|(t, s)| {
                json!({
                    "variables": t.subset.iter().map(|v| v + 1).collect::<Vec<_>>(),
                    "weight": t.weight.iter().map(format_rat).collect::<Vec<_>>(),
                    "dim": t.face_dim,
                    "initial_forms": t.polys.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    "status": status(*s),
                })
            })
            .collect::<Vec<_>>(),
    })
}

/// Certificates for a system at the all-ones point: convenience plus the
/// per-face nondegeneracy statuses, when the expanded support is small
/// enough to enumerate.
fn certificates(system: &SparseSystem, stairs: &[Staircase]) -> Result<Value> {
    let convenient = stairs.iter().all(Staircase::is_convenient);
    let (normalized, _) = system.config.normalize_to_orthant();
    let too_big = normalized
        .points()
        .iter()
        .any(|p| p.iter().any(|&v| v > 30))
        || normalized.dim() > 3;
    if !convenient || too_big {
        return Ok(json!({
            "convenient": convenient,
            "nondegeneracy": if convenient { "not computed" } else { "not applicable" },
        }));
    }
    let shifted = shift_system(system)?;
    let report = nondegeneracy_check(&shifted)?;
    Ok(json!({
        "convenient": convenient,
        "nondegeneracy": nondegeneracy_value(&report),
    }))
}

fn covolume_relation(mu: Option<u64>, covolume: &Option<Rat>, cert: &Value) -> Value {
    let overall = cert
        .pointer("/nondegeneracy/overall")
        .and_then(Value::as_str)
        .unwrap_or("not computed");
    match (mu, covolume) {
        (Some(mu), Some(cv)) => {
            let equal = &rat(mu as i64) == cv;
            let text = match (overall, equal) {
                ("non-degenerate", true) => "equal (certified)",
                ("non-degenerate", false) => "MISMATCH: certified face system contradicts equality",
                (_, true) => "consistent (uncertified)",
                (_, false) => "multiplicity exceeds covolume (degenerate or uncertified)",
            };
            json!(text)
        }
        _ => json!("not comparable"),
    }
}

fn run_mult(
    input: &SystemInput,
    at: AtPoint,
    ceiling: Option<u64>,
    integerize: bool,
    seed: u64,
) -> Result<Report> {
    let system = &input.system;
    let mut results = Map::new();
    let cert;
    match at {
        AtPoint::One => {
            let mu = multiplicity_at_one(system, ceiling)?;
            results.insert("at".into(), json!("one"));
            results.insert("multiplicity".into(), mult_value(mu));
            let stairs = row_staircases(system);
            let covolume = system_covolume(system, &stairs)?;
            if let Some(cv) = &covolume {
                results.insert("covolume".into(), json!(format_rat(cv)));
            }
            cert = certificates(system, &stairs)?;
            results.insert(
                "covolume_vs_multiplicity".into(),
                covolume_relation(mu.finite(), &covolume, &cert),
            );
            if integerize {
                match families::integerize_coefficients(system, seed) {
                    Ok(integral) => {
                        let mu2 = multiplicity_at_one(&integral, ceiling)?;
                        results.insert(
                            "integer_coefficients".into(),
                            io::rat_matrix_value(&integral.coeffs),
                        );
                        results.insert("integer_multiplicity".into(), mult_value(mu2));
                    }
                    Err(Error::NotFound(msg)) => {
                        results.insert("integer_coefficients".into(), json!(format!("not found: {msg}")));
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        AtPoint::Origin => {
            let ps = system_as_polys(system)?;
            let mu = multiplicity_at_origin(&ps, ceiling)?;
            results.insert("at".into(), json!("origin"));
            results.insert("multiplicity".into(), mult_value(mu));
            cert = Value::Null;
        }
    }
    Ok(Report::new(
        "mult",
        io::system_input_value(input),
        Value::Object(results),
        cert,
    ))
}

/// Reads the system rows as literal polynomials (no shift); exponents must
/// already be nonnegative.
fn system_as_polys(system: &SparseSystem) -> Result<PolySystem> {
    let n = system.config.dim();
    if system
        .config
        .points()
        .iter()
        .any(|p| p.iter().any(|&v| v < 0))
    {
        return Err(Error::InvalidInput(
            "origin multiplicity needs nonnegative exponents".into(),
        ));
    }
    let polys = (0..system.equations())
        .map(|k| {
            let mut p = MultiPoly::zero(n);
            for (j, pt) in system.config.points().iter().enumerate() {
                p.add_term(
                    pt.iter().map(|&v| v as u64).collect(),
                    system.coeffs.at(k, j).clone(),
                );
            }
            p
        })
        .collect();
    PolySystem::new(n, polys)
}

fn gale_data_from_input(input: &SystemInput) -> Result<GaleData> {
    match (&input.b, &input.d) {
        (Some(b), Some(d)) => GaleData::with_duals(&input.system, b.clone(), d.clone()),
        (Some(b), None) => {
            let d = crate::gale::reduced_gale_dual_d(&input.system.coeffs)?;
            GaleData::with_duals(&input.system, b.clone(), d)
        }
        (None, Some(d)) => {
            let (config, _) = input.system.config.anchor_at_zero(0)?;
            let b = crate::gale::gale_dual_b(&config);
            GaleData::with_duals(&input.system, b, d.clone())
        }
        (None, None) => GaleData::new(&input.system),
    }
}

fn run_gale(input: &SystemInput, repair: Option<&str>, seed: u64) -> Result<Report> {
    let mut gd = gale_data_from_input(input)?;
    let mut results = Map::new();
    if let Some(kind) = repair {
        match kind {
            "rows" => {
                let (m, fixed) = repair_system_convenient(&input.system, seed, 200)?;
                results.insert("repair_rows".into(), io::int_matrix_value(&m));
                results.insert("repaired_C".into(), io::rat_matrix_value(&fixed.coeffs));
            }
            "b" => {
                let (r, fixed) = repair_gale_convenient_b(&gd, seed, 200)?;
                results.insert("repair_b".into(), io::int_matrix_value(&r));
                gd = fixed;
            }
            "d" => {
                let (r, fixed) = repair_gale_convenient_d(&gd, seed, 200)?;
                results.insert("repair_d".into(), io::rat_matrix_value(&r));
                gd = fixed;
            }
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown repair kind {other:?} (use rows, b or d)"
                )))
            }
        }
    }
    let gs = gale_system(&gd);
    results.insert("B".into(), io::int_matrix_value(&gd.b));
    results.insert("D".into(), io::rat_matrix_value(&gd.d));
    results.insert(
        "linear_forms".into(),
        json!(gs
            .forms
            .iter()
            .map(|p| format!("1 + ({})", {
                let mut q = p.clone();
                q.add_term(vec![0; gd.codim()], rat(-1));
                q.to_string()
            }))
            .collect::<Vec<_>>()),
    );
    results.insert(
        "gale_polynomials".into(),
        json!(gs.polys.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
    );
    let stairs: Vec<Staircase> = (0..gd.codim()).map(|k| gd.dual_staircase(k)).collect();
    results.insert(
        "staircases".into(),
        Value::Array(stairs.iter().map(staircase_value).collect()),
    );
    results.insert("convenient".into(), json!(gale_is_convenient(&gd)?));
    let ps = PolySystem::new(gd.codim(), gs.polys.clone())?;
    results.insert(
        "multiplicity_at_origin".into(),
        mult_value(multiplicity_at_origin(&ps, None)?),
    );
    Ok(Report::new(
        "gale",
        io::system_input_value(input),
        Value::Object(results),
        Value::Null,
    ))
}

/// Default series order: the mixed covolume of the dual diagrams plus two,
/// falling back to 8 when the dual side is not convenient.
fn default_hdual_order(gd: &GaleData) -> u64 {
    let m = gd.codim();
    let stairs: Vec<Staircase> = (0..m).map(|k| gd.dual_staircase(k)).collect();
    if !stairs.iter().all(Staircase::is_convenient) {
        return 8;
    }
    let polys: Result<Vec<ConvenientPolytope>> = stairs
        .iter()
        .map(ConvenientPolytope::from_staircase)
        .collect();
    let bound = match polys {
        Ok(ps) if m == 1 => covolume_single(&ps[0]),
        Ok(ps) => match mixed_covolume(&ps) {
            Ok(v) => v,
            Err(_) => return 8,
        },
        Err(_) => return 8,
    };
    crate::rat::to_i64(&bound.ceil().to_integer()).map_or(8, |b| b.max(1) as u64 + 2)
}

fn run_hdual(input: &SystemInput, order: Option<u64>) -> Result<Report> {
    let gd = gale_data_from_input(input)?;
    let order = order.unwrap_or_else(|| default_hdual_order(&gd));
    let hd = hdual_series(&gd, order);
    let stairs: Vec<Staircase> = hd
        .series
        .iter()
        .map(|h| crate::geometry::staircase_of_support(gd.codim(), &h.support()))
        .collect();
    let series_mu = multiplicity_of_series(&hd.series, hd.order)?;
    let results = json!({
        "order": hd.order,
        "series": hd.series.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "staircases": stairs.iter().map(staircase_value).collect::<Vec<_>>(),
        "multiplicity_at_origin": match series_mu {
            SeriesMultiplicity::Stabilized(v) => json!(v),
            SeriesMultiplicity::Unknown => json!("unknown (raise --order)"),
        },
    });
    Ok(Report::new(
        "hdual",
        io::system_input_value(input),
        results,
        Value::Null,
    ))
}

fn run_square(input: &SystemInput) -> Result<Report> {
    let sq = duality_square(&input.system)?;
    let results = json!({
        "original_shifted": sq.shifted.polys.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "gale_system": sq.gale.polys.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "hdual_series": sq.hdual.series.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "hdual_order": sq.hdual.order,
        "fourth_corner_forms": sq.fourth.forms.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "fourth_corner_exponents": io::rat_matrix_value(&sq.fourth.exponents),
        "gale_staircases": sq.gale_staircases.iter().map(staircase_value).collect::<Vec<_>>(),
        "hdual_staircases": sq.hdual_staircases.iter().map(staircase_value).collect::<Vec<_>>(),
        "diagrams_equal": sq.diagrams_equal,
        "mu": sq.mu,
        "mu_prime": match sq.mu_prime {
            Some(v) => json!(v),
            None => json!("unknown"),
        },
    });
    Ok(Report::new(
        "square",
        io::system_input_value(input),
        results,
        Value::Null,
    ))
}

fn run_diagram(input: &SystemInput) -> Result<Report> {
    let system = &input.system;
    let stairs = row_staircases(system);
    let mut rows = Vec::new();
    for st in &stairs {
        let nd = newton_diagram(st);
        rows.push(json!({
            "staircase": staircase_value(st),
            "faces": nd.faces.iter().map(|f| json!({
                "vertices": f.vertices,
                "inner_normal": f.normal.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }));
    }
    let results = json!({
        "equations": rows,
        "convenient": stairs.iter().all(Staircase::is_convenient),
    });
    Ok(Report::new(
        "diagram",
        io::system_input_value(input),
        results,
        Value::Null,
    ))
}

fn run_covolume(polytopes: &[Vec<Vec<Rat>>]) -> Result<Report> {
    if polytopes.is_empty() {
        return Err(Error::InvalidInput("no polytopes given".into()));
    }
    let dim = polytopes[0]
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::InvalidInput("empty polytope".into()))?;
    let built: Result<Vec<ConvenientPolytope>> = polytopes
        .iter()
        .map(|v| ConvenientPolytope::new(dim, v.clone()))
        .collect();
    let built = built?;
    let value = if built.len() == 1 {
        covolume_single(&built[0])
    } else {
        mixed_covolume(&built)?
    };
    let inputs = json!({
        "polytopes": polytopes
            .iter()
            .map(|p| p.iter().map(|v| v.iter().map(format_rat).collect::<Vec<_>>()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    });
    let results = json!({
        "kind": if built.len() == 1 { "single" } else { "mixed" },
        "covolume": format_rat(&value),
    });
    Ok(Report::new("covolume", inputs, results, Value::Null))
}

fn bounds_value(b: &families::BoundsReport) -> Value {
    let opt_int = |v: &Option<crate::rat::Int>| match v {
        Some(x) => json!(x.to_string()),
        None => json!("not applicable"),
    };
    let opt_rat = |v: &Option<Rat>| match v {
        Some(x) => json!(format_rat(x)),
        None => json!("not applicable"),
    };
    json!({
        "kouchnirenko": opt_int(&b.kouchnirenko),
        "gamma_covolume": opt_rat(&b.gamma_covolume),
        "coarse": b.coarse.to_string(),
        "diag": opt_int(&b.diag),
        "box": opt_int(&b.box_bound),
        "planar": opt_int(&b.planar),
        "dual_kouchnirenko": opt_int(&b.dual_kouchnirenko),
        "dual_gamma_covolume": opt_rat(&b.dual_gamma_covolume),
        "dual_coarse": b.dual_coarse.to_string(),
        "dual_diag": opt_int(&b.dual_diag),
        "dual_planar": opt_int(&b.dual_planar),
        "conjectured": b.conjectured.to_string(),
        "gabrielov": b.gabrielov.to_string(),
    })
}

fn run_bounds(input: &SystemInput, ceiling: Option<u64>) -> Result<Report> {
    let system = &input.system;
    let gd = gale_data_from_input(input)?;
    let report = bounds_report(system, &gd)?;
    let mu = multiplicity_at_one(system, ceiling)?;
    let stairs = row_staircases(system);
    let cert = certificates(system, &stairs)?;
    let results = json!({
        "multiplicity": mult_value(mu),
        "bounds": bounds_value(&report),
    });
    Ok(Report::new(
        "bounds",
        io::system_input_value(input),
        results,
        cert,
    ))
}

fn run_witness(n: usize, m: u64, ceiling: Option<u64>) -> Result<Report> {
    let w = witness_system(n, m)?;
    let mu = multiplicity_at_one(&w.system, ceiling)?;
    let conjectured = crate::rat::binomial((n as u64) + m, n as u64);
    let mut predictions_match = true;
    for k in 1..=n as u64 {
        let ev = VanishingSumEvaluator::for_system_row(
            &w.system.coeffs,
            &w.system.config,
            k as usize - 1,
        );
        let computed = staircase_lenient(&ev, None);
        let predicted = witness_diagram_prediction(n, m, k);
        if computed.minimal_points != predicted.minimal_points {
            predictions_match = false;
        }
    }
    let results = json!({
        "n": n,
        "m": m,
        "C": io::int_matrix_value(&w.c_matrix),
        "points": io::points_value(w.system.config.points()),
        "polynomials": w.polys.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "multiplicity": mult_value(mu),
        "conjectured": conjectured.to_string(),
        "matches_conjecture": mu == Multiplicity::Finite(
            crate::rat::to_i64(&conjectured).unwrap() as u64
        ),
        "staircases_match_prediction": predictions_match,
    });
    Ok(Report::new("witness", json!({"n": n, "m": m}), results, Value::Null))
}

fn run_cyclic(d: &[i64], n: Option<usize>) -> Result<Report> {
    match n {
        Some(n) => {
            let config = families::cyclic_config_lattice(d, n)?;
            let rats: Vec<Rat> = d.iter().map(|&v| rat(v)).collect();
            let verified = if config.codim() == 1 {
                json!(families::verify_cyclic(&config, &rats)?)
            } else {
                json!("not applicable (codimension != 1)")
            };
            let results = json!({
                "points": io::points_value(config.points()),
                "verified_with_own_parameters": verified,
            });
            Ok(Report::new("cyclic", json!({"d": d, "n": n}), results, Value::Null))
        }
        None => {
            let (system, mu) = max_mult_circuit_system(d)?;
            let results = json!({
                "n": system.config.dim(),
                "points": io::points_value(system.config.points()),
                "C": io::rat_matrix_value(&system.coeffs),
                "multiplicity": mu,
                "sharp": mu == system.config.dim() as u64 + 1,
            });
            Ok(Report::new("cyclic", json!({"d": d}), results, Value::Null))
        }
    }
}

fn run_hyper(n: u64, m: u64) -> Result<Report> {
    let hb = hypersurface_bounds(n, m);
    let results = json!({
        "sigma": hb.sigma,
        "b": hb.b,
        "mu0_bracket": [hb.mu0_bracket.0, hb.mu0_bracket.1],
    });
    Ok(Report::new("hyper", json!({"n": n, "m": m}), results, Value::Null))
}

// ---------------------------------------------------------------------------
// reproduction targets

pub const REPRODUCE_TARGETS: [&str; 6] = [
    "triangle",
    "walkthrough",
    "planar-grid",
    "table1",
    "high-multiplicity",
    "witness-grid",
];

pub fn reproduce(target: &str) -> Result<String> {
    match target {
        "triangle" => reproduce_triangle(),
        "walkthrough" => reproduce_walkthrough(),
        "planar-grid" => reproduce_planar_grid(),
        "table1" => reproduce_table1(),
        "high-multiplicity" => reproduce_high_multiplicity(),
        "witness-grid" => reproduce_witness_grid(),
        "all" => {
            let mut out = String::new();
            for t in REPRODUCE_TARGETS {
                out.push_str(&format!("=== {t} ===\n"));
                out.push_str(&reproduce(t)?);
            }
            Ok(out)
        }
        other => Err(Error::InvalidInput(format!(
            "unknown reproduction target {other:?}"
        ))),
    }
}

fn reproduce_triangle() -> Result<String> {
    let tri = ConvenientPolytope::from_lattice(2, &[vec![3, 0], vec![1, 1], vec![0, 3]])?;
    let cv = covolume_single(&tri);
    Ok(format!(
        "corner covolume of the triangle (3,0) (1,1) (0,3)\ncovolume: {}\n",
        format_rat(&cv)
    ))
}

fn reproduce_walkthrough() -> Result<String> {
    let mut out = String::new();
    let (system, gd) = cube_example()?;
    out.push_str("cubic walkthrough: one equation, support {0,1,2,3}, coefficients (-1,3,-3,1)\n");
    let fmt_int_cols = |m: &IntMatrix| -> String {
        (0..m.cols())
            .map(|c| {
                let col: Vec<String> = (0..m.rows()).map(|r| m.at(r, c).to_string()).collect();
                format!("({})", col.join(","))
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    out.push_str(&format!("B columns: {}\n", fmt_int_cols(&gd.b)));
    let fmt_rat_rows = |m: &crate::matrix::RatMatrix| -> String {
        (0..m.rows())
            .map(|r| {
                let row: Vec<String> = m.row(r).iter().map(format_rat).collect();
                format!("({})", row.join(","))
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    out.push_str(&format!("D rows: {}\n", fmt_rat_rows(&gd.d)));
    let gs = gale_system(&gd);
    out.push_str(&format!("g1 = {}\n", gs.polys[0]));
    out.push_str(&format!("g2 = {}\n", gs.polys[1]));
    let mu_orig = multiplicity_at_one(&system, None)?;
    let ps = PolySystem::new(2, gs.polys.clone())?;
    let mu_gale = multiplicity_at_origin(&ps, None)?;
    out.push_str(&format!(
        "multiplicity at the all-ones point: {:?}\n",
        mu_orig.finite().unwrap()
    ));
    out.push_str(&format!(
        "multiplicity of the Gale system at the origin: {:?}\n",
        mu_gale.finite().unwrap()
    ));
    let report = nondegeneracy_check(&ps)?;
    out.push_str(&format!(
        "first dual pair: convenient = {}, certificate = {}\n",
        gale_is_convenient(&gd)?,
        match report.overall {
            FaceStatus::Degenerate => "degenerate",
            FaceStatus::NonDegenerate => "non-degenerate",
            FaceStatus::Unknown => "unknown",
        }
    ));
    for (t, s) in report.faces.iter().filter(|(t, _)| t.subset.len() == 2) {
        out.push_str(&format!(
            "  edge system [{}] -> {}\n",
            t.polys
                .iter()
                .map(MultiPoly::to_string)
                .collect::<Vec<_>>()
                .join(" ; "),
            match s {
                FaceStatus::Degenerate => "degenerate",
                FaceStatus::NonDegenerate => "non-degenerate",
                FaceStatus::Unknown => "unknown",
            }
        ));
    }

    // the alternative dual pair: D with second row (1,1,0) -> (1,1,0),
    // third (1,2,1), fourth (1,3,3); B with columns (1,-2,1,0), (-1,3,-3,1)
    let b2 = IntMatrix::from_i64_rows(&[vec![1, -1], vec![-2, 3], vec![1, -3], vec![0, 1]]);
    let d2 = crate::matrix::RatMatrix::from_i64_rows(&[
        vec![1, 0, 0],
        vec![1, 1, 0],
        vec![1, 2, 1],
        vec![1, 3, 3],
    ]);
    let gd2 = GaleData::with_duals(&system, b2, d2)?;
    out.push_str("alternative dual pair:\n");
    out.push_str(&format!("B columns: {}\n", fmt_int_cols(&gd2.b)));
    out.push_str(&format!("D rows: {}\n", fmt_rat_rows(&gd2.d)));
    let gs2 = gale_system(&gd2);
    out.push_str(&format!("g1 = {}\n", gs2.polys[0]));
    out.push_str(&format!("g2 = {}\n", gs2.polys[1]));
    let ps2 = PolySystem::new(2, gs2.polys.clone())?;
    let report2 = nondegeneracy_check(&ps2)?;
    out.push_str(&format!(
        "certificate: {}\n",
        match report2.overall {
            FaceStatus::Degenerate => "degenerate",
            FaceStatus::NonDegenerate => "non-degenerate",
            FaceStatus::Unknown => "unknown",
        }
    ));
    let stairs: Vec<Staircase> = (0..2).map(|k| gd2.dual_staircase(k)).collect();
    for (k, st) in stairs.iter().enumerate() {
        out.push_str(&format!(
            "diagram of g{}: minimal points {:?}\n",
            k + 1,
            st.minimal_points
        ));
    }
    let polys: Result<Vec<ConvenientPolytope>> = stairs
        .iter()
        .map(ConvenientPolytope::from_staircase)
        .collect();
    let cv = mixed_covolume(&polys?)?;
    out.push_str(&format!("mixed covolume of the diagrams: {}\n", format_rat(&cv)));
    let mu_gale2 = multiplicity_at_origin(&ps2, None)?;
    out.push_str(&format!(
        "multiplicity of the alternative Gale system at the origin: {:?}\n",
        mu_gale2.finite().unwrap()
    ));
    Ok(out)
}

fn reproduce_planar_grid() -> Result<String> {
    let mut out = String::new();
    out.push_str("planar witness systems: multiplicity vs binomial(m+2, 2)\n");
    for m in 1..=4u64 {
        let w = witness_system(2, m)?;
        let mu = multiplicity_at_one(&w.system, None)?;
        let expected = crate::rat::binomial(m + 2, 2);
        let mut stairs_ok = true;
        for k in 1..=2u64 {
            let ev = VanishingSumEvaluator::for_system_row(
                &w.system.coeffs,
                &w.system.config,
                k as usize - 1,
            );
            let computed = staircase_lenient(&ev, None);
            let predicted = witness_diagram_prediction(2, m, k);
            if computed.minimal_points != predicted.minimal_points
                || computed.axis_intercepts != predicted.axis_intercepts
            {
                stairs_ok = false;
            }
        }
        out.push_str(&format!(
            "m={m}: multiplicity {} expected {} staircases-match {}\n",
            match mu {
                Multiplicity::Finite(v) => v.to_string(),
                Multiplicity::Infinite => "infinite-or-unknown".into(),
            },
            expected,
            if stairs_ok { "yes" } else { "no" }
        ));
    }
    Ok(out)
}

fn reproduce_table1() -> Result<String> {
    let mut out = String::new();
    out.push_str("m | sigma(2,m) | b(2,m)\n");
    for (m, sigma, b) in planar_bounds_table(10) {
        out.push_str(&format!("{m} | {sigma} | {b}\n"));
    }
    Ok(out)
}

fn reproduce_high_multiplicity() -> Result<String> {
    let mut points = Vec::new();
    let mut coeffs = Vec::new();
    for j in 0..5i64 {
        points.push(vec![1, j, 0]);
        let b = crate::rat::binomial(4, j as u64);
        let s = if j % 2 == 0 { 1 } else { -1 };
        coeffs.push(Rat::from_integer(crate::rat::Int::from(s) * b));
    }
    for j in 0..5i64 {
        points.push(vec![0, 0, j]);
        let b = crate::rat::binomial(4, j as u64);
        let s = if j % 2 == 0 { 1 } else { -1 };
        coeffs.push(Rat::from_integer(crate::rat::Int::from(s) * b));
    }
    let config = crate::support::SupportConfig::new(points)?;
    let mu = crate::oracle::hypersurface_multiplicity(
        &config,
        &coeffs,
        &vec![rat(1), rat(1), rat(1)],
    )?;
    let hb = hypersurface_bounds(3, 6);
    Ok(format!(
        "f = x1 (1-x2)^4 + (1-x3)^4\nuniform support: {}\nmultiplicity at the all-ones point: {mu}\nb(3,6) = {}\nuniform bound exceeded: {}\n",
        config.is_uniform(),
        hb.b,
        mu > hb.b
    ))
}

fn reproduce_witness_grid() -> Result<String> {
    let mut out = String::new();
    out.push_str("n m multiplicity binomial(n+m,n) equal\n");
    let grid: Vec<(usize, u64)> = vec![
        (1, 1),
        (1, 2),
        (1, 3),
        (1, 4),
        (1, 5),
        (2, 1),
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 1),
        (3, 2),
    ];
    for (n, m) in grid {
        let w = witness_system(n, m)?;
        let mu = multiplicity_at_one(&w.system, None)?;
        let expected = crate::rat::binomial(n as u64 + m, n as u64);
        let mu_text = match mu {
            Multiplicity::Finite(v) => v.to_string(),
            Multiplicity::Infinite => "infinite-or-unknown".into(),
        };
        let equal = mu_text == expected.to_string();
        out.push_str(&format!(
            "{n} {m} {mu_text} {expected} {}\n",
            if equal { "yes" } else { "no" }
        ));
    }
    Ok(out)
}
