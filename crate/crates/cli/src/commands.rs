use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crepant_core::algebra::{builtins, frame, relations_from_potential, Quiver};
use crepant_core::compare::{compare, CompareRequest, VariableMap};
use crepant_core::crystal::{ncdt_series, CrystalFamily, SignConvention};
use crepant_core::geometry::{
    builtin_geometry, verify_all, verify_contraction, verify_equivariance, verify_transition, VerificationReport,
};
use crepant_core::mckay::{character_decomposition_table, mckay_quiver, mckay_quiver_with_potential, AbelianAction};
use crepant_core::representations::{
    cartan_matrix, is_semistable, positive_roots, walls_between, CartanMatrix, MonomialRepresentation, Root,
    RootKind, StabilityConvention, StabilityParameter,
};
use crepant_core::series::FormalSeries;
use crepant_core::toric::{
    collapse_kahler, dual_web, flop_graph, gv_extract, gw_partition_function_with, is_connected, orbifold_polygon,
    unit_triangulations, EvaluationOrder, LatticePolygon, Point, Triangle, UnitTriangulation, VertexCache,
};
use serde_json::json;
use thiserror::Error;

use crate::{CartanArgs, Cli, Command, Convention, GvSource, Identity, Order, PolygonArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] crepant_core::Error),
    #[error("cannot read `{path}`: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Input(String),
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn pretty_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serialises");
    s.push('\n');
    s
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// Builtin name, action descriptor or quiver JSON file.
fn load_quiver(spec: &str) -> Result<Quiver> {
    if let Some(q) = builtins::by_name(spec) {
        return Ok(q);
    }
    if let Ok(act) = spec.parse::<AbelianAction>() {
        return Ok(mckay_quiver_with_potential(&act));
    }
    let path = Path::new(spec);
    if path.exists() {
        return Ok(Quiver::from_json(&read(path)?)?);
    }
    Err(CliError::Input(format!("`{spec}` is neither a builtin quiver, an action descriptor nor a file")))
}

fn parse_sign(text: &str, colours: usize) -> Result<SignConvention> {
    match text {
        "unsigned" => Ok(SignConvention::Unsigned),
        "total" => Ok(SignConvention::total_dimension(colours)),
        other => {
            let list = other
                .strip_prefix("linear:")
                .ok_or_else(|| CliError::Input(format!("unknown sign convention `{other}`")))?;
            let c = list
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| CliError::Input(format!("bad sign coefficient `{x}`"))))
                .collect::<Result<Vec<_>>>()?;
            if c.len() != colours {
                return Err(CliError::Input(format!("sign needs {colours} coefficients, got {}", c.len())));
            }
            Ok(SignConvention::Linear(c))
        }
    }
}

fn parse_pair(text: &str) -> Result<(i64, i64)> {
    let bad = || CliError::Input(format!("expected `a,b`, got `{text}`"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn load_polygon(p: &PolygonArgs) -> Result<LatticePolygon> {
    if p.square {
        return Ok(LatticePolygon::unit_square());
    }
    if p.local_p2 {
        return Ok(LatticePolygon::local_p2());
    }
    if let Some(n) = p.triangle {
        return Ok(LatticePolygon::dilated_triangle(n)?);
    }
    if let Some(t) = &p.trapezoid {
        let (a, b) = parse_pair(t)?;
        return Ok(LatticePolygon::trapezoid(a, b)?);
    }
    if let Some(v) = &p.vertices {
        let points = v.split(';').map(|s| parse_pair(s).map(|(x, y)| [x, y])).collect::<Result<Vec<Point>>>()?;
        return Ok(LatticePolygon::hull(&points)?);
    }
    if let Some(path) = &p.polygon {
        return Ok(LatticePolygon::from_json(&read(path)?)?);
    }
    if let Some(a) = &p.orbifold {
        return Ok(orbifold_polygon(&a.parse()?)?);
    }
    Err(CliError::Input("no polygon given".into()))
}

fn pick(ts: Vec<UnitTriangulation>, index: usize) -> Result<UnitTriangulation> {
    let n = ts.len();
    ts.into_iter()
        .nth(index)
        .ok_or_else(|| CliError::Input(format!("triangulation index {index} out of range ({n} available)")))
}

fn load_cartan(c: &CartanArgs) -> Result<CartanMatrix> {
    match (&c.cartan, &c.quiver) {
        (Some(text), _) => Ok(CartanMatrix::parse(text)?),
        (None, Some(q)) => Ok(cartan_matrix(&load_quiver(q)?)),
        (None, None) => Err(CliError::Input("give --cartan or --quiver".into())),
    }
}

fn vector(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn triangle(t: &Triangle) -> String {
    let pts: Vec<String> = t.iter().map(|p| vector(p)).collect();
    format!("[{}]", pts.join(" "))
}

fn kind(k: RootKind) -> &'static str {
    match k {
        RootKind::Real => "real",
        RootKind::Imaginary => "imaginary",
    }
}

fn root_lines(out: &mut String, roots: &[Root]) {
    for r in roots {
        let _ = writeln!(out, "{}\t{}\t{}", vector(&r.vector), kind(r.kind), r.norm);
    }
}

fn series_json(s: &FormalSeries) -> serde_json::Value {
    let terms: Vec<serde_json::Value> =
        s.terms().into_iter().map(|(e, c)| json!({"exponents": e, "coeff": c.to_string()})).collect();
    json!({
        "vars": s.vars(),
        "weights": s.weights(),
        "order": s.order(),
        "below": s.below(),
        "terms": terms,
    })
}

fn reports_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = if r.holds() { "holds" } else { "FAILS" };
        let _ = writeln!(out, "{status}\t{}\t{} trials\t{}", r.geometry, r.trials, r.identity);
        for c in &r.counterexamples {
            let point: Vec<String> = c.point.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "\tresidual {} at {}", c.residual, point.join(" "));
        }
    }
    out
}

pub fn run(cli: &Cli) -> Result<String> {
    let json = cli.json;
    match &cli.command {
        Command::Mckay { action, potential, table } => {
            let act: AbelianAction = action.parse()?;
            if *table {
                let rows = character_decomposition_table(&act);
                if json {
                    return Ok(pretty_json(&rows));
                }
                let mut out = String::from("# source\tcoordinate\ttarget\n");
                for r in rows {
                    let _ = writeln!(out, "{}\tz{}\t{}", r.source, r.coordinate, r.target);
                }
                return Ok(out);
            }
            let q = if *potential { mckay_quiver_with_potential(&act) } else { mckay_quiver(&act) };
            Ok(with_newline(q.to_json()))
        }
        Command::Relations { quiver } => {
            let q = load_quiver(quiver)?;
            let rels = relations_from_potential(&q, q.potential());
            if json {
                let list: Vec<serde_json::Value> =
                    rels.iter().map(|r| json!({"arrow": r.arrow, "relation": r.element.to_string()})).collect();
                return Ok(pretty_json(&json!({"count": rels.len(), "relations": list})));
            }
            let mut out = format!("# {} relations\n", rels.len());
            for r in &rels {
                let _ = writeln!(out, "d{}\t{}", r.arrow, r.element);
            }
            Ok(out)
        }
        Command::Frame { quiver, at } => {
            let f = frame(&load_quiver(quiver)?, at)?;
            Ok(with_newline(f.quiver().to_json()))
        }
        Command::Stability { quiver, rep, theta, convention } => {
            let q = load_quiver(quiver)?;
            let rep = MonomialRepresentation::from_json(&read(rep)?)?;
            let theta = StabilityParameter::parse(theta)?;
            let convention = match convention {
                Convention::SubobjectsNegative => StabilityConvention::SubobjectsNegative,
                Convention::SubobjectsPositive => StabilityConvention::SubobjectsPositive,
            };
            let report = is_semistable(&q, &rep, &theta, convention)?;
            if json {
                return Ok(pretty_json(&report));
            }
            let mut out = format!("{}\n", report.classification.as_str());
            if let Some(s) = &report.violating_subset {
                let idx: Vec<String> = s.iter().map(|i| i.to_string()).collect();
                let _ = writeln!(out, "subset\t{}", idx.join(","));
            }
            Ok(out)
        }
        Command::Roots { cartan, height } => {
            let roots = positive_roots(&load_cartan(cartan)?, *height)?;
            if json {
                return Ok(pretty_json(&roots));
            }
            let mut out = format!("# {} roots up to height {height}\n# root\tkind\tnorm\n", roots.len());
            root_lines(&mut out, &roots);
            Ok(out)
        }
        Command::Walls { cartan, height, from, to } => {
            let roots = positive_roots(&load_cartan(cartan)?, *height)?;
            let report = walls_between(&StabilityParameter::parse(from)?, &StabilityParameter::parse(to)?, &roots)?;
            if json {
                return Ok(pretty_json(&report));
            }
            let mut out = String::new();
            for (title, list) in [
                ("separating", &report.separating),
                ("on wall of first", &report.on_wall_first),
                ("on wall of second", &report.on_wall_second),
            ] {
                let _ = writeln!(out, "# {title}: {}", list.len());
                root_lines(&mut out, list);
            }
            Ok(out)
        }
        Command::Ncdt { family, order, sign, pretty } => {
            let fam = CrystalFamily::parse(family)?;
            let sign = parse_sign(sign, fam.colours())?;
            let s = ncdt_series(&fam, *order, &sign);
            if json {
                return Ok(pretty_json(&json!({
                    "family": fam.to_string(),
                    "sign_convention": sign.describe(),
                    "series": series_json(&s),
                })));
            }
            let mut out = s.to_text();
            if *pretty {
                let _ = writeln!(out, "# {}", s.pretty());
            }
            Ok(out)
        }
        Command::Triangulate { polygon } => {
            let ts = unit_triangulations(&load_polygon(polygon)?);
            if json {
                return Ok(pretty_json(&ts));
            }
            let mut out = format!("# {} triangulations\n", ts.len());
            for (i, t) in ts.iter().enumerate() {
                let tri: Vec<String> = t.triangles().iter().map(triangle).collect();
                let _ = writeln!(out, "{i}\t{}", tri.join(" "));
            }
            Ok(out)
        }
        Command::Flops { polygon } => {
            let ts = unit_triangulations(&load_polygon(polygon)?);
            let edges = flop_graph(&ts)?;
            let connected = is_connected(ts.len(), &edges);
            if json {
                return Ok(pretty_json(&json!({
                    "triangulations": ts.len(),
                    "edges": edges,
                    "connected": connected,
                })));
            }
            let mut out = format!(
                "# {} triangulations, {} flops, {}\n",
                ts.len(),
                edges.len(),
                if connected { "connected" } else { "disconnected" }
            );
            for (a, b) in edges {
                let _ = writeln!(out, "{a}\t{b}");
            }
            Ok(out)
        }
        Command::Web { polygon, index } => {
            let web = dual_web(&pick(unit_triangulations(&load_polygon(polygon)?), *index)?);
            web.validate()?;
            if json {
                return Ok(with_newline(web.to_json()));
            }
            let mut out = format!("# {} nodes, {} edges, {} legs\n", web.nodes.len(), web.edges.len(), web.legs.len());
            for (i, n) in web.nodes.iter().enumerate() {
                let dirs: Vec<String> = n.directions.iter().map(|d| vector(d)).collect();
                let _ = writeln!(out, "node {i}\t{}\t{}", triangle(&n.triangle), dirs.join(" "));
            }
            for e in &web.edges {
                let _ = writeln!(
                    out,
                    "edge {}\t{}.{} - {}.{}\t{}\tframing {}",
                    e.variable,
                    e.ends[0].0,
                    e.ends[0].1,
                    e.ends[1].0,
                    e.ends[1].1,
                    vector(&e.direction),
                    e.framing
                );
            }
            for l in &web.legs {
                let _ = writeln!(out, "leg\t{}.{}\t{}", l.node, l.slot, vector(&l.direction));
            }
            Ok(out)
        }
        Command::Gw { polygon, index, degree, t_precision, evaluation } => {
            let web = dual_web(&pick(unit_triangulations(&load_polygon(polygon)?), *index)?);
            let order = match evaluation {
                Order::Cached => EvaluationOrder::Cached,
                Order::Rotated => EvaluationOrder::Rotated,
            };
            let z = gw_partition_function_with(&web, *degree, *t_precision, &VertexCache::new(), order)?;
            if json {
                return Ok(pretty_json(&series_json(&z)));
            }
            Ok(z.to_text())
        }
        Command::Gv { source, index, degree, t_precision } => {
            let z = gv_input(source, *index, *degree, *t_precision)?;
            let table = gv_extract(&collapse_kahler(&z)?)?;
            if json {
                return Ok(with_newline(table.to_json()));
            }
            Ok(table.to_text())
        }
        Command::VerifyGeometry { geometry, trials, identity, overrides } => {
            let mut g = builtin_geometry(geometry)?;
            for o in overrides {
                let (target, text) =
                    o.split_once('=').ok_or_else(|| CliError::Input(format!("override `{o}` needs TARGET=EXPR")))?;
                g.set(target.trim(), text.trim())?;
            }
            let seed = cli.seed;
            let reports = match identity {
                Identity::All => verify_all(&g, *trials, seed)?,
                Identity::Transition => vec![verify_transition(&g, *trials, seed)?],
                Identity::Contraction => verify_contraction(&g, *trials, seed)?,
                Identity::Equivariance => vec![verify_equivariance(&g, *trials, seed)?],
            };
            if json {
                return Ok(pretty_json(&reports));
            }
            Ok(reports_text(&reports))
        }
        Command::Compare { family, truncation, theta, variable_map, sign, t_precision, cartan, radius } => {
            let fam = CrystalFamily::parse(family)?;
            let mut req = CompareRequest::new(fam.clone(), *truncation, StabilityParameter::parse(theta)?);
            req.variable_map = VariableMap::parse(variable_map)?;
            req.sign = parse_sign(sign, fam.colours())?;
            req.t_precision = *t_precision;
            req.cartan = cartan.as_deref().map(CartanMatrix::parse).transpose()?;
            req.radius = *radius;
            let sheet = compare(&req)?;
            Ok(if json { with_newline(sheet.to_json()) } else { sheet.to_text() })
        }
    }
}

fn gv_input(source: &GvSource, index: usize, degree: u32, t_precision: i64) -> Result<FormalSeries> {
    match (&source.input, &source.polygon) {
        (Some(path), _) => Ok(FormalSeries::from_text(&read(path)?)?),
        (None, Some(p)) => {
            let web = dual_web(&pick(unit_triangulations(&load_polygon(p)?), index)?);
            Ok(gw_partition_function_with(&web, degree, t_precision, &VertexCache::new(), EvaluationOrder::Cached)?)
        }
        (None, None) => Err(CliError::Input("give a polygon or --input".into())),
    }
}
