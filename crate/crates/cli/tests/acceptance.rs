//! Acceptance checks, one PASS/FAIL line each. Every comparison is exact:
//! field elements, integers and polynomial spans are compared as values,
//! so no numeric tolerance is involved anywhere.
//!
//! A check listed in `KNOWN_MISMATCHES` is expected to fail; the run only
//! fails on an unexpected FAIL or on a listed check that starts passing.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use basepoints::baselocus::{get_basepoints, strict_transform, DEFAULT_MAX_DEPTH};
use basepoints::linseries::{
    adjoint_series, complete_series, kernel_basis, monomial_basis, series_through, set_basepoints,
};
use basepoints::nslattice::{
    adjoint_class, arithmetic_genus, class_of_series, degree_of_surface, h0_of_class, intersect,
    sectional_genus,
};
use basepoints::parse::{parse_bipoly, parse_element};
use basepoints::{
    BasepointTree, Basis, BasisSpec, Chart, Error, LinearSeries, NSClass, Point, Poly, Step, Tower,
};
use basepoints_cli::format::{
    class_from_json, class_to_json, series_from_json, series_to_json, to_json_text, tower_to_json,
    tree_from_json, tree_to_json, ClassJson, Problem, ProblemJson, SeriesJson, TreeJson,
};
use basepoints_cli::{render_tree, run};

#[path = "../../core/tests/props/mod.rs"]
mod props;

type Check = Result<(), String>;

/// Identifier, title and body of one check.
type Entry = (String, String, Box<dyn Fn() -> Check>);

/// Checks whose reference value is known to be wrong, with the reason.
const KNOWN_MISMATCHES: &[(&str, &str)] = &[(
    "1c",
    "the reference S-chart transform of v^2 + u is uv + 1, but substituting (u, uv) gives \
     u^2 v^2 + u = u (u v^2 + 1), so the strict transform is u v^2 + 1 (checked by 1d)",
)];

/// Checks that pass but disagree with a published table, with the reason.
const NOTES: &[(&str, &str)] = &[(
    "5a",
    "a reference table lists 5 for h.k and both genera of the cubic scroll; the pinned values \
     follow from the intersection form and the genus formulas",
)];

fn dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join(name)
}

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn polys(srcs: &[&str], tower: &Tower) -> Vec<Poly> {
    srcs.iter()
        .map(|s| parse_bipoly(s, ["u", "v"], tower).unwrap_or_else(|e| panic!("{s}: {e}")))
        .collect()
}

fn problem(fixture: &str) -> Problem {
    let doc: ProblemJson = serde_json::from_str(&read(&dir("fixtures").join(fixture))).unwrap();
    Problem::from_json(&doc).unwrap()
}

fn fixture_tree(fixture: &str) -> BasepointTree {
    let doc: TreeJson = serde_json::from_str(&read(&dir("fixtures").join(fixture))).unwrap();
    tree_from_json(&doc).unwrap()
}

fn same<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn show(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn same_polys(what: &str, got: &[Poly], want: &[Poly]) -> Check {
    same(what, show(got), show(want))
}

fn same_span(what: &str, got: &LinearSeries, want: &[&str]) -> Check {
    let want =
        LinearSeries::new(polys(want, got.tower()), got.tower()).map_err(|e| e.to_string())?;
    if got.same_span(&want) {
        Ok(())
    } else {
        Err(format!(
            "{what}: span of {:?} differs from {:?}",
            show(got.gens()),
            show(want.gens())
        ))
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn running_example() -> (Vec<Poly>, Tower) {
    let q = Tower::rational();
    (polys(&["u^2 + v^2", "v^2 + u"], &q), q)
}

fn origin_step(chart: Chart) -> Vec<Step> {
    vec![Step {
        point: Point::origin(),
        chart,
    }]
}

fn c1_tree() -> Check {
    let (f, q) = running_example();
    let tree = get_basepoints(&f, &q).map_err(err)?;
    let tower: Vec<(String, String)> = tower_to_json(&tree.tower)
        .into_iter()
        .map(|e| (e.name, e.minpoly))
        .collect();
    same("tower", tower, vec![("i".into(), "t^2 + 1".into())])?;
    same(
        "tree",
        render_tree(&tree).as_str(),
        "-> <(), (0, 0), 1>\n    -> <(((0, 0), t)), (0, 0), 1>\n-> <(), (1, -i), 1>\n-> <(), (1, i), 1>\n",
    )?;
    same("node count", tree.len(), 4)
}

fn c1_transform(chart: Chart, want: &[&str]) -> Check {
    let (f, q) = running_example();
    let got = strict_transform(&f, &origin_step(chart)).map_err(err)?;
    same_polys("strict transform", &got, &polys(want, &q))
}

fn c2_matrix() -> Check {
    let (f, q) = running_example();
    let tree = get_basepoints(&f, &q).map_err(err)?;
    let t = &tree.tower;
    let g = monomial_basis(BasisSpec::Degree(2));
    same_polys(
        "monomials",
        g.gens(),
        &polys(&["u^2", "u*v", "u", "v^2", "v", "1"], t),
    )?;
    let m = set_basepoints(&tree, &g);
    let want: Vec<Vec<_>> = [
        ["0", "0", "0", "0", "0", "1"],
        ["0", "0", "0", "0", "1", "0"],
        ["1", "-i", "1", "-1", "-i", "1"],
        ["1", "i", "1", "-1", "i", "1"],
    ]
    .iter()
    .map(|r| r.iter().map(|s| parse_element(s, t).unwrap()).collect())
    .collect();
    same("matrix", &m.rows, &want)?;
    let kernel: Vec<Vec<String>> = kernel_basis(&m)
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let want: Vec<Vec<String>> = [[1, 0, 0, 1, 0, 0], [0, 0, 1, 1, 0, 0]]
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    same("canonical kernel", kernel, want)?;
    let s = series_through(&tree, &g).map_err(err)?;
    same_span("series", &s, &["u^2 + v^2", "u + v^2"])
}

fn c3_simple_point() -> Check {
    let q = Tower::rational();
    let f = polys(&["u^2", "u*v", "u", "v^2", "v"], &q);
    let tree = get_basepoints(&f, &q).map_err(err)?;
    same("tree", render_tree(&tree).as_str(), "-> <(), (0, 0), 1>\n")?;
    let got = strict_transform(&f, &origin_step(Chart::T)).map_err(err)?;
    same_polys(
        "strict transform",
        &got,
        &polys(&["u^2*v", "u*v", "u", "v", "1"], &q),
    )
}

fn c4_completion() -> Check {
    let q = Tower::rational();
    let f = LinearSeries::new(polys(&["u^2 - u*v", "u", "v^2", "v"], &q), &q).map_err(err)?;
    let c = complete_series(&f, BasisSpec::Degree(2)).map_err(err)?;
    same_span("completion", &c, &["u^2", "u*v", "u", "v^2", "v"])
}

fn c5_scroll() -> Check {
    let p = problem("cubic_scroll.json");
    let f = p.linear_series().map_err(err)?;
    let tree = get_basepoints(f.gens(), f.tower()).map_err(err)?;
    let ctx = class_of_series(&tree, BasisSpec::Degree(2));
    same(
        "h",
        ctx.h.clone(),
        NSClass::new(Basis::Type1(1), vec![2, -1]).map_err(err)?,
    )?;
    same("h^2", degree_of_surface(&ctx), 3)?;
    same("h.k", intersect(&ctx.h, &ctx.k).map_err(err)?, -5)?;
    same("sectional genus", sectional_genus(&ctx).map_err(err)?, 0)?;
    let h0 = h0_of_class(&ctx.h, &tree).map_err(err)?;
    same("h0", h0, 5)?;
    same(
        "arithmetic genus",
        arithmetic_genus(&ctx, h0 as i64).map_err(err)?,
        0,
    )
}

fn c5_quintic() -> Check {
    let p = problem("quintic.json");
    let f = p.linear_series().map_err(err)?;
    let tree = get_basepoints(f.gens(), f.tower()).map_err(err)?;
    same(
        "tree",
        render_tree(&tree).as_str(),
        "-> <(), (0, 0), 2>\n-> <(), (0, 1), 1>\n",
    )?;
    let ctx = class_of_series(&tree, BasisSpec::Degree(5));
    same(
        "adjoint class",
        adjoint_class(&ctx).to_string().as_str(),
        "2*e0 - e1",
    )?;
    let adj = adjoint_series(&f, 5).map_err(err)?;
    same_span("adjoint series", &adj, &["u^2", "u*v", "u", "v^2", "v"])
}

fn c6_sextic() -> Check {
    let tree = fixture_tree("sextic_tree.json");
    let t = &tree.tower;
    same("tower", tower_to_json(t).len(), 1)?;
    let points: Vec<String> = tree
        .nodes()
        .iter()
        .map(|n| format!("({}, {})", n.point.u, n.point.v))
        .collect();
    same(
        "points",
        points,
        vec!["(i, -i)".to_string(), "(-i, i)".to_string()],
    )?;

    let g9 = monomial_basis(BasisSpec::Bidegree(2, 2));
    same("bidegree (2, 2) monomials", g9.len(), 9)?;
    let s = series_through(&tree, &g9).map_err(err)?;
    same("dimension through both points", s.len(), 7)?;
    let sextic = problem("sextic.json");
    let components = sextic.linear_series().map_err(err)?;
    let comps: Vec<String> = show(components.gens());
    let refs: Vec<&str> = comps.iter().map(String::as_str).collect();
    same_span("components", &s, &refs)?;

    let g4 = monomial_basis(BasisSpec::Bidegree(1, 1));
    same_polys(
        "bidegree (1, 1) monomials",
        g4.gens(),
        &polys(&["1", "v", "u", "u*v"], t),
    )?;
    let conics = series_through(&tree, &g4).map_err(err)?;
    same("dimension of (1, 1) curves", conics.len(), 2)?;
    same_span("(1, 1) curves", &conics, &["1 - u*v", "u + v"])?;

    let c = NSClass::new(Basis::Type2(2), vec![1, 1, -1, -1]).map_err(err)?;
    same(
        "h0(l0 + l1 - eps1 - eps2)",
        h0_of_class(&c, &tree).map_err(err)?,
        2,
    )?;
    let ctx = class_of_series(&tree, BasisSpec::Bidegree(2, 2));
    same("h^2", degree_of_surface(&ctx), 6)
}

/// `h0(h)` computed from the constraint matrix against Riemann-Roch,
/// `(h^2 - h.k)/2 + 1`, on every problem fixture whose basepoints exist.
fn c7_riemann_roch() -> Check {
    let mut checked = 0;
    let mut paths: Vec<PathBuf> = fs::read_dir(dir("fixtures"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    for path in paths {
        let Ok(doc) = serde_json::from_str::<ProblemJson>(&read(&path)) else {
            continue;
        };
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let p = Problem::from_json(&doc).map_err(|e| format!("{name}: {e}"))?;
        let f = p.linear_series().map_err(|e| format!("{name}: {e}"))?;
        let tree = match get_basepoints(f.gens(), f.tower()) {
            Ok(t) => t,
            Err(Error::NonConstantGcd) => continue,
            Err(e) => return Err(format!("{name}: {e}")),
        };
        let ctx = class_of_series(&tree, p.basis_or_default());
        let h2 = intersect(&ctx.h, &ctx.h).map_err(err)?;
        let hk = intersect(&ctx.h, &ctx.k).map_err(err)?;
        let h0 = h0_of_class(&ctx.h, &tree).map_err(err)? as i64;
        same(&name, h0, (h2 - hk) / 2 + 1)?;
        checked += 1;
    }
    if checked < 8 {
        return Err(format!("only {checked} fixtures checked"));
    }
    Ok(())
}

fn c8_fixed_component() -> Check {
    let fixture = dir("fixtures").join("fixed_component.json");
    let out = run(["basepoints", "basepoints", fixture.to_str().unwrap()]);
    same("exit code", out.code, 3)?;
    same("stdout", out.stdout.as_str(), "")
}

fn c8_recursion_guard() -> Check {
    let tree = fixture_tree("deep_tree.json");
    match tree.check_depth(DEFAULT_MAX_DEPTH) {
        Err(Error::RecursionLimitExceeded(_)) => {}
        other => return Err(format!("depth check returned {other:?}")),
    }
    let fixture = dir("fixtures").join("deep_tree.json");
    let out = run([
        "basepoints",
        "series",
        fixture.to_str().unwrap(),
        "--basis",
        "deg:2",
    ]);
    same("exit code", out.code, 4)?;
    if !out.stderr.contains("recursion limit") {
        return Err(format!("unexpected message {:?}", out.stderr));
    }
    Ok(())
}

fn golden(suffix: &str) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = fs::read_dir(dir("golden"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.to_string_lossy().ends_with(suffix))
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                read(&p),
            )
        })
        .collect();
    out.sort();
    out
}

fn c8_round_trip() -> Check {
    let mut count = 0;
    for (name, text) in golden(".tree.json") {
        let doc: TreeJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let tree = tree_from_json(&doc).map_err(err)?;
        same(
            &name,
            to_json_text(&tree_to_json(&tree, &doc.variables)),
            text,
        )?;
        count += 1;
    }
    for suffix in [".complete.json", ".adjoint.json"] {
        for (name, text) in golden(suffix) {
            let doc: SeriesJson = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            let (polys, tower) = series_from_json(&doc).map_err(err)?;
            same(
                &name,
                to_json_text(&series_to_json(&polys, &tower, &doc.variables)),
                text,
            )?;
            count += 1;
        }
    }
    for (name, text) in golden(".invariants.json") {
        let doc: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        for key in ["h", "k", "adjoint_class"] {
            let Some(v) = doc.get(key).filter(|v| !v.is_null()) else {
                continue;
            };
            let class: ClassJson = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
            let once = to_json_text(&class);
            let back = to_json_text(&class_to_json(&class_from_json(&class).map_err(err)?));
            same(&format!("{name} {key}"), back, once)?;
            count += 1;
        }
    }
    if count < 10 {
        return Err(format!("only {count} documents checked"));
    }
    Ok(())
}

fn main() -> ExitCode {
    let mut checks: Vec<Entry> = vec![
        (
            "1a".into(),
            "basepoint tree of (u^2 + v^2, v^2 + u) over Q(i)".into(),
            Box::new(c1_tree),
        ),
        (
            "1b".into(),
            "T-chart transform at the origin is (u^2 v + v, v + u)".into(),
            Box::new(|| c1_transform(Chart::T, &["u^2*v + v", "v + u"])),
        ),
        (
            "1c".into(),
            "S-chart transform at the origin is (u + u v^2, u v + 1)".into(),
            Box::new(|| c1_transform(Chart::S, &["u + u*v^2", "u*v + 1"])),
        ),
        (
            "1d".into(),
            "S-chart transform at the origin is (u + u v^2, u v^2 + 1)".into(),
            Box::new(|| c1_transform(Chart::S, &["u + u*v^2", "u*v^2 + 1"])),
        ),
        (
            "2".into(),
            "constraint matrix, kernel and series through the tree".into(),
            Box::new(c2_matrix),
        ),
        (
            "3".into(),
            "simple basepoint of the cubic scroll and its transform".into(),
            Box::new(c3_simple_point),
        ),
        (
            "4".into(),
            "completion of (u^2 - u v, u, v^2, v) in degree 2".into(),
            Box::new(c4_completion),
        ),
        (
            "5a".into(),
            "cubic scroll: h^2 = 3, h.k = -5, genera 0, h0 = 5".into(),
            Box::new(c5_scroll),
        ),
        (
            "5b".into(),
            "quintic: basepoints, adjoint class 2e0 - e1, adjoint series".into(),
            Box::new(c5_quintic),
        ),
        (
            "6".into(),
            "sextic del Pezzo: dimensions 7 and 2, h0 = 2, h^2 = 6".into(),
            Box::new(c6_sextic),
        ),
    ];
    for (name, check) in props::SUITES {
        checks.push((
            "7".into(),
            format!("property {name} ({} cases)", props::CASES),
            Box::new(*check),
        ));
    }
    checks.push((
        "7".into(),
        "Riemann-Roch h0 on every problem fixture".into(),
        Box::new(c7_riemann_roch),
    ));
    checks.push((
        "8a".into(),
        "fixed component exits with code 3".into(),
        Box::new(c8_fixed_component),
    ));
    checks.push((
        "8b".into(),
        "depth guard rejects a 40-deep tree".into(),
        Box::new(c8_recursion_guard),
    ));
    checks.push((
        "8c".into(),
        "tree, series and class JSON round-trips byte for byte".into(),
        Box::new(c8_round_trip),
    ));

    println!("acceptance checks (all comparisons exact)");
    let mut unexpected = 0;
    for (id, title, check) in &checks {
        let known = KNOWN_MISMATCHES
            .iter()
            .find(|(k, _)| k == id)
            .map(|(_, why)| *why);
        match (check(), known) {
            (Ok(()), None) => {
                println!("PASS [{id}] {title}");
                if let Some((_, note)) = NOTES.iter().find(|(k, _)| k == id) {
                    println!("       note: {note}");
                }
            }
            (Err(e), Some(why)) => {
                println!("FAIL [{id}] {title}");
                println!("       {e}");
                println!("       known mismatch: {why}");
            }
            (Ok(()), Some(_)) => {
                println!(
                    "PASS [{id}] {title} (listed as a known mismatch; remove it from the list)"
                );
                unexpected += 1;
            }
            (Err(e), None) => {
                println!("FAIL [{id}] {title}");
                println!("       {e}");
                unexpected += 1;
            }
        }
    }
    if unexpected == 0 {
        println!("acceptance: no unexpected results");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} unexpected result(s)");
        ExitCode::FAILURE
    }
}
