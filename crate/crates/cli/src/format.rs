//! JSON documents read and written by the command line tool, and their
//! conversion to library values.

use basepoints::parse::{parse_bipoly, parse_element, parse_tower};
use basepoints::{
    BasepointTree, Basis, BasisSpec, Chart, Error, LinearSeries, NSClass, Node, Point, Poly,
    Result, Step, Tower,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionJson {
    pub name: String,
    pub minpoly: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepJson {
    pub point: [String; 2],
    pub chart: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeJson {
    pub sequence: Vec<StepJson>,
    pub point: [String; 2],
    pub mult: u32,
    pub children_t: Vec<NodeJson>,
    pub children_s: Vec<NodeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeJson {
    pub tower: Vec<ExtensionJson>,
    pub variables: [String; 2],
    pub nodes: Vec<NodeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub tower: Vec<ExtensionJson>,
    pub variables: [String; 2],
    pub series: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassJson {
    pub basis: String,
    pub coeffs: Vec<i64>,
}

fn default_variables() -> [String; 2] {
    ["u".to_string(), "v".to_string()]
}

/// A problem file: a series of polynomials over a declared tower.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemJson {
    #[serde(default = "default_variables")]
    pub variables: [String; 2],
    #[serde(default)]
    pub extensions: Vec<ExtensionJson>,
    pub series: Vec<String>,
    /// Free-form description of the affine chart; not interpreted.
    #[serde(default)]
    pub chart: Option<Value>,
    #[serde(default)]
    pub basis: Option<String>,
    /// Blowups for the `strict-transform` command.
    #[serde(default)]
    pub sequence: Vec<StepJson>,
}

/// A parsed problem file.
#[derive(Clone, Debug)]
pub struct Problem {
    pub tower: Tower,
    pub variables: [String; 2],
    pub series: Vec<Poly>,
    pub basis: Option<BasisSpec>,
    pub sequence: Vec<Step>,
}

/// Generator names the solver may invent are off limits for variables.
fn check_variables(vars: &[String; 2]) -> Result<()> {
    for v in vars {
        let generated = v == "i"
            || v.strip_prefix('a')
                .is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()));
        if generated || v == "t" {
            return Err(Error::InvalidInput(format!(
                "variable name {v} is reserved"
            )));
        }
    }
    Ok(())
}

fn names(vars: &[String; 2]) -> [&str; 2] {
    [vars[0].as_str(), vars[1].as_str()]
}

fn tower_from_json(ext: &[ExtensionJson]) -> Result<Tower> {
    parse_tower(ext.iter().map(|e| (e.name.as_str(), e.minpoly.as_str())))
}

pub fn tower_to_json(tower: &Tower) -> Vec<ExtensionJson> {
    (0..tower.len())
        .map(|j| ExtensionJson {
            name: tower.name(j).to_string(),
            minpoly: tower.minpoly(j).fmt_with("t"),
        })
        .collect()
}

fn chart_from_str(s: &str) -> Result<Chart> {
    match s {
        "t" => Ok(Chart::T),
        "s" => Ok(Chart::S),
        _ => Err(Error::InvalidInput(format!(
            "chart must be \"t\" or \"s\", got {s:?}"
        ))),
    }
}

fn point_from_json(p: &[String; 2], tower: &Tower) -> Result<Point> {
    Ok(Point::new(
        parse_element(&p[0], tower)?,
        parse_element(&p[1], tower)?,
    ))
}

fn point_to_json(p: &Point) -> [String; 2] {
    [p.u.to_string(), p.v.to_string()]
}

fn step_from_json(s: &StepJson, tower: &Tower) -> Result<Step> {
    Ok(Step {
        point: point_from_json(&s.point, tower)?,
        chart: chart_from_str(&s.chart)?,
    })
}

fn step_to_json(s: &Step) -> StepJson {
    StepJson {
        point: point_to_json(&s.point),
        chart: s.chart.label().to_string(),
    }
}

impl Problem {
    pub fn from_json(doc: &ProblemJson) -> Result<Problem> {
        check_variables(&doc.variables)?;
        let tower = tower_from_json(&doc.extensions)?;
        let series = doc
            .series
            .iter()
            .map(|s| parse_bipoly(s, names(&doc.variables), &tower))
            .collect::<Result<Vec<_>>>()?;
        if series.is_empty() {
            return Err(Error::InvalidInput("series is empty".into()));
        }
        let basis = doc.basis.as_deref().map(str::parse).transpose()?;
        let sequence = doc
            .sequence
            .iter()
            .map(|s| step_from_json(s, &tower))
            .collect::<Result<Vec<_>>>()?;
        Ok(Problem {
            tower,
            variables: doc.variables.clone(),
            series,
            basis,
            sequence,
        })
    }

    pub fn linear_series(&self) -> Result<LinearSeries> {
        LinearSeries::new(self.series.clone(), &self.tower)
    }

    /// The basis from the file, or else total degree large enough for
    /// every generator.
    pub fn basis_or_default(&self) -> BasisSpec {
        self.basis.unwrap_or_else(|| {
            BasisSpec::Degree(
                self.series
                    .iter()
                    .map(Poly::total_degree)
                    .max()
                    .unwrap_or(0),
            )
        })
    }
}

pub fn poly_to_string(p: &Poly, vars: &[String; 2]) -> String {
    p.fmt_with(names(vars))
}

pub fn series_to_json(polys: &[Poly], tower: &Tower, vars: &[String; 2]) -> SeriesJson {
    SeriesJson {
        tower: tower_to_json(tower),
        variables: vars.clone(),
        series: polys.iter().map(|p| poly_to_string(p, vars)).collect(),
    }
}

pub fn series_from_json(doc: &SeriesJson) -> Result<(Vec<Poly>, Tower)> {
    check_variables(&doc.variables)?;
    let tower = tower_from_json(&doc.tower)?;
    let polys = doc
        .series
        .iter()
        .map(|s| parse_bipoly(s, names(&doc.variables), &tower))
        .collect::<Result<Vec<_>>>()?;
    Ok((polys, tower))
}

fn node_to_json(n: &Node) -> NodeJson {
    NodeJson {
        sequence: n.sequence.iter().map(step_to_json).collect(),
        point: point_to_json(&n.point),
        mult: n.mult,
        children_t: n.children_t.iter().map(node_to_json).collect(),
        children_s: n.children_s.iter().map(node_to_json).collect(),
    }
}

pub fn tree_to_json(tree: &BasepointTree, vars: &[String; 2]) -> TreeJson {
    TreeJson {
        tower: tower_to_json(&tree.tower),
        variables: vars.clone(),
        nodes: tree.roots.iter().map(node_to_json).collect(),
    }
}

/// Reads nodes whose blowup sequence must be `prefix`.
fn nodes_from_json(nodes: &[NodeJson], prefix: &[Step], tower: &Tower) -> Result<Vec<Node>> {
    let mut out = Vec::with_capacity(nodes.len());
    for n in nodes {
        let sequence = n
            .sequence
            .iter()
            .map(|s| step_from_json(s, tower))
            .collect::<Result<Vec<_>>>()?;
        if sequence != prefix {
            return Err(Error::InvalidInput(format!(
                "node at ({}, {}) has a blowup sequence inconsistent with its parents",
                n.point[0], n.point[1]
            )));
        }
        if n.mult == 0 {
            return Err(Error::InvalidInput(
                "node multiplicities must be positive".into(),
            ));
        }
        let point = point_from_json(&n.point, tower)?;
        let child_prefix = |chart| {
            let mut s = sequence.clone();
            s.push(Step {
                point: point.clone(),
                chart,
            });
            s
        };
        let children_t = nodes_from_json(&n.children_t, &child_prefix(Chart::T), tower)?;
        let children_s = nodes_from_json(&n.children_s, &child_prefix(Chart::S), tower)?;
        out.push(Node {
            sequence,
            point,
            mult: n.mult,
            children_t,
            children_s,
        });
    }
    Ok(out)
}

pub fn tree_from_json(doc: &TreeJson) -> Result<BasepointTree> {
    check_variables(&doc.variables)?;
    let tower = tower_from_json(&doc.tower)?;
    let roots = nodes_from_json(&doc.nodes, &[], &tower)?;
    Ok(BasepointTree { roots, tower })
}

pub fn class_to_json(c: &NSClass) -> ClassJson {
    ClassJson {
        basis: c.basis().tag().to_string(),
        coeffs: c.coeffs().to_vec(),
    }
}

pub fn class_from_json(doc: &ClassJson) -> Result<NSClass> {
    let n = doc.coeffs.len();
    let basis = match doc.basis.as_str() {
        "type1" if n >= 1 => Basis::Type1(n - 1),
        "type2" if n >= 2 => Basis::Type2(n - 2),
        _ => {
            return Err(Error::InvalidInput(format!(
                "bad class: basis {:?} with {n} coefficients",
                doc.basis
            )))
        }
    };
    NSClass::new(basis, doc.coeffs.clone())
}

/// Pretty JSON with a trailing newline.
pub fn to_json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> [String; 2] {
        default_variables()
    }

    #[test]
    fn reserved_variable_names() {
        for bad in ["i", "a1", "a22", "t"] {
            assert!(
                check_variables(&[bad.to_string(), "v".to_string()]).is_err(),
                "{bad}"
            );
        }
        for ok in ["a", "ab", "x", "u1"] {
            assert!(
                check_variables(&[ok.to_string(), "v".to_string()]).is_ok(),
                "{ok}"
            );
        }
    }

    #[test]
    fn inconsistent_sequence_rejected() {
        let node = |sequence: Vec<StepJson>, children_t| NodeJson {
            sequence,
            point: ["0".into(), "0".into()],
            mult: 1,
            children_t,
            children_s: vec![],
        };
        let step = |c: &str| StepJson {
            point: ["0".into(), "0".into()],
            chart: c.into(),
        };
        let good = TreeJson {
            tower: vec![],
            variables: vars(),
            nodes: vec![node(vec![], vec![node(vec![step("t")], vec![])])],
        };
        assert_eq!(tree_from_json(&good).unwrap().len(), 2);
        let bad = TreeJson {
            tower: vec![],
            variables: vars(),
            nodes: vec![node(vec![], vec![node(vec![step("s")], vec![])])],
        };
        assert!(matches!(tree_from_json(&bad), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn class_round_trip() {
        let c = ClassJson {
            basis: "type2".into(),
            coeffs: vec![2, 2, -1, -1],
        };
        assert_eq!(class_to_json(&class_from_json(&c).unwrap()), c);
        assert!(class_from_json(&ClassJson {
            basis: "type2".into(),
            coeffs: vec![1]
        })
        .is_err());
        assert!(class_from_json(&ClassJson {
            basis: "type3".into(),
            coeffs: vec![1]
        })
        .is_err());
    }
}
