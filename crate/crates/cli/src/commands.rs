//! One function per subcommand; each returns a JSON document and its text rendering.

use crate::table::{fields, Table};
use serde::Serialize;
use serde_json::{Map, Value};
use std::sync::Arc;
use superbbw_core::borel_moves::star_action;
use superbbw_core::characters::{euler_series, euler_window};
use superbbw_core::genericity;
use superbbw_core::osp_blocks::{KostantTable, LayerTable};
use superbbw_core::parse::{parse_borel, parse_root_list};
use superbbw_core::{
    parse_algebra, parse_weight, q, BbwSolver, BlockContext, BorelData, CohomologyReport, Error,
    FormalCharacter, Parity, ReciprocityContext, RootDatum, Target, VirtualG0Sum, WeightVector,
};

pub const SCHEMA_VERSION: u32 = 1;

/// A library error tagged with the argument that caused it.
#[derive(Debug)]
pub struct CliError {
    pub argument: Option<(&'static str, String)>,
    pub error: Error,
}

impl From<Error> for CliError {
    fn from(error: Error) -> Self {
        CliError {
            argument: None,
            error,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn at<T>(name: &'static str, input: &str, r: superbbw_core::Result<T>) -> CliResult<T> {
    r.map_err(|error| CliError {
        argument: Some((name, input.to_string())),
        error,
    })
}

pub struct Rendered {
    pub json: Value,
    pub text: String,
}

/// Wraps a serializable body as `{"schema": "superbbw.<kind>/<v>", ...}`.
pub fn document<T: Serialize>(kind: &str, body: &T) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), Value::String(schema(kind)));
    match serde_json::to_value(body).expect("reports serialize") {
        Value::Object(inner) => map.extend(inner),
        other => {
            map.insert("data".into(), other);
        }
    }
    Value::Object(map)
}

pub fn schema(kind: &str) -> String {
    format!("superbbw.{kind}/{SCHEMA_VERSION}")
}

struct Inputs {
    datum: Arc<RootDatum>,
    borel: BorelData,
}

fn inputs(algebra: &str, borel: &str) -> CliResult<Inputs> {
    let datum = at("algebra", algebra, parse_algebra(algebra))?;
    let borel = at("borel", borel, parse_borel(borel, &datum))?;
    Ok(Inputs { datum, borel })
}

fn weight(datum: &RootDatum, text: &str) -> CliResult<WeightVector> {
    at("weight", text, parse_weight(text, datum))
}

/// `L0(2d1) - 2*L0(e1)`, in descending weight order.
pub fn format_sum(sum: &VirtualG0Sum) -> String {
    let mut out = String::new();
    for (w, m) in sum.terms().iter().rev() {
        let (sign, abs) = if *m < 0 { ("-", -m) } else { ("+", *m) };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if abs != 1 {
            out.push_str(&format!("{abs}*"));
        }
        out.push_str(&format!("L0({w})"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Reduced word in 1-based simple indices, `e` for the identity.
fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        "e".into()
    } else {
        word.iter()
            .map(|j| format!("s{}", j + 1))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn format_list<T: std::fmt::Display>(items: &[T]) -> String {
    if items.is_empty() {
        "-".into()
    } else {
        items
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

// ---------------------------------------------------------------- roots

#[derive(Serialize)]
struct SimpleRow {
    root: WeightVector,
    parity: Parity,
    isotropic: bool,
}

#[derive(Serialize)]
struct RootsDoc {
    algebra: String,
    borel: String,
    type_one: bool,
    dim_even: usize,
    dim_odd: usize,
    cartan_dim: usize,
    even_positive: Vec<WeightVector>,
    odd_positive: Vec<WeightVector>,
    simple_roots: Vec<SimpleRow>,
    rho0: WeightVector,
    rho1: WeightVector,
    rho: WeightVector,
}

pub fn roots(algebra: &str, borel: &str) -> CliResult<Rendered> {
    let Inputs { datum, borel } = inputs(algebra, borel)?;
    let doc = RootsDoc {
        algebra: datum.family().to_string(),
        borel: borel.word().to_string(),
        type_one: datum.is_type_one(),
        dim_even: datum.dim_even(),
        dim_odd: datum.dim_odd(),
        cartan_dim: datum.cartan_dim(),
        even_positive: borel.even_positive().to_vec(),
        odd_positive: borel.odd_positive().to_vec(),
        simple_roots: borel
            .simple_roots()
            .iter()
            .map(|s| SimpleRow {
                root: s.root.clone(),
                parity: s.parity,
                isotropic: s.isotropic,
            })
            .collect(),
        rho0: borel.rho0().clone(),
        rho1: borel.rho1().clone(),
        rho: borel.rho().clone(),
    };
    let mut text = fields(&[
        ("algebra", doc.algebra.clone()),
        ("borel", doc.borel.clone()),
        (
            "type",
            if doc.type_one {
                "I".into()
            } else {
                "II".into()
            },
        ),
        ("dim g0|g1", format!("{}|{}", doc.dim_even, doc.dim_odd)),
        ("rho0", doc.rho0.to_string()),
        ("rho1", doc.rho1.to_string()),
        ("rho", doc.rho.to_string()),
    ]);
    let mut t = Table::new(&["root", "parity", "simple", "isotropic"]);
    for (r, p) in borel.positive_roots() {
        let simple = borel.is_simple(&r);
        let iso = p == Parity::Odd && datum.is_isotropic(&r);
        let parity = if p == Parity::Even { "even" } else { "odd" };
        t.row(vec![r.to_string(), parity.into(), yes(simple), yes(iso)]);
    }
    text.push('\n');
    text.push_str(&t.render());
    Ok(Rendered {
        json: document("roots", &doc),
        text,
    })
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

// ---------------------------------------------------------------- weyl

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    Dot,
    Circle,
}

#[derive(Serialize)]
struct OrbitRow {
    word: Vec<usize>,
    length: usize,
    image: WeightVector,
}

#[derive(Serialize)]
struct WeylDoc {
    algebra: String,
    order: usize,
    max_length: usize,
    length_distribution: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<WeightVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    action: Option<Action>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    orbit: Vec<OrbitRow>,
}

pub fn weyl(
    algebra: &str,
    borel: &str,
    lambda: Option<&str>,
    action: Action,
) -> CliResult<Rendered> {
    let Inputs { datum, borel } = inputs(algebra, borel)?;
    let solver = BbwSolver::new(borel)?;
    let group = solver.group();
    let dist: Vec<usize> = (0..=group.max_length())
        .map(|p| group.of_length(p).count())
        .collect();
    let lambda = lambda.map(|s| weight(&datum, s)).transpose()?;
    let orbit = match &lambda {
        None => Vec::new(),
        Some(l) => group
            .elements()
            .iter()
            .map(|w| OrbitRow {
                word: w.word.iter().map(|j| j + 1).collect(),
                length: w.length,
                image: match action {
                    Action::Dot => group.dot(w, l, solver.borel()),
                    Action::Circle => group.circle(w, l),
                },
            })
            .collect(),
    };
    let doc = WeylDoc {
        algebra: datum.family().to_string(),
        order: group.len(),
        max_length: group.max_length(),
        length_distribution: dist,
        action: lambda.as_ref().map(|_| action),
        weight: lambda,
        orbit,
    };
    let mut text = fields(&[
        ("algebra", doc.algebra.clone()),
        ("|W|", doc.order.to_string()),
        ("longest", doc.max_length.to_string()),
        (
            "lengths",
            doc.length_distribution
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" "),
        ),
    ]);
    if let Some(l) = &doc.weight {
        let name = if action == Action::Dot {
            "w.λ"
        } else {
            "w∘λ"
        };
        text.push_str(&format!("\norbit of {l}\n"));
        let mut t = Table::new(&["w", "l(w)", name]);
        for r in &doc.orbit {
            let zero_based: Vec<usize> = r.word.iter().map(|j| j - 1).collect();
            t.row(vec![
                format_word(&zero_based),
                r.length.to_string(),
                r.image.to_string(),
            ]);
        }
        text.push_str(&t.render());
    }
    Ok(Rendered {
        json: document("weyl", &doc),
        text,
    })
}

// ---------------------------------------------------------------- euler

#[derive(Serialize)]
struct SeriesDoc {
    depth: i64,
    terms: FormalCharacter,
}

#[derive(Serialize)]
struct EulerDoc {
    algebra: String,
    borel: String,
    weight: WeightVector,
    euler: VirtualG0Sum,
    #[serde(skip_serializing_if = "Option::is_none")]
    expanded: Option<FormalCharacter>,
    #[serde(skip_serializing_if = "Option::is_none")]
    series: Option<SeriesDoc>,
}

pub fn euler(
    algebra: &str,
    borel: &str,
    lambda: &str,
    expand: bool,
    window: Option<i64>,
) -> CliResult<Rendered> {
    let Inputs { datum, borel } = inputs(algebra, borel)?;
    let lambda = weight(&datum, lambda)?;
    let solver = BbwSolver::new(borel)?;
    let sum = solver.euler(&lambda)?;
    let expanded = if expand {
        Some(solver.even_characters().expand(&sum)?)
    } else {
        None
    };
    let series = window.map(|depth| {
        let win = euler_window(solver.group(), solver.borel(), &lambda, q(depth));
        SeriesDoc {
            depth,
            terms: euler_series(solver.group(), solver.borel(), &lambda, &win),
        }
    });
    let doc = EulerDoc {
        algebra: datum.family().to_string(),
        borel: solver.borel().word().to_string(),
        weight: lambda,
        euler: sum,
        expanded,
        series,
    };
    let mut text = fields(&[
        ("algebra", doc.algebra.clone()),
        ("borel", doc.borel.clone()),
        ("weight", doc.weight.to_string()),
        ("E", format_sum(&doc.euler)),
    ]);
    let mut t = Table::new(&["highest weight", "mult"]);
    for (w, m) in doc.euler.terms().iter().rev() {
        t.row(vec![w.to_string(), m.to_string()]);
    }
    text.push('\n');
    text.push_str(&t.render());
    if let Some(ch) = &doc.expanded {
        text.push_str("\nexpanded character\n");
        text.push_str(&character_table(ch));
    }
    if let Some(s) = &doc.series {
        text.push_str(&format!("\nseries truncated at depth {}\n", s.depth));
        text.push_str(&character_table(&s.terms));
    }
    Ok(Rendered {
        json: document("euler", &doc),
        text,
    })
}

fn character_table(ch: &FormalCharacter) -> String {
    let mut t = Table::new(&["weight", "mult"]);
    for (w, m) in ch.terms().iter().rev() {
        t.row(vec![w.to_string(), m.to_string()]);
    }
    t.render()
}

// ---------------------------------------------------------------- generic-check

#[derive(Serialize)]
struct GenericDoc {
    algebra: String,
    borel: String,
    weight: WeightVector,
    #[serde(flatten)]
    report: genericity::GenericityReport,
}

pub fn generic_check(algebra: &str, borel: &str, lambda: &str) -> CliResult<Rendered> {
    let Inputs { datum, borel } = inputs(algebra, borel)?;
    let lambda = weight(&datum, lambda)?;
    let solver = BbwSolver::new(borel)?;
    let r = genericity::report(solver.group(), solver.borel(), &lambda)?;
    let text = fields(&[
        ("algebra", datum.family().to_string()),
        ("borel", solver.borel().word().to_string()),
        ("weight", lambda.to_string()),
        ("typical", yes(r.typical)),
        ("atypicality degree", r.atypicality_degree.to_string()),
        ("Γ⁺-generic", yes(r.gamma_plus_generic)),
        ("Γ̃-generic", yes(r.gamma_tilde_generic)),
        ("generic", yes(r.generic)),
        (
            "relatively generic",
            r.relatively_generic
                .map(yes)
                .unwrap_or_else(|| "n/a (not Levi-dominant)".into()),
        ),
    ]);
    let doc = GenericDoc {
        algebra: datum.family().to_string(),
        borel: solver.borel().word().to_string(),
        weight: lambda,
        report: r,
    };
    Ok(Rendered {
        json: document("generic-check", &doc),
        text,
    })
}

// ---------------------------------------------------------------- star

/// Simple indices from `s1 s2`, `1,2`, `1 2` or `e`.
pub fn parse_weyl_word(text: &str, rank: usize) -> superbbw_core::Result<Vec<usize>> {
    let trimmed = text.trim();
    if trimmed == "e" || trimmed == "id" || trimmed.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for token in text.split(|c: char| c == ',' || c.is_whitespace()) {
        let start = offset;
        offset += token.chars().count() + 1;
        if token.is_empty() {
            continue;
        }
        let digits = token.strip_prefix('s').unwrap_or(token);
        let shift = token.len() - digits.len();
        let j: usize = digits.parse().map_err(|_| {
            Error::parse(
                start + shift,
                format!("expected a simple reflection index, found '{digits}'"),
            )
        })?;
        if j == 0 || j > rank {
            return Err(Error::parse(
                start + shift,
                format!("simple reflection index {j} out of range 1..{rank}"),
            ));
        }
        out.push(j - 1);
    }
    Ok(out)
}

#[derive(Serialize)]
struct StarRow {
    reflection: usize,
    root: WeightVector,
    path: Vec<WeightVector>,
    transported: WeightVector,
    reflected: WeightVector,
    result: WeightVector,
}

#[derive(Serialize)]
struct StarDoc {
    algebra: String,
    borel: String,
    weight: WeightVector,
    word: Vec<usize>,
    result: WeightVector,
    dot: WeightVector,
    steps: Vec<StarRow>,
}

pub fn star(algebra: &str, borel: &str, lambda: &str, word: &str) -> CliResult<Rendered> {
    let Inputs { datum, borel } = inputs(algebra, borel)?;
    let lambda = weight(&datum, lambda)?;
    let solver = BbwSolver::new(borel)?;
    let group = solver.group();
    let indices = at(
        "word",
        word,
        parse_weyl_word(word, datum.even_simple_roots().len()),
    )?;
    let w = group.from_word(&indices)?;
    let (result, steps) = star_action(group, solver.borel(), w, &lambda)?;
    let doc = StarDoc {
        algebra: datum.family().to_string(),
        borel: solver.borel().word().to_string(),
        dot: group.dot(w, &lambda, solver.borel()),
        weight: lambda,
        word: indices.iter().map(|j| j + 1).collect(),
        result,
        steps: steps
            .into_iter()
            .map(|s| StarRow {
                reflection: s.reflection + 1,
                root: s.root,
                path: s.path,
                transported: s.transported,
                reflected: s.reflected,
                result: s.result,
            })
            .collect(),
    };
    let mut text = fields(&[
        ("algebra", doc.algebra.clone()),
        ("borel", doc.borel.clone()),
        ("weight", doc.weight.to_string()),
        ("w", format_word(&indices)),
        ("w*λ", doc.result.to_string()),
        ("w.λ", doc.dot.to_string()),
    ]);
    let mut t = Table::new(&[
        "step",
        "root",
        "odd path",
        "transported",
        "reflected",
        "result",
    ]);
    for r in &doc.steps {
        t.row(vec![
            format!("s{}", r.reflection),
            r.root.to_string(),
            format_list(&r.path),
            r.transported.to_string(),
            r.reflected.to_string(),
            r.result.to_string(),
        ]);
    }
    if !t.is_empty() {
        text.push('\n');
        text.push_str(&t.render());
    }
    Ok(Rendered {
        json: document("star", &doc),
        text,
    })
}

// ---------------------------------------------------------------- bbw

pub fn bbw_report(
    algebra: &str,
    borel: &str,
    lambda: &str,
    levi: Option<&str>,
) -> CliResult<CohomologyReport> {
    let Inputs { datum, borel } = inputs(algebra, borel)?;
    let lambda = weight(&datum, lambda)?;
    let target = match levi {
        None => Target::Borel,
        Some(list) => Target::Parabolic(at("levi", list, parse_root_list(list, &datum))?),
    };
    let solver = BbwSolver::new(borel)?;
    Ok(solver.solve(&lambda, &target)?)
}

pub fn bbw(algebra: &str, borel: &str, lambda: &str, levi: Option<&str>) -> CliResult<Rendered> {
    let r = bbw_report(algebra, borel, lambda, levi)?;
    let text = render_bbw(&r);
    Ok(Rendered {
        json: document("bbw", &r),
        text,
    })
}

fn json_name<T: Serialize>(x: &T) -> String {
    match serde_json::to_value(x) {
        Ok(Value::String(s)) => s,
        _ => String::new(),
    }
}

fn render_bbw(r: &CohomologyReport) -> String {
    let mut pairs = vec![
        ("algebra", r.algebra.clone()),
        ("borel", r.borel.clone()),
        ("weight", r.weight.to_string()),
        ("status", json_name(&r.status)),
        ("method", json_name(&r.method)),
        ("degree cap", r.degree_cap.to_string()),
        ("E", format_sum(&r.euler)),
        (
            "euler check",
            r.euler_consistent
                .map(|b| if b { "pass" } else { "FAIL" }.to_string())
                .unwrap_or("n/a".into()),
        ),
    ];
    if let Some(levi) = &r.levi {
        pairs.insert(2, ("levi", format_list(levi)));
    }
    let mut text = fields(&pairs);
    let mut t = Table::new(&["k", "kind", "module", "top", "character"]);
    for d in &r.degrees {
        for c in &d.constituents {
            t.row(vec![
                d.k.to_string(),
                json_name(&c.kind),
                c.weight
                    .as_ref()
                    .map(|w| w.to_string())
                    .unwrap_or("-".into()),
                c.top.as_ref().map(|w| w.to_string()).unwrap_or("-".into()),
                c.character
                    .as_ref()
                    .map(format_sum)
                    .unwrap_or("unknown".into()),
            ]);
        }
    }
    text.push('\n');
    if t.is_empty() {
        text.push_str("all cohomology vanishes\n");
    } else {
        text.push_str(&t.render());
    }
    for reason in &r.reasons {
        text.push_str(&format!("reason: {reason}\n"));
    }
    for note in &r.notes {
        text.push_str(&format!("note: {note}\n"));
    }
    text
}

// ---------------------------------------------------------------- block

pub fn block(algebra: &str, lambda: &str, radius: i64, window: Option<i64>) -> CliResult<Rendered> {
    let datum = at("algebra", algebra, parse_algebra(algebra))?;
    let lambda = weight(&datum, lambda)?;
    let ctx = BlockContext::for_borel(BorelData::distinguished(&datum))?;
    let report = ctx.report(&lambda, radius, window)?;
    let chart = &report.chart;
    let mut text = fields(&[
        ("algebra", chart.algebra.clone()),
        ("weight", lambda.to_string()),
        ("quiver", chart.quiver_type.to_string()),
        ("radius", chart.radius.to_string()),
    ]);
    let mut t = Table::new(&["position", "weight", "atypical root", "(λ+ρ)_δ"]);
    for m in &chart.members {
        t.row(vec![
            m.index.to_string(),
            m.weight.to_string(),
            m.atypical_root.to_string(),
            m.key.to_string(),
        ]);
    }
    text.push_str("\nchart\n");
    text.push_str(&t.render());
    let mut t = Table::new(&["position", "simple module, g0 content"]);
    for (i, ch) in &report.simple_characters {
        t.row(vec![i.to_string(), format_sum(ch)]);
    }
    text.push_str("\nsimple modules\n");
    text.push_str(&t.render());
    text.push_str("\nKac module layers\n");
    text.push_str(&layer_table(&report.kac_layers));
    text.push_str("\nprojective cover layers\n");
    text.push_str(&layer_table(&report.projective_layers));
    text.push_str("\nKac module n-homology\n");
    text.push_str(&kostant_table(&report.kac_homology));
    text.push_str("\nprojective n-cohomology\n");
    text.push_str(&kostant_table(&report.projective_cohomology));
    Ok(Rendered {
        json: document("block", &report),
        text,
    })
}

fn layer_table(tables: &[LayerTable]) -> String {
    let mut t = Table::new(&["module", "layers (top first)"]);
    for l in tables {
        let layers: Vec<String> = l.layers.iter().map(|layer| format_list(layer)).collect();
        t.row(vec![l.module.to_string(), layers.join(" | ")]);
    }
    t.render()
}

fn kostant_table(tables: &[KostantTable]) -> String {
    let mut t = Table::new(&["module", "j", "weights"]);
    for k in tables {
        for r in &k.rows {
            t.row(vec![
                k.module.to_string(),
                r.j.to_string(),
                format_list(&r.weights),
            ]);
        }
    }
    t.render()
}

// ---------------------------------------------------------------- reciprocity

pub fn reciprocity(algebra: &str, borel: &str, lambda: &str) -> CliResult<Rendered> {
    let Inputs { datum, borel } = inputs(algebra, borel)?;
    let lambda = weight(&datum, lambda)?;
    let ctx = ReciprocityContext::new(borel)?;
    let r = ctx.verify(&lambda)?;
    let mut text = fields(&[
        ("algebra", r.algebra.clone()),
        ("borel", r.borel.clone()),
        ("weight", r.weight.to_string()),
        ("in P̃⁺", yes(r.tilde_dominant)),
        (
            "relatively generic",
            r.relatively_generic.map(yes).unwrap_or("n/a".into()),
        ),
        ("verdict", json_name(&r.verdict)),
    ]);
    for reason in &r.reasons {
        text.push_str(&format!("reason: {reason}\n"));
    }
    let mut t = Table::new(&["Λ'", "in P̃⁺", "a(Λ,Λ')", "[K:L]", "verdict"]);
    for row in &r.rows {
        t.row(vec![
            row.weight.to_string(),
            yes(row.tilde_dominant),
            row.coefficient.to_string(),
            row.kac_multiplicity
                .map(|m| m.to_string())
                .unwrap_or("?".into()),
            json_name(&row.verdict),
        ]);
    }
    if !t.is_empty() {
        text.push('\n');
        text.push_str(&t.render());
    }
    text.push('\n');
    text.push_str(&fields(&[
        ("ch P via E", format_sum(&r.projective_character)),
        (
            "ch P via Kac flag",
            r.kac_flag_character
                .as_ref()
                .map(format_sum)
                .unwrap_or("unknown".into()),
        ),
    ]));
    Ok(Rendered {
        json: document("reciprocity", &r),
        text,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_words() {
        assert_eq!(parse_weyl_word("e", 2).unwrap(), Vec::<usize>::new());
        assert_eq!(parse_weyl_word("s1 s2", 2).unwrap(), vec![0, 1]);
        assert_eq!(parse_weyl_word("2,1", 2).unwrap(), vec![1, 0]);
        assert!(matches!(
            parse_weyl_word("s1 s3", 2),
            Err(Error::Parse { position: 4, .. })
        ));
        assert!(matches!(
            parse_weyl_word("1,x", 2),
            Err(Error::Parse { position: 2, .. })
        ));
    }

    #[test]
    fn sums_render_with_signs() {
        let mut s = VirtualG0Sum::new();
        s.add_term(WeightVector::from_ints(&[1], &[0]), 1);
        s.add_term(WeightVector::from_ints(&[0], &[1]), -2);
        assert_eq!(format_sum(&s), "L0(d1) - 2*L0(e1)");
        assert_eq!(format_sum(&VirtualG0Sum::new()), "0");
    }

    #[test]
    fn documents_carry_the_schema() {
        let v = document("bbw", &serde_json::json!({"a": 1}));
        assert_eq!(v["schema"], "superbbw.bbw/1");
        assert_eq!(v["a"], 1);
    }
}
