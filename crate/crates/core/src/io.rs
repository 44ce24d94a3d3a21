//! JSON ingestion. Every document carries `"schema": 1` and a `"kind"`;
//! unknown fields are rejected. Parse errors carry a JSON pointer into the
//! offending document.
//!
//! Kinds: `algebra`, `bimodule`, `left_module`, `free_bimodule`,
//! `free_left_module`, `category` and `poset`. A module names its algebras
//! either inline, by a path relative to its own file, or as `"unit"`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::chains::ChainComplex;
use crate::dgalg::{
    free_bimodule, presented_complex, AlgebraPresentation, BasisElement, DgAlgebra, DgBimodule, DgLeftModule, ModulePresentation, Sector, Term,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::twarr::{Arrow, FiniteCategory};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Coef {
    Int(i64),
    Text(String),
}

type Terms = BTreeMap<String, Coef>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisDoc {
    name: String,
    degree: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    left: String,
    right: String,
    value: Terms,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    #[allow(dead_code)]
    schema: u64,
    #[allow(dead_code)]
    kind: String,
    name: String,
    basis: Vec<BasisDoc>,
    unit: String,
    product: Option<Vec<EntryDoc>>,
    #[serde(default)]
    differential: BTreeMap<String, Terms>,
    augmentation: Option<Terms>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleDoc {
    #[allow(dead_code)]
    schema: u64,
    #[allow(dead_code)]
    kind: String,
    name: String,
    left: Option<Value>,
    right: Option<Value>,
    sector: Option<SectorDoc>,
    basis: Vec<BasisDoc>,
    #[serde(default)]
    differential: BTreeMap<String, Terms>,
    #[serde(default)]
    left_action: Vec<EntryDoc>,
    #[serde(default)]
    right_action: Vec<EntryDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FreeDoc {
    #[allow(dead_code)]
    schema: u64,
    #[allow(dead_code)]
    kind: String,
    name: String,
    left: Option<Value>,
    right: Option<Value>,
    sector: Option<SectorDoc>,
    generators: Vec<BasisDoc>,
    #[serde(default)]
    differential: BTreeMap<String, Terms>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
enum SectorDoc {
    Algebra,
    Module,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowDoc {
    name: String,
    src: String,
    dst: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CategoryDoc {
    #[allow(dead_code)]
    schema: u64,
    #[allow(dead_code)]
    kind: String,
    name: String,
    objects: Vec<String>,
    #[serde(default)]
    arrows: Vec<ArrowDoc>,
    /// `left ∘ right = value`, by arrow names.
    #[serde(default)]
    composites: Vec<EntryDoc3>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc3 {
    left: String,
    right: String,
    value: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetDoc {
    #[allow(dead_code)]
    schema: u64,
    #[allow(dead_code)]
    kind: String,
    name: String,
    elements: Vec<String>,
    #[serde(default)]
    relations: Vec<(String, String)>,
}

fn escape(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

fn join(base: &str, token: impl std::fmt::Display) -> String {
    format!("{base}/{}", escape(&token.to_string()))
}

fn parse_error(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    let pointer = pointer.into();
    Error::Parse { pointer: if pointer.is_empty() { "/".into() } else { pointer }, message: message.into() }
}

fn typed<T: DeserializeOwned>(value: Value, at: &str) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let mut pointer = at.to_string();
        for seg in e.path().iter() {
            match seg {
                serde_path_to_error::Segment::Seq { index } => pointer = join(&pointer, index),
                serde_path_to_error::Segment::Map { key } => pointer = join(&pointer, key),
                serde_path_to_error::Segment::Enum { variant } => pointer = join(&pointer, variant),
                serde_path_to_error::Segment::Unknown => pointer = join(&pointer, "?"),
            }
        }
        parse_error(pointer, e.into_inner().to_string())
    })
}

/// Checks `schema` and returns `kind`.
fn header(value: &Value, at: &str) -> Result<String> {
    let Some(obj) = value.as_object() else {
        return Err(parse_error(at, "expected a JSON object"));
    };
    match obj.get("schema").and_then(Value::as_u64) {
        Some(SCHEMA_VERSION) => {}
        Some(v) => return Err(parse_error(join(at, "schema"), format!("unsupported schema version {v}"))),
        None => return Err(parse_error(join(at, "schema"), "missing schema version")),
    }
    obj.get("kind")
        .and_then(Value::as_str)
        .map(str::to_string)
        .ok_or_else(|| parse_error(join(at, "kind"), "missing kind"))
}

fn expect_kind(kind: &str, allowed: &[&str], at: &str) -> Result<()> {
    if allowed.contains(&kind) {
        Ok(())
    } else {
        Err(parse_error(join(at, "kind"), format!("expected one of {allowed:?}, found `{kind}`")))
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| parse_error("", format!("{}: {e}", path.display())))?;
    parse_json(&text)
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_error("", e.to_string()))
}

fn coefficient<F: Field>(c: &Coef, at: &str) -> Result<F> {
    match c {
        Coef::Int(i) => Ok(F::from_i64(*i)),
        Coef::Text(s) => F::parse(s).map_err(|e| parse_error(at, e.to_string())),
    }
}

fn terms<F: Field>(t: &Terms, at: &str) -> Result<Vec<Term<F>>> {
    t.iter().map(|(name, c)| Ok((name.clone(), coefficient(c, &join(at, name))?))).collect()
}

fn basis(b: &[BasisDoc]) -> Vec<BasisElement> {
    b.iter().map(|b| BasisElement { name: b.name.clone(), degree: b.degree }).collect()
}

fn differential<F: Field>(d: &BTreeMap<String, Terms>, at: &str) -> Result<Vec<(String, Vec<Term<F>>)>> {
    let at = join(at, "differential");
    d.iter().map(|(name, t)| Ok((name.clone(), terms(t, &join(&at, name))?))).collect()
}

fn entries<F: Field>(e: &[EntryDoc], at: &str) -> Result<Vec<(String, String, Vec<Term<F>>)>> {
    e.iter()
        .enumerate()
        .map(|(i, e)| Ok((e.left.clone(), e.right.clone(), terms(&e.value, &join(&join(at, i), "value"))?)))
        .collect()
}

/// Where relative references in a document resolve.
#[derive(Debug, Clone)]
struct Context {
    dir: PathBuf,
}

impl Context {
    fn algebra<F: Field>(&self, value: &Value, at: &str) -> Result<Arc<DgAlgebra<F>>> {
        match value {
            Value::String(s) if s == "unit" => Ok(Arc::new(DgAlgebra::unit_algebra())),
            Value::String(s) => {
                let path = self.dir.join(s);
                let inner = read_json(&path).map_err(|e| nest(e, at, &path))?;
                let ctx = Context { dir: path.parent().map(Path::to_path_buf).unwrap_or_default() };
                ctx.algebra_doc(inner, "").map(Arc::new).map_err(|e| nest(e, at, &path))
            }
            Value::Object(_) => self.algebra_doc(value.clone(), at).map(Arc::new),
            _ => Err(parse_error(at, "expected an algebra object, a path or \"unit\"")),
        }
    }

    fn algebra_doc<F: Field>(&self, value: Value, at: &str) -> Result<DgAlgebra<F>> {
        let kind = header(&value, at)?;
        expect_kind(&kind, &["algebra"], at)?;
        let doc: AlgebraDoc = typed(value, at)?;
        let product = match &doc.product {
            Some(p) => Some(entries(p, &join(at, "product"))?),
            None => None,
        };
        let augmentation = match &doc.augmentation {
            Some(t) => Some(terms(t, &join(at, "augmentation"))?),
            None => None,
        };
        AlgebraPresentation {
            name: doc.name,
            basis: basis(&doc.basis),
            unit: doc.unit,
            product,
            differential: differential(&doc.differential, at)?,
            augmentation,
        }
        .build()
    }

    fn sides<F: Field>(
        &self,
        kind: &str,
        left: &Option<Value>,
        right: &Option<Value>,
        at: &str,
    ) -> Result<(Arc<DgAlgebra<F>>, Arc<DgAlgebra<F>>)> {
        let bimodule = !kind.contains("left_module");
        let left = match left {
            Some(v) => self.algebra(v, &join(at, "left"))?,
            None => return Err(parse_error(join(at, "left"), "missing left algebra")),
        };
        let right = match (right, bimodule) {
            (Some(v), true) => self.algebra(v, &join(at, "right"))?,
            (None, true) => return Err(parse_error(join(at, "right"), "missing right algebra")),
            (Some(_), false) => return Err(parse_error(join(at, "right"), "left modules have no right algebra")),
            (None, false) => Arc::new(DgAlgebra::unit_algebra()),
        };
        Ok((left, right))
    }

    fn module_doc<F: Field>(&self, value: Value, at: &str) -> Result<DgBimodule<F>> {
        let kind = header(&value, at)?;
        expect_kind(&kind, &["bimodule", "left_module", "free_bimodule", "free_left_module"], at)?;
        let default_sector = if kind.contains("left_module") { Sector::Module } else { Sector::Algebra };
        let sector = |s: Option<SectorDoc>| match s {
            Some(SectorDoc::Algebra) => Sector::Algebra,
            Some(SectorDoc::Module) => Sector::Module,
            None => default_sector,
        };
        if kind.starts_with("free_") {
            let doc: FreeDoc = typed(value, at)?;
            let (left, right) = self.sides(&kind, &doc.left, &doc.right, at)?;
            let gens = presented_complex(&basis(&doc.generators), &differential(&doc.differential, at)?)?;
            return Ok(free_bimodule(left, &gens, right).with_name(doc.name).with_sector(sector(doc.sector)));
        }
        let doc: ModuleDoc = typed(value, at)?;
        let (left, right) = self.sides(&kind, &doc.left, &doc.right, at)?;
        if kind == "left_module" && !doc.right_action.is_empty() {
            return Err(parse_error(join(at, "right_action"), "left modules have no right action"));
        }
        ModulePresentation {
            name: doc.name,
            left,
            right,
            basis: basis(&doc.basis),
            differential: differential(&doc.differential, at)?,
            left_action: entries(&doc.left_action, &join(at, "left_action"))?,
            right_action: entries(&doc.right_action, &join(at, "right_action"))?,
            sector: sector(doc.sector),
        }
        .build()
    }
}

/// Prefixes the pointer of an error raised inside a referenced file.
fn nest(e: Error, at: &str, path: &Path) -> Error {
    match e {
        Error::Parse { pointer, message } => {
            parse_error(at, format!("in {} at `{pointer}`: {message}", path.display()))
        }
        other => other,
    }
}

fn context_of(path: &Path) -> Context {
    Context { dir: path.parent().map(Path::to_path_buf).unwrap_or_default() }
}

/// Parses an algebra document; relative references resolve against `dir`.
pub fn parse_algebra<F: Field>(text: &str, dir: &Path) -> Result<DgAlgebra<F>> {
    Context { dir: dir.to_path_buf() }.algebra_doc(parse_json(text)?, "")
}

pub fn load_algebra<F: Field>(path: &Path) -> Result<DgAlgebra<F>> {
    context_of(path).algebra_doc(read_json(path)?, "")
}

/// Parses any module document as a bimodule. Left modules come out with
/// right algebra `𝟙`.
pub fn parse_bimodule<F: Field>(text: &str, dir: &Path) -> Result<DgBimodule<F>> {
    Context { dir: dir.to_path_buf() }.module_doc(parse_json(text)?, "")
}

pub fn load_bimodule<F: Field>(path: &Path) -> Result<DgBimodule<F>> {
    context_of(path).module_doc(read_json(path)?, "")
}

/// Loads a module whose right algebra is `𝟙`.
pub fn load_left_module<F: Field>(path: &Path) -> Result<DgLeftModule<F>> {
    DgLeftModule::from_bimodule(load_bimodule(path)?)
}

pub fn parse_category(text: &str) -> Result<FiniteCategory> {
    category_doc(parse_json(text)?)
}

pub fn load_category(path: &Path) -> Result<FiniteCategory> {
    category_doc(read_json(path)?)
}

fn category_doc(value: Value) -> Result<FiniteCategory> {
    let kind = header(&value, "")?;
    expect_kind(&kind, &["category", "poset"], "")?;
    let object = |objects: &[String], name: &str, at: String| -> Result<usize> {
        objects.iter().position(|o| o == name).ok_or_else(|| parse_error(at, format!("unknown object `{name}`")))
    };
    if kind == "poset" {
        let doc: PosetDoc = typed(value, "")?;
        let mut rel = Vec::new();
        for (i, (a, b)) in doc.relations.iter().enumerate() {
            let at = join("/relations", i);
            rel.push((object(&doc.elements, a, join(&at, 0))?, object(&doc.elements, b, join(&at, 1))?));
        }
        return FiniteCategory::poset(doc.name, doc.elements, &rel);
    }
    let doc: CategoryDoc = typed(value, "")?;
    let mut arrows = Vec::new();
    for (i, a) in doc.arrows.iter().enumerate() {
        let at = join("/arrows", i);
        arrows.push(Arrow {
            name: a.name.clone(),
            src: object(&doc.objects, &a.src, join(&at, "src"))?,
            dst: object(&doc.objects, &a.dst, join(&at, "dst"))?,
        });
    }
    let arrow = |name: &str, at: String| -> Result<usize> {
        doc.arrows.iter().position(|a| a.name == name).ok_or_else(|| parse_error(at, format!("unknown arrow `{name}`")))
    };
    let mut composites = Vec::new();
    for (i, c) in doc.composites.iter().enumerate() {
        let at = join("/composites", i);
        composites.push((arrow(&c.left, join(&at, "left"))?, arrow(&c.right, join(&at, "right"))?, arrow(&c.value, join(&at, "value"))?));
    }
    FiniteCategory::build(doc.name, doc.objects, arrows, &composites)
}

/// A complex with zero differential and the given dimensions, as used for
/// generators on the command line: `"1,1"` starting in degree 0.
pub fn parse_dims<F: Field>(text: &str) -> Result<ChainComplex<F>> {
    let dims: std::result::Result<Vec<usize>, _> = text.split(',').map(|s| s.trim().parse::<usize>()).collect();
    match dims {
        Ok(d) if !d.is_empty() => Ok(ChainComplex::from_dims(0, d)),
        _ => Err(parse_error("", format!("expected comma-separated dimensions, found `{text}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::field::Q;

    fn here() -> PathBuf {
        PathBuf::from(".")
    }

    const EXTERIOR1: &str = r#"{
        "schema": 1, "kind": "algebra", "name": "exterior1",
        "basis": [{"name": "1", "degree": 0}, {"name": "x", "degree": 1}],
        "unit": "1",
        "product": [{"left": "x", "right": "x", "value": {}}]
    }"#;

    #[test]
    fn algebra_round_trip() {
        let a: DgAlgebra<Q> = parse_algebra(EXTERIOR1, &here()).unwrap();
        assert_eq!(a, corpus::exterior1());
    }

    #[test]
    fn unknown_fields_are_rejected_with_a_pointer() {
        let text = EXTERIOR1.replace(r#""unit": "1","#, r#""unit": "1", "colour": 3,"#);
        let e = parse_algebra::<Q>(&text, &here()).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        assert!(e.to_string().contains("colour"), "{e}");
        let text = EXTERIOR1.replace(r#""degree": 1"#, r#""degree": 1, "weight": 2"#);
        match parse_algebra::<Q>(&text, &here()).unwrap_err() {
            Error::Parse { pointer, .. } => assert_eq!(pointer, "/basis/1/weight"),
            e => panic!("{e}"),
        }
        let text = EXTERIOR1.replace(r#""degree": 1"#, r#""degree": "one""#);
        match parse_algebra::<Q>(&text, &here()).unwrap_err() {
            Error::Parse { pointer, .. } => assert_eq!(pointer, "/basis/1/degree"),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn schema_version_is_required() {
        let text = EXTERIOR1.replace(r#""schema": 1"#, r#""schema": 2"#);
        match parse_algebra::<Q>(&text, &here()).unwrap_err() {
            Error::Parse { pointer, .. } => assert_eq!(pointer, "/schema"),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn missing_product_table_names_the_axiom() {
        let text = EXTERIOR1.replace(r#""product": [{"left": "x", "right": "x", "value": {}}]"#, r#""differential": {}"#);
        match parse_algebra::<Q>(&text, &here()).unwrap_err() {
            Error::Validation { axiom, .. } => assert_eq!(axiom, "product-table"),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn bad_coefficient_points_at_the_term() {
        let text = EXTERIOR1.replace(r#""value": {}"#, r#""value": {"x": "1/0"}"#);
        match parse_algebra::<Q>(&text, &here()).unwrap_err() {
            Error::Parse { pointer, .. } => assert_eq!(pointer, "/product/0/value/x"),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn inline_left_module() {
        let text = format!(
            r#"{{"schema": 1, "kind": "left_module", "name": "k", "left": {EXTERIOR1},
                "basis": [{{"name": "e", "degree": 0}}]}}"#
        );
        let m: DgBimodule<Q> = parse_bimodule(&text, &here()).unwrap();
        let a = Arc::new(corpus::exterior1::<Q>());
        assert_eq!(m.complex(), DgLeftModule::trivial(a).complex());
        assert_eq!(m.sector(), Sector::Module);
    }

    #[test]
    fn free_module_from_generators() {
        let text = format!(
            r#"{{"schema": 1, "kind": "free_left_module", "name": "free", "left": {EXTERIOR1},
                "generators": [{{"name": "e", "degree": 0}}, {{"name": "f", "degree": 1}}]}}"#
        );
        let m: DgBimodule<Q> = parse_bimodule(&text, &here()).unwrap();
        let a = Arc::new(corpus::exterior1::<Q>());
        let expected = crate::dgalg::free_left_module(a, &corpus::graded(0, &[1, 1]));
        assert_eq!(m.complex(), expected.complex());
    }

    #[test]
    fn categories_and_posets() {
        let c = parse_category(r#"{"schema": 1, "kind": "poset", "name": "chain3", "elements": ["0", "1", "2"], "relations": [["0", "1"], ["1", "2"]]}"#).unwrap();
        assert_eq!(c.arrows().len(), 6);
        let e = parse_category(r#"{"schema": 1, "kind": "poset", "name": "p", "elements": ["0"], "relations": [["0", "9"]]}"#).unwrap_err();
        match e {
            Error::Parse { pointer, .. } => assert_eq!(pointer, "/relations/0/1"),
            e => panic!("{e}"),
        }
        let idem = parse_category(
            r#"{"schema": 1, "kind": "category", "name": "idem", "objects": ["o"],
                "arrows": [{"name": "e", "src": "o", "dst": "o"}],
                "composites": [{"left": "e", "right": "e", "value": "e"}]}"#,
        )
        .unwrap();
        assert_eq!(idem.arrows().len(), 2);
    }
}
