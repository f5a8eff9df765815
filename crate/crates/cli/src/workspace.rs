//! Named bindings loaded from text or JSON files, resolved on demand.

use crate::parse::{self, ArrowDecl, Body, Decl, MapSpec, ParseError, PathText, Pos, Word};
use hocat::colimit::{CatDiagram, Cocone, SSetDiagram};
use hocat::fincat::{CatFunctor, FinCat, Morphism, DEFAULT_GUARD};
use hocat::quiverkit::{paths_of_length, Edge, Graph, Path};
use hocat::rewrite::{orient_and_complete, FpCat, Materialized, Presentation, DEFAULT_BOUND, DEFAULT_FUEL};
use hocat::sset::{SimplicialMap, TruncSSet};
use hocat::{Error, Exec};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

pub const SCHEMA: &str = "hocat/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub fuel: usize,
    pub guard: u64,
    pub bound: usize,
    pub exec: Exec,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            fuel: DEFAULT_FUEL,
            guard: DEFAULT_GUARD,
            bound: DEFAULT_BOUND,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Parse { file: String, error: ParseError },
    Usage(String),
    Invalid(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Invalid(_) => 1,
            CliError::Core(Error::GuardExceeded { .. } | Error::Incomplete | Error::NotFinite { .. }) => 3,
            CliError::Core(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { file, error } => write!(f, "{file}:{error}"),
            CliError::Usage(m) | CliError::Invalid(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone)]
pub enum CatValue {
    Finite(FinCat),
    Presented { fp: FpCat, mat: Option<Materialized> },
}

#[derive(Debug, Clone)]
pub struct Category {
    pub value: CatValue,
}

impl Category {
    pub fn finite(&self) -> Option<&FinCat> {
        match &self.value {
            CatValue::Finite(c) => Some(c),
            CatValue::Presented { mat, .. } => mat.as_ref().map(|m| &m.cat),
        }
    }

    pub fn require_finite(&self, name: &str, bound: usize) -> CliResult<&FinCat> {
        self.finite().ok_or_else(|| {
            CliError::Core(Error::NotFinite {
                hom: name.to_string(),
                bound,
            })
        })
    }

    pub fn presented(&self) -> Option<&FpCat> {
        match &self.value {
            CatValue::Finite(_) => None,
            CatValue::Presented { fp, .. } => Some(fp),
        }
    }

    pub fn objects(&self) -> &[String] {
        match &self.value {
            CatValue::Finite(c) => c.objects(),
            CatValue::Presented { fp, .. } => fp.objects(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum DiagramKind {
    Cat(CatDiagram),
    SSet(SSetDiagram),
}

#[derive(Debug, Clone)]
pub struct Diagram {
    pub shape: String,
    pub nodes: Vec<String>,
    pub kind: DiagramKind,
}

#[derive(Debug, Clone)]
pub struct CoconeBinding {
    pub over: String,
    pub apex: String,
    pub cocone: Cocone,
}

#[derive(Debug, Clone)]
pub enum Binding {
    Category(Category),
    SSet(TruncSSet),
    Diagram(Diagram),
    Cocone(CoconeBinding),
}

impl Binding {
    pub fn kind(&self) -> &'static str {
        match self {
            Binding::Category(_) => "category",
            Binding::SSet(_) => "sset",
            Binding::Diagram(_) => "diagram",
            Binding::Cocone(_) => "cocone",
        }
    }
}

/// One serialized binding; references to other bindings are by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Entry {
    Category {
        name: String,
        category: FinCat,
    },
    Presentation {
        name: String,
        presentation: Presentation,
        fuel: usize,
    },
    Sset {
        name: String,
        sset: TruncSSet,
    },
    CatDiagram {
        name: String,
        shape: String,
        nodes: Vec<String>,
        arrows: Vec<(String, CatFunctor)>,
    },
    SsetDiagram {
        name: String,
        shape: String,
        nodes: Vec<String>,
        arrows: Vec<(String, SimplicialMap)>,
    },
    Cocone {
        name: String,
        over: String,
        apex: String,
        legs: Vec<CatFunctor>,
    },
}

impl Entry {
    pub fn name(&self) -> &str {
        match self {
            Entry::Category { name, .. }
            | Entry::Presentation { name, .. }
            | Entry::Sset { name, .. }
            | Entry::CatDiagram { name, .. }
            | Entry::SsetDiagram { name, .. }
            | Entry::Cocone { name, .. } => name,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub schema: String,
    pub bindings: Vec<Entry>,
}

#[derive(Debug, Clone)]
enum Raw {
    Text(Decl),
    Json(Entry),
}

#[derive(Debug, Clone)]
struct Source {
    file: String,
    decls: Vec<Raw>,
}

#[derive(Debug, Default)]
pub struct Workspace {
    pub settings: Settings,
    sources: Vec<Source>,
    order: Vec<String>,
    index: HashMap<String, (usize, usize)>,
    cache: HashMap<String, Arc<Binding>>,
    resolving: Vec<String>,
    loaded: HashMap<PathBuf, usize>,
}

fn at(file: &str, pos: Pos, message: impl Into<String>) -> CliError {
    CliError::Parse {
        file: file.to_string(),
        error: ParseError {
            pos,
            message: message.into(),
        },
    }
}

impl Workspace {
    pub fn new(settings: Settings) -> Self {
        Workspace {
            settings,
            ..Default::default()
        }
    }

    /// Adds the declarations of one file; returns their names in order.
    pub fn add_text(&mut self, file: &str, text: &str) -> CliResult<Vec<String>> {
        let decls = if text.trim_start().starts_with('{') {
            let doc: Document =
                serde_json::from_str(text).map_err(|e| CliError::Usage(format!("{file}: invalid JSON document: {e}")))?;
            if doc.schema != SCHEMA {
                return Err(CliError::Usage(format!("{file}: unsupported schema '{}'", doc.schema)));
            }
            doc.bindings.into_iter().map(Raw::Json).collect()
        } else {
            parse::parse(text)
                .map_err(|error| CliError::Parse {
                    file: file.to_string(),
                    error,
                })?
                .into_iter()
                .map(Raw::Text)
                .collect::<Vec<_>>()
        };
        let s = self.sources.len();
        let mut names = Vec::new();
        for (i, d) in decls.iter().enumerate() {
            let (name, pos) = match d {
                Raw::Text(d) => (d.name.text.clone(), d.name.pos),
                Raw::Json(e) => (e.name().to_string(), Pos::default()),
            };
            if let Some(&(t, _)) = self.index.get(&name) {
                return Err(at(
                    file,
                    pos,
                    format!("'{name}' is already bound in {}", self.sources[t].file),
                ));
            }
            self.index.insert(name.clone(), (s, i));
            self.order.push(name.clone());
            names.push(name);
        }
        self.sources.push(Source {
            file: file.to_string(),
            decls,
        });
        Ok(names)
    }

    /// Loads a file once; a second load of the same file returns the
    /// names bound by the first.
    pub fn add_file(&mut self, path: &FsPath) -> CliResult<Vec<String>> {
        let canon = path
            .canonicalize()
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        if let Some(&s) = self.loaded.get(&canon) {
            return Ok(self.names_of(s));
        }
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let names = self.add_text(&path.display().to_string(), &text)?;
        self.loaded.insert(canon, self.sources.len() - 1);
        Ok(names)
    }

    /// Loads every fixture file of a directory, in name order.
    pub fn add_dir(&mut self, dir: &FsPath) -> CliResult<Vec<String>> {
        let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                p.is_file()
                    && matches!(
                        p.extension().and_then(|e| e.to_str()),
                        Some("cat" | "sset" | "diag" | "json")
                    )
            })
            .collect();
        files.sort();
        let mut names = Vec::new();
        for f in files {
            names.extend(self.add_file(&f)?);
        }
        Ok(names)
    }

    fn names_of(&self, s: usize) -> Vec<String> {
        self.sources[s]
            .decls
            .iter()
            .map(|d| match d {
                Raw::Text(d) => d.name.text.clone(),
                Raw::Json(e) => e.name().to_string(),
            })
            .collect()
    }

    /// All bound names in declaration order.
    pub fn names(&self) -> &[String] {
        &self.order
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn get(&mut self, name: &str) -> CliResult<Arc<Binding>> {
        if let Some(b) = self.cache.get(name) {
            return Ok(b.clone());
        }
        let &(s, i) = self
            .index
            .get(name)
            .ok_or_else(|| CliError::Usage(format!("no binding named '{name}'")))?;
        if self.resolving.iter().any(|n| n == name) {
            return Err(CliError::Invalid(format!(
                "cyclic reference: {} -> {name}",
                self.resolving.join(" -> ")
            )));
        }
        self.resolving.push(name.to_string());
        let raw = self.sources[s].decls[i].clone();
        let file = self.sources[s].file.clone();
        let result = match raw {
            Raw::Text(d) => self.resolve_text(&file, &d),
            Raw::Json(e) => self.resolve_entry(&e),
        };
        self.resolving.pop();
        let b = Arc::new(result.map_err(|e| match e {
            CliError::Invalid(m) => CliError::Invalid(format!("{name}: {m}")),
            CliError::Core(ref c @ (Error::Law(_) | Error::Malformed(_) | Error::EndpointMismatch(_))) => {
                CliError::Invalid(format!("{name}: {c}"))
            }
            other => other,
        })?);
        self.cache.insert(name.to_string(), b.clone());
        Ok(b)
    }

    pub fn category(&mut self, name: &str) -> CliResult<Arc<Binding>> {
        self.expect_kind(name, "category")
    }

    fn expect_kind(&mut self, name: &str, kind: &str) -> CliResult<Arc<Binding>> {
        let b = self.get(name)?;
        if b.kind() != kind {
            return Err(CliError::Usage(format!("'{name}' is a {}, not a {kind}", b.kind())));
        }
        Ok(b)
    }

    fn cat_ref(&mut self, file: &str, w: &Word) -> CliResult<Arc<Binding>> {
        match self.get(&w.text) {
            Ok(b) if b.kind() == "category" => Ok(b),
            Ok(b) => Err(at(file, w.pos, format!("'{}' is a {}, not a category", w.text, b.kind()))),
            Err(CliError::Usage(m)) => Err(at(file, w.pos, m)),
            Err(e) => Err(e),
        }
    }

    fn resolve_text(&mut self, file: &str, d: &Decl) -> CliResult<Binding> {
        match &d.body {
            Body::Category {
                objects,
                arrows,
                relations,
                table,
                has_relations,
                has_table,
            } => {
                if *has_relations && *has_table {
                    return Err(at(file, d.name.pos, "a category takes either relations or a table, not both"));
                }
                let objs = unique_names(file, objects)?;
                let edges = arrow_edges(file, &objs, arrows)?;
                let value = if *has_table {
                    CatValue::Finite(table_category(file, objs, edges, table)?)
                } else {
                    let mut pres = Presentation {
                        objects: objs,
                        generators: edges,
                        relations: Vec::new(),
                    };
                    for eq in relations {
                        let l = word_path(file, &pres, &eq.lhs)?;
                        let r = word_path(file, &pres, &eq.rhs)?;
                        if (l.src, l.tgt) != (r.src, r.tgt) {
                            return Err(at(file, eq.lhs.pos, "the two sides of a relation have different endpoints"));
                        }
                        pres.relations.push((l, r));
                    }
                    self.presented(pres, self.settings.fuel)?
                };
                Ok(Binding::Category(Category { value }))
            }
            Body::SSet {
                dim,
                levels,
                faces,
                degens,
            } => Ok(Binding::SSet(sset_from_text(file, *dim, levels, faces, degens)?)),
            Body::Diagram { shape, nodes, arrows } => {
                let shape_b = self.cat_ref(file, shape)?;
                let Binding::Category(shape_cat) = &*shape_b else { unreachable!() };
                let sc = shape_cat.require_finite(&shape.text, self.settings.bound)?.clone();
                let mut node_names: Vec<Option<Word>> = vec![None; sc.object_count()];
                for (j, b) in nodes {
                    let a = sc
                        .object_by_name(&j.text)
                        .ok_or_else(|| at(file, j.pos, format!("'{}' is not an object of {}", j.text, shape.text)))?;
                    if node_names[a].replace(b.clone()).is_some() {
                        return Err(at(file, j.pos, format!("node {} is given twice", j.text)));
                    }
                }
                let node_names: Vec<Word> = node_names
                    .into_iter()
                    .enumerate()
                    .map(|(a, w)| w.ok_or_else(|| at(file, d.name.pos, format!("no node for {}", sc.objects()[a]))))
                    .collect::<CliResult<_>>()?;
                let mut bound = Vec::new();
                for w in &node_names {
                    let b = self.get(&w.text).map_err(|e| match e {
                        CliError::Usage(m) => at(file, w.pos, m),
                        e => e,
                    })?;
                    bound.push(b);
                }
                let names: Vec<String> = node_names.iter().map(|w| w.text.clone()).collect();
                let kind = if bound.iter().all(|b| b.kind() == "category") {
                    let cats: Vec<&Category> = bound
                        .iter()
                        .map(|b| match &**b {
                            Binding::Category(c) => c,
                            _ => unreachable!(),
                        })
                        .collect();
                    let mut fins = Vec::new();
                    for (c, n) in cats.iter().zip(&names) {
                        fins.push(c.require_finite(n, self.settings.bound)?.clone());
                    }
                    let mut given = Vec::new();
                    for (f, spec) in arrows {
                        let u = morphism_of(file, &sc, f)?;
                        let (a, b) = (sc.morphism(u).src, sc.morphism(u).tgt);
                        given.push((u, functor_from_spec(file, cats[a], &fins[a], cats[b], &fins[b], spec)?));
                    }
                    DiagramKind::Cat(CatDiagram::new(sc, fins, given)?)
                } else if bound.iter().all(|b| b.kind() == "sset") {
                    let xs: Vec<TruncSSet> = bound
                        .iter()
                        .map(|b| match &**b {
                            Binding::SSet(x) => x.clone(),
                            _ => unreachable!(),
                        })
                        .collect();
                    let mut given = Vec::new();
                    for (f, spec) in arrows {
                        let u = morphism_of(file, &sc, f)?;
                        let (a, b) = (sc.morphism(u).src, sc.morphism(u).tgt);
                        given.push((u, sset_map_from_spec(file, &xs[a], &xs[b], spec, f.pos)?));
                    }
                    DiagramKind::SSet(SSetDiagram::new(sc, xs, given)?)
                } else {
                    return Err(at(
                        file,
                        d.name.pos,
                        "diagram nodes must be all categories or all simplicial sets",
                    ));
                };
                Ok(Binding::Diagram(Diagram {
                    shape: shape.text.clone(),
                    nodes: names,
                    kind,
                }))
            }
            Body::Cocone { over, apex, legs } => {
                let diag_b = self.get(&over.text).map_err(|e| match e {
                    CliError::Usage(m) => at(file, over.pos, m),
                    e => e,
                })?;
                let Binding::Diagram(diag) = &*diag_b else {
                    return Err(at(file, over.pos, format!("'{}' is not a diagram", over.text)));
                };
                let DiagramKind::Cat(cd) = &diag.kind else {
                    return Err(at(file, over.pos, "cocones are supported over diagrams of categories"));
                };
                let apex_b = self.cat_ref(file, apex)?;
                let Binding::Category(apex_cat) = &*apex_b else { unreachable!() };
                let apex_fin = apex_cat.require_finite(&apex.text, self.settings.bound)?.clone();
                let mut out: Vec<Option<CatFunctor>> = vec![None; cd.nodes.len()];
                for (j, spec) in legs {
                    let a = cd
                        .shape
                        .object_by_name(&j.text)
                        .ok_or_else(|| at(file, j.pos, format!("'{}' is not an object of the shape", j.text)))?;
                    let node_b = self.get(&diag.nodes[a])?;
                    let Binding::Category(node) = &*node_b else { unreachable!() };
                    let f = functor_from_spec(file, node, &cd.nodes[a], apex_cat, &apex_fin, spec)?;
                    if out[a].replace(f).is_some() {
                        return Err(at(file, j.pos, format!("leg {} is given twice", j.text)));
                    }
                }
                let legs: Vec<CatFunctor> = out
                    .into_iter()
                    .enumerate()
                    .map(|(a, f)| f.ok_or_else(|| at(file, d.name.pos, format!("no leg for {}", cd.shape.objects()[a]))))
                    .collect::<CliResult<_>>()?;
                let cocone = Cocone { apex: apex_fin, legs };
                cocone.validate(cd)?;
                Ok(Binding::Cocone(CoconeBinding {
                    over: over.text.clone(),
                    apex: apex.text.clone(),
                    cocone,
                }))
            }
        }
    }

    fn presented(&self, pres: Presentation, fuel: usize) -> CliResult<CatValue> {
        let fp = orient_and_complete(pres, fuel)?;
        let mat = match fp.to_fincat(self.settings.bound) {
            Ok(m) => Some(m),
            Err(Error::NotFinite { .. } | Error::Incomplete) => None,
            Err(e) => return Err(e.into()),
        };
        Ok(CatValue::Presented { fp, mat })
    }

    fn resolve_entry(&mut self, e: &Entry) -> CliResult<Binding> {
        match e {
            Entry::Category { category, .. } => {
                category.validate()?;
                Ok(Binding::Category(Category {
                    value: CatValue::Finite(category.clone()),
                }))
            }
            Entry::Presentation { presentation, fuel, .. } => Ok(Binding::Category(Category {
                value: self.presented(presentation.clone(), *fuel)?,
            })),
            Entry::Sset { sset, .. } => Ok(Binding::SSet(sset.clone())),
            Entry::CatDiagram {
                shape, nodes, arrows, ..
            } => {
                let sc = self.finite_category(shape)?;
                let fins = nodes.iter().map(|n| self.finite_category(n)).collect::<CliResult<Vec<_>>>()?;
                let given = arrows
                    .iter()
                    .map(|(u, f)| Ok((shape_arrow(&sc, u)?, f.clone())))
                    .collect::<CliResult<Vec<_>>>()?;
                Ok(Binding::Diagram(Diagram {
                    shape: shape.clone(),
                    nodes: nodes.clone(),
                    kind: DiagramKind::Cat(CatDiagram::new(sc, fins, given)?),
                }))
            }
            Entry::SsetDiagram {
                shape, nodes, arrows, ..
            } => {
                let sc = self.finite_category(shape)?;
                let mut xs = Vec::new();
                for n in nodes {
                    match &*self.get(n)? {
                        Binding::SSet(x) => xs.push(x.clone()),
                        b => return Err(CliError::Usage(format!("'{n}' is a {}, not a sset", b.kind()))),
                    }
                }
                let given = arrows
                    .iter()
                    .map(|(u, f)| Ok((shape_arrow(&sc, u)?, f.clone())))
                    .collect::<CliResult<Vec<_>>>()?;
                Ok(Binding::Diagram(Diagram {
                    shape: shape.clone(),
                    nodes: nodes.clone(),
                    kind: DiagramKind::SSet(SSetDiagram::new(sc, xs, given)?),
                }))
            }
            Entry::Cocone { over, apex, legs, .. } => {
                let b = self.expect_kind(over, "diagram")?;
                let Binding::Diagram(Diagram {
                    kind: DiagramKind::Cat(cd),
                    ..
                }) = &*b
                else {
                    return Err(CliError::Usage(format!("'{over}' is not a diagram of categories")));
                };
                let cocone = Cocone {
                    apex: self.finite_category(apex)?,
                    legs: legs.clone(),
                };
                cocone.validate(cd)?;
                Ok(Binding::Cocone(CoconeBinding {
                    over: over.clone(),
                    apex: apex.clone(),
                    cocone,
                }))
            }
        }
    }

    pub fn finite_category(&mut self, name: &str) -> CliResult<FinCat> {
        let b = self.category(name)?;
        let Binding::Category(c) = &*b else { unreachable!() };
        Ok(c.require_finite(name, self.settings.bound)?.clone())
    }

    /// Cocones declared over the given diagram, in declaration order.
    pub fn cocones_over(&mut self, diagram: &str) -> CliResult<Vec<(String, Cocone)>> {
        let mut out = Vec::new();
        for name in self.order.clone() {
            let (s, i) = self.index[&name];
            let over = match &self.sources[s].decls[i] {
                Raw::Text(Decl {
                    body: Body::Cocone { over, .. },
                    ..
                }) => over.text.clone(),
                Raw::Json(Entry::Cocone { over, .. }) => over.clone(),
                _ => continue,
            };
            if over == diagram {
                if let Binding::Cocone(c) = &*self.get(&name)? {
                    out.push((name, c.cocone.clone()));
                }
            }
        }
        Ok(out)
    }

    /// Resolves every binding.
    pub fn resolve_all(&mut self) -> CliResult<()> {
        for name in self.order.clone() {
            self.get(&name)?;
        }
        Ok(())
    }

    /// Serializes a binding together with everything it refers to.
    pub fn export(&mut self, name: &str) -> CliResult<Document> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        self.export_into(name, &mut out, &mut seen)?;
        Ok(Document {
            schema: SCHEMA.to_string(),
            bindings: out,
        })
    }

    fn export_into(&mut self, name: &str, out: &mut Vec<Entry>, seen: &mut HashSet<String>) -> CliResult<()> {
        if !seen.insert(name.to_string()) {
            return Ok(());
        }
        let b = self.get(name)?;
        let name = name.to_string();
        let entry = match &*b {
            Binding::Category(c) => match &c.value {
                CatValue::Finite(cat) => Entry::Category {
                    name,
                    category: cat.clone(),
                },
                CatValue::Presented { fp, .. } => Entry::Presentation {
                    name,
                    presentation: fp.presentation().clone(),
                    fuel: fp.fuel(),
                },
            },
            Binding::SSet(x) => Entry::Sset { name, sset: x.clone() },
            Binding::Diagram(d) => {
                self.export_into(&d.shape, out, seen)?;
                for n in &d.nodes {
                    self.export_into(n, out, seen)?;
                }
                match &d.kind {
                    DiagramKind::Cat(cd) => Entry::CatDiagram {
                        name,
                        shape: d.shape.clone(),
                        nodes: d.nodes.clone(),
                        arrows: non_identity_arrows(&cd.shape, &cd.maps),
                    },
                    DiagramKind::SSet(sd) => Entry::SsetDiagram {
                        name,
                        shape: d.shape.clone(),
                        nodes: d.nodes.clone(),
                        arrows: non_identity_arrows(&sd.shape, &sd.maps),
                    },
                }
            }
            Binding::Cocone(c) => {
                self.export_into(&c.over, out, seen)?;
                self.export_into(&c.apex, out, seen)?;
                Entry::Cocone {
                    name,
                    over: c.over.clone(),
                    apex: c.apex.clone(),
                    legs: c.cocone.legs.clone(),
                }
            }
        };
        out.push(entry);
        Ok(())
    }
}

fn non_identity_arrows<M: Clone>(shape: &FinCat, maps: &[M]) -> Vec<(String, M)> {
    (0..shape.morphism_count())
        .filter(|&u| !shape.is_identity(u))
        .map(|u| (shape.morphism(u).name.clone(), maps[u].clone()))
        .collect()
}

fn shape_arrow(shape: &FinCat, name: &str) -> CliResult<usize> {
    shape
        .morphism_by_name(name)
        .ok_or_else(|| CliError::Usage(format!("'{name}' is not an arrow of the shape")))
}

fn unique_names(file: &str, words: &[Word]) -> CliResult<Vec<String>> {
    let mut seen = HashSet::new();
    for w in words {
        if !seen.insert(w.text.as_str()) {
            return Err(at(file, w.pos, format!("'{}' is declared twice", w.text)));
        }
        if w.text.contains(['.', '(', ')']) {
            return Err(at(file, w.pos, format!("'{}' is not a plain name", w.text)));
        }
    }
    Ok(words.iter().map(|w| w.text.clone()).collect())
}

fn arrow_edges(file: &str, objects: &[String], arrows: &[ArrowDecl]) -> CliResult<Vec<Edge>> {
    let names: Vec<Word> = arrows.iter().map(|a| a.name.clone()).collect();
    unique_names(file, &names)?;
    let obj = |w: &Word| {
        objects
            .iter()
            .position(|o| *o == w.text)
            .ok_or_else(|| at(file, w.pos, format!("unknown object '{}'", w.text)))
    };
    arrows
        .iter()
        .map(|a| Ok(Edge::new(a.name.text.clone(), obj(&a.src)?, obj(&a.tgt)?)))
        .collect()
}

/// Parses a path over a graph with named vertices and edges.
fn word_path(file: &str, g: &Presentation, w: &Word) -> CliResult<Path> {
    match parse::parse_path(w).map_err(|error| CliError::Parse {
        file: file.to_string(),
        error,
    })? {
        PathText::Identity(v) => {
            let v = g
                .objects
                .iter()
                .position(|o| *o == v)
                .ok_or_else(|| at(file, w.pos, format!("unknown object '{v}'")))?;
            Ok(Path::identity(v))
        }
        PathText::Word(parts) => {
            let mut edges = Vec::new();
            for p in &parts {
                edges.push(
                    g.generators
                        .iter()
                        .position(|e| e.name == *p)
                        .ok_or_else(|| at(file, w.pos, format!("unknown arrow '{p}'")))?,
                );
            }
            let src = g.generators[edges[0]].src;
            Path::new(g, src, edges).map_err(|_| at(file, w.pos, format!("'{}' is not a composable path", w.text)))
        }
    }
}

/// Resolves a written path to a morphism of a finite category by composing
/// the named morphisms.
fn morphism_of(file: &str, c: &FinCat, w: &Word) -> CliResult<usize> {
    if let Some(f) = c.morphism_by_name(&w.text) {
        return Ok(f);
    }
    match parse::parse_path(w).map_err(|error| CliError::Parse {
        file: file.to_string(),
        error,
    })? {
        PathText::Identity(v) => c
            .object_by_name(&v)
            .map(|a| c.identity(a))
            .ok_or_else(|| at(file, w.pos, format!("unknown object '{v}'"))),
        PathText::Word(parts) => {
            let mut fs = Vec::new();
            for p in &parts {
                fs.push(
                    c.morphism_by_name(p)
                        .ok_or_else(|| at(file, w.pos, format!("unknown morphism '{p}'")))?,
                );
            }
            c.comp_all(&fs)
                .ok_or_else(|| at(file, w.pos, format!("'{}' is not a composable path", w.text)))
        }
    }
}

/// Like [`morphism_of`], but paths in a presented category are normalized
/// first, so reducible generators resolve too.
fn cat_morphism(file: &str, cat: &Category, fin: &FinCat, w: &Word) -> CliResult<usize> {
    if let CatValue::Presented { fp, mat: Some(m) } = &cat.value {
        let p = word_path(file, fp.presentation(), w)?;
        return m
            .morphism_of(&fp.normalize(&p))
            .ok_or_else(|| CliError::Core(Error::Internal(format!("no morphism for '{}'", w.text))));
    }
    morphism_of(file, fin, w)
}

pub fn path_in(file: &str, cat: &Category, w: &Word) -> CliResult<Path> {
    match &cat.value {
        CatValue::Presented { fp, .. } => word_path(file, fp.presentation(), w),
        CatValue::Finite(_) => Err(CliError::Usage("paths need a presented category".into())),
    }
}

pub fn finite_morphism(file: &str, c: &FinCat, w: &Word) -> CliResult<usize> {
    morphism_of(file, c, w)
}

fn table_category(file: &str, objects: Vec<String>, edges: Vec<Edge>, table: &[parse::Equation]) -> CliResult<FinCat> {
    let n = objects.len();
    let mut morphisms: Vec<Morphism> = objects.iter().enumerate().map(|(a, o)| Morphism::new(format!("id({o})"), a, a)).collect();
    morphisms.extend(edges.iter().map(|e| Morphism::new(e.name.clone(), e.src, e.tgt)));
    let m = morphisms.len();
    let identities: Vec<usize> = (0..n).collect();
    let by_name = |w: &Word| -> CliResult<usize> {
        morphisms
            .iter()
            .position(|f| f.name == w.text)
            .ok_or_else(|| at(file, w.pos, format!("unknown morphism '{}'", w.text)))
    };
    let mut comp: HashMap<(usize, usize), usize> = HashMap::new();
    for eq in table {
        let (f, g) = eq
            .lhs
            .text
            .split_once('.')
            .filter(|(f, g)| !f.is_empty() && !g.contains('.'))
            .ok_or_else(|| at(file, eq.lhs.pos, "a table entry composes exactly two morphisms"))?;
        let wf = Word {
            pos: eq.lhs.pos,
            text: f.into(),
        };
        let wg = Word {
            pos: eq.lhs.pos,
            text: g.into(),
        };
        let (f, g, h) = (by_name(&wf)?, by_name(&wg)?, by_name(&eq.rhs)?);
        if morphisms[f].tgt != morphisms[g].src {
            return Err(at(file, eq.lhs.pos, format!("'{}' is not composable", eq.lhs.text)));
        }
        if (morphisms[h].src, morphisms[h].tgt) != (morphisms[f].src, morphisms[g].tgt) {
            return Err(at(file, eq.rhs.pos, format!("'{}' has the wrong endpoints", eq.rhs.text)));
        }
        if comp.insert((f, g), h).is_some() {
            return Err(at(file, eq.lhs.pos, format!("'{}' is given twice", eq.lhs.text)));
        }
    }
    let mut entries = Vec::new();
    for f in 0..m {
        for g in 0..m {
            if morphisms[f].tgt != morphisms[g].src {
                continue;
            }
            let h = if f < n {
                g
            } else if g < n {
                f
            } else {
                *comp.get(&(f, g)).ok_or_else(|| {
                    CliError::Invalid(format!("table has no entry for {}.{}", morphisms[f].name, morphisms[g].name))
                })?
            };
            entries.push(((f, g), h));
        }
    }
    let c = FinCat::new(objects, morphisms, identities, entries)?;
    c.validate()?;
    Ok(c)
}

fn sset_from_text(
    file: &str,
    dim: usize,
    levels: &[(usize, Vec<Word>)],
    faces: &[(usize, usize, parse::Assign)],
    degens: &[(usize, usize, parse::Assign)],
) -> CliResult<TruncSSet> {
    let mut names: Vec<Option<Vec<String>>> = vec![None; dim + 1];
    for (k, ws) in levels {
        if *k > dim {
            return Err(at(file, ws.first().map(|w| w.pos).unwrap_or_default(), format!("level {k} exceeds dimension {dim}")));
        }
        if names[*k].is_some() {
            return Err(at(file, ws.first().map(|w| w.pos).unwrap_or_default(), format!("level {k} is given twice")));
        }
        names[*k] = Some(unique_names(file, ws)?);
    }
    let names: Vec<Vec<String>> = names
        .into_iter()
        .enumerate()
        .map(|(k, n)| n.ok_or_else(|| CliError::Invalid(format!("level {k} is missing"))))
        .collect::<CliResult<_>>()?;
    let lookup = |k: usize, w: &Word| {
        names[k]
            .iter()
            .position(|n| *n == w.text)
            .ok_or_else(|| at(file, w.pos, format!("'{}' is not a {k}-simplex", w.text)))
    };
    let table = |entries: &[(usize, usize, parse::Assign)], face: bool| -> CliResult<Vec<Vec<Vec<usize>>>> {
        let mut t: Vec<Vec<Vec<Option<usize>>>> = (0..=dim)
            .map(|k| {
                let ops = if (face && k == 0) || (!face && k == dim) { 0 } else { k + 1 };
                vec![vec![None; names[k].len()]; ops]
            })
            .collect();
        let what = if face { "face" } else { "degen" };
        for (k, i, a) in entries {
            let (k, i) = (*k, *i);
            if k > dim || i >= t[k].len() {
                return Err(at(file, a.from.pos, format!("{what} {k} {i} does not exist in dimension {dim}")));
            }
            let to_level = if face { k - 1 } else { k + 1 };
            let (x, y) = (lookup(k, &a.from)?, lookup(to_level, &a.to)?);
            if t[k][i][x].replace(y).is_some() {
                return Err(at(file, a.from.pos, format!("{what} {k} {i} of '{}' is given twice", a.from.text)));
            }
        }
        t.into_iter()
            .enumerate()
            .map(|(k, ops)| {
                ops.into_iter()
                    .enumerate()
                    .map(|(i, xs)| {
                        xs.into_iter()
                            .enumerate()
                            .map(|(x, y)| {
                                y.ok_or_else(|| CliError::Invalid(format!("{what} {k} {i} of '{}' is missing", names[k][x])))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    };
    let face = table(faces, true)?;
    let degen = table(degens, false)?;
    TruncSSet::from_parts(dim, names.clone(), face, degen).map_err(|e| CliError::Invalid(e.to_string()))
}

/// Builds a functor from object and morphism assignments. Identities,
/// composites of given morphisms and morphisms with a single possible image
/// are filled in.
fn functor_from_spec(
    file: &str,
    src: &Category,
    c: &FinCat,
    tgt: &Category,
    d: &FinCat,
    spec: &MapSpec,
) -> CliResult<CatFunctor> {
    if let Some((_, a)) = spec.levels.first() {
        let pos = a.first().map(|a| a.from.pos).unwrap_or_default();
        return Err(at(file, pos, "'level' assignments are for simplicial maps"));
    }
    let mut obj: Vec<Option<usize>> = vec![None; c.object_count()];
    let mut set_obj = |a: usize, b: usize, pos: Pos| -> CliResult<()> {
        match obj[a].replace(b) {
            Some(old) if old != b => Err(at(
                file,
                pos,
                format!("object {} is sent to both {} and {}", c.objects()[a], d.objects()[old], d.objects()[b]),
            )),
            _ => Ok(()),
        }
    };
    for a in &spec.obj {
        let x = c
            .object_by_name(&a.from.text)
            .ok_or_else(|| at(file, a.from.pos, format!("unknown object '{}'", a.from.text)))?;
        let y = d
            .object_by_name(&a.to.text)
            .ok_or_else(|| at(file, a.to.pos, format!("unknown object '{}'", a.to.text)))?;
        set_obj(x, y, a.from.pos)?;
    }
    let mut mor: Vec<Option<usize>> = vec![None; c.morphism_count()];
    for a in &spec.gen {
        let f = cat_morphism(file, src, c, &a.from)?;
        let g = cat_morphism(file, tgt, d, &a.to)?;
        set_obj(c.morphism(f).src, d.morphism(g).src, a.from.pos)?;
        set_obj(c.morphism(f).tgt, d.morphism(g).tgt, a.from.pos)?;
        if mor[f].replace(g).is_some_and(|old| old != g) {
            return Err(at(file, a.from.pos, format!("'{}' is sent to two morphisms", a.from.text)));
        }
    }
    let obj: Vec<usize> = obj
        .into_iter()
        .enumerate()
        .map(|(a, y)| y.ok_or_else(|| CliError::Invalid(format!("no image for object {}", c.objects()[a]))))
        .collect::<CliResult<_>>()?;
    for (a, &b) in obj.iter().enumerate() {
        let i = c.identity(a);
        if mor[i].is_none() {
            mor[i] = Some(d.identity(b));
        }
    }
    let pairs: Vec<(usize, usize)> = c.composable_pairs().collect();
    loop {
        let mut changed = false;
        for &(f, g) in &pairs {
            let h = c.comp(f, g);
            if mor[h].is_none() {
                if let (Some(x), Some(y)) = (mor[f], mor[g]) {
                    mor[h] = Some(d.try_comp(x, y).ok_or_else(|| {
                        CliError::Invalid(format!(
                            "images of {} and {} are not composable",
                            c.morphism(f).name,
                            c.morphism(g).name
                        ))
                    })?);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    for (f, y) in mor.iter_mut().enumerate() {
        if y.is_none() {
            if let [only] = d.hom(obj[c.morphism(f).src], obj[c.morphism(f).tgt]) {
                *y = Some(*only);
            }
        }
    }
    let mor: Vec<usize> = mor
        .into_iter()
        .enumerate()
        .map(|(f, y)| y.ok_or_else(|| CliError::Invalid(format!("no image for morphism {}", c.morphism(f).name))))
        .collect::<CliResult<_>>()?;
    let functor = CatFunctor {
        obj_map: obj,
        mor_map: mor,
    };
    functor.check(c, d).map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(functor)
}

/// Builds a simplicial map from level assignments; images of degenerate
/// simplices follow from the images of the simplices they degenerate.
fn sset_map_from_spec(file: &str, x: &TruncSSet, y: &TruncSSet, spec: &MapSpec, pos: Pos) -> CliResult<SimplicialMap> {
    if !spec.obj.is_empty() || !spec.gen.is_empty() {
        return Err(at(file, pos, "simplicial maps are given by 'level' assignments"));
    }
    if x.dim() != y.dim() {
        return Err(at(file, pos, "simplicial sets of different dimensions"));
    }
    let dim = x.dim();
    let mut comp: Vec<Vec<Option<usize>>> = (0..=dim).map(|k| vec![None; x.level_size(k)]).collect();
    for (k, assigns) in &spec.levels {
        let k = *k;
        if k > dim {
            return Err(at(file, pos, format!("level {k} exceeds dimension {dim}")));
        }
        for a in assigns {
            let s = x
                .simplex_by_name(k, &a.from.text)
                .ok_or_else(|| at(file, a.from.pos, format!("'{}' is not a {k}-simplex", a.from.text)))?;
            let t = y
                .simplex_by_name(k, &a.to.text)
                .ok_or_else(|| at(file, a.to.pos, format!("'{}' is not a {k}-simplex", a.to.text)))?;
            if comp[k][s].replace(t).is_some_and(|old| old != t) {
                return Err(at(file, a.from.pos, format!("'{}' is sent to two simplices", a.from.text)));
            }
        }
    }
    for k in 1..=dim {
        for s in 0..x.level_size(k) {
            if comp[k][s].is_some() {
                continue;
            }
            for i in 0..k {
                let z = x.face(k, i, s);
                if x.degen(k - 1, i, z) == s {
                    if let Some(w) = comp[k - 1][z] {
                        comp[k][s] = Some(y.degen(k - 1, i, w));
                        break;
                    }
                }
            }
        }
    }
    let components = comp
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            c.into_iter()
                .enumerate()
                .map(|(s, t)| t.ok_or_else(|| CliError::Invalid(format!("no image for {}", x.name(k, s)))))
                .collect()
        })
        .collect::<CliResult<_>>()?;
    let m = SimplicialMap { components };
    m.validate(x, y).map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(m)
}

/// Invariant data of a binding: level counts, action tables, composition
/// tables and normal-form samples.
pub fn fingerprint(b: &Binding) -> Value {
    match b {
        Binding::Category(c) => {
            let table = c.finite().map(cat_fingerprint);
            let presented = c.presented().map(|fp| {
                let mut samples = Vec::new();
                for len in 1..=3 {
                    for p in paths_of_length(fp, len) {
                        let nf = fp.normalize(&p);
                        samples.push(json!([p.edges, nf.edges]));
                    }
                }
                json!({
                    "status": format!("{:?}", fp.status()),
                    "generators": fp.edge_count(),
                    "normal_forms": samples,
                })
            });
            json!({ "kind": "category", "objects": c.objects(), "finite": table, "presented": presented })
        }
        Binding::SSet(x) => sset_fingerprint(x),
        Binding::Diagram(d) => match &d.kind {
            DiagramKind::Cat(cd) => json!({
                "kind": "diagram",
                "shape": cat_fingerprint(&cd.shape),
                "nodes": cd.nodes.iter().map(cat_fingerprint).collect::<Vec<_>>(),
                "maps": cd.maps.iter().map(|f| json!([f.obj_map, f.mor_map])).collect::<Vec<_>>(),
            }),
            DiagramKind::SSet(sd) => json!({
                "kind": "diagram",
                "shape": cat_fingerprint(&sd.shape),
                "nodes": sd.nodes.iter().map(sset_fingerprint).collect::<Vec<_>>(),
                "maps": sd.maps.iter().map(|f| json!(f.components)).collect::<Vec<_>>(),
            }),
        },
        Binding::Cocone(c) => json!({
            "kind": "cocone",
            "apex": cat_fingerprint(&c.cocone.apex),
            "legs": c.cocone.legs.iter().map(|f| json!([f.obj_map, f.mor_map])).collect::<Vec<_>>(),
        }),
    }
}

fn cat_fingerprint(c: &FinCat) -> Value {
    let table: Vec<[usize; 3]> = c.composable_pairs().map(|(f, g)| [f, g, c.comp(f, g)]).collect();
    json!({
        "objects": c.object_count(),
        "morphisms": c.morphisms().iter().map(|m| json!([m.src, m.tgt])).collect::<Vec<_>>(),
        "identities": c.identities(),
        "table": table,
    })
}

fn sset_fingerprint(x: &TruncSSet) -> Value {
    let dim = x.dim();
    let faces: Vec<Vec<Vec<usize>>> = (1..=dim)
        .map(|k| (0..=k).map(|i| (0..x.level_size(k)).map(|s| x.face(k, i, s)).collect()).collect())
        .collect();
    let degens: Vec<Vec<Vec<usize>>> = (0..dim)
        .map(|k| (0..=k).map(|i| (0..x.level_size(k)).map(|s| x.degen(k, i, s)).collect()).collect())
        .collect();
    json!({ "kind": "sset", "levels": x.level_sizes(), "faces": faces, "degens": degens })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hocat::fincat::{find_isomorphism, fin_ordinal};

    fn ws(text: &str) -> Workspace {
        let mut w = Workspace::new(Settings::default());
        w.add_text("test", text).unwrap();
        w
    }

    #[test]
    fn walking_arrow() {
        let mut w = ws("category fin2 {\n objects: 0 1\n arrows: l: 0 -> 1\n}");
        let c = w.finite_category("fin2").unwrap();
        assert!(find_isomorphism(&c, &fin_ordinal(1), DEFAULT_GUARD).unwrap().is_some());
    }

    #[test]
    fn empty_category() {
        let mut w = ws("category e {\n objects:\n}");
        let c = w.finite_category("e").unwrap();
        assert_eq!((c.object_count(), c.morphism_count()), (0, 0));
    }

    #[test]
    fn table_categories() {
        let mut w = ws("category z2 {\n objects: *\n arrows: t: * -> *\n table: t.t = id(*)\n}");
        assert_eq!(w.finite_category("z2").unwrap().morphism_count(), 2);
        let mut w = ws("category bad {\n objects: *\n arrows: t: * -> *\n table: t.t = t\n}");
        assert!(w.get("bad").is_ok());
        let mut w = ws("category bad {\n objects: *\n arrows: t: * -> *\n}\ncategory worse {\n objects: *\n arrows: t: * -> *\n table:\n}");
        assert!(matches!(w.get("worse"), Err(CliError::Invalid(_))));
    }

    #[test]
    fn broken_simplicial_identity_is_named() {
        let text = "sset x dim 1 {\n 0: a b\n 1: aa bb e\n face 1 0: aa -> a, bb -> b, e -> a\n face 1 1: aa -> b, bb -> b, e -> a\n degen 0 0: a -> aa, b -> bb\n}";
        let err = ws(text).get("x").unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("simplicial identity"), "{err}");
    }

    #[test]
    fn unknown_references_have_positions() {
        let err = ws("category c {\n objects: a\n arrows: f: a -> b\n}").get("c").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().starts_with("test:3:"), "{err}");
        let err = ws("diagram d shape nowhere {\n}").get("d").unwrap_err();
        assert!(err.to_string().starts_with("test:1:"), "{err}");
    }

    #[test]
    fn duplicate_and_cyclic_names() {
        let mut w = Workspace::new(Settings::default());
        w.add_text("a", "category c {\n}").unwrap();
        assert!(w.add_text("b", "category c {\n}").is_err());
        let mut w = ws("diagram d shape d {\n}");
        assert!(w.get("d").is_err());
    }
}
