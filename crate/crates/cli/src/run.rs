//! Command dispatch. Every command produces a [`Report`]: an exit code, a
//! text rendering and a JSON value.

use crate::emit::binding_dot;
use crate::parse::{Pos, Word};
use crate::workspace::{fingerprint, path_in, finite_morphism, Binding, CatValue, CliError, CliResult, DiagramKind, Settings, Workspace, SCHEMA};
use clap::{Parser, Subcommand};
use hocat::colimit::{colim_cat, colim_sset, compare_with_direct, direct_presentation, materialize_cocone, verify_colimit_cat};
use hocat::fincat::{find_isomorphism, product, FinCat, DEFAULT_GUARD};
use hocat::hofunctor::{check_hom_bijection, check_triangles_nerve_adj, counit, ho, HomotopyCategory};
use hocat::nerve::{check_coskeletal2, check_strict_segal, nerve, nerve2};
use hocat::quiverkit::{check_triangle_identities_reflquiv, Path};
use hocat::rewrite::{EqVerdict, FpCat, DEFAULT_BOUND, DEFAULT_FUEL};
use hocat::simplex::MAX_DIM;
use hocat::sset::TruncSSet;
use hocat::{Exec, Verdict};
use serde_json::{json, Value};
use std::fmt::Write;
use std::path::{Path as FsPath, PathBuf};

pub const CORPUS_ENV: &str = "HOCAT_CORPUS";

#[derive(Debug, Parser)]
#[command(name = "hocat", version, about = "Finite categories, truncated simplicial sets and their homotopy categories")]
pub struct Cli {
    /// Critical-pair budget for completion.
    #[arg(long, global = true, default_value_t = DEFAULT_FUEL)]
    pub fuel: usize,
    /// Node budget for enumerations.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD)]
    pub guard: u64,
    /// Longest normal form considered when materializing a presentation.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    pub bound: usize,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Run enumerations on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Input files; without any, the corpus directory is loaded.
    #[arg(short = 'f', long = "file", global = true)]
    pub files: Vec<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Level sizes and simplices of the nerve of a category.
    Nerve {
        name: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Presentation of the homotopy category of a simplicial set.
    Ho { name: String },
    /// Colimit of a diagram, with its legs and probe verdicts.
    Colimit { name: String },
    /// Product of two finite categories.
    Product { a: String, b: String },
    /// Segal, coskeletality and adjunction checks.
    #[command(subcommand)]
    Check(Check),
    /// Decide equality of two paths.
    Eq {
        name: String,
        lhs: String,
        rhs: String,
        /// Print the rewriting traces to normal form.
        #[arg(long)]
        trace: bool,
    },
    /// Render a binding as DOT or JSON.
    #[command(subcommand)]
    Export(Export),
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// Strict Segal condition at every level, or at one.
    Segal {
        name: String,
        #[arg(long)]
        level: Option<usize>,
    },
    /// 2-coskeletality of a 4-truncated simplicial set.
    Coskeletal { name: String },
    /// Triangle identities, hom bijections and counits over a corpus.
    Adjunction {
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Triangle identities of the nerve adjunction at one pair.
    Triangles { a: String, x: String },
}

#[derive(Debug, Subcommand)]
pub enum Export {
    /// Graphviz rendering.
    Dot { name: String },
    /// Self-contained JSON document that loads back with `-f`.
    Json { name: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub exit: i32,
    pub text: String,
    pub json: Value,
}

impl Report {
    fn new(verdict: &Verdict, text: String, data: Value) -> Self {
        Report {
            exit: exit_of(verdict),
            text,
            json: json!({ "verdict": verdict, "data": data }),
        }
    }

    fn plain(text: String, data: Value) -> Self {
        Report {
            exit: 0,
            text,
            json: json!({ "data": data }),
        }
    }

    /// The output to print, with the versioned envelope for JSON.
    pub fn render(&self, command: &str, as_json: bool) -> String {
        if !as_json {
            return self.text.clone();
        }
        let mut v = json!({ "schema": SCHEMA, "command": command, "exit": self.exit });
        if let (Value::Object(env), Value::Object(body)) = (&mut v, &self.json) {
            env.extend(body.clone());
        }
        let mut s = serde_json::to_string_pretty(&v).unwrap_or_default();
        s.push('\n');
        s
    }
}

pub fn exit_of(v: &Verdict) -> i32 {
    match v {
        Verdict::Pass => 0,
        Verdict::Fail(_) => 1,
        Verdict::Inconclusive(_) => 3,
    }
}

pub fn error_report(e: &CliError) -> Report {
    Report {
        exit: e.exit_code(),
        text: format!("error: {e}\n"),
        json: json!({ "error": e.to_string() }),
    }
}

impl Cli {
    pub fn settings(&self) -> Settings {
        Settings {
            fuel: self.fuel,
            guard: self.guard,
            bound: self.bound,
            exec: if self.sequential { Exec::Sequential } else { Exec::default() },
        }
    }

    pub fn command_name(&self) -> String {
        match &self.command {
            Command::Nerve { .. } => "nerve".into(),
            Command::Ho { .. } => "ho".into(),
            Command::Colimit { .. } => "colimit".into(),
            Command::Product { .. } => "product".into(),
            Command::Check(c) => match c {
                Check::Segal { .. } => "check segal".into(),
                Check::Coskeletal { .. } => "check coskeletal".into(),
                Check::Adjunction { .. } => "check adjunction".into(),
                Check::Triangles { .. } => "check triangles".into(),
            },
            Command::Eq { .. } => "eq".into(),
            Command::Export(Export::Dot { .. }) => "export dot".into(),
            Command::Export(Export::Json { .. }) => "export json".into(),
        }
    }
}

/// The corpus directory: the environment override, else `./corpus`.
pub fn corpus_dir() -> PathBuf {
    std::env::var_os(CORPUS_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("corpus"))
}

/// Loads the input files, or the corpus when none are given.
pub fn load(cli: &Cli) -> CliResult<Workspace> {
    let mut ws = Workspace::new(cli.settings());
    if cli.files.is_empty() {
        let dir = corpus_dir();
        if dir.is_dir() {
            ws.add_dir(&dir)?;
        }
    } else {
        for f in &cli.files {
            ws.add_file(f)?;
        }
    }
    Ok(ws)
}

/// A name is a binding, or a file whose last binding of the wanted kind is
/// taken.
fn resolve(ws: &mut Workspace, name: &str, kinds: &[&str]) -> CliResult<String> {
    if ws.contains(name) {
        let kind = ws.get(name)?.kind();
        if !kinds.contains(&kind) {
            return Err(CliError::Usage(format!("'{name}' is a {kind}, not a {}", kinds.join(" or "))));
        }
        return Ok(name.to_string());
    }
    let as_path = FsPath::new(name);
    let path = if as_path.is_file() {
        Some(as_path.to_path_buf())
    } else {
        let p = corpus_dir().join(name);
        p.is_file().then_some(p)
    };
    let Some(path) = path else {
        return Err(CliError::Usage(format!("'{name}' is neither a binding nor a file")));
    };
    let names = ws.add_file(&path)?;
    for n in names.iter().rev() {
        if kinds.contains(&ws.get(n)?.kind()) {
            return Ok(n.clone());
        }
    }
    Err(CliError::Usage(format!("{name} binds no {}", kinds.join(" or "))))
}

/// Runs a parsed command line against a workspace.
pub fn run(cli: &Cli, ws: &mut Workspace) -> Report {
    execute(cli, ws).unwrap_or_else(|e| error_report(&e))
}

fn execute(cli: &Cli, ws: &mut Workspace) -> CliResult<Report> {
    let s = ws.settings;
    match &cli.command {
        Command::Nerve { name, dim } => {
            let n = resolve(ws, name, &["category"])?;
            if *dim > MAX_DIM {
                return Err(CliError::Usage(format!("--dim is at most {MAX_DIM}")));
            }
            let c = ws.finite_category(&n)?;
            cmd_nerve(&n, &c, *dim)
        }
        Command::Ho { name } => {
            let n = resolve(ws, name, &["sset", "category"])?;
            let x = sset_of(ws, &n, 2)?;
            cmd_ho(&n, &x, s.fuel)
        }
        Command::Colimit { name } => {
            let n = resolve(ws, name, &["diagram"])?;
            cmd_colimit(ws, &n)
        }
        Command::Product { a, b } => {
            let a = resolve(ws, a, &["category"])?;
            let b = resolve(ws, b, &["category"])?;
            let (c, d) = (ws.finite_category(&a)?, ws.finite_category(&b)?);
            cmd_product(&a, &b, &c, &d)
        }
        Command::Check(Check::Segal { name, level }) => {
            let n = resolve(ws, name, &["sset", "category"])?;
            let x = sset_of(ws, &n, MAX_DIM)?;
            let levels: Vec<usize> = match level {
                Some(k) => vec![*k],
                None => (2..=x.dim()).collect(),
            };
            let mut text = String::new();
            let mut verdicts = Vec::new();
            for k in levels {
                let v = check_strict_segal(&x, k)?;
                let _ = writeln!(text, "segal {n} level {k}: {v}");
                verdicts.push((k, v));
            }
            let all = Verdict::all(verdicts.iter().map(|(_, v)| v.clone()));
            let levels: Vec<Value> = verdicts.iter().map(|(k, v)| json!({ "level": k, "verdict": v })).collect();
            Ok(Report::new(&all, text, json!({ "name": n, "levels": levels })))
        }
        Command::Check(Check::Coskeletal { name }) => {
            let n = resolve(ws, name, &["sset", "category"])?;
            let x = sset_of(ws, &n, MAX_DIM)?;
            let v = check_coskeletal2(&x, s.guard, s.exec)?;
            Ok(Report::new(&v, format!("coskeletal {n}: {v}\n"), json!({ "name": n })))
        }
        Command::Check(Check::Adjunction { corpus }) => match corpus {
            Some(dir) => {
                let mut other = Workspace::new(s);
                other.add_dir(dir)?;
                cmd_adjunction(&mut other)
            }
            None => cmd_adjunction(ws),
        },
        Command::Check(Check::Triangles { a, x }) => {
            let a = resolve(ws, a, &["category"])?;
            let xn = resolve(ws, x, &["sset", "category"])?;
            let c = ws.finite_category(&a)?;
            let x = sset_of(ws, &xn, 2)?;
            let r = check_triangles_nerve_adj(&x, &c, s.fuel, s.bound)?;
            let q = check_triangle_identities_reflquiv(&c, &x.one_truncation()?, s.fuel);
            let v = Verdict::all([r.verdict(), q.at_category.clone(), q.at_quiver.clone()]);
            let text = format!(
                "triangle at nerve {a}: {}\ntriangle at ho {xn}: {}\nreflexive triangle at {a}: {}\nreflexive triangle at {xn}: {}\n",
                r.at_nerve, r.at_ho, q.at_category, q.at_quiver
            );
            Ok(Report::new(&v, text, json!({ "nerve_adjunction": r, "reflexive_adjunction": q })))
        }
        Command::Eq { name, lhs, rhs, trace } => {
            let n = resolve(ws, name, &["category"])?;
            cmd_eq(ws, &n, lhs, rhs, *trace)
        }
        Command::Export(Export::Dot { name }) => {
            let n = resolve(ws, name, &["category", "sset", "diagram", "cocone"])?;
            let b = ws.get(&n)?;
            let dot = binding_dot(&n, &b);
            Ok(Report::plain(dot.clone(), json!({ "dot": dot })))
        }
        Command::Export(Export::Json { name }) => {
            let n = resolve(ws, name, &["category", "sset", "diagram", "cocone"])?;
            let doc = ws.export(&n)?;
            let v = serde_json::to_value(&doc).map_err(|e| CliError::Invalid(e.to_string()))?;
            let mut text = serde_json::to_string_pretty(&v).unwrap_or_default();
            text.push('\n');
            Ok(Report {
                exit: 0,
                text,
                json: json!({ "document": v }),
            })
        }
    }
}

/// A simplicial set binding, or the nerve of a finite category, truncated
/// to at most `dim`.
fn sset_of(ws: &mut Workspace, name: &str, dim: usize) -> CliResult<TruncSSet> {
    let b = ws.get(name)?;
    match &*b {
        Binding::SSet(x) => Ok(if x.dim() > dim { x.truncate(dim)? } else { x.clone() }),
        Binding::Category(_) => Ok(nerve(&ws.finite_category(name)?, dim)?.sset),
        other => Err(CliError::Usage(format!("'{name}' is a {}", other.kind()))),
    }
}

fn list(names: &[String], limit: usize) -> String {
    if names.len() <= limit {
        names.join(" ")
    } else {
        format!("{} ... ({} more)", names[..limit].join(" "), names.len() - limit)
    }
}

fn cmd_nerve(name: &str, c: &FinCat, dim: usize) -> CliResult<Report> {
    let n = nerve(c, dim)?;
    let mut text = format!("nerve of {name} up to level {dim}\n");
    for k in 0..=dim {
        let _ = writeln!(text, "level {k}: {} | {}", n.sset.level_size(k), list(n.sset.names(k), 12));
    }
    Ok(Report::plain(
        text,
        json!({ "name": name, "level_sizes": n.sset.level_sizes(), "levels": (0..=dim).map(|k| n.sset.names(k)).collect::<Vec<_>>() }),
    ))
}

fn presentation_json(fp: &FpCat) -> Value {
    let ess = fp.essential();
    let word = |w: &[usize]| w.iter().map(|&e| fp.generators()[e].name.clone()).collect::<Vec<_>>();
    json!({
        "objects": fp.objects(),
        "generators": ess.generators.iter().map(|&g| {
            let e = &fp.generators()[g];
            json!({ "name": e.name, "src": fp.objects()[e.src], "tgt": fp.objects()[e.tgt] })
        }).collect::<Vec<_>>(),
        "relations": ess.relations.iter().map(|(l, r)| json!([word(l), word(r)])).collect::<Vec<_>>(),
        "status": format!("{:?}", fp.status()),
        "essential_objects": ess.objects,
    })
}

fn status_verdict(fp: &FpCat) -> Verdict {
    if fp.is_complete() {
        Verdict::Pass
    } else {
        Verdict::Inconclusive(format!("completion stopped: {:?}", fp.status()))
    }
}

fn cmd_ho(name: &str, x: &TruncSSet, fuel: usize) -> CliResult<Report> {
    let h: HomotopyCategory = ho(x, fuel)?;
    let ess = h.fp.essential();
    let text = format!(
        "homotopy category of {name}\n{}\nsize: {} objects, {} generators, {} relations\n",
        h.fp,
        ess.objects,
        ess.generators.len(),
        ess.relations.len()
    );
    Ok(Report::new(&status_verdict(&h.fp), text, json!({ "name": name, "presentation": presentation_json(&h.fp) })))
}

fn path_text(fp: &FpCat, p: &Path) -> String {
    p.display(|e| fp.generators()[e].name.clone(), |v| fp.objects()[v].clone())
}

fn cmd_colimit(ws: &mut Workspace, name: &str) -> CliResult<Report> {
    let s = ws.settings;
    let b = ws.get(name)?;
    let Binding::Diagram(d) = &*b else { unreachable!() };
    match &d.kind {
        DiagramKind::SSet(sd) => {
            let c = colim_sset(sd)?;
            let mut text = format!("colimit of {name}\n");
            for k in 0..=c.sset.dim() {
                let _ = writeln!(text, "level {k}: {} | {}", c.sset.level_size(k), list(c.sset.names(k), 12));
            }
            for (j, leg) in c.legs.iter().enumerate() {
                let images: Vec<String> = (0..sd.nodes[j].level_size(0))
                    .map(|v| format!("{} -> {}", sd.nodes[j].name(0, v), c.sset.name(0, leg.components[0][v])))
                    .collect();
                let _ = writeln!(text, "leg {}: {}", sd.shape.objects()[j], images.join(", "));
            }
            Ok(Report::plain(
                text,
                json!({ "name": name, "level_sizes": c.sset.level_sizes(), "legs": c.legs }),
            ))
        }
        DiagramKind::Cat(cd) => {
            let c = colim_cat(cd, s.fuel)?;
            let fp = &c.ho.fp;
            let ess = fp.essential();
            let mut text = format!("colimit of {name}\n{fp}\n");
            let _ = writeln!(
                text,
                "size: {} objects, {} generators, {} relations",
                ess.objects,
                ess.generators.len(),
                ess.relations.len()
            );
            let mut legs = Vec::new();
            for (j, node) in cd.nodes.iter().enumerate() {
                let obj = &cd.shape.objects()[j];
                for f in 0..node.morphism_count() {
                    if node.is_identity(f) {
                        continue;
                    }
                    let img = path_text(fp, &c.legs[j].gen_map[f]);
                    let _ = writeln!(text, "leg {obj}: q({}) = {img}", node.morphism(f).name);
                    legs.push(json!({ "node": obj, "morphism": node.morphism(f).name, "image": img }));
                }
            }
            let mut verdicts = vec![("complete".to_string(), status_verdict(fp))];
            verdicts.push(("cocone".into(), c.check_cocone(cd)));
            let direct = direct_presentation(cd, s.fuel)?;
            verdicts.push(("direct presentation".into(), compare_with_direct(cd, &c, &direct, 5)));
            let probes = ws.cocones_over(name)?;
            let cocones: Vec<_> = probes.iter().map(|(_, p)| p.clone()).collect();
            for ((pn, _), v) in probes.iter().zip(verify_colimit_cat(cd, &c, &cocones, s.guard, s.exec)?) {
                verdicts.push((format!("probe {pn}"), v));
            }
            let mut size = Value::Null;
            if fp.is_complete() {
                match materialize_cocone(cd, &c, s.bound) {
                    Ok(m) => {
                        let _ = writeln!(text, "finite: {} objects, {} morphisms", m.apex.object_count(), m.apex.morphism_count());
                        size = json!([m.apex.object_count(), m.apex.morphism_count()]);
                    }
                    Err(hocat::Error::NotFinite { .. }) => text.push_str("finite: no\n"),
                    Err(e) => return Err(e.into()),
                }
            }
            for (what, v) in &verdicts {
                let _ = writeln!(text, "{what}: {v}");
            }
            let all = Verdict::all(verdicts.iter().map(|(_, v)| v.clone()));
            Ok(Report::new(
                &all,
                text,
                json!({
                    "name": name,
                    "presentation": presentation_json(fp),
                    "legs": legs,
                    "finite": size,
                    "checks": verdicts.iter().map(|(w, v)| json!({ "check": w, "verdict": v })).collect::<Vec<_>>(),
                }),
            ))
        }
    }
}

fn cmd_product(a: &str, b: &str, c: &FinCat, d: &FinCat) -> CliResult<Report> {
    let p = product(c, d);
    p.left.check(&p.cat, c)?;
    p.right.check(&p.cat, d)?;
    let text = format!(
        "product of {a} and {b}\nobjects: {}\nmorphisms: {}\n",
        p.cat.objects().join(" "),
        p.cat.morphism_count()
    );
    Ok(Report::plain(
        text,
        json!({ "objects": p.cat.objects(), "morphisms": p.cat.morphism_count(), "category": p.cat }),
    ))
}

fn arg_word(text: &str) -> Word {
    Word {
        pos: Pos { line: 1, col: 1 },
        text: text.trim().to_string(),
    }
}

fn cmd_eq(ws: &mut Workspace, name: &str, lhs: &str, rhs: &str, trace: bool) -> CliResult<Report> {
    let b = ws.get(name)?;
    let Binding::Category(cat) = &*b else { unreachable!() };
    let (l, r) = (arg_word(lhs), arg_word(rhs));
    let (verdict, mut text, data) = match &cat.value {
        CatValue::Presented { fp, .. } => {
            let p = path_in("argument", cat, &l)?;
            let q = path_in("argument", cat, &r)?;
            let v = fp.eq(&p, &q)?;
            let mut text = String::new();
            if trace {
                for (label, x) in [("lhs", &p), ("rhs", &q)] {
                    let (nf, t) = fp.normalize_traced(x);
                    let _ = writeln!(text, "{label}: {} => {}", path_text(fp, x), path_text(fp, &nf));
                    for step in &t.steps {
                        let _ = writeln!(text, "  at {} rule {}", step.position, step.rule);
                    }
                }
            }
            let nf = |x: &Path| path_text(fp, &fp.normalize(x));
            (v, text, json!({ "lhs": nf(&p), "rhs": nf(&q) }))
        }
        CatValue::Finite(c) => {
            let f = finite_morphism("argument", c, &l)?;
            let g = finite_morphism("argument", c, &r)?;
            let v = if f == g { EqVerdict::Equal } else { EqVerdict::NotEqual };
            let text = if trace {
                format!("lhs: {} => {}\nrhs: {} => {}\n", l.text, c.morphism(f).name, r.text, c.morphism(g).name)
            } else {
                String::new()
            };
            (v, text, json!({ "lhs": c.morphism(f).name, "rhs": c.morphism(g).name }))
        }
    };
    let verdict = match verdict {
        EqVerdict::Equal => Verdict::Pass,
        EqVerdict::NotEqual => Verdict::Fail("not equal".into()),
        EqVerdict::Unknown(r) => Verdict::Inconclusive(format!("{r:?}")),
    };
    let word = match &verdict {
        Verdict::Pass => "equal",
        Verdict::Fail(_) => "not equal",
        Verdict::Inconclusive(_) => "unknown",
    };
    text.push_str(&format!("{lhs} {word} {rhs}\n"));
    Ok(Report::new(&verdict, text, data))
}

/// One line of the adjunction sweep.
#[derive(Debug, Clone)]
struct Instance {
    check: &'static str,
    subject: String,
    verdict: Verdict,
}

fn cmd_adjunction(ws: &mut Workspace) -> CliResult<Report> {
    let s = ws.settings;
    let mut cats: Vec<(String, FinCat)> = Vec::new();
    let mut xs: Vec<(String, TruncSSet)> = Vec::new();
    for n in ws.names().to_vec() {
        let b = ws.get(&n)?;
        match &*b {
            Binding::Category(c) => {
                if let Some(f) = c.finite() {
                    cats.push((n.clone(), f.clone()));
                }
            }
            Binding::SSet(x) if x.dim() >= 2 => xs.push((n.clone(), x.truncate(2)?)),
            _ => {}
        }
    }
    if cats.is_empty() {
        return Ok(Report::new(
            &Verdict::Inconclusive("no finite categories to check".into()),
            "no finite categories to check\n".into(),
            json!({ "instances": [] }),
        ));
    }
    for (n, c) in &cats {
        xs.push((format!("N({n})"), nerve2(c)?.sset));
    }
    let mut instances = Vec::new();
    for (n, c) in &cats {
        let v = match counit(c, &nerve2(c)?, s.fuel) {
            Ok(e) if e.is_iso(c) => Verdict::Pass,
            Ok(_) => Verdict::Fail("counit is not an isomorphism".into()),
            Err(e) => Verdict::Fail(e.to_string()),
        };
        instances.push(Instance {
            check: "counit",
            subject: n.clone(),
            verdict: v,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..xs.len()).flat_map(|i| (0..cats.len()).map(move |j| (i, j))).collect();
    let results = s.exec.map(&pairs, |&(i, j)| {
        let (xn, x) = &xs[i];
        let (cn, c) = &cats[j];
        let subject = format!("{xn}, {cn}");
        let triangles = match check_triangles_nerve_adj(x, c, s.fuel, s.bound) {
            Ok(r) => r.verdict(),
            Err(e) => error_verdict(e),
        };
        let bijection = match check_hom_bijection(x, c, s.fuel, s.guard, Exec::Sequential) {
            Ok(r) => r.verdict,
            Err(e) => error_verdict(e),
        };
        let reflexive = match x.one_truncation() {
            Ok(q) => {
                let r = check_triangle_identities_reflquiv(c, &q, s.fuel);
                Verdict::all([r.at_category, r.at_quiver])
            }
            Err(e) => error_verdict(e),
        };
        [
            Instance {
                check: "triangles",
                subject: subject.clone(),
                verdict: triangles,
            },
            Instance {
                check: "hom bijection",
                subject: subject.clone(),
                verdict: bijection,
            },
            Instance {
                check: "reflexive triangles",
                subject,
                verdict: reflexive,
            },
        ]
    });
    instances.extend(results.into_iter().flatten());
    let mut text = String::new();
    for i in &instances {
        let _ = writeln!(text, "{} ({}): {}", i.check, i.subject, i.verdict);
    }
    let passed = instances.iter().filter(|i| i.verdict.is_pass()).count();
    let _ = writeln!(text, "{passed}/{} instances pass", instances.len());
    let all = Verdict::all(instances.iter().map(|i| i.verdict.clone()));
    Ok(Report::new(
        &all,
        text,
        json!({
            "instances": instances.iter().map(|i| json!({ "check": i.check, "subject": i.subject, "verdict": i.verdict })).collect::<Vec<_>>(),
            "passed": passed,
            "total": instances.len(),
        }),
    ))
}

fn error_verdict(e: hocat::Error) -> Verdict {
    match e {
        hocat::Error::GuardExceeded { .. } | hocat::Error::Incomplete | hocat::Error::NotFinite { .. } => {
            Verdict::Inconclusive(e.to_string())
        }
        e => Verdict::Fail(e.to_string()),
    }
}

/// Fingerprints of every binding, for round-trip comparisons.
pub fn fingerprints(ws: &mut Workspace) -> CliResult<Vec<(String, Value)>> {
    let mut out = Vec::new();
    for n in ws.names().to_vec() {
        let b = ws.get(&n)?;
        out.push((n, fingerprint(&b)));
    }
    Ok(out)
}

/// Whether a finite category is isomorphic to another; used by the corpus
/// expectations.
pub fn isomorphic(c: &FinCat, d: &FinCat) -> CliResult<bool> {
    Ok(find_isomorphism(c, d, DEFAULT_GUARD)?.is_some())
}

