//! Word problem for finitely presented categories.
//!
//! A presentation is a quiver of generators with path relations. Relations
//! are oriented by the length-lexicographic order on edge sequences (longer
//! words rewrite to shorter ones, ties broken by edge ids) and completed
//! Knuth-Bendix style under a fuel budget. Equality is three-valued: a
//! verdict other than `Unknown` is always certified.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fincat::{FinCat, ModelProblem, Morphism};
use crate::quiverkit::{Edge, Graph, Path};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

/// Default completion budget, in critical-pair steps.
pub const DEFAULT_FUEL: usize = 10_000;

/// Default word-length bound for [`FpCat::to_fincat`].
pub const DEFAULT_BOUND: usize = 12;

/// Generators and relations, before orientation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub objects: Vec<String>,
    pub generators: Vec<Edge>,
    pub relations: Vec<(Path, Path)>,
}

impl Graph for Presentation {
    fn vertex_count(&self) -> usize {
        self.objects.len()
    }
    fn edge_count(&self) -> usize {
        self.generators.len()
    }
    fn edge_ends(&self, e: usize) -> (usize, usize) {
        (self.generators[e].src, self.generators[e].tgt)
    }
}

/// Length-lexicographic comparison of edge words.
pub fn length_lex(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub id: usize,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompletionStatus {
    Complete,
    /// Fuel ran out after an unjoined critical pair was found.
    NonConfluent,
    /// Fuel ran out before every critical pair was examined.
    FuelExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnknownReason {
    FuelExhausted,
    NonConfluent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EqVerdict {
    Equal,
    NotEqual,
    Unknown(UnknownReason),
}

/// One rewrite step: rule `rule` applied at edge offset `position`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub position: usize,
    pub rule: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
}

impl Trace {
    /// Line format: `position rule` per step.
    pub fn to_text(&self) -> String {
        self.steps
            .iter()
            .map(|s| format!("{} {}\n", s.position, s.rule))
            .collect()
    }

    pub fn parse(text: &str) -> Result<Trace> {
        let mut steps = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(position)), Some(Ok(rule)), None) => steps.push(TraceStep { position, rule }),
                _ => return Err(Error::Malformed(format!("trace line {}: expected `position rule`", n + 1))),
            }
        }
        Ok(Trace { steps })
    }
}

/// A finitely presented category with its oriented rewriting system.
///
/// Frozen after construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpCat {
    presentation: Presentation,
    rules: Vec<Rule>,
    status: CompletionStatus,
    fuel: usize,
    steps_used: usize,
}

impl Graph for FpCat {
    fn vertex_count(&self) -> usize {
        self.presentation.objects.len()
    }
    fn edge_count(&self) -> usize {
        self.presentation.generators.len()
    }
    fn edge_ends(&self, e: usize) -> (usize, usize) {
        self.presentation.edge_ends(e)
    }
}

fn contains(hay: &[usize], needle: &[usize]) -> bool {
    !needle.is_empty() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Leftmost-innermost redex: the earliest-ending match, shortest lhs first,
/// then lowest rule id.
fn find_redex<'r>(rules: impl Iterator<Item = &'r Rule> + Clone, w: &[usize]) -> Option<(usize, &'r Rule)> {
    for end in 1..=w.len() {
        let mut best: Option<&Rule> = None;
        for r in rules.clone() {
            let k = r.lhs.len();
            if k <= end && w[end - k..end] == r.lhs[..] {
                best = match best {
                    Some(b) if (b.lhs.len(), b.id) <= (k, r.id) => Some(b),
                    _ => Some(r),
                };
            }
        }
        if let Some(r) = best {
            return Some((end - r.lhs.len(), r));
        }
    }
    None
}

fn rewrite_at(w: &[usize], pos: usize, rule: &Rule) -> Vec<usize> {
    let mut out = Vec::with_capacity(w.len() + rule.rhs.len() - rule.lhs.len());
    out.extend_from_slice(&w[..pos]);
    out.extend_from_slice(&rule.rhs);
    out.extend_from_slice(&w[pos + rule.lhs.len()..]);
    out
}

fn normal_form<'r>(rules: impl Iterator<Item = &'r Rule> + Clone, w: &[usize], mut trace: Option<&mut Trace>) -> Vec<usize> {
    let mut w = w.to_vec();
    while let Some((pos, rule)) = find_redex(rules.clone(), &w) {
        if let Some(t) = trace.as_deref_mut() {
            t.steps.push(TraceStep { position: pos, rule: rule.id });
        }
        w = rewrite_at(&w, pos, rule);
    }
    w
}

fn check_presentation(p: &Presentation) -> Result<()> {
    for g in &p.generators {
        if g.src >= p.objects.len() || g.tgt >= p.objects.len() {
            return Err(Error::Malformed(format!("generator {} has a dangling endpoint", g.name)));
        }
    }
    for (l, r) in &p.relations {
        Path::new(p, l.src, l.edges.clone())?;
        Path::new(p, r.src, r.edges.clone())?;
        let lt = Path::new(p, l.src, l.edges.clone())?.tgt;
        let rt = Path::new(p, r.src, r.edges.clone())?.tgt;
        if l.src != r.src || lt != rt || l.tgt != lt || r.tgt != rt {
            return Err(Error::EndpointMismatch(format!(
                "relation sides run {}->{} and {}->{}",
                l.src, lt, r.src, rt
            )));
        }
    }
    Ok(())
}

/// All critical pairs between `a` (left) and `b` (right).
fn critical_pairs(a: &Rule, b: &Rule) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    let (la, lb) = (&a.lhs, &b.lhs);
    // Proper overlaps: a suffix of la equals a prefix of lb.
    for k in 1..la.len().min(lb.len()) {
        if la[la.len() - k..] == lb[..k] {
            let mut u = a.rhs.clone();
            u.extend_from_slice(&lb[k..]);
            let mut v = la[..la.len() - k].to_vec();
            v.extend_from_slice(&b.rhs);
            out.push((u, v));
        }
    }
    // Inclusions: lb occurs inside la.
    if a.id != b.id && lb.len() <= la.len() {
        for pos in 0..=la.len() - lb.len() {
            if la[pos..pos + lb.len()] == lb[..] {
                let v = rewrite_at(la, pos, b);
                out.push((a.rhs.clone(), v));
            }
        }
    }
    out
}

/// Orients the relations and runs bounded completion.
///
/// Relations whose two sides are the same word are dropped. The result is
/// `Complete` iff every critical pair joined within `fuel` steps.
pub fn orient_and_complete(presentation: Presentation, fuel: usize) -> Result<FpCat> {
    check_presentation(&presentation)?;
    let mut rules: Vec<Option<Rule>> = Vec::new();
    let mut pending: VecDeque<(Vec<usize>, Vec<usize>)> = presentation
        .relations
        .iter()
        .map(|(l, r)| (l.edges.clone(), r.edges.clone()))
        .collect();
    let mut checked: HashSet<(usize, usize)> = HashSet::new();
    let mut steps = 0usize;
    let status = loop {
        while let Some((l, r)) = pending.pop_front() {
            let live = rules.iter().flatten();
            let l = normal_form(live.clone(), &l, None);
            let r = normal_form(live, &r, None);
            if l == r {
                continue;
            }
            let (lhs, rhs) = if length_lex(&l, &r) == Ordering::Greater { (l, r) } else { (r, l) };
            let id = rules.len();
            rules.push(Some(Rule { id, lhs, rhs }));
            let new_rule = rules[id].clone().expect("just pushed");
            // Interreduce: rules whose lhs the new rule can rewrite go back
            // to the queue as equations; right-hand sides are renormalized.
            for slot in rules.iter_mut().take(id) {
                if let Some(r) = slot {
                    if contains(&r.lhs, &new_rule.lhs) {
                        pending.push_back((r.lhs.clone(), r.rhs.clone()));
                        *slot = None;
                    }
                }
            }
            for j in 0..id {
                if let Some(r) = rules[j].clone() {
                    let rhs = normal_form(rules.iter().flatten(), &r.rhs, None);
                    rules[j].as_mut().expect("live").rhs = rhs;
                }
            }
        }
        let live: Vec<usize> = rules.iter().flatten().map(|r| r.id).collect();
        let mut found = false;
        let mut exhausted = false;
        'pairs: for &i in &live {
            for &j in &live {
                if checked.contains(&(i, j)) {
                    continue;
                }
                if steps >= fuel {
                    exhausted = true;
                    break 'pairs;
                }
                steps += 1;
                checked.insert((i, j));
                let (a, b) = (rules[i].as_ref().expect("live"), rules[j].as_ref().expect("live"));
                for (u, v) in critical_pairs(a, b) {
                    let nu = normal_form(rules.iter().flatten(), &u, None);
                    let nv = normal_form(rules.iter().flatten(), &v, None);
                    if nu != nv {
                        pending.push_back((nu, nv));
                        found = true;
                    }
                }
                if found {
                    break 'pairs;
                }
            }
        }
        if exhausted {
            break if found || !pending.is_empty() {
                CompletionStatus::NonConfluent
            } else {
                CompletionStatus::FuelExhausted
            };
        }
        if !found {
            break CompletionStatus::Complete;
        }
    };
    let mut rules: Vec<Rule> = rules.into_iter().flatten().collect();
    rules.sort_by_key(|r| r.id);
    Ok(FpCat {
        presentation,
        rules,
        status,
        fuel,
        steps_used: steps,
    })
}

type Move<'a> = (&'a [usize], &'a [usize]);

// Pops one word and pushes its one-step neighbours; true once a neighbour is
// already on the other side.
fn expand(
    queue: &mut VecDeque<Vec<usize>>,
    seen: &mut HashSet<Vec<usize>>,
    other: &HashSet<Vec<usize>>,
    moves: &[Move<'_>],
    max_len: usize,
    visited: &mut usize,
) -> bool {
    let Some(w) = queue.pop_front() else { return false };
    *visited += 1;
    for (from, to) in moves {
        if from.is_empty() || from.len() > w.len() {
            continue;
        }
        for pos in 0..=w.len() - from.len() {
            if w[pos..pos + from.len()] == **from {
                let mut next = w[..pos].to_vec();
                next.extend_from_slice(to);
                next.extend_from_slice(&w[pos + from.len()..]);
                if next.len() > max_len {
                    continue;
                }
                if other.contains(&next) {
                    return true;
                }
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    false
}

/// A normal-form presentation: the generators that are not rewritten away,
/// and the rules among them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Essential {
    pub objects: usize,
    pub generators: Vec<usize>,
    pub relations: Vec<(Vec<usize>, Vec<usize>)>,
}

impl FpCat {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn objects(&self) -> &[String] {
        &self.presentation.objects
    }

    pub fn generators(&self) -> &[Edge] {
        &self.presentation.generators
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn status(&self) -> CompletionStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == CompletionStatus::Complete
    }

    pub fn fuel(&self) -> usize {
        self.fuel
    }

    pub fn steps_used(&self) -> usize {
        self.steps_used
    }

    pub fn rule(&self, id: usize) -> Option<&Rule> {
        self.rules.iter().find(|r| r.id == id)
    }

    pub fn normalize(&self, p: &Path) -> Path {
        Path {
            src: p.src,
            tgt: p.tgt,
            edges: normal_form(self.rules.iter(), &p.edges, None),
        }
    }

    pub fn normalize_traced(&self, p: &Path) -> (Path, Trace) {
        let mut trace = Trace::default();
        let edges = normal_form(self.rules.iter(), &p.edges, Some(&mut trace));
        (
            Path {
                src: p.src,
                tgt: p.tgt,
                edges,
            },
            trace,
        )
    }

    /// Re-applies a trace to a word, checking every step.
    pub fn replay(&self, word: &[usize], trace: &Trace) -> Result<Vec<usize>> {
        let mut w = word.to_vec();
        for (n, step) in trace.steps.iter().enumerate() {
            let rule = self
                .rule(step.rule)
                .ok_or_else(|| Error::Malformed(format!("trace step {n}: no rule {}", step.rule)))?;
            let end = step.position + rule.lhs.len();
            if end > w.len() || w[step.position..end] != rule.lhs[..] {
                return Err(Error::Malformed(format!(
                    "trace step {n}: rule {} does not match at {}",
                    step.rule, step.position
                )));
            }
            w = rewrite_at(&w, step.position, rule);
        }
        Ok(w)
    }

    pub fn is_irreducible(&self, w: &[usize]) -> bool {
        find_redex(self.rules.iter(), w).is_none()
    }

    /// Three-valued equality of parallel paths.
    pub fn eq(&self, p: &Path, q: &Path) -> Result<EqVerdict> {
        if p.src != q.src || p.tgt != q.tgt {
            return Err(Error::EndpointMismatch(format!(
                "paths run {}->{} and {}->{}",
                p.src, p.tgt, q.src, q.tgt
            )));
        }
        let np = self.normalize(p);
        let nq = self.normalize(q);
        if np == nq {
            return Ok(EqVerdict::Equal);
        }
        if self.is_complete() {
            return Ok(EqVerdict::NotEqual);
        }
        if self.search_join(&np.edges, &nq.edges) {
            return Ok(EqVerdict::Equal);
        }
        Ok(EqVerdict::Unknown(match self.status {
            CompletionStatus::NonConfluent => UnknownReason::NonConfluent,
            _ => UnknownReason::FuelExhausted,
        }))
    }

    // Bounded bidirectional search over the congruence generated by the
    // relations and the (sound) derived rules, applied in both directions.
    fn search_join(&self, a: &[usize], b: &[usize]) -> bool {
        let mut moves: Vec<Move<'_>> = Vec::new();
        for r in &self.rules {
            moves.push((&r.lhs, &r.rhs));
            moves.push((&r.rhs, &r.lhs));
        }
        for (l, r) in &self.presentation.relations {
            moves.push((&l.edges, &r.edges));
            moves.push((&r.edges, &l.edges));
        }
        let max_side = moves.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
        let max_len = a.len().max(b.len()) + max_side;
        let budget = self.fuel.max(1);
        let mut seen_a: HashSet<Vec<usize>> = HashSet::from([a.to_vec()]);
        let mut seen_b: HashSet<Vec<usize>> = HashSet::from([b.to_vec()]);
        let mut qa = VecDeque::from([a.to_vec()]);
        let mut qb = VecDeque::from([b.to_vec()]);
        let mut visited = 0usize;
        while visited < budget && (!qa.is_empty() || !qb.is_empty()) {
            if expand(&mut qa, &mut seen_a, &seen_b, &moves, max_len, &mut visited)
                || expand(&mut qb, &mut seen_b, &seen_a, &moves, max_len, &mut visited)
            {
                return true;
            }
        }
        false
    }

    /// Generators not rewritten away, and the rules among them. For a
    /// reduced complete system this presents the same category.
    pub fn essential(&self) -> Essential {
        let generators = (0..self.edge_count()).filter(|&g| self.is_irreducible(&[g])).collect();
        let relations = self
            .rules
            .iter()
            .filter(|r| r.lhs.len() >= 2)
            .map(|r| (r.lhs.clone(), r.rhs.clone()))
            .collect();
        Essential {
            objects: self.vertex_count(),
            generators,
            relations,
        }
    }

    /// Materializes the category by enumerating normal forms.
    ///
    /// Fails unless the system is complete and every hom-set has no normal
    /// form of length `bound`.
    pub fn to_fincat(&self, bound: usize) -> Result<Materialized> {
        if !self.is_complete() {
            return Err(Error::Incomplete);
        }
        let mut words: Vec<Path> = Vec::new();
        for a in 0..self.vertex_count() {
            let mut frontier = vec![Path::identity(a)];
            let mut len = 0;
            while !frontier.is_empty() {
                if len == bound {
                    let w = &frontier[0];
                    return Err(Error::NotFinite {
                        hom: format!("{} -> {}", self.objects()[w.src], self.objects()[w.tgt]),
                        bound,
                    });
                }
                let mut next = Vec::new();
                for w in &frontier {
                    for g in 0..self.edge_count() {
                        let (s, t) = self.edge_ends(g);
                        if s != w.tgt {
                            continue;
                        }
                        let mut e = w.edges.clone();
                        e.push(g);
                        // Prefixes are irreducible, so only suffix matches matter.
                        let reducible = self.rules.iter().any(|r| e.ends_with(&r.lhs));
                        if !reducible {
                            next.push(Path { src: a, tgt: t, edges: e });
                        }
                    }
                }
                words.append(&mut frontier);
                frontier = next;
                len += 1;
            }
        }
        let index: HashMap<Path, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let objects = self.objects().to_vec();
        let morphisms = words
            .iter()
            .map(|w| {
                let name = w.display(|e| self.generators()[e].name.clone(), |v| objects[v].clone());
                Morphism::new(name, w.src, w.tgt)
            })
            .collect();
        let identities = (0..self.vertex_count())
            .map(|a| index[&Path::identity(a)])
            .collect();
        let mut failure = None;
        let cat = FinCat::from_fn(objects.clone(), morphisms, identities, |f, g| {
            let c = self.normalize(&words[f].concat(&words[g]).expect("composable"));
            match index.get(&c) {
                Some(&h) => h,
                None => {
                    failure.get_or_insert(c);
                    0
                }
            }
        })?;
        if let Some(c) = failure {
            return Err(Error::Internal(format!("composite {:?} is not a listed normal form", c.edges)));
        }
        Ok(Materialized { cat, words, index })
    }
}

/// A finite category obtained from normal forms, with the word of each
/// morphism.
#[derive(Debug, Clone)]
pub struct Materialized {
    pub cat: FinCat,
    pub words: Vec<Path>,
    index: HashMap<Path, usize>,
}

impl Materialized {
    /// Morphism id of a normal-form path.
    pub fn morphism_of(&self, nf: &Path) -> Option<usize> {
        self.index.get(nf).copied()
    }
}

impl fmt::Display for FpCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gname = |e: usize| self.generators()[e].name.clone();
        let word = |w: &[usize], anchor: usize| {
            if w.is_empty() {
                format!("id({})", self.objects()[anchor])
            } else {
                w.iter().map(|&e| gname(e)).collect::<Vec<_>>().join(".")
            }
        };
        let ess = self.essential();
        let field = |name: &str, items: &[String], sep: &str| {
            if items.is_empty() {
                format!("{name}:")
            } else {
                format!("{name}: {}", items.join(sep))
            }
        };
        writeln!(f, "{}", field("objects", self.objects(), " "))?;
        let gens: Vec<String> = ess
            .generators
            .iter()
            .map(|&g| {
                let e = &self.generators()[g];
                format!("{}: {} -> {}", e.name, self.objects()[e.src], self.objects()[e.tgt])
            })
            .collect();
        writeln!(f, "{}", field("generators", &gens, ", "))?;
        let rels: Vec<String> = ess
            .relations
            .iter()
            .map(|(l, r)| {
                let anchor = self.generators()[l[0]].src;
                format!("{} = {}", word(l, anchor), word(r, anchor))
            })
            .collect();
        writeln!(f, "{}", field("relations", &rels, ", "))?;
        write!(f, "status: {:?}", self.status)
    }
}

/// A functor out of a presentation: object map and generator images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FpFunctor {
    pub obj_map: Vec<usize>,
    pub gen_map: Vec<usize>,
}

impl FpFunctor {
    pub fn eval(&self, c: &FinCat, p: &Path) -> usize {
        p.edges
            .iter()
            .fold(c.identity(self.obj_map[p.src]), |acc, &g| c.comp(acc, self.gen_map[g]))
    }
}

/// All functors from a presented category into a finite one: generator
/// assignments that satisfy every relation.
pub fn enumerate_fp_functors(h: &FpCat, c: &FinCat, guard: u64, exec: Exec) -> Result<Vec<FpFunctor>> {
    let pres = h.presentation();
    let mut forced_identity = vec![false; h.edge_count()];
    for (l, r) in &pres.relations {
        if let ([g], []) | ([], [g]) = (&l.edges[..], &r.edges[..]) {
            forced_identity[*g] = true;
        }
    }
    let problem = ModelProblem {
        obj_count: h.vertex_count(),
        arrows: (0..h.edge_count()).map(|g| h.edge_ends(g)).collect(),
        equations: pres
            .relations
            .iter()
            .map(|(l, r)| (l.src, l.edges.clone(), r.edges.clone()))
            .collect(),
        forced_identity,
        target: c,
    };
    Ok(problem
        .solve(guard, exec, "functors out of a presentation")?
        .into_iter()
        .map(|m| FpFunctor {
            obj_map: m.obj_map,
            gen_map: m.arrow_map,
        })
        .collect())
}

/// Object bijection and essential-generator pairs of an isomorphism.
pub type PresentationIso = (Vec<usize>, Vec<(usize, usize)>);

/// An isomorphism of presented categories found by matching essential
/// generators: returns object and generator bijections `a -> b`.
pub fn presentation_isomorphism(a: &FpCat, b: &FpCat) -> Option<PresentationIso> {
    let (ea, eb) = (a.essential(), b.essential());
    if ea.objects != eb.objects || ea.generators.len() != eb.generators.len() {
        return None;
    }
    let n = ea.objects;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut obj_perms = Vec::new();
    permutations(&mut perm, 0, &mut obj_perms);
    for objs in obj_perms {
        let mut used = vec![false; eb.generators.len()];
        let mut assign = Vec::new();
        if match_generators(a, b, &ea, &eb, &objs, &mut used, &mut assign) {
            let pairs = ea.generators.iter().copied().zip(assign.iter().map(|&k| eb.generators[k])).collect();
            return Some((objs, pairs));
        }
    }
    None
}

fn permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

fn match_generators(
    a: &FpCat,
    b: &FpCat,
    ea: &Essential,
    eb: &Essential,
    objs: &[usize],
    used: &mut [bool],
    assign: &mut Vec<usize>,
) -> bool {
    let k = assign.len();
    if k == ea.generators.len() {
        return relations_transfer(a, b, ea, eb, objs, assign);
    }
    let (s, t) = a.edge_ends(ea.generators[k]);
    for j in 0..eb.generators.len() {
        if used[j] || b.edge_ends(eb.generators[j]) != (objs[s], objs[t]) {
            continue;
        }
        used[j] = true;
        assign.push(j);
        if match_generators(a, b, ea, eb, objs, used, assign) {
            return true;
        }
        assign.pop();
        used[j] = false;
    }
    false
}

fn relations_transfer(a: &FpCat, b: &FpCat, ea: &Essential, eb: &Essential, objs: &[usize], assign: &[usize]) -> bool {
    let fwd: HashMap<usize, usize> = ea
        .generators
        .iter()
        .zip(assign)
        .map(|(&g, &j)| (g, eb.generators[j]))
        .collect();
    let bwd: HashMap<usize, usize> = fwd.iter().map(|(&x, &y)| (y, x)).collect();
    let mut inv_objs = vec![0; objs.len()];
    for (i, &o) in objs.iter().enumerate() {
        inv_objs[o] = i;
    }
    let holds = |from: &FpCat, to: &FpCat, rels: &[(Vec<usize>, Vec<usize>)], map: &HashMap<usize, usize>, om: &[usize]| {
        rels.iter().all(|(l, r)| {
            let anchor = om[from.edge_ends(l[0]).0];
            let tr = |w: &[usize]| -> Option<Path> {
                Path::new(to, anchor, w.iter().map(|g| map.get(g).copied()).collect::<Option<Vec<_>>>()?).ok()
            };
            match (tr(l), tr(r)) {
                (Some(pl), Some(pr)) => pl.tgt == pr.tgt && to.eq(&pl, &pr) == Ok(EqVerdict::Equal),
                _ => false,
            }
        })
    };
    holds(a, b, &ea.relations, &fwd, objs) && holds(b, a, &eb.relations, &bwd, &inv_objs)
}
