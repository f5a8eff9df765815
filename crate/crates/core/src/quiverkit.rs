//! Quivers, reflexive quivers, prefunctors and the free-category
//! constructions on them, together with the unit/counit data of the
//! free ⊣ forgetful adjunction for reflexive quivers.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fincat::{FinCat, DEFAULT_GUARD};
use crate::report::Verdict;
use crate::rewrite::{enumerate_fp_functors, orient_and_complete, EqVerdict, FpCat, Presentation};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Anything with vertices and typed edges.
pub trait Graph {
    fn vertex_count(&self) -> usize;
    fn edge_count(&self) -> usize;
    fn edge_ends(&self, e: usize) -> (usize, usize);
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

impl Edge {
    pub fn new(name: impl Into<String>, src: usize, tgt: usize) -> Self {
        Edge {
            name: name.into(),
            src,
            tgt,
        }
    }
}

/// A path of composable edges. The empty path at `v` is the identity of `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub edges: Vec<usize>,
}

impl Path {
    pub fn identity(v: usize) -> Self {
        Path {
            src: v,
            tgt: v,
            edges: vec![],
        }
    }

    pub fn edge(g: &impl Graph, e: usize) -> Self {
        let (src, tgt) = g.edge_ends(e);
        Path {
            src,
            tgt,
            edges: vec![e],
        }
    }

    /// Checked constructor.
    pub fn new(g: &impl Graph, src: usize, edges: Vec<usize>) -> Result<Self> {
        if src >= g.vertex_count() {
            return Err(Error::IndexOutOfRange {
                what: "vertex",
                index: src,
                bound: g.vertex_count(),
            });
        }
        let mut at = src;
        for &e in &edges {
            if e >= g.edge_count() {
                return Err(Error::IndexOutOfRange {
                    what: "edge",
                    index: e,
                    bound: g.edge_count(),
                });
            }
            let (s, t) = g.edge_ends(e);
            if s != at {
                return Err(Error::EndpointMismatch(format!(
                    "edge {e} starts at {s} but the path is at {at}"
                )));
            }
            at = t;
        }
        Ok(Path { src, tgt: at, edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `self` then `other`.
    pub fn concat(&self, other: &Path) -> Result<Path> {
        if self.tgt != other.src {
            return Err(Error::EndpointMismatch(format!(
                "path ends at {} but the next starts at {}",
                self.tgt, other.src
            )));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Path {
            src: self.src,
            tgt: other.tgt,
            edges,
        })
    }

    pub fn display(&self, names: impl Fn(usize) -> String, vertex: impl Fn(usize) -> String) -> String {
        if self.edges.is_empty() {
            format!("id({})", vertex(self.src))
        } else {
            self.edges.iter().map(|&e| names(e)).collect::<Vec<_>>().join(".")
        }
    }
}

/// All paths of length exactly `len`, lexicographic in edge ids.
pub fn paths_of_length(g: &impl Graph, len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        let mut stack = vec![Path::identity(v)];
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &stack {
                for e in 0..g.edge_count() {
                    let (s, t) = g.edge_ends(e);
                    if s == p.tgt {
                        let mut q = p.clone();
                        q.edges.push(e);
                        q.tgt = t;
                        next.push(q);
                    }
                }
            }
            stack = next;
        }
        out.extend(stack);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

impl Graph for Quiver {
    fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    fn edge_count(&self) -> usize {
        self.edges.len()
    }
    fn edge_ends(&self, e: usize) -> (usize, usize) {
        (self.edges[e].src, self.edges[e].tgt)
    }
}

impl Quiver {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::Malformed(format!("duplicate vertex {v}")));
            }
        }
        let mut seen = HashSet::new();
        for e in &edges {
            if e.src >= vertices.len() || e.tgt >= vertices.len() {
                return Err(Error::Malformed(format!("edge {} has a dangling endpoint", e.name)));
            }
            if !seen.insert(e.name.as_str()) {
                return Err(Error::Malformed(format!("duplicate edge {}", e.name)));
            }
        }
        Ok(Quiver { vertices, edges })
    }
}

/// A quiver with a chosen loop `refl(v)` at every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflQuiver {
    pub quiver: Quiver,
    pub refl: Vec<usize>,
}

impl Graph for ReflQuiver {
    fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }
    fn edge_count(&self) -> usize {
        self.quiver.edge_count()
    }
    fn edge_ends(&self, e: usize) -> (usize, usize) {
        self.quiver.edge_ends(e)
    }
}

impl ReflQuiver {
    pub fn new(quiver: Quiver, refl: Vec<usize>) -> Result<Self> {
        if refl.len() != quiver.vertices.len() {
            return Err(Error::Malformed("one reflexivity edge per vertex required".into()));
        }
        for (v, &e) in refl.iter().enumerate() {
            if e >= quiver.edges.len() || quiver.edge_ends(e) != (v, v) {
                return Err(Error::Malformed(format!(
                    "reflexivity edge of {} is not a loop at it",
                    quiver.vertices[v]
                )));
            }
        }
        Ok(ReflQuiver { quiver, refl })
    }

    pub fn is_refl(&self, e: usize) -> bool {
        let (s, _) = self.edge_ends(e);
        self.refl[s] == e
    }

    pub fn non_refl_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edge_count()).filter(|&e| !self.is_refl(e))
    }
}

/// Vertex and edge maps of a (reflexive) prefunctor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Prefunctor {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

impl Prefunctor {
    pub fn check(&self, from: &impl Graph, to: &impl Graph) -> Result<()> {
        if self.vertex_map.len() != from.vertex_count() || self.edge_map.len() != from.edge_count() {
            return Err(Error::Malformed("prefunctor maps have the wrong length".into()));
        }
        if self.vertex_map.iter().any(|&v| v >= to.vertex_count())
            || self.edge_map.iter().any(|&e| e >= to.edge_count())
        {
            return Err(Error::Malformed("prefunctor maps leave the target".into()));
        }
        for e in 0..from.edge_count() {
            let (s, t) = from.edge_ends(e);
            if to.edge_ends(self.edge_map[e]) != (self.vertex_map[s], self.vertex_map[t]) {
                return Err(Error::Law(format!("prefunctor does not preserve the endpoints of edge {e}")));
            }
        }
        Ok(())
    }

    pub fn check_refl(&self, from: &ReflQuiver, to: &ReflQuiver) -> Result<()> {
        self.check(from, to)?;
        for (v, &e) in from.refl.iter().enumerate() {
            if self.edge_map[e] != to.refl[self.vertex_map[v]] {
                return Err(Error::Law(format!(
                    "prefunctor does not preserve the reflexivity edge of {}",
                    from.quiver.vertices[v]
                )));
            }
        }
        Ok(())
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Prefunctor) -> Prefunctor {
        Prefunctor {
            vertex_map: self.vertex_map.iter().map(|&v| other.vertex_map[v]).collect(),
            edge_map: self.edge_map.iter().map(|&e| other.edge_map[e]).collect(),
        }
    }
}

/// All reflexive prefunctors `q -> r`: vertex map lexicographic, then edge
/// map lexicographic.
pub fn enumerate_refl_prefunctors(q: &ReflQuiver, r: &ReflQuiver, guard: u64) -> Result<Vec<Prefunctor>> {
    let nv = q.vertex_count();
    let nr = r.vertex_count() as u64;
    let vmaps = nr
        .checked_pow(nv as u32)
        .filter(|&c| c <= guard)
        .ok_or(Error::GuardExceeded {
            what: "reflexive prefunctors",
            limit: guard,
        })?;
    let mut out = Vec::new();
    let mut budget = guard;
    for code in 0..vmaps {
        let mut vertex_map = vec![0; nv];
        let mut c = code;
        for slot in vertex_map.iter_mut().rev() {
            *slot = (c % nr) as usize;
            c /= nr;
        }
        let mut edge_map = Vec::with_capacity(q.edge_count());
        fn go(
            q: &ReflQuiver,
            r: &ReflQuiver,
            vmap: &[usize],
            emap: &mut Vec<usize>,
            budget: &mut u64,
            out: &mut Vec<Prefunctor>,
        ) -> bool {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            let e = emap.len();
            if e == q.edge_count() {
                out.push(Prefunctor {
                    vertex_map: vmap.to_vec(),
                    edge_map: emap.clone(),
                });
                return true;
            }
            let (s, t) = q.edge_ends(e);
            let (fs, ft) = (vmap[s], vmap[t]);
            if q.is_refl(e) {
                emap.push(r.refl[fs]);
                let ok = go(q, r, vmap, emap, budget, out);
                emap.pop();
                return ok;
            }
            for f in 0..r.edge_count() {
                if r.edge_ends(f) == (fs, ft) {
                    emap.push(f);
                    let ok = go(q, r, vmap, emap, budget, out);
                    emap.pop();
                    if !ok {
                        return false;
                    }
                }
            }
            true
        }
        if !go(q, r, &vertex_map, &mut edge_map, &mut budget, &mut out) {
            return Err(Error::GuardExceeded {
                what: "reflexive prefunctors",
                limit: guard,
            });
        }
    }
    Ok(out)
}

/// The free category on a quiver: paths, with no relations.
pub fn free_category(q: &Quiver, fuel: usize) -> FpCat {
    let pres = Presentation {
        objects: q.vertices.clone(),
        generators: q.edges.clone(),
        relations: vec![],
    };
    orient_and_complete(pres, fuel).expect("relation-free presentation is well-formed")
}

/// The free category on a reflexive quiver, with the quotient data `q_Q`.
#[derive(Debug, Clone)]
pub struct FreeRefl {
    pub cat: FpCat,
    /// Normal form of the class of each edge (the image under `q_Q`).
    pub quotient: Vec<Path>,
}

/// Free category on the underlying quiver modulo `refl(v) = id(v)`.
pub fn free_refl_category(q: &ReflQuiver, fuel: usize) -> FreeRefl {
    let relations = q
        .refl
        .iter()
        .enumerate()
        .map(|(v, &e)| (Path::edge(q, e), Path::identity(v)))
        .collect();
    let pres = Presentation {
        objects: q.quiver.vertices.clone(),
        generators: q.quiver.edges.clone(),
        relations,
    };
    let cat = orient_and_complete(pres, fuel).expect("reflexivity relations are well-typed");
    let quotient = (0..q.edge_count()).map(|e| cat.normalize(&Path::edge(q, e))).collect();
    FreeRefl { cat, quotient }
}

/// The underlying reflexive quiver of a category: every morphism is an edge
/// and the identities are the reflexivity edges.
pub fn forget_cat_to_reflquiver(c: &FinCat) -> ReflQuiver {
    let quiver = Quiver {
        vertices: c.objects().to_vec(),
        edges: c
            .morphisms()
            .iter()
            .map(|f| Edge::new(f.name.clone(), f.src, f.tgt))
            .collect(),
    };
    ReflQuiver {
        quiver,
        refl: c.identities().to_vec(),
    }
}

/// Evaluates a path in `U C` by composing in `C`; the counit of F ⊣ U.
pub fn eval_path(c: &FinCat, p: &Path) -> usize {
    p.edges
        .iter()
        .fold(c.identity(p.src), |acc, &f| c.comp(acc, f))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflTriangleReport {
    /// `Uʳ ε ∘ η Uʳ = id` at the category.
    pub at_category: Verdict,
    /// `ε Fʳ ∘ Fʳ η = id` at the reflexive quiver.
    pub at_quiver: Verdict,
}

impl ReflTriangleReport {
    pub fn passed(&self) -> bool {
        self.at_category.is_pass() && self.at_quiver.is_pass()
    }
}

/// Verifies both triangle identities of `Fʳ ⊣ Uʳ`, edge by edge.
pub fn check_triangle_identities_reflquiv(c: &FinCat, q: &ReflQuiver, fuel: usize) -> ReflTriangleReport {
    ReflTriangleReport {
        at_category: triangle_at_category(c, fuel),
        at_quiver: triangle_at_quiver(q, fuel),
    }
}

// Uʳ C --ηʳ--> Uʳ Fʳ Uʳ C --Uʳ εʳ--> Uʳ C. Edges of the middle quiver are
// normal-form paths of Fʳ Uʳ C.
fn triangle_at_category(c: &FinCat, fuel: usize) -> Verdict {
    let uc = forget_cat_to_reflquiver(c);
    let fr = free_refl_category(&uc, fuel);
    for f in 0..c.morphism_count() {
        let unit_image = &fr.quotient[f];
        let back = eval_path(c, unit_image);
        if back != f {
            return Verdict::Fail(format!(
                "edge {} returns as {}",
                c.morphism(f).name,
                c.morphism(back).name
            ));
        }
    }
    // Reflexivity edges must go to reflexivity edges (identities) and back.
    for a in 0..c.object_count() {
        if !fr.quotient[c.identity(a)].is_empty() {
            return Verdict::Fail(format!("unit does not send id({}) to an identity", c.objects()[a]));
        }
    }
    // The counit must respect the quotient: refl-equivalent short paths
    // evaluate to the same morphism.
    for len in 1..=3 {
        for p in paths_of_length(&uc, len) {
            let nf = fr.cat.normalize(&p);
            if eval_path(c, &p) != eval_path(c, &nf) {
                return Verdict::Fail("counit is not constant on a reflexivity class".into());
            }
        }
    }
    Verdict::Pass
}

// Fʳ Q --Fʳ ηʳ--> Fʳ Uʳ Fʳ Q --εʳ--> Fʳ Q, generator by generator.
fn triangle_at_quiver(q: &ReflQuiver, fuel: usize) -> Verdict {
    let fr = free_refl_category(q, fuel);
    for e in 0..q.edge_count() {
        // Fʳ ηʳ sends the generator e to the one-edge path on the edge
        // [e] of Uʳ Fʳ Q; εʳ then evaluates that path by composing in Fʳ Q,
        // which for a single edge is its underlying class.
        let unit_edge: &Path = &fr.quotient[e];
        match fr.cat.eq(unit_edge, &Path::edge(q, e)) {
            Ok(EqVerdict::Equal) => {}
            Ok(EqVerdict::NotEqual) => {
                return Verdict::Fail(format!("generator {} is not fixed", q.quiver.edges[e].name))
            }
            Ok(EqVerdict::Unknown(r)) => return Verdict::Inconclusive(format!("{r:?}")),
            Err(err) => return Verdict::Fail(err.to_string()),
        }
    }
    Verdict::Pass
}

/// `|ReflPrefunctor(q, Uʳ c)|` and `|Functor(Fʳ q, c)|`, enumerated
/// independently of each other.
pub fn refl_hom_counts(q: &ReflQuiver, c: &FinCat, fuel: usize) -> Result<(usize, usize)> {
    let uc = forget_cat_to_reflquiver(c);
    let left = enumerate_refl_prefunctors(q, &uc, DEFAULT_GUARD)?.len();
    let fr = free_refl_category(q, fuel);
    let right = enumerate_fp_functors(&fr.cat, c, DEFAULT_GUARD, Exec::default())?.len();
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{cyclic_group, fin_ordinal, terminal};
    use crate::rewrite::DEFAULT_FUEL;

    fn one_loop() -> Quiver {
        Quiver::new(vec!["*".into()], vec![Edge::new("e", 0, 0)]).unwrap()
    }

    #[test]
    fn free_on_a_point_is_terminal() {
        let q = Quiver::new(vec!["*".into()], vec![]).unwrap();
        let c = free_category(&q, DEFAULT_FUEL);
        let m = c.to_fincat(8).unwrap();
        assert_eq!(m.cat.morphism_count(), 1);
    }

    #[test]
    fn free_on_a_loop_has_distinct_powers() {
        let c = free_category(&one_loop(), DEFAULT_FUEL);
        let words: Vec<Path> = (0..=6).map(|k| Path::new(&c, 0, vec![0; k]).unwrap()).collect();
        for (i, p) in words.iter().enumerate() {
            for (j, q) in words.iter().enumerate() {
                let v = c.eq(p, q).unwrap();
                assert_eq!(v == EqVerdict::Equal, i == j);
            }
        }
    }

    #[test]
    fn free_on_a_chain_has_one_long_composite() {
        let q = Quiver::new(
            vec!["0".into(), "1".into(), "2".into()],
            vec![Edge::new("f", 0, 1), Edge::new("g", 1, 2)],
        )
        .unwrap();
        let m = free_category(&q, DEFAULT_FUEL).to_fincat(8).unwrap();
        assert_eq!(m.cat.hom(0, 2).len(), 1);
        assert_eq!(m.cat.morphism_count(), 6);
    }

    #[test]
    fn forgetful_counts() {
        let w = forget_cat_to_reflquiver(&fin_ordinal(1));
        assert_eq!((w.vertex_count(), w.edge_count()), (2, 3));
        let t = forget_cat_to_reflquiver(&terminal());
        assert_eq!((t.vertex_count(), t.edge_count()), (1, 1));
        assert!(t.is_refl(0));
    }

    #[test]
    fn refl_edges_normalize_to_identities() {
        let q = forget_cat_to_reflquiver(&cyclic_group(2));
        let fr = free_refl_category(&q, DEFAULT_FUEL);
        assert!(fr.quotient[q.refl[0]].is_empty());
        let t = free_refl_category(&forget_cat_to_reflquiver(&terminal()), DEFAULT_FUEL);
        assert_eq!(t.cat.to_fincat(8).unwrap().cat.morphism_count(), 1);
    }

    #[test]
    fn refl_loop_plus_free_loop_is_bn() {
        let q = ReflQuiver::new(
            Quiver::new(vec!["*".into()], vec![Edge::new("r", 0, 0), Edge::new("e", 0, 0)]).unwrap(),
            vec![0],
        )
        .unwrap();
        let fr = free_refl_category(&q, DEFAULT_FUEL);
        assert_eq!(fr.cat.essential().generators, vec![1]);
        assert!(fr.cat.to_fincat(10).is_err());
    }

    #[test]
    fn triangles_on_small_inputs() {
        let c = fin_ordinal(1);
        let q = forget_cat_to_reflquiver(&terminal());
        assert!(check_triangle_identities_reflquiv(&c, &q, DEFAULT_FUEL).passed());
    }

    #[test]
    fn prefunctor_enumeration_respects_refl() {
        let q = forget_cat_to_reflquiver(&fin_ordinal(1));
        let r = forget_cat_to_reflquiver(&fin_ordinal(1));
        let fs = enumerate_refl_prefunctors(&q, &r, DEFAULT_GUARD).unwrap();
        assert_eq!(fs.len(), 3);
        for f in &fs {
            f.check_refl(&q, &r).unwrap();
        }
    }
}
