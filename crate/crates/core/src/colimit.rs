//! Colimits of finite diagrams: of sets by union-find, of truncated
//! simplicial sets level by level, and of categories as the homotopy
//! category of the colimit of their nerves.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fincat::{CatFunctor, FinCat};
use crate::hofunctor::{ho2, HomotopyCategory, PathFunctor};
use crate::nerve::{nerve, nerve_map, Nerve};
use crate::quiverkit::{paths_of_length, Edge, Graph, Path};
use crate::report::Verdict;
use crate::rewrite::{enumerate_fp_functors, orient_and_complete, EqVerdict, FpCat, Presentation};
use crate::sset::{SimplicialMap, TruncSSet};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};

/// Fills in identities and composites of the given shape arrows, then
/// checks functoriality.
fn complete_arrows<M: Clone + PartialEq>(
    shape: &FinCat,
    given: Vec<(usize, M)>,
    identity: impl Fn(usize) -> M,
    then: impl Fn(&M, &M) -> M,
) -> Result<Vec<M>> {
    let mut maps: Vec<Option<M>> = vec![None; shape.morphism_count()];
    for a in 0..shape.object_count() {
        maps[shape.identity(a)] = Some(identity(a));
    }
    for (u, m) in given {
        if u >= maps.len() {
            return Err(Error::IndexOutOfRange {
                what: "shape arrow",
                index: u,
                bound: maps.len(),
            });
        }
        if shape.is_identity(u) {
            if maps[u].as_ref() != Some(&m) {
                return Err(Error::Law(format!("identity {} must map to an identity", shape.morphism(u).name)));
            }
            continue;
        }
        if maps[u].is_some() {
            return Err(Error::Malformed(format!("shape arrow {} is given twice", shape.morphism(u).name)));
        }
        maps[u] = Some(m);
    }
    loop {
        let mut changed = false;
        for (u, v) in shape.composable_pairs().collect::<Vec<_>>() {
            let w = shape.comp(u, v);
            if maps[w].is_none() {
                if let (Some(a), Some(b)) = (&maps[u], &maps[v]) {
                    maps[w] = Some(then(a, b));
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let maps: Vec<M> = maps
        .into_iter()
        .enumerate()
        .map(|(u, m)| m.ok_or_else(|| Error::Malformed(format!("no map for shape arrow {}", shape.morphism(u).name))))
        .collect::<Result<_>>()?;
    for (u, v) in shape.composable_pairs() {
        if then(&maps[u], &maps[v]) != maps[shape.comp(u, v)] {
            return Err(Error::Law(format!(
                "diagram is not functorial on {} then {}",
                shape.morphism(u).name,
                shape.morphism(v).name
            )));
        }
    }
    Ok(maps)
}

fn compose_fns(f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| g[x]).collect()
}

/// A diagram of finite sets; `maps` is indexed by the morphisms of `shape`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetDiagram {
    pub shape: FinCat,
    pub nodes: Vec<Vec<String>>,
    pub maps: Vec<Vec<usize>>,
}

impl SetDiagram {
    pub fn new(shape: FinCat, nodes: Vec<Vec<String>>, arrows: Vec<(usize, Vec<usize>)>) -> Result<Self> {
        if nodes.len() != shape.object_count() {
            return Err(Error::Malformed("one set per shape object required".into()));
        }
        for (u, m) in &arrows {
            let (a, b) = (shape.morphism(*u).src, shape.morphism(*u).tgt);
            if m.len() != nodes[a].len() || m.iter().any(|&x| x >= nodes[b].len()) {
                return Err(Error::Malformed(format!("map for {} has the wrong shape", shape.morphism(*u).name)));
            }
        }
        let maps = complete_arrows(&shape, arrows, |a| (0..nodes[a].len()).collect(), |f, g| compose_fns(f, g))?;
        Ok(SetDiagram { shape, nodes, maps })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetColimit {
    pub names: Vec<String>,
    /// For each class, its members `(node, element)`.
    pub members: Vec<Vec<(usize, usize)>>,
    pub legs: Vec<Vec<usize>>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    // The smaller root survives, so every root is its class minimum.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Disjoint union modulo `x ~ D(u)(x)`; classes are numbered by their
/// smallest member.
pub fn colim_set(d: &SetDiagram) -> SetColimit {
    let offsets: Vec<usize> = d
        .nodes
        .iter()
        .scan(0, |acc, n| {
            let o = *acc;
            *acc += n.len();
            Some(o)
        })
        .collect();
    let total: usize = d.nodes.iter().map(Vec::len).sum();
    let mut uf = UnionFind::new(total);
    for (u, m) in d.maps.iter().enumerate() {
        let (a, b) = (d.shape.morphism(u).src, d.shape.morphism(u).tgt);
        for (x, &y) in m.iter().enumerate() {
            uf.union(offsets[a] + x, offsets[b] + y);
        }
    }
    let mut class_of = vec![usize::MAX; total];
    let mut members: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut legs: Vec<Vec<usize>> = d.nodes.iter().map(|n| vec![0; n.len()]).collect();
    for (j, node) in d.nodes.iter().enumerate() {
        for (x, leg) in legs[j].iter_mut().enumerate().take(node.len()) {
            let r = uf.find(offsets[j] + x);
            if class_of[r] == usize::MAX {
                class_of[r] = members.len();
                members.push(Vec::new());
            }
            members[class_of[r]].push((j, x));
            *leg = class_of[r];
        }
    }
    let mut taken: HashSet<String> = HashSet::new();
    let names = members
        .iter()
        .map(|m| {
            let (j, x) = m[0];
            let base = d.nodes[j][x].clone();
            let mut name = base.clone();
            if taken.contains(&name) {
                name = format!("{base}_{}", d.shape.objects()[j]);
            }
            let mut k = 1;
            while taken.contains(&name) {
                name = format!("{base}_{}_{k}", d.shape.objects()[j]);
                k += 1;
            }
            taken.insert(name.clone());
            name
        })
        .collect();
    SetColimit { names, members, legs }
}

/// A diagram of truncated simplicial sets of one common dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSetDiagram {
    pub shape: FinCat,
    pub nodes: Vec<TruncSSet>,
    pub maps: Vec<SimplicialMap>,
}

impl SSetDiagram {
    pub fn new(shape: FinCat, nodes: Vec<TruncSSet>, arrows: Vec<(usize, SimplicialMap)>) -> Result<Self> {
        if nodes.len() != shape.object_count() || nodes.is_empty() {
            return Err(Error::Malformed("one simplicial set per shape object required".into()));
        }
        if nodes.iter().any(|x| x.dim() != nodes[0].dim()) {
            return Err(Error::Precondition("all simplicial sets must share a dimension".into()));
        }
        for (u, m) in &arrows {
            let (a, b) = (shape.morphism(*u).src, shape.morphism(*u).tgt);
            m.validate(&nodes[a], &nodes[b])?;
        }
        let maps = complete_arrows(&shape, arrows, |a| SimplicialMap::identity(&nodes[a]), |f, g| f.then(g))?;
        Ok(SSetDiagram { shape, nodes, maps })
    }

    pub fn dim(&self) -> usize {
        self.nodes[0].dim()
    }
}

#[derive(Debug, Clone)]
pub struct SSetColimit {
    pub sset: TruncSSet,
    pub legs: Vec<SimplicialMap>,
}

/// Level-wise colimit; the induced actions are checked to be independent
/// of the chosen representative.
pub fn colim_sset(d: &SSetDiagram) -> Result<SSetColimit> {
    let dim = d.dim();
    let levels: Vec<SetColimit> = (0..=dim)
        .map(|k| {
            colim_set(&SetDiagram {
                shape: d.shape.clone(),
                nodes: d.nodes.iter().map(|x| x.names(k).to_vec()).collect(),
                maps: d.maps.iter().map(|m| m.components[k].clone()).collect(),
            })
        })
        .collect();
    let induced = |k: usize, to: usize, c: usize, act: &dyn Fn(&TruncSSet, usize) -> usize| -> Result<usize> {
        let mut out = None;
        for &(j, x) in &levels[k].members[c] {
            let y = levels[to].legs[j][act(&d.nodes[j], x)];
            match out {
                None => out = Some(y),
                Some(z) if z != y => {
                    return Err(Error::Internal(format!(
                        "induced action on {} depends on the representative",
                        levels[k].names[c]
                    )))
                }
                _ => {}
            }
        }
        out.ok_or_else(|| Error::Internal("empty class".into()))
    };
    let mut face = vec![Vec::new(); dim + 1];
    let mut degen = vec![Vec::new(); dim + 1];
    for k in 0..=dim {
        let n = levels[k].names.len();
        if k > 0 {
            for i in 0..=k {
                face[k].push((0..n).map(|c| induced(k, k - 1, c, &|x, s| x.face(k, i, s))).collect::<Result<Vec<_>>>()?);
            }
        }
        if k < dim {
            for i in 0..=k {
                degen[k].push((0..n).map(|c| induced(k, k + 1, c, &|x, s| x.degen(k, i, s))).collect::<Result<Vec<_>>>()?);
            }
        }
    }
    let names = levels.iter().map(|l| l.names.clone()).collect();
    let sset = TruncSSet::from_parts(dim, names, face, degen)?;
    let legs: Vec<SimplicialMap> = (0..d.nodes.len())
        .map(|j| SimplicialMap {
            components: levels.iter().map(|l| l.legs[j].clone()).collect(),
        })
        .collect();
    for (j, leg) in legs.iter().enumerate() {
        leg.validate(&d.nodes[j], &sset)?;
    }
    Ok(SSetColimit { sset, legs })
}

/// A diagram of finite categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatDiagram {
    pub shape: FinCat,
    pub nodes: Vec<FinCat>,
    pub maps: Vec<CatFunctor>,
}

impl CatDiagram {
    pub fn new(shape: FinCat, nodes: Vec<FinCat>, arrows: Vec<(usize, CatFunctor)>) -> Result<Self> {
        if nodes.len() != shape.object_count() {
            return Err(Error::Malformed("one category per shape object required".into()));
        }
        for (u, f) in &arrows {
            let (a, b) = (shape.morphism(*u).src, shape.morphism(*u).tgt);
            f.check(&nodes[a], &nodes[b])?;
        }
        let maps = complete_arrows(&shape, arrows, |a| CatFunctor::identity(&nodes[a]), |f, g| f.then(g))?;
        Ok(CatDiagram { shape, nodes, maps })
    }
}

#[derive(Debug, Clone)]
pub struct CatColimit {
    pub nerves: Vec<Nerve>,
    pub sset: SSetColimit,
    pub ho: HomotopyCategory,
    /// Leg `j` sends each morphism of node `j` to a normal-form path.
    pub legs: Vec<PathFunctor>,
}

/// `ho₂` of the colimit of the 2-truncated nerves.
pub fn colim_cat(d: &CatDiagram, fuel: usize) -> Result<CatColimit> {
    if d.nodes.is_empty() {
        return Err(Error::Precondition("colimit of an empty diagram of categories".into()));
    }
    let nerves: Vec<Nerve> = d.nodes.iter().map(|c| nerve(c, 2)).collect::<Result<_>>()?;
    let mut arrows = Vec::new();
    for (u, f) in d.maps.iter().enumerate() {
        if d.shape.is_identity(u) {
            continue;
        }
        let (a, b) = (d.shape.morphism(u).src, d.shape.morphism(u).tgt);
        arrows.push((u, nerve_map(f, &nerves[a], &nerves[b])?));
    }
    let sd = SSetDiagram::new(d.shape.clone(), nerves.iter().map(|n| n.sset.clone()).collect(), arrows)?;
    let sset = colim_sset(&sd)?;
    let ho = ho2(&sset.sset, fuel)?;
    let legs = sset
        .legs
        .iter()
        .zip(&nerves)
        .map(|(leg, n)| PathFunctor {
            obj_map: leg.components[0].clone(),
            gen_map: (0..n.chains[1].len()).map(|f| ho.quotient[leg.components[1][n.edge_of(f)]].clone()).collect(),
        })
        .collect();
    Ok(CatColimit { nerves, sset, ho, legs })
}

impl CatColimit {
    /// `leg_b ∘ D(u) = leg_a` for every shape arrow `u : a -> b`, generator
    /// by generator.
    pub fn check_cocone(&self, d: &CatDiagram) -> Verdict {
        let mut out = Vec::new();
        for (u, f) in d.maps.iter().enumerate() {
            let (a, b) = (d.shape.morphism(u).src, d.shape.morphism(u).tgt);
            for x in 0..d.nodes[a].object_count() {
                if self.legs[b].obj_map[f.obj_map[x]] != self.legs[a].obj_map[x] {
                    return Verdict::Fail(format!("legs disagree on an object along {}", d.shape.morphism(u).name));
                }
            }
            for g in 0..d.nodes[a].morphism_count() {
                let lhs = &self.legs[b].gen_map[f.mor_map[g]];
                let rhs = &self.legs[a].gen_map[g];
                match self.ho.fp.eq(lhs, rhs) {
                    Ok(EqVerdict::Equal) => {}
                    Ok(EqVerdict::NotEqual) | Err(_) => {
                        return Verdict::Fail(format!("legs disagree on a morphism along {}", d.shape.morphism(u).name))
                    }
                    Ok(EqVerdict::Unknown(r)) => out.push(Verdict::Inconclusive(format!("{r:?}"))),
                }
            }
        }
        Verdict::all(out)
    }

    /// Leg image of morphism `f` of node `j`, with the generator names of
    /// the colimit.
    pub fn leg_display(&self, j: usize, f: usize) -> String {
        let fp = &self.ho.fp;
        self.legs[j].gen_map[f].display(|e| fp.generators()[e].name.clone(), |v| fp.objects()[v].clone())
    }
}

/// The direct presentation: objects and generators are the colimits of the
/// object and morphism sets, relations are the composition tables of the
/// nodes.
#[derive(Debug, Clone)]
pub struct DirectPresentation {
    pub fp: FpCat,
    pub objects: SetColimit,
    pub morphisms: SetColimit,
}

pub fn direct_presentation(d: &CatDiagram, fuel: usize) -> Result<DirectPresentation> {
    let objects = colim_set(&SetDiagram {
        shape: d.shape.clone(),
        nodes: d.nodes.iter().map(|c| c.objects().to_vec()).collect(),
        maps: d.maps.iter().map(|f| f.obj_map.clone()).collect(),
    });
    let morphisms = colim_set(&SetDiagram {
        shape: d.shape.clone(),
        nodes: d
            .nodes
            .iter()
            .map(|c| c.morphisms().iter().map(|m| m.name.clone()).collect())
            .collect(),
        maps: d.maps.iter().map(|f| f.mor_map.clone()).collect(),
    });
    let generators = morphisms
        .members
        .iter()
        .zip(&morphisms.names)
        .map(|(m, name)| {
            let (j, f) = m[0];
            let mf = d.nodes[j].morphism(f);
            Edge::new(name.clone(), objects.legs[j][mf.src], objects.legs[j][mf.tgt])
        })
        .collect();
    let mut relations = Vec::new();
    for (j, c) in d.nodes.iter().enumerate() {
        let g = |f: usize| morphisms.legs[j][f];
        let o = |a: usize| objects.legs[j][a];
        for a in 0..c.object_count() {
            relations.push((
                Path {
                    src: o(a),
                    tgt: o(a),
                    edges: vec![g(c.identity(a))],
                },
                Path::identity(o(a)),
            ));
        }
        for (f, h) in c.composable_pairs() {
            let (s, t) = (o(c.morphism(f).src), o(c.morphism(h).tgt));
            relations.push((
                Path {
                    src: s,
                    tgt: t,
                    edges: vec![g(f), g(h)],
                },
                Path {
                    src: s,
                    tgt: t,
                    edges: vec![g(c.comp(f, h))],
                },
            ));
        }
    }
    let pres = Presentation {
        objects: objects.names.clone(),
        generators,
        relations,
    };
    Ok(DirectPresentation {
        fp: orient_and_complete(pres, fuel)?,
        objects,
        morphisms,
    })
}

/// Both presentations must induce the same classes on all paths of length
/// at most `max_len`, under the generator correspondence given by the legs.
pub fn compare_with_direct(d: &CatDiagram, colim: &CatColimit, direct: &DirectPresentation, max_len: usize) -> Verdict {
    let fp = &colim.ho.fp;
    if !fp.is_complete() || !direct.fp.is_complete() {
        return Verdict::Inconclusive("a presentation is not complete".into());
    }
    let mut gen_map = vec![usize::MAX; fp.edge_count()];
    let mut obj_map = vec![usize::MAX; fp.vertex_count()];
    for (j, c) in d.nodes.iter().enumerate() {
        let leg = &colim.sset.legs[j];
        for a in 0..c.object_count() {
            let v = leg.components[0][a];
            let w = direct.objects.legs[j][a];
            if obj_map[v] != usize::MAX && obj_map[v] != w {
                return Verdict::Fail("object correspondence is not a function".into());
            }
            obj_map[v] = w;
        }
        for f in 0..c.morphism_count() {
            let e = leg.components[1][colim.nerves[j].edge_of(f)];
            let g = direct.morphisms.legs[j][f];
            if gen_map[e] != usize::MAX && gen_map[e] != g {
                return Verdict::Fail("generator correspondence is not a function".into());
            }
            gen_map[e] = g;
        }
    }
    if gen_map.contains(&usize::MAX) || obj_map.contains(&usize::MAX) {
        return Verdict::Fail("correspondence misses a generator or object".into());
    }
    let mut fwd: HashMap<Path, Path> = HashMap::new();
    let mut bwd: HashMap<Path, Path> = HashMap::new();
    for len in 0..=max_len {
        let paths = if len == 0 {
            (0..fp.vertex_count()).map(Path::identity).collect()
        } else {
            paths_of_length(fp, len)
        };
        for p in paths {
            let a = fp.normalize(&p);
            let tr = Path {
                src: obj_map[p.src],
                tgt: obj_map[p.tgt],
                edges: p.edges.iter().map(|&e| gen_map[e]).collect(),
            };
            let b = direct.fp.normalize(&tr);
            if fwd.entry(a.clone()).or_insert_with(|| b.clone()) != &b || bwd.entry(b).or_insert(a) != &fp.normalize(&p) {
                return Verdict::Fail(format!(
                    "the presentations separate different paths at length {len}"
                ));
            }
        }
    }
    Verdict::Pass
}

/// A cocone with a finite apex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocone {
    pub apex: FinCat,
    pub legs: Vec<CatFunctor>,
}

impl Cocone {
    pub fn validate(&self, d: &CatDiagram) -> Result<()> {
        if self.legs.len() != d.nodes.len() {
            return Err(Error::Malformed("one leg per node required".into()));
        }
        for (j, leg) in self.legs.iter().enumerate() {
            leg.check(&d.nodes[j], &self.apex)?;
        }
        for (u, f) in d.maps.iter().enumerate() {
            let (a, b) = (d.shape.morphism(u).src, d.shape.morphism(u).tgt);
            if f.then(&self.legs[b]) != self.legs[a] {
                return Err(Error::Law(format!(
                    "cocone legs do not commute along {}",
                    d.shape.morphism(u).name
                )));
            }
        }
        Ok(())
    }
}

/// For each probe, the colimit must admit exactly one mediating functor.
pub fn verify_colimit_cat(
    d: &CatDiagram,
    colim: &CatColimit,
    probes: &[Cocone],
    guard: u64,
    exec: Exec,
) -> Result<Vec<Verdict>> {
    for p in probes {
        p.validate(d)?;
    }
    let results = exec.map(probes, |p| -> Result<Verdict> {
        let candidates = enumerate_fp_functors(&colim.ho.fp, &p.apex, guard, Exec::Sequential)?;
        let count = candidates
            .iter()
            .filter(|m| {
                d.nodes.iter().enumerate().all(|(j, c)| {
                    let leg = &colim.legs[j];
                    (0..c.object_count()).all(|a| m.obj_map[leg.obj_map[a]] == p.legs[j].obj_map[a])
                        && (0..c.morphism_count()).all(|f| m.eval(&p.apex, &leg.gen_map[f]) == p.legs[j].mor_map[f])
                })
            })
            .count();
        Ok(match count {
            1 => Verdict::Pass,
            0 => Verdict::Fail("no mediating functor".into()),
            n => Verdict::Fail(format!("{n} mediating functors")),
        })
    });
    results.into_iter().collect()
}

/// The colimit cocone itself, when the colimit is finite.
pub fn materialize_cocone(d: &CatDiagram, colim: &CatColimit, bound: usize) -> Result<Cocone> {
    let mat = colim.ho.fp.to_fincat(bound)?;
    let legs = colim
        .legs
        .iter()
        .zip(&d.nodes)
        .map(|(leg, c)| {
            Ok(CatFunctor {
                obj_map: leg.obj_map.clone(),
                mor_map: (0..c.morphism_count())
                    .map(|f| {
                        mat.morphism_of(&leg.gen_map[f])
                            .ok_or_else(|| Error::Internal("leg image is not a normal form".into()))
                    })
                    .collect::<Result<_>>()?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Cocone { apex: mat.cat, legs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{cyclic_group, discrete, find_isomorphism, fin_ordinal, terminal, DEFAULT_GUARD};
    use crate::quiverkit::{free_category, Quiver};
    use crate::rewrite::DEFAULT_FUEL;

    fn shape(objects: &[&str], arrows: &[(&str, usize, usize)]) -> FinCat {
        let q = Quiver::new(
            objects.iter().map(|s| s.to_string()).collect(),
            arrows.iter().map(|&(n, s, t)| Edge::new(n, s, t)).collect(),
        )
        .unwrap();
        free_category(&q, DEFAULT_FUEL).to_fincat(4).unwrap().cat
    }

    fn point_into(c: &FinCat, a: usize) -> CatFunctor {
        CatFunctor {
            obj_map: vec![a],
            mor_map: vec![c.identity(a)],
        }
    }

    fn coequalizer() -> CatDiagram {
        let s = shape(&["a", "b"], &[("u", 0, 1), ("v", 0, 1)]);
        let f2 = fin_ordinal(1);
        let (u, v) = (s.morphism_by_name("u").unwrap(), s.morphism_by_name("v").unwrap());
        CatDiagram::new(s, vec![terminal(), f2.clone()], vec![(u, point_into(&f2, 0)), (v, point_into(&f2, 1))]).unwrap()
    }

    fn pushout() -> CatDiagram {
        let s = shape(&["a", "b", "c"], &[("u", 0, 1), ("v", 0, 2)]);
        let f2 = fin_ordinal(1);
        let (u, v) = (s.morphism_by_name("u").unwrap(), s.morphism_by_name("v").unwrap());
        CatDiagram::new(
            s,
            vec![terminal(), f2.clone(), f2.clone()],
            vec![(u, point_into(&f2, 1)), (v, point_into(&f2, 0))],
        )
        .unwrap()
    }

    #[test]
    fn set_colimits() {
        let d = SetDiagram::new(discrete(2), vec![vec!["a".into()], vec!["b".into()]], vec![]).unwrap();
        assert_eq!(colim_set(&d).names.len(), 2);
        let s = shape(&["p", "q"], &[("u", 0, 1), ("v", 0, 1)]);
        let (u, v) = (s.morphism_by_name("u").unwrap(), s.morphism_by_name("v").unwrap());
        let d = SetDiagram::new(s, vec![vec!["*".into()], vec!["x".into(), "y".into()]], vec![(u, vec![0]), (v, vec![1])])
            .unwrap();
        let c = colim_set(&d);
        assert_eq!(c.names.len(), 1);
        assert_eq!(c.legs, vec![vec![0], vec![0, 0]]);
    }

    #[test]
    fn name_collisions_are_resolved() {
        let d = SetDiagram::new(discrete(2), vec![vec!["a".into()], vec!["a".into()]], vec![]).unwrap();
        assert_eq!(colim_set(&d).names, vec!["a".to_string(), "a_x1".to_string()]);
    }

    #[test]
    fn nonfunctorial_diagram_is_rejected() {
        let s = shape(&["a", "b", "c"], &[("u", 0, 1), ("v", 1, 2)]);
        let nodes = vec![vec!["x".to_string()], vec!["y".into(), "z".into()], vec!["w".into(), "t".into()]];
        let u = s.morphism_by_name("u").unwrap();
        let v = s.morphism_by_name("v").unwrap();
        let uv = s.comp(u, v);
        let d = SetDiagram::new(s.clone(), nodes.clone(), vec![(u, vec![1]), (v, vec![0, 1])]).unwrap();
        assert_eq!(d.maps[uv], vec![1]);
        let bad = SetDiagram::new(s, nodes, vec![(u, vec![1]), (v, vec![0, 1]), (uv, vec![0])]);
        assert!(matches!(bad, Err(Error::Law(_))));
    }

    #[test]
    fn circle_as_a_coequalizer() {
        let s = shape(&["a", "b"], &[("u", 0, 1), ("v", 0, 1)]);
        let (u, v) = (s.morphism_by_name("u").unwrap(), s.morphism_by_name("v").unwrap());
        let pt = TruncSSet::terminal(2).unwrap();
        let d1 = TruncSSet::standard_simplex(1, 2).unwrap();
        let vertex = |i: usize| SimplicialMap {
            components: (0..=2)
                .map(|k| vec![d1.simplex_by_name(k, &i.to_string().repeat(k + 1)).unwrap()])
                .collect(),
        };
        let (v0, v1) = (vertex(0), vertex(1));
        let d = SSetDiagram::new(s, vec![pt, d1], vec![(u, v0), (v, v1)]).unwrap();
        let c = colim_sset(&d).unwrap();
        assert_eq!(c.sset.level_sizes(), vec![1, 2, 3]);
        assert_eq!(c.sset.nondegenerate(1).len(), 1);
        assert!(c.sset.nondegenerate(2).is_empty());
    }

    #[test]
    fn initial_node_along_bijections() {
        let s = shape(&["a", "b", "c"], &[("u", 0, 1), ("v", 0, 2)]);
        let (u, v) = (s.morphism_by_name("u").unwrap(), s.morphism_by_name("v").unwrap());
        let names = |p: &str| (0..3).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
        let d = SetDiagram::new(s, vec![names("x"), names("y"), names("z")], vec![(u, vec![2, 0, 1]), (v, vec![1, 2, 0])])
            .unwrap();
        let c = colim_set(&d);
        assert_eq!(c.names, names("x"));
        assert_eq!(c.legs[0], vec![0, 1, 2]);
    }

    #[test]
    fn pushout_of_edges_is_a_path() {
        let s = shape(&["a", "b", "c"], &[("u", 0, 1), ("v", 0, 2)]);
        let (u, v) = (s.morphism_by_name("u").unwrap(), s.morphism_by_name("v").unwrap());
        let pt = TruncSSet::terminal(2).unwrap();
        let d1 = TruncSSet::standard_simplex(1, 2).unwrap();
        let vertex = |i: usize| SimplicialMap {
            components: (0..=2)
                .map(|k| vec![d1.simplex_by_name(k, &i.to_string().repeat(k + 1)).unwrap()])
                .collect(),
        };
        let d = SSetDiagram::new(s, vec![pt, d1.clone(), d1.clone()], vec![(u, vertex(1)), (v, vertex(0))]).unwrap();
        let c = colim_sset(&d).unwrap();
        assert_eq!(c.sset.level_size(0), 3);
        let edges = c.sset.nondegenerate(1);
        assert_eq!(edges.len(), 2);
        let ends: Vec<(usize, usize)> = edges.iter().map(|&e| (c.sset.face(1, 1, e), c.sset.face(1, 0, e))).collect();
        assert_eq!(ends[0].1, ends[1].0);
        assert!(c.sset.nondegenerate(2).is_empty());
    }

    #[test]
    fn coequalizer_is_bn() {
        let d = coequalizer();
        let c = colim_cat(&d, DEFAULT_FUEL).unwrap();
        let ess = c.ho.fp.essential();
        assert_eq!((ess.objects, ess.generators.len(), ess.relations.len()), (1, 1, 0));
        assert!(c.ho.fp.is_complete());
        let l = d.nodes[1].morphism_by_name("l01").unwrap();
        assert_eq!(c.legs[1].gen_map[l].edges, vec![ess.generators[0]]);
        assert!(c.check_cocone(&d).is_pass());
        let direct = direct_presentation(&d, DEFAULT_FUEL).unwrap();
        assert!(compare_with_direct(&d, &c, &direct, 5).is_pass());
        // Probe: Z/2 with the arrow sent to the involution.
        let z2 = cyclic_group(2);
        let t = z2.morphism_by_name("t").unwrap();
        let probe = Cocone {
            apex: z2.clone(),
            legs: vec![point_into(&z2, 0), CatFunctor {
                obj_map: vec![0, 0],
                mor_map: vec![0, t, 0],
            }],
        };
        let v = verify_colimit_cat(&d, &c, &[probe], DEFAULT_GUARD, Exec::Sequential).unwrap();
        assert!(v[0].is_pass());
    }

    #[test]
    fn coproduct_is_discrete() {
        let d = CatDiagram::new(discrete(2), vec![terminal(), terminal()], vec![]).unwrap();
        let c = colim_cat(&d, DEFAULT_FUEL).unwrap();
        let m = c.ho.fp.to_fincat(4).unwrap();
        assert!(find_isomorphism(&m.cat, &discrete(2), DEFAULT_GUARD).unwrap().is_some());
    }

    #[test]
    fn pushout_of_arrows_is_a_chain() {
        let d = pushout();
        let c = colim_cat(&d, DEFAULT_FUEL).unwrap();
        let cocone = materialize_cocone(&d, &c, 8).unwrap();
        assert!(find_isomorphism(&cocone.apex, &fin_ordinal(2), DEFAULT_GUARD).unwrap().is_some());
        let v = verify_colimit_cat(&d, &c, std::slice::from_ref(&cocone), DEFAULT_GUARD, Exec::Parallel).unwrap();
        assert!(v[0].is_pass());
        let direct = direct_presentation(&d, DEFAULT_FUEL).unwrap();
        assert!(compare_with_direct(&d, &c, &direct, 5).is_pass());
    }

    #[test]
    fn cocone_validation() {
        let d = pushout();
        let f3 = fin_ordinal(2);
        let bad = Cocone {
            apex: f3.clone(),
            legs: vec![point_into(&f3, 0), point_into_arrow(&f3, 0, 1), point_into_arrow(&f3, 1, 2)],
        };
        assert!(bad.validate(&d).is_err());
    }

    fn point_into_arrow(c: &FinCat, a: usize, b: usize) -> CatFunctor {
        let f = c.hom(a, b)[0];
        CatFunctor {
            obj_map: vec![a, b],
            mor_map: vec![c.identity(a), f, c.identity(b)],
        }
    }
}
