//! Nerves of finite categories and the checks built on them: strict Segal,
//! 2-coskeletality through matching objects, and full faithfulness of the
//! 2-truncated nerve.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fincat::{CatFunctor, ComposableChain, FinCat};
use crate::quiverkit::{forget_cat_to_reflquiver, paths_of_length, Path, Prefunctor};
use crate::report::Verdict;
use crate::simplex::{self, MonotoneMap, MAX_DIM};
use crate::sset::{SimplicialMap, TruncSSet};
use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

/// A nerve together with the chain behind every simplex.
#[derive(Debug, Clone)]
pub struct Nerve {
    pub sset: TruncSSet,
    pub chains: Vec<Vec<ComposableChain>>,
    index: Vec<HashMap<ComposableChain, usize>>,
}

impl Nerve {
    pub fn chain_index(&self, chain: &ComposableChain) -> Option<usize> {
        self.index.get(chain.len())?.get(chain).copied()
    }

    /// Index of the length-one chain on `f`; equal to `f` itself.
    pub fn edge_of(&self, f: usize) -> usize {
        f
    }

    pub fn truncate(&self, m: usize) -> Result<Nerve> {
        Ok(Nerve {
            sset: self.sset.truncate(m)?,
            chains: self.chains[..=m].to_vec(),
            index: self.index[..=m].to_vec(),
        })
    }
}

/// `α* c`: object `i` is `c_{α(i)}`, arrow `i` the composite of the segment
/// from `α(i)` to `α(i+1)`.
pub fn reindex(c: &FinCat, chain: &ComposableChain, alpha: &MonotoneMap) -> ComposableChain {
    let v = alpha.values();
    let objects = v.iter().map(|&i| chain.objects[i]).collect();
    let arrows = v
        .windows(2)
        .map(|w| {
            c.comp_all(&chain.arrows[w[0]..w[1]])
                .unwrap_or_else(|| c.identity(chain.objects[w[0]]))
        })
        .collect();
    ComposableChain { objects, arrows }
}

fn chain_name(c: &FinCat, chain: &ComposableChain) -> String {
    if chain.arrows.is_empty() {
        c.objects()[chain.objects[0]].clone()
    } else {
        chain
            .arrows
            .iter()
            .map(|&f| c.morphism(f).name.as_str())
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// The nerve of `c` truncated at `dim`; level `k` is `c.chains(k)`.
pub fn nerve(c: &FinCat, dim: usize) -> Result<Nerve> {
    if dim > MAX_DIM {
        return Err(Error::IndexOutOfRange {
            what: "dimension",
            index: dim,
            bound: MAX_DIM,
        });
    }
    let chains: Vec<Vec<ComposableChain>> = (0..=dim).map(|k| c.chains(k)).collect();
    let index: Vec<HashMap<ComposableChain, usize>> = chains
        .iter()
        .map(|l| l.iter().cloned().enumerate().map(|(i, ch)| (ch, i)).collect())
        .collect();
    let names = chains
        .iter()
        .map(|l| l.iter().map(|ch| chain_name(c, ch)).collect())
        .collect();
    let pull = |k: usize, alpha: MonotoneMap, x: usize| index[alpha.src()][&reindex(c, &chains[k][x], &alpha)];
    let sset = TruncSSet::from_fn(
        dim,
        names,
        |k, i, x| pull(k, simplex::delta(i, k - 1).expect("coface in range"), x),
        |k, i, x| pull(k, simplex::sigma(i, k).expect("codegeneracy in range"), x),
    )?;
    Ok(Nerve { sset, chains, index })
}

/// The 2-truncated nerve, as the truncation of the 4-truncated one.
pub fn nerve2(c: &FinCat) -> Result<Nerve> {
    nerve(c, MAX_DIM)?.truncate(2)
}

/// `N(f)`: chains are mapped arrow by arrow.
pub fn nerve_map(f: &CatFunctor, from: &Nerve, to: &Nerve) -> Result<SimplicialMap> {
    let components = from
        .chains
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|ch| {
                    let image = ComposableChain {
                        objects: ch.objects.iter().map(|&a| f.obj_map[a]).collect(),
                        arrows: ch.arrows.iter().map(|&g| f.mor_map[g]).collect(),
                    };
                    to.chain_index(&image)
                        .ok_or_else(|| Error::Law("functor image is not a chain of the target".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let m = SimplicialMap { components };
    m.validate(&from.sset, &to.sset)?;
    Ok(m)
}

/// The comparison `U₁ N₂ C ≅ Uʳ C` and its inverse.
pub fn phi_iso(c: &FinCat, nc: &Nerve) -> Result<(Prefunctor, Prefunctor)> {
    let q = nc.sset.one_truncation()?;
    let uc = forget_cat_to_reflquiver(c);
    let fwd = Prefunctor {
        vertex_map: nc.chains[0].iter().map(|ch| ch.objects[0]).collect(),
        edge_map: nc.chains[1].iter().map(|ch| ch.arrows[0]).collect(),
    };
    let mut bwd = Prefunctor {
        vertex_map: vec![0; c.object_count()],
        edge_map: vec![0; c.morphism_count()],
    };
    for (v, &a) in fwd.vertex_map.iter().enumerate() {
        bwd.vertex_map[a] = v;
    }
    for (e, &f) in fwd.edge_map.iter().enumerate() {
        bwd.edge_map[f] = e;
    }
    fwd.check_refl(&q, &uc)?;
    bwd.check_refl(&uc, &q)?;
    Ok((fwd, bwd))
}

/// Lifts a reflexive prefunctor `U₁ X -> Uʳ C` to `X -> N₂ C`, provided every
/// 2-simplex `σ` has `F(d₁σ) = F(d₂σ) · F(d₀σ)`.
pub fn to_nerve2_mk(x: &TruncSSet, c: &FinCat, nc: &Nerve, f: &Prefunctor) -> Result<SimplicialMap> {
    if x.dim() != 2 || nc.sset.dim() != 2 {
        return Err(Error::Precondition("lifting needs 2-truncated source and target".into()));
    }
    f.check_refl(&x.one_truncation()?, &forget_cat_to_reflquiver(c))?;
    let mut level2 = Vec::with_capacity(x.level_size(2));
    for s in 0..x.level_size(2) {
        let (a, b, diag) = (f.edge_map[x.face(2, 2, s)], f.edge_map[x.face(2, 0, s)], f.edge_map[x.face(2, 1, s)]);
        if c.comp(a, b) != diag {
            return Err(Error::Precondition(format!(
                "2-simplex {}: {} is not the composite of {} and {}",
                x.name(2, s),
                c.morphism(diag).name,
                c.morphism(a).name,
                c.morphism(b).name
            )));
        }
        let chain = ComposableChain {
            objects: vec![c.morphism(a).src, c.morphism(a).tgt, c.morphism(b).tgt],
            arrows: vec![a, b],
        };
        level2.push(nc.chain_index(&chain).ok_or_else(|| Error::Internal("pair missing from nerve".into()))?);
    }
    let m = SimplicialMap {
        components: vec![
            f.vertex_map.clone(),
            f.edge_map.iter().map(|&g| nc.edge_of(g)).collect(),
            level2,
        ],
    };
    m.validate(x, &nc.sset)?;
    Ok(m)
}

/// Equality of maps into a 2-truncated nerve, decided on levels 0 and 1.
///
/// Level 2 must then agree; a disagreement is reported as an internal error.
pub fn to_nerve2_ext(f: &SimplicialMap, g: &SimplicialMap) -> Result<bool> {
    if f.components.len() != 3 || g.components.len() != 3 {
        return Err(Error::Precondition("extensionality applies to 2-truncated maps".into()));
    }
    if f.components[..2] != g.components[..2] {
        return Ok(false);
    }
    if f.components[2] != g.components[2] {
        return Err(Error::Internal(
            "maps into a nerve agree on vertices and edges but not on 2-simplices".into(),
        ));
    }
    Ok(true)
}

/// Whether the spine map from `Xₖ` to length-`k` paths is a bijection.
pub fn check_strict_segal(x: &TruncSSet, k: usize) -> Result<Verdict> {
    if k > x.dim() {
        return Err(Error::IndexOutOfRange {
            what: "level",
            index: k,
            bound: x.dim(),
        });
    }
    if x.dim() == 0 {
        return Ok(Verdict::Pass);
    }
    let q = x.one_truncation()?;
    let mut seen: HashMap<Path, usize> = HashMap::new();
    for s in 0..x.level_size(k) {
        let p = x.spine(k, s)?;
        if let Some(&t) = seen.get(&p) {
            return Ok(Verdict::Fail(format!(
                "level {k}: {} and {} share a spine",
                x.name(k, t),
                x.name(k, s)
            )));
        }
        seen.insert(p, s);
    }
    let paths: Vec<Path> = if k == 0 {
        (0..x.level_size(0)).map(Path::identity).collect()
    } else {
        paths_of_length(&q, k)
    };
    for p in paths {
        if !seen.contains_key(&p) {
            let names: Vec<&str> = p.edges.iter().map(|&e| x.name(1, e)).collect();
            return Ok(Verdict::Fail(format!("level {k}: path {} has no filler", names.join("."))));
        }
    }
    Ok(Verdict::Pass)
}

/// Compatible families over the maps `[j] -> [n]`, `j <= 2`, and the unit
/// map from `Xₙ`.
#[derive(Debug, Clone)]
pub struct MatchingObject {
    pub n: usize,
    /// The indexing maps, in assignment order.
    pub arrows: Vec<MonotoneMap>,
    pub families: Vec<Vec<usize>>,
    /// For each `x ∈ Xₙ`, the index of `(α ↦ α* x)` among `families`.
    pub unit: Vec<usize>,
}

impl MatchingObject {
    pub fn unit_is_bijective(&self) -> bool {
        let mut hit = vec![false; self.families.len()];
        for &f in &self.unit {
            if hit[f] {
                return false;
            }
            hit[f] = true;
        }
        hit.iter().all(|&h| h)
    }
}

/// Enumerates the matching object of `x` at `n`.
///
/// Arrows are assigned in order of their largest value, so every family is
/// pruned as soon as a constraint closes. `guard` bounds search nodes.
pub fn matching_object(x: &TruncSSet, n: usize, guard: u64, exec: Exec) -> Result<MatchingObject> {
    if x.dim() < 2 || n > x.dim() {
        return Err(Error::Precondition(format!(
            "matching object at {n} needs dimension between 2 and {}, got {}",
            n,
            x.dim()
        )));
    }
    let mut arrows: Vec<MonotoneMap> = (0..=2.min(n)).flat_map(|j| simplex::enumerate(j, n)).collect();
    arrows.sort_by_key(|a| (*a.values().last().expect("nonempty"), a.src(), a.values().to_vec()));
    let pos: HashMap<MonotoneMap, usize> = arrows.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
    // (a, β, b): x_b = β* x_a, checked once both are assigned.
    let mut schedule: Vec<Vec<(usize, MonotoneMap, usize)>> = vec![Vec::new(); arrows.len()];
    for (a, alpha) in arrows.iter().enumerate() {
        for i in 0..=2 {
            for beta in simplex::enumerate(i, alpha.src()) {
                if beta.is_identity() {
                    continue;
                }
                let b = pos[&simplex::compose(&beta, alpha)?];
                schedule[a.max(b)].push((a, beta, b));
            }
        }
    }
    let search = FamilySearch {
        x,
        arrows: &arrows,
        schedule,
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        guard,
    };
    let first: Vec<usize> = (0..x.level_size(arrows[0].src())).collect();
    let branches = exec.map(&first, |&v| search.run(v));
    if search.aborted.load(Ordering::Relaxed) {
        return Err(Error::GuardExceeded {
            what: "matching families",
            limit: guard,
        });
    }
    let families: Vec<Vec<usize>> = branches.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    let lookup: HashMap<&[usize], usize> = families.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    let mut unit = Vec::with_capacity(x.level_size(n));
    for s in 0..x.level_size(n) {
        let fam = arrows.iter().map(|a| x.act(a, s)).collect::<Result<Vec<_>>>()?;
        let i = lookup
            .get(fam.as_slice())
            .copied()
            .ok_or_else(|| Error::Internal(format!("unit image of {} is not a compatible family", x.name(n, s))))?;
        unit.push(i);
    }
    Ok(MatchingObject {
        n,
        arrows,
        families,
        unit,
    })
}

struct FamilySearch<'a> {
    x: &'a TruncSSet,
    arrows: &'a [MonotoneMap],
    schedule: Vec<Vec<(usize, MonotoneMap, usize)>>,
    nodes: AtomicU64,
    aborted: AtomicBool,
    guard: u64,
}

impl FamilySearch<'_> {
    fn run(&self, first: usize) -> Result<Vec<Vec<usize>>> {
        let mut fam = vec![first];
        let mut out = Vec::new();
        if self.consistent(&fam)? {
            self.dfs(&mut fam, &mut out)?;
        }
        Ok(out)
    }

    fn consistent(&self, fam: &[usize]) -> Result<bool> {
        let k = fam.len() - 1;
        for (a, beta, b) in &self.schedule[k] {
            if self.x.act(beta, fam[*a])? != fam[*b] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn dfs(&self, fam: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) -> Result<()> {
        if self.aborted.load(Ordering::Relaxed) {
            return Ok(());
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.guard {
            self.aborted.store(true, Ordering::Relaxed);
            return Ok(());
        }
        let k = fam.len();
        if k == self.arrows.len() {
            out.push(fam.clone());
            return Ok(());
        }
        for v in 0..self.x.level_size(self.arrows[k].src()) {
            fam.push(v);
            if self.consistent(fam)? {
                self.dfs(fam, out)?;
            }
            fam.pop();
        }
        Ok(())
    }
}

/// Passes iff the unit maps into the matching objects at 3 and 4 are
/// bijections.
pub fn check_coskeletal2(x: &TruncSSet, guard: u64, exec: Exec) -> Result<Verdict> {
    if x.dim() != 4 {
        return Err(Error::Precondition(format!(
            "coskeletality check needs dimension 4, got {}",
            x.dim()
        )));
    }
    for n in [3, 4] {
        let m = matching_object(x, n, guard, exec)?;
        if !m.unit_is_bijective() {
            return Ok(Verdict::Fail(format!(
                "level {n}: {} simplices against {} compatible families",
                x.level_size(n),
                m.families.len()
            )));
        }
    }
    Ok(Verdict::Pass)
}

/// Recovers the functor behind a map `N₂ C -> N₂ D`, certifying
/// functoriality on every composable pair, and checks that its nerve
/// reproduces the map.
pub fn nerve2_full_lift(c: &FinCat, d: &FinCat, nc: &Nerve, nd: &Nerve, f: &SimplicialMap) -> Result<CatFunctor> {
    f.validate(&nc.sset, &nd.sset)?;
    let obj_map: Vec<usize> = (0..c.object_count()).map(|a| nd.chains[0][f.components[0][a]].objects[0]).collect();
    let mor_map: Vec<usize> = (0..c.morphism_count())
        .map(|g| nd.chains[1][f.components[1][nc.edge_of(g)]].arrows[0])
        .collect();
    for (s, ch) in nc.chains[2].iter().enumerate() {
        let (h, k) = (ch.arrows[0], ch.arrows[1]);
        let image = &nd.chains[2][f.components[2][s]];
        let hk = c.comp(h, k);
        if image.arrows != [mor_map[h], mor_map[k]] || d.comp(mor_map[h], mor_map[k]) != mor_map[hk] {
            return Err(Error::Internal(format!(
                "map is not functorial on {} then {}",
                c.morphism(h).name,
                c.morphism(k).name
            )));
        }
    }
    let g = CatFunctor { obj_map, mor_map };
    g.check(c, d).map_err(|e| Error::Internal(format!("lifted functor is invalid: {e}")))?;
    let back = nerve_map(&g, nc, nd)?;
    if !to_nerve2_ext(&back, f)? {
        return Err(Error::Internal("nerve of the lifted functor differs from the map".into()));
    }
    Ok(g)
}
