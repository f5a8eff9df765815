//! Finite categories given by explicit composition tables.
//!
//! Objects and morphisms are dense indices with a side table of names.
//! Composition is stored diagrammatically: `compose(f, g)` is "f, then g".

use crate::error::{Error, Result};
use crate::exec::Exec;
use serde::{Deserialize, Serialize};

/// Default bound on the size of any brute-force search.
pub const DEFAULT_GUARD: u64 = 1_000_000;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

impl Morphism {
    pub fn new(name: impl Into<String>, src: usize, tgt: usize) -> Self {
        Morphism {
            name: name.into(),
            src,
            tgt,
        }
    }
}

/// Serialized shape of a [`FinCat`]; `table` holds `[f, g, f;g]` triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinCatData {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<usize>,
    pub table: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FinCatData", into = "FinCatData")]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    comp: Vec<usize>,
    homs: Vec<Vec<usize>>,
}

impl TryFrom<FinCatData> for FinCat {
    type Error = Error;
    fn try_from(d: FinCatData) -> Result<Self> {
        let table = d.table.iter().map(|t| ((t[0], t[1]), t[2])).collect();
        FinCat::new(d.objects, d.morphisms, d.identities, table)
    }
}

impl From<FinCat> for FinCatData {
    fn from(c: FinCat) -> Self {
        let table = c
            .composable_pairs()
            .map(|(f, g)| [f, g, c.comp[f * c.morphisms.len() + g]])
            .collect();
        FinCatData {
            objects: c.objects,
            morphisms: c.morphisms,
            identities: c.identities,
            table,
        }
    }
}

impl FinCat {
    /// Builds a category from a full composition table.
    ///
    /// Checks shape only: indices in range, identities are endomorphisms,
    /// every composable pair has exactly one entry with the right endpoints.
    /// Unit and associativity laws are checked by [`FinCat::validate`].
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        table: Vec<((usize, usize), usize)>,
    ) -> Result<Self> {
        let n = objects.len();
        let m = morphisms.len();
        for (i, f) in morphisms.iter().enumerate() {
            if f.src >= n || f.tgt >= n {
                return Err(Error::Malformed(format!(
                    "morphism {} ({i}) has an endpoint outside the {n} objects",
                    f.name
                )));
            }
        }
        if identities.len() != n {
            return Err(Error::Malformed(format!(
                "{} identities given for {n} objects",
                identities.len()
            )));
        }
        for (a, &i) in identities.iter().enumerate() {
            if i >= m || morphisms[i].src != a || morphisms[i].tgt != a {
                return Err(Error::Malformed(format!(
                    "identity of object {} is not an endomorphism of it",
                    objects[a]
                )));
            }
        }
        let mut comp = vec![NONE; m * m];
        for ((f, g), h) in table {
            if f >= m || g >= m || h >= m {
                return Err(Error::Malformed(format!(
                    "table entry ({f}, {g}) -> {h} references a missing morphism"
                )));
            }
            let (mf, mg, mh) = (&morphisms[f], &morphisms[g], &morphisms[h]);
            if mf.tgt != mg.src {
                return Err(Error::Malformed(format!(
                    "table entry {}.{} is not composable",
                    mf.name, mg.name
                )));
            }
            if mh.src != mf.src || mh.tgt != mg.tgt {
                return Err(Error::Malformed(format!(
                    "table entry {}.{} = {} has wrong endpoints",
                    mf.name, mg.name, mh.name
                )));
            }
            if comp[f * m + g] != NONE {
                return Err(Error::Malformed(format!(
                    "table entry {}.{} given twice",
                    mf.name, mg.name
                )));
            }
            comp[f * m + g] = h;
        }
        for f in 0..m {
            for g in 0..m {
                if morphisms[f].tgt == morphisms[g].src && comp[f * m + g] == NONE {
                    return Err(Error::Malformed(format!(
                        "table has no entry for {}.{}",
                        morphisms[f].name, morphisms[g].name
                    )));
                }
            }
        }
        let mut homs = vec![Vec::new(); n * n];
        for (i, f) in morphisms.iter().enumerate() {
            homs[f.src * n + f.tgt].push(i);
        }
        Ok(FinCat {
            objects,
            morphisms,
            identities,
            comp,
            homs,
        })
    }

    /// Builds a category whose table is given by a total function on
    /// composable pairs.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        mut compose: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        let mut table = Vec::new();
        for f in 0..morphisms.len() {
            for g in 0..morphisms.len() {
                if morphisms[f].tgt == morphisms[g].src {
                    table.push(((f, g), compose(f, g)));
                }
            }
        }
        FinCat::new(objects, morphisms, identities, table)
    }

    /// Exhaustive check of the unit and associativity laws; reports the
    /// first violation.
    pub fn validate(&self) -> Result<()> {
        for (f, mf) in self.morphisms.iter().enumerate() {
            let ida = self.identities[mf.src];
            let idb = self.identities[mf.tgt];
            if self.comp(ida, f) != f {
                return Err(Error::Law(format!(
                    "left unit fails: id({}).{} != {}",
                    self.objects[mf.src], mf.name, mf.name
                )));
            }
            if self.comp(f, idb) != f {
                return Err(Error::Law(format!(
                    "right unit fails: {}.id({}) != {}",
                    mf.name, self.objects[mf.tgt], mf.name
                )));
            }
        }
        for (f, g) in self.composable_pairs() {
            let fg = self.comp(f, g);
            for &h in self.out_of(self.morphisms[g].tgt) {
                let left = self.comp(fg, h);
                let right = self.comp(f, self.comp(g, h));
                if left != right {
                    return Err(Error::Law(format!(
                        "associativity fails on ({}, {}, {})",
                        self.morphisms[f].name, self.morphisms[g].name, self.morphisms[h].name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Copy of `self` with one table entry replaced (endpoints still checked).
    pub fn with_composite(&self, f: usize, g: usize, h: usize) -> Result<FinCat> {
        let mut table: Vec<((usize, usize), usize)> = self
            .composable_pairs()
            .map(|(a, b)| ((a, b), self.comp(a, b)))
            .collect();
        let entry = table
            .iter_mut()
            .find(|(k, _)| *k == (f, g))
            .ok_or_else(|| Error::Malformed(format!("({f}, {g}) is not composable")))?;
        entry.1 = h;
        FinCat::new(
            self.objects.clone(),
            self.morphisms.clone(),
            self.identities.clone(),
            table,
        )
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].src] == f
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a * self.objects.len() + b]
    }

    fn out_of(&self, a: usize) -> impl Iterator<Item = &usize> + '_ {
        (0..self.objects.len()).flat_map(move |b| self.hom(a, b).iter())
    }

    /// Composite of composable `f` then `g`. Panics if not composable.
    pub fn comp(&self, f: usize, g: usize) -> usize {
        let h = self.comp[f * self.morphisms.len() + g];
        assert!(h != NONE, "morphisms {f} and {g} are not composable");
        h
    }

    pub fn try_comp(&self, f: usize, g: usize) -> Option<usize> {
        match self.comp.get(f * self.morphisms.len() + g) {
            Some(&h) if h != NONE => Some(h),
            _ => None,
        }
    }

    /// Composite of a sequence of composable morphisms; `None` if empty.
    pub fn comp_all(&self, fs: &[usize]) -> Option<usize> {
        let (&first, rest) = fs.split_first()?;
        Some(rest.iter().fold(first, |acc, &g| self.comp(acc, g)))
    }

    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.morphisms.len();
        (0..m).flat_map(move |f| {
            (0..m)
                .filter(move |&g| self.morphisms[f].tgt == self.morphisms[g].src)
                .map(move |g| (f, g))
        })
    }

    pub fn object_by_name(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<usize> {
        self.morphisms.iter().position(|f| f.name == name)
    }

    /// `[f]` composable morphisms of length `k`; `chains(0)` are the objects.
    pub fn chains(&self, k: usize) -> Vec<ComposableChain> {
        if k == 0 {
            return (0..self.objects.len())
                .map(|a| ComposableChain {
                    objects: vec![a],
                    arrows: vec![],
                })
                .collect();
        }
        let mut out = Vec::new();
        let mut arrows = Vec::with_capacity(k);
        self.extend_chain(k, &mut arrows, &mut out);
        out
    }

    fn extend_chain(&self, k: usize, arrows: &mut Vec<usize>, out: &mut Vec<ComposableChain>) {
        if arrows.len() == k {
            let mut objects = vec![self.morphisms[arrows[0]].src];
            objects.extend(arrows.iter().map(|&f| self.morphisms[f].tgt));
            out.push(ComposableChain {
                objects,
                arrows: arrows.clone(),
            });
            return;
        }
        for f in 0..self.morphisms.len() {
            if let Some(&last) = arrows.last() {
                if self.morphisms[last].tgt != self.morphisms[f].src {
                    continue;
                }
            }
            arrows.push(f);
            self.extend_chain(k, arrows, out);
            arrows.pop();
        }
    }
}

/// A sequence `c₀ -f₁-> c₁ -> … -fₖ-> cₖ` of composable morphisms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComposableChain {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl ComposableChain {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Object and morphism maps of a functor between finite categories.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CatFunctor {
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl CatFunctor {
    pub fn identity(c: &FinCat) -> Self {
        CatFunctor {
            obj_map: (0..c.object_count()).collect(),
            mor_map: (0..c.morphism_count()).collect(),
        }
    }

    /// `self` then `other`.
    pub fn then(&self, other: &CatFunctor) -> CatFunctor {
        CatFunctor {
            obj_map: self.obj_map.iter().map(|&a| other.obj_map[a]).collect(),
            mor_map: self.mor_map.iter().map(|&f| other.mor_map[f]).collect(),
        }
    }

    /// Exhaustive functor-law check.
    pub fn check(&self, from: &FinCat, to: &FinCat) -> Result<()> {
        if self.obj_map.len() != from.object_count() || self.mor_map.len() != from.morphism_count()
        {
            return Err(Error::Malformed("functor maps have the wrong length".into()));
        }
        if self.obj_map.iter().any(|&a| a >= to.object_count())
            || self.mor_map.iter().any(|&f| f >= to.morphism_count())
        {
            return Err(Error::Malformed("functor maps leave the target".into()));
        }
        for (f, mf) in from.morphisms().iter().enumerate() {
            let img = to.morphism(self.mor_map[f]);
            if img.src != self.obj_map[mf.src] || img.tgt != self.obj_map[mf.tgt] {
                return Err(Error::Law(format!("functor does not preserve endpoints of {}", mf.name)));
            }
        }
        for a in 0..from.object_count() {
            if self.mor_map[from.identity(a)] != to.identity(self.obj_map[a]) {
                return Err(Error::Law(format!(
                    "functor does not preserve the identity of {}",
                    from.objects()[a]
                )));
            }
        }
        for (f, g) in from.composable_pairs() {
            if self.mor_map[from.comp(f, g)] != to.comp(self.mor_map[f], self.mor_map[g]) {
                return Err(Error::Law(format!(
                    "functor does not preserve {}.{}",
                    from.morphism(f).name,
                    from.morphism(g).name
                )));
            }
        }
        Ok(())
    }

    pub fn is_bijective(&self, from: &FinCat, to: &FinCat) -> bool {
        self.obj_map.len() == from.object_count()
            && self.mor_map.len() == from.morphism_count()
            && is_bijection(&self.obj_map, to.object_count())
            && is_bijection(&self.mor_map, to.morphism_count())
    }
}

pub(crate) fn is_bijection(map: &[usize], target_size: usize) -> bool {
    if map.len() != target_size {
        return false;
    }
    let mut seen = vec![false; target_size];
    for &x in map {
        if x >= target_size || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

fn ordinal_names(n: usize) -> Vec<String> {
    (0..=n).map(|i| i.to_string()).collect()
}

/// The ordinal category `0 -> 1 -> … -> n` (so `Fin(n+1)`).
pub fn fin_ordinal(n: usize) -> FinCat {
    let mut morphisms = Vec::new();
    let mut index = vec![vec![NONE; n + 1]; n + 1];
    for (i, row) in index.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate().skip(i) {
            let name = if i == j { format!("id({i})") } else { format!("l{i}{j}") };
            *slot = morphisms.len();
            morphisms.push(Morphism::new(name, i, j));
        }
    }
    let identities = (0..=n).map(|i| index[i][i]).collect();
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|f| (f.src, f.tgt)).collect();
    FinCat::from_fn(ordinal_names(n), morphisms, identities, |f, g| index[ends[f].0][ends[g].1])
        .expect("ordinal category is well-formed")
}

pub fn terminal() -> FinCat {
    fin_ordinal(0)
}

/// One-object category of a finite monoid; element 0 must be the unit.
pub fn monoid(object: &str, elements: &[&str], mult: impl Fn(usize, usize) -> usize) -> Result<FinCat> {
    let morphisms = elements.iter().map(|e| Morphism::new(*e, 0, 0)).collect();
    FinCat::from_fn(vec![object.to_string()], morphisms, vec![0], mult)
}

/// The cyclic group `Z/n` as a one-object category; generator named `t`.
pub fn cyclic_group(n: usize) -> FinCat {
    let names: Vec<String> = (0..n)
        .map(|k| match k {
            0 => "id(*)".to_string(),
            1 => "t".to_string(),
            k => format!("t{k}"),
        })
        .collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    monoid("*", &refs, |a, b| (a + b) % n).expect("cyclic group is well-formed")
}

/// `n` objects and only identities.
pub fn discrete(n: usize) -> FinCat {
    let objects: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let morphisms = (0..n).map(|i| Morphism::new(format!("id(x{i})"), i, i)).collect();
    FinCat::from_fn(objects, morphisms, (0..n).collect(), |f, _| f).expect("discrete category")
}

pub struct Product {
    pub cat: FinCat,
    pub left: CatFunctor,
    pub right: CatFunctor,
}

/// Binary product with its two projections.
pub fn product(c: &FinCat, d: &FinCat) -> Product {
    let (nc, nd) = (c.object_count(), d.object_count());
    let md = d.morphism_count();
    let objects: Vec<String> = (0..nc * nd)
        .map(|k| format!("({},{})", c.objects()[k / nd], d.objects()[k % nd]))
        .collect();
    let morphisms: Vec<Morphism> = (0..c.morphism_count() * md)
        .map(|k| {
            let (f, g) = (c.morphism(k / md), d.morphism(k % md));
            let name = if c.is_identity(k / md) && d.is_identity(k % md) {
                format!("id({})", objects[f.src * nd + g.src])
            } else {
                format!("({},{})", f.name, g.name)
            };
            Morphism::new(name, f.src * nd + g.src, f.tgt * nd + g.tgt)
        })
        .collect();
    let identities = (0..nc * nd)
        .map(|k| c.identity(k / nd) * md + d.identity(k % nd))
        .collect();
    let cat = FinCat::from_fn(objects, morphisms, identities, |x, y| {
        c.comp(x / md, y / md) * md + d.comp(x % md, y % md)
    })
    .expect("product of well-formed categories");
    let left = CatFunctor {
        obj_map: (0..nc * nd).map(|k| k / nd).collect(),
        mor_map: (0..cat.morphism_count()).map(|k| k / md).collect(),
    };
    let right = CatFunctor {
        obj_map: (0..nc * nd).map(|k| k % nd).collect(),
        mor_map: (0..cat.morphism_count()).map(|k| k % md).collect(),
    };
    Product { cat, left, right }
}

/// A generic "find all interpretations into a finite category" problem:
/// assign an object of `target` to each source object and a morphism to
/// each source arrow so that every equation evaluates equal.
pub(crate) struct ModelProblem<'a> {
    pub obj_count: usize,
    pub arrows: Vec<(usize, usize)>,
    /// `(anchor object, lhs word, rhs word)`; empty words are identities.
    pub equations: Vec<(usize, Vec<usize>, Vec<usize>)>,
    /// Arrows whose image is fixed to the identity of their (endo) object.
    pub forced_identity: Vec<bool>,
    pub target: &'a FinCat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Model {
    pub obj_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

impl<'a> ModelProblem<'a> {
    fn eval(&self, anchor: usize, word: &[usize], objs: &[usize], arrows: &[usize]) -> usize {
        word.iter()
            .fold(self.target.identity(objs[anchor]), |acc, &e| self.target.comp(acc, arrows[e]))
    }

    pub fn solve(&self, guard: u64, exec: Exec, what: &'static str) -> Result<Vec<Model>> {
        let nd = self.target.object_count() as u64;
        let obj_maps_count = nd
            .checked_pow(self.obj_count as u32)
            .filter(|&c| c <= guard)
            .ok_or(Error::GuardExceeded { what, limit: guard })?;
        let mut obj_maps = Vec::with_capacity(obj_maps_count as usize);
        if obj_maps_count > 0 {
            let mut cur = vec![0usize; self.obj_count];
            'odometer: loop {
                obj_maps.push(cur.clone());
                let mut k = self.obj_count;
                while k > 0 {
                    k -= 1;
                    cur[k] += 1;
                    if cur[k] < nd as usize {
                        continue 'odometer;
                    }
                    cur[k] = 0;
                }
                break;
            }
        }
        // Deterministic bound on the search: sum over object maps of the
        // product of candidate counts per arrow.
        let mut total: u64 = 0;
        for objs in &obj_maps {
            let mut prod: u64 = 1;
            for (i, &(s, t)) in self.arrows.iter().enumerate() {
                let c = if self.forced_identity[i] {
                    1
                } else {
                    self.target.hom(objs[s], objs[t]).len() as u64
                };
                prod = prod.saturating_mul(c);
                if prod == 0 {
                    break;
                }
            }
            total = total.saturating_add(prod);
            if total > guard {
                return Err(Error::GuardExceeded { what, limit: guard });
            }
        }
        // Equation i is checked once its last arrow is assigned.
        let mut schedule: Vec<Vec<usize>> = vec![Vec::new(); self.arrows.len() + 1];
        for (i, (_, l, r)) in self.equations.iter().enumerate() {
            let last = l.iter().chain(r.iter()).max().map_or(0, |&m| m + 1);
            schedule[last].push(i);
        }
        let branches = exec.map(&obj_maps, |objs| {
            let mut out = Vec::new();
            let ok = schedule[0].iter().all(|&q| {
                let (a, l, r) = &self.equations[q];
                self.eval(*a, l, objs, &[]) == self.eval(*a, r, objs, &[])
            });
            if ok {
                let mut arrows = Vec::with_capacity(self.arrows.len());
                self.dfs(objs, &schedule, &mut arrows, &mut out);
            }
            out
        });
        Ok(branches.into_iter().flatten().collect())
    }

    fn dfs(&self, objs: &[usize], schedule: &[Vec<usize>], arrows: &mut Vec<usize>, out: &mut Vec<Model>) {
        let k = arrows.len();
        if k == self.arrows.len() {
            out.push(Model {
                obj_map: objs.to_vec(),
                arrow_map: arrows.clone(),
            });
            return;
        }
        let (s, t) = self.arrows[k];
        let forced;
        let candidates: &[usize] = if self.forced_identity[k] {
            if objs[s] != objs[t] {
                return;
            }
            forced = [self.target.identity(objs[s])];
            &forced
        } else {
            self.target.hom(objs[s], objs[t])
        };
        for &c in candidates {
            arrows.push(c);
            let ok = schedule[k + 1].iter().all(|&q| {
                let (a, l, r) = &self.equations[q];
                self.eval(*a, l, objs, arrows) == self.eval(*a, r, objs, arrows)
            });
            if ok {
                self.dfs(objs, schedule, arrows, out);
            }
            arrows.pop();
        }
    }
}

/// All functors `c -> d`, ordered by object map then morphism map.
pub fn enumerate_functors(c: &FinCat, d: &FinCat, guard: u64, exec: Exec) -> Result<Vec<CatFunctor>> {
    // Variables are the non-identity morphisms of `c`.
    let vars: Vec<usize> = (0..c.morphism_count()).filter(|&f| !c.is_identity(f)).collect();
    let mut var_of = vec![NONE; c.morphism_count()];
    for (i, &f) in vars.iter().enumerate() {
        var_of[f] = i;
    }
    let word = |f: usize| if var_of[f] == NONE { vec![] } else { vec![var_of[f]] };
    let mut equations = Vec::new();
    for (f, g) in c.composable_pairs() {
        if c.is_identity(f) || c.is_identity(g) {
            continue;
        }
        let mut lhs = word(f);
        lhs.extend(word(g));
        equations.push((c.morphism(f).src, lhs, word(c.comp(f, g))));
    }
    let problem = ModelProblem {
        obj_count: c.object_count(),
        arrows: vars.iter().map(|&f| (c.morphism(f).src, c.morphism(f).tgt)).collect(),
        forced_identity: vec![false; vars.len()],
        equations,
        target: d,
    };
    let models = problem.solve(guard, exec, "functors")?;
    Ok(models
        .into_iter()
        .map(|m| {
            let mor_map = (0..c.morphism_count())
                .map(|f| {
                    if var_of[f] == NONE {
                        d.identity(m.obj_map[c.morphism(f).src])
                    } else {
                        m.arrow_map[var_of[f]]
                    }
                })
                .collect();
            CatFunctor {
                obj_map: m.obj_map,
                mor_map,
            }
        })
        .collect())
}

/// An isomorphism `c ≅ d` with its inverse, if one exists.
pub fn find_isomorphism(c: &FinCat, d: &FinCat, guard: u64) -> Result<Option<(CatFunctor, CatFunctor)>> {
    if c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count() {
        return Ok(None);
    }
    for f in enumerate_functors(c, d, guard, Exec::default())? {
        if !f.is_bijective(c, d) {
            continue;
        }
        let mut inv = CatFunctor {
            obj_map: vec![0; d.object_count()],
            mor_map: vec![0; d.morphism_count()],
        };
        for (a, &b) in f.obj_map.iter().enumerate() {
            inv.obj_map[b] = a;
        }
        for (x, &y) in f.mor_map.iter().enumerate() {
            inv.mor_map[y] = x;
        }
        if inv.check(d, c).is_ok() {
            return Ok(Some((f, inv)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordinals() {
        let t = fin_ordinal(0);
        assert_eq!((t.object_count(), t.morphism_count()), (1, 1));
        let w = fin_ordinal(1);
        assert_eq!((w.object_count(), w.morphism_count()), (2, 3));
        assert_eq!(w.hom(0, 1).len(), 1);
        assert!(w.hom(1, 0).is_empty());
        assert_eq!(fin_ordinal(2).morphism_count(), 6);
        for k in 0..=4 {
            fin_ordinal(k).validate().unwrap();
        }
    }

    #[test]
    fn cyclic_group_validates() {
        let z2 = cyclic_group(2);
        z2.validate().unwrap();
        assert_eq!(z2.composable_pairs().count() * 2, 8);
    }

    #[test]
    fn corrupted_composite_is_reported() {
        let z3 = cyclic_group(3);
        z3.validate().unwrap();
        // t.t should be t2; claiming t.t = t breaks associativity on (t, t, t2).
        let bad = z3.with_composite(1, 1, 1).unwrap();
        let err = bad.validate().unwrap_err();
        assert!(matches!(err, Error::Law(ref m) if m.contains("associativity")), "{err}");
        let bad = z3.with_composite(0, 1, 0).unwrap();
        let err = bad.validate().unwrap_err();
        assert!(matches!(err, Error::Law(ref m) if m.contains("left unit")), "{err}");
    }

    #[test]
    fn malformed_tables() {
        let m = vec![Morphism::new("id", 0, 0)];
        assert!(FinCat::new(vec!["a".into()], m.clone(), vec![0], vec![]).is_err());
        assert!(FinCat::new(vec!["a".into()], m.clone(), vec![0], vec![((0, 0), 3)]).is_err());
        assert!(FinCat::new(vec!["a".into()], m, vec![0], vec![((0, 0), 0)]).is_ok());
    }

    #[test]
    fn products() {
        let w = fin_ordinal(1);
        let p = product(&w, &w);
        assert_eq!((p.cat.object_count(), p.cat.morphism_count()), (4, 9));
        p.cat.validate().unwrap();
        p.left.check(&p.cat, &w).unwrap();
        p.right.check(&p.cat, &w).unwrap();
        let t = product(&cyclic_group(2), &terminal());
        assert_eq!((t.cat.object_count(), t.cat.morphism_count()), (1, 2));
        assert!(t.left.is_bijective(&t.cat, &cyclic_group(2)));
        // Projections are jointly injective on morphisms.
        let mut seen = std::collections::HashSet::new();
        for f in 0..p.cat.morphism_count() {
            assert!(seen.insert((p.left.mor_map[f], p.right.mor_map[f])));
        }
    }

    #[test]
    fn functor_counts() {
        let w = fin_ordinal(1);
        let seq = enumerate_functors(&w, &w, DEFAULT_GUARD, Exec::Sequential).unwrap();
        assert_eq!(seq.len(), 3);
        let par = enumerate_functors(&w, &w, DEFAULT_GUARD, Exec::Parallel).unwrap();
        assert_eq!(seq, par);
        assert_eq!(enumerate_functors(&terminal(), &fin_ordinal(3), DEFAULT_GUARD, Exec::default()).unwrap().len(), 4);
        assert_eq!(enumerate_functors(&w, &cyclic_group(2), DEFAULT_GUARD, Exec::default()).unwrap().len(), 2);
        for f in &seq {
            f.check(&w, &w).unwrap();
        }
    }

    #[test]
    fn functor_guard() {
        let big = fin_ordinal(6);
        let err = enumerate_functors(&big, &big, 100, Exec::default()).unwrap_err();
        assert!(matches!(err, Error::GuardExceeded { .. }));
    }

    #[test]
    fn chain_counts() {
        let w = fin_ordinal(1);
        for k in 0..=4 {
            assert_eq!(w.chains(k).len(), k + 2);
            assert_eq!(terminal().chains(k).len(), 1);
        }
        let sq = product(&w, &w).cat;
        assert_eq!(sq.chains(1).len(), sq.morphism_count());
        assert_eq!(sq.chains(2).len(), sq.composable_pairs().count());
    }

    #[test]
    fn isomorphism_search() {
        let w = fin_ordinal(1);
        let sq = product(&w, &w).cat;
        assert!(find_isomorphism(&sq, &sq, DEFAULT_GUARD).unwrap().is_some());
        assert!(find_isomorphism(&fin_ordinal(2), &sq, DEFAULT_GUARD).unwrap().is_none());
    }
}
