//! Truncated simplicial sets stored by their face and degeneracy actions.
//!
//! Only the generator actions are stored; the action of an arbitrary
//! monotone map is derived through its canonical factorization.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::quiverkit::{Edge, Path, Quiver, ReflQuiver};
use crate::simplex::{self, epi_mono_factor, MonotoneMap, MAX_DIM};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSetData {
    pub dim: usize,
    pub names: Vec<Vec<String>>,
    /// `face[k][i][x]`: the face `dᵢ` of `x` in level `k`; `face[0]` is empty.
    pub face: Vec<Vec<Vec<usize>>>,
    /// `degen[k][i][x]`: the degeneracy `sᵢ` of `x` in level `k`;
    /// `degen[dim]` is empty.
    pub degen: Vec<Vec<Vec<usize>>>,
}

/// An `n`-truncated simplicial set, `n = dim <= MAX_DIM`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SSetData", into = "SSetData")]
pub struct TruncSSet {
    dim: usize,
    names: Vec<Vec<String>>,
    face: Vec<Vec<Vec<usize>>>,
    degen: Vec<Vec<Vec<usize>>>,
}

impl TryFrom<SSetData> for TruncSSet {
    type Error = Error;
    fn try_from(d: SSetData) -> Result<Self> {
        TruncSSet::from_parts(d.dim, d.names, d.face, d.degen)
    }
}

impl From<TruncSSet> for SSetData {
    fn from(x: TruncSSet) -> Self {
        SSetData {
            dim: x.dim,
            names: x.names,
            face: x.face,
            degen: x.degen,
        }
    }
}

fn check_table(
    what: &'static str,
    table: &[Vec<usize>],
    arity: usize,
    len: usize,
    bound: usize,
    k: usize,
) -> Result<()> {
    if table.len() != arity {
        return Err(Error::Malformed(format!("level {k} needs {arity} {what} maps, got {}", table.len())));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != len {
            return Err(Error::Malformed(format!(
                "{what} {i} at level {k} has {} entries for {len} simplices",
                row.len()
            )));
        }
        if let Some(&v) = row.iter().find(|&&v| v >= bound) {
            return Err(Error::IndexOutOfRange { what, index: v, bound });
        }
    }
    Ok(())
}

impl TruncSSet {
    /// Validating constructor: table shapes, unique names per level and
    /// every simplicial identity.
    pub fn from_parts(
        dim: usize,
        names: Vec<Vec<String>>,
        face: Vec<Vec<Vec<usize>>>,
        degen: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::IndexOutOfRange {
                what: "dimension",
                index: dim,
                bound: MAX_DIM,
            });
        }
        if names.len() != dim + 1 || face.len() != dim + 1 || degen.len() != dim + 1 {
            return Err(Error::Malformed(format!("a {dim}-truncated simplicial set needs {} levels", dim + 1)));
        }
        for (k, level) in names.iter().enumerate() {
            let mut seen = HashSet::new();
            for n in level {
                if !seen.insert(n.as_str()) {
                    return Err(Error::Malformed(format!("duplicate simplex {n} at level {k}")));
                }
            }
        }
        for k in 0..=dim {
            let len = names[k].len();
            if k == 0 {
                check_table("face", &face[0], 0, len, 0, 0)?;
            } else {
                check_table("face", &face[k], k + 1, len, names[k - 1].len(), k)?;
            }
            if k == dim {
                check_table("degeneracy", &degen[k], 0, len, 0, k)?;
            } else {
                check_table("degeneracy", &degen[k], k + 1, len, names[k + 1].len(), k)?;
            }
        }
        let x = TruncSSet { dim, names, face, degen };
        x.check_identities()?;
        Ok(x)
    }

    fn check_identities(&self) -> Result<()> {
        let fail = |law: String, k: usize, x: usize| {
            Err(Error::Law(format!("simplicial identity {law} fails at {} (level {k})", self.names[k][x])))
        };
        for k in 0..=self.dim {
            for x in 0..self.names[k].len() {
                // dᵢdⱼ = dⱼ₋₁dᵢ for i < j.
                if k >= 2 {
                    for j in 1..=k {
                        for i in 0..j {
                            let l = self.face[k - 1][i][self.face[k][j][x]];
                            let r = self.face[k - 1][j - 1][self.face[k][i][x]];
                            if l != r {
                                return fail(format!("d{i}d{j} = d{}d{i}", j - 1), k, x);
                            }
                        }
                    }
                }
                // sᵢsⱼ = sⱼ₊₁sᵢ for i <= j.
                if k + 2 <= self.dim {
                    for j in 0..=k {
                        for i in 0..=j {
                            let l = self.degen[k + 1][i][self.degen[k][j][x]];
                            let r = self.degen[k + 1][j + 1][self.degen[k][i][x]];
                            if l != r {
                                return fail(format!("s{i}s{j} = s{}s{i}", j + 1), k, x);
                            }
                        }
                    }
                }
                // Mixed identities for dᵢsⱼ at level k + 1.
                if k < self.dim {
                    for j in 0..=k {
                        let y = self.degen[k][j][x];
                        for i in 0..=k + 1 {
                            let l = self.face[k + 1][i][y];
                            let (r, law) = if i == j || i == j + 1 {
                                (x, format!("d{i}s{j} = id"))
                            } else if i < j {
                                (self.degen[k - 1][j - 1][self.face[k][i][x]], format!("d{i}s{j} = s{}d{i}", j - 1))
                            } else {
                                (self.degen[k - 1][j][self.face[k][i - 1][x]], format!("d{i}s{j} = s{j}d{}", i - 1))
                            };
                            if l != r {
                                return fail(law, k, x);
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds a simplicial set from face and degeneracy functions.
    pub fn from_fn(
        dim: usize,
        names: Vec<Vec<String>>,
        face: impl Fn(usize, usize, usize) -> usize,
        degen: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<Self> {
        if names.len() != dim + 1 {
            return Err(Error::Malformed(format!("a {dim}-truncated simplicial set needs {} levels", dim + 1)));
        }
        let sizes: Vec<usize> = names.iter().map(Vec::len).collect();
        let face_t = (0..=dim)
            .map(|k| {
                if k == 0 {
                    vec![]
                } else {
                    (0..=k).map(|i| (0..sizes[k]).map(|x| face(k, i, x)).collect()).collect()
                }
            })
            .collect();
        let degen_t = (0..=dim)
            .map(|k| {
                if k == dim {
                    vec![]
                } else {
                    (0..=k).map(|i| (0..sizes[k]).map(|x| degen(k, i, x)).collect()).collect()
                }
            })
            .collect();
        TruncSSet::from_parts(dim, names, face_t, degen_t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn level_size(&self, k: usize) -> usize {
        self.names.get(k).map_or(0, Vec::len)
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.names.iter().map(Vec::len).collect()
    }

    pub fn names(&self, k: usize) -> &[String] {
        &self.names[k]
    }

    pub fn name(&self, k: usize, x: usize) -> &str {
        &self.names[k][x]
    }

    pub fn simplex_by_name(&self, k: usize, name: &str) -> Option<usize> {
        self.names.get(k)?.iter().position(|n| n == name)
    }

    /// `dᵢ x` for `x` in level `k >= 1`.
    pub fn face(&self, k: usize, i: usize, x: usize) -> usize {
        self.face[k][i][x]
    }

    /// `sᵢ x` for `x` in level `k < dim`.
    pub fn degen(&self, k: usize, i: usize, x: usize) -> usize {
        self.degen[k][i][x]
    }

    /// The contravariant action `α* x` for `α : [m] -> [n]`, `x ∈ Xₙ`.
    pub fn act(&self, alpha: &MonotoneMap, x: usize) -> Result<usize> {
        let (m, n) = (alpha.src(), alpha.tgt());
        if m > self.dim || n > self.dim {
            return Err(Error::IndexOutOfRange {
                what: "level",
                index: m.max(n),
                bound: self.dim,
            });
        }
        if x >= self.level_size(n) {
            return Err(Error::IndexOutOfRange {
                what: "simplex",
                index: x,
                bound: self.level_size(n),
            });
        }
        let fac = epi_mono_factor(alpha);
        let (mut level, mut y) = (n, x);
        for &i in &fac.deltas {
            y = self.face[level][i][y];
            level -= 1;
        }
        for &j in &fac.sigmas {
            y = self.degen[level][j][y];
            level += 1;
        }
        Ok(y)
    }

    /// Checks `(βα)* = α*β*` on every composable pair below `bound`.
    pub fn check_action_coherence(&self, bound: usize) -> Result<()> {
        let top = self.dim.min(bound);
        for a in 0..=top {
            for b in 0..=top {
                for c in 0..=top {
                    for alpha in simplex::enumerate(a, b) {
                        for beta in simplex::enumerate(b, c) {
                            let ab = simplex::compose(&alpha, &beta)?;
                            for x in 0..self.level_size(c) {
                                let direct = self.act(&ab, x)?;
                                let stepwise = self.act(&alpha, self.act(&beta, x)?)?;
                                if direct != stepwise {
                                    return Err(Error::Law(format!(
                                        "action of {ab} on {} disagrees with {alpha} after {beta}",
                                        self.names[c][x]
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_degenerate(&self, k: usize, x: usize) -> bool {
        k > 0 && (0..k).any(|j| self.degen[k - 1][j].contains(&x))
    }

    pub fn nondegenerate(&self, k: usize) -> Vec<usize> {
        (0..self.level_size(k)).filter(|&x| !self.is_degenerate(k, x)).collect()
    }

    /// The underlying reflexive quiver: `src = d₁`, `tgt = d₀`, `refl = s₀`.
    pub fn one_truncation(&self) -> Result<ReflQuiver> {
        if self.dim < 1 {
            return Err(Error::Precondition("one-truncation needs dimension at least 1".into()));
        }
        let edges = (0..self.level_size(1))
            .map(|e| Edge::new(self.names[1][e].clone(), self.face[1][1][e], self.face[1][0][e]))
            .collect();
        let quiver = Quiver::new(self.names[0].clone(), edges)?;
        ReflQuiver::new(quiver, self.degen[0][0].clone())
    }

    /// The spine of `x ∈ Xₖ`: its edges `(i, i+1)`, as a path of the
    /// one-truncation.
    pub fn spine(&self, k: usize, x: usize) -> Result<Path> {
        if k > self.dim {
            return Err(Error::IndexOutOfRange {
                what: "level",
                index: k,
                bound: self.dim,
            });
        }
        let start = self.act(&MonotoneMap::new(0, k, vec![0])?, x)?;
        let mut edges = Vec::with_capacity(k);
        let mut at = start;
        for i in 0..k {
            let e = self.act(&MonotoneMap::new(1, k, vec![i, i + 1])?, x)?;
            edges.push(e);
            at = self.face[1][0][e];
        }
        Ok(Path { src: start, tgt: at, edges })
    }

    /// Drops the levels above `m`.
    pub fn truncate(&self, m: usize) -> Result<TruncSSet> {
        if m > self.dim {
            return Err(Error::Precondition(format!("cannot truncate dimension {} at {m}", self.dim)));
        }
        let mut degen = self.degen[..=m].to_vec();
        degen[m] = vec![];
        Ok(TruncSSet {
            dim: m,
            names: self.names[..=m].to_vec(),
            face: self.face[..=m].to_vec(),
            degen,
        })
    }

    /// `Δ[n]` truncated at `dim`: level `k` is all monotone maps `[k] -> [n]`,
    /// named by their values.
    pub fn standard_simplex(n: usize, dim: usize) -> Result<TruncSSet> {
        simplices_of(n, dim, |_| true)
    }

    /// `∂Δ[n]` truncated at `dim`: the non-surjective maps into `[n]`.
    pub fn boundary(n: usize, dim: usize) -> Result<TruncSSet> {
        simplices_of(n, dim, |f| !f.is_surjective())
    }

    /// The one-point simplicial set truncated at `dim`.
    pub fn terminal(dim: usize) -> Result<TruncSSet> {
        TruncSSet::standard_simplex(0, dim)
    }

    pub fn empty(dim: usize) -> Result<TruncSSet> {
        TruncSSet::from_fn(dim, vec![vec![]; dim + 1], |_, _, _| 0, |_, _, _| 0)
    }
}

fn simplices_of(n: usize, dim: usize, keep: impl Fn(&MonotoneMap) -> bool) -> Result<TruncSSet> {
    if n > MAX_DIM || dim > MAX_DIM {
        return Err(Error::IndexOutOfRange {
            what: "dimension",
            index: n.max(dim),
            bound: MAX_DIM,
        });
    }
    let levels: Vec<Vec<MonotoneMap>> = (0..=dim)
        .map(|k| simplex::enumerate(k, n).into_iter().filter(|f| keep(f)).collect())
        .collect();
    let index: Vec<HashMap<MonotoneMap, usize>> = levels
        .iter()
        .map(|l| l.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect())
        .collect();
    let names = levels
        .iter()
        .map(|l| {
            l.iter()
                .map(|f| f.values().iter().map(|v| v.to_string()).collect::<String>())
                .collect()
        })
        .collect();
    let pull = |k: usize, g: MonotoneMap, x: usize| -> usize {
        let y = simplex::compose(&g, &levels[k][x]).expect("composable by construction");
        index[g.src()][&y]
    };
    TruncSSet::from_fn(
        dim,
        names,
        |k, i, x| pull(k, simplex::delta(i, k - 1).expect("coface in range"), x),
        |k, i, x| pull(k, simplex::sigma(i, k).expect("codegeneracy in range"), x),
    )
}

/// Level-wise components of a simplicial map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplicialMap {
    pub components: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn identity(x: &TruncSSet) -> Self {
        SimplicialMap {
            components: (0..=x.dim).map(|k| (0..x.level_size(k)).collect()).collect(),
        }
    }

    /// Checks shapes and commutation with every face and degeneracy.
    pub fn validate(&self, x: &TruncSSet, y: &TruncSSet) -> Result<()> {
        if x.dim != y.dim || self.components.len() != x.dim + 1 {
            return Err(Error::Malformed(format!(
                "map between dimensions {} and {} has {} components",
                x.dim,
                y.dim,
                self.components.len()
            )));
        }
        for (k, c) in self.components.iter().enumerate() {
            if c.len() != x.level_size(k) {
                return Err(Error::Malformed(format!("component {k} has the wrong length")));
            }
            if let Some(&v) = c.iter().find(|&&v| v >= y.level_size(k)) {
                return Err(Error::IndexOutOfRange {
                    what: "simplex",
                    index: v,
                    bound: y.level_size(k),
                });
            }
        }
        for k in 0..=x.dim {
            for s in 0..x.level_size(k) {
                let fs = self.components[k][s];
                if k > 0 {
                    for i in 0..=k {
                        if self.components[k - 1][x.face(k, i, s)] != y.face(k, i, fs) {
                            return Err(Error::Law(format!("map does not commute with d{i} at {}", x.name(k, s))));
                        }
                    }
                }
                if k < x.dim {
                    for j in 0..=k {
                        if self.components[k + 1][x.degen(k, j, s)] != y.degen(k, j, fs) {
                            return Err(Error::Law(format!("map does not commute with s{j} at {}", x.name(k, s))));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `self` then `other`.
    pub fn then(&self, other: &SimplicialMap) -> SimplicialMap {
        SimplicialMap {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(f, g)| f.iter().map(|&v| g[v]).collect())
                .collect(),
        }
    }

    pub fn truncate(&self, m: usize) -> SimplicialMap {
        SimplicialMap {
            components: self.components[..=m].to_vec(),
        }
    }
}

/// All simplicial maps `x -> y`, lexicographic in the flattened components.
///
/// `guard` bounds the number of search nodes visited.
pub fn enumerate_maps(x: &TruncSSet, y: &TruncSSet, guard: u64, exec: Exec) -> Result<Vec<SimplicialMap>> {
    if x.dim != y.dim {
        return Err(Error::Precondition(format!(
            "maps need equal dimensions, got {} and {}",
            x.dim, y.dim
        )));
    }
    let search = MapSearch::new(x, y, guard);
    let n0 = x.level_size(0);
    let y0 = y.level_size(0);
    // Branch on the images of the first few vertices.
    let mut depth = 0;
    let mut width = 1usize;
    while depth < n0 && width < 64 {
        depth += 1;
        width = width.saturating_mul(y0);
    }
    let mut prefixes: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..depth {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| {
                (0..y0).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    let branches = exec.map(&prefixes, |p| search.run(p));
    if search.aborted.load(Ordering::Relaxed) {
        return Err(Error::GuardExceeded {
            what: "simplicial maps",
            limit: guard,
        });
    }
    Ok(branches.into_iter().flatten().collect())
}

struct MapSearch<'a> {
    x: &'a TruncSSet,
    y: &'a TruncSSet,
    /// `forced[k][s]`: pairs `(j, t)` with `s = sⱼ t`.
    forced: Vec<Vec<Vec<(usize, usize)>>>,
    /// Simplices of `y` at level `k` indexed by their face tuple.
    by_faces: Vec<HashMap<Vec<usize>, Vec<usize>>>,
    nodes: AtomicU64,
    aborted: AtomicBool,
    guard: u64,
}

impl<'a> MapSearch<'a> {
    fn new(x: &'a TruncSSet, y: &'a TruncSSet, guard: u64) -> Self {
        let mut forced = vec![Vec::new(); x.dim + 1];
        for (k, f) in forced.iter_mut().enumerate() {
            *f = vec![Vec::new(); x.level_size(k)];
        }
        for k in 0..x.dim {
            for j in 0..=k {
                for t in 0..x.level_size(k) {
                    forced[k + 1][x.degen(k, j, t)].push((j, t));
                }
            }
        }
        let by_faces = (0..=y.dim)
            .map(|k| {
                let mut m: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
                if k > 0 {
                    for s in 0..y.level_size(k) {
                        m.entry((0..=k).map(|i| y.face(k, i, s)).collect()).or_default().push(s);
                    }
                }
                m
            })
            .collect();
        MapSearch {
            x,
            y,
            forced,
            by_faces,
            nodes: AtomicU64::new(0),
            aborted: AtomicBool::new(false),
            guard,
        }
    }

    fn run(&self, prefix: &[usize]) -> Vec<SimplicialMap> {
        let mut comps: Vec<Vec<usize>> = (0..=self.x.dim).map(|_| Vec::new()).collect();
        comps[0].extend_from_slice(prefix);
        let mut out = Vec::new();
        self.dfs(&mut comps, &mut out);
        out
    }

    fn tick(&self) -> bool {
        if self.aborted.load(Ordering::Relaxed) {
            return false;
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.guard {
            self.aborted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn dfs(&self, comps: &mut Vec<Vec<usize>>, out: &mut Vec<SimplicialMap>) {
        if !self.tick() {
            return;
        }
        let Some(k) = (0..=self.x.dim).find(|&k| comps[k].len() < self.x.level_size(k)) else {
            out.push(SimplicialMap { components: comps.clone() });
            return;
        };
        let s = comps[k].len();
        if k == 0 {
            for v in 0..self.y.level_size(0) {
                comps[0].push(v);
                self.dfs(comps, out);
                comps[0].pop();
            }
            return;
        }
        let want: Vec<usize> = (0..=k).map(|i| comps[k - 1][self.x.face(k, i, s)]).collect();
        let forced = &self.forced[k][s];
        if let Some(&(j, t)) = forced.first() {
            let v = self.y.degen(k - 1, j, comps[k - 1][t]);
            let agrees = forced.iter().all(|&(j, t)| self.y.degen(k - 1, j, comps[k - 1][t]) == v);
            let faces_ok = (0..=k).all(|i| self.y.face(k, i, v) == want[i]);
            if agrees && faces_ok {
                comps[k].push(v);
                self.dfs(comps, out);
                comps[k].pop();
            }
            return;
        }
        if let Some(cands) = self.by_faces[k].get(&want) {
            for &v in cands {
                comps[k].push(v);
                self.dfs(comps, out);
                comps[k].pop();
            }
        }
    }
}
