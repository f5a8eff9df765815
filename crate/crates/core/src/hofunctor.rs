//! The homotopy category of a 2-truncated simplicial set and the unit and
//! counit of its adjunction with the 2-truncated nerve.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fincat::{CatFunctor, FinCat};
use crate::nerve::{nerve2, nerve_map, to_nerve2_mk, Nerve};
use crate::quiverkit::{Edge, Graph, Path, Prefunctor};
use crate::report::Verdict;
use crate::rewrite::{enumerate_fp_functors, orient_and_complete, EqVerdict, FpCat, FpFunctor, Materialized, Presentation};
use crate::sset::{enumerate_maps, SimplicialMap, TruncSSet};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// The relation `[d₁σ] = [d₂σ]·[d₀σ]` of one 2-simplex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoRelInstance {
    pub sigma: usize,
    pub lhs: Path,
    pub rhs: Path,
}

pub fn horel_instances(x: &TruncSSet) -> Result<Vec<HoRelInstance>> {
    if x.dim() < 2 {
        return Err(Error::Precondition("2-simplices need dimension at least 2".into()));
    }
    let q = x.one_truncation()?;
    (0..x.level_size(2))
        .map(|s| {
            Ok(HoRelInstance {
                sigma: s,
                lhs: Path::edge(&q, x.face(2, 1, s)),
                rhs: Path::new(&q, x.face(1, 1, x.face(2, 2, s)), vec![x.face(2, 2, s), x.face(2, 0, s)])?,
            })
        })
        .collect()
}

/// Generators are the edges of `x`; relations eliminate reflexivity edges
/// and, per 2-simplex, identify the diagonal with the spine composite.
pub fn horel_presentation(x: &TruncSSet, with_degenerate: bool) -> Result<Presentation> {
    let q = x.one_truncation()?;
    let mut relations: Vec<(Path, Path)> = q
        .refl
        .iter()
        .enumerate()
        .map(|(v, &e)| (Path::edge(&q, e), Path::identity(v)))
        .collect();
    for r in horel_instances(x)? {
        if with_degenerate || !x.is_degenerate(2, r.sigma) {
            relations.push((r.lhs, r.rhs));
        }
    }
    Ok(Presentation {
        objects: q.quiver.vertices.clone(),
        generators: q.quiver.edges.clone(),
        relations,
    })
}

/// `ho₂ X` with the quotient data: the normal form of every edge.
#[derive(Debug, Clone)]
pub struct HomotopyCategory {
    pub fp: FpCat,
    pub quotient: Vec<Path>,
}

pub fn ho2(x: &TruncSSet, fuel: usize) -> Result<HomotopyCategory> {
    if x.dim() != 2 {
        return Err(Error::Precondition(format!("ho2 needs dimension 2, got {}", x.dim())));
    }
    let fp = orient_and_complete(horel_presentation(x, true)?, fuel)?;
    let quotient = (0..fp.edge_count()).map(|e| fp.normalize(&Path::edge(&fp, e))).collect();
    Ok(HomotopyCategory { fp, quotient })
}

/// `ho = ho₂ ∘ tr₂`.
pub fn ho(x: &TruncSSet, fuel: usize) -> Result<HomotopyCategory> {
    if x.dim() < 2 {
        return Err(Error::Precondition(format!("ho needs dimension at least 2, got {}", x.dim())));
    }
    ho2(&x.truncate(2)?, fuel)
}

/// A functor between presented categories given on generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathFunctor {
    pub obj_map: Vec<usize>,
    pub gen_map: Vec<Path>,
}

impl PathFunctor {
    /// Image of a path, in normal form.
    pub fn apply(&self, target: &FpCat, p: &Path) -> Path {
        let mut out = Path::identity(self.obj_map[p.src]);
        for &g in &p.edges {
            out = out.concat(&self.gen_map[g]).expect("generator images are composable");
        }
        target.normalize(&out)
    }

    /// Checks endpoints and that every relation of `from` holds in `to`.
    pub fn check(&self, from: &FpCat, to: &FpCat) -> Verdict {
        for g in 0..from.edge_count() {
            let (s, t) = from.edge_ends(g);
            let img = &self.gen_map[g];
            if (img.src, img.tgt) != (self.obj_map[s], self.obj_map[t]) {
                return Verdict::Fail(format!("generator {} lands on the wrong endpoints", from.generators()[g].name));
            }
        }
        let mut out = Vec::new();
        for (l, r) in &from.presentation().relations {
            match to.eq(&self.apply(to, l), &self.apply(to, r)) {
                Ok(EqVerdict::Equal) => {}
                Ok(EqVerdict::NotEqual) => return Verdict::Fail("a relation is not preserved".into()),
                Ok(EqVerdict::Unknown(r)) => out.push(Verdict::Inconclusive(format!("{r:?}"))),
                Err(e) => return Verdict::Fail(e.to_string()),
            }
        }
        Verdict::all(out)
    }
}

/// `ho₂ f` for a simplicial map `f : x -> y`.
pub fn ho2_on_map(f: &SimplicialMap, hy: &HomotopyCategory) -> PathFunctor {
    PathFunctor {
        obj_map: f.components[0].clone(),
        gen_map: f.components[1].iter().map(|&e| hy.quotient[e].clone()).collect(),
    }
}

/// The counit `ho₂ N₂ C -> C` on the materialized homotopy category.
#[derive(Debug, Clone)]
pub struct Counit {
    pub ho: HomotopyCategory,
    pub mat: Materialized,
    pub functor: CatFunctor,
}

impl Counit {
    pub fn is_iso(&self, c: &FinCat) -> bool {
        self.functor.is_bijective(&self.mat.cat, c)
    }
}

pub fn counit(c: &FinCat, nc: &Nerve, fuel: usize) -> Result<Counit> {
    let ho = ho2(&nc.sset, fuel)?;
    // Every morphism is a generator, so normal forms have length at most 1.
    let mat = ho
        .fp
        .to_fincat(2)
        .map_err(|e| Error::Internal(format!("homotopy category of a nerve did not materialize: {e}")))?;
    let as_morphism = |e: usize| nc.chains[1][e].arrows[0];
    let eval = |p: &Path| {
        p.edges
            .iter()
            .fold(c.identity(nc.chains[0][p.src].objects[0]), |acc, &e| c.comp(acc, as_morphism(e)))
    };
    for r in horel_instances(&nc.sset)? {
        if eval(&r.lhs) != eval(&r.rhs) {
            return Err(Error::Internal(format!(
                "2-simplex {} does not commute in the category",
                nc.sset.name(2, r.sigma)
            )));
        }
    }
    let functor = CatFunctor {
        obj_map: (0..mat.cat.object_count()).map(|v| nc.chains[0][v].objects[0]).collect(),
        mor_map: mat.words.iter().map(eval).collect(),
    };
    functor.check(&mat.cat, c)?;
    Ok(Counit { ho, mat, functor })
}

/// The unit `X -> N₂ ho₂ X`, built by lifting the quotient prefunctor.
#[derive(Debug, Clone)]
pub struct Unit {
    pub ho: HomotopyCategory,
    pub mat: Materialized,
    pub nerve: Nerve,
    pub map: SimplicialMap,
}

pub fn unit(x: &TruncSSet, fuel: usize, bound: usize) -> Result<Unit> {
    let ho = ho2(x, fuel)?;
    let mat = ho.fp.to_fincat(bound)?;
    let nerve = nerve2(&mat.cat)?;
    let f = Prefunctor {
        vertex_map: (0..x.level_size(0)).collect(),
        edge_map: ho
            .quotient
            .iter()
            .map(|p| mat.morphism_of(p).ok_or_else(|| Error::Internal("edge class is not a normal form".into())))
            .collect::<Result<_>>()?,
    };
    let map = to_nerve2_mk(x, &mat.cat, &nerve, &f)?;
    Ok(Unit { ho, mat, nerve, map })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleReport {
    /// `N₂ε_C ∘ η_{N₂C} = id`.
    pub at_nerve: Verdict,
    /// `ε_{ho₂X} ∘ ho₂η_X = id`.
    pub at_ho: Verdict,
}

impl TriangleReport {
    pub fn verdict(&self) -> Verdict {
        Verdict::all([self.at_nerve.clone(), self.at_ho.clone()])
    }
}

pub fn check_triangles_nerve_adj(x: &TruncSSet, c: &FinCat, fuel: usize, bound: usize) -> Result<TriangleReport> {
    Ok(TriangleReport {
        at_nerve: triangle_at_nerve(c, fuel)?,
        at_ho: triangle_at_ho(x, fuel, bound)?,
    })
}

fn triangle_at_nerve(c: &FinCat, fuel: usize) -> Result<Verdict> {
    let nc = nerve2(c)?;
    let eta = unit(&nc.sset, fuel, 2)?;
    let eps = counit(c, &nc, fuel)?;
    if eps.mat.cat != eta.mat.cat {
        return Err(Error::Internal("unit and counit materialized different categories".into()));
    }
    let back = eta.map.then(&nerve_map(&eps.functor, &eta.nerve, &nc)?);
    if back == SimplicialMap::identity(&nc.sset) {
        Ok(Verdict::Pass)
    } else {
        Ok(Verdict::Fail("N(counit) after unit is not the identity".into()))
    }
}

fn triangle_at_ho(x: &TruncSSet, fuel: usize, bound: usize) -> Result<Verdict> {
    let hx = ho2(x, fuel)?;
    // At generator level the composite sends e to the class of e.
    let mut verdicts = Vec::new();
    for e in 0..hx.fp.edge_count() {
        match hx.fp.eq(&hx.quotient[e], &Path::edge(&hx.fp, e))? {
            EqVerdict::Equal => {}
            EqVerdict::NotEqual => {
                return Ok(Verdict::Fail(format!("generator {} is not fixed", x.name(1, e))));
            }
            EqVerdict::Unknown(r) => verdicts.push(Verdict::Inconclusive(format!("{r:?}"))),
        }
    }
    // When ho₂X is finite, run the composite through the actual unit and
    // counit.
    let eta = match unit(x, fuel, bound) {
        Ok(u) => u,
        Err(Error::NotFinite { .. }) | Err(Error::Incomplete) => return Ok(Verdict::all(verdicts)),
        Err(e) => return Err(e),
    };
    let h = &eta.mat.cat;
    let eps = counit(h, &eta.nerve, fuel)?;
    for e in 0..x.level_size(1) {
        let image_gen = eta.map.components[1][e];
        let nf = &eps.ho.quotient[image_gen];
        let m = eps
            .mat
            .morphism_of(nf)
            .ok_or_else(|| Error::Internal("generator class is not a normal form".into()))?;
        let got = eps.functor.mor_map[m];
        let want = eta.mat.morphism_of(&hx.quotient[e]).expect("same presentation");
        if got != want {
            return Ok(Verdict::Fail(format!(
                "edge {} returns as {}",
                x.name(1, e),
                h.morphism(got).name
            )));
        }
    }
    for v in 0..x.level_size(0) {
        if eps.functor.obj_map[eta.map.components[0][v]] != v {
            return Ok(Verdict::Fail(format!("vertex {} is not fixed", x.name(0, v))));
        }
    }
    Ok(Verdict::all(verdicts))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomBijectionReport {
    pub functors: usize,
    pub maps: usize,
    pub verdict: Verdict,
}

/// Compares `Fun(ho₂X, C)` with `sSet₂(X, N₂C)` through the transposes
/// `F ↦ N₂F ∘ η` and `G ↦ ε ∘ ho₂G`.
pub fn check_hom_bijection(
    x: &TruncSSet,
    c: &FinCat,
    fuel: usize,
    guard: u64,
    exec: Exec,
) -> Result<HomBijectionReport> {
    let hx = ho2(x, fuel)?;
    let nc = nerve2(c)?;
    let functors = enumerate_fp_functors(&hx.fp, c, guard, exec)?;
    let maps = enumerate_maps(x, &nc.sset, guard, exec)?;
    let report = |verdict| HomBijectionReport {
        functors: functors.len(),
        maps: maps.len(),
        verdict,
    };
    if functors.len() != maps.len() {
        return Ok(report(Verdict::Fail(format!(
            "{} functors against {} simplicial maps",
            functors.len(),
            maps.len()
        ))));
    }
    let functor_set: HashSet<&FpFunctor> = functors.iter().collect();
    let map_set: HashSet<&SimplicialMap> = maps.iter().collect();
    let transpose = |f: &FpFunctor| {
        to_nerve2_mk(
            x,
            c,
            &nc,
            &Prefunctor {
                vertex_map: f.obj_map.clone(),
                edge_map: f.gen_map.clone(),
            },
        )
    };
    let untranspose = |g: &SimplicialMap| FpFunctor {
        obj_map: g.components[0].iter().map(|&v| nc.chains[0][v].objects[0]).collect(),
        gen_map: g.components[1].iter().map(|&e| nc.chains[1][e].arrows[0]).collect(),
    };
    for f in &functors {
        let g = transpose(f)?;
        if !map_set.contains(&g) {
            return Ok(report(Verdict::Fail("a transposed functor is not among the maps".into())));
        }
        if &untranspose(&g) != f {
            return Ok(report(Verdict::Fail("transposing twice does not return the functor".into())));
        }
    }
    for g in &maps {
        let f = untranspose(g);
        if !functor_set.contains(&f) {
            return Ok(report(Verdict::Fail("a transposed map is not among the functors".into())));
        }
        if &transpose(&f)? != g {
            return Ok(report(Verdict::Fail("transposing twice does not return the map".into())));
        }
    }
    Ok(report(Verdict::Pass))
}

/// Names of the generators that survive in `ho₂`, for display.
pub fn essential_generators(h: &HomotopyCategory) -> Vec<&Edge> {
    h.fp.essential().generators.iter().map(|&g| &h.fp.generators()[g]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{cyclic_group, fin_ordinal, terminal, DEFAULT_GUARD};
    use crate::rewrite::{CompletionStatus, DEFAULT_BOUND, DEFAULT_FUEL};

    fn s1() -> TruncSSet {
        // One vertex v, one non-degenerate loop e.
        let names = vec![
            vec!["v".to_string()],
            vec!["v0".to_string(), "e".to_string()],
            vec!["v00".to_string(), "e0".to_string(), "e1".to_string()],
        ];
        let face = |k: usize, i: usize, x: usize| match (k, i, x) {
            (1, _, _) => 0,
            (2, _, 0) => 0,
            (2, 2, 1) => 0,
            (2, _, 1) => 1,
            (2, 0, 2) => 0,
            (2, _, 2) => 1,
            _ => unreachable!(),
        };
        let degen = |k: usize, i: usize, x: usize| match (k, i, x) {
            (0, 0, 0) => 0,
            (1, _, 0) => 0,
            (1, 0, 1) => 1,
            (1, 1, 1) => 2,
            _ => unreachable!(),
        };
        TruncSSet::from_fn(2, names, face, degen).unwrap()
    }

    #[test]
    fn ho_of_circle_is_free_on_a_loop() {
        let h = ho2(&s1(), DEFAULT_FUEL).unwrap();
        assert_eq!(h.fp.status(), CompletionStatus::Complete);
        let ess = h.fp.essential();
        assert_eq!(ess.objects, 1);
        assert_eq!(ess.generators.len(), 1);
        assert!(ess.relations.is_empty());
        assert!(h.fp.to_fincat(DEFAULT_BOUND).is_err());
    }

    #[test]
    fn ho_of_a_point_is_terminal() {
        let h = ho2(&TruncSSet::terminal(2).unwrap(), DEFAULT_FUEL).unwrap();
        assert_eq!(h.fp.to_fincat(4).unwrap().cat.morphism_count(), 1);
    }

    #[test]
    fn ho_of_nerve_recovers_the_category() {
        let c = fin_ordinal(2);
        let nc = nerve2(&c).unwrap();
        let eps = counit(&c, &nc, DEFAULT_FUEL).unwrap();
        assert!(eps.is_iso(&c));
        eps.mat.cat.validate().unwrap();
    }

    #[test]
    fn degenerate_simplices_add_nothing() {
        for x in [s1(), TruncSSet::standard_simplex(2, 2).unwrap(), nerve2(&cyclic_group(2)).unwrap().sset] {
            let all = orient_and_complete(horel_presentation(&x, true).unwrap(), DEFAULT_FUEL).unwrap();
            let nd = orient_and_complete(horel_presentation(&x, false).unwrap(), DEFAULT_FUEL).unwrap();
            assert_eq!(all.rules(), nd.rules());
        }
    }

    #[test]
    fn triangles_on_small_inputs() {
        for (x, c) in [
            (nerve2(&fin_ordinal(1)).unwrap().sset, fin_ordinal(1)),
            (TruncSSet::terminal(2).unwrap(), terminal()),
            (s1(), cyclic_group(2)),
        ] {
            let r = check_triangles_nerve_adj(&x, &c, DEFAULT_FUEL, DEFAULT_BOUND).unwrap();
            assert!(r.verdict().is_pass(), "{r:?}");
        }
    }

    #[test]
    fn hom_bijections() {
        let r = check_hom_bijection(&s1(), &cyclic_group(2), DEFAULT_FUEL, DEFAULT_GUARD, Exec::Sequential).unwrap();
        assert_eq!((r.functors, r.maps), (2, 2));
        assert!(r.verdict.is_pass());
        let x = nerve2(&fin_ordinal(1)).unwrap().sset;
        let r = check_hom_bijection(&x, &fin_ordinal(2), DEFAULT_FUEL, DEFAULT_GUARD, Exec::Parallel).unwrap();
        assert_eq!((r.functors, r.maps), (6, 6));
        assert!(r.verdict.is_pass());
        let r = check_hom_bijection(&TruncSSet::terminal(2).unwrap(), &fin_ordinal(3), DEFAULT_FUEL, DEFAULT_GUARD, Exec::Parallel)
            .unwrap();
        assert_eq!(r.functors, 4);
    }

    #[test]
    fn unit_of_a_simplex_is_injective_low() {
        let x = TruncSSet::standard_simplex(2, 2).unwrap();
        let u = unit(&x, DEFAULT_FUEL, DEFAULT_BOUND).unwrap();
        for k in 0..2 {
            let c = &u.map.components[k];
            let distinct: HashSet<_> = c.iter().collect();
            assert_eq!(distinct.len(), c.len());
        }
    }

    #[test]
    fn unit_reports_infinite_homotopy_category() {
        assert!(matches!(unit(&s1(), DEFAULT_FUEL, 6), Err(Error::NotFinite { .. })));
    }

    #[test]
    fn ho2_on_maps_respects_relations() {
        let x = nerve2(&fin_ordinal(1)).unwrap();
        let y = nerve2(&fin_ordinal(2)).unwrap();
        let hy = ho2(&y.sset, DEFAULT_FUEL).unwrap();
        let hx = ho2(&x.sset, DEFAULT_FUEL).unwrap();
        for m in enumerate_maps(&x.sset, &y.sset, DEFAULT_GUARD, Exec::Sequential).unwrap() {
            assert!(ho2_on_map(&m, &hy).check(&hx.fp, &hy.fp).is_pass());
        }
    }
}
