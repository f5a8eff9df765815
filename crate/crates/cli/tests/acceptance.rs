use hocat::colimit::{colim_cat, compare_with_direct, direct_presentation, materialize_cocone, verify_colimit_cat, CatDiagram};
use hocat::fincat::{enumerate_functors, find_isomorphism, fin_ordinal, FinCat};
use hocat::hofunctor::{check_hom_bijection, check_triangles_nerve_adj, counit, ho};
use hocat::nerve::{check_coskeletal2, check_strict_segal, nerve, nerve2, nerve2_full_lift, nerve_map};
use hocat::quiverkit::{check_triangle_identities_reflquiv, Graph, Path};
use hocat::report::Verdict;
use hocat::rewrite::presentation_isomorphism;
use hocat::simplex::enumerate;
use hocat::sset::{enumerate_maps, TruncSSet};
use hocat::Error;
use hocat_cli::workspace::{Binding, DiagramKind};
use hocat_cli::{Settings, Workspace};
use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

type Outcome = Result<String, String>;
type Named<T> = Vec<(String, T)>;
type Criterion = (&'static str, fn() -> Outcome);

fn workspace() -> Workspace {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut ws = Workspace::new(Settings::default());
    ws.add_dir(&dir).expect("corpus loads");
    ws
}

fn finite_categories(ws: &mut Workspace) -> Vec<(String, FinCat)> {
    let mut out = Vec::new();
    for n in ws.names().to_vec() {
        if let Binding::Category(c) = &*ws.get(&n).unwrap() {
            if let Some(f) = c.finite() {
                out.push((n, f.clone()));
            }
        }
    }
    out
}

fn sset(ws: &mut Workspace, name: &str) -> TruncSSet {
    match &*ws.get(name).unwrap() {
        Binding::SSet(x) => x.clone(),
        b => panic!("{name} is a {}", b.kind()),
    }
}

fn cat_diagram(ws: &mut Workspace, name: &str) -> CatDiagram {
    match &*ws.get(name).unwrap() {
        Binding::Diagram(d) => match &d.kind {
            DiagramKind::Cat(cd) => cd.clone(),
            DiagramKind::SSet(_) => panic!("{name} is a diagram of simplicial sets"),
        },
        b => panic!("{name} is a {}", b.kind()),
    }
}

fn cat_diagrams(ws: &mut Workspace) -> Vec<(String, CatDiagram)> {
    let mut out = Vec::new();
    for n in ws.names().to_vec() {
        if let Binding::Diagram(d) = &*ws.get(&n).unwrap() {
            if let DiagramKind::Cat(cd) = &d.kind {
                out.push((n, cd.clone()));
            }
        }
    }
    out
}

/// The (X, C) grid: corpus simplicial sets truncated to level 2 and the
/// nerves of corpus categories, against every corpus category.
fn grid(ws: &mut Workspace) -> (Named<TruncSSet>, Named<FinCat>) {
    let cats = finite_categories(ws);
    let mut xs = Vec::new();
    for n in ws.names().to_vec() {
        if let Binding::SSet(x) = &*ws.get(&n).unwrap() {
            if x.dim() >= 2 {
                xs.push((n, x.truncate(2).unwrap()));
            }
        }
    }
    for (n, c) in &cats {
        xs.push((format!("N({n})"), nerve2(c).unwrap().sset));
    }
    (xs, cats)
}

fn require(v: Verdict, what: &str) -> Result<(), String> {
    match v {
        Verdict::Pass => Ok(()),
        other => Err(format!("{what}: {other}")),
    }
}

fn bn_coequalizer() -> Outcome {
    let mut ws = workspace();
    let d = cat_diagram(&mut ws, "coeq");
    let c = colim_cat(&d, ws.settings.fuel).map_err(|e| e.to_string())?;
    let fp = &c.ho.fp;
    let ess = fp.essential();
    if ess.objects != 1 || ess.generators.len() != 1 {
        return Err(format!("{} objects and {} generators", ess.objects, ess.generators.len()));
    }
    if !fp.is_complete() {
        return Err(format!("status {:?}", fp.status()));
    }
    let g = ess.generators[0];
    let forms: HashSet<Path> = (0..=6)
        .map(|k| fp.normalize(&Path::new(fp, fp.edge_ends(g).0, vec![g; k]).unwrap()))
        .collect();
    if forms.len() != 7 {
        return Err(format!("only {} distinct normal forms among e^0..e^6", forms.len()));
    }
    let b = d.shape.object_by_name("b").ok_or("no node b")?;
    let l = d.nodes[b].morphism_by_name("l").ok_or("no arrow l")?;
    if fp.normalize(&c.legs[b].gen_map[l]) != fp.normalize(&Path::edge(fp, g)) {
        return Err(format!("leg sends l to {}", c.leg_display(b, l)));
    }
    Ok("1 object, 1 generator, complete, 7 distinct powers, l maps to the generator".into())
}

fn circle_is_bn() -> Outcome {
    let mut ws = workspace();
    let d = cat_diagram(&mut ws, "coeq");
    let fuel = ws.settings.fuel;
    let bn = colim_cat(&d, fuel).map_err(|e| e.to_string())?;
    let s1 = sset(&mut ws, "s1");
    let h = ho(&s1, fuel).map_err(|e| e.to_string())?;
    match presentation_isomorphism(&h.fp, &bn.ho.fp) {
        Some(_) => Ok("generator matching found".into()),
        None => Err("no generator matching".into()),
    }
}

const NAMED: [&str; 6] = ["terminal", "fin2", "fin3", "fin4", "z2", "square"];

fn coskeletal() -> Outcome {
    let mut ws = workspace();
    let s = ws.settings;
    for name in NAMED {
        let c = ws.finite_category(name).map_err(|e| e.to_string())?;
        let n = nerve(&c, 4).map_err(|e| e.to_string())?;
        require(check_coskeletal2(&n.sset, s.guard, s.exec).map_err(|e| e.to_string())?, name)?;
    }
    let b = sset(&mut ws, "boundary3");
    let v = check_coskeletal2(&b, s.guard, s.exec).map_err(|e| e.to_string())?;
    if !v.is_fail() {
        return Err(format!("boundary3: expected failure, got {v}"));
    }
    Ok(format!("{} nerves pass, boundary3 fails", NAMED.len()))
}

fn strict_segal() -> Outcome {
    let mut ws = workspace();
    let cats = finite_categories(&mut ws);
    for (name, c) in &cats {
        let n = nerve(c, 4).map_err(|e| e.to_string())?;
        for k in 2..=4 {
            require(check_strict_segal(&n.sset, k).map_err(|e| e.to_string())?, &format!("{name} at {k}"))?;
        }
    }
    let b = sset(&mut ws, "boundary2");
    let v = check_strict_segal(&b, 2).map_err(|e| e.to_string())?;
    if !v.is_fail() {
        return Err(format!("boundary2: expected failure, got {v}"));
    }
    Ok(format!("{} nerves pass at k = 2,3,4, boundary2 fails at k = 2", cats.len()))
}

fn full_faithfulness() -> Outcome {
    let mut ws = workspace();
    let s = ws.settings;
    let cats = finite_categories(&mut ws);
    let nerves: Vec<_> = cats.iter().map(|(_, c)| nerve2(c).unwrap()).collect();
    let (mut pairs, mut skipped, mut maps_seen) = (0, 0, 0);
    for (i, (cn, c)) in cats.iter().enumerate() {
        for (j, (dn, d)) in cats.iter().enumerate() {
            let maps = match enumerate_maps(&nerves[i].sset, &nerves[j].sset, s.guard, s.exec) {
                Ok(m) => m,
                Err(Error::GuardExceeded { .. }) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return Err(e.to_string()),
            };
            let functors = match enumerate_functors(c, d, s.guard, s.exec) {
                Ok(f) => f,
                Err(Error::GuardExceeded { .. }) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return Err(e.to_string()),
            };
            if maps.len() != functors.len() {
                return Err(format!("({cn}, {dn}): {} maps, {} functors", maps.len(), functors.len()));
            }
            for f in &maps {
                let lift = nerve2_full_lift(c, d, &nerves[i], &nerves[j], f).map_err(|e| e.to_string())?;
                if &nerve_map(&lift, &nerves[i], &nerves[j]).map_err(|e| e.to_string())? != f {
                    return Err(format!("({cn}, {dn}): a lift does not return the map"));
                }
            }
            pairs += 1;
            maps_seen += maps.len();
        }
    }
    if skipped > 0 {
        return Err(format!("{skipped} pairs exceeded the guard"));
    }
    Ok(format!("{pairs} pairs, {maps_seen} maps lifted and round-tripped"))
}

fn triangles() -> Outcome {
    let mut ws = workspace();
    let s = ws.settings;
    let (xs, cats) = grid(&mut ws);
    let mut n = 0;
    for (xn, x) in &xs {
        let q = x.one_truncation().map_err(|e| e.to_string())?;
        for (cn, c) in &cats {
            let r = check_triangles_nerve_adj(x, c, s.fuel, s.bound).map_err(|e| format!("({xn}, {cn}): {e}"))?;
            require(r.verdict(), &format!("triangles ({xn}, {cn})"))?;
            let rr = check_triangle_identities_reflquiv(c, &q, s.fuel);
            require(Verdict::all([rr.at_category, rr.at_quiver]), &format!("reflexive triangles ({cn}, {xn})"))?;
            n += 1;
        }
    }
    Ok(format!("{n} grid pairs, no unknown verdicts"))
}

fn hom_bijection() -> Outcome {
    let mut ws = workspace();
    let s = ws.settings;
    let (xs, cats) = grid(&mut ws);
    let mut n = 0;
    for (xn, x) in &xs {
        for (cn, c) in &cats {
            let r = check_hom_bijection(x, c, s.fuel, s.guard, s.exec).map_err(|e| format!("({xn}, {cn}): {e}"))?;
            require(r.verdict, &format!("({xn}, {cn})"))?;
            n += 1;
        }
    }
    let z2 = ws.finite_category("z2").map_err(|e| e.to_string())?;
    let s1 = sset(&mut ws, "s1");
    let r = check_hom_bijection(&s1, &z2, s.fuel, s.guard, s.exec).map_err(|e| e.to_string())?;
    if (r.functors, r.maps) != (2, 2) {
        return Err(format!("(s1, z2): {} functors, {} maps", r.functors, r.maps));
    }
    let fin2 = ws.finite_category("fin2").map_err(|e| e.to_string())?;
    let fin3 = ws.finite_category("fin3").map_err(|e| e.to_string())?;
    let x = nerve2(&fin2).map_err(|e| e.to_string())?.sset;
    let r = check_hom_bijection(&x, &fin3, s.fuel, s.guard, s.exec).map_err(|e| e.to_string())?;
    if (r.functors, r.maps) != (6, 6) {
        return Err(format!("(N(fin2), fin3): {} functors, {} maps", r.functors, r.maps));
    }
    Ok(format!("{n} grid pairs; |Hom(s1, z2)| = 2, |Hom(N(fin2), fin3)| = 6"))
}

fn counit_iso() -> Outcome {
    let mut ws = workspace();
    let fuel = ws.settings.fuel;
    let cats = finite_categories(&mut ws);
    for (name, c) in &cats {
        let e = counit(c, &nerve2(c).map_err(|e| e.to_string())?, fuel).map_err(|e| format!("{name}: {e}"))?;
        if !e.is_iso(c) {
            return Err(format!("{name}: counit is not bijective"));
        }
    }
    Ok(format!("{} categories", cats.len()))
}

fn universal_property() -> Outcome {
    let mut ws = workspace();
    let s = ws.settings;
    let mut probes = 0;
    for name in ["coeq", "coprod", "pushout"] {
        let d = cat_diagram(&mut ws, name);
        let c = colim_cat(&d, s.fuel).map_err(|e| e.to_string())?;
        let cocones: Vec<_> = ws.cocones_over(name).map_err(|e| e.to_string())?.into_iter().map(|(_, p)| p).collect();
        if cocones.is_empty() {
            return Err(format!("{name}: no probes"));
        }
        for v in verify_colimit_cat(&d, &c, &cocones, s.guard, s.exec).map_err(|e| e.to_string())? {
            require(v, name)?;
            probes += 1;
        }
    }
    let d = cat_diagram(&mut ws, "pushout");
    let c = colim_cat(&d, s.fuel).map_err(|e| e.to_string())?;
    let m = materialize_cocone(&d, &c, s.bound).map_err(|e| e.to_string())?;
    if find_isomorphism(&m.apex, &fin_ordinal(2), s.guard).map_err(|e| e.to_string())?.is_none() {
        return Err("pushout is not isomorphic to fin_ordinal(2)".into());
    }
    Ok(format!("{probes} probes with unique mediators, pushout is fin_ordinal(2)"))
}

fn oracle_agreement() -> Outcome {
    let mut ws = workspace();
    let fuel = ws.settings.fuel;
    let ds = cat_diagrams(&mut ws);
    for (name, d) in &ds {
        let c = colim_cat(d, fuel).map_err(|e| e.to_string())?;
        let direct = direct_presentation(d, fuel).map_err(|e| e.to_string())?;
        require(compare_with_direct(d, &c, &direct, 5), name)?;
    }
    if ds.len() < 3 {
        return Err(format!("only {} colimit fixtures", ds.len()));
    }
    Ok(format!("{} fixtures agree up to length 5", ds.len()))
}

fn ground_truth() -> Outcome {
    let total: usize = (0..=2).flat_map(|m| (0..=2).map(move |n| enumerate(m, n).len())).sum();
    if total != 31 {
        return Err(format!("{total} maps within the truncation at 2"));
    }
    let sizes = nerve(&fin_ordinal(1), 4).map_err(|e| e.to_string())?.sset.level_sizes();
    if sizes != [2, 3, 4, 5, 6] {
        return Err(format!("nerve level sizes {sizes:?}"));
    }
    Ok("31 maps; nerve sizes (2,3,4,5,6)".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("BN coequalizer", bn_coequalizer),
        ("ho of the circle is BN", circle_is_bn),
        ("2-coskeletal nerves", coskeletal),
        ("strict Segal", strict_segal),
        ("full faithfulness", full_faithfulness),
        ("adjunction triangles", triangles),
        ("hom bijection", hom_bijection),
        ("counit isomorphism", counit_iso),
        ("colimit universal property", universal_property),
        ("oracle agreement", oracle_agreement),
        ("combinatorial ground truth", ground_truth),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: pass ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
