//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use cdclab::apollonian::{check_edge_classification, generate_random_apollonian};
use cdclab::cdc::{
    check_orientability, enumerate_covers, facial_cover, genus, translate_cover, validate_cover,
    validate_oriented, Circuit, CircuitDoubleCover, EnumerationLimits, FoundCover, Orientability,
};
use cdclab::census::{run_census, Verdict};
use cdclab::corpus;
use cdclab::graph::SimpleGraph;
use cdclab::iso::verify_square;
use cdclab::planar_map::PlanarMap;
use cdclab::surgery::{complete_augmentation, complete_truncation};

type Outcome = Result<String, String>;

fn random_apollonian(seed: u64) -> PlanarMap {
    generate_random_apollonian((seed % 20) as usize + 1, seed)
}

fn counts(m: &PlanarMap) -> (usize, usize, usize) {
    (m.vertex_count(), m.edge_count(), m.face_count())
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    if t > limit {
        return Err(format!("{what} took {t:?}, limit {limit:?}"));
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (t, _) = complete_truncation(&corpus::k4()).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(1), "truncation")?;
    let start = Instant::now();
    let (a, _) = complete_augmentation(&corpus::cube()).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(1), "augmentation")?;
    if counts(&t) != (12, 18, 8) {
        return Err(format!("(K4)^t has {:?}", counts(&t)));
    }
    if counts(&a) != (14, 36, 24) {
        return Err(format!("cube^a has {:?}", counts(&a)));
    }
    Ok("(K4)^t = (12, 18, 8), cube^a = (14, 36, 24)".into())
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut maps: Vec<(String, PlanarMap)> = corpus::named_fixtures()
        .into_iter()
        .map(|(n, m)| (n.to_string(), m))
        .collect();
    maps.extend((0..50).map(|s| (format!("random apollonian seed {s}"), random_apollonian(s))));
    for (name, m) in &maps {
        let (a, _) = complete_augmentation(m).map_err(|e| format!("{name}: {e}"))?;
        if !a.faces().iter().all(|f| f.len() == 3) {
            return Err(format!("{name}: augmentation is not a triangulation"));
        }
        let (t, _) = complete_truncation(m).map_err(|e| format!("{name}: {e}"))?;
        let g = t.underlying_graph();
        if !g.is_regular(3) || t.euler_genus() != Ok(0) || g.is_3_connected() != Ok(true) {
            return Err(format!(
                "{name}: truncation is not a cubic 3-connected planar map"
            ));
        }
    }
    within(start, Duration::from_secs(30), "property suite")?;
    Ok(format!(
        "{} maps: augmentations triangulate, truncations cubic/planar/3-connected",
        maps.len()
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut failed = Vec::new();
    let mut example = None;
    for seed in 0..100 {
        let g = random_apollonian(seed).underlying_graph();
        let r = check_edge_classification(&g).map_err(|e| format!("seed {seed}: {e}"))?;
        if !r.pass {
            failed.push(seed);
            if example.is_none() {
                let bad: Vec<[u64; 2]> = r
                    .edges
                    .iter()
                    .filter(|e| !e.holds())
                    .map(|e| e.edge)
                    .collect();
                example = Some(format!("seed {seed} edges {bad:?}"));
            }
        }
    }
    within(start, Duration::from_secs(60), "sweep")?;
    if failed.is_empty() {
        Ok("100 networks classified".into())
    } else {
        Err(format!(
            "{} of 100 networks have an edge in no separating triangle and at no degree-3 vertex (first: {})",
            failed.len(),
            example.unwrap_or_default()
        ))
    }
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut maps: Vec<(String, PlanarMap)> =
        ["k4", "prism", "cube", "octahedron", "wheel:4", "wheel:5"]
            .iter()
            .map(|s| (s.to_string(), corpus::resolve(s).unwrap()))
            .collect();
    maps.extend((0..50).map(|s| (format!("random apollonian seed {s}"), random_apollonian(s))));
    for (name, m) in &maps {
        let r = verify_square(m).map_err(|e| format!("{name}: {e}"))?;
        if !(r.codes_equal && r.bijection_is_isomorphism) {
            return Err(format!(
                "{name}: codes equal {} bijection {}",
                r.codes_equal, r.bijection_is_isomorphism
            ));
        }
    }
    within(start, Duration::from_secs(60), "square sweep")?;
    Ok(format!(
        "{} maps: code equality and explicit bijection",
        maps.len()
    ))
}

fn k222_cover(g: &SimpleGraph) -> CircuitDoubleCover {
    let walks: [&[u64]; 4] = [
        &[1, 2, 3, 1, 4, 5],
        &[1, 2, 5, 1, 3, 4],
        &[6, 2, 3, 6, 4, 5],
        &[6, 2, 5, 6, 3, 4],
    ];
    CircuitDoubleCover::new(
        walks
            .iter()
            .map(|w| Circuit::from_walk(g, w).unwrap())
            .collect(),
    )
}

fn criterion_5(parity: &mut Parity) -> Outcome {
    let start = Instant::now();
    let g = corpus::k222().underlying_graph();
    let cover = k222_cover(&g);
    let check = validate_cover(&g, cover.circuits());
    if !check.valid {
        return Err(format!("not a circuit double cover: {check:?}"));
    }
    if check.is_cycle_cover {
        return Err("unexpectedly a cycle double cover".into());
    }
    let o = check_orientability(&g, &cover).map_err(|e| e.to_string())?;
    if let Some(w) = o.witness() {
        parity.record("k222 paper cover", &g, &cover, w);
    }
    let detail = match genus(&g, &cover) {
        Ok(r) => format!(
            "orientable={} chi={} genus={:?}",
            o.is_orientable(),
            r.euler_characteristic,
            r.genus
        ),
        Err(e) => format!("orientable={} ({e})", o.is_orientable()),
    };
    within(start, Duration::from_secs(1), "fixture")?;
    Ok(format!("valid CDC, not a cycle double cover; {detail}"))
}

fn criterion_6(workers: usize, parity: &mut Parity) -> (Outcome, String) {
    let start = Instant::now();
    let limits = EnumerationLimits::default().with_workers(workers);
    let report = run_census(&corpus::default_census_corpus(), &limits);
    let json = report.without_timing().to_json();
    // every orientable cover the census counted, for the parity sweep
    for e in corpus::default_census_corpus() {
        let g = e.build().unwrap().underlying_graph();
        if let Ok(found) = enumerate_covers(&g, true, &limits) {
            parity.record_all(&e.name, &g, &found.covers);
        }
    }
    let outcome = (|| {
        let count = |n: &str| report.entry(n).map(|e| (e.orientable_covers, e.complete));
        for n in ["k4", "prism"] {
            if count(n) != Some((1, true)) {
                return Err(format!("{n}: {:?}", count(n)));
            }
        }
        for n in ["cube", "octahedron", "wheel:4"] {
            match count(n) {
                Some((c, true)) if c >= 2 => {}
                other => return Err(format!("{n}: {other:?}")),
            }
        }
        if report.verdict != Verdict::Pass {
            return Err("census verdict FAIL".into());
        }
        within(start, Duration::from_secs(600), "census")?;
        let c = |n: &str| report.entry(n).unwrap().orientable_covers;
        Ok(format!(
            "verdict pass over {} entries ({} complete); k4=1 prism=1 cube={} octahedron={} wheel:4={}",
            report.entries.len(),
            report.completed,
            c("cube"),
            c("octahedron"),
            c("wheel:4")
        ))
    })();
    (outcome, json)
}

fn criterion_7(workers: usize, parity: &mut Parity) -> (Outcome, String) {
    let start = Instant::now();
    let limits = EnumerationLimits::default().with_workers(workers);
    let mut names: Vec<String> = corpus::default_census_corpus()
        .into_iter()
        .map(|e| e.name)
        .collect();
    names.extend(
        corpus::named_fixtures()
            .into_iter()
            .map(|(n, _)| n.to_string()),
    );
    names.sort();
    names.dedup();
    let mut log = Vec::new();
    let mut checked = 0;
    let outcome = (|| {
        for n in &names {
            let g = corpus::resolve(n).unwrap().underlying_graph();
            if g.edge_count() > 12 {
                continue;
            }
            checked += 1;
            let direct = enumerate_covers(&g, true, &limits).map_err(|e| format!("{n}: {e}"))?;
            let oracle = enumerate_covers(&g, false, &limits).map_err(|e| format!("{n}: {e}"))?;
            parity.record_all(n, &g, &direct.covers);
            parity.record_all(n, &g, &oracle.covers);
            let a: Vec<&CircuitDoubleCover> = direct.covers.iter().map(|c| &c.cover).collect();
            let b: Vec<&CircuitDoubleCover> = oracle
                .covers
                .iter()
                .filter(|c| c.witness.is_some())
                .map(|c| &c.cover)
                .collect();
            log.push(serde_json::json!({ "graph": n, "direct": a, "oracle": b, "all": oracle.covers.len() }));
            if !(direct.complete && oracle.complete) {
                return Err(format!("{n}: enumeration incomplete"));
            }
            if a != b {
                return Err(format!(
                    "{n}: direct {} vs oracle {} orientable covers",
                    a.len(),
                    b.len()
                ));
            }
        }
        within(start, Duration::from_secs(300), "cross-validation")?;
        Ok(format!(
            "{checked} graphs with <= 12 edges: both enumerators agree"
        ))
    })();
    (outcome, serde_json::to_string(&log).unwrap())
}

fn criterion_8(workers: usize, parity: &mut Parity) -> (Outcome, String) {
    let mut log = Vec::new();
    let outcome = (|| {
        for name in ["k4", "cube"] {
            let m = corpus::resolve(name).unwrap();
            let (t, corr) = complete_truncation(&m).map_err(|e| e.to_string())?;
            let (cover, w) = facial_cover(&t);
            let tr = translate_cover(
                &m.underlying_graph(),
                &t.underlying_graph(),
                &corr,
                &cover,
                Some(&w),
            )
            .map_err(|e| format!("{name}: {e}"))?;
            if tr.cover != facial_cover(&m).0 {
                return Err(format!(
                    "facial cover of ({name})^t does not translate to the facial cover"
                ));
            }
            log.push(serde_json::json!({ "graph": name, "facial": tr.cover }));
        }
        let m = corpus::k4();
        let (t, corr) = complete_truncation(&m).map_err(|e| e.to_string())?;
        let (g, gt) = (m.underlying_graph(), t.underlying_graph());
        let limits = EnumerationLimits::default()
            .with_workers(workers)
            .with_max_edges(gt.edge_count())
            .with_budget(Duration::from_secs(600));
        let found = enumerate_covers(&gt, true, &limits).map_err(|e| e.to_string())?;
        parity.record_all("(K4)^t", &gt, &found.covers);
        let mut images = BTreeSet::new();
        for c in &found.covers {
            let tr = translate_cover(&g, &gt, &corr, &c.cover, c.witness.as_ref())
                .map_err(|e| e.to_string())?;
            if !validate_cover(&g, tr.cover.circuits()).valid {
                return Err("translation is not a cover".into());
            }
            match check_orientability(&g, &tr.cover).map_err(|e| e.to_string())? {
                Orientability::Orientable(_) => {}
                Orientability::NotOrientable => return Err("translation is not orientable".into()),
            }
            let w = tr.witness.as_ref().ok_or("witness lost in translation")?;
            validate_oriented(&g, &tr.cover, w)?;
            images.insert(tr.cover.clone());
            log.push(serde_json::json!({ "from": c.cover, "to": tr.cover }));
        }
        if images.len() != found.covers.len() {
            return Err(format!(
                "{} covers translate to only {} distinct covers",
                found.covers.len(),
                images.len()
            ));
        }
        Ok(format!(
            "facial covers of (K4)^t and cube^t map to facial covers; {} orientable cover(s) of (K4)^t{} translate injectively",
            found.covers.len(),
            if found.complete { "" } else { " found before the budget ran out" }
        ))
    })();
    (outcome, serde_json::to_string(&log).unwrap())
}

/// Collects every orientable cover seen, for the parity check.
#[derive(Default)]
struct Parity {
    seen: usize,
    odd: Vec<String>,
}

impl Parity {
    fn record(
        &mut self,
        name: &str,
        g: &SimpleGraph,
        cover: &CircuitDoubleCover,
        _w: &cdclab::cdc::OrientedCover,
    ) {
        self.seen += 1;
        let chi = g.vertex_count() as i64 - g.edge_count() as i64 + cover.len() as i64;
        if chi % 2 != 0 {
            let cycle = validate_cover(g, cover.circuits()).is_cycle_cover;
            self.odd.push(format!(
                "{name} (k={}, chi={chi}, cycle cover={cycle})",
                cover.len()
            ));
        }
    }

    fn record_all(&mut self, name: &str, g: &SimpleGraph, covers: &[FoundCover]) {
        for c in covers {
            if let Some(w) = &c.witness {
                self.record(name, g, &c.cover, w);
            }
        }
    }
}

fn criterion_9(parity: &Parity) -> Outcome {
    let start = Instant::now();
    let g = SimpleGraph::complete(4);
    let walks: [&[u64]; 3] = [&[1, 2, 3, 4], &[1, 2, 4, 3], &[1, 3, 2, 4]];
    let cover = CircuitDoubleCover::new(
        walks
            .iter()
            .map(|w| Circuit::from_walk(&g, w).unwrap())
            .collect(),
    );
    if !validate_cover(&g, cover.circuits()).valid {
        return Err("three 4-cycles of K4 should form a cover".into());
    }
    if check_orientability(&g, &cover)
        .map_err(|e| e.to_string())?
        .is_orientable()
    {
        return Err("three 4-cycles of K4 accepted as orientable".into());
    }
    within(start, Duration::from_secs(1), "refusal")?;
    if parity.odd.is_empty() {
        return Ok(format!(
            "{} orientable covers, all with even chi; K4 three-4-cycles refused",
            parity.seen
        ));
    }
    let cycles = parity
        .odd
        .iter()
        .filter(|s| s.ends_with("cycle cover=true)"))
        .count();
    Err(format!(
        "K4 three-4-cycles refused, but {} of {} orientable covers have odd V - E + k ({} of them cycle covers; e.g. {})",
        parity.odd.len(),
        parity.seen,
        cycles,
        parity.odd.iter().find(|s| s.ends_with("cycle cover=true)")).unwrap_or(&parity.odd[0])
    ))
}

fn main() {
    let mut results: Vec<(u32, Outcome)> = Vec::new();
    let mut parity = Parity::default();
    results.push((1, criterion_1()));
    results.push((2, criterion_2()));
    results.push((3, criterion_3()));
    results.push((4, criterion_4()));
    results.push((5, criterion_5(&mut parity)));

    let (r6, j6a) = criterion_6(1, &mut parity);
    let (r7, j7a) = criterion_7(1, &mut parity);
    let (r8, j8a) = criterion_8(1, &mut parity);
    results.push((6, r6));
    results.push((7, r7));
    results.push((8, r8));
    results.push((9, criterion_9(&parity)));

    let mut scratch = Parity::default();
    let (_, j6b) = criterion_6(4, &mut scratch);
    let (_, j7b) = criterion_7(4, &mut scratch);
    let (_, j8b) = criterion_8(4, &mut scratch);
    let differ: Vec<u32> = [(6, j6a == j6b), (7, j7a == j7b), (8, j8a == j8b)]
        .iter()
        .filter(|(_, same)| !same)
        .map(|(n, _)| *n)
        .collect();
    results.push((
        10,
        if differ.is_empty() {
            Ok(format!(
                "criteria 6-8 reports identical with 1 and 4 workers ({} bytes)",
                j6a.len() + j7a.len() + j8a.len()
            ))
        } else {
            Err(format!(
                "reports differ between worker counts for criteria {differ:?}"
            ))
        },
    ));

    let mut failed = 0;
    for (n, r) in &results {
        match r {
            Ok(msg) => println!("PASS criterion {n}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {n}: {msg}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
