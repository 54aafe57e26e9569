//! Acceptance gate: one pass/fail line per criterion; exits non-zero if any
//! criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use pcube::cli::certs::{
    decomposition_to_json, flaw_to_json, refutation_certificate, validate, Certificate, CertificateFile, Validation,
};
use pcube::cli::format::{parse_graph, print_graph};
use pcube::decomposer::{
    certify_planar_partial_cube, is_minimal_obstruction, replay, DecompositionCertificate, Refutation,
};
use pcube::expansion::{
    extract_noncrossing_step, find_flaw_witness, is_noncrossing_expansion, is_two_face_expansion,
    verify_flaw_witness, verify_noncrossing, FlawBudget, FlawWitness, NonCrossingCertificate,
};
use pcube::generators::{complete, complete_bipartite, cycle, even_cycle, gear_obstruction, hypercube, path, random_tree};
use pcube::graph::Graph;
use pcube::ops::expand;
use pcube::partial_cube::{recognize, verify_labeling, verify_refutation};
use pcube::planarity::{
    is_planar, test_planarity, verify_embedding, verify_kuratowski, KuratowskiKind, Planarity,
};

#[derive(Default)]
struct Corpus {
    samples: Vec<Graph>,
    decompositions: Vec<DecompositionCertificate>,
    steps: Vec<NonCrossingCertificate>,
    refuted: Vec<(Graph, Refutation)>,
    flaw: Option<FlawWitness>,
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.1?}, limit {limit:?}"))?;
    Ok(t)
}

fn decomposition_round_trip(c: &mut Corpus) -> Check {
    let start = Instant::now();
    c.samples = common::planar_pc_samples(200);
    let mut max_n = 0;
    for (i, h) in c.samples.iter().enumerate() {
        max_n = max_n.max(h.vertex_count());
        let classes = recognize(h).map_err(|e| format!("sample {i}: {e}"))?.partition.len();
        let cert = certify_planar_partial_cube(h).map_err(|r| format!("sample {i}: refuted {r:?}"))?;
        ensure(cert.steps.len() == classes, || format!("sample {i}: {} steps, {classes} classes", cert.steps.len()))?;
        let back = replay(&cert).map_err(|e| format!("sample {i}: {e}"))?;
        ensure(back.labeled_eq(h), || format!("sample {i}: replay differs"))?;
        c.decompositions.push(cert);
    }
    ensure(max_n <= 64, || format!("sample with {max_n} vertices"))?;
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("200 samples (up to {max_n} vertices) certified and replayed in {t:.1?}"))
}

fn certificate_per_class(c: &mut Corpus) -> Check {
    let start = Instant::now();
    let mut hosts: Vec<Graph> = c.samples.clone();
    hosts.push(hypercube(3));
    for n in 2..=6 {
        hosts.push(even_cycle(2 * n).unwrap());
    }
    let mut count = 0;
    for (i, h) in hosts.iter().enumerate() {
        let tp = recognize(h).unwrap().partition;
        for class in 0..tp.len() {
            let cert = extract_noncrossing_step(h, &tp, class).map_err(|e| format!("host {i} class {class}: {e}"))?;
            ensure(verify_noncrossing(&cert), || format!("host {i} class {class}: certificate rejected"))?;
            c.steps.push(cert);
            count += 1;
        }
    }
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("{count} classes over {} hosts extracted and verified in {t:.1?}", hosts.len()))
}

fn certified_expansions_planar(c: &mut Corpus) -> Check {
    let start = Instant::now();
    let all: Vec<&NonCrossingCertificate> =
        c.steps.iter().chain(c.decompositions.iter().flat_map(|d| d.steps.iter())).collect();
    let mut failures = 0;
    for cert in &all {
        if !verify_noncrossing(cert) {
            continue;
        }
        let h = expand(&cert.spec).map_err(|e| e.to_string())?;
        let planar = match test_planarity(&h) {
            Planarity::Planar(emb) => verify_embedding(&h, &emb),
            Planarity::NonPlanar(_) => false,
        };
        if !planar {
            failures += 1;
        }
    }
    ensure(failures == 0, || format!("{failures} verified certificates with non-planar expansion"))?;
    let t = start.elapsed();
    Ok(format!("{} verified certificates, all expansions carry a verified embedding ({t:.1?})", all.len()))
}

fn two_face_counterexample(c: &mut Corpus) -> Check {
    let start = Instant::now();
    let w = find_flaw_witness(&FlawBudget::default(), 0).map_err(|e| e.to_string())?;
    ensure(verify_flaw_witness(&w), || "witness rejected".into())?;
    ensure(is_two_face_expansion(&w.spec).unwrap(), || "2-face condition fails".into())?;
    ensure(!is_noncrossing_expansion(&w.spec).unwrap(), || "expansion is planar".into())?;
    let h = expand(&w.spec).unwrap();
    ensure(verify_kuratowski(&h, &w.kuratowski), || "Kuratowski witness rejected".into())?;
    let t = within(start, Duration::from_secs(600))?;
    let kind = match w.kuratowski.kind {
        KuratowskiKind::K5 => "K5",
        KuratowskiKind::K33 => "K3,3",
    };
    let msg = format!(
        "base with {} vertices, |G1|={} |G2|={}, {kind} subdivision in the expansion ({t:.1?})",
        w.spec.base.vertex_count(),
        w.spec.v1.len(),
        w.spec.v2.len()
    );
    c.flaw = Some(w);
    Ok(msg)
}

fn obstruction_family(c: &mut Corpus) -> Check {
    let start = Instant::now();
    for n in 3..=5 {
        let g = gear_obstruction(n).unwrap();
        ensure(recognize(&g).is_ok(), || format!("gear {n} x K2 is not a partial cube"))?;
        ensure(!is_planar(&g), || format!("gear {n} x K2 is planar"))?;
        ensure(is_minimal_obstruction(&g).unwrap(), || format!("gear {n} x K2 is not minimal"))?;
        c.refuted.push((g.clone(), certify_planar_partial_cube(&g).unwrap_err()));
    }
    let q4 = hypercube(4);
    ensure(recognize(&q4).is_ok() && !is_planar(&q4), || "Q4 check failed".into())?;
    ensure(!is_minimal_obstruction(&hypercube(5)).unwrap(), || "Q5 reported minimal".into())?;
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("gear_n x K2 minimal for n=3,4,5; Q4 non-planar; Q5 not minimal ({t:.1?})"))
}

fn planarity_oracle(_: &mut Corpus) -> Check {
    let start = Instant::now();
    let mut rng = common::rng(2024);
    let mut graphs: Vec<Graph> = (0..10_000).map(|_| common::random_connected_graph(&mut rng, 7)).collect();
    let named = common::named_graphs(16);
    graphs.extend(named.iter().map(|(_, g)| g.clone()));
    let mut nonplanar = 0;
    for (i, g) in graphs.iter().enumerate() {
        let oracle = common::has_kuratowski_subdivision(g);
        match test_planarity(g) {
            Planarity::Planar(emb) => {
                ensure(!oracle, || format!("graph {i}: planar verdict, oracle disagrees"))?;
                ensure(verify_embedding(g, &emb), || format!("graph {i}: embedding rejected"))?;
            }
            Planarity::NonPlanar(w) => {
                ensure(oracle, || format!("graph {i}: non-planar verdict, oracle disagrees"))?;
                ensure(verify_kuratowski(g, &w), || format!("graph {i}: witness rejected"))?;
                nonplanar += 1;
            }
        }
    }
    let t = within(start, Duration::from_secs(600))?;
    Ok(format!(
        "{} graphs ({} named), {nonplanar} non-planar, all verdicts match the oracle ({t:.1?})",
        graphs.len(),
        named.len()
    ))
}

fn recognition_suite(c: &mut Corpus) -> Check {
    let start = Instant::now();
    let mut positives: Vec<Graph> = (0..=5).map(hypercube).collect();
    positives.extend((2..=10).map(|n| even_cycle(2 * n).unwrap()));
    positives.extend((1..=12).map(|n| path(n).unwrap()));
    positives.extend((1..=20).map(|n| random_tree(n, n as u64).unwrap()));
    for (i, g) in positives.iter().enumerate() {
        let lab = recognize(g).map_err(|e| format!("positive {i}: {e}"))?.labeling;
        ensure(verify_labeling(g, &lab), || format!("positive {i}: labeling rejected"))?;
    }
    for (name, g) in [("C5", cycle(5)), ("K2,3", complete_bipartite(2, 3)), ("K4", complete(4))] {
        let r = recognize(&g).err().ok_or_else(|| format!("{name} recognized"))?;
        ensure(verify_refutation(&g, &r), || format!("{name}: refutation rejected"))?;
        c.refuted.push((g.clone(), Refutation::NotPartialCube(r)));
    }
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("{} partial cubes labeled, C5/K2,3/K4 refuted ({t:.1?})", positives.len()))
}

fn cli_round_trips(c: &mut Corpus) -> Check {
    let mut graphs: Vec<Graph> = c.samples.clone();
    graphs.extend(c.refuted.iter().map(|(g, _)| g.clone()));
    graphs.extend(common::named_graphs(16).into_iter().map(|(_, g)| g));
    for (i, g) in graphs.iter().enumerate() {
        let text = print_graph("g", g);
        let f = parse_graph(&text).map_err(|e| format!("graph {i}: {e}"))?;
        ensure(f.graph.labeled_eq(g) && print_graph(&f.name, &f.graph) == text, || format!("graph {i}: text round trip"))?;
    }
    let mut files: Vec<CertificateFile> = c
        .decompositions
        .iter()
        .map(|d| CertificateFile::new(Certificate::Decomposition(decomposition_to_json(d))))
        .collect();
    files.extend(c.refuted.iter().map(|(g, r)| refutation_certificate(g, r)));
    if let Some(w) = &c.flaw {
        files.push(CertificateFile::new(Certificate::FlawWitness(flaw_to_json(w))));
    }
    for (i, file) in files.iter().enumerate() {
        let text = file.to_json();
        let back = CertificateFile::from_json(&text).map_err(|e| format!("certificate {i}: {e}"))?;
        ensure(back.to_json() == text, || format!("certificate {i}: JSON round trip"))?;
        ensure(matches!(validate(&back), Validation::Valid(_)), || format!("certificate {i}: rejected"))?;
    }

    let dir = std::env::temp_dir().join(format!("pcube-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let p = |name: &str| dir.join(name).to_str().unwrap().to_string();
    let code = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_pcube")).args(args).output().map(|o| o.status.code()).unwrap_or(None)
    };
    std::fs::write(p("bad.txt"), "edges only\n").unwrap();
    let observed = [
        (code(&["generate", "hypercube", "3", "-o", &p("q3.txt")]), Some(0)),
        (code(&["certify", &p("q3.txt"), "-o", &p("q3.json")]), Some(0)),
        (code(&["replay", &p("q3.json")]), Some(0)),
        (code(&["generate", "gear-obstruction", "3", "-o", &p("g3.txt")]), Some(0)),
        (code(&["certify", &p("g3.txt"), "-o", &p("g3.json")]), Some(1)),
        (code(&["verify", &p("g3.json")]), Some(0)),
        (code(&["recognize", &p("bad.txt")]), Some(2)),
    ];
    for (i, (got, want)) in observed.iter().enumerate() {
        ensure(got == want, || format!("command {i}: exit {got:?}, expected {want:?}"))?;
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!(
        "{} graph files and {} certificate files round trip; exit codes 0/1/2 observed",
        graphs.len(),
        files.len()
    ))
}

fn main() {
    let criteria: [(&str, fn(&mut Corpus) -> Check); 8] = [
        ("1 decomposition round trip", decomposition_round_trip),
        ("2 non-crossing certificate per class", certificate_per_class),
        ("3 certified expansions are planar", certified_expansions_planar),
        ("4 two-face counterexample", two_face_counterexample),
        ("5 obstruction family", obstruction_family),
        ("6 planarity oracle equivalence", planarity_oracle),
        ("7 recognition suite", recognition_suite),
        ("8 CLI round trips", cli_round_trips),
    ];
    let mut corpus = Corpus::default();
    let mut failed = 0;
    for (name, check) in criteria {
        let result = catch_unwind(AssertUnwindSafe(|| check(&mut corpus)))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match result {
            Ok(msg) => println!("PASS  criterion {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name}: {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 8 acceptance criteria passed");
}
