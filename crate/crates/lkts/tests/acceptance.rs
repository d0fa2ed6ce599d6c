//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod support;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lkts::{certify_file, read_base, DesignFile, Encoding, Level};
use lkts_core::base::{denniston15_classes, RawDesigns};
use lkts_core::frame::{frame, partial_class, partial_class_plane};
use lkts_core::verify::{
    all_triples, cross_check_locate, cross_check_locate_designs, verify_counts, verify_kts, LargeSetVerifier,
    TripleRank,
};
use lkts_core::{
    builtin_denniston15, BaseLargeSet, Certificate, ClassId, Construction, Design, Field, Geometry, Point, PointVector,
    Triple,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use support::oracle::PrimeSpace;
use support::{fixture, sts9};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn geometry(q: u32, n: usize) -> Geometry {
    Geometry::new(Field::for_order(q).unwrap(), n).unwrap()
}

fn context(q: u32, n: usize, base: BaseLargeSet) -> Construction {
    Construction::new(geometry(q, n), base).unwrap()
}

fn lkts9() -> BaseLargeSet {
    read_base(&fixture("lkts9.txt")).expect("fixture loads")
}

fn golden(name: &str) -> BTreeSet<Triple> {
    let labels = lkts::PointLabels::new(13, 2).unwrap();
    std::fs::read_to_string(fixture(&format!("golden/{name}")))
        .unwrap()
        .lines()
        .map(|line| {
            let p: Vec<Point> = line.split_whitespace().map(|t| labels.parse(t, Encoding::Appendix).unwrap()).collect();
            Triple::new(p[0], p[1], p[2]).unwrap()
        })
        .collect()
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took <= limit, || format!("{what} took {took:.2?}, limit {limit:?}"))
}

fn ac1_golden() -> Outcome {
    let start = Instant::now();
    let ctx = context(13, 2, builtin_denniston15());
    let f = ctx.field();
    ensure(f.generator().index() == 2 && f.omega().index() == 3, || "expected g = 2, omega = 3".into())?;
    let gens: Vec<String> = ctx.geometry().lines().generators().iter().map(|v| v.to_string()).collect();
    let mut expected = vec!["1:0".to_string(), "0:1".to_string()];
    expected.extend((1..13).map(|a| format!("{a}:1")));
    ensure(gens == expected, || format!("line generators {gens:?}"))?;
    let w = ctx.geometry().zero();
    let star: BTreeSet<Triple> = ctx.build_star_class(&w).triples.into_iter().collect();
    let u1: BTreeSet<Triple> = ctx.build_class(&w, 0, 0, 0).map_err(|e| e.to_string())?.triples.into_iter().collect();
    let (g_star, g_u1) = (golden("b00_star.txt"), golden("b00_u1_j1.txt"));
    ensure(g_star.len() == 57 && g_u1.len() == 57, || "golden listings should have 57 blocks each".into())?;
    ensure(star == g_star, || format!("star class differs in {} blocks", star.symmetric_difference(&g_star).count()))?;
    ensure(u1 == g_u1, || format!("class u1.a0.b0 differs in {} blocks", u1.symmetric_difference(&g_u1).count()))?;
    within(start, Duration::from_secs(1), "golden construction")?;
    Ok(format!("star and u1.a0.b0 of B_0:0 equal the listings (57 + 57 blocks) in {:.2?}", start.elapsed()))
}

/// Certifies a whole large set; every design is checked on its own, then
/// disjointness and exact cover across designs.
fn certify_large_set(ctx: &Construction, direct: bool, classes: usize, blocks: usize) -> Result<Certificate, String> {
    let order = ctx.order();
    let mut verifier = LargeSetVerifier::new(order);
    let designs: Box<dyn Iterator<Item = Design>> =
        if direct { Box::new(ctx.large_set_direct()) } else { Box::new(ctx.large_set()) };
    for design in designs {
        ensure(design.classes.len() == classes && design.block_count() == blocks, || {
            format!("design {} has {} classes, {} blocks", design.w, design.classes.len(), design.block_count())
        })?;
        let cert = verifier.add_design(&design.w.to_string(), &design.classes);
        ensure(cert.passed(), || format!("design {} fails:\n{cert}", design.w))?;
    }
    let cert = verifier.finish();
    ensure(cert.passed(), || format!("{cert}"))?;
    Ok(cert)
}

fn ac2_lkts171() -> Outcome {
    let start = Instant::now();
    let ctx = context(13, 2, builtin_denniston15());
    let cert = certify_large_set(&ctx, false, 85, 4845)?;
    ensure(cert.counts.designs == 169 && cert.counts.distinct_triples == 818_805, || format!("{cert}"))?;
    within(start, Duration::from_secs(120), "LKTS(171) certification")?;
    Ok(format!("169 designs x 85 classes x 4845 blocks; exact cover of 818805 triples in {:.2?}", start.elapsed()))
}

fn ac3_lkts51() -> Outcome {
    let start = Instant::now();
    let base = lkts9();
    ensure(base == sts9::oracle_lkts9(), || "lkts9 fixture differs from the search oracle".into())?;
    let cert = base.validate();
    ensure(cert.passed(), || format!("{cert}"))?;
    ensure((cert.counts.designs, cert.counts.classes, cert.counts.distinct_triples) == (7, 28, 84), || {
        format!("{cert}")
    })?;
    let ctx = context(7, 2, base);
    let cert = certify_large_set(&ctx, false, 25, 425)?;
    ensure(cert.counts.designs == 49 && cert.counts.distinct_triples == 20_825, || format!("{cert}"))?;
    within(start, Duration::from_secs(10), "LKTS(51) certification")?;
    Ok(format!(
        "base LKTS(9) from search oracle certified; 49 designs x 25 classes x 17 blocks, 20825 triples in {:.2?}",
        start.elapsed()
    ))
}

/// Disjoint blocks whose union is exactly `expected`.
fn covers_exactly(blocks: &[Triple], expected: &BTreeSet<u32>) -> bool {
    let mut seen = BTreeSet::new();
    blocks.iter().flat_map(|t| t.ids()).all(|p| seen.insert(p)) && seen == *expected
}

fn plane_points(space: &PrimeSpace, plane: &lkts_core::PlaneBasis) -> BTreeSet<u32> {
    let (b1, b2) = plane.basis();
    let (v1, v2): (Vec<u32>, Vec<u32>) =
        (b1.coords().iter().map(|c| c.index()).collect(), b2.coords().iter().map(|c| c.index()).collect());
    let q = space.q;
    (0..q)
        .flat_map(|s| (0..q).map(move |r| (s, r)))
        .map(|(s, r)| space.encode(&v1.iter().zip(&v2).map(|(a, b)| (s * a + r * b) % q).collect::<Vec<_>>()))
        .collect()
}

fn plane_partition(g: &Geometry, space: &PrimeSpace, line: usize, s: u32, c: u32) -> Result<(), String> {
    let f = g.field();
    let gen = g.lines().generator(line);
    let u = g.scale(f.elem(s).unwrap(), gen);
    let dir: Vec<u32> = gen.coords().iter().map(|c| c.index()).collect();
    let k = space.line(&dir);
    for plane in g.planes_through(line) {
        let blocks = partial_class_plane(g, &u, plane, f.elem(c).unwrap()).map_err(|e| e.to_string())?;
        let expected: BTreeSet<u32> = plane_points(space, plane).difference(&k).copied().collect();
        ensure(covers_exactly(&blocks, &expected), || format!("partial class u = {u}, c = {c} fails on a plane"))?;
    }
    Ok(())
}

fn ac4_partitions() -> Outcome {
    let start = Instant::now();
    let mut planes_checked = 0;
    let g = geometry(7, 2);
    let space = PrimeSpace { q: 7, n: 2 };
    for line in 0..g.lines().len() {
        for s in 1..7 {
            for c in 1..7 {
                plane_partition(&g, &space, line, s, c)?;
                planes_checked += 1;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0);
    for (q, n) in [(13, 2), (7, 3)] {
        let g = geometry(q, n as usize);
        let space = PrimeSpace { q, n };
        for _ in 0..60 {
            let line = rng.gen_range(0..g.lines().len());
            plane_partition(&g, &space, line, rng.gen_range(1..q), rng.gen_range(1..q))?;
            planes_checked += 1;
        }
    }
    let mut frame_classes = 0;
    for (q, n) in [(7, 2), (13, 2), (7, 3)] {
        let g = geometry(q, n as usize);
        let space = PrimeSpace { q, n };
        let all: BTreeSet<u32> = (0..space.size()).collect();
        for line in 0..g.lines().len() {
            let dir: Vec<u32> = g.lines().generator(line).coords().iter().map(|c| c.index()).collect();
            let expected: BTreeSet<u32> = all.difference(&space.line(&dir)).copied().collect();
            for a in 0..g.field().t() {
                for b in 0..3 {
                    let class = partial_class(&g, line, a, b).map_err(|e| e.to_string())?;
                    ensure(covers_exactly(&class, &expected), || {
                        format!("frame class ({line}, {a}, {b}) at ({q},{n})")
                    })?;
                    frame_classes += 1;
                }
            }
        }
    }
    let mut sizes = Vec::new();
    for (q, n, expected) in [(7u32, 2u32, 336usize), (13, 2, 4368)] {
        let g = geometry(q, n as usize);
        let mut triples: Vec<[u32; 3]> = frame(&g).into_iter().flat_map(|(_, c)| c).map(|t| t.ids()).collect();
        let total = triples.len();
        triples.sort();
        triples.dedup();
        ensure(triples.len() == total, || format!("frame at ({q},{n}) repeats a triple"))?;
        let oracle = PrimeSpace { q, n }.zero_sum_noncollinear();
        ensure(oracle.len() == expected, || format!("oracle found {} triples at ({q},{n})", oracle.len()))?;
        ensure(triples.into_iter().collect::<BTreeSet<_>>() == oracle, || format!("frame != oracle at ({q},{n})"))?;
        sizes.push(expected);
    }
    Ok(format!(
        "{planes_checked} (u, L, c) partitions, {frame_classes} frame classes, frame = zero-sum set ({} and {} triples) in {:.2?}",
        sizes[0],
        sizes[1],
        start.elapsed()
    ))
}

fn ac5_counts() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    for (q, n) in [(7u32, 1u32), (13, 1), (19, 1), (7, 2), (13, 2), (19, 2), (7, 3)] {
        let g = geometry(q, n as usize);
        let cert = verify_counts(&g);
        ensure(cert.passed(), || format!("{cert}"))?;
        ensure(cert.check("noncollinear").is_some(), || format!("enumeration skipped at ({q},{n})"))?;
        let space = PrimeSpace { q, n };
        let size = space.size() as u64;
        let q64 = q as u64;
        let zero_sum = space.zero_sum_noncollinear().len() as u64;
        let noncollinear = space.count_noncollinear();
        ensure(zero_sum == (size - q64) * (size - 1) / 6, || format!("zero-sum count {zero_sum} at ({q},{n})"))?;
        ensure(noncollinear == zero_sum * size, || format!("non-collinear {noncollinear} != {zero_sum} * {size}"))?;
        ensure(noncollinear == size * (size - q64) * (size - 1) / 6, || {
            format!("non-collinear closed form at ({q},{n})")
        })?;
        let ctx_classes = size.div_ceil(2);
        let lines_through_0 = (size - 1) / (q64 - 1);
        ensure(ctx_classes == (q64 - 1) / 2 * lines_through_0 + 1, || "classes per design".into())?;
        let printed = (size - q64) * (size - 1) * (size - 1) / 6;
        if printed != noncollinear {
            lines.push(format!("({q},{n}): {printed} vs {noncollinear}"));
        }
    }
    let ctx = context(13, 2, builtin_denniston15());
    ensure(ctx.build_design(&ctx.geometry().zero()).classes.len() == 85, || "85 classes at (13,2)".into())?;
    Ok(format!(
        "zero-sum (q^n-q)(q^n-1)/6, non-collinear q^n(q^n-q)(q^n-1)/6, (q^n+1)/2 classes hold at 7 (q,n) in {:.2?}; \
         the form (q^n-q)(q^n-1)^2/6 disagrees with enumeration wherever n >= 2: {}",
        start.elapsed(),
        lines.join(", ")
    ))
}

fn ac6_translation() -> Outcome {
    let start = Instant::now();
    let ctx = context(13, 2, builtin_denniston15());
    let g = ctx.geometry();
    let origin = ctx.build_design(&g.zero());
    let mut rng = StdRng::seed_from_u64(0);
    let mut ws: BTreeSet<u32> = BTreeSet::new();
    while ws.len() < 16 {
        ws.insert(rng.gen_range(1..g.size()));
    }
    for &id in &ws {
        let w = g.decode(Point(id)).unwrap();
        let direct = ctx.build_design(&w);
        ensure(ctx.translate_design(&origin, &w) == direct, || format!("B_0 + {w} != B_{w}"))?;
    }
    let f = ctx.field().clone();
    let shift = move |line: usize, r: &PointVector| {
        f.elem(r.coords().iter().fold(line as u32 + 5, |acc, c| (acc * 7 + c.index()) % 13)).unwrap()
    };
    for &id in ws.iter().take(4) {
        let w = g.decode(Point(id)).unwrap();
        ensure(ctx.build_design_with_transversal(&w, &shift) == ctx.build_design(&w), || {
            format!("transversal changes B_{w}")
        })?;
    }
    Ok(format!("B_0 + w = B_w for {} sampled w (transversal-independent at 4) in {:.2?}", ws.len(), start.elapsed()))
}

fn ac7_locate() -> Outcome {
    let start = Instant::now();
    let ctx = context(7, 2, lkts9());
    let cert = cross_check_locate(&ctx, all_triples(ctx.order()));
    ensure(cert.passed() && cert.counts.distinct_triples == 20_825, || format!("{cert}"))?;
    let designs: Vec<Design> = ctx.large_set_direct().collect();
    let cert = cross_check_locate_designs(&ctx, &designs);
    ensure(cert.passed() && cert.counts.distinct_triples == 20_825, || format!("{cert}"))?;

    let ctx = context(13, 2, builtin_denniston15());
    let rank = TripleRank::new(ctx.order());
    let mut rng = StdRng::seed_from_u64(0);
    let samples = 20_000;
    let picks: Vec<Triple> = (0..samples).map(|_| rank.unrank(rng.gen_range(0..rank.total())).unwrap()).collect();
    let cert = cross_check_locate(&ctx, picks);
    ensure(cert.passed(), || format!("{cert}"))?;
    let g = ctx.geometry();
    let sample: Vec<Design> =
        [0u32, 1, 84, 168].iter().map(|&id| ctx.build_design(&g.decode(Point(id)).unwrap())).collect();
    let cert = cross_check_locate_designs(&ctx, &sample);
    ensure(cert.passed(), || format!("{cert}"))?;
    Ok(format!(
        "all 20825 triples at (7,2) both ways; {samples} sampled triples and 4 full designs at (13,2) in {:.2?}",
        start.elapsed()
    ))
}

/// The named check failed and carries a witness.
fn flagged(cert: &Certificate, check: &str) -> Result<String, String> {
    match cert.check(check) {
        Some(c) if !c.passed => match &c.witness {
            Some(w) => Ok(format!("{check}: {w}")),
            None => Err(format!("{check} failed without a witness")),
        },
        Some(_) => Err(format!("{check} did not flag the tampering:\n{cert}")),
        None => Err(format!("no check named {check}:\n{cert}")),
    }
}

fn ac8_mutations() -> Outcome {
    let ctx = context(13, 2, builtin_denniston15());
    let g = ctx.geometry();
    let w = g.vector(&[2, 5]).unwrap();
    let design = ctx.build_design(&w);
    let classes = |d: &Design| d.classes.iter().map(|c| c.triples.clone()).collect::<Vec<_>>();
    let mut found = Vec::new();

    // deleted block, in a design file
    let file = DesignFile::from_design(&ctx, &design);
    let mut text: Vec<String> = file.render().lines().map(String::from).collect();
    let cut = text[3].rfind(';').unwrap();
    text[3].truncate(cut);
    let report = certify_file(std::path::Path::new("deleted.txt"), &(text.join("\n") + "\n"), Level::Kts);
    found.push(("deleted block", flagged(&report.cert, "pair-coverage")?));

    // duplicated block: a block of class 1 copied into class 2
    let mut dup = classes(&design);
    let extra = dup[1][0];
    dup[2].push(extra);
    found.push(("duplicated block", flagged(&verify_kts(&dup, ctx.order()), "pair-coverage")?));

    // swapped point between two blocks of one class
    let mut swapped = classes(&design);
    let (mut a, mut b) = (swapped[5][0].points(), swapped[5][1].points());
    std::mem::swap(&mut a[0], &mut b[0]);
    swapped[5][0] = Triple::new(a[0], a[1], a[2]).unwrap();
    swapped[5][1] = Triple::new(b[0], b[1], b[2]).unwrap();
    found.push(("swapped point", flagged(&verify_kts(&swapped, ctx.order()), "pair-coverage")?));

    // reindexed design: B_w submitted under a second label, B_w' left out
    let mut verifier = LargeSetVerifier::new(ctx.order());
    let slot = g.vector(&[0, 3]).unwrap();
    for d in ctx.large_set() {
        let label = d.w.to_string();
        let d = if d.w == slot { design.clone() } else { d };
        verifier.add_design(&label, &d.classes);
    }
    found.push(("reindexed design", flagged(&verifier.finish(), "designs-disjoint")?));

    // shifted class: one class of B_w translated by a nonzero vector
    let mut shifted = design.clone();
    let by = g.vector(&[1, 0]).unwrap();
    shifted.classes[10].triples = shifted.classes[10].triples.iter().map(|t| g.translate(t, &by)).collect();
    found.push(("shifted class", flagged(&verify_kts(&classes(&shifted), ctx.order()), "pair-coverage")?));

    // corrupted base: two points exchanged between blocks of Q[0][1]
    let mut raw: Vec<Vec<Triple>> = denniston15_classes();
    let (mut a, mut b) = (raw[1][2].points(), raw[1][3].points());
    std::mem::swap(&mut a[0], &mut b[0]);
    raw[1][2] = Triple::new(a[0], a[1], a[2]).unwrap();
    raw[1][3] = Triple::new(b[0], b[1], b[2]).unwrap();
    let field = Field::new(13, 1).unwrap();
    let corrupt = BaseLargeSet::from_compact(&field, raw).map_err(|e| e.to_string())?;
    found.push(("corrupted base", flagged(&corrupt.validate(), "designs-kts")?));

    // base with two designs exchanged is rejected at load
    let mut designs: RawDesigns = builtin_denniston15().designs().clone();
    designs.swap(0, 1);
    let err = BaseLargeSet::from_designs(&field, designs).err().ok_or("swapped base designs accepted")?;
    found.push(("reindexed base", err.to_string()));

    if let Some((_, w)) = found.iter().find(|(_, w)| w.is_empty()) {
        return Err(format!("empty witness {w}"));
    }
    Ok(found.iter().map(|(what, w)| format!("[{what}] {w}")).collect::<Vec<_>>().join("; "))
}

fn spot_345() -> Outcome {
    let start = Instant::now();
    let ctx = context(7, 3, lkts9());
    let w = ctx.geometry().vector(&[1, 2, 3]).unwrap();
    let design = ctx.build_design(&w);
    ensure(design.classes.len() == 172 && design.block_count() == 172 * 115, || {
        format!("{} classes, {} blocks", design.classes.len(), design.block_count())
    })?;
    let cert = verify_kts(&design.classes, ctx.order());
    ensure(cert.passed(), || format!("{cert}"))?;
    let ids: BTreeSet<ClassId> = design.classes.iter().map(|c| c.id).collect();
    ensure(ids.len() == 172, || "class ids repeat".into())?;
    within(start, Duration::from_secs(60), "order-345 spot check")?;
    Ok(format!("B_1:2:3 of LKTS(345) is a KTS(345): 172 classes x 115 blocks in {:.2?}", start.elapsed()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("AC1", "golden classes of B_0:0 at order 171", ac1_golden),
        ("AC2", "full LKTS(171) certification", ac2_lkts171),
        ("AC3", "full LKTS(51) from the LKTS(9) fixture", ac3_lkts51),
        ("AC4", "partition properties of the frame", ac4_partitions),
        ("AC5", "counting identities against enumeration", ac5_counts),
        ("AC6", "translation fast path", ac6_translation),
        ("AC7", "locate oracle", ac7_locate),
        ("AC8", "mutation detection", ac8_mutations),
        ("SPOT", "single design at order 345", spot_345),
    ];
    let mut failed = 0;
    for (id, title, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {id} {title}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL {id} {title}: {reason}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
