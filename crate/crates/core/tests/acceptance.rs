//! End-to-end acceptance suite. Prints one line per criterion and exits
//! nonzero if any criterion fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use cwrithe::algebra::{rat, ratio, Rational};
use cwrithe::curve::{Link, ProjectiveTransform, RationalSpaceCurve};
use cwrithe::harness::{
    sampled_writhe, scan_family, verify_center_independence, verify_isotopy_invariance, verify_parity_bounds,
    MemberOutcome,
};
use cwrithe::io::{parse_curve_file, CurveInput, Family};
use cwrithe::algebra::Sign;
use cwrithe::projection::{LocusKind, ProjectionCenter, Projector};
use cwrithe::writhe::{
    build_diagram, crossing_sign, diagram_from_projection, linking_matrix, solitary_sign, writhe_oriented,
    writhe_unoriented, Diagram,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn family(name: &str) -> Family {
    match parse_curve_file(&data(name)).expect("family file") {
        CurveInput::Family(f) => f,
        CurveInput::Link(_) => panic!("{name} is not a family"),
    }
}

fn model(tau: Rational) -> Link {
    Link::single(RationalSpaceCurve::model(&tau))
}

fn check(cond: bool, msg: String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg)
    }
}

fn golden_signs() -> Outcome {
    let mut notes = Vec::new();
    for (tau, kind) in [(rat(-1), LocusKind::Crossing), (rat(1), LocusKind::Solitary)] {
        let start = Instant::now();
        let d = build_diagram(&model(tau.clone()), &ProjectionCenter::standard()).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        let signs: Vec<(LocusKind, i8)> = d.loci.iter().map(|l| (l.locus.kind, l.sign)).collect();
        check(signs == vec![(kind, -1)], format!("tau = {tau}: loci {signs:?}"))?;
        check(took < Duration::from_secs(1), format!("tau = {tau}: took {took:?}"))?;
        notes.push(format!("tau={tau}: {kind:?} -1 in {took:.2?}"));
    }
    Ok(notes.join("; "))
}

fn first_move_invariance() -> Outcome {
    let start = Instant::now();
    let grid = [rat(-2), rat(-1), ratio(-1, 2), ratio(1, 2), rat(1), rat(2)];
    let mut values = Vec::new();
    for tau in &grid {
        let (w, _) = sampled_writhe(&Projector::new(&model(tau.clone())).map_err(|e| e.to_string())?, 0)
            .map_err(|e| e.to_string())?;
        values.push(w);
    }
    let took = start.elapsed();
    check(values.iter().all(|&w| w == -1), format!("values {values:?}"))?;
    check(took < Duration::from_secs(10), format!("took {took:?}"))?;
    Ok(format!("Cw = -1 on all 6 members in {took:.2?}"))
}

fn sample_curves() -> Vec<RationalSpaceCurve> {
    [(3, 11), (4, 12), (4, 13), (5, 14), (5, 15)]
        .iter()
        .map(|&(d, seed)| RationalSpaceCurve::sample_random(d, seed, 5).expect("sample"))
        .collect()
}

fn projection_independence() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for c in sample_curves() {
        let degree = c.degree();
        let run = verify_center_independence(&Link::single(c), 20, 2024).map_err(|e| e.to_string())?;
        check(run.verdict && run.attained.len() == 1, format!("degree {degree}: attained {:?}", run.attained))?;
        notes.push(format!("d{degree}:{}", run.attained[0]));
    }
    let took = start.elapsed();
    check(took < Duration::from_secs(300), format!("took {took:?}"))?;
    Ok(format!("5 curves x 20 centers, values [{}] in {took:.2?}", notes.join(" ")))
}

fn isotopy_and_mirror() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let subjects = vec![model(rat(-1)), Link::single(sample_curves().remove(1))];
    for link in subjects {
        let run = verify_isotopy_invariance(&link, 20, 77).map_err(|e| e.to_string())?;
        let pos = run.records.iter().filter(|r| r.orientation == Some(1)).count();
        let neg = run.records.iter().filter(|r| r.orientation == Some(-1)).count();
        check(run.verdict && pos == 20 && neg == 20, format!("verdict {} ({pos}/{neg})", run.verdict))?;
        notes.push(format!("{{{}}}", run.attained.iter().map(i64::to_string).collect::<Vec<_>>().join(",")));
    }
    let took = start.elapsed();
    check(took < Duration::from_secs(300), format!("took {took:?}"))?;
    Ok(format!("20 + 20 transforms on 2 links, values {} in {took:.2?}", notes.join(" ")))
}

fn double_point_count() -> Outcome {
    let mut notes = Vec::new();
    for (d, expected) in [(3usize, 1usize), (4, 3), (5, 6)] {
        for seed in 0..3u64 {
            let c = RationalSpaceCurve::sample_random(d, 300 + seed, 5).map_err(|e| e.to_string())?;
            let p = Projector::new(&Link::single(c))
                .map_err(|e| e.to_string())?
                .sample_generic_center(seed)
                .map_err(|e| e.to_string())?;
            let n = p.complex_double_points(0);
            check(n == expected, format!("degree {d}, seed {seed}: {n} double points"))?;
        }
        notes.push(format!("d={d}: {expected}"));
    }
    Ok(notes.join(", "))
}

fn parity_and_bound() -> Outcome {
    let quartic = verify_parity_bounds(4, 50, 4).map_err(|e| e.to_string())?;
    let cubic = verify_parity_bounds(3, 50, 3).map_err(|e| e.to_string())?;
    let inside = |v: &[i64], allowed: &[i64]| v.iter().all(|w| allowed.contains(w));
    check(quartic.verdict && inside(&quartic.attained, &[-3, -1, 1, 3]), format!("degree 4 attained {:?}", quartic.attained))?;
    check(cubic.verdict && inside(&cubic.attained, &[-1, 1]), format!("degree 3 attained {:?}", cubic.attained))?;
    Ok(format!("attained d=4 {:?}, d=3 {:?}", quartic.attained, cubic.attained))
}

fn two_component_links() -> Vec<Link> {
    let hopf = match parse_curve_file(&data("hopf.jsonl")).expect("hopf") {
        CurveInput::Link(l) => l,
        CurveInput::Family(_) => panic!("hopf.jsonl is a link"),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let t1 = ProjectiveTransform::random(&mut rng, 5, Sign::Positive);
    let t2 = ProjectiveTransform::random(&mut rng, 5, Sign::Negative);
    let circle = |cx: i64, cy: i64, cz: i64| {
        // unit circle in a horizontal plane centered at (cx, cy, cz)
        RationalSpaceCurve::from_ints(&[1 + cx, 0, cx - 1], &[cy, 2, cy], &[cz, 0, cz], &[1, 0, 1]).unwrap()
    };
    // coplanar circles would share the circular points at infinity, so the
    // second component is an ellipse
    let ellipse = RationalSpaceCurve::from_ints(&[7, 0, 3], &[0, 2], &[3, 0, 3], &[1, 0, 1]).unwrap();
    let apart = Link::new(vec![circle(0, 0, 0), ellipse], Some(vec![1, 1])).unwrap();
    let cubic_and_conic =
        Link::new(vec![RationalSpaceCurve::model(&rat(-1)), circle(10, 10, 10)], Some(vec![1, -1])).unwrap();
    vec![
        hopf.clone(),
        hopf.flip(1).transformed(&t1),
        hopf.transformed(&t2),
        apart,
        cubic_and_conic,
    ]
}

fn oriented_relation() -> Outcome {
    let mut notes = Vec::new();
    for (k, link) in two_component_links().iter().enumerate() {
        let p = Projector::new(link).map_err(|e| format!("link {k}: {e}"))?;
        let d = diagram_from_projection(p.sample_generic_center(k as u64).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let lk = linking_matrix(&d).map_err(|e| e.to_string())?;
        let oriented = writhe_oriented(&d).map_err(|e| e.to_string())?;
        let unoriented = writhe_unoriented(&d);
        check(lk[0][1].is_integer(), format!("link {k}: lk = {}", lk[0][1]))?;
        check(
            rat(oriented - unoriented) == &lk[0][1] * rat(2),
            format!("link {k}: oriented {oriented}, unoriented {unoriented}, lk {}", lk[0][1]),
        )?;
        let flipped = build_diagram(&link.flip_all(), &d.center).map_err(|e| e.to_string())?;
        check(writhe_oriented(&flipped) == Ok(oriented), format!("link {k}: global flip changed the value"))?;
        notes.push(format!("lk={}", lk[0][1]));
    }
    Ok(format!("5 links: {}", notes.join(" ")))
}

fn corpus() -> Vec<Diagram> {
    let mut out = Vec::new();
    for tau in [rat(-2), rat(-1), ratio(-1, 2), ratio(1, 2), rat(1), rat(2)] {
        out.push(build_diagram(&model(tau), &ProjectionCenter::standard()).expect("standard diagram"));
    }
    let mut links: Vec<Link> = sample_curves().into_iter().map(Link::single).collect();
    links.extend(two_component_links());
    for (k, l) in links.iter().enumerate() {
        for seed in 0..3u64 {
            let p = Projector::new(l).unwrap().sample_generic_center(100 * k as u64 + seed).unwrap();
            out.push(diagram_from_projection(p).unwrap());
        }
    }
    out
}

fn choice_independence() -> Outcome {
    let (mut swaps, mut flips, mut toggles) = (0, 0, 0);
    for d in corpus() {
        let link = &d.projection.link;
        for l in &d.loci {
            let (i, j) = l.locus.components;
            match l.locus.kind {
                LocusKind::Solitary => {
                    let s = solitary_sign(link.component(i), &l.locus, true).map_err(|e| e.to_string())?;
                    check(s == l.sign, format!("conjugate toggle changed {} to {s}", l.sign))?;
                    toggles += 1;
                }
                _ => {
                    let s = crossing_sign(link, &l.locus, true).map_err(|e| e.to_string())?;
                    check(s == l.sign, format!("preimage swap changed {} to {s}", l.sign))?;
                    swaps += 1;
                    if i == j {
                        let s = crossing_sign(&link.flip(i), &l.locus, false).map_err(|e| e.to_string())?;
                        check(s == l.sign, format!("orientation flip changed {} to {s}", l.sign))?;
                        flips += 1;
                    }
                }
            }
        }
    }
    check(swaps > 0 && flips > 0 && toggles > 0, format!("{swaps} swaps, {flips} flips, {toggles} toggles"))?;
    Ok(format!("{swaps} swaps, {flips} flips, {toggles} toggles"))
}

fn wall_crossing() -> Outcome {
    let quartic = scan_family(&family("quartic_node_family.jsonl"), None, 0);
    let singular: Vec<usize> = quartic
        .members
        .iter()
        .enumerate()
        .filter(|(_, m)| matches!(m.outcome, MemberOutcome::Singular(_)))
        .map(|(k, _)| k)
        .collect();
    check(singular.len() == 1, format!("quartic family singular members {singular:?}"))?;
    let across: Vec<i64> = quartic.jumps().iter().filter(|j| j.across_singular).map(|j| j.delta).collect();
    check(across.len() == 1 && across[0].abs() == 2, format!("quartic jumps across the wall {across:?}"))?;
    check(quartic.consistent(), format!("quartic values {:?}", quartic.values()))?;

    let cubic = scan_family(&family("model_family.jsonl"), None, 0);
    let wall = cubic.members.iter().position(|m| m.value == rat(0)).ok_or("model grid lacks tau = 0")?;
    check(!cubic.members[wall].standard_projection_generic, "tau = 0 not flagged".into())?;
    let before = cubic.members[wall - 1].writhe();
    let after = cubic.members[wall + 1].writhe();
    check(before.is_some() && before == after, format!("model values {:?}", cubic.values()))?;
    check(cubic.consistent(), format!("model values {:?}", cubic.values()))?;
    Ok(format!("quartic jump {:+}, model jump 0", across[0]))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("golden signs", golden_signs),
        ("first-move invariance", first_move_invariance),
        ("projection independence", projection_independence),
        ("rigid isotopy and mirror", isotopy_and_mirror),
        ("double point count", double_point_count),
        ("parity and bound", parity_and_bound),
        ("oriented and unoriented writhe", oriented_relation),
        ("choice independence", choice_independence),
        ("wall crossing", wall_crossing),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match result {
            Ok(note) => println!("criterion {}: PASS  {name} ({note}) [{took:.2?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} [{took:.2?}]", k + 1);
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
