//! Acceptance suite: prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{fixture, linspace, map, oracle_fixed_points, FIXTURE_MAPS};
use fixdisc::activations::FixedSet;
use fixdisc::fixed_circle::{check_c1_c2, circle_continuity, is_fixed_circle, Circle};
use fixdisc::format;
use fixdisc::metric::check_axioms;
use fixdisc::numerics::PieceKind;
use fixdisc::picard::Attractor;
use fixdisc::verifier::{check_condition1, check_condition2, Bound, Condition1Spec, Condition2Spec, Factor};
use fixdisc::{
    analytic_continuity, basin_sweep, classify_at, cli, compute, fixed_points, iterate, usual_metric, ContinuityStatus,
    ContinuityVerdict, ContractionKind, Interval, IterateOptions, Metric, Sampling, SelfMap,
};

const LIM_TOL: f64 = 1e-6;

type Criterion = (&'static str, fn(&mut Outcome));

#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

fn fixed_isolated(t: &SelfMap) -> Vec<f64> {
    fixed_points(t).iter().filter_map(FixedSet::as_point).collect()
}

fn verdict_summary(v: &ContinuityVerdict) -> String {
    format!(
        "{} left={:?} right={:?}",
        v.status.as_str(),
        v.left_estimate,
        v.right_estimate
    )
}

fn criterion_1(o: &mut Outcome) {
    let t = map("example1.map");
    let d = usual_metric();
    let fps = fixed_points(&t);
    o.check(fps == vec![FixedSet::Point { x: 2.0 }], format!("fixed points {fps:?}"));

    let psi = format::read_function(fixture("example1_psi.fn")).unwrap();
    let spec = Condition1Spec::new(ContractionKind::m1(), Bound::Psi(psi), Factor::One).unwrap();
    let c1 = check_condition1(&t, &d, &spec, &Sampling::default()).unwrap();
    o.check(c1.pass, format!("verify-c1: {} violations", c1.violations.len()));
    o.note(format!("c1 {} samples", c1.samples_checked));

    let delta = format::read_function(fixture("example1_delta.fn")).unwrap();
    let eps = vec![0.5, 1.0, 1.9, 2.0, 3.0];
    let spec = Condition2Spec::new(ContractionKind::m1(), delta, eps.clone()).unwrap();
    let c2 = check_condition2(&t, &d, &spec, &Sampling::default()).unwrap();
    if !c2.pass {
        let per_eps: Vec<String> = eps
            .iter()
            .map(|e| {
                format!(
                    "eps={e}: {}",
                    c2.violations.iter().filter(|v| v.epsilon == Some(*e)).count()
                )
            })
            .collect();
        o.check(
            false,
            format!("verify-c2 with example1_delta.fn: {}", per_eps.join(", ")),
        );
    }

    let v = classify_at(&t, &d, ContractionKind::m1(), 2.0).unwrap();
    o.check(!v.is_continuous(), format!("classify at 2: {}", verdict_summary(&v)));
    o.check(
        v.right_estimate.is_some_and(|r| (r - 2.0).abs() <= LIM_TOL),
        format!("right estimate {:?}", v.right_estimate),
    );
    o.check(
        v.left_estimate.is_some_and(|l| l <= LIM_TOL),
        format!("left estimate {:?}", v.left_estimate),
    );
    o.note(format!("classify: {}", v.status.as_str()));
}

fn criterion_2(o: &mut Outcome) {
    let t = map("example2.map");
    let d = usual_metric();
    o.check(fixed_points(&t) == vec![FixedSet::Point { x: 2.0 }], "fixed points");
    let psi = format::read_function(fixture("half.fn")).unwrap();
    let spec = Condition1Spec::new(ContractionKind::m2(), Bound::Psi(psi), Factor::Half).unwrap();
    let c1 = check_condition1(&t, &d, &spec, &Sampling::default()).unwrap();
    o.check(c1.pass, format!("verify-c1: {} violations", c1.violations.len()));
    let delta = format::read_function(fixture("example2_delta.fn")).unwrap();
    let spec = Condition2Spec::new(ContractionKind::m2(), delta, vec![0.5, 1.0, 1.9, 2.0, 3.0])
        .unwrap()
        .with_decile_epsilons();
    let c2 = check_condition2(&t, &d, &spec, &Sampling::default()).unwrap();
    o.check(c2.pass, format!("verify-c2: {} violations", c2.violations.len()));
    let v = classify_at(&t, &d, ContractionKind::m2(), 2.0).unwrap();
    o.check(
        v.status == ContinuityStatus::Continuous,
        format!("classify at 2: {}", verdict_summary(&v)),
    );
    let small = |e: Option<f64>| e.is_some_and(|x| x <= LIM_TOL);
    o.check(small(v.left_estimate) && small(v.right_estimate), verdict_summary(&v));
}

fn criterion_3(o: &mut Outcome) {
    let t = map("example1.map");
    let d = usual_metric();
    let axis = linspace(0.0, 4.0, 201);
    let (mut hi_max, mut hi_min) = (f64::NEG_INFINITY, f64::INFINITY);
    let mut lo_max = f64::NEG_INFINITY;
    let (mut mix_min, mut mix_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for &x in &axis {
        for &y in &axis {
            let m = compute(ContractionKind::m1(), &t, &d, x, y).unwrap();
            match (x > 2.0, y > 2.0) {
                (true, true) => {
                    hi_max = hi_max.max(m);
                    hi_min = hi_min.min(m);
                }
                (false, false) => lo_max = lo_max.max(m),
                _ => {
                    mix_min = mix_min.min(m);
                    mix_max = mix_max.max(m);
                }
            }
        }
    }
    o.check((hi_max - 16.0).abs() <= 1e-9, format!("max over x,y>2 = {hi_max}"));
    o.check(hi_min > 2.0, format!("min over x,y>2 = {hi_min}"));
    o.check(lo_max <= 4.0 + 1e-9, format!("max over x,y<=2 = {lo_max}"));
    o.check(
        mix_min > 2.0 && mix_max <= 4.0,
        format!("mixed range [{mix_min}, {mix_max}]"),
    );
    o.note(format!(
        "x,y>2: [{hi_min}, {hi_max}]; x,y<=2: max {lo_max}; mixed: [{mix_min}, {mix_max}]"
    ));
}

fn run_cli(args: &[&str]) -> (u8, String) {
    let mut out = Vec::new();
    let code = cli::run(std::iter::once("fixdisc").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn criterion_4(o: &mut Outcome) {
    let dir = tempfile::tempdir().unwrap();
    let built = dir.path().join("eq17.map");
    let params = fixture("eq17.params");
    let (code, _) = run_cli(&[
        "activation",
        "build",
        "--params",
        params.to_str().unwrap(),
        "--out",
        built.to_str().unwrap(),
    ]);
    o.check(code == 0, format!("activation build exit {code}"));
    let same = std::fs::read(&built).ok() == std::fs::read(fixture("eq17.map")).ok();
    o.check(same, "built map differs from fixtures/eq17.map");

    let shipped = fixture("eq17.map");
    let (code, stdout) = run_cli(&["fixed-points", "--map", shipped.to_str().unwrap()]);
    o.check(
        code == 0 && stdout == "3 6\n",
        format!("fixed-points printed {stdout:?}"),
    );

    let t = map("eq17.map");
    let d = usual_metric();
    let at6 = classify_at(&t, &d, ContractionKind::m1(), 6.0).unwrap();
    o.check(
        at6.status == ContinuityStatus::Continuous,
        format!("at 6: {}", verdict_summary(&at6)),
    );
    let at3 = classify_at(&t, &d, ContractionKind::m1(), 3.0).unwrap();
    o.check(
        at3.status == ContinuityStatus::DiscontinuousNoLimit,
        format!("at 3: {}", verdict_summary(&at3)),
    );
    o.check(
        at3.left_estimate.is_some_and(|l| l <= LIM_TOL),
        format!("at 3 left {:?}", at3.left_estimate),
    );
    o.check(
        at3.right_estimate.is_some_and(|r| (r - 3.0).abs() <= LIM_TOL),
        format!("at 3 right {:?}", at3.right_estimate),
    );

    let circle = Circle::on_real_line(4.5, 1.5).unwrap();
    o.check(is_fixed_circle(&t, &d, &circle).unwrap().fixed, "circle not fixed");
    let conds = check_c1_c2(&t, &d, &circle).unwrap();
    o.check(
        conds.len() == 2 && conds.iter().all(|c| c.c1 && c.c2),
        format!("C1/C2 {conds:?}"),
    );
    let per_point: Vec<(f64, ContinuityStatus)> = circle_continuity(&t, &d, &circle, ContractionKind::m1())
        .unwrap()
        .into_iter()
        .map(|(x, v)| (x, v.status))
        .collect();
    o.check(
        per_point
            == vec![
                (3.0, ContinuityStatus::DiscontinuousNoLimit),
                (6.0, ContinuityStatus::Continuous),
            ],
        format!("circle continuity {per_point:?}"),
    );
}

fn m1_by_hand(t: &SelfMap, x: f64, y: f64) -> f64 {
    let (tx, ty) = (t.apply(x).unwrap(), t.apply(y).unwrap());
    let dxy = (x - y).abs();
    let dx = (x - tx).abs();
    let dy = (y - ty).abs();
    let dt = (tx - ty).abs();
    [dxy, dx, dy, dx * dy / (1.0 + dxy), dx * dy / (1.0 + dt)]
        .into_iter()
        .fold(0.0, f64::max)
}

fn criterion_5(o: &mut Outcome) {
    let t = map("example1.map");
    let d = usual_metric();
    let sq = t.power(2).unwrap();
    let constant_two = sq.func().pieces().len() == 1
        && matches!(sq.func().pieces()[0].kind(), PieceKind::Constant { value } if *value == 2.0)
        && sq.func().domain() == t.domain();
    o.check(
        constant_two,
        format!("T^2 = {}", format::map_to_string(&sq).replace('\n', "")),
    );

    let kind = ContractionKind::m1().with_power(2).unwrap();
    let v = classify_at(&t, &d, kind, 2.0).unwrap();
    o.check(
        v.status == ContinuityStatus::Continuous,
        format!("classify m1^2 at 2: {}", verdict_summary(&v)),
    );

    let one = ContractionKind::m1().with_power(1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut mismatches = 0;
    for _ in 0..10_000 {
        let (x, y) = (rng.gen_range(0.0..=4.0), rng.gen_range(0.0..=4.0));
        let star = compute(one, &t, &d, x, y).unwrap();
        if star.to_bits() != m1_by_hand(&t, x, y).to_bits() {
            mismatches += 1;
        }
    }
    o.check(
        mismatches == 0,
        format!("M1*(m=1) differs from M1 on {mismatches} pairs"),
    );
}

fn random_pairs(t: &SelfMap, n: usize, seed: u64) -> Vec<(f64, f64)> {
    let (lo, hi) = Sampling::default().window(t);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| (rng.gen_range(lo..=hi), rng.gen_range(lo..=hi)))
        .filter(|(x, y)| t.domain().contains(*x) && t.domain().contains(*y))
        .collect()
}

fn criterion_6(o: &mut Outcome) {
    let d = usual_metric();

    for name in FIXTURE_MAPS {
        let t = map(name);
        let (lo, hi) = Sampling::default().window(&t);
        let report = check_axioms(&d, &Interval::closed(lo, hi).unwrap(), 10_000, 42);
        o.check(
            report.pass(),
            format!("{name}: {} metric axiom violations", report.violations.len()),
        );
    }

    let kinds = [
        ContractionKind::m1(),
        ContractionKind::m2(),
        ContractionKind::bp_m(),
        ContractionKind::bp_n(0.5).unwrap(),
        ContractionKind::rhoades(),
    ];
    for name in ["example1.map", "example2.map", "eq17.map"] {
        let t = map(name);
        let pairs = random_pairs(&t, 10_000, 42);
        for kind in kinds {
            let (mut asym, mut below) = (0, 0);
            for &(x, y) in &pairs {
                let mxy = compute(kind, &t, &d, x, y).unwrap();
                let myx = compute(kind, &t, &d, y, x).unwrap();
                asym += ((mxy - myx).abs() > 1e-12) as usize;
                below += (mxy < d.distance(x, y) - 1e-12) as usize;
            }
            o.check(
                asym == 0 && below == 0,
                format!("{name} {kind}: {asym} asymmetric, {below} below d(x,y)"),
            );
        }
    }

    for name in ["example1.map", "example2.map"] {
        let t = map(name);
        let opts = IterateOptions::default();
        for x0 in linspace(t.domain().lo(), t.domain().hi(), 41) {
            let r = iterate(&t, &d, x0, &opts).unwrap();
            o.check(
                r.converged && r.strictly_decreasing_until(opts.fix_tol),
                format!("{name} orbit from {x0}: u = {:?}", r.u_seq),
            );
        }
    }

    for name in FIXTURE_MAPS {
        let t = map(name);
        let oracle = oracle_fixed_points(&t, 100_001);
        let analytic = fixed_points(&t);
        let points: Vec<f64> = analytic.iter().filter_map(FixedSet::as_point).collect();
        let intervals: Vec<(f64, f64)> = analytic
            .iter()
            .filter_map(|s| match *s {
                FixedSet::Interval { lo, hi, .. } => Some((lo, hi)),
                FixedSet::Point { .. } => None,
            })
            .collect();
        let points_agree = points.len() == oracle.points.len()
            && points.iter().zip(&oracle.points).all(|(a, b)| (a - b).abs() <= 1e-9);
        let intervals_agree = intervals.len() == oracle.runs.len()
            && intervals
                .iter()
                .zip(&oracle.runs)
                .all(|(&(a, b), &(p, q))| (a - p).abs() <= oracle.step && (b - q).abs() <= oracle.step);
        o.check(
            points_agree && intervals_agree,
            format!(
                "{name}: analytic {analytic:?} vs oracle {:?} {:?}",
                oracle.points, oracle.runs
            ),
        );
    }

    for name in FIXTURE_MAPS {
        let t = map(name);
        let mut probes = Vec::new();
        for s in fixed_points(&t) {
            match s {
                FixedSet::Point { x } => probes.push(x),
                FixedSet::Interval { lo, hi, lo_inc, hi_inc } => {
                    probes.push(0.5 * (lo + hi));
                    if lo_inc {
                        probes.push(lo);
                    }
                    if hi_inc {
                        probes.push(hi);
                    }
                }
            }
        }
        for y0 in probes {
            let analytic = analytic_continuity(&t, y0).unwrap().is_continuous();
            for kind in [ContractionKind::m1(), ContractionKind::m2()] {
                let v = classify_at(&t, &d, kind, y0).unwrap();
                o.check(
                    v.is_continuous() == analytic,
                    format!(
                        "{name} at {y0} ({kind}): analytic continuous={analytic}, {}",
                        verdict_summary(&v)
                    ),
                );
            }
        }
    }
}

fn criterion_7(o: &mut Outcome) {
    let t = map("eq17.map");
    let xs = [-2.0, -1.0, 0.0, 2.0, 3.0, 5.0];
    let opts = IterateOptions {
        max_iters: 10_000,
        fix_tol: 1e-12,
    };
    let got: Vec<Attractor> = basin_sweep(&t, &usual_metric(), &xs, &opts)
        .unwrap()
        .into_iter()
        .map(|e| e.attractor)
        .collect();
    let want: Vec<Attractor> = [3.0, 3.0, 6.0, 6.0, 3.0, 6.0].map(|x| Attractor::Fixed { x }).to_vec();
    o.check(got == want, format!("attractors {got:?}"));
    o.check(fixed_isolated(&t) == vec![3.0, 6.0], "fixed points of eq17");
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("example1.map reproduction", criterion_1),
        ("example2.map reproduction", criterion_2),
        ("example1.map m1 ranges", criterion_3),
        ("mexican-hat activation", criterion_4),
        ("power contraction", criterion_5),
        ("property suites", criterion_6),
        ("basin sweep", criterion_7),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut o = Outcome::default();
        run(&mut o);
        let secs = start.elapsed().as_secs_f64();
        if o.failures.is_empty() {
            println!("PASS criterion {} ({title}) [{secs:.2}s] {}", i + 1, o.notes.join("; "));
        } else {
            failed += 1;
            println!(
                "FAIL criterion {} ({title}) [{secs:.2}s] {}",
                i + 1,
                o.failures.join("; ")
            );
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
