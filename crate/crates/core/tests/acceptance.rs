//! Acceptance suite: one test per criterion, each printing a single
//! `criterion N: PASS|FAIL ...` line.

mod common;

use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::Rng;

use common::*;
use vgit_core::criterion::{
    stability_verdict, stabilizer_dimension, torus_verdict, Certificate, StabilityVerdict, Status,
};
use vgit_core::curve::{apply_frame, hyperflex_curve, make_witness, PointedCurve, Surface, WitnessKind};
use vgit_core::exact::{int, rat, Rational};
use vgit_core::hessian::{
    first_divisor_class, h2prime_class, relative_hessian_class, second_divisor_class, symmetrized_class_quadric,
    wall_slope,
};
use vgit_core::inflection::{hessian_determinant, inflection_report, vanishing_sequence};
use vgit_core::walls::{run_negative_control, verify_in, wall_slopes, Outcome, PropositionTable};

fn report(n: u32, failures: &[String], detail: String) {
    if failures.is_empty() {
        println!("criterion {n}: PASS ({detail})");
    } else {
        println!("criterion {n}: FAIL ({detail}); {} failure(s)", failures.len());
        for f in failures.iter().take(20) {
            println!("  - {f}");
        }
        panic!("criterion {n} failed: {}", failures[0]);
    }
}

fn within(n: u32, elapsed: Duration, limit: Duration, failures: &mut Vec<String>) {
    if elapsed > limit {
        failures.push(format!("criterion {n} took {elapsed:?}, limit {limit:?}"));
    }
}

#[test]
fn criterion_1_hessian_class_table() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut check = |what: String, got: Vec<i64>, want: Vec<i64>| {
        if got != want {
            failures.push(format!("{what}: got {got:?}, expected {want:?}"));
        }
    };
    for d in 3..=6i64 {
        let du = d as u32;
        check(
            format!("W1 d={d}"),
            relative_hessian_class(Surface::P2, du, &[1]).unwrap().components,
            vec![3 * (d - 2), 3],
        );
        check(
            format!("W2 d={d}"),
            relative_hessian_class(Surface::P2, du, &[2]).unwrap().components,
            vec![15 * d - 33, 15],
        );
        check(format!("W2' d={d}"), h2prime_class(du).unwrap().components, vec![12 * d - 27, 12]);
        check(
            format!("W01 d={d}"),
            symmetrized_class_quadric(du, 0, 1).unwrap().components,
            vec![2 * (d - 1), 2 * (d - 1), 2],
        );
        check(
            format!("W11 d={d}"),
            symmetrized_class_quadric(du, 1, 1).unwrap().components,
            vec![2 * (3 * d - 4), 2 * (3 * d - 4), 6],
        );
        // the symmetrization is the sum of the two unsymmetrized classes
        let a = relative_hessian_class(Surface::Quadric, du, &[0, 1]).unwrap().components;
        let b = relative_hessian_class(Surface::Quadric, du, &[1, 0]).unwrap().components;
        check(
            format!("W'01 + W'10 d={d}"),
            a.iter().zip(&b).map(|(x, y)| x + y).collect(),
            symmetrized_class_quadric(du, 0, 1).unwrap().components,
        );
    }
    within(1, start.elapsed(), Duration::from_secs(1), &mut failures);
    report(1, &failures, format!("5 classes x d=3..6 in {:?}", start.elapsed()));
}

#[test]
fn criterion_2_wall_slopes() {
    let mut failures = Vec::new();
    for d in 3..=6u32 {
        let di = int(d as i64);
        for (surface, edge, wall) in [
            (Surface::P2, &di - int(2), &di - rat(9, 4)),
            (Surface::Quadric, &di - int(1), &di - rat(4, 3)),
        ] {
            let s = wall_slopes(surface, d).unwrap();
            let from_classes = (
                wall_slope(&first_divisor_class(surface, d).unwrap()).unwrap(),
                wall_slope(&second_divisor_class(surface, d).unwrap()).unwrap(),
            );
            if s.edge != edge || s.wall != wall || from_classes != (edge.clone(), wall.clone()) {
                failures.push(format!("{surface} d={d}: got edge {} wall {}", s.edge, s.wall));
            }
        }
    }
    report(2, &failures, "P2 and quadric, d=3..6".into());
}

#[test]
fn criterion_3_proposition_suite() {
    let start = Instant::now();
    let table = PropositionTable::builtin();
    let mut failures = Vec::new();
    let mut runs = 0;
    for entry in &table.propositions {
        let expected: Vec<u32> = match entry.surface {
            Surface::P2 => vec![3, 4, 5, 6],
            Surface::Quadric => vec![3, 4, 5],
        };
        if entry.degrees != expected {
            failures.push(format!("{}: degrees {:?}", entry.id, entry.degrees));
        }
        for &d in &expected {
            runs += 1;
            let c = verify_in(&table, &entry.id, d).unwrap();
            if c.outcome != Outcome::Pass {
                failures.push(format!("{} d={d}: {:?}", entry.id, c.counterexamples));
            }
        }
    }
    if table.propositions.len() != 12 {
        failures.push(format!("{} ids", table.propositions.len()));
    }
    for control in &table.negative_controls {
        for d in &table.entry(&control.base).unwrap().degrees {
            let n = run_negative_control(&table, control, *d).unwrap();
            let want = vec![0, 1, d - 1];
            if !n.behaves || n.counterexamples.len() != 1 || n.counterexamples[0].monomial != want {
                failures.push(format!("{} d={d}: {:?}", control.id, n.counterexamples));
            }
        }
    }
    within(3, start.elapsed(), Duration::from_secs(5), &mut failures);
    report(3, &failures, format!("{runs} id/degree pairs and negative control in {:?}", start.elapsed()));
}

/// Recomputes a certificate with the independent μ.
fn certificate_mu(curve: &PointedCurve, cert: &Certificate, t: &Rational) -> Rational {
    let moved = apply_frame(curve, &cert.frame).unwrap();
    oracle_mu(&moved, &cert.lambda.weights, t)
}

fn expect_status(
    failures: &mut Vec<String>,
    label: &str,
    curve: &PointedCurve,
    t: Rational,
    want: Status,
) -> StabilityVerdict {
    let v = stability_verdict(curve, &t).unwrap();
    if v.status != want {
        failures.push(format!("{label} at {t}: {:?}, expected {want:?}", v.status));
    }
    if v.status == Status::Unstable {
        match &v.certificate {
            Some(c) if certificate_mu(curve, c, &t).is_positive() => {}
            other => failures.push(format!("{label} at {t}: certificate does not re-verify: {other:?}")),
        }
    }
    v
}

#[test]
fn criterion_4_witness_verdict_matrix() {
    let mut failures = Vec::new();
    let f = &mut failures;
    let w = |k, d| make_witness(k, d).unwrap();

    let s = w(WitnessKind::P2S, 4);
    for t in [rat(7, 4), rat(15, 8), int(2) - rat(1, 100)] {
        expect_status(f, "P2_S", &s, t, Status::Unstable);
    }

    let cusp = w(WitnessKind::P2CuspidalX0, 4);
    let below = expect_status(f, "P2_CuspidalX0", &cusp, rat(7, 4) - rat(1, 100), Status::Unstable);
    match below.certificate {
        Some(c) if c.lambda.weights == vec![5, -1, -4] => {}
        other => f.push(format!("P2_CuspidalX0 below the wall: certificate {other:?}, expected weights (5,-1,-4)")),
    }
    expect_status(f, "P2_CuspidalX0", &cusp, rat(7, 4), Status::StrictlySemistable);
    expect_status(f, "P2_CuspidalX0", &cusp, rat(7, 4) + rat(1, 100), Status::Unstable);

    // brute force in the given frame before trusting the search
    let hyper = w(WitnessKind::P2Hyperflex, 4);
    let t = rat(7, 4);
    let positive: Vec<Vec<i64>> =
        box_subgroups(Surface::P2, 12).into_iter().filter(|r| oracle_mu(&hyper, r, &t).is_positive()).collect();
    if !positive.contains(&vec![-11, 3, 8]) {
        f.push(format!("brute force: (-11,3,8) not destabilizing; found {} others", positive.len()));
    }
    let per_term: std::collections::BTreeSet<Rational> = hyper
        .equation
        .support()
        .map(|e| &t * int(8) - int(-11 * e[0] as i64 + 3 * e[1] as i64 + 8 * e[2] as i64))
        .collect();
    if per_term != [int(1), int(2)].into_iter().collect() {
        f.push(format!("per-term values of (-11,3,8): {per_term:?}"));
    }
    expect_status(f, "P2_Hyperflex", &hyper, t, Status::Unstable);

    let qs = w(WitnessKind::QuadricS, 3);
    for t in [rat(5, 3), rat(11, 6)] {
        expect_status(f, "Quadric_S", &qs, t, Status::Unstable);
    }
    let qx = w(WitnessKind::QuadricX0, 3);
    expect_status(f, "Quadric_X0", &qx, rat(5, 3), Status::StrictlySemistable);
    expect_status(f, "Quadric_X0", &qx, rat(5, 3) - rat(1, 100), Status::Unstable);
    expect_status(f, "Quadric_X0", &qx, rat(5, 3) + rat(1, 100), Status::Unstable);

    report(4, &failures, format!("14 verdicts; {} destabilizers in the |r|<=12 box for the hyperflex", positive.len()));
}

fn proportional(a: &[i64], b: &[i64]) -> bool {
    a.len() == b.len() && (0..a.len()).all(|i| (0..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
}

#[test]
fn criterion_5_stabilizers() {
    let mut failures = Vec::new();
    let s = stabilizer_dimension(&make_witness(WitnessKind::P2CuspidalX0, 4).unwrap()).unwrap();
    match (&s.dimension, &s.generator) {
        (1, Some(g)) if proportional(&g.weights, &[4, 1, -5]) => {}
        _ => failures.push(format!("P2_CuspidalX0: {s:?}")),
    }
    // the generator fixes the equation up to scale: all support monomials share a weight
    let cusp = make_witness(WitnessKind::P2CuspidalX0, 4).unwrap();
    let weights: std::collections::BTreeSet<i64> =
        cusp.equation.support().map(|e| 4 * e[0] as i64 + e[1] as i64 - 5 * e[2] as i64).collect();
    if weights.len() != 1 {
        failures.push(format!("(4,1,-5) weights on the cuspidal support: {weights:?}"));
    }
    let q = stabilizer_dimension(&make_witness(WitnessKind::QuadricX0, 3).unwrap()).unwrap();
    match (&q.dimension, &q.generator) {
        (1, Some(g)) if coordinate_weights(Surface::Quadric, &g.weights) == vec![-1, 1, -2, 2] => {}
        _ => failures.push(format!("Quadric_X0: {q:?}")),
    }
    let mut r = rng(5);
    let mut generic = 0;
    for _ in 0..10 {
        let c = dense_curve(&mut r, Surface::P2, 4, |_, _| None);
        if !is_smooth_at_point(&c) || c.equation.len() < 12 {
            continue;
        }
        generic += 1;
        let st = stabilizer_dimension(&c).unwrap();
        if st.dimension != 0 {
            failures.push(format!("random quartic has stabilizer {st:?}: {:?}", c.equation));
        }
    }
    if generic == 0 {
        failures.push("no generic quartic drawn".into());
    }
    report(5, &failures, format!("two X0 witnesses and {generic} random quartics"));
}

#[test]
fn criterion_6a_torus_verdict_matches_box() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut r = rng(61);
    let mut counts = [[0usize; 3]; 2];
    for (si, surface) in [Surface::P2, Surface::Quadric].into_iter().enumerate() {
        for i in 0..200 {
            let d = r.gen_range(3..=5);
            let terms = r.gen_range(1..=5);
            let curve = random_sparse_curve(&mut r, surface, d, terms);
            let s = wall_slopes(surface, d).unwrap();
            let t = match i % 4 {
                0 => s.wall.clone(),
                1 => s.edge.clone(),
                2 => random_between(&mut r, &s.wall, &s.edge),
                _ => random_between(&mut r, &Rational::zero(), &(&s.edge + int(1))),
            };
            let lp = torus_verdict(&curve, &t).unwrap();
            let brute = box_sign(&curve, &t, 5);
            counts[si][(lp.sign + 1) as usize] += 1;
            if lp.sign != brute {
                failures.push(format!("{surface} t={t} lp {} box {brute}: {:?} at {:?}", lp.sign, curve.equation, curve.point));
            }
            if let Some(w) = &lp.witness {
                let m = oracle_mu(&curve, &w.weights, &t);
                if sign(&m) != lp.sign {
                    failures.push(format!("{surface}: witness {:?} has μ {m}, sign {}", w.weights, lp.sign));
                }
            }
        }
    }
    within(6, start.elapsed(), Duration::from_secs(60), &mut failures);
    report(
        6,
        &failures,
        format!("(a) 400 curves, signs -/0/+ P2 {:?} quadric {:?}, {:?}", counts[0], counts[1], start.elapsed()),
    );
}

#[test]
fn criterion_6b_vanishing_sequences_match_filtration() {
    let mut failures = Vec::new();
    let mut r = rng(62);
    let mut instances = 0;
    while instances < 120 {
        let surface = if instances % 2 == 0 { Surface::P2 } else { Surface::Quadric };
        let d = r.gen_range(3..=5);
        let base = dense_curve(&mut r, surface, d, |a, b| {
            // keep the point smooth; sometimes make the tangent contact high
            match (a, b) {
                (0, 1) => Some(int(1)),
                (1, 0) | (2, 0) | (3, 0) if instances % 3 == 0 => Some(int(0)),
                _ => None,
            }
        });
        let moved = apply_frame(&base, &random_frame(&mut r, surface)).unwrap();
        let systems: Vec<Vec<u32>> = match surface {
            Surface::P2 => vec![vec![1], vec![2]],
            Surface::Quadric => vec![vec![0, 1], vec![1, 0], vec![1, 1]],
        };
        for m in systems {
            if m.iter().any(|&k| k >= d) {
                continue;
            }
            let n = (m.iter().sum::<u32>() * d + 1) as usize;
            let want = oracle_sequence(&base, &m, n);
            let got = vanishing_sequence(&moved, &m, Some(n)).unwrap();
            if got.orders != want {
                failures.push(format!("{surface} d={d} m={m:?}: {:?} vs oracle {want:?}", got.orders));
            }
        }
        instances += 1;
    }
    report(6, &failures, format!("(b) {instances} random curves in random frames"));
}

#[test]
fn criterion_6c_flex_matches_classical_hessian() {
    let mut failures = Vec::new();
    let mut r = rng(63);
    let (mut flexes, mut total) = (0, 0);
    while total < 120 {
        let kind = total % 4;
        let base = dense_curve(&mut r, Surface::P2, 4, |a, b| match (a, b) {
            (0, 1) => Some(int(1)),
            (1, 0) | (2, 0) if kind >= 2 => Some(int(0)),
            (3, 0) if kind == 3 => Some(int(0)),
            _ => None,
        });
        let curve = apply_frame(&base, &random_frame(&mut r, Surface::P2)).unwrap();
        if !is_smooth_at_point(&curve) {
            continue;
        }
        total += 1;
        let classical = classical_hessian_at(&curve).is_zero();
        let flex = inflection_report(&curve).unwrap().flex == Some(true);
        flexes += classical as usize;
        if classical != flex {
            failures.push(format!("flex {flex} vs Hessian {classical}: {:?} at {:?}", curve.equation, curve.point));
        }
    }
    if flexes == 0 || flexes == total {
        failures.push(format!("degenerate sample: {flexes} flexes of {total}"));
    }
    report(6, &failures, format!("(c) {total} smooth-at-p quartics, {flexes} flexes"));
}

#[test]
fn criterion_7_hessian_degree() {
    let mut failures = Vec::new();
    let mut r = rng(7);
    for d in 3..=6u32 {
        let c = dense_curve(&mut r, Surface::P2, d, |_, _| None);
        let h = hessian_determinant(&c.equation).unwrap();
        let deg = h.total_degree();
        let first = first_divisor_class(Surface::P2, d).unwrap().components[0];
        let want = 3 * (d as i64 - 2);
        if deg.map(i64::from) != Some(want) || first != want || !h.is_homogeneous_of(want as u32) {
            failures.push(format!("d={d}: Hessian degree {deg:?}, class {first}, expected {want}"));
        }
    }
    report(7, &failures, "d=3..6".into());
}

#[test]
fn criterion_8_s_containments() {
    let mut failures = Vec::new();
    for d in 3..=5 {
        let p = inflection_report(&make_witness(WitnessKind::P2S, d).unwrap()).unwrap();
        if !(p.in_S && p.in_H2prime == Some(true)) {
            failures.push(format!("P2_S d={d}: in_S {} in_H2prime {:?}", p.in_S, p.in_H2prime));
        }
        let q = inflection_report(&make_witness(WitnessKind::QuadricS, d).unwrap()).unwrap();
        if !(q.in_S && q.in_H11 == Some(true)) {
            failures.push(format!("Quadric_S d={d}: in_S {} in_H11 {:?}", q.in_S, q.in_H11));
        }
    }
    report(8, &failures, "S in H2' and S in H11, d=3..5".into());
}

#[test]
fn criterion_9_convexity_in_t() {
    let mut failures = Vec::new();
    let mut r = rng(9);
    let (mut accepted, mut drawn) = (0, 0);
    while accepted < 50 && drawn < 400 {
        drawn += 1;
        let surface = if drawn % 2 == 0 { Surface::P2 } else { Surface::Quadric };
        let d = r.gen_range(3..=5);
        let flexed = drawn % 3 == 0;
        let base = dense_curve(&mut r, surface, d, |a, b| match (a, b) {
            (0, 1) => Some(int(1)),
            (1, 0) | (2, 0) if flexed => Some(int(0)),
            _ => None,
        });
        let curve = apply_frame(&base, &random_frame(&mut r, surface)).unwrap();
        let s = wall_slopes(surface, d).unwrap();
        let at_wall = stability_verdict(&curve, &s.wall).unwrap();
        let at_edge = stability_verdict(&curve, &s.edge).unwrap();
        if !(at_wall.status.is_semistable() && at_edge.status.is_semistable()) {
            continue;
        }
        accepted += 1;
        for _ in 0..5 {
            let t = random_between(&mut r, &s.wall, &s.edge);
            let v = stability_verdict(&curve, &t).unwrap();
            if !v.status.is_semistable() {
                failures.push(format!("{surface} d={d} at {t}: {:?} ({:?})", v.status, curve.equation));
            }
        }
    }
    if accepted < 50 {
        failures.push(format!("only {accepted} of {drawn} curves semistable at wall and edge"));
    }
    report(9, &failures, format!("{accepted} curves, 5 interior slopes each ({drawn} drawn)"));
}

#[test]
fn hyperflex_family_destabilized_at_wall() {
    for d in 3..=6 {
        let c = hyperflex_curve(d).unwrap();
        let t = wall_slopes(Surface::P2, d).unwrap().wall;
        let v = stability_verdict(&c, &t).unwrap();
        assert_eq!(v.status, Status::Unstable, "d={d}");
        let cert = v.certificate.unwrap();
        assert!(certificate_mu(&c, &cert, &t).is_positive());
        assert!(!cert.mu.value.is_zero());
    }
}
