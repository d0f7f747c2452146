//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Scalar comparisons use `|got − want| / max(1, |want|)`; matrix comparisons
//! use the Frobenius analogue. Every sample comes from a fixed ChaCha8 seed.

use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tracegeo::curvature::{
    christoffel_closed, christoffel_fd, christoffel_fd_oracle, expected_scalar_curvature, ricci,
    ricci_trace_oracle, riemann_04, riemann_13, scalar_curvature, sl_einstein_check,
};
use tracegeo::geodesy::{
    broken_arc, classify_arc, geodesic_residual, nabla, unique_arc, ArcVerdict, Geodesic,
};
use tracegeo::matcore::{spectral_profile, DEFAULT_TOL};
use tracegeo::metricspace::{
    apply_isometry, product_forward, product_inverse, product_pushforward, pushforward,
    signature_at, sl_tangent_project, trace_metric, IsometryMap, MetricSignature, ProductPoint,
};
use tracegeo::sampling::{
    random_invertible, random_invertible_with_sign, random_matrix, random_spd, random_unimodular,
};
use tracegeo::SquareMatrix;

const SEED: u64 = 20_240_917;

fn rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

fn rel_m(got: &SquareMatrix, want: &SquareMatrix) -> f64 {
    got.distance(want) / want.frobenius_norm().max(1.0)
}

/// Uniform entries rescaled so that `‖C‖₂ ≤ 1`.
fn random_direction(rng: &mut ChaCha8Rng, n: usize) -> SquareMatrix {
    let c = random_matrix(rng, n);
    let norm = c.spectral_norm();
    if norm > 1.0 {
        c.scale(1.0 / norm)
    } else {
        c
    }
}

fn order(i: usize) -> usize {
    2 + i % 3
}

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn within(worst: f64, tol: f64, what: &str) -> Self {
        Outcome {
            pass: worst <= tol,
            detail: format!("{what}: worst {worst:.3e} (tol {tol:e})"),
        }
    }

    fn all(parts: Vec<Outcome>) -> Self {
        Outcome {
            pass: parts.iter().all(|p| p.pass),
            detail: parts
                .into_iter()
                .map(|p| p.detail)
                .collect::<Vec<_>>()
                .join("; "),
        }
    }
}

fn signature(rng: &mut ChaCha8Rng) -> Outcome {
    let mut bad = 0;
    for n in 2..=4 {
        for _ in 0..100 {
            let a = random_invertible(rng, n);
            if signature_at(&a).ok() != Some(MetricSignature::expected(n)) {
                bad += 1;
            }
        }
    }
    Outcome {
        pass: bad == 0,
        detail: format!("300 points, n = 2..4, {bad} with a different signature"),
    }
}

fn isometries(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for kind in 0..8 {
        for i in 0..50 {
            let n = order(i);
            let a = random_invertible(rng, n);
            let (v, w) = (random_matrix(rng, n), random_matrix(rng, n));
            let g = random_invertible(rng, n);
            let f = match kind {
                0 => IsometryMap::LeftTranslate(g),
                1 => IsometryMap::RightTranslate(g),
                2 => IsometryMap::Conjugate(g),
                3 => IsometryMap::Congruence(g),
                4 => IsometryMap::Inversion,
                5 => IsometryMap::Transposition,
                6 => IsometryMap::Negation,
                _ => IsometryMap::PointSymmetry(g),
            };
            let before = trace_metric(&a, &v, &w).unwrap();
            let fa = apply_isometry(&f, &a).unwrap();
            let after = trace_metric(
                &fa,
                &pushforward(&f, &a, &v).unwrap(),
                &pushforward(&f, &a, &w).unwrap(),
            )
            .unwrap();
            worst = worst.max(rel(after, before));
        }
    }
    Outcome::within(worst, 1e-9, "8 kinds x 50 triples")
}

fn geodesic_ode(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..50 {
        let n = order(i);
        let g = Geodesic::new(random_invertible(rng, n), random_direction(rng, n)).unwrap();
        for t in [-1.0, -0.5, 0.37, 1.0, 2.0] {
            worst = worst.max(geodesic_residual(&g, t, 1e-4).unwrap());
        }
    }
    Outcome::within(worst, 1e-5, "50 geodesics x 5 times, h = 1e-4")
}

fn arc_classification(rng: &mut ChaCha8Rng) -> Outcome {
    let m = |rows: &[[f64; 2]]| SquareMatrix::from_rows(rows).unwrap();
    let i2 = SquareMatrix::identity(2);
    let curated = [
        (SquareMatrix::diag(&[1.0, 2.0]).unwrap(), ArcVerdict::Unique),
        (m(&[[0.0, -1.0], [1.0, 0.0]]), ArcVerdict::CountablyInfinite),
        (-&i2, ArcVerdict::Continuum),
        (SquareMatrix::diag(&[-1.0, 2.0]).unwrap(), ArcVerdict::NoArc),
        (i2.clone(), ArcVerdict::Continuum),
        (m(&[[1.0, 1.0], [0.0, 1.0]]), ArcVerdict::Unique),
    ];
    let mut curated_bad = Vec::new();
    for (k1, want) in &curated {
        let got = classify_arc(&i2, k1, DEFAULT_TOL).map(|c| c.verdict);
        if got.as_ref().ok() != Some(want) {
            curated_bad.push(format!("{k1}: {got:?}"));
        }
    }
    let mut not_unique = 0;
    let mut worst = 0.0f64;
    for i in 0..200 {
        let n = order(i);
        let (k0, k1) = (random_spd(rng, n), random_spd(rng, n));
        match unique_arc(&k0, &k1, DEFAULT_TOL) {
            Ok(g) => worst = worst.max(rel_m(&g.eval(1.0), &k1)),
            Err(_) => not_unique += 1,
        }
    }
    Outcome::all(vec![
        Outcome {
            pass: curated_bad.is_empty(),
            detail: format!(
                "6 curated verdicts, {} wrong {:?}",
                curated_bad.len(),
                curated_bad
            ),
        },
        Outcome {
            pass: not_unique == 0,
            detail: format!("200 SPD pairs, {not_unique} not unique"),
        },
        Outcome::within(worst, 1e-8, "unique-arc endpoint"),
    ])
}

/// `K₁⁻¹K₂ = G S G⁻¹` with `S` carrying the requested spectrum type.
fn broken_pair(rng: &mut ChaCha8Rng, n: usize, kind: usize) -> (SquareMatrix, SquareMatrix) {
    let k1 = random_invertible(rng, n);
    if kind == 0 {
        let sign = k1.det() > 0.0;
        return (k1, random_invertible_with_sign(rng, n, sign));
    }
    let mut rows = vec![vec![0.0; n]; n];
    let (a, b) = (rng.random_range(0.3..3.0), rng.random_range(0.3..3.0));
    if kind == 1 {
        let theta: f64 = rng.random_range(0.3..2.8);
        rows[0][0] = a * theta.cos();
        rows[0][1] = -a * theta.sin();
        rows[1][0] = a * theta.sin();
        rows[1][1] = a * theta.cos();
    } else {
        rows[0][0] = -a;
        rows[1][1] = -b;
    }
    for (i, row) in rows.iter_mut().enumerate().skip(2) {
        row[i] = rng.random_range(0.3..3.0);
    }
    let s = SquareMatrix::from_rows(&rows).unwrap();
    let g = random_invertible(rng, n);
    let m = &(&g * &s) * &g.inverse().unwrap();
    let k2 = &k1 * &m;
    (k1, k2)
}

fn broken_arcs(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    let mut failures = 0;
    let mut mislabelled = 0;
    for i in 0..50 {
        let kind = match i {
            0..=9 => 1,
            10..=19 => 2,
            _ => 0,
        };
        let n = order(i);
        let (k1, k2) = broken_pair(rng, n, kind);
        let m = &k1.inverse().unwrap() * &k2;
        let profile = spectral_profile(&m, DEFAULT_TOL);
        let has_complex = profile.clusters.iter().any(|c| !c.is_real());
        let has_negative = profile
            .clusters
            .iter()
            .any(|c| c.is_real() && c.eigenvalue.re < 0.0);
        if (kind == 1 && !has_complex) || (kind == 2 && !has_negative) {
            mislabelled += 1;
        }
        match broken_arc(&k1, &k2, DEFAULT_TOL) {
            Ok(b) => {
                worst = worst
                    .max(rel_m(&b.first.eval(0.0), &k1))
                    .max(rel_m(&b.first.eval(1.0), &b.joint))
                    .max(rel_m(&b.second.eval(0.0), &b.joint))
                    .max(rel_m(&b.second.eval(1.0), &k2));
            }
            Err(_) => failures += 1,
        }
    }
    Outcome::all(vec![
        Outcome {
            pass: failures == 0 && mislabelled == 0,
            detail: format!(
                "50 pairs (10 non-real, 10 negative), {failures} errors, {mislabelled} off-type"
            ),
        },
        Outcome::within(worst, 1e-8, "endpoints K1, Z, K2"),
    ])
}

fn curvature_oracles(rng: &mut ChaCha8Rng) -> Outcome {
    let mut ricci_worst = 0.0f64;
    for i in 0..50 {
        let n = 2 + i % 2;
        let k = random_invertible(rng, n);
        let (x, y) = (random_matrix(rng, n), random_matrix(rng, n));
        let closed = ricci(&k, &x, &y).unwrap();
        ricci_worst = ricci_worst.max(rel(ricci_trace_oracle(&k, &x, &y).unwrap(), closed));
    }
    // Truncation error at the default step grows like σ_min(P)⁻⁴, so the
    // gate runs one decade finer; the default-step figure is reported alongside.
    let mut christoffel_worst = 0.0f64;
    let mut coarse_worst = 0.0f64;
    let mut order_min = f64::INFINITY;
    let mut christoffel_errors = 0;
    for i in 0..10 {
        let p = random_invertible(rng, 2 + i % 2);
        let closed = christoffel_closed(&p).unwrap();
        let scale = closed.max_abs().max(1.0);
        let coarse = closed.max_difference(&christoffel_fd(&p, 1e-4).unwrap());
        coarse_worst = coarse_worst.max(coarse / scale);
        match christoffel_fd_oracle(&p, 1e-5) {
            Ok(c) => {
                christoffel_worst = christoffel_worst.max(c.discrepancy / scale);
                order_min = order_min.min((coarse / c.discrepancy).log10());
            }
            Err(_) => christoffel_errors += 1,
        }
    }
    let mut symmetry_worst = 0.0f64;
    for i in 0..50 {
        let n = order(i);
        let k = random_invertible(rng, n);
        let [x, y, z, w] = [0; 4].map(|_| random_matrix(rng, n));
        let r = |a: &SquareMatrix, b: &SquareMatrix, c: &SquareMatrix, d: &SquareMatrix| {
            riemann_04(&k, a, b, c, d).unwrap()
        };
        let xyzw = r(&x, &y, &z, &w);
        for other in [
            -r(&y, &x, &z, &w),
            -r(&x, &y, &w, &z),
            r(&z, &w, &x, &y),
            -(r(&y, &z, &x, &w) + r(&z, &x, &y, &w)),
        ] {
            symmetry_worst = symmetry_worst.max(rel(other, xyzw));
        }
    }
    Outcome::all(vec![
        Outcome::within(ricci_worst, 1e-8, "Ricci vs trace oracle, 50 triples"),
        Outcome {
            pass: christoffel_errors == 0 && christoffel_worst <= 1e-5,
            detail: format!(
                "Christoffel closed vs finite differences, 10 points, h = 1e-5: worst {christoffel_worst:.3e} (tol 1e-5), \
                 {christoffel_errors} errors [h = 1e-4: worst {coarse_worst:.3e}, observed order >= {order_min:.2}]"
            ),
        },
        Outcome::within(symmetry_worst, 1e-9, "Riemann symmetries and first Bianchi, 50 samples"),
    ])
}

fn scalar(rng: &mut ChaCha8Rng) -> Outcome {
    let mut parts = Vec::new();
    for n in 2..=4 {
        let want = expected_scalar_curvature(n);
        let mut worst = 0.0f64;
        for _ in 0..50 {
            let k = random_invertible(rng, n);
            worst = worst.max((scalar_curvature(&k).unwrap() - want).abs());
        }
        parts.push(Outcome::within(
            worst,
            1e-8,
            &format!("n = {n}, S = {want}"),
        ));
    }
    Outcome::all(parts)
}

fn einstein_leaves(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..50 {
        let n = order(i);
        let k = random_invertible(rng, n);
        let x = sl_tangent_project(&k, &random_matrix(rng, n)).unwrap();
        let y = sl_tangent_project(&k, &random_matrix(rng, n)).unwrap();
        let (lhs, rhs) = sl_einstein_check(&k, &x, &y).unwrap();
        worst = worst.max(rel(lhs, rhs));
    }
    let mut det_worst = 0.0f64;
    for i in 0..50 {
        let n = order(i);
        let k = random_invertible(rng, n);
        let c = random_direction(rng, n);
        let c = &c - &SquareMatrix::identity(n).scale(c.trace() / n as f64);
        let g = Geodesic::new(k.clone(), c).unwrap();
        for step in 0..=8 {
            let t = -2.0 + 0.5 * step as f64;
            det_worst = det_worst.max(rel(g.eval(t).det(), k.det()));
        }
    }
    Outcome::all(vec![
        Outcome::within(worst, 1e-9, "Ric = -(n/2) g on 50 leaf-tangent pairs"),
        Outcome::within(
            det_worst,
            1e-8,
            "det along 50 traceless geodesics, t in [-2, 2]",
        ),
    ])
}

fn product(rng: &mut ChaCha8Rng) -> Outcome {
    let mut pull = 0.0f64;
    let mut trip = 0.0f64;
    for i in 0..50 {
        let n = order(i);
        let p = random_unimodular(rng, n);
        let x = rng.random_range(-2.0..2.0);
        let pt = ProductPoint::new(p.clone(), x).unwrap();
        let m = sl_tangent_project(&p, &random_matrix(rng, n)).unwrap();
        let m2 = sl_tangent_project(&p, &random_matrix(rng, n)).unwrap();
        let (a, a2) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let q = product_forward(&pt);
        let lhs = trace_metric(
            &q,
            &product_pushforward(&pt, &m, a).unwrap(),
            &product_pushforward(&pt, &m2, a2).unwrap(),
        )
        .unwrap();
        let rhs = trace_metric(&p, &m, &m2).unwrap() + a * a2;
        pull = pull.max(rel(lhs, rhs));

        let back = product_inverse(&q).unwrap();
        trip = trip
            .max(rel_m(back.sl_part(), &p))
            .max(rel(back.line_part(), x));
        let q2 = random_invertible_with_sign(rng, n, true);
        trip = trip.max(rel_m(&product_forward(&product_inverse(&q2).unwrap()), &q2));
    }
    Outcome::all(vec![
        Outcome::within(pull, 1e-9, "pullback of g equals g x h, 50 samples"),
        Outcome::within(trip, 1e-10, "F o F^-1 and F^-1 o F"),
    ])
}

fn cartan_schouten(rng: &mut ChaCha8Rng) -> Outcome {
    let mut conn = 0.0f64;
    let mut curv = 0.0f64;
    for i in 0..20 {
        let n = order(i);
        let k = random_invertible(rng, n);
        let [x, y, z] = [0; 3].map(|_| random_matrix(rng, n));
        let (kx, ky, kz) = (&k * &x, &k * &y, &k * &z);
        let got = nabla(&k, &kx, &ky, &(&kx * &y)).unwrap();
        conn = conn.max(rel_m(&got, &(&k * &x.commutator(&y)).scale(0.5)));
        let got = riemann_13(&k, &kx, &ky, &kz).unwrap();
        curv = curv.max(rel_m(
            &got,
            &(&k * &x.commutator(&y).commutator(&z)).scale(0.25),
        ));
    }
    Outcome::all(vec![
        Outcome::within(conn, 1e-10, "nabla_X Y = [X,Y]/2 at 20 points"),
        Outcome::within(curv, 1e-10, "R_XY Z = [[X,Y],Z]/4 at 20 points"),
    ])
}

fn main() -> ExitCode {
    let criteria: [(&str, fn(&mut ChaCha8Rng) -> Outcome); 10] = [
        ("signature", signature),
        ("isometries", isometries),
        ("geodesic ODE", geodesic_ode),
        ("arc classification", arc_classification),
        ("broken geodesics", broken_arcs),
        ("curvature oracles", curvature_oracles),
        ("scalar curvature", scalar),
        ("Einstein leaves", einstein_leaves),
        ("product isometry", product),
        ("Cartan-Schouten", cartan_schouten),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + i as u64);
        let outcome = run(&mut rng);
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {:>2} {name}: {}", i + 1, outcome.detail);
        if !outcome.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
