//! Seeded invariant suites behind `tracegeo verify`.
//!
//! Case `i` of suite `s` draws from a ChaCha8 stream keyed by `(seed, s, i)`,
//! so a report depends only on its arguments.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;
use tracegeo::curvature::{
    christoffel_fd_oracle, expected_scalar_curvature, ricci, ricci_trace_oracle, riemann_04,
    riemann_13, scalar_curvature, sectional, sl_einstein_check, ROUNDOFF_CONSTANT,
    TRUNCATION_CONSTANT,
};
use tracegeo::geodesy::{
    broken_arc, classify_arc, geodesic_residual, nabla, spd_geodesic, unique_arc, Geodesic,
};
use tracegeo::metricspace::{
    apply_isometry, leaf_isometry, leaf_of, product_forward, product_inverse, product_pushforward,
    pushforward, signature_at, sl_tangent_project, trace_metric, IsometryMap, MetricSignature,
    ProductPoint,
};
use tracegeo::sampling::{
    random_invertible, random_invertible_with_sign, random_matrix, random_spd, random_symmetric,
    random_unimodular,
};
use tracegeo::{GeoError, SquareMatrix};

use crate::doc::MatrixDocument;

pub const SUITES: [&str; 5] = ["metric", "geodesic", "curvature", "foliation", "product"];

const ISOMETRY_TOL: f64 = 1e-9;
const RESIDUAL_TOL: f64 = 1e-5;
const SYMMETRY_TOL: f64 = 1e-9;
const EINSTEIN_TOL: f64 = 1e-9;
const ROUND_TRIP_TOL: f64 = 1e-10;
const FD_MAX_ORDER: usize = 3;

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub n: usize,
    pub seed: u64,
    pub cases: usize,
    pub tol_assert: f64,
    pub tol_cluster: f64,
    pub fd_step: f64,
}

#[derive(Debug, Serialize)]
pub struct Failure {
    pub check: String,
    pub inputs: Vec<MatrixDocument>,
    pub expected: Value,
    pub got: Value,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub suites: Vec<String>,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
}

struct Case {
    rng: ChaCha8Rng,
    settings: Settings,
    failures: Vec<Failure>,
}

fn rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

fn rel_m(got: &SquareMatrix, want: &SquareMatrix) -> f64 {
    got.distance(want) / want.frobenius_norm().max(1.0)
}

fn docs(inputs: &[(&str, &SquareMatrix)]) -> Vec<MatrixDocument> {
    inputs
        .iter()
        .map(|(l, m)| MatrixDocument::labelled(m, l))
        .collect()
}

impl Case {
    fn n(&self) -> usize {
        self.settings.n
    }

    fn fail(&mut self, check: &str, inputs: &[(&str, &SquareMatrix)], expected: Value, got: Value) {
        self.failures.push(Failure {
            check: check.to_string(),
            inputs: docs(inputs),
            expected,
            got,
        });
    }

    fn error(&mut self, check: &str, inputs: &[(&str, &SquareMatrix)], e: GeoError) {
        self.fail(check, inputs, Value::from("ok"), Value::from(e.code()));
    }

    /// Records a failure unless `got` is within `tol` of `want`, relative with floor one.
    fn close(
        &mut self,
        check: &str,
        inputs: &[(&str, &SquareMatrix)],
        want: f64,
        got: f64,
        tol: f64,
    ) {
        if !(rel(got, want) <= tol) {
            self.fail(check, inputs, Value::from(want), Value::from(got));
        }
    }

    fn close_m(
        &mut self,
        check: &str,
        inputs: &[(&str, &SquareMatrix)],
        want: &SquareMatrix,
        got: &SquareMatrix,
        tol: f64,
    ) {
        let d = rel_m(got, want);
        if !(d <= tol) {
            self.fail(check, inputs, Value::from(0.0), Value::from(d));
        }
    }

    fn same(&mut self, check: &str, inputs: &[(&str, &SquareMatrix)], want: &str, got: &str) {
        if want != got {
            self.fail(check, inputs, Value::from(want), Value::from(got));
        }
    }

    /// Entries uniform in `[−1, 1]`, rescaled to spectral norm at most one.
    fn direction(&mut self) -> SquareMatrix {
        let n = self.n();
        let c = random_matrix(&mut self.rng, n);
        let norm = c.spectral_norm();
        if norm > 1.0 {
            c.scale(1.0 / norm)
        } else {
            c
        }
    }

    fn invertible(&mut self) -> SquareMatrix {
        let n = self.n();
        random_invertible(&mut self.rng, n)
    }

    fn matrix(&mut self) -> SquareMatrix {
        let n = self.n();
        random_matrix(&mut self.rng, n)
    }
}

macro_rules! attempt {
    ($case:expr, $check:expr, $inputs:expr, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => {
                $case.error($check, $inputs, err);
                return;
            }
        }
    };
}

fn metric_case(c: &mut Case) {
    let tol = c.settings.tol_assert;
    let n = c.n();
    let a = c.invertible();
    let [u, v, w] = [0; 3].map(|_| c.matrix());
    let inputs = [("A", &a), ("V", &v), ("W", &w)];
    let vw = attempt!(c, "metric-symmetry", &inputs, trace_metric(&a, &v, &w));
    let wv = attempt!(c, "metric-symmetry", &inputs, trace_metric(&a, &w, &v));
    c.close("metric-symmetry", &inputs, vw, wv, tol);

    let (s, t): (f64, f64) = (c.rng.random_range(-2.0..2.0), c.rng.random_range(-2.0..2.0));
    let combo = &v.scale(s) + &u.scale(t);
    let uw = attempt!(c, "metric-bilinearity", &inputs, trace_metric(&a, &u, &w));
    let got = attempt!(
        c,
        "metric-bilinearity",
        &inputs,
        trace_metric(&a, &combo, &w)
    );
    c.close(
        "metric-bilinearity",
        &[("A", &a), ("U", &u), ("V", &v), ("W", &w)],
        s * vw + t * uw,
        got,
        tol,
    );

    let sig = attempt!(c, "signature", &[("A", &a)], signature_at(&a));
    let want = MetricSignature::expected(n);
    c.same(
        "signature",
        &[("A", &a)],
        &format!("({}, {})", want.positive, want.negative),
        &format!("({}, {})", sig.positive, sig.negative),
    );

    let g = c.invertible();
    let maps = [
        IsometryMap::LeftTranslate(g.clone()),
        IsometryMap::RightTranslate(g.clone()),
        IsometryMap::Conjugate(g.clone()),
        IsometryMap::Congruence(g.clone()),
        IsometryMap::Inversion,
        IsometryMap::Transposition,
        IsometryMap::Negation,
        IsometryMap::PointSymmetry(g.clone()),
    ];
    for f in &maps {
        let check = format!("isometry-{}", f.kind());
        let inputs = [("A", &a), ("V", &v), ("W", &w), ("G", &g)];
        let fa = attempt!(c, &check, &inputs, apply_isometry(f, &a));
        let fv = attempt!(c, &check, &inputs, pushforward(f, &a, &v));
        let fw = attempt!(c, &check, &inputs, pushforward(f, &a, &w));
        let after = attempt!(c, &check, &inputs, trace_metric(&fa, &fv, &fw));
        c.close(&check, &inputs, vw, after, ISOMETRY_TOL);
    }

    let fixed = attempt!(
        c,
        "point-symmetry-fixes",
        &[("A", &a)],
        apply_isometry(&IsometryMap::PointSymmetry(a.clone()), &a)
    );
    c.close_m("point-symmetry-fixes", &[("A", &a)], &a, &fixed, tol);
}

fn geodesic_case(c: &mut Case) {
    let tol = c.settings.tol_assert;
    let h = c.settings.fd_step;
    let cluster = c.settings.tol_cluster;
    let n = c.n();
    let k = c.invertible();
    let dir = c.direction();
    let g = attempt!(
        c,
        "geodesic-ode",
        &[("K", &k), ("C", &dir)],
        Geodesic::new(k.clone(), dir.clone())
    );
    let inputs = [("K", &k), ("C", &dir)];
    for t in [-1.0, 0.37, 2.0] {
        let r = attempt!(c, "geodesic-ode", &inputs, geodesic_residual(&g, t, h));
        if !(r <= RESIDUAL_TOL) {
            c.fail("geodesic-ode", &inputs, Value::from(0.0), Value::from(r));
        }
    }

    let (s, t): (f64, f64) = (c.rng.random_range(-1.0..1.0), c.rng.random_range(-1.0..1.0));
    c.close_m(
        "parameter-shift",
        &inputs,
        &g.eval(s + t),
        &g.shifted(s).eval(t),
        tol,
    );
    c.close(
        "jacobi-det",
        &inputs,
        k.det() * (t * dir.trace()).exp(),
        g.eval(t).det(),
        tol,
    );

    let k1 = c.invertible();
    let lg = c.invertible();
    let pair = [("K0", &k), ("K1", &k1)];
    let class = attempt!(c, "witness-endpoint", &pair, classify_arc(&k, &k1, cluster));
    if let Some(w) = &class.witness {
        c.close_m("witness-endpoint", &pair, &k1, &w.eval(1.0), tol);
    }
    let moved = attempt!(
        c,
        "left-invariance",
        &[("K0", &k), ("K1", &k1), ("G", &lg)],
        classify_arc(&(&lg * &k), &(&lg * &k1), cluster)
    );
    c.same(
        "left-invariance",
        &[("K0", &k), ("K1", &k1), ("G", &lg)],
        class.verdict.as_str(),
        moved.verdict.as_str(),
    );

    let (p0, p1) = (random_spd(&mut c.rng, n), random_spd(&mut c.rng, n));
    let spd = [("K0", &p0), ("K1", &p1)];
    let arc = attempt!(c, "spd-unique", &spd, unique_arc(&p0, &p1, cluster));
    c.close_m("spd-unique", &spd, &p1, &arc.eval(1.0), tol);
    let sym = random_symmetric(&mut c.rng, n);
    let via_spd = attempt!(
        c,
        "spd-form",
        &[("K", &p0), ("S", &sym)],
        spd_geodesic(&p0, &sym, 1.0)
    );
    let via_c = attempt!(
        c,
        "spd-form",
        &[("K", &p0), ("S", &sym)],
        tracegeo::geodesy::geodesic_from_velocity(&p0, &sym)
    );
    c.close_m(
        "spd-form",
        &[("K", &p0), ("S", &sym)],
        &via_c.eval(1.0),
        &via_spd,
        tol,
    );

    let positive = c.rng.random_bool(0.5);
    let b1 = random_invertible_with_sign(&mut c.rng, n, positive);
    let b2 = random_invertible_with_sign(&mut c.rng, n, positive);
    let pair = [("K1", &b1), ("K2", &b2)];
    let broken = attempt!(c, "broken-arc", &pair, broken_arc(&b1, &b2, cluster));
    c.close_m(
        "broken-arc",
        &pair,
        &broken.joint,
        &broken.first.eval(1.0),
        tol,
    );
    c.close_m("broken-arc", &pair, &b2, &broken.second.eval(1.0), tol);
}

fn curvature_case(c: &mut Case) {
    let tol = c.settings.tol_assert;
    let n = c.n();
    let k = c.invertible();
    let [x, y, z, w] = [0; 4].map(|_| c.matrix());
    let inputs = [("K", &k), ("X", &x), ("Y", &y), ("Z", &z), ("W", &w)];
    let r = |a: &SquareMatrix, b: &SquareMatrix, cc: &SquareMatrix, d: &SquareMatrix| {
        riemann_04(&k, a, b, cc, d)
    };
    let xyzw = attempt!(c, "riemann-symmetries", &inputs, r(&x, &y, &z, &w));
    let others = [
        r(&y, &x, &z, &w).map(|v| -v),
        r(&x, &y, &w, &z).map(|v| -v),
        r(&z, &w, &x, &y),
        r(&y, &z, &x, &w).and_then(|a| r(&z, &x, &y, &w).map(|b| -(a + b))),
    ];
    for other in others {
        let other = attempt!(c, "riemann-symmetries", &inputs, other);
        c.close("riemann-symmetries", &inputs, xyzw, other, SYMMETRY_TOL);
    }

    let inputs = [("K", &k), ("X", &x), ("Y", &y)];
    let closed = attempt!(c, "ricci-oracle", &inputs, ricci(&k, &x, &y));
    let oracle = attempt!(c, "ricci-oracle", &inputs, ricci_trace_oracle(&k, &x, &y));
    c.close("ricci-oracle", &inputs, closed, oracle, tol);

    let s = attempt!(c, "scalar", &[("K", &k)], scalar_curvature(&k));
    c.close("scalar", &[("K", &k)], expected_scalar_curvature(n), s, tol);

    let mix: [f64; 4] = [0; 4].map(|_| c.rng.random_range(-1.0..1.0));
    if (mix[0] * mix[3] - mix[1] * mix[2]).abs() > 0.1 {
        let x2 = &x.scale(mix[0]) + &y.scale(mix[1]);
        let y2 = &x.scale(mix[2]) + &y.scale(mix[3]);
        match (sectional(&k, &x, &y), sectional(&k, &x2, &y2)) {
            (Ok(a), Ok(b)) => c.close("sectional-basis", &inputs, a, b, tol),
            (Err(GeoError::DegenerateSection { .. }), _)
            | (_, Err(GeoError::DegenerateSection { .. })) => {}
            (Err(e), _) | (_, Err(e)) => c.error("sectional-basis", &inputs, e),
        }
    }

    let (kx, ky, kz) = (&k * &x, &k * &y, &k * &z);
    let inputs = [("K", &k), ("X", &x), ("Y", &y), ("Z", &z)];
    let got = attempt!(
        c,
        "left-invariant-connection",
        &inputs,
        nabla(&k, &kx, &ky, &(&kx * &y))
    );
    c.close_m(
        "left-invariant-connection",
        &inputs,
        &(&k * &x.commutator(&y)).scale(0.5),
        &got,
        tol,
    );
    let got = attempt!(
        c,
        "left-invariant-curvature",
        &inputs,
        riemann_13(&k, &kx, &ky, &kz)
    );
    c.close_m(
        "left-invariant-curvature",
        &inputs,
        &(&k * &x.commutator(&y).commutator(&z)).scale(0.25),
        &got,
        tol,
    );

    if n <= FD_MAX_ORDER {
        if let Err(e) = christoffel_fd_oracle(&k, c.settings.fd_step) {
            match e {
                GeoError::OracleMismatch {
                    discrepancy,
                    tolerance,
                } => c.fail(
                    "christoffel-fd",
                    &[("P", &k)],
                    Value::from(tolerance),
                    Value::from(discrepancy),
                ),
                e => c.error("christoffel-fd", &[("P", &k)], e),
            }
        }
    }
}

fn foliation_case(c: &mut Case) {
    let tol = c.settings.tol_assert;
    let n = c.n();
    let k = c.invertible();
    let (a, b) = (c.matrix(), c.matrix());
    let inputs = [("K", &k), ("X", &a), ("Y", &b)];
    let x = attempt!(c, "projection", &inputs, sl_tangent_project(&k, &a));
    let y = attempt!(c, "projection", &inputs, sl_tangent_project(&k, &b));
    let k_inv = attempt!(c, "projection", &inputs, k.inverse());
    let tangent = &k_inv * &x;
    c.close(
        "projection",
        &inputs,
        0.0,
        tangent.trace() / tangent.frobenius_norm().max(1.0),
        tol,
    );
    let again = attempt!(c, "projection", &inputs, sl_tangent_project(&k, &x));
    c.close_m("projection", &inputs, &x, &again, tol);

    let (ric, want) = attempt!(c, "einstein", &inputs, sl_einstein_check(&k, &x, &y));
    c.close("einstein", &inputs, want, ric, EINSTEIN_TOL);

    let leaf = attempt!(c, "leaf-isometry", &[("K", &k)], leaf_of(&k));
    let f = attempt!(c, "leaf-isometry", &[("K", &k)], leaf_isometry(&k));
    let moved = attempt!(c, "leaf-isometry", &[("K", &k)], apply_isometry(&f, &k));
    c.close("leaf-isometry", &[("K", &k)], 1.0, moved.det(), tol);
    c.close("leaf-of", &[("K", &k)], k.det(), leaf, tol);

    let dir = c.direction();
    let traceless = &dir - &SquareMatrix::identity(n).scale(dir.trace() / n as f64);
    let inputs = [("K", &k), ("C", &traceless)];
    let g = attempt!(
        c,
        "leaf-geodesic-det",
        &inputs,
        Geodesic::new(k.clone(), traceless.clone())
    );
    for t in [-2.0, -0.5, 1.0, 2.0] {
        c.close("leaf-geodesic-det", &inputs, k.det(), g.eval(t).det(), tol);
    }
}

fn product_case(c: &mut Case) {
    let n = c.n();
    let p = random_unimodular(&mut c.rng, n);
    let x: f64 = c.rng.random_range(-2.0..2.0);
    let pt = attempt!(
        c,
        "product-pullback",
        &[("P", &p)],
        ProductPoint::new(p.clone(), x)
    );
    let (a1, a2) = (c.matrix(), c.matrix());
    let inputs = [("P", &p), ("M1", &a1), ("M2", &a2)];
    let m1 = attempt!(c, "product-pullback", &inputs, sl_tangent_project(&p, &a1));
    let m2 = attempt!(c, "product-pullback", &inputs, sl_tangent_project(&p, &a2));
    let (s1, s2): (f64, f64) = (c.rng.random_range(-2.0..2.0), c.rng.random_range(-2.0..2.0));
    let q = product_forward(&pt);
    let v1 = attempt!(
        c,
        "product-pullback",
        &inputs,
        product_pushforward(&pt, &m1, s1)
    );
    let v2 = attempt!(
        c,
        "product-pullback",
        &inputs,
        product_pushforward(&pt, &m2, s2)
    );
    let lhs = attempt!(c, "product-pullback", &inputs, trace_metric(&q, &v1, &v2));
    let rhs = attempt!(c, "product-pullback", &inputs, trace_metric(&p, &m1, &m2)) + s1 * s2;
    c.close("product-pullback", &inputs, rhs, lhs, ISOMETRY_TOL);

    let back = attempt!(c, "product-round-trip", &[("Q", &q)], product_inverse(&q));
    c.close_m(
        "product-round-trip",
        &[("P", &p)],
        &p,
        back.sl_part(),
        ROUND_TRIP_TOL,
    );
    c.close(
        "product-round-trip",
        &[("P", &p)],
        x,
        back.line_part(),
        ROUND_TRIP_TOL,
    );
    let q2 = random_invertible_with_sign(&mut c.rng, n, true);
    let there = attempt!(c, "product-round-trip", &[("Q", &q2)], product_inverse(&q2));
    c.close_m(
        "product-round-trip",
        &[("Q", &q2)],
        &q2,
        &product_forward(&there),
        ROUND_TRIP_TOL,
    );
}

fn runner(suite: &str) -> Option<(u64, fn(&mut Case))> {
    let run: fn(&mut Case) = match suite {
        "metric" => metric_case,
        "geodesic" => geodesic_case,
        "curvature" => curvature_case,
        "foliation" => foliation_case,
        "product" => product_case,
        _ => return None,
    };
    let index = SUITES.iter().position(|s| *s == suite)? as u64;
    Some((index, run))
}

fn run_suite(suite: &str, settings: Settings) -> Vec<Failure> {
    let (index, run) = runner(suite).expect("known suite");
    let mut failures = Vec::new();
    for i in 0..settings.cases {
        let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
        rng.set_stream((index << 32) | i as u64);
        let mut case = Case {
            rng,
            settings,
            failures: Vec::new(),
        };
        run(&mut case);
        failures.append(&mut case.failures);
    }
    failures
}

/// Runs one suite, or every suite for `"all"`.
pub fn verify(suite: &str, settings: Settings) -> Result<VerifyReport, GeoError> {
    if !(2..=6).contains(&settings.n) {
        return Err(GeoError::InvalidArgument(format!(
            "order {} outside 2..=6",
            settings.n
        )));
    }
    let names: Vec<&str> = match suite {
        "all" => SUITES.to_vec(),
        s if runner(s).is_some() => vec![s],
        s => return Err(GeoError::InvalidArgument(format!("unknown suite {s}"))),
    };
    let failures = names.iter().flat_map(|s| run_suite(s, settings)).collect();
    let tolerances = BTreeMap::from([
        ("assert".to_string(), settings.tol_assert),
        ("cluster".to_string(), settings.tol_cluster),
        ("fd_step".to_string(), settings.fd_step),
        ("isometry".to_string(), ISOMETRY_TOL),
        ("geodesic_residual".to_string(), RESIDUAL_TOL),
        ("riemann_symmetry".to_string(), SYMMETRY_TOL),
        ("einstein".to_string(), EINSTEIN_TOL),
        ("round_trip".to_string(), ROUND_TRIP_TOL),
        ("christoffel_truncation".to_string(), TRUNCATION_CONSTANT),
        ("christoffel_roundoff".to_string(), ROUNDOFF_CONSTANT),
    ]);
    Ok(VerifyReport {
        suite: suite.to_string(),
        suites: names.iter().map(|s| s.to_string()).collect(),
        cases: settings.cases,
        failures,
        seed: settings.seed,
        tolerances,
    })
}
