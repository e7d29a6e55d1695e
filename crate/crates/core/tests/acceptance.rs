//! Release acceptance: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use skeinfill::exterior::ExteriorPresentation;
use skeinfill::oracle::{character_count_cyclic, SIGNS};
use skeinfill::report::{compute_at_radius, fill_with_steps, FillOptions};
use skeinfill::selftest::{associativity_suite, chebyshev_suite, certificate_suite, qt_equivalence_suite, snf_suite};
use skeinfill::structure::corank_at_order;
use skeinfill::{compute_u, unknot, Error, Filling, LaurentPoly, PairClass, Slope, TorusElement};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if took > limit {
        o.ok = false;
    }
    o.detail = format!("{} in {:.1?} (limit {:?})", o.detail, took, limit);
    o
}

fn lens_slopes() -> Vec<Slope> {
    (2..=12i64)
        .flat_map(|p| (1..p).filter_map(move |q| Slope::new(p, q).ok()))
        .collect()
}

const GOOD_ORDERS: [u64; 8] = [2, 6, 10, 14, 18, 22, 26, 30];

fn criterion_4(u: &ExteriorPresentation) -> Outcome {
    let slopes = lens_slopes();
    let failures: Vec<String> = slopes
        .par_iter()
        .filter_map(|&s| {
            let start = Instant::now();
            let (r, steps) = match fill_with_steps(u, s, FillOptions::default()) {
                Ok(x) => x,
                Err(e) => return Some(format!("{s}: {e}")),
            };
            let want = character_count_cyclic(s.p() as u64).unwrap() as usize;
            if r.generic_dimension != want || !r.stabilized {
                return Some(format!("{s}: dim {} (want {want}), stabilized {}", r.generic_dimension, r.stabilized));
            }
            let m = &steps.last().unwrap().matrix;
            for order in GOOD_ORDERS {
                let bad = r.torsion_orders.iter().any(|t| t.order == order) || r.inconclusive_orders.contains(&order);
                if !bad && corank_at_order(m, order) != r.generic_dimension {
                    return Some(format!("{s}: corank at order {order} differs from {}", r.generic_dimension));
                }
            }
            if start.elapsed() > Duration::from_secs(300) {
                return Some(format!("{s}: took {:?}", start.elapsed()));
            }
            None
        })
        .collect();
    outcome(
        failures.is_empty(),
        format!("{} slopes, dimension = floor(p/2)+1 and coherent at orders {GOOD_ORDERS:?}; {failures:?}", slopes.len()),
    )
}

fn criterion_5(u: &ExteriorPresentation) -> Outcome {
    let failures: Vec<String> = lens_slopes()
        .par_iter()
        .flat_map_iter(|&s| [true, false].map(move |slides| (s, slides)))
        .filter_map(|(s, slides)| {
            let f = Filling::new(u, s).ok()?.with_slides(slides);
            let uu = compute_u(u).ok()?;
            let band = f.band_generators().len();
            let want = character_count_cyclic(s.p() as u64).unwrap() as usize;
            let dims: Vec<usize> = (0..=3)
                .map(|r| band - compute_at_radius(&f, &uu, r).unwrap().stripped.factors.len())
                .collect();
            let ok = dims.windows(2).all(|w| w[1] <= w[0]) && dims.iter().all(|&d| d >= want);
            (!ok).then(|| format!("{s} slides={slides}: {dims:?}"))
        })
        .collect();
    outcome(
        failures.is_empty(),
        format!("radii 0..=3, with and without slide relations; {failures:?}"),
    )
}

fn criterion_6(u: &ExteriorPresentation) -> Outcome {
    match Filling::new(u, Slope::new(0, 1).unwrap()) {
        Err(e @ Error::InadmissibleSlope { .. }) => {
            let msg = e.to_string();
            outcome(msg.contains("is a slope of the polygon"), format!("rejected: {msg}"))
        }
        Err(e) => outcome(false, format!("wrong error: {e}")),
        Ok(_) => outcome(false, "accepted"),
    }
}

fn criterion_8(u: &ExteriorPresentation) -> Outcome {
    // re-run every reduction performed while harvesting in criteria 4 and 5
    let jobs: Vec<(Slope, bool, i64)> = lens_slopes()
        .into_iter()
        .flat_map(|s| [true, false].into_iter().flat_map(move |sl| (0..=3).map(move |r| (s, sl, r))))
        .collect();
    let (checked, failures) = jobs
        .par_iter()
        .map(|&(s, slides, radius)| {
            let f = Filling::new(u, s).unwrap().with_slides(slides);
            let mut checked = 0usize;
            let mut failures = Vec::new();
            for inst in f.window_instances(radius) {
                let v = f.expand(&inst);
                let ok = f.reduce_to_band(&v).and_then(|r| f.verify_reduction(&v, &r));
                checked += 1;
                if !matches!(ok, Ok(true)) {
                    failures.push(format!("{s} {inst:?}"));
                }
            }
            for row in f.harvest_relations(radius).unwrap() {
                checked += 1;
                if !matches!(f.verify_row(&row), Ok(true)) {
                    failures.push(format!("{s} harvested row"));
                }
            }
            (checked, failures)
        })
        .reduce(|| (0, Vec::new()), |a, b| (a.0 + b.0, [a.1, b.1].concat()));
    let random = certificate_suite(u, &lens_slopes(), 5, 11);
    outcome(
        failures.is_empty() && random.passed(),
        format!(
            "{checked} harvest reductions and rows, {} random reductions; {:?} {:?}",
            random.cases, failures, random.first_failure
        ),
    )
}

fn criterion_9(u: &ExteriorPresentation) -> Outcome {
    let lp = LaurentPoly::from_ints;
    let synthetic = ExteriorPresentation {
        generators: vec!["f".into()],
        annihilators: vec![skeinfill::AnnihilatorRelation::new(
            "f",
            TorusElement::basis(0, 1).add(&TorusElement::term(PairClass::ZERO, lp(&[(1, 1), (0, 1)]))),
        )],
        extra_relations: vec![],
    };
    let slope = Slope::new(1, 0).unwrap();
    let syn = fill_with_steps(&synthetic, slope, FillOptions::default()).map(|x| x.0);
    let unk = fill_with_steps(u, slope, FillOptions::default()).map(|x| x.0);
    match (syn, unk) {
        (Ok(s), Ok(k)) => {
            let ok = s.inconclusive_orders == vec![2]
                && s.u == lp(&[(1, 1), (0, 1)])
                && k.inconclusive_orders.is_empty()
                && k.u == lp(&[(4, 1), (0, 1)]);
            outcome(
                ok,
                format!(
                    "synthetic U = {} -> inconclusive {:?}; unknot U = {} -> inconclusive {:?}",
                    s.u, s.inconclusive_orders, k.u, k.inconclusive_orders
                ),
            )
        }
        (a, b) => outcome(false, format!("fill failed: {:?} {:?}", a.err(), b.err())),
    }
}

type Criterion<'a> = (u32, &'static str, Box<dyn Fn() -> Outcome + Sync + 'a>);

fn main() -> ExitCode {
    let u = unknot();
    let criteria: Vec<Criterion> = vec![
        (1, "product-to-sum vs quantum torus, 1000 pairs", Box::new(|| {
            timed(Duration::from_secs(10), || {
                let r = qt_equivalence_suite(SIGNS, 1000, 25, 1);
                outcome(r.passed(), format!("{} cases, {} failures", r.cases, r.failures))
            })
        })),
        (2, "associativity, 200 triples", Box::new(|| {
            timed(Duration::from_secs(30), || {
                let r = associativity_suite(200, 2);
                outcome(r.passed(), format!("{} cases, {} failures", r.cases, r.failures))
            })
        })),
        (3, "Chebyshev identities, n <= 64", Box::new(|| {
            timed(Duration::from_secs(5), || {
                let r = chebyshev_suite(64);
                outcome(r.passed(), format!("{} cases, {} failures", r.cases, r.failures))
            })
        })),
        (4, "lens-space dimensions on the unknot", Box::new(|| criterion_4(&u))),
        (5, "upper-bound monotonicity in radius", Box::new(|| criterion_5(&u))),
        (6, "slope 0/1 excluded", Box::new(|| criterion_6(&u))),
        (7, "Smith normal form, 100 random 5x5", Box::new(|| {
            timed(Duration::from_secs(60), || {
                let r = snf_suite(100, 5, 4, 3, false);
                outcome(r.passed(), format!("{} cases, {} failures {:?}", r.cases, r.failures, r.first_failure))
            })
        })),
        (8, "certificate soundness", Box::new(|| criterion_8(&u))),
        (9, "inconclusive orders", Box::new(|| criterion_9(&u))),
    ];
    let mut all = true;
    for (n, name, run) in &criteria {
        let o = run();
        all &= o.ok;
        println!("{} criterion {n}: {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
