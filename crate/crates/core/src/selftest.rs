//! Self-verification suites shared by the `selftest` command and the test targets.
//!
//! Every suite is deterministic (fixed seeds). The knobs that inject faults
//! exist so the suites can be shown to catch them.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exterior::{unknot, ExteriorPresentation};
use crate::filling::{Filling, ModuleVector, Slope};
use crate::laurent::{rat_int, LaurentPoly};
use crate::oracle::{qt_mult_with, QtSigns, SIGNS};
use crate::structure::{determinant, rank_over_fraction_field, smith_normal_form, Matrix, SnfResult};
use crate::torus::{chebyshev_t, fg_mult, fg_mult_pairs, PairClass, TorusElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
    pub millis: u128,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    failures: usize,
    first_failure: Option<String>,
    start: Instant,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            failures: 0,
            first_failure: None,
            start: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name.into(),
            cases: self.cases,
            failures: self.failures,
            first_failure: self.first_failure,
            millis: self.start.elapsed().as_millis(),
        }
    }
}

// ---------------------------------------------------------------------------
// Random inputs.

pub fn random_pair(rng: &mut impl Rng, bound: i64) -> PairClass {
    PairClass::new(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

/// Nonzero Laurent polynomial with span at most `span` and small integer coefficients.
pub fn random_laurent(rng: &mut impl Rng, span: i64) -> LaurentPoly {
    loop {
        let lo = rng.gen_range(-2..=2);
        let width = rng.gen_range(0..=span);
        let p = LaurentPoly::from_terms((lo..=lo + width).map(|e| (e, rat_int(rng.gen_range(-3..=3)))));
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_element(rng: &mut impl Rng, terms: usize, bound: i64) -> TorusElement {
    let mut e = TorusElement::zero();
    for _ in 0..terms {
        let c = random_laurent(rng, 2);
        e.add_term(random_pair(rng, bound), &c);
    }
    e
}

/// Square matrix with entries of span at most `span`; about a fifth of the entries are zero.
pub fn random_matrix(rng: &mut impl Rng, n: usize, span: i64) -> Matrix {
    let rows = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if rng.gen_bool(0.2) {
                        LaurentPoly::zero()
                    } else {
                        random_laurent(rng, span)
                    }
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(rows, n)
}

// ---------------------------------------------------------------------------
// Suites.

/// Quantum torus products against the product-to-sum formula on random pairs.
pub fn qt_equivalence_suite(signs: QtSigns, cases: usize, bound: i64, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::new("qt-equivalence");
    for _ in 0..cases {
        let (a, b) = (random_pair(&mut rng, bound), random_pair(&mut rng, bound));
        let want = fg_mult_pairs(a, b);
        let got = qt_mult_with(a, b, signs);
        let ok = got.as_ref().is_ok_and(|g| *g == want);
        t.check(ok, || format!("{a} * {b}: expected {want}, got {got:?}"));
    }
    t.finish()
}

pub fn associativity_suite(cases: usize, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::new("associativity");
    for _ in 0..cases {
        let a = random_element(&mut rng, 2, 6);
        let b = random_element(&mut rng, 2, 6);
        let c = random_element(&mut rng, 2, 6);
        let left = fg_mult(&fg_mult(&a, &b), &c);
        let right = fg_mult(&a, &fg_mult(&b, &c));
        t.check(left == right, || format!("({a})({b})({c}) is not associative"));
    }
    t.finish()
}

/// `T_n(t + t^-1) = t^n + t^-n` and `T_n(-X) = (-1)^n T_n(X)`, with `t = A`.
pub fn chebyshev_suite(max_n: usize) -> SuiteResult {
    let mut t = Tally::new("chebyshev");
    let x = LaurentPoly::from_ints(&[(1, 1), (-1, 1)]);
    for n in 0..=max_n {
        let tn = chebyshev_t(n);
        let k = n as i64;
        let want = &LaurentPoly::a_pow(k) + &LaurentPoly::a_pow(-k);
        t.check(tn.evaluate(&x) == want, || format!("T_{n}(A + A^-1) != A^{n} + A^-{n}"));
        let parity = if n % 2 == 0 { tn.clone() } else { tn.neg() };
        t.check(tn.negate_arg() == parity, || format!("T_{n}(-X) has the wrong parity"));
    }
    t.finish()
}

/// Structural checks on one SNF result.
pub fn check_snf(m: &Matrix, r: &SnfResult) -> Result<(), String> {
    let (Some(l), Some(rt)) = (&r.left, &r.right) else {
        return Err("missing transforms".into());
    };
    if l.mul(m).mul(rt) != r.diagonal {
        return Err("L M R != D".into());
    }
    if !r.diagonal.is_diagonal() {
        return Err("D is not diagonal".into());
    }
    if !determinant(l).is_unit() || !determinant(rt).is_unit() {
        return Err("transform determinant is not a unit".into());
    }
    if !r.factors.chain_holds() {
        return Err("divisibility chain broken".into());
    }
    if r.factors.factors.iter().any(|f| !f.is_canonical()) {
        return Err("factor not in canonical form".into());
    }
    let rank = rank_over_fraction_field(m);
    if r.factors.zero_count != m.cols() - rank {
        return Err(format!("zero count {} but fraction-field rank {rank}", r.factors.zero_count));
    }
    Ok(())
}

/// Multiplies the first invariant factor by `A + 2`, breaking both `L M R = D` and the chain.
pub fn corrupt_snf(r: &mut SnfResult) {
    if r.factors.factors.is_empty() {
        return;
    }
    let bump = LaurentPoly::from_ints(&[(1, 1), (0, 2)]);
    r.factors.factors[0] = &r.factors.factors[0] * &bump;
    r.diagonal[(0, 0)] = &r.diagonal[(0, 0)] * &bump;
}

pub fn snf_suite(cases: usize, n: usize, span: i64, seed: u64, corrupt: bool) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::new("snf");
    for i in 0..cases {
        let m = random_matrix(&mut rng, n, span);
        let mut r = smith_normal_form(&m, true);
        if corrupt {
            corrupt_snf(&mut r);
        }
        let res = check_snf(&m, &r);
        t.check(res.is_ok(), || format!("matrix {i}: {}", res.unwrap_err()));
    }
    t.finish()
}

/// Random vectors reduced to the band, every certificate re-expanded; plus every harvested row.
pub fn certificate_suite(pres: &ExteriorPresentation, slopes: &[Slope], vectors: usize, seed: u64) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Tally::new("certificates");
    for &s in slopes {
        let f = match Filling::new(pres, s) {
            Ok(f) => f,
            Err(e) => {
                t.check(false, || format!("slope {s}: {e}"));
                continue;
            }
        };
        for _ in 0..vectors {
            let mut v = ModuleVector::zero();
            for _ in 0..3 {
                let g = rng.gen_range(0..pres.generators.len());
                v.add_term(g, random_pair(&mut rng, 8), &random_laurent(&mut rng, 2));
            }
            let ok = f
                .reduce_to_band(&v)
                .and_then(|r| Ok(r.numerator.is_in_band(f.spec()) && f.verify_reduction(&v, &r)?));
            t.check(matches!(ok, Ok(true)), || format!("slope {s}: reduction of {v:?} failed: {ok:?}"));
        }
        match f.harvest_relations(1) {
            Ok(rows) => {
                for row in rows {
                    let ok = f.verify_row(&row);
                    t.check(matches!(ok, Ok(true)), || format!("slope {s}: harvested row certificate failed"));
                }
            }
            Err(e) => t.check(false, || format!("slope {s}: harvest failed: {e}")),
        }
    }
    t.finish()
}

/// Fault injection for the negative controls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Faults {
    /// Run the quantum torus comparison with these signs instead of the calibrated ones.
    pub signs: Option<QtSigns>,
    pub corrupt_snf: bool,
}

/// The full release gate.
pub fn run_all(faults: Faults) -> Vec<SuiteResult> {
    let slopes: Vec<Slope> = [(1, 0), (2, 1), (3, 2), (5, 3), (7, 2)]
        .into_iter()
        .map(|(p, q)| Slope::new(p, q).expect("coprime"))
        .collect();
    vec![
        qt_equivalence_suite(faults.signs.unwrap_or(SIGNS), 1000, 25, 1),
        associativity_suite(200, 2),
        chebyshev_suite(64),
        snf_suite(100, 5, 4, 3, faults.corrupt_snf),
        certificate_suite(&unknot(), &slopes, 20, 4),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        assert!(qt_equivalence_suite(SIGNS, 50, 10, 7).passed());
        assert!(associativity_suite(10, 7).passed());
        assert!(chebyshev_suite(16).passed());
        assert!(snf_suite(5, 3, 2, 7, false).passed());
        assert!(certificate_suite(&unknot(), &[Slope::new(2, 1).unwrap()], 5, 7).passed());
    }

    #[test]
    fn negative_controls_fail() {
        let bad = QtSigns {
            commutation: 1,
            embedding: 1,
        };
        assert!(!qt_equivalence_suite(bad, 50, 10, 7).passed());
        assert!(!snf_suite(5, 3, 2, 7, true).passed());
    }
}
