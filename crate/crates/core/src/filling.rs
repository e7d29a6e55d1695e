//! Dehn filling: relations on `S(boundary) . F` and their reduction to a
//! finite band of generators.
//!
//! For a slope `(p, q)` we fix two functionals on `Z^2`: `lambda(x, y) = qx - py`,
//! which vanishes on the slope, and a Bézout dual `eps` with `eps(p, q) = 1`.
//! Translates of each annihilator kill classes with `|lambda| > M_f`, and
//! translates of the surgery relation `((p,q)_T + A^2 + A^-2) . g = 0` move
//! classes along the slope until `eps` lands in `{0, 1}`. What remains lives
//! in the band `|lambda| <= M_f`, `eps in {0, 1}`, which is finite.
//!
//! Those two families only span. Harvesting also uses the slide relation
//! `((e + (p,q))_T + A^3 e_T) . g = 0`, `e` the curve with `det(e, (p,q)) = 1`:
//! sliding `e` over the filling disk changes its framing by one. Without it
//! every harvested presentation is too large by a factor of two.
//!
//! Every reduction records a certificate: the list of relation instances
//! used and their multipliers, so `input - output` can be re-expanded and
//! checked exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{polygon_of, validate_presentation, ExteriorPresentation};
use crate::laurent::{LaurentPoly, Rational};
use crate::torus::{det, fg_mult, PairClass, TorusElement};

/// A surgery slope `(p, q)`: coprime, with `p > 0` or `p = 0, q > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    /// Canonicalizes the sign; rejects non-coprime pairs.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidSlope(p, q));
        }
        let (p, q) = if p < 0 || (p == 0 && q < 0) { (-p, -q) } else { (p, q) };
        Ok(Self { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn point(&self) -> (i64, i64) {
        (self.p, self.q)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = Error;

    /// Parses `p/q`.
    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("slope must look like p/q, got {s:?}")))?;
        let p: i64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad slope numerator in {s:?}")))?;
        let q: i64 = q.trim().parse().map_err(|_| Error::Parse(format!("bad slope denominator in {s:?}")))?;
        Slope::new(p, q)
    }
}

/// The pair of functionals attached to a slope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeFunctionals {
    pub slope: Slope,
    /// `lambda(x, y) = lambda.0 * x + lambda.1 * y`
    pub lambda: (i64, i64),
    /// `eps(x, y) = eps.0 * x + eps.1 * y`
    pub eps: (i64, i64),
}

impl SlopeFunctionals {
    pub fn lambda_at(&self, (x, y): (i64, i64)) -> i64 {
        self.lambda.0 * x + self.lambda.1 * y
    }

    pub fn eps_at(&self, (x, y): (i64, i64)) -> i64 {
        self.eps.0 * x + self.eps.1 * y
    }

    /// Determinant of the `(lambda, eps)` coefficient matrix.
    pub fn determinant(&self) -> i64 {
        det(self.lambda, self.eps)
    }

    /// The unique lattice point with the given `(lambda, eps)` values.
    pub fn point_at(&self, lambda: i64, eps: i64) -> (i64, i64) {
        // inverse of [[q, -p], [a, b]] is [[b, p], [-a, q]] since qb + pa = 1
        let (p, q) = self.slope.point();
        let (a, b) = self.eps;
        (b * lambda + p * eps, -a * lambda + q * eps)
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// `lambda = (q, -p)`; `eps = (a, b)` with `ap + bq = 1`, `|a|` minimal (ties: `a >= 0`),
/// then `|b|` minimal (ties: `b >= 0`).
pub fn slope_functionals(s: Slope) -> SlopeFunctionals {
    let (p, q) = s.point();
    let (g, mut a0, mut b0) = ext_gcd(p, q);
    if g < 0 {
        a0 = -a0;
        b0 = -b0;
    }
    debug_assert_eq!(a0 * p + b0 * q, 1);
    // solutions: (a0 + kq, b0 - kp)
    let center = if q != 0 { -a0 / q } else { b0 / p };
    let best = (center - 2..=center + 2)
        .map(|k| (a0 + k * q, b0 - k * p))
        .min_by_key(|&(a, b)| (a.abs(), a < 0, b.abs(), b < 0))
        .unwrap();
    let f = SlopeFunctionals {
        slope: s,
        lambda: (q, -p),
        eps: best,
    };
    debug_assert_eq!(f.determinant(), 1);
    f
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorBand {
    pub generator: String,
    /// `M_f`, the maximum of `lambda` over the polygon.
    pub bound: i64,
    /// The lattice point realising the maximum.
    pub argmax: (i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BandSpec {
    pub functionals: SlopeFunctionals,
    /// One entry per generator, in declaration order.
    pub bands: Vec<GeneratorBand>,
}

impl BandSpec {
    pub fn slope(&self) -> Slope {
        self.functionals.slope
    }

    pub fn max_bound(&self) -> i64 {
        self.bands.iter().map(|b| b.bound).max().unwrap_or(0)
    }

    /// Whether some representative of `class` lies in the band of generator `g`.
    pub fn in_band(&self, g: usize, class: PairClass) -> bool {
        let f = &self.functionals;
        let pt = class.point();
        let lam = f.lambda_at(pt);
        let e = f.eps_at(pt);
        lam.abs() <= self.bands[g].bound && (e == 0 || e == 1 || e == -1)
    }

    /// The representative used for ordering band classes: the one with
    /// `eps in {0, 1}`, and with `lambda >= 0` when both have `eps = 0`.
    pub fn band_rep(&self, class: PairClass) -> (i64, i64) {
        let f = &self.functionals;
        let (x, y) = class.point();
        let e = f.eps_at((x, y));
        if e == 0 {
            if f.lambda_at((x, y)) >= 0 {
                (x, y)
            } else {
                (-x, -y)
            }
        } else if e == 1 {
            (x, y)
        } else {
            (-x, -y)
        }
    }
}

/// Checks that the slope is not parallel to any polygon edge and computes the band.
pub fn check_slope_admissible(p: &ExteriorPresentation, s: Slope) -> Result<BandSpec> {
    let d = validate_presentation(p);
    if !d.is_empty() {
        return Err(Error::InvalidPresentation(d));
    }
    let functionals = slope_functionals(s);
    let mut bands = Vec::new();
    for (idx, name) in p.generators.iter().enumerate() {
        let poly = polygon_of(p.annihilator(idx))?;
        let inadmissible = |edge: (i64, i64)| Error::InadmissibleSlope {
            p: s.p(),
            q: s.q(),
            generator: name.clone(),
            edge,
        };
        for &e in &poly.edge_slopes {
            if det(e, s.point()) == 0 {
                return Err(inadmissible(e));
            }
        }
        let bound = poly.vertices.iter().map(|&v| functionals.lambda_at(v)).max().unwrap();
        let maxima: Vec<_> = poly
            .vertices
            .iter()
            .copied()
            .filter(|&v| functionals.lambda_at(v) == bound)
            .collect();
        if maxima.len() != 1 {
            return Err(inadmissible(s.point()));
        }
        bands.push(GeneratorBand {
            generator: name.clone(),
            bound,
            argmax: maxima[0],
        });
    }
    Ok(BandSpec { functionals, bands })
}

/// Band classes ordered by generator, then `lambda`, then `eps`, then `x`, then `y`.
pub fn band_generators(spec: &BandSpec) -> Vec<(usize, PairClass)> {
    let f = &spec.functionals;
    let mut out = Vec::new();
    for (g, band) in spec.bands.iter().enumerate() {
        let mut classes = BTreeSet::new();
        for lam in -band.bound..=band.bound {
            for e in 0..=1 {
                let (x, y) = f.point_at(lam, e);
                classes.insert(PairClass::new(x, y));
            }
        }
        let mut keyed: Vec<_> = classes
            .into_iter()
            .map(|c| {
                let rep = spec.band_rep(c);
                ((f.lambda_at(rep), f.eps_at(rep), rep.0, rep.1), c)
            })
            .collect();
        keyed.sort();
        out.extend(keyed.into_iter().map(|(_, c)| (g, c)));
    }
    out
}

// ---------------------------------------------------------------------------
// Module vectors and relation instances.

/// A finite combination of `(x, y)_T . f` over generators `f` (by index).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModuleVector {
    entries: BTreeMap<(usize, PairClass), LaurentPoly>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(g: usize, class: PairClass, coeff: LaurentPoly) -> Self {
        let mut v = Self::zero();
        v.add_term(g, class, &coeff);
        v
    }

    /// `element . f_g`
    pub fn from_element(g: usize, e: &TorusElement) -> Self {
        let mut v = Self::zero();
        for (c, p) in e.iter() {
            v.add_term(g, *c, p);
        }
        v
    }

    pub fn add_term(&mut self, g: usize, class: PairClass, coeff: &LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.entries.entry((g, class)).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.entries.remove(&(g, class));
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &ModuleVector, c: &LaurentPoly) {
        for (&(g, class), v) in &other.entries {
            let mut t = LaurentPoly::zero();
            t.add_mul(v, c);
            self.add_term(g, class, &t);
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &ModuleVector) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &LaurentPoly::from_int(-1));
        out
    }

    pub fn coeff(&self, g: usize, class: PairClass) -> LaurentPoly {
        self.entries.get(&(g, class)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, PairClass), &LaurentPoly)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = (usize, PairClass)> + '_ {
        self.entries.keys().copied()
    }

    /// Whether every class lies in the band of its generator.
    pub fn is_in_band(&self, spec: &BandSpec) -> bool {
        self.keys().all(|(g, c)| spec.in_band(g, c))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RelationSource {
    /// The annihilator of a generator.
    Annihilator { generator: usize },
    /// `((p,q)_T + A^2 + A^-2) . g = 0`, from the filling.
    Surgery { generator: usize },
    /// `((e + (p,q))_T + A^3 e_T) . g = 0`, the framing change of a slide over the filling disk.
    Slide { generator: usize },
    /// A user-supplied extra relation row.
    Extra { row: usize },
}

/// A relation translated by `(mu, nu)_T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RelationInstance {
    pub source: RelationSource,
    pub translation: (i64, i64),
}

/// One certificate step: `multiplier = numerator / denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateEntry {
    pub instance: RelationInstance,
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub entries: Vec<CertificateEntry>,
}

/// A relation that holds in the filled module, with the combination of
/// primitive instances that produces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationRow {
    pub row: ModuleVector,
    pub certificate: Certificate,
}

/// Per-step record of a band reduction, for descent checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    /// `|lambda|` of each killed head, in order.
    pub lambda_heads: Vec<i64>,
    /// Distance of `eps` to `{0, 1}` for each shifted head, in order.
    pub eps_heads: Vec<i64>,
}

/// Output of [`Filling::reduce_to_band`]: the band vector is `numerator / denominator`,
/// where the denominator is a product of polygon-extremal coefficients (a unit of `R_U`).
#[derive(Clone, Debug)]
pub struct Reduction {
    pub numerator: ModuleVector,
    pub denominator: LaurentPoly,
    pub certificate: Certificate,
    pub trace: ReductionTrace,
}

/// A validated presentation together with an admissible slope.
#[derive(Clone, Debug)]
pub struct Filling {
    pres: ExteriorPresentation,
    spec: BandSpec,
    slides: bool,
}

fn eps_distance(e: i64) -> i64 {
    // distance of the class {e, -e} to {0, 1}
    let d = |e: i64| if e >= 1 { e - 1 } else { -e };
    d(e).min(d(-e))
}

impl Filling {
    pub fn new(pres: &ExteriorPresentation, slope: Slope) -> Result<Self> {
        let spec = check_slope_admissible(pres, slope)?;
        Ok(Self {
            pres: pres.clone(),
            spec,
            slides: true,
        })
    }

    /// Whether harvesting includes slide relations (on by default).
    pub fn with_slides(mut self, on: bool) -> Self {
        self.slides = on;
        self
    }

    pub fn presentation(&self) -> &ExteriorPresentation {
        &self.pres
    }

    pub fn spec(&self) -> &BandSpec {
        &self.spec
    }

    pub fn slope(&self) -> Slope {
        self.spec.slope()
    }

    pub fn band_generators(&self) -> Vec<(usize, PairClass)> {
        band_generators(&self.spec)
    }

    /// Expands an instance into an explicit relation vector.
    pub fn expand(&self, inst: &RelationInstance) -> ModuleVector {
        let (mu, nu) = inst.translation;
        let shift = TorusElement::basis(mu, nu);
        match inst.source {
            RelationSource::Annihilator { generator } => {
                let z = &self.pres.annihilator(generator).element;
                ModuleVector::from_element(generator, &fg_mult(&shift, z))
            }
            RelationSource::Surgery { generator } => {
                ModuleVector::from_element(generator, &surgery_element(self.slope(), (mu, nu)))
            }
            RelationSource::Slide { generator } => {
                ModuleVector::from_element(generator, &slide_element(self.slope(), (mu, nu)))
            }
            RelationSource::Extra { row } => {
                let mut v = ModuleVector::zero();
                for (name, z) in &self.pres.extra_relations[row] {
                    let g = self.pres.generator_index(name).expect("validated");
                    v.add_scaled(&ModuleVector::from_element(g, &fg_mult(&shift, z)), &LaurentPoly::one());
                }
                v
            }
        }
    }

    fn unit_row(&self, inst: RelationInstance) -> RelationRow {
        RelationRow {
            row: self.expand(&inst),
            certificate: Certificate {
                entries: vec![CertificateEntry {
                    instance: inst,
                    numerator: LaurentPoly::one(),
                    denominator: LaurentPoly::one(),
                }],
            },
        }
    }

    /// `(mu, nu)_T * z_g`, the annihilator of generator `g` left-translated.
    pub fn translate_relation(&self, g: usize, mu_nu: (i64, i64)) -> RelationRow {
        self.unit_row(RelationInstance {
            source: RelationSource::Annihilator { generator: g },
            translation: mu_nu,
        })
    }

    pub fn surgery_relation_at(&self, mu_nu: (i64, i64), g: usize) -> RelationRow {
        self.unit_row(RelationInstance {
            source: RelationSource::Surgery { generator: g },
            translation: mu_nu,
        })
    }

    /// `sum_i multiplier_i * instance_i`, every multiplier rescaled by `scale`.
    pub fn expand_certificate(&self, cert: &Certificate, scale: &LaurentPoly) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for e in &cert.entries {
            let factor = scale.exact_div(&e.denominator).ok_or_else(|| {
                Error::Internal("certificate denominator does not divide the scale".into())
            })?;
            out.add_scaled(&self.expand(&e.instance), &(&e.numerator * &factor));
        }
        Ok(out)
    }

    /// Checks `denominator * input - numerator = sum multiplier * instance` exactly.
    pub fn verify_reduction(&self, input: &ModuleVector, r: &Reduction) -> Result<bool> {
        let lhs = input.scale(&r.denominator).sub(&r.numerator);
        Ok(lhs == self.expand_certificate(&r.certificate, &r.denominator)?)
    }

    pub fn verify_row(&self, row: &RelationRow) -> Result<bool> {
        Ok(row.row == self.expand_certificate(&row.certificate, &LaurentPoly::one())?)
    }

    /// Rewrites `v` into the band, `lambda` violations first, then `eps` violations.
    pub fn reduce_to_band(&self, v: &ModuleVector) -> Result<Reduction> {
        let f = self.spec.functionals;
        let mut num = v.clone();
        let mut den = LaurentPoly::one();
        let mut cert = Certificate::default();
        let mut trace = ReductionTrace::default();

        // lambda phase
        loop {
            let head = num
                .keys()
                .filter_map(|(g, c)| {
                    let l = f.lambda_at(c.point()).abs();
                    (l > self.spec.bands[g].bound).then_some((l, c, g))
                })
                .max();
            let Some((l, class, g)) = head else { break };
            let rep = if f.lambda_at(class.point()) > 0 {
                class.point()
            } else {
                (-class.x(), -class.y())
            };
            let (a, b) = self.spec.bands[g].argmax;
            let inst = RelationInstance {
                source: RelationSource::Annihilator { generator: g },
                translation: (rep.0 - a, rep.1 - b),
            };
            let rel = self.expand(&inst);
            for (&(gg, cc), _) in rel.iter() {
                if (gg, cc) != (g, class) && f.lambda_at(cc.point()).abs() >= l {
                    return Err(Error::Internal(format!(
                        "lambda descent violated at {cc} while killing {class}"
                    )));
                }
            }
            self.kill_head(&mut num, &mut den, &mut cert, g, class, inst, &rel)?;
            trace.lambda_heads.push(l);
        }

        // eps phase
        let (p, q) = self.slope().point();
        loop {
            let head = num
                .keys()
                .filter_map(|(g, c)| {
                    let d = eps_distance(f.eps_at(c.point()));
                    (d > 0).then_some((d, c, g))
                })
                .max();
            let Some((d, class, g)) = head else { break };
            let rep = if f.eps_at(class.point()) >= 2 {
                class.point()
            } else {
                (-class.x(), -class.y())
            };
            let inst = RelationInstance {
                source: RelationSource::Surgery { generator: g },
                translation: (rep.0 - p, rep.1 - q),
            };
            let rel = self.expand(&inst);
            let lam = f.lambda_at(rep).abs();
            for (&(gg, cc), _) in rel.iter() {
                if (gg, cc) == (g, class) {
                    continue;
                }
                if eps_distance(f.eps_at(cc.point())) >= d || f.lambda_at(cc.point()).abs() != lam {
                    return Err(Error::Internal(format!(
                        "eps descent violated at {cc} while shifting {class}"
                    )));
                }
            }
            self.kill_head(&mut num, &mut den, &mut cert, g, class, inst, &rel)?;
            trace.eps_heads.push(d);
        }

        Ok(Reduction {
            numerator: num,
            denominator: den,
            certificate: cert,
            trace,
        })
    }

    /// Subtracts the multiple of `rel` that cancels the `(g, class)` entry of `num / den`.
    #[allow(clippy::too_many_arguments)]
    fn kill_head(
        &self,
        num: &mut ModuleVector,
        den: &mut LaurentPoly,
        cert: &mut Certificate,
        g: usize,
        class: PairClass,
        inst: RelationInstance,
        rel: &ModuleVector,
    ) -> Result<()> {
        let h = rel.coeff(g, class);
        if h.is_zero() {
            return Err(Error::Internal(format!(
                "relation {inst:?} has zero head coefficient; the presentation is inconsistent"
            )));
        }
        let n_h = num.coeff(g, class);
        if let Some(m) = n_h.exact_div(&h) {
            num.add_scaled(rel, &-&m);
            cert.entries.push(CertificateEntry {
                instance: inst,
                numerator: m,
                denominator: den.clone(),
            });
        } else {
            // h = unit * hc with hc canonical; hc becomes part of the denominator
            let (hc, log, scalar) = h.normalize_unit()?;
            let m = n_h.shift(-log).scale(&scalar.recip());
            let mut next = num.scale(&hc);
            next.add_scaled(rel, &-&m);
            *num = next;
            *den = &*den * &hc;
            cert.entries.push(CertificateEntry {
                instance: inst,
                numerator: m,
                denominator: den.clone(),
            });
        }
        if !num.coeff(g, class).is_zero() {
            return Err(Error::Internal(format!("head {class} survived its reduction step")));
        }
        Ok(())
    }

    /// All relation instances in the harvesting window of the given radius, in a fixed order.
    pub fn window_instances(&self, radius: i64) -> Vec<RelationInstance> {
        let f = self.spec.functionals;
        let lam_max = self.spec.max_bound() + radius;
        let mut window = Vec::new();
        let mut seen = BTreeSet::new();
        for lam in -lam_max..=lam_max {
            for e in -radius..=1 + radius {
                let (x, y) = f.point_at(lam, e);
                let c = PairClass::new(x, y);
                if seen.insert(c) {
                    window.push(c.point());
                }
            }
        }
        let mut out = Vec::new();
        for g in 0..self.pres.generators.len() {
            for &t in &window {
                out.push(RelationInstance {
                    source: RelationSource::Annihilator { generator: g },
                    translation: t,
                });
                out.push(RelationInstance {
                    source: RelationSource::Surgery { generator: g },
                    translation: t,
                });
                if self.slides {
                    out.push(RelationInstance {
                        source: RelationSource::Slide { generator: g },
                        translation: t,
                    });
                }
            }
        }
        for row in 0..self.pres.extra_relations.len() {
            for &t in &window {
                out.push(RelationInstance {
                    source: RelationSource::Extra { row },
                    translation: t,
                });
            }
        }
        out
    }

    /// Reduces one instance to the band and clears it to a primitive integral row.
    pub fn harvest_instance(&self, inst: RelationInstance) -> Result<Option<RelationRow>> {
        let start = self.expand(&inst);
        let red = self.reduce_to_band(&start)?;
        if red.numerator.is_zero() {
            return Ok(None);
        }
        // row = D * start - sum (n_i D / d_i) inst_i
        let d = &red.denominator;
        let mut entries = vec![CertificateEntry {
            instance: inst,
            numerator: d.clone(),
            denominator: LaurentPoly::one(),
        }];
        for e in &red.certificate.entries {
            let factor = d
                .exact_div(&e.denominator)
                .ok_or_else(|| Error::Internal("certificate denominator does not divide".into()))?;
            entries.push(CertificateEntry {
                instance: e.instance,
                numerator: -(&e.numerator * &factor),
                denominator: LaurentPoly::one(),
            });
        }
        let unit = primitive_unit(&red.numerator);
        let row = red.numerator.scale(&unit);
        for e in &mut entries {
            e.numerator = &e.numerator * &unit;
        }
        Ok(Some(RelationRow {
            row,
            certificate: Certificate { entries },
        }))
    }

    /// Reduced relation rows from every instance in the window, deduplicated, in window order.
    pub fn harvest_relations(&self, radius: i64) -> Result<Vec<RelationRow>> {
        let instances = self.window_instances(radius);
        let reduced: Vec<Result<Option<RelationRow>>> = instances
            .par_iter()
            .map(|inst| self.harvest_instance(*inst))
            .collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for r in reduced {
            if let Some(row) = r? {
                if seen.insert(row.row.clone()) {
                    out.push(row);
                }
            }
        }
        Ok(out)
    }
}

/// The unit `c * A^k` that makes a row integral, primitive, sign-normalized and
/// with smallest exponent zero.
fn primitive_unit(v: &ModuleVector) -> LaurentPoly {
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    let mut min_exp = i64::MAX;
    for (_, p) in v.iter() {
        lcm = lcm.lcm(&p.denominator_lcm());
        min_exp = min_exp.min(p.min_exp().unwrap());
    }
    for (_, p) in v.iter() {
        for (_, c) in p.terms() {
            let scaled = c * Rational::from_integer(lcm.clone());
            gcd = gcd.gcd(scaled.numer());
        }
    }
    let lead = v.iter().next().map(|(_, p)| p.leading_coeff().unwrap().clone()).unwrap();
    let mut c = Rational::new(lcm, gcd);
    if lead.is_negative() {
        c = -c;
    }
    LaurentPoly::monomial(-min_exp, c)
}

/// `(p,q)_T * (mu,nu)_T + (A^2 + A^-2) (mu,nu)_T`.
pub fn surgery_element(s: Slope, mu_nu: (i64, i64)) -> TorusElement {
    let (p, q) = s.point();
    let shift = TorusElement::basis(mu_nu.0, mu_nu.1);
    let loop_value = LaurentPoly::from_ints(&[(2, 1), (-2, 1)]);
    fg_mult(&TorusElement::basis(p, q), &shift).add(&shift.scale(&loop_value))
}

/// The curve `e` with `det(e, (p,q)) = 1` paired with `eps`.
pub fn slide_dual(s: Slope) -> (i64, i64) {
    let (a, b) = slope_functionals(s).eps;
    (b, -a)
}

/// `((e + (p,q))_T + A^3 e_T) * (mu,nu)_T`.
pub fn slide_element(s: Slope, mu_nu: (i64, i64)) -> TorusElement {
    let (p, q) = s.point();
    let (a, b) = slide_dual(s);
    let w = TorusElement::basis(a + p, b + q).add(&TorusElement::basis(a, b).scale(&LaurentPoly::a_pow(3)));
    fg_mult(&w, &TorusElement::basis(mu_nu.0, mu_nu.1))
}

/// Free-function form of [`Filling::reduce_to_band`].
pub fn reduce_to_band(v: &ModuleVector, p: &ExteriorPresentation, s: Slope) -> Result<Reduction> {
    Filling::new(p, s)?.reduce_to_band(v)
}

/// Free-function form of [`Filling::harvest_relations`].
pub fn harvest_relations(p: &ExteriorPresentation, s: Slope, radius: i64) -> Result<Vec<RelationRow>> {
    Filling::new(p, s)?.harvest_relations(radius)
}
