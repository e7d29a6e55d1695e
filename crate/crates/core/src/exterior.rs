//! Input model for a knot exterior whose skein module is finitely generated
//! over the skein algebra of its boundary torus.
//!
//! Each generator `f` carries one annihilator `z` with `z . f = 0`. The
//! convex hull of the (sign-symmetric) support of `z` is the polygon of `f`;
//! every lattice point on its boundary must carry a nonzero coefficient.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filling::{check_slope_admissible, Slope};
use crate::laurent::LaurentPoly;
use crate::torus::{det, PairClass, TorusElement};

/// One validator finding.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Diagnostic {
    pub generator: Option<String>,
    pub point: Option<(i64, i64)>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(g) = &self.generator {
            write!(f, "generator {g:?}: ")?;
        }
        if let Some((x, y)) = self.point {
            write!(f, "at ({x},{y}): ")?;
        }
        write!(f, "{}", self.message)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnihilatorRelation {
    pub generator: String,
    pub element: TorusElement,
    /// Classes listed in the input, including those given a zero coefficient.
    pub declared: BTreeSet<PairClass>,
}

impl AnnihilatorRelation {
    pub fn new(generator: impl Into<String>, element: TorusElement) -> Self {
        let declared = element.classes().collect();
        Self {
            generator: generator.into(),
            element,
            declared,
        }
    }
}

/// One row `sum_f z_f . f = 0`.
pub type ExtraRelation = Vec<(String, TorusElement)>;

#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorPresentation {
    pub generators: Vec<String>,
    pub annihilators: Vec<AnnihilatorRelation>,
    pub extra_relations: Vec<ExtraRelation>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    pair: [i64; 2],
    coeff: LaurentPoly,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawAnnihilator {
    generator: String,
    element: Vec<RawTerm>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    generators: Vec<String>,
    annihilators: Vec<RawAnnihilator>,
    #[serde(default)]
    extra_relations: Vec<Vec<RawAnnihilator>>,
}

fn element_from_raw(terms: Vec<RawTerm>) -> Result<(TorusElement, BTreeSet<PairClass>)> {
    let mut element = TorusElement::zero();
    let mut declared = BTreeSet::new();
    for t in terms {
        let class = PairClass::try_canonical(t.pair[0], t.pair[1])?;
        if !declared.insert(class) {
            return Err(Error::Parse(format!("duplicate pair {class}")));
        }
        element.add_term(class, &t.coeff);
    }
    Ok((element, declared))
}

fn element_to_raw(e: &TorusElement) -> Vec<RawTerm> {
    e.iter()
        .map(|(k, v)| RawTerm {
            pair: [k.x(), k.y()],
            coeff: v.clone(),
        })
        .collect()
}

impl ExteriorPresentation {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: RawPresentation =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut annihilators = Vec::new();
        for a in raw.annihilators {
            let (element, declared) = element_from_raw(a.element)?;
            annihilators.push(AnnihilatorRelation {
                generator: a.generator,
                element,
                declared,
            });
        }
        let mut extra_relations = Vec::new();
        for row in raw.extra_relations {
            let mut out = Vec::new();
            for entry in row {
                let (element, _) = element_from_raw(entry.element)?;
                out.push((entry.generator, element));
            }
            extra_relations.push(out);
        }
        Ok(Self {
            generators: raw.generators,
            annihilators,
            extra_relations,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> String {
        let raw = RawPresentation {
            generators: self.generators.clone(),
            annihilators: self
                .annihilators
                .iter()
                .map(|a| RawAnnihilator {
                    generator: a.generator.clone(),
                    element: element_to_raw(&a.element),
                })
                .collect(),
            extra_relations: self
                .extra_relations
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|(g, e)| RawAnnihilator {
                            generator: g.clone(),
                            element: element_to_raw(e),
                        })
                        .collect()
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("presentation serializes")
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// The annihilator attached to generator `idx`. Panics on an unvalidated presentation.
    pub fn annihilator(&self, idx: usize) -> &AnnihilatorRelation {
        let name = &self.generators[idx];
        self.annihilators
            .iter()
            .find(|a| &a.generator == name)
            .expect("every generator has an annihilator")
    }
}

/// The unknot exterior: one generator (the empty link) killed by
/// `(0,1)_T + (A^2 + A^-2)/2 (0,0)_T`.
pub fn unknot() -> ExteriorPresentation {
    ExteriorPresentation::from_json_str(UNKNOT_JSON).expect("bundled fixture parses")
}

pub const UNKNOT_JSON: &str = include_str!("../../../fixtures/unknot.json");

// ---------------------------------------------------------------------------
// Polygons.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    /// Extreme points in counter-clockwise order (two for a segment, one for a point).
    pub vertices: Vec<(i64, i64)>,
    /// Primitive edge directions, canonical up to sign.
    pub edge_slopes: BTreeSet<(i64, i64)>,
}

fn primitive_direction(dx: i64, dy: i64) -> (i64, i64) {
    let g = dx.gcd(&dy);
    PairClass::new(dx / g, dy / g).point()
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    det((a.0 - o.0, a.1 - o.1), (b.0 - o.0, b.1 - o.1))
}

fn convex_hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

impl Polygon {
    pub fn from_classes<I: IntoIterator<Item = PairClass>>(classes: I) -> Self {
        let mut pts = Vec::new();
        for c in classes {
            let (x, y) = c.point();
            pts.push((x, y));
            pts.push((-x, -y));
        }
        let vertices = convex_hull(pts);
        let mut edge_slopes = BTreeSet::new();
        match vertices.len() {
            0 | 1 => {}
            2 => {
                let (a, b) = (vertices[0], vertices[1]);
                edge_slopes.insert(primitive_direction(b.0 - a.0, b.1 - a.1));
            }
            n => {
                for i in 0..n {
                    let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                    edge_slopes.insert(primitive_direction(b.0 - a.0, b.1 - a.1));
                }
            }
        }
        Self {
            vertices,
            edge_slopes,
        }
    }

    /// Whether the hull has empty interior (a segment or a point).
    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() <= 2
    }

    /// Lattice points on the boundary; the whole hull when it is degenerate.
    pub fn boundary_points(&self) -> Vec<(i64, i64)> {
        let n = self.vertices.len();
        let mut out = BTreeSet::new();
        let mut walk = |a: (i64, i64), b: (i64, i64)| {
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            let g = dx.gcd(&dy).max(1);
            for k in 0..=g {
                out.insert((a.0 + k * dx / g, a.1 + k * dy / g));
            }
        };
        match n {
            0 => {}
            1 => {
                out.insert(self.vertices[0]);
            }
            2 => walk(self.vertices[0], self.vertices[1]),
            _ => {
                for i in 0..n {
                    walk(self.vertices[i], self.vertices[(i + 1) % n]);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Boundary lattice points, one per sign class.
    pub fn boundary_classes(&self) -> BTreeSet<PairClass> {
        self.boundary_points()
            .into_iter()
            .map(|(x, y)| PairClass::new(x, y))
            .collect()
    }
}

/// Convex hull of the full symmetric support of an annihilator.
pub fn polygon_of(rel: &AnnihilatorRelation) -> Result<Polygon> {
    if rel.element.is_zero() {
        return Err(Error::ZeroAnnihilator(rel.generator.clone()));
    }
    Ok(Polygon::from_classes(rel.declared.iter().copied()))
}

pub fn validate_presentation(p: &ExteriorPresentation) -> Vec<Diagnostic> {
    let mut out = BTreeSet::new();
    let diag = |g: Option<&str>, pt: Option<(i64, i64)>, msg: String| Diagnostic {
        generator: g.map(str::to_owned),
        point: pt,
        message: msg,
    };

    let mut names = BTreeSet::new();
    for g in &p.generators {
        if !names.insert(g.as_str()) {
            out.insert(diag(Some(g), None, "generator declared twice".into()));
        }
    }
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for a in &p.annihilators {
        *counts.entry(a.generator.as_str()).or_default() += 1;
        if !names.contains(a.generator.as_str()) {
            out.insert(diag(Some(&a.generator), None, "annihilator for an undeclared generator".into()));
        }
    }
    for g in &names {
        match counts.get(g).copied().unwrap_or(0) {
            1 => {}
            0 => {
                out.insert(diag(Some(g), None, "generator has no annihilator".into()));
            }
            n => {
                out.insert(diag(Some(g), None, format!("generator has {n} annihilators, expected one")));
            }
        }
    }

    for a in &p.annihilators {
        if a.element.is_zero() {
            out.insert(diag(Some(&a.generator), None, "annihilator is zero".into()));
            continue;
        }
        let poly = Polygon::from_classes(a.declared.iter().copied());
        for class in poly.boundary_classes() {
            if a.element.coeff(class).is_zero() {
                out.insert(diag(
                    Some(&a.generator),
                    Some(class.point()),
                    "boundary lattice point of the polygon has zero coefficient".into(),
                ));
            }
        }
    }

    for (i, row) in p.extra_relations.iter().enumerate() {
        if row.is_empty() {
            out.insert(diag(None, None, format!("extra relation {i} is empty")));
        }
        let mut seen = BTreeSet::new();
        for (g, _) in row {
            if !names.contains(g.as_str()) {
                out.insert(diag(Some(g), None, format!("extra relation {i} references an undeclared generator")));
            } else if !seen.insert(g.as_str()) {
                out.insert(diag(Some(g), None, format!("extra relation {i} lists the generator twice")));
            }
        }
    }
    out.into_iter().collect()
}

fn ensure_valid(p: &ExteriorPresentation) -> Result<()> {
    let d = validate_presentation(p);
    if d.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidPresentation(d))
    }
}

/// Product of all boundary coefficients of all polygons, as a canonical associate.
pub fn compute_u(p: &ExteriorPresentation) -> Result<LaurentPoly> {
    ensure_valid(p)?;
    let mut u = LaurentPoly::one();
    for a in &p.annihilators {
        let poly = polygon_of(a)?;
        for class in poly.boundary_classes() {
            u = &u * &a.element.coeff(class);
        }
    }
    Ok(u.canonical())
}

/// Product of the coefficients at the slope-extremal class of each polygon.
pub fn compute_u_refined(p: &ExteriorPresentation, s: Slope) -> Result<LaurentPoly> {
    ensure_valid(p)?;
    let spec = check_slope_admissible(p, s)?;
    let mut u = LaurentPoly::one();
    for (idx, band) in spec.bands.iter().enumerate() {
        let (a, b) = band.argmax;
        u = &u * &p.annihilator(idx).element.coeff(PairClass::new(a, b));
    }
    Ok(u.canonical())
}
