//! End-to-end fillings: harvest, Smith normal form, `U`-stripping and the
//! specialization profile, repeated over growing radii until the invariant
//! factors stop changing.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{compute_u, ExteriorPresentation};
use crate::filling::{Filling, Slope};
use crate::laurent::LaurentPoly;
use crate::structure::{
    presentation_matrix, smith_normal_form, specialization_profile, strip_units_u, InvariantFactors, Matrix,
    TorsionOrder,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FillOptions {
    pub initial_radius: i64,
    pub max_radius: i64,
    /// Harvest slide relations too. Without them the result is only an upper bound.
    pub slides: bool,
}

impl Default for FillOptions {
    fn default() -> Self {
        Self {
            initial_radius: 1,
            max_radius: 6,
            slides: true,
        }
    }
}

impl FillOptions {
    pub fn validate(&self) -> Result<()> {
        if self.initial_radius < 0 || self.max_radius < self.initial_radius {
            return Err(Error::Parse(format!(
                "need 0 <= radius <= max radius, got {} and {}",
                self.initial_radius, self.max_radius
            )));
        }
        Ok(())
    }
}

/// Summary of one harvesting radius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadiusStep {
    pub radius: i64,
    pub relations: usize,
    pub generic_dimension: usize,
    pub invariant_factors: Vec<LaurentPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FillingReport {
    pub slope: Slope,
    pub radius: i64,
    pub band_size: usize,
    /// Nonzero invariant factors after stripping `U`.
    pub invariant_factors: Vec<LaurentPoly>,
    pub zero_count: usize,
    pub generic_dimension: usize,
    pub torsion_orders: Vec<TorsionOrder>,
    pub inconclusive_orders: Vec<u64>,
    #[serde(rename = "U")]
    pub u: LaurentPoly,
    pub stabilized: bool,
    pub slides: bool,
    /// Always an upper bound: the harvested rows may not present the whole module.
    pub status: String,
    pub history: Vec<RadiusStep>,
}

/// Everything computed at one radius, kept for checks.
#[derive(Clone, Debug)]
pub struct RadiusComputation {
    pub radius: i64,
    pub matrix: Matrix,
    pub raw_factors: InvariantFactors,
    pub stripped: InvariantFactors,
}

/// Harvests at `radius` and computes the stripped invariant factors.
pub fn compute_at_radius(f: &Filling, u: &LaurentPoly, radius: i64) -> Result<RadiusComputation> {
    let columns = f.band_generators();
    let rows = f.harvest_relations(radius)?;
    let matrix = presentation_matrix(&rows, &columns)?;
    let raw_factors = smith_normal_form(&matrix, false).factors;
    let stripped = strip_units_u(&raw_factors, u)?;
    log::debug!(
        "slope {} radius {radius}: {} rows, {} columns, rank {}",
        f.slope(),
        matrix.rows(),
        matrix.cols(),
        raw_factors.factors.len()
    );
    Ok(RadiusComputation {
        radius,
        matrix,
        raw_factors,
        stripped,
    })
}

/// Runs the filling over radii `initial..=max`, stopping once two consecutive
/// radii give the same stripped invariant factors.
pub fn fill_with_steps(
    pres: &ExteriorPresentation,
    slope: Slope,
    opts: FillOptions,
) -> Result<(FillingReport, Vec<RadiusComputation>)> {
    opts.validate()?;
    let f = Filling::new(pres, slope)?.with_slides(opts.slides);
    let u = compute_u(pres)?;
    let band_size = f.band_generators().len();
    let mut steps: Vec<RadiusComputation> = Vec::new();
    let mut stabilized = false;
    for radius in opts.initial_radius..=opts.max_radius {
        let step = compute_at_radius(&f, &u, radius)?;
        let same = steps.last().is_some_and(|prev| prev.stripped == step.stripped);
        steps.push(step);
        if same {
            stabilized = true;
            break;
        }
    }
    let last = steps.last().expect("at least one radius");
    let profile = specialization_profile(&last.stripped, &u, band_size)?;
    let history = steps
        .iter()
        .map(|s| RadiusStep {
            radius: s.radius,
            relations: s.matrix.rows(),
            generic_dimension: band_size - s.stripped.factors.len(),
            invariant_factors: s.stripped.factors.clone(),
        })
        .collect();
    let report = FillingReport {
        slope,
        radius: last.radius,
        band_size,
        invariant_factors: last.stripped.factors.clone(),
        zero_count: last.stripped.zero_count,
        generic_dimension: profile.generic_dimension,
        torsion_orders: profile.torsion_orders,
        inconclusive_orders: profile.inconclusive_orders,
        u,
        stabilized,
        slides: opts.slides,
        status: format!("upper bound at radius {}", last.radius),
        history,
    };
    Ok((report, steps))
}

pub fn fill(pres: &ExteriorPresentation, slope: Slope, opts: FillOptions) -> Result<FillingReport> {
    fill_with_steps(pres, slope, opts).map(|(r, _)| r)
}

impl FillingReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

// ---------------------------------------------------------------------------
// Scans.

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub slope_p: i64,
    pub slope_q: i64,
    pub status: String,
    pub band: Option<usize>,
    pub generic_dim: Option<usize>,
    /// `order:jump` pairs separated by `;`.
    pub torsion_orders: String,
    /// Orders separated by `;`.
    pub inconclusive_orders: String,
    pub radius: Option<i64>,
    pub stabilized: Option<bool>,
}

impl ScanRow {
    fn from_report(r: &FillingReport) -> Self {
        Self {
            slope_p: r.slope.p(),
            slope_q: r.slope.q(),
            status: "ok".into(),
            band: Some(r.band_size),
            generic_dim: Some(r.generic_dimension),
            torsion_orders: r
                .torsion_orders
                .iter()
                .map(|t| format!("{}:{}", t.order, t.jump))
                .collect::<Vec<_>>()
                .join(";"),
            inconclusive_orders: r
                .inconclusive_orders
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(";"),
            radius: Some(r.radius),
            stabilized: Some(r.stabilized),
        }
    }

    fn excluded(s: Slope) -> Self {
        Self {
            slope_p: s.p(),
            slope_q: s.q(),
            status: "excluded".into(),
            band: None,
            generic_dim: None,
            torsion_orders: String::new(),
            inconclusive_orders: String::new(),
            radius: None,
            stabilized: None,
        }
    }
}

/// All canonical coprime slopes with `p` and `q` in the given inclusive ranges,
/// deduplicated and sorted.
pub fn slopes_in_ranges(p_range: (i64, i64), q_range: (i64, i64)) -> Vec<Slope> {
    let mut out: Vec<Slope> = (p_range.0..=p_range.1)
        .flat_map(|p| (q_range.0..=q_range.1).filter_map(move |q| Slope::new(p, q).ok()))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Fills every slope concurrently. Inadmissible slopes become `excluded` rows;
/// any other failure aborts the scan. Rows come back in input order.
pub fn scan(pres: &ExteriorPresentation, slopes: &[Slope], opts: FillOptions) -> Result<Vec<ScanRow>> {
    opts.validate()?;
    let rows: Vec<Result<ScanRow>> = slopes
        .par_iter()
        .map(|&s| match fill(pres, s, opts) {
            Ok(r) => Ok(ScanRow::from_report(&r)),
            Err(Error::InadmissibleSlope { .. }) => Ok(ScanRow::excluded(s)),
            Err(e) => Err(e),
        })
        .collect();
    rows.into_iter().collect()
}

pub const SCAN_HEADER: [&str; 9] = [
    "slope_p",
    "slope_q",
    "band",
    "generic_dim",
    "torsion_orders",
    "inconclusive_orders",
    "radius",
    "stabilized",
    "status",
];

pub fn write_scan_csv<W: Write>(rows: &[ScanRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SCAN_HEADER).map_err(csv_err)?;
    let opt = |x: Option<String>| x.unwrap_or_default();
    for r in rows {
        w.write_record([
            r.slope_p.to_string(),
            r.slope_q.to_string(),
            opt(r.band.map(|b| b.to_string())),
            opt(r.generic_dim.map(|b| b.to_string())),
            r.torsion_orders.clone(),
            r.inconclusive_orders.clone(),
            opt(r.radius.map(|b| b.to_string())),
            opt(r.stabilized.map(|b| b.to_string())),
            r.status.clone(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// A single report as a one-row scan table.
pub fn report_csv(r: &FillingReport) -> Result<String> {
    let mut buf = Vec::new();
    write_scan_csv(&[ScanRow::from_report(r)], &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv is utf-8"))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Internal(format!("csv: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::unknot;

    #[test]
    fn unknot_small_slopes() {
        let u = unknot();
        let r = fill(&u, Slope::new(2, 1).unwrap(), FillOptions::default()).unwrap();
        assert_eq!(r.band_size, 8);
        assert_eq!(r.generic_dimension, 2);
        assert!(r.stabilized);
        assert!(r.inconclusive_orders.is_empty());
        let r = fill(&u, Slope::new(1, 0).unwrap(), FillOptions::default()).unwrap();
        assert_eq!(r.generic_dimension, 1);
    }

    #[test]
    fn scan_marks_excluded() {
        let rows = scan(&unknot(), &slopes_in_ranges((0, 1), (0, 1)), FillOptions::default()).unwrap();
        let st: Vec<_> = rows.iter().map(|r| (r.slope_p, r.slope_q, r.status.as_str())).collect();
        assert_eq!(st, vec![(0, 1, "excluded"), (1, 0, "ok"), (1, 1, "ok")]);
    }

    #[test]
    fn empty_scan_is_header_only() {
        let mut buf = Vec::new();
        write_scan_csv(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "slope_p,slope_q,band,generic_dim,torsion_orders,inconclusive_orders,radius,stabilized,status\n"
        );
    }
}
