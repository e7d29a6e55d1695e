//! Exact computation of Kauffman bracket skein modules of Dehn fillings.
//!
//! The pipeline takes a peripheral presentation of a knot exterior (generators
//! over the boundary torus algebra, each with a polygon annihilator), reduces
//! the relations of a Dehn filling to a finite band of generators, and reads
//! off the module structure over `Q[A^{±1}][U^-1]` from a Smith normal form.

pub mod error;
pub mod exterior;
pub mod filling;
pub mod laurent;
pub mod oracle;
pub mod report;
pub mod selftest;
pub mod structure;
pub mod torus;

pub use error::{Error, Result};
pub use exterior::{
    compute_u, compute_u_refined, polygon_of, unknot, validate_presentation, AnnihilatorRelation, Diagnostic,
    ExteriorPresentation, Polygon,
};
pub use filling::{
    band_generators, check_slope_admissible, harvest_relations, reduce_to_band, slope_functionals, BandSpec,
    Filling, ModuleVector, RelationRow, Slope,
};
pub use laurent::{cyclotomic, cyclotomic_orders, exceptional_order_filter, lp_gcd, LaurentPoly, LocalizedRing, Rational};
pub use oracle::{calibrate, character_count_cyclic, qt_mult_pairs, QtSigns};
pub use report::{fill, scan, slopes_in_ranges, FillOptions, FillingReport, ScanRow};
pub use structure::{
    corank_at_order, generic_dimension, presentation_matrix, rank_over_fraction_field, smith_normal_form, specialization_profile,
    strip_units_u, InvariantFactors, Matrix, SnfResult, SpecializationProfile, TorsionOrder,
};
pub use torus::{chebyshev_t, fg_mult, multicurve_to_fg, ChebPoly, PairClass, TorusElement};
