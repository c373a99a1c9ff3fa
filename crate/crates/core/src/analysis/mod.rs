//! Error-order analysis: ladder-fitted infidelity series, toggling-frame
//! error sums, fidelity grids and certification.

pub mod bch;
pub mod certify;
pub mod family5;
pub mod grid;
pub mod series;

pub use bch::{bch_summary, BchSummary};
pub use certify::{certify, Certificate};
pub use family5::fourth_order_coefficients_family5;
pub use grid::{fidelity_grid, AxisRange, FidelityGrid};
pub use series::{
    infidelity_series, infidelity_series_with, sequence_infidelity, Axis, Ladder, SeriesReport,
};
