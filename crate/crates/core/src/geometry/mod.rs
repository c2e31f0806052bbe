//! Charts, fixed curves and their ideals on the threefold.

pub mod chart;

pub use chart::{
    chart_equations, chart_parameterize, chart_presentation, transition, transport_ideal, Chart,
    ChartLabel, ChartPresentation, Transition,
};

pub mod curves;

pub use curves::{cubic_at, universal_cubic, ParametricCurve, U_VARS};

pub mod catalog;

pub use catalog::{fixed_curve_catalog, Atlas, CurveRecord, HilbertScheme, LocalIdeal};
