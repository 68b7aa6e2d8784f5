//! Fans over `N` and the toric schemes they define.

mod chart;
mod fan;
mod report;

pub use chart::{
    chart_presentation, gluing_element, BinomialRelation, ChartPresentation, GluingElement,
    DEFAULT_DEGREE_BOUND,
};
pub use fan::{Fan, FanCone};
pub use report::{scheme_property_report, Dim, RingDescriptor, SchemeReport, Tri};
