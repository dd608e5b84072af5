//! File formats, report emission, and the embedded reference example.

pub mod files;
pub mod fixture;
pub mod report;

pub use files::{
    parse_forms_file, parse_metric_spec, render_forms15, render_forms9, render_metric_spec,
    FileError, FormsAlphabet, ParsedForms,
};
pub use fixture::{
    compare_tables,
    fixture_forms, fixture_metric, run_paper_example, ExpectedComponent, PaperExampleReport,
    TableComparison, EXPECTED_TABLES, FIXTURE_FORMS, FIXTURE_METRIC,
};
pub use report::{component_key, Format, Report};
