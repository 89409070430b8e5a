//! Metrics and the benchmark harness.

pub mod bench;
pub mod fixtures;
pub mod metrics;
pub mod ssim;

pub use bench::{
    random_grid, render_ssim, run_benchmark, run_benchmark_with_models, time_conversion,
    BenchConfig, BenchReport, BenchRow, RowConfig, SampleBudget,
};
pub use metrics::{classification_metrics, ClassificationMetrics};
pub use ssim::{ssim, SsimConfig};
