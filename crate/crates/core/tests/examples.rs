//! Every example runs (at reduced size).

#[path = "../examples/singular_values.rs"]
mod singular_values;

#[test]
fn singular_values_runs() {
    singular_values::run().expect("example runs");
}

#[path = "../examples/affinity_bracket.rs"]
mod affinity_bracket;

#[test]
fn affinity_bracket_runs() {
    affinity_bracket::run().expect("example runs");
}

#[path = "../examples/separation_certificate.rs"]
mod separation_certificate;

#[test]
fn separation_certificate_runs() {
    separation_certificate::run().expect("example runs");
}

#[path = "../examples/box_counting.rs"]
mod box_counting;

#[test]
fn box_counting_runs() {
    box_counting::run().expect("example runs");
}

#[path = "../examples/exceptional_parameter.rs"]
mod exceptional_parameter;

#[test]
fn exceptional_parameter_runs() {
    exceptional_parameter::run().expect("example runs");
}

#[path = "../examples/render_cylinders.rs"]
mod render_cylinders;

#[test]
fn render_cylinders_runs() {
    render_cylinders::run().expect("example runs");
}

#[path = "../examples/line_ifs_delta.rs"]
mod line_ifs_delta;

#[test]
fn line_ifs_delta_runs() {
    line_ifs_delta::run().expect("example runs");
}

#[path = "../examples/run_config.rs"]
mod run_config;

#[test]
fn run_config_runs() {
    run_config::run().expect("example runs");
}
