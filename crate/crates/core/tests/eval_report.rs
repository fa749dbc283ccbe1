mod common;

use std::io::Cursor;

use common::dense_space;
use pmi_subspace::analogy::{evaluate_testset, parse_testset, EvalOptions, PipelineParams};
use pmi_subspace::projection::SelectionParams;
use proptest::prelude::*;

fn fixture() -> (pmi_subspace::space::BaseSpace, String) {
    let rows = vec![
        vec![1.0, 1.0, 1.0, 5.0],
        vec![2.0, 1.0, 3.0, 4.0],
        vec![1.0, 2.0, 1.0, 6.0],
        vec![2.0, 2.0, 3.0, 1.0],
        vec![2.0, 2.0, 2.9, 9.0],
        vec![4.0, 0.5, 0.5, 0.5],
    ];
    let text = "\
: planted
w0000 w0001 w0002 w0003
w0002 w0003 w0000 w0001
w0000 w0001 w0002 missing
: second
gone w0001 w0002 w0003

w0004 w0005 w0000 w0001
w0001 w0000 nope nada
w0005 w0004 w0003 w0002
";
    (dense_space(&rows), text.to_owned())
}

fn params() -> PipelineParams {
    PipelineParams {
        selection: SelectionParams {
            k1: 4,
            k2: 2,
            ..Default::default()
        },
        ..Default::default()
    }
}

#[test]
fn oov_lines_are_skipped_and_counted() {
    let (space, text) = fixture();
    let items = parse_testset(Cursor::new(text)).unwrap();
    assert_eq!(items.len(), 7);
    let report = evaluate_testset(&space, &items, &params(), &EvalOptions::default());
    assert_eq!(report.total, 7);
    assert_eq!(report.oov_skipped, 3);
    assert_eq!(report.attempted, 4);
    assert_eq!(
        report.total,
        report.oov_skipped + report.correct + report.failures.len()
    );
    assert!(report.is_consistent());
    let lines: Vec<usize> = report.oov.iter().map(|o| o.line).collect();
    assert_eq!(lines, [4, 6, 9]);
    assert_eq!(report.oov[2].missing, ["nope", "nada"]);
    assert_eq!(report.accuracy, Some(report.correct as f64 / 4.0));
}

#[test]
fn all_oov_leaves_accuracy_undefined() {
    let (space, _) = fixture();
    let items = parse_testset(Cursor::new("x y z w\n")).unwrap();
    let report = evaluate_testset(&space, &items, &params(), &EvalOptions::default());
    assert_eq!(report.oov_skipped, 1);
    assert_eq!(report.accuracy, None);
    assert!(!report.accuracy_defined);
    assert!(report.is_consistent());
}

proptest! {
    #[test]
    fn report_arithmetic_holds_for_any_sample(sample in prop::option::of(0usize..9), limit in prop::option::of(0usize..9), seed in any::<u64>()) {
        let (space, text) = fixture();
        let items = parse_testset(Cursor::new(text)).unwrap();
        let opts = EvalOptions { sample_size: sample, seed, limit };
        let report = evaluate_testset(&space, &items, &params(), &opts);
        prop_assert!(report.is_consistent());
        prop_assert_eq!(report.total, report.oov_skipped + report.correct + report.failures.len());
        prop_assert!(report.evaluated_lines.windows(2).all(|w| w[0] < w[1]));
        let again = evaluate_testset(&space, &items, &params(), &opts);
        prop_assert_eq!(again, report);
    }
}
