mod common;

use common::dense_space;
use pmi_subspace::geometry::dimension_histogram;
use proptest::prelude::*;

#[test]
fn tone_dimension_orders_the_analogy_words() {
    // one dimension, values read off the plotted "tone" curve, plus filler
    let values = [1.52854, 1.76019, 2.73423, 3.01951, 0.4, 5.0, 0.0];
    let rows: Vec<Vec<f64>> = values.iter().map(|v| vec![*v]).collect();
    let space = dense_space(&rows);
    let names = ["w0000", "w0001", "w0002", "w0003"]; // picture, story, paint, words
    let hist = dimension_histogram(&space, 0, &names).unwrap();
    assert_eq!(hist.ranked.len(), 6);
    let ranks: Vec<usize> = hist.highlights.iter().map(|h| h.rank.unwrap()).collect();
    assert!(ranks.windows(2).all(|w| w[0] < w[1]), "{ranks:?}");
    assert_eq!(hist.highlights[0].value, 1.52854);

    let missing = dimension_histogram(&space, 0, &["w0006"]).unwrap();
    assert_eq!(missing.highlights[0].rank, None);
    assert_eq!(missing.highlights[0].value, 0.0);
}

proptest! {
    #[test]
    fn ranked_is_complete_and_monotone(col in prop::collection::vec(prop_oneof![Just(0.0), Just(1.0), 0.1..9.0f64], 1..80)) {
        let rows: Vec<Vec<f64>> = col.iter().map(|v| vec![*v, 1.0]).collect();
        let space = dense_space(&rows);
        let hist = dimension_histogram(&space, 0, &[] as &[&str]).unwrap();
        prop_assert_eq!(hist.ranked.len(), col.iter().filter(|v| **v != 0.0).count());
        for (i, e) in hist.ranked.iter().enumerate() {
            prop_assert_eq!(e.rank, i);
        }
        for w in hist.ranked.windows(2) {
            prop_assert!(w[0].value < w[1].value || (w[0].value == w[1].value && w[0].word < w[1].word));
        }
    }
}
