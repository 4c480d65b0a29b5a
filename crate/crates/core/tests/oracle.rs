use num_rational::Rational64;
use onebridge::oracle::{
    build_filling_map, build_filling_map_parallel, check_equivalence, check_equivalence_parallel,
    check_transits, measure_w_t, simulate_transits, tuples_by_k, tuples_by_w,
};

#[test]
fn equivalence_w25() {
    let report = check_equivalence(25).unwrap();
    assert!(report.passed(), "{:?}", report.mismatches);
}

#[test]
fn parallel_matches_sequential() {
    assert_eq!(
        build_filling_map(30).unwrap(),
        build_filling_map_parallel(30).unwrap()
    );
    assert_eq!(
        check_equivalence(20).unwrap(),
        check_equivalence_parallel(20).unwrap()
    );
}

#[test]
fn filling_map_slopes_respect_bound() {
    let map = build_filling_map(40).unwrap();
    for (braid, entries) in &map.entries {
        assert!(braid.w() <= 40);
        for (slope, tuple) in entries {
            assert!(slope.p() <= map.max_w + 1);
            assert!(slope.p() <= braid.w() + 1);
            assert_eq!(tuple.slope(), *slope);
        }
    }
}

#[test]
fn filling_map_restriction_is_stable() {
    let big = build_filling_map(30).unwrap();
    for small in [3, 7, 12, 29] {
        assert_eq!(big.restrict(small), build_filling_map(small).unwrap());
    }
}

#[test]
fn diagram_positions_are_distinct_and_in_rectangles() {
    for tuple in tuples_by_k(15, 3) {
        let path = simulate_transits(&tuple).unwrap();
        let mut sorted = path.positions.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), path.positions.len());
        if !path.positions.is_empty() {
            let x = Rational64::from_integer(tuple.x());
            assert!(x < path.end_pos && path.end_pos < x + 1, "{tuple}");
        }
        let zero = Rational64::from_integer(0);
        let half = Rational64::new(1, 2);
        assert!(zero < path.start_pos && path.start_pos < half + half);
    }
}

#[test]
fn diagram_matches_formulas_by_w() {
    let report = check_transits(tuples_by_w(60));
    assert!(report.passed(), "{:?}", report.mismatches.first());
    assert!(report.tuples_checked > 1000);
}

#[test]
fn measured_twist_for_example_witnesses() {
    let braid = onebridge::Braid::new(7, 2, 4).unwrap();
    let fillings = onebridge::fillings_of(&braid);
    assert_eq!(fillings.len(), 3);
    for wit in fillings.iter().flat_map(|f| &f.witnesses) {
        let path = simulate_transits(&wit.tuple).unwrap();
        assert_eq!(measure_w_t(&path).unwrap(), (7, 4), "{}", wit.tuple);
    }
}
