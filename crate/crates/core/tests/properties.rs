//! Randomised invariants, each over a fixed-seed run of generated cases.

mod common;

fn check(result: Result<(), String>) {
    if let Err(e) = result {
        panic!("{e}");
    }
}

#[test]
fn membership_is_downward_closed() {
    check(common::downward_closure());
}

#[test]
fn plus_one_shifts_the_threshold() {
    check(common::plus_one_shift());
}

#[test]
fn members_have_bounded_multiplicity() {
    check(common::multiplicity_cap());
}

#[test]
fn canonical_form_ignores_labels() {
    check(common::canonical_relabel_invariance());
}

#[test]
fn amgm_matches_exhaustive_search() {
    check(common::amgm_matches_exhaustive());
}

#[test]
fn bad_config_count_matches_direct_loop() {
    check(common::bad_configs_match());
}
