use andrekit::phi::*;

#[test]
fn bijection_through_8() {
    for n in 1..=8 {
        verify_bijection(n).unwrap();
    }
}

#[test]
fn single_steps_through_7() {
    for n in 1..=7 {
        verify_single_steps(n).unwrap();
    }
}

#[test]
fn type_one_order_is_irrelevant_through_7() {
    for seed in [0, 1, 2024] {
        for n in 1..=7 {
            verify_type1_order_independence(n, seed).unwrap();
        }
    }
}
