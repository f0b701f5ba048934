use mcs_core::FiniteGroup;

/// Non-increasing lists of cyclic orders `>= 2` with product at most `bound`.
fn factorizations(bound: usize, max_factor: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(prefix.clone());
    let used: usize = prefix.iter().product();
    for f in 2..=max_factor.min(bound / used) {
        prefix.push(f);
        factorizations(bound, f, prefix, out);
        prefix.pop();
    }
}

#[test]
fn product_of_all_elements_is_trivial_unless_one_involution() {
    let mut lists = Vec::new();
    factorizations(100, 100, &mut Vec::new(), &mut lists);
    assert_eq!(lists.len(), 358);
    let mut counterexamples = Vec::new();
    for list in &lists {
        let factors: Vec<FiniteGroup> = if list.is_empty() {
            vec![FiniteGroup::cyclic(1).unwrap()]
        } else {
            list.iter().map(|&n| FiniteGroup::cyclic(n).unwrap()).collect()
        };
        let g = FiniteGroup::product_all(&factors).unwrap();
        let trivial = g.product_of_all_trivial().unwrap();
        if trivial != (g.involution_count() != 1) {
            counterexamples.push(list.clone());
        }
        // one involution exactly when the 2-part is cyclic and nontrivial
        let even = list.iter().filter(|&&n| n % 2 == 0).count();
        assert_eq!(g.involution_count(), (1usize << even) - 1, "{list:?}");
    }
    assert!(counterexamples.is_empty(), "{counterexamples:?}");
}
