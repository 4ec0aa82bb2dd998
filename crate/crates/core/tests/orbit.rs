use std::collections::BTreeMap;

use proptest::prelude::*;
use ut_orbits::admissible::{subset_by_label, Label};
use ut_orbits::orbit::*;
use ut_orbits::root_system::{positive_roots, Root};
use ut_orbits::symbolic::Field;

fn label(s: &str) -> Label {
    s.parse().unwrap()
}

#[test]
fn small_census_counts() {
    let r = census(3, 2).unwrap();
    assert_eq!(r.total_orbits, 5);
    assert!(r.ok());
    let r = census(3, 3).unwrap();
    assert_eq!(r.total_orbits, 11);
    assert!(r.ok());
    let r = census(4, 2).unwrap();
    assert_eq!(r.total_orbits, 16);
    assert_eq!(r.per_dimension, BTreeMap::from([(0, 8), (2, 6), (4, 2)]));
    assert_eq!(r.per_dimension, r.expected_per_dimension);
    assert!(r.ok());
}

#[test]
fn orbit_sizes_of_examples() {
    let f2 = Field::prime(2).unwrap();
    let f = LinearForm::parse(3, f2, "3,1=1").unwrap();
    let (_, orbit) = orbit_bfs(&f).unwrap();
    assert_eq!(orbit.size(), 4);

    let s = subset_by_label(label("(4,0,1)")).unwrap();
    let c: BTreeMap<Root, _> = s.roots().iter().map(|&r| (r, f2.one())).collect();
    let f = canonical_form(&s, f2, &c).unwrap();
    let (_, orbit) = orbit_bfs(&f).unwrap();
    assert_eq!(orbit.size(), 16);
}

#[test]
fn stratum_of_worked_canonical_form() {
    let s = subset_by_label(label("(6,3,4)")).unwrap();
    let q = Field::Rational;
    let c: BTreeMap<Root, _> = s.roots().iter().map(|&r| (r, q.one())).collect();
    assert_eq!(stratum(&canonical_form(&s, q, &c).unwrap()), 3);
}

#[test]
fn canonical_form_rejects_bad_constants() {
    let s = subset_by_label(label("(4,0,1)")).unwrap();
    let f3 = Field::prime(3).unwrap();
    let mut c: BTreeMap<Root, _> = s.roots().iter().map(|&r| (r, f3.one())).collect();
    c.insert(s.otimes()[0], f3.zero());
    assert!(canonical_form(&s, f3, &c).is_err());
    c.insert(s.otimes()[0], f3.one());
    c.remove(&s.roots()[0]);
    assert!(canonical_form(&s, f3, &c).is_err());
}

#[test]
fn budget_is_enforced() {
    let f = LinearForm::parse(5, Field::prime(3).unwrap(), "5,1=1;4,2=1").unwrap();
    assert!(matches!(orbit_bfs_with_budget(&f, 10), Err(ut_orbits::Error::BudgetExceeded { .. })));
}

fn random_element(n: usize, p: u64, seed: &[u64]) -> GroupElement {
    let f = Field::prime(p).unwrap();
    let entries = positive_roots(n)
        .unwrap()
        .iter()
        .zip(seed)
        .map(|(r, &v)| (r, f.from_i64(v as i64)))
        .collect();
    GroupElement::from_entries(n, f, entries).unwrap()
}

fn random_form(n: usize, p: u64, seed: &[u64]) -> LinearForm {
    let f = Field::prime(p).unwrap();
    let values = positive_roots(n).unwrap().iter().zip(seed).map(|(r, &v)| (r, f.from_i64(v as i64))).collect();
    LinearForm::from_values(n, f, &values).unwrap()
}

proptest! {
    #[test]
    fn coadjoint_action_is_a_group_action(
        a in prop::collection::vec(0u64..5, 10),
        b in prop::collection::vec(0u64..5, 10),
        x in prop::collection::vec(0u64..5, 10),
    ) {
        let (g, h, f) = (random_element(5, 5, &a), random_element(5, 5, &b), random_form(5, 5, &x));
        let gh = g.mul(&h).unwrap();
        prop_assert_eq!(coadjoint_act(&gh, &f).unwrap(), coadjoint_act(&g, &coadjoint_act(&h, &f).unwrap()).unwrap());
        prop_assert_eq!(coadjoint_act(&g.inverse().unwrap(), &coadjoint_act(&g, &f).unwrap()).unwrap(), f.clone());
    }

    #[test]
    fn packed_generators_match_matrix_action(x in prop::collection::vec(0u64..5, 10), k in 0usize..10) {
        let f = random_form(5, 5, &x);
        let space = PackedSpace::new(5, 5).unwrap();
        let r = Root::at_index(5, k);
        let g = GroupElement::elementary(5, r, Field::prime(5).unwrap().one());
        let image = space.encode(&coadjoint_act(&g, &f).unwrap()).unwrap();
        let mut nb = Vec::new();
        space.neighbours(space.encode(&f).unwrap(), &mut nb);
        prop_assert!(nb.contains(&image) || image == space.encode(&f).unwrap());
    }

    #[test]
    fn kirillov_rank_is_orbit_dimension(x in prop::collection::vec(0u64..3, 10)) {
        let f = random_form(5, 3, &x);
        let (_, orbit) = orbit_bfs(&f).unwrap();
        prop_assert_eq!(orbit.dimension(3), Some(kirillov_rank(&f).unwrap()));
    }
}

#[test]
fn torus_preserves_diagram_classes() {
    for (n, p) in [(3, 3), (4, 3), (5, 2), (5, 3)] {
        assert!(check_torus(n, p, 2, 9).unwrap().is_empty(), "n={n} p={p}");
    }
}

/// The two `n = 7` diagrams whose minor `P_{h,η}` is not an orbit invariant:
/// it takes every value of `F_2` on the orbit of `f_{S,1}`.
#[test]
fn exceptional_minors_vary_on_their_orbits() {
    use ut_orbits::admissible::maximal_completion;
    let r = Root::new;
    let f2 = Field::prime(2).unwrap();
    for (otimes, eta) in [(vec![r(5, 1), r(7, 2), r(6, 3)], r(7, 5)), (vec![r(4, 1), r(7, 2), r(6, 3)], r(7, 4))] {
        let s = maximal_completion(7, &otimes).unwrap();
        let c: BTreeMap<Root, _> = s.roots().iter().map(|&x| (x, f2.one())).collect();
        let (space, orbit) = orbit_bfs(&canonical_form(&s, f2, &c).unwrap()).unwrap();
        assert_eq!(orbit.dimension(2), Some(s.dimension()));
        let check = check_minor_generators(&space, &s, &orbit, false).unwrap();
        assert_eq!(check.varying, vec![eta]);
    }
}

#[test]
fn corner_trade_is_needed_for_7_3_8() {
    let s = subset_by_label(label("(7,3,8)")).unwrap();
    let p = polarization(&s);
    assert!(p.contains(Root::new(7, 5)) && !p.contains(Root::new(5, 4)));
    // the plain rule (drop only the minus roots) is not closed under brackets
    let d = ut_orbits::admissible::render_diagram(&s);
    let plain = positive_roots(7).unwrap().filter(|r| d.at(r) != ut_orbits::admissible::Symbol::Minus);
    assert!(!is_subalgebra(&plain) || !isotropic_on_support(&plain, &s));
}

#[test]
fn census_json_shape() {
    let r = census(3, 2).unwrap();
    let j = serde_json::to_value(&r).unwrap();
    assert_eq!(j["n"], 3);
    assert_eq!(j["identities"]["point_sum_ok"], true);
    assert_eq!(j["orbits"].as_array().unwrap().len(), 2);
}
