use derangekit_core::counting::{
    block_derangements, count, count_avoiding_containment, count_avoiding_image_equality,
    count_injections_avoiding_image_equality, i1, ClosedForm,
};
use derangekit_core::numeric::{binomial, factorial, falling_factorial, power, stirling2, BigInteger};
use derangekit_core::oracle::{enumerate_count, enumerate_stirling2, EnumerationBudget};
use derangekit_core::{Block, Constraint, ConstraintSystem, FunctionClass, Relation};
use proptest::prelude::*;

/// Splits `[m]` into at most `k` disjoint nonempty blocks from a label per
/// position (label 0 leaves the position free).
fn blocks_from_labels(labels: &[u32], k: u32) -> Vec<Block> {
    (1..=k)
        .filter_map(|label| {
            let elems: Vec<u32> = labels
                .iter()
                .enumerate()
                .filter(|(_, &l)| l == label)
                .map(|(i, _)| i as u32 + 1)
                .collect();
            Block::new(elems).ok()
        })
        .collect()
}

fn subset_of(mask: u32, n: u32) -> Block {
    Block::new((1..=n).filter(|v| mask >> (v - 1) & 1 == 1).collect()).unwrap()
}

fn function_system(relation: Relation) -> impl Strategy<Value = ConstraintSystem> {
    (0u32..=5, 1u32..=5, 0u32..=3)
        .prop_flat_map(|(m, n, k)| {
            (
                Just((m, n, k)),
                prop::collection::vec(0..=k, m as usize),
                prop::collection::vec(1u32..(1 << n), k as usize),
            )
        })
        .prop_map(move |((m, n, k), labels, masks)| {
            let constraints = blocks_from_labels(&labels, k)
                .into_iter()
                .zip(masks)
                .map(|(x, mask)| Constraint::new(x, subset_of(mask, n), relation))
                .collect();
            ConstraintSystem::new(m, n, FunctionClass::AllFunctions, constraints)
        })
}

fn injection_system() -> impl Strategy<Value = ConstraintSystem> {
    (0u32..=6, 0u32..=3)
        .prop_flat_map(|(m, k)| (Just((m, k)), m.max(1)..=6))
        .prop_flat_map(|((m, k), n)| {
            (
                Just((m, n, k)),
                prop::collection::vec(0..=k, m as usize),
                Just((1..=n).collect::<Vec<u32>>()).prop_shuffle(),
            )
        })
        .prop_map(|((m, n, k), labels, shuffled)| {
            let mut offset = 0;
            let constraints = blocks_from_labels(&labels, k)
                .into_iter()
                .map(|x| {
                    let mut y = shuffled[offset..offset + x.len()].to_vec();
                    offset += x.len();
                    y.sort_unstable();
                    Constraint::new(x, Block::new(y).unwrap(), Relation::ImageEquality)
                })
                .collect();
            ConstraintSystem::new(m, n, FunctionClass::Injections, constraints)
        })
}

fn oracle(system: &ConstraintSystem) -> BigInteger {
    enumerate_count(system, EnumerationBudget::default()).unwrap()
}

fn relabel(system: &ConstraintSystem, perm: &[u32]) -> ConstraintSystem {
    let mut out = system.clone();
    for c in &mut out.constraints {
        let mut y: Vec<u32> = c.codomain.elements().iter().map(|&v| perm[v as usize - 1]).collect();
        y.sort_unstable();
        c.codomain = Block::new(y).unwrap();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn containment_matches_enumeration(system in function_system(Relation::Containment)) {
        prop_assert!(system.is_valid());
        let r = count_avoiding_containment(&system).unwrap();
        prop_assert_eq!(r.terms_evaluated, 1u64 << system.k());
        prop_assert_eq!(r.value, oracle(&system));
    }

    #[test]
    fn image_equality_matches_enumeration(system in function_system(Relation::ImageEquality)) {
        prop_assert_eq!(count_avoiding_image_equality(&system).unwrap().value, oracle(&system));
    }

    #[test]
    fn injections_match_enumeration(system in injection_system()) {
        prop_assert!(system.is_valid(), "{:?}", system.validate());
        prop_assert_eq!(
            count_injections_avoiding_image_equality(&system).unwrap().value,
            oracle(&system)
        );
    }

    #[test]
    fn adding_a_constraint_never_increases_the_count(system in function_system(Relation::ImageEquality)) {
        let full = count(&system).unwrap().value;
        let mut fewer = system.clone();
        fewer.constraints.pop();
        let fewer = count(&fewer).unwrap().value;
        prop_assert!(full <= fewer);
        prop_assert!(full >= BigInteger::from(0));
        prop_assert!(fewer <= power(system.n, system.m));
    }

    #[test]
    fn codomain_relabeling_preserves_the_count(
        system in injection_system(),
        perm in Just((1u32..=6).collect::<Vec<u32>>()).prop_shuffle(),
    ) {
        // restrict the permutation of [6] to a permutation of [n]
        let perm: Vec<u32> = perm.into_iter().filter(|&v| v <= system.n).collect();
        let relabeled = relabel(&system, &perm);
        prop_assert!(relabeled.is_valid());
        prop_assert_eq!(oracle(&relabeled), oracle(&system));
        prop_assert!(oracle(&system) <= falling_factorial(system.n, system.m));
    }

    #[test]
    fn containment_relabeling_preserves_the_count(
        system in function_system(Relation::Containment),
        perm in Just((1u32..=5).collect::<Vec<u32>>()).prop_shuffle(),
    ) {
        let perm: Vec<u32> = perm.into_iter().filter(|&v| v <= system.n).collect();
        prop_assert_eq!(oracle(&relabel(&system, &perm)), oracle(&system));
    }

    #[test]
    fn binomial_is_symmetric(n in 0u32..60, k in 0u32..60) {
        prop_assume!(k <= n);
        prop_assert_eq!(binomial(n, k), binomial(n, n - k));
    }

    #[test]
    fn falling_factorial_is_a_factorial_ratio(n in 0u32..40, m in 0u32..40) {
        prop_assume!(m <= n);
        prop_assert_eq!(falling_factorial(n, m), factorial(n) / factorial(n - m));
    }
}

/// Bell numbers from the Bell triangle: each row starts with the last entry
/// of the previous row and each entry adds its upper-left neighbour.
fn bell_numbers(count: usize) -> Vec<BigInteger> {
    let mut row = vec![BigInteger::from(1)];
    let mut bells = vec![BigInteger::from(1)];
    for _ in 1..count {
        let mut next = vec![row.last().unwrap().clone()];
        for value in &row {
            let v = next.last().unwrap() + value;
            next.push(v);
        }
        row = next;
        bells.push(row[0].clone());
    }
    bells
}

#[test]
fn stirling_rows_sum_to_bell_numbers() {
    let bells = bell_numbers(11);
    assert_eq!(bells[..6], [1, 1, 2, 5, 15, 52].map(BigInteger::from));
    for m in 0..=10u32 {
        let sum: BigInteger = (0..=m).map(|j| stirling2(m, j)).sum();
        assert_eq!(sum, bells[m as usize], "m = {m}");
    }
}

#[test]
fn stirling_matches_partition_enumeration() {
    for m in 0..=10 {
        for n in 0..=m + 1 {
            assert_eq!(stirling2(m, n), enumerate_stirling2(m, n).unwrap(), "S({m},{n})");
        }
    }
}

#[test]
fn surjections_match_enumeration() {
    for m in 0..=6u32 {
        for n in 1..=4u32 {
            let mut surjective = 0u64;
            let total = n.pow(m);
            for code in 0..total {
                let mut hit = 0u32;
                let mut c = code;
                for _ in 0..m {
                    hit |= 1 << (c % n);
                    c /= n;
                }
                if hit == (1 << n) - 1 {
                    surjective += 1;
                }
            }
            assert_eq!(stirling2(m, n) * factorial(n), BigInteger::from(surjective), "m={m} n={n}");
        }
    }
}

#[test]
fn block_derangements_follow_the_derangement_recurrence() {
    let mut d = vec![BigInteger::from(1), BigInteger::from(0)];
    for n in 2..=12u32 {
        let next = BigInteger::from(n - 1) * (&d[n as usize - 1] + &d[n as usize - 2]);
        d.push(next);
    }
    for n in 0..=12u32 {
        assert_eq!(block_derangements(n, 1).unwrap(), d[n as usize], "D({n})");
    }
    for n in 0..=10u32 {
        assert_eq!(i1(n, n, n).unwrap(), d[n as usize]);
    }
}

#[test]
fn families_match_their_canonical_systems() {
    for family in ClosedForm::ALL {
        for m in 0..=5 {
            for n in 1..=5 {
                for k in 0..=m {
                    let Ok(system) = family.canonical_system(m, n, k) else {
                        continue;
                    };
                    let expected = family.closed_form(m, n, k).unwrap();
                    assert_eq!(count(&system).unwrap().value, expected, "{family} {m} {n} {k}");
                    assert_eq!(oracle(&system), expected, "{family} {m} {n} {k}");
                }
            }
        }
    }
}
