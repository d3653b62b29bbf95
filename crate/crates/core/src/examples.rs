//! Small named complexes used in tests, documentation and the CLI.

use num::BigRational;

use crate::complex::IntComplex;
use crate::interaction::Interaction;
use crate::persistence::WeightedIntComplex;

fn build(items: &[&str]) -> IntComplex {
    IntComplex::parse_all(items).expect("well-formed example")
}

fn parse_all(items: &[&str]) -> Vec<Interaction> {
    items.iter().map(|s| Interaction::parse(s).expect("well-formed example")).collect()
}

/// Four vertices with interactions nested up to order 6.
pub fn running_example() -> IntComplex {
    build(&[
        "a",
        "b",
        "c",
        "d",
        "(b,a)",
        "(d,d)",
        "((b,a),c)",
        "(c,(d,d))",
        "(((b,a),c),(c,(d,d)))",
    ])
}

/// The 4-cycle `(1,2),(2,3),(3,4),(1,4)`.
pub fn square() -> IntComplex {
    build(&["1", "2", "3", "4", "(1,2)", "(2,3)", "(3,4)", "(1,4)"])
}

/// `n`-cycle on `1..=n`; bit `k` of `flips` reverses the `k`-th edge.
pub fn cycle(n: usize, flips: u64) -> IntComplex {
    assert!(n >= 3, "a cycle needs at least three vertices");
    let mut items: Vec<String> = (1..=n).map(|v| v.to_string()).collect();
    let edges = (1..n).map(|i| (i, i + 1)).chain([(1, n)]);
    for (k, (a, b)) in edges.enumerate() {
        let (a, b) = if flips >> k & 1 == 1 { (b, a) } else { (a, b) };
        items.push(format!("({a},{b})"));
    }
    IntComplex::parse_all(&items).expect("well-formed cycle")
}

/// A 2-cycle `(1,2),(2,1)` with both orientations coned to 3 and 4.
pub fn cone() -> IntComplex {
    build(&[
        "1",
        "2",
        "3",
        "4",
        "(1,2)",
        "(2,1)",
        "((1,2),3)",
        "((2,1),3)",
        "((1,2),4)",
        "((2,1),4)",
    ])
}

/// Two disjoint edges linked in both directions by 4-interactions.
pub fn two_pairs() -> IntComplex {
    build(&[
        "1",
        "2",
        "3",
        "4",
        "(1,2)",
        "(3,4)",
        "((1,2),(3,4))",
        "((3,4),(1,2))",
    ])
}

/// Nine vertices with interactions of orders 2, 3, 4 and 6 forming two
/// loops across layers.
pub fn mixed_loops() -> IntComplex {
    let mut items: Vec<String> = (1..=9).map(|v| v.to_string()).collect();
    items.extend(
        [
            "(1,2)",
            "(4,5)",
            "(6,7)",
            "(8,9)",
            "((1,2),3)",
            "(3,(4,5))",
            "(3,(6,7))",
            "((4,5),(8,9))",
            "((6,7),(8,9))",
            "((1,2),((6,7),(8,9)))",
            "(((6,7),(8,9)),(4,5))",
        ]
        .map(String::from),
    );
    IntComplex::parse_all(&items).expect("well-formed example")
}

/// Loop of [`mixed_loops`] through orders 3 and 6.
pub fn mixed_loops_first_loop() -> Vec<Interaction> {
    parse_all(&[
        "((1,2),((6,7),(8,9)))",
        "(((6,7),(8,9)),(4,5))",
        "((1,2),3)",
        "(3,(4,5))",
    ])
}

/// Loop of [`mixed_loops`] through orders 3 and 4.
pub fn mixed_loops_second_loop() -> Vec<Interaction> {
    parse_all(&["((6,7),(8,9))", "((4,5),(8,9))", "(3,(4,5))", "(3,(6,7))"])
}

/// Edges `(1,2),(2,3),(3,2),(4,1)` under the four 3-interactions of
/// [`cone`], weighted so that every weight `1..=8` is a step.
pub fn weighted_cone() -> WeightedIntComplex {
    let items = [
        ("1", 1),
        ("2", 1),
        ("3", 1),
        ("4", 1),
        ("(1,2)", 2),
        ("(2,3)", 3),
        ("(3,2)", 4),
        ("(4,1)", 5),
        ("((1,2),3)", 6),
        ("((2,1),3)", 7),
        ("((1,2),4)", 8),
        ("((2,1),4)", 8),
    ];
    WeightedIntComplex::new(items.iter().map(|(s, w)| {
        (
            Interaction::parse(s).expect("well-formed example"),
            BigRational::from_integer((*w).into()),
        )
    }))
    .expect("distinct members")
}
