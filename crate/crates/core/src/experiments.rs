//! The three-vertex digraph experiment: signatures of the 15 digraphs with at
//! least one arc, before and after adding a fixed set of 3-interactions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::algebra::Field;
use crate::complex::IntComplex;
use crate::homology::Signature;
use crate::interaction::{Interaction, Vertex};

pub type Arc = (u8, u8);

/// The nine 3-interactions added to every digraph.
pub const AUGMENTATION: [&str; 9] = [
    "((0,1),2)",
    "((1,0),1)",
    "(2,(1,0))",
    "(0,(2,1))",
    "((2,1),0)",
    "(1,(0,2))",
    "((0,2),1)",
    "(0,(1,0))",
    "(0,(0,2))",
];

/// Graph groups whose signatures are expected to coincide before
/// augmentation.
pub const SHARED_GROUPS: [&[&str]; 3] = [&["f", "g", "h", "i"], &["j", "k", "l", "m"], &["c", "d", "e"]];

pub fn augmentation() -> Vec<Interaction> {
    AUGMENTATION
        .iter()
        .map(|s| Interaction::parse(s).expect("well-formed"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    pub name: String,
    /// Sorted arcs on vertices `0, 1, 2`.
    pub arcs: Vec<Arc>,
}

impl Digraph {
    pub fn complex(&self) -> IntComplex {
        let vertices: Vec<Vertex> = (0..3).map(|v| Vertex::new(&v.to_string()).expect("digit")).collect();
        let arcs: Vec<(Vertex, Vertex)> = self
            .arcs
            .iter()
            .map(|&(a, b)| (vertices[a as usize].clone(), vertices[b as usize].clone()))
            .collect();
        IntComplex::from_digraph(&vertices, &arcs).expect("arcs use known vertices")
    }

    pub fn augmented(&self) -> IntComplex {
        self.complex().with(augmentation())
    }

    /// Number of arcs `(u,v)` whose reverse is also present, counted once.
    pub fn reciprocal_pairs(&self) -> usize {
        self.arcs.iter().filter(|&&(a, b)| a < b && self.arcs.contains(&(b, a))).count()
    }

    pub fn relabelled(&self, perm: [u8; 3]) -> Digraph {
        let mut arcs: Vec<Arc> = self.arcs.iter().map(|&(a, b)| (perm[a as usize], perm[b as usize])).collect();
        arcs.sort();
        Digraph {
            name: self.name.clone(),
            arcs,
        }
    }

    pub fn arcs_text(&self) -> String {
        self.arcs
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

const PERMUTATIONS: [[u8; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

const ALL_ARCS: [Arc; 6] = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];

fn canonical(arcs: &[Arc]) -> Vec<Arc> {
    PERMUTATIONS
        .iter()
        .map(|p| {
            let mut v: Vec<Arc> = arcs.iter().map(|&(a, b)| (p[a as usize], p[b as usize])).collect();
            v.sort();
            v
        })
        .min()
        .expect("six permutations")
}

/// The 15 isomorphism classes of loop-free digraphs on three vertices with
/// at least one arc, named `a..o` by arc count, then by reciprocal pairs
/// (most first), then by canonical arc list.
pub fn catalog() -> Vec<Digraph> {
    let classes: BTreeSet<Vec<Arc>> = (1u32..64)
        .map(|mask| {
            let arcs: Vec<Arc> = (0..6).filter(|k| mask >> k & 1 == 1).map(|k| ALL_ARCS[k]).collect();
            canonical(&arcs)
        })
        .collect();
    let mut graphs: Vec<Digraph> = classes
        .into_iter()
        .map(|arcs| Digraph {
            name: String::new(),
            arcs,
        })
        .collect();
    graphs.sort_by_key(|g| (g.arcs.len(), std::cmp::Reverse(g.reciprocal_pairs()), g.arcs.clone()));
    for (g, name) in graphs.iter_mut().zip('a'..) {
        g.name = name.to_string();
    }
    let mut census = [0usize; 6];
    for g in &graphs {
        census[g.arcs.len() - 1] += 1;
    }
    assert_eq!(census, [1, 4, 4, 4, 1, 1], "arc-count census");
    graphs
}

/// Signatures through degree 3 for every catalog entry.
pub fn signatures<F: Field>(field: &F, catalog: &[Digraph], augmented: bool) -> BTreeMap<String, Signature> {
    catalog
        .iter()
        .map(|g| {
            let c = if augmented { g.augmented() } else { g.complex() };
            (g.name.clone(), Signature::compute(field, &c, Some(3)))
        })
        .collect()
}

/// Names grouped by equal signature, each group and the list sorted.
pub fn equivalence_classes(signatures: &BTreeMap<String, Signature>) -> Vec<Vec<String>> {
    let mut groups: BTreeMap<&Signature, Vec<String>> = BTreeMap::new();
    for (name, s) in signatures {
        groups.entry(s).or_default().push(name.clone());
    }
    let mut out: Vec<Vec<String>> = groups.into_values().collect();
    for g in &mut out {
        g.sort();
    }
    out.sort();
    out
}

pub fn short_signature(s: &Signature) -> String {
    let betti: Vec<String> = s.betti.iter().map(usize::to_string).collect();
    let mut out = format!("b={}", betti.join(","));
    for p in 2..=3 {
        match s.layer.get(&p) {
            Some((x, y)) => write!(out, " L{p}={x},{y}").expect("string write"),
            None => write!(out, " L{p}=-").expect("string write"),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub catalog: Vec<Digraph>,
    pub unaugmented: BTreeMap<String, Signature>,
    pub augmented: BTreeMap<String, Signature>,
    pub unaugmented_classes: Vec<Vec<String>>,
    pub augmented_classes: Vec<Vec<String>>,
    /// Each of [`SHARED_GROUPS`] is exactly one unaugmented class.
    pub shared_groups_hold: bool,
    /// All augmented signatures are pairwise distinct.
    pub augmented_distinct: bool,
}

pub fn distinguishability_report<F: Field>(field: &F) -> Report {
    let catalog = catalog();
    let unaugmented = signatures(field, &catalog, false);
    let augmented = signatures(field, &catalog, true);
    let unaugmented_classes = equivalence_classes(&unaugmented);
    let augmented_classes = equivalence_classes(&augmented);
    let shared_groups_hold = SHARED_GROUPS.iter().all(|group| {
        let group: Vec<String> = group.iter().map(|s| s.to_string()).collect();
        unaugmented_classes.contains(&group)
    });
    let augmented_distinct = augmented_classes.len() == catalog.len();
    Report {
        catalog,
        unaugmented,
        augmented,
        unaugmented_classes,
        augmented_classes,
        shared_groups_hold,
        augmented_distinct,
    }
}

fn classes_text(classes: &[Vec<String>]) -> String {
    classes
        .iter()
        .map(|c| format!("{{{}}}", c.join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

impl Report {
    pub fn passed(&self) -> bool {
        self.shared_groups_hold && self.augmented_distinct
    }

    pub fn to_text(&self, include_augmented: bool) -> String {
        let mut out = String::new();
        let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
        writeln!(out, "{:<5} {:<38} {:<24} {}", "graph", "arcs", "signature", if include_augmented { "augmented" } else { "" })
            .expect("string write");
        for g in &self.catalog {
            let plain = short_signature(&self.unaugmented[&g.name]);
            let aug = if include_augmented {
                short_signature(&self.augmented[&g.name])
            } else {
                String::new()
            };
            writeln!(out, "{:<5} {:<38} {:<24} {aug}", g.name, g.arcs_text(), plain).expect("string write");
        }
        let out = out.lines().map(str::trim_end).collect::<Vec<_>>().join("\n") + "\n";
        let mut out = out;
        writeln!(out, "\nclasses: {}", classes_text(&self.unaugmented_classes)).expect("string write");
        let multi: Vec<Vec<String>> = self.unaugmented_classes.iter().filter(|c| c.len() > 1).cloned().collect();
        writeln!(out, "shared classes: {}", classes_text(&multi)).expect("string write");
        writeln!(out, "shared groups {{c,d,e}} {{f,g,h,i}} {{j,k,l,m}}: {}", verdict(self.shared_groups_hold))
            .expect("string write");
        if include_augmented {
            writeln!(out, "augmented classes: {}", classes_text(&self.augmented_classes)).expect("string write");
            writeln!(
                out,
                "augmented signatures distinct: {} ({} classes for {} graphs)",
                verdict(self.augmented_distinct),
                self.augmented_classes.len(),
                self.catalog.len()
            )
            .expect("string write");
            writeln!(out, "verdict: {}", verdict(self.passed())).expect("string write");
        } else {
            writeln!(out, "verdict: {}", verdict(self.shared_groups_hold)).expect("string write");
        }
        out
    }

    pub fn to_json_value(&self, include_augmented: bool) -> Value {
        let entries: Vec<Value> = self
            .catalog
            .iter()
            .map(|g| {
                let arcs: Vec<String> = g.arcs.iter().map(|(a, b)| format!("({a},{b})")).collect();
                let mut v = json!({
                    "name": g.name,
                    "arcs": arcs,
                    "signature": self.unaugmented[&g.name],
                });
                if include_augmented {
                    v["augmented"] = json!(self.augmented[&g.name]);
                }
                v
            })
            .collect();
        let mut out = json!({
            "graphs": entries,
            "classes": self.unaugmented_classes,
            "shared_groups_hold": self.shared_groups_hold,
        });
        if include_augmented {
            out["augmented_classes"] = json!(self.augmented_classes);
            out["augmented_distinct"] = json!(self.augmented_distinct);
            out["passed"] = json!(self.passed());
        } else {
            out["passed"] = json!(self.shared_groups_hold);
        }
        out
    }

    pub fn to_json(&self, include_augmented: bool) -> String {
        serde_json::to_string_pretty(&self.to_json_value(include_augmented)).expect("serializable") + "\n"
    }
}
