//! Transcribed data of the subregular examples in gl3, sp4, gl4, sp6 and its
//! comparison with computed diagrams, flags and prehomogeneous spaces.

use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::nilpotent::{canonical_data, catalog_element};
use crate::orbitind::{min_infl, named_subspaces, GroupKind};
use crate::pvspace::{build_pv, catalog_invariants, generic_torus};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

type Names = &'static [&'static str];

#[derive(Clone, Debug, Serialize)]
pub struct DiagramData {
    pub vertices: &'static [Names],
    /// Hasse covers (finer, coarser)
    pub edges: &'static [(Names, Names)],
    /// P ↦ P′ assignments (P, P′)
    pub arrows: &'static [(Names, Names)],
}

/// Named subspaces between 0 and V with their dimensions and covering
/// relations; "0" and "V" denote the trivial members.
#[derive(Clone, Debug, Serialize)]
pub struct SubspaceFigure {
    pub subspaces: &'static [(&'static str, usize)],
    pub covers: &'static [(&'static str, &'static str)],
}

#[derive(Clone, Debug, Serialize)]
pub struct PvData {
    pub dim: usize,
    pub invariants: usize,
    pub torus_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: GroupKind,
    pub rank: usize,
    pub partition: &'static [usize],
    /// Some(true) split, Some(false) anisotropic b_±
    pub split: Option<bool>,
    pub canonical_flag: &'static [&'static str],
    pub subspaces: SubspaceFigure,
    pub diagram: DiagramData,
    pub pv: PvData,
}

const E: Names = &[];

pub fn catalog_entries() -> Vec<CatalogEntry> {
    let sp4_plain = SubspaceFigure { subspaces: &[("V0", 2)], covers: &[("0", "V0"), ("V0", "V")] };
    let sp4_split = SubspaceFigure {
        subspaces: &[("V0", 2), ("U-", 1), ("W-", 1), ("U+", 3), ("W+", 3)],
        covers: &[
            ("0", "U-"),
            ("0", "W-"),
            ("U-", "V0"),
            ("W-", "V0"),
            ("V0", "U+"),
            ("V0", "W+"),
            ("U+", "V"),
            ("W+", "V"),
        ],
    };
    let sp6_plain = SubspaceFigure {
        subspaces: &[("V-", 1), ("Ker X", 2), ("V0", 3), ("Im X", 4), ("V+", 5)],
        covers: &[("0", "V-"), ("V-", "Ker X"), ("Ker X", "V0"), ("V0", "Im X"), ("Im X", "V+"), ("V+", "V")],
    };
    let sp6_split = SubspaceFigure {
        subspaces: &[
            ("V-", 1),
            ("Ker X", 2),
            ("U-", 2),
            ("W-", 2),
            ("V0", 3),
            ("Im X", 4),
            ("U+", 4),
            ("W+", 4),
            ("V+", 5),
        ],
        covers: &[
            ("0", "V-"),
            ("V-", "Ker X"),
            ("V-", "U-"),
            ("V-", "W-"),
            ("Ker X", "V0"),
            ("U-", "V0"),
            ("W-", "V0"),
            ("V0", "Im X"),
            ("V0", "U+"),
            ("V0", "W+"),
            ("Im X", "V+"),
            ("U+", "V+"),
            ("W+", "V+"),
            ("V+", "V"),
        ],
    };
    vec![
        CatalogEntry {
            name: "gl3",
            kind: GroupKind::Gl,
            rank: 2,
            partition: &[2, 1],
            split: None,
            canonical_flag: &["V-", "V+"],
            subspaces: SubspaceFigure {
                subspaces: &[("V-", 1), ("V+", 2)],
                covers: &[("0", "V-"), ("V-", "V+"), ("V+", "V")],
            },
            diagram: DiagramData {
                vertices: &[E, &["V-"], &["V+"]],
                edges: &[(&["V-"], E), (&["V+"], E)],
                arrows: &[(&["V-"], E), (&["V+"], E)],
            },
            pv: PvData { dim: 1, invariants: 1, torus_dim: 1 },
        },
        CatalogEntry {
            name: "sp4-aniso",
            kind: GroupKind::Sp,
            rank: 2,
            partition: &[2, 2],
            split: Some(false),
            canonical_flag: &["V0"],
            subspaces: sp4_plain,
            diagram: DiagramData { vertices: &[E, &["V0"]], edges: &[(&["V0"], E)], arrows: &[] },
            pv: PvData { dim: 3, invariants: 1, torus_dim: 0 },
        },
        CatalogEntry {
            name: "sp4-split",
            kind: GroupKind::Sp,
            rank: 2,
            partition: &[2, 2],
            split: Some(true),
            canonical_flag: &["V0"],
            subspaces: sp4_split,
            diagram: DiagramData {
                vertices: &[E, &["U-", "U+"], &["W-", "W+"]],
                edges: &[(&["U-", "U+"], E), (&["W-", "W+"], E)],
                arrows: &[(&["U-", "U+"], E), (&["W-", "W+"], E)],
            },
            pv: PvData { dim: 3, invariants: 1, torus_dim: 1 },
        },
        CatalogEntry {
            name: "gl4",
            kind: GroupKind::Gl,
            rank: 3,
            partition: &[3, 1],
            split: None,
            canonical_flag: &["V-", "V+"],
            subspaces: SubspaceFigure {
                subspaces: &[("V-", 1), ("Ker X", 2), ("Im X", 2), ("V+", 3)],
                covers: &[("0", "V-"), ("V-", "Ker X"), ("V-", "Im X"), ("Ker X", "V+"), ("Im X", "V+"), ("V+", "V")],
            },
            diagram: DiagramData {
                vertices: &[
                    E,
                    &["Im X"],
                    &["V-"],
                    &["V+"],
                    &["Ker X"],
                    &["V-", "Im X"],
                    &["V-", "V+"],
                    &["Ker X", "V+"],
                ],
                edges: &[
                    (&["Im X"], E),
                    (&["V-"], E),
                    (&["V+"], E),
                    (&["Ker X"], E),
                    (&["V-", "Im X"], &["Im X"]),
                    (&["V-", "Im X"], &["V-"]),
                    (&["V-", "V+"], &["V-"]),
                    (&["V-", "V+"], &["V+"]),
                    (&["Ker X", "V+"], &["V+"]),
                    (&["Ker X", "V+"], &["Ker X"]),
                ],
                arrows: &[
                    (&["Im X"], E),
                    (&["Ker X"], E),
                    (&["V-", "Im X"], &["V-"]),
                    (&["Ker X", "V+"], &["V+"]),
                ],
            },
            pv: PvData { dim: 4, invariants: 1, torus_dim: 1 },
        },
        CatalogEntry {
            name: "sp6-aniso",
            kind: GroupKind::Sp,
            rank: 3,
            partition: &[4, 2],
            split: Some(false),
            canonical_flag: &["V-", "V0", "V+"],
            subspaces: sp6_plain,
            diagram: DiagramData {
                vertices: &[
                    E,
                    &["V0"],
                    &["Ker X", "Im X"],
                    &["V-", "V+"],
                    &["Ker X", "V0", "Im X"],
                    &["V-", "V0", "V+"],
                ],
                edges: &[
                    (&["V0"], E),
                    (&["Ker X", "Im X"], E),
                    (&["V-", "V+"], E),
                    (&["Ker X", "V0", "Im X"], &["V0"]),
                    (&["Ker X", "V0", "Im X"], &["Ker X", "Im X"]),
                    (&["V-", "V0", "V+"], &["V0"]),
                    (&["V-", "V0", "V+"], &["V-", "V+"]),
                ],
                arrows: &[(&["Ker X", "Im X"], E), (&["Ker X", "V0", "Im X"], &["V0"])],
            },
            pv: PvData { dim: 5, invariants: 2, torus_dim: 0 },
        },
        CatalogEntry {
            name: "sp6-split",
            kind: GroupKind::Sp,
            rank: 3,
            partition: &[4, 2],
            split: Some(true),
            canonical_flag: &["V-", "V0", "V+"],
            subspaces: sp6_split,
            diagram: DiagramData {
                vertices: &[
                    E,
                    &["U-", "U+"],
                    &["V-", "V+"],
                    &["W-", "W+"],
                    &["V-", "U-", "U+", "V+"],
                    &["V-", "W-", "W+", "V+"],
                ],
                edges: &[
                    (&["U-", "U+"], E),
                    (&["V-", "V+"], E),
                    (&["W-", "W+"], E),
                    (&["V-", "U-", "U+", "V+"], &["U-", "U+"]),
                    (&["V-", "U-", "U+", "V+"], &["V-", "V+"]),
                    (&["V-", "W-", "W+", "V+"], &["V-", "V+"]),
                    (&["V-", "W-", "W+", "V+"], &["W-", "W+"]),
                ],
                arrows: &[],
            },
            pv: PvData { dim: 5, invariants: 2, torus_dim: 0 },
        },
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct Count {
    pub matched: usize,
    pub total: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub name: String,
    pub matches: bool,
    pub vertices: usize,
    pub expected_vertices: usize,
    pub diagram_matches: bool,
    pub subspaces_match: bool,
    pub pv_matches: bool,
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub passed: bool,
    pub diagrams: Count,
    pub subspace_figures: Count,
    pub pv_structures: Count,
    pub entries: Vec<EntryReport>,
}

fn set(n: Names) -> BTreeSet<String> {
    n.iter().map(|s| s.to_string()).collect()
}

fn pair_set(p: &[(Names, Names)]) -> BTreeSet<(BTreeSet<String>, BTreeSet<String>)> {
    p.iter().map(|(a, b)| (set(a), set(b))).collect()
}

fn check_subspaces(e: &CatalogEntry, out: &mut Vec<String>) -> Result<()> {
    let (alg, x) = catalog_element(e.name)?;
    let n = alg.n;
    let named = named_subspaces(&alg, &x)?;
    let mut spaces: BTreeMap<&str, Subspace> = BTreeMap::from([("0", Subspace::zero(n)), ("V", Subspace::full(n))]);
    for &(name, dim) in e.subspaces.subspaces {
        match named.iter().find(|s| s.name == name) {
            Some(s) if s.space.dim() == dim => {
                spaces.insert(name, s.space.clone());
            }
            Some(s) => out.push(format!("{name} has dimension {} (expected {dim})", s.space.dim())),
            None => out.push(format!("{name} is not constructed")),
        }
    }
    let distinct: BTreeSet<&Subspace> = spaces.values().collect();
    if distinct.len() != spaces.len() {
        out.push("named subspaces coincide".into());
    }
    let lt = |a: &Subspace, b: &Subspace| a != b && b.contains_space(a);
    let mut covers = BTreeSet::new();
    for (na, a) in &spaces {
        for (nb, b) in &spaces {
            if lt(a, b) && !spaces.values().any(|c| lt(a, c) && lt(c, b)) {
                covers.insert((na.to_string(), nb.to_string()));
            }
        }
    }
    let want: BTreeSet<(String, String)> = e.subspaces.covers.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    if covers != want {
        out.push(format!("subspace covers {covers:?}"));
    }
    let cd = canonical_data(&x, &alg)?;
    let flag: Vec<Option<&Subspace>> = e.canonical_flag.iter().map(|n| spaces.get(n)).collect();
    if flag.len() != cd.flag.len() || flag.iter().zip(&cd.flag).any(|(a, b)| *a != Some(b)) {
        out.push(format!("canonical flag is not {:?}", e.canonical_flag));
    }
    Ok(())
}

fn check_entry(e: &CatalogEntry, samples: usize, seed: u64) -> Result<EntryReport> {
    let (alg, x) = catalog_element(e.name)?;
    let mut diag = Vec::new();
    let d = min_infl(&alg, &x, samples, seed)?.diagram;
    if d.vertices.len() != e.diagram.vertices.len() {
        diag.push(format!("{} vertices (expected {})", d.vertices.len(), e.diagram.vertices.len()));
    }
    let want: BTreeSet<BTreeSet<String>> = e.diagram.vertices.iter().map(|v| set(v)).collect();
    if d.label_sets() != want {
        diag.push(format!("vertices {:?}", d.label_sets()));
    }
    if d.named_edges() != pair_set(e.diagram.edges) {
        diag.push(format!("edges {:?}", d.named_edges()));
    }
    if d.named_arrows() != pair_set(e.diagram.arrows) {
        diag.push(format!("arrows {:?}", d.named_arrows()));
    }
    let mut sub = Vec::new();
    check_subspaces(e, &mut sub)?;
    let mut pvm = Vec::new();
    let cd = canonical_data(&x, &alg)?;
    let space = build_pv(&cd, &alg)?;
    if space.dim() != e.pv.dim {
        pvm.push(format!("PV dimension {} (expected {})", space.dim(), e.pv.dim));
    }
    let inv = catalog_invariants(&space)?;
    if inv.len() != e.pv.invariants {
        pvm.push(format!("{} basic invariants (expected {})", inv.len(), e.pv.invariants));
    }
    let tor = generic_torus(&space, &space.x_point()?)?;
    if tor.dim != e.pv.torus_dim {
        pvm.push(format!("torus dimension {} (expected {})", tor.dim, e.pv.torus_dim));
    }
    let report = EntryReport {
        name: e.name.to_string(),
        matches: diag.is_empty() && sub.is_empty() && pvm.is_empty(),
        vertices: d.vertices.len(),
        expected_vertices: e.diagram.vertices.len(),
        diagram_matches: diag.is_empty(),
        subspaces_match: sub.is_empty(),
        pv_matches: pvm.is_empty(),
        mismatches: diag.into_iter().chain(sub).chain(pvm).collect(),
    };
    Ok(report)
}

/// Compares every entry (or the named one). Subspace figures and PV
/// structures are counted per group, a group matching when all its forms do.
pub fn check_catalog(name: Option<&str>, samples: usize, seed: u64) -> Result<CatalogReport> {
    let entries: Vec<CatalogEntry> = catalog_entries().into_iter().filter(|e| name.is_none_or(|n| n == e.name)).collect();
    if entries.is_empty() {
        return Err(Error::Config(format!("no catalog entry {:?}", name.unwrap_or(""))));
    }
    let mut reports = Vec::new();
    let mut sub_groups: BTreeMap<(usize, bool), bool> = BTreeMap::new();
    let mut pv_groups: BTreeMap<(usize, bool), bool> = BTreeMap::new();
    for e in &entries {
        let r = check_entry(e, samples, seed)?;
        let key = (e.rank, e.kind == GroupKind::Sp);
        *sub_groups.entry(key).or_insert(true) &= r.subspaces_match;
        *pv_groups.entry(key).or_insert(true) &= r.pv_matches;
        reports.push(r);
    }
    let count = |m: &BTreeMap<(usize, bool), bool>| Count { matched: m.values().filter(|&&b| b).count(), total: m.len() };
    Ok(CatalogReport {
        passed: reports.iter().all(|r| r.matches),
        diagrams: Count { matched: reports.iter().filter(|r| r.diagram_matches).count(), total: reports.len() },
        subspace_figures: count(&sub_groups),
        pv_structures: count(&pv_groups),
        entries: reports,
    })
}
