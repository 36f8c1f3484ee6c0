//! Induction of unipotent classes, the inflation criterion for flag
//! parabolics, the diagrams of parabolics P with γ ∈ P^infl, truncation
//! classes of symplectic classes and the groups N^[γ].

use crate::error::{Error, Result};
use crate::linalg::{Mat, Subspace};
use crate::nilpotent::{
    canonical_data, exp_nil, gl_representative, image_power, is_nilpotent, jordan_type, kernel_power, log_unip,
    sp_representative, weight_filtration, AlgKind, MatrixLieAlgebra, Partition,
};
use crate::pvspace::b_forms;
use crate::rat::{fmt_q, random_q, Q};
use crate::rootspace::{Par, RootType};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupKind {
    Gl,
    Sp,
}

impl GroupKind {
    pub fn of(alg: &MatrixLieAlgebra) -> GroupKind {
        match alg.kind {
            AlgKind::Gl => GroupKind::Gl,
            AlgKind::Sp(_) => GroupKind::Sp,
        }
    }
}

/// {Z ∈ alg : Z A ⊂ B for every pair (A, B)} as a subspace of Q^{n²}.
pub fn alg_where(alg: &MatrixLieAlgebra, conds: &[(&Subspace, &Subspace)]) -> Subspace {
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (a, b) in conds {
        let ann = b.annihilator();
        for v in a.basis() {
            let images: Vec<Vec<Q>> = alg.basis.iter().map(|bk| bk.mul_vec(v)).collect();
            for f in ann.basis() {
                rows.push(images.iter().map(|w| w.iter().zip(f).map(|(x, y)| x * y).sum()).collect());
            }
        }
    }
    if rows.is_empty() {
        return alg.space.clone();
    }
    let ker = Mat::from_rows(&rows).kernel();
    let vecs: Vec<Vec<Q>> = ker.iter().map(|c| alg.combine(c).flatten()).collect();
    Subspace::span(alg.n * alg.n, &vecs)
}

fn to_mats(n: usize, s: &Subspace) -> Vec<Mat> {
    s.basis().iter().map(|v| Mat::unflatten(n, v)).collect()
}

pub(crate) fn random_in<R: Rng>(s: &Subspace, rng: &mut R) -> Vec<Q> {
    let mut v = vec![Q::zero(); s.ambient()];
    for b in s.basis() {
        let c = random_q(rng, 20, 3);
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi += &c * bi;
        }
    }
    v
}

/// Stabiliser of a flag of proper nonzero subspaces, self-dual for sp.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagParabolic {
    /// strictly increasing
    pub flag: Vec<Subspace>,
}

impl FlagParabolic {
    pub fn new(alg: &MatrixLieAlgebra, mut spaces: Vec<Subspace>) -> Result<FlagParabolic> {
        spaces.sort_by_key(|s| s.dim());
        spaces.dedup();
        for s in &spaces {
            if s.ambient() != alg.n || s.is_zero() || s.is_full() {
                return Err(Error::Domain("flag members must be proper nonzero subspaces of V".into()));
            }
        }
        for w in spaces.windows(2) {
            if w[0].dim() == w[1].dim() || !w[1].contains_space(&w[0]) {
                return Err(Error::Domain("flag is not strictly nested".into()));
            }
        }
        if let Some(j) = alg.form() {
            let set: BTreeSet<&Subspace> = spaces.iter().collect();
            let perps: Vec<Subspace> = spaces.iter().map(|s| s.perp(j)).collect();
            if perps.iter().any(|p| !set.contains(p)) {
                return Err(Error::Domain("symplectic flag is not self-dual".into()));
            }
        }
        Ok(FlagParabolic { flag: spaces })
    }

    /// G itself, the empty flag.
    pub fn whole() -> FlagParabolic {
        FlagParabolic { flag: Vec::new() }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.flag.iter().map(|s| s.dim()).collect()
    }

    fn levels(&self, n: usize) -> Vec<Subspace> {
        let mut l = vec![Subspace::zero(n)];
        l.extend(self.flag.iter().cloned());
        l.push(Subspace::full(n));
        l
    }

    pub fn lie(&self, alg: &MatrixLieAlgebra) -> Subspace {
        let conds: Vec<(&Subspace, &Subspace)> = self.flag.iter().map(|s| (s, s)).collect();
        alg_where(alg, &conds)
    }

    /// Form-compatible maps with Z V_i ⊂ V_{i-1}.
    pub fn nilradical(&self, alg: &MatrixLieAlgebra) -> Subspace {
        let s: Vec<usize> = (0..=self.flag.len()).collect();
        self.staircase(alg, &s)
    }

    /// {Z ∈ alg : Z V_i ⊂ V_{s[i-1]}, i = 1..=r+1} with V_0 = 0, V_{r+1} = V.
    pub fn staircase(&self, alg: &MatrixLieAlgebra, s: &[usize]) -> Subspace {
        let l = self.levels(alg.n);
        let conds: Vec<(&Subspace, &Subspace)> = s.iter().enumerate().map(|(i, &t)| (&l[i + 1], &l[t])).collect();
        alg_where(alg, &conds)
    }

    /// Nondecreasing maps s with s[i-1] < i, i = 1..=r+1.
    pub fn staircase_shapes(&self) -> Vec<Vec<usize>> {
        fn rec(i: usize, r1: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if i > r1 {
                out.push(cur.clone());
                return;
            }
            for t in lo..i {
                cur.push(t);
                rec(i + 1, r1, t, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(1, self.flag.len() + 1, 0, &mut Vec::new(), &mut out);
        out
    }

    /// g V_i ⊂ V_i for an invertible g (equivalently g ∈ P).
    pub fn contains_map(&self, g: &Mat) -> bool {
        self.flag.iter().all(|s| s.contains_space(&s.image(g)))
    }

    /// `coarser` is built from a subflag, i.e. P ⊆ coarser.
    pub fn is_contained_in(&self, coarser: &FlagParabolic) -> bool {
        coarser.flag.iter().all(|s| self.flag.contains(s))
    }

    pub fn translate(&self, g: &Mat) -> FlagParabolic {
        let mut f: Vec<Subspace> = self.flag.iter().map(|s| s.image(g)).collect();
        f.sort_by_key(|s| s.dim());
        FlagParabolic { flag: f }
    }

    /// All parabolics containing this one (self-dual subflags for sp).
    pub fn subflags(&self, alg: &MatrixLieAlgebra) -> Vec<FlagParabolic> {
        let r = self.flag.len();
        let mut out = Vec::new();
        for m in 0u32..(1 << r) {
            let f: Vec<Subspace> = (0..r).filter(|i| m & (1 << i) != 0).map(|i| self.flag[i].clone()).collect();
            if let Ok(p) = FlagParabolic::new(alg, f) {
                out.push(p);
            }
        }
        out
    }

    /// Standard parabolic of the same type: the simple roots of the Levi are
    /// those not cut by an (isotropic) flag dimension.
    pub fn standard_type(&self, alg: &MatrixLieAlgebra) -> (RootType, usize, Par) {
        let dims = self.dims();
        match alg.kind {
            AlgKind::Gl => {
                let rank = alg.n - 1;
                let idx: Vec<usize> = (0..rank).filter(|i| !dims.contains(&(i + 1))).collect();
                (RootType::A, rank, Par::from_indices(&idx))
            }
            AlgKind::Sp(_) => {
                let rank = alg.n / 2;
                let idx: Vec<usize> = (0..rank).filter(|i| !dims.contains(&(i + 1))).collect();
                (RootType::C, rank, Par::from_indices(&idx))
            }
        }
    }
}

/// γ ∈ P^infl: the range of Ad γ - id on Lie P contains the nilradical.
pub fn p_infl_member(alg: &MatrixLieAlgebra, gamma: &Mat, p: &FlagParabolic) -> Result<bool> {
    if !p.contains_map(gamma) {
        return Err(Error::Domain("γ does not stabilise the flag".into()));
    }
    let n = alg.n;
    let gi = gamma.inverse().ok_or_else(|| Error::Domain("γ is singular".into()))?;
    let range: Vec<Vec<Q>> =
        to_mats(n, &p.lie(alg)).iter().map(|z| gamma.mul(z).mul(&gi).sub(z).flatten()).collect();
    Ok(Subspace::span(n * n, &range).contains_space(&p.nilradical(alg)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TruncClass {
    /// the geometric class is a single truncation class
    Single,
    Split,
    Anisotropic,
    Undetermined,
}

impl TruncClass {
    pub fn label(self) -> &'static str {
        match self {
            TruncClass::Single => "C",
            TruncClass::Split => "O'",
            TruncClass::Anisotropic => "O",
            TruncClass::Undetermined => "?",
        }
    }
}

/// Single for gl; for the sp classes [2,2] and [4,2] split or anisotropic
/// according to whether the discriminant of b_+ is a rational square.
pub fn truncation_class(alg: &MatrixLieAlgebra, x: &Mat) -> Result<TruncClass> {
    match alg.kind {
        AlgKind::Gl => {
            jordan_type(x)?;
            Ok(TruncClass::Single)
        }
        AlgKind::Sp(_) => {
            let b = b_forms(x, alg)?;
            Ok(if b.is_split() { TruncClass::Split } else { TruncClass::Anisotropic })
        }
    }
}

#[derive(Clone, Debug)]
pub struct NamedSubspace {
    pub name: String,
    pub space: Subspace,
}

fn power_name(base: &str, k: usize) -> String {
    if k == 1 {
        format!("{base} X")
    } else {
        format!("{base} X^{k}")
    }
}

/// Subspaces with their customary names, most specific first: the canonical
/// flag of the catalog partitions, Ker/Im of powers of X, and the lifts of
/// isotropic lines of b_± in split symplectic cases.
pub fn named_subspaces(alg: &MatrixLieAlgebra, x: &Mat) -> Result<Vec<NamedSubspace>> {
    let n = alg.n;
    let p = jordan_type(x)?;
    let k = |i| kernel_power(x, i);
    let im = |i| image_power(x, i);
    let mut out = Vec::new();
    let mut push = |name: &str, space: Subspace| out.push(NamedSubspace { name: name.into(), space });
    match (&alg.kind, p.as_slice()) {
        (AlgKind::Gl, [2, 1]) => {
            push("V-", im(1));
            push("V+", k(1));
        }
        (AlgKind::Gl, [3, 1]) => {
            push("V-", im(2));
            push("V+", k(2));
        }
        (AlgKind::Sp(_), [2, 2]) => push("V0", k(1)),
        (AlgKind::Sp(_), [4, 2]) => {
            push("V-", im(3));
            push("V0", k(2).intersect(&im(1)));
            push("V+", k(3));
        }
        _ => {}
    }
    for i in 1..n as u32 {
        push(&power_name("Ker", i as usize), k(i));
        push(&power_name("Im", i as usize), im(i));
    }
    if let (AlgKind::Sp(j), [2, 2] | [4, 2]) = (&alg.kind, p.as_slice()) {
        let b = b_forms(x, alg)?;
        for (c, letter) in b.isotropic_coords().iter().zip(["U", "W"]) {
            let plus = b.plus_lift(c);
            let minus = plus.image(x).sum(&b.minus_bottom);
            if plus.perp(j) != minus {
                return Err(Error::Consistency(format!("{letter}+ perp differs from X {letter}+")));
            }
            push(&format!("{letter}-"), minus);
            push(&format!("{letter}+"), plus);
        }
    }
    Ok(out.into_iter().filter(|s| !s.space.is_zero() && !s.space.is_full()).collect())
}

/// Closure of the named subspaces under sum, intersection and ⊥ (for sp),
/// named by the first matching entry, new elements as L1, L2, ...
pub fn subspace_lattice(alg: &MatrixLieAlgebra, x: &Mat) -> Result<Vec<NamedSubspace>> {
    const CAP: usize = 96;
    let n = alg.n;
    let named = named_subspaces(alg, x)?;
    let mut elems: Vec<Subspace> = Vec::new();
    let add = |s: Subspace, elems: &mut Vec<Subspace>| -> bool {
        if s.is_zero() || s.is_full() || elems.contains(&s) {
            return false;
        }
        elems.push(s);
        true
    };
    for s in &named {
        add(s.space.clone(), &mut elems);
    }
    loop {
        let mut grew = false;
        let cur = elems.clone();
        for (i, a) in cur.iter().enumerate() {
            if let Some(j) = alg.form() {
                grew |= add(a.perp(j), &mut elems);
            }
            for b in &cur[i + 1..] {
                grew |= add(a.sum(b), &mut elems);
                grew |= add(a.intersect(b), &mut elems);
            }
        }
        if elems.len() > CAP {
            return Err(Error::Completeness(format!("subspace lattice exceeds {CAP} elements")));
        }
        if !grew {
            break;
        }
    }
    let mut fresh = 0;
    Ok(elems
        .into_iter()
        .map(|s| {
            let name = match named.iter().find(|m| m.space == s) {
                Some(m) => m.name.clone(),
                None => {
                    fresh += 1;
                    format!("L{fresh}")
                }
            };
            debug_assert_eq!(s.ambient(), n);
            NamedSubspace { name, space: s }
        })
        .collect())
}

/// How N^[γ] is assigned at a vertex.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NGamma {
    /// the nilradical of the vertex `target` (equal to the vertex itself when no arrow)
    Nilradical { target: usize },
    /// an Ad P-stable subalgebra that is not a nilradical
    Explicit {
        rule: String,
        dim: usize,
        #[serde(skip)]
        space: Subspace,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct Vertex {
    pub names: Vec<String>,
    pub dims: Vec<usize>,
    /// basis vectors of each flag member, entries as rational strings
    pub bases: Vec<Vec<Vec<String>>>,
    pub ngamma: NGamma,
    #[serde(skip)]
    pub parabolic: FlagParabolic,
}

impl Vertex {
    pub fn label(&self) -> String {
        format!("{{{}}}", self.names.join(","))
    }

    pub fn name_set(&self) -> BTreeSet<String> {
        self.names.iter().cloned().collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InflDiagram {
    pub group: String,
    pub partition: Partition,
    pub class: TruncClass,
    pub vertices: Vec<Vertex>,
    /// Hasse covers (finer, coarser)
    pub edges: Vec<(usize, usize)>,
    /// P ↦ P′ with N^[γ] = N_{P′}, P′ ≠ P
    pub arrows: Vec<(usize, usize)>,
    pub candidates: usize,
    pub probes: usize,
}

impl InflDiagram {
    pub fn find(&self, names: &[&str]) -> Option<usize> {
        let want: BTreeSet<String> = names.iter().map(|s| s.to_string()).collect();
        self.vertices.iter().position(|v| v.name_set() == want)
    }

    pub fn label_sets(&self) -> BTreeSet<BTreeSet<String>> {
        self.vertices.iter().map(|v| v.name_set()).collect()
    }

    /// Edges and arrows as pairs of name sets.
    pub fn named_edges(&self) -> BTreeSet<(BTreeSet<String>, BTreeSet<String>)> {
        self.edges.iter().map(|&(a, b)| (self.vertices[a].name_set(), self.vertices[b].name_set())).collect()
    }

    pub fn named_arrows(&self) -> BTreeSet<(BTreeSet<String>, BTreeSet<String>)> {
        self.arrows.iter().map(|&(a, b)| (self.vertices[a].name_set(), self.vertices[b].name_set())).collect()
    }

    /// Every parabolic containing a vertex is a vertex.
    pub fn is_upward_closed(&self, alg: &MatrixLieAlgebra) -> bool {
        let set: BTreeSet<&FlagParabolic> = self.vertices.iter().map(|v| &v.parabolic).collect();
        self.vertices.iter().all(|v| v.parabolic.subflags(alg).iter().all(|s| set.contains(s)))
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!(
            "digraph pinfl {{\n  label=\"{} {:?} class {}\";\n  rankdir=BT;\n",
            self.group,
            self.partition,
            self.class.label()
        );
        for (i, v) in self.vertices.iter().enumerate() {
            let extra = match &v.ngamma {
                NGamma::Explicit { rule, .. } => format!("\\nN' = {rule}"),
                _ => String::new(),
            };
            s += &format!("  v{i} [label=\"{}{}\"];\n", v.label().replace('∅', "{}"), extra);
        }
        for (a, b) in &self.edges {
            s += &format!("  v{a} -> v{b} [dir=none, style=solid];\n");
        }
        for (a, b) in &self.arrows {
            s += &format!("  v{a} -> v{b} [style=dashed, label=\"N'\"];\n");
        }
        s + "}\n"
    }

    fn restricted(&self, keep: &[bool]) -> Result<InflDiagram> {
        let map: BTreeMap<usize, usize> =
            keep.iter().enumerate().filter(|(_, k)| **k).enumerate().map(|(new, (old, _))| (old, new)).collect();
        let mut vertices = Vec::new();
        for (old, v) in self.vertices.iter().enumerate() {
            if !keep[old] {
                continue;
            }
            let mut v = v.clone();
            if let NGamma::Nilradical { target } = v.ngamma {
                let t = *map.get(&target).ok_or_else(|| Error::Consistency("N^[γ] target left the diagram".into()))?;
                v.ngamma = NGamma::Nilradical { target: t };
            }
            vertices.push(v);
        }
        let (edges, arrows) = hasse_and_arrows(&vertices);
        Ok(InflDiagram { vertices, edges, arrows, ..self.clone() })
    }
}

fn hasse_and_arrows(vs: &[Vertex]) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let below = |a: usize, b: usize| a != b && vs[a].parabolic.is_contained_in(&vs[b].parabolic);
    let mut edges = Vec::new();
    for a in 0..vs.len() {
        for b in 0..vs.len() {
            if below(a, b) && !(0..vs.len()).any(|c| below(a, c) && below(c, b)) {
                edges.push((a, b));
            }
        }
    }
    let arrows = vs
        .iter()
        .enumerate()
        .filter_map(|(i, v)| match v.ngamma {
            NGamma::Nilradical { target } if target != i => Some((i, target)),
            _ => None,
        })
        .collect();
    (edges, arrows)
}

fn cyclic_span(x: &Mat, v: &[Q]) -> Subspace {
    let n = x.rows;
    let mut vecs = vec![v.to_vec()];
    for _ in 1..n {
        let w = x.mul_vec(vecs.last().expect("nonempty"));
        vecs.push(w);
    }
    Subspace::span(n, &vecs)
}

fn chains(elems: &[Subspace]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..elems.len()).collect();
    order.sort_by_key(|&i| elems[i].dim());
    let mut out = Vec::new();
    fn rec(elems: &[Subspace], order: &[usize], start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for k in start..order.len() {
            let i = order[k];
            if let Some(&last) = cur.last() {
                let l: &Subspace = &elems[last];
                if l.dim() >= elems[i].dim() || !elems[i].contains_space(l) {
                    continue;
                }
            }
            cur.push(i);
            out.push(cur.clone());
            rec(elems, order, k + 1, cur, out);
            cur.pop();
        }
    }
    rec(elems, &order, 0, &mut Vec::new(), &mut out);
    out
}

/// Candidate flags from the lattice: X-stable chains (isotropic chains
/// completed by ⊥ for sp).
fn lattice_flags(alg: &MatrixLieAlgebra, x: &Mat, lattice: &[NamedSubspace]) -> Vec<FlagParabolic> {
    let stable: Vec<Subspace> = lattice
        .iter()
        .map(|s| s.space.clone())
        .filter(|s| s.contains_space(&s.image(x)))
        .filter(|s| alg.form().is_none_or(|j| s.perp(j).contains_space(s)))
        .collect();
    let mut out: BTreeSet<FlagParabolic> = BTreeSet::new();
    for c in chains(&stable) {
        let mut f: Vec<Subspace> = c.iter().map(|&i| stable[i].clone()).collect();
        if let Some(j) = alg.form() {
            let perps: Vec<Subspace> = f.iter().map(|s| s.perp(j)).collect();
            f.extend(perps);
        }
        if let Ok(p) = FlagParabolic::new(alg, f) {
            out.insert(p);
        }
    }
    out.into_iter().collect()
}

/// Random X-stable flag built from cyclic subspaces over lattice elements
/// (isotropic ones for sp).
fn random_stable_flag<R: Rng>(
    alg: &MatrixLieAlgebra,
    x: &Mat,
    lattice: &[NamedSubspace],
    rng: &mut R,
) -> Option<FlagParabolic> {
    let n = alg.n;
    let mut pool: Vec<Subspace> = vec![Subspace::zero(n), Subspace::full(n)];
    pool.extend(lattice.iter().map(|s| s.space.clone()).filter(|s| s.contains_space(&s.image(x))));
    match alg.form() {
        None => {
            let base = pool[rng.gen_range(0..pool.len())].clone();
            let host = pool[rng.gen_range(0..pool.len())].clone();
            let w1 = base.sum(&cyclic_span(x, &random_in(&host, rng)));
            let mut f = vec![w1.clone()];
            if rng.gen_bool(0.5) {
                let host2 = pool[rng.gen_range(0..pool.len())].clone();
                f.push(w1.sum(&cyclic_span(x, &random_in(&host2, rng))));
            }
            let f: Vec<Subspace> = f.into_iter().filter(|s| !s.is_zero() && !s.is_full()).collect();
            if f.is_empty() {
                return None;
            }
            FlagParabolic::new(alg, f).ok()
        }
        Some(j) => {
            let iso: Vec<Subspace> = pool.iter().filter(|s| s.perp(j).contains_space(s)).cloned().collect();
            let host = iso[rng.gen_range(0..iso.len())].clone();
            let subs: Vec<&Subspace> = iso.iter().filter(|s| host.contains_space(s)).collect();
            let base = subs[rng.gen_range(0..subs.len())].clone();
            let w = base.sum(&cyclic_span(x, &random_in(&host, rng)));
            if w.is_zero() {
                return None;
            }
            let mut f = vec![w.clone(), w.perp(j)];
            if rng.gen_bool(0.5) {
                let w2 = w.sum(&cyclic_span(x, &random_in(&w.perp(j), rng)));
                if w2.perp(j).contains_space(&w2) {
                    f.push(w2.clone());
                    f.push(w2.perp(j));
                }
            }
            let f: Vec<Subspace> = f.into_iter().filter(|s| !s.is_full()).collect();
            FlagParabolic::new(alg, f).ok()
        }
    }
}

fn name_flag(p: &FlagParabolic, lattice: &[NamedSubspace]) -> Vec<String> {
    p.flag
        .iter()
        .map(|s| lattice.iter().find(|l| &l.space == s).map(|l| l.name.clone()).unwrap_or_else(|| "?".into()))
        .collect()
}

fn basis_strings(p: &FlagParabolic) -> Vec<Vec<Vec<String>>> {
    p.flag.iter().map(|s| s.basis().iter().map(|v| v.iter().map(fmt_q).collect()).collect()).collect()
}

/// The parabolic P′ ⊇ P generated by all subflags whose nilradical lies in u′:
/// the smallest parabolic containing P with unipotent radical inside U′.
pub fn rule_target(alg: &MatrixLieAlgebra, u1: &Subspace, p: &FlagParabolic) -> FlagParabolic {
    let mut keep: BTreeSet<Subspace> = BTreeSet::new();
    for s in p.subflags(alg) {
        if u1.contains_space(&s.nilradical(alg)) {
            keep.extend(s.flag.iter().cloned());
        }
    }
    FlagParabolic { flag: p.flag.iter().filter(|s| keep.contains(*s)).cloned().collect() }
}

/// The explicit non-nilradical choices for the split class [4,2] of sp_6:
/// n′ = {Z ∈ n | ZV ⊂ U_-, ZU_+ = 0} on (U_-, U_+) and
/// n′ = {Z ∈ n | ZU_+ ⊂ V_-, ZV_+ ⊂ U_-} on (V_-, U_-, U_+, V_+), same for W.
pub fn explicit_ngamma(alg: &MatrixLieAlgebra, names: &[String], p: &FlagParabolic) -> Option<(String, Subspace)> {
    if GroupKind::of(alg) != GroupKind::Sp || alg.n != 6 {
        return None;
    }
    let nm: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let letter = match nm.as_slice() {
        [a, b] | [_, a, b, _] if a.len() == 2 && b.len() == 2 && a[1..] == *"-" && b[1..] == *"+" => &a[..1],
        _ => return None,
    };
    if letter != "U" && letter != "W" {
        return None;
    }
    // staircase shapes on the levels 0 ⊂ V_1 ⊂ ... ⊂ V
    let (s, rule) = if nm.len() == 2 {
        (vec![0, 0, 1], format!("{{Z in n | ZV in {letter}-, Z{letter}+ = 0}}"))
    } else if nm[0] == "V-" && nm[3] == "V+" {
        (vec![0, 1, 1, 2, 4], format!("{{Z in n | Z{letter}+ in V-, ZV+ in {letter}-}}"))
    } else {
        return None;
    };
    Some((rule, p.staircase(alg, &s)))
}

/// All parabolics P with γ = exp X in P^infl, from the lattice generated by
/// Ker X^i, Im X^j (and the b_± isotropic lines in split cases), probed by
/// `probes` random X-stable flags.
pub fn enumerate_p_infl(alg: &MatrixLieAlgebra, x: &Mat, probes: usize, seed: u64) -> Result<InflDiagram> {
    if !alg.contains(x) || !is_nilpotent(x) {
        return Err(Error::Domain("X must be a nilpotent element of the algebra".into()));
    }
    let partition = jordan_type(x)?;
    let class = truncation_class(alg, x).unwrap_or(TruncClass::Undetermined);
    let cd = canonical_data(x, alg)?;
    let gamma = exp_nil(x);
    let lattice = subspace_lattice(alg, x)?;
    let cands = lattice_flags(alg, x, &lattice);
    let mut members: Vec<FlagParabolic> = vec![FlagParabolic::whole()];
    for p in &cands {
        if p_infl_member(alg, &gamma, p)? {
            members.push(p.clone());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..probes {
        if let Some(p) = random_stable_flag(alg, x, &lattice, &mut rng) {
            if !members.contains(&p) && p_infl_member(alg, &gamma, &p)? {
                return Err(Error::Completeness(format!(
                    "random flag of type {:?} is in the diagram but outside the lattice",
                    p.dims()
                )));
            }
        }
    }
    members.sort_by(|a, b| a.flag.len().cmp(&b.flag.len()).then_with(|| name_flag(a, &lattice).cmp(&name_flag(b, &lattice))));
    let index: BTreeMap<FlagParabolic, usize> = members.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut vertices = Vec::new();
    for p in &members {
        let names = name_flag(p, &lattice);
        let ngamma = match explicit_ngamma(alg, &names, p).filter(|_| class == TruncClass::Split) {
            Some((rule, space)) => NGamma::Explicit { rule, dim: space.dim(), space },
            None => {
                let t = rule_target(alg, &cd.u1, p);
                let target = *index.get(&t).ok_or_else(|| Error::Consistency("P′ is not in the diagram".into()))?;
                NGamma::Nilradical { target }
            }
        };
        vertices.push(Vertex { names, dims: p.dims(), bases: basis_strings(p), ngamma, parabolic: p.clone() });
    }
    let (edges, arrows) = hasse_and_arrows(&vertices);
    let d = InflDiagram {
        group: alg.label(),
        partition,
        class,
        vertices,
        edges,
        arrows,
        candidates: cands.len(),
        probes,
    };
    if !d.is_upward_closed(alg) {
        return Err(Error::Consistency("diagram is not closed under passing to larger parabolics".into()));
    }
    Ok(d)
}

/// Order of truncation classes by inclusion of their diagrams, compared on
/// the canonically named (Ker/Im) vertices: returns the pairs (a, b) with a < b.
pub fn truncation_order(partition: &[usize]) -> Result<Vec<(TruncClass, TruncClass)>> {
    let mut sets: Vec<(TruncClass, BTreeSet<BTreeSet<String>>)> = Vec::new();
    for co in [[1, 1], [1, -1]] {
        let (x, j) = sp_representative(partition, &co)?;
        let alg = MatrixLieAlgebra::sp(j)?;
        let c = truncation_class(&alg, &x)?;
        if sets.iter().all(|(d, _)| *d != c) {
            sets.push((c, enumerate_p_infl(&alg, &x, 0, DEFAULT_SEED)?.label_sets()));
        }
    }
    if sets.len() != 2 {
        return Err(Error::Consistency("normal forms do not realise both truncation classes".into()));
    }
    let mut out = Vec::new();
    for (a, sa) in &sets {
        for (b, sb) in &sets {
            if a != b && sa.is_subset(sb) {
                out.push((*a, *b));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct MinInfl {
    pub full: InflDiagram,
    pub diagram: InflDiagram,
    /// truncation classes met by γN, per vertex of the full diagram
    pub met: Vec<Vec<TruncClass>>,
    pub order: Vec<(TruncClass, TruncClass)>,
}

/// The vertices P of the full diagram where γ's truncation class is minimal
/// among the classes met by γN, found from `samples` random points of γN.
pub fn min_infl(alg: &MatrixLieAlgebra, x: &Mat, samples: usize, seed: u64) -> Result<MinInfl> {
    let full = enumerate_p_infl(alg, x, 0, seed)?;
    let own = full.class;
    if matches!(own, TruncClass::Single | TruncClass::Undetermined) {
        let met = vec![vec![own]; full.vertices.len()];
        return Ok(MinInfl { diagram: full.clone(), full, met, order: Vec::new() });
    }
    let order = truncation_order(&full.partition)?;
    let gamma = exp_nil(x);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut met = Vec::new();
    let mut keep = Vec::new();
    for v in &full.vertices {
        let nil = v.parabolic.nilradical(alg);
        let mut found: BTreeSet<TruncClass> = BTreeSet::from([own]);
        for _ in 0..samples {
            let z = Mat::unflatten(alg.n, &random_in(&nil, &mut rng));
            let y = log_unip(&gamma.mul(&exp_nil(&z)));
            if jordan_type(&y)? == full.partition {
                found.insert(truncation_class(alg, &y)?);
            }
        }
        let minimal: Vec<TruncClass> =
            found.iter().copied().filter(|c| !found.iter().any(|d| order.contains(&(*d, *c)))).collect();
        if minimal.len() != 1 {
            return Err(Error::Consistency(format!("minimal truncation class not unique at {}", v.label())));
        }
        keep.push(minimal[0] == own);
        met.push(found.into_iter().collect());
    }
    let diagram = full.restricted(&keep)?;
    Ok(MinInfl { full, diagram, met, order })
}

#[derive(Clone, Debug, Serialize)]
pub struct NgammaCheck {
    pub passed: bool,
    pub in_class: usize,
    pub attempts: usize,
}

/// Hypothesis (ii) for γN′: all sampled elements of γN′ in the class of γ
/// have the canonical flag of γ.
pub fn verify_ngamma(
    alg: &MatrixLieAlgebra,
    x: &Mat,
    p: &FlagParabolic,
    nprime: &Subspace,
    samples: usize,
    seed: u64,
) -> Result<NgammaCheck> {
    let n = alg.n;
    if !p.contains_map(x) {
        return Err(Error::Domain("γ is not in P".into()));
    }
    let nil = p.nilradical(alg);
    if !nil.contains_space(nprime) {
        return Err(Error::Domain("N′ is not inside the nilradical".into()));
    }
    let lie = to_mats(n, &p.lie(alg));
    for z in to_mats(n, nprime) {
        if lie.iter().any(|w| !nprime.contains(&Mat::commutator(w, &z).flatten())) {
            return Err(Error::Domain("N′ is not normalised by P".into()));
        }
    }
    if nprime.is_zero() {
        return Ok(NgammaCheck { passed: true, in_class: 0, attempts: 0 });
    }
    let part = jordan_type(x)?;
    let flag = weight_filtration(x);
    let gamma = exp_nil(x);
    let orbit_dim = |y: &Mat| {
        let cols: Vec<Vec<Q>> = alg.basis.iter().map(|b| Mat::commutator(b, y).flatten()).collect();
        Mat::from_cols(n * n, &cols).rank()
    };
    let dim_c = orbit_dim(x);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut in_class, mut attempts) = (0, 0);
    while in_class < samples && attempts < 4 * samples {
        attempts += 1;
        let z = Mat::unflatten(n, &random_in(nprime, &mut rng));
        let y = log_unip(&gamma.mul(&exp_nil(&z)));
        if jordan_type(&y)? != part || orbit_dim(&y) != dim_c {
            continue;
        }
        in_class += 1;
        if weight_filtration(&y) != flag {
            return Ok(NgammaCheck { passed: false, in_class, attempts });
        }
    }
    if in_class < samples {
        return Err(Error::Inconclusive(format!("only {in_class} of {attempts} samples of γN′ lie in the class")));
    }
    Ok(NgammaCheck { passed: true, in_class, attempts })
}

#[derive(Clone, Debug, Serialize)]
pub struct LargestNgamma {
    pub dim: usize,
    /// number of passing candidates of maximal dimension
    pub maximal: usize,
    pub tested: usize,
    #[serde(skip)]
    pub space: Subspace,
}

/// Largest Ad P-stable staircase subalgebra of n ∩ u′ passing `verify_ngamma`.
pub fn largest_ngamma(alg: &MatrixLieAlgebra, x: &Mat, p: &FlagParabolic, samples: usize, seed: u64) -> Result<LargestNgamma> {
    let cd = canonical_data(x, alg)?;
    let mut cands: Vec<Subspace> = Vec::new();
    for s in p.staircase_shapes() {
        let sp = p.staircase(alg, &s);
        if cd.u1.contains_space(&sp) && !cands.contains(&sp) {
            cands.push(sp);
        }
    }
    cands.sort_by(|a, b| b.dim().cmp(&a.dim()));
    let mut best: Option<Subspace> = None;
    let mut maximal = 0;
    let mut tested = 0;
    for c in cands {
        if let Some(b) = &best {
            if c.dim() < b.dim() {
                break;
            }
        }
        tested += 1;
        if verify_ngamma(alg, x, p, &c, samples, seed)?.passed {
            maximal += 1;
            best.get_or_insert(c);
        }
    }
    let space = best.ok_or_else(|| Error::Consistency("no staircase candidate passes, not even 0".into()))?;
    Ok(LargestNgamma { dim: space.dim(), maximal, tested, space })
}

// ---------------------------------------------------------------------------
// Induction

/// Levi factor GL(gl[0]) × ... × GL(gl[k-1]) (× Sp(sp) for sp groups).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Levi {
    pub kind: GroupKind,
    pub gl: Vec<usize>,
    /// dimension of the symplectic factor
    pub sp: usize,
}

impl Levi {
    pub fn dim(&self) -> usize {
        match self.kind {
            GroupKind::Gl => self.gl.iter().sum(),
            GroupKind::Sp => 2 * self.gl.iter().sum::<usize>() + self.sp,
        }
    }

    fn factors(&self) -> usize {
        self.gl.len() + usize::from(self.kind == GroupKind::Sp && self.sp > 0)
    }
}

pub fn is_symplectic(p: &[usize]) -> bool {
    let mut m: BTreeMap<usize, usize> = BTreeMap::new();
    for &x in p {
        *m.entry(x).or_default() += 1;
    }
    m.iter().all(|(k, c)| k % 2 == 0 || c % 2 == 0)
}

/// Largest symplectic partition dominated by `p`: repeatedly lower the last
/// copy of the largest odd part of odd multiplicity and raise the next part
/// smaller than it by two or more.
pub fn symplectic_collapse(p: &[usize]) -> Partition {
    assert!(p.iter().sum::<usize>() % 2 == 0, "odd size {p:?} has no symplectic collapse");
    let mut q: Vec<usize> = p.to_vec();
    q.sort_unstable_by(|a, b| b.cmp(a));
    loop {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &x in &q {
            *counts.entry(x).or_default() += 1;
        }
        let bad = counts.iter().rev().find(|(k, c)| *k % 2 == 1 && *c % 2 == 1).map(|(k, _)| *k);
        let Some(o) = bad else { break };
        let last = q.iter().rposition(|&x| x == o).expect("present");
        q[last] -= 1;
        match q[last + 1..].iter().position(|&x| x + 1 < o) {
            Some(off) => q[last + 1 + off] += 1,
            None => q.push(1),
        }
        q.retain(|&x| x > 0);
        q.sort_unstable_by(|a, b| b.cmp(a));
    }
    q
}

fn add_parts(a: &mut Vec<usize>, b: &[usize], times: usize) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += times * y;
    }
}

fn check_levi(levi: &Levi, classes: &[Partition]) -> Result<()> {
    if levi.gl.contains(&0) || levi.sp % 2 == 1 {
        return Err(Error::Domain("Levi blocks must be positive and the symplectic factor even".into()));
    }
    if levi.kind == GroupKind::Gl && levi.sp != 0 {
        return Err(Error::Domain("gl Levi has no symplectic factor".into()));
    }
    if classes.len() != levi.factors() {
        return Err(Error::Domain(format!("expected {} classes, got {}", levi.factors(), classes.len())));
    }
    for (a, c) in levi.gl.iter().zip(classes) {
        if c.iter().sum::<usize>() != *a || c.contains(&0) {
            return Err(Error::Domain(format!("class {c:?} is not a partition of {a}")));
        }
    }
    if levi.kind == GroupKind::Sp && levi.sp > 0 {
        let c = classes.last().expect("sp class");
        if c.iter().sum::<usize>() != levi.sp || !is_symplectic(c) {
            return Err(Error::Domain(format!("class {c:?} is not a symplectic partition of {}", levi.sp)));
        }
    }
    Ok(())
}

/// Induced partition: columnwise sum for gl; for sp the symplectic part plus
/// twice each gl part, then the symplectic collapse.
pub fn induce_partition(levi: &Levi, classes: &[Partition]) -> Result<Partition> {
    check_levi(levi, classes)?;
    let mut acc: Vec<usize> = Vec::new();
    match levi.kind {
        GroupKind::Gl => {
            for c in classes {
                add_parts(&mut acc, c, 1);
            }
            Ok(acc)
        }
        GroupKind::Sp => {
            if levi.sp > 0 {
                add_parts(&mut acc, classes.last().expect("sp class"), 1);
            }
            for c in &classes[..levi.gl.len()] {
                add_parts(&mut acc, c, 2);
            }
            Ok(symplectic_collapse(&acc))
        }
    }
}

/// Block-diagonal embedding of a Levi with its standard parabolic: gl blocks
/// on the leading coordinates, for sp mirrored on the trailing ones with
/// ω(e_i, e_{N-1-i}) = 1 and the normal-form symplectic block in the middle.
#[derive(Clone, Debug)]
pub struct StandardLevi {
    pub alg: MatrixLieAlgebra,
    pub x_m: Mat,
    pub parabolic: FlagParabolic,
    pub levi: Subspace,
}

pub fn standard_levi(levi: &Levi, classes: &[Partition]) -> Result<StandardLevi> {
    check_levi(levi, classes)?;
    let big_n = levi.dim();
    let a: usize = levi.gl.iter().sum();
    let (alg, mut x_m) = match levi.kind {
        GroupKind::Gl => (MatrixLieAlgebra::gl(big_n), Mat::zeros(big_n, big_n)),
        GroupKind::Sp => {
            let mut j = Mat::zeros(big_n, big_n);
            let mut x = Mat::zeros(big_n, big_n);
            for i in 0..a {
                j.set(i, big_n - 1 - i, Q::one());
                j.set(big_n - 1 - i, i, -Q::one());
            }
            if levi.sp > 0 {
                let (xs, js) = sp_representative(classes.last().expect("sp class"), &[])?;
                for r in 0..levi.sp {
                    for c in 0..levi.sp {
                        j.set(a + r, a + c, js.get(r, c).clone());
                        x.set(a + r, a + c, xs.get(r, c).clone());
                    }
                }
            }
            (MatrixLieAlgebra::sp(j)?, x)
        }
    };
    let mut off = 0;
    let mut flag = Vec::new();
    let mut opp = Vec::new();
    let e = Mat::identity(big_n).cols_vec();
    for (blk, c) in levi.gl.iter().zip(classes) {
        let y = gl_representative(c);
        let mut big = Mat::zeros(big_n, big_n);
        for r in 0..*blk {
            for cc in 0..*blk {
                big.set(off + r, off + cc, y.get(r, cc).clone());
            }
        }
        let piece = match &alg.kind {
            AlgKind::Gl => big,
            AlgKind::Sp(j) => {
                let ji = j.inverse().expect("nondegenerate");
                big.sub(&ji.mul(&big.transpose()).mul(j))
            }
        };
        x_m = x_m.add(&piece);
        off += blk;
        if off < big_n {
            flag.push(Subspace::span(big_n, &e[..off]));
            opp.push(Subspace::span(big_n, &e[off..]));
        }
    }
    if let Some(j) = alg.form() {
        let perps: Vec<Subspace> = flag.iter().map(|s| s.perp(j)).collect();
        let operps: Vec<Subspace> = opp.iter().map(|s| s.perp(j)).collect();
        flag.extend(perps);
        opp.extend(operps);
    }
    flag.retain(|s| !s.is_zero() && !s.is_full());
    opp.retain(|s| !s.is_zero() && !s.is_full());
    let parabolic = FlagParabolic::new(&alg, flag)?;
    let conds: Vec<(&Subspace, &Subspace)> = parabolic.flag.iter().chain(opp.iter()).map(|s| (s, s)).collect();
    let levi_alg = alg_where(&alg, &conds);
    if !alg.contains(&x_m) || !levi_alg.contains(&x_m.flatten()) {
        return Err(Error::Consistency("Levi representative outside the Levi algebra".into()));
    }
    Ok(StandardLevi { alg, x_m, parabolic, levi: levi_alg })
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub partition: Partition,
    pub samples: usize,
    /// dim P·Y for the accepted samples and the expected dim M·X_M + dim n
    pub p_orbit_dim: usize,
    pub expected_p_orbit_dim: usize,
    /// dim G·Y and the expected dim M·X_M + 2 dim n
    pub g_orbit_dim: usize,
    pub expected_g_orbit_dim: usize,
}

fn ad_rank(n: usize, basis: &[Mat], y: &Mat) -> usize {
    let cols: Vec<Vec<Q>> = basis.iter().map(|b| Mat::commutator(b, y).flatten()).collect();
    if cols.is_empty() {
        return 0;
    }
    Mat::from_cols(n * n, &cols).rank()
}

/// Jordan type of exp(X_M)·exp(Z) for random Z in the nilradical, sampled
/// until five consecutive agreements.
pub fn induced_jordan_type<R: Rng>(
    alg: &MatrixLieAlgebra,
    x_m: &Mat,
    p: &FlagParabolic,
    levi: &Subspace,
    rng: &mut R,
) -> Result<OracleResult> {
    let n = alg.n;
    let nil = p.nilradical(alg);
    let lie = to_mats(n, &p.lie(alg));
    let m_basis = to_mats(n, levi);
    let gamma = exp_nil(x_m);
    let expected_p = ad_rank(n, &m_basis, x_m) + nil.dim();
    let expected_g = ad_rank(n, &m_basis, x_m) + 2 * nil.dim();
    let mut last: Option<(Partition, usize, usize)> = None;
    let mut streak = 0;
    for k in 1..=60 {
        let z = Mat::unflatten(n, &random_in(&nil, rng));
        let y = log_unip(&gamma.mul(&exp_nil(&z)));
        let cur = (jordan_type(&y)?, ad_rank(n, &lie, &y), ad_rank(n, &alg.basis, &y));
        if last.as_ref() == Some(&cur) {
            streak += 1;
        } else {
            streak = 1;
            last = Some(cur);
        }
        if streak == 5 {
            let (partition, pd, gd) = last.expect("set");
            return Ok(OracleResult {
                partition,
                samples: k,
                p_orbit_dim: pd,
                expected_p_orbit_dim: expected_p,
                g_orbit_dim: gd,
                expected_g_orbit_dim: expected_g,
            });
        }
    }
    Err(Error::Inconclusive("induced Jordan type did not stabilise in 60 samples".into()))
}

pub fn generic_induced_oracle<R: Rng>(levi: &Levi, classes: &[Partition], rng: &mut R) -> Result<OracleResult> {
    let s = standard_levi(levi, classes)?;
    induced_jordan_type(&s.alg, &s.x_m, &s.parabolic, &s.levi, rng)
}

#[derive(Clone, Debug, Serialize)]
pub struct Transitivity {
    pub direct_rule: Partition,
    pub staged_rule: Partition,
    pub direct_oracle: Partition,
    pub staged_oracle: Partition,
}

impl Transitivity {
    pub fn holds(&self) -> bool {
        self.direct_rule == self.staged_rule
            && self.direct_oracle == self.staged_oracle
            && self.direct_rule == self.direct_oracle
    }
}

/// Ind_M^G against Ind_{M′}^G Ind_M^{M′}, where M′ merges consecutive gl
/// blocks of M according to `grouping`; gl blocks beyond the grouping are
/// absorbed into the symplectic factor of M′.
pub fn transitivity_check<R: Rng>(
    levi: &Levi,
    classes: &[Partition],
    grouping: &[usize],
    rng: &mut R,
) -> Result<Transitivity> {
    check_levi(levi, classes)?;
    let used: usize = grouping.iter().sum();
    if used > levi.gl.len() || grouping.contains(&0) || (levi.kind == GroupKind::Gl && used != levi.gl.len()) {
        return Err(Error::Domain("grouping does not describe a Levi between M and G".into()));
    }
    let gl_classes = &classes[..levi.gl.len()];
    let sp_class: Option<&Partition> = if levi.kind == GroupKind::Sp && levi.sp > 0 { classes.last() } else { None };
    let mut coarse = Levi { kind: levi.kind, gl: Vec::new(), sp: 0 };
    let mut rule_mid: Vec<Partition> = Vec::new();
    let mut oracle_mid: Vec<Partition> = Vec::new();
    let mut at = 0;
    for &g in grouping {
        let sub = Levi { kind: GroupKind::Gl, gl: levi.gl[at..at + g].to_vec(), sp: 0 };
        let cls = &gl_classes[at..at + g];
        rule_mid.push(induce_partition(&sub, cls)?);
        oracle_mid.push(generic_induced_oracle(&sub, cls, rng)?.partition);
        coarse.gl.push(sub.gl.iter().sum());
        at += g;
    }
    if levi.kind == GroupKind::Sp {
        let sub = Levi { kind: GroupKind::Sp, gl: levi.gl[at..].to_vec(), sp: levi.sp };
        let mut cls: Vec<Partition> = gl_classes[at..].to_vec();
        cls.extend(sp_class.cloned());
        coarse.sp = sub.dim();
        if coarse.sp > 0 {
            if sub.factors() == 1 && sub.gl.is_empty() {
                rule_mid.push(cls[0].clone());
                oracle_mid.push(cls[0].clone());
            } else {
                rule_mid.push(induce_partition(&sub, &cls)?);
                oracle_mid.push(generic_induced_oracle(&sub, &cls, rng)?.partition);
            }
        }
    }
    Ok(Transitivity {
        direct_rule: induce_partition(levi, classes)?,
        staged_rule: induce_partition(&coarse, &rule_mid)?,
        direct_oracle: generic_induced_oracle(levi, classes, rng)?.partition,
        staged_oracle: generic_induced_oracle(&coarse, &oracle_mid, rng)?.partition,
    })
}

/// Ordered compositions of n.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Partitions of n in decreasing order of parts.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn symplectic_partitions(n: usize) -> Vec<Partition> {
    partitions(n).into_iter().filter(|p| is_symplectic(p)).collect()
}

/// Every class datum on every Levi of the given group: (levi, classes).
pub fn all_levi_data(kind: GroupKind, n: usize) -> Vec<(Levi, Vec<Partition>)> {
    let mut out = Vec::new();
    let levis: Vec<Levi> = match kind {
        GroupKind::Gl => compositions(n).into_iter().map(|gl| Levi { kind, gl, sp: 0 }).collect(),
        GroupKind::Sp => (0..=n / 2)
            .flat_map(|a| compositions(a).into_iter().map(move |gl| Levi { kind, gl, sp: n - 2 * a }))
            .collect(),
    };
    for levi in levis {
        let mut lists: Vec<Vec<Partition>> = levi.gl.iter().map(|&a| partitions(a)).collect();
        if kind == GroupKind::Sp && levi.sp > 0 {
            lists.push(symplectic_partitions(levi.sp));
        }
        let mut combos: Vec<Vec<Partition>> = vec![Vec::new()];
        for l in lists {
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    l.iter().map(move |p| {
                        let mut c = c.clone();
                        c.push(p.clone());
                        c
                    })
                })
                .collect();
        }
        for c in combos {
            out.push((levi.clone(), c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collapse_examples() {
        assert_eq!(symplectic_collapse(&[3, 1]), vec![2, 2]);
        assert_eq!(symplectic_collapse(&[4, 2]), vec![4, 2]);
        assert_eq!(symplectic_collapse(&[3, 2, 1]), vec![2, 2, 2]);
        assert_eq!(symplectic_collapse(&[5, 1]), vec![4, 2]);
        assert!(is_symplectic(&[3, 3, 2]));
        assert!(!is_symplectic(&[3, 2, 1]));
    }

    #[test]
    fn gl_rule_examples() {
        let l = Levi { kind: GroupKind::Gl, gl: vec![1, 1, 1], sp: 0 };
        assert_eq!(induce_partition(&l, &[vec![1], vec![1], vec![1]]).unwrap(), vec![3]);
        let l = Levi { kind: GroupKind::Gl, gl: vec![3], sp: 0 };
        assert_eq!(induce_partition(&l, &[vec![2, 1]]).unwrap(), vec![2, 1]);
        let l = Levi { kind: GroupKind::Gl, gl: vec![2, 1], sp: 0 };
        assert_eq!(induce_partition(&l, &[vec![2], vec![1]]).unwrap(), vec![3]);
        assert!(induce_partition(&l, &[vec![1], vec![1]]).is_err());
    }

    #[test]
    fn counting() {
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(compositions(4).len(), 8);
        assert_eq!(symplectic_partitions(4), vec![vec![4], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
    }
}
