//! Cayley-sudoku and pandiagonal magic Cayley-sudoku table constructions.
//!
//! [`construction1`] lays out a Cayley table with columns grouped by right
//! cosets of `H` and rows grouped by a partition of the group into complete
//! sets of left coset representatives of `H`.
//!
//! [`magic_table`] builds the table based on a central subgroup `N` of order
//! `k` and a list `T` of left coset representatives, in a group of order
//! `k^2`: columns `[N t_1], ..., [N t_k]`, rows `[T n_1], ..., [T n_k]`. It
//! refuses to emit anything unless all four hypotheses checked by
//! [`check_mcs_hypotheses`] hold.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::extraspecial::{ExtraSpecial, ExtraSpecialKind};
use crate::group::{ElementId, FiniteGroup, GroupError};
use crate::subgroup::{CosetReps, Side, Subgroup};
use crate::table::{LayoutError, SudokuTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error("group order {0} is not a perfect square")]
    NotPerfectSquare(usize),
    #[error("invalid coset input: {0}")]
    InvalidCosets(String),
    #[error("invalid representative sets: {0}")]
    InvalidRepSets(String),
    #[error("instance shape mismatch: {0}")]
    Shape(String),
    #[error("hypotheses not satisfied:\n{0}")]
    HypothesesFailed(HypothesisReport),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("exponent {exponent} does not divide k = {k}")]
    ExponentDoesNotDivide { exponent: usize, k: usize },
    #[error("subgroup has order {got}, expected k = {k}")]
    WrongSubgroupOrder { got: usize, k: usize },
    #[error("product of the subgroup's elements is not the identity")]
    SubgroupProductNontrivial,
    #[error("coset product nontrivial: the product of the elements of G/N is not N")]
    CosetProductNontrivial,
}

/// Integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: usize) -> Option<usize> {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Construction 1: columns labeled by the right cosets `[H g_1], ..., [H g_n]`,
/// rows by `[T_1], ..., [T_k]`. Blocks are `n` rows by `k` columns.
pub fn construction1(
    group: &FiniteGroup,
    h: &Subgroup,
    right_cosets: &[Vec<ElementId>],
    left_rep_sets: &[Vec<ElementId>],
) -> Result<SudokuTable, ConstructionError> {
    if h.parent() != group {
        return Err(ConstructionError::InvalidCosets("subgroup belongs to a different group".into()));
    }
    let order = group.order();
    let k = h.order();
    let n = h.index();
    if right_cosets.len() != n {
        return Err(ConstructionError::InvalidCosets(format!("{} cosets given, index is {n}", right_cosets.len())));
    }
    let right_labels = h.coset_labels(Side::Right);
    let mut covered = vec![false; order];
    for coset in right_cosets {
        let first = *coset.first().ok_or_else(|| ConstructionError::InvalidCosets("empty coset".into()))?;
        group.check_element(first)?;
        if coset.len() != k {
            return Err(ConstructionError::InvalidCosets(format!("coset of size {} for |H| = {k}", coset.len())));
        }
        for &x in coset {
            group.check_element(x)?;
            if right_labels[x.index()] != right_labels[first.index()] {
                return Err(ConstructionError::InvalidCosets(format!(
                    "{} and {} are not in the same right coset",
                    group.name(first),
                    group.name(x)
                )));
            }
            if std::mem::replace(&mut covered[x.index()], true) {
                return Err(ConstructionError::InvalidCosets(format!("{} appears twice", group.name(x))));
            }
        }
    }
    if left_rep_sets.len() != k {
        return Err(ConstructionError::InvalidRepSets(format!("{} sets given, |H| is {k}", left_rep_sets.len())));
    }
    let left_labels = h.coset_labels(Side::Left);
    let mut covered = vec![false; order];
    for set in left_rep_sets {
        if set.len() != n {
            return Err(ConstructionError::InvalidRepSets(format!("set of size {} for index {n}", set.len())));
        }
        let mut hit = vec![false; n];
        for &x in set {
            group.check_element(x)?;
            if std::mem::replace(&mut hit[left_labels[x.index()]], true) {
                return Err(ConstructionError::InvalidRepSets(format!(
                    "a set meets the left coset of {} twice",
                    group.name(x)
                )));
            }
            if std::mem::replace(&mut covered[x.index()], true) {
                return Err(ConstructionError::InvalidRepSets(format!("{} appears twice", group.name(x))));
            }
        }
    }
    let cols: Vec<ElementId> = right_cosets.concat();
    let rows: Vec<ElementId> = left_rep_sets.concat();
    Ok(SudokuTable::from_labels(group, rows, cols, n, k)?)
}

/// Canonical inputs for [`construction1`]: right cosets `H g_j` over the
/// canonical right representatives, each ordered `h_1 g_j, h_2 g_j, ...`, and
/// rep sets `T_i = [t_1 h_i, ..., t_n h_i]` over the canonical left
/// representatives `t_1, ..., t_n`.
pub fn canonical_construction1_inputs(h: &Subgroup) -> (Vec<Vec<ElementId>>, Vec<Vec<ElementId>>) {
    let g = h.parent();
    let cosets = h.coset_reps(Side::Right).reps().iter().map(|&r| h.coset(r, Side::Right)).collect();
    let left = h.coset_reps(Side::Left);
    let sets = h.elements().iter().map(|&hi| left.reps().iter().map(|&t| g.op(t, hi)).collect()).collect();
    (cosets, sets)
}

pub fn construction1_canonical(h: &Subgroup) -> Result<SudokuTable, ConstructionError> {
    let (cosets, sets) = canonical_construction1_inputs(h);
    construction1(h.parent(), h, &cosets, &sets)
}

/// A group of order `k^2`, a subgroup `N` listed in a fixed order, and a list
/// `T` of left coset representatives of `N`.
#[derive(Clone, Debug)]
pub struct MagicInstance {
    group: FiniteGroup,
    n: Subgroup,
    n_order: Vec<ElementId>,
    t: CosetReps,
    k: usize,
}

impl MagicInstance {
    /// `N` is listed in canonical (index) order.
    pub fn new(group: &FiniteGroup, n: Subgroup, t: CosetReps) -> Result<Self, ConstructionError> {
        let order = n.elements().to_vec();
        Self::with_n_order(group, n, order, t)
    }

    /// `N` listed as `n_order`, which must be a permutation of its elements.
    pub fn with_n_order(
        group: &FiniteGroup,
        n: Subgroup,
        n_order: Vec<ElementId>,
        t: CosetReps,
    ) -> Result<Self, ConstructionError> {
        let k = exact_sqrt(group.order()).ok_or(ConstructionError::NotPerfectSquare(group.order()))?;
        if n.parent() != group || t.parent() != group {
            return Err(ConstructionError::Shape("subgroup or representatives from another group".into()));
        }
        if t.subgroup() != &n || t.side() != Side::Left {
            return Err(ConstructionError::Shape("T must be left coset representatives of N".into()));
        }
        let mut sorted = n_order.clone();
        sorted.sort_unstable();
        if sorted != n.elements() {
            return Err(ConstructionError::Shape("N ordering is not a permutation of N".into()));
        }
        Ok(MagicInstance { group: group.clone(), n, n_order, t, k })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn n(&self) -> &Subgroup {
        &self.n
    }

    pub fn n_order(&self) -> &[ElementId] {
        &self.n_order
    }

    pub fn t(&self) -> &CosetReps {
        &self.t
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// The four hypotheses of the magic construction, each evaluated literally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub k: usize,
    pub exponent: usize,
    /// (1) `exp(G)` divides `k`.
    pub exp_divides_k: bool,
    /// (2) `N` is central and `|N| = k`.
    pub n_central_of_order_k: bool,
    /// (3) the product of the elements of `N` is the identity.
    pub n_product_trivial: bool,
    /// (4) `t_1 t_i t_2 t_i ... t_k t_i = 1` for every `i`.
    pub t_shifted_products_trivial: bool,
    /// 1-based indices `i` for which (4) fails.
    pub failing_shifts: Vec<usize>,
    pub overall: bool,
}

impl HypothesisReport {
    /// 1-based numbers of the hypotheses that fail.
    pub fn failed(&self) -> Vec<usize> {
        [self.exp_divides_k, self.n_central_of_order_k, self.n_product_trivial, self.t_shifted_products_trivial]
            .iter()
            .enumerate()
            .filter(|(_, ok)| !**ok)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

impl fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "ok" } else { "FAILED" };
        writeln!(f, "k = {}, exp(G) = {}", self.k, self.exponent)?;
        writeln!(f, "  1. exp(G) divides k: {}", mark(self.exp_divides_k))?;
        writeln!(f, "  2. N central of order k: {}", mark(self.n_central_of_order_k))?;
        writeln!(f, "  3. product of N is 1: {}", mark(self.n_product_trivial))?;
        write!(f, "  4. t_1 t_i ... t_k t_i = 1 for all i: {}", mark(self.t_shifted_products_trivial))?;
        if !self.failing_shifts.is_empty() {
            let shown: Vec<String> = self.failing_shifts.iter().take(10).map(|i| i.to_string()).collect();
            write!(f, " (fails for i = {}", shown.join(", "))?;
            if self.failing_shifts.len() > 10 {
                write!(f, ", ...")?;
            }
            write!(f, ")")?;
        }
        writeln!(f)?;
        writeln!(f, "  overall: {}", mark(self.overall))
    }
}

/// `t_1 t_i t_2 t_i ... t_k t_i`.
pub fn shifted_product(group: &FiniteGroup, t: &[ElementId], ti: ElementId) -> ElementId {
    t.iter().fold(group.identity(), |acc, &tl| group.op(group.op(acc, tl), ti))
}

pub fn check_mcs_hypotheses(inst: &MagicInstance) -> Result<HypothesisReport, ConstructionError> {
    let g = &inst.group;
    let k = exact_sqrt(g.order()).ok_or(ConstructionError::NotPerfectSquare(g.order()))?;
    let exponent = g.exponent();
    let exp_divides_k = k % exponent == 0;
    let n_central_of_order_k = inst.n.order() == k && inst.n.is_central();
    let n_product_trivial = g.product_of(inst.n_order.iter().copied()) == g.identity();
    let t = inst.t.reps();
    let failing_shifts: Vec<usize> = t
        .par_iter()
        .enumerate()
        .filter(|(_, &ti)| shifted_product(g, t, ti) != g.identity())
        .map(|(i, _)| i + 1)
        .collect();
    let t_shifted_products_trivial = failing_shifts.is_empty();
    Ok(HypothesisReport {
        k,
        exponent,
        exp_divides_k,
        n_central_of_order_k,
        n_product_trivial,
        t_shifted_products_trivial,
        failing_shifts,
        overall: exp_divides_k && n_central_of_order_k && n_product_trivial && t_shifted_products_trivial,
    })
}

/// The table based on `N` and `T`. Never emits a table when a hypothesis fails.
pub fn magic_table(inst: &MagicInstance) -> Result<SudokuTable, ConstructionError> {
    let report = check_mcs_hypotheses(inst)?;
    if !report.overall {
        return Err(ConstructionError::HypothesesFailed(report));
    }
    Ok(magic_layout(inst)?)
}

/// Table M layout without the hypothesis gate.
pub(crate) fn magic_layout(inst: &MagicInstance) -> Result<SudokuTable, LayoutError> {
    let g = &inst.group;
    let t = inst.t.reps();
    let cols: Vec<ElementId> = t.iter().flat_map(|&ti| inst.n_order.iter().map(move |&n| g.op(n, ti))).collect();
    let rows: Vec<ElementId> = inst.n_order.iter().flat_map(|&nm| t.iter().map(move |&tl| g.op(tl, nm))).collect();
    SudokuTable::from_labels(g, rows, cols, inst.k, inst.k)
}

/// Hypotheses of the abelian specialization: with them, adjusting the last
/// canonical representative yields a valid `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianHypothesisReport {
    pub abelian: bool,
    /// (1) `|G| = k^2` and `exp(G)` divides `k`.
    pub exp_divides_k: bool,
    /// (2) `|N| = k`.
    pub n_order_k: bool,
    /// (3) the product of the elements of `N` is the identity.
    pub n_product_trivial: bool,
    /// (4) the product of the elements of `G/N` is `N`.
    pub coset_product_trivial: bool,
}

impl AbelianHypothesisReport {
    pub fn failed(&self) -> Vec<usize> {
        [self.exp_divides_k, self.n_order_k, self.n_product_trivial, self.coset_product_trivial]
            .iter()
            .enumerate()
            .filter(|(_, ok)| !**ok)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn overall(&self) -> bool {
        self.abelian && self.failed().is_empty()
    }
}

pub fn check_abelian_hypotheses(
    group: &FiniteGroup,
    n: &Subgroup,
) -> Result<AbelianHypothesisReport, ConstructionError> {
    let k = exact_sqrt(group.order()).ok_or(ConstructionError::NotPerfectSquare(group.order()))?;
    let reps = n.coset_reps(Side::Left);
    let coset_product = group.product_of(reps.reps().iter().copied());
    Ok(AbelianHypothesisReport {
        abelian: group.is_abelian(),
        exp_divides_k: k % group.exponent() == 0,
        n_order_k: n.order() == k,
        n_product_trivial: group.product_of(n.elements().iter().copied()) == group.identity(),
        // product of cosets t_l N is (prod t_l) N
        coset_product_trivial: n.contains(coset_product),
    })
}

/// Representatives with trivial full product: canonical representatives with
/// the last one multiplied by the unique correcting element of `N`.
pub fn abelian_reps(group: &FiniteGroup, n: &Subgroup) -> Result<CosetReps, ConstructionError> {
    let report = check_abelian_hypotheses(group, n)?;
    if !report.abelian {
        return Err(ConstructionError::NotAbelian);
    }
    let k = exact_sqrt(group.order()).expect("checked above");
    if !report.exp_divides_k {
        return Err(ConstructionError::ExponentDoesNotDivide { exponent: group.exponent(), k });
    }
    if !report.n_order_k {
        return Err(ConstructionError::WrongSubgroupOrder { got: n.order(), k });
    }
    if !report.n_product_trivial {
        return Err(ConstructionError::SubgroupProductNontrivial);
    }
    if !report.coset_product_trivial {
        return Err(ConstructionError::CosetProductNontrivial);
    }
    let mut reps = n.coset_reps(Side::Left).reps().to_vec();
    let correction = group.inverse(group.product_of(reps.iter().copied()));
    debug_assert!(n.contains(correction));
    let last = reps.len() - 1;
    reps[last] = group.op(reps[last], correction);
    Ok(CosetReps::new(n, reps, Side::Left)?)
}

/// `G = H x H x Z_|H| x Z_|H|`, `N = 1 x 1 x Z_|H| x Z_|H|`, `k = |H|^2` and
/// `T` the elements `(h_i, h_j, 1, 1)` in lexicographic order on `(i, j)`.
pub fn build_embedding_group(h: &FiniteGroup) -> Result<MagicInstance, ConstructionError> {
    let m = h.order();
    let zm = FiniteGroup::cyclic(m)?;
    let g = FiniteGroup::product_all(&[h.clone(), h.clone(), zm.clone(), zm.clone()])?;
    let embed = |a: ElementId, b: ElementId, c: ElementId, d: ElementId| -> ElementId {
        ElementId::new(((a.index() * m + b.index()) * m + c.index()) * m + d.index())
    };
    let e = h.identity();
    let z0 = zm.identity();
    let mut n_elems: Vec<ElementId> =
        zm.elements().flat_map(|c| zm.elements().map(move |d| embed(e, e, c, d))).collect();
    n_elems.sort_unstable();
    let n = Subgroup::new(&g, &n_elems)?;
    let t: Vec<ElementId> = h.elements().flat_map(|hi| h.elements().map(move |hj| embed(hi, hj, z0, z0))).collect();
    let t = CosetReps::new(&n, t, Side::Left)?;
    MagicInstance::new(&g, n, t)
}

/// `G = E x Z_p`, `N = Z(G)`, `k = p^2` and `T = [(b^l a^k', 1)]` in
/// lexicographic order on `(l, k')`.
pub fn build_extraspecial_instance(
    p: usize,
    kind: ExtraSpecialKind,
) -> Result<(ExtraSpecial, MagicInstance), ConstructionError> {
    let e = ExtraSpecial::new(p, kind)?;
    let zp = FiniteGroup::cyclic(p)?;
    let g = FiniteGroup::direct_product(&e.group, &zp);
    let n = g.center();
    let t: Vec<ElementId> = (0..p as u64)
        .flat_map(|l| (0..p as u64).map(move |kk| (l, kk)))
        .map(|(l, kk)| ElementId::new(e.word(l, kk).index() * p + zp.identity().index()))
        .collect();
    let t = CosetReps::new(&n, t, Side::Left)?;
    let inst = MagicInstance::new(&g, n, t)?;
    Ok((e, inst))
}
