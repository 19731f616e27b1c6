//! The poset of congruence orbits, indexed by involutions and ordered by
//! the entrywise order of their rank-control matrices.

use std::collections::BTreeMap;
use std::fmt::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::involution_to_monomial;
use crate::error::{Error, Result};
use crate::involution::{enumerate_involutions, Involution};
use crate::linalg::{Matrix, Rational};
use crate::rank_control::{rank_control, RankControlMatrix};

/// Dimension of the space of `n x n` anti-symmetric matrices.
pub fn antisymmetric_dimension(n: usize) -> usize {
    n * (n - 1) / 2
}

pub fn involution_rank_control(p: &Involution) -> RankControlMatrix {
    rank_control(&involution_to_monomial(p).to_matrix()).expect("square")
}

/// The equality count of the rank-control matrix of `p`'s monomial form.
pub fn a_parameter(p: &Involution) -> usize {
    involution_rank_control(p).count_a()
}

/// Orbit closure dimension from the equality count.
pub fn dim_by_a(p: &Involution) -> usize {
    antisymmetric_dimension(p.n()) - a_parameter(p)
}

/// `Σ (n - a)` over fixed points `a`.
pub fn fixed_point_sum(p: &Involution) -> usize {
    p.fixed_points().iter().map(|a| p.n() - a).sum()
}

/// Orbit closure dimension from canonic-word inversions and fixed points.
pub fn dim_by_secfm(p: &Involution) -> usize {
    antisymmetric_dimension(p.n()) - (p.canonic_word().inversions() + fixed_point_sum(p))
}

/// Orbit dimension as the rank of the tangent map `U -> Uᵗ M + M U` from
/// upper-triangular `U` to anti-symmetric matrices, at the monomial form `M`.
pub fn orbit_dimension_oracle(p: &Involution) -> usize {
    let n = p.n();
    if n < 2 {
        return 0;
    }
    let m = involution_to_monomial(p).to_matrix();
    let targets: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut rows = Vec::with_capacity(n * (n + 1) / 2);
    for a in 0..n {
        for b in a..n {
            // (E_abᵗ M + M E_ab)[i][j] = [i = b]·M[a][j] + [j = b]·M[i][a]
            let row = targets
                .iter()
                .map(|&(i, j)| {
                    let mut v = Rational::zero();
                    if i == b {
                        v += m.get(a, j);
                    }
                    if j == b {
                        v += m.get(i, a);
                    }
                    v
                })
                .collect();
            rows.push(row);
        }
    }
    Matrix::from_rows(rows).expect("rectangular").rank()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetNode {
    pub involution: Involution,
    pub rank_control: RankControlMatrix,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPoset {
    n: usize,
    nodes: Vec<PosetNode>,
    order: Vec<Vec<bool>>,
    covers: Vec<(usize, usize)>,
}

/// Why a subset fails to be an interval `[low, high]` of an order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntervalFailure {
    Empty,
    NoMinimum,
    NoMaximum,
    /// `extra` lies between the subset's bounds but is outside the subset.
    Intruder { low: usize, high: usize, extra: usize },
}

/// Checks whether `subset` equals `{z : low <= z <= high}` for some `low`,
/// `high` in `subset`, within `universe`.
pub fn check_interval(
    subset: &[usize],
    universe: impl IntoIterator<Item = usize>,
    leq: impl Fn(usize, usize) -> bool,
) -> std::result::Result<(usize, usize), IntervalFailure> {
    if subset.is_empty() {
        return Err(IntervalFailure::Empty);
    }
    let low = *subset
        .iter()
        .find(|&&x| subset.iter().all(|&y| leq(x, y)))
        .ok_or(IntervalFailure::NoMinimum)?;
    let high = *subset
        .iter()
        .find(|&&x| subset.iter().all(|&y| leq(y, x)))
        .ok_or(IntervalFailure::NoMaximum)?;
    for z in universe {
        if leq(low, z) && leq(z, high) && !subset.contains(&z) {
            return Err(IntervalFailure::Intruder {
                low,
                high,
                extra: z,
            });
        }
    }
    Ok((low, high))
}

/// Groups of involutions sharing a fixed-point set, as indices into `nodes`.
pub fn group_by_fixed_points(involutions: &[Involution]) -> BTreeMap<Vec<usize>, Vec<usize>> {
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (idx, p) in involutions.iter().enumerate() {
        groups.entry(p.fixed_points()).or_default().push(idx);
    }
    groups
}

/// Covers of a finite order given as a dense relation: `(x, y)` with `x < y`
/// and nothing strictly between.
pub fn transitive_reduction(order: &[Vec<bool>]) -> Vec<(usize, usize)> {
    let m = order.len();
    let less = |x: usize, y: usize| x != y && order[x][y];
    let mut covers = Vec::new();
    for x in 0..m {
        for y in 0..m {
            if less(x, y) && !(0..m).any(|z| less(x, z) && less(z, y)) {
                covers.push((x, y));
            }
        }
    }
    covers
}

pub fn build_poset(n: usize) -> OrbitPoset {
    assert!(n > 0, "n must be positive");
    let nodes: Vec<PosetNode> = enumerate_involutions(n)
        .into_par_iter()
        .map(|involution| {
            let rank_control = involution_rank_control(&involution);
            let rank = antisymmetric_dimension(n) - rank_control.count_a();
            PosetNode {
                involution,
                rank_control,
                rank,
            }
        })
        .collect();
    OrbitPoset::from_nodes(n, nodes)
}

impl OrbitPoset {
    fn from_nodes(n: usize, nodes: Vec<PosetNode>) -> Self {
        let order: Vec<Vec<bool>> = nodes
            .par_iter()
            .map(|x| {
                nodes
                    .iter()
                    .map(|y| x.rank_control.leq(&y.rank_control).expect("same n"))
                    .collect()
            })
            .collect();
        let covers = transitive_reduction(&order);
        OrbitPoset {
            n,
            nodes,
            order,
            covers,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[PosetNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn order(&self) -> &[Vec<bool>] {
        &self.order
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.order[x][y]
    }

    pub fn index_of(&self, p: &Involution) -> Option<usize> {
        self.nodes.iter().position(|node| &node.involution == p)
    }

    pub fn involutions(&self) -> Vec<Involution> {
        self.nodes.iter().map(|node| node.involution.clone()).collect()
    }

    /// Every cover edge raises the rank by exactly one.
    pub fn check_graded(&self) -> bool {
        self.grading_violations().is_empty()
    }

    pub fn grading_violations(&self) -> Vec<(usize, usize)> {
        self.covers
            .iter()
            .copied()
            .filter(|&(lo, hi)| self.nodes[hi].rank != self.nodes[lo].rank + 1)
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| (0..self.len()).all(|y| y == x || !self.leq(y, x)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| (0..self.len()).all(|y| y == x || !self.leq(x, y)))
            .collect()
    }

    pub fn check_interval(&self, subset: &[usize]) -> std::result::Result<(usize, usize), IntervalFailure> {
        check_interval(subset, 0..self.len(), |x, y| self.leq(x, y))
    }

    /// Interval check for every fixed-point set, keyed by that set (1-based).
    pub fn prescribed_support_intervals(
        &self,
    ) -> BTreeMap<Vec<usize>, std::result::Result<(usize, usize), IntervalFailure>> {
        group_by_fixed_points(&self.involutions())
            .into_iter()
            .map(|(fixed, members)| (fixed, self.check_interval(&members)))
            .collect()
    }

    /// Nodes grouped by rank, highest rank first.
    pub fn levels(&self) -> Vec<(usize, Vec<usize>)> {
        let mut by_rank: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (idx, node) in self.nodes.iter().enumerate() {
            by_rank.entry(node.rank).or_default().push(idx);
        }
        by_rank.into_iter().rev().collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "orbit poset n={}: {} nodes, {} covers",
            self.n,
            self.len(),
            self.covers.len()
        )
        .unwrap();
        for (rank, members) in self.levels() {
            let labels: Vec<String> = members
                .iter()
                .map(|&i| self.nodes[i].involution.to_string())
                .collect();
            writeln!(out, "rank {rank}: {}", labels.join(" ")).unwrap();
        }
        out.push_str("covers:\n");
        for &(lo, hi) in &self.covers {
            writeln!(
                out,
                "{} < {}",
                self.nodes[lo].involution, self.nodes[hi].involution
            )
            .unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = format!("{{\n  \"n\": {},\n  \"nodes\": [\n", self.n);
        let nodes: Vec<String> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(id, node)| {
                let json = NodeJson {
                    id,
                    cycles: node.involution.to_string(),
                    rank: node.rank,
                    rank_control: node.rank_control.rows().to_vec(),
                };
                format!("    {}", serde_json::to_string(&json).expect("serializable"))
            })
            .collect();
        out.push_str(&nodes.join(",\n"));
        out.push_str("\n  ],\n  \"covers\": [");
        let covers: Vec<String> = self
            .covers
            .iter()
            .map(|(lo, hi)| format!("[{lo},{hi}]"))
            .collect();
        out.push_str(&covers.join(","));
        out.push_str("]\n}\n");
        out
    }

    /// Rebuilds a poset from its JSON export. Node data is checked against
    /// the involution labels; the order is recomputed from the rank-control
    /// matrices and must reproduce the listed covers.
    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: PosetJson =
            serde_json::from_str(text).map_err(|e| Error::Format(format!("poset JSON: {e}")))?;
        let mut nodes = Vec::with_capacity(parsed.nodes.len());
        for (expected_id, node) in parsed.nodes.into_iter().enumerate() {
            if node.id != expected_id {
                return Err(Error::Format(format!(
                    "node ids must be consecutive, found {} at position {expected_id}",
                    node.id
                )));
            }
            let involution = Involution::parse(&node.cycles, parsed.n)?;
            let rank_control = RankControlMatrix::from_rows(node.rank_control)?;
            if rank_control != involution_rank_control(&involution) {
                return Err(Error::Format(format!(
                    "rank-control matrix of node {} does not match {}",
                    node.id, involution
                )));
            }
            nodes.push(PosetNode {
                involution,
                rank_control,
                rank: node.rank,
            });
        }
        if nodes.is_empty() {
            return Err(Error::Format("poset has no nodes".into()));
        }
        let poset = OrbitPoset::from_nodes(parsed.n, nodes);
        let covers: Vec<(usize, usize)> = parsed.covers.iter().map(|c| (c[0], c[1])).collect();
        if covers != poset.covers {
            return Err(Error::Format("cover list does not match the rank-control order".into()));
        }
        Ok(poset)
    }

    /// Graphviz export: edges point from lower to upper, one `rank=same`
    /// group per level.
    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph orbit_poset_{} {{\n  rankdir=BT;\n  node [shape=box];\n", self.n);
        for (id, node) in self.nodes.iter().enumerate() {
            writeln!(
                out,
                "  n{id} [label=\"{}\\nrank {}\"];",
                node.involution, node.rank
            )
            .unwrap();
        }
        for (_, members) in self.levels() {
            let ids: Vec<String> = members.iter().map(|i| format!("n{i};")).collect();
            writeln!(out, "  {{ rank=same; {} }}", ids.join(" ")).unwrap();
        }
        for &(lo, hi) in &self.covers {
            writeln!(out, "  n{lo} -> n{hi};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct NodeJson {
    id: usize,
    cycles: String,
    rank: usize,
    rank_control: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    n: usize,
    nodes: Vec<NodeJson>,
    covers: Vec<[usize; 2]>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(text: &str, n: usize) -> Involution {
        Involution::parse(text, n).unwrap()
    }

    #[test]
    fn dimension_formulas_on_examples() {
        assert_eq!(dim_by_a(&Involution::identity(5)), 0);
        assert_eq!(dim_by_a(&inv("(1,2)", 4)), 5);
        assert_eq!(dim_by_a(&inv("(1,3)(2,4)", 4)), 5);
        assert_eq!(dim_by_secfm(&inv("(1,2)", 4)), 5);
        assert_eq!(fixed_point_sum(&inv("(1,2)", 4)), 1);
        assert_eq!(dim_by_secfm(&Involution::identity(6)), 0);
        assert_eq!(fixed_point_sum(&inv("(3,4)", 4)), 5);
        assert_eq!(dim_by_secfm(&inv("(3,4)", 4)), 1);
        assert_eq!(dim_by_secfm(&inv("(1,4)(2,3)", 4)), 4);
    }

    #[test]
    fn tangent_oracle_examples() {
        assert_eq!(orbit_dimension_oracle(&Involution::identity(4)), 0);
        assert_eq!(orbit_dimension_oracle(&Involution::identity(1)), 0);
        assert_eq!(orbit_dimension_oracle(&inv("(1,2)", 2)), 1);
        assert_eq!(orbit_dimension_oracle(&inv("(1,2)(3,4)", 4)), 6);
    }

    #[test]
    fn formulas_agree_through_n_eight() {
        for n in 1..=8 {
            for p in enumerate_involutions(n) {
                assert_eq!(dim_by_a(&p), dim_by_secfm(&p), "{p:?}");
            }
        }
    }

    #[test]
    fn oracle_agrees_through_n_five() {
        for n in 1..=5 {
            for p in enumerate_involutions(n) {
                assert_eq!(dim_by_a(&p), orbit_dimension_oracle(&p), "{p:?}");
            }
        }
    }

    #[test]
    fn small_posets() {
        let one = build_poset(1);
        assert_eq!(one.len(), 1);
        assert!(one.covers().is_empty());
        assert!(one.check_graded());

        let two = build_poset(2);
        assert_eq!(two.len(), 2);
        assert_eq!(two.covers(), &[(two.index_of(&Involution::identity(2)).unwrap(), two.index_of(&inv("(1,2)", 2)).unwrap())]);
    }

    #[test]
    fn graded_through_n_six() {
        for n in 1..=6 {
            let poset = build_poset(n);
            assert!(poset.check_graded(), "n = {n}: {:?}", poset.grading_violations());
        }
    }

    #[test]
    fn extremes() {
        for n in 1..=6 {
            let poset = build_poset(n);
            let bottom = poset.index_of(&Involution::identity(n)).unwrap();
            assert_eq!(poset.minimal_elements(), vec![bottom]);
            assert_eq!(poset.nodes()[bottom].rank, 0);
            if n % 2 == 0 {
                let top = poset.index_of(&Involution::adjacent_pairs(n).unwrap()).unwrap();
                assert_eq!(poset.maximal_elements(), vec![top]);
                assert_eq!(poset.nodes()[top].rank_control.count_a(), 0);
                assert_eq!(poset.nodes()[top].rank, antisymmetric_dimension(n));
            }
        }
    }

    #[test]
    fn fixed_point_free_involutions_form_an_interval() {
        for n in [2, 4, 6] {
            let poset = build_poset(n);
            let fpf: Vec<usize> = (0..poset.len())
                .filter(|&i| poset.nodes()[i].involution.is_fixed_point_free())
                .collect();
            let (_, high) = poset.check_interval(&fpf).unwrap();
            assert_eq!(poset.maximal_elements(), vec![high]);
        }
    }

    #[test]
    fn prescribed_supports_are_intervals() {
        for n in 1..=6 {
            for (fixed, outcome) in build_poset(n).prescribed_support_intervals() {
                assert!(outcome.is_ok(), "n = {n}, fixed {fixed:?}: {outcome:?}");
            }
        }
    }

    #[test]
    fn interval_checker_reports_failures() {
        // chain 0 < 1 < 2
        let leq = |x: usize, y: usize| x <= y;
        assert_eq!(check_interval(&[0, 2], 0..3, leq), Err(IntervalFailure::Intruder { low: 0, high: 2, extra: 1 }));
        assert_eq!(check_interval(&[1, 2], 0..3, leq), Ok((1, 2)));
        assert_eq!(check_interval(&[], 0..3, leq), Err(IntervalFailure::Empty));
        // antichain
        let eq = |x: usize, y: usize| x == y;
        assert_eq!(check_interval(&[0, 1], 0..2, eq), Err(IntervalFailure::NoMinimum));
    }

    #[test]
    fn json_round_trip() {
        for n in 1..=5 {
            let poset = build_poset(n);
            assert_eq!(OrbitPoset::from_json(&poset.to_json()).unwrap(), poset);
        }
        let poset = build_poset(3);
        let tampered = poset.to_json().replace("\"rank_control\":[[0,0,0]", "\"rank_control\":[[0,0,1]");
        assert!(OrbitPoset::from_json(&tampered).is_err());
        assert!(OrbitPoset::from_json("{}").is_err());
    }

    #[test]
    fn dot_export_shape() {
        let dot = build_poset(4).to_dot();
        assert_eq!(dot.matches("->").count(), 13);
        assert_eq!(dot.matches("[label=").count(), 10);
        assert!(dot.starts_with("digraph"));
    }
}
