//! Nested trees: laminar families of subsets of the leaf set.
//!
//! A nested tree on `{1..n}` is a collection of subsets of size at least
//! two, pairwise nested or disjoint, containing the root `{1..n}`. Edges are
//! derived from nesting rather than stored: the children of a vertex are its
//! maximal proper subvertices, and the remaining leaves hang directly off
//! the vertex.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use thiserror::Error;

use crate::cells::Letter;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("vertex set {0:?} is not part of the tree")]
    NoSuchVertex(Vec<Letter>),
    #[error("cannot contract the root")]
    ContractRoot,
    #[error("family is not a nested tree on {{1..{n}}}: {reason}")]
    NotNested { n: u32, reason: String },
    #[error("slot {slot} out of range for arity {arity}")]
    InvalidSlot { slot: u32, arity: u32 },
}

/// A laminar family of subsets of `{1..n}`, each of size >= 2, containing
/// the root. Identity is set-of-sets equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NestedTree {
    arity: u32,
    /// sorted list of sorted vertex sets, root included
    vertices: Vec<Vec<Letter>>,
}

impl NestedTree {
    pub fn new(arity: u32, vertices: Vec<Vec<Letter>>) -> Result<Self, TreeError> {
        let mut sets: BTreeSet<Vec<Letter>> = BTreeSet::new();
        for v in vertices {
            let mut v = v;
            v.sort_unstable();
            v.dedup();
            sets.insert(v);
        }
        let root: Vec<Letter> = (1..=arity).collect();
        if arity < 2 || !sets.contains(&root) {
            return Err(TreeError::NotNested {
                n: arity,
                reason: "root missing".into(),
            });
        }
        for v in &sets {
            if v.len() < 2 {
                return Err(TreeError::NotNested {
                    n: arity,
                    reason: format!("vertex {v:?} has fewer than two leaves"),
                });
            }
            if v.iter().any(|&x| x == 0 || x > arity) {
                return Err(TreeError::NotNested {
                    n: arity,
                    reason: format!("vertex {v:?} leaves outside 1..={arity}"),
                });
            }
        }
        let vertices: Vec<Vec<Letter>> = sets.into_iter().collect();
        for (i, a) in vertices.iter().enumerate() {
            for b in vertices.iter().skip(i + 1) {
                if !nested_or_disjoint(a, b) {
                    return Err(TreeError::NotNested {
                        n: arity,
                        reason: format!("{a:?} and {b:?} cross"),
                    });
                }
            }
        }
        Ok(NestedTree { arity, vertices })
    }

    /// The tree with only the root vertex.
    pub fn corolla(arity: u32) -> Self {
        assert!(arity >= 2);
        NestedTree {
            arity,
            vertices: vec![(1..=arity).collect()],
        }
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn root(&self) -> Vec<Letter> {
        (1..=self.arity).collect()
    }

    pub fn vertices(&self) -> &[Vec<Letter>] {
        &self.vertices
    }

    pub fn contains(&self, v: &[Letter]) -> bool {
        self.vertices.iter().any(|w| w == v)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of internal edges: one per non-root vertex.
    pub fn internal_edges(&self) -> usize {
        self.vertices.len() - 1
    }

    /// The maximal proper subvertices of `v`.
    pub fn children(&self, v: &[Letter]) -> Result<Vec<Vec<Letter>>, TreeError> {
        if !self.contains(v) {
            return Err(TreeError::NoSuchVertex(v.to_vec()));
        }
        let below: Vec<&Vec<Letter>> = self
            .vertices
            .iter()
            .filter(|w| w.as_slice() != v && is_subset(w, v))
            .collect();
        let mut out: Vec<Vec<Letter>> = below
            .iter()
            .filter(|w| !below.iter().any(|x| x != *w && is_subset(w, x)))
            .map(|w| (*w).clone())
            .collect();
        out.sort();
        Ok(out)
    }

    /// The parent of a non-root vertex: the minimal vertex properly
    /// containing it.
    pub fn parent(&self, v: &[Letter]) -> Result<Vec<Letter>, TreeError> {
        if !self.contains(v) {
            return Err(TreeError::NoSuchVertex(v.to_vec()));
        }
        if v == self.root() {
            return Err(TreeError::ContractRoot);
        }
        let mut best: Option<&Vec<Letter>> = None;
        for w in &self.vertices {
            if w.as_slice() != v && is_subset(v, w) {
                match best {
                    Some(b) if w.len() >= b.len() => {}
                    _ => best = Some(w),
                }
            }
        }
        Ok(best.expect("root contains every vertex").clone())
    }

    /// The classes of a vertex: its children plus the singleton free leaves,
    /// ordered by minimal element. The decoration of the vertex has one lobe
    /// per class, in this order.
    pub fn classes(&self, v: &[Letter]) -> Result<Vec<Vec<Letter>>, TreeError> {
        let children = self.children(v)?;
        let mut taken: BTreeSet<Letter> = BTreeSet::new();
        for c in &children {
            taken.extend(c.iter().copied());
        }
        let mut out = children;
        for &leaf in v {
            if !taken.contains(&leaf) {
                out.push(vec![leaf]);
            }
        }
        out.sort_by_key(|c| c[0]);
        Ok(out)
    }

    /// Valence: the number of edges (internal or open) into the vertex.
    pub fn valence(&self, v: &[Letter]) -> Result<u32, TreeError> {
        Ok(self.classes(v)?.len() as u32)
    }

    /// Vertices in depth-first order from the root, children visited by
    /// minimal leaf label. This order fixes all Koszul bookkeeping.
    pub fn dfs_order(&self) -> Vec<Vec<Letter>> {
        let mut out = Vec::with_capacity(self.vertices.len());
        let mut stack = vec![self.root()];
        while let Some(v) = stack.pop() {
            let mut children = self.children(&v).expect("vertex exists");
            children.sort_by_key(|c| c[0]);
            out.push(v);
            for c in children.into_iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    /// Removes a non-root vertex.
    pub fn contract_edge(&self, v: &[Letter]) -> Result<NestedTree, TreeError> {
        if v == self.root() {
            return Err(TreeError::ContractRoot);
        }
        if !self.contains(v) {
            return Err(TreeError::NoSuchVertex(v.to_vec()));
        }
        Ok(NestedTree {
            arity: self.arity,
            vertices: self
                .vertices
                .iter()
                .filter(|w| w.as_slice() != v)
                .cloned()
                .collect(),
        })
    }

    /// Grafts `other` onto leaf `slot`: leaves of `other` shift up by
    /// `slot - 1`, and leaves of `self` above `slot` shift up by
    /// `other.arity() - 1`.
    pub fn graft(&self, slot: u32, other: &NestedTree) -> Result<NestedTree, TreeError> {
        if slot == 0 || slot > self.arity {
            return Err(TreeError::InvalidSlot {
                slot,
                arity: self.arity,
            });
        }
        let m = other.arity;
        let mut vertices: BTreeSet<Vec<Letter>> = BTreeSet::new();
        for t in &other.vertices {
            vertices.insert(t.iter().map(|&x| x + slot - 1).collect());
        }
        for s in &self.vertices {
            let mut image: Vec<Letter> = Vec::new();
            for &x in s {
                if x < slot {
                    image.push(x);
                } else if x == slot {
                    image.extend(slot..slot + m);
                } else {
                    image.push(x + m - 1);
                }
            }
            image.sort_unstable();
            vertices.insert(image);
        }
        Ok(NestedTree {
            arity: self.arity + m - 1,
            vertices: vertices.into_iter().collect(),
        })
    }

    /// Relabels leaves through a bijection of `{1..n}`.
    pub fn relabel(&self, f: impl Fn(Letter) -> Letter) -> NestedTree {
        let mut vertices: Vec<Vec<Letter>> = self
            .vertices
            .iter()
            .map(|v| {
                let mut w: Vec<Letter> = v.iter().map(|&x| f(x)).collect();
                w.sort_unstable();
                w
            })
            .collect();
        vertices.sort();
        NestedTree {
            arity: self.arity,
            vertices,
        }
    }
}

impl fmt::Display for NestedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vertices
            .iter()
            .map(|v| {
                format!(
                    "{{{}}}",
                    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

fn is_subset(a: &[Letter], b: &[Letter]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn nested_or_disjoint(a: &[Letter], b: &[Letter]) -> bool {
    let inter = a.iter().filter(|x| b.binary_search(x).is_ok()).count();
    inter == 0 || inter == a.len() || inter == b.len()
}

/// All nested trees on `{1..n}`, ordered by vertex count then
/// lexicographically by vertex list. Enumeration recurses on child
/// partitions with memoization keyed by leaf-set size.
pub fn enumerate_nested_trees(n: u32) -> Vec<NestedTree> {
    assert!(n >= 2);
    let mut memo: HashMap<u32, Vec<Vec<Vec<Letter>>>> = HashMap::new();
    let mut out: Vec<NestedTree> = trees_on(n, &mut memo)
        .into_iter()
        .map(|vertices| NestedTree { arity: n, vertices })
        .collect();
    out.sort_by(|a, b| {
        (a.vertex_count(), &a.vertices).cmp(&(b.vertex_count(), &b.vertices))
    });
    out
}

/// Vertex lists of all nested trees on the canonical leaf set `{1..k}`.
fn trees_on(k: u32, memo: &mut HashMap<u32, Vec<Vec<Vec<Letter>>>>) -> Vec<Vec<Vec<Letter>>> {
    if let Some(cached) = memo.get(&k) {
        return cached.clone();
    }
    let leaves: Vec<Letter> = (1..=k).collect();
    let mut results: Vec<Vec<Vec<Letter>>> = Vec::new();
    // choose the set of children of the root: disjoint subsets of size >= 2,
    // none equal to the whole leaf set
    for children in disjoint_families(&leaves) {
        if children.len() == 1 && children[0].len() == leaves.len() {
            continue; // a child equal to the root would duplicate it
        }
        // each child carries its own nested tree, enumerated on {1..|child|}
        // and relabelled through the sorted bijection
        let mut choices: Vec<Vec<Vec<Vec<Letter>>>> = Vec::new();
        for child in &children {
            let sub = trees_on(child.len() as u32, memo);
            let relabeled: Vec<Vec<Vec<Letter>>> = sub
                .into_iter()
                .map(|tree| {
                    tree.into_iter()
                        .map(|v| v.into_iter().map(|x| child[(x - 1) as usize]).collect())
                        .collect()
                })
                .collect();
            choices.push(relabeled);
        }
        let mut stack: Vec<Vec<Vec<Letter>>> = vec![vec![leaves.clone()]];
        for choice in &choices {
            let mut next = Vec::new();
            for partial in &stack {
                for sub in choice {
                    let mut combined = partial.clone();
                    combined.extend(sub.iter().cloned());
                    next.push(combined);
                }
            }
            stack = next;
        }
        for mut vertices in stack {
            vertices.sort();
            results.push(vertices);
        }
    }
    memo.insert(k, results.clone());
    results
}

/// All families of pairwise disjoint subsets of `leaves`, each of size >= 2
/// (including the empty family), in a deterministic order.
fn disjoint_families(leaves: &[Letter]) -> Vec<Vec<Vec<Letter>>> {
    fn subsets_containing_first(pool: &[Letter]) -> Vec<Vec<Letter>> {
        // subsets of `pool` of size >= 2 containing pool[0]
        let first = pool[0];
        let rest = &pool[1..];
        let mut out = Vec::new();
        for mask in 1u32..(1 << rest.len()) {
            let mut s = vec![first];
            for (i, &x) in rest.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    s.push(x);
                }
            }
            out.push(s);
        }
        out
    }
    fn rec(pool: &[Letter], out: &mut Vec<Vec<Vec<Letter>>>, current: &mut Vec<Vec<Letter>>) {
        if pool.is_empty() {
            out.push(current.clone());
            return;
        }
        // the smallest remaining leaf is either free...
        let rest: Vec<Letter> = pool[1..].to_vec();
        rec(&rest, out, current);
        // ...or belongs to a child block
        for block in subsets_containing_first(pool) {
            let remaining: Vec<Letter> = pool
                .iter()
                .copied()
                .filter(|x| !block.contains(x))
                .collect();
            current.push(block);
            rec(&remaining, out, current);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(leaves, &mut out, &mut Vec::new());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: u32, vs: &[&[Letter]]) -> NestedTree {
        NestedTree::new(n, vs.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    #[test]
    fn counts_match_series_reduced_trees() {
        assert_eq!(enumerate_nested_trees(2).len(), 1);
        assert_eq!(enumerate_nested_trees(3).len(), 4);
        assert_eq!(enumerate_nested_trees(4).len(), 26);
        assert_eq!(enumerate_nested_trees(5).len(), 236);
    }

    #[test]
    fn brute_force_oracle_n4() {
        // filter all families of subsets of {1..4} of size >= 2 containing
        // the root for laminarity
        let leaves: Vec<Letter> = vec![1, 2, 3, 4];
        let mut subsets: Vec<Vec<Letter>> = Vec::new();
        for mask in 1u32..16 {
            let s: Vec<Letter> = leaves
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &x)| x)
                .collect();
            if s.len() >= 2 && s.len() < 4 {
                subsets.push(s);
            }
        }
        let mut count = 0;
        for mask in 0u32..(1 << subsets.len()) {
            let family: Vec<&Vec<Letter>> = subsets
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, s)| s)
                .collect();
            let laminar = family.iter().enumerate().all(|(i, a)| {
                family
                    .iter()
                    .skip(i + 1)
                    .all(|b| nested_or_disjoint(a, b))
            });
            if laminar {
                count += 1;
            }
        }
        assert_eq!(count, 26);
        assert_eq!(enumerate_nested_trees(4).len(), count);
    }

    #[test]
    fn no_duplicates_and_all_valid() {
        for n in 2..=5u32 {
            let trees = enumerate_nested_trees(n);
            let set: BTreeSet<_> = trees.iter().cloned().collect();
            assert_eq!(set.len(), trees.len());
            for tree in &trees {
                NestedTree::new(n, tree.vertices().to_vec()).unwrap();
            }
        }
    }

    #[test]
    fn graft_paper_example() {
        // ((12)(345)) grafted at leaf 3 with ((12)3)
        let s = t(5, &[&[1, 2, 3, 4, 5], &[1, 2], &[3, 4, 5]]);
        let u = t(3, &[&[1, 2, 3], &[1, 2]]);
        let grafted = s.graft(3, &u).unwrap();
        let expected = t(
            7,
            &[
                &[1, 2, 3, 4, 5, 6, 7],
                &[1, 2],
                &[3, 4, 5, 6, 7],
                &[3, 4, 5],
                &[3, 4],
            ],
        );
        assert_eq!(grafted, expected);
    }

    #[test]
    fn graft_corollas() {
        let c2 = NestedTree::corolla(2);
        let c3 = NestedTree::corolla(3);
        let g = c2.graft(2, &c3).unwrap();
        assert_eq!(g, t(4, &[&[1, 2, 3, 4], &[2, 3, 4]]));
    }

    #[test]
    fn contract_and_valence() {
        let chain = t(4, &[&[1, 2, 3, 4], &[1, 2, 3], &[1, 2]]);
        for v in chain.vertices() {
            assert_eq!(chain.valence(v).unwrap(), 2);
        }
        let contracted = chain.contract_edge(&[1, 2, 3]).unwrap();
        assert_eq!(contracted, t(4, &[&[1, 2, 3, 4], &[1, 2]]));
        assert!(chain.contract_edge(&[1, 2, 3, 4]).is_err());
        assert_eq!(NestedTree::corolla(4).valence(&[1, 2, 3, 4]).unwrap(), 4);
        let s = t(5, &[&[1, 2, 3, 4, 5], &[1, 2], &[3, 4, 5]]);
        assert_eq!(s.valence(&[1, 2, 3, 4, 5]).unwrap(), 2);
        // iterated contraction reaches the corolla
        let mut tree = chain;
        while tree.vertex_count() > 1 {
            let v = tree
                .vertices()
                .iter()
                .find(|v| v.len() < 4)
                .unwrap()
                .clone();
            tree = tree.contract_edge(&v).unwrap();
        }
        assert_eq!(tree, NestedTree::corolla(4));
    }

    #[test]
    fn valence_sum_rule() {
        // sum of (valence - 1) over vertices is n - 1
        for n in 2..=5u32 {
            for tree in enumerate_nested_trees(n) {
                let total: u32 = tree
                    .vertices()
                    .iter()
                    .map(|v| tree.valence(v).unwrap() - 1)
                    .sum();
                assert_eq!(total, n - 1, "at {tree}");
            }
        }
    }

    #[test]
    fn grafting_matches_operad_associativity() {
        // (s o_i t) o_j u = s o_i (t o_j u) for slots inside t
        let trees3 = enumerate_nested_trees(3);
        for s in &trees3 {
            for u in &trees3 {
                for i in 1..=3u32 {
                    for j in 1..=3u32 {
                        let lhs = s.graft(i, u).unwrap();
                        for w in enumerate_nested_trees(2) {
                            let a = lhs.graft(i - 1 + j, &w).unwrap();
                            let b = s.graft(i, &u.graft(j, &w).unwrap()).unwrap();
                            assert_eq!(a, b);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn classes_order_by_min() {
        let tree = t(4, &[&[1, 2, 3, 4], &[1, 4], &[2, 3]]);
        let classes = tree.classes(&[1, 2, 3, 4]).unwrap();
        assert_eq!(classes, vec![vec![1, 4], vec![2, 3]]);
        let tree = t(4, &[&[1, 2, 3, 4], &[2, 4]]);
        let classes = tree.classes(&[1, 2, 3, 4]).unwrap();
        assert_eq!(classes, vec![vec![1], vec![2, 4], vec![3]]);
    }

    #[test]
    fn dfs_order_root_first_min_leaf() {
        let tree = t(5, &[&[1, 2, 3, 4, 5], &[1, 2], &[3, 4, 5], &[4, 5]]);
        let order = tree.dfs_order();
        assert_eq!(
            order,
            vec![
                vec![1, 2, 3, 4, 5],
                vec![1, 2],
                vec![3, 4, 5],
                vec![4, 5]
            ]
        );
    }

    #[test]
    fn laminarity_rejections() {
        assert!(NestedTree::new(3, vec![vec![1, 2, 3], vec![1, 2], vec![2, 3]]).is_err());
        assert!(NestedTree::new(3, vec![vec![1, 2]]).is_err()); // no root
        assert!(NestedTree::new(3, vec![vec![1, 2, 3], vec![2]]).is_err()); // singleton
    }
}
