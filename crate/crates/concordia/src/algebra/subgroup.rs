//! Subgroups of a finite abelian group as explicit element sets, plus a
//! deterministic enumeration engine.
//!
//! Enumeration walks the subgroup lattice bottom-up: a subgroup of order
//! `p·h` is the union of `p` cosets of an order-`h` subgroup along an element
//! whose `p`-th multiple falls back inside. Every subgroup of the target
//! order is reached through a composition chain, and duplicates are removed
//! by their sorted element-index keys, so the output order (lexicographic on
//! those keys) is reproducible.

use std::collections::{BTreeSet, HashSet, VecDeque};

use super::{factorize, FinAbGroup, GroupElement};
use crate::error::{Error, Result};

/// A subgroup, materialized as its full sorted element set along with a
/// small generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    ambient: FinAbGroup,
    gens: Vec<GroupElement>,
    elements: Vec<GroupElement>,
}

impl Subgroup {
    pub fn trivial(ambient: &FinAbGroup) -> Subgroup {
        Subgroup {
            ambient: ambient.clone(),
            gens: Vec::new(),
            elements: vec![ambient.zero()],
        }
    }

    pub fn whole(ambient: &FinAbGroup, bound: u64) -> Result<Subgroup> {
        check_bound(ambient, bound)?;
        let elements: Vec<GroupElement> = ambient.elements().collect();
        Ok(Subgroup::from_sorted_elements(ambient, elements))
    }

    /// Closes a generating set under addition. Errors if the ambient order
    /// exceeds the oracle bound.
    pub fn from_generators(
        ambient: &FinAbGroup,
        gens: &[GroupElement],
        bound: u64,
    ) -> Result<Subgroup> {
        check_bound(ambient, bound)?;
        for g in gens {
            if !ambient.contains(g) {
                return Err(Error::InvalidArgument(format!(
                    "generator {g} does not lie in {ambient}"
                )));
            }
        }
        let indices = close_indices(ambient, gens.iter().map(|g| ambient.index_of(g)));
        let elements = indices.into_iter().map(|i| ambient.element_at(i)).collect();
        Ok(Subgroup::from_sorted_elements(ambient, elements))
    }

    pub(crate) fn from_index_key(ambient: &FinAbGroup, key: &[u64]) -> Subgroup {
        let elements = key.iter().map(|&i| ambient.element_at(i)).collect();
        Subgroup::from_sorted_elements(ambient, elements)
    }

    fn from_sorted_elements(ambient: &FinAbGroup, elements: Vec<GroupElement>) -> Subgroup {
        let gens = greedy_generators(ambient, &elements);
        Subgroup { ambient: ambient.clone(), gens, elements }
    }

    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    /// Full element set, sorted lexicographically on coordinates.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// A generating set of size at most log2 of the subgroup order.
    pub fn generators(&self) -> &[GroupElement] {
        &self.gens
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Sorted mixed-radix indices of the elements; the canonical key used
    /// for deduplication and ordering.
    pub fn index_key(&self) -> Vec<u64> {
        self.elements.iter().map(|e| self.ambient.index_of(e)).collect()
    }

    pub fn is_closed(&self) -> bool {
        let set: HashSet<u64> = self.index_key().into_iter().collect();
        for a in &self.elements {
            for b in &self.elements {
                if !set.contains(&self.ambient.index_of(&self.ambient.add(a, b))) {
                    return false;
                }
            }
            if !set.contains(&self.ambient.index_of(&self.ambient.neg(a))) {
                return false;
            }
        }
        set.contains(&0)
    }
}

fn check_bound(ambient: &FinAbGroup, bound: u64) -> Result<()> {
    let order = ambient.order();
    if order > bound as u128 {
        return Err(Error::ResourceLimit { order, bound });
    }
    Ok(())
}

/// Worklist closure over element indices.
fn close_indices(g: &FinAbGroup, gens: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let gens: Vec<GroupElement> = gens.into_iter().map(|i| g.element_at(i)).collect();
    let mut set = BTreeSet::new();
    set.insert(0u64);
    let mut queue = vec![g.zero()];
    while let Some(x) = queue.pop() {
        for gen in &gens {
            let y = g.add(&x, gen);
            if set.insert(g.index_of(&y)) {
                queue.push(y);
            }
        }
    }
    set.into_iter().collect()
}

fn greedy_generators(g: &FinAbGroup, elements: &[GroupElement]) -> Vec<GroupElement> {
    let mut gens: Vec<GroupElement> = Vec::new();
    let mut span: HashSet<u64> = [0u64].into_iter().collect();
    for e in elements {
        if !span.contains(&g.index_of(e)) {
            gens.push(e.clone());
            for idx in close_indices(g, gens.iter().map(|x| g.index_of(x))) {
                span.insert(idx);
            }
        }
    }
    gens
}

/// All subgroups of `group` of order exactly `k`, each exactly once, in
/// lexicographic order of their sorted element-index keys. Yields nothing
/// when `k` does not divide the group order.
pub fn subgroups_of_order(
    group: &FinAbGroup,
    k: u64,
    bound: u64,
) -> Result<impl Iterator<Item = Subgroup>> {
    check_bound(group, bound)?;
    let keys = if k == 0 || group.order() % k as u128 != 0 {
        Vec::new()
    } else {
        bfs_subgroups(group, k, &|_, _| true)
    };
    let group = group.clone();
    Ok(keys.into_iter().map(move |key| Subgroup::from_index_key(&group, &key)))
}

/// A node of the lattice walk: the subgroup's sorted element indices and the
/// generators chosen along its chain.
pub(crate) struct BfsNode {
    pub elements: Vec<u64>,
    pub gens: Vec<u64>,
}

/// Bottom-up walk of the subgroup lattice collecting subgroups of order
/// `target`. `extend_ok(node, candidate)` can veto an extension; it is the
/// hook for isotropy filters. The result is sorted and duplicate-free.
pub(crate) fn bfs_subgroups(
    group: &FinAbGroup,
    target: u64,
    extend_ok: &dyn Fn(&BfsNode, u64) -> bool,
) -> Vec<Vec<u64>> {
    let order = group.order() as u64;
    debug_assert_eq!(order as u128 % target as u128, 0);
    let primes: Vec<u64> = factorize(target).into_iter().map(|(p, _)| p).collect();

    // Multiplication-by-p index tables, one per prime dividing the target.
    let mul_tables: Vec<(u64, Vec<u64>)> = primes
        .iter()
        .map(|&p| {
            let table = (0..order)
                .map(|i| group.index_of(&group.scale(p, &group.element_at(i))))
                .collect();
            (p, table)
        })
        .collect();

    let mut found: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut queue: VecDeque<BfsNode> = VecDeque::new();

    let root = BfsNode { elements: vec![0], gens: vec![] };
    if target == 1 {
        found.insert(root.elements.clone());
        return found.into_iter().collect();
    }
    seen.insert(root.elements.clone());
    queue.push_back(root);

    let mut member = vec![false; order as usize];
    while let Some(node) = queue.pop_front() {
        let h = node.elements.len() as u64;
        for e in &node.elements {
            member[*e as usize] = true;
        }
        for (p, mul_p) in &mul_tables {
            if (target / h) % p != 0 {
                continue;
            }
            for g_idx in 1..order {
                if member[g_idx as usize] || !member[mul_p[g_idx as usize] as usize] {
                    continue;
                }
                if !extend_ok(&node, g_idx) {
                    continue;
                }
                let extended = coset_union(group, &node.elements, g_idx, *p);
                if seen.contains(&extended) {
                    continue;
                }
                let mut gens = node.gens.clone();
                gens.push(g_idx);
                if extended.len() as u64 == target {
                    found.insert(extended.clone());
                    seen.insert(extended);
                } else {
                    seen.insert(extended.clone());
                    queue.push_back(BfsNode { elements: extended, gens });
                }
            }
        }
        for e in &node.elements {
            member[*e as usize] = false;
        }
    }
    found.into_iter().collect()
}

/// Elements of `H + <g>` where `p·g ∈ H`: the union of the cosets
/// `H, H+g, …, H+(p-1)g`, as a sorted index vector.
fn coset_union(group: &FinAbGroup, h: &[u64], g_idx: u64, p: u64) -> Vec<u64> {
    let g = group.element_at(g_idx);
    let mut out = Vec::with_capacity(h.len() * p as usize);
    out.extend_from_slice(h);
    let mut shift = group.zero();
    for _ in 1..p {
        shift = group.add(&shift, &g);
        for e in h {
            let x = group.add(&group.element_at(*e), &shift);
            out.push(group.index_of(&x));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}
