//! Finite abelian groups as values: canonical invariant factors, element
//! arithmetic, primary decomposition, and subgroup enumeration at oracle
//! scale.
//!
//! A group is presented as `Z/d_1 ⊕ … ⊕ Z/d_k` with every `d_j ≥ 2`; the
//! canonical invariant-factor chain `d'_1 | d'_2 | … | d'_m` is derived once
//! at construction so that isomorphism testing is list equality and the
//! generating rank is `m`.

mod snf;
mod subgroup;

pub use snf::smith_invariants;
pub use subgroup::{subgroups_of_order, Subgroup};
pub(crate) use subgroup::{bfs_subgroups as bfs_subgroups_filtered, BfsNode};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A finite abelian group in a fixed cyclic presentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    cyclic_orders: Vec<u64>,
    invariants: Vec<u64>,
}

/// An element of a [`FinAbGroup`], one residue per cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl FinAbGroup {
    /// Builds the group `Z/d_1 ⊕ … ⊕ Z/d_k` from a list of cyclic orders.
    /// Entries equal to 1 are dropped; an order of 0 is rejected.
    pub fn new(orders: &[u64]) -> Result<Self> {
        if let Some(bad) = orders.iter().find(|&&d| d == 0) {
            return Err(Error::InvalidGroup(format!("cyclic order must be positive, got {bad}")));
        }
        let cyclic_orders: Vec<u64> = orders.iter().copied().filter(|&d| d > 1).collect();
        let invariants = invariant_factors(&cyclic_orders);
        Ok(FinAbGroup { cyclic_orders, invariants })
    }

    pub fn trivial() -> Self {
        FinAbGroup { cyclic_orders: Vec::new(), invariants: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.cyclic_orders.is_empty()
    }

    /// The cyclic orders of the presentation, in order.
    pub fn cyclic_orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    /// The invariant-factor chain `d'_1 | d'_2 | … | d'_m`.
    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    /// Minimal number of generators: the length of the invariant-factor list.
    pub fn generating_rank(&self) -> usize {
        self.invariants.len()
    }

    /// Two groups are isomorphic iff their invariant factors agree.
    pub fn is_isomorphic(&self, other: &FinAbGroup) -> bool {
        self.invariants == other.invariants
    }

    pub fn order(&self) -> u128 {
        self.cyclic_orders.iter().map(|&d| d as u128).product()
    }

    /// The exponent of the group (largest invariant factor).
    pub fn exponent(&self) -> u64 {
        self.invariants.last().copied().unwrap_or(1)
    }

    pub fn rank(&self) -> usize {
        self.cyclic_orders.len()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.cyclic_orders.len()] }
    }

    /// Builds an element from coordinates, reducing each mod `d_j`.
    pub fn element(&self, coords: &[u64]) -> Result<GroupElement> {
        if coords.len() != self.cyclic_orders.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                self.cyclic_orders.len(),
                coords.len()
            )));
        }
        let coords =
            coords.iter().zip(&self.cyclic_orders).map(|(&c, &d)| c % d).collect();
        Ok(GroupElement { coords })
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.coords.len() == self.cyclic_orders.len()
            && g.coords.iter().zip(&self.cyclic_orders).all(|(&c, &d)| c < d)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.cyclic_orders)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect();
        GroupElement { coords }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&self.cyclic_orders)
            .map(|(&x, &d)| if x == 0 { 0 } else { d - x })
            .collect();
        GroupElement { coords }
    }

    pub fn scale(&self, c: u64, a: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&self.cyclic_orders)
            .map(|(&x, &d)| (((c as u128) * (x as u128)) % d as u128) as u64)
            .collect();
        GroupElement { coords }
    }

    /// Order of an element: `lcm_j d_j / gcd(d_j, x_j)`.
    pub fn order_of(&self, a: &GroupElement) -> u64 {
        a.coords
            .iter()
            .zip(&self.cyclic_orders)
            .map(|(&x, &d)| d / gcd(d, x))
            .fold(1u64, lcm)
    }

    /// Mixed-radix index of an element; indexes are ordered lexicographically
    /// on coordinate tuples (first coordinate most significant).
    pub fn index_of(&self, a: &GroupElement) -> u64 {
        let mut idx = 0u64;
        for (&x, &d) in a.coords.iter().zip(&self.cyclic_orders) {
            idx = idx * d + x;
        }
        idx
    }

    pub fn element_at(&self, mut idx: u64) -> GroupElement {
        let mut coords = vec![0u64; self.cyclic_orders.len()];
        for (slot, &d) in coords.iter_mut().zip(&self.cyclic_orders).rev() {
            *slot = idx % d;
            idx /= d;
        }
        GroupElement { coords }
    }

    /// Iterates over all elements in index order. Only sensible at oracle
    /// scale; the caller is responsible for bounding the group order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let n = self.order() as u64;
        (0..n).map(move |i| self.element_at(i))
    }

    /// The `p`-primary subgroup `G_p` in its own cyclic presentation,
    /// together with the embedding back into this group.
    pub fn primary_part(&self, p: u64) -> Result<(FinAbGroup, PrimaryEmbedding)> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        let mut orders = Vec::new();
        let mut ambient_coord = Vec::new();
        let mut multiplier = Vec::new();
        for (j, &d) in self.cyclic_orders.iter().enumerate() {
            let pk = p_power_part(d, p);
            if pk > 1 {
                orders.push(pk);
                ambient_coord.push(j);
                multiplier.push(d / pk);
            }
        }
        let part = FinAbGroup::new(&orders)?;
        Ok((part, PrimaryEmbedding { ambient_rank: self.cyclic_orders.len(), ambient_coord, multiplier }))
    }

    /// Primes dividing the group order, ascending.
    pub fn prime_divisors(&self) -> Vec<u64> {
        let mut primes = std::collections::BTreeSet::new();
        for &d in &self.cyclic_orders {
            for (p, _) in factorize(d) {
                primes.insert(p);
            }
        }
        primes.into_iter().collect()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cyclic_orders.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.cyclic_orders.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Coordinate-wise embedding of a primary part `G_p` into its ambient group:
/// coordinate `i` of `G_p` maps to `multiplier[i]` times ambient generator
/// `ambient_coord[i]`.
#[derive(Debug, Clone)]
pub struct PrimaryEmbedding {
    ambient_rank: usize,
    ambient_coord: Vec<usize>,
    multiplier: Vec<u64>,
}

impl PrimaryEmbedding {
    pub fn embed(&self, part_element: &GroupElement) -> GroupElement {
        let mut coords = vec![0u64; self.ambient_rank];
        for ((&j, &m), &x) in
            self.ambient_coord.iter().zip(&self.multiplier).zip(part_element.coords())
        {
            coords[j] = m * x;
        }
        GroupElement { coords }
    }

    pub fn multipliers(&self) -> &[u64] {
        &self.multiplier
    }
}

/// Regroups cyclic orders into the invariant-factor chain: for each prime,
/// the p-power parts are sorted and multiplied back together rank by rank.
fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &d in orders {
        for (p, e) in factorize(d) {
            by_prime.entry(p).or_default().push(p.pow(e));
        }
    }
    let depth = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
    let mut result = vec![1u64; depth];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (slot, &pk) in result.iter_mut().zip(powers.iter()) {
            *slot *= pk;
        }
    }
    result.reverse();
    result
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Trial-division factorization, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn p_power_part(mut d: u64, p: u64) -> u64 {
    let mut pk = 1u64;
    while d % p == 0 {
        d /= p;
        pk *= p;
    }
    pk
}
