//! The obstruction engine: the generating-rank lower bound for the Z-genus,
//! d̄-null element analysis, the metabolizer-intersection oracle, and the
//! concordance metabolizer test.
//!
//! The concordance Z-genus bound works contrapositively: when the p-primary
//! part of `H_1` of the branched double cover is `(Z/p²)^{2n}`, a knot of
//! concordance Z-genus `m < n` forces an elementary abelian subgroup of rank
//! `n - m` consisting of d̄-null spin^c labels. Computing the largest d̄-null
//! elementary abelian rank `r` therefore rules out every `m < n - r`.

use std::collections::HashSet;

use crate::algebra::{FinAbGroup, GroupElement, Subgroup};
use crate::cover::{branched_double_cover, declared_annotations, Annotation, KnotExpr};
use crate::dcalc::{CoverDescription, Rational};
use crate::error::{Error, Result};
use crate::linkform::LinkingForm;
use crate::Sign;

/// Sanity ceiling on the number of p-torsion vectors scanned while hunting
/// d̄-null elements.
const MAX_TORSION_SCAN: u128 = 1 << 24;

/// `r(H_1) ≤ 2·g_Z` gives `g_Z ≥ ⌈r/2⌉`.
pub fn gz_lower_bound(c: &CoverDescription) -> u64 {
    (c.group().generating_rank() as u64).div_ceil(2)
}

/// The d̄-null elements of order dividing `p`: those `z` in the p-torsion of
/// `H_1` whose entire cyclic span `{c·z}` has vanishing d̄. Returned in
/// ambient cover coordinates, sorted; always contains zero. Errors when the
/// p-primary part is trivial.
pub fn dbar_null_elements(c: &CoverDescription, p: u64) -> Result<Vec<GroupElement>> {
    let scan = TorsionScan::new(c, p)?;
    let group = c.group();
    let mut out: Vec<GroupElement> =
        scan.null_vectors.iter().map(|v| scan.ambient_element(&group, v)).collect();
    out.sort_by_key(|z| group.index_of(z));
    Ok(out)
}

/// d̄ over every element of order exactly `p` in the p-primary part, labeled
/// by primary-part coordinates, in lexicographic order.
pub fn dbar_table(c: &CoverDescription, p: u64) -> Result<Vec<(GroupElement, Rational)>> {
    let scan = TorsionScan::new(c, p)?;
    let mut out = Vec::new();
    for v in scan.vectors() {
        if v.iter().any(|&a| a != 0) {
            let value = scan.dbar(&v);
            out.push((scan.part_element(&v), value));
        }
    }
    Ok(out)
}

/// Result of the contrapositive bound at a prime `p`: the p-part is
/// `(Z/p²)^{2n}`, `null_rank` is the largest rank of a d̄-null elementary
/// abelian subgroup, and `bound` rules out every concordance Z-genus below
/// it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GzcBound {
    pub n: u64,
    pub null_rank: u64,
    pub bound: u64,
    pub order_p_elements: u64,
}

/// Concordance Z-genus lower bound at `p`. Requires the p-primary part of
/// `H_1` to be `(Z/p²)^{2n}` for some `n ≥ 1`; anything else is refused
/// rather than extrapolated.
pub fn gzc_lower_bound(c: &CoverDescription, p: u64) -> Result<GzcBound> {
    let group = c.group();
    let (part, _) = group.primary_part(p)?;
    let inv = part.invariants();
    let expected = p * p;
    if inv.is_empty() || inv.len() % 2 != 0 || inv.iter().any(|&d| d != expected) {
        return Err(Error::HypothesisNotMet(format!(
            "the {p}-primary part of H_1 must be (Z/{expected})^(2n) with n >= 1; \
             its invariant factors are {inv:?}"
        )));
    }
    let n = (inv.len() / 2) as u64;

    let scan = TorsionScan::new(c, p)?;
    let nonzero_null: HashSet<Vec<u64>> = scan
        .null_vectors
        .iter()
        .filter(|v| v.iter().any(|&a| a != 0))
        .cloned()
        .collect();
    let null_rank = max_null_subspace_rank(p, scan.dims(), &nonzero_null) as u64;
    let order_p_elements = (p as u128).pow(scan.dims() as u32) as u64 - 1;
    Ok(GzcBound { n, null_rank, bound: n.saturating_sub(null_rank), order_p_elements })
}

/// Precomputed d̄ data over the p-torsion subgroup of a cover.
///
/// The p-torsion of `⊕ Z/n_j` is spanned by `(n_j/p)·e_j` over the
/// coordinates with `p | n_j`, so an F_p vector `v` labels the element with
/// ambient coordinate `v_i · n_j/p`, and d̄ decomposes as a sum of per-piece
/// contributions that are tabulated once.
struct TorsionScan {
    p: u64,
    /// (index into the cover group's coordinates, ambient cyclic order) for
    /// every coordinate carrying p-torsion.
    coords: Vec<(usize, u64)>,
    /// `contrib[i][a]` = d̄ of piece `i` at index `a · n_i/p`.
    contrib: Vec<Vec<Rational>>,
    /// Primary part, for element labeling; its coordinates parallel `coords`.
    part: FinAbGroup,
    /// F_p vectors whose whole cyclic span is d̄-null; includes zero.
    null_vectors: Vec<Vec<u64>>,
}

impl TorsionScan {
    fn new(c: &CoverDescription, p: u64) -> Result<TorsionScan> {
        let group = c.group();
        let (part, _) = group.primary_part(p)?;
        if part.is_trivial() {
            return Err(Error::EmptyInput(format!(
                "H_1 = {group} has trivial {p}-primary part"
            )));
        }

        let pieces: Vec<_> = c.pieces().iter().filter(|piece| piece.n() > 1).collect();
        let mut coords = Vec::new();
        let mut contrib = Vec::new();
        for (j, piece) in pieces.iter().enumerate() {
            if piece.n() % p == 0 {
                let step = piece.n() / p;
                let row: Result<Vec<Rational>> =
                    (0..p).map(|a| piece.dbar(a * step)).collect();
                coords.push((j, piece.n()));
                contrib.push(row?);
            }
        }
        let dims = coords.len();
        debug_assert_eq!(dims, part.rank());
        let total = (p as u128).pow(dims as u32);
        if total > MAX_TORSION_SCAN {
            return Err(Error::ResourceLimit { order: total, bound: MAX_TORSION_SCAN as u64 });
        }

        let zero = Rational::from_integer(0);
        let dbar_of = |v: &[u64]| -> Rational {
            v.iter()
                .enumerate()
                .map(|(i, &a)| contrib[i][a as usize])
                .fold(Rational::from_integer(0), |acc, x| acc + x)
        };
        let null_vectors = fp_vectors(p, dims)
            .filter(|v| {
                (1..p).all(|c| {
                    let multiple: Vec<u64> = v.iter().map(|&a| (a * c) % p).collect();
                    dbar_of(&multiple) == zero
                })
            })
            .collect();
        Ok(TorsionScan { p, coords, contrib, part, null_vectors })
    }

    fn dims(&self) -> usize {
        self.coords.len()
    }

    /// All F_p vectors, lexicographically.
    fn vectors(&self) -> impl Iterator<Item = Vec<u64>> {
        fp_vectors(self.p, self.dims())
    }

    fn dbar(&self, v: &[u64]) -> Rational {
        v.iter()
            .enumerate()
            .map(|(i, &a)| self.contrib[i][a as usize])
            .fold(Rational::from_integer(0), |acc, x| acc + x)
    }

    /// The element labeled `v`, in primary-part coordinates.
    fn part_element(&self, v: &[u64]) -> GroupElement {
        let coords: Vec<u64> = self
            .part
            .cyclic_orders()
            .iter()
            .zip(v)
            .map(|(&pk, &a)| a * (pk / self.p))
            .collect();
        self.part.element(&coords).expect("reduced against primary part orders")
    }

    /// The element labeled `v`, in ambient cover coordinates.
    fn ambient_element(&self, group: &FinAbGroup, v: &[u64]) -> GroupElement {
        let mut coords = vec![0u64; group.rank()];
        for ((&(j, n), &a), _) in self.coords.iter().zip(v).zip(0..) {
            coords[j] = a * (n / self.p);
        }
        group.element(&coords).expect("reduced against ambient orders")
    }
}

/// All vectors of F_p^dims in lexicographic order.
fn fp_vectors(p: u64, dims: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = (p as u128).pow(dims as u32) as u64;
    (0..total).map(move |mut idx| {
        let mut v = vec![0u64; dims];
        for slot in v.iter_mut().rev() {
            *slot = idx % p;
            idx /= p;
        }
        v
    })
}

/// Largest dimension of an F_p subspace contained in `null ∪ {0}`, by
/// depth-first search over reduced-echelon bases drawn from the null set:
/// each new basis vector is normalized, has its pivot beyond all previous
/// pivots and zeros at previous pivot positions, and must keep the whole
/// span inside the null set.
fn max_null_subspace_rank(p: u64, dims: usize, null: &HashSet<Vec<u64>>) -> usize {
    let candidates: Vec<&Vec<u64>> = null
        .iter()
        .filter(|v| {
            let pivot = v.iter().position(|&a| a != 0);
            pivot.is_some_and(|i| v[i] == 1)
        })
        .collect();

    fn dfs(
        p: u64,
        dims: usize,
        null: &HashSet<Vec<u64>>,
        candidates: &[&Vec<u64>],
        pivots: &mut Vec<usize>,
        span: &mut Vec<Vec<u64>>,
        best: &mut usize,
    ) {
        *best = (*best).max(pivots.len());
        let min_pivot = pivots.last().map_or(0, |&i| i + 1);
        for v in candidates {
            let pivot = v.iter().position(|&a| a != 0).unwrap();
            if pivot < min_pivot || pivots.iter().any(|&q| v[q] != 0) {
                continue;
            }
            // New span elements a·v + w must all stay null.
            let mut added = Vec::new();
            let mut ok = true;
            'outer: for a in 1..p {
                for w in span.iter() {
                    let x: Vec<u64> =
                        w.iter().zip(v.iter()).map(|(&wi, &vi)| (wi + a * vi) % p).collect();
                    if x.iter().any(|&c| c != 0) && !null.contains(&x) {
                        ok = false;
                        break 'outer;
                    }
                    added.push(x);
                }
            }
            if !ok {
                continue;
            }
            let added_len = added.len();
            span.extend(added);
            pivots.push(pivot);
            dfs(p, dims, null, candidates, pivots, span, best);
            pivots.pop();
            span.truncate(span.len() - added_len);
        }
    }

    let mut best = 0;
    let mut pivots = Vec::new();
    let mut span = vec![vec![0u64; dims]];
    dfs(p, dims, null, &candidates, &mut pivots, &mut span, &mut best);
    best
}

/// Verdict of the exhaustive metabolizer-intersection check.
#[derive(Debug, Clone)]
pub enum LemmaVerdict {
    Pass { metabolizers_checked: usize },
    /// A metabolizer whose intersection with the first summand is too small;
    /// this contradicts a theorem, so it indicates an implementation bug.
    Fail { counterexample: Subgroup },
}

impl LemmaVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, LemmaVerdict::Pass { .. })
    }
}

/// Exhaustively verifies, over every metabolizer `M` of `λ₁ ⊕ -λ₂`, that
/// `M ∩ H_1(Y_1)` contains an elementary abelian subgroup of rank `n - m`,
/// where `H_1(Y_1)_p ≅ (Z/p²)^{2n}` and `r(H_1(Y_2)_p) ≤ 2m < 2n`.
pub fn verify_lemma_key(
    f1: &LinkingForm,
    f2: &LinkingForm,
    p: u64,
    bound: u64,
) -> Result<LemmaVerdict> {
    if !f1.is_nonsingular() || !f2.is_nonsingular() {
        return Err(Error::HypothesisNotMet(
            "both linking forms must be nonsingular".into(),
        ));
    }
    let (part1, _) = f1.group().primary_part(p)?;
    let inv = part1.invariants();
    let expected = p * p;
    if inv.is_empty() || inv.len() % 2 != 0 || inv.iter().any(|&d| d != expected) {
        return Err(Error::HypothesisNotMet(format!(
            "the {p}-part of the first group must be (Z/{expected})^(2n); \
             its invariant factors are {inv:?}"
        )));
    }
    let n = (inv.len() / 2) as u64;
    let (part2, _) = f2.group().primary_part(p)?;
    let r2 = part2.generating_rank() as u64;
    let m = r2.div_ceil(2);
    if m >= n {
        return Err(Error::HypothesisNotMet(format!(
            "need r(H_1(Y_2)_p) ≤ 2m < 2n = {}, but the rank is {r2}",
            2 * n
        )));
    }

    let combined = LinkingForm::direct_sum(&[(Sign::Plus, f1.clone()), (Sign::Minus, f2.clone())]);
    let group = combined.group().clone();
    let split = f1.group().rank();
    let needed = (p as u128).pow((n - m) as u32);

    let metabolizers = combined.metabolizers(bound)?;
    let checked = metabolizers.len();
    for met in metabolizers {
        // M ∩ H_1(Y_1): elements supported on the first block.
        let in_first: Vec<&GroupElement> = met
            .elements()
            .iter()
            .filter(|z| z.coords()[split..].iter().all(|&c| c == 0))
            .collect();
        // It contains (Z/p)^{n-m} iff its p-torsion has at least p^{n-m}
        // elements.
        let p_torsion = in_first
            .iter()
            .filter(|z| {
                let scaled = group.scale(p, z);
                scaled.coords().iter().all(|&c| c == 0)
            })
            .count() as u128;
        if p_torsion < needed {
            return Ok(LemmaVerdict::Fail { counterexample: met });
        }
    }
    Ok(LemmaVerdict::Pass { metabolizers_checked: checked })
}

/// The concordance obstruction of the metabolizer condition: `true` iff some
/// metabolizer of `λ_K ⊕ -λ_J` has `d(Σ₂K, s) + d(-Σ₂J, s') = 0` on all of
/// its elements. `false` certifies that the two knots are not concordant.
pub fn concordance_metabolizer_test(
    ck: &CoverDescription,
    cj: &CoverDescription,
    bound: u64,
) -> Result<bool> {
    let combined_cover = CoverDescription::concat(&[ck.clone(), cj.mirrored()]);
    let form = combined_cover.form();
    let zero = Rational::from_integer(0);
    for met in form.metabolizers(bound)? {
        let cancels = met
            .elements()
            .iter()
            .all(|z| combined_cover.d_sum(z).expect("metabolizer elements lie in H_1") == zero);
        if cancels {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Everything the pipeline derives for one knot expression.
#[derive(Debug, Clone)]
pub struct ObstructionReport {
    pub knot: String,
    pub cover: CoverDescription,
    pub homology_invariants: Vec<u64>,
    pub gz_lower: u64,
    /// The prime used and its bound data, when some prime meets the
    /// hypothesis (the strongest bound among qualifying primes).
    pub gzc: Option<(u64, GzcBound)>,
    /// d̄ over the order-p elements for the reported prime, labeled in
    /// primary-part coordinates.
    pub dbar_table: Vec<(GroupElement, Rational)>,
    pub annotations: Vec<Annotation>,
}

/// Runs the full pipeline. With `prime: Some(p)` the hypothesis failure at
/// `p` is an error; with `None`, all primes dividing `|H_1|` are scanned and
/// the best qualifying bound is reported (none qualifying is not an error).
pub fn obstruction_report(expr: &KnotExpr, prime: Option<u64>) -> Result<ObstructionReport> {
    let cover = branched_double_cover(expr)?;
    let group = cover.group();
    let gz_lower = gz_lower_bound(&cover);

    let gzc = match prime {
        Some(p) => Some((p, gzc_lower_bound(&cover, p)?)),
        None => {
            let mut best: Option<(u64, GzcBound)> = None;
            for p in group.prime_divisors() {
                if let Ok(b) = gzc_lower_bound(&cover, p) {
                    let better = best.map_or(true, |(_, cur)| b.bound > cur.bound);
                    if better {
                        best = Some((p, b));
                    }
                }
            }
            best
        }
    };

    let dbar = match gzc {
        Some((p, _)) => dbar_table(&cover, p)?,
        None => Vec::new(),
    };

    Ok(ObstructionReport {
        knot: expr.to_string(),
        homology_invariants: group.invariants().to_vec(),
        cover,
        gz_lower,
        gzc,
        dbar_table: dbar,
        annotations: declared_annotations(expr),
    })
}
