//! The correction-term calculus: V-sequences, lens-space d-invariants, the
//! Ni–Wu surgery formula, orientation reversal, connected-sum additivity,
//! and the normalized invariant d̄.
//!
//! Everything is exact rational arithmetic; no floating point. The spin^c
//! structures of `S³_n(K)` are labeled by `i ∈ [0, n)` with `i = 0` the spin
//! structure, so `d̄(i) = d(i) - d(0)`.

use num::rational::Ratio;

use crate::algebra::{FinAbGroup, GroupElement};
use crate::error::{Error, Result};
use crate::linkform::{surgery_form, LinkingForm};
use crate::Sign;

/// Exact rational value of a correction term.
pub type Rational = Ratio<i64>;

/// An eventually-zero nonincreasing staircase `V_0 ≥ V_1 ≥ …` with
/// `V_i - V_{i+1} ∈ {0, 1}`; stored without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VSequence {
    values: Vec<u64>,
}

impl VSequence {
    /// Validates the staircase conditions, including the implicit zero tail:
    /// the last stored value may therefore be at most 1.
    pub fn new(values: &[u64]) -> Result<VSequence> {
        let mut trimmed = values.to_vec();
        while trimmed.last() == Some(&0) {
            trimmed.pop();
        }
        for i in 0..trimmed.len() {
            let v = trimmed[i];
            let next = trimmed.get(i + 1).copied().unwrap_or(0);
            if next > v || next < v.saturating_sub(1) {
                return Err(Error::InvalidArgument(format!(
                    "V-sequence must step down by 0 or 1: V_{i} = {v}, V_{} = {next}",
                    i + 1
                )));
            }
        }
        Ok(VSequence { values: trimmed })
    }

    pub fn zero() -> VSequence {
        VSequence::default()
    }

    /// The V-sequence of a thin knot with (even) signature `sigma`:
    /// `V_i = max(⌈-(σ+2i)/4⌉, 0)`.
    pub fn thin(sigma: i64) -> Result<VSequence> {
        if sigma % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "knot signature must be even, got {sigma}"
            )));
        }
        let mut values = Vec::new();
        let mut i = 0i64;
        loop {
            let v = ceil_div(-(sigma + 2 * i), 4).max(0);
            if v == 0 {
                break;
            }
            values.push(v as u64);
            i += 1;
        }
        Ok(VSequence { values })
    }

    /// `V_i`, extended by zero beyond the stored staircase.
    pub fn get(&self, i: u64) -> u64 {
        usize::try_from(i)
            .ok()
            .and_then(|i| self.values.get(i).copied())
            .unwrap_or(0)
    }

    /// Stored values with trailing zeros trimmed.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b) + if a.rem_euclid(b) != 0 { 1 } else { 0 }
}

/// `d(S³_n(U), s_i) = (n-2i)²/4n - 1/4`, exactly.
pub fn d_lens(n: u64, i: u64) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidArgument("lens space parameter must be positive".into()));
    }
    if i >= n {
        return Err(Error::InvalidArgument(format!(
            "spin^c index {i} out of range [0, {n})"
        )));
    }
    let n = n as i64;
    let i = i as i64;
    let num = n - 2 * i;
    Ok(Rational::new(num * num, 4 * n) - Rational::new(1, 4))
}

/// One surgery summand `±S³_n(J # J^r)` of a branched double cover, carrying
/// the V-sequence of the doubled companion (zero for the unknot).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryPiece {
    sign: Sign,
    n: u64,
    vseq: VSequence,
}

impl SurgeryPiece {
    /// The surgery coefficient must be odd (the cover is a Z/2-homology
    /// sphere) and positive.
    pub fn new(sign: Sign, n: u64, vseq: VSequence) -> Result<SurgeryPiece> {
        if n == 0 || n % 2 == 0 {
            return Err(Error::InvalidArgument(format!(
                "surgery coefficient must be odd and positive, got {n}"
            )));
        }
        Ok(SurgeryPiece { sign, n, vseq })
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn vseq(&self) -> &VSequence {
        &self.vseq
    }

    pub fn mirrored(&self) -> SurgeryPiece {
        SurgeryPiece { sign: -self.sign, n: self.n, vseq: self.vseq.clone() }
    }

    /// The Ni–Wu surgery formula
    /// `d(S³_n(K), s_i) = d(S³_n(U), s_i) - 2·max(V_i, V_{n-i})`,
    /// negated for a reversed piece since `d(-Y, s) = -d(Y, s)`.
    pub fn d(&self, i: u64) -> Result<Rational> {
        if i >= self.n {
            return Err(Error::InvalidArgument(format!(
                "spin^c index {i} out of range [0, {})",
                self.n
            )));
        }
        let vmax = self.vseq.get(i).max(self.vseq.get(self.n - i)) as i64;
        let value = d_lens(self.n, i)? - Rational::from_integer(2 * vmax);
        Ok(match self.sign {
            Sign::Plus => value,
            Sign::Minus => -value,
        })
    }

    /// `d̄(i) = d(i) - d(0)`.
    pub fn dbar(&self, i: u64) -> Result<Rational> {
        Ok(self.d(i)? - self.d(0)?)
    }
}

/// A branched double cover presented as a connected sum of surgery pieces.
/// Its first homology is `⊕ Z/n_j` with the block-diagonal linking form of
/// the pieces.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoverDescription {
    pieces: Vec<SurgeryPiece>,
}

impl CoverDescription {
    pub fn new(pieces: Vec<SurgeryPiece>) -> CoverDescription {
        CoverDescription { pieces }
    }

    pub fn pieces(&self) -> &[SurgeryPiece] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn mirrored(&self) -> CoverDescription {
        CoverDescription { pieces: self.pieces.iter().map(SurgeryPiece::mirrored).collect() }
    }

    pub fn concat(covers: &[CoverDescription]) -> CoverDescription {
        CoverDescription {
            pieces: covers.iter().flat_map(|c| c.pieces.iter().cloned()).collect(),
        }
    }

    /// `H_1` of the cover: one Z/n coordinate per piece with `n > 1`,
    /// in piece order.
    pub fn group(&self) -> FinAbGroup {
        let orders: Vec<u64> = self.pieces.iter().map(|p| p.n).filter(|&n| n > 1).collect();
        FinAbGroup::new(&orders).expect("odd surgery coefficients are valid orders")
    }

    /// The block-diagonal linking form `⊕ ±λ(S³_n)`.
    pub fn form(&self) -> LinkingForm {
        let parts: Vec<(Sign, LinkingForm)> = self
            .pieces
            .iter()
            .map(|p| {
                (Sign::Plus, surgery_form(p.n, p.sign).expect("piece coefficients are positive"))
            })
            .collect();
        LinkingForm::direct_sum(&parts)
    }

    fn indexed_pieces(&self) -> impl Iterator<Item = &SurgeryPiece> {
        self.pieces.iter().filter(|p| p.n > 1)
    }

    /// `Σ_j d(piece_j, z_j)`: the correction term of the connected sum at
    /// the spin^c structure labeled by `z`.
    pub fn d_sum(&self, z: &GroupElement) -> Result<Rational> {
        self.piecewise_sum(z, |p, i| p.d(i))
    }

    /// `Σ_j d̄(piece_j, z_j)`.
    pub fn dbar_sum(&self, z: &GroupElement) -> Result<Rational> {
        self.piecewise_sum(z, |p, i| p.dbar(i))
    }

    fn piecewise_sum(
        &self,
        z: &GroupElement,
        f: impl Fn(&SurgeryPiece, u64) -> Result<Rational>,
    ) -> Result<Rational> {
        if !self.group().contains(z) {
            return Err(Error::InvalidArgument(format!(
                "element {z} does not lie in H_1 = {}",
                self.group()
            )));
        }
        let mut acc = Rational::from_integer(0);
        for (piece, &coord) in self.indexed_pieces().zip(z.coords()) {
            acc += f(piece, coord)?;
        }
        Ok(acc)
    }
}
