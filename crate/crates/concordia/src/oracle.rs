//! Seeded randomized oracle suites backing the exhaustive checks: theorem
//! instances for the metabolizer-intersection lemma, re-verification of
//! enumerated metabolizers, and self-concordance sanity. A failure in any
//! suite indicates an implementation bug, and the failing instance is
//! reported in minimized form.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{gcd, FinAbGroup};
use crate::dcalc::{CoverDescription, SurgeryPiece, VSequence};
use crate::error::Result;
use crate::linkform::{LinkingForm, QmodZ};
use crate::obstruct::{concordance_metabolizer_test, verify_lemma_key, LemmaVerdict};
use crate::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    LemmaKey,
    Metabolizers,
    SelfConc,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::LemmaKey => "lemma-key",
            Suite::Metabolizers => "metabolizers",
            Suite::SelfConc => "selfconc",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        match name {
            "lemma-key" => Some(Suite::LemmaKey),
            "metabolizers" => Some(Suite::Metabolizers),
            "selfconc" => Some(Suite::SelfConc),
            _ => None,
        }
    }

    pub fn default_cases(&self) -> usize {
        match self {
            Suite::LemmaKey => 12,
            Suite::Metabolizers => 40,
            Suite::SelfConc => 120,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            format!("{}: {} cases, all passed (seed {})", self.suite.name(), self.cases, self.seed)
        } else {
            format!(
                "{}: {} of {} cases FAILED (seed {})",
                self.suite.name(),
                self.failures.len(),
                self.cases,
                self.seed
            )
        }
    }
}

/// Runs a suite deterministically for the given seed.
pub fn run_suite(suite: Suite, seed: u64, bound: u64, cases: usize) -> Result<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let failure = match suite {
            Suite::LemmaKey => lemma_key_case(&mut rng, bound)?,
            Suite::Metabolizers => metabolizers_case(&mut rng, bound)?,
            Suite::SelfConc => selfconc_case(&mut rng, bound)?,
        };
        if let Some(msg) = failure {
            failures.push(format!("case {case}: {msg}"));
        }
    }
    Ok(SuiteOutcome { suite, seed, cases, failures })
}

/// A random cover whose doubled group order stays inside the oracle bound.
fn random_cover(rng: &mut ChaCha8Rng, bound: u64) -> CoverDescription {
    let limit = (bound as f64).sqrt() as u64;
    let count = rng.gen_range(1..=3);
    let mut product = 1u64;
    let mut pieces = Vec::new();
    for _ in 0..count {
        let max_n = (limit / product).min(15);
        let choices: Vec<u64> = (1..=max_n).step_by(2).collect();
        let n = if choices.is_empty() { 1 } else { choices[rng.gen_range(0..choices.len())] };
        product *= n;
        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        pieces.push(SurgeryPiece::new(sign, n, random_vseq(rng)).expect("odd n"));
    }
    CoverDescription::new(pieces)
}

/// A random valid staircase, built upward from the zero tail.
fn random_vseq(rng: &mut ChaCha8Rng) -> VSequence {
    let len = rng.gen_range(0..=4);
    let mut values = Vec::new();
    let mut v = 0u64;
    for _ in 0..len {
        v += rng.gen_range(0..=1u64);
        values.push(v);
    }
    values.reverse();
    VSequence::new(&values).expect("unit steps down to zero")
}

fn describe_cover(c: &CoverDescription) -> String {
    let pieces: Vec<String> = c
        .pieces()
        .iter()
        .map(|p| format!("{}S3_{}(V={:?})", p.sign(), p.n(), p.vseq().values()))
        .collect();
    format!("[{}]", pieces.join(" # "))
}

fn selfconc_case(rng: &mut ChaCha8Rng, bound: u64) -> Result<Option<String>> {
    let cover = random_cover(rng, bound);
    if concordance_metabolizer_test(&cover, &cover, bound)? {
        return Ok(None);
    }
    // Minimize: drop pieces while the failure persists.
    let mut minimal = cover;
    loop {
        let mut shrunk = None;
        for drop in 0..minimal.pieces().len() {
            let pieces: Vec<SurgeryPiece> = minimal
                .pieces()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, p)| p.clone())
                .collect();
            let candidate = CoverDescription::new(pieces);
            if !concordance_metabolizer_test(&candidate, &candidate, bound)? {
                shrunk = Some(candidate);
                break;
            }
        }
        match shrunk {
            Some(c) => minimal = c,
            None => break,
        }
    }
    Ok(Some(format!(
        "self-concordance test rejected the diagonal metabolizer on {}",
        describe_cover(&minimal)
    )))
}

/// A random diagonal nonsingular form, sometimes with a compatible
/// off-diagonal perturbation (kept only when still nonsingular).
fn random_form(rng: &mut ChaCha8Rng) -> LinkingForm {
    let choices = [2u64, 3, 4, 5, 8, 9];
    let count = rng.gen_range(1..=3);
    let mut orders = Vec::new();
    let mut total = 1u64;
    for _ in 0..count {
        let d = choices[rng.gen_range(0..choices.len())];
        if total * d > 64 {
            break;
        }
        total *= d;
        orders.push(d);
    }
    if orders.is_empty() {
        orders.push(2);
    }
    let group = FinAbGroup::new(&orders).expect("valid orders");
    let k = group.rank();
    let mut gram = vec![vec![QmodZ::ZERO; k]; k];
    for i in 0..k {
        let d = orders[i];
        let units: Vec<u64> = (1..d).filter(|&a| gcd(a, d) == 1).collect();
        let a = units[rng.gen_range(0..units.len())];
        gram[i][i] = QmodZ::new(a as i64, d as i64).expect("unit entry");
    }
    let mut form = LinkingForm::new(group.clone(), gram.clone()).expect("diagonal form");
    // Optional off-diagonal entry on a pair with a common factor.
    if k >= 2 && rng.gen_bool(0.5) {
        let i = rng.gen_range(0..k - 1);
        let j = rng.gen_range(i + 1..k);
        let g = gcd(orders[i], orders[j]);
        if g > 1 {
            let b = rng.gen_range(1..g);
            let entry = QmodZ::new(b as i64, g as i64).expect("common-factor entry");
            gram[i][j] = entry;
            gram[j][i] = entry;
            if let Ok(perturbed) = LinkingForm::new(group, gram) {
                if perturbed.is_nonsingular() {
                    form = perturbed;
                }
            }
        }
    }
    form
}

fn metabolizers_case(rng: &mut ChaCha8Rng, bound: u64) -> Result<Option<String>> {
    let form = random_form(rng);
    let mets = form.metabolizers(bound)?;
    for m in &mets {
        if !form.is_metabolizer(m, bound)? {
            return Ok(Some(format!(
                "enumerated subgroup {:?} fails the metabolizer test on {}",
                m.index_key(),
                form.group()
            )));
        }
        let perp = form.orthogonal_complement(m, bound)?;
        if perp.index_key() != m.index_key() {
            return Ok(Some(format!(
                "metabolizer {:?} is not self-orthogonal on {}: complement {:?}",
                m.index_key(),
                form.group(),
                perp.index_key()
            )));
        }
    }
    let negated: Vec<Vec<u64>> =
        form.negate().metabolizers(bound)?.iter().map(|m| m.index_key()).collect();
    let original: Vec<Vec<u64>> = mets.iter().map(|m| m.index_key()).collect();
    if negated != original {
        return Ok(Some(format!(
            "negation changed the metabolizer set on {}",
            form.group()
        )));
    }
    Ok(None)
}

/// Builds a hypothesis-satisfying instance and checks the intersection
/// conclusion on every metabolizer.
fn lemma_key_case(rng: &mut ChaCha8Rng, bound: u64) -> Result<Option<String>> {
    let big = rng.gen_bool(0.25);
    let (p, f1, f2): (u64, LinkingForm, LinkingForm) = if big {
        // n = 2 at p = 2: (Z/4)^4 against a rank ≤ 2 two-group.
        let f1 = paired_diagonal(rng, 4, 2);
        let f2 = match rng.gen_range(0..3) {
            0 => LinkingForm::trivial(),
            1 => paired_diagonal(rng, 2, 1),
            _ => unit_cyclic(rng, 4),
        };
        (2, f1, f2)
    } else {
        let p = if rng.gen_bool(0.5) { 2 } else { 3 };
        let mut f1 = paired_diagonal(rng, p * p, 1);
        let mut f2 = LinkingForm::trivial();
        if rng.gen_bool(0.3) {
            // Coprime junk exercises the primary-part reduction.
            let q = if p == 2 { 9 } else { 4 };
            f1 = LinkingForm::direct_sum(&[
                (Sign::Plus, f1),
                (Sign::Plus, paired_diagonal(rng, q, 1)),
            ]);
        } else if rng.gen_bool(0.5) {
            let q = if p == 2 { 3 } else { 2 };
            f2 = paired_diagonal(rng, q, 1);
        }
        (p, f1, f2)
    };

    match verify_lemma_key(&f1, &f2, p, bound)? {
        LemmaVerdict::Pass { .. } => Ok(None),
        LemmaVerdict::Fail { counterexample } => Ok(Some(format!(
            "metabolizer {:?} of ({}) + -({}) at p={p} has too small an intersection \
             with the first summand",
            counterexample.index_key(),
            f1.group(),
            f2.group(),
        ))),
    }
}

/// `diag(a/d, -a/d, …)` with `pairs` signed pairs and random units `a`:
/// nonsingular, with guaranteed metabolizers.
fn paired_diagonal(rng: &mut ChaCha8Rng, d: u64, pairs: usize) -> LinkingForm {
    let units: Vec<u64> = (1..d).filter(|&a| gcd(a, d) == 1).collect();
    let orders = vec![d; 2 * pairs];
    let group = FinAbGroup::new(&orders).expect("valid orders");
    let k = group.rank();
    let mut gram = vec![vec![QmodZ::ZERO; k]; k];
    for pair in 0..pairs {
        let a = units[rng.gen_range(0..units.len())] as i64;
        gram[2 * pair][2 * pair] = QmodZ::new(a, d as i64).expect("unit");
        gram[2 * pair + 1][2 * pair + 1] = QmodZ::new(-a, d as i64).expect("unit");
    }
    LinkingForm::new(group, gram).expect("paired diagonal form")
}

fn unit_cyclic(rng: &mut ChaCha8Rng, d: u64) -> LinkingForm {
    let units: Vec<u64> = (1..d).filter(|&a| gcd(a, d) == 1).collect();
    let a = units[rng.gen_range(0..units.len())] as i64;
    LinkingForm::new(
        FinAbGroup::new(&[d]).expect("valid order"),
        vec![vec![QmodZ::new(a, d as i64).expect("unit")]],
    )
    .expect("cyclic form")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::DEFAULT_ORACLE_BOUND as BOUND;

    #[test]
    fn all_suites_pass_on_fixed_seeds() {
        for suite in [Suite::LemmaKey, Suite::Metabolizers, Suite::SelfConc] {
            for seed in [1u64, 7] {
                let out = run_suite(suite, seed, BOUND, 8).unwrap();
                assert!(out.passed(), "{}", out.summary());
            }
        }
    }

    #[test]
    fn suites_are_deterministic() {
        let a = run_suite(Suite::SelfConc, 3, BOUND, 5).unwrap();
        let b = run_suite(Suite::SelfConc, 3, BOUND, 5).unwrap();
        assert_eq!(a.failures, b.failures);
        assert_eq!(a.cases, b.cases);
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in [Suite::LemmaKey, Suite::Metabolizers, Suite::SelfConc] {
            assert_eq!(Suite::from_name(suite.name()), Some(suite));
        }
        assert_eq!(Suite::from_name("bogus"), None);
    }
}
