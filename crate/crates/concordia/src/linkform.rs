//! Q/Z-valued symmetric linking forms on finite abelian groups:
//! orthogonal complements, metabolizer testing and enumeration, and the
//! standard form carried by surgery pieces.
//!
//! A metabolizer of a nonsingular form λ on G is a subgroup M with
//! M = M^⊥; equivalently λ vanishes on M × M and |M|² = |G|. Enumeration
//! walks the subgroup lattice restricted to isotropic subgroups, which
//! keeps the search tiny compared to enumerating all subgroups of the
//! square-root order.

use std::fmt;

use num::BigUint;

use crate::algebra::{
    bfs_subgroups_filtered, gcd, lcm, smith_invariants, FinAbGroup, GroupElement, Subgroup,
};
use crate::error::{Error, Result};
use crate::Sign;

/// A residue in Q/Z, stored as a reduced fraction with `0 ≤ num < den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QmodZ {
    num: u64,
    den: u64,
}

impl QmodZ {
    pub const ZERO: QmodZ = QmodZ { num: 0, den: 1 };

    /// Reduces `num/den` mod 1. The denominator must be nonzero.
    pub fn new(num: i64, den: i64) -> Result<QmodZ> {
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator in Q/Z".into()));
        }
        let den_abs = den.unsigned_abs();
        let mut n = num.rem_euclid(den) as u64;
        if den < 0 {
            // num/den = (-num)/(-den); rem_euclid already handled the sign
            // of num against den, so flip to the positive denominator.
            n = num.rem_euclid(-den) as u64;
            n = if n == 0 { 0 } else { den_abs - n };
        }
        Ok(QmodZ::reduced(n, den_abs))
    }

    fn reduced(num: u64, den: u64) -> QmodZ {
        let num = num % den;
        let g = gcd(num, den);
        if num == 0 {
            QmodZ::ZERO
        } else {
            QmodZ { num: num / g, den: den / g }
        }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn add(&self, other: &QmodZ) -> QmodZ {
        let den = (self.den as u128) * (other.den as u128);
        let num = (self.num as u128) * (other.den as u128)
            + (other.num as u128) * (self.den as u128);
        let num = num % den;
        let g = gcd_u128(num, den);
        QmodZ { num: (num / g) as u64, den: (den / g) as u64 }
    }

    pub fn neg(&self) -> QmodZ {
        if self.num == 0 {
            QmodZ::ZERO
        } else {
            QmodZ { num: self.den - self.num, den: self.den }
        }
    }

    /// Integer scaling `c·x` in Q/Z.
    pub fn scale(&self, c: u128) -> QmodZ {
        let den = self.den as u128;
        let num = ((c % den) * (self.num as u128)) % den;
        QmodZ::reduced(num as u64, self.den)
    }

    pub fn scale_signed(&self, c: i128) -> QmodZ {
        if c < 0 {
            self.scale(c.unsigned_abs()).neg()
        } else {
            self.scale(c as u128)
        }
    }
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd_u128(b, a % b)
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A symmetric Q/Z-valued pairing on a [`FinAbGroup`], given by its Gram
/// matrix on the cyclic generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingForm {
    group: FinAbGroup,
    gram: Vec<QmodZ>, // row-major k×k
}

impl LinkingForm {
    /// Validates symmetry and well-definedness (`d_i · gram[i][j] = 0` in Q/Z)
    /// before accepting the matrix.
    pub fn new(group: FinAbGroup, gram: Vec<Vec<QmodZ>>) -> Result<LinkingForm> {
        let k = group.rank();
        if gram.len() != k || gram.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidForm(format!(
                "gram matrix must be {k}x{k} for {group}"
            )));
        }
        for i in 0..k {
            for j in 0..k {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidForm(format!(
                        "asymmetric entries at ({i},{j})"
                    )));
                }
                let d = group.cyclic_orders()[i];
                if !gram[i][j].scale(d as u128).is_zero() {
                    return Err(Error::InvalidForm(format!(
                        "entry ({i},{j}) = {} is not annihilated by the order {d} of generator {i}",
                        gram[i][j]
                    )));
                }
            }
        }
        let gram = gram.into_iter().flatten().collect();
        Ok(LinkingForm { group, gram })
    }

    pub fn trivial() -> LinkingForm {
        LinkingForm { group: FinAbGroup::trivial(), gram: Vec::new() }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn gram(&self, i: usize, j: usize) -> QmodZ {
        self.gram[i * self.group.rank() + j]
    }

    /// Evaluates `λ(x, y)` exactly.
    pub fn eval(&self, x: &GroupElement, y: &GroupElement) -> QmodZ {
        let k = self.group.rank();
        let mut acc = QmodZ::ZERO;
        for (i, &xi) in x.coords().iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.coords().iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let term = self.gram[i * k + j].scale(xi as u128 * yj as u128);
                acc = acc.add(&term);
            }
        }
        acc
    }

    /// Exact nonsingularity test: the radical `{x : λ(x,·) = 0}` is counted
    /// through the Smith normal form of the scaled Gram matrix, so the test
    /// works at any group order.
    pub fn is_nonsingular(&self) -> bool {
        let k = self.group.rank();
        if k == 0 {
            return true;
        }
        let l = self.gram.iter().map(|q| q.den).fold(1u64, lcm);
        // Radical order = (∏ d_i)(∏ s_i) / L^k where the s_i are the Smith
        // invariants of [B | L·I] and B is the Gram matrix scaled by L.
        let mut stacked = vec![0i128; k * 2 * k];
        for i in 0..k {
            for j in 0..k {
                let q = self.gram[i * k + j];
                stacked[i * 2 * k + j] = (q.num as i128) * ((l / q.den) as i128);
            }
            stacked[i * 2 * k + k + i] = l as i128;
        }
        let s = smith_invariants(k, 2 * k, &stacked);
        let mut lhs = BigUint::from(1u32);
        for &d in self.group.cyclic_orders() {
            lhs *= BigUint::from(d);
        }
        for si in s {
            lhs *= BigUint::from(si.unsigned_abs());
        }
        let rhs = BigUint::from(l).pow(k as u32);
        lhs == rhs
    }

    /// Block-diagonal sum of signed forms; blocks with a minus sign are
    /// negated (the linking form of an orientation-reversed piece).
    pub fn direct_sum(parts: &[(Sign, LinkingForm)]) -> LinkingForm {
        let mut orders = Vec::new();
        for (_, f) in parts {
            orders.extend_from_slice(f.group.cyclic_orders());
        }
        let group = FinAbGroup::new(&orders)
            .expect("cyclic orders of existing groups are valid");
        let k = group.rank();
        let mut gram = vec![QmodZ::ZERO; k * k];
        let mut offset = 0;
        for (sign, f) in parts {
            let kf = f.group.rank();
            for i in 0..kf {
                for j in 0..kf {
                    let entry = match sign {
                        Sign::Plus => f.gram[i * kf + j],
                        Sign::Minus => f.gram[i * kf + j].neg(),
                    };
                    gram[(offset + i) * k + (offset + j)] = entry;
                }
            }
            offset += kf;
        }
        LinkingForm { group, gram }
    }

    pub fn negate(&self) -> LinkingForm {
        LinkingForm {
            group: self.group.clone(),
            gram: self.gram.iter().map(QmodZ::neg).collect(),
        }
    }

    /// `{x ∈ G : λ(x, s) = 0 for every generator s of S}`, as an element set.
    pub fn orthogonal_complement(&self, s: &Subgroup, bound: u64) -> Result<Subgroup> {
        self.check_ambient(s, bound)?;
        let gens = s.generators();
        let mut key = Vec::new();
        for x in self.group.elements() {
            if gens.iter().all(|g| self.eval(&x, g).is_zero()) {
                key.push(self.group.index_of(&x));
            }
        }
        Ok(Subgroup::from_index_key(&self.group, &key))
    }

    /// True iff `|M|² = |G|` and λ vanishes on M × M (checked on a
    /// generating set; bilinearity extends it to the whole subgroup).
    pub fn is_metabolizer(&self, m: &Subgroup, bound: u64) -> Result<bool> {
        self.check_ambient(m, bound)?;
        let sq = (m.order() as u128) * (m.order() as u128);
        if sq != self.group.order() {
            return Ok(false);
        }
        let gens = m.generators();
        for a in gens {
            for b in gens {
                if !self.eval(a, b).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Every metabolizer of the form, in lexicographic order of sorted
    /// element-index keys. Empty when the group order is not a perfect
    /// square.
    pub fn metabolizers(&self, bound: u64) -> Result<Vec<Subgroup>> {
        let order = self.group.order();
        if order > bound as u128 {
            return Err(Error::ResourceLimit { order, bound });
        }
        let Some(target) = exact_sqrt(order) else {
            return Ok(Vec::new());
        };

        // Pairing numerators over the common denominator L, with a
        // rank × |G| partial-sum table so each pairing costs rank
        // multiplications.
        let k = self.group.rank();
        let n = order as u64;
        let l = self.gram.iter().map(|q| q.den).fold(1u64, lcm);
        let b: Vec<u64> = self.gram.iter().map(|q| q.num * (l / q.den)).collect();
        let coords: Vec<GroupElement> = self.group.elements().collect();
        let mut partial = vec![0u64; k * n as usize];
        for i in 0..k {
            for (y_idx, y) in coords.iter().enumerate() {
                let mut acc: u128 = 0;
                for (j, &yj) in y.coords().iter().enumerate() {
                    acc += (b[i * k + j] as u128) * (yj as u128);
                }
                partial[i * n as usize + y_idx] = (acc % l as u128) as u64;
            }
        }
        let pair_num = |x_idx: u64, y_idx: u64| -> u64 {
            let x = &coords[x_idx as usize];
            let mut acc: u128 = 0;
            for (i, &xi) in x.coords().iter().enumerate() {
                acc += (xi as u128) * (partial[i * n as usize + y_idx as usize] as u128);
            }
            (acc % l as u128) as u64
        };

        let filter = |node: &crate::algebra::BfsNode, cand: u64| -> bool {
            pair_num(cand, cand) == 0 && node.gens.iter().all(|&g| pair_num(cand, g) == 0)
        };
        let keys = bfs_subgroups_filtered(&self.group, target, &filter);
        Ok(keys.iter().map(|key| Subgroup::from_index_key(&self.group, key)).collect())
    }

    fn check_ambient(&self, s: &Subgroup, bound: u64) -> Result<()> {
        let order = self.group.order();
        if order > bound as u128 {
            return Err(Error::ResourceLimit { order, bound });
        }
        if s.ambient() != &self.group {
            return Err(Error::InvalidArgument(
                "subgroup does not live in the form's group".into(),
            ));
        }
        Ok(())
    }
}

/// The standard linking form of the surgery piece `±S³_n`: on Z/n the
/// generator pairs to `∓1/n`. Either overall convention gives the same
/// metabolizer sets; this one is fixed for reproducibility.
pub fn surgery_form(n: u64, sign: Sign) -> Result<LinkingForm> {
    if n == 0 {
        return Err(Error::InvalidArgument("surgery coefficient must be positive".into()));
    }
    if n == 1 {
        return Ok(LinkingForm::trivial());
    }
    let entry = match sign {
        Sign::Plus => QmodZ::new(-1, n as i64)?,
        Sign::Minus => QmodZ::new(1, n as i64)?,
    };
    LinkingForm::new(FinAbGroup::new(&[n])?, vec![vec![entry]])
}

fn exact_sqrt(n: u128) -> Option<u64> {
    let r = (n as f64).sqrt() as u128;
    for c in r.saturating_sub(2)..=r + 2 {
        if c * c == n {
            return Some(c as u64);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::DEFAULT_ORACLE_BOUND as BOUND;

    fn q(num: i64, den: i64) -> QmodZ {
        QmodZ::new(num, den).unwrap()
    }

    fn group(orders: &[u64]) -> FinAbGroup {
        FinAbGroup::new(orders).unwrap()
    }

    fn diag_form(orders: &[u64], entries: &[QmodZ]) -> LinkingForm {
        let g = group(orders);
        let k = g.rank();
        let gram: Vec<Vec<QmodZ>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { entries[i] } else { QmodZ::ZERO }).collect())
            .collect();
        LinkingForm::new(g, gram).unwrap()
    }

    /// Exhaustive metabolizer oracle: checks the vanishing of λ on the full
    /// M × M directly, independent of the generator-based test.
    fn oracle_is_metabolizer(f: &LinkingForm, m: &Subgroup) -> bool {
        let sq = (m.order() as u128) * (m.order() as u128);
        sq == f.group().order()
            && m.elements()
                .iter()
                .all(|a| m.elements().iter().all(|b| f.eval(a, b).is_zero()))
    }

    #[test]
    fn qmodz_arithmetic() {
        assert_eq!(q(-1, 25), q(24, 25));
        assert_eq!(q(1, 2).add(&q(1, 2)), QmodZ::ZERO);
        assert_eq!(q(1, 4).scale(2), q(1, 2));
        assert_eq!(q(3, 8).neg(), q(5, 8));
        assert_eq!(q(7, 3), q(1, 3));
        assert_eq!(q(1, -3), q(2, 3));
        assert_eq!(q(5, 5), QmodZ::ZERO);
        assert!(QmodZ::new(1, 0).is_err());
    }

    #[test]
    fn make_form_validation() {
        let f = LinkingForm::new(group(&[7]), vec![vec![q(-1, 7)]]).unwrap();
        assert_eq!(f.gram(0, 0), q(6, 7));

        // 4·(1/8) = 1/2 ≠ 0 in Q/Z: not well defined on Z/4.
        assert!(matches!(
            LinkingForm::new(group(&[4]), vec![vec![q(1, 8)]]),
            Err(Error::InvalidForm(_))
        ));

        assert!(LinkingForm::new(
            group(&[9, 9]),
            vec![vec![q(1, 9), QmodZ::ZERO], vec![QmodZ::ZERO, q(-1, 9)]]
        )
        .is_ok());

        assert!(matches!(
            LinkingForm::new(
                group(&[9, 9]),
                vec![vec![q(1, 9), q(1, 9)], vec![QmodZ::ZERO, q(1, 9)]]
            ),
            Err(Error::InvalidForm(_))
        ));
    }

    #[test]
    fn nonsingularity() {
        for n in [3u64, 5, 9, 25] {
            let f = surgery_form(n, Sign::Plus).unwrap();
            assert!(f.is_nonsingular(), "surgery form on Z/{n}");
        }
        // x = 2 pairs to an integer with everything.
        let f = LinkingForm::new(group(&[4]), vec![vec![q(1, 2)]]).unwrap();
        assert!(!f.is_nonsingular());
        assert!(LinkingForm::trivial().is_nonsingular());
    }

    #[test]
    fn nonsingularity_matches_exhaustive_radical() {
        let forms = [
            diag_form(&[9, 9], &[q(1, 9), q(-1, 9)]),
            diag_form(&[4, 2], &[q(1, 4), q(1, 2)]),
            LinkingForm::new(group(&[4]), vec![vec![q(1, 2)]]).unwrap(),
            LinkingForm::new(
                group(&[8, 8]),
                vec![vec![QmodZ::ZERO, q(1, 8)], vec![q(1, 8), QmodZ::ZERO]],
            )
            .unwrap(),
            LinkingForm::new(
                group(&[6, 4]),
                vec![vec![q(1, 6), q(1, 2)], vec![q(1, 2), q(1, 4)]],
            )
            .unwrap(),
        ];
        for f in &forms {
            let radical_trivial = f.group().elements().skip(1).all(|x| {
                !(0..f.group().rank()).all(|j| {
                    let gen = f.group().element_at(
                        f.group().cyclic_orders()[j + 1..].iter().product::<u64>(),
                    );
                    f.eval(&x, &gen).is_zero()
                })
            });
            assert_eq!(f.is_nonsingular(), radical_trivial, "form {:?}", f.gram);
        }
    }

    #[test]
    fn direct_sum_and_negation() {
        let f = surgery_form(25, Sign::Plus).unwrap();
        let sum = LinkingForm::direct_sum(&[(Sign::Plus, f.clone()), (Sign::Minus, f.clone())]);
        assert_eq!(sum.group().cyclic_orders(), &[25, 25]);
        assert_eq!(sum.gram(0, 0), q(-1, 25));
        assert_eq!(sum.gram(1, 1), q(1, 25));
        assert_eq!(sum.gram(0, 1), QmodZ::ZERO);

        let empty = LinkingForm::direct_sum(&[]);
        assert!(empty.group().is_trivial());

        let double_neg = LinkingForm::direct_sum(&[(
            Sign::Minus,
            LinkingForm::direct_sum(&[(Sign::Minus, f.clone())]),
        )]);
        assert_eq!(double_neg, f);
    }

    #[test]
    fn orthogonal_complement_examples() {
        let f = diag_form(&[9, 9], &[q(1, 9), q(-1, 9)]);
        let whole = Subgroup::whole(f.group(), BOUND).unwrap();
        let perp = f.orthogonal_complement(&whole, BOUND).unwrap();
        assert_eq!(perp.order(), 1);

        let trivial = Subgroup::trivial(f.group());
        let perp = f.orthogonal_complement(&trivial, BOUND).unwrap();
        assert_eq!(perp.order(), 81);

        let diag = Subgroup::from_generators(
            f.group(),
            &[f.group().element(&[1, 1]).unwrap()],
            BOUND,
        )
        .unwrap();
        let perp = f.orthogonal_complement(&diag, BOUND).unwrap();
        assert_eq!(perp.index_key(), diag.index_key());
    }

    #[test]
    fn metabolizer_test_examples() {
        let f = diag_form(&[9, 9], &[q(1, 9), q(-1, 9)]);
        let diag = Subgroup::from_generators(
            f.group(),
            &[f.group().element(&[1, 1]).unwrap()],
            BOUND,
        )
        .unwrap();
        assert!(f.is_metabolizer(&diag, BOUND).unwrap());
        assert!(oracle_is_metabolizer(&f, &diag));

        // λ((a,-a),(b,-b)) = ab/9 - ab/9 = 0, so the anti-diagonal is also a
        // metabolizer; verdict fixed by the exhaustive oracle.
        let anti = Subgroup::from_generators(
            f.group(),
            &[f.group().element(&[1, 8]).unwrap()],
            BOUND,
        )
        .unwrap();
        assert_eq!(
            f.is_metabolizer(&anti, BOUND).unwrap(),
            oracle_is_metabolizer(&f, &anti)
        );
        assert!(f.is_metabolizer(&anti, BOUND).unwrap());

        let z25 = surgery_form(25, Sign::Plus).unwrap();
        let zero = Subgroup::trivial(z25.group());
        assert!(!z25.is_metabolizer(&zero, BOUND).unwrap());
    }

    #[test]
    fn metabolizer_enumeration_z9_squared() {
        let f = diag_form(&[9, 9], &[q(1, 9), q(-1, 9)]);
        let mets = f.metabolizers(BOUND).unwrap();
        // Diagonal, anti-diagonal, and the 3-torsion subgroup.
        assert_eq!(mets.len(), 3);
        let diag = Subgroup::from_generators(
            f.group(),
            &[f.group().element(&[1, 1]).unwrap()],
            BOUND,
        )
        .unwrap();
        assert!(mets.iter().any(|m| m.index_key() == diag.index_key()));
        for m in &mets {
            assert!(oracle_is_metabolizer(&f, m));
            let perp = f.orthogonal_complement(m, BOUND).unwrap();
            assert_eq!(perp.index_key(), m.index_key(), "M must equal its complement");
        }
    }

    #[test]
    fn metabolizer_enumeration_z25() {
        // λ(5,5) = -25/25 = 0 mod 1: the order-5 subgroup is metabolic.
        let f = surgery_form(25, Sign::Plus).unwrap();
        let mets = f.metabolizers(BOUND).unwrap();
        assert_eq!(mets.len(), 1);
        assert_eq!(mets[0].index_key(), vec![0, 5, 10, 15, 20]);

        let trivial = LinkingForm::trivial();
        let mets = trivial.metabolizers(BOUND).unwrap();
        assert_eq!(mets.len(), 1);
        assert_eq!(mets[0].order(), 1);
    }

    #[test]
    fn non_square_order_has_no_metabolizers() {
        let f = surgery_form(3, Sign::Plus).unwrap();
        assert!(f.metabolizers(BOUND).unwrap().is_empty());
    }

    #[test]
    fn surgery_form_examples() {
        let f = surgery_form(25, Sign::Plus).unwrap();
        assert_eq!(f.gram(0, 0), q(24, 25));
        assert!(surgery_form(1, Sign::Plus).unwrap().group().is_trivial());
        let f = surgery_form(23, Sign::Minus).unwrap();
        assert_eq!(f.gram(0, 0), q(1, 23));
        assert!(surgery_form(0, Sign::Plus).is_err());
    }

    #[test]
    fn paired_sum_admits_diagonal_metabolizer() {
        for n in [3u64, 5, 9, 25, 27] {
            for sign in [Sign::Plus, Sign::Minus] {
                let f = surgery_form(n, sign).unwrap();
                let sum =
                    LinkingForm::direct_sum(&[(Sign::Plus, f.clone()), (Sign::Minus, f)]);
                let diag = Subgroup::from_generators(
                    sum.group(),
                    &[sum.group().element(&[1, 1]).unwrap()],
                    BOUND,
                )
                .unwrap();
                assert!(sum.is_metabolizer(&diag, BOUND).unwrap());
                assert!(sum
                    .metabolizers(BOUND)
                    .unwrap()
                    .iter()
                    .any(|m| m.index_key() == diag.index_key()));
            }
        }
    }

    #[test]
    fn negation_preserves_metabolizer_set() {
        let forms = [
            diag_form(&[9, 9], &[q(1, 9), q(-1, 9)]),
            diag_form(&[4, 4], &[q(1, 4), q(1, 4)]),
            surgery_form(25, Sign::Plus).unwrap(),
        ];
        for f in &forms {
            let a: Vec<Vec<u64>> =
                f.metabolizers(BOUND).unwrap().iter().map(|m| m.index_key()).collect();
            let b: Vec<Vec<u64>> =
                f.negate().metabolizers(BOUND).unwrap().iter().map(|m| m.index_key()).collect();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn nonsingular_of_sum_is_conjunction() {
        let good = surgery_form(9, Sign::Plus).unwrap();
        let bad = LinkingForm::new(group(&[4]), vec![vec![q(1, 2)]]).unwrap();
        let sum = LinkingForm::direct_sum(&[(Sign::Plus, good.clone()), (Sign::Plus, bad)]);
        assert!(!sum.is_nonsingular());
        let sum = LinkingForm::direct_sum(&[
            (Sign::Plus, good.clone()),
            (Sign::Minus, surgery_form(5, Sign::Plus).unwrap()),
        ]);
        assert!(sum.is_nonsingular());
    }
}
