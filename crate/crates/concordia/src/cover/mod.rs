//! The knot-expression language: parsing, ν⁺-normalization of doubled cable
//! companions, and the structural rewrite from a knot expression to a
//! surgery description of its 2-fold branched cover.

mod ast;
mod parse;

pub use ast::{declared_annotations, kstar_definition, Annotation, KnotExpr};
pub use parse::parse;

use crate::algebra::FinAbGroup;
use crate::dcalc::{CoverDescription, SurgeryPiece, VSequence};
use crate::error::{Error, Result};
use crate::linkform::LinkingForm;
use crate::Sign;

/// Normalizes the ν⁺-class of `J # J^r` for a cable companion `J`, returning
/// a single `ThinClass` or `ExplicitV` node.
///
/// The rewrite rules are deliberately minimal:
/// * reverses are ν⁺-transparent, so `J # J^r ~ J # J`;
/// * self-sums of the positive Whitehead double of the right-handed trefoil
///   collapse (`WhD^a # WhD^b = WhD^{a+b}`, with `U` as the empty block), and
///   the n-fold block is ν⁺-equivalent to `T(2,2n+1)`, a thin knot with
///   signature `-2n`;
/// * an `ExplicitV` companion declares the V-sequence of the doubled sum
///   outright.
///
/// Anything else is refused rather than guessed: in particular a sum of thin
/// classes is not assumed thin.
pub fn nu_plus_normalize(companion: &KnotExpr) -> Result<KnotExpr> {
    if let KnotExpr::ExplicitV(v) = companion {
        return Ok(KnotExpr::ExplicitV(v.clone()));
    }
    let weight = whd_weight(companion)?;
    // J = WhD^w, so J # J^r ~ WhD^{2w} ~ T(2, 4w+1) with signature -4w.
    Ok(KnotExpr::ThinClass(-4 * weight as i64))
}

/// Total Whitehead-block weight of an expression built from `U` and `WhD^n`
/// summands; anything else cannot be normalized.
fn whd_weight(e: &KnotExpr) -> Result<u64> {
    match e {
        KnotExpr::Unknot => Ok(0),
        KnotExpr::WhDoublePow(n) => Ok(*n),
        KnotExpr::Sum(parts) => parts.iter().map(whd_weight).sum(),
        other => Err(Error::NotNormalizable(format!(
            "no V-data rule for the doubled companion of '{other}'; \
             declare it explicitly with V[...]"
        ))),
    }
}

/// Rewrites a knot expression into a surgery description of its 2-fold
/// branched cover:
///
/// * `Σ₂(T(2,q)) = +S³_q(U)`,
/// * `Σ₂(C(2,q;J)) = +S³_q(J # J^r)` with V-data from [`nu_plus_normalize`],
/// * mirroring reverses the orientation of every piece,
/// * connected sums concatenate.
pub fn branched_double_cover(e: &KnotExpr) -> Result<CoverDescription> {
    match e {
        KnotExpr::Unknot => Ok(CoverDescription::default()),
        KnotExpr::TorusKnot { q } => Ok(CoverDescription::new(vec![SurgeryPiece::new(
            Sign::Plus,
            *q,
            VSequence::zero(),
        )?])),
        KnotExpr::Cable { q, companion } => {
            let vseq = match nu_plus_normalize(companion)? {
                KnotExpr::ThinClass(sigma) => VSequence::thin(sigma)?,
                KnotExpr::ExplicitV(v) => v,
                other => unreachable!("normalization returned {other}"),
            };
            Ok(CoverDescription::new(vec![SurgeryPiece::new(Sign::Plus, *q, vseq)?]))
        }
        KnotExpr::Mirror(inner) => Ok(branched_double_cover(inner)?.mirrored()),
        KnotExpr::Sum(parts) => {
            let covers: Vec<CoverDescription> =
                parts.iter().map(branched_double_cover).collect::<Result<_>>()?;
            Ok(CoverDescription::concat(&covers))
        }
        KnotExpr::Kstar => branched_double_cover(&kstar_definition()),
        KnotExpr::WhDoublePow(_) | KnotExpr::ThinClass(_) | KnotExpr::ExplicitV(_) => {
            Err(Error::Unsupported(format!(
                "'{e}' carries V-data only and has no surgery description for \
                 its branched cover; use it as a cable companion"
            )))
        }
    }
}

/// First homology and linking form of a cover: `⊕ Z/n_j` with the
/// block-diagonal form `⊕ ±λ(S³_n)`.
pub fn cover_homology(c: &CoverDescription) -> (FinAbGroup, LinkingForm) {
    (c.group(), c.form())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dcalc::Rational;

    fn thin16() -> VSequence {
        VSequence::thin(-16).unwrap()
    }

    #[test]
    fn normalize_whitehead_blocks() {
        assert_eq!(
            nu_plus_normalize(&KnotExpr::WhDoublePow(4)).unwrap(),
            KnotExpr::ThinClass(-16)
        );
        assert_eq!(nu_plus_normalize(&KnotExpr::Unknot).unwrap(), KnotExpr::ThinClass(0));
        let mixed = parse("WhD^1 # U # WhD^2").unwrap();
        assert_eq!(nu_plus_normalize(&mixed).unwrap(), KnotExpr::ThinClass(-12));
    }

    #[test]
    fn normalize_refuses_to_guess() {
        assert!(matches!(
            nu_plus_normalize(&KnotExpr::ThinClass(-4)),
            Err(Error::NotNormalizable(_))
        ));
        assert!(matches!(
            nu_plus_normalize(&KnotExpr::WhDoublePow(4).mirror()),
            Err(Error::NotNormalizable(_))
        ));
        assert!(matches!(
            nu_plus_normalize(&KnotExpr::TorusKnot { q: 3 }),
            Err(Error::NotNormalizable(_))
        ));
    }

    #[test]
    fn explicit_v_passes_through() {
        let v = VSequence::new(&[2, 1]).unwrap();
        assert_eq!(
            nu_plus_normalize(&KnotExpr::ExplicitV(v.clone())).unwrap(),
            KnotExpr::ExplicitV(v)
        );
    }

    #[test]
    fn kstar_cover_matches_the_connected_sum_decomposition() {
        let cover = branched_double_cover(&KnotExpr::Kstar).unwrap();
        let pieces = cover.pieces();
        assert_eq!(pieces.len(), 4);
        let expect = [
            (Sign::Plus, 25u64, thin16()),
            (Sign::Minus, 23, thin16()),
            (Sign::Minus, 25, VSequence::zero()),
            (Sign::Plus, 23, VSequence::zero()),
        ];
        for (piece, (sign, n, vseq)) in pieces.iter().zip(&expect) {
            assert_eq!(piece.sign(), *sign);
            assert_eq!(piece.n(), *n);
            assert_eq!(piece.vseq(), vseq);
        }
    }

    #[test]
    fn torus_knot_covers() {
        let c = branched_double_cover(&parse("T(2,3)").unwrap()).unwrap();
        assert_eq!(c.pieces().len(), 1);
        assert_eq!(c.pieces()[0].sign(), Sign::Plus);
        assert_eq!(c.pieces()[0].n(), 3);
        assert!(c.pieces()[0].vseq().is_zero());

        let m = branched_double_cover(&parse("-T(2,3)").unwrap()).unwrap();
        assert_eq!(m.pieces()[0].sign(), Sign::Minus);
    }

    #[test]
    fn mirror_flips_every_sign() {
        let e = parse("Kstar # T(2,7)").unwrap();
        let plain = branched_double_cover(&e).unwrap();
        let mirrored = branched_double_cover(&e.mirror()).unwrap();
        assert_eq!(plain.pieces().len(), mirrored.pieces().len());
        for (a, b) in plain.pieces().iter().zip(mirrored.pieces()) {
            assert_eq!(a.sign(), -b.sign());
            assert_eq!(a.n(), b.n());
            assert_eq!(a.vseq(), b.vseq());
        }
    }

    #[test]
    fn sums_concatenate() {
        let a = parse("T(2,3)").unwrap();
        let b = parse("C(2,5;U)").unwrap();
        let sum = KnotExpr::Sum(vec![a.clone(), b.clone()]);
        let joined = branched_double_cover(&sum).unwrap();
        let separate = CoverDescription::concat(&[
            branched_double_cover(&a).unwrap(),
            branched_double_cover(&b).unwrap(),
        ]);
        assert_eq!(joined, separate);
    }

    #[test]
    fn v_data_nodes_have_no_cover() {
        for text in ["D", "thin(-4)", "V[1]", "WhD^3"] {
            let e = parse(text).unwrap();
            assert!(matches!(branched_double_cover(&e), Err(Error::Unsupported(_))));
        }
    }

    #[test]
    fn homology_of_kstar_and_its_sums() {
        let (g, f) = cover_homology(&branched_double_cover(&KnotExpr::Kstar).unwrap());
        assert_eq!(g.cyclic_orders(), &[25, 23, 25, 23]);
        assert_eq!(g.invariants(), &[575, 575]);
        assert!(f.is_nonsingular());

        let empty = cover_homology(&CoverDescription::default());
        assert!(empty.0.is_trivial());

        let two = parse("Kstar # Kstar").unwrap();
        let (g2, _) = cover_homology(&branched_double_cover(&two).unwrap());
        assert_eq!(g2.invariants(), &[575, 575, 575, 575]);
    }

    #[test]
    fn cover_order_is_odd_for_supported_expressions() {
        for text in ["U", "T(2,9)", "Kstar", "C(2,7;D) # -T(2,15)", "-Kstar # Kstar"] {
            let c = branched_double_cover(&parse(text).unwrap()).unwrap();
            assert_eq!(c.group().order() % 2, 1, "cover of {text}");
        }
    }

    #[test]
    fn cable_cover_consumes_the_doubled_v_sequence() {
        let c = branched_double_cover(&parse("C(2,25;D)").unwrap()).unwrap();
        assert_eq!(c.pieces()[0].vseq(), &thin16());
        // d̄ on the piece reproduces the thin staircase data.
        assert_eq!(c.pieces()[0].dbar(5).unwrap(), Rational::from_integer(0));
        assert_eq!(c.pieces()[0].dbar(10).unwrap(), Rational::from_integer(2));

        let explicit = branched_double_cover(&parse("C(2,9;V[2,1])").unwrap()).unwrap();
        assert_eq!(explicit.pieces()[0].vseq(), &VSequence::new(&[2, 1]).unwrap());
    }

    #[test]
    fn not_normalizable_propagates_from_companions() {
        let e = parse("C(2,9;thin(-4))").unwrap();
        assert!(matches!(branched_double_cover(&e), Err(Error::NotNormalizable(_))));
    }
}
