//! Property tests for the structural invariants: canonical forms classify
//! isomorphism, primary parts never gain rank, d̄ sums are additive, covers
//! of mirrors flip signs, and printing is a section of parsing.

use proptest::prelude::*;

use concordia::algebra::{factorize, FinAbGroup};
use concordia::cover::{branched_double_cover, parse, KnotExpr};
use concordia::dcalc::{CoverDescription, SurgeryPiece, VSequence};
use concordia::linkform::QmodZ;
use concordia::Sign;

fn small_orders() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2u64..=16, 0..=3)
        .prop_filter("group order cap", |v| v.iter().product::<u64>() <= 1024)
}

/// The multiset of element orders, a presentation-independent fingerprint.
fn order_multiset(g: &FinAbGroup) -> Vec<(u64, u64)> {
    let mut counts = std::collections::BTreeMap::new();
    for x in g.elements() {
        *counts.entry(g.order_of(&x)).or_insert(0u64) += 1;
    }
    counts.into_iter().collect()
}

/// Elementary divisors of a presentation, shuffled: an isomorphic
/// re-presentation of the same group.
fn shuffled_elementary_divisors(orders: &[u64], rotate: usize) -> Vec<u64> {
    let mut divisors: Vec<u64> = orders
        .iter()
        .flat_map(|&d| factorize(d).into_iter().map(|(p, e)| p.pow(e)))
        .collect();
    if !divisors.is_empty() {
        let shift = rotate % divisors.len();
        divisors.rotate_left(shift);
    }
    divisors
}

proptest! {
    #[test]
    fn canonical_invariants_classify_isomorphism(
        a in small_orders(),
        b in small_orders(),
    ) {
        let ga = FinAbGroup::new(&a).unwrap();
        let gb = FinAbGroup::new(&b).unwrap();
        prop_assert_eq!(
            ga.invariants() == gb.invariants(),
            order_multiset(&ga) == order_multiset(&gb)
        );
    }

    #[test]
    fn re_presentations_are_isomorphic(orders in small_orders(), rotate in 0usize..8) {
        let g = FinAbGroup::new(&orders).unwrap();
        let re = FinAbGroup::new(&shuffled_elementary_divisors(&orders, rotate)).unwrap();
        prop_assert!(g.is_isomorphic(&re));
    }

    #[test]
    fn primary_rank_never_exceeds_total(orders in small_orders()) {
        let g = FinAbGroup::new(&orders).unwrap();
        for p in g.prime_divisors() {
            let (gp, embed) = g.primary_part(p).unwrap();
            prop_assert!(gp.generating_rank() <= g.generating_rank());
            // Embedded generators really have p-power order.
            for (i, _) in gp.cyclic_orders().iter().enumerate() {
                let mut coords = vec![0u64; gp.rank()];
                coords[i] = 1;
                let image = embed.embed(&gp.element(&coords).unwrap());
                let ord = g.order_of(&image);
                prop_assert_eq!(ord, gp.cyclic_orders()[i]);
            }
        }
    }

    #[test]
    fn qmodz_scaling_distributes(num in -40i64..40, den in 1i64..40, c1 in 0u64..30, c2 in 0u64..30) {
        let x = QmodZ::new(num, den).unwrap();
        let lhs = x.scale((c1 + c2) as u128);
        let rhs = x.scale(c1 as u128).add(&x.scale(c2 as u128));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.add(&x.neg()), QmodZ::ZERO);
    }
}

fn vseq_strategy() -> impl Strategy<Value = VSequence> {
    prop::collection::vec(0u64..=1, 0..=5).prop_map(|steps| {
        let mut values = Vec::new();
        let mut v = 0u64;
        for s in steps {
            v += s;
            values.push(v);
        }
        values.reverse();
        VSequence::new(&values).unwrap()
    })
}

fn piece_strategy() -> impl Strategy<Value = SurgeryPiece> {
    (0u64..=7, any::<bool>(), vseq_strategy()).prop_map(|(half, plus, vseq)| {
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        SurgeryPiece::new(sign, 2 * half + 1, vseq).unwrap()
    })
}

fn cover_strategy() -> impl Strategy<Value = CoverDescription> {
    prop::collection::vec(piece_strategy(), 0..=3).prop_map(CoverDescription::new)
}

proptest! {
    #[test]
    fn thin_sequences_are_staircases(sigma_half in -20i64..=10) {
        let v = VSequence::thin(2 * sigma_half).unwrap();
        prop_assert!(VSequence::new(v.values()).is_ok());
    }

    #[test]
    fn dbar_additive_over_concatenation(
        a in cover_strategy(),
        b in cover_strategy(),
        seed_a in any::<u64>(),
        seed_b in any::<u64>(),
    ) {
        let (ga, gb) = (a.group(), b.group());
        let za = ga.element_at(seed_a % ga.order().max(1) as u64);
        let zb = gb.element_at(seed_b % gb.order().max(1) as u64);
        let joined = CoverDescription::concat(&[a.clone(), b.clone()]);
        let gj = joined.group();
        let coords: Vec<u64> =
            za.coords().iter().chain(zb.coords()).copied().collect();
        let zj = gj.element(&coords).unwrap();
        prop_assert_eq!(
            joined.dbar_sum(&zj).unwrap(),
            a.dbar_sum(&za).unwrap() + b.dbar_sum(&zb).unwrap()
        );
    }
}

fn coverable_expr() -> impl Strategy<Value = KnotExpr> {
    let companion = prop_oneof![
        Just(KnotExpr::Unknot),
        (1u64..=6).prop_map(KnotExpr::WhDoublePow),
        vseq_strategy().prop_map(KnotExpr::ExplicitV),
    ];
    let leaf = prop_oneof![
        Just(KnotExpr::Unknot),
        Just(KnotExpr::Kstar),
        (1u64..=20).prop_map(|h| KnotExpr::TorusKnot { q: 2 * h + 1 }),
        (1u64..=20, companion).prop_map(|(h, c)| KnotExpr::Cable {
            q: 2 * h + 1,
            companion: Box::new(c),
        }),
    ];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(KnotExpr::mirror),
            prop::collection::vec(inner, 2..=3).prop_map(KnotExpr::Sum),
        ]
    })
}

fn any_expr() -> impl Strategy<Value = KnotExpr> {
    let leaf = prop_oneof![
        Just(KnotExpr::Unknot),
        Just(KnotExpr::Kstar),
        (1u64..=30).prop_map(|h| KnotExpr::TorusKnot { q: 2 * h + 1 }),
        (1u64..=6).prop_map(KnotExpr::WhDoublePow),
        (-10i64..=10).prop_map(|h| KnotExpr::ThinClass(2 * h)),
        vseq_strategy().prop_map(KnotExpr::ExplicitV),
    ];
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(KnotExpr::mirror),
            (1u64..=20, inner.clone()).prop_map(|(h, c)| KnotExpr::Cable {
                q: 2 * h + 1,
                companion: Box::new(c),
            }),
            prop::collection::vec(inner, 2..=3).prop_map(KnotExpr::Sum),
        ]
    })
}

proptest! {
    #[test]
    fn printing_is_a_section_of_parsing(e in any_expr()) {
        let printed = e.to_string();
        let reparsed = parse(&printed).unwrap();
        prop_assert_eq!(reparsed, e);
    }

    #[test]
    fn mirror_flips_cover_signs(e in coverable_expr()) {
        let plain = branched_double_cover(&e).unwrap();
        let mirrored = branched_double_cover(&e.clone().mirror()).unwrap();
        prop_assert_eq!(plain.pieces().len(), mirrored.pieces().len());
        for (a, b) in plain.pieces().iter().zip(mirrored.pieces()) {
            prop_assert_eq!(a.sign(), -b.sign());
            prop_assert_eq!(a.n(), b.n());
            prop_assert_eq!(a.vseq(), b.vseq());
        }
    }

    #[test]
    fn covers_concatenate_over_sums(
        a in coverable_expr(),
        b in coverable_expr(),
    ) {
        let sum = KnotExpr::Sum(vec![a.clone(), b.clone()]);
        let joined = branched_double_cover(&sum).unwrap();
        let separate = CoverDescription::concat(&[
            branched_double_cover(&a).unwrap(),
            branched_double_cover(&b).unwrap(),
        ]);
        prop_assert_eq!(joined, separate);
    }

    #[test]
    fn cover_homology_has_odd_order(e in coverable_expr()) {
        let cover = branched_double_cover(&e).unwrap();
        prop_assert_eq!(cover.group().order() % 2, 1);
    }
}
