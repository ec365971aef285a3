//! Abstract syntax for knot expressions: torus knots, (2,q)-cables, mirrors,
//! connected sums, and the declared building blocks that carry V-data.

use std::fmt;

use crate::dcalc::VSequence;

/// A knot expression. `WhDoublePow(n)` is the n-fold connected self-sum of
/// the positive Whitehead double of the right-handed trefoil; `D` in the
/// surface syntax abbreviates `WhDoublePow(4)`. `Kstar` names the fixed
/// four-summand cabled example and expands via [`KnotExpr::expand_names`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KnotExpr {
    /// `T(2,q)` with odd `q ≥ 3`.
    TorusKnot { q: u64 },
    /// `C(2,q; J)`: the (2,q)-cable of the companion `J`, `q` odd `≥ 3`.
    Cable { q: u64, companion: Box<KnotExpr> },
    /// `-K`: reverse mirror.
    Mirror(Box<KnotExpr>),
    /// Connected sum of two or more summands.
    Sum(Vec<KnotExpr>),
    /// n-fold self-sum of the positive Whitehead double of the right-handed
    /// trefoil, `n ≥ 1`.
    WhDoublePow(u64),
    /// A knot declared ν⁺-equivalent to a thin knot of the given (even)
    /// signature.
    ThinClass(i64),
    /// A building block with an explicitly declared V-sequence.
    ExplicitV(VSequence),
    Unknot,
    /// The named example `C(2,25;D) # -C(2,23;D) # -T(2,25) # T(2,23)`.
    Kstar,
}

impl KnotExpr {
    pub fn mirror(self) -> KnotExpr {
        KnotExpr::Mirror(Box::new(self))
    }

    /// Replaces the named constant `Kstar` (recursively) by its defining
    /// four-summand expression.
    pub fn expand_names(&self) -> KnotExpr {
        match self {
            KnotExpr::Kstar => kstar_definition(),
            KnotExpr::Cable { q, companion } => KnotExpr::Cable {
                q: *q,
                companion: Box::new(companion.expand_names()),
            },
            KnotExpr::Mirror(e) => KnotExpr::Mirror(Box::new(e.expand_names())),
            KnotExpr::Sum(es) => KnotExpr::Sum(es.iter().map(KnotExpr::expand_names).collect()),
            other => other.clone(),
        }
    }
}

/// `Kstar = C(2,25;D) # -C(2,23;D) # -T(2,25) # T(2,23)` with `D = WhD^4`.
pub fn kstar_definition() -> KnotExpr {
    let d = || Box::new(KnotExpr::WhDoublePow(4));
    KnotExpr::Sum(vec![
        KnotExpr::Cable { q: 25, companion: d() },
        KnotExpr::Cable { q: 23, companion: d() }.mirror(),
        KnotExpr::TorusKnot { q: 25 }.mirror(),
        KnotExpr::TorusKnot { q: 23 },
    ])
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::TorusKnot { q } => write!(f, "T(2,{q})"),
            KnotExpr::Cable { q, companion } => write!(f, "C(2,{q};{companion})"),
            KnotExpr::Mirror(e) => {
                if matches!(**e, KnotExpr::Sum(_)) {
                    write!(f, "-({e})")
                } else {
                    write!(f, "-{e}")
                }
            }
            KnotExpr::Sum(es) => {
                for (i, e) in es.iter().enumerate() {
                    if i > 0 {
                        write!(f, " # ")?;
                    }
                    if matches!(e, KnotExpr::Sum(_)) {
                        write!(f, "({e})")?;
                    } else {
                        write!(f, "{e}")?;
                    }
                }
                Ok(())
            }
            KnotExpr::WhDoublePow(4) => write!(f, "D"),
            KnotExpr::WhDoublePow(n) => write!(f, "WhD^{n}"),
            KnotExpr::ThinClass(s) => write!(f, "thin({s})"),
            KnotExpr::ExplicitV(v) => {
                if v.is_zero() {
                    write!(f, "V[0]")
                } else {
                    let entries: Vec<String> =
                        v.values().iter().map(u64::to_string).collect();
                    write!(f, "V[{}]", entries.join(","))
                }
            }
            KnotExpr::Unknot => write!(f, "U"),
            KnotExpr::Kstar => write!(f, "Kstar"),
        }
    }
}

/// A declared fact carried verbatim into reports; never computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Annotation {
    TopologicallySlice { value: bool, source: String },
    SmoothGenusUpper { bound: u64, source: String },
}

impl Annotation {
    pub fn fact(&self) -> String {
        match self {
            Annotation::TopologicallySlice { value, .. } => {
                format!("topologically_slice = {value}")
            }
            Annotation::SmoothGenusUpper { bound, .. } => {
                format!("smooth_genus_upper = {bound}")
            }
        }
    }

    pub fn source(&self) -> &str {
        match self {
            Annotation::TopologicallySlice { source, .. } => source,
            Annotation::SmoothGenusUpper { source, .. } => source,
        }
    }
}

/// Declared annotations for named constants. Facts are attached only to the
/// exact expression they were declared for; nothing is derived for sums or
/// mirrors.
pub fn declared_annotations(expr: &KnotExpr) -> Vec<Annotation> {
    match expr {
        KnotExpr::Kstar => vec![
            Annotation::TopologicallySlice {
                value: true,
                source: "declared: D is topologically slice, so each cabled summand \
                         is topologically concordant to its torus-knot counterpart \
                         and the sum is topologically slice"
                    .into(),
            },
            Annotation::SmoothGenusUpper {
                bound: 1,
                source: "declared: two opposite-sign crossing changes produce a \
                         smoothly slice knot, so the knot bounds a smooth genus-one \
                         surface in the 4-ball"
                    .into(),
            },
        ],
        _ => Vec::new(),
    }
}
