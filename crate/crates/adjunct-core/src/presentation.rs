//! Presentations: a signature plus adjunction declarations, directed
//! equations, attribute flags, and queries.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::functor::FunctorEquation;
use crate::normalize::{Equation, RewriteRules, SnakePair, DEFAULT_FUEL};
use crate::term::{Signature, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Right,
    Left,
    Both,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Right => "right",
            Side::Left => "left",
            Side::Both => "both",
        }
    }
}

/// A declared adjunction `left ⊣ right` with chosen unit and counit.
/// `side_declared` records which adjoint the author asserted.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjunctionDecl {
    pub left: Term,
    pub right: Term,
    pub unit: Term,
    pub counit: Term,
    pub side_declared: Side,
    /// Free-form justification, recorded but never interpreted.
    pub doc: Option<String>,
}

impl AdjunctionDecl {
    /// Declaration whose witnesses are the formal unit/counit operators;
    /// asserts existence of the adjoint without naming new cells.
    pub fn opaque_right(left: Term) -> AdjunctionDecl {
        AdjunctionDecl {
            right: Term::radj(left.clone()),
            unit: Term::ru(left.clone()),
            counit: Term::rco(left.clone()),
            left,
            side_declared: Side::Right,
            doc: None,
        }
    }

    pub fn opaque_left(right: Term) -> AdjunctionDecl {
        AdjunctionDecl {
            left: Term::ladj(right.clone()),
            unit: Term::lu(right.clone()),
            counit: Term::lco(right.clone()),
            right,
            side_declared: Side::Left,
            doc: None,
        }
    }

    pub fn is_opaque(&self) -> bool {
        matches!(
            (&self.unit, &self.counit),
            (Term::Ru(_), Term::Rco(_)) | (Term::Lu(_), Term::Lco(_))
        )
    }
}

/// A directed equation between closed terms. Invertible equations may be
/// used in both directions; normalization orients them toward the smaller
/// side.
#[derive(Debug, Clone, PartialEq)]
pub struct TermEquation {
    pub lhs: Term,
    pub rhs: Term,
    pub invertible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QueryKind {
    Adjunctible,
    Dualizable,
    NcDualizable,
    ArrowDualizable,
    HandleTable,
    Normalize,
}

impl QueryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            QueryKind::Adjunctible => "adjunctible",
            QueryKind::Dualizable => "dualizable",
            QueryKind::NcDualizable => "nc-dualizable",
            QueryKind::ArrowDualizable => "arrow-dualizable",
            QueryKind::HandleTable => "handle-table",
            QueryKind::Normalize => "normalize",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Query {
    pub kind: QueryKind,
    pub subject: Term,
    /// `m` for adjunctible/dualizable/arrow queries, `(n, k)` for the
    /// non-compact query, `n` for handle tables, unused for normalize.
    pub params: Vec<u32>,
    pub side: Side,
}

#[derive(Debug, Clone, Default)]
pub struct Presentation {
    pub signature: Signature,
    pub adjunctions: Vec<AdjunctionDecl>,
    pub equations: Vec<TermEquation>,
    pub functor_equations: Vec<FunctorEquation>,
    pub flags: BTreeSet<String>,
    pub queries: Vec<Query>,
    /// Check the triangle identities when validating declarations.
    pub validate_snakes: bool,
    /// Escalate failed snake checks from warnings to errors.
    pub strict: bool,
    pub fuel: u64,
}

impl Presentation {
    pub fn new(signature: Signature) -> Presentation {
        Presentation {
            signature,
            fuel: DEFAULT_FUEL,
            ..Presentation::default()
        }
    }

    pub fn has_flag(&self, f: &str) -> bool {
        self.flags.contains(f)
    }

    /// The rewrite rule packs this presentation induces. `exclude` omits one
    /// declaration's snake pair (used while validating that declaration, so
    /// the check cannot assume what it is checking).
    pub fn rewrite_rules(&self, exclude: Option<usize>) -> RewriteRules {
        let mut rules = RewriteRules {
            formal_snakes: true,
            ..RewriteRules::default()
        };
        for (i, d) in self.adjunctions.iter().enumerate() {
            if Some(i) == exclude || d.is_opaque() {
                continue;
            }
            rules.snake_pairs.push(SnakePair {
                unit: d.unit.clone(),
                counit: d.counit.clone(),
                label: format!("adjunction {i}"),
            });
        }
        for (i, e) in self.equations.iter().enumerate() {
            let (lhs, rhs) = if e.invertible && term_size(&e.rhs) > term_size(&e.lhs) {
                (e.rhs.clone(), e.lhs.clone())
            } else {
                (e.lhs.clone(), e.rhs.clone())
            };
            rules.equations.push(Equation {
                name: format!("eq {i}"),
                lhs,
                rhs,
            });
        }
        rules
    }

    pub fn fresh_fuel(&self) -> crate::normalize::Fuel {
        crate::normalize::Fuel::new(if self.fuel == 0 { DEFAULT_FUEL } else { self.fuel })
    }
}

pub fn term_size(t: &Term) -> usize {
    match t {
        Term::Gen(_) | Term::One => 1,
        Term::Id(x) | Term::Radj(x) | Term::Ladj(x) | Term::Ru(x) | Term::Rco(x) | Term::Lu(x)
        | Term::Lco(x) => 1 + term_size(x),
        Term::Comp(_, a, b) | Term::Sym(a, b) => 1 + term_size(a) + term_size(b),
        Term::MatePhi(m) | Term::MatePhiInv(m) | Term::MatePsi(m) | Term::MatePsiInv(m) => {
            1 + term_size(&m.f) + term_size(&m.g) + term_size(&m.h) + term_size(&m.n)
        }
    }
}

/// Canonical display label for a term over a signature: generators print
/// through their `induced=` attribute when present.
pub fn display_label(sig: &Signature, t: &Term) -> String {
    match t {
        Term::Gen(n) => match sig.lookup(n) {
            Some(d) => d.display_label().to_string(),
            None => n.clone(),
        },
        Term::One => "1".into(),
        Term::Id(x) => format!("id({})", display_label(sig, x)),
        Term::Comp(0, a, b) => format!(
            "{} * {}",
            paren_label(sig, a),
            paren_label(sig, b)
        ),
        Term::Comp(j, a, b) => format!(
            "{} .{j} {}",
            paren_label(sig, a),
            paren_label(sig, b)
        ),
        Term::Sym(x, y) => format!("sym({}, {})", display_label(sig, x), display_label(sig, y)),
        Term::Radj(x) => format!("radj({})", display_label(sig, x)),
        Term::Ladj(x) => format!("ladj({})", display_label(sig, x)),
        Term::Ru(x) => format!("ru({})", display_label(sig, x)),
        Term::Rco(x) => format!("rco({})", display_label(sig, x)),
        Term::Lu(x) => format!("lu({})", display_label(sig, x)),
        Term::Lco(x) => format!("lco({})", display_label(sig, x)),
        Term::MatePhi(m) => format!("matephi(.., {})", display_label(sig, &m.n)),
        Term::MatePhiInv(m) => format!("matephiinv(.., {})", display_label(sig, &m.n)),
        Term::MatePsi(m) => format!("matepsi(.., {})", display_label(sig, &m.n)),
        Term::MatePsiInv(m) => format!("matepsiinv(.., {})", display_label(sig, &m.n)),
    }
}

fn paren_label(sig: &Signature, t: &Term) -> String {
    match t {
        Term::Comp(_, _, _) => format!("({})", display_label(sig, t)),
        _ => display_label(sig, t),
    }
}
