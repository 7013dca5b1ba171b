//! The functor-induced rewrite theory: central algebras and bimodules
//! induced by (braided/bimodule) monoidal functors, their composition rules,
//! and snake derivations carried out at the functor level.
//!
//! Cells tied to a functor symbol carry an `induced=<expr>` attribute. A
//! composite of induced cells denotes a functor expression: composition along
//! the top direction becomes functor composition, whiskering becomes a tensor
//! with the identity, identity cells denote the identity functor. Triangle
//! composites close when the denoted expression reduces to the identity under
//! the presentation's functor equations.

use crate::adjunction::{
    try_adjoint, validate_adjunction, AdjointResult, SnakeTrace, TraceStep,
};
use crate::functor::{FunctorEquation, FunctorExpr};
use crate::normalize::normalize;
use crate::presentation::{AdjunctionDecl, Presentation, Side};
use crate::term::{dim, struct_eq, GenDecl, Signature, Term, TermError};

/// Links a cell to the functor expression inducing it.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedTag {
    pub carrier: Term,
    pub inducing_functor: FunctorExpr,
    pub mirrored: bool,
}

/// Parse the `induced=` attribute of a generator, when present.
pub fn induced_tag(sig: &Signature, name: &str) -> Option<InducedTag> {
    let decl = sig.lookup(name)?;
    let raw = decl.attr_value("induced")?;
    let expr = parse_functor_atom(raw)?;
    let mirrored = matches!(expr, FunctorExpr::Gen { mirrored: true, .. });
    Some(InducedTag {
        carrier: Term::gen(name),
        inducing_functor: expr,
        mirrored,
    })
}

/// Attribute values are a single symbol or `bar(symbol)`.
pub fn parse_functor_atom(raw: &str) -> Option<FunctorExpr> {
    let raw = raw.trim();
    if let Some(inner) = raw.strip_prefix("bar(").and_then(|s| s.strip_suffix(')')) {
        return Some(FunctorExpr::bar(inner.trim()));
    }
    if raw == "id" {
        return Some(FunctorExpr::Id);
    }
    if raw.is_empty() {
        return None;
    }
    Some(FunctorExpr::gen(raw))
}

/// Denote a cell of dimension `d` as a functor expression, when every piece
/// is induced, an identity, or a composite of such.
fn denote(sig: &Signature, t: &Term, d: u32) -> Option<FunctorExpr> {
    match t {
        Term::Gen(n) => induced_tag(sig, n).map(|tag| tag.inducing_functor),
        Term::Id(_) => Some(FunctorExpr::Id),
        Term::Comp(j, a, b) => {
            let da = denote(sig, a, d)?;
            let db = denote(sig, b, d)?;
            if d >= 1 && *j == d - 1 {
                Some(FunctorExpr::comp(da, db))
            } else {
                Some(FunctorExpr::tensor(da, db))
            }
        }
        _ => None,
    }
}

fn vertical_factors(sig: &Signature, t: &Term, d: u32) -> Vec<Term> {
    // Bottom (applied first) comes first.
    match t {
        Term::Comp(j, a, b) if d >= 1 && *j == d - 1 => {
            let mut out = vertical_factors(sig, b, d);
            out.extend(vertical_factors(sig, a, d));
            out
        }
        other => vec![other.clone()],
    }
}

/// Reduce a triangle composite at the functor level, producing the named
/// step trace. Returns `None` when some piece is not functor-induced.
fn induced_route(
    p: &Presentation,
    snake: &Term,
    target: &Term,
) -> Result<Option<SnakeTrace>, TermError> {
    let sig = &p.signature;
    let d = dim(sig, snake)?;
    let factors = vertical_factors(sig, snake, d);
    if factors.len() < 2 {
        return Ok(None);
    }
    let mut steps = Vec::new();
    let mut dens: Vec<FunctorExpr> = Vec::new();
    for f in &factors {
        match denote(sig, f, d) {
            Some(e) => {
                let e = e.normal();
                steps.push(TraceStep {
                    rule: "induced-whisker".into(),
                    after: format!("M[{e}]"),
                });
                dens.push(e);
            }
            None => return Ok(None),
        }
    }
    let composed = dens
        .into_iter()
        .reduce(|acc, up| FunctorExpr::comp(up, acc))
        .expect("at least two factors");
    let composed = composed.normal();
    steps.push(TraceStep {
        rule: "induced-compose".into(),
        after: format!("M[{composed}]"),
    });
    let (reduced, applied) = composed.reduce(&p.functor_equations);
    for (name, expr) in &applied {
        steps.push(TraceStep {
            rule: format!("functor-eq:{name}"),
            after: format!("M[{expr}]"),
        });
    }
    if reduced == FunctorExpr::Id {
        let result = crate::normalize::normalize_structural(sig, target)?;
        steps.push(TraceStep {
            rule: "induced-identity".into(),
            after: result.to_string(),
        });
        return Ok(Some(SnakeTrace {
            steps,
            result,
            closed: true,
        }));
    }
    Ok(None)
}

/// Check one triangle of a declaration by rewriting: first through the
/// functor-induced route (when available), then by generic normalization
/// with the declaration's own pair excluded.
pub fn snake_check(
    p: &Presentation,
    d: &AdjunctionDecl,
    on_left: bool,
    exclude: Option<usize>,
) -> Result<SnakeTrace, TermError> {
    let sig = &p.signature;
    let (sl, sr) = crate::adjunction::snake_terms(sig, d)?;
    let snake = if on_left { sl } else { sr };
    let member = if on_left { &d.left } else { &d.right };
    let target = Term::id(member.clone());
    if !p.functor_equations.is_empty() {
        if let Some(trace) = induced_route(p, &snake, &target)? {
            return Ok(trace);
        }
    }
    let rules = p.rewrite_rules(exclude);
    let mut fuel = p.fresh_fuel();
    let n = normalize(sig, &snake, &rules, &mut fuel)?;
    let target_n = crate::normalize::normalize_structural(sig, &target)?;
    let closed = n == target_n;
    Ok(SnakeTrace {
        steps: vec![TraceStep {
            rule: "normalize".into(),
            after: n.to_string(),
        }],
        result: n,
        closed,
    })
}

/// Install the functor-level snake equations implied by the presentation's
/// induced adjunction declarations, on top of any explicitly declared ones.
/// Checks that every functor symbol in play is carried by some cell.
pub fn load_bimodule_rules(p: &Presentation) -> Result<Presentation, TermError> {
    let sig = &p.signature;
    let mut out = p.clone();
    let mut missing: Vec<String> = Vec::new();
    let mut symbols: Vec<String> = Vec::new();
    for eq in &p.functor_equations {
        collect_symbols(&eq.lhs, &mut symbols);
        collect_symbols(&eq.rhs, &mut symbols);
    }
    for s in &symbols {
        let carried = sig.generators().iter().any(|g| {
            g.attr_value("induced")
                .and_then(parse_functor_atom)
                .map(|e| symbol_of(&e).as_deref() == Some(s.as_str()))
                .unwrap_or(false)
        });
        if !carried && !missing.contains(s) {
            missing.push(s.clone());
        }
    }
    if !missing.is_empty() {
        return Err(TermError::MissingGenerators(missing));
    }
    for decl in &p.adjunctions {
        if decl.is_opaque() {
            continue;
        }
        let u = cell_functor(sig, &decl.unit);
        let c = cell_functor(sig, &decl.counit);
        if let (Some(u), Some(c)) = (u, c) {
            add_snake_equations(&mut out.functor_equations, &c, &u);
        }
    }
    Ok(out)
}

fn cell_functor(sig: &Signature, t: &Term) -> Option<FunctorExpr> {
    match t {
        Term::Gen(n) => induced_tag(sig, n).map(|tag| tag.inducing_functor),
        _ => None,
    }
}

fn collect_symbols(e: &FunctorExpr, out: &mut Vec<String>) {
    match e {
        FunctorExpr::Id => {}
        FunctorExpr::Gen { name, .. } => {
            if !out.contains(name) {
                out.push(name.clone());
            }
        }
        FunctorExpr::Comp(a, b) | FunctorExpr::Tensor(a, b) => {
            collect_symbols(a, out);
            collect_symbols(b, out);
        }
    }
}

fn symbol_of(e: &FunctorExpr) -> Option<String> {
    match e {
        FunctorExpr::Gen { name, .. } => Some(name.clone()),
        _ => None,
    }
}

/// The two triangle-closing equations for an adjunction whose counit is
/// induced by `c` and unit by `u`.
pub fn add_snake_equations(eqs: &mut Vec<FunctorEquation>, c: &FunctorExpr, u: &FunctorExpr) {
    let left = FunctorEquation {
        name: format!("snake[{c}|{u}]"),
        lhs: FunctorExpr::comp(
            FunctorExpr::tensor(c.clone(), FunctorExpr::Id),
            FunctorExpr::tensor(FunctorExpr::Id, u.clone()),
        ),
        rhs: FunctorExpr::Id,
    };
    let right = FunctorEquation {
        name: format!("snake'[{c}|{u}]"),
        lhs: FunctorExpr::comp(
            FunctorExpr::tensor(FunctorExpr::Id, c.clone()),
            FunctorExpr::tensor(u.clone(), FunctorExpr::Id),
        ),
        rhs: FunctorExpr::Id,
    };
    for eq in [left, right] {
        if !eqs.iter().any(|e| e.lhs == eq.lhs && e.rhs == eq.rhs) {
            eqs.push(eq);
        }
    }
}

/// Outcome of a derivation that may be blocked by a missing hypothesis.
#[derive(Debug, Clone)]
pub enum Derived<T> {
    Ok(T),
    Blocked(Term),
}

fn cells_with_induced<'a>(
    sig: &'a Signature,
    d: u32,
    symbol: &str,
    mirrored: bool,
) -> Vec<&'a GenDecl> {
    sig.generators()
        .iter()
        .filter(|g| g.dim == d)
        .filter(|g| {
            g.attr_value("induced")
                .and_then(parse_functor_atom)
                .map(|e| match e {
                    FunctorExpr::Gen { name, mirrored: m } => name == symbol && m == mirrored,
                    _ => false,
                })
                .unwrap_or(false)
        })
        .collect()
}

/// Locate the unique cell with the given boundaries.
fn cell_by_boundary(
    p: &Presentation,
    d: u32,
    src: &Term,
    tgt: &Term,
) -> Result<Option<Term>, TermError> {
    let sig = &p.signature;
    let mut found = None;
    for g in sig.generators() {
        if g.dim != d {
            continue;
        }
        let (gs, gt) = match (&g.src, &g.tgt) {
            (Some(s), Some(t)) => (s, t),
            _ => continue,
        };
        if struct_eq(sig, gs, src)? && struct_eq(sig, gt, tgt)? {
            if found.is_none() {
                found = Some(Term::gen(g.name.clone()));
            }
        }
    }
    Ok(found)
}

fn functor_symbol(f: &Term) -> Result<String, TermError> {
    match f {
        Term::Gen(n) => Ok(n.clone()),
        other => Err(TermError::UnknownGenerator(other.to_string())),
    }
}

/// Both adjunctions of the central algebra induced by a braided monoidal
/// functor: the right adjunction with counit induced by the balanced tensor
/// and unit induced by the functor itself, and the mirrored left adjunction.
/// All four snakes are verified by rewriting.
pub fn derive_af_adjunction(
    p: &Presentation,
    f: &Term,
) -> Result<(AdjunctionDecl, AdjunctionDecl), TermError> {
    let sig = &p.signature;
    let sym = functor_symbol(f)?;
    let carrier = cells_with_induced(sig, 1, &sym, false);
    let mirrored = cells_with_induced(sig, 1, &sym, true);
    let (a_f, abar_f) = match (carrier.first(), mirrored.first()) {
        (Some(a), Some(b)) => (Term::gen(a.name.clone()), Term::gen(b.name.clone())),
        _ => {
            // The identity functor induces the identity algebra.
            if sym_is_identity(&sym) {
                let unit = sig.unit_term();
                let idc = Term::id(unit);
                let w = Term::id(Term::id(idc.clone()));
                let d = AdjunctionDecl {
                    left: idc.clone(),
                    right: idc.clone(),
                    unit: w.clone(),
                    counit: w,
                    side_declared: Side::Right,
                    doc: None,
                };
                return Ok((d.clone(), d));
            }
            return Err(TermError::MissingGenerators(vec![sym]));
        }
    };
    let (src, tgt) = crate::term::typecheck(sig, &a_f)?;
    let right = AdjunctionDecl {
        left: a_f.clone(),
        right: abar_f.clone(),
        unit: require_cell(p, 2, &Term::id(src.clone()), &Term::comp(0, abar_f.clone(), a_f.clone()))?,
        counit: require_cell(p, 2, &Term::comp(0, a_f.clone(), abar_f.clone()), &Term::id(tgt.clone()))?,
        side_declared: Side::Right,
        doc: None,
    };
    let left = AdjunctionDecl {
        left: abar_f.clone(),
        right: a_f.clone(),
        unit: require_cell(p, 2, &Term::id(tgt), &Term::comp(0, a_f.clone(), abar_f.clone()))?,
        counit: require_cell(p, 2, &Term::comp(0, abar_f.clone(), a_f.clone()), &Term::id(src))?,
        side_declared: Side::Left,
        doc: None,
    };
    verify_snakes(p, &right)?;
    verify_snakes(p, &left)?;
    Ok((right, left))
}

fn sym_is_identity(s: &str) -> bool {
    s == "id"
}

fn require_cell(p: &Presentation, d: u32, src: &Term, tgt: &Term) -> Result<Term, TermError> {
    cell_by_boundary(p, d, src, tgt)?.ok_or_else(|| {
        TermError::MissingGenerators(vec![format!("{d}-cell {src} -> {tgt}")])
    })
}

fn verify_snakes(p: &Presentation, d: &AdjunctionDecl) -> Result<(), TermError> {
    for on_left in [true, false] {
        let trace = snake_check(p, d, on_left, None)?;
        if !trace.closed {
            return Err(TermError::SnakeFailed(trace.result.to_string()));
        }
    }
    Ok(())
}

/// The right adjunction of an induced bimodule: counit induced by the
/// balanced tensor, unit by the functor, with the triangle identities
/// verified by rewriting.
pub fn derive_mf_right_adjunction(
    p: &Presentation,
    f: &Term,
) -> Result<AdjunctionDecl, TermError> {
    let sig = &p.signature;
    let sym = functor_symbol(f)?;
    if sym_is_identity(&sym) {
        let unit = sig.unit_term();
        let idc = Term::id(Term::id(unit));
        let w = Term::id(Term::id(idc.clone()));
        return Ok(AdjunctionDecl {
            left: idc.clone(),
            right: idc,
            unit: w.clone(),
            counit: w,
            side_declared: Side::Right,
            doc: None,
        });
    }
    let m_f = cells_with_induced(sig, 2, &sym, false)
        .first()
        .map(|g| Term::gen(g.name.clone()))
        .ok_or_else(|| TermError::MissingGenerators(vec![sym.clone()]))?;
    let mbar_f = cells_with_induced(sig, 2, &sym, true)
        .first()
        .map(|g| Term::gen(g.name.clone()))
        .ok_or_else(|| TermError::MissingGenerators(vec![format!("bar({sym})")]))?;
    let (src, tgt) = crate::term::typecheck(sig, &m_f)?;
    let decl = AdjunctionDecl {
        left: m_f.clone(),
        right: mbar_f.clone(),
        unit: require_cell(p, 3, &Term::id(src), &Term::comp(1, mbar_f.clone(), m_f.clone()))?,
        counit: require_cell(p, 3, &Term::comp(1, m_f.clone(), mbar_f.clone()), &Term::id(tgt))?,
        side_declared: Side::Right,
        doc: None,
    };
    verify_snakes(p, &decl)?;
    Ok(decl)
}

/// The left adjunction of an induced bimodule, available under the cp-rigid
/// hypothesis with the right adjoints of the functor and the balanced tensor
/// declared.
pub fn derive_mf_left_adjunction(
    p: &Presentation,
    f: &Term,
) -> Result<Derived<AdjunctionDecl>, TermError> {
    let sig = &p.signature;
    let sym = functor_symbol(f)?;
    if sym_is_identity(&sym) {
        return derive_mf_right_adjunction(p, f).map(Derived::Ok);
    }
    let m_f = match cells_with_induced(sig, 2, &sym, false).first() {
        Some(g) => Term::gen(g.name.clone()),
        None => return Err(TermError::MissingGenerators(vec![sym.clone()])),
    };
    if !p.has_flag("cp-rigid") {
        return Ok(Derived::Blocked(m_f));
    }
    let mbar_f = match cells_with_induced(sig, 2, &sym, true).first() {
        Some(g) => Term::gen(g.name.clone()),
        None => return Err(TermError::MissingGenerators(vec![format!("bar({sym})")])),
    };
    let (src, tgt) = crate::term::typecheck(sig, &m_f)?;
    // Adjunction mbar_f ⊣ m_f: counit induced by the functor's right adjoint,
    // unit by the balanced tensor's right adjoint.
    let counit = cell_by_boundary(p, 3, &Term::comp(1, mbar_f.clone(), m_f.clone()), &Term::id(src))?;
    let unit = cell_by_boundary(p, 3, &Term::id(tgt), &Term::comp(1, m_f.clone(), mbar_f.clone()))?;
    match (counit, unit) {
        (Some(counit), Some(unit)) => {
            let decl = AdjunctionDecl {
                left: mbar_f,
                right: m_f,
                unit,
                counit,
                side_declared: Side::Left,
                doc: None,
            };
            verify_snakes(p, &decl)?;
            Ok(Derived::Ok(decl))
        }
        _ => Ok(Derived::Blocked(m_f)),
    }
}

/// Validate every declaration of a presentation; returns human-readable
/// problems (boundary failures always, snake failures in strict mode).
pub fn validate_presentation(p: &Presentation) -> Result<Vec<String>, TermError> {
    let mut problems = Vec::new();
    for (i, d) in p.adjunctions.iter().enumerate() {
        let report = validate_adjunction(p, d)?;
        if !report.passed {
            for e in &report.boundary_errors {
                problems.push(format!("adjunction #{i}: {e}"));
            }
        }
    }
    for (i, eq) in p.equations.iter().enumerate() {
        let (ls, lt) = crate::term::typecheck(&p.signature, &eq.lhs)?;
        let (rs, rt) = crate::term::typecheck(&p.signature, &eq.rhs)?;
        if dim(&p.signature, &eq.lhs)? != dim(&p.signature, &eq.rhs)? || ls != rs || lt != rt {
            problems.push(format!("equation #{i}: sides have different boundaries"));
        }
    }
    for q in &p.queries {
        crate::term::typecheck(&p.signature, &q.subject)?;
    }
    Ok(problems)
}

/// Resolution status of a query subject with respect to a side, used by
/// square-bracket summaries in reports.
pub fn adjoint_exists(p: &Presentation, t: &Term, side: Side) -> Result<bool, TermError> {
    Ok(matches!(try_adjoint(p, t, side)?, AdjointResult::Resolved(_)))
}
