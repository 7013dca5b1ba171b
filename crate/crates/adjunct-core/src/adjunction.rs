//! Adjunction declarations, closure rules deriving new adjoints from old,
//! mating equivalences, and the obligation-tree solver behind the
//! adjunctibility and dualizability queries.

use crate::normalize::{normalize, Fuel};
use crate::presentation::{display_label, AdjunctionDecl, Presentation, Side};
use crate::term::{boundary, dim, struct_eq, typecheck, End, Signature, Term, TermError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Requirement {
    HasRadj,
    HasLadj,
}

impl Requirement {
    pub fn as_str(self) -> &'static str {
        match self {
            Requirement::HasRadj => "radj",
            Requirement::HasLadj => "ladj",
        }
    }
    pub fn side(self) -> Side {
        match self {
            Requirement::HasRadj => Side::Right,
            Requirement::HasLadj => Side::Left,
        }
    }
}

/// How an obligation was discharged.
#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Declared(usize),
    Derived(String),
    Missing,
    /// Structural nodes that are not obligations themselves.
    Info,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Declared(_) => "declared",
            Status::Derived(_) => "derived",
            Status::Missing => "missing",
            Status::Info => "info",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NodeKind {
    /// A cell whose adjunctibility is in question.
    Cell,
    /// An obligation: the cell needs the stated adjoint.
    Oblig(Requirement),
    /// Witness data attached to a resolved obligation.
    Witness(&'static str),
}

#[derive(Debug, Clone)]
pub struct Node {
    pub kind: NodeKind,
    pub subject: Term,
    pub label: String,
    pub status: Status,
    /// For resolved obligations: adjoint and (counit, unit) labels.
    pub adjoint: Option<String>,
    pub pair: Option<(String, String)>,
    pub children: Vec<Node>,
}

impl Node {
    fn info(sig: &Signature, kind: NodeKind, subject: Term) -> Node {
        Node {
            label: display_label(sig, &subject),
            kind,
            subject,
            status: Status::Info,
            adjoint: None,
            pair: None,
            children: Vec::new(),
        }
    }

    pub fn satisfied(&self) -> bool {
        self.status != Status::Missing && self.children.iter().all(Node::satisfied)
    }

    /// All obligation nodes in the subtree, preorder.
    pub fn obligations(&self) -> Vec<&Node> {
        let mut out = Vec::new();
        fn walk<'a>(n: &'a Node, out: &mut Vec<&'a Node>) {
            if matches!(n.kind, NodeKind::Oblig(_)) {
                out.push(n);
            }
            for c in &n.children {
                walk(c, out);
            }
        }
        walk(self, &mut out);
        out
    }

    /// Labels of missing obligations, preorder, deduplicated.
    pub fn missing(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for ob in self.obligations() {
            if ob.status == Status::Missing && !out.contains(&ob.label) {
                out.push(ob.label.clone());
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct DerivationTree {
    pub query: String,
    pub root: Node,
    pub satisfied: bool,
}

impl DerivationTree {
    fn new(query: String, root: Node) -> DerivationTree {
        let satisfied = root.satisfied();
        DerivationTree {
            query,
            root,
            satisfied,
        }
    }

    pub fn missing(&self) -> Vec<String> {
        self.root.missing()
    }
}

/// Why `try_adjoint` succeeded.
#[derive(Debug, Clone, PartialEq)]
pub enum Rule {
    Declared(usize),
    Identity,
    UnitObject,
    Symmetry,
    CompSame,
    CompLower,
    IsoTransport(usize),
    LeftFromRight,
}

impl Rule {
    pub fn name(&self) -> String {
        match self {
            Rule::Declared(i) => format!("declared #{i}"),
            Rule::Identity => "identity".into(),
            Rule::UnitObject => "unit-object".into(),
            Rule::Symmetry => "symmetry".into(),
            Rule::CompSame => "compose".into(),
            Rule::CompLower => "whisker".into(),
            Rule::IsoTransport(i) => format!("iso-transport #{i}"),
            Rule::LeftFromRight => "left-from-right".into(),
        }
    }
    fn status(&self) -> Status {
        match self {
            Rule::Declared(i) => Status::Declared(*i),
            other => Status::Derived(other.name()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ResolvedAdjunction {
    pub adjoint: Term,
    pub unit: Term,
    pub counit: Term,
    pub rule: Rule,
}

#[derive(Debug, Clone)]
pub enum AdjointResult {
    Resolved(ResolvedAdjunction),
    /// No rule applies; carries the smallest failing subterm.
    Blocked(Term, Requirement),
}

impl AdjointResult {
    pub fn resolved(self) -> Option<ResolvedAdjunction> {
        match self {
            AdjointResult::Resolved(r) => Some(r),
            AdjointResult::Blocked(_, _) => None,
        }
    }
}

fn req_of(side: Side) -> Requirement {
    match side {
        Side::Left => Requirement::HasLadj,
        _ => Requirement::HasRadj,
    }
}

/// Resolve an adjoint for `t` by the fixed rule priority: declared data,
/// identities, composites (top direction, then lower directions and tensor
/// whiskers), transport along invertible equations, and finally the
/// left-from-right redundancy.
pub fn try_adjoint(p: &Presentation, t: &Term, side: Side) -> Result<AdjointResult, TermError> {
    let mut visited = Vec::new();
    try_adjoint_inner(p, t, side, &mut visited)
}

fn try_adjoint_inner(
    p: &Presentation,
    t: &Term,
    side: Side,
    visited: &mut Vec<Term>,
) -> Result<AdjointResult, TermError> {
    let sig = &p.signature;
    let t = crate::normalize::normalize_structural(sig, t)?;
    let d = dim(sig, &t)?;

    // (1) explicit declarations.
    for (i, decl) in p.adjunctions.iter().enumerate() {
        let member = match side {
            Side::Left => &decl.right,
            _ => &decl.left,
        };
        if struct_eq(sig, member, &t)? {
            let adjoint = match side {
                Side::Left => decl.left.clone(),
                _ => decl.right.clone(),
            };
            return Ok(AdjointResult::Resolved(ResolvedAdjunction {
                adjoint,
                unit: decl.unit.clone(),
                counit: decl.counit.clone(),
                rule: Rule::Declared(i),
            }));
        }
    }

    // (2) identities and the tensor unit.
    if let Term::Id(x) = &t {
        let w = Term::id(Term::id((**x).clone()));
        return Ok(AdjointResult::Resolved(ResolvedAdjunction {
            adjoint: t.clone(),
            unit: w.clone(),
            counit: w,
            rule: Rule::Identity,
        }));
    }
    if d == 0 && sig.is_unit_object(&t) {
        let w = Term::id(t.clone());
        return Ok(AdjointResult::Resolved(ResolvedAdjunction {
            adjoint: t.clone(),
            unit: w.clone(),
            counit: w,
            rule: Rule::UnitObject,
        }));
    }
    if let Term::Sym(x, y) = &t {
        let xy = Term::comp(0, (**x).clone(), (**y).clone());
        let yx = Term::comp(0, (**y).clone(), (**x).clone());
        let (unit_base, counit_base) = match side {
            Side::Left => (yx, xy),
            _ => (xy, yx),
        };
        return Ok(AdjointResult::Resolved(ResolvedAdjunction {
            adjoint: Term::sym((**y).clone(), (**x).clone()),
            unit: Term::id(Term::id(unit_base)),
            counit: Term::id(Term::id(counit_base)),
            rule: Rule::Symmetry,
        }));
    }

    // (3)/(4) composites.
    if let Term::Comp(j, a, b) = &t {
        let g = (**a).clone();
        let h = (**b).clone();
        let matching = d >= 1
            && *j == d - 1
            && crate::term::boundary_at(sig, &g, *j, End::Src).and_then(|x| {
                crate::term::boundary_at(sig, &h, *j, End::Tgt).map(|y| (x, y))
            })
            .map(|(x, y)| struct_eq(sig, &x, &y).unwrap_or(false))
            .unwrap_or(false);
        let rg = try_adjoint_inner(p, &g, side, visited)?;
        let rg = match rg {
            AdjointResult::Resolved(r) => r,
            blocked => return Ok(blocked),
        };
        let rh = try_adjoint_inner(p, &h, side, visited)?;
        let rh = match rh {
            AdjointResult::Resolved(r) => r,
            blocked => return Ok(blocked),
        };
        if matching {
            let k = *j;
            let kv = k + 1;
            return Ok(AdjointResult::Resolved(match side {
                Side::Left => ResolvedAdjunction {
                    // Ladj(g ∘ h) = Ladj(h) ∘ Ladj(g).
                    adjoint: Term::comp(k, rh.adjoint.clone(), rg.adjoint.clone()),
                    unit: Term::comp(
                        kv,
                        Term::comp(k, Term::id(g.clone()), Term::comp(k, rh.unit, Term::id(rg.adjoint.clone()))),
                        rg.unit,
                    ),
                    counit: Term::comp(
                        kv,
                        rh.counit,
                        Term::comp(k, Term::id(rh.adjoint), Term::comp(k, rg.counit, Term::id(h.clone()))),
                    ),
                    rule: Rule::CompSame,
                },
                _ => ResolvedAdjunction {
                    // Radj(g ∘ h) = Radj(h) ∘ Radj(g).
                    adjoint: Term::comp(k, rh.adjoint.clone(), rg.adjoint.clone()),
                    unit: Term::comp(
                        kv,
                        Term::comp(k, Term::id(rh.adjoint), Term::comp(k, rg.unit, Term::id(h.clone()))),
                        rh.unit,
                    ),
                    counit: Term::comp(
                        kv,
                        rg.counit,
                        Term::comp(k, Term::id(g.clone()), Term::comp(k, rh.counit, Term::id(rg.adjoint))),
                    ),
                    rule: Rule::CompSame,
                },
            }));
        }
        // Componentwise for lower directions and tensor juxtaposition.
        return Ok(AdjointResult::Resolved(ResolvedAdjunction {
            adjoint: Term::comp(*j, rg.adjoint, rh.adjoint),
            unit: Term::comp(*j, rg.unit, rh.unit),
            counit: Term::comp(*j, rg.counit, rh.counit),
            rule: Rule::CompLower,
        }));
    }

    // (5) transport along invertible equations.
    for (i, eq) in p.equations.iter().enumerate() {
        if !eq.invertible {
            continue;
        }
        for (from, to) in [(&eq.lhs, &eq.rhs), (&eq.rhs, &eq.lhs)] {
            if struct_eq(sig, from, &t)? && !visited.contains(to) {
                visited.push(t.clone());
                if let AdjointResult::Resolved(mut r) = try_adjoint_inner(p, to, side, visited)? {
                    r.rule = Rule::IsoTransport(i);
                    return Ok(AdjointResult::Resolved(r));
                }
            }
        }
    }

    // (6) a left adjoint from iterated right data.
    if side == Side::Left {
        if let AdjointResult::Resolved(r) = try_adjoint_inner(p, &t, Side::Right, visited)? {
            let lu = try_adjoint_inner(p, &r.counit, Side::Right, visited)?;
            let lco = try_adjoint_inner(p, &r.unit, Side::Right, visited)?;
            if let (Some(lu), Some(lco)) = (lu.resolved(), lco.resolved()) {
                return Ok(AdjointResult::Resolved(ResolvedAdjunction {
                    adjoint: r.adjoint,
                    unit: lu.adjoint,
                    counit: lco.adjoint,
                    rule: Rule::LeftFromRight,
                }));
            }
        }
    }

    Ok(AdjointResult::Blocked(t, req_of(side)))
}

// ---------------------------------------------------------------------------
// Mates
// ---------------------------------------------------------------------------

/// Composition indices for mating along an adjunction at `f`'s level; the
/// object level deloops onto (0, 0).
fn mate_indices(sig: &Signature, f: &Term) -> Result<(u32, u32), TermError> {
    let d = dim(sig, f)?;
    if d == 0 {
        Ok((0, 0))
    } else {
        Ok((d - 1, d))
    }
}

fn expect_boundary(
    sig: &Signature,
    n: &Term,
    end: End,
    expected: &Term,
    what: &str,
) -> Result<(), TermError> {
    let found = boundary(sig, n, end)?;
    if !struct_eq(sig, &found, expected)? {
        return Err(TermError::BoundaryMismatch {
            position: what.to_string(),
            expected: crate::normalize::normalize_structural(sig, expected)?.to_string(),
            found: crate::normalize::normalize_structural(sig, &found)?.to_string(),
        });
    }
    Ok(())
}

/// Φ: a cell `n : f ∘ g → h` mates to `g → f^R ∘ h`.
pub fn mate_phi(
    sig: &Signature,
    d: &AdjunctionDecl,
    g: &Term,
    h: &Term,
    n: &Term,
) -> Result<Term, TermError> {
    typecheck(sig, n)?;
    let (kw, kv) = mate_indices(sig, &d.left)?;
    expect_boundary(sig, n, End::Src, &Term::comp(kw, d.left.clone(), g.clone()), "mate Φ source")?;
    expect_boundary(sig, n, End::Tgt, h, "mate Φ target")?;
    Ok(Term::comp(
        kv,
        Term::comp(kw, Term::id(d.right.clone()), n.clone()),
        Term::comp(kw, d.unit.clone(), Term::id(g.clone())),
    ))
}

/// Φ⁻¹: a cell `m : g → f^R ∘ h` mates back to `f ∘ g → h`.
pub fn mate_phi_inv(
    sig: &Signature,
    d: &AdjunctionDecl,
    g: &Term,
    h: &Term,
    m: &Term,
) -> Result<Term, TermError> {
    typecheck(sig, m)?;
    let (kw, kv) = mate_indices(sig, &d.left)?;
    expect_boundary(sig, m, End::Src, g, "mate Φ⁻¹ source")?;
    expect_boundary(
        sig,
        m,
        End::Tgt,
        &Term::comp(kw, d.right.clone(), h.clone()),
        "mate Φ⁻¹ target",
    )?;
    Ok(Term::comp(
        kv,
        Term::comp(kw, d.counit.clone(), Term::id(h.clone())),
        Term::comp(kw, Term::id(d.left.clone()), m.clone()),
    ))
}

/// Ψ: a cell `n : g ∘ f^R → h` mates to `g → h ∘ f`.
pub fn mate_psi(
    sig: &Signature,
    d: &AdjunctionDecl,
    g: &Term,
    h: &Term,
    n: &Term,
) -> Result<Term, TermError> {
    typecheck(sig, n)?;
    let (kw, kv) = mate_indices(sig, &d.left)?;
    expect_boundary(sig, n, End::Src, &Term::comp(kw, g.clone(), d.right.clone()), "mate Ψ source")?;
    expect_boundary(sig, n, End::Tgt, h, "mate Ψ target")?;
    Ok(Term::comp(
        kv,
        Term::comp(kw, n.clone(), Term::id(d.left.clone())),
        Term::comp(kw, Term::id(g.clone()), d.unit.clone()),
    ))
}

/// Ψ⁻¹: a cell `m : g → h ∘ f` mates back to `g ∘ f^R → h`.
pub fn mate_psi_inv(
    sig: &Signature,
    d: &AdjunctionDecl,
    g: &Term,
    h: &Term,
    m: &Term,
) -> Result<Term, TermError> {
    typecheck(sig, m)?;
    let (kw, kv) = mate_indices(sig, &d.left)?;
    expect_boundary(sig, m, End::Src, g, "mate Ψ⁻¹ source")?;
    expect_boundary(
        sig,
        m,
        End::Tgt,
        &Term::comp(kw, h.clone(), d.left.clone()),
        "mate Ψ⁻¹ target",
    )?;
    Ok(Term::comp(
        kv,
        Term::comp(kw, Term::id(g.clone()), d.counit.clone()),
        Term::comp(kw, m.clone(), Term::id(d.right.clone())),
    ))
}

/// Expand a formal mate constructor against a presentation's adjunction for
/// the `f` argument.
pub fn expand_mate(p: &Presentation, t: &Term) -> Result<Term, TermError> {
    let (m, which) = match t {
        Term::MatePhi(m) => (m, 0),
        Term::MatePhiInv(m) => (m, 1),
        Term::MatePsi(m) => (m, 2),
        Term::MatePsiInv(m) => (m, 3),
        other => return Ok(other.clone()),
    };
    let r = try_adjoint(p, &m.f, Side::Right)?
        .resolved()
        .ok_or_else(|| TermError::BoundaryMismatch {
            position: "mate expansion".into(),
            expected: format!("an adjunction for {}", m.f),
            found: "no adjunction".into(),
        })?;
    let d = AdjunctionDecl {
        left: (*m.f).clone(),
        right: r.adjoint,
        unit: r.unit,
        counit: r.counit,
        side_declared: Side::Right,
        doc: None,
    };
    match which {
        0 => mate_phi(&p.signature, &d, &m.g, &m.h, &m.n),
        1 => mate_phi_inv(&p.signature, &d, &m.g, &m.h, &m.n),
        2 => mate_psi(&p.signature, &d, &m.g, &m.h, &m.n),
        _ => mate_psi_inv(&p.signature, &d, &m.g, &m.h, &m.n),
    }
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct TraceStep {
    pub rule: String,
    pub after: String,
}

#[derive(Debug, Clone)]
pub struct SnakeTrace {
    pub steps: Vec<TraceStep>,
    pub result: Term,
    pub closed: bool,
}

#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub boundary_errors: Vec<String>,
    pub snake_left: Option<SnakeTrace>,
    pub snake_right: Option<SnakeTrace>,
    pub warnings: Vec<String>,
    pub passed: bool,
}

/// The two triangle composites of a declaration. The first collapses to the
/// identity of the left member, the second to the identity of the right one.
pub fn snake_terms(sig: &Signature, d: &AdjunctionDecl) -> Result<(Term, Term), TermError> {
    let (kw, kv) = mate_indices(sig, &d.left)?;
    let on_left = Term::comp(
        kv,
        Term::comp(kw, d.counit.clone(), Term::id(d.left.clone())),
        Term::comp(kw, Term::id(d.left.clone()), d.unit.clone()),
    );
    let on_right = Term::comp(
        kv,
        Term::comp(kw, Term::id(d.right.clone()), d.counit.clone()),
        Term::comp(kw, d.unit.clone(), Term::id(d.right.clone())),
    );
    Ok((on_left, on_right))
}

/// Boundary checks plus (when the presentation opts in) snake checks by
/// rewriting. A failed snake is a warning unless strict mode is set.
pub fn validate_adjunction(
    p: &Presentation,
    d: &AdjunctionDecl,
) -> Result<CheckReport, TermError> {
    let sig = &p.signature;
    let mut report = CheckReport::default();
    for part in [&d.left, &d.right, &d.unit, &d.counit] {
        typecheck(sig, part)?;
    }
    let dl = dim(sig, &d.left)?;
    let (unit_src, unit_tgt, counit_src, counit_tgt) = if dl == 0 {
        if !sig.monoidal {
            return Err(TermError::DeloopingDisabled);
        }
        (
            sig.unit_term(),
            Term::comp(0, d.right.clone(), d.left.clone()),
            Term::comp(0, d.left.clone(), d.right.clone()),
            sig.unit_term(),
        )
    } else {
        let k = dl - 1;
        (
            Term::id(boundary(sig, &d.left, End::Src)?),
            Term::comp(k, d.right.clone(), d.left.clone()),
            Term::comp(k, d.left.clone(), d.right.clone()),
            Term::id(boundary(sig, &d.left, End::Tgt)?),
        )
    };
    let checks = [
        ("unit source", &d.unit, End::Src, unit_src),
        ("unit target", &d.unit, End::Tgt, unit_tgt),
        ("counit source", &d.counit, End::Src, counit_src),
        ("counit target", &d.counit, End::Tgt, counit_tgt),
    ];
    for (what, part, end, expected) in checks {
        let found = boundary(sig, part, end)?;
        if !struct_eq(sig, &found, &expected)? {
            report.boundary_errors.push(format!(
                "{what}: expected `{}`, found `{}`",
                crate::normalize::normalize_structural(sig, &expected)?,
                crate::normalize::normalize_structural(sig, &found)?
            ));
        }
    }
    report.passed = report.boundary_errors.is_empty();
    if report.passed && p.validate_snakes {
        let idx = p
            .adjunctions
            .iter()
            .position(|other| other == d);
        let left_trace = crate::casebook::snake_check(p, d, true, idx)?;
        let right_trace = crate::casebook::snake_check(p, d, false, idx)?;
        if !left_trace.closed || !right_trace.closed {
            let msg = format!(
                "snake check did not close (left: {}, right: {})",
                left_trace.closed, right_trace.closed
            );
            if p.strict {
                report.passed = false;
                report.boundary_errors.push(msg);
            } else {
                report.warnings.push(msg);
            }
        }
        report.snake_left = Some(left_trace);
        report.snake_right = Some(right_trace);
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Obligation trees
// ---------------------------------------------------------------------------

fn sides_of(side: Side) -> Vec<Side> {
    match side {
        Side::Both => vec![Side::Left, Side::Right],
        s => vec![s],
    }
}

/// The tree for an m-times adjunctibility query.
pub fn adjunctibility_tree(
    p: &Presentation,
    t: &Term,
    m: u32,
    side: Side,
) -> Result<DerivationTree, TermError> {
    let sig = &p.signature;
    typecheck(sig, t)?;
    if m > sig.ambient_dim {
        return Err(TermError::DepthBound {
            m,
            ambient: sig.ambient_dim,
        });
    }
    let query = format!(
        "adjunctible {} m={} side={}",
        display_label(sig, t),
        m,
        side.as_str()
    );
    if m == 0 {
        let mut root = Node::info(sig, NodeKind::Cell, t.clone());
        root.status = Status::Derived("vacuous".into());
        return Ok(DerivationTree::new(query, root));
    }
    let root = cell_node(p, t, m, side)?;
    Ok(DerivationTree::new(query, root))
}

fn cell_node(p: &Presentation, t: &Term, m: u32, side: Side) -> Result<Node, TermError> {
    let mut node = Node::info(&p.signature, NodeKind::Cell, t.clone());
    for s in sides_of(side) {
        node.children.push(oblig_node(p, t, m, s, side)?);
    }
    Ok(node)
}

fn oblig_node(p: &Presentation, t: &Term, m: u32, s: Side, propagate: Side) -> Result<Node, TermError> {
    let sig = &p.signature;
    let mut node = Node::info(sig, NodeKind::Oblig(req_of(s)), t.clone());
    match try_adjoint(p, t, s)? {
        AdjointResult::Resolved(r) => {
            node.status = r.rule.status();
            node.adjoint = Some(display_label(sig, &r.adjoint));
            node.pair = Some((
                display_label(sig, &r.counit),
                display_label(sig, &r.unit),
            ));
            if m > 1 {
                node.children.push(cell_node(p, &r.counit, m - 1, propagate)?);
                node.children.push(cell_node(p, &r.unit, m - 1, propagate)?);
            } else {
                let mut c = Node::info(sig, NodeKind::Witness("counit"), r.counit);
                c.status = Status::Derived("witness".into());
                let mut u = Node::info(sig, NodeKind::Witness("unit"), r.unit);
                u.status = Status::Derived("witness".into());
                node.children.push(c);
                node.children.push(u);
            }
        }
        AdjointResult::Blocked(sub, req) => {
            node.status = Status::Missing;
            if !struct_eq(sig, &sub, t)? {
                let mut blocked = Node::info(sig, NodeKind::Oblig(req), sub);
                blocked.status = Status::Missing;
                node.children.push(blocked);
            }
        }
    }
    Ok(node)
}

// ---------------------------------------------------------------------------
// Dualizability of objects: unit/counit towers
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StackOp {
    Ru,
    Rco,
}

/// A dualizability obligation `radj(rco^i(ru^j(x)))` in canonical order
/// (units innermost).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackObligation {
    pub base: Term,
    /// Applied innermost first.
    pub ops: Vec<StackOp>,
}

impl StackObligation {
    pub fn tower(base: Term, units: u32, counits: u32) -> StackObligation {
        let mut ops = Vec::new();
        ops.extend(std::iter::repeat(StackOp::Ru).take(units as usize));
        ops.extend(std::iter::repeat(StackOp::Rco).take(counits as usize));
        StackObligation { base, ops }
    }

    /// The formal term `rco^i(ru^j(base))`.
    pub fn formal_term(&self) -> Term {
        self.ops.iter().fold(self.base.clone(), |acc, op| match op {
            StackOp::Ru => Term::ru(acc),
            StackOp::Rco => Term::rco(acc),
        })
    }

    /// Canonical form under the directed rule `ru(rco(x)) -> rco(ru(x))`:
    /// sort units before counits.
    pub fn canonical(&self) -> StackObligation {
        let mut ops = self.ops.clone();
        ops.sort_by_key(|op| match op {
            StackOp::Ru => 0,
            StackOp::Rco => 1,
        });
        StackObligation {
            base: self.base.clone(),
            ops,
        }
    }
}

/// Resolve a unit/counit tower against declared/derived data, returning the
/// trail of witnesses and the final cell (or the blocking obligation).
pub fn resolve_stack(
    p: &Presentation,
    stack: &StackObligation,
) -> Result<(Vec<Node>, Result<Term, Term>), TermError> {
    let sig = &p.signature;
    let mut trail = Vec::new();
    let mut cur = crate::normalize::normalize_structural(sig, &stack.base)?;
    for op in &stack.ops {
        match try_adjoint(p, &cur, Side::Right)? {
            AdjointResult::Resolved(r) => {
                let witness = match op {
                    StackOp::Ru => r.unit.clone(),
                    StackOp::Rco => r.counit.clone(),
                };
                let witness = crate::normalize::normalize_structural(sig, &witness)?;
                let mut n = Node::info(
                    sig,
                    NodeKind::Witness(match op {
                        StackOp::Ru => "ru",
                        StackOp::Rco => "rco",
                    }),
                    witness.clone(),
                );
                n.status = r.rule.status();
                trail.push(n);
                cur = witness;
            }
            AdjointResult::Blocked(sub, _req) => {
                let mut n = Node::info(sig, NodeKind::Oblig(Requirement::HasRadj), sub.clone());
                n.status = Status::Missing;
                trail.push(n);
                return Ok((trail, Err(sub)));
            }
        }
    }
    Ok((trail, Ok(cur)))
}

/// One obligation node: resolve the tower, then require a right adjoint of
/// the resulting cell.
fn stack_oblig_node(p: &Presentation, stack: &StackObligation) -> Result<Node, TermError> {
    let sig = &p.signature;
    let mut node = Node::info(sig, NodeKind::Oblig(Requirement::HasRadj), stack.formal_term());
    let (trail, outcome) = resolve_stack(p, stack)?;
    match outcome {
        Ok(cell) => {
            let mut inner = oblig_node(p, &cell, 1, Side::Right, Side::Right)?;
            inner.children.splice(0..0, trail);
            node.status = inner.status.clone();
            node.adjoint = inner.adjoint.clone();
            node.pair = inner.pair.clone();
            node.label = inner.label.clone();
            node.subject = inner.subject.clone();
            node.children = inner.children;
        }
        Err(blocking) => {
            node.status = Status::Missing;
            node.label = display_label(sig, &blocking);
            node.subject = blocking;
            node.children = trail;
        }
    }
    Ok(node)
}

/// Level-`l` obligations of object dualizability: `radj(rco^i(ru^{l-1-i}))`
/// for `0 <= i <= l-1`.
fn level_stacks(x: &Term, l: u32) -> Vec<StackObligation> {
    (0..l)
        .map(|i| StackObligation::tower(x.clone(), l - 1 - i, i))
        .collect()
}

pub fn dualizable_object(p: &Presentation, x: &Term, m: u32) -> Result<DerivationTree, TermError> {
    let sig = &p.signature;
    if !sig.monoidal {
        return Err(TermError::DeloopingDisabled);
    }
    typecheck(sig, x)?;
    if m > sig.ambient_dim {
        return Err(TermError::DepthBound {
            m,
            ambient: sig.ambient_dim,
        });
    }
    let query = format!("dualizable {} m={}", display_label(sig, x), m);
    let mut root = Node::info(sig, NodeKind::Cell, x.clone());
    if m == 0 {
        root.status = Status::Derived("vacuous".into());
        return Ok(DerivationTree::new(query, root));
    }
    for l in 1..=m {
        for stack in level_stacks(x, l) {
            root.children.push(stack_oblig_node(p, &stack)?);
        }
    }
    Ok(DerivationTree::new(query, root))
}

/// Non-compact dualizability: `(n, k)`-dualizability obligations, i.e. full
/// `(n-1)`-dualizability plus right adjoints for the first `k` towers at the
/// top level.
pub fn nc_dualizable_object(
    p: &Presentation,
    x: &Term,
    n: u32,
    k: u32,
) -> Result<DerivationTree, TermError> {
    let sig = &p.signature;
    if !sig.monoidal {
        return Err(TermError::DeloopingDisabled);
    }
    typecheck(sig, x)?;
    if n > sig.ambient_dim {
        return Err(TermError::DepthBound {
            m: n,
            ambient: sig.ambient_dim,
        });
    }
    let query = format!("nc-dualizable {} n={} k={}", display_label(sig, x), n, k);
    let mut root = Node::info(sig, NodeKind::Cell, x.clone());
    for l in 1..n {
        for stack in level_stacks(x, l) {
            root.children.push(stack_oblig_node(p, &stack)?);
        }
    }
    for i in 0..k.min(n) {
        let stack = StackObligation::tower(x.clone(), n - 1 - i, i);
        root.children.push(stack_oblig_node(p, &stack)?);
    }
    Ok(DerivationTree::new(query, root))
}

/// Normalize under the presentation's full rule set.
pub fn normalize_in(p: &Presentation, t: &Term) -> Result<Term, TermError> {
    let rules = p.rewrite_rules(None);
    let mut fuel = p.fresh_fuel();
    normalize(&p.signature, t, &rules, &mut fuel)
}

/// Equality modulo the presentation's rules and snake rewriting.
pub fn equal_in(p: &Presentation, a: &Term, b: &Term) -> Result<bool, TermError> {
    Ok(normalize_in(p, a)? == normalize_in(p, b)?)
}

/// Convenience: fuel wrapper honoring the presentation's budget.
pub fn presentation_fuel(p: &Presentation) -> Fuel {
    p.fresh_fuel()
}
