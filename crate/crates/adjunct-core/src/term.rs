//! Globular terms over a finite signature.
//!
//! A term denotes a cell of some dimension in an ambient n-category. Dimension
//! 0 is an object. Composition `Comp(j, left, right)` is written `left ∘_j
//! right` and glues `right` into `left` along their shared j-dimensional
//! boundary. In a monoidal signature `∘_0` doubles as the tensor: when the
//! 0-boundaries of the two factors do not match as a composite over objects,
//! the term is read as a juxtaposition in the delooping (objects tensor
//! freely, higher cells only tensor against identity towers).

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

pub type Name = String;
pub type ATerm = Arc<Term>;

/// The four-argument payload of a mate operator: the adjoint morphism `f`,
/// the two sides `g`, `h` of the hom being transported, and the cell `n`
/// being mated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MateArgs {
    pub f: ATerm,
    pub g: ATerm,
    pub h: ATerm,
    pub n: ATerm,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// A declared generator.
    Gen(Name),
    /// The tensor unit object of a monoidal signature, printed `1`.
    One,
    /// Identity cell one dimension up.
    Id(ATerm),
    /// `left ∘_j right`: `right` feeds into `left` along dimension j.
    Comp(u32, ATerm, ATerm),
    /// Symmetry cell on two objects, `sym(x, y) : x * y -> y * x`.
    Sym(ATerm, ATerm),
    /// Formal right adjoint.
    Radj(ATerm),
    /// Formal left adjoint.
    Ladj(ATerm),
    /// Formal unit of the right adjunction of the argument.
    Ru(ATerm),
    /// Formal counit of the right adjunction of the argument.
    Rco(ATerm),
    /// Formal unit of the left adjunction of the argument.
    Lu(ATerm),
    /// Formal counit of the left adjunction of the argument.
    Lco(ATerm),
    MatePhi(MateArgs),
    MatePhiInv(MateArgs),
    MatePsi(MateArgs),
    MatePsiInv(MateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum End {
    Src,
    Tgt,
}

impl Term {
    pub fn gen(name: impl Into<Name>) -> Term {
        Term::Gen(name.into())
    }
    pub fn id(t: Term) -> Term {
        Term::Id(Arc::new(t))
    }
    /// `n`-fold identity tower over `t`.
    pub fn id_n(t: Term, n: u32) -> Term {
        (0..n).fold(t, |acc, _| Term::id(acc))
    }
    pub fn comp(j: u32, left: Term, right: Term) -> Term {
        Term::Comp(j, Arc::new(left), Arc::new(right))
    }
    /// Right-nested `∘_j` chain of the given factors (left to right).
    pub fn comp_n(j: u32, factors: Vec<Term>) -> Term {
        let mut it = factors.into_iter().rev();
        let last = it.next().expect("comp_n needs at least one factor");
        it.fold(last, |acc, f| Term::comp(j, f, acc))
    }
    pub fn sym(x: Term, y: Term) -> Term {
        Term::Sym(Arc::new(x), Arc::new(y))
    }
    pub fn radj(t: Term) -> Term {
        Term::Radj(Arc::new(t))
    }
    pub fn ladj(t: Term) -> Term {
        Term::Ladj(Arc::new(t))
    }
    pub fn ru(t: Term) -> Term {
        Term::Ru(Arc::new(t))
    }
    pub fn rco(t: Term) -> Term {
        Term::Rco(Arc::new(t))
    }
    pub fn lu(t: Term) -> Term {
        Term::Lu(Arc::new(t))
    }
    pub fn lco(t: Term) -> Term {
        Term::Lco(Arc::new(t))
    }
    pub fn mate_phi(f: Term, g: Term, h: Term, n: Term) -> Term {
        Term::MatePhi(MateArgs::new(f, g, h, n))
    }
    pub fn mate_phi_inv(f: Term, g: Term, h: Term, n: Term) -> Term {
        Term::MatePhiInv(MateArgs::new(f, g, h, n))
    }
    pub fn mate_psi(f: Term, g: Term, h: Term, n: Term) -> Term {
        Term::MatePsi(MateArgs::new(f, g, h, n))
    }
    pub fn mate_psi_inv(f: Term, g: Term, h: Term, n: Term) -> Term {
        Term::MatePsiInv(MateArgs::new(f, g, h, n))
    }

    /// If the term is a tower of identities, the tower height and base.
    pub fn id_tower(&self) -> (u32, &Term) {
        match self {
            Term::Id(t) => {
                let (n, base) = t.id_tower();
                (n + 1, base)
            }
            other => (0, other),
        }
    }

    pub fn is_id(&self) -> bool {
        matches!(self, Term::Id(_))
    }
}

impl MateArgs {
    pub fn new(f: Term, g: Term, h: Term, n: Term) -> MateArgs {
        MateArgs {
            f: Arc::new(f),
            g: Arc::new(g),
            h: Arc::new(h),
            n: Arc::new(n),
        }
    }
}

/// A generator cell declaration.
#[derive(Debug, Clone, PartialEq)]
pub struct GenDecl {
    pub name: Name,
    pub dim: u32,
    pub src: Option<Term>,
    pub tgt: Option<Term>,
    pub attrs: BTreeSet<String>,
}

impl GenDecl {
    /// The value of a `key=value` attribute, if present.
    pub fn attr_value(&self, key: &str) -> Option<&str> {
        let prefix = format!("{key}=");
        self.attrs
            .iter()
            .find_map(|a| a.strip_prefix(prefix.as_str()))
    }

    /// Display label: the inducing functor when the cell is functor-induced,
    /// otherwise the generator name.
    pub fn display_label(&self) -> &str {
        self.attr_value("induced").unwrap_or(&self.name)
    }
}

/// A finite presentation's cell alphabet.
#[derive(Debug, Clone, Default)]
pub struct Signature {
    generators: Vec<GenDecl>,
    index: BTreeMap<Name, usize>,
    pub ambient_dim: u32,
    pub monoidal: bool,
    /// Designated tensor unit object, when one of the generators plays that
    /// role (otherwise `1` is used).
    pub unit: Option<Name>,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum TermError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(Name),
    #[error("duplicate generator `{0}`")]
    DuplicateName(Name),
    #[error("objects have no boundary")]
    ZeroDimensional,
    #[error("boundary mismatch at {position}: expected `{expected}`, found `{found}`")]
    BoundaryMismatch {
        position: String,
        expected: String,
        found: String,
    },
    #[error("symmetry cells take two objects")]
    IllegalSym,
    #[error("composition index {j} is out of range for dimension {dim}")]
    IllegalComp { j: u32, dim: u32 },
    #[error("dimension mismatch in composition: {0} vs {1}")]
    DimMismatch(u32, u32),
    #[error("delooping is disabled: the signature is not monoidal")]
    DeloopingDisabled,
    #[error("rewriting exceeded the step budget of {0}")]
    FuelExhausted(u64),
    #[error("query depth {m} exceeds the ambient dimension {ambient}")]
    DepthBound { m: u32, ambient: u32 },
    #[error("malformed generator `{name}`: {reason}")]
    BadGenerator { name: Name, reason: String },
    #[error("missing generators: {0:?}")]
    MissingGenerators(Vec<String>),
    #[error("snake identity did not close; stuck at `{0}`")]
    SnakeFailed(String),
    #[error("invalid flag combination: {0}")]
    InvalidFlagCombination(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("golden mismatch:\n{0}")]
    GoldenMismatch(String),
    #[error("handle index out of range: k={k}, n={n}")]
    IndexOutOfRange { k: u32, n: u32 },
}

impl Signature {
    pub fn new(ambient_dim: u32) -> Signature {
        Signature {
            ambient_dim,
            ..Signature::default()
        }
    }

    pub fn generators(&self) -> &[GenDecl] {
        &self.generators
    }

    pub fn lookup(&self, name: &str) -> Option<&GenDecl> {
        self.index.get(name).map(|&i| &self.generators[i])
    }

    pub fn decl(&self, name: &str) -> Result<&GenDecl, TermError> {
        self.lookup(name)
            .ok_or_else(|| TermError::UnknownGenerator(name.to_string()))
    }

    /// The tensor unit object as a term.
    pub fn unit_term(&self) -> Term {
        match &self.unit {
            Some(n) => Term::Gen(n.clone()),
            None => Term::One,
        }
    }

    /// True when the term is the designated unit object.
    pub fn is_unit_object(&self, t: &Term) -> bool {
        match t {
            Term::One => true,
            Term::Gen(n) => self.unit.as_deref() == Some(n.as_str()),
            _ => false,
        }
    }

    pub fn add_object(&mut self, name: impl Into<Name>) -> Result<(), TermError> {
        self.add_gen(GenDecl {
            name: name.into(),
            dim: 0,
            src: None,
            tgt: None,
            attrs: BTreeSet::new(),
        })
    }

    /// Declare an object and designate it as the tensor unit.
    pub fn add_unit_object(&mut self, name: impl Into<Name>) -> Result<(), TermError> {
        let name = name.into();
        self.add_object(name.clone())?;
        self.unit = Some(name);
        self.monoidal = true;
        Ok(())
    }

    pub fn add_cell(
        &mut self,
        name: impl Into<Name>,
        src: Term,
        tgt: Term,
    ) -> Result<(), TermError> {
        self.add_cell_attrs(name, src, tgt, [])
    }

    pub fn add_cell_attrs(
        &mut self,
        name: impl Into<Name>,
        src: Term,
        tgt: Term,
        attrs: impl IntoIterator<Item = String>,
    ) -> Result<(), TermError> {
        let sd = dim(self, &src)?;
        self.add_gen(GenDecl {
            name: name.into(),
            dim: sd + 1,
            src: Some(src),
            tgt: Some(tgt),
            attrs: attrs.into_iter().collect(),
        })
    }

    pub fn add_gen(&mut self, decl: GenDecl) -> Result<(), TermError> {
        if self.index.contains_key(&decl.name) {
            return Err(TermError::DuplicateName(decl.name));
        }
        match (decl.dim, &decl.src, &decl.tgt) {
            (0, None, None) => {}
            (0, _, _) => {
                return Err(TermError::BadGenerator {
                    name: decl.name,
                    reason: "objects carry no boundary".into(),
                })
            }
            (_, Some(src), Some(tgt)) => {
                // Boundary terms may only mention earlier declarations.
                let (ssrc, stgt) = typecheck(self, src)?;
                let (tsrc, ttgt) = typecheck(self, tgt)?;
                let sd = dim(self, src)?;
                let td = dim(self, tgt)?;
                if sd != td || sd + 1 != decl.dim {
                    return Err(TermError::BadGenerator {
                        name: decl.name,
                        reason: format!("boundary dimensions {sd}/{td} do not fit a {}-cell", decl.dim),
                    });
                }
                // Globularity of the declared boundaries.
                if sd >= 1 && (!struct_eq_raw(self, &ssrc, &tsrc) || !struct_eq_raw(self, &stgt, &ttgt)) {
                    return Err(TermError::BadGenerator {
                        name: decl.name,
                        reason: "source and target boundaries disagree".into(),
                    });
                }
            }
            _ => {
                return Err(TermError::BadGenerator {
                    name: decl.name,
                    reason: "missing boundary".into(),
                })
            }
        }
        self.index.insert(decl.name.clone(), self.generators.len());
        self.generators.push(decl);
        Ok(())
    }
}

/// Cell dimension of a term.
pub fn dim(sig: &Signature, t: &Term) -> Result<u32, TermError> {
    Ok(match t {
        Term::Gen(n) => sig.decl(n)?.dim,
        Term::One => 0,
        Term::Id(t) => dim(sig, t)? + 1,
        Term::Comp(_, a, _) => dim(sig, a)?,
        Term::Sym(_, _) => 1,
        Term::Radj(t) | Term::Ladj(t) => dim(sig, t)?,
        Term::Ru(t) | Term::Rco(t) | Term::Lu(t) | Term::Lco(t) => dim(sig, t)? + 1,
        Term::MatePhi(m) | Term::MatePhiInv(m) | Term::MatePsi(m) | Term::MatePsiInv(m) => {
            dim(sig, &m.n)?
        }
    })
}

/// One-step boundary, check-free. Callers that need validated boundaries go
/// through [`typecheck`] instead.
pub fn boundary(sig: &Signature, t: &Term, end: End) -> Result<Term, TermError> {
    let d = dim(sig, t)?;
    if d == 0 {
        return Err(TermError::ZeroDimensional);
    }
    Ok(match t {
        Term::Gen(n) => {
            let decl = sig.decl(n)?;
            match end {
                End::Src => decl.src.clone().ok_or(TermError::ZeroDimensional)?,
                End::Tgt => decl.tgt.clone().ok_or(TermError::ZeroDimensional)?,
            }
        }
        Term::One => unreachable!("dim 0 handled above"),
        Term::Id(t) => (**t).clone(),
        Term::Comp(j, a, b) => {
            if *j == d - 1 {
                match end {
                    End::Src => boundary(sig, b, End::Src)?,
                    End::Tgt => boundary(sig, a, End::Tgt)?,
                }
            } else {
                Term::comp(*j, boundary(sig, a, end)?, boundary(sig, b, end)?)
            }
        }
        Term::Sym(x, y) => match end {
            End::Src => Term::comp(0, (**x).clone(), (**y).clone()),
            End::Tgt => Term::comp(0, (**y).clone(), (**x).clone()),
        },
        Term::Radj(t) | Term::Ladj(t) => boundary(sig, t, end.flip())?,
        Term::Ru(t) => {
            let td = dim(sig, t)?;
            match (end, td) {
                (End::Src, 0) => sig.unit_term(),
                (End::Src, _) => Term::id(boundary(sig, t, End::Src)?),
                (End::Tgt, 0) => Term::comp(0, Term::radj((**t).clone()), (**t).clone()),
                (End::Tgt, td) => Term::comp(td - 1, Term::radj((**t).clone()), (**t).clone()),
            }
        }
        Term::Rco(t) => {
            let td = dim(sig, t)?;
            match (end, td) {
                (End::Src, 0) => Term::comp(0, (**t).clone(), Term::radj((**t).clone())),
                (End::Src, td) => Term::comp(td - 1, (**t).clone(), Term::radj((**t).clone())),
                (End::Tgt, 0) => sig.unit_term(),
                (End::Tgt, _) => Term::id(boundary(sig, t, End::Tgt)?),
            }
        }
        Term::Lu(t) => {
            let td = dim(sig, t)?;
            match (end, td) {
                (End::Src, 0) => sig.unit_term(),
                (End::Src, _) => Term::id(boundary(sig, t, End::Tgt)?),
                (End::Tgt, 0) => Term::comp(0, (**t).clone(), Term::ladj((**t).clone())),
                (End::Tgt, td) => Term::comp(td - 1, (**t).clone(), Term::ladj((**t).clone())),
            }
        }
        Term::Lco(t) => {
            let td = dim(sig, t)?;
            match (end, td) {
                (End::Src, 0) => Term::comp(0, Term::ladj((**t).clone()), (**t).clone()),
                (End::Src, td) => Term::comp(td - 1, Term::ladj((**t).clone()), (**t).clone()),
                (End::Tgt, 0) => sig.unit_term(),
                (End::Tgt, _) => Term::id(boundary(sig, t, End::Src)?),
            }
        }
        Term::MatePhi(m) => {
            let k = dim(sig, &m.f)?.saturating_sub(1);
            match end {
                End::Src => (*m.g).clone(),
                End::Tgt => Term::comp(k, Term::radj((*m.f).clone()), (*m.h).clone()),
            }
        }
        Term::MatePhiInv(m) => {
            let k = dim(sig, &m.f)?.saturating_sub(1);
            match end {
                End::Src => Term::comp(k, (*m.f).clone(), (*m.g).clone()),
                End::Tgt => (*m.h).clone(),
            }
        }
        Term::MatePsi(m) => {
            let k = dim(sig, &m.f)?.saturating_sub(1);
            match end {
                End::Src => (*m.g).clone(),
                End::Tgt => Term::comp(k, (*m.h).clone(), (*m.f).clone()),
            }
        }
        Term::MatePsiInv(m) => {
            let k = dim(sig, &m.f)?.saturating_sub(1);
            match end {
                End::Src => Term::comp(k, (*m.g).clone(), Term::radj((*m.f).clone())),
                End::Tgt => (*m.h).clone(),
            }
        }
    })
}

impl End {
    pub fn flip(self) -> End {
        match self {
            End::Src => End::Tgt,
            End::Tgt => End::Src,
        }
    }
}

/// Iterated boundary down to dimension `j`.
pub fn boundary_at(sig: &Signature, t: &Term, j: u32, end: End) -> Result<Term, TermError> {
    let mut cur = t.clone();
    let mut d = dim(sig, &cur)?;
    while d > j {
        cur = boundary(sig, &cur, end)?;
        d -= 1;
    }
    Ok(cur)
}

/// Structural equality without normalization; used while validating the
/// signature itself (normalization is defined on top of a valid signature).
fn struct_eq_raw(_sig: &Signature, a: &Term, b: &Term) -> bool {
    a == b
}

/// Result of a successful typecheck: outer source and target, structurally
/// normalized.
pub fn typecheck(sig: &Signature, t: &Term) -> Result<(Term, Term), TermError> {
    typecheck_inner(sig, t)?;
    let d = dim(sig, t)?;
    if d == 0 {
        // Objects are their own boundary report.
        return Ok((t.clone(), t.clone()));
    }
    let src = crate::normalize::normalize_structural(sig, &boundary(sig, t, End::Src)?)?;
    let tgt = crate::normalize::normalize_structural(sig, &boundary(sig, t, End::Tgt)?)?;
    Ok((src, tgt))
}

fn mate_shape_check(
    sig: &Signature,
    m: &MateArgs,
    want_src: impl Fn(u32) -> Term,
    want_tgt: impl Fn(u32) -> Term,
    position: &str,
) -> Result<(), TermError> {
    typecheck_inner(sig, &m.f)?;
    typecheck_inner(sig, &m.g)?;
    typecheck_inner(sig, &m.h)?;
    typecheck_inner(sig, &m.n)?;
    let k = dim(sig, &m.f)?.saturating_sub(1);
    let nsrc = boundary(sig, &m.n, End::Src)?;
    let ntgt = boundary(sig, &m.n, End::Tgt)?;
    let esrc = want_src(k);
    let etgt = want_tgt(k);
    if !struct_eq(sig, &nsrc, &esrc)? {
        return Err(TermError::BoundaryMismatch {
            position: format!("{position} source"),
            expected: esrc.to_string(),
            found: nsrc.to_string(),
        });
    }
    if !struct_eq(sig, &ntgt, &etgt)? {
        return Err(TermError::BoundaryMismatch {
            position: format!("{position} target"),
            expected: etgt.to_string(),
            found: ntgt.to_string(),
        });
    }
    Ok(())
}

fn typecheck_inner(sig: &Signature, t: &Term) -> Result<(), TermError> {
    match t {
        Term::Gen(n) => {
            sig.decl(n)?;
        }
        Term::One => {
            if !sig.monoidal {
                return Err(TermError::DeloopingDisabled);
            }
        }
        Term::Id(t) => typecheck_inner(sig, t)?,
        Term::Comp(j, a, b) => {
            typecheck_inner(sig, a)?;
            typecheck_inner(sig, b)?;
            let da = dim(sig, a)?;
            let db = dim(sig, b)?;
            if da != db {
                return Err(TermError::DimMismatch(da, db));
            }
            if *j >= da.max(1) {
                return Err(TermError::IllegalComp { j: *j, dim: da });
            }
            if da == 0 {
                // Tensor of objects in the delooping.
                if !sig.monoidal {
                    return Err(TermError::DeloopingDisabled);
                }
                return Ok(());
            }
            let atail = boundary_at(sig, a, *j, End::Src)?;
            let bhead = boundary_at(sig, b, *j, End::Tgt)?;
            if struct_eq(sig, &atail, &bhead)? {
                return Ok(());
            }
            // Tensor reading of ∘_0 in a monoidal signature: objects and
            // 1-cells juxtapose freely, higher cells only against identity
            // towers (higher tensors are expressed by whiskering).
            if *j == 0 && sig.monoidal {
                let whisker_ok =
                    da <= 1 || a.id_tower().0 >= 1 || b.id_tower().0 >= 1;
                if whisker_ok {
                    return Ok(());
                }
            }
            return Err(TermError::BoundaryMismatch {
                position: format!("∘_{j} seam"),
                expected: atail.to_string(),
                found: bhead.to_string(),
            });
        }
        Term::Sym(x, y) => {
            typecheck_inner(sig, x)?;
            typecheck_inner(sig, y)?;
            if !sig.monoidal || dim(sig, x)? != 0 || dim(sig, y)? != 0 {
                return Err(TermError::IllegalSym);
            }
        }
        Term::Radj(t) | Term::Ladj(t) | Term::Ru(t) | Term::Rco(t) | Term::Lu(t) | Term::Lco(t) => {
            typecheck_inner(sig, t)?;
            if dim(sig, t)? == 0 && !sig.monoidal {
                return Err(TermError::DeloopingDisabled);
            }
        }
        Term::MatePhi(m) => {
            let f = m.f.clone();
            let g = m.g.clone();
            let h = m.h.clone();
            mate_shape_check(
                sig,
                m,
                |k| Term::comp(k, (*f).clone(), (*g).clone()),
                |_| (*h).clone(),
                "mate Φ argument",
            )?;
        }
        Term::MatePhiInv(m) => {
            let f = m.f.clone();
            let g = m.g.clone();
            let h = m.h.clone();
            mate_shape_check(
                sig,
                m,
                |_| (*g).clone(),
                |k| Term::comp(k, Term::radj((*f).clone()), (*h).clone()),
                "mate Φ⁻¹ argument",
            )?;
        }
        Term::MatePsi(m) => {
            let f = m.f.clone();
            let g = m.g.clone();
            let h = m.h.clone();
            mate_shape_check(
                sig,
                m,
                |k| Term::comp(k, (*g).clone(), Term::radj((*f).clone())),
                |_| (*h).clone(),
                "mate Ψ argument",
            )?;
        }
        Term::MatePsiInv(m) => {
            let f = m.f.clone();
            let g = m.g.clone();
            let h = m.h.clone();
            mate_shape_check(
                sig,
                m,
                |_| (*g).clone(),
                |k| Term::comp(k, (*h).clone(), (*f).clone()),
                "mate Ψ⁻¹ argument",
            )?;
        }
    }
    Ok(())
}

/// Structural equality: both sides normalize to the same term.
pub fn struct_eq(sig: &Signature, a: &Term, b: &Term) -> Result<bool, TermError> {
    if a == b {
        return Ok(true);
    }
    let na = crate::normalize::normalize_structural(sig, a)?;
    let nb = crate::normalize::normalize_structural(sig, b)?;
    Ok(na == nb)
}

/// `structurally_equal` from the module contract: requires both terms to
/// typecheck with matching outer boundaries.
pub fn structurally_equal(sig: &Signature, a: &Term, b: &Term) -> Result<bool, TermError> {
    let (sa, ta) = typecheck(sig, a)?;
    let (sb, tb) = typecheck(sig, b)?;
    if dim(sig, a)? != dim(sig, b)? {
        return Err(TermError::DimMismatch(dim(sig, a)?, dim(sig, b)?));
    }
    if dim(sig, a)? > 0 && (sa != sb || ta != tb) {
        return Err(TermError::BoundaryMismatch {
            position: "outer boundary".into(),
            expected: format!("{sa} -> {ta}"),
            found: format!("{sb} -> {tb}"),
        });
    }
    struct_eq(sig, a, b)
}

// Canonical printing uses the DSL grammar so every printed term re-parses.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn atom(t: &Term) -> bool {
            !matches!(t, Term::Comp(_, _, _))
        }
        fn write(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                Term::Gen(n) => write!(f, "{n}"),
                Term::One => write!(f, "1"),
                Term::Id(t) => {
                    write!(f, "id(")?;
                    write(t, f)?;
                    write!(f, ")")
                }
                Term::Comp(j, a, b) => {
                    // Chains of the same index print without parentheses,
                    // right-associated; anything else is parenthesized.
                    let op = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
                        if *j == 0 {
                            write!(f, " * ")
                        } else {
                            write!(f, " .{j} ")
                        }
                    };
                    if atom(a) {
                        write(a, f)?;
                    } else {
                        write!(f, "(")?;
                        write(a, f)?;
                        write!(f, ")")?;
                    }
                    op(f)?;
                    match &**b {
                        Term::Comp(j2, _, _) if j2 == j => write(b, f),
                        b if atom(b) => write(b, f),
                        b => {
                            write!(f, "(")?;
                            write(b, f)?;
                            write!(f, ")")
                        }
                    }
                }
                Term::Sym(x, y) => {
                    write!(f, "sym(")?;
                    write(x, f)?;
                    write!(f, ", ")?;
                    write(y, f)?;
                    write!(f, ")")
                }
                Term::Radj(t) => call("radj", t, f),
                Term::Ladj(t) => call("ladj", t, f),
                Term::Ru(t) => call("ru", t, f),
                Term::Rco(t) => call("rco", t, f),
                Term::Lu(t) => call("lu", t, f),
                Term::Lco(t) => call("lco", t, f),
                Term::MatePhi(m) => mate("matephi", m, f),
                Term::MatePhiInv(m) => mate("matephiinv", m, f),
                Term::MatePsi(m) => mate("matepsi", m, f),
                Term::MatePsiInv(m) => mate("matepsiinv", m, f),
            }
        }
        fn call(name: &str, t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{name}(")?;
            write(t, f)?;
            write!(f, ")")
        }
        fn mate(name: &str, m: &MateArgs, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{name}(")?;
            write(&m.f, f)?;
            write!(f, ", ")?;
            write(&m.g, f)?;
            write!(f, ", ")?;
            write(&m.h, f)?;
            write!(f, ", ")?;
            write(&m.n, f)?;
            write!(f, ")")
        }
        write(self, f)
    }
}
