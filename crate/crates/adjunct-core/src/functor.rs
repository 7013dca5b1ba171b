//! The functor level: a small 1-categorical expression language for the
//! symbols that induce central algebras and bimodules.
//!
//! Cells of a presentation may carry an `induced=<expr>` attribute tying them
//! to a functor expression. Composites of induced cells reduce at this level:
//! composition along the top direction becomes functor composition,
//! whiskering becomes a tensor against the identity, and the presentation's
//! `feq` equations finish the job.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctorExpr {
    /// The identity functor (of whatever boundary the context supplies).
    Id,
    /// A named functor symbol; `mirrored` marks the opposite-handed bimodule
    /// reading, printed `bar(name)`.
    Gen { name: String, mirrored: bool },
    /// `Comp(g, f)` is `g` after `f`.
    Comp(Box<FunctorExpr>, Box<FunctorExpr>),
    /// Side-by-side tensor (relative tensor subscripts are recoverable from
    /// the carrying cells' boundaries and are not recorded here).
    Tensor(Box<FunctorExpr>, Box<FunctorExpr>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctorEquation {
    pub name: String,
    pub lhs: FunctorExpr,
    pub rhs: FunctorExpr,
}

impl FunctorExpr {
    pub fn gen(name: impl Into<String>) -> FunctorExpr {
        FunctorExpr::Gen {
            name: name.into(),
            mirrored: false,
        }
    }

    pub fn bar(name: impl Into<String>) -> FunctorExpr {
        FunctorExpr::Gen {
            name: name.into(),
            mirrored: true,
        }
    }

    pub fn comp(g: FunctorExpr, f: FunctorExpr) -> FunctorExpr {
        FunctorExpr::Comp(Box::new(g), Box::new(f))
    }

    pub fn tensor(a: FunctorExpr, b: FunctorExpr) -> FunctorExpr {
        FunctorExpr::Tensor(Box::new(a), Box::new(b))
    }

    /// Structural normal form: composition chains flattened right-nested with
    /// identities absorbed, tensors flattened right-nested. Tensor factors of
    /// pure identity collapse to a single identity.
    pub fn normal(&self) -> FunctorExpr {
        match self {
            FunctorExpr::Id | FunctorExpr::Gen { .. } => self.clone(),
            FunctorExpr::Comp(_, _) => {
                let mut parts = Vec::new();
                self.flatten_comp(&mut parts);
                let parts: Vec<FunctorExpr> = parts
                    .into_iter()
                    .map(|p| p.normal())
                    .filter(|p| *p != FunctorExpr::Id)
                    .collect();
                match parts.len() {
                    0 => FunctorExpr::Id,
                    _ => parts
                        .into_iter()
                        .rev()
                        .reduce(|acc, g| FunctorExpr::comp(g, acc))
                        .unwrap(),
                }
            }
            FunctorExpr::Tensor(_, _) => {
                let mut parts = Vec::new();
                self.flatten_tensor(&mut parts);
                let parts: Vec<FunctorExpr> = parts.into_iter().map(|p| p.normal()).collect();
                if parts.iter().all(|p| *p == FunctorExpr::Id) {
                    return FunctorExpr::Id;
                }
                parts
                    .into_iter()
                    .rev()
                    .reduce(|acc, a| FunctorExpr::tensor(a, acc))
                    .unwrap()
            }
        }
    }

    fn flatten_comp(&self, out: &mut Vec<FunctorExpr>) {
        match self {
            FunctorExpr::Comp(g, f) => {
                g.flatten_comp(out);
                f.flatten_comp(out);
            }
            other => out.push(other.clone()),
        }
    }

    fn flatten_tensor(&self, out: &mut Vec<FunctorExpr>) {
        match self {
            FunctorExpr::Tensor(a, b) => {
                a.flatten_tensor(out);
                b.flatten_tensor(out);
            }
            other => out.push(other.clone()),
        }
    }

    /// Apply the given equations (left to right, matching windows of the
    /// composition chain) until a fixpoint. Returns the reduced expression
    /// and the applied steps with their intermediate results.
    pub fn reduce(&self, equations: &[FunctorEquation]) -> (FunctorExpr, Vec<(String, FunctorExpr)>) {
        let mut cur = self.normal();
        let mut applied = Vec::new();
        'outer: loop {
            if applied.len() > 256 {
                return (cur, applied);
            }
            let mut chain = Vec::new();
            cur.flatten_comp(&mut chain);
            for eq in equations {
                let mut pat = Vec::new();
                eq.lhs.normal().flatten_comp(&mut pat);
                if pat.is_empty() {
                    continue;
                }
                let n = chain.len();
                let w = pat.len();
                if w > n {
                    continue;
                }
                for start in 0..=(n - w) {
                    if chain[start..start + w]
                        .iter()
                        .zip(pat.iter())
                        .all(|(a, b)| a.normal() == b.normal())
                    {
                        let mut next = Vec::new();
                        next.extend_from_slice(&chain[..start]);
                        next.push(eq.rhs.clone());
                        next.extend_from_slice(&chain[start + w..]);
                        let rebuilt = next
                            .into_iter()
                            .rev()
                            .reduce(|acc, g| FunctorExpr::comp(g, acc))
                            .unwrap_or(FunctorExpr::Id);
                        cur = rebuilt.normal();
                        applied.push((eq.name.clone(), cur.clone()));
                        continue 'outer;
                    }
                }
            }
            return (cur, applied);
        }
    }
}

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorExpr::Id => write!(f, "id"),
            FunctorExpr::Gen { name, mirrored } => {
                if *mirrored {
                    write!(f, "bar({name})")
                } else {
                    write!(f, "{name}")
                }
            }
            FunctorExpr::Comp(g, x) => {
                let wrap = |e: &FunctorExpr| matches!(e, FunctorExpr::Comp(_, _));
                if wrap(g) {
                    write!(f, "({g})")?;
                } else {
                    write!(f, "{g}")?;
                }
                write!(f, " . ")?;
                if wrap(x) {
                    write!(f, "({x})")
                } else {
                    write!(f, "{x}")
                }
            }
            FunctorExpr::Tensor(a, b) => {
                let wrap = |e: &FunctorExpr| !matches!(e, FunctorExpr::Id | FunctorExpr::Gen { .. });
                if wrap(a) {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                write!(f, " * ")?;
                if wrap(b) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comp_absorbs_identities() {
        let e = FunctorExpr::comp(
            FunctorExpr::Id,
            FunctorExpr::comp(FunctorExpr::gen("T"), FunctorExpr::Id),
        );
        assert_eq!(e.normal(), FunctorExpr::gen("T"));
    }

    #[test]
    fn equation_window_fires() {
        // (id * T) . (eta * id) -> id
        let lhs = FunctorExpr::comp(
            FunctorExpr::tensor(FunctorExpr::Id, FunctorExpr::gen("T")),
            FunctorExpr::tensor(FunctorExpr::gen("eta"), FunctorExpr::Id),
        );
        let eq = FunctorEquation {
            name: "unit-snake".into(),
            lhs: lhs.clone(),
            rhs: FunctorExpr::Id,
        };
        let (red, used) = lhs.reduce(&[eq]);
        assert_eq!(red, FunctorExpr::Id);
        assert_eq!(used.len(), 1);
        assert_eq!(used[0].0, "unit-snake");
    }
}
