//! Built-in presentations: the unit inclusion in a braided tensor category,
//! the central algebra of a generic braided monoidal functor, and the generic
//! induced-bimodule rewrite theory.
//!
//! Flags encode the hypotheses under which extra data is declared:
//!
//! * `enough-cp` — the base setting; only the always-available adjunctions.
//! * `cp-rigid` — adds the opposite-handed adjunctions (the gray part of the
//!   adjunctibility figure), right adjoints for the tensor-induced cells, and
//!   third-level dual data for the objects.
//! * `unit-cp` — adds a right adjoint for the unit-inclusion cells.
//! * `fusion` — cp-rigid with compact-projective unit; every displayed cell
//!   becomes two-sided adjunctible.
//! * `modular-ss` / `modular-nonss` — modular object data (the point object
//!   is declared 4-dualizable), with and without `unit-cp`.

use std::collections::BTreeSet;

use crate::casebook::load_bimodule_rules;
use crate::presentation::{AdjunctionDecl, Presentation, Side};
use crate::term::{Signature, Term, TermError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetName {
    UnitInclusion,
    BraidedFunctor,
    BimoduleRewrite,
}

impl PresetName {
    pub fn parse(s: &str) -> Option<PresetName> {
        match s {
            "unit-inclusion" => Some(PresetName::UnitInclusion),
            "braided-functor" => Some(PresetName::BraidedFunctor),
            "bimodule-rewrite" => Some(PresetName::BimoduleRewrite),
            _ => None,
        }
    }
    pub fn as_str(self) -> &'static str {
        match self {
            PresetName::UnitInclusion => "unit-inclusion",
            PresetName::BraidedFunctor => "braided-functor",
            PresetName::BimoduleRewrite => "bimodule-rewrite",
        }
    }
}

#[derive(Debug, Clone)]
pub struct PresetSpec {
    pub name: PresetName,
    pub flags: BTreeSet<String>,
}

impl PresetSpec {
    pub fn new(name: PresetName, flags: impl IntoIterator<Item = &'static str>) -> PresetSpec {
        PresetSpec {
            name,
            flags: flags.into_iter().map(String::from).collect(),
        }
    }
}

/// Close a flag set under its implications and reject invalid combinations.
pub fn normalize_flags(
    name: PresetName,
    flags: &BTreeSet<String>,
) -> Result<BTreeSet<String>, TermError> {
    let allowed: &[&str] = match name {
        PresetName::UnitInclusion => &[
            "enough-cp",
            "cp-rigid",
            "unit-cp",
            "fusion",
            "modular-ss",
            "modular-nonss",
        ],
        PresetName::BraidedFunctor => &["cp-rigid", "preserves-cp"],
        PresetName::BimoduleRewrite => &["cp-rigid"],
    };
    for f in flags {
        if !allowed.contains(&f.as_str()) {
            return Err(TermError::InvalidFlagCombination(format!(
                "flag `{f}` is not valid for preset `{}`",
                name.as_str()
            )));
        }
    }
    let mut out = flags.clone();
    if name == PresetName::UnitInclusion {
        if out.contains("modular-ss") {
            out.insert("fusion".into());
        }
        if out.contains("fusion") {
            out.insert("cp-rigid".into());
            out.insert("unit-cp".into());
        }
        if out.contains("modular-nonss") {
            out.insert("cp-rigid".into());
        }
        if out.contains("cp-rigid") {
            out.insert("enough-cp".into());
        }
        if out.contains("modular-nonss") && (flags.contains("unit-cp") || out.contains("fusion")) {
            return Err(TermError::InvalidFlagCombination(
                "modular-nonss excludes unit-cp and fusion".into(),
            ));
        }
        if out.contains("modular-nonss") && out.contains("modular-ss") {
            return Err(TermError::InvalidFlagCombination(
                "modular-ss and modular-nonss are mutually exclusive".into(),
            ));
        }
    }
    if name == PresetName::BraidedFunctor && out.contains("preserves-cp") {
        out.insert("cp-rigid".into());
    }
    Ok(out)
}

/// Dual data for an object: its dual, evaluation/coevaluation, and higher
/// witnesses up to the requested level (level >= 4 uses opaque declarations
/// over the formal witnesses).
fn declare_object_dual_data(
    sig: &mut Signature,
    decls: &mut Vec<AdjunctionDecl>,
    x: &str,
    level: u32,
) -> Result<(), TermError> {
    if level == 0 {
        return Ok(());
    }
    let xg = Term::gen(x);
    let xop = format!("{x}op");
    let ev = format!("ev_{x}");
    let coev = format!("coev_{x}");
    sig.add_object(xop.clone())?;
    let xopg = Term::gen(xop.clone());
    sig.add_cell(ev.clone(), Term::comp(0, xg.clone(), xopg.clone()), sig.unit_term())?;
    sig.add_cell(coev.clone(), sig.unit_term(), Term::comp(0, xopg.clone(), xg.clone()))?;
    decls.push(AdjunctionDecl {
        left: xg.clone(),
        right: xopg.clone(),
        unit: Term::gen(coev.clone()),
        counit: Term::gen(ev.clone()),
        side_declared: Side::Right,
        doc: None,
    });
    if level < 2 {
        return Ok(());
    }
    let evg = Term::gen(ev.clone());
    let coevg = Term::gen(coev.clone());
    let evr = format!("evR_{x}");
    let coevr = format!("coevR_{x}");
    sig.add_cell(evr.clone(), sig.unit_term(), Term::comp(0, xg.clone(), xopg.clone()))?;
    sig.add_cell(coevr.clone(), Term::comp(0, xopg.clone(), xg.clone()), sig.unit_term())?;
    let evrg = Term::gen(evr.clone());
    let coevrg = Term::gen(coevr.clone());
    let ev_u = format!("ev_{x}_u");
    let ev_c = format!("ev_{x}_c");
    let coev_u = format!("coev_{x}_u");
    let coev_c = format!("coev_{x}_c");
    sig.add_cell(
        ev_u.clone(),
        Term::id(Term::comp(0, xg.clone(), xopg.clone())),
        Term::comp(0, evrg.clone(), evg.clone()),
    )?;
    sig.add_cell(
        ev_c.clone(),
        Term::comp(0, evg.clone(), evrg.clone()),
        Term::id(sig.unit_term()),
    )?;
    sig.add_cell(
        coev_u.clone(),
        Term::id(sig.unit_term()),
        Term::comp(0, coevrg.clone(), coevg.clone()),
    )?;
    sig.add_cell(
        coev_c.clone(),
        Term::comp(0, coevg.clone(), coevrg.clone()),
        Term::id(Term::comp(0, xopg.clone(), xg.clone())),
    )?;
    decls.push(AdjunctionDecl {
        left: evg.clone(),
        right: evrg,
        unit: Term::gen(ev_u.clone()),
        counit: Term::gen(ev_c.clone()),
        side_declared: Side::Right,
        doc: None,
    });
    decls.push(AdjunctionDecl {
        left: coevg.clone(),
        right: coevrg,
        unit: Term::gen(coev_u.clone()),
        counit: Term::gen(coev_c.clone()),
        side_declared: Side::Right,
        doc: None,
    });
    if level < 3 {
        return Ok(());
    }
    let witnesses = [ev_u, ev_c, coev_u, coev_c];
    for w in &witnesses {
        decls.push(AdjunctionDecl::opaque_right(Term::gen(w.clone())));
    }
    if level < 4 {
        return Ok(());
    }
    for w in &witnesses {
        decls.push(AdjunctionDecl::opaque_right(Term::ru(Term::gen(w.clone()))));
        decls.push(AdjunctionDecl::opaque_right(Term::rco(Term::gen(w.clone()))));
    }
    Ok(())
}

pub fn build_preset(spec: &PresetSpec) -> Result<Presentation, TermError> {
    let flags = normalize_flags(spec.name, &spec.flags)?;
    let mut p = match spec.name {
        PresetName::UnitInclusion => unit_inclusion(&flags)?,
        PresetName::BraidedFunctor => braided_functor(&flags)?,
        PresetName::BimoduleRewrite => bimodule_rewrite(&flags)?,
    };
    p.flags = flags;
    p.validate_snakes = true;
    p = load_bimodule_rules(&p)?;
    Ok(p)
}

fn attr(s: &str) -> Vec<String> {
    vec![s.to_string()]
}

fn unit_inclusion(flags: &BTreeSet<String>) -> Result<Presentation, TermError> {
    let mut sig = Signature::new(4);
    sig.add_unit_object("Vectk")?;
    sig.add_object("V")?;
    let vectk = Term::gen("Vectk");
    let v = Term::gen("V");

    sig.add_cell_attrs("Aeta", vectk.clone(), v.clone(), attr("induced=eta"))?;
    sig.add_cell_attrs("Abar_eta", v.clone(), vectk.clone(), attr("induced=bar(eta)"))?;
    let a = Term::gen("Aeta");
    let abar = Term::gen("Abar_eta");
    let abar_a = Term::comp(0, abar.clone(), a.clone());
    let a_abar = Term::comp(0, a.clone(), abar.clone());

    sig.add_cell_attrs("Meta", Term::id(vectk.clone()), abar_a.clone(), attr("induced=eta"))?;
    sig.add_cell_attrs("MT", a_abar.clone(), Term::id(v.clone()), attr("induced=T"))?;
    sig.add_cell_attrs("Mbar_eta", abar_a.clone(), Term::id(vectk.clone()), attr("induced=bar(eta)"))?;
    sig.add_cell_attrs("Mbar_T", Term::id(v.clone()), a_abar.clone(), attr("induced=bar(T)"))?;
    let meta = Term::gen("Meta");
    let mt = Term::gen("MT");
    let mbar_eta = Term::gen("Mbar_eta");
    let mbar_t = Term::gen("Mbar_T");

    sig.add_cell_attrs(
        "eta_u",
        Term::id(Term::id(vectk.clone())),
        Term::comp(1, mbar_eta.clone(), meta.clone()),
        attr("induced=eta"),
    )?;
    sig.add_cell_attrs(
        "T_c",
        Term::comp(1, meta.clone(), mbar_eta.clone()),
        Term::id(abar_a.clone()),
        attr("induced=T"),
    )?;
    sig.add_cell_attrs(
        "T_u",
        Term::id(a_abar.clone()),
        Term::comp(1, mbar_t.clone(), mt.clone()),
        attr("induced=T"),
    )?;
    sig.add_cell_attrs(
        "Tbal_c",
        Term::comp(1, mt.clone(), mbar_t.clone()),
        Term::id(Term::id(v.clone())),
        attr("induced=Tbal"),
    )?;

    let mut decls = vec![
        AdjunctionDecl {
            left: a.clone(),
            right: abar.clone(),
            unit: meta.clone(),
            counit: mt.clone(),
            side_declared: Side::Right,
            doc: None,
        },
        AdjunctionDecl {
            left: abar.clone(),
            right: a.clone(),
            unit: mbar_t.clone(),
            counit: mbar_eta.clone(),
            side_declared: Side::Left,
            doc: None,
        },
        AdjunctionDecl {
            left: meta.clone(),
            right: mbar_eta.clone(),
            unit: Term::gen("eta_u"),
            counit: Term::gen("T_c"),
            side_declared: Side::Right,
            doc: None,
        },
        AdjunctionDecl {
            left: mt.clone(),
            right: mbar_t.clone(),
            unit: Term::gen("T_u"),
            counit: Term::gen("Tbal_c"),
            side_declared: Side::Right,
            doc: None,
        },
    ];

    if flags.contains("cp-rigid") {
        sig.add_cell_attrs(
            "etaR_c",
            Term::comp(1, mbar_eta.clone(), meta.clone()),
            Term::id(Term::id(vectk.clone())),
            attr("induced=etaR"),
        )?;
        sig.add_cell_attrs(
            "TR_u",
            Term::id(abar_a.clone()),
            Term::comp(1, meta.clone(), mbar_eta.clone()),
            attr("induced=TR"),
        )?;
        sig.add_cell_attrs(
            "TR_c",
            Term::comp(1, mbar_t.clone(), mt.clone()),
            Term::id(a_abar.clone()),
            attr("induced=TR"),
        )?;
        sig.add_cell_attrs(
            "TbalR_u",
            Term::id(Term::id(v.clone())),
            Term::comp(1, mt.clone(), mbar_t.clone()),
            attr("induced=TbalR"),
        )?;
        // The cocontinuous extension of the unit's right adjoint justifies
        // the opposite-handed adjunction; recorded, never evaluated.
        let coend_doc = Some("etaR agrees with the right adjoint of the unit on compact-projectives; TbalR is the coend-style right adjoint of the balanced tensor".to_string());
        decls.push(AdjunctionDecl {
            left: mbar_eta.clone(),
            right: meta.clone(),
            unit: Term::gen("TR_u"),
            counit: Term::gen("etaR_c"),
            side_declared: Side::Left,
            doc: coend_doc.clone(),
        });
        decls.push(AdjunctionDecl {
            left: mbar_t.clone(),
            right: mt.clone(),
            unit: Term::gen("TbalR_u"),
            counit: Term::gen("TR_c"),
            side_declared: Side::Left,
            doc: coend_doc,
        });
        // The tensor-induced functor cells acquire right adjoints.
        for w in ["T_c", "T_u", "Tbal_c", "TR_u", "TR_c", "TbalR_u"] {
            decls.push(AdjunctionDecl::opaque_right(Term::gen(w)));
        }
    }
    if flags.contains("unit-cp") {
        decls.push(AdjunctionDecl::opaque_right(Term::gen("eta_u")));
        decls.push(AdjunctionDecl::opaque_right(Term::gen("Mbar_eta")));
    }
    if flags.contains("fusion") {
        for w in ["eta_u", "T_c", "T_u", "Tbal_c", "etaR_c", "TR_u", "TR_c", "TbalR_u"] {
            let t = Term::gen(w);
            if !decls
                .iter()
                .any(|d| d.left == t && d.side_declared == Side::Right)
            {
                decls.push(AdjunctionDecl::opaque_right(t.clone()));
            }
            decls.push(AdjunctionDecl::opaque_left(t));
        }
    }

    let object_level = if flags.contains("modular-ss") || flags.contains("modular-nonss") {
        4
    } else if flags.contains("cp-rigid") {
        3
    } else {
        2
    };
    declare_object_dual_data(&mut sig, &mut decls, "V", object_level)?;

    let mut p = Presentation::new(sig);
    p.adjunctions = decls;
    Ok(p)
}

fn braided_functor(flags: &BTreeSet<String>) -> Result<Presentation, TermError> {
    let mut sig = Signature::new(4);
    sig.add_unit_object("Vectk")?;
    sig.add_object("V")?;
    sig.add_object("W")?;
    let v = Term::gen("V");
    let w = Term::gen("W");

    sig.add_cell_attrs("AF", v.clone(), w.clone(), attr("induced=F"))?;
    sig.add_cell_attrs("AbarF", w.clone(), v.clone(), attr("induced=bar(F)"))?;
    let af = Term::gen("AF");
    let abarf = Term::gen("AbarF");
    let abar_a = Term::comp(0, abarf.clone(), af.clone());
    let a_abar = Term::comp(0, af.clone(), abarf.clone());

    sig.add_cell_attrs("MF", Term::id(v.clone()), abar_a.clone(), attr("induced=F"))?;
    sig.add_cell_attrs("MTvbal", a_abar.clone(), Term::id(w.clone()), attr("induced=Tvbal"))?;
    sig.add_cell_attrs("MbarF", abar_a.clone(), Term::id(v.clone()), attr("induced=bar(F)"))?;
    sig.add_cell_attrs("MbarTvbal", Term::id(w.clone()), a_abar.clone(), attr("induced=bar(Tvbal)"))?;
    let mf = Term::gen("MF");
    let mtv = Term::gen("MTvbal");
    let mbarf = Term::gen("MbarF");
    let mbartv = Term::gen("MbarTvbal");

    sig.add_cell_attrs(
        "F_u",
        Term::id(Term::id(v.clone())),
        Term::comp(1, mbarf.clone(), mf.clone()),
        attr("induced=F"),
    )?;
    sig.add_cell_attrs(
        "Tvbal_c",
        Term::comp(1, mf.clone(), mbarf.clone()),
        Term::id(abar_a.clone()),
        attr("induced=Tvbal"),
    )?;
    sig.add_cell_attrs(
        "Tvbal_u",
        Term::id(a_abar.clone()),
        Term::comp(1, mbartv.clone(), mtv.clone()),
        attr("induced=Tvbal"),
    )?;
    sig.add_cell_attrs(
        "T2bal_c",
        Term::comp(1, mtv.clone(), mbartv.clone()),
        Term::id(Term::id(w.clone())),
        attr("induced=T2bal"),
    )?;

    let mut decls = vec![
        AdjunctionDecl {
            left: af.clone(),
            right: abarf.clone(),
            unit: mf.clone(),
            counit: mtv.clone(),
            side_declared: Side::Right,
            doc: None,
        },
        AdjunctionDecl {
            left: abarf.clone(),
            right: af.clone(),
            unit: mbartv.clone(),
            counit: mbarf.clone(),
            side_declared: Side::Left,
            doc: None,
        },
        AdjunctionDecl {
            left: mf.clone(),
            right: mbarf.clone(),
            unit: Term::gen("F_u"),
            counit: Term::gen("Tvbal_c"),
            side_declared: Side::Right,
            doc: None,
        },
        AdjunctionDecl {
            left: mtv.clone(),
            right: mbartv.clone(),
            unit: Term::gen("Tvbal_u"),
            counit: Term::gen("T2bal_c"),
            side_declared: Side::Right,
            doc: None,
        },
    ];

    if flags.contains("cp-rigid") {
        for w in ["Tvbal_c", "Tvbal_u", "T2bal_c"] {
            decls.push(AdjunctionDecl::opaque_right(Term::gen(w)));
        }
    }
    if flags.contains("preserves-cp") {
        decls.push(AdjunctionDecl::opaque_right(Term::gen("F_u")));
    }

    let object_level = if flags.contains("cp-rigid") { 3 } else { 2 };
    declare_object_dual_data(&mut sig, &mut decls, "V", object_level)?;
    declare_object_dual_data(&mut sig, &mut decls, "W", object_level)?;

    let mut p = Presentation::new(sig);
    p.adjunctions = decls;
    Ok(p)
}

fn bimodule_rewrite(flags: &BTreeSet<String>) -> Result<Presentation, TermError> {
    let mut sig = Signature::new(4);
    sig.add_unit_object("Vectk")?;
    sig.add_object("A")?;
    sig.add_object("B")?;
    let a = Term::gen("A");
    let b = Term::gen("B");
    sig.add_cell("C", a.clone(), b.clone())?;
    sig.add_cell("D", a.clone(), b.clone())?;
    let c = Term::gen("C");
    let d = Term::gen("D");

    sig.add_cell_attrs("MF", c.clone(), d.clone(), attr("induced=F"))?;
    sig.add_cell_attrs("MbarF", d.clone(), c.clone(), attr("induced=bar(F)"))?;
    let mf = Term::gen("MF");
    let mbarf = Term::gen("MbarF");

    sig.add_cell_attrs(
        "F_u",
        Term::id(c.clone()),
        Term::comp(1, mbarf.clone(), mf.clone()),
        attr("induced=F"),
    )?;
    sig.add_cell_attrs(
        "Tbal_c",
        Term::comp(1, mf.clone(), mbarf.clone()),
        Term::id(d.clone()),
        attr("induced=Tbal"),
    )?;

    let mut decls = vec![AdjunctionDecl {
        left: mf.clone(),
        right: mbarf.clone(),
        unit: Term::gen("F_u"),
        counit: Term::gen("Tbal_c"),
        side_declared: Side::Right,
        doc: None,
    }];

    if flags.contains("cp-rigid") {
        sig.add_cell_attrs(
            "FR_c",
            Term::comp(1, mbarf.clone(), mf.clone()),
            Term::id(c.clone()),
            attr("induced=FR"),
        )?;
        sig.add_cell_attrs(
            "TbalR_u",
            Term::id(d.clone()),
            Term::comp(1, mf.clone(), mbarf.clone()),
            attr("induced=TbalR"),
        )?;
        decls.push(AdjunctionDecl {
            left: mbarf.clone(),
            right: mf.clone(),
            unit: Term::gen("TbalR_u"),
            counit: Term::gen("FR_c"),
            side_declared: Side::Left,
            doc: None,
        });
    }

    let mut p = Presentation::new(sig);
    p.adjunctions = decls;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adjunction::{adjunctibility_tree, try_adjoint, AdjointResult};
    use crate::presentation::Side;

    #[test]
    fn black_tree_without_flags() {
        let p = build_preset(&PresetSpec::new(PresetName::UnitInclusion, ["enough-cp"])).unwrap();
        let t = adjunctibility_tree(&p, &Term::gen("Aeta"), 2, Side::Right).unwrap();
        assert!(t.satisfied, "twice right adjunctible: {:?}", t.missing());
        let t = adjunctibility_tree(&p, &Term::gen("Aeta"), 2, Side::Left).unwrap();
        assert!(t.satisfied, "twice left adjunctible: {:?}", t.missing());
        // Strict two-sided 2-adjunctibility needs the gray data.
        let t = adjunctibility_tree(&p, &Term::gen("Aeta"), 2, Side::Both).unwrap();
        assert!(!t.satisfied);
    }

    #[test]
    fn gray_tree_under_cp_rigid() {
        let p = build_preset(&PresetSpec::new(PresetName::UnitInclusion, ["cp-rigid"])).unwrap();
        let t = adjunctibility_tree(&p, &Term::gen("Aeta"), 2, Side::Both).unwrap();
        assert!(t.satisfied, "missing: {:?}", t.missing());
    }

    #[test]
    fn unit_adjoint_missing_without_unit_cp() {
        let p = build_preset(&PresetSpec::new(
            PresetName::UnitInclusion,
            ["modular-nonss"],
        ))
        .unwrap();
        let r = try_adjoint(&p, &Term::gen("eta_u"), Side::Right).unwrap();
        assert!(matches!(r, AdjointResult::Blocked(_, _)));
    }

    #[test]
    fn flags_validate() {
        let spec = PresetSpec::new(PresetName::UnitInclusion, ["modular-nonss", "unit-cp"]);
        assert!(build_preset(&spec).is_err());
        let spec = PresetSpec::new(PresetName::BraidedFunctor, ["fusion"]);
        assert!(build_preset(&spec).is_err());
    }
}
