//! LaTeX proof-tree export in bussproofs style.

use std::fmt::Write;

use crate::calculus::{Derivation, RuleTag};
use crate::sequent::Sequent;
use crate::syntax::{Formula, Term};

fn latex_term(t: &Term, out: &mut String) {
    match t {
        Term::Var(x) => {
            let _ = write!(out, "{x}");
        }
        Term::Param(a) => {
            let _ = write!(out, "\\hat{{\\mathit{{{a}}}}}");
        }
    }
}

// precedence levels as in the text syntax
fn latex_formula(f: &Formula, prec: u8, out: &mut String) {
    match f {
        Formula::Atom(p, args) => {
            let _ = write!(out, "\\mathit{{{p}}}");
            if !args.is_empty() {
                out.push('(');
                for (i, t) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    latex_term(t, out);
                }
                out.push(')');
            }
        }
        Formula::Bottom => out.push_str("\\bot"),
        Formula::Implies(a, b) => {
            if prec > 0 {
                out.push('(');
            }
            latex_formula(a, 1, out);
            out.push_str(" \\supset ");
            latex_formula(b, 0, out);
            if prec > 0 {
                out.push(')');
            }
        }
        Formula::Or(a, b) => {
            if prec > 1 {
                out.push('(');
            }
            latex_formula(a, 1, out);
            out.push_str(" \\lor ");
            latex_formula(b, 2, out);
            if prec > 1 {
                out.push(')');
            }
        }
        Formula::And(a, b) => {
            if prec > 2 {
                out.push('(');
            }
            latex_formula(a, 2, out);
            out.push_str(" \\land ");
            latex_formula(b, 3, out);
            if prec > 2 {
                out.push(')');
            }
        }
        Formula::Forall(x, a) => {
            if prec > 0 {
                out.push('(');
            }
            let _ = write!(out, "\\forall {x}\\, ");
            latex_formula(a, 0, out);
            if prec > 0 {
                out.push(')');
            }
        }
        Formula::Exists(x, a) => {
            if prec > 0 {
                out.push('(');
            }
            let _ = write!(out, "\\exists {x}\\, ");
            latex_formula(a, 0, out);
            if prec > 0 {
                out.push(')');
            }
        }
    }
}

pub fn latex_sequent(s: &Sequent) -> String {
    let mut out = String::new();
    for (i, comp) in s.components().iter().enumerate() {
        if i > 0 {
            out.push_str(" \\sslash ");
        }
        let mut side = |fs: Vec<&Formula>| {
            for (j, f) in fs.iter().enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                latex_formula(f, 0, &mut out);
            }
        };
        side(comp.ant.iter().collect());
        out.push_str(" \\vdash ");
        let mut side = |fs: Vec<&Formula>| {
            for (j, f) in fs.iter().enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                latex_formula(f, 0, &mut out);
            }
        };
        side(comp.cons.iter().collect());
    }
    out
}

fn rule_label(tag: RuleTag) -> &'static str {
    use RuleTag::*;
    match tag {
        Id1 => "(id_1)",
        Id2 => "(id_2)",
        BotL => "(\\bot_l)",
        AndL => "(\\land_l)",
        AndR => "(\\land_r)",
        OrL => "(\\lor_l)",
        OrR => "(\\lor_r)",
        ImpL => "(\\supset_l)",
        ImpR1 => "(\\supset_{r1})",
        ImpR2 => "(\\supset_{r2})",
        Lift => "(lift)",
        ForallL => "(\\forall_l)",
        ForallR1 => "(\\forall_{r1})",
        ForallR2 => "(\\forall_{r2})",
        ExistsL => "(\\exists_l)",
        ExistsR => "(\\exists_r)",
        Iw => "(iw)",
        IcL => "(ic_l)",
        IcR => "(ic_r)",
        Ew => "(ew)",
        Sub => "(sub)",
        Lwr => "(lwr)",
        BotR => "(\\bot_r)",
        Mrg => "(mrg)",
        Cut => "(cut)",
    }
}

fn emit_node(d: &Derivation, out: &mut String) {
    for p in &d.premises {
        emit_node(p, out);
    }
    if d.premises.is_empty() {
        out.push_str("\\AxiomC{}\n");
    }
    let _ = writeln!(out, "\\RightLabel{{$ {} $}}", rule_label(d.rule.tag()));
    let inf = match d.premises.len() {
        0 | 1 => "\\UnaryInfC",
        2 => "\\BinaryInfC",
        _ => "\\TrinaryInfC",
    };
    let _ = writeln!(out, "{}{{${}$}}", inf, latex_sequent(&d.conclusion));
}

/// A complete, compilable bussproofs document for one derivation.
pub fn latex_document(d: &Derivation) -> String {
    let mut body = String::new();
    emit_node(d, &mut body);
    format!(
        "\\documentclass{{article}}\n\
         \\usepackage{{amsmath,amssymb}}\n\
         \\usepackage{{bussproofs}}\n\
         \\usepackage[margin=1cm,landscape]{{geometry}}\n\
         \\newcommand{{\\sslash}}{{\\mathbin{{/\\mkern-6.5mu/}}}}\n\
         \\begin{{document}}\n\
         \\begin{{prooftree}}\n\
         {body}\\end{{prooftree}}\n\
         \\end{{document}}\n"
    )
}
