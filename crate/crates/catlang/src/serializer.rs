//! Canonical text form: two-space indent, one clause per line, names
//! quoted only when they are not bare identifiers or numbers. Parsing
//! the output reproduces the document structurally, and serializing is
//! idempotent after one pass.

use std::fmt::Write as _;

use crate::ast::*;

fn bare_ok(text: &str) -> bool {
    // Words over [A-Za-z0-9_] lex back as a single name token, whether
    // digit-led (`12`, `1_a`) or letter-led; anything else needs quotes.
    !text.is_empty() && text.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn emit_name(out: &mut String, n: &Name) {
    if bare_ok(&n.text) {
        out.push_str(&n.text);
    } else {
        out.push('"');
        for c in n.text.chars() {
            match c {
                '"' => out.push_str("\\\""),
                '\\' => out.push_str("\\\\"),
                other => out.push(other),
            }
        }
        out.push('"');
    }
}

fn emit_list(out: &mut String, names: &[Name]) {
    for (i, n) in names.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        emit_name(out, n);
    }
}

fn emit_composes(out: &mut String, composes: &[ComposeDecl]) {
    for c in composes {
        out.push_str("  compose ");
        emit_name(out, &c.second);
        out.push_str(" . ");
        emit_name(out, &c.first);
        out.push_str(" = ");
        emit_name(out, &c.result);
        out.push_str(";\n");
    }
}

fn emit_arrows(out: &mut String, arrows: &[ArrowDecl]) {
    for a in arrows {
        out.push_str("  arrow ");
        emit_name(out, &a.name);
        out.push_str(": ");
        emit_name(out, &a.dom);
        out.push_str(" -> ");
        emit_name(out, &a.cod);
        out.push_str(";\n");
    }
}

fn emit_path(out: &mut String, p: &PathDecl) {
    match p {
        PathDecl::Arrows { names, .. } => {
            for (i, n) in names.iter().enumerate() {
                if i > 0 {
                    out.push_str(" . ");
                }
                emit_name(out, n);
            }
        }
        PathDecl::IdentityAt { object, .. } => {
            out.push_str("id ");
            emit_name(out, object);
        }
    }
}

pub fn serialize(doc: &SourceDocument) -> String {
    let mut out = String::new();
    for (i, decl) in doc.decls.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match decl {
            Decl::Category(c) => {
                out.push_str("category ");
                emit_name(&mut out, &c.name);
                out.push_str(" {\n  objects ");
                emit_list(&mut out, &c.objects);
                out.push_str(";\n");
                emit_arrows(&mut out, &c.arrows);
                emit_composes(&mut out, &c.composes);
                out.push_str("}\n");
            }
            Decl::Monoid(m) => {
                out.push_str("monoid ");
                emit_name(&mut out, &m.name);
                out.push_str(" {\n  unit ");
                emit_name(&mut out, &m.unit);
                out.push_str(";\n  elements ");
                emit_list(&mut out, &m.elements);
                out.push_str(";\n");
                emit_composes(&mut out, &m.composes);
                out.push_str("}\n");
            }
            Decl::Poset(p) => {
                out.push_str("poset ");
                emit_name(&mut out, &p.name);
                out.push_str(" {\n  elements ");
                emit_list(&mut out, &p.elements);
                out.push_str(";\n  order ");
                match &p.order {
                    OrderSpec::Divides => out.push_str("divides"),
                    OrderSpec::Pairs(pairs) => {
                        for (i, (lo, hi)) in pairs.iter().enumerate() {
                            if i > 0 {
                                out.push_str(", ");
                            }
                            out.push('(');
                            emit_name(&mut out, lo);
                            out.push_str(", ");
                            emit_name(&mut out, hi);
                            out.push(')');
                        }
                    }
                }
                out.push_str(";\n}\n");
            }
            Decl::Graph(g) => {
                out.push_str("graph ");
                emit_name(&mut out, &g.name);
                out.push_str(" {\n  objects ");
                emit_list(&mut out, &g.objects);
                out.push_str(";\n");
                emit_arrows(&mut out, &g.arrows);
                for r in &g.relations {
                    out.push_str("  relation ");
                    emit_path(&mut out, &r.lhs);
                    out.push_str(" = ");
                    emit_path(&mut out, &r.rhs);
                    out.push_str(";\n");
                }
                out.push_str("}\n");
            }
            Decl::Functor(f) => {
                out.push_str("functor ");
                emit_name(&mut out, &f.name);
                out.push_str(": ");
                emit_name(&mut out, &f.source);
                out.push_str(" -> ");
                emit_name(&mut out, &f.target);
                out.push_str(" {\n");
                for (lhs, rhs) in &f.clauses {
                    out.push_str("  on ");
                    emit_name(&mut out, lhs);
                    out.push_str(" = ");
                    emit_name(&mut out, rhs);
                    out.push_str(";\n");
                }
                out.push_str("}\n");
            }
            Decl::Nat(t) => {
                out.push_str("nat ");
                emit_name(&mut out, &t.name);
                out.push_str(": ");
                emit_name(&mut out, &t.source);
                out.push_str(" => ");
                emit_name(&mut out, &t.target);
                out.push_str(" {\n");
                for (obj, comp) in &t.components {
                    out.push_str("  at ");
                    emit_name(&mut out, obj);
                    out.push_str(" = ");
                    emit_name(&mut out, comp);
                    out.push_str(";\n");
                }
                out.push_str("}\n");
            }
            Decl::Presheaf(x) => {
                out.push_str("presheaf ");
                emit_name(&mut out, &x.name);
                out.push_str(" on ");
                emit_name(&mut out, &x.base);
                out.push_str(" {\n");
                for (obj, atoms) in &x.values {
                    out.push_str("  at ");
                    emit_name(&mut out, obj);
                    out.push_str(" = { ");
                    emit_list(&mut out, atoms);
                    if atoms.is_empty() {
                        out.pop();
                    }
                    out.push_str(" };\n");
                }
                for v in &x.actions {
                    out.push_str("  via ");
                    emit_name(&mut out, &v.arrow);
                    out.push_str(": ");
                    for (i, (from, to)) in v.maps.iter().enumerate() {
                        if i > 0 {
                            out.push_str(", ");
                        }
                        emit_name(&mut out, from);
                        out.push_str(" -> ");
                        emit_name(&mut out, to);
                    }
                    out.push_str(";\n");
                }
                out.push_str("}\n");
            }
            Decl::Task(t) => {
                let _ = write!(out, "task {} of ", t.kind.keyword());
                emit_name(&mut out, &t.target);
                if let Some(ambient) = &t.ambient {
                    out.push_str(" in ");
                    emit_name(&mut out, ambient);
                }
                out.push_str(";\n");
            }
        }
    }
    out
}
