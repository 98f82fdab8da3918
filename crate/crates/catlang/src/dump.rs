//! Turn live engine structures back into declarations, so any category can
//! be written out as source text and read back in.

use cathedra::cat::FiniteCategory;

use crate::ast::{ArrowDecl, CategoryDecl, ComposeDecl, Name};
use crate::token::Span;

/// Render a category as a declaration.
///
/// Identities are renamed to the canonical `1_` + object form the grammar
/// implies, and any label collisions among the remaining morphisms are
/// broken with a `#index` suffix. Labels are not part of a category's
/// identity (`table_eq` ignores them), so a dump-and-reparse round trip
/// yields an equal table.
pub fn dump_category(c: &FiniteCategory) -> CategoryDecl {
    let objects: Vec<Name> = c.objects().map(|o| Name::new(c.obj_label(o))).collect();
    // Choose a unique label per morphism: identities get the canonical
    // name; others keep their label unless it is taken.
    let mut labels: Vec<String> = Vec::with_capacity(c.n_morphisms());
    for m in c.morphisms() {
        if c.id(c.dom(m)) == m {
            labels.push(format!("1_{}", c.obj_label(c.dom(m))));
        } else {
            labels.push(c.mor_label(m).to_string());
        }
    }
    for i in 0..labels.len() {
        if labels[..i].contains(&labels[i]) {
            labels[i] = format!("{}#{}", labels[i], i);
        }
    }
    let arrows: Vec<ArrowDecl> = c
        .morphisms()
        .filter(|&m| c.id(c.dom(m)) != m)
        .map(|m| ArrowDecl {
            name: Name::new(&labels[m.0]),
            dom: Name::new(c.obj_label(c.dom(m))),
            cod: Name::new(c.obj_label(c.cod(m))),
            span: Span::default(),
        })
        .collect();
    let mut composes = Vec::new();
    for g in c.morphisms() {
        if c.id(c.dom(g)) == g {
            continue;
        }
        for f in c.morphisms() {
            if c.id(c.dom(f)) == f || c.cod(f) != c.dom(g) {
                continue;
            }
            let h = c
                .compose(g, f)
                .expect("composable pair in a validated category");
            composes.push(ComposeDecl {
                second: Name::new(&labels[g.0]),
                first: Name::new(&labels[f.0]),
                result: Name::new(&labels[h.0]),
                span: Span::default(),
            });
        }
    }
    CategoryDecl {
        name: Name::new(c.name.as_str()),
        objects,
        arrows,
        composes,
        span: Span::default(),
    }
}
