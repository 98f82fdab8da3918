//! End-to-end tests for the text language: lexing, parsing, printing,
//! elaboration into live structures, and the dump-and-reload round trip.

use std::sync::Arc;

use cathedra::cat::comma_category;
use cathedra::corpus;
use cathedra::functor::Functor;
use cathedra::Caps;
use catlang::ast::Decl;
use catlang::{dump_category, elaborate, load, parse, serialize, CatlangError, TaskKind, WorkRequest};

fn caps() -> Caps {
    Caps::default()
}

// --- the documented example forms -------------------------------------

#[test]
fn two_object_category_with_one_arrow_has_three_morphisms() {
    // Note the omitted semicolon before the closing brace.
    let ws = load("category Two { objects a, b; arrow f: a -> b }", &caps()).unwrap();
    let c = ws.category("Two").unwrap();
    assert_eq!(c.n_objects(), 2);
    assert_eq!(c.n_morphisms(), 3);
    assert!(c.table_eq(&corpus::two()));
}

#[test]
fn divisor_poset_of_twelve_has_eighteen_morphisms() {
    let ws = load(
        "poset Div12 { elements 1, 2, 3, 4, 6, 12; order divides }",
        &caps(),
    )
    .unwrap();
    let c = ws.category("Div12").unwrap();
    assert_eq!(c.n_objects(), 6);
    assert_eq!(c.n_morphisms(), 18);
    assert!(c.table_eq(&corpus::div_poset(12)));
}

#[test]
fn unresolved_codomain_is_reported_at_its_source_position() {
    let text = "category Broken { objects a, b; arrow f: a -> c; }";
    let err = load(text, &caps()).unwrap_err();
    match err {
        CatlangError::UnresolvedReference {
            line,
            col,
            kind,
            name,
        } => {
            assert_eq!(kind, "object");
            assert_eq!(name, "c");
            assert_eq!(line, 1);
            // Columns are 1-based; the bad name is the final `c`.
            assert_eq!(col as usize, text.rfind("c;").unwrap() + 1);
        }
        other => panic!("expected an unresolved reference, got {other}"),
    }
}

#[test]
fn missing_object_clause_in_a_functor_is_an_arity_error() {
    let text = "category One { objects x }\n\
                category Two { objects a, b; arrow f: a -> b }\n\
                functor P : One -> Two { }";
    let err = load(text, &caps()).unwrap_err();
    match err {
        CatlangError::Arity { message, .. } => {
            assert!(
                message.contains("functor object map missing"),
                "unexpected message: {message}"
            );
        }
        other => panic!("expected an arity error, got {other}"),
    }
}

// --- parsing and printing ---------------------------------------------

#[test]
fn empty_and_comment_only_documents_parse_to_nothing() {
    assert!(parse("").unwrap().decls.is_empty());
    assert!(parse("-- a comment\n  -- another\n").unwrap().decls.is_empty());
}

#[test]
fn every_declaration_form_survives_a_print_and_reparse_round_trip() {
    let text = r#"
-- every declaration form in one document
category Two { objects a, b; arrow f: a -> b; }

monoid C2 { unit e; elements e, s; compose s . s = e; }

poset Div6 { elements 1, 2, 3, 6; order divides; }

poset V { elements x, y, z; order (x, y), (y, z); }

graph Z3 { objects w; arrow g: w -> w; relation g . g . g = id w; }

functor P : Two -> Two { on a = a; on b = b; on f = f; }

nat t : P => P { at a = 1_a; at b = 1_b; }

presheaf X on Two {
  at a = { p, q };
  at b = { r };
  at "odd name" = { };
  via f : r -> p;
}

category "Strange One" { objects "left part", 17; arrow "go!": "left part" -> 17; }

task limit of P in Two;
task colimit P;
task left-adjoint of P;
task yoneda-check X;
task density of X;
task classifier Two;
"#;
    // The presheaf names an object that is not in Two; that is an
    // elaboration concern, not a parsing one, so the round trip still
    // exercises it.
    let d1 = parse(text).unwrap();
    assert_eq!(d1.decls.len(), 15);
    let s1 = serialize(&d1);
    let d2 = parse(&s1).unwrap();
    assert_eq!(d1.strip_spans(), d2.strip_spans());
    // Printing is idempotent on its own output.
    assert_eq!(s1, serialize(&d2));
}

#[test]
fn hyphenated_task_kinds_parse() {
    let doc = parse("task left-adjoint of G;\ntask yoneda-check X;").unwrap();
    let kinds: Vec<TaskKind> = doc
        .decls
        .iter()
        .map(|d| match d {
            Decl::Task(t) => t.kind,
            _ => panic!("expected tasks"),
        })
        .collect();
    assert_eq!(kinds, vec![TaskKind::LeftAdjoint, TaskKind::YonedaCheck]);
}

#[test]
fn unterminated_string_is_a_lex_error() {
    let err = parse("category \"Broken { objects a; }").unwrap_err();
    assert!(matches!(err, CatlangError::Lex { .. }), "got {err}");
}

#[test]
fn a_stray_token_reports_what_was_expected() {
    let err = parse("category { objects a; }").unwrap_err();
    match err {
        CatlangError::Parse {
            found, expected, ..
        } => {
            assert_eq!(found, "`{`");
            assert!(expected.iter().any(|e| e.contains("name")), "{expected:?}");
        }
        other => panic!("expected a parse error, got {other}"),
    }
}

// --- elaboration of each declaration form ------------------------------

#[test]
fn monoid_declaration_matches_the_cyclic_group_of_order_two() {
    let ws = load(
        "monoid C2 { unit e; elements e, s; compose s . s = e; }",
        &caps(),
    )
    .unwrap();
    assert!(ws.category("C2").unwrap().table_eq(&corpus::z_mod(2)));
}

#[test]
fn monoid_with_an_undetermined_product_is_an_arity_error() {
    let err = load("monoid Bad { unit e; elements e, s; }", &caps()).unwrap_err();
    match err {
        CatlangError::Arity { message, .. } => {
            assert!(message.contains("missing product"), "{message}");
        }
        other => panic!("expected an arity error, got {other}"),
    }
}

#[test]
fn category_with_an_undetermined_composite_is_an_arity_error() {
    let err = load("category Bad { objects x; arrow s: x -> x; }", &caps()).unwrap_err();
    match err {
        CatlangError::Arity { message, .. } => {
            assert!(message.contains("missing composite `s . s`"), "{message}");
        }
        other => panic!("expected an arity error, got {other}"),
    }
}

#[test]
fn conflicting_composites_are_rejected() {
    let text = "category Bad { objects x; arrow s: x -> x; \
                compose s . s = s; compose s . s = 1_x; }";
    let err = load(text, &caps()).unwrap_err();
    assert!(
        matches!(&err, CatlangError::Semantic { message, .. } if message.contains("conflicting")),
        "got {err}"
    );
}

#[test]
fn explicit_order_pairs_are_closed_transitively() {
    let ws = load(
        "poset V { elements x, y, z; order (x, y), (y, z); }",
        &caps(),
    )
    .unwrap();
    let c = ws.category("V").unwrap();
    // x <= z comes from closure: 3 identities + 3 strict arrows.
    assert_eq!(c.n_morphisms(), 6);
    assert!(c.table_eq(&corpus::chain(3)));
}

#[test]
fn graph_presentation_of_a_cyclic_relation_matches_the_cyclic_group() {
    let ws = load(
        "graph Z3 { objects w; arrow g: w -> w; relation g . g . g = id w; }",
        &caps(),
    )
    .unwrap();
    assert!(ws.category("Z3").unwrap().table_eq(&corpus::z_mod(3)));
}

#[test]
fn graph_relation_with_nonparallel_sides_is_rejected() {
    let text = "graph Bad { objects u, v; arrow g: u -> v; relation g = id u; }";
    let err = load(text, &caps()).unwrap_err();
    assert!(
        matches!(&err, CatlangError::Semantic { message, .. } if message.contains("parallel")),
        "got {err}"
    );
}

#[test]
fn functor_arrow_images_are_derived_when_forced() {
    let text = "category Two { objects a, b; arrow f: a -> b }\n\
                functor E : Two -> Two { on a = a; on b = b; }";
    let ws = load(text, &caps()).unwrap();
    let e = ws.functor("E").unwrap();
    let two = ws.category("Two").unwrap();
    // The only arrow a -> b is f, so `on f = f` is inferred.
    let f = two.morphisms().find(|&m| two.mor_label(m) == "f").unwrap();
    assert_eq!(e.on_mor(f), f);
}

#[test]
fn functor_with_an_ambiguous_arrow_image_asks_for_a_clause() {
    let text = "category P2 { objects u, v; arrow g: u -> v; arrow h: u -> v; \
                compose g . 1_u = g; }\n\
                functor F : P2 -> P2 { on u = u; on v = v; }";
    let err = load(text, &caps()).unwrap_err();
    match err {
        CatlangError::Arity { message, .. } => {
            assert!(message.contains("ambiguous"), "{message}");
        }
        other => panic!("expected an arity error, got {other}"),
    }
}

#[test]
fn nat_components_can_be_given_or_derived() {
    let text = "category Two { objects a, b; arrow f: a -> b }\n\
                category One { objects x }\n\
                functor Pa : One -> Two { on x = a; }\n\
                functor Pb : One -> Two { on x = b; }\n\
                nat t : Pa => Pb { at x = f; }\n\
                nat u : Pa => Pb { }";
    let ws = load(text, &caps()).unwrap();
    let two = ws.category("Two").unwrap();
    let f = two.morphisms().find(|&m| two.mor_label(m) == "f").unwrap();
    assert_eq!(ws.nat("t").unwrap().at(cathedra::cat::Obj(0)), f);
    // hom(a, b) = {f} makes the component derivable.
    assert_eq!(ws.nat("u").unwrap().at(cathedra::cat::Obj(0)), f);
}

#[test]
fn presheaf_values_actions_and_defaults_elaborate() {
    let text = "category Two { objects a, b; arrow f: a -> b }\n\
                presheaf X on Two {\n\
                  at a = { p, q };\n\
                  at b = { r };\n\
                  via f : r -> p;\n\
                }\n\
                presheaf Y on Two { at a = { s }; at b = { u, v }; }";
    let ws = load(text, &caps()).unwrap();
    let two = ws.category("Two").unwrap();
    let f = two.morphisms().find(|&m| two.mor_label(m) == "f").unwrap();

    let x = ws.presheaf("X").unwrap();
    assert_eq!(x.value(cathedra::cat::Obj(0)).len(), 2);
    assert_eq!(x.value(cathedra::cat::Obj(1)).len(), 1);
    // The action against f carries X(b) into X(a): r goes to p.
    assert_eq!(x.action(f).map, vec![0]);

    // Y leaves the action of f unstated; it lands in the singleton
    // Y(a), so the constant map is filled in.
    let y = ws.presheaf("Y").unwrap();
    assert_eq!(y.action(f).map, vec![0, 0]);

    // Z leaves the value at `a` unstated, making it empty; no function
    // from the two-element Z(b) into it exists, so elaboration fails.
    let bad = "category Two { objects a, b; arrow f: a -> b }\n\
               presheaf Z on Two { at b = { s, t }; }";
    assert!(load(bad, &caps()).is_err());
}

#[test]
fn duplicate_declaration_names_clash() {
    let err = load(
        "category A { objects x }\ncategory A { objects y }",
        &caps(),
    )
    .unwrap_err();
    assert!(matches!(err, CatlangError::NameClash { .. }), "got {err}");

    let err = load("category B { objects x, x }", &caps()).unwrap_err();
    assert!(matches!(err, CatlangError::NameClash { .. }), "got {err}");
}

// --- tasks --------------------------------------------------------------

#[test]
fn tasks_resolve_against_earlier_declarations() {
    let text = "poset Div12 { elements 1, 2, 3, 4, 6, 12; order divides }\n\
                category Pair { objects l, r }\n\
                functor D : Pair -> Div12 { on l = 4; on r = 6; }\n\
                presheaf X on Pair { at l = { p }; at r = { }; }\n\
                task limit of D in Div12;\n\
                task colimit of D;\n\
                task left-adjoint of D;\n\
                task yoneda-check X;\n\
                task density of X;\n\
                task classifier Pair;";
    let ws = load(text, &caps()).unwrap();
    assert_eq!(ws.tasks.len(), 6);
    assert_eq!(ws.tasks[0].id, "t1: limit of D");
    assert!(matches!(ws.tasks[0].request, WorkRequest::Limit(_)));
    assert!(matches!(ws.tasks[1].request, WorkRequest::Colimit(_)));
    assert!(matches!(ws.tasks[2].request, WorkRequest::LeftAdjoint(_)));
    assert!(matches!(ws.tasks[3].request, WorkRequest::YonedaCheck(_)));
    assert!(matches!(ws.tasks[4].request, WorkRequest::Density(_)));
    assert!(matches!(ws.tasks[5].request, WorkRequest::Classifier(_)));
    assert_eq!(ws.tasks[5].id, "t6: classifier of Pair");
}

#[test]
fn task_ambient_must_match_the_functor_target() {
    let text = "poset Div12 { elements 1, 2, 3, 4, 6, 12; order divides }\n\
                category Pair { objects l, r }\n\
                functor D : Pair -> Div12 { on l = 4; on r = 6; }\n\
                task limit of D in Pair;";
    let err = load(text, &caps()).unwrap_err();
    assert!(
        matches!(&err, CatlangError::Semantic { message, .. } if message.contains("land")),
        "got {err}"
    );
}

// --- dumping ------------------------------------------------------------

/// Dump, print, reparse, and rebuild a category, then prove the result
/// is the same category: the dump keeps objects in order and lists
/// non-identity morphisms in order while the grammar puts identities
/// first, so the expected bijection is known and `Functor::new` checks
/// it respects composition.
fn assert_reload_is_isomorphic(original: &Arc<cathedra::cat::FiniteCategory>) {
    use cathedra::cat::{Mor, Obj};

    let doc = catlang::ast::SourceDocument {
        decls: vec![Decl::Category(dump_category(original))],
    };
    let text = serialize(&doc);
    let ws = elaborate(&parse(&text).unwrap(), &caps())
        .unwrap_or_else(|e| panic!("reloading {}: {e}", original.name));
    let reloaded = ws
        .category(&original.name)
        .unwrap_or_else(|| panic!("{} lost its name", original.name))
        .clone();
    assert_eq!(original.n_objects(), reloaded.n_objects());
    assert_eq!(original.n_morphisms(), reloaded.n_morphisms());

    let object_map: Vec<Obj> = original.objects().collect();
    let mut next = original.n_objects();
    let mut morphism_map = Vec::with_capacity(original.n_morphisms());
    for m in original.morphisms() {
        if original.id(original.dom(m)) == m {
            morphism_map.push(Mor(original.dom(m).0));
        } else {
            morphism_map.push(Mor(next));
            next += 1;
        }
    }
    assert_eq!(next, reloaded.n_morphisms());
    // The maps are bijections, so validity makes them an isomorphism.
    Functor::new(
        "reload",
        original.clone(),
        reloaded,
        object_map,
        morphism_map,
    )
    .unwrap_or_else(|e| panic!("reload of {} is not functorial: {e}", original.name));
}

#[test]
fn a_dumped_comma_category_reloads_as_the_same_category() {
    // The arrow category of the two-object arrow category: labels carry
    // parentheses and commas, so the printer must quote them.
    let two = corpus::two();
    let idl = Functor::identity(&two);
    let idr = Functor::identity(&two);
    let comma = comma_category(&idl, &idr, &caps()).unwrap();
    assert_eq!(comma.category.n_objects(), 3);
    assert_reload_is_isomorphic(&comma.category);
}

#[test]
fn every_corpus_category_survives_dump_and_reload() {
    for name in corpus::names() {
        let original = corpus::by_name(name).unwrap();
        assert_reload_is_isomorphic(&original);
    }
}
