//! Semantic pass: turn a parsed document into live engine structures.
//! Declarations are processed in order, and references resolve only to
//! declarations already built. All validation errors are mapped back to
//! the source span of the offending declaration or clause.

use std::collections::BTreeMap;
use std::sync::Arc;

use cathedra::cat::{
    from_monoid, from_poset, from_presentation, FiniteCategory, Mor, MorData, Obj, PathExpr,
    Presentation,
};
use cathedra::finset::{Atom, FinFunction, FinSet};
use cathedra::functor::{Functor, NatTransformation};
use cathedra::presheaf::Presheaf;
use cathedra::Caps;

use crate::ast::*;
use crate::error::CatlangError;
use crate::token::Span;

/// All declarations of a document, elaborated, in declaration order.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub categories: Vec<(String, Arc<FiniteCategory>)>,
    pub functors: Vec<(String, Functor)>,
    pub nats: Vec<(String, NatTransformation)>,
    pub presheaves: Vec<(String, Presheaf)>,
    pub tasks: Vec<WorkTask>,
}

/// One task request, resolved against the declarations before it.
#[derive(Clone, Debug)]
pub struct WorkTask {
    /// Stable identifier: ordinal plus the request text.
    pub id: String,
    pub kind: TaskKind,
    pub request: WorkRequest,
}

#[derive(Clone, Debug)]
pub enum WorkRequest {
    Limit(Functor),
    Colimit(Functor),
    LeftAdjoint(Functor),
    YonedaCheck(Presheaf),
    Density(Presheaf),
    Classifier(Arc<FiniteCategory>),
}

impl Workspace {
    pub fn category(&self, name: &str) -> Option<&Arc<FiniteCategory>> {
        self.categories
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
    }

    pub fn functor(&self, name: &str) -> Option<&Functor> {
        self.functors.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn nat(&self, name: &str) -> Option<&NatTransformation> {
        self.nats.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn presheaf(&self, name: &str) -> Option<&Presheaf> {
        self.presheaves
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, x)| x)
    }
}

pub fn elaborate(doc: &SourceDocument, caps: &Caps) -> Result<Workspace, CatlangError> {
    let mut ws = Workspace::default();
    let mut task_count = 0usize;
    for decl in &doc.decls {
        match decl {
            Decl::Category(d) => {
                let cat = build_category(d)?;
                insert_category(&mut ws, &d.name, cat, caps)?;
            }
            Decl::Monoid(d) => {
                let cat = build_monoid(d)?;
                insert_category(&mut ws, &d.name, cat, caps)?;
            }
            Decl::Poset(d) => {
                let cat = build_poset(d)?;
                insert_category(&mut ws, &d.name, cat, caps)?;
            }
            Decl::Graph(d) => {
                let cat = build_graph(d, caps)?;
                insert_category(&mut ws, &d.name, cat, caps)?;
            }
            Decl::Functor(d) => {
                if ws.functor(&d.name.text).is_some() {
                    return Err(CatlangError::clash(d.name.span, "functor", &d.name.text));
                }
                let f = build_functor(&ws, d)?;
                ws.functors.push((d.name.text.clone(), f));
            }
            Decl::Nat(d) => {
                if ws.nat(&d.name.text).is_some() {
                    return Err(CatlangError::clash(
                        d.name.span,
                        "transformation",
                        &d.name.text,
                    ));
                }
                let t = build_nat(&ws, d)?;
                ws.nats.push((d.name.text.clone(), t));
            }
            Decl::Presheaf(d) => {
                if ws.presheaf(&d.name.text).is_some() {
                    return Err(CatlangError::clash(d.name.span, "presheaf", &d.name.text));
                }
                let x = build_presheaf(&ws, d)?;
                ws.presheaves.push((d.name.text.clone(), x));
            }
            Decl::Task(d) => {
                task_count += 1;
                let request = resolve_task(&ws, d)?;
                ws.tasks.push(WorkTask {
                    id: format!(
                        "t{}: {} of {}",
                        task_count,
                        d.kind.keyword(),
                        d.target.text
                    ),
                    kind: d.kind,
                    request,
                });
            }
        }
    }
    Ok(ws)
}

fn insert_category(
    ws: &mut Workspace,
    name: &Name,
    cat: FiniteCategory,
    caps: &Caps,
) -> Result<(), CatlangError> {
    if ws.category(&name.text).is_some() {
        return Err(CatlangError::clash(name.span, "category", &name.text));
    }
    if cat.n_objects() > caps.max_objects {
        return Err(CatlangError::semantic(
            name.span,
            format!(
                "category `{}` has {} objects, above the cap of {}",
                name.text,
                cat.n_objects(),
                caps.max_objects
            ),
        ));
    }
    if cat.n_morphisms() > caps.max_morphisms {
        return Err(CatlangError::semantic(
            name.span,
            format!(
                "category `{}` has {} morphisms, above the cap of {}",
                name.text,
                cat.n_morphisms(),
                caps.max_morphisms
            ),
        ));
    }
    ws.categories.push((name.text.clone(), Arc::new(cat)));
    Ok(())
}

fn check_unique<'a>(
    names: impl Iterator<Item = &'a Name>,
    kind: &'static str,
) -> Result<(), CatlangError> {
    let mut seen: BTreeMap<&str, ()> = BTreeMap::new();
    for n in names {
        if seen.insert(n.text.as_str(), ()).is_some() {
            return Err(CatlangError::clash(n.span, kind, &n.text));
        }
    }
    Ok(())
}

fn build_category(d: &CategoryDecl) -> Result<FiniteCategory, CatlangError> {
    check_unique(d.objects.iter(), "object")?;
    let objects: Vec<String> = d.objects.iter().map(|o| o.text.clone()).collect();
    let obj_of = |n: &Name| -> Result<Obj, CatlangError> {
        objects
            .iter()
            .position(|t| *t == n.text)
            .map(Obj)
            .ok_or_else(|| CatlangError::unresolved(n.span, "object", &n.text))
    };
    // Morphisms: one identity per object (named `1_` + object), then the
    // declared arrows.
    let n = objects.len();
    let mut data: Vec<MorData> = objects
        .iter()
        .enumerate()
        .map(|(o, label)| MorData {
            dom: Obj(o),
            cod: Obj(o),
            label: format!("1_{label}"),
        })
        .collect();
    for a in &d.arrows {
        let label = a.name.text.clone();
        if data.iter().any(|m| m.label == label) {
            return Err(CatlangError::clash(a.name.span, "morphism", &label));
        }
        data.push(MorData {
            dom: obj_of(&a.dom)?,
            cod: obj_of(&a.cod)?,
            label,
        });
    }
    let mor_of = |nm: &Name| -> Result<Mor, CatlangError> {
        data.iter()
            .position(|m| m.label == nm.text)
            .map(Mor)
            .ok_or_else(|| CatlangError::unresolved(nm.span, "morphism", &nm.text))
    };
    let m = data.len();
    let mut table: Vec<Option<Mor>> = vec![None; m * m];
    // Identity laws are implicit.
    for f in 0..m {
        table[data[f].cod.0 * m + f] = Some(Mor(f));
        table[f * m + data[f].dom.0] = Some(Mor(f));
    }
    for c in &d.composes {
        let second = mor_of(&c.second)?;
        let first = mor_of(&c.first)?;
        let result = mor_of(&c.result)?;
        if data[first.0].cod != data[second.0].dom {
            return Err(CatlangError::semantic(
                c.span,
                format!("`{}` and `{}` are not composable", c.second.text, c.first.text),
            ));
        }
        if data[result.0].dom != data[first.0].dom || data[result.0].cod != data[second.0].cod
        {
            return Err(CatlangError::semantic(
                c.span,
                format!("`{}` has the wrong endpoints for this composite", c.result.text),
            ));
        }
        let slot = &mut table[second.0 * m + first.0];
        match slot {
            Some(prev) if *prev != result => {
                return Err(CatlangError::semantic(
                    c.span,
                    format!(
                        "conflicting composite `{} . {}`",
                        c.second.text, c.first.text
                    ),
                ))
            }
            _ => *slot = Some(result),
        }
    }
    for second in 0..m {
        for first in 0..m {
            if data[first].cod == data[second].dom && table[second * m + first].is_none() {
                return Err(CatlangError::arity(
                    d.span,
                    format!(
                        "missing composite `{} . {}`",
                        data[second].label, data[first].label
                    ),
                ));
            }
        }
    }
    FiniteCategory::new(d.name.text.clone(), objects, data, identities(n), table)
        .map_err(|e| CatlangError::semantic(d.span, e.to_string()))
}

fn identities(n: usize) -> Vec<Mor> {
    (0..n).map(Mor).collect()
}

fn build_monoid(d: &MonoidDecl) -> Result<FiniteCategory, CatlangError> {
    check_unique(d.elements.iter(), "element")?;
    let elements: Vec<String> = d.elements.iter().map(|e| e.text.clone()).collect();
    let k = elements.len();
    let elem_of = |n: &Name| -> Result<usize, CatlangError> {
        elements
            .iter()
            .position(|t| *t == n.text)
            .ok_or_else(|| CatlangError::unresolved(n.span, "element", &n.text))
    };
    let unit = elem_of(&d.unit)?;
    let mut table: Vec<Option<usize>> = vec![None; k * k];
    for a in 0..k {
        table[unit * k + a] = Some(a);
        table[a * k + unit] = Some(a);
    }
    for c in &d.composes {
        let a = elem_of(&c.second)?;
        let b = elem_of(&c.first)?;
        let r = elem_of(&c.result)?;
        let slot = &mut table[a * k + b];
        match slot {
            Some(prev) if *prev != r => {
                return Err(CatlangError::semantic(
                    c.span,
                    format!("conflicting product `{} . {}`", c.second.text, c.first.text),
                ))
            }
            _ => *slot = Some(r),
        }
    }
    let full: Vec<usize> = table
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                CatlangError::arity(
                    d.span,
                    format!(
                        "missing product `{} . {}`",
                        elements[i / k],
                        elements[i % k]
                    ),
                )
            })
        })
        .collect::<Result<_, _>>()?;
    from_monoid(d.name.text.clone(), elements, unit, &full)
        .map_err(|e| CatlangError::semantic(d.span, e.to_string()))
}

fn build_poset(d: &PosetDecl) -> Result<FiniteCategory, CatlangError> {
    check_unique(d.elements.iter(), "element")?;
    let elements: Vec<String> = d.elements.iter().map(|e| e.text.clone()).collect();
    let n = elements.len();
    let leq: Vec<bool> = match &d.order {
        OrderSpec::Divides => {
            let mut numbers = Vec::with_capacity(n);
            for e in &d.elements {
                let v: u64 = e.text.parse().map_err(|_| {
                    CatlangError::semantic(
                        e.span,
                        format!("`{}` is not a positive integer, as `divides` needs", e.text),
                    )
                })?;
                if v == 0 {
                    return Err(CatlangError::semantic(
                        e.span,
                        "`divides` needs positive integers".to_string(),
                    ));
                }
                numbers.push(v);
            }
            let mut rel = vec![false; n * n];
            for i in 0..n {
                for j in 0..n {
                    rel[i * n + j] = numbers[j] % numbers[i] == 0;
                }
            }
            rel
        }
        OrderSpec::Pairs(pairs) => {
            let elem_of = |nm: &Name| -> Result<usize, CatlangError> {
                elements
                    .iter()
                    .position(|t| *t == nm.text)
                    .ok_or_else(|| CatlangError::unresolved(nm.span, "element", &nm.text))
            };
            // Reflexive-transitive closure of the declared pairs.
            let mut rel = vec![false; n * n];
            for i in 0..n {
                rel[i * n + i] = true;
            }
            for (lo, hi) in pairs {
                rel[elem_of(lo)? * n + elem_of(hi)?] = true;
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if rel[i * n + k] && rel[k * n + j] {
                            rel[i * n + j] = true;
                        }
                    }
                }
            }
            rel
        }
    };
    from_poset(d.name.text.clone(), elements, |i, j| leq[i * n + j])
        .map_err(|e| CatlangError::semantic(d.span, e.to_string()))
}

fn build_graph(d: &GraphDecl, caps: &Caps) -> Result<FiniteCategory, CatlangError> {
    check_unique(d.objects.iter(), "object")?;
    check_unique(d.arrows.iter().map(|a| &a.name), "arrow")?;
    let objects: Vec<String> = d.objects.iter().map(|o| o.text.clone()).collect();
    let obj_of = |n: &Name| -> Result<usize, CatlangError> {
        objects
            .iter()
            .position(|t| *t == n.text)
            .ok_or_else(|| CatlangError::unresolved(n.span, "object", &n.text))
    };
    let mut arrows = Vec::with_capacity(d.arrows.len());
    for a in &d.arrows {
        arrows.push((a.name.text.clone(), obj_of(&a.dom)?, obj_of(&a.cod)?));
    }
    let arrow_of = |n: &Name| -> Result<usize, CatlangError> {
        arrows
            .iter()
            .position(|(label, _, _)| *label == n.text)
            .ok_or_else(|| CatlangError::unresolved(n.span, "arrow", &n.text))
    };
    // Turn a written path (outermost first) into application order and
    // check it chains.
    let path_expr = |p: &PathDecl| -> Result<(PathExpr, usize), CatlangError> {
        match p {
            PathDecl::IdentityAt { object, .. } => {
                let o = obj_of(object)?;
                Ok((PathExpr { at: o, arrows: vec![] }, o))
            }
            PathDecl::Arrows { names, span } => {
                let mut idx = Vec::with_capacity(names.len());
                for n in names.iter().rev() {
                    idx.push(arrow_of(n)?);
                }
                let at = arrows[idx[0]].1;
                let mut cur = at;
                for &a in &idx {
                    let (label, dom, cod) = &arrows[a];
                    if *dom != cur {
                        return Err(CatlangError::semantic(
                            *span,
                            format!("path does not chain at `{label}`"),
                        ));
                    }
                    cur = *cod;
                }
                Ok((PathExpr { at, arrows: idx }, cur))
            }
        }
    };
    let mut relations = Vec::with_capacity(d.relations.len());
    for r in &d.relations {
        let (lhs, lhs_end) = path_expr(&r.lhs)?;
        let (rhs, rhs_end) = path_expr(&r.rhs)?;
        if lhs.at != rhs.at || lhs_end != rhs_end {
            return Err(CatlangError::semantic(
                r.span,
                "relation sides are not parallel".to_string(),
            ));
        }
        relations.push((lhs, rhs));
    }
    let p = Presentation {
        name: d.name.text.clone(),
        objects,
        arrows,
        relations,
    };
    from_presentation(&p, caps.max_morphisms, caps)
        .map_err(|e| CatlangError::semantic(d.span, e.to_string()))
}

/// Find a label among a category's morphisms, insisting it is unambiguous.
fn mor_by_label(
    c: &FiniteCategory,
    n: &Name,
    kind: &'static str,
) -> Result<Mor, CatlangError> {
    let mut hits = c.morphisms().filter(|&m| c.mor_label(m) == n.text);
    match (hits.next(), hits.next()) {
        (Some(m), None) => Ok(m),
        (Some(_), Some(_)) => Err(CatlangError::semantic(
            n.span,
            format!("label `{}` is ambiguous here", n.text),
        )),
        (None, _) => Err(CatlangError::unresolved(n.span, kind, &n.text)),
    }
}

fn obj_by_label(
    c: &FiniteCategory,
    n: &Name,
    kind: &'static str,
) -> Result<Obj, CatlangError> {
    c.objects()
        .find(|&o| c.obj_label(o) == n.text)
        .ok_or_else(|| CatlangError::unresolved(n.span, kind, &n.text))
}

fn build_functor(ws: &Workspace, d: &FunctorDecl) -> Result<Functor, CatlangError> {
    let source = ws
        .category(&d.source.text)
        .ok_or_else(|| CatlangError::unresolved(d.source.span, "category", &d.source.text))?
        .clone();
    let target = ws
        .category(&d.target.text)
        .ok_or_else(|| CatlangError::unresolved(d.target.span, "category", &d.target.text))?
        .clone();
    let mut object_map: Vec<Option<Obj>> = vec![None; source.n_objects()];
    let mut arrow_map: Vec<Option<(Mor, Span)>> = vec![None; source.n_morphisms()];
    for (lhs, rhs) in &d.clauses {
        if let Some(o) = source.objects().find(|&o| source.obj_label(o) == lhs.text) {
            let img = obj_by_label(&target, rhs, "object")?;
            if object_map[o.0].is_some() {
                return Err(CatlangError::semantic(
                    lhs.span,
                    format!("object `{}` is mapped twice", lhs.text),
                ));
            }
            object_map[o.0] = Some(img);
        } else {
            let m = mor_by_label(&source, lhs, "object or arrow")?;
            let img = mor_by_label(&target, rhs, "arrow")?;
            if arrow_map[m.0].is_some() {
                return Err(CatlangError::semantic(
                    lhs.span,
                    format!("arrow `{}` is mapped twice", lhs.text),
                ));
            }
            arrow_map[m.0] = Some((img, lhs.span));
        }
    }
    let object_map: Vec<Obj> = object_map
        .into_iter()
        .enumerate()
        .map(|(o, v)| {
            v.ok_or_else(|| {
                CatlangError::arity(
                    d.span,
                    format!(
                        "functor object map missing object `{}`",
                        source.obj_label(Obj(o))
                    ),
                )
            })
        })
        .collect::<Result<_, _>>()?;
    let mut morphism_map = Vec::with_capacity(source.n_morphisms());
    for m in source.morphisms() {
        let (fd, fc) = (
            object_map[source.dom(m).0],
            object_map[source.cod(m).0],
        );
        let chosen = if let Some((img, span)) = arrow_map[m.0] {
            if target.dom(img) != fd || target.cod(img) != fc {
                return Err(CatlangError::semantic(
                    span,
                    format!(
                        "image of `{}` has the wrong endpoints",
                        source.mor_label(m)
                    ),
                ));
            }
            img
        } else if source.id(source.dom(m)) == m && source.dom(m) == source.cod(m) {
            target.id(fd)
        } else {
            let candidates = target.hom(fd, fc);
            match candidates.len() {
                1 => candidates[0],
                0 => {
                    return Err(CatlangError::arity(
                        d.span,
                        format!("no image available for arrow `{}`", source.mor_label(m)),
                    ))
                }
                _ => {
                    return Err(CatlangError::arity(
                        d.span,
                        format!(
                            "image of arrow `{}` is ambiguous; add an `on` clause",
                            source.mor_label(m)
                        ),
                    ))
                }
            }
        };
        morphism_map.push(chosen);
    }
    Functor::new(d.name.text.clone(), source, target, object_map, morphism_map)
        .map_err(|e| CatlangError::semantic(d.span, e.to_string()))
}

fn build_nat(ws: &Workspace, d: &NatDecl) -> Result<NatTransformation, CatlangError> {
    let source = ws
        .functor(&d.source.text)
        .ok_or_else(|| CatlangError::unresolved(d.source.span, "functor", &d.source.text))?
        .clone();
    let target = ws
        .functor(&d.target.text)
        .ok_or_else(|| CatlangError::unresolved(d.target.span, "functor", &d.target.text))?
        .clone();
    if !source.source.table_eq(&target.source) || !source.target.table_eq(&target.target) {
        return Err(CatlangError::semantic(
            d.span,
            "the two functors are not parallel".to_string(),
        ));
    }
    let a_cat = source.source.clone();
    let b_cat = source.target.clone();
    let mut components: Vec<Option<Mor>> = vec![None; a_cat.n_objects()];
    for (obj, comp) in &d.components {
        let o = obj_by_label(&a_cat, obj, "object")?;
        let m = mor_by_label(&b_cat, comp, "arrow")?;
        if components[o.0].is_some() {
            return Err(CatlangError::semantic(
                obj.span,
                format!("component at `{}` is given twice", obj.text),
            ));
        }
        components[o.0] = Some(m);
    }
    let components: Vec<Mor> = components
        .into_iter()
        .enumerate()
        .map(|(o, v)| match v {
            Some(m) => Ok(m),
            None => {
                let candidates = b_cat.hom(source.on_obj(Obj(o)), target.on_obj(Obj(o)));
                match candidates.len() {
                    1 => Ok(candidates[0]),
                    0 => Err(CatlangError::arity(
                        d.span,
                        format!(
                            "no component available at `{}`",
                            a_cat.obj_label(Obj(o))
                        ),
                    )),
                    _ => Err(CatlangError::arity(
                        d.span,
                        format!(
                            "component at `{}` is ambiguous; add an `at` clause",
                            a_cat.obj_label(Obj(o))
                        ),
                    )),
                }
            }
        })
        .collect::<Result<_, _>>()?;
    NatTransformation::new(source, target, components)
        .map_err(|e| CatlangError::semantic(d.span, e.to_string()))
}

fn build_presheaf(ws: &Workspace, d: &PresheafDecl) -> Result<Presheaf, CatlangError> {
    let base = ws
        .category(&d.base.text)
        .ok_or_else(|| CatlangError::unresolved(d.base.span, "category", &d.base.text))?
        .clone();
    let mut values: Vec<Option<FinSet>> = vec![None; base.n_objects()];
    let mut value_atoms: Vec<Vec<Name>> = vec![Vec::new(); base.n_objects()];
    for (obj, atoms) in &d.values {
        let o = obj_by_label(&base, obj, "object")?;
        if values[o.0].is_some() {
            return Err(CatlangError::semantic(
                obj.span,
                format!("value at `{}` is given twice", obj.text),
            ));
        }
        check_unique(atoms.iter(), "element")?;
        let set = FinSet::new(atoms.iter().map(|a| Atom::token(&a.text)).collect())
            .map_err(|e| CatlangError::semantic(obj.span, e.to_string()))?;
        values[o.0] = Some(set);
        value_atoms[o.0] = atoms.clone();
    }
    let values: Vec<FinSet> = values
        .into_iter()
        .map(|v| v.unwrap_or_else(|| FinSet::new(vec![]).expect("empty set")))
        .collect();
    let mut actions: Vec<Option<FinFunction>> = vec![None; base.n_morphisms()];
    for o in base.objects() {
        let id = base.id(o);
        actions[id.0] = Some(FinFunction::identity(&values[o.0]));
    }
    for via in &d.actions {
        let f = mor_by_label(&base, &via.arrow, "arrow")?;
        let (src, dst) = (&values[base.cod(f).0], &values[base.dom(f).0]);
        let mut map: Vec<Option<usize>> = vec![None; src.len()];
        for (from, to) in &via.maps {
            let from_pos = src.position(&Atom::token(&from.text)).ok_or_else(|| {
                CatlangError::arity(
                    from.span,
                    format!(
                        "`{}` is not in the value at `{}`",
                        from.text,
                        base.obj_label(base.cod(f))
                    ),
                )
            })?;
            let to_pos = dst.position(&Atom::token(&to.text)).ok_or_else(|| {
                CatlangError::arity(
                    to.span,
                    format!(
                        "`{}` is not in the value at `{}`",
                        to.text,
                        base.obj_label(base.dom(f))
                    ),
                )
            })?;
            if map[from_pos].is_some() {
                return Err(CatlangError::semantic(
                    from.span,
                    format!("`{}` is mapped twice", from.text),
                ));
            }
            map[from_pos] = Some(to_pos);
        }
        let map: Vec<usize> = map
            .into_iter()
            .enumerate()
            .map(|(pos, v)| {
                v.ok_or_else(|| {
                    CatlangError::arity(
                        via.span,
                        format!(
                            "no image for `{}` under `{}`",
                            src.elements[pos], via.arrow.text
                        ),
                    )
                })
            })
            .collect::<Result<_, _>>()?;
        let prev = &mut actions[f.0];
        if let Some(existing) = prev {
            let candidate = FinFunction::new(src.clone(), dst.clone(), map.clone())
                .map_err(|e| CatlangError::semantic(via.span, e.to_string()))?;
            if !existing.same_function(&candidate) {
                return Err(CatlangError::semantic(
                    via.span,
                    format!("`{}` already has a different action", via.arrow.text),
                ));
            }
        } else {
            *prev = Some(
                FinFunction::new(src.clone(), dst.clone(), map)
                    .map_err(|e| CatlangError::semantic(via.span, e.to_string()))?,
            );
        }
    }
    let actions: Vec<FinFunction> = actions
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let f = Mor(i);
            match v {
                Some(fun) => Ok(fun),
                None => {
                    let (src, dst) = (&values[base.cod(f).0], &values[base.dom(f).0]);
                    if src.is_empty() {
                        Ok(FinFunction::new(src.clone(), dst.clone(), vec![])
                            .expect("empty function"))
                    } else if dst.len() == 1 {
                        Ok(FinFunction::new(src.clone(), dst.clone(), vec![0; src.len()])
                            .expect("constant function"))
                    } else {
                        Err(CatlangError::arity(
                            d.span,
                            format!("no action given for `{}`", base.mor_label(f)),
                        ))
                    }
                }
            }
        })
        .collect::<Result<_, _>>()?;
    Presheaf::new(d.name.text.clone(), base, values, actions)
        .map_err(|e| CatlangError::semantic(d.span, e.to_string()))
}

fn resolve_task(ws: &Workspace, d: &TaskDecl) -> Result<WorkRequest, CatlangError> {
    let functor_target = || {
        ws.functor(&d.target.text)
            .cloned()
            .ok_or_else(|| CatlangError::unresolved(d.target.span, "functor", &d.target.text))
    };
    let presheaf_target = || {
        ws.presheaf(&d.target.text)
            .cloned()
            .ok_or_else(|| CatlangError::unresolved(d.target.span, "presheaf", &d.target.text))
    };
    let check_ambient = |f: &Functor| -> Result<(), CatlangError> {
        if let Some(ambient) = &d.ambient {
            let c = ws.category(&ambient.text).ok_or_else(|| {
                CatlangError::unresolved(ambient.span, "category", &ambient.text)
            })?;
            if !c.table_eq(&f.target) {
                return Err(CatlangError::semantic(
                    ambient.span,
                    format!("`{}` does not land in `{}`", d.target.text, ambient.text),
                ));
            }
        }
        Ok(())
    };
    match d.kind {
        TaskKind::Limit => {
            let f = functor_target()?;
            check_ambient(&f)?;
            Ok(WorkRequest::Limit(f))
        }
        TaskKind::Colimit => {
            let f = functor_target()?;
            check_ambient(&f)?;
            Ok(WorkRequest::Colimit(f))
        }
        TaskKind::LeftAdjoint => Ok(WorkRequest::LeftAdjoint(functor_target()?)),
        TaskKind::YonedaCheck => Ok(WorkRequest::YonedaCheck(presheaf_target()?)),
        TaskKind::Density => Ok(WorkRequest::Density(presheaf_target()?)),
        TaskKind::Classifier => {
            let c = ws
                .category(&d.target.text)
                .cloned()
                .ok_or_else(|| {
                    CatlangError::unresolved(d.target.span, "category", &d.target.text)
                })?;
            Ok(WorkRequest::Classifier(c))
        }
    }
}
