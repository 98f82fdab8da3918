//! Syntax tree with source spans on every node.

use crate::token::Span;

/// An identifier, number, or quoted string used as a name or atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub span: Span,
}

impl Name {
    pub fn new(text: impl Into<String>) -> Name {
        Name {
            text: text.into(),
            span: Span::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SourceDocument {
    pub decls: Vec<Decl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Category(CategoryDecl),
    Monoid(MonoidDecl),
    Poset(PosetDecl),
    Graph(GraphDecl),
    Functor(FunctorDecl),
    Nat(NatDecl),
    Presheaf(PresheafDecl),
    Task(TaskDecl),
}

impl Decl {
    pub fn span(&self) -> Span {
        match self {
            Decl::Category(d) => d.span,
            Decl::Monoid(d) => d.span,
            Decl::Poset(d) => d.span,
            Decl::Graph(d) => d.span,
            Decl::Functor(d) => d.span,
            Decl::Nat(d) => d.span,
            Decl::Presheaf(d) => d.span,
            Decl::Task(d) => d.span,
        }
    }
}

/// `category N { objects a, b; arrow f: a -> b; compose g . f = h; }`
/// Identities are implicit: one per object, named `1_` + object name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryDecl {
    pub name: Name,
    pub objects: Vec<Name>,
    pub arrows: Vec<ArrowDecl>,
    pub composes: Vec<ComposeDecl>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: Name,
    pub dom: Name,
    pub cod: Name,
    pub span: Span,
}

/// `compose second . first = result;`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposeDecl {
    pub second: Name,
    pub first: Name,
    pub result: Name,
    pub span: Span,
}

/// `monoid N { unit e; elements e, s, t; compose s . t = e; }`
/// One object; elements are the morphisms. Products with the unit are
/// implicit; all others must be listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidDecl {
    pub name: Name,
    pub unit: Name,
    pub elements: Vec<Name>,
    pub composes: Vec<ComposeDecl>,
    pub span: Span,
}

/// `poset N { elements 1, 2; order divides; }` or explicit pairs
/// `order (1, 2), (1, 4);` — the declared pairs are closed reflexively
/// and transitively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetDecl {
    pub name: Name,
    pub elements: Vec<Name>,
    pub order: OrderSpec,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderSpec {
    Divides,
    Pairs(Vec<(Name, Name)>),
}

/// `graph N { objects a; arrow f: a -> a; relation f . f = id a; }`
/// The category of paths modulo the relation congruence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDecl {
    pub name: Name,
    pub objects: Vec<Name>,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<RelationDecl>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationDecl {
    pub lhs: PathDecl,
    pub rhs: PathDecl,
    pub span: Span,
}

/// A composite written outermost first: `g . f` applies `f`, then `g`.
/// `id a` is the empty path at `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathDecl {
    Arrows { names: Vec<Name>, span: Span },
    IdentityAt { object: Name, span: Span },
}

impl PathDecl {
    pub fn span(&self) -> Span {
        match self {
            PathDecl::Arrows { span, .. } => *span,
            PathDecl::IdentityAt { span, .. } => *span,
        }
    }
}

/// `functor F: C -> D { on a = x; on f = g; }` — clauses cover objects
/// and may cover arrows; arrow images with a unique candidate are
/// derived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorDecl {
    pub name: Name,
    pub source: Name,
    pub target: Name,
    pub clauses: Vec<(Name, Name)>,
    pub span: Span,
}

/// `nat t: F => G { at a = g; }`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatDecl {
    pub name: Name,
    pub source: Name,
    pub target: Name,
    pub components: Vec<(Name, Name)>,
    pub span: Span,
}

/// `presheaf X on C { at a = { p, q }; via f: r -> p; }` — a `via`
/// clause for `f: A' -> A` maps each element of the value at `A` to its
/// restriction in the value at `A'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafDecl {
    pub name: Name,
    pub base: Name,
    pub values: Vec<(Name, Vec<Name>)>,
    pub actions: Vec<ViaDecl>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViaDecl {
    pub arrow: Name,
    pub maps: Vec<(Name, Name)>,
    pub span: Span,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaskKind {
    Limit,
    Colimit,
    LeftAdjoint,
    YonedaCheck,
    Density,
    Classifier,
}

impl TaskKind {
    pub fn keyword(self) -> &'static str {
        match self {
            TaskKind::Limit => "limit",
            TaskKind::Colimit => "colimit",
            TaskKind::LeftAdjoint => "left-adjoint",
            TaskKind::YonedaCheck => "yoneda-check",
            TaskKind::Density => "density",
            TaskKind::Classifier => "classifier",
        }
    }
}

/// `task limit of Pair;` — optionally `task limit of Pair in C;`, where
/// the ambient category is checked against the diagram's own target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskDecl {
    pub kind: TaskKind,
    pub target: Name,
    pub ambient: Option<Name>,
    pub span: Span,
}

impl SourceDocument {
    /// The document with every span cleared, for structural comparison.
    pub fn strip_spans(&self) -> SourceDocument {
        fn name(n: &Name) -> Name {
            Name::new(n.text.clone())
        }
        fn names(v: &[Name]) -> Vec<Name> {
            v.iter().map(name).collect()
        }
        fn pairs(v: &[(Name, Name)]) -> Vec<(Name, Name)> {
            v.iter().map(|(a, b)| (name(a), name(b))).collect()
        }
        fn arrows(v: &[ArrowDecl]) -> Vec<ArrowDecl> {
            v.iter()
                .map(|a| ArrowDecl {
                    name: name(&a.name),
                    dom: name(&a.dom),
                    cod: name(&a.cod),
                    span: Span::default(),
                })
                .collect()
        }
        fn composes(v: &[ComposeDecl]) -> Vec<ComposeDecl> {
            v.iter()
                .map(|c| ComposeDecl {
                    second: name(&c.second),
                    first: name(&c.first),
                    result: name(&c.result),
                    span: Span::default(),
                })
                .collect()
        }
        fn path(p: &PathDecl) -> PathDecl {
            match p {
                PathDecl::Arrows { names: n, .. } => PathDecl::Arrows {
                    names: names(n),
                    span: Span::default(),
                },
                PathDecl::IdentityAt { object, .. } => PathDecl::IdentityAt {
                    object: name(object),
                    span: Span::default(),
                },
            }
        }
        let decls = self
            .decls
            .iter()
            .map(|d| match d {
                Decl::Category(c) => Decl::Category(CategoryDecl {
                    name: name(&c.name),
                    objects: names(&c.objects),
                    arrows: arrows(&c.arrows),
                    composes: composes(&c.composes),
                    span: Span::default(),
                }),
                Decl::Monoid(m) => Decl::Monoid(MonoidDecl {
                    name: name(&m.name),
                    unit: name(&m.unit),
                    elements: names(&m.elements),
                    composes: composes(&m.composes),
                    span: Span::default(),
                }),
                Decl::Poset(p) => Decl::Poset(PosetDecl {
                    name: name(&p.name),
                    elements: names(&p.elements),
                    order: match &p.order {
                        OrderSpec::Divides => OrderSpec::Divides,
                        OrderSpec::Pairs(v) => OrderSpec::Pairs(pairs(v)),
                    },
                    span: Span::default(),
                }),
                Decl::Graph(g) => Decl::Graph(GraphDecl {
                    name: name(&g.name),
                    objects: names(&g.objects),
                    arrows: arrows(&g.arrows),
                    relations: g
                        .relations
                        .iter()
                        .map(|r| RelationDecl {
                            lhs: path(&r.lhs),
                            rhs: path(&r.rhs),
                            span: Span::default(),
                        })
                        .collect(),
                    span: Span::default(),
                }),
                Decl::Functor(f) => Decl::Functor(FunctorDecl {
                    name: name(&f.name),
                    source: name(&f.source),
                    target: name(&f.target),
                    clauses: pairs(&f.clauses),
                    span: Span::default(),
                }),
                Decl::Nat(t) => Decl::Nat(NatDecl {
                    name: name(&t.name),
                    source: name(&t.source),
                    target: name(&t.target),
                    components: pairs(&t.components),
                    span: Span::default(),
                }),
                Decl::Presheaf(x) => Decl::Presheaf(PresheafDecl {
                    name: name(&x.name),
                    base: name(&x.base),
                    values: x
                        .values
                        .iter()
                        .map(|(o, atoms)| (name(o), names(atoms)))
                        .collect(),
                    actions: x
                        .actions
                        .iter()
                        .map(|v| ViaDecl {
                            arrow: name(&v.arrow),
                            maps: pairs(&v.maps),
                            span: Span::default(),
                        })
                        .collect(),
                    span: Span::default(),
                }),
                Decl::Task(t) => Decl::Task(TaskDecl {
                    kind: t.kind,
                    target: name(&t.target),
                    ambient: t.ambient.as_ref().map(name),
                    span: Span::default(),
                }),
            })
            .collect();
        SourceDocument { decls }
    }
}
