//! Presheaves on a finite base category: representables and their induced
//! maps, the Yoneda correspondence in both directions, representation
//! search, categories of elements, the density construction, pointwise
//! products and exponentials with currying, the sieve-based subobject
//! classifier, and the two-sided hom bifunctor.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::caps::Caps;
use crate::cat::{CatError, FiniteCategory, Mor, MorData, Obj};
use crate::finset::{
    check_set_nat, colimit_finset, enumerate_set_nats, function_props, product_set, Atom,
    FinFunction, FinSet, FinSetError, SetCone, SetFunctor,
};
use crate::functor::{Functor, FunctorError};
use crate::limits::Cone;

/// Errors raised by the presheaf layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresheafError {
    /// A named element does not belong to the value set it was quoted in.
    #[error("element {atom} is not in the value at object {object}")]
    ElementNotInValue { object: usize, atom: String },
    /// A proposed family of subsets is not closed under the actions.
    #[error("subset is not action-closed: {atom} at object {object} maps outside it")]
    NotASubpresheaf { object: usize, atom: String },
    /// Mismatched bases or endpoints.
    #[error("boundary mismatch: {what}")]
    BoundaryMismatch { what: String },
    /// A search or construction exceeded the configured cap.
    #[error("{what}: needed {needed}, cap {cap}")]
    CapExceeded {
        what: String,
        needed: usize,
        cap: usize,
    },
    #[error("category error: {0}")]
    Cat(#[from] CatError),
    #[error("functor error: {0}")]
    Functor(#[from] FunctorError),
    #[error("finite-set error: {0}")]
    Set(#[from] FinSetError),
}

/// A contravariant set-valued functor on a finite base: a value set per
/// object and, for every `f: A′ → A`, a restriction `X(f): X(A) → X(A′)`.
#[derive(Clone, Debug)]
pub struct Presheaf {
    pub name: String,
    pub base: Arc<FiniteCategory>,
    /// Value set per base object.
    pub values: Vec<FinSet>,
    /// `actions[f]: values[cod f] → values[dom f]`.
    pub actions: Vec<FinFunction>,
}

impl Presheaf {
    /// Build and validate: value/action shapes, identity actions, and
    /// the contravariant composition law `X(g∘f) = X(f)∘X(g)`.
    pub fn new(
        name: impl Into<String>,
        base: Arc<FiniteCategory>,
        values: Vec<FinSet>,
        actions: Vec<FinFunction>,
    ) -> Result<Self, PresheafError> {
        let p = Presheaf {
            name: name.into(),
            base,
            values,
            actions,
        };
        // Validation is covariant functoriality over the arrow-reversed
        // base, which shares all positional indices with the base itself.
        p.as_diagram().validate()?;
        Ok(p)
    }

    pub fn value(&self, o: Obj) -> &FinSet {
        &self.values[o.0]
    }

    pub fn action(&self, m: Mor) -> &FinFunction {
        &self.actions[m.0]
    }

    /// The same data as a covariant diagram on the arrow-reversed base
    /// (object and morphism indices coincide with the base's own).
    pub fn as_diagram(&self) -> SetFunctor {
        SetFunctor {
            name: self.name.clone(),
            shape: Arc::new(self.base.opposite()),
            sets: self.values.clone(),
            maps: self.actions.clone(),
        }
    }

    /// Same value sets and actions (names ignored).
    pub fn same_values(&self, other: &Presheaf) -> bool {
        self.base.table_eq(&other.base)
            && self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| a == b)
            && self
                .actions
                .iter()
                .zip(&other.actions)
                .all(|(a, b)| a.same_function(b))
    }
}

/// The presheaf with every value empty.
pub fn empty_presheaf(base: &Arc<FiniteCategory>) -> Presheaf {
    let empty = FinSet::new(vec![]).expect("empty set");
    Presheaf {
        name: "0".into(),
        base: Arc::clone(base),
        values: vec![empty.clone(); base.n_objects()],
        actions: vec![FinFunction::identity(&empty); base.n_morphisms()],
    }
}

/// The presheaf with every value a fixed one-element set.
pub fn terminal_presheaf(base: &Arc<FiniteCategory>) -> Presheaf {
    let point = FinSet::new(vec![Atom::token("*")]).expect("one-point set");
    Presheaf {
        name: "1".into(),
        base: Arc::clone(base),
        values: vec![point.clone(); base.n_objects()],
        actions: vec![FinFunction::identity(&point); base.n_morphisms()],
    }
}

/// Are the morphism labels of `c` pairwise distinct?
fn labels_unique(c: &FiniteCategory) -> bool {
    let set: BTreeSet<&str> = c.morphisms().map(|m| c.mor_label(m)).collect();
    set.len() == c.n_morphisms()
}

/// A deterministic atom per morphism: the label when labels are globally
/// unique, otherwise the positional index.
fn mor_atom(c: &FiniteCategory, unique: bool, m: Mor) -> Atom {
    if unique {
        Atom::token(c.mor_label(m))
    } else {
        Atom::token(format!("m{}", m.0))
    }
}

/// A map of presheaves: one component function per base object, natural
/// with respect to every restriction.
#[derive(Clone, Debug)]
pub struct PresheafMap {
    pub source: Presheaf,
    pub target: Presheaf,
    /// `components[A]: source value at A → target value at A`.
    pub components: Vec<FinFunction>,
}

impl PresheafMap {
    pub fn new(
        source: Presheaf,
        target: Presheaf,
        components: Vec<FinFunction>,
    ) -> Result<Self, PresheafError> {
        if !source.base.table_eq(&target.base) {
            return Err(PresheafError::BoundaryMismatch {
                what: "presheaf map endpoints must share the base".into(),
            });
        }
        check_set_nat(&source.as_diagram(), &target.as_diagram(), &components)?;
        Ok(PresheafMap {
            source,
            target,
            components,
        })
    }

    pub fn identity(x: &Presheaf) -> PresheafMap {
        PresheafMap {
            source: x.clone(),
            target: x.clone(),
            components: x.values.iter().map(FinFunction::identity).collect(),
        }
    }

    pub fn at(&self, o: Obj) -> &FinFunction {
        &self.components[o.0]
    }

    /// Composition `other ∘ self` (first `self`, then `other`).
    pub fn then(&self, other: &PresheafMap) -> Result<PresheafMap, PresheafError> {
        if !self.target.same_values(&other.source) {
            return Err(PresheafError::BoundaryMismatch {
                what: "composition endpoints do not meet".into(),
            });
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(f, g)| f.then(g))
            .collect::<Result<_, _>>()?;
        PresheafMap::new(self.source.clone(), other.target.clone(), components)
    }

    /// Every component a bijection.
    pub fn is_iso(&self) -> bool {
        self.components.iter().all(|c| {
            let p = function_props(c);
            p.injective && p.surjective
        })
    }

    pub fn same_components(&self, other: &PresheafMap) -> bool {
        self.components.len() == other.components.len()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| a.same_function(b))
    }
}

/// The representable presheaf `h_A = hom(−, A)`: value at `B` is the
/// hom-set `B → A`, and the action of `f: B′ → B` is precomposition.
pub fn representable(base: &Arc<FiniteCategory>, a: Obj) -> Presheaf {
    let unique = labels_unique(base);
    let values: Vec<FinSet> = base
        .objects()
        .map(|b| {
            FinSet::new(
                base.hom(b, a)
                    .into_iter()
                    .map(|m| mor_atom(base, unique, m))
                    .collect(),
            )
            .expect("distinct morphisms get distinct atoms")
        })
        .collect();
    let actions: Vec<FinFunction> = base
        .morphisms()
        .map(|f| {
            let (b2, b) = (base.dom(f), base.cod(f));
            let dom_homs = base.hom(b, a);
            let cod_homs = base.hom(b2, a);
            let map = dom_homs
                .iter()
                .map(|&p| {
                    let pf = base.compose(p, f).expect("p∘f is defined");
                    cod_homs
                        .iter()
                        .position(|&q| q == pf)
                        .expect("composite lands in the hom-set")
                })
                .collect();
            FinFunction::new(values[b.0].clone(), values[b2.0].clone(), map)
                .expect("positions are in range")
        })
        .collect();
    Presheaf::new(
        format!("h_{}", base.obj_label(a)),
        Arc::clone(base),
        values,
        actions,
    )
    .expect("precomposition is contravariantly functorial")
}

/// The induced map `h_f: h_A → h_{A′}` for `f: A → A′`: postcomposition
/// with `f` at every object.
pub fn representable_map(base: &Arc<FiniteCategory>, f: Mor) -> PresheafMap {
    let (a, a2) = (base.dom(f), base.cod(f));
    let h_a = representable(base, a);
    let h_a2 = representable(base, a2);
    let components: Vec<FinFunction> = base
        .objects()
        .map(|b| {
            let dom_homs = base.hom(b, a);
            let cod_homs = base.hom(b, a2);
            let map = dom_homs
                .iter()
                .map(|&p| {
                    let fp = base.compose(f, p).expect("f∘p is defined");
                    cod_homs
                        .iter()
                        .position(|&q| q == fp)
                        .expect("composite lands in the hom-set")
                })
                .collect();
            FinFunction::new(h_a.values[b.0].clone(), h_a2.values[b.0].clone(), map)
                .expect("positions are in range")
        })
        .collect();
    PresheafMap::new(h_a, h_a2, components).expect("postcomposition is natural")
}

/// Evaluate a map out of a representable at the identity: the element of
/// `X(A)` that determines the whole transformation.
pub fn yoneda_forward(alpha: &PresheafMap, a: Obj) -> Result<Atom, PresheafError> {
    let base = &alpha.source.base;
    let h_a = representable(base, a);
    if !alpha.source.same_values(&h_a) {
        return Err(PresheafError::BoundaryMismatch {
            what: format!(
                "the source must be the representable at {}",
                base.obj_label(a)
            ),
        });
    }
    let id = base.id(a);
    let pos = base
        .hom(a, a)
        .iter()
        .position(|&m| m == id)
        .expect("the identity is in its own hom-set");
    let image = alpha.components[a.0].map[pos];
    Ok(alpha.target.values[a.0].elements[image].clone())
}

/// The transformation `h_A → X` determined by an element `x ∈ X(A)`:
/// its component at `B` sends `f: B → A` to the restriction `X(f)(x)`.
pub fn yoneda_backward(x: &Presheaf, a: Obj, elem: &Atom) -> Result<PresheafMap, PresheafError> {
    let base = &x.base;
    let pos = x.values[a.0]
        .position(elem)
        .ok_or_else(|| PresheafError::ElementNotInValue {
            object: a.0,
            atom: elem.to_string(),
        })?;
    let h_a = representable(base, a);
    let components: Vec<FinFunction> = base
        .objects()
        .map(|b| {
            let map = base
                .hom(b, a)
                .iter()
                .map(|&f| x.actions[f.0].map[pos])
                .collect();
            FinFunction::new(h_a.values[b.0].clone(), x.values[b.0].clone(), map)
                .expect("restrictions land in the value set")
        })
        .collect();
    PresheafMap::new(h_a, x.clone(), components)
}

/// Outcome of a representation search.
#[derive(Clone, Debug)]
pub enum Representation {
    /// A representing object with its universal element, the induced
    /// natural isomorphism, and every `(object, element)` pair that
    /// represents `X`.
    Found {
        object: Obj,
        element: Atom,
        iso: PresheafMap,
        all: Vec<(Obj, Atom)>,
    },
    NotRepresentable,
}

/// Search every pair `(A, x ∈ X(A))` for the universal-element property:
/// the induced transformation `h_A → X` must be an isomorphism.
pub fn find_representation(x: &Presheaf) -> Result<Representation, PresheafError> {
    let mut all: Vec<(Obj, Atom)> = Vec::new();
    let mut first: Option<(Obj, Atom, PresheafMap)> = None;
    for a in x.base.objects() {
        for atom in x.values[a.0].elements.clone() {
            let cand = yoneda_backward(x, a, &atom)?;
            if cand.is_iso() {
                all.push((a, atom.clone()));
                if first.is_none() {
                    first = Some((a, atom, cand));
                }
            }
        }
    }
    Ok(match first {
        Some((object, element, iso)) => Representation::Found {
            object,
            element,
            iso,
            all,
        },
        None => Representation::NotRepresentable,
    })
}

/// The category of elements of a presheaf: objects are pairs `(A, x)`
/// with `x ∈ X(A)`, and a morphism `(A′, x′) → (A, x)` is a base map
/// `f: A′ → A` with `X(f)(x) = x′`.
#[derive(Clone, Debug)]
pub struct ElementsCategory {
    pub category: Arc<FiniteCategory>,
    /// `(base object, element position)` per category object.
    pub elements: Vec<(Obj, usize)>,
    /// Underlying base morphism per category morphism.
    pub arrows: Vec<Mor>,
    /// The projection `(A, x) ↦ A`.
    pub projection: Functor,
}

pub fn category_of_elements(
    x: &Presheaf,
    caps: &Caps,
) -> Result<ElementsCategory, PresheafError> {
    let base = &x.base;
    let mut elements: Vec<(Obj, usize)> = Vec::new();
    let mut obj_index = vec![Vec::new(); base.n_objects()];
    for a in base.objects() {
        for pos in 0..x.values[a.0].len() {
            obj_index[a.0].push(elements.len());
            elements.push((a, pos));
        }
    }
    if elements.len() > caps.max_objects {
        return Err(PresheafError::CapExceeded {
            what: "category-of-elements objects".into(),
            needed: elements.len(),
            cap: caps.max_objects,
        });
    }
    let labels: Vec<String> = elements
        .iter()
        .map(|&(a, pos)| {
            format!(
                "({},{})",
                base.obj_label(a),
                x.values[a.0].elements[pos]
            )
        })
        .collect();
    // One morphism per pair (base map f, element x of the value at cod f):
    // it runs (dom f, X(f)(x)) → (cod f, x).
    let mut arrows: Vec<Mor> = Vec::new();
    let mut data: Vec<MorData> = Vec::new();
    let mut mor_index = vec![Vec::new(); base.n_morphisms()];
    for f in base.morphisms() {
        let (a2, a) = (base.dom(f), base.cod(f));
        for pos in 0..x.values[a.0].len() {
            let restricted = x.actions[f.0].map[pos];
            mor_index[f.0].push(data.len());
            data.push(MorData {
                dom: Obj(obj_index[a2.0][restricted]),
                cod: Obj(obj_index[a.0][pos]),
                label: format!(
                    "({},{})",
                    base.mor_label(f),
                    x.values[a.0].elements[pos]
                ),
            });
            arrows.push(f);
        }
    }
    if data.len() > caps.max_morphisms {
        return Err(PresheafError::CapExceeded {
            what: "category-of-elements morphisms".into(),
            needed: data.len(),
            cap: caps.max_morphisms,
        });
    }
    let identities = elements
        .iter()
        .map(|&(a, pos)| Mor(mor_index[base.id(a).0][pos]))
        .collect();
    let m = data.len();
    let mut table = vec![None; m * m];
    for (second, &f) in arrows.iter().enumerate() {
        for (first, &g) in arrows.iter().enumerate() {
            // first: (dom g, X(g)(y)) → (cod g, y); second needs its own
            // domain element to continue where first ends.
            if data[first].cod != data[second].dom {
                continue;
            }
            let fg = base.compose(f, g).expect("base maps compose");
            // The composite classifies the same top element as `second`.
            let top = elements[data[second].cod.0].1;
            table[second * m + first] = Some(Mor(mor_index[fg.0][top]));
        }
    }
    let category = Arc::new(FiniteCategory::new(
        format!("El({})", x.name),
        labels,
        data,
        identities,
        table,
    )?);
    let projection = Functor::new(
        format!("proj_{}", x.name),
        Arc::clone(&category),
        Arc::clone(base),
        elements.iter().map(|&(a, _)| a).collect(),
        arrows.clone(),
    )?;
    Ok(ElementsCategory {
        category,
        elements,
        arrows,
        projection,
    })
}

/// The density witness: the canonical diagram of representables over the
/// category of elements, its pointwise colimit, the cocone legs, and the
/// comparison isomorphism onto the original presheaf.
#[derive(Clone, Debug)]
pub struct Density {
    pub elements: ElementsCategory,
    pub colimit: Presheaf,
    /// Leg `h_{A_k} → colimit` per element-category object `k = (A_k, x_k)`.
    pub legs: Vec<PresheafMap>,
    /// The canonical isomorphism `colimit → X`.
    pub comparison: PresheafMap,
}

/// Realize a presheaf as the colimit of representables indexed by its own
/// category of elements, computed pointwise, with the canonical
/// comparison verified to be an isomorphism.
pub fn density(x: &Presheaf, caps: &Caps) -> Result<Density, PresheafError> {
    let base = &x.base;
    let el = category_of_elements(x, caps)?;
    let reps: Vec<Presheaf> = base.objects().map(|a| representable(base, a)).collect();
    // Pointwise colimit: at each base object B, the diagram over the
    // element category sends (A, x) to hom(B, A) and an arrow over f to
    // postcomposition by f.
    let mut cocones = Vec::with_capacity(base.n_objects());
    for b in base.objects() {
        let sets: Vec<FinSet> = el
            .elements
            .iter()
            .map(|&(a, _)| reps[a.0].values[b.0].clone())
            .collect();
        let maps: Vec<FinFunction> = el
            .arrows
            .iter()
            .enumerate()
            .map(|(m, &f)| {
                let src = el.elements[el.category.dom(Mor(m)).0].0;
                let dst = el.elements[el.category.cod(Mor(m)).0].0;
                let dom_homs = base.hom(b, src);
                let cod_homs = base.hom(b, dst);
                let map = dom_homs
                    .iter()
                    .map(|&p| {
                        let fp = base.compose(f, p).expect("f∘p is defined");
                        cod_homs
                            .iter()
                            .position(|&q| q == fp)
                            .expect("composite lands in the hom-set")
                    })
                    .collect();
                FinFunction::new(
                    reps[src.0].values[b.0].clone(),
                    reps[dst.0].values[b.0].clone(),
                    map,
                )
                .expect("positions are in range")
            })
            .collect();
        let diagram = SetFunctor::new(
            format!("h(-)({}) over El", base.obj_label(b)),
            Arc::clone(&el.category),
            sets,
            maps,
        )?;
        cocones.push(colimit_finset(&diagram, caps)?);
    }
    // Assemble the colimit presheaf: the action of g: B′ → B sends the
    // class of (k, p: B → A_k) to the class of (k, p∘g).
    let values: Vec<FinSet> = cocones.iter().map(|c| c.vertex.clone()).collect();
    let class_of = |b: Obj, k: usize, hom_pos: usize| cocones[b.0].legs[k].map[hom_pos];
    let representative = |b: Obj, class: usize| -> (usize, usize) {
        for (k, leg) in cocones[b.0].legs.iter().enumerate() {
            if let Some(pos) = leg.map.iter().position(|&c| c == class) {
                return (k, pos);
            }
        }
        unreachable!("colimit legs are jointly surjective");
    };
    let actions: Vec<FinFunction> = base
        .morphisms()
        .map(|g| {
            let (b2, b) = (base.dom(g), base.cod(g));
            let map = (0..values[b.0].len())
                .map(|class| {
                    let mut image = None;
                    // Compute through every representative and insist the
                    // answers agree: well-definedness is checked, not assumed.
                    for (k, leg) in cocones[b.0].legs.iter().enumerate() {
                        let a = el.elements[k].0;
                        let homs = base.hom(b, a);
                        for (pos, &cls) in leg.map.iter().enumerate() {
                            if cls != class {
                                continue;
                            }
                            let pg = base.compose(homs[pos], g).expect("p∘g is defined");
                            let pg_pos = base
                                .hom(b2, a)
                                .iter()
                                .position(|&q| q == pg)
                                .expect("composite lands in the hom-set");
                            let out = class_of(b2, k, pg_pos);
                            match image {
                                None => image = Some(out),
                                Some(prev) => assert_eq!(
                                    prev, out,
                                    "restriction must be class-independent"
                                ),
                            }
                        }
                    }
                    image.expect("every class has a representative")
                })
                .collect();
            FinFunction::new(values[b.0].clone(), values[b2.0].clone(), map)
                .expect("positions are in range")
        })
        .collect();
    let colimit = Presheaf::new(
        format!("colim h over El({})", x.name),
        Arc::clone(base),
        values,
        actions,
    )?;
    // Cocone legs as presheaf maps, and the canonical comparison to X.
    let legs: Vec<PresheafMap> = el
        .elements
        .iter()
        .enumerate()
        .map(|(k, &(a, _))| {
            let components = base
                .objects()
                .map(|b| {
                    FinFunction::new(
                        reps[a.0].values[b.0].clone(),
                        colimit.values[b.0].clone(),
                        cocones[b.0].legs[k].map.clone(),
                    )
                    .expect("legs have the right endpoints")
                })
                .collect();
            PresheafMap::new(reps[a.0].clone(), colimit.clone(), components)
        })
        .collect::<Result<_, _>>()?;
    let comparison_components: Vec<FinFunction> = base
        .objects()
        .map(|b| {
            let map = (0..colimit.values[b.0].len())
                .map(|class| {
                    let (k, pos) = representative(b, class);
                    let (a, x_pos) = el.elements[k];
                    let p = base.hom(b, a)[pos];
                    x.actions[p.0].map[x_pos]
                })
                .collect();
            FinFunction::new(colimit.values[b.0].clone(), x.values[b.0].clone(), map)
                .expect("positions are in range")
        })
        .collect();
    let comparison = PresheafMap::new(colimit.clone(), x.clone(), comparison_components)?;
    assert!(
        comparison.is_iso(),
        "the canonical comparison must be an isomorphism"
    );
    // The comparison pastes each leg onto the transformation the element
    // itself induces.
    for (k, leg) in legs.iter().enumerate() {
        let (a, x_pos) = el.elements[k];
        let induced = yoneda_backward(x, a, &x.values[a.0].elements[x_pos].clone())?;
        let pasted = leg.then(&comparison)?;
        assert!(
            pasted.same_components(&induced),
            "cocone legs must classify their own elements"
        );
    }
    Ok(Density {
        elements: el,
        colimit,
        legs,
        comparison,
    })
}

/// Pointwise product of two presheaves with its projections.
pub fn product_presheaf(
    x: &Presheaf,
    y: &Presheaf,
    caps: &Caps,
) -> Result<(Presheaf, PresheafMap, PresheafMap), PresheafError> {
    if !x.base.table_eq(&y.base) {
        return Err(PresheafError::BoundaryMismatch {
            what: "product factors must share the base".into(),
        });
    }
    let base = &x.base;
    let values: Vec<FinSet> = base
        .objects()
        .map(|b| product_set(&[&x.values[b.0], &y.values[b.0]], caps))
        .collect::<Result<_, _>>()?;
    let pair_parts = |atom: &Atom| -> (Atom, Atom) {
        match atom {
            Atom::Tuple(parts) if parts.len() == 2 => (parts[0].clone(), parts[1].clone()),
            other => panic!("product atoms are pairs, found {other}"),
        }
    };
    let actions: Vec<FinFunction> = base
        .morphisms()
        .map(|f| {
            let (b2, b) = (base.dom(f), base.cod(f));
            FinFunction::from_assignment(values[b.0].clone(), values[b2.0].clone(), |atom| {
                let (xa, ya) = pair_parts(atom);
                let xi = x.values[b.0].position(&xa).expect("first part in value");
                let yi = y.values[b.0].position(&ya).expect("second part in value");
                Atom::Tuple(vec![
                    x.values[b2.0].elements[x.actions[f.0].map[xi]].clone(),
                    y.values[b2.0].elements[y.actions[f.0].map[yi]].clone(),
                ])
            })
        })
        .collect::<Result<_, _>>()?;
    let product = Presheaf::new(
        format!("({}x{})", x.name, y.name),
        Arc::clone(base),
        values,
        actions,
    )?;
    let proj = |which: usize, target: &Presheaf| -> Result<PresheafMap, PresheafError> {
        let components = base
            .objects()
            .map(|b| {
                FinFunction::from_assignment(
                    product.values[b.0].clone(),
                    target.values[b.0].clone(),
                    |atom| {
                        let (xa, ya) = pair_parts(atom);
                        if which == 0 {
                            xa
                        } else {
                            ya
                        }
                    },
                )
            })
            .collect::<Result<_, _>>()?;
        PresheafMap::new(product.clone(), target.clone(), components)
    };
    let p1 = proj(0, x)?;
    let p2 = proj(1, y)?;
    Ok((product, p1, p2))
}

/// Canonical text encoding of a component table, used as the atom of an
/// exponential value.
fn serialize_components(components: &[FinFunction]) -> String {
    let body: Vec<String> = components
        .iter()
        .map(|c| {
            c.map
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    format!("<{}>", body.join("|"))
}

/// The exponential `Z^Y` with its evaluation data: the value at `A` is
/// the set of presheaf maps `h_A × Y → Z`, kept alongside the atoms so
/// currying can evaluate them.
#[derive(Clone, Debug)]
pub struct Exponential {
    pub y: Presheaf,
    pub z: Presheaf,
    pub presheaf: Presheaf,
    /// `sections[A]` lists the maps `h_A × Y → Z` in atom order.
    pub sections: Vec<Vec<PresheafMap>>,
    /// `h_A × Y` per base object `A`.
    pub hom_products: Vec<Presheaf>,
}

pub fn exponential(y: &Presheaf, z: &Presheaf, caps: &Caps) -> Result<Exponential, PresheafError> {
    if !y.base.table_eq(&z.base) {
        return Err(PresheafError::BoundaryMismatch {
            what: "exponential factors must share the base".into(),
        });
    }
    let base = &y.base;
    let mut sections: Vec<Vec<PresheafMap>> = Vec::with_capacity(base.n_objects());
    let mut hom_products: Vec<Presheaf> = Vec::with_capacity(base.n_objects());
    let mut values: Vec<FinSet> = Vec::with_capacity(base.n_objects());
    for a in base.objects() {
        let h_a = representable(base, a);
        let (hp, _, _) = product_presheaf(&h_a, y, caps)?;
        let nats = enumerate_set_nats(&hp.as_diagram(), &z.as_diagram(), caps)?;
        let maps: Vec<PresheafMap> = nats
            .into_iter()
            .map(|components| PresheafMap::new(hp.clone(), z.clone(), components))
            .collect::<Result<_, _>>()?;
        values.push(FinSet::new(
            maps.iter()
                .map(|m| Atom::token(serialize_components(&m.components)))
                .collect(),
        )?);
        sections.push(maps);
        hom_products.push(hp);
    }
    // Action of f: A′ → A: precompose a section with h_f × 1_Y.
    let actions: Vec<FinFunction> = base
        .morphisms()
        .map(|f| {
            let (a2, a) = (base.dom(f), base.cod(f));
            let h_f = representable_map(base, f);
            let map = sections[a.0]
                .iter()
                .map(|section| {
                    let shifted: Vec<FinFunction> = base
                        .objects()
                        .map(|b| {
                            FinFunction::from_assignment(
                                hom_products[a2.0].values[b.0].clone(),
                                z.values[b.0].clone(),
                                |atom| {
                                    let (p_atom, y_atom) = match atom {
                                        Atom::Tuple(parts) => {
                                            (parts[0].clone(), parts[1].clone())
                                        }
                                        other => panic!("pair atom expected, found {other}"),
                                    };
                                    let p_pos = h_f.source.values[b.0]
                                        .position(&p_atom)
                                        .expect("first part is a hom element");
                                    let fp_atom = h_f.target.values[b.0].elements
                                        [h_f.components[b.0].map[p_pos]]
                                        .clone();
                                    let paired = Atom::Tuple(vec![fp_atom, y_atom]);
                                    let pos = hom_products[a.0].values[b.0]
                                        .position(&paired)
                                        .expect("pair is in the product");
                                    z.values[b.0].elements[section.components[b.0].map[pos]]
                                        .clone()
                                },
                            )
                            .expect("assignment lands in the value")
                        })
                        .collect();
                    sections[a2.0]
                        .iter()
                        .position(|cand| {
                            cand.components
                                .iter()
                                .zip(&shifted)
                                .all(|(x1, x2)| x1.same_function(x2))
                        })
                        .expect("the precomposed section is enumerated")
                })
                .collect();
            FinFunction::new(values[a.0].clone(), values[a2.0].clone(), map)
                .expect("positions are in range")
        })
        .collect();
    let presheaf = Presheaf::new(
        format!("{}^{}", z.name, y.name),
        Arc::clone(base),
        values,
        actions,
    )?;
    Ok(Exponential {
        y: y.clone(),
        z: z.clone(),
        presheaf,
        sections,
        hom_products,
    })
}

/// Transpose `α: X × Y → Z` to `X → Z^Y`: the image of `x ∈ X(A)` is the
/// section sending `(p: B → A, y)` to `α_B(X(p)(x), y)`.
pub fn curry(
    exp: &Exponential,
    x: &Presheaf,
    alpha: &PresheafMap,
    caps: &Caps,
) -> Result<PresheafMap, PresheafError> {
    let base = &x.base;
    let (xy, _, _) = product_presheaf(x, &exp.y, caps)?;
    if !alpha.source.same_values(&xy) || !alpha.target.same_values(&exp.z) {
        return Err(PresheafError::BoundaryMismatch {
            what: "the map to transpose must run from the product to the exponent base".into(),
        });
    }
    let components: Vec<FinFunction> = base
        .objects()
        .map(|a| {
            let map = (0..x.values[a.0].len())
                .map(|x_pos| {
                    let section_components: Vec<FinFunction> = base
                        .objects()
                        .map(|b| {
                            FinFunction::from_assignment(
                                exp.hom_products[a.0].values[b.0].clone(),
                                exp.z.values[b.0].clone(),
                                |atom| {
                                    let (p_atom, y_atom) = match atom {
                                        Atom::Tuple(parts) => {
                                            (parts[0].clone(), parts[1].clone())
                                        }
                                        other => panic!("pair atom expected, found {other}"),
                                    };
                                    let p_pos = base
                                        .hom(b, a)
                                        .iter()
                                        .position(|&m| {
                                            mor_atom(base, labels_unique(base), m) == p_atom
                                        })
                                        .expect("hom atom decodes");
                                    let p = base.hom(b, a)[p_pos];
                                    let restricted =
                                        x.values[b.0].elements[x.actions[p.0].map[x_pos]].clone();
                                    let paired = Atom::Tuple(vec![restricted, y_atom]);
                                    let pos = xy.values[b.0]
                                        .position(&paired)
                                        .expect("pair is in the product");
                                    exp.z.values[b.0].elements
                                        [alpha.components[b.0].map[pos]]
                                        .clone()
                                },
                            )
                            .expect("assignment lands in the value")
                        })
                        .collect();
                    exp.sections[a.0]
                        .iter()
                        .position(|cand| {
                            cand.components
                                .iter()
                                .zip(&section_components)
                                .all(|(x1, x2)| x1.same_function(x2))
                        })
                        .expect("the curried section is enumerated")
                })
                .collect();
            FinFunction::new(
                x.values[a.0].clone(),
                exp.presheaf.values[a.0].clone(),
                map,
            )
            .expect("positions are in range")
        })
        .collect();
    PresheafMap::new(x.clone(), exp.presheaf.clone(), components)
}

/// Transpose `γ: X → Z^Y` back to `X × Y → Z`: evaluate the section named
/// by `γ_B(x)` at the pair `(1_B, y)`.
pub fn uncurry(
    exp: &Exponential,
    x: &Presheaf,
    gamma: &PresheafMap,
    caps: &Caps,
) -> Result<PresheafMap, PresheafError> {
    let base = &x.base;
    if !gamma.source.same_values(x) || !gamma.target.same_values(&exp.presheaf) {
        return Err(PresheafError::BoundaryMismatch {
            what: "the map to transpose must land in the exponential".into(),
        });
    }
    let (xy, _, _) = product_presheaf(x, &exp.y, caps)?;
    let unique = labels_unique(base);
    let components: Vec<FinFunction> = base
        .objects()
        .map(|b| {
            FinFunction::from_assignment(xy.values[b.0].clone(), exp.z.values[b.0].clone(), |atom| {
                let (x_atom, y_atom) = match atom {
                    Atom::Tuple(parts) => (parts[0].clone(), parts[1].clone()),
                    other => panic!("pair atom expected, found {other}"),
                };
                let x_pos = x.values[b.0].position(&x_atom).expect("element in value");
                let section = &exp.sections[b.0][gamma.components[b.0].map[x_pos]];
                let id_atom = mor_atom(base, unique, base.id(b));
                let paired = Atom::Tuple(vec![id_atom, y_atom]);
                let pos = exp.hom_products[b.0].values[b.0]
                    .position(&paired)
                    .expect("pair is in the product");
                exp.z.values[b.0].elements[section.components[b.0].map[pos]].clone()
            })
            .expect("assignment lands in the value")
        })
        .collect();
    PresheafMap::new(xy, exp.z.clone(), components)
}

/// The subobject classifier: values are sieves (precomposition-closed
/// sets of arrows into an object), the action is pullback, and truth
/// picks the maximal sieve.
#[derive(Clone, Debug)]
pub struct Classifier {
    pub omega: Presheaf,
    pub terminal: Presheaf,
    /// The transformation from the terminal presheaf naming the maximal
    /// sieve at every object.
    pub truth: PresheafMap,
    /// `sieves[A]` lists each sieve at `A` as a sorted set of base
    /// morphisms, in the order matching the atoms of `omega` at `A`.
    pub sieves: Vec<Vec<Vec<Mor>>>,
}

/// All sieves at `a`: subsets of the arrows into `a` closed under
/// precomposition, in lexicographic order of their member index lists.
fn sieves_at(
    base: &FiniteCategory,
    a: Obj,
    caps: &Caps,
) -> Result<Vec<Vec<Mor>>, PresheafError> {
    let arrows: Vec<Mor> = base.morphisms().filter(|&m| base.cod(m) == a).collect();
    let n = arrows.len();
    if n >= usize::BITS as usize || (1usize << n) > caps.max_enum {
        return Err(PresheafError::CapExceeded {
            what: format!("sieve enumeration at {}", base.obj_label(a)),
            needed: 1usize.checked_shl(n as u32).unwrap_or(usize::MAX),
            cap: caps.max_enum,
        });
    }
    let mut out: Vec<Vec<Mor>> = Vec::new();
    for mask in 0usize..(1 << n) {
        let members: Vec<Mor> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| arrows[i])
            .collect();
        let closed = members.iter().all(|&h| {
            base.morphisms()
                .filter(|&g| base.cod(g) == base.dom(h))
                .all(|g| {
                    let hg = base.compose(h, g).expect("h∘g is defined");
                    members.contains(&hg)
                })
        });
        if closed {
            out.push(members);
        }
    }
    out.sort();
    Ok(out)
}

pub fn subobject_classifier(
    base: &Arc<FiniteCategory>,
    caps: &Caps,
) -> Result<Classifier, PresheafError> {
    let unique = labels_unique(base);
    let sieve_atom = |members: &[Mor]| -> Atom {
        let names: Vec<String> = members
            .iter()
            .map(|&m| mor_atom(base, unique, m).to_string())
            .collect();
        Atom::token(format!("{{{}}}", names.join(",")))
    };
    let sieves: Vec<Vec<Vec<Mor>>> = base
        .objects()
        .map(|a| sieves_at(base, a, caps))
        .collect::<Result<_, _>>()?;
    let values: Vec<FinSet> = sieves
        .iter()
        .map(|list| FinSet::new(list.iter().map(|s| sieve_atom(s)).collect()))
        .collect::<Result<_, _>>()?;
    // Pullback along f: B → A: keep the arrows whose pasting with f lies
    // in the sieve.
    let actions: Vec<FinFunction> = base
        .morphisms()
        .map(|f| {
            let (b, a) = (base.dom(f), base.cod(f));
            let map = sieves[a.0]
                .iter()
                .map(|s| {
                    let mut pulled: Vec<Mor> = base
                        .morphisms()
                        .filter(|&g| {
                            base.cod(g) == b
                                && s.contains(&base.compose(f, g).expect("f∘g is defined"))
                        })
                        .collect();
                    pulled.sort();
                    sieves[b.0]
                        .iter()
                        .position(|t| *t == pulled)
                        .expect("a pullback of a sieve is a sieve")
                })
                .collect();
            FinFunction::new(values[a.0].clone(), values[b.0].clone(), map)
                .expect("positions are in range")
        })
        .collect();
    let omega = Presheaf::new("Omega", Arc::clone(base), values, actions)?;
    let terminal = terminal_presheaf(base);
    let truth_components: Vec<FinFunction> = base
        .objects()
        .map(|a| {
            let mut maximal: Vec<Mor> =
                base.morphisms().filter(|&m| base.cod(m) == a).collect();
            maximal.sort();
            let pos = sieves[a.0]
                .iter()
                .position(|s| *s == maximal)
                .expect("the maximal sieve is enumerated");
            FinFunction::new(
                terminal.values[a.0].clone(),
                omega.values[a.0].clone(),
                vec![pos],
            )
            .expect("position is in range")
        })
        .collect();
    let truth = PresheafMap::new(terminal.clone(), omega.clone(), truth_components)?;
    Ok(Classifier {
        omega,
        terminal,
        truth,
        sieves,
    })
}

/// Classify an action-closed family of subsets `S ⊆ X`: the component at
/// `A` sends `x` to the sieve of arrows that restrict `x` into `S`.
pub fn classify_subpresheaf(
    classifier: &Classifier,
    x: &Presheaf,
    members: &[Vec<bool>],
) -> Result<PresheafMap, PresheafError> {
    let base = &x.base;
    if members.len() != base.n_objects()
        || members
            .iter()
            .zip(&x.values)
            .any(|(row, v)| row.len() != v.len())
    {
        return Err(PresheafError::BoundaryMismatch {
            what: "one membership flag per element".into(),
        });
    }
    // Closure under the actions.
    for f in base.morphisms() {
        let (b, a) = (base.dom(f), base.cod(f));
        for (pos, &inside) in members[a.0].iter().enumerate() {
            if inside && !members[b.0][x.actions[f.0].map[pos]] {
                return Err(PresheafError::NotASubpresheaf {
                    object: a.0,
                    atom: x.values[a.0].elements[pos].to_string(),
                });
            }
        }
    }
    let components: Vec<FinFunction> = base
        .objects()
        .map(|a| {
            let map = (0..x.values[a.0].len())
                .map(|pos| {
                    let mut sieve: Vec<Mor> = base
                        .morphisms()
                        .filter(|&f| {
                            base.cod(f) == a && members[base.dom(f).0][x.actions[f.0].map[pos]]
                        })
                        .collect();
                    sieve.sort();
                    let idx = classifier.sieves[a.0]
                        .iter()
                        .position(|s| *s == sieve)
                        .expect("the classifying family is a sieve");
                    // The pullback condition: membership is equivalent to
                    // classifying as the maximal sieve.
                    let maximal = sieve.len()
                        == base.morphisms().filter(|&m| base.cod(m) == a).count();
                    assert_eq!(
                        members[a.0][pos], maximal,
                        "membership must match the maximal sieve"
                    );
                    idx
                })
                .collect();
            FinFunction::new(
                x.values[a.0].clone(),
                classifier.omega.values[a.0].clone(),
                map,
            )
            .expect("positions are in range")
        })
        .collect();
    PresheafMap::new(x.clone(), classifier.omega.clone(), components)
}

/// Every action-closed family of subsets of `X`, as membership flags per
/// object, in odometer order.
pub fn subpresheaves(x: &Presheaf, caps: &Caps) -> Result<Vec<Vec<Vec<bool>>>, PresheafError> {
    let base = &x.base;
    let sizes: Vec<usize> = x.values.iter().map(|v| v.len()).collect();
    let total: usize = sizes.iter().try_fold(1usize, |acc, &s| {
        if s >= usize::BITS as usize {
            return None;
        }
        acc.checked_mul(1usize << s)
    }).ok_or_else(|| PresheafError::CapExceeded {
        what: "subpresheaf enumeration".into(),
        needed: usize::MAX,
        cap: caps.max_enum,
    })?;
    if total > caps.max_enum {
        return Err(PresheafError::CapExceeded {
            what: "subpresheaf enumeration".into(),
            needed: total,
            cap: caps.max_enum,
        });
    }
    let mut out = Vec::new();
    let mut masks = vec![0usize; base.n_objects()];
    loop {
        let members: Vec<Vec<bool>> = sizes
            .iter()
            .enumerate()
            .map(|(o, &s)| (0..s).map(|i| masks[o] & (1 << i) != 0).collect())
            .collect();
        let closed = base.morphisms().all(|f| {
            let (b, a) = (base.dom(f), base.cod(f));
            (0..sizes[a.0])
                .all(|pos| !members[a.0][pos] || members[b.0][x.actions[f.0].map[pos]])
        });
        if closed {
            out.push(members);
        }
        // Odometer step.
        let mut o = 0;
        loop {
            if o == masks.len() {
                return Ok(out);
            }
            masks[o] += 1;
            if masks[o] < (1usize << sizes[o]) {
                break;
            }
            masks[o] = 0;
            o += 1;
        }
    }
}

/// The two-sided hom functor as a covariant set diagram on
/// `base^op × base`: the value at `(A, B)` is `hom(A, B)` and the action
/// of `(f, g)` is `p ↦ g∘p∘f`.
pub fn hom_bifunctor(
    base: &Arc<FiniteCategory>,
    caps: &Caps,
) -> Result<SetFunctor, PresheafError> {
    let op = base.opposite();
    let prod = Arc::new(crate::cat::product_category(&op, base, caps)?);
    let unique = labels_unique(base);
    let nb = base.n_objects();
    let mb = base.n_morphisms();
    let sets: Vec<FinSet> = (0..nb * nb)
        .map(|k| {
            let (a, b) = (Obj(k / nb), Obj(k % nb));
            FinSet::new(
                base.hom(a, b)
                    .into_iter()
                    .map(|m| mor_atom(base, unique, m))
                    .collect(),
            )
            .expect("distinct morphisms get distinct atoms")
        })
        .collect();
    let maps: Vec<FinFunction> = (0..mb * mb)
        .map(|k| {
            // Pair morphism (f, g): f read in the reversed base, g in the
            // base itself.
            let (f, g) = (Mor(k / mb), Mor(k % mb));
            let dom_pair = prod.dom(Mor(k));
            let cod_pair = prod.cod(Mor(k));
            let (a, b) = (Obj(dom_pair.0 / nb), Obj(dom_pair.0 % nb));
            let (a2, b2) = (Obj(cod_pair.0 / nb), Obj(cod_pair.0 % nb));
            let dom_homs = base.hom(a, b);
            let cod_homs = base.hom(a2, b2);
            let map = dom_homs
                .iter()
                .map(|&p| {
                    let gp = base.compose(g, p).expect("g∘p is defined");
                    let gpf = base.compose(gp, f).expect("g∘p∘f is defined");
                    cod_homs
                        .iter()
                        .position(|&q| q == gpf)
                        .expect("composite lands in the hom-set")
                })
                .collect();
            FinFunction::new(sets[dom_pair.0].clone(), sets[cod_pair.0].clone(), map)
                .expect("positions are in range")
        })
        .collect();
    Ok(SetFunctor::new(
        format!("Hom_{}", base.name),
        prod,
        sets,
        maps,
    )?)
}

/// Apply the covariant hom functor `hom(a, −)` to a diagram: the shape is
/// unchanged and each object's value becomes a hom-set.
pub fn apply_hom_to_diagram(a: Obj, d: &Functor) -> Result<SetFunctor, PresheafError> {
    let c = &d.target;
    let unique = labels_unique(c);
    let sets: Vec<FinSet> = d
        .source
        .objects()
        .map(|i| {
            FinSet::new(
                c.hom(a, d.on_obj(i))
                    .into_iter()
                    .map(|m| mor_atom(c, unique, m))
                    .collect(),
            )
            .expect("distinct morphisms get distinct atoms")
        })
        .collect();
    let maps: Vec<FinFunction> = d
        .source
        .morphisms()
        .map(|u| {
            let (i, j) = (d.source.dom(u), d.source.cod(u));
            let dom_homs = c.hom(a, d.on_obj(i));
            let cod_homs = c.hom(a, d.on_obj(j));
            let map = dom_homs
                .iter()
                .map(|&p| {
                    let up = c.compose(d.on_mor(u), p).expect("D(u)∘p is defined");
                    cod_homs
                        .iter()
                        .position(|&q| q == up)
                        .expect("composite lands in the hom-set")
                })
                .collect();
            FinFunction::new(sets[i.0].clone(), sets[j.0].clone(), map)
                .expect("positions are in range")
        })
        .collect();
    Ok(SetFunctor::new(
        format!("hom({},{})", c.obj_label(a), d.name),
        Arc::clone(&d.source),
        sets,
        maps,
    )?)
}

/// Apply `hom(a, −)` to a cone over the diagram: the vertex becomes
/// `hom(a, vertex)` and each leg acts by postcomposition.
pub fn apply_hom_to_cone(
    a: Obj,
    d: &Functor,
    cone: &Cone,
    image: &SetFunctor,
) -> Result<SetCone, PresheafError> {
    let c = &d.target;
    let unique = labels_unique(c);
    let vertex = FinSet::new(
        c.hom(a, cone.vertex)
            .into_iter()
            .map(|m| mor_atom(c, unique, m))
            .collect(),
    )?;
    let legs: Vec<FinFunction> = d
        .source
        .objects()
        .map(|i| {
            let vertex_homs = c.hom(a, cone.vertex);
            let leg_homs = c.hom(a, d.on_obj(i));
            let map = vertex_homs
                .iter()
                .map(|&p| {
                    let lp = c.compose(cone.legs[i.0], p).expect("leg∘p is defined");
                    leg_homs
                        .iter()
                        .position(|&q| q == lp)
                        .expect("composite lands in the hom-set")
                })
                .collect();
            FinFunction::new(vertex.clone(), image.sets[i.0].clone(), map)
                .expect("positions are in range")
        })
        .collect();
    Ok(SetCone { vertex, legs })
}

/// The full subcategory of the presheaf category spanned by the given
/// presheaves: all maps between each pair, composed componentwise.
pub fn presheaf_fragment_category(
    name: impl Into<String>,
    presheaves: &[Presheaf],
    caps: &Caps,
) -> Result<(Arc<FiniteCategory>, Vec<PresheafMap>), PresheafError> {
    let name = name.into();
    if presheaves.is_empty() {
        return Err(PresheafError::BoundaryMismatch {
            what: "a fragment needs at least one presheaf".into(),
        });
    }
    let base = &presheaves[0].base;
    if presheaves.iter().any(|p| !p.base.table_eq(base)) {
        return Err(PresheafError::BoundaryMismatch {
            what: "all fragment presheaves must share the base".into(),
        });
    }
    if presheaves.len() > caps.max_objects {
        return Err(PresheafError::CapExceeded {
            what: format!("{name} objects"),
            needed: presheaves.len(),
            cap: caps.max_objects,
        });
    }
    let mut maps: Vec<PresheafMap> = Vec::new();
    let mut data: Vec<MorData> = Vec::new();
    let mut identities = vec![Mor(0); presheaves.len()];
    for (i, src) in presheaves.iter().enumerate() {
        for (j, dst) in presheaves.iter().enumerate() {
            for components in
                enumerate_set_nats(&src.as_diagram(), &dst.as_diagram(), caps)?
            {
                let idx = maps.len();
                if idx + 1 > caps.max_morphisms {
                    return Err(PresheafError::CapExceeded {
                        what: format!("{name} morphisms"),
                        needed: idx + 1,
                        cap: caps.max_morphisms,
                    });
                }
                let nat = PresheafMap::new(src.clone(), dst.clone(), components)?;
                if i == j && nat.same_components(&PresheafMap::identity(src)) {
                    identities[i] = Mor(idx);
                }
                data.push(MorData {
                    dom: Obj(i),
                    cod: Obj(j),
                    label: format!("t{idx}"),
                });
                maps.push(nat);
            }
        }
    }
    let m = maps.len();
    let mut table = vec![None; m * m];
    for second in 0..m {
        for first in 0..m {
            if data[first].cod != data[second].dom {
                continue;
            }
            let composite = maps[first].then(&maps[second])?;
            let k = (0..m)
                .find(|&k| {
                    data[k].dom == data[first].dom
                        && data[k].cod == data[second].cod
                        && maps[k].same_components(&composite)
                })
                .expect("the composite map is enumerated");
            table[second * m + first] = Some(Mor(k));
        }
    }
    let category = Arc::new(FiniteCategory::new(
        name,
        presheaves.iter().map(|p| p.name.clone()).collect(),
        data,
        identities,
        table,
    )?);
    Ok((category, maps))
}

/// The Yoneda embedding into a fragment of the presheaf category spanned
/// by all representables plus any extra presheaves (listed after them).
pub fn yoneda_embedding(
    base: &Arc<FiniteCategory>,
    extra: &[Presheaf],
    caps: &Caps,
) -> Result<
    (
        Arc<FiniteCategory>,
        Functor,
        Vec<Presheaf>,
        Vec<PresheafMap>,
    ),
    PresheafError,
> {
    let mut presheaves: Vec<Presheaf> =
        base.objects().map(|a| representable(base, a)).collect();
    presheaves.extend(extra.iter().cloned());
    let (category, maps) = presheaf_fragment_category(
        format!("Psh({})", base.name),
        &presheaves,
        caps,
    )?;
    let morphism_map: Vec<Mor> = base
        .morphisms()
        .map(|f| {
            let h_f = representable_map(base, f);
            let (i, j) = (base.dom(f), base.cod(f));
            let idx = (0..maps.len())
                .find(|&k| {
                    category.dom(Mor(k)) == Obj(i.0)
                        && category.cod(Mor(k)) == Obj(j.0)
                        && maps[k].same_components(&h_f)
                })
                .expect("the induced map is enumerated");
            Mor(idx)
        })
        .collect();
    let embedding = Functor::new(
        format!("yoneda_{}", base.name),
        Arc::clone(base),
        Arc::clone(&category),
        base.objects().map(|a| Obj(a.0)).collect(),
        morphism_map,
    )?;
    Ok((category, embedding, presheaves, maps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::from_poset;
    use crate::corpus;
    use crate::functor::{classify_functor, functor_category};
    use crate::limits::{
        limit_cat, preservation_report, verify_set_limit, ConeSide, DEFAULT_SAMPLE_BOUND,
    };

    fn caps() -> Caps {
        Caps::default()
    }

    /// The walking-arrow presheaf example: X(a) = {p, q}, X(b) = {r},
    /// with the restriction along u sending r to p.
    fn walking_example() -> (Arc<FiniteCategory>, Presheaf) {
        let two = corpus::two();
        let xa = FinSet::new(vec![Atom::token("p"), Atom::token("q")]).unwrap();
        let xb = FinSet::new(vec![Atom::token("r")]).unwrap();
        let actions = vec![
            FinFunction::identity(&xa),
            FinFunction::identity(&xb),
            FinFunction::new(xb.clone(), xa.clone(), vec![0]).unwrap(),
        ];
        let x = Presheaf::new("X", two.clone(), vec![xa, xb], actions).unwrap();
        (two, x)
    }

    #[test]
    fn representable_values_on_the_arrow_category() {
        let two = corpus::two();
        let b = two.obj_by_label("b").unwrap();
        let h_b = representable(&two, b);
        assert_eq!(h_b.values[0].len(), 1, "one map a → b");
        assert_eq!(h_b.values[1].len(), 1, "only the identity at b");
        assert_eq!(h_b.values[0].elements[0].to_string(), "f");
        let a = two.obj_by_label("a").unwrap();
        let h_a = representable(&two, a);
        assert_eq!(h_a.values[0].len(), 1);
        assert_eq!(h_a.values[1].len(), 0, "no maps b → a");
    }

    #[test]
    fn identity_induces_identity_map() {
        let two = corpus::two();
        for a in two.objects() {
            let h_f = representable_map(&two, two.id(a));
            assert!(h_f.same_components(&PresheafMap::identity(&representable(&two, a))));
        }
    }

    #[test]
    fn monoid_representable_is_the_right_regular_representation() {
        let z3 = corpus::z_mod(3);
        let h = representable(&z3, Obj(0));
        assert_eq!(h.values[0].len(), 3);
        // The action of m sends p to p∘m; in the additive reading that is
        // right translation by m.
        for m in z3.morphisms() {
            for (pos, &p) in z3.hom(Obj(0), Obj(0)).iter().enumerate() {
                let expected = z3.compose(p, m).unwrap();
                let got = z3.hom(Obj(0), Obj(0))[h.actions[m.0].map[pos]];
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn forward_of_identity_is_the_identity_element() {
        let two = corpus::two();
        let b = two.obj_by_label("b").unwrap();
        let h_b = representable(&two, b);
        let alpha = PresheafMap::identity(&h_b);
        assert_eq!(yoneda_forward(&alpha, b).unwrap().to_string(), "1_b");
    }

    #[test]
    fn forward_of_an_induced_map_is_the_inducing_morphism() {
        let two = corpus::two();
        let u = two.hom(Obj(0), Obj(1))[0];
        let alpha = representable_map(&two, u);
        assert_eq!(
            yoneda_forward(&alpha, two.dom(u)).unwrap().to_string(),
            "f"
        );
    }

    #[test]
    fn backward_of_the_identity_element_is_the_identity_map() {
        let d6 = corpus::div_poset(6);
        for a in d6.objects() {
            let h_a = representable(&d6, a);
            let id_atom = h_a.values[a.0]
                .position(&Atom::token(d6.mor_label(d6.id(a))))
                .map(|p| h_a.values[a.0].elements[p].clone())
                .unwrap();
            let nat = yoneda_backward(&h_a, a, &id_atom).unwrap();
            assert!(nat.same_components(&PresheafMap::identity(&h_a)));
        }
    }

    #[test]
    fn backward_evaluates_restrictions() {
        let (two, x) = walking_example();
        let b = two.obj_by_label("b").unwrap();
        let nat = yoneda_backward(&x, b, &Atom::token("r")).unwrap();
        // Component at a sends u to (Xu)(r) = p.
        assert_eq!(
            nat.target.values[0].elements[nat.components[0].map[0]].to_string(),
            "p"
        );
        // Unknown elements are rejected.
        match yoneda_backward(&x, b, &Atom::token("missing")) {
            Err(PresheafError::ElementNotInValue { object, .. }) => assert_eq!(object, b.0),
            other => panic!("expected a missing element, got {other:?}"),
        }
    }

    #[test]
    fn yoneda_correspondence_is_bijective() {
        let caps = caps();
        let (two, x) = walking_example();
        for a in two.objects() {
            let h_a = representable(&two, a);
            let nats =
                enumerate_set_nats(&h_a.as_diagram(), &x.as_diagram(), &caps).unwrap();
            assert_eq!(
                nats.len(),
                x.values[a.0].len(),
                "as many transformations as elements"
            );
            for components in nats {
                let alpha = PresheafMap::new(h_a.clone(), x.clone(), components).unwrap();
                let elem = yoneda_forward(&alpha, a).unwrap();
                let back = yoneda_backward(&x, a, &elem).unwrap();
                assert!(back.same_components(&alpha), "round trip is the identity");
            }
            for elem in x.values[a.0].elements.clone() {
                let alpha = yoneda_backward(&x, a, &elem).unwrap();
                assert_eq!(yoneda_forward(&alpha, a).unwrap(), elem);
            }
        }
    }

    #[test]
    fn yoneda_bijection_is_natural_in_both_slots() {
        let (two, x) = walking_example();
        let u = two.hom(Obj(0), Obj(1))[0];
        let (a, b) = (two.dom(u), two.cod(u));
        let h_u = representable_map(&two, u);
        // Naturality in the object slot: restricting after evaluating
        // equals evaluating the precomposed transformation.
        for elem in x.values[b.0].elements.clone() {
            let alpha = yoneda_backward(&x, b, &elem).unwrap();
            let precomposed = h_u.then(&alpha).unwrap();
            let lhs = yoneda_forward(&precomposed, a).unwrap();
            let pos = x.values[b.0].position(&elem).unwrap();
            let rhs = x.values[a.0].elements[x.actions[u.0].map[pos]].clone();
            assert_eq!(lhs, rhs);
        }
        // Naturality in the presheaf slot: postcomposing with θ commutes
        // with evaluation. θ: X → X collapses q to p.
        let xa = x.values[0].clone();
        let theta = PresheafMap::new(
            x.clone(),
            x.clone(),
            vec![
                FinFunction::new(xa.clone(), xa.clone(), vec![0, 0]).unwrap(),
                FinFunction::identity(&x.values[1]),
            ],
        )
        .unwrap();
        for a in two.objects() {
            for elem in x.values[a.0].elements.clone() {
                let alpha = yoneda_backward(&x, a, &elem).unwrap();
                let lhs = yoneda_forward(&alpha.then(&theta).unwrap(), a).unwrap();
                let pos = x.values[a.0].position(&elem).unwrap();
                let rhs = x.values[a.0].elements[theta.components[a.0].map[pos]].clone();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn representables_are_their_own_representations() {
        let d6 = corpus::div_poset(6);
        for a in d6.objects() {
            let h_a = representable(&d6, a);
            match find_representation(&h_a).unwrap() {
                Representation::Found {
                    object, element, ..
                } => {
                    assert_eq!(object, a);
                    assert_eq!(element.to_string(), d6.mor_label(d6.id(a)));
                }
                Representation::NotRepresentable => panic!("h_A must represent itself"),
            }
        }
    }

    #[test]
    fn sum_of_two_representables_is_not_representable() {
        // On a discrete base the representables are one-point-at-one-object
        // presheaves; their sum has a two-point value no hom-set matches.
        let d = corpus::discrete(2);
        let s2 = FinSet::new(vec![Atom::token("k1"), Atom::token("k2")]).unwrap();
        let empty = FinSet::new(vec![]).unwrap();
        let x = Presheaf::new(
            "hK+hK",
            d.clone(),
            vec![s2.clone(), empty.clone()],
            vec![FinFunction::identity(&s2), FinFunction::identity(&empty)],
        )
        .unwrap();
        match find_representation(&x).unwrap() {
            Representation::NotRepresentable => {}
            other => panic!("expected no representation, got {other:?}"),
        }
    }

    #[test]
    fn relabelled_representable_is_found_with_its_isomorphism() {
        let two = corpus::two();
        let za = FinSet::new(vec![Atom::token("z")]).unwrap();
        let zb = FinSet::new(vec![Atom::token("w")]).unwrap();
        let x = Presheaf::new(
            "relabelled",
            two.clone(),
            vec![za.clone(), zb.clone()],
            vec![
                FinFunction::identity(&za),
                FinFunction::identity(&zb),
                FinFunction::new(zb, za, vec![0]).unwrap(),
            ],
        )
        .unwrap();
        match find_representation(&x).unwrap() {
            Representation::Found {
                object,
                element,
                iso,
                all,
            } => {
                assert_eq!(two.obj_label(object), "b");
                assert_eq!(element.to_string(), "w");
                assert!(iso.is_iso());
                assert_eq!(all.len(), 1);
            }
            Representation::NotRepresentable => panic!("X is a renamed representable"),
        }
    }

    #[test]
    fn elements_of_a_constant_point_presheaf_form_the_base() {
        let caps = caps();
        let d = corpus::discrete(2);
        let t = terminal_presheaf(&d);
        let el = category_of_elements(&t, &caps).unwrap();
        assert_eq!(el.category.n_objects(), 2);
        assert_eq!(el.category.n_morphisms(), 2);
    }

    #[test]
    fn elements_of_a_discrete_presheaf_count_its_points() {
        let caps = caps();
        let d = corpus::discrete(2);
        let sk = FinSet::new(
            ["x1", "x2", "x3"].iter().map(|s| Atom::token(*s)).collect(),
        )
        .unwrap();
        let sl = FinSet::new(["y1", "y2"].iter().map(|s| Atom::token(*s)).collect()).unwrap();
        let x = Presheaf::new(
            "five",
            d.clone(),
            vec![sk.clone(), sl.clone()],
            vec![FinFunction::identity(&sk), FinFunction::identity(&sl)],
        )
        .unwrap();
        let el = category_of_elements(&x, &caps).unwrap();
        assert_eq!(el.category.n_objects(), 5);
        assert_eq!(el.category.n_morphisms(), 5, "only identities");
    }

    #[test]
    fn elements_of_a_representable_have_a_terminal_identity_pair() {
        let caps = caps();
        let two = corpus::two();
        let b = two.obj_by_label("b").unwrap();
        let h_b = representable(&two, b);
        let el = category_of_elements(&h_b, &caps).unwrap();
        assert_eq!(el.category.n_objects(), 2, "(a,u) and (b,1_b)");
        assert_eq!(el.category.n_morphisms(), 3, "two identities plus one arrow");
        let terminal = crate::cat::find_universal_object(
            &el.category,
            crate::cat::UniversalKind::Terminal,
        );
        let lbl = el.category.obj_label(terminal.unwrap()).to_string();
        assert_eq!(lbl, "(b,1_b)");
    }

    #[test]
    fn density_realizes_a_discrete_presheaf_as_a_sum_of_representables() {
        let caps = caps();
        let d = corpus::discrete(2);
        let sk = FinSet::new(
            ["x1", "x2", "x3"].iter().map(|s| Atom::token(*s)).collect(),
        )
        .unwrap();
        let sl = FinSet::new(["y1", "y2"].iter().map(|s| Atom::token(*s)).collect()).unwrap();
        let x = Presheaf::new(
            "five",
            d.clone(),
            vec![sk.clone(), sl.clone()],
            vec![FinFunction::identity(&sk), FinFunction::identity(&sl)],
        )
        .unwrap();
        let den = density(&x, &caps).unwrap();
        assert_eq!(den.legs.len(), 5, "one representable per element");
        assert!(den.comparison.is_iso());
        assert_eq!(den.colimit.values[0].len(), 3);
        assert_eq!(den.colimit.values[1].len(), 2);
    }

    #[test]
    fn density_collapses_on_a_representable() {
        let caps = caps();
        let two = corpus::two();
        let b = two.obj_by_label("b").unwrap();
        let h_b = representable(&two, b);
        let den = density(&h_b, &caps).unwrap();
        assert!(den.comparison.is_iso());
        assert!(den.colimit.same_values(&den.comparison.source));
        assert_eq!(den.colimit.values[0].len(), 1);
        assert_eq!(den.colimit.values[1].len(), 1);
    }

    #[test]
    fn density_of_the_empty_presheaf_is_empty() {
        let caps = caps();
        let two = corpus::two();
        let x = empty_presheaf(&two);
        let den = density(&x, &caps).unwrap();
        assert_eq!(den.elements.category.n_objects(), 0);
        assert!(den.comparison.is_iso());
        assert!(den.colimit.values.iter().all(|v| v.len() == 0));
    }

    #[test]
    fn exponential_is_pointwise_on_a_discrete_base() {
        let caps = caps();
        let d = corpus::discrete(2);
        let sy1 = FinSet::new(["y1", "y2"].iter().map(|s| Atom::token(*s)).collect()).unwrap();
        let sy2 = FinSet::new(vec![Atom::token("y3")]).unwrap();
        let sz1 = FinSet::new(
            ["z1", "z2", "z3"].iter().map(|s| Atom::token(*s)).collect(),
        )
        .unwrap();
        let sz2 = FinSet::new(["z4", "z5"].iter().map(|s| Atom::token(*s)).collect()).unwrap();
        let y = Presheaf::new(
            "Y",
            d.clone(),
            vec![sy1.clone(), sy2.clone()],
            vec![FinFunction::identity(&sy1), FinFunction::identity(&sy2)],
        )
        .unwrap();
        let z = Presheaf::new(
            "Z",
            d.clone(),
            vec![sz1.clone(), sz2.clone()],
            vec![FinFunction::identity(&sz1), FinFunction::identity(&sz2)],
        )
        .unwrap();
        let exp = exponential(&y, &z, &caps).unwrap();
        assert_eq!(exp.presheaf.values[0].len(), 9, "3^2");
        assert_eq!(exp.presheaf.values[1].len(), 2, "2^1");
    }

    #[test]
    fn exponential_by_the_terminal_is_the_base() {
        let caps = caps();
        let (two, z) = walking_example();
        let t = terminal_presheaf(&two);
        let exp = exponential(&t, &z, &caps).unwrap();
        // Evaluate each section at (identity, *) to land back in Z.
        let unique = super::labels_unique(&two);
        let components: Vec<FinFunction> = two
            .objects()
            .map(|b| {
                let map = exp.sections[b.0]
                    .iter()
                    .map(|section| {
                        let paired = Atom::Tuple(vec![
                            super::mor_atom(&two, unique, two.id(b)),
                            Atom::token("*"),
                        ]);
                        let pos = exp.hom_products[b.0].values[b.0].position(&paired).unwrap();
                        section.components[b.0].map[pos]
                    })
                    .collect();
                FinFunction::new(
                    exp.presheaf.values[b.0].clone(),
                    z.values[b.0].clone(),
                    map,
                )
                .unwrap()
            })
            .collect();
        let eval = PresheafMap::new(exp.presheaf.clone(), z.clone(), components).unwrap();
        assert!(eval.is_iso(), "Z^1 ≅ Z");
    }

    #[test]
    fn currying_is_a_natural_bijection() {
        let caps = caps();
        let (two, x) = walking_example();
        let b = two.obj_by_label("b").unwrap();
        let y = representable(&two, b);
        let z = x.clone();
        let exp = exponential(&y, &z, &caps).unwrap();
        let (xy, _, _) = product_presheaf(&x, &y, &caps).unwrap();
        let lower = enumerate_set_nats(&xy.as_diagram(), &z.as_diagram(), &caps).unwrap();
        let upper =
            enumerate_set_nats(&x.as_diagram(), &exp.presheaf.as_diagram(), &caps).unwrap();
        assert_eq!(lower.len(), upper.len(), "hom-set sizes agree");
        // Round trips in both directions.
        for components in &lower {
            let alpha = PresheafMap::new(xy.clone(), z.clone(), components.clone()).unwrap();
            let gamma = curry(&exp, &x, &alpha, &caps).unwrap();
            let back = uncurry(&exp, &x, &gamma, &caps).unwrap();
            assert!(back.same_components(&alpha));
        }
        let mut seen: Vec<PresheafMap> = Vec::new();
        for components in &upper {
            let gamma =
                PresheafMap::new(x.clone(), exp.presheaf.clone(), components.clone()).unwrap();
            let alpha = uncurry(&exp, &x, &gamma, &caps).unwrap();
            let again = curry(&exp, &x, &alpha, &caps).unwrap();
            assert!(again.same_components(&gamma));
            assert!(
                seen.iter().all(|s| !s.same_components(&alpha)),
                "transposition is injective"
            );
            seen.push(alpha);
        }
    }

    #[test]
    fn currying_commutes_with_reindexing() {
        // Naturality in the first slot: transpose then precompose equals
        // precompose the product map then transpose.
        let caps = caps();
        let (two, x) = walking_example();
        let b = two.obj_by_label("b").unwrap();
        let y = representable(&two, b);
        let z = x.clone();
        let exp = exponential(&y, &z, &caps).unwrap();
        // ξ: h_b → X classifies r.
        let xi = yoneda_backward(&x, b, &Atom::token("r")).unwrap();
        let x2 = xi.source.clone();
        let (xy, _, _) = product_presheaf(&x, &y, &caps).unwrap();
        let (x2y, _, _) = product_presheaf(&x2, &y, &caps).unwrap();
        // ξ × 1 on the products.
        let xi_times: Vec<FinFunction> = two
            .objects()
            .map(|o| {
                FinFunction::from_assignment(
                    x2y.values[o.0].clone(),
                    xy.values[o.0].clone(),
                    |atom| match atom {
                        Atom::Tuple(parts) => {
                            let p = x2.values[o.0].position(&parts[0]).unwrap();
                            Atom::Tuple(vec![
                                x.values[o.0].elements[xi.components[o.0].map[p]].clone(),
                                parts[1].clone(),
                            ])
                        }
                        other => panic!("pair atom expected, found {other}"),
                    },
                )
                .unwrap()
            })
            .collect();
        let xi_prod = PresheafMap::new(x2y.clone(), xy.clone(), xi_times).unwrap();
        for components in
            enumerate_set_nats(&xy.as_diagram(), &z.as_diagram(), &caps).unwrap()
        {
            let alpha = PresheafMap::new(xy.clone(), z.clone(), components).unwrap();
            let left = curry(&exp, &x2, &xi_prod.then(&alpha).unwrap(), &caps).unwrap();
            let right = xi.then(&curry(&exp, &x, &alpha, &caps).unwrap()).unwrap();
            assert!(left.same_components(&right));
        }
    }

    #[test]
    fn sieve_counts_on_the_arrow_category() {
        let caps = caps();
        let two = corpus::two();
        let cls = subobject_classifier(&two, &caps).unwrap();
        assert_eq!(cls.omega.values[0].len(), 2, "sieves at a");
        assert_eq!(cls.omega.values[1].len(), 3, "sieves at b");
        // Truth picks the maximal sieve at each object.
        for o in two.objects() {
            let pos = cls.truth.components[o.0].map[0];
            let expected: Vec<Mor> =
                two.morphisms().filter(|&m| two.cod(m) == o).collect();
            assert_eq!(cls.sieves[o.0][pos], expected);
        }
    }

    #[test]
    fn classifier_on_the_point_recovers_two_valued_logic() {
        let caps = caps();
        let one = corpus::one();
        let cls = subobject_classifier(&one, &caps).unwrap();
        assert_eq!(cls.omega.values[0].len(), 2);
        // Subsets of a three-element value correspond to maps into Omega.
        let s = FinSet::new(
            ["e1", "e2", "e3"].iter().map(|t| Atom::token(*t)).collect(),
        )
        .unwrap();
        let x = Presheaf::new(
            "X",
            one.clone(),
            vec![s.clone()],
            vec![FinFunction::identity(&s)],
        )
        .unwrap();
        let subs = subpresheaves(&x, &caps).unwrap();
        assert_eq!(subs.len(), 8);
        let nats =
            enumerate_set_nats(&x.as_diagram(), &cls.omega.as_diagram(), &caps).unwrap();
        assert_eq!(nats.len(), 8);
    }

    #[test]
    fn subobjects_biject_with_classifying_maps() {
        let caps = caps();
        let two = corpus::two();
        let b = two.obj_by_label("b").unwrap();
        let h_b = representable(&two, b);
        let cls = subobject_classifier(&two, &caps).unwrap();
        let subs = subpresheaves(&h_b, &caps).unwrap();
        assert_eq!(subs.len(), 3);
        let nats =
            enumerate_set_nats(&h_b.as_diagram(), &cls.omega.as_diagram(), &caps).unwrap();
        assert_eq!(nats.len(), 3, "as many maps into Omega as subobjects");
        assert_eq!(nats.len(), cls.omega.values[b.0].len(), "= sieves at b");
        // classify is injective and lands on every transformation.
        let mut classified: Vec<PresheafMap> = Vec::new();
        for members in &subs {
            let chi = classify_subpresheaf(&cls, &h_b, members).unwrap();
            assert!(classified.iter().all(|c| !c.same_components(&chi)));
            classified.push(chi);
        }
        for components in nats {
            let as_map =
                PresheafMap::new(h_b.clone(), cls.omega.clone(), components).unwrap();
            assert!(
                classified.iter().any(|c| c.same_components(&as_map)),
                "every map into Omega classifies a subobject"
            );
        }
    }

    #[test]
    fn non_closed_subset_is_rejected() {
        let caps = caps();
        let two = corpus::two();
        let b = two.obj_by_label("b").unwrap();
        let h_b = representable(&two, b);
        let cls = subobject_classifier(&two, &caps).unwrap();
        // Keep (b, 1_b) but drop its restriction (a, u).
        let members = vec![vec![false], vec![true]];
        match classify_subpresheaf(&cls, &h_b, &members) {
            Err(PresheafError::NotASubpresheaf { object, .. }) => assert_eq!(object, b.0),
            other => panic!("expected a closure failure, got {other:?}"),
        }
    }

    #[test]
    fn hom_bifunctor_values_and_restrictions() {
        let caps = caps();
        let one = corpus::one();
        let h1 = hom_bifunctor(&one, &caps).unwrap();
        assert_eq!(h1.sets.len(), 1);
        assert_eq!(h1.sets[0].len(), 1);

        let two = corpus::two();
        let h2 = hom_bifunctor(&two, &caps).unwrap();
        let sizes: Vec<usize> = h2.sets.iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![1, 1, 0, 1]);
        // Restriction at a fixed first argument is the covariant hom.
        let id_two = Functor::identity(&two);
        for a in two.objects() {
            let cov = apply_hom_to_diagram(a, &id_two).unwrap();
            for b in two.objects() {
                assert_eq!(
                    h2.sets[a.0 * 2 + b.0].elements,
                    cov.sets[b.0].elements,
                    "slice of the bifunctor at ({}, {})",
                    two.obj_label(a),
                    two.obj_label(b)
                );
            }
        }
        // Restriction at a fixed second argument is the representable.
        for b in two.objects() {
            let h_b = representable(&two, b);
            for a in two.objects() {
                assert_eq!(h2.sets[a.0 * 2 + b.0].elements, h_b.values[a.0].elements);
            }
        }
    }

    #[test]
    fn hom_from_an_object_sends_limit_cones_to_limit_cones() {
        let caps = caps();
        let d12 = corpus::div_poset(12);
        let shape = corpus::discrete(2);
        let four = d12.obj_by_label("4").unwrap();
        let six = d12.obj_by_label("6").unwrap();
        let d = Functor::new(
            "pair46",
            shape.clone(),
            d12.clone(),
            vec![four, six],
            vec![d12.id(four), d12.id(six)],
        )
        .unwrap();
        let lim = limit_cat(&d, &caps).unwrap().expect("gcd exists");
        assert_eq!(d12.obj_label(lim.vertex), "2");
        for a in d12.objects() {
            let image = apply_hom_to_diagram(a, &d).unwrap();
            let cone = apply_hom_to_cone(a, &d, &lim, &image).unwrap();
            verify_set_limit(&image, &cone, &caps).unwrap();
        }
    }

    #[test]
    fn hom_preserves_the_terminal_object_cone() {
        let caps = caps();
        let d12 = corpus::div_poset(12);
        let empty_shape = Arc::new(FiniteCategory::discrete("EmptyShape", 0));
        let d = Functor::new("nothing", empty_shape, d12.clone(), vec![], vec![]).unwrap();
        let lim = limit_cat(&d, &caps).unwrap().expect("terminal exists");
        assert_eq!(d12.obj_label(lim.vertex), "12");
        for a in d12.objects() {
            let image = apply_hom_to_diagram(a, &d).unwrap();
            let cone = apply_hom_to_cone(a, &d, &lim, &image).unwrap();
            verify_set_limit(&image, &cone, &caps).unwrap();
        }
    }

    #[test]
    fn representable_isomorphism_matches_object_isomorphism() {
        let caps = caps();
        let twins = Arc::new(
            from_poset(
                "Twins",
                vec!["p".into(), "q".into()],
                |_, _| true,
            )
            .unwrap(),
        );
        for base in [twins, corpus::div_poset(6), corpus::two()] {
            for a in base.objects() {
                for a2 in base.objects() {
                    let objects_isomorphic = base
                        .hom(a, a2)
                        .into_iter()
                        .any(|f| base.is_isomorphism(f));
                    let h_a = representable(&base, a);
                    let h_a2 = representable(&base, a2);
                    let nat_iso_exists =
                        enumerate_set_nats(&h_a.as_diagram(), &h_a2.as_diagram(), &caps)
                            .unwrap()
                            .into_iter()
                            .any(|components| {
                                PresheafMap::new(h_a.clone(), h_a2.clone(), components)
                                    .unwrap()
                                    .is_iso()
                            });
                    assert_eq!(
                        objects_isomorphic,
                        nat_iso_exists,
                        "objects {} and {}",
                        base.obj_label(a),
                        base.obj_label(a2)
                    );
                }
            }
        }
    }

    #[test]
    fn yoneda_embedding_is_full_and_faithful() {
        let caps = caps();
        let d12 = corpus::div_poset(12);
        let (category, embedding, _, maps) =
            yoneda_embedding(&d12, &[], &caps).unwrap();
        assert_eq!(category.n_objects(), 6);
        let report = classify_functor(&embedding);
        assert!(report.full);
        assert!(report.faithful);
        assert!(report.essentially_surjective);
        // Hom-set counts match on the nose.
        for a in d12.objects() {
            for b in d12.objects() {
                let image_count = maps
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| {
                        category.dom(Mor(*k)) == Obj(a.0) && category.cod(Mor(*k)) == Obj(b.0)
                    })
                    .count();
                assert_eq!(image_count, d12.hom(a, b).len());
            }
        }
    }

    #[test]
    fn yoneda_embedding_preserves_binary_products() {
        let caps = caps();
        let d12 = corpus::div_poset(12);
        let (_, embedding, _, _) = yoneda_embedding(&d12, &[], &caps).unwrap();
        let report = preservation_report(
            &embedding,
            &corpus::discrete(2),
            ConeSide::Limits,
            &caps,
            DEFAULT_SAMPLE_BOUND,
            0,
        )
        .unwrap();
        assert!(report.preserves, "meets go to presheaf products");
        assert_eq!(report.diagrams_tested, report.diagrams_total);
    }

    #[test]
    fn yoneda_embedding_does_not_preserve_the_initial_object() {
        let caps = caps();
        let d6 = corpus::div_poset(6);
        let extra = [empty_presheaf(&d6)];
        let (_, embedding, _, _) = yoneda_embedding(&d6, &extra, &caps).unwrap();
        let empty_shape = Arc::new(FiniteCategory::discrete("EmptyShape", 0));
        let report = preservation_report(
            &embedding,
            &empty_shape,
            ConeSide::Colimits,
            &caps,
            DEFAULT_SAMPLE_BOUND,
            0,
        )
        .unwrap();
        assert!(
            !report.preserves,
            "h of the least divisor is not the empty presheaf"
        );
    }

    #[test]
    fn pointwise_product_of_representables_passes_the_functor_category_check() {
        let caps = caps();
        let d12 = corpus::div_poset(12);
        let four = d12.obj_by_label("4").unwrap();
        let six = d12.obj_by_label("6").unwrap();
        let h4 = representable(&d12, four);
        let h6 = representable(&d12, six);
        let (p, p1, p2) = product_presheaf(&h4, &h6, &caps).unwrap();
        // The pointwise product is represented by the meet.
        match find_representation(&p).unwrap() {
            Representation::Found { object, .. } => assert_eq!(d12.obj_label(object), "2"),
            Representation::NotRepresentable => panic!("h4 x h6 is representable"),
        }
        // In the fragment category the cone (P, projections) is a limit.
        let (category, maps) = presheaf_fragment_category(
            "fragment",
            &[h4.clone(), h6.clone(), p.clone()],
            &caps,
        )
        .unwrap();
        let shape = corpus::discrete(2);
        let d = Functor::new(
            "pair",
            shape,
            Arc::clone(&category),
            vec![Obj(0), Obj(1)],
            vec![category.id(Obj(0)), category.id(Obj(1))],
        )
        .unwrap();
        let leg1 = maps
            .iter()
            .position(|m| m.same_components(&p1))
            .expect("first projection is enumerated");
        let leg2 = maps
            .iter()
            .position(|m| m.same_components(&p2))
            .expect("second projection is enumerated");
        let cone = Cone {
            vertex: Obj(2),
            legs: vec![Mor(leg1), Mor(leg2)],
        };
        assert!(crate::limits::is_limit_cone(&d, &cone, &caps).unwrap());
    }

    #[test]
    fn evaluation_preserves_binary_products() {
        // Evaluation at an object, from a functor category into a category
        // of sets and all functions between them.
        let caps = Caps {
            max_objects: 64,
            max_morphisms: 4096,
            max_enum: 1_000_000,
        };
        let two = corpus::two();
        let e = FinSet::new(vec![]).unwrap();
        let s1 = FinSet::new(vec![Atom::token("v")]).unwrap();
        let s2 = FinSet::new(vec![Atom::token("w1"), Atom::token("w2")]).unwrap();
        let (sets_cat, _) =
            crate::finset::set_category("Sets012", &[e, s1, s2], &caps).unwrap();
        let sets_cat = Arc::new(sets_cat);
        let fc = functor_category(&two, &sets_cat, &caps).unwrap();
        let a = two.obj_by_label("a").unwrap();
        let ev = Functor::new(
            "ev_a",
            Arc::clone(&fc.category),
            Arc::clone(&sets_cat),
            fc.functors.iter().map(|f| f.on_obj(a)).collect(),
            fc.transformations.iter().map(|n| n.at(a)).collect(),
        )
        .unwrap();
        let report = preservation_report(
            &ev,
            &corpus::discrete(2),
            ConeSide::Limits,
            &caps,
            DEFAULT_SAMPLE_BOUND,
            0,
        )
        .unwrap();
        assert!(report.preserves);
        assert!(report.diagrams_tested > 0);
    }
}
