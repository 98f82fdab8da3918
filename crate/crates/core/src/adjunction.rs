//! Adjunctions three ways: unit/counit with triangle identities, hom-set
//! transpose bijections natural in both arguments, and initial objects of
//! comma categories — with interconversion between the formulations,
//! synthesis of left adjoints, the ordered-set adjoint functor theorem,
//! and the constructive weakly-initial-set argument.

use std::sync::Arc;

use crate::caps::Caps;
use crate::cat::{
    comma_category, find_universal_object, full_subcategory, CatError, FiniteCategory, Mor, Obj,
    UniversalKind,
};
use crate::corpus;
use crate::functor::{
    compose_functors, diagonal_functor, Functor, FunctorError, NatTransformation,
};
use crate::limits::{
    factorizations, limit_cat, limit_map, preservation_report, Cone, ConeSide, LimitError,
    ShapePreservation, DEFAULT_SAMPLE_BOUND,
};

/// Errors raised while building or checking adjunctions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AdjunctionError {
    /// A triangle identity failed at a specific object.
    #[error("triangle identity ({which}) fails at object {object}")]
    TriangleViolation { object: usize, which: &'static str },
    /// A transpose table is not a bijection on some hom-pair.
    #[error("transpose table at object pair ({a}, {b}) is not a bijection")]
    NotBijective { a: usize, b: usize },
    /// A transpose table fails one of the two naturality equations.
    #[error("transpose naturality fails: {what}")]
    NaturalityViolation { what: String },
    /// No adjoint exists (e.g. a comma category without an initial object).
    #[error("no adjoint: {what}")]
    NotFound { what: String },
    /// An object is unreachable from the proposed weakly initial set.
    #[error("object {object} receives no morphism from the proposed set")]
    NotWeaklyInitial { object: usize },
    /// A limit the construction relies on does not exist.
    #[error("required limit missing: {what}")]
    LimitMissing { what: String },
    /// A meet needed by the ordered-set construction does not exist.
    #[error("required meet missing: {what}")]
    MeetMissing { what: String },
    /// The candidate monotone map fails meet preservation; the witness
    /// lists the object indices of the offending family.
    #[error("meets not preserved on family {witness:?}")]
    NotMeetPreserving { witness: Vec<usize> },
    /// The ordered-set construction needs thin antisymmetric categories.
    #[error("not an order category: {what}")]
    NotPoset { what: String },
    /// Mismatched functor or transformation boundaries.
    #[error("boundary mismatch: {what}")]
    BoundaryMismatch { what: String },
    /// A search space exceeded the configured cap.
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
    #[error("limit error: {0}")]
    Limit(#[from] LimitError),
}

/// Hom-set bijections `B(F A, B) ≅ A(A, G B)`, stored as explicit pairs
/// `(g, ḡ)` per object pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransposeFamily {
    /// `tables[a][b]` pairs each `g: F(a) → b` with its transpose
    /// `ḡ: a → G(b)`.
    pub tables: Vec<Vec<Vec<(Mor, Mor)>>>,
}

impl TransposeFamily {
    /// The transpose of `g: F(a) → b`, if the table pairs it.
    pub fn up(&self, a: Obj, b: Obj, g: Mor) -> Option<Mor> {
        self.tables[a.0][b.0]
            .iter()
            .find(|&&(lower, _)| lower == g)
            .map(|&(_, upper)| upper)
    }

    /// The transpose of `f: a → G(b)`, if the table pairs it.
    pub fn down(&self, a: Obj, b: Obj, f: Mor) -> Option<Mor> {
        self.tables[a.0][b.0]
            .iter()
            .find(|&&(_, upper)| upper == f)
            .map(|&(lower, _)| lower)
    }

    /// Same pairings, ignoring pair order inside each table.
    pub fn same_tables(&self, other: &TransposeFamily) -> bool {
        self.tables.len() == other.tables.len()
            && self.tables.iter().zip(&other.tables).all(|(ra, rb)| {
                ra.len() == rb.len()
                    && ra.iter().zip(rb).all(|(ta, tb)| {
                        let mut sa = ta.clone();
                        let mut sb = tb.clone();
                        sa.sort();
                        sb.sort();
                        sa == sb
                    })
            })
    }
}

/// A validated adjunction `F ⊣ G`: unit and counit satisfying both
/// triangle identities, with the derived hom-set bijections attached.
#[derive(Clone, Debug)]
pub struct Adjunction {
    /// `F: A → B`.
    pub left: Functor,
    /// `G: B → A`.
    pub right: Functor,
    /// `η: 1_A ⇒ G∘F`.
    pub unit: NatTransformation,
    /// `ε: F∘G ⇒ 1_B`.
    pub counit: NatTransformation,
    /// The hom-set bijections derived from unit and counit.
    pub transpose: TransposeFamily,
}

fn check_boundaries(f: &Functor, g: &Functor) -> Result<(), AdjunctionError> {
    if !f.source.table_eq(&g.target) || !f.target.table_eq(&g.source) {
        return Err(AdjunctionError::BoundaryMismatch {
            what: "the two functors must run between the same two categories, opposed".into(),
        });
    }
    Ok(())
}

/// Derive the transpose tables from unit and counit:
/// `ḡ = G(g) ∘ η_A` upward and `f̄ = ε_B ∘ F(f)` downward. Fails if the
/// two directions are not mutually inverse on some hom-pair.
fn derive_transpose(
    f: &Functor,
    g: &Functor,
    unit: &NatTransformation,
    counit: &NatTransformation,
) -> Result<TransposeFamily, AdjunctionError> {
    let a_cat = &f.source;
    let b_cat = &f.target;
    let mut tables = Vec::with_capacity(a_cat.n_objects());
    for a in a_cat.objects() {
        let mut row = Vec::with_capacity(b_cat.n_objects());
        for b in b_cat.objects() {
            let lower = b_cat.hom(f.on_obj(a), b);
            let upper = a_cat.hom(a, g.on_obj(b));
            let mut pairs = Vec::with_capacity(lower.len());
            for &q in &lower {
                let up = a_cat
                    .compose(g.on_mor(q), unit.at(a))
                    .expect("transpose composite is defined");
                pairs.push((q, up));
            }
            // Mutual inversion: down ∘ up = id and up ∘ down = id.
            if upper.len() != lower.len() {
                return Err(AdjunctionError::NotBijective { a: a.0, b: b.0 });
            }
            for &(q, up) in &pairs {
                let down = b_cat
                    .compose(counit.at(b), f.on_mor(up))
                    .expect("transpose composite is defined");
                if down != q {
                    return Err(AdjunctionError::NotBijective { a: a.0, b: b.0 });
                }
            }
            for &p in &upper {
                let down = b_cat
                    .compose(counit.at(b), f.on_mor(p))
                    .expect("transpose composite is defined");
                if pairs.iter().filter(|&&(q, _)| q == down).count() != 1
                    || pairs.iter().find(|&&(q, _)| q == down).map(|&(_, u)| u) != Some(p)
                {
                    return Err(AdjunctionError::NotBijective { a: a.0, b: b.0 });
                }
            }
            row.push(pairs);
        }
        tables.push(row);
    }
    Ok(TransposeFamily { tables })
}

/// Build and validate an adjunction from unit and counit: checks the
/// boundary functors, both triangle identities at every object, and
/// derives the hom-set bijections.
pub fn adjunction_from_unit_counit(
    f: &Functor,
    g: &Functor,
    unit: NatTransformation,
    counit: NatTransformation,
) -> Result<Adjunction, AdjunctionError> {
    check_boundaries(f, g)?;
    let a_cat = &f.source;
    let b_cat = &f.target;
    let gf = compose_functors(g, f)?;
    let fg = compose_functors(f, g)?;
    if !unit.source.same_maps(&Functor::identity(a_cat)) || !unit.target.same_maps(&gf) {
        return Err(AdjunctionError::BoundaryMismatch {
            what: "unit must run from the identity to the round trip through both functors".into(),
        });
    }
    if !counit.source.same_maps(&fg) || !counit.target.same_maps(&Functor::identity(b_cat)) {
        return Err(AdjunctionError::BoundaryMismatch {
            what: "counit must run from the round trip to the identity".into(),
        });
    }
    // Triangle 1 at each A-object a: ε_{F a} ∘ F(η_a) = 1_{F a}.
    for a in a_cat.objects() {
        let fa = f.on_obj(a);
        let comp = b_cat.compose(counit.at(fa), f.on_mor(unit.at(a)));
        if comp != Some(b_cat.id(fa)) {
            return Err(AdjunctionError::TriangleViolation {
                object: a.0,
                which: "counit after image of unit",
            });
        }
    }
    // Triangle 2 at each B-object b: G(ε_b) ∘ η_{G b} = 1_{G b}.
    for b in b_cat.objects() {
        let gb = g.on_obj(b);
        let comp = a_cat.compose(g.on_mor(counit.at(b)), unit.at(gb));
        if comp != Some(a_cat.id(gb)) {
            return Err(AdjunctionError::TriangleViolation {
                object: b.0,
                which: "image of counit after unit",
            });
        }
    }
    let transpose = derive_transpose(f, g, &unit, &counit)?;
    Ok(Adjunction {
        left: f.clone(),
        right: g.clone(),
        unit,
        counit,
        transpose,
    })
}

/// Build and validate an adjunction from explicit hom-set bijections:
/// checks bijectivity and both naturality equations, extracts unit and
/// counit as transposes of identities, and round-trips back to the same
/// tables.
pub fn adjunction_from_transpose(
    f: &Functor,
    g: &Functor,
    family: &TransposeFamily,
) -> Result<Adjunction, AdjunctionError> {
    check_boundaries(f, g)?;
    let a_cat = &f.source;
    let b_cat = &f.target;
    if family.tables.len() != a_cat.n_objects()
        || family.tables.iter().any(|r| r.len() != b_cat.n_objects())
    {
        return Err(AdjunctionError::BoundaryMismatch {
            what: "one table per object pair".into(),
        });
    }
    // Bijectivity: each table pairs the two hom-sets exactly.
    for a in a_cat.objects() {
        for b in b_cat.objects() {
            let table = &family.tables[a.0][b.0];
            let lower = b_cat.hom(f.on_obj(a), b);
            let upper = a_cat.hom(a, g.on_obj(b));
            let ok = table.len() == lower.len()
                && table.len() == upper.len()
                && lower
                    .iter()
                    .all(|&q| table.iter().filter(|&&(x, _)| x == q).count() == 1)
                && upper
                    .iter()
                    .all(|&p| table.iter().filter(|&&(_, y)| y == p).count() == 1);
            if !ok {
                return Err(AdjunctionError::NotBijective { a: a.0, b: b.0 });
            }
        }
    }
    // Naturality in the second argument: pairing (g, ḡ) and q: b → b'
    // forces (q∘g, G(q)∘ḡ).
    for a in a_cat.objects() {
        for b in b_cat.objects() {
            for &(low, up) in &family.tables[a.0][b.0] {
                for q in b_cat.morphisms() {
                    if b_cat.dom(q) != b {
                        continue;
                    }
                    let b2 = b_cat.cod(q);
                    let low2 = b_cat.compose(q, low).expect("composable by construction");
                    let up2 = a_cat
                        .compose(g.on_mor(q), up)
                        .expect("composable by construction");
                    if family.up(a, b2, low2) != Some(up2) {
                        return Err(AdjunctionError::NaturalityViolation {
                            what: format!(
                                "second argument: postcomposing morphism {} at pair ({}, {})",
                                q.0, a.0, b.0
                            ),
                        });
                    }
                }
            }
        }
    }
    // Naturality in the first argument: pairing (g, ḡ) and p: a' → a
    // forces (g∘F(p), ḡ∘p).
    for a in a_cat.objects() {
        for b in b_cat.objects() {
            for &(low, up) in &family.tables[a.0][b.0] {
                for p in a_cat.morphisms() {
                    if a_cat.cod(p) != a {
                        continue;
                    }
                    let a2 = a_cat.dom(p);
                    let low2 = b_cat
                        .compose(low, f.on_mor(p))
                        .expect("composable by construction");
                    let up2 = a_cat.compose(up, p).expect("composable by construction");
                    if family.up(a2, b, low2) != Some(up2) {
                        return Err(AdjunctionError::NaturalityViolation {
                            what: format!(
                                "first argument: precomposing morphism {} at pair ({}, {})",
                                p.0, a.0, b.0
                            ),
                        });
                    }
                }
            }
        }
    }
    // Extract unit and counit as transposes of identities.
    let unit_components: Vec<Mor> = a_cat
        .objects()
        .map(|a| {
            let fa = f.on_obj(a);
            family
                .up(a, fa, b_cat.id(fa))
                .expect("identity is paired by a bijective table")
        })
        .collect();
    let counit_components: Vec<Mor> = b_cat
        .objects()
        .map(|b| {
            let gb = g.on_obj(b);
            family
                .down(gb, b, a_cat.id(gb))
                .expect("identity is paired by a bijective table")
        })
        .collect();
    let unit = NatTransformation::new(
        Functor::identity(a_cat),
        compose_functors(g, f)?,
        unit_components,
    )?;
    let counit = NatTransformation::new(
        compose_functors(f, g)?,
        Functor::identity(b_cat),
        counit_components,
    )?;
    let adj = adjunction_from_unit_counit(f, g, unit, counit)?;
    if !adj.transpose.same_tables(family) {
        return Err(AdjunctionError::NaturalityViolation {
            what: "unit/counit round trip disagrees with the provided tables".into(),
        });
    }
    Ok(adj)
}

/// Synthesize the left adjoint of `G: B → A` from initial objects of the
/// comma categories `(A ⇒ G)`: the initial object at `A` is the pair
/// `(η_A: A → G(F A), F A)`, and `F` acts on morphisms by the unique
/// factorization out of the initial object.
pub fn synthesize_left_adjoint(g: &Functor, caps: &Caps) -> Result<Adjunction, AdjunctionError> {
    let b_cat = &g.source;
    let a_cat = &g.target;
    let one = corpus::one();
    let mut f_obj: Vec<Obj> = Vec::with_capacity(a_cat.n_objects());
    let mut unit_components: Vec<Mor> = Vec::with_capacity(a_cat.n_objects());
    for a in a_cat.objects() {
        let pick_a = Functor::constant(&one, a_cat, a);
        let comma = comma_category(&pick_a, g, caps)?;
        let init = find_universal_object(&comma.category, UniversalKind::Initial).ok_or_else(
            || AdjunctionError::NotFound {
                what: format!(
                    "the category of maps out of object {} has no initial object",
                    a.0
                ),
            },
        )?;
        let (_, eta, fb) = comma.triples[init.0];
        f_obj.push(fb);
        unit_components.push(eta);
    }
    let f_mor: Vec<Mor> = a_cat
        .morphisms()
        .map(|p| {
            let (a, a2) = (a_cat.dom(p), a_cat.cod(p));
            let shifted = a_cat
                .compose(unit_components[a2.0], p)
                .expect("unit component composes with p");
            let candidates: Vec<Mor> = b_cat
                .hom(f_obj[a.0], f_obj[a2.0])
                .into_iter()
                .filter(|&q| {
                    a_cat.compose(g.on_mor(q), unit_components[a.0]) == Some(shifted)
                })
                .collect();
            match candidates.as_slice() {
                [q] => *q,
                other => panic!(
                    "initial object must factor uniquely, found {} candidates",
                    other.len()
                ),
            }
        })
        .collect();
    let f = Functor::new(
        format!("left-adjoint-of-{}", g.name),
        a_cat.clone(),
        b_cat.clone(),
        f_obj.clone(),
        f_mor,
    )?;
    let counit_components: Vec<Mor> = b_cat
        .objects()
        .map(|b| {
            let gb = g.on_obj(b);
            let candidates: Vec<Mor> = b_cat
                .hom(f_obj[gb.0], b)
                .into_iter()
                .filter(|&q| {
                    a_cat.compose(g.on_mor(q), unit_components[gb.0]) == Some(a_cat.id(gb))
                })
                .collect();
            match candidates.as_slice() {
                [q] => *q,
                other => panic!(
                    "initial object must factor uniquely, found {} candidates",
                    other.len()
                ),
            }
        })
        .collect();
    let unit = NatTransformation::new(
        Functor::identity(a_cat),
        compose_functors(g, &f)?,
        unit_components,
    )?;
    let counit = NatTransformation::new(
        compose_functors(&f, g)?,
        Functor::identity(b_cat),
        counit_components,
    )?;
    adjunction_from_unit_counit(&f, g, unit, counit)
}

/// Is the thin category `c` a partial order (at most one morphism per
/// hom-set, no isomorphic distinct objects)?
fn require_poset(c: &FiniteCategory, role: &str) -> Result<(), AdjunctionError> {
    for a in c.objects() {
        for b in c.objects() {
            if c.hom(a, b).len() > 1 {
                return Err(AdjunctionError::NotPoset {
                    what: format!("{role} has parallel morphisms between {} and {}", a.0, b.0),
                });
            }
            if a != b && !c.hom(a, b).is_empty() && !c.hom(b, a).is_empty() {
                return Err(AdjunctionError::NotPoset {
                    what: format!("{role} has distinct isomorphic objects {} and {}", a.0, b.0),
                });
            }
        }
    }
    Ok(())
}

fn leq(c: &FiniteCategory, a: Obj, b: Obj) -> bool {
    !c.hom(a, b).is_empty()
}

/// Greatest lower bound of a set of objects in an order category, if any.
fn meet_of(c: &FiniteCategory, members: &[Obj]) -> Option<Obj> {
    let lower: Vec<Obj> = c
        .objects()
        .filter(|&o| members.iter().all(|&m| leq(c, o, m)))
        .collect();
    lower
        .iter()
        .copied()
        .find(|&l| lower.iter().all(|&l2| leq(c, l2, l)))
}

/// Ordered-set adjoint functor theorem: for a monotone map `g: B → A`
/// between finite orders that preserves all existing meets, the left
/// adjoint is `F(a) = ⋀ {b : a ≤ g(b)}`. Cross-validated against comma
/// synthesis.
pub fn oaft_left_adjoint(g: &Functor, caps: &Caps) -> Result<Adjunction, AdjunctionError> {
    let b_cat = &g.source;
    let a_cat = &g.target;
    require_poset(b_cat, "source order")?;
    require_poset(a_cat, "target order")?;
    let nb = b_cat.n_objects();
    if nb >= usize::BITS as usize || (1usize << nb) > caps.max_enum {
        return Err(AdjunctionError::CapExceeded {
            what: "meet-preservation check over all subsets".into(),
            needed: 1usize.checked_shl(nb as u32).unwrap_or(usize::MAX),
            cap: caps.max_enum,
        });
    }
    // Meet preservation over every family that has a meet.
    for mask in 0usize..(1 << nb) {
        let family: Vec<Obj> = (0..nb).filter(|i| mask & (1 << i) != 0).map(Obj).collect();
        if let Some(m) = meet_of(b_cat, &family) {
            let image: Vec<Obj> = family.iter().map(|&b| g.on_obj(b)).collect();
            let gm = g.on_obj(m);
            let is_lower = image.iter().all(|&x| leq(a_cat, gm, x));
            let is_greatest = a_cat
                .objects()
                .filter(|&o| image.iter().all(|&x| leq(a_cat, o, x)))
                .all(|o| leq(a_cat, o, gm));
            if !is_lower || !is_greatest {
                return Err(AdjunctionError::NotMeetPreserving {
                    witness: family.iter().map(|o| o.0).collect(),
                });
            }
        }
    }
    // F(a) = meet of {b : a ≤ g(b)}.
    let f_obj: Vec<Obj> = a_cat
        .objects()
        .map(|a| {
            let above: Vec<Obj> = b_cat
                .objects()
                .filter(|&b| leq(a_cat, a, g.on_obj(b)))
                .collect();
            meet_of(b_cat, &above).ok_or_else(|| AdjunctionError::MeetMissing {
                what: format!("meet over maps out of object {}", a.0),
            })
        })
        .collect::<Result<_, _>>()?;
    let f = corpus::poset_functor(
        format!("order-left-adjoint-of-{}", g.name),
        a_cat,
        b_cat,
        f_obj.clone(),
    );
    let unit_components: Vec<Mor> = a_cat
        .objects()
        .map(|a| {
            a_cat
                .hom(a, g.on_obj(f_obj[a.0]))
                .first()
                .copied()
                .ok_or_else(|| AdjunctionError::MeetMissing {
                    what: format!("object {} does not sit below its candidate image", a.0),
                })
        })
        .collect::<Result<_, _>>()?;
    let counit_components: Vec<Mor> = b_cat
        .objects()
        .map(|b| {
            b_cat
                .hom(f_obj[g.on_obj(b).0], b)
                .first()
                .copied()
                .ok_or_else(|| AdjunctionError::MeetMissing {
                    what: format!("candidate image does not sit below object {}", b.0),
                })
        })
        .collect::<Result<_, _>>()?;
    let unit = NatTransformation::new(
        Functor::identity(a_cat),
        compose_functors(g, &f)?,
        unit_components,
    )?;
    let counit = NatTransformation::new(
        compose_functors(&f, g)?,
        Functor::identity(b_cat),
        counit_components,
    )?;
    let adj = adjunction_from_unit_counit(&f, g, unit, counit)?;
    // The comma-category synthesis must agree object for object.
    let synthesized = synthesize_left_adjoint(g, caps)?;
    assert_eq!(
        adj.left.object_map, synthesized.left.object_map,
        "order formula and comma synthesis disagree"
    );
    Ok(adj)
}

/// The constructive argument that a weakly initial set plus the right
/// limits yields an initial object: take a limit cone over the full
/// subcategory spanned by `s`; its apex receives the required maps by weak
/// initiality, and uniqueness follows from the equalizer-and-retraction
/// argument, every step of which is verified here rather than assumed.
pub fn initial_via_weakly_initial(
    c: &Arc<FiniteCategory>,
    s: &[Obj],
    caps: &Caps,
) -> Result<Obj, AdjunctionError> {
    if s.is_empty() {
        return Err(AdjunctionError::NotFound {
            what: "the proposed weakly initial set is empty".into(),
        });
    }
    let (_, inclusion) = full_subcategory(c, s, "proposed-span")?;
    let lim = limit_cat(&inclusion, caps)?.ok_or_else(|| AdjunctionError::LimitMissing {
        what: "limit of the inclusion of the proposed set".into(),
    })?;
    let zero = lim.vertex;
    // Weak initiality transported along the projections: a map into every
    // object, built as (s_i → x) ∘ p_{s_i}.
    let mut reach: Vec<Mor> = Vec::with_capacity(c.n_objects());
    for x in c.objects() {
        let arrow = s.iter().enumerate().find_map(|(i, &si)| {
            c.hom(si, x)
                .first()
                .and_then(|&m| c.compose(m, lim.legs[i]))
        });
        match arrow {
            Some(m) => reach.push(m),
            None => return Err(AdjunctionError::NotWeaklyInitial { object: x.0 }),
        }
    }
    // Uniqueness, replayed for every parallel pair out of the apex: form
    // the equalizer E of (f, f'), reach E from the set, and close the loop
    // i ∘ h ∘ p_s — an endomorphism of the apex that every projection
    // absorbs, hence the identity by joint monicity of a limit cone.
    let pair_shape = corpus::parallel_pair();
    for x in c.objects() {
        let maps = c.hom(zero, x);
        for &f1 in &maps {
            for &f2 in &maps {
                let pair_diag = Functor::new(
                    "pair-out-of-apex",
                    pair_shape.clone(),
                    c.clone(),
                    vec![zero, x],
                    vec![c.id(zero), c.id(x), f1, f2],
                )?;
                let eq = limit_cat(&pair_diag, caps)?.ok_or_else(|| {
                    AdjunctionError::LimitMissing {
                        what: format!(
                            "equalizer of a parallel pair out of the apex into object {}",
                            x.0
                        ),
                    }
                })?;
                let include = eq.legs[0];
                // Reach the equalizer vertex from the set.
                let (si_index, h) = s
                    .iter()
                    .enumerate()
                    .find_map(|(i, &si)| c.hom(si, eq.vertex).first().map(|&m| (i, m)))
                    .ok_or(AdjunctionError::NotWeaklyInitial {
                        object: eq.vertex.0,
                    })?;
                let loop_back = c
                    .compose(include, h)
                    .and_then(|ih| c.compose(ih, lim.legs[si_index]))
                    .expect("loop composite is defined");
                // Every projection absorbs the loop…
                for (t, &leg) in lim.legs.iter().enumerate() {
                    assert_eq!(
                        c.compose(leg, loop_back),
                        Some(leg),
                        "projection {} must absorb the loop (cone fullness)",
                        t
                    );
                }
                // …so by joint monicity it is the identity, forcing f1 = f2.
                assert_eq!(
                    loop_back,
                    c.id(zero),
                    "limit projections must be jointly monic"
                );
                if f1 != f2 {
                    unreachable!("distinct parallel maps survived the uniqueness argument");
                }
            }
        }
    }
    // Cross-check against direct search.
    assert_eq!(
        find_universal_object(c, UniversalKind::Initial),
        Some(zero),
        "constructed apex must be the initial object"
    );
    Ok(zero)
}

/// Preservation behaviour of both halves of an adjunction: the left
/// functor against colimit shapes, the right functor against limit shapes.
#[derive(Clone, Debug)]
pub struct AdjointAudit {
    pub left: Vec<ShapePreservation>,
    pub right: Vec<ShapePreservation>,
    pub all_pass: bool,
}

/// Audit that the left functor preserves colimits and the right functor
/// preserves limits over the given shapes. Failures here indicate engine
/// bugs, not data errors — the result records them honestly either way.
pub fn adjoint_preservation_audit(
    adj: &Adjunction,
    shapes: &[Arc<FiniteCategory>],
    caps: &Caps,
) -> Result<AdjointAudit, AdjunctionError> {
    let mut left = Vec::with_capacity(shapes.len());
    let mut right = Vec::with_capacity(shapes.len());
    for shape in shapes {
        left.push(preservation_report(
            &adj.left,
            shape,
            ConeSide::Colimits,
            caps,
            DEFAULT_SAMPLE_BOUND,
            0,
        )?);
        right.push(preservation_report(
            &adj.right,
            shape,
            ConeSide::Limits,
            caps,
            DEFAULT_SAMPLE_BOUND,
            0,
        )?);
    }
    let all_pass = left.iter().all(|r| r.preserves) && right.iter().all(|r| r.preserves);
    Ok(AdjointAudit {
        left,
        right,
        all_pass,
    })
}

/// Paste two adjunctions: `F ⊣ G` then `F' ⊣ G'` gives `F'∘F ⊣ G∘G'`,
/// with unit `G(η'_{F A}) ∘ η_A` and counit `ε'_C ∘ F'(ε_{G' C})`.
pub fn compose_adjunctions(
    inner: &Adjunction,
    outer: &Adjunction,
) -> Result<Adjunction, AdjunctionError> {
    if !inner.left.target.table_eq(&outer.left.source) {
        return Err(AdjunctionError::BoundaryMismatch {
            what: "the middle categories must agree".into(),
        });
    }
    let a_cat = &inner.left.source;
    let c_cat = &outer.left.target;
    let left = compose_functors(&outer.left, &inner.left)?;
    let right = compose_functors(&inner.right, &outer.right)?;
    let unit_components: Vec<Mor> = a_cat
        .objects()
        .map(|a| {
            let fa = inner.left.on_obj(a);
            a_cat
                .compose(inner.right.on_mor(outer.unit.at(fa)), inner.unit.at(a))
                .expect("pasted unit composes")
        })
        .collect();
    let counit_components: Vec<Mor> = c_cat
        .objects()
        .map(|cc| {
            let gc = outer.right.on_obj(cc);
            c_cat
                .compose(outer.counit.at(cc), outer.left.on_mor(inner.counit.at(gc)))
                .expect("pasted counit composes")
        })
        .collect();
    let unit = NatTransformation::new(
        Functor::identity(a_cat),
        compose_functors(&right, &left)?,
        unit_components,
    )?;
    let counit = NatTransformation::new(
        compose_functors(&left, &right)?,
        Functor::identity(c_cat),
        counit_components,
    )?;
    adjunction_from_unit_counit(&left, &right, unit, counit)
}

/// The identity adjunction `1_C ⊣ 1_C`.
pub fn identity_adjunction(c: &Arc<FiniteCategory>) -> Adjunction {
    let id = Functor::identity(c);
    adjunction_from_unit_counit(
        &id,
        &id,
        NatTransformation::identity(&id),
        NatTransformation::identity(&id),
    )
    .expect("the identity adjunction is lawful")
}

/// Build the adjunction between the diagonal into a diagram category and
/// the limit functor, for a base category with all limits of the given
/// shape. The counit at a diagram is its limit cone read as a
/// transformation out of the constant diagram.
pub fn diagonal_limit_adjunction(
    a: &Arc<FiniteCategory>,
    shape: &Arc<FiniteCategory>,
    caps: &Caps,
) -> Result<Adjunction, AdjunctionError> {
    let (fc, delta) = diagonal_functor(a, shape, caps)?;
    let cones: Vec<Cone> = fc
        .functors
        .iter()
        .enumerate()
        .map(|(k, d)| {
            limit_cat(d, caps)?.ok_or_else(|| AdjunctionError::LimitMissing {
                what: format!("limit of diagram {}", k),
            })
        })
        .collect::<Result<_, _>>()?;
    let lim_mor: Vec<Mor> = fc
        .category
        .morphisms()
        .map(|t| {
            let (i, j) = fc.nat_ends(t);
            Ok(limit_map(
                &fc.functors[j.0],
                &cones[i.0],
                &cones[j.0],
                &fc.transformations[t.0],
            )?)
        })
        .collect::<Result<_, AdjunctionError>>()?;
    let lim_functor = Functor::new(
        format!("limit over {}", shape.name),
        fc.category.clone(),
        a.clone(),
        cones.iter().map(|c| c.vertex).collect(),
        lim_mor,
    )?;
    // Unit at x: factor the trivial cone on x through the chosen limit of
    // the constant diagram at x.
    let unit_components: Vec<Mor> = a
        .objects()
        .map(|x| {
            let k = delta.on_obj(x);
            let trivial = Cone {
                vertex: x,
                legs: vec![a.id(x); shape.n_objects()],
            };
            match factorizations(&fc.functors[k.0], &cones[k.0], &trivial).as_slice() {
                [h] => *h,
                other => panic!("expected one mediating morphism, found {}", other.len()),
            }
        })
        .collect();
    // Counit at diagram k: the limit cone legs as a transformation from
    // the constant diagram at the limit apex.
    let counit_components: Vec<Mor> = fc
        .functors
        .iter()
        .enumerate()
        .map(|(k, d)| {
            let apex_constant = fc.functors[delta.on_obj(cones[k].vertex).0].clone();
            let nat =
                NatTransformation::new(apex_constant, d.clone(), cones[k].legs.clone())?;
            fc.nat_index(&nat).ok_or_else(|| AdjunctionError::NotFound {
                what: "limit cone transformation not in the diagram category".into(),
            })
        })
        .collect::<Result<_, _>>()?;
    let unit = NatTransformation::new(
        Functor::identity(a),
        compose_functors(&lim_functor, &delta)?,
        unit_components,
    )?;
    let counit = NatTransformation::new(
        compose_functors(&delta, &lim_functor)?,
        Functor::identity(&fc.category),
        counit_components,
    )?;
    adjunction_from_unit_counit(&delta, &lim_functor, unit, counit)
}
