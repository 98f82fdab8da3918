//! Limits and colimits by universal-property search.
//!
//! A diagram is a functor out of a finite shape, landing either in another
//! finite category or in finite sets. Inside a finite category a limit is
//! found honestly: enumerate every cone, then keep the first cone through
//! which every cone factors by exactly one mediating morphism. Set-valued
//! diagrams use the element formulas from [`crate::finset`], and every
//! delegated answer is re-verified here against the raw definition.
//!
//! Colimits are computed as limits in the opposite category and re-oriented,
//! so one search routine serves both directions.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::caps::Caps;
use crate::cat::{FiniteCategory, Mor, Obj};
use crate::finset::{
    product_set, FinFunction, FinSet, FinSetError, SetCocone, SetCone, SetFunctor,
};
use crate::functor::{
    compose_functors, enumerate_functors, Functor, FunctorError, NatTransformation,
};
use crate::union_find::UnionFind;

/// Errors raised by limit/colimit computation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LimitError {
    /// A search space exceeded the configured enumeration cap.
    #[error("{what}: needed {needed}, cap {cap}")]
    CapExceeded {
        what: String,
        needed: usize,
        cap: usize,
    },
    /// The reduction needed a product the target category does not have.
    #[error("missing product of {what}")]
    MissingProduct { what: String },
    /// The reduction needed an equalizer the target category does not have.
    #[error("missing equalizer for {what}")]
    MissingEqualizer { what: String },
    /// A cone or diagram had mismatched boundaries.
    #[error("boundary mismatch: {what}")]
    BoundaryMismatch { what: String },
    /// A claimed (co)limit failed independent verification.
    #[error("universal property failed: {what}")]
    NotUniversal { what: String },
    /// Underlying set-level failure.
    #[error("set error: {0}")]
    Set(#[from] FinSetError),
    /// Underlying functor-level failure.
    #[error("functor error: {0}")]
    Functor(#[from] FunctorError),
    /// Underlying category-construction failure.
    #[error("category error: {0}")]
    Cat(#[from] crate::cat::CatError),
}

/// A cone over a diagram inside a finite category: an apex object with one
/// leg `legs[I]: vertex → D(I)` per shape object, commuting with every
/// diagram arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub vertex: Obj,
    pub legs: Vec<Mor>,
}

/// A cocone under a diagram: legs `legs[I]: D(I) → vertex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocone {
    pub vertex: Obj,
    pub legs: Vec<Mor>,
}

/// A diagram: a functor from a finite shape into a finite category, or a
/// set-valued functor on the shape.
#[derive(Clone, Debug)]
pub enum Diagram {
    Cat(Functor),
    Set(SetFunctor),
}

impl Diagram {
    pub fn shape(&self) -> &Arc<FiniteCategory> {
        match self {
            Diagram::Cat(f) => &f.source,
            Diagram::Set(d) => &d.shape,
        }
    }
}

/// The result of a limit computation, matching the diagram flavour.
#[derive(Clone, Debug)]
pub enum LimitOutcome {
    Cat(Cone),
    Set(SetCone),
}

/// The result of a colimit computation, matching the diagram flavour.
#[derive(Clone, Debug)]
pub enum ColimitOutcome {
    Cat(Cocone),
    Set(SetCocone),
}

/// Check that `cone` really is a cone over `d`: leg boundaries match and
/// `D(u) ∘ leg_I = leg_J` for every shape arrow `u: I → J`.
pub fn check_cone(d: &Functor, cone: &Cone) -> Result<(), LimitError> {
    let shape = &d.source;
    let c = &d.target;
    if cone.legs.len() != shape.n_objects() || cone.vertex.0 >= c.n_objects() {
        return Err(LimitError::BoundaryMismatch {
            what: "cone legs must provide one morphism per shape object".into(),
        });
    }
    for i in shape.objects() {
        let leg = cone.legs[i.0];
        if c.dom(leg) != cone.vertex || c.cod(leg) != d.on_obj(i) {
            return Err(LimitError::BoundaryMismatch {
                what: format!("leg at shape object {} has wrong endpoints", i.0),
            });
        }
    }
    for u in shape.morphisms() {
        let (i, j) = (shape.dom(u), shape.cod(u));
        if c.compose(d.on_mor(u), cone.legs[i.0]) != Some(cone.legs[j.0]) {
            return Err(LimitError::NotUniversal {
                what: format!("cone triangle at shape arrow {} does not commute", u.0),
            });
        }
    }
    Ok(())
}

/// Check that `cocone` really is a cocone under `d`: `leg_J ∘ D(u) = leg_I`
/// for every shape arrow `u: I → J`.
pub fn check_cocone(d: &Functor, cocone: &Cocone) -> Result<(), LimitError> {
    let shape = &d.source;
    let c = &d.target;
    if cocone.legs.len() != shape.n_objects() || cocone.vertex.0 >= c.n_objects() {
        return Err(LimitError::BoundaryMismatch {
            what: "cocone legs must provide one morphism per shape object".into(),
        });
    }
    for i in shape.objects() {
        let leg = cocone.legs[i.0];
        if c.dom(leg) != d.on_obj(i) || c.cod(leg) != cocone.vertex {
            return Err(LimitError::BoundaryMismatch {
                what: format!("leg at shape object {} has wrong endpoints", i.0),
            });
        }
    }
    for u in shape.morphisms() {
        let (i, j) = (shape.dom(u), shape.cod(u));
        if c.compose(cocone.legs[j.0], d.on_mor(u)) != Some(cocone.legs[i.0]) {
            return Err(LimitError::NotUniversal {
                what: format!("cocone triangle at shape arrow {} does not commute", u.0),
            });
        }
    }
    Ok(())
}

/// All cones over `d` with the given apex, in lexicographic leg order.
///
/// Legs are chosen one shape object at a time; a partial choice is abandoned
/// as soon as some fully-determined triangle fails, so the walk visits far
/// fewer nodes than the raw product of hom-sets.
pub fn enumerate_cones(d: &Functor, vertex: Obj, caps: &Caps) -> Result<Vec<Cone>, LimitError> {
    let shape = &d.source;
    let c = &d.target;
    let n = shape.n_objects();
    // Candidate legs per shape object, in morphism-index order.
    let candidates: Vec<Vec<Mor>> = (0..n)
        .map(|i| c.hom(vertex, d.on_obj(Obj(i))))
        .collect();
    // Triangle constraints become checkable once both endpoints are chosen;
    // group them by the later endpoint.
    let mut checks_at: Vec<Vec<Mor>> = vec![Vec::new(); n];
    for u in shape.morphisms() {
        let step = shape.dom(u).0.max(shape.cod(u).0);
        checks_at[step].push(u);
    }
    let mut out = Vec::new();
    let mut legs: Vec<Mor> = Vec::with_capacity(n);
    let mut visited = 0usize;
    fn rec(
        d: &Functor,
        c: &FiniteCategory,
        candidates: &[Vec<Mor>],
        checks_at: &[Vec<Mor>],
        legs: &mut Vec<Mor>,
        out: &mut Vec<Cone>,
        vertex: Obj,
        visited: &mut usize,
        cap: usize,
    ) -> Result<(), LimitError> {
        let k = legs.len();
        if k == candidates.len() {
            out.push(Cone {
                vertex,
                legs: legs.clone(),
            });
            return Ok(());
        }
        for &leg in &candidates[k] {
            *visited += 1;
            if *visited > cap {
                return Err(LimitError::CapExceeded {
                    what: format!("cone search over {}", d.name),
                    needed: *visited,
                    cap,
                });
            }
            legs.push(leg);
            let ok = checks_at[k].iter().all(|&u| {
                let (i, j) = (d.source.dom(u), d.source.cod(u));
                c.compose(d.on_mor(u), legs[i.0]) == Some(legs[j.0])
            });
            if ok {
                rec(d, c, candidates, checks_at, legs, out, vertex, visited, cap)?;
            }
            legs.pop();
        }
        Ok(())
    }
    rec(
        d,
        c,
        &candidates,
        &checks_at,
        &mut legs,
        &mut out,
        vertex,
        &mut visited,
        caps.max_enum,
    )?;
    Ok(out)
}

/// Every cone over `d`, ordered by apex index and then lexicographically by
/// legs. This order is the canonical tie-break for limit selection.
pub fn all_cones(d: &Functor, caps: &Caps) -> Result<Vec<Cone>, LimitError> {
    let mut out = Vec::new();
    for v in d.target.objects() {
        out.extend(enumerate_cones(d, v, caps)?);
    }
    Ok(out)
}

/// All morphisms `h: cone.vertex → through.vertex` with
/// `through.legs[I] ∘ h = cone.legs[I]` for every shape object.
pub fn factorizations(d: &Functor, through: &Cone, cone: &Cone) -> Vec<Mor> {
    let c = &d.target;
    c.hom(cone.vertex, through.vertex)
        .into_iter()
        .filter(|&h| {
            (0..d.source.n_objects())
                .all(|i| c.compose(through.legs[i], h) == Some(cone.legs[i]))
        })
        .collect()
}

/// Does every cone in `cones` factor through `cand` by exactly one morphism?
fn is_limit_among(d: &Functor, cand: &Cone, cones: &[Cone]) -> bool {
    cones
        .iter()
        .all(|cone| factorizations(d, cand, cone).len() == 1)
}

/// The limit of a diagram in a finite category, if one exists: the first
/// cone — apexes in object order, legs lexicographic — through which every
/// cone factors uniquely.
pub fn limit_cat(d: &Functor, caps: &Caps) -> Result<Option<Cone>, LimitError> {
    let cones = all_cones(d, caps)?;
    Ok(cones
        .iter()
        .find(|cand| is_limit_among(d, cand, &cones))
        .cloned())
}

/// Every limit cone over `d` (all of them, not just the canonical pick).
/// Any two are linked by a unique commuting isomorphism.
pub fn all_limit_cones(d: &Functor, caps: &Caps) -> Result<Vec<Cone>, LimitError> {
    let cones = all_cones(d, caps)?;
    Ok(cones
        .iter()
        .filter(|cand| is_limit_among(d, cand, &cones))
        .cloned()
        .collect())
}

/// Is this specific cone a limit cone?
pub fn is_limit_cone(d: &Functor, cone: &Cone, caps: &Caps) -> Result<bool, LimitError> {
    if check_cone(d, cone).is_err() {
        return Ok(false);
    }
    let cones = all_cones(d, caps)?;
    Ok(is_limit_among(d, cone, &cones))
}

/// The colimit of a diagram in a finite category: the limit of the same
/// assignment read in the opposite categories, re-oriented.
pub fn colimit_cat(d: &Functor, caps: &Caps) -> Result<Option<Cocone>, LimitError> {
    let op = d.opposite();
    Ok(limit_cat(&op, caps)?.map(|cone| Cocone {
        vertex: cone.vertex,
        legs: cone.legs,
    }))
}

/// Is this specific cocone a colimit cocone?
pub fn is_colimit_cocone(d: &Functor, cocone: &Cocone, caps: &Caps) -> Result<bool, LimitError> {
    if check_cocone(d, cocone).is_err() {
        return Ok(false);
    }
    let op = d.opposite();
    is_limit_cone(
        &op,
        &Cone {
            vertex: cocone.vertex,
            legs: cocone.legs.clone(),
        },
        caps,
    )
}

/// Limit of either diagram flavour. Set-valued diagrams always have one;
/// the element-formula answer is independently re-verified before it is
/// returned. In-category diagrams may have none (`Ok(None)`).
pub fn limit(d: &Diagram, caps: &Caps) -> Result<Option<LimitOutcome>, LimitError> {
    match d {
        Diagram::Cat(f) => Ok(limit_cat(f, caps)?.map(LimitOutcome::Cat)),
        Diagram::Set(sf) => {
            let cone = crate::finset::limit_finset(sf, caps)?;
            verify_set_limit(sf, &cone, caps)?;
            Ok(Some(LimitOutcome::Set(cone)))
        }
    }
}

/// Colimit of either diagram flavour, dual to [`limit`].
pub fn colimit(d: &Diagram, caps: &Caps) -> Result<Option<ColimitOutcome>, LimitError> {
    match d {
        Diagram::Cat(f) => Ok(colimit_cat(f, caps)?.map(ColimitOutcome::Cat)),
        Diagram::Set(sf) => {
            let cocone = crate::finset::colimit_finset(sf, caps)?;
            verify_set_colimit(sf, &cocone, caps)?;
            Ok(Some(ColimitOutcome::Set(cocone)))
        }
    }
}

/// Independent check that a set-valued cone is a limit cone: the legs must
/// commute with the diagram, and the joint leg map must put the vertex in
/// bijection with the compatible families, which are recounted here by a
/// direct walk over the full product.
pub fn verify_set_limit(d: &SetFunctor, cone: &SetCone, caps: &Caps) -> Result<(), LimitError> {
    let n = d.shape.n_objects();
    if cone.legs.len() != n {
        return Err(LimitError::BoundaryMismatch {
            what: "one leg per shape object".into(),
        });
    }
    for i in 0..n {
        if cone.legs[i].dom != cone.vertex || cone.legs[i].cod != d.sets[i] {
            return Err(LimitError::BoundaryMismatch {
                what: format!("set cone leg {} has wrong endpoints", i),
            });
        }
    }
    for u in d.shape.morphisms() {
        let (i, j) = (d.shape.dom(u), d.shape.cod(u));
        let via = cone.legs[i.0].then(d.action(u))?;
        if !via.same_function(&cone.legs[j.0]) {
            return Err(LimitError::NotUniversal {
                what: format!("set cone triangle at shape arrow {} fails", u.0),
            });
        }
    }
    // Recount compatible families directly.
    let mut families: Vec<Vec<usize>> = Vec::new();
    let total: usize = d.sets.iter().map(|s| s.len()).product();
    if total > caps.max_enum {
        return Err(LimitError::CapExceeded {
            what: format!("limit verification for {}", d.name),
            needed: total,
            cap: caps.max_enum,
        });
    }
    if n == 0 || d.sets.iter().all(|s| !s.is_empty()) {
        let mut idx = vec![0usize; n];
        'odometer: loop {
            if d.shape.morphisms().all(|u| {
                let (i, j) = (d.shape.dom(u), d.shape.cod(u));
                d.action(u).map[idx[i.0]] == idx[j.0]
            }) {
                families.push(idx.clone());
            }
            let mut pos = n;
            loop {
                if pos == 0 {
                    break 'odometer;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < d.sets[pos].len() {
                    continue 'odometer;
                }
                idx[pos] = 0;
            }
        }
    }
    // The joint leg map must hit each family exactly once.
    let mut signatures: Vec<Vec<usize>> = Vec::with_capacity(cone.vertex.len());
    for v in 0..cone.vertex.len() {
        signatures.push((0..n).map(|i| cone.legs[i].apply(v)).collect());
    }
    if signatures.len() != families.len() {
        return Err(LimitError::NotUniversal {
            what: format!(
                "vertex has {} elements but there are {} compatible families",
                signatures.len(),
                families.len()
            ),
        });
    }
    for fam in &families {
        let hits = signatures.iter().filter(|s| *s == fam).count();
        if hits != 1 {
            return Err(LimitError::NotUniversal {
                what: format!("family hit {} times by the joint leg map", hits),
            });
        }
    }
    Ok(())
}

/// Independent check that a set-valued cocone is a colimit cocone: the legs
/// commute, are jointly surjective, and their joint kernel is exactly the
/// equivalence generated by `x ∼ (Du)(x)` on the disjoint sum — recomputed
/// here from scratch.
pub fn verify_set_colimit(
    d: &SetFunctor,
    cocone: &SetCocone,
    _caps: &Caps,
) -> Result<(), LimitError> {
    let n = d.shape.n_objects();
    if cocone.legs.len() != n {
        return Err(LimitError::BoundaryMismatch {
            what: "one leg per shape object".into(),
        });
    }
    for i in 0..n {
        if cocone.legs[i].dom != d.sets[i] || cocone.legs[i].cod != cocone.vertex {
            return Err(LimitError::BoundaryMismatch {
                what: format!("set cocone leg {} has wrong endpoints", i),
            });
        }
    }
    for u in d.shape.morphisms() {
        let (i, j) = (d.shape.dom(u), d.shape.cod(u));
        let via = d.action(u).then(&cocone.legs[j.0])?;
        if !via.same_function(&cocone.legs[i.0]) {
            return Err(LimitError::NotUniversal {
                what: format!("set cocone square at shape arrow {} fails", u.0),
            });
        }
    }
    // Index the disjoint sum by (object, element) with per-object offsets.
    let offsets: Vec<usize> = d
        .sets
        .iter()
        .scan(0usize, |acc, s| {
            let here = *acc;
            *acc += s.len();
            Some(here)
        })
        .collect();
    let total: usize = d.sets.iter().map(|s| s.len()).sum();
    let mut uf = UnionFind::new(total);
    for u in d.shape.morphisms() {
        let (i, j) = (d.shape.dom(u), d.shape.cod(u));
        for x in 0..d.sets[i.0].len() {
            uf.union(offsets[i.0] + x, offsets[j.0] + d.action(u).map[x]);
        }
    }
    let generated = uf.classes();
    // Joint kernel of the legs on the same indexing.
    let mut kernel: Vec<Vec<usize>> = vec![Vec::new(); cocone.vertex.len()];
    let mut hit = vec![false; cocone.vertex.len()];
    for i in 0..n {
        for x in 0..d.sets[i].len() {
            let v = cocone.legs[i].apply(x);
            kernel[v].push(offsets[i] + x);
            hit[v] = true;
        }
    }
    if hit.iter().any(|h| !h) {
        return Err(LimitError::NotUniversal {
            what: "legs are not jointly surjective".into(),
        });
    }
    let mut kernel: Vec<Vec<usize>> = kernel.into_iter().filter(|b| !b.is_empty()).collect();
    for block in kernel.iter_mut() {
        block.sort_unstable();
    }
    kernel.sort();
    if kernel != generated {
        return Err(LimitError::NotUniversal {
            what: "joint kernel differs from the generated equivalence".into(),
        });
    }
    Ok(())
}

/// Push a cone forward along a functor: apply `f` to the apex and legs.
pub fn map_cone(f: &Functor, cone: &Cone) -> Cone {
    Cone {
        vertex: f.on_obj(cone.vertex),
        legs: cone.legs.iter().map(|&m| f.on_mor(m)).collect(),
    }
}

/// Push a cocone forward along a functor.
pub fn map_cocone(f: &Functor, cocone: &Cocone) -> Cocone {
    Cocone {
        vertex: f.on_obj(cocone.vertex),
        legs: cocone.legs.iter().map(|&m| f.on_mor(m)).collect(),
    }
}

/// The induced morphism between limit apexes: for `α: D ⇒ D'` with chosen
/// limit cones `lim_d` and `lim_d2`, the unique `h` with
/// `lim_d2.legs[I] ∘ h = α_I ∘ lim_d.legs[I]` for every shape object.
pub fn limit_map(
    d2: &Functor,
    lim_d: &Cone,
    lim_d2: &Cone,
    alpha: &NatTransformation,
) -> Result<Mor, LimitError> {
    let c = &d2.target;
    let legs: Option<Vec<Mor>> = (0..d2.source.n_objects())
        .map(|i| c.compose(alpha.at(Obj(i)), lim_d.legs[i]))
        .collect();
    let legs = legs.ok_or(LimitError::BoundaryMismatch {
        what: "transformation components do not compose with the legs".into(),
    })?;
    let shifted = Cone {
        vertex: lim_d.vertex,
        legs,
    };
    check_cone(d2, &shifted)?;
    let mediating = factorizations(d2, lim_d2, &shifted);
    match mediating.as_slice() {
        [h] => Ok(*h),
        other => Err(LimitError::NotUniversal {
            what: format!("expected one mediating morphism, found {}", other.len()),
        }),
    }
}

/// Build a limit cone from products and one equalizer, inside the target
/// category. With `P = ∏_I D(I)` and `Q = ∏_u D(cod u)` (one factor per
/// shape arrow), the two comparison maps send a family to
/// `(D(u)(x_{dom u}))_u` and `(x_{cod u})_u`; their equalizer, projected
/// back through `P`, is the limit.
pub fn limit_via_products_equalizers_cat(d: &Functor, caps: &Caps) -> Result<Cone, LimitError> {
    let shape = &d.source;
    let c = &d.target;
    let n = shape.n_objects();
    let m = shape.n_morphisms();
    // Product over the object values.
    let disc_obj = Arc::new(FiniteCategory::discrete("object-family", n));
    let obj_diag = Functor::new(
        "object-family",
        disc_obj,
        c.clone(),
        (0..n).map(|i| d.on_obj(Obj(i))).collect(),
        (0..n).map(|i| c.id(d.on_obj(Obj(i)))).collect(),
    )?;
    let prod = limit_cat(&obj_diag, caps)?.ok_or_else(|| LimitError::MissingProduct {
        what: "the family of diagram values".into(),
    })?;
    // Product over the arrow codomain values.
    let disc_arr = Arc::new(FiniteCategory::discrete("arrow-family", m));
    let arr_diag = Functor::new(
        "arrow-family",
        disc_arr,
        c.clone(),
        (0..m).map(|u| d.on_obj(shape.cod(Mor(u)))).collect(),
        (0..m)
            .map(|u| c.id(d.on_obj(shape.cod(Mor(u)))))
            .collect(),
    )?;
    let prod_arr = limit_cat(&arr_diag, caps)?.ok_or_else(|| LimitError::MissingProduct {
        what: "the family of arrow codomain values".into(),
    })?;
    // The two comparison maps, produced as mediating morphisms into Q.
    let factor_into_arr = |legs: Vec<Option<Mor>>| -> Result<Mor, LimitError> {
        let legs: Option<Vec<Mor>> = legs.into_iter().collect();
        let cone = Cone {
            vertex: prod.vertex,
            legs: legs.ok_or(LimitError::BoundaryMismatch {
                what: "comparison legs do not compose".into(),
            })?,
        };
        check_cone(&arr_diag, &cone)?;
        match factorizations(&arr_diag, &prod_arr, &cone).as_slice() {
            [h] => Ok(*h),
            other => Err(LimitError::NotUniversal {
                what: format!("comparison map not unique: {} candidates", other.len()),
            }),
        }
    };
    let s = factor_into_arr(
        (0..m)
            .map(|u| c.compose(d.on_mor(Mor(u)), prod.legs[shape.dom(Mor(u)).0]))
            .collect(),
    )?;
    let t = factor_into_arr(
        (0..m)
            .map(|u| Some(prod.legs[shape.cod(Mor(u)).0]))
            .collect(),
    )?;
    // Equalize the comparison maps.
    let pair_shape = crate::corpus::parallel_pair();
    let pair_diag = Functor::new(
        "comparison-pair",
        pair_shape,
        c.clone(),
        vec![prod.vertex, prod_arr.vertex],
        vec![c.id(prod.vertex), c.id(prod_arr.vertex), s, t],
    )?;
    let eq = limit_cat(&pair_diag, caps)?.ok_or_else(|| LimitError::MissingEqualizer {
        what: "the comparison pair".into(),
    })?;
    let include = eq.legs[0];
    let legs: Option<Vec<Mor>> = (0..n).map(|i| c.compose(prod.legs[i], include)).collect();
    let cone = Cone {
        vertex: eq.vertex,
        legs: legs.expect("projections compose with the equalizer inclusion"),
    };
    check_cone(d, &cone)?;
    Ok(cone)
}

/// The same reduction for a set-valued diagram, using the element formulas
/// for product and equalizer directly.
pub fn limit_via_products_equalizers_set(
    d: &SetFunctor,
    caps: &Caps,
) -> Result<SetCone, LimitError> {
    let n = d.shape.n_objects();
    let factors: Vec<&FinSet> = d.sets.iter().collect();
    let p = product_set(&factors, caps)?;
    // Decode each product element into per-object component positions.
    let decode = |atom: &crate::finset::Atom| -> Vec<usize> {
        match atom {
            crate::finset::Atom::Tuple(parts) => (0..n)
                .map(|i| d.sets[i].position(&parts[i]).expect("component present"))
                .collect(),
            _ => unreachable!("product elements are tuples"),
        }
    };
    let arrows: Vec<Mor> = d.shape.morphisms().collect();
    // Keep the product elements on which every arrow equation holds.
    let mut kept = Vec::new();
    for atom in &p.elements {
        let parts = decode(atom);
        let ok = arrows.iter().all(|&u| {
            let (i, j) = (d.shape.dom(u), d.shape.cod(u));
            d.action(u).map[parts[i.0]] == parts[j.0]
        });
        if ok {
            kept.push(atom.clone());
        }
    }
    let vertex = FinSet { elements: kept };
    let legs = (0..n)
        .map(|i| {
            FinFunction::new(
                vertex.clone(),
                d.sets[i].clone(),
                vertex.elements.iter().map(|a| decode(a)[i]).collect(),
            )
            .expect("projection positions in range")
        })
        .collect::<Vec<_>>();
    let cone = SetCone { vertex, legs };
    verify_set_limit(d, &cone, caps)?;
    Ok(cone)
}

/// Dispatching wrapper over the two reduction flavours.
pub fn limit_via_products_equalizers(
    d: &Diagram,
    caps: &Caps,
) -> Result<LimitOutcome, LimitError> {
    match d {
        Diagram::Cat(f) => limit_via_products_equalizers_cat(f, caps).map(LimitOutcome::Cat),
        Diagram::Set(sf) => limit_via_products_equalizers_set(sf, caps).map(LimitOutcome::Set),
    }
}

/// Monomorphism / epimorphism flags, decided by exhausting parallel pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonicEpic {
    pub monic: bool,
    pub epic: bool,
}

/// Decide whether `f` is monic (left-cancellable) and/or epic
/// (right-cancellable) by checking every parallel pair in the category.
pub fn is_monic_epic(c: &FiniteCategory, f: Mor) -> MonicEpic {
    let monic = c.objects().all(|w| {
        let into = c.hom(w, c.dom(f));
        into.iter().all(|&x| {
            into.iter().all(|&x2| {
                c.compose(f, x) != c.compose(f, x2) || x == x2
            })
        })
    });
    let epic = c.objects().all(|w| {
        let out = c.hom(c.cod(f), w);
        out.iter().all(|&y| {
            out.iter().all(|&y2| {
                c.compose(y, f) != c.compose(y2, f) || y == y2
            })
        })
    });
    MonicEpic { monic, epic }
}

/// Which direction a preservation report examines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeSide {
    Limits,
    Colimits,
}

/// How a functor treats (co)limits of one shape: preservation, reflection,
/// and strict creation, decided over all diagrams of the shape — or over a
/// seeded pseudo-random sample when there are too many, with the seed
/// recorded in the report.
#[derive(Clone, Debug)]
pub struct ShapePreservation {
    pub shape: String,
    pub side: ConeSide,
    pub preserves: bool,
    pub reflects: bool,
    pub creates: bool,
    pub diagrams_total: usize,
    pub diagrams_tested: usize,
    pub sampled: bool,
    pub seed: Option<u64>,
}

/// Default diagram budget above which preservation testing samples instead
/// of exhausting.
pub const DEFAULT_SAMPLE_BOUND: usize = 100_000;

/// Test how `f` treats (co)limits of diagrams on `shape`.
///
/// Strict creation demands that every limit cone on the image diagram is
/// the on-the-nose image of exactly one cone on the original diagram, and
/// that this unique preimage is itself a limit cone.
pub fn preservation_report(
    f: &Functor,
    shape: &Arc<FiniteCategory>,
    side: ConeSide,
    caps: &Caps,
    sample_bound: usize,
    seed: u64,
) -> Result<ShapePreservation, LimitError> {
    // Colimit behaviour of `f` is limit behaviour of the opposite reading.
    let (g, sh) = match side {
        ConeSide::Limits => (f.clone(), shape.clone()),
        ConeSide::Colimits => (f.opposite(), Arc::new(shape.opposite())),
    };
    let diagrams = enumerate_functors(&sh, &g.source, caps)?;
    let total = diagrams.len();
    let (picked, sampled): (Vec<usize>, bool) = if total > sample_bound {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut idx = rand::seq::index::sample(&mut rng, total, sample_bound).into_vec();
        idx.sort_unstable();
        (idx, true)
    } else {
        ((0..total).collect(), false)
    };
    let mut preserves = true;
    let mut reflects = true;
    let mut creates = true;
    for &k in &picked {
        let diag = &diagrams[k];
        let image = compose_functors(&g, diag)?;
        let cones_src = all_cones(diag, caps)?;
        let cones_img = all_cones(&image, caps)?;
        let src_limits: Vec<&Cone> = cones_src
            .iter()
            .filter(|c| is_limit_among(diag, c, &cones_src))
            .collect();
        let img_limits: Vec<&Cone> = cones_img
            .iter()
            .filter(|c| is_limit_among(&image, c, &cones_img))
            .collect();
        // Preservation: images of limit cones are limit cones.
        for lc in &src_limits {
            let mapped = map_cone(&g, lc);
            if check_cone(&image, &mapped).is_err()
                || !is_limit_among(&image, &mapped, &cones_img)
            {
                preserves = false;
            }
        }
        // Reflection: cones whose image is a limit cone are limit cones.
        for cone in &cones_src {
            let mapped = map_cone(&g, cone);
            if check_cone(&image, &mapped).is_ok()
                && is_limit_among(&image, &mapped, &cones_img)
                && !is_limit_among(diag, cone, &cones_src)
            {
                reflects = false;
            }
        }
        // Strict creation.
        for lc in &img_limits {
            let preimages: Vec<&Cone> = cones_src
                .iter()
                .filter(|cone| map_cone(&g, cone) == **lc)
                .collect();
            if preimages.len() != 1 || !is_limit_among(diag, preimages[0], &cones_src) {
                creates = false;
            }
        }
    }
    Ok(ShapePreservation {
        shape: shape.name.clone(),
        side,
        preserves,
        reflects,
        creates,
        diagrams_total: total,
        diagrams_tested: picked.len(),
        sampled,
        seed: if sampled { Some(seed) } else { None },
    })
}

/// Precompose a set-valued functor with a functor into its shape:
/// `(Y ∘ F)(A) = Y(F A)`.
pub fn restrict_along(f: &Functor, y: &SetFunctor) -> Result<SetFunctor, LimitError> {
    if !f.target.table_eq(&y.shape) {
        return Err(LimitError::BoundaryMismatch {
            what: "set functor must live on the functor's target".into(),
        });
    }
    let sets = f
        .source
        .objects()
        .map(|a| y.value(f.on_obj(a)).clone())
        .collect();
    let maps = f
        .source
        .morphisms()
        .map(|m| y.action(f.on_mor(m)).clone())
        .collect();
    Ok(SetFunctor::new(
        format!("{}∘{}", y.name, f.name),
        f.source.clone(),
        sets,
        maps,
    )?)
}

/// A left Kan extension of a set-valued functor along a functor between
/// finite categories, with its unit.
#[derive(Clone, Debug)]
pub struct LeftKan {
    /// The extended set-valued functor on the target category.
    pub extension: SetFunctor,
    /// Unit components `X(A) → extension(F A)`, one per source object.
    pub unit: Vec<FinFunction>,
    /// The colimit cocone used at each target object.
    pub cocones: Vec<SetCocone>,
    /// For each target object, the arrow-category triples `(A, h)` indexing
    /// that colimit: `h: F(A) → B`.
    pub fibres: Vec<Vec<(Obj, Mor)>>,
}

/// Left Kan extension along `f: A → B` of `x: A → FinSet`, computed
/// pointwise: the value at `B` is the colimit of `x` pulled back along the
/// projection from the arrow category of maps `F(−) → B`.
pub fn kan_left(f: &Functor, x: &SetFunctor, caps: &Caps) -> Result<LeftKan, LimitError> {
    if !f.source.table_eq(&x.shape) {
        return Err(LimitError::BoundaryMismatch {
            what: "set functor must live on the functor's source".into(),
        });
    }
    let b_cat = &f.target;
    let one = crate::corpus::one();
    let mut values: Vec<FinSet> = Vec::new();
    let mut cocones: Vec<SetCocone> = Vec::new();
    let mut fibres: Vec<Vec<(Obj, Mor)>> = Vec::new();
    let mut comma_pairs: Vec<Vec<(Mor, Mor)>> = Vec::new();
    for b in b_cat.objects() {
        let at_b = Functor::constant(&one, b_cat, b);
        let comma = crate::cat::comma_category(f, &at_b, caps)?;
        let sets: Vec<FinSet> = comma
            .triples
            .iter()
            .map(|&(a, _, _)| x.value(a).clone())
            .collect();
        let maps: Vec<FinFunction> = comma
            .pairs
            .iter()
            .map(|&(am, _)| x.action(am).clone())
            .collect();
        let diag = SetFunctor::new(
            format!("{} over target object {}", x.name, b.0),
            comma.category.clone(),
            sets,
            maps,
        )?;
        let cocone = crate::finset::colimit_finset(&diag, caps)?;
        verify_set_colimit(&diag, &cocone, caps)?;
        values.push(cocone.vertex.clone());
        cocones.push(cocone);
        fibres.push(comma.triples.iter().map(|&(a, h, _)| (a, h)).collect());
        comma_pairs.push(comma.pairs.clone());
    }
    // Action on g: B → B': send the class of (A, h, element) to the class
    // of (A, g∘h, element). Built through the legs, so the assignment is
    // total; agreement across a class is forced by the colimit relations
    // and asserted here.
    let mut actions: Vec<FinFunction> = Vec::new();
    for g in b_cat.morphisms() {
        let (b, b2) = (b_cat.dom(g), b_cat.cod(g));
        let mut assignment: Vec<Option<usize>> = vec![None; values[b.0].len()];
        for (i, &(a, h)) in fibres[b.0].iter().enumerate() {
            let gh = b_cat
                .compose(g, h)
                .expect("arrow-category data composes with g");
            let j = fibres[b2.0]
                .iter()
                .position(|&(a2, h2)| a2 == a && h2 == gh)
                .expect("postcomposed triple exists in the target fibre");
            for pos in 0..x.value(a).len() {
                let src = cocones[b.0].legs[i].apply(pos);
                let dst = cocones[b2.0].legs[j].apply(pos);
                match assignment[src] {
                    None => assignment[src] = Some(dst),
                    Some(prev) => assert_eq!(
                        prev, dst,
                        "colimit comparison must be well defined"
                    ),
                }
            }
        }
        let map: Vec<usize> = assignment
            .into_iter()
            .map(|v| v.expect("legs are jointly surjective"))
            .collect();
        actions.push(FinFunction::new(
            values[b.0].clone(),
            values[b2.0].clone(),
            map,
        )?);
    }
    let extension = SetFunctor::new(
        format!("Lan[{}]{}", f.name, x.name),
        b_cat.clone(),
        values,
        actions,
    )?;
    // Unit at A: the colimit leg at the triple (A, identity at F A).
    let mut unit = Vec::new();
    for a in f.source.objects() {
        let fa = f.on_obj(a);
        let i = fibres[fa.0]
            .iter()
            .position(|&(a2, h)| a2 == a && h == b_cat.id(fa))
            .expect("identity triple present");
        unit.push(cocones[fa.0].legs[i].clone());
    }
    let restricted = restrict_along(f, &extension)?;
    crate::finset::check_set_nat(x, &restricted, &unit)?;
    drop(comma_pairs);
    Ok(LeftKan {
        extension,
        unit,
        cocones,
        fibres,
    })
}

/// The apex of a limit of the identity diagram is an initial object; useful
/// as a diagnostic cross-check against direct search.
pub fn initial_via_identity_limit(
    c: &Arc<FiniteCategory>,
    caps: &Caps,
) -> Result<Option<Obj>, LimitError> {
    let identity = Functor::identity(c);
    Ok(limit_cat(&identity, caps)?.map(|cone| cone.vertex))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::cat::UniversalKind;
    use crate::corpus;
    use crate::finset::{Atom, SetFunctor};
    use crate::functor::enumerate_nats;

    fn caps() -> Caps {
        Caps::default()
    }

    fn token_set(names: &[&str]) -> FinSet {
        FinSet {
            elements: names.iter().map(|n| Atom::token(*n)).collect(),
        }
    }

    /// Diagram on the two-object discrete shape picking two named objects.
    fn pair_diagram(c: &Arc<FiniteCategory>, a: &str, b: &str) -> Functor {
        let shape = corpus::discrete(2);
        let oa = c.obj_by_label(a).unwrap();
        let ob = c.obj_by_label(b).unwrap();
        Functor::new(
            "pair",
            shape,
            c.clone(),
            vec![oa, ob],
            vec![c.id(oa), c.id(ob)],
        )
        .unwrap()
    }

    #[test]
    fn product_in_divisibility_is_gcd() {
        let d12 = corpus::div_poset(12);
        let diag = pair_diagram(&d12, "4", "6");
        let lim = limit_cat(&diag, &caps()).unwrap().unwrap();
        assert_eq!(d12.obj_label(lim.vertex), "2");
        check_cone(&diag, &lim).unwrap();
    }

    #[test]
    fn coproduct_in_divisibility_is_lcm() {
        let d12 = corpus::div_poset(12);
        let diag = pair_diagram(&d12, "4", "6");
        let colim = colimit_cat(&diag, &caps()).unwrap().unwrap();
        assert_eq!(d12.obj_label(colim.vertex), "12");
        check_cocone(&diag, &colim).unwrap();
    }

    #[test]
    fn empty_limit_is_terminal_object() {
        let d12 = corpus::div_poset(12);
        let shape = corpus::discrete(0);
        let diag = Functor::new("empty", shape, d12.clone(), vec![], vec![]).unwrap();
        let lim = limit_cat(&diag, &caps()).unwrap().unwrap();
        assert_eq!(d12.obj_label(lim.vertex), "12");
        assert_eq!(
            Some(lim.vertex),
            crate::cat::find_universal_object(&d12, UniversalKind::Terminal)
        );
        let colim = colimit_cat(&diag, &caps()).unwrap().unwrap();
        assert_eq!(d12.obj_label(colim.vertex), "1");
    }

    #[test]
    fn no_limit_reported_honestly() {
        // Two parallel objects with no common lower bound: the discrete
        // two-object category has no binary products.
        let d2 = corpus::discrete(2);
        let diag = Functor::new(
            "pair",
            corpus::discrete(2),
            d2.clone(),
            vec![Obj(0), Obj(1)],
            vec![Mor(0), Mor(1)],
        )
        .unwrap();
        assert!(limit_cat(&diag, &caps()).unwrap().is_none());
    }

    #[test]
    fn cones_agree_with_transformations_from_constant_functor() {
        let d12 = corpus::div_poset(12);
        let diag = pair_diagram(&d12, "4", "6");
        for v in d12.objects() {
            let cones = enumerate_cones(&diag, v, &caps()).unwrap();
            let delta = Functor::constant(&diag.source, &d12, v);
            let nats = enumerate_nats(&delta, &diag, &caps()).unwrap();
            assert_eq!(cones.len(), nats.len());
            for (cone, nat) in cones.iter().zip(nats.iter()) {
                assert_eq!(cone.legs, nat.components);
            }
        }
    }

    #[test]
    fn set_pullback_matches_pair_formula() {
        // b → a ← c with s: {x0,x1} → {0,1}, t: {y0,y1} → {0,1} constant 0.
        let shape = corpus::cospan();
        let z = token_set(&["0", "1"]);
        let xs = token_set(&["x0", "x1"]);
        let ys = token_set(&["y0", "y1"]);
        let s = FinFunction::new(xs.clone(), z.clone(), vec![0, 1]).unwrap();
        let t = FinFunction::new(ys.clone(), z.clone(), vec![0, 0]).unwrap();
        let d = SetFunctor::new(
            "pullback data",
            shape,
            vec![z.clone(), xs.clone(), ys.clone()],
            vec![
                FinFunction::identity(&z),
                FinFunction::identity(&xs),
                FinFunction::identity(&ys),
                s,
                t,
            ],
        )
        .unwrap();
        let cone = crate::finset::limit_finset(&d, &caps()).unwrap();
        verify_set_limit(&d, &cone, &caps()).unwrap();
        // Families (z, x, y) with s(x) = z and t(y) = z: (0,x0,y0), (0,x0,y1).
        assert_eq!(cone.vertex.len(), 2);
        let via_outcome = limit(&Diagram::Set(d.clone()), &caps()).unwrap().unwrap();
        match via_outcome {
            LimitOutcome::Set(c2) => assert_eq!(c2.vertex, cone.vertex),
            _ => panic!("set diagram must produce a set cone"),
        }
    }

    #[test]
    fn reduction_matches_direct_limit_on_set_diagrams() {
        let caps = caps();
        // Parallel pair, cospan, and a discrete pair: the reduction must
        // reproduce the element-formula limit verbatim.
        let pair = corpus::parallel_pair();
        let a = token_set(&["0", "1", "2"]);
        let b = token_set(&["p", "q"]);
        let f = FinFunction::new(a.clone(), b.clone(), vec![0, 1, 0]).unwrap();
        let g = FinFunction::new(a.clone(), b.clone(), vec![0, 0, 0]).unwrap();
        let d = SetFunctor::new(
            "equalizer data",
            pair,
            vec![a.clone(), b.clone()],
            vec![
                FinFunction::identity(&a),
                FinFunction::identity(&b),
                f,
                g,
            ],
        )
        .unwrap();
        let direct = crate::finset::limit_finset(&d, &caps).unwrap();
        let reduced = limit_via_products_equalizers_set(&d, &caps).unwrap();
        assert_eq!(direct.vertex.len(), reduced.vertex.len());
        // Components agree object-wise under the projections.
        for atom in &reduced.vertex.elements {
            assert!(direct
                .vertex
                .elements
                .iter()
                .any(|other| match (atom, other) {
                    (Atom::Tuple(p), Atom::Tuple(q)) => p == q,
                    _ => false,
                }));
        }

        let disc = corpus::discrete(2);
        let d2 = SetFunctor::new(
            "plain pair",
            disc,
            vec![token_set(&["0", "1"]), token_set(&["p", "q", "r"])],
            vec![
                FinFunction::identity(&token_set(&["0", "1"])),
                FinFunction::identity(&token_set(&["p", "q", "r"])),
            ],
        )
        .unwrap();
        let direct2 = crate::finset::limit_finset(&d2, &caps).unwrap();
        let reduced2 = limit_via_products_equalizers_set(&d2, &caps).unwrap();
        assert_eq!(direct2.vertex.len(), 6);
        assert_eq!(reduced2.vertex.len(), 6);
    }

    #[test]
    fn reduction_matches_direct_limit_in_category() {
        let d12 = corpus::div_poset(12);
        let diag = pair_diagram(&d12, "4", "6");
        let reduced = limit_via_products_equalizers_cat(&diag, &caps()).unwrap();
        let direct = limit_cat(&diag, &caps()).unwrap().unwrap();
        assert_eq!(reduced.vertex, direct.vertex);
        assert_eq!(reduced.legs, direct.legs);
    }

    #[test]
    fn reduction_reports_missing_product() {
        // The discrete two-object category has no binary products.
        let d2 = corpus::discrete(2);
        let diag = Functor::new(
            "pair",
            corpus::discrete(2),
            d2.clone(),
            vec![Obj(0), Obj(1)],
            vec![Mor(0), Mor(1)],
        )
        .unwrap();
        match limit_via_products_equalizers_cat(&diag, &caps()) {
            Err(LimitError::MissingProduct { .. }) => {}
            other => panic!("expected a missing product, got {:?}", other),
        }
    }

    #[test]
    fn monic_epic_in_function_category_match_injective_surjective() {
        let caps = caps();
        let sets = vec![token_set(&["*"]), token_set(&["a", "b"])];
        let (cat, functions) = crate::finset::set_category("Sets12", &sets, &caps).unwrap();
        for m in cat.morphisms() {
            let props = crate::finset::function_props(&functions[m.0]);
            let flags = is_monic_epic(&cat, m);
            assert_eq!(flags.monic, props.injective, "morphism {}", m.0);
            assert_eq!(flags.epic, props.surjective, "morphism {}", m.0);
        }
    }

    #[test]
    fn poset_morphisms_are_monic_and_epic_without_being_iso() {
        let d12 = corpus::div_poset(12);
        for m in d12.morphisms() {
            let flags = is_monic_epic(&d12, m);
            assert!(flags.monic && flags.epic);
        }
        // Yet most are not isomorphisms.
        let two_to_twelve = d12
            .morphisms()
            .find(|&m| d12.dom(m) != d12.cod(m))
            .unwrap();
        assert!(!d12.is_isomorphism(two_to_twelve));
    }

    #[test]
    fn monic_iff_identity_square_is_pullback() {
        let caps = caps();
        let sets = vec![token_set(&["*"]), token_set(&["a", "b"])];
        let (cat, _functions) = crate::finset::set_category("Sets12", &sets, &caps).unwrap();
        let cat = Arc::new(cat);
        let shape = corpus::cospan();
        for m in cat.morphisms() {
            let (a, b) = (cat.dom(m), cat.cod(m));
            let diag = Functor::new(
                "kernel-pair",
                shape.clone(),
                cat.clone(),
                vec![b, a, a],
                vec![cat.id(b), cat.id(a), cat.id(a), m, m],
            )
            .unwrap();
            let square = Cone {
                vertex: a,
                legs: vec![m, cat.id(a), cat.id(a)],
            };
            let square_is_pullback = is_limit_cone(&diag, &square, &caps).unwrap();
            let flags = is_monic_epic(&cat, m);
            assert_eq!(square_is_pullback, flags.monic, "morphism {}", m.0);
        }
    }

    #[test]
    fn limit_cones_related_by_unique_isomorphism() {
        // A preorder with two isomorphic bottom elements: both serve as the
        // product, and exactly one commuting isomorphism links the cones.
        let c = Arc::new(
            crate::cat::from_poset(
                "TwinBottoms",
                vec!["p".into(), "q".into(), "t".into()],
                |i, j| i == j || ((i == 0 || i == 1) && (j == 0 || j == 1)) || j == 2,
            )
            .unwrap(),
        );
        let p = c.obj_by_label("p").unwrap();
        let q = c.obj_by_label("q").unwrap();
        let diag = Functor::new(
            "pair",
            corpus::discrete(2),
            c.clone(),
            vec![p, q],
            vec![c.id(p), c.id(q)],
        )
        .unwrap();
        let all = all_limit_cones(&diag, &caps()).unwrap();
        assert_eq!(all.len(), 2, "both bottoms are limit apexes");
        for l1 in &all {
            for l2 in &all {
                let linking: Vec<Mor> = factorizations(&diag, l2, l1)
                    .into_iter()
                    .filter(|&h| c.is_isomorphism(h))
                    .collect();
                assert_eq!(linking.len(), 1);
            }
        }
        // The canonical pick is the least apex.
        let lim = limit_cat(&diag, &caps()).unwrap().unwrap();
        assert_eq!(lim.vertex, Obj(0));
    }

    #[test]
    fn limit_map_is_functorial() {
        // In the divisibility order, grow the pair (4, 6) into (12, 6):
        // the induced map carries gcd(4, 6) = 2 into gcd(12, 6) = 6.
        let d12 = corpus::div_poset(12);
        let d = pair_diagram(&d12, "4", "6");
        let d2 = pair_diagram(&d12, "12", "6");
        let comps: Vec<Mor> = (0..2)
            .map(|i| {
                d12.hom(d.object_map[i], d2.object_map[i])[0]
            })
            .collect();
        let alpha = NatTransformation::new(d.clone(), d2.clone(), comps).unwrap();
        let lim_d = limit_cat(&d, &caps()).unwrap().unwrap();
        let lim_d2 = limit_cat(&d2, &caps()).unwrap().unwrap();
        let h = limit_map(&d2, &lim_d, &lim_d2, &alpha).unwrap();
        assert_eq!(d12.dom(h), lim_d.vertex);
        assert_eq!(d12.cod(h), lim_d2.vertex);
        // Identity transformation induces the identity map.
        let id_alpha = NatTransformation::identity(&d);
        let h_id = limit_map(&d, &lim_d, &lim_d, &id_alpha).unwrap();
        assert_eq!(h_id, d12.id(lim_d.vertex));
    }

    #[test]
    fn inclusion_of_chain_preserves_and_reflects_binary_limits() {
        let caps = caps();
        let c2 = corpus::chain(2);
        let c3 = corpus::chain(3);
        let incl = corpus::poset_functor("incl", &c2, &c3, vec![Obj(0), Obj(1)]);
        let report = preservation_report(
            &incl,
            &corpus::discrete(2),
            ConeSide::Limits,
            &caps,
            DEFAULT_SAMPLE_BOUND,
            0,
        )
        .unwrap();
        assert!(report.preserves);
        assert!(report.reflects);
        assert!(!report.sampled);
        assert_eq!(report.diagrams_total, 4);
    }

    #[test]
    fn constant_embedding_fails_empty_limit_preservation() {
        // Terminal objects are empty-shape limits; the embedding of the
        // point at the bottom of the two-object order sends the terminal
        // object to a non-terminal one.
        let caps = caps();
        let one = corpus::one();
        let two = corpus::two();
        let at_a = Functor::constant(&one, &two, Obj(0));
        let report = preservation_report(
            &at_a,
            &corpus::discrete(0),
            ConeSide::Limits,
            &caps,
            DEFAULT_SAMPLE_BOUND,
            0,
        )
        .unwrap();
        assert!(!report.preserves);
        // Dually the empty colimit (initial object) is preserved: a is
        // initial in the two-object order.
        let report2 = preservation_report(
            &at_a,
            &corpus::discrete(0),
            ConeSide::Colimits,
            &caps,
            DEFAULT_SAMPLE_BOUND,
            0,
        )
        .unwrap();
        assert!(report2.preserves);
    }

    #[test]
    fn identity_functor_creates_all_limits() {
        let caps = caps();
        let d12 = corpus::div_poset(12);
        let report = preservation_report(
            &Functor::identity(&d12),
            &corpus::discrete(2),
            ConeSide::Limits,
            &caps,
            DEFAULT_SAMPLE_BOUND,
            0,
        )
        .unwrap();
        assert!(report.preserves && report.reflects && report.creates);
    }

    #[test]
    fn sampling_engages_above_bound_and_is_deterministic() {
        let caps = caps();
        let d12 = corpus::div_poset(12);
        let shape = corpus::discrete(2);
        let incl = Functor::identity(&d12);
        let r1 =
            preservation_report(&incl, &shape, ConeSide::Limits, &caps, 10, 42).unwrap();
        let r2 =
            preservation_report(&incl, &shape, ConeSide::Limits, &caps, 10, 42).unwrap();
        assert!(r1.sampled);
        assert_eq!(r1.seed, Some(42));
        assert_eq!(r1.diagrams_tested, 10);
        assert_eq!(r1.diagrams_total, 36);
        assert_eq!(r1.preserves, r2.preserves);
        assert_eq!(r1.reflects, r2.reflects);
        assert_eq!(r1.creates, r2.creates);
    }

    #[test]
    fn kan_along_collapse_of_two_points_sums_the_values() {
        // Along the unique functor from two isolated points to the point,
        // the extension of ({a}, {b, c}) has the three-element sum as its
        // single value.
        let caps = caps();
        let two_points = corpus::discrete(2);
        let point = corpus::one();
        let collapse = Functor::constant(&two_points, &point, Obj(0));
        let x = SetFunctor::new(
            "values",
            two_points.clone(),
            vec![token_set(&["a"]), token_set(&["b", "c"])],
            vec![
                FinFunction::identity(&token_set(&["a"])),
                FinFunction::identity(&token_set(&["b", "c"])),
            ],
        )
        .unwrap();
        let kan = kan_left(&collapse, &x, &caps).unwrap();
        assert_eq!(kan.extension.sets[0].len(), 3);
        // Units are jointly injective here: the two values stay disjoint.
        let hit_a = kan.unit[0].map.clone();
        let hit_b = kan.unit[1].map.clone();
        assert!(hit_a.iter().all(|p| !hit_b.contains(p)));
    }

    #[test]
    fn kan_along_identity_is_isomorphic_to_the_original() {
        let caps = caps();
        let pair = corpus::parallel_pair();
        let a = token_set(&["0", "1", "2"]);
        let b = token_set(&["p", "q"]);
        let x = SetFunctor::new(
            "data",
            pair.clone(),
            vec![a.clone(), b.clone()],
            vec![
                FinFunction::identity(&a),
                FinFunction::identity(&b),
                FinFunction::new(a.clone(), b.clone(), vec![0, 1, 0]).unwrap(),
                FinFunction::new(a.clone(), b.clone(), vec![1, 1, 1]).unwrap(),
            ],
        )
        .unwrap();
        let kan = kan_left(&Functor::identity(&pair), &x, &caps).unwrap();
        for o in 0..2 {
            assert_eq!(kan.extension.sets[o].len(), x.sets[o].len());
            let props = crate::finset::function_props(&kan.unit[o]);
            assert!(props.inverse.is_some(), "unit must be bijective");
        }
    }

    #[test]
    fn kan_along_point_inclusion_copies_along_reachable_maps() {
        // Include the point as `a` in the two-object order and extend
        // X(*) = {x, y}: both values of the extension are two-element sets.
        let caps = caps();
        let one = corpus::one();
        let two = corpus::two();
        let incl = Functor::constant(&one, &two, Obj(0));
        let x = SetFunctor::new(
            "pair of points",
            one.clone(),
            vec![token_set(&["x", "y"])],
            vec![FinFunction::identity(&token_set(&["x", "y"]))],
        )
        .unwrap();
        let kan = kan_left(&incl, &x, &caps).unwrap();
        assert_eq!(kan.extension.sets[0].len(), 2);
        assert_eq!(kan.extension.sets[1].len(), 2);
        let props = crate::finset::function_props(&kan.extension.maps[2]);
        assert!(props.inverse.is_some(), "the arrow action is a bijection");
    }

    #[test]
    fn kan_satisfies_the_mapping_bijection() {
        // Maps out of the extension correspond to maps out of the original
        // along the functor: count transformations on both sides.
        let caps = caps();
        let two_points = corpus::discrete(2);
        let point = corpus::one();
        let collapse = Functor::constant(&two_points, &point, Obj(0));
        let x = SetFunctor::new(
            "values",
            two_points.clone(),
            vec![token_set(&["a"]), token_set(&["b", "c"])],
            vec![
                FinFunction::identity(&token_set(&["a"])),
                FinFunction::identity(&token_set(&["b", "c"])),
            ],
        )
        .unwrap();
        let kan = kan_left(&collapse, &x, &caps).unwrap();
        let y = SetFunctor::new(
            "test target",
            point.clone(),
            vec![token_set(&["0", "1"])],
            vec![FinFunction::identity(&token_set(&["0", "1"]))],
        )
        .unwrap();
        let from_extension =
            crate::finset::enumerate_set_nats(&kan.extension, &y, &caps).unwrap();
        let restricted = restrict_along(&collapse, &y).unwrap();
        let from_original = crate::finset::enumerate_set_nats(&x, &restricted, &caps).unwrap();
        assert_eq!(from_extension.len(), from_original.len());
        // The correspondence sends α to (α ∘ F) · unit, and is injective.
        let mut images: Vec<Vec<Vec<usize>>> = Vec::new();
        for alpha in &from_extension {
            let whiskered: Vec<FinFunction> = two_points
                .objects()
                .map(|a| {
                    let fa = collapse.on_obj(a);
                    kan.unit[a.0].then(&alpha[fa.0]).unwrap()
                })
                .collect();
            crate::finset::check_set_nat(&x, &restricted, &whiskered).unwrap();
            let shape: Vec<Vec<usize>> = whiskered.iter().map(|f| f.map.clone()).collect();
            assert!(!images.contains(&shape), "correspondence must be injective");
            images.push(shape);
        }
    }

    #[test]
    fn identity_limit_apex_is_initial() {
        let caps = caps();
        for c in [corpus::div_poset(12), corpus::two(), corpus::chain(3)] {
            let apex = initial_via_identity_limit(&c, &caps).unwrap();
            assert_eq!(
                apex,
                crate::cat::find_universal_object(&c, UniversalKind::Initial)
            );
        }
        // A category without an initial object has no identity-diagram limit.
        let d2 = corpus::discrete(2);
        assert_eq!(initial_via_identity_limit(&d2, &caps).unwrap(), None);
    }

    #[test]
    fn set_colimit_verification_rejects_wrong_quotient() {
        // Claiming the sum itself (no identification) as the coequalizer
        // vertex must fail verification.
        let caps = caps();
        let pair = corpus::parallel_pair();
        let a = token_set(&["0", "1"]);
        let b = token_set(&["p", "q"]);
        let d = SetFunctor::new(
            "swap pair",
            pair,
            vec![a.clone(), b.clone()],
            vec![
                FinFunction::identity(&a),
                FinFunction::identity(&b),
                FinFunction::new(a.clone(), b.clone(), vec![0, 1]).unwrap(),
                FinFunction::new(a.clone(), b.clone(), vec![1, 0]).unwrap(),
            ],
        )
        .unwrap();
        let good = crate::finset::colimit_finset(&d, &caps).unwrap();
        verify_set_colimit(&d, &good, &caps).unwrap();
        assert_eq!(good.vertex.len(), 1);
        let bogus = SetCocone {
            vertex: b.clone(),
            legs: vec![
                FinFunction::new(a.clone(), b.clone(), vec![0, 1]).unwrap(),
                FinFunction::identity(&b),
            ],
        };
        assert!(verify_set_colimit(&d, &bogus, &caps).is_err());
    }
}
