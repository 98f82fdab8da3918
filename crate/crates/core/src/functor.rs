//! Functors, natural transformations, their compositions, and functor
//! categories — all validated exhaustively over the finite tables.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::caps::Caps;
use crate::cat::{FiniteCategory, Mor, MorData, Obj};

/// Everything that can go wrong building functors and transformations.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FunctorError {
    #[error("{what} must have {expected} entries, found {found}")]
    MapShape {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{what} index {index} out of range (length {len})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },
    #[error("image of morphism {morphism} has endpoints inconsistent with the object map")]
    DomCodMismatch { morphism: usize },
    #[error("identity of object {object} is not sent to an identity")]
    IdentityNotPreserved { object: usize },
    #[error("composition not preserved on the pair (f={f}, g={g})")]
    CompositionNotPreserved { f: usize, g: usize },
    #[error("boundaries do not line up for this composition")]
    BoundaryMismatch,
    #[error("component at object {object} has wrong endpoints")]
    ComponentBoundary { object: usize },
    #[error("naturality square fails at morphism {morphism}")]
    NaturalityViolation { morphism: usize },
    #[error("enumeration cap exceeded for {what}: needs {needed}, cap {cap}")]
    CapExceeded {
        what: String,
        needed: usize,
        cap: usize,
    },
}

/// A functor between finite categories, validated on construction.
#[derive(Clone, Debug)]
pub struct Functor {
    pub name: String,
    pub source: Arc<FiniteCategory>,
    pub target: Arc<FiniteCategory>,
    /// Image object per source object.
    pub object_map: Vec<Obj>,
    /// Image morphism per source morphism.
    pub morphism_map: Vec<Mor>,
}

impl Functor {
    /// Build and validate: endpoints consistent, identities preserved,
    /// composition preserved over all composable pairs.
    pub fn new(
        name: impl Into<String>,
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        object_map: Vec<Obj>,
        morphism_map: Vec<Mor>,
    ) -> Result<Self, FunctorError> {
        let f = Functor {
            name: name.into(),
            source,
            target,
            object_map,
            morphism_map,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<(), FunctorError> {
        let (src, tgt) = (&self.source, &self.target);
        if self.object_map.len() != src.n_objects() {
            return Err(FunctorError::MapShape {
                what: "object map",
                expected: src.n_objects(),
                found: self.object_map.len(),
            });
        }
        if self.morphism_map.len() != src.n_morphisms() {
            return Err(FunctorError::MapShape {
                what: "morphism map",
                expected: src.n_morphisms(),
                found: self.morphism_map.len(),
            });
        }
        for (i, &o) in self.object_map.iter().enumerate() {
            if o.0 >= tgt.n_objects() {
                return Err(FunctorError::IndexOutOfRange {
                    what: "object image",
                    index: i,
                    len: tgt.n_objects(),
                });
            }
        }
        for (i, &m) in self.morphism_map.iter().enumerate() {
            if m.0 >= tgt.n_morphisms() {
                return Err(FunctorError::IndexOutOfRange {
                    what: "morphism image",
                    index: i,
                    len: tgt.n_morphisms(),
                });
            }
        }
        for f in src.morphisms() {
            let img = self.on_mor(f);
            if tgt.dom(img) != self.on_obj(src.dom(f)) || tgt.cod(img) != self.on_obj(src.cod(f)) {
                return Err(FunctorError::DomCodMismatch { morphism: f.0 });
            }
        }
        for a in src.objects() {
            if self.on_mor(src.id(a)) != tgt.id(self.on_obj(a)) {
                return Err(FunctorError::IdentityNotPreserved { object: a.0 });
            }
        }
        for g in src.morphisms() {
            for f in src.morphisms() {
                if let Some(gf) = src.compose(g, f) {
                    let lhs = tgt.compose(self.on_mor(g), self.on_mor(f));
                    if lhs != Some(self.on_mor(gf)) {
                        return Err(FunctorError::CompositionNotPreserved { f: f.0, g: g.0 });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(c: &Arc<FiniteCategory>) -> Functor {
        Functor {
            name: format!("1_{}", c.name),
            source: Arc::clone(c),
            target: Arc::clone(c),
            object_map: c.objects().collect(),
            morphism_map: c.morphisms().collect(),
        }
    }

    /// The constant functor sending everything in `source` to `at` and its
    /// identity.
    pub fn constant(source: &Arc<FiniteCategory>, target: &Arc<FiniteCategory>, at: Obj) -> Functor {
        Functor {
            name: format!("const_{}", target.obj_label(at)),
            source: Arc::clone(source),
            target: Arc::clone(target),
            object_map: vec![at; source.n_objects()],
            morphism_map: vec![target.id(at); source.n_morphisms()],
        }
    }

    pub fn on_obj(&self, a: Obj) -> Obj {
        self.object_map[a.0]
    }

    pub fn on_mor(&self, f: Mor) -> Mor {
        self.morphism_map[f.0]
    }

    /// `g ∘ self`: this functor followed by `g`.
    pub fn then(&self, g: &Functor) -> Result<Functor, FunctorError> {
        if !self.target.table_eq(&g.source) {
            return Err(FunctorError::BoundaryMismatch);
        }
        Ok(Functor {
            name: format!("{}.{}", g.name, self.name),
            source: Arc::clone(&self.source),
            target: Arc::clone(&g.target),
            object_map: self.object_map.iter().map(|&o| g.on_obj(o)).collect(),
            morphism_map: self.morphism_map.iter().map(|&m| g.on_mor(m)).collect(),
        })
    }

    /// The same assignment read as a functor between the opposite
    /// categories.
    pub fn opposite(&self) -> Functor {
        Functor {
            name: format!("{}^op", self.name),
            source: Arc::new(self.source.opposite()),
            target: Arc::new(self.target.opposite()),
            object_map: self.object_map.clone(),
            morphism_map: self.morphism_map.clone(),
        }
    }

    /// Same assignment between the same tables (names and labels ignored).
    pub fn same_maps(&self, other: &Functor) -> bool {
        self.source.table_eq(&other.source)
            && self.target.table_eq(&other.target)
            && self.object_map == other.object_map
            && self.morphism_map == other.morphism_map
    }
}

/// `compose_functors(g, f)` is `g ∘ f`.
pub fn compose_functors(g: &Functor, f: &Functor) -> Result<Functor, FunctorError> {
    f.then(g)
}

/// A natural transformation between parallel functors, validated on
/// construction: component boundaries plus every naturality square.
#[derive(Clone, Debug)]
pub struct NatTransformation {
    pub source: Functor,
    pub target: Functor,
    /// Component morphism (in the target category) per source object.
    pub components: Vec<Mor>,
}

impl NatTransformation {
    pub fn new(
        source: Functor,
        target: Functor,
        components: Vec<Mor>,
    ) -> Result<Self, FunctorError> {
        let nat = NatTransformation {
            source,
            target,
            components,
        };
        nat.validate()?;
        Ok(nat)
    }

    pub fn validate(&self) -> Result<(), FunctorError> {
        let (f, g) = (&self.source, &self.target);
        if !f.source.table_eq(&g.source) || !f.target.table_eq(&g.target) {
            return Err(FunctorError::BoundaryMismatch);
        }
        let a_cat = &f.source;
        let b_cat = &f.target;
        if self.components.len() != a_cat.n_objects() {
            return Err(FunctorError::MapShape {
                what: "components",
                expected: a_cat.n_objects(),
                found: self.components.len(),
            });
        }
        for (i, &c) in self.components.iter().enumerate() {
            if c.0 >= b_cat.n_morphisms() {
                return Err(FunctorError::IndexOutOfRange {
                    what: "component",
                    index: i,
                    len: b_cat.n_morphisms(),
                });
            }
            if b_cat.dom(c) != f.on_obj(Obj(i)) || b_cat.cod(c) != g.on_obj(Obj(i)) {
                return Err(FunctorError::ComponentBoundary { object: i });
            }
        }
        for m in a_cat.morphisms() {
            let (a, a2) = (a_cat.dom(m), a_cat.cod(m));
            let left = b_cat.compose(self.at(a2), f.on_mor(m));
            let right = b_cat.compose(g.on_mor(m), self.at(a));
            if left != right || left.is_none() {
                return Err(FunctorError::NaturalityViolation { morphism: m.0 });
            }
        }
        Ok(())
    }

    /// The identity transformation on `f`.
    pub fn identity(f: &Functor) -> NatTransformation {
        let components = f
            .source
            .objects()
            .map(|a| f.target.id(f.on_obj(a)))
            .collect();
        NatTransformation {
            source: f.clone(),
            target: f.clone(),
            components,
        }
    }

    pub fn at(&self, a: Obj) -> Mor {
        self.components[a.0]
    }

    /// A transformation is invertible exactly when every component is.
    pub fn is_natural_iso(&self) -> bool {
        self.components
            .iter()
            .all(|&c| self.source.target.is_isomorphism(c))
    }

    pub fn same_components(&self, other: &NatTransformation) -> bool {
        self.source.same_maps(&other.source)
            && self.target.same_maps(&other.target)
            && self.components == other.components
    }
}

/// Vertical composition `(β∘α)_A = β_A ∘ α_A`.
pub fn vcompose(
    beta: &NatTransformation,
    alpha: &NatTransformation,
) -> Result<NatTransformation, FunctorError> {
    if !alpha.target.same_maps(&beta.source) {
        return Err(FunctorError::BoundaryMismatch);
    }
    let b_cat = &alpha.source.target;
    let components = alpha
        .components
        .iter()
        .zip(&beta.components)
        .map(|(&a, &b)| b_cat.compose(b, a).ok_or(FunctorError::BoundaryMismatch))
        .collect::<Result<Vec<_>, _>>()?;
    NatTransformation::new(alpha.source.clone(), beta.target.clone(), components)
}

/// Horizontal composition `α′ ∗ α` for `α: F ⇒ G` over `A → B` and
/// `α′: F′ ⇒ G′` over `B → C`. The component at `A` is the diagonal of the
/// naturality square: both candidate formulas `α′_{G(A)} ∘ F′(α_A)` and
/// `G′(α_A) ∘ α′_{F(A)}` are computed and must agree.
pub fn hcompose(
    alpha2: &NatTransformation,
    alpha: &NatTransformation,
) -> Result<NatTransformation, FunctorError> {
    if !alpha.source.target.table_eq(&alpha2.source.source) {
        return Err(FunctorError::BoundaryMismatch);
    }
    let (f, g) = (&alpha.source, &alpha.target);
    let (f2, g2) = (&alpha2.source, &alpha2.target);
    let c_cat = &f2.target;
    let components = f
        .source
        .objects()
        .map(|a| {
            let via_target = c_cat
                .compose(alpha2.at(g.on_obj(a)), f2.on_mor(alpha.at(a)))
                .expect("square side composable");
            let via_source = c_cat
                .compose(g2.on_mor(alpha.at(a)), alpha2.at(f.on_obj(a)))
                .expect("square side composable");
            assert_eq!(
                via_target, via_source,
                "the two naturality-square diagonals must agree"
            );
            via_target
        })
        .collect();
    NatTransformation::new(f.then(f2)?, g.then(g2)?, components)
}

/// Whiskering `α′F`: restrict `α′: F′ ⇒ G′` along `F`, i.e. `α′ ∗ 1_F`.
pub fn nat_after_functor(
    alpha2: &NatTransformation,
    f: &Functor,
) -> Result<NatTransformation, FunctorError> {
    hcompose(alpha2, &NatTransformation::identity(f))
}

/// Whiskering `F′α`: apply `F′` to every component of `α`, i.e. `1_{F′} ∗ α`.
pub fn functor_after_nat(
    f2: &Functor,
    alpha: &NatTransformation,
) -> Result<NatTransformation, FunctorError> {
    hcompose(&NatTransformation::identity(f2), alpha)
}

/// All functors `a → b` in lexicographic order of (object map, morphism
/// map). The object-map space `|ob b|^|ob a|` must stay within
/// `caps.max_enum`, as must the number of partial assignments visited.
pub fn enumerate_functors(
    a: &Arc<FiniteCategory>,
    b: &Arc<FiniteCategory>,
    caps: &Caps,
) -> Result<Vec<Functor>, FunctorError> {
    let (na, nb) = (a.n_objects(), b.n_objects());
    let space = (nb as u128).checked_pow(na as u32);
    match space {
        Some(s) if s <= caps.max_enum as u128 => {}
        _ => {
            return Err(FunctorError::CapExceeded {
                what: format!("functor object maps {} -> {}", a.name, b.name),
                needed: space.map(|s| s as usize).unwrap_or(usize::MAX),
                cap: caps.max_enum,
            })
        }
    }
    if na > 0 && nb == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut visited = 0usize;
    let mut object_map = vec![Obj(0); na];
    loop {
        extend_morphisms(a, b, &object_map, &mut out, &mut visited, caps)?;
        // lexicographic increment, rightmost fastest
        let mut pos = na;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if object_map[pos].0 + 1 < nb {
                object_map[pos].0 += 1;
                for later in object_map.iter_mut().skip(pos + 1) {
                    *later = Obj(0);
                }
                break;
            }
            object_map[pos] = Obj(0);
        }
    }
}

fn extend_morphisms(
    a: &Arc<FiniteCategory>,
    b: &Arc<FiniteCategory>,
    object_map: &[Obj],
    out: &mut Vec<Functor>,
    visited: &mut usize,
    caps: &Caps,
) -> Result<(), FunctorError> {
    fn go(
        a: &Arc<FiniteCategory>,
        b: &Arc<FiniteCategory>,
        object_map: &[Obj],
        mor_map: &mut Vec<Mor>,
        out: &mut Vec<Functor>,
        visited: &mut usize,
        caps: &Caps,
    ) -> Result<(), FunctorError> {
        let pos = mor_map.len();
        if pos == a.n_morphisms() {
            out.push(
                Functor::new(
                    format!("F{}", out.len()),
                    Arc::clone(a),
                    Arc::clone(b),
                    object_map.to_vec(),
                    mor_map.clone(),
                )
                .expect("search invariants imply functoriality"),
            );
            return Ok(());
        }
        let f = Mor(pos);
        let candidates = if a.is_identity(f) {
            vec![b.id(object_map[a.dom(f).0])]
        } else {
            b.hom(object_map[a.dom(f).0], object_map[a.cod(f).0])
        };
        for cand in candidates {
            *visited += 1;
            if *visited > caps.max_enum {
                return Err(FunctorError::CapExceeded {
                    what: format!("functor morphism maps {} -> {}", a.name, b.name),
                    needed: *visited,
                    cap: caps.max_enum,
                });
            }
            mor_map.push(cand);
            if composition_consistent_so_far(a, b, mor_map) {
                go(a, b, object_map, mor_map, out, visited, caps)?;
            }
            mor_map.pop();
        }
        Ok(())
    }
    let mut mor_map = Vec::with_capacity(a.n_morphisms());
    go(a, b, object_map, &mut mor_map, out, visited, caps)
}

/// Check every composition constraint whose three participants are all
/// assigned and involve the newest assignment.
fn composition_consistent_so_far(a: &FiniteCategory, b: &FiniteCategory, mor_map: &[Mor]) -> bool {
    let k = mor_map.len() - 1;
    for i in 0..=k {
        for j in 0..=k {
            if let Some(c) = a.compose(Mor(j), Mor(i)) {
                if c.0 <= k && (i == k || j == k || c.0 == k) {
                    if b.compose(mor_map[j], mor_map[i]) != Some(mor_map[c.0]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// All natural transformations `f ⇒ g`, ordered lexicographically by
/// component indices. Backtracks over objects, pruning with every
/// naturality square whose endpoints are assigned.
pub fn enumerate_nats(
    f: &Functor,
    g: &Functor,
    caps: &Caps,
) -> Result<Vec<NatTransformation>, FunctorError> {
    if !f.source.table_eq(&g.source) || !f.target.table_eq(&g.target) {
        return Err(FunctorError::BoundaryMismatch);
    }
    let a_cat = &f.source;
    let mut out = Vec::new();
    let mut comps: Vec<Mor> = Vec::with_capacity(a_cat.n_objects());
    let mut visited = 0usize;

    fn squares_ok(
        f: &Functor,
        g: &Functor,
        comps: &[Mor],
    ) -> bool {
        let k = comps.len() - 1;
        let b_cat = &f.target;
        for m in f.source.morphisms() {
            let (d, c) = (f.source.dom(m), f.source.cod(m));
            if d.0 <= k && c.0 <= k && (d.0 == k || c.0 == k) {
                let left = b_cat.compose(comps[c.0], f.on_mor(m));
                let right = b_cat.compose(g.on_mor(m), comps[d.0]);
                if left != right || left.is_none() {
                    return false;
                }
            }
        }
        true
    }

    fn go(
        f: &Functor,
        g: &Functor,
        comps: &mut Vec<Mor>,
        out: &mut Vec<NatTransformation>,
        visited: &mut usize,
        caps: &Caps,
    ) -> Result<(), FunctorError> {
        let a_cat = &f.source;
        let pos = comps.len();
        if pos == a_cat.n_objects() {
            out.push(
                NatTransformation::new(f.clone(), g.clone(), comps.clone())
                    .expect("search invariants imply naturality"),
            );
            return Ok(());
        }
        for cand in f.target.hom(f.on_obj(Obj(pos)), g.on_obj(Obj(pos))) {
            *visited += 1;
            if *visited > caps.max_enum {
                return Err(FunctorError::CapExceeded {
                    what: format!("transformations {} => {}", f.name, g.name),
                    needed: *visited,
                    cap: caps.max_enum,
                });
            }
            comps.push(cand);
            if squares_ok(f, g, comps) {
                go(f, g, comps, out, visited, caps)?;
            }
            comps.pop();
        }
        Ok(())
    }

    go(f, g, &mut comps, &mut out, &mut visited, caps)?;
    Ok(out)
}

/// A functor category `[a, b]` with its object and morphism dictionaries.
#[derive(Clone, Debug)]
pub struct FunctorCategory {
    pub category: Arc<FiniteCategory>,
    /// Object `i` of `category` is `functors[i]`.
    pub functors: Vec<Functor>,
    /// Morphism `j` of `category` is `transformations[j]`.
    pub transformations: Vec<NatTransformation>,
    /// `(source functor, target functor)` per morphism.
    ends: Vec<(usize, usize)>,
}

impl FunctorCategory {
    pub fn functor_index(&self, f: &Functor) -> Option<Obj> {
        self.functors.iter().position(|g| g.same_maps(f)).map(Obj)
    }

    pub fn nat_index(&self, n: &NatTransformation) -> Option<Mor> {
        self.transformations
            .iter()
            .position(|m| m.same_components(n))
            .map(Mor)
    }

    /// Source and target functor indices of morphism `m`.
    pub fn nat_ends(&self, m: Mor) -> (Obj, Obj) {
        let (s, t) = self.ends[m.0];
        (Obj(s), Obj(t))
    }
}

/// Build `[a, b]`: objects are all functors `a → b` in enumeration order,
/// morphisms all natural transformations, composition vertical.
pub fn functor_category(
    a: &Arc<FiniteCategory>,
    b: &Arc<FiniteCategory>,
    caps: &Caps,
) -> Result<FunctorCategory, FunctorError> {
    let functors = enumerate_functors(a, b, caps)?;
    if functors.len() > caps.max_objects {
        return Err(FunctorError::CapExceeded {
            what: format!("functor-category objects [{},{}]", a.name, b.name),
            needed: functors.len(),
            cap: caps.max_objects,
        });
    }
    let mut transformations = Vec::new();
    let mut ends = Vec::new();
    let mut mor_data = Vec::new();
    let mut index: BTreeMap<(usize, usize, Vec<Mor>), Mor> = BTreeMap::new();
    for (si, sf) in functors.iter().enumerate() {
        for (ti, tf) in functors.iter().enumerate() {
            for nat in enumerate_nats(sf, tf, caps)? {
                let idx = Mor(transformations.len());
                index.insert((si, ti, nat.components.clone()), idx);
                mor_data.push(MorData {
                    dom: Obj(si),
                    cod: Obj(ti),
                    label: format!("n{}", idx.0),
                });
                ends.push((si, ti));
                transformations.push(nat);
            }
        }
    }
    if transformations.len() > caps.max_morphisms {
        return Err(FunctorError::CapExceeded {
            what: format!("functor-category morphisms [{},{}]", a.name, b.name),
            needed: transformations.len(),
            cap: caps.max_morphisms,
        });
    }
    let identities: Vec<Mor> = functors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let idn = NatTransformation::identity(f);
            index[&(i, i, idn.components)]
        })
        .collect();
    let m = transformations.len();
    let mut compose = vec![None; m * m];
    for (i1, n1) in transformations.iter().enumerate() {
        for (i2, n2) in transformations.iter().enumerate() {
            let (_, t1) = ends[i1];
            let (s2, t2) = ends[i2];
            if t1 != s2 {
                continue;
            }
            let comp = vcompose(n2, n1).expect("boundary checked");
            compose[i2 * m + i1] = Some(index[&(ends[i1].0, t2, comp.components)]);
        }
    }
    let objects = (0..functors.len()).map(|i| format!("F{i}")).collect();
    let category = Arc::new(
        FiniteCategory::new(
            format!("[{},{}]", a.name, b.name),
            objects,
            mor_data,
            identities,
            compose,
        )
        .expect("functor category is lawful"),
    );
    Ok(FunctorCategory {
        category,
        functors,
        transformations,
        ends,
    })
}

/// Exhaustive classification of a functor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    /// Surjective on every hom-set.
    pub full: bool,
    /// Injective on every hom-set.
    pub faithful: bool,
    /// Every target object isomorphic to some image object.
    pub essentially_surjective: bool,
    /// Conjunction of the other three.
    pub equivalence: bool,
}

pub fn classify_functor(f: &Functor) -> Classification {
    let (src, tgt) = (&f.source, &f.target);
    let mut full = true;
    let mut faithful = true;
    for a in src.objects() {
        for a2 in src.objects() {
            let hom = src.hom(a, a2);
            let images: Vec<Mor> = hom.iter().map(|&m| f.on_mor(m)).collect();
            let mut dedup = images.clone();
            dedup.sort_unstable();
            dedup.dedup();
            if dedup.len() != images.len() {
                faithful = false;
            }
            for g in tgt.hom(f.on_obj(a), f.on_obj(a2)) {
                if !images.contains(&g) {
                    full = false;
                }
            }
        }
    }
    let essentially_surjective = tgt
        .objects()
        .all(|b| src.objects().any(|a| tgt.any_iso(f.on_obj(a), b).is_some()));
    Classification {
        full,
        faithful,
        essentially_surjective,
        equivalence: full && faithful && essentially_surjective,
    }
}

/// The diagonal `Δ: a → [shape, a]` sending `X` to the constant functor at
/// `X` and `f` to the constant transformation. Returns the functor
/// category alongside.
pub fn diagonal_functor(
    a: &Arc<FiniteCategory>,
    shape: &Arc<FiniteCategory>,
    caps: &Caps,
) -> Result<(FunctorCategory, Functor), FunctorError> {
    let fc = functor_category(shape, a, caps)?;
    let object_map: Vec<Obj> = a
        .objects()
        .map(|x| {
            fc.functor_index(&Functor::constant(shape, a, x))
                .expect("constant functor is enumerated")
        })
        .collect();
    let morphism_map: Vec<Mor> = a
        .morphisms()
        .map(|f| {
            let cx = Functor::constant(shape, a, a.dom(f));
            let cy = Functor::constant(shape, a, a.cod(f));
            let constant_nat =
                NatTransformation::new(cx, cy, vec![f; shape.n_objects()])
                    .expect("constant components are natural");
            fc.nat_index(&constant_nat)
                .expect("constant transformation is enumerated")
        })
        .collect();
    let delta = Functor::new(
        format!("diag_{}", a.name),
        Arc::clone(a),
        Arc::clone(&fc.category),
        object_map,
        morphism_map,
    )
    .expect("the diagonal assignment is functorial");
    Ok((fc, delta))
}

/// Bounded search for an isomorphism of categories: a functor bijective on
/// objects and on morphisms. Returns the first found in enumeration order.
pub fn find_category_isomorphism(
    c: &Arc<FiniteCategory>,
    d: &Arc<FiniteCategory>,
    caps: &Caps,
) -> Result<Option<Functor>, FunctorError> {
    if c.n_objects() != d.n_objects() || c.n_morphisms() != d.n_morphisms() {
        return Ok(None);
    }
    let is_bijection = |v: &[usize], n: usize| {
        let mut seen = vec![false; n];
        v.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    };
    for f in enumerate_functors(c, d, caps)? {
        let objs: Vec<usize> = f.object_map.iter().map(|o| o.0).collect();
        let mors: Vec<usize> = f.morphism_map.iter().map(|m| m.0).collect();
        if is_bijection(&objs, d.n_objects()) && is_bijection(&mors, d.n_morphisms()) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}
