//! Finite categories as validated composition tables.
//!
//! Objects and morphisms are positional indices; labels are display-only
//! metadata. A [`FiniteCategory`] stores a dense partial composition table
//! and is only handed out after all four category laws have been checked:
//! identity boundaries, composition boundaries, identity laws and
//! associativity.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::caps::Caps;
use crate::functor::{Functor, NatTransformation};
use crate::union_find::UnionFind;

/// Object index in a [`FiniteCategory`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obj(pub usize);

/// Morphism index in a [`FiniteCategory`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mor(pub usize);

/// Endpoint and display data for one morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorData {
    pub dom: Obj,
    pub cod: Obj,
    pub label: String,
}

/// Everything that can go wrong when building or validating a category.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CatError {
    #[error("{what} index {index} out of range (length {len})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },
    #[error("composition table must have {expected} entries, found {found}")]
    TableShape { expected: usize, found: usize },
    #[error("composable pair (f={f}, g={g}) has no composite entry")]
    MissingComposite { f: usize, g: usize },
    #[error("non-composable pair (f={f}, g={g}) has a composite entry")]
    SpuriousComposite { f: usize, g: usize },
    #[error("composite of (f={f}, g={g}) is morphism {composite} with wrong endpoints")]
    CompositeBoundary { f: usize, g: usize, composite: usize },
    #[error("identity violation: {description}")]
    IdentityViolation { description: String },
    #[error("associativity fails on the triple (f={f}, g={g}, h={h})")]
    AssociativityViolation { f: usize, g: usize, h: usize },
    #[error("size cap exceeded building {what}: needs {needed}, cap {cap}")]
    SizeCapExceeded {
        what: String,
        needed: usize,
        cap: usize,
    },
    #[error(
        "presentation not proven finite within cap: {classes} path classes at length {length}, cap {cap}"
    )]
    CapExceeded {
        classes: usize,
        length: usize,
        cap: usize,
    },
    #[error("multiplication table is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("multiplication table has no two-sided unit at index {unit}")]
    NotUnital { unit: usize },
    #[error("relation is not reflexive at element {element}")]
    NotReflexive { element: usize },
    #[error("relation is not transitive: {a} ≤ {b} ≤ {c} but not {a} ≤ {c}")]
    NotTransitive { a: usize, b: usize, c: usize },
    #[error("relation {relation} does not equate parallel paths")]
    NotParallel { relation: usize },
    #[error("relation {relation} contains a non-composable arrow sequence")]
    BrokenPath { relation: usize },
    #[error("functors must share a codomain category")]
    CodomainMismatch,
}

/// A finite category: composition tables that have passed validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    pub name: String,
    /// Display labels, one per object.
    pub objects: Vec<String>,
    /// Endpoints and labels, one per morphism.
    pub morphisms: Vec<MorData>,
    /// `identities[o]` is the identity morphism of object `o`.
    pub identities: Vec<Mor>,
    /// Dense partial table: entry `g * m + f` is `Some(g∘f)` iff
    /// `cod(f) = dom(g)`, where `m` is the morphism count.
    pub compose: Vec<Option<Mor>>,
}

impl FiniteCategory {
    /// Build and validate a category from raw tables.
    pub fn new(
        name: impl Into<String>,
        objects: Vec<String>,
        morphisms: Vec<MorData>,
        identities: Vec<Mor>,
        compose: Vec<Option<Mor>>,
    ) -> Result<Self, CatError> {
        let cat = FiniteCategory {
            name: name.into(),
            objects,
            morphisms,
            identities,
            compose,
        };
        cat.validate()?;
        Ok(cat)
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> {
        (0..self.n_objects()).map(Obj)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> {
        (0..self.n_morphisms()).map(Mor)
    }

    pub fn dom(&self, f: Mor) -> Obj {
        self.morphisms[f.0].dom
    }

    pub fn cod(&self, f: Mor) -> Obj {
        self.morphisms[f.0].cod
    }

    pub fn id(&self, o: Obj) -> Mor {
        self.identities[o.0]
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.identities[self.dom(f).0] == f && self.dom(f) == self.cod(f)
    }

    pub fn obj_label(&self, o: Obj) -> &str {
        &self.objects[o.0]
    }

    pub fn mor_label(&self, f: Mor) -> &str {
        &self.morphisms[f.0].label
    }

    pub fn obj_by_label(&self, label: &str) -> Option<Obj> {
        self.objects.iter().position(|l| l == label).map(Obj)
    }

    pub fn mor_by_label(&self, label: &str) -> Option<Mor> {
        self.morphisms
            .iter()
            .position(|m| m.label == label)
            .map(Mor)
    }

    /// `g ∘ f` ("f then g"); `None` iff `cod(f) ≠ dom(g)`.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.compose[g.0 * self.n_morphisms() + f.0]
    }

    /// Compose a sequence listed in application order (first applied first).
    /// `None` for an empty sequence or a non-composable step.
    pub fn compose_path(&self, path: &[Mor]) -> Option<Mor> {
        let (&first, rest) = path.split_first()?;
        rest.iter()
            .try_fold(first, |acc, &next| self.compose(next, acc))
    }

    /// All morphisms `a → b`, in index order.
    pub fn hom(&self, a: Obj, b: Obj) -> Vec<Mor> {
        self.morphisms()
            .filter(|&f| self.dom(f) == a && self.cod(f) == b)
            .collect()
    }

    /// Check all four category laws over the finite tables.
    pub fn validate(&self) -> Result<(), CatError> {
        let n = self.n_objects();
        let m = self.n_morphisms();

        for (i, md) in self.morphisms.iter().enumerate() {
            for (what, o) in [("domain object", md.dom), ("codomain object", md.cod)] {
                if o.0 >= n {
                    return Err(CatError::IndexOutOfRange {
                        what,
                        index: o.0,
                        len: n,
                    });
                }
            }
            let _ = i;
        }
        if self.identities.len() != n {
            return Err(CatError::TableShape {
                expected: n,
                found: self.identities.len(),
            });
        }
        for (o, &idm) in self.identities.iter().enumerate() {
            if idm.0 >= m {
                return Err(CatError::IndexOutOfRange {
                    what: "identity morphism",
                    index: idm.0,
                    len: m,
                });
            }
            if self.dom(idm) != Obj(o) || self.cod(idm) != Obj(o) {
                return Err(CatError::IdentityViolation {
                    description: format!(
                        "identity of object {o} is morphism {} with endpoints {} → {}",
                        idm.0,
                        self.dom(idm).0,
                        self.cod(idm).0
                    ),
                });
            }
        }
        if self.compose.len() != m * m {
            return Err(CatError::TableShape {
                expected: m * m,
                found: self.compose.len(),
            });
        }

        for g in 0..m {
            for f in 0..m {
                let entry = self.compose[g * m + f];
                let composable = self.cod(Mor(f)) == self.dom(Mor(g));
                match (composable, entry) {
                    (true, None) => return Err(CatError::MissingComposite { f, g }),
                    (false, Some(_)) => return Err(CatError::SpuriousComposite { f, g }),
                    (true, Some(h)) => {
                        if h.0 >= m {
                            return Err(CatError::IndexOutOfRange {
                                what: "composite morphism",
                                index: h.0,
                                len: m,
                            });
                        }
                        if self.dom(h) != self.dom(Mor(f)) || self.cod(h) != self.cod(Mor(g)) {
                            return Err(CatError::CompositeBoundary { f, g, composite: h.0 });
                        }
                    }
                    (false, None) => {}
                }
            }
        }

        for f in self.morphisms() {
            let l = self.id(self.cod(f));
            let r = self.id(self.dom(f));
            if self.compose(l, f) != Some(f) || self.compose(f, r) != Some(f) {
                return Err(CatError::IdentityViolation {
                    description: format!("identity law fails at morphism {}", f.0),
                });
            }
        }

        for h in 0..m {
            for g in 0..m {
                if self.cod(Mor(g)) != self.dom(Mor(h)) {
                    continue;
                }
                let hg = self.compose(Mor(h), Mor(g)).unwrap();
                for f in 0..m {
                    if self.cod(Mor(f)) != self.dom(Mor(g)) {
                        continue;
                    }
                    let gf = self.compose(Mor(g), Mor(f)).unwrap();
                    if self.compose(Mor(h), gf) != self.compose(hg, Mor(f)) {
                        return Err(CatError::AssociativityViolation { f, g, h });
                    }
                }
            }
        }
        Ok(())
    }

    /// Structural equality of tables, ignoring names and labels.
    pub fn table_eq(&self, other: &FiniteCategory) -> bool {
        self.n_objects() == other.n_objects()
            && self.n_morphisms() == other.n_morphisms()
            && self
                .morphisms
                .iter()
                .zip(&other.morphisms)
                .all(|(a, b)| a.dom == b.dom && a.cod == b.cod)
            && self.identities == other.identities
            && self.compose == other.compose
    }

    /// The discrete category on `n` objects labelled `0..n`.
    pub fn discrete(name: impl Into<String>, n: usize) -> FiniteCategory {
        let objects = (0..n).map(|i| i.to_string()).collect();
        let morphisms = (0..n)
            .map(|i| MorData {
                dom: Obj(i),
                cod: Obj(i),
                label: format!("1_{i}"),
            })
            .collect();
        let identities = (0..n).map(Mor).collect();
        let compose = (0..n * n)
            .map(|e| {
                let (g, f) = (e / n, e % n);
                if g == f { Some(Mor(g)) } else { None }
            })
            .collect();
        FiniteCategory::new(name, objects, morphisms, identities, compose)
            .expect("discrete tables are lawful")
    }

    /// Reverse all arrows: same index sets, `dom`/`cod` swapped, and
    /// `compose(g, f)` in the result equal to `compose(f, g)` here.
    pub fn opposite(&self) -> FiniteCategory {
        let m = self.n_morphisms();
        let morphisms = self
            .morphisms
            .iter()
            .map(|md| MorData {
                dom: md.cod,
                cod: md.dom,
                label: md.label.clone(),
            })
            .collect();
        let mut compose = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                compose[g * m + f] = self.compose[f * m + g];
            }
        }
        FiniteCategory::new(
            format!("{}^op", self.name),
            self.objects.clone(),
            morphisms,
            self.identities.clone(),
            compose,
        )
        .expect("opposite of a lawful category is lawful")
    }

    /// Decide whether `f` is an isomorphism; returns its (unique) inverse.
    pub fn inverse(&self, f: Mor) -> Option<Mor> {
        let (a, b) = (self.dom(f), self.cod(f));
        let inverses: Vec<Mor> = self
            .hom(b, a)
            .into_iter()
            .filter(|&g| self.compose(g, f) == Some(self.id(a)) && self.compose(f, g) == Some(self.id(b)))
            .collect();
        assert!(
            inverses.len() <= 1,
            "a morphism has at most one inverse"
        );
        inverses.first().copied()
    }

    pub fn is_isomorphism(&self, f: Mor) -> bool {
        self.inverse(f).is_some()
    }

    /// First isomorphism pair `(f, f⁻¹)` between two objects, if any,
    /// taking the lowest-index `f`.
    pub fn any_iso(&self, a: Obj, b: Obj) -> Option<(Mor, Mor)> {
        self.hom(a, b)
            .into_iter()
            .find_map(|f| self.inverse(f).map(|g| (f, g)))
    }
}

/// Which end of the hom-counting test [`find_universal_object`] runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniversalKind {
    /// Exactly one morphism *to* every object.
    Initial,
    /// Exactly one morphism *from* every object.
    Terminal,
}

/// Lowest-index object with exactly one morphism to (initial) or from
/// (terminal) every object. When several qualify, they are checked to be
/// canonically isomorphic before the lowest is returned.
pub fn find_universal_object(c: &FiniteCategory, kind: UniversalKind) -> Option<Obj> {
    let qualifies = |cand: Obj| {
        c.objects().all(|other| {
            let count = match kind {
                UniversalKind::Initial => c.hom(cand, other).len(),
                UniversalKind::Terminal => c.hom(other, cand).len(),
            };
            count == 1
        })
    };
    let found: Vec<Obj> = c.objects().filter(|&o| qualifies(o)).collect();
    for window in found.windows(2) {
        let (x, y) = (window[0], window[1]);
        let (f, _) = c
            .any_iso(x, y)
            .expect("two universal objects must be isomorphic");
        let back = c.hom(y, x);
        assert!(
            back.len() == 1 && c.inverse(f) == Some(back[0]),
            "the isomorphism between universal objects must be unique"
        );
    }
    found.first().copied()
}

/// Product category: objects and morphisms are pairs, composition is
/// componentwise. Pair `(x, y)` gets index `x * |D| + y`.
pub fn product_category(
    c: &FiniteCategory,
    d: &FiniteCategory,
    caps: &Caps,
) -> Result<FiniteCategory, CatError> {
    let (nc, nd) = (c.n_objects(), d.n_objects());
    let (mc, md) = (c.n_morphisms(), d.n_morphisms());
    let name = format!("({}x{})", c.name, d.name);
    if nc * nd > caps.max_objects {
        return Err(CatError::SizeCapExceeded {
            what: format!("{name} objects"),
            needed: nc * nd,
            cap: caps.max_objects,
        });
    }
    if mc * md > caps.max_morphisms {
        return Err(CatError::SizeCapExceeded {
            what: format!("{name} morphisms"),
            needed: mc * md,
            cap: caps.max_morphisms,
        });
    }

    let mut objects = Vec::with_capacity(nc * nd);
    for a in 0..nc {
        for b in 0..nd {
            objects.push(format!("({},{})", c.objects[a], d.objects[b]));
        }
    }
    let pair_obj = |a: Obj, b: Obj| Obj(a.0 * nd + b.0);
    let pair_mor = |f: Mor, g: Mor| Mor(f.0 * md + g.0);

    let mut morphisms = Vec::with_capacity(mc * md);
    for f in 0..mc {
        for g in 0..md {
            morphisms.push(MorData {
                dom: pair_obj(c.dom(Mor(f)), d.dom(Mor(g))),
                cod: pair_obj(c.cod(Mor(f)), d.cod(Mor(g))),
                label: format!("({},{})", c.morphisms[f].label, d.morphisms[g].label),
            });
        }
    }
    let mut identities = Vec::with_capacity(nc * nd);
    for a in 0..nc {
        for b in 0..nd {
            identities.push(pair_mor(c.id(Obj(a)), d.id(Obj(b))));
        }
    }
    let total = mc * md;
    let mut compose = vec![None; total * total];
    for f1 in 0..mc {
        for g1 in 0..md {
            for f2 in 0..mc {
                for g2 in 0..md {
                    if let (Some(fc), Some(gc)) =
                        (c.compose(Mor(f2), Mor(f1)), d.compose(Mor(g2), Mor(g1)))
                    {
                        let fst = pair_mor(Mor(f1), Mor(g1));
                        let snd = pair_mor(Mor(f2), Mor(g2));
                        compose[snd.0 * total + fst.0] = Some(pair_mor(fc, gc));
                    }
                }
            }
        }
    }
    FiniteCategory::new(name, objects, morphisms, identities, compose)
}

/// One-object category whose endomorphisms are the monoid elements.
/// `table[a * k + b]` is the product `a·b`; composition `g ∘ f` is `g·f`.
pub fn from_monoid(
    name: impl Into<String>,
    elements: Vec<String>,
    unit: usize,
    table: &[usize],
) -> Result<FiniteCategory, CatError> {
    let k = elements.len();
    if table.len() != k * k {
        return Err(CatError::TableShape {
            expected: k * k,
            found: table.len(),
        });
    }
    for (i, &v) in table.iter().enumerate() {
        if v >= k {
            return Err(CatError::IndexOutOfRange {
                what: "monoid product",
                index: i,
                len: k,
            });
        }
    }
    if unit >= k {
        return Err(CatError::IndexOutOfRange {
            what: "monoid unit",
            index: unit,
            len: k,
        });
    }
    let mul = |a: usize, b: usize| table[a * k + b];
    for a in 0..k {
        if mul(unit, a) != a || mul(a, unit) != a {
            return Err(CatError::NotUnital { unit });
        }
    }
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                    return Err(CatError::NotAssociative { a, b, c });
                }
            }
        }
    }
    let morphisms = elements
        .iter()
        .map(|label| MorData {
            dom: Obj(0),
            cod: Obj(0),
            label: label.clone(),
        })
        .collect();
    let compose = (0..k * k).map(|e| Some(Mor(table[e]))).collect();
    FiniteCategory::new(
        name,
        vec!["*".to_string()],
        morphisms,
        vec![Mor(unit)],
        compose,
    )
}

/// Category of a (pre)order: one morphism `a → b` per related pair.
/// The relation must be reflexive and transitive; antisymmetry is not
/// required, so genuine preorders are accepted.
pub fn from_poset(
    name: impl Into<String>,
    elements: Vec<String>,
    leq: impl Fn(usize, usize) -> bool,
) -> Result<FiniteCategory, CatError> {
    let n = elements.len();
    for e in 0..n {
        if !leq(e, e) {
            return Err(CatError::NotReflexive { element: e });
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !leq(a, b) {
                continue;
            }
            for c in 0..n {
                if leq(b, c) && !leq(a, c) {
                    return Err(CatError::NotTransitive { a, b, c });
                }
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut index: BTreeMap<(usize, usize), Mor> = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            if leq(a, b) {
                let label = if a == b {
                    format!("1_{}", elements[a])
                } else {
                    format!("{}<={}", elements[a], elements[b])
                };
                index.insert((a, b), Mor(morphisms.len()));
                morphisms.push(MorData {
                    dom: Obj(a),
                    cod: Obj(b),
                    label,
                });
            }
        }
    }
    let identities = (0..n).map(|a| index[&(a, a)]).collect();
    let m = morphisms.len();
    let mut compose = vec![None; m * m];
    for (&(a, b), &f) in &index {
        for (&(b2, c), &g) in &index {
            if b == b2 {
                compose[g.0 * m + f.0] = Some(index[&(a, c)]);
            }
        }
    }
    FiniteCategory::new(name, elements, morphisms, identities, compose)
}

/// A finite directed graph with path relations, the input to
/// [`from_presentation`].
#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub objects: Vec<String>,
    /// `(label, dom, cod)` per generating arrow.
    pub arrows: Vec<(String, usize, usize)>,
    /// Each relation equates two parallel paths.
    pub relations: Vec<(PathExpr, PathExpr)>,
}

/// A path in the generating graph: arrows listed in application order
/// (first applied first). Empty means the identity path at `at`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathExpr {
    pub at: usize,
    pub arrows: Vec<usize>,
}

impl PathExpr {
    fn endpoints(&self, p: &Presentation) -> Option<(usize, usize)> {
        let mut cur = self.at;
        for &a in &self.arrows {
            let (_, dom, cod) = p.arrows.get(a)?;
            if *dom != cur {
                return None;
            }
            cur = *cod;
        }
        Some((self.at, cur))
    }
}

/// Build the category presented by a graph and path relations.
///
/// Morphisms are congruence classes of paths. The search enumerates paths
/// by length, closes the relations under composition contexts, and accepts
/// once the class structure stabilizes across two consecutive lengths with
/// every longer path reducing to a shorter representative. If the class
/// count passes `morphism_cap`, or the path universe passes
/// `caps.max_enum`, the category is not proven finite and `CapExceeded`
/// is returned — never a silent truncation.
pub fn from_presentation(
    p: &Presentation,
    morphism_cap: usize,
    caps: &Caps,
) -> Result<FiniteCategory, CatError> {
    let n = p.objects.len();
    if n > caps.max_objects {
        return Err(CatError::SizeCapExceeded {
            what: format!("{} objects", p.name),
            needed: n,
            cap: caps.max_objects,
        });
    }
    for (i, (_, dom, cod)) in p.arrows.iter().enumerate() {
        for &o in [dom, cod] {
            if o >= n {
                return Err(CatError::IndexOutOfRange {
                    what: "arrow endpoint",
                    index: i,
                    len: n,
                });
            }
        }
    }
    let mut relations = Vec::new();
    for (i, (lhs, rhs)) in p.relations.iter().enumerate() {
        let le = lhs.endpoints(p).ok_or(CatError::BrokenPath { relation: i })?;
        let re = rhs.endpoints(p).ok_or(CatError::BrokenPath { relation: i })?;
        if le != re {
            return Err(CatError::NotParallel { relation: i });
        }
        relations.push((lhs.clone(), rhs.clone()));
    }

    let base = relations
        .iter()
        .flat_map(|(l, r)| [l.arrows.len(), r.arrows.len()])
        .max()
        .unwrap_or(1)
        .max(1);

    let mut level = base;
    loop {
        // Universe of paths up to `level + 1`, and again up to `level + 2`
        // for the stability cross-check.
        let outer = build_universe(p, level + 2, caps.max_enum).ok_or_else(|| {
            CatError::CapExceeded {
                classes: 0,
                length: level + 2,
                cap: caps.max_enum,
            }
        })?;
        let inner_len = outer
            .paths
            .iter()
            .take_while(|path| path.arrows.len() <= level + 1)
            .count();

        let part_inner = close_congruence(p, &outer, inner_len, &relations);
        let part_outer = close_congruence(p, &outer, outer.paths.len(), &relations);

        let reduces = |part: &Vec<usize>, limit_len: usize, within: usize| {
            // every path in the first `within` entries whose length exceeds
            // `limit_len` shares a class with some path of length ≤ limit_len
            let mut shortest: BTreeMap<usize, usize> = BTreeMap::new();
            for (i, path) in outer.paths.iter().take(within).enumerate() {
                let root = part[i];
                let len = path.arrows.len();
                shortest
                    .entry(root)
                    .and_modify(|s| *s = (*s).min(len))
                    .or_insert(len);
            }
            outer
                .paths
                .iter()
                .take(within)
                .enumerate()
                .all(|(i, _)| shortest[&part[i]] <= limit_len)
        };

        let stable_inner = reduces(&part_inner, level, inner_len);
        let stable_outer = reduces(&part_outer, level, outer.paths.len());
        let partitions_agree = (0..inner_len).all(|i| {
            (0..inner_len).all(|j| (part_inner[i] == part_inner[j]) == (part_outer[i] == part_outer[j]))
        });

        if stable_inner && stable_outer && partitions_agree {
            return assemble_presented(p, &outer, inner_len, &part_inner, morphism_cap);
        }

        level += 1;
        // Track class count at the failed level for honest reporting.
        let classes = {
            let mut roots: Vec<usize> = part_inner[..inner_len].to_vec();
            roots.sort_unstable();
            roots.dedup();
            roots.len()
        };
        if classes > morphism_cap {
            return Err(CatError::CapExceeded {
                classes,
                length: level,
                cap: morphism_cap,
            });
        }
    }
}

struct PathUniverse {
    /// Paths sorted by (length, generation order); identities first.
    paths: Vec<PathExpr>,
    index: BTreeMap<PathExpr, usize>,
    /// (dom, cod) per path.
    ends: Vec<(usize, usize)>,
}

/// All composable paths with length ≤ `max_len`, or `None` past `cap`.
fn build_universe(p: &Presentation, max_len: usize, cap: usize) -> Option<PathUniverse> {
    let mut paths: Vec<PathExpr> = Vec::new();
    let mut ends: Vec<(usize, usize)> = Vec::new();
    let mut index: BTreeMap<PathExpr, usize> = BTreeMap::new();
    for o in 0..p.objects.len() {
        let path = PathExpr {
            at: o,
            arrows: Vec::new(),
        };
        index.insert(path.clone(), paths.len());
        paths.push(path);
        ends.push((o, o));
    }
    let mut frontier_start = 0;
    for _ in 0..max_len {
        let frontier_end = paths.len();
        for i in frontier_start..frontier_end {
            let (dom, cod) = ends[i];
            let arrows = paths[i].arrows.clone();
            for (ai, (_, adom, acod)) in p.arrows.iter().enumerate() {
                if *adom != cod {
                    continue;
                }
                let mut next = arrows.clone();
                next.push(ai);
                let path = PathExpr {
                    at: dom,
                    arrows: next,
                };
                if paths.len() >= cap {
                    return None;
                }
                index.insert(path.clone(), paths.len());
                paths.push(path);
                ends.push((dom, *acod));
            }
        }
        frontier_start = frontier_end;
    }
    Some(PathUniverse { paths, index, ends })
}

/// Union paths equated by a relation in every composition context that
/// stays inside the first `within` paths of the universe. Returns the root
/// per path index (roots chosen as the smallest universe index per class).
fn close_congruence(
    p: &Presentation,
    universe: &PathUniverse,
    within: usize,
    relations: &[(PathExpr, PathExpr)],
) -> Vec<usize> {
    let mut uf = UnionFind::new(within);
    for (lhs, rhs) in relations {
        let (ldom, lcod) = lhs.endpoints(p).expect("validated earlier");
        for (u_idx, u) in universe.paths.iter().enumerate().take(within) {
            let (udom, ucod) = universe.ends[u_idx];
            if ucod != ldom {
                continue;
            }
            // u then lhs then v
            for (v_idx, v) in universe.paths.iter().enumerate().take(within) {
                let (vdom, _) = universe.ends[v_idx];
                if vdom != lcod {
                    continue;
                }
                let glue = |side: &PathExpr| {
                    let mut arrows = u.arrows.clone();
                    arrows.extend_from_slice(&side.arrows);
                    arrows.extend_from_slice(&v.arrows);
                    PathExpr { at: udom, arrows }
                };
                let a = universe.index.get(&glue(lhs)).copied();
                let b = universe.index.get(&glue(rhs)).copied();
                if let (Some(a), Some(b)) = (a, b) {
                    if a < within && b < within {
                        uf.union(a, b);
                    }
                }
            }
        }
    }
    // Smallest index per class as the canonical root: universe order is
    // (length, generation), so roots are shortest-then-earliest.
    let mut root_min: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..within {
        let r = uf.find(i);
        root_min.entry(r).and_modify(|m| *m = (*m).min(i)).or_insert(i);
    }
    (0..within).map(|i| root_min[&uf.find(i)]).collect()
}

/// Quotient the bounded path universe into a composition table.
fn assemble_presented(
    p: &Presentation,
    universe: &PathUniverse,
    within: usize,
    part: &[usize],
    morphism_cap: usize,
) -> Result<FiniteCategory, CatError> {
    let mut reps: Vec<usize> = part[..within].to_vec();
    reps.sort_unstable();
    reps.dedup();
    if reps.len() > morphism_cap {
        return Err(CatError::CapExceeded {
            classes: reps.len(),
            length: universe.paths[within - 1].arrows.len(),
            cap: morphism_cap,
        });
    }
    let class_of: BTreeMap<usize, Mor> = reps
        .iter()
        .enumerate()
        .map(|(ci, &root)| (root, Mor(ci)))
        .collect();

    let label_of = |path: &PathExpr| {
        if path.arrows.is_empty() {
            format!("1_{}", p.objects[path.at])
        } else {
            // display in composition order: last applied first
            path.arrows
                .iter()
                .rev()
                .map(|&a| p.arrows[a].0.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    };

    let morphisms: Vec<MorData> = reps
        .iter()
        .map(|&root| {
            let (dom, cod) = universe.ends[root];
            MorData {
                dom: Obj(dom),
                cod: Obj(cod),
                label: label_of(&universe.paths[root]),
            }
        })
        .collect();
    let identities: Vec<Mor> = (0..p.objects.len()).map(|o| class_of[&part[o]]).collect();

    let m = reps.len();
    let mut compose = vec![None; m * m];
    for (fi, &froot) in reps.iter().enumerate() {
        for (gi, &groot) in reps.iter().enumerate() {
            let (fdom, fcod) = universe.ends[froot];
            let (gdom, _) = universe.ends[groot];
            if fcod != gdom {
                continue;
            }
            // Fold g's representative arrows onto f's, reducing through the
            // partition after each step so intermediates stay in bounds.
            let mut cur = froot;
            for &arrow in &universe.paths[groot].arrows.clone() {
                let mut arrows = universe.paths[cur].arrows.clone();
                arrows.push(arrow);
                let extended = PathExpr { at: fdom, arrows };
                let idx = *universe
                    .index
                    .get(&extended)
                    .expect("stabilized universe contains one-step extensions");
                cur = part[idx];
            }
            compose[gi * m + fi] = Some(class_of[&part[cur]]);
        }
    }
    FiniteCategory::new(p.name.clone(), p.objects.clone(), morphisms, identities, compose)
}

/// The full subcategory of `c` spanned by the given objects (kept in the
/// given order), with its inclusion functor.
pub fn full_subcategory(
    c: &Arc<FiniteCategory>,
    objects: &[Obj],
    name: impl Into<String>,
) -> Result<(Arc<FiniteCategory>, Functor), CatError> {
    let mut obj_index: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, o) in objects.iter().enumerate() {
        if o.0 >= c.n_objects() {
            return Err(CatError::IndexOutOfRange {
                what: "object",
                index: o.0,
                len: c.n_objects(),
            });
        }
        if obj_index.insert(o.0, i).is_some() {
            return Err(CatError::IdentityViolation {
                description: format!("object {} listed twice", o.0),
            });
        }
    }
    let kept: Vec<Mor> = c
        .morphisms()
        .filter(|&m| obj_index.contains_key(&c.dom(m).0) && obj_index.contains_key(&c.cod(m).0))
        .collect();
    let mor_index: BTreeMap<usize, usize> =
        kept.iter().enumerate().map(|(i, m)| (m.0, i)).collect();
    let data: Vec<MorData> = kept
        .iter()
        .map(|&m| MorData {
            dom: Obj(obj_index[&c.dom(m).0]),
            cod: Obj(obj_index[&c.cod(m).0]),
            label: c.mor_label(m).to_string(),
        })
        .collect();
    let identities: Vec<Mor> = objects.iter().map(|&o| Mor(mor_index[&c.id(o).0])).collect();
    let k = kept.len();
    let mut table = vec![None; k * k];
    for (gi, &g) in kept.iter().enumerate() {
        for (fi, &f) in kept.iter().enumerate() {
            if let Some(comp) = c.compose(g, f) {
                table[gi * k + fi] = Some(Mor(mor_index[&comp.0]));
            }
        }
    }
    let sub = Arc::new(FiniteCategory::new(
        name,
        objects.iter().map(|&o| c.obj_label(o).to_string()).collect(),
        data,
        identities,
        table,
    )?);
    let inclusion = Functor::new(
        format!("include {}", sub.name),
        sub.clone(),
        c.clone(),
        objects.to_vec(),
        kept,
    )
    .expect("a full subcategory includes functorially");
    Ok((sub, inclusion))
}

/// A comma category `(P ⇒ Q)` together with its projections and the
/// natural transformation filling the defining square.
#[derive(Clone, Debug)]
pub struct CommaResult {
    pub category: Arc<FiniteCategory>,
    /// Triple data per comma object: `(A, h, B)` with `h: P(A) → Q(B)`.
    pub triples: Vec<(Obj, Mor, Obj)>,
    /// Morphism pair `(f, g)` per comma morphism.
    pub pairs: Vec<(Mor, Mor)>,
    /// Projection to the source of `P`.
    pub left_projection: Functor,
    /// Projection to the source of `Q`.
    pub right_projection: Functor,
    /// `P ∘ left ⇒ Q ∘ right`, with component `h` at `(A, h, B)`.
    pub square_transformation: NatTransformation,
}

/// Build the comma category of `P : A → C` and `Q : B → C`: objects are
/// triples `(A, h: P(A) → Q(B), B)`, morphisms are pairs `(f, g)` making
/// the square commute.
pub fn comma_category(p: &Functor, q: &Functor, caps: &Caps) -> Result<CommaResult, CatError> {
    if !p.target.table_eq(&q.target) {
        return Err(CatError::CodomainMismatch);
    }
    let (a_cat, b_cat, c_cat) = (&p.source, &q.source, &p.target);
    let name = format!("({}=>{})", p.name, q.name);

    let mut triples: Vec<(Obj, Mor, Obj)> = Vec::new();
    for a in a_cat.objects() {
        for b in b_cat.objects() {
            for h in c_cat.hom(p.on_obj(a), q.on_obj(b)) {
                triples.push((a, h, b));
            }
        }
    }
    if triples.len() > caps.max_objects {
        return Err(CatError::SizeCapExceeded {
            what: format!("{name} objects"),
            needed: triples.len(),
            cap: caps.max_objects,
        });
    }
    let objects: Vec<String> = triples
        .iter()
        .map(|&(a, h, b)| {
            format!(
                "({},{},{})",
                a_cat.obj_label(a),
                c_cat.mor_label(h),
                b_cat.obj_label(b)
            )
        })
        .collect();

    let mut pairs: Vec<(Mor, Mor)> = Vec::new();
    let mut mor_dom_cod: Vec<(usize, usize)> = Vec::new();
    for (si, &(a1, h1, b1)) in triples.iter().enumerate() {
        for (ti, &(a2, h2, b2)) in triples.iter().enumerate() {
            for f in a_cat.hom(a1, a2) {
                for g in b_cat.hom(b1, b2) {
                    let left = c_cat.compose(h2, p.on_mor(f)).expect("square leg composable");
                    let right = c_cat.compose(q.on_mor(g), h1).expect("square leg composable");
                    if left == right {
                        pairs.push((f, g));
                        mor_dom_cod.push((si, ti));
                    }
                }
            }
        }
    }
    if pairs.len() > caps.max_morphisms {
        return Err(CatError::SizeCapExceeded {
            what: format!("{name} morphisms"),
            needed: pairs.len(),
            cap: caps.max_morphisms,
        });
    }
    let morphisms: Vec<MorData> = pairs
        .iter()
        .zip(&mor_dom_cod)
        .map(|(&(f, g), &(s, t))| MorData {
            dom: Obj(s),
            cod: Obj(t),
            label: format!("({},{})", a_cat.mor_label(f), b_cat.mor_label(g)),
        })
        .collect();

    let pair_index: BTreeMap<(usize, Mor, Mor), Mor> = pairs
        .iter()
        .zip(&mor_dom_cod)
        .enumerate()
        .map(|(i, (&(f, g), &(s, _)))| ((s, f, g), Mor(i)))
        .collect();

    let identities: Vec<Mor> = triples
        .iter()
        .enumerate()
        .map(|(si, &(a, _, b))| pair_index[&(si, a_cat.id(a), b_cat.id(b))])
        .collect();

    let m = pairs.len();
    let mut compose = vec![None; m * m];
    for (i1, (&(f1, g1), &(s1, t1))) in pairs.iter().zip(&mor_dom_cod).enumerate() {
        for (i2, (&(f2, g2), &(s2, _))) in pairs.iter().zip(&mor_dom_cod).enumerate() {
            if t1 != s2 {
                continue;
            }
            let fc = a_cat.compose(f2, f1).expect("component composable");
            let gc = b_cat.compose(g2, g1).expect("component composable");
            compose[i2 * m + i1] = Some(pair_index[&(s1, fc, gc)]);
        }
    }
    let category = Arc::new(FiniteCategory::new(
        name,
        objects,
        morphisms,
        identities,
        compose,
    )?);

    let left_projection = Functor::new(
        "dom",
        Arc::clone(&category),
        Arc::clone(&p.source),
        triples.iter().map(|&(a, _, _)| a).collect(),
        pairs.iter().map(|&(f, _)| f).collect(),
    )
    .expect("comma projection is a functor");
    let right_projection = Functor::new(
        "cod",
        Arc::clone(&category),
        Arc::clone(&q.source),
        triples.iter().map(|&(_, _, b)| b).collect(),
        pairs.iter().map(|&(_, g)| g).collect(),
    )
    .expect("comma projection is a functor");
    let square_transformation = NatTransformation::new(
        left_projection.then(p).expect("composable"),
        right_projection.then(q).expect("composable"),
        triples.iter().map(|&(_, h, _)| h).collect(),
    )
    .expect("comma square commutes naturally");

    Ok(CommaResult {
        category,
        triples,
        pairs,
        left_projection,
        right_projection,
        square_transformation,
    })
}

/// Which slice to take in [`slice_category`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceSide {
    /// Objects over `A`: maps into `A`.
    Over,
    /// Objects under `A`: maps out of `A`.
    Under,
}

/// Slice (`Over`) or coslice (`Under`) of `C` at `A`, as a comma category
/// of the identity against the constant functor at `A`. The forgetful
/// projection is `left_projection` for `Over` and `right_projection`
/// for `Under`.
pub fn slice_category(
    c: &Arc<FiniteCategory>,
    a: Obj,
    side: SliceSide,
    caps: &Caps,
) -> Result<CommaResult, CatError> {
    if a.0 >= c.n_objects() {
        return Err(CatError::IndexOutOfRange {
            what: "slice object",
            index: a.0,
            len: c.n_objects(),
        });
    }
    let unit = Arc::new(FiniteCategory::discrete("1", 1));
    let ident = Functor::identity(c);
    let constant = Functor::constant(&unit, c, a);
    match side {
        SliceSide::Over => comma_category(&ident, &constant, caps),
        SliceSide::Under => comma_category(&constant, &ident, caps),
    }
}
