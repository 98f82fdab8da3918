//! Finite sets and functions: the concrete target category, with explicit
//! element-level limit and colimit formulas and generated equivalence
//! relations.
//!
//! Set equality is element-set equality — order-insensitive; element order
//! is retained only for deterministic iteration and naming.

use std::fmt;
use std::sync::Arc;

use crate::caps::Caps;
use crate::cat::{FiniteCategory, Mor, Obj};
use crate::union_find::UnionFind;

/// An element of a finite set. Constructed sets get structured atoms:
/// tagged pairs for sums, tuples for products, class tokens (named by a
/// canonical representative) for quotients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Token(String),
    /// Element of a sum: (injection index, underlying atom).
    Tagged(usize, Box<Atom>),
    /// Element of a product.
    Tuple(Vec<Atom>),
    /// Element of a quotient, named by its least representative.
    Class(Box<Atom>),
}

impl Atom {
    pub fn token(s: impl Into<String>) -> Atom {
        Atom::Token(s.into())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Token(s) => write!(f, "{s}"),
            Atom::Tagged(i, a) => write!(f, "in{i}({a})"),
            Atom::Tuple(items) => {
                write!(f, "(")?;
                for (i, a) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Atom::Class(a) => write!(f, "[{a}]"),
        }
    }
}

/// Everything that can go wrong in the finite-set layer.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FinSetError {
    #[error("duplicate atom {atom}")]
    DuplicateAtom { atom: String },
    #[error("{what} index {index} out of range (length {len})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },
    #[error("atom {atom} is not in the carrier")]
    UnknownAtom { atom: String },
    #[error("size cap exceeded building {what}: needs {needed}, cap {cap}")]
    SizeCapExceeded {
        what: String,
        needed: usize,
        cap: usize,
    },
    #[error("{what} of the action at morphism {morphism} does not match the assigned set")]
    ValueMismatch {
        what: &'static str,
        morphism: usize,
    },
    #[error("action at the identity of object {object} is not the identity function")]
    IdentityNotPreserved { object: usize },
    #[error("actions do not compose on the pair (f={f}, g={g})")]
    CompositionNotPreserved { f: usize, g: usize },
    #[error("{what} must have {expected} entries, found {found}")]
    ShapeMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("function endpoints do not line up for composition")]
    BoundaryMismatch,
}

/// A finite set: an ordered list of distinct atoms.
#[derive(Clone, Debug)]
pub struct FinSet {
    pub elements: Vec<Atom>,
}

impl FinSet {
    pub fn new(elements: Vec<Atom>) -> Result<Self, FinSetError> {
        for (i, a) in elements.iter().enumerate() {
            if elements[..i].contains(a) {
                return Err(FinSetError::DuplicateAtom {
                    atom: a.to_string(),
                });
            }
        }
        Ok(FinSet { elements })
    }

    pub fn empty() -> FinSet {
        FinSet {
            elements: Vec::new(),
        }
    }

    pub fn from_tokens<S: Into<String>>(tokens: impl IntoIterator<Item = S>) -> FinSet {
        FinSet::new(tokens.into_iter().map(|t| Atom::token(t)).collect())
            .expect("token lists must be distinct")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, atom: &Atom) -> Option<usize> {
        self.elements.iter().position(|a| a == atom)
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.position(atom).is_some()
    }
}

impl PartialEq for FinSet {
    /// Order-insensitive: equal exactly when the element sets coincide.
    fn eq(&self, other: &Self) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut a: Vec<&Atom> = self.elements.iter().collect();
        let mut b: Vec<&Atom> = other.elements.iter().collect();
        a.sort();
        b.sort();
        a == b
    }
}

impl Eq for FinSet {}

/// The fixed two-element truth-value set `{⊤, ⊥}`.
pub fn truth_set() -> FinSet {
    FinSet::from_tokens(["⊤", "⊥"])
}

/// Characteristic function of a subset given by member positions: members
/// go to `⊤`, the rest to `⊥`.
pub fn characteristic(members: &[usize], of: &FinSet) -> Result<FinFunction, FinSetError> {
    for &i in members {
        if i >= of.len() {
            return Err(FinSetError::IndexOutOfRange {
                what: "subset member",
                index: i,
                len: of.len(),
            });
        }
    }
    let map = (0..of.len())
        .map(|i| if members.contains(&i) { 0 } else { 1 })
        .collect();
    FinFunction::new(of.clone(), truth_set(), map)
}

/// A total function between finite sets, stored positionally.
#[derive(Clone, Debug)]
pub struct FinFunction {
    pub dom: FinSet,
    pub cod: FinSet,
    /// `map[i]` is the codomain position of the image of `dom.elements[i]`.
    pub map: Vec<usize>,
}

impl FinFunction {
    pub fn new(dom: FinSet, cod: FinSet, map: Vec<usize>) -> Result<Self, FinSetError> {
        if map.len() != dom.len() {
            return Err(FinSetError::ShapeMismatch {
                what: "assignment",
                expected: dom.len(),
                found: map.len(),
            });
        }
        for (i, &j) in map.iter().enumerate() {
            if j >= cod.len() {
                return Err(FinSetError::IndexOutOfRange {
                    what: "image",
                    index: i,
                    len: cod.len(),
                });
            }
        }
        Ok(FinFunction { dom, cod, map })
    }

    pub fn identity(s: &FinSet) -> FinFunction {
        FinFunction {
            dom: s.clone(),
            cod: s.clone(),
            map: (0..s.len()).collect(),
        }
    }

    /// Build from an atom-level assignment.
    pub fn from_assignment(
        dom: FinSet,
        cod: FinSet,
        assign: impl Fn(&Atom) -> Atom,
    ) -> Result<FinFunction, FinSetError> {
        let map = dom
            .elements
            .iter()
            .map(|a| {
                let img = assign(a);
                cod.position(&img).ok_or(FinSetError::UnknownAtom {
                    atom: img.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        FinFunction::new(dom, cod, map)
    }

    pub fn apply(&self, pos: usize) -> usize {
        self.map[pos]
    }

    /// Image atom of a domain atom, resolved by value.
    pub fn apply_atom(&self, atom: &Atom) -> Option<&Atom> {
        let pos = self.dom.position(atom)?;
        Some(&self.cod.elements[self.map[pos]])
    }

    /// `g ∘ self`: this function followed by `g`. Endpoint sets must be
    /// equal as sets; positions are translated by atom.
    pub fn then(&self, g: &FinFunction) -> Result<FinFunction, FinSetError> {
        if self.cod != g.dom {
            return Err(FinSetError::BoundaryMismatch);
        }
        let map = self
            .map
            .iter()
            .map(|&mid| {
                let atom = &self.cod.elements[mid];
                let gpos = g.dom.position(atom).expect("set equality checked");
                g.map[gpos]
            })
            .collect();
        FinFunction::new(self.dom.clone(), g.cod.clone(), map)
    }

    /// Semantic equality: same endpoint sets and the same atom-level
    /// assignment, regardless of element order.
    pub fn same_function(&self, other: &FinFunction) -> bool {
        self.dom == other.dom
            && self.cod == other.cod
            && self.dom.elements.iter().all(|a| {
                self.apply_atom(a) == other.apply_atom(a)
            })
    }
}

/// Injectivity/surjectivity flags with the inverse when bijective.
#[derive(Clone, Debug)]
pub struct FunctionProps {
    pub injective: bool,
    pub surjective: bool,
    pub inverse: Option<FinFunction>,
}

pub fn function_props(f: &FinFunction) -> FunctionProps {
    let mut hit = vec![Vec::new(); f.cod.len()];
    for (i, &j) in f.map.iter().enumerate() {
        hit[j].push(i);
    }
    let injective = hit.iter().all(|pre| pre.len() <= 1);
    let surjective = hit.iter().all(|pre| !pre.is_empty());
    let inverse = (injective && surjective).then(|| {
        let map = hit.iter().map(|pre| pre[0]).collect();
        FinFunction::new(f.cod.clone(), f.dom.clone(), map).expect("preimages are positions")
    });
    FunctionProps {
        injective,
        surjective,
        inverse,
    }
}

/// A partition of a carrier into disjoint, covering, nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub carrier: FinSet,
    /// Blocks as sorted position lists, ordered by least member.
    pub blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Index of the block containing position `pos`.
    pub fn block_of(&self, pos: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&pos))
            .expect("blocks cover the carrier")
    }

    /// The blocks as sets of atoms.
    pub fn block_sets(&self) -> Vec<FinSet> {
        self.blocks
            .iter()
            .map(|b| FinSet {
                elements: b.iter().map(|&i| self.carrier.elements[i].clone()).collect(),
            })
            .collect()
    }
}

/// Smallest equivalence relation containing the given pairs, as a
/// partition. Blocks are ordered by least member; the representative of a
/// block is its least element.
pub fn generate_equivalence(
    carrier: &FinSet,
    pairs: &[(Atom, Atom)],
) -> Result<Partition, FinSetError> {
    let mut uf = UnionFind::new(carrier.len());
    for (a, b) in pairs {
        let pa = carrier.position(a).ok_or(FinSetError::UnknownAtom {
            atom: a.to_string(),
        })?;
        let pb = carrier.position(b).ok_or(FinSetError::UnknownAtom {
            atom: b.to_string(),
        })?;
        uf.union(pa, pb);
    }
    Ok(Partition {
        carrier: carrier.clone(),
        blocks: uf.classes(),
    })
}

/// Product of a list of sets: tuples in odometer order (rightmost fastest).
pub fn product_set(factors: &[&FinSet], caps: &Caps) -> Result<FinSet, FinSetError> {
    let size: usize = factors.iter().map(|s| s.len()).product();
    if factors.iter().any(|s| s.is_empty()) {
        return Ok(FinSet::empty());
    }
    if size > caps.max_enum {
        return Err(FinSetError::SizeCapExceeded {
            what: "product set".into(),
            needed: size,
            cap: caps.max_enum,
        });
    }
    let mut elements = Vec::with_capacity(size);
    let mut idx = vec![0usize; factors.len()];
    loop {
        elements.push(Atom::Tuple(
            idx.iter()
                .enumerate()
                .map(|(k, &i)| factors[k].elements[i].clone())
                .collect(),
        ));
        let mut pos = factors.len();
        loop {
            if pos == 0 {
                return Ok(FinSet { elements });
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < factors[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Disjoint sum: atoms tagged with their injection index.
pub fn sum_set(summands: &[&FinSet]) -> FinSet {
    let elements = summands
        .iter()
        .enumerate()
        .flat_map(|(i, s)| {
            s.elements
                .iter()
                .map(move |a| Atom::Tagged(i, Box::new(a.clone())))
        })
        .collect();
    FinSet { elements }
}

/// All functions `dom → cod`, in lexicographic order of their assignment
/// vectors.
pub fn all_functions(
    dom: &FinSet,
    cod: &FinSet,
    caps: &Caps,
) -> Result<Vec<FinFunction>, FinSetError> {
    if dom.is_empty() {
        return Ok(vec![FinFunction::new(dom.clone(), cod.clone(), vec![]).unwrap()]);
    }
    if cod.is_empty() {
        return Ok(Vec::new());
    }
    let space = (cod.len() as u128).checked_pow(dom.len() as u32);
    match space {
        Some(s) if s <= caps.max_enum as u128 => {}
        _ => {
            return Err(FinSetError::SizeCapExceeded {
                what: "function space".into(),
                needed: space.map(|s| s as usize).unwrap_or(usize::MAX),
                cap: caps.max_enum,
            })
        }
    }
    let mut out = Vec::new();
    let mut map = vec![0usize; dom.len()];
    loop {
        out.push(FinFunction::new(dom.clone(), cod.clone(), map.clone()).unwrap());
        let mut pos = dom.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            map[pos] += 1;
            if map[pos] < cod.len() {
                break;
            }
            map[pos] = 0;
        }
    }
}

/// The full category on a family of finite sets: one object per set, all
/// functions between them as morphisms, composition by composition of
/// functions. Returns the category together with the function realizing
/// each morphism index.
pub fn set_category(
    name: impl Into<String>,
    sets: &[FinSet],
    caps: &Caps,
) -> Result<(FiniteCategory, Vec<FinFunction>), FinSetError> {
    use crate::cat::MorData;
    let mut functions: Vec<FinFunction> = Vec::new();
    let mut data: Vec<MorData> = Vec::new();
    let mut identities = vec![Mor(0); sets.len()];
    for (i, dom) in sets.iter().enumerate() {
        for (j, cod) in sets.iter().enumerate() {
            for f in all_functions(dom, cod, caps)? {
                let idx = functions.len();
                if idx + 1 > caps.max_morphisms {
                    return Err(FinSetError::SizeCapExceeded {
                        what: "function category morphisms".into(),
                        needed: idx + 1,
                        cap: caps.max_morphisms,
                    });
                }
                if i == j && f.map.iter().enumerate().all(|(k, &v)| k == v) {
                    identities[i] = Mor(idx);
                }
                data.push(MorData {
                    dom: Obj(i),
                    cod: Obj(j),
                    label: format!("f{}", idx),
                });
                functions.push(f);
            }
        }
    }
    let m = functions.len();
    let mut table = vec![None; m * m];
    for g in 0..m {
        for f in 0..m {
            if data[f].cod != data[g].dom {
                continue;
            }
            let composite = functions[f].then(&functions[g])?;
            let k = (0..m)
                .find(|&k| {
                    data[k].dom == data[f].dom
                        && data[k].cod == data[g].cod
                        && functions[k].map == composite.map
                })
                .expect("composite function is enumerated");
            table[g * m + f] = Some(Mor(k));
        }
    }
    let cat = FiniteCategory::new(
        name,
        (0..sets.len()).map(|i| format!("S{}", i)).collect(),
        data,
        identities,
        table,
    )
    .expect("function composition is associative and unital");
    Ok((cat, functions))
}

/// A diagram of sets: a functor from a finite shape category into finite
/// sets, stored as one set per object and one action per morphism.
#[derive(Clone, Debug)]
pub struct SetFunctor {
    pub name: String,
    pub shape: Arc<FiniteCategory>,
    /// Value set per shape object.
    pub sets: Vec<FinSet>,
    /// `maps[m]: sets[dom m] → sets[cod m]`.
    pub maps: Vec<FinFunction>,
}

impl SetFunctor {
    pub fn new(
        name: impl Into<String>,
        shape: Arc<FiniteCategory>,
        sets: Vec<FinSet>,
        maps: Vec<FinFunction>,
    ) -> Result<Self, FinSetError> {
        let f = SetFunctor {
            name: name.into(),
            shape,
            sets,
            maps,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<(), FinSetError> {
        if self.sets.len() != self.shape.n_objects() {
            return Err(FinSetError::ShapeMismatch {
                what: "value sets",
                expected: self.shape.n_objects(),
                found: self.sets.len(),
            });
        }
        if self.maps.len() != self.shape.n_morphisms() {
            return Err(FinSetError::ShapeMismatch {
                what: "actions",
                expected: self.shape.n_morphisms(),
                found: self.maps.len(),
            });
        }
        for m in self.shape.morphisms() {
            let act = &self.maps[m.0];
            if act.dom != self.sets[self.shape.dom(m).0] {
                return Err(FinSetError::ValueMismatch {
                    what: "domain",
                    morphism: m.0,
                });
            }
            if act.cod != self.sets[self.shape.cod(m).0] {
                return Err(FinSetError::ValueMismatch {
                    what: "codomain",
                    morphism: m.0,
                });
            }
        }
        for o in self.shape.objects() {
            let act = &self.maps[self.shape.id(o).0];
            if !act.same_function(&FinFunction::identity(&self.sets[o.0])) {
                return Err(FinSetError::IdentityNotPreserved { object: o.0 });
            }
        }
        for g in self.shape.morphisms() {
            for f in self.shape.morphisms() {
                if let Some(gf) = self.shape.compose(g, f) {
                    let composite = self.maps[f.0]
                        .then(&self.maps[g.0])
                        .expect("endpoints validated");
                    if !composite.same_function(&self.maps[gf.0]) {
                        return Err(FinSetError::CompositionNotPreserved { f: f.0, g: g.0 });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn value(&self, o: Obj) -> &FinSet {
        &self.sets[o.0]
    }

    pub fn action(&self, m: Mor) -> &FinFunction {
        &self.maps[m.0]
    }

    /// The constant diagram at one set over a shape.
    pub fn constant(shape: &Arc<FiniteCategory>, at: &FinSet) -> SetFunctor {
        SetFunctor {
            name: "const".into(),
            shape: Arc::clone(shape),
            sets: vec![at.clone(); shape.n_objects()],
            maps: vec![FinFunction::identity(at); shape.n_morphisms()],
        }
    }
}

/// A cone over a set diagram: a vertex with one leg per shape object.
#[derive(Clone, Debug)]
pub struct SetCone {
    pub vertex: FinSet,
    /// `legs[o]: vertex → D(o)`.
    pub legs: Vec<FinFunction>,
}

/// A cocone under a set diagram.
#[derive(Clone, Debug)]
pub struct SetCocone {
    pub vertex: FinSet,
    /// `legs[o]: D(o) → vertex`.
    pub legs: Vec<FinFunction>,
}

/// Element-formula limit: the vertex is the set of compatible families
/// `(x_I)` — tuples, one component per shape object, with
/// `(Du)(x_I) = x_J` for every `u: I → J`. Legs are the projections.
pub fn limit_finset(d: &SetFunctor, caps: &Caps) -> Result<SetCone, FinSetError> {
    let n = d.shape.n_objects();
    let size: usize = d.sets.iter().map(|s| s.len()).product();
    if size > caps.max_enum {
        return Err(FinSetError::SizeCapExceeded {
            what: format!("limit search for {}", d.name),
            needed: size,
            cap: caps.max_enum,
        });
    }
    let mut families: Vec<Vec<usize>> = Vec::new();
    if d.sets.iter().all(|s| !s.is_empty()) || n == 0 {
        let mut idx = vec![0usize; n];
        'odometer: loop {
            let compatible = d.shape.morphisms().all(|u| {
                let (i, j) = (d.shape.dom(u), d.shape.cod(u));
                d.maps[u.0].map[idx[i.0]] == idx[j.0]
            });
            if compatible {
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
    let vertex = FinSet {
        elements: families
            .iter()
            .map(|fam| {
                Atom::Tuple(
                    fam.iter()
                        .enumerate()
                        .map(|(o, &i)| d.sets[o].elements[i].clone())
                        .collect(),
                )
            })
            .collect(),
    };
    let legs = (0..n)
        .map(|o| {
            FinFunction::new(
                vertex.clone(),
                d.sets[o].clone(),
                families.iter().map(|fam| fam[o]).collect(),
            )
            .expect("projection positions in range")
        })
        .collect();
    Ok(SetCone { vertex, legs })
}

/// Element-formula colimit: the vertex is the disjoint sum of the values,
/// quotiented by the equivalence generated by `x ∼ (Du)(x)`. Class atoms
/// are named by their least (object index, element index) member. Legs
/// send an element to its class.
pub fn colimit_finset(d: &SetFunctor, caps: &Caps) -> Result<SetCocone, FinSetError> {
    let n = d.shape.n_objects();
    let total: usize = d.sets.iter().map(|s| s.len()).sum();
    if total > caps.max_enum {
        return Err(FinSetError::SizeCapExceeded {
            what: format!("colimit search for {}", d.name),
            needed: total,
            cap: caps.max_enum,
        });
    }
    let sets: Vec<&FinSet> = d.sets.iter().collect();
    let sum = sum_set(&sets);
    let mut pairs = Vec::new();
    for u in d.shape.morphisms() {
        let (i, j) = (d.shape.dom(u), d.shape.cod(u));
        for (pos, x) in d.sets[i.0].elements.iter().enumerate() {
            let image = &d.sets[j.0].elements[d.maps[u.0].map[pos]];
            pairs.push((
                Atom::Tagged(i.0, Box::new(x.clone())),
                Atom::Tagged(j.0, Box::new(image.clone())),
            ));
        }
    }
    let partition = generate_equivalence(&sum, &pairs)?;
    let vertex = FinSet {
        elements: partition
            .blocks
            .iter()
            .map(|b| Atom::Class(Box::new(sum.elements[b[0]].clone())))
            .collect(),
    };
    let legs = (0..n)
        .map(|o| {
            let map = d.sets[o]
                .elements
                .iter()
                .map(|x| {
                    let tagged = Atom::Tagged(o, Box::new(x.clone()));
                    let pos = sum.position(&tagged).expect("sum contains all elements");
                    partition.block_of(pos)
                })
                .collect();
            FinFunction::new(d.sets[o].clone(), vertex.clone(), map)
                .expect("class indices in range")
        })
        .collect();
    Ok(SetCocone { vertex, legs })
}

/// Check a family of functions as a natural transformation between two
/// parallel set diagrams: `comps[o]: d(o) → e(o)` with every naturality
/// square commuting.
pub fn check_set_nat(
    d: &SetFunctor,
    e: &SetFunctor,
    comps: &[FinFunction],
) -> Result<(), FinSetError> {
    if !d.shape.table_eq(&e.shape) {
        return Err(FinSetError::BoundaryMismatch);
    }
    if comps.len() != d.shape.n_objects() {
        return Err(FinSetError::ShapeMismatch {
            what: "components",
            expected: d.shape.n_objects(),
            found: comps.len(),
        });
    }
    for (o, c) in comps.iter().enumerate() {
        if c.dom != d.sets[o] {
            return Err(FinSetError::ValueMismatch {
                what: "domain",
                morphism: o,
            });
        }
        if c.cod != e.sets[o] {
            return Err(FinSetError::ValueMismatch {
                what: "codomain",
                morphism: o,
            });
        }
    }
    for u in d.shape.morphisms() {
        let (i, j) = (d.shape.dom(u), d.shape.cod(u));
        let left = d.maps[u.0].then(&comps[j.0]).expect("endpoints line up");
        let right = comps[i.0].then(&e.maps[u.0]).expect("endpoints line up");
        if !left.same_function(&right) {
            return Err(FinSetError::CompositionNotPreserved { f: u.0, g: u.0 });
        }
    }
    Ok(())
}

/// All natural transformations `d ⇒ e` between parallel set diagrams, in
/// lexicographic order of their flattened assignment vectors. Backtracks
/// element by element, pruning with every naturality equation whose two
/// sides are determined.
pub fn enumerate_set_nats(
    d: &SetFunctor,
    e: &SetFunctor,
    caps: &Caps,
) -> Result<Vec<Vec<FinFunction>>, FinSetError> {
    if !d.shape.table_eq(&e.shape) {
        return Err(FinSetError::BoundaryMismatch);
    }
    let n = d.shape.n_objects();
    // flat slots: (object, element position), object-major
    let mut slots: Vec<(usize, usize)> = Vec::new();
    for o in 0..n {
        for i in 0..d.sets[o].len() {
            slots.push((o, i));
        }
    }
    // per-object partial assignment: position in e.sets[o] or usize::MAX
    let mut assign: Vec<Vec<usize>> = (0..n).map(|o| vec![usize::MAX; d.sets[o].len()]).collect();
    let mut out = Vec::new();
    let mut visited = 0usize;

    // precompute the naturality instances touching each slot:
    // for u: I → J and x ∈ D(I): φ_J((Du)(x)) = (Eu)(φ_I(x))
    struct Instance {
        src_obj: usize,
        src_pos: usize,
        dst_obj: usize,
        dst_pos: usize,
        action: usize,
    }
    let mut instances: Vec<Instance> = Vec::new();
    for u in d.shape.morphisms() {
        let (i, j) = (d.shape.dom(u), d.shape.cod(u));
        for x in 0..d.sets[i.0].len() {
            instances.push(Instance {
                src_obj: i.0,
                src_pos: x,
                dst_obj: j.0,
                dst_pos: d.maps[u.0].map[x],
                action: u.0,
            });
        }
    }

    fn consistent(
        e: &SetFunctor,
        assign: &[Vec<usize>],
        instances: &[Instance],
    ) -> bool {
        instances.iter().all(|inst| {
            let src = assign[inst.src_obj][inst.src_pos];
            let dst = assign[inst.dst_obj][inst.dst_pos];
            if src == usize::MAX || dst == usize::MAX {
                return true;
            }
            e.maps[inst.action].map[src] == dst
        })
    }

    fn go(
        d: &SetFunctor,
        e: &SetFunctor,
        slots: &[(usize, usize)],
        pos: usize,
        assign: &mut Vec<Vec<usize>>,
        instances: &[Instance],
        out: &mut Vec<Vec<FinFunction>>,
        visited: &mut usize,
        caps: &Caps,
    ) -> Result<(), FinSetError> {
        if pos == slots.len() {
            let comps = (0..d.shape.n_objects())
                .map(|o| {
                    FinFunction::new(d.sets[o].clone(), e.sets[o].clone(), assign[o].clone())
                        .expect("assignments in range")
                })
                .collect();
            out.push(comps);
            return Ok(());
        }
        let (o, i) = slots[pos];
        for cand in 0..e.sets[o].len() {
            *visited += 1;
            if *visited > caps.max_enum {
                return Err(FinSetError::SizeCapExceeded {
                    what: format!("transformation search {} => {}", d.name, e.name),
                    needed: *visited,
                    cap: caps.max_enum,
                });
            }
            assign[o][i] = cand;
            // check only instances whose undetermined side just got fixed
            let touched = instances
                .iter()
                .filter(|inst| {
                    (inst.src_obj == o && inst.src_pos == i)
                        || (inst.dst_obj == o && inst.dst_pos == i)
                })
                .all(|inst| {
                    let src = assign[inst.src_obj][inst.src_pos];
                    let dst = assign[inst.dst_obj][inst.dst_pos];
                    src == usize::MAX
                        || dst == usize::MAX
                        || e.maps[inst.action].map[src] == dst
                });
            if touched {
                go(d, e, slots, pos + 1, assign, instances, out, visited, caps)?;
            }
            assign[o][i] = usize::MAX;
        }
        Ok(())
    }

    // a slot in an empty target set with a nonempty source: no function
    if (0..n).any(|o| !d.sets[o].is_empty() && e.sets[o].is_empty()) {
        return Ok(Vec::new());
    }
    debug_assert!(consistent(e, &assign, &instances));
    go(
        d, e, &slots, 0, &mut assign, &instances, &mut out, &mut visited, caps,
    )?;
    Ok(out)
}
