//! Stock categories and functors used by tests, benchmarks and the
//! command-line corpus.

use std::sync::Arc;

use crate::cat::{from_monoid, from_poset, FiniteCategory, Mor, MorData, Obj};
use crate::finset::{Atom, FinFunction, FinSet, SetFunctor};
use crate::functor::Functor;

/// The terminal category: one object, one identity.
pub fn one() -> Arc<FiniteCategory> {
    Arc::new(
        FiniteCategory::new(
            "One",
            vec!["*".into()],
            vec![MorData {
                dom: Obj(0),
                cod: Obj(0),
                label: "1_*".into(),
            }],
            vec![Mor(0)],
            vec![Some(Mor(0))],
        )
        .expect("terminal category is lawful"),
    )
}

/// The arrow category: objects `a`, `b`, one non-identity arrow `f: a → b`.
pub fn two() -> Arc<FiniteCategory> {
    Arc::new(
        FiniteCategory::new(
            "Two",
            vec!["a".into(), "b".into()],
            vec![
                MorData {
                    dom: Obj(0),
                    cod: Obj(0),
                    label: "1_a".into(),
                },
                MorData {
                    dom: Obj(1),
                    cod: Obj(1),
                    label: "1_b".into(),
                },
                MorData {
                    dom: Obj(0),
                    cod: Obj(1),
                    label: "f".into(),
                },
            ],
            vec![Mor(0), Mor(1)],
            vec![
                Some(Mor(0)),
                None,
                None,
                None,
                Some(Mor(1)),
                Some(Mor(2)),
                Some(Mor(2)),
                None,
                None,
            ],
        )
        .expect("arrow category is lawful"),
    )
}

/// The discrete category on `n` objects.
pub fn discrete(n: usize) -> Arc<FiniteCategory> {
    Arc::new(FiniteCategory::discrete(format!("Discrete{n}"), n))
}

/// Two parallel arrows `f, g: a → b` — the equalizer shape.
pub fn parallel_pair() -> Arc<FiniteCategory> {
    Arc::new(
        FiniteCategory::new(
            "ParallelPair",
            vec!["a".into(), "b".into()],
            vec![
                MorData {
                    dom: Obj(0),
                    cod: Obj(0),
                    label: "1_a".into(),
                },
                MorData {
                    dom: Obj(1),
                    cod: Obj(1),
                    label: "1_b".into(),
                },
                MorData {
                    dom: Obj(0),
                    cod: Obj(1),
                    label: "f".into(),
                },
                MorData {
                    dom: Obj(0),
                    cod: Obj(1),
                    label: "g".into(),
                },
            ],
            vec![Mor(0), Mor(1)],
            {
                let mut t = vec![None; 16];
                let m = 4;
                t[0] = Some(Mor(0)); // 1_a ∘ 1_a
                t[1 * m + 1] = Some(Mor(1));
                t[2 * m + 0] = Some(Mor(2)); // f ∘ 1_a
                t[3 * m + 0] = Some(Mor(3));
                t[1 * m + 2] = Some(Mor(2)); // 1_b ∘ f
                t[1 * m + 3] = Some(Mor(3));
                t
            },
        )
        .expect("parallel pair is lawful"),
    )
}

/// Span `b ← a → c` — the pushout shape (apex first).
pub fn span() -> Arc<FiniteCategory> {
    Arc::new(
        FiniteCategory::new(
            "Span",
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                MorData {
                    dom: Obj(0),
                    cod: Obj(0),
                    label: "1_a".into(),
                },
                MorData {
                    dom: Obj(1),
                    cod: Obj(1),
                    label: "1_b".into(),
                },
                MorData {
                    dom: Obj(2),
                    cod: Obj(2),
                    label: "1_c".into(),
                },
                MorData {
                    dom: Obj(0),
                    cod: Obj(1),
                    label: "l".into(),
                },
                MorData {
                    dom: Obj(0),
                    cod: Obj(2),
                    label: "r".into(),
                },
            ],
            vec![Mor(0), Mor(1), Mor(2)],
            {
                let m = 5;
                let mut t = vec![None; m * m];
                for i in 0..3 {
                    t[i * m + i] = Some(Mor(i));
                }
                t[3 * m + 0] = Some(Mor(3)); // l ∘ 1_a
                t[4 * m + 0] = Some(Mor(4));
                t[1 * m + 3] = Some(Mor(3)); // 1_b ∘ l
                t[2 * m + 4] = Some(Mor(4));
                t
            },
        )
        .expect("span is lawful"),
    )
}

/// Cospan `b → a ← c` — the pullback shape (nadir first).
pub fn cospan() -> Arc<FiniteCategory> {
    Arc::new(span().opposite())
}

/// The linear order `0 ≤ 1 ≤ … ≤ n-1` as a category.
pub fn chain(n: usize) -> Arc<FiniteCategory> {
    Arc::new(
        from_poset(
            format!("Chain{n}"),
            (0..n).map(|i| i.to_string()).collect(),
            |a, b| a <= b,
        )
        .expect("chains are posets"),
    )
}

/// The cyclic group ℤ/k as a one-object category.
pub fn z_mod(k: usize) -> Arc<FiniteCategory> {
    let table: Vec<usize> = (0..k * k).map(|e| (e / k + e % k) % k).collect();
    Arc::new(
        from_monoid(
            format!("Z{k}"),
            (0..k).map(|i| i.to_string()).collect(),
            0,
            &table,
        )
        .expect("cyclic tables are groups"),
    )
}

/// All permutations of `0..n` in lexicographic one-line order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn go(items: &mut Vec<usize>, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if items.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..items.len() {
            let x = items.remove(i);
            prefix.push(x);
            go(items, prefix, out);
            prefix.pop();
            items.insert(i, x);
        }
    }
    go(&mut items, &mut Vec::new(), &mut out);
    out
}

/// Function composition of permutations: `(σ∘τ)(x) = σ(τ(x))`.
pub fn compose_perm(sigma: &[usize], tau: &[usize]) -> Vec<usize> {
    tau.iter().map(|&x| sigma[x]).collect()
}

pub fn invert_perm(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &v) in sigma.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

/// The symmetric group S_n as a one-object category. Morphism `i` is the
/// lexicographically `i`-th permutation; composition is `σ∘τ`.
pub fn symmetric_monoid(n: usize) -> Arc<FiniteCategory> {
    let perms = all_permutations(n);
    let index_of = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let k = perms.len();
    let mut table = vec![0usize; k * k];
    for (a, sigma) in perms.iter().enumerate() {
        for (b, tau) in perms.iter().enumerate() {
            table[a * k + b] = index_of(&compose_perm(sigma, tau));
        }
    }
    let labels = perms
        .iter()
        .map(|p| p.iter().map(|d| d.to_string()).collect::<String>())
        .collect();
    Arc::new(
        from_monoid(format!("S{n}"), labels, 0, &table).expect("symmetric groups are groups"),
    )
}

/// S3 as a one-object category (six morphisms).
pub fn s3() -> Arc<FiniteCategory> {
    symmetric_monoid(3)
}

/// A transposition in [`s3`] — a non-central element.
pub fn s3_transposition() -> Mor {
    // one-line "021", i.e. the swap of 1 and 2, is lex index 1
    Mor(1)
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Divisors of `n` ordered by divisibility.
pub fn div_poset(n: usize) -> Arc<FiniteCategory> {
    let divs = divisors(n);
    Arc::new(
        from_poset(
            format!("Div{n}"),
            divs.iter().map(|d| d.to_string()).collect(),
            |a, b| divs[b] % divs[a] == 0,
        )
        .expect("divisibility is a partial order"),
    )
}

fn subset_label(mask: usize, k: usize) -> String {
    let members: Vec<String> = (0..k)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", members.join(","))
}

/// The power set of `{1, …, k}` ordered by inclusion; object `i` is the
/// bitmask-`i` subset.
pub fn subsets_poset(k: usize) -> Arc<FiniteCategory> {
    let n = 1usize << k;
    Arc::new(
        from_poset(
            format!("Subsets{k}"),
            (0..n).map(|mask| subset_label(mask, k)).collect(),
            |a, b| a & !b == 0,
        )
        .expect("inclusion is a partial order"),
    )
}

/// All subsets of the two-point space `{1, 2}` with opens `∅, {1}, {1,2}`.
pub fn sierpinski_subsets() -> Arc<FiniteCategory> {
    let c = subsets_poset(2);
    Arc::new(FiniteCategory {
        name: "SierpinskiSubsets".into(),
        ..(*c).clone()
    })
}

/// The closed sets of that space — `∅, {2}, {1,2}` — under inclusion.
pub fn sierpinski_closed() -> Arc<FiniteCategory> {
    // masks 0b00, 0b10, 0b11 in inclusion order
    let masks = [0usize, 2, 3];
    Arc::new(
        from_poset(
            "SierpinskiClosed",
            masks.iter().map(|&m| subset_label(m, 2)).collect(),
            |a, b| masks[a] & !masks[b] == 0,
        )
        .expect("closed sets form a poset"),
    )
}

/// A monotone map between poset-like categories, built from its object
/// assignment; the morphism assignment is the unique possibility.
pub fn poset_functor(
    name: impl Into<String>,
    source: &Arc<FiniteCategory>,
    target: &Arc<FiniteCategory>,
    object_map: Vec<Obj>,
) -> Functor {
    let morphism_map = source
        .morphisms()
        .map(|m| {
            let hom = target.hom(object_map[source.dom(m).0], object_map[source.cod(m).0]);
            assert_eq!(hom.len(), 1, "assignment must be monotone");
            hom[0]
        })
        .collect();
    Functor::new(
        name,
        Arc::clone(source),
        Arc::clone(target),
        object_map,
        morphism_map,
    )
    .expect("monotone maps are functors")
}

/// The inclusion of the closed-sets poset into the full subset poset.
pub fn sierpinski_inclusion() -> Functor {
    let closed = sierpinski_closed();
    let subsets = sierpinski_subsets();
    // {} ↦ {}, {2} ↦ {2}, {1,2} ↦ {1,2}
    let object_map = closed
        .objects()
        .map(|o| subsets.obj_by_label(closed.obj_label(o)).unwrap())
        .collect();
    poset_functor("incl", &closed, &subsets, object_map)
}

/// A groupoid of same-size sets together with two set-valued functors on
/// it: permutations (acting by conjugation) and total orders (acting by
/// pushforward).
pub struct PermutationWorld {
    pub groupoid: Arc<FiniteCategory>,
    /// `X ↦ {permutations of X}`, `b ↦ (σ ↦ b∘σ∘b⁻¹)`.
    pub sym: SetFunctor,
    /// `X ↦ {total orders on X}`, `b ↦` relabelling along `b`.
    pub ord: SetFunctor,
}

/// The groupoid of `copies` distinct `n`-element sets with all bijections
/// between them, with its permutation and total-order functors.
pub fn permutation_world(n: usize, copies: usize) -> PermutationWorld {
    assert!(copies >= 1, "need at least one set");
    let perms = all_permutations(n);
    let nf = perms.len();
    // Element j of copy c is named x{c}_{j}.
    let elem = |c: usize, j: usize| format!("x{c}_{j}");
    let labels: Vec<String> = (0..copies).map(|c| format!("X{c}")).collect();
    // Bijection (c, d, p): sends element j of X_c to element perms[p][j]
    // of X_d. Index order: c-major, then d, then p.
    let mor_of = |c: usize, d: usize, p: usize| Mor((c * copies + d) * nf + p);
    let mut data = Vec::with_capacity(copies * copies * nf);
    for c in 0..copies {
        for d in 0..copies {
            for p in 0..nf {
                let images: Vec<String> = (0..n).map(|j| elem(d, perms[p][j])).collect();
                data.push(MorData {
                    dom: Obj(c),
                    cod: Obj(d),
                    label: format!("[{}]:{c}>{d}", images.join(",")),
                });
            }
        }
    }
    // The identity permutation is lexicographically first.
    let identities = (0..copies).map(|c| mor_of(c, c, 0)).collect();
    let m = data.len();
    let mut table = vec![None; m * m];
    for c in 0..copies {
        for d in 0..copies {
            for e in 0..copies {
                for p in 0..nf {
                    for q in 0..nf {
                        // second (d→e, q) after first (c→d, p).
                        let composite = compose_perm(&perms[q], &perms[p]);
                        let r = perms
                            .iter()
                            .position(|s| *s == composite)
                            .expect("permutations are closed under composition");
                        let second = mor_of(d, e, q);
                        let first = mor_of(c, d, p);
                        table[second.0 * m + first.0] = Some(mor_of(c, e, r));
                    }
                }
            }
        }
    }
    let groupoid = Arc::new(
        FiniteCategory::new("PermWorld", labels, data, identities, table)
            .expect("bijections compose lawfully"),
    );
    // Sym: value at X_c lists each permutation of X_c by its graph.
    let sym_atom = |c: usize, p: usize| {
        let pairs: Vec<String> = (0..n).map(|j| format!("{}>{}", elem(c, j), elem(c, perms[p][j]))).collect();
        Atom::token(format!("perm{{{}}}", pairs.join(",")))
    };
    let sym_sets: Vec<FinSet> = (0..copies)
        .map(|c| FinSet::new((0..nf).map(|p| sym_atom(c, p)).collect()).expect("distinct graphs"))
        .collect();
    let sym_maps: Vec<FinFunction> = (0..m)
        .map(|k| {
            let (cd, p) = (k / nf, k % nf);
            let (c, d) = (cd / copies, cd % copies);
            let b = &perms[p];
            let b_inv = invert_perm(b);
            let map = (0..nf)
                .map(|s| {
                    let conj = compose_perm(b, &compose_perm(&perms[s], &b_inv));
                    perms.iter().position(|t| *t == conj).expect("conjugate is a permutation")
                })
                .collect();
            FinFunction::new(sym_sets[c].clone(), sym_sets[d].clone(), map)
                .expect("positions are in range")
        })
        .collect();
    let sym = SetFunctor::new("Sym", Arc::clone(&groupoid), sym_sets, sym_maps)
        .expect("conjugation is functorial");
    // Ord: value at X_c lists each total order as its ascending sequence;
    // order p ranks elem(c, perms[p][k]) at position k.
    let ord_atom = |c: usize, p: usize| {
        let seq: Vec<String> = (0..n).map(|k| elem(c, perms[p][k])).collect();
        Atom::token(format!("ord({})", seq.join("<")))
    };
    let ord_sets: Vec<FinSet> = (0..copies)
        .map(|c| FinSet::new((0..nf).map(|p| ord_atom(c, p)).collect()).expect("distinct sequences"))
        .collect();
    let ord_maps: Vec<FinFunction> = (0..m)
        .map(|k| {
            let (cd, p) = (k / nf, k % nf);
            let (c, d) = (cd / copies, cd % copies);
            let b = &perms[p];
            let map = (0..nf)
                .map(|s| {
                    let pushed = compose_perm(b, &perms[s]);
                    perms.iter().position(|t| *t == pushed).expect("pushforward is a permutation")
                })
                .collect();
            FinFunction::new(ord_sets[c].clone(), ord_sets[d].clone(), map)
                .expect("positions are in range")
        })
        .collect();
    let ord = SetFunctor::new("Ord", Arc::clone(&groupoid), ord_sets, ord_maps)
        .expect("pushforward is functorial");
    PermutationWorld { groupoid, sym, ord }
}

/// Named corpus exposed to the command-line interface.
pub fn names() -> &'static [&'static str] {
    &[
        "One",
        "Two",
        "ParallelPair",
        "Span",
        "Cospan",
        "Discrete2",
        "Discrete3",
        "Discrete4",
        "Chain3",
        "Z2",
        "Z3",
        "S3",
        "Div12",
        "Div36",
        "Subsets2",
        "SierpinskiSubsets",
        "SierpinskiClosed",
    ]
}

/// Resolve a corpus name to its category.
pub fn by_name(name: &str) -> Option<Arc<FiniteCategory>> {
    Some(match name {
        "One" => one(),
        "Two" => two(),
        "ParallelPair" => parallel_pair(),
        "Span" => span(),
        "Cospan" => cospan(),
        "Discrete2" => discrete(2),
        "Discrete3" => discrete(3),
        "Discrete4" => discrete(4),
        "Chain3" => chain(3),
        "Z2" => z_mod(2),
        "Z3" => z_mod(3),
        "S3" => s3(),
        "Div12" => div_poset(12),
        "Div36" => div_poset(36),
        "Subsets2" => subsets_poset(2),
        "SierpinskiSubsets" => sierpinski_subsets(),
        "SierpinskiClosed" => sierpinski_closed(),
        _ => return None,
    })
}
