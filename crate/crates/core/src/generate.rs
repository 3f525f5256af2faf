//! Seeded and exhaustive generators of small posets, lattices and adjoint
//! triples, used by the property sweeps and the acceptance suite.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::guard::SizeGuard;
use crate::order::{down_sets, left_adjoint, right_adjoint, Mask, SetFamily};
use crate::poset::{FinPoset, MonotoneMap, Order};

/// Isomorphism-invariant code: the least adjacency code over relabellings
/// that respect the (strict down, strict up) degree of each element.
pub fn canonical_code(p: &FinPoset) -> (usize, u64) {
    let n = p.len();
    assert!(n <= 8, "canonical codes are defined for at most 8 elements");
    let key = |x: usize| {
        let down = (0..n).filter(|&y| p.leq(y, x)).count();
        let up = (0..n).filter(|&y| p.leq(x, y)).count();
        (down, up)
    };
    let mut elems: Vec<usize> = (0..n).collect();
    elems.sort_by_key(|&x| key(x));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &x in &elems {
        match classes.last_mut() {
            Some(c) if key(c[0]) == key(x) => c.push(x),
            _ => classes.push(vec![x]),
        }
    }
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(n);
    permute_classes(&classes, 0, &mut order, &mut |order| {
        let mut code = 0u64;
        for i in 0..n {
            for j in 0..n {
                if p.leq(order[i], order[j]) {
                    code |= 1 << (i * n + j);
                }
            }
        }
        best = best.min(code);
    });
    (n, if n == 0 { 0 } else { best })
}

fn permute_classes(classes: &[Vec<usize>], k: usize, order: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if k == classes.len() {
        visit(order);
        return;
    }
    let mut class = classes[k].clone();
    heap_permutations(&mut class, &mut |perm| {
        let len = order.len();
        order.extend_from_slice(perm);
        permute_classes(classes, k + 1, order, visit);
        order.truncate(len);
    });
}

fn heap_permutations(items: &mut [usize], visit: &mut impl FnMut(&[usize])) {
    fn go(k: usize, items: &mut [usize], visit: &mut impl FnMut(&[usize])) {
        if k <= 1 {
            visit(items);
            return;
        }
        for i in 0..k - 1 {
            go(k - 1, items, visit);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
        go(k - 1, items, visit);
    }
    let k = items.len();
    go(k, items, visit);
}

/// All posets on `n` elements up to isomorphism, elements named `0..n`.
///
/// Built by adding a maximal element over each down-set of the posets one
/// size smaller, deduplicated by [`canonical_code`].
pub fn posets_up_to_iso(n: usize) -> Vec<FinPoset> {
    let guard = SizeGuard::default();
    let mut level = vec![FinPoset::empty()];
    for k in 0..n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for p in &level {
            for below in down_sets(p, &guard).expect("small posets") {
                let q = extend(p, below, k);
                if seen.insert(canonical_code(&q)) {
                    next.push(q);
                }
            }
        }
        level = next;
    }
    level
}

fn extend(p: &FinPoset, below: Mask, k: usize) -> FinPoset {
    let m = k + 1;
    let mut leq = vec![false; m * m];
    for a in 0..k {
        for b in 0..k {
            leq[a * m + b] = p.leq(a, b);
        }
        leq[a * m + k] = below >> a & 1 == 1;
    }
    leq[k * m + k] = true;
    FinPoset::from_matrix_unchecked((0..m).map(|i| i.to_string()).collect(), leq)
}

/// Every pair of elements has a join and a meet, and the poset is nonempty.
pub fn is_lattice(p: &FinPoset) -> bool {
    !p.is_empty() && (0..p.len()).all(|a| (a + 1..p.len()).all(|b| p.join_of(&[a, b]).is_some() && p.meet_of(&[a, b]).is_some()))
}

/// All lattices on `n` elements up to isomorphism.
pub fn lattices_up_to_iso(n: usize) -> Vec<FinPoset> {
    posets_up_to_iso(n).into_iter().filter(is_lattice).collect()
}

/// A lattice with exactly `size` elements, drawn as a random Moore family
/// (intersection-closed set system containing the ground set) ordered by
/// inclusion, then randomly relabelled.
pub fn random_lattice<R: Rng>(rng: &mut R, size: usize) -> FinPoset {
    assert!(size >= 1);
    loop {
        let ground = rng.gen_range(2..=5usize).max(usize::BITS as usize - (size - 1).leading_zeros() as usize);
        let full: Mask = (1 << ground) - 1;
        let mut family: BTreeSet<Mask> = BTreeSet::from([full]);
        let mut attempts = 0;
        while family.len() < size && attempts < 64 {
            attempts += 1;
            let s: Mask = rng.gen_range(0..=full);
            let mut add = vec![s];
            let mut closed = family.clone();
            while let Some(m) = add.pop() {
                if closed.insert(m) {
                    add.extend(closed.iter().map(|&o| o & m).filter(|x| !closed.contains(x)).collect::<Vec<_>>());
                }
            }
            if closed.len() <= size {
                family = closed;
            }
        }
        if family.len() == size {
            let carrier = (0..ground).map(|i| i.to_string()).collect();
            let p = SetFamily::new(carrier, family.into_iter().collect()).to_poset();
            return random_relabel(rng, &p);
        }
    }
}

pub fn random_relabel<R: Rng>(rng: &mut R, p: &FinPoset) -> FinPoset {
    let mut perm: Vec<usize> = (0..p.len()).collect();
    perm.shuffle(rng);
    p.relabel(&perm)
}

/// All monotone maps `dom -> cod`, in lexicographic order of value vectors.
pub fn monotone_maps(dom: &FinPoset, cod: &FinPoset) -> Vec<MonotoneMap> {
    let n = dom.len();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn go(dom: &FinPoset, cod: &FinPoset, current: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
        let x = current.len();
        if x == dom.len() {
            out.push(MonotoneMap::from_vec(current.clone()));
            return;
        }
        for v in 0..cod.len() {
            let ok = (0..x).all(|y| (!dom.leq(y, x) || cod.leq(current[y], v)) && (!dom.leq(x, y) || cod.leq(v, current[y])));
            if ok {
                current.push(v);
                go(dom, cod, current, out);
                current.pop();
            }
        }
    }
    if n == 0 {
        return vec![MonotoneMap::from_vec(Vec::new())];
    }
    go(dom, cod, &mut current, &mut out);
    out
}

/// An adjoint string `q -| r -| s` with `q, s : D -> E` and `r : E -> D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjointTriple {
    pub d: FinPoset,
    pub e: FinPoset,
    pub q: MonotoneMap,
    pub r: MonotoneMap,
    pub s: MonotoneMap,
}

/// Completes `r : E -> D` to a triple when both adjoints exist and are
/// order-embeddings.
pub fn complete_triple(d: &FinPoset, e: &FinPoset, r: &MonotoneMap) -> Option<AdjointTriple> {
    let q = left_adjoint(r, e, d).ok()?;
    let s = right_adjoint(r, e, d).ok()?;
    (q.is_order_embedding(d, e) && s.is_order_embedding(d, e)).then(|| AdjointTriple {
        d: d.clone(),
        e: e.clone(),
        q,
        r: r.clone(),
        s,
    })
}

/// Every triple with `E` from `es` and `D` a poset of at most `|E|` elements
/// up to isomorphism.
pub fn all_triples(es: &[FinPoset], max_d: usize) -> Vec<AdjointTriple> {
    let ds: Vec<FinPoset> = (1..=max_d).flat_map(posets_up_to_iso).collect();
    let mut out = Vec::new();
    for e in es {
        for d in ds.iter().filter(|d| d.len() <= e.len()) {
            for r in monotone_maps(e, d) {
                out.extend(complete_triple(d, e, &r));
            }
        }
    }
    out
}

/// Rejection sampler: draws relabelled `E` from `es`, `D` from posets of at
/// most `|E|` elements and `r` uniformly among monotone maps, keeping the
/// draws that complete to a triple.
pub fn sample_triples<R: Rng>(rng: &mut R, es: &[FinPoset], wanted: usize) -> SampledTriples {
    let max = es.iter().map(FinPoset::len).max().unwrap_or(0);
    let ds: Vec<Vec<FinPoset>> = (0..=max).map(posets_up_to_iso).collect();
    let mut triples = Vec::with_capacity(wanted);
    let mut draws = 0;
    while triples.len() < wanted {
        draws += 1;
        let e = es.choose(rng).expect("nonempty source list").clone();
        let e = random_relabel(rng, &e);
        let size = rng.gen_range(1..=e.len());
        let d = ds[size].choose(rng).expect("posets exist at every size").clone();
        let d = random_relabel(rng, &d);
        let maps = monotone_maps(&e, &d);
        let r = maps.choose(rng).expect("constant maps are monotone");
        if let Some(t) = complete_triple(&d, &e, r) {
            triples.push(t);
        }
    }
    let distinct = triples
        .iter()
        .map(|t| (t.e.clone(), t.d.clone(), t.r.clone()))
        .collect::<BTreeSet<_>>()
        .len();
    SampledTriples { triples, draws, distinct }
}

#[derive(Debug, Clone)]
pub struct SampledTriples {
    pub triples: Vec<AdjointTriple>,
    pub draws: usize,
    /// Distinct labelled triples among the accepted draws.
    pub distinct: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn poset_counts_match_brute_force() {
        // brute force: all reflexive antisymmetric transitive relations on n
        // points, grouped by canonical code
        for n in 0..=4usize {
            let mut codes = BTreeSet::new();
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| a != b).map(move |b| (a, b))).collect();
            for bits in 0u32..1 << pairs.len() {
                let mut leq = vec![false; n * n];
                for i in 0..n {
                    leq[i * n + i] = true;
                }
                for (k, &(a, b)) in pairs.iter().enumerate() {
                    leq[a * n + b] = bits >> k & 1 == 1;
                }
                if let Ok(p) = FinPoset::from_matrix((0..n).map(|i| i.to_string()).collect(), leq) {
                    codes.insert(canonical_code(&p));
                }
            }
            assert_eq!(posets_up_to_iso(n).len(), codes.len(), "n = {n}");
        }
    }

    #[test]
    fn lattices_of_five() {
        let ls = lattices_up_to_iso(5);
        assert_eq!(ls.len(), 5);
        assert!(ls.iter().any(|l| canonical_code(l) == canonical_code(&FinPoset::diamond_m3())));
        assert!(ls.iter().any(|l| canonical_code(l) == canonical_code(&FinPoset::pentagon_n5())));
    }

    #[test]
    fn random_lattices_have_requested_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for size in 1..=8 {
            for _ in 0..5 {
                let l = random_lattice(&mut rng, size);
                assert_eq!(l.len(), size);
                assert!(is_lattice(&l));
            }
        }
    }

    #[test]
    fn monotone_map_count_on_two_chain() {
        let two = FinPoset::chain(2);
        assert_eq!(monotone_maps(&two, &two).len(), 3);
        let anti = FinPoset::antichain(&["a", "b"]);
        assert_eq!(monotone_maps(&anti, &two).len(), 4);
    }

    #[test]
    fn canonical_code_ignores_labels() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = FinPoset::pentagon_n5();
        for _ in 0..10 {
            assert_eq!(canonical_code(&random_relabel(&mut rng, &p)), canonical_code(&p));
        }
        assert_ne!(canonical_code(&FinPoset::diamond_m3()), canonical_code(&FinPoset::pentagon_n5()));
    }

    #[test]
    fn retraction_of_three_chain_completes() {
        let e = FinPoset::chain(3);
        let d = FinPoset::chain(2);
        let r = MonotoneMap::new(&e, &d, vec![0, 1, 1]).unwrap();
        let t = complete_triple(&d, &e, &r).unwrap();
        assert_eq!(t.q.as_slice(), &[0, 1]);
        assert_eq!(t.s.as_slice(), &[0, 2]);
    }
}
