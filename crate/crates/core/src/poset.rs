//! Finite posets, monotone maps and the bridge to thin categories.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::category::{identity_name, Arrow, FinCategory};
use crate::error::{Error, Result};
use crate::guard::SizeGuard;

/// Anything that can be read as a finite partial order on `0..size()`.
pub trait Order {
    fn size(&self) -> usize;
    fn leq(&self, a: usize, b: usize) -> bool;

    fn element_label(&self, i: usize) -> String {
        i.to_string()
    }
}

impl<T: Order + ?Sized> Order for &T {
    fn size(&self) -> usize {
        (**self).size()
    }
    fn leq(&self, a: usize, b: usize) -> bool {
        (**self).leq(a, b)
    }
    fn element_label(&self, i: usize) -> String {
        (**self).element_label(i)
    }
}

/// The reversed order.
#[derive(Debug, Clone, Copy)]
pub struct Opposite<P>(pub P);

impl<P: Order> Order for Opposite<P> {
    fn size(&self) -> usize {
        self.0.size()
    }
    fn leq(&self, a: usize, b: usize) -> bool {
        self.0.leq(b, a)
    }
    fn element_label(&self, i: usize) -> String {
        self.0.element_label(i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinPoset {
    names: Vec<String>,
    leq: Vec<bool>,
}

impl Order for FinPoset {
    fn size(&self) -> usize {
        self.names.len()
    }

    #[inline]
    fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.names.len() + b]
    }

    fn element_label(&self, i: usize) -> String {
        self.names[i].clone()
    }
}

impl FinPoset {
    /// Reflexive-transitive closure of `pairs` (as `a <= b`), then an
    /// antisymmetry check.
    pub fn new(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidPoset(format!("pair ({a}, {b}) out of range")));
            }
            leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_matrix(names, leq)
    }

    /// Takes the relation as given and checks all three poset laws.
    pub fn from_matrix(names: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = names.len();
        if leq.len() != n * n {
            return Err(Error::InvalidPoset("relation matrix has the wrong size".into()));
        }
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::InvalidPoset(format!("duplicate element {name}")));
            }
        }
        for i in 0..n {
            if !leq[i * n + i] {
                return Err(Error::InvalidPoset(format!("{} <= {} missing", names[i], names[i])));
            }
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::InvalidPoset(format!(
                        "antisymmetry fails for {} and {}",
                        names[i], names[j]
                    )));
                }
                for k in 0..n {
                    if leq[i * n + j] && leq[j * n + k] && !leq[i * n + k] {
                        return Err(Error::InvalidPoset(format!(
                            "transitivity fails at {} <= {} <= {}",
                            names[i], names[j], names[k]
                        )));
                    }
                }
            }
        }
        Ok(FinPoset { names, leq })
    }

    /// Builds from any order, labelling elements with `element_label`.
    pub fn from_order<P: Order>(p: &P) -> Self {
        let n = p.size();
        let names = (0..n).map(|i| p.element_label(i)).collect();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = p.leq(a, b);
            }
        }
        FinPoset { names, leq }
    }

    pub(crate) fn from_matrix_unchecked(names: Vec<String>, leq: Vec<bool>) -> Self {
        FinPoset { names, leq }
    }

    pub fn empty() -> Self {
        FinPoset {
            names: Vec::new(),
            leq: Vec::new(),
        }
    }

    /// `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in a..n {
                leq[a * n + b] = true;
            }
        }
        FinPoset { names, leq }
    }

    pub fn antichain(names: &[&str]) -> Self {
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        FinPoset {
            names: names.iter().map(|s| s.to_string()).collect(),
            leq,
        }
    }

    /// `{0, a, b, 1}` with `a`, `b` incomparable.
    pub fn boolean_square() -> Self {
        Self::new(
            vec!["0".into(), "1".into(), "a".into(), "b".into()],
            &[(0, 2), (0, 3), (2, 1), (3, 1)],
        )
        .expect("valid")
    }

    /// The diamond `0 < a, b, c < 1`.
    pub fn diamond_m3() -> Self {
        Self::new(
            vec!["0".into(), "1".into(), "a".into(), "b".into(), "c".into()],
            &[(0, 2), (0, 3), (0, 4), (2, 1), (3, 1), (4, 1)],
        )
        .expect("valid")
    }

    /// The pentagon `0 < a < b < 1`, `0 < c < 1`.
    pub fn pentagon_n5() -> Self {
        Self::new(
            vec!["0".into(), "1".into(), "a".into(), "b".into(), "c".into()],
            &[(0, 2), (2, 3), (3, 1), (0, 4), (4, 1)],
        )
        .expect("valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// Pairs `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn opposite(&self) -> FinPoset {
        FinPoset::from_order(&Opposite(self))
    }

    /// Induced order on `subset`, in the given order.
    pub fn subposet(&self, subset: &[usize]) -> FinPoset {
        let names = subset.iter().map(|&i| self.names[i].clone()).collect();
        let k = subset.len();
        let mut leq = vec![false; k * k];
        for (a, &x) in subset.iter().enumerate() {
            for (b, &y) in subset.iter().enumerate() {
                leq[a * k + b] = self.leq(x, y);
            }
        }
        FinPoset { names, leq }
    }

    /// Same order with elements permuted: element `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> FinPoset {
        let n = self.len();
        let mut names = vec![String::new(); n];
        let mut leq = vec![false; n * n];
        for i in 0..n {
            names[perm[i]] = self.names[i].clone();
            for j in 0..n {
                leq[perm[i] * n + perm[j]] = self.leq(i, j);
            }
        }
        FinPoset { names, leq }
    }

    /// Least upper bound of the elements in `set`, if it exists.
    pub fn join_of(&self, set: &[usize]) -> Option<usize> {
        let uppers: Vec<usize> = (0..self.len())
            .filter(|&u| set.iter().all(|&s| self.leq(s, u)))
            .collect();
        least_of(self, &uppers)
    }

    /// Greatest lower bound of the elements in `set`, if it exists.
    pub fn meet_of(&self, set: &[usize]) -> Option<usize> {
        let lowers: Vec<usize> = (0..self.len())
            .filter(|&l| set.iter().all(|&s| self.leq(l, s)))
            .collect();
        least_of(&Opposite(self), &lowers)
    }

    pub fn top(&self) -> Option<usize> {
        self.meet_of(&[])
    }

    pub fn bottom(&self) -> Option<usize> {
        self.join_of(&[])
    }
}

/// The minimum of `candidates` under `order`, if one exists.
pub fn least_of<P: Order + ?Sized>(order: &P, candidates: &[usize]) -> Option<usize> {
    let mut best = *candidates.first()?;
    for &c in &candidates[1..] {
        if order.leq(c, best) {
            best = c;
        }
    }
    candidates.iter().all(|&c| order.leq(best, c)).then_some(best)
}

/// A map between finite orders, stored as the image of each index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonotoneMap {
    map: Vec<usize>,
}

impl MonotoneMap {
    /// Checks range and monotonicity against `dom` and `cod`.
    pub fn new<P: Order + ?Sized, Q: Order + ?Sized>(dom: &P, cod: &Q, map: Vec<usize>) -> Result<Self> {
        if map.len() != dom.size() {
            return Err(Error::NotMonotone("map length differs from domain size".into()));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= cod.size()) {
            return Err(Error::NotMonotone(format!("image {bad} out of range")));
        }
        let m = MonotoneMap { map };
        if let Some((a, b)) = m.monotonicity_witness(dom, cod) {
            return Err(Error::NotMonotone(format!(
                "{} <= {} but images are not ordered",
                dom.element_label(a),
                dom.element_label(b)
            )));
        }
        Ok(m)
    }

    pub(crate) fn from_vec(map: Vec<usize>) -> Self {
        MonotoneMap { map }
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap { map: (0..n).collect() }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `other . self`.
    pub fn then(&self, other: &MonotoneMap) -> MonotoneMap {
        MonotoneMap {
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        }
    }

    pub fn monotonicity_witness<P: Order + ?Sized, Q: Order + ?Sized>(&self, dom: &P, cod: &Q) -> Option<(usize, usize)> {
        let n = dom.size();
        for a in 0..n {
            for b in 0..n {
                if dom.leq(a, b) && !cod.leq(self.map[a], self.map[b]) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Order-embedding: `x <= y` iff `f(x) <= f(y)`.
    pub fn is_order_embedding<P: Order + ?Sized, Q: Order + ?Sized>(&self, dom: &P, cod: &Q) -> bool {
        let n = dom.size();
        (0..n).all(|a| (0..n).all(|b| dom.leq(a, b) == cod.leq(self.map[a], self.map[b])))
    }
}

/// The thin category with one arrow `x <= y` for each related pair.
pub fn poset_as_category(p: &FinPoset, guard: &SizeGuard) -> Result<FinCategory> {
    let n = p.len();
    let mut arrows = Vec::new();
    let mut id_of = vec![usize::MAX; n * n];
    let mut identities = vec![0; n];
    for x in 0..n {
        for y in 0..n {
            if p.leq(x, y) {
                let name = if x == y {
                    identities[x] = arrows.len();
                    identity_name(p.name(x))
                } else {
                    format!("{}<={}", p.name(x), p.name(y))
                };
                id_of[x * n + y] = arrows.len();
                arrows.push(Arrow { name, src: x, tgt: y });
            }
        }
    }
    guard.check_arrows(arrows.len())?;
    let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.src, a.tgt)).collect();
    FinCategory::from_parts(
        p.names().to_vec(),
        arrows,
        identities,
        |g, f| id_of[ends[f].0 * n + ends[g].1],
        guard,
    )
}

/// The poset of a thin skeletal category: `x <= y` iff `hom(x, y)` is
/// nonempty. `None` if the category is not thin or not skeletal.
pub fn underlying_poset(c: &FinCategory) -> Option<FinPoset> {
    if !c.is_thin() {
        return None;
    }
    let n = c.object_count();
    let mut leq = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            leq[x * n + y] = !c.hom(x, y).is_empty();
        }
    }
    FinPoset::from_matrix(c.objects().to_vec(), leq).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_antisymmetry() {
        let p = FinPoset::new(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        let err = FinPoset::new(vec!["a".into(), "b".into()], &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, Error::InvalidPoset(_)));
    }

    #[test]
    fn two_chain_as_category_is_walking_arrow() {
        let c = poset_as_category(&FinPoset::chain(2), &SizeGuard::default()).unwrap();
        assert_eq!(c.arrow_count(), 3);
    }

    #[test]
    fn antichain_as_category_is_discrete() {
        let c = poset_as_category(&FinPoset::antichain(&["a", "b"]), &SizeGuard::default()).unwrap();
        assert_eq!(c.arrow_count(), 2);
        assert!(c.hom(0, 1).is_empty());
    }

    #[test]
    fn three_chain_composite() {
        let c = poset_as_category(&FinPoset::chain(3), &SizeGuard::default()).unwrap();
        assert_eq!(c.arrow_count(), 6);
        let a01 = c.arrow_id("0<=1").unwrap();
        let a12 = c.arrow_id("1<=2").unwrap();
        assert_eq!(c.comp(a12, a01), c.arrow_id("0<=2").unwrap());
    }

    #[test]
    fn underlying_poset_inverts_poset_as_category() {
        for p in [FinPoset::boolean_square(), FinPoset::diamond_m3(), FinPoset::chain(4)] {
            let c = poset_as_category(&p, &SizeGuard::default()).unwrap();
            assert_eq!(underlying_poset(&c).unwrap(), p);
        }
    }

    #[test]
    fn joins_and_meets_in_square() {
        let p = FinPoset::boolean_square();
        assert_eq!(p.join_of(&[2, 3]), Some(1));
        assert_eq!(p.meet_of(&[2, 3]), Some(0));
        assert_eq!(p.top(), Some(1));
        let a = FinPoset::antichain(&["a", "b"]);
        assert_eq!(a.join_of(&[0, 1]), None);
    }

    #[test]
    fn monotone_map_rejects_order_reversal() {
        let p = FinPoset::chain(2);
        assert!(MonotoneMap::new(&p, &p, vec![1, 0]).is_err());
        assert!(MonotoneMap::new(&p, &p, vec![1, 1]).is_ok());
    }
}
