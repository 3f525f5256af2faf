//! Two-sided arrow ideals of a finite category, idempotence, and the lattice
//! of idempotent ideals.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::category::{ArrowId, FinCategory};
use crate::error::{Error, Result};
use crate::guard::SizeGuard;

/// A set of arrows closed under composition with arbitrary arrows on
/// either side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowIdeal {
    members: FixedBitSet,
}

impl ArrowIdeal {
    pub fn empty(c: &FinCategory) -> Self {
        ArrowIdeal {
            members: FixedBitSet::with_capacity(c.arrow_count()),
        }
    }

    pub fn all(c: &FinCategory) -> Self {
        let mut members = FixedBitSet::with_capacity(c.arrow_count());
        members.insert_range(..);
        ArrowIdeal { members }
    }

    pub fn contains(&self, f: ArrowId) -> bool {
        self.members.contains(f)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn arrows(&self) -> Vec<ArrowId> {
        self.members.ones().collect()
    }

    pub fn is_subset(&self, other: &ArrowIdeal) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn union(&self, other: &ArrowIdeal) -> ArrowIdeal {
        let mut members = self.members.clone();
        members.union_with(&other.members);
        ArrowIdeal { members }
    }

    pub fn intersection(&self, other: &ArrowIdeal) -> ArrowIdeal {
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        ArrowIdeal { members }
    }

    /// Arrow names, in id order.
    pub fn names(&self, c: &FinCategory) -> Vec<String> {
        self.members.ones().map(|f| c.arrow_name(f).to_string()).collect()
    }

    /// Two-sided closure check, the defining invariant.
    pub fn is_closed(&self, c: &FinCategory) -> bool {
        self.members.ones().all(|f| {
            c.arrows_from(c.tgt(f)).iter().all(|&g| self.contains(c.comp(g, f)))
                && (0..c.object_count()).all(|o| c.hom(o, c.src(f)).iter().all(|&k| self.contains(c.comp(f, k))))
        })
    }
}

/// The least two-sided ideal containing `seeds`.
pub fn ideal_closure(c: &FinCategory, seeds: &[ArrowId]) -> ArrowIdeal {
    let mut ideal = ArrowIdeal::empty(c);
    close_into(c, &mut ideal, seeds);
    ideal
}

fn close_into(c: &FinCategory, ideal: &mut ArrowIdeal, seeds: &[ArrowId]) {
    let mut queue: VecDeque<ArrowId> = VecDeque::new();
    for &s in seeds {
        if !ideal.members.put(s) {
            queue.push_back(s);
        }
    }
    while let Some(f) = queue.pop_front() {
        for &g in c.arrows_from(c.tgt(f)) {
            let h = c.comp(g, f);
            if !ideal.members.put(h) {
                queue.push_back(h);
            }
        }
        for o in 0..c.object_count() {
            for &k in c.hom(o, c.src(f)) {
                let h = c.comp(f, k);
                if !ideal.members.put(h) {
                    queue.push_back(h);
                }
            }
        }
    }
}

/// `arrow = left . right` with both factors in the ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub arrow: ArrowId,
    pub left: ArrowId,
    pub right: ArrowId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Idempotence {
    pub idempotent: bool,
    /// One factorization per member, in id order, when idempotent.
    pub factorizations: Vec<Factorization>,
    /// The first member with no factorization through two members.
    pub unfactorable: Option<ArrowId>,
}

/// `I = I . I`: every member factors as a composite of two members.
pub fn is_idempotent(c: &FinCategory, ideal: &ArrowIdeal) -> Idempotence {
    let mut factorizations = Vec::with_capacity(ideal.len());
    for f in ideal.members.ones() {
        match factor(c, ideal, f) {
            Some(fz) => factorizations.push(fz),
            None => {
                return Idempotence {
                    idempotent: false,
                    factorizations: Vec::new(),
                    unfactorable: Some(f),
                }
            }
        }
    }
    Idempotence {
        idempotent: true,
        factorizations,
        unfactorable: None,
    }
}

fn factor(c: &FinCategory, ideal: &ArrowIdeal, f: ArrowId) -> Option<Factorization> {
    for &h in c.arrows_from(c.src(f)) {
        if !ideal.contains(h) {
            continue;
        }
        for &g in c.hom(c.tgt(h), c.tgt(f)) {
            if ideal.contains(g) && c.comp(g, h) == f {
                return Some(Factorization { arrow: f, left: g, right: h });
            }
        }
    }
    None
}

/// Idempotent ideals ordered by inclusion, with meet and join tables.
#[derive(Debug, Clone)]
pub struct IdealLattice {
    /// Sorted by size, then by member set.
    pub ideals: Vec<ArrowIdeal>,
    /// Number of two-sided ideals visited, idempotent or not.
    pub all_ideals: usize,
    pub meet: Vec<usize>,
    pub join: Vec<usize>,
}

impl IdealLattice {
    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.ideals[a].is_subset(&self.ideals[b])
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn index_of(&self, ideal: &ArrowIdeal) -> Option<usize> {
        self.ideals.iter().position(|i| i == ideal)
    }

    /// Totally ordered by inclusion.
    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|a| (a + 1..self.len()).all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    /// Covering pairs `(a, b)` with `a` strictly below `b`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let lt = |a: usize, b: usize| a != b && self.leq(a, b);
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|m| lt(a, m) && lt(m, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Hasse diagram of the inclusion order, nodes labelled by cardinality.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", name.replace('"', "'"));
        let _ = writeln!(out, "  rankdir=BT;");
        for (i, ideal) in self.ideals.iter().enumerate() {
            let _ = writeln!(out, "  i{i} [label=\"I{i} ({})\"];", ideal.len());
        }
        for (a, b) in self.covers() {
            let _ = writeln!(out, "  i{a} -> i{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// Enumerates all two-sided ideals as unions of principal ideals, keeps
/// the idempotent ones and computes the lattice operations.
pub fn enumerate_idempotent_ideals(c: &FinCategory, guard_cfg: &SizeGuard) -> Result<IdealLattice> {
    guard_cfg.check_arrows(c.arrow_count())?;
    let principal: Vec<ArrowIdeal> = (0..c.arrow_count()).map(|f| ideal_closure(c, &[f])).collect();
    let mut seen: HashSet<ArrowIdeal> = HashSet::new();
    let start = ArrowIdeal::empty(c);
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(ideal) = queue.pop_front() {
        for (f, p) in principal.iter().enumerate() {
            if ideal.contains(f) {
                continue;
            }
            let next = ideal.union(p);
            if !seen.contains(&next) {
                if seen.len() >= guard_cfg.max_ideals {
                    return Err(Error::guard("two-sided ideals", seen.len() as u128 + 1, guard_cfg.max_ideals as u128));
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let all_ideals = seen.len();
    let mut ideals: Vec<ArrowIdeal> = seen.into_iter().filter(|i| is_idempotent(c, i).idempotent).collect();
    ideals.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let n = ideals.len();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let inter = ideals[a].intersection(&ideals[b]);
            let below: Vec<usize> = (0..n).filter(|&k| ideals[k].is_subset(&inter)).collect();
            let maximal: Vec<usize> = below
                .iter()
                .copied()
                .filter(|&k| below.iter().all(|&m| m == k || !ideals[k].is_subset(&ideals[m])))
                .collect();
            if maximal.len() != 1 {
                return Err(Error::InternalInconsistency(format!(
                    "ideals I{a} and I{b} have {} maximal idempotent ideals below their intersection",
                    maximal.len()
                )));
            }
            meet[a * n + b] = maximal[0];
            let uni = ideals[a].union(&ideals[b]);
            join[a * n + b] = match ideals.iter().position(|i| *i == uni) {
                Some(k) => k,
                None => {
                    return Err(Error::InternalInconsistency(format!(
                        "union of ideals I{a} and I{b} is not an enumerated idempotent ideal"
                    )))
                }
            };
        }
    }
    Ok(IdealLattice {
        ideals,
        all_ideals,
        meet,
        join,
    })
}

/// Arrows factoring through an object of dimension at most `d`.
pub fn dimension_ideal(c: &FinCategory, d: usize) -> Result<ArrowIdeal> {
    let grading = c.grading().ok_or(Error::NotGraded)?;
    let mut ideal = ArrowIdeal::empty(c);
    for f in 0..c.arrow_count() {
        let through = (0..c.object_count()).filter(|&z| grading[z] <= d).any(|z| {
            c.hom(c.src(f), z)
                .iter()
                .any(|&g| c.hom(z, c.tgt(f)).iter().any(|&h| c.comp(h, g) == f))
        });
        if through {
            ideal.members.insert(f);
        }
    }
    Ok(ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{builtin, Builtin};

    fn g() -> SizeGuard {
        SizeGuard::default()
    }

    fn cat(kind: Builtin, n: usize) -> FinCategory {
        builtin(kind, n, &g()).unwrap()
    }

    #[test]
    fn closure_examples() {
        let t = cat(Builtin::Terminal, 0);
        assert!(ideal_closure(&t, &[]).is_empty());
        assert_eq!(ideal_closure(&t, &[0]), ArrowIdeal::all(&t));
        let w = cat(Builtin::WalkingArrow, 0);
        let f = (0..w.arrow_count()).find(|&a| !w.is_identity(a)).unwrap();
        let i = ideal_closure(&w, &[f]);
        assert_eq!(i.arrows(), vec![f]);
        assert!(i.is_closed(&w));
    }

    #[test]
    fn idempotence_examples() {
        let w = cat(Builtin::WalkingArrow, 0);
        assert!(is_idempotent(&w, &ArrowIdeal::empty(&w)).idempotent);
        let all = is_idempotent(&w, &ArrowIdeal::all(&w));
        assert!(all.idempotent);
        for fz in &all.factorizations {
            assert_eq!(w.comp(fz.left, fz.right), fz.arrow);
        }
        let f = (0..w.arrow_count()).find(|&a| !w.is_identity(a)).unwrap();
        let single = is_idempotent(&w, &ideal_closure(&w, &[f]));
        assert!(!single.idempotent);
        assert_eq!(single.unfactorable, Some(f));
    }

    #[test]
    fn terminal_has_two_ideals() {
        let l = enumerate_idempotent_ideals(&cat(Builtin::Terminal, 0), &g()).unwrap();
        assert_eq!(l.len(), 2);
        assert!(l.is_chain());
    }

    #[test]
    fn walking_arrow_ideals_form_a_square() {
        let w = cat(Builtin::WalkingArrow, 0);
        let l = enumerate_idempotent_ideals(&w, &g()).unwrap();
        assert_eq!(l.len(), 4);
        assert_eq!(l.all_ideals, 5);
        assert!(!l.is_chain());
        assert_eq!(l.covers().len(), 4);
    }

    #[test]
    fn simplex_ideals_are_dimension_ideals() {
        for k in 1..=2 {
            let c = cat(Builtin::Simplex, k);
            let l = enumerate_idempotent_ideals(&c, &g()).unwrap();
            assert!(l.is_chain());
            assert_eq!(l.len(), k + 2);
            for d in 0..=k {
                let i = dimension_ideal(&c, d).unwrap();
                assert!(i.is_closed(&c));
                assert!(l.index_of(&i).is_some(), "dimension {d} missing for simplex {k}");
            }
            assert_eq!(dimension_ideal(&c, k).unwrap(), ArrowIdeal::all(&c));
        }
    }

    #[test]
    fn simplex_one_rank_zero_ideal() {
        let c = cat(Builtin::Simplex, 1);
        let i = dimension_ideal(&c, 0).unwrap();
        // the three arrows out of or into [0] plus the two constant maps [1] -> [1]
        assert_eq!(i.len(), 6);
    }

    #[test]
    fn ungraded_category_is_rejected() {
        let raw = cat(Builtin::Terminal, 0).to_raw();
        let plain = FinCategory::validate(&raw, &g()).unwrap();
        assert!(matches!(dimension_ideal(&plain, 0), Err(Error::NotGraded)));
    }

    #[test]
    fn guard_stops_enumeration() {
        let tight = SizeGuard {
            max_ideals: 2,
            ..SizeGuard::default()
        };
        let err = enumerate_idempotent_ideals(&cat(Builtin::Simplex, 1), &tight).unwrap_err();
        assert!(matches!(err, Error::SizeGuardExceeded { .. }));
    }
}
