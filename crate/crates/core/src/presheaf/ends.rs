use std::sync::Arc;

use super::Presheaf;
use crate::category::{FinCategory, FinSet, ObjId};
use crate::error::{Error, Result};
use crate::guard::{SearchBudget, SizeGuard};
use crate::profunctor::Profunctor;
use crate::search::FamilySearch;
use crate::unionfind::UnionFind;

/// A functor `C^op x C -> FinSet`: a profunctor from a category to itself.
pub type Bifunctor = Profunctor;

/// A disjoint union of finite sets modulo a generated equivalence. Classes
/// are numbered by their least member in `(part, index)` order, which is also
/// the representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    set: FinSet,
    offsets: Vec<usize>,
    class_of: Vec<usize>,
    reps: Vec<(usize, usize)>,
}

/// The coend of a bifunctor with its injections.
pub type Coend = Quotient;

impl Quotient {
    pub(crate) fn build(
        sizes: &[usize],
        pairs: impl IntoIterator<Item = ((usize, usize), (usize, usize))>,
        label: impl Fn(usize, usize) -> String,
    ) -> Self {
        let mut offsets = Vec::with_capacity(sizes.len() + 1);
        offsets.push(0);
        for s in sizes {
            offsets.push(offsets.last().unwrap() + s);
        }
        let mut uf = UnionFind::new(offsets[sizes.len()]);
        for ((p, x), (q, y)) in pairs {
            uf.union(offsets[p] + x, offsets[q] + y);
        }
        let (class_of, rep_flat) = uf.classes();
        let reps: Vec<(usize, usize)> = rep_flat
            .iter()
            .map(|&r| {
                let part = offsets.partition_point(|&o| o <= r) - 1;
                (part, r - offsets[part])
            })
            .collect();
        let set = FinSet::from_labels_unchecked(reps.iter().map(|&(p, x)| label(p, x)).collect());
        Quotient {
            set,
            offsets,
            class_of,
            reps,
        }
    }

    pub fn set(&self) -> &FinSet {
        &self.set
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    #[inline]
    pub fn class(&self, part: usize, x: usize) -> usize {
        self.class_of[self.offsets[part] + x]
    }

    #[inline]
    pub fn representative(&self, class: usize) -> (usize, usize) {
        self.reps[class]
    }

    /// The injection of one summand into the quotient.
    pub fn injection(&self, part: usize) -> &[usize] {
        &self.class_of[self.offsets[part]..self.offsets[part + 1]]
    }
}

/// `coend_c H(c, c)`: the disjoint union of the diagonal quotiented by
/// `H(f, a)(x) ~ H(b, f)(x)` for every `f : a -> b` and `x` in `H(b, a)`.
pub fn coend(h: &Bifunctor) -> Coend {
    let c = h.dom().clone();
    let sizes: Vec<usize> = (0..c.object_count()).map(|o| h.at(o, o).len()).collect();
    let mut pairs = Vec::new();
    for f in 0..c.arrow_count() {
        if c.is_identity(f) {
            continue;
        }
        let (a, b) = (c.src(f), c.tgt(f));
        for x in 0..h.at(b, a).len() {
            pairs.push(((a, h.act_left(f, a, x)), (b, h.act_right(b, f, x))));
        }
    }
    Quotient::build(&sizes, pairs, |o, x| format!("{}:{}", c.object_name(o), h.at(o, o).label(x)))
}

/// The end of a bifunctor: families `e_c` in `H(c, c)` with
/// `H(a, f)(e_a) = H(f, b)(e_b)` for every `f : a -> b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct End {
    /// `families[k][c]` indexes an element of `H(c, c)`.
    pub families: Vec<Vec<usize>>,
}

impl End {
    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }
}

pub fn end(h: &Bifunctor, guard: &SizeGuard) -> Result<End> {
    let c = h.dom().clone();
    let n = c.object_count();
    let mut search = FamilySearch::new((0..n).map(|o| h.at(o, o).len()).collect());
    for f in 0..c.arrow_count() {
        if c.is_identity(f) {
            continue;
        }
        let (a, b) = (c.src(f), c.tgt(f));
        let right = search.table((0..h.at(a, a).len()).map(|x| h.act_right(a, f, x)).collect());
        let left = search.table((0..h.at(b, b).len()).map(|x| h.act_left(f, b, x)).collect());
        search.equal(a, right, b, left);
    }
    let mut budget = SearchBudget::new(guard, "end search nodes");
    Ok(End {
        families: search.solve(&mut budget)?,
    })
}

fn function_count(domain: usize, codomain: usize, guard: &SizeGuard) -> Result<usize> {
    let count = (codomain as u128).checked_pow(domain as u32).unwrap_or(u128::MAX);
    if count > guard.max_search as u128 {
        return Err(Error::guard("function set size", count, guard.max_search as u128));
    }
    Ok(count as usize)
}

/// Decodes a function index into its table (little-endian digits).
pub(crate) fn decode_function(mut code: usize, domain: usize, codomain: usize) -> Vec<usize> {
    (0..domain)
        .map(|_| {
            let d = code % codomain;
            code /= codomain;
            d
        })
        .collect()
}

pub(crate) fn encode_function(table: &[usize], codomain: usize) -> usize {
    table.iter().rev().fold(0, |acc, &d| acc * codomain + d)
}

/// The bifunctor `(x, y) |-> Set(F x, G y)` on `C^op`, whose end is the set
/// of natural transformations `F => G`. Returns `C^op` alongside.
pub fn hom_bifunctor(f: &Presheaf, g: &Presheaf, guard: &SizeGuard) -> Result<(Arc<FinCategory>, Bifunctor)> {
    super::same_base(f.base(), g.base())?;
    let c = f.base();
    let op = Arc::new(c.opposite());
    let n = c.object_count();
    let mut sets = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let (a, b) = (f.at(x).len(), g.at(y).len());
            let count = function_count(a, b, guard)?;
            let labels = (0..count)
                .map(|code| {
                    let t = decode_function(code, a, b);
                    let parts: Vec<&str> = t.iter().map(|&v| g.at(y).label(v)).collect();
                    format!("[{}]", parts.join(","))
                })
                .collect();
            sets.push(FinSet::from_labels_unchecked(labels));
        }
    }
    let left = |k: usize, y: ObjId, code: usize| {
        let (x, x2) = (c.src(k), c.tgt(k));
        let (a, b) = (f.at(x).len(), g.at(y).len());
        let phi = decode_function(code, a, b);
        let t: Vec<usize> = (0..f.at(x2).len()).map(|e| phi[f.act(k, e)]).collect();
        encode_function(&t, b)
    };
    let right = |x: ObjId, k: usize, code: usize| {
        let (y, y2) = (c.tgt(k), c.src(k));
        let a = f.at(x).len();
        let phi = decode_function(code, a, g.at(y).len());
        let t: Vec<usize> = phi.iter().map(|&v| g.act(k, v)).collect();
        encode_function(&t, g.at(y2).len())
    };
    let h = Profunctor::from_actions(op.clone(), op.clone(), sets, left, right)?;
    Ok((op, h))
}
