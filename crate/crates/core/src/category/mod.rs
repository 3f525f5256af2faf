//! Finite categories, finite sets and functors between finite categories.
//!
//! Objects and arrows are interned to dense ids. Parsed inputs are put in a
//! canonical order (objects by name, arrows by source, target, name);
//! categories produced by the builders keep the builder's deterministic order.

mod builtin;
mod functor;

pub use builtin::{builtin, Builtin};
pub use functor::{full_subcategory, FinFunctor};

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::guard::SizeGuard;

pub type ObjId = usize;
pub type ArrowId = usize;

const NONE: u32 = u32::MAX;

/// A finite set with labelled elements. Elements are addressed by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FinSet {
    elements: Vec<String>,
}

impl FinSet {
    /// Builds a set from labels in the given order. Labels must be distinct.
    pub fn new(elements: Vec<String>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(elements.len());
        for e in &elements {
            if !seen.insert(e.as_str()) {
                return Err(Error::InvalidPresheaf(format!("duplicate element label {e:?}")));
            }
        }
        Ok(FinSet { elements })
    }

    /// Builds a set whose order is the sorted order of its labels.
    pub fn sorted(mut elements: Vec<String>) -> Result<Self> {
        elements.sort();
        Self::new(elements)
    }

    /// `{0, 1, ..., n-1}` labelled by decimal indices.
    pub fn indexed(n: usize) -> Self {
        FinSet {
            elements: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn singleton(label: impl Into<String>) -> Self {
        FinSet {
            elements: vec![label.into()],
        }
    }

    pub fn empty() -> Self {
        FinSet::default()
    }

    pub(crate) fn from_labels_unchecked(elements: Vec<String>) -> Self {
        FinSet { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.elements
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

/// Unvalidated category tables as read from a file. Identities are implicit
/// and `composites` lists only pairs that involve no identity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    /// `(g, f, h)` meaning `g . f = h`.
    pub composites: Vec<(String, String, String)>,
}

/// A finite category with a total composition table on composable pairs.
#[derive(Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<ArrowId>,
    /// `out[o]`: arrows with source `o`, ascending.
    out: Vec<Vec<ArrowId>>,
    /// Position of an arrow inside `out[src]`.
    out_pos: Vec<u32>,
    /// `post[f][k] = out[tgt f][k] . f`.
    post: Vec<Vec<u32>>,
    /// `homs[a * n + b]`: arrows `a -> b`, ascending.
    homs: Vec<Vec<ArrowId>>,
    object_index: HashMap<String, ObjId>,
    arrow_index: HashMap<String, ArrowId>,
    grading: Option<Vec<usize>>,
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCategory")
            .field("objects", &self.objects)
            .field("arrows", &self.arrows.len())
            .finish()
    }
}

pub fn identity_name(object: &str) -> String {
    format!("id_{object}")
}

impl FinCategory {
    /// Builds a category from dense tables and checks every law exhaustively.
    ///
    /// `compose(g, f)` is only called on composable pairs and must return the
    /// id of `g . f`.
    pub fn from_parts(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<ArrowId>,
        mut compose: impl FnMut(ArrowId, ArrowId) -> ArrowId,
        guard: &SizeGuard,
    ) -> Result<Self> {
        guard.check_objects(objects.len())?;
        guard.check_arrows(arrows.len())?;
        if identities.len() != objects.len() {
            return Err(Error::InvalidCategory("one identity per object required".into()));
        }
        let n = objects.len();
        let mut object_index = HashMap::with_capacity(n);
        for (i, o) in objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                return Err(Error::InvalidCategory(format!("duplicate object {o}")));
            }
        }
        let mut arrow_index = HashMap::with_capacity(arrows.len());
        for (i, a) in arrows.iter().enumerate() {
            if a.src >= n || a.tgt >= n {
                return Err(Error::InvalidCategory(format!("arrow {} has an unknown endpoint", a.name)));
            }
            if arrow_index.insert(a.name.clone(), i).is_some() {
                return Err(Error::InvalidCategory(format!("duplicate arrow {}", a.name)));
            }
        }
        for (o, &id) in identities.iter().enumerate() {
            if id >= arrows.len() || arrows[id].src != o || arrows[id].tgt != o {
                return Err(Error::InvalidCategory(format!("identity of {} is not an endo-arrow on it", objects[o])));
            }
        }
        let mut out = vec![Vec::new(); n];
        let mut homs = vec![Vec::new(); n * n];
        let mut out_pos = vec![0u32; arrows.len()];
        for (i, a) in arrows.iter().enumerate() {
            out_pos[i] = out[a.src].len() as u32;
            out[a.src].push(i);
            homs[a.src * n + a.tgt].push(i);
        }
        let mut post = Vec::with_capacity(arrows.len());
        for f in &arrows {
            let mut row = Vec::with_capacity(out[f.tgt].len());
            for _ in 0..out[f.tgt].len() {
                row.push(NONE);
            }
            post.push(row);
        }
        let mut cat = FinCategory {
            objects,
            arrows,
            identities,
            out,
            out_pos,
            post,
            homs,
            object_index,
            arrow_index,
            grading: None,
        };
        for f in 0..cat.arrows.len() {
            let t = cat.arrows[f].tgt;
            for k in 0..cat.out[t].len() {
                let g = cat.out[t][k];
                let h = compose(g, f);
                if h >= cat.arrows.len() {
                    return Err(Error::MissingComposite {
                        g: cat.arrows[g].name.clone(),
                        f: cat.arrows[f].name.clone(),
                    });
                }
                if cat.arrows[h].src != cat.arrows[f].src || cat.arrows[h].tgt != cat.arrows[g].tgt {
                    return Err(Error::InvalidCategory(format!(
                        "{} . {} = {} has the wrong type",
                        cat.arrows[g].name, cat.arrows[f].name, cat.arrows[h].name
                    )));
                }
                cat.post[f][k] = h as u32;
            }
        }
        cat.check_laws()?;
        Ok(cat)
    }

    /// Validates raw file tables, synthesizing identities named `id_<object>`.
    pub fn validate(raw: &RawCategory, guard: &SizeGuard) -> Result<Self> {
        let mut objects = raw.objects.clone();
        objects.sort();
        for w in objects.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidCategory(format!("duplicate object {}", w[0])));
            }
        }
        let obj_of: HashMap<&str, ObjId> = objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        let lookup_obj = |name: &str| {
            obj_of
                .get(name)
                .copied()
                .ok_or_else(|| Error::InvalidCategory(format!("unknown object {name}")))
        };

        let mut all: Vec<(ObjId, ObjId, String, bool)> = Vec::new();
        for o in &objects {
            let i = obj_of[o.as_str()];
            all.push((i, i, identity_name(o), true));
        }
        for (name, s, t) in &raw.arrows {
            all.push((lookup_obj(s)?, lookup_obj(t)?, name.clone(), false));
        }
        all.sort();
        let mut arrows = Vec::with_capacity(all.len());
        let mut is_identity = Vec::with_capacity(all.len());
        let mut identities = vec![0; objects.len()];
        let mut names = HashSet::new();
        for (s, t, name, ident) in all {
            if !names.insert(name.clone()) {
                return Err(Error::InvalidCategory(format!("duplicate arrow {name}")));
            }
            if ident {
                identities[s] = arrows.len();
            }
            is_identity.push(ident);
            arrows.push(Arrow { name, src: s, tgt: t });
        }
        let arrow_of: HashMap<&str, ArrowId> = arrows.iter().enumerate().map(|(i, a)| (a.name.as_str(), i)).collect();
        let lookup_arrow = |name: &str| {
            arrow_of
                .get(name)
                .copied()
                .ok_or_else(|| Error::InvalidCategory(format!("unknown arrow {name}")))
        };

        let mut table: HashMap<(ArrowId, ArrowId), ArrowId> = HashMap::new();
        for (g, f, h) in &raw.composites {
            let (gi, fi, hi) = (lookup_arrow(g)?, lookup_arrow(f)?, lookup_arrow(h)?);
            if arrows[fi].tgt != arrows[gi].src {
                return Err(Error::InvalidCategory(format!("{g} . {f} is not composable")));
            }
            if arrows[hi].src != arrows[fi].src || arrows[hi].tgt != arrows[gi].tgt {
                return Err(Error::InvalidCategory(format!("{g} . {f} = {h} has the wrong type")));
            }
            if is_identity[gi] && hi != fi {
                return Err(Error::IdentityViolation {
                    arrow: f.clone(),
                    detail: format!("{g} . {f} declared as {h}"),
                });
            }
            if is_identity[fi] && hi != gi {
                return Err(Error::IdentityViolation {
                    arrow: g.clone(),
                    detail: format!("{g} . {f} declared as {h}"),
                });
            }
            if let Some(prev) = table.insert((gi, fi), hi) {
                if prev != hi {
                    return Err(Error::InvalidCategory(format!("conflicting entries for {g} . {f}")));
                }
            }
        }
        FinCategory::from_parts(
            objects,
            arrows,
            identities,
            |g, f| {
                if is_identity[g] {
                    f
                } else if is_identity[f] {
                    g
                } else if let Some(&h) = table.get(&(g, f)) {
                    h
                } else {
                    usize::MAX
                }
            },
            guard,
        )
    }

    fn check_laws(&self) -> Result<()> {
        for (f, a) in self.arrows.iter().enumerate() {
            let left = self.comp(self.identities[a.tgt], f);
            let right = self.comp(f, self.identities[a.src]);
            if left != f || right != f {
                return Err(Error::IdentityViolation {
                    arrow: a.name.clone(),
                    detail: format!(
                        "id . f = {}, f . id = {}",
                        self.arrows[left].name, self.arrows[right].name
                    ),
                });
            }
        }
        for f in 0..self.arrows.len() {
            for &g in &self.out[self.arrows[f].tgt] {
                let gf = self.comp(g, f);
                for &h in &self.out[self.arrows[g].tgt] {
                    let left = self.comp(self.comp(h, g), f);
                    let right = self.comp(h, gf);
                    if left != right {
                        return Err(Error::AssociativityViolation {
                            h: self.arrows[h].name.clone(),
                            g: self.arrows[g].name.clone(),
                            f: self.arrows[f].name.clone(),
                            left: self.arrows[left].name.clone(),
                            right: self.arrows[right].name.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub(crate) fn with_grading(mut self, grading: Vec<usize>) -> Self {
        debug_assert_eq!(grading.len(), self.objects.len());
        self.grading = Some(grading);
        self
    }

    /// Dimension of each object, when the category came from a graded builder.
    pub fn grading(&self) -> Option<&[usize]> {
        self.grading.as_deref()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        &self.objects[o]
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.object_index.get(name).copied()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a].name
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrow_index.get(name).copied()
    }

    #[inline]
    pub fn src(&self, a: ArrowId) -> ObjId {
        self.arrows[a].src
    }

    #[inline]
    pub fn tgt(&self, a: ArrowId) -> ObjId {
        self.arrows[a].tgt
    }

    #[inline]
    pub fn identity(&self, o: ObjId) -> ArrowId {
        self.identities[o]
    }

    pub fn is_identity(&self, a: ArrowId) -> bool {
        self.identities[self.arrows[a].src] == a
    }

    /// `g . f`, or `None` when `tgt f != src g`.
    #[inline]
    pub fn compose(&self, g: ArrowId, f: ArrowId) -> Option<ArrowId> {
        if self.arrows[f].tgt != self.arrows[g].src {
            return None;
        }
        Some(self.post[f][self.out_pos[g] as usize] as usize)
    }

    /// `g . f` for a pair known to be composable.
    #[inline]
    pub fn comp(&self, g: ArrowId, f: ArrowId) -> ArrowId {
        debug_assert_eq!(self.arrows[f].tgt, self.arrows[g].src);
        self.post[f][self.out_pos[g] as usize] as usize
    }

    /// Arrows `a -> b` in ascending id order.
    #[inline]
    pub fn hom(&self, a: ObjId, b: ObjId) -> &[ArrowId] {
        &self.homs[a * self.objects.len() + b]
    }

    /// Arrows out of `o` in ascending id order.
    pub fn arrows_from(&self, o: ObjId) -> &[ArrowId] {
        &self.out[o]
    }

    /// Every hom-set has at most one arrow.
    pub fn is_thin(&self) -> bool {
        self.homs.iter().all(|h| h.len() <= 1)
    }

    /// The opposite category: same ids, reversed arrows.
    pub fn opposite(&self) -> FinCategory {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                name: a.name.clone(),
                src: a.tgt,
                tgt: a.src,
            })
            .collect();
        FinCategory::from_parts(
            self.objects.clone(),
            arrows,
            self.identities.clone(),
            |g, f| self.comp(f, g),
            &SizeGuard {
                max_objects: usize::MAX,
                max_arrows: usize::MAX,
                ..SizeGuard::default()
            },
        )
        .expect("opposite of a valid category is valid")
    }

    /// Raw tables listing every non-identity composite, suitable for printing.
    pub fn to_raw(&self) -> RawCategory {
        let mut raw = RawCategory {
            objects: self.objects.clone(),
            ..RawCategory::default()
        };
        for (i, a) in self.arrows.iter().enumerate() {
            if !self.is_identity(i) {
                raw.arrows.push((
                    a.name.clone(),
                    self.objects[a.src].clone(),
                    self.objects[a.tgt].clone(),
                ));
            }
        }
        for f in 0..self.arrows.len() {
            if self.is_identity(f) {
                continue;
            }
            for &g in &self.out[self.arrows[f].tgt] {
                if self.is_identity(g) {
                    continue;
                }
                let h = self.comp(g, f);
                raw.composites.push((
                    self.arrows[g].name.clone(),
                    self.arrows[f].name.clone(),
                    self.arrow_name(h).to_string(),
                ));
            }
        }
        raw
    }

    /// Brute-force check that finite limits exist: a terminal object, binary
    /// products and equalizers, each by its universal property.
    pub fn has_finite_limits(&self) -> bool {
        let n = self.objects.len();
        let terminal = (0..n).any(|t| (0..n).all(|x| self.hom(x, t).len() == 1));
        if !terminal {
            return false;
        }
        for a in 0..n {
            for b in a..n {
                if !self.has_product(a, b) {
                    return false;
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let h = self.hom(a, b);
                for (i, &f) in h.iter().enumerate() {
                    for &g in &h[i + 1..] {
                        if !self.has_equalizer(f, g) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn has_product(&self, a: ObjId, b: ObjId) -> bool {
        let n = self.objects.len();
        for p in 0..n {
            for &pa in self.hom(p, a) {
                for &pb in self.hom(p, b) {
                    let universal = (0..n).all(|x| {
                        let mut seen = HashSet::new();
                        for &h in self.hom(x, p) {
                            if !seen.insert((self.comp(pa, h), self.comp(pb, h))) {
                                return false;
                            }
                        }
                        seen.len() == self.hom(x, a).len() * self.hom(x, b).len()
                    });
                    if universal {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn has_equalizer(&self, f: ArrowId, g: ArrowId) -> bool {
        let a = self.src(f);
        let n = self.objects.len();
        for e in 0..n {
            for &m in self.hom(e, a) {
                if self.comp(f, m) != self.comp(g, m) {
                    continue;
                }
                let universal = (0..n).all(|x| {
                    let equalizing = self
                        .hom(x, a)
                        .iter()
                        .filter(|&&k| self.comp(f, k) == self.comp(g, k))
                        .count();
                    let mut seen = HashSet::new();
                    for &h in self.hom(x, e) {
                        if !seen.insert(self.comp(m, h)) {
                            return false;
                        }
                    }
                    seen.len() == equalizing
                });
                if universal {
                    return true;
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(objects: &[&str], arrows: &[(&str, &str, &str)], comps: &[(&str, &str, &str)]) -> RawCategory {
        RawCategory {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
                .collect(),
            composites: comps
                .iter()
                .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
                .collect(),
        }
    }

    #[test]
    fn terminal_category_has_one_arrow() {
        let c = FinCategory::validate(&raw(&["*"], &[], &[]), &SizeGuard::default()).unwrap();
        assert_eq!(c.arrow_count(), 1);
        assert!(c.is_identity(0));
    }

    #[test]
    fn walking_arrow_has_three_arrows() {
        let c = FinCategory::validate(&raw(&["c0", "c1"], &[("f", "c0", "c1")], &[]), &SizeGuard::default()).unwrap();
        assert_eq!(c.arrow_count(), 3);
        let f = c.arrow_id("f").unwrap();
        assert_eq!(c.hom(0, 1), &[f]);
        assert!(c.hom(1, 0).is_empty());
    }

    #[test]
    fn missing_composite_is_reported() {
        let err = FinCategory::validate(
            &raw(&["a", "b", "c"], &[("f", "a", "b"), ("g", "b", "c")], &[]),
            &SizeGuard::default(),
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::MissingComposite {
                g: "g".into(),
                f: "f".into()
            }
        );
    }

    #[test]
    fn broken_monoid_table_violates_associativity() {
        // One object, arrows x, y with x.x = y, x.y = x, y.x = y, y.y = x.
        // (x.x).y = y.y = x but x.(x.y) = x.x = y.
        let err = FinCategory::validate(
            &raw(
                &["o"],
                &[("x", "o", "o"), ("y", "o", "o")],
                &[("x", "x", "y"), ("x", "y", "x"), ("y", "x", "y"), ("y", "y", "x")],
            ),
            &SizeGuard::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::AssociativityViolation { .. }), "{err}");
    }

    #[test]
    fn identity_misuse_is_rejected() {
        let err = FinCategory::validate(
            &raw(&["a", "b"], &[("f", "a", "b"), ("g", "a", "b")], &[("id_b", "f", "g")]),
            &SizeGuard::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::IdentityViolation { .. }), "{err}");
    }

    #[test]
    fn ill_typed_composite_is_rejected() {
        let err = FinCategory::validate(
            &raw(
                &["a", "b"],
                &[("f", "a", "b"), ("g", "b", "a")],
                &[("g", "f", "f"), ("f", "g", "id_b")],
            ),
            &SizeGuard::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidCategory(_)), "{err}");
    }

    #[test]
    fn arrow_guard_is_enforced() {
        let guard = SizeGuard {
            max_arrows: 2,
            ..SizeGuard::default()
        };
        let err = FinCategory::validate(&raw(&["a", "b"], &[("f", "a", "b")], &[]), &guard).unwrap_err();
        assert!(matches!(err, Error::SizeGuardExceeded { .. }));
    }

    #[test]
    fn opposite_reverses_composition() {
        let c = FinCategory::validate(
            &raw(
                &["a", "b", "c"],
                &[("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c")],
                &[("g", "f", "h")],
            ),
            &SizeGuard::default(),
        )
        .unwrap();
        let op = c.opposite();
        let (f, g, h) = (c.arrow_id("f").unwrap(), c.arrow_id("g").unwrap(), c.arrow_id("h").unwrap());
        assert_eq!(op.compose(f, g), Some(h));
        assert_eq!(op.compose(g, f), None);
        assert_eq!(op.src(f), c.tgt(f));
    }

    #[test]
    fn raw_round_trip_preserves_category() {
        let c = FinCategory::validate(
            &raw(
                &["a", "b", "c"],
                &[("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c")],
                &[("g", "f", "h")],
            ),
            &SizeGuard::default(),
        )
        .unwrap();
        let again = FinCategory::validate(&c.to_raw(), &SizeGuard::default()).unwrap();
        assert_eq!(c, again);
    }
}
