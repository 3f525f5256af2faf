use std::fmt;
use std::sync::Arc;

use super::Presheaf;
use crate::category::{Arrow, ArrowId, FinCategory, ObjId};
use crate::error::Result;
use crate::guard::SizeGuard;

/// The category of elements of a presheaf `P`: objects `(c, x)` with `x` in
/// `P(c)`, arrows `f : (c, x) -> (c', x')` with `P(f)(x') = x`.
#[derive(Debug, Clone)]
pub struct Elements {
    pub category: Arc<FinCategory>,
    /// Object id to `(c, x)`.
    pub objects: Vec<(ObjId, usize)>,
    /// Arrow id to the underlying arrow of the base.
    pub arrows: Vec<ArrowId>,
    offsets: Vec<usize>,
}

impl Elements {
    pub fn object_of(&self, c: ObjId, x: usize) -> ObjId {
        self.offsets[c] + x
    }
}

pub fn elements(p: &Presheaf, guard: &SizeGuard) -> Result<Elements> {
    let base = p.base();
    let mut offsets = Vec::with_capacity(base.object_count() + 1);
    offsets.push(0);
    let mut objects = Vec::new();
    let mut names = Vec::new();
    for c in 0..base.object_count() {
        for x in 0..p.at(c).len() {
            objects.push((c, x));
            names.push(format!("{}:{}", base.object_name(c), p.at(c).label(x)));
        }
        offsets.push(objects.len());
    }
    guard.check_objects(objects.len())?;
    // arrow (f, x') for x' in P(tgt f), indexed through arrow_offsets
    let mut arrow_offsets = Vec::with_capacity(base.arrow_count() + 1);
    arrow_offsets.push(0);
    let mut arrows = Vec::new();
    let mut under = Vec::new();
    for f in 0..base.arrow_count() {
        let (a, b) = (base.src(f), base.tgt(f));
        for x2 in 0..p.at(b).len() {
            arrows.push(Arrow {
                name: format!("{}@{}", base.arrow_name(f), names[offsets[b] + x2]),
                src: offsets[a] + p.act(f, x2),
                tgt: offsets[b] + x2,
            });
            under.push(f);
        }
        arrow_offsets.push(arrows.len());
    }
    guard.check_arrows(arrows.len())?;
    let targets: Vec<usize> = arrows.iter().map(|a| a.tgt).collect();
    let identities = objects
        .iter()
        .map(|&(c, x)| arrow_offsets[base.identity(c)] + x)
        .collect();
    let category = FinCategory::from_parts(
        names,
        arrows,
        identities,
        |g, _f| {
            let h = base.comp(under[g], under[_f]);
            let x2 = objects[targets[g]].1;
            arrow_offsets[h] + x2
        },
        guard,
    )?;
    Ok(Elements {
        category: Arc::new(category),
        objects,
        arrows: under,
        offsets,
    })
}

/// Why a category fails to be filtered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlatWitness {
    Empty,
    /// Two objects with no common bound.
    NoCommonBound { a: String, b: String },
    /// A parallel pair that no arrow equalizes.
    NotEqualized { f: String, g: String },
}

impl fmt::Display for FlatWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlatWitness::Empty => write!(f, "category of elements is empty"),
            FlatWitness::NoCommonBound { a, b } => write!(f, "{a} and {b} have no common bound"),
            FlatWitness::NotEqualized { f: x, g } => write!(f, "no arrow equalizes {x} and {g}"),
        }
    }
}

/// Nonempty, every pair of objects maps to a common object, every parallel
/// pair is coequalized by some arrow out of its codomain.
pub fn filtered_check(c: &FinCategory) -> std::result::Result<(), FlatWitness> {
    let n = c.object_count();
    if n == 0 {
        return Err(FlatWitness::Empty);
    }
    for a in 0..n {
        for b in a + 1..n {
            if !(0..n).any(|r| !c.hom(a, r).is_empty() && !c.hom(b, r).is_empty()) {
                return Err(FlatWitness::NoCommonBound {
                    a: c.object_name(a).to_string(),
                    b: c.object_name(b).to_string(),
                });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let h = c.hom(a, b);
            for (i, &f) in h.iter().enumerate() {
                for &g in &h[i + 1..] {
                    if !c.arrows_from(b).iter().any(|&w| c.comp(w, f) == c.comp(w, g)) {
                        return Err(FlatWitness::NotEqualized {
                            f: c.arrow_name(f).to_string(),
                            g: c.arrow_name(g).to_string(),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// The dual of [`filtered_check`].
pub fn cofiltered_check(c: &FinCategory) -> std::result::Result<(), FlatWitness> {
    filtered_check(&c.opposite())
}

/// A presheaf is flat when it is a filtered colimit of representables:
/// its category of elements (where a representable has a terminal object)
/// is filtered, equivalently the opposite orientation is cofiltered.
pub fn flat_check(p: &Presheaf, guard: &SizeGuard) -> Result<std::result::Result<(), FlatWitness>> {
    let el = elements(p, guard)?;
    Ok(filtered_check(&el.category))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{builtin, Builtin};
    use crate::presheaf::yoneda;

    fn cat(kind: Builtin, n: usize) -> Arc<FinCategory> {
        Arc::new(builtin(kind, n, &SizeGuard::default()).unwrap())
    }

    #[test]
    fn representables_are_flat() {
        let g = SizeGuard::default();
        for c in [cat(Builtin::WalkingArrow, 0), cat(Builtin::Simplex, 1), cat(Builtin::Globe, 1), cat(Builtin::MonoidTable, 3)] {
            for o in 0..c.object_count() {
                assert_eq!(flat_check(&yoneda(&c, o), &g).unwrap(), Ok(()));
            }
        }
    }

    #[test]
    fn coproduct_of_representables_is_not_flat() {
        let w = cat(Builtin::WalkingArrow, 0);
        let p = yoneda(&w, 0).coproduct(&yoneda(&w, 1)).unwrap();
        let verdict = flat_check(&p, &SizeGuard::default()).unwrap();
        assert!(matches!(verdict, Err(FlatWitness::NoCommonBound { .. })));
    }

    #[test]
    fn empty_presheaf_is_not_flat() {
        let w = cat(Builtin::WalkingArrow, 0);
        let verdict = flat_check(&Presheaf::empty(w), &SizeGuard::default()).unwrap();
        assert_eq!(verdict, Err(FlatWitness::Empty));
    }

    #[test]
    fn elements_of_representable_have_terminal_object() {
        let c = cat(Builtin::Simplex, 1);
        let el = elements(&yoneda(&c, 1), &SizeGuard::default()).unwrap();
        let n = el.category.object_count();
        let id = el.object_of(1, crate::presheaf::position(c.hom(1, 1), c.identity(1)));
        assert!((0..n).all(|x| el.category.hom(x, id).len() == 1));
    }
}
