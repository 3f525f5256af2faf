use std::sync::Arc;

use super::{ArrowId, FinCategory, ObjId};
use crate::error::{Error, Result};
use crate::guard::SizeGuard;

/// A functor between finite categories, checked exhaustively on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFunctor {
    dom: Arc<FinCategory>,
    cod: Arc<FinCategory>,
    objects: Vec<ObjId>,
    arrows: Vec<ArrowId>,
}

impl FinFunctor {
    pub fn new(dom: Arc<FinCategory>, cod: Arc<FinCategory>, objects: Vec<ObjId>, arrows: Vec<ArrowId>) -> Result<Self> {
        if objects.len() != dom.object_count() || arrows.len() != dom.arrow_count() {
            return Err(Error::InvalidFunctor("object or arrow map has the wrong length".into()));
        }
        if let Some(&bad) = objects.iter().find(|&&o| o >= cod.object_count()) {
            return Err(Error::InvalidFunctor(format!("object image {bad} out of range")));
        }
        for (a, &fa) in arrows.iter().enumerate() {
            if fa >= cod.arrow_count() {
                return Err(Error::InvalidFunctor(format!("arrow image {fa} out of range")));
            }
            if cod.src(fa) != objects[dom.src(a)] || cod.tgt(fa) != objects[dom.tgt(a)] {
                return Err(Error::InvalidFunctor(format!(
                    "{} is sent to {} with the wrong endpoints",
                    dom.arrow_name(a),
                    cod.arrow_name(fa)
                )));
            }
        }
        for o in 0..dom.object_count() {
            if arrows[dom.identity(o)] != cod.identity(objects[o]) {
                return Err(Error::InvalidFunctor(format!(
                    "identity of {} not preserved",
                    dom.object_name(o)
                )));
            }
        }
        for f in 0..dom.arrow_count() {
            for &g in dom.arrows_from(dom.tgt(f)) {
                if arrows[dom.comp(g, f)] != cod.comp(arrows[g], arrows[f]) {
                    return Err(Error::InvalidFunctor(format!(
                        "composite {} . {} not preserved",
                        dom.arrow_name(g),
                        dom.arrow_name(f)
                    )));
                }
            }
        }
        Ok(FinFunctor {
            dom,
            cod,
            objects,
            arrows,
        })
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        let objects = (0..c.object_count()).collect();
        let arrows = (0..c.arrow_count()).collect();
        FinFunctor {
            dom: c.clone(),
            cod: c,
            objects,
            arrows,
        }
    }

    pub fn dom(&self) -> &Arc<FinCategory> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCategory> {
        &self.cod
    }

    #[inline]
    pub fn on_object(&self, o: ObjId) -> ObjId {
        self.objects[o]
    }

    #[inline]
    pub fn on_arrow(&self, a: ArrowId) -> ArrowId {
        self.arrows[a]
    }

    /// `Ok` when every hom-map `dom(x, y) -> cod(Fx, Fy)` is bijective;
    /// otherwise a description of the first failing pair.
    pub fn check_fully_faithful(&self) -> Result<()> {
        let n = self.dom.object_count();
        for x in 0..n {
            for y in 0..n {
                let src = self.dom.hom(x, y);
                let tgt = self.cod.hom(self.objects[x], self.objects[y]);
                let mut images: Vec<ArrowId> = src.iter().map(|&a| self.arrows[a]).collect();
                images.sort_unstable();
                images.dedup();
                if images.len() != src.len() || images.len() != tgt.len() {
                    return Err(Error::NotFullyFaithful(format!(
                        "hom({}, {}) has {} arrows mapping onto {} of {}",
                        self.dom.object_name(x),
                        self.dom.object_name(y),
                        src.len(),
                        images.len(),
                        tgt.len()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The full subcategory on `objects` (in the given order) with its inclusion.
pub fn full_subcategory(c: &Arc<FinCategory>, objects: &[ObjId], guard: &SizeGuard) -> Result<(Arc<FinCategory>, FinFunctor)> {
    let mut local = vec![usize::MAX; c.object_count()];
    for (i, &o) in objects.iter().enumerate() {
        if o >= c.object_count() || local[o] != usize::MAX {
            return Err(Error::InvalidFunctor("subcategory objects must be distinct objects".into()));
        }
        local[o] = i;
    }
    let mut arrows = Vec::new();
    let mut arrow_map = Vec::new();
    let mut sub_id = vec![usize::MAX; c.arrow_count()];
    for &x in objects {
        for &y in objects {
            for &a in c.hom(x, y) {
                sub_id[a] = arrows.len();
                arrow_map.push(a);
                arrows.push(super::Arrow {
                    name: c.arrow_name(a).to_string(),
                    src: local[x],
                    tgt: local[y],
                });
            }
        }
    }
    let identities = objects.iter().map(|&o| sub_id[c.identity(o)]).collect();
    let names = objects.iter().map(|&o| c.object_name(o).to_string()).collect();
    let sub = FinCategory::from_parts(names, arrows, identities, |g, f| sub_id[c.comp(arrow_map[g], arrow_map[f])], guard)?;
    let sub = Arc::new(sub);
    let inclusion = FinFunctor::new(sub.clone(), c.clone(), objects.to_vec(), arrow_map)?;
    Ok((sub, inclusion))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{builtin, Builtin};

    #[test]
    fn full_subcategory_inclusion_is_fully_faithful() {
        let c = Arc::new(builtin(Builtin::Chain, 2, &SizeGuard::default()).unwrap());
        let (sub, i) = full_subcategory(&c, &[0, 2], &SizeGuard::default()).unwrap();
        assert_eq!(sub.arrow_count(), 3);
        i.check_fully_faithful().unwrap();
    }

    #[test]
    fn collapsing_functor_is_not_faithful() {
        let c = Arc::new(builtin(Builtin::MonoidTable, 2, &SizeGuard::default()).unwrap());
        let t = Arc::new(builtin(Builtin::Terminal, 0, &SizeGuard::default()).unwrap());
        let f = FinFunctor::new(c, t, vec![0], vec![0, 0]).unwrap();
        assert!(matches!(f.check_fully_faithful(), Err(Error::NotFullyFaithful(_))));
    }

    #[test]
    fn functor_breaking_composition_is_rejected() {
        // Z/3 -> Z/3 sending the generator to itself but g2 to the identity.
        let c = Arc::new(builtin(Builtin::MonoidTable, 3, &SizeGuard::default()).unwrap());
        let err = FinFunctor::new(c.clone(), c, vec![0], vec![0, 1, 0]).unwrap_err();
        assert!(matches!(err, Error::InvalidFunctor(_)));
    }
}
