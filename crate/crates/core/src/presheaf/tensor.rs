use std::sync::Arc;

use super::{Copresheaf, NatTrans};
use crate::category::{builtin, ArrowId, Builtin, FinCategory, ObjId};
use crate::error::{Error, Result};
use crate::guard::SizeGuard;
use crate::profunctor::{compose_profunctors, Composite, Profunctor};

/// `M~(F)(a) = coend_{a'} M(a', a) x F(a')` with the coend data that names
/// its elements.
#[derive(Debug, Clone)]
pub struct Tensor {
    pub copresheaf: Copresheaf,
    composite: Composite,
}

impl Tensor {
    /// Class in `M~(F)(a)` of `(a', m, x)` with `m` in `M(a', a)`, `x` in `F(a')`.
    pub fn class_of(&self, a: ObjId, a2: ObjId, m: usize, x: usize) -> usize {
        self.composite.class_of(0, a, a2, m, x)
    }

    /// Least representative `(a', m, x)` of a class of `M~(F)(a)`.
    pub fn representative(&self, a: ObjId, class: usize) -> (ObjId, usize, usize) {
        self.composite.representative(0, a, class)
    }

    /// `M~(alpha) : M~(F) => M~(G)` for `alpha : F => G`, where `target` is
    /// `M~(G)`.
    pub fn map_nat(&self, alpha: &NatTrans, target: &Tensor) -> NatTrans {
        let base = self.copresheaf.base();
        NatTrans {
            components: (0..base.object_count())
                .map(|a| {
                    (0..self.copresheaf.at(a).len())
                        .map(|k| {
                            let (a2, m, x) = self.representative(a, k);
                            target.class_of(a, a2, m, alpha.apply(a2, x))
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// The map `M~(F) => F` induced by a morphism `M -> Hom`, given as
    /// `arrow_of(a', a, m)`.
    pub fn counit(&self, f: &Copresheaf, arrow_of: impl Fn(ObjId, ObjId, usize) -> ArrowId) -> NatTrans {
        let base = self.copresheaf.base();
        NatTrans {
            components: (0..base.object_count())
                .map(|a| {
                    (0..self.copresheaf.at(a).len())
                        .map(|k| {
                            let (a2, m, x) = self.representative(a, k);
                            f.act(arrow_of(a2, a, m), x)
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

fn point() -> Arc<FinCategory> {
    Arc::new(builtin(Builtin::Terminal, 0, &SizeGuard::default()).expect("terminal category"))
}

/// A copresheaf on `A` read as a profunctor `1 -/-> A`.
pub(crate) fn as_profunctor(f: &Copresheaf) -> Profunctor {
    let a = f.base().clone();
    Profunctor::from_actions(point(), a, f.sets().to_vec(), |_, _, x| x, |_, g, x| f.act(g, x))
        .expect("copresheaf as profunctor")
}

/// The cocontinuous functor on copresheaves induced by an endo-profunctor.
pub fn profunctor_to_functor(m: &Profunctor, f: &Copresheaf) -> Result<Tensor> {
    if **m.dom() != **m.cod() || **m.cod() != **f.base() {
        return Err(Error::InvalidProfunctor("profunctor and copresheaf live over different categories".into()));
    }
    let composite = compose_profunctors(&as_profunctor(f), m)?;
    let p = &composite.profunctor;
    let base = f.base().clone();
    let sets = (0..base.object_count()).map(|a| p.at(0, a).clone()).collect();
    let copresheaf = Copresheaf::from_fn(base, sets, |g, x| p.act_right(0, g, x))?;
    Ok(Tensor { copresheaf, composite })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::FinSet;
    use crate::poset::{poset_as_category, FinPoset, Order};
    use crate::presheaf::copresheaf_samples;

    #[test]
    fn hom_acts_as_identity() {
        let c = Arc::new(builtin(Builtin::Simplex, 1, &SizeGuard::default()).unwrap());
        let hom = Profunctor::hom(c.clone());
        for (_, f) in copresheaf_samples(&c) {
            let t = profunctor_to_functor(&hom, &f).unwrap();
            let eps = t.counit(&f, |a2, a, m| c.hom(a2, a)[m]);
            eps.check_copresheaf(&t.copresheaf, &f).unwrap();
            assert!(eps.is_bijective(f.sets()));
        }
    }

    #[test]
    fn order_profunctor_on_two_chain_glues_the_diagram() {
        let p = FinPoset::chain(2);
        let a = Arc::new(poset_as_category(&p, &SizeGuard::default()).unwrap());
        let le = Profunctor::from_relation(a.clone(), |x, y| p.leq(x, y)).unwrap();
        let f = Copresheaf::from_fn(a.clone(), vec![FinSet::singleton("x"), FinSet::singleton("y")], |_, _| 0).unwrap();
        let t = profunctor_to_functor(&le, &f).unwrap();
        assert_eq!(t.copresheaf.at(0).len(), 1);
        assert_eq!(t.copresheaf.at(1).len(), 1);
    }

    #[test]
    fn empty_input_gives_empty_output() {
        let c = Arc::new(builtin(Builtin::Globe, 1, &SizeGuard::default()).unwrap());
        let t = profunctor_to_functor(&Profunctor::hom(c.clone()), &Copresheaf::empty(c)).unwrap();
        assert!(t.copresheaf.is_empty());
    }
}
