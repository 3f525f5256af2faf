//! Kan extensions and adjoint triples on presheaf categories, with large
//! objects handled through formal colimits of big-representables.

mod comonad;
mod formal;
mod witness;

use std::sync::Arc;

pub use comonad::{triple_from_comonad, ComonadData, HomCategory, PosetHoms};
pub use formal::{
    big_hom, big_identity, colimit, colimit_map, compose_big, lan_along_yoneda, lan_map, transpose_to_lan, transpose_to_representable,
    BigHom, FormalColimit, PointwiseColimit,
};
pub use witness::{td_witness, td_witness_on, AdjointTripleWitness, CheckRecord, ShadowCheck};

use crate::category::{FinCategory, FinFunctor, FinSet};
use crate::error::{Error, Result};
use crate::guard::SizeGuard;
use crate::presheaf::{nat_trans_set, position, same_base, yoneda, NatTrans, Presheaf};

/// Precomposition with `i : G -> E`: `F |-> F . i^op`.
pub fn restrict(i: &FinFunctor, f: &Presheaf) -> Result<Presheaf> {
    same_base(i.cod(), f.base())?;
    let g = i.dom();
    let sets = (0..g.object_count()).map(|o| f.at(i.on_object(o)).clone()).collect();
    Presheaf::from_fn(g.clone(), sets, |a, x| f.act(i.on_arrow(a), x))
}

/// Right Kan extension along a fully faithful `i`, with its counit.
#[derive(Debug, Clone)]
pub struct RightExtension {
    pub presheaf: Presheaf,
    /// `restrict(ran P) -> P`, evaluation at identities.
    pub counit: NatTrans,
    pub counit_is_iso: bool,
}

/// `(ran P)(e) = Nat(restrict(i, ê), P)`.
pub fn ran(i: &FinFunctor, p: &Presheaf, guard: &SizeGuard) -> Result<RightExtension> {
    i.check_fully_faithful()?;
    same_base(i.dom(), p.base())?;
    let e_cat: &Arc<FinCategory> = i.cod();
    let restricted: Vec<Presheaf> = (0..e_cat.object_count())
        .map(|e| restrict(i, &yoneda(e_cat, e)))
        .collect::<Result<_>>()?;
    let values: Vec<Vec<NatTrans>> = restricted.iter().map(|r| nat_trans_set(r, p, guard)).collect::<Result<_>>()?;
    let sets = values
        .iter()
        .map(|v| FinSet::from_labels_unchecked((0..v.len()).map(|k| format!("n{k}")).collect()))
        .collect();
    let g = i.dom();
    // u : e' -> e acts by precomposing with i*(y(u)) : i*ê' -> i*ê
    let presheaf = Presheaf::from_fn(e_cat.clone(), sets, |u, k| {
        let (e2, e) = (e_cat.src(u), e_cat.tgt(u));
        let pre = NatTrans {
            components: (0..g.object_count())
                .map(|o| {
                    let io = i.on_object(o);
                    e_cat.hom(io, e2).iter().map(|&h| position(e_cat.hom(io, e), e_cat.comp(u, h))).collect()
                })
                .collect(),
        };
        let moved = pre.then(&values[e][k]);
        values[e2].binary_search(&moved).expect("precomposite is natural")
    })?;
    let counit = NatTrans {
        components: (0..g.object_count())
            .map(|o| {
                let io = i.on_object(o);
                let id_pos = position(e_cat.hom(io, io), e_cat.identity(io));
                values[io].iter().map(|alpha| alpha.apply(o, id_pos)).collect()
            })
            .collect(),
    };
    let back = restrict(i, &presheaf)?;
    counit.check_presheaf(&back, p)?;
    let counit_is_iso = counit.is_bijective(p.sets());
    if !counit_is_iso {
        return Err(Error::VerificationFailure {
            sample: "ran".into(),
            detail: "counit of the right extension is not invertible".into(),
        });
    }
    Ok(RightExtension {
        presheaf,
        counit,
        counit_is_iso,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{builtin, full_subcategory, Builtin};
    use crate::presheaf::presheaf_samples;

    fn g() -> SizeGuard {
        SizeGuard::default()
    }

    fn cat(kind: Builtin, n: usize) -> Arc<FinCategory> {
        Arc::new(builtin(kind, n, &g()).unwrap())
    }

    #[test]
    fn restrict_along_identity() {
        let c = cat(Builtin::Simplex, 1);
        let id = FinFunctor::identity(c.clone());
        for (_, f) in presheaf_samples(&c) {
            assert_eq!(restrict(&id, &f).unwrap(), f);
        }
    }

    #[test]
    fn restrict_middle_representable_to_ends() {
        let c = cat(Builtin::Chain, 2);
        let (_, i) = full_subcategory(&c, &[0, 2], &g()).unwrap();
        let r = restrict(&i, &yoneda(&c, 1)).unwrap();
        assert_eq!(r.at(0).len(), 1);
        assert_eq!(r.at(1).len(), 0);
    }

    #[test]
    fn ran_along_identity_is_identity() {
        let c = cat(Builtin::WalkingArrow, 0);
        let id = FinFunctor::identity(c.clone());
        for (_, p) in presheaf_samples(&c) {
            let r = ran(&id, &p, &g()).unwrap();
            assert_eq!(r.presheaf.sets().iter().map(FinSet::len).collect::<Vec<_>>(), p.sets().iter().map(FinSet::len).collect::<Vec<_>>());
            assert!(r.counit_is_iso);
        }
    }

    #[test]
    fn ran_from_source_of_walking_arrow() {
        let c = cat(Builtin::WalkingArrow, 0);
        let (sub, i) = full_subcategory(&c, &[0], &g()).unwrap();
        let one = Presheaf::terminal(sub.clone());
        let r = ran(&i, &one, &g()).unwrap();
        assert!(r.presheaf.sets().iter().all(|s| s.len() == 1));
        let empty = ran(&i, &Presheaf::empty(sub), &g()).unwrap();
        // the source maps to both objects
        assert!(empty.presheaf.is_empty());
    }

    #[test]
    fn ran_rejects_non_full_functor() {
        let c = cat(Builtin::WalkingArrow, 0);
        let d = cat(Builtin::Discrete, 2);
        let i = FinFunctor::new(d.clone(), c.clone(), vec![0, 1], vec![c.identity(0), c.identity(1)]).unwrap();
        assert!(matches!(ran(&i, &Presheaf::terminal(d), &g()), Err(Error::NotFullyFaithful(_))));
    }
}
