use std::collections::BTreeSet;

use super::witness::AdjointTripleWitness;
use crate::error::Result;
use crate::poset::{FinPoset, Order};

/// A category presented through finite hom-sets.
pub trait HomCategory {
    type Obj;
    type Mor: Clone + PartialEq;

    fn hom(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<Self::Mor>>;
    /// `g . f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
}

type Map<'a, X, Y> = Box<dyn Fn(&X) -> Result<Y> + 'a>;
type MorMap<'a, O, M, N> = Box<dyn Fn(&O, &O, &M) -> Result<N> + 'a>;

/// A coreflective embedding `i -| r` of `A` into `B` whose comonad `ir`
/// has a further right adjoint `n`, given by its data on objects and
/// arrows together with the two structure maps.
pub struct ComonadData<'a, A: HomCategory, B: HomCategory> {
    pub small: &'a A,
    pub large: &'a B,
    pub i_obj: Map<'a, A::Obj, B::Obj>,
    pub i_mor: MorMap<'a, A::Obj, A::Mor, B::Mor>,
    pub r_obj: Map<'a, B::Obj, A::Obj>,
    /// `i r b -> b`.
    pub counit: Map<'a, B::Obj, B::Mor>,
    pub n_obj: Map<'a, B::Obj, B::Obj>,
    pub n_mor: MorMap<'a, B::Obj, B::Mor, B::Mor>,
    /// `b -> n(i r b)`.
    pub unit: Map<'a, B::Obj, B::Mor>,
    pub small_samples: Vec<(String, A::Obj)>,
    pub large_samples: Vec<(String, B::Obj)>,
}

fn bijective<M: PartialEq>(images: &[M], target: &[M]) -> bool {
    if images.len() != target.len() {
        return false;
    }
    let mut seen = BTreeSet::new();
    images.iter().all(|m| match target.iter().position(|t| t == m) {
        Some(k) => seen.insert(k),
        None => false,
    })
}

/// Checks that `r` has the right adjoint `s = n . i`, through the bijection
/// `Hom(r b, a) -> Hom(b, n i a)`, `phi |-> n(i phi) . eta_b`. Also checks
/// the hypotheses: `i` is fully faithful, `i -| r` and `ir -| n` on the
/// samples.
pub fn triple_from_comonad<A: HomCategory, B: HomCategory>(data: &ComonadData<'_, A, B>) -> Result<AdjointTripleWitness> {
    let (sa, sb) = (data.small, data.large);
    let mut w = AdjointTripleWitness::default();
    for (an, a) in &data.small_samples {
        for (an2, a2) in &data.small_samples {
            let (ia, ia2) = ((data.i_obj)(a)?, (data.i_obj)(a2)?);
            let source = sa.hom(a, a2)?;
            let target = sb.hom(&ia, &ia2)?;
            let images: Vec<B::Mor> = source.iter().map(|f| (data.i_mor)(a, a2, f)).collect::<Result<_>>()?;
            w.log(format!("{an} | {an2}"), "i fully faithful", source.len(), target.len(), bijective(&images, &target));
        }
    }
    for (bn, b) in &data.large_samples {
        let rb = (data.r_obj)(b)?;
        let irb = (data.i_obj)(&rb)?;
        let eps = (data.counit)(b)?;
        let eta = (data.unit)(b)?;
        for (an, a) in &data.small_samples {
            let ia = (data.i_obj)(a)?;
            // i -| r
            let source = sa.hom(a, &rb)?;
            let target = sb.hom(&ia, b)?;
            let images: Vec<B::Mor> = source
                .iter()
                .map(|psi| Ok(sb.compose(&eps, &(data.i_mor)(a, &rb, psi)?)))
                .collect::<Result<_>>()?;
            w.log(format!("{an} | {bn}"), "i -| r", source.len(), target.len(), bijective(&images, &target));
            // r -| n i
            let nia = (data.n_obj)(&ia)?;
            let source = sa.hom(&rb, a)?;
            let target = sb.hom(b, &nia)?;
            let images: Vec<B::Mor> = source
                .iter()
                .map(|phi| {
                    let iphi = (data.i_mor)(&rb, a, phi)?;
                    Ok(sb.compose(&(data.n_mor)(&irb, &ia, &iphi)?, &eta))
                })
                .collect::<Result<_>>()?;
            w.log(format!("{bn} | {an}"), "r -| n i", source.len(), target.len(), bijective(&images, &target));
        }
        // ir -| n
        for (bn2, b2) in &data.large_samples {
            let nb2 = (data.n_obj)(b2)?;
            let source = sb.hom(&irb, b2)?;
            let target = sb.hom(b, &nb2)?;
            let images: Vec<B::Mor> = source
                .iter()
                .map(|chi| Ok(sb.compose(&(data.n_mor)(&irb, b2, chi)?, &eta)))
                .collect::<Result<_>>()?;
            w.log(format!("{bn} | {bn2}"), "ir -| n", source.len(), target.len(), bijective(&images, &target));
        }
    }
    Ok(w.sorted())
}

/// A finite poset as a thin category.
#[derive(Debug, Clone, Copy)]
pub struct PosetHoms<'a>(pub &'a FinPoset);

impl HomCategory for PosetHoms<'_> {
    type Obj = usize;
    type Mor = (usize, usize);

    fn hom(&self, a: &usize, b: &usize) -> Result<Vec<(usize, usize)>> {
        Ok(if self.0.leq(*a, *b) { vec![(*a, *b)] } else { Vec::new() })
    }

    fn compose(&self, g: &(usize, usize), f: &(usize, usize)) -> (usize, usize) {
        (f.0, g.1)
    }

    fn identity(&self, a: &usize) -> (usize, usize) {
        (*a, *a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::right_adjoint;
    use crate::poset::MonotoneMap;

    fn named(n: usize) -> Vec<(String, usize)> {
        (0..n).map(|k| (k.to_string(), k)).collect()
    }

    fn poset_data<'a>(a: &'a PosetHoms<'a>, b: &'a PosetHoms<'a>, i: &'a [usize], r: &'a [usize], n: &'a [usize]) -> ComonadData<'a, PosetHoms<'a>, PosetHoms<'a>> {
        ComonadData {
            small: a,
            large: b,
            i_obj: Box::new(move |x| Ok(i[*x])),
            i_mor: Box::new(move |x, y, _| Ok((i[*x], i[*y]))),
            r_obj: Box::new(move |x| Ok(r[*x])),
            counit: Box::new(move |x| Ok((i[r[*x]], *x))),
            n_obj: Box::new(move |x| Ok(n[*x])),
            n_mor: Box::new(move |x, y, _| Ok((n[*x], n[*y]))),
            unit: Box::new(move |x| Ok((*x, n[i[r[*x]]]))),
            small_samples: named(a.0.len()),
            large_samples: named(b.0.len()),
        }
    }

    #[test]
    fn chain_retract_yields_right_adjoint() {
        let (two, three) = (FinPoset::chain(2), FinPoset::chain(3));
        let (a, b) = (PosetHoms(&two), PosetHoms(&three));
        let (i, r, n) = ([0, 1], [0, 1, 1], [0, 2, 2]);
        let w = triple_from_comonad(&poset_data(&a, &b, &i, &r, &n)).unwrap();
        w.ensure().unwrap();
        let s: Vec<usize> = i.iter().map(|&x| n[x]).collect();
        let expected = right_adjoint(&MonotoneMap::new(&three, &two, r.to_vec()).unwrap(), &three, &two).unwrap();
        assert_eq!(s, expected.as_slice());
    }

    #[test]
    fn wrong_n_is_caught() {
        let (two, three) = (FinPoset::chain(2), FinPoset::chain(3));
        let (a, b) = (PosetHoms(&two), PosetHoms(&three));
        let (i, r, n) = ([0, 1], [0, 1, 1], [0, 1, 2]);
        let w = triple_from_comonad(&poset_data(&a, &b, &i, &r, &n)).unwrap();
        assert!(!w.passed());
        assert!(w.failures().any(|f| f.check == "ir -| n"));
    }

    #[test]
    fn non_embedding_is_caught() {
        let (one, two) = (FinPoset::chain(1), FinPoset::chain(2));
        let (a, b) = (PosetHoms(&two), PosetHoms(&one));
        let (i, r, n) = ([0, 0], [1], [0]);
        let w = triple_from_comonad(&poset_data(&a, &b, &i, &r, &n)).unwrap();
        assert!(w.failures().any(|f| f.check == "i fully faithful"));
    }
}
