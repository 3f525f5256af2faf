use std::fmt;

use crate::poset::{least_of, MonotoneMap, Opposite, Order};

/// An element of the codomain whose candidate set has no minimum, or at
/// which the adjunction inequalities fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoAdjoint {
    pub element: usize,
}

impl fmt::Display for NoAdjoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no adjoint value at element {}", self.element)
    }
}

/// The left adjoint `g` of `f : P -> Q`, `g(x) = min { y : x <= f(y) }`,
/// checked against `g(f(y)) <= y` and `x <= f(g(x))` before returning.
pub fn left_adjoint<P: Order + ?Sized, Q: Order + ?Sized>(f: &MonotoneMap, dom: &P, cod: &Q) -> Result<MonotoneMap, NoAdjoint> {
    let n = dom.size();
    let mut g = Vec::with_capacity(cod.size());
    let mut candidates = Vec::with_capacity(n);
    for x in 0..cod.size() {
        candidates.clear();
        candidates.extend((0..n).filter(|&y| cod.leq(x, f.apply(y))));
        match least_of(dom, &candidates) {
            Some(y) => g.push(y),
            None => return Err(NoAdjoint { element: x }),
        }
    }
    for (x, &gx) in g.iter().enumerate() {
        if !cod.leq(x, f.apply(gx)) {
            return Err(NoAdjoint { element: x });
        }
    }
    for y in 0..n {
        if !dom.leq(g[f.apply(y)], y) {
            return Err(NoAdjoint { element: f.apply(y) });
        }
    }
    Ok(MonotoneMap::from_vec(g))
}

/// The right adjoint `h` of `f : P -> Q`, `h(x) = max { y : f(y) <= x }`.
pub fn right_adjoint<P: Order + ?Sized, Q: Order + ?Sized>(f: &MonotoneMap, dom: &P, cod: &Q) -> Result<MonotoneMap, NoAdjoint> {
    left_adjoint(f, &Opposite(dom), &Opposite(cod))
}

/// `g -| f` as the pointwise equivalence `g(x) <= y  iff  x <= f(y)`.
/// Returns the first failing pair `(x, y)`.
pub fn adjunction_witness<P: Order + ?Sized, Q: Order + ?Sized>(
    g: &MonotoneMap,
    f: &MonotoneMap,
    p: &P,
    q: &Q,
) -> Option<(usize, usize)> {
    for x in 0..q.size() {
        for y in 0..p.size() {
            if p.leq(g.apply(x), y) != q.leq(x, f.apply(y)) {
                return Some((x, y));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::guard::SizeGuard;
    use crate::order::DownSetLattice;
    use crate::poset::FinPoset;

    #[test]
    fn identity_is_self_adjoint() {
        let p = FinPoset::pentagon_n5();
        let id = MonotoneMap::identity(p.len());
        assert_eq!(left_adjoint(&id, &p, &p).unwrap(), id);
        assert_eq!(right_adjoint(&id, &p, &p).unwrap(), id);
    }

    #[test]
    fn left_adjoint_of_principal_down_set_is_join() {
        let p = FinPoset::boolean_square();
        let dn = DownSetLattice::new(&p, &SizeGuard::default()).unwrap();
        let join = left_adjoint(&dn.embedding, &p, &dn.sets).unwrap();
        for d in 0..dn.sets.len() {
            let members: Vec<usize> = (0..p.len()).filter(|&x| dn.sets.mask(d) >> x & 1 == 1).collect();
            assert_eq!(Some(join.apply(d)), p.join_of(&members));
        }
        assert_eq!(adjunction_witness(&join, &dn.embedding, &p, &dn.sets), None);
    }

    #[test]
    fn join_on_m3_has_no_left_adjoint() {
        let p = FinPoset::diamond_m3();
        let dn = DownSetLattice::new(&p, &SizeGuard::default()).unwrap();
        let join = left_adjoint(&dn.embedding, &p, &dn.sets).unwrap();
        let err = left_adjoint(&join, &dn.sets, &p).unwrap_err();
        assert_eq!(p.name(err.element), "1");
    }

    #[test]
    fn constant_map_into_chain_has_adjoints_at_extremes() {
        let two = FinPoset::chain(2);
        let one = FinPoset::chain(1);
        let bang = MonotoneMap::new(&two, &one, vec![0, 0]).unwrap();
        assert_eq!(left_adjoint(&bang, &two, &one).unwrap().as_slice(), &[0]);
        assert_eq!(right_adjoint(&bang, &two, &one).unwrap().as_slice(), &[1]);
    }
}
