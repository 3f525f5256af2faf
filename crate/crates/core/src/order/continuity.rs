use super::adjoint::left_adjoint;
use super::lattices::{IdealCompletion, Mask};
use crate::error::Result;
use crate::guard::SizeGuard;
use crate::poset::{FinPoset, MonotoneMap, Order};

/// The way-below relation computed from its definition over all ideals:
/// `x << y` iff every ideal whose join dominates `y` contains `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WayBelow {
    n: usize,
    rel: Vec<bool>,
    /// `below[y]`: the set of `x` with `x << y`.
    pub below: Vec<Mask>,
}

impl WayBelow {
    #[inline]
    pub fn holds(&self, x: usize, y: usize) -> bool {
        self.rel[x * self.n + y]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `x << z << y` for some `z`, the least such `z` in element order.
    pub fn interpolant(&self, x: usize, y: usize) -> Option<usize> {
        (0..self.n).find(|&z| self.holds(x, z) && self.holds(z, y))
    }
}

fn ideal_join(p: &FinPoset, ideal: Mask) -> Option<usize> {
    let members: Vec<usize> = (0..p.len()).filter(|&x| ideal >> x & 1 == 1).collect();
    p.join_of(&members)
}

pub fn way_below(p: &FinPoset, guard: &SizeGuard) -> Result<WayBelow> {
    let idl = IdealCompletion::new(p, guard)?;
    let n = p.len();
    let joins: Vec<Option<usize>> = idl.sets.masks().iter().map(|&m| ideal_join(p, m)).collect();
    let mut rel = vec![false; n * n];
    let mut below = vec![0; n];
    for y in 0..n {
        for x in 0..n {
            let ok = idl
                .sets
                .masks()
                .iter()
                .zip(&joins)
                .all(|(&m, j)| !matches!(j, Some(j) if p.leq(y, *j)) || m >> x & 1 == 1);
            rel[x * n + y] = ok;
            if ok {
                below[y] |= 1 << x;
            }
        }
    }
    Ok(WayBelow { n, rel, below })
}

#[derive(Debug, Clone)]
pub struct ContinuityReport {
    pub ideals: IdealCompletion,
    /// `join : Idl(P) -> P`.
    pub join: Option<MonotoneMap>,
    /// `approx : P -> Idl(P)`, left adjoint of `join`.
    pub approximation: Option<MonotoneMap>,
    pub continuous: bool,
    /// Whether `approx(y)` equals the way-below set of `y` for every `y`.
    pub agrees_with_way_below: bool,
    pub witness: Option<String>,
}

pub fn continuity_check(p: &FinPoset, guard: &SizeGuard) -> Result<ContinuityReport> {
    let ideals = IdealCompletion::new(p, guard)?;
    let wb = way_below(p, guard)?;
    let mut report = ContinuityReport {
        ideals,
        join: None,
        approximation: None,
        continuous: false,
        agrees_with_way_below: false,
        witness: None,
    };
    let idl = &report.ideals;
    let join = match left_adjoint(&idl.embedding, p, &idl.sets) {
        Ok(j) => j,
        Err(e) => {
            report.witness = Some(format!("ideal {} has no join", idl.sets.describe(idl.sets.mask(e.element))));
            return Ok(report);
        }
    };
    let approx = match left_adjoint(&join, &idl.sets, p) {
        Ok(a) => a,
        Err(e) => {
            report.witness = Some(format!("no least ideal has join above {}", p.name(e.element)));
            report.join = Some(join);
            return Ok(report);
        }
    };
    report.continuous = true;
    report.agrees_with_way_below = (0..p.len()).all(|y| idl.sets.mask(approx.apply(y)) == wb.below[y]);
    if !report.agrees_with_way_below {
        report.witness = Some("approximating ideal differs from the way-below set".into());
    }
    report.join = Some(join);
    report.approximation = Some(approx);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> SizeGuard {
        SizeGuard::default()
    }

    #[test]
    fn way_below_is_order_on_finite_posets() {
        for p in [FinPoset::chain(2), FinPoset::chain(1), FinPoset::pentagon_n5(), FinPoset::antichain(&["a", "b"])] {
            let wb = way_below(&p, &g()).unwrap();
            for x in 0..p.len() {
                for y in 0..p.len() {
                    assert_eq!(wb.holds(x, y), p.leq(x, y));
                }
            }
        }
    }

    #[test]
    fn three_chain_approximates_top_by_its_principal_ideal() {
        let p = FinPoset::chain(3);
        let r = continuity_check(&p, &g()).unwrap();
        assert!(r.continuous && r.agrees_with_way_below);
        let a = r.approximation.unwrap();
        assert_eq!(r.ideals.sets.mask(a.apply(2)), 0b111);
    }

    #[test]
    fn empty_poset_is_vacuously_continuous() {
        let r = continuity_check(&FinPoset::empty(), &g()).unwrap();
        assert!(r.continuous && r.ideals.sets.is_empty());
    }
}
