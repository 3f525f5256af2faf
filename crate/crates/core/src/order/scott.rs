use serde::Serialize;

use super::ccd::{ccd_check, CcdSummary};
use super::lattices::{check_width, down_sets, is_directed, up_sets, Mask, SetFamily};
use crate::error::Result;
use crate::guard::SizeGuard;
use crate::poset::{FinPoset, Order};

/// The frame of Scott opens of a finite poset, ordered by inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScottOpens {
    pub opens: SetFamily,
    pub frame: FinPoset,
}

impl ScottOpens {
    pub fn top(&self) -> usize {
        self.opens.len() - 1
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.opens.index_of(self.opens.mask(a) & self.opens.mask(b)).expect("opens closed under intersection")
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.opens.index_of(self.opens.mask(a) | self.opens.mask(b)).expect("opens closed under union")
    }
}

/// Up-sets that are inaccessible by directed joins: whenever an ideal's join
/// lies in `U`, the ideal meets `U`.
pub fn scott_opens(p: &FinPoset, guard: &SizeGuard) -> Result<ScottOpens> {
    let ideals: Vec<Mask> = down_sets(p, guard)?.into_iter().filter(|&m| is_directed(p, m)).collect();
    let joins: Vec<Option<usize>> = ideals
        .iter()
        .map(|&m| p.join_of(&(0..p.len()).filter(|&x| m >> x & 1 == 1).collect::<Vec<_>>()))
        .collect();
    let opens: Vec<Mask> = up_sets(p, guard)?
        .into_iter()
        .filter(|&u| {
            ideals
                .iter()
                .zip(&joins)
                .all(|(&i, j)| !matches!(j, Some(j) if u >> j & 1 == 1) || i & u != 0)
        })
        .collect();
    let opens = SetFamily::new(p.names().to_vec(), opens);
    let frame = opens.to_poset();
    Ok(ScottOpens { opens, frame })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub opens: usize,
    pub opens_ccd: CcdSummary,
    /// Completely prime filters of the frame, each described by its opens.
    pub points: Vec<String>,
    pub points_isomorphic: bool,
    pub counterexample: Option<String>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.opens_ccd.ccd && self.points_isomorphic
    }
}

/// Frame points as maps `opens -> 2` preserving finite meets and all joins,
/// compared with the input under the pointwise order.
pub fn duality_check(p: &FinPoset, guard: &SizeGuard) -> Result<DualityReport> {
    let so = scott_opens(p, guard)?;
    let opens_ccd = ccd_check(&so.frame, guard)?.summary();
    let k = so.opens.len();
    check_width(k)?;
    // a point is the set of opens sent to 1: an up-set of the frame
    let candidates = up_sets(&so.opens, guard)?;
    let mut points = Vec::new();
    for &f in &candidates {
        let has = |i: usize| f >> i & 1 == 1;
        let ok = has(so.top())
            && !has(so.bottom())
            && (0..k).all(|a| (0..k).all(|b| !(has(a) && has(b)) || has(so.meet(a, b))))
            && (0..k).all(|a| (0..k).all(|b| !has(so.join(a, b)) || has(a) || has(b)));
        if ok {
            points.push(f);
        }
    }
    let family = SetFamily::new(so.opens.masks().iter().map(|&m| so.opens.describe(m)).collect(), points.clone());
    // canonical comparison: x |-> { U : x in U }
    let neighbourhoods: Vec<Mask> = (0..p.len())
        .map(|x| (0..k).filter(|&i| so.opens.mask(i) >> x & 1 == 1).fold(0, |m, i| m | 1 << i))
        .collect();
    let mut counterexample = None;
    let images: Vec<Option<usize>> = neighbourhoods.iter().map(|&m| family.index_of(m)).collect();
    if let Some(x) = images.iter().position(Option::is_none) {
        counterexample = Some(format!("open neighbourhoods of {} do not form a point", p.name(x)));
    } else if points.len() != p.len() {
        counterexample = Some(format!("{} points for {} elements", points.len(), p.len()));
    } else {
        'outer: for x in 0..p.len() {
            for y in 0..p.len() {
                let (a, b) = (images[x].unwrap(), images[y].unwrap());
                if family.leq(a, b) != p.leq(x, y) {
                    counterexample = Some(format!("order of points differs at {} and {}", p.name(x), p.name(y)));
                    break 'outer;
                }
            }
        }
    }
    Ok(DualityReport {
        opens: k,
        opens_ccd,
        points: points.iter().map(|&m| family.describe(m)).collect(),
        points_isomorphic: counterexample.is_none(),
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> SizeGuard {
        SizeGuard::default()
    }

    #[test]
    fn opens_of_small_posets() {
        let single = scott_opens(&FinPoset::chain(1), &g()).unwrap();
        assert_eq!(single.opens.len(), 2);
        let anti = scott_opens(&FinPoset::antichain(&["a", "b"]), &g()).unwrap();
        assert_eq!(anti.opens.len(), 4);
        assert_eq!(anti.frame.covers().len(), 4);
        let chain = scott_opens(&FinPoset::chain(2), &g()).unwrap();
        assert_eq!(chain.opens.len(), 3);
        assert_eq!(chain.frame.covers().len(), 2);
    }

    #[test]
    fn duality_on_small_posets() {
        for p in [FinPoset::chain(2), FinPoset::antichain(&["a", "b"]), FinPoset::pentagon_n5()] {
            let r = duality_check(&p, &g()).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.points.len(), p.len());
        }
    }

    #[test]
    fn empty_poset_has_one_open_and_no_points() {
        let r = duality_check(&FinPoset::empty(), &g()).unwrap();
        assert_eq!(r.opens, 1);
        assert!(r.points.is_empty());
        assert!(r.points_isomorphic);
    }
}
