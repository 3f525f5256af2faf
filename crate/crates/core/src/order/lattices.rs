use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::guard::SizeGuard;
use crate::poset::{FinPoset, MonotoneMap, Opposite, Order};

/// Subsets of a carrier of at most 64 elements, stored as bitmasks.
pub type Mask = u64;

pub(crate) fn check_width(n: usize) -> Result<()> {
    if n > 64 {
        return Err(Error::guard("poset elements for bitmask subsets", n as u128, 64u128));
    }
    Ok(())
}

pub(crate) fn full_mask(n: usize) -> Mask {
    if n == 64 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

/// Elements of `order` strictly or non-strictly below `x`, as a mask.
pub(crate) fn principal_down<P: Order + ?Sized>(order: &P, x: usize) -> Mask {
    (0..order.size()).filter(|&y| order.leq(y, x)).fold(0, |m, y| m | 1 << y)
}

#[cfg(test)]
pub(crate) fn is_down_closed<P: Order + ?Sized>(order: &P, m: Mask) -> bool {
    (0..order.size()).all(|x| m >> x & 1 == 0 || principal_down(order, x) & !m == 0)
}

/// Every down-closed subset, sorted by size then mask value.
pub fn down_sets<P: Order + ?Sized>(order: &P, guard: &SizeGuard) -> Result<Vec<Mask>> {
    let n = order.size();
    check_width(n)?;
    let below: Vec<Mask> = (0..n).map(|x| principal_down(order, x) & !(1 << x)).collect();
    // a linear extension: fewer elements below comes first
    let mut ext: Vec<usize> = (0..n).collect();
    ext.sort_by_key(|&x| below[x].count_ones());
    let mut out = Vec::new();
    let mut stack = vec![(0usize, 0 as Mask)];
    while let Some((i, m)) = stack.pop() {
        if i == n {
            out.push(m);
            if out.len() > guard.max_downsets {
                return Err(Error::guard("down-sets", out.len() as u128, guard.max_downsets as u128));
            }
            continue;
        }
        let x = ext[i];
        stack.push((i + 1, m));
        if below[x] & !m == 0 {
            stack.push((i + 1, m | 1 << x));
        }
    }
    out.sort_by_key(|&m| (m.count_ones(), m));
    Ok(out)
}

/// Every up-closed subset, sorted by size then mask value.
pub fn up_sets<P: Order + ?Sized>(order: &P, guard: &SizeGuard) -> Result<Vec<Mask>> {
    down_sets(&Opposite(order), guard)
}

/// A family of subsets of a labelled carrier, ordered by inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    carrier: Vec<String>,
    masks: Vec<Mask>,
    index: HashMap<Mask, usize>,
}

impl SetFamily {
    pub fn new(carrier: Vec<String>, masks: Vec<Mask>) -> Self {
        let index = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        SetFamily { carrier, masks, index }
    }

    pub fn masks(&self) -> &[Mask] {
        &self.masks
    }

    #[inline]
    pub fn mask(&self, i: usize) -> Mask {
        self.masks[i]
    }

    pub fn index_of(&self, m: Mask) -> Option<usize> {
        self.index.get(&m).copied()
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn describe(&self, m: Mask) -> String {
        let names: Vec<&str> = (0..self.carrier.len())
            .filter(|&i| m >> i & 1 == 1)
            .map(|i| self.carrier[i].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// Materializes the inclusion order as an explicit poset.
    pub fn to_poset(&self) -> FinPoset {
        FinPoset::from_order(self)
    }
}

impl Order for SetFamily {
    fn size(&self) -> usize {
        self.masks.len()
    }

    #[inline]
    fn leq(&self, a: usize, b: usize) -> bool {
        self.masks[a] & !self.masks[b] == 0
    }

    fn element_label(&self, i: usize) -> String {
        self.describe(self.masks[i])
    }
}

/// `Dn(P)` with the embedding `x |-> down(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DownSetLattice {
    pub base: FinPoset,
    pub sets: SetFamily,
    pub embedding: MonotoneMap,
}

impl DownSetLattice {
    pub fn new(base: &FinPoset, guard: &SizeGuard) -> Result<Self> {
        let sets = SetFamily::new(base.names().to_vec(), down_sets(base, guard)?);
        let embedding = (0..base.len())
            .map(|x| sets.index_of(principal_down(base, x)).expect("principal down-set is a down-set"))
            .collect();
        Ok(DownSetLattice {
            base: base.clone(),
            sets,
            embedding: MonotoneMap::from_vec(embedding),
        })
    }
}

/// `Idl(X)`: nonempty directed down-sets, with `x |-> down(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealCompletion {
    pub base: FinPoset,
    pub sets: SetFamily,
    pub embedding: MonotoneMap,
}

pub(crate) fn is_directed<P: Order + ?Sized>(order: &P, m: Mask) -> bool {
    let members: Vec<usize> = (0..order.size()).filter(|&x| m >> x & 1 == 1).collect();
    !members.is_empty()
        && members.iter().all(|&a| {
            members
                .iter()
                .all(|&b| members.iter().any(|&u| order.leq(a, u) && order.leq(b, u)))
        })
}

impl IdealCompletion {
    pub fn new(base: &FinPoset, guard: &SizeGuard) -> Result<Self> {
        let ideals: Vec<Mask> = down_sets(base, guard)?.into_iter().filter(|&m| is_directed(base, m)).collect();
        let sets = SetFamily::new(base.names().to_vec(), ideals);
        let embedding = (0..base.len())
            .map(|x| sets.index_of(principal_down(base, x)).expect("principal down-set is an ideal"))
            .collect();
        Ok(IdealCompletion {
            base: base.clone(),
            sets,
            embedding: MonotoneMap::from_vec(embedding),
        })
    }
}
