use serde::Serialize;

use super::adjoint::{adjunction_witness, left_adjoint};
use super::ccd::{ccd_check, CcdSummary};
use super::lattices::{DownSetLattice, Mask};
use crate::error::{Error, Result};
use crate::guard::SizeGuard;
use crate::poset::{FinPoset, MonotoneMap, Order};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub source: CcdSummary,
    pub target: CcdSummary,
    /// `source ccd  =>  target ccd`.
    pub implication_holds: bool,
}

fn check_adjoint(name: &str, left: &MonotoneMap, right: &MonotoneMap, p: &FinPoset, q: &FinPoset) -> Result<()> {
    // left : Q -> P, right : P -> Q
    if let Some((x, y)) = adjunction_witness(left, right, p, q) {
        return Err(Error::AdjunctionViolation(format!(
            "{name}: {} <= {} and {} <= {} disagree",
            p.name(left.apply(x)),
            p.name(y),
            q.name(x),
            q.name(right.apply(y))
        )));
    }
    Ok(())
}

fn check_maps(f: &MonotoneMap, dom: &FinPoset, cod: &FinPoset, name: &str) -> Result<()> {
    if f.len() != dom.len() || f.as_slice().iter().any(|&v| v >= cod.len()) {
        return Err(Error::NotMonotone(format!("{name} has the wrong shape")));
    }
    if let Some((a, b)) = f.monotonicity_witness(dom, cod) {
        return Err(Error::NotMonotone(format!("{name}: {} <= {}", dom.name(a), dom.name(b))));
    }
    Ok(())
}

/// For `q -| r -| s` with `q, s : D -> E` order-embeddings and `r : E -> D`,
/// checks that total distributivity of `E` passes to `D`.
pub fn transfer_ccd(
    d: &FinPoset,
    e: &FinPoset,
    q: &MonotoneMap,
    r: &MonotoneMap,
    s: &MonotoneMap,
    guard: &SizeGuard,
) -> Result<TransferReport> {
    check_maps(q, d, e, "q")?;
    check_maps(r, e, d, "r")?;
    check_maps(s, d, e, "s")?;
    check_adjoint("q -| r", q, r, e, d)?;
    check_adjoint("r -| s", r, s, d, e)?;
    for (f, name) in [(q, "q"), (s, "s")] {
        if !f.is_order_embedding(d, e) {
            return Err(Error::NotFullyFaithful(format!("{name} is not an order-embedding")));
        }
    }
    let source = ccd_check(e, guard)?.summary();
    let target = ccd_check(d, guard)?.summary();
    Ok(TransferReport {
        implication_holds: !source.ccd || target.ccd,
        source,
        target,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorReport {
    pub generators: Vec<String>,
    /// `c'` is defined: every down-set of generators has a join.
    pub join_defined: bool,
    /// `c' -| y'` holds everywhere.
    pub join_left_adjoint: bool,
    /// `t'` exists as the left adjoint of `c'`.
    pub left_adjoint_exists: bool,
    pub ccd: bool,
    /// When `t'` exists and the poset is ccd: `t'(v)` equals the totally
    /// below set of `v` restricted to the generators.
    pub matches_totally_below: Option<bool>,
    pub witness: Option<String>,
}

impl GeneratorReport {
    /// `c' -| y'` and (`t'` exists iff ccd), with agreement when both exist.
    pub fn passed(&self) -> bool {
        self.join_left_adjoint && self.left_adjoint_exists == self.ccd && self.matches_totally_below != Some(false)
    }
}

/// Restriction of the down-set triple to a join-dense subset `G` of `E`:
/// `y'(v) = down(v) ∩ G`, `c'(D) = join D`, `t'` the left adjoint of `c'`.
pub fn generator_restriction(e: &FinPoset, gens: &[usize], guard: &SizeGuard) -> Result<GeneratorReport> {
    let mut sorted = gens.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != gens.len() || sorted.iter().any(|&g| g >= e.len()) {
        return Err(Error::InvalidPoset("generators must be distinct elements".into()));
    }
    let below_in_g = |v: usize| -> Vec<usize> { gens.iter().copied().filter(|&g| e.leq(g, v)).collect() };
    for v in 0..e.len() {
        if e.join_of(&below_in_g(v)) != Some(v) {
            return Err(Error::NotJoinDense {
                element: e.name(v).to_string(),
            });
        }
    }
    let g_poset = e.subposet(gens);
    let dn = DownSetLattice::new(&g_poset, guard)?;
    let y: Vec<usize> = (0..e.len())
        .map(|v| {
            let m = (0..gens.len()).filter(|&i| e.leq(gens[i], v)).fold(0 as Mask, |m, i| m | 1 << i);
            dn.sets.index_of(m).expect("generators below an element form a down-set")
        })
        .collect();
    let y = MonotoneMap::from_vec(y);
    let mut report = GeneratorReport {
        generators: gens.iter().map(|&g| e.name(g).to_string()).collect(),
        join_defined: false,
        join_left_adjoint: false,
        left_adjoint_exists: false,
        ccd: false,
        matches_totally_below: None,
        witness: None,
    };
    let ccd = ccd_check(e, guard)?;
    report.ccd = ccd.ccd;
    let mut c = Vec::with_capacity(dn.sets.len());
    for &m in dn.sets.masks() {
        let members: Vec<usize> = (0..gens.len()).filter(|&i| m >> i & 1 == 1).map(|i| gens[i]).collect();
        match e.join_of(&members) {
            Some(j) => c.push(j),
            None => {
                report.witness = Some(format!("{} has no join", dn.sets.describe(m)));
                return Ok(report);
            }
        }
    }
    report.join_defined = true;
    let c = MonotoneMap::from_vec(c);
    report.join_left_adjoint = adjunction_witness(&c, &y, e, &dn.sets).is_none();
    match left_adjoint(&c, &dn.sets, e) {
        Ok(t) => {
            report.left_adjoint_exists = true;
            if let Some(tb) = &ccd.totally_below {
                let agree = (0..e.len()).all(|v| {
                    let full = ccd.down_sets.sets.mask(tb.apply(v));
                    let restricted = (0..gens.len()).filter(|&i| full >> gens[i] & 1 == 1).fold(0 as Mask, |m, i| m | 1 << i);
                    dn.sets.mask(t.apply(v)) == restricted
                });
                report.matches_totally_below = Some(agree);
            }
        }
        Err(err) => {
            report.witness = Some(format!("no least generator down-set has join above {}", e.name(err.element)));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> SizeGuard {
        SizeGuard::default()
    }

    #[test]
    fn identity_triple_transfers() {
        let p = FinPoset::chain(3);
        let id = MonotoneMap::identity(3);
        let r = transfer_ccd(&p, &p, &id, &id, &id, &g()).unwrap();
        assert!(r.implication_holds && r.target.ccd);
    }

    #[test]
    fn two_chain_retract_of_three_chain() {
        let d = FinPoset::chain(2);
        let e = FinPoset::chain(3);
        let q = MonotoneMap::new(&d, &e, vec![0, 1]).unwrap();
        let r = MonotoneMap::new(&e, &d, vec![0, 1, 1]).unwrap();
        let s = MonotoneMap::new(&d, &e, vec![0, 2]).unwrap();
        let rep = transfer_ccd(&d, &e, &q, &r, &s, &g()).unwrap();
        assert!(rep.target.ccd && rep.implication_holds);
    }

    #[test]
    fn broken_adjunction_is_reported() {
        let d = FinPoset::chain(2);
        let e = FinPoset::chain(3);
        let q = MonotoneMap::new(&d, &e, vec![0, 2]).unwrap();
        let r = MonotoneMap::new(&e, &d, vec![0, 1, 1]).unwrap();
        let s = MonotoneMap::new(&d, &e, vec![0, 2]).unwrap();
        assert!(matches!(transfer_ccd(&d, &e, &q, &r, &s, &g()), Err(Error::AdjunctionViolation(_))));
    }

    #[test]
    fn whole_poset_as_generators() {
        let e = FinPoset::boolean_square();
        let all: Vec<usize> = (0..e.len()).collect();
        let r = generator_restriction(&e, &all, &g()).unwrap();
        assert!(r.passed() && r.left_adjoint_exists && r.matches_totally_below == Some(true));
    }

    #[test]
    fn boolean_square_with_atoms_and_bottom() {
        let e = FinPoset::boolean_square();
        let gens: Vec<usize> = ["0", "a", "b"].iter().map(|n| e.index_of(n).unwrap()).collect();
        let r = generator_restriction(&e, &gens, &g()).unwrap();
        assert!(r.join_left_adjoint && r.left_adjoint_exists && r.passed());
    }

    #[test]
    fn m3_has_no_restricted_left_adjoint() {
        let e = FinPoset::diamond_m3();
        let gens: Vec<usize> = ["0", "a", "b", "c"].iter().map(|n| e.index_of(n).unwrap()).collect();
        let r = generator_restriction(&e, &gens, &g()).unwrap();
        assert!(r.join_left_adjoint && !r.left_adjoint_exists && r.passed());
    }

    #[test]
    fn non_dense_subset_is_rejected() {
        let e = FinPoset::chain(3);
        assert!(matches!(generator_restriction(&e, &[0, 2], &g()), Err(Error::NotJoinDense { .. })));
    }
}
