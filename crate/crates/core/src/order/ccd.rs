use serde::Serialize;

use super::adjoint::left_adjoint;
use super::lattices::{full_mask, DownSetLattice, Mask};
use crate::error::{Error, Result};
use crate::guard::SizeGuard;
use crate::poset::{FinPoset, MonotoneMap, Order};

/// Outcome of searching for `tb -| join -| down` on `Dn(P)`.
#[derive(Debug, Clone)]
pub struct CcdReport {
    pub down_sets: DownSetLattice,
    pub complete: bool,
    /// `join : Dn(P) -> P`, left adjoint of the principal down-set map.
    pub join: Option<MonotoneMap>,
    /// `tb : P -> Dn(P)`, left adjoint of `join`.
    pub totally_below: Option<MonotoneMap>,
    pub ccd: bool,
    pub lex_ccd: bool,
    pub witness: Option<String>,
}

impl CcdReport {
    /// The down-set of elements totally below `v`.
    pub fn totally_below_set(&self, v: usize) -> Option<Mask> {
        self.totally_below.as_ref().map(|tb| self.down_sets.sets.mask(tb.apply(v)))
    }

    pub fn summary(&self) -> CcdSummary {
        CcdSummary {
            complete: self.complete,
            ccd: self.ccd,
            lex_ccd: self.lex_ccd,
            witness: self.witness.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CcdSummary {
    pub complete: bool,
    pub ccd: bool,
    pub lex_ccd: bool,
    pub witness: Option<String>,
}

pub fn ccd_check(p: &FinPoset, guard: &SizeGuard) -> Result<CcdReport> {
    let dn = DownSetLattice::new(p, guard)?;
    let mut report = CcdReport {
        down_sets: dn,
        complete: false,
        join: None,
        totally_below: None,
        ccd: false,
        lex_ccd: false,
        witness: None,
    };
    let dn = &report.down_sets;
    let join = match left_adjoint(&dn.embedding, p, &dn.sets) {
        Ok(j) => j,
        Err(e) => {
            report.witness = Some(format!("down-set {} has no join", dn.sets.element_label(e.element)));
            return Ok(report);
        }
    };
    report.complete = true;
    let tb = match left_adjoint(&join, &dn.sets, p) {
        Ok(t) => t,
        Err(e) => {
            report.witness = Some(format!(
                "no least down-set has join above {}",
                p.name(e.element)
            ));
            report.join = Some(join);
            return Ok(report);
        }
    };
    report.ccd = true;
    report.lex_ccd = match lex_witness(p, &dn.sets.masks().to_vec(), &tb) {
        None => true,
        Some(w) => {
            report.witness = Some(w);
            false
        }
    };
    report.join = Some(join);
    report.totally_below = Some(tb);
    Ok(report)
}

/// Whether `tb` preserves binary meets and the empty meet (the top).
fn lex_witness(p: &FinPoset, masks: &[Mask], tb: &MonotoneMap) -> Option<String> {
    let top = p.top()?;
    if masks[tb.apply(top)] != full_mask(p.len()) {
        return Some(format!("totally-below set of the top {} is not everything", p.name(top)));
    }
    for x in 0..p.len() {
        for y in x + 1..p.len() {
            let m = p.meet_of(&[x, y])?;
            if masks[tb.apply(m)] != masks[tb.apply(x)] & masks[tb.apply(y)] {
                return Some(format!(
                    "totally-below does not preserve the meet of {} and {}",
                    p.name(x),
                    p.name(y)
                ));
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Distributivity {
    pub distributive: bool,
    /// `(x, y, z)` with `x ∧ (y ∨ z) != (x ∧ y) ∨ (x ∧ z)`.
    pub witness: Option<(String, String, String)>,
}

/// Brute-force distributive law over all triples of a lattice.
pub fn distributivity_oracle(p: &FinPoset) -> Result<Distributivity> {
    let n = p.len();
    if n == 0 {
        return Err(Error::NotALattice {
            a: "(none)".into(),
            b: "(none)".into(),
            missing: "top and bottom".into(),
        });
    }
    let mut join = vec![0; n * n];
    let mut meet = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let missing = |what: &str| Error::NotALattice {
                a: p.name(a).to_string(),
                b: p.name(b).to_string(),
                missing: what.to_string(),
            };
            join[a * n + b] = p.join_of(&[a, b]).ok_or_else(|| missing("join"))?;
            meet[a * n + b] = p.meet_of(&[a, b]).ok_or_else(|| missing("meet"))?;
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = meet[x * n + join[y * n + z]];
                let rhs = join[meet[x * n + y] * n + meet[x * n + z]];
                if lhs != rhs {
                    return Ok(Distributivity {
                        distributive: false,
                        witness: Some((p.name(x).into(), p.name(y).into(), p.name(z).into())),
                    });
                }
            }
        }
    }
    Ok(Distributivity {
        distributive: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::lattices::principal_down;

    fn g() -> SizeGuard {
        SizeGuard::default()
    }

    #[test]
    fn three_chain_is_lex_ccd() {
        let p = FinPoset::chain(3);
        let r = ccd_check(&p, &g()).unwrap();
        assert!(r.complete && r.ccd && r.lex_ccd);
        // the least down-set whose join dominates the bottom is empty
        assert_eq!(r.totally_below_set(0), Some(0));
        for v in 1..3 {
            assert_eq!(r.totally_below_set(v), Some(principal_down(&p, v)));
        }
    }

    #[test]
    fn boolean_square_is_ccd_but_not_lex() {
        let p = FinPoset::boolean_square();
        let r = ccd_check(&p, &g()).unwrap();
        assert!(r.ccd && !r.lex_ccd);
        let top = p.index_of("1").unwrap();
        let expected = ["0", "a", "b"].iter().fold(0, |m, n| m | 1 << p.index_of(n).unwrap());
        assert_eq!(r.totally_below_set(top), Some(expected));
    }

    #[test]
    fn m3_is_complete_not_ccd() {
        let r = ccd_check(&FinPoset::diamond_m3(), &g()).unwrap();
        assert!(r.complete && !r.ccd && !r.lex_ccd);
        assert!(r.witness.is_some());
    }

    #[test]
    fn empty_poset_is_not_complete() {
        let r = ccd_check(&FinPoset::empty(), &g()).unwrap();
        assert!(!r.complete && !r.ccd);
    }

    #[test]
    fn distributivity_examples() {
        assert!(distributivity_oracle(&FinPoset::chain(4)).unwrap().distributive);
        let m3 = distributivity_oracle(&FinPoset::diamond_m3()).unwrap();
        assert!(!m3.distributive);
        let (x, y, z) = m3.witness.unwrap();
        let atoms = ["a", "b", "c"];
        assert!(atoms.contains(&x.as_str()) && atoms.contains(&y.as_str()) && atoms.contains(&z.as_str()));
        assert!(!distributivity_oracle(&FinPoset::pentagon_n5()).unwrap().distributive);
        assert!(matches!(
            distributivity_oracle(&FinPoset::antichain(&["a", "b"])),
            Err(Error::NotALattice { .. })
        ));
        assert!(matches!(distributivity_oracle(&FinPoset::empty()), Err(Error::NotALattice { .. })));
    }
}
