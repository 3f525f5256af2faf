use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::formal::{
    big_hom, big_identity, colimit, colimit_map, compose_big, lan_along_yoneda, lan_map, transpose_to_lan, transpose_to_representable,
    FormalColimit, PointwiseColimit,
};
use crate::category::{FinCategory, FinSet};
use crate::error::{Error, Result};
use crate::guard::SizeGuard;
use crate::order::{ccd_check, DownSetLattice};
use crate::poset::underlying_poset;
use crate::presheaf::{elements, nat_trans_set, position, presheaf_samples, NatTrans, Presheaf};

/// One verified instance: the two sides of a bijection (or the two sides
/// of an identity) and whether the canonical comparison succeeded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub sample: String,
    pub check: String,
    pub left: usize,
    pub right: usize,
    pub ok: bool,
}

/// Down-set shadow of a thin base: subterminal presheaves against `Dn(P)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShadowCheck {
    pub down_sets: usize,
    pub subterminals: usize,
    pub order_agrees: bool,
    pub down_set_lattice_ccd: bool,
}

impl ShadowCheck {
    pub fn passed(&self) -> bool {
        self.down_sets == self.subterminals && self.order_agrees && self.down_set_lattice_ccd
    }
}

/// Log of an adjoint-triple verification.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AdjointTripleWitness {
    pub records: Vec<CheckRecord>,
    pub shadow: Option<ShadowCheck>,
}

impl AdjointTripleWitness {
    pub(crate) fn log(&mut self, sample: impl Into<String>, check: &str, left: usize, right: usize, ok: bool) {
        self.records.push(CheckRecord {
            sample: sample.into(),
            check: check.to_string(),
            left,
            right,
            ok,
        });
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.ok) && self.shadow.as_ref().is_none_or(ShadowCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.ok)
    }

    /// The first failure as an error.
    pub fn ensure(&self) -> Result<()> {
        if let Some(r) = self.failures().next() {
            return Err(Error::VerificationFailure {
                sample: r.sample.clone(),
                detail: format!("{}: {} against {}", r.check, r.left, r.right),
            });
        }
        if let Some(s) = self.shadow.as_ref().filter(|s| !s.passed()) {
            return Err(Error::VerificationFailure {
                sample: "down-set shadow".into(),
                detail: format!("{} down-sets against {} subterminals", s.down_sets, s.subterminals),
            });
        }
        Ok(())
    }

    pub fn sorted(mut self) -> Self {
        self.records.sort_by(|a, b| (&a.sample, &a.check).cmp(&(&b.sample, &b.check)));
        self
    }
}

/// Whether `map` sends `left` injectively onto all of `0..right`.
fn bijection(images: &[Option<usize>], right: usize) -> bool {
    if images.len() != right {
        return false;
    }
    let mut seen = BTreeSet::new();
    images.iter().all(|i| matches!(i, Some(k) if seen.insert(*k)))
}

struct BigSample {
    name: String,
    x: FormalColimit,
    cx: PointwiseColimit,
}

/// Verifies `t -| c -| y` for presheaves on `C` on the standard samples:
/// both hom bijections, the four triangle identities, `c(y F) = F`, the
/// finite-limit preservation of `t` when `C` has finite limits, and the
/// down-set shadow when `C` is thin.
pub fn td_witness(c: &Arc<FinCategory>, guard: &SizeGuard) -> Result<AdjointTripleWitness> {
    td_witness_on(c, &presheaf_samples(c), guard)
}

/// [`td_witness`] on a caller-supplied sample suite.
pub fn td_witness_on(c: &Arc<FinCategory>, samples: &[(String, Presheaf)], guard: &SizeGuard) -> Result<AdjointTripleWitness> {
    guard.check_objects(c.object_count())?;
    guard.check_arrows(c.arrow_count())?;
    for (_, s) in samples {
        crate::presheaf::same_base(c, s.base())?;
    }
    let mut w = AdjointTripleWitness::default();
    let mut bigs = Vec::new();
    for (name, f) in samples {
        let y = FormalColimit::representable(f.clone());
        bigs.push(BigSample {
            name: format!("y[{name}]"),
            cx: colimit(&y),
            x: y,
        });
        let t = lan_along_yoneda(f, guard)?;
        bigs.push(BigSample {
            name: format!("t[{name}]"),
            cx: colimit(&t),
            x: t,
        });
    }
    let lans: Vec<FormalColimit> = samples.iter().map(|(_, e)| lan_along_yoneda(e, guard)).collect::<Result<_>>()?;

    // t -| c: Nat(E, c X) = big_hom(t E, X)
    for ((ename, e), te) in samples.iter().zip(&lans) {
        for b in &bigs {
            let left = nat_trans_set(e, &b.cx.presheaf, guard)?;
            let hom = big_hom(te, &b.x, guard)?;
            let images: Vec<Option<usize>> = left
                .iter()
                .map(|beta| transpose_to_lan(e, &b.x, &b.cx, beta, &hom, guard))
                .collect::<Result<_>>()?;
            w.log(format!("{ename} | {}", b.name), "t -| c", left.len(), hom.len(), bijection(&images, hom.len()));
        }
    }

    // c -| y: big_hom(X, y G) = Nat(c X, G)
    for b in &bigs {
        for (gname, gp) in samples {
            let yg = FormalColimit::representable(gp.clone());
            let hom = big_hom(&b.x, &yg, guard)?;
            let right = nat_trans_set(&b.cx.presheaf, gp, guard)?;
            let images: Vec<Option<usize>> = right.iter().map(|gamma| transpose_to_representable(&b.cx, gamma, &hom)).collect();
            w.log(format!("{} | {gname}", b.name), "c -| y", hom.len(), right.len(), bijection(&images, hom.len()));
        }
    }

    // c(y F) = F through the single injection
    for (name, f) in samples {
        let cy = colimit(&FormalColimit::representable(f.clone()));
        let inj = &cy.injections[0];
        let ok = inj.check_presheaf(f, &cy.presheaf).is_ok() && inj.is_bijective(cy.presheaf.sets());
        w.log(name.clone(), "c(y F) = F", f.total_size(), cy.presheaf.total_size(), ok);
    }

    for b in &bigs {
        triangles_c_y(&mut w, b, guard)?;
        triangle_t_c_at_big(&mut w, b, guard)?;
    }
    for ((name, e), te) in samples.iter().zip(&lans) {
        triangle_t_c_at_small(&mut w, name, e, te, guard)?;
    }

    if c.has_finite_limits() {
        lex_checks(&mut w, c, samples, guard)?;
    }
    if c.is_thin() {
        w.shadow = Some(shadow(c, guard)?);
    }
    Ok(w.sorted())
}

/// `(eps c) . (c eta) = id` at `X` and `(y eps) . (eta y) = id` at `c X`.
fn triangles_c_y(w: &mut AdjointTripleWitness, b: &BigSample, guard: &SizeGuard) -> Result<()> {
    let cx = &b.cx.presheaf;
    let ycx = FormalColimit::representable(cx.clone());
    let cycx = colimit(&ycx);
    let hom = big_hom(&b.x, &ycx, guard)?;
    // eta_X: v |-> iota_v
    let eta = transpose_to_representable(&b.cx, &NatTrans::identity(cx.sets()), &hom);
    let ok = match eta {
        Some(eta) => {
            let c_eta = colimit_map(&b.x, &b.cx, &cycx, &hom, eta);
            let eps = cycx.injections[0].inverse().expect("single injection is invertible");
            c_eta.then(&eps) == NatTrans::identity(cx.sets())
        }
        None => false,
    };
    w.log(b.name.clone(), "c eta then eps c = id", 1, 1, ok);

    // at G = c X: eta_{yG} then y(eps_G)
    let g = cx;
    let yg = FormalColimit::representable(g.clone());
    let cyg = colimit(&yg);
    let ycyg = FormalColimit::representable(cyg.presheaf.clone());
    let h1 = big_hom(&yg, &ycyg, guard)?;
    let h2 = big_hom(&ycyg, &yg, guard)?;
    let h3 = big_hom(&yg, &yg, guard)?;
    let eta = h1.index_of(&[h1.class_of(0, 0, &cyg.injections[0])]);
    let eps = h2.index_of(&[h2.class_of(0, 0, &cyg.injections[0].inverse().expect("invertible"))]);
    let ok = match (eta, eps) {
        (Some(eta), Some(eps)) => compose_big(&h1, eta, &h2, eps, &h3) == big_identity(&yg, &h3),
        _ => false,
    };
    w.log(b.name.clone(), "eta y then y eps = id", 1, 1, ok);
    Ok(())
}

/// `eta_E : E -> c t E`, `x in E(c) |-> [(c, x), id_c]`.
fn lan_unit(e: &Presheaf, ct: &PointwiseColimit, guard: &SizeGuard) -> Result<NatTrans> {
    let base = e.base();
    let el = elements(e, guard)?;
    Ok(NatTrans {
        components: (0..base.object_count())
            .map(|c| {
                let id_pos = position(base.hom(c, c), base.identity(c));
                (0..e.at(c).len()).map(|x| ct.stalks[c].class(el.object_of(c, x), id_pos)).collect()
            })
            .collect(),
    })
}

/// `(c eps) . (eta c) = id` at `X`.
fn triangle_t_c_at_big(w: &mut AdjointTripleWitness, b: &BigSample, guard: &SizeGuard) -> Result<()> {
    let cx = &b.cx.presheaf;
    let tcx = lan_along_yoneda(cx, guard)?;
    let ctcx = colimit(&tcx);
    let hom = big_hom(&tcx, &b.x, guard)?;
    let eps = transpose_to_lan(cx, &b.x, &b.cx, &NatTrans::identity(cx.sets()), &hom, guard)?;
    let eta = lan_unit(cx, &ctcx, guard)?;
    let ok = match eps {
        Some(eps) => eta.then(&colimit_map(&tcx, &ctcx, &b.cx, &hom, eps)) == NatTrans::identity(cx.sets()),
        None => false,
    };
    w.log(b.name.clone(), "eta c then c eps = id", 1, 1, ok);
    Ok(())
}

/// `(eps t) . (t eta) = id` at `E`.
fn triangle_t_c_at_small(w: &mut AdjointTripleWitness, name: &str, e: &Presheaf, te: &FormalColimit, guard: &SizeGuard) -> Result<()> {
    let cte = colimit(te);
    let tcte = lan_along_yoneda(&cte.presheaf, guard)?;
    let ctcte = colimit(&tcte);
    let eta = lan_unit(e, &cte, guard)?;
    let h1 = big_hom(te, &tcte, guard)?;
    let h2 = big_hom(&tcte, te, guard)?;
    let h3 = big_hom(te, te, guard)?;
    let t_eta = lan_map(e, &cte.presheaf, &eta, &h1, guard)?;
    let eps = transpose_to_lan(&cte.presheaf, te, &cte, &NatTrans::identity(cte.presheaf.sets()), &h2, guard)?;
    let _ = ctcte;
    let ok = match (t_eta, eps) {
        (Some(a), Some(b)) => compose_big(&h1, a, &h2, b, &h3) == big_identity(te, &h3),
        _ => false,
    };
    w.log(name.to_string(), "t eta then eps t = id", 1, 1, ok);
    Ok(())
}

/// `t` preserves the terminal object and binary products, tested against
/// every big-representable sample `y F`.
fn lex_checks(w: &mut AdjointTripleWitness, c: &Arc<FinCategory>, samples: &[(String, Presheaf)], guard: &SizeGuard) -> Result<()> {
    let probes: Vec<(String, FormalColimit)> = samples.iter().map(|(n, f)| (n.clone(), FormalColimit::representable(f.clone()))).collect();
    let t1 = lan_along_yoneda(&Presheaf::terminal(c.clone()), guard)?;
    for (pname, p) in &probes {
        let n = big_hom(p, &t1, guard)?.len();
        w.log(format!("{pname} | t[terminal]"), "t preserves the terminal", n, 1, n == 1);
    }
    for (i, (an, a)) in samples.iter().enumerate() {
        for (bn, b) in &samples[i..] {
            let prod = a.product(b)?;
            let (ta, tb, tp) = (lan_along_yoneda(a, guard)?, lan_along_yoneda(b, guard)?, lan_along_yoneda(&prod, guard)?);
            let p1 = projection(&prod, a, b, true);
            let p2 = projection(&prod, a, b, false);
            let hp1 = big_hom(&tp, &ta, guard)?;
            let hp2 = big_hom(&tp, &tb, guard)?;
            let tp1 = lan_map(&prod, a, &p1, &hp1, guard)?.expect("projection transports");
            let tp2 = lan_map(&prod, b, &p2, &hp2, guard)?.expect("projection transports");
            for (pname, p) in &probes {
                let into_p = big_hom(p, &tp, guard)?;
                let into_a = big_hom(p, &ta, guard)?;
                let into_b = big_hom(p, &tb, guard)?;
                let mut images = Vec::with_capacity(into_p.len());
                for s in 0..into_p.len() {
                    let pair = (compose_big(&into_p, s, &hp1, tp1, &into_a), compose_big(&into_p, s, &hp2, tp2, &into_b));
                    images.push(match pair {
                        (Some(x), Some(y)) => Some(x * into_b.len() + y),
                        _ => None,
                    });
                }
                let right = into_a.len() * into_b.len();
                w.log(format!("{pname} | t[{an} x {bn}]"), "t preserves products", into_p.len(), right, bijection(&images, right));
            }
        }
    }
    Ok(())
}

fn projection(prod: &Presheaf, a: &Presheaf, b: &Presheaf, first: bool) -> NatTrans {
    NatTrans {
        components: (0..prod.base().object_count())
            .map(|c| {
                let nb = b.at(c).len();
                (0..a.at(c).len() * nb).map(|k| if first { k / nb } else { k % nb }).collect()
            })
            .collect(),
    }
}

/// Subterminal presheaves of a thin base are exactly the down-sets of the
/// underlying poset, with existence of a map matching inclusion, and the
/// down-set lattice is ccd.
fn shadow(c: &Arc<FinCategory>, guard: &SizeGuard) -> Result<ShadowCheck> {
    let p = underlying_poset(c).ok_or_else(|| Error::InternalInconsistency("thin category without a poset".into()))?;
    let dn = DownSetLattice::new(&p, guard)?;
    let n = c.object_count();
    if n > 16 {
        return Err(Error::guard("objects for the subterminal scan", n as u128, 16u128));
    }
    let mut subs: Vec<(u64, Presheaf)> = Vec::new();
    for mask in 0u64..1 << n {
        let sets: Vec<FinSet> = (0..n)
            .map(|o| if mask >> o & 1 == 1 { FinSet::singleton("*") } else { FinSet::empty() })
            .collect();
        let maps = (0..c.arrow_count()).map(|f| if mask >> c.tgt(f) & 1 == 1 { vec![0] } else { Vec::new() }).collect();
        if let Ok(s) = Presheaf::new(c.clone(), sets, maps) {
            subs.push((mask, s));
        }
    }
    let mut order_agrees = subs.iter().all(|(m, _)| dn.sets.index_of(*m).is_some());
    for (m1, s1) in &subs {
        for (m2, s2) in &subs {
            let maps = !nat_trans_set(s1, s2, guard)?.is_empty();
            order_agrees &= maps == (m1 & !m2 == 0);
        }
    }
    Ok(ShadowCheck {
        down_sets: dn.sets.len(),
        subterminals: subs.len(),
        order_agrees,
        down_set_lattice_ccd: ccd_check(&dn.sets.to_poset(), guard)?.ccd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{builtin, Builtin};

    fn run(kind: Builtin, n: usize) -> AdjointTripleWitness {
        let g = SizeGuard::default();
        let c = Arc::new(builtin(kind, n, &g).unwrap());
        td_witness(&c, &g).unwrap()
    }

    #[test]
    fn terminal_category_passes() {
        let w = run(Builtin::Terminal, 0);
        w.ensure().unwrap();
        let s = w.shadow.unwrap();
        assert_eq!((s.down_sets, s.subterminals), (2, 2));
        assert!(w.records.iter().any(|r| r.check == "t preserves products"));
    }

    #[test]
    fn walking_arrow_passes() {
        let w = run(Builtin::WalkingArrow, 0);
        w.ensure().unwrap();
        assert_eq!(w.shadow.unwrap().down_sets, 3);
    }

    #[test]
    fn simplex_one_passes() {
        let w = run(Builtin::Simplex, 1);
        w.ensure().unwrap();
        assert!(w.shadow.is_none());
    }

    #[test]
    fn chain_two_passes_with_shadow() {
        let w = run(Builtin::Chain, 2);
        w.ensure().unwrap();
        let s = w.shadow.unwrap();
        assert_eq!((s.down_sets, s.subterminals), (4, 4));
        assert!(s.down_set_lattice_ccd);
    }

    #[test]
    fn bijection_helper() {
        assert!(bijection(&[Some(1), Some(0)], 2));
        assert!(!bijection(&[Some(1), Some(1)], 2));
        assert!(!bijection(&[None], 1));
        assert!(bijection(&[], 0));
    }
}
