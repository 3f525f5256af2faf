//! Wavy arrows of a finite poset: the way-below relation as an idempotent
//! comonad in Prof, the cocontinuous endofunctor it induces on copresheaves,
//! and its fixed points.

use std::sync::Arc;

use serde::Serialize;

use crate::category::{FinCategory, FinSet, ObjId};
use crate::error::{Error, Result};
use crate::guard::SizeGuard;
use crate::kan::{triple_from_comonad, AdjointTripleWitness, ComonadData, HomCategory};
use crate::order::way_below;
use crate::poset::{poset_as_category, FinPoset, Order};
use crate::presheaf::{copresheaf_nat_trans_set, copresheaf_samples, flat_check, profunctor_to_functor, Copresheaf, NatTrans, Presheaf, Tensor};
use crate::profunctor::{compose_profunctors, Profunctor, ProfunctorMorphism};

/// Flatness of one column `V(-, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnFlatness {
    pub column: String,
    pub flat: bool,
    pub witness: Option<String>,
}

/// A subsingleton endo-profunctor `V` on a finite poset with `V <= Hom`,
/// its counit `V -> Hom` and comultiplication `V -> V . V`.
#[derive(Debug, Clone)]
pub struct WavyProfunctor {
    pub poset: FinPoset,
    pub category: Arc<FinCategory>,
    pub profunctor: Profunctor,
    pub counit: ProfunctorMorphism,
    /// `x << y` goes to the class of `(z, *, *)` for the least interpolant `z`.
    pub comultiplication: ProfunctorMorphism,
    pub interpolants: Vec<Option<ObjId>>,
    /// `V . V -> V` is an isomorphism.
    pub idempotent: bool,
    pub columns: Vec<ColumnFlatness>,
}

/// The wavy arrows of `a`: `V(x, y)` is inhabited iff `x << y`.
pub fn wavy_profunctor(a: &FinPoset, guard: &SizeGuard) -> Result<WavyProfunctor> {
    let wb = way_below(a, guard)?;
    let v = WavyProfunctor::from_relation(a, |x, y| wb.holds(x, y), guard)?;
    if !v.idempotent {
        return Err(Error::VerificationFailure {
            sample: "wavy profunctor".into(),
            detail: "V . V is not isomorphic to V".into(),
        });
    }
    if let Some(c) = v.columns.iter().find(|c| !c.flat) {
        return Err(Error::VerificationFailure {
            sample: c.column.clone(),
            detail: c.witness.clone().unwrap_or_default(),
        });
    }
    Ok(v)
}

impl WavyProfunctor {
    /// Any relation contained in `<=`, closed downward on the left and
    /// upward on the right, with interpolants. Idempotency and flatness
    /// are recorded, not required.
    pub fn from_relation(a: &FinPoset, rel: impl Fn(usize, usize) -> bool, guard: &SizeGuard) -> Result<Self> {
        let category = Arc::new(poset_as_category(a, guard)?);
        let n = a.len();
        for x in 0..n {
            for y in 0..n {
                if rel(x, y) && !a.leq(x, y) {
                    return Err(Error::InvalidProfunctor(format!("{} is related to {} but not below it", a.name(x), a.name(y))));
                }
            }
        }
        let profunctor = Profunctor::from_relation(category.clone(), &rel)?;
        let hom = Profunctor::hom(category.clone());
        let counit = ProfunctorMorphism {
            components: (0..n * n).map(|i| vec![0; profunctor.at(i / n, i % n).len()]).collect(),
        };
        counit.check(&profunctor, &hom)?;

        let vv = compose_profunctors(&profunctor, &profunctor)?;
        let mut interpolants = vec![None; n * n];
        let mut comult = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                if rel(x, y) {
                    let z = (0..n).find(|&z| rel(x, z) && rel(z, y)).ok_or_else(|| Error::InterpolationFailure {
                        x: a.name(x).to_string(),
                        y: a.name(y).to_string(),
                    })?;
                    interpolants[x * n + y] = Some(z);
                    comult.push(vec![vv.class_of(x, y, z, 0, 0)]);
                } else {
                    comult.push(Vec::new());
                }
            }
        }
        let comultiplication = ProfunctorMorphism { components: comult };
        comultiplication.check(&profunctor, &vv.profunctor)?;
        let idempotent = comultiplication.is_bijective(&profunctor, &vv.profunctor);

        let columns = (0..n)
            .map(|y| {
                let col = column(&profunctor, y)?;
                let verdict = flat_check(&col, guard)?;
                Ok(ColumnFlatness {
                    column: a.name(y).to_string(),
                    flat: verdict.is_ok(),
                    witness: verdict.err().map(|w| w.to_string()),
                })
            })
            .collect::<Result<_>>()?;
        Ok(WavyProfunctor {
            poset: a.clone(),
            category,
            profunctor,
            counit,
            comultiplication,
            interpolants,
            idempotent,
            columns,
        })
    }

    pub fn holds(&self, x: usize, y: usize) -> bool {
        !self.profunctor.at(x, y).is_empty()
    }

    pub fn interpolant(&self, x: usize, y: usize) -> Option<ObjId> {
        self.interpolants[x * self.poset.len() + y]
    }

    /// The row `V(a, -)` as a copresheaf.
    pub fn row(&self, a: ObjId) -> Copresheaf {
        let c = &self.category;
        let sets = (0..c.object_count()).map(|y| self.profunctor.at(a, y).clone()).collect();
        Copresheaf::from_fn(c.clone(), sets, |g, m| self.profunctor.act_right(a, g, m)).expect("row of a profunctor")
    }
}

/// The column `V(-, y)` as a presheaf.
fn column(v: &Profunctor, y: ObjId) -> Result<Presheaf> {
    let c = v.dom();
    let sets = (0..c.object_count()).map(|x| v.at(x, y).clone()).collect();
    Presheaf::from_fn(c.clone(), sets, |f, m| v.act_left(f, y, m))
}

/// `V~(F)` with its counit `V~(F) -> F`.
#[derive(Debug, Clone)]
pub struct Induced {
    pub tensor: Tensor,
    pub counit: NatTrans,
}

impl Induced {
    pub fn copresheaf(&self) -> &Copresheaf {
        &self.tensor.copresheaf
    }
}

pub fn induced_comonad(v: &WavyProfunctor, f: &Copresheaf) -> Result<Induced> {
    let tensor = profunctor_to_functor(&v.profunctor, f)?;
    let c = &v.category;
    let counit = tensor.counit(f, |a2, a, _| c.hom(a2, a)[0]);
    counit.check_copresheaf(&tensor.copresheaf, f)?;
    Ok(Induced { tensor, counit })
}

/// Whether `V~ V~ F -> V~ F` (the counit at `V~ F`) and `V~` of the counit
/// at `F` are both invertible.
pub fn idempotent_on(v: &WavyProfunctor, f: &Copresheaf) -> Result<bool> {
    let once = induced_comonad(v, f)?;
    let twice = induced_comonad(v, once.copresheaf())?;
    let mapped = twice.tensor.map_nat(&once.counit, &once.tensor);
    Ok(twice.counit.is_bijective(once.copresheaf().sets()) && mapped.is_bijective(once.copresheaf().sets()))
}

/// Comparison maps for binary products and the terminal object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartesianReport {
    pub product_preserved: bool,
    pub terminal_preserved: bool,
    pub witness: Option<String>,
}

impl CartesianReport {
    pub fn passed(&self) -> bool {
        self.product_preserved && self.terminal_preserved
    }
}

/// Checks `V~(F x G) -> V~F x V~G` and `V~(1) -> 1` objectwise, naming the
/// first object where a comparison is not a bijection.
pub fn cartesian_spot_check(v: &WavyProfunctor, f: &Copresheaf, g: &Copresheaf) -> Result<CartesianReport> {
    let c = &v.category;
    let fg = f.product(g)?;
    let (vf, vg, vfg) = (induced_comonad(v, f)?, induced_comonad(v, g)?, induced_comonad(v, &fg)?);
    let proj = |first: bool| NatTrans {
        components: (0..c.object_count())
            .map(|a| {
                let w = g.at(a).len();
                (0..fg.at(a).len()).map(|i| if first { i / w } else { i % w }).collect()
            })
            .collect(),
    };
    let p1 = vfg.tensor.map_nat(&proj(true), &vf.tensor);
    let p2 = vfg.tensor.map_nat(&proj(false), &vg.tensor);
    let mut witness = None;
    let mut product_preserved = true;
    for a in 0..c.object_count() {
        let w = vg.copresheaf().at(a).len();
        let target = vf.copresheaf().at(a).len() * w;
        let mut seen = vec![false; target];
        let ok = vfg.copresheaf().at(a).len() == target
            && (0..target).all(|k| {
                let idx = p1.apply(a, k) * w + p2.apply(a, k);
                !std::mem::replace(&mut seen[idx], true)
            });
        if !ok && product_preserved {
            product_preserved = false;
            witness = Some(format!(
                "product comparison at {} sends {} elements to {}",
                c.object_name(a),
                vfg.copresheaf().at(a).len(),
                target
            ));
        }
    }
    let one = induced_comonad(v, &Copresheaf::terminal(c.clone()))?;
    let bad = (0..c.object_count()).find(|&a| one.copresheaf().at(a).len() != 1);
    if let (Some(a), None) = (bad, &witness) {
        witness = Some(format!("V~(1) at {} has {} elements", c.object_name(a), one.copresheaf().at(a).len()));
    }
    Ok(CartesianReport {
        product_preserved,
        terminal_preserved: bad.is_none(),
        witness,
    })
}

/// Copresheaves on a finite category with natural transformations.
#[derive(Debug, Clone)]
pub struct CopresheafHoms {
    pub guard: SizeGuard,
}

impl HomCategory for CopresheafHoms {
    type Obj = Copresheaf;
    type Mor = NatTrans;

    fn hom(&self, a: &Copresheaf, b: &Copresheaf) -> Result<Vec<NatTrans>> {
        copresheaf_nat_trans_set(a, b, &self.guard)
    }

    fn compose(&self, g: &NatTrans, f: &NatTrans) -> NatTrans {
        f.then(g)
    }

    fn identity(&self, a: &Copresheaf) -> NatTrans {
        NatTrans::identity(a.sets())
    }
}

/// `n(G)(a) = Nat(V(a, -), G)`, the right adjoint of `V~`, together with
/// the transformations it is built from.
#[derive(Debug, Clone)]
pub struct RightAdjointValue {
    pub copresheaf: Copresheaf,
    pub elements: Vec<Vec<NatTrans>>,
}

pub fn right_adjoint_of_induced(v: &WavyProfunctor, g: &Copresheaf, guard: &SizeGuard) -> Result<RightAdjointValue> {
    let c = &v.category;
    let rows: Vec<Copresheaf> = (0..c.object_count()).map(|a| v.row(a)).collect();
    let elements: Vec<Vec<NatTrans>> = rows.iter().map(|r| copresheaf_nat_trans_set(r, g, guard)).collect::<Result<_>>()?;
    let sets = elements
        .iter()
        .map(|e| FinSet::indexed(e.len()))
        .collect();
    // f : a -> a' precomposes with V(f, -) : V(a', -) -> V(a, -)
    let copresheaf = Copresheaf::from_fn(c.clone(), sets, |f, k| {
        let (a, a2) = (c.src(f), c.tgt(f));
        let pre = NatTrans {
            components: (0..c.object_count())
                .map(|y| (0..v.profunctor.at(a2, y).len()).map(|m| v.profunctor.act_left(f, y, m)).collect())
                .collect(),
        };
        let moved = pre.then(&elements[a][k]);
        elements[a2].binary_search(&moved).expect("precomposite is natural")
    })?;
    Ok(RightAdjointValue { copresheaf, elements })
}

/// Fixed-point classification and the induced adjoint triple.
#[derive(Debug, Clone, Serialize)]
pub struct CoreflectionWitness {
    /// `(sample, counit invertible)`.
    pub fixed: Vec<(String, bool)>,
    /// `(sample, V~ idempotent there)`.
    pub idempotent: Vec<(String, bool)>,
    /// Samples where `n` could not be evaluated.
    pub no_right_adjoint: Vec<String>,
    pub triple: AdjointTripleWitness,
}

impl CoreflectionWitness {
    pub fn passed(&self) -> bool {
        self.idempotent.iter().all(|(_, ok)| *ok) && self.triple.passed()
    }
}

/// Classifies each sample as fixed or not, then checks `i -| r -| s` for
/// the inclusion `i` of fixed points, `r = V~` and `s = n . i`.
pub fn fixed_points(v: &WavyProfunctor, samples: &[(String, Copresheaf)], guard: &SizeGuard) -> Result<CoreflectionWitness> {
    let mut fixed = Vec::new();
    let mut idempotent = Vec::new();
    for (name, f) in samples {
        let ind = induced_comonad(v, f)?;
        fixed.push((name.clone(), ind.counit.is_bijective(f.sets())));
        idempotent.push((name.clone(), idempotent_on(v, f)?));
    }
    let mut no_right_adjoint = Vec::new();
    let mut large = Vec::new();
    for (name, f) in samples {
        match right_adjoint_of_induced(v, f, guard) {
            Ok(_) => large.push((name.clone(), f.clone())),
            Err(e) => no_right_adjoint.push(format!("{name}: {e}")),
        }
    }
    let mut small: Vec<(String, Copresheaf)> = samples.iter().zip(&fixed).filter(|(_, (_, ok))| *ok).map(|((n, f), _)| (n.clone(), f.clone())).collect();
    for (name, f) in &large {
        small.push((format!("V~[{name}]"), induced_comonad(v, f)?.copresheaf().clone()));
    }
    let homs = CopresheafHoms { guard: guard.clone() };
    let data = ComonadData {
        small: &homs,
        large: &homs,
        i_obj: Box::new(|f: &Copresheaf| Ok(f.clone())),
        i_mor: Box::new(|_, _, m: &NatTrans| Ok(m.clone())),
        r_obj: Box::new(|f: &Copresheaf| Ok(induced_comonad(v, f)?.copresheaf().clone())),
        counit: Box::new(|f: &Copresheaf| Ok(induced_comonad(v, f)?.counit)),
        n_obj: Box::new(|g: &Copresheaf| Ok(right_adjoint_of_induced(v, g, guard)?.copresheaf)),
        n_mor: Box::new(|g: &Copresheaf, g2: &Copresheaf, chi: &NatTrans| {
            let (ng, ng2) = (right_adjoint_of_induced(v, g, guard)?, right_adjoint_of_induced(v, g2, guard)?);
            Ok(NatTrans {
                components: ng
                    .elements
                    .iter()
                    .enumerate()
                    .map(|(a, es)| es.iter().map(|psi| ng2.elements[a].binary_search(&psi.then(chi)).expect("postcomposite is natural")).collect())
                    .collect(),
            })
        }),
        unit: Box::new(|f: &Copresheaf| {
            let ind = induced_comonad(v, f)?;
            let n = right_adjoint_of_induced(v, ind.copresheaf(), guard)?;
            let c = &v.category;
            Ok(NatTrans {
                components: (0..c.object_count())
                    .map(|a| {
                        (0..f.at(a).len())
                            .map(|x| {
                                let psi = NatTrans {
                                    components: (0..c.object_count())
                                        .map(|y| (0..v.profunctor.at(a, y).len()).map(|m| ind.tensor.class_of(y, a, m, x)).collect())
                                        .collect(),
                                };
                                n.elements[a].binary_search(&psi).expect("element transformation is natural")
                            })
                            .collect()
                    })
                    .collect(),
            })
        }),
        small_samples: small,
        large_samples: large,
    };
    let triple = triple_from_comonad(&data)?;
    Ok(CoreflectionWitness {
        fixed,
        idempotent,
        no_right_adjoint,
        triple,
    })
}

/// [`fixed_points`] on the standard copresheaf samples.
pub fn fixed_points_standard(v: &WavyProfunctor, guard: &SizeGuard) -> Result<CoreflectionWitness> {
    fixed_points(v, &copresheaf_samples(&v.category), guard)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> SizeGuard {
        SizeGuard::default()
    }

    fn all_iso(v: &WavyProfunctor) -> bool {
        let hom = Profunctor::hom(v.category.clone());
        v.counit.is_iso(&v.profunctor, &hom)
    }

    #[test]
    fn singleton_poset_gives_hom() {
        let v = wavy_profunctor(&FinPoset::chain(1), &g()).unwrap();
        assert!(all_iso(&v));
        assert!(v.idempotent);
    }

    #[test]
    fn two_chain_wavy_is_order() {
        let p = FinPoset::chain(2);
        let v = wavy_profunctor(&p, &g()).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(v.holds(x, y), p.leq(x, y));
            }
        }
        assert!(v.idempotent);
    }

    #[test]
    fn antichain_columns_are_flat() {
        let v = wavy_profunctor(&FinPoset::antichain(&["a", "b"]), &g()).unwrap();
        assert!(v.holds(0, 0) && !v.holds(0, 1));
        assert!(v.columns.iter().all(|c| c.flat));
    }

    #[test]
    fn hom_induces_identity() {
        let v = wavy_profunctor(&FinPoset::chain(3), &g()).unwrap();
        for (_, f) in copresheaf_samples(&v.category) {
            let ind = induced_comonad(&v, &f).unwrap();
            assert!(ind.counit.is_bijective(f.sets()));
        }
    }

    fn two_over_one(c: &Arc<FinCategory>) -> Copresheaf {
        Copresheaf::from_fn(c.clone(), vec![FinSet::indexed(2), FinSet::indexed(1)], |f, x| if c.is_identity(f) { x } else { 0 }).unwrap()
    }

    fn source_only() -> WavyProfunctor {
        WavyProfunctor::from_relation(&FinPoset::chain(2), |x, _| x == 0, &g()).unwrap()
    }

    #[test]
    fn source_only_relation_copies_the_source() {
        let v = source_only();
        assert!(v.idempotent);
        let c = v.category.clone();
        let f = two_over_one(&c);
        let ind = induced_comonad(&v, &f).unwrap();
        assert_eq!(ind.copresheaf().at(0).len(), 2);
        assert_eq!(ind.copresheaf().at(1).len(), 2);
        assert!(!ind.counit.is_bijective(f.sets()));
        assert!(idempotent_on(&v, &f).unwrap());
    }

    #[test]
    fn cartesian_on_chain_representables() {
        let v = wavy_profunctor(&FinPoset::chain(3), &g()).unwrap();
        let c = v.category.clone();
        for a in 0..3 {
            for b in 0..3 {
                let r = cartesian_spot_check(&v, &Copresheaf::corepresentable(c.clone(), a), &Copresheaf::corepresentable(c.clone(), b)).unwrap();
                assert!(r.passed());
            }
        }
    }

    #[test]
    fn empty_column_breaks_the_terminal() {
        let p = FinPoset::antichain(&["a", "b", "c"]);
        let v = WavyProfunctor::from_relation(&p, |x, y| x == y && x < 2, &g()).unwrap();
        assert!(v.idempotent);
        let bad = v.columns.iter().find(|c| !c.flat).unwrap();
        assert_eq!(bad.column, "c");
        let one = Copresheaf::terminal(v.category.clone());
        let r = cartesian_spot_check(&v, &one, &one).unwrap();
        assert!(!r.terminal_preserved);
        assert!(r.witness.unwrap().contains("at c"));
        assert!(wavy_profunctor(&p, &g()).is_ok());
    }

    #[test]
    fn relation_outside_order_is_rejected() {
        assert!(WavyProfunctor::from_relation(&FinPoset::chain(2), |x, y| x == 1 && y == 0 || x == y, &g()).is_err());
    }

    #[test]
    fn non_interpolating_relation_is_rejected() {
        let r = WavyProfunctor::from_relation(&FinPoset::chain(2), |x, y| x == 0 && y == 1, &g());
        assert!(matches!(r, Err(Error::InterpolationFailure { .. })));
    }

    #[test]
    fn hom_fixes_everything() {
        let v = wavy_profunctor(&FinPoset::chain(2), &g()).unwrap();
        let w = fixed_points_standard(&v, &g()).unwrap();
        assert!(w.fixed.iter().all(|(_, ok)| *ok));
        w.triple.ensure().unwrap();
    }

    #[test]
    fn source_only_triple() {
        let v = source_only();
        let c = v.category.clone();
        let mut samples = copresheaf_samples(&c);
        samples.push(("two over one".into(), two_over_one(&c)));
        let w = fixed_points(&v, &samples, &g()).unwrap();
        assert!(w.passed(), "{:?}", w.triple.failures().collect::<Vec<_>>());
        let verdict: Vec<bool> = w.fixed.iter().map(|(_, ok)| *ok).collect();
        assert!(verdict.contains(&true) && verdict.contains(&false));
        assert!(w.fixed.iter().any(|(n, ok)| n == "empty" && *ok));
        assert!(w.fixed.iter().any(|(n, ok)| n == "two over one" && !*ok));
    }
}
