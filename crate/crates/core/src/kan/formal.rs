use std::sync::Arc;

use crate::category::{builtin, Builtin, FinCategory, FinSet, ObjId};
use crate::error::{Error, Result};
use crate::guard::{SearchBudget, SizeGuard};
use crate::presheaf::{elements, nat_trans_set, position, same_base, yoneda, yoneda_transform, NatTrans, Presheaf, Quotient};
use crate::search::FamilySearch;

/// A finite diagram of presheaves on `C`, standing for the colimit of the
/// corresponding big-representables `Hom(-, F_v)` in presheaves on `Ĉ`.
/// The colimit itself is never materialized.
#[derive(Debug, Clone)]
pub struct FormalColimit {
    base: Arc<FinCategory>,
    shape: Arc<FinCategory>,
    vertices: Vec<Presheaf>,
    /// One transformation `F_src -> F_tgt` per arrow of the shape.
    edges: Vec<NatTrans>,
}

impl FormalColimit {
    pub fn new(base: Arc<FinCategory>, shape: Arc<FinCategory>, vertices: Vec<Presheaf>, edges: Vec<NatTrans>) -> Result<Self> {
        if vertices.len() != shape.object_count() || edges.len() != shape.arrow_count() {
            return Err(Error::InvalidFunctor("diagram needs one presheaf per object and one map per arrow".into()));
        }
        for v in &vertices {
            same_base(&base, v.base())?;
        }
        for (e, alpha) in edges.iter().enumerate() {
            alpha.check_presheaf(&vertices[shape.src(e)], &vertices[shape.tgt(e)])?;
        }
        for o in 0..shape.object_count() {
            if edges[shape.identity(o)] != NatTrans::identity(vertices[o].sets()) {
                return Err(Error::InvalidFunctor(format!("identity of {} not sent to an identity", shape.object_name(o))));
            }
        }
        for f in 0..shape.arrow_count() {
            for &g in shape.arrows_from(shape.tgt(f)) {
                if edges[shape.comp(g, f)] != edges[f].then(&edges[g]) {
                    return Err(Error::InvalidFunctor(format!(
                        "diagram does not preserve {} . {}",
                        shape.arrow_name(g),
                        shape.arrow_name(f)
                    )));
                }
            }
        }
        Ok(FormalColimit {
            base,
            shape,
            vertices,
            edges,
        })
    }

    /// The big-representable at `F`: a one-vertex diagram.
    pub fn representable(f: Presheaf) -> Self {
        let shape = Arc::new(builtin(Builtin::Terminal, 0, &SizeGuard::default()).expect("terminal category"));
        FormalColimit {
            base: f.base().clone(),
            edges: vec![NatTrans::identity(f.sets())],
            vertices: vec![f],
            shape,
        }
    }

    /// The initial object: the empty diagram.
    pub fn initial(base: Arc<FinCategory>) -> Self {
        let shape = Arc::new(builtin(Builtin::Discrete, 0, &SizeGuard::default()).expect("empty category"));
        FormalColimit {
            base,
            shape,
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn shape(&self) -> &Arc<FinCategory> {
        &self.shape
    }

    pub fn vertices(&self) -> &[Presheaf] {
        &self.vertices
    }

    pub fn vertex(&self, v: ObjId) -> &Presheaf {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &NatTrans {
        &self.edges[e]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// `t(E)`: the colimit over the elements `(c, x)` of `E` of the
/// big-representables at the representables `ĉ`.
pub fn lan_along_yoneda(e: &Presheaf, guard: &SizeGuard) -> Result<FormalColimit> {
    let base = e.base().clone();
    let el = elements(e, guard)?;
    let reps: Vec<Presheaf> = (0..base.object_count()).map(|c| yoneda(&base, c)).collect();
    let vertices = el.objects.iter().map(|&(c, _)| reps[c].clone()).collect();
    let edges = el
        .arrows
        .iter()
        .map(|&f| {
            let (c, c2) = (base.src(f), base.tgt(f));
            NatTrans {
                components: (0..base.object_count())
                    .map(|d| base.hom(d, c).iter().map(|&h| position(base.hom(d, c2), base.comp(f, h))).collect())
                    .collect(),
            }
        })
        .collect();
    Ok(FormalColimit {
        base,
        shape: el.category.clone(),
        vertices,
        edges,
    })
}

/// `c(X)`: the pointwise colimit of the diagram, with its injections.
#[derive(Debug, Clone)]
pub struct PointwiseColimit {
    pub presheaf: Presheaf,
    /// Per object of the base: the quotient of the disjoint union of the
    /// vertex values.
    pub stalks: Vec<Quotient>,
    /// `injections[v] : F_v -> c(X)`.
    pub injections: Vec<NatTrans>,
}

pub fn colimit(x: &FormalColimit) -> PointwiseColimit {
    let base = &x.base;
    let shape = &x.shape;
    let stalks: Vec<Quotient> = (0..base.object_count())
        .map(|c| {
            let sizes: Vec<usize> = x.vertices.iter().map(|f| f.at(c).len()).collect();
            let mut pairs = Vec::new();
            for e in 0..shape.arrow_count() {
                if shape.is_identity(e) {
                    continue;
                }
                let (v, w) = (shape.src(e), shape.tgt(e));
                for z in 0..sizes[v] {
                    pairs.push(((v, z), (w, x.edges[e].apply(c, z))));
                }
            }
            Quotient::build(&sizes, pairs, |v, z| format!("{}:{}", shape.object_name(v), x.vertices[v].at(c).label(z)))
        })
        .collect();
    let sets: Vec<FinSet> = stalks.iter().map(|q| q.set().clone()).collect();
    let presheaf = Presheaf::from_fn(base.clone(), sets, |f, k| {
        let (v, z) = stalks[base.tgt(f)].representative(k);
        stalks[base.src(f)].class(v, x.vertices[v].act(f, z))
    })
    .expect("colimit of a diagram of presheaves is a presheaf");
    let injections = (0..x.len())
        .map(|v| NatTrans {
            components: (0..base.object_count()).map(|c| stalks[c].injection(v).to_vec()).collect(),
        })
        .collect();
    PointwiseColimit {
        presheaf,
        stalks,
        injections,
    }
}

/// Hom-set between two formal colimits: `lim_v colim_w Nat(F_v, G_w)`.
#[derive(Debug, Clone)]
pub struct BigHom {
    /// `nats[v][w] = Nat(F_v, G_w)` in canonical order.
    nats: Vec<Vec<Vec<NatTrans>>>,
    /// `stalks[v] = colim_w Nat(F_v, G_w)`.
    stalks: Vec<Quotient>,
    /// Each morphism as the class chosen at every vertex of the source,
    /// in lexicographic order.
    pub morphisms: Vec<Vec<usize>>,
}

impl BigHom {
    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    /// The class of `psi : F_v -> G_w` at vertex `v`.
    pub fn class_of(&self, v: usize, w: usize, psi: &NatTrans) -> usize {
        let k = self.nats[v][w].binary_search(psi).expect("transformation between vertex values");
        self.stalks[v].class(w, k)
    }

    /// A representative `(w, psi)` of a class at vertex `v`.
    pub fn representative(&self, v: usize, class: usize) -> (usize, &NatTrans) {
        let (w, k) = self.stalks[v].representative(class);
        (w, &self.nats[v][w][k])
    }

    pub fn stalk_size(&self, v: usize) -> usize {
        self.stalks[v].len()
    }

    pub fn index_of(&self, family: &[usize]) -> Option<usize> {
        self.morphisms.binary_search_by(|m| m.as_slice().cmp(family)).ok()
    }
}

pub fn big_hom(x: &FormalColimit, y: &FormalColimit, guard: &SizeGuard) -> Result<BigHom> {
    same_base(&x.base, &y.base)?;
    let mut nats = Vec::with_capacity(x.len());
    for f in &x.vertices {
        let row: Vec<Vec<NatTrans>> = y.vertices.iter().map(|g| nat_trans_set(f, g, guard)).collect::<Result<_>>()?;
        nats.push(row);
    }
    let yshape = &y.shape;
    let stalks: Vec<Quotient> = (0..x.len())
        .map(|v| {
            let sizes: Vec<usize> = nats[v].iter().map(Vec::len).collect();
            let mut pairs = Vec::new();
            for e in 0..yshape.arrow_count() {
                if yshape.is_identity(e) {
                    continue;
                }
                let (w, w2) = (yshape.src(e), yshape.tgt(e));
                for (k, psi) in nats[v][w].iter().enumerate() {
                    let moved = psi.then(&y.edges[e]);
                    let k2 = nats[v][w2].binary_search(&moved).expect("composite is natural");
                    pairs.push(((w, k), (w2, k2)));
                }
            }
            Quotient::build(&sizes, pairs, |w, k| format!("{}#{k}", yshape.object_name(w)))
        })
        .collect();
    let mut hom = BigHom {
        nats,
        stalks,
        morphisms: Vec::new(),
    };
    let mut search = FamilySearch::new((0..x.len()).map(|v| hom.stalks[v].len()).collect());
    let xshape = &x.shape;
    for e in 0..xshape.arrow_count() {
        if xshape.is_identity(e) {
            continue;
        }
        let (v, v2) = (xshape.src(e), xshape.tgt(e));
        // restriction S_{v2} -> S_v, precomposing with the edge
        let table = (0..hom.stalks[v2].len())
            .map(|k| {
                let (w, psi) = hom.representative(v2, k);
                hom.class_of(v, w, &x.edges[e].then(psi))
            })
            .collect();
        let t = search.table(table);
        search.forced(v, v2, t);
    }
    let mut budget = SearchBudget::new(guard, "big hom-set search nodes");
    hom.morphisms = search.solve(&mut budget)?;
    Ok(hom)
}

/// `r . s` for `s` in `xy` and `r` in `yz`, as an index into `xz`.
pub fn compose_big(xy: &BigHom, s: usize, yz: &BigHom, r: usize, xz: &BigHom) -> Option<usize> {
    let family: Vec<usize> = xy.morphisms[s]
        .iter()
        .enumerate()
        .map(|(v, &k)| {
            let (w, psi) = xy.representative(v, k);
            let (u, chi) = yz.representative(w, yz.morphisms[r][w]);
            xz.class_of(v, u, &psi.then(chi))
        })
        .collect();
    xz.index_of(&family)
}

/// The identity of `X`, as an index into `hom = big_hom(X, X)`.
pub fn big_identity(x: &FormalColimit, hom: &BigHom) -> Option<usize> {
    let family: Vec<usize> = (0..x.len()).map(|v| hom.class_of(v, v, &NatTrans::identity(x.vertices[v].sets()))).collect();
    hom.index_of(&family)
}

/// `c` on a morphism: the induced map between pointwise colimits.
pub fn colimit_map(x: &FormalColimit, cx: &PointwiseColimit, cy: &PointwiseColimit, hom: &BigHom, s: usize) -> NatTrans {
    let base = &x.base;
    NatTrans {
        components: (0..base.object_count())
            .map(|c| {
                (0..cx.stalks[c].len())
                    .map(|k| {
                        let (v, z) = cx.stalks[c].representative(k);
                        let (w, psi) = hom.representative(v, hom.morphisms[s][v]);
                        cy.stalks[c].class(w, psi.apply(c, z))
                    })
                    .collect()
            })
            .collect(),
    }
}

/// `t` on a morphism `alpha : E -> E'`, as an index into
/// `hom = big_hom(t E, t E')`.
pub fn lan_map(e: &Presheaf, e2: &Presheaf, alpha: &NatTrans, hom: &BigHom, guard: &SizeGuard) -> Result<Option<usize>> {
    let el = elements(e, guard)?;
    let el2 = elements(e2, guard)?;
    let family: Vec<usize> = el
        .objects
        .iter()
        .enumerate()
        .map(|(v, &(c, x))| {
            let w = el2.object_of(c, alpha.apply(c, x));
            hom.class_of(v, w, &NatTrans::identity(yoneda(e.base(), c).sets()))
        })
        .collect();
    Ok(hom.index_of(&family))
}

/// The transpose `Nat(E, c X) -> big_hom(t E, X)` of one transformation:
/// each element `(c, x)` goes to the Yoneda transform of a representative
/// of `beta_c(x)`.
pub fn transpose_to_lan(e: &Presheaf, x: &FormalColimit, cx: &PointwiseColimit, beta: &NatTrans, hom: &BigHom, guard: &SizeGuard) -> Result<Option<usize>> {
    let el = elements(e, guard)?;
    let family: Vec<usize> = el
        .objects
        .iter()
        .enumerate()
        .map(|(v, &(c, z))| {
            let (w, g) = cx.stalks[c].representative(beta.apply(c, z));
            hom.class_of(v, w, &yoneda_transform(x.vertex(w), c, g))
        })
        .collect();
    Ok(hom.index_of(&family))
}

/// The transpose `Nat(c X, G) -> big_hom(X, y G)`: `gamma |-> (gamma . i_v)_v`.
pub fn transpose_to_representable(cx: &PointwiseColimit, gamma: &NatTrans, hom: &BigHom) -> Option<usize> {
    let family: Vec<usize> = cx.injections.iter().enumerate().map(|(v, iota)| hom.class_of(v, 0, &iota.then(gamma))).collect();
    hom.index_of(&family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presheaf::presheaf_samples;

    fn g() -> SizeGuard {
        SizeGuard::default()
    }

    fn cat(kind: Builtin, n: usize) -> Arc<FinCategory> {
        Arc::new(builtin(kind, n, &g()).unwrap())
    }

    #[test]
    fn hom_between_representables_is_nat() {
        let c = cat(Builtin::Simplex, 1);
        for (_, f) in presheaf_samples(&c) {
            for (_, h) in presheaf_samples(&c) {
                let direct = nat_trans_set(&f, &h, &g()).unwrap();
                let big = big_hom(&FormalColimit::representable(f.clone()), &FormalColimit::representable(h.clone()), &g()).unwrap();
                assert_eq!(big.len(), direct.len());
            }
        }
    }

    #[test]
    fn initial_object_has_one_map_out() {
        let c = cat(Builtin::WalkingArrow, 0);
        let x = FormalColimit::initial(c.clone());
        for (_, f) in presheaf_samples(&c) {
            assert_eq!(big_hom(&x, &FormalColimit::representable(f), &g()).unwrap().len(), 1);
        }
    }

    #[test]
    fn maps_out_of_a_coproduct_pair_up() {
        let c = cat(Builtin::WalkingArrow, 0);
        let a = yoneda(&c, 0);
        let b = yoneda(&c, 1);
        let sum = lan_along_yoneda(&a.coproduct(&b).unwrap(), &g()).unwrap();
        let ta = lan_along_yoneda(&a, &g()).unwrap();
        let tb = lan_along_yoneda(&b, &g()).unwrap();
        for (_, f) in presheaf_samples(&c) {
            let y = FormalColimit::representable(f);
            let whole = big_hom(&sum, &y, &g()).unwrap().len();
            let parts = big_hom(&ta, &y, &g()).unwrap().len() * big_hom(&tb, &y, &g()).unwrap().len();
            assert_eq!(whole, parts);
        }
    }

    #[test]
    fn lan_of_representable_is_big_representable_at_it() {
        let c = cat(Builtin::Simplex, 1);
        for o in 0..c.object_count() {
            let rep = yoneda(&c, o);
            let t = lan_along_yoneda(&rep, &g()).unwrap();
            let y = FormalColimit::representable(rep.clone());
            let there = big_hom(&t, &y, &g()).unwrap();
            let back = big_hom(&y, &t, &g()).unwrap();
            let tt = big_hom(&t, &t, &g()).unwrap();
            let yy = big_hom(&y, &y, &g()).unwrap();
            let id_t = big_identity(&t, &tt).unwrap();
            let id_y = big_identity(&y, &yy).unwrap();
            // some pair of maps composes to the identities
            let iso = (0..there.len()).any(|s| {
                (0..back.len()).any(|r| compose_big(&there, s, &back, r, &tt) == Some(id_t) && compose_big(&back, r, &there, s, &yy) == Some(id_y))
            });
            assert!(iso, "object {o}");
        }
    }

    #[test]
    fn lan_of_empty_is_initial() {
        let c = cat(Builtin::WalkingArrow, 0);
        assert!(lan_along_yoneda(&Presheaf::empty(c), &g()).unwrap().is_empty());
    }

    #[test]
    fn colimit_of_representable_diagram_is_the_vertex() {
        let c = cat(Builtin::Simplex, 1);
        for (_, f) in presheaf_samples(&c) {
            let cx = colimit(&FormalColimit::representable(f.clone()));
            assert!(cx.injections[0].is_bijective(cx.presheaf.sets()));
            cx.injections[0].check_presheaf(&f, &cx.presheaf).unwrap();
        }
    }
}
