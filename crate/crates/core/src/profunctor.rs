//! Profunctors `C -/-> D` (functors `C^op x D -> FinSet`), their composition
//! in Prof and morphisms between them.

use std::sync::Arc;

use crate::category::{ArrowId, FinCategory, FinSet, ObjId};
use crate::error::{Error, Result};
use crate::presheaf::{coend, Coend};

/// A profunctor `M : C -/-> D`. The left action is contravariant in `C`,
/// the right action covariant in `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profunctor {
    dom: Arc<FinCategory>,
    cod: Arc<FinCategory>,
    /// `sets[c * |D| + d] = M(c, d)`.
    sets: Vec<FinSet>,
    /// `left[f * |D| + d] : M(tgt f, d) -> M(src f, d)` for `f` in `C`.
    left: Vec<Vec<usize>>,
    /// `right[c * |arrows D| + g] : M(c, src g) -> M(c, tgt g)` for `g` in `D`.
    right: Vec<Vec<usize>>,
}

impl Profunctor {
    /// Builds and checks identity, composition and interchange laws.
    pub fn new(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        sets: Vec<FinSet>,
        left: Vec<Vec<usize>>,
        right: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let p = Profunctor {
            dom,
            cod,
            sets,
            left,
            right,
        };
        p.check()?;
        Ok(p)
    }

    /// Builds from action closures `left(f, d, x)` and `right(c, g, x)`.
    pub fn from_actions(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        sets: Vec<FinSet>,
        left: impl Fn(ArrowId, ObjId, usize) -> usize,
        right: impl Fn(ObjId, ArrowId, usize) -> usize,
    ) -> Result<Self> {
        let nd = cod.object_count();
        if sets.len() != dom.object_count() * nd {
            return Err(Error::InvalidProfunctor("wrong number of value sets".into()));
        }
        let mut l = Vec::with_capacity(dom.arrow_count() * nd);
        for f in 0..dom.arrow_count() {
            for d in 0..nd {
                let size = sets[dom.tgt(f) * nd + d].len();
                l.push((0..size).map(|x| left(f, d, x)).collect());
            }
        }
        let mut r = Vec::with_capacity(dom.object_count() * cod.arrow_count());
        for c in 0..dom.object_count() {
            for g in 0..cod.arrow_count() {
                let size = sets[c * nd + cod.src(g)].len();
                r.push((0..size).map(|x| right(c, g, x)).collect());
            }
        }
        Self::new(dom, cod, sets, l, r)
    }

    /// `Hom_C` as a profunctor `C -/-> C`.
    pub fn hom(c: Arc<FinCategory>) -> Self {
        let n = c.object_count();
        let mut sets = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let labels = c.hom(x, y).iter().map(|&a| c.arrow_name(a).to_string()).collect();
                sets.push(FinSet::from_labels_unchecked(labels));
            }
        }
        let pos = |x: ObjId, y: ObjId, a: ArrowId| c.hom(x, y).iter().position(|&b| b == a).expect("arrow in hom");
        let left = |f: ArrowId, d: ObjId, i: usize| {
            let h = c.hom(c.tgt(f), d)[i];
            pos(c.src(f), d, c.comp(h, f))
        };
        let right = |x: ObjId, g: ArrowId, i: usize| {
            let h = c.hom(x, c.src(g))[i];
            pos(x, c.tgt(g), c.comp(g, h))
        };
        Self::from_actions(c.clone(), c.clone(), sets, left, right).expect("hom profunctor is valid")
    }

    /// The subsingleton-valued profunctor on a thin category with
    /// `M(x, y) = {*}` iff `rel(x, y)`. Fails unless `rel` is closed under
    /// precomposition and postcomposition.
    pub fn from_relation(c: Arc<FinCategory>, rel: impl Fn(ObjId, ObjId) -> bool) -> Result<Self> {
        if !c.is_thin() {
            return Err(Error::InvalidProfunctor("relation profunctors need a thin category".into()));
        }
        let n = c.object_count();
        let mut sets = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                sets.push(if rel(x, y) { FinSet::singleton("*") } else { FinSet::empty() });
            }
        }
        Self::from_actions(c.clone(), c, sets, |_, _, _| 0, |_, _, _| 0)
    }

    fn check(&self) -> Result<()> {
        let (c, d) = (&*self.dom, &*self.cod);
        let nd = d.object_count();
        let bad = |msg: String| Err(Error::InvalidProfunctor(msg));
        if self.sets.len() != c.object_count() * nd
            || self.left.len() != c.arrow_count() * nd
            || self.right.len() != c.object_count() * d.arrow_count()
        {
            return bad("table sizes do not match the categories".into());
        }
        for f in 0..c.arrow_count() {
            for y in 0..nd {
                let m = &self.left[f * nd + y];
                let from = self.at(c.tgt(f), y).len();
                let to = self.at(c.src(f), y).len();
                if m.len() != from || m.iter().any(|&v| v >= to) {
                    return bad(format!("left action of {} at {} is not a map", c.arrow_name(f), d.object_name(y)));
                }
            }
        }
        for x in 0..c.object_count() {
            for g in 0..d.arrow_count() {
                let m = &self.right[x * d.arrow_count() + g];
                let from = self.at(x, d.src(g)).len();
                let to = self.at(x, d.tgt(g)).len();
                if m.len() != from || m.iter().any(|&v| v >= to) {
                    return bad(format!("right action of {} at {} is not a map", d.arrow_name(g), c.object_name(x)));
                }
            }
        }
        for x in 0..c.object_count() {
            for y in 0..nd {
                let size = self.at(x, y).len();
                for e in 0..size {
                    if self.act_left(c.identity(x), y, e) != e || self.act_right(x, d.identity(y), e) != e {
                        return bad(format!("identity acts non-trivially at ({}, {})", c.object_name(x), d.object_name(y)));
                    }
                }
            }
        }
        for f in 0..c.arrow_count() {
            for &f2 in c.arrows_from(c.tgt(f)) {
                let comp = c.comp(f2, f);
                for y in 0..nd {
                    for e in 0..self.at(c.tgt(f2), y).len() {
                        if self.act_left(comp, y, e) != self.act_left(f, y, self.act_left(f2, y, e)) {
                            return bad(format!("left action fails on {} . {}", c.arrow_name(f2), c.arrow_name(f)));
                        }
                    }
                }
            }
        }
        for g in 0..d.arrow_count() {
            for &g2 in d.arrows_from(d.tgt(g)) {
                let comp = d.comp(g2, g);
                for x in 0..c.object_count() {
                    for e in 0..self.at(x, d.src(g)).len() {
                        if self.act_right(x, comp, e) != self.act_right(x, g2, self.act_right(x, g, e)) {
                            return bad(format!("right action fails on {} . {}", d.arrow_name(g2), d.arrow_name(g)));
                        }
                    }
                }
            }
        }
        for f in 0..c.arrow_count() {
            for g in 0..d.arrow_count() {
                for e in 0..self.at(c.tgt(f), d.src(g)).len() {
                    let a = self.act_right(c.src(f), g, self.act_left(f, d.src(g), e));
                    let b = self.act_left(f, d.tgt(g), self.act_right(c.tgt(f), g, e));
                    if a != b {
                        return bad(format!(
                            "actions of {} and {} do not commute",
                            c.arrow_name(f),
                            d.arrow_name(g)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dom(&self) -> &Arc<FinCategory> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCategory> {
        &self.cod
    }

    #[inline]
    pub fn at(&self, c: ObjId, d: ObjId) -> &FinSet {
        &self.sets[c * self.cod.object_count() + d]
    }

    /// `M(f, d) : M(tgt f, d) -> M(src f, d)`.
    #[inline]
    pub fn act_left(&self, f: ArrowId, d: ObjId, x: usize) -> usize {
        self.left[f * self.cod.object_count() + d][x]
    }

    /// `M(c, g) : M(c, src g) -> M(c, tgt g)`.
    #[inline]
    pub fn act_right(&self, c: ObjId, g: ArrowId, x: usize) -> usize {
        self.right[c * self.cod.arrow_count() + g][x]
    }

    pub fn is_empty(&self) -> bool {
        self.sets.iter().all(FinSet::is_empty)
    }

    /// Total number of elements across all value sets.
    pub fn total_size(&self) -> usize {
        self.sets.iter().map(FinSet::len).sum()
    }
}

fn same_category(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A family of maps `M(c, d) -> N(c, d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfunctorMorphism {
    /// `components[c * |D| + d]`.
    pub components: Vec<Vec<usize>>,
}

impl ProfunctorMorphism {
    /// `Ok` when the components are maps commuting with both actions.
    pub fn check(&self, m: &Profunctor, n: &Profunctor) -> Result<()> {
        let (c, d) = (&*m.dom, &*m.cod);
        let nd = d.object_count();
        let bad = |msg: String| Err(Error::InvalidProfunctor(msg));
        if !same_category(&m.dom, &n.dom) || !same_category(&m.cod, &n.cod) {
            return bad("morphism between profunctors of different types".into());
        }
        for x in 0..c.object_count() {
            for y in 0..nd {
                let comp = &self.components[x * nd + y];
                if comp.len() != m.at(x, y).len() || comp.iter().any(|&v| v >= n.at(x, y).len()) {
                    return bad(format!("component at ({}, {}) is not a map", c.object_name(x), d.object_name(y)));
                }
            }
        }
        for f in 0..c.arrow_count() {
            for y in 0..nd {
                for e in 0..m.at(c.tgt(f), y).len() {
                    let a = self.components[c.src(f) * nd + y][m.act_left(f, y, e)];
                    let b = n.act_left(f, y, self.components[c.tgt(f) * nd + y][e]);
                    if a != b {
                        return bad(format!("not natural in the left action of {}", c.arrow_name(f)));
                    }
                }
            }
        }
        for x in 0..c.object_count() {
            for g in 0..d.arrow_count() {
                for e in 0..m.at(x, d.src(g)).len() {
                    let a = self.components[x * nd + d.tgt(g)][m.act_right(x, g, e)];
                    let b = n.act_right(x, g, self.components[x * nd + d.src(g)][e]);
                    if a != b {
                        return bad(format!("not natural in the right action of {}", d.arrow_name(g)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Every component is a bijection.
    pub fn is_bijective(&self, m: &Profunctor, n: &Profunctor) -> bool {
        let nd = m.cod.object_count();
        self.components.iter().enumerate().all(|(i, comp)| {
            let (x, y) = (i / nd, i % nd);
            if comp.len() != n.at(x, y).len() {
                return false;
            }
            let mut seen = vec![false; comp.len()];
            comp.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        })
    }

    /// A natural, componentwise bijective morphism.
    pub fn is_iso(&self, m: &Profunctor, n: &Profunctor) -> bool {
        self.check(m, n).is_ok() && self.is_bijective(m, n)
    }
}

/// `N . M` together with the coend data identifying its elements.
#[derive(Debug, Clone)]
pub struct Composite {
    pub profunctor: Profunctor,
    /// `quotients[c * |E| + e]`: the coend over `d` of `N(d, e) x M(c, d)`.
    quotients: Vec<Coend>,
    /// `|M(c, d)|`, used to decode pair indices.
    m_sizes: Vec<usize>,
    nd: usize,
    ne: usize,
}

impl Composite {
    /// Class in `(N . M)(c, e)` of the triple `(d, n, m)`.
    pub fn class_of(&self, c: ObjId, e: ObjId, d: ObjId, n: usize, m: usize) -> usize {
        let width = self.m_sizes[c * self.nd + d];
        self.quotients[c * self.ne + e].class(d, n * width + m)
    }

    /// Least representative `(d, n, m)` of a class of `(N . M)(c, e)`.
    pub fn representative(&self, c: ObjId, e: ObjId, class: usize) -> (ObjId, usize, usize) {
        let (d, i) = self.quotients[c * self.ne + e].representative(class);
        let width = self.m_sizes[c * self.nd + d];
        (d, i / width, i % width)
    }
}

/// Composite in Prof: `(N . M)(c, e) = coend_d N(d, e) x M(c, d)`.
pub fn compose_profunctors(m: &Profunctor, n: &Profunctor) -> Result<Composite> {
    if !same_category(&m.cod, &n.dom) {
        return Err(Error::InvalidProfunctor("middle categories differ".into()));
    }
    let (cc, dd, ee) = (&m.dom, &m.cod, &n.cod);
    let (nc, nd, ne) = (cc.object_count(), dd.object_count(), ee.object_count());
    let mut m_sizes = Vec::with_capacity(nc * nd);
    for c in 0..nc {
        for d in 0..nd {
            m_sizes.push(m.at(c, d).len());
        }
    }
    let mut quotients = Vec::with_capacity(nc * ne);
    for c in 0..nc {
        for e in 0..ne {
            // H(d1, d2) = N(d1, e) x M(c, d2)
            let sets: Vec<FinSet> = (0..nd)
                .flat_map(|d1| (0..nd).map(move |d2| (d1, d2)))
                .map(|(d1, d2)| product_labels(n.at(d1, e), m.at(c, d2)))
                .collect();
            let h = Profunctor::from_actions(
                dd.clone(),
                dd.clone(),
                sets,
                |g, d2, i| {
                    let w = m.at(c, d2).len();
                    n.act_left(g, e, i / w) * w + i % w
                },
                |d1, g, i| {
                    let (w_in, w_out) = (m.at(c, dd.src(g)).len(), m.at(c, dd.tgt(g)).len());
                    let _ = d1;
                    (i / w_in) * w_out + m.act_right(c, g, i % w_in)
                },
            )?;
            quotients.push(coend(&h));
        }
    }
    let mut sets = Vec::with_capacity(nc * ne);
    for c in 0..nc {
        for e in 0..ne {
            let q = &quotients[c * ne + e];
            sets.push(q.set().clone());
        }
    }
    let partial = Composite {
        profunctor: Profunctor {
            dom: cc.clone(),
            cod: ee.clone(),
            sets: Vec::new(),
            left: Vec::new(),
            right: Vec::new(),
        },
        quotients,
        m_sizes,
        nd,
        ne,
    };
    let profunctor = Profunctor::from_actions(
        cc.clone(),
        ee.clone(),
        sets,
        |f, e, class| {
            let (d, nn, mm) = partial.representative(cc.tgt(f), e, class);
            partial.class_of(cc.src(f), e, d, nn, m.act_left(f, d, mm))
        },
        |c, h, class| {
            let (d, nn, mm) = partial.representative(c, ee.src(h), class);
            partial.class_of(c, ee.tgt(h), d, n.act_right(d, h, nn), mm)
        },
    )?;
    Ok(Composite { profunctor, ..partial })
}

fn product_labels(a: &FinSet, b: &FinSet) -> FinSet {
    let mut labels = Vec::with_capacity(a.len() * b.len());
    for x in a.labels() {
        for y in b.labels() {
            labels.push(format!("({x},{y})"));
        }
    }
    FinSet::from_labels_unchecked(labels)
}

/// Canonical `Hom_D . M -> M`, `[(d', g, m)] |-> M(c, g)(m)`.
pub fn left_unitor(m: &Profunctor) -> Result<(Composite, ProfunctorMorphism)> {
    let hom = Profunctor::hom(m.cod.clone());
    let comp = compose_profunctors(m, &hom)?;
    let (nc, nd) = (m.dom.object_count(), m.cod.object_count());
    let mut components = Vec::with_capacity(nc * nd);
    for c in 0..nc {
        for d in 0..nd {
            let size = comp.profunctor.at(c, d).len();
            components.push(
                (0..size)
                    .map(|k| {
                        let (d2, gi, mi) = comp.representative(c, d, k);
                        let g = m.cod.hom(d2, d)[gi];
                        m.act_right(c, g, mi)
                    })
                    .collect(),
            );
        }
    }
    Ok((comp, ProfunctorMorphism { components }))
}

/// Canonical `M . Hom_C -> M`, `[(c', m, f)] |-> M(f, d)(m)`.
pub fn right_unitor(m: &Profunctor) -> Result<(Composite, ProfunctorMorphism)> {
    let hom = Profunctor::hom(m.dom.clone());
    let comp = compose_profunctors(&hom, m)?;
    let (nc, nd) = (m.dom.object_count(), m.cod.object_count());
    let mut components = Vec::with_capacity(nc * nd);
    for c in 0..nc {
        for d in 0..nd {
            let size = comp.profunctor.at(c, d).len();
            components.push(
                (0..size)
                    .map(|k| {
                        let (c2, mi, fi) = comp.representative(c, d, k);
                        let f = m.dom.hom(c, c2)[fi];
                        m.act_left(f, d, mi)
                    })
                    .collect(),
            );
        }
    }
    Ok((comp, ProfunctorMorphism { components }))
}

/// The canonical comparison `(P . N) . M -> P . (N . M)`.
pub struct Associator {
    pub left: Composite,
    pub right: Composite,
    pub morphism: ProfunctorMorphism,
}

pub fn associator(m: &Profunctor, n: &Profunctor, p: &Profunctor) -> Result<Associator> {
    let pn = compose_profunctors(n, p)?;
    let left = compose_profunctors(m, &pn.profunctor)?;
    let nm = compose_profunctors(m, n)?;
    let right = compose_profunctors(&nm.profunctor, p)?;
    let (nc, nf) = (m.dom.object_count(), p.cod.object_count());
    let mut components = Vec::with_capacity(nc * nf);
    for c in 0..nc {
        for f in 0..nf {
            let size = left.profunctor.at(c, f).len();
            components.push(
                (0..size)
                    .map(|k| {
                        let (d, pn_class, mi) = left.representative(c, f, k);
                        let (e, pi, ni) = pn.representative(d, f, pn_class);
                        let nm_class = nm.class_of(c, e, d, ni, mi);
                        right.class_of(c, f, e, pi, nm_class)
                    })
                    .collect(),
            );
        }
    }
    Ok(Associator {
        left,
        right,
        morphism: ProfunctorMorphism { components },
    })
}
