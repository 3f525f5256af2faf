//! Presheaves and copresheaves over finite categories, natural
//! transformations between them, (co)ends and flatness.

mod elements;
mod ends;
mod samples;
mod tensor;

use std::sync::Arc;

pub use elements::{cofiltered_check, elements, filtered_check, flat_check, Elements, FlatWitness};
pub use ends::{coend, end, hom_bifunctor, Bifunctor, Coend, End, Quotient};
pub use samples::{copresheaf_samples, presheaf_samples};
pub use tensor::{profunctor_to_functor, Tensor};

use crate::category::{ArrowId, FinCategory, FinSet, ObjId};
use crate::error::{Error, Result};
use crate::guard::{SearchBudget, SizeGuard};
use crate::search::FamilySearch;

/// Checks that `maps` is a functorial action on `sets`. A covariant action
/// sends `F(src f) -> F(tgt f)`, a contravariant one `F(tgt f) -> F(src f)`.
fn check_action(base: &FinCategory, sets: &[FinSet], maps: &[Vec<usize>], covariant: bool) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidPresheaf(msg));
    if sets.len() != base.object_count() || maps.len() != base.arrow_count() {
        return bad("one value per object and one map per arrow required".into());
    }
    let ends = |f: ArrowId| {
        if covariant {
            (base.src(f), base.tgt(f))
        } else {
            (base.tgt(f), base.src(f))
        }
    };
    for f in 0..base.arrow_count() {
        let (from, to) = ends(f);
        if maps[f].len() != sets[from].len() || maps[f].iter().any(|&v| v >= sets[to].len()) {
            return bad(format!("action of {} is not a map between the right sets", base.arrow_name(f)));
        }
    }
    for o in 0..base.object_count() {
        let id = base.identity(o);
        if maps[id].iter().enumerate().any(|(i, &v)| i != v) {
            return bad(format!("identity of {} acts non-trivially", base.object_name(o)));
        }
    }
    for f in 0..base.arrow_count() {
        for &g in base.arrows_from(base.tgt(f)) {
            let gf = base.comp(g, f);
            let (first, second) = if covariant { (f, g) } else { (g, f) };
            for x in 0..maps[first].len() {
                if maps[gf][x] != maps[second][maps[first][x]] {
                    return bad(format!(
                        "action does not respect {} . {}",
                        base.arrow_name(g),
                        base.arrow_name(f)
                    ));
                }
            }
        }
    }
    Ok(())
}

/// A functor `C^op -> FinSet`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presheaf {
    base: Arc<FinCategory>,
    sets: Vec<FinSet>,
    /// `maps[f] : F(tgt f) -> F(src f)`.
    maps: Vec<Vec<usize>>,
}

impl Presheaf {
    pub fn new(base: Arc<FinCategory>, sets: Vec<FinSet>, maps: Vec<Vec<usize>>) -> Result<Self> {
        check_action(&base, &sets, &maps, false)?;
        Ok(Presheaf { base, sets, maps })
    }

    /// Builds the restriction maps from `act(f, x)` for `x` in `F(tgt f)`.
    pub fn from_fn(base: Arc<FinCategory>, sets: Vec<FinSet>, act: impl Fn(ArrowId, usize) -> usize) -> Result<Self> {
        if sets.len() != base.object_count() {
            return Err(Error::InvalidPresheaf("one value per object required".into()));
        }
        let maps = (0..base.arrow_count())
            .map(|f| (0..sets[base.tgt(f)].len()).map(|x| act(f, x)).collect())
            .collect();
        Self::new(base, sets, maps)
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    #[inline]
    pub fn at(&self, c: ObjId) -> &FinSet {
        &self.sets[c]
    }

    pub fn sets(&self) -> &[FinSet] {
        &self.sets
    }

    /// `F(f)(x)` for `x` in `F(tgt f)`.
    #[inline]
    pub fn act(&self, f: ArrowId, x: usize) -> usize {
        self.maps[f][x]
    }

    pub fn map(&self, f: ArrowId) -> &[usize] {
        &self.maps[f]
    }

    pub fn total_size(&self) -> usize {
        self.sets.iter().map(FinSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.iter().all(FinSet::is_empty)
    }

    /// The constant singleton presheaf.
    pub fn terminal(base: Arc<FinCategory>) -> Self {
        let n = base.object_count();
        Self::from_fn(base, vec![FinSet::singleton("*"); n], |_, _| 0).expect("terminal presheaf")
    }

    pub fn empty(base: Arc<FinCategory>) -> Self {
        let n = base.object_count();
        Self::from_fn(base, vec![FinSet::empty(); n], |_, _| 0).expect("empty presheaf")
    }

    /// Pointwise product, elements labelled `(x,y)` and indexed `x * |G| + y`.
    pub fn product(&self, other: &Presheaf) -> Result<Presheaf> {
        same_base(&self.base, &other.base)?;
        let sets = (0..self.sets.len()).map(|c| product_set(&self.sets[c], &other.sets[c])).collect();
        Self::from_fn(self.base.clone(), sets, |f, i| {
            let w = other.sets[self.base.tgt(f)].len();
            let w2 = other.sets[self.base.src(f)].len();
            self.act(f, i / w) * w2 + other.act(f, i % w)
        })
    }

    /// Pointwise coproduct, elements labelled `0:x` then `1:y`.
    pub fn coproduct(&self, other: &Presheaf) -> Result<Presheaf> {
        same_base(&self.base, &other.base)?;
        let sets = (0..self.sets.len()).map(|c| coproduct_set(&self.sets[c], &other.sets[c])).collect();
        Self::from_fn(self.base.clone(), sets, |f, i| {
            let n = self.sets[self.base.tgt(f)].len();
            if i < n {
                self.act(f, i)
            } else {
                self.sets[self.base.src(f)].len() + other.act(f, i - n)
            }
        })
    }
}

/// A functor `A -> FinSet`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Copresheaf {
    base: Arc<FinCategory>,
    sets: Vec<FinSet>,
    /// `maps[f] : F(src f) -> F(tgt f)`.
    maps: Vec<Vec<usize>>,
}

impl Copresheaf {
    pub fn new(base: Arc<FinCategory>, sets: Vec<FinSet>, maps: Vec<Vec<usize>>) -> Result<Self> {
        check_action(&base, &sets, &maps, true)?;
        Ok(Copresheaf { base, sets, maps })
    }

    /// Builds the maps from `act(f, x)` for `x` in `F(src f)`.
    pub fn from_fn(base: Arc<FinCategory>, sets: Vec<FinSet>, act: impl Fn(ArrowId, usize) -> usize) -> Result<Self> {
        if sets.len() != base.object_count() {
            return Err(Error::InvalidPresheaf("one value per object required".into()));
        }
        let maps = (0..base.arrow_count())
            .map(|f| (0..sets[base.src(f)].len()).map(|x| act(f, x)).collect())
            .collect();
        Self::new(base, sets, maps)
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    #[inline]
    pub fn at(&self, c: ObjId) -> &FinSet {
        &self.sets[c]
    }

    pub fn sets(&self) -> &[FinSet] {
        &self.sets
    }

    /// `F(f)(x)` for `x` in `F(src f)`.
    #[inline]
    pub fn act(&self, f: ArrowId, x: usize) -> usize {
        self.maps[f][x]
    }

    pub fn map(&self, f: ArrowId) -> &[usize] {
        &self.maps[f]
    }

    pub fn total_size(&self) -> usize {
        self.sets.iter().map(FinSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.iter().all(FinSet::is_empty)
    }

    pub fn terminal(base: Arc<FinCategory>) -> Self {
        let n = base.object_count();
        Self::from_fn(base, vec![FinSet::singleton("*"); n], |_, _| 0).expect("terminal copresheaf")
    }

    pub fn empty(base: Arc<FinCategory>) -> Self {
        let n = base.object_count();
        Self::from_fn(base, vec![FinSet::empty(); n], |_, _| 0).expect("empty copresheaf")
    }

    /// The corepresentable `A(a, -)`.
    pub fn corepresentable(base: Arc<FinCategory>, a: ObjId) -> Self {
        let sets = (0..base.object_count())
            .map(|x| FinSet::from_labels_unchecked(base.hom(a, x).iter().map(|&h| base.arrow_name(h).to_string()).collect()))
            .collect();
        let b = base.clone();
        Self::from_fn(base, sets, |f, i| {
            let h = b.hom(a, b.src(f))[i];
            position(b.hom(a, b.tgt(f)), b.comp(f, h))
        })
        .expect("corepresentable copresheaf")
    }

    pub fn product(&self, other: &Copresheaf) -> Result<Copresheaf> {
        same_base(&self.base, &other.base)?;
        let sets = (0..self.sets.len()).map(|c| product_set(&self.sets[c], &other.sets[c])).collect();
        Self::from_fn(self.base.clone(), sets, |f, i| {
            let w = other.sets[self.base.src(f)].len();
            let w2 = other.sets[self.base.tgt(f)].len();
            self.act(f, i / w) * w2 + other.act(f, i % w)
        })
    }

    pub fn coproduct(&self, other: &Copresheaf) -> Result<Copresheaf> {
        same_base(&self.base, &other.base)?;
        let sets = (0..self.sets.len()).map(|c| coproduct_set(&self.sets[c], &other.sets[c])).collect();
        Self::from_fn(self.base.clone(), sets, |f, i| {
            let n = self.sets[self.base.src(f)].len();
            if i < n {
                self.act(f, i)
            } else {
                self.sets[self.base.tgt(f)].len() + other.act(f, i - n)
            }
        })
    }
}

pub(crate) fn position(list: &[usize], x: usize) -> usize {
    list.iter().position(|&y| y == x).expect("element present")
}

pub(crate) fn same_base(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::InvalidPresheaf("functors live over different categories".into()))
    }
}

pub(crate) fn product_set(a: &FinSet, b: &FinSet) -> FinSet {
    let mut labels = Vec::with_capacity(a.len() * b.len());
    for x in a.labels() {
        for y in b.labels() {
            labels.push(format!("({x},{y})"));
        }
    }
    FinSet::from_labels_unchecked(labels)
}

fn coproduct_set(a: &FinSet, b: &FinSet) -> FinSet {
    let labels = a
        .labels()
        .iter()
        .map(|x| format!("0:{x}"))
        .chain(b.labels().iter().map(|y| format!("1:{y}")))
        .collect();
    FinSet::from_labels_unchecked(labels)
}

/// The representable presheaf `C(-, c)`, elements labelled by arrow names.
pub fn yoneda(base: &Arc<FinCategory>, c: ObjId) -> Presheaf {
    let sets = (0..base.object_count())
        .map(|x| FinSet::from_labels_unchecked(base.hom(x, c).iter().map(|&h| base.arrow_name(h).to_string()).collect()))
        .collect();
    Presheaf::from_fn(base.clone(), sets, |f, i| {
        let h = base.hom(base.tgt(f), c)[i];
        position(base.hom(base.src(f), c), base.comp(h, f))
    })
    .expect("representable presheaf")
}

/// A family of component maps, one per object of the base.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NatTrans {
    pub components: Vec<Vec<usize>>,
}

impl NatTrans {
    pub fn identity(sets: &[FinSet]) -> Self {
        NatTrans {
            components: sets.iter().map(|s| (0..s.len()).collect()).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, c: ObjId, x: usize) -> usize {
        self.components[c][x]
    }

    /// `other . self`.
    pub fn then(&self, other: &NatTrans) -> NatTrans {
        NatTrans {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.iter().map(|&x| b[x]).collect())
                .collect(),
        }
    }

    fn check(&self, base: &FinCategory, f_sets: &[FinSet], g_sets: &[FinSet], naturality: impl Fn(ArrowId, usize) -> bool) -> Result<()> {
        if self.components.len() != base.object_count() {
            return Err(Error::InvalidNatTrans("one component per object required".into()));
        }
        for c in 0..base.object_count() {
            let comp = &self.components[c];
            if comp.len() != f_sets[c].len() || comp.iter().any(|&v| v >= g_sets[c].len()) {
                return Err(Error::InvalidNatTrans(format!("component at {} is not a map", base.object_name(c))));
            }
        }
        for f in 0..base.arrow_count() {
            let n = f_sets[base.tgt(f)].len().max(f_sets[base.src(f)].len());
            if (0..n).any(|x| !naturality(f, x)) {
                return Err(Error::InvalidNatTrans(format!("naturality fails at {}", base.arrow_name(f))));
            }
        }
        Ok(())
    }

    pub fn check_presheaf(&self, f: &Presheaf, g: &Presheaf) -> Result<()> {
        same_base(&f.base, &g.base)?;
        let base = &f.base;
        self.check(base, &f.sets, &g.sets, |a, x| {
            x >= f.sets[base.tgt(a)].len() || self.apply(base.src(a), f.act(a, x)) == g.act(a, self.apply(base.tgt(a), x))
        })
    }

    pub fn check_copresheaf(&self, f: &Copresheaf, g: &Copresheaf) -> Result<()> {
        same_base(&f.base, &g.base)?;
        let base = &f.base;
        self.check(base, &f.sets, &g.sets, |a, x| {
            x >= f.sets[base.src(a)].len() || self.apply(base.tgt(a), f.act(a, x)) == g.act(a, self.apply(base.src(a), x))
        })
    }

    /// Every component is a bijection onto `targets`.
    pub fn is_bijective(&self, targets: &[FinSet]) -> bool {
        self.components.iter().zip(targets).all(|(comp, t)| {
            if comp.len() != t.len() {
                return false;
            }
            let mut seen = vec![false; t.len()];
            comp.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        })
    }

    pub fn inverse(&self) -> Option<NatTrans> {
        let mut components = Vec::with_capacity(self.components.len());
        for comp in &self.components {
            let mut inv = vec![usize::MAX; comp.len()];
            for (x, &y) in comp.iter().enumerate() {
                if y >= inv.len() || inv[y] != usize::MAX {
                    return None;
                }
                inv[y] = x;
            }
            components.push(inv);
        }
        Some(NatTrans { components })
    }
}

/// Search for all natural families `F => G`. `from(f)` is the object whose
/// value `F(f)` reads, `to(f)` the one it writes.
fn enumerate_natural(
    base: &FinCategory,
    f_sets: &[FinSet],
    g_sets: &[FinSet],
    f_map: impl Fn(ArrowId) -> Vec<usize>,
    g_map: impl Fn(ArrowId) -> Vec<usize>,
    covariant: bool,
    guard: &SizeGuard,
) -> Result<Vec<NatTrans>> {
    let n = base.object_count();
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    for s in f_sets {
        offsets.push(offsets.last().unwrap() + s.len());
    }
    let mut domains = Vec::with_capacity(offsets[n]);
    for c in 0..n {
        domains.extend(std::iter::repeat(g_sets[c].len()).take(f_sets[c].len()));
    }
    let mut search = FamilySearch::new(domains);
    for a in 0..base.arrow_count() {
        if base.is_identity(a) {
            continue;
        }
        let (from, to) = if covariant {
            (base.src(a), base.tgt(a))
        } else {
            (base.tgt(a), base.src(a))
        };
        let fa = f_map(a);
        let table = search.table(g_map(a));
        for (x, &y) in fa.iter().enumerate() {
            search.forced(offsets[to] + y, offsets[from] + x, table);
        }
    }
    let mut budget = SearchBudget::new(guard, "natural transformation search nodes");
    let solutions = search.solve(&mut budget)?;
    Ok(solutions
        .into_iter()
        .map(|flat| NatTrans {
            components: (0..n).map(|c| flat[offsets[c]..offsets[c + 1]].to_vec()).collect(),
        })
        .collect())
}

/// All natural transformations `F => G` of presheaves, in canonical order.
pub fn nat_trans_set(f: &Presheaf, g: &Presheaf, guard: &SizeGuard) -> Result<Vec<NatTrans>> {
    same_base(&f.base, &g.base)?;
    enumerate_natural(&f.base, &f.sets, &g.sets, |a| f.maps[a].clone(), |a| g.maps[a].clone(), false, guard)
}

/// All natural transformations `F => G` of copresheaves, in canonical order.
pub fn copresheaf_nat_trans_set(f: &Copresheaf, g: &Copresheaf, guard: &SizeGuard) -> Result<Vec<NatTrans>> {
    same_base(&f.base, &g.base)?;
    enumerate_natural(&f.base, &f.sets, &g.sets, |a| f.maps[a].clone(), |a| g.maps[a].clone(), true, guard)
}

/// The Yoneda transformation `C(-, c) => F` determined by `x` in `F(c)`.
pub fn yoneda_transform(f: &Presheaf, c: ObjId, x: usize) -> NatTrans {
    let base = &f.base;
    NatTrans {
        components: (0..base.object_count())
            .map(|d| base.hom(d, c).iter().map(|&h| f.act(h, x)).collect())
            .collect(),
    }
}

/// The Yoneda comparison `Nat(C(-, c), F) -> F(c)`, `a |-> a_c(id_c)`.
pub fn yoneda_evaluate(base: &FinCategory, c: ObjId, alpha: &NatTrans) -> usize {
    let id_pos = position(base.hom(c, c), base.identity(c));
    alpha.apply(c, id_pos)
}
