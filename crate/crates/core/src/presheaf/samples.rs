use std::sync::Arc;

use super::{yoneda, Copresheaf, Presheaf};
use crate::category::FinCategory;

/// Representables, binary coproducts `c ⊔ c'` for `c <= c'` (by id), the
/// terminal and the empty presheaf, each with a descriptive name.
pub fn presheaf_samples(base: &Arc<FinCategory>) -> Vec<(String, Presheaf)> {
    let n = base.object_count();
    let reps: Vec<Presheaf> = (0..n).map(|c| yoneda(base, c)).collect();
    let mut out = Vec::new();
    for (c, r) in reps.iter().enumerate() {
        out.push((format!("y({})", base.object_name(c)), r.clone()));
    }
    for c in 0..n {
        for d in c..n {
            let p = reps[c].coproduct(&reps[d]).expect("same base");
            out.push((format!("y({}) + y({})", base.object_name(c), base.object_name(d)), p));
        }
    }
    out.push(("terminal".into(), Presheaf::terminal(base.clone())));
    out.push(("empty".into(), Presheaf::empty(base.clone())));
    out
}

/// The covariant counterpart of [`presheaf_samples`], built from
/// corepresentables.
pub fn copresheaf_samples(base: &Arc<FinCategory>) -> Vec<(String, Copresheaf)> {
    let n = base.object_count();
    let reps: Vec<Copresheaf> = (0..n).map(|c| Copresheaf::corepresentable(base.clone(), c)).collect();
    let mut out = Vec::new();
    for (c, r) in reps.iter().enumerate() {
        out.push((format!("hom({}, -)", base.object_name(c)), r.clone()));
    }
    for c in 0..n {
        for d in c..n {
            let p = reps[c].coproduct(&reps[d]).expect("same base");
            out.push((format!("hom({}, -) + hom({}, -)", base.object_name(c), base.object_name(d)), p));
        }
    }
    out.push(("terminal".into(), Copresheaf::terminal(base.clone())));
    out.push(("empty".into(), Copresheaf::empty(base.clone())));
    out
}
