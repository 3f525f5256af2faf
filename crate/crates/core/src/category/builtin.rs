//! Generators for the standard small categories used throughout the crate.

use std::collections::HashMap;
use std::str::FromStr;

use super::{identity_name, Arrow, FinCategory};
use crate::error::{Error, Result};
use crate::guard::SizeGuard;
use crate::poset::{poset_as_category, FinPoset};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// Truncated simplex category: `[0] .. [n]` and all monotone maps.
    Simplex,
    /// Reflexive globe category truncated at dimension `n`.
    Globe,
    /// The chain `0 < 1 < .. < n` as a thin category.
    Chain,
    /// The cyclic group of order `n` as a one-object category.
    MonoidTable,
    /// `n` objects and identities only.
    Discrete,
    Terminal,
    WalkingArrow,
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "simplex" => Builtin::Simplex,
            "globe" => Builtin::Globe,
            "chain" => Builtin::Chain,
            "monoid-table" => Builtin::MonoidTable,
            "discrete" => Builtin::Discrete,
            "terminal" => Builtin::Terminal,
            "walking-arrow" => Builtin::WalkingArrow,
            other => return Err(Error::InvalidCategory(format!("unknown builtin {other}"))),
        })
    }
}

/// Builds the named category with parameter `n`.
pub fn builtin(kind: Builtin, n: usize, guard: &SizeGuard) -> Result<FinCategory> {
    match kind {
        Builtin::Simplex => simplex(n, guard),
        Builtin::Globe => globe(n, guard),
        Builtin::Chain => {
            let c = poset_as_category(&FinPoset::chain(n + 1), guard)?;
            Ok(c.with_grading((0..=n).collect()))
        }
        Builtin::MonoidTable => cyclic_monoid(n, guard),
        Builtin::Discrete => discrete(n, guard),
        Builtin::Terminal => discrete(1, guard),
        Builtin::WalkingArrow => builtin(Builtin::Chain, 1, guard),
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

fn monotone_maps(from: usize, to: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, lo: usize, to: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=to {
            cur.push(v);
            go(len, v, to, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(from + 1, 0, to, &mut Vec::new(), &mut out);
    out
}

fn simplex(n: usize, guard: &SizeGuard) -> Result<FinCategory> {
    guard.check_objects(n + 1)?;
    let mut total: u128 = 0;
    for j in 0..=n as u128 {
        for k in 0..=n as u128 {
            total = total.saturating_add(binomial(j + k + 1, j + 1));
        }
    }
    if total > guard.max_arrows as u128 {
        return Err(Error::guard("arrows", total, guard.max_arrows as u128));
    }
    let objects: Vec<String> = (0..=n).map(|k| k.to_string()).collect();
    let mut arrows = Vec::new();
    let mut maps = Vec::new();
    let mut index = HashMap::new();
    let mut identities = vec![0; n + 1];
    for j in 0..=n {
        for k in 0..=n {
            for m in monotone_maps(j, k) {
                let is_id = j == k && m.iter().enumerate().all(|(i, &v)| i == v);
                let name = if is_id {
                    identities[j] = arrows.len();
                    identity_name(&objects[j])
                } else {
                    let digits: Vec<String> = m.iter().map(|v| v.to_string()).collect();
                    let sep = if n >= 10 { "-" } else { "" };
                    format!("f{j}{k}_{}", digits.join(sep))
                };
                index.insert((j, k, m.clone()), arrows.len());
                arrows.push(Arrow { name, src: j, tgt: k });
                maps.push(m);
            }
        }
    }
    let cat = FinCategory::from_parts(
        objects,
        arrows.clone(),
        identities,
        |g, f| {
            let composite: Vec<usize> = maps[f].iter().map(|&i| maps[g][i]).collect();
            index[&(arrows[f].src, arrows[g].tgt, composite)]
        },
        guard,
    )?;
    Ok(cat.with_grading((0..=n).collect()))
}

/// Normal form of a reflexive-globe arrow `j -> k`: degenerate down to
/// dimension `m`, then climb to `k` starting with a source (`Some(false)`) or
/// target (`Some(true)`) face. `face` is `None` exactly when `m == k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct GlobeArrow {
    j: usize,
    k: usize,
    m: usize,
    face: Option<bool>,
}

impl GlobeArrow {
    fn then(self, b: GlobeArrow) -> GlobeArrow {
        debug_assert_eq!(self.k, b.j);
        if b.m < self.m {
            GlobeArrow {
                j: self.j,
                k: b.k,
                m: b.m,
                face: b.face,
            }
        } else {
            let face = if self.m == b.k {
                None
            } else if self.m < b.m {
                self.face
            } else {
                b.face
            };
            GlobeArrow {
                j: self.j,
                k: b.k,
                m: self.m,
                face,
            }
        }
    }

    fn name(&self) -> String {
        let tag = match self.face {
            None => "",
            Some(false) => "s",
            Some(true) => "t",
        };
        format!("g{}{}_{}{}", self.j, self.k, self.m, tag)
    }
}

fn globe(n: usize, guard: &SizeGuard) -> Result<FinCategory> {
    guard.check_objects(n + 1)?;
    let objects: Vec<String> = (0..=n).map(|k| k.to_string()).collect();
    let mut arrows = Vec::new();
    let mut forms = Vec::new();
    let mut index = HashMap::new();
    let mut identities = vec![0; n + 1];
    for j in 0..=n {
        for k in 0..=n {
            for m in 0..=j.min(k) {
                let faces: &[Option<bool>] = if m == k { &[None] } else { &[Some(false), Some(true)] };
                for &face in faces {
                    let a = GlobeArrow { j, k, m, face };
                    let name = if j == k && m == k {
                        identities[j] = arrows.len();
                        identity_name(&objects[j])
                    } else {
                        a.name()
                    };
                    index.insert(a, arrows.len());
                    arrows.push(Arrow { name, src: j, tgt: k });
                    forms.push(a);
                }
            }
        }
    }
    guard.check_arrows(arrows.len())?;
    let cat = FinCategory::from_parts(objects, arrows, identities, |g, f| index[&forms[f].then(forms[g])], guard)?;
    Ok(cat.with_grading((0..=n).collect()))
}

fn cyclic_monoid(n: usize, guard: &SizeGuard) -> Result<FinCategory> {
    if n == 0 {
        return Err(Error::InvalidCategory("monoid-table needs order at least 1".into()));
    }
    guard.check_arrows(n)?;
    let arrows = (0..n)
        .map(|i| Arrow {
            name: if i == 0 { identity_name("*") } else { format!("g{i}") },
            src: 0,
            tgt: 0,
        })
        .collect();
    FinCategory::from_parts(vec!["*".into()], arrows, vec![0], |g, f| (g + f) % n, guard)
}

fn discrete(n: usize, guard: &SizeGuard) -> Result<FinCategory> {
    guard.check_objects(n)?;
    let objects: Vec<String> = (0..n).map(|k| k.to_string()).collect();
    let arrows = objects
        .iter()
        .enumerate()
        .map(|(i, o)| Arrow {
            name: identity_name(o),
            src: i,
            tgt: i,
        })
        .collect();
    let cat = FinCategory::from_parts(objects, arrows, (0..n).collect(), |g, _| g, guard)?;
    Ok(cat.with_grading(vec![0; n]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> SizeGuard {
        SizeGuard::default()
    }

    /// Independent count of monotone maps `[j] -> [k]` by filtering all
    /// functions.
    fn brute_monotone_count(j: usize, k: usize) -> usize {
        let len = j + 1;
        let base = k + 1;
        let total = base.pow(len as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let mut vals = Vec::with_capacity(len);
                for _ in 0..len {
                    vals.push(c % base);
                    c /= base;
                }
                vals.windows(2).all(|w| w[0] <= w[1])
            })
            .count()
    }

    #[test]
    fn simplex_zero_is_terminal() {
        let c = builtin(Builtin::Simplex, 0, &g()).unwrap();
        assert_eq!((c.object_count(), c.arrow_count()), (1, 1));
    }

    #[test]
    fn simplex_one_has_seven_arrows() {
        let c = builtin(Builtin::Simplex, 1, &g()).unwrap();
        assert_eq!(c.object_count(), 2);
        let counts: Vec<usize> = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .iter()
            .map(|&(a, b)| c.hom(a, b).len())
            .collect();
        assert_eq!(counts, vec![1, 2, 1, 3]);
        assert_eq!(c.arrow_count(), 7);
    }

    #[test]
    fn simplex_hom_sizes_match_brute_force() {
        let c = builtin(Builtin::Simplex, 3, &g()).unwrap();
        for j in 0..=3 {
            for k in 0..=3 {
                assert_eq!(c.hom(j, k).len(), brute_monotone_count(j, k), "[{j}] -> [{k}]");
            }
        }
        assert_eq!(c.arrow_count(), 121);
    }

    #[test]
    fn simplex_guard_trips_before_building() {
        let guard = SizeGuard {
            max_arrows: 100,
            ..g()
        };
        assert!(matches!(
            builtin(Builtin::Simplex, 3, &guard),
            Err(Error::SizeGuardExceeded { .. })
        ));
    }

    #[test]
    fn chain_two_is_three_chain() {
        let c = builtin(Builtin::Chain, 2, &g()).unwrap();
        let p = poset_as_category(&FinPoset::chain(3), &g()).unwrap();
        assert_eq!(c.to_raw(), p.to_raw());
        assert_eq!(c.arrow_count(), 6);
    }

    #[test]
    fn globe_satisfies_globular_and_reflexive_relations() {
        let c = builtin(Builtin::Globe, 2, &g()).unwrap();
        let a = |name: &str| c.arrow_id(name).unwrap();
        // source/target faces 0 -> 1 and 1 -> 2, reflexivity 1 -> 0 and 2 -> 1
        let (s0, t0, s1, t1) = (a("g01_0s"), a("g01_0t"), a("g12_1s"), a("g12_1t"));
        let (r0, r1) = (a("g10_0"), a("g21_1"));
        assert_eq!(c.comp(s1, s0), c.comp(t1, s0));
        assert_eq!(c.comp(s1, t0), c.comp(t1, t0));
        assert_eq!(c.comp(r0, s0), c.identity(0));
        assert_eq!(c.comp(r0, t0), c.identity(0));
        assert_eq!(c.comp(r1, s1), c.identity(1));
        assert_ne!(c.comp(s1, s0), c.comp(s1, t0));
        assert_eq!(c.hom(1, 1).len(), 3);
    }

    #[test]
    fn globe_one_counts() {
        let c = builtin(Builtin::Globe, 1, &g()).unwrap();
        assert_eq!(c.arrow_count(), 7);
    }

    #[test]
    fn cyclic_monoid_composes_mod_n() {
        let c = builtin(Builtin::MonoidTable, 3, &g()).unwrap();
        let g1 = c.arrow_id("g1").unwrap();
        let g2 = c.arrow_id("g2").unwrap();
        assert_eq!(c.comp(g1, g2), c.identity(0));
        assert_eq!(c.comp(g1, g1), g2);
    }

    #[test]
    fn discrete_has_identities_only() {
        let c = builtin(Builtin::Discrete, 3, &g()).unwrap();
        assert_eq!(c.arrow_count(), 3);
        assert!(c.hom(0, 1).is_empty());
    }
}
