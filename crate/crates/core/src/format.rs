//! Line-based text formats for categories, posets and sample suites.
//!
//! Everything after `#` on a line is a comment; blank lines are ignored.
//!
//! Category files:
//!
//! ```text
//! object <id>
//! arrow <id> : <src> -> <tgt>
//! compose <g> . <f> = <h>
//! ```
//!
//! Identities are implicit and named `id_<object>`; `compose` lines list
//! only composites of non-identity arrows.
//!
//! Poset files: `element <id>` and `le <a> <b>`. The relation is closed
//! reflexively and transitively, then checked for antisymmetry.
//!
//! Sample suites hold presheaves (or copresheaves) over a category given
//! elsewhere:
//!
//! ```text
//! presheaf <name>
//! at <object> = {x, y}
//! map <arrow> : <x> -> <y>
//! ```
//!
//! `map f : x -> y` reads `F(f)(x) = y`, with `x` in `F(tgt f)` for a
//! presheaf and in `F(src f)` for a copresheaf. Objects without an `at`
//! line get the empty set; identities act trivially without being listed.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::category::{FinCategory, FinSet, RawCategory};
use crate::error::{Error, Result};
use crate::guard::SizeGuard;
use crate::poset::FinPoset;
use crate::presheaf::{Copresheaf, Presheaf};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines as `(line number, tokens)`.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let body = l.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn expect_shape(line: usize, tokens: &[&str], shape: &[Option<&str>], usage: &str) -> Result<()> {
    let ok = tokens.len() == shape.len() && tokens.iter().zip(shape).all(|(t, s)| s.is_none_or(|s| s == *t));
    if ok {
        Ok(())
    } else {
        Err(parse_err(line, format!("expected `{usage}`")))
    }
}

pub fn parse_category(text: &str) -> Result<RawCategory> {
    let mut raw = RawCategory::default();
    for (line, t) in lines(text) {
        match t[0] {
            "object" => {
                expect_shape(line, &t, &[Some("object"), None], "object <id>")?;
                raw.objects.push(t[1].to_string());
            }
            "arrow" => {
                expect_shape(line, &t, &[Some("arrow"), None, Some(":"), None, Some("->"), None], "arrow <id> : <src> -> <tgt>")?;
                raw.arrows.push((t[1].to_string(), t[3].to_string(), t[5].to_string()));
            }
            "compose" => {
                expect_shape(line, &t, &[Some("compose"), None, Some("."), None, Some("="), None], "compose <g> . <f> = <h>")?;
                raw.composites.push((t[1].to_string(), t[3].to_string(), t[5].to_string()));
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }
    Ok(raw)
}

/// Parses and validates.
pub fn read_category(text: &str, guard: &SizeGuard) -> Result<FinCategory> {
    FinCategory::validate(&parse_category(text)?, guard)
}

pub fn write_category(c: &FinCategory) -> String {
    let raw = c.to_raw();
    let mut out = String::new();
    for o in &raw.objects {
        let _ = writeln!(out, "object {o}");
    }
    for (a, s, t) in &raw.arrows {
        let _ = writeln!(out, "arrow {a} : {s} -> {t}");
    }
    for (g, f, h) in &raw.composites {
        let _ = writeln!(out, "compose {g} . {f} = {h}");
    }
    out
}

/// Elements are sorted by name.
pub fn read_poset(text: &str) -> Result<FinPoset> {
    let mut names = Vec::new();
    let mut pairs = Vec::new();
    for (line, t) in lines(text) {
        match t[0] {
            "element" => {
                expect_shape(line, &t, &[Some("element"), None], "element <id>")?;
                names.push(t[1].to_string());
            }
            "le" => {
                expect_shape(line, &t, &[Some("le"), None, None], "le <a> <b>")?;
                pairs.push((line, t[1].to_string(), t[2].to_string()));
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }
    names.sort();
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let mut resolved = Vec::with_capacity(pairs.len());
    for (line, a, b) in &pairs {
        let get = |x: &str| index.get(x).copied().ok_or_else(|| parse_err(*line, format!("unknown element `{x}`")));
        resolved.push((get(a)?, get(b)?));
    }
    FinPoset::new(names, &resolved)
}

/// Elements and the covering pairs.
pub fn write_poset(p: &FinPoset) -> String {
    let mut out = String::new();
    for n in p.names() {
        let _ = writeln!(out, "element {n}");
    }
    for (a, b) in p.covers() {
        let _ = writeln!(out, "le {} {}", p.name(a), p.name(b));
    }
    out
}

struct Block {
    covariant: bool,
    name: String,
    line: usize,
    sets: Vec<(usize, String, Vec<String>)>,
    maps: Vec<(usize, String, String, String)>,
}

fn parse_blocks(text: &str) -> Result<Vec<Block>> {
    let mut blocks: Vec<Block> = Vec::new();
    for (line, t) in lines(text) {
        match t[0] {
            "presheaf" | "copresheaf" => {
                if t.len() < 2 {
                    return Err(parse_err(line, format!("expected `{} <name>`", t[0])));
                }
                blocks.push(Block {
                    covariant: t[0] == "copresheaf",
                    name: t[1..].join(" "),
                    line,
                    sets: Vec::new(),
                    maps: Vec::new(),
                });
            }
            "at" | "map" => {
                let block = blocks.last_mut().ok_or_else(|| parse_err(line, "value given before any `presheaf` header"))?;
                if t[0] == "map" {
                    expect_shape(line, &t, &[Some("map"), None, Some(":"), None, Some("->"), None], "map <arrow> : <x> -> <y>")?;
                    block.maps.push((line, t[1].to_string(), t[3].to_string(), t[5].to_string()));
                } else {
                    if t.len() < 4 || t[2] != "=" {
                        return Err(parse_err(line, "expected `at <object> = {x, y}`"));
                    }
                    let body = t[3..].join(" ");
                    let inner = body
                        .strip_prefix('{')
                        .and_then(|b| b.strip_suffix('}'))
                        .ok_or_else(|| parse_err(line, "set must be written `{x, y}`"))?;
                    let labels: Vec<String> = inner.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
                    block.sets.push((line, t[1].to_string(), labels));
                }
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }
    Ok(blocks)
}

/// `(sets, maps)` for one block, with `maps[f]` a table on the domain side.
fn resolve(block: &Block, base: &FinCategory) -> Result<(Vec<FinSet>, Vec<Vec<usize>>)> {
    let n = base.object_count();
    let mut sets: Vec<Option<FinSet>> = vec![None; n];
    for (line, obj, labels) in &block.sets {
        let o = base.object_id(obj).ok_or_else(|| parse_err(*line, format!("unknown object `{obj}`")))?;
        if sets[o].is_some() {
            return Err(parse_err(*line, format!("value at `{obj}` given twice")));
        }
        sets[o] = Some(FinSet::sorted(labels.clone()).map_err(|e| parse_err(*line, e.to_string()))?);
    }
    let sets: Vec<FinSet> = sets.into_iter().map(Option::unwrap_or_default).collect();
    let ends = |f: usize| {
        if block.covariant {
            (base.src(f), base.tgt(f))
        } else {
            (base.tgt(f), base.src(f))
        }
    };
    let mut maps: Vec<Vec<Option<usize>>> = (0..base.arrow_count())
        .map(|f| {
            let from = ends(f).0;
            if base.is_identity(f) {
                (0..sets[from].len()).map(Some).collect()
            } else {
                vec![None; sets[from].len()]
            }
        })
        .collect();
    for (line, arrow, x, y) in &block.maps {
        let f = base.arrow_id(arrow).ok_or_else(|| parse_err(*line, format!("unknown arrow `{arrow}`")))?;
        let (from, to) = ends(f);
        let xi = sets[from].position(x).ok_or_else(|| parse_err(*line, format!("`{x}` is not in the value at {}", base.object_name(from))))?;
        let yi = sets[to].position(y).ok_or_else(|| parse_err(*line, format!("`{y}` is not in the value at {}", base.object_name(to))))?;
        if maps[f][xi].replace(yi).is_some_and(|old| old != yi) {
            return Err(parse_err(*line, format!("`{arrow}` sends `{x}` to two elements")));
        }
    }
    let mut out = Vec::with_capacity(maps.len());
    for (f, m) in maps.into_iter().enumerate() {
        let from = ends(f).0;
        let table = m
            .into_iter()
            .enumerate()
            .map(|(x, v)| {
                v.ok_or_else(|| {
                    parse_err(
                        block.line,
                        format!("{}: no image of `{}` under `{}`", block.name, sets[from].label(x), base.arrow_name(f)),
                    )
                })
            })
            .collect::<Result<_>>()?;
        out.push(table);
    }
    Ok((sets, out))
}

fn with_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => parse_err(line, other.to_string()),
    })
}

pub fn read_presheaf_samples(text: &str, base: &Arc<FinCategory>) -> Result<Vec<(String, Presheaf)>> {
    let mut out = Vec::new();
    for block in parse_blocks(text)? {
        if block.covariant {
            return Err(parse_err(block.line, "expected presheaves, found a copresheaf"));
        }
        let (sets, maps) = resolve(&block, base)?;
        out.push((block.name.clone(), with_line(block.line, Presheaf::new(base.clone(), sets, maps))?));
    }
    Ok(out)
}

pub fn read_copresheaf_samples(text: &str, base: &Arc<FinCategory>) -> Result<Vec<(String, Copresheaf)>> {
    let mut out = Vec::new();
    for block in parse_blocks(text)? {
        if !block.covariant {
            return Err(parse_err(block.line, "expected copresheaves, found a presheaf"));
        }
        let (sets, maps) = resolve(&block, base)?;
        out.push((block.name.clone(), with_line(block.line, Copresheaf::new(base.clone(), sets, maps))?));
    }
    Ok(out)
}

fn write_block(out: &mut String, kind: &str, name: &str, base: &FinCategory, sets: &[FinSet], map: impl Fn(usize) -> Vec<usize>, covariant: bool) {
    let _ = writeln!(out, "{kind} {name}");
    for (o, s) in sets.iter().enumerate() {
        if !s.is_empty() {
            let _ = writeln!(out, "at {} = {{{}}}", base.object_name(o), s.labels().join(", "));
        }
    }
    for f in 0..base.arrow_count() {
        if base.is_identity(f) {
            continue;
        }
        let (from, to) = if covariant { (base.src(f), base.tgt(f)) } else { (base.tgt(f), base.src(f)) };
        for (x, y) in map(f).into_iter().enumerate() {
            let _ = writeln!(out, "map {} : {} -> {}", base.arrow_name(f), sets[from].label(x), sets[to].label(y));
        }
    }
}

pub fn write_presheaf(name: &str, p: &Presheaf) -> String {
    let mut out = String::new();
    write_block(&mut out, "presheaf", name, p.base(), p.sets(), |f| p.map(f).to_vec(), false);
    out
}

pub fn write_copresheaf(name: &str, p: &Copresheaf) -> String {
    let mut out = String::new();
    write_block(&mut out, "copresheaf", name, p.base(), p.sets(), |f| p.map(f).to_vec(), true);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{builtin, Builtin};
    use crate::poset::Order;
    use crate::presheaf::{copresheaf_samples, presheaf_samples};

    fn g() -> SizeGuard {
        SizeGuard::default()
    }

    #[test]
    fn walking_arrow_file() {
        let c = read_category("# the arrow\nobject a\nobject b\narrow f : a -> b\n", &g()).unwrap();
        assert_eq!(c.arrow_count(), 3);
    }

    #[test]
    fn malformed_arrow_line_reports_line() {
        let e = parse_category("object a\n\narrow f a -> b\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn category_round_trip() {
        for (kind, n) in [(Builtin::Simplex, 1), (Builtin::Globe, 1), (Builtin::MonoidTable, 3), (Builtin::Chain, 2)] {
            let c = builtin(kind, n, &g()).unwrap();
            let back = read_category(&write_category(&c), &g()).unwrap();
            assert_eq!(back.arrow_count(), c.arrow_count());
            assert_eq!(write_category(&back), write_category(&c));
        }
    }

    #[test]
    fn poset_file_closes_relation() {
        let p = read_poset("element c\nelement a\nelement b\nle a b\nle b c\n").unwrap();
        assert_eq!(p.names(), ["a", "b", "c"]);
        assert!(p.leq(0, 2));
        assert_eq!(read_poset(&write_poset(&p)).unwrap(), p);
    }

    #[test]
    fn malformed_le_line() {
        let e = read_poset("element a\nle a\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = read_poset("element a\nle a z\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn cyclic_le_is_rejected() {
        assert!(matches!(read_poset("element a\nelement b\nle a b\nle b a\n"), Err(Error::InvalidPoset(_))));
    }

    #[test]
    fn samples_round_trip() {
        let c = Arc::new(builtin(Builtin::Simplex, 1, &g()).unwrap());
        let mut text = String::new();
        let samples = presheaf_samples(&c);
        for (i, (_, p)) in samples.iter().enumerate() {
            text.push_str(&write_presheaf(&format!("s{i}"), p));
        }
        let back = read_presheaf_samples(&text, &c).unwrap();
        assert_eq!(back.len(), samples.len());
        for ((_, a), (_, b)) in back.iter().zip(&samples) {
            assert_eq!(a.sets().iter().map(FinSet::len).collect::<Vec<_>>(), b.sets().iter().map(FinSet::len).collect::<Vec<_>>());
        }
        let co = copresheaf_samples(&c);
        let text: String = co.iter().map(|(n, p)| write_copresheaf(n, p)).collect();
        assert_eq!(read_copresheaf_samples(&text, &c).unwrap().len(), co.len());
    }

    #[test]
    fn missing_image_is_a_parse_error() {
        let c = Arc::new(builtin(Builtin::WalkingArrow, 0, &g()).unwrap());
        let text = "presheaf p\nat 1 = {x}\n";
        let e = read_presheaf_samples(text, &c).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }), "{e}");
    }
}
