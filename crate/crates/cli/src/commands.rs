use std::path::Path;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use tdcat::category::{builtin, Builtin, FinCategory};
use tdcat::format::{read_category, read_copresheaf_samples, read_poset, read_presheaf_samples, write_category, write_poset};
use tdcat::generate::{posets_up_to_iso, sample_triples};
use tdcat::ideals::{dimension_ideal, enumerate_idempotent_ideals, is_idempotent, IdealLattice};
use tdcat::kan::{td_witness_on, AdjointTripleWitness};
use tdcat::order::{ccd_check, continuity_check, distributivity_oracle, duality_check, generator_restriction, transfer_ccd, way_below};
use tdcat::poset::underlying_poset;
use tdcat::presheaf::{copresheaf_samples, presheaf_samples};
use tdcat::wavy::{cartesian_spot_check, fixed_points, wavy_profunctor};
use tdcat::{Error, FinPoset, MonotoneMap, Order, SizeGuard};

use crate::report::{Check, Fingerprint};

/// Failure before any check could run.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{context}: {source}")]
    Input { context: String, source: Error },
    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub struct Ctx {
    pub guard: SizeGuard,
    pub seed: u64,
    pub fingerprint: Fingerprint,
}

impl Ctx {
    pub fn read(&mut self, path: &Path) -> CliResult<String> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        self.fingerprint.add(text.as_bytes());
        Ok(text)
    }
}

pub(crate) fn input<T>(context: impl Into<String>, r: tdcat::Result<T>) -> CliResult<T> {
    r.map_err(|source| CliError::Input {
        context: context.into(),
        source,
    })
}

fn load_poset(path: &Path, text: &str, guard: &SizeGuard) -> CliResult<FinPoset> {
    let p = input(path.display().to_string(), read_poset(text))?;
    input(path.display().to_string(), guard.check_objects(p.len()))?;
    Ok(p)
}

fn names(p: &FinPoset, mask: u64) -> Vec<String> {
    (0..p.len()).filter(|&i| mask >> i & 1 == 1).map(|i| p.name(i).to_string()).collect()
}

pub fn analyze_poset(ctx: &mut Ctx, path: &Path) -> CliResult<Vec<Check>> {
    let text = ctx.read(path)?;
    let p = load_poset(path, &text, &ctx.guard)?;
    let g = &ctx.guard;
    let mut checks = vec![Check::info("elements", format!("{} elements, {} covering pairs", p.len(), p.covers().len()))];

    let ccd = input("ccd check", ccd_check(&p, g))?;
    let summary = ccd.summary();
    let mut detail = format!("complete = {}, ccd = {}, lex ccd = {}", summary.complete, summary.ccd, summary.lex_ccd);
    if let Some(w) = &summary.witness {
        detail.push_str(&format!("; witness: {w}"));
    }
    let tb: Option<Vec<(String, Vec<String>)>> = (0..p.len())
        .map(|v| ccd.totally_below_set(v).map(|m| (p.name(v).to_string(), names(&p, m))))
        .collect();
    checks.push(Check::info("ccd", detail).with_data(json!({ "summary": summary, "totally_below": tb })));

    match distributivity_oracle(&p) {
        Ok(d) => {
            let agree = d.distributive == summary.ccd;
            let mut detail = format!("distributive = {}, agrees with ccd = {agree}", d.distributive);
            if let Some((a, b, c)) = &d.witness {
                detail.push_str(&format!("; witness ({a}, {b}, {c})"));
            }
            checks.push(Check::new("distributivity cross-check", agree, detail).with_data(&d));
        }
        Err(Error::NotALattice { a, b, missing }) => {
            checks.push(Check::info("distributivity cross-check", format!("not a lattice: {a} and {b} lack a {missing}")));
        }
        Err(e) => return Err(CliError::Input { context: "distributivity".into(), source: e }),
    }

    let wb = input("way-below", way_below(&p, g))?;
    let mut equal = true;
    let mut pairs = Vec::new();
    for x in 0..p.len() {
        for y in 0..p.len() {
            equal &= wb.holds(x, y) == p.leq(x, y);
            if wb.holds(x, y) && x != y {
                pairs.push((p.name(x).to_string(), p.name(y).to_string()));
            }
        }
    }
    checks.push(Check::new("way-below equals order", equal, format!("{} strict way-below pairs", pairs.len())).with_data(pairs));

    let cont = input("continuity", continuity_check(&p, g))?;
    let mut detail = format!("continuous = {}, approximation agrees with way-below = {}", cont.continuous, cont.agrees_with_way_below);
    if let Some(w) = &cont.witness {
        detail.push_str(&format!("; witness: {w}"));
    }
    checks.push(Check::new("continuity", cont.continuous && cont.agrees_with_way_below, detail));

    let dual = input("duality", duality_check(&p, g))?;
    let mut detail = format!(
        "{} Scott opens, frame ccd = {}, points isomorphic = {}",
        dual.opens, dual.opens_ccd.ccd, dual.points_isomorphic
    );
    if let Some(c) = &dual.counterexample {
        detail.push_str(&format!("; counterexample: {c}"));
    }
    checks.push(Check::new("Scott duality", dual.passed(), detail).with_data(&dual));
    Ok(checks)
}

/// A category from a file or a builtin name.
pub fn load_category(ctx: &mut Ctx, path: Option<&Path>, builtin_name: Option<&str>, n: usize) -> CliResult<(String, FinCategory)> {
    match (path, builtin_name) {
        (Some(p), None) => {
            let text = ctx.read(p)?;
            Ok((p.display().to_string(), input(p.display().to_string(), read_category(&text, &ctx.guard))?))
        }
        (None, Some(name)) => {
            let kind: Builtin = input("builtin", name.parse())?;
            ctx.fingerprint.add(format!("builtin {name} {n}").as_bytes());
            Ok((format!("{name} {n}"), input("builtin", builtin(kind, n, &ctx.guard))?))
        }
        _ => Err(CliError::Usage("give either a category file or --builtin".into())),
    }
}

pub fn lattice_data(c: &FinCategory, lat: &IdealLattice) -> serde_json::Value {
    json!({
        "ideals": lat.ideals.iter().map(|i| i.names(c)).collect::<Vec<_>>(),
        "sizes": lat.ideals.iter().map(|i| i.len()).collect::<Vec<_>>(),
        "covers": lat.covers(),
        "all_ideals": lat.all_ideals,
        "chain": lat.is_chain(),
    })
}

pub fn enumerate_ideals(ctx: &mut Ctx, c: &FinCategory) -> CliResult<(Vec<Check>, IdealLattice)> {
    let lat = input("ideal enumeration", enumerate_idempotent_ideals(c, &ctx.guard))?;
    let sizes: Vec<usize> = lat.ideals.iter().map(|i| i.len()).collect();
    let mut checks = vec![Check::info(
        "idempotent ideals",
        format!(
            "{} arrows, {} ideals, {} idempotent, sizes {:?}, {}",
            c.arrow_count(),
            lat.all_ideals,
            lat.len(),
            sizes,
            if lat.is_chain() { "chain" } else { "not a chain" }
        ),
    )
    .with_data(lattice_data(c, &lat))];
    let bad = lat.ideals.iter().position(|i| !is_idempotent(c, i).idempotent);
    checks.push(Check::new(
        "all enumerated ideals idempotent",
        bad.is_none(),
        bad.map_or("every member factors through two members".into(), |i| format!("ideal {i} is not idempotent")),
    ));
    if let Some(grading) = c.grading() {
        let top = grading.iter().copied().max().unwrap_or(0);
        let mut missing = Vec::new();
        for d in 0..=top {
            let ideal = input("dimension ideal", dimension_ideal(c, d))?;
            if lat.index_of(&ideal).is_none() {
                missing.push(d);
            }
        }
        checks.push(Check::new(
            "dimension ideals found",
            missing.is_empty(),
            if missing.is_empty() {
                format!("all {} dimension ideals enumerated", top + 1)
            } else {
                format!("missing dimensions {missing:?}")
            },
        ));
    }
    Ok((checks, lat))
}

fn witness_checks(prefix: &str, w: &AdjointTripleWitness) -> Vec<Check> {
    let mut by_check: std::collections::BTreeMap<&str, (usize, usize)> = Default::default();
    for r in &w.records {
        let e = by_check.entry(r.check.as_str()).or_default();
        e.0 += 1;
        e.1 += usize::from(!r.ok);
    }
    let mut out: Vec<Check> = by_check
        .into_iter()
        .map(|(name, (total, failed))| {
            let failures: Vec<_> = w.failures().filter(|r| r.check == name).collect();
            Check::new(format!("{prefix}{name}"), failed == 0, format!("{total} instances, {failed} failed")).with_data(failures)
        })
        .collect();
    if let Some(s) = &w.shadow {
        out.push(
            Check::new(
                format!("{prefix}down-set shadow"),
                s.passed(),
                format!(
                    "{} down-sets, {} subterminals, order agrees = {}, Dn ccd = {}",
                    s.down_sets, s.subterminals, s.order_agrees, s.down_set_lattice_ccd
                ),
            )
            .with_data(s),
        );
    }
    out
}

pub fn td_witness_cmd(ctx: &mut Ctx, path: &Path, samples: Option<&Path>) -> CliResult<Vec<Check>> {
    let text = ctx.read(path)?;
    let c = Arc::new(input(path.display().to_string(), read_category(&text, &ctx.guard))?);
    let suite = match samples {
        Some(s) => {
            let t = ctx.read(s)?;
            input(s.display().to_string(), read_presheaf_samples(&t, &c))?
        }
        None => presheaf_samples(&c),
    };
    let w = input("td witness", td_witness_on(&c, &suite, &ctx.guard))?;
    let mut checks = vec![Check::info(
        "sample suite",
        format!("{} presheaves, finite limits = {}, thin = {}", suite.len(), c.has_finite_limits(), c.is_thin()),
    )];
    checks.extend(witness_checks("", &w));
    Ok(checks)
}

pub fn wavy_cmd(ctx: &mut Ctx, path: &Path, samples: Option<&Path>) -> CliResult<Vec<Check>> {
    let text = ctx.read(path)?;
    let p = load_poset(path, &text, &ctx.guard)?;
    let g = ctx.guard;
    let v = input("wavy profunctor", wavy_profunctor(&p, &g))?;
    let suite = match samples {
        Some(s) => {
            let t = ctx.read(s)?;
            input(s.display().to_string(), read_copresheaf_samples(&t, &v.category))?
        }
        None => copresheaf_samples(&v.category),
    };
    let n = p.len();
    let interp: Vec<(String, String, String)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter_map(|(x, y)| v.interpolant(x, y).map(|z| (p.name(x).to_string(), p.name(y).to_string(), p.name(z).to_string())))
        .collect();
    let mut checks = vec![
        Check::new("V . V = V", v.idempotent, format!("{} wavy pairs, least interpolants chosen", interp.len())).with_data(interp),
        Check::info("counit V -> Hom", "every wavy arrow lies over an order relation"),
    ];
    let bad: Vec<_> = v.columns.iter().filter(|c| !c.flat).collect();
    checks.push(Check::new("flat columns", bad.is_empty(), format!("{} of {} columns flat", n - bad.len(), n)).with_data(&v.columns));
    let mut failures = Vec::new();
    let mut pairs = 0;
    for (i, (fname, f)) in suite.iter().enumerate() {
        for (gname, gp) in &suite[i..] {
            let r = input("cartesian check", cartesian_spot_check(&v, f, gp))?;
            pairs += 1;
            if !r.passed() {
                failures.push(json!({ "left": fname, "right": gname, "report": r }));
            }
        }
    }
    checks.push(Check::new("cartesian", failures.is_empty(), format!("{pairs} sample pairs, {} failed", failures.len())).with_data(failures));
    let w = input("fixed points", fixed_points(&v, &suite, &g))?;
    let fixed: Vec<&str> = w.fixed.iter().filter(|(_, ok)| *ok).map(|(n, _)| n.as_str()).collect();
    checks.push(Check::info("fixed points", format!("{} of {} samples fixed", fixed.len(), w.fixed.len())).with_data(&w.fixed));
    let not_idem: Vec<_> = w.idempotent.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.clone()).collect();
    checks.push(Check::new("V~ idempotent on samples", not_idem.is_empty(), format!("{} samples not idempotent", not_idem.len())).with_data(not_idem));
    if !w.no_right_adjoint.is_empty() {
        checks.push(Check::info("right adjoint unavailable", w.no_right_adjoint.join("; ")));
    }
    checks.extend(witness_checks("triple: ", &w.triple));
    Ok(checks)
}

fn parse_map(text: &str, dom: &FinPoset, cod: &FinPoset, name: &str) -> CliResult<MonotoneMap> {
    let images: Vec<&str> = text.split(',').map(str::trim).collect();
    if images.len() != dom.len() {
        return Err(CliError::Usage(format!("{name} needs {} images, got {}", dom.len(), images.len())));
    }
    let values = images
        .iter()
        .map(|i| cod.index_of(i).ok_or_else(|| CliError::Usage(format!("{name}: unknown element {i}"))))
        .collect::<CliResult<Vec<_>>>()?;
    input(name, MonotoneMap::new(dom, cod, values))
}

pub struct TriplePaths<'a> {
    pub d: &'a Path,
    pub e: &'a Path,
    pub q: &'a str,
    pub r: &'a str,
    pub s: &'a str,
}

pub fn transfer_single(ctx: &mut Ctx, t: TriplePaths<'_>) -> CliResult<Vec<Check>> {
    let d_text = ctx.read(t.d)?;
    let e_text = ctx.read(t.e)?;
    let d = load_poset(t.d, &d_text, &ctx.guard)?;
    let e = load_poset(t.e, &e_text, &ctx.guard)?;
    ctx.fingerprint.add(format!("{} | {} | {}", t.q, t.r, t.s).as_bytes());
    let q = parse_map(t.q, &d, &e, "q")?;
    let r = parse_map(t.r, &e, &d, "r")?;
    let s = parse_map(t.s, &d, &e, "s")?;
    let rep = input("transfer", transfer_ccd(&d, &e, &q, &r, &s, &ctx.guard))?;
    Ok(vec![Check::new(
        "E ccd implies D ccd",
        rep.implication_holds,
        format!("E ccd = {}, D ccd = {}", rep.source.ccd, rep.target.ccd),
    )
    .with_data(&rep)])
}

pub fn transfer_sweep(ctx: &mut Ctx, count: usize, max_size: usize) -> CliResult<Vec<Check>> {
    if !(1..=6).contains(&max_size) {
        return Err(CliError::Usage("--max-size must be between 1 and 6".into()));
    }
    ctx.fingerprint.add(format!("transfer sweep {count} {max_size}").as_bytes());
    let g = ctx.guard;
    let mut es = Vec::new();
    for n in 1..=max_size {
        for p in posets_up_to_iso(n) {
            if input("ccd check", ccd_check(&p, &g))?.ccd {
                es.push(p);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let sampled = sample_triples(&mut rng, &es, count);
    let mut failures = Vec::new();
    for t in &sampled.triples {
        let rep = input("transfer", transfer_ccd(&t.d, &t.e, &t.q, &t.r, &t.s, &g))?;
        if !rep.implication_holds {
            failures.push(json!({ "d": write_poset(&t.d), "e": write_poset(&t.e), "r": t.r.as_slice() }));
        }
    }
    Ok(vec![
        Check::info(
            "sampling",
            format!(
                "{} ccd source posets, {} draws, {} accepted ({} distinct)",
                es.len(),
                sampled.draws,
                sampled.triples.len(),
                sampled.distinct
            ),
        ),
        Check::new("E ccd implies D ccd", failures.is_empty(), format!("{} triples, {} failed", sampled.triples.len(), failures.len())).with_data(failures),
    ])
}

pub fn generator_restrict(ctx: &mut Ctx, path: &Path, generators: Option<&str>) -> CliResult<Vec<Check>> {
    let text = ctx.read(path)?;
    let p = load_poset(path, &text, &ctx.guard)?;
    let g = ctx.guard;
    let subsets: Vec<Vec<usize>> = match generators {
        Some(list) => {
            ctx.fingerprint.add(list.as_bytes());
            let gens = list
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|n| p.index_of(n).ok_or_else(|| CliError::Usage(format!("unknown element {n}"))))
                .collect::<CliResult<Vec<_>>>()?;
            vec![gens]
        }
        None => {
            if p.len() > 16 {
                return Err(CliError::Usage("enumerating generator subsets needs at most 16 elements; pass --generators".into()));
            }
            (0u32..1 << p.len()).map(|m| (0..p.len()).filter(|&i| m >> i & 1 == 1).collect()).collect()
        }
    };
    let explicit = generators.is_some();
    let mut checks = Vec::new();
    let mut dense = 0;
    for gens in subsets {
        match generator_restriction(&p, &gens, &g) {
            Ok(r) => {
                dense += 1;
                let detail = format!(
                    "c' -| y' = {}, t' exists = {}, ccd = {}{}",
                    r.join_left_adjoint,
                    r.left_adjoint_exists,
                    r.ccd,
                    r.witness.as_ref().map(|w| format!("; {w}")).unwrap_or_default()
                );
                checks.push(Check::new(format!("generators {{{}}}", r.generators.join(", ")), r.passed(), detail).with_data(&r));
            }
            Err(Error::NotJoinDense { element }) if explicit => {
                return Err(CliError::Input {
                    context: "generators".into(),
                    source: Error::NotJoinDense { element },
                })
            }
            Err(Error::NotJoinDense { .. }) => {}
            Err(e) => return Err(CliError::Input { context: "generator restriction".into(), source: e }),
        }
    }
    checks.insert(0, Check::info("join-dense subsets", format!("{dense} checked")));
    Ok(checks)
}

/// Text of a builtin category, or of a named poset with `poset`.
pub fn builtin_text(name: &str, n: usize, poset: bool, guard: &SizeGuard) -> CliResult<String> {
    if poset {
        let p = match name {
            "m3" => FinPoset::diamond_m3(),
            "n5" => FinPoset::pentagon_n5(),
            "boolean-square" => FinPoset::boolean_square(),
            "antichain" => {
                let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
                FinPoset::antichain(&labels.iter().map(String::as_str).collect::<Vec<_>>())
            }
            other => {
                let kind: Builtin = input("builtin", other.parse())?;
                let c = input("builtin", builtin(kind, n, guard))?;
                underlying_poset(&c).ok_or_else(|| CliError::Usage(format!("{other} is not a poset")))?
            }
        };
        Ok(write_poset(&p))
    } else {
        let kind: Builtin = input("builtin", name.parse())?;
        Ok(write_category(&input("builtin", builtin(kind, n, guard))?))
    }
}
