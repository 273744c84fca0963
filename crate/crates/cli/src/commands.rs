use std::collections::BTreeMap;
use std::sync::Arc;

use coxwalls::braid::tits_normal_form;
use coxwalls::geometry::{
    build_realization, limit_directions, sweep_convexity, sweep_geodesic_with_tol, sweep_halfspace, sweep_lemma0,
    sweep_lemma1, sweep_lemma31, sweep_lemma32, EuclideanRealization, SweepReport, GEODESIC_TOL,
};
use coxwalls::parabolic::{
    components, coset_rep_counts, essential_subset, has_finite_index, is_spherical_by_minors, min_coset_rep,
    quasi_density_profile, sphericity_report, splits_as_product, w_singleton_set, SPHERICITY_BFS_CAP,
};
use coxwalls::{ball, growth_series, normal_form, CoxeterSystem, GeneratorSubset, Side, Word};
use serde_json::{json, Value};

use crate::dot::cayley_dot;
use crate::report::{CheckResult, RunReport};
use crate::svg::{export_tiling, Coloring, Window};
use crate::{Check, CliError, Command, IndexList, Options, Output};

const LIMIT_RADIUS: f64 = 1000.0;
const DEFAULT_TRIALS: usize = 10_000;

type Params = BTreeMap<String, Value>;

struct Ctx<'a> {
    opts: &'a Options,
    system: Arc<CoxeterSystem>,
    params: Params,
}

impl Ctx<'_> {
    fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    fn radius(&mut self, default: usize) -> usize {
        let r = self.opts.radius.unwrap_or(default);
        self.param("radius", r);
        r
    }

    fn subset_or(&mut self, default: GeneratorSubset) -> Result<GeneratorSubset, CliError> {
        let t = match &self.opts.subset {
            Some(list) => subset_from(list, self.system.rank())?,
            None => default,
        };
        self.param("subset", t.to_vec());
        Ok(t)
    }

    /// The `--subset` flag alone, or every subset accepted by `keep`.
    fn subsets_or_all(&mut self, keep: impl Fn(GeneratorSubset) -> bool) -> Result<Vec<GeneratorSubset>, CliError> {
        let ts: Vec<GeneratorSubset> = match &self.opts.subset {
            Some(list) => vec![subset_from(list, self.system.rank())?],
            None => GeneratorSubset::all(self.system.rank()).filter(|&t| keep(t)).collect(),
        };
        self.param("subsets", ts.iter().map(|t| t.to_vec()).collect::<Vec<_>>());
        Ok(ts)
    }

    fn word(&mut self) -> Result<Word, CliError> {
        let list = self.opts.word.as_ref().ok_or(CliError::Usage { flag: "--word", message: "required".into() })?;
        let word = Word(list.0.clone());
        word.check(self.system.rank()).map_err(|e| CliError::Usage { flag: "--word", message: e.to_string() })?;
        self.param("word", list.0.clone());
        Ok(word)
    }

    fn realization(&self) -> Result<EuclideanRealization, CliError> {
        build_realization(&self.system).map_err(|e| CliError::Usage { flag: "--system", message: e.to_string() })
    }

    fn finish(self, command: &Command, results: Vec<CheckResult>) -> Output {
        Output {
            report: RunReport::new(command.name(), &self.system, self.params, results, self.opts.seed),
            artifact: None,
        }
    }
}

fn subset_from(list: &IndexList, rank: usize) -> Result<GeneratorSubset, CliError> {
    if let Some(&bad) = list.0.iter().find(|&&s| s >= rank) {
        return Err(CliError::Usage {
            flag: "--subset",
            message: format!("generator {bad} is not in a rank-{rank} system"),
        });
    }
    Ok(GeneratorSubset::from_indices(list.0.iter().copied()))
}

fn load_system(opts: &Options) -> Result<Arc<CoxeterSystem>, CliError> {
    let path = opts.system.as_ref().ok_or(CliError::Usage { flag: "--system", message: "required".into() })?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage { flag: "--system", message: format!("cannot read {}: {e}", path.display()) })?;
    CoxeterSystem::parse(&text)
        .map_err(|e| CliError::Usage { flag: "--system", message: format!("{}: {e}", path.display()) })
}

fn sweep_result(r: SweepReport) -> CheckResult {
    let pass = r.pass;
    CheckResult::new(r.check.clone(), pass, serde_json::to_value(&r).unwrap_or(Value::Null))
}

pub(crate) fn execute(command: &Command, opts: &Options) -> Result<Output, CliError> {
    let system = load_system(opts)?;
    let mut ctx = Ctx { opts, system: system.clone(), params: Params::new() };
    let rank = system.rank();
    match command {
        Command::Validate => {
            let radius = ctx.radius(4);
            let affine = build_realization(&system);
            let detail = json!({
                "rank": rank,
                "matrix": system.order_codes(),
                "exact_arithmetic": system.is_exact(),
                "components": components(&system, system.all_generators()).iter().map(|c| c.to_vec()).collect::<Vec<_>>(),
                "spherical": is_spherical_by_minors(&system, system.all_generators()),
                "affine_type": affine.is_ok(),
                "dimension": affine.as_ref().ok().map(|r| r.dim()),
                "growth": growth_series(&system, radius)?,
            });
            Ok(ctx.finish(command, vec![CheckResult::new("matrix", true, detail)]))
        }
        Command::Ball => {
            let radius = ctx.radius(3);
            let elems = ball(&system, radius)?;
            let mut lines = String::new();
            for w in &elems {
                lines.push_str(&serde_json::to_string(w).expect("element serializes"));
                lines.push('\n');
            }
            let detail = json!({ "elements": elems.len(), "growth": growth_series(&system, radius)? });
            let mut out = ctx.finish(command, vec![CheckResult::new("ball", true, detail)]);
            out.artifact = Some(lines);
            Ok(out)
        }
        Command::Reduce => {
            let word = ctx.word()?;
            let w = normal_form(&system, &word)?;
            let tits = tits_normal_form(&system, &word)?;
            let detail = json!({
                "word": word,
                "nf": w.nf(),
                "len": w.length(),
                "left_descents": w.descents(Side::Left)?.to_vec(),
                "right_descents": w.descents(Side::Right)?.to_vec(),
                "support": w.support().to_vec(),
                "tits_nf": tits,
            });
            Ok(ctx.finish(command, vec![CheckResult::new("normal_form", &tits == w.nf(), detail)]))
        }
        Command::Coset => {
            let word = ctx.word()?;
            let t = ctx.subset_or(GeneratorSubset::EMPTY)?;
            let w = normal_form(&system, &word)?;
            let d = min_coset_rep(&w, t)?;
            let additive = d.v.length() + d.x.length() == w.length();
            let minimal = t
                .iter()
                .map(|s| d.x.generator_mul(s).map(|sx| sx.length() > d.x.length()))
                .collect::<Result<Vec<_>, _>>()?;
            let minimal = minimal.into_iter().all(|b| b);
            let product = d.v.multiply(&d.x)? == w;
            let detail = json!({
                "w": w,
                "v": d.v,
                "x": d.x,
                "length_additive": additive,
                "x_minimal": minimal,
                "product_is_w": product,
            });
            Ok(ctx.finish(command, vec![CheckResult::new("coset", additive && minimal && product, detail)]))
        }
        Command::Spherical => {
            let t = ctx.subset_or(system.all_generators())?;
            ctx.param("bfs_cap", SPHERICITY_BFS_CAP);
            let r = sphericity_report(&system, t, SPHERICITY_BFS_CAP)?;
            let agree = r.agree();
            let detail = json!({
                "subset": t.to_vec(),
                "spherical": if agree { Some(r.positive_definite) } else { None },
                "order": r.order,
                "positive_definite": r.positive_definite,
                "minors": r.minors,
                "exact_minors": r.exact_minors,
            });
            Ok(ctx.finish(command, vec![CheckResult::new("sphericity", agree, detail)]))
        }
        Command::Essential => {
            let t = ctx.subset_or(system.all_generators())?;
            let ess = essential_subset(&system, t);
            let idempotent = essential_subset(&system, ess) == ess;
            let remainder = t.difference(ess);
            let remainder_spherical = is_spherical_by_minors(&system, remainder);
            let comps: Vec<Value> = components(&system, t)
                .into_iter()
                .map(|c| json!({ "generators": c.to_vec(), "spherical": is_spherical_by_minors(&system, c) }))
                .collect();
            let detail = json!({
                "subset": t.to_vec(),
                "essential": ess.to_vec(),
                "components": comps,
                "idempotent": idempotent,
                "remainder": remainder.to_vec(),
                "remainder_spherical": remainder_spherical,
            });
            Ok(ctx.finish(command, vec![CheckResult::new("essential", idempotent && remainder_spherical, detail)]))
        }
        Command::SplitCheck => {
            let t = ctx.subset_or(system.all_generators())?;
            let ess = essential_subset(&system, t);
            let rest = ess.complement(rank);
            let splits = splits_as_product(&system, t);
            // The cross orders read from the other side must give the same answer.
            let mirrored = rest.iter().all(|s| ess.iter().all(|u| system.order(s, u).code() == 2));
            let detail = json!({
                "subset": t.to_vec(),
                "essential": ess.to_vec(),
                "complement": rest.to_vec(),
                "splits": splits,
            });
            Ok(ctx.finish(command, vec![CheckResult::new("split", splits == mirrored, detail)]))
        }
        Command::FiniteIndex => {
            let t = ctx.subset_or(system.all_generators())?;
            let radius = ctx.radius(8);
            let finite = has_finite_index(&system, t);
            let counts = coset_rep_counts(&system, t, radius)?;
            let stabilized_at = counts.windows(2).position(|p| p[0] == p[1]);
            let detail = json!({
                "subset": t.to_vec(),
                "essential_of_s": essential_subset(&system, system.all_generators()).to_vec(),
                "finite_index": finite,
                "coset_rep_counts": counts,
                "stabilized_at": stabilized_at,
            });
            let consistent = !finite || stabilized_at.is_some();
            Ok(ctx.finish(command, vec![CheckResult::new("finite_index", consistent, detail)]))
        }
        Command::Wset => {
            let s0 = opts.s0.ok_or(CliError::Usage { flag: "--s0", message: "required".into() })?;
            if s0 >= rank {
                return Err(CliError::Usage {
                    flag: "--s0",
                    message: format!("generator {s0} is not in a rank-{rank} system"),
                });
            }
            ctx.param("s0", s0);
            let radius = ctx.radius(6);
            let set = w_singleton_set(&system, s0, radius)?;
            let profile = if set.is_empty() { None } else { Some(quasi_density_profile(&system, &set, radius)?) };
            let detail = json!({
                "s0": s0,
                "size": set.len(),
                "elements": set,
                "quasi_density": profile,
            });
            Ok(ctx.finish(command, vec![CheckResult::new("wset", true, detail)]))
        }
        Command::Verify { check } => verify(ctx, command, *check),
        Command::TilingSvg => {
            let real = ctx.realization()?;
            let radius = opts.radius.unwrap_or(5) as f64;
            ctx.param("window_radius", radius);
            let coloring = match &opts.subset {
                Some(list) => {
                    let t = subset_from(list, rank)?;
                    ctx.param("subset", t.to_vec());
                    Coloring::Cosets(t)
                }
                None => Coloring::Plain,
            };
            let overlay = match &opts.word {
                Some(_) => Some(normal_form(&system, &ctx.word()?)?),
                None => None,
            };
            let tiling = export_tiling(&real, Window { radius }, coloring, overlay.as_ref().map(|w| (w, opts.seed)))
                .map_err(|e| CliError::Usage { flag: "--system", message: e.to_string() })?;
            let pass = tiling.overlay.as_ref().is_none_or(|o| o.pass);
            let detail = json!({ "chambers": tiling.chambers.len(), "overlay": tiling.overlay });
            let mut out = ctx.finish(command, vec![CheckResult::new("tiling", pass, detail)]);
            out.artifact = Some(tiling.svg);
            Ok(out)
        }
        Command::CayleyDot => {
            let radius = ctx.radius(3);
            let (dot, vertices, edges) = cayley_dot(&system, radius)?;
            let mut out = ctx.finish(
                command,
                vec![CheckResult::new("cayley", true, json!({ "vertices": vertices, "edges": edges }))],
            );
            out.artifact = Some(dot);
            Ok(out)
        }
    }
}

fn verify(mut ctx: Ctx<'_>, command: &Command, check: Check) -> Result<Output, CliError> {
    let real = ctx.realization()?;
    let seed = ctx.opts.seed;
    let proper = |t: GeneratorSubset| t != real.system().all_generators();
    let results = match check {
        Check::Lemma0 => vec![sweep_result(sweep_lemma0(&real, ctx.radius(5))?)],
        Check::Lemma1 => vec![sweep_result(sweep_lemma1(&real, ctx.radius(5))?)],
        Check::Lemma31 => vec![sweep_result(sweep_lemma31(&real, ctx.radius(6))?)],
        Check::Lemma32 => vec![sweep_result(sweep_lemma32(&real, ctx.radius(6))?)],
        Check::Geodesic => {
            let radius = ctx.radius(8);
            let tol = ctx.opts.tol.unwrap_or(GEODESIC_TOL);
            ctx.param("tol", tol);
            vec![sweep_result(sweep_geodesic_with_tol(&real, radius, seed, tol)?)]
        }
        Check::Convexity => {
            let radius = ctx.radius(6);
            let trials = ctx.opts.trials.unwrap_or(DEFAULT_TRIALS);
            ctx.param("trials", trials);
            let subsets = ctx.subsets_or_all(proper)?;
            vec![sweep_result(sweep_convexity(&real, &subsets, trials, radius, seed)?)]
        }
        Check::Halfspace => {
            let radius = ctx.radius(6);
            let samples = ctx.opts.trials.unwrap_or(DEFAULT_TRIALS);
            let box_radius = ctx.opts.box_radius.unwrap_or(2.0 * real.diam());
            if box_radius.is_nan() || box_radius <= 0.0 {
                return Err(CliError::Usage { flag: "--box-radius", message: "must be positive".into() });
            }
            ctx.param("samples", samples);
            ctx.param("box_radius", box_radius);
            let subsets = ctx.subsets_or_all(proper)?;
            vec![sweep_result(sweep_halfspace(&real, &subsets, radius, samples, seed, box_radius)?)]
        }
        Check::Limits => {
            let radius = ctx.opts.radius.map_or(LIMIT_RADIUS, |r| r as f64);
            ctx.param("radius", radius);
            let subsets = ctx.subsets_or_all(|_| true)?;
            subsets
                .iter()
                .map(|&t| {
                    let l = limit_directions(&real, t, radius)?;
                    Ok(CheckResult::new(
                        format!("limits {:?}", t.to_vec()),
                        l.consistent,
                        serde_json::to_value(&l).unwrap_or(Value::Null),
                    ))
                })
                .collect::<Result<Vec<_>, CliError>>()?
        }
    };
    Ok(ctx.finish(command, results))
}
