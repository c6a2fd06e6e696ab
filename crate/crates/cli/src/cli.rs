use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use clifford_core::normalform::{truncated_completion_with_cap, RewriteSystem, DEFAULT_RULE_CAP};
use clifford_core::presentation::{clifford_relations, hypersurface_equation, FormSpec};
use clifford_core::representations::{
    is_specialization, reduced_compatible, search_reps, verify_rep, SearchMode, SearchOptions,
    SearchReport, DEFAULT_CANDIDATE_CAP,
};
use clifford_core::text::{format_ncpoly, parse_ncpoly, x_names};
use clifford_core::ulrich::{
    genus, module_from_rep, splitting_type, ulrich_check, CurveData, GenusSource, GradedModule,
};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::io::*;
use crate::search;

#[derive(Debug, Parser)]
#[command(name = "clifford-forge", version, about = "Generalized Clifford algebras of forms")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the JSON result to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Clifford relations, one per x-monomial of degree m*d.
    Relations {
        #[arg(long)]
        form: PathBuf,
    },
    /// Rewriting rules and filtered dimensions up to a degree bound.
    Basis {
        #[arg(long)]
        form: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=64))]
        degree: u16,
        #[arg(long, default_value_t = DEFAULT_RULE_CAP)]
        rule_cap: usize,
    },
    /// Normal form of a noncommutative polynomial in the generators.
    Nf {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        poly: String,
        /// Completion bound; defaults to the larger of d and the degree of the input.
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=64))]
        degree: Option<u16>,
        #[arg(long, default_value_t = DEFAULT_RULE_CAP)]
        rule_cap: usize,
    },
    /// Basis of the center within words of length at most t.
    Center {
        #[arg(long)]
        form: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u16).range(0..=63))]
        t: u16,
        /// Completion bound; defaults to the larger of d and t + 1.
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=64))]
        degree: Option<u16>,
        #[arg(long, default_value_t = DEFAULT_RULE_CAP)]
        rule_cap: usize,
    },
    /// Checks a matrix representation and its surjectivity.
    VerifyRep {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        rep: PathBuf,
    },
    /// Searches for representations of a given size.
    SearchRep {
        #[arg(long)]
        form: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=64))]
        size: u16,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_CANDIDATE_CAP, value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
    },
    /// Splitting type and Ulrich criterion of a module.
    #[command(group(ArgGroup::new("input").required(true).args(["module", "rep"])))]
    UlrichCheck {
        #[arg(long, conflicts_with_all = ["form", "rep"])]
        module: Option<PathBuf>,
        #[arg(long, requires = "rep")]
        form: Option<PathBuf>,
        #[arg(long, requires = "form")]
        rep: Option<PathBuf>,
        /// Genus of the curve, when the formula does not apply.
        #[arg(long)]
        genus: Option<u64>,
    },
    /// Splitting type of the pushforward to the projective line.
    #[command(group(ArgGroup::new("input").required(true).args(["module", "rep"])))]
    Splitting {
        #[arg(long, conflicts_with_all = ["form", "rep"])]
        module: Option<PathBuf>,
        #[arg(long, requires = "rep")]
        form: Option<PathBuf>,
        #[arg(long, requires = "form")]
        rep: Option<PathBuf>,
    },
    /// Genus of the curve of a binary form.
    Genus {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        genus: Option<u64>,
    },
    /// The hypersurface in weighted projective space.
    Hypersurface {
        #[arg(long)]
        form: PathBuf,
    },
}

/// Process result: exit code and the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.exit_code() {
                0 => Outcome { code: 0, stdout: text, stderr: String::new() },
                code => Outcome { code, stdout: String::new(), stderr: text },
            };
        }
    };
    let result = dispatch(&cli.command).and_then(|v| {
        let mut text = if cli.pretty {
            serde_json::to_string_pretty(&v).expect("values serialize")
        } else {
            serde_json::to_string(&v).expect("values serialize")
        };
        text.push('\n');
        match &cli.output {
            Some(path) => {
                std::fs::write(path, &text).map_err(|e| CliError::io(path, &e))?;
                Ok(String::new())
            }
            None => Ok(text),
        }
    });
    match result {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(CliError::Usage(msg)) => {
            Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
        Err(e) => {
            let mut stdout = e.to_json().to_string();
            stdout.push('\n');
            Outcome { code: e.exit_code(), stdout, stderr: String::new() }
        }
    }
}

fn dispatch(cmd: &Command) -> Result<Value, CliError> {
    match cmd {
        Command::Relations { form } => {
            let pres = clifford_relations(&read_spec(form)?)?;
            Ok(relations_json(&pres))
        }
        Command::Basis { form, degree, rule_cap } => {
            let spec = read_spec(form)?;
            let rs = complete(&spec, *degree as usize, *rule_cap)?;
            let dims = rs.filtered_dimension();
            let rules: Vec<Value> = rs
                .rules()
                .iter()
                .map(|r| json!({ "lead": word_json(r.lead()), "tail": ncpoly_json(&r.tail()) }))
                .collect();
            Ok(json!({
                "bound": rs.bound(),
                "complete_below": rs.complete_below(),
                "dims": dims.dims,
                "stable": dims.stable,
                "stabilized_total": dims.stabilized_total(),
                "generators": generators_json(&spec),
                "rules": rules,
            }))
        }
        Command::Nf { form, poly, degree, rule_cap } => {
            let spec = read_spec(form)?;
            let pres = clifford_relations(&spec)?;
            let names = pres.names();
            let p = parse_ncpoly(poly, &names, spec.field())
                .map_err(|e| CliError::domain_in("--poly".into(), e))?;
            let bound = degree
                .map(usize::from)
                .unwrap_or_else(|| p.degree().unwrap_or(0).max(spec.d() as usize));
            let rs = complete(&spec, bound, *rule_cap)?;
            let nf = rs.normal_form(&p)?;
            Ok(json!({
                "bound": rs.bound(),
                "complete_below": rs.complete_below(),
                "normal_form": format_ncpoly(&nf, &names),
                "terms": ncpoly_json(&nf),
            }))
        }
        Command::Center { form, t, degree, rule_cap } => {
            let spec = read_spec(form)?;
            let t = *t as usize;
            let bound = degree.map(usize::from).unwrap_or((t + 1).max(spec.d() as usize));
            let rs = complete(&spec, bound, *rule_cap)?;
            let names = rs.presentation().names();
            let basis = rs.center_basis(t)?;
            Ok(json!({
                "t": t,
                "bound": rs.bound(),
                "complete_below": rs.complete_below(),
                "basis": basis.iter().map(|z| format_ncpoly(z, &names)).collect::<Vec<_>>(),
                "terms": basis.iter().map(ncpoly_json).collect::<Vec<_>>(),
            }))
        }
        Command::VerifyRep { form, rep } => {
            let spec = read_spec(form)?;
            let rep = read_rep(rep, &spec)?;
            let v = verify_rep(&rep)?;
            let field = spec.field();
            let mut out = json!({
                "valid": v.valid,
                "size": rep.size(),
                "witness": v.witness.as_ref().map(|w| witness_json(field, w)),
                "failing_relation": v.failing_relation.as_ref().map(|m| m.exponents().to_vec()),
                "specialization": null,
                "span_dimension": null,
                "reduced_compatible": null,
                "divisibility_gate_only": null,
            });
            if v.valid {
                let s = is_specialization(&rep)?;
                let r = reduced_compatible(&rep)?;
                out["specialization"] = json!(s.surjective);
                out["span_dimension"] = json!(s.span_dimension);
                out["reduced_compatible"] = json!(r.compatible);
                out["divisibility_gate_only"] = json!(r.divisibility_gate_only);
            }
            Ok(out)
        }
        Command::SearchRep { form, size, mode, seed, trials, cap } => {
            let spec = read_spec(form)?;
            let size = *size as usize;
            let report = match mode {
                Mode::Exhaustive => {
                    if seed.is_some() {
                        return Err(CliError::Usage("--seed only applies to --mode random".into()));
                    }
                    search::exhaustive(&spec, size, *cap, search::worker_count()?)?
                }
                Mode::Random => {
                    let seed = seed
                        .ok_or_else(|| CliError::Usage("--mode random requires --seed".into()))?;
                    let options = SearchOptions { cap: *cap, ..SearchOptions::default() };
                    search_reps(&spec, size, SearchMode::Random { seed, trials: *trials }, options)?
                }
            };
            Ok(search_report_json(&report))
        }
        Command::UlrichCheck { module, form, rep, genus: g } => {
            let module = load_module(module.as_deref(), form.as_deref(), rep.as_deref())?;
            let curve = curve_data(module.spec(), *g)?;
            let r = ulrich_check(&module, &curve)?;
            Ok(json!({
                "splitting": r.splitting.0,
                "is_ulrich": r.is_ulrich,
                "numerical_criterion": r.numerical_criterion(module.spec().d()),
                "slope": rational_json(r.slope),
                "genus": r.genus,
                "genus_source": source_name(curve.source),
                "h0_of_minus_one": r.h0_of_minus_one,
                "euler_characteristic": r.euler_characteristic,
                "rank": rational_json(r.rank),
                "degree": rational_json(r.degree),
                "free_rank": module.rank(),
            }))
        }
        Command::Splitting { module, form, rep } => {
            let module = load_module(module.as_deref(), form.as_deref(), rep.as_deref())?;
            Ok(json!({
                "shifts": module.shifts(),
                "splitting": splitting_type(&module).0,
                "free_rank": module.rank(),
            }))
        }
        Command::Genus { form, genus: g } => {
            let spec = read_spec(form)?;
            let c = curve_data(&spec, *g)?;
            Ok(json!({ "genus": c.genus, "degree": c.degree, "source": source_name(c.source) }))
        }
        Command::Hypersurface { form } => {
            let spec = read_spec(form)?;
            let h = hypersurface_equation(&spec);
            let mut vars = vec!["x0".to_string()];
            vars.extend(x_names(spec.n()));
            Ok(json!({
                "equation": poly_text(&h.equation, &vars),
                "variables": vars,
                "weights": h.weights,
                "genus_hint": h.genus_hint,
            }))
        }
    }
}

fn complete(spec: &FormSpec, bound: usize, cap: usize) -> Result<RewriteSystem, CliError> {
    let pres = clifford_relations(spec)?;
    Ok(truncated_completion_with_cap(&pres, bound, cap)?)
}

fn load_module(
    module: Option<&Path>,
    form: Option<&Path>,
    rep: Option<&Path>,
) -> Result<GradedModule, CliError> {
    match (module, form, rep) {
        (Some(m), _, _) => read_module(m),
        (None, Some(f), Some(r)) => {
            let spec = read_spec(f)?;
            Ok(module_from_rep(&read_rep(r, &spec)?)?)
        }
        _ => Err(CliError::Usage("give --module, or --form with --rep".into())),
    }
}

fn curve_data(spec: &FormSpec, user: Option<u64>) -> Result<CurveData, CliError> {
    match user {
        Some(g) => Ok(CurveData::user_supplied(spec, g)),
        None => Ok(genus(spec)?),
    }
}

fn source_name(s: GenusSource) -> &'static str {
    match s {
        GenusSource::Formula => "formula",
        GenusSource::UserSupplied => "user",
    }
}

pub fn search_report_json(r: &SearchReport) -> Value {
    let (mode, seed, trials) = match r.mode {
        SearchMode::Exhaustive => ("exhaustive", None, None),
        SearchMode::Random { seed, trials } => ("random", Some(seed), Some(trials)),
    };
    json!({
        "mode": mode,
        "seed": seed,
        "trials": trials,
        "cap": r.cap,
        "size": r.size,
        "field": field_json(r.field),
        "examined": r.examined,
        "exhausted": r.exhausted,
        "found": r.found.iter().map(rep_json).collect::<Vec<_>>(),
    })
}
