//! Command-line front end: catalog export, generators, orbit census, classification and verification suites.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::admissible::{enumerate_admissible, render_diagram, subset_by_label, AdmissibleSubset, Catalog, DiagramJson, Label};
use crate::char_matrix::minor_generators;
use crate::error::{Error, Result};
use crate::orbit::{
    canonical_form, census_with_budget, classify, orbit_bfs, polarization, stratum_dim_formula, stratum_max_dims,
    subregular_dimension, verify_polarization, LinearForm, SubregularToolkit, BUDGET_ENV,
};
use crate::root_system::Root;
use crate::symbolic::{build_ideal, is_poisson_ideal, Constants, Field, FieldElement, Polynomial, Var};

/// Exit status for a failed verification suite.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status for malformed flags.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for runtime errors such as an exhausted state budget.
pub const EXIT_ERROR: i32 = 3;

/// Largest `n` for which the classification is established.
pub const VERIFIED_MAX_N: usize = 7;

#[derive(Debug, Parser)]
#[command(name = "ut-orbits", version, about = "Coadjoint orbits of the unitriangular group UT(n, K)")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Maximum number of forms a single search may visit.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DiagramFormat {
    Ascii,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TextFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Polarizations,
    Ideals,
    Census,
    Strata,
    Subregular,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the maximal admissible diagrams in catalog order.
    Diagrams {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = DiagramFormat::Ascii)]
        format: DiagramFormat,
        /// Only maximal subsets (the default).
        #[arg(long, conflicts_with = "all")]
        maximal_only: bool,
        /// Every admissible subset, maximal or not.
        #[arg(long)]
        all: bool,
    },
    /// Orbit equations of one diagram: the triangular ideal and the minor invariants.
    Generators {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        diagram: Label,
        /// Values of c on S in sequence order, e.g. `1,2,-1/2`; symbolic when omitted.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Count all orbits over F_p and check the counting identities.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        per_dimension: bool,
    },
    /// Find the canonical pair (S, c) of the orbit through a form.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        /// Nonzero coordinates, `i,j=v;i,j=v`.
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// The canonical form f_{S,c}.
    Canonical {
        #[arg(long)]
        diagram: Label,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        /// Work over F_p instead of the rationals.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Run a verification suite; exits nonzero on the first failure.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: Option<u64>,
    },
}

/// Outcome of `run`: the report text and the process exit status.
#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub status: i32,
}

fn pretty(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::InvalidDimension(n))
    } else {
        Ok(())
    }
}

fn regime(n: usize) -> &'static str {
    if n <= VERIFIED_MAX_N {
        "verified"
    } else {
        "unverified"
    }
}

fn parse_values(text: &str) -> Result<Vec<BigRational>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<BigRational>().map_err(|_| Error::Parse(format!("bad value {s:?}"))))
        .collect()
}

fn constants_for(s: &AdmissibleSubset, text: &str) -> Result<BTreeMap<Root, BigRational>> {
    let values = parse_values(text)?;
    if values.len() != s.len() {
        return Err(Error::InvalidC(format!("expected {} values, got {}", s.len(), values.len())));
    }
    Ok(s.roots().iter().copied().zip(values).collect())
}

/// Dispatches one command; errors are returned, verification failures become a status.
pub fn run(config: &RunConfig) -> Result<Report> {
    if let Some(b) = config.budget {
        std::env::set_var(BUDGET_ENV, b.to_string());
    }
    let ok = |text: String| Ok(Report { text, status: 0 });
    match &config.command {
        Command::Diagrams { n, format, all, .. } => {
            check_n(*n)?;
            ok(diagrams(*n, *format, *all)?)
        }
        Command::Generators { n, diagram, c, format } => {
            check_n(*n)?;
            if diagram.n != *n {
                return Err(Error::Parse(format!("diagram {diagram} does not have n = {n}")));
            }
            ok(generators(*diagram, c.as_deref(), *format)?)
        }
        Command::Census { n, p, per_dimension } => {
            check_n(*n)?;
            let budget = crate::orbit::default_budget();
            let r = census_with_budget(*n, *p, budget)?;
            let mut v = json!({
                "n": r.n,
                "p": r.p,
                "regime": regime(*n),
                "total_orbits": r.total_orbits,
                "orbits": r.orbits,
                "identities": r.identities,
            });
            if *per_dimension {
                v["per_dimension"] = json!(r.per_dimension);
                v["expected_per_dimension"] = json!(r.expected_per_dimension);
            }
            Ok(Report { text: pretty(&v), status: if r.ok() { 0 } else { EXIT_FAILURE } })
        }
        Command::Classify { n, p, form } => {
            check_n(*n)?;
            let f = LinearForm::parse(*n, Field::prime(*p)?, form)?;
            let c = classify(&f)?;
            let consts: Vec<Value> =
                c.constants().iter().map(|(r, v)| json!({"row": r.row(), "col": r.col(), "value": v})).collect();
            ok(pretty(&json!({
                "n": n,
                "p": p,
                "regime": regime(*n),
                "label": c.label.to_string(),
                "dim": c.dim,
                "orbit_size": c.orbit_size,
                "canonical": c.canonical.to_string(),
                "c": consts,
                "grid": render_diagram(&c.subset).ascii_rows(),
            })))
        }
        Command::Canonical { diagram, c, p } => {
            let s = subset_by_label(*diagram)?;
            let field = match p {
                Some(p) => Field::prime(*p)?,
                None => Field::Rational,
            };
            let values = constants_for(&s, c)?
                .into_iter()
                .map(|(r, v)| Ok((r, field.from_rational(&v)?)))
                .collect::<Result<BTreeMap<Root, FieldElement>>>()?;
            let f = canonical_form(&s, field, &values)?;
            ok(pretty(&json!({
                "label": diagram.to_string(),
                "regime": regime(diagram.n),
                "form": f.to_string(),
                "dim": s.dimension(),
                "grid": render_diagram(&s).ascii_rows(),
            })))
        }
        Command::Verify { suite, n, p } => {
            check_n(*n)?;
            verify(*suite, *n, *p, config.seed)
        }
    }
}

fn diagrams(n: usize, format: DiagramFormat, all: bool) -> Result<String> {
    let entries: Vec<(Option<Label>, AdmissibleSubset)> = if all {
        let cat = Catalog::new(n)?;
        enumerate_admissible(n)?.into_iter().map(|s| (cat.label_of(&s), s)).collect()
    } else {
        Catalog::new(n)?.entries.into_iter().map(|e| (Some(e.label), e.subset)).collect()
    };
    Ok(match format {
        DiagramFormat::Json => pretty(&entries.iter().map(|(l, s)| DiagramJson::new(s, *l)).collect::<Vec<_>>()),
        DiagramFormat::Ascii => {
            let mut out = String::new();
            for (l, s) in &entries {
                let name = l.map(|l| l.to_string()).unwrap_or_else(|| "(not maximal)".into());
                out += &format!("{name} {s} dim {}\n", s.dimension());
                out += &render_diagram(s).render(false);
                out.push('\n');
            }
            out
        }
    })
}

fn generators(label: Label, c: Option<&str>, format: TextFormat) -> Result<String> {
    let s = subset_by_label(label)?;
    let (constants, c_of): (Constants, Box<dyn Fn(Root) -> Polynomial>) = match c {
        None => (Constants::symbolic(&s), Box::new(Polynomial::c)),
        Some(text) => {
            let values = constants_for(&s, text)?;
            let consts = Constants::numeric(&s, &values)?;
            (consts, Box::new(move |r| Polynomial::constant(values[&r].clone())))
        }
    };
    let orbit = build_ideal(&s, &constants)?;
    let on_s: Vec<Root> = s.roots().to_vec();
    let at_f = |poly: &Polynomial| {
        poly.substitute(&|v| match v {
            Var::Y(r) if on_s.contains(&r) => Some(c_of(r)),
            Var::Y(_) => Some(Polynomial::zero()),
            Var::C(_) => None,
        })
    };
    let mut minors = Vec::new();
    for g in minor_generators(&s)? {
        let value = at_f(&g.poly)?;
        minors.push((g.eta, g.h, g.poly, value));
    }
    Ok(match format {
        TextFormat::Json => pretty(&json!({
            "label": label.to_string(),
            "regime": regime(label.n),
            "dim": s.dimension(),
            "ideal": orbit.generators.iter().map(|(eta, g)| json!({"eta": eta.to_string(), "generator": g.to_string()})).collect::<Vec<_>>(),
            "minors": minors.iter().map(|(eta, h, p, v)| json!({"eta": eta.to_string(), "h": h, "poly": p.to_string(), "value": v.to_string()})).collect::<Vec<_>>(),
        })),
        TextFormat::Text => {
            let mut out = format!("{label} {s} dim {}\n", s.dimension());
            out += &render_diagram(&s).render(false);
            out += "orbit ideal (each generator = 0):\n";
            for (eta, g) in &orbit.generators {
                out += &format!("  [{eta}] {g}\n");
            }
            out += "minor invariants (P = value):\n";
            for (eta, h, p, v) in &minors {
                out += &format!("  P[h={h},{eta}] = {p}\n      = {v}\n");
            }
            out
        }
    })
}

#[derive(Debug, Serialize)]
struct SuiteReport {
    suite: String,
    n: usize,
    p: Option<u64>,
    seed: u64,
    regime: &'static str,
    checked: usize,
    passed: bool,
    first_failure: Option<String>,
    details: Value,
}

fn verify(suite: Suite, n: usize, p: Option<u64>, seed: u64) -> Result<Report> {
    let mut details = Value::Null;
    let outcomes: Vec<(String, bool)> = match suite {
        Suite::Polarizations => {
            let field = match p {
                Some(p) => Field::prime(p)?,
                None => Field::Rational,
            };
            let entries = Catalog::new(n)?.entries;
            // one draw sequence per diagram, derived from the seed and the catalog position
            let results: Vec<Result<(String, bool)>> = entries
                .par_iter()
                .enumerate()
                .map(|(k, e)| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((k as u64 + 1) << 32));
                    let s = &e.subset;
                    let otimes = s.otimes();
                    let mut good = true;
                    for _ in 0..20 {
                        let c: BTreeMap<Root, FieldElement> = s
                            .roots()
                            .iter()
                            .map(|&r| {
                                let v: i64 = if otimes.contains(&r) {
                                    let x = rng.gen_range(1..50i64);
                                    if rng.gen_bool(0.5) { -x } else { x }
                                } else {
                                    rng.gen_range(-49..50i64)
                                };
                                (r, field.from_i64(v))
                            })
                            .map(|(r, v)| if v.is_zero() && otimes.contains(&r) { (r, field.one()) } else { (r, v) })
                            .collect();
                        good &= verify_polarization(s, &canonical_form(s, field, &c)?)?.ok();
                    }
                    let extra: Vec<String> = polarization(s).iter().filter(|r| !s.roots().contains(r)).map(|r| r.to_string()).collect();
                    Ok((format!("{} P\\S = {{{}}}", e.label, extra.join(" ")), good))
                })
                .collect();
            results.into_iter().collect::<Result<_>>()?
        }
        Suite::Ideals => {
            let catalog = Catalog::new(n)?.entries;
            let results: Vec<Result<(String, bool)>> = catalog
                .par_iter()
                .map(|e| {
                    let o = build_ideal(&e.subset, &Constants::symbolic(&e.subset))?;
                    let pivots: Vec<Root> = o.ideal.pivots().into_iter().collect();
                    let a: Vec<Root> = e.subset.a_set().iter().collect();
                    let good = is_poisson_ideal(&o.ideal)? && pivots == a && 2 * o.pairs.len() == e.subset.dimension();
                    Ok((e.label.to_string(), good))
                })
                .collect();
            results.into_iter().collect::<Result<_>>()?
        }
        Suite::Census => {
            let p = p.unwrap_or(2);
            let r = census_with_budget(n, p, crate::orbit::default_budget())?;
            details = json!({"total_orbits": r.total_orbits, "identities": r.identities});
            vec![(format!("census n={n} p={p}"), r.ok())]
        }
        Suite::Strata => {
            let p = p.unwrap_or(2);
            let r = census_with_budget(n, p, crate::orbit::default_budget())?;
            let dims = stratum_max_dims(&r);
            details = json!(dims);
            (0..n)
                .map(|i| {
                    let want = stratum_dim_formula(n, i);
                    (format!("stratum {i}: observed {:?}, formula {want}", dims.get(&i)), dims.get(&i) == Some(&want))
                })
                .collect()
        }
        Suite::Subregular => {
            let p = p.unwrap_or(2);
            let tk = SubregularToolkit::new(n, p)?;
            let r = census_with_budget(n, p, crate::orbit::default_budget())?;
            let mut out = Vec::new();
            let mut cases = Vec::new();
            for rec in r.records.iter().filter(|x| x.dim == subregular_dimension(n)) {
                let (space, orbit) = orbit_bfs(&rec.canonical)?;
                let systems = tk.systems(&space.decode_digits(rec.canonical_code))?;
                let mut fits = Vec::new();
                for sys in &systems {
                    if tk.cuts_out(&space, sys, &orbit)? {
                        fits.push(format!("{:?}", sys.case));
                    }
                }
                cases.push(json!({"label": rec.label.to_string(), "form": rec.canonical.to_string(), "systems": fits}));
                out.push((format!("{} at {}", rec.label, rec.canonical), !fits.is_empty()));
            }
            details = json!(cases);
            out
        }
    };
    let first_failure = outcomes.iter().find(|(_, good)| !good).map(|(what, _)| what.clone());
    if details.is_null() {
        details = json!(outcomes.iter().map(|(w, _)| w).collect::<Vec<_>>());
    }
    let report = SuiteReport {
        suite: format!("{suite:?}").to_lowercase(),
        n,
        p,
        seed,
        regime: regime(n),
        checked: outcomes.len(),
        passed: first_failure.is_none(),
        first_failure,
        details,
    };
    let status = if report.passed { 0 } else { EXIT_FAILURE };
    Ok(Report { text: pretty(&report), status })
}

/// Parses arguments, runs, writes the report and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match run(&config) {
        Ok(report) => {
            let written = match &config.out {
                Some(path) => std::fs::write(path, &report.text),
                None => std::io::stdout().write_all(report.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return EXIT_ERROR;
            }
            if report.status != 0 {
                eprintln!("verification failed");
            }
            report.status
        }
        Err(e @ (Error::InvalidDimension(_) | Error::NotPrime(_) | Error::Parse(_) | Error::InvalidC(_) | Error::RootOutOfRange(..))) => {
            eprintln!("usage error: {e}");
            EXIT_USAGE
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
