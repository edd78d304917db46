mod output;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use semitoric::grassmann::governed::governed_check;
use semitoric::grassmann::plucker::Minors;
use semitoric::grassmann::straighten::{straighten, StraighteningTable};
use semitoric::grassmann::Grassmannian;
use semitoric::hibi::{hibi_ideal_generators, standard_basis};
use semitoric::polytope::{
    beta, dyck_paths, fflv_polytope, ideal_point, no_body, order_polytope, to_rational, transfer,
    transfer_unchecked, triangulate,
};
use semitoric::poset::PosetFile;
use semitoric::valuation::{chain_valuation, Family, Laurent, ValuationFamily};
use semitoric::verify::{grassmann_checks, lattice_checks};
use semitoric::{DistributiveLattice, Elem, MaximalChain, Poset};

const EXIT_DOMAIN: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "semitoric", version, about = "Distributive lattices, Hibi rings, straightening and polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args, Debug)]
struct Options {
    /// Grassmannian rank d (with --n)
    #[arg(long, global = true)]
    d: Option<usize>,
    /// Grassmannian ambient dimension n (with --d)
    #[arg(long, global = true)]
    n: Option<usize>,
    /// JSON poset file {"elements": [...], "covers": [[lo, hi], ...]}; the lattice is its ideal lattice
    #[arg(long, global = true, value_name = "FILE")]
    poset: Option<PathBuf>,
    /// Valuation family: spec, maxspec or ht
    #[arg(long, global = true, default_value = "spec")]
    family: Family,
    /// Chain index in enumeration order, or element labels separated by '<' or ';'
    #[arg(long, global = true, default_value = "0")]
    chain: String,
    /// Two elements, e.g. 14,23 or [1,4],[2,3]
    #[arg(long, global = true)]
    pair: Option<String>,
    /// Dilation factor for lattice points, or degree for the standard basis
    #[arg(long, global = true)]
    dilation: Option<i64>,
    /// Monomial such as "[1,4]^2 [2,3]" (factors separated by spaces or '*')
    #[arg(long, global = true)]
    monomial: Option<String>,
    /// Single element for beta
    #[arg(long, global = true)]
    element: Option<String>,
    /// Point of the order polytope in cell coordinates, comma separated rationals
    #[arg(long, global = true)]
    point: Option<String>,
    /// Write JSON here instead of standard output
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Largest lattice accepted
    #[arg(long, global = true, default_value_t = 64)]
    max_elements: u128,
    /// Largest number of maximal chains accepted
    #[arg(long, global = true, default_value_t = 100_000)]
    max_chains: u128,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Elements, join-irreducibles and cover relations
    Lattice,
    /// Maximal chains with their enumerations of the join-irreducibles
    Chains,
    /// Hibi ideal generators and a standard basis
    HibiIdeal,
    /// Chain valuation of x_hat monomials
    Valuate,
    /// Minimum of the chain valuations of one family
    Quasi,
    /// Straightening relations of incomparable Pluecker pairs
    Straighten,
    /// Check that the Pluecker algebra is governed by the index lattice
    Governed,
    /// Newton-Okounkov body of one chain
    NoBody,
    /// FFLV polytope and its Dyck paths
    Fflv,
    /// Antichains of the root poset attached to elements
    Beta,
    /// Unimodular triangulation of the Gelfand-Tsetlin polytope
    Triangulate,
    /// Transfer map from the order polytope to the FFLV polytope
    Transfer,
    /// Run the property suite
    Verify,
}

impl Command {
    fn needs_grassmannian(self) -> bool {
        matches!(
            self,
            Command::Straighten
                | Command::Governed
                | Command::NoBody
                | Command::Fflv
                | Command::Beta
                | Command::Triangulate
                | Command::Transfer
        )
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<semitoric::Error> for Failure {
    fn from(e: semitoric::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome<T> = Result<T, Failure>;

enum Target {
    Grassmann(Grassmannian),
    Poset(DistributiveLattice),
}

impl Target {
    fn lattice(&self) -> &DistributiveLattice {
        match self {
            Target::Grassmann(g) => g.lattice(),
            Target::Poset(l) => l,
        }
    }

    fn grassmannian(&self) -> Outcome<&Grassmannian> {
        match self {
            Target::Grassmann(g) => Ok(g),
            Target::Poset(_) => Err(Failure::Usage("this subcommand needs --d and --n".into())),
        }
    }

    fn element(&self, text: &str) -> Outcome<Elem> {
        let text = text.trim();
        Ok(match self {
            Target::Grassmann(g) => g.parse(text)?,
            Target::Poset(l) => l.find(text)?,
        })
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k.min(n)).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

fn load_target(opts: &Options) -> Outcome<Target> {
    let target = match (opts.d, opts.n, &opts.poset) {
        (Some(d), Some(n), None) => {
            let size = binomial(n, d);
            if size > opts.max_elements {
                return Err(Failure::Domain(format!(
                    "I({d},{n}) has {size} elements, above the cap of {} (raise --max-elements)",
                    opts.max_elements
                )));
            }
            Target::Grassmann(Grassmannian::new(d, n)?)
        }
        (None, None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let file: PosetFile = serde_json::from_str(&text)?;
            Target::Poset(DistributiveLattice::from_poset(Poset::from_file(&file)?))
        }
        _ => return Err(Failure::Usage("give either --d and --n, or --poset".into())),
    };
    let l = target.lattice();
    if l.len() as u128 > opts.max_elements {
        return Err(Failure::Domain(format!(
            "lattice has {} elements, above the cap of {} (raise --max-elements)",
            l.len(),
            opts.max_elements
        )));
    }
    if l.chain_count() > opts.max_chains {
        return Err(Failure::Domain(format!(
            "lattice has {} maximal chains, above the cap of {} (raise --max-chains)",
            l.chain_count(),
            opts.max_chains
        )));
    }
    Ok(target)
}

fn labels(l: &DistributiveLattice, elems: &[Elem]) -> Vec<String> {
    elems.iter().map(|&e| l.label(e).to_string()).collect()
}

fn chain_labels(l: &DistributiveLattice, c: &MaximalChain) -> Vec<String> {
    labels(l, c.elements())
}

fn parse_chain(target: &Target, spec: &str) -> Outcome<MaximalChain> {
    let l = target.lattice();
    if let Ok(k) = spec.trim().parse::<usize>() {
        return l
            .maximal_chains()
            .nth(k)
            .ok_or_else(|| Failure::Domain(format!("chain index {k} out of range ({} chains)", l.chain_count())));
    }
    let elems = spec
        .split(['<', ';'])
        .filter(|s| !s.trim().is_empty())
        .map(|s| target.element(s))
        .collect::<Outcome<Vec<_>>>()?;
    Ok(l.chain(elems)?)
}

/// Bracket groups when present, otherwise a split on ',' or ';'.
fn split_pair(text: &str) -> Vec<String> {
    if text.contains('[') {
        let mut groups = Vec::new();
        let mut current = String::new();
        let mut depth = 0;
        for ch in text.chars() {
            match ch {
                '[' => {
                    depth += 1;
                    current.push(ch);
                }
                ']' => {
                    depth -= 1;
                    current.push(ch);
                    if depth == 0 {
                        groups.push(std::mem::take(&mut current));
                    }
                }
                _ if depth > 0 => current.push(ch),
                _ => {}
            }
        }
        return groups;
    }
    let sep = if text.contains(';') { ';' } else { ',' };
    text.split(sep).map(|s| s.trim().to_string()).collect()
}

fn parse_pair(target: &Target, text: &str) -> Outcome<(Elem, Elem)> {
    match split_pair(text).as_slice() {
        [a, b] => Ok((target.element(a)?, target.element(b)?)),
        _ => Err(Failure::Usage(format!("--pair expects two elements, got `{text}`"))),
    }
}

fn parse_monomial(target: &Target, text: &str) -> Outcome<Vec<Elem>> {
    let mut factors = Vec::new();
    for token in text.split(|c: char| c == '*' || c.is_whitespace()).filter(|s| !s.is_empty()) {
        let (base, exp) = match token.split_once('^') {
            Some((b, k)) => (
                b,
                k.parse::<usize>()
                    .map_err(|_| Failure::Usage(format!("bad exponent in `{token}`")))?,
            ),
            None => (token, 1),
        };
        let e = target.element(base)?;
        factors.extend(std::iter::repeat_n(e, exp));
    }
    if factors.is_empty() {
        return Err(Failure::Usage("--monomial is empty".into()));
    }
    Ok(factors)
}

fn parse_point(text: &str) -> Outcome<Vec<BigRational>> {
    text.split(',')
        .map(|s| {
            BigRational::from_str(s.trim()).map_err(|_| Failure::Usage(format!("bad rational `{}`", s.trim())))
        })
        .collect()
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn dilation(opts: &Options) -> i64 {
    opts.dilation.unwrap_or(1)
}

/// Runs one subcommand; the flag is false when a verification failed.
fn execute(command: Command, opts: &Options) -> Outcome<(Value, bool)> {
    let target = load_target(opts)?;
    if command.needs_grassmannian() {
        target.grassmannian()?;
    }
    let l = target.lattice();
    let ok = |v: Value| Ok((v, true));
    match command {
        Command::Lattice => {
            let mut v = serde_json::to_value(l.export())?;
            v["rank"] = json!(l.rank());
            v["chainCount"] = output::count(l.chain_count());
            ok(v)
        }
        Command::Chains => {
            let chains: Vec<Value> = l
                .maximal_chains()
                .enumerate()
                .map(|(i, c)| {
                    let e = l.chain_to_enumeration(&c)?;
                    Ok(json!({
                        "index": i,
                        "chain": chain_labels(l, &c),
                        "enumeration": labels(l, e.order()),
                    }))
                })
                .collect::<Outcome<_>>()?;
            ok(json!({ "count": output::count(l.chain_count()), "chains": chains }))
        }
        Command::HibiIdeal => {
            let degree = opts.dilation.unwrap_or(2);
            if degree < 0 {
                return Err(Failure::Usage("degree must be non-negative".into()));
            }
            let generators: Vec<_> = hibi_ideal_generators(l).iter().map(|r| r.export(l)).collect();
            let basis: Vec<Vec<String>> = standard_basis(l, degree as usize).iter().map(|m| m.labels(l)).collect();
            ok(json!({ "generators": generators, "degree": degree, "standardBasis": basis }))
        }
        Command::Valuate => {
            let chain = parse_chain(&target, &opts.chain)?;
            let nu = chain_valuation(l, &chain, opts.family)?;
            let value = |factors: &[Elem]| nu.valuate(&Laurent::product_of(l, factors)).coords().to_vec();
            let base = json!({ "family": opts.family.name(), "chain": chain_labels(l, &chain) });
            let mut v = base;
            match &opts.monomial {
                Some(text) => {
                    let factors = parse_monomial(&target, text)?;
                    v["monomial"] = json!(labels(l, &factors));
                    v["value"] = json!(value(&factors));
                }
                None => {
                    let values: Vec<Value> = l
                        .elements()
                        .map(|e| json!({ "element": l.label(e), "value": value(&[e]) }))
                        .collect();
                    v["values"] = json!(values);
                }
            }
            ok(v)
        }
        Command::Quasi => {
            let fam = ValuationFamily::new(l, opts.family)?;
            let quasi = |factors: &[Elem]| {
                let q = fam.quasi_monomial(&Laurent::product_of(l, factors));
                let argmin: Vec<Vec<String>> = q
                    .argmin
                    .iter()
                    .map(|&i| chain_labels(l, fam.valuations()[i].chain()))
                    .collect();
                json!({
                    "family": opts.family.name(),
                    "monomial": labels(l, factors),
                    "value": q.value.coords(),
                    "argminChains": argmin,
                })
            };
            match &opts.monomial {
                Some(text) => ok(quasi(&parse_monomial(&target, text)?)),
                None => ok(Value::Array(l.elements().map(|e| quasi(&[e])).collect())),
            }
        }
        Command::Straighten => {
            let g = target.grassmannian()?;
            match &opts.pair {
                Some(text) => {
                    let (a, b) = parse_pair(&target, text)?;
                    let s = straighten(g, &Minors::new(g), a, b)?;
                    ok(serde_json::to_value(s.export(g))?)
                }
                None => {
                    let table = StraighteningTable::build(g)?;
                    let rows: Vec<_> = table.entries().map(|s| s.export(g)).collect();
                    ok(serde_json::to_value(rows)?)
                }
            }
        }
        Command::Governed => {
            let g = target.grassmannian()?;
            let table = StraighteningTable::build(g)?;
            let report = governed_check(g, &table);
            let pairs: Vec<_> = report.pairs.iter().map(|p| p.export(g)).collect();
            let passed = report.passed();
            Ok((
                json!({
                    "status": if passed { "pass" } else { "fail" },
                    "basisIndependent": report.basis_ok,
                    "pairs": pairs,
                }),
                passed,
            ))
        }
        Command::NoBody => {
            let g = target.grassmannian()?;
            let chain = parse_chain(&target, &opts.chain)?;
            let body = no_body(g, &chain)?;
            let points: Vec<Value> = l
                .elements()
                .map(|e| json!({ "element": l.label(e), "value": body.points[e.index()] }))
                .collect();
            let lattice_points = body.polytope.lattice_points(dilation(opts))?;
            ok(json!({
                "chain": chain_labels(l, &chain),
                "cells": strings(&body.cells),
                "generators": points,
                "polytope": body.polytope.export(lattice_points),
            }))
        }
        Command::Fflv => {
            let g = target.grassmannian()?;
            let p = fflv_polytope(g)?;
            let lattice_points = p.lattice_points(dilation(opts))?;
            let paths: Vec<Vec<String>> = dyck_paths(g).iter().map(|d| strings(&d.roots)).collect();
            ok(json!({
                "cells": strings(&g.cells()),
                "dyckPaths": paths,
                "polytope": p.export(lattice_points),
            }))
        }
        Command::Beta => {
            let g = target.grassmannian()?;
            let elems: Vec<Elem> = match &opts.element {
                Some(text) => vec![target.element(text)?],
                None => l.elements().collect(),
            };
            let rows: Vec<Value> = elems
                .iter()
                .map(|&e| {
                    let b = beta(g, e);
                    json!({ "element": l.label(e), "antichain": strings(&b.roots), "chi": b.chi })
                })
                .collect();
            ok(json!({ "cells": strings(&g.cells()), "beta": rows }))
        }
        Command::Triangulate => {
            let g = target.grassmannian()?;
            let simplices = triangulate(g);
            let total: u128 = simplices.iter().map(|s| s.normalized_volume()).sum();
            let keyed: BTreeMap<String, Value> = simplices
                .iter()
                .map(|s| {
                    let e = s.export(g);
                    let key = e.chain.join(" < ");
                    (key, json!({ "vertices": e.vertices, "normalizedVolume": output::count(e.normalized_volume) }))
                })
                .collect();
            ok(json!({
                "cells": strings(&g.cells()),
                "simplices": keyed,
                "totalNormalizedVolume": output::count(total),
            }))
        }
        Command::Transfer => {
            let g = target.grassmannian()?;
            let order = order_polytope(g)?;
            match &opts.point {
                Some(text) => {
                    let x = parse_point(text)?;
                    let y = transfer(g, &order, &x)?;
                    ok(json!({ "point": strings(&x), "image": strings(&y) }))
                }
                None => {
                    let rows: Vec<Value> = l
                        .elements()
                        .map(|e| {
                            let x = ideal_point(g, e);
                            let y = transfer_unchecked(g, &to_rational(&x));
                            json!({ "element": l.label(e), "point": x, "image": strings(&y) })
                        })
                        .collect();
                    ok(json!({ "cells": strings(&g.cells()), "table": rows }))
                }
            }
        }
        Command::Verify => {
            let checks = match &target {
                Target::Grassmann(g) => grassmann_checks(g)?,
                Target::Poset(l) => lattice_checks(l)?,
            };
            let passed = checks.iter().all(|c| c.passed);
            Ok((
                json!({ "status": if passed { "pass" } else { "fail" }, "checks": checks }),
                passed,
            ))
        }
    }
}

fn run(cli: Cli) -> Outcome<bool> {
    if let Some(jobs) = cli.opts.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::Domain(e.to_string()))?;
    }
    let (value, passed) = execute(cli.command, &cli.opts)?;
    output::emit(&output::render(&value)?, cli.opts.out.as_deref())?;
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFY),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}
