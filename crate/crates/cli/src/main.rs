//! `superweyl`: command-line front end. Reports are `key: value` lines.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use superweyl::acceptance;
use superweyl::atypical::{
    atypical_match, closed_form_coefficient, coefficient_oracle, coefficient_text, AtypicalContext,
    DEFAULT_Z_TRUNCATION,
};
use superweyl::numerator::{factor_numerator, normalized_character, numerator, pi0_names};
use superweyl::partitions::{k_partition_counts, SimpleGraph};
use superweyl::root_datum::{build_datum, AlgebraDescriptor, Atypicality, Parity, Source};
use superweyl::sampling::DEFAULT_SEED;
use superweyl::series::Names;
use superweyl::unifac::{search_counterexamples, verify_tensor_isomorphism};
use superweyl::weight_expr::parse_weight;
use superweyl::weyl::{generate_group, Component};
use superweyl::{fmt_q, Error, Family, RootDatum, Weight};

const EXIT_USAGE: u8 = 64;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser, Debug)]
#[command(name = "superweyl", version, about = "Weyl numerators and unique factorization for Lie superalgebras")]
struct Cli {
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct DatumArgs {
    /// sl, osp1, osp2, g3 or f4
    #[arg(long, required_unless_present = "datum_file")]
    family: Option<String>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Root datum file, instead of a built-in family.
    #[arg(long, conflicts_with = "family")]
    datum_file: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum GroupKind {
    All,
    One,
    Two,
    Full,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the root datum.
    Datum(DatumArgs),
    /// Order and elements of a Weyl group.
    Group {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_enum, default_value = "all")]
        component: GroupKind,
        /// List every element as a reduced word.
        #[arg(long)]
        list: bool,
    },
    /// Normalized Weyl numerator of a typical dominant weight.
    Numerator {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        weight: String,
        /// Print the component factors and signatures.
        #[arg(long)]
        factor: bool,
        /// Print the character truncated at total degree --trunc.
        #[arg(long)]
        char: bool,
        #[arg(long, default_value_t = 4)]
        trunc: u32,
    },
    /// k-partition counts and k(G) of the even diagram or a subset.
    Kgraph {
        #[command(flatten)]
        datum: DatumArgs,
        /// Comma-separated 1-based even indices.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Compare U-products of two weight lists.
    Verify {
        #[command(flatten)]
        datum: DatumArgs,
        /// Weights separated by `;`.
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Search swapped-signature quadruples.
    Search {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, default_value_t = 1)]
        tau_mult: i64,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Coefficient of X^λ in -log U(λ) for a singly atypical weight.
    AtypicalCoeff {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        weight: String,
        #[arg(long)]
        special: bool,
        #[arg(long, default_value_t = DEFAULT_Z_TRUNCATION)]
        ztrunc: u32,
        #[arg(long, conflicts_with_all = ["closed", "both"])]
        oracle: bool,
        #[arg(long, conflicts_with = "both")]
        closed: bool,
        #[arg(long)]
        both: bool,
    },
    /// Compare atypical numerator products of one atypicality type.
    AtypicalVerify {
        #[command(flatten)]
        datum: DatumArgs,
        /// The odd root, e.g. `eps[2] - delta[1]`.
        #[arg(long = "type")]
        gamma: String,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long)]
        special: bool,
        #[arg(long, default_value_t = DEFAULT_Z_TRUNCATION)]
        ztrunc: u32,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Run only these criteria (comma-separated).
        #[arg(long)]
        only: Option<String>,
    },
}

enum Failure {
    Lib(Error),
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out = Result<String, Failure>;

fn load(a: &DatumArgs) -> Result<RootDatum, Failure> {
    let desc = match (&a.datum_file, &a.family) {
        (Some(path), _) => AlgebraDescriptor { family: Family::Custom(path.clone()), source: Source::File(path.clone()) },
        (None, Some(f)) => AlgebraDescriptor::builtin(Family::from_cli(f, a.m, a.n)?),
        (None, None) => return Err(Failure::Usage("give --family or --datum-file".into())),
    };
    Ok(build_datum(&desc)?)
}

fn weight_list(src: &str, d: &RootDatum) -> Result<Vec<Weight>, Failure> {
    src.split(';').filter(|s| !s.trim().is_empty()).map(|s| parse_weight(s, d).map_err(Failure::from)).collect()
}

fn datum_report(d: &RootDatum) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "family: {}", d.family());
    let _ = writeln!(s, "basis: {}", d.basis_labels.join(" "));
    for (i, row) in d.gram.iter().enumerate() {
        let row: Vec<String> = row.iter().map(fmt_q).collect();
        let _ = writeln!(s, "gram[{}]: {}", i + 1, row.join(" "));
    }
    for (i, r) in d.simple.iter().enumerate() {
        let kind = match (r.parity, r.isotropic) {
            (Parity::Even, _) => "even",
            (Parity::Odd, true) => "odd isotropic",
            (Parity::Odd, false) => "odd",
        };
        let _ = writeln!(s, "simple {}: {} ({kind})", d.simple_name(i), d.format_root(&r.weight));
    }
    for (c, comp) in d.components.iter().enumerate() {
        let names: Vec<String> = comp.iter().map(|&i| d.simple_name(i)).collect();
        let _ = writeln!(s, "component {}: {}", c + 1, names.join(" "));
    }
    let _ = writeln!(s, "positive_even: {}", d.positive_even.len());
    for (g, r) in d.positive_odd.iter().enumerate() {
        let _ = writeln!(s, "odd {}: {}", d.odd_name(g), d.format_root(&r.weight));
    }
    let _ = writeln!(s, "rho: {}", d.format_weight(d.weyl_vector()));
    s
}

fn cmd_group(d: &RootDatum, kind: GroupKind, list: bool) -> Out {
    let c = match kind {
        GroupKind::All => Component::All,
        GroupKind::One => Component::One,
        GroupKind::Two => Component::Two,
        GroupKind::Full => Component::FullEven,
    };
    let g = generate_group(d, c)?;
    let mut s = format!("order: {}\n", g.len());
    if list {
        for w in &g.elements {
            let _ = writeln!(s, "element: {} length {}", w.format_word(), w.length());
        }
    }
    Ok(s)
}

fn cmd_numerator(d: &RootDatum, weight: &str, factor: bool, chr: bool, trunc: u32) -> Out {
    let w = parse_weight(weight, d)?;
    let names = pi0_names(d);
    let mut s = format!("weight: {}\n", d.format_weight(&w));
    let u = numerator(d, &w)?;
    let _ = writeln!(s, "dominance: {:?}", d.is_dominant_integral(&w));
    let _ = writeln!(s, "terms: {}", u.len());
    let _ = writeln!(s, "U: {}", u.to_text(&names));
    if factor {
        let f = factor_numerator(d, &w)?;
        for ((c, p), sig) in f.factors.iter().zip(&f.signatures) {
            let sig: Vec<String> = sig.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "U{c}: {}", p.to_text(&names));
            let _ = writeln!(s, "signature{c}: ({})", sig.join(","));
        }
    }
    if chr {
        let chi = normalized_character(d, &w, trunc)?;
        let _ = writeln!(s, "char_trunc: {trunc}");
        let _ = writeln!(s, "char: {}", chi.to_text(&Names::for_datum(d)));
    }
    Ok(s)
}

fn cmd_kgraph(d: &RootDatum, subset: Option<&str>) -> Out {
    let positions: Vec<usize> = match subset {
        None => (0..d.rank0()).collect(),
        Some(text) => {
            let mut v = BTreeSet::new();
            for part in text.split(',').filter(|p| !p.trim().is_empty()) {
                let i: usize = part.trim().parse().map_err(|_| Failure::Usage(format!("bad index `{part}`")))?;
                if i == 0 || i > d.rank0() {
                    return Err(Error::IndexOutOfRange { index: i, max: d.rank0() }.into());
                }
                v.insert(i - 1);
            }
            v.into_iter().collect()
        }
    };
    let g = SimpleGraph::from_datum(d, &positions)?;
    let rep = k_partition_counts(&g)?;
    let mut s = format!("vertices: {}\n", g.names.join(" "));
    let edges: Vec<String> = g.edges().iter().map(|&(a, b)| format!("{}-{}", g.names[a], g.names[b])).collect();
    let _ = writeln!(s, "edges: {}", edges.join(" "));
    let _ = writeln!(s, "connected: {}", g.is_connected());
    for (i, c) in rep.counts.iter().enumerate() {
        let _ = writeln!(s, "c{}: {c}", i + 1);
    }
    let _ = writeln!(s, "k = {}", fmt_q(&rep.k_value));
    Ok(s)
}

fn cmd_search(d: &RootDatum, bound: i64, tau_mult: i64, limit: Option<usize>) -> Out {
    if bound < 0 || tau_mult < 0 {
        return Err(Failure::Usage("--bound and --tau-mult must be non-negative".into()));
    }
    let out = search_counterexamples(d, bound, tau_mult, limit)?;
    let coords = |v: &[Vec<i64>]| {
        v.iter()
            .map(|c| format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut s = format!("hits: {}\n", out.hits.len());
    if let Some(n) = &out.note {
        let _ = writeln!(s, "note: {n}");
    }
    for h in &out.hits {
        let _ = writeln!(
            s,
            "hit: lhs {} | rhs {} | tau {} | {}",
            coords(&h.lhs_coords),
            coords(&h.rhs_coords),
            h.tau_multiple,
            h.report.conclusion
        );
    }
    Ok(s)
}

fn cmd_atypical_coeff(d: &RootDatum, weight: &str, special: bool, t: u32, oracle: bool, closed: bool) -> Out {
    let w = parse_weight(weight, d)?;
    let ctx = AtypicalContext::new(d, w.clone(), special, t)?;
    let mut s = format!("weight: {}\n", d.format_weight(&w));
    let _ = writeln!(s, "type: {} = {}", d.odd_name(ctx.gamma), d.format_root(&d.positive_odd[ctx.gamma].weight));
    let _ = writeln!(s, "special: {special}");
    let _ = writeln!(s, "ztrunc: {t}");
    let o = if oracle { Some(coefficient_oracle(&ctx)?) } else { None };
    let c = if closed { Some(closed_form_coefficient(&ctx)?) } else { None };
    if let Some(o) = &o {
        let _ = writeln!(s, "oracle: {}", coefficient_text(d, &o.value));
    }
    if let Some(c) = &c {
        let _ = writeln!(s, "closed_form: {}", c.formula);
        let _ = writeln!(s, "closed: {}", coefficient_text(d, &c.value));
    }
    if let (Some(o), Some(c)) = (&o, &c) {
        let _ = writeln!(s, "verdict: {}", if o.value == c.value { "EQUAL" } else { "DIFFER" });
        if o.value != c.value {
            return Err(Failure::Check(s));
        }
    }
    Ok(s)
}

fn cmd_atypical_verify(d: &RootDatum, gamma: &str, lhs: &str, rhs: &str, special: bool, t: u32) -> Out {
    let gw = parse_weight(gamma, d)?;
    let g = d
        .odd_index(&gw)
        .ok_or_else(|| Failure::Usage(format!("`{gamma}` is not a positive odd root")))?;
    let (l, r) = (weight_list(lhs, d)?, weight_list(rhs, d)?);
    for w in l.iter().chain(&r) {
        if let Atypicality::Type(h) = d.atypicality_type(w) {
            if h != g {
                return Err(Error::MixedAtypicalityTypes.into());
            }
        }
    }
    let rep = atypical_match(d, &l, &r, Some(g), special, t)?;
    Ok(rep.to_text())
}

fn cmd_selftest(seed: u64, only: Option<&str>) -> Out {
    let ids: Vec<u32> = match only {
        None => acceptance::criterion_ids(),
        Some(text) => text
            .split(',')
            .map(|p| p.trim().parse().map_err(|_| Failure::Usage(format!("bad criterion `{p}`"))))
            .collect::<Result<_, _>>()?,
    };
    let mut s = format!("seed: {seed}\n");
    let mut unexpected = 0;
    for id in ids {
        let r = acceptance::run_criterion(id, seed).ok_or_else(|| Failure::Usage(format!("no criterion {id}")))?;
        let _ = writeln!(s, "{}", r.line());
        if !r.passed {
            match r.known_deviation() {
                Some(why) => {
                    let _ = writeln!(s, "     known deviation: {why}");
                }
                None => unexpected += 1,
            }
        }
    }
    let _ = writeln!(s, "unexpected_failures: {unexpected}");
    if unexpected > 0 {
        return Err(Failure::Check(s));
    }
    Ok(s)
}

fn run(cli: Cli) -> Out {
    match cli.cmd {
        Cmd::Datum(a) => Ok(datum_report(&load(&a)?)),
        Cmd::Group { datum, component, list } => cmd_group(&load(&datum)?, component, list),
        Cmd::Numerator { datum, weight, factor, char, trunc } => cmd_numerator(&load(&datum)?, &weight, factor, char, trunc),
        Cmd::Kgraph { datum, subset } => cmd_kgraph(&load(&datum)?, subset.as_deref()),
        Cmd::Verify { datum, lhs, rhs } => {
            let d = load(&datum)?;
            let rep = verify_tensor_isomorphism(&d, &weight_list(&lhs, &d)?, &weight_list(&rhs, &d)?)?;
            Ok(rep.to_text())
        }
        Cmd::Search { datum, bound, tau_mult, limit } => cmd_search(&load(&datum)?, bound, tau_mult, limit),
        Cmd::AtypicalCoeff { datum, weight, special, ztrunc, oracle, closed, both } => {
            let none = !oracle && !closed;
            let (o, c) = (oracle || both || none, closed || both || none);
            cmd_atypical_coeff(&load(&datum)?, &weight, special, ztrunc, o, c)
        }
        Cmd::AtypicalVerify { datum, gamma, lhs, rhs, special, ztrunc } => {
            cmd_atypical_verify(&load(&datum)?, &gamma, &lhs, &rhs, special, ztrunc)
        }
        Cmd::Selftest { only } => cmd_selftest(cli.seed, only.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Check(s)) => {
            print!("{s}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
