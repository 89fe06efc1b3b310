//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::elliptic::{self, BasePoint, JInvariant};
use crate::error::{Error, Result};
use crate::finite_field::{self, PrimeContext};
use crate::geometry::{self, FamilyParam, NodeWitness};
use crate::hodge::{self, Resolution};
use crate::intersection;
use crate::livne;
use crate::point_count;
use crate::rational::Rational;
use crate::refdata;
use crate::report::{self, ReportDocument};

#[derive(Debug, Parser)]
#[command(name = "a4cy", version, about = "Point counts and trace checks for the A4 Calabi-Yau threefolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Resolved point counts at a list or range of primes.
    Count {
        #[arg(long)]
        a: String,
        /// `7,11,13` or `7..50`.
        #[arg(long)]
        primes: String,
        #[arg(long)]
        breakdown: bool,
    },
    /// Subfamily, node count and Euler numbers of `X_φ(b)`.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Singular fibres of the surface with square coefficients `a,b,c`.
    Fibres {
        #[arg(long)]
        coeffs: String,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Batyrev numbers, or Hodge diamonds of a family.
    Hodge {
        #[arg(long)]
        family: Option<String>,
    },
    /// Intersection matrix rank and the split of `H³`.
    Wspace {
        #[arg(long)]
        a: String,
    },
    Verify(VerifyArgs),
    /// Fast torus count against direct enumeration.
    Oracle {
        #[arg(long)]
        a: String,
        #[arg(long)]
        p: i64,
    },
    /// Print an embedded reference table.
    Tables {
        #[arg(long)]
        which: u32,
    },
}

/// Trace comparison for a named family or all of them.
#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    family: String,
    #[arg(long, conflicts_with = "assume_h11")]
    strict: bool,
    #[arg(long)]
    assume_h11: bool,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

/// Family name or explicit tuple, padded with trailing 1s.
pub fn resolve_family(s: &str) -> Result<FamilyParam> {
    if let Ok(f) = refdata::family(s) {
        return Ok(f.param());
    }
    if s.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
        return Err(Error::UnknownFamily(s.to_string()));
    }
    FamilyParam::parse_shorthand(s.trim().trim_start_matches('(').trim_end_matches(')'))
}

/// `7,11,13`, `7..50` or `7-50`; ranges keep odd primes only.
pub fn parse_primes(s: &str) -> Result<Vec<u64>> {
    let bound = |t: &str| t.trim().parse::<u64>().map_err(|_| Error::Usage(format!("bad prime list {s:?}")));
    if let Some((lo, hi)) = s.split_once("..").or_else(|| s.split_once('-')) {
        return Ok(finite_field::odd_primes_in(bound(lo)?, bound(hi)?));
    }
    s.split(',').filter(|t| !t.trim().is_empty()).map(bound).collect()
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    s.trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split([',', ':'])
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Usage(format!("bad integer list {s:?}"))))
        .collect()
}

fn integer_roots(a: &FamilyParam) -> Result<[i64; 6]> {
    let mut out = [0i64; 6];
    for (slot, &x) in out.iter_mut().zip(a.coords()) {
        *slot = Rational::from(x)
            .sqrt_exact()
            .filter(Rational::is_integer)
            .map(|r| r.numer() as i64)
            .ok_or_else(|| Error::InvalidParam(format!("{a} has a non-square coordinate")))?;
    }
    Ok(out)
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<bool> {
    match cli.command {
        Command::Count { a, primes, breakdown } => {
            let a = resolve_family(&a)?;
            let primes = parse_primes(&primes)?;
            for (p, r) in primes.iter().zip(point_count::count_many(&a, &primes)) {
                let b = r?;
                if breakdown {
                    writeln!(
                        out,
                        "{p}\t{}\ttorus_sum={} boundary={} boundary_resolution={} torus_correction={} interior_resolution={} rho={}",
                        b.total, b.torus_sum, b.boundary, b.boundary_resolution, b.torus_correction, b.interior_resolution, b.rho_correction
                    )?;
                } else {
                    writeln!(out, "{p}\t{}", b.total)?;
                }
            }
            Ok(true)
        }
        Command::Classify { b } => {
            let w: NodeWitness = b.parse()?;
            let label = geometry::classify_subfamily(&w)?;
            let h12 = geometry::h12_schoen(&w)?;
            let small = label.euler_small.map_or("-".to_string(), |v| v.to_string());
            writeln!(out, "a = {}", geometry::phi(&w))?;
            writeln!(out, "subfamily F_{} (dim {})", label.index, label.dimension)?;
            writeln!(out, "nodes {}", label.node_count)?;
            writeln!(out, "euler big {} mixed {} small {small}", label.euler_big, label.euler_mixed)?;
            writeln!(out, "h12 {}{}", h12.h12, if h12.lookup { " (lookup)" } else { "" })?;
            Ok(true)
        }
        Command::Fibres { coeffs, t } => {
            let c = parse_list(&coeffs)?;
            if c.len() != 3 {
                return Err(Error::Usage("--coeffs takes three integers".into()));
            }
            let roots: Vec<Rational> = c
                .iter()
                .map(|&x| {
                    Rational::from(x)
                        .sqrt_exact()
                        .ok_or_else(|| Error::InvalidParam(format!("{x} is not a perfect square")))
                })
                .collect::<Result<_>>()?;
            let fibres = elliptic::classify_fibres(roots[0], roots[1], roots[2])?;
            let shown: Vec<String> = fibres.iter().map(|f| f.to_string()).collect();
            writeln!(out, "fibres {}", shown.join(" "))?;
            writeln!(out, "euler {}", elliptic::euler_sum(&fibres))?;
            if let Some(t) = t {
                let t: Rational = t.parse().map_err(|_| Error::Usage(format!("bad --t {t:?}")))?;
                let r = |x: i64| Rational::from(x);
                let _ = elliptic::EllipticFibre::new(r(c[0]), r(c[1]), r(c[2]), BasePoint::Finite(t))?;
                let w = elliptic::weierstrass_model(r(c[0]), r(c[1]), r(c[2]), t);
                writeln!(out, "weierstrass y^2 = x^3 + ({})x^2 + ({})x + ({})", w[0], w[1], w[2])?;
                match elliptic::j_invariant(r(c[0]), r(c[1]), r(c[2]), t) {
                    JInvariant::Finite(j) => writeln!(out, "j {j}")?,
                    JInvariant::Infinity => writeln!(out, "j infinity")?,
                }
            }
            Ok(true)
        }
        Command::Hodge { family } => {
            match family {
                None => {
                    let h = hodge::batyrev_hodge();
                    let data = hodge::PolytopeData::compute();
                    writeln!(out, "lattice points {} / dual {}", data.lattice_points_delta, data.lattice_points_dual)?;
                    writeln!(out, "h11 {} h21 {} euler {}", h.h11, h.h21, h.euler)?;
                }
                Some(f) => {
                    let a = resolve_family(&f)?;
                    for res in [Resolution::Big, Resolution::Mixed, Resolution::Small] {
                        match hodge::hodge_diamond_for(&a, res) {
                            Ok(d) => writeln!(out, "{res:?}: h11 {} h12 {} euler {}", d.h11(), d.h12(), d.euler)?,
                            Err(e) => writeln!(out, "{res:?}: {e}")?,
                        }
                    }
                }
            }
            Ok(true)
        }
        Command::Wspace { a } => {
            let a = resolve_family(&a)?;
            let roots = integer_roots(&a)?;
            let h12 = geometry::h12_for_family(&a)?.h12;
            let w = intersection::build_and_rank(&a, &roots, h12)?;
            let names: Vec<String> = w.surfaces.iter().map(|s| format!("E^{}{}", s.i, s.j)).collect();
            writeln!(out, "surfaces {}", names.join(" "))?;
            writeln!(out, "rank {} dim_W {} dim_V {}", w.rank, w.dim_w, w.dim_v)?;
            for v in &w.side_condition_violations {
                writeln!(out, "side condition fails: {v}")?;
            }
            Ok(true)
        }
        Command::Verify(args) => {
            let names: Vec<&str> = if args.family == "all" {
                refdata::FAMILIES.iter().map(|f| f.name).collect()
            } else {
                vec![refdata::family(&args.family)?.name]
            };
            let strict = !args.assume_h11;
            let mut docs = Vec::new();
            let mut all_pass = true;
            for name in names {
                let r = livne::verify_family(name, strict)?;
                all_pass &= r.verdict;
                writeln!(out, "{name}\tlevel {}\t{}", r.level, if r.verdict { "pass" } else { "fail" })?;
                for f in &r.failures {
                    writeln!(out, "  {f}")?;
                }
                docs.push(ReportDocument::from(&r));
            }
            if let Some(path) = args.json {
                let text = if docs.len() == 1 {
                    docs[0].to_json()?
                } else {
                    serde_json::to_string_pretty(&docs).map_err(|e| Error::Io(e.to_string()))?
                };
                std::fs::write(path, text)?;
            }
            if let Some(path) = args.csv {
                report::write_csv(&docs, std::fs::File::create(path)?)?;
            }
            Ok(all_pass)
        }
        Command::Oracle { a, p } => {
            let a = resolve_family(&a)?;
            let ctx = PrimeContext::new(p)?;
            let fast = point_count::torus_count(&ctx, a.coords())?;
            let slow = point_count::oracle_count_torus(&ctx, a.coords())?;
            writeln!(out, "fast {fast}\toracle {slow}\tdiff {}", fast - slow)?;
            Ok(fast == slow)
        }
        Command::Tables { which } => {
            write!(out, "{}", refdata::render_table(which)?)?;
            Ok(true)
        }
    }
}

/// Runs the CLI on `argv` (including the program name), writing to stdout.
/// Returns 0 on success, 1 on a verification mismatch and 2 on a usage error.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    cli_main_with(argv, &mut lock)
}

pub fn cli_main_with<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
