use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gfact::counting::prime_counts;
use gfact::cover::file::parse_cover_file;
use gfact::cover::{validate_cover_with, ValidateOptions};
use gfact::factor::factor_seeded;
use gfact::harness::{
    cheb_grid, compare_census, cover_section, grid_csv, interval_mean, lambda_census, mean_report,
    IntervalSpec,
};
use gfact::lambda::lambda_of_poly;
use gfact::report::{sha256_hex, Report};
use gfact::scalar::{multiset_binomial, rational};
use gfact::wreath::{brute_force_mean, class_type_csv, closed_form_mean, mean_class_function};
use gfact::zeta::{
    b_series, dedekind_series, direct_b_sum, direct_r_sum, psi_deviations, zeta_report,
};
use gfact::{ArithFnSpec, Cover, CoverSpec, Error, FieldCtx, GroupTable, Poly, Rational};
use num_traits::ToPrimitive;

#[derive(Parser)]
#[command(
    name = "gfact",
    version,
    about = "G-factorization statistics over F_q[T]"
)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized factorization.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone)]
struct CoverArgs {
    /// Cover description file.
    #[arg(long)]
    cover: PathBuf,
    /// Accept an Artin-Schreier cover that is wild at infinity.
    #[arg(long)]
    force_wild: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a polynomial over F_q.
    Factor {
        #[arg(long)]
        q: u64,
        poly: String,
    },
    /// Frobenius class of an unramified prime.
    Frobenius {
        #[command(flatten)]
        cover: CoverArgs,
        prime: String,
    },
    /// G-factorization type of a polynomial.
    Lambda {
        #[command(flatten)]
        cover: CoverArgs,
        poly: String,
    },
    /// Mean of an arithmetic function over a short interval.
    IntervalMean {
        #[command(flatten)]
        cover: CoverArgs,
        /// one_c:C, b, r, r_pow:S or delta:LAMBDA
        #[arg(long = "fn")]
        func: String,
        #[arg(long)]
        f0: String,
        #[arg(long)]
        m: usize,
    },
    /// Factorization-type distribution over a short interval.
    Census {
        #[command(flatten)]
        cover: CoverArgs,
        #[arg(long)]
        f0: String,
        #[arg(long)]
        m: usize,
        /// Per-type CSV output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Short-interval experiment for a Kummer family over a list of q.
    ChebGrid {
        #[arg(long, default_value_t = 2)]
        d: u32,
        /// Kummer polynomial with integer coefficients, read in each F_q.
        #[arg(long)]
        poly: String,
        #[arg(long, value_delimiter = ',')]
        qs: Vec<u64>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Functions to evaluate (default: every class indicator, b and r).
        #[arg(long = "fn")]
        funcs: Vec<String>,
    },
    /// Mean of a class function over a wreath product G wr S_n.
    WreathMean {
        /// e.g. Z/2, S_3, Z/2xZ/3
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        #[arg(long = "fn")]
        func: String,
        /// classes, closed or brute
        #[arg(long, default_value = "classes")]
        method: String,
        /// Per-class-type CSV output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Full-interval means of b and r: Euler product against enumeration.
    NormsCheck {
        #[command(flatten)]
        cover: CoverArgs,
        #[arg(long)]
        n: usize,
    },
    /// Dedekind zeta, P~, curve numerator and K_E.
    Zeta {
        #[command(flatten)]
        cover: CoverArgs,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 12)]
        k_truncation: usize,
    },
    /// psi_E(n) against q^n/|G|.
    PsiCheck {
        #[command(flatten)]
        cover: CoverArgs,
        #[arg(long)]
        n: usize,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

struct Loaded {
    cover: Cover,
    hash: String,
    path: String,
}

fn load(args: &CoverArgs) -> Res<Loaded> {
    let text = fs::read_to_string(&args.cover)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", args.cover.display())))?;
    let spec = parse_cover_file(&text)?;
    let cover = validate_cover_with(
        &spec,
        &ValidateOptions {
            force_wild: args.force_wild,
        },
    )?;
    Ok(Loaded {
        cover,
        hash: sha256_hex(text.as_bytes()),
        path: args.cover.display().to_string(),
    })
}

fn parse_group(s: &str) -> Res<GroupTable> {
    let mut parts = Vec::new();
    for p in s.split(['x', '*']) {
        let p = p.trim();
        let num = |t: &str| {
            t.parse::<usize>()
                .ok()
                .filter(|&k| k >= 1)
                .ok_or_else(|| Failure::Usage(format!("bad group {s:?}")))
        };
        let g = if p == "1" {
            GroupTable::trivial()
        } else if let Some(d) = p.strip_prefix("Z/").or_else(|| p.strip_prefix("C_")) {
            GroupTable::cyclic(num(d)?)
        } else if let Some(k) = p.strip_prefix("S_") {
            GroupTable::try_symmetric(num(k)?)?
        } else {
            return Err(Failure::Usage(format!("bad group {s:?}")));
        };
        parts.push(g);
    }
    if parts.len() == 1 {
        Ok(parts.pop().unwrap())
    } else {
        Ok(GroupTable::product(&parts)?)
    }
}

fn config(r: &mut Report, command: &str, cli: &Cli, extra: &[(&str, String)]) {
    let s = r.section("config");
    s.push("command", command).push("seed", cli.seed);
    for (k, v) in extra {
        s.push(k, v);
    }
}

fn emit(cli: &Cli, text: &str) -> Res<()> {
    match &cli.out {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_side(path: &Option<PathBuf>, text: &str) -> Res<()> {
    if let Some(p) = path {
        fs::write(p, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn class_label(g: &GroupTable, c: usize) -> &'static str {
    if g.classes()[c].contains(&0) {
        "trivial"
    } else {
        "nontrivial"
    }
}

fn run(cli: &Cli) -> Res<()> {
    match &cli.cmd {
        Command::Factor { q, poly } => {
            let ctx = FieldCtx::of_order(*q)?;
            let f = Poly::parse(&ctx, poly)?;
            let fac = factor_seeded(&f, cli.seed)?;
            let mut out = String::new();
            if fac.unit != 1 || fac.parts.is_empty() {
                out.push_str(&ctx.format_coeff(fac.unit));
            }
            for (p, e) in &fac.parts {
                out.push_str(&format!("({p})"));
                if *e > 1 {
                    out.push_str(&format!("^{e}"));
                }
            }
            emit(cli, &format!("{out}\n"))
        }
        Command::Frobenius { cover, prime } => {
            let l = load(cover)?;
            let p = Poly::parse(l.cover.ctx(), prime)?;
            let c = l.cover.frobenius_class(&p)?;
            let sd = l.cover.splitting_data(&p)?;
            emit(
                cli,
                &format!("class {c} ({}) {sd}\n", class_label(l.cover.group(), c)),
            )
        }
        Command::Lambda { cover, poly } => {
            let l = load(cover)?;
            let f = Poly::parse(l.cover.ctx(), poly)?;
            emit(cli, &format!("{}\n", lambda_of_poly(&l.cover, &f)?))
        }
        Command::IntervalMean { cover, func, f0, m } => {
            let l = load(cover)?;
            let func = ArithFnSpec::parse(func)?;
            let interval = IntervalSpec::new(Poly::parse(l.cover.ctx(), f0)?, *m)?;
            let res = interval_mean(&l.cover, &func, &interval, cli.seed)?;
            let mut r = Report::new();
            config(
                &mut r,
                "interval-mean",
                cli,
                &[("cover_file", l.path.clone())],
            );
            r.append(mean_report(&l.cover, &interval, &res, cli.seed, &l.hash));
            emit(cli, &r.to_text())
        }
        Command::Census { cover, f0, m, csv } => {
            let l = load(cover)?;
            let interval = IntervalSpec::new(Poly::parse(l.cover.ctx(), f0)?, *m)?;
            let census = lambda_census(&l.cover, &interval, cli.seed)?;
            let cmp = compare_census(&l.cover, &census, interval.n())?;
            let q = l.cover.ctx().q() as u64;
            let mut r = Report::new();
            config(&mut r, "census", cli, &[("cover_file", l.path.clone())]);
            r.section("census")
                .push("f0", interval.f0())
                .push("n", interval.n())
                .push("m", interval.m())
                .push("members", census.total)
                .push("excluded", census.excluded)
                .push("class_types", cmp.rows.len())
                .push("non_squarefree", &cmp.non_squarefree)
                .push("ramified", &cmp.ramified)
                .push("total_variation", &cmp.total_variation)
                .push("tv_times_sqrt_q", format!("{:.6}", cmp.tv_times_sqrt_q(q)));
            r.sections.push(cover_section(&l.cover, &l.hash));
            write_side(csv, &cmp.to_csv())?;
            emit(cli, &r.to_text())
        }
        Command::ChebGrid {
            d,
            poly,
            qs,
            n,
            m,
            funcs,
        } => {
            if qs.is_empty() {
                return Err(Failure::Usage("--qs needs at least one field size".into()));
            }
            let funcs = funcs
                .iter()
                .map(|f| ArithFnSpec::parse(f))
                .collect::<gfact::Result<Vec<_>>>()?;
            let rows = cheb_grid(
                qs,
                *m,
                &funcs,
                cli.seed,
                |q| {
                    let ctx = FieldCtx::of_order(q)?;
                    gfact::validate_cover(&CoverSpec::kummer(*d, Poly::parse(&ctx, poly)?))
                },
                |c| Ok(Poly::monomial(c.ctx(), 1, *n)),
            )?;
            emit(cli, &grid_csv(&rows))
        }
        Command::WreathMean {
            group,
            n,
            func,
            method,
            csv,
        } => {
            let g = parse_group(group)?;
            let f = ArithFnSpec::parse(func)?;
            let v: Rational = match method.as_str() {
                "classes" => mean_class_function(&f, &g, *n)?,
                "closed" => closed_form_mean(&f, &g, *n)?,
                "brute" => brute_force_mean(&f, &g, *n)?,
                other => return Err(Failure::Usage(format!("unknown method {other:?}"))),
            };
            if csv.is_some() {
                write_side(csv, &class_type_csv(&f, &g, *n)?)?;
            }
            emit(cli, &format!("{v}\n"))
        }
        Command::NormsCheck { cover, n } => {
            let l = load(cover)?;
            let c = &l.cover;
            let q = c.ctx().q() as u64;
            let b = b_series(c, *n)?;
            let z = dedekind_series(c, *n)?;
            let order = c.group().order() as i64;
            let mut r = Report::new();
            config(
                &mut r,
                "norms-check",
                cli,
                &[("cover_file", l.path.clone())],
            );
            let s = r.section("norms");
            let mut all = true;
            for k in 1..=*n {
                let qn = Rational::from_integer(num_bigint::BigInt::from(q).pow(k as u32));
                let bm = b.coeff(k) / &qn;
                let rm = z.coeff(k) / &qn;
                let main = multiset_binomial(&rational(1, order), k as u32);
                let bd = match direct_b_sum(c, k) {
                    Ok(v) => {
                        let ok = Rational::from_integer(v.into()) == b.coeff(k);
                        all &= ok;
                        if ok {
                            "match"
                        } else {
                            "MISMATCH"
                        }
                    }
                    Err(e) if e.is_resource_bound() => "skipped",
                    Err(e) => return Err(e.into()),
                };
                let rd = match direct_r_sum(c, k) {
                    Ok(v) => {
                        let ok = Rational::from_integer(v) == z.coeff(k);
                        all &= ok;
                        if ok {
                            "match"
                        } else {
                            "MISMATCH"
                        }
                    }
                    Err(e) if e.is_resource_bound() => "skipped",
                    Err(e) => return Err(e.into()),
                };
                s.push(
                    &format!("n{k}"),
                    format!(
                        "b_mean {bm} b_over_wreath {:.6} b_direct {bd} r_mean {rm} r_over_wreath {:.6} r_direct {rd}",
                        (bm.clone() / main).to_f64().unwrap_or(f64::NAN),
                        rm.to_f64().unwrap_or(f64::NAN),
                    ),
                );
            }
            s.push("direct_agreement", all);
            r.sections.push(cover_section(c, &l.hash));
            emit(cli, &r.to_text())
        }
        Command::Zeta {
            cover,
            n,
            k_truncation,
        } => {
            let l = load(cover)?;
            let mut r = Report::new();
            config(&mut r, "zeta", cli, &[("cover_file", l.path.clone())]);
            r.append(zeta_report(&l.cover, *n, *k_truncation)?);
            r.sections.push(cover_section(&l.cover, &l.hash));
            emit(cli, &r.to_text())
        }
        Command::PsiCheck { cover, n } => {
            let l = load(cover)?;
            let mut r = Report::new();
            config(&mut r, "psi-check", cli, &[("cover_file", l.path.clone())]);
            let counts = prime_counts(&l.cover, *n)?;
            let s = r.section("psi");
            s.push("count_method", format!("{:?}", counts.method()));
            let mut within = true;
            for (k, psi, scaled) in psi_deviations(&l.cover, *n)? {
                within &= scaled <= 4.0;
                s.push(
                    &format!("n{k}"),
                    format!("{psi} scaled_deviation {scaled:.6}"),
                );
            }
            s.push("within_band_4", within);
            r.sections.push(cover_section(&l.cover, &l.hash));
            emit(cli, &r.to_text())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("usage: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("usage: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("{e}");
            ExitCode::from(if e.is_resource_bound() { 3 } else { 2 })
        }
    }
}
