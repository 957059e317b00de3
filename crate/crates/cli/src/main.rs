use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qhnorm_core::abcoh::{
    h2_inv_formula, sweedler_bruteforce, sweedler_dims_formula, torsor_decompose, twist_classes_bruteforce,
};
use qhnorm_core::formats::{read_certificate, read_datum, read_tensor, write_certificate, write_datum};
use qhnorm_core::normalize::{identify_fpdim2, normalize};
use qhnorm_core::quasihopf::{apply_twist, check_axioms, jacobson_radical};
use qhnorm_core::tensorops::cochain_cohomology;
use qhnorm_core::witt::{coker_p, doubling_identity_check, ker_p};
use qhnorm_core::{AbelianPGroup, Error, FieldSpec, QuasiHopfDatum, Result, WittContext, WittRing};

/// Witt vectors, abelian twist cohomology, and normalization of triangular
/// quasi-Hopf data in characteristic 2.
#[derive(Parser)]
#[command(name = "qhnorm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Truncated Witt vectors over F_q.
    #[command(subcommand)]
    Witt(WittCommand),
    /// Gauge classes of twists of K[A] (invariant 2-cohomology).
    H2inv(GroupArgs),
    /// Sweedler cohomology of the function algebra O(A).
    Sweedler {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Field-extension degrees of the torsor attached to one twist class.
    Torsor {
        #[arg(long, value_delimiter = ',', required = true)]
        group: Vec<u64>,
        #[arg(long)]
        q: u32,
        /// Class index in enumeration order; 0 is the trivial class.
        #[arg(long)]
        class: usize,
    },
    /// Quasi-Hopf data stored as JSON algebra files.
    #[command(subcommand)]
    Hopf(HopfCommand),
}

#[derive(Args)]
struct GroupArgs {
    /// Cyclic orders, e.g. `2,4`.
    #[arg(long, value_delimiter = ',', required = true)]
    group: Vec<u64>,
    #[arg(long)]
    q: u32,
    /// Enumerate cochains instead of using the closed formula.
    #[arg(long)]
    brute_force: bool,
}

#[derive(Subcommand)]
enum WittCommand {
    /// Structure polynomials, and the addition and multiplication tables when small.
    Tables {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: Option<u32>,
    },
    /// Cokernel and kernel of F - 1 on W_n(F_q).
    Coker {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
    },
    /// Checks (x,y) + (x,y) = (0,x^2) on W_2(F_q).
    CheckDoubling {
        #[arg(long)]
        q: u32,
    },
}

#[derive(Subcommand)]
enum HopfCommand {
    /// Verifies every quasi-Hopf axiom.
    Check { file: PathBuf },
    /// Jacobson radical, its powers, and the adapted basis.
    Radical { file: PathBuf },
    /// Ranks of the normalized cobar complex in one degree.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Applies the (pseudo)twist stored in JFILE.
    Twist {
        file: PathBuf,
        jfile: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Twists the datum into the form Φ = 1, R = 1 + d⊗d.
    Normalize {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Names a 2-dimensional datum over a field of characteristic 2.
    Identify { file: PathBuf },
    /// Reapplies a certificate.
    Replay {
        file: PathBuf,
        cert: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Witt(w) => witt(w),
        Command::H2inv(g) => h2inv(&g),
        Command::Sweedler { group, max_degree } => sweedler(&group, max_degree),
        Command::Torsor { group, q, class } => torsor(&group, q, class),
        Command::Hopf(h) => hopf(h),
    }
}

fn field_for(p: u32, q: Option<u32>) -> Result<FieldSpec> {
    let field = FieldSpec::with_order(q.unwrap_or(p))?;
    if field.p() != p {
        return Err(Error::invalid(format!("--q {} is not a power of --p {p}", field.q())));
    }
    Ok(field)
}

fn parse_group(orders: &[u64], field: &FieldSpec) -> Result<AbelianPGroup> {
    let a = AbelianPGroup::parse_orders(orders).map_err(|e| Error::invalid(format!("--group: {e}")))?;
    if !a.is_trivial() && a.p() != field.p() {
        return Err(Error::invalid(format!("--group is a {}-group but --q has characteristic {}", a.p(), field.p())));
    }
    Ok(a)
}

const MAX_TABLE: u64 = 32;

fn witt(cmd: WittCommand) -> Result<()> {
    match cmd {
        WittCommand::Tables { p, n, q } => {
            let ctx = WittContext::new(p, n)?;
            let names = ["S", "P", "N"];
            let polys = [ctx.sum_polys(), ctx.prod_polys(), ctx.neg_polys()];
            for (name, list) in names.iter().zip(polys) {
                for (i, poly) in list.iter().enumerate() {
                    println!("{name}{i} = {poly}");
                }
            }
            let ring = WittRing::new(ctx, field_for(p, q)?)?;
            match ring.size() {
                Some(size) if size <= MAX_TABLE => {
                    let elems: Vec<_> = (0..size).map(|i| ring.from_index(i)).collect();
                    println!();
                    for (i, x) in elems.iter().enumerate() {
                        println!("[{i}] = {x}");
                    }
                    for (label, op) in [("+", 0), ("*", 1)] {
                        println!();
                        println!("{label}");
                        for x in &elems {
                            let row: Vec<String> = elems
                                .iter()
                                .map(|y| {
                                    let z = if op == 0 { x.add(y) } else { x.mul(y) };
                                    z.map(|z| z.index().to_string())
                                })
                                .collect::<Result<_>>()?;
                            println!("{}", row.join(" "));
                        }
                    }
                }
                _ => eprintln!("tables omitted: W_{n}(F_{}) has more than {MAX_TABLE} elements", ring.field().q()),
            }
            Ok(())
        }
        WittCommand::Coker { p, n, q } => {
            let ring = WittRing::over(&field_for(p, Some(q))?, n)?;
            let coker = coker_p(&ring)?;
            let ker = ker_p(&ring)?;
            println!("coker = {}", coker.presentation());
            println!("image size = {}", coker.image_size());
            let reps: Vec<String> = coker.representatives().iter().map(|x| x.to_string()).collect();
            println!("representatives = {}", reps.join(" "));
            println!("ker = {}", ker.presentation);
            Ok(())
        }
        WittCommand::CheckDoubling { q } => {
            let report = doubling_identity_check(&FieldSpec::with_order(q)?)?;
            if let Some(x) = report.failures.first() {
                return Err(Error::verification(format!(
                    "doubling fails at {x} ({} of {} elements)",
                    report.failures.len(),
                    report.checked
                )));
            }
            println!("doubling identity holds on all {} elements", report.checked);
            Ok(())
        }
    }
}

fn h2inv(g: &GroupArgs) -> Result<()> {
    let field = FieldSpec::with_order(g.q)?;
    let a = parse_group(&g.group, &field)?;
    let formula = h2_inv_formula(&a, &field)?;
    if g.brute_force {
        let brute = twist_classes_bruteforce(&a, &field)?;
        if brute.presentation != formula {
            return Err(Error::verification(format!(
                "brute force gives {} but the formula gives {formula}",
                brute.presentation
            )));
        }
        println!("{}", brute.presentation);
        println!("brute force ({} classes), agrees with formula", brute.class_count());
    } else {
        println!("{formula}");
        println!("formula (Witt cokernel)");
    }
    Ok(())
}

fn sweedler(g: &GroupArgs, max_degree: usize) -> Result<()> {
    let field = FieldSpec::with_order(g.q)?;
    let a = parse_group(&g.group, &field)?;
    let formula = sweedler_dims_formula(&a, &field, max_degree)?;
    let brute = if g.brute_force { Some(sweedler_bruteforce(&a, &field, max_degree)?) } else { None };
    for (i, f) in formula.iter().enumerate() {
        match &brute {
            Some(b) if b[i].presentation != *f => {
                return Err(Error::verification(format!(
                    "H^{}: brute force gives {} but the formula gives {f}",
                    i + 1,
                    b[i].presentation
                )));
            }
            Some(_) => println!("H^{} = {f}  (brute force agrees)", i + 1),
            None => println!("H^{} = {f}", i + 1),
        }
    }
    Ok(())
}

fn torsor(group: &[u64], q: u32, class: usize) -> Result<()> {
    let field = FieldSpec::with_order(q)?;
    let a = parse_group(group, &field)?;
    let classes = twist_classes_bruteforce(&a, &field)?;
    let j = classes.representatives.get(class).ok_or_else(|| {
        Error::invalid(format!("--class {class}: there are {} classes", classes.class_count()))
    })?;
    let degrees = torsor_decompose(&a, &field, j)?;
    let parts: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
    println!("[{}]", parts.join(","));
    println!("class order {}", classes.class_orders[class]);
    Ok(())
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<QuasiHopfDatum> {
    read_datum(&read_text(path)?).map_err(|e| match e {
        Error::InvalidInput(m) => Error::invalid(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn hopf(cmd: HopfCommand) -> Result<()> {
    match cmd {
        HopfCommand::Check { file } => {
            let qh = load(&file)?;
            let report = check_axioms(&qh);
            print!("{report}");
            if !report.passed() {
                let names: Vec<&str> = report.failed().map(|c| c.name).collect();
                for c in report.failed() {
                    if let Some(r) = &c.residual {
                        eprintln!("{} residual: {}", c.name, qh.format(r));
                    }
                }
                return Err(Error::verification(format!("axioms fail: {}", names.join(", "))));
            }
            Ok(())
        }
        HopfCommand::Radical { file } => {
            let qh = load(&file)?;
            let filt = jacobson_radical(&qh)?;
            if filt.is_fiber() {
                println!("computed on the h = 0 fiber");
            }
            println!("dim Rad = {}", filt.radical_basis().len());
            println!("nilpotency = {}", filt.nilpotency());
            let dims: Vec<String> = filt.gr_dims().iter().map(|d| d.to_string()).collect();
            println!("gr dims = [{}]", dims.join(","));
            for (i, name) in filt.adapted_names().iter().enumerate() {
                let b = filt.from_adapted(&qh.basis_vector(i));
                println!("{name} (degree {}) = {}", filt.degrees()[i], qh.format(&b));
            }
            Ok(())
        }
        HopfCommand::Cohomology { file, degree } => {
            let qh = load(&file)?;
            let info = cochain_cohomology(qh.structure(), degree)?;
            println!("dim Z^{degree} = {}", info.dim_cocycles);
            println!("dim B^{degree} = {}", info.dim_coboundaries);
            println!("dim H^{degree} = {}", info.dim_cohomology);
            for r in &info.representatives {
                println!("{}", qh.format(r));
            }
            Ok(())
        }
        HopfCommand::Twist { file, jfile, output } => {
            let qh = load(&file)?;
            let j = read_tensor(&read_text(&jfile)?)
                .map_err(|e| Error::invalid(format!("{}: {e}", jfile.display())))?;
            if j.ring() != qh.ring() || j.dim() != qh.dim() || j.arity() != 2 {
                return Err(Error::invalid(format!(
                    "{}: expected a 2-tensor over the datum's ring and dimension",
                    jfile.display()
                )));
            }
            let twisted = apply_twist(&qh, &j)?;
            write_text(&output, &write_datum(&twisted))
        }
        HopfCommand::Normalize { file, output, certificate } => {
            let qh = load(&file)?;
            let res = normalize(&qh)?;
            for e in &res.transcript {
                eprintln!("{e}");
            }
            write_text(&output, &write_datum(&res.datum))?;
            write_text(&certificate, &write_certificate(&qh, &res.certificate))?;
            println!("d = {}", res.datum.format(&res.d));
            match res.degree {
                Some(n) => println!("degree {n}"),
                None => println!("degree none"),
            }
            println!("certificate entries {}", res.certificate.len());
            println!("{}", if res.is_twist { "twist equivalence" } else { "pseudotwist equivalence" });
            Ok(())
        }
        HopfCommand::Identify { file } => {
            let qh = load(&file)?;
            println!("{}", identify_fpdim2(&qh)?);
            Ok(())
        }
        HopfCommand::Replay { file, cert, output } => {
            let qh = load(&file)?;
            let c = read_certificate(&read_text(&cert)?)
                .map_err(|e| Error::invalid(format!("{}: {e}", cert.display())))?;
            for (i, e) in c.entries().iter().enumerate() {
                if e.j.ring() != qh.ring() || e.j.dim() != qh.dim() {
                    return Err(Error::invalid(format!("entries[{i}]: ring or dimension differs from the datum")));
                }
            }
            let out = c.replay(&qh)?;
            write_text(&output, &write_datum(&out))
        }
    }
}
