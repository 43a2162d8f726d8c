//! Command-line front end: reads origami JSON files, prints reports or JSON.
//!
//! Exit codes: 0 on success, 2 on malformed input or a failed precondition,
//! 3 when a certification criterion is not satisfied.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use origami_veech::congruence::{
    certify_by_abc, certify_by_proposition, surjects_mod_n, TncgCertificate,
};
use origami_veech::cylinders::cylinders_in_direction;
use origami_veech::families::{abc_origami, alternating_origami, dihedral_origami, psl2_group};
use origami_veech::json::{
    CertificateJson, DecompositionJson, OrigamiJson, PermOrigamiJson, VeechJson,
};
use origami_veech::veech::{veech_group, VeechGroup};
use origami_veech::RegularOrigami;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_CERTIFIED: i32 = 3;

pub const CACHE_ENV: &str = "ORIGAMI_VEECH_CACHE";

#[derive(Parser, Debug)]
#[command(
    name = "origami-veech",
    version,
    about = "Veech groups of regular origamis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cylinder decomposition in direction (1, m).
    Cylinders {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        m: u64,
        #[arg(long)]
        json: bool,
    },
    /// Squares, cone angles and genus of the surface.
    Surface {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Index, generators, cusp widths and level of the Veech group.
    Veech {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        no_cache: bool,
    },
    /// Try to certify that the Veech group is totally non-congruence.
    ///
    /// With --abc a,b,c the file's origami (G, X, Y) is treated as (G, y, x)
    /// for the (a,b,c)-generating pair x = Y, y = X.
    Certify {
        file: PathBuf,
        #[arg(long, value_enum)]
        method: Option<Method>,
        #[arg(long, value_parser = parse_triple)]
        abc: Option<(u64, u64, u64)>,
        #[arg(long)]
        json: bool,
    },
    /// Whether the Veech group surjects onto SL(2,Z/nZ) for 2 ≤ n ≤ max-n.
    Surjectivity {
        file: PathBuf,
        #[arg(long, default_value_t = 24)]
        max_n: u64,
        #[arg(long)]
        no_cache: bool,
    },
    /// Print the JSON of an example origami.
    Make {
        #[command(subcommand)]
        family: Family,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Proposition,
    Abc,
}

#[derive(Subcommand, Debug)]
pub enum Family {
    Torus,
    /// (Aₙ, (1,2,3), (1,2,…,n)).
    Alternating {
        #[arg(long)]
        n: usize,
    },
    /// (D_2k, r, s).
    Dihedral {
        #[arg(long)]
        k: usize,
    },
    /// (G, y, x) for the first (a,b,c)-generating pair (x, y) of PSL(2,q).
    Psl2Abc {
        #[arg(long)]
        q: u64,
        #[arg(long, value_parser = parse_triple)]
        abc: (u64, u64, u64),
    },
}

fn parse_triple(s: &str) -> Result<(u64, u64, u64), String> {
    let parts: Vec<u64> = s
        .split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [a, b, c] => Ok((a, b, c)),
        _ => Err(format!(
            "expected three comma-separated integers, got {s:?}"
        )),
    }
}

/// An error message and the exit code it maps to.
#[derive(Debug)]
struct Failure(i32, String);

impl From<origami_veech::Error> for Failure {
    fn from(e: origami_veech::Error) -> Self {
        Failure(EXIT_INPUT, e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn io_failure(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_INPUT, e.to_string())
}

fn load_origami(path: &Path) -> Result<RegularOrigami, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| io_failure(format!("{}: {e}", path.display())))?;
    let j: OrigamiJson =
        serde_json::from_str(&text).map_err(|e| io_failure(format!("{}: {e}", path.display())))?;
    Ok(j.to_origami()?)
}

fn json_line<T: serde::Serialize>(out: &mut dyn Write, v: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v).map_err(io_failure)?;
    writeln!(out, "{text}").map_err(io_failure)
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Cylinders { file, m, json } => cmd_cylinders(&load_origami(&file)?, m, json, out),
        Command::Surface { file, json } => cmd_surface(&load_origami(&file)?, json, out),
        Command::Veech {
            file,
            json,
            no_cache,
        } => {
            let o = load_origami(&file)?;
            let v = cached_veech_group(&o, !no_cache, err)?;
            cmd_veech(&v, json, out)
        }
        Command::Certify {
            file,
            method,
            abc,
            json,
        } => {
            let o = load_origami(&file)?;
            let method = method.unwrap_or(if abc.is_some() {
                Method::Abc
            } else {
                Method::Proposition
            });
            cmd_certify(&o, method, abc, json, out)
        }
        Command::Surjectivity {
            file,
            max_n,
            no_cache,
        } => {
            let o = load_origami(&file)?;
            cmd_surjectivity(&o, max_n, !no_cache, out, err)
        }
        Command::Make { family } => cmd_make(family, out),
    }
}

fn write_all(out: &mut dyn Write, text: String) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(io_failure)
}

fn cmd_cylinders(o: &RegularOrigami, m: u64, json: bool, out: &mut dyn Write) -> Outcome {
    let d = cylinders_in_direction(o, m)?;
    if json {
        json_line(out, &DecompositionJson::from_decomposition(&d))?;
        return Ok(EXIT_OK);
    }
    let (p, q) = d.direction();
    let mut s = format!("direction ({p}, {q})\nA = {}\n", d.matrix());
    for c in d.cylinders() {
        s += &format!(
            "w={} h={} inverse_modulus={}\n",
            c.circumference(),
            c.height(),
            c.inverse_modulus()
        );
    }
    s += &format!("parabolic = {}\n", d.parabolic());
    write_all(out, s)?;
    Ok(EXIT_OK)
}

fn cmd_surface(o: &RegularOrigami, json: bool, out: &mut dyn Write) -> Outcome {
    let p = o.cayley_origami();
    if json {
        json_line(out, &PermOrigamiJson::from_perm_origami(&p))?;
        return Ok(EXIT_OK);
    }
    let angles: Vec<String> = p.cone_angles().iter().map(|k| k.to_string()).collect();
    write_all(
        out,
        format!(
            "squares {}\ncone angles (units of 2pi) {}\ngenus {}\n",
            p.squares(),
            angles.join(" "),
            p.genus()
        ),
    )?;
    Ok(EXIT_OK)
}

fn cmd_veech(v: &VeechGroup, json: bool, out: &mut dyn Write) -> Outcome {
    if json {
        json_line(out, &VeechJson::from_veech_group(v))?;
        return Ok(EXIT_OK);
    }
    let widths: Vec<String> = v.cusp_widths().iter().map(|w| w.to_string()).collect();
    let mut s = format!(
        "index {}\nlevel {}\ncusp widths {}\ngenerators\n",
        v.index(),
        v.level(),
        widths.join(" ")
    );
    for g in v.generators() {
        s += &format!("  {}  {}\n", g.word, g.matrix);
    }
    write_all(out, s)?;
    Ok(EXIT_OK)
}

fn cmd_certify(
    o: &RegularOrigami,
    method: Method,
    abc: Option<(u64, u64, u64)>,
    json: bool,
    out: &mut dyn Write,
) -> Outcome {
    let cert = match method {
        Method::Proposition => certify_by_proposition(o)?,
        Method::Abc => {
            let abc = abc.ok_or_else(|| io_failure("--method abc needs --abc a,b,c"))?;
            Some(certify_by_abc(o.group().clone(), o.y(), o.x(), abc)?)
        }
    };
    let Some(cert) = cert else {
        writeln!(out, "criterion not satisfied").map_err(io_failure)?;
        return Ok(EXIT_NOT_CERTIFIED);
    };
    if json {
        json_line(out, &CertificateJson::from_certificate(&cert))?;
    } else {
        write_all(out, certificate_report(&cert))?;
    }
    Ok(EXIT_OK)
}

fn certificate_report(cert: &TncgCertificate) -> String {
    let mut s = format!("certified: {}\n", cert.origami);
    for w in &cert.witnesses {
        s += &format!(
            "p={} {} A1={} m1={} A2={} m2={}\n",
            w.p, w.case, w.a1, w.m1, w.a2, w.m2
        );
    }
    s += &format!("primes not dividing |G|: {}\n", cert.residual_primes());
    s
}

fn cmd_surjectivity(
    o: &RegularOrigami,
    max_n: u64,
    use_cache: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let v = cached_veech_group(o, use_cache, err)?;
    let mut s = String::new();
    for n in 2..=max_n {
        s += &format!("{n} {}\n", surjects_mod_n(&v, n)?);
    }
    write_all(out, s)?;
    Ok(EXIT_OK)
}

fn cmd_make(family: Family, out: &mut dyn Write) -> Outcome {
    let o = match family {
        Family::Torus => RegularOrigami::torus(),
        Family::Alternating { n } => alternating_origami(n)?,
        Family::Dihedral { k } => dihedral_origami(k)?,
        Family::Psl2Abc { q, abc } => abc_origami(psl2_group(q)?, abc)?.ok_or_else(|| {
            io_failure(format!(
                "PSL(2,{q}) has no ({},{},{})-generating pair",
                abc.0, abc.1, abc.2
            ))
        })?,
    };
    json_line(out, &OrigamiJson::from_origami(&o))?;
    Ok(EXIT_OK)
}

/// `$ORIGAMI_VEECH_CACHE`, else the user cache directory.
pub fn cache_dir() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os(CACHE_ENV) {
        return Some(PathBuf::from(dir));
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(dir).join("origami-veech"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("origami-veech"))
}

/// SHA-256 of the origami's canonical JSON.
pub fn cache_key(o: &RegularOrigami) -> String {
    let text = serde_json::to_string(&OrigamiJson::from_origami(o)).expect("origami JSON");
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn cached_veech_group(
    o: &RegularOrigami,
    use_cache: bool,
    err: &mut dyn Write,
) -> Result<VeechGroup, Failure> {
    let path = use_cache
        .then(cache_dir)
        .flatten()
        .map(|d| d.join(format!("{}.veech.json", cache_key(o))));
    if let Some(path) = &path {
        let hit = fs::read_to_string(path)
            .ok()
            .and_then(|t| serde_json::from_str::<VeechJson>(&t).ok())
            .and_then(|j| j.to_veech_group().ok())
            .filter(|v| v.base() == o);
        if let Some(v) = hit {
            return Ok(v);
        }
    }
    let v = veech_group(o)?;
    if let Some(path) = &path {
        if let Err(e) = store(path, &VeechJson::from_veech_group(&v)) {
            let _ = writeln!(
                err,
                "warning: could not write cache {}: {e}",
                path.display()
            );
        }
    }
    Ok(v)
}

/// Write to a sibling temporary file, then rename over the target.
fn store(path: &Path, v: &VeechJson) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, serde_json::to_string(v)?)?;
    fs::rename(&tmp, path)
}
