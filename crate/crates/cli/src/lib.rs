//! Command dispatch and report rendering for the `mathieu` binary.
//!
//! Every command returns a serialisable report that echoes its inputs. The
//! default rendering is a plain-text table; `--json` emits the report as
//! pretty-printed JSON.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use mathieu_core::characters::{
    mathieu_scan_class, parse_combination, tensor_decompose, weight_multiplicities, ScanReport,
};
use mathieu_core::jacobian::{
    abcw_inverse, formal_inverse, q_pipeline, FormalInverse, PipelineReport, PolyMap,
};
use mathieu_core::{Error, RootSystemA, Weight};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for input errors, 3 for failed preconditions, 4 for resource guards.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Precondition(_)) => 3,
            CliError::Core(Error::Resource(_)) => 4,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "mathieu",
    version,
    about = "Exact SU(N) character and Keller-map computations"
)]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Fixpoint,
    Abcw,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension of the irreducible representation with the given Dynkin labels.
    Dim {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Decompose V(lhs) ⊗ V(rhs) into irreducibles.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lhs: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    /// Weight multiplicities of V(weight).
    Weights {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Minuscule test by coroot pairings and by Weyl orbits.
    Minuscule {
        #[arg(long)]
        n: usize,
        /// Omit to scan all dominant weights with label sum at most 2.
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
    },
    /// Truncated formal inverse of the map in a map file.
    Invert {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 8)]
        degree: i64,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Check div(Q^k) = 0 and the Psi(Q^k) identity for k = 1..kmax.
    VerifyQ {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 5)]
        kmax: usize,
    },
    /// Moments of a class function f and of f^n h up to a finite horizon.
    MathieuScan {
        #[arg(long)]
        n: usize,
        /// Character combination, e.g. `3*[1,0] - [0,1]`.
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        /// Defaults to the trivial character.
        #[arg(long, allow_hyphen_values = true)]
        h: Option<String>,
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
}

/// A rendered report.
pub struct Report {
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("serialisable report");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    let report = match &cli.command {
        Command::Dim { n, weight } => cmd_dim(*n, weight)?,
        Command::Decompose { n, lhs, rhs } => cmd_decompose(*n, lhs, rhs)?,
        Command::Weights { n, weight } => cmd_weights(*n, weight)?,
        Command::Minuscule { n, weight } => cmd_minuscule(*n, weight.as_deref())?,
        Command::Invert {
            map,
            degree,
            method,
        } => cmd_invert(map, *degree, *method)?,
        Command::VerifyQ { map, kmax } => cmd_verify_q(map, *kmax)?,
        Command::MathieuScan { n, f, h, nmax } => cmd_mathieu_scan(*n, f, h.as_deref(), *nmax)?,
    };
    Ok(report.render(cli.json))
}

fn parse_weight(rs: &RootSystemA, text: &str) -> Result<Weight, CliError> {
    let w: Weight = text.parse()?;
    if w.rank() != rs.rank() {
        return Err(Error::Dimension {
            expected: rs.rank(),
            found: w.rank(),
        }
        .into());
    }
    Ok(w)
}

fn dominant_weight(rs: &RootSystemA, text: &str) -> Result<Weight, CliError> {
    let w = parse_weight(rs, text)?;
    if !w.is_dominant() {
        return Err(Error::Domain(format!(
            "weight ({}) is not dominant: every Dynkin label must be >= 0",
            w
        ))
        .into());
    }
    Ok(w)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{:<w$}", s, w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn cmd_dim(n: usize, weight: &str) -> Result<Report, CliError> {
    let rs = RootSystemA::new(n)?;
    let w = dominant_weight(&rs, weight)?;
    let dim = rs.weyl_dim(&w)?;
    let partition = w.to_partition();
    let text = format!(
        "# dim\ninput: n = {}, weight = ({})\npartition: ({})\ndim: {}\n",
        n,
        w,
        join(&partition),
        dim
    );
    let json = json!({
        "command": "dim",
        "input": { "n": n, "weight": w },
        "partition": partition,
        "dim": dim.to_string(),
    });
    Ok(Report { json, text })
}

pub fn cmd_decompose(n: usize, lhs: &str, rhs: &str) -> Result<Report, CliError> {
    let rs = RootSystemA::new(n)?;
    let a = dominant_weight(&rs, lhs)?;
    let b = dominant_weight(&rs, rhs)?;
    let dec = tensor_decompose(&rs, &a, &b)?;
    let product = rs.weyl_dim(&a)? * rs.weyl_dim(&b)?;
    let total = dec.dimension(&rs)?;
    let conserved = total == mathieu_core::Rat::from_integer(product.clone());
    let mut rows = vec![vec!["weight".into(), "multiplicity".into(), "dim".into()]];
    let mut terms = Vec::new();
    // Highest weights first.
    for (w, c) in dec.iter().rev() {
        let d = rs.weyl_dim(w)?;
        rows.push(vec![format!("({})", w), c.to_string(), d.to_string()]);
        terms.push(json!({ "weight": w, "multiplicity": c.to_string(), "dim": d.to_string() }));
    }
    let mut text = format!(
        "# decompose\ninput: n = {}, lhs = ({}), rhs = ({})\n{}\n",
        n, a, b, dec
    );
    text.push_str(&table(&rows));
    let _ = writeln!(
        text,
        "dimension check: {} x {} = {} ({})",
        rs.weyl_dim(&a)?,
        rs.weyl_dim(&b)?,
        total,
        if conserved { "ok" } else { "MISMATCH" }
    );
    let json = json!({
        "command": "decompose",
        "input": { "n": n, "lhs": a, "rhs": b },
        "terms": terms,
        "dimension_product": product.to_string(),
        "dimension_sum": total.to_string(),
        "dimension_conserved": conserved,
    });
    Ok(Report { json, text })
}

pub fn cmd_weights(n: usize, weight: &str) -> Result<Report, CliError> {
    let rs = RootSystemA::new(n)?;
    let w = dominant_weight(&rs, weight)?;
    let wm = weight_multiplicities(&rs, &w)?;
    let total: u64 = wm.values().sum();
    let mut rows = vec![vec!["weight".into(), "multiplicity".into()]];
    let mut entries = Vec::new();
    for (v, m) in wm.iter().rev() {
        rows.push(vec![format!("({})", v), m.to_string()]);
        entries.push(json!({ "weight": v, "multiplicity": m }));
    }
    let mut text = format!("# weights\ninput: n = {}, weight = ({})\n", n, w);
    text.push_str(&table(&rows));
    let _ = writeln!(
        text,
        "distinct weights: {}, total multiplicity: {}",
        wm.len(),
        total
    );
    let json = json!({
        "command": "weights",
        "input": { "n": n, "weight": w },
        "weights": entries,
        "total": total,
    });
    Ok(Report { json, text })
}

fn minuscule_row(rs: &RootSystemA, w: &Weight) -> Result<(bool, bool), CliError> {
    let pairing = rs.is_minuscule(w)?;
    let orbit = rs.weyl_orbit(w)?;
    let single = !w.is_zero()
        && weight_multiplicities(rs, w)?
            .keys()
            .all(|v| orbit.contains(v));
    Ok((pairing, single))
}

pub fn cmd_minuscule(n: usize, weight: Option<&str>) -> Result<Report, CliError> {
    let rs = RootSystemA::new(n)?;
    let candidates = match weight {
        Some(t) => vec![dominant_weight(&rs, t)?],
        None => rs
            .dominant_weights_up_to(2)
            .into_iter()
            .filter(|w| !w.is_zero())
            .collect(),
    };
    let mut rows = vec![vec![
        "weight".into(),
        "pairing test".into(),
        "orbit test".into(),
    ]];
    let mut entries = Vec::new();
    let mut agree = true;
    for w in &candidates {
        let (pairing, orbit) = minuscule_row(&rs, w)?;
        agree &= pairing == orbit;
        rows.push(vec![
            format!("({})", w),
            pairing.to_string(),
            orbit.to_string(),
        ]);
        entries.push(json!({ "weight": w, "pairing_test": pairing, "orbit_test": orbit }));
    }
    let input = match weight {
        Some(_) => json!({ "n": n, "weight": candidates[0] }),
        None => json!({ "n": n, "max_label_sum": 2 }),
    };
    let mut text = match weight {
        Some(_) => format!(
            "# minuscule\ninput: n = {}, weight = ({})\n",
            n, candidates[0]
        ),
        None => format!(
            "# minuscule\ninput: n = {}, all dominant weights with label sum <= 2\n",
            n
        ),
    };
    text.push_str(&table(&rows));
    let _ = writeln!(text, "tests agree: {}", agree);
    let json = json!({
        "command": "minuscule",
        "input": input,
        "results": entries,
        "tests_agree": agree,
    });
    Ok(Report { json, text })
}

fn read_map(path: &Path) -> Result<(String, PolyMap), CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let map = PolyMap::parse_map_file(&text)?;
    Ok((text, map))
}

fn map_echo(path: &Path, f: &PolyMap) -> Value {
    json!({
        "map": path.display().to_string(),
        "n": f.n(),
        "d": f.d(),
        "h": f.h().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    })
}

fn map_echo_text(path: &Path, f: &PolyMap) -> String {
    let mut s = format!("map: {} (n = {}, d = {})\n", path.display(), f.n(), f.d());
    for (i, h) in f.h().iter().enumerate() {
        let _ = writeln!(s, "  h{} = {}", i + 1, h);
    }
    s
}

fn inverse_json(inv: &FormalInverse) -> Value {
    let comps: Vec<Value> = inv
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let parts: Vec<Value> = (0..=inv.trunc)
                .filter_map(|m| {
                    let p = inv.homogeneous(i, m);
                    (!p.is_zero()).then(|| json!({ "degree": m, "poly": p.to_string() }))
                })
                .collect();
            json!({ "component": i + 1, "poly": c.to_string(), "homogeneous": parts })
        })
        .collect();
    json!({ "n": inv.n, "trunc": inv.trunc, "F": comps })
}

fn inverse_text(inv: &FormalInverse) -> String {
    let mut s = String::new();
    for (i, c) in inv.components.iter().enumerate() {
        let _ = writeln!(s, "F{} = {}", i + 1, c);
        for m in 0..=inv.trunc {
            let p = inv.homogeneous(i, m);
            if !p.is_zero() {
                let _ = writeln!(s, "  degree {}: {}", m, p);
            }
        }
    }
    s
}

pub fn cmd_invert(path: &Path, degree: i64, method: Method) -> Result<Report, CliError> {
    let (_, f) = read_map(path)?;
    let (inv, agree) = match method {
        Method::Fixpoint => (formal_inverse(&f, degree)?, None),
        Method::Abcw => (abcw_inverse(&f, degree)?, None),
        Method::Both => {
            let a = formal_inverse(&f, degree)?;
            let b = abcw_inverse(&f, degree)?;
            let same = a == b;
            (a, Some(same))
        }
    };
    let method_name = serde_json::to_value(method).expect("enum");
    let mut text = format!(
        "# invert\ninput: degree D = {}, method = {}\n{}",
        degree,
        method_name.as_str().unwrap_or_default(),
        map_echo_text(path, &f)
    );
    text.push_str(&inverse_text(&inv));
    if let Some(a) = agree {
        let _ = writeln!(text, "methods agree: {}", a);
    }
    let mut input = map_echo(path, &f);
    input["degree"] = json!(degree);
    input["method"] = method_name;
    let mut json = json!({ "command": "invert", "input": input, "inverse": inverse_json(&inv) });
    if let Some(a) = agree {
        json["methods_agree"] = json!(a);
    }
    Ok(Report { json, text })
}

pub fn cmd_verify_q(path: &Path, kmax: usize) -> Result<Report, CliError> {
    let (_, f) = read_map(path)?;
    if kmax == 0 {
        return Err(Error::Domain("kmax must be at least 1".into()).into());
    }
    let rep: PipelineReport = q_pipeline(&f, kmax)?;
    let mut rows = vec![vec![
        "k".into(),
        "div(Q^k)=0".into(),
        "Psi identity".into(),
        "Psi(Q^k)=0".into(),
    ]];
    for r in &rep.records {
        rows.push(vec![
            r.k.to_string(),
            r.div_zero.to_string(),
            r.psi_matches_inverse.to_string(),
            r.psi_is_zero.to_string(),
        ]);
    }
    let mut text = format!(
        "# verify-q\ninput: kmax = {}\n{}",
        kmax,
        map_echo_text(path, &f)
    );
    text.push_str("det J(f) = 1\n");
    text.push_str(&table(&rows));
    match rep.psi_zero_from() {
        Some(k) => {
            let _ = writeln!(text, "Psi(Q^k) = 0 observed for {} <= k <= {}", k, kmax);
        }
        None => {
            let _ = writeln!(text, "Psi(Q^kmax) != 0 at k = {}", kmax);
        }
    }
    let mut input = map_echo(path, &f);
    input["kmax"] = json!(kmax);
    let json = json!({
        "command": "verify-q",
        "input": input,
        "records": rep.records,
        "psi_zero_from": rep.psi_zero_from(),
    });
    Ok(Report { json, text })
}

pub fn cmd_mathieu_scan(
    n: usize,
    f: &str,
    h: Option<&str>,
    nmax: usize,
) -> Result<Report, CliError> {
    let rs = RootSystemA::new(n)?;
    let trivial = format!("[{}]", join(&vec![0; rs.rank()]));
    let h = h.unwrap_or(&trivial);
    let fe = parse_combination(f, rs.rank())?;
    let he = parse_combination(h, rs.rank())?;
    let rep: ScanReport = mathieu_scan_class(&rs, &fe, &he, nmax)?;
    let mut rows = vec![vec!["n".into(), "a_n".into(), "b_n".into()]];
    for r in &rep.rows {
        rows.push(vec![r.n.to_string(), r.a_n.clone(), r.b_n.clone()]);
    }
    let mut text = format!(
        "# mathieu-scan (finite-horizon evidence, not a proof)\ninput: n = {}, f = {}, h = {}, nmax = {}\n",
        n, fe, he, nmax
    );
    text.push_str(&table(&rows));
    let _ = writeln!(
        text,
        "all a_n = 0 up to the horizon: {}",
        rep.hypothesis_holds
    );
    match rep.b_vanishes_from {
        Some(k) => {
            let _ = writeln!(text, "b_n = 0 for {} <= n <= {}", k, nmax);
        }
        None => {
            let _ = writeln!(text, "b_n != 0 at n = {}", nmax);
        }
    }
    let json = json!({
        "command": "mathieu-scan",
        "label": "finite-horizon evidence",
        "input": { "n": n, "f": fe, "h": he, "nmax": nmax },
        "report": rep,
    });
    Ok(Report { json, text })
}
