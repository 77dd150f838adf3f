//! Batch command-line front end.
//!
//! Every subcommand validates its arguments, runs the corresponding library
//! operation and renders to text, JSON or CSV. Output for fixed arguments is
//! byte-identical across runs: all orderings come from the alcove index and
//! floats are printed with fixed formatting. Exit codes: 0 success, 1
//! validation failure, 2 internal consistency abort.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fusion::{
    integrality_scan, pieri_fundamental, verlinde_row, FusionTensor, PairSet, SectorSum,
};
use crate::modular::{conformal_dim, ymatrix, ModularData, YBranch};
use crate::simple_current::{build_z_with_tolerance, orbit_structure};
use crate::subfactor::{is_maximal, lattice_evidence_with, maximality_table};
use crate::tol;
use crate::weights::{binomial, to_partition, from_partition, TheoryParams, Weight};

#[derive(Parser)]
#[command(
    name = "wzw",
    version,
    about = "Modular data, fusion rules and subfactor invariants of SU(n) level-k WZW models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Args)]
pub struct TheoryArgs {
    /// Rank n of SU(n), at least 2
    #[arg(long)]
    pub n: usize,
    /// Level k, at least 1
    #[arg(long)]
    pub k: u32,
    /// Output format
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
    /// Construction tolerance override (default 1e-9, env WZW_TOLERANCE)
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Args)]
pub struct InvariantArgs {
    /// Rank n of SU(n), at least 2
    #[arg(long)]
    pub n: usize,
    /// Divided level n' with k = n' * n
    #[arg(long)]
    pub nprime: u32,
    /// Output format
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
    /// Construction tolerance override (default 1e-9, env WZW_TOLERANCE)
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Subcommand)]
pub enum Command {
    /// List the alcove with colors, conformal and quantum dimensions
    Spectrum(TheoryArgs),
    /// Emit the Kac-Peterson S-matrix
    Smatrix(TheoryArgs),
    /// Emit the T-matrix diagonal and the central-charge residue c0
    Tmatrix(TheoryArgs),
    /// Decompose the fusion product of two weights, or export the whole
    /// tensor as triples when both weights are omitted
    Fuse {
        #[command(flatten)]
        theory: TheoryArgs,
        /// First weight, comma-separated Dynkin labels
        #[arg(long)]
        a: Option<String>,
        /// Second weight, comma-separated Dynkin labels
        #[arg(long)]
        b: Option<String>,
    },
    /// Fuse a fundamental weight by the combinatorial Pieri rule
    Pieri {
        #[command(flatten)]
        theory: TheoryArgs,
        /// Fundamental index, 1..=n-1
        #[arg(long = "i")]
        index: usize,
        /// Weight to fuse with, comma-separated Dynkin labels
        #[arg(long)]
        weight: String,
    },
    /// Simple-current orbit and stabilizer table
    Orbits(TheoryArgs),
    /// Build the simple-current modular invariant at level k = n' * n
    Invariant(InvariantArgs),
    /// Maximality verdicts for the whole alcove or one weight
    Maximal {
        #[command(flatten)]
        theory: TheoryArgs,
        /// Restrict to a single weight
        #[arg(long)]
        weight: Option<String>,
    },
    /// u-weight decomposition checks and the factorization scan
    LatticeEvidence(InvariantArgs),
    /// Run the full invariant suite for one theory
    Selfcheck(TheoryArgs),
}

/// Rendered output plus the process exit code.
pub struct Output {
    pub text: String,
    pub code: i32,
}

fn ok(text: String) -> Result<Output> {
    Ok(Output { text, code: 0 })
}

fn resolve_tolerance(flag: Option<f64>) -> Result<f64> {
    if let Some(t) = flag {
        if t.is_nan() || t <= 0.0 {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {t}")));
        }
        return Ok(t);
    }
    match std::env::var("WZW_TOLERANCE") {
        Ok(s) => s
            .parse::<f64>()
            .ok()
            .filter(|t| *t > 0.0)
            .ok_or_else(|| Error::InvalidArgument(format!("bad WZW_TOLERANCE value {s:?}"))),
        Err(_) => Ok(tol::CONSTRUCTION),
    }
}

fn build_md(n: usize, k: u32, tolerance: f64) -> Result<ModularData> {
    ModularData::with_tolerance(TheoryParams::new(n, k)?, tolerance)
}

fn parse_weight(tp: &TheoryParams, s: &str) -> Result<Weight> {
    let w: Weight = s.parse()?;
    tp.require_index(&w)?;
    Ok(w)
}

fn fmt_f(x: f64) -> String {
    format!("{x:.12e}")
}

fn fmt_complex(z: Complex64) -> String {
    format!("({},{})", fmt_f(z.re), fmt_f(z.im))
}

fn json_complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn csv_quote(s: &str) -> String {
    format!("\"{s}\"")
}

fn alcove_json(tp: &TheoryParams) -> Value {
    Value::Array(tp.alcove().iter().map(|w| Value::String(w.to_string())).collect())
}

fn alcove_line(tp: &TheoryParams) -> String {
    tp.alcove().iter().map(|w| w.to_string()).collect::<Vec<_>>().join(";")
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json rendering cannot fail");
    s.push('\n');
    s
}

pub fn run(cli: Cli) -> Result<Output> {
    match cli.command {
        Command::Spectrum(args) => spectrum(args),
        Command::Smatrix(args) => smatrix(args),
        Command::Tmatrix(args) => tmatrix(args),
        Command::Fuse { theory, a, b } => match (a, b) {
            (Some(a), Some(b)) => fuse_cmd(theory, &a, &b),
            (None, None) => tensor_export_cmd(theory),
            _ => Err(Error::InvalidArgument(
                "fuse needs both --a and --b, or neither for a tensor export".into(),
            )),
        },
        Command::Pieri { theory, index, weight } => pieri_cmd(theory, index, &weight),
        Command::Orbits(args) => orbits_cmd(args),
        Command::Invariant(args) => invariant_cmd(args),
        Command::Maximal { theory, weight } => maximal_cmd(theory, weight.as_deref()),
        Command::LatticeEvidence(args) => lattice_cmd(args),
        Command::Selfcheck(args) => selfcheck_cmd(args),
    }
}

fn spectrum(args: TheoryArgs) -> Result<Output> {
    let tolerance = resolve_tolerance(args.tolerance)?;
    let md = build_md(args.n, args.k, tolerance)?;
    let tp = md.tp();
    match args.format {
        OutputFormat::Text => {
            let mut out = format!(
                "# wzw spectrum n={} k={} primaries={} tolerance={}\n",
                args.n,
                args.k,
                tp.size(),
                fmt_f(tolerance)
            );
            out.push_str("index weight color h qdim\n");
            for (i, w) in tp.alcove().iter().enumerate() {
                out.push_str(&format!(
                    "{i} {w} {} {} {}\n",
                    tp.color(w),
                    md.h(i),
                    fmt_f(md.qdim(i))
                ));
            }
            ok(out)
        }
        OutputFormat::Json => {
            let entries: Vec<Value> = tp
                .alcove()
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    json!({
                        "index": i,
                        "weight": w.to_string(),
                        "color": tp.color(w),
                        "h": md.h(i).to_string(),
                        "qdim": md.qdim(i),
                        "twist": json_complex(md.twist(i)),
                    })
                })
                .collect();
            ok(render_json(&json!({
                "kind": "spectrum",
                "n": args.n,
                "k": args.k,
                "tolerance": tolerance,
                "alcove": alcove_json(tp),
                "entries": entries,
            })))
        }
        OutputFormat::Csv => {
            let mut out = String::from("index,weight,color,h,qdim\n");
            for (i, w) in tp.alcove().iter().enumerate() {
                out.push_str(&format!(
                    "{i},{},{},{},{}\n",
                    csv_quote(&w.to_string()),
                    tp.color(w),
                    csv_quote(&md.h(i).to_string()),
                    fmt_f(md.qdim(i))
                ));
            }
            ok(out)
        }
    }
}

fn smatrix(args: TheoryArgs) -> Result<Output> {
    let tolerance = resolve_tolerance(args.tolerance)?;
    let md = build_md(args.n, args.k, tolerance)?;
    let tp = md.tp();
    let m = tp.size();
    match args.format {
        OutputFormat::Text => {
            let mut out = format!(
                "# wzw smatrix n={} k={} primaries={m} tolerance={}\n# alcove: {}\n",
                args.n,
                args.k,
                fmt_f(tolerance),
                alcove_line(tp)
            );
            for i in 0..m {
                let row: Vec<String> = (0..m).map(|j| fmt_complex(md.s().get(i, j))).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
            ok(out)
        }
        OutputFormat::Json => {
            let entries: Vec<Value> = (0..m)
                .map(|i| Value::Array((0..m).map(|j| json_complex(md.s().get(i, j))).collect()))
                .collect();
            ok(render_json(&json!({
                "kind": "smatrix",
                "n": args.n,
                "k": args.k,
                "tolerance": tolerance,
                "alcove": alcove_json(tp),
                "entries": entries,
            })))
        }
        OutputFormat::Csv => {
            // re/im interleaved columns, alcove order embedded in the header
            let mut out = format!(
                "# wzw smatrix n={} k={} alcove={}\n",
                args.n,
                args.k,
                alcove_line(tp)
            );
            for i in 0..m {
                let row: Vec<String> = (0..m)
                    .flat_map(|j| {
                        let z = md.s().get(i, j);
                        [fmt_f(z.re), fmt_f(z.im)]
                    })
                    .collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
            ok(out)
        }
    }
}

fn tmatrix(args: TheoryArgs) -> Result<Output> {
    let tolerance = resolve_tolerance(args.tolerance)?;
    let md = build_md(args.n, args.k, tolerance)?;
    let tp = md.tp();
    match args.format {
        OutputFormat::Text => {
            let mut out = format!(
                "# wzw tmatrix n={} k={} c0={} tolerance={}\n",
                args.n,
                args.k,
                fmt_f(md.c0()),
                fmt_f(tolerance)
            );
            out.push_str("index weight h t\n");
            for (i, w) in tp.alcove().iter().enumerate() {
                out.push_str(&format!(
                    "{i} {w} {} {}\n",
                    md.h(i),
                    fmt_complex(md.t_diag()[i])
                ));
            }
            ok(out)
        }
        OutputFormat::Json => {
            let diag: Vec<Value> = md.t_diag().iter().map(|&z| json_complex(z)).collect();
            ok(render_json(&json!({
                "kind": "tmatrix",
                "n": args.n,
                "k": args.k,
                "tolerance": tolerance,
                "c0": md.c0(),
                "alcove": alcove_json(tp),
                "diagonal": diag,
            })))
        }
        OutputFormat::Csv => {
            let mut out = String::from("index,weight,re,im\n");
            for (i, w) in tp.alcove().iter().enumerate() {
                let z = md.t_diag()[i];
                out.push_str(&format!(
                    "{i},{},{},{}\n",
                    csv_quote(&w.to_string()),
                    fmt_f(z.re),
                    fmt_f(z.im)
                ));
            }
            ok(out)
        }
    }
}

fn render_sector_sum(
    kind: &str,
    header: String,
    extra: Value,
    sum: &SectorSum,
    format: OutputFormat,
) -> Result<Output> {
    match format {
        OutputFormat::Text => {
            let mut out = header;
            for (w, mult) in sum.terms() {
                out.push_str(&format!("{mult} x {w}\n"));
            }
            ok(out)
        }
        OutputFormat::Json => {
            let terms: Vec<Value> = sum
                .terms()
                .map(|(w, mult)| json!({ "weight": w.to_string(), "mult": mult }))
                .collect();
            let mut v = extra;
            v["kind"] = json!(kind);
            v["terms"] = Value::Array(terms);
            ok(render_json(&v))
        }
        OutputFormat::Csv => {
            let mut out = String::from("mult,weight\n");
            for (w, mult) in sum.terms() {
                out.push_str(&format!("{mult},{}\n", csv_quote(&w.to_string())));
            }
            ok(out)
        }
    }
}

fn fuse_cmd(args: TheoryArgs, a: &str, b: &str) -> Result<Output> {
    let tolerance = resolve_tolerance(args.tolerance)?;
    let md = build_md(args.n, args.k, tolerance)?;
    let tp = md.tp();
    let wa = parse_weight(tp, a)?;
    let wb = parse_weight(tp, b)?;
    let ia = tp.require_index(&wa)?;
    let ib = tp.require_index(&wb)?;
    let (row, _) = verlinde_row(&md, ia, ib, tol::VERLINDE_ROUNDING)?;
    let mut sum = SectorSum::new();
    for &(nu, mult) in &row {
        sum.add(tp.weight(nu as usize).clone(), mult);
    }
    let header = format!("# wzw fuse n={} k={} a={wa} b={wb}\n", args.n, args.k);
    render_sector_sum(
        "fuse",
        header,
        json!({ "n": args.n, "k": args.k, "a": wa.to_string(), "b": wb.to_string() }),
        &sum,
        args.format,
    )
}

fn tensor_export_cmd(args: TheoryArgs) -> Result<Output> {
    let tolerance = resolve_tolerance(args.tolerance)?;
    let md = build_md(args.n, args.k, tolerance)?;
    let nt = FusionTensor::verlinde(&md)?;
    let tp = md.tp();
    match args.format {
        OutputFormat::Text => {
            let mut out = format!(
                "# wzw fuse n={} k={} tensor export, max_residual={}\n",
                args.n,
                args.k,
                fmt_f(nt.max_residual())
            );
            for (l, u, v, mult) in nt.iter_nonzero() {
                out.push_str(&format!(
                    "N[{}][{}][{}] = {mult}\n",
                    tp.weight(l),
                    tp.weight(u),
                    tp.weight(v)
                ));
            }
            ok(out)
        }
        OutputFormat::Json => {
            let triples: Vec<Value> = nt
                .iter_nonzero()
                .map(|(l, u, v, mult)| {
                    json!([
                        tp.weight(l).to_string(),
                        tp.weight(u).to_string(),
                        tp.weight(v).to_string(),
                        mult
                    ])
                })
                .collect();
            ok(render_json(&json!({
                "kind": "fusion-tensor",
                "n": args.n,
                "k": args.k,
                "tolerance": tolerance,
                "max_residual": nt.max_residual(),
                "alcove": alcove_json(tp),
                "triples": triples,
            })))
        }
        OutputFormat::Csv => {
            let mut out = String::from("lambda,mu,nu,mult\n");
            for (l, u, v, mult) in nt.iter_nonzero() {
                out.push_str(&format!(
                    "{},{},{},{mult}\n",
                    csv_quote(&tp.weight(l).to_string()),
                    csv_quote(&tp.weight(u).to_string()),
                    csv_quote(&tp.weight(v).to_string())
                ));
            }
            ok(out)
        }
    }
}

fn pieri_cmd(args: TheoryArgs, index: usize, weight: &str) -> Result<Output> {
    let tp = TheoryParams::new(args.n, args.k)?;
    let w = parse_weight(&tp, weight)?;
    let sum = pieri_fundamental(&tp, index, &w)?;
    let header = format!(
        "# wzw pieri n={} k={} i={index} weight={w}\n",
        args.n, args.k
    );
    render_sector_sum(
        "pieri",
        header,
        json!({ "n": args.n, "k": args.k, "i": index, "weight": w.to_string() }),
        &sum,
        args.format,
    )
}

fn orbits_cmd(args: TheoryArgs) -> Result<Output> {
    let tolerance = resolve_tolerance(args.tolerance)?;
    let md = build_md(args.n, args.k, tolerance)?;
    let tp = md.tp();
    let mut orbits = Vec::new();
    let mut seen = vec![false; tp.size()];
    for idx in 0..tp.size() {
        if seen[idx] {
            continue;
        }
        let data = orbit_structure(&md, tp.weight(idx))?;
        for w in &data.members {
            seen[tp.index_of(w).expect("member in alcove")] = true;
        }
        orbits.push(data);
    }
    match args.format {
        OutputFormat::Text => {
            let mut out = format!(
                "# wzw orbits n={} k={} orbits={}\n",
                args.n,
                args.k,
                orbits.len()
            );
            out.push_str("rep l pieces piece_dim members\n");
            for o in &orbits {
                let members: Vec<String> = o.members.iter().map(|w| w.to_string()).collect();
                out.push_str(&format!(
                    "{} {} {} {} {}\n",
                    o.representative,
                    o.l,
                    o.pieces,
                    fmt_f(o.piece_dim),
                    members.join(";")
                ));
            }
            ok(out)
        }
        OutputFormat::Json => {
            let entries: Vec<Value> = orbits
                .iter()
                .map(|o| {
                    json!({
                        "representative": o.representative.to_string(),
                        "l": o.l,
                        "pieces": o.pieces,
                        "piece_dim": o.piece_dim,
                        "members": o.members.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            ok(render_json(&json!({
                "kind": "orbits",
                "n": args.n,
                "k": args.k,
                "tolerance": tolerance,
                "orbits": entries,
            })))
        }
        OutputFormat::Csv => {
            let mut out = String::from("rep,l,pieces,piece_dim,members\n");
            for o in &orbits {
                let members: Vec<String> = o.members.iter().map(|w| w.to_string()).collect();
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    csv_quote(&o.representative.to_string()),
                    o.l,
                    o.pieces,
                    fmt_f(o.piece_dim),
                    csv_quote(&members.join(";"))
                ));
            }
            ok(out)
        }
    }
}

fn invariant_cmd(args: InvariantArgs) -> Result<Output> {
    let tolerance = resolve_tolerance(args.tolerance)?;
    let k = args
        .nprime
        .checked_mul(args.n as u32)
        .ok_or_else(|| Error::InvalidArgument("n' * n overflows".into()))?;
    let md = build_md(args.n, k, tolerance)?;
    let sc = build_z_with_tolerance(&md, args.nprime, tol::MODULAR_RELATION)?;
    let tp = md.tp();
    match args.format {
        OutputFormat::Text => {
            let mut out = format!(
                "# wzw invariant n={} nprime={} k={k}\n# commutation: max|ZS-SZ|={} max|ZT-TZ|={} tolerance={}\n",
                args.n,
                args.nprime,
                fmt_f(sc.commutation().max_s_deviation),
                fmt_f(sc.commutation().max_t_deviation),
                fmt_f(tol::MODULAR_RELATION)
            );
            let exps: Vec<String> = sc
                .exponents()
                .iter()
                .map(|(w, mult)| format!("{w} (x{mult})"))
                .collect();
            out.push_str(&format!("# exponents: {}\n", exps.join("; ")));
            for (lam, mu, mult) in sc.iter_nonzero() {
                out.push_str(&format!(
                    "Z[{}][{}] = {mult}\n",
                    tp.weight(lam),
                    tp.weight(mu)
                ));
            }
            ok(out)
        }
        OutputFormat::Json => {
            let entries: Vec<Value> = sc
                .iter_nonzero()
                .map(|(lam, mu, mult)| {
                    json!([tp.weight(lam).to_string(), tp.weight(mu).to_string(), mult])
                })
                .collect();
            let exps: Vec<Value> = sc
                .exponents()
                .iter()
                .map(|(w, mult)| json!([w.to_string(), mult]))
                .collect();
            ok(render_json(&json!({
                "kind": "invariant",
                "n": args.n,
                "nprime": args.nprime,
                "k": k,
                "tolerance": tolerance,
                "alcove": alcove_json(tp),
                "z": entries,
                "exponents": exps,
                "commutation": {
                    "max_zs_sz": sc.commutation().max_s_deviation,
                    "max_zt_tz": sc.commutation().max_t_deviation,
                    "tolerance": tol::MODULAR_RELATION,
                },
            })))
        }
        OutputFormat::Csv => {
            let mut out = format!(
                "# commutation max|ZS-SZ|={} max|ZT-TZ|={}\nlambda,mu,mult\n",
                fmt_f(sc.commutation().max_s_deviation),
                fmt_f(sc.commutation().max_t_deviation)
            );
            for (lam, mu, mult) in sc.iter_nonzero() {
                out.push_str(&format!(
                    "{},{},{mult}\n",
                    csv_quote(&tp.weight(lam).to_string()),
                    csv_quote(&tp.weight(mu).to_string())
                ));
            }
            ok(out)
        }
    }
}

fn maximal_cmd(args: TheoryArgs, weight: Option<&str>) -> Result<Output> {
    let tolerance = resolve_tolerance(args.tolerance)?;
    let md = build_md(args.n, args.k, tolerance)?;
    let tp = md.tp();
    let reports = match weight {
        Some(s) => vec![is_maximal(&md, &parse_weight(tp, s)?)?],
        None => maximality_table(&md)?,
    };
    match args.format {
        OutputFormat::Text => {
            let mut out = format!(
                "# wzw maximal n={} k={} zero_threshold={}\n",
                args.n,
                args.k,
                fmt_f(md.s_zero_threshold())
            );
            out.push_str("weight verdict reason |S_v,lambda|\n");
            for r in &reports {
                out.push_str(&format!(
                    "{} {} {} {}\n",
                    r.weight,
                    r.verdict,
                    r.reason,
                    fmt_f(r.s_v_value.norm())
                ));
            }
            ok(out)
        }
        OutputFormat::Json => {
            let entries: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "weight": r.weight.to_string(),
                        "verdict": r.verdict.to_string(),
                        "reason": r.reason.to_string(),
                        "s_v": json_complex(r.s_v_value),
                    })
                })
                .collect();
            ok(render_json(&json!({
                "kind": "maximal",
                "n": args.n,
                "k": args.k,
                "tolerance": tolerance,
                "zero_threshold": md.s_zero_threshold(),
                "entries": entries,
            })))
        }
        OutputFormat::Csv => {
            let mut out = String::from("weight,verdict,reason,abs_s_v\n");
            for r in &reports {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    csv_quote(&r.weight.to_string()),
                    r.verdict,
                    r.reason,
                    fmt_f(r.s_v_value.norm())
                ));
            }
            ok(out)
        }
    }
}

fn lattice_cmd(args: InvariantArgs) -> Result<Output> {
    let tolerance = resolve_tolerance(args.tolerance)?;
    let k = args
        .nprime
        .checked_mul(args.n as u32)
        .ok_or_else(|| Error::InvalidArgument("n' * n overflows".into()))?;
    let md = build_md(args.n, k, tolerance)?;
    let ev = lattice_evidence_with(&md, args.nprime)?;
    match args.format {
        OutputFormat::Text => {
            let orbit: Vec<String> = ev.orbit_of_u.iter().map(|w| w.to_string()).collect();
            let mut out = format!(
                "# wzw lattice-evidence n={} nprime={} k={k} (evidence only)\n",
                args.n, args.nprime
            );
            out.push_str(&format!("u = {}\n", ev.u));
            out.push_str(&format!("fixed = {}\n", ev.fixed_rep));
            out.push_str(&format!("orbit_of_u = {}\n", orbit.join(";")));
            out.push_str(&format!("decomposition_check = {}\n", ev.decomposition_check));
            out.push_str(&format!("dimension_check = {}\n", ev.dimension_check));
            out.push_str(&format!("s_u_v0 = {}\n", fmt_complex(ev.s_u_v0)));
            out.push_str(&format!("s_u_Lambda = {}\n", fmt_complex(ev.s_u_cap_lambda)));
            out.push_str(&format!("s_nonvanishing = {}\n", ev.s_nonvanishing));
            out.push_str(&format!("survivors ({}):\n", ev.survivors.len()));
            for (a, b) in &ev.survivors {
                out.push_str(&format!("{a} | {b}\n"));
            }
            ok(out)
        }
        OutputFormat::Json => {
            let survivors: Vec<Value> = ev
                .survivors
                .iter()
                .map(|(a, b)| json!([a.to_string(), b.to_string()]))
                .collect();
            ok(render_json(&json!({
                "kind": "lattice-evidence",
                "n": args.n,
                "nprime": args.nprime,
                "k": k,
                "tolerance": tolerance,
                "u": ev.u.to_string(),
                "fixed": ev.fixed_rep.to_string(),
                "orbit_of_u": ev.orbit_of_u.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "decomposition_check": ev.decomposition_check,
                "dimension_check": ev.dimension_check,
                "s_u_v0": json_complex(ev.s_u_v0),
                "s_u_lambda": json_complex(ev.s_u_cap_lambda),
                "s_nonvanishing": ev.s_nonvanishing,
                "survivors": survivors,
                "evidence": "dimension/color/orbit-level evidence, not a proof",
            })))
        }
        OutputFormat::Csv => {
            let mut out = String::from("key,value\n");
            out.push_str(&format!("u,{}\n", csv_quote(&ev.u.to_string())));
            out.push_str(&format!("fixed,{}\n", csv_quote(&ev.fixed_rep.to_string())));
            out.push_str(&format!(
                "decomposition_check,{}\n",
                ev.decomposition_check
            ));
            out.push_str(&format!("dimension_check,{}\n", ev.dimension_check));
            out.push_str(&format!("s_nonvanishing,{}\n", ev.s_nonvanishing));
            for (a, b) in &ev.survivors {
                out.push_str(&format!(
                    "survivor,{}\n",
                    csv_quote(&format!("{a}|{b}"))
                ));
            }
            ok(out)
        }
    }
}

struct CheckLog {
    lines: Vec<String>,
    failed: Vec<String>,
}

impl CheckLog {
    fn new() -> Self {
        CheckLog { lines: Vec::new(), failed: Vec::new() }
    }

    fn residual(&mut self, name: &str, value: f64, tolerance: f64) {
        let pass = value <= tolerance;
        self.lines.push(format!(
            "check {name}: {} (value {} tolerance {})",
            if pass { "PASS" } else { "FAIL" },
            fmt_f(value),
            fmt_f(tolerance)
        ));
        if !pass {
            self.failed.push(name.to_string());
        }
    }

    fn boolean(&mut self, name: &str, pass: bool, detail: &str) {
        self.lines.push(format!(
            "check {name}: {} ({detail})",
            if pass { "PASS" } else { "FAIL" }
        ));
        if !pass {
            self.failed.push(name.to_string());
        }
    }
}

fn selfcheck_cmd(args: TheoryArgs) -> Result<Output> {
    let tolerance = resolve_tolerance(args.tolerance)?;
    let (n, k) = (args.n, args.k);
    let md = build_md(n, k, tolerance)?;
    let tp = md.tp();
    let m = tp.size();
    let mut log = CheckLog::new();

    let mut out = format!("# wzw selfcheck n={n} k={k} primaries={m}\n");
    out.push_str(&format!("tolerance construction = {}\n", fmt_f(tolerance)));
    out.push_str(&format!("tolerance modular_relation = {}\n", fmt_f(tol::MODULAR_RELATION)));
    out.push_str(&format!("tolerance verlinde_rounding = {}\n", fmt_f(tol::VERLINDE_ROUNDING)));
    out.push_str(&format!("tolerance dimension_sum = {}\n", fmt_f(tol::DIMENSION_SUM)));
    out.push_str(&format!("tolerance s_zero_relative = {}\n", fmt_f(tol::S_ZERO_RELATIVE)));
    out.push_str(&format!("tolerance piece_dim_product = {}\n", fmt_f(tol::PIECE_DIM_PRODUCT)));

    // structural checks on the alcove
    let expected = binomial(k as u64 + n as u64 - 1, n as u64 - 1);
    log.boolean(
        "alcove_size",
        m as u64 == expected,
        &format!("{m} = C(k+n-1, n-1) = {expected}"),
    );
    let omega_ok = (0..m).all(|idx| {
        let w = tp.weight(idx);
        (0..n as i64).all(|i| {
            let im = tp.omega(w, i);
            tp.index_of(&im) == Some(tp.omega_index(idx, i))
                && tp.color(&im) as u64
                    == (tp.color(w) as u64 + i as u64 * k as u64) % n as u64
        })
    });
    log.boolean("omega_color_covariance", omega_ok, "col(omega^i) = col + i k mod n");
    let conj_ok = (0..m).all(|idx| {
        tp.conjugate_index(tp.conjugate_index(idx)) == idx
    });
    log.boolean("conjugation_involution", conj_ok, "conj is an involution on indices");
    let part_ok = tp.alcove().iter().all(|w| {
        from_partition(&to_partition(w), n).map(|b| &b == w).unwrap_or(false)
    });
    log.boolean("partition_roundtrip", part_ok, "to_partition/from_partition identity");

    // modular relations
    log.residual("s_unitarity", md.unitarity_residual(), tol::MODULAR_RELATION);
    log.residual("s_squared_conjugation", md.conjugation_residual(), tol::MODULAR_RELATION);
    log.residual("sts_relation", md.sts_residual(), tol::MODULAR_RELATION);
    log.residual("t_conjugation", md.t_conjugation_residual(), tol::MODULAR_RELATION);
    log.residual(
        "simple_current_symmetry",
        md.simple_current_symmetry_residual(),
        tol::MODULAR_RELATION,
    );
    log.residual(
        "a_norm",
        (md.a().norm_sqr() - md.global_dim()).abs() / md.global_dim(),
        tol::DIMENSION_SUM,
    );
    let c_target = (k as f64 * (n * n - 1) as f64 / (k as f64 + n as f64)).rem_euclid(8.0);
    let c_delta = {
        let d = (md.c0() - c_target).abs();
        d.min(8.0 - d)
    };
    log.residual("c0_mod_8", c_delta, tol::DIMENSION_SUM);

    // quantum-dimension extremality pins the simple currents
    let units: Vec<usize> = (0..n).map(|i| tp.index_of(&tp.omega_point(i)).unwrap()).collect();
    let extremal_ok = (0..m).all(|lam| {
        let d = md.qdim(lam);
        let is_unit = units.contains(&lam);
        ((d - 1.0).abs() < 1e-9) == is_unit
    });
    log.boolean("unit_sector_set", extremal_ok, "d=1 exactly on the omega points");

    // Verlinde integrality, scan scope by alcove size
    let (pairs, scope) = if m <= 150 {
        (PairSet::All, "all pairs")
    } else if m <= 300 {
        (PairSet::OrbitRepresentatives, "orbit-representative rows")
    } else {
        let mut named: Vec<usize> = (1..n).map(|i| tp.index_of(&tp.fundamental(i)).unwrap()).collect();
        named.push(tp.index_of(&tp.v0()).unwrap());
        named.sort_unstable();
        named.dedup();
        (PairSet::Lambdas(named), "named rows (sampled)")
    };
    match integrality_scan(&md, pairs, tol::VERLINDE_ROUNDING) {
        Ok(report) => {
            log.residual("verlinde_integrality", report.max_residual, tol::VERLINDE_ROUNDING);
            out.push_str(&format!(
                "note verlinde_integrality scope: {scope}, {} pairs\n",
                report.pairs_checked
            ));
        }
        Err(e) => log.boolean("verlinde_integrality", false, &e.to_string()),
    }

    // Pieri oracle against Verlinde slices
    let lambda_sample: Vec<usize> = if m <= 200 {
        (0..m).collect()
    } else {
        (0..m).step_by(m.div_ceil(48)).collect()
    };
    let mut pieri_ok = true;
    'pieri: for i in 1..n {
        let fi = tp.index_of(&tp.fundamental(i)).unwrap();
        for &li in &lambda_sample {
            let oracle = pieri_fundamental(tp, i, tp.weight(li))?;
            let (row, _) = verlinde_row(&md, fi, li, tol::VERLINDE_ROUNDING)?;
            let mut slice = SectorSum::new();
            for &(nu, mult) in &row {
                slice.add(tp.weight(nu as usize).clone(), mult);
            }
            if slice != oracle {
                pieri_ok = false;
                break 'pieri;
            }
        }
    }
    log.boolean(
        "pieri_oracle",
        pieri_ok,
        &format!("{} lambda rows per fundamental", lambda_sample.len()),
    );

    // golden vector [v vbar] = [1] + [v0] for k >= 2
    if k >= 2 {
        let vi = tp.index_of(&tp.v()).unwrap();
        let vbar = tp.conjugate_index(vi);
        let (row, _) = verlinde_row(&md, vi, vbar, tol::VERLINDE_ROUNDING)?;
        let mut expect: Vec<(u32, u32)> =
            vec![(0, 1), (tp.index_of(&tp.v0()).unwrap() as u32, 1)];
        expect.sort_unstable();
        log.boolean("vacuum_plus_adjoint", row == expect, "[v vbar] = [1] + [v0]");
    }

    // dimension sum rule on a deterministic sample
    let step = (m / 24).max(1);
    let sample: Vec<usize> = (0..m).step_by(step).collect();
    let mut worst_dim = 0.0f64;
    for &lam in &sample {
        for &mu in &sample {
            let (row, _) = verlinde_row(&md, lam, mu, tol::VERLINDE_ROUNDING)?;
            let prod: f64 =
                row.iter().map(|&(nu, mult)| mult as f64 * md.qdim(nu as usize)).sum();
            let want = md.qdim(lam) * md.qdim(mu);
            worst_dim = worst_dim.max((prod - want).abs() / want.max(1.0));
        }
    }
    log.residual("dimension_sum_rule", worst_dim, tol::DIMENSION_SUM);

    // Y route, full where the tensor is cheap, sampled otherwise
    if m <= 300 {
        let nt = FusionTensor::verlinde(&md)?;
        let y = ymatrix(&md, &nt);
        let (branch, resid) = y.branch();
        log.residual("y_route", resid / md.s_max_abs(), tol::DIMENSION_SUM);
        out.push_str(&format!("note y_route branch: |a|^-1 Y = {branch}\n"));
    } else {
        let rows = [tp.index_of(&tp.v()).unwrap(), tp.index_of(&tp.v0()).unwrap()];
        let mut direct = 0.0f64;
        let mut conjugated = 0.0f64;
        let scale = 1.0 / md.a().norm();
        for &lam in &rows {
            for mu in 0..m {
                let (row, _) = verlinde_row(&md, lam, mu, tol::VERLINDE_ROUNDING)?;
                let y = crate::modular::y_entry_from_row(&md, lam, mu, &row) * scale;
                direct = direct.max((y - md.s().get(lam, mu)).norm());
                conjugated = conjugated.max((y - md.s().get(lam, mu).conj()).norm());
            }
        }
        let (branch, resid) = if direct <= conjugated + 1e-12 {
            (YBranch::MatchesS, direct)
        } else {
            (YBranch::MatchesConjS, conjugated)
        };
        log.residual("y_route", resid / md.s_max_abs(), tol::DIMENSION_SUM);
        out.push_str(&format!("note y_route branch (sampled rows): |a|^-1 Y = {branch}\n"));
    }

    // conformal dimension spot value h_{v0} = n/(k+n)
    let v0_idx = tp.index_of(&tp.v0());
    if let Some(idx) = v0_idx {
        let want = num_rational::Rational64::new(n as i64, k as i64 + n as i64);
        log.boolean("h_v0", md.h(idx) == want, "h_{v0} = n/(k+n) exactly");
        let _ = conformal_dim(tp, &tp.v0())?;
    }

    for line in &log.lines {
        out.push_str(line);
        out.push('\n');
    }
    let code = if log.failed.is_empty() { 0 } else { 2 };
    out.push_str(&format!(
        "selfcheck: {} ({} checks, {} failed)\n",
        if code == 0 { "PASS" } else { "FAIL" },
        log.lines.len(),
        log.failed.len()
    ));
    Ok(Output { text: out, code })
}

/// Parses argv, runs the command, prints and returns the exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version are success paths
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(output) => {
            print!("{}", output.text);
            output.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
