use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use vsldpc::codec::{apply_mask, export_alist, simulate as run_simulation};
use vsldpc::constructions::{
    construct_dds_j4, construct_es, construct_gcd_j4, construct_maxfn_j4, construct_td, construct_theorem1,
    construct_theorem2_j6, maxfn_min_p, verify_conjecture1, verify_conjecture2_range, SweepReport,
};
use vsldpc::search::{reproduce_tables, search_min_p};
use vsldpc::sequences::{es, td, td_circ_size};
use vsldpc::{
    girth_bfs, girth_exponent, lift, BlockMask, ConstructionResult, CycleWitness, ExponentMatrix, GirthReport,
    MatrixDocument, Method, Provenance, SearchSpec, SequenceKind, SimConfig, StopRule,
};

use crate::input::{circulant_size, load_mask, load_matrix};
use crate::{
    ConstructArgs, ExportArgs, Format, GirthArgs, MethodArg, Oracle, Outcome, SearchArgs, SeqArg, SeqArgs,
    SimulateArgs, TablesArgs, VerifyArgs,
};

/// Largest cap the girth command accepts.
const MAX_CAP: usize = 16;

fn pick(format: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = format.unwrap_or(default);
    if !allowed.contains(&f) {
        bail!("this command does not write {f:?} output");
    }
    Ok(f)
}

fn to_json(value: &impl Serialize) -> Result<String> {
    let mut text = serde_json::to_string(value)?;
    text.push('\n');
    Ok(text)
}

fn to_csv<R: AsRef<[u8]>>(header: Option<&[&str]>, rows: impl IntoIterator<Item = Vec<R>>) -> Result<String> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    if let Some(h) = header {
        w.write_record(h)?;
    }
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Girth as a number, or `">cap"` when no cycle up to the cap exists.
fn girth_value(g: &GirthReport) -> Value {
    match g.value() {
        Some(v) => json!(v),
        None => json!(g.to_string()),
    }
}

#[derive(Serialize)]
struct GirthSummary {
    girth: Value,
    cap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    agreement: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<CycleWitness>,
}

fn check_girth(e: &ExponentMatrix, p: i64, cap: usize, oracle: Oracle, mask: Option<&BlockMask>) -> Result<GirthSummary> {
    let equations = match oracle {
        Oracle::Bfs => None,
        _ => Some(girth_exponent(e, p, cap, mask)?),
    };
    let bfs = match oracle {
        Oracle::Equations => None,
        _ => Some(girth_bfs(&lift(e, p, mask)?, cap)),
    };
    let agreement = match (&equations, &bfs) {
        (Some(a), Some(b)) => Some(a.girth == b.girth),
        _ => None,
    };
    let main = equations.as_ref().or(bfs.as_ref()).expect("at least one engine ran");
    Ok(GirthSummary {
        girth: girth_value(main),
        cap,
        agreement,
        witness: main.witness.clone(),
    })
}

#[derive(Serialize)]
struct Constructed {
    #[serde(flatten)]
    doc: MatrixDocument,
    method: Method,
    provenance: Provenance,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    verification: Option<GirthSummary>,
}

fn with_size(mut c: ConstructionResult, p: Option<i64>) -> ConstructionResult {
    if let Some(p) = p {
        if p != c.p {
            c.p = p;
            c.provenance.girth = None;
        }
    }
    c
}

fn build(a: &ConstructArgs) -> Result<ConstructionResult> {
    let l = || a.l.context("--L is required for this method");
    let c = match a.method {
        MethodArg::Es => with_size(construct_es(l()?)?, a.p),
        MethodArg::Td => with_size(construct_td(l()?)?, a.p),
        MethodArg::Theorem2 => with_size(construct_theorem2_j6(l()?)?, a.p),
        MethodArg::Gcd => {
            let l = l()?;
            construct_gcd_j4(l, a.p.unwrap_or((l * l) as i64))?
        }
        MethodArg::Maxfn => {
            let l = l()?;
            construct_maxfn_j4(l, a.p.unwrap_or_else(|| maxfn_min_p(l)))?
        }
        MethodArg::Theorem1 => {
            let betas = a.betas.as_ref().context("--betas is required for theorem1")?;
            construct_theorem1(betas, a.p.context("--P is required for theorem1")?)?
        }
        MethodArg::Dds => {
            let d1 = a.d1.as_ref().context("--d1 is required for dds")?;
            let d2 = a.d2.as_ref().context("--d2 is required for dds")?;
            construct_dds_j4(d1, d2, a.p.context("--P is required for dds")?)?
        }
    };
    if let Some(j) = a.j {
        if j != c.matrix.j() {
            bail!("method {:?} builds J = {}, not {j}", a.method, c.matrix.j());
        }
    }
    if let Some(l) = a.l {
        if l != c.matrix.l() {
            bail!("the given sets have L = {}, not {l}", c.matrix.l());
        }
    }
    Ok(c)
}

pub fn construct(a: &ConstructArgs, format: Option<Format>) -> Result<Outcome> {
    let format = pick(format, Format::Json, &[Format::Json, Format::Csv])?;
    let c = build(a)?;
    let verification = if a.verify {
        Some(check_girth(&c.matrix, c.p, 12, Oracle::Both, None)?)
    } else {
        None
    };
    let ok = verification
        .as_ref()
        .is_none_or(|v| v.agreement == Some(true) && v.girth == json!(8));
    let text = match format {
        Format::Csv => to_csv(None, c.matrix.rows().map(|r| r.iter().map(i64::to_string).collect()))?,
        _ => to_json(&Constructed {
            doc: MatrixDocument::new(&c.matrix, Some(c.p)),
            method: c.method,
            provenance: c.provenance,
            verification,
        })?,
    };
    Ok(Outcome { text, ok })
}

pub fn girth(a: &GirthArgs, format: Option<Format>) -> Result<Outcome> {
    let format = pick(format, Format::Json, &[Format::Json, Format::Csv])?;
    if !(4..=MAX_CAP).contains(&a.cap) {
        bail!("--cap must be between 4 and {MAX_CAP}, got {}", a.cap);
    }
    let (e, stored) = load_matrix(&a.input)?;
    let p = circulant_size(a.p, stored)?;
    let mask = a.mask.as_deref().map(load_mask).transpose()?;
    let summary = check_girth(&e, p, a.cap, a.oracle, mask.as_ref())?;
    let ok = summary.agreement != Some(false);
    let text = match format {
        Format::Csv => {
            let g = summary.girth.to_string().trim_matches('"').to_string();
            let agree = summary.agreement.map(|b| b.to_string()).unwrap_or_default();
            to_csv(Some(&["P", "girth", "cap", "agreement"]), [vec![p.to_string(), g, a.cap.to_string(), agree]])?
        }
        _ => to_json(&summary)?,
    };
    Ok(Outcome { text, ok })
}

pub fn search(a: &SearchArgs, format: Option<Format>) -> Result<Outcome> {
    let format = pick(format, Format::Json, &[Format::Json, Format::Csv])?;
    let mut spec = SearchSpec::new(a.j, a.l, a.pmin, a.pmax);
    spec.alpha_domain = a.alpha_range;
    spec.beta_domain = a.beta_range;
    spec.stop = if a.exhaustive { StopRule::Exhaustive } else { StopRule::FirstHit };
    let out = search_min_p(&spec)?;
    let ok = out.oracle_rejections == 0;
    let text = match format {
        Format::Csv => {
            let j0 = out.hits.first().map_or(0, |h| h.alphas.len());
            let mut header = vec!["P".to_string()];
            header.extend((0..j0).map(|i| format!("alpha_{i}")));
            header.push("beta".into());
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let rows = out.hits.iter().map(|h| {
                let mut row = vec![h.p.to_string()];
                row.extend(h.alphas.iter().map(i64::to_string));
                row.push(h.beta.to_string());
                row
            });
            to_csv(Some(&header), rows)?
        }
        _ => {
            let tuples: Vec<Value> = out.hits.iter().map(|h| json!({"alphas": h.alphas, "beta": h.beta})).collect();
            to_json(&json!({
                "J": a.j,
                "L": a.l,
                "P": out.hit.as_ref().map(|h| h.p),
                "alphas": out.hit.as_ref().map(|h| &h.alphas),
                "beta": out.hit.as_ref().map(|h| h.beta),
                "girth": out.hit.as_ref().map(|h| girth_value(&h.girth)),
                "matrix": out.hit.as_ref().map(|h| MatrixDocument::new(&h.matrix, Some(h.p))),
                "tuples": tuples,
                "exhausted_up_to": out.exhausted_up_to,
                "oracle_rejections": out.oracle_rejections,
            }))?
        }
    };
    Ok(Outcome { text, ok })
}

pub fn tables(a: &TablesArgs, format: Option<Format>) -> Result<Outcome> {
    let format = pick(format, Format::Csv, &[Format::Json, Format::Csv])?;
    let rows = reproduce_tables(a.j, a.search)?;
    let ok = rows.iter().all(|r| r.pass);
    let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
    let text = match format {
        Format::Csv => to_csv(
            Some(&["L", "P_paper", "P_ours", "status", "P_HS", "P_IRS"]),
            rows.iter().map(|r| {
                vec![
                    r.row.l.to_string(),
                    r.row.p.to_string(),
                    opt(r.p_ours),
                    if r.pass { "pass" } else { "fail" }.to_string(),
                    opt(r.row.p_hs),
                    opt(r.row.p_irs),
                ]
            }),
        )?,
        _ => to_json(&rows)?,
    };
    Ok(Outcome { text, ok })
}

pub fn seq(a: &SeqArgs, format: Option<Format>) -> Result<Outcome> {
    let format = pick(format, Format::Csv, &[Format::Json, Format::Csv])?;
    // P on row n is the size for the first n + 1 TD terms
    let rows: Vec<(u64, i64, i64, Option<i64>)> = (0..a.n)
        .map(|n| (n, es(n), td(n), td_circ_size(n + 1).ok()))
        .collect();
    let text = match format {
        Format::Csv => to_csv(
            Some(&["n", "s_el", "s_td", "P"]),
            rows.iter().map(|&(n, s, t, p)| {
                vec![n.to_string(), s.to_string(), t.to_string(), p.map(|x| x.to_string()).unwrap_or_default()]
            }),
        )?,
        _ => to_json(
            &rows
                .iter()
                .map(|&(n, s, t, p)| json!({"n": n, "s_el": s, "s_td": t, "P": p}))
                .collect::<Vec<_>>(),
        )?,
    };
    Ok(Outcome { text, ok: true })
}

fn load_code(input: &std::path::Path, p: Option<i64>, mask: Option<&std::path::Path>) -> Result<vsldpc::LiftedCode> {
    let (e, stored) = load_matrix(input)?;
    let p = circulant_size(p, stored)?;
    match mask {
        Some(path) => {
            let (e, mask) = apply_mask(&e, &load_mask(path)?)?;
            Ok(lift(&e, p, Some(&mask))?)
        }
        None => Ok(lift(&e, p, None)?),
    }
}

pub fn export(a: &ExportArgs, format: Option<Format>) -> Result<Outcome> {
    pick(format, Format::Alist, &[Format::Alist])?;
    let code = load_code(&a.input, a.p, a.mask.as_deref())?;
    Ok(Outcome {
        text: export_alist(&code)?,
        ok: true,
    })
}

pub fn simulate(a: &SimulateArgs, format: Option<Format>) -> Result<Outcome> {
    let format = pick(format, Format::Csv, &[Format::Json, Format::Csv])?;
    if a.frames == 0 {
        bail!("--frames must be positive");
    }
    let cfg = SimConfig {
        code: load_code(&a.input, a.p, a.mask.as_deref())?,
        snr_db_points: a.snr.clone(),
        max_iterations: a.iters,
        max_frames: a.frames,
        target_errors: a.target_errors,
        rng_seed: a.seed,
    };
    let stats = run_simulation(&cfg)?;
    let text = match format {
        Format::Csv => to_csv(
            Some(&["snr_db", "frames", "bit_err", "blk_err", "ber", "bler", "avg_iters"]),
            stats.points.iter().map(|p| {
                vec![
                    p.snr_db.to_string(),
                    p.frames.to_string(),
                    p.bit_errors.to_string(),
                    p.block_errors.to_string(),
                    format!("{:e}", p.ber),
                    format!("{:e}", p.bler),
                    format!("{:.4}", p.avg_iters),
                ]
            }),
        )?,
        _ => to_json(&stats)?,
    };
    Ok(Outcome { text, ok: true })
}

pub fn verify_conjectures(a: &VerifyArgs, format: Option<Format>) -> Result<Outcome> {
    let format = pick(format, Format::Json, &[Format::Json, Format::Csv])?;
    if a.l_min > a.l_max {
        bail!("--Lmin {} exceeds --Lmax {}", a.l_min, a.l_max);
    }
    let (report, sequence): (SweepReport, &str) = match a.which {
        1 => (verify_conjecture1(a.l_min, a.l_max)?, "td"),
        _ => {
            let seq = match a.seq {
                SeqArg::Es => SequenceKind::Es,
                SeqArg::Td => SequenceKind::Td,
            };
            (verify_conjecture2_range(a.l_min, a.l_max, &seq)?, seq.name())
        }
    };
    let text = match format {
        Format::Csv => to_csv(
            Some(&["L", "P", "girth"]),
            report.failures.iter().map(|f| vec![f.l.to_string(), f.p.to_string(), f.report.to_string()]),
        )?,
        _ => to_json(&json!({
            "which": a.which,
            "sequence": sequence,
            "L_min": a.l_min.max(3),
            "L_max": a.l_max,
            "checks": report.checks,
            "failures": report.failures,
            "passed": report.passed(),
        }))?,
    };
    Ok(Outcome { text, ok: report.passed() })
}
