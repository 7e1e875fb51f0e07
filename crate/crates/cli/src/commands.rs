//! One function per subcommand, each rendering its own output.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;

use semicircle_core::akl::akl_poly;
use semicircle_core::exact::ExactPolynomial;
use semicircle_core::hermite::coefficient_table;
use semicircle_core::lattice::{count_paths, enumerate_paths};
use semicircle_core::moments::{coefficient_targets, MomentRoute};
use semicircle_core::series_analysis::{
    catalan_gf_f64, default_grid, grid_sweep, to_f64, uniform_grid,
};
use semicircle_core::spectra::{empirical_moment, hermite_roots, semicircle_moment};
use semicircle_core::verify::{run_all, CheckOutcome};
use semicircle_core::wigner::{
    mc_expected_charpoly, spectrum_histogram, CharPolyStats, EnsembleConfig, EntryLaw,
    SpectrumHistogram,
};
use semicircle_core::{Error, Result};

use crate::{Command, Format, Report};

/// Largest `k` for which individual paths are listed (`C_12 = 208012`).
pub const MAX_LISTED_PATHS_K: usize = 12;

pub fn dispatch(command: &Command, format: Format) -> Result<Report> {
    match command {
        Command::Hermite { n } => hermite(*n, format),
        Command::Moments { k, route, eval_n } => moments(*k, route, *eval_n, format),
        Command::Akl { k, l } => akl(*k, *l, format),
        Command::Paths {
            k,
            weights,
            count_only,
        } => paths(*k, *weights, *count_only, format),
        Command::GfCheck { n_max, grid } => gf_check(*n_max, *grid, format),
        Command::Roots { n, moments } => roots(*n, *moments, format),
        Command::WignerMc {
            n,
            dist,
            c,
            samples,
            seed,
            hist,
        } => {
            let cfg = EnsembleConfig::new(*n, dist.parse::<EntryLaw>()?, *c, *samples, *seed)?;
            wigner_mc(&cfg, *hist, format)
        }
        Command::VerifyAll => verify_all(format),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

/// Renders a CSV table with a header row.
fn csv_table<R>(header: &[&str], rows: impl IntoIterator<Item = R>) -> String
where
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn high_to_low(p: &ExactPolynomial) -> Vec<String> {
    p.coeffs_high_to_low()
        .iter()
        .map(BigInt::to_string)
        .collect()
}

#[derive(Serialize)]
struct IndexedCoeff {
    k: usize,
    coefficient: String,
}

#[derive(Serialize)]
struct PowerCoeff {
    power: usize,
    coefficient: String,
}

fn hermite(n: usize, format: Format) -> Result<Report> {
    let table = coefficient_table(n);
    Ok(Report::ok(match format {
        Format::Plain => {
            let coeffs: Vec<&BigInt> = table.iter().map(|(_, c)| c).collect();
            format!("{}\n", join(&coeffs, ","))
        }
        Format::Csv => csv_table(
            &["k", "coefficient"],
            table.iter().map(|(k, c)| [k.to_string(), c.to_string()]),
        ),
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                n: usize,
                coefficients: Vec<IndexedCoeff>,
            }
            json(&Out {
                n,
                coefficients: table
                    .into_iter()
                    .map(|(k, c)| IndexedCoeff {
                        k,
                        coefficient: c.to_string(),
                    })
                    .collect(),
            })
        }
    }))
}

fn moments(k: usize, route: &str, eval_n: Option<u64>, format: Format) -> Result<Report> {
    let route: MomentRoute = route.parse()?;
    let m = route.compute(k)?;
    let (catalan, s_k) = coefficient_targets(k);
    let coeffs = high_to_low(&m.poly);
    let value = eval_n.map(|n| m.eval(n));
    Ok(Report::ok(match format {
        Format::Plain => {
            let mut s = format!("{}\n", coeffs.join(","));
            if let Some(v) = &value {
                writeln!(s, "{v}").unwrap();
            }
            s
        }
        Format::Csv => {
            let mut header = vec![
                "k",
                "route",
                "leading",
                "catalan",
                "second",
                "s_k",
                "coefficients",
            ];
            let mut row = vec![
                k.to_string(),
                route.to_string(),
                m.leading.to_string(),
                catalan.to_string(),
                m.second.to_string(),
                s_k.to_string(),
                coeffs.join(";"),
            ];
            if let (Some(n), Some(v)) = (eval_n, &value) {
                header.extend(["eval_n", "value"]);
                row.extend([n.to_string(), v.to_string()]);
            }
            csv_table(&header, [row])
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                k: usize,
                route: String,
                coefficients: Vec<String>,
                leading: String,
                catalan: String,
                second: String,
                s_k: String,
                #[serde(skip_serializing_if = "Option::is_none")]
                eval_n: Option<u64>,
                #[serde(skip_serializing_if = "Option::is_none")]
                value: Option<String>,
            }
            json(&Out {
                k,
                route: route.to_string(),
                coefficients: coeffs,
                leading: m.leading.to_string(),
                catalan: catalan.to_string(),
                second: m.second.to_string(),
                s_k: s_k.to_string(),
                eval_n,
                value: value.map(|v| v.to_string()),
            })
        }
    }))
}

fn akl(k: usize, l: usize, format: Format) -> Result<Report> {
    let p = akl_poly(k, l)?;
    Ok(Report::ok(match format {
        Format::Plain => format!("{}\n", high_to_low(&p).join(",")),
        Format::Csv => csv_table(
            &["power", "coefficient"],
            p.coeffs()
                .iter()
                .enumerate()
                .rev()
                .map(|(i, c)| [i.to_string(), c.to_string()]),
        ),
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                k: usize,
                l: usize,
                coefficients: Vec<PowerCoeff>,
            }
            json(&Out {
                k,
                l,
                coefficients: p
                    .coeffs()
                    .iter()
                    .enumerate()
                    .rev()
                    .map(|(power, c)| PowerCoeff {
                        power,
                        coefficient: c.to_string(),
                    })
                    .collect(),
            })
        }
    }))
}

fn nodes_text(nodes: &[(usize, usize)]) -> String {
    nodes
        .iter()
        .map(|(i, j)| format!("({i} {j})"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn paths(k: usize, weights: bool, count_only: bool, format: Format) -> Result<Report> {
    if k == 0 {
        return Err(Error::usage("paths need k >= 1"));
    }
    if count_only {
        let count = count_paths(k);
        return Ok(Report::ok(match format {
            Format::Plain => format!("{count}\n"),
            Format::Csv => csv_table(&["k", "count"], [[k.to_string(), count.to_string()]]),
            Format::Json => json(&serde_json::json!({ "k": k, "count": count.to_string() })),
        }));
    }
    if k > MAX_LISTED_PATHS_K {
        return Err(Error::usage(format!(
            "listing paths is limited to k <= {MAX_LISTED_PATHS_K}; use --count-only"
        )));
    }
    let list = enumerate_paths(k)?;
    let weight = |p: &semicircle_core::lattice::LatticePath| p.weight().to_string();
    Ok(Report::ok(match format {
        Format::Plain => {
            let mut s = String::new();
            for p in &list {
                s.push_str(&nodes_text(p.nodes()));
                if weights {
                    write!(s, " : {}", weight(p)).unwrap();
                }
                s.push('\n');
            }
            s
        }
        Format::Csv => {
            let header: &[&str] = if weights {
                &["index", "nodes", "weight"]
            } else {
                &["index", "nodes"]
            };
            csv_table(
                header,
                list.iter().enumerate().map(|(i, p)| {
                    let mut row = vec![i.to_string(), nodes_text(p.nodes())];
                    if weights {
                        row.push(weight(p));
                    }
                    row
                }),
            )
        }
        Format::Json => {
            #[derive(Serialize)]
            struct PathOut {
                nodes: Vec<(usize, usize)>,
                #[serde(skip_serializing_if = "Option::is_none")]
                weight: Option<Vec<String>>,
            }
            #[derive(Serialize)]
            struct Out {
                k: usize,
                count: usize,
                paths: Vec<PathOut>,
            }
            json(&Out {
                k,
                count: list.len(),
                paths: list
                    .iter()
                    .map(|p| PathOut {
                        nodes: p.nodes().to_vec(),
                        weight: weights.then(|| high_to_low(&p.weight())),
                    })
                    .collect(),
            })
        }
    }))
}

fn gf_check(n_max: usize, grid: Option<usize>, format: Format) -> Result<Report> {
    if n_max == 0 {
        return Err(Error::usage("--n-max must be positive"));
    }
    let grid = match grid {
        Some(0) => return Err(Error::usage("--grid must be positive")),
        Some(g) => uniform_grid(g),
        None => default_grid(),
    };
    let points = grid_sweep(n_max, &grid)?;
    let failed = points
        .iter()
        .filter(|p| !p.bound_ok || p.residual_zero == Some(false))
        .count();

    #[derive(Serialize)]
    struct Row {
        n: usize,
        z: String,
        f_n: f64,
        catalan_bound: f64,
        bound_ok: bool,
        residual_zero: Option<bool>,
    }
    let rows: Vec<Row> = points
        .iter()
        .map(|p| Row {
            n: p.n,
            z: p.z.to_string(),
            f_n: to_f64(&p.f_n),
            catalan_bound: catalan_gf_f64(to_f64(&(&p.z * &p.z))),
            bound_ok: p.bound_ok,
            residual_zero: p.residual_zero,
        })
        .collect();
    let text = match format {
        Format::Plain | Format::Csv => csv_table(
            &[
                "n",
                "z",
                "f_n",
                "catalan_bound",
                "bound_ok",
                "residual_zero",
            ],
            rows.iter().map(|r| {
                [
                    r.n.to_string(),
                    r.z.clone(),
                    r.f_n.to_string(),
                    r.catalan_bound.to_string(),
                    r.bound_ok.to_string(),
                    r.residual_zero.map(|b| b.to_string()).unwrap_or_default(),
                ]
            }),
        ),
        Format::Json => json(&rows),
    };
    Ok(Report {
        text,
        failure: (failed > 0).then(|| format!("{failed} grid points failed")),
    })
}

fn roots(n: usize, moments: Option<u32>, format: Format) -> Result<Report> {
    let rs = hermite_roots(n)?;
    #[derive(Serialize)]
    struct MomentRow {
        k: u32,
        empirical: f64,
        semicircle: f64,
    }
    let moment_rows: Option<Vec<MomentRow>> = moments.map(|kmax| {
        (1..=kmax)
            .map(|k| MomentRow {
                k,
                empirical: empirical_moment(&rs, k),
                semicircle: to_f64(&semicircle_moment(k)),
            })
            .collect()
    });
    Ok(Report::ok(match format {
        Format::Plain | Format::Csv => {
            let mut s = csv_table(
                &["j", "root", "scaled"],
                rs.roots
                    .iter()
                    .zip(&rs.scaled)
                    .enumerate()
                    .map(|(j, (r, x))| [j.to_string(), r.to_string(), x.to_string()]),
            );
            if let Some(rows) = &moment_rows {
                s.push('\n');
                s.push_str(&csv_table(
                    &["k", "empirical", "semicircle"],
                    rows.iter().map(|m| {
                        [
                            m.k.to_string(),
                            m.empirical.to_string(),
                            m.semicircle.to_string(),
                        ]
                    }),
                ));
            }
            s
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                n: usize,
                roots: &'a [f64],
                scaled: &'a [f64],
                #[serde(skip_serializing_if = "Option::is_none")]
                moments: Option<Vec<MomentRow>>,
            }
            json(&Out {
                n,
                roots: &rs.roots,
                scaled: &rs.scaled,
                moments: moment_rows,
            })
        }
    }))
}

#[derive(Serialize)]
struct Bin {
    lo: f64,
    hi: f64,
    mass: f64,
    semicircle: f64,
}

fn bins(h: &SpectrumHistogram) -> Vec<Bin> {
    h.bin_edges()
        .into_iter()
        .zip(h.masses.iter().zip(&h.semicircle))
        .map(|((lo, hi), (&mass, &semicircle))| Bin {
            lo,
            hi,
            mass,
            semicircle,
        })
        .collect()
}

fn wigner_mc(cfg: &EnsembleConfig, hist: Option<usize>, format: Format) -> Result<Report> {
    let stats: CharPolyStats = mc_expected_charpoly(cfg)?;
    let histogram = hist.map(|b| spectrum_histogram(cfg, b)).transpose()?;
    Ok(Report::ok(match format {
        Format::Plain | Format::Json => {
            #[derive(Serialize)]
            struct HistOut {
                lo: f64,
                hi: f64,
                bins: Vec<Bin>,
                overflow: f64,
                tv_distance: f64,
            }
            #[derive(Serialize)]
            struct Out<'a> {
                config: &'a EnsembleConfig,
                coefficients: &'a [semicircle_core::wigner::CoefficientStat],
                #[serde(skip_serializing_if = "Option::is_none")]
                histogram: Option<HistOut>,
            }
            json(&Out {
                config: cfg,
                coefficients: &stats.coefficients,
                histogram: histogram.as_ref().map(|h| HistOut {
                    lo: h.lo,
                    hi: h.hi,
                    bins: bins(h),
                    overflow: h.overflow,
                    tv_distance: h.tv_distance,
                }),
            })
        }
        Format::Csv => {
            let mut s = csv_table(
                &["k", "mean", "stderr", "target"],
                stats.coefficients.iter().map(|c| {
                    [
                        c.k.to_string(),
                        c.mean.to_string(),
                        c.stderr.to_string(),
                        c.target.to_string(),
                    ]
                }),
            );
            if let Some(h) = &histogram {
                s.push('\n');
                let rows = bins(h)
                    .into_iter()
                    .map(|b| {
                        [
                            b.lo.to_string(),
                            b.hi.to_string(),
                            b.mass.to_string(),
                            b.semicircle.to_string(),
                        ]
                    })
                    .chain([[
                        "overflow".into(),
                        String::new(),
                        h.overflow.to_string(),
                        "0".into(),
                    ]]);
                s.push_str(&csv_table(&["lo", "hi", "mass", "semicircle"], rows));
            }
            s
        }
    }))
}

fn verify_all(format: Format) -> Result<Report> {
    let outcomes = run_all();
    let failed: Vec<&CheckOutcome> = outcomes.iter().filter(|o| !o.passed).collect();
    let text = match format {
        Format::Plain => {
            let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
            let mut s = String::new();
            for o in &outcomes {
                writeln!(
                    s,
                    "{:>2}  {:<width$}  {}  {:>7.2}s  {}",
                    o.id,
                    o.name,
                    if o.passed { "PASS" } else { "FAIL" },
                    o.seconds,
                    o.detail
                )
                .unwrap();
            }
            writeln!(
                s,
                "{} of {} checks passed",
                outcomes.len() - failed.len(),
                outcomes.len()
            )
            .unwrap();
            s
        }
        Format::Csv => csv_table(
            &["id", "name", "passed", "seconds", "detail"],
            outcomes.iter().map(|o| {
                [
                    o.id.to_string(),
                    o.name.to_string(),
                    o.passed.to_string(),
                    format!("{:.3}", o.seconds),
                    o.detail.clone(),
                ]
            }),
        ),
        Format::Json => json(&outcomes),
    };
    let failure = (!failed.is_empty()).then(|| {
        let ids: Vec<String> = failed.iter().map(|o| o.id.to_string()).collect();
        format!("checks failed: {}", ids.join(", "))
    });
    Ok(Report { text, failure })
}
