use clap::{Args, Subcommand};
use horn_lab_core::embeddings::{
    composite_moment, grassmannian_unstable, moment_flag, plucker, PluckerVector, WeightedEmbeddingSpec,
};
use horn_lab_core::hermitian_core::{eigenvalues, ginibre, rng_from_seed, Flag, FlagJson};
use horn_lab_core::horn_flow::{
    best_of_restarts, feasibility, horn_sweep, pair_sum_target, FeasibilityReport, HornOptions,
    WitnessTriple, DEFAULT_MAX_ITER, DEFAULT_RESTARTS,
};
use horn_lab_core::lr_invariants::{
    invariant_dimension, invariant_shapes, lr_coefficient, lr_tableaux, saturation_scan, LrTableau,
    Partition,
};
use horn_lab_core::matrix_json::{CMatrix, MatrixJson, RectMatrixJson};
use horn_lab_core::polygon_spaces::{polygon_nonempty, sample_polygons, PolygonConfig};
use horn_lab_core::quotient_examples::{
    cpn_sample, hopf_level, isospectral_diagonal_fiber, sample_hopf_fiber, two_row_level,
    two_row_moments, LevelReport,
};
use horn_lab_core::schur_horn::{sh_membership, sh_sample_image, sh_vertices};
use horn_lab_core::spectra::{IntegralSpectrum, Spectrum};
use horn_lab_core::{HornError, Result};
use num_complex::Complex64;
use serde::Serialize;

use crate::output::{fmt_f64, Report, Table};
use crate::parse;
use crate::Global;

/// Printed with every circle-quotient report.
const SIGN_NOTE: &str = "symplectic levels: the quotient is nonempty for k >= 0; \
the matching GIT quotient uses characters of the opposite sign";

#[derive(Subcommand, Debug)]
pub enum SchurHorn {
    /// Is the vector in the Schur-Horn polytope of the spectrum?
    Check {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        diag: String,
    },
    /// Distinct vertices of the polytope.
    Vertices {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Diagonals of Haar-random orbit points.
    Sample {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
}

#[derive(Args, Debug)]
pub struct Triple {
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
    #[arg(long, allow_hyphen_values = true)]
    nu: String,
}

#[derive(Args, Debug)]
pub struct Solver {
    #[arg(long, default_value_t = DEFAULT_RESTARTS)]
    restarts: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
}

#[derive(Subcommand, Debug)]
pub enum Horn {
    /// Decide whether the three spectra are realized by matrices summing to zero.
    Feasible {
        #[command(flatten)]
        triple: Triple,
        #[command(flatten)]
        solver: Solver,
    },
    /// Best witness triple found by the descent.
    Witness {
        #[command(flatten)]
        triple: Triple,
        #[command(flatten)]
        solver: Solver,
    },
    /// For 2x2 spectra: best residual as the top eigenvalue of H_lambda + H_mu varies.
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Top eigenvalues to try.
        #[arg(long, allow_hyphen_values = true)]
        tops: String,
        #[command(flatten)]
        solver: Solver,
    },
}

#[derive(Subcommand, Debug)]
pub enum Lr {
    /// Littlewood-Richardson coefficient c^gamma_{alpha beta}.
    Coeff {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        gamma: String,
        /// Also list the tableaux.
        #[arg(long)]
        certificates: bool,
    },
    /// Dimension of the invariants in V_lambda ⊗ V_mu ⊗ V_nu.
    Invdim {
        #[command(flatten)]
        triple: Triple,
        #[arg(long)]
        certificates: bool,
    },
    /// Smallest k <= k-max with an invariant for (k lambda, k mu, k nu).
    Saturate {
        #[command(flatten)]
        triple: Triple,
        #[arg(long, default_value_t = 4)]
        k_max: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum FlagCmd {
    /// Moment map image of a full flag under the weighted composite embedding.
    Moment {
        /// Strictly decreasing integers.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// JSON flag ({"dims", "basis"}); random from the seed when absent.
        #[arg(long)]
        flag: Option<String>,
    },
    /// Plücker coordinates of the row span of a k x n matrix.
    Plucker {
        /// JSON matrix ({"rows", "cols", "entries"}), `-` for standard input;
        /// a random k x n matrix from the seed when absent.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
    /// Are the rows of the matrix linearly dependent?
    Unstable {
        #[arg(long)]
        matrix: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum Polygon {
    /// Does a closed polygon with these edge lengths exist?
    Check {
        #[arg(long)]
        lengths: String,
    },
    /// Closed polygons with these edge lengths.
    Sample {
        #[arg(long)]
        lengths: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Examples {
    /// Level |v|^2/2 = k of C^n modulo the circle.
    Hopf {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: f64,
        /// Random witnesses in addition to the coordinate ones.
        #[arg(long, default_value_t = 0)]
        count: usize,
    },
    /// Torus moment map images of points of CP^n.
    Cpn {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
    /// Hermitian matrices with given spectrum and diagonal.
    Fiber {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// The two moment maps on 2 x n matrices.
    TwoRow {
        /// JSON 2 x n matrix; random from the seed when absent.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

fn bool_text(b: bool) -> String {
    b.to_string()
}

fn options(g: &Global, s: &Solver) -> HornOptions {
    HornOptions {
        max_iter: s.max_iter,
        restarts: s.restarts,
        tolerance_scale: g.tolerance_scale,
        ..HornOptions::default()
    }
}

fn real_triple(t: &Triple) -> Result<(Spectrum, Spectrum, Spectrum)> {
    Ok((
        parse::spectrum("lambda", &t.lambda)?,
        parse::spectrum("mu", &t.mu)?,
        parse::spectrum("nu", &t.nu)?,
    ))
}

fn integral_triple(t: &Triple) -> Result<(IntegralSpectrum, IntegralSpectrum, IntegralSpectrum)> {
    Ok((
        parse::integral_spectrum("lambda", &t.lambda)?,
        parse::integral_spectrum("mu", &t.mu)?,
        parse::integral_spectrum("nu", &t.nu)?,
    ))
}

fn partition(field: &str, text: &str) -> Result<Partition> {
    Partition::try_from(parse::integers(field, text)?).map_err(|e| match e {
        HornError::Domain { message, .. } => HornError::domain(field, message),
        other => other,
    })
}

pub fn schur_horn(cmd: SchurHorn, g: &Global) -> Result<Report> {
    match cmd {
        SchurHorn::Check { lambda, diag } => {
            let lambda = parse::spectrum("lambda", &lambda)?;
            let diag = parse::reals("diag", &diag)?;
            let member = sh_membership(&lambda, &diag)?;
            #[derive(Serialize)]
            struct Out {
                lambda: Spectrum,
                diag: Vec<f64>,
                member: bool,
            }
            Ok(Report::new(&Out { lambda, diag, member }, Table::single("member", bool_text(member))))
        }
        SchurHorn::Vertices { lambda } => {
            let p = sh_vertices(&parse::spectrum("lambda", &lambda)?);
            let table = Table::of_points("x", &p.vertices);
            Ok(Report::new(&p, table))
        }
        SchurHorn::Sample { lambda, count } => {
            let lambda = parse::spectrum("lambda", &lambda)?;
            let samples = sh_sample_image(&lambda, count, g.seed);
            let mut all_members = true;
            for d in &samples {
                all_members &= sh_membership(&lambda, d)?;
            }
            #[derive(Serialize)]
            struct Out<'a> {
                lambda: &'a Spectrum,
                seed: u64,
                all_members: bool,
                samples: &'a [Vec<f64>],
            }
            let table = Table::of_points("d", &samples);
            Ok(Report::new(
                &Out {
                    lambda: &lambda,
                    seed: g.seed,
                    all_members,
                    samples: &samples,
                },
                table,
            ))
        }
    }
}

pub fn horn(cmd: Horn, g: &Global) -> Result<Report> {
    match cmd {
        Horn::Feasible { triple, solver } => {
            let (l, m, n) = real_triple(&triple)?;
            let report = feasibility(&l, &m, &n, g.seed, &options(g, &solver))?;
            #[derive(Serialize)]
            struct Out<'a> {
                lambda: &'a Spectrum,
                mu: &'a Spectrum,
                nu: &'a Spectrum,
                seed: u64,
                #[serde(flatten)]
                report: &'a FeasibilityReport,
            }
            let mut table = Table::new(&["status", "best_residual", "tolerance", "restarts", "best_restart", "lr_crosscheck"]);
            table.push(vec![
                serde_json::to_value(report.status).expect("enum").as_str().unwrap_or_default().to_string(),
                fmt_f64(report.best_residual),
                fmt_f64(report.tolerance),
                report.restarts.to_string(),
                report.best_restart.to_string(),
                report.lr_crosscheck.map(|d| d.to_string()).unwrap_or_default(),
            ]);
            Ok(Report::new(
                &Out {
                    lambda: &l,
                    mu: &m,
                    nu: &n,
                    seed: g.seed,
                    report: &report,
                },
                table,
            ))
        }
        Horn::Witness { triple, solver } => {
            let (l, m, n) = real_triple(&triple)?;
            let (best_restart, w) = best_of_restarts(&l, &m, &n, g.seed, &options(g, &solver))?;
            #[derive(Serialize)]
            struct Out<'a> {
                best_restart: usize,
                spectrum_error: f64,
                #[serde(flatten)]
                witness: &'a WitnessTriple,
            }
            let mut table = Table::matrices();
            table.push_matrix("H_lambda", w.h_lambda.matrix());
            table.push_matrix("H_mu", w.h_mu.matrix());
            table.push_matrix("H_nu", w.h_nu.matrix());
            Ok(Report::new(
                &Out {
                    best_restart,
                    spectrum_error: w.spectrum_error(&l, &m, &n),
                    witness: &w,
                },
                table,
            ))
        }
        Horn::Sweep { lambda, mu, tops, solver } => {
            let l = parse::spectrum("lambda", &lambda)?;
            let m = parse::spectrum("mu", &mu)?;
            let tops = parse::reals("tops", &tops)?;
            let results = horn_sweep(&l, &m, &tops, g.seed, &options(g, &solver))?;
            #[derive(Serialize)]
            struct Point {
                top: f64,
                nu: Spectrum,
                best_residual: f64,
            }
            #[derive(Serialize)]
            struct Out<'a> {
                lambda: &'a Spectrum,
                mu: &'a Spectrum,
                seed: u64,
                points: Vec<Point>,
            }
            let mut table = Table::new(&["top", "best_residual"]);
            let mut points = Vec::new();
            for (top, best_residual) in results {
                table.push(vec![fmt_f64(top), fmt_f64(best_residual)]);
                points.push(Point {
                    top,
                    nu: pair_sum_target(&l, &m, top)?,
                    best_residual,
                });
            }
            Ok(Report::new(
                &Out {
                    lambda: &l,
                    mu: &m,
                    seed: g.seed,
                    points,
                },
                table,
            ))
        }
    }
}

fn tableau_rows(table: &mut Table, tableaux: &[LrTableau]) {
    for (i, t) in tableaux.iter().enumerate() {
        for (r, row) in t.rows.iter().enumerate() {
            let entries: Vec<String> = row.iter().map(u32::to_string).collect();
            table.push(vec![(i + 1).to_string(), (r + 1).to_string(), entries.join(" ")]);
        }
    }
}

pub fn lr(cmd: Lr) -> Result<Report> {
    match cmd {
        Lr::Coeff {
            alpha,
            beta,
            gamma,
            certificates,
        } => {
            let a = partition("alpha", &alpha)?;
            let b = partition("beta", &beta)?;
            let c = partition("gamma", &gamma)?;
            let coefficient = lr_coefficient(&a, &b, &c);
            let tableaux = certificates.then(|| lr_tableaux(&a, &b, &c));
            #[derive(Serialize)]
            struct Out {
                alpha: Partition,
                beta: Partition,
                gamma: Partition,
                coefficient: u64,
                #[serde(skip_serializing_if = "Option::is_none")]
                tableaux: Option<Vec<LrTableau>>,
            }
            let table = match &tableaux {
                Some(ts) => {
                    let mut t = Table::new(&["tableau", "row", "entries"]);
                    tableau_rows(&mut t, ts);
                    t
                }
                None => Table::single("coefficient", coefficient.to_string()),
            };
            Ok(Report::new(
                &Out {
                    alpha: a,
                    beta: b,
                    gamma: c,
                    coefficient,
                    tableaux,
                },
                table,
            ))
        }
        Lr::Invdim { triple, certificates } => {
            let (l, m, n) = integral_triple(&triple)?;
            let dimension = invariant_dimension(&l, &m, &n)?;
            let shapes = invariant_shapes(&l, &m, &n)?;
            let tableaux = match (&shapes, certificates) {
                (Some((a, b, c)), true) => Some(lr_tableaux(a, b, c)),
                (None, true) => Some(Vec::new()),
                _ => None,
            };
            #[derive(Serialize)]
            struct Out {
                lambda: IntegralSpectrum,
                mu: IntegralSpectrum,
                nu: IntegralSpectrum,
                dimension: u64,
                #[serde(skip_serializing_if = "Option::is_none")]
                tableaux: Option<Vec<LrTableau>>,
            }
            let table = match &tableaux {
                Some(ts) => {
                    let mut t = Table::new(&["tableau", "row", "entries"]);
                    tableau_rows(&mut t, ts);
                    t
                }
                None => Table::single("dimension", dimension.to_string()),
            };
            Ok(Report::new(
                &Out {
                    lambda: l,
                    mu: m,
                    nu: n,
                    dimension,
                    tableaux,
                },
                table,
            ))
        }
        Lr::Saturate { triple, k_max } => {
            let (l, m, n) = integral_triple(&triple)?;
            let k = saturation_scan(&l, &m, &n, k_max)?;
            #[derive(Serialize)]
            struct Out {
                lambda: IntegralSpectrum,
                mu: IntegralSpectrum,
                nu: IntegralSpectrum,
                k_max: i64,
                k: Option<i64>,
            }
            let table = Table::single("k", k.map(|k| k.to_string()).unwrap_or_default());
            Ok(Report::new(
                &Out {
                    lambda: l,
                    mu: m,
                    nu: n,
                    k_max,
                    k,
                },
                table,
            ))
        }
    }
}

fn read_matrix(field: &str, path: &str) -> Result<CMatrix> {
    parse::json_input::<RectMatrixJson>(field, path)?.to_matrix()
}

pub fn flag(cmd: FlagCmd, g: &Global) -> Result<Report> {
    match cmd {
        FlagCmd::Moment { lambda, flag } => {
            let lambda = parse::integral_spectrum("lambda", &lambda)?;
            let spec = WeightedEmbeddingSpec::new(lambda.clone()).map_err(|e| match e {
                HornError::Domain { message, .. } => HornError::domain("lambda", message),
                other => other,
            })?;
            let n = lambda.len();
            let flag = match flag {
                Some(path) => Flag::try_from(parse::json_input::<FlagJson>("flag", &path)?)?,
                None => Flag::random((1..=n).collect(), g.seed)?,
            };
            let moment = composite_moment(&flag, &spec)?;
            let spectrum = eigenvalues(&moment);
            let flag_recovered = moment_flag(&moment).same_as(&flag, 1e-9);
            #[derive(Serialize)]
            struct Out {
                lambda: IntegralSpectrum,
                degrees: Vec<i64>,
                flag: Flag,
                moment: MatrixJson,
                spectrum: Spectrum,
                flag_recovered: bool,
            }
            let mut table = Table::matrices();
            table.push_matrix("moment", moment.matrix());
            Ok(Report::new(
                &Out {
                    degrees: spec.degrees(),
                    lambda,
                    flag,
                    moment: MatrixJson::from_matrix(moment.matrix()),
                    spectrum,
                    flag_recovered,
                },
                table,
            ))
        }
        FlagCmd::Plucker { matrix, k, n } => {
            let m = match matrix {
                Some(path) => read_matrix("matrix", &path)?,
                None => ginibre(k, n, &mut rng_from_seed(g.seed)),
            };
            let p = plucker(&m)?;
            #[derive(Serialize)]
            struct Out<'a> {
                matrix: RectMatrixJson,
                subsets: Vec<Vec<usize>>,
                #[serde(flatten)]
                plucker: &'a PluckerVector,
                three_term_residual: Option<f64>,
            }
            let subsets = p.subsets();
            let mut table = Table::new(&["subset", "re", "im"]);
            for (s, z) in subsets.iter().zip(&p.coords) {
                let label: Vec<String> = s.iter().map(usize::to_string).collect();
                table.push(vec![label.join(" "), fmt_f64(z.re), fmt_f64(z.im)]);
            }
            Ok(Report::new(
                &Out {
                    matrix: RectMatrixJson::from_matrix(&m),
                    subsets,
                    plucker: &p,
                    three_term_residual: p.three_term_residual(),
                },
                table,
            ))
        }
        FlagCmd::Unstable { matrix } => {
            let m = read_matrix("matrix", &matrix)?;
            let unstable = grassmannian_unstable(&m)?;
            #[derive(Serialize)]
            struct Out {
                rows: usize,
                cols: usize,
                unstable: bool,
            }
            Ok(Report::new(
                &Out {
                    rows: m.nrows(),
                    cols: m.ncols(),
                    unstable,
                },
                Table::single("unstable", bool_text(unstable)),
            ))
        }
    }
}

pub fn polygon(cmd: Polygon, g: &Global) -> Result<Report> {
    match cmd {
        Polygon::Check { lengths } => {
            let a = parse::lengths("lengths", &lengths)?;
            let nonempty = polygon_nonempty(&a);
            #[derive(Serialize)]
            struct Out {
                lengths: Vec<f64>,
                nonempty: bool,
            }
            Ok(Report::new(
                &Out {
                    lengths: a.values().to_vec(),
                    nonempty,
                },
                Table::single("nonempty", bool_text(nonempty)),
            ))
        }
        Polygon::Sample { lengths, count } => {
            let a = parse::lengths("lengths", &lengths)?;
            let polygons = sample_polygons(&a, count, g.seed);
            #[derive(Serialize)]
            struct Out<'a> {
                lengths: &'a [f64],
                seed: u64,
                nonempty: bool,
                polygons: &'a [PolygonConfig],
            }
            let mut table = Table::new(&["sample", "vertex", "x", "y", "z"]);
            for (i, p) in polygons.iter().enumerate() {
                for (j, v) in p.vertices().iter().enumerate() {
                    table.push(vec![
                        (i + 1).to_string(),
                        j.to_string(),
                        fmt_f64(v[0]),
                        fmt_f64(v[1]),
                        fmt_f64(v[2]),
                    ]);
                }
            }
            Ok(Report::new(
                &Out {
                    lengths: a.values(),
                    seed: g.seed,
                    nonempty: polygon_nonempty(&a),
                    polygons: &polygons,
                },
                table,
            ))
        }
    }
}

fn level_table<W>(r: &LevelReport<W>) -> Table {
    let mut t = Table::new(&["status", "quotient_dimension", "witnesses"]);
    t.push(vec![
        serde_json::to_value(r.status).expect("enum").as_str().unwrap_or_default().to_string(),
        r.quotient_dimension.to_string(),
        r.witnesses.as_ref().map_or(0, Vec::len).to_string(),
    ]);
    t
}

pub fn examples(cmd: Examples, g: &Global) -> Result<Report> {
    match cmd {
        Examples::Hopf { n, k, count } => {
            let mut report = hopf_level(n, k)?;
            if count > 0 && k > 0.0 {
                if let Some(w) = report.witnesses.as_mut() {
                    w.extend(sample_hopf_fiber(n, k, count, g.seed)?);
                }
            }
            #[derive(Serialize)]
            struct Out<'a> {
                n: usize,
                #[serde(flatten)]
                report: &'a LevelReport<Vec<Complex64>>,
                note: &'static str,
            }
            let table = level_table(&report);
            Ok(Report::new(
                &Out {
                    n,
                    report: &report,
                    note: SIGN_NOTE,
                },
                table,
            ))
        }
        Examples::Cpn { n, count } => {
            if n == 0 {
                return Err(HornError::domain("n", "must be at least 1"));
            }
            let samples = cpn_sample(n, count, g.seed);
            let max_sum_error = samples
                .iter()
                .map(|p| (p.iter().sum::<f64>() - 1.0).abs())
                .fold(0.0, f64::max);
            let in_simplex = samples.iter().all(|p| p.iter().all(|&x| x >= 0.0)) && max_sum_error < 1e-12;
            let vertex_distance: Vec<f64> = (0..=n)
                .map(|j| {
                    samples
                        .iter()
                        .map(|p| {
                            p.iter()
                                .enumerate()
                                .map(|(i, &x)| {
                                    let e = if i == j { 1.0 } else { 0.0 };
                                    (x - e) * (x - e)
                                })
                                .sum::<f64>()
                                .sqrt()
                        })
                        .fold(f64::INFINITY, f64::min)
                })
                .collect();
            #[derive(Serialize)]
            struct Out<'a> {
                n: usize,
                seed: u64,
                in_simplex: bool,
                max_sum_error: f64,
                vertex_distance: &'a [f64],
                samples: &'a [Vec<f64>],
            }
            let table = Table::of_points("p", &samples);
            Ok(Report::new(
                &Out {
                    n,
                    seed: g.seed,
                    in_simplex,
                    max_sum_error,
                    vertex_distance: &vertex_distance,
                    samples: &samples,
                },
                table,
            ))
        }
        Examples::Fiber { lambda, mu, samples } => {
            let lambda = parse::spectrum("lambda", &lambda)?;
            let mu = parse::reals("mu", &mu)?;
            let report = isospectral_diagonal_fiber(&lambda, &mu, samples, g.seed)?;
            #[derive(Serialize)]
            struct Out<'a> {
                lambda: &'a Spectrum,
                seed: u64,
                #[serde(flatten)]
                report: &'a LevelReport<horn_lab_core::hermitian_core::HermitianMatrix>,
            }
            let table = level_table(&report);
            Ok(Report::new(
                &Out {
                    lambda: &lambda,
                    seed: g.seed,
                    report: &report,
                },
                table,
            ))
        }
        Examples::TwoRow { matrix, n } => {
            let m = match matrix {
                Some(path) => read_matrix("matrix", &path)?,
                None => ginibre(2, n, &mut rng_from_seed(g.seed)),
            };
            let (left, right) = two_row_moments(&m)?;
            let level = two_row_level(&m, 1e-10)?;
            #[derive(Serialize)]
            struct Out {
                matrix: RectMatrixJson,
                left_moment: MatrixJson,
                right_moment: Vec<f64>,
                trace_defect: f64,
                grassmannian_level: Option<f64>,
            }
            let mut table = Table::matrices();
            table.push_matrix("left_moment", left.matrix());
            table.push_matrix(
                "right_moment",
                &CMatrix::from_fn(1, right.len(), |_, j| Complex64::new(right[j], 0.0)),
            );
            Ok(Report::new(
                &Out {
                    matrix: RectMatrixJson::from_matrix(&m),
                    left_moment: MatrixJson::from_matrix(left.matrix()),
                    trace_defect: left.trace() + right.iter().sum::<f64>(),
                    right_moment: right,
                    grassmannian_level: level,
                },
                table,
            ))
        }
    }
}
