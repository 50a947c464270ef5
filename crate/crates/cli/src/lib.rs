//! `casimir-lab`: batch experiments on central operators of evaluation modules.
//!
//! A run reads an [`ExperimentConfig`], builds the module, drives the engine
//! and produces a [`Report`] that renders either as versioned JSON or as
//! aligned text tables. Rendering is deterministic: identical configs give
//! identical bytes.

pub mod config;

use std::fmt::Write as _;
use std::sync::Arc;

use casimir_core::decomp::{
    anti_diagonal_span, cg_decompose, default_generators, isotypic_report, omega_orbit, operator_orbit,
    operator_spectrum, t_module_decompose,
};
use casimir_core::centralops::centrality_check;
use casimir_core::exactla::{format_scalar, int};
use casimir_core::evalmod::ModuleDescriptor;
use casimir_core::liealg::build_algebra;
use casimir_core::{
    AlgebraKind, Domain, Error, EvaluationModule, EvaluationPoints, Evaluator, ModuleVector, OperatorSpec, Scalar,
    Weight,
};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

pub use config::{parse_config, ConfigError, ExperimentConfig, Seed, WeightSelector};

pub const SCHEMA: &str = "casimir-lab/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Experiment {
    VerifyCentrality,
    HwvDims,
    Orbit,
    CgTable,
    AntiDiagonal,
    GelfandSpectrum,
    TDecompose,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::VerifyCentrality => "verify-centrality",
            Experiment::HwvDims => "hwv-dims",
            Experiment::Orbit => "orbit",
            Experiment::CgTable => "cg-table",
            Experiment::AntiDiagonal => "anti-diagonal",
            Experiment::GelfandSpectrum => "gelfand-spectrum",
            Experiment::TDecompose => "t-decompose",
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("{0}")]
    Engine(#[from] Error),
}

impl RunError {
    /// 1 for a violated identity, 2 for usage errors, 3 when a term budget
    /// is exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Engine(Error::BudgetExceeded { .. }) => 3,
            RunError::Engine(Error::Invariant(_) | Error::DomainMismatch(_)) => 1,
            _ => 2,
        }
    }
}

/// One titled table of the text rendering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(title: impl Into<String>, header: &[&str]) -> Self {
        Table {
            title: title.into(),
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push<I: IntoIterator<Item = S>, S: ToString>(&mut self, row: I) {
        self.rows.push(row.into_iter().map(|c| c.to_string()).collect());
    }

    fn render(&self, out: &mut String) {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String], out: &mut String| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}", w = *w))
                .collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        let _ = writeln!(out, "{}", self.title);
        line(&self.header, out);
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        line(&rule, out);
        for row in &self.rows {
            line(row, out);
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub experiment: Experiment,
    pub module: Option<ModuleDescriptor>,
    pub passed: bool,
    pub results: Value,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Envelope<'a> {
            schema: &'a str,
            experiment: &'a str,
            module: &'a Option<ModuleDescriptor>,
            passed: bool,
            results: &'a Value,
        }
        let doc = Envelope {
            schema: SCHEMA,
            experiment: self.experiment.name(),
            module: &self.module,
            passed: self.passed,
            results: &self.results,
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("report values serialize");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "experiment: {}", self.experiment.name());
        if let Some(m) = &self.module {
            let weights: Vec<String> = m.weights.iter().map(|w| format!("({})", w.join(","))).collect();
            let _ = writeln!(out, "module: {} N={} weights {} points ({})", m.algebra, m.size, weights.join(" ⊗ "), m.points.join(","));
        }
        for t in &self.tables {
            out.push('\n');
            t.render(&mut out);
        }
        let _ = writeln!(out, "\nresult: {}", if self.passed { "PASS" } else { "FAIL" });
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Table => self.to_table(),
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn weight_str(w: &Weight) -> String {
    format!("({})", w.to_strings().join(","))
}

pub fn build_module(cfg: &ExperimentConfig) -> Result<EvaluationModule, RunError> {
    let kind = cfg
        .algebra
        .ok_or_else(|| ConfigError { key: "algebra".into(), message: "required for this experiment".into() })?;
    let size = match (kind, cfg.size) {
        (AlgebraKind::Sl2, None | Some(2)) => 2,
        (AlgebraKind::Sl2, Some(n)) => {
            return Err(ConfigError { key: "size".into(), message: format!("sl2 has size 2, got {n}") }.into())
        }
        (_, Some(n)) => n,
        (_, None) => return Err(ConfigError { key: "size".into(), message: format!("required for {kind}") }.into()),
    };
    if cfg.weights.is_empty() {
        return Err(ConfigError { key: "weights".into(), message: "at least one factor is required".into() }.into());
    }
    let algebra = Arc::new(build_algebra(kind, size)?);
    let weights: Vec<Weight> = cfg.weights.iter().map(|w| Weight(w.clone())).collect();
    let points = match &cfg.points {
        Some(p) => EvaluationPoints::new(p.clone())
            .map_err(|e| ConfigError { key: "points".into(), message: e.to_string() })?,
        None => EvaluationPoints::consecutive(weights.len()),
    };
    Ok(EvaluationModule::from_weights(algebra, &weights, points, cfg.max_power)?)
}

fn all_omegas(n: usize) -> Vec<OperatorSpec> {
    (1..=n).flat_map(|l| (l..=n).map(move |k| OperatorSpec::omega_lk(l, k))).collect()
}

/// Weights picked by the selector; `all` means every dominant weight with a
/// nonzero `V⁺_μ`, highest first.
fn select_weights(module: &EvaluationModule, cfg: &ExperimentConfig) -> Result<Vec<Weight>, RunError> {
    let alg = module.algebra();
    match &cfg.weight {
        WeightSelector::All => {
            let mut out = Vec::new();
            for mu in module.weights().into_iter().rev() {
                if alg.is_dominant_integral(&mu) && !module.highest_weight_space(&mu)?.is_empty() {
                    out.push(mu);
                }
            }
            Ok(out)
        }
        WeightSelector::BelowTop(terms) => {
            let mut mu = module.top_weight();
            for (c, j) in terms {
                let root = alg
                    .simple_root(*j)
                    .map_err(|e| ConfigError { key: "weight".into(), message: e.to_string() })?;
                mu = mu.sub(&root.root.scale(c));
            }
            Ok(vec![mu])
        }
        WeightSelector::Explicit(xs) => {
            if xs.len() != alg.rank() {
                return Err(ConfigError {
                    key: "weight".into(),
                    message: format!("{} components for rank {}", xs.len(), alg.rank()),
                }
                .into());
            }
            Ok(vec![Weight(xs.clone())])
        }
    }
}

fn seed_vector(module: &EvaluationModule, seed: &Seed, j: usize) -> Result<ModuleVector, RunError> {
    let v = match *seed {
        Seed::Top => module.top_vector(),
        Seed::W(k) => module.w_vec(j, k)?,
        Seed::Z(k, l) => module.z_vec(j, k, l)?,
        Seed::A(k, l) => module.a_vec(j, k, l)?,
    };
    if v.is_zero() {
        return Err(ConfigError { key: "seed".into(), message: "seed vector is zero in this module".into() }.into());
    }
    Ok(v)
}

pub fn run_experiment(experiment: Experiment, cfg: &ExperimentConfig) -> Result<Report, RunError> {
    match experiment {
        Experiment::CgTable => return cg_table(cfg),
        Experiment::AntiDiagonal => return anti_diagonal(cfg),
        _ => {}
    }
    let module = build_module(cfg)?;
    let ev = Evaluator::with_budget(&module, cfg.max_terms);
    let (passed, results, tables) = match experiment {
        Experiment::VerifyCentrality => verify_centrality(&ev, cfg)?,
        Experiment::HwvDims => hwv_dims(&module, cfg)?,
        Experiment::Orbit => orbit(&ev, cfg)?,
        Experiment::GelfandSpectrum => gelfand_spectrum(&ev, cfg)?,
        Experiment::TDecompose => t_decompose(&ev, cfg)?,
        Experiment::CgTable | Experiment::AntiDiagonal => unreachable!(),
    };
    Ok(Report { experiment, module: Some(module.descriptor()), passed, results, tables })
}

type Outcome = (bool, Value, Vec<Table>);

fn verify_centrality(ev: &Evaluator<'_>, cfg: &ExperimentConfig) -> Result<Outcome, RunError> {
    let ops = if cfg.operators.is_empty() { all_omegas(ev.module().factor_count()) } else { cfg.operators.clone() };
    let mut table = Table::new(
        "commutators with the diagonal action",
        &["operator", "generators", "vectors", "max |numerator|", "central"],
    );
    let mut rows = Vec::new();
    let mut passed = true;
    for op in &ops {
        let r = centrality_check(ev, op, &Domain::Whole)?;
        passed &= r.is_central();
        table.push([
            op.to_string(),
            r.generators_checked.to_string(),
            r.vectors_checked.to_string(),
            r.max_abs_numerator.to_string(),
            yes(r.is_central()).to_string(),
        ]);
        rows.push(json!({ "operator": op.to_string(), "report": to_value(&r), "central": r.is_central() }));
    }
    Ok((passed, json!({ "operators": rows }), vec![table]))
}

fn hwv_dims(module: &EvaluationModule, cfg: &ExperimentConfig) -> Result<Outcome, RunError> {
    let alg = module.algebra();
    let mut accounted = Scalar::from_integer(0.into());
    for mu in module.weights() {
        if alg.is_dominant_integral(&mu) {
            let d = module.highest_weight_space(&mu)?.len();
            accounted += int(d as i64) * alg.weyl_dimension(&mu);
        }
    }
    let accounting = accounted == int(module.dim() as i64);
    let mut table = Table::new("highest weight spaces", &["weight", "dim V_mu", "dim V+_mu", "dim V(mu)"]);
    let mut rows = Vec::new();
    for mu in select_weights(module, cfg)? {
        let space = module.weight_space(&mu).dim();
        let hw = if alg.is_dominant_integral(&mu) { module.highest_weight_space(&mu)?.len() } else { 0 };
        let irrep = if alg.is_dominant_integral(&mu) { format_scalar(&alg.weyl_dimension(&mu)) } else { "-".into() };
        table.push([weight_str(&mu), space.to_string(), hw.to_string(), irrep.clone()]);
        rows.push(json!({ "weight": mu.to_strings(), "weight_space_dim": space, "hw_dim": hw, "irrep_dim": irrep }));
    }
    let mut summary = Table::new("dimension accounting", &["module dim", "sum dim V+_mu dim V(mu)", "holds"]);
    summary.push([module.dim().to_string(), format_scalar(&accounted), yes(accounting).to_string()]);
    let results = json!({
        "weights": rows,
        "module_dim": module.dim(),
        "accounted_dim": format_scalar(&accounted),
        "dimension_accounted": accounting,
    });
    Ok((accounting, results, vec![table, summary]))
}

fn orbit(ev: &Evaluator<'_>, cfg: &ExperimentConfig) -> Result<Outcome, RunError> {
    let module = ev.module();
    let seed = cfg.seed.clone().unwrap_or(Seed::Z(1, 2));
    let v = seed_vector(module, &seed, cfg.root)?;
    let first = v.entries().next().map(|(i, _)| i).expect("seed is nonzero");
    let mu = module.weight_of_index(first);
    let report = if cfg.operators.is_empty() {
        omega_orbit(ev, &v, &mu)?
    } else {
        let domain = Domain::Weight(mu.clone());
        let gens = cfg.operators.iter().map(|s| ev.materialize(s, &domain)).collect::<Result<Vec<_>, _>>()?;
        operator_orbit(module, &v, &gens, &module.weight_space(&mu))?
    };
    let round_dims: Vec<String> = report.round_dims.iter().map(|d| d.to_string()).collect();
    let mut table = Table::new(
        "orbit closure",
        &["weight", "generators", "round dims", "span", "dim V+_mu", "dim V_mu", "spans V+_mu"],
    );
    table.push([
        weight_str(&mu),
        report.generators.len().to_string(),
        round_dims.join(","),
        report.span_dim.to_string(),
        report.hw_dim.to_string(),
        report.target_dim.to_string(),
        yes(report.spans_hw).to_string(),
    ]);
    Ok((report.spans_hw, to_value(&report), vec![table]))
}

fn cg_table(cfg: &ExperimentConfig) -> Result<Report, RunError> {
    let (m, n) = cfg
        .cg
        .ok_or_else(|| ConfigError { key: "cg".into(), message: "required for cg-table".into() })?;
    let table_data = cg_decompose(m, n);
    // cross-check against dim V⁺_w in the actual tensor product
    let algebra = Arc::new(build_algebra(AlgebraKind::Sl2, 2)?);
    let module = EvaluationModule::from_weights(
        algebra,
        &[Weight(vec![int(m as i64)]), Weight(vec![int(n as i64)])],
        EvaluationPoints::consecutive(2),
        cfg.max_power,
    )?;
    let mut table = Table::new(format!("V({m}) ⊗ V({n})"), &["component", "dim", "dim V+ in product"]);
    let mut rows = Vec::new();
    let mut passed = table_data.dimension_conserved();
    for &w in &table_data.components {
        let hw = module.highest_weight_space(&Weight(vec![int(w as i64)]))?.len();
        passed &= hw == 1;
        table.push([format!("V({w})"), (w + 1).to_string(), hw.to_string()]);
        rows.push(json!({ "highest_weight": w, "dim": w + 1, "hw_dim": hw }));
    }
    let results = json!({
        "m": m,
        "n": n,
        "components": rows,
        "dimension_conserved": table_data.dimension_conserved(),
    });
    Ok(Report { experiment: Experiment::CgTable, module: Some(module.descriptor()), passed, results, tables: vec![table] })
}

fn anti_diagonal(cfg: &ExperimentConfig) -> Result<Report, RunError> {
    let (m, n, k) = cfg
        .triple
        .ok_or_else(|| ConfigError { key: "triple".into(), message: "required for anti-diagonal".into() })?;
    let report = anti_diagonal_span(m, n, k)
        .map_err(|e| ConfigError { key: "triple".into(), message: e.to_string() })?;
    let mut rows = Table::new("anti-diagonal rows", &["l", "weight", "d_l", "rank", "rank +1", "leading", "dim V+", "ok"]);
    for r in &report.rows {
        rows.push([
            r.l.to_string(),
            r.weight.to_string(),
            r.d_l.to_string(),
            r.rank.to_string(),
            r.rank_with_extra.to_string(),
            yes(r.leading_terms).to_string(),
            r.hw_dim.to_string(),
            yes(r.ok).to_string(),
        ]);
    }
    let mut last = Table::new("last rows", &["i", "weight", "expected", "rank", "rank +1", "dim V+", "ok"]);
    for r in &report.last_row {
        last.push([
            r.i.to_string(),
            r.weight.to_string(),
            r.expected.to_string(),
            r.rank.to_string(),
            r.rank_with_extra.to_string(),
            r.hw_dim.to_string(),
            yes(r.ok).to_string(),
        ]);
    }
    let join = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let mut summary = Table::new("totals", &["d'", "sum d'", "hw counts", "total hw", "recursion nonzero", "hw valid"]);
    summary.push([
        join(&report.d_prime),
        report.sum_d_prime.to_string(),
        join(&report.hw_counts),
        report.total_hw.to_string(),
        yes(report.coefficients_nonzero).to_string(),
        yes(report.hw_vectors_valid).to_string(),
    ]);
    Ok(Report {
        experiment: Experiment::AntiDiagonal,
        module: None,
        passed: report.passed,
        results: to_value(&report),
        tables: vec![rows, last, summary],
    })
}

fn gelfand_spectrum(ev: &Evaluator<'_>, cfg: &ExperimentConfig) -> Result<Outcome, RunError> {
    let module = ev.module();
    let ops = if cfg.operators.is_empty() { default_generators(module, 2) } else { cfg.operators.clone() };
    let mut table = Table::new("spectra on V+_mu", &["operator", "weight", "dim V+", "eigenvalues", "rational", "central"]);
    let mut rows = Vec::new();
    let mut passed = true;
    for mu in select_weights(module, cfg)? {
        for op in &ops {
            let s = operator_spectrum(ev, op, &mu)?;
            passed &= s.central;
            let eig: Vec<String> = s
                .eigenvalues
                .iter()
                .map(|e| if e.multiplicity == 1 { e.value.clone() } else { format!("{}^{}", e.value, e.multiplicity) })
                .collect();
            table.push([
                s.operator.clone(),
                weight_str(&mu),
                s.hw_dim.to_string(),
                eig.join(" "),
                yes(s.fully_rational).to_string(),
                yes(s.central).to_string(),
            ]);
            rows.push(to_value(&s));
        }
    }
    Ok((passed, json!({ "spectra": rows }), vec![table]))
}

fn t_decompose(ev: &Evaluator<'_>, cfg: &ExperimentConfig) -> Result<Outcome, RunError> {
    let module = ev.module();
    let gens = if cfg.operators.is_empty() {
        default_generators(module, cfg.max_rank.unwrap_or(module.algebra().size()))
    } else {
        cfg.operators.clone()
    };
    let mut table = Table::new(
        "orthogonal splitting of V+_mu",
        &["weight", "dim V+", "dim V(mu)", "blocks", "irreducible", "orthogonal", "fills", "gram pd"],
    );
    let (passed, decomps, results) = match cfg.weight {
        WeightSelector::All => {
            let r = isotypic_report(ev, &gens)?;
            let v = to_value(&r);
            (r.certified, r.weights, v)
        }
        _ => {
            let mut out = Vec::new();
            for mu in select_weights(module, cfg)? {
                out.push(t_module_decompose(ev, &mu, &gens)?);
            }
            let passed = out.iter().all(|d| d.certified());
            let v = json!({ "generators": gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(), "weights": to_value(&out), "certified": passed });
            (passed, out, v)
        }
    };
    for d in &decomps {
        let blocks: Vec<String> = d.blocks.iter().map(|b| b.dim.to_string()).collect();
        table.push([
            format!("({})", d.weight.join(",")),
            d.multiplicity.to_string(),
            d.irrep_dim.clone(),
            blocks.join("+"),
            yes(d.blocks.iter().all(|b| b.certified_irreducible)).to_string(),
            yes(d.pairwise_orthogonal).to_string(),
            yes(d.fills_space).to_string(),
            yes(d.blocks.iter().all(|b| b.gram_positive_definite)).to_string(),
        ]);
    }
    Ok((passed, results, vec![table]))
}
