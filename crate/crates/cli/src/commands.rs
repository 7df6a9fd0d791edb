use std::path::Path;

use prodgeo_core::sampling::{psd_compatible_perturbation, random_tangent_state};
use prodgeo_core::{
    closest_product, counterexample_factor, decompose, excess_distance_expression, frobenius_distance, is_product,
    maximally_entangled, normality_check, partial_trace, tangent_separable_decomposition, FactorPerturbation,
    HermitianMatrix, SolverOptions, StateClass,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::error::{CliError, Result};
use crate::matrix_file::{read_state, MatrixFile, STATE_TOL};
use crate::report::{Report, Status};

fn path_value(p: &Path) -> Value {
    Value::String(p.display().to_string())
}

pub fn decompose_cmd(file: &Path, tol: f64) -> Result<Report> {
    let q = read_state(file)?;
    let d = decompose(&q);
    let class = prodgeo_core::decomposition::classify_decomposition(&d, tol);
    let norms: Map<String, Value> =
        d.components().iter().map(|(alpha, b)| (alpha.to_string(), json!(b.norm_sqr()))).collect();
    let residual = frobenius_distance(&d.reconstruct(), q.matrix())?;

    let mut r = Report::new("decompose");
    r.input("file", path_value(file)).input("tol", tol);
    r.result("dims", q.dims().to_vec())
        .result("component_norms_sqr", norms)
        .result("tangent_norm_sqr", class.tangent_norm.powi(2))
        .result("normal_norm_sqr", class.normal_norm.powi(2))
        .result("classification", class.class.as_str())
        .result("reconstruction_residual", residual);
    r.diagnostic("state_tol", STATE_TOL);
    Ok(r)
}

pub struct SolveArgs<'a> {
    pub file: &'a Path,
    pub opts: SolverOptions,
    pub out_a: Option<&'a Path>,
    pub out_b: Option<&'a Path>,
}

pub fn closest_product_cmd(args: SolveArgs<'_>) -> Result<Report> {
    let c = read_state(args.file)?;
    if c.num_slots() != 2 {
        return Err(CliError::Format(format!(
            "closest-product needs a bipartite state; file has {} slots",
            c.num_slots()
        )));
    }
    let out = closest_product(&c, &args.opts)?;
    let a = MatrixFile::from_state(&out.a);
    let b = MatrixFile::from_state(&out.b);
    if let Some(p) = args.out_a {
        a.write(p)?;
    }
    if let Some(p) = args.out_b {
        b.write(p)?;
    }

    let mut r = Report::new("closest-product");
    r.input("file", path_value(args.file))
        .input("tol", args.opts.tol)
        .input("max_iter", args.opts.max_iter)
        .input("starts", args.opts.starts)
        .input("seed", args.opts.seed)
        .input("boundary", args.opts.boundary_enabled);
    r.result("a", serde_json::to_value(&a).expect("plain data"))
        .result("b", serde_json::to_value(&b).expect("plain data"))
        .result("distance", out.distance)
        .result("iterations", out.iterations)
        .result("converged", out.converged)
        .result("boundary_corrections", out.boundary_corrections);
    r.diagnostic("objective_trace", out.objective_trace.clone())
        .diagnostic("winning_start", out.start)
        .diagnostic("discarded_starts", out.discarded_starts);
    if !out.converged {
        r.status = Status::NotConverged;
    }
    Ok(r)
}

pub fn distance_cmd(first: &Path, second: &Path) -> Result<Report> {
    let x = read_state(first)?;
    let y = read_state(second)?;
    if x.dims() != y.dims() {
        return Err(CliError::Format(format!("slot dims differ: {:?} vs {:?}", x.dims(), y.dims())));
    }
    let d = frobenius_distance(x.matrix(), y.matrix())?;
    let mut r = Report::new("distance");
    r.input("first", path_value(first)).input("second", path_value(second));
    r.result("distance", d).result("distance_sqr", d * d);
    Ok(r)
}

pub fn check_product_cmd(file: &Path, tol: f64) -> Result<Report> {
    let q = read_state(file)?;
    let marginals: Vec<HermitianMatrix> =
        (0..q.num_slots()).map(|s| partial_trace(&q, &[s])).collect::<prodgeo_core::Result<_>>()?;
    let product = HermitianMatrix::kron_all(&marginals).expect("at least one slot");
    let defect = frobenius_distance(q.matrix(), &product)?;
    let mut r = Report::new("check-product");
    r.input("file", path_value(file)).input("tol", tol);
    r.result("is_product", is_product(&q, tol)).result("product_defect", defect).result("dims", q.dims().to_vec());
    Ok(r)
}

pub fn mes_cmd(n: usize, p: usize, out: &Path) -> Result<Report> {
    let e = maximally_entangled(n, p)?;
    MatrixFile::from_state(&e.state).write(out)?;
    let mut r = Report::new("mes");
    r.input("n", n).input("p", p).input("out", path_value(out));
    r.result("dims", e.state.dims().to_vec()).result("norm_sqr", e.state.matrix().norm_sqr());
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// E − I/N is orthogonal to every tangent direction at I/N.
    Theorem5,
    /// For two slots no product state is closer to E than I/N.
    Theorem6,
    /// For three or more slots some product state is closer to E than I/N.
    Counterexample,
    /// Random tangent-set states get valid separable certificates.
    Separability,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Theorem5 => "theorem5",
            Suite::Theorem6 => "theorem6",
            Suite::Counterexample => "counterexample",
            Suite::Separability => "separability",
        }
    }

    fn default_p(self) -> usize {
        match self {
            Suite::Counterexample => 3,
            _ => 2,
        }
    }

    fn default_samples(self) -> usize {
        match self {
            Suite::Separability => 100,
            _ => 500,
        }
    }
}

pub struct VerifyArgs {
    pub suite: Suite,
    pub n: usize,
    pub p: Option<usize>,
    pub samples: Option<usize>,
    pub seed: u64,
}

struct Checks(Map<String, Value>);

impl Checks {
    fn add(&mut self, name: &str, pass: bool, measured: impl Into<Value>, threshold: impl Into<Value>) {
        self.0
            .insert(name.to_owned(), json!({"pass": pass, "measured": measured.into(), "threshold": threshold.into()}));
    }

    fn all_pass(&self) -> bool {
        self.0.values().all(|v| v["pass"] == Value::Bool(true))
    }
}

pub fn verify_cmd(args: VerifyArgs) -> Result<Report> {
    let p = args.p.unwrap_or(args.suite.default_p());
    let samples = args.samples.unwrap_or(args.suite.default_samples());
    let n = args.n;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut checks = Checks(Map::new());

    match args.suite {
        Suite::Theorem5 => {
            let report = normality_check(n, p, 1e-12)?;
            checks.add("max_tangent_inner", report.normal, report.max_inner, 1e-12);
            let e = maximally_entangled(n, p)?;
            let class = prodgeo_core::classify(&e.state, 1e-9).class;
            checks.add("classification", class == StateClass::NormalSet, class.as_str(), "normal_set");
        }
        Suite::Theorem6 => {
            if p != 2 {
                return Err(CliError::Format(format!("theorem6 is bipartite; got p = {p}")));
            }
            let mut min_value = f64::INFINITY;
            for _ in 0..samples {
                let r1 = psd_compatible_perturbation(n, &mut rng);
                let r2 = psd_compatible_perturbation(n, &mut rng);
                let v = excess_distance_expression(&FactorPerturbation::new(vec![r1, r2])?, n, 2)?;
                min_value = min_value.min(v);
            }
            checks.add("min_excess_distance", min_value >= -1e-12, min_value, -1e-12);
            let e = maximally_entangled(n, 2)?;
            let out = closest_product(&e.state, &SolverOptions::default())?;
            let want = (1.0 - 1.0 / (n * n) as f64).sqrt();
            checks.add("solver_distance_error", (out.distance - want).abs() < 1e-6, (out.distance - want).abs(), 1e-6);
        }
        Suite::Counterexample => {
            let pert = FactorPerturbation::uniform(counterexample_factor(n)?, p)?;
            let expr = excess_distance_expression(&pert, n, p)?;
            checks.add("expression_negative", expr < 0.0, expr, 0.0);
            let e = maximally_entangled(n, p)?;
            let size = e.state.dim();
            let direct = frobenius_distance(e.state.matrix(), &pert.product())?.powi(2)
                - frobenius_distance(e.state.matrix(), &HermitianMatrix::maximally_mixed(size))?.powi(2);
            checks.add("direct_agrees", (direct - expr).abs() < 1e-9, direct, expr);
        }
        Suite::Separability => {
            let dims = vec![n; p];
            let (mut min_w, mut sum_err, mut resid, mut products) = (f64::INFINITY, 0.0f64, 0.0f64, true);
            for _ in 0..samples {
                let q = random_tangent_state(&dims, &mut rng);
                let sep = tangent_separable_decomposition(&q, 1e-9)?;
                min_w = sep.weights.iter().copied().fold(min_w, f64::min);
                sum_err = sum_err.max((sep.weights.iter().sum::<f64>() - 1.0).abs());
                resid = resid.max(sep.residual);
                products &= sep.terms.iter().all(|t| is_product(&t.assemble(), 1e-10));
            }
            checks.add("min_weight", min_w >= 0.0, min_w, 0.0);
            checks.add("weight_sum_error", sum_err < 1e-12, sum_err, 1e-12);
            checks.add("reconstruction_residual", resid < 1e-10, resid, 1e-10);
            checks.add("terms_are_products", products, products, true);
        }
    }

    let pass = checks.all_pass();
    let mut r = Report::new("verify");
    r.input("suite", args.suite.name()).input("n", n).input("p", p).input("seed", args.seed);
    if matches!(args.suite, Suite::Theorem6 | Suite::Separability) {
        r.input("samples", samples);
    }
    r.result("checks", checks.0).result("pass", pass);
    if !pass {
        r.status = Status::Failed;
    }
    Ok(r)
}
