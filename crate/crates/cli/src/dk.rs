use std::io::BufReader;
use std::time::Instant;

use mwfloat::multiword::default_digits;
use mwfloat::poly::MWPolynomial;
use mwfloat::roots::{chebyshev_coeffs, dk_solve, residual_check, MonicPoly, RootState};
use mwfloat::{Scalar, Variant};
use serde::{Deserialize, Serialize};

use crate::{dispatch, CliError, DkArgs};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DkSummary {
    pub problem: String,
    pub precision: String,
    pub variant: String,
    pub degree: usize,
    pub threads: usize,
    pub iterations: usize,
    pub converged: bool,
    pub wall_seconds: f64,
    pub max_residual: f64,
    pub last_update: f64,
    /// `[re, im]` as decimal strings.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub roots: Vec<[String; 2]>,
}

pub fn solve(args: &DkArgs) -> Result<(), CliError> {
    if args.threads == 0 {
        return Err(CliError::Usage("--threads must be positive".into()));
    }
    if args.max_iter == 0 {
        return Err(CliError::Usage("--max-iter must be positive".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
        .map_err(|e| CliError::Failed(format!("thread pool: {e}")))?;
    let summary = pool.install(|| dispatch!(args.precision, T => run::<T>(args)))?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&summary).expect("plain data"));
    } else {
        for [re, im] in &summary.roots {
            println!("{re} {im}");
        }
        let mut brief = summary.clone();
        brief.roots.clear();
        println!("{}", serde_json::to_string(&brief).expect("plain data"));
    }
    if summary.converged {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "no convergence after {} iterations (last update {:e})",
            summary.iterations, summary.last_update
        )))
    }
}

fn load<T: Scalar>(args: &DkArgs) -> Result<(String, MonicPoly<T>), CliError> {
    let v = Variant::from(args.variant);
    if let Some(n) = args.chebyshev {
        return Ok((format!("chebyshev-{n}"), chebyshev_coeffs(n)?));
    }
    let path = args.poly_file.as_ref().expect("clap requires one source");
    let file = std::fs::File::open(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let p = MWPolynomial::<T>::read_rounded(BufReader::new(file))?;
    if p.degree() == 0 {
        return Err(CliError::Usage("constant polynomial has no roots".into()));
    }
    Ok((path.display().to_string(), MonicPoly::from_poly(&p, v)?))
}

fn run<T: Scalar>(args: &DkArgs) -> Result<DkSummary, CliError> {
    let (problem, q) = load::<T>(args)?;
    let v = Variant::from(args.variant);
    let start = Instant::now();
    let result = dk_solve(&q, v, args.tol, args.max_iter);
    let wall = start.elapsed().as_secs_f64().max(1e-9);
    let state: RootState<T> = match result {
        Ok(s) => s,
        Err(f) => match f.best {
            Some(best) => best,
            None => return Err(CliError::Failed(f.error.to_string())),
        },
    };
    let digits = args.digits.unwrap_or(default_digits(T::WORDS));
    let roots = state
        .z
        .iter()
        .map(|z| [decimal(z.re, digits), decimal(z.im, digits)])
        .collect();
    Ok(DkSummary {
        problem,
        precision: args.precision.name().into(),
        variant: v.short_name().into(),
        degree: q.degree(),
        threads: args.threads,
        iterations: state.iteration,
        converged: state.converged,
        wall_seconds: wall,
        max_residual: residual_check(&q, &state.z),
        last_update: state.last_update,
        roots,
    })
}

fn decimal<T: Scalar>(x: T, digits: usize) -> String {
    let w = x.words();
    if !w[0].is_finite() {
        return format!("{}", w[0]);
    }
    mwfloat::oracle::words_to_rational(w).to_scientific(digits)
}
