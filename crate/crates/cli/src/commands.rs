use std::fmt::Write;
use std::fs;
use std::path::Path;

use borel_orbits::linalg::{ASMatrix, Matrix};
use borel_orbits::poset::{a_parameter, build_poset, dim_by_a, dim_by_secfm, fixed_point_sum};
use borel_orbits::rank_control::rank_control;
use borel_orbits::verify::{run_checks, Check, VerifyConfig};
use borel_orbits::{canonicalize as reduce, Involution};

use crate::{Failure, Format};

pub fn canonicalize(path: &Path) -> Result<String, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let a = ASMatrix::new(Matrix::parse_square(&text)?)?;
    let c = reduce(&a);
    let rc = rank_control(a.matrix())?;
    let mut out = String::new();
    writeln!(out, "involution: {}", c.involution()).unwrap();
    writeln!(out, "monomial:\n{}", c.monomial.to_matrix()).unwrap();
    writeln!(out, "witness:\n{}", c.witness.matrix()).unwrap();
    write!(out, "rank_control:\n{rc}").unwrap();
    Ok(out)
}

pub fn poset(n: usize, format: Format, out: Option<&Path>) -> Result<String, Failure> {
    if n == 0 {
        return Err(Failure::Usage("n must be positive".into()));
    }
    let poset = build_poset(n);
    let rendered = match format {
        Format::Text => poset.to_text(),
        Format::Json => poset.to_json(),
        Format::Dot => poset.to_dot(),
    };
    match out {
        Some(path) => {
            fs::write(path, &rendered)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(rendered),
    }
}

pub fn verify(
    n: usize,
    checks: Option<Vec<String>>,
    seed: u64,
    trials: usize,
    jobs: Option<usize>,
) -> Result<String, Failure> {
    let checks: Vec<Check> = match checks {
        None => Check::ALL.to_vec(),
        Some(names) => names
            .iter()
            .map(|name| name.trim().parse::<Check>())
            .collect::<Result<_, _>>()?,
    };
    let config = VerifyConfig { n, seed, trials };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = jobs {
        builder = builder.num_threads(jobs);
    }
    let pool = builder
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start worker pool: {e}")))?;
    let reports = pool.install(|| run_checks(&checks, &config))?;
    let mut out = String::new();
    for report in &reports {
        writeln!(out, "{report}").unwrap();
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    writeln!(
        out,
        "{} of {} checks passed (n={n}, seed={seed}, trials={trials})",
        reports.len() - failed,
        reports.len()
    )
    .unwrap();
    if failed > 0 {
        Err(Failure::Verification(out))
    } else {
        Ok(out)
    }
}

pub fn rank(n: usize, text: &str) -> Result<String, Failure> {
    if n == 0 {
        return Err(Failure::Usage("n must be positive".into()));
    }
    let p = Involution::parse(text, n)?;
    let a = a_parameter(&p);
    let inversions = p.canonic_word().inversions();
    let fixed = fixed_point_sum(&p);
    let (by_a, by_words) = (dim_by_a(&p), dim_by_secfm(&p));
    let mut out = String::new();
    writeln!(out, "involution: {p} (n={n})").unwrap();
    writeln!(out, "A: {a}").unwrap();
    writeln!(out, "inversions: {inversions}").unwrap();
    writeln!(out, "fixed-point sum: {fixed}").unwrap();
    writeln!(out, "dim (n^2-n)/2 - A: {by_a}").unwrap();
    writeln!(out, "dim (n^2-n)/2 - (inversions + fixed-point sum): {by_words}").unwrap();
    if by_a != by_words {
        writeln!(out, "MISMATCH: the two rank formulas disagree").unwrap();
        return Err(Failure::Verification(out));
    }
    Ok(out)
}
