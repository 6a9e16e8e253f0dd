use std::time::Instant;

use serde::{Deserialize, Serialize};
use tropfm::gen::{random_samples, seeded_rng};
use tropfm::io::point_to_json;
use tropfm::scalar::{format_rational, to_decimal_string};
use tropfm::{
    canonicalize, exact_frechet, find_certificate, fm_polytrope, greedy_frechet, trop_dist, verify_certificate,
    CertificateJson, ExactOptions, FrechetResult, FrechetResultJson, GreedyOptions, MatrixJson, PolytropeMatrix,
    Rational, SampleSet, Scalar, SolveError, TorusPoint,
};

use crate::error::{CliError, EXIT_BUDGET};
use crate::input::InputDocument;

/// Text for stdout plus the exit status.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn distance(doc: &InputDocument, a: usize, b: usize) -> Result<Outcome, CliError> {
    let pts = doc.points.points();
    let get = |i: usize| {
        pts.get(i).ok_or(CliError::Lib(tropfm::Error::IndexOutOfRange {
            index: i,
            len: pts.len(),
        }))
    };
    let d = trop_dist(get(a)?, get(b)?)?;
    Ok(Outcome::ok(format!("{}\n{}\n", format_rational(&d), to_decimal_string(&d))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Greedy,
    Exact,
}

#[derive(Debug, Clone)]
pub struct MeanArgs {
    pub mode: Mode,
    pub tol: Option<Rational>,
    pub max_iter: Option<usize>,
    pub budget: Option<u64>,
    /// Run greedy iterations in exact arithmetic instead of `f64`.
    pub rational: bool,
}

fn greedy_options(doc: &InputDocument, tol: Option<Rational>, max_iter: Option<usize>) -> Result<GreedyOptions, CliError> {
    let mut opts = GreedyOptions::default();
    if let Some(t) = tol.or(doc.options.tol()?) {
        opts.tol = t;
    }
    if let Some(k) = max_iter.or(doc.options.max_iter) {
        opts.max_iter = k;
    }
    Ok(opts)
}

/// Exact image of a floating point iterate.
fn exact_point(x: &[f64]) -> Result<TorusPoint, CliError> {
    let coords = x
        .iter()
        .map(|v| {
            v.to_rational()
                .ok_or_else(|| CliError::Usage(format!("greedy produced a non-finite coordinate {v}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(canonicalize(coords)?)
}

/// Greedy mean in `f64`, converted exactly.
pub fn float_greedy_mean(samples: &SampleSet, opts: &GreedyOptions) -> Result<(TorusPoint, Vec<f64>), CliError> {
    let approx = samples.map_scalar(f64::from_rational);
    let r = greedy_frechet(&approx, opts)?;
    Ok((exact_point(r.point.coords())?, r.trace))
}

pub fn mean(doc: &InputDocument, args: &MeanArgs) -> Result<Outcome, CliError> {
    let greedy = greedy_options(doc, args.tol.clone(), args.max_iter)?;
    match args.mode {
        Mode::Greedy => {
            let point = if args.rational {
                greedy_frechet(&doc.points, &greedy)?.point
            } else {
                float_greedy_mean(&doc.points, &greedy)?.0
            };
            let result = FrechetResult::from_mean(&doc.points, point)?;
            Ok(Outcome::ok(to_json(&FrechetResultJson::new(&result)?)?))
        }
        Mode::Exact => {
            let mut opts = ExactOptions {
                greedy,
                ..Default::default()
            };
            if let Some(b) = args.budget.or(doc.options.budget) {
                opts.budget = b;
            }
            match exact_frechet(&doc.points, &opts) {
                Ok(r) => Ok(Outcome::ok(to_json(&FrechetResultJson::new(&r)?)?)),
                Err(SolveError::BudgetExceeded(best)) => {
                    eprintln!("warning: no certified optimum within budget {}; best point found is printed", opts.budget);
                    Ok(Outcome {
                        stdout: to_json(&FrechetResultJson::new(&best)?)?,
                        code: EXIT_BUDGET,
                    })
                }
                Err(SolveError::Input(e)) => Err(e.into()),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytropeJson {
    pub matrix: MatrixJson,
    pub starred: MatrixJson,
    pub tropical_vertices: Vec<Vec<String>>,
    pub pseudovertices: Vec<Vec<String>>,
    /// Only for `n = 3`: pseudovertices as `(x₂ − x₁, x₃ − x₁)`, counterclockwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polygon: Option<Vec<[String; 2]>>,
}

pub enum PolytropeSource<'a> {
    Matrix(PolytropeMatrix),
    Samples {
        doc: &'a InputDocument,
        mean: Option<Vec<Rational>>,
        trust: bool,
    },
}

pub fn polytrope(source: PolytropeSource<'_>) -> Result<Outcome, CliError> {
    let matrix = match source {
        PolytropeSource::Matrix(m) => m,
        PolytropeSource::Samples { doc, mean, trust } => {
            let mean = match mean {
                Some(coords) => {
                    let x = canonicalize(coords)?;
                    if !trust {
                        let cert = find_certificate(&doc.points, &x)?;
                        if !verify_certificate(&doc.points, &cert)? {
                            return Err(tropfm::Error::NotOptimal.into());
                        }
                    }
                    x
                }
                None => match exact_frechet(&doc.points, &ExactOptions::default()) {
                    Ok(r) => r.mean,
                    Err(SolveError::BudgetExceeded(_)) => {
                        return Err(tropfm::Error::BudgetExceeded("pass --mean to skip the search".into()).into())
                    }
                    Err(SolveError::Input(e)) => return Err(e.into()),
                },
            };
            fm_polytrope(&doc.points, &mean)?
        }
    };
    let starred = matrix.kleene_star()?;
    let pseudovertices = matrix.pseudovertices()?;
    let polygon = (matrix.dim() == 3).then(|| polygon(&pseudovertices));
    let out = PolytropeJson {
        matrix: MatrixJson::from(&matrix),
        starred: MatrixJson::from(&starred),
        tropical_vertices: matrix.tropical_vertices()?.iter().map(point_to_json).collect(),
        pseudovertices: pseudovertices.iter().map(point_to_json).collect(),
        polygon,
    };
    Ok(Outcome::ok(to_json(&out)?))
}

/// Planar coordinates sorted counterclockwise around their centroid,
/// starting from the smallest angle in `[0, 2π)`.
fn polygon(points: &[TorusPoint]) -> Vec<[String; 2]> {
    let mut pts: Vec<(Rational, Rational)> = points
        .iter()
        .map(|p| {
            let c = p.coords();
            (c[1].clone() - c[0].clone(), c[2].clone() - c[0].clone())
        })
        .collect();
    pts.sort();
    pts.dedup();
    let k = Rational::from_integer(pts.len().into());
    let cx = pts.iter().map(|p| p.0.clone()).sum::<Rational>() / k.clone();
    let cy = pts.iter().map(|p| p.1.clone()).sum::<Rational>() / k;
    let rel = |p: &(Rational, Rational)| (p.0.clone() - cx.clone(), p.1.clone() - cy.clone());
    let half = |(x, y): &(Rational, Rational)| {
        let zero = Rational::default();
        if *y > zero || (*y == zero && *x >= zero) {
            0
        } else {
            1
        }
    };
    pts.sort_by(|a, b| {
        let (ra, rb) = (rel(a), rel(b));
        half(&ra).cmp(&half(&rb)).then_with(|| {
            let cross = ra.0.clone() * rb.1.clone() - ra.1.clone() * rb.0.clone();
            cross.cmp(&Rational::default()).reverse()
        })
    });
    pts.into_iter()
        .map(|(x, y)| [format_rational(&x), format_rational(&y)])
        .collect()
}

pub fn certify(doc: &InputDocument, point: Vec<Rational>) -> Result<Outcome, CliError> {
    let x = canonicalize(point)?;
    let cert = find_certificate(&doc.points, &x)?;
    if !verify_certificate(&doc.points, &cert)? {
        return Err(tropfm::Error::NotOptimal.into());
    }
    Ok(Outcome::ok(to_json(&CertificateJson::from(&cert))?))
}

#[derive(Debug, Clone)]
pub struct BenchArgs {
    pub dims: Vec<usize>,
    pub multipliers: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
    pub max_iter: usize,
    pub timing: bool,
    pub trace: bool,
}

/// Timing table with columns `n,m,rep,mean_time_ms,objective`.
///
/// Each row draws its own sample from the ChaCha8 stream numbered by
/// `(n, m, rep)` under `seed`, so rows do not depend on the rest of the
/// grid. The timed part is the greedy mean plus the polytrope of means and
/// its tropical vertices. With `trace`, every accepted greedy step of a run
/// is written first as a row with an empty time column.
pub fn bench(args: &BenchArgs) -> Result<Outcome, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "m", "rep", "mean_time_ms", "objective"])?;
    let opts = GreedyOptions {
        max_iter: args.max_iter,
        trace: args.trace,
        ..Default::default()
    };
    for &n in &args.dims {
        if n < 2 {
            return Err(CliError::Usage(format!("dimension {n} is below 2")));
        }
        for &mult in &args.multipliers {
            let m = n * mult;
            if m == 0 {
                return Err(CliError::Usage("sample size must be positive".into()));
            }
            for rep in 0..args.reps {
                let mut rng = seeded_rng(args.seed);
                rng.set_stream(((n as u64) << 40) | ((m as u64) << 20) | rep as u64);
                let samples = random_samples(&mut rng, n, m);
                let approx = samples.map_scalar(f64::from_rational);

                let start = Instant::now();
                let r = greedy_frechet(&approx, &opts)?;
                let mean = exact_point(r.point.coords())?;
                let q = fm_polytrope(&samples, &mean)?;
                std::hint::black_box(q.tropical_vertices()?);
                let elapsed = start.elapsed();

                let (n_s, m_s, rep_s) = (n.to_string(), m.to_string(), rep.to_string());
                for v in &r.trace {
                    w.write_record([n_s.as_str(), &m_s, &rep_s, "", &v.to_string()])?;
                }
                let time = if args.timing {
                    format!("{:.3}", elapsed.as_secs_f64() * 1e3)
                } else {
                    String::new()
                };
                w.write_record([n_s, m_s, rep_s, time, r.value.to_string()])?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(Outcome::ok(String::from_utf8(bytes).expect("csv output is utf-8")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use tropfm::scalar::int;

    fn pt(v: &[i64]) -> TorusPoint {
        TorusPoint::new(v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn polygon_is_counterclockwise() {
        // a square given in scrambled order
        let pts = [pt(&[0, 1, 1]), pt(&[0, 0, 0]), pt(&[0, 1, 0]), pt(&[0, 0, 1])];
        let poly = polygon(&pts);
        let coords: Vec<(String, String)> = poly.into_iter().map(|[a, b]| (a, b)).collect();
        let s = |a: &str, b: &str| (a.to_string(), b.to_string());
        assert_eq!(coords, vec![s("1", "1"), s("0", "1"), s("0", "0"), s("1", "0")]);
    }

    #[test]
    fn polygon_of_a_point_and_a_segment() {
        assert_eq!(polygon(&[pt(&[0, 0, -1])]).len(), 1);
        assert_eq!(polygon(&[pt(&[0, 0, 1]), pt(&[0, 1, 1]), pt(&[0, 0, 1])]).len(), 2);
    }
}
