use std::fs::File;
use std::io::{self, BufWriter};
use std::path::Path;

use rayon::prelude::*;
use selzet::binomial_zeta::{
    log_gamma2, log_multisine, zeta_t as zeta_t_auto, zeta_t_cont, zeta_t_int, zeta_t_int_zderiv, zeta_t_series_detailed,
    zeta_t_zderiv_at_zero, ContinuationRep,
};
use selzet::completion::{fe_deriv_residual, fe_deriv_residual_det, lemfe_residual, z_hat_reflection_report, CompletionPolynomial};
use selzet::complex_core::as_integer;
use selzet::geodesic::{
    check_power_closed, enumerate_classes, enumerate_classes_with_threads, load_eigen, load_spectrum, synthesize_powers, write_spectrum,
    EigenSpectrum, GroupPresentation, LengthSpectrum, Matrix2,
};
use selzet::products::{log_ruelle, log_z2, log_z_classic, log_z_rank, logderiv_z2, TruncationPolicy, ZetaPoint};
use selzet::spectral::{log_det_gamma_spec, log_det_laplacian, log_det_sine_spec, trace_residual, Sign};
use selzet::{suite as battery, Complex, SeriesControl};

use crate::output::{Input, Row, Truncation};
use crate::parse::{complex_list, int_list, real_list};
use crate::{CliError, Common, DetKind, ProductKind, SignArg, ZetaMethod};

type Rows = Result<Vec<Row>, CliError>;

/// Residual tolerance for `fe-check` when `--tol` is absent.
const FE_TOL: f64 = 1e-9;

fn ctrl(common: &Common) -> Result<SeriesControl, CliError> {
    let mut c = SeriesControl::default();
    if let Some(tol) = common.tol {
        c.tail_tolerance = tol;
    }
    c.validate()?;
    Ok(c)
}

fn policy(common: &Common) -> TruncationPolicy {
    let mut p = TruncationPolicy::default();
    if let Some(x) = common.norm_cutoff {
        p.norm_cutoff = x;
    }
    p.n_cutoff = common.n_cutoff;
    if let Some(tol) = common.tol {
        p.tail_tolerance = tol;
    }
    p
}

fn series_truncation(c: &SeriesControl) -> Truncation {
    Truncation {
        max_terms: Some(c.max_terms),
        tail_tolerance: Some(c.tail_tolerance),
        ..Default::default()
    }
}

fn product_truncation(z: &ZetaPoint, pol: &TruncationPolicy) -> Truncation {
    Truncation {
        n_cutoff: Some(z.n_cutoff),
        norm_cutoff: Some(z.norm_cutoff),
        classes_used: Some(z.primes_used),
        tail_tolerance: Some(pol.tail_tolerance),
        ..Default::default()
    }
}

fn grid<A: Copy + Sync, B: Copy + Sync>(a: &[A], b: &[B]) -> Vec<(A, B)> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).collect()
}

/// Evaluates in parallel, keeping input order; the first failing point (in
/// input order) decides the error.
fn evaluate<P: Sync, F>(points: &[P], f: F) -> Rows
where
    F: Fn(&P) -> Result<Vec<Row>, CliError> + Sync + Send,
{
    let parts: Vec<Result<Vec<Row>, CliError>> = points.par_iter().map(f).collect();
    let mut rows = Vec::new();
    for p in parts {
        rows.extend(p?);
    }
    Ok(rows)
}

fn integer(t: Complex, what: &str) -> Result<i64, CliError> {
    as_integer(t, 1e-12).ok_or_else(|| CliError::Usage(format!("{what} must be an integer, got {t}")))
}

pub fn zeta_t(z: &str, s: &str, t: &str, method: ZetaMethod, deriv: bool, common: &Common) -> Rows {
    let c = ctrl(common)?;
    let zs = if deriv { vec![Complex::new(0.0, 0.0)] } else { complex_list(z)? };
    let points: Vec<_> = grid(&grid(&complex_list(s)?, &complex_list(t)?), &zs);
    evaluate(&points, |&((s, t), z)| {
        let input = Input::default().s(s).t(t);
        let row = Row::new("zeta-t", if deriv { input } else { input.z(z) })
            .quantity(if deriv { "zderiv_at_0" } else { "value" })
            .truncation(series_truncation(&c));
        let row = match (method, deriv) {
            (ZetaMethod::Auto, false) => row.value(zeta_t_auto(z, s, t, &c)?),
            (ZetaMethod::Auto, true) => row.value(zeta_t_zderiv_at_zero(s, t, &c)?),
            (ZetaMethod::Series, false) => {
                let v = zeta_t_series_detailed(z, s, t, &c)?;
                let mut tr = series_truncation(&c);
                tr.terms = Some(v.terms);
                row.value(v.value).tail(v.tail_bound).truncation(tr)
            }
            (ZetaMethod::Series, true) => {
                return Err(CliError::Usage("--deriv is not available with --method series".into()));
            }
            (ZetaMethod::Cont, false) => row.value(zeta_t_cont(z, s, t, &c)?),
            (ZetaMethod::Cont, true) => row.value(ContinuationRep::new(s, t, &c)?.zeta_zderiv_at_zero()?),
            (ZetaMethod::Int, false) => row.value(zeta_t_int(z, s, integer(t, "t")?, &c)?),
            (ZetaMethod::Int, true) => row.value(zeta_t_int_zderiv(Complex::new(0.0, 0.0), s, integer(t, "t")?, &c)?),
        };
        Ok(vec![row])
    })
}

pub fn gamma2(s: &str, t: &str, common: &Common) -> Rows {
    let c = ctrl(common)?;
    let points = grid(&complex_list(s)?, &complex_list(t)?);
    evaluate(&points, |&(s, t)| {
        let log = log_gamma2(s, t, &c)?;
        Ok(vec![Row::new("gamma2", Input::default().s(s).t(t))
            .log(log)
            .truncation(series_truncation(&c))])
    })
}

pub fn msin(s: &str, n: &str, common: &Common) -> Rows {
    let c = ctrl(common)?;
    let points = grid(&complex_list(s)?, &int_list(n)?);
    evaluate(&points, |&(s, n)| {
        let log = log_multisine(s, n, &c)?;
        Ok(vec![Row::new("msin", Input::default().s(s).n(n))
            .log(log)
            .truncation(series_truncation(&c))])
    })
}

fn matrix(text: &str) -> Result<Matrix2, CliError> {
    match real_list(text)?.as_slice() {
        &[a, b, c, d] => Ok(Matrix2::new(a, b, c, d)),
        _ => Err(CliError::Usage(format!("generator {text:?} needs four entries a,b,c,d"))),
    }
}

/// Writes the spectrum to `--out` (or stdout) and returns summary rows.
pub fn spectrum_enum(
    generators: &[String],
    genus: u32,
    max_word_len: usize,
    threads: Option<usize>,
    close_powers: bool,
    common: &Common,
) -> Rows {
    let gens = generators.iter().map(|g| matrix(g)).collect::<Result<Vec<_>, _>>()?;
    let group = GroupPresentation::new(gens, genus)?;
    let cutoff = common.norm_cutoff.unwrap_or(f64::INFINITY);
    if close_powers && !cutoff.is_finite() {
        return Err(CliError::Usage("--close-powers needs a finite --norm-cutoff".into()));
    }
    let mut e = match threads {
        Some(n) => enumerate_classes_with_threads(&group, max_word_len, cutoff, n)?,
        None => enumerate_classes(&group, max_word_len, cutoff)?,
    };
    if close_powers {
        e.spectrum = synthesize_powers(&e.spectrum);
    }
    match &common.out {
        Some(path) => write_spectrum(&e.spectrum, BufWriter::new(File::create(path)?))?,
        None => write_spectrum(&e.spectrum, io::stdout().lock())?,
    }
    let trunc = Truncation {
        norm_cutoff: Some(cutoff),
        ..Default::default()
    };
    let row = |q: &str, v: f64| Row::new("spectrum-enum", Input::default()).quantity(q).real(v).truncation(trunc.clone());
    let mut rows = spectrum_rows(&e.spectrum, row);
    rows.push(row("words_examined", e.words_examined as f64));
    if let Some(w) = e.warning {
        for r in &mut rows {
            r.note = Some(w.clone());
        }
    }
    Ok(rows)
}

fn spectrum_rows(spec: &LengthSpectrum, row: impl Fn(&str, f64) -> Row) -> Vec<Row> {
    let mut rows = vec![
        row("entries", spec.entries.len() as f64),
        row("classes", spec.entries.iter().map(|e| e.multiplicity as f64).sum()),
        row("primitive_entries", spec.primitives().count() as f64),
        row("genus", spec.genus as f64),
    ];
    if let Some(n) = spec.min_norm() {
        rows.push(row("min_norm", n));
    }
    if let Some(n) = spec.entries.iter().map(|e| e.norm).reduce(f64::max) {
        rows.push(row("max_norm", n));
    }
    if spec.norm_cutoff.is_finite() {
        let closed = check_power_closed(spec);
        let r = row("power_closed", if closed.is_ok() { 1.0 } else { 0.0 });
        rows.push(match closed {
            Err(e) => r.note(e.to_string()),
            Ok(()) => r,
        });
    }
    rows
}

pub fn spectrum_info(spectrum: Option<&Path>, eigen: Option<&Path>) -> Rows {
    if spectrum.is_none() && eigen.is_none() {
        return Err(CliError::Usage("give --spectrum and/or --eigen".into()));
    }
    let mut rows = Vec::new();
    if let Some(path) = spectrum {
        let spec = load_spectrum(path)?;
        let trunc = Truncation {
            norm_cutoff: Some(spec.norm_cutoff),
            ..Default::default()
        };
        rows.extend(spectrum_rows(&spec, |q, v| {
            Row::new("spectrum-info", Input::default()).quantity(q).real(v).truncation(trunc.clone())
        }));
    }
    if let Some(path) = eigen {
        let eig = load_eigen(path)?;
        let row = |q: &str, v: f64| Row::new("spectrum-info", Input::default()).quantity(q).real(v);
        rows.push(row("eigenvalues", eig.entries.iter().map(|e| e.multiplicity as f64).sum()));
        rows.push(row("distinct_eigenvalues", eig.entries.len() as f64));
        rows.push(row("zero_mode", if eig.has_zero_mode() { 1.0 } else { 0.0 }));
        rows.push(row("eigen_genus", eig.genus as f64));
        if let Some(l) = eig.entries.iter().map(|e| e.lambda).reduce(f64::max) {
            rows.push(row("max_eigenvalue", l));
        }
    }
    Ok(rows)
}

pub fn zprod(kind: ProductKind, s: &str, t: Option<&str>, m: Option<u32>, rank: Option<u32>, spectrum: &Path, common: &Common) -> Rows {
    let spec = load_spectrum(spectrum)?;
    let pol = policy(common);
    let ss = complex_list(s)?;
    let needs_t = matches!(kind, ProductKind::TwoVar | ProductKind::Logderiv);
    let ts = match (needs_t, t) {
        (true, Some(t)) => complex_list(t)?,
        (true, None) => return Err(CliError::Usage("this --kind needs --t".into())),
        (false, _) => vec![Complex::new(0.0, 0.0)],
    };
    let rank = match (kind, rank) {
        (ProductKind::Rank, None) => return Err(CliError::Usage("--kind rank needs --rank".into())),
        (_, r) => r.unwrap_or(0),
    };
    let m = match (kind, m) {
        (ProductKind::Logderiv, None) => return Err(CliError::Usage("--kind logderiv needs --m".into())),
        (_, m) => m.unwrap_or(0),
    };
    let points = grid(&ss, &ts);
    evaluate(&points, |&(s, t)| {
        let input = Input::default().s(s);
        let product = |z: ZetaPoint, input: Input, q: &str| {
            Row::new("zprod", input)
                .quantity(q)
                .log(z.log_value)
                .tail(z.tail_bound)
                .truncation(product_truncation(&z, &pol))
        };
        let row = match kind {
            ProductKind::TwoVar => product(log_z2(s, t, &spec, &pol)?, input.t(t), "two-var"),
            ProductKind::Ruelle => product(log_ruelle(s, &spec, &pol)?, input, "ruelle"),
            ProductKind::Classic => product(log_z_classic(s, &spec, &pol)?, input, "classic"),
            ProductKind::Rank => product(log_z_rank(s, rank, &spec, &pol)?, input.rank(rank), "rank"),
            ProductKind::Logderiv => {
                let v = logderiv_z2(s, t, &spec, &pol, m)?;
                Row::new("zprod", input.t(t).m(m))
                    .quantity("logderiv")
                    .value(v.value)
                    .tail(v.tail_bound)
                    .truncation(Truncation {
                        norm_cutoff: Some(pol.norm_cutoff),
                        classes_used: Some(v.classes_used),
                        ..Default::default()
                    })
            }
        };
        Ok(vec![row])
    })
}

fn sign(s: SignArg) -> Sign {
    match s {
        SignArg::Plus => Sign::Plus,
        SignArg::Minus => Sign::Minus,
    }
}

#[allow(clippy::too_many_arguments)]
pub fn det(kind: DetKind, s: &str, t: Option<&str>, n: Option<&str>, sg: SignArg, zero_mode: bool, eigen: &Path, common: &Common) -> Rows {
    let eig = load_eigen(eigen)?;
    let c = ctrl(common)?;
    let ss = complex_list(s)?;
    match kind {
        DetKind::Gamma => {
            let ts = complex_list(t.ok_or_else(|| CliError::Usage("--kind gamma needs --t".into()))?)?;
            evaluate(&grid(&ss, &ts), |&(s, t)| {
                let log = log_det_gamma_spec(s, t, &eig, sign(sg), &c)?;
                Ok(vec![Row::new("det", Input::default().s(s).t(t))
                    .quantity("gamma")
                    .log(log)
                    .truncation(series_truncation(&c))])
            })
        }
        DetKind::Sine => {
            let ns = int_list(n.ok_or_else(|| CliError::Usage("--kind sine needs --n".into()))?)?;
            evaluate(&grid(&ss, &ns), |&(s, n)| {
                let log = log_det_sine_spec(s, n, &eig, sign(sg), &c)?;
                Ok(vec![Row::new("det", Input::default().s(s).n(n))
                    .quantity("sine")
                    .log(log)
                    .truncation(series_truncation(&c))])
            })
        }
        DetKind::Laplacian => evaluate(&ss, |&s| {
            let log = log_det_laplacian(s, &eig, zero_mode)?;
            let row = Row::new("det", Input::default().s(s)).quantity("laplacian").log(log);
            Ok(vec![if zero_mode { row.note("zero mode included") } else { row }])
        }),
    }
}

fn genus_of(explicit: Option<u32>, spec: Option<&LengthSpectrum>, eig: Option<&EigenSpectrum>) -> u32 {
    explicit.or(spec.map(|s| s.genus)).or(eig.map(|e| e.genus)).unwrap_or(2)
}

pub fn trace_check(s: &str, t: &str, m: u32, spectrum: Option<&Path>, eigen: Option<&Path>, genus: Option<u32>, common: &Common) -> Rows {
    let spec = spectrum.map(load_spectrum).transpose()?;
    let eig = eigen.map(load_eigen).transpose()?;
    let g = genus_of(genus, spec.as_ref(), eig.as_ref());
    let spec = spec.unwrap_or_else(|| LengthSpectrum::empty(g, f64::INFINITY));
    let eig = eig.unwrap_or_else(|| EigenSpectrum::empty(g));
    let pol = policy(common);
    // --tol is the asserted tolerance here, not a series setting
    let c = SeriesControl::default();
    let points = grid(&complex_list(s)?, &complex_list(t)?);
    evaluate(&points, |&(s, t)| {
        let r = trace_residual(s, t, m, &spec, &eig, g, &pol, &c)?;
        let row = Row::new("trace-check", Input::default().s(s).t(t).m(m))
            .quantity("geometric-spectral-identity")
            .value(r.geometric - r.spectral - r.identity)
            .tail(r.geometric_tail + r.spectral_tail)
            .truncation(Truncation {
                norm_cutoff: Some(pol.norm_cutoff),
                max_terms: Some(c.max_terms),
                tail_tolerance: Some(c.tail_tolerance),
                ..Default::default()
            })
            .check(r.residual, common.tol)
            .note(format!(
                "geometric {} spectral {} identity {}",
                crate::parse::format_complex(r.geometric),
                crate::parse::format_complex(r.spectral),
                crate::parse::format_complex(r.identity)
            ));
        Ok(vec![row])
    })
}

#[allow(clippy::too_many_arguments)]
pub fn fe_check(
    n: &str,
    s: &str,
    m: Option<u32>,
    eigen: &Path,
    y: Option<&str>,
    genus: Option<u32>,
    p: Option<&str>,
    common: &Common,
) -> Rows {
    let eig = load_eigen(eigen)?;
    let g = genus.unwrap_or(eig.genus);
    let tol = common.tol.unwrap_or(FE_TOL);
    let c = SeriesControl::default();
    let mut ys: Vec<Complex> = eig.spectral_params().into_iter().map(|(r, _)| r).collect();
    if let Some(y) = y {
        ys.extend(complex_list(y)?);
    }
    let coeffs = match p {
        Some(p) => real_list(p)?,
        None => Vec::new(),
    };
    let ns = int_list(n)?;
    let points = grid(&ns, &complex_list(s)?);
    evaluate(&points, |&(n, s)| {
        let m = m.unwrap_or(2.max(n - 1) as u32);
        let mut rows = Vec::new();
        for &y in &ys {
            rows.push(
                Row::new("fe-check", Input::default().s(s).n(n).y(y))
                    .quantity("reflection_lemma")
                    .check(lemfe_residual(n, s, y)?, Some(tol)),
            );
        }
        let input = Input::default().s(s).n(n).m(m);
        let trunc = series_truncation(&c);
        rows.push(
            Row::new("fe-check", input.clone())
                .quantity("fe_deriv")
                .truncation(trunc.clone())
                .check(fe_deriv_residual(n, s, m, &eig, &c)?, Some(tol)),
        );
        if n >= 2 {
            rows.push(
                Row::new("fe-check", input.clone())
                    .quantity("fe_deriv_det")
                    .truncation(trunc.clone())
                    .check(fe_deriv_residual_det(n, s, m, &eig, &c)?, Some(tol)),
            );
        }
        let poly = CompletionPolynomial::new(Complex::new(n as f64, 0.0), coeffs.clone());
        let refl = z_hat_reflection_report(n, &[s], &poly, &eig, g, &c)?;
        rows.push(
            Row::new("fe-check", Input::default().s(s).n(n))
                .quantity("z_hat_reflection")
                .value(refl[0].difference)
                .truncation(trunc)
                .check(refl[0].residual, None)
                .note("reported only: needs paired surface data"),
        );
        Ok(rows)
    })
}

pub fn suite(filter: &[String], criterion: Option<u8>, list: bool) -> Rows {
    if list {
        return Ok(battery::catalog()
            .into_iter()
            .filter(|c| filter.is_empty() || filter.iter().any(|f| c.id.starts_with(f.as_str())))
            .filter(|c| criterion.is_none() || c.criterion == criterion)
            .map(|c| {
                let mut r = Row::new("suite", Input::default()).quantity(c.id).note(c.description);
                r.tolerance = Some(c.tolerance);
                r
            })
            .collect());
    }
    let outcomes = match criterion {
        Some(k) => battery::run_criterion(k)
            .into_iter()
            .filter(|o| filter.is_empty() || filter.iter().any(|f| o.id.starts_with(f.as_str())))
            .collect(),
        None => {
            let prefixes: Vec<&str> = filter.iter().map(String::as_str).collect();
            battery::run(&prefixes)
        }
    };
    if outcomes.is_empty() {
        return Err(CliError::Usage("no check matches the selection".into()));
    }
    eprintln!("{:<30} {:>4} {:>10} {:>8} {:>9}  result", "check", "crit", "residual", "tol", "ms");
    for o in &outcomes {
        eprintln!(
            "{:<30} {:>4} {:>10.2e} {:>8.0e} {:>9.1}  {}",
            o.id,
            o.criterion.map(|c| c.to_string()).unwrap_or_default(),
            o.residual,
            o.tolerance,
            o.elapsed_ms,
            if o.passed { "pass" } else { "FAIL" }
        );
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    eprintln!("{} checks, {} failed", outcomes.len(), failed);
    // timings stay on stderr so reruns produce identical rows
    Ok(outcomes
        .into_iter()
        .map(|o| {
            let mut r = Row::new("suite", Input::default())
                .quantity(o.id)
                .check(o.residual, Some(o.tolerance))
                .truncation(Truncation::default());
            r.passed = Some(o.passed);
            r.note = o.note;
            r
        })
        .collect())
}
