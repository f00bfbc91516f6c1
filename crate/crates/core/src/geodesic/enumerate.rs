use rayon::prelude::*;

use super::{GeodesicEntry, GroupPresentation, LengthSpectrum, Matrix2};
use crate::error::{Error, Result};

const NORM_TOL: f64 = 1e-9;
// |trace| within this of 2 counts as non-hyperbolic (e.g. g·g^{-1} rounding)
const TRACE_TOL: f64 = 1e-9;

/// `N(γ) = ((|tr| + sqrt(tr² - 4)) / 2)²`, the squared larger eigenvalue.
pub fn class_norm(m: &Matrix2) -> Result<f64> {
    let tr = m.trace().abs();
    if tr <= 2.0 {
        return Err(Error::NonHyperbolic { trace: m.trace() });
    }
    let root = ((tr - 2.0) * (tr + 2.0)).sqrt();
    let ev = 0.5 * (tr + root);
    Ok(ev * ev)
}

/// Result of an enumeration run.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub spectrum: LengthSpectrum,
    /// Set when some class below the cutoff provably needs longer words.
    pub warning: Option<String>,
    /// Cyclically reduced rotation-class representatives examined.
    pub words_examined: u64,
}

#[derive(Debug, Clone, Copy)]
struct Record {
    norm: f64,
    power: u32,
    primitive_norm: f64,
}

fn inverse_letter(x: usize) -> usize {
    x ^ 1
}

// word is lexicographically minimal among its rotations
fn is_min_rotation(w: &[usize]) -> bool {
    let n = w.len();
    for r in 1..n {
        for i in 0..n {
            let x = w[(r + i) % n];
            if x < w[i] {
                return false;
            }
            if x > w[i] {
                break;
            }
        }
    }
    true
}

fn period(w: &[usize]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p]))
        .unwrap_or(n)
}

struct Walker<'a> {
    letters: &'a [Matrix2],
    max_len: usize,
    cutoff: f64,
    word: Vec<usize>,
    prefix: Vec<Matrix2>,
    records: Vec<Record>,
    examined: u64,
}

impl Walker<'_> {
    fn visit(&mut self) -> Result<()> {
        let len = self.word.len();
        let cyclically_reduced = len == 1 || self.word[len - 1] != inverse_letter(self.word[0]);
        if cyclically_reduced && is_min_rotation(&self.word) {
            self.examined += 1;
            let m = self.prefix[len];
            if m.trace().abs() > 2.0 + TRACE_TOL {
                let norm = class_norm(&m)?;
                if norm <= self.cutoff * (1.0 + NORM_TOL) {
                    let p = period(&self.word);
                    let primitive_norm = if p == len { norm } else { class_norm(&self.prefix[p])? };
                    self.records.push(Record {
                        norm,
                        power: (len / p) as u32,
                        primitive_norm,
                    });
                }
            }
        }
        if len == self.max_len {
            return Ok(());
        }
        let last = self.word[len - 1];
        for x in 0..self.letters.len() {
            if x == inverse_letter(last) {
                continue;
            }
            let next = self.prefix[len].mul(&self.letters[x]).renormalized();
            self.word.push(x);
            self.prefix.push(next);
            self.visit()?;
            self.word.pop();
            self.prefix.pop();
        }
        Ok(())
    }
}

fn aggregate(mut records: Vec<Record>) -> Vec<GeodesicEntry> {
    records.sort_by(|a, b| a.norm.total_cmp(&b.norm).then(a.power.cmp(&b.power)));
    let mut groups: Vec<(Record, u64)> = Vec::new();
    for r in records {
        let joined = groups
            .iter_mut()
            .rev()
            .take_while(|(g, _)| r.norm <= g.norm * (1.0 + NORM_TOL))
            .find(|(g, _)| g.power == r.power);
        match joined {
            Some((_, count)) => *count += 1,
            None => groups.push((r, 1)),
        }
    }
    let mut entries: Vec<GeodesicEntry> = groups
        .into_iter()
        .map(|(r, multiplicity)| GeodesicEntry {
            norm: r.norm,
            length: r.norm.ln(),
            multiplicity,
            primitive: r.power == 1,
            primitive_norm: r.primitive_norm,
            power: r.power,
        })
        .collect();
    entries.sort_by(|a, b| a.norm.total_cmp(&b.norm).then(a.power.cmp(&b.power)));
    entries
}

fn completeness_warning(g: &GroupPresentation, max_word_len: usize, norm_cutoff: f64) -> Result<Option<String>> {
    let mut shortest = f64::INFINITY;
    for m in g.generators() {
        shortest = shortest.min(class_norm(m)?.ln());
    }
    if shortest.is_finite() && (max_word_len as f64 + 1.0) * shortest <= norm_cutoff.ln() {
        return Ok(Some(format!(
            "max_word_len {max_word_len} is too short: the {}-th power of the shortest generator \
             (norm {:.6e}) lies below the cutoff {norm_cutoff:.6e}",
            max_word_len + 1,
            (shortest * (max_word_len as f64 + 1.0)).exp()
        )));
    }
    Ok(None)
}

/// Hyperbolic conjugacy classes of the free group on the generators,
/// represented by cyclically reduced words up to rotation, with norm at most
/// `norm_cutoff`. Classes with equal norm (relative 1e-9) and equal word
/// power are merged into one entry. Words are split by first letter across
/// the rayon pool; the output does not depend on the thread count.
pub fn enumerate_classes(g: &GroupPresentation, max_word_len: usize, norm_cutoff: f64) -> Result<Enumeration> {
    if max_word_len == 0 {
        return Err(Error::Invariant("max_word_len must be at least 1".into()));
    }
    if !(norm_cutoff > 1.0) {
        return Err(Error::Invariant(format!("norm cutoff {norm_cutoff} must exceed 1")));
    }
    let letters: Vec<Matrix2> = g
        .generators()
        .iter()
        .flat_map(|m| [m.renormalized(), m.inverse().renormalized()])
        .collect();
    let parts: Vec<Result<(Vec<Record>, u64)>> = (0..letters.len())
        .into_par_iter()
        .map(|first| {
            let mut w = Walker {
                letters: &letters,
                max_len: max_word_len,
                cutoff: norm_cutoff,
                word: vec![first],
                prefix: vec![Matrix2::IDENTITY, letters[first]],
                records: Vec::new(),
                examined: 0,
            };
            w.visit()?;
            Ok((w.records, w.examined))
        })
        .collect();
    let mut records = Vec::new();
    let mut examined = 0;
    for p in parts {
        let (r, n) = p?;
        records.extend(r);
        examined += n;
    }
    Ok(Enumeration {
        spectrum: LengthSpectrum {
            entries: aggregate(records),
            genus: g.genus(),
            norm_cutoff,
        },
        warning: completeness_warning(g, max_word_len, norm_cutoff)?,
        words_examined: examined,
    })
}

/// [`enumerate_classes`] on a dedicated pool of `threads` workers.
pub fn enumerate_classes_with_threads(
    g: &GroupPresentation,
    max_word_len: usize,
    norm_cutoff: f64,
    threads: usize,
) -> Result<Enumeration> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Invariant(format!("cannot build thread pool: {e}")))?;
    pool.install(|| enumerate_classes(g, max_word_len, norm_cutoff))
}

// log n / log p is an integer >= 2 within tolerance
fn integer_power(norm: f64, base: f64) -> Option<u32> {
    let ratio = norm.ln() / base.ln();
    let j = ratio.round();
    if j >= 2.0 && (ratio - j).abs() <= NORM_TOL * ratio {
        Some(j as u32)
    } else {
        None
    }
}

/// Reassigns primitivity from norms alone: an entry is the `j`-th power of
/// the smallest primitive norm `p` with `norm = p^j`, and primitive when
/// no such `p` exists.
pub fn primitive_decomposition(spec: &LengthSpectrum) -> LengthSpectrum {
    let mut out: Vec<GeodesicEntry> = Vec::with_capacity(spec.entries.len());
    for e in &spec.entries {
        let root = out
            .iter()
            .filter(|p| p.primitive && p.norm < e.norm)
            .find_map(|p| integer_power(e.norm, p.norm).map(|j| (p.norm, j)));
        let mut entry = *e;
        match root {
            Some((pn, j)) => {
                entry.primitive = false;
                entry.primitive_norm = pn;
                entry.power = j;
            }
            None => {
                entry.primitive = true;
                entry.primitive_norm = e.norm;
                entry.power = 1;
            }
        }
        out.push(entry);
    }
    LengthSpectrum {
        entries: out,
        genus: spec.genus,
        norm_cutoff: spec.norm_cutoff,
    }
}

fn has_power(spec: &LengthSpectrum, primitive_norm: f64, power: u32) -> bool {
    spec.entries
        .iter()
        .any(|e| e.power == power && (e.primitive_norm - primitive_norm).abs() <= NORM_TOL * primitive_norm)
}

/// Adds the missing powers `p^j <= norm_cutoff` of every primitive entry,
/// with the primitive's multiplicity.
pub fn synthesize_powers(spec: &LengthSpectrum) -> LengthSpectrum {
    let mut entries = spec.entries.clone();
    for p in spec.primitives() {
        let mut j = 2u32;
        // an infinite cutoff stops at overflow
        while p.norm.powi(j as i32) <= spec.norm_cutoff * (1.0 + NORM_TOL) && p.norm.powi(j as i32).is_finite() {
            if !has_power(spec, p.norm, j) {
                entries.push(GeodesicEntry::power_of(p.norm, j, p.multiplicity));
            }
            j += 1;
        }
    }
    entries.sort_by(|a, b| a.norm.total_cmp(&b.norm).then(a.power.cmp(&b.power)));
    LengthSpectrum {
        entries,
        genus: spec.genus,
        norm_cutoff: spec.norm_cutoff,
    }
}

/// Errors unless every power `p^j <= norm_cutoff` of every primitive entry
/// is present.
pub fn check_power_closed(spec: &LengthSpectrum) -> Result<()> {
    for p in spec.primitives() {
        let mut j = 2u32;
        while p.norm.powi(j as i32) <= spec.norm_cutoff * (1.0 - NORM_TOL) && p.norm.powi(j as i32).is_finite() {
            if !has_power(spec, p.norm, j) {
                return Err(Error::MissingPowers(format!(
                    "power {j} of the primitive class with norm {} (norm {}) is absent",
                    p.norm,
                    p.norm.powi(j as i32)
                )));
            }
            j += 1;
        }
    }
    Ok(())
}
