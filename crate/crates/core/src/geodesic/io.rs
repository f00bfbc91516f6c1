//! JSON-lines files. The first non-blank line is a header object, every
//! further non-blank line one entry. Floats are written with 17 significant
//! digits so a save/load round trip is bit-exact.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::Deserialize;

use super::{EigenEntry, EigenSpectrum, GeodesicEntry, LengthSpectrum};
use crate::error::{Error, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrumHeader {
    kind: String,
    genus: u32,
    // null or absent for an unbounded list
    #[serde(default)]
    norm_cutoff: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpectrumLine {
    norm: f64,
    #[serde(default = "one")]
    multiplicity: u64,
    primitive: Option<bool>,
    primitive_norm: Option<f64>,
    power: Option<u32>,
    // accepted for readability, checked against norm
    length: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EigenHeader {
    kind: String,
    genus: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EigenLine {
    lambda: f64,
    #[serde(default = "one")]
    multiplicity: u64,
}

fn one() -> u64 {
    1
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn lines<R: Read>(reader: R) -> Result<Vec<(usize, String)>> {
    let mut out = Vec::new();
    for (i, l) in BufReader::new(reader).lines().enumerate() {
        let l = l?;
        if !l.trim().is_empty() {
            out.push((i + 1, l));
        }
    }
    Ok(out)
}

fn parse<T: for<'de> Deserialize<'de>>(line: usize, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| parse_err(line, e.to_string()))
}

fn check_kind(line: usize, kind: &str, expected: &str) -> Result<()> {
    if kind != expected {
        return Err(parse_err(line, format!("header kind is {kind:?}, expected {expected:?}")));
    }
    Ok(())
}

fn entry_from_line(l: SpectrumLine) -> Result<GeodesicEntry> {
    let power = l.power.unwrap_or(1);
    let entry = GeodesicEntry {
        norm: l.norm,
        length: l.norm.ln(),
        multiplicity: l.multiplicity,
        primitive: l.primitive.unwrap_or(power == 1),
        primitive_norm: l.primitive_norm.unwrap_or(if power == 1 { l.norm } else { l.norm.powf(1.0 / power as f64) }),
        power,
    };
    entry.validate()?;
    if let Some(len) = l.length {
        if (len - entry.length).abs() > 1e-12 * entry.length.max(1.0) {
            return Err(Error::Invariant(format!("length {len} differs from log(norm) {}", entry.length)));
        }
    }
    Ok(entry)
}

pub fn read_spectrum<R: Read>(reader: R) -> Result<LengthSpectrum> {
    let lines = lines(reader)?;
    let Some(((hline, htext), rest)) = lines.split_first() else {
        return Err(parse_err(1, "missing header line"));
    };
    let header: SpectrumHeader = parse(*hline, htext)?;
    check_kind(*hline, &header.kind, "length_spectrum")?;
    let mut entries = Vec::with_capacity(rest.len());
    for (line, text) in rest {
        let raw: SpectrumLine = parse(*line, text)?;
        let entry = entry_from_line(raw).map_err(|e| match e {
            Error::Invariant(m) => Error::Invariant(format!("line {line}: {m}")),
            other => other,
        })?;
        entries.push(entry);
    }
    LengthSpectrum::new(entries, header.genus, header.norm_cutoff.unwrap_or(f64::INFINITY))
}

pub fn read_eigen<R: Read>(reader: R) -> Result<EigenSpectrum> {
    let lines = lines(reader)?;
    let Some(((hline, htext), rest)) = lines.split_first() else {
        return Err(parse_err(1, "missing header line"));
    };
    let header: EigenHeader = parse(*hline, htext)?;
    check_kind(*hline, &header.kind, "eigen_spectrum")?;
    let mut entries = Vec::with_capacity(rest.len());
    for (line, text) in rest {
        let raw: EigenLine = parse(*line, text)?;
        entries.push(EigenEntry {
            lambda: raw.lambda,
            multiplicity: raw.multiplicity,
        });
    }
    EigenSpectrum::new(entries, header.genus)
}

fn f17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_spectrum<W: Write>(spec: &LengthSpectrum, writer: W) -> Result<()> {
    let mut w = BufWriter::new(writer);
    writeln!(
        w,
        "{{\"kind\":\"length_spectrum\",\"genus\":{},\"norm_cutoff\":{}}}",
        spec.genus,
        if spec.norm_cutoff.is_finite() { f17(spec.norm_cutoff) } else { "null".to_string() }
    )?;
    for e in &spec.entries {
        writeln!(
            w,
            "{{\"norm\":{},\"multiplicity\":{},\"primitive\":{},\"primitive_norm\":{},\"power\":{}}}",
            f17(e.norm),
            e.multiplicity,
            e.primitive,
            f17(e.primitive_norm),
            e.power
        )?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_eigen<W: Write>(eig: &EigenSpectrum, writer: W) -> Result<()> {
    let mut w = BufWriter::new(writer);
    writeln!(w, "{{\"kind\":\"eigen_spectrum\",\"genus\":{}}}", eig.genus)?;
    for e in &eig.entries {
        writeln!(w, "{{\"lambda\":{},\"multiplicity\":{}}}", f17(e.lambda), e.multiplicity)?;
    }
    w.flush()?;
    Ok(())
}

pub fn load_spectrum(path: impl AsRef<Path>) -> Result<LengthSpectrum> {
    read_spectrum(File::open(path)?)
}

pub fn save_spectrum(spec: &LengthSpectrum, path: impl AsRef<Path>) -> Result<()> {
    write_spectrum(spec, File::create(path)?)
}

pub fn load_eigen(path: impl AsRef<Path>) -> Result<EigenSpectrum> {
    read_eigen(File::open(path)?)
}

pub fn save_eigen(eig: &EigenSpectrum, path: impl AsRef<Path>) -> Result<()> {
    write_eigen(eig, File::create(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_only_is_empty() {
        let s = read_spectrum(&b"{\"kind\":\"length_spectrum\",\"genus\":2,\"norm_cutoff\":100}\n"[..]).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.genus, 2);
    }

    #[test]
    fn minimal_entry_defaults_to_primitive() {
        let text = "{\"kind\":\"length_spectrum\",\"genus\":2,\"norm_cutoff\":100}\n{\"norm\":4.0,\"multiplicity\":1,\"primitive\":true}\n";
        let s = read_spectrum(text.as_bytes()).unwrap();
        assert_eq!(s.entries.len(), 1);
        assert_eq!(s.entries[0].length, 4f64.ln());
        assert_eq!(s.entries[0].power, 1);
    }

    #[test]
    fn bad_norm_rejected() {
        let text = "{\"kind\":\"length_spectrum\",\"genus\":2,\"norm_cutoff\":100}\n{\"norm\":0.5}\n";
        assert!(matches!(read_spectrum(text.as_bytes()), Err(Error::Invariant(_))));
    }

    #[test]
    fn parse_error_carries_line() {
        let text = "{\"kind\":\"length_spectrum\",\"genus\":2,\"norm_cutoff\":100}\n\n{\"norm\":4.0\n";
        match read_spectrum(text.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(read_spectrum(&b""[..]), Err(Error::Parse { line: 1, .. })));
        let wrong = "{\"kind\":\"eigen_spectrum\",\"genus\":2}\n";
        assert!(matches!(read_spectrum(wrong.as_bytes()), Err(Error::Parse { .. })));
    }

    #[test]
    fn round_trip_bit_exact() {
        let s = LengthSpectrum::new(
            vec![
                GeodesicEntry::primitive(std::f64::consts::PI * 2.0, 3),
                GeodesicEntry::power_of(1.0 + 1e-7, 5, 1),
            ],
            3,
            1234.5678,
        )
        .unwrap();
        let mut buf = Vec::new();
        write_spectrum(&s, &mut buf).unwrap();
        let back = read_spectrum(&buf[..]).unwrap();
        for (a, b) in s.entries.iter().zip(&back.entries) {
            assert_eq!(a.norm.to_bits(), b.norm.to_bits());
            assert_eq!(a.primitive_norm.to_bits(), b.primitive_norm.to_bits());
            assert_eq!(a.power, b.power);
        }
        assert_eq!(back.norm_cutoff, s.norm_cutoff);

        let e = EigenSpectrum::from_values(&[0.0, 0.1 + 0.2, 3.7], 2).unwrap();
        let mut buf = Vec::new();
        write_eigen(&e, &mut buf).unwrap();
        assert_eq!(read_eigen(&buf[..]).unwrap(), e);
    }
}
