//! FCIDUMP reading and writing.
//!
//! Integrals are over spatial orbitals, 0-based internally. Two-electron
//! integrals are in chemist notation `(ij|kl)` and are stored once per
//! 8-fold symmetry class under a canonical key.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

const FORMAT: &str = "FCIDUMP";

type Pair = (usize, usize);
type Quad = (usize, usize, usize, usize);

fn canon_pair(i: usize, j: usize) -> Pair {
    if i >= j {
        (i, j)
    } else {
        (j, i)
    }
}

/// Canonical representative of the 8 images of `(ij|kl)` for real orbitals.
pub fn canonical_quad(i: usize, j: usize, k: usize, l: usize) -> Quad {
    let a = canon_pair(i, j);
    let b = canon_pair(k, l);
    let (p, q) = if a >= b { (a, b) } else { (b, a) };
    (p.0, p.1, q.0, q.1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MolecularIntegrals {
    n_spatial: usize,
    n_electrons: usize,
    ms2: i64,
    core_energy: f64,
    one_body: BTreeMap<Pair, f64>,
    two_body: BTreeMap<Quad, f64>,
}

impl MolecularIntegrals {
    pub fn new(n_spatial: usize, n_electrons: usize, ms2: i64) -> Result<Self> {
        if n_spatial == 0 {
            return Err(Error::InvalidArgument("NORB must be positive".into()));
        }
        if n_electrons > 2 * n_spatial {
            return Err(Error::InvalidArgument(format!(
                "{n_electrons} electrons do not fit in {n_spatial} spatial orbitals"
            )));
        }
        if ms2.unsigned_abs() as usize > n_electrons || (n_electrons as i64 + ms2) % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "MS2={ms2} inconsistent with NELEC={n_electrons}"
            )));
        }
        let n_alpha = (n_electrons as i64 + ms2) / 2;
        let n_beta = (n_electrons as i64 - ms2) / 2;
        if n_alpha as usize > n_spatial || n_beta as usize > n_spatial {
            return Err(Error::InvalidArgument(format!(
                "MS2={ms2} puts more than {n_spatial} electrons in one spin channel"
            )));
        }
        Ok(Self {
            n_spatial,
            n_electrons,
            ms2,
            core_energy: 0.0,
            one_body: BTreeMap::new(),
            two_body: BTreeMap::new(),
        })
    }

    pub fn n_spatial(&self) -> usize {
        self.n_spatial
    }

    pub fn n_electrons(&self) -> usize {
        self.n_electrons
    }

    pub fn ms2(&self) -> i64 {
        self.ms2
    }

    /// Spin-up electron count.
    pub fn n_alpha(&self) -> usize {
        ((self.n_electrons as i64 + self.ms2) / 2) as usize
    }

    /// Spin-down electron count.
    pub fn n_beta(&self) -> usize {
        ((self.n_electrons as i64 - self.ms2) / 2) as usize
    }

    pub fn core_energy(&self) -> f64 {
        self.core_energy
    }

    pub fn set_core_energy(&mut self, e: f64) {
        self.core_energy = e;
    }

    fn check(&self, idx: &[usize]) -> Result<()> {
        match idx.iter().find(|&&i| i >= self.n_spatial) {
            Some(bad) => Err(Error::Bounds(format!(
                "orbital {bad} outside 0..{}",
                self.n_spatial
            ))),
            None => Ok(()),
        }
    }

    pub fn one_body(&self, i: usize, j: usize) -> f64 {
        self.one_body.get(&canon_pair(i, j)).copied().unwrap_or(0.0)
    }

    pub fn set_one_body(&mut self, i: usize, j: usize, value: f64) -> Result<()> {
        self.check(&[i, j])?;
        self.one_body.insert(canon_pair(i, j), value);
        Ok(())
    }

    /// `(ij|kl)` in chemist notation.
    pub fn two_body(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.two_body
            .get(&canonical_quad(i, j, k, l))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn set_two_body(
        &mut self,
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        value: f64,
    ) -> Result<()> {
        self.check(&[i, j, k, l])?;
        self.two_body.insert(canonical_quad(i, j, k, l), value);
        Ok(())
    }

    /// Stored one-body entries, one per symmetric pair with `i >= j`.
    pub fn one_body_entries(&self) -> impl Iterator<Item = (Pair, f64)> + '_ {
        self.one_body.iter().map(|(k, v)| (*k, *v))
    }

    /// Stored two-body entries, one per canonical symmetry class.
    pub fn two_body_entries(&self) -> impl Iterator<Item = (Quad, f64)> + '_ {
        self.two_body.iter().map(|(k, v)| (*k, *v))
    }

    /// FCIDUMP text with 1-based indices and a `&END` header terminator.
    pub fn to_fcidump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "&FCI NORB={},NELEC={},MS2={},",
            self.n_spatial, self.n_electrons, self.ms2
        );
        let _ = writeln!(out, " ORBSYM={}", vec!["1"; self.n_spatial].join(","));
        let _ = writeln!(out, " ISYM=1,");
        let _ = writeln!(out, "&END");
        for (&(i, j, k, l), v) in &self.two_body {
            let _ = writeln!(out, "{v:e} {} {} {} {}", i + 1, j + 1, k + 1, l + 1);
        }
        for (&(i, j), v) in &self.one_body {
            let _ = writeln!(out, "{v:e} {} {} 0 0", i + 1, j + 1);
        }
        let _ = writeln!(out, "{:e} 0 0 0 0", self.core_energy);
        out
    }
}

struct Header {
    norb: Option<usize>,
    nelec: Option<usize>,
    ms2: i64,
}

fn parse_header(text: &str, first_line: usize) -> Result<Header> {
    // Flatten to KEY=v1,v2,... tokens; bare values continue the previous key.
    let body = text.trim().trim_start_matches(['&', '$']).trim_start();
    let body = body
        .get(..3)
        .filter(|s| s.eq_ignore_ascii_case("FCI"))
        .map(|_| &body[3..])
        .ok_or_else(|| Error::parse(FORMAT, first_line, "header must start with &FCI"))?;
    let mut norb = None;
    let mut nelec = None;
    let mut ms2 = 0i64;
    let mut current: Option<String> = None;
    for token in body.split(|c: char| c == ',' || c.is_whitespace()) {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        let (key, value) = match token.split_once('=') {
            Some((k, v)) => {
                current = Some(k.trim().to_ascii_uppercase());
                (current.clone().unwrap_or_default(), v.trim())
            }
            None => (current.clone().unwrap_or_default(), token),
        };
        if value.is_empty() {
            continue;
        }
        let parse_int = |v: &str| -> Result<i64> {
            v.parse::<i64>().map_err(|_| {
                Error::parse(
                    FORMAT,
                    first_line,
                    format!("bad integer {v:?} for key {key}"),
                )
            })
        };
        match key.as_str() {
            "NORB" => {
                let v = parse_int(value)?;
                if v <= 0 {
                    return Err(Error::parse(FORMAT, first_line, "NORB must be positive"));
                }
                norb = Some(v as usize);
            }
            "NELEC" => {
                let v = parse_int(value)?;
                if v < 0 {
                    return Err(Error::parse(
                        FORMAT,
                        first_line,
                        "NELEC must be non-negative",
                    ));
                }
                nelec = Some(v as usize);
            }
            "MS2" => ms2 = parse_int(value)?,
            _ => {}
        }
    }
    Ok(Header { norb, nelec, ms2 })
}

fn is_header_end(line: &str) -> bool {
    let t = line.trim();
    t == "/"
        || t.ends_with('/')
        || t.to_ascii_uppercase().ends_with("&END")
        || t.eq_ignore_ascii_case("$END")
}

/// Parse FCIDUMP text into integrals.
pub fn parse_fcidump(text: &str) -> Result<MolecularIntegrals> {
    let lines: Vec<&str> = text.lines().collect();
    let start = lines
        .iter()
        .position(|l| !l.trim().is_empty())
        .ok_or_else(|| Error::Format {
            format: FORMAT,
            message: "empty input".into(),
        })?;
    let end = (start..lines.len())
        .find(|&i| is_header_end(lines[i]))
        .ok_or_else(|| Error::Format {
            format: FORMAT,
            message: "header is not terminated by '/' or '&END'".into(),
        })?;
    let mut header_text = lines[start..=end].join(" ");
    // strip the terminator itself
    let upper = header_text.to_ascii_uppercase();
    if let Some(pos) = upper.rfind("&END").or_else(|| upper.rfind("$END")) {
        header_text.truncate(pos);
    } else if let Some(pos) = header_text.rfind('/') {
        header_text.truncate(pos);
    }
    let header = parse_header(&header_text, start + 1)?;
    let norb = header.norb.ok_or_else(|| Error::Format {
        format: FORMAT,
        message: "missing key NORB".into(),
    })?;
    let nelec = header.nelec.ok_or_else(|| Error::Format {
        format: FORMAT,
        message: "missing key NELEC".into(),
    })?;
    let mut ints = MolecularIntegrals::new(norb, nelec, header.ms2).map_err(|e| Error::Format {
        format: FORMAT,
        message: e.to_string(),
    })?;

    for (offset, raw) in lines[end + 1..].iter().enumerate() {
        let line_no = end + 2 + offset;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(Error::parse(
                FORMAT,
                line_no,
                format!("expected `value i j k l`, found {} fields", fields.len()),
            ));
        }
        let value: f64 = fields[0].replace(['D', 'd'], "E").parse().map_err(|_| {
            Error::parse(
                FORMAT,
                line_no,
                format!("non-numeric value {:?}", fields[0]),
            )
        })?;
        let mut idx = [0usize; 4];
        for (slot, f) in idx.iter_mut().zip(&fields[1..]) {
            let v: i64 = f
                .parse()
                .map_err(|_| Error::parse(FORMAT, line_no, format!("non-integer index {f:?}")))?;
            if v < 0 || v as usize > norb {
                return Err(Error::Bounds(format!(
                    "line {line_no}: index {v} outside [1, {norb}]"
                )));
            }
            *slot = v as usize;
        }
        match idx {
            [0, 0, 0, 0] => ints.core_energy = value,
            // orbital energies; not part of the Hamiltonian
            [_, 0, 0, 0] => {}
            [i, j, 0, 0] if i > 0 && j > 0 => {
                ints.one_body.insert(canon_pair(i - 1, j - 1), value);
            }
            [i, j, k, l] if i > 0 && j > 0 && k > 0 && l > 0 => {
                ints.two_body
                    .insert(canonical_quad(i - 1, j - 1, k - 1, l - 1), value);
            }
            _ => {
                return Err(Error::Bounds(format!(
                    "line {line_no}: index pattern {idx:?} is neither core, one- nor two-body"
                )))
            }
        }
    }
    Ok(ints)
}
