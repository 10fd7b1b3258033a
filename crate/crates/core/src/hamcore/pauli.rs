//! Bitmask Pauli strings and weighted sums of them.
//!
//! A string on `n` qubits is stored as two masks. Bit `k` of `x_mask` is set
//! when qubit `k` carries X or Y, bit `k` of `z_mask` when it carries Z or Y.
//! The operator represented is the Hermitian product of the letters, which in
//! mask form reads `i^{|x & z|} · X^x · Z^z` (Z factors act first).
//!
//! Text form: character `k` of a letter string is the letter on qubit `k`,
//! so `"ZX"` has Z on qubit 0 and X on qubit 1.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest register `to_dense` will materialize.
pub const DENSE_QUBIT_LIMIT: usize = 12;

/// Default magnitude below which coefficients are dropped by `simplify`.
pub const DEFAULT_DROP_TOL: f64 = 1e-12;

const MAX_QUBITS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// `i^k` for `k` taken mod 4.
pub(crate) fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn low_mask(n_qubits: usize) -> u64 {
    if n_qubits >= 64 {
        u64::MAX
    } else {
        (1u64 << n_qubits) - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    x_mask: u64,
    z_mask: u64,
    n_qubits: usize,
}

impl PauliString {
    pub fn new(n_qubits: usize, x_mask: u64, z_mask: u64) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "qubit count {n_qubits} outside 1..={MAX_QUBITS}"
            )));
        }
        let outside = !low_mask(n_qubits);
        if (x_mask | z_mask) & outside != 0 {
            return Err(Error::Bounds(format!(
                "pauli masks {x_mask:#x}/{z_mask:#x} exceed {n_qubits} qubits"
            )));
        }
        Ok(Self {
            x_mask,
            z_mask,
            n_qubits,
        })
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        Self::new(n_qubits, 0, 0)
    }

    /// A single letter on `qubit`, identity elsewhere.
    pub fn single(n_qubits: usize, qubit: usize, letter: Pauli) -> Result<Self> {
        if qubit >= n_qubits {
            return Err(Error::Bounds(format!(
                "qubit {qubit} out of range for {n_qubits} qubits"
            )));
        }
        let (x, z) = letter.bits();
        Self::new(n_qubits, (x as u64) << qubit, (z as u64) << qubit)
    }

    /// Parse a letter string such as `"IXYZ"` (character k is qubit k).
    pub fn from_letters(letters: &str) -> Result<Self> {
        let mut x_mask = 0u64;
        let mut z_mask = 0u64;
        let mut n = 0usize;
        for (k, ch) in letters.chars().enumerate() {
            if k >= MAX_QUBITS {
                return Err(Error::InvalidArgument(format!(
                    "pauli string longer than {MAX_QUBITS} qubits"
                )));
            }
            let letter = match ch.to_ascii_uppercase() {
                'I' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "invalid pauli letter {other:?} in {letters:?}"
                    )))
                }
            };
            let (x, z) = letter.bits();
            x_mask |= (x as u64) << k;
            z_mask |= (z as u64) << k;
            n = k + 1;
        }
        Self::new(n, x_mask, z_mask)
    }

    pub fn x_mask(&self) -> u64 {
        self.x_mask
    }

    pub fn z_mask(&self) -> u64 {
        self.z_mask
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn letter(&self, qubit: usize) -> Pauli {
        Pauli::from_bits(
            (self.x_mask >> qubit) & 1 == 1,
            (self.z_mask >> qubit) & 1 == 1,
        )
    }

    pub fn to_letters(&self) -> String {
        (0..self.n_qubits)
            .map(|k| self.letter(k).as_char())
            .collect()
    }

    /// Number of Y letters.
    pub fn y_count(&self) -> u32 {
        (self.x_mask & self.z_mask).count_ones()
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> u32 {
        (self.x_mask | self.z_mask).count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x_mask == 0 && self.z_mask == 0
    }

    pub fn is_diagonal(&self) -> bool {
        self.x_mask == 0
    }

    /// Amplitude picked up by basis state `b`: `P|b> = phase · |b ^ x_mask>`.
    #[inline]
    pub fn phase_on(&self, b: u64) -> Complex64 {
        let sign = ((b & self.z_mask).count_ones() & 1) * 2;
        i_pow(self.y_count() + sign)
    }

    /// Product `self · other` as `(i^k, string)`.
    pub fn mul(&self, other: &PauliString) -> (Complex64, PauliString) {
        debug_assert_eq!(self.n_qubits, other.n_qubits);
        let x = self.x_mask ^ other.x_mask;
        let z = self.z_mask ^ other.z_mask;
        let swap = (self.z_mask & other.x_mask).count_ones();
        let y_out = (x & z).count_ones();
        // i^(y1 + y2 + 2·swap - y_out), kept non-negative mod 4
        let k = self.y_count() + other.y_count() + 2 * swap + 4 * MAX_QUBITS as u32 - y_out;
        (
            i_pow(k),
            PauliString {
                x_mask: x,
                z_mask: z,
                n_qubits: self.n_qubits,
            },
        )
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let anti =
            (self.x_mask & other.z_mask).count_ones() + (self.z_mask & other.x_mask).count_ones();
        anti.is_multiple_of(2)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_letters())
    }
}

/// Terms of a sum that share one X mask. Coefficients have the string's
/// `i^{#Y}` phase folded in, so the group acts as
/// `|b> -> sum_t coeff_t · (-1)^{|b & z_t|} |b ^ x_mask>`.
#[derive(Clone, Debug)]
pub struct XGroup {
    pub x_mask: u64,
    pub terms: Vec<(Complex64, u64)>,
}

impl XGroup {
    #[inline]
    pub fn amplitude(&self, b: u64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(c, z) in &self.terms {
            if (b & z).count_ones() & 1 == 1 {
                acc -= c;
            } else {
                acc += c;
            }
        }
        acc
    }
}

/// Weighted sum of Pauli strings on a fixed register.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<(Complex64, PauliString)>,
}

impl PauliSum {
    /// The empty (zero) operator.
    pub fn zero(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            terms: Vec::new(),
        }
    }

    pub fn identity(n_qubits: usize, coeff: impl Into<Complex64>) -> Result<Self> {
        Self::from_terms(n_qubits, [(coeff.into(), PauliString::identity(n_qubits)?)])
    }

    /// Build a sum from raw terms; duplicates are merged but nothing is dropped.
    pub fn from_terms(
        n_qubits: usize,
        terms: impl IntoIterator<Item = (Complex64, PauliString)>,
    ) -> Result<Self> {
        let mut out = Self::zero(n_qubits);
        for (c, s) in terms {
            if s.n_qubits != n_qubits {
                return Err(Error::Shape(format!(
                    "term on {} qubits in a {n_qubits}-qubit sum",
                    s.n_qubits
                )));
            }
            out.terms.push((c, s));
        }
        Ok(out.merged(0.0))
    }

    /// Parse `(coeff, letters)` pairs; convenient in tests and fixtures.
    pub fn from_letters<C: Into<Complex64>, S: AsRef<str>>(
        terms: impl IntoIterator<Item = (C, S)>,
    ) -> Result<Self> {
        let parsed: Vec<(Complex64, PauliString)> = terms
            .into_iter()
            .map(|(c, l)| Ok((c.into(), PauliString::from_letters(l.as_ref())?)))
            .collect::<Result<_>>()?;
        let n = parsed
            .first()
            .map(|(_, s)| s.n_qubits)
            .ok_or_else(|| Error::InvalidArgument("no terms".into()))?;
        Self::from_terms(n, parsed)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[(Complex64, PauliString)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn merged(self, drop_tol: f64) -> Self {
        let mut acc: BTreeMap<(u64, u64), Complex64> = BTreeMap::new();
        for (c, s) in self.terms {
            *acc.entry((s.x_mask, s.z_mask)).or_default() += c;
        }
        let n = self.n_qubits;
        let terms = acc
            .into_iter()
            .filter(|(_, c)| drop_tol <= 0.0 || c.norm() >= drop_tol)
            .map(|((x, z), c)| {
                (
                    c,
                    PauliString {
                        x_mask: x,
                        z_mask: z,
                        n_qubits: n,
                    },
                )
            })
            .collect();
        Self { n_qubits: n, terms }
    }

    /// Merge duplicate strings and drop coefficients with `|c| < drop_tol`.
    pub fn simplify(&self, drop_tol: f64) -> Self {
        let mut out = self.clone().merged(0.0);
        out.terms.retain(|(c, _)| c.norm() >= drop_tol);
        out
    }

    fn check_shape(&self, other: &PauliSum) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Shape(format!(
                "{}-qubit and {}-qubit operators",
                self.n_qubits, other.n_qubits
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &PauliSum) -> Result<Self> {
        self.check_shape(other)?;
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Ok(Self {
            n_qubits: self.n_qubits,
            terms,
        }
        .merged(0.0))
    }

    pub fn multiply(&self, other: &PauliSum) -> Result<Self> {
        self.check_shape(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ca, sa) in &self.terms {
            for (cb, sb) in &other.terms {
                let (phase, s) = sa.mul(sb);
                terms.push((ca * cb * phase, s));
            }
        }
        Ok(Self {
            n_qubits: self.n_qubits,
            terms,
        }
        .merged(0.0))
    }

    pub fn scale(&self, factor: impl Into<Complex64>) -> Self {
        let f = factor.into();
        Self {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|(c, s)| (c * f, *s)).collect(),
        }
    }

    /// Hermitian adjoint. Every string is Hermitian, so only coefficients conjugate.
    pub fn adjoint(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            terms: self.terms.iter().map(|(c, s)| (c.conj(), *s)).collect(),
        }
    }

    /// Largest imaginary coefficient after merging; zero for a Hermitian sum.
    pub fn hermiticity_violation(&self) -> f64 {
        self.clone()
            .merged(0.0)
            .terms
            .iter()
            .map(|(c, _)| c.im.abs())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_violation() <= 1e-10
    }

    pub fn ensure_hermitian(&self) -> Result<()> {
        let v = self.hermiticity_violation();
        if v > 1e-10 {
            return Err(Error::NotHermitian(v));
        }
        Ok(())
    }

    /// Coefficient of the identity string.
    pub fn identity_coefficient(&self) -> Complex64 {
        self.terms
            .iter()
            .filter(|(_, s)| s.is_identity())
            .map(|(c, _)| *c)
            .sum()
    }

    /// Upper bound on the spectral width (largest minus smallest eigenvalue).
    pub fn spectral_width_bound(&self) -> f64 {
        2.0 * self
            .terms
            .iter()
            .filter(|(_, s)| !s.is_identity())
            .map(|(c, _)| c.norm())
            .sum::<f64>()
    }

    /// Terms grouped by X mask, in ascending mask order.
    pub fn x_groups(&self) -> Vec<XGroup> {
        let mut groups: BTreeMap<u64, Vec<(Complex64, u64)>> = BTreeMap::new();
        for (c, s) in &self.terms {
            groups
                .entry(s.x_mask)
                .or_default()
                .push((c * i_pow(s.y_count()), s.z_mask));
        }
        groups
            .into_iter()
            .map(|(x_mask, terms)| XGroup { x_mask, terms })
            .collect()
    }

    pub fn to_dense(&self) -> Result<DMatrix<Complex64>> {
        self.to_dense_with_limit(DENSE_QUBIT_LIMIT)
    }

    pub fn to_dense_with_limit(&self, limit: usize) -> Result<DMatrix<Complex64>> {
        if self.n_qubits > limit {
            return Err(Error::Capacity {
                what: "dense operator",
                requested: self.n_qubits,
                limit,
            });
        }
        let dim = 1usize << self.n_qubits;
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        for (c, s) in &self.terms {
            for b in 0..dim as u64 {
                m[((b ^ s.x_mask) as usize, b as usize)] += c * s.phase_on(b);
            }
        }
        Ok(m)
    }

    pub fn to_json(&self) -> PauliSumJson {
        PauliSumJson {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|(c, s)| TermJson {
                    coeff: [c.re, c.im],
                    pauli: s.to_letters(),
                })
                .collect(),
        }
    }

    pub fn from_json(doc: &PauliSumJson) -> Result<Self> {
        let mut terms = Vec::with_capacity(doc.terms.len());
        for t in &doc.terms {
            let s = PauliString::from_letters(&t.pauli)?;
            if s.n_qubits != doc.n_qubits {
                return Err(Error::Shape(format!(
                    "pauli {:?} has {} letters, expected {}",
                    t.pauli, s.n_qubits, doc.n_qubits
                )));
            }
            terms.push((Complex64::new(t.coeff[0], t.coeff[1]), s));
        }
        Self::from_terms(doc.n_qubits, terms)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_json())?)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }
}

/// JSON document form: `{ "n_qubits": N, "terms": [{"coeff": [re, im], "pauli": "IXYZ"}] }`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PauliSumJson {
    pub n_qubits: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub coeff: [f64; 2],
    pub pauli: String,
}
