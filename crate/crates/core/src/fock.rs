//! Brute-force two-mode Fock-space oracle.
//!
//! Both modes are truncated at `n_max` quanta. Basis states `|n, m⟩`
//! (`n` photons, `m` phonons) are stored row-major at flat index
//! `n·(n_max + 1) + m`. Everything here is built from ladder-operator matrix
//! elements and dense linear algebra, independently of the closed forms in
//! [`crate::stokes`] and [`crate::antistokes`].

use std::fmt::Write as _;
use std::ops::{Add, Mul, Sub};

use faer::{Mat, Side};
use num_complex::Complex64;

use crate::antistokes::AntiStokesParams;
use crate::error::{Error, Result};
use crate::stokes::StokesParams;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Operators whose `|H − H†|` exceeds this are refused by the eigensolver.
pub const HERMITICITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockBasis {
    n_max: usize,
}

impl FockBasis {
    /// Largest supported per-mode truncation (dimension 3721).
    pub const MAX_TRUNCATION: usize = 60;

    pub fn new(n_max: usize) -> Result<Self> {
        if n_max > Self::MAX_TRUNCATION {
            return Err(Error::invalid(
                "truncation",
                format!("at most {} quanta per mode, got {n_max}", Self::MAX_TRUNCATION),
            ));
        }
        Ok(FockBasis { n_max })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        (self.n_max + 1) * (self.n_max + 1)
    }

    pub fn index(&self, photons: usize, phonons: usize) -> usize {
        debug_assert!(photons <= self.n_max && phonons <= self.n_max);
        photons * (self.n_max + 1) + phonons
    }

    pub fn state(&self, index: usize) -> (usize, usize) {
        (index / (self.n_max + 1), index % (self.n_max + 1))
    }

    pub fn contains(&self, photons: usize, phonons: usize) -> bool {
        photons <= self.n_max && phonons <= self.n_max
    }

    /// The "interior" subspace `n, m ≤ n_max/2`, far from the truncation edge.
    pub fn is_interior(&self, photons: usize, phonons: usize) -> bool {
        photons <= self.n_max / 2 && phonons <= self.n_max / 2
    }

    pub fn states(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.dim()).map(|i| self.state(i))
    }
}

fn check_hamiltonian_truncation(n_max: usize) -> Result<FockBasis> {
    if n_max < 1 {
        return Err(Error::invalid("truncation", "Hamiltonians need n_max >= 1"));
    }
    FockBasis::new(n_max)
}

/// Dense complex operator on a truncated two-mode Fock space.
#[derive(Debug, Clone)]
pub struct FockOperator {
    basis: FockBasis,
    matrix: Mat<Complex64>,
}

impl FockOperator {
    pub fn from_fn(basis: FockBasis, f: impl Fn((usize, usize), (usize, usize)) -> Complex64) -> Self {
        let matrix = Mat::from_fn(basis.dim(), basis.dim(), |i, j| f(basis.state(i), basis.state(j)));
        FockOperator { basis, matrix }
    }

    pub fn zeros(basis: FockBasis) -> Self {
        FockOperator {
            basis,
            matrix: Mat::zeros(basis.dim(), basis.dim()),
        }
    }

    pub fn identity(basis: FockBasis) -> Self {
        Self::diagonal(basis, |_, _| 1.0)
    }

    pub fn diagonal(basis: FockBasis, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut op = Self::zeros(basis);
        for i in 0..basis.dim() {
            let (n, m) = basis.state(i);
            op.matrix[(i, i)] = Complex64::new(f(n, m), 0.0);
        }
        op
    }

    pub fn photon_lowering(basis: FockBasis) -> Self {
        let mut op = Self::zeros(basis);
        for (n, m) in basis.states().filter(|&(n, _)| n > 0) {
            op.matrix[(basis.index(n - 1, m), basis.index(n, m))] = Complex64::new((n as f64).sqrt(), 0.0);
        }
        op
    }

    pub fn phonon_lowering(basis: FockBasis) -> Self {
        let mut op = Self::zeros(basis);
        for (n, m) in basis.states().filter(|&(_, m)| m > 0) {
            op.matrix[(basis.index(n, m - 1), basis.index(n, m))] = Complex64::new((m as f64).sqrt(), 0.0);
        }
        op
    }

    pub fn photon_number(basis: FockBasis) -> Self {
        Self::diagonal(basis, |n, _| n as f64)
    }

    pub fn phonon_number(basis: FockBasis) -> Self {
        Self::diagonal(basis, |_, m| m as f64)
    }

    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    /// Matrix element `⟨n, m| O |n', m'⟩`.
    pub fn element(&self, bra: (usize, usize), ket: (usize, usize)) -> Complex64 {
        self.matrix[(self.basis.index(bra.0, bra.1), self.basis.index(ket.0, ket.1))]
    }

    pub fn matrix(&self) -> &Mat<Complex64> {
        &self.matrix
    }

    pub fn adjoint(&self) -> FockOperator {
        FockOperator {
            basis: self.basis,
            matrix: self.matrix.adjoint().to_owned(),
        }
    }

    pub fn scale(&self, c: Complex64) -> FockOperator {
        let matrix = Mat::from_fn(self.dim(), self.dim(), |i, j| c * self.matrix[(i, j)]);
        FockOperator {
            basis: self.basis,
            matrix,
        }
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &FockOperator) -> FockOperator {
        &(self * other) - &(other * self)
    }

    pub fn max_abs(&self) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..self.dim() {
            for i in 0..self.dim() {
                worst = worst.max(self.matrix[(i, j)].norm());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.norm_l2()
    }

    /// `max |H_ij − conj(H_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..self.dim() {
            for i in 0..=j {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Frobenius norm of `self − other` over rows and columns in the interior
    /// subspace.
    pub fn interior_distance(&self, other: &FockOperator) -> Result<f64> {
        check_same_basis(self.basis, other.basis)?;
        let interior: Vec<usize> = (0..self.dim())
            .filter(|&i| {
                let (n, m) = self.basis.state(i);
                self.basis.is_interior(n, m)
            })
            .collect();
        let mut acc = 0.0;
        for &i in &interior {
            for &j in &interior {
                acc += (self.matrix[(i, j)] - other.matrix[(i, j)]).norm_sqr();
            }
        }
        Ok(acc.sqrt())
    }

    /// Largest deviation of a column norm from one over interior columns.
    pub fn interior_column_norm_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..self.dim() {
            let (n, m) = self.basis.state(j);
            if !self.basis.is_interior(n, m) {
                continue;
            }
            let norm = self.matrix.col(j).norm_l2();
            worst = worst.max((norm - 1.0).abs());
        }
        worst
    }

    pub fn apply(&self, psi: &FockState) -> Result<FockState> {
        check_same_basis(self.basis, psi.basis)?;
        let amplitudes = (0..self.dim())
            .map(|i| {
                psi.amplitudes
                    .iter()
                    .enumerate()
                    .map(|(j, a)| self.matrix[(i, j)] * a)
                    .sum()
            })
            .collect();
        Ok(FockState {
            basis: self.basis,
            amplitudes,
        })
    }

    /// Full spectral decomposition of a Hermitian operator.
    pub fn eigen(&self) -> Result<Spectrum> {
        let defect = self.hermiticity_defect();
        if defect > HERMITICITY_TOLERANCE {
            return Err(Error::NonHermitian(defect));
        }
        let evd = self
            .matrix
            .self_adjoint_eigen(Side::Lower)
            .map_err(|_| Error::EigensolverFailed)?;
        let values = evd.S().column_vector();
        let vectors = evd.U();
        let mut order: Vec<usize> = (0..self.dim()).collect();
        order.sort_by(|&a, &b| values[a].re.total_cmp(&values[b].re));
        let eigenvalues = order.iter().map(|&k| values[k].re).collect();
        let eigenvectors = Mat::from_fn(self.dim(), self.dim(), |i, j| vectors[(i, order[j])]);
        Ok(Spectrum {
            basis: self.basis,
            eigenvalues,
            eigenvectors,
        })
    }

    /// Ascending real spectrum.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.eigen()?.eigenvalues)
    }

    /// Plain-text dump: one `row col real imag` line per non-zero entry.
    pub fn to_dump(&self) -> String {
        let mut out = format!(
            "# fock-operator n_max={} dim={}\n# row col real imag\n",
            self.basis.n_max,
            self.dim()
        );
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let z = self.matrix[(i, j)];
                if z != ZERO {
                    let _ = writeln!(out, "{i} {j} {:.17e} {:.17e}", z.re, z.im);
                }
            }
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<FockOperator> {
        let basis = parse_dump_header(text, "fock-operator")?;
        let mut op = FockOperator::zeros(basis);
        for line in data_lines(text) {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(Error::invalid("dump", format!("bad operator line `{line}`")));
            }
            let i = parse_index(fields[0], basis)?;
            let j = parse_index(fields[1], basis)?;
            op.matrix[(i, j)] = Complex64::new(parse_float(fields[2])?, parse_float(fields[3])?);
        }
        Ok(op)
    }
}

impl Mul for &FockOperator {
    type Output = FockOperator;

    fn mul(self, rhs: &FockOperator) -> FockOperator {
        assert_eq!(self.basis, rhs.basis, "operators on different bases");
        FockOperator {
            basis: self.basis,
            matrix: &self.matrix * &rhs.matrix,
        }
    }
}

impl Add for &FockOperator {
    type Output = FockOperator;

    fn add(self, rhs: &FockOperator) -> FockOperator {
        assert_eq!(self.basis, rhs.basis, "operators on different bases");
        FockOperator {
            basis: self.basis,
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl Sub for &FockOperator {
    type Output = FockOperator;

    fn sub(self, rhs: &FockOperator) -> FockOperator {
        assert_eq!(self.basis, rhs.basis, "operators on different bases");
        FockOperator {
            basis: self.basis,
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

fn check_same_basis(a: FockBasis, b: FockBasis) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

/// Eigen-decomposition `H = V diag(λ) V†`, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct Spectrum {
    basis: FockBasis,
    pub eigenvalues: Vec<f64>,
    eigenvectors: Mat<Complex64>,
}

impl Spectrum {
    pub fn eigenvector(&self, k: usize) -> FockState {
        FockState {
            basis: self.basis,
            amplitudes: (0..self.basis.dim()).map(|i| self.eigenvectors[(i, k)]).collect(),
        }
    }

    pub fn ground_state(&self) -> FockState {
        self.eigenvector(0)
    }

    /// `exp(−iHt) ψ`.
    pub fn evolve(&self, psi: &FockState, t: f64) -> Result<FockState> {
        check_same_basis(self.basis, psi.basis)?;
        let dim = self.basis.dim();
        let mut out = vec![ZERO; dim];
        for k in 0..dim {
            let mut coeff = ZERO;
            for i in 0..dim {
                coeff += self.eigenvectors[(i, k)].conj() * psi.amplitudes[i];
            }
            coeff *= Complex64::from_polar(1.0, -self.eigenvalues[k] * t);
            for (i, o) in out.iter_mut().enumerate() {
                *o += self.eigenvectors[(i, k)] * coeff;
            }
        }
        Ok(FockState {
            basis: self.basis,
            amplitudes: out,
        })
    }

    /// The propagator `exp(−iHt)` as an operator.
    pub fn propagator(&self, t: f64) -> FockOperator {
        let dim = self.basis.dim();
        let phased = Mat::from_fn(dim, dim, |i, k| {
            self.eigenvectors[(i, k)] * Complex64::from_polar(1.0, -self.eigenvalues[k] * t)
        });
        FockOperator {
            basis: self.basis,
            matrix: &phased * self.eigenvectors.adjoint(),
        }
    }
}

/// `H = Δω a†a + Ω b†b + f (a†b† + ab)`.
pub fn build_stokes_hamiltonian(p: &StokesParams, n_max: usize) -> Result<FockOperator> {
    let basis = check_hamiltonian_truncation(n_max)?;
    let mut h = FockOperator::diagonal(basis, |n, m| p.detuning * n as f64 + p.phonon * m as f64);
    for (n, m) in basis.states() {
        if basis.contains(n + 1, m + 1) {
            let elem = Complex64::new(p.coupling * (((n + 1) * (m + 1)) as f64).sqrt(), 0.0);
            let (lo, hi) = (basis.index(n, m), basis.index(n + 1, m + 1));
            h.matrix[(hi, lo)] = elem;
            h.matrix[(lo, hi)] = elem;
        }
    }
    Ok(h)
}

/// `H = Δω a†a + Ω b†b + f* b†a + f a†b`.
pub fn build_antistokes_hamiltonian(p: &AntiStokesParams, n_max: usize) -> Result<FockOperator> {
    let basis = check_hamiltonian_truncation(n_max)?;
    let mut h = FockOperator::diagonal(basis, |n, m| p.detuning * n as f64 + p.phonon * m as f64);
    for (n, m) in basis.states() {
        // b†a |n, m⟩ = √n √(m+1) |n−1, m+1⟩
        if n > 0 && basis.contains(n - 1, m + 1) {
            let amp = ((n * (m + 1)) as f64).sqrt();
            let (from, to) = (basis.index(n, m), basis.index(n - 1, m + 1));
            h.matrix[(to, from)] = p.coupling.conj() * amp;
            h.matrix[(from, to)] = p.coupling * amp;
        }
    }
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SqueezeMethod {
    /// `exp(r(a†b† − ab))` of the truncated generator, via its spectrum.
    Exponential,
    /// `exp(tanh r a†b†) · cosh r^{−(N_a + N_b + 1)} · exp(−tanh r ab)`.
    Factored,
}

pub fn build_squeeze_operator(r: f64, n_max: usize, method: SqueezeMethod) -> Result<FockOperator> {
    if !r.is_finite() {
        return Err(Error::invalid("squeeze parameter", "must be finite"));
    }
    let basis = FockBasis::new(n_max)?;
    match method {
        SqueezeMethod::Exponential => squeeze_exponential(r, basis),
        SqueezeMethod::Factored => Ok(squeeze_factored(r, basis)),
    }
}

fn squeeze_exponential(r: f64, basis: FockBasis) -> Result<FockOperator> {
    let a = FockOperator::photon_lowering(basis);
    let b = FockOperator::phonon_lowering(basis);
    let pair_lowering = &a * &b;
    let generator = &pair_lowering.adjoint() - &pair_lowering;
    // exp(rG) = exp(−iK) with Hermitian K = i r G
    let k = generator.scale(Complex64::new(0.0, r));
    Ok(k.eigen()?.propagator(1.0))
}

fn squeeze_factored(r: f64, basis: FockBasis) -> FockOperator {
    let t = r.tanh();
    let log_cosh = r.cosh().ln();
    // (a†b†)^k |n,m⟩ = √((n+k)!/n! · (m+k)!/m!) |n+k, m+k⟩
    let raise = FockOperator::from_fn(basis, |(n1, m1), (n0, m0)| {
        if n1 < n0 || m1 < m0 || n1 - n0 != m1 - m0 {
            return ZERO;
        }
        let k = n1 - n0;
        let mut c = 1.0;
        for j in 1..=k {
            c *= t / j as f64 * (((n0 + j) * (m0 + j)) as f64).sqrt();
        }
        Complex64::new(c, 0.0)
    });
    let lower = FockOperator::from_fn(basis, |(n1, m1), (n0, m0)| {
        if n0 < n1 || m0 < m1 || n0 - n1 != m0 - m1 {
            return ZERO;
        }
        let k = n0 - n1;
        let mut c = 1.0;
        for j in 1..=k {
            c *= -t / j as f64 * (((n1 + j) * (m1 + j)) as f64).sqrt();
        }
        Complex64::new(c, 0.0)
    });
    let middle = FockOperator::diagonal(basis, |n, m| (-log_cosh * (n + m + 1) as f64).exp());
    &(&raise * &middle) * &lower
}

/// `exp(−iHt) ψ0` via the spectral decomposition of `H`.
pub fn evolve_state(h: &FockOperator, psi0: &FockState, t: f64) -> Result<FockState> {
    h.eigen()?.evolve(psi0, t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumberExpectations {
    pub photons: f64,
    pub phonons: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    basis: FockBasis,
    amplitudes: Vec<Complex64>,
}

impl FockState {
    pub fn vacuum(basis: FockBasis) -> FockState {
        let mut amplitudes = vec![ZERO; basis.dim()];
        amplitudes[0] = ONE;
        FockState { basis, amplitudes }
    }

    pub fn number_state(basis: FockBasis, photons: usize, phonons: usize) -> Result<FockState> {
        if !basis.contains(photons, phonons) {
            return Err(Error::invalid(
                "number state",
                format!("|{photons},{phonons}> lies outside n_max = {}", basis.n_max()),
            ));
        }
        let mut amplitudes = vec![ZERO; basis.dim()];
        amplitudes[basis.index(photons, phonons)] = ONE;
        Ok(FockState { basis, amplitudes })
    }

    pub fn from_amplitudes(basis: FockBasis, amplitudes: Vec<Complex64>) -> Result<FockState> {
        if amplitudes.len() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                found: amplitudes.len(),
            });
        }
        Ok(FockState { basis, amplitudes })
    }

    /// `Σ c_n |n, n⟩` for real pair amplitudes `c_n`; entries past `n_max` are dropped.
    pub fn from_pair_amplitudes(basis: FockBasis, pairs: &[f64]) -> FockState {
        let mut amplitudes = vec![ZERO; basis.dim()];
        for (n, c) in pairs.iter().enumerate().take(basis.n_max() + 1) {
            amplitudes[basis.index(n, n)] = Complex64::new(*c, 0.0);
        }
        FockState { basis, amplitudes }
    }

    pub fn basis(&self) -> FockBasis {
        self.basis
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, photons: usize, phonons: usize) -> Complex64 {
        self.amplitudes[self.basis.index(photons, phonons)]
    }

    pub fn probability(&self, photons: usize, phonons: usize) -> f64 {
        self.amplitude(photons, phonons).norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<FockState> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::invalid("state", "cannot normalize a zero state"));
        }
        Ok(FockState {
            basis: self.basis,
            amplitudes: self.amplitudes.iter().map(|a| a / norm).collect(),
        })
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &FockState) -> Result<Complex64> {
        check_same_basis(self.basis, other.basis)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn fidelity(&self, other: &FockState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    pub fn number_expectations(&self) -> NumberExpectations {
        let mut photons = 0.0;
        let mut phonons = 0.0;
        for (i, a) in self.amplitudes.iter().enumerate() {
            let (n, m) = self.basis.state(i);
            let p = a.norm_sqr();
            photons += n as f64 * p;
            phonons += m as f64 * p;
        }
        NumberExpectations { photons, phonons }
    }

    /// Largest `|⟨n, m|ψ⟩|` with `n ≠ m`.
    pub fn max_off_pair_amplitude(&self) -> f64 {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                let (n, m) = self.basis.state(*i);
                n != m
            })
            .map(|(_, a)| a.norm())
            .fold(0.0, f64::max)
    }

    /// Plain-text dump: one `index real imag` line per basis state.
    pub fn to_dump(&self) -> String {
        let mut out = format!(
            "# fock-state n_max={} dim={}\n# index real imag\n",
            self.basis.n_max,
            self.basis.dim()
        );
        for (i, z) in self.amplitudes.iter().enumerate() {
            let _ = writeln!(out, "{i} {:.17e} {:.17e}", z.re, z.im);
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<FockState> {
        let basis = parse_dump_header(text, "fock-state")?;
        let mut amplitudes = vec![ZERO; basis.dim()];
        for line in data_lines(text) {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::invalid("dump", format!("bad state line `{line}`")));
            }
            let i = parse_index(fields[0], basis)?;
            amplitudes[i] = Complex64::new(parse_float(fields[1])?, parse_float(fields[2])?);
        }
        Ok(FockState { basis, amplitudes })
    }
}

fn parse_dump_header(text: &str, kind: &str) -> Result<FockBasis> {
    let header = text
        .lines()
        .next()
        .ok_or_else(|| Error::invalid("dump", "empty input"))?;
    let mut words = header.trim_start_matches('#').split_whitespace();
    if words.next() != Some(kind) {
        return Err(Error::invalid("dump", format!("expected a {kind} header")));
    }
    let n_max = words
        .find_map(|w| w.strip_prefix("n_max="))
        .and_then(|v| v.parse::<usize>().ok())
        .ok_or_else(|| Error::invalid("dump", "missing n_max in header"))?;
    FockBasis::new(n_max)
}

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn parse_index(s: &str, basis: FockBasis) -> Result<usize> {
    s.parse::<usize>()
        .ok()
        .filter(|&i| i < basis.dim())
        .ok_or_else(|| Error::invalid("dump", format!("bad index `{s}`")))
}

fn parse_float(s: &str) -> Result<f64> {
    s.parse::<f64>()
        .map_err(|_| Error::invalid("dump", format!("bad number `{s}`")))
}
