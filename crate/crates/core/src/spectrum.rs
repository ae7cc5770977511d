//! Closed-form spectra: the free spin-orbit continuum, Landau levels, the
//! discrete spin-orbit levels in a uniform field, and the square-root
//! spectral correspondence for off-diagonal block operators.

use crate::model::ModelParams;
use crate::{Error, Result};
use serde::Serialize;
use std::fmt::Write as _;

/// Index labels of one closed-form level: Landau index n, spin label s,
/// and the ± branch of the square root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LevelIndex {
    pub n: u32,
    pub s: i8,
    pub branch: i8,
}

/// One table entry: an energy with every (n, s, branch) that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct LevelEntry {
    pub energy: f64,
    pub indices: Vec<LevelIndex>,
    pub note: String,
}

/// Sorted level table; numerically equal energies are merged and keep all
/// contributing indices.
#[derive(Debug, Clone, Serialize)]
pub struct LevelTable {
    pub entries: Vec<LevelEntry>,
}

const MERGE_TOL: f64 = 1e-12;

impl LevelTable {
    pub(crate) fn from_raw(mut raw: Vec<(f64, LevelIndex, String)>) -> Self {
        raw.sort_by(|a, z| a.0.total_cmp(&z.0));
        let mut entries: Vec<LevelEntry> = Vec::new();
        for (energy, idx, note) in raw {
            match entries.last_mut() {
                Some(last) if (energy - last.energy).abs() <= MERGE_TOL * energy.abs().max(1.0) => {
                    last.indices.push(idx);
                    if !note.is_empty() && !last.note.contains(&note) {
                        if !last.note.is_empty() {
                            last.note.push_str("; ");
                        }
                        last.note.push_str(&note);
                    }
                }
                _ => entries.push(LevelEntry {
                    energy,
                    indices: vec![idx],
                    note,
                }),
            }
        }
        LevelTable { entries }
    }

    pub fn energies(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.energy).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// CSV with columns energy,n,s,branch; merged entries emit one row per
    /// contributing index.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("energy,n,s,branch\n");
        for e in &self.entries {
            for idx in &e.indices {
                let _ = writeln!(out, "{},{},{},{}", e.energy, idx.n, idx.s, idx.branch);
            }
        }
        out
    }
}

/// The zero-field spectrum: a purely continuous half-line.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FreeSpectrum {
    pub threshold: f64,
    pub purely_continuous: bool,
}

/// Zero-field spectrum [−κ², ∞), purely continuous.
pub fn free_spectrum(params: &ModelParams) -> Result<FreeSpectrum> {
    if params.b != 0.0 {
        return Err(Error::WrongCase(format!(
            "free spectrum needs b = 0, got b = {}",
            params.b
        )));
    }
    Ok(FreeSpectrum {
        threshold: -params.kappa * params.kappa,
        purely_continuous: true,
    })
}

/// Landau levels |b|(2n+1) of the spinless kinetic operator, n = 0..n_max.
pub fn landau_levels(b: f64, n_max: u32) -> Result<LevelTable> {
    if b == 0.0 || !b.is_finite() {
        return Err(Error::WrongCase(
            "landau levels need b != 0; the b = 0 spectrum is continuous".into(),
        ));
    }
    let raw = (0..=n_max)
        .map(|n| {
            (
                b.abs() * (2 * n + 1) as f64,
                LevelIndex { n, s: 1, branch: 1 },
                String::from("spinless kinetic level"),
            )
        })
        .collect();
    Ok(LevelTable::from_raw(raw))
}

/// Landau levels with the Zeeman shift, |b|(2n+1) + s·γb: the exact
/// spectrum of the degenerate κ = 0 Hamiltonian in a field.
pub fn zeeman_landau_levels(b: f64, gamma: f64, n_max: u32) -> Result<LevelTable> {
    if b == 0.0 || !b.is_finite() {
        return Err(Error::WrongCase(
            "zeeman-shifted landau levels need b != 0".into(),
        ));
    }
    let mut raw = Vec::new();
    for n in 0..=n_max {
        for s in [1i8, -1i8] {
            raw.push((
                b.abs() * (2 * n + 1) as f64 + s as f64 * gamma * b,
                LevelIndex { n, s, branch: 1 },
                String::from("zeeman-shifted kinetic level"),
            ));
        }
    }
    Ok(LevelTable::from_raw(raw))
}

// Level argument A(n, s) = |b|(2n+1 − sv·s·sign b); integer part first so
// A = 0 is exact.
fn level_argument(params: &ModelParams, n: u32, s: i8) -> f64 {
    let sv = params.variant.sign();
    let sb = if params.b > 0.0 { 1.0 } else { -1.0 };
    params.b.abs() * ((2 * n + 1) as f64 - sv * s as f64 * sb)
}

// The single state at zero level argument is unpaired; only the branch
// whose value is (1 + sv·γ)|b| corresponds to it.
fn kept_zero_argument_value(params: &ModelParams) -> f64 {
    (1.0 + params.variant.sign() * params.gamma) * params.b.abs()
}

fn branch_value(params: &ModelParams, beta: f64, a: f64, branch: i8) -> f64 {
    a + branch as f64 * 2.0 * params.kappa * (beta * beta + a).sqrt()
}

/// Discrete spin-orbit levels ε^±(n, s) = A ± 2κ√(β² + A) with
/// A = |b|(2n+1 − sv·s·sign b), for n ≤ n_max, s = ±1, both branches.
/// At A = 0 only the branch matching the unpaired state is kept.
pub fn spin_orbit_levels(params: &ModelParams, n_max: u32) -> Result<LevelTable> {
    if params.b == 0.0 {
        return Err(Error::WrongCase(
            "spin-orbit levels need b != 0; use free_spectrum for the zero-field case".into(),
        ));
    }
    if params.kappa == 0.0 {
        return Err(Error::WrongCase(
            "kappa = 0 degenerates to zeeman_landau_levels(b, gamma, n_max)".into(),
        ));
    }
    let beta = params.beta()?;
    let kept0 = kept_zero_argument_value(params);
    let scale = params.b.abs() * (1.0 + params.gamma.abs());
    let mut raw = Vec::new();
    for n in 0..=n_max {
        for s in [1i8, -1i8] {
            let a = level_argument(params, n, s);
            for branch in [1i8, -1i8] {
                let e = branch_value(params, beta, a, branch);
                if a == 0.0 && (e - kept0).abs() > 1e-12 * scale.max(1.0) {
                    continue; // spurious branch: no eigenstate behind it
                }
                raw.push((e, LevelIndex { n, s, branch }, String::new()));
            }
        }
    }
    Ok(LevelTable::from_raw(raw))
}

/// Energy of a single labeled level; rejects the spurious branch at zero
/// level argument.
pub fn level_energy(params: &ModelParams, idx: LevelIndex) -> Result<f64> {
    if params.b == 0.0 || params.kappa == 0.0 {
        return Err(Error::WrongCase(
            "labeled levels exist only for b != 0 and kappa != 0".into(),
        ));
    }
    let beta = params.beta()?;
    let a = level_argument(params, idx.n, idx.s);
    let e = branch_value(params, beta, a, idx.branch);
    if a == 0.0 {
        let kept0 = kept_zero_argument_value(params);
        if (e - kept0).abs() > 1e-12 * (params.b.abs() * (1.0 + params.gamma.abs())).max(1.0) {
            return Err(Error::Spectrum(format!(
                "branch {} at the zero level argument has no eigenstate",
                idx.branch
            )));
        }
    }
    Ok(e)
}

/// Spectrum of the block operator [[m, A*], [A, −m]] from the spectra of
/// A*A and AA*: −√(spec(AA*) + m²) ∪ √(spec(A*A) + m²). Inputs must be
/// non-negative (values above −1e-10 are clamped to zero to absorb
/// eigensolver noise); m ≥ 0.
pub fn susy_spectrum_map(
    spec_aastar: &[f64],
    spec_astara: &[f64],
    m: f64,
) -> Result<Vec<f64>> {
    if !(m >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "block mass m must be >= 0, got {m}"
        )));
    }
    let clamp = |x: f64| -> Result<f64> {
        if x < -1e-10 {
            Err(Error::Spectrum(format!(
                "negative element {x} in a spectrum that must be non-negative"
            )))
        } else {
            Ok(x.max(0.0))
        }
    };
    let mut out = Vec::with_capacity(spec_aastar.len() + spec_astara.len());
    for &x in spec_aastar {
        out.push(-(clamp(x)? + m * m).sqrt());
    }
    for &x in spec_astara {
        out.push((clamp(x)? + m * m).sqrt());
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Distance from z to the spectrum of the requested Hamiltonian; used to
/// guard kernel evaluations against poles and the continuum.
pub fn distance_to_spectrum(params: &ModelParams, z: num_complex::Complex64) -> Result<f64> {
    if params.b == 0.0 {
        let threshold = -params.kappa * params.kappa;
        // distance to the half-line [threshold, inf)
        return Ok(if z.re >= threshold {
            z.im.abs()
        } else {
            (z.re - threshold).hypot(z.im)
        });
    }
    // enumerate levels out past Re z; beyond that every level is farther
    let reach = z.re.abs() + 4.0 * params.kappa * params.kappa + 4.0 * z.norm().sqrt() + 10.0;
    let n_max = ((reach / (2.0 * params.b.abs())).ceil() as u32).clamp(8, 100_000);
    let table = if params.kappa == 0.0 {
        zeeman_landau_levels(params.b, params.gamma, n_max)?
    } else {
        spin_orbit_levels(params, n_max)?
    };
    let mut best = f64::INFINITY;
    for e in table.energies() {
        let d = (z.re - e).hypot(z.im);
        if d < best {
            best = d;
        }
    }
    Ok(best)
}
