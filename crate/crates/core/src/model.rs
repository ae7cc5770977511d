//! Dimensionless model parameters, unit reduction, and the derived scalar
//! quantities (β, η, ζ^±) with fixed branch conventions.
//!
//! Branch convention used everywhere: principal square root and logarithm,
//! cut along the non-positive reals, so η(z̄) = conj(η(z)) off the cut.

use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Which spin-orbit coupling the Hamiltonian carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    R,
    D,
}

impl Variant {
    /// +1 for R, −1 for D; the sign by which the two variants differ in
    /// β and in the level argument 2n+1 ∓ s·sign b.
    pub fn sign(self) -> f64 {
        match self {
            Variant::R => 1.0,
            Variant::D => -1.0,
        }
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" | "rashba" | "Rashba" => Ok(Variant::R),
            "D" | "d" | "dresselhaus" | "Dresselhaus" => Ok(Variant::D),
            other => Err(Error::InvalidParameter(format!(
                "variant must be R or D, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::R => "R",
            Variant::D => "D",
        })
    }
}

/// Dimensionless Hamiltonian parameters: coupling κ, reduced field b,
/// Zeeman factor γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub variant: Variant,
    pub kappa: f64,
    pub b: f64,
    pub gamma: f64,
}

impl ModelParams {
    pub fn new(variant: Variant, kappa: f64, b: f64, gamma: f64) -> Result<Self> {
        if !(kappa.is_finite() && b.is_finite() && gamma.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "kappa, b, gamma must be finite, got ({kappa}, {b}, {gamma})"
            )));
        }
        Ok(ModelParams {
            variant,
            kappa,
            b,
            gamma,
        })
    }

    /// β = (γ ± 1)·b/(2κ), the σ_z shift that squares V = U + βσ_z into a
    /// diagonal operator. Defined as 0 when b = 0 (free case).
    pub fn beta(&self) -> Result<f64> {
        if self.b == 0.0 {
            return Ok(0.0);
        }
        if self.kappa == 0.0 {
            return Err(Error::UnsupportedParameter(
                "beta needs kappa != 0 when b != 0 (the Hamiltonian degenerates; \
                 use the diagonal Zeeman-shifted kernel instead)"
                    .into(),
            ));
        }
        Ok((self.gamma + self.variant.sign()) * self.b / (2.0 * self.kappa))
    }

    /// η = √(z + κ² + β²), principal branch.
    pub fn eta(&self, z: Complex64) -> Result<Complex64> {
        let w = z + self.kappa * self.kappa + {
            let beta = self.beta()?;
            beta * beta
        };
        principal_sqrt(w, "eta argument z + kappa^2 + beta^2")
    }

    /// ζ^±(±b) = (η ± κ)² ± b − β² with the first inner sign from `sign`,
    /// the b-term sign fixed by the variant (+b for R, −b for D) and flipped
    /// by `field_sign` = −1. Both arguments must be ±1.
    pub fn zeta_pm(&self, z: Complex64, sign: i32, field_sign: i32) -> Result<Complex64> {
        debug_assert!(sign == 1 || sign == -1);
        debug_assert!(field_sign == 1 || field_sign == -1);
        let beta = self.beta()?;
        let eta = self.eta(z)?;
        let root = eta + self.kappa * sign as f64;
        let field = self.variant.sign() * field_sign as f64 * self.b;
        Ok(root * root + field - beta * beta)
    }
}

/// Unit system for physical inputs. The flux quantum is 2πħc/e in Gaussian
/// units and 2πħ/e in SI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitSystem {
    Si,
    Gaussian,
}

/// Physical inputs from which the dimensionless parameters are derived.
/// Lengths are measured in units of `length_scale` (same base unit as the
/// constants: meters for SI, centimeters for Gaussian); energies come out
/// in units of ħ²/(2 m* length_scale²).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub unit_system: UnitSystem,
    pub effective_mass: f64,
    pub rashba_alpha: f64,
    pub dresselhaus_alpha: f64,
    pub g_factor: f64,
    pub field: f64,
    pub length_scale: f64,
    pub electron_mass: f64,
    pub hbar: f64,
    pub charge: f64,
    pub light_speed: f64,
}

// CODATA 2018.
const HBAR_SI: f64 = 1.054_571_817e-34; // J s
const E_SI: f64 = 1.602_176_634e-19; // C
const ME_SI: f64 = 9.109_383_7015e-31; // kg
const C_SI: f64 = 2.997_924_58e8; // m/s

impl PhysicalParams {
    /// SI constants pre-filled; couplings and field zeroed, length scale 1 m.
    pub fn si() -> Self {
        PhysicalParams {
            unit_system: UnitSystem::Si,
            effective_mass: ME_SI,
            rashba_alpha: 0.0,
            dresselhaus_alpha: 0.0,
            g_factor: 0.0,
            field: 0.0,
            length_scale: 1.0,
            electron_mass: ME_SI,
            hbar: HBAR_SI,
            charge: E_SI,
            light_speed: C_SI,
        }
    }

    /// Gaussian-cgs constants pre-filled (erg s, statC, g, cm/s).
    pub fn gaussian() -> Self {
        PhysicalParams {
            unit_system: UnitSystem::Gaussian,
            effective_mass: ME_SI * 1e3,
            rashba_alpha: 0.0,
            dresselhaus_alpha: 0.0,
            g_factor: 0.0,
            field: 0.0,
            length_scale: 1.0,
            electron_mass: ME_SI * 1e3,
            hbar: HBAR_SI * 1e7,
            charge: 4.803_204_712e-10,
            light_speed: C_SI * 1e2,
        }
    }

    fn validate(&self) -> Result<()> {
        let all = [
            self.effective_mass,
            self.rashba_alpha,
            self.dresselhaus_alpha,
            self.g_factor,
            self.field,
            self.length_scale,
            self.electron_mass,
            self.hbar,
            self.charge,
            self.light_speed,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "physical parameters must be finite".into(),
            ));
        }
        if self.effective_mass <= 0.0
            || self.electron_mass <= 0.0
            || self.hbar <= 0.0
            || self.charge.abs() <= 0.0
            || self.light_speed <= 0.0
            || self.length_scale <= 0.0
        {
            return Err(Error::InvalidParameter(
                "masses, hbar, |e|, c, length_scale must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Magnetic flux quantum in the chosen unit system.
    pub fn flux_quantum(&self) -> f64 {
        match self.unit_system {
            UnitSystem::Si => 2.0 * std::f64::consts::PI * self.hbar / self.charge,
            UnitSystem::Gaussian => {
                2.0 * std::f64::consts::PI * self.hbar * self.light_speed / self.charge
            }
        }
    }

    /// Energy unit ħ²/(2 m* ℓ²) that converts dimensionless z back to
    /// physical energy.
    pub fn energy_scale(&self) -> f64 {
        self.hbar * self.hbar / (2.0 * self.effective_mass * self.length_scale.powi(2))
    }

    /// Reduce to dimensionless parameters:
    /// κ = m* α ℓ/ħ², b = 2π B ℓ²/Φ₀, γ = −(g*/2)(m*/m_e).
    pub fn dimensionless(&self, variant: Variant) -> Result<ModelParams> {
        self.validate()?;
        let alpha = match variant {
            Variant::R => self.rashba_alpha,
            Variant::D => self.dresselhaus_alpha,
        };
        let kappa = self.effective_mass * alpha * self.length_scale / (self.hbar * self.hbar);
        let b = 2.0 * std::f64::consts::PI * self.field * self.length_scale.powi(2)
            / self.flux_quantum();
        let gamma = -(self.g_factor / 2.0) * (self.effective_mass / self.electron_mass);
        ModelParams::new(variant, kappa, b, gamma)
    }
}

/// A point in the dimensionless plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "point components must be finite, got ({x}, {y})"
            )));
        }
        Ok(Point2 { x, y })
    }

    /// The wedge r ∧ r′ = x·y′ − y·x′ entering the magnetic kernel phase.
    pub fn wedge(&self, other: &Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn distance(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Spectral parameter z with the "a+bi" textual form used by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexEnergy {
    pub re: f64,
    pub im: f64,
}

impl ComplexEnergy {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexEnergy { re, im }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

impl From<Complex64> for ComplexEnergy {
    fn from(z: Complex64) -> Self {
        ComplexEnergy { re: z.re, im: z.im }
    }
}

impl FromStr for ComplexEnergy {
    type Err = Error;

    /// Grammar: `a`, `bi`, `a+bi`, `a-bi`, with optional spaces and the
    /// shorthands `i`, `-i`, `+i` for unit imaginary parts.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::InvalidParameter("empty complex literal".into()));
        }
        let bad = || Error::InvalidParameter(format!("cannot parse complex literal {s:?}"));
        let parse_im = |u: &str| -> Result<f64> {
            match u {
                "" | "+" => Ok(1.0),
                "-" => Ok(-1.0),
                _ => u.parse::<f64>().map_err(|_| bad()),
            }
        };
        // split position: a sign that is not part of an exponent, searched
        // from the end so the leading sign of the real part survives
        let body = &t[..t.len() - 1];
        if t.ends_with('i') {
            let split = body
                .char_indices()
                .rev()
                .find(|&(k, c)| {
                    (c == '+' || c == '-')
                        && k > 0
                        && !matches!(body.as_bytes()[k - 1], b'e' | b'E')
                })
                .map(|(k, _)| k);
            match split {
                Some(k) => {
                    let re = body[..k].parse::<f64>().map_err(|_| bad())?;
                    let im = parse_im(&body[k..])?;
                    Ok(ComplexEnergy::new(re, im))
                }
                None => Ok(ComplexEnergy::new(0.0, parse_im(body)?)),
            }
        } else {
            let re = t.parse::<f64>().map_err(|_| bad())?;
            Ok(ComplexEnergy::new(re, 0.0))
        }
    }
}

impl fmt::Display for ComplexEnergy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.im < 0.0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Principal square root, rejecting arguments on the cut (−∞, 0].
pub fn principal_sqrt(w: Complex64, context: &str) -> Result<Complex64> {
    if w.im == 0.0 && w.re <= 0.0 {
        return Err(Error::BranchCut(format!(
            "{context} = {w} lies on the branch cut (-inf, 0]"
        )));
    }
    Ok(w.sqrt())
}
