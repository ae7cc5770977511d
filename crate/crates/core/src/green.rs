//! Closed-form 2x2 resolvent kernels of the planar spin-orbit Hamiltonians.
//!
//! Zero field: scalar McDonald kernel `K_0(sqrt(-z) |r-r'|)/2pi` and the
//! entrywise spin-orbit kernel built from it at the shifted arguments
//! `zeta_pm = sigma +/- i kappa`, `sigma = sqrt(-(z+kappa^2))`.
//!
//! Uniform field: scalar kernels
//! `G0 = e_g * Gamma(a) Psi(a,1;X)` and `F0 = -e_g * Gamma(a+1) Psi(a+1,2;X)`
//! with `a = 1/2 - z/2|b|`, `X = |b| rho^2 / 2` and the gauge-phase Gaussian
//! prefactor `e_g = exp(-i b (r^r')/2 - |b| rho^2/4) / 4pi` (symmetric gauge,
//! vector potential `(-b y/2, b x/2)`).  The spin-orbit kernel combines G0/F0
//! at the four spectral arguments `zeta_pm(z, +/-1, +/-1)`.
//!
//! Two independent assembly paths exist for the magnetic off-diagonals:
//! the default applies the first-order coupling operators to the G0
//! differences by analytic differentiation (product rule on the
//! exponential-times-Psi form); [`green_magnetic_entrywise`] uses the closed
//! entrywise formulas with F0.  They must agree; the equivalence is part of
//! the test suite.  Likewise [`green_free_combination`] re-derives the free
//! kernel through the scalar-resolvent combination identity.

use crate::model::{principal_sqrt, ComplexEnergy, ModelParams, Point2, Variant};
use crate::specfun::{bessel_k_pair, gamma_tricomi, SeriesControl};
use crate::spectrum::distance_to_spectrum;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Evaluation points closer than this are refused; the renormalized-kernel
/// module owns the diagonal.
pub const MIN_SEPARATION: f64 = 1e-12;
/// Evaluations closer to the spectrum than this raise a pole error
/// (Gamma-pole overflow control).
pub const MIN_SPECTRAL_DISTANCE: f64 = 1e-10;

/// One 2x2 kernel value.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SpinKernel {
    pub g11: Complex64,
    pub g12: Complex64,
    pub g21: Complex64,
    pub g22: Complex64,
}

impl SpinKernel {
    fn diagonal(g11: Complex64, g22: Complex64) -> Self {
        SpinKernel {
            g11,
            g12: Complex64::ZERO,
            g21: Complex64::ZERO,
            g22,
        }
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.g11, self.g12, self.g21, self.g22]
    }

    /// Largest entrywise absolute difference; the metric used by the
    /// path-equivalence and symmetry tests.
    pub fn max_abs_diff(&self, other: &SpinKernel) -> f64 {
        self.entries()
            .iter()
            .zip(other.entries().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// A kernel evaluation request: parameters, the two points, and the energy.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct KernelRequest {
    pub params: ModelParams,
    pub r: Point2,
    pub r_prime: Point2,
    pub z: ComplexEnergy,
}

impl KernelRequest {
    pub fn new(params: ModelParams, r: Point2, r_prime: Point2, z: Complex64) -> Self {
        KernelRequest {
            params,
            r,
            r_prime,
            z: ComplexEnergy::new(z.re, z.im),
        }
    }
}

fn check_separation(r: &Point2, r_prime: &Point2) -> Result<f64> {
    let rho = r.distance(r_prime);
    if rho < MIN_SEPARATION {
        return Err(Error::Singularity(format!(
            "evaluation points coincide (|r-r'| = {rho:.3e} < {MIN_SEPARATION:.0e}); \
             the on-diagonal value is defined only after renormalization"
        )));
    }
    Ok(rho)
}

pub(crate) fn check_off_spectrum(params: &ModelParams, z: Complex64) -> Result<()> {
    let d = distance_to_spectrum(params, z)?;
    if d <= MIN_SPECTRAL_DISTANCE {
        return Err(Error::Pole {
            location: z,
            context: format!("z within {d:.3e} of the spectrum"),
        });
    }
    Ok(())
}

/// Scalar zero-field kernel `K_0(sqrt(-z) |r-r'|)/2pi`.
pub fn green0_free(r: &Point2, r_prime: &Point2, z: Complex64) -> Result<Complex64> {
    let rho = check_separation(r, r_prime)?;
    green0_free_radial(z, rho)
}

/// Radial form of [`green0_free`]; the kernel depends on the points only
/// through their distance.
pub fn green0_free_radial(z: Complex64, rho: f64) -> Result<Complex64> {
    if z.im == 0.0 && z.re >= 0.0 {
        return Err(Error::Spectrum(format!(
            "z = {z} lies on the essential spectrum [0, inf) of the scalar kernel"
        )));
    }
    let root = principal_sqrt(-z, "sqrt(-z) in the scalar kernel")?;
    let ctl = SeriesControl::default();
    Ok(crate::specfun::bessel_k0(root * rho, &ctl)? / (2.0 * PI))
}

/// Zero-field spin-orbit kernel in the entrywise closed form.
pub fn green_free(req: &KernelRequest) -> Result<SpinKernel> {
    let p = &req.params;
    if p.b != 0.0 {
        return Err(Error::WrongCase(format!(
            "b = {} is nonzero: use the magnetic kernel",
            p.b
        )));
    }
    let z = req.z.value();
    let rho = check_separation(&req.r, &req.r_prime)?;
    check_off_spectrum(p, z)?;

    if p.kappa == 0.0 {
        let g = green0_free_radial(z, rho)?;
        return Ok(SpinKernel::diagonal(g, g));
    }

    let dx = req.r.x - req.r_prime.x;
    let dy = req.r.y - req.r_prime.y;
    let u = c64(dx, -dy);
    let v = c64(dx, dy);
    // sigma has Re > 0 off the spectrum half-line [-kappa^2, inf)
    let sigma = principal_sqrt(-(z + p.kappa * p.kappa), "sqrt(-(z+kappa^2))")?;
    let zeta_p = sigma + c64(0.0, p.kappa);
    let zeta_m = sigma - c64(0.0, p.kappa);
    let ctl = SeriesControl::default();
    let kp = bessel_k_pair(zeta_p * rho, &ctl)?;
    let km = bessel_k_pair(zeta_m * rho, &ctl)?;

    let diag = ((kp.k0 + km.k0) - (kp.k0 - km.k0) * p.kappa / (c64(0.0, 1.0) * sigma))
        / (4.0 * PI);
    let dq = zeta_p * kp.k1 - zeta_m * km.k1;
    let cq = dq / (c64(0.0, 4.0 * PI * rho) * sigma);
    let (g12, g21) = match p.variant {
        Variant::R => (-u * cq, v * cq),
        Variant::D => (c64(0.0, -1.0) * v * cq, c64(0.0, -1.0) * u * cq),
    };
    Ok(SpinKernel {
        g11: diag,
        g12,
        g21,
        g22: diag,
    })
}

/// Zero-field kernel assembled through the scalar-resolvent combination
/// identity instead of the entrywise closed form: the spin-orbit resolvent is
/// `((U - kappa)/2eta) (S_- - S_+) + (S_- + S_+)/2` with scalar kernels `S_-+`
/// at the spectral arguments `(eta -+ kappa)^2`, `eta^2 = z + kappa^2`, and
/// `U` applied as a differential expression.  Used to cross-validate
/// [`green_free`]; the combination is even in `eta`, so either square root
/// works — we take `eta = i sigma`.
pub fn green_free_combination(req: &KernelRequest) -> Result<SpinKernel> {
    let p = &req.params;
    if p.b != 0.0 {
        return Err(Error::WrongCase(format!(
            "b = {} is nonzero: use the magnetic kernel",
            p.b
        )));
    }
    let z = req.z.value();
    let rho = check_separation(&req.r, &req.r_prime)?;
    check_off_spectrum(p, z)?;

    let dx = req.r.x - req.r_prime.x;
    let dy = req.r.y - req.r_prime.y;
    let u = c64(dx, -dy);
    let v = c64(dx, dy);
    let sigma = principal_sqrt(-(z + p.kappa * p.kappa), "sqrt(-(z+kappa^2))")?;
    let eta = c64(0.0, 1.0) * sigma;
    let w_m = (eta - p.kappa) * (eta - p.kappa);
    let w_p = (eta + p.kappa) * (eta + p.kappa);
    let ctl = SeriesControl::default();
    // scalar kernel and its radial-derivative companion at spectral argument w
    let eval = |w: Complex64| -> Result<(Complex64, Complex64)> {
        let root = principal_sqrt(-w, "sqrt(-w) of a combination argument")?;
        let pair = bessel_k_pair(root * rho, &ctl)?;
        Ok((pair.k0 / (2.0 * PI), root * pair.k1 / (2.0 * PI)))
    };
    let (s_m, t_m) = eval(w_m)?;
    let (s_p, t_p) = eval(w_p)?;

    let diag = (s_m + s_p) / 2.0 - (s_m - s_p) * p.kappa / (2.0 * eta);
    let dt = (t_m - t_p) / (2.0 * eta * rho);
    let (g12, g21) = match p.variant {
        Variant::R => (-u * dt, v * dt),
        Variant::D => (c64(0.0, -1.0) * v * dt, c64(0.0, -1.0) * u * dt),
    };
    Ok(SpinKernel {
        g11: diag,
        g12,
        g21,
        g22: diag,
    })
}

/// Nearest kinetic Landau level `|b|(2n+1)` and the distance of z to it.
pub(crate) fn nearest_landau(b: f64, z: Complex64) -> (u32, f64) {
    let ab = b.abs();
    let t = (z.re / ab - 1.0) / 2.0;
    let mut best = (0u32, f64::INFINITY);
    for cand in [t.floor(), t.ceil()] {
        let n = cand.max(0.0) as u32;
        let d = (z - ab * (2.0 * f64::from(n) + 1.0)).norm();
        if d < best.1 {
            best = (n, d);
        }
    }
    best
}

struct ScalarGeometry {
    e_g: Complex64,
    x_arg: f64,
    abs_b: f64,
}

fn scalar_geometry(b: f64, r: &Point2, r_prime: &Point2, rho: f64) -> ScalarGeometry {
    let abs_b = b.abs();
    let wedge = r.wedge(r_prime);
    let exponent = c64(-abs_b * rho * rho / 4.0, -b * wedge / 2.0);
    ScalarGeometry {
        e_g: exponent.exp() / (4.0 * PI),
        x_arg: abs_b * rho * rho / 2.0,
        abs_b,
    }
}

fn check_field(b: f64) -> Result<()> {
    if b == 0.0 {
        return Err(Error::WrongCase(
            "b = 0: use the zero-field kernel".to_string(),
        ));
    }
    Ok(())
}

pub(crate) fn check_off_landau(b: f64, z: Complex64) -> Result<()> {
    let (n, d) = nearest_landau(b, z);
    if d <= MIN_SPECTRAL_DISTANCE {
        return Err(Error::Pole {
            location: z,
            context: format!("z within {d:.3e} of the Landau level n = {n}"),
        });
    }
    Ok(())
}

/// Scalar magnetic kernel `G0 = e_g Gamma(a) Psi(a,1;X)`, `a = 1/2 - z/2|b|`.
pub fn green0_landau(b: f64, r: &Point2, r_prime: &Point2, z: Complex64) -> Result<Complex64> {
    check_field(b)?;
    let rho = check_separation(r, r_prime)?;
    check_off_landau(b, z)?;
    let geo = scalar_geometry(b, r, r_prime, rho);
    let a = 0.5 - z / (2.0 * geo.abs_b);
    let ctl = SeriesControl::default();
    Ok(geo.e_g * gamma_tricomi(a, 1, geo.x_arg, &ctl)?)
}

/// Companion scalar kernel `F0 = -e_g Gamma(a+1) Psi(a+1,2;X)`; carries the
/// derivative of G0 with respect to X.  Regular at the lowest level z = |b|
/// as a function (the Gamma pole cancels against the vanishing prefactor),
/// but the evaluation guard refuses the whole Landau set uniformly.
pub fn f0_landau(b: f64, r: &Point2, r_prime: &Point2, z: Complex64) -> Result<Complex64> {
    check_field(b)?;
    let rho = check_separation(r, r_prime)?;
    check_off_landau(b, z)?;
    let geo = scalar_geometry(b, r, r_prime, rho);
    let a = 0.5 - z / (2.0 * geo.abs_b);
    let ctl = SeriesControl::default();
    Ok(-geo.e_g * gamma_tricomi(a + 1.0, 2, geo.x_arg, &ctl)?)
}

/// Fused scalar values at one spectral argument: `a0 = Gamma(a) Psi(a,1;X)`
/// and `a1 = Gamma(a+1) Psi(a+1,2;X)`, so that `G0 = e_g a0`, `F0 = -e_g a1`,
/// and `d a0/dX = -a1`.
#[derive(Clone, Copy)]
struct ArgParts {
    a0: Complex64,
    a1: Complex64,
}

struct MagneticParts {
    eta: Complex64,
    beta: f64,
    u: Complex64,
    v: Complex64,
    e_g: Complex64,
    abs_b: f64,
    sb: f64,
    /// `[j][pm]`: j = 0 picks field sign +1, j = 1 field sign -1;
    /// pm = 0 is the `+kappa` argument, pm = 1 the `-kappa` one.
    parts: [[ArgParts; 2]; 2],
    // operator-path geometry: d/dx and d/dy of the exponent, and of X
    gx: Complex64,
    gy: Complex64,
    xx: f64,
    xy: f64,
}

/// Square root of `z + kappa^2 + beta^2` on whichever branch is available;
/// the kernel assembly is even in eta, so a real-z evaluation in a spectral
/// gap may take the imaginary root.
pub(crate) fn eta_any_branch(w: Complex64) -> Result<Complex64> {
    if w.norm() < 1e-14 {
        return Err(Error::UnsupportedParameter(format!(
            "z + kappa^2 + beta^2 = {w} ~ 0: the two-branch kernel assembly degenerates \
             at this isolated point"
        )));
    }
    if w.im == 0.0 && w.re < 0.0 {
        Ok(c64(0.0, (-w.re).sqrt()))
    } else {
        principal_sqrt(w, "eta")
    }
}

fn magnetic_parts(p: &ModelParams, r: &Point2, r_prime: &Point2, z: Complex64) -> Result<MagneticParts> {
    let rho = check_separation(r, r_prime)?;
    check_off_spectrum(p, z)?;
    let beta = p.beta()?;
    let eta = eta_any_branch(z + c64(p.kappa * p.kappa + beta * beta, 0.0))?;
    let geo = scalar_geometry(p.b, r, r_prime, rho);
    let sv = p.variant.sign();
    let ctl = SeriesControl::default();

    let dx = r.x - r_prime.x;
    let dy = r.y - r_prime.y;
    let mut parts = [[ArgParts {
        a0: Complex64::ZERO,
        a1: Complex64::ZERO,
    }; 2]; 2];
    for (j, fs) in [1.0, -1.0].iter().enumerate() {
        for (pm, sgn) in [1.0, -1.0].iter().enumerate() {
            let shifted = eta + sgn * p.kappa;
            let arg = shifted * shifted + sv * fs * p.b - beta * beta;
            let a = 0.5 - arg / (2.0 * geo.abs_b);
            parts[j][pm] = ArgParts {
                a0: gamma_tricomi(a, 1, geo.x_arg, &ctl)?,
                a1: gamma_tricomi(a + 1.0, 2, geo.x_arg, &ctl)?,
            };
        }
    }

    Ok(MagneticParts {
        eta,
        beta,
        u: c64(dx, -dy),
        v: c64(dx, dy),
        e_g: geo.e_g,
        abs_b: geo.abs_b,
        sb: p.b.signum(),
        parts,
        gx: c64(-geo.abs_b * dx / 2.0, -p.b * r_prime.y / 2.0),
        gy: c64(-geo.abs_b * dy / 2.0, p.b * r_prime.x / 2.0),
        xx: geo.abs_b * dx,
        xy: geo.abs_b * dy,
    })
}

impl MagneticParts {
    /// `G0(zeta_minus) - G0(zeta_plus)` for field branch j.
    fn dg(&self, j: usize) -> Complex64 {
        self.e_g * (self.parts[j][1].a0 - self.parts[j][0].a0)
    }
    /// `G0(zeta_minus) + G0(zeta_plus)` for field branch j.
    fn sg(&self, j: usize) -> Complex64 {
        self.e_g * (self.parts[j][1].a0 + self.parts[j][0].a0)
    }
    /// `F0(zeta_minus) - F0(zeta_plus)` for field branch j.
    fn df(&self, j: usize) -> Complex64 {
        -self.e_g * (self.parts[j][1].a1 - self.parts[j][0].a1)
    }
    /// Diagonal entries; shared verbatim by both assembly paths.
    fn diagonal(&self, kappa: f64) -> (Complex64, Complex64) {
        let g11 = self.dg(0) * ((self.beta - kappa) / (2.0 * self.eta)) + self.sg(0) / 2.0;
        let g22 = -self.dg(1) * ((self.beta + kappa) / (2.0 * self.eta)) + self.sg(1) / 2.0;
        (g11, g22)
    }
}

/// Spin-orbit kernel in a uniform field; off-diagonals from the entrywise
/// closed forms with F0.  Alternative path to [`green_magnetic`].
pub fn green_magnetic_entrywise(req: &KernelRequest) -> Result<SpinKernel> {
    let p = &req.params;
    check_field(p.b)?;
    let z = req.z.value();
    if p.kappa == 0.0 {
        return degenerate_diagonal(p, &req.r, &req.r_prime, z);
    }
    let m = magnetic_parts(p, &req.r, &req.r_prime, z)?;

    let (g11, g22) = m.diagonal(p.kappa);
    let half = |s: f64| (m.sb + s) / 2.0;
    let (g12, g21) = match p.variant {
        Variant::R => (
            (m.abs_b * m.u / (2.0 * m.eta)) * (m.df(1) - m.dg(1) * half(1.0)),
            -(m.abs_b * m.v / (2.0 * m.eta)) * (m.df(0) + m.dg(0) * half(-1.0)),
        ),
        Variant::D => (
            (c64(0.0, m.abs_b) * m.v / (2.0 * m.eta)) * (m.df(1) + m.dg(1) * half(-1.0)),
            (c64(0.0, m.abs_b) * m.u / (2.0 * m.eta)) * (m.df(0) - m.dg(0) * half(1.0)),
        ),
    };
    Ok(SpinKernel { g11, g12, g21, g22 })
}

/// Spin-orbit kernel in a uniform field.  Off-diagonals are produced by
/// applying the first-order coupling operators to the G0 differences by
/// analytic differentiation (generic product rule on `e_g * a0(X)` with
/// `d a0/dX = -a1`); the closed entrywise formulas are the alternative path.
pub fn green_magnetic(req: &KernelRequest) -> Result<SpinKernel> {
    let p = &req.params;
    check_field(p.b)?;
    let z = req.z.value();
    if p.kappa == 0.0 {
        return degenerate_diagonal(p, &req.r, &req.r_prime, z);
    }
    let m = magnetic_parts(p, &req.r, &req.r_prime, z)?;

    let (g11, g22) = m.diagonal(p.kappa);

    // per-argument kernel value and gradient, then the operator applied to
    // the minus-plus difference
    let value = |j: usize, pm: usize| m.e_g * m.parts[j][pm].a0;
    let grad_x = |j: usize, pm: usize| {
        m.e_g * (m.gx * m.parts[j][pm].a0 - m.xx * m.parts[j][pm].a1)
    };
    let grad_y = |j: usize, pm: usize| {
        m.e_g * (m.gy * m.parts[j][pm].a0 - m.xy * m.parts[j][pm].a1)
    };
    let delta = |f: &dyn Fn(usize, usize) -> Complex64, j: usize| f(j, 1) - f(j, 0);

    let half_b = p.b / 2.0;
    let x = req.r.x;
    let y = req.r.y;
    let i = c64(0.0, 1.0);
    // coupling operators act on the unprimed point
    let (g12, g21) = match p.variant {
        Variant::R => {
            let o12 = delta(&grad_x, 1) - i * delta(&grad_y, 1)
                - half_b * c64(x, -y) * delta(&value, 1);
            let o21 = -(delta(&grad_x, 0) + i * delta(&grad_y, 0))
                - half_b * c64(x, y) * delta(&value, 0);
            (o12 / (2.0 * m.eta), o21 / (2.0 * m.eta))
        }
        Variant::D => {
            let o12 = i
                * (delta(&grad_x, 1) + i * delta(&grad_y, 1)
                    + half_b * c64(x, y) * delta(&value, 1));
            let o21 = i
                * (delta(&grad_x, 0) - i * delta(&grad_y, 0)
                    - half_b * c64(x, -y) * delta(&value, 0));
            (o12 / (2.0 * m.eta), o21 / (2.0 * m.eta))
        }
    };
    Ok(SpinKernel { g11, g12, g21, g22 })
}

/// kappa = 0 in a field: the Hamiltonian is diagonal and the kernel is
/// `diag(G0(z - gamma b), G0(z + gamma b))` with the physical-field phase.
fn degenerate_diagonal(
    p: &ModelParams,
    r: &Point2,
    r_prime: &Point2,
    z: Complex64,
) -> Result<SpinKernel> {
    let shift = p.gamma * p.b;
    let g11 = green0_landau(p.b, r, r_prime, z - shift)?;
    let g22 = green0_landau(p.b, r, r_prime, z + shift)?;
    Ok(SpinKernel::diagonal(g11, g22))
}

/// Dispatch on the field: zero field to [`green_free`], otherwise
/// [`green_magnetic`].
pub fn green_kernel(req: &KernelRequest) -> Result<SpinKernel> {
    if req.params.b == 0.0 {
        green_free(req)
    } else {
        green_magnetic(req)
    }
}
