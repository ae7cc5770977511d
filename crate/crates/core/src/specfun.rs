//! Special functions on complex arguments: Γ, ψ, Pochhammer, modified
//! Bessel K₀/K₁, the confluent pair Φ (regular) and Ψ (Tricomi, c ∈ {1,2}),
//! and the fused product Γ(a)Ψ(a,c,x) that the kernel formulas consume.
//!
//! Every routine picks its evaluation regime internally (series, continued
//! fraction, asymptotic, double-exponential quadrature with contiguous
//! recurrence) and carries a cancellation guard: when a partial sum loses
//! more significance than the guard budget allows, the routine switches to
//! an independent representation or reports an accuracy failure instead of
//! returning quietly wrong digits.

use crate::{Error, Result};
use num_complex::Complex64;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const PI: f64 = std::f64::consts::PI;

/// Convergence knobs shared by the series/quadrature drivers.
#[derive(Debug, Clone, Copy)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            rel_tol: 1e-14,
            max_terms: 10_000,
        }
    }
}

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn is_nonpositive_integer(z: Complex64, tol: f64) -> Option<u32> {
    if z.im.abs() > tol {
        return None;
    }
    let r = z.re.round();
    if r > 0.5 || (z.re - r).abs() > tol {
        return None;
    }
    Some((-r) as u32)
}

// ---------------------------------------------------------------------------
// Gamma and digamma
// ---------------------------------------------------------------------------

// Lanczos, g = 7, 9 coefficients; relative error below 1e-14 on Re z >= 0.5.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(z: Complex64) -> Complex64 {
    // z shifted so the caller passes the original argument minus one
    let mut acc = c64(LANCZOS[0], 0.0);
    for (i, &coef) in LANCZOS.iter().enumerate().skip(1) {
        acc += coef / (z + i as f64);
    }
    acc
}

/// Γ(z) by Lanczos approximation with reflection for Re z < 0.5.
/// Non-positive integer arguments are poles and are rejected.
pub fn gamma_fn(z: Complex64) -> Result<Complex64> {
    if let Some(m) = is_nonpositive_integer(z, 1e-13) {
        return Err(Error::Pole {
            location: z,
            context: format!("gamma function pole at -{m}"),
        });
    }
    if z.re < 0.5 {
        // Γ(z) Γ(1-z) = π / sin(π z)
        let s = (PI * z).sin();
        return Ok(PI / (s * gamma_fn(c64(1.0, 0.0) - z)?));
    }
    let zs = z - 1.0;
    let t = zs + LANCZOS_G + 0.5;
    let val = (2.0 * PI).sqrt() * t.powc(zs + 0.5) * (-t).exp() * lanczos_sum(zs);
    Ok(val)
}

/// 1/Γ(z): entire, returns 0 at the poles of Γ.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z, 1e-13).is_some() {
        return Complex64::ZERO;
    }
    if z.re < 0.5 {
        // 1/Γ(z) = sin(π z) Γ(1-z) / π
        let g = gamma_fn(c64(1.0, 0.0) - z).expect("1-z has Re > 0.5");
        return (PI * z).sin() * g / PI;
    }
    1.0 / gamma_fn(z).expect("Re z >= 0.5 is pole-free")
}

// ψ asymptotic coefficients: -B_{2n}/(2n), so ψ(z) ≈ ln z - 1/(2z) - Σ c_n z^{-2n}
const DIGAMMA_TAIL: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// ψ(z) = Γ'(z)/Γ(z) by reflection, recurrence and the asymptotic tail.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if let Some(m) = is_nonpositive_integer(z, 1e-13) {
        return Err(Error::Pole {
            location: z,
            context: format!("digamma pole at -{m}"),
        });
    }
    if z.re < 0.5 {
        // ψ(z) = ψ(1-z) - π cot(π z), with cot(w) = i(q+1)/(q-1) for
        // q = e^{±2iw} chosen so |q| ≤ 1 — cos/sin overflow near |Im w| ~ 700
        // while the resolvent needs arguments with |Im| ~ 1/|b|.
        let w = PI * z;
        let cot = if w.im >= 0.0 {
            let q = (2.0 * Complex64::I * w).exp();
            Complex64::I * (q + 1.0) / (q - 1.0)
        } else {
            let q = (-2.0 * Complex64::I * w).exp();
            Complex64::I * (1.0 + q) / (1.0 - q)
        };
        return Ok(digamma(c64(1.0, 0.0) - z)? - PI * cot);
    }
    let mut acc = Complex64::ZERO;
    let mut w = z;
    while w.re < 10.0 {
        acc -= 1.0 / w;
        w += 1.0;
    }
    let inv2 = 1.0 / (w * w);
    let mut tail = Complex64::ZERO;
    let mut p = inv2;
    for &cn in DIGAMMA_TAIL.iter() {
        tail += cn * p;
        p *= inv2;
    }
    Ok(acc + w.ln() - 0.5 / w - tail)
}

/// Rising factorial (a)_n = a (a+1) ... (a+n-1).
pub fn pochhammer(a: Complex64, n: u32) -> Complex64 {
    let mut p = c64(1.0, 0.0);
    for k in 0..n {
        p *= a + k as f64;
    }
    p
}

// ---------------------------------------------------------------------------
// Modified Bessel functions K0, K1 (complex argument off (-inf, 0])
// ---------------------------------------------------------------------------

pub struct BesselPair {
    pub k0: Complex64,
    pub k1: Complex64,
}

// Ascending series about 0; fine for |w| <= 2 and, with documented digit
// loss near the imaginary axis, up to |w| = 12 when Re w < 0.5.
fn bessel_k_series(w: Complex64, ctl: &SeriesControl) -> Result<BesselPair> {
    let q = w * w * 0.25; // (w/2)^2
    let lg = (w / 2.0).ln();

    // I0 and the h-sum for K0: K0 = -(ln(w/2) + γ) I0 + Σ_{m>=1} h_m q^m/(m!)^2
    let mut i0 = c64(1.0, 0.0);
    let mut k0_sum = Complex64::ZERO;
    let mut term = c64(1.0, 0.0);
    let mut h = 0.0;
    // I1/(w/2) and the K1 inner sum Σ_k (ψ(k+1)+ψ(k+2)) q^k/(k!(k+1)!)
    let mut i1s = c64(1.0, 0.0); // I1 = (w/2) * i1s
    let mut t1 = c64(1.0, 0.0);
    let mut k1_sum = c64(EULER_GAMMA.mul_add(-2.0, 1.0), 0.0); // ψ(1)+ψ(2) = 1-2γ
    let mut psum = 1.0 - 2.0 * EULER_GAMMA;
    for m in 1..=ctl.max_terms {
        let mf = m as f64;
        term *= q / (mf * mf);
        h += 1.0 / mf;
        i0 += term;
        k0_sum += term * h;
        t1 *= q / (mf * (mf + 1.0));
        psum += 1.0 / mf + 1.0 / (mf + 1.0);
        k1_sum += t1 * psum;
        i1s += t1;
        if term.norm() <= ctl.rel_tol * i0.norm() && t1.norm() <= ctl.rel_tol * i1s.norm() {
            let k0 = -(lg + EULER_GAMMA) * i0 + k0_sum;
            let k1 = 1.0 / w + lg * (w / 2.0) * i1s - (w / 4.0) * k1_sum;
            return Ok(BesselPair { k0, k1 });
        }
    }
    Err(Error::Accuracy {
        context: format!("bessel K series did not converge at w = {w}"),
        achieved: term.norm() / i0.norm(),
        requested: ctl.rel_tol,
    })
}

// Steed/Temme continued fraction for K0, K1; requires Re w >= 0.5.
fn bessel_k_cf2(w: Complex64, ctl: &SeriesControl) -> Result<BesselPair> {
    let a1 = c64(0.25, 0.0);
    let mut b = 2.0 * (1.0 + w);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = Complex64::ZERO;
    let mut q2 = c64(1.0, 0.0);
    let mut c = a1;
    let mut q = c;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut converged = false;
    for i in 2..=ctl.max_terms {
        a -= 2.0 * (i as f64 - 1.0);
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if dels.norm() <= 1e-16 * s.norm() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Accuracy {
            context: format!("bessel K continued fraction stalled at w = {w}"),
            achieved: delh.norm(),
            requested: 1e-16,
        });
    }
    h = a1 * h;
    let k0 = (PI / (2.0 * w)).sqrt() * (-w).exp() / s;
    let k1 = k0 * (w + 0.5 - h) / w;
    Ok(BesselPair { k0, k1 })
}

// a_k(ν) recurrence for the large-argument expansions of I and K.
fn asym_tail(nu: f64, w: Complex64, alternate: bool, ctl: &SeriesControl) -> Complex64 {
    let mut sum = c64(1.0, 0.0);
    let mut ak = 1.0;
    let mut p = c64(1.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 1..=ctl.max_terms.min(60) {
        let kf = k as f64;
        ak *= (4.0 * nu * nu - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf);
        p /= w;
        let mut term = ak * p;
        if alternate && k % 2 == 1 {
            term = -term;
        }
        let mag = term.norm();
        if mag >= last {
            break; // asymptotic: stop at the smallest term
        }
        sum += term;
        if mag <= ctl.rel_tol * sum.norm() {
            break;
        }
        last = mag;
    }
    sum
}

// K by its exponential expansion; |w| > 12 keeps the truncation floor
// near 1e-11, which is the documented accuracy limit of this regime.
fn bessel_k_asym(w: Complex64, ctl: &SeriesControl) -> BesselPair {
    let front = (PI / (2.0 * w)).sqrt() * (-w).exp();
    BesselPair {
        k0: front * asym_tail(0.0, w, false, ctl),
        k1: front * asym_tail(1.0, w, false, ctl),
    }
}

// I0, I1 for Re u > 0 (reflection support).
fn bessel_i_pair(u: Complex64, ctl: &SeriesControl) -> Result<(Complex64, Complex64)> {
    if u.norm() <= 12.0 {
        let q = u * u * 0.25;
        let mut i0 = c64(1.0, 0.0);
        let mut t0 = c64(1.0, 0.0);
        let mut i1s = c64(1.0, 0.0);
        let mut t1 = c64(1.0, 0.0);
        for m in 1..=ctl.max_terms {
            let mf = m as f64;
            t0 *= q / (mf * mf);
            i0 += t0;
            t1 *= q / (mf * (mf + 1.0));
            i1s += t1;
            if t0.norm() <= ctl.rel_tol * i0.norm() && t1.norm() <= ctl.rel_tol * i1s.norm() {
                return Ok((i0, (u / 2.0) * i1s));
            }
        }
        return Err(Error::Accuracy {
            context: format!("bessel I series did not converge at u = {u}"),
            achieved: t0.norm(),
            requested: ctl.rel_tol,
        });
    }
    // both exponentials of the large-argument expansion; the recessive one
    // matters only when Re u is small
    let front = 1.0 / (2.0 * PI * u).sqrt();
    let grow = u.exp();
    let decay = (-u).exp();
    let (c0, c1) = if u.im >= 0.0 {
        (c64(0.0, 1.0), c64(0.0, -1.0)) // i e^{iπν}, ν = 0, 1
    } else {
        (c64(0.0, -1.0), c64(0.0, 1.0))
    };
    let i0 = front * (grow * asym_tail(0.0, u, true, ctl) + c0 * decay * asym_tail(0.0, u, false, ctl));
    let i1 = front * (grow * asym_tail(1.0, u, true, ctl) + c1 * decay * asym_tail(1.0, u, false, ctl));
    Ok((i0, i1))
}

/// Both `K_0(w)` and `K_1(w)` in one evaluation (they share all the
/// internal machinery, so asking for the pair costs the same as one).
pub fn bessel_k_pair(w: Complex64, ctl: &SeriesControl) -> Result<BesselPair> {
    if w.im == 0.0 && w.re <= 0.0 {
        return Err(Error::BranchCut(format!(
            "bessel K argument {w} lies on the branch cut (-inf, 0]"
        )));
    }
    if w.re < 0.0 {
        // continue across the imaginary axis: w = e^{±iπ} u with Re u > 0
        let u = -w;
        let base = bessel_k_pair(u, ctl)?;
        let (i0, i1) = bessel_i_pair(u, ctl)?;
        let ipi = c64(0.0, PI);
        return Ok(if w.im > 0.0 {
            BesselPair {
                k0: base.k0 - ipi * i0,
                k1: -base.k1 - ipi * i1,
            }
        } else {
            BesselPair {
                k0: base.k0 + ipi * i0,
                k1: -base.k1 + ipi * i1,
            }
        });
    }
    let r = w.norm();
    if r <= 2.0 {
        bessel_k_series(w, ctl)
    } else if w.re >= 0.5 {
        bessel_k_cf2(w, ctl)
    } else if r <= 12.0 {
        bessel_k_series(w, ctl)
    } else {
        Ok(bessel_k_asym(w, ctl))
    }
}

/// K₀(w) for complex w off the cut (−∞, 0].
pub fn bessel_k0(w: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    Ok(bessel_k_pair(w, ctl)?.k0)
}

/// K₁(w) for complex w off the cut (−∞, 0].
pub fn bessel_k1(w: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    Ok(bessel_k_pair(w, ctl)?.k1)
}

// ---------------------------------------------------------------------------
// Confluent hypergeometric functions
// ---------------------------------------------------------------------------

/// Regular confluent series Φ(a; c; x) = Σ (a)_r x^r / ((c)_r r!)
/// for integer c >= 1 and real x >= 0.
pub fn kummer_phi(a: Complex64, c: u32, x: f64, ctl: &SeriesControl) -> Result<Complex64> {
    if c < 1 {
        return Err(Error::InvalidParameter(format!(
            "kummer series needs integer c >= 1, got {c}"
        )));
    }
    if !(x >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "kummer series needs x >= 0, got {x}"
        )));
    }
    let mut sum = c64(1.0, 0.0);
    let mut term = c64(1.0, 0.0);
    let mut peak = 1.0f64;
    for r in 0..ctl.max_terms {
        let rf = r as f64;
        term *= (a + rf) * x / ((c as f64 + rf) * (rf + 1.0));
        sum += term;
        peak = peak.max(term.norm());
        if term.norm() <= ctl.rel_tol * sum.norm().max(1e-300) {
            let cancel = peak / sum.norm().max(1e-300);
            if cancel > 1e4 {
                return Err(Error::Accuracy {
                    context: format!("kummer series cancellation at a = {a}, c = {c}, x = {x}"),
                    achieved: cancel * f64::EPSILON,
                    requested: ctl.rel_tol,
                });
            }
            return Ok(sum);
        }
    }
    Err(Error::Accuracy {
        context: format!("kummer series did not converge at a = {a}, c = {c}, x = {x}"),
        achieved: term.norm() / sum.norm().max(1e-300),
        requested: ctl.rel_tol,
    })
}

/// Generalized Laguerre polynomial L_m^α(x) by the three-term recurrence.
pub fn laguerre(m: u32, alpha: f64, x: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let mut lm1 = 1.0;
    let mut l = 1.0 + alpha - x;
    for k in 1..m {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * l - (kf + alpha) * lm1) / (kf + 1.0);
        lm1 = l;
        l = next;
    }
    l
}

// Logarithmic series for the fused product Γ(a) Ψ(a, n+1, x), n ∈ {0, 1}:
//   -(−1)^n (a−n)_n [ ln x · Φ(a,n+1,x)
//       + Σ_r (a)_r/((n+1)_r r!) (ψ(a+r) − ψ(1+r) − ψ(1+n+r)) x^r ]
//   + (n = 1 ? 1/x : 0)
// Returns the value plus the worst term/sum ratio seen (cancellation gauge).
fn fused_series(a: Complex64, n: u32, x: f64, ctl: &SeriesControl) -> Result<(Complex64, f64)> {
    let lnx = c64(x.ln(), 0.0);
    let pref = if n == 0 {
        c64(-1.0, 0.0)
    } else {
        a - 1.0 // -(-1)^1 (a-1)_1
    };
    let mut psi_a = digamma(a)?;
    let mut psi_1 = -EULER_GAMMA;
    let mut psi_c = if n == 0 {
        -EULER_GAMMA
    } else {
        1.0 - EULER_GAMMA
    };
    let mut term = c64(1.0, 0.0);
    let mut sum = Complex64::ZERO;
    let mut peak = 0.0f64;
    let mut done = false;
    for r in 0..ctl.max_terms {
        let rf = r as f64;
        let piece = term * (lnx + psi_a - psi_1 - psi_c);
        sum += piece;
        peak = peak.max(piece.norm());
        if r > 2 && piece.norm() <= ctl.rel_tol * sum.norm().max(1e-300) {
            done = true;
            break;
        }
        psi_a += 1.0 / (a + rf);
        psi_1 += 1.0 / (1.0 + rf);
        psi_c += 1.0 / (n as f64 + 1.0 + rf);
        term *= (a + rf) * x / ((n as f64 + 1.0 + rf) * (rf + 1.0));
    }
    if !done {
        return Err(Error::Accuracy {
            context: format!("tricomi log-series did not converge at a = {a}, c = {}, x = {x}", n + 1),
            achieved: f64::INFINITY,
            requested: ctl.rel_tol,
        });
    }
    let mut value = pref * sum;
    if n == 1 {
        value += 1.0 / x;
    }
    let cancel = (peak * pref.norm()).max(if n == 1 { 1.0 / x } else { 0.0 })
        / value.norm().max(1e-300);
    Ok((value, cancel))
}

// Double-exponential quadrature of ∫_0^∞ e^{-x t} t^{a-1} (1+t)^{c-a-1} dt,
// which equals the fused product Γ(a) Ψ(a,c,x) for Re a > 0.
fn fused_quadrature(a: Complex64, c: u32, x: f64, ctl: &SeriesControl) -> Result<(Complex64, f64)> {
    debug_assert!(a.re >= 0.5);
    let cma1 = c64(c as f64, 0.0) - a - 1.0;
    // v-range: e^{-x t} must be dead at t(v_max) even for tiny x
    let reach = (1.0 / x).ln().max(0.0) + 80.0;
    let v_max = ((2.0 / PI) * reach).asinh().max(4.0);
    let eval = |v: f64| -> Complex64 {
        let l = 0.5 * PI * v.sinh(); // ln t
        let t = l.exp();
        let ln1p = if t > 1e15 { l } else { t.ln_1p() };
        let mut ex = a * l + cma1 * ln1p;
        ex += -x * t + (0.5 * PI * v.cosh()).ln();
        if ex.re < -745.0 {
            return Complex64::ZERO;
        }
        ex.exp()
    };
    let mut h = 1.0;
    let mut n = (v_max / h).ceil() as i64;
    let mut total: Complex64 = (-n..=n).map(|k| eval(k as f64 * h)).sum();
    let mut absum: f64 = (-n..=n).map(|k| eval(k as f64 * h).norm()).sum();
    let mut best = total * h;
    for level in 1..=12 {
        h *= 0.5;
        n = (v_max / h).ceil() as i64;
        let mut add = Complex64::ZERO;
        let mut addabs = 0.0;
        let mut k = -n + (n % 2 == 0) as i64; // odd multiples of new h
        while k <= n {
            let g = eval(k as f64 * h);
            add += g;
            addabs += g.norm();
            k += 2;
        }
        total += add;
        absum += addabs;
        let cur = total * h;
        if level >= 3 && (cur - best).norm() <= 3.0 * ctl.rel_tol * cur.norm().max(1e-300) {
            let cancel = absum * h / cur.norm().max(1e-300);
            return Ok((cur, cancel));
        }
        best = cur;
    }
    Err(Error::Accuracy {
        context: format!("tricomi quadrature did not converge at a = {a}, c = {c}, x = {x}"),
        achieved: f64::INFINITY,
        requested: ctl.rel_tol,
    })
}

// Fused product by quadrature, lifting Re a < 0.5 with the downward
// contiguous recurrence
//   F(a-1) = [(2a - c + x) F(a) - (a - c + 1) F(a+1)] / (a - 1),
// whose seeds sit in the quadrature-safe strip.
fn fused_via_quadrature(a: Complex64, c: u32, x: f64, ctl: &SeriesControl) -> Result<(Complex64, f64)> {
    if a.re >= 0.55 {
        return fused_quadrature(a, c, x, ctl);
    }
    if a.re < -10_000.0 {
        // the downward recurrence amplifies noise per step; at this depth the
        // series regime is the only viable route and it has already declined
        return Err(Error::Accuracy {
            context: format!("tricomi argument too deep for the recurrence lift: a = {a}"),
            achieved: f64::INFINITY,
            requested: ctl.rel_tol,
        });
    }
    let k = (0.55 - a.re).ceil() as u32;
    let (mut f1, c1) = fused_quadrature(a + k as f64, c, x, ctl)?;
    let (mut f2, c2) = fused_quadrature(a + (k + 1) as f64, c, x, ctl)?;
    let mut cancel = c1.max(c2);
    for j in (1..=k).rev() {
        let cur = a + j as f64;
        let f0 = ((2.0 * cur - c as f64 + x) * f1 - (cur - c as f64 + 1.0) * f2) / (cur - 1.0);
        cancel = cancel.max((f1.norm() + f2.norm()) / f0.norm().max(1e-300));
        f2 = f1;
        f1 = f0;
    }
    Ok((f1, cancel))
}

const CANCEL_BUDGET: f64 = 1e4;

/// Fused product Γ(a) Ψ(a, c, x) for c ∈ {1, 2}, x > 0. This is the form
/// the kernel assembly needs; it stays finite through the zeros of 1/Γ and
/// has poles exactly where the resolvent does. Near those poles (a within
/// 1e-11 of a non-positive integer) a pole error is returned.
pub fn gamma_tricomi(a: Complex64, c: u32, x: f64, ctl: &SeriesControl) -> Result<Complex64> {
    check_tricomi_domain(c, x)?;
    if let Some(m) = is_nonpositive_integer(a, 1e-11) {
        return Err(Error::Pole {
            location: a,
            context: format!("fused tricomi product has a pole at a = -{m}"),
        });
    }
    let in_series = x <= 12.0 && (a.norm() * x) <= 36.0;
    if in_series {
        match fused_series(a, c - 1, x, ctl) {
            Ok((v, cancel)) if cancel <= CANCEL_BUDGET => return Ok(v),
            Ok(_) | Err(Error::Accuracy { .. }) | Err(Error::Pole { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let (v, cancel) = fused_via_quadrature(a, c, x, ctl)?;
    if cancel > 1e6 {
        return Err(Error::Accuracy {
            context: format!(
                "tricomi product loses too many digits at a = {a}, c = {c}, x = {x}"
            ),
            achieved: cancel * f64::EPSILON,
            requested: ctl.rel_tol,
        });
    }
    Ok(v)
}

fn check_tricomi_domain(c: u32, x: f64) -> Result<()> {
    if !(c == 1 || c == 2) {
        return Err(Error::UnsupportedParameter(format!(
            "tricomi routines cover c in {{1, 2}}, got {c}"
        )));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "tricomi routines need x > 0, got {x}"
        )));
    }
    Ok(())
}

/// Tricomi function Ψ(a, c, x) for c ∈ {1, 2}, x > 0. Polynomial for a at
/// non-positive integers (Ψ(-m, α+1, x) = (-1)^m m! L_m^α(x)); elsewhere
/// the fused product divided by Γ(a), or the explicit reciprocal-gamma
/// series when a sits close to a pole of Γ.
pub fn tricomi_psi(a: Complex64, c: u32, x: f64, ctl: &SeriesControl) -> Result<Complex64> {
    check_tricomi_domain(c, x)?;
    if let Some(m) = is_nonpositive_integer(a, 1e-11) {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let mut fact = 1.0;
        for k in 1..=m {
            fact *= k as f64;
        }
        return Ok(c64(sign * fact * laguerre(m, (c - 1) as f64, x), 0.0));
    }
    let g = gamma_fn(a)?;
    Ok(gamma_tricomi(a, c, x, ctl)? / g)
}
