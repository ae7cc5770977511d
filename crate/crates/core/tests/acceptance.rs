//! End-to-end acceptance checks, one per shipped guarantee. Each test
//! prints a single PASS/FAIL line with the worst observed figure and the
//! elapsed time, and asserts the advertised tolerance and runtime budget.

use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinorb::green::{
    f0_landau, green0_landau, green_free, green_kernel, green_magnetic, green_magnetic_entrywise,
    KernelRequest, SpinKernel,
};
use spinorb::model::{ModelParams, Point2, Variant};
use spinorb::renorm::{coincidence_limit, green_ren};
use spinorb::specfun::{
    bessel_k_pair, digamma, gamma_fn, kummer_phi, tricomi_psi, SeriesControl, EULER_GAMMA,
};
use spinorb::spectrum::spin_orbit_levels;
use spinorb::verify::{
    apply_hamiltonian_fd, check_resolvent_identity, check_susy_proposition, fock_basis_levels,
    spectral_sum_green0, MatrixOperator,
};
use spinorb::Error;

fn pt(x: f64, y: f64) -> Point2 {
    Point2::new(x, y).unwrap()
}

fn report(id: u32, name: &str, passed: bool, detail: &str, started: Instant) -> bool {
    let verdict = if passed { "PASS" } else { "FAIL" };
    let line = format!(
        "\nacceptance {id} ({name}): {verdict} — {detail} [{:.2}s]\n",
        started.elapsed().as_secs_f64()
    );
    // straight to fd 1: the harness only captures the print! macros, and these
    // one-line verdicts should survive into piped logs even when every test
    // passes
    let _ = std::io::Write::write_all(&mut std::io::stdout().lock(), line.as_bytes());
    passed
}

// --- 1: two-term resolvent combination on random self-adjoint matrices ---

#[test]
fn acceptance_1_resolvent_combination() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < 100 {
        let n = rng.gen_range(2..=8);
        let raw = DMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let herm = (raw.clone() + raw.adjoint()) * Complex64::new(0.5, 0.0);
        let op = MatrixOperator::self_adjoint(herm).unwrap();
        let alpha = rng.gen_range(-2.0..2.0);
        let e = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.1..2.0));
        match check_resolvent_identity(&op, alpha, e) {
            Ok(rep) => {
                worst = worst.max(rep.residual_max);
                done += 1;
            }
            Err(Error::Pole { .. }) => continue, // spectral collision: redraw
            Err(e) => panic!("unexpected failure: {e}"),
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    let ok = worst < 1e-10 && elapsed < 5.0;
    let detail = format!("100 matrices, max residual {worst:.3e} (tol 1e-10)");
    assert!(report(1, "resolvent combination", ok, &detail, t0), "{detail}");
}

// --- 2: block-operator spectrum correspondence ---

#[test]
fn acceptance_2_block_spectrum_map() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let masses = [0.0, 0.3, 1.0];
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let rows = rng.gen_range(1..=8);
        let cols = rng.gen_range(1..=5);
        let a = DMatrix::from_fn(rows, cols, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let op = MatrixOperator::new(a).unwrap();
        let rep = check_susy_proposition(&op, masses[trial % 3]).unwrap();
        worst = worst.max(rep.residual_max);
    }
    let elapsed = t0.elapsed().as_secs_f64();
    let ok = worst < 1e-10 && elapsed < 5.0;
    let detail = format!("100 operators, max Hausdorff distance {worst:.3e} (tol 1e-10)");
    assert!(report(2, "block spectrum map", ok, &detail, t0), "{detail}");
}

// --- 3: zero-field kernel solves its differential equation at rate h^2 ---

#[test]
fn acceptance_3_free_kernel_residual_decay() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for variant in [Variant::R, Variant::D] {
        for _ in 0..10 {
            let kappa = rng.gen_range(0.2..1.0);
            let p = ModelParams::new(variant, kappa, 0.0, 0.0).unwrap();
            let z = Complex64::new(rng.gen_range(-3.0..-0.5), rng.gen_range(0.5..1.5));
            let d = rng.gen_range(0.8..1.5);
            let th = rng.gen_range(0.0..std::f64::consts::TAU);
            let rp = pt(0.0, 0.0);
            let r = pt(d * th.cos(), d * th.sin());
            let kernel = move |q: &Point2| green_free(&KernelRequest::new(p, *q, rp, z));
            let coarse = apply_hamiltonian_fd(&p, &kernel, z, &r, 1e-2, Some(&rp)).unwrap();
            let fine = apply_hamiltonian_fd(&p, &kernel, z, &r, 5e-3, Some(&rp)).unwrap();
            let ratio = coarse.residual_max / fine.residual_max;
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    let ok = lo >= 3.6 && hi <= 4.4 && elapsed < 30.0;
    let detail = format!("20 points, residual ratios in [{lo:.3}, {hi:.3}] (want 4 ± 0.4)");
    assert!(report(3, "free kernel residual decay", ok, &detail, t0), "{detail}");
}

// --- 4: magnetic scalar kernel vs truncated level expansion ---

#[test]
fn acceptance_4_scalar_kernel_vs_level_sum() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut worst = 0.0f64;
    for b in [0.5f64, -0.5, 1.0, -1.0, 2.0] {
        for _ in 0..10 {
            let t = rng.gen_range(0.8..3.0);
            let rho = (2.0 * t / b.abs()).sqrt();
            let th = rng.gen_range(0.0..std::f64::consts::TAU);
            let rp = pt(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
            let r = pt(rp.x + rho * th.cos(), rp.y + rho * th.sin());
            let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(0.5..2.0));
            let direct = green0_landau(b, &r, &rp, z).unwrap();
            let summed = spectral_sum_green0(b, &r, &rp, z, 2000).unwrap();
            worst = worst.max((direct - summed).norm());
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    let ok = worst < 1e-6 && elapsed < 60.0;
    let detail = format!("50 points over 5 fields, max |gap| {worst:.3e} (tol 1e-6)");
    assert!(report(4, "scalar kernel vs level sum", ok, &detail, t0), "{detail}");
}

// --- 5: closed-form levels vs basis diagonalization and pole positions ---

fn pole_scan_vertex(p: &ModelParams, level: f64, r: &Point2, rp: &Point2) -> f64 {
    let h = 5e-5;
    let steps = 400i64; // ±0.02 window
    let mut best = (f64::INFINITY, 0i64);
    let mut s = Vec::with_capacity((2 * steps + 1) as usize);
    for i in -steps..=steps {
        let x = level + i as f64 * h;
        let z = Complex64::new(x, 1e-4);
        let k = green_magnetic(&KernelRequest::new(*p, *r, *rp, z)).unwrap();
        let v = 1.0 / (k.g11.norm_sqr() + k.g22.norm_sqr());
        s.push(v);
        if v < best.0 {
            best = (v, i);
        }
    }
    let i = (best.1 + steps) as usize;
    assert!(
        i > 0 && i + 1 < s.len(),
        "pole-scan minimum sits on the window edge at level {level}"
    );
    // exact parabola vertex through the three points around the minimum
    let (sm, s0, sp) = (s[i - 1], s[i], s[i + 1]);
    level + (best.1 as f64) * h + 0.5 * h * (sm - sp) / (sm - 2.0 * s0 + sp)
}

#[test]
fn acceptance_5_levels_match_basis_and_poles() {
    let t0 = Instant::now();
    let r = pt(0.6, 0.15);
    let rp = pt(-0.25, -0.4);
    let mut worst_level = 0.0f64;
    let mut worst_pole = 0.0f64;
    for variant in [Variant::R, Variant::D] {
        for (kappa, gamma) in [(1.0, 0.0), (0.5, 1.0)] {
            let p = ModelParams::new(variant, kappa, 1.0, gamma).unwrap();
            let closed = spin_orbit_levels(&p, 40).unwrap().energies();
            let basis = fock_basis_levels(&p, 48).unwrap().energies();
            for level in closed.iter().take(6) {
                let gap = basis
                    .iter()
                    .map(|e| (e - level).abs())
                    .fold(f64::INFINITY, f64::min);
                worst_level = worst_level.max(gap);
                let vertex = pole_scan_vertex(&p, *level, &r, &rp);
                worst_pole = worst_pole.max((vertex - level).abs());
            }
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    let ok = worst_level < 1e-8 && worst_pole < 1e-6 && elapsed < 60.0;
    let detail = format!(
        "4 configurations x 6 levels: basis gap {worst_level:.3e} (tol 1e-8), pole-scan gap {worst_pole:.3e} (tol 1e-6)"
    );
    assert!(report(5, "levels, basis, poles", ok, &detail, t0), "{detail}");
}

// --- 6: entrywise and operator-form assemblies agree ---

fn diagnose_entry(name: &str, got: Complex64, want: Complex64) -> String {
    let ratio = got / want;
    let hint = if (ratio + 1.0).norm() < 1e-6 {
        "global sign slip"
    } else if (ratio - want.conj() / want).norm() < 1e-6 {
        "conjugation slip"
    } else if (ratio.norm() - 1.0).abs() < 1e-6 {
        "pure phase offset (argument or field-sign mix-up)"
    } else {
        "magnitude mismatch (wrong spectral argument)"
    };
    format!("{name}: operator {got} vs entrywise {want}, ratio {ratio} -> {hint}")
}

#[test]
fn acceptance_6_assembly_path_equivalence() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut worst = 0.0f64;
    let mut diagnosis = String::new();
    for variant in [Variant::R, Variant::D] {
        let mut done = 0;
        while done < 50 {
            let kappa = rng.gen_range(0.15..1.2);
            let b = rng.gen_range(0.3..1.6) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
            let gamma = rng.gen_range(-1.0..1.0);
            let p = ModelParams::new(variant, kappa, b, gamma).unwrap();
            let im = rng.gen_range(0.2..1.5) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
            let z = Complex64::new(rng.gen_range(-3.0..2.0), im);
            let r = pt(rng.gen_range(-1.2..1.2), rng.gen_range(-1.2..1.2));
            let rp = pt(rng.gen_range(-1.2..1.2), rng.gen_range(-1.2..1.2));
            if r.distance(&rp) < 0.3 {
                continue;
            }
            let req = KernelRequest::new(p, r, rp, z);
            let operator = green_magnetic(&req).unwrap();
            let entrywise = green_magnetic_entrywise(&req).unwrap();
            let scale = operator
                .entries()
                .iter()
                .map(|e| e.norm())
                .fold(1e-300, f64::max);
            let gap = operator.max_abs_diff(&entrywise) / scale;
            if gap > worst {
                worst = gap;
                if gap > 1e-9 {
                    let names = ["g11", "g12", "g21", "g22"];
                    diagnosis = operator
                        .entries()
                        .iter()
                        .zip(entrywise.entries().iter())
                        .enumerate()
                        .filter(|(_, (a, c))| (**a - **c).norm() > 1e-9 * scale)
                        .map(|(i, (a, c))| diagnose_entry(names[i], *a, *c))
                        .collect::<Vec<_>>()
                        .join("; ");
                }
            }
            done += 1;
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    let ok = worst < 1e-9;
    let mut detail = format!("100 inputs, worst relative gap {worst:.3e} (tol 1e-9)");
    if !diagnosis.is_empty() {
        detail.push_str("; ");
        detail.push_str(&diagnosis);
    }
    let _ = elapsed;
    assert!(report(6, "assembly path equivalence", ok, &detail, t0), "{detail}");
}

// --- 7: renormalized values vs extrapolated coincidence limits ---

#[test]
fn acceptance_7_renormalized_limits() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut worst_match = 0.0f64;
    let mut worst_base = 0.0f64;
    let base = pt(0.3, -0.2);
    for trial in 0..5 {
        let variant = if trial % 2 == 0 { Variant::R } else { Variant::D };
        let p = ModelParams::new(variant, rng.gen_range(0.2..1.0), 0.0, rng.gen_range(-1.0..1.0))
            .unwrap();
        let z = Complex64::new(rng.gen_range(-3.0..-0.5), rng.gen_range(0.4..1.2));
        let closed = green_ren(&p, z).unwrap();
        let limit = coincidence_limit(&p, &base, z).unwrap();
        worst_match = worst_match.max(closed.max_abs_diff(&limit));
    }
    for trial in 0..5 {
        let variant = if trial % 2 == 0 { Variant::D } else { Variant::R };
        let b = rng.gen_range(0.5..1.5) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let p = ModelParams::new(variant, rng.gen_range(0.2..1.0), b, rng.gen_range(-0.8..0.8))
            .unwrap();
        let z = Complex64::new(rng.gen_range(-3.0..1.0), rng.gen_range(0.4..1.2));
        let closed = green_ren(&p, z).unwrap();
        let limit = coincidence_limit(&p, &base, z).unwrap();
        worst_match = worst_match.max(closed.max_abs_diff(&limit));
        let other1 = coincidence_limit(&p, &pt(-0.45, 0.35), z).unwrap();
        let other2 = coincidence_limit(&p, &pt(0.8, 0.6), z).unwrap();
        worst_base = worst_base
            .max(limit.max_abs_diff(&other1))
            .max(limit.max_abs_diff(&other2))
            .max(other1.max_abs_diff(&other2));
    }
    let ok = worst_match < 1e-5 && worst_base < 1e-6;
    let detail = format!(
        "10 samples: limit-vs-closed gap {worst_match:.3e} (tol 1e-5), base-point spread {worst_base:.3e} (tol 1e-6)"
    );
    assert!(report(7, "renormalized limits", ok, &detail, t0), "{detail}");
}

// --- 8: special functions vs independent quadrature oracles ---

// Trapezoid over the symmetric integral 2K_nu(w) = ∫_R e^{-w cosh t} cosh(nu t) dt.
// The integrand is analytic with double-exponential decay, so the rule is
// spectrally accurate; truncate where the exponent is dead.
fn bessel_oracle(w: Complex64, nu: u32) -> Complex64 {
    let h = 0.01;
    let t_max = ((50.0 / w.re).max(10.0)).acosh() + 0.5;
    let n = (t_max / h).ceil() as i64;
    let mut sum = Complex64::ZERO;
    for k in -n..=n {
        let t = k as f64 * h;
        let ex = -w * t.cosh();
        if ex.re < -745.0 {
            continue;
        }
        let weight = if nu == 0 { 1.0 } else { t.cosh() };
        sum += ex.exp() * weight;
    }
    0.5 * sum * h
}

// Exp-sinh trapezoid for ∫_0^∞ t^{z-1} e^{-t} dt.
fn gamma_oracle(z: Complex64) -> Complex64 {
    let h = 1.0 / 64.0;
    let mut sum = Complex64::ZERO;
    let mut u: f64 = -5.5;
    while u <= 5.0 {
        let l = 0.5 * std::f64::consts::PI * u.sinh();
        let t = l.exp();
        let ex = z * l - t + (0.5 * std::f64::consts::PI * u.cosh()).ln();
        if ex.re > -745.0 {
            sum += ex.exp();
        }
        u += h;
    }
    sum * h
}

// Exp-sinh trapezoid for Hermite's formula
//   ψ(z) = ln z - 1/(2z) - 2 ∫_0^∞ t dt / ((t² + z²)(e^{2πt} - 1)),
// whose integrand carries no oscillatory factor and keeps its poles a fixed
// distance Re z off the contour.
fn digamma_oracle(z: Complex64) -> Complex64 {
    let h = 1.0 / 64.0;
    let mut sum = Complex64::ZERO;
    let mut u: f64 = -4.5;
    while u <= 4.0 {
        let l = 0.5 * std::f64::consts::PI * u.sinh();
        let t = l.exp();
        if 2.0 * std::f64::consts::PI * t < 700.0 {
            let jac = t * 0.5 * std::f64::consts::PI * u.cosh();
            let denom = (t * t + z * z) * (2.0 * std::f64::consts::PI * t).exp_m1();
            sum += t / denom * jac;
        }
        u += h;
    }
    z.ln() - 0.5 / z - 2.0 * sum * h
}

fn lnsigmoid(v: f64) -> f64 {
    if v >= 0.0 {
        -(-v).exp().ln_1p()
    } else {
        v - v.exp().ln_1p()
    }
}

// Tanh-sinh trapezoid for the Euler integral
//   Φ(a,c,x) = Γ(c)/(Γ(a)Γ(c-a)) ∫_0^1 e^{x t} t^{a-1} (1-t)^{c-a-1} dt,
// valid for 0 < Re a < c; Γ(1) = Γ(2) = 1 so only the oracle Γ appears.
fn kummer_oracle(a: Complex64, c: u32, x: f64) -> Complex64 {
    let h = 1.0 / 64.0;
    let mut sum = Complex64::ZERO;
    let mut u: f64 = -4.4;
    while u <= 4.4 {
        let s = 0.5 * std::f64::consts::PI * u.sinh();
        let lt = lnsigmoid(2.0 * s);
        let l1t = lnsigmoid(-2.0 * s);
        let t = lt.exp();
        let ex = x * t + a * lt + (Complex64::new(c as f64, 0.0) - a) * l1t;
        if ex.re > -745.0 {
            sum += ex.exp() * std::f64::consts::PI * u.cosh();
        }
        u += h;
    }
    sum * h / (gamma_oracle(a) * gamma_oracle(Complex64::new(c as f64, 0.0) - a))
}

// Exp-sinh trapezoid for Ψ(a,c,x) = (1/Γ(a)) ∫_0^∞ e^{-x t} t^{a-1} (1+t)^{c-a-1} dt.
fn tricomi_oracle(a: Complex64, c: u32, x: f64) -> Complex64 {
    let h = 1.0 / 64.0;
    let mut sum = Complex64::ZERO;
    let mut u: f64 = -5.0;
    while u <= 5.0 {
        let l = 0.5 * std::f64::consts::PI * u.sinh();
        let t = l.exp();
        let ln1p = if l > 30.0 { l } else { t.ln_1p() };
        let ex = -x * t + a * l + (Complex64::new(c as f64 - 1.0, 0.0) - a) * ln1p
            + (0.5 * std::f64::consts::PI * u.cosh()).ln();
        if ex.re > -745.0 {
            sum += ex.exp();
        }
        u += h;
    }
    sum * h / gamma_oracle(a)
}

fn rel_err(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm().max(1e-300)
}

#[test]
fn acceptance_8_special_function_oracles() {
    let t0 = Instant::now();
    let ctl = SeriesControl::default();
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let mut blocks: Vec<(&str, f64, f64)> = Vec::new();

    let mut worst = 0.0f64;
    for _ in 0..20 {
        let w = Complex64::new(rng.gen_range(0.3..4.0), rng.gen_range(-3.0..3.0));
        let pair = bessel_k_pair(w, &ctl).unwrap();
        worst = worst.max(rel_err(pair.k0, bessel_oracle(w, 0)));
        worst = worst.max(rel_err(pair.k1, bessel_oracle(w, 1)));
    }
    blocks.push(("macdonald", worst, 1e-10));

    worst = 0.0;
    for _ in 0..20 {
        let z = Complex64::new(rng.gen_range(0.5..3.5), rng.gen_range(-2.0..2.0));
        worst = worst.max(rel_err(gamma_fn(z).unwrap(), gamma_oracle(z)));
    }
    blocks.push(("gamma", worst, 1e-10));

    worst = 0.0;
    for _ in 0..20 {
        let z = Complex64::new(rng.gen_range(0.4..3.0), rng.gen_range(-2.0..2.0));
        worst = worst.max(rel_err(digamma(z).unwrap(), digamma_oracle(z)));
    }
    blocks.push(("digamma", worst, 1e-10));

    worst = 0.0;
    for c in [1u32, 2] {
        for _ in 0..10 {
            let re_hi = if c == 1 { 0.7 } else { 1.5 };
            let a = Complex64::new(rng.gen_range(0.25..re_hi), rng.gen_range(-0.8..0.8));
            let x = rng.gen_range(0.1..5.0);
            worst = worst.max(rel_err(kummer_phi(a, c, x, &ctl).unwrap(), kummer_oracle(a, c, x)));
        }
    }
    blocks.push(("kummer", worst, 1e-10));

    worst = 0.0;
    for c in [1u32, 2] {
        for _ in 0..10 {
            let a = Complex64::new(rng.gen_range(1.0..3.0), rng.gen_range(-1.5..1.5));
            let x = rng.gen_range(0.3..6.0);
            worst = worst.max(rel_err(tricomi_psi(a, c, x, &ctl).unwrap(), tricomi_oracle(a, c, x)));
        }
    }
    blocks.push(("tricomi", worst, 1e-10));

    // Logarithmic-expansion reassembly from oracle parts:
    //   Γ(a)Ψ(a,n+1,x) = -(-1)^n (a-n)_n [ ln x · Φ(a,n+1,x)
    //     + Σ_r (a)_r/((n+1)_r r!) (ψ(a+r) - ψ(1+r) - ψ(1+n+r)) x^r ]
    //     + (n = 1 ? 1/x : 0)
    // with Φ, ψ, Γ all taken from the quadrature oracles above.
    worst = 0.0;
    for c in [1u32, 2] {
        let n = c - 1;
        for _ in 0..20 {
            let re_hi = if c == 1 { 0.7 } else { 1.5 };
            let a = Complex64::new(rng.gen_range(0.25..re_hi), rng.gen_range(-0.8..0.8));
            let x = rng.gen_range(0.1..4.0);
            let psi_a = digamma_oracle(a);
            let mut term = Complex64::new(1.0, 0.0);
            let mut shift = Complex64::ZERO; // ψ(a+r) - ψ(a)
            let mut harm = 0.0; // H_r
            let mut harm_n = if n == 1 { 1.0 } else { 0.0 }; // H_{n+r}
            let mut series = Complex64::ZERO;
            for r in 0..200u32 {
                let rf = r as f64;
                let bracket = psi_a + shift + 2.0 * EULER_GAMMA - harm - harm_n;
                let piece = term * bracket;
                series += piece;
                if r > 3 && piece.norm() <= 1e-17 * series.norm().max(1e-300) {
                    break;
                }
                shift += 1.0 / (a + rf);
                harm += 1.0 / (1.0 + rf);
                harm_n += 1.0 / (n as f64 + 1.0 + rf);
                term *= (a + rf) * x / ((n as f64 + 1.0 + rf) * (rf + 1.0));
            }
            let pref = if n == 0 {
                Complex64::new(-1.0, 0.0)
            } else {
                a - 1.0
            };
            let mut fused = pref * (x.ln() * kummer_oracle(a, c, x) + series);
            if n == 1 {
                fused += 1.0 / x;
            }
            let rebuilt = fused / gamma_oracle(a);
            worst = worst.max(rel_err(tricomi_psi(a, c, x, &ctl).unwrap(), rebuilt));
        }
    }
    blocks.push(("expansion reassembly", worst, 1e-10));

    // d/dx Ψ(a,c,x) = -a Ψ(a+1,c+1,x), checked at c=1 with the five-point
    // stencil: the h⁴ truncation leaves room to take h large enough that
    // rounding in the Ψ values stays below the 1e-8 budget.
    worst = 0.0;
    for _ in 0..20 {
        let a = Complex64::new(rng.gen_range(0.4..2.0), rng.gen_range(-1.0..1.0));
        let x = rng.gen_range(0.5..5.0);
        let h = 1e-3 * f64::max(x, 1.0);
        let psi_at = |q: f64| tricomi_psi(a, 1, q, &ctl).unwrap();
        let fd = (psi_at(x - 2.0 * h) - 8.0 * psi_at(x - h) + 8.0 * psi_at(x + h)
            - psi_at(x + 2.0 * h))
            / (12.0 * h);
        let closed = -a * tricomi_psi(a + 1.0, 2, x, &ctl).unwrap();
        worst = worst.max(rel_err(fd, closed));
    }
    blocks.push(("derivative identity", worst, 1e-8));

    let ok = blocks.iter().all(|(_, got, tol)| got < tol);
    let detail = blocks
        .iter()
        .map(|(name, got, tol)| format!("{name} {got:.2e} (tol {tol:.0e})"))
        .collect::<Vec<_>>()
        .join(", ");
    assert!(report(8, "special-function oracles", ok, &detail, t0), "{detail}");
}

// --- 9: adjoint symmetry of the kernels across points and energies ---

#[test]
fn acceptance_9_kernel_adjoint_symmetry() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < 100 {
        let variant = if rng.gen::<bool>() { Variant::R } else { Variant::D };
        let magnetic = done % 2 == 1;
        let b = if magnetic {
            rng.gen_range(0.3..1.5) * if rng.gen::<bool>() { 1.0 } else { -1.0 }
        } else {
            0.0
        };
        let gamma = if magnetic { rng.gen_range(-1.0..1.0) } else { 0.0 };
        let p = ModelParams::new(variant, rng.gen_range(0.1..1.2), b, gamma).unwrap();
        let im = rng.gen_range(0.2..1.5) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let z = Complex64::new(rng.gen_range(-3.0..1.5), im);
        let r = pt(rng.gen_range(-1.2..1.2), rng.gen_range(-1.2..1.2));
        let rp = pt(rng.gen_range(-1.2..1.2), rng.gen_range(-1.2..1.2));
        if r.distance(&rp) < 0.3 {
            continue;
        }
        let k1 = green_kernel(&KernelRequest::new(p, r, rp, z)).unwrap();
        let k2 = green_kernel(&KernelRequest::new(p, rp, r, z.conj())).unwrap();
        let scale = k1.entries().iter().map(|e| e.norm()).fold(1e-300, f64::max);
        let adjoint = SpinKernel {
            g11: k1.g11.conj(),
            g12: k1.g21.conj(),
            g21: k1.g12.conj(),
            g22: k1.g22.conj(),
        };
        worst = worst.max(k2.max_abs_diff(&adjoint) / scale);
        done += 1;
    }
    let ok = worst < 1e-12;
    let detail = format!("100 samples (free and magnetic), worst relative gap {worst:.3e} (tol 1e-12)");
    assert!(report(9, "kernel adjoint symmetry", ok, &detail, t0), "{detail}");
}

// f0_landau is part of the assembled paths above; keep a direct consistency
// pin so the acceptance target exercises every public kernel entry point.
#[test]
fn scalar_pair_derivative_consistency() {
    let b = 0.9;
    let r = pt(0.7, -0.2);
    let rp = pt(-0.3, 0.4);
    let z = Complex64::new(-1.3, 0.6);
    let f = f0_landau(b, &r, &rp, z).unwrap();
    assert!(f.norm() > 0.0 && f.norm().is_finite());
    let g = green0_landau(b, &r, &rp, z).unwrap();
    assert!(g.norm() > 0.0 && g.norm().is_finite());
}
