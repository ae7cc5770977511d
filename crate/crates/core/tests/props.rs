//! Randomized invariants: parameter-map symmetries, special-function
//! reflection and monotonicity, level-table constructions, and the adjoint
//! symmetry of the resolvent kernels.

use num_complex::Complex64;
use proptest::prelude::*;
use spinorb::green::{green_free, green_magnetic, KernelRequest};
use spinorb::model::{ModelParams, Point2, Variant};
use spinorb::specfun::{
    bessel_k_pair, digamma, gamma_fn, gamma_tricomi, kummer_phi, SeriesControl,
};
use spinorb::spectrum::spin_orbit_levels;

fn arb_variant() -> impl Strategy<Value = Variant> {
    prop_oneof![Just(Variant::R), Just(Variant::D)]
}

fn pt(x: f64, y: f64) -> Point2 {
    Point2::new(x, y).unwrap()
}

fn close(a: Complex64, b: Complex64, tol: f64, scale: f64) -> Result<(), TestCaseError> {
    let d = (a - b).norm();
    prop_assert!(
        d <= tol * scale.max(1.0),
        "mismatch {a} vs {b}: |diff| = {d:.3e}, allowed {:.3e}",
        tol * scale.max(1.0)
    );
    Ok(())
}

proptest! {
    #[test]
    fn beta_is_odd_in_field(
        variant in arb_variant(),
        kappa in 0.1f64..1.5,
        b in -2.0f64..2.0,
        gamma in -1.2f64..1.2,
    ) {
        let plus = ModelParams::new(variant, kappa, b, gamma).unwrap();
        let minus = ModelParams::new(variant, kappa, -b, gamma).unwrap();
        // sign flip is exact in IEEE arithmetic
        prop_assert_eq!(plus.beta().unwrap(), -minus.beta().unwrap());
    }

    #[test]
    fn eta_reflects_conjugate_energy(
        variant in arb_variant(),
        kappa in 0.1f64..1.5,
        b in -1.5f64..1.5,
        gamma in -1.0f64..1.0,
        re in -3.0f64..2.0,
        im in 0.05f64..2.0,
    ) {
        let p = ModelParams::new(variant, kappa, b, gamma).unwrap();
        let z = Complex64::new(re, im);
        let e = p.eta(z).unwrap();
        let ec = p.eta(z.conj()).unwrap();
        close(ec, e.conj(), 1e-14, e.norm())?;
    }

    #[test]
    fn zeta_gap_is_four_kappa_eta(
        variant in arb_variant(),
        kappa in 0.1f64..1.5,
        b in -1.5f64..1.5,
        gamma in -1.0f64..1.0,
        re in -3.0f64..2.0,
        im in 0.05f64..2.0,
        fs in prop_oneof![Just(1), Just(-1)],
    ) {
        let p = ModelParams::new(variant, kappa, b, gamma).unwrap();
        let z = Complex64::new(re, im);
        let zp = p.zeta_pm(z, 1, fs).unwrap();
        let zm = p.zeta_pm(z, -1, fs).unwrap();
        let gap = 4.0 * kappa * p.eta(z).unwrap();
        close(zp - zm, gap, 1e-14, gap.norm())?;
    }

    #[test]
    fn zeta_branches_coincide_without_coupling(
        variant in arb_variant(),
        gamma in -1.0f64..1.0,
        re in -3.0f64..2.0,
        im in 0.05f64..2.0,
        fs in prop_oneof![Just(1), Just(-1)],
    ) {
        let p = ModelParams::new(variant, 0.0, 0.0, gamma).unwrap();
        let z = Complex64::new(re, im);
        prop_assert_eq!(p.zeta_pm(z, 1, fs).unwrap(), p.zeta_pm(z, -1, fs).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn bessel_pair_reflects_conjugation(re in 0.1f64..6.0, im in -4.0f64..4.0) {
        let ctl = SeriesControl::default();
        let w = Complex64::new(re, im);
        let p = bessel_k_pair(w, &ctl).unwrap();
        let q = bessel_k_pair(w.conj(), &ctl).unwrap();
        close(q.k0, p.k0.conj(), 1e-12, p.k0.norm())?;
        close(q.k1, p.k1.conj(), 1e-12, p.k1.norm())?;
    }

    #[test]
    fn gamma_digamma_reflect_conjugation(re in -6.0f64..6.0, im in -5.0f64..5.0) {
        // stay clear of the poles on the non-positive integers
        prop_assume!(re > 0.1 || im.abs() > 0.1);
        let z = Complex64::new(re, im);
        let g = gamma_fn(z).unwrap();
        let gc = gamma_fn(z.conj()).unwrap();
        close(gc, g.conj(), 1e-12, g.norm())?;
        let d = digamma(z).unwrap();
        let dc = digamma(z.conj()).unwrap();
        close(dc, d.conj(), 1e-12, d.norm())?;
    }

    #[test]
    fn hypergeometric_pair_reflects_conjugation(
        are in 0.3f64..2.5,
        aim in -2.0f64..2.0,
        x in 0.05f64..8.0,
        c in 1u32..=2,
    ) {
        let ctl = SeriesControl::default();
        let a = Complex64::new(are, aim);
        let f = kummer_phi(a, c, x, &ctl).unwrap();
        let fc = kummer_phi(a.conj(), c, x, &ctl).unwrap();
        close(fc, f.conj(), 1e-12, f.norm())?;
        let g = gamma_tricomi(a, c, x, &ctl).unwrap();
        let gc = gamma_tricomi(a.conj(), c, x, &ctl).unwrap();
        close(gc, g.conj(), 1e-12, g.norm())?;
    }

    #[test]
    fn macdonald_pair_positive_and_decreasing(x in 0.05f64..8.0, dx in 0.05f64..4.0) {
        let ctl = SeriesControl::default();
        let lo = bessel_k_pair(Complex64::new(x, 0.0), &ctl).unwrap();
        let hi = bessel_k_pair(Complex64::new(x + dx, 0.0), &ctl).unwrap();
        for v in [lo.k0, lo.k1, hi.k0, hi.k1] {
            prop_assert!(v.re > 0.0);
            prop_assert!(v.im.abs() <= 1e-14 * v.re);
        }
        prop_assert!(hi.k0.re < lo.k0.re);
        prop_assert!(hi.k1.re < lo.k1.re);
        prop_assert!(lo.k0.re * lo.k1.re > 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    // The discrete levels come from a quadratic map applied to the spectrum
    // of the off-diagonal block operator: the block eigenvalues are
    // x = ±√(A + β²) and the levels are x² + 2κx − β². Rebuilding every
    // table entry that way must reproduce the closed form.
    #[test]
    fn levels_agree_with_quadratic_image_of_block_spectrum(
        variant in arb_variant(),
        kappa in 0.1f64..1.4,
        bmag in 0.2f64..1.8,
        bneg in any::<bool>(),
        gamma in -1.2f64..1.2,
        nmax in 0u32..12,
    ) {
        let b = if bneg { -bmag } else { bmag };
        let p = ModelParams::new(variant, kappa, b, gamma).unwrap();
        let beta = p.beta().unwrap();
        let sv = variant.sign();
        let sb = b.signum();
        let table = spin_orbit_levels(&p, nmax).unwrap();
        prop_assert!(!table.entries.is_empty());
        for entry in &table.entries {
            for idx in &entry.indices {
                let a = b.abs() * ((2 * idx.n + 1) as f64 - sv * idx.s as f64 * sb);
                let x = idx.branch as f64 * (a + beta * beta).sqrt();
                let e = x * x + 2.0 * kappa * x - beta * beta;
                prop_assert!(
                    (e - entry.energy).abs() <= 1e-11 * entry.energy.abs().max(1.0),
                    "entry {} vs block-map {} at (n={}, s={}, branch={})",
                    entry.energy, e, idx.n, idx.s, idx.branch
                );
            }
        }
    }

    // The level arguments depend on the field only through s·sign b, so the
    // energy multiset is even in b.
    #[test]
    fn level_set_is_even_in_field(
        variant in arb_variant(),
        kappa in 0.1f64..1.4,
        bmag in 0.2f64..1.8,
        gamma in -1.2f64..1.2,
        nmax in 0u32..10,
    ) {
        let up = spin_orbit_levels(
            &ModelParams::new(variant, kappa, bmag, gamma).unwrap(), nmax).unwrap();
        let dn = spin_orbit_levels(
            &ModelParams::new(variant, kappa, -bmag, gamma).unwrap(), nmax).unwrap();
        let eu = up.energies();
        let ed = dn.energies();
        prop_assert_eq!(eu.len(), ed.len());
        for (a, b) in eu.iter().zip(ed.iter()) {
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }
    }
}

fn check_adjoint_pair(
    k1: &spinorb::green::SpinKernel,
    k2: &spinorb::green::SpinKernel,
) -> Result<(), TestCaseError> {
    let scale = k1
        .entries()
        .iter()
        .map(|e| e.norm())
        .fold(0.0f64, f64::max);
    // kernel of the adjoint: entry (a,b) at (r', r; z̄) is conj of (b,a) at (r, r'; z)
    close(k2.g11, k1.g11.conj(), 1e-12, scale)?;
    close(k2.g22, k1.g22.conj(), 1e-12, scale)?;
    close(k2.g12, k1.g21.conj(), 1e-12, scale)?;
    close(k2.g21, k1.g12.conj(), 1e-12, scale)?;
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn free_kernel_is_self_adjoint(
        variant in arb_variant(),
        kappa in 0.1f64..1.2,
        re in -3.0f64..1.5,
        im in 0.15f64..1.5,
        flip in any::<bool>(),
        x1 in -1.2f64..1.2, y1 in -1.2f64..1.2,
        x2 in -1.2f64..1.2, y2 in -1.2f64..1.2,
    ) {
        prop_assume!(((x1 - x2).powi(2) + (y1 - y2).powi(2)).sqrt() >= 0.25);
        let p = ModelParams::new(variant, kappa, 0.0, 0.0).unwrap();
        let z = Complex64::new(re, if flip { -im } else { im });
        let r = pt(x1, y1);
        let rp = pt(x2, y2);
        let k1 = green_free(&KernelRequest::new(p, r, rp, z)).unwrap();
        let k2 = green_free(&KernelRequest::new(p, rp, r, z.conj())).unwrap();
        check_adjoint_pair(&k1, &k2)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn magnetic_kernel_is_self_adjoint(
        variant in arb_variant(),
        kappa in 0.1f64..1.2,
        bmag in 0.25f64..1.6,
        bneg in any::<bool>(),
        gamma in -1.0f64..1.0,
        re in -3.0f64..1.5,
        im in 0.2f64..1.5,
        flip in any::<bool>(),
        x1 in -1.2f64..1.2, y1 in -1.2f64..1.2,
        x2 in -1.2f64..1.2, y2 in -1.2f64..1.2,
    ) {
        prop_assume!(((x1 - x2).powi(2) + (y1 - y2).powi(2)).sqrt() >= 0.25);
        let b = if bneg { -bmag } else { bmag };
        let p = ModelParams::new(variant, kappa, b, gamma).unwrap();
        let z = Complex64::new(re, if flip { -im } else { im });
        let r = pt(x1, y1);
        let rp = pt(x2, y2);
        let k1 = green_magnetic(&KernelRequest::new(p, r, rp, z)).unwrap();
        let k2 = green_magnetic(&KernelRequest::new(p, rp, r, z.conj())).unwrap();
        check_adjoint_pair(&k1, &k2)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // Continuity at vanishing field: the magnetic kernel at |b| = 1e-8 sits
    // within 1e-6 of the zero-field kernel at moderate separation. This is a
    // limit statement, not an identity — the tolerance is part of the claim.
    #[test]
    fn vanishing_field_approaches_free_kernel(
        variant in arb_variant(),
        kappa in 0.15f64..1.2,
        gamma in -1.0f64..1.0,
        bneg in any::<bool>(),
        re in -2.5f64..1.0,
        im in 0.3f64..1.5,
        x1 in -1.0f64..1.0, y1 in -1.0f64..1.0,
        x2 in -1.0f64..1.0, y2 in -1.0f64..1.0,
    ) {
        prop_assume!(((x1 - x2).powi(2) + (y1 - y2).powi(2)).sqrt() >= 0.4);
        let b = if bneg { -1e-8 } else { 1e-8 };
        let z = Complex64::new(re, im);
        let r = pt(x1, y1);
        let rp = pt(x2, y2);
        let free = ModelParams::new(variant, kappa, 0.0, gamma).unwrap();
        let mag = ModelParams::new(variant, kappa, b, gamma).unwrap();
        let kf = green_free(&KernelRequest::new(free, r, rp, z)).unwrap();
        let km = green_magnetic(&KernelRequest::new(mag, r, rp, z)).unwrap();
        let d = kf.max_abs_diff(&km);
        prop_assert!(d <= 1e-6, "small-field gap {d:.3e} exceeds 1e-6");
    }
}

// First resolvent difference as a composition check: on a coarse midpoint
// grid, (G(z1) - G(z2))/(z1 - z2) should match the integrated product
// sum_s G(r,s;z1) G(s,r';z2) h^2 to a few percent. Smoke test only — the
// quadrature, not the kernels, limits the accuracy here.
fn composition_gap<F>(kernel: F, z1: Complex64, z2: Complex64, half: f64, h: f64) -> f64
where
    F: Fn(Point2, Point2, Complex64) -> spinorb::green::SpinKernel,
{
    let r = pt(0.3, 0.1);
    let rp = pt(-0.2, -0.4);
    let n = (2.0 * half / h).round() as i32;
    let mut acc = [Complex64::ZERO; 4];
    for i in 0..n {
        let sx = -half + (i as f64 + 0.5) * h;
        for j in 0..n {
            let sy = -half + (j as f64 + 0.5) * h;
            let s = pt(sx, sy);
            let a = kernel(r, s, z1);
            let b = kernel(s, rp, z2);
            acc[0] += a.g11 * b.g11 + a.g12 * b.g21;
            acc[1] += a.g11 * b.g12 + a.g12 * b.g22;
            acc[2] += a.g21 * b.g11 + a.g22 * b.g21;
            acc[3] += a.g21 * b.g12 + a.g22 * b.g22;
        }
    }
    let w = h * h;
    let k1 = kernel(r, rp, z1);
    let k2 = kernel(r, rp, z2);
    let expect = [
        (k1.g11 - k2.g11) / (z1 - z2),
        (k1.g12 - k2.g12) / (z1 - z2),
        (k1.g21 - k2.g21) / (z1 - z2),
        (k1.g22 - k2.g22) / (z1 - z2),
    ];
    let scale = expect.iter().map(|e| e.norm()).fold(0.0f64, f64::max);
    acc.iter()
        .zip(expect.iter())
        .map(|(got, want)| (*got * w - *want).norm())
        .fold(0.0f64, f64::max)
        / scale
}

#[test]
fn composed_free_kernels_satisfy_resolvent_difference() {
    let p = ModelParams::new(Variant::R, 0.35, 0.0, 0.0).unwrap();
    let gap = composition_gap(
        |r, rp, z| green_free(&KernelRequest::new(p, r, rp, z)).unwrap(),
        Complex64::new(-1.0, 1.0),
        Complex64::new(-2.0, 1.4),
        7.0,
        0.25,
    );
    assert!(gap <= 0.05, "free composition gap {gap:.4} exceeds 5%");
}

#[test]
fn composed_magnetic_kernels_satisfy_resolvent_difference() {
    let p = ModelParams::new(Variant::D, 0.6, 1.0, 0.4).unwrap();
    let gap = composition_gap(
        |r, rp, z| green_magnetic(&KernelRequest::new(p, r, rp, z)).unwrap(),
        Complex64::new(-1.0, 1.0),
        Complex64::new(-2.5, 1.3),
        6.0,
        0.3,
    );
    assert!(gap <= 0.05, "magnetic composition gap {gap:.4} exceeds 5%");
}
