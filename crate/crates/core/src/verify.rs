//! Finite-difference verification of assembled solutions.
//!
//! Every closed-form field in this crate can be checked by substituting it
//! back into the displacement equations with second-order central
//! differences. Two independent routes are computed: one assembles the
//! vector Laplacian directly, the other assembles gradient-of-divergence
//! and curl-of-curl; both must vanish on a genuine solution and they share
//! no cancellation, so agreement is meaningful.
//!
//! Steps are chosen per axis and per point: each coordinate gets a step
//! proportional to the local characteristic length of the field along that
//! axis (radial wavelength or distance to the axis, angular period, axial
//! and temporal rates). A single global step cannot serve both a field that
//! varies like r^-n near the axis and one that oscillates on long
//! wavelengths, so the scale is relative by construction.

use crate::error::{Error, Result};
use crate::fields::SolutionFamily;
use crate::model::Material;
use crate::sov::{ChiAngular, ChiSeparated};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Default relative finite-difference step. Balances O(h^2) truncation
/// against roundoff amplification ~ eps / h^2; 1e-4 puts both near 1e-8.
pub const DEFAULT_FD_SCALE: f64 = 1e-4;

/// Floor for residual normalizers so identically zero fields report zero.
pub const RESIDUAL_FLOOR: f64 = 1e-30;

/// Relative residuals of the displacement equation at one point, via the
/// two independent assembly routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointResidual {
    /// mu lap(u) + (lambda + mu) grad(div u) - rho u_tt.
    pub direct: f64,
    /// (lambda + 2 mu) grad(div u) - mu curl(curl u) - rho u_tt.
    pub decomposed: f64,
}

impl PointResidual {
    pub fn max(&self) -> f64 {
        self.direct.max(self.decomposed)
    }
}

/// Sampling box in cylindrical coordinates (radius strictly positive).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleDomain {
    pub r: [f64; 2],
    pub theta: [f64; 2],
    pub z: [f64; 2],
    pub t: [f64; 2],
}

impl SampleDomain {
    pub fn validate(&self) -> Result<()> {
        if !(self.r[0] > 0.0 && self.r[1] >= self.r[0]) {
            return Err(Error::Domain(format!(
                "radial sampling range must satisfy 0 < r0 <= r1, got {:?}",
                self.r
            )));
        }
        for (lo, hi) in [self.theta, self.z, self.t].map(|p| (p[0], p[1])) {
            if !(lo.is_finite() && hi.is_finite() && hi >= lo) {
                return Err(Error::Domain("sampling ranges must be finite and ordered".into()));
            }
        }
        Ok(())
    }
}

/// One verified sample point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualSample {
    pub point: [f64; 4],
    pub direct: f64,
    pub decomposed: f64,
}

/// Residual summary over a sampled domain; reproducible from the seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub seed: u64,
    pub scale: f64,
    pub count: usize,
    pub max_direct: f64,
    pub max_decomposed: f64,
    pub samples: Vec<ResidualSample>,
}

impl ResidualReport {
    pub fn max(&self) -> f64 {
        self.max_direct.max(self.max_decomposed)
    }
}

/// Realized forward and backward steps at `base`: the abscissae `base + step`
/// and `base - step` round to the grid, so derivative formulas must divide by
/// the spacings actually achieved (the differences below are exact) or they
/// pick up noise of order `|f'| ulp(base) / step^2`.
fn realized_steps(base: f64, step: f64) -> (f64, f64) {
    let forward = (base + step) - base;
    let backward = base - (base - step);
    (forward, backward)
}

/// Per-axis steps scaled to the family's local characteristic lengths.
///
/// The radial length is the wavenumber scale 1/alpha; it shrinks to the
/// scale of r itself only where the factors really vary that fast (r^n
/// structure for n >= 1, or a second solution singular on the axis).
/// Tying the step to r when the field is smooth through the axis would
/// inflate the evaluation-rounding noise eps |f| / h^2 like 1/r^2.
fn family_steps(family: &SolutionFamily, r: f64, scale: f64) -> [f64; 4] {
    let d = family.diagnostics();
    let n = family.mode().n() as f64;
    let alpha_max = d.alpha.iter().cloned().fold(0.0_f64, f64::max);
    let mut lr: f64 = 1.0;
    if alpha_max > 0.0 {
        lr = lr.min(1.0 / alpha_max);
    }
    if n >= 1.0 {
        lr = lr.min(r / n);
    }
    if !family.finite_at_axis() {
        lr = lr.min(r);
    }
    // Keep the whole stencil strictly off the axis.
    let hr = (scale * lr).min(0.5 * r);
    let lz = if family.mode().kappa() != 0.0 {
        1.0 / family.mode().kappa().abs().sqrt()
    } else {
        1.0
    };
    let lt = 1.0 / family.mode().tau().abs().sqrt();
    [hr, scale / n.max(1.0), scale * lz, scale * lt]
}

struct Partials {
    u: [f64; 3],
    d1: [[f64; 3]; 4],
    d2: [[f64; 3]; 4],
    m_rt: [f64; 3],
    m_rz: [f64; 3],
    m_tz: [f64; 3],
    /// Largest component magnitude over every stencil evaluation. The
    /// differences are formed from values of this size, so it sets the
    /// amplitude against which the residual can meaningfully be compared
    /// at points where the field itself passes through zero.
    sup: f64,
}

fn partials<F>(eval: F, p: [f64; 4], h: [f64; 4]) -> Result<Partials>
where
    F: Fn(f64, f64, f64, f64) -> Result<[f64; 3]>,
{
    if p[0] - h[0] <= 0.0 {
        return Err(Error::Domain(format!(
            "finite-difference stencil at r = {} with step {} crosses the axis",
            p[0], h[0]
        )));
    }
    let sup = std::cell::Cell::new(0.0_f64);
    let at = |dp: [f64; 4]| -> Result<[f64; 3]> {
        let v = eval(p[0] + dp[0], p[1] + dp[1], p[2] + dp[2], p[3] + dp[3])?;
        let m = v[0].abs().max(v[1].abs()).max(v[2].abs());
        if m > sup.get() {
            sup.set(m);
        }
        Ok(v)
    };
    let center = at([0.0; 4])?;

    let mut hp = [0.0; 4];
    let mut hm = [0.0; 4];
    for a in 0..4 {
        let (f, b) = realized_steps(p[a], h[a]);
        hp[a] = f;
        hm[a] = b;
    }

    let mut d1 = [[0.0; 3]; 4];
    let mut d2 = [[0.0; 3]; 4];
    for a in 0..4 {
        let mut dp = [0.0; 4];
        dp[a] = h[a];
        let plus = at(dp)?;
        dp[a] = -h[a];
        let minus = at(dp)?;
        let span = hp[a] + hm[a];
        for c in 0..3 {
            d1[a][c] = (plus[c] - minus[c]) / span;
            // Difference of one-sided slopes: the inner subtractions stay
            // exact, so no rounding noise of order eps |f| / h^2 enters.
            d2[a][c] = 2.0 * ((plus[c] - center[c]) / hp[a] - (center[c] - minus[c]) / hm[a])
                / span;
        }
    }

    let mixed = |a: usize, b: usize| -> Result<[f64; 3]> {
        let mut out = [0.0; 3];
        let mut dp = [0.0; 4];
        dp[a] = h[a];
        dp[b] = h[b];
        let pp = at(dp)?;
        dp[b] = -h[b];
        let pm = at(dp)?;
        dp[a] = -h[a];
        let mm = at(dp)?;
        dp[b] = h[b];
        let mp = at(dp)?;
        // The four corners reuse the same realized abscissae per axis, so
        // only the spans enter.
        let denom = (hp[a] + hm[a]) * (hp[b] + hm[b]);
        for c in 0..3 {
            out[c] = (pp[c] - pm[c] - mp[c] + mm[c]) / denom;
        }
        Ok(out)
    };

    let m_rt = mixed(0, 1)?;
    let m_rz = mixed(0, 2)?;
    let m_tz = mixed(1, 2)?;
    Ok(Partials {
        u: center,
        d1,
        d2,
        m_rt,
        m_rz,
        m_tz,
        sup: sup.get(),
    })
}

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Relative residuals of the displacement equation for a family at one
/// point, both routes, with per-axis steps `scale` times the local
/// characteristic lengths.
pub fn nl_residual(
    family: &SolutionFamily,
    r: f64,
    theta: f64,
    z: f64,
    t: f64,
    scale: f64,
) -> Result<PointResidual> {
    nl_residual_like(
        family,
        |r, th, z, t| {
            let s = family.displacement(r, th, z, t)?;
            Ok([s.u_r, s.u_theta, s.u_z])
        },
        r,
        theta,
        z,
        t,
        scale,
    )
}

/// Relative residuals of the displacement equation for an arbitrary field,
/// checked with the stencil geometry and normalization scales of a
/// reference family. Intended for fields derived from that family — for
/// example deliberately perturbed copies whose failure to solve the
/// equation must be detectable — so the steps and the characteristic term
/// scale match the structure the field inherits.
pub fn nl_residual_like<F>(
    reference: &SolutionFamily,
    eval: F,
    r: f64,
    theta: f64,
    z: f64,
    t: f64,
    scale: f64,
) -> Result<PointResidual>
where
    F: Fn(f64, f64, f64, f64) -> Result<[f64; 3]>,
{
    let family = reference;
    let h = family_steps(family, r, scale);
    let p = [r, theta, z, t];
    let pr = partials(eval, p, h)?;

    const R: usize = 0;
    const TH: usize = 1;
    const ZC: usize = 2;
    const TC: usize = 3;
    let u = pr.u;
    let d1 = &pr.d1;
    let d2 = &pr.d2;
    let inv_r = 1.0 / r;
    let inv_r2 = inv_r * inv_r;

    // Scalar Laplacian of each component.
    let lap = |c: usize| d2[R][c] + d1[R][c] * inv_r + d2[TH][c] * inv_r2 + d2[ZC][c];

    // Vector Laplacian.
    let vl = [
        lap(0) - u[0] * inv_r2 - 2.0 * d1[TH][1] * inv_r2,
        lap(1) - u[1] * inv_r2 + 2.0 * d1[TH][0] * inv_r2,
        lap(2),
    ];

    // Gradient of divergence.
    let gd = [
        d2[R][0] + d1[R][0] * inv_r - u[0] * inv_r2 + pr.m_rt[1] * inv_r - d1[TH][1] * inv_r2
            + pr.m_rz[2],
        pr.m_rt[0] * inv_r + d1[TH][0] * inv_r2 + d2[TH][1] * inv_r2 + pr.m_tz[2] * inv_r,
        pr.m_rz[0] + d1[ZC][0] * inv_r + pr.m_tz[1] * inv_r + d2[ZC][2],
    ];

    // Curl of curl.
    let cc = [
        pr.m_rt[1] * inv_r + d1[TH][1] * inv_r2 - d2[TH][0] * inv_r2 - d2[ZC][0] + pr.m_rz[2],
        pr.m_tz[2] * inv_r - d2[ZC][1] - d2[R][1] - d1[R][1] * inv_r + u[1] * inv_r2
            + pr.m_rt[0] * inv_r
            - d1[TH][0] * inv_r2,
        pr.m_rz[0] - d2[R][2] + d1[ZC][0] * inv_r - d1[R][2] * inv_r - d2[TH][2] * inv_r2
            + pr.m_tz[1] * inv_r,
    ];

    let mat = family.material();
    let (lam, mu, rho) = (mat.lambda(), mat.mu(), mat.rho());
    let inertia = [
        rho * d2[TC][0],
        rho * d2[TC][1],
        rho * d2[TC][2],
    ];

    let term = |k: f64, v: [f64; 3]| [k * v[0], k * v[1], k * v[2]];
    let res3 = |a: [f64; 3], b: [f64; 3], c: [f64; 3]| {
        [a[0] + b[0] - c[0], a[1] + b[1] - c[1], a[2] + b[2] - c[2]]
    };

    // Characteristic magnitude of the equation's terms over the stencil
    // neighborhood. The per-point term norms vanish together wherever a
    // separated factor crosses zero, but the differences are formed from
    // neighboring values of size pr.sup, so the meaningful relative scale
    // there is the operator applied to that amplitude.
    let mode = family.mode();
    let diag = family.diagnostics();
    let alpha_max = diag.alpha.iter().cloned().fold(0.0_f64, f64::max);
    let n_eff = (mode.n() as f64).max(1.0);
    let curvature =
        alpha_max * alpha_max + (n_eff / r) * (n_eff / r) + mode.kappa().abs();
    let m_max = mu.max(lam + 2.0 * mu).max((lam + mu).abs());
    let char_scale = pr.sup * (m_max * curvature + rho * mode.tau().abs());

    let t1 = term(mu, vl);
    let t2 = term(lam + mu, gd);
    let direct_num = norm3(res3(t1, t2, inertia));
    let direct_den = norm3(t1)
        .max(norm3(t2))
        .max(norm3(inertia))
        .max(char_scale)
        .max(RESIDUAL_FLOOR);

    let s1 = term(lam + 2.0 * mu, gd);
    let s2 = term(-mu, cc);
    let decomposed_num = norm3(res3(s1, s2, inertia));
    let decomposed_den = norm3(s1)
        .max(norm3(s2))
        .max(norm3(inertia))
        .max(char_scale)
        .max(RESIDUAL_FLOOR);

    Ok(PointResidual {
        direct: direct_num / direct_den,
        decomposed: decomposed_num / decomposed_den,
    })
}

/// Draw reproducible sample points from the domain.
pub fn sample_points(domain: &SampleDomain, count: usize, seed: u64) -> Result<Vec<[f64; 4]>> {
    domain.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |range: [f64; 2]| {
        if range[0] == range[1] {
            range[0]
        } else {
            rng.gen_range(range[0]..range[1])
        }
    };
    Ok((0..count)
        .map(|_| {
            [
                draw(domain.r),
                draw(domain.theta),
                draw(domain.z),
                draw(domain.t),
            ]
        })
        .collect())
}

/// Residual report over `count` reproducibly sampled points.
pub fn residual_report(
    family: &SolutionFamily,
    domain: &SampleDomain,
    count: usize,
    seed: u64,
    scale: f64,
) -> Result<ResidualReport> {
    let points = sample_points(domain, count, seed)?;
    let mut samples = Vec::with_capacity(points.len());
    let mut max_direct: f64 = 0.0;
    let mut max_decomposed: f64 = 0.0;
    for p in points {
        let res = nl_residual(family, p[0], p[1], p[2], p[3], scale)?;
        max_direct = max_direct.max(res.direct);
        max_decomposed = max_decomposed.max(res.decomposed);
        samples.push(ResidualSample {
            point: p,
            direct: res.direct,
            decomposed: res.decomposed,
        });
    }
    Ok(ResidualReport {
        seed,
        scale,
        count: samples.len(),
        max_direct,
        max_decomposed,
        samples,
    })
}

struct ScalarDerivs {
    lap3: f64,
    /// Largest magnitude among the four Laplacian pieces; an honest scale
    /// for the combined value, which can cancel to near zero.
    lap_scale: f64,
    d_zz: f64,
    d_tt: f64,
}

fn scalar_derivs<F: Fn(f64, f64, f64, f64) -> f64>(
    f: F,
    p: [f64; 4],
    h: [f64; 4],
) -> ScalarDerivs {
    let center = f(p[0], p[1], p[2], p[3]);
    let second = |a: usize| {
        let (hp, hm) = realized_steps(p[a], h[a]);
        let mut dp = p;
        dp[a] = p[a] + h[a];
        let fp = f(dp[0], dp[1], dp[2], dp[3]);
        dp[a] = p[a] - h[a];
        let fm = f(dp[0], dp[1], dp[2], dp[3]);
        let span = hp + hm;
        (
            (fp - fm) / span,
            2.0 * ((fp - center) / hp - (center - fm) / hm) / span,
        )
    };
    let (d_r, d_rr) = second(0);
    let (_, d_thth) = second(1);
    let (_, d_zz) = second(2);
    let (_, d_tt) = second(3);
    let pieces = [d_rr, d_r / p[0], d_thth / (p[0] * p[0]), d_zz];
    ScalarDerivs {
        lap3: pieces.iter().sum(),
        lap_scale: pieces.iter().fold(0.0_f64, |m, v| m.max(v.abs())),
        d_zz,
        d_tt,
    }
}

/// Relative residuals of the three governing scalar equations satisfied by
/// the family's potentials: the two coupled equations and the shear wave
/// equation of the rotational potential. All derivatives are finite
/// differences of the potential values, so this is an independent check of
/// the branch construction (radial kinds, wavenumbers, coupling weights).
pub fn potential_system_residuals(
    family: &SolutionFamily,
    r: f64,
    theta: f64,
    z: f64,
    t: f64,
    scale: f64,
) -> Result<[f64; 3]> {
    let h = family_steps(family, r, scale);
    let p = [r, theta, z, t];
    if r - h[0] <= 0.0 {
        return Err(Error::Domain(
            "finite-difference stencil crosses the axis".into(),
        ));
    }
    let phi = scalar_derivs(|r, th, z, t| family.phi().value(r, th, z, t), p, h);
    let psi = scalar_derivs(|r, th, z, t| family.psi().value(r, th, z, t), p, h);
    let chi = scalar_derivs(|r, th, z, t| family.chi().value(r, th, z, t), p, h);

    let mat = family.material();
    let (lam, mu, rho) = (mat.lambda(), mat.mu(), mat.rho());
    let pm = lam + 2.0 * mu;

    // Normalize by the largest term, where a combined Laplacian counts at
    // the size of its largest piece: the pieces are what the stencil
    // actually resolves, and their sum can cancel to near zero at nodes of
    // the separated factors.
    let rel = |terms: &[f64], scale_hint: f64| {
        let num: f64 = terms.iter().sum();
        let den = terms
            .iter()
            .fold(RESIDUAL_FLOOR.max(scale_hint), |acc, t| acc.max(t.abs()));
        (num / den).abs()
    };

    let eq1 = rel(
        &[
            pm * phi.lap3,
            (lam + mu) * psi.d_zz,
            -(lam + mu) * phi.d_zz,
            -rho * phi.d_tt,
        ],
        pm * phi.lap_scale,
    );
    let eq2 = rel(
        &[
            (lam + mu) * (phi.lap3 - phi.d_zz),
            mu * psi.lap3,
            (lam + mu) * psi.d_zz,
            -rho * psi.d_tt,
        ],
        (lam + mu).abs().max(mu) * phi.lap_scale.max(psi.lap_scale),
    );
    let eq3 = rel(&[mu * chi.lap3, -rho * chi.d_tt], mu * chi.lap_scale);
    Ok([eq1, eq2, eq3])
}

/// Relative residual of the shear wave equation for a separated rotational
/// potential, with steps matched to its own separation constants.
pub fn chi_wave_residual(
    mat: &Material,
    chi: &ChiSeparated,
    r: f64,
    theta: f64,
    z: f64,
    t: f64,
    scale: f64,
) -> Result<f64> {
    // Radial scale: wavenumber length, tightened to the scale of r itself
    // only where the factor has genuine r^nu structure near the axis (see
    // family_steps for the rounding-noise rationale).
    let mut lr: f64 = 1.0;
    if chi.eta_r != 0.0 {
        lr = lr.min(1.0 / chi.eta_r.abs().sqrt());
    }
    let nu = if chi.eta_theta > 0.0 {
        chi.eta_theta.sqrt()
    } else {
        0.0
    };
    if nu > 0.0 {
        lr = lr.min(r / nu.max(1.0));
    }
    if !chi.radial.finite_at_axis() || chi.eta_theta < 0.0 {
        lr = lr.min(r);
    }
    let lth = match chi.angular {
        ChiAngular::Trig { freq, .. } => 1.0 / freq.max(1.0),
        ChiAngular::Exp { rate, .. } => 1.0 / rate.max(1.0),
        ChiAngular::Affine { .. } => 1.0,
    };
    let lz = if chi.eta_z != 0.0 {
        1.0 / chi.eta_z.abs().sqrt()
    } else {
        1.0
    };
    let c_t2 = mat.mu() / mat.rho();
    let lt = if chi.eta_t != 0.0 {
        1.0 / (chi.eta_t.abs() * c_t2).sqrt()
    } else {
        1.0
    };
    let h = [
        (scale * lr).min(0.5 * r),
        scale * lth,
        scale * lz,
        scale * lt,
    ];
    if r - h[0] <= 0.0 {
        return Err(Error::Domain(
            "finite-difference stencil crosses the axis".into(),
        ));
    }
    // Evaluate eagerly so singular-radius errors surface as errors.
    let p = [r, theta, z, t];
    for a in 0..4 {
        let mut dp = p;
        dp[a] = p[a] - h[a];
        chi.value(dp[0], dp[1], dp[2], dp[3])?;
    }
    let d = scalar_derivs(
        |r, th, z, t| chi.value(r, th, z, t).unwrap_or(f64::NAN),
        p,
        h,
    );
    let t1 = mat.mu() * d.lap3;
    let t2 = -mat.rho() * d.d_tt;
    let scale = (mat.mu() * d.lap_scale).max(t2.abs()).max(RESIDUAL_FLOOR);
    Ok(((t1 + t2) / t1.abs().max(scale)).abs())
}
