//! Separated factors of the three scalar potentials and their assembly.
//!
//! A potential is a sum of transverse terms (radial factor times angular
//! factor), multiplied by one axial and one temporal line factor. All
//! derivatives used downstream are analytic; the radial factors know their
//! own exact limits at the axis so no caller ever divides zero by zero.

use crate::error::{Error, Result};
use crate::model::RadialKind;
use crate::specfun::{self, MAX_ORDER};
use serde::{Deserialize, Serialize};

/// Free constants of one full family. Indices 0 and 1 are the two coupled
/// transverse terms (for kappa = 0: the pressure-type term and the shear-type
/// difference term); index 2 is the rotational potential term.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct Coefficients {
    /// First radial constants (J/I/const/power basis member).
    pub radial_first: [f64; 3],
    /// Second radial constants (Y/K/log/inverse-power basis member).
    pub radial_second: [f64; 3],
    pub angular_cos: [f64; 3],
    pub angular_sin: [f64; 3],
    /// Axial pair (E, F) shared by the two coupled potentials.
    pub axial: [f64; 2],
    /// Temporal pair (G, H) shared by the two coupled potentials.
    pub temporal: [f64; 2],
    /// Axial pair of the rotational potential.
    pub chi_axial: [f64; 2],
    /// Temporal pair of the rotational potential.
    pub chi_temporal: [f64; 2],
}

impl Coefficients {
    pub fn is_zero(&self) -> bool {
        let all = |a: &[f64]| a.iter().all(|&v| v == 0.0);
        all(&self.radial_first) && all(&self.radial_second)
    }
}

/// Two-constant radial factor f(r) = c1 F1(alpha r) + c2 F2(alpha r).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialFactor {
    pub kind: RadialKind,
    pub order: u32,
    pub alpha: f64,
    pub c_first: f64,
    pub c_second: f64,
}

impl RadialFactor {
    pub fn new(kind: RadialKind, order: u32, alpha: f64, c_first: f64, c_second: f64) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::OrderOverflow {
                n: order,
                max: MAX_ORDER,
            });
        }
        match kind {
            RadialKind::LaplaceDegenerate => {
                if alpha != 0.0 {
                    return Err(Error::Domain(
                        "degenerate radial factor must have alpha = 0".into(),
                    ));
                }
            }
            _ => {
                if alpha <= 0.0 || !alpha.is_finite() {
                    return Err(Error::Domain(format!(
                        "radial wavenumber must be finite and > 0, got {alpha}"
                    )));
                }
            }
        }
        Ok(Self {
            kind,
            order,
            alpha,
            c_first,
            c_second,
        })
    }

    /// True when evaluation at r = 0 is well-defined and finite.
    pub fn finite_at_axis(&self) -> bool {
        self.c_second == 0.0 || (self.c_first == 0.0 && self.c_second == 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.c_first == 0.0 && self.c_second == 0.0
    }

    fn pair(&self, r: f64) -> (f64, f64) {
        let x = self.alpha * r;
        let n = self.order;
        match self.kind {
            RadialKind::Oscillatory => (specfun::jn(n, x), specfun::yn(n, x)),
            RadialKind::Modified => (specfun::bessel_i(n, x), specfun::kn(n, x)),
            RadialKind::LaplaceDegenerate => {
                if n == 0 {
                    (1.0, r.ln())
                } else {
                    (r.powi(n as i32), r.powi(-(n as i32)))
                }
            }
        }
    }

    /// d/dr of the two basis members.
    fn pair_d1(&self, r: f64) -> (f64, f64) {
        let x = self.alpha * r;
        let a = self.alpha;
        let n = self.order;
        match self.kind {
            RadialKind::Oscillatory => {
                if n == 0 {
                    (-a * specfun::jn(1, x), -a * specfun::yn(1, x))
                } else {
                    let nf = n as f64 / r;
                    (
                        a * specfun::jn(n - 1, x) - nf * specfun::jn(n, x),
                        a * specfun::yn(n - 1, x) - nf * specfun::yn(n, x),
                    )
                }
            }
            RadialKind::Modified => {
                if n == 0 {
                    (a * specfun::bessel_i(1, x), -a * specfun::kn(1, x))
                } else {
                    let nf = n as f64 / r;
                    (
                        a * specfun::bessel_i(n - 1, x) - nf * specfun::bessel_i(n, x),
                        -a * specfun::kn(n - 1, x) - nf * specfun::kn(n, x),
                    )
                }
            }
            RadialKind::LaplaceDegenerate => {
                if n == 0 {
                    (0.0, 1.0 / r)
                } else {
                    let nf = n as f64;
                    (
                        nf * r.powi(n as i32 - 1),
                        -nf * r.powi(-(n as i32) - 1),
                    )
                }
            }
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        if r == 0.0 {
            return self.axis_eval();
        }
        let (f1, f2) = self.pair(r);
        self.c_first * f1 + self.c_second * f2
    }

    pub fn d1(&self, r: f64) -> f64 {
        if r == 0.0 {
            return self.axis_d1();
        }
        let (g1, g2) = self.pair_d1(r);
        self.c_first * g1 + self.c_second * g2
    }

    /// Second derivative from the defining ODE, so it shares the accuracy of
    /// eval and d1:
    /// oscillatory: f'' = -f'/r - (alpha^2 - n^2/r^2) f,
    /// modified:    f'' = -f'/r + (alpha^2 + n^2/r^2) f,
    /// degenerate:  explicit power/log forms.
    pub fn d2(&self, r: f64) -> f64 {
        if r == 0.0 {
            return self.axis_d2();
        }
        let n2 = (self.order * self.order) as f64;
        match self.kind {
            RadialKind::Oscillatory => {
                -self.d1(r) / r - (self.alpha * self.alpha - n2 / (r * r)) * self.eval(r)
            }
            RadialKind::Modified => {
                -self.d1(r) / r + (self.alpha * self.alpha + n2 / (r * r)) * self.eval(r)
            }
            RadialKind::LaplaceDegenerate => {
                let n = self.order as i32;
                if n == 0 {
                    -self.c_second / (r * r)
                } else {
                    let nf = n as f64;
                    self.c_first * nf * (nf - 1.0) * r.powi(n - 2)
                        + self.c_second * nf * (nf + 1.0) * r.powi(-n - 2)
                }
            }
        }
    }

    /// f(r)/r with its axis limit; meaningful for order >= 1 (the order-0
    /// uses are always multiplied by a vanished angular derivative).
    pub fn over_r(&self, r: f64) -> f64 {
        if r == 0.0 {
            debug_assert!(self.finite_at_axis());
            return match (self.kind, self.order) {
                (RadialKind::LaplaceDegenerate, 1) => self.c_first,
                (_, 1) => self.c_first * self.alpha / 2.0,
                _ => 0.0,
            };
        }
        self.eval(r) / r
    }

    /// f'(r)/r with its axis limit; used by the axisymmetric stress/strain
    /// hoop terms, hence only for order 0 where f'(0) = 0.
    pub fn d1_over_r(&self, r: f64) -> f64 {
        if r == 0.0 {
            debug_assert!(self.order == 0 && self.finite_at_axis());
            return match self.kind {
                RadialKind::Oscillatory => -self.c_first * self.alpha * self.alpha / 2.0,
                RadialKind::Modified => self.c_first * self.alpha * self.alpha / 2.0,
                RadialKind::LaplaceDegenerate => 0.0,
            };
        }
        self.d1(r) / r
    }

    fn axis_eval(&self) -> f64 {
        match self.order {
            0 => match self.kind {
                RadialKind::LaplaceDegenerate => self.c_first,
                _ => self.c_first, // J_0(0) = I_0(0) = 1
            },
            _ => 0.0,
        }
    }

    fn axis_d1(&self) -> f64 {
        match (self.kind, self.order) {
            (RadialKind::LaplaceDegenerate, 1) => self.c_first,
            (RadialKind::Oscillatory, 1) | (RadialKind::Modified, 1) => {
                self.c_first * self.alpha / 2.0
            }
            _ => 0.0,
        }
    }

    fn axis_d2(&self) -> f64 {
        let a2 = self.alpha * self.alpha;
        match (self.kind, self.order) {
            (RadialKind::Oscillatory, 0) => -self.c_first * a2 / 2.0,
            (RadialKind::Modified, 0) => self.c_first * a2 / 2.0,
            (RadialKind::Oscillatory, 2) | (RadialKind::Modified, 2) => self.c_first * a2 / 4.0,
            (RadialKind::LaplaceDegenerate, 2) => 2.0 * self.c_first,
            _ => 0.0,
        }
    }
}

/// g(theta) = c_cos cos(n theta) + c_sin sin(n theta).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularFactor {
    pub order: u32,
    pub c_cos: f64,
    pub c_sin: f64,
}

impl AngularFactor {
    pub fn eval(&self, theta: f64) -> f64 {
        let a = self.order as f64 * theta;
        self.c_cos * a.cos() + self.c_sin * a.sin()
    }

    pub fn d1(&self, theta: f64) -> f64 {
        let n = self.order as f64;
        let a = n * theta;
        n * (-self.c_cos * a.sin() + self.c_sin * a.cos())
    }
}

/// Branch selector for a one-dimensional separated factor f with
/// f'' = c f: trigonometric for c < 0, exponential for c > 0, affine for
/// c = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineBranch {
    Trig,
    Exp,
    Affine,
}

/// One-dimensional factor along z or t:
/// Trig:   c1 cos(rate s) + c2 sin(rate s)
/// Exp:    c1 exp(-rate s) + c2 exp(rate s)
/// Affine: c1 + c2 s
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineFactor {
    pub branch: LineBranch,
    pub rate: f64,
    pub c_first: f64,
    pub c_second: f64,
}

impl LineFactor {
    /// Factor solving f'' = sep f for the given separation constant.
    pub fn from_separation(sep: f64, c_first: f64, c_second: f64) -> Self {
        if sep < 0.0 {
            Self {
                branch: LineBranch::Trig,
                rate: (-sep).sqrt(),
                c_first,
                c_second,
            }
        } else if sep > 0.0 {
            Self {
                branch: LineBranch::Exp,
                rate: sep.sqrt(),
                c_first,
                c_second,
            }
        } else {
            Self {
                branch: LineBranch::Affine,
                rate: 0.0,
                c_first,
                c_second,
            }
        }
    }

    pub fn eval(&self, s: f64) -> f64 {
        let a = self.rate * s;
        match self.branch {
            LineBranch::Trig => self.c_first * a.cos() + self.c_second * a.sin(),
            LineBranch::Exp => self.c_first * (-a).exp() + self.c_second * a.exp(),
            LineBranch::Affine => self.c_first + self.c_second * s,
        }
    }

    pub fn d1(&self, s: f64) -> f64 {
        let a = self.rate * s;
        match self.branch {
            LineBranch::Trig => self.rate * (-self.c_first * a.sin() + self.c_second * a.cos()),
            LineBranch::Exp => self.rate * (-self.c_first * (-a).exp() + self.c_second * a.exp()),
            LineBranch::Affine => self.c_second,
        }
    }

    pub fn d2(&self, s: f64) -> f64 {
        match self.branch {
            LineBranch::Trig => -self.rate * self.rate * self.eval(s),
            LineBranch::Exp => self.rate * self.rate * self.eval(s),
            LineBranch::Affine => 0.0,
        }
    }

    /// The separation constant this factor satisfies (f'' = sep f for the
    /// non-affine branches, 0 for affine).
    pub fn separation(&self) -> f64 {
        match self.branch {
            LineBranch::Trig => -self.rate * self.rate,
            LineBranch::Exp => self.rate * self.rate,
            LineBranch::Affine => 0.0,
        }
    }
}

/// Axial factor for separation constant kappa (any sign; kappa = 0 gives the
/// affine pair of the decoupled branch).
pub fn build_axial(kappa: f64, e: f64, f: f64) -> LineFactor {
    LineFactor::from_separation(kappa, e, f)
}

/// Temporal factor for separation constant tau; tau = 0 is rejected because
/// the governing equations degenerate to statics there.
pub fn build_temporal(tau: f64, g: f64, h: f64) -> Result<LineFactor> {
    if tau == 0.0 {
        return Err(Error::TauZero);
    }
    Ok(LineFactor::from_separation(tau, g, h))
}

/// One transverse summand with its coupling weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialTerm {
    pub weight: f64,
    pub radial: RadialFactor,
    pub angular: AngularFactor,
}

/// A fully separated scalar potential.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Potential {
    pub terms: Vec<PotentialTerm>,
    pub axial: LineFactor,
    pub temporal: LineFactor,
}

impl Potential {
    fn perp<R: Fn(&RadialFactor, f64) -> f64, A: Fn(&AngularFactor, f64) -> f64>(
        &self,
        r: f64,
        theta: f64,
        radial: R,
        angular: A,
    ) -> f64 {
        self.terms
            .iter()
            .map(|t| t.weight * radial(&t.radial, r) * angular(&t.angular, theta))
            .sum()
    }

    pub fn value(&self, r: f64, theta: f64, z: f64, t: f64) -> f64 {
        self.perp(r, theta, RadialFactor::eval, AngularFactor::eval)
            * self.axial.eval(z)
            * self.temporal.eval(t)
    }

    pub fn d_r(&self, r: f64, theta: f64, z: f64, t: f64) -> f64 {
        self.perp(r, theta, RadialFactor::d1, AngularFactor::eval)
            * self.axial.eval(z)
            * self.temporal.eval(t)
    }

    pub fn d_rr(&self, r: f64, theta: f64, z: f64, t: f64) -> f64 {
        self.perp(r, theta, RadialFactor::d2, AngularFactor::eval)
            * self.axial.eval(z)
            * self.temporal.eval(t)
    }

    /// (1/r) d/d theta, with the axis limit taken termwise; order-0 terms
    /// contribute exactly zero because their angular derivative vanishes.
    pub fn d_theta_over_r(&self, r: f64, theta: f64, z: f64, t: f64) -> f64 {
        let perp: f64 = self
            .terms
            .iter()
            .filter(|t| t.angular.order > 0)
            .map(|t| t.weight * t.radial.over_r(r) * t.angular.d1(theta))
            .sum();
        perp * self.axial.eval(z) * self.temporal.eval(t)
    }

    /// (1/r) d/dr with the axis limit; callers use this only on
    /// axisymmetric potentials (order 0 in every term).
    pub fn d_r_over_r(&self, r: f64, theta: f64, z: f64, t: f64) -> f64 {
        self.perp(r, theta, RadialFactor::d1_over_r, AngularFactor::eval)
            * self.axial.eval(z)
            * self.temporal.eval(t)
    }

    pub fn d_z(&self, r: f64, theta: f64, z: f64, t: f64) -> f64 {
        self.perp(r, theta, RadialFactor::eval, AngularFactor::eval)
            * self.axial.d1(z)
            * self.temporal.eval(t)
    }

    pub fn d_zz(&self, r: f64, theta: f64, z: f64, t: f64) -> f64 {
        self.perp(r, theta, RadialFactor::eval, AngularFactor::eval)
            * self.axial.d2(z)
            * self.temporal.eval(t)
    }

    pub fn d_rz(&self, r: f64, theta: f64, z: f64, t: f64) -> f64 {
        self.perp(r, theta, RadialFactor::d1, AngularFactor::eval)
            * self.axial.d1(z)
            * self.temporal.eval(t)
    }

    pub fn d_t(&self, r: f64, theta: f64, z: f64, t: f64) -> f64 {
        self.perp(r, theta, RadialFactor::eval, AngularFactor::eval)
            * self.axial.eval(z)
            * self.temporal.d1(t)
    }

    pub fn finite_at_axis(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.weight == 0.0 || t.radial.is_zero() || t.radial.finite_at_axis())
    }

    pub fn is_zero(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.weight == 0.0 || t.radial.is_zero())
    }
}
