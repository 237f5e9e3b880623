//! Randomized family generation that sweeps every radial classification.
//!
//! The two factor roots of the transverse operator (pressure-type and
//! shear-type) each sit in one of three regimes: negative (oscillatory),
//! zero (degenerate) and positive (monotone). Families are generated by
//! cycling through the eight admissible sign combinations plus the
//! decoupled zero-axial-constant case, drawing the roots first and solving
//! back for the separation constants. That reaches corners, the degenerate
//! rows in particular, that direct sampling of the constants would miss
//! with probability one.

use crate::error::Result;
use crate::fields::SolutionFamily;
use crate::model::{Material, ModeParams};
use crate::potentials::Coefficients;
use crate::verify::SampleDomain;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
enum RootSign {
    Neg,
    Zero,
    Pos,
}

use RootSign::{Neg, Pos, Zero};

/// Sign combinations (pressure-type root, shear-type root); (Zero, Zero)
/// would force a zero temporal constant and is inadmissible.
const ROOT_COMBOS: [(RootSign, RootSign); 8] = [
    (Neg, Neg),
    (Neg, Zero),
    (Neg, Pos),
    (Zero, Neg),
    (Zero, Pos),
    (Pos, Neg),
    (Pos, Zero),
    (Pos, Pos),
];

/// Number of distinct structural cases cycled by the generator: the eight
/// root sign combinations plus the decoupled case.
pub const CASE_COUNT: usize = ROOT_COMBOS.len() + 1;

fn signed(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let magnitude = rng.gen_range(lo..hi);
    if rng.gen_bool(0.5) {
        -magnitude
    } else {
        magnitude
    }
}

fn random_material(rng: &mut ChaCha8Rng) -> Material {
    let mu = rng.gen_range(0.6..1.8);
    let rho = rng.gen_range(0.6..1.8);
    // lambda + mu >= mu/2 keeps the branch coupling well away from zero.
    let lambda = rng.gen_range(-0.5 * mu..2.5 * mu);
    Material::new(lambda, mu, rho).expect("ranges keep the material admissible")
}

fn random_coefficients(rng: &mut ChaCha8Rng) -> Coefficients {
    let mut radial = || {
        [
            signed(rng, 0.4, 1.2),
            signed(rng, 0.4, 1.2),
            signed(rng, 0.4, 1.2),
        ]
    };
    let radial_first = radial();
    let radial_second = radial();
    let mut angular = || {
        [
            signed(rng, 0.3, 1.0),
            signed(rng, 0.3, 1.0),
            signed(rng, 0.3, 1.0),
        ]
    };
    let angular_cos = angular();
    let angular_sin = angular();
    let mut line = || [signed(rng, 0.3, 1.0), signed(rng, 0.3, 1.0)];
    Coefficients {
        radial_first,
        radial_second,
        angular_cos,
        angular_sin,
        axial: line(),
        temporal: line(),
        chi_axial: line(),
        chi_temporal: line(),
    }
}

fn root_value(rng: &mut ChaCha8Rng, sign: RootSign, lo: f64, hi: f64) -> f64 {
    match sign {
        Neg => -rng.gen_range(lo..hi),
        Zero => 0.0,
        Pos => rng.gen_range(lo..hi),
    }
}

/// Generate `count` families deterministically from `seed`, cycling the
/// structural case with the family index.
pub fn random_families(count: usize, seed: u64) -> Result<Vec<SolutionFamily>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|index| random_family(&mut rng, index))
        .collect()
}

fn random_family(rng: &mut ChaCha8Rng, index: usize) -> Result<SolutionFamily> {
    let case = index % CASE_COUNT;
    let material = random_material(rng);
    let n = rng.gen_range(0..=3u32);
    let coefficients = random_coefficients(rng);
    let (lambda, mu, rho) = (material.lambda(), material.mu(), material.rho());
    let p_mod = material.p_modulus();

    let (kappa, tau) = if case == ROOT_COMBOS.len() {
        // Decoupled case: draw the shear-type root, alternate its sign so
        // short sweeps still see both oscillatory and monotone kinds.
        let magnitude = rng.gen_range(0.3..2.2);
        let root2 = if (index / CASE_COUNT).is_multiple_of(2) {
            -magnitude
        } else {
            magnitude
        };
        (0.0, root2 * mu / rho)
    } else {
        let (s1, s2) = ROOT_COMBOS[case];
        // Equal nonzero signs need separated magnitude bands so the root
        // difference, and with it the temporal constant, stays nonzero.
        let (root1, root2) = if s1 == s2 {
            (
                root_value(rng, s1, 0.3, 1.0),
                root_value(rng, s2, 1.2, 2.2),
            )
        } else {
            (
                root_value(rng, s1, 0.3, 2.2),
                root_value(rng, s2, 0.3, 2.2),
            )
        };
        let tau = (root2 - root1) * mu * p_mod / (rho * (lambda + mu));
        let kappa = rho * tau / p_mod - root1;
        (kappa, tau)
    };

    let mode = ModeParams::new(kappa, tau, n)?;
    SolutionFamily::new(material, mode, coefficients)
}

/// Sampling box used by the randomized residual sweeps: an annulus well off
/// the axis (second-kind radial parts are singular there) with radial
/// arguments inside the best-conditioned range of the cylinder functions.
pub fn standard_domain() -> SampleDomain {
    SampleDomain {
        r: [0.6, 1.8],
        theta: [0.0, 2.0 * std::f64::consts::PI],
        z: [-0.6, 0.6],
        t: [0.1, 0.6],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::RadialKind;

    fn expected_kind(sign: RootSign) -> RadialKind {
        match sign {
            Neg => RadialKind::Oscillatory,
            Zero => RadialKind::LaplaceDegenerate,
            Pos => RadialKind::Modified,
        }
    }

    #[test]
    fn cases_cycle_through_every_classification() {
        let families = random_families(2 * CASE_COUNT, 7).unwrap();
        for (index, family) in families.iter().enumerate() {
            let case = index % CASE_COUNT;
            let d = family.diagnostics();
            if case == ROOT_COMBOS.len() {
                assert!(!d.coupled, "family {index} must be decoupled");
                assert_eq!(family.mode().kappa(), 0.0);
                assert!(
                    family.coefficients().axial[1].abs() >= 0.3,
                    "decoupled families need a linear axial part"
                );
            } else {
                let (s1, s2) = ROOT_COMBOS[case];
                assert!(d.coupled);
                assert_eq!(d.kind[0], expected_kind(s1), "family {index} branch 1");
                assert_eq!(d.kind[1], expected_kind(s2), "family {index} branch 2");
            }
        }
        // Both decoupled sign alternatives appear.
        let k8 = families[8].diagnostics().kind[0];
        let k17 = families[17].diagnostics().kind[0];
        assert_ne!(k8, k17);
    }

    #[test]
    fn generation_is_deterministic() {
        let a = random_families(12, 99).unwrap();
        let b = random_families(12, 99).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.mode().kappa(), y.mode().kappa());
            assert_eq!(x.mode().tau(), y.mode().tau());
            assert_eq!(x.coefficients().radial_first, y.coefficients().radial_first);
        }
        let c = random_families(12, 100).unwrap();
        assert!(a
            .iter()
            .zip(&c)
            .any(|(x, y)| x.mode().tau() != y.mode().tau()));
    }

    #[test]
    fn families_evaluate_on_the_standard_domain() {
        let domain = standard_domain();
        for family in random_families(CASE_COUNT, 3).unwrap() {
            for (r, z) in [
                (domain.r[0], domain.z[0]),
                (domain.r[1], domain.z[1]),
                (1.1, 0.0),
            ] {
                let u = family.displacement(r, 0.4, z, 0.3).unwrap();
                assert!(u.u_r.is_finite() && u.u_theta.is_finite() && u.u_z.is_finite());
            }
        }
    }
}
