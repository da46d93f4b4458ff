//! Adaptive one-dimensional quadrature on a Gauss-Kronrod (7, 15) pair.
//!
//! Used as the numerical cross-check route for the closed-form limit-law
//! distribution functions, and for normalization checks of densities.

// Node and weight tables are transcribed at the reference precision.
#![allow(clippy::excessive_precision)]

/// Kronrod abscissae for the 15-point rule on [-1, 1] (nonnegative half).
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Gauss weights for the embedded 7-point rule (nodes XGK[1], XGK[3], XGK[5], XGK[7]).
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss-Kronrod panel: returns (K15 estimate, |K15 - G7| error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);

    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;

    for i in 0..7 {
        let dx = half * XGK[i];
        let fsum = f(center - dx) + f(center + dx);
        kronrod += WGK[i] * fsum;
        if i % 2 == 1 {
            gauss += WG[i / 2] * fsum;
        }
    }

    kronrod *= half;
    gauss *= half;
    (kronrod, (kronrod - gauss).abs())
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (value, err) = gk15(f, a, b);
    if err <= tol || depth >= 50 {
        return value;
    }
    let mid = 0.5 * (a + b);
    let half_tol = 0.5 * tol;
    adaptive(f, a, mid, half_tol, depth + 1) + adaptive(f, mid, b, half_tol, depth + 1)
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    if a > b {
        return -integrate(f, b, a, tol);
    }
    adaptive(&f, a, b, tol.max(1e-15), 0)
}

/// Non-adaptive fixed-panel integration: `panels` K15 panels of equal width.
///
/// Cheap and predictable for smooth integrands whose variation scale is known.
pub fn integrate_panels<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let mut total = 0.0;
    for i in 0..panels {
        let lo = a + i as f64 * width;
        let (v, _) = gk15(&f, lo, lo + width);
        total += v;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        // K15 is exact for this degree, adaptivity should not even trigger.
        let v = integrate(|x| 3.0 * x * x, 0.0, 2.0, 1e-12);
        assert!((v - 8.0).abs() < 1e-12);
    }

    #[test]
    fn gaussian_mass() {
        let v = integrate(
            |x| (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt(),
            -10.0,
            10.0,
            1e-12,
        );
        assert!((v - 1.0).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn oscillatory() {
        let v = integrate(|x| x.sin(), 0.0, std::f64::consts::PI, 1e-12);
        assert!((v - 2.0).abs() < 1e-10);
    }

    #[test]
    fn reversed_limits_negate() {
        let a = integrate(|x| x.exp(), 0.0, 1.0, 1e-12);
        let b = integrate(|x| x.exp(), 1.0, 0.0, 1e-12);
        assert_eq!(a, -b);
    }

    #[test]
    fn fixed_panels_gaussian() {
        let v = integrate_panels(
            |x| (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt(),
            -8.0,
            8.0,
            32,
        );
        assert!((v - 1.0).abs() < 1e-13);
    }
}
