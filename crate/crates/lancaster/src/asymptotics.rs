//! Asymptotic distribution theory for the component correlation pair.
//!
//! The moment estimator pair (rho_l1, rho_l2) is a smooth function of the
//! first twelve mixed moments of the standardized sample; the delta method
//! gives sqrt(n)-asymptotic normality with covariance Sigma* = M Sigma_m M^T,
//! M = B A. This module builds those matrices (from empirical or analytic
//! moments) and evaluates the limit laws of the max statistic: plain normals,
//! max of a correlated pair (a skew-normal mixture), and max of absolute
//! values of a correlated pair.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normal::{normal_cdf, normal_pdf, quantile_unchecked, skew_normal_cdf, SkewNormalParams};
use crate::sample::Sample;

/// Moment index pairs (k, l) for X^k Y^l, in the fixed order used by the
/// covariance matrix of moments.
pub const MOMENT_INDICES: [(usize, usize); 12] = [
    (1, 0),
    (0, 1),
    (2, 0),
    (0, 2),
    (1, 1),
    (3, 0),
    (0, 3),
    (2, 1),
    (1, 2),
    (4, 0),
    (0, 4),
    (2, 2),
];

pub type Matrix12 = [[f64; 12]; 12];
pub type Matrix6x12 = [[f64; 12]; 6];
pub type Matrix2x6 = [[f64; 6]; 2];

/// Standardized mixed moments e_kl = E[X^k Y^l] for k + l <= 8.
///
/// Standardization pins e_00 = 1, e_10 = e_01 = 0, e_20 = e_02 = 1 exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSet {
    e: [[f64; 9]; 9],
}

impl MomentSet {
    /// Empirical moments of the empirically standardized sample.
    pub fn from_sample(s: &Sample) -> Result<Self> {
        let n = s.len();
        let nf = n as f64;
        let sx = standardized(s.xs())?;
        let sy = standardized(s.ys())?;
        let mut e = [[0.0; 9]; 9];
        let mut px = [0.0f64; 9];
        let mut py = [0.0f64; 9];
        for i in 0..n {
            px[0] = 1.0;
            py[0] = 1.0;
            for k in 1..9 {
                px[k] = px[k - 1] * sx[i];
                py[k] = py[k - 1] * sy[i];
            }
            for k in 0..9 {
                for l in 0..(9 - k) {
                    e[k][l] += px[k] * py[l];
                }
            }
        }
        for row in e.iter_mut() {
            for v in row.iter_mut() {
                *v /= nf;
            }
        }
        // Standardization makes these exact; drop the floating-point dust.
        e[0][0] = 1.0;
        e[1][0] = 0.0;
        e[0][1] = 0.0;
        e[2][0] = 1.0;
        e[0][2] = 1.0;
        Ok(MomentSet { e })
    }

    /// Analytic moments of the standard bivariate normal with correlation rho
    /// (Isserlis expansion through order 8).
    pub fn bvn(rho: f64) -> Self {
        let mut e = [[0.0; 9]; 9];
        for (k, row) in e.iter_mut().enumerate() {
            for (l, v) in row.iter_mut().enumerate() {
                if k + l <= 8 {
                    *v = bvn_moment(k, l, rho);
                }
            }
        }
        MomentSet { e }
    }

    pub fn get(&self, k: usize, l: usize) -> f64 {
        self.e[k][l]
    }

    /// First component correlation rho_1 = e_11.
    pub fn rho1(&self) -> f64 {
        self.e[1][1]
    }

    /// Second component correlation rho_2 = (e_22 - 1)/sqrt((e_40-1)(e_04-1)).
    pub fn rho2(&self) -> Result<f64> {
        let e40 = self.e[4][0];
        let e04 = self.e[0][4];
        if e40 <= 1.0 || e04 <= 1.0 {
            return Err(Error::DegenerateKurtosis);
        }
        Ok((self.e[2][2] - 1.0) / ((e40 - 1.0) * (e04 - 1.0)).sqrt())
    }
}

fn standardized(v: &[f64]) -> Result<Vec<f64>> {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    if var <= 0.0 {
        return Err(Error::degenerate("zero variance in a margin".to_string()));
    }
    let sd = var.sqrt();
    Ok(v.iter().map(|x| (x - mean) / sd).collect())
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// E[X^k Y^l] for standard bivariate normal (X, Y) with correlation rho.
pub fn bvn_moment(k: usize, l: usize, rho: f64) -> f64 {
    if (k + l) % 2 == 1 || k % 2 != l % 2 {
        return 0.0;
    }
    let mut total = 0.0;
    let mut b = k % 2;
    while b <= k.min(l) {
        let a = (k - b) / 2;
        let c = (l - b) / 2;
        total += rho.powi(b as i32) * factorial(k) * factorial(l)
            / (2f64.powi(a as i32) * factorial(a) * factorial(b) * 2f64.powi(c as i32) * factorial(c));
        b += 2;
    }
    total
}

/// Covariance matrix of the twelve monomials X^k Y^l in `MOMENT_INDICES`
/// order: c_{kl,sr} = e_{k+s, l+r} - e_kl e_sr.
pub fn sigma_m_from_moments(m: &MomentSet) -> Matrix12 {
    let mut out = [[0.0; 12]; 12];
    for (i, &(k, l)) in MOMENT_INDICES.iter().enumerate() {
        for (j, &(s, r)) in MOMENT_INDICES.iter().enumerate() {
            out[i][j] = m.get(k + s, l + r) - m.get(k, l) * m.get(s, r);
        }
    }
    out
}

/// Empirical plug-in of the moment covariance matrix on the empirically
/// standardized sample.
pub fn moment_cov_matrix(s: &Sample) -> Result<Matrix12> {
    if s.len() < 12 {
        return Err(Error::SampleTooSmall {
            n: s.len(),
            min: 12,
        });
    }
    Ok(sigma_m_from_moments(&MomentSet::from_sample(s)?))
}

/// Jacobian A of the map from raw moments to
/// (s_x^2, s_y^2, s_xy, m40, m04, m22) of the standardized data.
pub fn matrix_a(m: &MomentSet) -> Matrix6x12 {
    let e30 = m.get(3, 0);
    let e03 = m.get(0, 3);
    let e40 = m.get(4, 0);
    let e04 = m.get(0, 4);
    let e21 = m.get(2, 1);
    let e12 = m.get(1, 2);
    let e22 = m.get(2, 2);

    // Column order follows MOMENT_INDICES:
    // 10, 01, 20, 02, 11, 30, 03, 21, 12, 40, 04, 22
    let mut a = [[0.0; 12]; 6];
    a[0][2] = 1.0;
    a[1][3] = 1.0;
    a[2][4] = 1.0;
    a[3][0] = -4.0 * e30;
    a[3][2] = -2.0 * e40;
    a[3][9] = 1.0;
    a[4][1] = -4.0 * e03;
    a[4][3] = -2.0 * e04;
    a[4][10] = 1.0;
    a[5][0] = -2.0 * e12;
    a[5][1] = -2.0 * e21;
    a[5][2] = -e22;
    a[5][3] = -e22;
    a[5][11] = 1.0;
    a
}

/// Jacobian B of the map from the six reduced statistics to the component
/// correlations (rho_1, rho_2).
pub fn matrix_b(m: &MomentSet, rho1: f64, rho2: f64) -> Result<Matrix2x6> {
    let e40 = m.get(4, 0);
    let e04 = m.get(0, 4);
    if e40 <= 1.0 || e04 <= 1.0 {
        return Err(Error::DegenerateKurtosis);
    }
    let mut b = [[0.0; 6]; 2];
    b[0][0] = -rho1 / 2.0;
    b[0][1] = -rho1 / 2.0;
    b[0][2] = 1.0;
    b[1][3] = -rho2 / (2.0 * (e40 - 1.0));
    b[1][4] = -rho2 / (2.0 * (e04 - 1.0));
    b[1][5] = 1.0 / ((e40 - 1.0) * (e04 - 1.0)).sqrt();
    Ok(b)
}

/// Symmetric 2x2 asymptotic covariance of sqrt(n) (rho_1_hat, rho_2_hat).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovMatrix2 {
    pub s11: f64,
    pub s12: f64,
    pub s22: f64,
}

impl CovMatrix2 {
    pub fn identity() -> Self {
        CovMatrix2 {
            s11: 1.0,
            s12: 0.0,
            s22: 1.0,
        }
    }

    pub fn sigma1(&self) -> f64 {
        self.s11.max(0.0).sqrt()
    }

    pub fn sigma2(&self) -> f64 {
        self.s22.max(0.0).sqrt()
    }

    /// Correlation of the two components; 0 when a variance vanishes.
    pub fn tau(&self) -> f64 {
        let d = self.sigma1() * self.sigma2();
        if d > 0.0 {
            (self.s12 / d).clamp(-1.0, 1.0)
        } else {
            0.0
        }
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let tr = self.s11 + self.s22;
        let det = self.s11 * self.s22 - self.s12 * self.s12;
        0.5 * (tr - (tr * tr - 4.0 * det).max(0.0).sqrt())
    }
}

/// Sigma* = M Sigma_m M^T with M = B A, from a full moment set.
pub fn sigma_star_from_moments(m: &MomentSet) -> Result<CovMatrix2> {
    let rho1 = m.rho1();
    let rho2 = m.rho2()?;
    let a = matrix_a(m);
    let b = matrix_b(m, rho1, rho2)?;
    let sm = sigma_m_from_moments(m);

    // M = B A  (2 x 12)
    let mut mm = [[0.0; 12]; 2];
    for i in 0..2 {
        for j in 0..12 {
            let mut acc = 0.0;
            for k in 0..6 {
                acc += b[i][k] * a[k][j];
            }
            mm[i][j] = acc;
        }
    }
    // Sigma* = M Sigma_m M^T
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = 0.0;
            for p in 0..12 {
                let mut inner = 0.0;
                for q in 0..12 {
                    inner += sm[p][q] * mm[j][q];
                }
                acc += mm[i][p] * inner;
            }
            out[i][j] = acc;
        }
    }
    Ok(CovMatrix2 {
        s11: out[0][0],
        s12: 0.5 * (out[0][1] + out[1][0]),
        s22: out[1][1],
    })
}

/// Empirical plug-in estimate of Sigma* for the moment estimator pair.
pub fn sigma_star(s: &Sample) -> Result<CovMatrix2> {
    if s.len() < 12 {
        return Err(Error::SampleTooSmall {
            n: s.len(),
            min: 12,
        });
    }
    sigma_star_from_moments(&MomentSet::from_sample(s)?)
}

/// Sigma* under independence: unit diagonal with off-diagonal
/// tau = E[X^3] E[Y^3] / sqrt((E[X^4]-1)(E[Y^4]-1)) of the standardized
/// margins (zero for symmetric margins).
pub fn sigma_star_independence(s: &Sample) -> Result<CovMatrix2> {
    let tau = independence_tau(s)?;
    Ok(CovMatrix2 {
        s11: 1.0,
        s12: tau,
        s22: 1.0,
    })
}

pub(crate) fn independence_tau(s: &Sample) -> Result<f64> {
    let sx = standardized(s.xs())?;
    let sy = standardized(s.ys())?;
    let nf = s.len() as f64;
    let m3 = |v: &[f64]| v.iter().map(|x| x * x * x).sum::<f64>() / nf;
    let m4 = |v: &[f64]| v.iter().map(|x| x * x * x * x).sum::<f64>() / nf;
    let (x3, x4) = (m3(&sx), m4(&sx));
    let (y3, y4) = (m3(&sy), m4(&sy));
    if x4 <= 1.0 || y4 <= 1.0 {
        return Err(Error::DegenerateKurtosis);
    }
    Ok((x3 * y3 / ((x4 - 1.0) * (y4 - 1.0)).sqrt()).clamp(-1.0, 1.0))
}

/// Closed-form Sigma* under bivariate normality with correlation rho.
pub fn bvn_sigma_star(rho: f64) -> CovMatrix2 {
    let q = (1.0 - rho * rho).powi(2);
    CovMatrix2 {
        s11: q,
        s12: 2.0 * rho * q,
        s22: q * (3.0 * rho.powi(4) + 10.0 * rho * rho + 1.0),
    }
}

/// Which of the Theorem-3 limit laws applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LawKind {
    /// N(0, sigma1^2): |rho_1| strictly dominates.
    Normal1,
    /// N(0, sigma2^2): |rho_2| strictly dominates.
    Normal2,
    /// max(U, V) for the centered normal pair: rho_1 = rho_2 != 0.
    MaxPair,
    /// max(-U, V): rho_1 = -rho_2 != 0 (tau is negated internally).
    MaxNegPair,
    /// max(|U|, |V|): rho_1 = rho_2 = 0.
    MaxAbsPair,
}

/// A parameterized limit distribution of the max statistic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitLaw {
    kind: LawKind,
    sigma1: f64,
    sigma2: f64,
    tau: f64,
}

/// Guard band keeping sqrt(1 - tau^2) away from zero; an exact |tau| = 1 is
/// rejected where the spec calls for it, anything else is floating drift.
fn clamp_tau(tau: f64) -> f64 {
    tau.clamp(-1.0 + 1e-12, 1.0 - 1e-12)
}

impl LimitLaw {
    pub fn new(kind: LawKind, sigma1: f64, sigma2: f64, tau: f64) -> Result<Self> {
        if !(sigma1.is_finite() && sigma1 > 0.0 && sigma2.is_finite() && sigma2 > 0.0) {
            return Err(Error::domain(format!(
                "limit law scales must be positive and finite, got ({sigma1}, {sigma2})"
            )));
        }
        if !(tau.is_finite() && (-1.0..=1.0).contains(&tau)) {
            return Err(Error::domain(format!(
                "limit law tau must lie in [-1, 1], got {tau}"
            )));
        }
        Ok(LimitLaw {
            kind,
            sigma1,
            sigma2,
            tau,
        })
    }

    /// Law with scales and correlation read from a covariance matrix.
    pub fn from_cov(kind: LawKind, cov: &CovMatrix2) -> Result<Self> {
        LimitLaw::new(kind, cov.sigma1(), cov.sigma2(), cov.tau())
    }

    pub fn kind(&self) -> LawKind {
        self.kind
    }

    pub fn sigma1(&self) -> f64 {
        self.sigma1
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Signed tau as used by the pair laws (max(-U, V) flips the sign).
    fn effective_tau(&self) -> f64 {
        match self.kind {
            LawKind::MaxNegPair => -self.tau,
            _ => self.tau,
        }
    }

    pub fn cdf(&self, z: f64) -> Result<f64> {
        match self.kind {
            LawKind::Normal1 => Ok(normal_cdf(z / self.sigma1)),
            LawKind::Normal2 => Ok(normal_cdf(z / self.sigma2)),
            LawKind::MaxPair | LawKind::MaxNegPair => Ok(self.max_pair_cdf(z)),
            LawKind::MaxAbsPair => self.max_abs_cdf(z),
        }
    }

    pub fn pdf(&self, z: f64) -> Result<f64> {
        match self.kind {
            LawKind::Normal1 => Ok(normal_pdf(z / self.sigma1) / self.sigma1),
            LawKind::Normal2 => Ok(normal_pdf(z / self.sigma2) / self.sigma2),
            LawKind::MaxPair | LawKind::MaxNegPair => self.max_pair_pdf(z),
            LawKind::MaxAbsPair => self.max_abs_pdf(z),
        }
    }

    /// P(max(U, V) <= z) as an equal-weight mixture of two skew-normal cdfs.
    fn max_pair_cdf(&self, z: f64) -> f64 {
        let tau = clamp_tau(self.effective_tau());
        if tau == 0.0 {
            // Independent components: the quadrant probability factorizes.
            return normal_cdf(z / self.sigma1) * normal_cdf(z / self.sigma2);
        }
        let root = (1.0 - tau * tau).sqrt();
        let g1 = SkewNormalParams::new(self.sigma1, (self.sigma1 / self.sigma2 - tau) / root)
            .expect("validated scales");
        let g2 = SkewNormalParams::new(self.sigma2, (self.sigma2 / self.sigma1 - tau) / root)
            .expect("validated scales");
        (0.5 * (skew_normal_cdf(z, &g1) + skew_normal_cdf(z, &g2))).clamp(0.0, 1.0)
    }

    fn max_pair_pdf(&self, z: f64) -> Result<f64> {
        let tau = self.effective_tau();
        if tau.abs() == 1.0 {
            return Err(Error::SingularCorrelation);
        }
        let tau = clamp_tau(tau);
        let root = (1.0 - tau * tau).sqrt();
        let (s1, s2) = (self.sigma1, self.sigma2);
        let d1 = normal_pdf(z / s1) / s1 * normal_cdf((z - tau * s2 * z / s1) / (s2 * root));
        let d2 = normal_pdf(z / s2) / s2 * normal_cdf((z - tau * s1 * z / s2) / (s1 * root));
        Ok(d1 + d2)
    }

    /// P(max(|U|, |V|) <= z); in the standard case sigma1 = sigma2 = 1,
    /// tau = 0 this is exactly (2 Phi(z) - 1)^2.
    fn max_abs_cdf(&self, z: f64) -> Result<f64> {
        if z < 0.0 {
            return Err(Error::domain(format!(
                "max-abs law is supported on z >= 0, got {z}"
            )));
        }
        if self.tau.abs() == 1.0 {
            return Err(Error::SingularCorrelation);
        }
        let tau = clamp_tau(self.tau);
        if tau == 0.0 {
            let d1 = 2.0 * normal_cdf(z / self.sigma1) - 1.0;
            let d2 = 2.0 * normal_cdf(z / self.sigma2) - 1.0;
            return Ok(d1 * d2);
        }
        let root = (1.0 - tau * tau).sqrt();
        let r12 = self.sigma1 / self.sigma2;
        let r21 = self.sigma2 / self.sigma1;
        let g = |scale: f64, shape: f64, at: f64| {
            skew_normal_cdf(at, &SkewNormalParams::new(scale, shape).expect("validated"))
        };
        let a1m = (r12 - tau) / root;
        let a1p = (r12 + tau) / root;
        let a2m = (r21 - tau) / root;
        let a2p = (r21 + tau) / root;
        let atan_sum =
            (a1m.atan() + a1p.atan() + a2m.atan() + a2p.atan()) / std::f64::consts::PI;
        let v = g(self.sigma1, a1m, z) + g(self.sigma1, a1p, -z) + g(self.sigma2, a2m, z)
            + g(self.sigma2, a2p, -z)
            - 2.0
            + atan_sum;
        Ok(v.clamp(0.0, 1.0))
    }

    /// Density of max(|U|, |V|): a four-term signed combination of
    /// skew-normal densities, supported on z > 0.
    fn max_abs_pdf(&self, z: f64) -> Result<f64> {
        if z < 0.0 {
            return Err(Error::domain(format!(
                "max-abs law is supported on z >= 0, got {z}"
            )));
        }
        if self.tau.abs() == 1.0 {
            return Err(Error::SingularCorrelation);
        }
        let tau = clamp_tau(self.tau);
        let root = (1.0 - tau * tau).sqrt();
        let r12 = self.sigma1 / self.sigma2;
        let r21 = self.sigma2 / self.sigma1;
        let g = |scale: f64, shape: f64, at: f64| {
            crate::normal::skew_normal_pdf(at, &SkewNormalParams::new(scale, shape).expect("validated"))
        };
        Ok(g(self.sigma1, (r12 - tau) / root, z) - g(self.sigma1, (r12 + tau) / root, -z)
            + g(self.sigma2, (r21 - tau) / root, z)
            - g(self.sigma2, (r21 + tau) / root, -z))
    }

    /// p-quantile by bracketed bisection on the cdf.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::domain(format!(
                "quantile requires p in (0, 1), got {p}"
            )));
        }
        match self.kind {
            LawKind::Normal1 => return Ok(self.sigma1 * quantile_unchecked(p)),
            LawKind::Normal2 => return Ok(self.sigma2 * quantile_unchecked(p)),
            _ => {}
        }
        let smax = self.sigma1.max(self.sigma2);
        let mut lo = if self.kind == LawKind::MaxAbsPair {
            0.0
        } else {
            -10.0 * smax
        };
        let mut hi = 10.0 * smax;
        // The bracket is generous; extend it in the (extreme-p) corner cases.
        while self.cdf(hi)? < p && hi < 80.0 * smax {
            hi *= 2.0;
        }
        if self.kind != LawKind::MaxAbsPair {
            while self.cdf(lo)? > p && lo > -80.0 * smax {
                lo *= 2.0;
            }
        }
        for _ in 0..200 {
            if hi - lo < 1e-12 {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if self.cdf(mid)? < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}
