//! Time-dependent coefficient pairs `(b, c)` with exact antiderivatives.
//!
//! Every solution representation in this crate is driven by the
//! antiderivatives `B(t) = ∫_0^t b` and `C(t) = ∫_0^t c` rather than by `b`,
//! `c` themselves, so profiles carry closed-form antiderivatives for the
//! shipped families and a cached numeric antiderivative for user-supplied
//! coefficients. `b(t) >= b0 > 0` is required throughout.

use crate::error::{Result, UtmError};
use crate::quadrature::gk::gk15_real;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Default working horizon: the largest figure horizon `12π`.
pub const T_MAX_DEFAULT: f64 = 12.0 * std::f64::consts::PI;

/// One scalar coefficient together with its exact antiderivative.
#[derive(Clone)]
enum Coeff {
    /// `a`
    Constant(f64),
    /// `a + s t`
    Linear { a: f64, s: f64 },
    /// `p/(t+1) + q`, antiderivative `p ln(1+t) + q t`
    RationalLog { p: f64, q: f64 },
    /// arbitrary callable with a cumulative Gauss–Kronrod cache
    Numeric {
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        cache: Arc<AntiderivativeCache>,
    },
}

impl Coeff {
    fn value(&self, t: f64) -> f64 {
        match self {
            Coeff::Constant(a) => *a,
            Coeff::Linear { a, s } => a + s * t,
            Coeff::RationalLog { p, q } => p / (t + 1.0) + q,
            Coeff::Numeric { f, .. } => f(t),
        }
    }

    fn antiderivative(&self, t: f64) -> f64 {
        match self {
            Coeff::Constant(a) => a * t,
            Coeff::Linear { a, s } => t * (a + 0.5 * s * t),
            Coeff::RationalLog { p, q } => p * (1.0 + t).ln() + q * t,
            Coeff::Numeric { cache, .. } => cache.eval(t),
        }
    }

    fn has_closed_form(&self) -> bool {
        !matches!(self, Coeff::Numeric { .. })
    }
}

/// Cumulative antiderivative on a fixed grid; immutable once built, so safe
/// to share across workers.
struct AntiderivativeCache {
    grid: Vec<f64>,
    cumulative: Vec<f64>,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl AntiderivativeCache {
    fn build(f: Arc<dyn Fn(f64) -> f64 + Send + Sync>, t_max: f64) -> Self {
        let n = 512usize;
        let mut grid = Vec::with_capacity(n + 1);
        let mut cumulative = Vec::with_capacity(n + 1);
        let h = t_max / n as f64;
        let mut acc = 0.0;
        grid.push(0.0);
        cumulative.push(0.0);
        for i in 1..=n {
            let a = (i - 1) as f64 * h;
            let b = i as f64 * h;
            acc += gk15_real(|t| f(t), a, b).0;
            grid.push(b);
            cumulative.push(acc);
        }
        Self { grid, cumulative, f }
    }

    fn eval(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let t = t.min(*self.grid.last().unwrap());
        let h = self.grid[1];
        let i = ((t / h) as usize).min(self.grid.len() - 2);
        self.cumulative[i] + gk15_real(|s| (self.f)(s), self.grid[i], t).0
    }
}

/// Tag for the shipped coefficient families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKind {
    Constant,
    Linear,
    RationalLog,
    UserNumeric,
}

/// Serializable description of a profile, used by the JSON problem config.
///
/// Parameter layout per kind:
/// - `constant`:     `[b, c]`
/// - `linear`:       `[b0, b1, c0, c1]` for `b = b0 + b1 t`, `c = c0 + c1 t`
/// - `rational_log`: `[p, q, c0, c1]`  for `b = p/(t+1) + q`, `c = c0 + c1 t`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoefficientSpec {
    pub kind: ProfileKind,
    pub params: Vec<f64>,
    #[serde(default)]
    pub t_max: Option<f64>,
}

/// The pair `(b, c)` with exact antiderivatives `(B, C)` and bounds.
#[derive(Clone)]
pub struct CoefficientProfile {
    b: Coeff,
    c: Coeff,
    /// The `b0` with `b(t) >= b0 > 0` on `[0, T_max]`.
    pub b_lower_bound: f64,
    pub kind: ProfileKind,
    pub t_max: f64,
}

impl CoefficientProfile {
    /// Builds a profile of the given kind. See [`CoefficientSpec`] for the
    /// parameter layout.
    pub fn make(kind: ProfileKind, params: &[f64]) -> Result<Self> {
        Self::make_with_horizon(kind, params, T_MAX_DEFAULT)
    }

    pub fn make_with_horizon(kind: ProfileKind, params: &[f64], t_max: f64) -> Result<Self> {
        let bad = |msg: &str| UtmError::InvalidProblem(msg.to_string());
        let (b, c) = match kind {
            ProfileKind::Constant => {
                if params.len() != 2 {
                    return Err(bad("constant kind takes params [b, c]"));
                }
                (Coeff::Constant(params[0]), Coeff::Constant(params[1]))
            }
            ProfileKind::Linear => {
                if params.len() != 4 {
                    return Err(bad("linear kind takes params [b0, b1, c0, c1]"));
                }
                (
                    Coeff::Linear { a: params[0], s: params[1] },
                    Coeff::Linear { a: params[2], s: params[3] },
                )
            }
            ProfileKind::RationalLog => {
                if params.len() != 4 {
                    return Err(bad("rational_log kind takes params [p, q, c0, c1]"));
                }
                (
                    Coeff::RationalLog { p: params[0], q: params[1] },
                    Coeff::Linear { a: params[2], s: params[3] },
                )
            }
            ProfileKind::UserNumeric => {
                return Err(bad("user_numeric profiles are built with from_fns"));
            }
        };
        Self::finish(b, c, kind, t_max)
    }

    /// Builds a `user_numeric` profile from callables; the antiderivatives are
    /// cached cumulative Gauss–Kronrod integrals, pre-populated here so the
    /// profile is immutable (and freely shareable) afterwards.
    pub fn from_fns<Fb, Fc>(b: Fb, c: Fc, t_max: f64) -> Result<Self>
    where
        Fb: Fn(f64) -> f64 + Send + Sync + 'static,
        Fc: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let bf: Arc<dyn Fn(f64) -> f64 + Send + Sync> = Arc::new(b);
        let cf: Arc<dyn Fn(f64) -> f64 + Send + Sync> = Arc::new(c);
        let b = Coeff::Numeric {
            cache: Arc::new(AntiderivativeCache::build(bf.clone(), t_max)),
            f: bf,
        };
        let c = Coeff::Numeric {
            cache: Arc::new(AntiderivativeCache::build(cf.clone(), t_max)),
            f: cf,
        };
        Self::finish(b, c, ProfileKind::UserNumeric, t_max)
    }

    pub fn from_spec(spec: &CoefficientSpec) -> Result<Self> {
        Self::make_with_horizon(spec.kind, &spec.params, spec.t_max.unwrap_or(T_MAX_DEFAULT))
    }

    fn finish(b: Coeff, c: Coeff, kind: ProfileKind, t_max: f64) -> Result<Self> {
        let mut inf_b = f64::INFINITY;
        for i in 0..=2048 {
            let t = t_max * i as f64 / 2048.0;
            inf_b = inf_b.min(b.value(t));
        }
        if !(inf_b > 0.0) {
            return Err(UtmError::NonPositiveDiffusivity(inf_b));
        }
        Ok(Self { b, c, b_lower_bound: inf_b, kind, t_max })
    }

    /// Convenience: heat-type profile with constant `b` and zero drift.
    pub fn constant(b: f64) -> Self {
        Self::make(ProfileKind::Constant, &[b, 0.0]).expect("b > 0")
    }

    #[inline]
    pub fn b(&self, t: f64) -> f64 {
        self.b.value(t)
    }

    #[inline]
    pub fn c(&self, t: f64) -> f64 {
        self.c.value(t)
    }

    /// `B(t) = ∫_0^t b(s) ds`, with `B(0) = 0` exactly.
    #[inline]
    pub fn big_b(&self, t: f64) -> f64 {
        if t == 0.0 {
            0.0
        } else {
            self.b.antiderivative(t)
        }
    }

    /// `C(t) = ∫_0^t c(s) ds`, with `C(0) = 0` exactly.
    #[inline]
    pub fn big_c(&self, t: f64) -> f64 {
        if t == 0.0 {
            0.0
        } else {
            self.c.antiderivative(t)
        }
    }

    /// True when the drift is identically zero (heat-type reductions).
    pub fn drift_is_zero(&self) -> bool {
        match &self.c {
            Coeff::Constant(a) => *a == 0.0,
            Coeff::Linear { a, s } => *a == 0.0 && *s == 0.0,
            _ => false,
        }
    }

    /// `C(t)/B(t)`, extended by l'Hôpital to `c(0)/b(0)` at `t = 0`.
    pub fn ratio_cb(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        let bb = self.big_b(t);
        if t == 0.0 || bb == 0.0 {
            self.c(0.0) / self.b(0.0)
        } else {
            self.big_c(t) / bb
        }
    }

    /// Decides whether `t ↦ C(t)/B(t)` is non-increasing on `(0, T]` by dense
    /// sampling plus the sign of `c B - b C` (the numerator of the derivative
    /// of the ratio).
    pub fn check_monotone_ratio(&self, t_end: f64) -> bool {
        debug_assert!(t_end > 0.0);
        let n = 1024usize;
        let mut prev = self.ratio_cb(0.0);
        let mut scale = prev.abs().max(1.0);
        for i in 1..=n {
            let t = t_end * i as f64 / n as f64;
            let r = self.ratio_cb(t);
            scale = scale.max(r.abs());
            if r > prev + 1e-12 * scale {
                return false;
            }
            // derivative sign: d/dt (C/B) = (c B - b C)/B^2
            let num = self.c(t) * self.big_b(t) - self.b(t) * self.big_c(t);
            let dscale = (self.c(t) * self.big_b(t)).abs().max((self.b(t) * self.big_c(t)).abs());
            if num > 1e-10 * dscale.max(1e-300) {
                return false;
            }
            prev = r;
        }
        true
    }

    /// Inverts `B` on `[0, B(T_max)]` to `|B(t) - r| <= 1e-12 (1 + r)`.
    /// Newton iteration safeguarded by bisection; `B` is strictly increasing.
    pub fn invert_b(&self, r: f64) -> Result<f64> {
        let b_end = self.big_b(self.t_max);
        if r < 0.0 || r > b_end * (1.0 + 1e-12) + 1e-300 {
            return Err(UtmError::OutOfRange(r, b_end));
        }
        if r == 0.0 {
            return Ok(0.0);
        }
        let (mut lo, mut hi) = (0.0f64, self.t_max);
        let mut t = (r / b_end).clamp(0.0, 1.0) * self.t_max;
        for _ in 0..100 {
            let f = self.big_b(t) - r;
            if f > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            if f.abs() <= 1e-13 * (1.0 + r) {
                return Ok(t);
            }
            let dt = f / self.b(t);
            let mut next = t - dt;
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - t).abs() <= f64::EPSILON * t.abs() {
                return Ok(next);
            }
            t = next;
        }
        Ok(t)
    }

    /// True when `B`, `C` come from closed-form antiderivatives.
    pub fn has_closed_form(&self) -> bool {
        self.b.has_closed_form() && self.c.has_closed_form()
    }
}

impl std::fmt::Debug for CoefficientProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoefficientProfile")
            .field("kind", &self.kind)
            .field("b_lower_bound", &self.b_lower_bound)
            .field("t_max", &self.t_max)
            .finish()
    }
}

/// The figure configurations shipped with the library.
pub mod library {
    use super::*;

    /// `b(t) = 6π/(t+1) + 1`, `c ≡ 0`.
    pub fn fig2_profile() -> CoefficientProfile {
        CoefficientProfile::make(
            ProfileKind::RationalLog,
            &[6.0 * std::f64::consts::PI, 1.0, 0.0, 0.0],
        )
        .unwrap()
    }

    /// `b(t) = 1 + 2t`, `c ≡ 1`.
    pub fn fig4_profile() -> CoefficientProfile {
        CoefficientProfile::make(ProfileKind::Linear, &[1.0, 2.0, 1.0, 0.0]).unwrap()
    }

    /// `b(t) = 1 + 2t`, `c(t) = t`.
    pub fn fig6_profile() -> CoefficientProfile {
        CoefficientProfile::make(ProfileKind::Linear, &[1.0, 2.0, 0.0, 1.0]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn closed_form_antiderivatives_match_quadrature() {
        let profiles = [
            library::fig2_profile(),
            library::fig4_profile(),
            library::fig6_profile(),
            CoefficientProfile::constant(1.0),
        ];
        for p in &profiles {
            for &t in &[0.3, 1.0, 4.7, 12.0] {
                let quad = gk15_panels(|s| p.b(s), 0.0, t, 64);
                assert!(
                    (p.big_b(t) - quad).abs() <= 1e-10 * (1.0 + p.big_b(t).abs()),
                    "B mismatch at t={t}: {} vs {}",
                    p.big_b(t),
                    quad
                );
                let quad_c = gk15_panels(|s| p.c(s), 0.0, t, 64);
                assert!((p.big_c(t) - quad_c).abs() <= 1e-10 * (1.0 + p.big_c(t).abs()));
            }
        }
    }

    fn gk15_panels(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        (0..n)
            .map(|i| gk15_real(&f, a + i as f64 * h, a + (i + 1) as f64 * h).0)
            .sum()
    }

    #[test]
    fn fig2_antiderivative_value() {
        // b(t) = 6π/(t+1) + 1 has B(t) = 6π ln(1+t) + t.
        let p = library::fig2_profile();
        let t = 1.0;
        assert_relative_eq!(
            p.big_b(t),
            6.0 * std::f64::consts::PI * 2.0f64.ln() + 1.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn linear_profile_values() {
        let p = library::fig4_profile();
        assert_relative_eq!(p.big_b(1.0), 2.0, max_relative = 1e-15);
        assert_relative_eq!(p.big_c(1.0), 1.0, max_relative = 1e-15);
        // C/B = 1/(1+t)
        assert_relative_eq!(p.ratio_cb(1.0), 0.5, max_relative = 1e-14);
        assert_relative_eq!(p.ratio_cb(0.0), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn ratio_limit_and_zero_drift() {
        let p = library::fig2_profile();
        assert_eq!(p.ratio_cb(3.0), 0.0);
        assert_eq!(p.ratio_cb(0.0), 0.0);
        assert!(p.drift_is_zero());
    }

    #[test]
    fn monotone_ratio_families() {
        assert!(library::fig4_profile().check_monotone_ratio(10.0));
        assert!(library::fig2_profile().check_monotone_ratio(10.0));
        // b ≡ 1, c(t) = t gives C/B = t/2, increasing.
        let p = CoefficientProfile::make(ProfileKind::Linear, &[1.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(!p.check_monotone_ratio(10.0));
        // Fig 6 profile: C/B = t/(2(1+t)) is increasing as well.
        assert!(!library::fig6_profile().check_monotone_ratio(10.0));
    }

    #[test]
    fn invert_b_round_trip() {
        let profiles = [
            library::fig2_profile(),
            library::fig4_profile(),
            CoefficientProfile::constant(1.0),
        ];
        for p in &profiles {
            for i in 0..=40 {
                let t = p.t_max * i as f64 / 40.0;
                let r = p.big_b(t);
                let back = p.invert_b(r).unwrap();
                assert!(
                    (back - t).abs() <= 1e-10 * (1.0 + t),
                    "round trip failed: t={t}, back={back}"
                );
            }
        }
        // b ≡ 1: inversion is the identity; b = 1+2t: B(1) = 2.
        let unit = CoefficientProfile::constant(1.0);
        assert_relative_eq!(unit.invert_b(2.5).unwrap(), 2.5, epsilon = 1e-12);
        assert_relative_eq!(library::fig4_profile().invert_b(2.0).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn invert_b_out_of_range() {
        let p = CoefficientProfile::constant(1.0);
        assert!(matches!(p.invert_b(-0.5), Err(UtmError::OutOfRange(..))));
        assert!(p.invert_b(1e9).is_err());
    }

    #[test]
    fn nonpositive_diffusivity_rejected() {
        let r = CoefficientProfile::make(ProfileKind::Linear, &[1.0, -1.0, 0.0, 0.0]);
        assert!(matches!(r, Err(UtmError::NonPositiveDiffusivity(_))));
    }

    #[test]
    fn user_numeric_matches_closed_form() {
        let p = CoefficientProfile::from_fns(|t| 1.0 + 2.0 * t, |_| 1.0, 12.0).unwrap();
        let q = library::fig4_profile();
        for &t in &[0.1, 0.9, 3.3, 11.7] {
            assert!((p.big_b(t) - q.big_b(t)).abs() <= 1e-10 * (1.0 + q.big_b(t)));
            assert!((p.big_c(t) - q.big_c(t)).abs() <= 1e-10 * (1.0 + q.big_c(t).abs()));
        }
        // finite difference of B recovers b
        for &t in &[0.5, 2.0, 7.0] {
            let h = 1e-6;
            let fd = (p.big_b(t + h) - p.big_b(t - h)) / (2.0 * h);
            assert!((fd - p.b(t)).abs() <= 1e-5 * p.b(t).abs());
        }
    }
}
