//! Frequency-domain symbols on uniform periodic grids.
//!
//! Every symbol here is a function of `z = e^{-iw/2}` (or of `w` directly)
//! sampled on a uniform grid over one period of `w`: 4π for the two-scale
//! symbols `P`, `Q`, the Gramians and the determinant `Δ`, 2π for the
//! existence functional `PE_s` and the plain periodizations. The grid size is
//! a power of two, so the substitution `z → -z` (that is, `w → w + 2π` on a
//! 4π-periodic grid) is an exact half-grid rotation and introduces no
//! interpolation error into the symbol algebra.

mod ops;

pub use ops::{
    delta_symbol, extract_filter, gramian, gramian_z_squared, pe_function, periodize,
    periodize_truncated, qs_symbol, refinement_residual, standard_wavelet_symbol,
    symbol_from_filter, two_scale_symbol_ps, two_scale_symbol_ps_via_pphi,
};
pub(crate) use ops::{accelerated_spectral_sum, periodization_value, probe_refinement, SumKind};

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
// Float math under no_std. Redundant (and flagged unused) whenever some
// crate in the build graph links std, whose inherent methods shadow these.
#[allow(unused_imports)]
use num_traits::Float;

use crate::catalog::GeneratorSpec;
use crate::error::{Error, Result};
use crate::util::wrap_centered;
use crate::Complex;

/// Frequency period of a symbol grid, in `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Period {
    TwoPi,
    FourPi,
}

impl Period {
    pub fn width(self) -> f64 {
        match self {
            Period::TwoPi => 2.0 * PI,
            Period::FourPi => 4.0 * PI,
        }
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Period::TwoPi => f.write_str("2pi"),
            Period::FourPi => f.write_str("4pi"),
        }
    }
}

/// Numeric thresholds used by divisions and near-zero classification.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Hard lower bound for denominators in pointwise divisions.
    pub eps_div: f64,
    /// Relative threshold for "this is a genuine zero": a grid value counts
    /// as zero when it falls below `tau_zero_rel` times the grid maximum.
    pub tau_zero_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps_div: 1e-12,
            tau_zero_rel: 1e-6,
        }
    }
}

/// A periodic function of `w` sampled on a uniform grid.
///
/// Grid point `m` sits at `w_m = -period/2 + m * period / N`. `N` is a power
/// of two; values are kept fully complex — several of the spline symbols are
/// real only after cancellation, and casting early would hide that.
#[derive(Debug, Clone)]
pub struct PeriodicSymbol {
    period: Period,
    values: Vec<Complex>,
    label: String,
}

impl PeriodicSymbol {
    pub(crate) fn from_fn(
        period: Period,
        n: usize,
        label: &str,
        mut f: impl FnMut(f64) -> Complex,
    ) -> Self {
        let mut values = Vec::with_capacity(n);
        for m in 0..n {
            let w = -period.width() / 2.0 + period.width() * (m as f64) / (n as f64);
            values.push(f(w));
        }
        PeriodicSymbol {
            period,
            values,
            label: label.to_string(),
        }
    }

    pub(crate) fn from_values(period: Period, values: Vec<Complex>, label: &str) -> Self {
        debug_assert!(values.len().is_power_of_two());
        PeriodicSymbol {
            period,
            values,
            label: label.to_string(),
        }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn period(&self) -> Period {
        self.period
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    /// Grid frequency of sample `m`.
    pub fn w_at(&self, m: usize) -> f64 {
        let width = self.period.width();
        -width / 2.0 + width * (m as f64) / (self.n() as f64)
    }

    /// `z = e^{-i w_m / 2}` at grid point `m`.
    pub fn z_at(&self, m: usize) -> Complex {
        Complex::cis(-self.w_at(m) / 2.0)
    }

    /// Evaluate at an arbitrary frequency. Exact grid lookup when `w` lands
    /// on a grid point (within 1e-9 of the spacing); otherwise 4-point
    /// barycentric (cubic Lagrange) interpolation on the periodic grid.
    pub fn eval(&self, w: f64) -> Complex {
        let n = self.n();
        let width = self.period.width();
        let spacing = width / n as f64;
        let wrapped = wrap_centered(w, width);
        let u = (wrapped + width / 2.0) / spacing;
        let nearest = u.round();
        if (u - nearest).abs() < 1e-9 {
            return self.values[(nearest as usize) % n];
        }
        // Cubic Lagrange on the four neighbouring periodic nodes.
        let j = u.floor() as i64;
        let t = u - j as f64;
        let idx = |off: i64| -> Complex {
            let m = (j + off).rem_euclid(n as i64) as usize;
            self.values[m]
        };
        let c_m1 = -t * (t - 1.0) * (t - 2.0) / 6.0;
        let c_0 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
        let c_1 = -(t + 1.0) * t * (t - 2.0) / 2.0;
        let c_2 = (t + 1.0) * t * (t - 1.0) / 6.0;
        idx(-1) * c_m1 + idx(0) * c_0 + idx(1) * c_1 + idx(2) * c_2
    }

    /// The symbol at `w + 2π`, i.e. `z → -z` on a 4π grid. Exact rotation by
    /// half the grid.
    pub fn rotated_half_period(&self) -> PeriodicSymbol {
        let n = self.n();
        let half = n / 2;
        let mut values = Vec::with_capacity(n);
        for m in 0..n {
            values.push(self.values[(m + half) % n]);
        }
        PeriodicSymbol {
            period: self.period,
            values,
            label: self.label.clone(),
        }
    }

    /// `(min, max)` of `|value|` over the grid.
    pub fn modulus_bounds(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for v in &self.values {
            let a = v.norm();
            if a < lo {
                lo = a;
            }
            if a > hi {
                hi = a;
            }
        }
        (lo, hi)
    }

    pub fn max_abs(&self) -> f64 {
        self.modulus_bounds().1
    }

    pub(crate) fn check_same_grid(&self, other: &PeriodicSymbol) -> Result<()> {
        if self.period != other.period || self.n() != other.n() {
            return Err(Error::GridMismatch {
                expected: alloc::format!("{} points over {}", self.n(), self.period),
                got: alloc::format!("{} points over {}", other.n(), other.period),
            });
        }
        Ok(())
    }
}

/// A finite Laurent filter `½ Σ c_k z^k`.
///
/// With the half-band tag set (the usual case here), `z = e^{-iw/2}` and the
/// taps are half-integer samples of the underlying function — e.g. the taps
/// of the interpolating two-scale symbol are exactly `S^φ(k/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentFilter {
    taps: BTreeMap<i64, Complex>,
    halfband: bool,
}

impl LaurentFilter {
    pub fn new(taps: BTreeMap<i64, Complex>, halfband: bool) -> Self {
        LaurentFilter { taps, halfband }
    }

    pub fn from_real_taps(taps: &BTreeMap<i64, f64>) -> Self {
        let taps = taps
            .iter()
            .map(|(&k, &v)| (k, Complex::new(v, 0.0)))
            .collect();
        LaurentFilter {
            taps,
            halfband: true,
        }
    }

    pub fn taps(&self) -> &BTreeMap<i64, Complex> {
        &self.taps
    }

    pub fn halfband(&self) -> bool {
        self.halfband
    }

    pub fn tap(&self, k: i64) -> Complex {
        self.taps.get(&k).copied().unwrap_or(Complex::new(0.0, 0.0))
    }

    /// Evaluate `½ Σ c_k z^k` at frequency `w`.
    pub fn eval(&self, w: f64) -> Complex {
        let scale = if self.halfband { 0.5 } else { 1.0 };
        let mut acc = Complex::new(0.0, 0.0);
        for (&k, &c) in &self.taps {
            acc += c * Complex::cis(-w * scale * k as f64);
        }
        acc * 0.5
    }

    /// Largest `|k|` with a stored tap.
    pub fn degree(&self) -> i64 {
        self.taps.keys().map(|k| k.abs()).max().unwrap_or(0)
    }
}

/// A complex-valued spectrum given by an evaluator, with decay metadata for
/// truncation control. This is the object the Gramian and the interpolation
/// ratio operate on; tabulated spectra for synthesis are built from it.
#[derive(Clone)]
pub struct Spectrum {
    eval: Arc<dyn Fn(f64) -> Complex + Send + Sync>,
    decay_order: u32,
    label: String,
}

impl fmt::Debug for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Spectrum")
            .field("label", &self.label)
            .field("decay_order", &self.decay_order)
            .finish()
    }
}

impl Spectrum {
    pub fn new(
        label: &str,
        decay_order: u32,
        eval: impl Fn(f64) -> Complex + Send + Sync + 'static,
    ) -> Self {
        Spectrum {
            eval: Arc::new(eval),
            decay_order,
            label: label.to_string(),
        }
    }

    /// The raw generator spectrum `φ̂`.
    pub fn phi_hat(gen: &GeneratorSpec) -> Self {
        let gen = gen.clone();
        Spectrum {
            decay_order: gen.decay_order(),
            label: alloc::format!("phi_hat.{}", gen.name()),
            eval: Arc::new(move |w| gen.phi_hat(w)),
        }
    }

    /// The interpolating spectrum `Ŝ^φ(w) = φ̂(w) / Σ_k φ̂(w + 2kπ)`.
    ///
    /// The denominator uses the generator's exact 2π periodization when one
    /// is available; otherwise the truncated sum is tabulated once on a fine
    /// period grid and interpolated (a per-evaluation truncated sum would
    /// make every downstream lattice sum quadratic in `K`). Band-limited
    /// generators without closed forms keep the direct sum, since their
    /// periodization may be discontinuous. The denominator is probed over
    /// one period and must stay above `eps_div`.
    pub fn interpolating(gen: &GeneratorSpec, k: usize, tol: &Tolerances) -> Result<Self> {
        let denominator: Arc<dyn Fn(f64) -> Complex + Send + Sync> =
            if gen.exact_periodization(Period::TwoPi).is_some() || gen.decay_order() == 0 {
                let gen2 = gen.clone();
                Arc::new(move |w| periodization_value(&gen2, Period::TwoPi, false, k, w))
            } else {
                let table = PeriodicSymbol::from_fn(Period::TwoPi, 8192, "m_2pi", |w| {
                    periodization_value(gen, Period::TwoPi, false, k, w)
                });
                Arc::new(move |w| table.eval(w))
            };

        let probe_n = 2048;
        for m in 0..probe_n {
            let w = -PI + 2.0 * PI * (m as f64) / (probe_n as f64);
            let d = denominator(w);
            if d.norm() < tol.eps_div {
                return Err(Error::DivisionNearZero {
                    w,
                    denom_abs: d.norm(),
                });
            }
        }
        let gen2 = gen.clone();
        Ok(Spectrum {
            decay_order: gen.decay_order(),
            label: alloc::format!("S_phi_hat.{}", gen.name()),
            eval: Arc::new(move |w| gen2.phi_hat(w) / denominator(w)),
        })
    }

    pub fn eval(&self, w: f64) -> Complex {
        (self.eval)(w)
    }

    pub fn decay_order(&self) -> u32 {
        self.decay_order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub(crate) fn eval_arc(&self) -> Arc<dyn Fn(f64) -> Complex + Send + Sync> {
        self.eval.clone()
    }
}
