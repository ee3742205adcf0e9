//! Spectra of the interpolating generators and inverse-Fourier synthesis.
//!
//! Spectra are tabulated on a symmetric truncated band `[-W_max, W_max]`
//! with `M` samples (a power of two) placed at cell midpoints,
//! `w_i = -W_max + (i + 1/2)·Δw`. The offset grid matters: every spectral
//! jump in this problem family sits on the π-lattice, and midpoint sampling
//! keeps jump points exactly between nodes, where a one-sided sample value
//! would otherwise bias the quadrature across the whole time range. Where
//! the construction permits, a tabulation also carries its defining
//! evaluator so that half-argument lookups like `Ŝ^φ(w/2)` are exact rather
//! than interpolated.
//!
//! Time-domain functions live on dyadic grids of step `2^-J` and are
//! produced by midpoint quadrature of the inverse Fourier integral —
//! deterministic, fixed-order summation per output point.

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
use crate::existence::{check_v0_interpolation, ExistenceReport, Stage, Verdict};
use crate::symbols::{
    accelerated_spectral_sum, periodization_value, probe_refinement, Period, PeriodicSymbol,
    Spectrum, SumKind, Tolerances,
};
use crate::Complex;

type EvalArc = Arc<dyn Fn(f64) -> Complex + Send + Sync>;

/// A complex spectrum tabulated on `[-w_max, w_max]`.
#[derive(Clone)]
pub struct SpectralFunction {
    w_max: f64,
    values: Vec<Complex>,
    label: String,
    decay_order: u32,
    eval: Option<EvalArc>,
    tail_fraction: f64,
}

impl fmt::Debug for SpectralFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectralFunction")
            .field("label", &self.label)
            .field("w_max", &self.w_max)
            .field("m", &self.m())
            .field("tail_fraction", &self.tail_fraction)
            .finish()
    }
}

impl SpectralFunction {
    /// Tabulate a spectrum evaluator on `m` midpoint samples.
    pub fn from_spectrum(spec: &Spectrum, w_max: f64, m: usize) -> Result<SpectralFunction> {
        if !m.is_power_of_two() || m < 64 {
            return Err(Error::ResolutionError(alloc::format!(
                "sample count {m} must be a power of two >= 64"
            )));
        }
        if !w_max.is_finite() || w_max <= 0.0 {
            return Err(Error::ResolutionError("w_max must be positive".into()));
        }
        let eval = spec.eval_arc();
        let dw = 2.0 * w_max / m as f64;
        let mut values = Vec::with_capacity(m);
        for i in 0..m {
            let w = -w_max + (i as f64 + 0.5) * dw;
            let v = eval(w);
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::InvalidGenerator(alloc::format!(
                    "spectrum {} is non-finite at w = {w}",
                    spec.label()
                )));
            }
            values.push(v);
        }
        let tail_fraction = tail_fraction(&values);
        Ok(SpectralFunction {
            w_max,
            values,
            label: spec.label().to_string(),
            decay_order: spec.decay_order(),
            eval: Some(eval),
            tail_fraction,
        })
    }

    /// Number of samples.
    pub fn m(&self) -> usize {
        self.values.len()
    }

    pub fn w_max(&self) -> f64 {
        self.w_max
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn decay_order(&self) -> u32 {
        self.decay_order
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    pub fn w_at(&self, i: usize) -> f64 {
        let dw = 2.0 * self.w_max / self.m() as f64;
        -self.w_max + (i as f64 + 0.5) * dw
    }

    /// Share of `|f̂|²` mass in the outer 10% of the grid. Synthesis quality
    /// degrades when this is not small; the CLI surfaces it as a warning
    /// above 1e-6.
    pub fn tail_fraction(&self) -> f64 {
        self.tail_fraction
    }

    /// Max deviation from Hermitian symmetry `f̂(-w) = conj(f̂(w))` on the
    /// grid; near zero for real time-domain targets.
    pub fn hermitian_residual(&self) -> f64 {
        let m = self.m();
        let mut worst = 0.0f64;
        for i in 0..m {
            let r = (self.values[m - 1 - i] - self.values[i].conj()).norm();
            if r > worst {
                worst = r;
            }
        }
        worst
    }

    /// Evaluate at an arbitrary frequency: the defining evaluator when
    /// present, otherwise linear interpolation on the tabulation (zero
    /// outside the covered band).
    pub fn eval_at(&self, w: f64) -> Complex {
        if let Some(eval) = &self.eval {
            return eval(w);
        }
        if w.abs() > self.w_max {
            return Complex::new(0.0, 0.0);
        }
        let m = self.m();
        let u = (w + self.w_max) / (2.0 * self.w_max) * m as f64 - 0.5;
        let clamped = u.max(0.0).min(m as f64 - 1.0);
        let i = (clamped.floor() as usize).min(m - 2);
        let t = clamped - i as f64;
        self.values[i] * (1.0 - t) + self.values[i + 1] * t
    }

    fn eval_arc_or_tabulated(&self) -> EvalArc {
        if let Some(eval) = &self.eval {
            return eval.clone();
        }
        let copy = self.clone();
        Arc::new(move |w| copy.eval_at(w))
    }

    /// Package a derived tabulation. All derived spectra here target real
    /// time functions, so the tabulation is Hermitian-symmetrized: symbol
    /// grids store one-sided values at their jump nodes (the half-open
    /// membership convention), and interpolating across a jump would
    /// otherwise leave mirror-asymmetric transition zones of the same local
    /// size but broken symmetry.
    fn derived(&self, label: String, mut values: Vec<Complex>, eval: EvalArc) -> SpectralFunction {
        let m = values.len();
        for i in 0..m / 2 {
            let a = values[i];
            let b = values[m - 1 - i];
            let sym = (a + b.conj()) / 2.0;
            values[i] = sym;
            values[m - 1 - i] = sym.conj();
        }
        let tail_fraction = tail_fraction(&values);
        SpectralFunction {
            w_max: self.w_max,
            values,
            label,
            decay_order: self.decay_order,
            eval: Some(eval),
            tail_fraction,
        }
    }
}

fn tail_fraction(values: &[Complex]) -> f64 {
    let n = values.len();
    let cut = n / 20; // outer 10% split across both ends
    let total: f64 = values.iter().map(|v| v.norm_sqr()).sum();
    if total == 0.0 {
        return 0.0;
    }
    let outer: f64 = values[..cut]
        .iter()
        .chain(values[n - cut..].iter())
        .map(|v| v.norm_sqr())
        .sum();
    outer / total
}

/// Samples on a dyadic time grid of step `2^-j`; point `i` sits at
/// `x = (n0 + i) / 2^j`.
#[derive(Debug, Clone)]
pub struct TimeFunction {
    j: u32,
    n0: i64,
    values: Vec<Complex>,
    label: String,
}

impl TimeFunction {
    pub(crate) fn new(j: u32, n0: i64, values: Vec<Complex>, label: &str) -> Self {
        TimeFunction {
            j,
            n0,
            values,
            label: label.to_string(),
        }
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex] {
        &self.values
    }

    pub fn x_at(&self, i: usize) -> f64 {
        (self.n0 + i as i64) as f64 / (1u64 << self.j) as f64
    }

    /// Grid index of the first sample (`x_at(0) = index_origin / 2^j`).
    pub fn index_origin(&self) -> i64 {
        self.n0
    }

    /// Covered interval `[x_first, x_last]`.
    pub fn range(&self) -> (f64, f64) {
        (self.x_at(0), self.x_at(self.len() - 1))
    }

    /// Grid index of `x`, which must land on the dyadic grid.
    pub fn index_of(&self, x: f64) -> Result<usize> {
        let t = x * (1u64 << self.j) as f64;
        let n = t.round();
        if (t - n).abs() > 1e-9 {
            return Err(Error::ResolutionError(alloc::format!(
                "x = {x} is not on the 2^-{} grid",
                self.j
            )));
        }
        let idx = n as i64 - self.n0;
        if idx < 0 || idx as usize >= self.len() {
            return Err(Error::ResolutionError(alloc::format!(
                "x = {x} outside the covered range"
            )));
        }
        Ok(idx as usize)
    }

    pub fn value_at(&self, x: f64) -> Result<Complex> {
        Ok(self.values[self.index_of(x)?])
    }

    /// Largest `|Im|` over the grid; small for real targets.
    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    /// Restriction to `[a, b]` (grid points inside the window).
    pub fn window(&self, a: f64, b: f64) -> Result<TimeFunction> {
        let scale = (1u64 << self.j) as f64;
        let lo = (a * scale).ceil() as i64;
        let hi = (b * scale).floor() as i64;
        let first = lo.max(self.n0);
        let last = hi.min(self.n0 + self.len() as i64 - 1);
        if first > last {
            return Err(Error::ResolutionError(
                "window does not intersect the grid".into(),
            ));
        }
        let offset = (first - self.n0) as usize;
        let count = (last - first + 1) as usize;
        Ok(TimeFunction {
            j: self.j,
            n0: first,
            values: self.values[offset..offset + count].to_vec(),
            label: self.label.clone(),
        })
    }
}

/// Grid parameters for synthesizing a generator's time functions, tuned to
/// its spectral decay.
#[derive(Debug, Clone, Copy)]
pub struct SynthesisGrid {
    pub w_max: f64,
    pub m: usize,
    pub range: (f64, f64),
    pub j: u32,
    /// Symbol grid size to pair with this synthesis grid. Band-limited
    /// generators have indicator-type symbols whose jumps are resolved by
    /// interpolation, so they get a finer symbol grid.
    pub symbol_n: usize,
}

/// Synthesis grid adequate for the generator's decay class.
///
/// Band-limited spectra need fine sampling but little reach; decay-1 spectra
/// (jump discontinuities in time) need a very wide band to push the ringing
/// floor below comparison tolerances; smooth spline-type spectra are cheap.
pub fn recommended_grid(gen: &GeneratorSpec) -> SynthesisGrid {
    match gen.decay_order() {
        0 => SynthesisGrid {
            w_max: 8.0 * PI,
            m: 1 << 16,
            range: (-16.0, 16.0),
            j: 8,
            symbol_n: 1 << 14,
        },
        1 => SynthesisGrid {
            w_max: 4096.0 * PI,
            m: 1 << 17,
            range: (-6.0, 6.0),
            j: 8,
            symbol_n: 1 << 12,
        },
        // Order-2 splines are only C^0: spectral truncation error piles up
        // at the kinks, which sit exactly on the sampling lattice, so the
        // band must reach much further than for smoother splines.
        2 => SynthesisGrid {
            w_max: 2048.0 * PI,
            m: 1 << 17,
            range: (-16.0, 16.0),
            j: 8,
            symbol_n: 1 << 12,
        },
        _ => SynthesisGrid {
            w_max: 256.0 * PI,
            m: 1 << 16,
            range: (-16.0, 16.0),
            j: 8,
            symbol_n: 1 << 12,
        },
    }
}

/// Spectrum of the interpolating scaling function,
/// `Ŝ^φ(w) = φ̂(w) / Σ_k φ̂(w + 2kπ)`.
///
/// Requires the `V₀` existence check to pass. After construction the
/// partition identity `Σ_k Ŝ^φ(w + 2kπ) = 1` is probed; for decay order
/// below 2 the raw lattice sum converges only under regularization, so the
/// probe goes through the generator's closed-form periodization instead.
pub fn interp_scaling_hat(
    gen: &GeneratorSpec,
    w_max: f64,
    m: usize,
    k: usize,
    tol: &Tolerances,
) -> Result<SpectralFunction> {
    let v0 = check_v0_interpolation(gen, 4096, k, tol)?;
    if v0.verdict != Verdict::Exists {
        return Err(Error::PreconditionFailed(alloc::format!(
            "V0 interpolation basis verdict is {} for {}",
            v0.verdict,
            gen.name()
        )));
    }
    let spectrum = Spectrum::interpolating(gen, k, tol)?;
    let sf = SpectralFunction::from_spectrum(&spectrum, w_max, m)?;

    // Partition-of-unity probe over one period.
    let probe_points = 33usize;
    let mut worst = 0.0f64;
    for i in 0..probe_points {
        let w = -PI + 2.0 * PI * (i as f64) / (probe_points as f64);
        let s = if gen.decay_order() >= 2 {
            let eval = spectrum.eval_arc();
            let f = |u: f64| eval(u);
            accelerated_spectral_sum(
                &f,
                SumKind::Plain,
                w,
                2.0 * PI,
                k.max(64),
                Some(gen.decay_order() - 1),
            )
        } else if let Some(exact) = gen.exact_periodization(Period::TwoPi) {
            exact(w) / periodization_value(gen, Period::TwoPi, false, k, w)
        } else {
            // No closed form and sub-quadratic decay: the identity is only
            // Abel-summable, so there is nothing meaningful to probe.
            continue;
        };
        let r = (s - Complex::new(1.0, 0.0)).norm();
        if r > worst {
            worst = r;
        }
    }
    if worst > 1e-6 {
        return Err(Error::InvalidGenerator(alloc::format!(
            "partition-of-unity probe residual {worst:.3e} exceeds 1e-6 for {}",
            gen.name()
        )));
    }
    Ok(sf)
}

/// Spectrum of the interpolation wavelet, `Ŝ^ψ(w) = Q_s(z) Ŝ^φ(w/2)`.
///
/// `Q_s` is looked up exactly when `w` lands on its grid and by
/// trigonometric interpolation otherwise; the half-argument factor uses the
/// scaling spectrum's own evaluator.
pub fn interp_wavelet_hat(
    s_phi_hat: &SpectralFunction,
    q_s: &PeriodicSymbol,
    report: &ExistenceReport,
) -> Result<SpectralFunction> {
    if report.stage != Stage::WCheck || report.verdict != Verdict::Exists {
        return Err(Error::PreconditionFailed(alloc::format!(
            "wavelet existence verdict is {} (stage {})",
            report.verdict,
            report.stage
        )));
    }
    let m = s_phi_hat.m();
    let phi_eval = s_phi_hat.eval_arc_or_tabulated();
    let q = q_s.clone();
    let mut values = Vec::with_capacity(m);
    for i in 0..m {
        let w = s_phi_hat.w_at(i);
        values.push(q.eval(w) * phi_eval(w / 2.0));
    }
    let label = derived_label(s_phi_hat.label(), "S_phi_hat", "S_psi_hat");
    let eval: EvalArc = Arc::new(move |w| q.eval(w) * phi_eval(w / 2.0));
    Ok(s_phi_hat.derived(label, values, eval))
}

/// Reference (non-interpolating) wavelet spectrum
/// `ψ̂(w) = -z E_φ(-z) conj(P_φ(-z)) φ̂(w/2)`.
///
/// The supplied symbol is verified against the refinement identity
/// `φ̂(w) = P_φ(z) φ̂(w/2)` before use.
pub fn standard_wavelet_hat(
    phi_hat: &SpectralFunction,
    p_phi: &PeriodicSymbol,
    e_phi: &PeriodicSymbol,
) -> Result<SpectralFunction> {
    p_phi.check_same_grid(e_phi)?;
    let phi_eval = phi_hat.eval_arc_or_tabulated();
    probe_refinement(&|w| phi_eval(w), &|w| p_phi.eval(w))?;

    let p = p_phi.clone();
    let e = e_phi.clone();
    let m = phi_hat.m();
    let point = move |w: f64, phi: &EvalArc| -> Complex {
        let z = Complex::cis(-w / 2.0);
        let shifted = w + 2.0 * PI;
        -z * e.eval(shifted) * p.eval(shifted).conj() * phi(w / 2.0)
    };
    let mut values = Vec::with_capacity(m);
    for i in 0..m {
        values.push(point(phi_hat.w_at(i), &phi_eval));
    }
    let label = derived_label(phi_hat.label(), "phi_hat", "psi_hat");
    let eval: EvalArc = Arc::new(move |w| point(w, &phi_eval));
    Ok(phi_hat.derived(label, values, eval))
}

/// Dual scaling spectrum `Ŝ̃^φ(w) = Ŝ^φ(w) / Σ_k |Ŝ^φ(w + 2kπ)|²`.
///
/// The denominator (the Gramian at unit shifts) is 2π-periodic; it is
/// precomputed on one period and must stay above `eps_div` (the Riesz-basis
/// hypothesis).
pub fn dual_scaling_hat(
    s_phi_hat: &SpectralFunction,
    k: usize,
    tol: &Tolerances,
) -> Result<SpectralFunction> {
    let eval = s_phi_hat.eval_arc_or_tabulated();
    let d = s_phi_hat.decay_order();
    let eff_k = if (1..=2).contains(&d) { k.max(256) } else { k };
    let tail = if d >= 1 { Some(2 * d - 1) } else { None };

    let grid_n = 2048usize;
    let mut den = Vec::with_capacity(grid_n);
    for q in 0..grid_n {
        let w = -PI + 2.0 * PI * (q as f64) / (grid_n as f64);
        let f = |u: f64| eval(u);
        let s = accelerated_spectral_sum(&f, SumKind::AbsSquared, w, 2.0 * PI, eff_k, tail);
        if s.re < tol.eps_div {
            return Err(Error::DivisionNearZero { w, denom_abs: s.re });
        }
        den.push(s.re);
    }

    let den = Arc::new(den);
    let lookup = {
        let den = den.clone();
        move |w: f64| -> f64 {
            let width = 2.0 * PI;
            let wrapped = crate::util::wrap_centered(w, width);
            let u = (wrapped + PI) / width * grid_n as f64;
            let nearest = u.round();
            if (u - nearest).abs() < 1e-9 {
                return den[(nearest as usize) % grid_n];
            }
            let i = u.floor() as usize % grid_n;
            let t = u - u.floor();
            den[i] * (1.0 - t) + den[(i + 1) % grid_n] * t
        }
    };

    let m = s_phi_hat.m();
    let mut values = Vec::with_capacity(m);
    for i in 0..m {
        let w = s_phi_hat.w_at(i);
        values.push(s_phi_hat.values()[i] / lookup(w));
    }
    let label = derived_label(s_phi_hat.label(), "S_phi_hat", "S_phi_dual_hat");
    let eval2 = eval.clone();
    let eval_out: EvalArc = Arc::new(move |w| eval2(w) / lookup(w));
    Ok(s_phi_hat.derived(label, values, eval_out))
}

fn derived_label(base: &str, from: &str, to: &str) -> String {
    if let Some(rest) = base.strip_prefix(from) {
        alloc::format!("{to}{rest}")
    } else {
        to.to_string()
    }
}

/// Inverse Fourier transform by midpoint quadrature:
/// `f(x_n) = Δw/2π · Σ_i f̂(w_i) e^{+i w_i x_n}`.
///
/// Output points are the dyadic grid points of step `2^-j` inside `range`.
/// The summation order per output point is fixed, so results are
/// reproducible bit-for-bit regardless of how callers parallelize over
/// output points.
pub fn inverse_fourier(
    spec: &SpectralFunction,
    j: u32,
    range: (f64, f64),
) -> Result<TimeFunction> {
    let (x_min, x_max) = range;
    if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min {
        return Err(Error::ResolutionError("empty time range".into()));
    }
    let width = x_max - x_min;
    let m = spec.m();
    let needed = 2.0 * width * spec.w_max() / PI;
    if (m as f64) < needed {
        return Err(Error::ResolutionError(alloc::format!(
            "M = {m} below the Nyquist requirement {} for this range",
            needed.ceil()
        )));
    }

    let scale = (1u64 << j) as f64;
    let n0 = (x_min * scale).ceil() as i64;
    let n1 = (x_max * scale).floor() as i64;
    if n1 < n0 {
        return Err(Error::ResolutionError(
            "time range contains no dyadic grid points".into(),
        ));
    }

    let dw = 2.0 * spec.w_max() / m as f64;
    let w0 = -spec.w_max() + 0.5 * dw;
    let samples = spec.values();
    let norm = dw / (2.0 * PI);

    let mut values = Vec::with_capacity((n1 - n0 + 1) as usize);
    for n in n0..=n1 {
        let x = n as f64 / scale;
        let mut acc = Complex::new(0.0, 0.0);
        let step = Complex::cis(dw * x);
        let mut rot = Complex::cis(w0 * x);
        for (i, &v) in samples.iter().enumerate() {
            // Periodic phase resync bounds recurrence drift.
            if i % 1024 == 0 {
                rot = Complex::cis((w0 + dw * i as f64) * x);
            }
            acc += v * rot;
            rot *= step;
        }
        values.push(acc * norm);
    }

    let label = spec.label().replace("_hat", "");
    Ok(TimeFunction::new(j, n0, values, &label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_generator;
    use approx::assert_abs_diff_eq;

    #[test]
    fn shannon_scaling_hat_is_the_band_indicator() {
        let gen = builtin_generator("shannon").unwrap();
        let tol = Tolerances::default();
        let sf = interp_scaling_hat(&gen, 8.0 * PI, 1 << 10, 64, &tol).unwrap();
        assert_abs_diff_eq!(sf.eval_at(0.5).re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(sf.eval_at(2.0).re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(sf.eval_at(4.0).norm(), 0.0, epsilon = 1e-15);
        assert!(sf.hermitian_residual() < 1e-12);
    }

    #[test]
    fn sinc_kernel_from_band_indicator() {
        let gen = builtin_generator("shannon").unwrap();
        let tol = Tolerances::default();
        let sf = interp_scaling_hat(&gen, 64.0 * PI, 1 << 14, 64, &tol).unwrap();
        let f = inverse_fourier(&sf, 8, (-6.0, 6.0)).unwrap();
        assert_abs_diff_eq!(f.value_at(0.0).unwrap().re, 1.0, epsilon = 1e-4);
        for k in 1..=5 {
            assert!(f.value_at(k as f64).unwrap().norm() < 1e-4);
            assert!(f.value_at(-(k as f64)).unwrap().norm() < 1e-4);
        }
        assert!(f.max_imag() < 1e-6);
    }

    #[test]
    fn haar_box_recovered_away_from_jumps() {
        let gen = builtin_generator("haar").unwrap();
        let tol = Tolerances::default();
        let grid = recommended_grid(&gen);
        let sf = interp_scaling_hat(&gen, grid.w_max, grid.m, 64, &tol).unwrap();
        let f = inverse_fourier(&sf, grid.j, grid.range).unwrap();
        let jumps = [0.0, 1.0];
        let excl = (2.0f64).powi(-(grid.j as i32));
        for i in 0..f.len() {
            let x = f.x_at(i);
            if jumps.iter().any(|&jx| (x - jx).abs() <= excl + 1e-12) {
                continue;
            }
            let expected = if (0.0..1.0).contains(&x) { 1.0 } else { 0.0 };
            assert!(
                (f.values()[i].re - expected).abs() < 1e-2,
                "x = {x}: got {}, expected {expected}",
                f.values()[i].re
            );
        }
    }

    #[test]
    fn nyquist_violation_is_rejected() {
        let gen = builtin_generator("shannon").unwrap();
        let tol = Tolerances::default();
        let sf = interp_scaling_hat(&gen, 64.0 * PI, 1 << 7, 64, &tol).unwrap();
        assert!(matches!(
            inverse_fourier(&sf, 8, (-16.0, 16.0)),
            Err(Error::ResolutionError(_))
        ));
    }

    #[test]
    fn bspline3_scaling_spectrum_matches_closed_form() {
        // V0 exists for the order-3 spline even though its wavelet stage fails.
        let gen = builtin_generator("bspline3").unwrap();
        let tol = Tolerances::default();
        let sf = interp_scaling_hat(&gen, 64.0 * PI, 1 << 12, 64, &tol).unwrap();
        // Closed form: 16 sin^3(w/2) / (w^3 (cos^2(w/2)+1)).
        for &w in &[0.7f64, 1.9, 3.3, -2.4] {
            let expected = 16.0 * (w / 2.0).sin().powi(3)
                / (w.powi(3) * ((w / 2.0).cos().powi(2) + 1.0));
            assert_abs_diff_eq!(sf.eval_at(w).re, expected, epsilon = 1e-12);
            assert_abs_diff_eq!(sf.eval_at(w).im, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn bspline4_scaling_spectrum_matches_closed_form() {
        let gen = builtin_generator("bspline4").unwrap();
        let tol = Tolerances::default();
        let sf = interp_scaling_hat(&gen, 64.0 * PI, 1 << 12, 64, &tol).unwrap();
        for &w in &[0.0f64, 0.9, 2.2, -3.7, 5.1] {
            let s = crate::util::sinc(w / 2.0).powi(4);
            let expected = 3.0 / (2.0 * (w / 2.0).cos().powi(2) + 1.0) * s;
            assert_abs_diff_eq!(sf.eval_at(w).re, expected, epsilon = 1e-12);
        }
    }
}
