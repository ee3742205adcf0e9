//! Generator catalog: scaling functions given by closed-form spectra.
//!
//! A [`GeneratorSpec`] packages the frequency evaluator `φ̂(w)` (Fourier
//! convention `φ̂(w) = ∫ φ(x) e^{-iwx} dx`) with the decay metadata that
//! drives truncation control, plus exact periodization shortcuts where a
//! closed form is known. Exact evaluators always take precedence over
//! truncated summation: for slowly decaying spectra (decay order < 2) the
//! raw periodization converges too slowly — or only under Abel regularization
//! — so the catalog refuses to guess and ships closed forms instead.

mod expr;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use core::f64::consts::PI;
use core::fmt;
// Float math under no_std. Redundant (and flagged unused) whenever some
// crate in the build graph links std, whose inherent methods shadow these.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::symbols::Period;
use crate::util::{sinc, wrap_centered};
use crate::Complex;

pub(crate) type Evaluator = Arc<dyn Fn(f64) -> Complex + Send + Sync>;

/// Built-in generator identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Shannon,
    Haar,
    Bspline2,
    Bspline3,
    Bspline4,
}

impl Builtin {
    pub const ALL: [Builtin; 5] = [
        Builtin::Shannon,
        Builtin::Haar,
        Builtin::Bspline2,
        Builtin::Bspline3,
        Builtin::Bspline4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Shannon => "shannon",
            Builtin::Haar => "haar",
            Builtin::Bspline2 => "bspline2",
            Builtin::Bspline3 => "bspline3",
            Builtin::Bspline4 => "bspline4",
        }
    }
}

impl core::str::FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shannon" => Ok(Builtin::Shannon),
            "haar" => Ok(Builtin::Haar),
            "bspline2" => Ok(Builtin::Bspline2),
            "bspline3" => Ok(Builtin::Bspline3),
            "bspline4" => Ok(Builtin::Bspline4),
            other => Err(Error::UnknownGenerator(other.to_string())),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A scaling function described by its spectrum.
///
/// Immutable after construction; evaluators are pure, so a spec can be
/// shared freely across threads (`Clone` is a cheap `Arc` bump).
#[derive(Clone)]
pub struct GeneratorSpec {
    name: String,
    phi_hat: Evaluator,
    decay_order: u32,
    exact_periodization_2pi: Option<Evaluator>,
    exact_periodization_4pi: Option<Evaluator>,
    support_hint: Option<(f64, f64)>,
    refinement_taps: Option<BTreeMap<i64, f64>>,
}

impl fmt::Debug for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratorSpec")
            .field("name", &self.name)
            .field("decay_order", &self.decay_order)
            .field("exact_2pi", &self.exact_periodization_2pi.is_some())
            .field("exact_4pi", &self.exact_periodization_4pi.is_some())
            .field("support_hint", &self.support_hint)
            .finish()
    }
}

impl GeneratorSpec {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Evaluate `φ̂(w)`.
    pub fn phi_hat(&self, w: f64) -> Complex {
        (self.phi_hat)(w)
    }

    /// Nonnegative `d` with `|φ̂(w)| = O(|w|^{-d})`; `0` means the spectrum
    /// is compactly supported (band-limited generator).
    pub fn decay_order(&self) -> u32 {
        self.decay_order
    }

    /// Closed-form `Σ_k φ̂(w + period·k)` when one is known.
    pub fn exact_periodization(&self, period: Period) -> Option<&Evaluator> {
        match period {
            Period::TwoPi => self.exact_periodization_2pi.as_ref(),
            Period::FourPi => self.exact_periodization_4pi.as_ref(),
        }
    }

    /// Time-domain support interval, when finite.
    pub fn support_hint(&self) -> Option<(f64, f64)> {
        self.support_hint
    }

    /// Two-scale refinement taps `p_k` with `φ(x) = Σ p_k φ(2x - k)`,
    /// when known in closed form.
    pub fn refinement_taps(&self) -> Option<&BTreeMap<i64, f64>> {
        self.refinement_taps.as_ref()
    }
}

/// Look up a built-in generator by name.
pub fn builtin_generator(name: &str) -> Result<GeneratorSpec> {
    let builtin: Builtin = name.parse()?;
    Ok(builtin_spec(builtin))
}

fn builtin_spec(builtin: Builtin) -> GeneratorSpec {
    match builtin {
        Builtin::Shannon => shannon(),
        Builtin::Haar => haar(),
        Builtin::Bspline2 => bspline(2),
        Builtin::Bspline3 => bspline(3),
        Builtin::Bspline4 => bspline(4),
    }
}

/// Band-limited generator: `φ̂ = 1` on `[-π, π)`, zero elsewhere. The
/// half-open convention keeps every indicator single-valued at band edges,
/// and makes the wrapped 4π form an exact partition of the period.
fn shannon() -> GeneratorSpec {
    let phi_hat: Evaluator = Arc::new(|w| {
        if (-PI..PI).contains(&w) {
            Complex::new(1.0, 0.0)
        } else {
            Complex::new(0.0, 0.0)
        }
    });
    let exact_2pi: Evaluator = Arc::new(|_w| Complex::new(1.0, 0.0));
    let exact_4pi: Evaluator = Arc::new(|w| {
        let wrapped = wrap_centered(w, 4.0 * PI);
        if (-PI..PI).contains(&wrapped) {
            Complex::new(1.0, 0.0)
        } else {
            Complex::new(0.0, 0.0)
        }
    });
    GeneratorSpec {
        name: "shannon".to_string(),
        phi_hat,
        decay_order: 0,
        exact_periodization_2pi: Some(exact_2pi),
        exact_periodization_4pi: Some(exact_4pi),
        support_hint: None,
        refinement_taps: None,
    }
}

/// Unit indicator on `[0, 1)`: `φ̂(w) = e^{-iw/2} sinc(w/2)`.
fn haar() -> GeneratorSpec {
    let phi_hat: Evaluator =
        Arc::new(|w| Complex::cis(-w / 2.0) * sinc(w / 2.0));
    let exact_2pi: Evaluator = Arc::new(|_w| Complex::new(1.0, 0.0));
    // Abel-regularized 4π sum; symmetric truncation converges to the wrong
    // (principal-value) limit for this decay order, hence the closed form.
    let exact_4pi: Evaluator =
        Arc::new(|w| (Complex::new(1.0, 0.0) + Complex::cis(-w / 2.0)) / 2.0);
    let mut taps = BTreeMap::new();
    taps.insert(0, 1.0);
    taps.insert(1, 1.0);
    GeneratorSpec {
        name: "haar".to_string(),
        phi_hat,
        decay_order: 1,
        exact_periodization_2pi: Some(exact_2pi),
        exact_periodization_4pi: Some(exact_4pi),
        support_hint: Some((0.0, 1.0)),
        refinement_taps: Some(taps),
    }
}

/// Centered cardinal spline of order `n`: `φ̂(w) = sinc^n(w/2)`, supported on
/// `[-n/2, n/2]` in time.
fn bspline(n: u32) -> GeneratorSpec {
    let phi_hat: Evaluator = Arc::new(move |w| {
        Complex::new(sinc(w / 2.0).powi(n as i32), 0.0)
    });
    // Integer samples of the spline give the closed 2π forms; order 2 samples
    // to the Kronecker delta, so its sum is identically 1.
    let exact_2pi: Evaluator = match n {
        2 => Arc::new(|_w| Complex::new(1.0, 0.0)),
        3 => Arc::new(|w: f64| {
            let c = (w / 2.0).cos();
            Complex::new((c * c + 1.0) / 2.0, 0.0)
        }),
        4 => Arc::new(|w: f64| {
            let c = (w / 2.0).cos();
            Complex::new((2.0 * c * c + 1.0) / 3.0, 0.0)
        }),
        _ => unreachable!("only orders 2-4 are in the catalog"),
    };
    // The order-2 half-integer samples {1/2, 1, 1/2} give a closed 4π form as
    // well; without it the truncated sum converges like 1/K, far too slow for
    // the symbol tolerances. Orders 3 and 4 decay fast enough to truncate.
    let exact_4pi: Option<Evaluator> = match n {
        2 => Some(Arc::new(|w: f64| {
            let c = (w / 4.0).cos();
            Complex::new(c * c, 0.0)
        })),
        _ => None,
    };
    let refinement_taps = match n {
        2 => {
            let mut taps = BTreeMap::new();
            taps.insert(-1, 0.5);
            taps.insert(0, 1.0);
            taps.insert(1, 0.5);
            Some(taps)
        }
        // The centered odd-order spline refines only on the half-shifted
        // lattice; it is not a scaling function here, so no taps.
        3 => None,
        4 => {
            let mut taps = BTreeMap::new();
            taps.insert(-2, 0.125);
            taps.insert(-1, 0.5);
            taps.insert(0, 0.75);
            taps.insert(1, 0.5);
            taps.insert(2, 0.125);
            Some(taps)
        }
        _ => unreachable!(),
    };
    let half = n as f64 / 2.0;
    GeneratorSpec {
        name: alloc::format!("bspline{n}"),
        phi_hat,
        decay_order: n,
        exact_periodization_2pi: Some(exact_2pi),
        exact_periodization_4pi: exact_4pi,
        support_hint: Some((-half, half)),
        refinement_taps,
    }
}

/// Parse a generator config fragment.
///
/// Two forms are accepted:
///
/// * `builtin: <name>` — catalog lookup;
/// * `expr: <expression>[, decay_order: <n>][, support: <a>..<b>]` — a
///   rational-trigonometric spectrum in the variable `w` (see [`expr`] for
///   the grammar). The evaluator is probed on a frequency grid and rejected
///   if it produces non-finite values.
pub fn parse_generator(spec_text: &str) -> Result<GeneratorSpec> {
    let trimmed = spec_text.trim();
    if let Some(rest) = trimmed.strip_prefix("builtin:") {
        return builtin_generator(rest.trim());
    }

    let mut expr_src: Option<(usize, &str)> = None;
    let mut decay_order: u32 = 0;
    let mut support: Option<(f64, f64)> = None;

    for (offset, entry) in split_top_level(trimmed) {
        let Some(colon) = entry.find(':') else {
            return Err(Error::SpecSyntax {
                position: offset,
                message: "expected `key: value`".to_string(),
            });
        };
        let key = entry[..colon].trim();
        let value = entry[colon + 1..].trim();
        let value_offset = offset + colon + 1;
        match key {
            "expr" => expr_src = Some((value_offset, value)),
            "decay_order" => {
                decay_order = value.parse().map_err(|_| Error::SpecSyntax {
                    position: value_offset,
                    message: "decay_order must be a nonnegative integer".to_string(),
                })?;
            }
            "support" => {
                let parts: alloc::vec::Vec<&str> = value.split("..").collect();
                let parse = |s: &str| {
                    s.trim().parse::<f64>().map_err(|_| Error::SpecSyntax {
                        position: value_offset,
                        message: "support must be `<a>..<b>`".to_string(),
                    })
                };
                if parts.len() != 2 {
                    return Err(Error::SpecSyntax {
                        position: value_offset,
                        message: "support must be `<a>..<b>`".to_string(),
                    });
                }
                support = Some((parse(parts[0])?, parse(parts[1])?));
            }
            other => {
                return Err(Error::SpecSyntax {
                    position: offset,
                    message: alloc::format!("unknown key `{other}`"),
                });
            }
        }
    }

    let Some((expr_offset, src)) = expr_src else {
        return Err(Error::SpecSyntax {
            position: 0,
            message: "missing `expr:` or `builtin:`".to_string(),
        });
    };

    let parsed = expr::parse(src).map_err(|e| e.offset_by(expr_offset))?;
    let evaluator: Evaluator = Arc::new(move |w| parsed.eval(w));

    // Reject evaluators that blow up anywhere on a coarse probe grid.
    let probe_points = 641usize;
    for m in 0..probe_points {
        let w = -40.0 * PI + 80.0 * PI * (m as f64) / (probe_points as f64 - 1.0);
        let v = evaluator(w);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::InvalidGenerator(alloc::format!(
                "expression is non-finite at w = {w}"
            )));
        }
    }

    Ok(GeneratorSpec {
        name: "custom".to_string(),
        phi_hat: evaluator,
        decay_order,
        exact_periodization_2pi: None,
        exact_periodization_4pi: None,
        support_hint: support,
        refinement_taps: None,
    })
}

/// Split on commas that are not nested inside parentheses, keeping byte
/// offsets for error reporting.
fn split_top_level(s: &str) -> alloc::vec::Vec<(usize, &str)> {
    let mut parts = alloc::vec::Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push((start, s[start..i].trim()));
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push((start, s[start..].trim()));
    parts
        .into_iter()
        .filter(|(_, p)| !p.is_empty())
        .collect()
}
