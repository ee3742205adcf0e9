//! Small numeric helpers shared across modules.

// Float math under no_std. Redundant (and flagged unused) whenever some
// crate in the build graph links std, whose inherent methods shadow these.
#[allow(unused_imports)]
use num_traits::Float;


/// `sin(u)/u` with the removable singularity handled by a short Taylor
/// series. The series is used for `|u| < 1e-4`, where direct division would
/// lose accuracy to cancellation; six terms keep the relative error far below
/// f64 resolution there.
pub(crate) fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        let u2 = u * u;
        1.0 - u2 / 6.0 + u2 * u2 / 120.0 - u2 * u2 * u2 / 5040.0
            + u2 * u2 * u2 * u2 / 362_880.0
            - u2 * u2 * u2 * u2 * u2 / 39_916_800.0
    } else {
        u.sin() / u
    }
}

/// Wrap `w` into the half-open centered period `[-period/2, period/2)`.
pub(crate) fn wrap_centered(w: f64, period: f64) -> f64 {
    let half = period / 2.0;
    let wrapped = w - period * ((w + half) / period).floor();
    // Guard against the boundary landing on +half through rounding.
    if wrapped >= half {
        wrapped - period
    } else {
        wrapped
    }
}
