use super::{Kind, PConcaveFunction, Quadrature, RadialProfile, SuperlevelSet};
use crate::error::{Error, Result};
use crate::geometry::{steiner_symmetral, unit_ball_volume, Vector};

/// Layer-cake integral Σ w·g({f ≥ t}) over the level rule of `f`.
pub fn layer_cake(
    f: &PConcaveFunction,
    q: &Quadrature,
    mut g: impl FnMut(&SuperlevelSet) -> Result<f64>,
) -> Result<f64> {
    let mut total = 0.0;
    for (t, w) in f.level_rule(q) {
        let set = f.superlevel(t)?;
        if !set.is_empty() {
            total += w * g(&set)?;
        }
    }
    Ok(total)
}

/// ∫f.
pub fn integral(f: &PConcaveFunction) -> f64 {
    integral_with(f, &Quadrature::default())
}

pub fn integral_with(f: &PConcaveFunction, q: &Quadrature) -> f64 {
    let n = f.dim();
    let kappa = unit_ball_volume(n);
    match f.kind() {
        Kind::Radial(r) | Kind::Rearranged(r) => match r {
            RadialProfile::Gaussian { scale } => {
                std::f64::consts::PI.powf(n as f64 / 2.0) * scale.powi(n as i32)
            }
            RadialProfile::Ball { radius, height } => kappa * radius.powi(n as i32) * height,
            RadialProfile::Cone { radius, height } => {
                kappa * radius.powi(n as i32) * height / (n as f64 + 1.0)
            }
            RadialProfile::Table { .. } => volume_quadrature(f, q),
        },
        Kind::Indicator(k) => crate::geometry::volume(k),
        Kind::Tent(t) => crate::geometry::volume(t.body()) * t.height() / (n as f64 + 1.0),
        _ => volume_quadrature(f, q),
    }
}

fn volume_quadrature(f: &PConcaveFunction, q: &Quadrature) -> f64 {
    layer_cake(f, q, |s| Ok(s.volume())).expect("rule nodes are positive levels")
}

/// Symmetric decreasing rearrangement f*.
pub fn rearrange(f: &PConcaveFunction) -> PConcaveFunction {
    rearrange_with(f, &Quadrature::default())
}

pub fn rearrange_with(f: &PConcaveFunction, q: &Quadrature) -> PConcaveFunction {
    let n = f.dim();
    let kappa = unit_ball_volume(n);
    let radius_of = |vol: f64| (vol.max(0.0) / kappa).powf(1.0 / n as f64);
    match f.kind() {
        Kind::Radial(_) | Kind::Rearranged(_) => f.clone(),
        Kind::Indicator(k) => f.with_kind(Kind::Rearranged(RadialProfile::Ball {
            radius: radius_of(crate::geometry::volume(k)),
            height: 1.0,
        })),
        Kind::Tent(t) => f.with_kind(Kind::Rearranged(RadialProfile::Cone {
            radius: radius_of(crate::geometry::volume(t.body())),
            height: t.height(),
        })),
        Kind::Truncated { inner, eps } => f.with_kind(Kind::Truncated {
            inner: Box::new(rearrange_with(inner, q)),
            eps: *eps,
        }),
        Kind::SteinerSymmetrized { inner, .. } => rearrange_with(inner, q),
        Kind::Model(_) => {
            let max = f.max();
            let mut levels: Vec<f64> = f.level_rule(q).into_iter().map(|(t, _)| t).collect();
            levels.push(max);
            levels.sort_by(f64::total_cmp);
            levels.dedup();
            let mut radii: Vec<f64> = levels
                .iter()
                .map(|&t| {
                    let s = f.superlevel(t).expect("positive level");
                    radius_of(s.volume())
                })
                .collect();
            for k in 1..radii.len() {
                radii[k] = radii[k].min(radii[k - 1]);
            }
            f.with_kind(Kind::Rearranged(RadialProfile::Table { levels, radii }))
        }
    }
}

/// Result of a Steiner symmetrization; `unchanged` marks fixed points
/// (radial functions).
#[derive(Clone, Debug)]
pub struct Symmetrized {
    pub function: PConcaveFunction,
    pub unchanged: bool,
}

/// Steiner symmetral f^u: superlevel sets S_{u^⊥}{f ≥ t}. Polytopal kinds
/// are supported in the plane.
pub fn steiner_symmetral_fn(f: &PConcaveFunction, u: &Vector) -> Result<Symmetrized> {
    if u.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: u.dim(),
        });
    }
    let u = u
        .normalized()
        .ok_or(Error::InvalidParameter("direction must be nonzero".into()))?;
    if f.is_radial() {
        return Ok(Symmetrized {
            function: f.clone(),
            unchanged: true,
        });
    }
    if f.dim() != 2 {
        return Err(Error::UnsupportedKind(format!(
            "Steiner symmetral of a {} function in dimension {}",
            f.kind_name(),
            f.dim()
        )));
    }
    let function = match f.kind() {
        Kind::Indicator(k) => PConcaveFunction::indicator(steiner_symmetral(k, &u)?, f.p())?,
        Kind::Tent(t) => {
            // level sets are homothetic about the apex, so the symmetral is
            // a tent over S K with the apex projected onto u^⊥
            let a = *t.apex();
            PConcaveFunction::tent(
                steiner_symmetral(t.body(), &u)?,
                a - u * a.dot(&u),
                t.height(),
                f.p(),
            )?
        }
        Kind::Truncated { inner, eps } => f.with_kind(Kind::Truncated {
            inner: Box::new(steiner_symmetral_fn(inner, &u)?.function),
            eps: *eps,
        }),
        _ => f.with_kind(Kind::SteinerSymmetrized {
            inner: Box::new(f.clone()),
            direction: u,
        }),
    };
    Ok(Symmetrized {
        function,
        unchanged: false,
    })
}

/// f_ε = f·χ_{f ≥ ε}, 0 < ε ≤ max f.
pub fn truncate(f: &PConcaveFunction, eps: f64) -> Result<PConcaveFunction> {
    let max = f.max();
    if !(eps > 0.0 && eps <= max) {
        return Err(Error::EpsilonOutOfRange { eps, max });
    }
    Ok(match f.kind() {
        Kind::Truncated { inner, eps: e0 } => f.with_kind(Kind::Truncated {
            inner: inner.clone(),
            eps: e0.max(eps),
        }),
        _ => f.with_kind(Kind::Truncated {
            inner: Box::new(f.clone()),
            eps,
        }),
    })
}
