use crate::error::{Error, Result};
use crate::model::ModelPrimitives;
use crate::numeric::{bisect, rk4_step, Rk4Integrator, StepControl};
use crate::scalar::{lit, Real};

/// Positive assortative partner, extended linearly past the type bounds so
/// that trial Runge-Kutta stages slightly outside the support stay defined.
pub(crate) fn extended_match<T: Real>(m: &ModelPrimitives<T>, z: T) -> Result<T> {
    let zs = m.sender_types();
    let xs = m.receiver_types();
    let edge = if z > zs.hi {
        Some((zs.hi, xs.hi))
    } else if z < zs.lo {
        Some((zs.lo, xs.lo))
    } else {
        None
    };
    match edge {
        None => m.quantile_match(z),
        Some((ze, xe)) => {
            let slope = m.senders().pdf(ze) / m.receivers().pdf(xe);
            Ok(xe + slope * (z - ze))
        }
    }
}

/// Slope of the inverse sender strategy implied by both first-order conditions:
/// `-(v_s - c_s) / v_z` evaluated at the assortative partner of `z`.
pub fn phi<T: Real>(m: &ModelPrimitives<T>, s: T, z: T) -> Result<T> {
    let x = extended_match(m, z)?;
    let vz = m.v_z(x, s, z);
    if !(vz > T::zero()) || !vz.is_finite() {
        return Err(Error::Singularity(format!(
            "surplus not increasing in the sender type at (x={x}, s={s}, z={z}): v_z = {vz}"
        )));
    }
    let out = -(m.v_s(x, s, z) - m.c_s(s, z)) / vz;
    if !out.is_finite() {
        return Err(Error::Singularity(format!("belief slope not finite at (s={s}, z={z})")));
    }
    Ok(out)
}

/// Receiver-side reaction slope `v_s + v_z * mu'` along the belief path.
pub(crate) fn reaction_slope<T: Real>(m: &ModelPrimitives<T>, s: T, z: T) -> Result<T> {
    let x = extended_match(m, z)?;
    Ok(m.v_s(x, s, z) + m.v_z(x, s, z) * phi(m, s, z)?)
}

/// Node representation of the separating part of the equilibrium.
///
/// `beliefs[i]` is the sender type taking `actions[i]`; `mid_beliefs[i]` is
/// the belief at the midpoint of `[actions[i], actions[i + 1]]` and feeds
/// Simpson's rule for the reaction.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatingArc<T> {
    pub actions: Vec<T>,
    pub beliefs: Vec<T>,
    pub mid_beliefs: Vec<T>,
    pub reactions: Vec<T>,
}

impl<T: Real> SeparatingArc<T> {
    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn top_action(&self) -> T {
        *self.actions.last().expect("arc has a node")
    }

    pub fn top_reaction(&self) -> T {
        *self.reactions.last().expect("arc has reactions")
    }
}

fn belief_rhs<T: Real>(m: &ModelPrimitives<T>) -> impl Fn(T, T) -> Result<T> + '_ {
    move |s, z| phi(m, s, z)
}

/// Integrates `mu' = phi(s, mu)` forward from `mu(s_ell) = z_ell` until the
/// belief reaches the top type; the last step is shortened so that it lands
/// on the top type exactly.
pub fn integrate_belief<T: Real>(
    m: &ModelPrimitives<T>,
    s_ell: T,
    z_ell: T,
    control: StepControl<T>,
) -> Result<SeparatingArc<T>> {
    let zs = m.sender_types();
    let mut arc = SeparatingArc {
        actions: vec![s_ell],
        beliefs: vec![z_ell],
        mid_beliefs: Vec::new(),
        reactions: Vec::new(),
    };
    if z_ell >= zs.hi {
        return Ok(arc);
    }
    let f = belief_rhs(m);
    let integrator = Rk4Integrator::new(control);
    let (mut s, mut mu) = (s_ell, z_ell);
    let mut h = control.initial;
    let half = lit::<T>(0.5);
    loop {
        if arc.actions.len() > control.max_steps {
            return Err(Error::Convergence(format!(
                "belief path did not reach the top type within {} steps (mu = {mu} at s = {s})",
                control.max_steps
            )));
        }
        let step = integrator.step(&f, s, mu, h)?;
        if step.y_end < zs.lo {
            return Err(Error::Model(format!(
                "belief path leaves the type interval downward near s = {s}"
            )));
        }
        if step.y_end >= zs.hi {
            let overshoot = |dh: T| match rk4_step(&f, s, mu, dh) {
                Ok(y) => y - zs.hi,
                Err(_) => T::nan(),
            };
            let h_top = bisect(overshoot, T::zero(), step.h, T::zero(), T::zero(), "top action")?;
            let mid = rk4_step(&f, s, mu, h_top * half)?;
            arc.actions.push(s + h_top);
            arc.beliefs.push(zs.hi);
            arc.mid_beliefs.push(mid);
            return Ok(arc);
        }
        s = s + step.h;
        mu = step.y_end;
        arc.actions.push(s);
        arc.beliefs.push(mu);
        arc.mid_beliefs.push(step.y_mid);
        h = (step.h + step.h).min(control.initial);
    }
}

/// Fills `arc.reactions` by Simpson's rule on the reaction slope, starting
/// from `t_lo` at the first node.
pub fn integrate_reaction<T: Real>(m: &ModelPrimitives<T>, arc: &mut SeparatingArc<T>, t_lo: T) -> Result<()> {
    let mut taus = Vec::with_capacity(arc.len());
    taus.push(t_lo);
    let mut slope_lo = reaction_slope(m, arc.actions[0], arc.beliefs[0])?;
    let half = lit::<T>(0.5);
    for i in 0..arc.len() - 1 {
        let (a, b) = (arc.actions[i], arc.actions[i + 1]);
        let slope_mid = reaction_slope(m, (a + b) * half, arc.mid_beliefs[i])?;
        let slope_hi = reaction_slope(m, b, arc.beliefs[i + 1])?;
        for (at, val) in [(a, slope_lo), ((a + b) * half, slope_mid), (b, slope_hi)] {
            if val < T::zero() {
                return Err(Error::Model(format!(
                    "reaction would decrease at s = {at} (slope {val})"
                )));
            }
        }
        let next = taus[i] + (b - a) / lit(6.0) * (slope_lo + lit::<T>(4.0) * slope_mid + slope_hi);
        if !(next > taus[i]) {
            return Err(Error::Model(format!("reaction not strictly increasing at s = {b}")));
        }
        taus.push(next);
        slope_lo = slope_hi;
    }
    arc.reactions = taus;
    Ok(())
}

/// Evaluates the separating solution between nodes by re-integrating from
/// the nearest node below, so that thresholds are not limited by the
/// node spacing.
pub(crate) struct ArcEvaluator<'a, T: Real> {
    pub m: &'a ModelPrimitives<T>,
    pub arc: &'a SeparatingArc<T>,
}

impl<'a, T: Real> ArcEvaluator<'a, T> {
    fn node_at_or_below(xs: &[T], v: T) -> usize {
        match xs.binary_search_by(|p| p.partial_cmp(&v).expect("finite nodes")) {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) => i - 1,
        }
    }

    #[cfg(test)]
    pub fn belief(&self, s: T) -> Result<T> {
        let i = Self::node_at_or_below(&self.arc.actions, s);
        let h = s - self.arc.actions[i];
        if h <= T::zero() {
            return Ok(self.arc.beliefs[i]);
        }
        rk4_step(&belief_rhs(self.m), self.arc.actions[i], self.arc.beliefs[i], h)
    }

    pub fn reaction(&self, s: T) -> Result<T> {
        let i = Self::node_at_or_below(&self.arc.actions, s);
        let a = self.arc.actions[i];
        let h = s - a;
        if h <= T::zero() {
            return Ok(self.arc.reactions[i]);
        }
        let half = lit::<T>(0.5);
        let f = belief_rhs(self.m);
        let mid = rk4_step(&f, a, self.arc.beliefs[i], h * half)?;
        let end = rk4_step(&f, a, self.arc.beliefs[i], h)?;
        let lo = reaction_slope(self.m, a, self.arc.beliefs[i])?;
        let md = reaction_slope(self.m, a + h * half, mid)?;
        let hi = reaction_slope(self.m, s, end)?;
        Ok(self.arc.reactions[i] + h / lit(6.0) * (lo + lit::<T>(4.0) * md + hi))
    }

    /// Action taken by sender type `z` on the arc.
    pub fn action(&self, z: T) -> Result<T> {
        let i = Self::node_at_or_below(&self.arc.beliefs, z);
        if self.arc.beliefs[i] >= z || i + 1 == self.arc.len() {
            return Ok(self.arc.actions[i]);
        }
        let (a, mu) = (self.arc.actions[i], self.arc.beliefs[i]);
        let f = belief_rhs(self.m);
        let width = self.arc.actions[i + 1] - a;
        let gap = |h: T| match rk4_step(&f, a, mu, h) {
            Ok(y) => y - z,
            Err(_) => T::nan(),
        };
        if gap(width) < T::zero() {
            return Ok(self.arc.actions[i + 1]);
        }
        Ok(a + bisect(gap, T::zero(), width, T::zero(), T::zero(), "arc inversion")?)
    }
}
