use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// One classical fourth-order Runge-Kutta step for `y' = f(s, y)`.
pub fn rk4_step<T, F>(f: &F, s: T, y: T, h: T) -> Result<T>
where
    T: Real,
    F: Fn(T, T) -> Result<T>,
{
    let half = lit::<T>(0.5);
    let k1 = f(s, y)?;
    let k2 = f(s + h * half, y + h * half * k1)?;
    let k3 = f(s + h * half, y + h * half * k2)?;
    let k4 = f(s + h, y + h * k3)?;
    Ok(y + h / lit(6.0) * (k1 + lit::<T>(2.0) * (k2 + k3) + k4))
}

/// Step-size policy for [`Rk4Integrator`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl<T> {
    /// Nominal step, restored whenever accuracy allows.
    pub initial: T,
    /// Smallest step tried before giving up.
    pub floor: T,
    /// Bound on the Richardson local error estimate per step.
    pub local_tol: T,
    /// Cap on accepted steps.
    pub max_steps: usize,
}

impl StepControl<f64> {
    pub const DEFAULT: StepControl<f64> = StepControl {
        initial: 1e-4,
        floor: 1e-7,
        local_tol: 1e-8,
        max_steps: 5_000_000,
    };
}

impl<T: Real> StepControl<T> {
    pub fn with_initial(initial: T) -> Self {
        StepControl {
            initial,
            floor: lit(1e-7),
            local_tol: lit(1e-8),
            max_steps: 5_000_000,
        }
    }
}

/// Result of one accepted step: the half-step point is kept for Simpson rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcceptedStep<T> {
    pub h: T,
    pub y_mid: T,
    pub y_end: T,
    pub error_estimate: T,
}

/// RK4 with step-doubling error control.
#[derive(Debug, Clone, Copy)]
pub struct Rk4Integrator<T> {
    pub control: StepControl<T>,
}

impl<T: Real> Rk4Integrator<T> {
    pub fn new(control: StepControl<T>) -> Self {
        Rk4Integrator { control }
    }

    /// Takes one step of size at most `h` from `(s, y)`, halving until the
    /// local error estimate is within tolerance.
    pub fn step<F>(&self, f: &F, s: T, y: T, mut h: T) -> Result<AcceptedStep<T>>
    where
        F: Fn(T, T) -> Result<T>,
    {
        let half = lit::<T>(0.5);
        loop {
            let full = rk4_step(f, s, y, h)?;
            let y_mid = rk4_step(f, s, y, h * half)?;
            let y_end = rk4_step(f, s + h * half, y_mid, h * half)?;
            let err = (y_end - full).abs() / lit(15.0);
            if !err.is_finite() {
                return Err(Error::Singularity(format!(
                    "non-finite ODE state near s = {s}"
                )));
            }
            if err <= self.control.local_tol {
                return Ok(AcceptedStep {
                    h,
                    y_mid,
                    y_end,
                    error_estimate: err,
                });
            }
            h = h * half;
            if h < self.control.floor {
                return Err(Error::Convergence(format!(
                    "ODE step fell below {} at s = {s} (local error {err})",
                    self.control.floor
                )));
            }
        }
    }
}
