//! Fixed-step RK4 over complex state vectors, with a periodic step-doubling
//! error estimate used as an embedded accuracy monitor.

use super::OracleError;
use crate::scalar::{C, Real};

/// How often (in steps) the step-doubling estimate runs.
const CHECK_INTERVAL: usize = 256;

pub(crate) struct Rk4<T: Real> {
    k1: Vec<C<T>>,
    k2: Vec<C<T>>,
    k3: Vec<C<T>>,
    k4: Vec<C<T>>,
    tmp: Vec<C<T>>,
    half_a: Vec<C<T>>,
    half_b: Vec<C<T>>,
    /// Largest relative step-doubling estimate seen so far.
    pub max_error_estimate: T,
}

impl<T: Real> Rk4<T> {
    pub fn new(dim: usize) -> Self {
        let z = vec![C::new(T::zero(), T::zero()); dim];
        Self {
            k1: z.clone(),
            k2: z.clone(),
            k3: z.clone(),
            k4: z.clone(),
            tmp: z.clone(),
            half_a: z.clone(),
            half_b: z,
            max_error_estimate: T::zero(),
        }
    }

    fn step_into<F>(&mut self, deriv: &mut F, t: T, dt: T, y: &[C<T>], out: &mut [C<T>])
    where
        F: FnMut(T, &[C<T>], &mut [C<T>]),
    {
        let half = T::lit(0.5);
        let sixth = T::lit(1.0 / 6.0);
        deriv(t, y, &mut self.k1);
        for j in 0..y.len() {
            self.tmp[j] = y[j] + self.k1[j] * C::new(dt * half, T::zero());
        }
        deriv(t + dt * half, &self.tmp, &mut self.k2);
        for j in 0..y.len() {
            self.tmp[j] = y[j] + self.k2[j] * C::new(dt * half, T::zero());
        }
        deriv(t + dt * half, &self.tmp, &mut self.k3);
        for j in 0..y.len() {
            self.tmp[j] = y[j] + self.k3[j] * C::new(dt, T::zero());
        }
        deriv(t + dt, &self.tmp, &mut self.k4);
        for j in 0..y.len() {
            let incr = self.k1[j]
                + (self.k2[j] + self.k3[j]) * C::new(T::lit(2.0), T::zero())
                + self.k4[j];
            out[j] = y[j] + incr * C::new(dt * sixth, T::zero());
        }
    }

    /// Advance `y` in place by one step.
    pub fn step<F>(&mut self, deriv: &mut F, t: T, dt: T, y: &mut [C<T>])
    where
        F: FnMut(T, &[C<T>], &mut [C<T>]),
    {
        let mut out = std::mem::take(&mut self.half_a);
        self.step_into(deriv, t, dt, y, &mut out);
        y.copy_from_slice(&out);
        self.half_a = out;
    }

    /// Step-doubling error estimate from the current state: one `dt` step
    /// against two `dt/2` steps, relative to the state norm.
    pub fn error_estimate<F>(&mut self, deriv: &mut F, t: T, dt: T, y: &[C<T>]) -> T
    where
        F: FnMut(T, &[C<T>], &mut [C<T>]),
    {
        let mut full = std::mem::take(&mut self.half_a);
        let mut halves = std::mem::take(&mut self.half_b);
        self.step_into(deriv, t, dt, y, &mut full);
        let half_dt = dt * T::lit(0.5);
        self.step_into(deriv, t, half_dt, y, &mut halves);
        let snapshot = halves.clone();
        self.step_into(deriv, t + half_dt, half_dt, &snapshot, &mut halves);
        let mut diff = T::zero();
        let mut norm = T::zero();
        for j in 0..y.len() {
            diff = diff + (full[j] - halves[j]).norm_sqr();
            norm = norm + halves[j].norm_sqr();
        }
        self.half_a = full;
        self.half_b = halves;
        (diff / norm.max(T::lit(1e-300))).sqrt()
    }

    /// Integrate `steps` fixed steps from `t0`, calling `observe(step_index, t, y)`
    /// after every step (and once at the start).
    pub fn run<F, O>(
        &mut self,
        deriv: &mut F,
        t0: T,
        dt: T,
        steps: usize,
        tolerance: T,
        y: &mut [C<T>],
        mut observe: O,
    ) -> Result<(), OracleError>
    where
        F: FnMut(T, &[C<T>], &mut [C<T>]),
        O: FnMut(usize, T, &[C<T>]),
    {
        observe(0, t0, y);
        for s in 0..steps {
            let t = t0 + dt * T::from_usize(s).unwrap();
            if s % CHECK_INTERVAL == 0 {
                let est = self.error_estimate(deriv, t, dt, y);
                if est > self.max_error_estimate {
                    self.max_error_estimate = est;
                }
                if est > tolerance {
                    return Err(OracleError::StepTooLarge {
                        estimate: est.to_f64().unwrap_or(f64::NAN),
                        tolerance: tolerance.to_f64().unwrap_or(f64::NAN),
                    });
                }
            }
            self.step(deriv, t, dt, y);
            observe(s + 1, t + dt, y);
        }
        Ok(())
    }
}
