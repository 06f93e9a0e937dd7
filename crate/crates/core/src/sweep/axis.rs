use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AxisScale {
    Linear,
    /// Values are decibels; consumers convert with `10^(x/10)`.
    Db,
}

/// `steps` evenly spaced values from `start` to `stop` inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Axis {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub scale: AxisScale,
}

impl Axis {
    pub fn new(start: f64, stop: f64, steps: usize, scale: AxisScale) -> Result<Self> {
        if steps < 2 {
            return Err(Error::InvalidArgument(format!(
                "an axis needs at least 2 steps, got {steps}"
            )));
        }
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(Error::InvalidArgument(format!(
                "axis must run upward, got {start} to {stop}"
            )));
        }
        Ok(Axis {
            start,
            stop,
            steps,
            scale,
        })
    }

    /// Parses `START:STOP:STEPS`.
    pub fn parse(text: &str, scale: AxisScale) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("expected START:STOP:STEPS, got {text:?}"));
        let parts: Vec<&str> = text.split(':').collect();
        let [start, stop, steps] = parts[..] else {
            return Err(bad());
        };
        let start = start.trim().parse().map_err(|_| bad())?;
        let stop = stop.trim().parse().map_err(|_| bad())?;
        let steps = steps.trim().parse().map_err(|_| bad())?;
        Axis::new(start, stop, steps, scale)
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|j| {
                if j + 1 == self.steps {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * j as f64 / last
                }
            })
            .collect()
    }
}
