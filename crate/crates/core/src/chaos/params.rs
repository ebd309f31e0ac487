use crate::error::{Error, Result};

pub const LOGISTIC_LAMBDA_MIN: f64 = 3.57;
pub const LOGISTIC_LAMBDA_MAX: f64 = 4.0;

fn finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        })
    }
}

/// Chua circuit in the form `x1' = alpha * (x2 - h(x1))`, `x2' = x1 - x2 + x3`,
/// `x3' = -beta * x2`, with the piecewise-linear characteristic
/// `h(x) = b*x + (a - b)/2 * (|x + 1| - |x - 1|)`.
///
/// `a` is the inner slope of `h` and `b` the outer slope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChuaParams {
    pub alpha: f64,
    pub beta: f64,
    pub a: f64,
    pub b: f64,
}

impl ChuaParams {
    /// The historically quoted set `alpha = 10, beta = 14.87, a = -1.27,
    /// b = -0.1`. With `h` carrying the whole linear term, a negative outer
    /// slope makes infinity repelling only in one direction and orbits escape,
    /// so this set is useful for evaluating the vector field but not for
    /// generating bits.
    pub const QUOTED: ChuaParams = ChuaParams {
        alpha: 10.0,
        beta: 14.87,
        a: -1.27,
        b: -0.1,
    };

    /// The double-scroll set `alpha = 10, beta = 14.87` with slopes
    /// `-1.27 / -0.68` expressed for the form without a separate `-x1` term
    /// (both slopes shifted by +1). Orbits stay on the double-scroll attractor.
    pub const DOUBLE_SCROLL: ChuaParams = ChuaParams {
        alpha: 10.0,
        beta: 14.87,
        a: -0.27,
        b: 0.32,
    };

    pub fn validate(&self) -> Result<()> {
        finite("alpha", self.alpha)?;
        finite("beta", self.beta)?;
        finite("a", self.a)?;
        finite("b", self.b)
    }
}

impl Default for ChuaParams {
    fn default() -> Self {
        ChuaParams::DOUBLE_SCROLL
    }
}

/// Lorenz flow `x' = a(y - x)`, `y' = bx - y - xz`, `z' = xy - cz`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorenzParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl LorenzParams {
    pub fn validate(&self) -> Result<()> {
        finite("a", self.a)?;
        finite("b", self.b)?;
        finite("c", self.c)
    }
}

impl Default for LorenzParams {
    fn default() -> Self {
        LorenzParams {
            a: 10.0,
            b: 28.0,
            c: 8.0 / 3.0,
        }
    }
}

/// Rossler flow `x' = -y - z`, `y' = x + ay`, `z' = b + z(x - c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RosslerParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl RosslerParams {
    pub fn validate(&self) -> Result<()> {
        finite("a", self.a)?;
        finite("b", self.b)?;
        finite("c", self.c)
    }
}

impl Default for RosslerParams {
    fn default() -> Self {
        RosslerParams {
            a: 0.2,
            b: 0.2,
            c: 5.7,
        }
    }
}

/// Henon map `(x, y) -> (c - a x^2 + y, b x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HenonParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HenonParams {
    pub fn validate(&self) -> Result<()> {
        finite("a", self.a)?;
        finite("b", self.b)?;
        finite("c", self.c)
    }
}

impl Default for HenonParams {
    fn default() -> Self {
        HenonParams {
            a: 1.4,
            b: 0.3,
            c: 1.0,
        }
    }
}

/// Logistic map `x -> lambda x (1 - x)` restricted to the chaotic window
/// `lambda` in [3.57, 4].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogisticParams {
    lambda: f64,
}

impl LogisticParams {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(LOGISTIC_LAMBDA_MIN..=LOGISTIC_LAMBDA_MAX).contains(&lambda) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
                reason: "must lie in [3.57, 4]",
            });
        }
        Ok(LogisticParams { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// The nonzero fixed point `1 - 1/lambda`.
    pub fn fixed_point(&self) -> f64 {
        1.0 - 1.0 / self.lambda
    }
}

impl Default for LogisticParams {
    fn default() -> Self {
        LogisticParams { lambda: 4.0 }
    }
}

/// Parameters of any of the five systems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SystemParams {
    Chua(ChuaParams),
    Lorenz(LorenzParams),
    Rossler(RosslerParams),
    Henon(HenonParams),
    Logistic(LogisticParams),
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        match self {
            SystemParams::Chua(p) => p.validate(),
            SystemParams::Lorenz(p) => p.validate(),
            SystemParams::Rossler(p) => p.validate(),
            SystemParams::Henon(p) => p.validate(),
            // validated on construction
            SystemParams::Logistic(_) => Ok(()),
        }
    }

    /// Named parameter values in canonical order.
    pub fn named(&self) -> Vec<(&'static str, f64)> {
        match *self {
            SystemParams::Chua(p) => vec![("alpha", p.alpha), ("beta", p.beta), ("a", p.a), ("b", p.b)],
            SystemParams::Lorenz(p) => vec![("a", p.a), ("b", p.b), ("c", p.c)],
            SystemParams::Rossler(p) => vec![("a", p.a), ("b", p.b), ("c", p.c)],
            SystemParams::Henon(p) => vec![("a", p.a), ("b", p.b), ("c", p.c)],
            SystemParams::Logistic(p) => vec![("lambda", p.lambda())],
        }
    }
}
