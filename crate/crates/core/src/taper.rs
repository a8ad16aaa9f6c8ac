use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaperKind {
    /// `exp(−s²/2σ²)`
    Gaussian,
    /// `cos²(πs/2σ)` on `[−σ, σ]`
    Cosine,
    /// indicator of `[−σ, σ]`
    Hard,
}

/// Even, non-increasing cutoff `ϑ` with `ϑ(0) = 1` standing in for the
/// regularizing Schwartz function along a horocycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaperSpec {
    kind: TaperKind,
    width: f64,
}

impl TaperSpec {
    pub fn new(kind: TaperKind, width: f64) -> Result<Self> {
        if width.is_finite() && width > 0.0 {
            Ok(TaperSpec { kind, width })
        } else {
            Err(invalid("taper", "width must be positive and finite"))
        }
    }

    pub fn gaussian(width: f64) -> Result<Self> {
        Self::new(TaperKind::Gaussian, width)
    }

    pub fn kind(&self) -> TaperKind {
        self.kind
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn with_width(&self, width: f64) -> Result<Self> {
        Self::new(self.kind, width)
    }

    pub fn weight(&self, s: f64) -> f64 {
        let u = s / self.width;
        match self.kind {
            TaperKind::Gaussian => (-0.5 * u * u).exp(),
            TaperKind::Cosine => {
                if u.abs() <= 1.0 {
                    let c = (0.5 * PI * u).cos();
                    c * c
                } else {
                    0.0
                }
            }
            TaperKind::Hard => {
                if u.abs() <= 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Half-width of the integration window: `6σ` for the Gaussian, `σ` otherwise.
    pub fn support(&self) -> f64 {
        match self.kind {
            TaperKind::Gaussian => 6.0 * self.width,
            TaperKind::Cosine | TaperKind::Hard => self.width,
        }
    }
}

impl fmt::Display for TaperSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            TaperKind::Gaussian => "gaussian",
            TaperKind::Cosine => "cosine",
            TaperKind::Hard => "hard",
        };
        write!(f, "{kind}:{}", self.width)
    }
}

/// Parses `kind:width`, e.g. `gaussian:12`.
impl FromStr for TaperSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, width) = s
            .split_once(':')
            .ok_or_else(|| invalid("taper", "expected kind:width"))?;
        let kind = match kind.trim() {
            "gaussian" => TaperKind::Gaussian,
            "cosine" => TaperKind::Cosine,
            "hard" => TaperKind::Hard,
            other => return Err(invalid("taper", format!("unknown kind `{other}`"))),
        };
        let width: f64 = width
            .trim()
            .parse()
            .map_err(|_| invalid("taper", "width is not a number"))?;
        TaperSpec::new(kind, width)
    }
}
