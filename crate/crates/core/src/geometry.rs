//! Geometry of the Poincaré disk and its isometry group SU(1,1).
//!
//! Metric convention: curvature −1, length element `2|dz|/(1−|z|²)`, so the
//! half-sum of positive roots is ρ = 1/2. The boundary circle carries the
//! normalized measure `dθ/2π`.
//!
//! Several constructions pass through the upper half-plane via the Cayley
//! map `w ↦ (w − i)/(w + i)`, which sends `i` to the origin and `∞` to the
//! boundary point `1`. There, horocycles of direction `∞` are horizontal
//! lines, `A` acts by dilations and `N` by real translations.

use std::f64::consts::TAU;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint(Complex64::new(0.0, 0.0));

    pub fn new(z: Complex64) -> Result<Self> {
        if z.re.is_finite() && z.im.is_finite() && z.norm_sqr() < 1.0 {
            Ok(DiskPoint(z))
        } else {
            Err(Error::OutsideDisk { re: z.re, im: z.im })
        }
    }

    pub fn from_xy(x: f64, y: f64) -> Result<Self> {
        Self::new(Complex64::new(x, y))
    }

    /// Point at hyperbolic distance `t` from the origin in direction `angle`.
    pub fn from_geodesic_polar(t: f64, angle: f64) -> Self {
        let r = (0.5 * t.abs()).tanh();
        // tanh saturates to 1.0 for t ≳ 38; keep strictly inside.
        let r = r.min(1.0 - f64::EPSILON);
        DiskPoint(Complex64::from_polar(r, angle))
    }

    /// Clamp a value produced by exact-in-theory disk maps back inside the disk.
    pub(crate) fn from_map(z: Complex64) -> Self {
        let n = z.norm();
        if n < 1.0 {
            DiskPoint(z)
        } else {
            DiskPoint(z * ((1.0 - f64::EPSILON) / n))
        }
    }

    pub fn z(self) -> Complex64 {
        self.0
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }

    /// Rotate about the origin.
    pub fn rotated(self, angle: f64) -> Self {
        DiskPoint(self.0 * Complex64::from_polar(1.0, angle))
    }

    /// `1 − |z|²`, computed as `(1 − |z|)(1 + |z|)`.
    fn conformal_gap(self) -> f64 {
        let r = self.0.norm();
        (1.0 - r) * (1.0 + r)
    }
}

/// A point `e^{iθ}` of the boundary circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    theta: f64,
}

impl BoundaryPoint {
    pub fn new(theta: f64) -> Self {
        let mut t = theta.rem_euclid(TAU);
        if t >= TAU {
            t = 0.0;
        }
        BoundaryPoint { theta: t }
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    pub fn point(self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }
}

/// An element `[[α, β], [β̄, ᾱ]]` of SU(1,1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        alpha: Complex64::new(1.0, 0.0),
        beta: Complex64::new(0.0, 0.0),
    };

    /// Checked constructor; the determinant must be 1 up to rounding relative
    /// to the entry magnitudes.
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let g = GroupElement { alpha, beta };
        let det = g.det();
        let scale = alpha.norm_sqr() + beta.norm_sqr();
        if !det.is_finite() || (det - 1.0).abs() > 1e-12 * scale.max(1.0) {
            return Err(Error::NotInGroup { det });
        }
        Ok(g)
    }

    pub fn det(&self) -> f64 {
        self.alpha.norm_sqr() - self.beta.norm_sqr()
    }

    /// Divide by `√det` to restore the SU(1,1) condition after rounding drift.
    pub fn renormalized(self) -> Self {
        let s = self.det().sqrt();
        GroupElement {
            alpha: self.alpha / s,
            beta: self.beta / s,
        }
    }

    /// Rotation `z ↦ e^{iφ} z` (an element of K).
    pub fn rotation(angle: f64) -> Self {
        GroupElement {
            alpha: Complex64::from_polar(1.0, 0.5 * angle),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    /// `a_t`: translation by hyperbolic length `t` along the geodesic through `−1, 1`.
    pub fn boost(t: f64) -> Self {
        GroupElement {
            alpha: Complex64::new((0.5 * t).cosh(), 0.0),
            beta: Complex64::new((0.5 * t).sinh(), 0.0),
        }
    }

    /// `n_s`: the unipotent translation `w ↦ w + s` of the half-plane, conjugated
    /// into SU(1,1). Fixes the boundary point `1`.
    pub fn unipotent(s: f64) -> Self {
        GroupElement {
            alpha: Complex64::new(1.0, 0.5 * s),
            beta: Complex64::new(0.0, -0.5 * s),
        }
    }

    /// Image of a real SL(2,ℝ) matrix acting on the half-plane under the Cayley map.
    pub fn from_sl2(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if ((a * d - b * c) - 1.0).abs() > 1e-12 * (a * a + b * b + c * c + d * d).max(1.0) {
            return Err(Error::NotInGroup { det: a * d - b * c });
        }
        Ok(GroupElement {
            alpha: Complex64::new(0.5 * (a + d), 0.5 * (b - c)),
            beta: Complex64::new(0.5 * (a - d), -0.5 * (b + c)),
        })
    }

    pub fn inverse(self) -> Self {
        GroupElement {
            alpha: self.alpha.conj(),
            beta: -self.beta,
        }
    }

    pub fn compose(self, other: GroupElement) -> Self {
        GroupElement {
            alpha: self.alpha * other.alpha + self.beta * other.beta.conj(),
            beta: self.alpha * other.beta + self.beta * other.alpha.conj(),
        }
    }

    /// Ordered product of a chain of elements, renormalized every 100 factors.
    pub fn product<I: IntoIterator<Item = GroupElement>>(chain: I) -> Self {
        let mut acc = GroupElement::IDENTITY;
        for (i, g) in chain.into_iter().enumerate() {
            acc = acc.compose(g);
            if (i + 1) % 100 == 0 {
                acc = acc.renormalized();
            }
        }
        acc
    }

    pub fn act(self, z: DiskPoint) -> DiskPoint {
        act(self, z)
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: GroupElement) -> GroupElement {
        self.compose(rhs)
    }
}

/// Möbius action `z ↦ (αz + β)/(β̄z + ᾱ)`.
pub fn act(g: GroupElement, z: DiskPoint) -> DiskPoint {
    let w = (g.alpha * z.0 + g.beta) / (g.beta.conj() * z.0 + g.alpha.conj());
    DiskPoint::from_map(w)
}

/// Hyperbolic distance, `2 artanh(|z − w| / |1 − w̄z|)`.
pub fn geodesic_distance(z: DiskPoint, w: DiskPoint) -> f64 {
    let num = (z.0 - w.0).norm();
    if num == 0.0 {
        return 0.0;
    }
    let den = (Complex64::new(1.0, 0.0) - w.0.conj() * z.0).norm();
    2.0 * (num / den).min(1.0).atanh()
}

/// `cosh d(z, w)`, without the round trip through `arcosh`.
pub fn cosh_distance(z: DiskPoint, w: DiskPoint) -> f64 {
    1.0 + 2.0 * (z.0 - w.0).norm_sqr() / (z.conformal_gap() * w.conformal_gap())
}

/// Busemann bracket `⟨z, b⟩ = log((1 − |z|²)/|z − b|²)`: the signed distance from
/// the origin to the horocycle of direction `b` through `z`, positive when
/// that horocycle separates the origin from `b`.
pub fn busemann(z: DiskPoint, b: BoundaryPoint) -> f64 {
    (z.conformal_gap() / (z.0 - b.point()).norm_sqr()).ln()
}

/// Half-plane coordinate of `z` in the frame where `b` sits at `∞`.
pub fn to_half_plane(z: DiskPoint, b: BoundaryPoint) -> Complex64 {
    let u = z.0 * Complex64::from_polar(1.0, -b.theta);
    I * (1.0 + u) / (1.0 - u)
}

/// Inverse of [`to_half_plane`].
pub fn from_half_plane(w: Complex64, b: BoundaryPoint) -> DiskPoint {
    DiskPoint::from_map((w - I) / (w + I) * b.point())
}

/// Factors of `g = k · a_t · n_s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IwasawaFactors {
    /// Rotation angle of the K part, in `(−2π, 2π]` (the sign carries `M = {±I}`).
    pub k_angle: f64,
    pub t: f64,
    pub s: f64,
}

impl IwasawaFactors {
    pub fn recompose(&self) -> GroupElement {
        GroupElement::rotation(self.k_angle) * GroupElement::boost(self.t) * GroupElement::unipotent(self.s)
    }
}

/// Iwasawa decomposition in the order `g = k a_t n_s`.
///
/// `g⁻¹ = n_{−s} a_{−t} k⁻¹` sends `i` to `−s + e^{−t} i` in the half-plane,
/// so `t = −⟨g⁻¹·0, 1⟩`.
pub fn iwasawa(g: GroupElement) -> IwasawaFactors {
    let w = to_half_plane(act(g.inverse(), DiskPoint::ORIGIN), BoundaryPoint::new(0.0));
    let t = -w.im.ln();
    let s = -w.re;
    let k = g * GroupElement::unipotent(-s) * GroupElement::boost(-t);
    IwasawaFactors {
        k_angle: 2.0 * k.alpha.arg(),
        t,
        s,
    }
}

/// `|g| = |log a|` from the Cartan decomposition `g = k₁ a k₂`, equal to `d(0, g·0)`.
pub fn cartan_norm(g: GroupElement) -> f64 {
    let q = g.beta.norm() / g.alpha.norm();
    2.0 * q.min(1.0).atanh()
}

/// A horocycle: a circle internally tangent to the boundary at `direction`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Horocycle {
    pub direction: BoundaryPoint,
    /// Busemann value shared by all points of the horocycle.
    pub busemann_value: f64,
}

impl Horocycle {
    pub fn new(direction: BoundaryPoint, busemann_value: f64) -> Self {
        Horocycle {
            direction,
            busemann_value,
        }
    }

    /// Point at signed arc length `s` from the base point, which is the
    /// intersection with the geodesic from the origin to `direction`.
    pub fn point(&self, s: f64) -> DiskPoint {
        let h = self.busemann_value.exp();
        from_half_plane(Complex64::new(s * h, h), self.direction)
    }

    /// Arc-length parameter of a point lying on this horocycle.
    pub fn parameter_of(&self, x: DiskPoint) -> f64 {
        to_half_plane(x, self.direction).re * (-self.busemann_value).exp()
    }
}

/// The unique horocycle of direction `b` through `x`.
pub fn horocycle_through(b: BoundaryPoint, x: DiskPoint) -> Horocycle {
    Horocycle::new(b, busemann(x, b))
}

pub fn horocycle_point(h: &Horocycle, s: f64) -> DiskPoint {
    h.point(s)
}

/// `n_s` in the conjugate `k_b N k_b⁻¹`: slides the zero horocycle of direction
/// `b` along itself by arc length `s` and fixes `b`.
pub fn nilpotent_flow(b: BoundaryPoint, s: f64) -> GroupElement {
    let n = GroupElement::unipotent(s);
    GroupElement {
        alpha: n.alpha,
        beta: n.beta * b.point(),
    }
}

/// Coordinate `s` with `x ∈ n_s · A · 0`, i.e. the N-coordinate of `x` for direction `b`.
pub fn nilpotent_coordinate(x: DiskPoint, b: BoundaryPoint) -> f64 {
    to_half_plane(x, b).re
}
