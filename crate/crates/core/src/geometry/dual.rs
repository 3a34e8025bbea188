//! Scalar abstraction used by the vertex-star kernels.
//!
//! The same kernel code is evaluated with `f64` for values and with
//! [`Dual`] (forward-mode, fixed-width tangent) for exact local Jacobians.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

pub trait Real:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
{
    fn cst(v: f64) -> Self;
    fn value(&self) -> f64;
    fn sqrt(self) -> Self;

    fn scale(self, s: f64) -> Self {
        self * Self::cst(s)
    }
}

impl Real for f64 {
    #[inline]
    fn cst(v: f64) -> Self {
        v
    }
    #[inline]
    fn value(&self) -> f64 {
        *self
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn scale(self, s: f64) -> Self {
        self * s
    }
}

/// Forward-mode dual number carrying `N` partial derivatives.
#[derive(Clone, Copy, Debug)]
pub struct Dual<const N: usize> {
    pub v: f64,
    pub d: [f64; N],
}

impl<const N: usize> Dual<N> {
    /// Independent variable number `k`.
    pub fn var(v: f64, k: usize) -> Self {
        let mut d = [0.0; N];
        d[k] = 1.0;
        Dual { v, d }
    }
}

impl<const N: usize> Real for Dual<N> {
    #[inline]
    fn cst(v: f64) -> Self {
        Dual { v, d: [0.0; N] }
    }
    #[inline]
    fn value(&self) -> f64 {
        self.v
    }
    #[inline]
    fn sqrt(self) -> Self {
        let r = self.v.sqrt();
        let k = 0.5 / r;
        let mut d = self.d;
        d.iter_mut().for_each(|x| *x *= k);
        Dual { v: r, d }
    }
    #[inline]
    fn scale(self, s: f64) -> Self {
        let mut d = self.d;
        d.iter_mut().for_each(|x| *x *= s);
        Dual { v: self.v * s, d }
    }
}

impl<const N: usize> Add for Dual<N> {
    type Output = Self;
    #[inline]
    fn add(mut self, o: Self) -> Self {
        self.v += o.v;
        for (a, b) in self.d.iter_mut().zip(o.d.iter()) {
            *a += b;
        }
        self
    }
}

impl<const N: usize> AddAssign for Dual<N> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<const N: usize> Sub for Dual<N> {
    type Output = Self;
    #[inline]
    fn sub(mut self, o: Self) -> Self {
        self.v -= o.v;
        for (a, b) in self.d.iter_mut().zip(o.d.iter()) {
            *a -= b;
        }
        self
    }
}

impl<const N: usize> Neg for Dual<N> {
    type Output = Self;
    #[inline]
    fn neg(mut self) -> Self {
        self.v = -self.v;
        self.d.iter_mut().for_each(|x| *x = -*x);
        self
    }
}

impl<const N: usize> Mul for Dual<N> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        let mut d = [0.0; N];
        for k in 0..N {
            d[k] = self.v * o.d[k] + o.v * self.d[k];
        }
        Dual { v: self.v * o.v, d }
    }
}

impl<const N: usize> Div for Dual<N> {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        let inv = 1.0 / o.v;
        let q = self.v * inv;
        let mut d = [0.0; N];
        for k in 0..N {
            d[k] = (self.d[k] - q * o.d[k]) * inv;
        }
        Dual { v: q, d }
    }
}

/// Minimal 3-vector over a [`Real`] scalar.
#[derive(Clone, Copy, Debug)]
pub struct V3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> V3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        V3 { x, y, z }
    }

    pub fn zero() -> Self {
        V3::new(T::cst(0.0), T::cst(0.0), T::cst(0.0))
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &Self) -> Self {
        V3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    pub fn norm(&self) -> T {
        self.norm_sq().sqrt()
    }

    pub fn mul_s(&self, s: T) -> Self {
        V3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl<T: Real> Add for V3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        V3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> AddAssign for V3<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Real> Sub for V3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        V3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_chain_rule_matches_closed_form() {
        // f(x, y) = sqrt(x^2 + y) / (x * y)
        let (x0, y0) = (1.3, 0.7);
        let x = Dual::<2>::var(x0, 0);
        let y = Dual::<2>::var(y0, 1);
        let f = (x * x + y).sqrt() / (x * y);
        let s = (x0 * x0 + y0).sqrt();
        let fx = (x0 / s) / (x0 * y0) - s / (x0 * x0 * y0);
        let fy = (0.5 / s) / (x0 * y0) - s / (x0 * y0 * y0);
        assert!((f.v - s / (x0 * y0)).abs() < 1e-15);
        assert!((f.d[0] - fx).abs() < 1e-13);
        assert!((f.d[1] - fy).abs() < 1e-13);
    }

    #[test]
    fn cross_is_right_handed() {
        let ex = V3::new(1.0, 0.0, 0.0);
        let ey = V3::new(0.0, 1.0, 0.0);
        let ez = ex.cross(&ey);
        assert_eq!((ez.x, ez.y, ez.z), (0.0, 0.0, 1.0));
    }
}
