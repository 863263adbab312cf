//! Small fixed-size vector types for points and directions in flat 3-space.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A point (or displacement) in Euclidean 3-space.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(&self, other: &Point3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Point3) -> Point3 {
        Point3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, rhs: Point3) -> Point3 {
        Point3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, rhs: Point3) -> Point3 {
        Point3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Point3 {
    type Output = Point3;
    fn neg(self) -> Point3 {
        Point3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<Point3> for f64 {
    type Output = Point3;
    fn mul(self, rhs: Point3) -> Point3 {
        Point3::new(self * rhs.x, self * rhs.y, self * rhs.z)
    }
}

/// A direction in 3-space with Euclidean norm one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVec3(Point3);

impl UnitVec3 {
    pub const X: UnitVec3 = UnitVec3(Point3::new(1.0, 0.0, 0.0));
    pub const Y: UnitVec3 = UnitVec3(Point3::new(0.0, 1.0, 0.0));
    pub const Z: UnitVec3 = UnitVec3(Point3::new(0.0, 0.0, 1.0));

    /// Normalizes `v`. Fails on zero or non-finite input.
    pub fn normalize(v: Point3) -> Result<Self> {
        let n = v.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "cannot normalize vector {v:?}"
            )));
        }
        Ok(UnitVec3((1.0 / n) * v))
    }

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::normalize(Point3::new(x, y, z))
    }

    pub fn x(&self) -> f64 {
        self.0.x
    }

    pub fn y(&self) -> f64 {
        self.0.y
    }

    pub fn z(&self) -> f64 {
        self.0.z
    }

    pub fn as_point(&self) -> Point3 {
        self.0
    }

    pub fn dot(&self, other: &Point3) -> f64 {
        self.0.dot(other)
    }
}

impl Neg for UnitVec3 {
    type Output = UnitVec3;
    fn neg(self) -> UnitVec3 {
        UnitVec3(-self.0)
    }
}

impl From<UnitVec3> for Point3 {
    fn from(v: UnitVec3) -> Point3 {
        v.0
    }
}
