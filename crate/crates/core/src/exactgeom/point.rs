use std::fmt;

use super::scalar::ExactScalar;

/// A point (or displacement) in the plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: ExactScalar> Point2<T> {
    pub fn new(x: T, y: T) -> Self {
        Point2 { x, y }
    }

    pub fn from_ratios(x: (i64, i64), y: (i64, i64)) -> Self {
        Point2::new(T::from_ratio(x.0, x.1), T::from_ratio(y.0, y.1))
    }

    pub fn zero() -> Self {
        Point2::new(T::zero(), T::zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Point2::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Point2::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        Point2::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    pub fn neg(&self) -> Self {
        Point2::new(-self.x.clone(), -self.y.clone())
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }

    /// z-component of the 3D cross product.
    pub fn cross(&self, o: &Self) -> T {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    pub fn norm_l1(&self) -> T {
        self.x.abs() + self.y.abs()
    }

    /// Quarter turn counterclockwise: the left normal of a direction.
    pub fn rot90(&self) -> Self {
        Point2::new(-self.y.clone(), self.x.clone())
    }

    /// `self + t (other - self)`.
    pub fn lerp(&self, other: &Self, t: &T) -> Self {
        self.add(&other.sub(self).scale(t))
    }

    pub fn dist_sq(&self, o: &Self) -> T {
        self.sub(o).norm_sq()
    }
}

impl<T: fmt::Display> fmt::Display for Point2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Twice the signed area of `abc`.
pub fn orient2d<T: ExactScalar>(a: &Point2<T>, b: &Point2<T>, c: &Point2<T>) -> T {
    b.sub(a).cross(&c.sub(a))
}

/// A point (or displacement) in space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: ExactScalar> Point3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Point3 { x, y, z }
    }

    pub fn zero() -> Self {
        Point3::new(T::zero(), T::zero(), T::zero())
    }

    pub fn from_array(c: [T; 3]) -> Self {
        let [x, y, z] = c;
        Point3::new(x, y, z)
    }

    pub fn coord(&self, axis: usize) -> &T {
        match axis {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("axis out of range"),
        }
    }

    pub fn coords(&self) -> [&T; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn add(&self, o: &Self) -> Self {
        Point3::new(
            self.x.clone() + o.x.clone(),
            self.y.clone() + o.y.clone(),
            self.z.clone() + o.z.clone(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        Point3::new(
            self.x.clone() - o.x.clone(),
            self.y.clone() - o.y.clone(),
            self.z.clone() - o.z.clone(),
        )
    }

    pub fn scale(&self, k: &T) -> Self {
        Point3::new(
            self.x.clone() * k.clone(),
            self.y.clone() * k.clone(),
            self.z.clone() * k.clone(),
        )
    }

    pub fn neg(&self) -> Self {
        Point3::new(-self.x.clone(), -self.y.clone(), -self.z.clone())
    }

    pub fn dot(&self, o: &Self) -> T {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone() + self.z.clone() * o.z.clone()
    }

    pub fn cross(&self, o: &Self) -> Self {
        Point3::new(
            self.y.clone() * o.z.clone() - self.z.clone() * o.y.clone(),
            self.z.clone() * o.x.clone() - self.x.clone() * o.z.clone(),
            self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    pub fn dist_sq(&self, o: &Self) -> T {
        self.sub(o).norm_sq()
    }

    pub fn lerp(&self, other: &Self, t: &T) -> Self {
        self.add(&other.sub(self).scale(t))
    }

    /// Index of the coordinate with the largest absolute value.
    pub fn dominant_axis(&self) -> usize {
        let ax = self.x.abs();
        let ay = self.y.abs();
        let az = self.z.abs();
        if ax >= ay && ax >= az {
            0
        } else if ay >= az {
            1
        } else {
            2
        }
    }

    /// Drop one coordinate, keeping the other two in cyclic order.
    pub fn project(&self, drop_axis: usize) -> Point2<T> {
        match drop_axis {
            0 => Point2::new(self.y.clone(), self.z.clone()),
            1 => Point2::new(self.z.clone(), self.x.clone()),
            _ => Point2::new(self.x.clone(), self.y.clone()),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Point3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Six times the signed volume of `abcd`.
pub fn orient3d<T: ExactScalar>(a: &Point3<T>, b: &Point3<T>, c: &Point3<T>, d: &Point3<T>) -> T {
    b.sub(a).cross(&c.sub(a)).dot(&d.sub(a))
}
