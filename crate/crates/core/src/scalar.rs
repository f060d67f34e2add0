use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

/// Floating-point scalar the numerical code is generic over.
///
/// `f64` is the working precision for every tolerance quoted in the docs;
/// `f32` compiles and runs but only meets much looser tolerances.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + Send + Sync + 'static {
    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal is representable")
    }

    /// Converts a count or index.
    #[inline]
    fn of(n: usize) -> Self {
        Self::from_usize(n).expect("usize is representable")
    }

    /// `max(x, ulps · ε)`: a tolerance that never drops below what the
    /// precision can resolve.
    #[inline]
    fn tol(x: f64, ulps: f64) -> Self {
        Self::lit(x).max(Self::default_epsilon() * Self::lit(ulps))
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Binary entropy H2(p) in bits with the 0 log 0 = 0 convention.
pub fn binary_entropy<T: Real>(p: T) -> T {
    let q = T::one() - p;
    let term = |x: T| if x > T::zero() { -x * x.log2() } else { T::zero() };
    term(p) + term(q)
}
