//! Scalar abstraction for exact path counts.
//!
//! Every counting routine is generic over [`Count`]; the crate root fixes
//! [`BigUint`] as the default so that nothing silently overflows. Fixed-width
//! integers are supported for hot loops and report overflow as an error.

use std::fmt::{Debug, Display};

use num_bigint::BigUint;
use num_traits::{CheckedAdd, One, ToPrimitive, Zero};

/// An exact, non-negative path count.
pub trait Count: Clone + Ord + Debug + Display + Zero + One + CheckedAdd + Send + Sync {
    /// Lossy conversion used only for growth-rate reporting.
    fn to_f64_lossy(&self) -> f64;

    fn to_big(&self) -> BigUint;
}

macro_rules! impl_count_prim {
    ($($t:ty),*) => {$(
        impl Count for $t {
            fn to_f64_lossy(&self) -> f64 {
                *self as f64
            }

            fn to_big(&self) -> BigUint {
                BigUint::from(*self)
            }
        }
    )*};
}

impl_count_prim!(u32, u64, u128);

impl Count for BigUint {
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::INFINITY)
    }

    fn to_big(&self) -> BigUint {
        self.clone()
    }
}

/// `a + b`, or `None` on overflow of a fixed-width count.
pub(crate) fn add<C: Count>(a: &C, b: &C) -> Option<C> {
    a.checked_add(b)
}
