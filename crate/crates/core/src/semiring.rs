//! Scalar abstraction shared by every tensor and matrix kernel in the crate.
//!
//! A commutative semiring `(S, ⊕, ⊗, 0, 1)`:
//! - `(S, ⊕, 0)` is a commutative monoid
//! - `(S, ⊗, 1)` is a commutative monoid
//! - `⊗` distributes over `⊕`
//! - `0` annihilates: `a ⊗ 0 = 0`
//!
//! Nothing in the crate subtracts, so a semiring is all the structure needed.
//!
//! | Instance        | ⊕   | ⊗   | 0     | 1    |
//! |-----------------|-----|-----|-------|------|
//! | `f64`, `f32`    | +   | ×   | 0.0   | 1.0  |
//! | `i64`, `i128`   | +   | ×   | 0     | 1    |
//! | `bool`          | OR  | AND | false | true |
//! | [`Counted<S>`]  | as `S`, each call metered            ||||

use std::cell::Cell;
use std::fmt::{self, Debug, Display};

use num_traits::{NumCast, One, Zero};

pub trait Semiring: Copy + PartialEq + Debug + Send + Sync + 'static {
    /// Additive identity.
    fn zero() -> Self;

    /// Multiplicative identity.
    fn one() -> Self;

    /// Semiring addition (⊕).
    fn sr_add(self, rhs: Self) -> Self;

    /// Semiring multiplication (⊗).
    fn sr_mul(self, rhs: Self) -> Self;

    /// Embeds a small integer. Booleans map nonzero to `true`.
    fn from_i64(v: i64) -> Self;

    /// Embeds a real value. Booleans map nonzero to `true`.
    fn from_f64(v: f64) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

macro_rules! impl_numeric_semiring {
    ($($t:ty),*) => {
        $(
            impl Semiring for $t {
                #[inline]
                fn zero() -> Self {
                    <$t as Zero>::zero()
                }

                #[inline]
                fn one() -> Self {
                    <$t as One>::one()
                }

                #[inline]
                fn sr_add(self, rhs: Self) -> Self {
                    self + rhs
                }

                #[inline]
                fn sr_mul(self, rhs: Self) -> Self {
                    self * rhs
                }

                fn from_i64(v: i64) -> Self {
                    <$t as NumCast>::from(v).expect("integer not representable in scalar type")
                }

                fn from_f64(v: f64) -> Self {
                    <$t as NumCast>::from(v).expect("real not representable in scalar type")
                }
            }
        )*
    };
}

impl_numeric_semiring!(f32, f64, i64, i128);

impl Semiring for bool {
    #[inline]
    fn zero() -> Self {
        false
    }

    #[inline]
    fn one() -> Self {
        true
    }

    #[inline]
    fn sr_add(self, rhs: Self) -> Self {
        self || rhs
    }

    #[inline]
    fn sr_mul(self, rhs: Self) -> Self {
        self && rhs
    }

    fn from_i64(v: i64) -> Self {
        v != 0
    }

    fn from_f64(v: f64) -> Self {
        v != 0.0
    }
}

thread_local! {
    static MUL_COUNT: Cell<u64> = const { Cell::new(0) };
    static ADD_COUNT: Cell<u64> = const { Cell::new(0) };
}

/// Snapshot of the per-thread operation counters.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub mul: u64,
    pub add: u64,
}

impl OpCounts {
    /// Reads the current thread's counters.
    pub fn current() -> Self {
        OpCounts {
            mul: MUL_COUNT.with(Cell::get),
            add: ADD_COUNT.with(Cell::get),
        }
    }

    /// Zeroes the current thread's counters. Open [`CountScope`]s are
    /// invalidated and report zero until the counters pass their base again.
    pub fn reset() {
        MUL_COUNT.with(|c| c.set(0));
        ADD_COUNT.with(|c| c.set(0));
    }
}

impl std::ops::Sub for OpCounts {
    type Output = OpCounts;

    fn sub(self, rhs: OpCounts) -> OpCounts {
        OpCounts {
            mul: self.mul.saturating_sub(rhs.mul),
            add: self.add.saturating_sub(rhs.add),
        }
    }
}

impl std::ops::Add for OpCounts {
    type Output = OpCounts;

    fn add(self, rhs: OpCounts) -> OpCounts {
        OpCounts {
            mul: self.mul + rhs.mul,
            add: self.add + rhs.add,
        }
    }
}

/// A measurement scope over the current thread's counters.
///
/// Scopes never reset the counters, so they nest: each one reports the
/// operations performed since it was opened. Counters are thread-local; a
/// scope only sees work done on the thread that created it.
#[derive(Debug, Clone, Copy)]
pub struct CountScope {
    base: OpCounts,
}

impl CountScope {
    pub fn start() -> Self {
        CountScope {
            base: OpCounts::current(),
        }
    }

    pub fn counts(&self) -> OpCounts {
        OpCounts::current() - self.base
    }

    pub fn muls(&self) -> u64 {
        self.counts().mul
    }

    pub fn adds(&self) -> u64 {
        self.counts().add
    }
}

/// Wraps a semiring and meters every `sr_add`/`sr_mul` on the thread's
/// counters. Results are bit-identical to the inner semiring.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Counted<S>(pub S);

impl<S: Semiring> Counted<S> {
    pub fn into_inner(self) -> S {
        self.0
    }
}

impl<S: Debug> Debug for Counted<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<S: Display> Display for Counted<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl<S: Semiring> Semiring for Counted<S> {
    fn zero() -> Self {
        Counted(S::zero())
    }

    fn one() -> Self {
        Counted(S::one())
    }

    #[inline]
    fn sr_add(self, rhs: Self) -> Self {
        ADD_COUNT.with(|c| c.set(c.get() + 1));
        Counted(self.0.sr_add(rhs.0))
    }

    #[inline]
    fn sr_mul(self, rhs: Self) -> Self {
        MUL_COUNT.with(|c| c.set(c.get() + 1));
        Counted(self.0.sr_mul(rhs.0))
    }

    fn from_i64(v: i64) -> Self {
        Counted(S::from_i64(v))
    }

    fn from_f64(v: f64) -> Self {
        Counted(S::from_f64(v))
    }
}

/// Real scalar with metered arithmetic.
pub type CountingScalar = Counted<f64>;

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check_laws<S: Semiring>(sample: impl Fn(&mut ChaCha8Rng) -> S) {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let (x, y, z) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
            assert_eq!(x.sr_add(y).sr_add(z), x.sr_add(y.sr_add(z)));
            assert_eq!(x.sr_add(y), y.sr_add(x));
            assert_eq!(x.sr_add(S::zero()), x);
            assert_eq!(x.sr_mul(y).sr_mul(z), x.sr_mul(y.sr_mul(z)));
            assert_eq!(x.sr_mul(y), y.sr_mul(x));
            assert_eq!(x.sr_mul(S::one()), x);
            assert_eq!(x.sr_mul(S::zero()), S::zero());
            assert_eq!(x.sr_mul(y.sr_add(z)), x.sr_mul(y).sr_add(x.sr_mul(z)));
        }
    }

    #[test]
    fn real_laws_on_integer_samples() {
        check_laws(|r| r.random_range(-50i64..=50) as f64);
    }

    #[test]
    fn bool_laws() {
        check_laws(|r| r.random::<bool>());
    }

    #[test]
    fn counting_laws() {
        check_laws(|r| Counted(r.random_range(-50i64..=50) as f64));
    }

    #[test]
    fn integer_laws() {
        check_laws(|r| r.random_range(-1000i64..=1000));
    }

    #[test]
    fn add_examples() {
        assert_eq!(2.0f64.sr_add(3.0), 5.0);
        assert!(true.sr_add(false));
        let scope = CountScope::start();
        assert_eq!(Counted(1.0f64).sr_add(Counted(1.0)), Counted(2.0));
        assert_eq!(scope.adds(), 1);
        assert_eq!(scope.muls(), 0);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(2.0f64.sr_mul(3.0), 6.0);
        assert!(!true.sr_mul(false));
        assert_eq!(7.5f64.sr_mul(<f64 as Semiring>::one()), 7.5);
        assert!(true.sr_mul(<bool as Semiring>::one()));
        assert_eq!(Counted(4.0f64).sr_mul(Counted::one()), Counted(4.0));
    }

    #[test]
    fn mul_counter_is_exact() {
        let scope = CountScope::start();
        let mut acc = Counted(1.0f64);
        for i in 0..1234 {
            acc = acc.sr_mul(Counted::from_i64(i % 3 - 1));
        }
        assert_eq!(scope.muls(), 1234);
        assert_eq!(scope.adds(), 0);
    }

    #[test]
    fn scopes_nest_and_reset_is_explicit() {
        let outer = CountScope::start();
        let _ = Counted(1.0f64).sr_mul(Counted(2.0));
        let inner = CountScope::start();
        let _ = Counted(1.0f64).sr_mul(Counted(2.0));
        assert_eq!(inner.muls(), 1);
        assert_eq!(outer.muls(), 2);
        OpCounts::reset();
        assert_eq!(OpCounts::current(), OpCounts::default());
    }

    #[test]
    fn bool_embedding() {
        assert!(!bool::from_i64(0));
        assert!(bool::from_i64(-2));
        assert!(bool::from_f64(0.3));
    }
}
