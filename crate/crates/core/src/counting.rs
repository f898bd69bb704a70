//! An instrumented base float that tallies every arithmetic operation and
//! comparison, used to count the operations of each multiword algorithm.

use std::cell::Cell;
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::eft::{BaseFloat, ScalarFloat};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounts {
    /// Additions and subtractions.
    pub add: u64,
    pub mul: u64,
    pub fma: u64,
    pub div: u64,
    /// Comparisons, zero tests and finiteness tests.
    pub cmp: u64,
}

impl OpCounts {
    /// Floating-point arithmetic operations; an FMA counts as one.
    pub fn flops(&self) -> u64 {
        self.add + self.mul + self.fma + self.div
    }
}

thread_local! {
    static COUNTS: Cell<OpCounts> = Cell::new(OpCounts::default());
}

fn bump(f: impl FnOnce(&mut OpCounts)) {
    COUNTS.with(|c| {
        let mut v = c.get();
        f(&mut v);
        c.set(v);
    });
}

pub fn reset() {
    COUNTS.with(|c| c.set(OpCounts::default()));
}

pub fn snapshot() -> OpCounts {
    COUNTS.with(|c| c.get())
}

/// Runs `f` with fresh counters and returns what it performed.
pub fn count<R>(f: impl FnOnce() -> R) -> (R, OpCounts) {
    reset();
    let r = f();
    (r, snapshot())
}

/// `f64` whose operations are counted on the current thread.
#[derive(Clone, Copy, Debug)]
pub struct Counted(pub f64);

impl Add for Counted {
    type Output = Counted;
    fn add(self, rhs: Counted) -> Counted {
        bump(|c| c.add += 1);
        Counted(self.0 + rhs.0)
    }
}

impl Sub for Counted {
    type Output = Counted;
    fn sub(self, rhs: Counted) -> Counted {
        bump(|c| c.add += 1);
        Counted(self.0 - rhs.0)
    }
}

impl Mul for Counted {
    type Output = Counted;
    fn mul(self, rhs: Counted) -> Counted {
        bump(|c| c.mul += 1);
        Counted(self.0 * rhs.0)
    }
}

impl Div for Counted {
    type Output = Counted;
    fn div(self, rhs: Counted) -> Counted {
        bump(|c| c.div += 1);
        Counted(self.0 / rhs.0)
    }
}

impl Neg for Counted {
    type Output = Counted;
    // sign flips are free
    fn neg(self) -> Counted {
        Counted(-self.0)
    }
}

impl PartialEq for Counted {
    fn eq(&self, other: &Counted) -> bool {
        bump(|c| c.cmp += 1);
        self.0 == other.0
    }
}

impl PartialOrd for Counted {
    fn partial_cmp(&self, other: &Counted) -> Option<Ordering> {
        bump(|c| c.cmp += 1);
        self.0.partial_cmp(&other.0)
    }
}

impl BaseFloat for Counted {
    const PRECISION: u32 = 53;

    fn zero() -> Self {
        Counted(0.0)
    }
    fn one() -> Self {
        Counted(1.0)
    }
    fn splat(x: f64) -> Self {
        Counted(x)
    }
    fn fma(self, b: Self, c: Self) -> Self {
        bump(|k| k.fma += 1);
        Counted(self.0.mul_add(b.0, c.0))
    }
}

impl ScalarFloat for Counted {
    fn abs(self) -> Self {
        Counted(self.0.abs())
    }
    fn is_zero(self) -> bool {
        bump(|c| c.cmp += 1);
        self.0 == 0.0
    }
    fn is_finite(self) -> bool {
        bump(|c| c.cmp += 1);
        self.0.is_finite()
    }
    fn to_f64(self) -> f64 {
        self.0
    }
}
