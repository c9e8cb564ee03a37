//! Fixed-width two's-complement register with modular arithmetic.

use crate::error::{Error, Result};

pub const MAX_WIDTH: u32 = 128;

/// A `W`-bit signed register. Adds and subtracts wrap modulo `2^W`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterWord {
    width: u32,
    value: i128,
}

impl RegisterWord {
    pub fn zero(width: u32) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::WidthUnsupported(width));
        }
        Ok(Self { width, value: 0 })
    }

    /// Reduce an arbitrary `i128` into this register's width.
    pub fn from_wrapped(width: u32, value: i128) -> Result<Self> {
        let mut r = Self::zero(width)?;
        r.value = wrap(width, value);
        Ok(r)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn value(&self) -> i128 {
        self.value
    }

    #[inline]
    pub fn wrapping_add(self, rhs: i128) -> Self {
        Self {
            width: self.width,
            value: wrap(self.width, self.value.wrapping_add(rhs)),
        }
    }

    #[inline]
    pub fn wrapping_sub(self, rhs: i128) -> Self {
        Self {
            width: self.width,
            value: wrap(self.width, self.value.wrapping_sub(rhs)),
        }
    }

    pub fn min_value(&self) -> i128 {
        i128::MIN >> (MAX_WIDTH - self.width)
    }

    pub fn max_value(&self) -> i128 {
        i128::MAX >> (MAX_WIDTH - self.width)
    }
}

/// Sign-extend the low `width` bits of `v`.
#[inline]
pub(crate) fn wrap(width: u32, v: i128) -> i128 {
    let shift = MAX_WIDTH - width;
    (v << shift) >> shift
}
