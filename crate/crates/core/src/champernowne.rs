//! Truncated Champernowne constant and its decimal shift map orbit.
//!
//! The constant `c = 0.123456789101112...498499` is held as a flat digit
//! array; 1389 digits is far beyond any float, so every orbit value is
//! read off as a fixed-width window of digits.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Last natural number concatenated into the truncated constant.
pub const TRUNCATION: u32 = 499;

/// Number of decimal digits in the truncated constant.
pub const SOURCE_LEN: usize = 1389;

/// Default digit window for orbit values; 15 decimal digits round-trip
/// through an `f64` without ambiguity.
pub const DEFAULT_WINDOW: usize = 15;

/// Largest supported window (10^18 still fits in a `u64`).
pub const MAX_WINDOW: usize = 18;

/// The decimal digits of `0.123456789101112...498499`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChampernowneSource {
    digits: Vec<u8>,
}

impl ChampernowneSource {
    /// Concatenates the decimal representations of 1..=499.
    pub fn build() -> Self {
        let mut digits = Vec::with_capacity(SOURCE_LEN);
        for n in 1..=TRUNCATION {
            let mut buf = [0u8; 3];
            let mut m = n;
            let mut len = 0;
            while m > 0 {
                buf[len] = (m % 10) as u8;
                m /= 10;
                len += 1;
            }
            digits.extend(buf[..len].iter().rev());
        }
        debug_assert_eq!(digits.len(), SOURCE_LEN);
        Self { digits }
    }

    /// Process-wide instance; the source is immutable once built.
    pub fn shared() -> &'static ChampernowneSource {
        static SOURCE: OnceLock<ChampernowneSource> = OnceLock::new();
        SOURCE.get_or_init(ChampernowneSource::build)
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Zero-based digit access; positions past the truncation read as 0.
    pub fn digit(&self, index: usize) -> u8 {
        self.digits.get(index).copied().unwrap_or(0)
    }

    /// The digit slice `[offset, offset + count)` rendered as text.
    pub fn slice_text(&self, offset: usize, count: usize) -> Result<String> {
        let end = offset.checked_add(count).filter(|&e| e <= self.len());
        match end {
            Some(end) => Ok(self.digits[offset..end]
                .iter()
                .map(|d| char::from(b'0' + d))
                .collect()),
            None => Err(Error::DigitRange {
                offset,
                count,
                len: self.len(),
            }),
        }
    }

    /// The window `d_{k+1} .. d_{k+W}` as an integer.
    pub fn window_int(&self, step: usize, width: usize) -> u64 {
        (0..width).fold(0u64, |acc, i| acc * 10 + u64::from(self.digit(step + i)))
    }

    /// `f^k(c)` read to `width` digits.
    pub fn orbit_value(&self, step: usize, width: usize) -> Result<OrbitValue> {
        check_window(width)?;
        let value = self.window_int(step, width) as f64 / 10f64.powi(width as i32);
        Ok(OrbitValue { value, step })
    }

    /// Smallest zero-based offset at which the three digits occur, if any.
    pub fn find_pattern(&self, pattern: [u8; 3]) -> Result<Option<usize>> {
        if let Some(&bad) = pattern.iter().find(|&&d| d > 9) {
            return Err(Error::InvalidDigit(bad));
        }
        Ok(self.digits.windows(3).position(|w| w == pattern))
    }

    /// Orbit values for every step inside the truncated constant.
    pub fn orbit(&self, width: usize) -> Result<Orbit> {
        check_window(width)?;
        let scale = 10f64.powi(width as i32);
        let values = (0..self.len())
            .map(|k| self.window_int(k, width) as f64 / scale)
            .collect();
        Ok(Orbit { values, width })
    }
}

impl Default for ChampernowneSource {
    fn default() -> Self {
        Self::build()
    }
}

fn check_window(width: usize) -> Result<()> {
    if (1..=MAX_WINDOW).contains(&width) {
        Ok(())
    } else {
        Err(Error::InvalidWindow(width))
    }
}

/// One point `f^k(c)` of the orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitValue {
    pub value: f64,
    pub step: usize,
}

/// Precomputed orbit values `f^k(c)` for `k < 1389`. Every later step is 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    values: Vec<f64>,
    width: usize,
}

impl Orbit {
    /// Shared orbit at the default window width.
    pub fn shared() -> &'static Orbit {
        static ORBIT: OnceLock<Orbit> = OnceLock::new();
        ORBIT.get_or_init(|| {
            ChampernowneSource::shared()
                .orbit(DEFAULT_WINDOW)
                .expect("default window is valid")
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn value(&self, step: usize) -> f64 {
        self.values.get(step).copied().unwrap_or(0.0)
    }

    /// The nonzero prefix of the first `len` orbit values.
    pub fn informative(&self, len: usize) -> &[f64] {
        &self.values[..len.min(self.values.len())]
    }
}

/// Digit count preceding the first digit of `n` in the Champernowne
/// expansion: `d*n - (10 + 10^2 + ... + 10^(d-1)) - 1` for a `d`-digit `n`.
pub fn position_of(n: u64) -> Result<u64> {
    if n < 10 {
        return Err(Error::SingleDigitPosition(n));
    }
    let mut d = 0u32;
    let mut m = n;
    while m > 0 {
        m /= 10;
        d += 1;
    }
    let powers: u64 = (1..d).map(|e| 10u64.pow(e)).sum();
    Ok(u64::from(d) * n - powers - 1)
}
