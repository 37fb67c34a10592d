//! Error-free transformations on `f64` and nonoverlapping expansions.
//!
//! The expansion routines follow Shewchuk's "Adaptive Precision
//! Floating-Point Arithmetic": components are stored in increasing order of
//! magnitude and zero components are eliminated.

/// `a + b = s + e` exactly, for any `a`, `b`.
#[inline(always)]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// `a + b = s + e` exactly, requires `|a| >= |b|` (or `a == 0`).
#[inline(always)]
pub fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[cfg(not(target_feature = "fma"))]
#[inline(always)]
fn split(a: f64) -> (f64, f64) {
    const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1
    const THRESHOLD: f64 = 6.696_928_794_914_17e299;
    if a.abs() > THRESHOLD {
        let a = a * 3.725_290_298_461_914e-9; // 2^-28
        let t = SPLITTER * a;
        let hi = t - (t - a);
        let lo = a - hi;
        (hi * 268_435_456.0, lo * 268_435_456.0)
    } else {
        let t = SPLITTER * a;
        let hi = t - (t - a);
        (hi, a - hi)
    }
}

/// `a * b = p + e` exactly (barring overflow/underflow).
#[inline(always)]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    #[cfg(target_feature = "fma")]
    {
        (p, a.mul_add(b, -p))
    }
    #[cfg(not(target_feature = "fma"))]
    {
        let (ah, al) = split(a);
        let (bh, bl) = split(b);
        let e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
        (p, e)
    }
}

const CAPACITY: usize = 80;

/// Stack-allocated nonoverlapping expansion, smallest component first.
#[derive(Clone, Copy)]
pub struct Expansion {
    c: [f64; CAPACITY],
    len: usize,
}

impl Expansion {
    pub fn new() -> Self {
        Self {
            c: [0.0; CAPACITY],
            len: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn components(&self) -> &[f64] {
        &self.c[..self.len]
    }

    /// Adds one double exactly (`grow_expansion_zeroelim`).
    #[inline]
    pub fn grow(&mut self, b: f64) {
        if b == 0.0 {
            return;
        }
        if self.len + 1 >= CAPACITY {
            self.compress();
        }
        let mut q = b;
        let mut out = 0;
        for i in 0..self.len {
            let (s, h) = two_sum(q, self.c[i]);
            q = s;
            if h != 0.0 {
                self.c[out] = h;
                out += 1;
            }
        }
        if q != 0.0 || out == 0 {
            self.c[out] = q;
            out += 1;
        }
        self.len = out;
    }

    /// Rewrites the expansion so that the largest component approximates the
    /// whole sum to within one ulp.
    pub fn compress(&mut self) {
        if self.len < 2 {
            return;
        }
        let e = self.c;
        let elen = self.len;
        let mut h = [0.0f64; CAPACITY];
        let mut bottom = elen - 1;
        let mut q = e[bottom];
        for idx in (0..elen - 1).rev() {
            let (qnew, small) = quick_two_sum(q, e[idx]);
            if small != 0.0 {
                h[bottom] = qnew;
                bottom -= 1;
                q = small;
            } else {
                q = qnew;
            }
        }
        let mut top = 0;
        for idx in bottom + 1..elen {
            let (qnew, small) = quick_two_sum(h[idx], q);
            if small != 0.0 {
                h[top] = small;
                top += 1;
            }
            q = qnew;
        }
        h[top] = q;
        self.len = top + 1;
        self.c[..self.len].copy_from_slice(&h[..self.len]);
    }

    /// Largest `N` components after compression, largest first. Whatever is
    /// left below them is folded into the last slot.
    pub fn leading<const N: usize>(&mut self) -> [f64; N] {
        self.compress();
        let mut out = [0.0; N];
        let n = self.len.min(N);
        for (i, slot) in out.iter_mut().enumerate().take(n) {
            *slot = self.c[self.len - 1 - i];
        }
        if self.len > N {
            let rest: f64 = self.c[..self.len - N].iter().sum();
            out[N - 1] += rest;
        }
        out
    }

    /// Leading-order approximation of the sum.
    pub fn estimate(&self) -> f64 {
        self.c[..self.len].iter().sum()
    }
}

impl Default for Expansion {
    fn default() -> Self {
        Self::new()
    }
}
