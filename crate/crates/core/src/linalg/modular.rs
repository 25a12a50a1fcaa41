//! Scalar arithmetic in `Z/NZ` for `N < 2^63`.

/// Arithmetic modulo a fixed `n`. Values are kept in `[0, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Zn {
    n: u64,
    small: bool,
}

impl Zn {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1, "modulus must be positive");
        Zn {
            n,
            small: n <= u32::MAX as u64,
        }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.n
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.n - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.n - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.small {
            (a * b) % self.n
        } else {
            ((a as u128 * b as u128) % self.n as u128) as u64
        }
    }

    #[inline]
    pub fn from_i64(&self, a: i64) -> u64 {
        (a as i128).rem_euclid(self.n as i128) as u64
    }

    #[inline]
    pub fn from_i128(&self, a: i128) -> u64 {
        a.rem_euclid(self.n as i128) as u64
    }

    /// A unit `u` with `u * a ≡ gcd(a, n) (mod n)`.
    pub fn normalizing_unit(&self, a: u64) -> u64 {
        let n = self.n;
        if n == 1 {
            return 0;
        }
        let g = gcd(a, n);
        let (a1, n1) = (a / g, n / g);
        let u0 = if n1 == 1 { 1 } else { inverse(a1 % n1, n1) };
        let mut u = u0;
        while gcd(u, n) != 1 {
            u += n1;
        }
        u % n
    }

    /// `row_dst -= q * row_src` from column `from` on.
    #[inline]
    pub fn axpy_neg(&self, dst: &mut [u64], src: &[u64], q: u64, from: usize) {
        if q == 0 {
            return;
        }
        for (d, &s) in dst[from..].iter_mut().zip(&src[from..]) {
            if s != 0 {
                *d = self.sub(*d, self.mul(q, s));
            }
        }
    }

    #[inline]
    pub fn scale(&self, row: &mut [u64], q: u64, from: usize) {
        for x in row[from..].iter_mut() {
            if *x != 0 {
                *x = self.mul(*x, q);
            }
        }
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

/// Extended gcd over the integers: returns `(g, s, t)` with `s*a + t*b = g`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

fn inverse(a: u64, n: u64) -> u64 {
    let (g, s, _) = ext_gcd(a as i128, n as i128);
    debug_assert_eq!(g, 1);
    s.rem_euclid(n as i128) as u64
}
