//! Minimal double-double arithmetic.

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct DD {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
pub(crate) fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DD {
    pub const ONE: DD = DD { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> DD {
        DD { hi: x, lo: 0.0 }
    }

    /// Exact `a + b`.
    pub fn sum(a: f64, b: f64) -> DD {
        let (hi, lo) = two_sum(a, b);
        DD { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, o: DD) -> DD {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = fast_two_sum(s, e + t);
        let (hi, lo) = fast_two_sum(s, e + f);
        DD { hi, lo }
    }

    pub fn mul(self, o: DD) -> DD {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = fast_two_sum(p, e);
        DD { hi, lo }
    }

    pub fn div(self, o: DD) -> DD {
        let q1 = self.hi / o.hi;
        let r = self.add(o.mul(DD::from_f64(q1)).neg());
        let q2 = r.hi / o.hi;
        let r = r.add(o.mul(DD::from_f64(q2)).neg());
        let q3 = r.hi / o.hi;
        let (hi, lo) = fast_two_sum(q1, q2);
        DD { hi, lo }.add(DD::from_f64(q3))
    }

    pub fn neg(self) -> DD {
        DD {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn abs(self) -> f64 {
        self.to_f64().abs()
    }

    pub fn scale(self, c: f64) -> DD {
        self.mul(DD::from_f64(c))
    }

    /// `exp` to about 30 significant digits.
    pub fn exp(self) -> DD {
        const LN2: DD = DD {
            hi: std::f64::consts::LN_2,
            lo: 2.319_046_813_846_299_6e-17,
        };
        if self.hi > 709.0 {
            return DD::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return DD::from_f64(0.0);
        }
        let k = (self.hi / std::f64::consts::LN_2).round();
        let r = self.add(LN2.scale(-k));
        // s = r / 2⁹
        let s = DD {
            hi: r.hi / 512.0,
            lo: r.lo / 512.0,
        };
        // t = e^s − 1, then (1 + t)² − 1 = t(t + 2) nine times
        let mut term = DD::ONE;
        let mut t = DD { hi: 0.0, lo: 0.0 };
        for j in 1..=12 {
            term = term.mul(s).div(DD::from_f64(j as f64));
            t = t.add(term);
        }
        for _ in 0..9 {
            t = t.mul(t.add(DD::from_f64(2.0)));
        }
        let sum = DD::ONE.add(t);
        let p = 2f64.powi(k as i32);
        DD {
            hi: sum.hi * p,
            lo: sum.lo * p,
        }
    }
}
