//! Minimal double-double arithmetic for the test oracles (~31 significant
//! digits). Lives in test support only; the library itself is pure f64.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo + other.lo);
        Dd { hi, lo }
    }

    pub fn addf(self, other: f64) -> Dd {
        self.add(Dd::from(other))
    }

    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    pub fn subf(self, other: f64) -> Dd {
        self.addf(-other)
    }

    pub fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let (hi, lo) = quick_two_sum(p1, p2 + self.hi * other.lo + self.lo * other.hi);
        Dd { hi, lo }
    }

    pub fn mulf(self, other: f64) -> Dd {
        self.mul(Dd::from(other))
    }

    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mulf(q1));
        let q2 = r.hi / other.hi;
        let r2 = r.sub(other.mulf(q2));
        let q3 = r2.hi / other.hi;
        let (s1, s2) = quick_two_sum(q1, q2);
        Dd { hi: s1, lo: s2 }.addf(q3)
    }

    pub fn divf(self, other: f64) -> Dd {
        self.div(Dd::from(other))
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            self.neg()
        } else {
            self
        }
    }

    pub fn sqrt(self) -> Dd {
        let y0 = self.hi.sqrt();
        if y0 == 0.0 {
            return Dd::ZERO;
        }
        // one dd Newton step on y ↦ (y + x/y)/2
        let y = Dd::from(y0);
        y.add(self.div(y)).mulf(0.5)
    }

    /// exp by scaling and squaring plus Taylor; no stored constants.
    pub fn exp(self) -> Dd {
        let mut k = 0u32;
        let mut x = self;
        while x.hi.abs() > 0.01 {
            x = x.mulf(0.5);
            k += 1;
        }
        // Taylor around 0
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        for i in 1..60 {
            term = term.mul(x).divf(i as f64);
            sum = sum.add(term);
            if term.hi.abs() < 1e-40 * sum.hi.abs().max(1e-300) {
                break;
            }
        }
        for _ in 0..k {
            sum = sum.mul(sum);
        }
        sum
    }

    /// ln by Newton refinement of the f64 seed.
    pub fn ln(self) -> Dd {
        assert!(self.hi > 0.0);
        let y0 = Dd::from(self.hi.ln());
        // y1 = y0 + x·e^{−y0} − 1
        let corr = self.mul(y0.neg().exp()).subf(1.0);
        y0.add(corr)
    }

    pub fn powf_dd(self, p: Dd) -> Dd {
        p.mul(self.ln()).exp()
    }

    pub fn powf(self, p: f64) -> Dd {
        self.powf_dd(Dd::from(p))
    }
}

/// Complex double-double.
#[derive(Debug, Clone, Copy)]
pub struct Ddc {
    pub re: Dd,
    pub im: Dd,
}

impl Ddc {
    pub const ONE: Ddc = Ddc { re: Dd { hi: 1.0, lo: 0.0 }, im: Dd { hi: 0.0, lo: 0.0 } };

    pub fn new(re: f64, im: f64) -> Ddc {
        Ddc { re: Dd::from(re), im: Dd::from(im) }
    }

    pub fn add(self, o: Ddc) -> Ddc {
        Ddc { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    pub fn mul(self, o: Ddc) -> Ddc {
        Ddc {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    pub fn mul_dd(self, s: Dd) -> Ddc {
        Ddc { re: self.re.mul(s), im: self.im.mul(s) }
    }

    pub fn div(self, o: Ddc) -> Ddc {
        let norm = o.re.mul(o.re).add(o.im.mul(o.im));
        let re = self.re.mul(o.re).add(self.im.mul(o.im)).div(norm);
        let im = self.im.mul(o.re).sub(self.re.mul(o.im)).div(norm);
        Ddc { re, im }
    }

    pub fn norm_hi(self) -> f64 {
        (self.re.hi * self.re.hi + self.im.hi * self.im.hi).sqrt()
    }
}
