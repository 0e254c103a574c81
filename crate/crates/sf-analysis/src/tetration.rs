//! Arithmetic expressions with iterated exponentiation, evaluated exactly
//! while small and as a tower lower bound beyond a bit-size cutoff.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Default cutoff on the bit length of exactly evaluated values.
pub const DEFAULT_CUTOFF_BITS: u64 = 1 << 20;

/// Decimal strings are only produced up to this many bits.
const DECIMAL_BITS: u64 = 3400;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TetrationExpr {
    Nat(BigUint),
    Add(Box<TetrationExpr>, Box<TetrationExpr>),
    Mul(Box<TetrationExpr>, Box<TetrationExpr>),
    Pow(Box<TetrationExpr>, Box<TetrationExpr>),
    /// `2↑k(m)`: a tower of `k` twos topped by `m`.
    TwoUp(u64, Box<TetrationExpr>),
}

/// Result of evaluating a [`TetrationExpr`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Magnitude {
    Exact(BigUint),
    /// The value is at least `2↑height(top)` and exceeds the cutoff.
    Huge { height: u64, top: BigUint },
}

impl Magnitude {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            Magnitude::Exact(v) => Some(v),
            Magnitude::Huge { .. } => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.exact().and_then(|v| v.to_u64())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Magnitude::Exact(_))
    }

    /// Orders lower bounds; exact values count as height zero.
    fn tower(&self) -> (u64, BigUint) {
        match self {
            Magnitude::Exact(v) => (0, v.clone()),
            Magnitude::Huge { height, top } => (*height, top.clone()),
        }
    }

    fn larger(a: Magnitude, b: Magnitude) -> Magnitude {
        let (ha, ta) = a.tower();
        let (hb, tb) = b.tower();
        // compare 2↑ha(ta) with 2↑hb(tb) conservatively by height first
        match ha.cmp(&hb).then_with(|| ta.cmp(&tb)) {
            Ordering::Less => b,
            _ => a,
        }
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnitude::Exact(v) if v.bits() <= DECIMAL_BITS => write!(f, "{v}"),
            Magnitude::Exact(v) => write!(f, "<{}-bit number>", v.bits()),
            Magnitude::Huge { height, top } => write!(f, ">= 2↑{height}({top})"),
        }
    }
}

fn huge_from_bits(bits: u64) -> Magnitude {
    // a number with `bits` bits is at least 2^(bits-1)
    Magnitude::Huge {
        height: 1,
        top: BigUint::from(bits.saturating_sub(1)),
    }
}

fn checked(v: BigUint, cutoff: u64) -> Magnitude {
    if v.bits() > cutoff {
        huge_from_bits(v.bits())
    } else {
        Magnitude::Exact(v)
    }
}

impl TetrationExpr {
    pub fn nat(n: impl Into<BigUint>) -> TetrationExpr {
        TetrationExpr::Nat(n.into())
    }

    pub fn sum(a: TetrationExpr, b: TetrationExpr) -> TetrationExpr {
        TetrationExpr::Add(Box::new(a), Box::new(b))
    }

    pub fn product(a: TetrationExpr, b: TetrationExpr) -> TetrationExpr {
        TetrationExpr::Mul(Box::new(a), Box::new(b))
    }

    pub fn pow(a: TetrationExpr, b: TetrationExpr) -> TetrationExpr {
        TetrationExpr::Pow(Box::new(a), Box::new(b))
    }

    pub fn two_up(k: u64, m: TetrationExpr) -> TetrationExpr {
        TetrationExpr::TwoUp(k, Box::new(m))
    }

    pub fn evaluate(&self) -> Magnitude {
        self.evaluate_with(DEFAULT_CUTOFF_BITS)
    }

    pub fn evaluate_with(&self, cutoff: u64) -> Magnitude {
        match self {
            TetrationExpr::Nat(v) => checked(v.clone(), cutoff),
            TetrationExpr::Add(a, b) => match (a.evaluate_with(cutoff), b.evaluate_with(cutoff)) {
                (Magnitude::Exact(x), Magnitude::Exact(y)) => checked(x + y, cutoff),
                (x, y) => Magnitude::larger(x, y),
            },
            TetrationExpr::Mul(a, b) => match (a.evaluate_with(cutoff), b.evaluate_with(cutoff)) {
                (Magnitude::Exact(x), _) | (_, Magnitude::Exact(x)) if x.is_zero() => {
                    Magnitude::Exact(BigUint::zero())
                }
                (Magnitude::Exact(x), Magnitude::Exact(y)) => {
                    if x.bits() + y.bits() > cutoff + 1 {
                        huge_from_bits(x.bits() + y.bits() - 1)
                    } else {
                        checked(x * y, cutoff)
                    }
                }
                (x, y) => Magnitude::larger(x, y),
            },
            TetrationExpr::Pow(a, b) => pow(a.evaluate_with(cutoff), b.evaluate_with(cutoff), cutoff),
            TetrationExpr::TwoUp(k, m) => {
                let mut v = m.evaluate_with(cutoff);
                for done in 0..*k {
                    v = match v {
                        Magnitude::Huge { height, top } => {
                            return Magnitude::Huge {
                                height: height + (k - done),
                                top,
                            }
                        }
                        Magnitude::Exact(e) => match e.to_u64() {
                            Some(small) if small < cutoff => Magnitude::Exact(BigUint::one() << small),
                            _ => {
                                return Magnitude::Huge {
                                    height: k - done,
                                    top: e,
                                }
                            }
                        },
                    };
                }
                v
            }
        }
    }

    /// Evaluates only if the value is below the default cutoff.
    pub fn exact(&self) -> Option<BigUint> {
        self.evaluate().exact().cloned()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let value = self.evaluate();
        let mut obj = serde_json::Map::new();
        obj.insert("expr".into(), self.to_string().into());
        obj.insert("exact".into(), value.is_exact().into());
        match &value {
            Magnitude::Exact(v) => {
                obj.insert("bits".into(), v.bits().into());
                if v.bits() <= DECIMAL_BITS {
                    obj.insert("value".into(), v.to_string().into());
                }
            }
            Magnitude::Huge { height, top } => {
                obj.insert("tower_height".into(), (*height).into());
                obj.insert("lower_bound".into(), format!("2↑{height}({top})").into());
            }
        }
        serde_json::Value::Object(obj)
    }
}

fn pow(base: Magnitude, exp: Magnitude, cutoff: u64) -> Magnitude {
    match (base, exp) {
        (_, Magnitude::Exact(e)) if e.is_zero() => Magnitude::Exact(BigUint::one()),
        (Magnitude::Exact(b), _) if b.is_zero() || b.is_one() => Magnitude::Exact(b),
        (Magnitude::Exact(b), Magnitude::Exact(e)) => {
            let per = b.bits() - 1; // b >= 2^per
            let e_small = e.to_u64();
            match e_small {
                Some(es) if (per as u128) * (es as u128) <= cutoff as u128 => {
                    checked(b.pow(es as u32), cutoff)
                }
                _ => {
                    // b^e >= 2^(per * e)
                    Magnitude::Huge {
                        height: 1,
                        top: e * BigUint::from(per),
                    }
                }
            }
        }
        // base >= 2, exponent huge: base^e >= 2^e
        (Magnitude::Exact(_), Magnitude::Huge { height, top }) => Magnitude::Huge {
            height: height + 1,
            top,
        },
        // huge base, exponent >= 1
        (huge @ Magnitude::Huge { .. }, _) => huge,
    }
}

fn prec(e: &TetrationExpr) -> u8 {
    match e {
        TetrationExpr::Add(..) => 1,
        TetrationExpr::Mul(..) => 2,
        TetrationExpr::Pow(..) => 3,
        _ => 4,
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &TetrationExpr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for TetrationExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TetrationExpr::Nat(v) => write!(f, "{v}"),
            TetrationExpr::Add(a, b) => {
                write_child(f, a, 1)?;
                f.write_str(" + ")?;
                write_child(f, b, 2)
            }
            TetrationExpr::Mul(a, b) => {
                write_child(f, a, 2)?;
                f.write_str(" * ")?;
                write_child(f, b, 3)
            }
            TetrationExpr::Pow(a, b) => {
                write_child(f, a, 4)?;
                f.write_str("^")?;
                write_child(f, b, 4)
            }
            TetrationExpr::TwoUp(k, m) => write!(f, "2↑{k}({m})"),
        }
    }
}

/// `2↑k(m)` for a natural `m`.
pub fn twoup(k: u64, m: u64) -> TetrationExpr {
    TetrationExpr::two_up(k, TetrationExpr::nat(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(e: &TetrationExpr) -> u64 {
        e.evaluate().to_u64().unwrap()
    }

    #[test]
    fn small_towers() {
        assert_eq!(exact(&twoup(0, 7)), 7);
        assert_eq!(exact(&twoup(1, 5)), 32);
        assert_eq!(exact(&twoup(2, 2)), 16);
        assert_eq!(exact(&twoup(3, 2)), 65536);
    }

    #[test]
    fn large_tower_is_exact_below_cutoff() {
        let v = twoup(4, 2).evaluate();
        assert_eq!(v.exact().unwrap().bits(), 65537);
    }

    #[test]
    fn towers_beyond_cutoff_are_symbolic() {
        assert_eq!(
            twoup(5, 2).evaluate(),
            Magnitude::Huge {
                height: 1,
                top: BigUint::one() << 65536u32
            }
        );
        assert_eq!(
            twoup(7, 2).evaluate(),
            Magnitude::Huge {
                height: 3,
                top: BigUint::one() << 65536u32
            }
        );
    }

    #[test]
    fn lower_bounds_propagate() {
        let big = twoup(6, 2);
        let e = TetrationExpr::sum(TetrationExpr::nat(3u32), TetrationExpr::product(TetrationExpr::nat(2u32), big.clone()));
        assert_eq!(e.evaluate(), big.evaluate());
        let p = TetrationExpr::pow(TetrationExpr::nat(3u32), big.clone());
        match (p.evaluate(), big.evaluate()) {
            (Magnitude::Huge { height: hp, .. }, Magnitude::Huge { height: hb, .. }) => assert_eq!(hp, hb + 1),
            other => panic!("{other:?}"),
        }
        let z = TetrationExpr::product(TetrationExpr::nat(0u32), big);
        assert_eq!(z.evaluate(), Magnitude::Exact(BigUint::zero()));
    }

    #[test]
    fn cutoff_on_products() {
        let e = TetrationExpr::pow(TetrationExpr::nat(2u32), TetrationExpr::nat(100u32));
        assert!(e.evaluate_with(64).exact().is_none());
        assert!(e.evaluate_with(128).exact().is_some());
    }

    #[test]
    fn display() {
        let e = TetrationExpr::sum(
            TetrationExpr::nat(4u32),
            TetrationExpr::product(TetrationExpr::nat(4u32), TetrationExpr::pow(twoup(1, 4), TetrationExpr::nat(1u32))),
        );
        assert_eq!(e.to_string(), "4 + 4 * 2↑1(4)^1");
        assert_eq!(exact(&e), 68);
    }
}
