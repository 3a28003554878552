//! Arbitrary-precision integers and rationals.
//!
//! Both types keep an inline `i64` representation and only promote to a
//! heap-backed `BigInt` when a result leaves the machine range. Results are
//! always normalized, so two equal values have equal representations.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Rem, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64),
    Big(BigInt),
}

/// Signed integer of unbounded size.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Integer(Repr);

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            core::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// Greatest common divisor of two machine integers (always non-negative).
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd_u64(a.unsigned_abs(), b.unsigned_abs()) as i64
}

/// Least common multiple of two positive machine integers.
pub fn lcm_i64(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd_i64(a, b) * b).abs()
}

/// Non-negative remainder `[a]_m` for `m > 0`.
pub fn mod_floor_i64(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

impl Integer {
    pub const fn from_i64(v: i64) -> Self {
        Integer(Repr::Small(v))
    }

    pub fn zero() -> Self {
        Integer(Repr::Small(0))
    }

    pub fn one() -> Self {
        Integer(Repr::Small(1))
    }

    fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Integer(Repr::Small(v)),
            None => Integer(Repr::Big(b)),
        }
    }

    pub fn from_i128(v: i128) -> Self {
        match i64::try_from(v) {
            Ok(s) => Integer(Repr::Small(s)),
            Err(_) => Integer(Repr::Big(BigInt::from(v))),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => b.clone(),
        }
    }

    /// The value as `i64`, if it fits.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1))
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(v) => v.signum() as i32,
            Repr::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Integer {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn gcd(&self, other: &Integer) -> Integer {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => {
                let g = gcd_u64(a.unsigned_abs(), b.unsigned_abs());
                Integer::from_i128(g as i128)
            }
            _ => Integer::from_big(self.to_big().gcd(&other.to_big())),
        }
    }

    pub fn lcm(&self, other: &Integer) -> Integer {
        if self.is_zero() || other.is_zero() {
            return Integer::zero();
        }
        (self / &self.gcd(other) * other).abs()
    }

    /// Floor division; panics on a zero divisor.
    pub fn div_floor(&self, other: &Integer) -> Integer {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) if !(*a == i64::MIN && *b == -1) => {
                Integer::from_i64(a.div_floor(b))
            }
            _ => Integer::from_big(self.to_big().div_floor(&other.to_big())),
        }
    }

    /// Remainder with the sign of the divisor.
    pub fn mod_floor(&self, other: &Integer) -> Integer {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) if !(*a == i64::MIN && *b == -1) => {
                Integer::from_i64(a.mod_floor(b))
            }
            _ => Integer::from_big(self.to_big().mod_floor(&other.to_big())),
        }
    }

    pub fn is_multiple_of(&self, other: &Integer) -> bool {
        if other.is_zero() {
            return self.is_zero();
        }
        self.mod_floor(other).is_zero()
    }

    pub fn pow(&self, exp: u32) -> Integer {
        let mut acc = Integer::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Extended gcd: returns `(g, x, y)` with `a·x + b·y = g ≥ 0`.
    pub fn extended_gcd(a: &Integer, b: &Integer) -> (Integer, Integer, Integer) {
        let (mut old_r, mut r) = (a.clone(), b.clone());
        let (mut old_s, mut s) = (Integer::one(), Integer::zero());
        let (mut old_t, mut t) = (Integer::zero(), Integer::one());
        while !r.is_zero() {
            let q = old_r.div_floor(&r);
            let nr = &old_r - &(&q * &r);
            old_r = core::mem::replace(&mut r, nr);
            let ns = &old_s - &(&q * &s);
            old_s = core::mem::replace(&mut s, ns);
            let nt = &old_t - &(&q * &t);
            old_t = core::mem::replace(&mut t, nt);
        }
        if old_r.is_negative() {
            (-old_r, -old_s, -old_t)
        } else {
            (old_r, old_s, old_t)
        }
    }
}

impl From<i64> for Integer {
    fn from(v: i64) -> Self {
        Integer::from_i64(v)
    }
}

impl From<i32> for Integer {
    fn from(v: i32) -> Self {
        Integer::from_i64(v as i64)
    }
}

impl From<usize> for Integer {
    fn from(v: usize) -> Self {
        Integer::from_i128(v as i128)
    }
}

impl From<BigInt> for Integer {
    fn from(v: BigInt) -> Self {
        Integer::from_big(v)
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Failure to parse an integer or rational literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid number literal `{0}`")]
pub struct ParseNumberError(pub String);

impl FromStr for Integer {
    type Err = ParseNumberError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if let Ok(v) = t.parse::<i64>() {
            return Ok(Integer::from_i64(v));
        }
        t.parse::<BigInt>()
            .map(Integer::from_big)
            .map_err(|_| ParseNumberError(s.to_string()))
    }
}

impl Neg for &Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        match &self.0 {
            Repr::Small(v) => match v.checked_neg() {
                Some(n) => Integer::from_i64(n),
                None => Integer::from_big(-BigInt::from(*v)),
            },
            Repr::Big(b) => Integer::from_big(-b),
        }
    }
}

impl Neg for Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        -&self
    }
}

macro_rules! int_binop {
    ($trait:ident, $method:ident, $checked:ident, $op:tt) => {
        impl $trait<&Integer> for &Integer {
            type Output = Integer;
            fn $method(self, rhs: &Integer) -> Integer {
                if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
                    if let Some(v) = a.$checked(*b) {
                        return Integer::from_i64(v);
                    }
                    return Integer::from_i128((*a as i128) $op (*b as i128));
                }
                Integer::from_big(self.to_big() $op rhs.to_big())
            }
        }
        impl $trait<Integer> for Integer {
            type Output = Integer;
            fn $method(self, rhs: Integer) -> Integer {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Integer> for Integer {
            type Output = Integer;
            fn $method(self, rhs: &Integer) -> Integer {
                (&self).$method(rhs)
            }
        }
        impl $trait<Integer> for &Integer {
            type Output = Integer;
            fn $method(self, rhs: Integer) -> Integer {
                self.$method(&rhs)
            }
        }
    };
}

int_binop!(Add, add, checked_add, +);
int_binop!(Sub, sub, checked_sub, -);
int_binop!(Mul, mul, checked_mul, *);

impl Div<&Integer> for &Integer {
    type Output = Integer;
    /// Truncating division; callers in this crate only divide exactly.
    fn div(self, rhs: &Integer) -> Integer {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.checked_div(*b) {
                return Integer::from_i64(v);
            }
        }
        Integer::from_big(self.to_big() / rhs.to_big())
    }
}

impl Div<Integer> for Integer {
    type Output = Integer;
    fn div(self, rhs: Integer) -> Integer {
        &self / &rhs
    }
}

impl Div<&Integer> for Integer {
    type Output = Integer;
    fn div(self, rhs: &Integer) -> Integer {
        &self / rhs
    }
}

impl Rem<&Integer> for &Integer {
    type Output = Integer;
    fn rem(self, rhs: &Integer) -> Integer {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.checked_rem(*b) {
                return Integer::from_i64(v);
            }
        }
        Integer::from_big(self.to_big() % rhs.to_big())
    }
}

impl AddAssign<&Integer> for Integer {
    fn add_assign(&mut self, rhs: &Integer) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Integer> for Integer {
    fn sub_assign(&mut self, rhs: &Integer) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Integer> for Integer {
    fn mul_assign(&mut self, rhs: &Integer) {
        *self = &*self * rhs;
    }
}

impl core::iter::Sum for Integer {
    fn sum<I: Iterator<Item = Integer>>(iter: I) -> Integer {
        iter.fold(Integer::zero(), |a, b| a + b)
    }
}

/// Exact rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: Integer,
    den: Integer,
}

fn reduce_i128(n: i128, d: i128) -> Rational {
    debug_assert!(d > 0);
    let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
    let (n, d) = if g > 1 { (n / g, d / g) } else { (n, d) };
    Rational {
        num: Integer::from_i128(n),
        den: Integer::from_i128(d),
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if let (Ok(x), Ok(y)) = (u64::try_from(a), u64::try_from(b)) {
        return gcd_u64(x, y) as u128;
    }
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn zero() -> Self {
        Rational {
            num: Integer::zero(),
            den: Integer::one(),
        }
    }

    pub fn one() -> Self {
        Rational::from_integer(Integer::one())
    }

    pub fn from_integer(n: Integer) -> Self {
        Rational {
            num: n,
            den: Integer::one(),
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Rational::from_integer(Integer::from_i64(n))
    }

    /// `n / d` reduced; panics if `d == 0`.
    pub fn new(n: Integer, d: Integer) -> Self {
        assert!(!d.is_zero(), "zero denominator");
        if let (Some(a), Some(b)) = (n.to_i64(), d.to_i64()) {
            let (a, b) = if b < 0 {
                (-(a as i128), -(b as i128))
            } else {
                (a as i128, b as i128)
            };
            return reduce_i128(a, b);
        }
        let g = n.gcd(&d);
        let (mut n, mut d) = (&n / &g, &d / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Rational { num: n, den: d }
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Rational::new(Integer::from_i64(n), Integer::from_i64(d))
    }

    pub fn numer(&self) -> &Integer {
        &self.num
    }

    pub fn denom(&self) -> &Integer {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn signum(&self) -> i32 {
        self.num.signum()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.num.signum() > 0
    }

    pub fn abs(&self) -> Rational {
        Rational {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Rational {
        Rational::new(self.den.clone(), self.num.clone())
    }

    pub fn floor(&self) -> Integer {
        self.num.div_floor(&self.den)
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<Integer> {
        self.is_integer().then(|| self.num.clone())
    }

    fn small(&self) -> Option<(i64, i64)> {
        Some((self.num.to_i64()?, self.den.to_i64()?))
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_i64(v)
    }
}

impl From<Integer> for Rational {
    fn from(v: Integer) -> Self {
        Rational::from_integer(v)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Some((a, b)), Some((c, d))) = (self.small(), other.small()) {
            return ((a as i128) * (d as i128)).cmp(&((c as i128) * (b as i128)));
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl fmt::Display for Rational {
    /// `p` for integers, `p/q` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseNumberError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseNumberError(s.to_string());
        match s.split_once('/') {
            None => Ok(Rational::from_integer(s.parse()?)),
            Some((p, q)) => {
                let p: Integer = p.parse().map_err(|_| bad())?;
                let q: Integer = q.parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(Rational::new(p, q))
            }
        }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

fn add_rat(x: &Rational, y: &Rational, negate_y: bool) -> Rational {
    if let (Some((a, b)), Some((c, d))) = (x.small(), y.small()) {
        let c = if negate_y { -(c as i128) } else { c as i128 };
        let (a, b, d) = (a as i128, b as i128, d as i128);
        if b == d {
            return reduce_i128(a + c, b);
        }
        return reduce_i128(a * d + c * b, b * d);
    }
    let yn = if negate_y { -&y.num } else { y.num.clone() };
    if x.den == y.den {
        return Rational::new(&x.num + &yn, x.den.clone());
    }
    Rational::new(&x.num * &y.den + &yn * &x.den, &x.den * &y.den)
}

fn mul_rat(x: &Rational, y: &Rational) -> Rational {
    if let (Some((a, b)), Some((c, d))) = (x.small(), y.small()) {
        if a == 0 || c == 0 {
            return Rational::zero();
        }
        let g1 = gcd_i64(a, d);
        let g2 = gcd_i64(c, b);
        let n = (a / g1) as i128 * (c / g2) as i128;
        let m = (b / g2) as i128 * (d / g1) as i128;
        return Rational {
            num: Integer::from_i128(n),
            den: Integer::from_i128(m),
        };
    }
    Rational::new(&x.num * &y.num, &x.den * &y.den)
}

impl Add<&Rational> for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        add_rat(self, rhs, false)
    }
}

impl Sub<&Rational> for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        add_rat(self, rhs, true)
    }
}

impl Mul<&Rational> for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        mul_rat(self, rhs)
    }
}

impl Div<&Rational> for &Rational {
    type Output = Rational;
    /// Panics on division by zero.
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        mul_rat(self, &rhs.recip())
    }
}

macro_rules! rat_owned_ops {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

rat_owned_ops!(Add, add);
rat_owned_ops!(Sub, sub);
rat_owned_ops!(Mul, mul);
rat_owned_ops!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        *self = &*self * rhs;
    }
}

impl core::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl Zero for Integer {
    fn zero() -> Self {
        Integer::zero()
    }
    fn is_zero(&self) -> bool {
        Integer::is_zero(self)
    }
}

impl One for Integer {
    fn one() -> Self {
        Integer::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use proptest::prelude::*;

    fn big(s: &str) -> Integer {
        s.parse().unwrap()
    }

    #[test]
    fn promotes_on_overflow() {
        let a = Integer::from_i64(i64::MAX);
        let b = &a + &Integer::one();
        assert_eq!(format!("{b}"), "9223372036854775808");
        assert_eq!(&b - &Integer::one(), a);
        assert!(b.to_i64().is_none());
        assert_eq!((&b - &Integer::one()).to_i64(), Some(i64::MAX));
    }

    #[test]
    fn rational_normalizes() {
        let r = Rational::ratio(6, -4);
        assert_eq!(r.numer(), &Integer::from_i64(-3));
        assert_eq!(r.denom(), &Integer::from_i64(2));
        assert_eq!(format!("{r}"), "-3/2");
        assert_eq!(format!("{}", Rational::ratio(4, 2)), "2");
    }

    #[test]
    fn rational_parse_roundtrip() {
        for s in ["0", "-7", "31/3", "-1/5", "123456789012345678901234567891/7"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(format!("{r}"), s);
        }
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn big_rational_arithmetic() {
        let x = Rational::new(big("100000000000000000000"), Integer::from_i64(3));
        let y = Rational::new(Integer::one(), big("100000000000000000000"));
        let p = &x * &y;
        assert_eq!(p, Rational::ratio(1, 3));
        let s = &(&x + &y) - &x;
        assert_eq!(s, y);
    }

    #[test]
    fn extended_gcd_identity() {
        let (g, x, y) = Integer::extended_gcd(&Integer::from(240), &Integer::from(46));
        assert_eq!(g, Integer::from(2));
        assert_eq!(&Integer::from(240) * &x + &Integer::from(46) * &y, g);
    }

    proptest! {
        #[test]
        fn matches_i128_reference(a in -1_000_000i64..1_000_000, b in 1i64..1000,
                                  c in -1_000_000i64..1_000_000, d in 1i64..1000) {
            let x = Rational::ratio(a, b);
            let y = Rational::ratio(c, d);
            let sum = &x + &y;
            prop_assert_eq!(sum.clone(), Rational::new(Integer::from_i128(a as i128 * d as i128 + c as i128 * b as i128), Integer::from_i128(b as i128 * d as i128)));
            let prod = &x * &y;
            prop_assert_eq!(prod, Rational::new(Integer::from_i128(a as i128 * c as i128), Integer::from_i128(b as i128 * d as i128)));
            prop_assert_eq!(&sum - &y, x.clone());
            prop_assert_eq!(x.cmp(&y), ((a as i128) * (d as i128)).cmp(&((c as i128) * (b as i128))));
        }

        #[test]
        fn overflowing_products_stay_exact(a in any::<i64>(), b in any::<i64>()) {
            let p = &Integer::from(a) * &Integer::from(b);
            prop_assert_eq!(p.to_big(), BigInt::from(a) * BigInt::from(b));
            let s = &Integer::from(a) + &Integer::from(b);
            prop_assert_eq!(s.to_big(), BigInt::from(a) + BigInt::from(b));
        }
    }
}
