//! Exact arithmetic in `Q(ζ_N)`.
//!
//! Elements are rational combinations of `ζ_N^k`, reduced to a fixed basis of
//! roots of unity. Writing `N = ∏ p^e` and splitting an exponent `k` by CRT
//! into components `c_p ∈ Z/p^e`, the basis keeps exactly the `k` whose every
//! component has leading base-`p` digit `c_p div p^{e-1}` at most `p - 2`.
//! Each excluded root is rewritten through `Σ_{v<p} ζ_{p^e}^{u + v·p^{e-1}} = 0`.
//! This is the tensor product of the power bases of the `Q(ζ_{p^e})`, so
//! rationals sit on exponent 0 and an element of a subfield `Q(ζ_M)` only uses
//! exponents divisible by `N/M`.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

use crate::fields::{prime_factors, FieldError, FieldTower, Fq2};

mod linalg;

pub use linalg::{linear_solve, CycLu};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("root order {order} does not divide the conductor {n}")]
    OrderDoesNotDivideN { order: u32, n: u32 },
    #[error("zero has no Teichmüller lift")]
    ZeroElement,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

impl From<FieldError> for CycError {
    fn from(_: FieldError) -> Self {
        CycError::ZeroElement
    }
}

#[derive(Debug)]
struct PrimePart {
    p: u32,
    /// `p^e`
    pe: u32,
    /// `N/p`, the exponent shift that moves the leading digit by one.
    step: u32,
    /// `(N/p^e)^{-1} mod p^e`
    cofactor_inv: u32,
}

impl PrimePart {
    fn leading_digit(&self, k: u32) -> u32 {
        let c = (k as u64 * self.cofactor_inv as u64 % self.pe as u64) as u32;
        c / (self.pe / self.p)
    }
}

/// The field `Q(ζ_N)` with its reduction table.
pub struct CycloField {
    n: u32,
    parts: Vec<PrimePart>,
    reduce: Vec<Vec<(u32, i8)>>,
    degree: usize,
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CycloField").field("n", &self.n).field("degree", &self.degree).finish()
    }
}

impl CycloField {
    pub fn new(n: u32) -> Arc<Self> {
        assert!(n >= 1, "conductor must be positive");
        let parts: Vec<PrimePart> = prime_factors(n as u64)
            .into_iter()
            .map(|p| {
                let p = p as u32;
                let mut pe = 1;
                while n % (pe * p) == 0 {
                    pe *= p;
                }
                let cofactor = (n / pe) % pe;
                let cofactor_inv = (1..=pe).find(|x| cofactor * x % pe == 1 % pe).unwrap_or(0);
                PrimePart { p, pe, step: n / p, cofactor_inv }
            })
            .collect();

        let mut reduce = Vec::with_capacity(n as usize);
        for k in 0..n {
            let bad: Vec<&PrimePart> =
                parts.iter().filter(|part| part.leading_digit(k) == part.p - 1).collect();
            let sign: i8 = if bad.len() % 2 == 0 { 1 } else { -1 };
            let mut images = vec![k];
            for part in bad {
                // leading digit p-1 is replaced by the digits 0..=p-2
                let back = (part.p - 1) * part.step;
                images = images
                    .iter()
                    .flat_map(|&e| {
                        (0..part.p - 1).map(move |v| (e + n - back % n + v * part.step) % n)
                    })
                    .collect();
            }
            reduce.push(images.into_iter().map(|e| (e, sign)).collect());
        }
        let degree = (0..n).filter(|&k| reduce[k as usize] == [(k, 1)]).count();
        Arc::new(CycloField { n, parts, reduce, degree })
    }

    /// The ambient field for a tower over `F_q`: conductor `p(q² - 1)`.
    pub fn for_tower(tower: &FieldTower) -> Arc<Self> {
        Self::new(tower.p() * tower.unit_order())
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// `[Q(ζ_N) : Q] = φ(N)`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_basis_exponent(&self, k: u32) -> bool {
        self.parts.iter().all(|part| part.leading_digit(k) != part.p - 1)
    }

    pub fn zero(self: &Arc<Self>) -> CycNum {
        CycNum { field: Arc::clone(self), terms: BTreeMap::new() }
    }

    pub fn one(self: &Arc<Self>) -> CycNum {
        self.from_integer(1)
    }

    pub fn from_integer(self: &Arc<Self>, n: i64) -> CycNum {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(self: &Arc<Self>, r: BigRational) -> CycNum {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(0, r);
        }
        CycNum { field: Arc::clone(self), terms }
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta_pow(self: &Arc<Self>, k: i64) -> CycNum {
        self.from_exponents([(k, 1)])
    }

    /// `ζ_order^power`.
    pub fn root_of_unity(self: &Arc<Self>, order: u32, power: i64) -> Result<CycNum, CycError> {
        if order == 0 || self.n % order != 0 {
            return Err(CycError::OrderDoesNotDivideN { order, n: self.n });
        }
        Ok(self.zeta_pow((self.n / order) as i64 * power))
    }

    /// `Σ coef·ζ_N^k` over integer pairs `(k, coef)`.
    pub fn from_exponents<I>(self: &Arc<Self>, pairs: I) -> CycNum
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let mut acc: HashMap<u32, i64> = HashMap::new();
        for (k, c) in pairs {
            if c == 0 {
                continue;
            }
            let k = k.rem_euclid(self.n as i64) as usize;
            for &(e, s) in &self.reduce[k] {
                *acc.entry(e).or_insert(0) += s as i64 * c;
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(e, c)| (e, BigRational::from_integer(BigInt::from(c))))
            .collect();
        CycNum { field: Arc::clone(self), terms }
    }

    fn from_raw(self: &Arc<Self>, raw: HashMap<u32, BigRational>) -> CycNum {
        let mut terms: BTreeMap<u32, BigRational> = BTreeMap::new();
        for (k, c) in raw {
            if c.is_zero() {
                continue;
            }
            for &(e, s) in &self.reduce[k as usize] {
                let entry = terms.entry(e).or_insert_with(BigRational::zero);
                if s > 0 {
                    *entry += &c;
                } else {
                    *entry -= &c;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        CycNum { field: Arc::clone(self), terms }
    }

    /// Lift of a nonzero `x ∈ F_{q²}` to `ζ_{q²-1}^{log x}`.
    pub fn teichmueller_lift(self: &Arc<Self>, x: Fq2, tower: &FieldTower) -> Result<CycNum, CycError> {
        let k = tower.discrete_log(x).map_err(|_| CycError::ZeroElement)?;
        self.root_of_unity(tower.unit_order(), k as i64)
    }
}

/// An exact element of `Q(ζ_N)` in canonical form.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CycloField>,
    terms: BTreeMap<u32, BigRational>,
}

impl CycNum {
    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// Nonzero coefficients keyed by basis exponent.
    pub fn terms(&self) -> &BTreeMap<u32, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_integer().is_some_and(|n| n.is_one())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// `Some(n)` exactly when this equals the rational integer `n`.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|n| n.to_i64())
    }

    fn map_exponents(&self, f: impl Fn(u32) -> u32) -> CycNum {
        let raw = self.terms.iter().map(|(&k, c)| (f(k), c.clone())).collect();
        self.field.from_raw(raw)
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> CycNum {
        let n = self.field.n;
        self.map_exponents(|k| (n - k) % n)
    }

    /// The Galois automorphism `ζ ↦ ζ^m`; `m` must be a unit mod `N`.
    pub fn galois(&self, m: i64) -> CycNum {
        let n = self.field.n as i64;
        assert_eq!(m.gcd(&n), 1, "Galois exponent must be a unit");
        self.map_exponents(|k| (k as i64 * m).rem_euclid(n) as u32)
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        if r.is_zero() {
            return self.field.zero();
        }
        let terms = self.terms.iter().map(|(&k, c)| (k, c * r)).collect();
        CycNum { field: Arc::clone(&self.field), terms }
    }

    pub fn scale_int(&self, n: i64) -> CycNum {
        self.scale(&BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact division by a nonzero rational integer.
    pub fn div_int(&self, n: i64) -> CycNum {
        assert!(n != 0, "division by zero");
        self.scale(&BigRational::new(BigInt::one(), BigInt::from(n)))
    }

    pub fn pow(&self, mut e: u32) -> CycNum {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Smallest `M | N` with this element in `Q(ζ_M)`, read off the support.
    pub fn conductor_bound(&self) -> u32 {
        let n = self.field.n;
        let g = self.terms.keys().fold(n, |g, &k| crate::fields::gcd(g, k));
        n / g.max(1)
    }

    /// Multiplicative inverse, computed by a rational linear solve inside the
    /// smallest cyclotomic subfield containing the element.
    pub fn inverse(&self) -> Option<CycNum> {
        if self.is_zero() {
            return None;
        }
        if self.terms.len() == 1 {
            let (&k, c) = self.terms.iter().next().unwrap();
            let n = self.field.n;
            let mut raw = HashMap::new();
            raw.insert((n - k) % n, c.recip());
            return Some(self.field.from_raw(raw));
        }
        let n = self.field.n;
        let step = n / self.conductor_bound();
        let basis: Vec<u32> =
            (0..n).step_by(step as usize).filter(|&k| self.field.is_basis_exponent(k)).collect();
        let position: HashMap<u32, usize> = basis.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let dim = basis.len();
        // Column j holds the coordinates of self·ζ^{basis[j]}.
        let mut matrix = vec![vec![BigRational::zero(); dim]; dim];
        for (j, &k) in basis.iter().enumerate() {
            let prod = self.map_exponents(|e| (e + k) % n);
            for (e, c) in prod.terms {
                matrix[position[&e]][j] = c;
            }
        }
        let mut rhs = vec![BigRational::zero(); dim];
        rhs[position[&0]] = BigRational::one();
        let x = linalg::solve_rational(matrix, rhs)?;
        let raw = basis.iter().zip(x).map(|(&k, c)| (k, c)).collect();
        Some(self.field.from_raw(raw))
    }

    /// Floating-point value, for display only.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.field.n as f64;
        self.terms.iter().fold((0.0, 0.0), |(re, im), (&k, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let angle = 2.0 * PI * k as f64 / n;
            (re + c * angle.cos(), im + c * angle.sin())
        })
    }

    pub fn approx_string(&self) -> String {
        let (re, im) = self.approx();
        let clean = |x: f64| if x.abs() < 5e-7 { 0.0 } else { x };
        let (re, im) = (clean(re), clean(im));
        if im == 0.0 {
            format!("{re:.6}")
        } else if im < 0.0 {
            format!("{re:.6}-{:.6}i", -im)
        } else {
            format!("{re:.6}+{im:.6}i")
        }
    }

    /// `(exponent, numerator, denominator)` triples in exponent order.
    pub fn exact_terms(&self) -> Vec<(u32, String, String)> {
        self.terms
            .iter()
            .map(|(&k, c)| (k, c.numer().to_string(), c.denom().to_string()))
            .collect()
    }

    fn check_field(&self, other: &CycNum) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field.n == other.field.n,
            "mixing cyclotomic fields of conductors {} and {}",
            self.field.n,
            other.field.n
        );
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.terms == other.terms
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[N={}]({})", self.field.n, self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&k, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}*z^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CycNum", 2)?;
        s.serialize_field("terms", &self.exact_terms())?;
        s.serialize_field("approx", &self.approx_string())?;
        s.end()
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &'a CycNum) -> CycNum {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        self.check_field(rhs);
        for (&k, c) in &rhs.terms {
            let entry = self.terms.entry(k).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(&k);
            }
        }
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        self.check_field(rhs);
        for (&k, c) in &rhs.terms {
            let entry = self.terms.entry(k).or_insert_with(BigRational::zero);
            *entry -= c;
            if entry.is_zero() {
                self.terms.remove(&k);
            }
        }
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &'a CycNum) -> CycNum {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        let terms = self.terms.iter().map(|(&k, c)| (k, -c)).collect();
        CycNum { field: Arc::clone(&self.field), terms }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &'a CycNum) -> CycNum {
        self.check_field(rhs);
        if let Some(r) = self.as_rational() {
            return rhs.scale(&r);
        }
        if let Some(r) = rhs.as_rational() {
            return self.scale(&r);
        }
        let n = self.field.n;
        let mut raw: HashMap<u32, BigRational> = HashMap::new();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                *raw.entry((a + b) % n).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        self.field.from_raw(raw)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &'a CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<'a> std::iter::Sum<&'a CycNum> for Option<CycNum> {
    fn sum<I: Iterator<Item = &'a CycNum>>(iter: I) -> Self {
        let mut acc: Option<CycNum> = None;
        for x in iter {
            match &mut acc {
                Some(a) => *a += x,
                None => acc = Some(x.clone()),
            }
        }
        acc
    }
}
