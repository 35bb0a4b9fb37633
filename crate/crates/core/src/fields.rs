//! Finite fields `F_q ⊂ F_{q²}` backed by dense log/antilog tables.
//!
//! A single model `F_p[x]/(f)` with `f` primitive of degree `2m` carries both
//! fields. The class of `x` is the generator of `F_{q²}^×`; `F_q` is the fixed
//! field of `z ↦ z^q` and its generator is the norm of that class.

use std::fmt;

use thiserror::Error;

/// Largest `q` accepted by [`FieldTower::new`].
pub const DEFAULT_BOUND: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime power >= 2")]
    NotAPrimePower(u32),
    #[error("q = {q} exceeds the configured bound {bound}")]
    BoundExceeded { q: u32, bound: u32 },
    #[error("zero has no discrete logarithm")]
    ZeroElement,
}

/// An element of `F_{q²}`, stored as the base-`p` encoding of its coefficient
/// vector in the power basis of the modulus root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq2(pub u32);

impl Fq2 {
    pub const ZERO: Fq2 = Fq2(0);
    pub const ONE: Fq2 = Fq2(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fq2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Returns `(p, m)` with `q = p^m`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Debug, Clone)]
pub struct FieldTower {
    p: u32,
    m: u32,
    q: u32,
    /// Number of elements of `F_{q²}`.
    size: u32,
    /// Non-leading coefficients `c_0 .. c_{2m-1}` of the monic modulus.
    modulus: Vec<u32>,
    exp: Vec<Fq2>,
    log: Vec<u32>,
    add: Vec<u32>,
    neg: Vec<u32>,
    /// Elements of `F_q`, ascending by index (so `0, 1, .., p-1` come first).
    base: Vec<Fq2>,
    /// Position of each element inside `base`, or `u32::MAX` outside `F_q`.
    base_pos: Vec<u32>,
}

impl FieldTower {
    pub fn new(q: u32) -> Result<Self, FieldError> {
        Self::with_bound(q, DEFAULT_BOUND)
    }

    pub fn with_bound(q: u32, bound: u32) -> Result<Self, FieldError> {
        let (p, m) = prime_power(q).ok_or(FieldError::NotAPrimePower(q))?;
        if q > bound {
            return Err(FieldError::BoundExceeded { q, bound });
        }
        let degree = (2 * m) as usize;
        let size = q * q;
        let modulus = smallest_primitive(p, degree);

        let mut exp = Vec::with_capacity((size - 1) as usize);
        let mut log = vec![u32::MAX; size as usize];
        let mut coeffs = vec![0u32; degree];
        coeffs[0] = 1;
        for k in 0..size - 1 {
            let idx = encode(&coeffs, p);
            exp.push(Fq2(idx));
            log[idx as usize] = k;
            times_x(&mut coeffs, &modulus, p);
        }

        let digits: Vec<Vec<u32>> = (0..size).map(|i| decode(i, p, degree)).collect();
        let mut add = vec![0u32; (size * size) as usize];
        for a in 0..size as usize {
            for b in 0..size as usize {
                let sum: Vec<u32> = digits[a]
                    .iter()
                    .zip(&digits[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * size as usize + b] = encode(&sum, p);
            }
        }
        let neg = digits
            .iter()
            .map(|d| encode(&d.iter().map(|x| (p - x) % p).collect::<Vec<_>>(), p))
            .collect();

        let mut tower = FieldTower {
            p,
            m,
            q,
            size,
            modulus,
            exp,
            log,
            add,
            neg,
            base: Vec::new(),
            base_pos: vec![u32::MAX; size as usize],
        };
        let base: Vec<Fq2> = (0..size)
            .map(Fq2)
            .filter(|&x| tower.frobenius(x) == x)
            .collect();
        for (i, x) in base.iter().enumerate() {
            tower.base_pos[x.0 as usize] = i as u32;
        }
        tower.base = base;
        Ok(tower)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `|F_{q²}|`.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// `q² - 1`, the order of `F_{q²}^×`.
    pub fn unit_order(&self) -> u32 {
        self.size - 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq2> {
        (0..self.size).map(Fq2)
    }

    /// Generator of `F_{q²}^×` (the modulus root).
    pub fn generator(&self) -> Fq2 {
        self.exp[1 % self.exp.len()]
    }

    /// Generator of `F_q^×`, the norm of [`Self::generator`].
    pub fn base_generator(&self) -> Fq2 {
        self.pow_gen(self.q as i64 + 1)
    }

    /// `γ = g₂^{q-1}`, a generator of the norm-one group `μ_{q+1}`.
    pub fn gamma(&self) -> Fq2 {
        self.pow_gen(self.q as i64 - 1)
    }

    /// The subgroup `μ_{q+1}` listed as `γ⁰, γ¹, .., γ^q`.
    pub fn mu_subgroup(&self) -> Vec<Fq2> {
        (0..=self.q as i64)
            .map(|k| self.pow_gen(k * (self.q as i64 - 1)))
            .collect()
    }

    /// Exponent `k` with `γ^k = t`, when `t ∈ μ_{q+1}`.
    pub fn mu_index(&self, t: Fq2) -> Option<u32> {
        let l = self.discrete_log(t).ok()?;
        (l % (self.q - 1) == 0).then(|| l / (self.q - 1))
    }

    /// `F_q` as a sorted list of embedded elements.
    pub fn base_field(&self) -> &[Fq2] {
        &self.base
    }

    pub fn in_base_field(&self, x: Fq2) -> bool {
        self.base_pos[x.0 as usize] != u32::MAX
    }

    /// Position of `x` inside [`Self::base_field`].
    pub fn base_position(&self, x: Fq2) -> Option<usize> {
        let pos = self.base_pos[x.0 as usize];
        (pos != u32::MAX).then_some(pos as usize)
    }

    pub fn from_prime_field(&self, n: i64) -> Fq2 {
        Fq2(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn add(&self, a: Fq2, b: Fq2) -> Fq2 {
        Fq2(self.add[(a.0 * self.size + b.0) as usize])
    }

    pub fn neg(&self, a: Fq2) -> Fq2 {
        Fq2(self.neg[a.0 as usize])
    }

    pub fn sub(&self, a: Fq2, b: Fq2) -> Fq2 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq2, b: Fq2) -> Fq2 {
        if a.is_zero() || b.is_zero() {
            return Fq2::ZERO;
        }
        let k = (self.log[a.0 as usize] + self.log[b.0 as usize]) % self.unit_order();
        self.exp[k as usize]
    }

    pub fn inv(&self, a: Fq2) -> Option<Fq2> {
        if a.is_zero() {
            return None;
        }
        let n = self.unit_order();
        Some(self.exp[((n - self.log[a.0 as usize]) % n) as usize])
    }

    pub fn div(&self, a: Fq2, b: Fq2) -> Option<Fq2> {
        self.inv(b).map(|b| self.mul(a, b))
    }

    /// `a^e` for any integer `e`; `0^0 = 1`, and `0^e` is zero for `e > 0`.
    pub fn pow(&self, a: Fq2, e: i64) -> Fq2 {
        if a.is_zero() {
            return if e == 0 { Fq2::ONE } else { Fq2::ZERO };
        }
        let n = self.unit_order() as i64;
        let k = (self.log[a.0 as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        self.exp[k as usize]
    }

    /// `g₂^k`.
    pub fn pow_gen(&self, k: i64) -> Fq2 {
        self.exp[k.rem_euclid(self.unit_order() as i64) as usize]
    }

    pub fn frobenius(&self, x: Fq2) -> Fq2 {
        self.pow(x, self.q as i64)
    }

    /// `x^{q+1}`, which lands in `F_q`.
    pub fn norm(&self, x: Fq2) -> Fq2 {
        self.pow(x, self.q as i64 + 1)
    }

    pub fn discrete_log(&self, x: Fq2) -> Result<u32, FieldError> {
        if x.is_zero() {
            Err(FieldError::ZeroElement)
        } else {
            Ok(self.log[x.0 as usize])
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: Fq2) -> Option<u32> {
        let l = self.discrete_log(x).ok()?;
        let n = self.unit_order();
        Some(n / gcd(n, l))
    }

    /// Absolute trace `F_q → F_p` of an element of `F_q`, as an integer in `0..p`.
    pub fn trace_to_prime(&self, x: Fq2) -> u32 {
        let mut acc = Fq2::ZERO;
        let mut y = x;
        for _ in 0..self.m {
            acc = self.add(acc, y);
            y = self.pow(y, self.p as i64);
        }
        debug_assert!(acc.0 < self.p, "trace of a base-field element lies in F_p");
        acc.0
    }

    /// Coordinates `(a, b)` of `z = a + b·g₂` over `F_q`.
    pub fn coordinates(&self, z: Fq2) -> (Fq2, Fq2) {
        let beta = self.generator();
        let denom = self.sub(beta, self.frobenius(beta));
        let b = self
            .div(self.sub(z, self.frobenius(z)), denom)
            .expect("generator lies outside F_q");
        let a = self.sub(z, self.mul(b, beta));
        (a, b)
    }

    /// Roots of `λ² - s·λ + 1` in `F_{q²}`, by scanning.
    pub fn reciprocal_roots(&self, s: Fq2) -> Vec<Fq2> {
        self.elements()
            .skip(1)
            .filter(|&l| self.add(self.sub(self.mul(l, l), self.mul(s, l)), Fq2::ONE).is_zero())
            .collect()
    }
}

/// A 2×2 matrix over `F_{q²}` acting on column vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: Fq2,
    pub b: Fq2,
    pub c: Fq2,
    pub d: Fq2,
}

impl Mat2 {
    pub fn new(a: Fq2, b: Fq2, c: Fq2, d: Fq2) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::scalar(Fq2::ONE)
    }

    pub fn scalar(t: Fq2) -> Self {
        Mat2::new(t, Fq2::ZERO, Fq2::ZERO, t)
    }

    pub fn mul(&self, other: &Mat2, f: &FieldTower) -> Mat2 {
        let dot = |x1, y1, x2, y2| f.add(f.mul(x1, y1), f.mul(x2, y2));
        Mat2::new(
            dot(self.a, other.a, self.b, other.c),
            dot(self.a, other.b, self.b, other.d),
            dot(self.c, other.a, self.d, other.c),
            dot(self.c, other.b, self.d, other.d),
        )
    }

    pub fn apply(&self, v: (Fq2, Fq2), f: &FieldTower) -> (Fq2, Fq2) {
        (
            f.add(f.mul(self.a, v.0), f.mul(self.b, v.1)),
            f.add(f.mul(self.c, v.0), f.mul(self.d, v.1)),
        )
    }

    pub fn det(&self, f: &FieldTower) -> Fq2 {
        f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c))
    }

    pub fn trace(&self, f: &FieldTower) -> Fq2 {
        f.add(self.a, self.d)
    }

    pub fn inverse(&self, f: &FieldTower) -> Option<Mat2> {
        let di = f.inv(self.det(f))?;
        Some(Mat2::new(
            f.mul(self.d, di),
            f.mul(f.neg(self.b), di),
            f.mul(f.neg(self.c), di),
            f.mul(self.a, di),
        ))
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.a, self.c, self.b, self.d)
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat2::identity()
    }

    /// Spanning vector of `ker(M - 1)` with first nonzero coordinate 1, when the
    /// kernel is exactly one-dimensional.
    pub fn fixed_line(&self, f: &FieldTower) -> Option<(Fq2, Fq2)> {
        let a = f.sub(self.a, Fq2::ONE);
        let d = f.sub(self.d, Fq2::ONE);
        let (b, c) = (self.b, self.c);
        if !f.sub(f.mul(a, d), f.mul(b, c)).is_zero() {
            return None;
        }
        // Rank one: any nonzero row (r0, r1) has kernel spanned by (-r1, r0).
        let row = if !(a.is_zero() && b.is_zero()) {
            (a, b)
        } else if !(c.is_zero() && d.is_zero()) {
            (c, d)
        } else {
            return None;
        };
        let (x, y) = (f.neg(row.1), row.0);
        let lead = if x.is_zero() { y } else { x };
        let li = f.inv(lead)?;
        Some((f.mul(x, li), f.mul(y, li)))
    }
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn decode(mut idx: u32, p: u32, degree: usize) -> Vec<u32> {
    (0..degree)
        .map(|_| {
            let c = idx % p;
            idx /= p;
            c
        })
        .collect()
}

fn times_x(coeffs: &mut [u32], modulus: &[u32], p: u32) {
    let top = *coeffs.last().unwrap();
    for i in (1..coeffs.len()).rev() {
        coeffs[i] = coeffs[i - 1];
    }
    coeffs[0] = 0;
    for (c, &m) in coeffs.iter_mut().zip(modulus) {
        *c = (*c + (p - m) * top) % p;
    }
}

/// The monic degree-`degree` polynomial over `F_p` whose root generates the
/// unit group, smallest when the tuple `(c_0, .., c_{degree-1})` is compared
/// lexicographically.
fn smallest_primitive(p: u32, degree: usize) -> Vec<u32> {
    let target = p.pow(degree as u32) - 1;
    for candidate in 0..p.pow(degree as u32) {
        // c_0 is the most significant digit of the enumeration.
        let mut modulus = decode(candidate, p, degree);
        modulus.reverse();
        if modulus[0] == 0 {
            continue;
        }
        let mut coeffs = vec![0u32; degree];
        coeffs[0] = 1;
        let mut order = 0;
        loop {
            times_x(&mut coeffs, &modulus, p);
            order += 1;
            if coeffs[0] == 1 && coeffs[1..].iter().all(|&c| c == 0) {
                break;
            }
            if order > target {
                break;
            }
        }
        if order == target {
            return modulus;
        }
    }
    unreachable!("a primitive polynomial exists in every degree")
}
