//! Exact field arithmetic: the rationals, prime fields `F_p`, and quotient
//! extensions `F[t]/(m(t))` covering `F_{p^s}` and `Q(ζ_j)`.
//!
//! A [`Field`] is a cheap-to-clone handle; [`Scalar`]s are plain values whose
//! arithmetic is routed through the handle. Every scalar is kept in a unique
//! canonical form, so equality is representational equality.

mod univar;

pub(crate) use univar::UPoly;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

/// Errors arising from field construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension modulus must be monic of degree >= 1")]
    BadModulus,
    #[error("extension modulus is reducible over the base field")]
    ReducibleModulus,
    #[error("cannot certify irreducibility of a degree-{0} modulus over Q; use a cyclotomic or degree <= 3 modulus")]
    UnverifiableModulus(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no element of multiplicative order {0} in this field")]
    NoRootOfUnity(u64),
    #[error("operation requires a finite field")]
    InfiniteField,
    #[error("cannot parse scalar {text:?}: {reason}")]
    ParseScalar { text: String, reason: String },
    #[error("extension towers over a non-prime, non-rational base of characteristic 0 are unsupported")]
    UnsupportedTower,
}

/// Serializable description of a field, independent of any live handle.
///
/// Extension moduli are recorded constant-coefficient first, as canonical
/// scalar text over the base field, with the trailing monic `1` included.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime { p: u64 },
    Extension { base: Box<FieldSpec>, modulus: Vec<String> },
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F{p}"),
            FieldSpec::Extension { base, modulus } => {
                write!(f, "{base}[t]/({})", modulus.join(","))
            }
        }
    }
}

/// One element of a field, in canonical form.
///
/// Rational values are reduced fractions, prime-field values are residues in
/// `[0, p)`, and extension values are coefficient vectors of length exactly
/// `deg(modulus)` over the base field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Prime(u64),
    Ext(Vec<Scalar>),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime(r) => *r == 0,
            Scalar::Ext(v) => v.iter().all(Scalar::is_zero),
        }
    }

    /// Canonical text form: `-3/4`, `2`, `[0,1]` (constant coefficient first).
    pub fn to_text(&self) -> String {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime(r) => r.to_string(),
            Scalar::Ext(v) => {
                let inner: Vec<String> = v.iter().map(Scalar::to_text).collect();
                format!("[{}]", inner.join(","))
            }
        }
    }

    /// Rough bit-size, used as a pivot-selection heuristic over Q.
    pub(crate) fn size_bits(&self) -> u64 {
        match self {
            Scalar::Rational(r) => (r.numer().bits() + r.denom().bits()) as u64,
            Scalar::Prime(_) => 1,
            Scalar::Ext(v) => v.iter().map(Scalar::size_bits).sum(),
        }
    }
}

#[derive(Debug)]
enum FieldRepr {
    Rational,
    Prime { p: u64 },
    Extension { base: Field, modulus: Vec<Scalar>, degree: usize },
}

/// Handle to a validated field. Cloning is cheap and handles are freely
/// shareable between threads.
#[derive(Clone)]
pub struct Field(Arc<FieldRepr>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.spec())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.spec() == other.spec()
    }
}
impl Eq for Field {}

impl Field {
    /// The field of rational numbers.
    pub fn rational() -> Field {
        Field(Arc::new(FieldRepr::Rational))
    }

    /// The prime field `F_p`. Fails if `p` is not prime.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldRepr::Prime { p })))
    }

    /// Quotient extension `base[t]/(modulus)`; `modulus` is given constant
    /// coefficient first and must be monic and irreducible over `base`.
    pub fn extension(base: Field, modulus: Vec<Scalar>) -> Result<Field, FieldError> {
        let degree = modulus.len().checked_sub(1).ok_or(FieldError::BadModulus)?;
        if degree == 0 || modulus.last().map(|c| c != &base.one()).unwrap_or(true) {
            return Err(FieldError::BadModulus);
        }
        check_irreducible(&base, &modulus)?;
        Ok(Field(Arc::new(FieldRepr::Extension { base, modulus, degree })))
    }

    /// The Galois field `F_{p^s}`, built on the deterministic irreducible
    /// polynomial returned by [`find_irreducible`].
    pub fn galois(p: u64, s: usize) -> Result<Field, FieldError> {
        let base = Field::prime(p)?;
        if s == 1 {
            return Ok(base);
        }
        let modulus = find_irreducible(p, s)?;
        Field::extension(base, modulus)
    }

    /// The cyclotomic field `Q[t]/(Φ_j)`.
    pub fn cyclotomic(j: u64) -> Result<Field, FieldError> {
        let q = Field::rational();
        if j <= 1 {
            return Err(FieldError::NoRootOfUnity(j));
        }
        let phi = cyclotomic_polynomial(&q, j);
        Field::extension(q, phi)
    }

    /// Rebuild a handle from its serializable description.
    pub fn from_spec(spec: &FieldSpec) -> Result<Field, FieldError> {
        match spec {
            FieldSpec::Rational => Ok(Field::rational()),
            FieldSpec::Prime { p } => Field::prime(*p),
            FieldSpec::Extension { base, modulus } => {
                let base = Field::from_spec(base)?;
                let coeffs = modulus
                    .iter()
                    .map(|s| base.parse_scalar(s))
                    .collect::<Result<Vec<_>, _>>()?;
                Field::extension(base, coeffs)
            }
        }
    }

    pub fn spec(&self) -> FieldSpec {
        match &*self.0 {
            FieldRepr::Rational => FieldSpec::Rational,
            FieldRepr::Prime { p } => FieldSpec::Prime { p: *p },
            FieldRepr::Extension { base, modulus, .. } => FieldSpec::Extension {
                base: Box::new(base.spec()),
                modulus: modulus.iter().map(Scalar::to_text).collect(),
            },
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldRepr::Rational => 0,
            FieldRepr::Prime { p } => *p,
            FieldRepr::Extension { base, .. } => base.characteristic(),
        }
    }

    /// Number of elements for finite fields, `None` otherwise.
    pub fn cardinality(&self) -> Option<u128> {
        match &*self.0 {
            FieldRepr::Rational => None,
            FieldRepr::Prime { p } => Some(*p as u128),
            FieldRepr::Extension { base, degree, .. } => {
                let b = base.cardinality()?;
                b.checked_pow(*degree as u32)
            }
        }
    }

    /// Residue modulus for prime fields; used by the fast linear algebra path.
    pub fn as_prime(&self) -> Option<u64> {
        match &*self.0 {
            FieldRepr::Prime { p } => Some(*p),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        match &*self.0 {
            FieldRepr::Rational => Scalar::Rational(BigRational::zero()),
            FieldRepr::Prime { .. } => Scalar::Prime(0),
            FieldRepr::Extension { base, degree, .. } => {
                Scalar::Ext(vec![base.zero(); *degree])
            }
        }
    }

    pub fn one(&self) -> Scalar {
        match &*self.0 {
            FieldRepr::Rational => Scalar::Rational(BigRational::one()),
            FieldRepr::Prime { .. } => Scalar::Prime(1),
            FieldRepr::Extension { base, degree, .. } => {
                let mut v = vec![base.zero(); *degree];
                v[0] = base.one();
                Scalar::Ext(v)
            }
        }
    }

    /// The class of `t` in an extension; the identity embedding is used for
    /// degree-0 positions.
    pub fn generator(&self) -> Option<Scalar> {
        match &*self.0 {
            FieldRepr::Extension { base, degree, .. } if *degree >= 2 => {
                let mut v = vec![base.zero(); *degree];
                v[1] = base.one();
                Some(Scalar::Ext(v))
            }
            _ => None,
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match &*self.0 {
            FieldRepr::Rational => Scalar::Rational(BigRational::from(n.clone())),
            FieldRepr::Prime { p } => {
                let m = BigInt::from(*p);
                let mut r = n % &m;
                if r.sign() == Sign::Minus {
                    r += &m;
                }
                let (_, digits) = r.to_u64_digits();
                Scalar::Prime(digits.first().copied().unwrap_or(0))
            }
            FieldRepr::Extension { base, degree, .. } => {
                let mut v = vec![base.zero(); *degree];
                v[0] = base.from_bigint(n);
                Scalar::Ext(v)
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&*self.0, a, b) {
            (FieldRepr::Rational, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x + y)
            }
            (FieldRepr::Prime { p }, Scalar::Prime(x), Scalar::Prime(y)) => {
                let s = x + y;
                Scalar::Prime(if s >= *p { s - p } else { s })
            }
            (FieldRepr::Extension { base, .. }, Scalar::Ext(x), Scalar::Ext(y)) => Scalar::Ext(
                x.iter().zip(y.iter()).map(|(u, v)| base.add(u, v)).collect(),
            ),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (&*self.0, a) {
            (FieldRepr::Rational, Scalar::Rational(x)) => Scalar::Rational(-x),
            (FieldRepr::Prime { p }, Scalar::Prime(x)) => {
                Scalar::Prime(if *x == 0 { 0 } else { p - x })
            }
            (FieldRepr::Extension { base, .. }, Scalar::Ext(x)) => {
                Scalar::Ext(x.iter().map(|u| base.neg(u)).collect())
            }
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&*self.0, a, b) {
            (FieldRepr::Rational, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x * y)
            }
            (FieldRepr::Prime { p }, Scalar::Prime(x), Scalar::Prime(y)) => {
                Scalar::Prime(mulmod(*x, *y, *p))
            }
            (FieldRepr::Extension { base, modulus, degree }, Scalar::Ext(x), Scalar::Ext(y)) => {
                let mut conv = vec![base.zero(); 2 * degree - 1];
                for (i, xi) in x.iter().enumerate() {
                    if xi.is_zero() {
                        continue;
                    }
                    for (j, yj) in y.iter().enumerate() {
                        if yj.is_zero() {
                            continue;
                        }
                        let prod = base.mul(xi, yj);
                        conv[i + j] = base.add(&conv[i + j], &prod);
                    }
                }
                // reduce modulo the monic modulus
                for i in (*degree..conv.len()).rev() {
                    if conv[i].is_zero() {
                        continue;
                    }
                    let c = conv[i].clone();
                    conv[i] = base.zero();
                    for k in 0..*degree {
                        let sub = base.mul(&c, &modulus[k]);
                        conv[i - degree + k] = base.sub(&conv[i - degree + k], &sub);
                    }
                }
                conv.truncate(*degree);
                Scalar::Ext(conv)
            }
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn invert(&self, a: &Scalar) -> Result<Scalar, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match (&*self.0, a) {
            (FieldRepr::Rational, Scalar::Rational(x)) => Ok(Scalar::Rational(x.recip())),
            (FieldRepr::Prime { p }, Scalar::Prime(x)) => Ok(Scalar::Prime(invmod(*x, *p))),
            (FieldRepr::Extension { base, modulus, degree }, Scalar::Ext(x)) => {
                let elem = UPoly::new(base, x.clone());
                let m = UPoly::new(base, modulus.clone());
                let (g, inv) = elem.bezout_inverse(&m);
                if g.degree() != Some(0) {
                    // irreducible modulus makes this unreachable for nonzero a
                    return Err(FieldError::DivisionByZero);
                }
                let lead_inv = base.invert(&g.coeffs[0])?;
                let mut v = inv.coeffs;
                for c in v.iter_mut() {
                    *c = base.mul(c, &lead_inv);
                }
                v.resize(*degree, base.zero());
                Ok(Scalar::Ext(v))
            }
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, FieldError> {
        Ok(self.mul(a, &self.invert(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `binom(n, k)` as a field element, exact in every characteristic
    /// (Lucas reduction in characteristic p, exact integers over Q).
    pub fn binomial(&self, n: u32, k: u32) -> Scalar {
        if k > n {
            return self.zero();
        }
        match self.characteristic() {
            0 => self.from_bigint(&binomial_bigint(n, k)),
            p => {
                let r = binomial_mod_p(n as u64, k as u64, p);
                self.from_i64(r as i64)
            }
        }
    }

    /// The `index`-th element in the canonical enumeration of a finite field:
    /// residues `0..p` for prime fields, base-q digit vectors for extensions.
    pub fn element(&self, index: u128) -> Result<Scalar, FieldError> {
        match &*self.0 {
            FieldRepr::Rational => Err(FieldError::InfiniteField),
            FieldRepr::Prime { p } => {
                debug_assert!(index < *p as u128);
                Ok(Scalar::Prime(index as u64))
            }
            FieldRepr::Extension { base, degree, .. } => {
                let q = base.cardinality().ok_or(FieldError::InfiniteField)?;
                let mut rest = index;
                let mut v = Vec::with_capacity(*degree);
                for _ in 0..*degree {
                    v.push(base.element(rest % q)?);
                    rest /= q;
                }
                Ok(Scalar::Ext(v))
            }
        }
    }

    /// Element of exact multiplicative order `j`, deterministic: the first
    /// such element in the canonical enumeration (finite fields), or a power
    /// of the extension generator in characteristic 0.
    pub fn root_of_unity(&self, j: u64) -> Result<Scalar, FieldError> {
        if j == 0 {
            return Err(FieldError::NoRootOfUnity(j));
        }
        if j == 1 {
            return Ok(self.one());
        }
        if let Some(card) = self.cardinality() {
            if (card - 1) % j as u128 != 0 {
                return Err(FieldError::NoRootOfUnity(j));
            }
            for idx in 1..card {
                let a = self.element(idx)?;
                if self.has_order(&a, j) {
                    return Ok(a);
                }
            }
            return Err(FieldError::NoRootOfUnity(j));
        }
        // characteristic 0
        if j == 2 {
            return Ok(self.neg(&self.one()));
        }
        if let Some(t) = self.generator() {
            if self.has_order(&t, j) {
                return Ok(t);
            }
            // modulus may host a larger cyclotomic order; scan for ord(t)
            const ORDER_SCAN: u64 = 4096;
            let mut pw = t.clone();
            for k in 2..=ORDER_SCAN {
                pw = self.mul(&pw, &t);
                if pw == self.one() {
                    if k % j == 0 {
                        return Ok(self.pow(&t, k / j));
                    }
                    break;
                }
            }
        }
        Err(FieldError::NoRootOfUnity(j))
    }

    fn has_order(&self, a: &Scalar, j: u64) -> bool {
        if a.is_zero() || self.pow(a, j) != self.one() {
            return false;
        }
        prime_factors(j)
            .into_iter()
            .all(|q| self.pow(a, j / q) != self.one())
    }

    /// Parse the canonical scalar text produced by [`Scalar::to_text`].
    /// Integer text is accepted by every field kind.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, FieldError> {
        let text = text.trim();
        let err = |reason: &str| FieldError::ParseScalar {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        if text.starts_with('[') {
            let (base, degree) = match &*self.0 {
                FieldRepr::Extension { base, degree, .. } => (base, *degree),
                _ => return Err(err("bracketed vector in a non-extension field")),
            };
            let inner = text
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| err("unbalanced brackets"))?;
            let mut parts = Vec::new();
            let mut depth = 0usize;
            let mut start = 0usize;
            for (i, ch) in inner.char_indices() {
                match ch {
                    '[' => depth += 1,
                    ']' => depth = depth.saturating_sub(1),
                    ',' if depth == 0 => {
                        parts.push(&inner[start..i]);
                        start = i + 1;
                    }
                    _ => {}
                }
            }
            if !inner.trim().is_empty() {
                parts.push(&inner[start..]);
            }
            if parts.len() > degree {
                return Err(err("too many coefficients for the extension degree"));
            }
            let mut v = parts
                .iter()
                .map(|p| base.parse_scalar(p))
                .collect::<Result<Vec<_>, _>>()?;
            v.resize(degree, base.zero());
            return Ok(Scalar::Ext(v));
        }
        if let Some((n, d)) = text.split_once('/') {
            if self.characteristic() != 0 {
                let n: BigInt = n.trim().parse().map_err(|_| err("bad numerator"))?;
                let d: BigInt = d.trim().parse().map_err(|_| err("bad denominator"))?;
                let dv = self.from_bigint(&d);
                return self.div(&self.from_bigint(&n), &dv);
            }
            let n: BigInt = n.trim().parse().map_err(|_| err("bad numerator"))?;
            let d: BigInt = d.trim().parse().map_err(|_| err("bad denominator"))?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            return Ok(Scalar::Rational(BigRational::new(n, d)));
        }
        let n: BigInt = text.parse().map_err(|_| err("not an integer"))?;
        Ok(self.from_bigint(&n))
    }
}

/// Deterministic monic irreducible of degree `s` over `F_p`: the first hit
/// when non-leading coefficient vectors are scanned in base-`p` counting
/// order (constant coefficient least significant).
pub fn find_irreducible(p: u64, s: usize) -> Result<Vec<Scalar>, FieldError> {
    let base = Field::prime(p)?;
    assert!(s >= 1, "degree must be at least 1");
    let total = (p as u128).pow(s as u32);
    for k in 0..total {
        let mut coeffs = Vec::with_capacity(s + 1);
        let mut rest = k;
        for _ in 0..s {
            coeffs.push(Scalar::Prime((rest % p as u128) as u64));
            rest /= p as u128;
        }
        coeffs.push(base.one());
        if check_irreducible(&base, &coeffs).is_ok() {
            return Ok(coeffs);
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

/// `Φ_j` over the given rational field handle, constant coefficient first.
fn cyclotomic_polynomial(q: &Field, j: u64) -> Vec<Scalar> {
    // Φ_j = (t^j - 1) / ∏_{d | j, d < j} Φ_d
    let mut num = vec![q.neg(&q.one())];
    num.extend(std::iter::repeat(q.zero()).take(j as usize - 1));
    num.push(q.one());
    let mut num = UPoly::new(q, num);
    for d in 1..j {
        if j % d == 0 {
            let phi = UPoly::new(q, cyclotomic_polynomial(q, d));
            let (quot, rem) = num.divmod(&phi);
            debug_assert!(rem.is_zero());
            num = quot;
        }
    }
    num.coeffs
}

fn check_irreducible(base: &Field, modulus: &[Scalar]) -> Result<(), FieldError> {
    let degree = modulus.len() - 1;
    if degree == 1 {
        return Ok(());
    }
    let m = UPoly::new(base, modulus.to_vec());
    if let Some(q) = base.cardinality() {
        // Rabin test: x^(q^degree) == x mod m, and for every prime l | degree
        // gcd(x^(q^(degree/l)) - x, m) is constant.
        let x = UPoly::new(base, vec![base.zero(), base.one()]);
        for l in prime_factors(degree as u64) {
            let e = degree / l as usize;
            let xq = x.frobenius_power(q, e, &m);
            let diff = xq.sub(&x);
            if diff.is_zero() {
                return Err(FieldError::ReducibleModulus);
            }
            let g = diff.gcd(&m);
            if g.degree() != Some(0) {
                return Err(FieldError::ReducibleModulus);
            }
        }
        let xq = x.frobenius_power(q, degree, &m);
        if !xq.sub(&x).rem(&m).is_zero() {
            return Err(FieldError::ReducibleModulus);
        }
        return Ok(());
    }
    if base.spec() != FieldSpec::Rational {
        return Err(FieldError::UnsupportedTower);
    }
    // over Q: squarefree check, then root test (complete for degree <= 3),
    // with cyclotomic polynomials recognized at any degree
    let deriv = m.derivative();
    if m.gcd(&deriv).degree() != Some(0) {
        return Err(FieldError::ReducibleModulus);
    }
    if has_rational_root(base, modulus)? {
        return Err(FieldError::ReducibleModulus);
    }
    if degree <= 3 {
        return Ok(());
    }
    for j in 1..=3 * degree as u64 + 6 {
        if euler_phi(j) == degree as u64 {
            let phi = cyclotomic_polynomial(base, j);
            if phi == modulus {
                return Ok(());
            }
        }
    }
    Err(FieldError::UnverifiableModulus(degree))
}

fn has_rational_root(q: &Field, modulus: &[Scalar]) -> Result<bool, FieldError> {
    // clear denominators to a primitive integer polynomial, then test
    // candidates ± (divisor of constant) / (divisor of leading)
    let mut lcm = BigInt::one();
    for c in modulus {
        if let Scalar::Rational(r) = c {
            lcm = num_integer::lcm(lcm, r.denom().clone());
        }
    }
    let ints: Vec<BigInt> = modulus
        .iter()
        .map(|c| match c {
            Scalar::Rational(r) => (r * BigRational::from(lcm.clone())).to_integer(),
            _ => unreachable!(),
        })
        .collect();
    let a0 = ints
        .iter()
        .find(|c| !c.is_zero())
        .expect("monic polynomial is nonzero")
        .clone();
    let an = ints.last().unwrap().clone();
    let bound = BigInt::from(1_000_000_000_000i64);
    if a0.abs() > bound || an.abs() > bound {
        return Err(FieldError::UnverifiableModulus(modulus.len() - 1));
    }
    let a0 = a0.abs().to_u64_digits().1.first().copied().unwrap_or(0);
    let an = an.abs().to_u64_digits().1.first().copied().unwrap_or(1);
    let m = UPoly::new(q, modulus.to_vec());
    for num in divisors(a0.max(1)) {
        for den in divisors(an.max(1)) {
            for sign in [1i64, -1] {
                let cand = Scalar::Rational(BigRational::new(
                    BigInt::from(sign) * BigInt::from(num),
                    BigInt::from(den),
                ));
                if m.eval(&cand).is_zero() {
                    return Ok(true);
                }
            }
        }
    }
    // x = 0 root means zero constant coefficient
    if modulus[0].is_zero() {
        return Ok(true);
    }
    Ok(false)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin over the full u64 range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn binomial_bigint(n: u32, k: u32) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    BigInt::from(acc)
}

/// `binom(n, k) mod p` via Lucas' theorem.
fn binomial_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        acc = mulmod(acc, binomial_small_mod_p(ni, ki, p), p);
        n /= p;
        k /= p;
    }
    acc
}

fn binomial_small_mod_p(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = mulmod(acc, (n - i) % p, p);
        acc = mulmod(acc, invmod((i + 1) % p, p), p);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.characteristic(), 3);
        assert_eq!(f3.cardinality(), Some(3));
        assert_eq!(f3.add(&f3.from_i64(2), &f3.from_i64(2)), f3.one());
        assert!(Field::prime(6).is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn extension_field_of_nine_elements() {
        // t^2 + 1 has no root in F_3
        let f9 = Field::galois(3, 2).unwrap();
        assert_eq!(f9.cardinality(), Some(9));
        assert_eq!(f9.characteristic(), 3);
        let t = f9.generator().unwrap();
        // t^2 = -1
        assert_eq!(f9.mul(&t, &t), f9.from_i64(-1));
    }

    #[test]
    fn find_irreducible_is_deterministic() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(find_irreducible(3, 1).unwrap(), vec![f3.zero(), f3.one()]);
        assert_eq!(
            find_irreducible(3, 2).unwrap(),
            vec![f3.one(), f3.zero(), f3.one()]
        );
        let f5 = Field::prime(5).unwrap();
        assert_eq!(
            find_irreducible(5, 2).unwrap(),
            vec![f5.from_i64(2), f5.zero(), f5.one()]
        );
    }

    #[test]
    fn reducible_modulus_rejected() {
        let f5 = Field::prime(5).unwrap();
        // t^2 + 1 = (t - 2)(t + 2) over F_5
        let m = vec![f5.one(), f5.zero(), f5.one()];
        assert_eq!(
            Field::extension(f5, m).unwrap_err(),
            FieldError::ReducibleModulus
        );
    }

    #[test]
    fn roots_of_unity() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.root_of_unity(3).unwrap(), f7.from_i64(2));
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.root_of_unity(3), Err(FieldError::NoRootOfUnity(3)));
        let qz3 = Field::cyclotomic(3).unwrap();
        assert_eq!(qz3.root_of_unity(3).unwrap(), qz3.generator().unwrap());
    }

    #[test]
    fn rational_characteristic_zero() {
        let q = Field::rational();
        assert_eq!(q.characteristic(), 0);
        assert_eq!(q.cardinality(), None);
        let half = q.parse_scalar("1/2").unwrap();
        assert_eq!(q.add(&half, &half), q.one());
    }

    #[test]
    fn cyclotomic_polynomials() {
        let q = Field::rational();
        let phi3 = cyclotomic_polynomial(&q, 3);
        assert_eq!(phi3, vec![q.one(), q.one(), q.one()]);
        let phi4 = cyclotomic_polynomial(&q, 4);
        assert_eq!(phi4, vec![q.one(), q.zero(), q.one()]);
        // Φ_5 has degree 4 and is accepted via the cyclotomic recognizer
        assert!(Field::cyclotomic(5).is_ok());
    }

    #[test]
    fn scalar_text_round_trip() {
        let qz3 = Field::cyclotomic(3).unwrap();
        let t = qz3.generator().unwrap();
        let v = qz3.add(&qz3.mul(&t, &qz3.parse_scalar("-2/3").unwrap()), &qz3.one());
        let text = v.to_text();
        assert_eq!(qz3.parse_scalar(&text).unwrap(), v);
    }

    #[test]
    fn binomials_respect_characteristic() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.binomial(3, 2), f3.zero());
        let q = Field::rational();
        assert_eq!(q.binomial(4, 2), q.from_i64(6));
        assert_eq!(q.binomial(2, 3), q.zero());
    }

    #[test]
    fn field_axioms_on_random_triples() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(0x5eed);
        let fields = vec![
            Field::rational(),
            Field::prime(13).unwrap(),
            Field::galois(3, 2).unwrap(),
            Field::cyclotomic(3).unwrap(),
        ];
        for field in &fields {
            for _ in 0..1000 {
                let r = |rng: &mut StdRng| field.from_i64(rng.gen_range(-50..50));
                let (a, b, c) = (r(&mut rng), r(&mut rng), r(&mut rng));
                assert_eq!(field.add(&a, &b), field.add(&b, &a));
                assert_eq!(field.mul(&a, &b), field.mul(&b, &a));
                assert_eq!(
                    field.add(&field.add(&a, &b), &c),
                    field.add(&a, &field.add(&b, &c))
                );
                assert_eq!(
                    field.mul(&field.mul(&a, &b), &c),
                    field.mul(&a, &field.mul(&b, &c))
                );
                assert_eq!(
                    field.mul(&a, &field.add(&b, &c)),
                    field.add(&field.mul(&a, &b), &field.mul(&a, &c))
                );
                if !a.is_zero() {
                    let inv = field.invert(&a).unwrap();
                    assert_eq!(field.mul(&a, &inv), field.one());
                }
            }
        }
    }

    #[test]
    fn extension_cardinality_and_order() {
        let f9 = Field::galois(3, 2).unwrap();
        // multiplicative group is cyclic of order 8
        let g = f9.root_of_unity(8).unwrap();
        let mut pow = g.clone();
        for _ in 1..8 {
            assert_ne!(pow, f9.one());
            pow = f9.mul(&pow, &g);
        }
        assert_eq!(pow, f9.one());
    }
}
