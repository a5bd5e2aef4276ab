use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex};

use rand::Rng;

use crate::error::{Error, Result};

/// Largest supported field order. Constructions beyond it are rejected.
pub const MAX_ORDER: u64 = 1 << 31;

/// Fields up to this order get exp/log tables for multiplication.
const TABLE_LIMIT: u64 = 1 << 20;

/// A finite field `F_{p^d}`, represented as `F_p[x]/(modulus)`.
///
/// Handles are cheap to clone. Every field is interned in a process-wide
/// registry keyed by `(p, modulus)`, so two constructions with the same
/// modulus return the same field and the same identity token.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

struct FieldInner {
    id: u32,
    p: u32,
    degree: u32,
    order: u64,
    /// Monic modulus, constant term first. `[0, 1]` for prime fields.
    modulus: Vec<u32>,
    tables: Option<LogTables>,
}

struct LogTables {
    /// `exp[i] = g^i`, stored twice over so sums of logs need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// One field element.
///
/// The coefficient vector `(c_0, ..., c_{d-1})` in the power basis of the
/// modulus is packed as the integer `sum c_i p^i`, which is also the
/// canonical residue encoding used for hashing and deduplication.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Elem {
    field: u32,
    value: u32,
}

impl Elem {
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Identity token of the owning field.
    pub fn field_id(self) -> u32 {
        self.field
    }

    /// Packed residue encoding `sum c_i p^i`.
    pub fn raw(self) -> u32 {
        self.value
    }
}

#[derive(Default)]
struct Registry {
    by_modulus: HashMap<(u32, Vec<u32>), Field>,
    canonical: HashMap<(u32, u32), Field>,
    by_id: Vec<Field>,
}

static REGISTRY: LazyLock<Mutex<Registry>> = LazyLock::new(Default::default);

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
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

/// `p^d`, or `None` when it exceeds [`MAX_ORDER`].
pub(crate) fn checked_order(p: u32, d: u32) -> Option<u64> {
    let mut q: u64 = 1;
    for _ in 0..d {
        q = q.checked_mul(p as u64)?;
        if q > MAX_ORDER {
            return None;
        }
    }
    Some(q)
}

fn intern(p: u32, modulus: Vec<u32>) -> Result<Field> {
    let degree = (modulus.len() - 1) as u32;
    let order = checked_order(p, degree)
        .ok_or_else(|| Error::Overflow(format!("{p}^{degree} exceeds {MAX_ORDER}")))?;
    let key = (p, modulus.clone());
    if let Some(f) = REGISTRY.lock().unwrap().by_modulus.get(&key) {
        return Ok(f.clone());
    }
    // Tables are built outside the lock; a racing thread may build the same
    // field, in which case the first one registered wins.
    let mut inner = FieldInner {
        id: u32::MAX,
        p,
        degree,
        order,
        modulus,
        tables: None,
    };
    inner.tables = inner.build_tables();
    let mut reg = REGISTRY.lock().unwrap();
    if let Some(f) = reg.by_modulus.get(&key) {
        return Ok(f.clone());
    }
    inner.id = reg.by_id.len() as u32;
    let field = Field(Arc::new(inner));
    reg.by_id.push(field.clone());
    reg.by_modulus.insert(key, field.clone());
    Ok(field)
}

impl FieldInner {
    fn digits(&self, mut v: u32, out: &mut [u64; 32]) {
        for slot in out.iter_mut().take(self.degree as usize) {
            *slot = (v % self.p) as u64;
            v /= self.p;
        }
    }

    fn pack(&self, digits: &[u64]) -> u32 {
        let mut v: u64 = 0;
        for &c in digits[..self.degree as usize].iter().rev() {
            v = v * self.p as u64 + c;
        }
        v as u32
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.degree == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let d = self.degree as usize;
        let (mut x, mut y) = ([0u64; 32], [0u64; 32]);
        self.digits(a, &mut x);
        self.digits(b, &mut y);
        let mut prod = [0u64; 64];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                let m = self.modulus[j] as u64;
                prod[i - d + j] = (prod[i - d + j] + c * ((p - m) % p)) % p;
            }
        }
        self.pack(&prod)
    }

    fn pow_slow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, a);
            }
            a = self.mul_slow(a, a);
            e >>= 1;
        }
        acc
    }

    fn build_tables(&self) -> Option<LogTables> {
        if self.order > TABLE_LIMIT || self.order < 3 {
            return None;
        }
        let n = self.order - 1;
        let primes = prime_factors(n);
        let g = (1..self.order as u32)
            .find(|&g| primes.iter().all(|&r| self.pow_slow(g, n / r) != 1))?;
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; self.order as usize];
        let mut cur = 1u32;
        for i in 0..n as usize {
            exp[i] = cur;
            exp[i + n as usize] = cur;
            log[cur as usize] = i as u32;
            cur = self.mul_slow(cur, g);
        }
        Some(LogTables { exp, log })
    }
}

/// Builds the prime field `F_p`.
pub fn make_prime_field(p: u64) -> Result<Field> {
    if p >= MAX_ORDER {
        return Err(Error::Overflow(format!("prime {p} exceeds {MAX_ORDER}")));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    intern(p as u32, vec![0, 1])
}

impl Field {
    /// The canonical field of order `p^d`: the prime field for `d = 1`, and
    /// otherwise the extension by the smallest monic irreducible of degree `d`.
    pub fn galois(p: u64, d: u32) -> Result<Field> {
        if d == 0 {
            return Err(Error::InvalidArgument(
                "extension degree must be positive".into(),
            ));
        }
        if p >= MAX_ORDER || checked_order(p as u32, d).is_none() {
            return Err(Error::Overflow(format!("{p}^{d} exceeds {MAX_ORDER}")));
        }
        if let Some(f) = REGISTRY.lock().unwrap().canonical.get(&(p as u32, d)) {
            return Ok(f.clone());
        }
        let base = make_prime_field(p)?;
        let field = if d == 1 {
            base
        } else {
            let modulus = super::factor::smallest_irreducible(&base, d)?;
            super::make_extension(&base, &modulus)?
        };
        REGISTRY
            .lock()
            .unwrap()
            .canonical
            .insert((p as u32, d), field.clone());
        Ok(field)
    }

    /// The canonical field with `q` elements.
    pub fn of_order(q: u64) -> Result<Field> {
        if q < 2 {
            return Err(Error::InvalidOrder(q));
        }
        let primes = prime_factors(q);
        if primes.len() != 1 {
            return Err(Error::InvalidOrder(q));
        }
        let p = primes[0];
        let mut d = 0;
        let mut r = q;
        while r > 1 {
            r /= p;
            d += 1;
        }
        Field::galois(p, d)
    }

    /// Looks up a field by its identity token.
    pub fn from_id(id: u32) -> Option<Field> {
        REGISTRY.lock().unwrap().by_id.get(id as usize).cloned()
    }

    pub(crate) fn from_modulus(p: u32, modulus: Vec<u32>) -> Result<Field> {
        intern(p, modulus)
    }

    pub fn id(&self) -> u32 {
        self.0.id
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.degree == 1
    }

    /// Coefficients of the defining modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Elem {
        Elem {
            field: self.0.id,
            value: 0,
        }
    }

    pub fn one(&self) -> Elem {
        Elem {
            field: self.0.id,
            value: 1,
        }
    }

    /// The class of `x` in `F_p[x]/(modulus)`. For prime fields this is 0.
    pub fn generator(&self) -> Elem {
        if self.0.degree == 1 {
            self.zero()
        } else {
            Elem {
                field: self.0.id,
                value: self.0.p,
            }
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        let p = self.0.p as i64;
        Elem {
            field: self.0.id,
            value: n.rem_euclid(p) as u32,
        }
    }

    /// Builds an element from its coefficient vector. Missing trailing
    /// coefficients are zero; residues outside `[0, p)` are rejected.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem> {
        if coeffs.len() > self.0.degree as usize {
            return Err(Error::InvalidElement(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.0.degree
            )));
        }
        let mut digits = [0u64; 32];
        for (i, &c) in coeffs.iter().enumerate() {
            if c >= self.0.p as u64 {
                return Err(Error::InvalidElement(format!(
                    "residue {c} out of range for characteristic {}",
                    self.0.p
                )));
            }
            digits[i] = c;
        }
        Ok(Elem {
            field: self.0.id,
            value: self.0.pack(&digits),
        })
    }

    /// Element with packed encoding `raw`, which must be below the order.
    pub fn from_raw(&self, raw: u64) -> Result<Elem> {
        if raw >= self.0.order {
            return Err(Error::InvalidElement(format!(
                "encoding {raw} >= order {}",
                self.0.order
            )));
        }
        Ok(Elem {
            field: self.0.id,
            value: raw as u32,
        })
    }

    /// Coefficient vector of `a`, constant term first, length = degree.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let mut digits = [0u64; 32];
        self.0.digits(a.value, &mut digits);
        digits[..self.0.degree as usize]
            .iter()
            .map(|&c| c as u32)
            .collect()
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.field == self.0.id
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        let id = self.0.id;
        (0..self.0.order as u32).map(move |value| Elem { field: id, value })
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        Elem {
            field: self.0.id,
            value: rng.gen_range(0..self.0.order) as u32,
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        Elem {
            field: self.0.id,
            value: rng.gen_range(1..self.0.order) as u32,
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(a.field == self.0.id && b.field == self.0.id);
        let p = self.0.p;
        let value = if p == 2 {
            a.value ^ b.value
        } else if self.0.degree == 1 {
            ((a.value as u64 + b.value as u64) % p as u64) as u32
        } else {
            let (mut x, mut y) = (a.value, b.value);
            let (mut r, mut pw) = (0u64, 1u64);
            for _ in 0..self.0.degree {
                r += ((x % p + y % p) % p) as u64 * pw;
                pw *= p as u64;
                x /= p;
                y /= p;
            }
            r as u32
        };
        Elem {
            field: self.0.id,
            value,
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        debug_assert!(a.field == self.0.id);
        let p = self.0.p;
        let value = if p == 2 {
            a.value
        } else if self.0.degree == 1 {
            (p - a.value) % p
        } else {
            let mut x = a.value;
            let (mut r, mut pw) = (0u64, 1u64);
            for _ in 0..self.0.degree {
                r += ((p - x % p) % p) as u64 * pw;
                pw *= p as u64;
                x /= p;
            }
            r as u32
        };
        Elem {
            field: self.0.id,
            value,
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(a.field == self.0.id && b.field == self.0.id);
        if a.value == 0 || b.value == 0 {
            return self.zero();
        }
        let value = match &self.0.tables {
            Some(t) => t.exp[(t.log[a.value as usize] + t.log[b.value as usize]) as usize],
            None => self.0.mul_slow(a.value, b.value),
        };
        Elem {
            field: self.0.id,
            value,
        }
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        debug_assert!(a.field == self.0.id);
        if e == 0 {
            return self.one();
        }
        if a.value == 0 {
            return self.zero();
        }
        if let Some(t) = &self.0.tables {
            let n = self.0.order - 1;
            let l = (t.log[a.value as usize] as u64 * (e % n)) % n;
            return Elem {
                field: self.0.id,
                value: t.exp[l as usize],
            };
        }
        Elem {
            field: self.0.id,
            value: self.0.pow_slow(a.value, e % (self.0.order - 1)),
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if !self.contains(a) {
            return Err(Error::FieldMismatch);
        }
        if a.value == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.0.tables {
            let n = (self.0.order - 1) as u32;
            let l = (n - t.log[a.value as usize]) % n;
            return Ok(Elem {
                field: self.0.id,
                value: t.exp[l as usize],
            });
        }
        Ok(Elem {
            field: self.0.id,
            value: self.0.pow_slow(a.value, self.0.order - 2),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        if !self.contains(a) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.mul(a, self.inv(b)?))
    }

    fn check(&self, a: Elem, b: Elem) -> Result<()> {
        if self.contains(a) && self.contains(b) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.check(a, b)?;
        Ok(self.add(a, b))
    }

    pub fn try_sub(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.check(a, b)?;
        Ok(self.sub(a, b))
    }

    pub fn try_mul(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.check(a, b)?;
        Ok(self.mul(a, b))
    }

    pub fn try_div(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.check(a, b)?;
        self.div(a, b)
    }

    /// `a^(1/p)`, the inverse of the Frobenius map.
    pub fn pth_root(&self, a: Elem) -> Elem {
        let mut r = a;
        for _ in 1..self.0.degree {
            r = self.pow(r, self.0.p as u64);
        }
        r
    }

    /// Renders `a` as a bare residue (prime fields) or a bracketed
    /// coefficient vector.
    pub fn fmt_elem(&self, a: Elem) -> String {
        if self.0.degree == 1 {
            a.value.to_string()
        } else {
            let c: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
            format!("[{}]", c.join(","))
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.degree == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(
                f,
                "F_{}^{} mod {:?}",
                self.0.p, self.0.degree, self.0.modulus
            )
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
