use std::cmp::Ordering;

use super::{Exponent, LcError, TruncationContext};

/// A truncated Levi-Civita number `Σ c_q ε^q`.
///
/// Terms are kept sorted by strictly ascending exponent with no zero
/// coefficients; the empty list is zero. `known_through` records the largest
/// exponent up to which every coefficient is determined. Terms above it were
/// lost to truncation somewhere upstream and are dropped rather than carried
/// as garbage. `None` means no truncation has touched the number.
#[derive(Debug, Clone, Default)]
pub struct LcNumber {
    terms: Vec<(Exponent, f64)>,
    known_through: Option<Exponent>,
}

/// Value equality of the retained series; precision bookkeeping is ignored.
impl PartialEq for LcNumber {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

fn min_known(a: Option<Exponent>, b: Option<Exponent>) -> Option<Exponent> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Sorts by exponent and merges equal exponents, dropping exact zeros.
fn normalize(mut raw: Vec<(Exponent, f64)>) -> Vec<(Exponent, f64)> {
    raw.sort_by_key(|t| t.0);
    let mut out: Vec<(Exponent, f64)> = Vec::with_capacity(raw.len());
    for (e, c) in raw {
        match out.last_mut() {
            Some(last) if last.0 == e => last.1 += c,
            _ => out.push((e, c)),
        }
    }
    out.retain(|&(_, c)| c != 0.0);
    out
}

impl LcNumber {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1.0, Exponent::ZERO)
    }

    /// The generator ε: positive and below every positive real.
    pub fn epsilon() -> Self {
        Self::monomial(1.0, Exponent::ONE)
    }

    pub fn from_real(r: f64) -> Result<Self, LcError> {
        if !r.is_finite() {
            return Err(LcError::NonFinite(r));
        }
        Ok(Self::monomial(r, Exponent::ZERO))
    }

    /// `coeff · ε^exponent`; a zero coefficient yields zero.
    pub fn monomial(coeff: f64, exponent: Exponent) -> Self {
        let terms = if coeff == 0.0 { Vec::new() } else { vec![(exponent, coeff)] };
        Self { terms, known_through: None }
    }

    /// Builds a number from arbitrary `(exponent, coefficient)` pairs.
    pub fn from_terms<I>(terms: I) -> Result<Self, LcError>
    where
        I: IntoIterator<Item = (Exponent, f64)>,
    {
        let raw: Vec<_> = terms.into_iter().collect();
        if let Some(&(_, c)) = raw.iter().find(|(_, c)| !c.is_finite()) {
            return Err(LcError::NonFinite(c));
        }
        Ok(Self { terms: normalize(raw), known_through: None })
    }

    pub(crate) fn with_known(mut self, known: Option<Exponent>) -> Self {
        self.known_through = min_known(self.known_through, known);
        if let Some(k) = self.known_through {
            self.terms.retain(|&(e, _)| e <= k);
        }
        self
    }

    pub fn terms(&self) -> &[(Exponent, f64)] {
        &self.terms
    }

    pub fn known_through(&self) -> Option<Exponent> {
        self.known_through
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.known_through.is_none()
    }

    pub fn leading_exponent(&self) -> Option<Exponent> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coefficient(&self) -> Option<f64> {
        self.terms.first().map(|t| t.1)
    }

    /// Coefficient of `ε^e` (zero when absent).
    pub fn coefficient(&self, e: Exponent) -> f64 {
        self.terms
            .binary_search_by(|t| t.0.cmp(&e))
            .map(|i| self.terms[i].1)
            .unwrap_or(0.0)
    }

    /// Order of magnitude used for precision propagation: the leading
    /// exponent, or for a zero that is only known to some order, that order.
    fn order(&self) -> Option<Exponent> {
        self.leading_exponent().or(self.known_through)
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|&(e, c)| (e, -c)).collect(),
            known_through: self.known_through,
        }
    }

    /// Multiplies every coefficient by a real; exact up to rounding.
    pub fn scale(&self, k: f64) -> Self {
        if k == 0.0 {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|&(e, c)| (e, c * k))
            .filter(|&(_, c)| c != 0.0)
            .collect();
        Self { terms, known_through: self.known_through }
    }

    /// Multiplies by `ε^shift`.
    pub fn shift(&self, shift: Exponent) -> Self {
        Self {
            terms: self.terms.iter().map(|&(e, c)| (e + shift, c)).collect(),
            known_through: self.known_through.map(|k| k + shift),
        }
    }

    /// Difference without truncation; used for ordering and proximity.
    fn raw_sub(&self, other: &Self) -> Self {
        let raw = self
            .terms
            .iter()
            .copied()
            .chain(other.terms.iter().map(|&(e, c)| (e, -c)))
            .collect();
        Self { terms: normalize(raw), known_through: None }
            .with_known(min_known(self.known_through, other.known_through))
    }

    pub fn add(&self, other: &Self, ctx: &TruncationContext) -> Self {
        let raw = self.terms.iter().chain(other.terms.iter()).copied().collect();
        let sum = Self { terms: normalize(raw), known_through: None }
            .with_known(min_known(self.known_through, other.known_through));
        ctx.apply(sum)
    }

    pub fn sub(&self, other: &Self, ctx: &TruncationContext) -> Self {
        self.add(&other.neg(), ctx)
    }

    /// Cauchy product, discarding every exponent above `limit`.
    pub(crate) fn mul_limited(&self, other: &Self, limit: Option<Exponent>) -> Self {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero();
        }
        let (la, lb) = match (self.order(), other.order()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Self::zero(),
        };
        let known = min_known(
            min_known(self.known_through.map(|k| k + lb), other.known_through.map(|k| k + la)),
            limit,
        );
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(ea, ca) in &self.terms {
            for &(eb, cb) in &other.terms {
                let e = ea + eb;
                if known.is_none_or(|k| e <= k) {
                    raw.push((e, ca * cb));
                }
            }
        }
        Self { terms: normalize(raw), known_through: None }.with_known(known)
    }

    pub fn mul(&self, other: &Self, ctx: &TruncationContext) -> Self {
        let limit = match (self.leading_exponent(), other.leading_exponent()) {
            (Some(a), Some(b)) => Some(a + b + ctx.exponent_window()),
            _ => None,
        };
        ctx.apply(self.mul_limited(other, limit))
    }

    /// Splits a nonzero number as `c · ε^q · (1 + u)` with `u` infinitesimal.
    fn split_leading(&self) -> Option<(f64, Exponent, Self)> {
        let &(q, c) = self.terms.first()?;
        let rest = self.terms[1..].iter().map(|&(e, k)| (e - q, k / c)).collect();
        let u = Self { terms: rest, known_through: self.known_through.map(|k| k - q) };
        Some((c, q, u))
    }

    pub fn inverse(&self, ctx: &TruncationContext) -> Result<Self, LcError> {
        let (c, q, u) = self.split_leading().ok_or(LcError::DivisionByZero)?;
        let series = power_series(&u, ctx.exponent_window(), |k| if k % 2 == 0 { 1.0 } else { -1.0 });
        Ok(ctx.apply(series.scale(1.0 / c).shift(-q)))
    }

    pub fn div(&self, other: &Self, ctx: &TruncationContext) -> Result<Self, LcError> {
        let inv = other.inverse(ctx)?;
        Ok(self.mul(&inv, ctx))
    }

    /// Square root via the binomial series; `sqrt(0) = 0`.
    pub fn sqrt(&self, ctx: &TruncationContext) -> Result<Self, LcError> {
        if self.is_zero() {
            return Ok(Self { terms: Vec::new(), known_through: self.known_through.map(Exponent::halve) });
        }
        let (c, q, u) = self.split_leading().expect("nonzero");
        if c <= 0.0 {
            return Err(LcError::Domain(format!("square root of a number with leading coefficient {c}")));
        }
        let series = power_series(&u, ctx.exponent_window(), |k| binomial(0.5, k));
        Ok(ctx.apply(series.scale(c.sqrt()).shift(q.halve())))
    }

    /// Integer power by repeated squaring; negative powers go through `inverse`.
    pub fn powi(&self, n: i64, ctx: &TruncationContext) -> Result<Self, LcError> {
        if n < 0 {
            return self.inverse(ctx)?.powi(-n, ctx);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, ctx);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base, ctx);
            }
        }
        Ok(acc)
    }

    /// Rational power. Non-integer powers need a positive leading coefficient.
    pub fn powr(&self, r: Exponent, ctx: &TruncationContext) -> Result<Self, LcError> {
        if r.is_integer() {
            return self.powi(r.numerator(), ctx);
        }
        if self.is_zero() {
            return if r.is_positive() {
                Ok(Self { terms: Vec::new(), known_through: self.known_through.map(|k| k * r) })
            } else {
                Err(LcError::DivisionByZero)
            };
        }
        let (c, q, u) = self.split_leading().expect("nonzero");
        if c <= 0.0 {
            return Err(LcError::Domain(format!("non-integer power {r} of a negative number")));
        }
        let rf = r.to_f64();
        let series = power_series(&u, ctx.exponent_window(), |k| binomial(rf, k));
        Ok(ctx.apply(series.scale(c.powf(rf)).shift(q * r)))
    }

    /// Sign of the leading coefficient; zero is `Equal`.
    pub fn signum(&self) -> Ordering {
        match self.leading_coefficient() {
            Some(c) if c > 0.0 => Ordering::Greater,
            Some(_) => Ordering::Less,
            None => Ordering::Equal,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less { self.neg() } else { self.clone() }
    }

    /// Total order: `a > b` iff the leading coefficient of `a - b` is positive.
    pub fn compare(&self, other: &Self) -> Ordering {
        self.raw_sub(other).signum()
    }

    pub fn is_infinitesimal(&self) -> bool {
        self.leading_exponent().is_none_or(|e| e.is_positive())
    }

    pub fn is_finite(&self) -> bool {
        self.leading_exponent().is_none_or(|e| !e.is_negative())
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    /// `a ≈ b`: the difference is infinitesimal.
    pub fn infinitely_close(&self, other: &Self) -> bool {
        self.raw_sub(other).is_infinitesimal()
    }

    /// Rounds a finite number to the real infinitely close to it.
    pub fn standard_part(&self) -> Result<f64, LcError> {
        if self.is_infinite() {
            return Err(LcError::InfiniteNumber);
        }
        Ok(self.coefficient(Exponent::ZERO))
    }

    /// The number with its standard part removed.
    pub fn infinitesimal_part(&self) -> Self {
        Self {
            terms: self.terms.iter().copied().filter(|t| !t.0.is_zero()).collect(),
            known_through: self.known_through,
        }
    }

    /// Termwise `d/dε`.
    pub fn derivative_eps(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|t| !t.0.is_zero())
            .map(|&(e, c)| (e - Exponent::ONE, c * e.to_f64()))
            .collect();
        Self { terms, known_through: self.known_through.map(|k| k - Exponent::ONE) }
    }

    /// Termwise antiderivative in ε with zero constant of integration.
    pub fn integral_eps(&self) -> Result<Self, LcError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(e, c) in &self.terms {
            let next = e + Exponent::ONE;
            if next.is_zero() {
                return Err(LcError::Domain("antiderivative of ε^(-1) is not a power series".into()));
            }
            terms.push((next, c / next.to_f64()));
        }
        Ok(Self { terms, known_through: self.known_through.map(|k| k + Exponent::ONE) })
    }
}

/// `Σ_{k≥0} coeff(k) · u^k` for infinitesimal `u`, dropping exponents above `limit`.
pub(crate) fn power_series(u: &LcNumber, limit: Exponent, coeff: impl Fn(usize) -> f64) -> LcNumber {
    debug_assert!(u.is_infinitesimal());
    let mut acc_terms = vec![(Exponent::ZERO, coeff(0))];
    if u.is_exact_zero() {
        return LcNumber::monomial(coeff(0), Exponent::ZERO);
    }
    let mut known = min_known(u.known_through, Some(limit));
    let mut power = LcNumber::one();
    // A nonzero u with positive lead makes `power` climb until it leaves the window.
    for k in 1.. {
        power = power.mul_limited(u, Some(limit));
        known = min_known(known, power.known_through);
        if power.is_zero() {
            break;
        }
        let ck = coeff(k);
        if ck != 0.0 {
            acc_terms.extend(power.terms.iter().map(|&(e, c)| (e, c * ck)));
        }
    }
    LcNumber { terms: normalize(acc_terms), known_through: None }.with_known(known)
}

/// Generalized binomial coefficient `C(r, k)`.
pub(crate) fn binomial(r: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (r - j as f64) / (j as f64 + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> TruncationContext {
        TruncationContext::default()
    }

    fn eps() -> LcNumber {
        LcNumber::epsilon()
    }

    fn real(r: f64) -> LcNumber {
        LcNumber::from_real(r).unwrap()
    }

    #[test]
    fn embedding() {
        assert_eq!(real(3.0).terms(), &[(Exponent::ZERO, 3.0)]);
        assert!(real(0.0).is_zero());
        assert_eq!(real(-2.5).terms(), &[(Exponent::ZERO, -2.5)]);
        assert!(matches!(LcNumber::from_real(f64::NAN), Err(LcError::NonFinite(_))));
        assert!(LcNumber::from_real(f64::INFINITY).is_err());
    }

    #[test]
    fn epsilon_is_positive_infinitesimal() {
        assert_eq!(eps().terms(), &[(Exponent::ONE, 1.0)]);
        assert!(eps().is_infinitesimal());
        assert_eq!(eps().compare(&real(1e-300)), Ordering::Less);
        assert_eq!(eps().compare(&LcNumber::zero()), Ordering::Greater);
    }

    #[test]
    fn ring_identities() {
        let c = ctx();
        let a = real(1.0).add(&eps(), &c);
        let b = real(1.0).sub(&eps(), &c);
        let p = a.mul(&b, &c);
        assert_eq!(p.terms(), &[(Exponent::ZERO, 1.0), (Exponent::integer(2), -1.0)]);
        assert!(eps().add(&eps().neg(), &c).is_zero());
        let half = LcNumber::monomial(1.0, Exponent::new(1, 2));
        assert_eq!(half.mul(&half, &c), eps());
    }

    #[test]
    fn inverse_cases() {
        let c = ctx();
        assert_eq!(eps().inverse(&c).unwrap().terms(), &[(Exponent::integer(-1), 1.0)]);
        let inv = real(1.0).add(&eps(), &c).inverse(&c).unwrap();
        for k in 0..=8 {
            let expect = if k % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(inv.coefficient(Exponent::integer(k)), expect, "order {k}");
        }
        assert_eq!(inv.terms().len(), 9);
        let two = real(2.0).add(&eps(), &c);
        let one = two.mul(&two.inverse(&c).unwrap(), &c);
        assert_eq!(one.standard_part().unwrap(), 1.0);
        assert!(matches!(LcNumber::zero().inverse(&c), Err(LcError::DivisionByZero)));
    }

    #[test]
    fn sqrt_cases() {
        let c = ctx();
        let e2 = eps().mul(&eps(), &c);
        assert_eq!(e2.sqrt(&c).unwrap(), eps());
        assert_eq!(eps().sqrt(&c).unwrap().terms(), &[(Exponent::new(1, 2), 1.0)]);
        assert!(real(-1.0).sqrt(&c).is_err());
        assert!(eps().neg().sqrt(&c).is_err());
    }

    #[test]
    fn sqrt_binomial_oracle() {
        // 2·sqrt(1+ε) = 2 Σ C(1/2, k) ε^k; C(1/2,k) built by the product formula
        // independently of the implementation's helper.
        let c = ctx();
        let four = real(4.0).add(&eps().scale(4.0), &c);
        let r = four.sqrt(&c).unwrap();
        let mut coeff = 1.0_f64;
        for k in 0..=8 {
            if k > 0 {
                coeff *= (0.5 - (k - 1) as f64) / k as f64;
            }
            let got = r.coefficient(Exponent::integer(k));
            assert!((got - 2.0 * coeff).abs() <= 1e-15 * (2.0 * coeff).abs().max(1e-300), "k={k}: {got} vs {}", 2.0 * coeff);
        }
        assert_eq!(r.coefficient(Exponent::ONE), 1.0);
        assert_eq!(r.coefficient(Exponent::integer(2)), -0.25);
    }

    #[test]
    fn compare_cases() {
        let c = ctx();
        assert_eq!(real(1.0).sub(&eps(), &c).compare(&real(1.0)), Ordering::Less);
        assert_eq!(eps().inverse(&c).unwrap().compare(&real(1e100)), Ordering::Greater);
        assert_eq!(real(2.0).compare(&real(2.0)), Ordering::Equal);
    }

    #[test]
    fn standard_part_cases() {
        let c = ctx();
        let x = real(3.0).add(&eps().scale(5.0), &c).sub(&eps().mul(&eps(), &c), &c);
        assert_eq!(x.standard_part().unwrap(), 3.0);
        assert_eq!(eps().standard_part().unwrap(), 0.0);
        let big = eps().inverse(&c).unwrap();
        assert_eq!(big.standard_part(), Err(LcError::InfiniteNumber));
        assert!(big.is_infinite());
    }

    #[test]
    fn proximity() {
        let c = ctx();
        assert!(real(1.0).add(&eps(), &c).infinitely_close(&real(1.0)));
        assert!(eps().infinitely_close(&eps().mul(&eps(), &c)));
        assert!(!real(1.0).infinitely_close(&real(1.0 + 1e-15)));
    }

    #[test]
    fn window_truncation_sets_precision() {
        let c = TruncationContext::new(32, Exponent::integer(2)).unwrap();
        let inv = real(1.0).sub(&eps(), &c).inverse(&c).unwrap();
        assert_eq!(inv.terms().len(), 3);
        assert_eq!(inv.known_through(), Some(Exponent::integer(2)));
        // (inv - 1)^2 = (ε + ε² + …)²; only ε², ε³ are trustworthy at this precision.
        let u = inv.sub(&real(1.0), &c);
        let sq = u.mul(&u, &c);
        assert_eq!(sq.terms(), &[(Exponent::integer(2), 1.0), (Exponent::integer(3), 2.0)]);
    }

    #[test]
    fn term_budget() {
        let c = TruncationContext::new(3, Exponent::integer(8)).unwrap();
        let inv = real(1.0).add(&eps(), &c).inverse(&c).unwrap();
        assert_eq!(inv.terms().len(), 3);
        assert_eq!(inv.known_through(), Some(Exponent::integer(2)));
    }

    #[test]
    fn formal_calculus_in_eps() {
        let c = ctx();
        let x = real(2.0).add(&eps().scale(3.0), &c).add(&eps().powi(2, &c).unwrap().scale(5.0), &c);
        let d = x.derivative_eps();
        assert_eq!(d.terms(), &[(Exponent::ZERO, 3.0), (Exponent::ONE, 10.0)]);
        let i = d.integral_eps().unwrap();
        assert_eq!(i, x.infinitesimal_part());
        assert!(eps().inverse(&c).unwrap().integral_eps().is_err());
    }

    #[test]
    fn rational_powers() {
        let c = ctx();
        let e = eps();
        let r = e.powr(Exponent::new(3, 2), &c).unwrap();
        assert_eq!(r.terms(), &[(Exponent::new(3, 2), 1.0)]);
        let cube = real(1.0).add(&e, &c).powi(3, &c).unwrap();
        assert_eq!(cube.terms().iter().map(|t| t.1).collect::<Vec<_>>(), vec![1.0, 3.0, 3.0, 1.0]);
        assert!(real(-8.0).powr(Exponent::new(1, 3), &c).is_err());
        assert!(LcNumber::zero().powr(Exponent::new(-1, 2), &c).is_err());
    }
}
