use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::exactfield::Scalar;

/// A monomial in `v_1..v_m`. Ordered by graded reverse lexicographic order
/// with `v_1 > v_2 > ... > v_m`, on internal degree (each `v_i` of degree 1).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u16; 12]>,
}

impl Monomial {
    pub fn one(m: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, m),
        }
    }

    pub fn var(m: usize, i: usize) -> Self {
        let mut x = Self::one(m);
        x.exps[i] = 1;
        x
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
        }
    }

    /// Square-free monomial `prod_{i in vs} v_i`.
    pub fn square_free(m: usize, vs: impl IntoIterator<Item = usize>) -> Self {
        let mut x = Self::one(m);
        for v in vs {
            x.exps[v] = 1;
        }
        x
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    /// Internal degree (sum of exponents).
    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    /// Degree in the cohomological grading, where each `v_i` has degree 2.
    pub fn cohomological_degree(&self) -> usize {
        2 * self.degree()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Largest variable index occurring, if any.
    pub fn last_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut x = self.clone();
        x.exps[i] += 1;
        x
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other).then(|| Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    // smaller exponent in the last differing variable wins
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "v{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Polynomial with exact coefficients; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(m: usize, c: Scalar) -> Self {
        Self::term(Monomial::one(m), c)
    }

    pub fn term(x: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(x, c);
        }
        Polynomial { terms }
    }

    pub fn monomial(x: Monomial) -> Self {
        Self::term(x, Scalar::one())
    }

    /// `sum_i coeffs[i] * v_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let m = coeffs.len();
        let mut p = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(m, i), c.clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, x: &Monomial) -> Scalar {
        self.terms.get(x).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.last_key_value()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    /// Degree if every term has the same internal degree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn add_term(&mut self, x: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(x) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// `self += c * x * p`.
    pub fn add_scaled(&mut self, c: &Scalar, x: &Monomial, p: &Polynomial) {
        for (y, d) in &p.terms {
            self.add_term(x.mul(y), c * d);
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(x.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(x.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(x, d)| (x.clone(), c * d)).collect(),
        }
    }

    pub fn mul_monomial(&self, x: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(y, d)| (x.mul(y), d.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Self::zero();
        for (x, c) in &self.terms {
            out.add_scaled(c, x, other);
        }
        out
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inverse().unwrap()),
            None => Self::zero(),
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Scalar)> {
        self.terms.pop_last()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (x, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_rational() && c.is_negative();
            let mag = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if x.is_one() {
                if mag.is_rational() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            } else if mag.is_one() {
                write!(f, "{x}")?;
            } else if mag.is_rational() {
                write!(f, "{mag}*{x}")?;
            } else {
                write!(f, "({mag})*{x}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
