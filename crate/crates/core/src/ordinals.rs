//! Exact ordinal arithmetic below epsilon-zero in Cantor normal form.
//!
//! An [`Ordinal`] is a finite sum `w^e1*c1 + ... + w^ek*ck` with strictly
//! descending exponents (themselves ordinals) and positive integer
//! coefficients. The empty sum is zero. Every operation keeps values in
//! normal form, so structural equality coincides with value equality.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

/// An ordinal below epsilon-zero, as a normalized CNF term list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    /// `(exponent, coefficient)` pairs, exponents strictly descending, coefficients >= 1.
    terms: Vec<(Ordinal, u64)>,
}

/// Classification of an ordinal by its last CNF term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Zero,
    Successor(Ordinal),
    Limit,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OrdinalError {
    #[error("fundamental sequence requires a limit ordinal, got {0}")]
    NotALimit(Ordinal),
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal { terms: vec![(Self::zero(), n)] }
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::nat(1))
    }

    /// `w^exp`
    pub fn omega_pow(exp: Ordinal) -> Self {
        Ordinal { terms: vec![(exp, 1)] }
    }

    /// `w^exp * coeff`; coeff 0 collapses to zero.
    pub fn omega_pow_mul(exp: Ordinal, coeff: u64) -> Self {
        if coeff == 0 {
            Self::zero()
        } else {
            Ordinal { terms: vec![(exp, coeff)] }
        }
    }

    /// Builds from raw terms, re-sorting and merging so the result is normalized.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Self {
        let mut acc = Self::zero();
        let mut terms = terms;
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        for (e, c) in terms {
            acc = acc.add(&Ordinal::omega_pow_mul(e, c));
        }
        acc
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.len() <= 1 && self.terms.first().map_or(true, |(e, _)| e.is_zero())
    }

    /// The natural number value, when finite.
    pub fn to_nat(&self) -> Option<u64> {
        if self.is_zero() {
            Some(0)
        } else if self.is_finite() {
            Some(self.terms[0].1)
        } else {
            None
        }
    }

    /// Writes `self = lambda + n` with `lambda` limit-or-zero and `n` finite; returns `n`.
    pub fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => *c,
            _ => 0,
        }
    }

    /// The `lambda` of `self = lambda + n`.
    pub fn limit_part(&self) -> Ordinal {
        let mut terms = self.terms.clone();
        if let Some((e, _)) = terms.last() {
            if e.is_zero() {
                terms.pop();
            }
        }
        Ordinal { terms }
    }

    pub fn classify(&self) -> Kind {
        match self.terms.last() {
            None => Kind::Zero,
            Some((e, c)) if e.is_zero() => {
                let mut terms = self.terms.clone();
                if *c == 1 {
                    terms.pop();
                } else {
                    terms.last_mut().unwrap().1 = c - 1;
                }
                Kind::Successor(Ordinal { terms })
            }
            Some(_) => Kind::Limit,
        }
    }

    pub fn is_limit(&self) -> bool {
        matches!(self.classify(), Kind::Limit)
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.classify(), Kind::Successor(_))
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::nat(1))
    }

    pub fn pred(&self) -> Option<Ordinal> {
        match self.classify() {
            Kind::Successor(p) => Some(p),
            _ => None,
        }
    }

    /// Ordinal sum; absorbs the low-order terms of `self` below the lead of `rhs`.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some((lead, lead_c)) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> =
            self.terms.iter().take_while(|(e, _)| e > lead).cloned().collect();
        let mut rest = rhs.terms.iter();
        if let Some((e, c)) = self.terms.get(terms.len()) {
            if e == lead {
                terms.push((e.clone(), c + lead_c));
                rest.next();
            }
        }
        terms.extend(rest.cloned());
        Ordinal { terms }
    }

    /// Ordinal product; left-distributes over addition.
    pub fn mul(&self, rhs: &Ordinal) -> Ordinal {
        if self.is_zero() || rhs.is_zero() {
            return Ordinal::zero();
        }
        let lead_exp = &self.terms[0].0;
        let mut acc = Ordinal::zero();
        for (e, c) in &rhs.terms {
            let piece = if e.is_zero() {
                // self * finite c: scale the leading coefficient, keep the tail
                let mut terms = self.terms.clone();
                terms[0].1 *= c;
                Ordinal { terms }
            } else {
                Ordinal::omega_pow_mul(lead_exp.add(e), *c)
            };
            acc = acc.add(&piece);
        }
        acc
    }

    /// Parity of the finite part: `par(lambda + n) = n mod 2`; limits are even.
    pub fn parity(&self) -> u8 {
        (self.finite_part() % 2) as u8
    }

    /// The `k`-th member of the canonical fundamental sequence of a limit ordinal.
    ///
    /// For `... + w^(b+1)*c` the sequence drops one copy of `w^(b+1)` and
    /// appends `w^b*k`; for a limit exponent it recurses into the exponent.
    pub fn fundamental_seq(&self, k: u64) -> Result<Ordinal, OrdinalError> {
        if !self.is_limit() {
            return Err(OrdinalError::NotALimit(self.clone()));
        }
        let mut terms = self.terms.clone();
        let (last_exp, last_c) = terms.pop().expect("limit ordinal is nonzero");
        let prefix = Ordinal { terms };
        let lowered = Ordinal::omega_pow_mul(last_exp.clone(), last_c - 1);
        let tail = match last_exp.classify() {
            Kind::Zero => unreachable!("limit ordinal has nonzero last exponent"),
            Kind::Successor(b) => Ordinal::omega_pow_mul(b, k),
            Kind::Limit => Ordinal::omega_pow(last_exp.fundamental_seq(k)?),
        };
        Ok(prefix.add(&lowered).add(&tail))
    }

    /// Height of the CNF term tree; bounds structural recursion in tests.
    pub fn height(&self) -> usize {
        1 + self.terms.iter().map(|(e, _)| e.height()).max().unwrap_or(0)
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)) {
                Ordering::Equal => continue,
                ord => {
                    // A higher lead dominates everything after it.
                    return ord;
                }
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
            } else {
                if e.to_nat() == Some(1) {
                    write!(f, "w")?;
                } else if e.is_finite() || e.terms.len() == 1 && e.terms[0].1 == 1 {
                    write!(f, "w^{e}")?;
                } else {
                    write!(f, "w^({e})")?;
                }
                if *c != 1 {
                    write!(f, "*{c}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Serialized form: a bare integer for finite ordinals, otherwise a list of
// `[exponent, coefficient]` pairs with the exponent in the same shape.
impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if let Some(n) = self.to_nat() {
            serializer.serialize_u64(n)
        } else {
            let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
            for (e, c) in &self.terms {
                seq.serialize_element(&(e, c))?;
            }
            seq.end()
        }
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct OrdVisitor;
        impl<'de> Visitor<'de> for OrdVisitor {
            type Value = Ordinal;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a natural number or a list of [exponent, coefficient] pairs")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Ordinal, E> {
                Ok(Ordinal::nat(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Ordinal, E> {
                if v < 0 {
                    Err(E::custom("ordinal cannot be negative"))
                } else {
                    Ok(Ordinal::nat(v as u64))
                }
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Ordinal, A::Error> {
                let mut terms = Vec::new();
                while let Some((e, c)) = seq.next_element::<(Ordinal, u64)>()? {
                    if c == 0 {
                        return Err(de::Error::custom("ordinal term coefficient must be >= 1"));
                    }
                    terms.push((e, c));
                }
                Ok(Ordinal::from_terms(terms))
            }
        }
        deserializer.deserialize_any(OrdVisitor)
    }
}

/// Error position for [`parse_ordinal`], as a byte offset into the input.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("ordinal parse error at byte {at}: {msg}")]
pub struct ParseOrdinalError {
    pub at: usize,
    pub msg: String,
}

/// Parses expressions like `0`, `17`, `w`, `w^w*2+w*3+5`, `w^(w+1)+4`.
///
/// Grammar: sums of products; a product is an atom optionally `*nat`;
/// an atom is `w` (optionally `^atom-or-group`), a natural, or `(expr)`.
pub fn parse_ordinal(input: &str) -> Result<Ordinal, ParseOrdinalError> {
    let mut p = Parser { bytes: input.as_bytes(), pos: 0 };
    p.skip_ws();
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParseOrdinalError {
        ParseOrdinalError { at: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ordinal, ParseOrdinalError> {
        let mut acc = self.product()?;
        loop {
            self.skip_ws();
            if self.eat(b'+') {
                self.skip_ws();
                let rhs = self.product()?;
                acc = acc.add(&rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Ordinal, ParseOrdinalError> {
        let mut acc = self.atom()?;
        loop {
            self.skip_ws();
            if self.eat(b'*') {
                self.skip_ws();
                let rhs = self.atom()?;
                acc = acc.mul(&rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn atom(&mut self) -> Result<Ordinal, ParseOrdinalError> {
        self.skip_ws();
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                // accept an omega glyph spelled in ASCII only; '^' binds tighter than '*'
                if self.eat(b'^') {
                    self.skip_ws();
                    let e = self.atom()?;
                    Ok(Ordinal::omega_pow(e))
                } else {
                    Ok(Ordinal::omega())
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(b) if b.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|b| b.is_ascii_digit()) {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                let n: u64 = text
                    .parse()
                    .map_err(|_| ParseOrdinalError { at: start, msg: "number too large".into() })?;
                Ok(Ordinal::nat(n))
            }
            _ => Err(self.err("expected 'w', a natural number, or '('")),
        }
    }
}

impl std::str::FromStr for Ordinal {
    type Err = ParseOrdinalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ordinal(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        parse_ordinal(s).unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(o("w").cmp(&o("w")), Ordering::Equal);
        assert_eq!(o("w+1").cmp(&o("w*2")), Ordering::Less);
        assert_eq!(o("w^w").cmp(&o("w^2*5+3")), Ordering::Greater);
    }

    #[test]
    fn add_examples() {
        assert_eq!(Ordinal::nat(1).add(&o("w")), o("w"));
        assert_eq!(o("w").add(&Ordinal::nat(1)), o("w+1"));
        // frozen from the textbook CNF addition rule: drop absorbed tail, merge lead
        assert_eq!(o("w*2+3").add(&o("w+1")), o("w*3+1"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(o("w").mul(&Ordinal::zero()), Ordinal::zero());
        assert_eq!(Ordinal::nat(2).mul(&o("w")), o("w"));
        assert_eq!(o("w+1").mul(&Ordinal::nat(2)), o("w*2+1"));
        assert_eq!(o("w+1").mul(&o("w")), o("w^2"));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(Ordinal::zero().classify(), Kind::Zero);
        assert_eq!(o("w+3").classify(), Kind::Successor(o("w+2")));
        assert_eq!(o("w^2*2").classify(), Kind::Limit);
    }

    #[test]
    fn fundamental_seq_examples() {
        assert_eq!(o("w").fundamental_seq(3).unwrap(), Ordinal::nat(3));
        assert_eq!(o("w*2").fundamental_seq(4).unwrap(), o("w+4"));
        assert_eq!(o("w^w").fundamental_seq(2).unwrap(), o("w^2"));
        assert_eq!(
            o("w+3").fundamental_seq(1),
            Err(OrdinalError::NotALimit(o("w+3")))
        );
    }

    #[test]
    fn fundamental_seq_monotone_below_limit() {
        // brute-force check of strict monotonicity and boundedness for k <= 20
        for lim in [o("w"), o("w*2"), o("w^2"), o("w^w"), o("w^w*3"), o("w^(w+1)+w^2*2")] {
            let mut prev: Option<Ordinal> = None;
            for k in 0..=20 {
                let v = lim.fundamental_seq(k).unwrap();
                assert!(v < lim, "fs member below limit");
                if let Some(p) = prev {
                    assert!(p < v, "fs strictly increasing at k={k} for {lim}");
                }
                prev = Some(v);
            }
        }
    }

    #[test]
    fn fundamental_seq_sup_hits_limit() {
        // sup over k of fs(a, k) is a: any b < a is eventually dominated
        let lim = o("w^w");
        for below in [o("w^2*5+3"), o("w^3"), o("w^19+w")] {
            assert!((0..=25).any(|k| lim.fundamental_seq(k).unwrap() > below));
        }
    }

    #[test]
    fn parity_examples() {
        assert_eq!(Ordinal::zero().parity(), 0);
        assert_eq!(o("w*2+3").parity(), 1);
        assert_eq!(o("w^w").parity(), 0);
        assert_eq!(o("w+1").parity(), 1);
    }

    #[test]
    fn reindex_shape() {
        // (eta+1)*t + xi + 1 for eta = w, t = 1, xi = 2
        let eta = o("w");
        let s = eta.succ().mul(&Ordinal::nat(1)).add(&Ordinal::nat(2)).add(&Ordinal::nat(1));
        assert_eq!(s, o("w+4"));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "7", "w", "w+1", "w*3+1", "w^2*5+3", "w^w", "w^(w+1)*2+w*3+5"] {
            let v = o(s);
            assert_eq!(o(&v.to_string()), v, "round trip for {s}");
        }
    }

    #[test]
    fn parse_error_has_location() {
        let e = parse_ordinal("w^w*2+?").unwrap_err();
        assert_eq!(e.at, 6);
        assert!(parse_ordinal("w^").is_err());
        assert!(parse_ordinal("(w+1").is_err());
    }

    #[test]
    fn serde_nested_term_arrays() {
        let v = o("w*2+3");
        let j = serde_json::to_string(&v).unwrap();
        assert_eq!(j, "[[1,2],[0,3]]");
        assert_eq!(serde_json::from_str::<Ordinal>(&j).unwrap(), v);
        // integer shorthand for finite ordinals
        assert_eq!(serde_json::to_string(&Ordinal::nat(5)).unwrap(), "5");
        assert_eq!(serde_json::from_str::<Ordinal>("5").unwrap(), Ordinal::nat(5));
        let nested = o("w^w");
        let j = serde_json::to_string(&nested).unwrap();
        assert_eq!(serde_json::from_str::<Ordinal>(&j).unwrap(), nested);
    }

    // Independent oracle: ordinals below w^3 as coefficient triples with the
    // textbook addition/multiplication rules coded directly on the triples.
    #[derive(Clone, Copy, PartialEq, Eq, Debug)]
    struct Poly(u64, u64, u64); // w^2*a + w*b + c

    impl Poly {
        fn to_ordinal(self) -> Ordinal {
            Ordinal::from_terms(vec![
                (Ordinal::nat(2), self.0),
                (Ordinal::nat(1), self.1),
                (Ordinal::nat(0), self.2),
            ])
        }
        fn add(self, r: Poly) -> Poly {
            if r.0 > 0 {
                Poly(self.0 + r.0, r.1, r.2)
            } else if r.1 > 0 {
                Poly(self.0, self.1 + r.1, r.2)
            } else {
                Poly(self.0, self.1, self.2 + r.2)
            }
        }
        /// Product by the textbook rules; `None` when the result leaves the
        /// `w^3` window this oracle covers.
        fn mul(self, r: Poly) -> Option<Poly> {
            if self == Poly(0, 0, 0) || r == Poly(0, 0, 0) {
                return Some(Poly(0, 0, 0));
            }
            let deg = if self.0 > 0 { 2 } else if self.1 > 0 { 1 } else { 0 };
            let mut acc = Poly(0, 0, 0);
            if r.0 > 0 {
                if deg > 0 {
                    return None;
                }
                acc = acc.add(Poly(r.0, 0, 0));
            }
            if r.1 > 0 {
                match deg {
                    0 => acc = acc.add(Poly(0, r.1, 0)),
                    1 => acc = acc.add(Poly(r.1, 0, 0)),
                    _ => return None,
                }
            }
            if r.2 > 0 {
                let piece = if self.0 > 0 {
                    Poly(self.0 * r.2, self.1, self.2)
                } else if self.1 > 0 {
                    Poly(0, self.1 * r.2, self.2)
                } else {
                    Poly(0, 0, self.2 * r.2)
                };
                acc = acc.add(piece);
            }
            Some(acc)
        }
    }

    #[test]
    fn arithmetic_matches_polynomial_oracle() {
        let mut polys = Vec::new();
        for a in 0..3u64 {
            for b in 0..3u64 {
                for c in 0..3u64 {
                    polys.push(Poly(a, b, c));
                }
            }
        }
        for &x in &polys {
            for &y in &polys {
                let got = x.to_ordinal().add(&y.to_ordinal());
                assert_eq!(got, x.add(y).to_ordinal(), "add {x:?} {y:?}");
                if let Some(expected) = x.mul(y) {
                    let got = x.to_ordinal().mul(&y.to_ordinal());
                    assert_eq!(got, expected.to_ordinal(), "mul {x:?} {y:?}");
                }
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn add_associative(a in arb_small(), b in arb_small(), c in arb_small()) {
            proptest::prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        }

        #[test]
        fn mul_left_distributes(a in arb_small(), b in arb_small(), c in arb_small()) {
            proptest::prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn order_total_and_monotone(a in arb_small(), b in arb_small()) {
            let ord = a.cmp(&b);
            proptest::prop_assert_eq!(ord.reverse(), b.cmp(&a));
            let sum = a.add(&b);
            if b.is_zero() {
                proptest::prop_assert_eq!(&sum, &a);
            } else {
                proptest::prop_assert!(sum > a);
            }
        }

        #[test]
        fn parity_flips_on_successor(a in arb_small()) {
            proptest::prop_assert_eq!(a.succ().parity(), 1 - a.parity());
            if a.is_limit() {
                proptest::prop_assert_eq!(a.parity(), 0);
            }
        }
    }

    fn arb_small() -> impl proptest::strategy::Strategy<Value = Ordinal> {
        use proptest::prelude::*;
        // ordinals below w^w*3 with small coefficients
        (proptest::collection::vec((0u64..4, 1u64..4), 0..4)).prop_map(|raw| {
            Ordinal::from_terms(
                raw.into_iter().map(|(e, c)| (Ordinal::nat(e), c)).collect(),
            )
        })
    }
}
