//! Canonical text and JSON forms.
//!
//! ```text
//! AntiChain := "{" [ Set ("," Set)* ] "}"
//! Set       := "{" [ int ("," int)* ] "}"      ints strictly ascending
//! Interval  := "[" AntiChain ".." AntiChain "]"
//! ```
//!
//! Whitespace is ignored everywhere. Formatting is unique per value.

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::antichain::{canonical_sup, AntiChain};
use crate::error::{AmfError, Result};
use crate::ground::{GroundSet, SubsetMask};
use crate::interval::Interval;

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(AmfError::parse(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(AmfError::parse(start, "expected an integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| AmfError::parse(start, "integer out of range"))
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(AmfError::parse(self.pos, "trailing input")),
        }
    }

    fn set(&mut self, ground: GroundSet) -> Result<SubsetMask> {
        self.expect(b'{')?;
        let mut mask = SubsetMask::EMPTY;
        let mut last = 0u32;
        if !self.eat(b'}') {
            loop {
                let at = self.pos;
                let e = self.int()?;
                if e <= last {
                    return Err(AmfError::parse(at, "set elements must be strictly ascending"));
                }
                if !ground.contains(e) {
                    return Err(AmfError::ElementOutOfRange { element: e, ground });
                }
                last = e;
                mask = mask.with(e);
                if self.eat(b'}') {
                    break;
                }
                self.expect(b',')?;
            }
        }
        Ok(mask)
    }

    fn antichain(&mut self, ground: GroundSet, normalize: bool) -> Result<AntiChain> {
        let start = self.pos;
        self.expect(b'{')?;
        let mut sets = Vec::new();
        if !self.eat(b'}') {
            loop {
                sets.push(self.set(ground)?);
                if self.eat(b'}') {
                    break;
                }
                self.expect(b',')?;
            }
        }
        finish_family(ground, sets, normalize, start)
    }
}

fn finish_family(
    ground: GroundSet,
    sets: Vec<SubsetMask>,
    normalize: bool,
    pos: usize,
) -> Result<AntiChain> {
    if normalize {
        return canonical_sup(ground, sets);
    }
    let a = AntiChain::new(ground, sets.iter().copied())?;
    if a.sets() != sets.as_slice() {
        return Err(AmfError::parse(pos, "sets are not in canonical order"));
    }
    Ok(a)
}

impl AntiChain {
    /// Parses the canonical text form over `ground`.
    ///
    /// Without `normalize` the input must already be canonical: sets ordered
    /// by cardinality then value, no member contained in another. With
    /// `normalize` any family is accepted and reduced to its maximal sets.
    pub fn parse(text: &str, ground: GroundSet, normalize: bool) -> Result<AntiChain> {
        let mut c = Cursor::new(text);
        let a = c.antichain(ground, normalize)?;
        c.finish()?;
        Ok(a)
    }

    /// Largest element mentioned in a text form, or 0; used to pick a
    /// default ground set `P_n` for user input.
    pub fn max_element_in_text(text: &str) -> u32 {
        text.split(|c: char| !c.is_ascii_digit())
            .filter_map(|t| t.parse::<u32>().ok())
            .max()
            .unwrap_or(0)
    }

    /// JSON form: array of ascending integer arrays.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("antichain serialization is infallible")
    }

    pub fn from_json(value: &serde_json::Value, ground: GroundSet, normalize: bool) -> Result<Self> {
        let outer = value
            .as_array()
            .ok_or_else(|| AmfError::parse(0, "expected a JSON array"))?;
        let mut sets = Vec::with_capacity(outer.len());
        for (i, inner) in outer.iter().enumerate() {
            let inner = inner
                .as_array()
                .ok_or_else(|| AmfError::parse(i, "expected an array of integers"))?;
            let mut mask = SubsetMask::EMPTY;
            let mut last = 0u64;
            for v in inner {
                let e = v
                    .as_u64()
                    .filter(|e| *e > last && *e <= u32::MAX as u64)
                    .ok_or_else(|| AmfError::parse(i, "expected strictly ascending positive integers"))?;
                last = e;
                let e = e as u32;
                if !ground.contains(e) {
                    return Err(AmfError::ElementOutOfRange { element: e, ground });
                }
                mask = mask.with(e);
            }
            sets.push(mask);
        }
        finish_family(ground, sets, normalize, 0)
    }
}

impl Serialize for AntiChain {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for s in self.sets() {
            seq.serialize_element(&s.elements().collect::<Vec<u32>>())?;
        }
        seq.end()
    }
}

impl Interval {
    pub fn parse(text: &str, ground: GroundSet, normalize: bool) -> Result<Interval> {
        let mut c = Cursor::new(text);
        c.expect(b'[')?;
        let lower = c.antichain(ground, normalize)?;
        c.expect(b'.')?;
        c.expect(b'.')?;
        let upper = c.antichain(ground, normalize)?;
        c.expect(b']')?;
        c.finish()?;
        Interval::new(lower, upper)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let g = GroundSet::prefix(3);
        assert_eq!(AntiChain::parse("{}", g, false).unwrap(), AntiChain::empty(g));
        assert_eq!(AntiChain::parse("{{}}", g, false).unwrap(), AntiChain::unit(g));
        let a = AntiChain::parse(" { {3} , {1, 2} } ", g, false).unwrap();
        assert_eq!(a.to_string(), "{{3},{1,2}}");
        // Written in non-canonical order, so only accepted when normalizing.
        let b = AntiChain::parse("{{1,2},{3}}", g, true).unwrap();
        assert_eq!(b, a);
    }

    #[test]
    fn canonical_order_is_enforced_without_normalize() {
        let g = GroundSet::prefix(3);
        // {1,2} has two elements, so canonical order puts {3} first.
        assert!(matches!(
            AntiChain::parse("{{1,2},{3}}", g, false),
            Err(AmfError::Parse { .. })
        ));
        let a = AntiChain::parse("{{1,2},{3}}", g, true).unwrap();
        assert_eq!(a.to_string(), "{{3},{1,2}}");
        assert!(matches!(
            AntiChain::parse("{{1},{1,2}}", g, false),
            Err(AmfError::NotAnAntichain { .. })
        ));
        assert_eq!(
            AntiChain::parse("{{1},{1,2}}", g, true).unwrap().to_string(),
            "{{1,2}}"
        );
    }

    #[test]
    fn syntax_and_range_errors() {
        let g = GroundSet::prefix(2);
        for bad in ["", "{", "{{1}", "{{2,1}}", "{{1,1}}", "{{1}}x", "{1}", "{{a}}"] {
            assert!(AntiChain::parse(bad, g, true).is_err(), "{bad:?}");
        }
        assert!(matches!(
            AntiChain::parse("{{3}}", g, false),
            Err(AmfError::ElementOutOfRange { element: 3, .. })
        ));
    }

    #[test]
    fn json_form() {
        let g = GroundSet::prefix(3);
        let a = AntiChain::parse("{{3},{1,2}}", g, false).unwrap();
        assert_eq!(a.to_json().to_string(), "[[3],[1,2]]");
        assert_eq!(AntiChain::from_json(&a.to_json(), g, false).unwrap(), a);
        assert_eq!(AntiChain::unit(g).to_json().to_string(), "[[]]");
        let v: serde_json::Value = serde_json::from_str("[[1,2],[1]]").unwrap();
        assert!(AntiChain::from_json(&v, g, false).is_err());
        assert_eq!(AntiChain::from_json(&v, g, true).unwrap().to_string(), "{{1,2}}");
    }

    #[test]
    fn interval_text() {
        let g = GroundSet::prefix(2);
        let i = Interval::parse("[{{1},{2}} .. {{1,2}}]", g, false).unwrap();
        assert_eq!(i.to_string(), "[{{1},{2}} .. {{1,2}}]");
        assert_eq!(Interval::parse(&i.to_string(), g, false).unwrap(), i);
    }
}
