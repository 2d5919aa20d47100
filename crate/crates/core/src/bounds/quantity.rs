//! Symbolic spaces, groups and quantities with a compact text syntax:
//!
//! - quantities `cat(X)`, `cat_{G}(X)`, `TC_{n}(X)`, `TC_{G,n}(X)`, `TC^{G,n}(X)`,
//!   `cat^{O(y)}_{G}(X)` (category relative to the orbit power `O(y)^k`);
//! - spaces `name`, `fix(Y,H)`, `quot(Y,G)`, `prod(X,Y)`, `pow(X,k)`;
//! - groups `e` (trivial), `name`, `prod(G,K)`, `pow(G,k)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    Trivial,
    Named(String),
    Product(Box<Group>, Box<Group>),
    Power(Box<Group>, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Space {
    Named(String),
    Fixed(Box<Space>, Group),
    Quotient(Box<Space>, Group),
    Product(Box<Space>, Box<Space>),
    Power(Box<Space>, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantity {
    Cat { space: Space },
    CatG { group: Group, space: Space },
    Tc { n: usize, space: Space },
    TcG { group: Group, n: usize, space: Space },
    TcInv { group: Group, n: usize, space: Space },
    /// Category relative to the invariant subset `O(point)^k` of `space = Y^k`.
    ACatG { group: Group, space: Space, point: String },
}

impl Group {
    pub fn named(name: &str) -> Self {
        Group::Named(name.to_string())
    }

    pub fn product(a: Group, b: Group) -> Self {
        Group::Product(Box::new(a), Box::new(b))
    }

    /// `G^k`, with `G^1 = G`.
    pub fn power(g: Group, k: usize) -> Self {
        if k == 1 {
            g
        } else {
            Group::Power(Box::new(g), k)
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Group::Trivial)
    }
}

impl Space {
    pub fn named(name: &str) -> Self {
        Space::Named(name.to_string())
    }

    /// `Y^H`, with `Y^e = Y`.
    pub fn fixed(y: Space, h: Group) -> Self {
        if h.is_trivial() {
            y
        } else {
            Space::Fixed(Box::new(y), h)
        }
    }

    /// `Y/G`, with `Y/e = Y`.
    pub fn quotient(y: Space, g: Group) -> Self {
        if g.is_trivial() {
            y
        } else {
            Space::Quotient(Box::new(y), g)
        }
    }

    pub fn product(a: Space, b: Space) -> Self {
        Space::Product(Box::new(a), Box::new(b))
    }

    /// `X^k`, with `X^1 = X`.
    pub fn power(x: Space, k: usize) -> Self {
        if k == 1 {
            x
        } else {
            Space::Power(Box::new(x), k)
        }
    }
}

impl Quantity {
    pub fn n(&self) -> Option<usize> {
        match self {
            Quantity::Tc { n, .. } | Quantity::TcG { n, .. } | Quantity::TcInv { n, .. } => Some(*n),
            _ => None,
        }
    }

    pub fn space(&self) -> &Space {
        match self {
            Quantity::Cat { space }
            | Quantity::CatG { space, .. }
            | Quantity::Tc { space, .. }
            | Quantity::TcG { space, .. }
            | Quantity::TcInv { space, .. }
            | Quantity::ACatG { space, .. } => space,
        }
    }

    pub fn group(&self) -> Option<&Group> {
        match self {
            Quantity::Cat { .. } | Quantity::Tc { .. } => None,
            Quantity::CatG { group, .. }
            | Quantity::TcG { group, .. }
            | Quantity::TcInv { group, .. }
            | Quantity::ACatG { group, .. } => Some(group),
        }
    }

    fn check(self) -> Result<Self> {
        match self.n() {
            Some(n) if n < 2 => Err(Error::Bounds(format!("{self} needs n >= 2"))),
            _ => Ok(self),
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Trivial => f.write_str("e"),
            Group::Named(name) => f.write_str(name),
            Group::Product(a, b) => write!(f, "prod({a},{b})"),
            Group::Power(g, k) => write!(f, "pow({g},{k})"),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Named(name) => f.write_str(name),
            Space::Fixed(y, h) => write!(f, "fix({y},{h})"),
            Space::Quotient(y, g) => write!(f, "quot({y},{g})"),
            Space::Product(a, b) => write!(f, "prod({a},{b})"),
            Space::Power(x, k) => write!(f, "pow({x},{k})"),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Cat { space } => write!(f, "cat({space})"),
            Quantity::CatG { group, space } => write!(f, "cat_{{{group}}}({space})"),
            Quantity::Tc { n, space } => write!(f, "TC_{{{n}}}({space})"),
            Quantity::TcG { group, n, space } => write!(f, "TC_{{{group},{n}}}({space})"),
            Quantity::TcInv { group, n, space } => write!(f, "TC^{{{group},{n}}}({space})"),
            Quantity::ACatG { group, space, point } => write!(f, "cat^{{O({point})}}_{{{group}}}({space})"),
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn err(&self, what: &str) -> Error {
        Error::Bounds(format!("cannot parse '{}' at offset {}: {what}", self.text, self.pos))
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().map_or(0, char::len_utf8);
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{token}'")))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| c.is_whitespace() || "(){},;".contains(c))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.err("expected a name"));
        }
        let out = &self.rest()[..len];
        self.pos += len;
        Ok(out)
    }

    fn number(&mut self) -> Result<usize> {
        let token = self.ident()?;
        token.parse().map_err(|_| self.err(&format!("'{token}' is not a number")))
    }

    fn finish<T>(&mut self, value: T) -> Result<T> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(value)
        } else {
            Err(self.err("trailing input"))
        }
    }

    fn group(&mut self) -> Result<Group> {
        if self.eat("prod(") {
            let a = self.group()?;
            self.expect(",")?;
            let b = self.group()?;
            self.expect(")")?;
            return Ok(Group::product(a, b));
        }
        if self.eat("pow(") {
            let g = self.group()?;
            self.expect(",")?;
            let k = self.number()?;
            self.expect(")")?;
            return Ok(Group::power(g, k));
        }
        match self.ident()? {
            "e" | "1" => Ok(Group::Trivial),
            name => Ok(Group::named(name)),
        }
    }

    fn space(&mut self) -> Result<Space> {
        for (head, make) in [
            ("fix(", Space::fixed as fn(Space, Group) -> Space),
            ("quot(", Space::quotient as fn(Space, Group) -> Space),
        ] {
            if self.eat(head) {
                let y = self.space()?;
                self.expect(",")?;
                let g = self.group()?;
                self.expect(")")?;
                return Ok(make(y, g));
            }
        }
        if self.eat("prod(") {
            let a = self.space()?;
            self.expect(",")?;
            let b = self.space()?;
            self.expect(")")?;
            return Ok(Space::product(a, b));
        }
        if self.eat("pow(") {
            let x = self.space()?;
            self.expect(",")?;
            let k = self.number()?;
            self.expect(")")?;
            return Ok(Space::power(x, k));
        }
        Ok(Space::named(self.ident()?))
    }

    fn argument(&mut self) -> Result<Space> {
        self.expect("(")?;
        let s = self.space()?;
        self.expect(")")?;
        Ok(s)
    }

    fn quantity(&mut self) -> Result<Quantity> {
        if self.eat("cat^{O(") {
            let point = self.ident()?.to_string();
            self.expect(")}_{")?;
            let group = self.group()?;
            self.expect("}")?;
            let space = self.argument()?;
            return Ok(Quantity::ACatG { group, space, point });
        }
        if self.eat("cat_{") {
            let group = self.group()?;
            self.expect("}")?;
            let space = self.argument()?;
            return Ok(Quantity::CatG { group, space });
        }
        if self.eat("cat") {
            return Ok(Quantity::Cat { space: self.argument()? });
        }
        let invariant = if self.eat("TC^{") {
            true
        } else if self.eat("TC_{") {
            false
        } else {
            return Err(self.err("expected cat or TC"));
        };
        // `TC_{n}` or `TC_{G,n}`: try a bare number first
        let save = self.pos;
        if !invariant {
            if let Ok(n) = self.number() {
                if self.eat("}") {
                    let space = self.argument()?;
                    return Quantity::Tc { n, space }.check();
                }
            }
            self.pos = save;
        }
        let group = self.group()?;
        self.expect(",")?;
        let n = self.number()?;
        self.expect("}")?;
        let space = self.argument()?;
        let q = if invariant {
            Quantity::TcInv { group, n, space }
        } else {
            Quantity::TcG { group, n, space }
        };
        q.check()
    }
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let g = p.group()?;
        p.finish(g)
    }
}

impl FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let x = p.space()?;
        p.finish(x)
    }
}

impl FromStr for Quantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let q = p.quantity()?;
        p.finish(q)
    }
}

macro_rules! string_serde {
    ($($t:ty),*) => {$(
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }
        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let text = String::deserialize(d)?;
                text.parse().map_err(serde::de::Error::custom)
            }
        }
    )*};
}

string_serde!(Group, Space, Quantity);
