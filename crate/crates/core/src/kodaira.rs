//! Kodaira fiber types from local orders of `(g2, g3, 4 g2^3 + 27 g3^2)`.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::family::WeierstrassData;
use crate::poly::univariate::{RootFinding, Valuation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KodairaType {
    I0,
    I(u32),
    II,
    III,
    IV,
    I0Star,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
    NonMinimal,
}

impl KodairaType {
    /// Euler number of the fiber; none for non-minimal points.
    pub fn euler(self) -> Option<u32> {
        use KodairaType::*;
        Some(match self {
            I0 => 0,
            I(n) => n,
            II => 2,
            III => 3,
            IV => 4,
            I0Star => 6,
            IStar(n) => 6 + n,
            IVStar => 8,
            IIIStar => 9,
            IIStar => 10,
            NonMinimal => return None,
        })
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use KodairaType::*;
        match self {
            I0 => f.write_str("I0"),
            I(n) => write!(f, "I{n}"),
            II => f.write_str("II"),
            III => f.write_str("III"),
            IV => f.write_str("IV"),
            I0Star => f.write_str("I0*"),
            IStar(n) => write!(f, "I{n}*"),
            IVStar => f.write_str("IV*"),
            IIIStar => f.write_str("III*"),
            IIStar => f.write_str("II*"),
            NonMinimal => f.write_str("non-minimal"),
        }
    }
}

impl Serialize for KodairaType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `(ord g2, ord g3, ord Delta)` at one place.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderTriple {
    pub a: Valuation,
    pub b: Valuation,
    pub d: Valuation,
}

fn times(k: u32, v: Valuation) -> Valuation {
    match v {
        Valuation::Finite(n) => Valuation::Finite(k * n),
        Valuation::Infinite => Valuation::Infinite,
    }
}

impl OrderTriple {
    pub fn new(a: u32, b: u32, d: u32) -> Self {
        OrderTriple { a: Valuation::Finite(a), b: Valuation::Finite(b), d: Valuation::Finite(d) }
    }

    /// `d >= min(3a, 2b)`, with equality when `3a != 2b`.
    pub fn is_consistent(&self) -> bool {
        let (x, y) = (times(3, self.a), times(2, self.b));
        if x == y {
            self.d >= x
        } else {
            self.d == x.min(y)
        }
    }

    pub fn to_json(&self) -> Json {
        json!([self.a.to_string(), self.b.to_string(), self.d.to_string()])
    }
}

impl fmt::Display for OrderTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.d)
    }
}

/// Table lookup; triples outside the table are an error.
pub fn classify(o: &OrderTriple) -> Result<KodairaType> {
    use KodairaType::*;
    let bad = || Error::InconsistentOrders(o.to_string());
    if !o.is_consistent() {
        return Err(bad());
    }
    let Some(d) = o.d.finite() else {
        return Err(bad());
    };
    let (a, b) = (o.a, o.b);
    let eq = |v: Valuation, n: u32| v == Valuation::Finite(n);
    if d == 0 {
        return Ok(I0);
    }
    if eq(a, 0) && eq(b, 0) {
        return Ok(I(d));
    }
    if a.at_least(4) && b.at_least(6) {
        return Ok(NonMinimal);
    }
    let ty = match d {
        2 if a.at_least(1) && eq(b, 1) => II,
        3 if eq(a, 1) && b.at_least(2) => III,
        4 if a.at_least(2) && eq(b, 2) => IV,
        6 if a.at_least(2) && b.at_least(3) => I0Star,
        n if n > 6 && eq(a, 2) && eq(b, 3) => IStar(n - 6),
        8 if a.at_least(3) && eq(b, 4) => IVStar,
        9 if eq(a, 3) && b.at_least(5) => IIIStar,
        10 if a.at_least(4) && eq(b, 5) => IIStar,
        _ => return Err(bad()),
    };
    Ok(ty)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Place<E> {
    Finite(E),
    Infinity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber<E> {
    pub place: Place<E>,
    pub orders: OrderTriple,
    pub kind: KodairaType,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberScan<E> {
    pub fibers: Vec<Fiber<E>>,
    /// Degree of `h` not accounted for by roots in the coefficient field.
    pub residual: u32,
}

impl<E> FiberScan<E> {
    /// Sum of Euler numbers over the reported fibers.
    pub fn euler_sum(&self) -> Option<u32> {
        self.fibers.iter().map(|f| f.kind.euler()).sum()
    }

    pub fn at_infinity(&self) -> Option<&Fiber<E>> {
        self.fibers.iter().find(|f| matches!(f.place, Place::Infinity))
    }

    pub fn to_json(&self, fmt_elem: impl Fn(&E) -> String) -> Json {
        let fibers: Vec<Json> = self
            .fibers
            .iter()
            .map(|f| {
                json!({
                    "place": match &f.place {
                        Place::Finite(e) => fmt_elem(e),
                        Place::Infinity => "infinity".to_string(),
                    },
                    "orders": f.orders.to_json(),
                    "type": f.kind,
                    "euler": f.kind.euler(),
                })
            })
            .collect();
        json!({ "fibers": fibers, "residual": self.residual })
    }
}

/// Classifies the fibers over every root of `h` in the coefficient field and
/// over `w = 0`.
pub fn scan_fibers<D: RootFinding>(wd: &WeierstrassData<D>) -> Result<FiberScan<D::Elem>> {
    let (g2, g3, h) = wd.univariate()?;
    let d = h.domain().clone();
    let deg_h = h.degree().ok_or_else(|| Error::Undefined("h vanishes identically".into()))? as u32;
    let mut fibers = Vec::new();
    let mut found = 0;
    for root in d.roots(&h) {
        let orders = OrderTriple { a: g2.order_at(&root), b: g3.order_at(&root), d: h.order_at(&root) };
        found += orders.d.finite().unwrap_or(0);
        fibers.push(Fiber { place: Place::Finite(root), orders, kind: classify(&orders)? });
    }
    let (a, b, dd) = wd.orders_at_infinity()?;
    let orders = OrderTriple { a, b, d: dd };
    fibers.push(Fiber { place: Place::Infinity, orders, kind: classify(&orders)? });
    Ok(FiberScan { fibers, residual: deg_h - found })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use KodairaType::*;

    fn c(a: u32, b: u32, d: u32) -> Result<KodairaType> {
        classify(&OrderTriple::new(a, b, d))
    }

    #[test]
    fn table_rows() {
        assert_eq!(c(4, 5, 10).unwrap(), IIStar);
        assert_eq!(c(0, 0, 0).unwrap(), I0);
        assert_eq!(c(0, 0, 2).unwrap(), I(2));
        assert_eq!(c(1, 1, 2).unwrap(), II);
        assert_eq!(c(3, 1, 2).unwrap(), II);
        assert_eq!(c(1, 2, 3).unwrap(), III);
        assert_eq!(c(2, 2, 4).unwrap(), IV);
        assert_eq!(c(2, 3, 6).unwrap(), I0Star);
        assert_eq!(c(2, 3, 9).unwrap(), IStar(3));
        assert_eq!(c(3, 4, 8).unwrap(), IVStar);
        assert_eq!(c(3, 5, 9).unwrap(), IIIStar);
        assert_eq!(c(4, 6, 12).unwrap(), NonMinimal);
        let inf = OrderTriple { a: Valuation::Infinite, b: Valuation::Finite(5), d: Valuation::Finite(10) };
        assert_eq!(classify(&inf).unwrap(), IIStar);
    }

    #[test]
    fn inconsistent_triples() {
        assert!(matches!(c(1, 1, 5), Err(Error::InconsistentOrders(_))));
        assert!(matches!(c(0, 1, 0), Ok(I0)));
        let zero_delta = OrderTriple { a: Valuation::Finite(0), b: Valuation::Finite(0), d: Valuation::Infinite };
        assert!(classify(&zero_delta).is_err());
    }

    #[test]
    fn display_tags() {
        assert_eq!(IStar(2).to_string(), "I2*");
        assert_eq!(I(1).to_string(), "I1");
        assert_eq!(serde_json::to_string(&IIStar).unwrap(), "\"II*\"");
    }

    proptest! {
        /// Every consistent triple with d < 12 or (a, b) below (4, 6) is classified
        /// with Euler number d.
        #[test]
        fn euler_number_is_delta_order(a in 0u32..7, b in 0u32..8, extra in 0u32..5) {
            let base = (3 * a).min(2 * b);
            let d = if 3 * a == 2 * b { base + extra } else { base };
            let o = OrderTriple::new(a, b, d);
            prop_assert!(o.is_consistent());
            match classify(&o) {
                Ok(NonMinimal) => prop_assert!(a >= 4 && b >= 6),
                Ok(t) => prop_assert_eq!(t.euler(), Some(d)),
                Err(_) => prop_assert!(false, "consistent triple {} unclassified", o),
            }
        }
    }
}
