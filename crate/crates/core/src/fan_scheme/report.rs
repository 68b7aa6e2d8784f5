//! Scheme-theoretic properties of `X_Σ(R)` decided from the fan and a description of `R`.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not};

use super::Fan;
use crate::error::{Result, ToricError};

/// Three-valued (Kleene) truth value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl Tri {
    pub fn is_true(self) -> bool {
        self == Tri::True
    }

    pub fn is_false(self) -> bool {
        self == Tri::False
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Tri::True => "true",
            Tri::False => "false",
            Tri::Unknown => "unknown",
        }
    }

    /// `true` if this value refines to `other` (unknown refines to anything).
    pub fn refines_to(self, other: Tri) -> bool {
        self == Tri::Unknown || self == other
    }
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }
}

impl Not for Tri {
    type Output = Tri;
    fn not(self) -> Tri {
        match self {
            Tri::True => Tri::False,
            Tri::False => Tri::True,
            Tri::Unknown => Tri::Unknown,
        }
    }
}

impl BitAnd for Tri {
    type Output = Tri;
    fn bitand(self, rhs: Tri) -> Tri {
        match (self, rhs) {
            (Tri::False, _) | (_, Tri::False) => Tri::False,
            (Tri::True, Tri::True) => Tri::True,
            _ => Tri::Unknown,
        }
    }
}

impl BitOr for Tri {
    type Output = Tri;
    fn bitor(self, rhs: Tri) -> Tri {
        match (self, rhs) {
            (Tri::True, _) | (_, Tri::True) => Tri::True,
            (Tri::False, Tri::False) => Tri::False,
            _ => Tri::Unknown,
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What is known about the base ring `R`.
///
/// The zero ring has no dimension; `dim` must then be `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDescriptor {
    pub is_zero: Tri,
    pub reduced: Tri,
    pub connected: Tri,
    pub normal: Tri,
    pub irreducible: Tri,
    pub integral: Tri,
    pub noetherian: Tri,
    pub artinian: Tri,
    pub equidimensional: Tri,
    pub dim: Option<u64>,
    pub minimal_prime_count: Option<u64>,
}

impl RingDescriptor {
    pub fn unknown() -> Self {
        RingDescriptor {
            is_zero: Tri::Unknown,
            reduced: Tri::Unknown,
            connected: Tri::Unknown,
            normal: Tri::Unknown,
            irreducible: Tri::Unknown,
            integral: Tri::Unknown,
            noetherian: Tri::Unknown,
            artinian: Tri::Unknown,
            equidimensional: Tri::Unknown,
            dim: None,
            minimal_prime_count: None,
        }
    }

    pub fn integers() -> Self {
        RingDescriptor {
            is_zero: Tri::False,
            reduced: Tri::True,
            connected: Tri::True,
            normal: Tri::True,
            irreducible: Tri::True,
            integral: Tri::True,
            noetherian: Tri::True,
            artinian: Tri::False,
            equidimensional: Tri::True,
            dim: Some(1),
            minimal_prime_count: Some(1),
        }
    }

    pub fn field() -> Self {
        RingDescriptor {
            artinian: Tri::True,
            dim: Some(0),
            ..Self::integers()
        }
    }

    pub fn zero_ring() -> Self {
        RingDescriptor {
            is_zero: Tri::True,
            reduced: Tri::True,
            connected: Tri::False,
            normal: Tri::True,
            irreducible: Tri::False,
            integral: Tri::False,
            noetherian: Tri::True,
            artinian: Tri::True,
            equidimensional: Tri::True,
            dim: None,
            minimal_prime_count: Some(0),
        }
    }

    /// Checks internal consistency and closes the flags under the implications
    /// integral ⟹ irreducible ∧ reduced, artinian ⟹ noetherian.
    pub fn normalized(mut self) -> Result<Self> {
        let bad = |msg: &str| Err(ToricError::InvalidInput(msg.to_string()));
        if self.integral.is_true() {
            if self.irreducible.is_false() || self.reduced.is_false() {
                return bad("an integral ring is irreducible and reduced");
            }
            self.irreducible = Tri::True;
            self.reduced = Tri::True;
        }
        if self.irreducible.is_true() && self.reduced.is_true() {
            if self.integral.is_false() {
                return bad("an irreducible reduced ring is integral");
            }
            self.integral = Tri::True;
        }
        if self.artinian.is_true() {
            if self.noetherian.is_false() {
                return bad("an artinian ring is noetherian");
            }
            self.noetherian = Tri::True;
        }
        if self.is_zero.is_true() {
            if self.dim.is_some() {
                return bad("the zero ring has no dimension");
            }
            if matches!(self.minimal_prime_count, Some(c) if c != 0) {
                return bad("the zero ring has no prime ideals");
            }
            if self.irreducible.is_true() || self.integral.is_true() {
                return bad("the zero ring is not irreducible");
            }
        }
        if self.dim.is_some() {
            if self.is_zero.is_true() {
                return bad("the zero ring has no dimension");
            }
            self.is_zero = Tri::False;
        }
        if self.artinian.is_true() && matches!(self.dim, Some(d) if d != 0) {
            return bad("an artinian ring has dimension 0");
        }
        Ok(self)
    }
}

/// A dimension value: a number, unknown, or the dimension of the empty scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dim {
    Value(u64),
    Unknown,
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeReport {
    pub separated: Tri,
    pub quasicompact: Tri,
    pub flat: Tri,
    pub finite_presentation: Tri,
    pub faithfully_flat: Tri,
    pub proper: Tri,
    pub reduced: Tri,
    pub connected: Tri,
    pub normal: Tri,
    pub irreducible: Tri,
    pub integral: Tri,
    pub noetherian: Tri,
    pub artinian: Tri,
    pub equidimensional: Tri,
    pub dim_lower: Dim,
    pub dim_upper: Dim,
    pub irreducible_component_count: Option<u64>,
}

impl SchemeReport {
    /// Flag fields by name, in declaration order.
    pub fn flags(&self) -> Vec<(&'static str, Tri)> {
        vec![
            ("separated", self.separated),
            ("quasicompact", self.quasicompact),
            ("flat", self.flat),
            ("finite_presentation", self.finite_presentation),
            ("faithfully_flat", self.faithfully_flat),
            ("proper", self.proper),
            ("reduced", self.reduced),
            ("connected", self.connected),
            ("normal", self.normal),
            ("irreducible", self.irreducible),
            ("integral", self.integral),
            ("noetherian", self.noetherian),
            ("artinian", self.artinian),
            ("equidimensional", self.equidimensional),
        ]
    }
}

pub fn scheme_property_report(f: &Fan, r: &RingDescriptor) -> SchemeReport {
    let empty = Tri::from(f.is_empty());
    let nonempty = !empty;
    let z = r.is_zero;
    let n = f.ambient_rank() as u64;

    let noetherian = r.noetherian | empty;
    let equidimensional = match noetherian {
        Tri::True if f.is_empty() => Tri::True,
        Tri::True if r.noetherian.is_true() => r.equidimensional | empty,
        _ => Tri::Unknown,
    };

    let (dim_lower, dim_upper) = if f.is_empty() || z.is_true() {
        (Dim::Empty, Dim::Empty)
    } else {
        match r.dim {
            None => (Dim::Unknown, Dim::Unknown),
            Some(d) => {
                let upper = if r.noetherian.is_true() {
                    d + n
                } else {
                    (n + 1) * d + n
                };
                (Dim::Value(d + n), Dim::Value(upper))
            }
        }
    };

    let irreducible_component_count = if f.is_empty() || z.is_true() {
        Some(0)
    } else {
        r.minimal_prime_count
    };

    SchemeReport {
        separated: Tri::True,
        quasicompact: Tri::True,
        flat: Tri::True,
        finite_presentation: Tri::True,
        faithfully_flat: nonempty | z,
        proper: Tri::from(f.is_complete()) | empty | z,
        reduced: r.reduced | empty,
        connected: r.connected | empty,
        normal: r.normal | empty,
        irreducible: r.irreducible & nonempty,
        integral: r.integral & nonempty,
        noetherian,
        artinian: (r.artinian & Tri::from(n == 0)) | z | empty,
        equidimensional,
        dim_lower,
        dim_upper,
        irreducible_component_count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn kleene_tables() {
        use Tri::*;
        assert_eq!(True & Unknown, Unknown);
        assert_eq!(False & Unknown, False);
        assert_eq!(True | Unknown, True);
        assert_eq!(False | Unknown, Unknown);
        assert_eq!(!Unknown, Unknown);
    }

    #[test]
    fn p2_over_integers() {
        let rep = scheme_property_report(&catalog::p2(), &RingDescriptor::integers());
        assert_eq!(rep.proper, Tri::True);
        assert_eq!(rep.integral, Tri::True);
        assert_eq!(rep.noetherian, Tri::True);
        assert_eq!(rep.dim_lower, Dim::Value(3));
        assert_eq!(rep.dim_upper, Dim::Value(3));
    }

    #[test]
    fn empty_fan_over_anything() {
        let f = Fan::from_maximal_cones(2, &[], &[]).unwrap();
        let rep = scheme_property_report(&f, &RingDescriptor::unknown());
        assert_eq!(rep.reduced, Tri::True);
        assert_eq!(rep.normal, Tri::True);
        assert_eq!(rep.connected, Tri::True);
        assert_eq!(rep.irreducible, Tri::False);
        assert_eq!(rep.proper, Tri::True);
        assert_eq!(rep.dim_lower, Dim::Empty);
    }

    #[test]
    fn orthant_over_field() {
        let rep = scheme_property_report(&catalog::orthant(), &RingDescriptor::field());
        assert_eq!(rep.proper, Tri::False);
        assert_eq!(rep.artinian, Tri::False);
        assert_eq!(rep.dim_lower, Dim::Value(2));
        assert_eq!(rep.dim_upper, Dim::Value(2));
    }

    #[test]
    fn non_noetherian_dimension_is_an_interval() {
        let r = RingDescriptor {
            noetherian: Tri::False,
            dim: Some(1),
            ..RingDescriptor::unknown()
        };
        let rep = scheme_property_report(&catalog::p2(), &r);
        assert_eq!(rep.dim_lower, Dim::Value(3));
        assert_eq!(rep.dim_upper, Dim::Value(5));
        assert_eq!(rep.equidimensional, Tri::Unknown);
    }

    #[test]
    fn descriptor_validation() {
        let bad = RingDescriptor {
            integral: Tri::True,
            reduced: Tri::False,
            ..RingDescriptor::unknown()
        };
        assert!(bad.normalized().is_err());
        let art = RingDescriptor {
            artinian: Tri::True,
            ..RingDescriptor::unknown()
        }
        .normalized()
        .unwrap();
        assert_eq!(art.noetherian, Tri::True);
        assert!(RingDescriptor::zero_ring().normalized().is_ok());
    }
}
