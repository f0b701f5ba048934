//! Extra-special groups of order `p^3` for odd `p`, with their presentation
//! generators.
//!
//! Both isomorphism types carry generators `a`, `b` and a central element `z`
//! of order `p` with `ab = baz`:
//!
//! * exponent `p`: `<a, b, c | a^p = b^p = c^p = 1, ac = ca, bc = cb, ab = bac>`, `z = c`;
//! * exponent `p^2`: `<a, b | a^(p^2) = b^p = 1, ab = ba^(1+p)>`, `z = a^p`.

use std::fmt;
use std::str::FromStr;

use crate::group::{ElementId, FiniteGroup, GroupError};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtraSpecialKind {
    /// Heisenberg group, every non-identity element has order `p`.
    ExponentP,
    /// Exponent `p^2`, `a` has order `p^2`.
    ExponentP2,
}

impl fmt::Display for ExtraSpecialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExtraSpecialKind::ExponentP => "expP",
            ExtraSpecialKind::ExponentP2 => "expP2",
        })
    }
}

impl FromStr for ExtraSpecialKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "expP" | "p" | "exponent_p" => Ok(ExtraSpecialKind::ExponentP),
            "expP2" | "p2" | "exponent_p2" => Ok(ExtraSpecialKind::ExponentP2),
            other => Err(format!("unknown extra-special case {other:?} (expected expP or expP2)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExtraSpecial {
    pub group: FiniteGroup,
    pub p: usize,
    pub kind: ExtraSpecialKind,
    pub a: ElementId,
    pub b: ElementId,
    /// Central element of order `p` with `ab = baz`.
    pub z: ElementId,
}

impl ExtraSpecial {
    pub fn new(p: usize, kind: ExtraSpecialKind) -> Result<Self, GroupError> {
        let (group, a, b, z) = match kind {
            ExtraSpecialKind::ExponentP => {
                let g = FiniteGroup::heisenberg(p)?;
                // (x, y, z) has index x*p^2 + y*p + z
                (g, ElementId::new(p * p), ElementId::new(p), ElementId::new(1))
            }
            ExtraSpecialKind::ExponentP2 => {
                let g = FiniteGroup::modular_extraspecial(p)?;
                // (i, j) has index i*p + j
                let a = ElementId::new(p);
                let z = g.pow(a, p as u64);
                (g, a, ElementId::new(1), z)
            }
        };
        let e = ExtraSpecial { group, p, kind, a, b, z };
        e.check_relations()?;
        Ok(e)
    }

    /// The third generator `c` of the exponent-`p` presentation.
    pub fn c(&self) -> Option<ElementId> {
        match self.kind {
            ExtraSpecialKind::ExponentP => Some(self.z),
            ExtraSpecialKind::ExponentP2 => None,
        }
    }

    /// Checks the defining relations on the realized elements.
    pub fn check_relations(&self) -> Result<(), GroupError> {
        let g = &self.group;
        let p = self.p as u64;
        let e = g.identity();
        let fail = |what: &str| Err(GroupError::AxiomViolation(format!("relation {what} fails")));
        match self.kind {
            ExtraSpecialKind::ExponentP => {
                let c = self.z;
                if g.pow(self.a, p) != e || g.pow(self.b, p) != e || g.pow(c, p) != e {
                    return fail("a^p = b^p = c^p = 1");
                }
                if !g.commutes(self.a, c) || !g.commutes(self.b, c) {
                    return fail("ac = ca, bc = cb");
                }
                if g.op(self.a, self.b) != g.op(g.op(self.b, self.a), c) {
                    return fail("ab = bac");
                }
            }
            ExtraSpecialKind::ExponentP2 => {
                if g.pow(self.a, p * p) != e || g.pow(self.b, p) != e {
                    return fail("a^(p^2) = b^p = 1");
                }
                if g.op(self.a, self.b) != g.op(self.b, g.pow(self.a, 1 + p)) {
                    return fail("ab = ba^(1+p)");
                }
            }
        }
        Ok(())
    }

    /// `b^j a^i`.
    pub fn word(&self, j: u64, i: u64) -> ElementId {
        self.group.op(self.group.pow(self.b, j), self.group.pow(self.a, i))
    }

    /// Double product `prod_{k=0}^{p-1} prod_{l=0}^{p-1} (b^l a^k)(b^i a^j)`,
    /// outer index `k`, inner index `l`.
    pub fn double_product(&self, i: u64, j: u64) -> ElementId {
        let g = &self.group;
        let shift = self.word(i, j);
        let p = self.p as u64;
        let mut acc = g.identity();
        for k in 0..p {
            for l in 0..p {
                acc = g.op(acc, g.op(self.word(l, k), shift));
            }
        }
        acc
    }
}
