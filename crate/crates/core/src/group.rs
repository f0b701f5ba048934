//! Finite groups as indexed element sets with a total multiplication.
//!
//! Every group is built from a structural description (cyclic, symmetric,
//! extra-special of order `p^3`, direct product, or an explicit table). Groups
//! up to [`TABLE_LIMIT`] elements cache the full multiplication table so the
//! hot loops in construction and verification are a single lookup.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::subgroup::Subgroup;

/// Groups with at most this many elements store their full operation table.
pub const TABLE_LIMIT: usize = 4096;

/// Orders up to this bound get an exhaustive associativity check.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid group order {0}: must be at least 1")]
    InvalidOrder(usize),
    #[error("symmetric group degree {0} out of range (1..=5)")]
    DegreeOutOfRange(usize),
    #[error("{0} is not an odd prime")]
    NotOddPrime(usize),
    #[error("operation table has {got} entries, expected {expected}")]
    TableShape { expected: usize, got: usize },
    #[error("group axiom violated: {0}")]
    AxiomViolation(String),
    #[error("element names are not pairwise distinct: {0:?}")]
    DuplicateName(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),
    #[error("elements do not form a subgroup: {0}")]
    NotSubgroup(String),
    #[error("group is not abelian")]
    NotAbelian,
}

/// Index of an element inside one particular [`FiniteGroup`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(u32);

impl ElementId {
    pub const fn new(index: usize) -> Self {
        ElementId(index as u32)
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl From<usize> for ElementId {
    fn from(i: usize) -> Self {
        ElementId::new(i)
    }
}

#[derive(Debug)]
enum Structure {
    Cyclic(usize),
    /// Permutations in one-line notation, 0-based, lexicographic.
    Symmetric(Vec<Vec<u8>>),
    /// Triples `(x, y, z)` mod p, index `x*p^2 + y*p + z`.
    Heisenberg(usize),
    /// Pairs `(i mod p^2, j mod p)`, index `i*p + j`.
    Modular(usize),
    /// Flattened factor list; index is mixed radix with the last factor fastest.
    Product(Vec<FiniteGroup>),
    /// Ad hoc group given by its table; `table` is always present.
    Explicit,
}

struct Inner {
    order: usize,
    structure: Structure,
    table: Option<Vec<ElementId>>,
    inverses: Vec<ElementId>,
    identity: ElementId,
    names: Vec<String>,
    by_name: HashMap<String, ElementId>,
    spec: String,
    abelian: OnceLock<bool>,
    exponent: OnceLock<usize>,
    center: OnceLock<Vec<ElementId>>,
}

/// An immutable finite group. Cloning is cheap (shared handle).
#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<Inner>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("spec", &self.inner.spec).field("order", &self.inner.order).finish()
    }
}

impl PartialEq for FiniteGroup {
    /// Two handles are equal when they share storage or were built from the
    /// same structural description.
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.inner, &other.inner) {
            return true;
        }
        !self.inner.spec.is_empty() && self.inner.spec == other.inner.spec && self.inner.order == other.inner.order
    }
}

impl Eq for FiniteGroup {}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn is_odd_prime(n: usize) -> bool {
    n % 2 == 1 && is_prime(n)
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn structural_op(structure: &Structure, order: usize, a: usize, b: usize) -> usize {
    match structure {
        Structure::Cyclic(n) => (a + b) % n,
        Structure::Symmetric(perms) => {
            // (s * t)(i) = s(t(i))
            let s = &perms[a];
            let t = &perms[b];
            let composed: Vec<u8> = t.iter().map(|&i| s[i as usize]).collect();
            perm_rank(&composed)
        }
        Structure::Heisenberg(p) => {
            let p = *p;
            let (x, y, z) = (a / (p * p), (a / p) % p, a % p);
            let (x2, y2, z2) = (b / (p * p), (b / p) % p, b % p);
            let nx = (x + x2) % p;
            let ny = (y + y2) % p;
            let nz = (z + z2 + x * y2) % p;
            (nx * p + ny) * p + nz
        }
        Structure::Modular(p) => {
            let p = *p;
            let m = p * p;
            let (i, j) = (a / p, a % p);
            let (i2, j2) = (b / p, b % p);
            let mut twist = 1;
            for _ in 0..j2 {
                twist = twist * (1 + p) % m;
            }
            let ni = (i * twist + i2) % m;
            let nj = (j + j2) % p;
            ni * p + nj
        }
        Structure::Product(factors) => {
            let mut rest_a = a;
            let mut rest_b = b;
            let mut result = 0;
            let mut scale = 1;
            for f in factors.iter().rev() {
                let n = f.order();
                let ca = rest_a % n;
                let cb = rest_b % n;
                rest_a /= n;
                rest_b /= n;
                result += f.op(ElementId::new(ca), ElementId::new(cb)).index() * scale;
                scale *= n;
            }
            debug_assert!(result < order);
            result
        }
        Structure::Explicit => unreachable!("explicit groups always carry a table"),
    }
}

/// Lexicographic rank of a permutation of `0..n` given in one-line notation.
fn perm_rank(perm: &[u8]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

fn lexicographic_perms(n: usize) -> Vec<Vec<u8>> {
    fn rec(prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i as u8);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

impl FiniteGroup {
    fn assemble(
        order: usize,
        structure: Structure,
        table: Option<Vec<ElementId>>,
        identity: ElementId,
        names: Vec<String>,
        spec: String,
    ) -> Result<Self, GroupError> {
        let mut by_name = HashMap::with_capacity(order);
        for (i, name) in names.iter().enumerate() {
            if by_name.insert(name.clone(), ElementId::new(i)).is_some() {
                return Err(GroupError::DuplicateName(name.clone()));
            }
        }
        let mut group = FiniteGroup {
            inner: Arc::new(Inner {
                order,
                structure,
                table: None,
                inverses: Vec::new(),
                identity,
                names,
                by_name,
                spec,
                abelian: OnceLock::new(),
                exponent: OnceLock::new(),
                center: OnceLock::new(),
            }),
        };
        let table = match table {
            Some(t) => Some(t),
            None if order <= TABLE_LIMIT => {
                let mut t = Vec::with_capacity(order * order);
                for a in 0..order {
                    for b in 0..order {
                        t.push(ElementId::new(structural_op(&group.inner.structure, order, a, b)));
                    }
                }
                Some(t)
            }
            None => None,
        };
        let inner = Arc::get_mut(&mut group.inner).expect("fresh handle");
        inner.table = table;
        let mut inverses = vec![ElementId::new(0); order];
        let mut found = vec![false; order];
        for a in group.elements() {
            if found[a.index()] {
                continue;
            }
            // Inverse is a power of a; walk the cyclic subgroup.
            let mut cur = a;
            let mut steps = 0;
            loop {
                let next = group.op(cur, a);
                if next == identity {
                    break;
                }
                cur = next;
                steps += 1;
                if steps > order {
                    return Err(GroupError::AxiomViolation(format!("element {} has no inverse", a.index())));
                }
            }
            // cur * a = e, so cur = a^{-1}
            inverses[a.index()] = cur;
            inverses[cur.index()] = a;
            found[a.index()] = true;
            found[cur.index()] = true;
        }
        Arc::get_mut(&mut group.inner).expect("fresh handle").inverses = inverses;
        Ok(group)
    }

    /// Cyclic group `Z_n` under addition, elements named `"0"..."n-1"`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidOrder(0));
        }
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::assemble(n, Structure::Cyclic(n), None, ElementId::new(0), names, format!("C{n}"))
    }

    /// Symmetric group on `n <= 5` letters. Elements are enumerated in
    /// lexicographic one-line notation (1-based names such as `"132"`).
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        if !(1..=5).contains(&n) {
            return Err(GroupError::DegreeOutOfRange(n));
        }
        let perms = lexicographic_perms(n);
        let names = perms.iter().map(|p| p.iter().map(|&i| char::from(b'1' + i)).collect()).collect();
        let order = perms.len();
        Self::assemble(order, Structure::Symmetric(perms), None, ElementId::new(0), names, format!("S{n}"))
    }

    /// Extra-special group of order `p^3` and exponent `p`, realized as
    /// triples `(x, y, z)` with `(x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y')`.
    pub fn heisenberg(p: usize) -> Result<Self, GroupError> {
        if !is_odd_prime(p) {
            return Err(GroupError::NotOddPrime(p));
        }
        let order = p * p * p;
        let names = (0..order).map(|i| format!("({},{},{})", i / (p * p), (i / p) % p, i % p)).collect();
        Self::assemble(order, Structure::Heisenberg(p), None, ElementId::new(0), names, format!("Heis({p})"))
    }

    /// Extra-special group of order `p^3` and exponent `p^2`, realized as
    /// pairs `(i mod p^2, j mod p)` with `(i,j)(i',j') = (i(1+p)^j' + i', j+j')`.
    pub fn modular_extraspecial(p: usize) -> Result<Self, GroupError> {
        if !is_odd_prime(p) {
            return Err(GroupError::NotOddPrime(p));
        }
        let order = p * p * p;
        let names = (0..order).map(|i| format!("({},{})", i / p, i % p)).collect();
        Self::assemble(order, Structure::Modular(p), None, ElementId::new(0), names, format!("M({p})"))
    }

    /// Direct product with componentwise operation. Element `(a, b)` has index
    /// `a*|B| + b`; nested products are flattened, which preserves indices.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let mut factors = Vec::new();
        for g in [a, b] {
            match &g.inner.structure {
                Structure::Product(fs) => factors.extend(fs.iter().cloned()),
                _ => factors.push(g.clone()),
            }
        }
        Self::product_of_factors(factors)
    }

    fn product_of_factors(factors: Vec<FiniteGroup>) -> Self {
        let order: usize = factors.iter().map(|f| f.order()).product();
        let juxtapose = factors.iter().all(|f| f.inner.names.iter().all(|n| n.chars().count() == 1));
        let mut names = Vec::with_capacity(order);
        let mut digits = vec![0usize; factors.len()];
        for _ in 0..order {
            let parts: Vec<&str> = factors.iter().zip(&digits).map(|(f, &d)| f.inner.names[d].as_str()).collect();
            names.push(if juxtapose { parts.concat() } else { format!("({})", parts.join(",")) });
            for pos in (0..factors.len()).rev() {
                digits[pos] += 1;
                if digits[pos] < factors[pos].order() {
                    break;
                }
                digits[pos] = 0;
            }
        }
        let mut identity = 0;
        for f in &factors {
            identity = identity * f.order() + f.identity().index();
        }
        let spec = if factors.iter().all(|f| !f.inner.spec.is_empty()) {
            factors
                .iter()
                .map(|f| match f.inner.structure {
                    Structure::Product(_) => format!("({})", f.inner.spec),
                    _ => f.inner.spec.clone(),
                })
                .collect::<Vec<_>>()
                .join(" x ")
        } else {
            String::new()
        };
        Self::assemble(order, Structure::Product(factors), None, ElementId::new(identity), names, spec)
            .expect("direct product of groups is a group")
    }

    /// Direct product of several factors, left to right.
    pub fn product_all(factors: &[FiniteGroup]) -> Result<Self, GroupError> {
        let mut iter = factors.iter();
        let first = iter.next().ok_or(GroupError::InvalidOrder(0))?;
        Ok(iter.fold(first.clone(), |acc, g| FiniteGroup::direct_product(&acc, g)))
    }

    /// Ad hoc group from a row-major operation table. The axioms are checked.
    pub fn from_table(table: Vec<usize>, names: Vec<String>) -> Result<Self, GroupError> {
        let order = names.len();
        if order == 0 {
            return Err(GroupError::InvalidOrder(0));
        }
        if table.len() != order * order {
            return Err(GroupError::TableShape { expected: order * order, got: table.len() });
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(GroupError::ElementOutOfRange(bad));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x))
            .ok_or_else(|| GroupError::AxiomViolation("no two-sided identity".into()))?;
        for x in 0..order {
            if !(0..order).any(|y| table[x * order + y] == identity && table[y * order + x] == identity) {
                return Err(GroupError::AxiomViolation(format!("element {x} has no inverse")));
            }
        }
        let table = table.into_iter().map(ElementId::new).collect();
        let group =
            Self::assemble(order, Structure::Explicit, Some(table), ElementId::new(identity), names, String::new())?;
        group.check_axioms()?;
        Ok(group)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.inner.order
    }

    #[inline]
    pub fn identity(&self) -> ElementId {
        self.inner.identity
    }

    /// The group-spec string this group was built from, empty for ad hoc groups.
    pub fn spec(&self) -> &str {
        &self.inner.spec
    }

    pub fn has_table(&self) -> bool {
        self.inner.table.is_some()
    }

    #[inline]
    pub fn op(&self, a: ElementId, b: ElementId) -> ElementId {
        match &self.inner.table {
            Some(t) => t[a.index() * self.inner.order + b.index()],
            None => ElementId::new(structural_op(&self.inner.structure, self.inner.order, a.index(), b.index())),
        }
    }

    #[inline]
    pub fn inverse(&self, a: ElementId) -> ElementId {
        self.inner.inverses[a.index()]
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone + '_ {
        (0..self.inner.order).map(ElementId::new)
    }

    pub fn name(&self, a: ElementId) -> &str {
        &self.inner.names[a.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn element(&self, name: &str) -> Result<ElementId, GroupError> {
        self.inner.by_name.get(name).copied().ok_or_else(|| GroupError::UnknownElement(name.to_string()))
    }

    pub fn check_element(&self, a: ElementId) -> Result<ElementId, GroupError> {
        if a.index() < self.order() {
            Ok(a)
        } else {
            Err(GroupError::ElementOutOfRange(a.index()))
        }
    }

    /// Factors of a direct product, or the group itself.
    pub fn factors(&self) -> Vec<FiniteGroup> {
        match &self.inner.structure {
            Structure::Product(fs) => fs.clone(),
            _ => vec![self.clone()],
        }
    }

    /// Index of the tuple `(x_1, ..., x_r)` in a product over [`Self::factors`].
    pub fn tuple(&self, components: &[ElementId]) -> Result<ElementId, GroupError> {
        let factors = self.factors();
        if components.len() != factors.len() {
            return Err(GroupError::ElementOutOfRange(components.len()));
        }
        let mut idx = 0;
        for (f, c) in factors.iter().zip(components) {
            f.check_element(*c)?;
            idx = idx * f.order() + c.index();
        }
        Ok(ElementId::new(idx))
    }

    pub fn components(&self, a: ElementId) -> Vec<ElementId> {
        let factors = self.factors();
        let mut rest = a.index();
        let mut out = vec![ElementId::new(0); factors.len()];
        for (slot, f) in out.iter_mut().zip(&factors).rev() {
            *slot = ElementId::new(rest % f.order());
            rest /= f.order();
        }
        out
    }

    pub fn pow(&self, a: ElementId, mut n: u64) -> ElementId {
        let mut base = a;
        let mut acc = self.identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.op(acc, base);
            }
            base = self.op(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: ElementId) -> usize {
        let mut cur = a;
        let mut n = 1;
        while cur != self.identity() {
            cur = self.op(cur, a);
            n += 1;
        }
        n
    }

    /// Least `n >= 1` with `g^n = 1` for every element.
    pub fn exponent(&self) -> usize {
        *self.inner.exponent.get_or_init(|| self.elements().fold(1, |acc, g| lcm(acc, self.element_order(g))))
    }

    pub fn is_abelian(&self) -> bool {
        *self.inner.abelian.get_or_init(|| match &self.inner.structure {
            Structure::Cyclic(_) => true,
            Structure::Product(fs) => fs.iter().all(|f| f.is_abelian()),
            _ => self.elements().all(|a| self.elements().skip(a.index() + 1).all(|b| self.op(a, b) == self.op(b, a))),
        })
    }

    pub fn commutes(&self, a: ElementId, b: ElementId) -> bool {
        self.op(a, b) == self.op(b, a)
    }

    /// Elements commuting with every element of the group.
    pub fn center(&self) -> Subgroup {
        let elems = self.inner.center.get_or_init(|| match &self.inner.structure {
            Structure::Product(fs) => {
                // Z(A x B) = Z(A) x Z(B)
                let centers: Vec<Vec<ElementId>> = fs.iter().map(|f| f.center().elements().to_vec()).collect();
                let mut out = vec![ElementId::new(0)];
                for (f, c) in fs.iter().zip(&centers) {
                    out = out
                        .iter()
                        .flat_map(|&prefix| {
                            c.iter().map(move |&x| ElementId::new(prefix.index() * f.order() + x.index()))
                        })
                        .collect();
                }
                out.sort_unstable();
                out
            }
            _ if self.is_abelian() => self.elements().collect(),
            _ => self.elements().filter(|&z| self.elements().all(|g| self.commutes(z, g))).collect(),
        });
        Subgroup::from_sorted_unchecked(self.clone(), elems.clone())
    }

    /// Left-to-right product; the empty product is the identity.
    pub fn product_of<I: IntoIterator<Item = ElementId>>(&self, xs: I) -> ElementId {
        xs.into_iter().fold(self.identity(), |acc, x| self.op(acc, x))
    }

    pub fn involution_count(&self) -> usize {
        self.elements().filter(|&g| g != self.identity() && self.op(g, g) == self.identity()).count()
    }

    /// Whether the product of all elements (index order) is the identity.
    /// Only defined for abelian groups, where the order of the factors is irrelevant.
    pub fn product_of_all_trivial(&self) -> Result<bool, GroupError> {
        if !self.is_abelian() {
            return Err(GroupError::NotAbelian);
        }
        Ok(self.product_of(self.elements()) == self.identity())
    }

    pub fn subgroup_generated(&self, gens: &[ElementId]) -> Result<Subgroup, GroupError> {
        for &g in gens {
            self.check_element(g)?;
        }
        let mut member = vec![false; self.order()];
        member[self.identity().index()] = true;
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.op(x, g);
                if !member[y.index()] {
                    member[y.index()] = true;
                    frontier.push(y);
                }
            }
        }
        let elems = self.elements().filter(|x| member[x.index()]).collect();
        Ok(Subgroup::from_sorted_unchecked(self.clone(), elems))
    }

    /// Checks identity, inverses and associativity. Associativity is exhaustive
    /// up to [`EXHAUSTIVE_AXIOM_LIMIT`] elements and sampled above that.
    pub fn check_axioms(&self) -> Result<(), GroupError> {
        let e = self.identity();
        for x in self.elements() {
            if self.op(e, x) != x || self.op(x, e) != x {
                return Err(GroupError::AxiomViolation(format!("identity fails on {}", self.name(x))));
            }
            let inv = self.inverse(x);
            if self.op(x, inv) != e || self.op(inv, x) != e {
                return Err(GroupError::AxiomViolation(format!("inverse fails on {}", self.name(x))));
            }
        }
        let n = self.order();
        let assoc = |a: usize, b: usize, c: usize| {
            let (a, b, c) = (ElementId::new(a), ElementId::new(b), ElementId::new(c));
            if self.op(self.op(a, b), c) == self.op(a, self.op(b, c)) {
                Ok(())
            } else {
                Err(GroupError::AxiomViolation(format!(
                    "associativity fails on ({}, {}, {})",
                    self.name(a),
                    self.name(b),
                    self.name(c)
                )))
            }
        };
        if n <= EXHAUSTIVE_AXIOM_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assoc(a, b, c)?;
                    }
                }
            }
        } else {
            // xorshift; deterministic spot checks
            let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % n as u64) as usize
            };
            for _ in 0..100_000 {
                let (a, b, c) = (next(), next(), next());
                assoc(a, b, c)?;
            }
        }
        Ok(())
    }
}
