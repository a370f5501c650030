use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GroupError;

/// Groups up to this order get an exhaustive associativity check on load.
pub const EXHAUSTIVE_ORDER_LIMIT: usize = 64;

const ASSOCIATIVITY_SAMPLES: usize = 200_000;

/// Element of a [`FiniteGroup`], a dense index with `0` the identity.
pub type Element = usize;

#[derive(Debug)]
struct GroupTable {
    order: usize,
    mult: Vec<Element>,
    inv: Vec<Element>,
    names: Vec<String>,
    name: Option<String>,
    fingerprint: u64,
    exhaustive: bool,
}

/// A finite group given by its Cayley table.
///
/// Elements are `0..order` with `0` the identity. Cloning is cheap: the table
/// is shared.
#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<GroupTable>,
}

impl FiniteGroup {
    /// Validates an explicit multiplication table.
    ///
    /// `table[a][b]` is the product `a·b`. The identity is detected from the
    /// table; if it is not element `0` the elements are relabelled so that it
    /// becomes `0` (names move with their elements).
    pub fn from_table(table: Vec<Vec<Element>>, names: Option<Vec<String>>) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::BadTable("empty table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::BadTable(format!(
                    "row {a} has length {} but the table has {order} rows",
                    row.len()
                )));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= order) {
                return Err(GroupError::BadTable(format!("entry {x} in row {a} is out of range")));
            }
        }
        if let Some(names) = &names {
            if names.len() != order {
                return Err(GroupError::BadTable(format!("{} names given for {order} elements", names.len())));
            }
        }

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;

        // Relabel so that the identity is 0.
        let relabel = |x: usize| -> usize {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut mult = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                mult[relabel(a) * order + relabel(b)] = relabel(table[a][b]);
            }
        }
        let names = names.map(|mut n| {
            n.swap(0, identity);
            n
        });

        let mut inv = vec![usize::MAX; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| mult[a * order + b] == 0 && mult[b * order + a] == 0)
                .ok_or(GroupError::NoInverse(relabel(a)))?;
            inv[a] = b;
        }

        let exhaustive = order <= EXHAUSTIVE_ORDER_LIMIT;
        let at = |a: usize, b: usize| mult[a * order + b];
        if exhaustive {
            for a in 0..order {
                for b in 0..order {
                    let ab = at(a, b);
                    for c in 0..order {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(GroupError::NonAssociativeTable { a, b, c });
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (a, b, c) = (rng.gen_range(0..order), rng.gen_range(0..order), rng.gen_range(0..order));
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return Err(GroupError::NonAssociativeTable { a, b, c });
                }
            }
        }

        let mut hasher = DefaultHasher::new();
        order.hash(&mut hasher);
        mult.hash(&mut hasher);
        let fingerprint = hasher.finish();

        let names = names
            .unwrap_or_else(|| (0..order).map(|x| if x == 0 { "e".to_string() } else { format!("g{x}") }).collect());

        Ok(Self { inner: Arc::new(GroupTable { order, mult, inv, names, name: None, fingerprint, exhaustive }) })
    }

    /// Attaches a display name such as `"C4"`.
    pub fn with_name(self, name: impl Into<String>) -> Self {
        let t = &self.inner;
        Self {
            inner: Arc::new(GroupTable {
                order: t.order,
                mult: t.mult.clone(),
                inv: t.inv.clone(),
                names: t.names.clone(),
                name: Some(name.into()),
                fingerprint: t.fingerprint,
                exhaustive: t.exhaustive,
            }),
        }
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn identity(&self) -> Element {
        0
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.inner.mult[a * self.inner.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        self.inner.inv[a]
    }

    /// `a·b·a⁻¹`.
    #[inline]
    pub fn conj(&self, a: Element, b: Element) -> Element {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.inner.order
    }

    pub fn element_name(&self, a: Element) -> &str {
        &self.inner.names[a]
    }

    pub fn element_names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn name(&self) -> Option<&str> {
        self.inner.name.as_deref()
    }

    /// Whether associativity was checked on every triple (as opposed to sampled).
    pub fn exhaustively_verified(&self) -> bool {
        self.inner.exhaustive
    }

    /// Hash of the multiplication table; equal tables give equal fingerprints.
    pub fn fingerprint(&self) -> u64 {
        self.inner.fingerprint
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: Element) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// The table as nested rows, `rows[a][b] = a·b`.
    pub fn table(&self) -> Vec<Vec<Element>> {
        self.inner.mult.chunks(self.order()).map(|r| r.to_vec()).collect()
    }

    pub(crate) fn same_as(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.fingerprint == other.inner.fingerprint && self.inner.mult == other.inner.mult)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("name", &self.inner.name).field("order", &self.inner.order).finish()
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.inner.name {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "G(order {})", self.inner.order),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_inverse_is_rejected() {
        let err = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], None).unwrap_err();
        assert_eq!(err, GroupError::NoInverse(1));
    }

    #[test]
    fn missing_identity_is_rejected() {
        let err = FiniteGroup::from_table(vec![vec![1, 0], vec![1, 0]], None).unwrap_err();
        assert_eq!(err, GroupError::NoIdentity);
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // A Latin square with identity 0 and inverses, but not a group.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(t, None).unwrap_err();
        assert!(matches!(err, GroupError::NonAssociativeTable { .. }), "{err:?}");
    }

    #[test]
    fn identity_is_relabelled_to_zero() {
        // Z/2 with the identity written as element 1.
        let g = FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]], Some(vec!["t".into(), "one".into()])).unwrap();
        assert_eq!(g.mul(1, 1), 0);
        assert_eq!(g.element_name(0), "one");
        assert_eq!(g.element_name(1), "t");
    }

    #[test]
    fn ragged_table_is_rejected() {
        let err = FiniteGroup::from_table(vec![vec![0, 1], vec![1]], None).unwrap_err();
        assert!(matches!(err, GroupError::BadTable(_)));
    }
}
