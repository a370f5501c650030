use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::category::{LinkMorphism, LinkOrbitCategory, SubgroupChain};
use crate::group::{conjugate_subgroup, Element, Subgroup};

use super::SimplexError;

/// A point `(g, t₀, …, tₙ)` of `Δ^H_G = (G × Δⁿ)/∼`, where `(g, x) ∼ (g′, x)`
/// whenever `x = (t₀, …, t_{n−k}, 0, …, 0)` and `gH_k = g′H_k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexPoint {
    chain: SubgroupChain,
    g: Element,
    coords: Vec<BigRational>,
}

impl fmt::Debug for SimplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|q| q.to_string()).collect();
        write!(f, "({}, ({}))", self.g, c.join(", "))
    }
}

pub(crate) fn check_coords(coords: &[BigRational]) -> Result<(), SimplexError> {
    if coords.is_empty() {
        return Err(SimplexError::BadCoordinates("no coordinates".into()));
    }
    if let Some(c) = coords.iter().find(|c| c.is_negative() || **c > BigRational::one()) {
        return Err(SimplexError::BadCoordinates(format!("coordinate {c} outside [0, 1]")));
    }
    let sum = coords.iter().fold(BigRational::zero(), |a, c| a + c);
    if !sum.is_one() {
        return Err(SimplexError::BadCoordinates(format!("coordinates sum to {sum}")));
    }
    Ok(())
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational, SimplexError> {
    let bad = || SimplexError::BadCoordinates(format!("cannot parse {s:?} as a rational"));
    let (num, den) = match s.trim().split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

impl SimplexPoint {
    /// Validated, not yet canonical.
    pub fn raw(chain: SubgroupChain, g: Element, coords: Vec<BigRational>) -> Result<Self, SimplexError> {
        if coords.len() != chain.len() {
            return Err(SimplexError::BadCoordinates(format!(
                "{} coordinates for a chain of length {}",
                coords.len(),
                chain.len()
            )));
        }
        if g >= chain.group().order() {
            return Err(SimplexError::BadCoordinates(format!("no group element {g}")));
        }
        check_coords(&coords)?;
        Ok(Self { chain, g, coords })
    }

    /// Validated and canonicalized.
    pub fn new(chain: SubgroupChain, g: Element, coords: Vec<BigRational>) -> Result<Self, SimplexError> {
        Ok(Self::raw(chain, g, coords)?.canonicalize())
    }

    /// The vertex `(g, eᵢ)` with `1` in slot `i`.
    pub fn vertex(chain: &SubgroupChain, g: Element, i: usize) -> Self {
        let mut coords = vec![BigRational::zero(); chain.len()];
        coords[i] = BigRational::one();
        Self { chain: chain.clone(), g, coords }.canonicalize()
    }

    /// Barycenter of the face spanned by the slots in `support`.
    pub fn barycenter(chain: &SubgroupChain, g: Element, support: &[usize]) -> Self {
        let w = BigRational::new(BigInt::one(), BigInt::from(support.len()));
        let mut coords = vec![BigRational::zero(); chain.len()];
        for &i in support {
            coords[i] = w.clone();
        }
        Self { chain: chain.clone(), g, coords }.canonicalize()
    }

    pub fn chain(&self) -> &SubgroupChain {
        &self.chain
    }

    pub fn g(&self) -> Element {
        self.g
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// `k = n − max{i : tᵢ ≠ 0}`.
    pub fn stratum(&self) -> usize {
        let n = self.chain.top();
        let last = (0..=n).rev().find(|&i| !self.coords[i].is_zero()).expect("coordinates sum to 1");
        n - last
    }

    /// The subgroup `H_k` whose cosets are glued at this point.
    pub fn gluing_subgroup(&self) -> &Subgroup {
        self.chain.get(self.stratum())
    }

    /// Replaces `g` by the minimal element of `gH_k`.
    pub fn canonicalize(&self) -> Self {
        let g = self.gluing_subgroup().coset_rep(self.g);
        Self { chain: self.chain.clone(), g, coords: self.coords.clone() }
    }

    pub fn is_canonical(&self) -> bool {
        self.gluing_subgroup().coset_rep(self.g) == self.g
    }

    /// Whether two (possibly non-canonical) points are identified in the
    /// quotient, straight from the defining relation.
    pub fn related(&self, other: &Self) -> bool {
        if self.chain != other.chain || self.coords != other.coords {
            return false;
        }
        let grp = self.chain.group();
        self.gluing_subgroup().contains(grp.mul(grp.inv(self.g), other.g))
    }

    /// `g′·(g, x) = (g′g, x)`.
    pub fn act(&self, a: Element) -> Self {
        let grp = self.chain.group();
        Self { chain: self.chain.clone(), g: grp.mul(a, self.g), coords: self.coords.clone() }.canonicalize()
    }

    /// `gH_kg⁻¹`.
    pub fn stabilizer(&self) -> Subgroup {
        conjugate_subgroup(self.g, self.gluing_subgroup())
    }

    /// `{a : a·p = p}` by trying every element.
    pub fn stabilizer_brute_force(&self) -> Subgroup {
        let grp = self.chain.group();
        let me = self.canonicalize();
        let elems: Vec<Element> = grp.elements().filter(|&a| self.act(a) == me).collect();
        Subgroup::new(grp, elems).expect("a stabilizer is a subgroup")
    }
}

/// `ι_*`: `s_{m−ι(k)} = t_{n−k}`, zero elsewhere.
pub fn iota_star(iota: &[usize], m: usize, coords: &[BigRational]) -> Result<Vec<BigRational>, SimplexError> {
    let n = coords.len().checked_sub(1).ok_or(SimplexError::BadInclusion)?;
    if iota.len() != n + 1 || iota.windows(2).any(|w| w[0] >= w[1]) || iota.iter().any(|&j| j > m) {
        return Err(SimplexError::BadInclusion);
    }
    let mut out = vec![BigRational::zero(); m + 1];
    for (k, &j) in iota.iter().enumerate() {
        out[m - j] = coords[n - k].clone();
    }
    Ok(out)
}

/// `Δ^(ι,γ)`: `(g, x) ↦ (gγ, ι_*(x))`.
pub fn induced_map(m: &LinkMorphism, p: &SimplexPoint) -> Result<SimplexPoint, SimplexError> {
    if p.chain != m.src {
        return Err(SimplexError::ChainMismatch);
    }
    let grp = m.group();
    let coords = iota_star(&m.iota, m.dst.top(), &p.coords)?;
    Ok(SimplexPoint { chain: m.dst.clone(), g: grp.mul(p.g, m.gamma), coords }.canonicalize())
}

/// `{"chain": i, "g": k, "coords": ["1/3", "2/3", "0"]}`, with `chain` an
/// object index of the category.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PointJson {
    pub chain: usize,
    pub g: Element,
    pub coords: Vec<String>,
}

impl PointJson {
    pub fn from_point(cat: &LinkOrbitCategory, p: &SimplexPoint) -> Result<Self, SimplexError> {
        let chain = cat.object_id(&p.chain).ok_or(SimplexError::ChainMismatch)?;
        Ok(Self { chain, g: p.g, coords: p.coords.iter().map(|c| c.to_string()).collect() })
    }

    pub fn into_point(self, cat: &LinkOrbitCategory) -> Result<SimplexPoint, SimplexError> {
        let chain = cat.objects().get(self.chain).ok_or(SimplexError::ChainMismatch)?.clone();
        let coords = self.coords.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
        SimplexPoint::new(chain, self.g, coords)
    }
}
