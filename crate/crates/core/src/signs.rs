//! Leveled signs `S_ℓ = {0, ±e_1, …, ±e_ℓ}` and sign vectors over a finite
//! ground set.
//!
//! Sign data is stored on `E` only. The value at `-a` in `E±` is the
//! negation of the value at `a` and is never materialised.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported level.
pub const MAX_LEVEL: u8 = 8;

/// One element of `S_ℓ`, packed as `sign * level` (so `0` is the zero value).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SignValue(i8);

impl SignValue {
    pub const ZERO: SignValue = SignValue(0);
    pub const PLUS: SignValue = SignValue(1);
    pub const MINUS: SignValue = SignValue(-1);

    /// `sign` must be `+1` or `-1`; `level` in `1..=MAX_LEVEL`.
    pub fn new(sign: i8, level: u8) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        assert!((1..=MAX_LEVEL).contains(&level), "level out of range");
        SignValue(sign * level as i8)
    }

    /// Level-one value from an ordinary sign in `{-1, 0, 1}`.
    pub fn from_sign(sign: i8) -> Self {
        SignValue(sign.signum())
    }

    pub fn level(self) -> u8 {
        self.0.unsigned_abs()
    }

    /// `+1`, `-1`, or `0` for the zero value.
    pub fn sign(self) -> i8 {
        self.0.signum()
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn raw(self) -> i8 {
        self.0
    }

    pub fn neg(self) -> Self {
        SignValue(-self.0)
    }

    /// The partial order of `S_ℓ`: equal, or strictly lower level.
    pub fn leq(self, other: SignValue) -> bool {
        self == other || self.level() < other.level()
    }

    pub fn lt(self, other: SignValue) -> bool {
        self.level() < other.level()
    }

    /// Same sign, moved to `level` (zero stays zero).
    pub fn at_level(self, level: u8) -> Self {
        if self.is_zero() {
            self
        } else {
            SignValue::new(self.sign(), level)
        }
    }

    /// Apply a permutation of levels; `perm[i]` is the image of level `i + 1`
    /// (1-based values).
    pub fn permute_level(self, perm: &[u8]) -> Self {
        if self.is_zero() {
            self
        } else {
            SignValue::new(self.sign(), perm[self.level() as usize - 1])
        }
    }
}

/// Total order used for deterministic enumeration: lexicographic on
/// `(level, sign)`. This is not the poset order of `S_ℓ`; see [`SignValue::leq`].
impl Ord for SignValue {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.level(), self.sign()).cmp(&(other.level(), other.sign()))
    }
}

impl PartialOrd for SignValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SignValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SignValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign() {
            0 => f.write_str("0"),
            1 => write!(f, "+{}", self.level()),
            _ => write!(f, "-{}", self.level()),
        }
    }
}

impl FromStr for SignValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(SignValue::ZERO);
        }
        let (sign, rest) = match s.as_bytes().first() {
            Some(b'+') => (1, &s[1..]),
            Some(b'-') => (-1, &s[1..]),
            _ => return Err(Error::Parse(format!("bad sign value {s:?}"))),
        };
        let level: u8 = if rest.is_empty() {
            1
        } else {
            rest.parse()
                .map_err(|_| Error::Parse(format!("bad sign value {s:?}")))?
        };
        if level == 0 || level > MAX_LEVEL {
            return Err(Error::Parse(format!("level out of range in {s:?}")));
        }
        Ok(SignValue::new(sign, level))
    }
}

/// A `Z_2`-equivariant map `E± -> S_ℓ`, stored on `E`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    // field order matters for the derived Ord: level first, then values
    max_level: u8,
    values: Vec<SignValue>,
}

impl SignVector {
    pub fn zero(n: usize, max_level: u8) -> Self {
        SignVector { max_level, values: vec![SignValue::ZERO; n] }
    }

    pub fn new(values: Vec<SignValue>, max_level: u8) -> Result<Self> {
        if max_level > MAX_LEVEL {
            return Err(Error::LevelOutOfRange { level: max_level, max: MAX_LEVEL });
        }
        if let Some(v) = values.iter().find(|v| v.level() > max_level) {
            return Err(Error::LevelOutOfRange { level: v.level(), max: max_level });
        }
        Ok(SignVector { max_level, values })
    }

    /// Level-one vector from signs in `{-1, 0, 1}`.
    pub fn from_signs(signs: &[i8]) -> Self {
        SignVector {
            max_level: 1,
            values: signs.iter().map(|&s| SignValue::from_sign(s)).collect(),
        }
    }

    /// Vector from raw packed values `sign * level`.
    pub fn from_raw(raw: &[i8], max_level: u8) -> Result<Self> {
        Self::new(
            raw.iter()
                .map(|&r| {
                    if r == 0 {
                        SignValue::ZERO
                    } else {
                        SignValue::new(r.signum(), r.unsigned_abs())
                    }
                })
                .collect(),
            max_level,
        )
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_level(&self) -> u8 {
        self.max_level
    }

    pub fn values(&self) -> &[SignValue] {
        &self.values
    }

    pub fn get(&self, i: usize) -> SignValue {
        self.values[i]
    }

    pub fn signs(&self) -> Vec<i8> {
        self.values.iter().map(|v| v.sign()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// No zero entry.
    pub fn is_tope(&self) -> bool {
        self.values.iter().all(|v| !v.is_zero())
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.values[i].is_zero()).collect()
    }

    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.values[i].is_zero()).collect()
    }

    pub fn neg(&self) -> Self {
        SignVector {
            max_level: self.max_level,
            values: self.values.iter().map(|v| v.neg()).collect(),
        }
    }

    /// Same data viewed with a larger level bound.
    pub fn with_max_level(&self, max_level: u8) -> Result<Self> {
        Self::new(self.values.clone(), max_level)
    }

    fn check_compatible(&self, other: &SignVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::GroundMismatch { left: self.len(), right: other.len() });
        }
        if self.max_level != other.max_level {
            return Err(Error::LevelMismatch { left: self.max_level, right: other.max_level });
        }
        Ok(())
    }

    /// Matroid product: take `other` where it is strictly greater, `self`
    /// otherwise.
    pub fn compose(&self, other: &SignVector) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &SignVector) -> Self {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| if a.lt(b) { b } else { a })
            .collect();
        SignVector { max_level: self.max_level, values }
    }

    /// Componentwise order induced from `S_ℓ`.
    pub fn leq(&self, other: &SignVector) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.leq_unchecked(other))
    }

    pub(crate) fn leq_unchecked(&self, other: &SignVector) -> bool {
        self.values.iter().zip(&other.values).all(|(&a, &b)| a.leq(b))
    }

    /// Indices where the two vectors take exactly opposite nonzero values.
    pub fn separation(&self, other: &SignVector) -> Result<Vec<usize>> {
        self.check_compatible(other)?;
        Ok((0..self.len())
            .filter(|&i| {
                let a = self.values[i];
                !a.is_zero() && a == other.values[i].neg()
            })
            .collect())
    }

    /// Separation set `S(σ, τ)` together with the orthogonality verdict
    /// (`S(σ, τ)` and `S(σ, -τ)` both empty or both nonempty). Level one only.
    pub fn separation_orthogonal(&self, other: &SignVector) -> Result<(Vec<usize>, bool)> {
        if self.max_level > 1 {
            return Err(Error::NotLevelOne(self.max_level));
        }
        if other.max_level > 1 {
            return Err(Error::NotLevelOne(other.max_level));
        }
        let sep = self.separation(other)?;
        let sep_neg = self.separation(&other.neg())?;
        let orthogonal = sep.is_empty() == sep_neg.is_empty();
        Ok((sep, orthogonal))
    }

    /// `F ⊗ e_i`: move a level-one vector to level `level`, in `S_{max_level}`.
    pub fn embed(&self, level: u8, max_level: u8) -> Result<Self> {
        if self.max_level != 1 {
            return Err(Error::NotLevelOne(self.max_level));
        }
        if level == 0 || level > max_level || max_level > MAX_LEVEL {
            return Err(Error::LevelOutOfRange { level, max: max_level.min(MAX_LEVEL) });
        }
        Ok(SignVector {
            max_level,
            values: self.values.iter().map(|v| v.at_level(level)).collect(),
        })
    }

    /// `π_i`: keep the sign of entries at level `>= level`, zero the rest.
    pub fn project(&self, level: u8) -> Result<Self> {
        if level == 0 || level > self.max_level {
            return Err(Error::LevelOutOfRange { level, max: self.max_level });
        }
        Ok(self.project_unchecked(level))
    }

    pub(crate) fn project_unchecked(&self, level: u8) -> Self {
        SignVector {
            max_level: 1,
            values: self
                .values
                .iter()
                .map(|v| if v.level() >= level { SignValue::from_sign(v.sign()) } else { SignValue::ZERO })
                .collect(),
        }
    }

    /// Action of a level permutation; `perm[i]` is the image of level `i + 1`.
    pub fn permute_levels(&self, perm: &[u8]) -> Result<Self> {
        let l = self.max_level as usize;
        let mut seen = vec![false; l];
        if perm.len() != l
            || !perm.iter().all(|&p| {
                let ok = p >= 1 && (p as usize) <= l && !seen[p as usize - 1];
                if ok {
                    seen[p as usize - 1] = true;
                }
                ok
            })
        {
            return Err(Error::OutOfRange(format!("{perm:?} is not a permutation of 1..={l}")));
        }
        Ok(SignVector {
            max_level: self.max_level,
            values: self.values.iter().map(|v| v.permute_level(perm)).collect(),
        })
    }

    /// Reorder entries: result[i] = self[index[i]], negated where `flip[i]`.
    pub(crate) fn reindex(&self, index: &[(usize, bool)]) -> Self {
        SignVector {
            max_level: self.max_level,
            values: index
                .iter()
                .map(|&(j, flip)| if flip { self.values[j].neg() } else { self.values[j] })
                .collect(),
        }
    }

    /// Text tokens as used in JSON exports, e.g. `["+2", "0", "-1"]`.
    pub fn tokens(&self) -> Vec<String> {
        self.values.iter().map(|v| v.to_string()).collect()
    }

    pub fn from_tokens<S: AsRef<str>>(tokens: &[S], max_level: u8) -> Result<Self> {
        let values = tokens.iter().map(|t| t.as_ref().parse()).collect::<Result<Vec<_>>>()?;
        Self::new(values, max_level)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Every sign vector on `n` elements with values in `S_ℓ`, in the
/// deterministic (level, sign) lexicographic order.
pub fn all_vectors(n: usize, max_level: u8) -> impl Iterator<Item = SignVector> {
    let mut alphabet = vec![SignValue::ZERO];
    for l in 1..=max_level {
        alphabet.push(SignValue::new(-1, l));
        alphabet.push(SignValue::new(1, l));
    }
    let base = alphabet.len();
    let total = (base as u64).checked_pow(n as u32).expect("too many vectors");
    (0..total).map(move |mut code| {
        let mut values = vec![SignValue::ZERO; n];
        for slot in values.iter_mut().rev() {
            *slot = alphabet[(code % base as u64) as usize];
            code /= base as u64;
        }
        SignVector { max_level, values }
    })
}
