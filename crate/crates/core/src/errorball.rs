//! Error balls: every word reachable from a codeword under a given error budget.

use std::collections::btree_set;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::bitseq::BitSeq;
use crate::codebook::Codebook;
use crate::error::{Error, Result};
use crate::verify::{Status, VerificationReport, Witness};

/// Default limit on the number of words a single ball may contain.
pub const DEFAULT_BALL_CAP: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorBallKind {
    /// At most one deletion.
    D,
    /// At most one adjacent transposition.
    T,
    /// At most one deletion or at most one adjacent transposition.
    TorD,
    /// At most ℓ adjacent transpositions.
    Tl(usize),
    /// The word itself, or one deletion combined with at most ℓ adjacent
    /// transpositions. Transposition-only words are not members.
    TlD(usize),
    /// Exactly one burst of b consecutive deletions.
    Dexact(usize),
    /// One burst of at most b consecutive deletions.
    Datmost(usize),
    /// At most one transposition of two adjacent blocks of length b.
    BT(usize),
    /// A block deletion and an adjacent block transposition of equal length t ≤ b, in either order.
    BTandD(usize),
}

impl ErrorBallKind {
    pub fn tag(&self) -> &'static str {
        match self {
            ErrorBallKind::D => "d",
            ErrorBallKind::T => "t",
            ErrorBallKind::TorD => "t-or-d",
            ErrorBallKind::Tl(_) => "tl",
            ErrorBallKind::TlD(_) => "tl-d",
            ErrorBallKind::Dexact(_) => "d-exact",
            ErrorBallKind::Datmost(_) => "d-atmost",
            ErrorBallKind::BT(_) => "bt",
            ErrorBallKind::BTandD(_) => "bt-and-d",
        }
    }

    /// Builds a kind from its tag and the `ell`/`b` parameters; a parameter
    /// must be given exactly when the tag uses it.
    pub fn from_tag(tag: &str, ell: Option<usize>, b: Option<usize>) -> Result<Self> {
        let need = |name: &str, v: Option<usize>| {
            v.ok_or_else(|| Error::InvalidParameter(format!("ball kind {tag} requires {name}")))
        };
        let forbid = |name: &str, v: Option<usize>| match v {
            Some(_) => Err(Error::InvalidParameter(format!(
                "ball kind {tag} does not take {name}"
            ))),
            None => Ok(()),
        };
        let kind = match tag {
            "d" | "D" => ErrorBallKind::D,
            "t" | "T" => ErrorBallKind::T,
            "t-or-d" | "TorD" => ErrorBallKind::TorD,
            "tl" | "Tl" => ErrorBallKind::Tl(need("--ell", ell)?),
            "tl-d" | "TlD" => ErrorBallKind::TlD(need("--ell", ell)?),
            "d-exact" | "Dexact" => ErrorBallKind::Dexact(need("--b", b)?),
            "d-atmost" | "Datmost" => ErrorBallKind::Datmost(need("--b", b)?),
            "bt" | "BT" => ErrorBallKind::BT(need("--b", b)?),
            "bt-and-d" | "BTandD" => ErrorBallKind::BTandD(need("--b", b)?),
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown ball kind {other}"
                )))
            }
        };
        if !matches!(kind, ErrorBallKind::Tl(_) | ErrorBallKind::TlD(_)) {
            forbid("--ell", ell)?;
        }
        if !matches!(
            kind,
            ErrorBallKind::Dexact(_)
                | ErrorBallKind::Datmost(_)
                | ErrorBallKind::BT(_)
                | ErrorBallKind::BTandD(_)
        ) {
            forbid("--b", b)?;
        }
        Ok(kind)
    }

    fn validate(&self, n: usize) -> Result<()> {
        match *self {
            ErrorBallKind::Dexact(b)
            | ErrorBallKind::Datmost(b)
            | ErrorBallKind::BT(b)
            | ErrorBallKind::BTandD(b)
                if b == 0 || b > n =>
            {
                return Err(Error::InvalidParameter(format!(
                    "block length {b} infeasible for length {n}"
                )));
            }
            _ => {}
        }
        Ok(())
    }
}

impl fmt::Display for ErrorBallKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErrorBallKind::Tl(p)
            | ErrorBallKind::TlD(p)
            | ErrorBallKind::Dexact(p)
            | ErrorBallKind::Datmost(p)
            | ErrorBallKind::BT(p)
            | ErrorBallKind::BTandD(p) => write!(f, "{}({p})", self.tag()),
            _ => f.write_str(self.tag()),
        }
    }
}

impl FromStr for ErrorBallKind {
    type Err = Error;

    /// Parses the `Display` form, e.g. `t-or-d` or `tl-d(2)`.
    fn from_str(s: &str) -> Result<Self> {
        let (tag, param) = match s.split_once('(') {
            Some((tag, rest)) => {
                let p = rest
                    .strip_suffix(')')
                    .and_then(|p| p.parse::<usize>().ok())
                    .ok_or_else(|| Error::InvalidParameter(format!("bad ball kind {s}")))?;
                (tag, Some(p))
            }
            None => (s, None),
        };
        match tag {
            "tl" | "tl-d" | "Tl" | "TlD" => ErrorBallKind::from_tag(tag, param, None),
            "d-exact" | "d-atmost" | "bt" | "bt-and-d" | "Dexact" | "Datmost" | "BT" | "BTandD" => {
                ErrorBallKind::from_tag(tag, None, param)
            }
            _ => ErrorBallKind::from_tag(tag, param, None),
        }
    }
}

/// A deduplicated set of words, iterated in lexicographic order.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct BallSet(BTreeSet<BitSeq>);

impl BallSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(x: BitSeq) -> Self {
        let mut s = Self::new();
        s.insert(x);
        s
    }

    pub fn insert(&mut self, x: BitSeq) -> bool {
        self.0.insert(x)
    }

    pub fn contains(&self, x: &BitSeq) -> bool {
        self.0.contains(x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> btree_set::Iter<'_, BitSeq> {
        self.0.iter()
    }

    pub fn extend(&mut self, other: BallSet) {
        self.0.extend(other.0);
    }

    pub fn is_subset(&self, other: &BallSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn into_vec(self) -> Vec<BitSeq> {
        self.0.into_iter().collect()
    }
}

impl fmt::Debug for BallSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.0.iter().map(|x| x.to_string()))
            .finish()
    }
}

impl FromIterator<BitSeq> for BallSet {
    fn from_iter<I: IntoIterator<Item = BitSeq>>(iter: I) -> Self {
        BallSet(iter.into_iter().collect())
    }
}

impl IntoIterator for BallSet {
    type Item = BitSeq;
    type IntoIter = btree_set::IntoIter<BitSeq>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a BallSet {
    type Item = &'a BitSeq;
    type IntoIter = btree_set::Iter<'a, BitSeq>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

pub fn ball(x: &BitSeq, kind: ErrorBallKind) -> Result<BallSet> {
    ball_capped(x, kind, DEFAULT_BALL_CAP)
}

/// [`ball`] with an explicit limit on the result size.
pub fn ball_capped(x: &BitSeq, kind: ErrorBallKind, cap: usize) -> Result<BallSet> {
    if x.is_empty() {
        return Err(Error::EmptySequence);
    }
    kind.validate(x.len())?;
    let out = match kind {
        ErrorBallKind::D => deletions(x, 1, true),
        ErrorBallKind::T => adjacent_swaps(x, true),
        ErrorBallKind::TorD => {
            let mut s = deletions(x, 1, true);
            s.extend(adjacent_swaps(x, false));
            s
        }
        ErrorBallKind::Tl(ell) => transpositions(x, ell, cap)?,
        ErrorBallKind::TlD(ell) => {
            let mut out = BallSet::singleton(x.clone());
            for u in transpositions(x, ell, cap)? {
                out.extend(deletions(&u, 1, false));
                check_size(&out, cap)?;
            }
            out
        }
        ErrorBallKind::Dexact(b) => deletions(x, b, false),
        ErrorBallKind::Datmost(b) => {
            let mut s = BallSet::singleton(x.clone());
            for t in 1..=b {
                s.extend(deletions(x, t, false));
            }
            s
        }
        ErrorBallKind::BT(b) => block_swaps(x, b),
        ErrorBallKind::BTandD(b) => {
            let mut s = BallSet::singleton(x.clone());
            for t in 1..=b {
                for u in deletions(x, t, false) {
                    s.extend(block_swaps(&u, t));
                }
                for u in block_swaps(x, t) {
                    s.extend(deletions(&u, t, false));
                }
            }
            s
        }
    };
    check_size(&out, cap)?;
    Ok(out)
}

/// Union of `ball(x, kind)` over every `x` in `set`.
pub fn ball_of_set(set: &BallSet, kind: ErrorBallKind) -> Result<BallSet> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut out = BallSet::new();
    for x in set {
        out.extend(ball(x, kind)?);
        check_size(&out, DEFAULT_BALL_CAP)?;
    }
    Ok(out)
}

/// Whether `y` lies in `ball(x, kind)`, decided without building the ball
/// for the deletion and block kinds.
pub fn ball_contains(x: &BitSeq, y: &BitSeq, kind: ErrorBallKind) -> Result<bool> {
    if x.is_empty() {
        return Err(Error::EmptySequence);
    }
    kind.validate(x.len())?;
    Ok(match kind {
        ErrorBallKind::Dexact(b) => is_burst_of(x, y, b),
        ErrorBallKind::Datmost(b) => x == y || (1..=b).any(|t| is_burst_of(x, y, t)),
        ErrorBallKind::BT(b) => x == y || is_block_swap(x, y, b),
        ErrorBallKind::BTandD(b) => {
            if x == y {
                return Ok(true);
            }
            let Some(t) = x
                .len()
                .checked_sub(y.len())
                .filter(|&t| (1..=b).contains(&t))
            else {
                return Ok(false);
            };
            let deleted_first = (1..=x.len() - t + 1).any(|k| {
                let u = x.delete_block(t, k).expect("in range");
                u == *y || is_block_swap(&u, y, t)
            });
            deleted_first
                || (2 * t <= x.len()
                    && (1..=x.len() + 1 - 2 * t)
                        .any(|k| is_burst_of(&x.transpose_block(t, k).expect("in range"), y, t)))
        }
        _ => ball(x, kind)?.contains(y),
    })
}

/// Whether `y` is `x` with `t` consecutive bits removed.
pub(crate) fn is_burst_of(x: &BitSeq, y: &BitSeq, t: usize) -> bool {
    if t == 0 || x.len() != y.len() + t {
        return false;
    }
    let len = y.len();
    let prefix = (1..=len).take_while(|&i| x.bit(i) == y.bit(i)).count();
    let suffix = (0..len)
        .take_while(|&j| x.bit(x.len() - j) == y.bit(len - j))
        .count();
    prefix + suffix >= len
}

/// Whether `y` is `x` with two adjacent length-`t` blocks exchanged.
fn is_block_swap(x: &BitSeq, y: &BitSeq, t: usize) -> bool {
    let n = x.len();
    if y.len() != n || 2 * t > n {
        return false;
    }
    let Some(first) = (1..=n).find(|&i| x.bit(i) != y.bit(i)) else {
        return false;
    };
    let last = (1..=n)
        .rev()
        .find(|&i| x.bit(i) != y.bit(i))
        .expect("differs");
    if last + 1 - first > 2 * t {
        return false;
    }
    let lo = (last + 1).saturating_sub(2 * t).max(1);
    let hi = first.min(n + 1 - 2 * t);
    (lo..=hi).any(|k| x.transpose_block(t, k).expect("in range") == *y)
}

fn check_size(s: &BallSet, cap: usize) -> Result<()> {
    if s.len() > cap {
        Err(Error::BallCap { cap })
    } else {
        Ok(())
    }
}

/// Words obtained by deleting `t` consecutive bits (plus `x` when asked).
fn deletions(x: &BitSeq, t: usize, with_self: bool) -> BallSet {
    let mut s = BallSet::new();
    if with_self {
        s.insert(x.clone());
    }
    if t <= x.len() {
        for k in 1..=x.len() - t + 1 {
            s.insert(x.delete_block(t, k).expect("in range"));
        }
    }
    s
}

fn adjacent_swaps(x: &BitSeq, with_self: bool) -> BallSet {
    let mut s = BallSet::new();
    if with_self {
        s.insert(x.clone());
    }
    for k in 1..x.len() {
        if x.bit(k) != x.bit(k + 1) {
            s.insert(x.transpose(k).expect("in range"));
        }
    }
    s
}

fn block_swaps(x: &BitSeq, b: usize) -> BallSet {
    let mut s = BallSet::singleton(x.clone());
    if 2 * b <= x.len() {
        for k in 1..=x.len() + 1 - 2 * b {
            s.insert(x.transpose_block(b, k).expect("in range"));
        }
    }
    s
}

/// Breadth-first closure under at most `ell` adjacent transpositions.
fn transpositions(x: &BitSeq, ell: usize, cap: usize) -> Result<BallSet> {
    let mut seen = BallSet::singleton(x.clone());
    let mut frontier = vec![x.clone()];
    for _ in 0..ell {
        let mut next = Vec::new();
        for u in &frontier {
            for v in adjacent_swaps(u, false) {
                if seen.insert(v.clone()) {
                    next.push(v);
                }
            }
        }
        check_size(&seen, cap)?;
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(seen)
}

/// Checks that the balls around distinct codewords never meet. The witness
/// is the first collision met when codewords are visited in lexicographic
/// order and each ball is scanned in lexicographic order.
pub fn pairwise_disjoint(code: &Codebook, kind: ErrorBallKind) -> Result<VerificationReport> {
    let start = std::time::Instant::now();
    let mut owner: HashMap<BitSeq, usize> = HashMap::new();
    let mut witness = None;
    'outer: for (i, u) in code.iter().enumerate() {
        for z in ball(u, kind)? {
            match owner.get(&z) {
                Some(&j) if j != i => {
                    witness = Some(Witness {
                        u: code.words()[j].clone(),
                        v: u.clone(),
                        z,
                    });
                    break 'outer;
                }
                Some(_) => {}
                None => {
                    owner.insert(z, i);
                }
            }
        }
    }
    Ok(VerificationReport {
        code_id: format!("codebook(n={}, size={})", code.n(), code.len()),
        ball_kind: kind.to_string(),
        status: if witness.is_none() {
            Status::Pass
        } else {
            Status::Fail
        },
        witness,
        codeword_count: code.len(),
        measured_redundancy: code.redundancy(),
        bound: None,
        wall_time_ms: Some(start.elapsed().as_secs_f64() * 1e3),
    })
}
