//! Permutation and signed-permutation group algebra.
//!
//! Degrees here are tiny (the interesting groups live inside `C2 wr S5`,
//! order 3840), so groups are materialized by breadth-first closure over
//! their generators, capped by [`DEFAULT_ELEMENT_CAP`].

use alloc::borrow::ToOwned;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;

/// Cap on materialized element counts.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// Errors from group construction and materialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    /// Images are not a bijection of `{0, .., d-1}`.
    NotABijection,
    /// Mixed degrees in a generator list or an action.
    DegreeMismatch { expected: usize, got: usize },
    /// Closure would exceed the element cap.
    SizeLimit { cap: usize },
    /// An operation that needs a non-identity element got the trivial group.
    TrivialGroup,
    /// Cycle notation could not be parsed.
    CycleSyntax(String),
    /// Unknown dT label.
    UnknownLabel(String),
    /// Signed permutations support degree at most 32.
    DegreeTooLarge(usize),
    /// Argument out of its documented range.
    OutOfRange(&'static str),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::NotABijection => write!(f, "images are not a bijection"),
            GroupError::DegreeMismatch { expected, got } => {
                write!(f, "degree mismatch: expected {expected}, got {got}")
            }
            GroupError::SizeLimit { cap } => {
                write!(f, "group closure exceeds element cap {cap}")
            }
            GroupError::TrivialGroup => write!(f, "no non-identity element"),
            GroupError::CycleSyntax(s) => write!(f, "bad cycle notation: {s}"),
            GroupError::UnknownLabel(s) => write!(f, "unknown transitive group label: {s}"),
            GroupError::DegreeTooLarge(d) => {
                write!(f, "signed permutations support degree <= 32, got {d}")
            }
            GroupError::OutOfRange(what) => write!(f, "argument out of range: {what}"),
        }
    }
}

impl core::error::Error for GroupError {}

/// A permutation of `{0, .., d-1}`; `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", CycleNotation(self))
    }
}

/// Formats a permutation in 1-based cycle notation.
pub struct CycleNotation<'a>(pub &'a Perm);

impl fmt::Display for CycleNotation<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.0;
        let mut seen = vec![false; p.degree()];
        let mut wrote = false;
        for start in 0..p.degree() {
            if seen[start] || p.images[start] == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = p.images[i];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &im in &images {
            if im >= d || seen[im] {
                return Err(GroupError::NotABijection);
            }
            seen[im] = true;
        }
        Ok(Perm { images })
    }

    /// Parses 1-based cycle notation like `"(1,2)(3,4,5)"`. Spaces are
    /// allowed, fixed points may be omitted, `"()"` is the identity.
    pub fn from_cycles(s: &str, degree: usize) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || GroupError::CycleSyntax(s.to_owned());
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(bad());
            }
            let close = rest.find(')').ok_or_else(bad)?;
            let body = &rest[1..close];
            rest = &rest[close + 1..];
            if body.is_empty() {
                continue;
            }
            let mut cycle = Vec::new();
            for tok in body.split(',') {
                let n: usize = tok.parse().map_err(|_| bad())?;
                if n == 0 || n > degree {
                    return Err(bad());
                }
                cycle.push(n - 1);
            }
            let mut moved = BTreeSet::new();
            for w in 0..cycle.len() {
                if !moved.insert(cycle[w]) {
                    return Err(bad());
                }
                images[cycle[w]] = cycle[(w + 1) % cycle.len()];
            }
        }
        // cycles must be disjoint from each other too
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im] = i;
        }
        Perm { images }
    }

    /// Number of cycles, counting fixed points.
    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.degree()];
        let mut n = 0;
        for start in 0..self.degree() {
            if !seen[start] {
                n += 1;
                let mut i = start;
                while !seen[i] {
                    seen[i] = true;
                    i = self.images[i];
                }
            }
        }
        n
    }
}

/// `ind(g) = d - #orbits of <g>`; the orbits of a cyclic group are the
/// cycles of its generator.
pub fn malle_index(g: &Perm) -> usize {
    g.degree() - g.cycle_count()
}

/// A subgroup of `S_d` given by generators, with an optional materialized
/// element set.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Option<Vec<Perm>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self, GroupError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            elements: None,
        })
    }

    /// Builds a group from cycle-notation generator strings.
    pub fn from_cycle_strings(degree: usize, gens: &[&str]) -> Result<Self, GroupError> {
        let generators = gens
            .iter()
            .map(|s| Perm::from_cycles(s, degree))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(degree, generators)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// True iff the generators move the points in a single orbit.
    pub fn is_transitive(&self) -> bool {
        if self.degree == 0 {
            return false;
        }
        let mut seen = vec![false; self.degree];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for g in &self.generators {
                for j in [g.apply(i), g.inverse().apply(i)] {
                    if !seen[j] {
                        seen[j] = true;
                        count += 1;
                        stack.push(j);
                    }
                }
            }
        }
        count == self.degree
    }

    /// Materializes the full element set (breadth-first closure), caching it.
    pub fn materialize(&mut self, cap: usize) -> Result<&[Perm], GroupError> {
        if self.elements.is_none() {
            let elems = closure(
                Perm::identity(self.degree),
                &self.generators,
                |a, b| a.compose(b),
                cap,
            )?;
            self.elements = Some(elems);
        }
        Ok(self.elements.as_deref().unwrap())
    }

    /// The cached element set, if `materialize` has run.
    pub fn elements(&self) -> Option<&[Perm]> {
        self.elements.as_deref()
    }

    pub fn order(&mut self, cap: usize) -> Result<usize, GroupError> {
        Ok(self.materialize(cap)?.len())
    }

    /// `(ind(G), a(G))` with `ind(G)` minimal over non-identity elements and
    /// `a(G) = 1/ind(G)`.
    pub fn min_index_and_a(&mut self, cap: usize) -> Result<(usize, Ratio<i64>), GroupError> {
        let elems = self.materialize(cap)?;
        let ind = elems
            .iter()
            .filter(|g| !g.is_identity())
            .map(malle_index)
            .min()
            .ok_or(GroupError::TrivialGroup)?;
        Ok((ind, Ratio::new(1, ind as i64)))
    }
}

/// Breadth-first closure of a generator set under a binary operation.
fn closure<T, F>(identity: T, generators: &[T], op: F, cap: usize) -> Result<Vec<T>, GroupError>
where
    T: Clone + Ord,
    F: Fn(&T, &T) -> T,
{
    let mut known: BTreeSet<T> = BTreeSet::new();
    known.insert(identity.clone());
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in generators {
                let y = op(g, x);
                if known.insert(y.clone()) {
                    if known.len() > cap {
                        return Err(GroupError::SizeLimit { cap });
                    }
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    Ok(known.into_iter().collect())
}

/// True iff every pair of generators commutes (hence the generated group is
/// abelian).
pub fn is_abelian_generated<T, F>(generators: &[T], op: F) -> bool
where
    T: PartialEq,
    F: Fn(&T, &T) -> T,
{
    for (i, a) in generators.iter().enumerate() {
        for b in &generators[i + 1..] {
            if op(a, b) != op(b, a) {
                return false;
            }
        }
    }
    true
}

/// An element of `C2 wr S_d`: a flip vector in `C2^d` and a permutation.
///
/// Multiplication is `(x, s)(y, t) = (x + s·y, st)` where `(s·y)_i =
/// y_{s^-1(i)}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SignedPerm {
    flips: u32,
    perm: Perm,
}

impl SignedPerm {
    pub fn new(flips: u32, perm: Perm) -> Result<Self, GroupError> {
        let d = perm.degree();
        if d > 32 {
            return Err(GroupError::DegreeTooLarge(d));
        }
        let mask = if d == 32 { u32::MAX } else { (1u32 << d) - 1 };
        Ok(SignedPerm {
            flips: flips & mask,
            perm,
        })
    }

    pub fn identity(degree: usize) -> Self {
        SignedPerm {
            flips: 0,
            perm: Perm::identity(degree),
        }
    }

    pub fn degree(&self) -> usize {
        self.perm.degree()
    }

    pub fn flips(&self) -> u32 {
        self.flips
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    /// Index-permutes a bit vector: bit `i` of the result is bit `s^-1(i)`.
    fn permute_mask(s: &Perm, y: u32) -> u32 {
        let mut out = 0u32;
        for j in 0..s.degree() {
            if y & (1 << j) != 0 {
                out |= 1 << s.apply(j);
            }
        }
        out
    }

    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        debug_assert_eq!(self.degree(), other.degree());
        SignedPerm {
            flips: self.flips ^ Self::permute_mask(&self.perm, other.flips),
            perm: self.perm.compose(&other.perm),
        }
    }

    pub fn inverse(&self) -> SignedPerm {
        let pinv = self.perm.inverse();
        SignedPerm {
            flips: Self::permute_mask(&pinv, self.flips),
            perm: pinv,
        }
    }

    /// The same element as a permutation of `2d` points, pairing `i` with
    /// `i + d`. Used to cross-validate the split encoding.
    pub fn to_double_perm(&self) -> Perm {
        let d = self.degree();
        let mut images = vec![0usize; 2 * d];
        for j in 0..d {
            let i = self.perm.apply(j);
            let flip = (self.flips >> i) & 1;
            for s in 0..2 {
                images[j + d * s] = i + d * ((s ^ flip as usize) & 1);
            }
        }
        Perm { images }
    }
}

/// A CM-type mask: bit `i` selects one embedding from the `i`-th conjugate
/// pair.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct CMTypeMask {
    pub degree: usize,
    pub bits: u32,
}

impl CMTypeMask {
    pub fn new(degree: usize, bits: u32) -> Result<Self, GroupError> {
        if degree > 32 {
            return Err(GroupError::DegreeTooLarge(degree));
        }
        let mask = if degree == 32 {
            u32::MAX
        } else {
            (1u32 << degree) - 1
        };
        Ok(CMTypeMask {
            degree,
            bits: bits & mask,
        })
    }

    /// All `2^d` masks of one degree.
    pub fn all(degree: usize) -> impl Iterator<Item = CMTypeMask> {
        (0..(1u32 << degree)).map(move |bits| CMTypeMask { degree, bits })
    }
}

/// Generators of `C2 wr G` inside the signed-permutation group: one flip of
/// the first coordinate plus the generators of `G` with no flips.
///
/// The closure has order `2^d * |G|`; `cap` bounds that materialization.
pub fn wreath_c2(g: &mut PermGroup, cap: usize) -> Result<Vec<SignedPerm>, GroupError> {
    let d = g.degree();
    if d > 32 {
        return Err(GroupError::DegreeTooLarge(d));
    }
    let order = g.order(cap)?;
    let full = (1usize << d)
        .checked_mul(order)
        .ok_or(GroupError::SizeLimit { cap })?;
    if full > cap {
        return Err(GroupError::SizeLimit { cap });
    }
    let mut gens = vec![SignedPerm::new(1, Perm::identity(d))?];
    for p in g.generators() {
        gens.push(SignedPerm::new(0, p.clone())?);
    }
    Ok(gens)
}

/// Materializes the closure of signed-permutation generators.
pub fn signed_closure(
    generators: &[SignedPerm],
    cap: usize,
) -> Result<Vec<SignedPerm>, GroupError> {
    let d = match generators.first() {
        Some(g) => g.degree(),
        None => return Ok(vec![]),
    };
    for g in generators {
        if g.degree() != d {
            return Err(GroupError::DegreeMismatch {
                expected: d,
                got: g.degree(),
            });
        }
    }
    closure(
        SignedPerm::identity(d),
        generators,
        |a, b| a.compose(b),
        cap,
    )
}

/// Orbit size of a CM-type mask under the signed action
/// `((x, s)·m)_i = x_i XOR m_{s^-1(i)}`.
pub fn cm_type_orbit(generators: &[SignedPerm], mask: CMTypeMask) -> Result<usize, GroupError> {
    for g in generators {
        if g.degree() != mask.degree {
            return Err(GroupError::DegreeMismatch {
                expected: mask.degree,
                got: g.degree(),
            });
        }
    }
    let act = |g: &SignedPerm, m: u32| -> u32 { g.flips ^ SignedPerm::permute_mask(&g.perm, m) };
    let mut seen = BTreeSet::new();
    seen.insert(mask.bits);
    let mut stack = vec![mask.bits];
    while let Some(m) = stack.pop() {
        for g in generators {
            let next = act(g, m);
            if seen.insert(next) {
                stack.push(next);
            }
        }
    }
    Ok(seen.len())
}

/// Evaluates the reflex-degree product `2^v * [G:S]` for a report
/// cross-check. `v` must lie in `1..=d`.
pub fn reflex_degree_check(v: u32, degree: usize, s_index: u64) -> Result<u64, GroupError> {
    if v == 0 || v as usize > degree {
        return Err(GroupError::OutOfRange("v must satisfy 1 <= v <= d"));
    }
    if s_index == 0 {
        return Err(GroupError::OutOfRange("subgroup index must be positive"));
    }
    Ok((1u64 << v) * s_index)
}

/// The transitive subgroups of `S_d` for `2 <= d <= 5` in the standard dT
/// labeling, as hard-coded generator lists.
pub const TRANSITIVE_LABELS: [&str; 13] = [
    "2T1", "3T1", "3T2", "4T1", "4T2", "4T3", "4T4", "4T5", "5T1", "5T2", "5T3", "5T4", "5T5",
];

/// Generator strings for a dT label.
pub fn transitive_group_generators(label: &str) -> Option<(usize, &'static [&'static str])> {
    Some(match label {
        "2T1" => (2, &["(1,2)"]),
        "3T1" => (3, &["(1,2,3)"]),
        "3T2" => (3, &["(1,2,3)", "(1,2)"]),
        "4T1" => (4, &["(1,2,3,4)"]),
        "4T2" => (4, &["(1,2)(3,4)", "(1,3)(2,4)"]),
        "4T3" => (4, &["(1,2,3,4)", "(1,3)"]),
        "4T4" => (4, &["(1,2,3)", "(2,3,4)"]),
        "4T5" => (4, &["(1,2,3,4)", "(1,2)"]),
        "5T1" => (5, &["(1,2,3,4,5)"]),
        "5T2" => (5, &["(1,2,3,4,5)", "(2,5)(3,4)"]),
        "5T3" => (5, &["(1,2,3,4,5)", "(1,2,4,3)"]),
        "5T4" => (5, &["(1,2,3,4,5)", "(1,2,3)"]),
        "5T5" => (5, &["(1,2,3,4,5)", "(1,2)"]),
        _ => return None,
    })
}

/// A common name (`C3`, `S5`, ...) for each dT label.
pub fn transitive_group_name(label: &str) -> Option<&'static str> {
    Some(match label {
        "2T1" => "C2",
        "3T1" => "C3",
        "3T2" => "S3",
        "4T1" => "C4",
        "4T2" => "V4",
        "4T3" => "D4",
        "4T4" => "A4",
        "4T5" => "S4",
        "5T1" => "C5",
        "5T2" => "D5",
        "5T3" => "F5",
        "5T4" => "A5",
        "5T5" => "S5",
        _ => return None,
    })
}

/// Resolves a dT label (or common name like `"S3"`) to a group.
pub fn transitive_group(label: &str) -> Result<PermGroup, GroupError> {
    let canonical = if transitive_group_generators(label).is_some() {
        label.to_owned()
    } else {
        match TRANSITIVE_LABELS
            .iter()
            .find(|l| transitive_group_name(l) == Some(label))
        {
            Some(l) => (*l).to_owned(),
            None => return Err(GroupError::UnknownLabel(label.to_owned())),
        }
    };
    let (d, gens) =
        transitive_group_generators(&canonical).ok_or(GroupError::UnknownLabel(canonical))?;
    PermGroup::from_cycle_strings(d, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, d: usize) -> Perm {
        Perm::from_cycles(s, d).unwrap()
    }

    #[test]
    fn malle_index_examples() {
        assert_eq!(malle_index(&Perm::identity(3)), 0);
        assert_eq!(malle_index(&p("(1,2)", 3)), 1);
        assert_eq!(malle_index(&p("(1,2,3,4,5)", 5)), 4);
    }

    #[test]
    fn min_index_examples() {
        let mut s5 = transitive_group("5T5").unwrap();
        let (ind, a) = s5.min_index_and_a(DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(ind, 1);
        assert_eq!(a, Ratio::new(1, 1));

        let mut c3 = transitive_group("3T1").unwrap();
        let (ind, a) = c3.min_index_and_a(DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(ind, 2);
        assert_eq!(a, Ratio::new(1, 2));

        let mut c2 = transitive_group("2T1").unwrap();
        assert_eq!(c2.min_index_and_a(DEFAULT_ELEMENT_CAP).unwrap().0, 1);

        let mut trivial = PermGroup::new(3, vec![]).unwrap();
        assert_eq!(
            trivial.min_index_and_a(DEFAULT_ELEMENT_CAP),
            Err(GroupError::TrivialGroup)
        );
    }

    #[test]
    fn transitivity_examples() {
        let g = PermGroup::from_cycle_strings(3, &["(1,2)"]).unwrap();
        assert!(!g.is_transitive());
        let g = PermGroup::from_cycle_strings(3, &["(1,2,3)"]).unwrap();
        assert!(g.is_transitive());
        let g = PermGroup::from_cycle_strings(5, &["(1,2)", "(1,2,3,4,5)"]).unwrap();
        assert!(g.is_transitive());
    }

    #[test]
    fn group_orders() {
        for (label, order) in [
            ("2T1", 2),
            ("3T1", 3),
            ("3T2", 6),
            ("4T1", 4),
            ("4T2", 4),
            ("4T3", 8),
            ("4T4", 12),
            ("4T5", 24),
            ("5T1", 5),
            ("5T2", 10),
            ("5T3", 20),
            ("5T4", 60),
            ("5T5", 120),
        ] {
            let mut g = transitive_group(label).unwrap();
            assert_eq!(g.order(DEFAULT_ELEMENT_CAP).unwrap(), order, "{label}");
            assert!(g.is_transitive(), "{label}");
        }
    }

    #[test]
    fn wreath_orders() {
        for (label, order) in [("2T1", 8), ("3T2", 48), ("5T1", 160)] {
            let mut g = transitive_group(label).unwrap();
            let d = g.degree();
            let gens = wreath_c2(&mut g, DEFAULT_ELEMENT_CAP).unwrap();
            let w = signed_closure(&gens, DEFAULT_ELEMENT_CAP).unwrap();
            assert_eq!(w.len(), order, "{label}");
            assert_eq!(w.len(), (1 << d) * g.order(DEFAULT_ELEMENT_CAP).unwrap());
        }
    }

    #[test]
    fn wreath_non_abelian() {
        for label in TRANSITIVE_LABELS {
            let mut g = transitive_group(label).unwrap();
            let gens = wreath_c2(&mut g, DEFAULT_ELEMENT_CAP).unwrap();
            assert!(
                !is_abelian_generated(&gens, |a, b| a.compose(b)),
                "{label}"
            );
        }
        // the flip subgroup alone is abelian
        let flips: Vec<SignedPerm> = (0..3)
            .map(|i| SignedPerm::new(1 << i, Perm::identity(3)).unwrap())
            .collect();
        assert!(is_abelian_generated(&flips, |a, b| a.compose(b)));
    }

    #[test]
    fn orbit_examples() {
        let mut c2 = transitive_group("2T1").unwrap();
        let gens = wreath_c2(&mut c2, DEFAULT_ELEMENT_CAP).unwrap();
        for mask in CMTypeMask::all(2) {
            assert_eq!(cm_type_orbit(&gens, mask).unwrap(), 4);
        }
        // trivial group fixes every mask
        let trivial: Vec<SignedPerm> = vec![SignedPerm::identity(4)];
        assert_eq!(
            cm_type_orbit(&trivial, CMTypeMask::new(4, 0b1010).unwrap()).unwrap(),
            1
        );
        // flips alone act transitively on masks
        let flips: Vec<SignedPerm> = (0..3)
            .map(|i| SignedPerm::new(1 << i, Perm::identity(3)).unwrap())
            .collect();
        assert_eq!(
            cm_type_orbit(&flips, CMTypeMask::new(3, 0).unwrap()).unwrap(),
            8
        );
    }

    #[test]
    fn orbit_full_suite() {
        for label in TRANSITIVE_LABELS {
            let mut g = transitive_group(label).unwrap();
            let d = g.degree();
            let gens = wreath_c2(&mut g, DEFAULT_ELEMENT_CAP).unwrap();
            for mask in CMTypeMask::all(d) {
                assert_eq!(cm_type_orbit(&gens, mask).unwrap(), 1 << d, "{label}");
            }
        }
    }

    #[test]
    fn orbit_divides_group_order() {
        // orbit-stabilizer for a proper subgroup of the wreath product
        let gens = vec![
            SignedPerm::new(0b1, p("(1,2,3)", 3)).unwrap(),
            SignedPerm::new(0b110, Perm::identity(3)).unwrap(),
        ];
        let w = signed_closure(&gens, DEFAULT_ELEMENT_CAP).unwrap();
        for mask in CMTypeMask::all(3) {
            let orbit = cm_type_orbit(&gens, mask).unwrap();
            assert!(orbit <= 8);
            assert_eq!(w.len() % orbit, 0);
        }
    }

    #[test]
    fn reflex_degree_examples() {
        assert_eq!(reflex_degree_check(2, 2, 1).unwrap(), 4);
        assert_eq!(reflex_degree_check(1, 1, 1).unwrap(), 2);
        assert_eq!(reflex_degree_check(3, 3, 2).unwrap(), 16);
        assert!(reflex_degree_check(0, 2, 1).is_err());
        assert!(reflex_degree_check(3, 2, 1).is_err());
    }

    #[test]
    fn closure_is_a_group() {
        let mut d4 = transitive_group("4T3").unwrap();
        let elems: Vec<Perm> = d4.materialize(DEFAULT_ELEMENT_CAP).unwrap().to_vec();
        assert!(elems.iter().any(|g| g.is_identity()));
        for a in &elems {
            assert!(elems.contains(&a.inverse()));
            for b in &elems {
                assert!(elems.contains(&a.compose(b)));
            }
        }
        // |G| divides d!
        assert_eq!(24 % elems.len(), 0);
    }

    #[test]
    fn signed_closure_divides_full_wreath() {
        let gens = vec![
            SignedPerm::new(0b11, p("(1,2)", 2)).unwrap(),
            SignedPerm::new(0b01, Perm::identity(2)).unwrap(),
        ];
        let w = signed_closure(&gens, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!((4 * 2) % w.len(), 0);
        for a in &w {
            assert!(w.contains(&a.inverse()));
        }
    }

    #[test]
    fn double_perm_is_homomorphism() {
        let a = SignedPerm::new(0b101, p("(1,2,3)", 3)).unwrap();
        let b = SignedPerm::new(0b011, p("(2,3)", 3)).unwrap();
        assert_eq!(
            a.compose(&b).to_double_perm(),
            a.to_double_perm().compose(&b.to_double_perm())
        );
        assert_eq!(
            a.inverse().to_double_perm(),
            a.to_double_perm().inverse()
        );
    }

    #[test]
    fn composition_law_matches_action() {
        // ((x,s)(y,t))·m == (x,s)·((y,t)·m)
        let x = SignedPerm::new(0b100, p("(1,3)", 3)).unwrap();
        let y = SignedPerm::new(0b010, p("(1,2,3)", 3)).unwrap();
        let m = CMTypeMask::new(3, 0b110).unwrap();
        let act = |g: &SignedPerm, m: u32| g.flips() ^ SignedPerm::permute_mask(g.perm(), m);
        assert_eq!(act(&x.compose(&y), m.bits), act(&x, act(&y, m.bits)));
    }

    #[test]
    fn cycle_parser_roundtrip() {
        let g = p("(1,2)(3,4,5)", 5);
        assert_eq!(g.apply(0), 1);
        assert_eq!(g.apply(2), 3);
        assert_eq!(g.apply(4), 2);
        assert!(Perm::from_cycles("(1,2", 2).is_err());
        assert!(Perm::from_cycles("(1,6)", 5).is_err());
        assert!(Perm::from_cycles("(1,2)(2,3)", 3).is_err());
        assert!(Perm::from_cycles("()", 4).unwrap().is_identity());
    }

    #[test]
    fn a_of_symmetric_groups_is_one() {
        for label in ["2T1", "3T2", "4T5", "5T5"] {
            let mut g = transitive_group(label).unwrap();
            let (ind, _) = g.min_index_and_a(DEFAULT_ELEMENT_CAP).unwrap();
            assert_eq!(ind, 1, "{label}");
        }
    }
}
