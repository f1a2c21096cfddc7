//! Explicit self-dual rotation schemes for complete graphs on `4r+1` and
//! `4s` vertices, the four code-family parameter formulas, and the
//! face-sequence oracles the generated maps are validated against.
//!
//! Both schemes are additive: row 0 lists offsets from a group (cyclic
//! `Z_n` for `4r+1` vertices, `Z_2^sigma x Z_t` for `4s = 2^sigma * t`
//! vertices) and every other row is row 0 translated by the vertex label.
//! The traced embedding has `n` faces of length `n-1`, one per group
//! element, each pair of faces sharing exactly one edge.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use thiserror::Error;

use crate::rotation::RotationSystem;
use crate::surface::{trace_faces, FaceWalk, SurfaceMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("cannot parse family spec {input:?}; expected class1:r=<int>, class2:s=<int>, class3:r=<int>,s=<int>, or class4:r=<int>,s=<int>")]
    Parse { input: String },
    #[error("class1 requires r >= 1, got r={r}")]
    Class1Range { r: u64 },
    #[error("class2 requires s >= 2, got s={s}")]
    Class2Range { s: u64 },
    #[error("class3 requires r and s both divisible by 4 and at least 4, got r={r}, s={s}")]
    Class3Range { r: u64, s: u64 },
    #[error("no orientable self-dual embedding of K_6,6 exists")]
    BipartiteNonexistent,
    #[error("class4 requires r >= 2 and s >= 2, got r={r}, s={s}")]
    Class4Range { r: u64, s: u64 },
    #[error("family parameter {param}={value} exceeds the supported limit {MAX_FAMILY_PARAM}")]
    TooLarge { param: &'static str, value: u64 },
}

/// Bound on family parameters; keeps every formula inside u64.
pub const MAX_FAMILY_PARAM: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("the K_4r+1 scheme requires r >= 1, got r={r}")]
    RankTooSmall { r: usize },
    #[error("the K_4s scheme requires the vertex count to be divisible by 4, got {n}")]
    NotMultipleOfFour { n: usize },
    #[error("the K_4s scheme requires at least 8 vertices, got {n}")]
    TooFewVertices { n: usize },
    #[error("no involution ordering validated within budget; face length census of the canonical attempt: {census:?}")]
    ValidationFailed { census: Vec<(usize, usize)> },
}

/// One of the four code families, with its integer parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    /// Complete graph on `4r+1` vertices, `r >= 1`.
    Class1 { r: u64 },
    /// Complete graph on `4s` vertices, `s >= 2`.
    Class2 { s: u64 },
    /// Complete bipartite graph `K_{r,s}`, `r` and `s` divisible by 4.
    Class3 { r: u64, s: u64 },
    /// Complete tripartite graph `K_{rs,s,s}`, `r >= 2`, `s >= 2`.
    Class4 { r: u64, s: u64 },
}

/// Code parameters predicted by a family formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PredictedParams {
    pub n: u64,
    pub k: u64,
    pub d: u64,
}

impl FamilySpec {
    /// Parses the spec grammar: `class1:r=<int>`, `class2:s=<int>`,
    /// `class3:r=<int>,s=<int>`, `class4:r=<int>,s=<int>`.
    pub fn parse(input: &str) -> Result<Self, FamilyError> {
        let err = || FamilyError::Parse {
            input: input.to_string(),
        };
        let (class, params) = input.split_once(':').ok_or_else(err)?;
        let fields: Vec<(&str, u64)> = params
            .split(',')
            .map(|field| {
                let (key, value) = field.split_once('=').ok_or_else(err)?;
                Ok((key, value.parse::<u64>().map_err(|_| err())?))
            })
            .collect::<Result<_, FamilyError>>()?;
        match (class, fields.as_slice()) {
            ("class1", [("r", r)]) => Ok(FamilySpec::Class1 { r: *r }),
            ("class2", [("s", s)]) => Ok(FamilySpec::Class2 { s: *s }),
            ("class3", [("r", r), ("s", s)]) => Ok(FamilySpec::Class3 { r: *r, s: *s }),
            ("class4", [("r", r), ("s", s)]) => Ok(FamilySpec::Class4 { r: *r, s: *s }),
            _ => Err(err()),
        }
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        let params: &[(&'static str, u64)] = match self {
            FamilySpec::Class1 { r } => &[("r", *r)],
            FamilySpec::Class2 { s } => &[("s", *s)],
            FamilySpec::Class3 { r, s } | FamilySpec::Class4 { r, s } => {
                &[("r", *r), ("s", *s)]
            }
        };
        for &(param, value) in params {
            if value > MAX_FAMILY_PARAM {
                return Err(FamilyError::TooLarge { param, value });
            }
        }
        match *self {
            FamilySpec::Class1 { r } if r < 1 => Err(FamilyError::Class1Range { r }),
            FamilySpec::Class2 { s } if s < 2 => Err(FamilyError::Class2Range { s }),
            FamilySpec::Class3 { r: 6, s: 6 } => Err(FamilyError::BipartiteNonexistent),
            FamilySpec::Class3 { r, s } if r % 4 != 0 || s % 4 != 0 || r < 4 || s < 4 => {
                Err(FamilyError::Class3Range { r, s })
            }
            FamilySpec::Class4 { r, s } if r < 2 || s < 2 => {
                Err(FamilyError::Class4Range { r, s })
            }
            _ => Ok(()),
        }
    }

    pub fn predicted_params(&self) -> Result<PredictedParams, FamilyError> {
        self.validate()?;
        let p = match *self {
            FamilySpec::Class1 { r } => PredictedParams {
                n: 2 * r * (4 * r + 1),
                k: 2 * r * (4 * r - 3),
                d: 3,
            },
            FamilySpec::Class2 { s } => PredictedParams {
                n: 2 * s * (4 * s - 1),
                k: 2 * (s - 1) * (4 * s - 1),
                d: 3,
            },
            FamilySpec::Class3 { r, s } => PredictedParams {
                n: r * s,
                k: (r - 2) * (s - 2) / 2,
                d: 4,
            },
            FamilySpec::Class4 { r, s } => PredictedParams {
                n: (2 * r + 1) * s * s,
                k: (r * s - 2) * (s - 1),
                d: 3,
            },
        };
        debug_assert!(p.k <= p.n);
        Ok(p)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Class1 { r } => write!(f, "class1:r={r}"),
            FamilySpec::Class2 { s } => write!(f, "class2:s={s}"),
            FamilySpec::Class3 { r, s } => write!(f, "class3:r={r},s={s}"),
            FamilySpec::Class4 { r, s } => write!(f, "class4:r={r},s={s}"),
        }
    }
}

/// Evaluates the family formula for `spec`.
pub fn predicted_params(spec: &FamilySpec) -> Result<PredictedParams, FamilyError> {
    spec.predicted_params()
}

/// Whether `K_{r,s}` admits an orientable self-dual embedding: both parts
/// even and greater than 2, except `K_{6,6}`.
pub fn self_dual_bipartite_exists(r: u64, s: u64) -> bool {
    r % 2 == 0 && s % 2 == 0 && r > 2 && s > 2 && !(r == 6 && s == 6)
}

/// Rotation scheme for the complete graph on `n = 4r+1` vertices over
/// `Z_n`: row 0 reads `1, -2, -1, 2, 3, -4, -3, 4, ...` up to `2r`, and row
/// `i` is row 0 translated by `i`.
pub fn scheme_k4r1(r: usize) -> Result<RotationSystem, SchemeError> {
    if r < 1 {
        return Err(SchemeError::RankTooSmall { r });
    }
    let n = 4 * r + 1;
    let mut row0 = Vec::with_capacity(n - 1);
    for k in 1..=r {
        row0.push(2 * k - 1);
        row0.push(n - 2 * k);
        row0.push(n - (2 * k - 1));
        row0.push(2 * k);
    }
    let rotations = (0..n)
        .map(|i| row0.iter().map(|&x| (x + i) % n).collect())
        .collect();
    Ok(RotationSystem::new_unchecked(rotations))
}

/// Predicted face boundaries for [`scheme_k4r1`]: for each vertex `i`, the
/// cyclic vertex sequence `i, 1+i, 3+i, 2+i, i, 5+i, 7+i, 6+i, ...` built
/// from blocks `i, (2k-1)+i, (4k-1)+i, 2k+i` for `k = 1..=r`.
///
/// Face `i` is the orbit of the directed edge from `i` to `i+1`; tracing the
/// scheme must reproduce these sequences up to cyclic rotation.
pub fn expected_faces_k4r1(r: usize) -> Vec<Vec<usize>> {
    assert!(r >= 1, "expected_faces_k4r1 requires r >= 1");
    let n = 4 * r + 1;
    (0..n)
        .map(|i| {
            let mut seq = Vec::with_capacity(4 * r);
            for k in 1..=r {
                seq.push(i);
                seq.push((2 * k - 1 + i) % n);
                seq.push((4 * k - 1 + i) % n);
                seq.push((2 * k + i) % n);
            }
            seq
        })
        .collect()
}

/// The abelian group `Z_2^sigma x Z_t` labeling the vertices of the `K_4s`
/// scheme, with elements encoded as integers `cyc + t * two`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Group {
    sigma: u32,
    t: usize,
}

/// An element of [`Group`] split into its components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupElement {
    /// Component in `Z_2^sigma`, packed as a bit vector.
    pub two_part: u64,
    /// Residue mod `t`.
    pub cyc_part: usize,
}

impl Group {
    /// Factors `n = 2^sigma * t` with `t` odd; requires `sigma >= 2`.
    pub fn for_order(n: usize) -> Option<Self> {
        if n == 0 || n % 4 != 0 {
            return None;
        }
        let sigma = n.trailing_zeros();
        Some(Self {
            sigma,
            t: n >> sigma,
        })
    }

    pub fn order(&self) -> usize {
        (1usize << self.sigma) * self.t
    }

    pub fn element(&self, label: usize) -> GroupElement {
        GroupElement {
            two_part: (label / self.t) as u64,
            cyc_part: label % self.t,
        }
    }

    pub fn label(&self, e: GroupElement) -> usize {
        e.cyc_part + self.t * e.two_part as usize
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ea, eb) = (self.element(a), self.element(b));
        self.label(GroupElement {
            two_part: ea.two_part ^ eb.two_part,
            cyc_part: (ea.cyc_part + eb.cyc_part) % self.t,
        })
    }

    pub fn neg(&self, a: usize) -> usize {
        let e = self.element(a);
        self.label(GroupElement {
            two_part: e.two_part,
            cyc_part: (self.t - e.cyc_part) % self.t,
        })
    }

    /// Order-two elements: trivial cyclic part, nonzero two-part.
    pub fn is_involution(&self, a: usize) -> bool {
        let e = self.element(a);
        e.cyc_part == 0 && e.two_part != 0
    }
}

/// A validated `K_4s` scheme together with the generator choices it used
/// and the face boundaries its embedding realizes.
#[derive(Debug, Clone)]
pub struct K4sScheme {
    pub rotation: RotationSystem,
    /// Predicted vertex sequence of the face through each `(g, g + a_1)`
    /// (or `(g, g + b_1)` when there are no `a` elements), indexed by `g`.
    pub expected_faces: Vec<Vec<usize>>,
    /// Chosen representatives of the inverse pairs, in row order.
    pub a_elements: Vec<usize>,
    /// Involutions in the order used for the tail of row 0.
    pub b_elements: Vec<usize>,
    pub group: Group,
}

/// Budget for the fallback search over involution orderings. The canonical
/// lexicographic choice validates for every tested order, so the search is
/// a guard, not a hot path.
const DEFAULT_B_ORDER_BUDGET: usize = 5040;

/// Rotation scheme for the complete graph on `n = 4s` vertices over
/// `Z_2^sigma x Z_t`. Row 0 interleaves inverse pairs
/// `a_1, -a_2, -a_1, a_2, ...` and ends with the involutions
/// `b_1, ..., b_{2^sigma - 1}`; other rows translate row 0.
///
/// The traced map is validated against the predicted face sequences; if the
/// canonical involution order failed, further orders would be tried up to an
/// internal budget.
pub fn scheme_k4s(n: usize) -> Result<K4sScheme, SchemeError> {
    scheme_k4s_with_budget(n, DEFAULT_B_ORDER_BUDGET)
}

pub fn scheme_k4s_with_budget(n: usize, budget: usize) -> Result<K4sScheme, SchemeError> {
    if n % 4 != 0 {
        return Err(SchemeError::NotMultipleOfFour { n });
    }
    if n < 8 {
        return Err(SchemeError::TooFewVertices { n });
    }
    let group = Group::for_order(n).expect("n divisible by 4 factors with sigma >= 2");

    let involutions: Vec<usize> = (1..n).filter(|&x| group.is_involution(x)).collect();
    // Greedy representative per inverse pair, in label order.
    let mut taken = vec![false; n];
    let mut a_elements = Vec::new();
    for x in (1..n).filter(|&x| !group.is_involution(x)) {
        if !taken[x] {
            a_elements.push(x);
            taken[x] = true;
            taken[group.neg(x)] = true;
        }
    }
    debug_assert_eq!(a_elements.len() % 2, 0);
    debug_assert_eq!(a_elements.len() + a_elements.len() + involutions.len(), n - 1);
    let b_sum = involutions.iter().fold(0, |acc, &b| group.add(acc, b));
    assert_eq!(b_sum, 0, "involutions of Z_2^sigma x Z_t must sum to zero");

    let mut b_order = involutions.clone();
    let mut first_census: Option<Vec<(usize, usize)>> = None;
    let mut attempts = 0;
    loop {
        if attempts >= budget {
            break;
        }
        attempts += 1;
        let rotation = k4s_rows(group, &a_elements, &b_order);
        let expected_faces = k4s_expected_faces(group, &a_elements, &b_order);
        let map = trace_faces(&rotation);
        if k4s_map_is_valid(&map, &expected_faces) {
            return Ok(K4sScheme {
                rotation,
                expected_faces,
                a_elements,
                b_elements: b_order,
                group,
            });
        }
        if first_census.is_none() {
            first_census = Some(face_length_census(&map));
        }
        if !next_permutation(&mut b_order) {
            break;
        }
    }
    Err(SchemeError::ValidationFailed {
        census: first_census.unwrap_or_default(),
    })
}

fn k4s_rows(group: Group, a: &[usize], b: &[usize]) -> RotationSystem {
    let n = group.order();
    let mut row0 = Vec::with_capacity(n - 1);
    for pair in a.chunks_exact(2) {
        row0.push(pair[0]);
        row0.push(group.neg(pair[1]));
        row0.push(group.neg(pair[0]));
        row0.push(pair[1]);
    }
    row0.extend_from_slice(b);
    debug_assert_eq!(row0.len(), n - 1);
    let rotations = (0..n)
        .map(|g| row0.iter().map(|&x| group.add(x, g)).collect())
        .collect();
    RotationSystem::new_unchecked(rotations)
}

/// Face through `(g, g + a_1)`: blocks `g, a_{2k-1}+g, a_{2k-1}+a_{2k}+g,
/// a_{2k}+g`, then `g` followed by the partial sums of the involutions.
fn k4s_expected_faces(group: Group, a: &[usize], b: &[usize]) -> Vec<Vec<usize>> {
    let n = group.order();
    let mut face0 = Vec::with_capacity(n - 1);
    for pair in a.chunks_exact(2) {
        face0.push(0);
        face0.push(pair[0]);
        face0.push(group.add(pair[0], pair[1]));
        face0.push(pair[1]);
    }
    face0.push(0);
    let mut partial = 0;
    for &bl in &b[..b.len() - 1] {
        partial = group.add(partial, bl);
        face0.push(partial);
    }
    debug_assert_eq!(face0.len(), n - 1);
    (0..n)
        .map(|g| face0.iter().map(|&x| group.add(x, g)).collect())
        .collect()
}

fn k4s_map_is_valid(map: &SurfaceMap, expected: &[Vec<usize>]) -> bool {
    let n = map.vertex_count();
    map.face_count() == n
        && map.faces().iter().all(|f| f.len() == n - 1)
        && faces_match_cyclically(map, expected)
}

/// Each predicted sequence must match exactly one traced face up to
/// cyclic rotation.
pub fn faces_match_cyclically(map: &SurfaceMap, expected: &[Vec<usize>]) -> bool {
    if map.face_count() != expected.len() {
        return false;
    }
    let mut matched = vec![false; map.face_count()];
    for want in expected {
        let found = map.faces().iter().enumerate().find(|(i, f)| {
            !matched[*i] && cyclically_equal(&f.vertex_sequence(), want)
        });
        match found {
            Some((i, _)) => matched[i] = true,
            None => return false,
        }
    }
    true
}

/// Whether `a` equals some rotation of `b`.
pub fn cyclically_equal(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len()
        && !a.is_empty()
        && (0..a.len()).any(|shift| (0..a.len()).all(|i| a[i] == b[(i + shift) % b.len()]))
}

fn face_length_census(map: &SurfaceMap) -> Vec<(usize, usize)> {
    let mut census: Vec<(usize, usize)> = Vec::new();
    let mut lengths: Vec<usize> = map.faces().iter().map(FaceWalk::len).collect();
    lengths.sort_unstable();
    for len in lengths {
        match census.last_mut() {
            Some((l, count)) if *l == len => *count += 1,
            _ => census.push((len, 1)),
        }
    }
    census
}

/// Advances `items` to its next lexicographic permutation, returning false
/// after the last one.
fn next_permutation(items: &mut [usize]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let Some(i) = (0..items.len() - 1).rev().find(|&i| items[i] < items[i + 1]) else {
        return false;
    };
    let j = (i + 1..items.len())
        .rev()
        .find(|&j| items[j] > items[i])
        .expect("a successor exists right of a descent");
    items.swap(i, j);
    items[i + 1..].reverse();
    true
}

/// Formats the family string for a membership table row: `n k d family`.
pub fn params_row(spec: &FamilySpec) -> Result<String, FamilyError> {
    let p = spec.predicted_params()?;
    Ok(format!("{} {} {} {spec}", p.n, p.k, p.d))
}
