//! Exhaustive rotation-system search for self-dual embeddings of complete
//! bipartite graphs.
//!
//! The rotation of the lowest vertex is pinned to the sorted neighbor order
//! (any embedding can be relabeled into this form), and every other vertex
//! ranges over the `(deg-1)!` cyclic orders that fix its smallest neighbor
//! first. Leaves are enumerated in lexicographic order, so the first find
//! is canonical; a fixed block decomposition over the first free vertex's
//! choice lets independent workers cover disjoint slices and merge
//! deterministically.

use alloc::vec;
use alloc::vec::Vec;
use thiserror::Error;

use crate::rotation::RotationSystem;
use crate::surface::{self_dual_witness, trace_faces, SurfaceMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("bipartite search requires even part sizes of at least 4, got {part}={value}")]
    InvalidPart { part: &'static str, value: usize },
    #[error("block {block} is out of range for {block_count} blocks")]
    BadBlock { block: u64, block_count: u64 },
}

/// Result of a (possibly partial) search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A self-dual map at the target genus, with its position in the
    /// enumeration order for cross-block comparison.
    Found { map: SurfaceMap, index: u64 },
    /// No map found. `space_exhausted` distinguishes a completed
    /// enumeration from one stopped by the budget.
    NotFound { examined: u64, space_exhausted: bool },
    /// `K_{6,6}` admits no orientable self-dual embedding.
    Nonexistent,
}

/// Searches rotation systems of `K_{r,s}` for a self-dual embedding of
/// genus `(r-2)(s-2)/4`, examining at most `budget` rotation systems when a
/// budget is given.
pub fn search_self_dual_bipartite(
    r: usize,
    s: usize,
    budget: Option<u64>,
) -> Result<SearchOutcome, SearchError> {
    search_self_dual_bipartite_block(r, s, budget, 0, 1)
}

/// Block `block` of `block_count` of the same search: only subtrees whose
/// first free vertex picks a permutation index congruent to `block` are
/// visited. Outcomes from a full decomposition merge via
/// [`merge_block_outcomes`].
pub fn search_self_dual_bipartite_block(
    r: usize,
    s: usize,
    budget: Option<u64>,
    block: u64,
    block_count: u64,
) -> Result<SearchOutcome, SearchError> {
    if r % 2 != 0 || r < 4 {
        return Err(SearchError::InvalidPart {
            part: "r",
            value: r,
        });
    }
    if s % 2 != 0 || s < 4 {
        return Err(SearchError::InvalidPart {
            part: "s",
            value: s,
        });
    }
    if block_count == 0 || block >= block_count {
        return Err(SearchError::BadBlock { block, block_count });
    }
    if r == 6 && s == 6 {
        return Ok(SearchOutcome::Nonexistent);
    }

    let n = r + s;
    let neighbors: Vec<Vec<usize>> = (0..n)
        .map(|v| if v < r { (r..n).collect() } else { (0..r).collect() })
        .collect();
    let tails: Vec<Vec<Vec<usize>>> = (1..n)
        .map(|v| permutations_lex(&neighbors[v][1..]))
        .collect();
    let mut expected_census: Vec<usize> = (0..n).map(|v| neighbors[v].len()).collect();
    expected_census.sort_unstable();

    let ctx = SearchContext {
        n,
        neighbors,
        tails,
        target_genus: (r - 2) * (s - 2) / 4,
        expected_census,
        block,
        block_count,
    };
    let mut state = SearchState {
        rotations: vec![Vec::new(); n],
        examined: 0,
        budget,
        index: 0,
        found: None,
        stopped_by_budget: false,
    };
    state.rotations[0] = ctx.neighbors[0].clone();
    descend(&ctx, &mut state, 1);

    Ok(match state.found {
        Some((map, index)) => SearchOutcome::Found { map, index },
        None => SearchOutcome::NotFound {
            examined: state.examined,
            space_exhausted: !state.stopped_by_budget,
        },
    })
}

struct SearchContext {
    n: usize,
    neighbors: Vec<Vec<usize>>,
    /// Per free vertex `v` (index `v - 1`): the lexicographic permutations
    /// of its neighbors past the smallest.
    tails: Vec<Vec<Vec<usize>>>,
    target_genus: usize,
    expected_census: Vec<usize>,
    block: u64,
    block_count: u64,
}

struct SearchState {
    rotations: Vec<Vec<usize>>,
    examined: u64,
    budget: Option<u64>,
    index: u64,
    found: Option<(SurfaceMap, u64)>,
    stopped_by_budget: bool,
}

fn descend(ctx: &SearchContext, state: &mut SearchState, vertex: usize) {
    if vertex == ctx.n {
        if let Some(limit) = state.budget {
            if state.examined >= limit {
                state.stopped_by_budget = true;
                return;
            }
        }
        state.examined += 1;
        let leaf_index = state.index;
        state.index += 1;
        let rot = RotationSystem::new_unchecked(state.rotations.clone());
        let map = trace_faces(&rot);
        if map.genus() == ctx.target_genus
            && face_census_matches(&map, &ctx.expected_census)
            && self_dual_witness(&map).is_some()
        {
            state.found = Some((map, leaf_index));
        }
        return;
    }
    let choices = &ctx.tails[vertex - 1];
    for (choice_idx, tail) in choices.iter().enumerate() {
        if vertex == 1 && (choice_idx as u64) % ctx.block_count != ctx.block {
            // Skip the subtree but keep the global leaf index aligned.
            state.index += subtree_leaves(ctx, vertex);
            continue;
        }
        let mut rotation = Vec::with_capacity(tail.len() + 1);
        rotation.push(ctx.neighbors[vertex][0]);
        rotation.extend_from_slice(tail);
        state.rotations[vertex] = rotation;
        descend(ctx, state, vertex + 1);
        state.rotations[vertex].clear();
        if state.found.is_some() || state.stopped_by_budget {
            return;
        }
    }
}

/// Leaves below one fixed choice at `vertex`: the product of the deeper
/// vertices' choice counts.
fn subtree_leaves(ctx: &SearchContext, vertex: usize) -> u64 {
    ctx.tails[vertex..].iter().map(|t| t.len() as u64).product()
}

fn face_census_matches(map: &SurfaceMap, expected_sorted: &[usize]) -> bool {
    if map.face_count() != expected_sorted.len() {
        return false;
    }
    let mut lengths: Vec<usize> = map.faces().iter().map(|f| f.len()).collect();
    lengths.sort_unstable();
    lengths == expected_sorted
}

/// All permutations of `items` in lexicographic order.
fn permutations_lex(items: &[usize]) -> Vec<Vec<usize>> {
    let mut remaining: Vec<usize> = items.to_vec();
    remaining.sort_unstable();
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(items.len());
    build_permutations(&mut remaining, &mut prefix, &mut out);
    out
}

fn build_permutations(
    remaining: &mut Vec<usize>,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if remaining.is_empty() {
        out.push(prefix.clone());
        return;
    }
    for i in 0..remaining.len() {
        let item = remaining.remove(i);
        prefix.push(item);
        build_permutations(remaining, prefix, out);
        prefix.pop();
        remaining.insert(i, item);
    }
}

/// Combines the outcomes of a full block decomposition: the find with the
/// smallest enumeration index wins, matching what a serial scan returns.
pub fn merge_block_outcomes(outcomes: impl IntoIterator<Item = SearchOutcome>) -> SearchOutcome {
    let mut best: Option<(SurfaceMap, u64)> = None;
    let mut examined = 0;
    let mut space_exhausted = true;
    let mut nonexistent = false;
    for outcome in outcomes {
        match outcome {
            SearchOutcome::Found { map, index } => {
                if best.as_ref().is_none_or(|(_, i)| index < *i) {
                    best = Some((map, index));
                }
            }
            SearchOutcome::NotFound {
                examined: e,
                space_exhausted: s,
            } => {
                examined += e;
                space_exhausted &= s;
            }
            SearchOutcome::Nonexistent => nonexistent = true,
        }
    }
    match best {
        Some((map, index)) => SearchOutcome::Found { map, index },
        None if nonexistent => SearchOutcome::Nonexistent,
        None => SearchOutcome::NotFound {
            examined,
            space_exhausted,
        },
    }
}
