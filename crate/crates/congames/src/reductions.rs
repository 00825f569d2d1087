//! Local-search reduction gadgets over congestion games.
//!
//! Three constructions, each returning the transformed game together with
//! edge provenance and the kind of solution back-mapping:
//!
//! * [`symmetrize`] turns any positive game into a symmetric one by giving
//!   each player a private tag edge that is free alone and prohibitively
//!   expensive when shared; solutions come back via [`pull_back_symmetric`].
//! * [`split_non_alternating`] rewrites a symmetric positive game into one
//!   whose delay tables are single-signed with an `alpha`-bounded jump, by
//!   splitting every delay step into a positive/negative edge pair whose
//!   tables cancel below the step and sum to the step above it.
//! * [`split_flip`] does the same with sign-flip step tables of constant
//!   absolute value; source delays are doubled first so the halved jumps
//!   stay integral on integral inputs (costs scale by exactly 2).
//!
//! Split outputs keep the states of both games in index-preserving
//! bijection; [`verify_cost_preservation`] machine-checks the per-edge
//! column sums and per-player cost equalities behind that bijection.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GameError;
use crate::game::{CongestionGame, StateProfile, StrategySetsDef};
use crate::rat;
use crate::rational::Rational;

/// What a gadget edge does in its construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GadgetRole {
    /// Constant carrier of the source edge's base delay `d_e(1)`.
    E1,
    /// Positive half of the jump at congestion `k`.
    Plus(usize),
    /// Negative half of the jump at congestion `k`.
    Minus(usize),
    /// Private tag edge of source player `i` (1-based).
    Tag(usize),
}

/// Origin of one transformed-game edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeProvenance {
    /// Source edge id; `None` for tag edges, which have no source edge.
    pub source: Option<String>,
    pub role: GadgetRole,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackMapKind {
    /// States of source and output correspond index-for-index.
    Identity,
    /// Solutions come back by locating each tag edge's unique user.
    TagPullback,
}

/// A transformed game plus everything needed to pull solutions back.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionOutput {
    pub transformed: CongestionGame,
    /// Provenance of every edge introduced by the gadget. Edges absent from
    /// the map (symmetrize keeps the source edges) are carried over as-is.
    pub provenance: BTreeMap<String, EdgeProvenance>,
    pub back_map: BackMapKind,
    /// Costs in the output equal `cost_scale` times the source costs under
    /// the identity bijection (1 here except for the flip split's 2).
    pub cost_scale: Rational,
}

fn require_positive(game: &CongestionGame) -> Result<(), GameError> {
    if !game.classify().positive {
        return Err(GameError::NotPositiveGame);
    }
    Ok(())
}

fn tag_id(player: usize) -> String {
    format!("@tag{}", player + 1)
}

/// Symmetrization gadget. Adds one tag edge per player with delay 0 alone
/// and `D/(1-epsilon)` when shared, `D = sum_e d_e(n)`, and pools the tagged
/// strategy sets into one shared set.
pub fn symmetrize(game: &CongestionGame, epsilon: &Rational) -> Result<ReductionOutput, GameError> {
    require_positive(game)?;
    if !epsilon.is_positive() || epsilon >= &Rational::one() {
        return Err(GameError::EpsilonOutOfRange(epsilon.clone()));
    }
    let n = game.num_players();
    let bound: Rational = game
        .edges()
        .iter()
        .map(|e| e.delays().at(n))
        .sum();
    let shared_delay = &bound / (Rational::one() - epsilon);

    let mut edges: Vec<(String, Vec<Rational>)> = game
        .edges()
        .iter()
        .map(|e| (e.id().to_string(), e.delays().values().to_vec()))
        .collect();
    let mut provenance = BTreeMap::new();
    for i in 0..n {
        let id = tag_id(i);
        let mut delays = vec![shared_delay.clone(); n];
        delays[0] = Rational::zero();
        edges.push((id.clone(), delays));
        provenance.insert(
            id,
            EdgeProvenance {
                source: None,
                role: GadgetRole::Tag(i + 1),
            },
        );
    }

    let mut shared = Vec::new();
    for i in 0..n {
        for strategy in game.strategies_of(i) {
            let mut ids: Vec<String> = strategy
                .edge_indices()
                .iter()
                .map(|&e| game.edges()[e].id().to_string())
                .collect();
            ids.push(tag_id(i));
            shared.push(ids);
        }
    }

    Ok(ReductionOutput {
        transformed: CongestionGame::new(n, edges, StrategySetsDef::Shared(shared))?,
        provenance,
        back_map: BackMapKind::TagPullback,
        cost_scale: Rational::one(),
    })
}

/// Recovers a source-game state from a state of a [`symmetrize`] output by
/// locating, for every source player `i`, the unique output player whose
/// strategy carries tag `i`, and stripping the tag.
///
/// Fails with `AmbiguousAssignment` when some tag is used by zero or several
/// players; uniqueness is only guaranteed at epsilon-equilibria.
pub fn pull_back_symmetric(
    source: &CongestionGame,
    output: &ReductionOutput,
    state_prime: &StateProfile,
) -> Result<StateProfile, GameError> {
    if output.back_map != BackMapKind::TagPullback {
        return Err(GameError::BackMapMismatch);
    }
    let transformed = &output.transformed;
    transformed.validate_state(state_prime)?;
    let n = source.num_players();

    // tag edge index in the transformed game -> source player (0-based)
    let mut tag_of_edge: BTreeMap<usize, usize> = BTreeMap::new();
    for (id, prov) in &output.provenance {
        if let GadgetRole::Tag(i) = prov.role {
            let idx = transformed
                .edge_index(id)
                .ok_or_else(|| GameError::InvalidGame(format!("missing tag edge {id:?}")))?;
            tag_of_edge.insert(idx, i - 1);
        }
    }

    let mut carrier: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (player, &choice) in state_prime.choices().iter().enumerate() {
        let strategy = &transformed.strategies_of(player)[choice];
        let tags: Vec<usize> = strategy
            .edge_indices()
            .iter()
            .filter_map(|e| tag_of_edge.get(e).copied())
            .collect();
        match tags.as_slice() {
            [i] => carrier[*i].push(player),
            _ => {
                return Err(GameError::InvalidState(format!(
                    "player {player}'s strategy carries {} tag edges, expected 1",
                    tags.len()
                )))
            }
        }
    }

    let mut choices = Vec::with_capacity(n);
    for (i, users) in carrier.iter().enumerate() {
        let [j] = users.as_slice() else {
            return Err(GameError::AmbiguousAssignment {
                tag: tag_id(i),
                users: users.len(),
            });
        };
        let strategy = &transformed.strategies_of(*j)[state_prime.choice(*j)];
        let mut stripped: Vec<&str> = strategy
            .edge_indices()
            .iter()
            .filter(|e| !tag_of_edge.contains_key(e))
            .map(|&e| transformed.edges()[e].id())
            .collect();
        stripped.sort_unstable();
        let index = source
            .strategies_of(i)
            .iter()
            .position(|candidate| {
                let mut ids: Vec<&str> = candidate
                    .edge_indices()
                    .iter()
                    .map(|&e| source.edges()[e].id())
                    .collect();
                ids.sort_unstable();
                ids == stripped
            })
            .ok_or_else(|| {
                GameError::InvalidState(format!(
                    "stripped strategy {stripped:?} not available to source player {i}"
                ))
            })?;
        choices.push(index);
    }
    Ok(StateProfile::new(choices))
}

struct GadgetEdge {
    id: String,
    delays: Vec<Rational>,
    source: String,
    role: GadgetRole,
}

/// Splits each source edge into per-jump gadget edges; `make_pair` maps a
/// strictly positive jump at congestion `k` to the (plus, minus) tables.
fn split_edges<F>(game: &CongestionGame, make_pair: F, scale: &Rational) -> Vec<GadgetEdge>
where
    F: Fn(&Rational, usize, usize) -> (Vec<Rational>, Vec<Rational>),
{
    let n = game.num_players();
    let mut out = Vec::new();
    for edge in game.edges() {
        let id = edge.id();
        let base = edge.delays().at(1) * scale;
        if !base.is_zero() {
            out.push(GadgetEdge {
                id: format!("{id}::1"),
                delays: vec![base.clone(); n],
                source: id.to_string(),
                role: GadgetRole::E1,
            });
        }
        for k in 2..=n {
            let jump = (edge.delays().at(k) - edge.delays().at(k - 1)) * scale;
            if jump.is_zero() {
                continue;
            }
            let (plus, minus) = make_pair(&jump, k, n);
            out.push(GadgetEdge {
                id: format!("{id}::{k}+"),
                delays: plus,
                source: id.to_string(),
                role: GadgetRole::Plus(k),
            });
            out.push(GadgetEdge {
                id: format!("{id}::{k}-"),
                delays: minus,
                source: id.to_string(),
                role: GadgetRole::Minus(k),
            });
        }
    }
    out
}

fn assemble_split(
    game: &CongestionGame,
    gadgets: Vec<GadgetEdge>,
    cost_scale: Rational,
) -> Result<ReductionOutput, GameError> {
    // retained gadget ids per source edge, in gadget order
    let mut by_source: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for g in &gadgets {
        by_source.entry(&g.source).or_default().push(&g.id);
    }
    let shared: Vec<Vec<String>> = game
        .strategies_of(0)
        .iter()
        .map(|strategy| {
            strategy
                .edge_indices()
                .iter()
                .flat_map(|&e| {
                    by_source
                        .get(game.edges()[e].id())
                        .into_iter()
                        .flatten()
                        .map(|id| id.to_string())
                })
                .collect()
        })
        .collect();

    let mut provenance = BTreeMap::new();
    let mut edges = Vec::with_capacity(gadgets.len());
    for g in gadgets {
        provenance.insert(
            g.id.clone(),
            EdgeProvenance {
                source: Some(g.source),
                role: g.role,
            },
        );
        edges.push((g.id, g.delays));
    }

    Ok(ReductionOutput {
        transformed: CongestionGame::new(game.num_players(), edges, StrategySetsDef::Shared(shared))?,
        provenance,
        back_map: BackMapKind::Identity,
        cost_scale,
    })
}

/// Non-alternating split. Each jump `J = d_e(k) - d_e(k-1) > 0` becomes a
/// positive edge stepping from `J*alpha/(alpha^2-1)` to `J*alpha^2/(alpha^2-1)`
/// at congestion `k` and a negative edge stepping from `-J*alpha/(alpha^2-1)`
/// to `-J/(alpha^2-1)`; the pair cancels below `k` and sums to `J` from `k`
/// on. Zero jumps are dropped, as is the base edge when `d_e(1) = 0`, so
/// every retained table is single-signed and exactly `alpha`-bounded.
pub fn split_non_alternating(
    game: &CongestionGame,
    alpha: &Rational,
) -> Result<ReductionOutput, GameError> {
    require_positive(game)?;
    if !game.is_symmetric() {
        return Err(GameError::NotSymmetric);
    }
    if alpha <= &Rational::one() {
        return Err(GameError::AlphaOutOfRange(alpha.clone()));
    }
    let denom = alpha * alpha - Rational::one();
    let low = alpha / &denom;
    let high = (alpha * alpha) / &denom;
    let tail = denom.recip();
    let gadgets = split_edges(
        game,
        |jump, k, n| {
            let step = |before: &Rational, after: &Rational| -> Vec<Rational> {
                (1..=n)
                    .map(|t| if t < k { jump * before } else { jump * after })
                    .collect()
            };
            (step(&low, &high), step(&-&low, &-&tail))
        },
        &Rational::one(),
    );
    assemble_split(game, gadgets, Rational::one())
}

/// Flip split. Source delays are doubled, then each jump `J` of the doubled
/// table becomes a constant edge at `J/2` plus a sign-flip edge going from
/// `-J/2` to `J/2` at congestion `k`. Every retained table matches the flip
/// template with a positive constant, and costs are exactly twice the
/// source costs.
pub fn split_flip(game: &CongestionGame) -> Result<ReductionOutput, GameError> {
    require_positive(game)?;
    if !game.is_symmetric() {
        return Err(GameError::NotSymmetric);
    }
    let gadgets = split_edges(
        game,
        |jump, k, n| {
            let half = jump / rat!(2);
            let plus = vec![half.clone(); n];
            let minus = (1..=n)
                .map(|t| if t < k { -&half } else { half.clone() })
                .collect();
            (plus, minus)
        },
        &rat!(2),
    );
    assemble_split(game, gadgets, rat!(2))
}

/// How many states `verify_cost_preservation` walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    /// Every state of the source game (subject to the oracle state cap).
    Exhaustive,
    /// `count` seeded uniform states.
    Random { count: usize, seed: u64 },
}

/// Checks an identity-mapped reduction output against its source game:
/// per-edge column sums (`sum_{e' from e} d_{e'}(t) = cost_scale * d_e(t)`
/// for every `t`) and per-player cost equality
/// (`c_i(s') = cost_scale * c_i(s)`) over the requested states. Exact
/// comparisons; returns `false` on the first violation.
pub fn verify_cost_preservation(
    source: &CongestionGame,
    output: &ReductionOutput,
    samples: SampleMode,
) -> Result<bool, GameError> {
    if output.back_map != BackMapKind::Identity {
        return Err(GameError::BackMapMismatch);
    }
    let transformed = &output.transformed;
    let n = source.num_players();

    // column sums per source edge
    let mut sums: BTreeMap<&str, Vec<Rational>> = source
        .edges()
        .iter()
        .map(|e| (e.id(), vec![Rational::zero(); n]))
        .collect();
    for edge in transformed.edges() {
        let Some(prov) = output.provenance.get(edge.id()) else {
            return Err(GameError::InvalidGame(format!(
                "transformed edge {:?} has no provenance entry",
                edge.id()
            )));
        };
        let Some(source_id) = prov.source.as_deref() else {
            return Err(GameError::InvalidGame(format!(
                "transformed edge {:?} has no source edge",
                edge.id()
            )));
        };
        let Some(acc) = sums.get_mut(source_id) else {
            return Err(GameError::InvalidGame(format!(
                "provenance of {:?} names unknown source edge {source_id:?}",
                edge.id()
            )));
        };
        for t in 1..=n {
            acc[t - 1] = &acc[t - 1] + edge.delays().at(t);
        }
    }
    for edge in source.edges() {
        let acc = &sums[edge.id()];
        for t in 1..=n {
            if acc[t - 1] != edge.delays().at(t) * &output.cost_scale {
                return Ok(false);
            }
        }
    }

    // cost equality over states, under the index-preserving bijection
    let check_state = |state: &StateProfile| -> Result<bool, GameError> {
        for player in 0..n {
            let original = source.player_cost(state, player)?;
            let mapped = transformed.player_cost(state, player)?;
            if mapped != original * &output.cost_scale {
                return Ok(false);
            }
        }
        Ok(true)
    };

    match samples {
        SampleMode::Exhaustive => {
            let size = source.state_space_size();
            if size > crate::oracle::DEFAULT_STATE_CAP {
                return Err(GameError::StateSpaceTooLarge {
                    size,
                    cap: crate::oracle::DEFAULT_STATE_CAP,
                });
            }
            for state in crate::oracle::all_states(source) {
                if !check_state(&state)? {
                    return Ok(false);
                }
            }
        }
        SampleMode::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let choices = (0..n)
                    .map(|p| rng.random_range(0..source.strategies_of(p).len()))
                    .collect();
                if !check_state(&StateProfile::new(choices))? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// On-disk form of a reduction's provenance:
/// `{"edges": {"a::2+": {"source": "a", "role": "plus", "k": 2},
///             "@tag1": {"role": "tag", "i": 1}},
///   "back_map": "identity" | "tag_pullback", "cost_scale": "1"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapFile {
    pub edges: BTreeMap<String, MapEntry>,
    pub back_map: String,
    pub cost_scale: Rational,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapEntry {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    pub role: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
}

impl From<&ReductionOutput> for MapFile {
    fn from(output: &ReductionOutput) -> Self {
        let edges = output
            .provenance
            .iter()
            .map(|(id, prov)| {
                let (role, k, i) = match prov.role {
                    GadgetRole::E1 => ("e1", None, None),
                    GadgetRole::Plus(k) => ("plus", Some(k), None),
                    GadgetRole::Minus(k) => ("minus", Some(k), None),
                    GadgetRole::Tag(i) => ("tag", None, Some(i)),
                };
                (
                    id.clone(),
                    MapEntry {
                        source: prov.source.clone(),
                        role: role.to_string(),
                        k,
                        i,
                    },
                )
            })
            .collect();
        MapFile {
            edges,
            back_map: match output.back_map {
                BackMapKind::Identity => "identity".to_string(),
                BackMapKind::TagPullback => "tag_pullback".to_string(),
            },
            cost_scale: output.cost_scale.clone(),
        }
    }
}

impl MapFile {
    pub fn to_json_string(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("map serializes");
        out.push('\n');
        out
    }

    pub fn from_json_str(text: &str) -> Result<Self, GameError> {
        serde_json::from_str(text).map_err(|e| GameError::Json(e.to_string()))
    }

    pub fn back_map_kind(&self) -> Result<BackMapKind, GameError> {
        match self.back_map.as_str() {
            "identity" => Ok(BackMapKind::Identity),
            "tag_pullback" => Ok(BackMapKind::TagPullback),
            other => Err(GameError::Json(format!("unknown back_map {other:?}"))),
        }
    }

    /// Rebuilds provenance for use with a loaded transformed game.
    pub fn provenance(&self) -> Result<BTreeMap<String, EdgeProvenance>, GameError> {
        self.edges
            .iter()
            .map(|(id, entry)| {
                let role = match (entry.role.as_str(), entry.k, entry.i) {
                    ("e1", _, _) => GadgetRole::E1,
                    ("plus", Some(k), _) => GadgetRole::Plus(k),
                    ("minus", Some(k), _) => GadgetRole::Minus(k),
                    ("tag", _, Some(i)) => GadgetRole::Tag(i),
                    _ => {
                        return Err(GameError::Json(format!(
                            "bad provenance entry for edge {id:?}"
                        )))
                    }
                };
                Ok((
                    id.clone(),
                    EdgeProvenance {
                        source: entry.source.clone(),
                        role,
                    },
                ))
            })
            .collect()
    }
}
