//! Congestion game model: edges with non-decreasing delay tables, explicit
//! strategy sets (shared or per-player), states, congestion and exact costs,
//! plus the sign/shape predicates used by the dynamics and the reductions.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so games and states can be shared freely across threads.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GameError;
use crate::rational::Rational;

/// Per-edge delay values `d_e(1..n)` as exact rationals, non-decreasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelayTable {
    values: Vec<Rational>,
}

impl DelayTable {
    pub fn new(values: Vec<Rational>) -> Result<Self, GameError> {
        if values.is_empty() {
            return Err(GameError::InvalidGame("empty delay table".into()));
        }
        for w in values.windows(2) {
            if w[1] < w[0] {
                return Err(GameError::InvalidGame(format!(
                    "delay table not non-decreasing: {} after {}",
                    w[1], w[0]
                )));
            }
        }
        Ok(DelayTable { values })
    }

    /// `d_e(t)` for congestion `t`, 1-based, `1 <= t <= n`.
    pub fn at(&self, t: usize) -> &Rational {
        &self.values[t - 1]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// One shared resource: a unique id and its delay table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    id: String,
    delays: DelayTable,
}

impl Edge {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn delays(&self) -> &DelayTable {
        &self.delays
    }
}

/// A pure strategy: a set of edges, stored as sorted indices into the owning
/// game's edge list. May be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Strategy {
    edges: Vec<usize>,
}

impl Strategy {
    fn from_indices(mut edges: Vec<usize>) -> Result<Self, GameError> {
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(GameError::InvalidGame(
                "strategy lists the same edge twice".into(),
            ));
        }
        Ok(Strategy { edges })
    }

    pub fn edge_indices(&self) -> &[usize] {
        &self.edges
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Strategy sets: one shared list for symmetric games, or one list per player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategySets {
    Shared(Vec<Strategy>),
    PerPlayer(Vec<Vec<Strategy>>),
}

/// Sign and shape flags of a game's delay tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameClass {
    /// All delays are >= 0.
    pub positive: bool,
    /// All delays are < 0.
    pub negative: bool,
    /// Every table is entirely > 0 or entirely < 0.
    pub non_alternating: bool,
    /// Every table is constant positive, or -c up to some point then +c.
    pub flip: bool,
}

/// An n-player congestion game over explicit strategy sets, with exact
/// rational delays. Prefix/suffix delay sums are cached at construction for
/// the potential functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongestionGame {
    n: usize,
    edges: Vec<Edge>,
    strategies: StrategySets,
    // prefix[e][f] = sum_{t<=f} d_e(t), suffix[e][f] = sum_{t>f} d_e(t), f in 0..=n
    prefix: Vec<Vec<Rational>>,
    suffix: Vec<Vec<Rational>>,
    k_const: Rational,
}

/// One chosen strategy index per player.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateProfile {
    choices: Vec<usize>,
}

impl StateProfile {
    pub fn new(choices: Vec<usize>) -> Self {
        StateProfile { choices }
    }

    pub fn choices(&self) -> &[usize] {
        &self.choices
    }

    pub fn choice(&self, player: usize) -> usize {
        self.choices[player]
    }

    /// Copy of this state with one player's choice replaced.
    pub fn with_choice(&self, player: usize, strategy: usize) -> StateProfile {
        let mut choices = self.choices.clone();
        choices[player] = strategy;
        StateProfile { choices }
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }
}

impl fmt::Display for StateProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.choices.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for StateProfile {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let choices = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| GameError::InvalidState(format!("bad strategy index {part:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(StateProfile { choices })
    }
}

impl CongestionGame {
    /// Validates and builds a game from raw parts. `strategies` reference
    /// edges by id; within each strategy ids are canonicalized to edge order.
    pub fn new(
        players: usize,
        edges: Vec<(String, Vec<Rational>)>,
        strategies: StrategySetsDef,
    ) -> Result<Self, GameError> {
        if players < 2 {
            return Err(GameError::InvalidGame(format!(
                "need at least 2 players, got {players}"
            )));
        }
        let mut index_of = BTreeMap::new();
        let mut edge_list = Vec::with_capacity(edges.len());
        for (id, delays) in edges {
            if id.is_empty() {
                return Err(GameError::InvalidGame("empty edge id".into()));
            }
            if index_of.insert(id.clone(), edge_list.len()).is_some() {
                return Err(GameError::InvalidGame(format!("duplicate edge id {id:?}")));
            }
            if delays.len() != players {
                return Err(GameError::InvalidGame(format!(
                    "edge {id:?} has {} delay values for {players} players",
                    delays.len()
                )));
            }
            edge_list.push(Edge {
                id,
                delays: DelayTable::new(delays)?,
            });
        }

        let resolve = |ids: &[String]| -> Result<Strategy, GameError> {
            let indices = ids
                .iter()
                .map(|id| {
                    index_of
                        .get(id)
                        .copied()
                        .ok_or_else(|| GameError::InvalidGame(format!("unknown edge id {id:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Strategy::from_indices(indices)
        };

        let strategies = match strategies {
            StrategySetsDef::Shared(list) => {
                let resolved = list
                    .iter()
                    .map(|ids| resolve(ids))
                    .collect::<Result<Vec<_>, _>>()?;
                if resolved.is_empty() {
                    return Err(GameError::InvalidGame("empty shared strategy set".into()));
                }
                StrategySets::Shared(resolved)
            }
            StrategySetsDef::PerPlayer(lists) => {
                if lists.len() != players {
                    return Err(GameError::InvalidGame(format!(
                        "per-player strategies list {} players, game has {players}",
                        lists.len()
                    )));
                }
                let resolved = lists
                    .iter()
                    .map(|list| {
                        if list.is_empty() {
                            return Err(GameError::InvalidGame(
                                "a player has an empty strategy set".into(),
                            ));
                        }
                        list.iter().map(|ids| resolve(ids)).collect()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                StrategySets::PerPlayer(resolved)
            }
        };

        let mut prefix = Vec::with_capacity(edge_list.len());
        let mut suffix = Vec::with_capacity(edge_list.len());
        for edge in &edge_list {
            let mut pre = Vec::with_capacity(players + 1);
            pre.push(Rational::zero());
            for t in 1..=players {
                pre.push(&pre[t - 1] + edge.delays.at(t));
            }
            let total = pre[players].clone();
            let suf: Vec<Rational> = pre.iter().map(|p| &total - p).collect();
            prefix.push(pre);
            suffix.push(suf);
        }
        let k_const = -prefix
            .iter()
            .map(|pre| pre[players].clone())
            .sum::<Rational>();

        Ok(CongestionGame {
            n: players,
            edges: edge_list,
            strategies,
            prefix,
            suffix,
            k_const,
        })
    }

    pub fn num_players(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn strategy_sets(&self) -> &StrategySets {
        &self.strategies
    }

    /// The strategies available to `player`.
    pub fn strategies_of(&self, player: usize) -> &[Strategy] {
        match &self.strategies {
            StrategySets::Shared(z) => z,
            StrategySets::PerPlayer(sets) => &sets[player],
        }
    }

    /// True when all players have the same strategy set (shared form, or
    /// per-player lists that are all equal).
    pub fn is_symmetric(&self) -> bool {
        match &self.strategies {
            StrategySets::Shared(_) => true,
            StrategySets::PerPlayer(sets) => sets.windows(2).all(|w| w[0] == w[1]),
        }
    }

    /// The game constant `-sum_e sum_{t=1}^n d_e(t)`; `psi - phi` equals this
    /// on every state.
    pub fn k_const(&self) -> &Rational {
        &self.k_const
    }

    pub(crate) fn prefix_sum(&self, edge: usize, congestion: usize) -> &Rational {
        &self.prefix[edge][congestion]
    }

    pub(crate) fn suffix_sum(&self, edge: usize, congestion: usize) -> &Rational {
        &self.suffix[edge][congestion]
    }

    /// Number of states, saturating at `u128::MAX`.
    pub fn state_space_size(&self) -> u128 {
        (0..self.n).fold(1u128, |acc, player| {
            acc.saturating_mul(self.strategies_of(player).len() as u128)
        })
    }

    pub fn validate_state(&self, state: &StateProfile) -> Result<(), GameError> {
        if state.len() != self.n {
            return Err(GameError::InvalidState(format!(
                "state has {} choices for {} players",
                state.len(),
                self.n
            )));
        }
        for (player, &choice) in state.choices().iter().enumerate() {
            let available = self.strategies_of(player).len();
            if choice >= available {
                return Err(GameError::InvalidState(format!(
                    "player {player} chose strategy {choice}, only {available} available"
                )));
            }
        }
        Ok(())
    }

    /// Congestion `f_e(s)` per edge, indexed like `edges()`.
    pub fn congestion(&self, state: &StateProfile) -> Result<Vec<usize>, GameError> {
        self.validate_state(state)?;
        let mut counts = vec![0usize; self.edges.len()];
        for (player, &choice) in state.choices().iter().enumerate() {
            for &e in self.strategies_of(player)[choice].edge_indices() {
                counts[e] += 1;
            }
        }
        Ok(counts)
    }

    /// Congestion keyed by edge id.
    pub fn congestion_by_id(&self, state: &StateProfile) -> Result<BTreeMap<String, usize>, GameError> {
        let counts = self.congestion(state)?;
        Ok(self
            .edges
            .iter()
            .zip(counts)
            .map(|(e, c)| (e.id.clone(), c))
            .collect())
    }

    /// Exact cost of `player` in `state`: `sum_{e in s_i} d_e(f_e(s))`.
    pub fn player_cost(&self, state: &StateProfile, player: usize) -> Result<Rational, GameError> {
        let congestion = self.congestion(state)?;
        if player >= self.n {
            return Err(GameError::InvalidState(format!(
                "no player {player} in a {}-player game",
                self.n
            )));
        }
        Ok(self.player_cost_from(state, &congestion, player))
    }

    /// Cost of `player` given a precomputed congestion vector for `state`.
    pub(crate) fn player_cost_from(
        &self,
        state: &StateProfile,
        congestion: &[usize],
        player: usize,
    ) -> Rational {
        self.strategies_of(player)[state.choice(player)]
            .edge_indices()
            .iter()
            .map(|&e| self.edges[e].delays.at(congestion[e]))
            .sum()
    }

    /// Cost `player` would pay after unilaterally switching to strategy
    /// `target` of their own set, given the congestion vector of `state`.
    pub(crate) fn cost_after_switch(
        &self,
        state: &StateProfile,
        congestion: &[usize],
        player: usize,
        target: usize,
    ) -> Rational {
        let current = &self.strategies_of(player)[state.choice(player)];
        self.strategies_of(player)[target]
            .edge_indices()
            .iter()
            .map(|&e| {
                let f = if current.contains(e) {
                    congestion[e]
                } else {
                    congestion[e] + 1
                };
                self.edges[e].delays.at(f)
            })
            .sum()
    }

    /// Sign/shape flags of all delay tables.
    pub fn classify(&self) -> GameClass {
        let mut class = GameClass {
            positive: true,
            negative: true,
            non_alternating: true,
            flip: true,
        };
        for edge in &self.edges {
            let values = edge.delays.values();
            let all_nonneg = values.iter().all(|v| !v.is_negative());
            let all_pos = values.iter().all(|v| v.is_positive());
            let all_neg = values.iter().all(|v| v.is_negative());
            class.positive &= all_nonneg;
            class.negative &= all_neg;
            class.non_alternating &= all_pos || all_neg;
            class.flip &= is_flip_table(values);
        }
        class
    }

    /// Bounded-jump check: positive tables must satisfy `d(t+1) <= alpha*d(t)`
    /// (and carry no zeros), negative tables `d(t+1) <= d(t)/alpha`.
    ///
    /// Tables mixing strictly positive and strictly negative values are
    /// rejected with `MixedSignTable`.
    pub fn check_alpha_bounded(&self, alpha: &Rational) -> Result<bool, GameError> {
        if alpha < &Rational::one() {
            return Err(GameError::AlphaOutOfRange(alpha.clone()));
        }
        for edge in &self.edges {
            let values = edge.delays.values();
            let has_pos = values.iter().any(|v| v.is_positive());
            let has_neg = values.iter().any(|v| v.is_negative());
            if has_pos && has_neg {
                return Err(GameError::MixedSignTable {
                    edge: edge.id.clone(),
                });
            }
            if !has_neg {
                // positive table; a zero anywhere disqualifies it
                if values.iter().any(|v| v.is_zero()) {
                    return Ok(false);
                }
                for w in values.windows(2) {
                    if w[1] > alpha * &w[0] {
                        return Ok(false);
                    }
                }
            } else {
                for w in values.windows(2) {
                    if w[1] > &w[0] / alpha {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Smallest `alpha >= 1` for which `check_alpha_bounded` holds, or `None`
    /// when no finite alpha works (some positive table contains a zero).
    /// Errors on sign-alternating tables like the check itself.
    pub fn minimal_alpha(&self) -> Result<Option<Rational>, GameError> {
        let mut best = Rational::one();
        for edge in &self.edges {
            let values = edge.delays.values();
            let has_pos = values.iter().any(|v| v.is_positive());
            let has_neg = values.iter().any(|v| v.is_negative());
            if has_pos && has_neg {
                return Err(GameError::MixedSignTable {
                    edge: edge.id.clone(),
                });
            }
            if !has_neg {
                if values.iter().any(|v| v.is_zero()) {
                    return Ok(None);
                }
                for w in values.windows(2) {
                    let ratio = &w[1] / &w[0];
                    if ratio > best {
                        best = ratio;
                    }
                }
            } else {
                // a trailing zero after negative values fails for every alpha
                if values.iter().any(|v| v.is_zero()) {
                    return Ok(None);
                }
                for w in values.windows(2) {
                    let ratio = &w[0] / &w[1];
                    if ratio > best {
                        best = ratio;
                    }
                }
            }
        }
        Ok(Some(best))
    }

    pub fn from_json_str(text: &str) -> Result<Self, GameError> {
        let file: GameFile =
            serde_json::from_str(text).map_err(|e| GameError::Json(e.to_string()))?;
        file.try_into()
    }

    /// Deterministic pretty JSON; loading it back yields an equal game and
    /// re-serializing yields identical bytes.
    pub fn to_json_string(&self) -> String {
        let file = GameFile::from(self);
        let mut out = serde_json::to_string_pretty(&file).expect("game serializes");
        out.push('\n');
        out
    }
}

fn is_flip_table(values: &[Rational]) -> bool {
    let first = &values[0];
    if first.is_positive() {
        return values.iter().all(|v| v == first);
    }
    if !first.is_negative() {
        return false;
    }
    let c = first.abs();
    let neg = -&c;
    let mut t = 0;
    while t < values.len() && values[t] == neg {
        t += 1;
    }
    // at least one value after the sign change, all equal to +c
    t < values.len() && values[t..].iter().all(|v| *v == c)
}

/// Strategy sets by edge id, as used by constructors and the JSON format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategySetsDef {
    Shared(Vec<Vec<String>>),
    PerPlayer(Vec<Vec<Vec<String>>>),
}

/// On-disk form of a game:
/// `{"players": 2, "edges": [{"id": "a", "delays": ["-4", "-2"]}, ...],
///   "strategies": {"shared": [["a"], ["b"], ["a", "b"]]}}`
/// with rationals as `p/q` or integer strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameFile {
    pub players: usize,
    pub edges: Vec<EdgeFile>,
    pub strategies: StrategySetsDef,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeFile {
    pub id: String,
    pub delays: Vec<Rational>,
}

impl TryFrom<GameFile> for CongestionGame {
    type Error = GameError;

    fn try_from(file: GameFile) -> Result<Self, Self::Error> {
        CongestionGame::new(
            file.players,
            file.edges.into_iter().map(|e| (e.id, e.delays)).collect(),
            file.strategies,
        )
    }
}

impl From<&CongestionGame> for GameFile {
    fn from(game: &CongestionGame) -> Self {
        let ids = |s: &Strategy| -> Vec<String> {
            s.edge_indices()
                .iter()
                .map(|&e| game.edges[e].id.clone())
                .collect()
        };
        let strategies = match &game.strategies {
            StrategySets::Shared(z) => StrategySetsDef::Shared(z.iter().map(ids).collect()),
            StrategySets::PerPlayer(sets) => StrategySetsDef::PerPlayer(
                sets.iter()
                    .map(|list| list.iter().map(ids).collect())
                    .collect(),
            ),
        };
        GameFile {
            players: game.n,
            edges: game
                .edges
                .iter()
                .map(|e| EdgeFile {
                    id: e.id.clone(),
                    delays: e.delays.values().to_vec(),
                })
                .collect(),
            strategies,
        }
    }
}
