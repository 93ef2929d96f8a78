use std::collections::{BTreeSet, HashMap, VecDeque};

use super::scc::shortest_path;
use crate::automaton::{same_alphabet, Automaton, Color, Letter, StateId, Transition};
use crate::error::{Error, Result};
use crate::graph::Tarjan;
use crate::run::run_deterministic;
use crate::word::LassoWord;

/// The fairness condition "infinitely many `lower` transitions implies
/// infinitely many `upper` transitions".
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StreettPair {
    pub lower: BTreeSet<Transition>,
    pub upper: BTreeSet<Transition>,
}

/// One pair per odd color `c`: `(color c, colors below c)`. A run satisfies
/// all pairs iff its dominating color is even.
pub fn parity_to_streett(a: &Automaton) -> Result<Vec<StreettPair>> {
    a.require_deterministic()?;
    Ok(a.colors()
        .into_iter()
        .filter(|c| c % 2 == 1)
        .map(|c| StreettPair {
            lower: a.transitions().filter(|t| t.color == c).collect(),
            upper: a.transitions().filter(|t| t.color < c).collect(),
        })
        .collect())
}

#[derive(Clone, Copy, Debug)]
struct Edge {
    src: usize,
    letter: Letter,
    dst: usize,
}

/// An edge-labeled graph with Streett pairs given as edge masks.
struct Graph {
    initial: usize,
    num_nodes: usize,
    edges: Vec<Edge>,
    /// Outgoing edge ids per node, in letter order.
    out: Vec<Vec<usize>>,
}

struct EdgePair {
    lower: Vec<bool>,
    upper: Vec<bool>,
}

impl Graph {
    fn new(initial: usize, num_nodes: usize, edges: Vec<Edge>) -> Graph {
        let mut out = vec![Vec::new(); num_nodes];
        for (i, e) in edges.iter().enumerate() {
            out[e.src].push(i);
        }
        for list in &mut out {
            list.sort_by_key(|&i| (edges[i].letter, edges[i].dst));
        }
        Graph {
            initial,
            num_nodes,
            edges,
            out,
        }
    }

    fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_nodes];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        let mut order = Vec::new();
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &e in &self.out[v] {
                let d = self.edges[e].dst;
                if !seen[d] {
                    seen[d] = true;
                    queue.push_back(d);
                }
            }
        }
        order
    }

    /// Edge set of a reachable sub-SCC whose edges satisfy every pair, if any.
    fn good_component(&self, pairs: &[EdgePair]) -> Option<Vec<usize>> {
        let mut alive = vec![true; self.edges.len()];
        let mut member = vec![usize::MAX; self.num_nodes];
        let mut comp_of = vec![usize::MAX; self.num_nodes];
        let mut work = vec![self.reachable()];
        let mut generation = 0;
        let mut next_tag = 0;
        let mut scc = Tarjan::new(self.num_nodes);
        while let Some(nodes) = work.pop() {
            generation += 1;
            for &v in &nodes {
                member[v] = generation;
            }
            let comps = {
                let (alive, member, edges, out) = (&alive, &member, &self.edges, &self.out);
                scc.run(&nodes, |v| {
                    out[v]
                        .iter()
                        .filter(move |&&e| alive[e] && member[edges[e].dst] == generation)
                        .map(move |&e| edges[e].dst)
                })
            };
            let first_tag = next_tag;
            for comp in &comps {
                for &v in comp {
                    comp_of[v] = next_tag;
                }
                next_tag += 1;
            }
            let mut deeper = Vec::new();
            for (ci, comp) in comps.into_iter().enumerate() {
                let tag = first_tag + ci;
                let internal: Vec<usize> = comp
                    .iter()
                    .flat_map(|&v| self.out[v].iter().copied())
                    .filter(|&e| alive[e] && comp_of[self.edges[e].dst] == tag)
                    .collect();
                if internal.is_empty() {
                    continue;
                }
                let bad: Vec<&EdgePair> = pairs
                    .iter()
                    .filter(|p| {
                        internal.iter().any(|&e| p.lower[e])
                            && !internal.iter().any(|&e| p.upper[e])
                    })
                    .collect();
                if bad.is_empty() {
                    return Some(internal);
                }
                for &e in &internal {
                    if bad.iter().any(|p| p.lower[e]) {
                        alive[e] = false;
                    }
                }
                deeper.push(comp);
            }
            // Components found earlier are explored first.
            work.extend(deeper.into_iter().rev());
        }
        None
    }

    /// A lasso whose run ends up traversing exactly the edges of `component`
    /// infinitely often: shortest stem to the component, then a closed walk
    /// covering every component edge.
    fn witness(&self, component: &[usize]) -> LassoWord {
        let mut inside = vec![false; self.num_nodes];
        let mut in_comp = vec![false; self.edges.len()];
        for &e in component {
            in_comp[e] = true;
            inside[self.edges[e].src] = true;
        }
        let all = |v: usize| {
            self.out[v]
                .iter()
                .map(move |&e| (self.edges[e].letter, self.edges[e].dst))
        };
        let (start, stem) = shortest_path(self.num_nodes, self.initial, |v| inside[v], all)
            .expect("component is reachable");
        let comp_edges = |v: usize| {
            self.out[v]
                .iter()
                .filter(|&&e| in_comp[e])
                .map(|&e| (self.edges[e].letter, self.edges[e].dst))
        };

        let mut covered = vec![false; self.edges.len()];
        let mut remaining = component.len();
        let mut period = Vec::new();
        let mut cur = start;
        let follow =
            |cur: &mut usize, word: &[Letter], covered: &mut Vec<bool>, remaining: &mut usize| {
                for &l in word {
                    let e = self.out[*cur]
                        .iter()
                        .copied()
                        .find(|&e| in_comp[e] && self.edges[e].letter == l)
                        .expect("walk stays in component");
                    if !covered[e] {
                        covered[e] = true;
                        *remaining -= 1;
                    }
                    *cur = self.edges[e].dst;
                }
            };
        while remaining > 0 {
            let has_uncovered = |v: usize| self.out[v].iter().any(|&e| in_comp[e] && !covered[e]);
            let (v, path) = shortest_path(self.num_nodes, cur, has_uncovered, comp_edges)
                .expect("component is strongly connected");
            let e = self.out[v]
                .iter()
                .copied()
                .find(|&e| in_comp[e] && !covered[e])
                .expect("target has an uncovered edge");
            period.extend_from_slice(&path);
            follow(&mut cur, &path, &mut covered, &mut remaining);
            period.push(self.edges[e].letter);
            covered[e] = true;
            remaining -= 1;
            cur = self.edges[e].dst;
        }
        let (_, back) = shortest_path(self.num_nodes, cur, |v| v == start, comp_edges)
            .expect("component is strongly connected");
        period.extend_from_slice(&back);
        LassoWord::new(stem, period).expect("component has an edge")
    }

    fn search(&self, pairs: &[EdgePair]) -> Option<LassoWord> {
        self.good_component(pairs).map(|c| self.witness(&c))
    }
}

/// Streett pair over implicitly numbered edges.
pub(crate) struct EdgeCondition<'a> {
    pub lower: &'a dyn Fn(usize) -> bool,
    pub upper: &'a dyn Fn(usize) -> bool,
}

/// Nodes lying in a strongly connected subgraph, with at least one edge,
/// whose edges satisfy every pair. The graph is deterministic and complete:
/// edge `v * letters + l` leads from `v` to `succ(v, l)`.
pub(crate) fn fair_nodes(
    num_nodes: usize,
    letters: usize,
    succ: &dyn Fn(usize, Letter) -> usize,
    pairs: &[EdgeCondition<'_>],
) -> Vec<bool> {
    let mut fair = vec![false; num_nodes];
    let mut alive = vec![true; num_nodes * letters];
    let mut member = vec![0u32; num_nodes];
    let mut scc = Tarjan::new(num_nodes);
    let mut work: Vec<Vec<usize>> = vec![(0..num_nodes).collect()];
    let mut generation = 0u32;
    while let Some(nodes) = work.pop() {
        generation += 1;
        for &v in &nodes {
            member[v] = generation;
        }
        let comps = {
            let (alive, member) = (&alive, &member);
            scc.run(&nodes, |v| {
                (0..letters)
                    .filter(move |&l| alive[v * letters + l])
                    .map(move |l| succ(v, l))
                    .filter(move |&d| member[d] == generation)
            })
        };
        for comp in comps {
            generation += 1;
            for &v in &comp {
                member[v] = generation;
            }
            let internal: Vec<usize> = comp
                .iter()
                .flat_map(|&v| (0..letters).map(move |l| (v, l)))
                .filter(|&(v, l)| alive[v * letters + l] && member[succ(v, l)] == generation)
                .map(|(v, l)| v * letters + l)
                .collect();
            if internal.is_empty() {
                continue;
            }
            let bad: Vec<&EdgeCondition> = pairs
                .iter()
                .filter(|p| {
                    internal.iter().any(|&e| (p.lower)(e))
                        && !internal.iter().any(|&e| (p.upper)(e))
                })
                .collect();
            if bad.is_empty() {
                for &v in &comp {
                    fair[v] = true;
                }
                continue;
            }
            for &e in &internal {
                if bad.iter().any(|p| (p.lower)(e)) {
                    alive[e] = false;
                }
            }
            work.push(comp);
        }
    }
    fair
}

/// Nodes from which some node of `target` is reachable.
pub(crate) fn can_reach(
    num_nodes: usize,
    letters: usize,
    succ: &dyn Fn(usize, Letter) -> usize,
    target: &[bool],
) -> Vec<bool> {
    let roots: Vec<usize> = (0..num_nodes).collect();
    let comps = Tarjan::new(num_nodes).run(&roots, |v| (0..letters).map(move |l| succ(v, l)));
    let mut reach = target.to_vec();
    // sinks come first, so successors outside a component are settled
    for comp in comps {
        let hit = comp
            .iter()
            .any(|&v| reach[v] || (0..letters).any(|l| reach[succ(v, l)]));
        if hit {
            for &v in &comp {
                reach[v] = true;
            }
        }
    }
    reach
}

/// Emptiness of the Streett condition `pairs` over the transition graph of
/// a deterministic `a`. Returns a lasso whose run satisfies every pair.
pub fn streett_nonempty(a: &Automaton, pairs: &[StreettPair]) -> Result<Option<LassoWord>> {
    a.require_deterministic()?;
    let transitions: Vec<Transition> = a.transitions().collect();
    let edges = transitions
        .iter()
        .map(|t| Edge {
            src: t.src,
            letter: t.letter,
            dst: t.dst,
        })
        .collect();
    let g = Graph::new(a.initial(), a.num_states(), edges);
    let masks: Vec<EdgePair> = pairs
        .iter()
        .map(|p| EdgePair {
            lower: transitions.iter().map(|t| p.lower.contains(t)).collect(),
            upper: transitions.iter().map(|t| p.upper.contains(t)).collect(),
        })
        .collect();
    Ok(g.search(&masks))
}

/// Reachable synchronous product of deterministic automata; returns the graph
/// and, per edge, the color of every component.
fn product(autos: &[&Automaton]) -> (Graph, Vec<Vec<Color>>) {
    let alphabet = autos[0].alphabet();
    let init: Vec<StateId> = autos.iter().map(|a| a.initial()).collect();
    let mut ids: HashMap<Vec<StateId>, usize> = HashMap::from([(init.clone(), 0)]);
    let mut order = vec![init];
    let mut edges = Vec::new();
    let mut colors = Vec::new();
    let mut i = 0;
    while i < order.len() {
        for l in 0..alphabet.len() {
            let mut next = Vec::with_capacity(autos.len());
            let mut cs = Vec::with_capacity(autos.len());
            for (a, &q) in autos.iter().zip(&order[i]) {
                let (d, c) = a.step(q, l);
                next.push(d);
                cs.push(c);
            }
            let j = *ids.entry(next).or_insert_with_key(|k| {
                order.push(k.clone());
                order.len() - 1
            });
            edges.push(Edge {
                src: i,
                letter: l,
                dst: j,
            });
            colors.push(cs);
        }
        i += 1;
    }
    (Graph::new(0, order.len(), edges), colors)
}

/// Is there a word accepted by every automaton in `positive` and rejected by
/// every automaton in `negative`? All operands must be deterministic.
pub fn diff_nonempty(
    positive: &[&Automaton],
    negative: &[&Automaton],
) -> Result<Option<LassoWord>> {
    let all: Vec<&Automaton> = positive.iter().chain(negative).copied().collect();
    if all.is_empty() {
        return Err(Error::NoOperands);
    }
    same_alphabet(all.iter().copied())?;
    for a in &all {
        a.require_deterministic()?;
    }
    let (g, colors) = product(&all);
    let mut pairs = Vec::new();
    for (k, a) in all.iter().enumerate() {
        // accepted: every odd color c is dominated by something below it;
        // rejected: the same for the shifted (complement) coloring
        let parity = if k < positive.len() { 1 } else { 0 };
        for c in a.colors().into_iter().filter(|c| c % 2 == parity) {
            pairs.push(EdgePair {
                lower: colors.iter().map(|cs| cs[k] == c).collect(),
                upper: colors.iter().map(|cs| cs[k] < c).collect(),
            });
        }
    }
    let found = g.search(&pairs);
    if let Some(w) = &found {
        for a in positive {
            assert!(run_deterministic(a, w)?.accepted, "witness replay failed");
        }
        for a in negative {
            assert!(!run_deterministic(a, w)?.accepted, "witness replay failed");
        }
    }
    Ok(found)
}

/// A word in `L(a) ∖ L(b)`, if any.
pub fn dpw_diff_nonempty(a: &Automaton, b: &Automaton) -> Result<Option<LassoWord>> {
    diff_nonempty(&[a], &[b])
}

/// Number of states of the reachable product, exposed for size reports.
pub fn product_size(autos: &[&Automaton]) -> Result<usize> {
    if autos.is_empty() {
        return Err(Error::NoOperands);
    }
    same_alphabet(autos.iter().copied())?;
    for a in autos {
        a.require_deterministic()?;
    }
    Ok(product(autos).0.num_nodes)
}
