//! Iterative Tarjan over implicit graphs with `usize` nodes.

const UNVISITED: usize = usize::MAX;

/// Strongly connected components of the part of a graph reachable from
/// `roots`. Nodes are `0..num_nodes`; `succ` must only yield nodes in range.
/// Components come out in reverse topological order.
pub(crate) fn tarjan<F, I>(num_nodes: usize, roots: &[usize], succ: F) -> Vec<Vec<usize>>
where
    F: FnMut(usize) -> I,
    I: Iterator<Item = usize>,
{
    Tarjan::new(num_nodes).run(roots, succ)
}

/// Reusable buffers for repeated searches over small parts of a big graph.
/// Each run only pays for the nodes it visits.
pub(crate) struct Tarjan {
    index: Vec<usize>,
    low: Vec<usize>,
    on_stack: Vec<bool>,
    visited: Vec<usize>,
}

impl Tarjan {
    pub(crate) fn new(num_nodes: usize) -> Tarjan {
        Tarjan {
            index: vec![UNVISITED; num_nodes],
            low: vec![0; num_nodes],
            on_stack: vec![false; num_nodes],
            visited: Vec::new(),
        }
    }

    pub(crate) fn run<F, I>(&mut self, roots: &[usize], mut succ: F) -> Vec<Vec<usize>>
    where
        F: FnMut(usize) -> I,
        I: Iterator<Item = usize>,
    {
        let Tarjan {
            index,
            low,
            on_stack,
            visited,
        } = self;
        let mut stack: Vec<usize> = Vec::new();
        let mut frames: Vec<(usize, I)> = Vec::new();
        let mut next_index = 0;
        let mut out = Vec::new();

        for &root in roots {
            if index[root] != UNVISITED {
                continue;
            }
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            visited.push(root);
            stack.push(root);
            on_stack[root] = true;
            frames.push((root, succ(root)));

            while let Some((v, it)) = frames.last_mut() {
                let v = *v;
                if let Some(w) = it.next() {
                    if index[w] == UNVISITED {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        visited.push(w);
                        stack.push(w);
                        on_stack[w] = true;
                        frames.push((w, succ(w)));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                frames.pop();
                if let Some((parent, _)) = frames.last() {
                    let p = *parent;
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
        for v in visited.drain(..) {
            index[v] = UNVISITED;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cycles_and_singletons() {
        // 0 -> 1 -> 2 -> 0, 2 -> 3, 3 -> 4, 4 -> 3
        let adj = [vec![1], vec![2], vec![0, 3], vec![4], vec![3]];
        let mut sccs = tarjan(5, &[0], |v| adj[v].iter().copied());
        sccs.sort();
        assert_eq!(sccs, vec![vec![0, 1, 2], vec![3, 4]]);
    }

    #[test]
    fn only_reachable_nodes() {
        let adj = [vec![0], vec![0]];
        let sccs = tarjan(2, &[0], |v| adj[v].iter().copied());
        assert_eq!(sccs, vec![vec![0]]);
    }

    #[test]
    fn workspace_is_reset_between_runs() {
        let adj = [vec![1], vec![0], vec![2]];
        let mut t = Tarjan::new(3);
        assert_eq!(t.run(&[0], |v| adj[v].iter().copied()), vec![vec![0, 1]]);
        assert_eq!(t.run(&[0, 2], |v| adj[v].iter().copied()).len(), 2);
    }
}
