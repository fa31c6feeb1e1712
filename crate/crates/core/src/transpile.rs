//! Routing onto a directed coupling graph: CNOTs only along arrows, control
//! reversal where the arrow points the wrong way, SWAP chains for distant pairs.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, CircuitOp};
use crate::error::{Error, Result};
use crate::gate::GateName;

const IBMQX4_JSON: &str = include_str!("../data/ibmqx4.json");

/// Coupling-map JSON: `{"qubits": 5, "edges": [[1, 0], ...]}`, each edge `[control, target]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct CouplingGraph {
    num_physical: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    qubits: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<RawGraph> for CouplingGraph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        CouplingGraph::new(raw.qubits, raw.edges.into_iter().map(|[c, t]| (c, t)))
    }
}

impl From<CouplingGraph> for RawGraph {
    fn from(g: CouplingGraph) -> Self {
        RawGraph {
            qubits: g.num_physical,
            edges: g.edges.into_iter().map(|(c, t)| [c, t]).collect(),
        }
    }
}

impl CouplingGraph {
    pub fn new(num_physical: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if num_physical == 0 {
            return Err(Error::InvalidGraph("no physical qubits".into()));
        }
        let mut set = BTreeSet::new();
        for (c, t) in edges {
            if c == t {
                return Err(Error::InvalidGraph(format!("self-loop on {c}")));
            }
            if c >= num_physical || t >= num_physical {
                return Err(Error::InvalidGraph(format!(
                    "edge ({c}, {t}) outside {num_physical} qubits"
                )));
            }
            set.insert((c, t));
        }
        Ok(Self {
            num_physical,
            edges: set,
        })
    }

    /// The bundled 5-qubit bowtie map.
    pub fn ibmqx4() -> Self {
        serde_json::from_str(IBMQX4_JSON).expect("bundled coupling map is valid")
    }

    /// All-to-all in both directions.
    pub fn complete(num_physical: usize) -> Result<Self> {
        let n = num_physical;
        Self::new(n, (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))))
    }

    pub fn num_physical(&self) -> usize {
        self.num_physical
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, control: usize, target: usize) -> bool {
        self.edges.contains(&(control, target))
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.has_edge(a, b) || self.has_edge(b, a)
    }

    fn neighbors(&self, q: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_physical).filter(move |&p| self.adjacent(q, p))
    }

    /// Every shortest undirected path from `from` to `to`, in lexicographic order.
    pub fn shortest_paths(&self, from: usize, to: usize) -> Result<Vec<Vec<usize>>> {
        for q in [from, to] {
            if q >= self.num_physical {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits: self.num_physical,
                });
            }
        }
        let mut dist = vec![usize::MAX; self.num_physical];
        dist[to] = 0;
        let mut queue = VecDeque::from([to]);
        while let Some(q) = queue.pop_front() {
            for p in self.neighbors(q) {
                if dist[p] == usize::MAX {
                    dist[p] = dist[q] + 1;
                    queue.push_back(p);
                }
            }
        }
        if dist[from] == usize::MAX {
            return Err(Error::Disconnected(from, to));
        }
        // Walk downhill in distance-to-target; neighbors are visited in index
        // order, so paths come out sorted.
        let mut paths = Vec::new();
        let mut stack = vec![vec![from]];
        while let Some(path) = stack.pop() {
            let last = *path.last().unwrap();
            if last == to {
                paths.push(path);
                continue;
            }
            let next: Vec<usize> = self.neighbors(last).filter(|&p| dist[p] + 1 == dist[last]).collect();
            for &p in next.iter().rev() {
                let mut extended = path.clone();
                extended.push(p);
                stack.push(extended);
            }
        }
        Ok(paths)
    }
}

/// Logical-to-physical placement. Always a full permutation of the physical
/// qubits; logical indices past the circuit's width are idle padding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct QubitMapping {
    l2p: Vec<usize>,
}

impl TryFrom<Vec<usize>> for QubitMapping {
    type Error = Error;

    fn try_from(l2p: Vec<usize>) -> Result<Self> {
        let n = l2p.len();
        Self::padded(&l2p, n)
    }
}

impl From<QubitMapping> for Vec<usize> {
    fn from(m: QubitMapping) -> Self {
        m.l2p
    }
}

impl QubitMapping {
    pub fn identity(n: usize) -> Self {
        Self { l2p: (0..n).collect() }
    }

    /// Places logical `i` on `prefix[i]`, then fills the remaining logical
    /// slots with the unused physical qubits in ascending order.
    pub fn padded(prefix: &[usize], num_physical: usize) -> Result<Self> {
        let mut used = vec![false; num_physical];
        for &p in prefix {
            if p >= num_physical {
                return Err(Error::InvalidMapping(format!("physical qubit {p} out of range")));
            }
            if std::mem::replace(&mut used[p], true) {
                return Err(Error::InvalidMapping(format!("physical qubit {p} used twice")));
            }
        }
        let mut l2p = prefix.to_vec();
        l2p.extend((0..num_physical).filter(|&p| !used[p]));
        Ok(Self { l2p })
    }

    /// Logical A, a, b, c on physical 3, 2, 1, 0.
    pub fn hbb_default(num_physical: usize) -> Result<Self> {
        Self::padded(&[3, 2, 1, 0], num_physical)
    }

    pub fn len(&self) -> usize {
        self.l2p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.l2p.is_empty()
    }

    pub fn physical(&self, logical: usize) -> usize {
        self.l2p[logical]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.l2p
    }

    fn logical_at(&self, physical: usize) -> usize {
        self.l2p.iter().position(|&p| p == physical).expect("mapping is a permutation")
    }

    fn swap_physical(&mut self, p: usize, q: usize) {
        let (lp, lq) = (self.logical_at(p), self.logical_at(q));
        self.l2p.swap(lp, lq);
    }
}

/// CNOT(control→target) in a form the graph accepts: the native gate if the
/// arrow exists, else H⊗H · CNOT(target→control) · H⊗H.
pub fn reverse_control(control: usize, target: usize, graph: &CouplingGraph) -> Result<Vec<CircuitOp>> {
    if graph.has_edge(control, target) {
        return Ok(vec![CircuitOp::gate(GateName::Cnot, &[control, target])]);
    }
    if !graph.has_edge(target, control) {
        return Err(Error::NotAdjacent(control, target));
    }
    let hh = || [CircuitOp::gate(GateName::H, &[control]), CircuitOp::gate(GateName::H, &[target])];
    let mut ops = hh().to_vec();
    ops.push(CircuitOp::gate(GateName::Cnot, &[target, control]));
    ops.extend(hh());
    Ok(ops)
}

/// SWAP as three alternating CNOTs, each reversed if the graph lacks its arrow.
pub fn decompose_swap(a: usize, b: usize, graph: &CouplingGraph) -> Result<Vec<CircuitOp>> {
    if !graph.adjacent(a, b) {
        return Err(Error::NotAdjacent(a, b));
    }
    // Start with the native direction so only the middle CNOT, if any, is reversed.
    let (x, y) = if graph.has_edge(a, b) { (a, b) } else { (b, a) };
    let mut ops = reverse_control(x, y, graph)?;
    ops.extend(reverse_control(y, x, graph)?);
    ops.extend(reverse_control(x, y, graph)?);
    Ok(ops)
}

fn reversals_in_swap(a: usize, b: usize, graph: &CouplingGraph) -> usize {
    usize::from(!(graph.has_edge(a, b) && graph.has_edge(b, a)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranspileReport {
    pub circuit: Circuit,
    pub initial_mapping: QubitMapping,
    pub final_mapping: QubitMapping,
    pub swaps: usize,
    /// Control reversals inserted, each an H⊗H pair on both sides of a CNOT.
    pub h_pairs: usize,
}

struct Router<'g> {
    graph: &'g CouplingGraph,
    mapping: QubitMapping,
    out: Circuit,
    swaps: usize,
    h_pairs: usize,
}

impl Router<'_> {
    fn emit(&mut self, ops: Vec<CircuitOp>) -> Result<()> {
        self.out.extend(ops)?;
        Ok(())
    }

    fn cnot_native(&mut self, pc: usize, pt: usize) -> Result<()> {
        if !self.graph.has_edge(pc, pt) {
            self.h_pairs += 1;
        }
        let ops = reverse_control(pc, pt, self.graph)?;
        self.emit(ops)
    }

    fn swap(&mut self, p: usize, q: usize) -> Result<()> {
        let ops = decompose_swap(p, q, self.graph)?;
        self.h_pairs += reversals_in_swap(p, q, self.graph);
        self.swaps += 1;
        self.mapping.swap_physical(p, q);
        self.emit(ops)
    }

    fn cnot(&mut self, lc: usize, lt: usize) -> Result<()> {
        let (pc, pt) = (self.mapping.physical(lc), self.mapping.physical(lt));
        if !self.graph.adjacent(pc, pt) {
            let path = self.best_path(pc, pt)?;
            for w in path[..path.len() - 1].windows(2) {
                self.swap(w[0], w[1])?;
            }
        }
        let (pc, pt) = (self.mapping.physical(lc), self.mapping.physical(lt));
        self.cnot_native(pc, pt)
    }

    /// Shortest path with the fewest control reversals; the lexicographically
    /// smallest wins ties.
    fn best_path(&self, from: usize, to: usize) -> Result<Vec<usize>> {
        let g = self.graph;
        let cost = |path: &Vec<usize>| -> usize {
            let n = path.len();
            let swaps: usize = path[..n - 1].windows(2).map(|w| reversals_in_swap(w[0], w[1], g)).sum();
            swaps + usize::from(!g.has_edge(path[n - 2], path[n - 1]))
        };
        let paths = g.shortest_paths(from, to)?;
        Ok(paths.into_iter().min_by_key(cost).expect("connected pair has a path"))
    }
}

/// Rewrites `circuit` onto `graph`, starting from the placement `initial`.
/// Only CNOT remains as a two-qubit gate: CZ becomes H·CNOT·H and SWAP three
/// CNOTs. Measurements must form a terminal block; conditionals are rejected.
pub fn route(circuit: &Circuit, graph: &CouplingGraph, initial: &QubitMapping) -> Result<TranspileReport> {
    let n = graph.num_physical();
    if circuit.num_qubits() > n {
        return Err(Error::TooManyQubits {
            got: circuit.num_qubits(),
            max: n,
        });
    }
    if initial.len() != n {
        return Err(Error::InvalidMapping(format!(
            "mapping covers {} qubits, graph has {n}",
            initial.len()
        )));
    }
    let mut router = Router {
        graph,
        mapping: initial.clone(),
        out: Circuit::new(n, circuit.num_clbits())?,
        swaps: 0,
        h_pairs: 0,
    };
    let mut measuring = false;
    for op in circuit.ops() {
        match op {
            CircuitOp::Conditional { .. } => {
                return Err(Error::Unsupported("classically conditioned gates".into()));
            }
            CircuitOp::Measure { qubit, clbit } => {
                measuring = true;
                let p = router.mapping.physical(*qubit);
                router.emit(vec![CircuitOp::measure(p, *clbit)])?;
            }
            CircuitOp::Gate { .. } if measuring => {
                return Err(Error::Unsupported("gate after a measurement".into()));
            }
            CircuitOp::Gate { gate, targets } => match (gate, targets.as_slice()) {
                (GateName::Cnot, &[c, t]) => router.cnot(c, t)?,
                (GateName::Cz, &[c, t]) => {
                    let pt = |r: &Router| r.mapping.physical(t);
                    router.emit(vec![CircuitOp::gate(GateName::H, &[pt(&router)])])?;
                    router.cnot(c, t)?;
                    router.emit(vec![CircuitOp::gate(GateName::H, &[pt(&router)])])?;
                }
                (GateName::Swap, &[a, b]) => {
                    router.cnot(a, b)?;
                    router.cnot(b, a)?;
                    router.cnot(a, b)?;
                }
                (gate, &[q]) => {
                    let p = router.mapping.physical(q);
                    router.emit(vec![CircuitOp::gate(*gate, &[p])])?;
                }
                _ => return Err(Error::Unsupported(format!("gate {gate}"))),
            },
        }
    }
    Ok(TranspileReport {
        circuit: router.out,
        initial_mapping: initial.clone(),
        final_mapping: router.mapping,
        swaps: router.swaps,
        h_pairs: router.h_pairs,
    })
}

/// True if every two-qubit gate is a CNOT along a directed edge.
pub fn is_legal(circuit: &Circuit, graph: &CouplingGraph) -> bool {
    circuit.ops().iter().all(|op| match op {
        CircuitOp::Gate { gate, targets } | CircuitOp::Conditional { gate, targets, .. } if targets.len() == 2 => {
            *gate == GateName::Cnot && graph.has_edge(targets[0], targets[1])
        }
        _ => true,
    })
}

/// SWAP gates (unrouted) that carry every logical qubit from its position in
/// `from` back to its position in `to`.
pub fn restore_layout(from: &QubitMapping, to: &QubitMapping) -> Vec<CircuitOp> {
    let mut current = from.clone();
    let mut ops = Vec::new();
    for l in 0..to.len() {
        let (p, want) = (current.physical(l), to.physical(l));
        if p != want {
            ops.push(CircuitOp::gate(GateName::Swap, &[p, want]));
            current.swap_physical(p, want);
        }
    }
    ops
}

fn unitary_part(circuit: &Circuit, num_qubits: usize, map: impl Fn(usize) -> usize) -> Result<Circuit> {
    let mut c = Circuit::new(num_qubits, 0)?;
    c.extend(
        circuit
            .ops()
            .iter()
            .filter(|op| op.is_unitary())
            .map(|op| op.relabeled(&map)),
    )?;
    Ok(c)
}

/// Checks that the routed circuit, with the final permutation undone, matches
/// the original placed by the initial mapping, up to global phase.
/// Measurements are ignored.
pub fn verify(original: &Circuit, report: &TranspileReport, tol: f64) -> Result<bool> {
    let n = report.circuit.num_qubits();
    let placed = unitary_part(original, n, |q| report.initial_mapping.physical(q))?;
    let mut routed = unitary_part(&report.circuit, n, |q| q)?;
    routed.extend(restore_layout(&report.final_mapping, &report.initial_mapping))?;
    crate::circuit::equivalent_up_to_phase(&placed, &routed, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{equivalent_up_to_phase, unitary_of};
    use proptest::prelude::*;

    fn circuit_of(n: usize, ops: Vec<CircuitOp>) -> Circuit {
        let mut c = Circuit::new(n, 0).unwrap();
        c.extend(ops).unwrap();
        c
    }

    #[test]
    fn bundled_map_parses() {
        let g = CouplingGraph::ibmqx4();
        assert_eq!(g.num_physical(), 5);
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            vec![(1, 0), (2, 0), (2, 1), (3, 2), (3, 4), (4, 2)]
        );
        assert!(g.has_edge(3, 2) && !g.has_edge(2, 3));
    }

    #[test]
    fn graph_validation() {
        assert!(CouplingGraph::new(2, [(0, 0)]).is_err());
        assert!(CouplingGraph::new(2, [(0, 2)]).is_err());
        assert!(serde_json::from_str::<CouplingGraph>(r#"{"qubits": 2, "edges": [[1, 1]]}"#).is_err());
    }

    #[test]
    fn mapping_validation() {
        assert!(QubitMapping::padded(&[0, 0], 3).is_err());
        assert!(QubitMapping::padded(&[5], 3).is_err());
        assert_eq!(QubitMapping::hbb_default(5).unwrap().as_slice(), &[3, 2, 1, 0, 4]);
        assert!(serde_json::from_str::<QubitMapping>("[1, 1]").is_err());
    }

    #[test]
    fn reversal_on_the_corroborated_edge() {
        let g = CouplingGraph::ibmqx4();
        let ops = reverse_control(2, 3, &g).unwrap();
        let expected = vec![
            CircuitOp::gate(GateName::H, &[2]),
            CircuitOp::gate(GateName::H, &[3]),
            CircuitOp::gate(GateName::Cnot, &[3, 2]),
            CircuitOp::gate(GateName::H, &[2]),
            CircuitOp::gate(GateName::H, &[3]),
        ];
        assert_eq!(ops, expected);
        let direct = circuit_of(5, vec![CircuitOp::gate(GateName::Cnot, &[2, 3])]);
        let u_direct = unitary_of::<f64>(&direct).unwrap();
        let u_sandwich = unitary_of::<f64>(&circuit_of(5, ops)).unwrap();
        assert!(u_direct.max_abs_diff(&u_sandwich) < 1e-12);
        assert_eq!(reverse_control(3, 2, &g).unwrap().len(), 1);
        assert!(matches!(reverse_control(0, 3, &g), Err(Error::NotAdjacent(0, 3))));
    }

    #[test]
    fn swap_decompositions() {
        let swap = unitary_of::<f64>(&circuit_of(2, vec![CircuitOp::gate(GateName::Swap, &[0, 1])])).unwrap();
        let both = CouplingGraph::complete(2).unwrap();
        let ops = decompose_swap(0, 1, &both).unwrap();
        assert_eq!(ops.len(), 3);
        assert!(unitary_of::<f64>(&circuit_of(2, ops)).unwrap().max_abs_diff(&swap) < 1e-12);

        let one_way = CouplingGraph::new(2, [(1, 0)]).unwrap();
        let ops = decompose_swap(0, 1, &one_way).unwrap();
        assert!(is_legal(&circuit_of(2, ops.clone()), &one_way));
        assert_eq!(ops.len(), 1 + 5 + 1);
        assert!(unitary_of::<f64>(&circuit_of(2, ops.clone())).unwrap().max_abs_diff(&swap) < 1e-12);

        let mut twice = ops.clone();
        twice.extend(ops);
        let id = unitary_of::<f64>(&circuit_of(2, twice)).unwrap();
        assert!(id.max_abs_diff(&crate::matrix::CMatrix::identity(4)) < 1e-12);

        let apart = CouplingGraph::new(3, [(0, 1)]).unwrap();
        assert!(decompose_swap(0, 2, &apart).is_err());
    }

    #[test]
    fn shortest_paths_are_sorted_and_complete() {
        let g = CouplingGraph::ibmqx4();
        assert_eq!(g.shortest_paths(3, 0).unwrap(), vec![vec![3, 2, 0]]);
        assert_eq!(g.shortest_paths(4, 1).unwrap(), vec![vec![4, 2, 1]]);
        let square = CouplingGraph::new(4, [(0, 1), (1, 2), (0, 3), (3, 2)]).unwrap();
        assert_eq!(square.shortest_paths(0, 2).unwrap(), vec![vec![0, 1, 2], vec![0, 3, 2]]);
    }

    #[test]
    fn legal_circuit_is_unchanged() {
        let g = CouplingGraph::ibmqx4();
        let mut c = Circuit::new(5, 2).unwrap();
        c.h(3).unwrap().cnot(3, 2).unwrap().cnot(2, 0).unwrap().x(4).unwrap().cnot(4, 2).unwrap();
        c.measure(0, 0).unwrap().measure(2, 1).unwrap();
        let report = route(&c, &g, &QubitMapping::identity(5)).unwrap();
        assert_eq!(report.circuit, c);
        assert_eq!((report.swaps, report.h_pairs), (0, 0));
    }

    #[test]
    fn rejects_disconnected_and_conditionals() {
        let g = CouplingGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        let mut c = Circuit::new(4, 0).unwrap();
        c.cnot(0, 3).unwrap();
        assert!(matches!(
            route(&c, &g, &QubitMapping::identity(4)),
            Err(Error::Disconnected(..))
        ));
        let mut c = Circuit::new(2, 1).unwrap();
        c.measure(0, 0).unwrap().conditional(GateName::X, &[1], 0).unwrap();
        let g = CouplingGraph::complete(2).unwrap();
        assert!(matches!(route(&c, &g, &QubitMapping::identity(2)), Err(Error::Unsupported(_))));
        let mut c = Circuit::new(2, 1).unwrap();
        c.measure(0, 0).unwrap().h(1).unwrap();
        assert!(route(&c, &g, &QubitMapping::identity(2)).is_err());
    }

    #[test]
    fn distant_cnot_needs_a_swap() {
        let g = CouplingGraph::ibmqx4();
        let mut c = Circuit::new(5, 0).unwrap();
        c.cnot(3, 0).unwrap();
        let report = route(&c, &g, &QubitMapping::identity(5)).unwrap();
        assert_eq!(report.swaps, 1);
        assert!(is_legal(&report.circuit, &g));
        assert_eq!(report.final_mapping.as_slice(), &[0, 1, 3, 2, 4]);
        assert!(verify(&c, &report, 1e-10).unwrap());
    }

    #[test]
    fn restore_layout_inverts_permutation() {
        let from = QubitMapping::padded(&[2, 0, 1], 3).unwrap();
        let to = QubitMapping::identity(3);
        let ops = restore_layout(&from, &to);
        let mut m = from.clone();
        for op in &ops {
            let q = op.qubits();
            m.swap_physical(q[0], q[1]);
        }
        assert_eq!(m, to);
    }

    #[test]
    fn verify_catches_a_wrong_route() {
        let g = CouplingGraph::ibmqx4();
        let mut c = Circuit::new(5, 0).unwrap();
        c.h(0).unwrap().cnot(1, 0).unwrap();
        let mut report = route(&c, &g, &QubitMapping::identity(5)).unwrap();
        assert!(verify(&c, &report, 1e-10).unwrap());
        report.circuit.x(4).unwrap();
        assert!(!verify(&c, &report, 1e-10).unwrap());
        assert!(!equivalent_up_to_phase(&c, &report.circuit, 1e-10).unwrap());
    }

    fn arb_op() -> impl Strategy<Value = CircuitOp> {
        let one = (0usize..8, 0usize..5).prop_map(|(g, q)| {
            let gates = [
                GateName::H,
                GateName::X,
                GateName::Y,
                GateName::Z,
                GateName::S,
                GateName::Sdg,
                GateName::T,
                GateName::Id,
            ];
            CircuitOp::gate(gates[g], &[q])
        });
        let two = (0usize..3, 0usize..5, 1usize..5).prop_map(|(g, a, d)| {
            let gate = [GateName::Cnot, GateName::Cz, GateName::Swap][g];
            CircuitOp::gate(gate, &[a, (a + d) % 5])
        });
        prop_oneof![one, two]
    }

    fn arb_mapping() -> impl Strategy<Value = QubitMapping> {
        Just((0..5).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| QubitMapping::padded(&v, 5).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn routing_is_legal_and_sound(ops in prop::collection::vec(arb_op(), 0..=12), mapping in arb_mapping()) {
            let g = CouplingGraph::ibmqx4();
            let c = circuit_of(5, ops);
            let report = route(&c, &g, &mapping).unwrap();
            prop_assert!(is_legal(&report.circuit, &g));
            prop_assert!(verify(&c, &report, 1e-10).unwrap());
        }

        #[test]
        fn routing_legal_output_is_idempotent(ops in prop::collection::vec(arb_op(), 0..=12)) {
            let g = CouplingGraph::ibmqx4();
            let first = route(&circuit_of(5, ops), &g, &QubitMapping::identity(5)).unwrap();
            let again = route(&first.circuit, &g, &QubitMapping::identity(5)).unwrap();
            prop_assert_eq!(&again.circuit, &first.circuit);
            prop_assert_eq!((again.swaps, again.h_pairs), (0, 0));
        }
    }
}
