"""
Estructura del graf G(C): components fortament connexes, components embornal,
topologia estrella i test de doble estocasticitat.
"""
from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple

import networkx as nx
import numpy as np

from config import ROW_SUM_TOL
from network.influence import InfluenceNetwork, StubbornnessProfile, as_power_vector


@dataclass(frozen=True)
class GraphStructure:
    """Estructura derivada de C. Tots els índexs són 0-based."""
    sccs: Tuple[FrozenSet[int], ...]
    sink_sccs: Tuple[FrozenSet[int], ...]
    star_center: Optional[int]
    star_centers: Tuple[int, ...]
    doubly_stochastic: bool

    @property
    def is_star(self) -> bool:
        return self.star_center is not None


def influence_graph(net: InfluenceNetwork) -> nx.DiGraph:
    """Aresta i -> j si i dona pes C_ij > 0 a j."""
    G = nx.DiGraph()
    G.add_nodes_from(range(net.n))
    rows, cols = np.nonzero(net.C > 0)
    G.add_edges_from(zip(rows.tolist(), cols.tolist()))
    return G


def _star_centers(G: nx.DiGraph) -> Tuple[int, ...]:
    candidates = []
    for c in G.nodes:
        if all(u == c or v == c for u, v in G.edges):
            candidates.append(c)
    return tuple(candidates)


def analyze_structure(net: InfluenceNetwork) -> GraphStructure:
    """
    Analitza el graf d'influència.

    Args:
        net: Xarxa validada.

    Returns:
        GraphStructure amb SCCs (Tarjan-Nuutila de networkx), SCCs embornal,
        centres d'estrella candidats i el test de doble estocasticitat.
    """
    G = influence_graph(net)

    sccs = sorted((frozenset(c) for c in nx.strongly_connected_components(G)), key=min)
    dag = nx.condensation(G, scc=sccs)
    sink_sccs = [sccs[k] for k in dag.nodes if dag.out_degree(k) == 0]
    sink_sccs.sort(key=min)

    centers = _star_centers(G)
    doubly = bool(np.all(np.abs(net.C.sum(axis=0) - 1.0) <= ROW_SUM_TOL))

    return GraphStructure(
        sccs=tuple(sccs),
        sink_sccs=tuple(sink_sccs),
        star_center=centers[0] if centers else None,
        star_centers=centers,
        doubly_stochastic=doubly,
    )


def check_assumption_a1(net: InfluenceNetwork, prof: StubbornnessProfile, x0) -> bool:
    """
    Assumpció 1: cada SCC embornal té algun individu tossut (theta_i < 1),
    i theta_i < 1 si x0 = e_i.
    """
    structure = analyze_structure(net)
    theta = prof.theta

    for sink in structure.sink_sccs:
        if not any(theta[i] < 1 for i in sink):
            return False

    x0 = as_power_vector(x0, net.n)
    vertex = np.flatnonzero(x0.x == 1.0)
    if vertex.size == 1 and theta[vertex[0]] >= 1:
        return False

    return True


def check_assumption_a2(prof: StubbornnessProfile) -> bool:
    """Assumpció 2: tots theta_i < 1 i algun theta_j > 0."""
    return bool(prof.theta_max < 1 and prof.theta_max > 0)
