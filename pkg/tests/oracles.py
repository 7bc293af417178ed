"""Independent reference implementations used to cross-check the package.

Everything here works from plain edge lists and shares no code with the
package under test: distances come from networkx, the four-point delta from
a literal pure-python triple loop.
"""

import math

import networkx as nx


def nx_graph(edges):
    """networkx graph from (u, v, w) triples."""
    G = nx.Graph()
    for u, v, w in edges:
        G.add_edge(u, v, weight=w)
    return G


def nx_distances(edges, source):
    """dict vertex -> shortest-path length, Dijkstra via networkx."""
    return nx.single_source_dijkstra_path_length(nx_graph(edges), source)


def nx_hops(edges, source):
    G = nx.Graph()
    for u, v, _ in edges:
        G.add_edge(u, v)
    return nx.single_source_shortest_path_length(G, source)


def brute_gromov_product(d, x, y, w):
    return 0.5 * (d[x][w] + d[y][w] - d[x][y])


def brute_delta(edges, base, subset=None):
    """Exact base-point delta by scanning every ordered triple in python.

    Returns (delta, witness) with the lexicographically smallest witness,
    mirroring the contract of the fast scan but sharing none of its code.
    """
    G = nx_graph(edges)
    nodes = sorted(G.nodes()) if subset is None else sorted(subset)
    d = dict(nx.all_pairs_dijkstra_path_length(G))
    best = -math.inf
    witness = None
    for x in nodes:
        for y in nodes:
            pxy = brute_gromov_product(d, x, y, base)
            for z in nodes:
                pxz = brute_gromov_product(d, x, z, base)
                pzy = brute_gromov_product(d, z, y, base)
                val = min(pxz, pzy) - pxy
                if val > best:
                    best = val
                    witness = (x, y, z)
    return max(0.0, best), witness


def shoelace(points):
    """Signed polygon area from a ccw coordinate list."""
    s = 0.0
    for (x0, y0), (x1, y1) in zip(points, points[1:] + points[:1]):
        s += x0 * y1 - x1 * y0
    return 0.5 * s
