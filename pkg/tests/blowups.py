"""Random blowup sequences shared by the graph tests and the acceptance suite."""

from singcurve.graph import blowup_edge, blowup_free_point


def random_blowups(graph, rng, length):
    """Apply ``length`` blowups, each at a random free point or a random edge."""
    steps = []
    for _ in range(length):
        if graph.edges and rng.random() < 0.5:
            edge = rng.choice(graph.edges)
            graph = blowup_edge(graph, edge)
            steps.append(("edge", edge))
        else:
            sigma = rng.choice(graph.ids)
            graph = blowup_free_point(graph, sigma)
            steps.append(("free", sigma))
    return graph, steps
