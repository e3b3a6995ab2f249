"""Named pants graphs and coordinate families used by the CLI and tests."""

from __future__ import annotations

import numpy as np

from .surface import FNCoordinates, PantsGraph


def genus2_graph() -> PantsGraph:
    """Two pants glued along three curves (all nonseparating)."""
    return PantsGraph(2, (((0, 0), (1, 0)), ((0, 1), (1, 1)), ((0, 2), (1, 2))))


def genus2_symmetric(length: float = 2.0) -> FNCoordinates:
    return FNCoordinates(np.full(3, length), np.zeros(3))


def fig5_graph() -> PantsGraph:
    """Genus-3 pants decomposition by six nonseparating curves.

    Four pants a, b, c, d: curve 0 and curve 1 both join a to c (a loop
    around the left handle can cross just these two), curve 2 joins a-b,
    curve 3 joins c-d, curves 4 and 5 both join b to d.
    """
    return PantsGraph(4, (
        ((0, 0), (2, 0)),
        ((0, 1), (2, 1)),
        ((0, 2), (1, 0)),
        ((2, 2), (3, 0)),
        ((1, 1), (3, 1)),
        ((1, 2), (3, 2)),
    ))


def fig5_example1(n: float, delta: float) -> FNCoordinates:
    """Pinching family on the genus-3 graph: curve 0 at n^-delta, rest 1/n."""
    if n <= 1:
        raise ValueError("n must exceed 1")
    lengths = np.full(6, 1.0 / n)
    lengths[0] = float(n) ** (-delta)
    return FNCoordinates(lengths, np.zeros(6))


def fig5_prime_graph() -> PantsGraph:
    """Regluing of the genus-3 graph with curve 0 a handle loop.

    Pants 0 carries curve 0 on two of its own slots; its third boundary
    (curve 1) is then separating. The short dual to curve 0 crosses only
    curve 0, once.
    """
    return PantsGraph(4, (
        ((0, 0), (0, 1)),
        ((0, 2), (1, 0)),
        ((1, 1), (2, 0)),
        ((1, 2), (3, 0)),
        ((2, 1), (3, 1)),
        ((2, 2), (3, 2)),
    ))


def fig5_example63(n: float) -> FNCoordinates:
    """Family where the handle curve is slightly longer than the systoles."""
    if n <= 1:
        raise ValueError("n must exceed 1")
    lengths = np.full(6, 1.0 / n)
    lengths[0] = float(n) ** (-(1.0 - 1.0 / n))
    return FNCoordinates(lengths, np.zeros(6))


PRESET_GRAPHS = {
    "sym-g2": genus2_graph,
    "fig5-example1": fig5_graph,
    "fig5-example63": fig5_prime_graph,
}


def preset_surface(name: str, n: float = 10.0, delta: float = 1.0):
    """(graph, coordinates) for a named preset."""
    if name == "sym-g2":
        return genus2_graph(), genus2_symmetric()
    if name == "fig5-example1":
        return fig5_graph(), fig5_example1(n, delta)
    if name == "fig5-example63":
        return fig5_prime_graph(), fig5_example63(n)
    raise KeyError(f"unknown preset {name!r}")
