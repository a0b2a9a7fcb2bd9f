"""Trigonometric moment inversion: Hankel-pencil frequencies, Vandermonde amplitudes.

Given 2r equispaced complex moments of a sum of r complex exponentials,
the eigenvalues of the shifted-versus-unshifted Hankel pencil are the
unit-circle nodes exp(i lambda_j); the amplitudes follow from one
Vandermonde solve against the first r moments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import IllConditionedNodes, RankDeficientSignal
from .structure import numeric_rank
from .tolerances import ToleranceSet


@dataclass(frozen=True)
class TrigSignal:
    """Frequencies in (-pi, pi] and complex amplitudes of an exponential sum."""

    freqs: tuple[float, ...]
    amps: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "freqs", tuple(float(f) for f in self.freqs))
        object.__setattr__(self, "amps", tuple(complex(a) for a in self.amps))
        if len(self.freqs) != len(self.amps):
            raise ValueError("freqs and amps must have the same length")


def trig_forward(sig: TrigSignal, count: int) -> np.ndarray:
    """Moments m_k = sum_j mu_j exp(i k lambda_j) for k = 0..count-1."""
    if count < 1:
        raise ValueError("count must be >= 1")
    k = np.arange(count)[:, None]
    lam = np.asarray(sig.freqs)[None, :]
    amps = np.asarray(sig.amps)
    return (np.exp(1j * k * lam) * amps).sum(axis=1)


def _angular_gap(a: float, b: float) -> float:
    d = abs(a - b) % (2.0 * np.pi)
    return min(d, 2.0 * np.pi - d)


def trig_invert(
    m: Sequence[complex],
    r: int,
    tol: ToleranceSet | None = None,
    full_output: bool = False,
):
    """Recover r frequencies and amplitudes from 2r equispaced moments.

    Parameters
    ----------
    m : sequence of complex, length 2r
        Moments m_0..m_{2r-1}.
    r : int
        Number of modes the signal is assumed to carry.
    full_output : bool
        When true, also return a dict with the raw pencil eigenvalues and
        their distance from the unit circle (they are projected onto it
        before the amplitude solve).

    Raises
    ------
    RankDeficientSignal
        The r x r moment matrix has numeric rank below r: the data does
        not carry r resolvable modes.
    IllConditionedNodes
        Two recovered frequencies coincide within the separation tolerance.
    """
    tol = tol or ToleranceSet()
    if r < 1:
        raise ValueError("mode count must be >= 1")
    mv = np.asarray(m, dtype=complex)
    if mv.ndim != 1 or mv.size != 2 * r:
        raise ValueError(f"need exactly 2r = {2 * r} moments, got {mv.size}")

    H0 = np.array([[mv[i + j] for j in range(r)] for i in range(r)])
    H1 = np.array([[mv[i + j + 1] for j in range(r)] for i in range(r)])
    rank = numeric_rank(H0, tol.rank)
    if rank < r:
        raise RankDeficientSignal(f"moment matrix rank {rank} < requested modes {r}")

    eigs = np.linalg.eigvals(np.linalg.solve(H0, H1))
    deviation = np.abs(np.abs(eigs) - 1.0)
    freqs = np.angle(eigs)  # (-pi, pi]
    for i in range(r):
        for j in range(i + 1, r):
            if _angular_gap(freqs[i], freqs[j]) < tol.separation:
                raise IllConditionedNodes(
                    f"frequencies {freqs[i]} and {freqs[j]} closer than {tol.separation}"
                )

    nodes = np.exp(1j * freqs)  # moduli forced to one
    V = nodes[None, :] ** np.arange(r)[:, None]
    amps = np.linalg.solve(V, mv[:r])

    order = np.argsort(freqs)
    sig = TrigSignal(tuple(freqs[order]), tuple(amps[order]))
    if full_output:
        info = {
            "eigenvalues": [complex(z) for z in eigs[order]],
            "unit_circle_deviation": [float(d) for d in deviation[order]],
        }
        return sig, info
    return sig
