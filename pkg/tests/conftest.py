import time

import numpy as np
import pytest

from paritysim import MultiModeState, SingleModeState, normalize

SESSION_START = time.monotonic()


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_single(rng, cutoff: int) -> SingleModeState:
    amps = rng.normal(size=cutoff + 1) + 1j * rng.normal(size=cutoff + 1)
    return normalize(SingleModeState(amps))


def real_overlap_partner(rng, psi: SingleModeState) -> SingleModeState:
    """A random normalized state whose overlap with psi is exactly real."""
    w = rng.normal(size=psi.cutoff + 1) + 1j * rng.normal(size=psi.cutoff + 1)
    overlap = np.vdot(psi.amplitudes, w)
    w = w - 1j * overlap.imag * psi.amplitudes
    return normalize(SingleModeState(w))


def orthogonal_partner(rng, psi: SingleModeState) -> SingleModeState:
    w = rng.normal(size=psi.cutoff + 1) + 1j * rng.normal(size=psi.cutoff + 1)
    w = w - np.vdot(psi.amplitudes, w) * psi.amplitudes
    return normalize(SingleModeState(w))


def random_qubit(rng):
    from paritysim import QubitAmplitudes

    pair = rng.normal(size=2) + 1j * rng.normal(size=2)
    pair = pair / np.linalg.norm(pair)
    return QubitAmplitudes(pair[0], pair[1])


def random_multimode(rng, modes: int, per_mode_cutoff: int, entries: int,
                     max_total: int | None = None) -> MultiModeState:
    amps = {}
    while len(amps) < entries:
        occ = tuple(int(x) for x in rng.integers(0, per_mode_cutoff + 1, size=modes))
        if max_total is not None and sum(occ) > max_total:
            continue
        amps[occ] = complex(rng.normal(), rng.normal())
    return normalize(MultiModeState(modes, per_mode_cutoff, amps))
