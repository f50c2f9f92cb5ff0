"""JSON (de)serialization of Hamiltonians, measures and observables.

Hamiltonian::

    {"M": 8, "tau": 0.1, "J": 1.0, "potential": [...], "gamma": [...],
     "boundary": "periodic"}

Measure::

    {"measure": "uniform"}   or   {"measure": "volume", "g": [...], "dx": 0.5}

Observable (complex numbers as ``[re, im]`` pairs, basis row-major with
row ``n`` holding ``Phi_n``)::

    {"basis": [[[re, im], ...], ...], "values": [[re, im], ...],
     "target_sites": [0, 1, ...]}
"""

import json

import numpy as np

from .amplitudes import HamiltonianConfig
from .geometry import WeightedMeasure
from .observables import make_observable
from .setups import LatticeSpec

__all__ = [
    "load_json",
    "hamiltonian_from_dict",
    "hamiltonian_to_dict",
    "measure_from_dict",
    "measure_to_dict",
    "observable_from_dict",
    "observable_to_dict",
]


def load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def hamiltonian_from_dict(d):
    """``(LatticeSpec, HamiltonianConfig)`` from the dict layout above.

    ``potential`` and ``gamma`` default to zero on every site.
    """
    M = int(d["M"])
    boundary = d.get("boundary", "periodic")
    lattice = LatticeSpec(M, float(d.get("tau", 1.0)), boundary)
    potential = d.get("potential", [0.0] * M)
    gamma = d.get("gamma", [0.0] * M)
    return lattice, HamiltonianConfig(float(d.get("J", 1.0)), potential, gamma, boundary)


def hamiltonian_to_dict(lattice, config):
    return {
        "M": lattice.M,
        "tau": lattice.tau,
        "J": config.J,
        "potential": config.potential.tolist(),
        "gamma": config.gamma.tolist(),
        "boundary": config.boundary,
    }


def measure_from_dict(d, M=None):
    kind = d.get("measure", "uniform")
    if kind == "uniform":
        if M is None:
            raise ValueError("uniform measure needs the lattice size")
        return WeightedMeasure.uniform(M)
    if kind == "volume":
        m = WeightedMeasure.volume(d["g"], float(d["dx"]))
        if M is not None and m.M != M:
            raise ValueError(f"volume measure has {m.M} cells, lattice has {M}")
        return m
    raise ValueError(f"unknown measure {kind!r}")


def measure_to_dict(m):
    if m.provenance == "uniform":
        return {"measure": "uniform"}
    if m.provenance == "volume":
        return {"measure": "volume", "g": np.asarray(m.g).tolist(), "dx": m.dx}
    raise ValueError("only uniform and volume measures are serializable")


def _complex(pairs):
    arr = np.asarray(pairs, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


def _pairs(z):
    z = np.asarray(z, dtype=complex)
    return np.stack([z.real, z.imag], axis=-1).tolist()


def observable_from_dict(d):
    rows = _complex(d["basis"])
    return make_observable(list(rows), _complex(d["values"]), d.get("target_sites"))


def observable_to_dict(obs):
    return {
        "basis": _pairs(obs.basis.T),
        "values": _pairs(obs.values),
        "target_sites": list(obs.target_sites),
    }
