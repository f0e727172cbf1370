"""Generalized W-class (GW) states, their PCS mixtures, and site partitions.

A GW state on ``n`` qudits of dimension ``d`` is a superposition of the
single-excitation kets ``|0..s..0>`` (level ``s`` at one site, vacuum on the
others). The coefficient for site ``i`` and level ``s`` is stored at
``coeffs[i, s - 1]``; sites are 0-based, levels run over ``1..d-1``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .tensor import MAX_AMPLITUDES, SizeError, StateVector, reduce_pure


class ValidationError(ValueError):
    """A state or partition description is inconsistent."""


class ParseError(ValueError):
    """A state or partition file could not be read."""


@dataclass(frozen=True)
class GWStateSpec:
    d: int
    n: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if self.d < 2 or self.n < 2:
            raise ValidationError(f"need d >= 2 and n >= 2, got d={self.d}, n={self.n}")
        if c.shape != (self.n, self.d - 1):
            raise ValidationError(f"coeffs must have shape ({self.n}, {self.d - 1}), got {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_entries(cls, d: int, n: int, entries) -> "GWStateSpec":
        """Build from ``(site, level, value)`` triples; missing entries are zero."""
        c = np.zeros((n, d - 1), dtype=complex)
        for site, level, value in entries:
            if not 0 <= site < n:
                raise ValidationError(f"site {site} out of range 0..{n - 1}")
            if not 1 <= level <= d - 1:
                raise ValidationError(f"level {level} out of range 1..{d - 1}")
            c[site, level - 1] = value
        return cls(d, n, c)

    @classmethod
    def qubits(cls, amplitudes: Sequence[complex]) -> "GWStateSpec":
        """W-class state ``sum_i b_i |0..1_i..0>`` on qubits."""
        b = np.asarray(amplitudes, dtype=complex).reshape(-1, 1)
        return cls(2, b.shape[0], b)

    @property
    def site_weights(self) -> np.ndarray:
        """``sum_s |b_is|^2`` for every site."""
        return np.sum(np.abs(self.coeffs) ** 2, axis=1)


@dataclass(frozen=True)
class PCSSpec:
    """Partially coherent superposition of a GW state with the vacuum."""

    base: GWStateSpec
    q: float
    lam: float

    def __post_init__(self):
        if not 0.0 <= self.q <= 1.0:
            raise ValidationError(f"mixing weight q={self.q} outside [0, 1]")
        if not 0.0 <= self.lam <= 1.0:
            raise ValidationError(f"coherency lambda={self.lam} outside [0, 1]")


@dataclass(frozen=True)
class Partition:
    """Disjoint groups of sites. Sites in no group are traced out."""

    parties: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        parties = tuple(tuple(int(s) for s in p) for p in self.parties)
        object.__setattr__(self, "parties", parties)
        if not parties:
            raise ValidationError("partition has no parties")
        seen: set[int] = set()
        for p in parties:
            if not p:
                raise ValidationError("partition contains an empty party")
            if len(set(p)) != len(p) or seen & set(p):
                raise ValidationError(f"party {list(p)} overlaps another party")
            if min(p) < 0:
                raise ValidationError(f"negative site index in {list(p)}")
            seen |= set(p)

    @classmethod
    def singletons(cls, sites: Sequence[int]) -> "Partition":
        return cls(tuple((s,) for s in sites))

    @property
    def retained(self) -> tuple[int, ...]:
        return tuple(sorted(s for p in self.parties for s in p))

    def traced(self, n: int) -> tuple[int, ...]:
        kept = set(self.retained)
        return tuple(s for s in range(n) if s not in kept)

    def check(self, n: int) -> None:
        bad = [s for s in self.retained if s >= n]
        if bad:
            raise ValidationError(f"site indices {bad} not below n={n}")

    def __len__(self) -> int:
        return len(self.parties)


def validate_spec(spec: GWStateSpec, tol: float = 1e-12) -> None:
    """Raise :class:`ValidationError` unless ``sum |b_is|^2 = 1`` within ``tol``."""
    norm2 = float(np.sum(np.abs(spec.coeffs) ** 2))
    if abs(norm2 - 1.0) > tol:
        raise ValidationError(
            f"coefficients are not normalized: squared norm {norm2:.15g}, deficit {1.0 - norm2:.3e}"
        )


def build_gw_vector(spec: GWStateSpec) -> StateVector:
    """Amplitude vector of the GW state, site 0 as the most significant digit."""
    validate_spec(spec)
    d, n = spec.d, spec.n
    size = d**n
    if size > MAX_AMPLITUDES:
        raise SizeError(f"{d}^{n} = {size} amplitudes exceeds cap {MAX_AMPLITUDES}")
    amps = np.zeros(size, dtype=complex)
    for i in range(n):
        stride = d ** (n - 1 - i)
        for s in range(1, d):
            amps[s * stride] += spec.coeffs[i, s - 1]
    return StateVector((d,) * n, amps)


def vacuum_vector(d: int, n: int) -> np.ndarray:
    v = np.zeros(d**n, dtype=complex)
    v[0] = 1.0
    return v


def build_pcs_density(spec: PCSSpec) -> np.ndarray:
    """``q|W><W| + (1-q)|0><0| + lam sqrt(q(1-q)) (|W><0| + |0><W|)``."""
    w = build_gw_vector(spec.base).amps
    vac = vacuum_vector(spec.base.d, spec.base.n)
    q, lam = spec.q, spec.lam
    coh = lam * np.sqrt(q * (1.0 - q))
    rho = q * np.outer(w, w.conj()) + (1.0 - q) * np.outer(vac, vac)
    rho += coh * (np.outer(w, vac) + np.outer(vac, w.conj()))
    return rho


def party_weights(spec: GWStateSpec, part: Partition) -> np.ndarray:
    """Summed squared coefficient moduli of every party.

    Any partition of a GW state is again a GW state on the party spaces,
    with each party's aggregated excitation carrying this weight.
    """
    part.check(spec.n)
    sw = spec.site_weights
    return np.array([float(np.sum(sw[list(p)])) for p in part.parties])


def reduce_density(vec: StateVector, keep) -> np.ndarray:
    keep = list(keep)
    if not keep:
        raise ValidationError("keep must name at least one subsystem")
    return reduce_pure(vec.amps, vec.dims, keep)


def reduce_to_parties(vec: StateVector, parties: Sequence[Sequence[int]]):
    """Reduced state on the listed site groups, grouped in the given order.

    Returns ``(rho, dims)`` where ``dims[k]`` is the joint dimension of
    group ``k``; sites inside a group keep ascending order.
    """
    groups = [sorted(int(s) for s in p) for p in parties]
    order = [s for g in groups for s in g]
    rest = [s for s in range(len(vec.dims)) if s not in order]
    psi = vec.amps.reshape(vec.dims).transpose(order + rest)
    dims = tuple(int(np.prod([vec.dims[s] for s in g])) for g in groups)
    m = psi.reshape(int(np.prod(dims)), -1)
    return m @ m.conj().T, dims


def counterexample_vector() -> StateVector:
    """The 3x2x2 state ``(sqrt2|121> + sqrt2|212> + |311> + |322>) / sqrt6``.

    Levels are written 1-based in the ket labels and stored 0-based here.
    The prefactor is ``1/sqrt(6)``; ``1/6`` would leave squared norm ``1/6``.
    """
    amps = np.zeros((3, 2, 2), dtype=complex)
    r2 = np.sqrt(2.0)
    amps[0, 1, 0] = r2
    amps[1, 0, 1] = r2
    amps[2, 0, 0] = 1.0
    amps[2, 1, 1] = 1.0
    return StateVector((3, 2, 2), amps.reshape(-1) / np.sqrt(6.0))


def random_gw_spec(rng: np.random.Generator, d: int, n: int, real: bool = False) -> GWStateSpec:
    c = rng.normal(size=(n, d - 1))
    if not real:
        c = c + 1j * rng.normal(size=(n, d - 1))
    c = c / np.linalg.norm(c)
    return GWStateSpec(d, n, c)


def random_partition(rng: np.random.Generator, n: int, n_parties: int, allow_traced: bool = True) -> Partition:
    """Random assignment of sites to ``n_parties`` non-empty groups, plus optional traced sites."""
    sites = list(rng.permutation(n))
    n_keep = n if not allow_traced else int(rng.integers(n_parties, n + 1))
    kept = sites[:n_keep]
    labels = list(range(n_parties)) + list(rng.integers(0, n_parties, size=n_keep - n_parties))
    groups: list[list[int]] = [[] for _ in range(n_parties)]
    for s, lab in zip(kept, labels):
        groups[lab].append(int(s))
    return Partition(tuple(tuple(sorted(g)) for g in groups))


# -- file formats ---------------------------------------------------------

_STATE_KEYS = {"d", "n", "coeffs"}
_COEFF_KEYS = {"site", "level", "re", "im"}
_PARTITION_KEYS = {"parties", "traced"}


def _read_json(path) -> dict:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be an object")
    return data


def parse_state(data: dict, source: str = "<state>") -> GWStateSpec:
    """Build a spec from the decoded JSON state schema.

    Schema::

        {"d": 2, "n": 3,
         "coeffs": [{"site": 0, "level": 1, "re": 0.408, "im": 0.0}, ...]}

    ``im`` may be omitted. Unknown keys are rejected.
    """
    unknown = set(data) - _STATE_KEYS
    if unknown:
        raise ParseError(f"{source}: unknown field(s) {sorted(unknown)}")
    missing = _STATE_KEYS - set(data)
    if missing:
        raise ParseError(f"{source}: missing field(s) {sorted(missing)}")
    d, n = data["d"], data["n"]
    if not (isinstance(d, int) and isinstance(n, int)):
        raise ParseError(f"{source}: d and n must be integers")
    if not isinstance(data["coeffs"], list) or not data["coeffs"]:
        raise ParseError(f"{source}: coeffs must be a non-empty list")
    entries = []
    for k, entry in enumerate(data["coeffs"]):
        where = f"{source}: coeffs[{k}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{where}: expected an object")
        bad = set(entry) - _COEFF_KEYS
        if bad:
            raise ParseError(f"{where}: unknown field(s) {sorted(bad)}")
        for key in ("site", "level", "re"):
            if key not in entry:
                raise ParseError(f"{where}: missing field '{key}'")
        if not isinstance(entry["site"], int) or not isinstance(entry["level"], int):
            raise ParseError(f"{where}: site and level must be integers")
        try:
            value = complex(float(entry["re"]), float(entry.get("im", 0.0)))
        except (TypeError, ValueError):
            raise ParseError(f"{where}: re/im must be numbers") from None
        entries.append((entry["site"], entry["level"], value))
    try:
        return GWStateSpec.from_entries(d, n, entries)
    except ValidationError as exc:
        raise ParseError(f"{source}: {exc}") from None


def parse_partition(data: dict, n: int | None = None, source: str = "<partition>") -> Partition:
    """Build a partition from ``{"parties": [[0], [1, 2]], "traced": [3]}``.

    ``traced`` is optional; when given it must be disjoint from the parties
    and, together with them, cover every site.
    """
    unknown = set(data) - _PARTITION_KEYS
    if unknown:
        raise ParseError(f"{source}: unknown field(s) {sorted(unknown)}")
    parties = data.get("parties")
    if not isinstance(parties, list) or not parties:
        raise ParseError(f"{source}: 'parties' must be a non-empty list of site lists")
    for k, p in enumerate(parties):
        if not isinstance(p, list) or not all(isinstance(s, int) for s in p):
            raise ParseError(f"{source}: parties[{k}] must be a list of integers")
    try:
        part = Partition(tuple(tuple(p) for p in parties))
        if n is not None:
            part.check(n)
    except ValidationError as exc:
        raise ParseError(f"{source}: {exc}") from None
    if "traced" in data:
        traced = data["traced"]
        if not isinstance(traced, list) or not all(isinstance(s, int) for s in traced):
            raise ParseError(f"{source}: 'traced' must be a list of integers")
        if set(traced) & set(part.retained):
            raise ParseError(f"{source}: traced sites overlap the parties")
        if n is not None and set(traced) | set(part.retained) != set(range(n)):
            raise ParseError(f"{source}: parties and traced sites do not cover 0..{n - 1}")
    return part


def load_state(path) -> GWStateSpec:
    spec = parse_state(_read_json(path), str(path))
    validate_spec(spec)
    return spec


def load_partition(path, n: int | None = None) -> Partition:
    return parse_partition(_read_json(path), n, str(path))


def dump_state(spec: GWStateSpec) -> str:
    coeffs = []
    for i in range(spec.n):
        for s in range(1, spec.d):
            b = complex(spec.coeffs[i, s - 1])
            if b != 0:
                coeffs.append({"site": i, "level": s, "re": b.real, "im": b.imag})
    return json.dumps({"d": spec.d, "n": spec.n, "coeffs": coeffs}, indent=2)


def dump_partition(part: Partition, n: int) -> str:
    return json.dumps({"parties": [list(p) for p in part.parties], "traced": list(part.traced(n))})
