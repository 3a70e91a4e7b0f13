"""The strategy polytope ``{z in C^m : |arg z_i| <= a0, sum z = 1}``.

Its m^2 extreme points are the unit vectors ``e_i`` and, for every ordered
pair ``p != q``, the vector with ``1/2 + b i`` at ``p`` and ``1/2 - b i`` at
``q`` where ``b = tan(a0) / 2``. Indices are zero-based.
"""
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .numerics import DEFAULT_TOL, as_complex_vector, check_argument, sector_contains


@dataclass(frozen=True, order=True)
class Trivial:
    """The unit vector ``e_i``."""

    i: int

    def label(self):
        return f"e{self.i + 1}"

    def sort_key(self):
        return (0, self.i, -1)


@dataclass(frozen=True, order=True)
class Pair:
    """Two-support extreme point: ``1/2 + bi`` at ``p``, ``1/2 - bi`` at ``q``."""

    p: int
    q: int

    def __post_init__(self):
        if self.p == self.q:
            raise ValueError("Pair extreme point needs p != q")

    def label(self):
        return f"eta({self.p + 1},{self.q + 1})"

    def sort_key(self):
        return (1, self.p, self.q)


def offset_b(a0):
    """Imaginary offset ``b`` with ``arg(1/2 + bi) = a0``."""
    return math.tan(check_argument(a0)) / 2.0


def canonical_indices(m):
    """All extreme-point indices for dimension ``m`` in canonical order."""
    out = [Trivial(i) for i in range(m)]
    out.extend(Pair(p, q) for p in range(m) for q in range(m) if p != q)
    return out


@dataclass(frozen=True)
class StrategyPolytope:
    m: int
    a0: float

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "a0", check_argument(self.a0))

    @property
    def b(self):
        return offset_b(self.a0)

    @cached_property
    def indices(self):
        return tuple(canonical_indices(self.m))

    @cached_property
    def vertex_matrix(self):
        """``m x m^2`` complex array whose columns are the extreme points."""
        D = np.column_stack([self.extreme_point(k) for k in self.indices])
        D.setflags(write=False)
        return D

    def position(self, idx):
        """Position of ``idx`` in the canonical order."""
        self._check_index(idx)
        if isinstance(idx, Trivial):
            return idx.i
        p, q, m = idx.p, idx.q, self.m
        return m + p * (m - 1) + (q if q < p else q - 1)

    def _check_index(self, idx):
        m = self.m
        if isinstance(idx, Trivial):
            if not 0 <= idx.i < m:
                raise IndexError(f"{idx} out of range for m={m}")
        elif isinstance(idx, Pair):
            if not (0 <= idx.p < m and 0 <= idx.q < m):
                raise IndexError(f"{idx} out of range for m={m}")
        else:
            raise TypeError(f"not an extreme-point index: {idx!r}")

    def extreme_point(self, idx):
        self._check_index(idx)
        z = np.zeros(self.m, dtype=np.complex128)
        if isinstance(idx, Trivial):
            z[idx.i] = 1.0
        else:
            b = self.b
            z[idx.p] = complex(0.5, b)
            z[idx.q] = complex(0.5, -b)
        return z

    def extreme_points(self):
        return [self.extreme_point(k) for k in self.indices]

    def contains(self, z, tol=DEFAULT_TOL):
        z = as_complex_vector(z, "z")
        if z.shape[0] != self.m:
            raise ValueError(f"dimension mismatch: expected {self.m}, got {z.shape[0]}")
        if not all(sector_contains(c, self.a0, tol) for c in z):
            return False
        s = z.sum()
        return bool(abs(s.real - 1.0) <= tol.eps_feas and abs(s.imag) <= tol.eps_feas)

    def decompose(self, z, tol=DEFAULT_TOL):
        """Write ``z`` as a convex combination of extreme points.

        Each coordinate is split into a multiple of ``1/2 + bi`` (or
        ``1/2 - bi``) plus a real remainder; the positive and negative
        imaginary masses are then paired off head to head, each pairing
        emitting one ``Pair`` weight. Returns ``{index: weight}`` in
        canonical order.
        """
        z = as_complex_vector(z, "z")
        if not self.contains(z, tol):
            raise ValueError("point is not a member of the strategy polytope")
        b = self.b
        weights = {}
        plus, minus = [], []
        for i, c in enumerate(z):
            if c.imag > 0:
                lam = c.imag / b
                plus.append([i, lam])
                kappa = c.real - lam / 2.0
            elif c.imag < 0:
                mu = -c.imag / b
                minus.append([i, mu])
                kappa = c.real - mu / 2.0
            else:
                kappa = c.real
            # negative kappa is rounding residue from a coordinate on the sector edge
            if kappa > 0:
                weights[Trivial(i)] = kappa

        hp = hq = 0
        while hp < len(plus) and hq < len(minus):
            ip, cp = plus[hp]
            iq, cq = minus[hq]
            key = Pair(ip, iq)
            weights[key] = weights.get(key, 0.0) + min(cp, cq)
            if cp > cq:
                plus[hp][1] = cp - cq
                hq += 1
            elif cq > cp:
                minus[hq][1] = cq - cp
                hp += 1
            else:
                hp += 1
                hq += 1

        return dict(sorted(weights.items(), key=lambda kv: kv[0].sort_key()))

    def recombine(self, weights):
        z = np.zeros(self.m, dtype=np.complex128)
        for k, w in weights.items():
            z += w * self.extreme_point(k)
        return z

    def sample(self, rng, size=None):
        """Random member(s) as Dirichlet-weighted combinations of extreme points."""
        D = self.vertex_matrix
        k = D.shape[1]
        if size is None:
            return D @ rng.dirichlet(np.ones(k))
        return (D @ rng.dirichlet(np.ones(k), size=size).T).T
