"""Value types shared across the package.

Everything here is a finite truncation: sequences are length-N arrays with
index origin 0, operators are dense N x N blocks.  Instances are immutable
after construction (arrays are frozen), so values can be shared freely
between threads; construction validates the declared invariants and raises
``ValueError`` on violations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["FiniteSeq", "BandSystem", "ExponentSeq", "TriangleKernel"]

# inf p_k below this is treated as "not bounded away from zero"
INF_POSITIVE_TOL = 1e-9


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class FiniteSeq:
    """A length-N complex-valued sequence truncation, indices 0..N-1."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128)
        if v.ndim != 1 or v.size < 1:
            raise ValueError("sequence must be one-dimensional with N >= 1")
        if not np.all(np.isfinite(v)):
            raise ValueError("sequence entries must be finite")
        object.__setattr__(self, "values", _frozen(v))

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.values.imag == 0.0))

    def real(self) -> np.ndarray:
        if not self.is_real:
            raise ValueError("sequence has a nonzero imaginary part")
        return self.values.real

    @staticmethod
    def coerce(x) -> "FiniteSeq":
        return x if isinstance(x, FiniteSeq) else FiniteSeq(np.asarray(x))


@dataclass(frozen=True)
class BandSystem:
    """Parameter triple (r_k), (s_k), (alpha_k) of the double-band transform.

    The transform maps x to y with

        y_n = (r_n x_n + s_{n-1} x_{n-1}) / alpha_n,   x_{-1} = 0,

    i.e. a lower two-band triangle with diagonal r_n/alpha_n and subdiagonal
    s_{n-1}/alpha_n.  All r_k and s_k must be nonzero reals and all alpha_k
    strictly positive, so the triangle is invertible by forward substitution.
    """

    r: np.ndarray
    s: np.ndarray
    alpha: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.r, dtype=np.float64)
        s = np.asarray(self.s, dtype=np.float64)
        a = np.asarray(self.alpha, dtype=np.float64)
        if not (r.ndim == s.ndim == a.ndim == 1) or not (r.size == s.size == a.size):
            raise ValueError("r, s, alpha must be one-dimensional and equally long")
        if r.size < 1:
            raise ValueError("band system must have length >= 1")
        for name, arr in (("r", r), ("s", s), ("alpha", a)):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} entries must be finite")
        if np.any(r == 0.0) or np.any(s == 0.0):
            raise ValueError("r and s entries must be nonzero")
        if np.any(a <= 0.0):
            raise ValueError("alpha entries must be strictly positive")
        object.__setattr__(self, "r", _frozen(r))
        object.__setattr__(self, "s", _frozen(s))
        object.__setattr__(self, "alpha", _frozen(a))

    @property
    def length(self) -> int:
        return self.r.size

    def require_length(self, n: int) -> None:
        if n > self.length:
            raise ValueError(
                f"band system of length {self.length} cannot serve truncation {n}"
            )

    def params(self, n: int):
        """The (r, s, alpha) arrays truncated to length n."""
        self.require_length(n)
        return self.r[:n], self.s[:n], self.alpha[:n]

    @classmethod
    def constant(cls, r: float, s: float, alpha: float = 1.0, length: int = 1024) -> "BandSystem":
        return cls(np.full(length, float(r)), np.full(length, float(s)), np.full(length, float(alpha)))

    @classmethod
    def difference(cls, length: int = 1024) -> "BandSystem":
        """The system whose transform is the first-difference matrix."""
        return cls.constant(1.0, -1.0, 1.0, length)


@dataclass(frozen=True)
class ExponentSeq:
    """A bounded sequence of strictly positive exponents (p_k).

    Carries the derived quantities H = sup p_k (over the truncation) and
    M = max(1, H), plus the flag ``inf_positive`` telling whether inf p_k is
    bounded away from zero, which gates the sup-type paranorm.
    """

    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=np.float64)
        if p.ndim != 1 or p.size < 1:
            raise ValueError("exponent sequence must be one-dimensional with N >= 1")
        if not np.all(np.isfinite(p)) or np.any(p <= 0.0):
            raise ValueError("exponents must be finite and strictly positive")
        object.__setattr__(self, "p", _frozen(p))

    @property
    def H(self) -> float:
        return float(np.max(self.p))

    @property
    def M(self) -> float:
        return max(1.0, self.H)

    @property
    def inf_positive(self) -> bool:
        return bool(np.min(self.p) > INF_POSITIVE_TOL)

    @property
    def length(self) -> int:
        return self.p.size

    def require_length(self, n: int) -> None:
        if n > self.length:
            raise ValueError(
                f"exponent sequence of length {self.length} cannot serve truncation {n}"
            )

    def conjugate(self) -> np.ndarray:
        """Conjugate exponents p_k' with 1/p_k + 1/p_k' = 1; needs p_k > 1."""
        if np.any(self.p <= 1.0):
            raise ValueError("conjugate exponents require p_k > 1 for all k")
        return self.p / (self.p - 1.0)

    @classmethod
    def constant(cls, value: float, length: int) -> "ExponentSeq":
        return cls(np.full(length, float(value)))


@dataclass(frozen=True)
class TriangleKernel:
    """A dense N x N block that is zero strictly above the diagonal."""

    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries)
        if e.ndim != 2 or e.shape[0] != e.shape[1] or e.shape[0] < 1:
            raise ValueError("kernel must be a square N x N block with N >= 1")
        if not np.issubdtype(e.dtype, np.complexfloating):
            e = e.astype(np.float64)
        if not np.all(np.isfinite(e)):
            raise ValueError("kernel entries must be finite")
        if e.shape[0] > 1 and np.any(e[np.triu_indices(e.shape[0], k=1)] != 0.0):
            raise ValueError("kernel must vanish strictly above the diagonal")
        object.__setattr__(self, "entries", _frozen(e))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def diagonal(self) -> np.ndarray:
        return np.diagonal(self.entries)

    def matvec(self, x) -> np.ndarray:
        v = x.values if isinstance(x, FiniteSeq) else np.asarray(x)
        if v.size != self.n:
            raise ValueError("kernel/vector size mismatch")
        return self.entries @ v
