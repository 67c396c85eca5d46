"""Matrix-class conditions: transformed-side matrices and the condition catalog.

For a matrix A acting on sequences whose band transform lies in a Maddox-type
space, membership of A in a mapping class reduces to conditions on the
composed matrix

    E[n, k] = sum_{j=k..inf} A[n, j] V[j, k]

(V the inverse band kernel) and on its partial-sum families
E^(n)[m, k] = sum_{j=k..m} A[n, j] V[j, k].  For source spaces built from a
second matrix B the relevant object is the band-transformed matrix

    btilde[n, k] = (r_n B[n, k] + s_{n-1} B[n-1, k]) / alpha_n

(row -1 treated as zero).  The catalog below holds one entry per condition:
mt23..mt41 drive the nine transformed-space mapping classes, the L2.x entries
are classical variable-exponent conditions on a generic matrix, and the 4.x
entries are the regularity/core conditions on btilde.  Class reports
dispatch the exact condition set of the corresponding characterization and
aggregate verdicts with fails dominating, then inconclusive.

Everything is ladder-based evidence in the sense of :mod:`seqcore.verdicts`;
universally quantified integers L and existentially quantified integers M are
sampled over a finite quantifier ladder.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .band_ops import inverse_kernel
from .duals import subset_sup
from .generators import materialize_matrix
from .types import BandSystem, ExponentSeq
from .verdicts import (
    HOLDS,
    ConditionVerdict,
    VerdictConfig,
    aggregate_verdict,
    classify_series,
    combine_exists,
    combine_forall,
)

__all__ = [
    "btilde",
    "e_matrix",
    "EPartial",
    "eval_condition",
    "ClassReport",
    "class_report",
    "condition_catalog",
    "class_rule_table",
    "default_density_sets",
    "CLASS_RULES",
    "DEFAULT_QUANTIFIER_LADDER",
]

DEFAULT_QUANTIFIER_LADDER = (2, 4, 16, 256)

_PROBE_ROWS = 8
_PROBE_COLS = 16


def btilde(B, sys: BandSystem, n: int) -> np.ndarray:
    """Band-transform the rows of B: (r_n B[n] + s_{n-1} B[n-1]) / alpha_n."""
    dense = materialize_matrix(B, n)
    r, s, a = sys.params(n)
    out = np.empty_like(dense, dtype=np.result_type(dense.dtype, np.float64))
    out[0] = r[0] * dense[0] / a[0]
    if n > 1:
        out[1:] = (r[1:, None] * dense[1:] + s[:-1, None] * dense[:-1]) / a[1:, None]
    return out


class EPartial:
    """Partial-sum families of the composed matrix.

    ``rows(n)`` returns the (m, k) block of sum_{j=k..m} A[n, j] V[j, k];
    by construction its final row equals row n of the composed matrix exactly
    (the composed matrix is defined as that final cumulative sum).
    """

    def __init__(self, A: np.ndarray, V: np.ndarray):
        self._A = A
        self._V = V

    @property
    def n(self) -> int:
        return self._A.shape[0]

    def rows(self, n: int) -> np.ndarray:
        if not 0 <= n < self.n:
            raise IndexError(f"row {n} out of range")
        return np.cumsum(self._A[n][:, None] * self._V, axis=0)


def e_matrix(A, sys: BandSystem, n: int) -> tuple[np.ndarray, EPartial]:
    """Composed matrix E = A V at truncation n, plus its partial-sum families.

    E's rows are taken from the final partial sums, so the consistency
    ``partial.rows(i)[-1] == E[i]`` holds exactly, not just to rounding.
    """
    if n < 1:
        raise ValueError("truncation must be >= 1")
    dense = materialize_matrix(A, n)
    V = inverse_kernel(sys, n).entries
    partial = EPartial(dense, V)
    E = np.empty((n, n), dtype=np.result_type(dense.dtype, V.dtype))
    for i in range(n):
        E[i] = partial.rows(i)[-1]
    return E, partial


def default_density_sets(n: int) -> list[tuple[str, np.ndarray]]:
    """Named index sets of natural density zero used by the vanishing condition."""
    k = np.arange(n)
    roots = np.floor(np.sqrt(k + 0.5)).astype(np.int64)
    squares = roots * roots == k
    powers = np.zeros(n, dtype=bool)
    v = 1
    while v < n:
        powers[v] = True
        v *= 2
    return [("squares", squares), ("powers_of_two", powers)]


# ---------------------------------------------------------------------------
# condition catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConditionSpec:
    anchor: str
    source: str  # "E" | "partial" | "btilde" | "matrix"
    quantifier: str  # plain | forall_l | exists_m | forall_l_exists_m
    kind: str  # bounded | limit
    needs_p: bool = False
    needs_q: bool = False
    needs_conjugate: bool = False
    uses_beta_k: bool = False
    uses_beta: bool = False
    target: float = 0.0


CONDITIONS: dict[str, ConditionSpec] = {
    # composed-matrix conditions driving the mapping-class reports
    "mt23": ConditionSpec("partial sums defining the composed matrix stabilize", "partial", "plain", "limit"),
    "mt24": ConditionSpec("weighted absolute rows finite for every inflation L", "E", "forall_l", "bounded", needs_p=True),
    "mt25": ConditionSpec("partial sums converge rowwise to fitted limits", "partial", "plain", "limit"),
    "mt26": ConditionSpec("deflated partial-sum rows bounded for some M", "partial", "exists_m", "bounded", needs_p=True),
    "mt27": ConditionSpec("jointly inflated/deflated partial-sum rows bounded", "partial", "forall_l_exists_m", "bounded", needs_p=True, needs_q=True),
    "mt28": ConditionSpec("partial-sum rows concentrate at a single fitted value", "partial", "plain", "limit", uses_beta=True),
    "mt29": ConditionSpec("inflated absolute rows uniformly bounded", "E", "forall_l", "bounded", needs_p=True),
    "mt30": ConditionSpec("columns converge to fitted limits", "E", "plain", "limit", uses_beta_k=True),
    "mt31": ConditionSpec("inflated absolute row sums converge", "E", "forall_l", "limit", needs_p=True),
    "mt32": ConditionSpec("inflated absolute row sums vanish", "E", "forall_l", "limit", needs_p=True),
    "mt33": ConditionSpec("deflated absolute rows bounded in target exponents", "E", "exists_m", "bounded", needs_p=True, needs_q=True),
    "mt34": ConditionSpec("entries vanish in target exponents", "E", "plain", "limit", needs_q=True),
    "mt35": ConditionSpec("jointly scaled absolute rows bounded", "E", "forall_l_exists_m", "bounded", needs_p=True, needs_q=True),
    "mt36": ConditionSpec("column deviations vanish in target exponents", "E", "plain", "limit", needs_q=True, uses_beta_k=True),
    "mt37": ConditionSpec("deflated absolute rows bounded for some M", "E", "exists_m", "bounded", needs_p=True),
    "mt38": ConditionSpec("scaled column-deviation rows bounded", "E", "forall_l_exists_m", "bounded", needs_p=True, needs_q=True, uses_beta_k=True),
    "mt39": ConditionSpec("row sums bounded in target exponents", "E", "plain", "bounded", needs_q=True),
    "mt40": ConditionSpec("row sums vanish in target exponents", "E", "plain", "limit", needs_q=True),
    "mt41": ConditionSpec("row sums converge in target exponents", "E", "plain", "limit", needs_q=True, uses_beta=True),
    # classical variable-exponent conditions on a generic matrix
    "L2.3": ConditionSpec("deflated subset column sums summable for some B", "matrix", "exists_m", "bounded", needs_p=True),
    "L2.4a": ConditionSpec("deflated absolute rows bounded for some B", "matrix", "exists_m", "bounded", needs_p=True),
    "L2.4b": ConditionSpec("columns converge to fitted limits", "matrix", "plain", "limit", uses_beta_k=True),
    "L2.4c": ConditionSpec("deflated column-deviation rows bounded for some B", "matrix", "exists_m", "bounded", needs_p=True, uses_beta_k=True),
    "L2.5": ConditionSpec("deflated absolute rows bounded for some B", "matrix", "exists_m", "bounded", needs_p=True),
    "L2.6i": ConditionSpec("subset row sums bounded in conjugate exponents", "matrix", "exists_m", "bounded", needs_p=True, needs_conjugate=True),
    "L2.6ii": ConditionSpec("subset column sups bounded in native exponents", "matrix", "plain", "bounded", needs_p=True),
    "L2.7i": ConditionSpec("scaled rows bounded in conjugate exponents", "matrix", "exists_m", "bounded", needs_p=True, needs_conjugate=True),
    "L2.7ii": ConditionSpec("entries bounded in native exponents", "matrix", "plain", "bounded", needs_p=True),
    "2.15": ConditionSpec("columns converge to fitted limits", "matrix", "plain", "limit", uses_beta_k=True),
    # band-transformed-matrix conditions (regularity and core inclusion)
    "4.1": ConditionSpec("absolute row sums bounded", "btilde", "plain", "bounded"),
    "4.2": ConditionSpec("columns converge to fitted limits", "btilde", "plain", "limit", uses_beta_k=True),
    "4.2z": ConditionSpec("columns vanish", "btilde", "plain", "limit"),
    "4.3": ConditionSpec("absolute column-deviation rows vanish", "btilde", "plain", "limit", uses_beta_k=True),
    "4.5": ConditionSpec("row sums tend to one", "btilde", "plain", "limit", target=1.0),
    "4.6": ConditionSpec("absolute rows over density-zero sets vanish", "btilde", "plain", "limit"),
    "4.8": ConditionSpec("absolute row sums tend to one", "btilde", "plain", "limit", target=1.0),
}


def condition_catalog() -> dict:
    """Catalog metadata in serializable form."""
    return {
        cid: {
            "anchor": spec.anchor,
            "source": spec.source,
            "quantifier": spec.quantifier,
            "kind": spec.kind,
        }
        for cid, spec in sorted(CONDITIONS.items())
    }


def _window(n: int) -> slice:
    return slice(max(1, (3 * n) // 4), n)


def _weighted_rowsup(M: np.ndarray, w: np.ndarray) -> float:
    return float(np.max(np.abs(M) @ w))


def _evaluate(cond_id: str, src, p, q, n: int, L, M, beta_k, beta, density_sets):
    """One ladder point of one condition; returns (value, deviation | None)."""
    spec = CONDITIONS[cond_id]
    pk = p.p[:n] if p is not None else None
    qn = q[:n] if q is not None else None
    win = _window(n)
    rows = min(_PROBE_ROWS, n)
    cols = min(_PROBE_COLS, n)

    if spec.source == "partial":
        partial = src
        if cond_id in ("mt23", "mt25"):
            spread = 0.0
            for i in range(rows):
                block = partial.rows(i)[win]
                if block.size:
                    spread = max(spread, float(np.max(np.abs(block.max(axis=0) - block.min(axis=0)))))
            return spread, spread
        if cond_id == "mt26":
            w = float(M) ** (-1.0 / pk)
            worst = 0.0
            for i in range(rows):
                worst = max(worst, _weighted_rowsup(partial.rows(i), w))
            return worst, None
        if cond_id == "mt27":
            worst = 0.0
            for i in range(rows):
                w = float(L) ** (1.0 / qn[i]) * float(M) ** (-1.0 / pk)
                worst = max(worst, _weighted_rowsup(partial.rows(i), w))
            return worst, None
        if cond_id == "mt28":
            worst = 0.0
            for i in range(rows):
                block = partial.rows(i)
                fit = float(np.median(block[-1]))
                worst = max(worst, float(np.max(np.abs(np.tril(block - fit))[win].sum(axis=1))))
            return worst, worst
        raise KeyError(cond_id)

    G = src  # dense matrix: E, btilde, or a directly supplied matrix
    if cond_id in ("mt24", "mt29"):
        w = float(L) ** (1.0 / pk)
        block = G[:rows] if cond_id == "mt24" else G
        return _weighted_rowsup(block, w), None
    if cond_id in ("mt30", "L2.4b", "2.15", "4.2", "4.2z"):
        ref = np.zeros(cols) if cond_id == "4.2z" else beta_k[:cols]
        dev_block = np.abs(G[win, :cols] - ref[None, :])
        val = float(np.max(dev_block)) if dev_block.size else 0.0
        return val, val
    if cond_id == "4.3":
        dev_full = np.abs(G[win] - beta_k[:n][None, :])
        val = float(np.max(dev_full.sum(axis=1))) if dev_full.size else 0.0
        return val, val
    if cond_id in ("mt31", "mt32"):
        f = np.abs(G) @ (float(L) ** (1.0 / pk))
        fw = f[win]
        if cond_id == "mt31":
            spread = float(np.max(fw) - np.min(fw)) if fw.size else 0.0
            return spread, spread
        val = float(np.max(fw)) if fw.size else 0.0
        return val, val
    if cond_id == "mt33":
        f = np.abs(G) @ (float(M) ** (-1.0 / pk))
        return float(np.max(f**qn)), None
    if cond_id in ("mt34", "mt36"):
        ref = np.zeros(cols) if cond_id == "mt34" else beta_k[:cols]
        dev = np.abs(G[win, :cols] - ref[None, :]) ** qn[win][:, None]
        val = float(np.max(dev)) if dev.size else 0.0
        return val, val
    if cond_id == "mt35":
        w = float(M) ** (-1.0 / pk)
        f = (np.abs(G) @ w) * (float(L) ** (1.0 / qn))
        return float(np.max(f)), None
    if cond_id == "mt37":
        return _weighted_rowsup(G, float(M) ** (-1.0 / pk)), None
    if cond_id == "mt38":
        w = float(M) ** (-1.0 / pk)
        f = (np.abs(G - beta_k[:n][None, :]) @ w) * (float(L) ** (1.0 / qn))
        return float(np.max(f)), None
    if cond_id == "mt39":
        return float(np.max(np.abs(G.sum(axis=1)) ** qn)), None
    if cond_id in ("mt40", "mt41"):
        ref = 0.0 if cond_id == "mt40" else beta
        f = np.abs(G.sum(axis=1) - ref) ** qn
        dev = float(np.max(f[win])) if f[win].size else 0.0
        return float(f[-1]), dev
    if cond_id == "L2.3":
        w = float(M) ** (-1.0 / pk)
        if n <= 20:
            return subset_sup(G, "columns", w, None, mode="exact"), None
        return subset_sup(G, "columns", w, None, mode="bound")[1], None
    if cond_id in ("L2.4a", "L2.5"):
        return _weighted_rowsup(G, float(M) ** (-1.0 / pk)), None
    if cond_id == "L2.4c":
        w = float(M) ** (-1.0 / pk)
        return float(np.max(np.abs(G - beta_k[:n][None, :]) @ w)), None
    if cond_id == "L2.6i":
        pc = p.conjugate()[:n]
        if n <= 20:
            return subset_sup(G / float(M), "rows", None, pc, mode="exact"), None
        return subset_sup(G / float(M), "rows", None, pc, mode="bound")[1], None
    if cond_id == "L2.6ii":
        if np.iscomplexobj(G):
            raise ValueError("subset column sups need real entries")
        pos = np.maximum(G, 0.0).sum(axis=0)
        neg = np.maximum(-G, 0.0).sum(axis=0)
        return float(np.max(np.maximum(pos, neg) ** pk)), None
    if cond_id == "L2.7i":
        pc = p.conjugate()[:n]
        return float(np.max((np.abs(G / float(M)) ** pc[None, :]).sum(axis=1))), None
    if cond_id == "L2.7ii":
        return float(np.max(np.abs(G) ** pk[None, :])), None
    if cond_id == "4.1":
        return float(np.max(np.abs(G).sum(axis=1))), None
    if cond_id == "4.5":
        rowsums = np.real(G.sum(axis=1))
        dev = float(np.max(np.abs(rowsums[win] - 1.0))) if rowsums[win].size else 0.0
        return float(rowsums[-1]), dev
    if cond_id == "4.6":
        worst = 0.0
        for _, mask in density_sets:
            f = np.abs(G[:, mask[:n]]).sum(axis=1)
            if f[win].size:
                worst = max(worst, float(np.max(f[win])))
        return worst, worst
    if cond_id == "4.8":
        rowsums = np.abs(G).sum(axis=1)
        dev = float(np.max(np.abs(rowsums[win] - 1.0))) if rowsums[win].size else 0.0
        return float(rowsums[-1]), dev
    raise KeyError(f"unknown condition {cond_id!r}")


def _validate_q(q, n: int) -> np.ndarray:
    qa = np.asarray(q, dtype=np.float64)
    if qa.ndim == 0:
        qa = np.full(n, float(qa))
    if qa.size < n:
        raise ValueError("q sequence shorter than the largest truncation")
    if np.any(qa[:n] <= 0.0):
        raise ValueError("q entries must be strictly positive")
    if np.any(np.diff(qa[:n]) < 0.0) or np.max(qa[:n]) > 1e6:
        warnings.warn("q is expected to be non-decreasing and bounded", stacklevel=3)
    return qa


def eval_condition(
    cond_id: str,
    *,
    A=None,
    sys: BandSystem | None = None,
    matrix=None,
    p: ExponentSeq | None = None,
    q=None,
    beta_k=None,
    beta=None,
    density_sets=None,
    ladder,
    quantifier_ladder=DEFAULT_QUANTIFIER_LADDER,
    config: VerdictConfig = VerdictConfig(),
) -> ConditionVerdict:
    """Evaluate one catalog condition over a truncation ladder.

    The condition's source matrices are rebuilt at every ladder point: the
    composed matrix and its partial sums from (A, sys), the band-transformed
    matrix from (A, sys), or a caller-supplied matrix/generator for the
    generic matrix conditions.  beta_k / beta default to fitted values from
    the largest truncation (last rows, last row sums) and may be pinned.
    """
    if cond_id not in CONDITIONS:
        raise KeyError(f"unknown condition {cond_id!r}")
    spec = CONDITIONS[cond_id]
    ladder = [int(n) for n in ladder]
    if not ladder or any(b <= a_ for a_, b in zip(ladder, ladder[1:])):
        raise ValueError("ladder must be nonempty and strictly increasing")
    n_max = ladder[-1]

    if spec.needs_p and p is None:
        raise ValueError(f"condition {cond_id} needs the exponent sequence p")
    if spec.needs_q and q is None:
        raise ValueError(f"condition {cond_id} needs the target exponent sequence q")
    if spec.needs_conjugate and p is not None and np.any(p.p <= 1.0):
        raise ValueError(f"condition {cond_id} needs conjugate exponents, so p_k > 1")
    if p is not None:
        p.require_length(n_max)
    qa = _validate_q(q, n_max) if q is not None else None

    # source matrices per ladder point; matrix= bypasses the composition and
    # supplies the transformed-side matrix directly
    sources: dict[int, object] = {}
    for n in ladder:
        if spec.source in ("E", "btilde") and matrix is not None:
            sources[n] = materialize_matrix(matrix, n)
        elif spec.source in ("E", "partial"):
            if A is None or sys is None:
                raise ValueError(f"condition {cond_id} needs A and a band system")
            E, partial = e_matrix(A, sys, n)
            sources[n] = partial if spec.source == "partial" else E
        elif spec.source == "btilde":
            if A is None or sys is None:
                raise ValueError(f"condition {cond_id} needs the matrix and a band system")
            sources[n] = btilde(A, sys, n)
        else:
            if matrix is None and A is not None:
                matrix = A
            if matrix is None:
                raise ValueError(f"condition {cond_id} needs a matrix input")
            sources[n] = materialize_matrix(matrix, n)

    fitted: dict = {}
    if spec.uses_beta_k and beta_k is None:
        top = sources[n_max]
        ref = top if isinstance(top, np.ndarray) else e_matrix(A, sys, n_max)[0]
        beta_k = np.real(ref[-1, :]).copy()
        fitted["beta_k_head"] = [float(v) for v in beta_k[:8]]
    elif spec.uses_beta_k:
        beta_k = np.asarray(beta_k, dtype=np.float64)
        fitted["beta_k_head"] = [float(v) for v in beta_k[:8]]
    if spec.uses_beta and beta is None and spec.source != "partial":
        top = sources[n_max]
        beta = float(np.real(top[-1, :].sum()))
        fitted["beta"] = beta
    elif spec.uses_beta and beta is not None:
        beta = float(beta)
        fitted["beta"] = beta
    if cond_id == "4.6":
        if density_sets is None:
            density_sets = default_density_sets(n_max)
        fitted["density_sets"] = [name for name, _ in density_sets]

    def series(L, M, witness):
        vals, devs, ests = [], [], []
        for n in ladder:
            value, dev = _evaluate(cond_id, sources[n], p, qa, n, L, M, beta_k, beta, density_sets)
            vals.append(value)
            devs.append(dev)
            ests.append((n, witness, value))
        return vals, devs, ests

    def classify(vals, devs):
        if spec.kind == "limit":
            return classify_series("limit", ladder, devs, 0.0, config)
        return classify_series("bounded", ladder, vals, None, config)

    quantifier = spec.quantifier
    if quantifier == "plain":
        vals, devs, ests = series(None, None, None)
        verdict, growth, last = classify(vals, devs)
        note = None
    elif quantifier in ("forall_l", "exists_m"):
        per, ests = [], []
        for w in quantifier_ladder:
            L = w if quantifier == "forall_l" else None
            M = w if quantifier == "exists_m" else None
            name = f"L={w}" if quantifier == "forall_l" else f"M={w}"
            vals, devs, e = series(L, M, name)
            ests.extend(e)
            per.append(classify(vals, devs))
            if quantifier == "exists_m" and per[-1][0] == HOLDS:
                break
        combine = combine_forall if quantifier == "forall_l" else combine_exists
        verdict = combine(v for v, _, _ in per)
        pick = next(t for t in per if t[0] == verdict)
        growth, last = pick[1], pick[2]
        note = "tested ladder only" if (quantifier == "forall_l" and verdict == HOLDS) else None
    elif quantifier == "forall_l_exists_m":
        outer, ests = [], []
        for L in quantifier_ladder:
            inner = []
            for M in quantifier_ladder:
                vals, devs, e = series(L, M, f"L={L},M={M}")
                ests.extend(e)
                inner.append(classify(vals, devs))
                if inner[-1][0] == HOLDS:
                    break
            inner_verdict = combine_exists(v for v, _, _ in inner)
            pick = next(t for t in inner if t[0] == inner_verdict)
            outer.append((inner_verdict, pick[1], pick[2]))
        verdict = combine_forall(v for v, _, _ in outer)
        pick = next(t for t in outer if t[0] == verdict)
        growth, last = pick[1], pick[2]
        note = "tested ladder only" if verdict == HOLDS else None
    else:
        raise ValueError(f"unknown quantifier {quantifier!r}")

    target = spec.target if spec.kind == "limit" else None
    if spec.uses_beta and spec.kind == "limit" and beta is not None:
        target = beta
    return ConditionVerdict(
        cond_id, tuple(ests), verdict, growth, spec.kind, target, last, note, fitted, spec.anchor
    )


# ---------------------------------------------------------------------------
# class reports
# ---------------------------------------------------------------------------

# class id -> (source kind, condition ids, needs q)
CLASS_RULES: dict[str, tuple[str, tuple[str, ...], bool]] = {
    "sinf:linf": ("E", ("mt23", "mt24", "mt29"), False),
    "sinf:c": ("E", ("mt23", "mt24", "mt30", "mt31"), False),
    "sinf:c0": ("E", ("mt23", "mt24", "mt32"), False),
    "s0:linf_q": ("E", ("mt25", "mt26", "mt27", "mt33"), True),
    "s0:c0_q": ("E", ("mt25", "mt26", "mt27", "mt34", "mt35"), True),
    "s0:c_q": ("E", ("mt25", "mt26", "mt27", "mt36", "mt37", "mt38"), True),
    "sc:linf_q": ("E", ("mt25", "mt26", "mt27", "mt28", "mt33", "mt39"), True),
    "sc:c0_q": ("E", ("mt25", "mt26", "mt27", "mt28", "mt34", "mt35", "mt40"), True),
    "sc:c_q": ("E", ("mt25", "mt26", "mt27", "mt28", "mt36", "mt37", "mt38", "mt41"), True),
    "linf:sc": ("btilde", ("4.1", "4.2", "4.3"), False),
    "c:sc_reg": ("btilde", ("4.1", "4.2z", "4.5"), False),
    "st:sc_reg": ("btilde", ("4.1", "4.2z", "4.5", "4.6"), False),
}


def class_rule_table() -> dict:
    """class id -> dispatched condition ids, in serializable form."""
    return {cid: list(rule[1]) for cid, rule in sorted(CLASS_RULES.items())}


@dataclass(frozen=True)
class ClassReport:
    class_id: str
    conditions: tuple
    aggregate: str

    def to_json(self) -> dict:
        return {
            "class": self.class_id,
            "aggregate": self.aggregate,
            "conditions": [c.to_json() for c in self.conditions],
        }


def class_report(
    A,
    class_id: str,
    sys: BandSystem,
    p: ExponentSeq | None = None,
    q=None,
    ladder=(32, 64, 128),
    density_sets=None,
    quantifier_ladder=DEFAULT_QUANTIFIER_LADDER,
    config: VerdictConfig = VerdictConfig(),
) -> ClassReport:
    """Evaluate every condition of one mapping-class characterization."""
    if class_id not in CLASS_RULES:
        raise KeyError(f"unknown class {class_id!r}; known: {sorted(CLASS_RULES)}")
    _, cond_ids, needs_q = CLASS_RULES[class_id]
    if needs_q and q is None:
        raise ValueError(f"class {class_id} targets a variable-exponent space and needs q")
    needs_p = any(CONDITIONS[c].needs_p for c in cond_ids)
    if needs_p and p is None:
        raise ValueError(f"class {class_id} needs the exponent sequence p")
    verdicts = tuple(
        eval_condition(
            cid,
            A=A,
            sys=sys,
            p=p,
            q=q,
            density_sets=density_sets,
            ladder=ladder,
            quantifier_ladder=quantifier_ladder,
            config=config,
        )
        for cid in cond_ids
    )
    return ClassReport(class_id, verdicts, aggregate_verdict(v.verdict for v in verdicts))
