"""Companion matrices and dual-set condition ladders.

Given a weight sequence a and a band system, two companion operators on the
transformed side encode multiplier statements about the original side:

* row-scaled inverse C[n, k] = V[n, k] a_n, so that (C y)_n = a_n x_n;
* its column-cumulative partner D[n, k] = sum_{j=k..n} a_j V[j, k], so that
  (D y)_n = sum_{k<=n} a_k x_k,

where V is the inverse band kernel and x the inverse transform of y.  The
dual sets S1..S16 are boundedness/limit statements about C and D, optionally
weighted by powers B^(+-1/p_k) and quantified over integers B > 1; the rule
table below maps (space, dual) pairs to the required condition sets.

Numerical policy: "sup over all finite index subsets" is solved exactly by
branch and bound up to the exact cutoff and is otherwise replaced by its
absolute-sum upper bound (which sandwiches the subset sup within a constant
factor, so boundedness trends are preserved).  Quantifiers over all B > 1 are
sampled over a finite B ladder; universally quantified verdicts are labelled
as tested-ladder evidence only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .band_ops import inverse_kernel, inverse_transform
from .types import BandSystem, ExponentSeq, FiniteSeq, TriangleKernel
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
    "companion_c",
    "companion_d",
    "subset_sup",
    "subset_sup_bruteforce",
    "companion_identity_residuals",
    "DualReport",
    "dual_report",
    "dual_rule_table",
    "DEFAULT_B_LADDER",
    "EXACT_SUBSET_LIMIT",
]

DEFAULT_B_LADDER = (2, 4, 16, 256)
EXACT_SUBSET_LIMIT = 20

SPACES = ("s0", "sc", "sinf", "lp")
DUALS = ("alpha", "beta", "gamma")


def companion_c(a, sys: BandSystem, n: int) -> TriangleKernel:
    """Row-scaled inverse kernel: C[n, k] = V[n, k] * a_n."""
    a = FiniteSeq.coerce(a)
    if a.n < n:
        raise ValueError(f"weight sequence of length {a.n} cannot serve truncation {n}")
    V = inverse_kernel(sys, n).entries
    return TriangleKernel(a.values[:n, None] * V)


def companion_d(a, sys: BandSystem, n: int) -> TriangleKernel:
    """Column-cumulative companion: D[n, k] = sum_{j=k..n} a_j V[j, k]."""
    a = FiniteSeq.coerce(a)
    if a.n < n:
        raise ValueError(f"weight sequence of length {a.n} cannot serve truncation {n}")
    V = inverse_kernel(sys, n).entries
    return TriangleKernel(np.cumsum(a.values[:n, None] * V, axis=0))


def companion_identity_residuals(a, y, sys: BandSystem) -> tuple[float, float]:
    """Relative residuals of (C y)_n = a_n x_n and (D y)_n = sum_{k<=n} a_k x_k.

    Both sides are evaluated through independent code paths (dense companion
    matrices vs the substitution inverse); the residual is the max-norm
    difference relative to the larger side's max norm.
    """
    a = FiniteSeq.coerce(a)
    y = FiniteSeq.coerce(y)
    n = y.n
    x = inverse_transform(y, sys).values
    ax = a.values[:n] * x
    lhs_c = companion_c(a, sys, n).entries @ y.values
    lhs_d = companion_d(a, sys, n).entries @ y.values
    rhs_d = np.cumsum(ax)

    def rel(lhs, rhs):
        scale = max(np.max(np.abs(lhs)), np.max(np.abs(rhs)), 1e-300)
        return float(np.max(np.abs(lhs - rhs)) / scale)

    return rel(lhs_c, ax), rel(lhs_d, rhs_d)


# ---------------------------------------------------------------------------
# subset suprema
# ---------------------------------------------------------------------------


def _working_matrix(matrix, axis, weights):
    W = matrix.entries if isinstance(matrix, TriangleKernel) else np.asarray(matrix)
    if W.ndim != 2:
        raise ValueError("subset_sup needs a matrix")
    if axis == "rows":
        W = W.T
    elif axis != "columns":
        raise ValueError("axis must be 'columns' or 'rows'")
    if weights is not None:
        w = np.asarray(weights, dtype=np.float64)
        if w.size != W.shape[1] or np.any(w <= 0.0):
            raise ValueError("weights must be positive, one per subset index")
        W = W * w[None, :]
    return W


def _canonical_objective(W, cols, exponents, outer):
    """Objective of one subset, computed the same way in every solver path."""
    if len(cols) == 0:
        return 0.0
    inner = np.abs(W[:, cols].sum(axis=1))
    terms = inner**exponents
    return float(terms.max()) if outer == "sup" else float(terms.sum())


def subset_sup_bruteforce(matrix, axis="columns", weights=None, outer_exponents=None, outer="sum") -> float:
    """Exhaustive enumeration over all 2^N subsets; the oracle for the exact solver."""
    W = _working_matrix(matrix, axis, weights)
    e = np.ones(W.shape[0]) if outer_exponents is None else np.asarray(outer_exponents, dtype=np.float64)
    ncols = W.shape[1]
    if ncols > 22:
        raise ValueError("brute force is limited to 22 subset indices")
    best = 0.0
    for mask in range(1 << ncols):
        cols = [c for c in range(ncols) if mask >> c & 1]
        best = max(best, _canonical_objective(W, cols, e, outer))
    return best


def subset_sup(
    matrix,
    axis: str = "columns",
    weights=None,
    outer_exponents=None,
    mode: str = "exact",
    outer: str = "sum",
    exact_limit: int = EXACT_SUBSET_LIMIT,
):
    """sup over subsets K of one axis of the aggregated |sum over K| terms.

    With outer="sum" the objective of a subset K is
    sum_i |sum_{k in K} W[i, k]|^(e_i); with outer="sup" the outer sum is a
    maximum.  mode="exact" solves by branch and bound (subset count capped at
    ``exact_limit``) and returns a float; mode="bound" returns a
    (lower, upper) pair where the lower bound is the best of a family of
    greedy sign subsets and the upper bound the full absolute sum.
    """
    W = _working_matrix(matrix, axis, weights)
    e = np.ones(W.shape[0]) if outer_exponents is None else np.asarray(outer_exponents, dtype=np.float64)
    if e.size != W.shape[0] or np.any(e <= 0.0):
        raise ValueError("outer exponents must be positive, one per outer index")
    if outer not in ("sum", "sup"):
        raise ValueError("outer must be 'sum' or 'sup'")

    absW = np.abs(W)
    full_terms = absW.sum(axis=1) ** e
    upper = float(full_terms.max() if outer == "sup" else full_terms.sum())

    ncols = W.shape[1]
    all_cols = list(range(ncols))
    if mode == "bound":
        candidates = [[], all_cols]
        # greedy: add columns in decreasing mass order while the objective improves
        order = list(np.argsort(-absW.sum(axis=0)))
        chosen: list[int] = []
        value = 0.0
        for c in order:
            trial = sorted(chosen + [c])
            trial_val = _canonical_objective(W, trial, e, outer)
            if trial_val > value:
                chosen = trial
                value = trial_val
        candidates.append(chosen)
        if not np.iscomplexobj(W):
            row = int(np.argmax(absW.sum(axis=1)))
            candidates.append([c for c in all_cols if W[row, c] > 0.0])
            candidates.append([c for c in all_cols if W[row, c] < 0.0])
        lower = max(_canonical_objective(W, sorted(c), e, outer) for c in candidates)
        return lower, upper
    if mode != "exact":
        raise ValueError("mode must be 'exact' or 'bound'")
    if ncols > exact_limit:
        raise ValueError(f"exact subset sup is limited to {exact_limit} subset indices (got {ncols})")

    # branch and bound over inclusion, columns ordered by decreasing mass;
    # bound: replacing every undecided column by its absolute row mass.
    order = np.argsort(-absW.sum(axis=0))
    Wo = W[:, order]
    rem = np.zeros((W.shape[0], ncols + 1))
    rem[:, :-1] = np.abs(Wo)[:, ::-1].cumsum(axis=1)[:, ::-1]
    best = _canonical_objective(W, all_cols, e, outer)

    def descend(j, vec, picked):
        nonlocal best
        if j == ncols:
            cols = sorted(int(order[i]) for i in picked)
            best = max(best, _canonical_objective(W, cols, e, outer))
            return
        head = (np.abs(vec) + rem[:, j]) ** e
        ub = float(head.max() if outer == "sup" else head.sum())
        if ub * (1.0 + 1e-9) <= best:
            return
        descend(j + 1, vec + Wo[:, j], picked + [j])
        descend(j + 1, vec, picked)

    descend(0, np.zeros(W.shape[0], dtype=W.dtype), [])
    return best


# ---------------------------------------------------------------------------
# S-set evaluators
# ---------------------------------------------------------------------------


def _subset_estimate(matrix, axis, weights, outer_exponents, n):
    """Exact subset sup at small truncations, absolute-sum upper bound beyond."""
    if n <= EXACT_SUBSET_LIMIT:
        return subset_sup(matrix, axis, weights, outer_exponents, mode="exact")
    return subset_sup(matrix, axis, weights, outer_exponents, mode="bound")[1]


def _tril_abs(x: np.ndarray) -> np.ndarray:
    return np.abs(np.tril(x))


def _window(n: int) -> slice:
    """Last-quarter row window used for limit estimates."""
    return slice(max(1, (3 * n) // 4), n)


@dataclass(frozen=True)
class _SCondition:
    anchor: str
    quantifier: str  # plain | exists_b | forall_b
    kind: str  # bounded | limit
    needs_conjugate: bool = False
    uses_beta_k: bool = False
    uses_beta: bool = False


S_CONDITIONS: dict[str, _SCondition] = {
    "S1": _SCondition("row-scaled inverse, weighted subset column sums", "exists_b", "bounded"),
    "S2": _SCondition("row-scaled inverse, absolute row sums", "plain", "bounded"),
    "S3": _SCondition("cumulative companion, weighted absolute rows", "exists_b", "bounded"),
    "S4": _SCondition("cumulative companion, column limits exist", "plain", "limit"),
    "S5": _SCondition("cumulative companion, weighted deviation rows", "exists_b", "bounded", uses_beta_k=True),
    "S6": _SCondition("cumulative companion, row sums converge", "plain", "limit", uses_beta=True),
    "S7": _SCondition("cumulative companion, bounded row sums", "plain", "bounded"),
    "S8": _SCondition("cumulative companion, inflated subset column sums", "forall_b", "bounded"),
    "S9": _SCondition("cumulative companion, inflated absolute rows", "forall_b", "bounded"),
    "S10": _SCondition("cumulative companion, inflated deviation rows vanish", "forall_b", "limit", uses_beta_k=True),
    "S11": _SCondition("cumulative companion, inflated absolute rows", "forall_b", "bounded"),
    "S12": _SCondition("cumulative companion, subset row sums, native exponents", "plain", "bounded"),
    "S13": _SCondition("cumulative companion, subset column sums, conjugate exponents", "exists_b", "bounded", needs_conjugate=True),
    "S14": _SCondition("cumulative companion, scaled rows, conjugate exponents", "exists_b", "bounded", needs_conjugate=True),
    "S15": _SCondition("cumulative companion, entrywise native exponents", "plain", "bounded"),
    "S16": _SCondition("cumulative companion, column limits exist", "plain", "limit"),
}


def _column_probe(n: int) -> int:
    return min(16, max(1, n // 2))


def _evaluate_s(cond_id, C, D, p: ExponentSeq, n: int, b, beta_k, beta):
    """One ladder point of one S condition; returns (value, deviation | None)."""
    pk = p.p[:n]
    if cond_id == "S1":
        return _subset_estimate(C, "columns", float(b) ** (-1.0 / pk), None, n), None
    if cond_id == "S2":
        return float(np.sum(np.abs(C.sum(axis=1)))), None
    if cond_id == "S3":
        w = float(b) ** (-1.0 / pk)
        return float(np.max(np.abs(D) @ w)), None
    if cond_id in ("S4", "S16"):
        kp = _column_probe(n)
        win = _window(n)
        cols = D[win, :kp]
        spread = float(np.max(np.abs(cols.max(axis=0) - cols.min(axis=0)))) if cols.size else 0.0
        return spread, spread
    if cond_id == "S5":
        w = float(b) ** (-1.0 / pk)
        dev = _tril_abs(D - beta_k[None, :n])
        return float(np.max(dev @ w)), None
    if cond_id == "S6":
        rowsums = D.sum(axis=1)
        dev = float(np.max(np.abs(rowsums[_window(n)] - beta)))
        return float(rowsums[-1].real if np.iscomplexobj(rowsums) else rowsums[-1]), dev
    if cond_id == "S7":
        return float(np.max(np.abs(D.sum(axis=1)))), None
    if cond_id == "S8":
        return _subset_estimate(D, "columns", float(b) ** (1.0 / pk), None, n), None
    if cond_id in ("S9", "S11"):
        w = float(b) ** (1.0 / pk)
        return float(np.max(np.abs(D) @ w)), None
    if cond_id == "S10":
        w = float(b) ** (1.0 / pk)
        dev_rows = _tril_abs(D - beta_k[None, :n]) @ w
        win = _window(n)
        return float(dev_rows[-1]), float(np.max(dev_rows[win]))
    if cond_id == "S12":
        if np.iscomplexobj(D):
            raise ValueError("S12 requires real weights")
        pos = np.maximum(D, 0.0).sum(axis=0)
        neg = np.maximum(-D, 0.0).sum(axis=0)
        return float(np.max(np.maximum(pos, neg) ** pk)), None
    if cond_id == "S13":
        return _subset_estimate(D / float(b), "rows", None, p.conjugate()[:n], n), None
    if cond_id == "S14":
        terms = _tril_abs(D / float(b)) ** p.conjugate()[:n][None, :]
        return float(np.max(terms.sum(axis=1))), None
    if cond_id == "S15":
        return float(np.max(np.abs(D) ** pk[None, :])), None
    raise KeyError(f"unknown dual condition {cond_id!r}")


_LOW, _HIGH = "0<p<=1", "1<p<=H"

# (space, dual) -> condition ids; the lp entries are split by exponent regime
DUAL_RULES: dict = {
    ("s0", "alpha"): ("S1",),
    ("sc", "alpha"): ("S1", "S2"),
    ("s0", "beta"): ("S3", "S4", "S5"),
    ("sc", "beta"): ("S3", "S4", "S5", "S6"),
    ("s0", "gamma"): ("S3",),
    ("sc", "gamma"): ("S3", "S7"),
    ("sinf", "alpha"): ("S8",),
    ("sinf", "beta"): ("S9", "S10"),
    ("sinf", "gamma"): ("S11",),
    ("lp", "alpha"): {_LOW: ("S12",), _HIGH: ("S13",)},
    ("lp", "beta"): ("S14", "S15", "S16"),
    ("lp", "gamma"): {_LOW: ("S15",), _HIGH: ("S14",)},
}


def dual_rule_table() -> dict:
    """The (space, dual) -> condition mapping in serializable form."""
    out = {}
    for (space, dual), rule in DUAL_RULES.items():
        key = f"{space}.{dual}"
        if isinstance(rule, dict):
            out[key] = {regime: list(ids) for regime, ids in rule.items()}
        else:
            out[key] = list(rule)
    return out


def _conditions_for(space, dual, p: ExponentSeq):
    if space not in SPACES or dual not in DUALS:
        raise ValueError(f"unknown (space, dual) pair ({space!r}, {dual!r})")
    rule = DUAL_RULES[(space, dual)]
    if isinstance(rule, dict):
        if np.all(p.p <= 1.0):
            return rule[_LOW]
        if np.all(p.p > 1.0):
            return rule[_HIGH]
        raise ValueError("mixed exponent regimes (some p_k <= 1 < others) are not characterized")
    return rule


@dataclass(frozen=True)
class DualReport:
    space: str
    dual: str
    conditions: tuple
    aggregate: str

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "dual": self.dual,
            "aggregate": self.aggregate,
            "conditions": [c.to_json() for c in self.conditions],
        }


def dual_report(
    a,
    sys: BandSystem,
    p: ExponentSeq,
    space: str,
    dual: str,
    ladder,
    b_ladder=DEFAULT_B_LADDER,
    config: VerdictConfig = VerdictConfig(),
) -> DualReport:
    """Evaluate the dual-set conditions for (space, dual) over a truncation ladder.

    Fitted parameters: the column limits beta_k are read off the last row of
    the cumulative companion at the largest truncation, and the scalar beta
    from its last row sum.  Existence quantifiers over B pass on the first
    successful ladder value; universal ones require every ladder value and
    are marked as tested-ladder evidence.
    """
    ladder = [int(n) for n in ladder]
    if not ladder or any(b <= a_ for a_, b in zip(ladder, ladder[1:])):
        raise ValueError("ladder must be nonempty and strictly increasing")
    a = FiniteSeq.coerce(a)
    n_max = ladder[-1]
    if a.n < n_max:
        raise ValueError("weight sequence shorter than the largest truncation")
    p.require_length(n_max)
    cond_ids = _conditions_for(space, dual, p)

    needs_conj = any(S_CONDITIONS[c].needs_conjugate for c in cond_ids)
    if needs_conj and np.any(p.p <= 1.0):
        raise ValueError("conjugate-exponent conditions require p_k > 1 for all k")

    # dense companions per ladder point (the a-weights enter both)
    C_at, D_at = {}, {}
    for n in ladder:
        C_at[n] = companion_c(a, sys, n).entries
        D_at[n] = companion_d(a, sys, n).entries
    if np.all(a.values.imag == 0.0):
        C_at = {n: m.real.copy() for n, m in C_at.items()}
        D_at = {n: m.real.copy() for n, m in D_at.items()}
    beta_k = D_at[n_max][-1, :].copy()
    beta_val = float(np.real(D_at[n_max][-1, :].sum()))

    verdicts = []
    for cid in cond_ids:
        meta = S_CONDITIONS[cid]
        fitted: dict = {}
        if meta.uses_beta_k:
            fitted["beta_k_head"] = [float(np.real(v)) for v in beta_k[:8]]
        if meta.uses_beta:
            fitted["beta"] = beta_val

        def series(b):
            vals, devs, ests = [], [], []
            for n in ladder:
                value, dev = _evaluate_s(cid, C_at[n], D_at[n], p, n, b, beta_k, beta_val)
                vals.append(value)
                devs.append(dev)
                ests.append((n, None if b is None else f"B={b}", value))
            return vals, devs, ests

        if meta.quantifier == "plain":
            vals, devs, ests = series(None)
            if meta.kind == "limit":
                target = fitted.get("beta", 0.0)
                verdict, growth, last = classify_series("limit", ladder, [d for d in devs], 0.0, config)
                cv = ConditionVerdict(cid, tuple(ests), verdict, growth, "limit", target, last, None, fitted, meta.anchor)
            else:
                verdict, growth, _ = classify_series("bounded", ladder, vals, None, config)
                cv = ConditionVerdict(cid, tuple(ests), verdict, growth, "bounded", None, None, None, fitted, meta.anchor)
        else:
            all_ests, per_b = [], []
            for b in b_ladder:
                vals, devs, ests = series(b)
                all_ests.extend(ests)
                if meta.kind == "limit":
                    verdict, growth, last = classify_series("limit", ladder, [d for d in devs], 0.0, config)
                else:
                    verdict, growth, last = classify_series("bounded", ladder, vals, None, config)
                per_b.append((verdict, growth, last))
                if meta.quantifier == "exists_b" and verdict == HOLDS:
                    break
            if meta.quantifier == "exists_b":
                verdict = combine_exists(v for v, _, _ in per_b)
                pick = min(per_b, key=lambda t: (t[0] != verdict,))
                note = None
            else:
                verdict = combine_forall(v for v, _, _ in per_b)
                pick = max(per_b, key=lambda t: (t[0] == verdict,))
                note = "tested ladder only" if verdict == HOLDS else None
            target = 0.0 if meta.kind == "limit" else None
            cv = ConditionVerdict(
                cid, tuple(all_ests), verdict, pick[1], meta.kind, target, pick[2], note, fitted, meta.anchor
            )
        verdicts.append(cv)

    return DualReport(space, dual, tuple(verdicts), aggregate_verdict(v.verdict for v in verdicts))
