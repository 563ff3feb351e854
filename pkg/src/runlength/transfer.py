"""Walk-matrix route to the waiting-time distribution and its moments.

The stopping rule ("first run of n copies of the marked symbol") is a walk
on n+2 states: Start, run lengths 1..n-1, and Done.  State j (for j < n)
means the last j symbols were the marked one.  Drawing any of the other
m-1 symbols falls back to Start; drawing the marked symbol advances one
state.  ``adjacency_matrix`` counts those moves with outgoing edges stored
column-wise, and dividing by m turns move counts into probabilities.

Everything in this module is exact rational arithmetic; the k-step
completion probability and all moments come out as Fractions with no
rounding at any stage.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .params import Params
from .ratmat import RationalMatrix, matrix_times_column, row_times_matrix


def adjacency_matrix(params: Params) -> RationalMatrix:
    """Integer move-count matrix of the run-tracking walk.

    (n+1) x (n+1); column j holds the moves out of state j.  Row 0 gets the
    m-1 restarting symbols from every non-final state, the subdiagonal the
    single advancing symbol, and the final column is zero (the walk ends
    there).
    """
    params.require_multi_symbol()
    m, n = params.m, params.n
    size = n + 1
    rows = [[0] * size for _ in range(size)]
    for j in range(n):
        rows[0][j] = m - 1
        rows[j + 1][j] = 1
    return RationalMatrix.from_rows(rows)


def transition_matrix(params: Params) -> RationalMatrix:
    """Per-step probability matrix: the move counts divided exactly by m.

    Columns for live states sum to 1; the final column is zero, so mass
    that finishes at step k drops out of the walk at step k+1.
    """
    return adjacency_matrix(params).scale(Fraction(1, params.m))


def fundamental_inverse(params: Params) -> RationalMatrix:
    """Exact inverse of (I - W), computed by Gaussian elimination.

    This is the matrix the geometric series sum(W^k, k >= 0) converges to;
    it plays the role of the fundamental matrix of an absorbing chain.
    """
    w = transition_matrix(params)
    return (RationalMatrix.identity(w.rows) - w).inverse()


def fundamental_inverse_pattern(params: Params) -> RationalMatrix:
    """(I - W)^{-1} built directly from its closed entry pattern.

    Entry (i, j) is m^(n-i) on and below the diagonal and
    m^(n-i) - m^(j-i) above it.  Constructed without any elimination, so it
    serves as an independent cross-check of ``fundamental_inverse``.
    """
    params.require_multi_symbol()
    m, n = params.m, params.n
    rows = []
    for i in range(n + 1):
        row = []
        for j in range(n + 1):
            if i >= j:
                row.append(m ** (n - i))
            else:
                row.append(m ** (n - i) - m ** (j - i))
        rows.append(row)
    return RationalMatrix.from_rows(rows)


def success_probability(params: Params, k: int) -> Fraction:
    """Exact probability that the run completes at step k.

    Equals the bottom-left entry of W^k, evaluated with k matrix-vector
    products (never a full matrix power).
    """
    if k < 0:
        raise DomainError(f"step count k must be >= 0, got {k}")
    w = transition_matrix(params)
    state = _start_vector(params.n)
    for _ in range(k):
        state = matrix_times_column(w, state)
    return state[-1]


@dataclass(frozen=True)
class DistributionTable:
    """Exact distribution of the waiting time, truncated by residual mass.

    ``probs`` lists (k, P[waiting time = k]) from k = n up to the first k
    where the leftover mass drops to ``tail`` <= the requested bound.
    Conservation is exact: tail + sum of probs == 1.
    """

    params: Params
    probs: tuple[tuple[int, Fraction], ...]
    tail: Fraction

    def total_mass(self) -> Fraction:
        return self.tail + sum((p for _, p in self.probs), Fraction(0))

    def truncated_mean(self) -> Fraction:
        """Sum k * p_k over the emitted rows (a lower bound on the mean)."""
        return sum((k * p for k, p in self.probs), Fraction(0))

    def mean_gap_bound(self, expectation: Fraction | int) -> Fraction:
        """Upper bound on the mean mass hidden in the tail.

        Runs finishing after the last emitted step K take at most K plus
        one fresh expected completion: from any live state the expected
        remaining time is at most the from-scratch expectation.
        """
        last_k = self.probs[-1][0] if self.probs else 0
        return self.tail * (last_k + Fraction(expectation))


def distribution(params: Params, tail_bound: Fraction) -> DistributionTable:
    """Emit p_n, p_{n+1}, ... until the exact residual falls to tail_bound."""
    tail_bound = Fraction(tail_bound)
    if not 0 < tail_bound < 1:
        raise DomainError(f"tail_bound must be in (0, 1), got {tail_bound}")
    w = transition_matrix(params)
    n = params.n
    state = _start_vector(n)
    probs: list[tuple[int, Fraction]] = []
    residual = Fraction(1)
    k = 0
    while residual > tail_bound:
        k += 1
        state = matrix_times_column(w, state)
        p_k = state[-1]
        residual -= p_k
        if k >= n:
            probs.append((k, p_k))
        else:
            assert p_k == 0, f"nonzero completion probability at step {k} < n"
    assert residual >= 0
    return DistributionTable(params=params, probs=tuple(probs), tail=residual)


def expectation(params: Params) -> Fraction:
    """Exact mean waiting time via the matrix form.

    Evaluates  finish_row . W . (I-W)^{-1} . (I-W)^{-1} . start_col  as a
    chain of row-vector times matrix products, left to right.
    """
    w = transition_matrix(params)
    inv = fundamental_inverse(params)
    vec = _finish_row(params.n)
    for matrix in (w, inv, inv):
        vec = row_times_matrix(vec, matrix)
    return vec[0]


def second_moment(params: Params) -> Fraction:
    """Exact second moment: finish_row . W . (I+W) . (I-W)^{-3} . start_col."""
    w = transition_matrix(params)
    inv = fundamental_inverse(params)
    eye_plus_w = RationalMatrix.identity(w.rows) + w
    vec = _finish_row(params.n)
    for matrix in (w, eye_plus_w, inv, inv, inv):
        vec = row_times_matrix(vec, matrix)
    return vec[0]


def variance(params: Params) -> Fraction:
    """Exact variance of the waiting time (second moment minus mean squared)."""
    return second_moment(params) - expectation(params) ** 2


def _start_vector(n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(i == 0)) for i in range(n + 1))


def _finish_row(n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(i == n)) for i in range(n + 1))
