"""Closed-form values for the waiting-time moments and tree path sums.

Every function returns an exact integer (arbitrary precision, no overflow
ceiling).  The rational prefactors in the variance and path-sum formulas
always cancel; integrality is asserted rather than assumed.

m = 1 conventions: the single-symbol process is deterministic, so the
mean is n and the variance 0, and the height-n "tree" degenerates to a
path with n edges whose path sum is the square pyramidal number
n(n+1)(2n+1)/6.  These extensions keep the moment/tree identities checkable
at m = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, InvariantError
from .params import Params


def _exact_div(numerator: int, denominator: int) -> int:
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise InvariantError(
            f"expected exact division, got {numerator}/{denominator}"
        )
    return quotient


def geometric_sum(m: int, terms: int) -> int:
    """1 + m + ... + m^(terms-1), valid for every m >= 1."""
    if terms < 0:
        raise DomainError(f"terms must be >= 0, got {terms}")
    if m == 1:
        return terms
    return _exact_div(m**terms - 1, m - 1)


def tree_edge_count(params: Params) -> int:
    """Edges of the complete m-ary tree of height n: m(m^n - 1)/(m - 1)."""
    return params.m * geometric_sum(params.m, params.n)


def expectation(params: Params) -> int:
    """Mean waiting time m(m^n - 1)/(m - 1); equals tree_edge_count."""
    return params.m * geometric_sum(params.m, params.n)


def second_moment(params: Params) -> int:
    """Second moment of the waiting time.

    (m/(m-1)^2) * (2 m^(2n+1) - (2n+3) m^(n+1) + (2n+1) m^n + m - 1);
    the prefactor cancels and the result is always an integer.
    """
    m, n = params.m, params.n
    if m == 1:
        return n * n
    bracket = 2 * m ** (2 * n + 1) - (2 * n + 3) * m ** (n + 1) + (2 * n + 1) * m**n + m - 1
    return _exact_div(m * bracket, (m - 1) ** 2)


def variance(params: Params) -> int:
    """Variance of the waiting time.

    (m/(m-1)^2) * (m^(2n+1) - (2n+1) m^(n+1) + (2n+1) m^n - 1); zero when
    m = 1 since the process is deterministic.
    """
    m, n = params.m, params.n
    if m == 1:
        return 0
    value = _exact_div(m * _moment_bracket(m, n), (m - 1) ** 2)
    assert value >= 0
    return value


def path_sum(params: Params) -> int:
    """Sum of shared root-path lengths over all ordered node pairs.

    (m/(m-1)^3) * (m^(2n+1) - (2n+1) m^(n+1) + (2n+1) m^n - 1) for m >= 2;
    the m = 1 path graph gives n(n+1)(2n+1)/6.
    """
    m, n = params.m, params.n
    if m == 1:
        return _exact_div(n * (n + 1) * (2 * n + 1), 6)
    value = _exact_div(m * _moment_bracket(m, n), (m - 1) ** 3)
    assert value >= 0
    return value


def _moment_bracket(m: int, n: int) -> int:
    return m ** (2 * n + 1) - (2 * n + 1) * m ** (n + 1) + (2 * n + 1) * m**n - 1


def a286778(n: int) -> int:
    """Term n of OEIS A286778: 4*2^(2n) - (4n+2)*2^n - 2.

    Equals both variance(m=2, n) and path_sum(m=2, n).
    """
    if n < 1:
        raise DomainError(f"sequence index must be >= 1, got {n}")
    return 4 * 2 ** (2 * n) - (4 * n + 2) * 2**n - 2


def tree_edge_count_m2(n: int) -> int:
    """Binary-tree edge counts 2^(n+1) - 2 (OEIS A000918 shifted)."""
    if n < 1:
        raise DomainError(f"sequence index must be >= 1, got {n}")
    return 2 ** (n + 1) - 2


@dataclass(frozen=True)
class MomentReport:
    """Closed-form moments of one (m, n) cell plus its tree statistics."""

    params: Params
    expectation: int
    second_moment: int
    variance: int
    tree_edges: int
    path_sum: int


def moment_report(params: Params) -> MomentReport:
    """Evaluate all closed forms for one cell and check their identities."""
    report = MomentReport(
        params=params,
        expectation=expectation(params),
        second_moment=second_moment(params),
        variance=variance(params),
        tree_edges=tree_edge_count(params),
        path_sum=path_sum(params),
    )
    if report.variance != report.second_moment - report.expectation**2:
        raise InvariantError(f"variance decomposition failed at {params}")
    if report.expectation != report.tree_edges:
        raise InvariantError(f"mean/edge-count identity failed at {params}")
    if report.variance != (params.m - 1) * report.path_sum:
        raise InvariantError(f"variance/path-sum identity failed at {params}")
    return report
