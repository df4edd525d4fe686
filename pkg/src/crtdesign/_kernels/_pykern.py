"""Pure-Python grid kernel: criterion values for every (cluster size, ICC)
cell of a maximin sweep.

This is the fallback implementation; ``_cykern`` is the compiled twin with
identical semantics.  Both operate on unit-scale variance shapes evaluated at
the budget-exhausting continuous n, so every value is a scale-free relative
efficiency in (0, 1].
"""

from __future__ import annotations

import math

KIND_HTE = 0
KIND_ATE = 1
KIND_COMPOUND = 2


def _shape_ate(m: float, ry: float, k: float) -> float:
    return (k + m) * (1.0 + (m - 1.0) * ry) / m


def _shape_hte(m: float, ry: float, rx: float, k: float) -> float:
    dep = 1.0 + (m - 2.0) * ry - (m - 1.0) * rx * ry
    return (1.0 - ry) * _shape_ate(m, ry, k) / dep


def _m_ate_ref(ry: float, k: float, m_min: float, m_bar: float) -> float:
    if ry <= 0.0:
        return m_bar
    m = math.sqrt(k * (1.0 - ry) / ry)
    return min(max(m, m_min), m_bar)


def _m_hte_ref(ry: float, rx: float, k: float, m_min: float, m_bar: float) -> float:
    if ry <= 0.0 or (k > 0.0 and ry * k == 0.0):
        return m_bar
    if (rx - ry) - k * ry * (1.0 - rx) <= 0.0:
        return m_bar
    if k == 0.0:
        return m_min
    den = (rx - ry) / k - ry * (1.0 - rx)
    arg = (1.0 / (ry * k)) * (1.0 - ry) * (rx - ry) * (
        1.0 - (k + 2.0) * ry + (k + 1.0) * rx * ry
    )
    if arg < 0.0:
        arg = 0.0
    m = ((1.0 - ry) * (1.0 - rx) + math.sqrt(arg)) / den
    return min(max(m, m_min), m_bar)


def criterion_matrix(
    kind: int,
    lam: float,
    ms: list[float],
    rys: list[float],
    rxs: list[float],
    k: float,
    m_min: float,
    m_bar: float,
) -> list[list[float]]:
    """One row per cluster size in ``ms``; one column per ICC pair given by
    the parallel arrays ``rys``/``rxs``.  ``kind`` selects the criterion:
    interaction RE, average-effect RE, or their lam-weighted combination."""
    n_icc = len(rys)
    ref_ate = [0.0] * n_icc
    ref_hte = [0.0] * n_icc
    for j in range(n_icc):
        ry, rx = rys[j], rxs[j]
        if kind != KIND_HTE:
            ref_ate[j] = _shape_ate(_m_ate_ref(ry, k, m_min, m_bar), ry, k)
        if kind != KIND_ATE:
            ref_hte[j] = _shape_hte(
                _m_hte_ref(ry, rx, k, m_min, m_bar), ry, rx, k
            )
    rows: list[list[float]] = []
    for m in ms:
        row = [0.0] * n_icc
        for j in range(n_icc):
            ry, rx = rys[j], rxs[j]
            if kind == KIND_HTE:
                row[j] = ref_hte[j] / _shape_hte(m, ry, rx, k)
            elif kind == KIND_ATE:
                row[j] = ref_ate[j] / _shape_ate(m, ry, k)
            else:
                row[j] = lam * ref_ate[j] / _shape_ate(m, ry, k) + (
                    1.0 - lam
                ) * ref_hte[j] / _shape_hte(m, ry, rx, k)
        rows.append(row)
    return rows
