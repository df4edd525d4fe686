# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid kernel: criterion values for every (cluster size, ICC) cell
of a maximin sweep.  Semantics are identical to ``_pykern``; see that module
for documentation."""

from libc.math cimport sqrt
from libc.stdlib cimport free, malloc

KIND_HTE = 0
KIND_ATE = 1
KIND_COMPOUND = 2


cdef inline double _shape_ate(double m, double ry, double k) noexcept nogil:
    return (k + m) * (1.0 + (m - 1.0) * ry) / m


cdef inline double _shape_hte(double m, double ry, double rx, double k) noexcept nogil:
    cdef double dep = 1.0 + (m - 2.0) * ry - (m - 1.0) * rx * ry
    return (1.0 - ry) * _shape_ate(m, ry, k) / dep


cdef inline double _clamp(double v, double lo, double hi) noexcept nogil:
    if v < lo:
        return lo
    if v > hi:
        return hi
    return v


cdef inline double _m_ate_ref(double ry, double k, double m_min, double m_bar) noexcept nogil:
    if ry <= 0.0:
        return m_bar
    return _clamp(sqrt(k * (1.0 - ry) / ry), m_min, m_bar)


cdef inline double _m_hte_ref(double ry, double rx, double k, double m_min, double m_bar) noexcept nogil:
    cdef double den, arg
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
    return _clamp(((1.0 - ry) * (1.0 - rx) + sqrt(arg)) / den, m_min, m_bar)


def criterion_matrix(int kind, double lam, ms, rys, rxs, double k,
                     double m_min, double m_bar):
    """See ``_pykern.criterion_matrix``."""
    cdef Py_ssize_t n_m = len(ms), n_icc = len(rys)
    cdef Py_ssize_t i, j
    cdef double m, ry, rx
    cdef double *c_ms = <double *> malloc(n_m * sizeof(double))
    cdef double *c_rys = <double *> malloc(n_icc * sizeof(double))
    cdef double *c_rxs = <double *> malloc(n_icc * sizeof(double))
    cdef double *ref_ate = <double *> malloc(n_icc * sizeof(double))
    cdef double *ref_hte = <double *> malloc(n_icc * sizeof(double))
    cdef double *vals = <double *> malloc(n_m * n_icc * sizeof(double))
    if (c_ms == NULL or c_rys == NULL or c_rxs == NULL or ref_ate == NULL
            or ref_hte == NULL or vals == NULL):
        free(c_ms); free(c_rys); free(c_rxs)
        free(ref_ate); free(ref_hte); free(vals)
        raise MemoryError()
    try:
        for i in range(n_m):
            c_ms[i] = ms[i]
        for j in range(n_icc):
            c_rys[j] = rys[j]
            c_rxs[j] = rxs[j]
        with nogil:
            for j in range(n_icc):
                ry = c_rys[j]
                rx = c_rxs[j]
                ref_ate[j] = 0.0
                ref_hte[j] = 0.0
                if kind != 0:
                    ref_ate[j] = _shape_ate(_m_ate_ref(ry, k, m_min, m_bar), ry, k)
                if kind != 1:
                    ref_hte[j] = _shape_hte(
                        _m_hte_ref(ry, rx, k, m_min, m_bar), ry, rx, k)
            for i in range(n_m):
                m = c_ms[i]
                for j in range(n_icc):
                    ry = c_rys[j]
                    rx = c_rxs[j]
                    if kind == 0:
                        vals[i * n_icc + j] = ref_hte[j] / _shape_hte(m, ry, rx, k)
                    elif kind == 1:
                        vals[i * n_icc + j] = ref_ate[j] / _shape_ate(m, ry, k)
                    else:
                        vals[i * n_icc + j] = (
                            lam * ref_ate[j] / _shape_ate(m, ry, k)
                            + (1.0 - lam) * ref_hte[j] / _shape_hte(m, ry, rx, k)
                        )
        return [
            [vals[i * n_icc + j] for j in range(n_icc)] for i in range(n_m)
        ]
    finally:
        free(c_ms); free(c_rys); free(c_rxs)
        free(ref_ate); free(ref_hte); free(vals)
