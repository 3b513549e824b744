"""Exact polynomial arithmetic and the two state-sum invariants.

Both invariants are state sums over the vertex hypercube, computed from one
shared histogram ``hist[w][k]`` = number of states of weight ``w`` with ``k``
circles:

* n-color vertex polynomial  sum_nu (-1)^|nu| q^(3m|nu|) L(q)^(k_nu)
* vertex polynomial          sum_nu (-1)^|nu| n^(k_nu)

The histogram is streamed with arbitrary-precision accumulation; a compiled
kernel (numba, optional) handles large vertex counts.
"""

from __future__ import annotations

import json
from functools import lru_cache

from .vpd import RotationSystem, trace_boundary
from .states import DEFAULT_STATE_CAP, StateSpaceError


class _Poly:
    """Sparse integer-coefficient polynomial in one variable."""

    var = "q"

    def __init__(self, coeffs: dict[int, int] | None = None):
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def monomial(cls, e: int, c: int = 1):
        return cls({e: c})

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return type(self)(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return type(self)({e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return type(self)({e: c * other for e, c in self.coeffs.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return type(self)(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = type(self).one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, _Poly) and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, x):
        return sum(c * x**e for e, c in self.coeffs.items())

    def shift(self, d: int):
        return type(self)({e + d: c for e, c in self.coeffs.items()})

    def min_degree(self):
        return min(self.coeffs) if self.coeffs else 0

    def leading(self) -> int:
        return self.coeffs[max(self.coeffs)] if self.coeffs else 0

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            elif e == 1:
                body = self.var if mag == 1 else f"{mag}*{self.var}"
            else:
                head = "" if mag == 1 else f"{mag}*"
                body = f"{head}{self.var}^{e}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def to_json(self) -> str:
        terms = [[e, self.coeffs[e]] for e in sorted(self.coeffs, reverse=True)]
        return json.dumps({"var": self.var, "terms": terms})

    def __repr__(self):
        return f"{type(self).__name__}({self.to_text()})"


class LaurentPoly(_Poly):
    """Integer Laurent polynomial in q."""

    var = "q"


class IntPoly(_Poly):
    """Integer polynomial in n (negative powers appear transiently)."""

    var = "n"


def loop_polynomial(n: int) -> LaurentPoly:
    """qdim of the state algebra: q^m + ... + q^(1-m) (n even) or q^-m (n odd)."""
    if n <= 0:
        raise ValueError("n must be positive")
    m = n // 2 if n % 2 == 0 else (n - 1) // 2
    lo = 1 - m if n % 2 == 0 else -m
    return LaurentPoly({e: 1 for e in range(lo, m + 1)})


# ---------------------------------------------------------------------------
# state histogram


def state_histogram(
    rs: RotationSystem, cap: int = DEFAULT_STATE_CAP
) -> list[dict[int, int]]:
    """hist[w][k] = number of weight-w vertex states with k circles."""
    return _cached_histogram(rs.vertices, cap)


@lru_cache(maxsize=64)
def _cached_histogram(vertices, cap: int) -> list[dict[int, int]]:
    rs = RotationSystem(vertices)
    nv = rs.vertex_count
    if nv > cap:
        raise StateSpaceError(f"|V| = {nv} exceeds the state cap {cap}")
    if nv >= 16:
        hist = _histogram_compiled(rs)
        if hist is not None:
            return hist
    return _histogram_python(rs)


def _histogram_python(rs: RotationSystem) -> list[dict[int, int]]:
    nv = rs.vertex_count
    ends = rs.edge_endpoints()
    hist: list[dict[int, int]] = [dict() for _ in range(nv + 1)]
    for mask in range(1 << nv):
        bits = [(mask >> v) & 1 for v in range(nv)]
        swaps = frozenset(
            e for e, (u, w) in ends.items() if (bits[u] + bits[w]) % 2 == 1
        )
        k = trace_boundary(rs, swaps).circle_count
        w = sum(bits)
        hist[w][k] = hist[w].get(k, 0) + 1
    return hist


def _histogram_compiled(rs: RotationSystem):
    """Numba-compiled histogram; returns None when numba is unavailable."""
    try:
        import numpy as np
        from numba import njit
    except ImportError:  # pragma: no cover - exercised only without numba
        return None

    nv = rs.vertex_count
    ne = rs.edge_count
    # token ids: token (h, s) -> 2*(h-1) + (s-1)
    arc = np.zeros(4 * ne, dtype=np.int64)
    from .vpd import _in_token, _out_token

    for v in rs.vertices:
        r = len(v)
        for i in range(r):
            a = _out_token(v[i])
            b = _in_token(v[(i + 1) % r])
            ia = 2 * (a[0] - 1) + (a[1] - 1)
            ib = 2 * (b[0] - 1) + (b[1] - 1)
            arc[ia] = ib
            arc[ib] = ia
    base_neg = np.zeros(ne, dtype=np.int8)
    negs = rs._negative()
    eu = np.zeros(ne, dtype=np.int64)
    ew = np.zeros(ne, dtype=np.int64)
    for e, (u, w) in rs.edge_endpoints().items():
        base_neg[e - 1] = 1 if negs[e] else 0
        eu[e - 1] = u
        ew[e - 1] = w

    @njit(cache=False)
    def run(nv, ne, arc, base_neg, eu, ew):
        npts = arc.shape[0]
        maxk = npts // 2 + 1
        hist = np.zeros((nv + 1, maxk + 1), dtype=np.int64)
        glue = np.zeros(npts, dtype=np.int64)
        seen = np.zeros(npts, dtype=np.uint8)
        for mask in range(1 << nv):
            w = 0
            for v in range(nv):
                w += (mask >> v) & 1
            for e in range(ne):
                swap = base_neg[e] ^ (
                    ((mask >> eu[e]) & 1) ^ ((mask >> ew[e]) & 1)
                )
                a = 2 * (2 * e)  # token (2e+1, 1) id = 2*(2e+1-1)+0
                b = 2 * (2 * e + 1)
                if swap == 0:
                    glue[a] = b
                    glue[b] = a
                    glue[a + 1] = b + 1
                    glue[b + 1] = a + 1
                else:
                    glue[a] = b + 1
                    glue[b + 1] = a
                    glue[a + 1] = b
                    glue[b] = a + 1
            for p in range(npts):
                seen[p] = 0
            k = 0
            for p0 in range(npts):
                if seen[p0]:
                    continue
                k += 1
                p = p0
                while seen[p] == 0:
                    seen[p] = 1
                    q = arc[p]
                    seen[q] = 1
                    p = glue[q]
            hist[w, k] += 1
        return hist

    table = run(nv, ne, arc, base_neg, eu, ew)
    return [
        {k: int(table[w, k]) for k in range(table.shape[1]) if table[w, k]}
        for w in range(nv + 1)
    ]


# ---------------------------------------------------------------------------
# invariants


def ncolor_vertex_polynomial(
    rs: RotationSystem, n: int, cap: int = DEFAULT_STATE_CAP
) -> LaurentPoly:
    """sum_nu (-1)^|nu| q^(3m|nu|) L(q)^(k_nu)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = n // 2 if n % 2 == 0 else (n - 1) // 2
    loop = loop_polynomial(n)
    hist = state_histogram(rs, cap)
    powers: dict[int, LaurentPoly] = {}
    out = LaurentPoly.zero()
    for w, row in enumerate(hist):
        for k, count in row.items():
            if k not in powers:
                powers[k] = loop**k
            term = powers[k] * ((-1) ** w * count)
            out = out + term.shift(3 * m * w)
    return out


def vertex_polynomial(rs: RotationSystem, cap: int = DEFAULT_STATE_CAP) -> IntPoly:
    """sum_nu (-1)^|nu| n^(k_nu), as a polynomial in n."""
    hist = state_histogram(rs, cap)
    out: dict[int, int] = {}
    for w, row in enumerate(hist):
        for k, count in row.items():
            out[k] = out.get(k, 0) + (-1) ** w * count
    return IntPoly(out)


def abstract_vertex_polynomial(
    rs: RotationSystem, cap: int = DEFAULT_STATE_CAP
) -> tuple[IntPoly, int, bool]:
    """Vertex polynomial of an any-valence graph via its blowup.

    Returns ``(poly, applied_sign, has_negative_powers)`` where
    ``poly = sign * n^(-|V|) * V(blowup(rs), n)`` normalized to a positive
    leading coefficient.
    """
    from .vpd import blowup

    fl = blowup(rs)
    raw = vertex_polynomial(fl.rs, cap).shift(-rs.vertex_count)
    sign = -1 if raw.leading() < 0 else 1
    poly = raw * sign
    return poly, sign, poly.min_degree() < 0
