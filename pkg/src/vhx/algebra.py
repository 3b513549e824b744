"""The coefficient field Q(sqrt n), the graded algebra V_t = k[x]/(x^n - t),
its structure maps m / Delta / eta with tilde and hat variants, and the color
basis used for numeric validation.

Conventions: exponents live in 0..n-1; m = n/2 for even n and (n-1)/2 for odd
n; qdeg(x^k) = m - k.  Tilde maps carry the degree-n part (they raise qdeg by
n relative to the plain maps); hat maps are plain + tilde, i.e. the structure
maps of k[x]/(x^n - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def _isqrt_exact(n: int) -> int | None:
    r = math.isqrt(n)
    return r if r * r == n else None


@dataclass(frozen=True)
class QuadScalar:
    """Exact element a + b*sqrt(radicand) of Q(sqrt(radicand)).

    When the radicand is a perfect square the root is folded into the
    rational part, so ``b`` is always 0 in that case.
    """

    a: Fraction
    b: Fraction
    radicand: int

    @staticmethod
    def make(a, b, radicand: int) -> "QuadScalar":
        a, b = Fraction(a), Fraction(b)
        r = _isqrt_exact(radicand)
        if r is not None:
            return QuadScalar(a + b * r, Fraction(0), radicand)
        return QuadScalar(a, b, radicand)

    @staticmethod
    def of_int(c, radicand: int) -> "QuadScalar":
        return QuadScalar.make(c, 0, radicand)

    @staticmethod
    def root(radicand: int) -> "QuadScalar":
        return QuadScalar.make(0, 1, radicand)

    def __add__(self, o: "QuadScalar") -> "QuadScalar":
        return QuadScalar(self.a + o.a, self.b + o.b, self.radicand)

    def __sub__(self, o: "QuadScalar") -> "QuadScalar":
        return QuadScalar(self.a - o.a, self.b - o.b, self.radicand)

    def __neg__(self) -> "QuadScalar":
        return QuadScalar(-self.a, -self.b, self.radicand)

    def __mul__(self, o: "QuadScalar") -> "QuadScalar":
        n = self.radicand
        return QuadScalar(
            self.a * o.a + n * self.b * o.b, self.a * o.b + self.b * o.a, n
        )

    def __truediv__(self, o: "QuadScalar") -> "QuadScalar":
        n = self.radicand
        den = o.a * o.a - n * o.b * o.b
        if den == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt n)")
        inv = QuadScalar(o.a / den, -o.b / den, n)
        return self * inv

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.radicand)

    def __repr__(self) -> str:
        if not self.b:
            return str(self.a)
        return f"({self.a} + {self.b}*sqrt({self.radicand}))"


def half_m(n: int) -> int:
    """The integer m of the grading: n/2 (even) or (n-1)/2 (odd)."""
    return n // 2 if n % 2 == 0 else (n - 1) // 2


def qdeg(n: int, k: int) -> int:
    """Quantum degree of the basis element x^k."""
    if not 0 <= k < n:
        raise ValueError(f"exponent {k} out of range for n={n}")
    return half_m(n) - k


# ---------------------------------------------------------------------------
# elementary maps
#
# Each map returns a list of (exponents, QuadScalar) pairs; variants:
#   "plain" = t=0 part, "tilde" = degree-n part, "hat" = both summed.

VARIANTS = ("plain", "tilde", "hat")


def _check(n: int, *ks: int) -> None:
    for k in ks:
        if not 0 <= k < n:
            raise ValueError(f"exponent {k} out of range for n={n}")


def map_m(n: int, variant: str, i: int, j: int) -> list[tuple[tuple[int, ...], QuadScalar]]:
    """Multiplication V (x) V -> V."""
    _check(n, i, j)
    one = QuadScalar.of_int(1, n)
    out = []
    if variant in ("plain", "hat") and i + j < n:
        out.append(((i + j,), one))
    if variant in ("tilde", "hat") and i + j >= n:
        out.append(((i + j - n,), one))
    return out


def map_delta(n: int, variant: str, k: int) -> list[tuple[tuple[int, ...], QuadScalar]]:
    """Comultiplication V -> V (x) V."""
    _check(n, k)
    m = half_m(n)
    one = QuadScalar.of_int(1, n)
    out = []
    targets = []
    if variant in ("plain", "hat"):
        targets.append(k + 2 * m)
    if variant in ("tilde", "hat"):
        targets.append(k + 2 * m - n)
    for s in targets:
        for i in range(n):
            if 0 <= s - i < n:
                out.append(((i, s - i), one))
    return out


def map_eta(n: int, variant: str, k: int) -> list[tuple[tuple[int, ...], QuadScalar]]:
    """Same-circle map V -> V, with coefficient sqrt(n)."""
    _check(n, k)
    m = half_m(n)
    rt = QuadScalar.root(n)
    out = []
    if variant in ("plain", "hat") and k + m < n:
        out.append(((k + m,), rt))
    if variant in ("tilde", "hat") and 0 <= k + m - n < n:
        out.append(((k + m - n,), rt))
    return out


# ---------------------------------------------------------------------------
# color basis (numeric validation layer)


def color_change_matrix(n: int):
    """Columns are the color vectors c_i = (1/n) sum_j lambda^(i j) x^j."""
    import numpy as np

    lam = np.exp(2j * math.pi / n)
    return np.array(
        [[lam ** (i * j) / n for i in range(n)] for j in range(n)],
        dtype=complex,
    )


def _mono_matrix(n: int, fn, arity_in: int, arity_out: int):
    import numpy as np
    from itertools import product

    M = np.zeros((n**arity_out, n**arity_in), dtype=complex)
    for col, exps in enumerate(product(range(n), repeat=arity_in)):
        for out_exps, coeff in fn(*exps):
            row = 0
            for e in out_exps:
                row = row * n + e
            M[row, col] += float(coeff)
    return M


def color_maps(n: int):
    """Hat maps and their adjoints as matrices in the color basis.

    Returns a dict with keys ``m``, ``delta``, ``eta`` and ``m*``,
    ``delta*``, ``eta*``.  Adjoints are conjugate transposes in the color
    basis, where the Hermitian metric is orthonormal.
    """
    import numpy as np

    C = color_change_matrix(n)
    Cinv = np.linalg.inv(C)
    C2 = np.kron(C, C)
    C2inv = np.linalg.inv(C2)

    m_hat = _mono_matrix(n, lambda i, j: map_m(n, "hat", i, j), 2, 1)
    d_hat = _mono_matrix(n, lambda k: map_delta(n, "hat", k), 1, 2)
    e_hat = _mono_matrix(n, lambda k: map_eta(n, "hat", k), 1, 1)

    m_c = Cinv @ m_hat @ C2
    d_c = C2inv @ d_hat @ C
    e_c = Cinv @ e_hat @ C
    return {
        "m": m_c,
        "delta": d_c,
        "eta": e_c,
        "m*": m_c.conj().T,
        "delta*": d_c.conj().T,
        "eta*": e_c.conj().T,
    }
