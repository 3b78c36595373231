# src/projpair/polynomials.py
"""Exact integer polynomial families behind the anticommutator power identities.

Two families expand powers of fg + gf in the operators fg, gf, fgf, gfg; a
Fibonacci-type family tracks the leading block of those powers in the
two-subspace decomposition; two binomial identities collapse the resulting
norm estimates. Every family is computed both by its recursion and by its
closed form, in exact arbitrary-precision integer arithmetic, so agreement is
coefficient-for-coefficient rather than approximate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class SelfCheckError(ArithmeticError):
    """An internal cross-check failed. Indicates a bug, never bad user input."""


@dataclass(frozen=True)
class IntPolynomial:
    """Dense univariate polynomial with exact integer coefficients.

    coefficients[k] is the coefficient of x**k. Trailing zeros are trimmed on
    construction, so the zero polynomial has an empty coefficient tuple and
    equality is canonical.
    """

    coefficients: tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(tuple(out))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(other * c for c in self.coefficients))
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by x**k."""
        if not self.coefficients:
            return self
        return IntPolynomial((0,) * k + self.coefficients)

    def __call__(self, x):
        """Horner evaluation; exact for int arguments, float otherwise."""
        acc = 0 if isinstance(x, int) else 0.0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


X = IntPolynomial((0, 1))
ONE = IntPolynomial((1,))
ZERO = IntPolynomial(())


@dataclass(frozen=True)
class SqrtRingPolynomial:
    """Polynomial in s = sqrt(x) with half-integer coefficients.

    numerators[k] / 2 is the coefficient of s**k. The closed forms of the
    families below live in this ring; they collapse to Z[x] only because every
    odd power of s cancels and every surviving numerator is even.
    to_int_polynomial verifies both facts instead of assuming them.
    """

    numerators: tuple[int, ...]

    def to_int_polynomial(self) -> IntPolynomial:
        nums = self.numerators
        for k in range(1, len(nums), 2):
            if nums[k]:
                raise SelfCheckError(
                    f"odd power s^{k} survives with numerator {nums[k]}; "
                    "closed form does not reduce to a polynomial in x"
                )
        coeffs = []
        for k in range(0, len(nums), 2):
            if nums[k] % 2:
                raise SelfCheckError(
                    f"coefficient of s^{k} is {nums[k]}/2, not an integer"
                )
            coeffs.append(nums[k] // 2)
        return IntPolynomial(tuple(coeffs))


def _binom_power(c: int, k: int) -> list[int]:
    # Exact coefficients of (s + c)**k, index = power of s.
    return [math.comb(k, j) * c ** (k - j) for j in range(k + 1)]


def poly_PQ_recursive(n: int) -> tuple[IntPolynomial, IntPolynomial]:
    """The pair (P_n, Q_n) expanding (fg+gf)^n, by the defining recursion.

    P_{n+1} = x(P_n + Q_n) and Q_{n+1} = P_n + x Q_n, starting from P_1 = x,
    Q_1 = 0.
    """
    if n < 1:
        raise ValueError(f"family is defined for n >= 1, got {n}")
    p, q = X, ZERO
    for _ in range(n - 1):
        p, q = (p + q).shift(1), p + q.shift(1)
    return p, q


def poly_PQ_closed(n: int) -> tuple[IntPolynomial, IntPolynomial]:
    """The pair (P_n, Q_n) from the closed forms in sqrt(x).

    P_n = (x/2)[(x + sqrt x)^{n-1} + (x - sqrt x)^{n-1}] and
    Q_n = (sqrt x / 2)[(x + sqrt x)^{n-1} - (x - sqrt x)^{n-1}], expanded
    exactly in s = sqrt(x) via (x +- sqrt x)^m = s^m (s +- 1)^m, then converted
    back to Z[x] with parity and divisibility checks.
    """
    if n < 1:
        raise ValueError(f"family is defined for n >= 1, got {n}")
    m = n - 1
    plus = _binom_power(1, m)
    minus = _binom_power(-1, m)
    p_num = [0] * (m + 2) + [a + b for a, b in zip(plus, minus)]
    q_num = [0] * (m + 1) + [a - b for a, b in zip(plus, minus)]
    p = SqrtRingPolynomial(tuple(p_num)).to_int_polynomial()
    q = SqrtRingPolynomial(tuple(q_num)).to_int_polynomial()
    return p, q


def poly_F(n: int) -> IntPolynomial:
    """Fibonacci-type block polynomial by recursion.

    F_{n+1} = 2x F_n + (x - x^2) F_{n-1}, with F_0 = 1 and F_1 = 2x.
    """
    if n < 0:
        raise ValueError(f"family is defined for n >= 0, got {n}")
    prev, cur = ONE, 2 * X
    if n == 0:
        return prev
    weight = X - X * X
    for _ in range(n - 1):
        prev, cur = cur, 2 * cur.shift(1) + weight * prev
    return cur


def poly_F_closed(n: int) -> IntPolynomial:
    """Fibonacci-type block polynomial from its closed form.

    F_n = (1/2) x^{n/2} [(sqrt x + 1)^{n+1} - (sqrt x - 1)^{n+1}], expanded in
    s = sqrt(x) and converted back with parity and divisibility checks.
    """
    if n < 0:
        raise ValueError(f"family is defined for n >= 0, got {n}")
    plus = _binom_power(1, n + 1)
    minus = _binom_power(-1, n + 1)
    num = [0] * n + [a - b for a, b in zip(plus, minus)]
    return SqrtRingPolynomial(tuple(num)).to_int_polynomial()


def _exact_half(values: list[int]) -> list[int]:
    out = []
    for k, v in enumerate(values):
        if v % 2:
            raise SelfCheckError(f"coefficient of power {k} is {v}/2, not an integer")
        out.append(v // 2)
    return out


def poly_AB(N: int) -> tuple[IntPolynomial, IntPolynomial]:
    """Binomial identity pair (A_N, B_N) in the scalar a = ||fg||.

    A_N(a) = sum_{l=1..N} C(2N-1, 2l-1) a^{2l}
           = (a/2)[(1+a)^{2N-1} - (1-a)^{2N-1}],
    B_N(a) = sum_{l=0..N-1} C(2N-1, 2l) a^{2l}
           = (1/2)[(1+a)^{2N-1} + (1-a)^{2N-1}].

    Both sides of each identity are expanded exactly and must coincide; the
    explicit sums are returned.
    """
    if N < 1:
        raise ValueError(f"family is defined for N >= 1, got {N}")
    m = 2 * N - 1
    a_sum = [0] * (2 * N + 1)
    for ell in range(1, N + 1):
        a_sum[2 * ell] = math.comb(m, 2 * ell - 1)
    b_sum = [0] * (2 * N - 1)
    for ell in range(N):
        b_sum[2 * ell] = math.comb(m, 2 * ell)
    A_sum = IntPolynomial(tuple(a_sum))
    B_sum = IntPolynomial(tuple(b_sum))

    plus = [math.comb(m, j) for j in range(m + 1)]  # (1+a)^m
    minus = [math.comb(m, j) * (-1) ** j for j in range(m + 1)]  # (1-a)^m
    A_closed = IntPolynomial(
        tuple([0] + _exact_half([a - b for a, b in zip(plus, minus)]))
    )
    B_closed = IntPolynomial(tuple(_exact_half([a + b for a, b in zip(plus, minus)])))
    if A_sum != A_closed or B_sum != B_closed:
        raise SelfCheckError(
            f"binomial sum and closed form disagree at N={N}: "
            f"A {A_sum.coefficients} vs {A_closed.coefficients}, "
            f"B {B_sum.coefficients} vs {B_closed.coefficients}"
        )
    return A_sum, B_sum


def poly_eval_real(p: IntPolynomial, x: float) -> float:
    """Horner evaluation in double precision."""
    acc = 0.0
    for c in reversed(p.coefficients):
        acc = acc * x + float(c)
    return acc


def coefficient_strings(p: IntPolynomial) -> list[str]:
    """Coefficients as decimal strings, index = power (big-int safe export).

    The zero polynomial exports as ["0"].
    """
    if p.is_zero():
        return ["0"]
    return [str(c) for c in p.coefficients]
