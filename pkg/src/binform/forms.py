"""Binary forms, biforms, and the SL2 operator toolkit.

A BinaryForm of order m in the pair v stores raw monomial coefficients:
F = sum coefs[i] * v1^(m-i) * v2^i.  The binomial weights of the generic
form belong to the generic_form constructor, not to the representation,
because the transvection formulas differentiate the polynomial itself.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import List, Optional, Sequence

from .errors import ConsistencyError, DegreeCapError, RangeError, UnsupportedInputError
from .poly import MPoly, QQ, Universe, binom, qq


class BinaryForm:
    """Homogeneous order-m form in one variable pair, coefficients in MPoly."""

    __slots__ = ("universe", "order", "pair", "coefs")

    def __init__(self, universe: Universe, order: int, pair: str, coefs: Sequence[MPoly]):
        if len(coefs) != order + 1:
            raise ConsistencyError("coefficient list length must be order + 1")
        v1, v2 = universe.pair_vars(pair)
        for c in coefs:
            if c.degree_in((v1, v2)) != 0:
                raise ConsistencyError("coefficients must be free of the form's own pair")
        self.universe = universe
        self.order = order
        self.pair = pair
        self.coefs = list(coefs)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(universe: Universe, order: int, pair: str = "x") -> "BinaryForm":
        z = MPoly.zero(universe)
        return BinaryForm(universe, order, pair, [z] * (order + 1))

    @staticmethod
    def from_mpoly(universe: Universe, p: MPoly, pair: str, order: Optional[int] = None) -> "BinaryForm":
        v1, v2 = universe.pair_vars(pair)
        if order is None:
            order = p.degree_in((v1, v2))
        if not p.is_homogeneous_in((v1, v2), order):
            raise ConsistencyError(f"polynomial is not homogeneous of order {order} in {pair}")
        coefs = [p.coefficient_of(**{v1: order - i, v2: i}) for i in range(order + 1)]
        return BinaryForm(universe, order, pair, coefs)

    def to_mpoly(self) -> MPoly:
        u = self.universe
        v1, v2 = u.pair_vars(self.pair)
        acc = MPoly.zero(u)
        for i, c in enumerate(self.coefs):
            if not c.is_zero():
                acc = acc + c * MPoly.monomial(u, 1, **{v1: self.order - i, v2: i})
        return acc

    # -- basic algebra ------------------------------------------------

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefs)

    def __eq__(self, other):
        return (isinstance(other, BinaryForm) and self.order == other.order
                and self.pair == other.pair and self.coefs == other.coefs)

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if self.order != other.order or self.pair != other.pair:
            raise ConsistencyError("order/pair mismatch in form addition")
        return BinaryForm(self.universe, self.order, self.pair,
                          [a + b for a, b in zip(self.coefs, other.coefs)])

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (other * QQ(-1))

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            if other.pair != self.pair:
                raise ConsistencyError("form product needs a common pair")
            p = self.to_mpoly() * other.to_mpoly()
            return BinaryForm.from_mpoly(self.universe, p, self.pair, self.order + other.order)
        return BinaryForm(self.universe, self.order, self.pair,
                          [c * other for c in self.coefs])

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BinaryForm":
        return BinaryForm.from_mpoly(self.universe, self.to_mpoly() ** k,
                                     self.pair, self.order * k)

    def scale(self, c) -> "BinaryForm":
        return self * c

    def subs(self, assignment) -> "BinaryForm":
        return BinaryForm(self.universe, self.order, self.pair,
                          [p.subs(assignment) for p in self.coefs])

    def coefficient_degree(self, names) -> int:
        return max((c.degree_in(names) for c in self.coefs), default=0)

    def to_json_obj(self):
        return {"order": self.order, "pair": self.pair,
                "coefs": [c.to_text() for c in self.coefs]}

    @staticmethod
    def from_json_obj(universe: Universe, obj) -> "BinaryForm":
        coefs = [MPoly.from_text(universe, s) for s in obj["coefs"]]
        return BinaryForm(universe, obj["order"], obj["pair"], coefs)

    def __repr__(self):
        return f"BinaryForm({self.to_mpoly().to_text()})"


class BiForm:
    """Bihomogeneous form of orders (m, n) in two variable pairs."""

    __slots__ = ("universe", "orders", "pairs", "terms")

    def __init__(self, universe: Universe, orders, pairs, terms: MPoly):
        m, n = orders
        p1, p2 = pairs
        if not terms.is_homogeneous_in(universe.pair_vars(p1), m if not terms.is_zero() else None):
            raise ConsistencyError(f"not bihomogeneous of order {m} in {p1}")
        if not terms.is_homogeneous_in(universe.pair_vars(p2), n if not terms.is_zero() else None):
            raise ConsistencyError(f"not bihomogeneous of order {n} in {p2}")
        self.universe = universe
        self.orders = (m, n)
        self.pairs = (p1, p2)
        self.terms = terms

    def is_zero(self) -> bool:
        return self.terms.is_zero()

    def __eq__(self, other):
        return (isinstance(other, BiForm) and self.orders == other.orders
                and self.pairs == other.pairs and self.terms == other.terms)

    def diagonal(self) -> MPoly:
        """Substitute the first pair for the second (y := x)."""
        return self.terms.rename_pair(self.pairs[1], self.pairs[0])

    def to_json_obj(self):
        return {"orders": list(self.orders), "pairs": list(self.pairs),
                "terms": self.terms.to_json_obj()}

    def __repr__(self):
        return f"BiForm{self.orders}({self.terms.to_text()})"


# -- constructors of generic forms ------------------------------------


def generic_form(universe: Universe, d: int, symbol: str = "a", pair: str = "x") -> BinaryForm:
    """The generic d-ic: coefs[i] = C(d, i) * symbol_i."""
    limit = universe.d if symbol == "a" else universe.e
    if limit is None or d > limit:
        raise DegreeCapError(f"generic form of order {d} exceeds the universe block for {symbol!r}")
    coefs = [universe.var(f"{symbol}{i}") * binom(d, i) for i in range(d + 1)]
    return BinaryForm(universe, d, pair, coefs)


def dual_monomial(universe: Universe, i: int, d: int) -> BinaryForm:
    """The order-d form (1/d!) * v2^(d-i) * (-v1)^i dual to the coefficient a_i."""
    if not 0 <= i <= d:
        raise RangeError(f"dual_monomial index {i} outside 0..{d}")
    coefs = [MPoly.zero(universe)] * (d + 1)
    coefs[d - i] = MPoly.const(universe, qq((-1) ** i, math.factorial(d)))
    return BinaryForm(universe, d, "x", coefs)


# -- transvection ------------------------------------------------------


def _transvect_mpoly(pa: MPoly, m: int, pb: MPoly, n: int, r: int, pair: str) -> MPoly:
    u = pa.universe
    v1, v2 = u.pair_vars(pair)
    pref = qq(math.factorial(m - r) * math.factorial(n - r),
              math.factorial(m) * math.factorial(n))
    # i-th row: d^r A / dv1^(r-i) dv2^i, built by successive differentiation
    da = [pa]
    for _ in range(r):
        da.append(da[-1].diff(v2))
    for i in range(r + 1):
        da[i] = da[i].diff(v1, r - i)
    db = [pb]
    for _ in range(r):
        db.append(db[-1].diff(v2))
    for i in range(r + 1):
        db[i] = db[i].diff(v1, r - i)
    acc = MPoly.zero(u)
    for i in range(r + 1):
        term = da[i] * db[r - i]
        if term.is_zero():
            continue
        acc = acc + term * qq((-1) ** i * binom(r, i))
    return acc * pref


def transvectant(A: BinaryForm, B: BinaryForm, r: int) -> BinaryForm:
    """The r-th transvectant (A, B)_r; zero form when r exceeds min of the orders."""
    if A.pair != B.pair:
        raise ConsistencyError("transvectant operands must share a pair")
    m, n = A.order, B.order
    if r > min(m, n):
        return BinaryForm.zero(A.universe, max(m + n - 2 * r, 0), A.pair)
    p = _transvect_mpoly(A.to_mpoly(), m, B.to_mpoly(), n, r, A.pair)
    return BinaryForm.from_mpoly(A.universe, p, A.pair, m + n - 2 * r)


def transvect_partial(A, B: BiForm, r: int, which: int = 0) -> BiForm:
    """Transvectant in one pair of B (index `which`), the other pair held constant.

    A may be a BinaryForm in that pair or another BiForm sharing both pairs
    (then its order in the active pair is used and the passive orders add).
    """
    u = B.universe
    pair = B.pairs[which]
    other = B.pairs[1 - which]
    if isinstance(A, BinaryForm):
        if A.pair != pair:
            raise ConsistencyError("pair mismatch in partial transvectant")
        m, pa = A.order, A.to_mpoly()
        a_other = 0
    else:
        if A.pairs != B.pairs:
            raise ConsistencyError("pair mismatch in partial transvectant")
        m, pa = A.orders[which], A.terms
        a_other = A.orders[1 - which]
    n = B.orders[which]
    if r > min(m, n):
        zero = MPoly.zero(u)
        orders = [0, 0]
        orders[which] = max(m + n - 2 * r, 0)
        orders[1 - which] = a_other + B.orders[1 - which]
        return BiForm(u, tuple(orders) if which == 0 else (orders[0], orders[1]),
                      B.pairs, zero)
    p = _transvect_mpoly(pa, m, B.terms, n, r, pair)
    orders = [0, 0]
    orders[which] = m + n - 2 * r
    orders[1 - which] = a_other + B.orders[1 - which]
    return BiForm(u, (orders[0], orders[1]), B.pairs, p)


def polarize(B: BiForm, direction: str, k: int = 1) -> BiForm:
    """k-fold polarization; direction 'x@y' applies x1 d/dy1 + x2 d/dy2."""
    src, dst = direction.split("@")
    u = B.universe
    pairs = {B.pairs[0], B.pairs[1]}
    if src not in pairs or dst not in pairs or src == dst:
        raise ConsistencyError(f"direction {direction!r} does not match pairs {B.pairs}")
    s1, s2 = u.pair_vars(src)
    d1, d2 = u.pair_vars(dst)
    p = B.terms
    for _ in range(k):
        p = u.var(s1) * p.diff(d1) + u.var(s2) * p.diff(d2)
    delta = (k, -k) if src == B.pairs[0] else (-k, k)
    return BiForm(u, (B.orders[0] + delta[0], B.orders[1] + delta[1]), B.pairs, p)


def omega(B: BiForm) -> BiForm:
    """The Cayley operator d^2/dx1 dy2 - d^2/dx2 dy1 applied once."""
    u = B.universe
    x1, x2 = u.pair_vars(B.pairs[0])
    y1, y2 = u.pair_vars(B.pairs[1])
    p = B.terms.diff(x1).diff(y2) - B.terms.diff(x2).diff(y1)
    return BiForm(u, (B.orders[0] - 1, B.orders[1] - 1), B.pairs, p)


def bracket(universe: Universe, pair_a: str = "x", pair_b: str = "y") -> MPoly:
    """The bracket factor a1*b2 - a2*b1 of two pairs."""
    a1, a2 = universe.pair_vars(pair_a)
    b1, b2 = universe.pair_vars(pair_b)
    return universe.var(a1) * universe.var(b2) - universe.var(a2) * universe.var(b1)


# -- numeric helpers ---------------------------------------------------


def gordan_c(d: int, r: int):
    """Coefficient C(d,2r)^2 / C(2d-2r+1, 2r) of the F(x)F(y) Gordan series."""
    if not 0 <= r <= d // 2:
        raise RangeError(f"gordan_c index r={r} outside 0..{d // 2}")
    return qq(binom(d, 2 * r) ** 2, binom(2 * d - 2 * r + 1, 2 * r))


def plethysm_multiplicity(m: int, d: int, q: int) -> int:
    """Multiplicity of S_q inside S_m(S_d), by the Cayley-Sylvester count.

    Equals p(k) - p(k-1) with k = (m*d - q)/2, where p counts partitions of k
    into at most m parts, each part at most d; zero when the parity fails.
    """
    if q < 0 or q > m * d or (m * d - q) % 2:
        return 0
    k = (m * d - q) // 2
    return _bounded_partitions(k, m, d) - _bounded_partitions(k - 1, m, d)


def _bounded_partitions(k: int, parts: int, size: int) -> int:
    """Number of partitions of k fitting inside a parts x size box."""
    if k < 0:
        return 0

    @lru_cache(maxsize=None)
    def rec(j: int, r: int, c: int) -> int:
        if j == 0:
            return 1
        if r == 0 or c == 0:
            return 0
        # split on whether a part of size exactly c occurs
        return rec(j, r, c - 1) + (rec(j - c, r - 1, c) if j >= c else 0)

    return rec(k, parts, size)
