"""Sparse multivariate polynomials over the rationals.

A polynomial lives in a fixed, ordered variable universe

    x1, x2, y1, y2, z1, z2, [f1, f2, g1, g2,]  a0..ad  [, b0..be]

and is stored as a dict mapping dense exponent tuples to nonzero rational
coefficients.  The canonical term order is graded lexicographic over the
variable order above; it fixes leading coefficients, the text/JSON
serialization, and proportionality testing.

Rationals are gmpy2.mpq when available (much faster), with
fractions.Fraction as a drop-in fallback.
"""

from __future__ import annotations

import json
import math
import re
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .config import LIMITS
from .errors import ConsistencyError, DegreeCapError, ParseError, UnsupportedInputError

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    from fractions import Fraction as QQ

Exponent = Tuple[int, ...]

_ZERO = QQ(0)
_ONE = QQ(1)


def qq(p, q=None):
    """Exact rational from ints or a 'p/q' string."""
    return QQ(p) if q is None else QQ(p, q)


def binom(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n (also for negative upper index via math rules off)."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def gen_binom(n: int, k: int):
    """Generalized binomial coefficient C(n, k) for possibly negative n, as a rational."""
    if k < 0:
        return QQ(0)
    num = QQ(1)
    for j in range(k):
        num *= QQ(n - j)
    return num / math.factorial(k)


class Universe:
    """Ordered variable universe shared by all polynomials of a computation."""

    def __init__(self, d: int, e: Optional[int] = None, letters: bool = False):
        if d > LIMITS.degree_cap or (e is not None and e > LIMITS.degree_cap):
            raise DegreeCapError(f"universe caps d,e <= {LIMITS.degree_cap}, got d={d}, e={e}")
        names = ["x1", "x2", "y1", "y2", "z1", "z2"]
        if letters:
            names += ["f1", "f2", "g1", "g2"]
        names += [f"a{i}" for i in range(d + 1)]
        if e is not None:
            names += [f"b{j}" for j in range(e + 1)]
        self.d = d
        self.e = e
        self.letters = letters
        self.names: Tuple[str, ...] = tuple(names)
        self.index: Dict[str, int] = {n: i for i, n in enumerate(self.names)}
        self.nvars = len(self.names)

    def __eq__(self, other):
        return isinstance(other, Universe) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Universe(d={self.d}, e={self.e}, letters={self.letters})"

    def var(self, name: str) -> "MPoly":
        exps = [0] * self.nvars
        exps[self.index[name]] = 1
        return MPoly(self, {tuple(exps): _ONE})

    def pair_vars(self, pair: str) -> Tuple[str, str]:
        return (pair + "1", pair + "2")

    def a_names(self):
        return [f"a{i}" for i in range(self.d + 1)]

    def b_names(self):
        return [f"b{j}" for j in range(self.e + 1)]


def _grlex_key(exps: Exponent):
    return (sum(exps), exps)


class MPoly:
    """Immutable sparse polynomial; term map from exponent tuple to nonzero rational."""

    __slots__ = ("universe", "terms")

    def __init__(self, universe: Universe, terms: Dict[Exponent, object], _clean: bool = False):
        self.universe = universe
        if _clean:
            self.terms = terms
        else:
            self.terms = {e: QQ(c) for e, c in terms.items() if c != 0}

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(universe: Universe) -> "MPoly":
        return MPoly(universe, {}, _clean=True)

    @staticmethod
    def const(universe: Universe, c) -> "MPoly":
        c = QQ(c)
        if c == 0:
            return MPoly.zero(universe)
        return MPoly(universe, {(0,) * universe.nvars: c}, _clean=True)

    @staticmethod
    def monomial(universe: Universe, c, **exps) -> "MPoly":
        c = QQ(c)
        if c == 0:
            return MPoly.zero(universe)
        vec = [0] * universe.nvars
        for name, k in exps.items():
            vec[universe.index[name]] = k
        return MPoly(universe, {tuple(vec): c}, _clean=True)

    # -- predicates / views -------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        if not self.terms:
            return QQ(0)
        if not self.is_constant():
            raise UnsupportedInputError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, names: Iterable[str]) -> int:
        idx = [self.universe.index[n] for n in names]
        return max((sum(e[i] for i in idx) for e in self.terms), default=0)

    def degrees_in(self, names: Iterable[str]):
        """Set of per-term degrees in the given variables (homogeneity witness)."""
        idx = [self.universe.index[n] for n in names]
        return {sum(e[i] for i in idx) for e in self.terms}

    def is_homogeneous_in(self, names: Iterable[str], degree: Optional[int] = None) -> bool:
        degs = self.degrees_in(names)
        if not degs:
            return True
        if degree is None:
            return len(degs) == 1
        return degs == {degree}

    def leading(self) -> Tuple[Exponent, object]:
        if not self.terms:
            raise ConsistencyError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def coefficient_of(self, **exps):
        """Coefficient polynomial of the given pure power in the named variables."""
        u = self.universe
        idx = {u.index[n]: k for n, k in exps.items()}
        out = {}
        for e, c in self.terms.items():
            if all(e[i] == k for i, k in idx.items()):
                ne = list(e)
                for i in idx:
                    ne[i] = 0
                out[tuple(ne)] = out.get(tuple(ne), _ZERO) + c
        return MPoly(self.universe, out)

    def variables(self):
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(self.universe.names[i])
        return used

    # -- ring operations ----------------------------------------------

    def _check(self, other: "MPoly"):
        if self.universe != other.universe:
            raise UnsupportedInputError("operands live in different variable universes")

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.universe == other.universe and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.universe, frozenset(self.terms.items())))

    def __neg__(self):
        return MPoly(self.universe, {e: -c for e, c in self.terms.items()}, _clean=True)

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.universe, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, _ZERO) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        return MPoly(self.universe, out, _clean=True)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.universe, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = QQ(other)
            if c == 0:
                return MPoly.zero(self.universe)
            return MPoly(self.universe, {e: k * c for e, k in self.terms.items()}, _clean=True)
        self._check(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: Dict[Exponent, object] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(map(sum, zip(ea, eb)))
                s = out.get(e, _ZERO) + ca * cb
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return MPoly(self.universe, out, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DegreeCapError("negative power")
        if k > LIMITS.pow_cap:
            raise DegreeCapError(f"power {k} exceeds configured cap {LIMITS.pow_cap}")
        out = MPoly.const(self.universe, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- calculus -----------------------------------------------------

    def diff(self, name: str, k: int = 1) -> "MPoly":
        i = self.universe.index[name]
        terms = self.terms
        for _ in range(k):
            out = {}
            for e, c in terms.items():
                if e[i]:
                    ne = list(e)
                    ne[i] -= 1
                    out[tuple(ne)] = c * e[i]
            terms = out
            if not terms:
                break
        return MPoly(self.universe, terms, _clean=True)

    def subs(self, assignment: Mapping[str, object]) -> "MPoly":
        """Simultaneous substitution; values are MPoly or rationals."""
        u = self.universe
        idx = {}
        for name, v in assignment.items():
            if name not in u.index:
                raise UnsupportedInputError(f"unknown variable {name}")
            idx[u.index[name]] = v if isinstance(v, MPoly) else QQ(v)
        if not idx:
            return self
        pow_cache: Dict[Tuple[int, int], object] = {}

        def vpow(i, k):
            key = (i, k)
            if key not in pow_cache:
                v = idx[i]
                pow_cache[key] = v ** k
            return pow_cache[key]

        out = MPoly.zero(u)
        acc: Dict[Exponent, object] = {}
        for e, c in self.terms.items():
            static = list(e)
            scalar = c
            polys = []
            for i in idx:
                k = e[i]
                if not k:
                    continue
                static[i] = 0
                val = vpow(i, k)
                if isinstance(val, MPoly):
                    polys.append(val)
                else:
                    scalar = scalar * val
            if scalar == 0:
                continue
            if not polys:
                key = tuple(static)
                s = acc.get(key, _ZERO) + scalar
                if s == 0:
                    acc.pop(key, None)
                else:
                    acc[key] = s
            else:
                term = MPoly(u, {tuple(static): scalar}, _clean=True)
                for p in polys:
                    term = term * p
                out = out + term
        if acc:
            out = out + MPoly(u, acc, _clean=True)
        return out

    def rename_pair(self, src_pair: str, dst_pair: str) -> "MPoly":
        """Fast variable-for-variable substitution (e.g. the y := x diagonal)."""
        u = self.universe
        s1, s2 = u.index[src_pair + "1"], u.index[src_pair + "2"]
        d1, d2 = u.index[dst_pair + "1"], u.index[dst_pair + "2"]
        out: Dict[Exponent, object] = {}
        for e, c in self.terms.items():
            ne = list(e)
            k1, k2 = ne[s1], ne[s2]
            ne[s1] = ne[s2] = 0
            ne[d1] += k1
            ne[d2] += k2
            key = tuple(ne)
            s = out.get(key, _ZERO) + c
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return MPoly(u, out, _clean=True)

    # -- division -----------------------------------------------------

    def divexact(self, divisor: "MPoly") -> "MPoly":
        """Exact division; raises ConsistencyError if the remainder is nonzero."""
        self._check(divisor)
        if divisor.is_zero():
            raise ConsistencyError("division by zero polynomial")
        if self.is_zero():
            return self
        dlead = max(divisor.terms, key=_grlex_key)
        dcoef = divisor.terms[dlead]
        rem = dict(self.terms)
        out: Dict[Exponent, object] = {}
        while rem:
            rlead = max(rem, key=_grlex_key)
            quot_exp = tuple(r - d for r, d in zip(rlead, dlead))
            if any(k < 0 for k in quot_exp):
                raise ConsistencyError("inexact polynomial division")
            qc = rem[rlead] / dcoef
            out[quot_exp] = out.get(quot_exp, _ZERO) + qc
            for e, c in divisor.terms.items():
                ne = tuple(map(sum, zip(e, quot_exp)))
                s = rem.get(ne, _ZERO) - qc * c
                if s == 0:
                    rem.pop(ne, None)
                else:
                    rem[ne] = s
        return MPoly(self.universe, out)

    def divides(self, other: "MPoly") -> bool:
        try:
            other.divexact(self)
            return True
        except ConsistencyError:
            return False

    # -- serialization ------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        names = self.universe.names
        chunks = []
        for e, c in self.sorted_terms():
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(names[i])
                elif k > 1:
                    factors.append(f"{names[i]}^{k}")
            num, den = c.numerator, c.denominator
            neg = num < 0
            num = abs(num)
            if den == 1:
                coef = str(num)
            else:
                coef = f"({num}/{den})"
            if factors and num == 1 and den == 1:
                body = "*".join(factors)
            elif factors:
                body = coef + "*" + "*".join(factors)
            else:
                body = coef
            chunks.append(("-" if neg else "+", body))
        sign, body = chunks[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in chunks[1:]:
            text += f" {sign} {body}"
        return text

    _TOKEN = re.compile(r"\s*(\(|\)|\^|\*|\+|-|/|[A-Za-z][A-Za-z0-9]*|[0-9]+)")

    @staticmethod
    def from_text(universe: Universe, src: str) -> "MPoly":
        """Parse the canonical text format (also accepts any sum of monomials)."""
        pos = 0
        tokens = []
        while pos < len(src):
            m = MPoly._TOKEN.match(src, pos)
            if not m:
                if src[pos:].strip():
                    raise ParseError("bad character in polynomial", pos)
                break
            tokens.append((m.group(1), m.start(1)))
            pos = m.end()
        result = MPoly.zero(universe)
        i = 0
        n = len(tokens)
        if n == 0:
            raise ParseError("empty polynomial", 0)
        while i < n:
            sign = 1
            while i < n and tokens[i][0] in "+-":
                if tokens[i][0] == "-":
                    sign = -sign
                i += 1
            if i >= n:
                raise ParseError("dangling sign", tokens[-1][1])
            coef = QQ(sign)
            vec = [0] * universe.nvars
            expect_factor = True
            while i < n:
                tok, at = tokens[i]
                if tok in "+-":
                    break
                if tok == "*":
                    i += 1
                    continue
                if not expect_factor and tok not in ("*",):
                    pass
                if tok == "(":
                    if i + 3 >= n or tokens[i + 2][0] != "/" or tokens[i + 4][0] != ")":
                        raise ParseError("malformed rational coefficient", at)
                    coef = coef * QQ(int(tokens[i + 1][0]), int(tokens[i + 3][0]))
                    i += 5
                elif tok.isdigit():
                    val = int(tok)
                    if i + 2 < n and tokens[i + 1][0] == "/" and tokens[i + 2][0].isdigit():
                        coef = coef * QQ(val, int(tokens[i + 2][0]))
                        i += 3
                    else:
                        coef = coef * val
                        i += 1
                elif tok in universe.index:
                    k = 1
                    i += 1
                    if i + 1 < n and tokens[i][0] == "^" and tokens[i + 1][0].isdigit():
                        k = int(tokens[i + 1][0])
                        i += 2
                    elif i < n and tokens[i][0] == "^":
                        raise ParseError("exponent expected after '^'", tokens[i][1])
                    vec[universe.index[tok]] += k
                else:
                    raise ParseError(f"unknown variable {tok!r}", at)
                expect_factor = False
            result = result + MPoly(universe, {tuple(vec): coef})
        return result

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    def to_json_obj(self):
        return {
            "vars": list(self.universe.names),
            "terms": [
                {"coef": f"{c.numerator}/{c.denominator}", "exps": list(e)}
                for e, c in self.sorted_terms()
            ],
        }

    @staticmethod
    def from_json_obj(universe: Universe, obj) -> "MPoly":
        if list(universe.names) != list(obj["vars"]):
            raise UnsupportedInputError("JSON variable list does not match universe")
        terms = {tuple(t["exps"]): QQ(t["coef"]) for t in obj["terms"]}
        return MPoly(universe, terms)

    @staticmethod
    def from_json(universe: Universe, text: str) -> "MPoly":
        return MPoly.from_json_obj(universe, json.loads(text))

    def __repr__(self):
        return f"MPoly({self.to_text()})"


def are_proportional(p: MPoly, q: MPoly):
    """Return the ratio c with q = c * p, or None.

    Convention: (0, 0) -> 1; a zero against a nonzero -> None.
    """
    if p.is_zero() and q.is_zero():
        return QQ(1)
    if p.is_zero() or q.is_zero():
        return None
    if set(p.terms) != set(q.terms):
        return None
    ep, cp = p.leading()
    ratio = q.terms[ep] / cp
    for e, c in p.terms.items():
        if q.terms[e] != c * ratio:
            return None
    return ratio


# -- univariate gcd over a variable pair -------------------------------


def _dehom_coeffs(p: MPoly, pair: str):
    """Coefficient list (ascending in v2-exponent) of a binary form; rationals only."""
    u = p.universe
    i1, i2 = u.index[pair + "1"], u.index[pair + "2"]
    if any(k and j not in (i1, i2) for e in p.terms for j, k in enumerate(e)):
        raise UnsupportedInputError("form has generic (symbolic) coefficients")
    order = p.total_degree()
    coeffs = [QQ(0)] * (order + 1)
    for e, c in p.terms.items():
        if e[i1] + e[i2] != order:
            raise UnsupportedInputError("input is not homogeneous in the pair")
        coeffs[e[i2]] = c
    return coeffs, order


def _poly1_strip(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly1_rem(a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        f = a[-1] / lb
        for i, bc in enumerate(b):
            a[i + shift] -= f * bc
        a.pop()
        _poly1_strip(a)
    return a


def gcd_univariate(p: MPoly, q: MPoly, pair: str = "x") -> MPoly:
    """Monic-normalized gcd of two specialized binary forms in one pair.

    Common monomial content x1^a x2^b is factored out first, then a Euclidean
    gcd runs on the dehomogenizations in v1/v2; the result is rehomogenized.
    """
    u = p.universe
    if p.is_zero():
        return _monic(q)
    if q.is_zero():
        return _monic(p)
    v1, v2 = u.pair_vars(pair)
    i1, i2 = u.index[v1], u.index[v2]
    a1 = min(min(e[i1] for e in p.terms), min(e[i1] for e in q.terms))
    a2 = min(min(e[i2] for e in p.terms), min(e[i2] for e in q.terms))
    shift = MPoly.monomial(u, 1, **{v1: a1, v2: a2})

    def drop_content(r):
        b1 = min(e[i1] for e in r.terms)
        b2 = min(e[i2] for e in r.terms)
        return r.divexact(MPoly.monomial(u, 1, **{v1: b1, v2: b2}))

    pc, _ = _dehom_coeffs(drop_content(p), pair)
    qc, _ = _dehom_coeffs(drop_content(q), pair)
    a, b = _poly1_strip(list(pc)), _poly1_strip(list(qc))
    while b:
        a, b = b, _poly1_rem(a, b)
    deg = len(a) - 1
    g = MPoly.zero(u)
    for k, c in enumerate(a):
        g = g + MPoly.monomial(u, c, **{v1: deg - k, v2: k})
    return _monic(g * shift)


def _monic(p: MPoly) -> MPoly:
    if p.is_zero():
        return p
    _, lc = p.leading()
    return p * (QQ(1) / lc)
