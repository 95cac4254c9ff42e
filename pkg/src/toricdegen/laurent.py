"""Sparse Laurent polynomials and their quotients with exact rational coefficients.

A polynomial is a map from integer exponent tuples to nonzero Fractions, over
a fixed ordered tuple of variable names. Terms are always listed in ascending
lexicographic order of exponents.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError, SubstitutionError
from .polytope import Polytope, convex_hull


def _coef(c) -> Fraction:
    if isinstance(c, str):
        return Fraction(c)
    return Fraction(c)


def _frac_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


class LaurentPolynomial:
    __slots__ = ("vars", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Sequence[int], object] | None = None):
        self.vars = tuple(variables)
        n = len(self.vars)
        clean: dict[tuple[int, ...], Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise DimensionError(f"exponent {e} does not match {n} variables")
            c = _coef(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, variables: Sequence[str], c=1) -> "LaurentPolynomial":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "LaurentPolynomial":
        return cls(variables, {})

    @classmethod
    def monomial(cls, variables: Sequence[str], exponent: Sequence[int], c=1) -> "LaurentPolynomial":
        return cls(variables, {tuple(exponent): c})

    @classmethod
    def variable(cls, variables: Sequence[str], i: int) -> "LaurentPolynomial":
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> list["LaurentPolynomial"]:
        return [cls.variable(variables, i) for i in range(len(variables))]

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "LaurentPolynomial":
        obj = cls.__new__(cls)
        obj.vars = variables
        obj._terms = terms
        obj._hash = None
        return obj

    # -- inspection -----------------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def __len__(self):
        return len(self._terms)

    def min_exponent(self, i: int) -> int:
        return min(e[i] for e in self._terms)

    def max_exponent(self, i: int) -> int:
        return max(e[i] for e in self._terms)

    def is_polynomial_in(self, i: int) -> bool:
        return all(e[i] >= 0 for e in self._terms)

    def newton_polytope(self) -> Polytope:
        if not self._terms:
            raise ValueError("the zero polynomial has no Newton polytope")
        return convex_hull(list(self._terms))

    # -- arithmetic -------------------------------------------------------------
    def _check(self, other: "LaurentPolynomial") -> None:
        if self.vars != other.vars:
            raise DimensionError(f"variable mismatch: {self.vars} vs {other.vars}")

    def _lift(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            self._check(other)
            return other
        return LaurentPolynomial.constant(self.vars, other)

    def __add__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(self) + other
        other = self._lift(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPolynomial._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw(self.vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(self) - other
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(self) * other
        if not isinstance(other, LaurentPolynomial):
            c = _coef(other)
            if not c:
                return LaurentPolynomial.zero(self.vars)
            return LaurentPolynomial._raw(self.vars, {e: c * v for e, v in self._terms.items()})
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial._raw(self.vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        k = int(k)
        if k < 0:
            if not self.is_monomial():
                raise SubstitutionError("negative power of a non-monomial Laurent polynomial")
            (e, c), = self._terms.items()
            return LaurentPolynomial._raw(self.vars, {tuple(k * x for x in e): c ** k})
        result = LaurentPolynomial.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (LaurentPolynomial, RationalFunction)):
            return RationalFunction(self) / other
        return self * (Fraction(1) / _coef(other))

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self.vars == other.vars and self._terms == other._terms
        if isinstance(other, RationalFunction):
            return other == self
        try:
            c = _coef(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self._terms == ({(0,) * self.nvars: c} if c else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self._terms.items())))
        return self._hash

    def leading_term(self):
        e = max(self._terms)
        return e, self._terms[e]

    def divide_exact(self, other: "LaurentPolynomial") -> "LaurentPolynomial | None":
        """The Laurent polynomial q with q * other == self, or None if there is none."""
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPolynomial.zero(self.vars)
        n = self.nvars
        # Newton polytopes add, so exponent ranges subtract coordinatewise
        lo = [self.min_exponent(i) - other.min_exponent(i) for i in range(n)]
        hi = [self.max_exponent(i) - other.max_exponent(i) for i in range(n)]
        if any(a > b for a, b in zip(lo, hi)):
            return None
        eq, cq = other.leading_term()
        rem = dict(self._terms)
        quot: dict[tuple[int, ...], Fraction] = {}
        while rem:
            er = max(rem)
            e = tuple(a - b for a, b in zip(er, eq))
            if any(x < a or x > b for x, a, b in zip(e, lo, hi)):
                return None
            c = rem[er] / cq
            quot[e] = c
            for eo, co in other._terms.items():
                t = tuple(a + b for a, b in zip(e, eo))
                s = rem.get(t, 0) - c * co
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        return LaurentPolynomial._raw(self.vars, quot)

    # -- calculus and evaluation ---------------------------------------------
    def derivative(self, i: int) -> "LaurentPolynomial":
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return LaurentPolynomial._raw(self.vars, out)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise DimensionError("point has the wrong number of coordinates")
        pt = [Fraction(p) for p in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            t = c
            for x, k in zip(pt, e):
                if k:
                    if not x and k < 0:
                        raise ZeroDivisionError("evaluation on a pole")
                    t *= x ** k
            total += t
        return total

    def substitute(self, i: int, q: "LaurentPolynomial") -> "LaurentPolynomial":
        """Replace variable i by q (a polynomial in the same variables)."""
        q = self._lift(q)
        if not q.is_monomial() and any(e[i] < 0 for e in self._terms):
            raise SubstitutionError(
                f"{self.vars[i]} occurs with a negative exponent and the substituend is not a monomial")
        images = LaurentPolynomial.gens(self.vars)
        images[i] = q
        return self.compose(images, self.vars)

    def compose(self, images: Sequence["LaurentPolynomial"], variables: Sequence[str]) -> "LaurentPolynomial":
        """Simultaneously substitute variable j by images[j] (polynomials in ``variables``)."""
        if len(images) != self.nvars:
            raise DimensionError("need one image per variable")
        variables = tuple(variables)
        for j, img in enumerate(images):
            if img.vars != variables:
                raise DimensionError("images must share the target variables")
        cache: dict[tuple[int, int], LaurentPolynomial] = {}

        def power(j: int, k: int) -> LaurentPolynomial:
            key = (j, k)
            if key not in cache:
                if k < 0 and not images[j].is_monomial():
                    raise SubstitutionError(
                        f"{self.vars[j]} occurs with a negative exponent and its image is not a monomial")
                if k > 1 and (j, k - 1) in cache:
                    cache[key] = cache[(j, k - 1)] * images[j]
                else:
                    cache[key] = images[j] ** k
            return cache[key]

        total: dict[tuple[int, ...], Fraction] = {}
        for e, c in sorted(self._terms.items()):
            t = LaurentPolynomial.constant(variables, c)
            for j, k in enumerate(e):
                if k:
                    t = t * power(j, k)
            for te, tc in t._terms.items():
                s = total.get(te, 0) + tc
                if s:
                    total[te] = s
                else:
                    total.pop(te, None)
        return LaurentPolynomial._raw(variables, total)

    def rename(self, variables: Sequence[str]) -> "LaurentPolynomial":
        if len(variables) != self.nvars:
            raise DimensionError("renaming must keep the number of variables")
        return LaurentPolynomial._raw(tuple(variables), dict(self._terms))

    def embed(self, variables: Sequence[str]) -> "LaurentPolynomial":
        """View this polynomial inside a ring with more (or permuted) variables."""
        variables = tuple(variables)
        pos = []
        for v in self.vars:
            if v not in variables:
                raise DimensionError(f"variable {v} missing from target ring")
            pos.append(variables.index(v))
        out = {}
        for e, c in self._terms.items():
            ne = [0] * len(variables)
            for p, k in zip(pos, e):
                ne[p] = k
            out[tuple(ne)] = c
        return LaurentPolynomial._raw(variables, out)

    def drop(self, keep: Sequence[int]) -> "LaurentPolynomial":
        """Restrict to the variables in ``keep``; the others must not occur."""
        keep = list(keep)
        gone = [i for i in range(self.nvars) if i not in keep]
        out = {}
        for e, c in self._terms.items():
            if any(e[i] for i in gone):
                raise DimensionError("dropped variable still occurs")
            out[tuple(e[i] for i in keep)] = c
        return LaurentPolynomial._raw(tuple(self.vars[i] for i in keep), out)

    def monomial_change(self, matrix: Sequence[Sequence[int]], variables: Sequence[str]) -> "LaurentPolynomial":
        """Apply the exponent map e -> e @ matrix (rows indexed by old variables)."""
        out: dict = {}
        m = len(matrix[0]) if matrix else 0
        for e, c in self._terms.items():
            ne = tuple(sum(e[i] * matrix[i][j] for i in range(self.nvars)) for j in range(m))
            out[ne] = out.get(ne, 0) + c
        return LaurentPolynomial(variables, out)

    # -- output -----------------------------------------------------------------
    def _monomial_str(self, e) -> str:
        parts = []
        for v, k in zip(self.vars, e):
            if k == 1:
                parts.append(v)
            elif k:
                parts.append(f"{v}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for e, c in self.items():
            mono = self._monomial_str(e)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not out:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(("+ " if c > 0 else "- ") + body)
        return " ".join(out)

    def __repr__(self):
        return f"LaurentPolynomial({self.vars}, {str(self)!r})"

    def to_dict(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [{"exp": list(e), "coef": _frac_str(c)} for e, c in self.items()],
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "LaurentPolynomial":
        return cls(d["vars"], {tuple(t["exp"]): Fraction(t["coef"]) for t in d["terms"]})


def product(factors: Iterable[LaurentPolynomial], variables: Sequence[str]) -> LaurentPolynomial:
    out = LaurentPolynomial.constant(variables, 1)
    for f in factors:
        out = out * f
    return out


class RationalFunction:
    """num / den with Laurent numerator and denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPolynomial, den: LaurentPolynomial | None = None):
        if den is None:
            den = LaurentPolynomial.constant(num.vars, 1)
        num._check(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        # absorb monomial denominators
        if den.is_monomial():
            num = num * den ** -1
            den = LaurentPolynomial.constant(num.vars, 1)
        self.num, self.den = num, den

    @property
    def vars(self):
        return self.num.vars

    def _lift(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, LaurentPolynomial):
            return RationalFunction(other)
        return RationalFunction(LaurentPolynomial.constant(self.vars, other))

    def __add__(self, other):
        o = self._lift(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den).reduce()
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den).reduce()

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        return RationalFunction(self.num * o.num, self.den * o.den).reduce()

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num).reduce()

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k: int):
        k = int(k)
        if k >= 0:
            return RationalFunction(self.num ** k, self.den ** k)
        return RationalFunction(self.den ** -k, self.num ** -k)

    def reduce(self) -> "RationalFunction":
        """Cancel the denominator when it divides the numerator exactly."""
        if self.den.is_constant():
            return RationalFunction(self.num * (1 / self.den.coefficient((0,) * len(self.vars))))
        q = self.num.divide_exact(self.den)
        if q is not None:
            return RationalFunction(q)
        return self

    def as_laurent(self) -> LaurentPolynomial | None:
        r = self.reduce()
        if r.den.is_constant():
            return r.num * (1 / r.den.coefficient((0,) * len(self.vars)))
        return None

    def is_laurent(self) -> bool:
        return self.as_laurent() is not None

    def evaluate(self, point: Sequence) -> Fraction:
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("evaluation on a pole")
        return self.num.evaluate(point) / d

    def derivative(self, i: int) -> "RationalFunction":
        n, d = self.num, self.den
        return RationalFunction(n.derivative(i) * d - n * d.derivative(i), d * d).reduce()

    def __eq__(self, other):
        if isinstance(other, (RationalFunction, LaurentPolynomial)):
            o = self._lift(other)
            return self.num * o.den == o.num * self.den
        return NotImplemented

    def __hash__(self):
        return hash(self.vars)

    def __str__(self):
        if self.den.is_constant():
            return str(self.as_laurent())
        return f"({self.num}) / ({self.den})"

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"
