"""Exact sparse polynomial arithmetic for coefficient bookkeeping.

Two layers.  `Poly` is a polynomial with rational coefficients in named
commuting symbols; it stands in for "generic coefficients" so determinantal
identities can be checked exactly rather than at random numeric samples.
`LaurentPolynomial` carries `Poly` coefficients on integer exponent vectors,
possibly negative.  Only the arithmetic needed downstream is implemented.
"""

from __future__ import annotations

from fractions import Fraction

Monomial = tuple[str, ...]  # sorted symbol names, with repetition for powers


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected a rational constant, got {type(value).__name__}")


class Poly:
    """Polynomial over the rationals in named symbols."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean: dict[Monomial, Fraction] = {}
        for mon, coeff in (terms or {}).items():
            coeff = _as_fraction(coeff)
            if coeff:
                clean[tuple(sorted(mon))] = coeff
        self._terms = clean

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def one(cls) -> "Poly":
        return cls({(): Fraction(1)})

    @classmethod
    def const(cls, value) -> "Poly":
        return cls({(): _as_fraction(value)})

    @classmethod
    def symbol(cls, name: str) -> "Poly":
        return cls({(name,): Fraction(1)})

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(mon == () for mon in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((), Fraction(0))

    def symbols(self) -> set[str]:
        return {name for mon in self._terms for name in mon}

    def degree(self) -> int:
        # degree of the zero polynomial reported as -1
        return max((len(mon) for mon in self._terms), default=-1)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        terms = dict(self._terms)
        for mon, coeff in other._terms.items():
            acc = terms.get(mon, Fraction(0)) + coeff
            if acc:
                terms[mon] = acc
            else:
                terms.pop(mon, None)
        out = Poly.__new__(Poly)
        out._terms = terms
        return out

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        out = Poly.__new__(Poly)
        out._terms = {mon: -coeff for mon, coeff in self._terms.items()}
        return out

    def __sub__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            coeff = _as_fraction(other)
            out = Poly.__new__(Poly)
            out._terms = ({} if not coeff else
                          {mon: c * coeff for mon, c in self._terms.items()})
            return out
        if not isinstance(other, Poly):
            return NotImplemented
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mon = tuple(sorted(m1 + m2))
                acc = terms.get(mon, Fraction(0)) + c1 * c2
                if acc:
                    terms[mon] = acc
                else:
                    terms.pop(mon, None)
        out = Poly.__new__(Poly)
        out._terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("negative powers are not defined for Poly")
        result = Poly.one()
        for _ in range(exponent):
            result = result * self
        return result

    def substitute(self, assignment) -> "Poly":
        """Replace symbols by rational values; unlisted symbols survive."""
        result = Poly.zero()
        for mon, coeff in self._terms.items():
            value = coeff
            rest = []
            for name in mon:
                if name in assignment:
                    value *= _as_fraction(assignment[name])
                else:
                    rest.append(name)
            result = result + Poly({tuple(rest): value})
        return result

    def evaluate(self, assignment) -> Fraction:
        missing = self.symbols() - set(assignment)
        if missing:
            raise ValueError(f"no value for symbols {sorted(missing)}")
        return self.substitute(assignment).constant_value()

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mon in sorted(self._terms):
            coeff = self._terms[mon]
            factors = []
            i = 0
            while i < len(mon):
                j = i
                while j < len(mon) and mon[j] == mon[i]:
                    j += 1
                factors.append(mon[i] if j - i == 1 else f"{mon[i]}^{j - i}")
                i = j
            body = "*".join(factors)
            if not body:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(body)
            elif coeff == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{coeff}*{body}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Poly({self})"


class LaurentPolynomial:
    """Laurent polynomial with Poly coefficients on rank-n exponent vectors."""

    __slots__ = ("rank", "_terms")

    def __init__(self, rank: int, terms=None):
        self.rank = rank
        clean: dict[tuple[int, ...], Poly] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != rank:
                raise ValueError(f"exponent {exp} has wrong rank, expected {rank}")
            if not isinstance(coeff, Poly):
                coeff = Poly.const(coeff)
            if coeff:
                clean[exp] = clean.get(exp, Poly.zero()) + coeff
        self._terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def zero(cls, rank: int) -> "LaurentPolynomial":
        return cls(rank)

    @classmethod
    def monomial(cls, exponent, coefficient=1) -> "LaurentPolynomial":
        exponent = tuple(int(e) for e in exponent)
        return cls(len(exponent), {exponent: coefficient})

    def items(self):
        return self._terms.items()

    def support(self):
        return sorted(self._terms)

    def coefficient(self, exponent) -> Poly:
        return self._terms.get(tuple(exponent), Poly.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self):
        return hash((self.rank, frozenset(self._terms)))

    def _check_rank(self, other: "LaurentPolynomial"):
        if self.rank != other.rank:
            raise ValueError("rank mismatch")

    def __add__(self, other) -> "LaurentPolynomial":
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        self._check_rank(other)
        terms = dict(self._terms)
        for exp, coeff in other._terms.items():
            acc = terms.get(exp, Poly.zero()) + coeff
            if acc:
                terms[exp] = acc
            else:
                terms.pop(exp, None)
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.rank, out._terms = self.rank, terms
        return out

    def __neg__(self) -> "LaurentPolynomial":
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.rank = self.rank
        out._terms = {exp: -coeff for exp, coeff in self._terms.items()}
        return out

    def __sub__(self, other) -> "LaurentPolynomial":
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "LaurentPolynomial":
        if isinstance(other, (int, Fraction, Poly)):
            if not isinstance(other, Poly):
                other = Poly.const(other)
            out = LaurentPolynomial.__new__(LaurentPolynomial)
            out.rank = self.rank
            out._terms = {exp: c for exp, c0 in self._terms.items()
                          if (c := c0 * other)}
            return out
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        self._check_rank(other)
        terms: dict[tuple[int, ...], Poly] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                acc = terms.get(exp)
                acc = c1 * c2 if acc is None else acc + c1 * c2
                if acc:
                    terms[exp] = acc
                else:
                    terms.pop(exp, None)
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.rank, out._terms = self.rank, terms
        return out

    __rmul__ = __mul__

    def shift(self, exponent) -> "LaurentPolynomial":
        """Multiply by the monomial with the given exponent vector."""
        exponent = tuple(int(e) for e in exponent)
        if len(exponent) != self.rank:
            raise ValueError("exponent rank mismatch")
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.rank = self.rank
        out._terms = {tuple(a + b for a, b in zip(exp, exponent)): coeff
                      for exp, coeff in self._terms.items()}
        return out

    def min_pairing(self, vector) -> int:
        """min over the support of the dot product with `vector`."""
        if not self._terms:
            raise ValueError("zero polynomial has no support")
        return min(sum(e * v for e, v in zip(exp, vector))
                   for exp in self._terms)

    def reexpress(self, coordinate_map) -> "LaurentPolynomial":
        """Apply an exponent-coordinate change; must be injective on support."""
        terms = {}
        for exp, coeff in self._terms.items():
            new = tuple(coordinate_map(exp))
            if new in terms:
                raise ValueError("coordinate map collapses support points")
            terms[new] = coeff
        rank = len(next(iter(terms))) if terms else self.rank
        return LaurentPolynomial(rank, terms)

    def substitute(self, assignment) -> "LaurentPolynomial":
        out = LaurentPolynomial.__new__(LaurentPolynomial)
        out.rank = self.rank
        out._terms = {exp: c for exp, c0 in self._terms.items()
                      if (c := c0.substitute(assignment))}
        return out

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp in sorted(self._terms):
            coeff = self._terms[exp]
            vars_part = "*".join(f"x{i}^{e}" for i, e in enumerate(exp) if e)
            coeff_part = str(coeff)
            if " " in coeff_part or coeff_part.count("*") and vars_part:
                coeff_part = f"({coeff_part})"
            parts.append(f"{coeff_part}*{vars_part}" if vars_part else coeff_part)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self})"


def determinant(rows) -> LaurentPolynomial:
    """Determinant of a square matrix of LaurentPolynomial entries.

    Expansion over column subsets: states are (#rows consumed, column set),
    which keeps the work at 2^n partial minors instead of n! products.
    """
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("matrix must be square")
    if n == 0:
        raise ValueError("empty matrix has no useful determinant here")
    rank = rows[0][0].rank
    partial = {frozenset(): LaurentPolynomial(rank, {(0,) * rank: 1})}
    for i in range(n):
        nxt: dict[frozenset, LaurentPolynomial] = {}
        for used, minor in partial.items():
            if minor.is_zero():
                continue
            below = 0
            for j in range(n):
                if j in used:
                    below += 1
                    continue
                entry = rows[i][j]
                if entry.is_zero():
                    continue
                term = minor * entry
                # parity of inversions added by assigning row i to column j
                if (len(used) - below) % 2:
                    term = -term
                key = used | {j}
                nxt[key] = nxt[key] + term if key in nxt else term
        partial = nxt
    return partial.get(frozenset(range(n)), LaurentPolynomial.zero(rank))
