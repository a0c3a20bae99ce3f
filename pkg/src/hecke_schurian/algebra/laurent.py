"""
Sparse Laurent polynomials in v with exact integer coefficients.

Coefficients are stored in a dictionary from exponent to non-zero integer,
so arithmetic never loses precision and zero terms are never kept.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from functools import lru_cache
from typing import Union

Scalar = int
PolyLike = Union["LaurentPoly", int]


class LaurentPoly:
    """Immutable element of ℤ[v, v⁻¹]."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        collected: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exponent, coeff in items:
            total = collected.get(int(exponent), 0) + int(coeff)
            if total:
                collected[int(exponent)] = total
            else:
                collected.pop(int(exponent), None)
        self._terms = dict(sorted(collected.items()))
        self._hash: int | None = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> LaurentPoly:
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, value: int) -> LaurentPoly:
        return cls({0: value})

    @staticmethod
    def coerce(value: PolyLike) -> LaurentPoly:
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int):
            return LaurentPoly.constant(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to LaurentPoly")

    # Inspection

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    @property
    def min_degree(self) -> int | None:
        return next(iter(self._terms), None)

    @property
    def max_degree(self) -> int | None:
        return next(reversed(self._terms), None) if self._terms else None

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def in_v_nat_v(self) -> bool:
        """Non-negative coefficients, all in strictly positive degree."""
        return self.is_nonnegative() and all(k > 0 for k in self._terms)

    def at_one(self) -> int:
        """Evaluate at v = 1."""
        return sum(self._terms.values())

    def bar(self) -> LaurentPoly:
        """v ↦ v⁻¹."""
        return LaurentPoly({-k: c for k, c in self._terms.items()})

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by v^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def non_positive_part(self) -> LaurentPoly:
        return LaurentPoly({k: c for k, c in self._terms.items() if k <= 0})

    def bar_invariant_lift(self) -> LaurentPoly:
        """
        The bar-invariant m with m − self supported in positive degrees.

        Built from the terms of degree ≤ 0: c₀ + Σ_{k>0} c_{−k}(v^k + v^{−k}).
        """
        lifted: dict[int, int] = {}
        for k, c in self._terms.items():
            if k == 0:
                lifted[0] = c
            elif k < 0:
                lifted[k] = c
                lifted[-k] = c
        return LaurentPoly(lifted)

    # Arithmetic

    def __add__(self, other: PolyLike) -> LaurentPoly:
        other = LaurentPoly.coerce(other)
        merged = dict(self._terms)
        for k, c in other._terms.items():
            merged[k] = merged.get(k, 0) + c
        return LaurentPoly(merged)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: PolyLike) -> LaurentPoly:
        return self + (-LaurentPoly.coerce(other))

    def __rsub__(self, other: PolyLike) -> LaurentPoly:
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other: PolyLike) -> LaurentPoly:
        other = LaurentPoly.coerce(other)
        product: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                product[k1 + k2] = product.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly(product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> LaurentPoly:
        if exponent < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((k, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials have Laurent inverses")
            return LaurentPoly({-k * -exponent: c ** (-exponent)})
        result = ONE
        for _ in range(exponent):
            result = result * self
        return result

    def exact_divide(self, divisor: LaurentPoly) -> LaurentPoly:
        """
        Quotient of an exact division in ℤ[v, v⁻¹].

        Raises:
            ValueError: if ``divisor`` does not divide ``self`` exactly
        """
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return ZERO
        low = divisor.min_degree
        high = divisor.max_degree
        assert low is not None and high is not None
        lead = divisor.coefficient(high)
        remainder = dict(self._terms)
        quotient: dict[int, int] = {}
        while remainder:
            top = max(remainder)
            if top - high < (self.min_degree or 0) - low:
                break
            coeff, rem = divmod(remainder[top], lead)
            if rem:
                raise ValueError(f"{divisor} does not divide {self}")
            shift = top - high
            quotient[shift] = coeff
            for k, c in divisor._terms.items():
                value = remainder.get(k + shift, 0) - coeff * c
                if value:
                    remainder[k + shift] = value
                else:
                    remainder.pop(k + shift, None)
        if remainder:
            raise ValueError(f"{divisor} does not divide {self}")
        return LaurentPoly(quotient)

    # Comparison and hashing

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # Serialization

    def to_dict(self) -> dict[str, int]:
        """{"exponent": coefficient} with string keys, for JSON."""
        return {str(k): c for k, c in self._terms.items()}

    @classmethod
    def from_dict(cls, data: Mapping[str, int]) -> LaurentPoly:
        return cls({int(k): int(c) for k, c in data.items()})

    def to_text(self) -> str:
        """Space-separated "exp:coeff" pairs, used by the column cache."""
        return " ".join(f"{k}:{c}" for k, c in self._terms.items())

    @classmethod
    def from_text(cls, text: str) -> LaurentPoly:
        pairs = []
        for chunk in text.split():
            exponent, _, coeff = chunk.partition(":")
            pairs.append((int(exponent), int(coeff)))
        return cls(pairs)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for k, c in self._terms.items():
            if k == 0:
                body = str(abs(c))
            else:
                power = "v" if k == 1 else f"v^{k}"
                body = power if abs(c) == 1 else f"{abs(c)}{power}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"LaurentPoly({self._terms!r})"


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
V = LaurentPoly.monomial(1)


@lru_cache(maxsize=256)
def quantum_integer(k: int) -> LaurentPoly:
    """[k] = v^{k−1} + v^{k−3} + … + v^{1−k}."""
    return LaurentPoly({k - 1 - 2 * j: 1 for j in range(k)})


@lru_cache(maxsize=256)
def quantum_factorial(k: int) -> LaurentPoly:
    """[k]! = [1][2]…[k]."""
    result = ONE
    for j in range(2, k + 1):
        result = result * quantum_integer(j)
    return result
