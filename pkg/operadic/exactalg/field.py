"""This module defines the scalar fields every computation runs over.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Union

from sympy import Rational, isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain

from operadic.exceptions import CharacteristicError, FieldError

ScalarLike = Union[int, str, Fraction, Rational, Any]


class Field:
    """Exact scalar field: the rationals or a prime field.

    Scalars are the elements of the underlying sympy domain, so that they can be
    stored directly in sparse domain matrices.
    """

    __slots__ = ("_characteristic", "_domain")

    def __init__(self, characteristic: int = 0):
        """
        :param characteristic: 0 for the rationals, a prime p for the field with p
            elements.
        :type characteristic: int
        """
        if characteristic < 0:
            raise FieldError(f"Negative characteristic {characteristic}.")
        if characteristic and not isprime(characteristic):
            raise CharacteristicError(f"{characteristic} is not a prime.")
        self._characteristic = characteristic
        self._domain: Domain = GF(characteristic) if characteristic else QQ

    @staticmethod
    def from_string(spec: str) -> Field:
        """Parses "Q" or "F<p>" (also "Fp:<p>" and "GF(<p>)").

        :param spec: The field specification.
        :type spec: str
        :return: The field.
        :rtype: Field
        """
        text = spec.strip().upper().replace(" ", "")
        if text in ("Q", "QQ"):
            return Field(0)
        for prefix in ("FP:", "GF(", "F"):
            if text.startswith(prefix):
                digits = text[len(prefix) :].rstrip(")")
                if digits.isdigit():
                    return Field(int(digits))
        raise FieldError(f"Unknown field specification {spec!r}.")

    @property
    def characteristic(self) -> int:
        return self._characteristic

    @property
    def domain(self) -> Domain:
        """The sympy domain scalars live in."""
        return self._domain

    @property
    def name(self) -> str:
        return f"F{self._characteristic}" if self._characteristic else "Q"

    @property
    def one(self) -> Any:
        return self._domain.one

    @property
    def zero(self) -> Any:
        return self._domain.zero

    def __call__(self, value: ScalarLike) -> Any:
        """Converts an integer, a fraction or a string like "-3/4" to a scalar."""
        if isinstance(value, str):
            value = Rational(value.strip())
        if isinstance(value, Fraction):
            value = Rational(value.numerator, value.denominator)
        if isinstance(value, Rational) and not isinstance(value, int):
            numerator = self._domain.convert(int(value.p))
            denominator = self._domain.convert(int(value.q))
            if not denominator:
                raise ZeroDivisionError(f"{value} has no image in {self.name}")
            return numerator / denominator
        if isinstance(value, int):
            return self._domain.convert(value)
        return self._domain.convert(value)

    def sign(self, exponent: int) -> Any:
        """Returns (-1) ** exponent as a scalar."""
        return -self._domain.one if exponent % 2 else self._domain.one

    def check_arity(self, n: int) -> None:
        """Rejects the field when |Σ_n| is not invertible in it.

        :param n: The arity whose symmetric group is used.
        :type n: int
        :raises CharacteristicError: If 0 < p <= n.
        """
        if self._characteristic and self._characteristic <= n:
            raise CharacteristicError(
                f"Characteristic {self._characteristic} divides {n}!; "
                f"choose a prime larger than the maximum arity."
            )

    def to_text(self, value: Any) -> str:
        """Human readable form of a scalar, used in reports."""
        return str(self._domain.to_sympy(value))

    def to_python(self, value: Any) -> Union[int, str]:
        """JSON friendly form of a scalar: an int when integral, else "p/q"."""
        as_sympy = self._domain.to_sympy(value)
        if as_sympy.is_Integer:
            return int(as_sympy)
        return str(as_sympy)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Field) and other._characteristic == self._characteristic
        )

    def __hash__(self) -> int:
        return hash(("Field", self._characteristic))

    def __repr__(self) -> str:
        return f"Field({self.name})"

    def __str__(self) -> str:
        return f"{self.name} (field) object"


Rationals = Field(0)
"""The field of rational numbers, the default scalar field."""
