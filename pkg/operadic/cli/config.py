"""This module contains the session configuration of the command line.
"""
from __future__ import annotations

from typing import NamedTuple, Optional, Tuple

from operadic.exactalg import Field
from operadic.exceptions import InputError


class SessionConfig(NamedTuple):
    """Session configuration object: field, truncations, degree window, output format
    and seed of the randomized checks."""

    field: str = "Q"
    max_arity: int = 4
    max_weight: int = 4
    max_level: int = 3
    window: Tuple[int, int] = (-2, 2)
    output_format: str = "text"
    seed: int = 0
    pbw_bound: Optional[int] = None

    def validate(self) -> SessionConfig:
        """
        :return: The configuration itself.
        :rtype: SessionConfig
        :raises InputError: If a bound is below 1, the window is empty or the format is
            unknown.
        :raises CharacteristicError: If the field is F_p with p not a prime or
            p <= max_arity.
        """
        for label in ("max_arity", "max_weight", "max_level"):
            if getattr(self, label) < 1:
                raise InputError(f"{label} must be at least 1, not {getattr(self, label)}.")
        if self.pbw_bound is not None and self.pbw_bound < 1:
            raise InputError(f"pbw_bound must be at least 1, not {self.pbw_bound}.")
        if self.window[0] > self.window[1]:
            raise InputError(f"Empty degree window {self.window}.")
        if self.output_format not in ("text", "json"):
            raise InputError(f"Unknown output format {self.output_format!r}.")
        self.scalar_field.check_arity(self.max_arity)
        return self

    @property
    def scalar_field(self) -> Field:
        return Field.from_string(self.field)

    def as_dict(self) -> dict:
        return {
            "field": self.scalar_field.name,
            "max_arity": self.max_arity,
            "max_weight": self.max_weight,
            "max_level": self.max_level,
            "window": list(self.window),
            "seed": self.seed,
            "pbw_bound": self.pbw_bound,
        }


DefaultSessionConfig = SessionConfig()
"""Rationals, arity 4, weights up to 4, bar levels up to 3."""

QuickSessionConfig = SessionConfig(max_arity=3, max_weight=2, max_level=2, window=(-1, 1))
"""Small truncations for smoke runs."""


def parse_window(text: str) -> Tuple[int, int]:
    """Parses "n-:n+", e.g. "-2:2".

    :raises InputError: If the text is not two integers separated by a colon.
    """
    low, sep, high = text.partition(":")
    try:
        if not sep:
            raise ValueError(text)
        return int(low), int(high)
    except ValueError:
        raise InputError(f"Window {text!r} is not of the form n-:n+.") from None
