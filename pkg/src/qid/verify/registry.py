"""Identity descriptors, parameter schemas and the registry."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..errors import ParamOutOfSchema, UnknownIdentity
from ..primitives import Alpha

SERIES = "series"
POINTS = "points"


@dataclass(frozen=True)
class Param:
    """One schema entry: integer in ``[lo, hi]``, an alpha mode, or a fixed choice."""

    kind: str
    default: object
    lo: int | None = None
    hi: int | None = None
    choices: tuple = ()

    def coerce(self, name: str, value):
        if self.kind == "int":
            if isinstance(value, bool) or not isinstance(value, int):
                try:
                    value = int(value)
                except (TypeError, ValueError):
                    raise ParamOutOfSchema(f"{name} must be an integer, got {value!r}") from None
            if (self.lo is not None and value < self.lo) or (self.hi is not None and value > self.hi):
                raise ParamOutOfSchema(f"{name}={value} outside [{self.lo}, {self.hi}]")
            return value
        if self.kind == "alpha":
            try:
                a = value if isinstance(value, Alpha) else Alpha.parse(str(value))
            except ValueError as exc:
                raise ParamOutOfSchema(str(exc)) from None
            if self.choices and a.kind not in self.choices:
                raise ParamOutOfSchema(f"{name} mode {a.kind} not supported here")
            return str(a)
        if self.kind == "choice":
            if value not in self.choices:
                raise ParamOutOfSchema(f"{name} must be one of {self.choices}")
            return value
        raise AssertionError(self.kind)


def int_param(default: int, lo: int | None = None, hi: int | None = None) -> Param:
    return Param("int", default, lo, hi)


def alpha_param(default: str = "sym", kinds=("int", "sym", "inf")) -> Param:
    return Param("alpha", default, choices=tuple(kinds))


@dataclass(frozen=True)
class Check:
    """One equality ``lhs == rhs`` between series, polynomials or values."""

    label: str
    lhs: object
    rhs: object


@dataclass(frozen=True)
class IdentityDescriptor:
    id: str
    statement: str
    modes: tuple[str, ...]
    grading: tuple[str, ...]
    params: dict[str, Param]
    build: Callable
    grid: Callable
    laurent: frozenset = frozenset({"A"})
    point_vars: tuple[str, ...] = ()
    truncation_param: str | None = None
    notes: str = ""
    extra: dict = field(default_factory=dict)

    def resolve(self, params: dict | None) -> dict:
        params = dict(params or {})
        unknown = set(params) - set(self.params)
        if unknown:
            raise ParamOutOfSchema(f"{self.id} has no parameters {sorted(unknown)}")
        out = {}
        for name, spec in self.params.items():
            out[name] = spec.coerce(name, params.get(name, spec.default))
        return out

    def truncation(self, params: dict) -> int | None:
        return params.get(self.truncation_param) if self.truncation_param else None


REGISTRY: dict[str, IdentityDescriptor] = {}


def register(desc: IdentityDescriptor) -> IdentityDescriptor:
    if desc.id in REGISTRY:
        raise ValueError(f"identity {desc.id} registered twice")
    REGISTRY[desc.id] = desc
    return desc


def get(identity_id: str) -> IdentityDescriptor:
    from . import identities  # noqa: F401  (populates the registry)

    try:
        return REGISTRY[identity_id]
    except KeyError:
        raise UnknownIdentity(f"unknown identity {identity_id!r}") from None


def all_ids() -> list[str]:
    from . import identities  # noqa: F401

    return sorted(REGISTRY)
