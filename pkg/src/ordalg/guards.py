"""Resource guards that turn combinatorial blow-ups into explicit errors."""

from __future__ import annotations

from dataclasses import dataclass


class GuardExceeded(RuntimeError):
    """An enumeration would exceed a configured size bound."""


@dataclass
class Guards:
    max_poset: int = 64          # user-supplied / enumerated test posets
    max_hom: int = 10**6         # |A|^|X| candidates for hom enumeration
    max_terms: int = 250_000     # term / monad carrier enumerations


GUARDS = Guards()


def configure(**kw) -> Guards:
    for k, v in kw.items():
        if v is None:
            continue
        if not hasattr(GUARDS, k):
            raise AttributeError(k)
        setattr(GUARDS, k, int(v))
    return GUARDS


def reset() -> Guards:
    for k, v in vars(Guards()).items():
        setattr(GUARDS, k, v)
    return GUARDS


def check_size(what: str, n: int, bound: int) -> None:
    if n > bound:
        raise GuardExceeded(f"{what}: {n} exceeds guard {bound}")
