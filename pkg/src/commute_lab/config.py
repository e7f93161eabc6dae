"""Size caps for the explicit and brute-force code paths.

Defaults are sized for runs of a few seconds.  ``COMMUTE_LAB_CAPS`` overrides
them with a comma separated list of ``name=value`` pairs, for example
``COMMUTE_LAB_CAPS="brute_T_set=7,quadruples=20000000"``.
"""

from __future__ import annotations

import os

DEFAULT_CAPS: dict[str, int] = {
    # |supp(nu)| for explicit materialization of the product measure
    "product_measure": 12,
    # |A| for the |A|^8 pairwise oracle
    "brute_T_set": 6,
    # ordered support pairs for the pairwise measure oracle
    "brute_T_measure_pairs": 250_000,
    # quadruple (or pair-of-quadruple) space for definitional energy sums
    "quadruples": 10_000_000,
    # support size of the subset-enumerating delta oracle
    "brute_delta": 64,
    # support size for the fast delta engine (O(m^2) plane bucketing)
    "delta": 2_500,
}


class CapExceeded(ValueError):
    """Input exceeds a configured size cap."""

    def __init__(self, cap: str, limit: int, got: int):
        self.cap = cap
        self.limit = limit
        self.got = got
        super().__init__(f"cap '{cap}' exceeded: {got} > {limit}")


def _parse_env(text: str) -> dict[str, int]:
    out: dict[str, int] = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        name, sep, value = part.partition("=")
        if not sep:
            raise ValueError(f"COMMUTE_LAB_CAPS entry needs name=value: {part!r}")
        name = name.strip()
        if name not in DEFAULT_CAPS:
            raise ValueError(f"unknown cap {name!r}")
        out[name] = int(value)
    return out


def get_cap(name: str) -> int:
    env = os.environ.get("COMMUTE_LAB_CAPS")
    if env:
        overrides = _parse_env(env)
        if name in overrides:
            return overrides[name]
    return DEFAULT_CAPS[name]


def check_cap(name: str, got: int) -> None:
    limit = get_cap(name)
    if got > limit:
        raise CapExceeded(name, limit, got)
