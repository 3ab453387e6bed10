"""Ring and module descriptor grammar, shared between the library and the CLI.

Ring:    "Z" (the integers), "Z<n>" (a residue ring), "Z<n>*Z<m>" (a product).
Module:  "Z<k>" cyclic summands, "x" joins summands inside one ring factor,
         "|" separates factors of a product ring.  Whitespace is insignificant.
"""

from __future__ import annotations

import re

from .errors import UsageError
from .modules import DEFAULT_ORDER_CAP, FiniteModule, build_module
from .rings import Ring

_CYCLIC = re.compile(r"^[Zz](\d+)$")


def parse_ring(text: str) -> Ring:
    compact = text.replace(" ", "")
    if not compact:
        raise UsageError("empty ring descriptor")
    factors = compact.split("*")
    if len(factors) == 1 and factors[0] in ("Z", "z"):
        return Ring.integers()
    moduli = []
    for token in factors:
        m = _CYCLIC.match(token)
        if not m:
            raise UsageError(
                f"bad ring descriptor {text!r}: expected Z, Z<n>, or Z<n>*Z<m>"
            )
        moduli.append(int(m.group(1)))
    if len(moduli) == 1:
        return Ring.residue(moduli[0])
    return Ring.product(*moduli)


def parse_module(
    text: str, ring: Ring | None = None, order_cap: int = DEFAULT_ORDER_CAP
) -> FiniteModule:
    compact = text.replace(" ", "")
    if not compact:
        raise UsageError("empty module descriptor")
    blocks = []
    for block_text in compact.split("|"):
        orders = []
        for token in block_text.split("x"):
            m = _CYCLIC.match(token)
            if not m:
                raise UsageError(
                    f"bad module descriptor {text!r}: summands must look like Z<k>"
                )
            orders.append(int(m.group(1)))
        blocks.append(orders)
    if ring is None:
        if len(blocks) != 1:
            raise UsageError(
                "a multi-block module descriptor needs an explicit product ring"
            )
        ring = Ring.integers()
    return build_module(ring, blocks, order_cap)
