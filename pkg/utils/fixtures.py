"""Named fixture trigraphs for tests, recipes and demonstration"""

import re
from typing import Callable, Dict

from core.errors import PreconditionViolation
from core.trigraph import Trigraph


def path(n: int) -> Trigraph:
    """P_n: 0 - 1 - ... - (n-1)"""
    return Trigraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Trigraph:
    """C_n on 0..n-1 in cyclic order"""
    if n < 3:
        raise PreconditionViolation(f"a cycle needs at least 3 vertices, got {n}")
    return Trigraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def clique(t: int) -> Trigraph:
    return Trigraph.from_edges(t, [(u, v) for u in range(t) for v in range(u + 1, t)])


def stable(t: int) -> Trigraph:
    return Trigraph.empty(t)


def claw() -> Trigraph:
    """Centre 0 with leaves 1, 2, 3"""
    return Trigraph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


def prism() -> Trigraph:
    """Triangles 0-1-2 and 3-4-5 matched by 0-3, 1-4, 2-5"""
    return Trigraph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def switchable_pair() -> Trigraph:
    """Two vertices joined by a switchable pair"""
    return Trigraph.from_edges(2, [], switchable=[(0, 1)])


NAMED_FIXTURES: Dict[str, Callable[[], Trigraph]] = {
    "claw": claw,
    "prism": prism,
    "pair": switchable_pair,
}

# P4, C6, K5, S3, ...
FAMILY_FIXTURES: Dict[str, Callable[[int], Trigraph]] = {
    "P": path,
    "C": cycle,
    "K": clique,
    "S": stable,
}

_FAMILY = re.compile(r"^([PCKS])(\d+)$")


def fixture(name: str) -> Trigraph:
    """Look a fixture up by name: claw, prism, pair, or P<n>, C<n>, K<t>, S<t>"""
    if name in NAMED_FIXTURES:
        return NAMED_FIXTURES[name]()
    match = _FAMILY.match(name)
    if match is None:
        raise PreconditionViolation(f"unknown fixture {name!r}")
    family, n = match.groups()
    return FAMILY_FIXTURES[family](int(n))


def is_fixture_name(name: str) -> bool:
    return name in NAMED_FIXTURES or _FAMILY.match(name) is not None
