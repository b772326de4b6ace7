"""Built-in example algebras for the CLI and the test corpus."""

from __future__ import annotations

import re

from .errors import UnknownExample
from .freenilp import free_nilpotent
from .liealg import Grading, LieAlgebra

EXAMPLE_NAMES = (
    "abelian{n}",
    "heisenberg3",
    "heisenberg5",
    "filiform4",
    "free{r}_{c}",
    "solvable2",
)


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {}, grading=Grading((1,) * n) if n else None)


def heisenberg3() -> LieAlgebra:
    return LieAlgebra(3, {(0, 1): {2: 1}}, grading=Grading((1, 1, 2)))


def heisenberg5() -> LieAlgebra:
    return LieAlgebra(
        5,
        {(0, 1): {4: 1}, (2, 3): {4: 1}},
        grading=Grading((1, 1, 1, 1, 2)),
    )


def filiform4() -> LieAlgebra:
    return LieAlgebra(
        4,
        {(0, 1): {2: 1}, (0, 2): {3: 1}},
        grading=Grading((1, 1, 2, 3)),
    )


def solvable2() -> LieAlgebra:
    """Two-dimensional non-nilpotent algebra [e0, e1] = e1."""
    return LieAlgebra(2, {(0, 1): {1: 1}})


_ABELIAN = re.compile(r"abelian([0-9]+)$")
_FREE = re.compile(r"free([0-9]+)_([0-9]+)$")


def example(name: str) -> LieAlgebra:
    if name == "heisenberg3":
        return heisenberg3()
    if name == "heisenberg5":
        return heisenberg5()
    if name == "filiform4":
        return filiform4()
    if name == "solvable2":
        return solvable2()
    m = _ABELIAN.match(name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise UnknownExample(f"abelian index must be positive: {name!r}")
        return abelian(n)
    m = _FREE.match(name)
    if m:
        r, c = int(m.group(1)), int(m.group(2))
        if r < 1 or c < 1:
            raise UnknownExample(f"free algebra parameters must be positive: {name!r}")
        return free_nilpotent(r, c)
    raise UnknownExample(f"unknown example {name!r}; choose from {', '.join(EXAMPLE_NAMES)}")
