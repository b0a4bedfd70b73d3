from __future__ import annotations

import pytest

from fsig.characters import character_table_dixon
from fsig.groups import builtin_family

# (family name, params) for the builtin groups exercised across the suite
FAMILY_SPECS = [
    ("cyclic_weights", {"n": 2, "weights": [1, 1]}),
    ("cyclic_weights", {"n": 3, "weights": [1, 2]}),
    ("cyclic_weights", {"n": 5, "weights": [1, 4]}),
    ("cyclic_weights", {"n": 7, "weights": [1, 6]}),
    ("binary_dihedral", {"n": 2}),
    ("binary_dihedral", {"n": 3}),
    ("binary_tetrahedral", {}),
]

_cache: dict = {}


def build(name: str, **params):
    key = (name, tuple(sorted((k, tuple(v) if isinstance(v, list) else v) for k, v in params.items())))
    if key not in _cache:
        group = builtin_family(name, **params).build()
        _cache[key] = (group, character_table_dixon(group))
    return _cache[key]


@pytest.fixture(scope="session")
def a1():
    return build("cyclic_weights", n=2, weights=[1, 1])


@pytest.fixture(scope="session")
def bd2():
    return build("binary_dihedral", n=2)


@pytest.fixture(scope="session")
def bt():
    return build("binary_tetrahedral")


@pytest.fixture(scope="session")
def s2():
    return build("symmetric2_reflection")


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
