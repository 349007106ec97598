from __future__ import annotations

import functools
import itertools
import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).resolve().parent))

from ribbonalg.category import FIXTURES, fixture_path, load_category_file  # noqa: E402
from ribbonalg.frobenius import enumerate_frobenius, trivial_algebra  # noqa: E402

settings.register_profile(
    "repo",
    derandomize=True,
    max_examples=int(os.environ.get("RIBBONALG_EXAMPLES", "40")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

MODULAR = ("triv", "z2-semion", "z4", "fib", "ising")
POINTED = ("triv", "z2-semion", "z2-fermion", "z4")


@functools.lru_cache(maxsize=None)
def cat(name: str):
    return load_category_file(fixture_path(name))


@functools.lru_cache(maxsize=None)
def algebras(name: str) -> tuple:
    """Every enumerated ssFa with Hom(1, A) one-dimensional on multiplicity-free carriers."""
    C = cat(name)
    out = [trivial_algebra(C)]
    rest = C.names[1:]
    for r in range(1, len(rest) + 1):
        for sub in itertools.combinations(rest, r):
            out.extend(enumerate_frobenius(C, [C.names[0], *sub]))
    return tuple(out)


def algebra(name: str, describe: str):
    return next(A for A in algebras(name) if A.describe() == describe)


def fixture_algebra_params():
    return [(n, i) for n in FIXTURES for i in range(len(algebras(n)))]


@pytest.fixture(params=FIXTURES)
def fixture_name(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, title, dt = results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({dt:.1f} s)")
