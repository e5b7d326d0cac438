from __future__ import annotations

import functools

from hypothesis import HealthCheck, settings

from frobrep.cartan import named
from frobrep.frobcore import exterior_core, truncated_poly
from frobrep.triangalg import build_generalized_path_algebra, build_gls, build_path_algebra_over_core

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []  # filled by the acceptance suite


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@functools.lru_cache(maxsize=None)
def gls(name: str, scale: int = 1):
    return build_gls(named(name, scale))


@functools.lru_cache(maxsize=None)
def family(key: str):
    """Non-GLS test algebras by short name."""
    if key == "A2_dual_numbers":
        return build_path_algebra_over_core(2, [(1, 0)], truncated_poly(2))
    if key == "A3_dual_numbers":
        return build_path_algebra_over_core(3, [(1, 0), (2, 1)], truncated_poly(2))
    if key == "genpath_21":
        return build_generalized_path_algebra(2, [(1, 0)], [truncated_poly(2), truncated_poly(1)])
    if key == "A2_exterior":
        return build_path_algebra_over_core(2, [(1, 0)], exterior_core())
    if key == "kronecker":
        return build_path_algebra_over_core(2, [(1, 0), (1, 0)], truncated_poly(1))
    raise KeyError(key)


DYNKIN_GLS = [("A2", 1), ("A2", 2), ("B2", 1), ("G2", 1), ("A3", 1), ("B3", 1)]
FAMILIES = ["A2_dual_numbers", "A3_dual_numbers", "genpath_21", "A2_exterior", "kronecker"]


def all_test_algebras():
    out = [(f"{n}x{s}" if s > 1 else n, gls(n, s)) for n, s in DYNKIN_GLS]
    out.append(("Kronecker", gls("Kronecker")))
    out += [(k, family(k)) for k in FAMILIES]
    return out
