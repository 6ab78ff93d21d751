from __future__ import annotations

import os
from pathlib import Path

from hypothesis import HealthCheck, settings

from cmotives.algebra.parse import parse_expr
from cmotives.motive import descend_poly_x

settings.register_profile("default", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = Path(__file__).parent / "data"


def qel(M, text):
    """An element of Q = F_q(t)."""
    R = M.rings
    return R.descend(R.element(text))


def lpoly(M, text):
    """A polynomial in x over L(t)."""
    R = M.rings
    symbols = {"x": R.KLx.gen, "t": R.KLx(R.KL.gen)}
    if R.L.degree > 1:
        symbols["g"] = R.KLx(R.KL(R.L.gen))
    return parse_expr(text, symbols, lambda n: R.KLx(R.KL(n)))


def qpoly(M, text):
    """A polynomial in x over F_q(t)."""
    return descend_poly_x(M, lpoly(M, text))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
