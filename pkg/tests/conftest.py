import time

import pytest

from toricdegen.corpus import generate, instance_report
from toricdegen.nef import partition_from_rays
from toricdegen.polytope import convex_hull, face_fan

AC_IDS = [f"AC{i}" for i in range(1, 8)]
_ac_results: dict[str, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "ac(id): test backs an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marks = [m.args[0] for m in item.iter_markers("ac")]
    if not marks:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        for ac in marks:
            _ac_results.setdefault(ac, []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _ac_results:
        return
    terminalreporter.section("acceptance")
    for ac in AC_IDS:
        res = _ac_results.get(ac)
        if res is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(res) else "FAIL"
        terminalreporter.write_line(f"{ac} {status}")


def fan_of(points):
    return face_fan(convex_hull(points))


def partition(points, parts):
    return partition_from_rays(fan_of(points), parts)


P2 = [(1, 0), (0, 1), (-1, -1)]
P3 = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]


@pytest.fixture
def conic():
    return partition(P2, [[(1, 0), (0, 1)], [(-1, -1)]])


@pytest.fixture
def p2_toric():
    return partition(P2, [P2])


@pytest.fixture
def quadric():
    return partition(P3, [[(1, 0, 0), (0, 1, 0)], [(0, 0, 1), (-1, -1, -1)]])


_timings: dict[str, float] = {}


@pytest.fixture(scope="session")
def timings():
    """Wall-clock seconds spent building the session fixtures."""
    return _timings


@pytest.fixture(scope="session")
def corpus():
    t = time.perf_counter()
    out = generate(200, seed=0, bound=4)
    _timings["corpus"] = time.perf_counter() - t
    return out


@pytest.fixture(scope="session")
def corpus_reports(corpus):
    t = time.perf_counter()
    out = [instance_report(i) for i in corpus]
    _timings["corpus_reports"] = time.perf_counter() - t
    return out
