import pytest

from proximesh.geometry import Point2
from proximesh.mesh import SiteSet, triangulate

P = Point2


@pytest.fixture(scope="session")
def fan_mesh():
    """Three triangles fanning around the interior site (2,1)."""
    return triangulate(SiteSet([P(0, 0), P(4, 0), P(2, 3), P(2, 1)]))


@pytest.fixture(scope="session")
def single_triangle_mesh():
    return triangulate(SiteSet([P(0, 0), P(1, 0), P(0, 1)]))


@pytest.fixture(scope="session")
def square_mesh():
    """Four cocircular sites; the diagonal is picked by the tie-break."""
    return triangulate(SiteSet([P(0, 0), P(1, 0), P(1, 1), P(0, 1)]))


@pytest.fixture(scope="session")
def wheel_mesh():
    """Four triangles sharing only the hub vertex 0."""
    return triangulate(SiteSet([P(0, 0), P(2, 0), P(0, 2), P(-2, 0), P(0, -2)]))


@pytest.fixture(scope="session")
def grid_mesh():
    """4x4 integer grid, 18 triangles."""
    return triangulate(SiteSet([P(i, j) for j in range(4) for i in range(4)]))


@pytest.fixture(scope="session")
def grid5_mesh():
    """5x5 integer grid; vertex 12 is deep interior (its star avoids the
    hull), which hole/pinch constructions need."""
    return triangulate(SiteSet([P(i, j) for j in range(5) for i in range(5)]))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of a run."""
    lines = []
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            name = nodeid.split("::")[-1]
            verdict = "PASS" if status == "passed" else "FAIL"
            lines.append(f"{verdict}  {name}")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: s.split()[-1]):
            terminalreporter.write_line(line)
