import numpy as np
import pytest

SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)


def scaled_random(rng, dim, norm, complex_=False):
    a = rng.standard_normal((dim, dim))
    if complex_:
        a = a + 1j * rng.standard_normal((dim, dim))
    return a * (norm / np.linalg.norm(a, 2))


def nilpotent_pair():
    """E_12, E_23 in 3x3: [x,[x,y]] = [y,[x,y]] = 0 but [x,y] != 0."""
    x = np.zeros((3, 3))
    y = np.zeros((3, 3))
    x[0, 1] = 1.0
    y[1, 2] = 1.0
    return x, y


def taylor_exp_nilpotent(a, terms=10):
    """Finite sum for nilpotent a; exact once terms exceed the nilpotency index."""
    out = np.eye(a.shape[0], dtype=complex)
    p = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms):
        p = p @ a / k
        out = out + p
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# -- acceptance reporting ----------------------------------------------------

_CRITERIA: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _CRITERIA.setdefault(mark.args[0], []).append((item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        outcomes = _CRITERIA[n]
        ok = all(o == "passed" for _, o in outcomes)
        failed = [name for name, o in outcomes if o != "passed"]
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}"
        if failed:
            line += "  (" + ", ".join(failed) + ")"
        terminalreporter.write_line(line)
