import pytest

_criterion_lines = []


@pytest.fixture(scope="session")
def criterion_emit():
    """Record one summary line per acceptance criterion.

    The lines are replayed in a terminal section after the run, so they stay
    visible even though pytest captures stdout of passing tests.
    """

    def emit(num, label, ok, elapsed, budget):
        status = "PASS" if ok else "FAIL"
        line = (f"criterion {num:02d} {label}: {status} "
                f"({elapsed:.1f}s, budget {budget}s)")
        _criterion_lines.append(line)
        print(line, flush=True)

    return emit


def pytest_terminal_summary(terminalreporter):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    """Shared on-disk grid cache so repeated builds load instead of recompute."""
    return tmp_path_factory.mktemp("grids")


@pytest.fixture(scope="session")
def build_grid(cache_dir):
    from qrepl import grid_build

    def build(name, m_max, n_max):
        return grid_build(name, m_max, n_max, cache_dir=cache_dir)

    return build
