import pytest

from ollamab.harness import default_config, run_experiment

# one line per acceptance criterion, filled in by tests/test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def record_criterion():
    def record(number: int, title: str, passed: bool, detail: str) -> bool:
        line = f"criterion {number} {'PASS' if passed else 'FAIL'}: {title} -- {detail}"
        ACCEPTANCE_LINES[number] = line
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])


@pytest.fixture(scope="session")
def default_runs(tmp_path_factory):
    """The bundled default experiment, run twice with the same seed."""
    cfg = default_config()
    first = tmp_path_factory.mktemp("default_a")
    second = tmp_path_factory.mktemp("default_b")
    report = run_experiment(cfg, output_dir=first)
    run_experiment(cfg, output_dir=second)
    return report, first, second
