import pytest

from cswaug import data_path
from cswaug.corpus import BiSentence, read_tsv

EXAMPLE_SRC = "انا عايز اجرب اكل ايطالي ."
EXAMPLE_TGT = "i want to try Italian food ."
EXAMPLE_LINKS = "0-0 1-1 1-2 2-3 3-5 4-4 5-6"
EXAMPLE_TREE = "(S (NP (PRP i)) (VP (VBP want) (S (VP (TO to) (VP (VB try) (NP (JJ Italian) (NN food)))))) (. .))"


@pytest.fixture
def italian():
    return BiSentence("italian", EXAMPLE_SRC, EXAMPLE_TGT, EXAMPLE_LINKS, EXAMPLE_TREE)


@pytest.fixture
def toy():
    return read_tsv(data_path("toy.tsv"))


# ---------------------------------------------------------------- acceptance

CRITERIA = {
    1: "worked-example golden strings",
    2: "no closed-class-only MLF insertions",
    3: "metric oracles",
    4: "segment extraction and EC oracles",
    5: "SPF sampling",
    6: "BT selection monotonicity",
    7: "determinism across --jobs and reruns",
    8: "agreement statistics",
    9: "corpus construction",
}
_criterion_results: dict[int, bool] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (report.when != "call" and report.passed):
        return
    n = marker.args[0]
    _criterion_results[n] = _criterion_results.get(n, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _criterion_results:
        return
    terminalreporter.section("acceptance criteria")
    for n, desc in CRITERIA.items():
        if n in _criterion_results:
            status = "PASS" if _criterion_results[n] else "FAIL"
            terminalreporter.write_line(f"criterion {n}: {status}  {desc}")
    terminalreporter.write_line("criterion 10: documentation only (full-scale tables, see README)")
