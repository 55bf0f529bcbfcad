import sys
from pathlib import Path

import hypothesis
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from swsumm.corpus import Concept, build_document  # noqa: E402

hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile("ci")

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures():
    return FIXTURES


@st.composite
def documents(draw, max_sentences=20, max_concepts=10, max_paragraphs=5):
    vocab = [f"C{i}" for i in range(draw(st.integers(1, max_concepts)))]
    sizes = draw(st.lists(st.integers(1, 4), min_size=1, max_size=max_paragraphs))
    paragraphs = []
    total = 0
    for size in sizes:
        size = min(size, max_sentences - total)
        if size <= 0:
            break
        para = []
        for i in range(size):
            ids = draw(st.sets(st.sampled_from(vocab)))
            para.append((f"sentence {total + i}", [Concept(c) for c in sorted(ids)]))
        total += size
        paragraphs.append(para)
    return build_document("hyp", paragraphs)


# -- acceptance reporting ------------------------------------------------------

_acceptance = {}


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        for key, value in report.user_properties:
            if key == "acceptance":
                _acceptance[value] = report.outcome


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    marker = item.get_closest_marker("acceptance")
    if marker:
        item.user_properties.append(("acceptance", f"{marker.args[0]:>2}. {marker.args[1]}"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance, key=lambda s: int(s.split(".")[0])):
        status = {"passed": "PASS", "skipped": "SKIP"}.get(_acceptance[name], "FAIL")
        terminalreporter.write_line(f"[{status}] {name}")
