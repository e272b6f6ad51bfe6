import pytest

from adjoint_cohomology.corpus import FINITE
from adjoint_cohomology.group_engine import enumerate_finite
from adjoint_cohomology.presentation import parse_presentation

EXTRA = {
    "trivial": "< x | x >",
    "F20": "< x, y | x^5, y^4, y x y^-1 x^-2 >",
}
ALL_FINITE = {**FINITE, **EXTRA}

_cache = {}


def finite_group(name):
    if name not in _cache:
        p = parse_presentation(ALL_FINITE[name])
        _cache[name] = (p, enumerate_finite(p, 2000))
    return _cache[name]


@pytest.fixture(params=sorted(FINITE))
def corpus_group(request):
    return (request.param,) + finite_group(request.param)


@pytest.fixture
def s3():
    return finite_group("S3")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
