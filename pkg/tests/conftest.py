import functools

import pytest

from starlab.gallery import from_spec, gallery_specs

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@functools.lru_cache(maxsize=None)
def instance(spec: str):
    return from_spec(spec)


@pytest.fixture(params=["zn:6", "zn:10", "bool:2", "znring:6", "zn:2*bool:2"])
def proper_small(request):
    return instance(request.param)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
