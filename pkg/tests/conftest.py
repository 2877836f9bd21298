import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

_ACCEPTANCE = {}


class _Recorder:
    def __init__(self, criterion):
        self.criterion = criterion
        self.details = []
        self.ok = True

    def check(self, ok, detail):
        ok = bool(ok)
        self.ok &= ok
        self.details.append(("ok  " if ok else "FAIL") + " " + detail)
        return ok

    def done(self):
        _ACCEPTANCE[self.criterion] = (self.ok, self.details)
        assert self.ok, "\n".join(d for d in self.details if d.startswith("FAIL"))


@pytest.fixture
def acceptance(request):
    """Record per-criterion checks; the summary is printed at the end of the run."""
    crit = request.node.get_closest_marker("criterion")
    return _Recorder(crit.args[0] if crit else request.node.name)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(_ACCEPTANCE, key=lambda c: (isinstance(c, str), c)):
        ok, details = _ACCEPTANCE[crit]
        tr.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'}")
        for d in details:
            tr.write_line(f"    {d}")
