import pytest

ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d} {'PASS' if ok else 'FAIL'}: {title}. {detail}")


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(n, title)`` then ``.done(detail)``."""

    class Rec:
        def __call__(self, n, title):
            self.n, self.title = n, title
            ACCEPTANCE[n] = (False, title, "did not finish")
            return self

        def done(self, ok, detail=""):
            ACCEPTANCE[self.n] = (bool(ok), self.title, detail)
            print(f"criterion {self.n} {'PASS' if ok else 'FAIL'}: {self.title}. {detail}")
            assert ok, detail

    return Rec()
