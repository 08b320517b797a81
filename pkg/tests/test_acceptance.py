"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import pytest

from streamzeros import acceptance

CASES = {fn.__name__: fn for fn in acceptance.CRITERIA}


@pytest.mark.parametrize("name", list(CASES))
def test_criterion(name, capsys):
    result = CASES[name]()
    with capsys.disabled():
        print("\n" + result.line())
        for desc, ok, detail in result.checks:
            print(f"    {'ok  ' if ok else 'FAIL'} {desc}" + (f" -- {detail}" if detail else ""))
    assert result.passed, result.line()
