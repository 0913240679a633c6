import doctest
import importlib
import pkgutil

import pytest

import wcompose

# __main__ runs the CLI on import, so it is skipped
MODULES = sorted(m.name for m in pkgutil.walk_packages(wcompose.__path__, "wcompose.") if not m.name.endswith("__main__"))


@pytest.mark.parametrize("name", MODULES)
def test_docstring_examples(name):
    mod = importlib.import_module(name)
    failed, _ = doctest.testmod(mod, optionflags=doctest.ELLIPSIS)
    assert failed == 0
