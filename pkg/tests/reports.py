"""Suite reports shared between test modules, computed once per session."""

from functools import lru_cache

from hjflab.suites import run_suite

PREC = 40


@lru_cache(maxsize=None)
def report(name, prec=PREC):
    return run_suite(name, prec)
