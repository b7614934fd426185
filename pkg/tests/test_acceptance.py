"""Acceptance gate: one check per criterion, each printing a single pass/fail line.

Run under pytest (lines are repeated in the terminal summary) or directly:
``python tests/test_acceptance.py``.
"""
import sys

import pytest

from vankallen.suite import CRITERIA

# comparisons are exact; the bound-exceeded rate (at most 1%) is enforced inside the crystal check
RUNTIME_LIMITS = {"eqb": 60.0, "macdonald": 600.0}

ORDER = [
    (1, "eqb"),
    (2, "reflection-order"),
    (3, "macdonald"),
    (4, "truncation"),
    (5, "partition"),
    (6, "operators"),
    (7, "crystal"),
    (8, "degree"),
    (9, "a1"),
]

LINES = []


def evaluate(number, key):
    rep = CRITERIA[key]()
    limit = RUNTIME_LIMITS.get(key)
    if limit is not None and rep.seconds > limit:
        rep.fail(f"runtime {rep.seconds:.1f}s over the {limit:.0f}s target")
    line = f"criterion {number} {rep.line()}"
    LINES.append(line)
    print(line)
    return rep


@pytest.mark.parametrize("number,key", ORDER, ids=[k for _, k in ORDER])
def test_criterion(number, key):
    rep = evaluate(number, key)
    assert rep.checked > 0
    assert rep.ok, "\n".join(rep.failures[:20])


def main():
    failed = 0
    for number, key in ORDER:
        failed += not evaluate(number, key).ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
