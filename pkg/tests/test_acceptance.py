"""The nine acceptance criteria, each run at its stated tolerance.

Every criterion prints one PASS/FAIL line (collected into the pytest
terminal summary) followed by its individual checks.  Run this file
directly to print the lines without pytest.
"""

from __future__ import annotations

import sys

import pytest

from affine_cycles import verify

CRITERIA = {
    1: ("census counts equal closed-form counts for A and P", verify.criterion_1),
    2: ("separable, cyclic, semisimple series match census fractions", verify.criterion_2),
    3: ("limits s_A, c_A exact; ss_A two ways to 1e-12", verify.criterion_3),
    4: ("Euler, unique factorization, Wall substitution, Rogers-Ramanujan", verify.criterion_4),
    5: ("class size forms, N total mass, N/M ratio", verify.criterion_5),
    6: ("Markov chain path probabilities and kernel rows", verify.criterion_6),
    7: ("sampler TV distances below 0.01", verify.criterion_7),
    8: ("fixed-space law and unipotent counts", verify.criterion_8),
    9: ("cyclic and separable convergence bounds", verify.criterion_9),
}


def evaluate(number: int) -> tuple[str, list[str], bool]:
    title, fn = CRITERIA[number]
    checks = fn()
    ok = bool(checks) and all(c.passed for c in checks)
    passed = sum(c.passed for c in checks)
    head = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({passed}/{len(checks)} checks)"
    return head, ["    " + c.line() for c in checks], ok


def evaluate_substitutes() -> tuple[str, list[str], bool]:
    checks = verify.substitutes()
    ok = all(c.passed for c in checks)
    head = f"{'PASS' if ok else 'FAIL'} substitutes: cycle index factorization and finite-n marginals ({sum(c.passed for c in checks)}/{len(checks)} checks)"
    return head, ["    " + c.line() for c in checks], ok


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, acceptance_report):
    head, lines, ok = evaluate(number)
    print(head)
    print("\n".join(lines))
    acceptance_report.append(head)
    assert ok, "\n".join([head] + lines)


def test_asymptotic_substitutes(acceptance_report):
    head, lines, ok = evaluate_substitutes()
    print(head)
    print("\n".join(lines))
    acceptance_report.append(head)
    assert ok, "\n".join([head] + lines)


if __name__ == "__main__":
    failed = False
    for n in sorted(CRITERIA):
        head, lines, ok = evaluate(n)
        print(head, *lines, sep="\n", flush=True)
        failed |= not ok
    head, lines, ok = evaluate_substitutes()
    print(head, *lines, sep="\n")
    sys.exit(1 if failed or not ok else 0)
