import numpy as np
import pytest

from lingopt.codebook import load_codebook
from lingopt.fuzzy import IT2Word, Trapezoid


@pytest.fixture(scope="session")
def hma():
    return load_codebook("paper-hma")


@pytest.fixture(scope="session")
def ia():
    return load_codebook("paper-ia")


def random_trapezoid(rng: np.random.Generator, lo=0.0, hi=10.0, h=None) -> Trapezoid:
    a, b, c, d = np.sort(rng.uniform(lo, hi, 4))
    return Trapezoid(a, b, c, d, h if h is not None else rng.uniform(0.2, 1.0))


def random_word(rng: np.random.Generator, lo=0.0, hi=10.0) -> IT2Word:
    """Random valid IT2 word: LMF drawn inside the UMF by construction."""
    a, b, c, d = np.sort(rng.uniform(lo, hi, 4))
    m = 0.5 * (b + c)
    lmf = Trapezoid(
        rng.uniform(a, b),
        rng.uniform(b, m),
        rng.uniform(m, c),
        rng.uniform(c, d),
        rng.uniform(0.3, 1.0),
    )
    w = IT2Word("w", Trapezoid(a, b, c, d, 1.0), lmf)
    w.validate()
    return w


def assert_report_matches(expected: str, actual: str, num_tol: float = 0.05):
    """Token-by-token comparison: numeric fields within num_tol, text exact."""
    exp_lines = expected.strip().splitlines()
    act_lines = actual.strip().splitlines()
    assert len(exp_lines) == len(act_lines), (
        f"line count differs: expected {len(exp_lines)}, got {len(act_lines)}\n{actual}"
    )
    for ln, (el, al) in enumerate(zip(exp_lines, act_lines), 1):
        etoks, atoks = el.split(), al.split()
        assert len(etoks) == len(atoks), f"line {ln}: {el!r} vs {al!r}"
        for et, at in zip(etoks, atoks):
            try:
                ev, av = float(et), float(at)
            except ValueError:
                assert et == at, f"line {ln}: text field {at!r} != expected {et!r}"
            else:
                assert abs(ev - av) <= num_tol, (
                    f"line {ln}: numeric field {av} differs from expected {ev} "
                    f"by more than {num_tol}"
                )
