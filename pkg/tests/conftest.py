import sympy
import pytest

from granville import MPoly

W = sympy.Symbol("w")

_ACCEPTANCE_KEY = pytest.StashKey[dict]()


def to_sympy(F: MPoly):
    """Expression in the context's variable symbols, with ``w`` for zeta_M."""
    syms = sympy.symbols(F.ctx.names)
    total = sympy.Integer(0)
    for e, c in F.terms.items():
        coeff = sum(sympy.Rational(a.numerator, a.denominator) * W ** k
                    for k, a in enumerate(c.coeffs))
        mono = sympy.Integer(1)
        for s, k in zip(syms, e):
            mono *= s ** k
        total += coeff * mono
    return sympy.expand(total)


def sympy_equal(F: MPoly, expr) -> bool:
    """Equality modulo the M-th cyclotomic polynomial in ``w``."""
    diff = sympy.expand(to_sympy(F) - sympy.sympify(expr))
    M = F.ctx.field.M
    if M > 1:
        diff = sympy.rem(diff, sympy.cyclotomic_poly(M, W), W)
    return sympy.expand(diff) == 0


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion for the terminal summary."""
    store = request.config.stash.setdefault(_ACCEPTANCE_KEY, {})

    def record(number, title, passed, seconds, limit):
        store[number] = (title, passed, seconds, limit)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_ACCEPTANCE_KEY, {})
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(store):
        title, passed, seconds, limit = store[number]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(
            f"criterion {number}: {verdict}  {title}  ({seconds:.2f}s, limit {limit}s)")
