from minpart.numerics.constants_ledger import (alpha_threshold, bessel_j01, build_ledger, build_ledgers, c0_closed_form,
                                               c0_of_eps, check_eps, contradiction_lhs, eps_max, eps_max_golden,
                                               faber_krahn_lhs, interval_end, solve_zc0)
from minpart.functors.counting_bound import CorrectedCountingBound, PrintedCountingBound
from minpart.errors import EpsOutOfRange

import pytest
import math

J: float = 2.404825557695773 ** 2


def test_first_bessel_zero():
    assert bessel_j01() == pytest.approx(2.404825557695773, abs=1e-12)


def test_interval_and_eps_max():
    assert interval_end() == pytest.approx(1 - 4 / J)
    assert interval_end() == pytest.approx(0.30834, abs=1e-5)
    assert eps_max() == pytest.approx(0.214117, abs=1e-5)
    assert eps_max_golden() == pytest.approx(eps_max(), abs=1e-6)


def test_c0_under_both_bounds():
    printed = c0_of_eps(eps_max(), PrintedCountingBound())
    corrected = c0_of_eps(eps_max(), CorrectedCountingBound())
    assert printed == pytest.approx(0.0154, abs=2e-5)
    assert corrected == pytest.approx(0.00156, abs=2e-6)
    assert corrected / printed == pytest.approx(1 / math.pi ** 2)


@pytest.mark.parametrize("bound", [PrintedCountingBound(), CorrectedCountingBound()])
def test_three_routes_to_c0_agree(bound):
    eps: float = eps_max()
    assert c0_closed_form(bound=bound) == pytest.approx(c0_of_eps(eps, bound), abs=1e-10)
    assert solve_zc0(eps, bound) == pytest.approx(c0_of_eps(eps, bound), abs=1e-10)


def test_c0_is_maximal_at_eps_max():
    eps: float = eps_max()
    assert c0_of_eps(eps) > c0_of_eps(eps - 0.01)
    assert c0_of_eps(eps) > c0_of_eps(eps + 0.01)


def test_alpha_threshold_is_the_unit_margin():
    eps: float = 0.1
    t: float = PrintedCountingBound().t_of_eps(eps)
    assert contradiction_lhs(eps, alpha_threshold(eps, t), t) == pytest.approx(1.0)
    assert contradiction_lhs(eps, 0.0, t) == pytest.approx(J / 4 * 0.9)


def test_eps_outside_the_interval():
    with pytest.raises(EpsOutOfRange):
        check_eps(0.0)
    with pytest.raises(EpsOutOfRange):
        check_eps(0.31)
    with pytest.raises(EpsOutOfRange):
        c0_of_eps(0.5)
    check_eps(0.3)


def test_other_faber_krahn_constant():
    assert interval_end(8.0) == pytest.approx(0.5)
    assert eps_max(8.0) == pytest.approx(1 - 1 / 8 - math.sqrt(17) / 8)
    with pytest.raises(ValueError):
        interval_end(4.0)


def test_faber_krahn_lhs():
    check = faber_krahn_lhs(1.0, 2 * math.pi ** 2, 1)
    assert check.value == pytest.approx(2 * math.pi ** 2)
    assert check.constant == pytest.approx(math.pi * J)
    assert check.satisfied
    assert not faber_krahn_lhs(1.0, 100.0, 10).satisfied
    with pytest.raises(ValueError):
        faber_krahn_lhs(0.0, 1.0, 1)


def test_ledgers():
    ledgers = build_ledgers()
    assert set(ledgers) == {"paper", "corrected"}
    printed = ledgers["paper"]
    assert printed.t_of_eps_max == pytest.approx(8 / (math.pi * printed.eps_max))
    assert ledgers["corrected"].t_of_eps_max == pytest.approx(8 / printed.eps_max)
    assert printed.faber_krahn_constant == pytest.approx(18.168, abs=1e-3)
    checks = {check.name: check for check in printed.printed_checks}
    assert checks["j"].agrees
    assert not checks["interval_end"].agrees
    assert not checks["c0"].agrees
    assert any("c0: printed" in note for note in printed.notes)


def test_ledger_with_another_constant_has_no_printed_checks():
    ledger = build_ledger(j_squared=8.0)
    assert ledger.printed_checks == ()
    assert ledger.j_squared == 8.0
    assert ledger.c0_closed_form == pytest.approx(ledger.c0_of_eps_max, abs=1e-10)
