from fractions import Fraction as F

import pytest

from bigonlab.constants import (ParameterError, certified_floor_log,
                                derive_R, n_sequence, pipeline)


def test_pipeline_reference_parameters():
    b = pipeline(1, F(1, 2), 1, F(1, 2), F(3, 4))
    assert b.epsilon == F(1, 12)
    assert b.a_minus == b.a_plus == 3 and b.a == 6
    assert b.D == 9
    assert b.rho == F(1, 40)
    assert b.R == 25
    assert b.n_seq(1) == 27
    assert b.N == 7340031
    assert b.mu == F(7340031, 7340030)
    assert b.K == 32164210
    assert b.C_exact is None  # ~2.2e8 digits: materialization capped
    assert b.C_branch == "main"
    assert float(b.C_log10) == pytest.approx(220829757.16, abs=0.01)


def test_default_nu():
    assert pipeline(1, F(1, 2), 1, F(1, 2)).nu == F(3, 4)


def test_n_sequence():
    assert n_sequence(F(1, 2), 0) == 6
    assert n_sequence(F(1, 2), 1) == 27
    assert n_sequence(F(1, 2), 10) == 7340031
    # monotone increasing
    vals = [n_sequence(F(1, 3), i) for i in range(6)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_derive_R_minimality():
    eps, a, nu = F(1, 12), 6, F(3, 4)
    R = derive_R(eps, a, nu)
    assert R == 25
    assert eps * a * R + a < nu * R
    assert not (eps * a * (R - 1) + a < nu * (R - 1))
    with pytest.raises(ParameterError):
        derive_R(F(1, 4), 6, F(3, 4))  # eps * a >= nu


def test_certified_floor_log():
    assert certified_floor_log(F(2), F(8)) == 3      # exact power hit
    assert certified_floor_log(F(2), F(7)) == 2
    assert certified_floor_log(F(3, 2), F(100)) == 11
    with pytest.raises(ParameterError):
        certified_floor_log(F(1), F(2))


def test_K_stable_under_doubled_precision():
    b = pipeline(1, F(1, 2), 1, F(1, 2), F(3, 4))
    k2 = 1 + certified_floor_log(b.mu, 2 / b.rho, start_prec=256)
    assert b.K == k2


def test_small_bundle_materializes_C():
    b = pipeline(0, F(1, 2), 0, F(1, 2), F(3, 4))
    assert b.D == 1 and b.N == n_sequence(F(1, 2), 2) == 111
    assert b.C_exact is not None
    assert b.C_exact == b.D * F(b.N) ** (b.K + 1) * 3  # (1+t)/(1-t) = 3
    assert b.gap_leq_C(int(b.C_exact))
    assert not b.gap_leq_C(int(b.C_exact) + 1)


def test_gap_leq_C_huge():
    b = pipeline(1, F(1, 2), 1, F(1, 2), F(3, 4))
    assert b.gap_leq_C(10)        # <= R
    assert b.gap_leq_C(10 ** 100)  # far below 10^(2.2e8)


@pytest.mark.parametrize("args", [
    (1, F(2), 1, F(1, 2), None),       # theta out of range
    (1, F(1, 2), 1, F(3, 2), None),    # lambda out of range
    (1, F(1, 2), 1, F(1, 2), F(1, 4)),  # nu <= lambda
    (-1, F(1, 2), 1, F(1, 2), None),   # negative Y
])
def test_parameter_errors(args):
    with pytest.raises(ParameterError):
        pipeline(*args)


def test_json_dict():
    d = pipeline(1, F(1, 2), 1, F(1, 2), F(3, 4)).to_json_dict()
    assert d["D"] == "9" and d["rho"] == "1/40" and d["R"] == "25"
    assert d["C"] == "overflow"
    assert d["epsilon"] == "1/12"
