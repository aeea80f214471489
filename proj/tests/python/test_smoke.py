import math

import pytest

import copmix


def test_families_listed():
    names = [name for name, _ in copmix.families()]
    assert "fgm" in names and "frechet" in names


def test_rho1_fgm():
    assert copmix.rho1("fgm", [0.9]) == pytest.approx(0.3, abs=1e-3)


def test_eigenvalues_signed():
    ev = copmix.eigenvalues("fgm", [-0.6], n=128, k=2)
    assert ev[0] == pytest.approx(-0.2, abs=1e-3)


def test_mixing_report_frechet():
    rep = copmix.mixing_report("frechet", [0.3, 0.2], nmax=3, n=128)
    assert rep["beta_n"] == pytest.approx([0.5, 0.25, 0.125], abs=1e-12)
    assert rep["schema_version"] == copmix.SCHEMA_VERSION


def test_bounds():
    assert copmix.bound("table2", "m2")["value"] == pytest.approx(0.8)
    t3 = copmix.bound("theorem3", "fgm", [0.5], scheme="gauss-legendre", n=64)
    assert t3["extras"]["k1"] == pytest.approx(1 / 3, abs=1e-8)
    lo, mid, hi = copmix.dmr_sandwich(0.9, 4)
    assert lo <= mid <= hi


def test_arch_root_example3():
    assert copmix.arch_root("example3", 1.01, 2.0) == pytest.approx(1.388, abs=5e-3)


def test_simulate_deterministic():
    a = copmix.simulate("fgm", [0.5], 1000, seed=3)
    assert a == copmix.simulate("fgm", [0.5], 1000, seed=3)
    assert copmix.ks_uniform(a) < 0.1
    k = copmix.simulate_mh_kernel(0.5, 100, seed=1)
    assert all(abs(x) <= 1 for x in k)


def test_drift_and_validate():
    d = copmix.drift(0.3, 0.2, n=128)
    assert d["drift"]["drift_ok"] and d["minorization"]["worst_margin"] >= -1e-12
    assert math.isclose(d["gamma"], 0.2 / 3.3)
    assert copmix.validate("mh", [0.7], n=64)["ok"]


def test_errors_map_to_python():
    with pytest.raises(copmix.CopmixError):
        copmix.rho1("fgm", [1.5])
    with pytest.raises(ValueError):
        copmix.rho1("nosuch", [])
