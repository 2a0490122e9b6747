"""End-to-end smoke of the python module: every exposed operation once,
with values pinned to the same frozen constants the C++ suites use."""

import pytest

import stillman_core as sc


def test_eval_exact_values():
    assert sc.eval_expr("4{1}4") == {"exact": True, "value": 256}
    assert sc.eval_expr("2^^4") == {"exact": True, "value": 65536}
    assert sc.eval_expr("3{2}3") == {"exact": True, "value": 3**27}


def test_eval_certified_lower_bound():
    r = sc.eval_expr("4{2}4")
    assert r["exact"] is False
    assert r["value"] >= 2 ** (2**20)
    tighter = sc.eval_expr("2{2}5", max_bits=4096)
    assert tighter["exact"] is False
    assert tighter["value"] == 2**4096


def test_format_and_normalize():
    assert sc.format_expr("2^^4") == "2{2}4"
    assert sc.format_expr("3{4}3{1}2", style="unicode") == "3↑⁴" "3↑2"
    # one exact absorption step: 3{2}(3{3}2) == 3{3}3
    assert sc.normalize_expr("3{2}3{3}2") == "3{3}3"


def test_compare_orderings():
    assert sc.compare_exprs("2{2}4", "2{1}16") == "equal"
    assert sc.compare_exprs("2{1}3", "3{1}2") == "less"
    assert sc.compare_exprs("3{1}2", "2{1}3") == "greater"
    assert sc.compare_exprs("3{6}3", "4{6}2") == "unknown"


def test_chain_collapse():
    terms = [(1, 4, 2, 0), (1, 2, 1, 0), (1, 2, 5, 0)]
    assert sc.collapse_chain(terms, 3) == "4{6}5"
    small = sc.eval_chain([(2, 3, 1, 1)], 2)
    assert small == {"exact": True, "value": 19}


def test_decomposition():
    assert sc.decompose_max(2, "2,2", "affine:8,4") == 354
    assert sc.decompose_terminals(3, "0,1,1", "affine:1,0") == [33, 57]


def test_package_values():
    assert sc.package_value("theta", "B", 2, 2) == 1252
    assert sc.package_value("theta", "B", 2, 2, mode="consistent") == 1352
    assert sc.package_value("zeta", "Bhat", 2, 2) == 362
    assert sc.package_value("gamma", "B", 2, "2,2") == 354
    assert sc.package_value("beta", "B", 2, "2,2", eta=3, mode="consistent") == 394


def test_function_index():
    assert sc.function_index("A", 2) == 1
    assert sc.function_index("psi", 2, 1) == 2
    assert sc.function_index("phi", 2, 1) == 3
    assert sc.function_index("B", 2) == 4


def test_bounds():
    assert sc.bound("pd", d=5, sigma=3) == {"text": "6{28}6{1}3", "note": ""}
    assert sc.bound("serre-strength", d=2, eta=5)["text"] == "7"
    assert sc.bound("eg-primary", e=2, h=2)["text"] == "4{15}5"
    assert "degenerate" in sc.bound("small-subalgebra", d=2, eta=4, delta_sum=1)["note"]


def test_verifier():
    ids = sc.suite_ids()
    assert "arrow-identities" in ids and "transport-bound" in ids
    rep = sc.run_suite("index-bound")
    assert rep["passed"] is True
    assert rep["cases"] == 12
    assert rep["failures"] == []
    assert rep["text"].endswith("result: pass\n")
    assert sc.run_suite("package-dominance", mode="consistent")["cases"] == 48


def test_big_integer_round_trip():
    # Far beyond CPython's default 4300-digit decimal conversion limit in
    # both directions: the shift rides into C++ and back out in the bound.
    import sys

    big = 2**20000 + 12345
    text = sc.collapse_chain([(1, 2, 1, big)], 1)
    sys.set_int_max_str_digits(10000)
    assert text == f"{big}" + "{3}2"


def test_errors():
    with pytest.raises(ValueError):
        sc.eval_expr("oops")
    with pytest.raises(ValueError):
        sc.package_value("zeta", "Bhat", 2, 2, eta=1)
    with pytest.raises(ValueError):
        sc.bound("pd", d=2)  # missing sigma
    with pytest.raises(RuntimeError):
        sc.package_value("theta", "B", 2, 50, max_steps=10)
