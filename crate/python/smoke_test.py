"""Smoke test for the curvclass Python extension."""

import math

import curvclass_py as cc


def main():
    w = cc.Coefficients.named("W", 4)
    assert w.class_id() == 3
    assert w.is_gct() and w.is_skew()
    assert cc.Coefficients.named("C", 4).class_id() == 1
    assert cc.Coefficients.named("K", 4).class_id() == 2

    r = cc.Coefficients(4, [1] + [0] * 10)
    assert r.class_id() == 4
    assert r.canonical_form() == ("1", "0", "0")
    prof = r.profile()
    assert prof["p"][2] == "1" and prof["r"][0] == "0"
    assert cc.Coefficients.from_json(r.to_json()).a == r.a

    sphere = cc.Metric.catalog("sphere:3:1")
    assert sphere.dim == 3
    for pt in cc.evaluate(cc.Coefficients.named("W", 3), sphere, count=3):
        assert pt["norm"] < 1e-9

    rep = cc.check("recurrent", cc.Metric.catalog("pp-wave:exp"), count=3)
    assert rep["verdict"] == "holds", rep["verdict"]
    assert math.isclose(rep["points"][0]["unknowns"]["pi"][0], 1.0, abs_tol=1e-8)

    rep = cc.check("symmetric", cc.Metric.catalog("pp-wave:exp"), count=2)
    assert rep["verdict"] == "fails"

    try:
        cc.evaluate(w, sphere)
    except ValueError as e:
        assert "dimension" in str(e)
    else:
        raise AssertionError("dimension mismatch accepted")

    blocks = cc.verify(dims=[3], points=2, scale=0.05, blocks=["9"])
    assert blocks[0]["passed"], blocks

    print("smoke test passed")


if __name__ == "__main__":
    main()
