"""Smoke test for the repscan extension module."""

import math

import repscan


def main():
    g = repscan.gaussian(1.0)
    assert abs(g.integrate() - 1.0) < 1e-8
    for p in (0.6, 1.0, 2.0):
        assert abs(g.entropy_power(p) - 1.0) < 1e-4, p
    h = g.shannon_entropy("bits")
    assert abs(h - 0.5 * math.log2(2 * math.pi * math.e)) < 1e-8
    kappa = g.cumulants(3, method="gldf")
    assert abs(kappa[0] - h) < 1e-5

    reports = g.verify("iso", q=2.0)
    assert reports and all(r.satisfied for r in reports)

    bcs = repscan.cat(nu=1.0, alpha=5.0)
    ratio = bcs.entropy_power(1.0)
    assert abs(ratio - 2.0) < 1e-3, ratio

    w = repscan.gaussian_wave(1.0, hbar=1.0)
    r = w.repur(2.0)
    assert r.satisfied and r.saturated, r

    s = repscan.cat(nu=0.97, alpha=10.0).scan(0.01, 5, "edgeworth")
    assert len(s.kappa) == 5 and len(s.centers) == 256

    try:
        repscan.gaussian(-1.0)
    except ValueError as e:
        assert "InvalidParameter" in str(e) or "SupportExceedsGrid" in str(e), e
    else:
        raise AssertionError("negative variance accepted")
    print("smoke test passed")


if __name__ == "__main__":
    main()
