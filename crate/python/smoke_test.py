#!/usr/bin/env python3
"""Smoke test for the nuclear_py extension module.

Build the module first:

    cargo build --release -p nuclear-py

then run:

    python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path


def load_module():
    root = Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / "release" / "libnuclear_py.so",
        root / "target" / "debug" / "libnuclear_py.so",
    ]
    for built in candidates:
        if built.exists():
            stage = Path(tempfile.mkdtemp(prefix="nuclear-py-"))
            shutil.copy2(built, stage / "nuclear_py.so")
            sys.path.insert(0, str(stage))
            import nuclear_py

            return nuclear_py
    sys.exit("libnuclear_py.so not found; run: cargo build --release -p nuclear-py")


def check(name, ok, detail=""):
    status = "ok" if ok else "FAIL"
    print(f"{status}: {name}" + (f" ({detail})" if detail else ""))
    if not ok:
        sys.exit(1)


def main():
    np = load_module()

    check("arith_point(360)", np.arith_point(360) == (30, 0, 72))
    check("arith_point(1)", np.arith_point(1) == (1, 1, 1))

    check("count_nuclear(10, 2)", np.count_nuclear(10, 2) == 4)
    count, ambiguous = np.count_powered(10, "1/2")
    check("count_powered(10, 1/2)", (count, ambiguous) == (4, 0))
    sieve_n, _ = np.count_powered(10**6, "1/2", method="sieve")
    strat_n, _ = np.count_powered(10**6, "1/2", method="stratified")
    check("dual-method agreement at 1e6", sieve_n == strat_n, f"{sieve_n}")

    check("decompose(12)", np.decompose(12) == (3, 2))
    check("lower_bound_w(51200, 1/2)", np.lower_bound_w(51200, "1/2") == 3)
    check(
        "erdos_ratio(4) = 15/28",
        abs(np.erdos_ratio(4) - 15.0 / 28.0) < 1e-14,
    )
    check("squarefree_coprime_count(10, 2)", np.squarefree_coprime_count(10.0, 2) == 4)
    check("r_gamma(2, 0.5)", abs(np.r_gamma(2, 0.5) - (1 + 2 / math.sqrt(2))) < 1e-15)

    analytic = np.Analytic()
    value, tail = analytic.log_g(1.0)
    check("log G(1) = 0", abs(value) < 1e-9, f"{value:.3e}, tail {tail:.3e}")
    check("F(0) = 1", abs(analytic.f_series(0.0) - 1.0) < 1e-9)
    expected = 2 - 6 / math.pi**2
    check("F(log 2)", abs(analytic.f_series(math.log(2)) - expected) < 1e-9)
    check("H_{1/2}(1) = 1", abs(analytic.h_series("1/2", 1.0) - 1.0) < 1e-9)

    sp = analytic.solve_saddle(10.0)
    check("saddle residual", abs(sp.residual) <= 1e-9, f"sigma={sp.sigma:.6f}")
    g1, g2 = analytic.g_derivatives(sp.sigma)
    check("saddle solves g'(sigma) = -v", abs(g1 + 10.0) <= 1e-9)
    check("g'' > 0", g2 > 0)

    est = analytic.estimate_powered("1/2", 1e8)
    check("estimate fields", est.s7 > 0 and est.s8 > 0 and est.beta > 0)
    ratio = strat_n / np.count_powered(10**6, "1/2")[0]
    check("count self-consistency", ratio == 1.0)
    check(
        "predict_ratio simple z=4",
        abs(analytic.predict_ratio("1/2", 1e8, z=4.0, mode="simple") - 2.0) < 1e-12,
    )
    check("rankin bound exceeds count", analytic.rankin_bound("1/2", 1e6, 0.1) > strat_n)

    sigma_approx, logf_approx = np.asymptotic_forms(100.0)
    check(
        "asymptotic forms consistent",
        abs(logf_approx / (100.0 * sigma_approx) - 2.0) < 1e-12,
    )

    try:
        np.count_powered(10, "0/1")
    except ValueError:
        check("invalid theta rejected", True)
    else:
        check("invalid theta rejected", False)

    print("all smoke checks passed")


if __name__ == "__main__":
    main()
