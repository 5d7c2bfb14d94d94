#!/usr/bin/env python3
"""Smoke test for the mixedmeans_py extension module.

Builds are produced by cargo; this script locates the cdylib under
target/, stages it under an importable name, and exercises the main
surface end to end. Run from anywhere:

    cargo build -p mixedmeans-py --release
    python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def stage_module() -> Path:
    candidates = [
        REPO / "target" / "release" / "libmixedmeans_py.so",
        REPO / "target" / "debug" / "libmixedmeans_py.so",
        REPO / "target" / "release" / "mixedmeans_py.dll",
        REPO / "target" / "debug" / "mixedmeans_py.dll",
        REPO / "target" / "release" / "libmixedmeans_py.dylib",
        REPO / "target" / "debug" / "libmixedmeans_py.dylib",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("build the extension first: cargo build -p mixedmeans-py --release")
    stage = Path(tempfile.mkdtemp(prefix="mixedmeans_py_"))
    suffix = ".pyd" if built.suffix == ".dll" else ".so"
    shutil.copy2(built, stage / f"mixedmeans_py{suffix}")
    return stage


sys.path.insert(0, str(stage_module()))

import mixedmeans_py as mm  # noqa: E402

failures = []


def check(name: str, ok: bool, detail: str = "") -> None:
    print(f"  {name}: {'ok' if ok else 'FAIL ' + detail}")
    if not ok:
        failures.append(name)


print("power series arithmetic")
f = mm.PowerSeries([0, 1, 0.5])  # z + z^2/2
check("order", f.order == 2)
check("derivative", f.derivative().coeffs() == [1 + 0j, 1 + 0j])
check("evaluate", abs(f.evaluate(0.5j) - (0.5j + (0.5j) ** 2 / 2)) < 1e-15)
g = mm.PowerSeries([1, 1]).sqrt_zero_free()
check("sqrt b1", abs(g.coeffs()[1] - 0.5) < 1e-15)

print("weights and means")
check("nu_alpha(1, 0.7)", abs(mm.nu_alpha(1.0, 0.7) - (0.49 - 0.49**2 / 2)) < 1e-15)
r = 0.6
want = (12 - 3 * r**2 - 2 * r**4) / (6 * (2 - r**2))
got, err = mm.weighted_mean("area", f, 1.0, 1.0, r)
check("area mean closed form", abs(got - want) < 1e-9 * want, f"{got} vs {want}")

cube = mm.PowerSeries([8, 12, 6, 1])  # (z+2)^3
want = (24 - 9 * r**2 - 2 * r**4) / (2 - r**2)
got, err = mm.weighted_mean("length", cube, 1.0, 1.0, r)
check("length mean closed form", abs(got - want) < 1e-9 * want, f"{got} vs {want}")

got, _ = mm.mean_at_one("area", f, 1.0, 1.0)
check("mean at r=1", abs(got - 7.0 / 6.0) < 1e-9, f"{got}")

closed, _ = mm.weighted_mean_monomial("area", 2, 0.0, 1.0, 0.6)
check("monomial closed route", abs(closed - 0.18) < 1e-12)

print("geometry")
a, aerr = mm.area_dirichlet(f, 0.5)
check("dirichlet area", abs(a - math.pi * (0.25 + 0.5**4 / 2)) < 1e-12)
raster, rerr = mm.area_image_raster(f, 0.6, 128)
check("raster within bound", abs(raster - mm.area_dirichlet(f, 0.6)[0]) <= rerr + 1e-12)
length, _ = mm.length_boundary(cube, 0.5)
check("cube length closed form", abs(length - 6 * math.pi * 0.5 * (0.25 + 4)) < 1e-9)

print("convexity")
check("delta_limit(1,-4)", abs(mm.delta_limit(1.0, -4.0) + 0.75) < 1e-15)
check("delta at alpha=1", mm.delta(1.0, 1.0, 0.999) < -3.0)
grid = [k / 40 for k in range(1, 40)]
_, verdict = mm.convexity_scan("area", mm.PowerSeries([0, 0, 1]), -1.0, 1.0, grid)
check("monomial scan convex", verdict == "convex", verdict)
changes = mm.sign_changes([48, -288, 232, -72, 15])
check("one certified sign change", len(changes) == 1 and changes[0][2] == 1 and changes[0][3] == -1)

print("verification")
rep = mm.check_univalence("wedge", f, 4000)
check("univalence criterion", rep.status == "pass", rep.notes)
reports = mm.reproduce_examples()
bad = [r.check_id for r in reports if r.status != "pass"]
check("counterexample pipelines", not bad, str(bad))

if failures:
    sys.exit(f"smoke test FAILED: {failures}")
print("smoke test passed")
