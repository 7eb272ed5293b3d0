"""Exercise the bindings end to end. Exits nonzero on the first mismatch."""

import json
import pathlib

import qfbim

z4 = qfbim.Ring.residue(4)
assert z4.order == 4 and z4.mul(2, 2) == 0 and z4.add(3, 1) == 0
assert z4.info()["radical_order"] == 2

reg = qfbim.Bimodule.named("regular_z4")
assert reg.is_qf() is True
assert reg.is_qf(["socle"]) is True
assert qfbim.Bimodule.named("scalar_restricted").is_qf() is False

baer = qfbim.Bimodule.named("z4_mod_2").baer()
assert baer["injective"] is False and baer["witness"] is not None
print("witness:", baer["witness"]["map"])

th4 = qfbim.Bimodule.named("column_z4_2_1").verify_th4()
assert th4["n"] == 2 and th4["c_order"] == 256 and th4["z_order"] == 4

geo = qfbim.GeoRing.named("geo729")
assert (geo.order, geo.n, geo.q) == (729, 3, 9)
assert geo.radical_power_orders() == [729, 81, 9, 1]
assert geo.decomposition()["component_orders"] == [81, 9]
verdict = geo.verdict()
assert verdict["regular_qf"] is True and verdict["canonical_qf"] is False
assert geo.center_order() == 27
assert qfbim.GeoRing(2, 2, 1, 0, [2, 0, 1], 2).order == 16

try:
    qfbim.GeoRing(2, 2, 1, 0, [1, 0, 1], 1)
except ValueError as e:
    print("rejected:", e)
else:
    raise AssertionError("non-Eisenstein spec accepted")

root = pathlib.Path(__file__).resolve().parent.parent
scenario = (root / "crates/core/scenarios/z4_regular.json").read_text()
a = qfbim.run_scenario(scenario)
b = qfbim.run_scenario(scenario)
assert a["passed"] and a["summary"]["pass"] == 3
assert qfbim.diff(json.dumps(a), json.dumps(b)) == []

print("smoke ok")
