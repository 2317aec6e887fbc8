import json

from ppv import jsonio
from ppv.descent import (
    DecompositionPart,
    GaloisDatum,
    run_criterion,
    standard_sl2_decomposition,
)
from ppv.groups import FiniteCyclic, GaSub, GmConst
from ppv.local_blocks import block_ga_closure
from ppv.logext import LogExtElem
from ppv.ore import OrePoly
from ppv.rationals import f_const, k_const, t_var, x_var
from ppv.realization import realize_gm
from ppv.scalars import Scalar, rational
from ppv.series import INF, TruncLaurent, TwoVarLaurent


def round_trip(obj):
    blob = json.dumps(jsonio.encode(obj))
    return jsonio.decode(json.loads(blob))


def test_scalar_round_trip():
    for s in (rational(0), rational(-3), Scalar(4, ["1/2", 2]), Scalar.zeta(8) ** 3):
        assert round_trip(s) == s


def test_scalar_terms_use_exact_integer_strings():
    enc = jsonio.encode(Scalar(4, ["-3/2", 1]))
    assert enc["terms"][0] == {"num": "-3", "den": "2", "zeta_pow": []}
    assert enc["terms"][1] == {"num": "1", "den": "1", "zeta_pow": [1]}


def test_ratfunc_round_trip():
    t = t_var()
    x = x_var()
    for f in (t, (t**2 + 1) / (t - 2), (x + 1) / (x * (x - 1)), f_const(t) / (x - 2)):
        assert round_trip(f) == f


def test_ore_round_trip():
    t = t_var()
    one = k_const(1)
    for l in (OrePoly.dt_gen(), OrePoly([one, t]), OrePoly([one / t, t**2], e=2)):
        assert round_trip(l) == l


def test_series_round_trip():
    f = TruncLaurent("t", {-1: rational(2), 3: rational(5)}, 9)
    assert round_trip(f) == f
    exact = TruncLaurent("w", {0: rational(1)})
    assert round_trip(exact).trunc == INF
    two = TwoVarLaurent(rational(1), {2: TruncLaurent("w", {-2: rational(3)}, 7)}, 11)
    assert round_trip(two) == two


def test_logext_round_trip():
    t = t_var()
    model = LogExtElem.log_term(k_const(2), t) + LogExtElem.from_tail(1 / (x_var() - 1))
    assert round_trip(model) == model


def test_group_round_trip():
    t = t_var()
    one = k_const(1)
    for g in (GaSub(OrePoly([-one, t])), GmConst(), FiniteCyclic(4)):
        assert round_trip(g) == g


def test_galois_round_trip_rebuilds_elements():
    gd = GaloisDatum.build(2, field_order=4, generators=[(3, 0)])
    blob = jsonio.encode(gd)
    back = jsonio.decode(blob)
    assert back.e == gd.e and back.field_order == gd.field_order
    assert set(back.elements) == set(gd.elements)


def test_part_round_trip():
    t = t_var()
    part = DecompositionPart(
        group=GaSub(OrePoly([-k_const(1), t])),
        kind="ga",
        h=t,
        embedding=((k_const(0), k_const(1)), (k_const(0), k_const(0))),
        representation="upper",
    )
    back = round_trip(part)
    assert back == part


def test_realization_round_trip():
    t = t_var()
    real = realize_gm(OrePoly.dt_gen(), [k_const(1), t])
    back = round_trip(real)
    assert back.kind == "gm"
    assert back.model == real.model
    assert back.equation_datum == real.equation_datum


def test_block_and_certificate_encode():
    blk = block_ga_closure(rational(1), t_var(), 1, order=6)
    enc = jsonio.encode(blk)
    assert enc["kind"] == "ga" and enc["order"] == 6
    assert all("passed" in c for c in enc["checks"])

    cert = run_criterion(
        FiniteCyclic(2),
        [DecompositionPart(FiniteCyclic(2), "cyclic", r=2)],
        GaloisDatum.ramified(2),
        order=6,
        samples=3,
        seed=0,
    )
    doc = jsonio.encode(cert)
    blob = json.dumps(doc)
    parsed = json.loads(blob)
    assert parsed["schema_version"] == "1"
    assert parsed["all_exact_checks_passed"] is True
    assert [a["kind"] for a in parsed["assumptions"]] == [
        "density", "patching", "adjustment", "descent",
    ]
    assert "0." not in blob and "e-" not in blob  # no floats anywhere


def test_sl2_decomposition_document():
    group, parts = standard_sl2_decomposition()
    doc = {
        "group": jsonio.encode(group),
        "decomposition": [jsonio.encode(p) for p in parts],
    }
    back_parts = [jsonio.decode(p) for p in doc["decomposition"]]
    assert [p.kind for p in back_parts] == ["ga"] * 4
    assert [str(p.h) for p in back_parts] == ["1", "1", "t", "1/t"]
