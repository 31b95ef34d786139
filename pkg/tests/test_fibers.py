from cqsdef.fibers import general_fiber, is_smoothing
from cqsdef.totalspace import all_deformations
from conftest import iter_models


def fiber_table(model):
    out = {}
    for df in all_deformations(model):
        fib = general_fiber(df)
        origin = fib.at_origin()
        out[df.label] = (
            origin.chain if origin else None,
            sorted((nf.chain, mult) for nf, mult in fib.off_origin()),
        )
    return out


def test_golden_fibers(y83):
    table = fiber_table(y83)
    assert table["pi_{3,2}^1"] == (None, [])  # smooth fiber
    assert table["pi_{3,1}^2"] == (None, [((2,), 1)])  # one A_1 off the origin
    assert table["pibar_{3}^1"] == ((2, 2), [])  # (2,1) off-origin blows down
    assert table["pibar_{3}^2"] == (None, [((2, 2), 1)])
    assert table["pi_{2,1}^1"] == ((2, 2), [])  # (1,3,2) blown down
    assert table["pi_{4,1}^1"] == ((2, 2), [])  # (2,3,1) blown down
    assert table["pi_{3,1}^1"] == ((2, 2, 2), [])


def test_golden_raw_chains(y83):
    for df in all_deformations(y83):
        if df.label == "pi_{2,1}^1":
            raw = general_fiber(df).raw
            assert ((1, 3, 2), 1, "origin") in raw
        if df.label == "pibar_{3}^1":
            raw = general_fiber(df).raw
            assert ((2, 2), 1, "origin") in raw and ((2, 1), 1, "off-origin") in raw


def test_smoothing_golden(y83):
    flags = {df.label: is_smoothing(df) for df in all_deformations(y83)}
    assert flags == {
        "pi_{2,1}^1": False,
        "pi_{3,1}^1": False,
        "pi_{3,1}^2": False,
        "pi_{3,2}^1": True,
        "pibar_{3}^1": False,
        "pibar_{3}^2": False,
        "pi_{4,1}^1": False,
    }


def test_smoothing_necessary_conditions():
    """A smooth general fiber forces the expected parameters (checked
    inside is_smoothing, which raises otherwise)."""
    for m in iter_models(35):
        for df in all_deformations(m):
            if is_smoothing(df):
                if df.kind == "D":
                    assert df.d == 1 and df.p == m.a(df.h) - 1
                else:
                    assert m.a(df.h) == 2 and df.d == 1


def test_a0_dropped():
    for m in iter_models(15):
        for df in all_deformations(m):
            if df.kind == "D" and df.d == 1:
                fib = general_fiber(df)
                assert all(nf.chain != (1,) for nf, _ in fib.off_origin())
                assert ((1,), df.p, "off-origin") in fib.raw


def test_fiber_json(y83):
    for df in all_deformations(y83):
        js = general_fiber(df).to_json()
        assert set(js) == {"origin", "off_origin"}
        js_verbose = general_fiber(df).to_json(verbose=True)
        assert "raw_chains" in js_verbose
