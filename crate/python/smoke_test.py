"""Smoke test for the pyhodgekit extension. Run from the repository root."""

import json
from pathlib import Path

import pyhodgekit as hk

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def load(name):
    return json.loads((CORPUS / name).read_text())


def main():
    m = hk.MHS.from_doc(load("kummer_i.json"))
    assert m.dim == 2 and m.weights() == [-2, 0]
    assert hk.MHS.from_doc(m.to_doc()).same_as(m)
    assert m.dual().dual().same_as(m)
    assert m.end().dim == 4
    assert m.hodge_classes() == []
    assert m.ext_class(-2) == ["-i"]
    assert not m.splits_mod(-2)
    assert m.u_p(-2)[0] and m.is_u_large() == (True, [])

    half = hk.MHS.from_doc(load("kummer_half.json"))
    assert half.splits_mod(-2)
    assert half.can_lift([["0", "1"]]) == [["1", "2"]]  # span(e1/2 + e2), echelon form

    bad = hk.validate(load("kummer_bad_f0.json"))
    assert bad["purity"], bad

    try:
        hk.MHS.from_doc(load("two_weight4.json")).u_p(-1)
    except hk.RegimeError:
        pass
    else:
        raise AssertionError("expected RegimeError")

    mu = hk.Triple.from_doc(load("tate3.json"))
    assert mu.dim_s() == 3
    point = mu.sample_point(7)
    built = mu.build(point)
    assert mu.equal_in_s(mu.sections(built), point)
    report = mu.experiment(samples=5, seed=7)
    assert report["all_large_count"] == 5
    assert all(not c["large"] for c in report["degenerate"])

    pencil = hk.Pencil.from_doc(load("kummer_pencil.json"))
    _, locus = pencil.witness_locus()
    assert locus["kind"] == "AFFINE_SUBSET" and locus["point"] == "0"
    ident = pencil.locus(load("end.json"), ["1", "0", "0", "1"])
    assert ident["kind"] == "ALL"

    for seed in range(5):
        assert not hk.validate(hk.random_mhs(seed).to_doc())["purity"]

    print(f"pyhodgekit {hk.__version__}: ok")


if __name__ == "__main__":
    main()
