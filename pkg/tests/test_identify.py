"""Identification and reference-bank behavior."""

import pytest

from dslie.catalog import build_catalog_algebra
from dslie.ds import describe_fingerprint, ds_homology, identify
from dslie.references import ReferenceBank
from dslie.superalgebra import Fingerprint


def test_reference_bank_names(cache_dir):
    bank = ReferenceBank(3, cache_dir=cache_dir)
    assert bank.algebra("psl(3)").sdim == (7, 0)
    assert bank.algebra("gl(1|2)").sdim == (5, 4)
    assert bank.algebra("K^{2|0}").sdim == (2, 0)
    assert bank.algebra("psl(3) (+) psl(3)").sdim == (14, 0)
    assert bank.algebra("hei(0|2)").sdim == (1, 2)
    with pytest.raises(ValueError):
        bank.algebra("nosuch(9)")


def test_reference_subquotient(cache_dir):
    bank = ReferenceBank(3, cache_dir=cache_dir)
    h = bank.algebra("g(2,3)^(1)/c")
    assert h.sdim == (10, 14)


def test_identify_trivial_and_abelian(cache_dir):
    b = build_catalog_algebra("brj(2;5)", 5, cache_dir=cache_dir)
    res = ds_homology(b.algebra, b.x_element("x1"))
    assert identify(res, []) == "K^{0|2}"


def test_identify_prefers_reference_name(cache_dir):
    bank = ReferenceBank(3, cache_dir=cache_dir)
    b = build_catalog_algebra("g(1,6)", 3, cache_dir=cache_dir)
    res = ds_homology(b.algebra, b.x_element("x3"))
    assert identify(res, bank.pairs(["psl(3)"])) == "psl(3)"
    # unmatched references fall back to a structure descriptor
    out = identify(res, bank.pairs(["psl(2|2)"]))
    assert "derived sdims" in out


def test_descriptor_format():
    fp = Fingerprint(sdim=(8, 2), derived_sdims=((7, 0), (1, 0), (0, 0)),
                     center_sdim=(1, 2), center_in_derived_sdim=(1, 0),
                     forms_dim=1, solvable=True, nilpotent=False, abelian=False)
    assert describe_fingerprint(fp) == \
        "solvable; dim c = 1|2; derived sdims [7|0, 1|0, 0|0]"
