"""Every catalog entry builds and confirms its expected superdimension."""

import pytest

from dslie.build import parse_sdim
from dslie.catalog import all_entries, build_catalog_algebra


@pytest.mark.parametrize("ent", all_entries(),
                         ids=lambda e: f"{e.key}@p{e.p}")
def test_catalog_entry_builds(ent, cache_dir):
    b = build_catalog_algebra(ent.key, ent.p, cache_dir=cache_dir)
    want, _sub = parse_sdim(ent.sdim)
    assert b.sdim == want


def test_subquotient_sdims(cache_dir):
    # the a/b part of "A/a|B" is the first-derived-mod-center dimension
    for key, p in [("bgl(3;alpha)", 2), ("e(7,7)", 2), ("g(2,3)", 3)]:
        ent = next(e for e in all_entries() if e.key == key and e.p == p)
        _full, sub = parse_sdim(ent.sdim)
        if sub is None:
            continue
        b = build_catalog_algebra(key, p, cache_dir=cache_dir)
        h = b.algebra.first_derived_mod_center()
        assert h.sdim == sub, key
