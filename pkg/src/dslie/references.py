"""Named reference algebras for identifying DS homologies by fingerprint."""

from __future__ import annotations

import re
from typing import Dict, List, Optional, Tuple

from . import classical
from .catalog import build_catalog_algebra
from .superalgebra import Fingerprint, Superalgebra, direct_sum


class ReferenceBank:
    """Constructs and caches (name, fingerprint) pairs for identification."""

    def __init__(self, p: int, cache_dir: Optional[str] = None):
        self.p = p
        self.cache_dir = cache_dir
        self._fps: Dict[str, Fingerprint] = {}
        self._algs: Dict[str, Superalgebra] = {}

    def algebra(self, name: str) -> Superalgebra:
        if name not in self._algs:
            self._algs[name] = self._construct(name)
        return self._algs[name]

    def fingerprint(self, name: str) -> Fingerprint:
        if name not in self._fps:
            self._fps[name] = self.algebra(name).fingerprint()
        return self._fps[name]

    def pairs(self, names) -> List[Tuple[str, Fingerprint]]:
        return [(n, self.fingerprint(n)) for n in names]

    def _construct(self, name: str) -> Superalgebra:
        p = self.p
        m = re.fullmatch(r"(gl|sl|psl)\((\d+)\|(\d+)\)", name)
        if m:
            return classical.classical(m.group(1), int(m.group(2)), int(m.group(3)), p)
        m = re.fullmatch(r"(gl|sl|psl)\((\d+)\)", name)
        if m:
            return classical.classical(m.group(1), int(m.group(2)), 0, p)
        m = re.fullmatch(r"osp\((\d+)\|(\d+)\)", name)
        if m:
            return classical.osp(int(m.group(2)), int(m.group(3)), p)
        if name == "hei(0|2)" or name == "sl(1|1)":
            return classical.hei_odd(p)
        m = re.fullmatch(r"K\^\{(\d+)\|(\d+)\}", name)
        if m:
            return classical.abelian(int(m.group(1)), int(m.group(2)), p)
        m = re.fullmatch(r"(.+) \(\+\) (.+)", name)
        if m:
            return direct_sum(self.algebra(m.group(1)), self.algebra(m.group(2)))
        m = re.fullmatch(r"(.+)\^\(1\)/c", name)
        if m:
            inner = m.group(1)
            b = build_catalog_algebra(inner, p, cache_dir=self.cache_dir)
            return b.algebra.first_derived_mod_center()
        raise ValueError(f"unknown reference algebra {name!r}")
