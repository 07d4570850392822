"""Explicit hypercubes shipped with the package.

Each record is re-verified when loaded, so a transcription error surfaces as
an :class:`AssetError` instead of bad data.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .core import LatinError, LatinHypercube, Partition
from .grid import parse
from .verify import verify_realization, verify_top_structure


class AssetError(LatinError):
    pass


@dataclass(frozen=True)
class AssetRecord:
    name: str
    dimension: int
    order: int
    partition: Partition
    hypercube: LatinHypercube
    provenance: str
    check: str  # "realization" or "top-structure"

    @property
    def entries(self):
        return self.hypercube.entries


# name -> (check, description)
_REGISTRY = {
    "fig-2-1-1-1": ("realization", "latin square of order 5 realizing (2 1^3)"),
    "fig-1-1-cube": ("realization", "latin cube of order 2 realizing (1^2)"),
    "fig-2-2-1-cube": ("realization", "latin cube of order 5 realizing (2^2 1)"),
    "appendix-a1": ("realization", "latin cube of order 8 realizing (3^2 2)"),
    "appendix-a2": ("realization", "latin cube of order 11 realizing (4^2 3)"),
    "appendix-a3": ("realization", "4-dimensional latin hypercube of order 6 realizing (2^2 1^2)"),
    "square-3-2-2": ("top-structure", "order-7 square lifting to a cube realizing (3 2^2)"),
    "square-4-3-3": ("top-structure", "order-10 square lifting to a cube realizing (4 3^2)"),
    "square-5-3-3": ("top-structure", "order-11 square lifting to a cube realizing (5 3^2)"),
}


def asset_names() -> list[str]:
    return list(_REGISTRY)


@lru_cache(maxsize=None)
def load_asset(name: str) -> AssetRecord:
    try:
        check, desc = _REGISTRY[name]
    except KeyError:
        raise AssetError(f"unknown asset {name!r}; known: {', '.join(_REGISTRY)}") from None
    text = resources.files(__package__).joinpath("data").joinpath(f"{name}.grid").read_text()
    doc = parse(text)
    verifier = verify_realization if check == "realization" else verify_top_structure
    report = verifier(doc.hypercube, doc.partition)
    if report is not None:
        raise AssetError(f"asset {name!r} fails its {check} check: {report}")
    return AssetRecord(name, doc.dimension, doc.order, doc.partition, doc.hypercube, desc, check)


def asset_text(name: str) -> str:
    if name not in _REGISTRY:
        raise AssetError(f"unknown asset {name!r}")
    return resources.files(__package__).joinpath("data").joinpath(f"{name}.grid").read_text()


def realization_assets(dimension: int | None = None) -> list[AssetRecord]:
    out = [load_asset(n) for n, (check, _) in _REGISTRY.items() if check == "realization"]
    if dimension is not None:
        out = [a for a in out if a.dimension == dimension]
    return out
