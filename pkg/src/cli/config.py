"""
Run configuration shared by every command.

`--pair` accepts a pair JSON file or one of the presets `plane`, `mixup`,
`barcode:<d>`. rects and mixup inputs carry their own pair, so `--pair` may
be omitted for them.
"""

import os
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator

from ..basis import BasisConfig
from ..diagrams import FORMATS
from ..errors import BasisConfigError, PairValidationError
from ..geometry import PolyhedralPair, load_pair, mixup_pair, persistence_plane, signed_barcode_pair

PRESETS = ("plane", "mixup", "barcode:<d>")


def default_seed() -> int:
    return int(os.getenv("PD_SCHAUDER_SEED", "42"))


class RunConfig(BaseModel):
    pair: Optional[str] = None
    z: int = Field(2, ge=2)
    schedule: Optional[str] = None
    layers: int = Field(4, ge=0)
    rafter: int = Field(4, ge=1)
    kind: Literal["plain", "stacked"] = "plain"
    format: str = "csv"
    seed: int = Field(default_factory=default_seed, ge=0)
    out: Optional[str] = None
    workers: Optional[int] = Field(None, ge=1)

    @field_validator("format")
    @classmethod
    def _known_format(cls, v: str) -> str:
        if v not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}")
        return v

    @classmethod
    def from_args(cls, **values) -> "RunConfig":
        """Build from parsed flags, dropping the ones left unset."""
        try:
            return cls.model_validate({k: v for k, v in values.items() if v is not None})
        except ValidationError as exc:
            err = exc.errors()[0]
            where = ".".join(str(p) for p in err["loc"])
            raise BasisConfigError(f"invalid option {where}: {err['msg']}") from None

    @property
    def carries_pair(self) -> bool:
        """rects and mixup inputs determine their own pair."""
        return self.format in ("rects", "mixup")

    def resolve_pair(self) -> Optional[PolyhedralPair]:
        if self.pair is None:
            return None
        name = self.pair.strip()
        if name == "plane":
            return persistence_plane()
        if name == "mixup":
            return mixup_pair()
        if name.startswith("barcode:"):
            try:
                return signed_barcode_pair(int(name.split(":", 1)[1]))
            except ValueError:
                raise PairValidationError(f"bad preset {name!r}; expected barcode:<d>") from None
        path = Path(name)
        if not path.is_file():
            raise PairValidationError(f"pair {name!r} is neither a file nor a preset ({', '.join(PRESETS)})")
        return load_pair(path)

    def basis_config(self, pair: Optional[PolyhedralPair] = None) -> BasisConfig:
        pair = pair if pair is not None else self.resolve_pair()
        if pair is None:
            raise BasisConfigError("no pair given; pass --pair (a JSON file or a preset)")
        return BasisConfig.build(pair, self.z, self.schedule, self.layers, self.rafter, self.kind)
