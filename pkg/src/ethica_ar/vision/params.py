"""Detection tuning parameters, loadable from a JSON document."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

DEFAULT_WINDOW = 31
DEFAULT_OFFSET = 7.0
DEFAULT_MIN_AREA = 400.0
DEFAULT_HAMMING_RADIUS = 2
DEFAULT_MIN_CONTRAST = 40.0


@dataclass(frozen=True)
class DetectionParams:
    """Knobs for the frame pipeline.

    window/offset drive the adaptive threshold, min_area rejects small
    quads, hamming_radius is the decode acceptance distance, and
    min_contrast is the spread (max - min of the 36 module samples) below
    which a candidate is treated as contrast-free rather than classified.
    """

    window: int = DEFAULT_WINDOW
    offset: float = DEFAULT_OFFSET
    min_area: float = DEFAULT_MIN_AREA
    hamming_radius: int = DEFAULT_HAMMING_RADIUS
    min_contrast: float = DEFAULT_MIN_CONTRAST

    @classmethod
    def from_json(cls, document: str) -> "DetectionParams":
        data = json.loads(document)
        if not isinstance(data, dict):
            raise ValueError("detection params document must be a JSON object")
        known = {f: data[f] for f in cls.__dataclass_fields__ if f in data}
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown detection params: {', '.join(sorted(unknown))}")
        params = cls(**known)
        params.validate()
        return params

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    def validate(self) -> None:
        if self.window < 3 or self.window % 2 == 0:
            raise ValueError("window must be an odd integer >= 3")
        if self.min_area < 0:
            raise ValueError("min_area must be non-negative")
        if not 0 <= self.hamming_radius <= 3:
            raise ValueError("hamming_radius must be within 0..3")
        if self.min_contrast < 0:
            raise ValueError("min_contrast must be non-negative")
