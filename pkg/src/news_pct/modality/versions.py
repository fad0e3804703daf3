from typing import Literal

from pydantic import BaseModel, field_validator

from news_pct.constants import VERSION_IDS
from news_pct.utils.errors import UsageError


class ModalityVersion(BaseModel):
    """Which record fields reach the model input, and how the target is formed."""

    model_config = {"frozen": True}

    id: str
    include_headline: bool = True
    include_source: bool
    include_company: bool
    include_date: bool
    target_mode: Literal["regression", "symbolic"]

    @field_validator("id")
    def validate_id(cls, value: str) -> str:
        if value not in VERSION_IDS:
            raise ValueError(f"Invalid modality version: {value}")
        return value

    @field_validator("include_headline")
    def validate_headline_included(cls, value: bool) -> bool:
        if not value:
            raise ValueError("every version includes the headline")
        return value

    @property
    def is_symbolic(self) -> bool:
        return self.target_mode == "symbolic"

    @property
    def label(self) -> str:
        fields = ["headline"]
        fields += ["source"] if self.include_source else []
        fields += ["company"] if self.include_company else []
        fields += ["date"] if self.include_date else []
        star = "*" if self.is_symbolic else ""
        return f"{self.id}{star} ({', '.join(fields)})"


VERSIONS: dict[str, ModalityVersion] = {
    "v1": ModalityVersion(id="v1", include_source=True, include_company=True, include_date=False, target_mode="regression"),
    "v2": ModalityVersion(id="v2", include_source=False, include_company=True, include_date=False, target_mode="regression"),
    "v3": ModalityVersion(id="v3", include_source=True, include_company=False, include_date=False, target_mode="regression"),
    "v4": ModalityVersion(id="v4", include_source=True, include_company=True, include_date=True, target_mode="regression"),
    "v5": ModalityVersion(id="v5", include_source=True, include_company=True, include_date=False, target_mode="symbolic"),
    "v6": ModalityVersion(id="v6", include_source=True, include_company=True, include_date=True, target_mode="symbolic"),
}


def parse_version(text: str) -> ModalityVersion:
    """Look up a version by id, accepting v1..v6 in any case."""
    key = text.strip().lower()
    if key not in VERSIONS:
        raise UsageError(f"unknown modality version {text!r}; expected one of {', '.join(VERSION_IDS)}")
    return VERSIONS[key]
