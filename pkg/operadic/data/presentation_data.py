from __future__ import annotations

import os
from functools import lru_cache
from typing import Any, Dict, List

import orjson

from operadic.data.normalize import to_tag


class PresentationData:
    """Raw data of a classical operad presentation, read from the static files."""

    __slots__ = ("tag", "name", "description", "generators", "actions", "relations")

    TAGS = ("asc", "com", "lie")

    _data_per_tag: Dict[str, PresentationData] = {}

    def __init__(self, tag: str):
        if tag in self._data_per_tag:
            raise ValueError(f"PresentationData for {tag} already initialized.")

        raw = self.load_presentation(tag)
        self.tag = tag
        self.name: str = raw["name"]
        self.description: str = raw.get("description", "")
        self.generators: List[Dict[str, Any]] = raw["generators"]
        self.actions: Dict[str, List[List[List[int]]]] = raw.get("actions", {})
        self.relations: List[Dict[str, Any]] = raw["relations"]

    def load_presentation(self, tag: str) -> Dict[str, Any]:
        with open(
            os.path.join(self._static_files_root, "presentations", f"{tag}.json")
        ) as f:
            return orjson.loads(f.read())

    def as_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "generators": self.generators,
            "actions": self.actions,
            "relations": self.relations,
        }

    @property
    def _static_files_root(self) -> str:
        return os.path.join(os.path.dirname(os.path.realpath(__file__)), "static")

    @classmethod
    @lru_cache(None)
    def from_tag(cls, tag: str) -> PresentationData:
        tag = to_tag(tag)
        if tag not in cls.TAGS:
            raise KeyError(f"No built-in presentation named {tag!r}.")
        if tag in cls._data_per_tag:
            return cls._data_per_tag[tag]
        data = PresentationData(tag)
        cls._data_per_tag[tag] = data

        return data


def load_presentation(tag: str) -> Dict[str, Any]:
    """Presentation data of com, asc or lie as a plain dictionary."""
    return PresentationData.from_tag(tag).as_dict()
