from operadic.data.normalize import to_tag
from operadic.data.presentation_data import PresentationData, load_presentation

__all__ = [
    "PresentationData",
    "load_presentation",
    "to_tag",
]
