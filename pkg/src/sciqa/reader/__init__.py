from .baseline import Answer, ReaderConfig, confidence, extract_answers_baseline
from .remote import remote_read

__all__ = [
    "Answer",
    "ReaderConfig",
    "confidence",
    "extract_answers_baseline",
    "remote_read",
]
