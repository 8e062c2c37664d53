import hashlib
import json
from typing import Any

__all__ = ["typename", "canonical_json", "digest"]


def typename(*types: type):
    return ", ".join(map(lambda t: getattr(t, "__name__", str(t)), types))


def canonical_json(data: Any) -> str:
    """キー順を固定した JSON。同じ入力なら常に同じバイト列になる"""
    return json.dumps(data, ensure_ascii=False, sort_keys=True, indent=2)


def digest(data: Any, size=16) -> str:
    raw = json.dumps(data, ensure_ascii=False, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(raw.encode("utf-8")).hexdigest()[:size]
