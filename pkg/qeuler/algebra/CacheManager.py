#!/usr/bin/env python3
"""
Cache Manager for qeuler
Memo table for generalized q-Euler numbers with a versioned file format.
"""

import json
import logging
import os
import re
import tempfile
import threading
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional

from qeuler.algebra.ErrorHandler import CacheFormatError, CacheIOError, DomainError
from qeuler.algebra.PolyArith import QPolynomial, from_coeffs

logger = logging.getLogger(__name__)

CACHE_FORMAT_NAME = 'qeuler-euler-cache'
CACHE_FORMAT_VERSION = 1

_DECIMAL = re.compile(r'-?(0|[1-9][0-9]*)\Z')


@dataclass(frozen=True, order=True)
class EulerKey:
    """(n, k) naming E_{n|k}; ordered by n then k."""
    n: int
    k: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 0:
            raise DomainError(f"n must be a non-negative integer, got {self.n!r}", {'n': self.n})
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 2:
            raise DomainError(f"k must be an integer >= 2, got {self.k!r}", {'k': self.k})

    def __str__(self) -> str:
        return f"E[{self.n}|{self.k}]"


class CacheStore:
    """Thread-safe map from EulerKey to QPolynomial."""

    def __init__(self, version: int = CACHE_FORMAT_VERSION):
        self.version = version
        self.entries: Dict[EulerKey, QPolynomial] = {}
        self.hits = 0
        self.misses = 0
        self.lock = threading.Lock()

    def get(self, key: EulerKey) -> Optional[QPolynomial]:
        """Get value from cache."""
        with self.lock:
            value = self.entries.get(key)
            if value is None:
                self.misses += 1
            else:
                self.hits += 1
            return value

    def set(self, key: EulerKey, value: QPolynomial) -> bool:
        """Store a polynomial; an existing entry is kept (first writer wins)."""
        with self.lock:
            if key in self.entries:
                return False
            self.entries[key] = value
            logger.debug(f"Cache set: {key}")
            return True

    def delete(self, key: EulerKey) -> bool:
        """Delete key from cache."""
        with self.lock:
            return self.entries.pop(key, None) is not None

    def clear(self) -> bool:
        """Clear all cache entries."""
        with self.lock:
            self.entries.clear()
            self.hits = 0
            self.misses = 0
            logger.info("Cache cleared")
            return True

    def merge(self, other: 'CacheStore') -> int:
        """Copy entries from another store; returns the number added."""
        with other.lock:
            incoming = dict(other.entries)
        added = 0
        for key, value in incoming.items():
            if self.set(key, value):
                added += 1
        return added

    def __contains__(self, key: EulerKey) -> bool:
        with self.lock:
            return key in self.entries

    def __len__(self) -> int:
        with self.lock:
            return len(self.entries)

    def __iter__(self) -> Iterator[EulerKey]:
        with self.lock:
            return iter(sorted(self.entries))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CacheStore):
            return NotImplemented
        return self.version == other.version and self.entries == other.entries

    def get_cache_stats(self) -> Dict[str, Any]:
        """Get cache statistics."""
        with self.lock:
            per_k: Dict[int, int] = {}
            max_degree = None
            for key, value in self.entries.items():
                per_k[key.k] = per_k.get(key.k, 0) + 1
                if not value.is_zero():
                    max_degree = value.degree if max_degree is None else max(max_degree, value.degree)
            return {
                'version': self.version,
                'total_entries': len(self.entries),
                'entries_per_k': dict(sorted(per_k.items())),
                'max_degree': max_degree,
                'hits': self.hits,
                'misses': self.misses,
            }

    def to_document(self) -> Dict[str, Any]:
        """Serializable form: coefficients as decimal strings, sorted by (k, n)."""
        with self.lock:
            items = sorted(self.entries.items(), key=lambda kv: (kv[0].k, kv[0].n))
        return {
            'format': CACHE_FORMAT_NAME,
            'version': self.version,
            'entries': [
                {'n': key.n, 'k': key.k, 'coeffs': [str(c) for c in value.coeffs]}
                for key, value in items
            ],
        }

    @classmethod
    def from_document(cls, document: Any) -> 'CacheStore':
        """Validate a whole document before building the store."""
        if not isinstance(document, dict):
            raise CacheFormatError("cache document must be a JSON object")
        if document.get('format', CACHE_FORMAT_NAME) != CACHE_FORMAT_NAME:
            raise CacheFormatError(f"not a qeuler cache document: format {document.get('format')!r}")
        version = document.get('version')
        if version != CACHE_FORMAT_VERSION:
            raise CacheFormatError(
                f"cache format version {version!r} is not supported (expected {CACHE_FORMAT_VERSION})",
                {'found': version, 'expected': CACHE_FORMAT_VERSION})
        raw_entries = document.get('entries')
        if not isinstance(raw_entries, list):
            raise CacheFormatError("cache document has no 'entries' list")

        parsed: Dict[EulerKey, QPolynomial] = {}
        for position, raw in enumerate(raw_entries):
            key, value = cls._parse_entry(raw, position)
            if key in parsed:
                raise CacheFormatError(f"duplicate cache entry for {key}", {'entry': position})
            parsed[key] = value

        store = cls(version)
        store.entries = parsed
        return store

    @staticmethod
    def _parse_entry(raw: Any, position: int):
        if not isinstance(raw, dict):
            raise CacheFormatError(f"entry {position} is not an object", {'entry': position})
        try:
            key = EulerKey(raw.get('n'), raw.get('k'))
        except DomainError as e:
            raise CacheFormatError(f"entry {position}: {e.message}", {'entry': position})

        coeffs = raw.get('coeffs')
        if not isinstance(coeffs, list) or not all(isinstance(c, str) and _DECIMAL.match(c) for c in coeffs):
            raise CacheFormatError(f"entry {position}: coefficients must be decimal strings",
                                   {'entry': position})
        if coeffs and coeffs[-1] == '0':
            raise CacheFormatError(f"entry {position}: polynomial is not normalized",
                                   {'entry': position})
        return key, from_coeffs(int(c) for c in coeffs)

    def save(self, path: str):
        """Write the store as JSON via a temporary file and an atomic rename."""
        directory = os.path.dirname(os.path.abspath(path))
        text = json.dumps(self.to_document(), indent=1, sort_keys=True) + '\n'
        try:
            os.makedirs(directory, exist_ok=True)
            fd, tmp_path = tempfile.mkstemp(prefix='.qeuler-cache-', suffix='.tmp', dir=directory)
            try:
                with os.fdopen(fd, 'w', encoding='utf-8') as handle:
                    handle.write(text)
                os.replace(tmp_path, path)
            except BaseException:
                if os.path.exists(tmp_path):
                    os.unlink(tmp_path)
                raise
        except OSError as e:
            raise CacheIOError(f"cannot write cache file {path}: {e.strerror or e}", {'path': path})
        logger.info(f"Saved {len(self)} cache entries to {path}")

    @classmethod
    def load(cls, path: str) -> 'CacheStore':
        """Read and validate a cache file."""
        try:
            with open(path, 'r', encoding='utf-8') as handle:
                document = json.load(handle)
        except json.JSONDecodeError as e:
            raise CacheFormatError(f"cache file {path} is not valid JSON: {e.msg}", {'path': path})
        except OSError as e:
            raise CacheIOError(f"cannot read cache file {path}: {e.strerror or e}", {'path': path})
        store = cls.from_document(document)
        logger.info(f"Loaded {len(store)} cache entries from {path}")
        return store

    @classmethod
    def load_or_empty(cls, path: Optional[str]) -> 'CacheStore':
        """Load the file when it exists, otherwise start empty."""
        if path and os.path.exists(path):
            return cls.load(path)
        return cls()

    def keys_for(self, k: int) -> List[EulerKey]:
        with self.lock:
            return sorted(key for key in self.entries if key.k == k)


# Global cache store instance
cache_store = None


def get_cache_store() -> CacheStore:
    """Get or create the process-wide memo table."""
    global cache_store
    if cache_store is None:
        cache_store = CacheStore()
    return cache_store


def set_cache_store(store: CacheStore) -> CacheStore:
    """Replace the process-wide memo table (e.g. with one loaded from disk)."""
    global cache_store
    cache_store = store
    return store
