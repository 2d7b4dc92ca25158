import hashlib
import json
import logging
import os
import pathlib
import tempfile
from json.decoder import JSONDecodeError
from typing import Callable, Dict, List, Optional

from ._datetime import utcnow_z
from .ng_format_version import CACHE_FORMAT_VERSION, NGFormatVersion
from .ng_jetring import JetRing
from .ng_multivector import Multivector
from .py_ng_exceptions import NGCacheCorruptionException, NGCacheException

CACHE_DIR_ENV = "NGC_CACHE_DIR"
CACHE_SUBDIR = "pynambugraphs"

STATUS_OK = "ok"
STATUS_MISMATCH = "mismatch"
STATUS_CORRUPT = "corrupt"


def default_cache_dir() -> pathlib.Path:
    """
    $NGC_CACHE_DIR, else $XDG_CACHE_HOME/pynambugraphs, else ~/.cache/pynambugraphs
    """
    try:
        return pathlib.Path(os.environ[CACHE_DIR_ENV])
    except KeyError:
        pass
    try:
        cache_home = pathlib.Path(os.environ["XDG_CACHE_HOME"])
    except KeyError:
        cache_home = pathlib.Path.home() / ".cache"
    return cache_home / CACHE_SUBDIR


def cache_key(encoding: str, dimension: int, mode: str) -> str:
    text = f"{encoding}|{dimension}|{mode}"
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


class EvaluationCache:
    """
    Content-addressed store of graph evaluations, one JSON file per
    (canonical encoding, dimension, mode).

    Writes go to a temporary file in the same directory and are moved into
    place, so readers never see a partial entry.
    """
    logger = logging.getLogger(__name__)

    def __init__(self, cache_dir=None, logger=None):
        if cache_dir is None:
            cache_dir = default_cache_dir()
        if logger:
            self.logger = logger
        self.cache_dir = pathlib.Path(cache_dir)
        try:
            self.cache_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise NGCacheException.from_exception(
                "Unable to create cache directory", self.cache_dir, e) from e

    def path_for(self, key: str) -> pathlib.Path:
        return self.cache_dir / key[:2] / f"{key}.json"

    def _read_entry(self, path: pathlib.Path) -> dict:
        try:
            entry = json.loads(path.read_text())
        except JSONDecodeError as e:
            raise NGCacheCorruptionException(f"not JSON: {e}", path=path) from e
        if not isinstance(entry, dict):
            raise NGCacheCorruptionException("entry is not a JSON object", path=path)
        missing = [f for f in ("format_version", "key", "multivector") if f not in entry]
        if missing:
            raise NGCacheCorruptionException(f"missing fields {missing}", path=path)
        try:
            version = NGFormatVersion(entry["format_version"])
        except ValueError as e:
            raise NGCacheCorruptionException(f"bad format_version: {e}", path=path) from e
        if not version.is_compatible(CACHE_FORMAT_VERSION):
            raise NGCacheCorruptionException(
                f"format {version} unsupported, expected {CACHE_FORMAT_VERSION}", path=path)
        return entry

    def _decode(self, entry: dict, path, ring: JetRing) -> Multivector:
        try:
            return Multivector.from_json(ring, entry["multivector"])
        except Exception as e:
            raise NGCacheCorruptionException(f"undecodable multivector: {e}", path=path) from e

    def get(self, encoding: str, dimension: int, mode: str,
            ring: JetRing = None) -> Optional[Multivector]:
        """
        The cached evaluation, or None on a miss. A corrupt entry is logged,
        removed and treated as a miss.
        """
        path = self.path_for(cache_key(encoding, dimension, mode))
        if not path.exists():
            return None
        if ring is None:
            ring = JetRing(dimension)
        try:
            entry = self._read_entry(path)
            value = self._decode(entry, path, ring)
        except NGCacheCorruptionException as e:
            self.logger.warning(f"Discarding cache entry: {e}")
            # another worker may have discarded it already
            path.unlink(missing_ok=True)
            return None
        self.logger.debug(f"cache hit {encoding} d={dimension} {mode}")
        return value

    def put(self, encoding: str, dimension: int, mode: str, value: Multivector):
        key = cache_key(encoding, dimension, mode)
        path = self.path_for(key)
        entry = {
            "format_version": str(CACHE_FORMAT_VERSION),
            "key": {"encoding": encoding, "dimension": dimension, "mode": mode},
            "created": utcnow_z(),
            "multivector": value.to_json()
        }
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp_name = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        except OSError as e:
            raise NGCacheException.from_exception("Unable to write cache entry", path, e) from e
        try:
            with os.fdopen(fd, "w") as _file:
                json.dump(entry, _file, indent=1, sort_keys=True)
            os.replace(tmp_name, path)
        except OSError as e:
            pathlib.Path(tmp_name).unlink(missing_ok=True)
            raise NGCacheException.from_exception("Unable to write cache entry", path, e) from e
        except BaseException:
            pathlib.Path(tmp_name).unlink(missing_ok=True)
            raise

    def entries(self) -> List[Dict]:
        """
        One record per entry file: the file's key fields plus digest and path,
        or status "corrupt" when it can't be read
        """
        records = []
        for path in sorted(self.cache_dir.glob("*/*.json")):
            record = {"digest": path.stem, "path": str(path)}
            try:
                entry = self._read_entry(path)
                record.update(entry["key"])
            except NGCacheCorruptionException:
                record["status"] = STATUS_CORRUPT
            records.append(record)
        return records

    def clear(self) -> int:
        removed = 0
        for path in self.cache_dir.glob("*/*.json"):
            path.unlink()
            removed += 1
        self.logger.info(f"Removed {removed} cache entries from {self.cache_dir}")
        return removed

    def verify(self, recompute: Callable[[str, int, str], Multivector],
               sample: Optional[int] = None) -> Dict[str, str]:
        """
        Re-evaluate entries and compare exactly

        Parameters
        ----------
        recompute : Callable[[str, int, str], Multivector]
            Evaluates (encoding, dimension, mode) from scratch
        sample : int, optional
            Check only the first `sample` entries in digest order

        Returns
        -------
        Dict[str, str]
            digest -> "ok" | "mismatch" | "corrupt"
        """
        report = {}
        paths = sorted(self.cache_dir.glob("*/*.json"))
        if sample is not None:
            paths = paths[:sample]
        for path in paths:
            digest = path.stem
            try:
                entry = self._read_entry(path)
                key = entry["key"]
                if cache_key(key["encoding"], key["dimension"], key["mode"]) != digest:
                    raise NGCacheCorruptionException("key does not match file name", path=path)
                fresh = recompute(key["encoding"], key["dimension"], key["mode"])
                stored = self._decode(entry, path, fresh.ring)
            except NGCacheCorruptionException as e:
                self.logger.error(f"{digest}: {e}")
                report[digest] = STATUS_CORRUPT
                continue
            if stored == fresh:
                report[digest] = STATUS_OK
            else:
                self.logger.error(f"{digest}: stored evaluation differs from recomputation")
                report[digest] = STATUS_MISMATCH
        return report
