from functools import total_ordering
from typing import Tuple, Union


@total_ordering
class NGFormatVersion:
    """
    Dotted version of an on-disk format: the fixture tables, cache entries
    and pipeline results each carry one under "format_version".

    Missing trailing components count as zero, so "1" == "1.0" == "1.0.0".
    A reader accepts a stored version when the major numbers agree and the
    stored version is not newer than the one it writes.
    """

    def __init__(self, version: Union[str, int, "NGFormatVersion"]):
        if isinstance(version, NGFormatVersion):
            self._fields = version._fields
        else:
            self._fields = tuple(int(field) for field in str(version).split("."))

    @classmethod
    def _coerce(cls, other) -> "NGFormatVersion":
        return other if isinstance(other, cls) else cls(other)

    def _padded(self, width: int) -> Tuple[int, ...]:
        return self._fields + (0,) * (width - len(self._fields))

    def _key_pair(self, other):
        other = self._coerce(other)
        width = max(len(self._fields), len(other._fields))
        return self._padded(width), other._padded(width)

    def __str__(self):
        return ".".join(str(field) for field in self._fields)

    def __repr__(self):
        return f"NGFormatVersion('{self}')"

    def __eq__(self, other):
        mine, theirs = self._key_pair(other)
        return mine == theirs

    def __lt__(self, other):
        mine, theirs = self._key_pair(other)
        return mine < theirs

    def __hash__(self):
        fields = list(self._fields)
        while len(fields) > 1 and fields[-1] == 0:
            fields.pop()
        return hash(tuple(fields))

    @property
    def major(self) -> int:
        return self._fields[0]

    def is_compatible(self, written) -> bool:
        written = self._coerce(written)
        return self.major == written.major and self <= written


CACHE_FORMAT_VERSION = NGFormatVersion("1.0")
FIXTURE_FORMAT_VERSION = NGFormatVersion("1.0")
RESULT_FORMAT_VERSION = NGFormatVersion("1.0")
