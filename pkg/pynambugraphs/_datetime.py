from datetime import datetime, timezone

# results and manifests store UTC timestamps as "2024-05-01T10:00:02Z"
_Z_SUFFIX = "Z"


def isoformat_z(moment: datetime) -> str:
    utc = moment.astimezone(timezone.utc).replace(tzinfo=None)
    return utc.isoformat(timespec="seconds") + _Z_SUFFIX


def utcnow_z() -> str:
    return isoformat_z(datetime.now(timezone.utc))


def fromisoformat_z(stamp: str) -> datetime:
    """
    Parse a Z-suffixed timestamp into an aware UTC datetime.
    datetime.fromisoformat() only accepts the suffix from python 3.11 on.
    """
    if not stamp.endswith(_Z_SUFFIX):
        raise ValueError(f"Timestamp without UTC 'Z' suffix: '{stamp}'")
    return datetime.fromisoformat(stamp[:-len(_Z_SUFFIX)] + "+00:00")
