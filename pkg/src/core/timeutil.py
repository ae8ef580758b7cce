"""
UTC time helpers. Internally every timestamp is an int of epoch seconds.
"""
from datetime import datetime, timezone

HOUR = 3600
MINUTE = 60


def parse_utc(text: str) -> int:
    """Parse an ISO-8601 timestamp to epoch seconds. Naive values are taken as UTC."""
    value = datetime.fromisoformat(text.strip())
    if value.tzinfo is None:
        value = value.replace(tzinfo=timezone.utc)
    return int(value.timestamp())


def format_utc(t: int) -> str:
    return datetime.fromtimestamp(int(t), tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
