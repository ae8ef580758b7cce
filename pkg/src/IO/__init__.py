"""
IO Module - every file the tool reads or writes.

This module provides:
- AIS position and vessel-info CSV readers/writers
- UCI GeoJSON, bathymetry and SAR detection readers
- Infrastructure graph edge/node files
- OU model dump/load
- Output handler for header-stamped CSV / JSON-lines artifacts, and PNG plots
"""

from .handler import OutputHandler, read_jsonl

__all__ = ['OutputHandler', 'read_jsonl']
