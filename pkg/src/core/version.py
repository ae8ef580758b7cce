"""Tool identity stamped into every artifact header and run manifest."""

TOOL_NAME = "uci-monitor"
TOOL_VERSION = "1.0.0"
