"""
Core module for the UCI monitor.

Submodules:
- configuration: RunConfig and the per-section `configuration` base
- errors: exception hierarchy, free of project imports
- interface / pipelineManager: subcommand interface and registry
- load_save: content-addressed run-state persistence
- timeutil / version: epoch time helpers and tool identity

Import the submodules directly. errors, timeutil and version are leaves that
every analysis package uses, so this package does not load configuration
(which pulls in every analysis section) on import.
"""
