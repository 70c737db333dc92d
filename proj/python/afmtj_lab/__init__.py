"""AFMTJ write-dynamics and in-memory-computing toolkit."""

from ._afmtj_lab import (
    Device,
    calibrate,
    execute_logic,
    load_device,
    run_acceptance,
    run_write,
    speedup_report,
    voltage_sweep,
)

__all__ = [
    "Device",
    "calibrate",
    "execute_logic",
    "load_device",
    "run_acceptance",
    "run_write",
    "speedup_report",
    "voltage_sweep",
]
