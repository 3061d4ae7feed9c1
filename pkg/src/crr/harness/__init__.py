"""File formats, sweeps, reports and the ``crr`` command line."""
