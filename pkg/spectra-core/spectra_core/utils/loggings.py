# Copyright 2025-present Contact Spectra Developers.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

import logging
import sys
from typing import Union

LOG_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"
ROOT_LOGGERS = ("spectra_core", "contact_spectra")


def get_logger(name: str) -> logging.Logger:
    """Return the module logger for ``name``."""
    return logging.getLogger(name)


def configure_logging(level: Union[int, str] = logging.WARNING) -> None:
    """Attach a single stderr handler to the package root loggers."""
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            raise ValueError(f"Unknown log level: {level}")
    for root_name in ROOT_LOGGERS:
        root = logging.getLogger(root_name)
        root.setLevel(level)
        for handler in list(root.handlers):
            if getattr(handler, "_spectra_handler", False):
                root.removeHandler(handler)
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._spectra_handler = True
        root.addHandler(handler)
        root.propagate = False
