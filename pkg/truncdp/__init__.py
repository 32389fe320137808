"""
truncdp - range-adherent, differentially private Laplace mechanism.

Truncates the Laplace density to the valid range of a query, normalizes it,
and calibrates the scale parameter so that the data-dependent normalization
does not break the differential privacy guarantee.
"""
import logging
import sys

from config import Config

__version__ = '1.0.0'

LOG_FORMAT = '%(asctime)s %(levelname)s [%(name)s] %(message)s'


def configure_logging(config_class=Config, level=None):
    """
    Install a stderr handler on the package logger.

    Args:
        config_class: configuration holding LOG_LEVEL
        level: optional override (name or number), e.g. 'DEBUG' for --verbose

    Returns:
        The configured package logger.
    """
    logger = logging.getLogger(__name__)
    logger.setLevel(level or config_class.LOG_LEVEL)

    handler = next((h for h in logger.handlers if getattr(h, '_truncdp', False)), None)
    if handler is None:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._truncdp = True
        logger.addHandler(handler)
    else:
        # stderr may have been swapped since the last call
        handler.setStream(sys.stderr)

    return logger
