from strata_morse.utils.logging_utils import setup_logging

__all__ = ["setup_logging"]
