import logging
from datetime import datetime
from pathlib import Path


def setup_logging(
    level: int | str = logging.WARNING, log_dir: Path | None = None
) -> logging.Logger:
    """Setup logging configuration for the `strata_morse` package.

    Args:
        level (int | str): The level of the package logger, as a number or a name.
        log_dir (Path | None): If given, also write a timestamped log file there.

    Returns:
        logging.Logger: The `strata_morse` package logger.
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING

    logger = logging.getLogger("strata_morse")
    logger.setLevel(level)

    formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )

    # Console handler; repeat calls only re-level it
    consoles = [
        handler
        for handler in logger.handlers
        if not isinstance(handler, logging.FileHandler)
    ]
    for handler in consoles:
        handler.setLevel(level)
    if not consoles:
        console_handler = logging.StreamHandler()
        console_handler.setLevel(level)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    # File handler, added once even when the console handler already exists
    has_file = any(isinstance(h, logging.FileHandler) for h in logger.handlers)
    if log_dir is not None and not has_file:
        log_dir = Path(log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        log_file = (
            log_dir / f"strata_morse_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log"
        )
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger
