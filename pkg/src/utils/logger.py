import sys
from typing import Optional

from loguru import logger


def setup_logger(
    level: str = "INFO",
    log_file: Optional[str] = None,
    rotation: str = "10 MB",
    retention: str = "10 days",
):
    """
    Configure loguru logger
    """
    logger.remove()  # Remove default handler

    # 控制台输出
    logger.add(
        sys.stderr,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <level>{message}</level>",
        level=level,
    )

    # 文件输出（可选）
    if log_file:
        logger.add(
            log_file,
            rotation=rotation,
            retention=retention,
            level=level,
            encoding="utf-8",
            compression="zip",
        )

    logger.debug("Logging initialised.")
