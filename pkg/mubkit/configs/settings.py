import json
import logging.config
import os
import sys

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings."""

    ENV: str = "development"
    LOG_LEVEL: str = "WARNING"
    PROJECT_NAME: str = "mubkit"
    THREADS: int = Field(default=1, ge=1)  # MUBKIT_THREADS
    DEFAULT_TOL: float = Field(default=1e-10, gt=0)
    GENERATE_TOL: float = Field(default=1e-8, gt=0)
    DEFAULT_SEED: int = 0
    SPECTRAL_MAX_RETRIES: int = Field(default=8, ge=1)
    EXHAUSTIVE_MAX_DIM: int = 64
    SPOT_CHECK_PAIRS: int = Field(default=64, ge=1)
    MAX_MATRIX_DIM: int = 2**14
    MAX_PRIME: int = 2**20

    model_config = SettingsConfigDict(
        env_prefix="MUBKIT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )


settings = Settings()


class StructuredLogFormatter(logging.Formatter):
    """Formatter that outputs one JSON object per log record."""

    SEVERITY_MAP = {
        "DEBUG": "DEBUG",
        "INFO": "INFO",
        "WARNING": "WARNING",
        "ERROR": "ERROR",
        "CRITICAL": "CRITICAL",
    }

    def __init__(self):
        super().__init__()
        self.service_name = settings.PROJECT_NAME

    def format(self, record):
        """Format log record as JSON."""
        severity = self.SEVERITY_MAP.get(record.levelname, record.levelname)

        log_dict = {
            "time": self.formatTime(record),
            "severity": severity,
            "message": record.getMessage(),
            "logger": record.name,
            "component": getattr(record, "component", "unknown"),
            "operation": getattr(record, "operation", "unknown"),
            "labels": {
                "service": self.service_name,
                "environment": settings.ENV,
                "component": getattr(record, "component", "unknown"),
            },
            "serviceContext": {
                "service": self.service_name,
                "version": os.getenv("SERVICE_VERSION", "unknown"),
            },
            "sourceLocation": {
                "file": record.pathname,
                "line": record.lineno,
                "function": record.funcName,
            },
        }

        if record.exc_info:
            exc_type, exc_value, _ = record.exc_info
            log_dict["error"] = {
                "type": exc_type.__name__,
                "message": str(exc_value),
                "stackTrace": self.formatException(record.exc_info),
            }

        if hasattr(record, "extra_fields"):
            log_dict.update(record.extra_fields)

        return json.dumps(log_dict, ensure_ascii=False, default=str)


LOGGING_CONFIG = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "structured": {
            "()": StructuredLogFormatter,
        }
    },
    "handlers": {
        # stdout carries generated files and reports
        "structured": {
            "class": "logging.StreamHandler",
            "formatter": "structured",
            "stream": "ext://sys.stderr",
        }
    },
    "loggers": {
        "": {
            "handlers": ["structured"],
            "level": settings.LOG_LEVEL.upper(),
            "propagate": False,
        },
        "mubkit": {
            "handlers": ["structured"],
            "level": settings.LOG_LEVEL.upper(),
            "propagate": False,
        },
        "mubkit.services.monitoring": {
            "handlers": ["structured"],
            "level": "WARNING",
            "propagate": False,
        },
    },
}


def configure_logging() -> None:
    """Apply LOGGING_CONFIG, falling back to basicConfig."""
    try:
        logging.config.dictConfig(LOGGING_CONFIG)
    except Exception as e:
        logging.basicConfig(level=settings.LOG_LEVEL.upper(), stream=sys.stderr)
        logging.warning(f"Failed to configure structured logging: {e}")
