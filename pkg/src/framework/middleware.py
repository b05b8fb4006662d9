import datetime
import logging
import os
import socket
import sys
import time
import traceback
import uuid
from argparse import Namespace
from typing import Any, Callable

from opentelemetry.sdk._logs import LoggingHandler

from framework.errors import EngineError

# Configure logger
middleware_logger = logging.getLogger("middleware")
middleware_logger.setLevel(os.getenv("LOG_LEVEL", "INFO").upper())

middleware_logger.propagate = False

if not middleware_logger.handlers:
    middleware_logger.addHandler(LoggingHandler())
    stderr_handler = logging.StreamHandler(sys.stderr)
    stderr_handler.setFormatter(logging.Formatter("%(levelname)s %(name)s %(message)s"))
    middleware_logger.addHandler(stderr_handler)


def _loggable_arguments(args: Namespace) -> dict:
    return {
        key: value
        for key, value in sorted(vars(args).items())
        if not callable(value)
    }


class CommandLoggingMiddleware:
    """
    Wraps every CLI command for structured logging and transaction tracking.

    Each invocation:
    - Is assigned a unique transaction ID.
    - Logs a "Request" event with the command name and its parsed arguments.
    - Logs a "Response" event with the duration and exit status.
    - Logs "Command Failed" for engine errors (data / usage problems) and
      "Unhandled Exception" with a stack trace for anything else; both re-raise.

    Logging fields include:
        - level: log severity (INFO/ERROR)
        - event: "Request", "Response", "Command Failed" or "Unhandled Exception"
        - command: subcommand name (e.g. "report")
        - arguments: parsed arguments (file paths, thresholds)
        - hostname: host running the command
        - transaction_id: UUID assigned to this invocation
        - duration_seconds: processing time (response only)
        - status: exit code (response / failure only)
        - exception: exception string (error cases)
        - stack_trace: traceback string (unhandled errors)

    Example log for a diff command:
        {
            "level": "INFO",
            "event": "Request",
            "command": "diff",
            "arguments": {"actual": "a.json", "ideal": "i.json", "output": null},
            "timestamp": "2025-08-12T22:18:30.123Z",
            "hostname": "my-host",
            "transaction_id": "f1a2c3d4-5678-90ab-cdef-1234567890ab"
        }

    Notes:
        - Logs go to the OpenTelemetry handler and stderr; stdout carries data only.
    """

    def dispatch(self, args: Namespace, call_next: Callable[[Namespace], Any]) -> Any:
        transaction_id = str(uuid.uuid4())
        start_time = time.time()
        command = getattr(args, "command", None)

        middleware_logger.info({
            "level": "INFO",
            "event": "Request",
            "command": command,
            "arguments": _loggable_arguments(args),
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "hostname": socket.gethostname(),
            "transaction_id": transaction_id,
        })

        try:
            result = call_next(args)
        except EngineError as e:
            middleware_logger.error({
                "level": "ERROR",
                "event": "Command Failed",
                "command": command,
                "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
                "exception": e.detail,
                "status": e.exit_code,
                "transaction_id": transaction_id,
            })
            raise
        except Exception as e:
            middleware_logger.error({
                "level": "ERROR",
                "event": "Unhandled Exception",
                "command": command,
                "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
                "exception": str(e),
                "stack_trace": traceback.format_exc(),
                "transaction_id": transaction_id,
            })
            raise

        duration = time.time() - start_time
        middleware_logger.info({
            "level": "INFO",
            "event": "Response",
            "command": command,
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "duration_seconds": round(duration, 4),
            "status": result if isinstance(result, int) else 0,
            "transaction_id": transaction_id,
        })
        return result
