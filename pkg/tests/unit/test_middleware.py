from argparse import Namespace
from unittest.mock import MagicMock, patch

import pytest

from framework.errors import SchemaError
from framework.middleware import CommandLoggingMiddleware


def test_logging_middleware_normal_flow():
    # Arrange
    args = Namespace(command="diff", ideal="ideal.json", actual="actual.json", output=None, handler=print)
    call_next = MagicMock(return_value=0)

    middleware = CommandLoggingMiddleware()

    with patch("framework.middleware.middleware_logger.info") as mock_info, patch("framework.middleware.middleware_logger.error") as mock_error:
        # Act
        result = middleware.dispatch(args, call_next)

        # Assert
        assert result == 0
        call_next.assert_called_once_with(args)
        assert mock_info.call_count == 2  # request and response log
        mock_error.assert_not_called()

        request_log = mock_info.call_args_list[0][0][0]
        assert request_log["event"] == "Request"
        assert request_log["command"] == "diff"
        assert request_log["arguments"] == {
            "actual": "actual.json",
            "command": "diff",
            "ideal": "ideal.json",
            "output": None,
        }

        response_log = mock_info.call_args[0][0]
        assert response_log["event"] == "Response"
        assert response_log["status"] == 0
        assert response_log["transaction_id"] == request_log["transaction_id"]


def test_logging_middleware_engine_error_flow():
    args = Namespace(command="ideal-build")

    def fail(_):
        raise SchemaError("background schemas differ")

    with patch("framework.middleware.middleware_logger.info") as mock_info, patch("framework.middleware.middleware_logger.error") as mock_error:
        with pytest.raises(SchemaError):
            CommandLoggingMiddleware().dispatch(args, fail)

        mock_info.assert_called_once()
        error_log = mock_error.call_args[0][0]
        assert error_log["event"] == "Command Failed"
        assert error_log["exception"] == "background schemas differ"
        assert error_log["status"] == 1
        assert "stack_trace" not in error_log


def test_logging_middleware_exception_flow():
    args = Namespace(command="report")
    call_next = MagicMock(side_effect=ValueError("Test exception"))

    with patch("framework.middleware.middleware_logger.info") as mock_info, patch("framework.middleware.middleware_logger.error") as mock_error:
        # Act / Assert
        with pytest.raises(ValueError, match="Test exception"):
            CommandLoggingMiddleware().dispatch(args, call_next)

        # There should be one info log for the request
        mock_info.assert_called_once()
        mock_error.assert_called_once()

        error_log_arg = mock_error.call_args[0][0]
        assert error_log_arg["event"] == "Unhandled Exception"
        assert "stack_trace" in error_log_arg
        assert error_log_arg["exception"] == "Test exception"
        assert error_log_arg["command"] == "report"
        assert "transaction_id" in error_log_arg
