"""Test module for timing of constructions."""

import pytest

from mubkit.services import monitoring
from mubkit.services.monitoring import monitor_performance


class TestPerformanceMonitoring:
    """Test cases for performance monitoring."""

    @pytest.fixture
    def mock_logger(self, mocker):
        return mocker.patch.object(monitoring, "logger")

    def test_monitor_performance_decorator_success(self, mock_logger):
        """Test performance monitoring decorator success case."""

        @monitor_performance
        def test_func():
            return "success"

        assert test_func() == "success"
        assert test_func.__name__ == "test_func"
        mock_logger.info.assert_called_once()
        assert "test_func completed in" in mock_logger.info.call_args[0][0]

    def test_monitor_performance_decorator_error(self, mock_logger):
        """Test performance monitoring decorator error case."""

        @monitor_performance
        def test_func():
            raise ValueError("Test error")

        with pytest.raises(ValueError, match="Test error"):
            test_func()
        mock_logger.error.assert_called_once()
        assert "test_func failed after" in mock_logger.error.call_args[0][0]

    def test_monitor_performance_slow(self, mock_logger, mocker):
        """Test slow calls are logged as warnings."""
        mocker.patch.object(monitoring, "SLOW_OPERATION_MS", -1)

        @monitor_performance
        def test_func(x, y=1):
            return x + y

        assert test_func(1, y=2) == 3
        mock_logger.warning.assert_called_once()
        mock_logger.info.assert_not_called()
