import json
import logging
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from datetime import timedelta
from fractions import Fraction
from typing import Any

import humanize
from opentelemetry.sdk.trace import ReadableSpan, TracerProvider, export
from opentelemetry.sdk.trace.export import SpanExporter, SpanExportResult

# Attribute payloads above this size are summarized instead of logged inline.
MAX_INLINE_ATTRIBUTES = 16 * 1024

DEFAULT_LABELS = {"type": "hnp_telemetry", "service_name": "hnpkit"}

LOGGER_ATTRIBUTE = "hnp.logger"
SEVERITY_ATTRIBUTE = "hnp.severity"


def log_struct(
    logger: logging.Logger,
    payload: dict[str, Any],
    labels: dict[str, str] | None = None,
    severity: int = logging.INFO,
) -> None:
    """Emit one structured record as a single JSON line."""
    record = dict(payload)
    record["labels"] = {**DEFAULT_LABELS, **(labels or {})}
    logger.log(severity, json.dumps(record, sort_keys=True, default=str))


class LoggingSpanExporter(SpanExporter):
    """Writes finished spans to the ``logging`` logger that opened them, one JSON record each."""

    def export(self, spans: Sequence[ReadableSpan]) -> SpanExportResult:
        for finished in spans:
            span_dict = json.loads(finished.to_json())
            attributes = span_dict.get("attributes") or {}
            logger = logging.getLogger(attributes.pop(LOGGER_ATTRIBUTE, "hnpkit.trace"))
            severity = int(attributes.pop(SEVERITY_ATTRIBUTE, logging.DEBUG))
            context = finished.get_span_context()
            elapsed_ns = (finished.end_time or 0) - (finished.start_time or 0)
            payload = {
                "span": finished.name,
                "trace": format(context.trace_id, "x"),
                "span_id": format(context.span_id, "x"),
                "parent_id": span_dict.get("parent_id"),
                "status": span_dict.get("status", {}).get("status_code"),
                "attributes": self._process_large_attributes(attributes),
                "elapsed_ms": round(elapsed_ns / 1e6, 3),
                "elapsed": humanize.precisedelta(
                    timedelta(microseconds=elapsed_ns / 1000), minimum_unit="milliseconds"
                ),
            }
            log_struct(logger, payload, severity=severity)
        return SpanExportResult.SUCCESS

    def shutdown(self) -> None:
        pass

    @staticmethod
    def _process_large_attributes(attributes: dict[str, Any]) -> dict[str, Any]:
        size = len(json.dumps(attributes, default=str).encode())
        if size <= MAX_INLINE_ATTRIBUTES:
            return attributes
        return {"attributes_omitted": True, "attributes_bytes": size}


_provider: TracerProvider | None = None


def configure_tracing(batch: bool = False) -> TracerProvider:
    """Install the provider used by :func:`span`.

    The command line batches exports and flushes on exit; library use exports each span
    as it ends.
    """
    global _provider
    if _provider is not None:
        _provider.shutdown()
    provider = TracerProvider()
    exporter = LoggingSpanExporter()
    processor = export.BatchSpanProcessor(exporter) if batch else export.SimpleSpanProcessor(exporter)
    provider.add_span_processor(processor)
    _provider = provider
    return provider


def flush_tracing() -> None:
    if _provider is not None:
        _provider.force_flush()


def _tracer():
    return (_provider or configure_tracing()).get_tracer("hnpkit")


def _otel_value(value: Any) -> Any:
    if isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)) and all(isinstance(v, (bool, int, float, str)) for v in value):
        return list(value)
    return str(value)


def _otel_attributes(attributes: dict[str, Any]) -> dict[str, Any]:
    return {key: _otel_value(value) for key, value in attributes.items() if value is not None}


@contextmanager
def span(
    name: str,
    logger: logging.Logger | None = None,
    severity: int = logging.DEBUG,
    **attributes: Any,
) -> Iterator[dict[str, Any]]:
    """Run a block inside an OpenTelemetry span that is logged through ``logger``.

    The yielded dict may be filled with result attributes inside the block; they are
    attached to the span when it ends. Nothing is traced when ``logger`` would drop
    records at ``severity``.
    """
    logger = logger or logging.getLogger("hnpkit.trace")
    if not logger.isEnabledFor(severity):
        yield attributes
        return
    routing = {LOGGER_ATTRIBUTE: logger.name, SEVERITY_ATTRIBUTE: severity}
    with _tracer().start_as_current_span(name, attributes=routing) as current:
        try:
            yield attributes
        finally:
            current.set_attributes(_otel_attributes(attributes))
