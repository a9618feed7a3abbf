"""Single-file HTTP download with retry and checksum verification.

Features:
- Retry with exponential backoff and jitter for transient failures
- Streaming to ``<dest>.part`` and atomic rename on success
- Optional SHA-256 verification; a mismatching file is never left behind
"""

import hashlib
import os
import random
import time
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path

import httpx

from core.errors import ChecksumMismatch, ConfigError, NetworkError
from core.logging import get_logger

logger = get_logger(__name__)


@dataclass
class RetryConfig:
    """Configuration for retry behavior."""

    max_retries: int = 3
    base_delay: float = 0.5  # seconds
    max_delay: float = 30.0
    exponential_base: float = 2.0
    jitter: bool = True

    retryable_status_codes: tuple[int, ...] = (
        408,  # Request Timeout
        429,  # Too Many Requests
        500,  # Internal Server Error
        502,  # Bad Gateway
        503,  # Service Unavailable
        504,  # Gateway Timeout
    )


def calculate_backoff_delay(attempt: int, config: RetryConfig) -> float:
    """Delay in seconds before retry ``attempt`` (0-indexed), with up to 25% jitter."""
    delay = config.base_delay * (config.exponential_base ** attempt)
    delay = min(delay, config.max_delay)
    if config.jitter:
        delay += delay * 0.25 * random.random()
    return delay


def _discard(*paths: Path) -> None:
    for path in paths:
        path.unlink(missing_ok=True)


def fetch_file(
    url: str,
    dest: Path,
    expected_sha256: str | None = None,
    *,
    timeout: float = 60.0,
    retry_config: RetryConfig | None = None,
    transport: httpx.BaseTransport | None = None,
    sleep: Callable[[float], None] = time.sleep,
) -> Path:
    """
    Download ``url`` to ``dest``.

    Args:
        url: http(s) URL of a single file
        dest: Destination path; parent directories are created
        expected_sha256: Hex digest to verify, case-insensitive
        timeout: Per-request timeout in seconds
        retry_config: Retry policy for transient failures
        transport: Optional httpx transport (tests inject a MockTransport)
        sleep: Backoff sleeper

    Returns:
        ``dest``

    Raises:
        ConfigError: URL is not http(s)
        NetworkError: Non-retryable status, or retries exhausted
        ChecksumMismatch: Digest differs; ``dest`` is removed
    """
    if httpx.URL(url).scheme not in ("http", "https"):
        raise ConfigError(f"only http(s) URLs can be fetched: {url}", url=url)
    retry_config = retry_config or RetryConfig()
    dest = Path(dest)
    dest.parent.mkdir(parents=True, exist_ok=True)
    part = dest.with_name(dest.name + ".part")

    digest = None
    with httpx.Client(transport=transport, timeout=timeout, follow_redirects=True) as client:
        for attempt in range(retry_config.max_retries + 1):
            retries_left = attempt < retry_config.max_retries
            try:
                with client.stream("GET", url) as response:
                    status = response.status_code
                    if status in retry_config.retryable_status_codes and retries_left:
                        delay = calculate_backoff_delay(attempt, retry_config)
                        logger.warning(
                            "fetch_retry", url=url, status=status, attempt=attempt + 1, delay=delay
                        )
                        sleep(delay)
                        continue
                    if status >= 400:
                        raise NetworkError(f"GET {url} returned HTTP {status}", status=status, url=url)
                    sha = hashlib.sha256()
                    with part.open("wb") as handle:
                        for chunk in response.iter_bytes():
                            sha.update(chunk)
                            handle.write(chunk)
                    digest = sha.hexdigest()
                    break
            except httpx.TransportError as e:
                _discard(part)
                if not retries_left:
                    raise NetworkError(f"GET {url} failed: {e}", url=url) from e
                delay = calculate_backoff_delay(attempt, retry_config)
                logger.warning("fetch_retry", url=url, error=str(e), attempt=attempt + 1, delay=delay)
                sleep(delay)

    if expected_sha256 is not None and digest != expected_sha256.lower():
        _discard(part, dest)
        raise ChecksumMismatch(
            f"{url}: sha256 {digest} does not match expected {expected_sha256.lower()}",
            expected=expected_sha256.lower(),
            actual=digest,
        )
    os.replace(part, dest)
    logger.info("file_fetched", url=url, dest=str(dest), sha256=digest)
    return dest
