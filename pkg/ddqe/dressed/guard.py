from __future__ import annotations

from ..logging import get_logger

logger = get_logger(__name__)


class ValidityGuard:
    """Tracks the accumulated dissipator strength int rate dt of a perturbative run.

    Activates once the integral exceeds ``threshold``; the run continues but every
    later time point is flagged as outside the validity window.
    """

    def __init__(self, threshold: float = 0.5, enabled: bool = True, name: str = "ValidityGuard"):
        self.name = name
        self.threshold = threshold
        self.enabled = enabled
        self.accumulated = 0.0
        self.activated = False
        self.activation_time: float | None = None
        self.activation_reason: str | None = None
        self._last: tuple[float, float] | None = None

    def check(self, t: float, rate: float) -> bool:
        """Feed the rate at time t (non-decreasing t); return True once activated."""
        if self._last is not None:
            t_prev, rate_prev = self._last
            self.accumulated += 0.5 * (rate + rate_prev) * (t - t_prev)
        self._last = (t, rate)

        if self.activated or not self.enabled:
            return self.activated

        if self.accumulated > self.threshold:
            reason = (
                f"accumulated dissipator strength {self.accumulated:.3f} exceeds "
                f"{self.threshold:.3f}; perturbative validity window left"
            )
            self.activate(reason, t)
            logger.warning(reason, extra={"t": t})
            return True

        return False

    def activate(self, reason: str, t: float) -> None:
        self.activated = True
        self.activation_time = t
        self.activation_reason = reason

    def reset(self) -> None:
        self.accumulated = 0.0
        self.activated = False
        self.activation_time = None
        self.activation_reason = None
        self._last = None
