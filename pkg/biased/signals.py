# biased/signals.py
import logging

from django.dispatch import Signal, receiver

from .conf import setting
from .exceptions import ThetaPropertyError

logger = logging.getLogger(__name__)

# Sent after every deletion or contraction with operation, edge and result.
minor_taken = Signal()


@receiver(minor_taken)
def assert_theta_property(sender, operation, edge, result, **kwargs):
    """
    Re-check the theta property on every minor when ASSERT_THETA is on.
    - Deletion and contraction must both preserve it.
    - A violation is logged and raised, never ignored.
    """
    if not setting("ASSERT_THETA"):
        return
    from .bias import validate_theta

    verdict = validate_theta(result)
    if not verdict.ok:
        logger.error(f"❌ Theta property lost after {operation} of edge {edge}")
        raise ThetaPropertyError(verdict)
