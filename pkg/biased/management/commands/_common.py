# biased/management/commands/_common.py
import functools
import logging
from pathlib import Path

from django.core.management.base import CommandError

from biased import serializers
from biased.constructions import ColouredPlaneGraph
from biased.exceptions import BiasedGraphError, ParseError, ResourceLimitError, UnsupportedParametersError

logger = logging.getLogger(__name__)

# Exit codes shared by every command.
CHECK_FAILED = 1
USAGE = 2
RESOURCE_LIMIT = 3

LOADERS = {
    "graph": serializers.load_graph,
    "biased": serializers.load_biased,
    "plane": serializers.load_plane,
    "labelling": serializers.load_labelling,
    "presentation": serializers.load_presentation,
    "certificate": serializers.load_certificate,
    "matroid": serializers.load_matroid,
}


def guarded(handle):
    """Map library errors onto CommandError exit codes."""

    @functools.wraps(handle)
    def wrapper(self, *args, **options):
        try:
            return handle(self, *args, **options)
        except CommandError:
            raise
        except ResourceLimitError as exc:
            logger.error(f"❌ {exc}")
            raise CommandError(str(exc), returncode=RESOURCE_LIMIT) from exc
        except (ParseError, UnsupportedParametersError, ValueError, OSError) as exc:
            raise CommandError(str(exc), returncode=USAGE) from exc
        except BiasedGraphError as exc:
            logger.error(f"❌ {exc}")
            raise CommandError(str(exc), returncode=CHECK_FAILED) from exc

    return wrapper


def load(path, *kinds):
    """Parse a file, insisting on one of `kinds` when given."""
    text = Path(path).read_text()
    kind = serializers.read_format(path)
    if kinds and kind not in kinds:
        raise CommandError(f"{path}: expected format {' or '.join(kinds)}, got {kind}", returncode=USAGE)
    if kind not in LOADERS:
        raise CommandError(f"{path}: unknown format {kind}", returncode=USAGE)
    obj = LOADERS[kind](text)
    # Every command identifies the plane graphs it reads.
    if kind == "plane" and not isinstance(obj, ColouredPlaneGraph):
        raise CommandError(f"{path}: plane graph has no palette or colouring", returncode=USAGE)
    return kind, obj


def finish(command, report):
    """Write the report to stdout and fail with exit code 1 if any verdict failed."""
    command.stdout.write(report.render(), ending="")
    if not report.ok:
        raise CommandError(f"{len(report.failures)} check(s) failed", returncode=CHECK_FAILED)
    command.stdout.write(command.style.SUCCESS("✅ All checks passed"))


def id_list(text):
    return [int(token) for token in text.split(",") if token.strip()]
