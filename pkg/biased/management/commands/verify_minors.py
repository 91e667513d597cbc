import logging

from django.core.management.base import BaseCommand

from biased.bias import contract_edge, delete_edge
from biased.constructions import identify
from biased.grouplab import label_contraction, label_deletion, realizes
from biased.reports import RunReport

from ._common import finish, guarded, load

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Check that every single-edge minor of an identified plane graph is group-labellable'
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument('path', help='coloured plane graph file')
        parser.add_argument('--biased', default=None,
                            help='Biased graph to check instead of identify(plane); same edges expected')

    @guarded
    def handle(self, *args, **options):
        path = options['path']
        _, plane = load(path, 'plane')
        report = RunReport(f"verify_minors {path}")
        report.add_input(path)
        if options['biased']:
            _, biased = load(options['biased'], 'biased')
            report.add_input(options['biased'])
        else:
            biased = identify(plane)
        report.add_fact("E", len(biased.graph.edges))

        for e in biased.graph.edge_ids:
            report.check(f"delete {e}", realizes(label_deletion(plane, e), delete_edge(biased, e)))
            report.check(f"contract {e}", realizes(label_contraction(plane, e), contract_edge(biased, e)))

        if not report.ok:
            logger.error(f"❌ {len(report.failures)} minor labelling(s) failed for {path}")
        finish(self, report)
