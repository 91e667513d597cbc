from django.core.management.base import BaseCommand, CommandError

from biased import grouplab, serializers
from biased.bias import contract_edge, delete_edge
from biased.constructions import antichain_member, build_2Cn, identify
from biased.reports import RunReport

from ._common import USAGE, finish, guarded, id_list, load

KINDS = ("doubled-cycle", "contraction", "deletion", "antichain-member", "tautological")


class Command(BaseCommand):
    help = 'Emit a group labelling for a construction or its single-edge minors, and check that it realises it'
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument('kind', choices=KINDS)
        parser.add_argument('--n', type=int, default=3, help='Cycle length (doubled-cycle)')
        parser.add_argument('--plane', default=None, help='Coloured plane graph file (contraction, deletion, antichain-member)')
        parser.add_argument('--edge', type=int, default=None, help='Edge to delete or contract')
        parser.add_argument('--biased', default=None, help='Biased graph file (tautological)')
        parser.add_argument('--tree', default=None, help='Comma-separated spanning tree edges (tautological)')
        parser.add_argument('--presentation', default=None, help='Where to write the presentation (tautological)')
        parser.add_argument('--out', default=None, help='Where to write the labelling; stdout otherwise')

    @guarded
    def handle(self, *args, **options):
        kind = options['kind']
        report = RunReport(f"label {kind}")
        labelling, target = self._labelling(kind, options, report)

        text = serializers.dump_labelling(labelling)
        if options['out']:
            report.add_artifact(serializers.write_text(options['out'], text))
        else:
            self.stdout.write(text, ending="")
        if kind == 'tautological':
            # Free values; the relators above are what would make the balanced cycles trivial.
            report.add_fact("balanced under labelling", len(grouplab.balanced_set(labelling)))
        else:
            report.check("realizes", grouplab.realizes(labelling, target))
        finish(self, report)

    def _labelling(self, kind, options, report):
        if kind == 'doubled-cycle':
            return grouplab.label_2Cn(options['n']), build_2Cn(options['n'])

        if kind == 'tautological':
            if not options['biased']:
                raise CommandError("tautological needs --biased", returncode=USAGE)
            _, biased = load(options['biased'], 'biased')
            report.add_input(options['biased'])
            tree = id_list(options['tree']) if options['tree'] else None
            labelling, presentation = grouplab.tautological_labelling(biased, tree)
            report.add_fact("generators", len(presentation.generators))
            report.add_fact("relators", len(presentation.relators))
            report.add_fact("abelianization rank", presentation.abelianization_rank())
            if options['presentation']:
                text = serializers.dump_presentation(presentation)
                report.add_artifact(serializers.write_text(options['presentation'], text))
            return labelling, biased

        if not options['plane']:
            raise CommandError(f"{kind} needs --plane", returncode=USAGE)
        _, plane = load(options['plane'], 'plane')
        report.add_input(options['plane'])
        if kind == 'antichain-member':
            return grouplab.label_antichain_member(plane), antichain_member(plane)

        e = options['edge']
        if e is None:
            raise CommandError(f"{kind} needs --edge", returncode=USAGE)
        if not plane.graph.has_edge(e):
            raise CommandError(f"edge {e} is not in {options['plane']}", returncode=USAGE)
        report.add_fact("edge", e)
        if kind == 'contraction':
            return grouplab.label_contraction(plane, e), contract_edge(identify(plane), e)
        return grouplab.label_deletion(plane, e), delete_edge(identify(plane), e)
