from django.core.management.base import BaseCommand, CommandError

from biased import serializers
from biased.constructions import identify
from biased.matroids import KINDS, check_circuit_axioms, circuit_hyperplanes, excluded_minor_check, matroid_of
from biased.reports import RunReport

from ._common import USAGE, finish, guarded, load

ACTIONS = ("circuits", "rank", "hyperplanes", "excluded-minor-check")


class Command(BaseCommand):
    help = 'Lift or frame matroid of a biased graph: circuits, rank, circuit-hyperplanes or an excluded-minor check'
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument('path', help='biased graph file, or a plane file (excluded-minor-check needs one)')
        parser.add_argument('--kind', choices=KINDS, default='lift')
        parser.add_argument('--action', choices=ACTIONS, default='circuits')
        parser.add_argument('--out', default=None, help='Write the circuits as a matroid file')

    @guarded
    def handle(self, *args, **options):
        path, kind, action = options['path'], options['kind'], options['action']
        file_kind, obj = load(path, 'biased', 'plane')
        report = RunReport(f"matroid {path} --kind={kind} --action={action}")
        report.add_input(path)

        if action == 'excluded-minor-check':
            if file_kind != 'plane':
                raise CommandError("excluded-minor-check needs a coloured plane graph file", returncode=USAGE)
            return self._excluded_minor(obj, kind, report)

        biased = identify(obj) if file_kind == 'plane' else obj
        matroid = matroid_of(biased, kind)
        report.add_fact("ground", len(matroid))
        report.add_fact("rank", matroid.rank())
        axioms = check_circuit_axioms(matroid)
        if axioms.checked:
            report.check("circuit axioms", axioms.ok, axioms.reason)
        else:
            report.add_fact("circuit axioms", f"skipped ({len(matroid.circuits)} circuits)")
        if action == 'circuits':
            report.add_fact("circuits", len(matroid.circuits))
            for circuit in sorted(matroid.circuits, key=lambda c: (len(c), sorted(c))):
                report.add_fact("circuit", " ".join(str(e) for e in sorted(circuit)))
        elif action == 'hyperplanes':
            hyperplanes = circuit_hyperplanes(matroid)
            report.add_fact("circuit-hyperplanes", len(hyperplanes))
            for hyperplane in hyperplanes:
                report.add_fact("hyperplane", " ".join(str(e) for e in sorted(hyperplane)))
        if options['out']:
            report.add_artifact(serializers.write_text(options['out'], serializers.dump_matroid(matroid)))
        finish(self, report)

    def _excluded_minor(self, plane, kind, report):
        result = excluded_minor_check(plane, kind)
        report.add_fact("rank", result.rank)
        report.add_fact("vertices", result.vertices)
        report.check("rank equals vertex count", result.rank == result.vertices)
        report.check("uniqueness hypotheses", result.unique)
        report.check("not group-labellable", result.not_labellable)
        report.check("single-edge minors labellable", result.minors_labellable)
        report.check("matroid minors agree", result.minors_consistent)
        for failure in result.failures:
            report.add_fact("failure", failure)
        report.check(f"excluded minor for {kind} matroids", result.ok)
        finish(self, report)
