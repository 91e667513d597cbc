from pathlib import Path

from django.core.management.base import BaseCommand

from biased import constructions, serializers
from biased.reports import RunReport

from ._common import guarded

FAMILIES = ("F", "H", "general", "cycle", "doubled-cycle")


class Command(BaseCommand):
    help = 'Generate a coloured plane graph and its identified biased graph (or a doubled cycle)'
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument('family', choices=FAMILIES)
        parser.add_argument('--k', type=int, default=2, help='Half the rim length (F, H, cycle)')
        parser.add_argument('--t', type=int, default=3, help='Number of colours (general, cycle)')
        parser.add_argument('--ell', type=int, default=1, help='Edges required per colour pair (general)')
        parser.add_argument('--n', type=int, default=3, help='Cycle length (doubled-cycle)')
        parser.add_argument('--all-faces', action='store_true',
                            help='Balance the outer face too (antichain member)')
        parser.add_argument('--out', default='.', help='Output directory')

    @guarded
    def handle(self, *args, **options):
        family = options['family']
        out = Path(options['out'])
        report = RunReport(f"generate {family} " + " ".join(
            f"--{key}={options[key]}" for key in ('k', 't', 'ell', 'n', 'all_faces')
        ))

        if family == 'doubled-cycle':
            biased = constructions.build_2Cn(options['n'])
            name = f"2C{options['n']}"
            plane = None
        else:
            plane, name = self._build_plane(family, options)
            biased = constructions.identify(plane, include_outer=options['all_faces'])
            report.add_fact("V", len(plane.graph.vertices))
            report.add_fact("E", len(plane.graph.edges))
            report.add_fact("t", len(plane.palette))
            report.add_artifact(serializers.write_text(out / f"{name}.plane", serializers.dump_plane(plane)))

        report.add_fact("|B|", len(biased.balanced))
        report.add_artifact(serializers.write_text(out / f"{name}.biased", serializers.dump_biased(biased)))
        self.stdout.write(report.render(), ending="")
        self.stdout.write(self.style.SUCCESS(f"✅ Generated {name}"))

    def _build_plane(self, family, options):
        k, t, ell = options['k'], options['t'], options['ell']
        if family == 'F':
            return constructions.build_F(k), f"F{2 * k}"
        if family == 'H':
            return constructions.build_H(k), f"H{2 * k}"
        if family == 'general':
            return constructions.build_coloured_planar(t, ell), f"general_t{t}_l{ell}"
        return constructions.build_cycle_construction(t, k), f"cycle_t{t}_k{k}"
