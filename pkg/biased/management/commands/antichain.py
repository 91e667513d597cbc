from django.core.management.base import BaseCommand, CommandError

from biased.bias import verify_antichain
from biased.constructions import antichain_family, build_2Cn
from biased.matroids import KINDS, matroid_antichain
from biased.reports import RunReport

from ._common import USAGE, finish, guarded, id_list, load


class Command(BaseCommand):
    help = 'Check that no member of a family of biased graphs is a minor of another'
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument('paths', nargs='*', help='biased graph files')
        parser.add_argument('--doubled-cycles', default='', help='Comma-separated n for (2C_n, B_n), e.g. 3,4,5')
        parser.add_argument('--coloured-t', type=int, default=None,
                            help='Add identified plane graphs with every face balanced for this t')
        parser.add_argument('--ells', default='4,6', help='Comma-separated ell values for --coloured-t')
        parser.add_argument('--kind', choices=KINDS, default=None,
                            help='Also check the coloured members give a rank-t antichain of lift or frame matroids')

    @guarded
    def handle(self, *args, **options):
        report = RunReport("antichain " + " ".join(
            options['paths'] + [f"--doubled-cycles={options['doubled_cycles']}",
                                f"--coloured-t={options['coloured_t']}", f"--ells={options['ells']}",
                                f"--kind={options['kind']}"]
        ))
        family, names = [], []
        for path in options['paths']:
            _, biased = load(path, 'biased')
            report.add_input(path)
            family.append(biased)
            names.append(path)
        for n in id_list(options['doubled_cycles']):
            family.append(build_2Cn(n))
            names.append(f"2C{n}")
        coloured = []
        if options['coloured_t'] is not None:
            t = options['coloured_t']
            for member in antichain_family(t, id_list(options['ells'])):
                family.append(member)
                coloured.append(member)
                names.append(f"coloured t={t} E={len(member.graph.edges)}")
        if len(family) < 2:
            raise CommandError("an antichain check needs at least two members", returncode=USAGE)
        if options['kind'] and len(coloured) < 2:
            raise CommandError("--kind needs at least two coloured members (--coloured-t, --ells)", returncode=USAGE)

        for name, member in zip(names, family):
            report.add_fact("member", f"{name} V={len(member.graph.vertices)} E={len(member.graph.edges)}")
        verdict = verify_antichain(family)
        detail = ""
        if not verdict.ok:
            small, big = verdict.pair
            detail = f"{names[small]} is a minor of {names[big]} via {verdict.witness.operations}"
        report.check("antichain", verdict.ok, detail)

        if options['kind']:
            kind = options['kind']
            matroids = matroid_antichain(coloured, kind)
            report.add_fact(f"{kind} ranks", " ".join(str(r) for r in matroids.ranks))
            report.check("uniqueness hypotheses", all(matroids.unique))
            report.check(f"rank {options['coloured_t']}", all(r == options['coloured_t'] for r in matroids.ranks))
            report.check(f"{kind} matroid antichain", matroids.ok)
        finish(self, report)
