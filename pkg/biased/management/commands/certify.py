from django.core.management.base import BaseCommand

from biased import serializers
from biased.certify import search_certificate, shelling_certificate, validate
from biased.constructions import identify
from biased.reports import RunReport

from ._common import finish, guarded, load

NOT_LABELLABLE = "not-group-labellable"
NO_CERTIFICATE = "no-certificate-within-bounds"


class Command(BaseCommand):
    help = 'Certify that a biased graph is not group-labellable, or re-validate a certificate file'
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument('path', help='plane, biased or certificate file')
        parser.add_argument('--max-walk-len', type=int, default=None)
        parser.add_argument('--max-steps', type=int, default=None)
        parser.add_argument('--out', default=None, help='Where to write the certificate')

    @guarded
    def handle(self, *args, **options):
        path = options['path']
        kind, obj = load(path, 'plane', 'biased', 'certificate')
        report = RunReport(f"certify {path}")
        report.add_input(path)

        if kind == 'certificate':
            biased, certificate = obj
            verdict = validate(biased, certificate)
            detail = "" if verdict.ok else f"walk {verdict.index}: {verdict.reason}"
            report.check("certificate valid", verdict.ok, detail)
            report.add_fact("verdict", NOT_LABELLABLE if verdict.ok else "invalid-certificate")
            return finish(self, report)

        if kind == 'plane':
            biased = identify(obj)
            certificate = shelling_certificate(obj)
            report.add_fact("method", "shelling")
        else:
            biased = obj
            certificate = search_certificate(biased, options['max_walk_len'], options['max_steps'])
            report.add_fact("method", "search")

        if certificate is None:
            report.add_fact("verdict", NO_CERTIFICATE)
            return finish(self, report)

        report.add_fact("verdict", NOT_LABELLABLE)
        report.add_fact("steps", len(certificate))
        report.check("certificate valid", validate(biased, certificate).ok)
        if options['out']:
            text = serializers.dump_certificate(biased, certificate)
            report.add_artifact(serializers.write_text(options['out'], text))
        finish(self, report)
