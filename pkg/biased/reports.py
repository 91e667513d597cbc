# biased/reports.py
import hashlib
from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class RunReport:
    """Plain-text run record: one verdict per line, stable across identical re-runs."""
    command: str
    inputs: list = field(default_factory=list)
    verdicts: list = field(default_factory=list)
    facts: list = field(default_factory=list)
    artifacts: list = field(default_factory=list)

    def add_input(self, path):
        digest = hashlib.sha256(Path(path).read_bytes()).hexdigest()
        self.inputs.append((str(path), digest))

    def add_fact(self, name, value):
        self.facts.append((name, value))

    def check(self, name, passed, detail=""):
        self.verdicts.append((name, bool(passed), detail))
        return passed

    def add_artifact(self, path):
        self.artifacts.append(str(path))

    @property
    def ok(self):
        return all(passed for _, passed, _ in self.verdicts)

    @property
    def failures(self):
        return [name for name, passed, _ in self.verdicts if not passed]

    def lines(self):
        out = [f"command: {self.command}"]
        out += [f"input {path} sha256={digest}" for path, digest in self.inputs]
        out += [f"{name}: {value}" for name, value in self.facts]
        for name, passed, detail in self.verdicts:
            suffix = f" ({detail})" if detail else ""
            out.append(f"{'PASS' if passed else 'FAIL'} {name}{suffix}")
        out += [f"artifact {path}" for path in self.artifacts]
        return out

    def render(self):
        return "\n".join(self.lines()) + "\n"
