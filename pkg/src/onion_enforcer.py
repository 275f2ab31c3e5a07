from abc import ABC, abstractmethod
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Iterator, Union

from src.directories import root_dir

__all__ = []


class OnionEnforcerError(Exception):
    def __init__(self, issues: list["OnionIssue"]) -> None:
        super().__init__("\n" + "\n".join(map(str, issues)))
        self.issues = issues


@dataclass
class OnionIssue:
    rule: "ProjectStructureRule"
    file: Path
    line: int

    def __str__(self) -> str:
        return f'{self.rule}: File "{self.file}", line {self.line}'


@dataclass(frozen=True)
class ProjectStructureRule:
    """`lower` may not import `upper`."""

    upper: Union["Module", "File", "Package"]
    lower: Union["Module", "File"]

    def __str__(self) -> str:
        return f"{self.lower} cannot import from {self.upper}"

    def __repr__(self) -> str:
        return f"{self.upper} > {self.lower}"

    def find_issues(self) -> list[OnionIssue]:
        prefixes = [f"{a} {b}" for a, b in product(["from", "import"], self.upper.get_import_names())]
        issues = []
        for py_file in self.lower.iter_files():
            if isinstance(self.upper, File) and py_file == self.upper.path:
                continue
            with py_file.open("r", encoding="utf-8") as f:
                for k, line in enumerate(f):
                    if not line.startswith(("import", "from")):
                        continue
                    # "import src.engine" must not match "import src.engines"
                    if any(line.startswith(p) and line[len(p) : len(p) + 1] in (".", " ", "\n") for p in prefixes):
                        issues.append(OnionIssue(rule=self, file=py_file, line=k + 1))
        return issues


@dataclass(frozen=True)
class Importable(ABC):
    name: str

    @abstractmethod
    def get_import_names(self) -> list[str]:
        pass

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Package(Importable):
    """A third-party or standard library package."""

    def get_import_names(self) -> list[str]:
        return [self.name]


@dataclass(frozen=True)
class Module(Importable):
    """A sub-package of src, e.g. Module("engine")."""

    def __post_init__(self) -> None:
        assert self.path.is_dir()
        assert (self.path / "__init__.py").exists()

    @property
    def path(self) -> Path:
        return root_dir / self.name

    def iter_files(self) -> Iterator[Path]:
        return self.path.rglob("*.py")

    def get_import_names(self) -> list[str]:
        dotted = self.name.replace("/", ".")
        return [f"{root_dir.name}.{dotted}", dotted]

    def __gt__(self, other: Union["Module", "File"]) -> ProjectStructureRule:
        assert isinstance(other, (Module, File))
        return ProjectStructureRule(self, other)

    def __lt__(self, other: Union["Module", "File", Package]) -> ProjectStructureRule:
        assert isinstance(other, (Module, File, Package))
        return ProjectStructureRule(other, self)


@dataclass(frozen=True)
class File(Importable):
    """A single source file without its suffix, relative to src, e.g. File("engine/verifier")."""

    def __post_init__(self) -> None:
        assert self.path.is_file()
        assert not self.name.endswith(".py")

    @property
    def path(self) -> Path:
        return root_dir / (self.name + ".py")

    def iter_files(self) -> Iterator[Path]:
        return iter([self.path])

    def get_import_names(self) -> list[str]:
        dotted = self.name.replace("/", ".")
        return [f"{root_dir.name}.{dotted}", dotted]


def layer_rules() -> list[ProjectStructureRule]:
    module_hierarchy = [Module("app"), Module("engine"), Module("models"), Module("tools")]
    rules: list[ProjectStructureRule] = []

    for k in range(len(module_hierarchy) - 1):
        higher = module_hierarchy[k]
        for lower in module_hierarchy[k + 1 :]:
            rules.append(lower < higher)

    for m in module_hierarchy:
        rules.append(m > File("directories"))
        rules.append(m < File("onion_enforcer"))
    return rules


def domain_rules() -> list[ProjectStructureRule]:
    rules = [
        # The dense oracle checks the compilers, so no compiler may lean on it
        Module("engine") < File("engine/verifier"),
        # Bit algebra stays on plain numpy arrays
        Module("tools") < Package("pandas"),
        Module("tools") < Package("networkx"),
    ]
    for m in [Module("engine"), Module("models"), Module("tools")]:
        rules.append(m < Package("argparse"))
    return rules


def find_issues(rules: list[ProjectStructureRule]) -> list[OnionIssue]:
    return [issue for rule in rules for issue in rule.find_issues()]


def check_repo() -> None:
    issues = find_issues(layer_rules() + domain_rules())
    if len(issues):
        raise OnionEnforcerError(issues)


if __name__ == "__main__":
    check_repo()
