"""Shared fixtures: worked-example sources, a synthetic corpus, and a
small on-disk dataset in the expected benchmark layout."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from codesim.core import SourceUnit

T1_TEXT = """\
public class T1 {
    public static void main(String[] args) {
        System.out.println("Welcome to Java");
        System.out.println("Welcome to Java");
        System.out.println("Welcome to Java");
        System.out.println("Welcome to Java");
        System.out.println("Welcome to Java");
    }
}
"""

T01_TEXT = """\
public class T01 {
    public static void main(String[] args){

        for(int i = 0; i < 5; i++){
            System.out.println("Welcome To Java");
        }

    }
}
"""

TEMPERATURE_TEXT = """\
public class TemperatureConverter {
    public static double celsiusToFahrenheit(double cels) {
        return cels * 9 / 5 + 32;
    }
}
"""

CURRENCY_TEXT = """\
public class CurrencyConverter {
    public static double usdToEur(double usd) {
        return usd * 85 / 100;
    }
}
"""


def unit(text: str, uid: str = "u", task: str | None = None) -> SourceUnit:
    return SourceUnit(id=uid, path=uid, text=text, task_id=task)


@pytest.fixture
def t1() -> SourceUnit:
    return unit(T1_TEXT, "t1")


@pytest.fixture
def t01() -> SourceUnit:
    return unit(T01_TEXT, "t01")


@pytest.fixture
def temperature() -> SourceUnit:
    return unit(TEMPERATURE_TEXT, "temperature")


@pytest.fixture
def currency() -> SourceUnit:
    return unit(CURRENCY_TEXT, "currency")


def synthetic_corpus(count: int = 20) -> list[SourceUnit]:
    """Deterministic small Java files with varied structure."""
    units = []
    for i in range(count):
        name = f"Sample{i}"
        body = []
        if i % 3 == 0:
            body.append(f"        // generated sample number {i}")
        body.append(f"        int total{i} = {i};")
        if i % 2 == 0:
            body.append(f"        for (int k = 0; k < {i + 1}; k++) {{")
            body.append(f"            total{i} += k * {i + 2};")
            body.append("        }")
        if i % 4 == 1:
            body.append(f"        if (total{i} > {i * 3}) {{")
            body.append(f'            System.out.println("big {i}");')
            body.append("        }")
        if i % 5 != 2:
            body.append(f"        System.out.println(total{i});")
        text = (
            f"public class {name} {{\n"
            f"    public static void main(String[] args) {{\n"
            + "\n".join(body)
            + "\n    }\n}\n"
        )
        units.append(unit(text, f"sample{i}", task="synthetic"))
    return units


@pytest.fixture(scope="session")
def corpus20() -> list[SourceUnit]:
    return synthetic_corpus(20)


def write_fixture_dataset(root: Path) -> Path:
    """One-task layout: 1 original, 2 plagiarized, 2 non-plagiarized files."""
    task = root / "task1"
    (task / "original").mkdir(parents=True)
    (task / "plagiarized" / "L1").mkdir(parents=True)
    (task / "non-plagiarized").mkdir(parents=True)
    (task / "original" / "T1.java").write_text(T1_TEXT)
    (task / "plagiarized" / "L1" / "T01.java").write_text(T01_TEXT)
    (task / "plagiarized" / "L1" / "T02.java").write_text(T1_TEXT.replace("T1", "T2"))
    (task / "non-plagiarized" / "Temp.java").write_text(TEMPERATURE_TEXT)
    (task / "non-plagiarized" / "Curr.java").write_text(CURRENCY_TEXT)
    return root


@pytest.fixture
def fixture_dataset(tmp_path: Path) -> Path:
    return write_fixture_dataset(tmp_path / "dataset")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One line per acceptance criterion at the end of the run."""
    rows: dict[str, str] = {}
    for outcome in ("passed", "failed", "skipped"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion" not in nodeid:
                continue
            name = nodeid.split("::")[-1]
            label = outcome.upper()
            if outcome == "skipped" and rep.longrepr:
                label += f" ({rep.longrepr[-1].removeprefix('Skipped: ')})"
            # setup-phase skip and call-phase outcome both report; keep the worst.
            if rows.get(name) != "FAILED":
                rows[name] = label
    if rows:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for name in sorted(rows):
            terminalreporter.write_line(f"  {name}: {rows[name]}")
