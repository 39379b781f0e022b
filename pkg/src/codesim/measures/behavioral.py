"""Measures requiring execution or an external model.

Output analysis compiles and runs Java sources in a scratch directory
and compares captured stdout. Embedding similarity talks to an external
provider process over a JSON-lines stdin/stdout protocol.
"""

from __future__ import annotations

import json
import math
import os
import re
import shlex
import shutil
import subprocess
import tempfile
from dataclasses import dataclass

from codesim.core import MeasureId, SimilarityScore, SourceUnit
from codesim.measures.lexical import levenshtein_similarity

JAVA_HOME_ENV = "CODESIM_JAVA_HOME"
EMBED_CMD_ENV = "CODESIM_EMBED_CMD"

DEFAULT_TIMEOUT_MS = 5000
DEFAULT_MAX_OUTPUT_BYTES = 1 << 20

HARNESS_SEED = 42
HARNESS_WORDS = ("alpha", "bravo", "delta", "echo", "foxtrot", "gamma", "omega", "zulu")


class ToolchainMissing(RuntimeError):
    """No usable javac/java pair was found."""


class CompileError(RuntimeError):
    def __init__(self, diagnostics: str):
        super().__init__(diagnostics)
        self.diagnostics = diagnostics


class ProviderUnavailable(RuntimeError):
    """The embedding provider process is absent or broke the protocol fatally."""


class DimensionMismatch(RuntimeError):
    """The provider changed vector dimension mid-session."""


class MalformedResponse(RuntimeError):
    """The provider emitted something that is not a valid response line."""


@dataclass(frozen=True)
class RunResult:
    stdout: str
    exit_status: int
    duration_ms: float
    timed_out: bool


@dataclass(frozen=True)
class EmbeddingVector:
    values: tuple[float, ...]

    @property
    def dim(self) -> int:
        return len(self.values)


def find_java_tools() -> tuple[str, str]:
    """Locate (javac, java), honoring CODESIM_JAVA_HOME over PATH."""
    home = os.environ.get(JAVA_HOME_ENV)
    if home:
        javac = os.path.join(home, "bin", "javac")
        java = os.path.join(home, "bin", "java")
        if os.access(javac, os.X_OK) and os.access(java, os.X_OK):
            return javac, java
        raise ToolchainMissing(f"{JAVA_HOME_ENV}={home} has no usable bin/javac + bin/java")
    javac = shutil.which("javac")
    java = shutil.which("java")
    if javac and java:
        return javac, java
    raise ToolchainMissing("no javac/java on PATH and CODESIM_JAVA_HOME unset")


def toolchain_available() -> bool:
    try:
        find_java_tools()
        return True
    except ToolchainMissing:
        return False


_CLASS_RE = re.compile(r"\bclass\s+([A-Za-z_$][A-Za-z0-9_$]*)")


def _public_class_name(text: str) -> str:
    m = _CLASS_RE.search(text)
    return m.group(1) if m else "Snippet"


def _has_main(text: str) -> bool:
    return re.search(r"\bvoid\s+main\s*\(", text) is not None


_HARNESS = """\
import java.lang.reflect.Method;
import java.lang.reflect.Modifier;
import java.util.Arrays;
import java.util.Comparator;
import java.util.Random;

public class CodesimHarness {{
    static final String[] WORDS = {{"{words}"}};

    public static void main(String[] args) throws Exception {{
        Random rng = new Random({seed});
        Method[] methods = Class.forName("{target}").getDeclaredMethods();
        Arrays.sort(methods, Comparator.comparing(Method::toString));
        for (Method m : methods) {{
            int mods = m.getModifiers();
            if (!Modifier.isPublic(mods) || !Modifier.isStatic(mods)) continue;
            Object[] call = new Object[m.getParameterCount()];
            boolean ok = true;
            for (int i = 0; i < call.length; i++) {{
                Class<?> p = m.getParameterTypes()[i];
                if (p == int.class || p == Integer.class) call[i] = rng.nextInt(201) - 100;
                else if (p == long.class || p == Long.class) call[i] = (long) (rng.nextInt(201) - 100);
                else if (p == double.class || p == Double.class)
                    call[i] = Math.round((rng.nextDouble() * 200 - 100) * 10000.0) / 10000.0;
                else if (p == float.class || p == Float.class)
                    call[i] = (float) (Math.round((rng.nextDouble() * 200 - 100) * 10000.0) / 10000.0);
                else if (p == boolean.class || p == Boolean.class) call[i] = rng.nextBoolean();
                else if (p == String.class) call[i] = WORDS[rng.nextInt(WORDS.length)];
                else {{ ok = false; break; }}
            }}
            if (!ok) continue;
            Object result = m.invoke(null, call);
            if (m.getReturnType() != void.class) System.out.println(result);
        }}
    }}
}}
"""


def harness_source(target_class: str) -> str:
    """Reflective entry point invoking each public static method of target."""
    return _HARNESS.format(
        target=target_class, seed=HARNESS_SEED, words='", "'.join(HARNESS_WORDS)
    )


def run_program(
    src: SourceUnit,
    timeout_ms: int = DEFAULT_TIMEOUT_MS,
    max_output_bytes: int = DEFAULT_MAX_OUTPUT_BYTES,
) -> RunResult:
    """Compile and execute one source file in an isolated scratch directory."""
    javac, java = find_java_tools()
    cls = _public_class_name(src.text)
    with tempfile.TemporaryDirectory(prefix="codesim-run-") as workdir:
        src_path = os.path.join(workdir, f"{cls}.java")
        with open(src_path, "w", encoding="utf-8") as fh:
            fh.write(src.text)
        to_compile = [src_path]
        entry = cls
        if not _has_main(src.text):
            harness_path = os.path.join(workdir, "CodesimHarness.java")
            with open(harness_path, "w", encoding="utf-8") as fh:
                fh.write(harness_source(cls))
            to_compile.append(harness_path)
            entry = "CodesimHarness"
        compile_proc = subprocess.run(
            [javac, *to_compile], cwd=workdir, capture_output=True, text=True, timeout=60
        )
        if compile_proc.returncode != 0:
            raise CompileError(compile_proc.stderr)
        import time

        start = time.perf_counter()
        try:
            run_proc = subprocess.run(
                [java, "-cp", workdir, entry],
                cwd=workdir,
                capture_output=True,
                timeout=timeout_ms / 1000.0,
            )
            stdout = run_proc.stdout[:max_output_bytes].decode("utf-8", errors="replace")
            return RunResult(
                stdout=stdout,
                exit_status=run_proc.returncode,
                duration_ms=(time.perf_counter() - start) * 1000.0,
                timed_out=False,
            )
        except subprocess.TimeoutExpired as exc:
            partial = (exc.stdout or b"")[:max_output_bytes].decode("utf-8", errors="replace")
            return RunResult(
                stdout=partial,
                exit_status=-1,
                duration_ms=(time.perf_counter() - start) * 1000.0,
                timed_out=True,
            )


def normalize_output(text: str) -> str:
    lines = [re.sub(r"\s+", " ", ln).strip() for ln in text.lower().split("\n")]
    while lines and not lines[-1]:
        lines.pop()
    return "\n".join(lines)


def _numeric_lines(text: str) -> list[float] | None:
    values = []
    for ln in text.split("\n"):
        if not ln:
            return None
        try:
            values.append(float(ln))
        except ValueError:
            return None
    return values


def compare_outputs(out_a: str, out_b: str) -> float:
    """Similarity of normalized stdouts (the pure part of output analysis)."""
    na, nb = normalize_output(out_a), normalize_output(out_b)
    if na == nb:
        return 1.0
    va, vb = _numeric_lines(na), _numeric_lines(nb)
    if va is not None and vb is not None:
        matches = sum(1 for x, y in zip(va, vb) if x == y)
        return matches / max(len(va), len(vb))
    return levenshtein_similarity(na, nb)


def sim_output(
    a: SourceUnit,
    b: SourceUnit,
    timeout_ms: int = DEFAULT_TIMEOUT_MS,
    warnings: list[str] | None = None,
) -> SimilarityScore:
    """Compare captured program outputs; any failure on either side is 0.0."""
    outs = []
    for unit in (a, b):
        try:
            result = run_program(unit, timeout_ms=timeout_ms)
        except CompileError:
            if warnings is not None:
                warnings.append(f"{unit.id}: compile error")
            return SimilarityScore(0.0, MeasureId.OUTPUT)
        if result.timed_out:
            if warnings is not None:
                warnings.append(f"{unit.id}: timeout")
            return SimilarityScore(0.0, MeasureId.OUTPUT)
        outs.append(result.stdout)
    return SimilarityScore(compare_outputs(outs[0], outs[1]), MeasureId.OUTPUT)


class EmbeddingProvider:
    """Client for the line-delimited JSON embedding protocol.

    The provider command is started once; requests are sent on stdin and
    answered in order on stdout. The vector dimension is pinned by the
    first response.
    """

    def __init__(self, command: str | None = None):
        self.command = command if command is not None else os.environ.get(EMBED_CMD_ENV)
        self._proc: subprocess.Popen | None = None
        self._dim: int | None = None
        self._next_id = 0
        self._cache: dict[str, EmbeddingVector] = {}

    def available(self) -> bool:
        return bool(self.command)

    def _ensure_started(self) -> subprocess.Popen:
        if not self.command:
            raise ProviderUnavailable(f"{EMBED_CMD_ENV} is not configured")
        if self._proc is None or self._proc.poll() is not None:
            try:
                self._proc = subprocess.Popen(
                    shlex.split(self.command),
                    stdin=subprocess.PIPE,
                    stdout=subprocess.PIPE,
                    text=True,
                    bufsize=1,
                )
            except OSError as exc:
                raise ProviderUnavailable(str(exc)) from exc
        return self._proc

    def embed(self, src: SourceUnit) -> EmbeddingVector:
        if src.id in self._cache:
            return self._cache[src.id]
        proc = self._ensure_started()
        self._next_id += 1
        req_id = str(self._next_id)
        assert proc.stdin is not None and proc.stdout is not None
        proc.stdin.write(json.dumps({"id": req_id, "text": src.text}) + "\n")
        proc.stdin.flush()
        line = proc.stdout.readline()
        if not line:
            raise ProviderUnavailable("provider closed its stdout")
        try:
            payload = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedResponse(line.strip()) from exc
        if payload.get("id") != req_id:
            raise MalformedResponse(f"expected id {req_id}, got {payload.get('id')!r}")
        if "error" in payload:
            raise MalformedResponse(payload["error"])
        values = payload.get("vector")
        if not isinstance(values, list) or not all(
            isinstance(v, (int, float)) and math.isfinite(v) for v in values
        ):
            raise MalformedResponse("vector must be a list of finite reals")
        if self._dim is None:
            self._dim = len(values)
        elif len(values) != self._dim:
            raise DimensionMismatch(f"dimension {len(values)} != session dimension {self._dim}")
        vec = EmbeddingVector(tuple(float(v) for v in values))
        self._cache[src.id] = vec
        return vec

    def close(self) -> None:
        if self._proc is not None and self._proc.poll() is None:
            assert self._proc.stdin is not None
            self._proc.stdin.close()
            try:
                self._proc.wait(timeout=5)
            except subprocess.TimeoutExpired:
                self._proc.kill()
        self._proc = None


def cosine_vectors(u: tuple[float, ...], v: tuple[float, ...]) -> float:
    if u == v and any(u):
        # Exact identity: skip the norms so rounding cannot yield 1 - eps.
        return 1.0
    nu = math.sqrt(sum(x * x for x in u))
    nv = math.sqrt(sum(x * x for x in v))
    if nu == 0.0 and nv == 0.0:
        return 1.0
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return sum(x * y for x, y in zip(u, v)) / (nu * nv)


def sim_embedding(a: SourceUnit, b: SourceUnit, provider: EmbeddingProvider) -> SimilarityScore:
    """Clamped cosine between provider embeddings."""
    va = provider.embed(a)
    vb = provider.embed(b)
    return SimilarityScore(max(0.0, cosine_vectors(va.values, vb.values)), MeasureId.EMBEDDING)
