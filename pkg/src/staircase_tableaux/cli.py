"""Command-line front end over the exact enumeration, measure and samplers.

Every table is CSV: comma separators, header row, LF endings, UTF-8, rows
sorted by the sweep key.  Columns feeding an equality check carry exact
values as p/q strings; float columns beside them are advisory renderings.
With --out DIR each table lands in DIR next to a manifest JSON recording the
argv, seed, parameters, ranges, library version and a sha256 per output
file, and the table's first line names its manifest.  ``report`` walks such
a bundle, re-hashes every artifact and folds the verdicts into the
acceptance checklist.

Exit codes are a contract: 0 clean, 1 when any check fails, 2 for usage
errors.  Randomized commands refuse to run without an explicit --seed.
"""

from __future__ import annotations

import hashlib
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import click

from . import __version__
from . import diagonal_stats as ds
from . import enumeration as en
from . import measure as ms
from . import sampling as sp
from . import structure as stc
from .measure import DEFAULT_PARAMS_GRID, Params, format_rational, parse_rational
from .tableau import Symbol, diagonal_boxes, format_grid, format_json

#: Acceptance checklist: id -> what the criterion checks, in plain terms.
CRITERIA = {
    "1": "enumeration counts equal the closed-form totals, n = 1..8",
    "2": "probabilities sum to one across the parameter grid, n <= 7",
    "3": "diagonal marginal closed forms equal brute force, n <= 7",
    "4": "corner-deletion law shows zero discrepancy, n <= 6",
    "5": "the double-sum identity holds, r <= 4, m <= 14",
    "6": "factorial moments agree across both routes, r <= 3, n <= 7",
    "7": "k=2 mean formula exact and Poisson distance strictly decreasing",
    "8": "scaled joint-probability errors flat or shrinking over n",
    "9": "independence gap strictly decreasing, n = 5..10",
    "10": "parameter-swapped laws coincide under reflection, n <= 7",
    "11": "corner-structure sweep reports zero property violations, n <= 6",
    "12": "configuration counts are nonnegative integers, stable across n",
    "13": "samplers match exact laws (chi-square p > 1e-3)",
}

_SYMBOL_CODES = {"a": Symbol.ALPHA, "b": Symbol.BETA, "empty": None, "x": "x", "any": "x"}


def _bool(x) -> str:
    return "true" if x else "false"


def _rational(text: str, flag: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.UsageError(f"{flag}: {exc}")


def _int_range(text: str, flag: str) -> list[int]:
    """Parse N or LO..HI (inclusive) into an ascending list."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise click.UsageError(f"{flag}: expected N or LO..HI, got {text!r}")
    if lo > hi:
        raise click.UsageError(f"{flag}: empty range {text!r}")
    return list(range(lo, hi + 1))


def _params_grid(text: str) -> list[Params]:
    """Grid syntax: 'default', or 'a,b;a,b;...' with rational entries."""
    if text == "default":
        return list(DEFAULT_PARAMS_GRID)
    grid = []
    for part in text.split(";"):
        pieces = part.split(",")
        if len(pieces) != 2:
            raise click.UsageError(f"--grid: expected a,b pairs, got {part!r}")
        grid.append(Params(_rational(pieces[0], "--grid"), _rational(pieces[1], "--grid")))
    return grid


def _load_events(path: str):
    """Events file: JSON list of [k, j, "a"|"b"|"empty"|"x"] triples."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"--events: cannot read {path}: {exc}")
    if not isinstance(raw, list):
        raise click.UsageError("--events: file must hold a JSON list")
    events = []
    for item in raw:
        if not (isinstance(item, list) and len(item) == 3):
            raise click.UsageError(f"--events: expected [k, j, symbol], got {item!r}")
        k, j, content = item
        if content not in _SYMBOL_CODES:
            raise click.UsageError(f"--events: unknown symbol {content!r}")
        try:
            events.append(en.make_event(int(k), int(j), _SYMBOL_CODES[content]))
        except ValueError as exc:
            raise click.UsageError(f"--events: {exc}")
    return tuple(events)


def _events_repr(events) -> str:
    names = {en.ALPHA: "a", en.BETA: "b", en.EMPTY: "empty", en.ANY: "x"}
    return json.dumps([[k, j, names[code]] for k, j, code in events])


def _slope_ok(series: list[tuple[int, float]], tolerance: float = 0.3) -> tuple[float | None, bool]:
    """Least-squares log-log slope over the positive entries; flat-or-falling
    passes.  All-zero or single-point series carry no growth and pass."""
    pts = [(math.log(n), math.log(v)) for n, v in series if v > 0]
    if len(pts) < 2:
        return None, True
    mx = sum(x for x, _ in pts) / len(pts)
    my = sum(y for _, y in pts) / len(pts)
    denom = sum((x - mx) ** 2 for x, _ in pts)
    if denom == 0:
        return None, True
    slope = sum((x - mx) * (y - my) for x, y in pts) / denom
    return slope, slope <= tolerance


@dataclass
class Run:
    """One command invocation: collects tables, verdicts and the manifest."""

    command: str
    out_dir: Path | None
    tag: str | None
    seed: int | None = None
    params: dict | None = None
    ranges: dict | None = None
    criteria: list[str] = field(default_factory=list)
    verdicts: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return f"{self.command}-{self.tag}" if self.tag else self.command

    @property
    def manifest_name(self) -> str:
        return f"{self.name}.manifest.json"

    def _write(self, basename: str, payload: str) -> None:
        path = self.out_dir / basename
        path.write_text(payload, encoding="utf-8", newline="\n")
        self.outputs[basename] = hashlib.sha256(payload.encode("utf-8")).hexdigest()
        click.echo(f"wrote {path}")

    def table(self, header: list[str], rows: list[list[str]], suffix: str = "") -> None:
        buf = io.StringIO()
        if self.out_dir is not None:
            buf.write(f"# manifest: {self.manifest_name}\n")
        buf.write(",".join(header) + "\n")
        for row in rows:
            buf.write(",".join(row) + "\n")
        if self.out_dir is None:
            click.echo(buf.getvalue(), nl=False)
        else:
            self._write(f"{self.name}{suffix}.csv", buf.getvalue())

    def text(self, payload: str, extension: str) -> None:
        if self.out_dir is None:
            click.echo(payload, nl=False)
        else:
            self._write(f"{self.name}.{extension}", payload)

    def finish(self, ok: bool) -> None:
        if self.out_dir is not None:
            manifest = {
                "command": self.command,
                "name": self.name,
                "argv": sys.argv[1:],
                "version": __version__,
                "seed": self.seed,
                "params": self.params,
                "ranges": self.ranges,
                "criteria": self.criteria,
                "verdicts": self.verdicts,
                "ok": ok,
                "outputs": self.outputs,
            }
            path = self.out_dir / self.manifest_name
            path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
            click.echo(f"wrote {path}")
        if not ok:
            raise SystemExit(1)


def common_options(fn):
    fn = click.option("--a", "a_text", default="1", metavar="P/Q", help="First weight parameter.")(fn)
    fn = click.option("--b", "b_text", default="1", metavar="P/Q", help="Second weight parameter.")(fn)
    fn = click.option("--seed", type=int, default=None, help="Seed for randomized commands.")(fn)
    fn = click.option("--out", "out_dir", type=click.Path(file_okay=False), default=None,
                      help="Directory for artifacts plus manifest.")(fn)
    fn = click.option("--tag", default=None, help="Suffix distinguishing runs of one command in a bundle.")(fn)
    return fn


def _start(ctx_command: str, a_text: str, b_text: str, seed, out_dir, tag, **ranges) -> tuple[Run, Params]:
    a = _rational(a_text, "--a")
    b = _rational(b_text, "--b")
    if a < 0 or b < 0:
        raise click.UsageError("parameters must be nonnegative")
    out = None
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
    run = Run(
        ctx_command,
        out,
        tag,
        seed=seed,
        params={"a": format_rational(a), "b": format_rational(b)},
        ranges={k: v for k, v in ranges.items() if v is not None},
    )
    return run, Params(a, b)


@click.group()
@click.version_option(version=__version__)
def main():
    """Exact staircase-tableau experiments at a shell.

    Tables are CSV with exact p/q columns for anything checked and float
    columns for reading; --out DIR adds a manifest per run and `report`
    re-verifies a directory of such runs.
    """


@main.command("enumerate")
@click.option("--n", "n_text", required=True, metavar="N|LO..HI",
              help="Size, or size range with --count-only.")
@click.option("--events", "events_path", type=click.Path(exists=True), default=None,
              help="JSON file of [k, j, symbol] constraints.")
@click.option("--count-only", is_flag=True, help="Emit counts instead of tableaux.")
@click.option("--format", "fmt", type=click.Choice(["grid", "json"]), default="grid")
@common_options
def enumerate_cmd(n_text, events_path, count_only, fmt, a_text, b_text, seed, out_dir, tag):
    """List valid tableaux, or count them against the closed-form total."""
    ns = _int_range(n_text, "--n")
    events = _load_events(events_path) if events_path else ()
    run, _ = _start("enumerate", a_text, b_text, seed, out_dir, tag, n=n_text)
    if count_only:
        rows = []
        ok = True
        for n in ns:
            count = sum(1 for _ in en.enumerate_filtered(n, events)) if events else en.count_tableaux(n)
            if events:
                rows.append([str(n), str(count), "", ""])
            else:
                expected = ms.falling_factorial(Fraction(n + 1), n)
                equal = count == expected
                ok = ok and equal
                rows.append([str(n), str(count), format_rational(expected), _bool(equal)])
        run.criteria = [] if events else ["1"]
        run.verdicts = {"sizes": len(ns), "all_equal": ok if not events else None}
        run.table(["n", "count", "expected", "equal"], rows)
        run.finish(ok)
        return
    if len(ns) != 1:
        raise click.UsageError("--n must be a single size unless --count-only is given")
    tableaux = list(en.enumerate_filtered(ns[0], events))
    if fmt == "grid":
        run.text("\n\n".join(format_grid(t) for t in tableaux) + "\n", "txt")
    else:
        run.text("".join(format_json(t) + "\n" for t in tableaux), "jsonl")
    run.verdicts = {"count": len(tableaux)}
    run.finish(True)


@main.command("verify-partition")
@click.option("--n", "n_text", default="1..7", metavar="LO..HI")
@click.option("--grid", "grid_text", default="default",
              help="'default' or semicolon-separated a,b pairs.")
@common_options
def verify_partition(n_text, grid_text, a_text, b_text, seed, out_dir, tag):
    """Check the product formula for the total weight against brute force."""
    ns = _int_range(n_text, "--n")
    grid = _params_grid(grid_text)
    run, _ = _start("verify-partition", a_text, b_text, seed, out_dir, tag, n=n_text)
    run.params = {"grid": [[format_rational(p.a), format_rational(p.b)] for p in grid]}
    rows = []
    ok = True
    for n in ns:
        profile = en.weight_profile(n)
        for p in sorted(grid, key=lambda q: (q.a, q.b)):
            formula = ms.falling_factorial(p.a + p.b + n - 1, n)
            total = ms.evaluate_profile(profile, p)
            equal = total == formula
            ok = ok and equal
            prob_sum = total / formula if formula else Fraction(0)
            rows.append([
                str(n), format_rational(p.a), format_rational(p.b),
                format_rational(formula), format_rational(total),
                format_rational(prob_sum), _bool(equal),
            ])
    run.criteria = ["2"]
    run.verdicts = {"rows": len(rows), "all_equal": ok}
    run.table(["n", "a", "b", "formula", "weight_sum", "prob_sum", "equal"], rows)
    run.finish(ok)


@main.command("marginals")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--check", is_flag=True, help="Also brute-force each marginal and compare.")
@common_options
def marginals(n, k, check, a_text, b_text, seed, out_dir, tag):
    """Single-box symbol probabilities along one diagonal."""
    run, p = _start("marginals", a_text, b_text, seed, out_dir, tag, n=n, k=k)
    if not 1 <= k <= n:
        raise click.UsageError(f"--k: diagonal {k} out of range for size {n}")
    rows = []
    ok = True
    for j in range(1, n - k + 2):
        for name, symbol in (("a", Symbol.ALPHA), ("b", Symbol.BETA), ("empty", None)):
            closed = ms.marginal(n, p, k, j, symbol)
            if check:
                brute = ms.brute_force_marginal(n, p, k, j, symbol)
                equal = closed == brute
                ok = ok and equal
                rows.append([str(k), str(j), name, format_rational(closed),
                             format_rational(brute), _bool(equal)])
            else:
                rows.append([str(k), str(j), name, format_rational(closed), "", ""])
    run.criteria = ["3"] if check else []
    run.verdicts = {"rows": len(rows), "all_equal": ok if check else None}
    run.table(["k", "j", "symbol", "closed_form", "brute_force", "equal"], rows)
    run.finish(ok)


@main.command("joint")
@click.option("--n", type=int, required=True)
@click.option("--events", "events_path", type=click.Path(exists=True), required=True)
@common_options
def joint(n, events_path, a_text, b_text, seed, out_dir, tag):
    """Exact probability of a conjunction of box events."""
    events = _load_events(events_path)
    run, p = _start("joint", a_text, b_text, seed, out_dir, tag, n=n)
    try:
        prob = ms.joint_probability(n, p, events)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    rows = [[str(n), format_rational(p.a), format_rational(p.b),
             _events_repr(events).replace(",", ";"), format_rational(prob), repr(float(prob))]]
    run.table(["n", "a", "b", "events", "probability", "probability_float"], rows)
    run.finish(True)


@main.command("dist")
@click.option("--n", "n_text", required=True, metavar="N|LO..HI",
              help="Size; a range runs the pair-law independence-gap sweep.")
@click.option("--k", type=int, required=True)
@click.option("--symbol", type=click.Choice(["a", "b"]), default="a")
@click.option("--pair", is_flag=True, help="Joint (count, count) law instead of one symbol.")
@common_options
def dist(n_text, k, symbol, pair, a_text, b_text, seed, out_dir, tag):
    """Exact count law on a diagonal; over a range, the independence gap."""
    ns = _int_range(n_text, "--n")
    run, p = _start("dist", a_text, b_text, seed, out_dir, tag, n=n_text, k=k)
    if len(ns) > 1:
        if not pair:
            raise click.UsageError("--n ranges require --pair (gap sweep)")
        rows = []
        ok = True
        previous = None
        for n in ns:
            gap = ds.independence_gap(n, p, k)
            decreasing = "" if previous is None else _bool(gap < previous)
            if previous is not None and not gap < previous:
                ok = False
            rows.append([str(n), str(k), format_rational(gap), repr(float(gap)), decreasing])
            previous = gap
        run.criteria = ["9"]
        run.verdicts = {"rows": len(rows), "strictly_decreasing": ok}
        run.table(["n", "k", "gap", "gap_float", "decreasing"], rows)
        run.finish(ok)
        return
    n = ns[0]
    if pair:
        law = ds.joint_count_distribution(n, p, k)
        rows = [
            [str(ca), str(cb), format_rational(prob), repr(float(prob))]
            for (ca, cb), prob in sorted(law.as_dict().items())
        ]
        run.table(["count_a", "count_b", "probability", "probability_float"], rows)
    else:
        law = ds.count_distribution(n, p, k, _SYMBOL_CODES[symbol])
        rows = [
            [str(c), format_rational(prob), repr(float(prob))]
            for c, prob in sorted(law.as_dict().items())
        ]
        run.table(["count", "probability", "probability_float"], rows)
    run.finish(True)


@main.command("moments")
@click.option("--n", "n_text", required=True, metavar="N|LO..HI")
@click.option("--k", type=int, required=True)
@click.option("--r", "r_max", type=int, default=3, help="Highest factorial-moment order.")
@click.option("--symbol", type=click.Choice(["a", "b"]), default="a")
@click.option("--check/--no-check", default=True,
              help="Cross-compute each moment from joint probabilities.")
@common_options
def moments(n_text, k, r_max, symbol, check, a_text, b_text, seed, out_dir, tag):
    """Factorial moments of a diagonal count, two independent routes."""
    ns = _int_range(n_text, "--n")
    if r_max < 1:
        raise click.UsageError("--r must be at least 1")
    run, p = _start("moments", a_text, b_text, seed, out_dir, tag, n=n_text, k=k, r=r_max)
    sym = _SYMBOL_CODES[symbol]
    rows = []
    ok = True
    for n in ns:
        law = ds.count_distribution(n, p, k, sym)
        for r in range(1, r_max + 1):
            exact = law.factorial_moment(r)
            target = Fraction(1, 2**r)
            if check:
                via = ds.factorial_moment_via_joints(n, p, k, sym, r)
                equal = exact == via
                ok = ok and equal
                via_s, equal_s = format_rational(via), _bool(equal)
            else:
                via_s, equal_s = "", ""
            rows.append([
                str(n), str(k), symbol, str(r), format_rational(exact), via_s, equal_s,
                format_rational(target), repr(abs(float(exact - target))),
            ])
    run.criteria = ["6"] if check else []
    run.verdicts = {"rows": len(rows), "all_equal": ok if check else None}
    run.table(
        ["n", "k", "symbol", "r", "exact", "via_joints", "equal", "target", "abs_error_float"],
        rows,
    )
    run.finish(ok)


@main.command("tv")
@click.option("--k", type=int, required=True)
@click.option("--n-range", "n_text", required=True, metavar="LO..HI")
@common_options
def tv(k, n_text, a_text, b_text, seed, out_dir, tag):
    """Mean and Poisson(1/2) distance of the count law across sizes.

    At unit parameters the mean has the closed form (n-k+1)/(2(n-k+3)) and
    is checked exactly; the distance column must fall strictly.
    """
    ns = _int_range(n_text, "--n-range")
    run, p = _start("tv", a_text, b_text, seed, out_dir, tag, n=n_text, k=k)
    unit = p.a == 1 and p.b == 1
    rows = []
    means_ok = True
    decreasing_ok = True
    previous = None
    for n in ns:
        if not 1 <= k <= n:
            raise click.UsageError(f"--k: diagonal {k} out of range for size {n}")
        law = ds.count_distribution(n, p, k, Symbol.ALPHA)
        mean = law.mean()
        if unit:
            formula = Fraction(n - k + 1, 2 * (n - k + 3))
            equal = mean == formula
            means_ok = means_ok and equal
            formula_s, equal_s = format_rational(formula), _bool(equal)
        else:
            formula_s, equal_s = "", ""
        distance = ds.tv_against_poisson(law.as_dict())
        falling = "" if previous is None else _bool(distance < previous)
        if previous is not None and not distance < previous:
            decreasing_ok = False
        rows.append([str(n), str(k), format_rational(mean), formula_s, equal_s,
                     repr(distance), falling])
        previous = distance
    ok = (means_ok if unit else True) and decreasing_ok
    run.criteria = ["7"]
    run.verdicts = {
        "rows": len(rows),
        "means_equal": means_ok if unit else None,
        "strictly_decreasing": decreasing_ok,
    }
    run.table(["n", "k", "mean", "mean_formula", "mean_equal", "tv_float", "decreasing"], rows)
    run.finish(ok)


@main.command("lemma-la")
@click.option("--r", "r_text", required=True, metavar="R|LO..HI")
@click.option("--m", "m_text", required=True, metavar="M|LO..HI")
@common_options
def lemma_la(r_text, m_text, a_text, b_text, seed, out_dir, tag):
    """The double-sum identity, both sides evaluated independently."""
    rs = _int_range(r_text, "--r")
    mss = _int_range(m_text, "--m")
    run, _ = _start("lemma-la", a_text, b_text, seed, out_dir, tag, r=r_text, m=m_text)
    rows = []
    ok = True
    for r in rs:
        for m_val in mss:
            try:
                lhs, rhs, equal = ds.lemma_la_check(r, m_val)
            except ValueError as exc:
                raise click.UsageError(str(exc))
            ok = ok and equal
            rows.append([str(r), str(m_val), format_rational(lhs),
                         format_rational(rhs), _bool(equal)])
    run.criteria = ["5"]
    run.verdicts = {"rows": len(rows), "all_equal": ok}
    run.table(["r", "m", "lhs", "rhs", "equal"], rows)
    run.finish(ok)


def _scan_verdicts(rows_by_tuple) -> tuple[dict, bool]:
    verdicts = []
    ok = True
    for key, rows in rows_by_tuple.items():
        series = [(row.n, row.scaled) for row in rows]
        slope, passed = _slope_ok(series)
        ok = ok and passed
        verdicts.append({
            "positions": key,
            "kind": "gap" if rows[0].gap_ok else "crowded",
            "order": rows[0].order,
            "slope": slope,
            "pass": passed,
        })
    return {"tuples": verdicts}, ok


@main.command("theorem4")
@click.option("--k", type=int, required=True)
@click.option("--n-range", "n_text", required=True, metavar="LO..HI")
@click.option("--tuples", "tuples_path", type=click.Path(exists=True), default=None,
              help="JSON list of position tuples; default pairs one spread and one crowded.")
@common_options
def theorem4(k, n_text, tuples_path, a_text, b_text, seed, out_dir, tag):
    """Scaled error of joint same-symbol probabilities against the product form."""
    ns = _int_range(n_text, "--n-range")
    run, p = _start("theorem4", a_text, b_text, seed, out_dir, tag, n=n_text, k=k)
    if tuples_path:
        raw = json.loads(Path(tuples_path).read_text(encoding="utf-8"))
        tuples = [tuple(int(j) for j in item) for item in raw]
    else:
        tuples = [(1, k + 1), (1, 2)]
    try:
        scan = ds.theorem4_error_scan(ns, p, k, tuples)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    by_tuple: dict = {}
    for row in scan:
        by_tuple.setdefault(str(list(row.positions)), []).append(row)
    rows = [
        [str(row.n), str(k), json.dumps(list(row.positions)).replace(", ", ";"),
         str(row.order), _bool(row.gap_ok), format_rational(row.exact),
         format_rational(row.product), format_rational(row.delta), repr(row.scaled)]
        for row in scan
    ]
    verdicts, ok = _scan_verdicts(by_tuple)
    run.criteria = ["8"]
    run.verdicts = verdicts
    run.table(
        ["n", "k", "positions", "order", "gap_ok", "exact", "product", "delta", "scaled_float"],
        rows,
    )
    run.finish(ok)


@main.command("theorem7")
@click.option("--k", type=int, required=True)
@click.option("--n-range", "n_text", required=True, metavar="LO..HI")
@click.option("--tuples", "tuples_path", type=click.Path(exists=True), default=None,
              help="JSON list of [alpha_positions, beta_positions] pairs.")
@common_options
def theorem7(k, n_text, tuples_path, a_text, b_text, seed, out_dir, tag):
    """Scaled error of mixed-symbol joint probabilities against the product form."""
    ns = _int_range(n_text, "--n-range")
    run, p = _start("theorem7", a_text, b_text, seed, out_dir, tag, n=n_text, k=k)
    if tuples_path:
        raw = json.loads(Path(tuples_path).read_text(encoding="utf-8"))
        tuples = [(tuple(int(j) for j in al), tuple(int(j) for j in bl)) for al, bl in raw]
    else:
        tuples = [((1,), (k + 1,))]
    try:
        scan = ds.theorem7_error_scan(ns, p, k, tuples)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    by_tuple: dict = {}
    for row in scan:
        by_tuple.setdefault(str([list(row.positions[0]), list(row.positions[1])]), []).append(row)
    rows = [
        [str(row.n), str(k),
         json.dumps(list(row.positions[0])).replace(", ", ";"),
         json.dumps(list(row.positions[1])).replace(", ", ";"),
         str(row.order), _bool(row.gap_ok), format_rational(row.exact),
         format_rational(row.product), format_rational(row.delta), repr(row.scaled)]
        for row in scan
    ]
    verdicts, ok = _scan_verdicts(by_tuple)
    run.verdicts = verdicts
    run.table(
        ["n", "k", "alpha_positions", "beta_positions", "order", "gap_ok",
         "exact", "product", "delta", "scaled_float"],
        rows,
    )
    run.finish(ok)


@main.command("structure")
@click.option("--n", "n_text", required=True, metavar="N|LO..HI")
@click.option("--k", "k_text", required=True, metavar="K|LO..HI")
@click.option("--events", "events_path", type=click.Path(exists=True), default=None,
              help="Condition on these diagonal-k symbols (single n, k).")
@click.option("--check", "check_kind", type=click.Choice(["lemma3", "dregion"]), required=True)
@common_options
def structure(n_text, k_text, events_path, check_kind, a_text, b_text, seed, out_dir, tag):
    """Corner-structure checks: full sweeps, or one conditioned configuration."""
    ns = _int_range(n_text, "--n")
    ks = _int_range(k_text, "--k")
    run, _ = _start("structure", a_text, b_text, seed, out_dir, tag, n=n_text, k=k_text)
    if events_path is not None:
        if len(ns) != 1 or len(ks) != 1:
            raise click.UsageError("--events requires a single --n and --k")
        n, k = ns[0], ks[0]
        events = _load_events(events_path)
        witness = next(iter(en.enumerate_filtered(n, events)), None)
        if witness is None:
            raise click.UsageError("no tableau satisfies the given events")
        try:
            if check_kind == "lemma3":
                report = stc.verify_lemma3(witness, k, events)
                rows = [[str(n), str(k), _events_repr(events).replace(",", ";"),
                         _bool(report.closure_closed), _bool(report.within_bound),
                         _bool(report.pairing_ok), _bool(report.ok)]]
                run.verdicts = {"ok": report.ok}
                run.table(["n", "k", "events", "closure_closed", "within_bound",
                           "pairing_ok", "ok"], rows)
                run.finish(report.ok)
            else:
                region = stc.d_region(witness, k, events)
                connected = stc.d_connected(witness, k, events)
                frame = stc.corner_frame(n, k, stc._positions_from_events(witness, k, events))
                bound = frame.hat_size - frame.m - 1
                within = len(connected) <= bound
                rows = [[str(n), str(k), _events_repr(events).replace(",", ";"),
                         str(frame.hat_size), str(frame.m), str(bound),
                         str(len(region.boundary)), str(len(region.interior)),
                         str(len(connected)), _bool(within)]]
                run.verdicts = {"within_bound": within}
                run.table(["n", "k", "events", "hat_size", "m", "bound", "boundary_len",
                           "interior_size", "connected_size", "within_bound"], rows)
                run.finish(within)
        except ValueError as exc:
            raise click.UsageError(str(exc))
        return
    # Sweep form: every tableau and event tuple (r <= 2) per size and diagonal.
    # The disagreements column counts cases where the walking route undershoots
    # the closure route; it is informative, not a property failure.
    rows = []
    total_failures = 0
    for n in ns:
        for k in ks:
            if not 2 <= k <= n - 1:
                continue
            cases, disagreements, failing = stc.structure_sweep(n, k)
            total_failures += len(failing)
            rows.append([str(n), str(k), str(cases), str(len(failing)), str(disagreements)])
    if not rows:
        raise click.UsageError("no valid (n, k) combinations in the requested ranges")
    ok = total_failures == 0
    run.criteria = ["11"] if check_kind == "lemma3" else []
    run.verdicts = {"rows": len(rows), "failures": total_failures}
    run.table(["n", "k", "cases", "failures", "disagreements"], rows)
    run.finish(ok)


@main.command("c-extract")
@click.option("--k", type=int, required=True)
@click.option("--n-range", "n_text", default=None, metavar="LO..HI")
@common_options
def c_extract(k, n_text, a_text, b_text, seed, out_dir, tag):
    """Solve for the configuration-count table and report its consistency."""
    ns = _int_range(n_text, "--n-range") if n_text else None
    run, p = _start("c-extract", a_text, b_text, seed, out_dir, tag, n=n_text, k=k)
    grid = None
    if (a_text, b_text) != ("1", "1"):
        grid = (p,)
    try:
        table = stc.extract_c_table(k, p_grid=grid, n_range=ns)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    rows = []
    for h, value in enumerate(table.values):
        rows.append([str(k), str(h), format_rational(value),
                     _bool(value.denominator == 1), _bool(value >= 0)])
    ok = table.consistent and table.integral and table.nonnegative and table.leading_one
    run.criteria = ["12"]
    run.verdicts = {
        "consistent": table.consistent,
        "integral": table.integral,
        "nonnegative": table.nonnegative,
        "leading_one": table.leading_one,
        "equations": table.equations,
    }
    run.table(["k", "h", "value", "integral", "nonnegative"], rows)
    run.finish(ok)


def _parse_stat(text: str, n: int) -> tuple[str, int]:
    parts = text.split(":")
    if len(parts) != 2 or parts[0] not in ("alpha-count", "beta-count"):
        raise click.UsageError(f"--stat: expected alpha-count:K or beta-count:K, got {text!r}")
    try:
        k = int(parts[1])
    except ValueError:
        raise click.UsageError(f"--stat: bad diagonal {parts[1]!r}")
    if not 1 <= k <= n:
        raise click.UsageError(f"--stat: diagonal {k} out of range for size {n}")
    return parts[0], k


@main.command("sample")
@click.option("--n", type=int, required=True)
@click.option("--mode", type=click.Choice(["exact", "chain"]), default="exact")
@click.option("--count", type=int, default=1)
@click.option("--stat", "stat_text", default=None, metavar="alpha-count:K",
              help="Emit this statistic per draw instead of tableaux.")
@click.option("--burn-in", type=int, default=None, help="Chain burn-in steps.")
@click.option("--thin", type=int, default=None, help="Chain steps between draws.")
@click.option("--format", "fmt", type=click.Choice(["grid", "json", "csv"]), default="grid")
@common_options
def sample(n, mode, count, stat_text, burn_in, thin, fmt, a_text, b_text, seed, out_dir, tag):
    """Draw tableaux from the weighted law; needs an explicit --seed."""
    if seed is None:
        raise click.UsageError("randomized commands require --seed")
    if count < 1:
        raise click.UsageError("--count must be positive")
    run, p = _start("sample", a_text, b_text, seed, out_dir, tag, n=n)
    boxes = n * (n + 1) // 2
    try:
        cfg = sp.SamplerConfig(
            n, p, seed, mode=mode,
            chain_burn_in=200 * boxes if burn_in is None else burn_in,
            chain_thin=2 * boxes if thin is None else thin,
        )
        if mode == "exact":
            draws = sp.ExactSampler(n, p, sp.make_rng(seed)).draw(count)
        else:
            stream = sp.sample_chain(cfg)
            draws = [next(stream) for _ in range(count)]
    except ValueError as exc:
        raise click.UsageError(str(exc))
    run.ranges = {"mode": mode, "count": count,
                  "burn_in": cfg.chain_burn_in, "thin": cfg.chain_thin}
    if stat_text is None:
        if fmt == "grid":
            run.text("\n\n".join(format_grid(t) for t in draws) + "\n", "txt")
        elif fmt == "json":
            run.text("".join(format_json(t) + "\n" for t in draws), "jsonl")
        else:
            rows = [
                [str(i), str(r), str(c), t.get(r, c).value]
                for i, t in enumerate(draws)
                for (r, c) in sorted(t.cells)
            ]
            run.table(["draw", "i", "j", "symbol"], rows)
        run.finish(True)
        return
    kind, k = _parse_stat(stat_text, n)
    symbol = Symbol.ALPHA if kind == "alpha-count" else Symbol.BETA
    values = [
        sum(1 for box in diagonal_boxes(n, k) if t.get(*box) == symbol) for t in draws
    ]
    histogram: dict[int, int] = {}
    for v in values:
        histogram[v] = histogram.get(v, 0) + 1
    verdicts: dict = {"stat": stat_text, "histogram": {str(c): v for c, v in sorted(histogram.items())}}
    ok = True
    if n <= 7:
        # The exact law is affordable here, so the run validates itself.
        law = ds.count_distribution(n, p, k, symbol)
        gof = sp.goodness_of_fit(histogram, law.as_dict())
        verdicts["gof"] = {"pvalue": gof.pvalue, "statistic": gof.statistic,
                           "bins": gof.bins, "impossible": list(gof.impossible)}
        ok = gof.ok
        run.criteria = ["13"]
    if fmt == "json":
        run.text(json.dumps(values) + "\n", "json")
    else:
        run.table(["draw", "value"], [[str(i), str(v)] for i, v in enumerate(values)])
    run.verdicts = verdicts
    run.finish(ok)


@main.command("involution-check")
@click.option("--n", "n_text", default="1..6", metavar="N|LO..HI")
@common_options
def involution_check(n_text, a_text, b_text, seed, out_dir, tag):
    """Reflection is a bijection and swaps the roles of the two parameters."""
    ns = _int_range(n_text, "--n")
    run, p = _start("involution-check", a_text, b_text, seed, out_dir, tag, n=n_text)
    swapped = Params(p.b, p.a)
    rows = []
    ok = True
    for n in ns:
        tableaux = en.materialize(n)
        images = [t.involution() for t in tableaux]
        bijection = (
            all(t.is_valid() for t in images)
            and len(set(images)) == len(tableaux)
            and all(t.involution() == s for t, s in zip(images, tableaux))
        )
        gap = ms.involution_duality_gap(n, p)
        law_dual = all(
            ds.count_distribution(n, p, k, Symbol.BETA).as_dict()
            == ds.count_distribution(n, swapped, k, Symbol.ALPHA).as_dict()
            for k in range(1, n + 1)
        )
        row_ok = bijection and gap == 0 and law_dual
        ok = ok and row_ok
        rows.append([str(n), format_rational(p.a), format_rational(p.b),
                     _bool(bijection), format_rational(gap), _bool(law_dual), _bool(row_ok)])
    run.criteria = ["10"]
    run.verdicts = {"rows": len(rows), "all_ok": ok}
    run.table(["n", "a", "b", "bijection", "duality_gap", "count_law_dual", "ok"], rows)
    run.finish(ok)


@main.command("subtableau-check")
@click.option("--n", "n_text", default="2..6", metavar="N|LO..HI")
@common_options
def subtableau_check(n_text, a_text, b_text, seed, out_dir, tag):
    """Conditional law after corner deletion equals the smaller shifted law."""
    ns = _int_range(n_text, "--n")
    run, p = _start("subtableau-check", a_text, b_text, seed, out_dir, tag, n=n_text)
    rows = []
    ok = True
    for n in ns:
        for i in range(1, n + 1):
            for j in range(1, n + 2 - i):
                report = ms.subtableau_law_check(n, p, i, j)
                clean = report.max_discrepancy == 0
                ok = ok and clean
                rows.append([
                    str(n), str(i), str(j), str(report.sub_size),
                    format_rational(report.shifted_params.a),
                    format_rational(report.shifted_params.b),
                    str(report.distinct_subtableaux),
                    format_rational(report.max_discrepancy), _bool(clean),
                ])
    run.criteria = ["4"]
    run.verdicts = {"rows": len(rows), "all_zero": ok}
    run.table(["n", "i", "j", "sub_size", "shifted_a", "shifted_b",
               "distinct", "max_discrepancy", "ok"], rows)
    run.finish(ok)


@main.command("report")
@click.argument("bundle_dir", type=click.Path(exists=True, file_okay=False))
def report(bundle_dir):
    """Re-verify a bundle directory and summarize it against the checklist."""
    bundle = Path(bundle_dir)
    manifests = sorted(bundle.glob("*.manifest.json"))
    if not manifests:
        click.echo(f"empty bundle: no manifests under {bundle}", err=True)
        raise SystemExit(1)
    problems: list[str] = []
    by_criterion: dict[str, list[tuple[str, bool]]] = {}
    tv_rows: list[str] = []
    for path in manifests:
        try:
            manifest = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            problems.append(f"unreadable manifest {path.name}: {exc}")
            continue
        name = manifest.get("name", path.stem)
        criteria = manifest.get("criteria") or []
        ok = bool(manifest.get("ok"))
        corrupted = False
        for fname, digest in (manifest.get("outputs") or {}).items():
            target = bundle / fname
            if not target.exists():
                problems.append(
                    f"missing artifact {fname} (run {name}"
                    + (f", criterion {'/'.join(criteria)}" if criteria else "") + ")"
                )
                corrupted = True
                continue
            actual = hashlib.sha256(target.read_bytes()).hexdigest()
            if actual != digest:
                problems.append(
                    f"corrupted artifact {fname} (run {name}"
                    + (f", criterion {'/'.join(criteria)}" if criteria else "") + ")"
                )
                corrupted = True
        verdict = ok and not corrupted
        for cid in criteria:
            by_criterion.setdefault(cid, []).append((name, verdict))
        if manifest.get("command") == "tv" and not corrupted:
            for fname in manifest.get("outputs") or {}:
                if fname.endswith(".csv"):
                    lines = (bundle / fname).read_text(encoding="utf-8").splitlines()
                    tv_rows = [line for line in lines if not line.startswith("#")]
    click.echo(f"bundle: {bundle} ({len(manifests)} runs)")
    click.echo()
    failures = 0
    for cid in sorted(CRITERIA, key=int):
        entries = by_criterion.get(cid)
        if not entries:
            status = "MISSING"
        elif all(v for _, v in entries):
            status = "PASS"
        else:
            status = "FAIL"
            failures += 1
        sources = ", ".join(name for name, _ in entries) if entries else "-"
        click.echo(f"  [{status:7}] {cid:>2}. {CRITERIA[cid]}  ({sources})")
    if tv_rows:
        click.echo()
        click.echo("Poisson-distance table:")
        for line in tv_rows:
            click.echo(f"  {line}")
    if problems:
        click.echo()
        for problem in problems:
            click.echo(f"  problem: {problem}", err=True)
    if failures or problems:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
