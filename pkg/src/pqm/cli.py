"""Command-line front end: ``pqm <group> <command> [options]``.

Every command accepts ``--json`` for machine-readable output and
``--in FILE`` to read options from a JSON object whose keys are the option
names (``{"n": 4, "p": "ac|bd"}``); flags given on the command line win.

Exit status: 0 on success, 1 on a domain error (the error class name is
printed), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import classical, dsd, entropy, gf2, groups, partitions, quantum, stats
from .errors import PQMError
from .serialize import complex_matrix_to_json, format_complex, format_rational, rational_to_json


class UsageError(Exception):
    pass


# ---- argument conversion ---------------------------------------------------


def _items(value, flag: str, sep: str = ",") -> list:
    if isinstance(value, (list, tuple)):
        return list(value)
    if not isinstance(value, str):
        return [value]
    return [t.strip() for t in value.split(sep) if t.strip()]


def _scalar(token, flag: str):
    """Integers and p/q stay exact; decimals and complex literals become complex."""
    if isinstance(token, bool):
        raise UsageError(f"invalid value {token!r} for {flag}")
    if isinstance(token, int):
        return Fraction(token)
    if isinstance(token, float):
        return complex(token)
    if isinstance(token, (list, tuple)) and len(token) == 2:
        return complex(float(token[0]), float(token[1]))
    if isinstance(token, dict):
        return Fraction(int(token["num"]), int(token["den"]))
    text = str(token).strip()
    try:
        if not any(c in text for c in ".eEij"):
            return Fraction(text)
        return complex(text.replace(" ", "").replace("i", "j"))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"invalid number {text!r} for {flag}") from None


def _rationals(value, flag: str) -> list[Fraction]:
    out = []
    for t in _items(value, flag):
        x = _scalar(t, flag)
        if not isinstance(x, Fraction):
            raise UsageError(f"{flag} needs exact rationals, got {t!r}")
        out.append(x)
    return out


def _ints(value, flag: str) -> list[int]:
    try:
        return [int(t) for t in _items(value, flag)]
    except (TypeError, ValueError):
        raise UsageError(f"{flag} needs a comma-separated list of integers") from None


def _matrix(value, flag: str) -> list[list]:
    """Rows separated by ``;``, entries by ``,``; or a JSON list of rows."""
    rows = value if isinstance(value, list) else _items(value, flag, ";")
    out = [[_scalar(x, flag) for x in _items(row, flag)] for row in rows]
    if not out or any(len(r) != len(out) for r in out):
        raise UsageError(f"{flag} must be a square matrix")
    if all(isinstance(x, Fraction) for r in out for x in r):
        return out
    return [[complex(x) for x in r] for r in out]


def _vector(value, flag: str) -> np.ndarray:
    vals = [_scalar(t, flag) for t in _items(value, flag)]
    if not vals:
        raise UsageError(f"{flag} is empty")
    return np.array([complex(v) for v in vals])


def _universe(args) -> partitions.Universe:
    if args.labels:
        labels = _items(args.labels, "--labels")
        n = args.n if args.n is not None else len(labels)
        return partitions.Universe(n, tuple(labels))
    if args.n is None:
        raise UsageError("--n is required")
    return partitions.Universe.letters(args.n)


def _partition(args, name: str) -> partitions.Partition:
    text = getattr(args, name)
    if text is None:
        raise UsageError(f"--{name} is required")
    return partitions.parse_partition(text, _universe(args))


def _dist(args, universe) -> entropy.ProbDist:
    if args.weights is None:
        return entropy.ProbDist.uniform(universe)
    return entropy.ProbDist.from_weights(universe, _rationals(args.weights, "--weights"))


def _observables(args, count: int | None = None) -> list[quantum.Observable]:
    values = args.values or []
    bases = args.basis or []
    if count is not None and len(values) != count:
        raise UsageError(f"expected {count} --values options, got {len(values)}")
    if not values:
        raise UsageError("--values is required")
    if bases and len(bases) != len(values):
        raise UsageError("give one --basis per --values, or none")
    out = []
    for i, v in enumerate(values):
        vals = [_scalar(x, "--values") for x in _items(v, "--values")]
        if any(isinstance(x, complex) and x.imag for x in vals):
            raise UsageError("--values must be real")
        if bases:
            basis = _matrix(bases[i], "--basis")
        else:
            basis = [[Fraction(int(r == c)) for c in range(len(vals))] for r in range(len(vals))]
        exact = all(isinstance(x, Fraction) for r in basis for x in r)
        if exact and all(isinstance(x, Fraction) for x in vals):
            out.append(quantum.Observable(basis, vals))
        else:
            out.append(quantum.Observable(basis, [float(x.real) if isinstance(x, complex) else float(x) for x in vals]))
    return out


def _state(args) -> quantum.QDensity:
    if args.state is not None:
        return quantum.density_from_state(_vector(args.state, "--state"))
    if args.rho is not None:
        return quantum.QDensity(np.array(_matrix(args.rho, "--rho"), dtype=complex))
    raise UsageError("give --state or --rho")


# ---- output helpers ----------------------------------------------------------


def _fmt_value(v) -> str:
    if isinstance(v, Fraction):
        return str(v) if v.denominator == 1 else format_rational(v)
    return str(v)


def _fmt_matrix(m) -> str:
    m = np.asarray(m)
    cells = [[format_complex(x) for x in row] for row in m]
    width = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def _real(x: float) -> float:
    return float(f"{x:.12g}") + 0.0


# ---- commands ----------------------------------------------------------------


def cmd_partition(args):
    p = _partition(args, "p")
    if args.command in ("join", "meet", "refines"):
        q = _partition(args, "q")
        if args.command == "refines":
            # refines --p coarse --q fine
            result = partitions.refines(p, q)
            return {"refines": result}, str(result).lower()
        r = partitions.join(p, q) if args.command == "join" else partitions.meet(p, q)
        return partitions.partition_to_json(r), partitions.format_partition(r)
    if args.command == "dits":
        labels = p.universe.labels
        pairs = sorted(partitions.ditset(p))
        text = " ".join(f"({labels[i]},{labels[k]})" for i, k in pairs)
        return {"dits": [list(ik) for ik in pairs], "count": len(pairs)}, text
    d = _dist(args, p.universe)
    if args.q is not None:
        report = entropy.compound_entropies(p, _partition(args, "q"), d)
        lines = [f"{k}: {format_rational(getattr(report, k))}" for k in report.__dataclass_fields__]
        return report.to_json(), "\n".join(lines)
    h = entropy.logical_entropy(p, d)
    return {"h": rational_to_json(h)}, format_rational(h)


def cmd_density(args):
    p = _partition(args, "p")
    d = _dist(args, p.universe)
    rho = classical.density_of_partition(p, d)
    if args.command == "build":
        return rho.to_json(), rho.format()
    if args.command == "entropy":
        h = classical.density_entropy(rho)
        return {"h": rational_to_json(h)}, format_rational(h)
    sigma = _partition(args, "sigma")
    if args.command == "luders":
        after = classical.classical_luders(rho, sigma)
        return after.to_json(), after.format()
    report = classical.measure_and_report(p, sigma, d)
    labels = p.universe.labels
    lines = [
        "zeroed: " + " ".join(f"({labels[i]},{labels[k]})" for i, k in report.zeroed_pairs),
        f"sum_of_squares: {format_rational(report.sum_of_squares)}",
        f"entropy_before: {format_rational(report.entropy_before)}",
        f"entropy_after: {format_rational(report.entropy_after)}",
    ]
    return report.to_json(), "\n".join(lines)


def cmd_quantum(args):
    if args.command == "unitary":
        if args.matrix is None:
            raise UsageError("--matrix is required")
        ok = quantum.is_distinction_preserving(np.array(_matrix(args.matrix, "--matrix"), dtype=complex))
        return {"unitary": ok}, str(ok).lower()
    (obs,) = _observables(args, 1)
    rho = _state(args)
    if args.command == "measure":
        post = quantum.quantum_luders(rho, obs)
        return {"rho": complex_matrix_to_json(post.matrix)}, _fmt_matrix(post.matrix)
    if args.command == "born":
        dist = quantum.born_distribution(rho, obs)
        data = [{"value": _fmt_value(v), "probability": _real(p)} for v, p in dist]
        return data, "\n".join(f"{_fmt_value(v)}: {_real(p):.12g}" for v, p in dist)
    post = quantum.quantum_luders(rho, obs)
    data = {
        "qudits": _real(quantum.qle_via_qudits(obs, rho)),
        "trace": _real(quantum.qle_via_trace(post)),
        "zeroed": _real(quantum.qle_via_zeroed(rho, post)),
    }
    return data, "\n".join(f"{k}: {v:.12g}" for k, v in data.items())


def cmd_dsd(args):
    if args.command == "classify":
        f, g = _observables(args, 2)
        c = dsd.classify(f, g)
        return c.to_json(), f"{c.kind.value} (SE dim {c.se_dim})"
    result = dsd.is_csco(_observables(args))
    return {"csco": result}, str(result).lower()


def _gf2_basis(spec, n: int, universe) -> gf2.GF2Basis:
    if spec in (None, "U", "u"):
        return gf2.standard_basis(n)
    if spec in ("hat", "Uhat"):
        return gf2.hat_basis(n)
    masks = []
    for token in _items(spec, "--basis", "|" if "|" in str(spec) else ","):
        indices = [universe.index(ch) for ch in token] if len(token) and all(ch in universe.labels for ch in token) else None
        if indices is None:
            raise UsageError(f"cannot read basis vector {token!r}")
        masks.append(partitions.mask_of(indices))
    return gf2.as_basis(masks)


def cmd_gf2(args):
    if args.n is None:
        raise UsageError("--n is required")
    universe = partitions.Universe.letters(args.n)
    if args.command == "hat":
        basis = gf2.hat_basis(args.n)
        sets = [v.labels(universe) for v in basis.vectors]
        return {"vectors": sets}, "\n".join("{" + ",".join(s) + "}" for s in sets)
    specs = args.basis or ["U", "hat"]
    if len(specs) != 2:
        raise UsageError("gf2 classify needs two --basis options")
    values = args.values or []
    dsds = []
    for i, spec in enumerate(specs):
        b = _gf2_basis(spec, args.n, universe)
        vals = _items(values[i], "--values") if i < len(values) else list(range(args.n))
        dsds.append(gf2.dsd_from_gf2_attribute(b, vals))
    c = gf2.gf2_classify(*dsds)
    return c.to_json(), f"{c.kind.value} (SE dim {c.se_dim})"


def cmd_stats(args):
    if args.n is None or args.k is None or args.theta is None or args.kind is None:
        raise UsageError("--kind, --n, --k and --theta are required")
    kind = stats.StatKind(args.kind)
    p = stats.occupancy_probability(kind, args.n, args.k, _ints(args.theta, "--theta"))
    return {"probability": rational_to_json(p)}, format_rational(p)


def _group(args) -> groups.FiniteGroup:
    name = args.group or "klein"
    if isinstance(name, dict):
        return groups.FiniteGroup.from_json(name)
    if name == "klein":
        return groups.klein_four()
    if name == "s3":
        return groups.symmetric3()
    if name.startswith("cyclic:"):
        return groups.cyclic(int(name.split(":", 1)[1]))
    raise UsageError(f"unknown group {name!r} for --group (klein, s3, cyclic:N)")


def _set_rep(args, grp) -> groups.SetRep:
    if args.maps is None:
        return groups.cayley_set_rep(grp)
    rows = args.maps if isinstance(args.maps, list) else _items(args.maps, "--maps", ";")
    maps = tuple(tuple(_ints(r, "--maps")) for r in rows)
    n = len(maps[0]) if maps else 0
    return groups.SetRep(grp, n, maps)


def cmd_grouprep(args):
    grp = _group(args)
    if args.command == "irreps":
        gens = _ints(args.generators, "--generators") if args.generators is not None else [1, 2]
        out = groups.irrep_decomposition(groups.cayley_vector_rep(grp), gens)
        data, lines = [], []
        for space, label in out:
            vecs = [[_fmt_value(x) if isinstance(x, Fraction) else format_complex(x) for x in v] for v in space.vectors()]
            data.append({"ket": groups.ket(label), "label": list(label), "basis": vecs})
            lines.append(f"{groups.ket(label)}: " + " ".join("(" + ",".join(v) + ")" for v in vecs))
        return data, "\n".join(lines)
    rep = _set_rep(args, grp)
    if args.command == "validate":
        failures = groups.set_rep_failures(rep)
        return {"valid": not failures, "failures": failures}, "valid" if not failures else "invalid: " + ", ".join(failures)
    orbits = groups.orbit_partition(rep)
    return partitions.partition_to_json(orbits), partitions.format_partition(orbits)


def cmd_verify(args):
    from .verify import MUTATIONS, format_table, verify_paper

    mutations = _items(args.mutate, "--mutate") if args.mutate else ()
    unknown = [m for m in mutations if m not in MUTATIONS]
    if unknown:
        raise UsageError(f"--mutate: unknown mutation(s) {', '.join(unknown)}; choose from {', '.join(MUTATIONS)}")
    cases = verify_paper(mutations)
    failed = sum(not c.passed for c in cases)
    return [c.to_json() for c in cases], format_table(cases), (1 if failed else 0)


# ---- parser ------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--in", dest="infile", metavar="PATH", help="read options from a JSON object")

    universe = argparse.ArgumentParser(add_help=False)
    universe.add_argument("--n", type=int, help="universe size")
    universe.add_argument("--labels", help="comma-separated element labels (default a, b, c, ...)")
    universe.add_argument("--p", help='partition, e.g. "ac|bd"')
    universe.add_argument("--weights", help="point weights, normalized (default equiprobable)")

    obs = argparse.ArgumentParser(add_help=False)
    obs.add_argument("--values", action="append", help="eigenvalues, one per basis vector (repeat per observable)")
    obs.add_argument("--basis", action="append", help='eigenbasis columns as rows "a,b;c,d" (default standard)')

    top = argparse.ArgumentParser(prog="pqm", description="Partitions, logical entropy and their linearization.")
    groups_ = top.add_subparsers(dest="section", required=True, metavar="GROUP")

    part = groups_.add_parser("partition", help="partition lattice operations")
    part_cmds = part.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in ("join", "meet", "dits", "refines", "entropy"):
        sp = part_cmds.add_parser(name, parents=[common, universe])
        sp.add_argument("--q", help="second partition")

    dens = groups_.add_parser("density", help="classical density matrices of partitions")
    dens_cmds = dens.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in ("build", "luders", "entropy", "report"):
        sp = dens_cmds.add_parser(name, parents=[common, universe])
        sp.add_argument("--sigma", help="partition to measure")

    qu = groups_.add_parser("quantum", help="quantum measurement and logical entropy")
    qu_cmds = qu.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in ("measure", "entropy", "born", "unitary"):
        sp = qu_cmds.add_parser(name, parents=[common, obs])
        sp.add_argument("--state", help="state vector, comma-separated (complex as 1+2i)")
        sp.add_argument("--rho", help="density matrix rows separated by ';'")
        sp.add_argument("--matrix", help="matrix rows separated by ';' (unitary)")

    ds = groups_.add_parser("dsd", help="direct-sum decompositions of observables")
    ds_cmds = ds.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in ("classify", "csco"):
        ds_cmds.add_parser(name, parents=[common, obs])

    g2 = groups_.add_parser("gf2", help="the powerset as a vector space over GF(2)")
    g2_cmds = g2.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in ("hat", "classify"):
        sp = g2_cmds.add_parser(name, parents=[common])
        sp.add_argument("--n", type=int, help="dimension")
        sp.add_argument("--basis", action="append", help='"U", "hat" or subsets like "bcd,acd,abd,abc"')
        sp.add_argument("--values", action="append", help="attribute values per basis vector")

    st = groups_.add_parser("stats", help="occupancy statistics")
    st_cmds = st.add_subparsers(dest="command", required=True, metavar="COMMAND")
    sp = st_cmds.add_parser("occupancy", parents=[common])
    sp.add_argument("--kind", choices=[k.value for k in stats.StatKind])
    sp.add_argument("--n", type=int, help="number of boxes")
    sp.add_argument("--k", type=int, help="number of balls")
    sp.add_argument("--theta", help="occupation numbers, comma-separated")

    gr = groups_.add_parser("grouprep", help="finite group representations")
    gr_cmds = gr.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in ("orbits", "irreps", "validate"):
        sp = gr_cmds.add_parser(name, parents=[common])
        sp.add_argument("--group", help="klein, s3 or cyclic:N (default klein)")
        sp.add_argument("--maps", help='one permutation per element, rows separated by ";"')
        sp.add_argument("--generators", help="commuting involutive generators for irreps (default 1,2)")

    ver = groups_.add_parser("verify", help="reproduce the published examples")
    ver_cmds = ver.add_subparsers(dest="command", required=True, metavar="COMMAND")
    sp = ver_cmds.add_parser("paper", parents=[common])
    sp.add_argument("--mutate", help="corrupt an operation as a negative control (join)")
    return top


HANDLERS = {
    "partition": cmd_partition,
    "density": cmd_density,
    "quantum": cmd_quantum,
    "dsd": cmd_dsd,
    "gf2": cmd_gf2,
    "stats": cmd_stats,
    "grouprep": cmd_grouprep,
    "verify": cmd_verify,
}


def _apply_infile(args, parser) -> None:
    with open(args.infile, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise UsageError("--in: expected a JSON object")
    for key, value in data.items():
        dest = key.replace("-", "_")
        if dest in ("section", "command", "infile", "json") or not hasattr(args, dest):
            raise UsageError(f"--in: unknown option {key!r}")
        if getattr(args, dest) is None:
            if dest in ("values", "basis") and not isinstance(value, list):
                value = [value]
            setattr(args, dest, value)


def run_command(argv: Sequence[str]) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.infile:
            _apply_infile(args, parser)
        data, text, *rest = HANDLERS[args.section](args)
    except UsageError as exc:
        print(f"pqm: usage error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"pqm: usage error: --in: {exc}", file=sys.stderr)
        return 2
    except (PQMError, ValueError, TypeError, ZeroDivisionError) as exc:
        print(f"pqm: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(data, ensure_ascii=False) if args.json else text)
    return rest[0] if rest else 0


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
