"""Command-line front end.

Exit status: 0 on success, 1 when a checked claim fails (violations, no
unique survivor, no representative within bounds), 2 on bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

from . import __version__
from .complexes import ComplexError, format_complex, parse_complex, reduce, tensor, validate
from .deduce import (LEVINE_AXIOM, DeductionError, DeductionInput, candidates, phi_matrix,
                     pipeline, step_line)
from .hatfilter import (FilteredComplexError, ch_from_basis, format_ch, format_filtered, hat_of,
                        parse_filtered)
from .localequiv import LocalEquivError, find_local_map, format_map, standard_representative
from .mazur import MazurError, build_gradings, check_against, format_table, lemma33_constraints
from .obstructions import LEMMA_FAMILIES, lifting_oracle, report_line
from .standard import ParamsError, build_standard, parse_params, phi, tau_epsilon_of

VERBS = ("validate", "reduce", "tensor", "hat", "ch", "std", "phi", "loceq", "stdrep",
         "obstruct", "mazur-table", "mazur-check", "deduce", "pipeline", "phimatrix")


# which bounds each verb actually uses, echoed in the report header
BOUNDED = {
    "stdrep": ("max_len", "max_abs"),
    "deduce": ("max_len", "max_abs"),
    "pipeline": ("max_len",),
    "obstruct": ("extra_gens", "exp_bound"),
}


class InputError(Exception):
    pass


class CheckFailed(Exception):
    pass


# --- helpers ------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()[:16]


def _load_complex(path: str):
    return parse_complex(_read(path))


def _load_filtered(path: str):
    """A hat complex from either an fgen file or an R-complex file."""
    text = _read(path)
    first = next((ln.split()[0] for ln in text.splitlines()
                  if ln.split("#", 1)[0].strip()), "")
    if first == "fgen":
        return parse_filtered(text)
    c = parse_complex(text)
    return hat_of(c if c.is_reduced() else reduce(c))


def _header(args, inputs: list) -> list[str]:
    vals = {k: getattr(args, k) for k in BOUNDED.get(args.verb, ())}
    if vals.get("exp_bound", 0) is None:
        vals["exp_bound"] = "2*max|entry|+2"
    bounds = [f"{k}={v}" for k, v in vals.items()]
    lines = [f"# floerlocal {__version__} command={args.verb}"]
    if bounds:
        lines.append("# bounds " + " ".join(bounds))
    for p in inputs:
        lines.append(f"# input {p} sha256={_digest(p)}")
    return lines


# --- verbs --------------------------------------------------------------------


def cmd_validate(args):
    rep = validate(_load_complex(args.files[0]))
    if not rep.ok:
        raise InputError("\n".join(rep.lines()))
    return rep.lines()


def cmd_reduce(args):
    return format_complex(reduce(_load_complex(args.files[0]))).splitlines()


def cmd_tensor(args):
    if len(args.files) != 2:
        raise InputError("tensor needs two complex files")
    a, b = (_load_complex(p) for p in args.files)
    return format_complex(tensor(a, b)).splitlines()


def cmd_hat(args):
    c = _load_complex(args.files[0])
    f = hat_of(c if c.is_reduced() else reduce(c))
    if args.figure:
        from .plotting import plot_filtered
        plot_filtered(f, args.figure, title=f"hat of {args.files[0]}")
    return format_filtered(f).splitlines()


def cmd_ch(args):
    f = _load_filtered(args.files[0])
    if args.figure:
        from .plotting import plot_filtered
        plot_filtered(f, args.figure, title="vertically simplified basis")
    return format_ch(ch_from_basis(f)).splitlines()


def _params_arg(args):
    if not args.files:
        raise InputError("expected a params list such as 1,-2,2,-1")
    return parse_params(args.files[0])


def cmd_std(args):
    p = _params_arg(args)
    tau, eps = tau_epsilon_of(p)
    out = [] if args.porcelain else [f"# C{p} tau={tau} epsilon={eps}"]
    return out + format_complex(build_standard(p)).splitlines()


def cmd_phi(args):
    p = _params_arg(args)
    if args.j is not None:
        return [f"phi_{args.j} = {phi(p, args.j)}"]
    top = max((abs(b) for b in p), default=0)
    return [f"phi_{j} = {phi(p, j)}" for j in range(1, top + 1)]


def cmd_loceq(args):
    if len(args.files) != 2:
        raise InputError("loceq needs two complex files")
    a, b = (_load_complex(p) for p in args.files)
    f = find_local_map(a, b)
    g = find_local_map(b, a)
    out = [f"loceq {'yes' if f is not None and g is not None else 'no'}"]
    if not args.porcelain:
        for label, m, s, t in (("f: A -> B", f, a, b), ("g: B -> A", g, b, a)):
            out.append(f"# {label}: {'none' if m is None else 'rows are targets'}")
            if m is not None:
                out += ["#   " + ln for ln in format_map(m, s, t).splitlines()]
    return out


def cmd_stdrep(args):
    c = _load_complex(args.files[0])
    if not c.is_reduced():
        c = reduce(c)
    stats: dict = {}
    p = standard_representative(c, args.max_len, args.max_abs, stats)
    if p is None:
        raise CheckFailed(f"stdrep none within max_len={args.max_len} max_abs={args.max_abs}")
    tau, eps = tau_epsilon_of(p)
    return [f"stdrep {p} tau={tau} epsilon={eps} tried={stats['tried']}"]


def cmd_obstruct(args):
    if args.files:
        prefixes = [tuple(parse_params_loose(args.files[0]))]
    else:
        prefixes = sorted({p for fam in LEMMA_FAMILIES for p in fam.instances()})
        prefixes += [(1, -1), (1, -1, 1, -1)]
    out = []
    for pre in prefixes:
        res = lifting_oracle(pre, args.extra_gens, args.exp_bound)  # None bound: 2*max+2
        line = report_line(pre, res)
        out.append(line if args.porcelain else f"{line} nodes={res.nodes}")
    return out


def parse_params_loose(text: str) -> list[int]:
    """Prefixes may have odd length, unlike full params."""
    s = text.strip().strip("()[]").replace(" ", "")
    try:
        vals = [int(t) for t in s.split(",") if t]
    except ValueError:
        raise InputError(f"cannot parse prefix {text!r}") from None
    if not vals or any(v == 0 for v in vals):
        raise InputError("prefix entries must be nonzero")
    return vals


def cmd_mazur_table(args):
    t = build_gradings(args.n)
    if args.figure:
        from .plotting import plot_table
        plot_table(t, args.figure, lemma33_constraints(args.n))
    out = [] if args.porcelain else [f"# {len(t)} points"]
    return out + format_table(t).splitlines()


def cmd_mazur_check(args):
    f = _load_filtered(args.files[0])
    cs = lemma33_constraints(args.n)
    rep = check_against(f, cs)
    if not rep.ok:
        raise CheckFailed("\n".join(rep.lines()))
    return rep.lines()


def cmd_deduce(args):
    n = args.n
    tau = args.tau if args.tau is not None else n + 1
    eps = args.epsilon if args.epsilon is not None else 1
    inp = DeductionInput(lemma33_constraints(n), tau, eps, args.max_len, args.max_abs)
    surv = candidates(inp, args.jobs)
    out = [] if args.porcelain else ["# " + LEVINE_AXIOM]
    out.append(step_line(n - 1, surv, tau, eps))
    if len(surv) != 1:
        raise CheckFailed("\n".join(out + [f"{len(surv)} survivors, expected 1"]))
    return out


def cmd_pipeline(args):
    trace: list = []
    try:
        pipeline(args.N, args.max_len, args.jobs, trace)
    except DeductionError as exc:
        raise CheckFailed(str(exc)) from None
    out = [] if args.porcelain else ["# " + LEVINE_AXIOM]
    return out + trace


def cmd_phimatrix(args):
    try:
        mat, rank = phi_matrix(args.N)
    except DeductionError as exc:
        raise CheckFailed(str(exc)) from None
    if args.figure:
        from .plotting import plot_phi_matrix
        plot_phi_matrix(mat, args.figure)
    return [" ".join(str(x) for x in row) for row in mat] + [f"rank={rank}"]


HANDLERS = {
    "validate": cmd_validate, "reduce": cmd_reduce, "tensor": cmd_tensor, "hat": cmd_hat,
    "ch": cmd_ch, "std": cmd_std, "phi": cmd_phi, "loceq": cmd_loceq, "stdrep": cmd_stdrep,
    "obstruct": cmd_obstruct, "mazur-table": cmd_mazur_table, "mazur-check": cmd_mazur_check,
    "deduce": cmd_deduce, "pipeline": cmd_pipeline, "phimatrix": cmd_phimatrix,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="floerlocal", description="local equivalence toolkit")
    ap.add_argument("--version", action="version", version=f"floerlocal {__version__}")
    ap.add_argument("verb", choices=VERBS, metavar="verb", help="one of: " + ", ".join(VERBS))
    ap.add_argument("files", nargs="*", help="input files, or a params list for std/phi/obstruct")
    ap.add_argument("--max-len", type=int, default=8)
    ap.add_argument("--max-abs", type=int, default=None)
    ap.add_argument("--extra-gens", type=int, default=2)
    ap.add_argument("--exp-bound", type=int, default=None)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--porcelain", action="store_true", help="machine-readable lines only")
    ap.add_argument("-o", "--output", help="write the report here instead of stdout")
    ap.add_argument("--figure", help="also render a PNG/PDF figure to this path")
    ap.add_argument("--j", type=int, help="index for phi")
    ap.add_argument("--n", type=int, default=2, help="satellite level for mazur-*/deduce")
    ap.add_argument("--N", type=int, default=3, help="pipeline length")
    ap.add_argument("--tau", type=int, help="override tau for deduce")
    ap.add_argument("--epsilon", type=int, help="override epsilon for deduce")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_abs is None:
        args.max_abs = args.n + 2 if args.verb == "deduce" else 3
    inputs = [p for p in args.files if Path(p).is_file()]
    try:
        body = HANDLERS[args.verb](args)
        status = 0
    except CheckFailed as exc:
        body, status = str(exc).splitlines(), 1
    except (InputError, ComplexError, FilteredComplexError, ParamsError, MazurError,
            LocalEquivError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    lines = _header(args, inputs) + body
    text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
