"""Command-line front end: run checks, list the catalog, dump samples."""

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields

from .heckealg import E_SIDE, F_SIDE, HeckeElt, verify_sft_special, verify_xi_identity
from .localfield import ConfigError, LocalCfg
from .orbint import sampling
from .orbint.engines import class_representative
from .orbint.verify import (
    verify_elementary_lemma,
    verify_hecke_fl,
    verify_invariant_conjugation,
    verify_jr_fl,
    verify_omega_equivariance,
    verify_orbital_reduction,
    verify_relative_fl,
    verify_split_transfer,
    verify_window_stability,
)
from .report import OrbReport
from .symfunc import hall_littlewood, monomial_sym, partitions

CATALOG = [
    ("sft_special", "(eqn: sft special)"),
    ("xi_identity", "(eqn: local goal)"),
    ("hl_degeneration", "Hall-Littlewood polynomials at t = 1"),
    ("jr_fl", "Theorem: (JR fundamental lemma)"),
    ("hecke_fl", "Theorem: (JR fundamental lemma for algebra)"),
    ("relative_fl", "Theorem: (Relative fundamental lemma)"),
    ("orbital_reduction", "Lemma: (orbital reduction)"),
    ("elementary_lemma", "Lemma: (elementary lemma)"),
    ("split_transfer", "Prop: (split transfer)"),
    ("property_suite", "omega equivariance, invariant conjugation, window stability"),
]
CHECK_IDS = [c for c, _ in CATALOG]


@dataclass
class RunConfig:
    p: int = 3
    epsilon: int = None
    checks: list = field(default_factory=lambda: ["sft_special"])
    n: int = 1
    n_max: int = 3
    d_max: int = 4
    window: int = None
    samples: int = 8
    seed: int = 0
    jobs: int = 1

    def validate(self):
        for c in self.checks:
            if c not in CHECK_IDS:
                raise ConfigError("unknown check %r" % c)
        if self.n_max > 4:
            raise ConfigError("symbolic checks support n <= 4")
        if self.n not in (1, 2):
            raise ConfigError("enumerative checks support n in (1, 2)")
        if self.samples < 0:
            raise ConfigError("sample count must be non-negative")
        self.local()
        return self

    def local(self):
        return LocalCfg(self.p, self.epsilon)

    @classmethod
    def from_file(cls, path):
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError("config is not valid JSON: %s" % exc) from None
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise ConfigError("unknown config keys: %s" % ", ".join(sorted(extra)))
        return cls(**data)


def list_checks():
    return ["%s → %s" % (c, anchor) for c, anchor in CATALOG]


# -- check runners ---------------------------------------------------------

def _grid_sft(rc):
    return [verify_sft_special(n, d) for n in range(1, rc.n_max + 1) for d in range(1, rc.d_max + 1)]


def _grid_xi(rc):
    return [verify_xi_identity(n, a, n - a, d)
            for n in range(2, rc.n_max + 1) for a in range(1, n) for d in range(1, rc.d_max + 1)]


def _hl_degeneration(rc):
    rows = []
    for n in range(1, rc.n_max + 1):
        for d in range(rc.d_max + 1):
            for lam in partitions(d, n):
                lhs = hall_littlewood(lam, n, 1)
                rhs = monomial_sym(lam, n)
                rows.append(OrbReport.compare("hl_degeneration", {"n": n, "lambda": list(lam)},
                                              str(lhs.sorted_terms()), str(rhs.sorted_terms())))
    return rows


def _jr_samples(rc, cfg):
    if rc.n == 1:
        return sampling.jr_rank1_samples(cfg, rc.samples, rc.seed, M=rc.window or 4)
    return sampling.jr_rank2_samples(cfg, rc.samples, rc.seed, M=rc.window or 2,
                                     vanishing=rc.samples // 4)


def _jr_fl(rc, cfg):
    M = rc.window or (4 if rc.n == 1 else 2)
    return verify_jr_fl(_jr_samples(rc, cfg), cfg, M, rc.seed)


HECKE_TYPES = [(0, 0), (1, 0), (1, 1), (2, 0)]


def _hecke_samples(rc, cfg, lam):
    # the vanishing branch does not depend on phi; draw it once
    return sampling.hecke_samples(cfg, lam, rc.samples, rc.seed,
                                  vanishing=min(4, rc.samples) if lam == (0, 0) else 0)


def _hecke_fl(rc, cfg):
    rows = []
    for lam in HECKE_TYPES:
        phi = HeckeElt.indicator(lam, E_SIDE)
        samples = _hecke_samples(rc, cfg, lam)
        rows += verify_hecke_fl(phi, samples, cfg, rc.window or 10, rc.seed)
    return rows


def _relative_fl(rc, cfg):
    samples = sampling.relative_samples(cfg, rc.samples, rc.seed, vanishing=min(4, rc.samples))
    return verify_relative_fl(samples, cfg, rc.window or 2, seed=rc.seed)


def _reduction_inputs(rc, cfg):
    return [class_representative(s["alpha"], s["beta"], s["sign"], cfg)
            for s in sampling.relative_samples(cfg, rc.samples, rc.seed, vanishing=0)]


def _orbital_reduction(rc, cfg):
    return verify_orbital_reduction(_reduction_inputs(rc, cfg), cfg, rc.window or 2, rc.seed)


ELEMENTARY_TYPES = [(0, 0), (1, 0), (1, 1)]


def _elementary_lemma(rc, cfg):
    Xs = sampling.integral_endomorphisms(cfg, rc.samples, rc.seed)
    phis = [HeckeElt.indicator(lam, E_SIDE) for lam in ELEMENTARY_TYPES]
    return verify_elementary_lemma(Xs, phis, cfg, rc.window or 2, rc.seed)


def split_pairs():
    one = lambda lam: HeckeElt.indicator(lam, F_SIDE)  # noqa: E731
    unit = (one((0,)), one((0, 0)))
    step = (one((1,)), one((1, 0)))
    return [(unit, unit), (step, unit), (unit, step), (step, (one((0,)), one((1, -1))))]


def _split_transfer(rc, cfg):
    samples = sampling.split_samples(cfg, rc.samples, rc.seed)
    return verify_split_transfer(split_pairs(), samples, cfg, rc.window or 3, 4, rc.seed)


def _property_suite(rc, cfg):
    s1 = sampling.jr_rank1_samples(cfg, rc.samples, rc.seed)
    rows = verify_omega_equivariance(s1, cfg, rc.seed) + verify_invariant_conjugation(s1, cfg, rc.seed)
    rows += verify_window_stability(s1, cfg, 4, rc.seed)
    s2 = sampling.jr_rank2_samples(cfg, min(rc.samples, 4), rc.seed, M=2,
                                        vanishing=min(rc.samples, 1))
    rows += verify_omega_equivariance(s2, cfg, rc.seed) + verify_invariant_conjugation(s2, cfg, rc.seed)
    # self-dual enumeration at M = 3 is too slow for the rank-2 unitary side
    rows += verify_window_stability(s2, cfg, 2, rc.seed, unitary=False)
    return rows


RUNNERS = {
    "sft_special": lambda rc, cfg: _grid_sft(rc),
    "xi_identity": lambda rc, cfg: _grid_xi(rc),
    "hl_degeneration": lambda rc, cfg: _hl_degeneration(rc),
    "jr_fl": _jr_fl,
    "hecke_fl": _hecke_fl,
    "relative_fl": _relative_fl,
    "orbital_reduction": _orbital_reduction,
    "elementary_lemma": _elementary_lemma,
    "split_transfer": _split_transfer,
    "property_suite": _property_suite,
}


def run_check(check, rc):
    cfg = rc.local()
    try:
        return RUNNERS[check](rc, cfg)
    except Exception as exc:  # engine errors become failed rows
        return [OrbReport(check, {"p": rc.p}, None, None, 0, "fail", rc.seed,
                          {"error": "%s: %s" % (type(exc).__name__, exc)})]


def _run_one(args):
    check, data = args
    return [r.as_row() for r in run_check(check, RunConfig(**data))]


def run(rc, out=sys.stdout, csv_path=None):
    """Run the selected checks; returns (exit code, rows)."""
    rc.validate()
    tasks = [(c, asdict(rc)) for c in rc.checks]
    if rc.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=rc.jobs) as pool:
            results = list(pool.map(_run_one, tasks))
    else:
        results = [_run_one(t) for t in tasks]
    rows = [r for chunk in results for r in chunk]
    for r in rows:
        out.write(json.dumps(r, sort_keys=True) + "\n")
    if csv_path:
        write_csv(rows, csv_path)
    return (0 if all(r["status"] == "pass" for r in rows) else 1), rows


def write_csv(rows, path):
    cols = ["check", "params", "lhs", "rhs", "factor", "status", "seed"]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(cols)
        for r in rows:
            w.writerow([json.dumps(r[c], sort_keys=True) if c == "params" else r[c] for c in cols])


def summarize(rows):
    counts = {}
    for r in rows:
        key = (r["check"], r["status"])
        counts[key] = counts.get(key, 0) + 1
    return ["%s %s %d" % (c, s, k) for (c, s), k in sorted(counts.items())]


# -- sample dump -----------------------------------------------------------

def _plain(x):
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if hasattr(x, "full"):
        return _plain(x.full())
    if x is None or isinstance(x, (int, str)):
        return x
    return str(x)


def sample_dump(rc):
    rc.validate()
    cfg = rc.local()
    rows = []
    for check in rc.checks:
        if check == "jr_fl" or check == "property_suite":
            for s in _jr_samples(rc, cfg):
                rows.append({"check": check, "kind": s["kind"], "X": _plain(s["X"]), "Y": _plain(s["Y"])})
        elif check == "hecke_fl":
            for lam in HECKE_TYPES:
                for s in _hecke_samples(rc, cfg, lam):
                    rows.append({"check": check, "type": list(lam), "kind": s["kind"],
                                 "X": _plain(s["X"]), "Y": _plain(s["Y"])})
        elif check in ("relative_fl", "orbital_reduction"):
            vanishing = min(4, rc.samples) if check == "relative_fl" else 0
            for s in sampling.relative_samples(cfg, rc.samples, rc.seed, vanishing=vanishing):
                rows.append({"check": check, "kind": s["kind"], "alpha": str(s["alpha"]),
                             "beta": str(s["beta"]), "class": s["sign"]})
        elif check == "elementary_lemma":
            for X in sampling.integral_endomorphisms(cfg, rc.samples, rc.seed):
                rows.append({"check": check, "X": _plain(X)})
        elif check == "split_transfer":
            for s in sampling.split_samples(cfg, rc.samples, rc.seed):
                rows.append({"check": check, "delta1": _plain(s["delta1"]), "delta2": _plain(s["delta2"])})
    return [json.dumps(r, sort_keys=True) for r in rows]


# -- entry point -----------------------------------------------------------

def _parser():
    ap = argparse.ArgumentParser(prog="relfl", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)
    for name in ("run", "sample-dump"):
        sp = sub.add_parser(name)
        sp.add_argument("--config")
        sp.add_argument("--check", nargs="+", choices=CHECK_IDS)
        sp.add_argument("--p", type=int)
        sp.add_argument("--epsilon", type=int)
        sp.add_argument("--n", type=int)
        sp.add_argument("--n-max", type=int)
        sp.add_argument("--d-max", type=int)
        sp.add_argument("--samples", type=int)
        sp.add_argument("--seed", type=int)
        sp.add_argument("--window", type=int)
        sp.add_argument("--jobs", type=int)
        if name == "run":
            sp.add_argument("--emit-csv")
    sub.add_parser("list-checks")
    return ap


def config_from_args(args):
    rc = RunConfig.from_file(args.config) if args.config else RunConfig()
    overrides = {"checks": args.check, "p": args.p, "epsilon": args.epsilon, "n": args.n,
                 "n_max": args.n_max, "d_max": args.d_max, "samples": args.samples,
                 "seed": args.seed, "window": args.window, "jobs": args.jobs}
    for k, v in overrides.items():
        if v is not None:
            setattr(rc, k, v)
    return rc


def main(argv=None):
    args = _parser().parse_args(argv)
    if args.cmd == "list-checks":
        print("\n".join(list_checks()))
        return 0
    try:
        rc = config_from_args(args)
        if args.cmd == "sample-dump":
            for line in sample_dump(rc):
                print(line)
            return 0
        code, rows = run(rc, csv_path=args.emit_csv)
    except ConfigError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 2
    for line in summarize(rows):
        print(line, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
