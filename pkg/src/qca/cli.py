"""Command-line front end: seed management, basis computation, verification.

Exit status is 0 exactly when every requested check passed; file formats are
the JSON schemas used across the package (seed files, element record lists,
expansion record lists).  All randomized suites take an explicit RNG seed and
default to a fixed one, so runs are reproducible.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .crystal import Rank2Crystal, rank2_principal_seed
from .ebasis import EBasis, MutatedBasis
from .kronecker import KroneckerAlgebra
from .laurent import LaurentPoly
from .lusztig import RowCache, TriangularTable, compare_bases, phi_rank2_principal
from .report import Report
from .seed import (
    QuantumSeed,
    double_seed,
    load_seed,
    mutate,
    principal_seed,
    save_seed,
    seed_from_dict,
    seed_hash,
    seed_to_dict,
    validate,
)
from . import verify as suites

DEFAULT_RNG_SEED = 12345


@dataclass
class RunConfig:
    """Resolved options shared by the subcommands."""

    output_format: str = "text"
    division_cap: int = 10**6
    expansion_cap: int = 10**5
    cache_dir: str | None = None
    rng_seed: int = DEFAULT_RNG_SEED
    jobs: int = 1

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        cache = getattr(args, "cache", None)
        if cache is None and not getattr(args, "no_cache", False):
            cache = os.environ.get("QCA_CACHE_DIR", ".qca_cache")
        if getattr(args, "no_cache", False):
            cache = None
        return cls(
            output_format=getattr(args, "format", "text"),
            division_cap=getattr(args, "division_cap", 10**6),
            expansion_cap=getattr(args, "expansion_cap", 10**5),
            cache_dir=cache,
            rng_seed=getattr(args, "random_seed", DEFAULT_RNG_SEED),
            jobs=getattr(args, "jobs", 1),
        )


def _parse_vector(text: str):
    return tuple(int(x) for x in text.split(","))


def _emit_reports(config: RunConfig, command: str, reports) -> int:
    status = 0 if all(r.ok for r in reports) else 1
    if config.output_format == "machine":
        print(
            json.dumps(
                {
                    "command": command,
                    "ok": status == 0,
                    "reports": [r.to_dict() for r in reports],
                }
            )
        )
    else:
        for r in reports:
            print(r.summary())
    return status


def _expansion_string(basis: EBasis, head, coeffs: dict) -> str:
    keys = [head] + sorted(
        (k for k in coeffs if k != head),
        key=lambda k: (-basis.grading(k), k),
    )
    parts = []
    for key in keys:
        c = coeffs.get(key)
        if c is None or c.is_zero():
            continue
        name = "E(" + ",".join(str(x) for x in key) + ")"
        items = c.items()
        if len(items) == 1:
            (e, cc) = items[0]
            mag = LaurentPoly.v_power(e, abs(cc))
            sign = "-" if cc < 0 else "+"
            body = name if mag.is_one() else f"{mag} {name}"
        else:
            sign = "+"
            body = f"({c}) {name}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# seed subcommands


def cmd_seed(args) -> int:
    config = RunConfig.from_args(args)
    if args.seed_cmd == "check":
        seed = _load_seed_lenient(args.seedfile)
        report = validate(seed)
        if config.output_format == "machine":
            print(json.dumps(report.to_dict()))
        else:
            print("; ".join(report.lines()[:3]))
            for line in report.lines()[3:]:
                print(line)
        return 0 if report.valid else 1
    if args.seed_cmd == "mutate":
        seed = load_seed(args.seedfile)
        mutated = mutate(seed, args.k - 1)
        out = args.output or _derived_name(args.seedfile, f"mu{args.k}")
        save_seed(mutated, out)
        print(f"wrote {out}")
        return 0
    if args.seed_cmd == "principal":
        with open(args.B, encoding="utf-8") as fh:
            B = json.load(fh)
        seed = principal_seed(B, _parse_vector(args.d))
        out = args.output or "principal.json"
        save_seed(seed, out)
        print(f"wrote {out}")
        return 0
    if args.seed_cmd == "double":
        seed = load_seed(args.seedfile)
        out = args.output or _derived_name(args.seedfile, "double")
        save_seed(double_seed(seed), out)
        print(f"wrote {out}")
        return 0
    raise AssertionError(args.seed_cmd)


def _derived_name(path: str, tag: str) -> str:
    root, ext = os.path.splitext(path)
    return f"{root}.{tag}{ext or '.json'}"


def _load_seed_lenient(path: str) -> QuantumSeed:
    """Load without rejecting invalid seeds, so `check` can report on them."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    try:
        return seed_from_dict(data)
    except ValueError:
        return QuantumSeed(
            m=int(data["m"]),
            n=int(data["n"]),
            btilde=tuple(tuple(int(x) for x in r) for r in data["B"]),
            lam=tuple(tuple(int(x) for x in r) for r in data["Lambda"]),
            d=tuple(int(x) for x in data["d"]),
            order=tuple(
                int(k) - 1 for k in data.get("order", range(1, int(data["n"]) + 1))
            ),
        )


# ---------------------------------------------------------------------------
# basis subcommand


def cmd_basis(args) -> int:
    config = RunConfig.from_args(args)
    seed = load_seed(args.seedfile)
    basis = EBasis(seed, expansion_cap=config.expansion_cap)
    a = _parse_vector(args.a)
    if len(a) != seed.m:
        print(f"label must have {seed.m} entries", file=sys.stderr)
        return 2
    cache = None
    cached_before = False
    if args.kind == "c" and config.cache_dir:
        cache = RowCache(config.cache_dir, seed_hash(seed))
        cached_before = cache.load(a) is not None
    table = TriangularTable(basis, cache=cache)
    if args.kind == "e":
        element = basis.element(a)
        coeffs = {tuple(a): LaurentPoly.one()}
        head_name = "E"
    else:
        element = table.element(a)
        coeffs = table.expansion(a)
        head_name = "C"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(element.to_records(), fh)
            fh.write("\n")
    if args.expansion_out:
        with open(args.expansion_out, "w", encoding="utf-8") as fh:
            json.dump(
                [
                    {"a": list(k), "coeff": str(c)}
                    for k, c in sorted(coeffs.items())
                ],
                fh,
            )
            fh.write("\n")
    if config.output_format == "machine":
        print(
            json.dumps(
                {
                    "kind": args.kind,
                    "a": list(a),
                    "element": element.to_records(),
                    "expansion": [
                        {"a": list(k), "coeff": str(c)} for k, c in sorted(coeffs.items())
                    ],
                    "cached": cached_before,
                }
            )
        )
    else:
        print(f"{head_name} = {_expansion_string(basis, tuple(a), coeffs)}")
        print(f"element: {element}")
        if args.kind == "c":
            print(f"cached: {'yes' if cached_before else 'no'}")
    return 0


# ---------------------------------------------------------------------------
# verify subcommands


def cmd_verify(args) -> int:
    config = RunConfig.from_args(args)
    rng = random.Random(config.rng_seed)
    name = args.verify_cmd
    reports: list[Report] = []
    if name == "kronecker":
        alg = KroneckerAlgebra(division_cap=config.division_cap)
        reports.append(alg.verify_chebyshev_family(args.rmax))
        reports.append(alg.verify_cluster_monomial_labels())
        reports.append(alg.verify_e_times_x0(args.box))
    elif name == "rank2-principal":
        reports.append(_rank2_principal_report(args.b, args.c, args.box))
    elif name == "identities":
        reports.append(suites.check_qbinomial_products(args.rmax))
        rel = Report(name=f"exchange relations on {args.seeds} random principal seeds")
        prin = Report(name="principal product identities on the same seeds")
        for _ in range(args.seeds):
            s = suites.random_principal_seed(rng, rng.randint(1, args.nmax))
            rel.absorb(suites.check_exchange_relations(EBasis(s)))
            if s.n >= 2:
                prin.absorb(suites.check_principal_identities(s))
        reports.extend([rel, prin])
        for pair in args.pairs.split(";"):
            b, c = (int(x) for x in pair.split(","))
            cr = Rank2Crystal(b, c)
            reports.append(cr.verify_identities(bound=args.bound))
            reports.append(cr.verify_nu_agreement(200, rng))
    elif name == "psi":
        seed = load_seed(args.seedfile)
        n2 = 2 * seed.n
        samples = [
            tuple(rng.randint(-args.box, args.box) for _ in range(n2))
            for _ in range(args.samples)
        ]
        reports.append(suites.check_bullet_embedding(seed, samples))
    elif name == "compare-bases":
        seed = load_seed(args.seedfile)
        labels = [
            tuple(a) + (0,) * (seed.m - seed.n)
            for a in itertools.product(
                range(-args.window, args.window + 1), repeat=seed.n
            )
        ]
        reports.append(_compare_bases_parallel(seed, labels, config.jobs))
    elif name == "properties":
        reports.extend(_property_suite(rng, args.seeds, args.count))
    else:
        raise AssertionError(name)
    return _emit_reports(config, f"verify {name}", reports)


def _rank2_principal_report(b: int, c: int, box: int) -> Report:
    rep = Report(name=f"rank-2 principal unit coefficients (b={b}, c={c})")
    basis = EBasis(rank2_principal_seed(b, c))
    mut = MutatedBasis(basis)
    for a1 in range(-box, box + 1):
        for a2 in range(-box, box + 1):
            a = (a1, a2, 0, 0)
            try:
                unit = mut.unit_label(a)
            except ValueError as exc:
                rep.record(False, f"a={a}: {exc}")
                continue
            rep.record(
                unit == phi_rank2_principal(a, b, c),
                f"a={a}: unit label {unit} differs from closed form",
            )
    return rep


def _compare_chunk(payload):
    seed_data, labels = payload
    seed = seed_from_dict(seed_data)
    rep = compare_bases(EBasis(seed), [tuple(a) for a in labels])
    return rep.checks, rep.failures


def _compare_bases_parallel(seed: QuantumSeed, labels, jobs: int) -> Report:
    if jobs <= 1 or len(labels) < 2:
        return compare_bases(EBasis(seed), labels)
    rep = Report(name="triangular basis agrees across mutation")
    chunks = [labels[i::jobs] for i in range(jobs) if labels[i::jobs]]
    payloads = [(seed_to_dict(seed), [list(a) for a in chunk]) for chunk in chunks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for checks, failures in pool.map(_compare_chunk, payloads):
            rep.checks += checks
            rep.failures.extend(failures)
    return rep


def _property_suite(rng, seeds: int, count: int):
    reports = []
    roundtrip = Report(name="expansion roundtrips")
    triang = Report(name="involution row triangularity")
    props = Report(name="triangular element properties")
    shift = Report(name="frozen shift invariance")
    for _ in range(seeds):
        s = suites.random_principal_seed(rng, rng.randint(2, 3))
        basis = EBasis(s)
        roundtrip.absorb(suites.check_expand_roundtrip(basis, rng, count))
        triang.absorb(suites.check_bar_triangularity(basis, rng, max(count // 3, 5)))
        props.absorb(
            suites.check_triangular_properties(
                TriangularTable(basis), rng, max(count // 3, 5)
            )
        )
        shift.absorb(suites.check_frozen_shift(MutatedBasis(basis), rng, max(count // 2, 5)))
    trans = suites.check_order_transposition(
        principal_seed(((0, 0, -1), (0, 0, -1), (1, 1, 0)), (1, 1, 1)),
        (1, 0, 2),
        rng,
        count,
    )
    psi = suites.check_bullet_embedding(
        suites.random_principal_seed(rng, 2),
        [tuple(rng.randint(-1, 1) for _ in range(4)) for _ in range(50)],
    )
    reports.extend([roundtrip, triang, props, shift, trans, psi])
    return reports


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qca",
        description="Exact quantum cluster algebra computations: seeds, "
        "standard monomials, canonical triangular bases, verification suites.",
    )
    parser.add_argument("--format", choices=["text", "machine"], default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p_seed = sub.add_parser("seed", help="validate or transform seed files")
    seed_sub = p_seed.add_subparsers(dest="seed_cmd", required=True)
    p = seed_sub.add_parser("check")
    p.add_argument("seedfile")
    p = seed_sub.add_parser("mutate")
    p.add_argument("seedfile")
    p.add_argument("-k", type=int, required=True, help="1-based exchange index")
    p.add_argument("-o", "--output")
    p = seed_sub.add_parser("principal")
    p.add_argument("--B", required=True, help="JSON file with the n x n exchange matrix")
    p.add_argument("--d", required=True, help="comma-separated symmetrizers")
    p.add_argument("-o", "--output")
    p = seed_sub.add_parser("double")
    p.add_argument("seedfile")
    p.add_argument("-o", "--output")
    p_seed.set_defaults(func=cmd_seed)

    p_basis = sub.add_parser("basis", help="compute a basis element")
    p_basis.add_argument("kind", choices=["e", "c"])
    p_basis.add_argument("seedfile")
    p_basis.add_argument("--a", required=True, help="comma-separated label")
    p_basis.add_argument("-o", "--output")
    p_basis.add_argument("--expansion-out")
    p_basis.add_argument("--cache")
    p_basis.add_argument("--no-cache", action="store_true")
    p_basis.add_argument("--expansion-cap", type=int, default=10**5)
    p_basis.set_defaults(func=cmd_basis)

    p_ver = sub.add_parser("verify", help="run verification suites")
    ver_sub = p_ver.add_subparsers(dest="verify_cmd", required=True)
    p = ver_sub.add_parser("kronecker")
    p.add_argument("--rmax", type=int, default=4)
    p.add_argument("--box", type=int, default=3)
    p.add_argument("--division-cap", type=int, default=10**6)
    p = ver_sub.add_parser("rank2-principal")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--box", type=int, default=2)
    p = ver_sub.add_parser("identities")
    p.add_argument("--rmax", type=int, default=6)
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--pairs", default="1,1;2,1;2,2")
    p.add_argument("--random-seed", type=int, default=DEFAULT_RNG_SEED)
    p = ver_sub.add_parser("psi")
    p.add_argument("--seed", dest="seedfile", required=True)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--box", type=int, default=1)
    p.add_argument("--random-seed", type=int, default=DEFAULT_RNG_SEED)
    p = ver_sub.add_parser("compare-bases")
    p.add_argument("--seed", dest="seedfile", required=True)
    p.add_argument("--window", type=int, default=2)
    p.add_argument("--jobs", type=int, default=1)
    p = ver_sub.add_parser("properties")
    p.add_argument("--seeds", type=int, default=5)
    p.add_argument("--count", type=int, default=30)
    p.add_argument("--random-seed", type=int, default=DEFAULT_RNG_SEED)
    p_ver.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
