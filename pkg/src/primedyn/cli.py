"""Command-line entry point wiring all modules into reproducible runs."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np


def _parse_block(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError as exc:
        raise ValueError(f"bad block syntax {text!r}: expected e.g. 0,2,4") from exc


def _parse_floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(",") if x.strip() != "")


def _emit_json(payload, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out:
        from .fileio import atomic_write_text

        atomic_write_text(out, text)
    else:
        sys.stdout.write(text)


def _load_sequence(path: str):
    from .sequences import read_sequence

    try:
        return read_sequence(path)
    except (FileNotFoundError, IsADirectoryError) as exc:
        raise ValueError(f"cannot read sequence: {path}") from exc


def _write_prime_table(table, out: str, seed: int | None = None) -> None:
    from .fileio import atomic_write_bytes, atomic_write_text

    atomic_write_bytes(out, table.primes.astype("<u8").tobytes())
    sidecar = {"upper_bound": table.upper_bound, "count": table.count}
    if seed is not None:
        sidecar["seed"] = seed
    atomic_write_text(out + ".json", json.dumps(sidecar, sort_keys=True) + "\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primedyn",
        description="Prime residue and gap sequences through the lens of symbolic dynamics.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="PRNG seed (PCG64)")
    common.add_argument("--threads", type=int, default=1, help="worker cap; results are thread-count independent")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("primes", parents=[common], help="Sieve primes and write them as little-endian u64.")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--upto", type=int, help="all primes <= N")
    group.add_argument("--count", type=int, help="exactly the first N primes")
    p.add_argument("--out", help="binary output path (a .json sidecar is written next to it)")

    s = sub.add_parser("seq", parents=[common], help="Build a symbolic sequence and write it as .sym.")
    s.add_argument("--kind", required=True, choices=["residues", "two-class", "transition", "gaps", "map"])
    s.add_argument("--mod", type=int, default=None, help="modulus (default 4; 6 for gaps)")
    s.add_argument("--n-primes", type=int, default=10**6)
    s.add_argument("--map", dest="map_name", choices=["logistic", "tent", "shift", "gauss"])
    s.add_argument("--p", type=int, default=2, help="partition cells for --kind map")
    s.add_argument("--length", type=int, default=10**6, help="orbit length for --kind map")
    s.add_argument("--x0", type=float, default=None)
    s.add_argument("--out", help="output .sym path")

    n = sub.add_parser("null", parents=[common], help="Generate a null-model sequence or pseudo-prime table.")
    n.add_argument("--kind", required=True, choices=["t1u", "t1w", "t2", "t3"])
    n.add_argument("--p", type=int, default=2)
    n.add_argument("--weights", type=str, default=None, help="comma-separated weights for t1w")
    n.add_argument("--weight-a", type=float, default=0.5, help="P(A) of the t2 base stream")
    n.add_argument("--length", type=int, default=10**6, help="sequence length (t3: ceiling of the integer range)")
    n.add_argument("--xmax", type=int, default=None, help="t3 integer range ceiling (overrides --length)")
    n.add_argument(
        "--derive",
        choices=["residues", "two-class", "transition", "gaps"],
        help="t3 only: derive a symbolic sequence from the pseudo-primes",
    )
    n.add_argument("--mod", type=int, default=None, help="modulus for --derive")
    n.add_argument("--out", help="output path (.sym, or u64 table for t3 without --derive)")

    e = sub.add_parser("entropy", parents=[common], help="Renyi block entropies of a .sym sequence.")
    e.add_argument("--in", dest="infile", required=True, metavar="SEQ.sym")
    e.add_argument("--m-max", type=int, default=10)
    e.add_argument("--beta", type=str, default="0,1,2,4")
    e.add_argument("--proxy-m", type=int, default=None, help="also evaluate the spectrum proxy at this m")
    e.add_argument("--out", help="CSV output path (default: stdout)")

    g = sub.add_parser("gaps", parents=[common], help="Gap-residue admissibility, HL constants, densities.")
    gsub = g.add_subparsers(dest="gaps_command", required=True)
    go = gsub.add_parser("oracle", help="classify one residue block, e.g. 0,2,4")
    go.add_argument("block")
    go.add_argument("--out")
    ge = gsub.add_parser("enumerate", help="classify all 3^M residue blocks")
    ge.add_argument("m", type=int)
    ge.add_argument("--out")
    gh = gsub.add_parser("hl", help="Hardy-Littlewood constant for offsets, e.g. 3,6")
    gh.add_argument("offsets")
    gh.add_argument("--cutoff", type=int, default=10**6)
    gh.add_argument("--out")
    gd = gsub.add_parser("density", help="truncated block density")
    gd.add_argument("block")
    gd.add_argument("--order", type=int, required=True)
    gd.add_argument("--cutoff", type=int, default=10**6)
    gd.add_argument("--out")

    i = sub.add_parser("ifs", parents=[common], help="Chaos-game render of a .sym sequence.")
    i.add_argument("--in", dest="infile", required=True, metavar="SEQ.sym")
    i.add_argument("--width", type=int, default=1024)
    i.add_argument("--factor", type=float, default=0.5)
    i.add_argument("--burn-in", type=int, default=100)
    i.add_argument("--out", required=True, help="PGM output path")
    i.add_argument("--dim", action="store_true", help="print box-counting dimension JSON")
    i.add_argument("--points-csv", help="also write the (x, y) point cloud")

    r = sub.add_parser("report", parents=[common], help="Write the full artifact set with a digest manifest.")
    r.add_argument("--n-primes", type=int, default=10**6)
    r.add_argument("--out-dir", required=True)
    r.add_argument("--width", type=int, default=512)
    r.add_argument("--cutoff", type=int, default=10**6)
    r.add_argument("--no-plots", action="store_true", help="skip the rendered PNG figures")
    return parser


def _cmd_primes(args) -> int:
    from .primes import first_n_primes, sieve_upto

    table = sieve_upto(args.upto) if args.upto is not None else first_n_primes(args.count)
    if args.out:
        _write_prime_table(table, args.out)
    else:
        _emit_json(
            {
                "upper_bound": table.upper_bound,
                "count": table.count,
                "first": int(table.primes[0]),
                "last": int(table.primes[-1]),
            },
            None,
        )
    return 0


def _build_seq(args):
    from .maps import OrbitSpec, map_sequence
    from .primes import first_n_primes
    from .sequences import gap_residues, prime_residues, transition_sequence, two_class_sequence

    if args.kind == "map":
        if not args.map_name:
            raise ValueError("--kind map requires --map")
        spec = OrbitSpec(kind=args.map_name, length=args.length, x0=args.x0, seed=args.seed)
        return map_sequence(spec, args.p)
    mod = args.mod if args.mod is not None else (6 if args.kind == "gaps" else 4)
    if args.kind == "gaps":
        return gap_residues(first_n_primes(args.n_primes + 1), mod)
    table = first_n_primes(args.n_primes)
    if args.kind == "residues":
        return prime_residues(table, mod)
    if args.kind == "two-class":
        return two_class_sequence(table, mod)
    return transition_sequence(two_class_sequence(table, mod))


def _cmd_seq(args) -> int:
    from .sequences import write_sequence

    seq = _build_seq(args)
    if args.out:
        write_sequence(args.out, seq)
    else:
        _emit_json({"p": seq.p, "length": len(seq), "provenance": seq.provenance}, None)
    return 0


def _cmd_null(args) -> int:
    from .nullmodels import NullSpec, generate_null
    from .sequences import gap_residues, prime_residues, transition_sequence, two_class_sequence, write_sequence

    if args.kind == "t3":
        xmax = args.xmax if args.xmax is not None else args.length
        spec = NullSpec(kind="t3", xmax=xmax, seed=args.seed)
    elif args.kind == "t1w":
        if not args.weights:
            raise ValueError("t1w requires --weights")
        spec = NullSpec(kind="t1w", length=args.length, weights=_parse_floats(args.weights), seed=args.seed)
    elif args.kind == "t1u":
        spec = NullSpec(kind="t1u", length=args.length, p=args.p, seed=args.seed)
    else:
        spec = NullSpec(kind="t2", length=args.length, weight_a=args.weight_a, seed=args.seed)
    result = generate_null(spec)

    if args.kind == "t3" and args.derive:
        mod = args.mod if args.mod is not None else (6 if args.derive == "gaps" else 4)
        if args.derive == "residues":
            result = prime_residues(result, mod)
        elif args.derive == "two-class":
            result = two_class_sequence(result, mod)
        elif args.derive == "transition":
            result = transition_sequence(two_class_sequence(result, mod))
        else:
            result = gap_residues(result, mod)
        result.provenance.update({"null": "t3", "seed": args.seed})

    if args.out:
        if args.kind == "t3" and not args.derive:
            _write_prime_table(result, args.out, seed=args.seed)
        else:
            write_sequence(args.out, result)
    elif args.kind == "t3" and not args.derive:
        _emit_json({"count": result.count, "upper_bound": result.upper_bound, "seed": args.seed}, None)
    else:
        _emit_json({"p": result.p, "length": len(result), "provenance": result.provenance}, None)
    return 0


def _cmd_entropy(args) -> int:
    from .blocks import count_blocks_chunked
    from .entropy import renyi_block_entropy, spectrum_proxy
    from .fileio import atomic_write_text, fmt

    seq = _load_sequence(args.infile)
    betas = _parse_floats(args.beta)
    if args.m_max < 1 or args.m_max > 31:
        raise ValueError(f"--m-max must be in 1..31, got {args.m_max}")
    lines = ["m,beta,H,rate"]
    for m in range(1, args.m_max + 1):
        boundaries = [] if args.threads <= 1 else list(np.linspace(0, len(seq), args.threads + 1, dtype=int)[1:-1])
        census = count_blocks_chunked(seq, m, boundaries, threads=args.threads)
        for beta in betas:
            h = renyi_block_entropy(census, beta)
            lines.append(f"{m},{fmt(beta)},{fmt(h)},{fmt(h / m)}")
    if args.proxy_m:
        for beta, rate in spectrum_proxy(seq, m=args.proxy_m):
            lines.append(f"{args.proxy_m},{fmt(beta)},{fmt(rate * args.proxy_m)},{fmt(rate)}")
    text = "\n".join(lines) + "\n"
    if args.out:
        atomic_write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_gaps(args) -> int:
    from . import gaptheory

    if args.gaps_command == "oracle":
        block = _parse_block(args.block)
        verdict = gaptheory.is_admissible_gap_block(block)
        _emit_json(
            {
                "block": list(block),
                "verdict": verdict.verdict,
                "witness_prime": verdict.witness_prime,
            },
            args.out,
        )
    elif args.gaps_command == "enumerate":
        admissible, forbidden = gaptheory.enumerate_gap_blocks(args.m)
        payload = {
            "m": args.m,
            "admissible_count": len(admissible),
            "forbidden_count": len(forbidden),
        }
        if args.m <= 6:
            payload["admissible"] = [list(b) for b in sorted(admissible)]
            payload["forbidden"] = [list(b) for b in sorted(forbidden)]
        _emit_json(payload, args.out)
    elif args.gaps_command == "hl":
        offsets = _parse_block(args.offsets)
        value = gaptheory.hl_constant(offsets, args.cutoff)
        payload = {
            "offsets": list(offsets),
            "value": value.value,
            "prime_cutoff": value.prime_cutoff,
            "tail_error_bound": value.tail_error_bound,
        }
        if len(offsets) == 1:
            payload["closed_form"] = gaptheory.hl_single_gap(offsets[0], args.cutoff)
        _emit_json(payload, args.out)
    else:
        block = _parse_block(args.block)
        payload = {
            "block": list(block),
            "order": args.order,
            "numerator": gaptheory.block_density_numerator(block, args.order, args.cutoff),
            "density": gaptheory.block_density(block, args.order, args.cutoff),
        }
        _emit_json(payload, args.out)
    return 0


def _cmd_ifs(args) -> int:
    from .fileio import atomic_write_bytes, atomic_write_text
    from .ifs import IFSConfig, box_counting_dimension, chaos_game_render, default_scales, points_csv, to_pgm

    seq = _load_sequence(args.infile)
    config = IFSConfig(
        vertex_count=seq.p, contraction=args.factor, width=args.width, burn_in=args.burn_in
    )
    grid = chaos_game_render(seq, config)
    atomic_write_bytes(args.out, to_pgm(grid))
    if args.points_csv:
        atomic_write_text(args.points_csv, points_csv(seq, config))
    if args.dim:
        scales = default_scales(args.width)
        _emit_json(
            {
                "width": args.width,
                "scales": list(scales),
                "dimension": box_counting_dimension(grid, scales),
                "points": grid.points_plotted,
            },
            None,
        )
    return 0


def _cmd_report(args) -> int:
    from .report import report_paper

    manifest = report_paper(
        n_primes=args.n_primes,
        out_dir=args.out_dir,
        seed=args.seed,
        width=args.width,
        cutoff=args.cutoff,
        make_plots=not args.no_plots,
    )
    sys.stdout.write(f"wrote {len(manifest['artifacts'])} artifacts to {args.out_dir}\n")
    return 0


_DISPATCH = {
    "primes": _cmd_primes,
    "seq": _cmd_seq,
    "null": _cmd_null,
    "entropy": _cmd_entropy,
    "gaps": _cmd_gaps,
    "ifs": _cmd_ifs,
    "report": _cmd_report,
}


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"primedyn: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
