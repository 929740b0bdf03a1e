"""One-shot reproduction run: every table, curve, and attractor as files.

Writes delimited outputs (CSV), raw attractor rasters (PGM), rendered figures
(PNG), and a manifest with a content digest per artifact.  Identical inputs
produce identical digests.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from . import entropy, gaptheory, ifs
from .blocks import count_blocks
from .fileio import atomic_write_bytes, atomic_write_text, fmt
from .maps import OrbitSpec, map_sequence
from .nullmodels import NullSpec, generate_null
from .primes import PrimeTable, first_n_primes
from .sequences import SymbolSequence, gap_residues, prime_residues, transition_sequence, two_class_sequence

REPORT_BETAS = (0.0, 1.0, 2.0, 4.0)
REPORT_M_MAX = 10


def _corpus(n_primes: int, seed: int) -> dict[str, SymbolSequence]:
    table = first_n_primes(n_primes + 2)
    head = PrimeTable(upper_bound=int(table.primes[n_primes - 1]), primes=table.primes[:n_primes])
    transition = transition_sequence(two_class_sequence(head, 4))
    gaps = gap_residues(table, 6)
    return {
        "primes_mod4": prime_residues(head, 4),
        "transition": transition,
        "gap_residues": gaps,
        "null_pairs": generate_null(NullSpec(kind="t2", length=len(transition), seed=seed)),
        "null_triangle": generate_null(NullSpec(kind="t1u", p=3, length=len(gaps), seed=seed + 1)),
        "logistic_p2": map_sequence(OrbitSpec(kind="logistic", length=n_primes, seed=seed + 2), 2),
    }


def _entropy_rates_csv(corpus: dict[str, SymbolSequence]) -> str:
    lines = ["sequence,m,beta,H,rate"]
    for name, seq in corpus.items():
        grid = entropy.renyi_grid(seq, REPORT_M_MAX, REPORT_BETAS)
        for m, beta, h, rate in grid.entries:
            lines.append(f"{name},{m},{fmt(beta)},{fmt(h)},{fmt(rate)}")
    return "\n".join(lines) + "\n"


def _spectrum_csv(corpus: dict[str, SymbolSequence]) -> str:
    lines = ["sequence,beta,rate"]
    for name in ("primes_mod4", "gap_residues", "logistic_p2"):
        for beta, rate in entropy.spectrum_proxy(corpus[name]):
            lines.append(f"{name},{fmt(beta)},{fmt(rate)}")
    return "\n".join(lines) + "\n"


def _forbidden_blocks_csv(gaps: SymbolSequence) -> str:
    lines = ["m,block,verdict,witness_prime,observed_count"]
    for m in range(1, 5):
        census = count_blocks(gaps, m)
        admissible, forbidden = gaptheory.enumerate_gap_blocks(m)
        for block in sorted(admissible) + sorted(forbidden):
            verdict = gaptheory.is_admissible_gap_block(block)
            code = 0
            for residue in block:
                code = code * 3 + residue // 2
            observed = census.counts.get(code, 0)
            witness = "" if verdict.witness_prime is None else str(verdict.witness_prime)
            name = "-".join(str(r) for r in block)
            lines.append(f"{m},{name},{verdict.verdict},{witness},{observed}")
    return "\n".join(lines) + "\n"


def _hl_constants_csv(cutoff: int) -> str:
    lines = ["g,value,closed_form,tail_error_bound"]
    for g in range(1, 13):
        direct = gaptheory.hl_constant((g,), cutoff)
        closed = gaptheory.hl_single_gap(g, cutoff)
        lines.append(f"{g},{fmt(direct.value)},{fmt(closed)},{fmt(direct.tail_error_bound)}")
    return "\n".join(lines) + "\n"


def _hl_aux_csv(cutoff: int) -> str:
    a, b = gaptheory.aux_products(cutoff)
    return "name,value\n" + f"a,{fmt(a)}\n" + f"b,{fmt(b)}\n"


def _densities_csv(gaps: SymbolSequence, cutoff: int) -> str:
    lines = ["source,p0,p2,p4"]
    for order in range(1, 5):
        p0, p2, p4 = (gaptheory.residue_density(r, order, cutoff) for r in (0, 2, 4))
        lines.append(f"order{order},{fmt(p0)},{fmt(p2)},{fmt(p4)}")
    freq = gaps.frequencies()
    lines.append(f"empirical,{fmt(freq[0])},{fmt(freq[1])},{fmt(freq[2])}")
    return "\n".join(lines) + "\n"


def _block_densities_csv(cutoff: int, order: int = 2) -> str:
    _, b = gaptheory.aux_products(cutoff)
    admissible, _ = gaptheory.enumerate_gap_blocks(2)
    lines = ["block,numerator,numerator_over_b,density"]
    for block in sorted(admissible):
        numerator = gaptheory.block_density_numerator(block, order, cutoff)
        density = gaptheory.block_density(block, order, cutoff)
        name = "-".join(str(r) for r in block)
        lines.append(f"{name},{fmt(numerator)},{fmt(numerator / b)},{fmt(density)}")
    return "\n".join(lines) + "\n"


def _render_pgms(corpus: dict[str, SymbolSequence], width: int) -> dict[str, bytes]:
    square = ifs.IFSConfig(vertex_count=4, width=width)
    triangle = ifs.IFSConfig(vertex_count=3, width=width)
    jobs = {
        "attractor_transition.pgm": ("transition", square),
        "attractor_null_pairs.pgm": ("null_pairs", square),
        "attractor_gap_residues.pgm": ("gap_residues", triangle),
        "attractor_null_triangle.pgm": ("null_triangle", triangle),
    }
    out = {}
    for filename, (name, config) in jobs.items():
        out[filename] = ifs.to_pgm(ifs.chaos_game_render(corpus[name], config))
    return out


def _render_figures(out_dir: Path, corpus: dict[str, SymbolSequence]) -> list[str]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    written = []
    meta = {"Software": "primedyn"}
    ms = np.arange(1, REPORT_M_MAX + 1)

    fig, ax = plt.subplots(figsize=(6, 4))
    for name in ("primes_mod4", "transition", "gap_residues", "logistic_p2", "null_pairs"):
        rates = [r for _, r in entropy.entropy_rate_curve(corpus[name], REPORT_M_MAX, 1.0)]
        ax.plot(ms, rates, marker="o", ms=3, label=name)
    ax.axhline(np.log(2), color="gray", lw=0.8, ls="--")
    ax.set_xlabel("block size m")
    ax.set_ylabel("H_m(1)/m")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_dir / "fig_entropy_rates.png", dpi=150, metadata=meta)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(6, 4))
    for name in ("transition", "gap_residues", "null_pairs"):
        rates = [r for _, r in entropy.entropy_rate_curve(corpus[name], REPORT_M_MAX, 0.0)]
        ax.plot(ms, rates, marker="o", ms=3, label=name)
    ax.plot(ms[1:], np.log(2) * (1 + 1 / ms[1:]), "k:", label="(1+1/m) log 2")
    ax.set_xlabel("block size m")
    ax.set_ylabel("H_m(0)/m")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_dir / "fig_topological_rates.png", dpi=150, metadata=meta)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(6, 4))
    for name in ("primes_mod4", "gap_residues", "logistic_p2"):
        pairs = entropy.spectrum_proxy(corpus[name])
        ax.plot([b for b, _ in pairs], [r for _, r in pairs], marker="o", ms=3, label=name)
    ax.axhline(np.log(2), color="gray", lw=0.8, ls="--")
    ax.set_xlabel("beta")
    ax.set_ylabel("H_10(beta)/10")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_dir / "fig_spectrum_proxy.png", dpi=150, metadata=meta)
    plt.close(fig)

    written.extend(["fig_entropy_rates.png", "fig_topological_rates.png", "fig_spectrum_proxy.png"])
    return written


def report_paper(
    n_primes: int,
    out_dir,
    seed: int = 0,
    width: int = 512,
    cutoff: int = gaptheory.DEFAULT_CUTOFF,
    make_plots: bool = True,
) -> dict:
    """Produce the full artifact set under ``out_dir`` and return the manifest."""
    if n_primes < 10**4:
        raise ValueError(f"report needs n_primes >= 10^4, got {n_primes}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    corpus = _corpus(n_primes, seed)

    files: dict[str, bytes] = {
        "entropy_rates.csv": _entropy_rates_csv(corpus).encode(),
        "spectrum_proxy.csv": _spectrum_csv(corpus).encode(),
        "forbidden_blocks.csv": _forbidden_blocks_csv(corpus["gap_residues"]).encode(),
        "hl_constants.csv": _hl_constants_csv(cutoff).encode(),
        "hl_aux_products.csv": _hl_aux_csv(cutoff).encode(),
        "gap_residue_densities.csv": _densities_csv(corpus["gap_residues"], cutoff).encode(),
        "block_densities.csv": _block_densities_csv(cutoff).encode(),
    }
    files.update(_render_pgms(corpus, width))
    for name, payload in files.items():
        atomic_write_bytes(out / name, payload)

    names = sorted(files)
    if make_plots:
        names += _render_figures(out, corpus)

    artifacts = []
    for name in names:
        payload = (out / name).read_bytes()
        artifacts.append(
            {"name": name, "bytes": len(payload), "sha256": hashlib.sha256(payload).hexdigest()}
        )
    manifest = {
        "config": {
            "n_primes": n_primes,
            "seed": seed,
            "width": width,
            "hl_cutoff": cutoff,
            "plots": make_plots,
        },
        "artifacts": artifacts,
    }
    atomic_write_text(out / "manifest.json", json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest
