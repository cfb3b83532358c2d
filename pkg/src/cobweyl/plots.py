"""Figure rendering for CLI reports.

Each report command maps to one PNG summarizing its payload; files are named
deterministically from the command and its main parameters.  Matplotlib is
imported lazily with the Agg backend so library use never requires a display.
"""
from __future__ import annotations

import os


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _slug(value) -> str:
    return str(value).replace("(", "").replace(")", "").replace(",", "_").replace("/", "_")


def render(report: dict, outdir: str) -> list[str]:
    os.makedirs(outdir, exist_ok=True)
    fn = _RENDERERS.get(report.get("command"))
    if fn is None:
        return []
    return fn(report, outdir)


def _save(fig, outdir: str, name: str) -> list[str]:
    path = os.path.join(outdir, name)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    _plt().close(fig)
    return [path]


def _render_lazard(report, outdir):
    result = report["result"]
    if "ranks" not in result:
        return []
    plt = _plt()
    ranks = result["ranks"]
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.bar(range(len(ranks)), ranks, color="#4878d0")
    ax.set_xlabel("degree")
    ax.set_ylabel("lattice rank")
    ax.set_title("coefficient-ring rank per degree (= partitions)")
    ax.set_xticks(range(len(ranks)))
    return _save(fig, outdir, f"lazard_ranks_{len(ranks) - 1}.png")


def _render_fgl(report, outdir):
    result = report["result"]
    coeffs = result.get("coefficients")
    if not coeffs:
        return []
    plt = _plt()
    by_degree: dict[int, int] = {}
    for c in coeffs:
        by_degree[c["i"] + c["j"]] = by_degree.get(c["i"] + c["j"], 0) + 1
    xs = sorted(by_degree)
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.bar(xs, [by_degree[x] for x in xs], color="#6acc64")
    ax.set_xlabel("i + j")
    ax.set_ylabel("nonzero coefficients")
    ax.set_title(f"{result['kind']} law, order {result['order']}")
    return _save(fig, outdir, f"fgl_{result['kind']}_{result['order']}.png")


def _render_weyl(report, outdir):
    result = report["result"]
    plt = _plt()
    gf = result["length_generating_function"]
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.bar(range(len(gf)), gf, color="#d65f5f")
    ax.set_xlabel("length")
    ax.set_ylabel("elements")
    ax.set_title(f"Weyl group of {result['name']}: {result['order']} elements")
    ax.set_xticks(range(len(gf)))
    return _save(fig, outdir, f"weyl_lengths_{_slug(result['name'])}.png")


def _render_torsion(report, outdir):
    result = report["result"]
    plt = _plt()
    rows = result["per_degree"]
    xs = [r["degree"] for r in rows]
    ys = [r["exponent"] for r in rows]
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.bar(xs, ys, color="#956cb4")
    ax.axhline(result["torsion_index"], color="black", linewidth=0.8, linestyle="--")
    ax.set_xlabel("degree")
    ax.set_ylabel("cokernel exponent")
    ax.set_title(f"{result['name']}: torsion index {result['torsion_index']}")
    ax.set_xticks(xs)
    return _save(fig, outdir, f"torsion_{_slug(result['name'])}.png")


def _render_twisted(report, outdir):
    result = report["result"]
    rows = result.get("invariants")
    if not rows:
        return []
    plt = _plt()
    xs = [r["level"] for r in rows]
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.bar(xs, [r["rank"] for r in rows], color="#4878d0", label="invariant rank")
    ax.plot(xs, [r["space_dim"] for r in rows], "k.--", label="space dim")
    for r in rows:
        if r["stable"] is False:
            ax.annotate("?", (r["level"], r["rank"]), ha="center", va="bottom")
    ax.set_xlabel("level (filtration - coefficient degree)")
    ax.set_ylabel("rank")
    ax.set_title(f"{result['group']}, {result['law']} law, order {result['order']}")
    ax.legend(fontsize=8)
    ax.set_xticks(xs)
    return _save(
        fig, outdir, f"twisted_invariants_{_slug(result['group'])}_{result['order']}.png"
    )


def _render_btpair(report, outdir):
    result = report["result"]
    rows = result.get("pairing_matrix")
    if not rows:
        return []
    plt = _plt()
    grid = [[0 if v == "0" else 1 for v in r["values"]] for r in rows]
    fig, ax = plt.subplots(figsize=(4, 4))
    ax.imshow(grid, cmap="Greys", interpolation="nearest")
    ax.set_xlabel("basis classes")
    ax.set_ylabel("dual monomials")
    ax.set_title("pairing support (block triangular)")
    return _save(
        fig, outdir, f"btpair_r{result['rank']}_d{result['max_degree']}.png"
    )


def _render_coinv(report, outdir):
    result = report["result"]
    plt = _plt()
    fig, ax = plt.subplots(figsize=(4, 3))
    bars = ["lattice", "free", "torsion"]
    vals = [result["lattice_rank"], result["free_rank"], len(result["torsion"])]
    ax.bar(bars, vals, color=["#cccccc", "#4878d0", "#d65f5f"])
    ax.set_ylabel("rank / count")
    ax.set_title(f"{result['group']} coinvariants, degree {result['degree']}")
    return _save(
        fig, outdir, f"coinv_{_slug(result['group'])}_{result['degree']}.png"
    )


def _render_duality(report, outdir):
    result = report["result"]
    plt = _plt()
    rows = result["degrees"]
    xs = [r["degree"] for r in rows]
    fig, ax = plt.subplots(figsize=(6, 3))
    colors = []
    for r in rows:
        if r["integral_check"]:
            colors.append("#6acc64")
        elif r["rational_check"]:
            colors.append("#ee854a")
        else:
            colors.append("#d65f5f")
    ax.bar(xs, [r["generator_rank"] for r in rows], color=colors)
    ax.set_xlabel("degree")
    ax.set_ylabel("new generators")
    verdict = "ok" if result["ok"] else "FAILED"
    ax.set_title(
        f"{result['group']}: duality to degree {result['max_degree']} "
        f"(tau={result['torsion_index']}, {verdict})"
    )
    ax.set_xticks(xs)
    return _save(fig, outdir, f"duality_{_slug(result['group'])}_{result['max_degree']}.png")


_RENDERERS = {
    "lazard": _render_lazard,
    "fgl": _render_fgl,
    "weyl": _render_weyl,
    "torsion-index": _render_torsion,
    "twisted": _render_twisted,
    "btpair": _render_btpair,
    "coinv": _render_coinv,
    "verify-duality": _render_duality,
}
