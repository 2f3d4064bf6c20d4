"""Command-line front end: ``scatterclub {analyze,sample,attack,fetch}``.

Every run writes into ``<out>/<dataset>/<command>/<timestamp>/`` with a
``manifest.json`` next to the results. Results are staged in a temporary
directory and only moved into place once the command has succeeded.
"""

from __future__ import annotations

import argparse
import csv
import gzip
import hashlib
import io
import json
import shutil
import sys
import tempfile
import time
import urllib.request
import zipfile
from pathlib import Path

from . import __version__
from .attack import AttackConfig, long_csv, run_attack, summary_csv
from .centrality import betweenness_all, closeness_all, scores_csv, top_k, union_high_centrality
from .cores import core_decompose, core_histogram_csv
from .graph import Graph, ParseError, read_edge_list
from .richclub import build_clusters, cluster_report, scatteredness
from .sampler import SamplerConfig, predict_high_centrality

DEFAULTS = {
    "k": 20,
    "seed_strategy": "random",
    "rng_seed": 0,
    "sample_fraction": 0.10,
    "max_runs": 40,
    "prediction_size": 40,
    "criterion": "1",
    "percentages": "2,4,6,8",
    "trials": 5,
    "betweenness": "per-pair",
    "out": "runs",
    "threads": 1,
}
# attacks start from the high-degree, high-clustering seed by default
COMMAND_DEFAULTS = {"attack": {"seed_strategy": "hd-hcc"}}

INT_KEYS = {"k", "rng_seed", "max_runs", "prediction_size", "trials", "threads"}
FLOAT_KEYS = {"sample_fraction"}

DATASETS = {
    "as20000102": "https://snap.stanford.edu/data/as20000102.txt.gz",
    "as-caida": "https://snap.stanford.edu/data/as-caida20071105.txt.gz",
    "oregon-1": "https://snap.stanford.edu/data/oregon1_010331.txt.gz",
    "oregon-2": "https://snap.stanford.edu/data/oregon2_010331.txt.gz",
    "p2p-gnutella24": "https://snap.stanford.edu/data/p2p-Gnutella24.txt.gz",
    "ca-astroph": "https://snap.stanford.edu/data/ca-AstroPh.txt.gz",
    "ca-condmat": "https://snap.stanford.edu/data/ca-CondMat.txt.gz",
    "cit-hepph": "https://snap.stanford.edu/data/cit-HepPh.txt.gz",
    "cit-hepth": "https://snap.stanford.edu/data/cit-HepTh.txt.gz",
    "email-enron": "https://snap.stanford.edu/data/email-Enron.txt.gz",
    "facebook": "https://snap.stanford.edu/data/facebook_combined.txt.gz",
    "wiki-vote": "https://snap.stanford.edu/data/wiki-Vote.txt.gz",
    "inf-power": "https://nrvis.com/download/data/inf/inf-power.zip",
    "inf-euroroad": "https://nrvis.com/download/data/inf/inf-euroroad.zip",
    "inf-openflights": "https://nrvis.com/download/data/inf/inf-openflights.zip",
    "bio-dmela": "https://nrvis.com/download/data/bio/bio-dmela.zip",
    "bio-grid-fission-yeast": "https://nrvis.com/download/data/bio/bio-grid-fission-yeast.zip",
}


class CommandError(Exception):
    pass


def default_cache() -> Path:
    return Path.home() / ".cache" / "scatterclub"


def load_config_file(path) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment; dashes and underscores are interchangeable."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CommandError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def resolve_options(args: argparse.Namespace) -> dict:
    """Merge built-in defaults, the optional config file, and explicit flags (in that order)."""
    opts = dict(DEFAULTS)
    opts.update(COMMAND_DEFAULTS.get(args.command, {}))
    if getattr(args, "config", None):
        file_opts = load_config_file(args.config)
        unknown = set(file_opts) - set(DEFAULTS) - {"input"}
        if unknown:
            raise CommandError(f"{args.config}: unknown keys {sorted(unknown)}")
        opts.update(file_opts)
    for key in list(DEFAULTS) + ["input"]:
        value = getattr(args, key, None)
        if value is not None:
            opts[key] = value
    try:
        for key in INT_KEYS:
            opts[key] = int(opts[key])
        for key in FLOAT_KEYS:
            opts[key] = float(opts[key])
    except ValueError as exc:
        raise CommandError(f"bad numeric option: {exc}") from None
    opts["seed_strategy"] = str(opts["seed_strategy"]).replace("-", "_")
    opts["betweenness"] = str(opts["betweenness"]).replace("-", "_")
    if opts["seed_strategy"] not in ("random", "hd_hcc"):
        raise CommandError(f"unknown seed strategy {opts['seed_strategy']!r}")
    if opts["betweenness"] not in ("per_pair", "paper_literal"):
        raise CommandError(f"unknown betweenness variant {opts['betweenness']!r}")
    if str(opts["criterion"]) not in ("1", "2"):
        raise CommandError("criterion must be 1 or 2")
    opts["percentages"] = parse_percentages(opts["percentages"])
    if not opts.get("input"):
        raise CommandError("--input is required")
    return opts


def parse_percentages(text) -> list[float]:
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    try:
        return [float(x) / 100.0 for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise CommandError(f"bad --percentages {text!r}; expected e.g. 2,4,6,8") from None


def dataset_name(path) -> str:
    name = Path(path).name
    for suffix in (".gz", ".txt", ".edges", ".tsv", ".csv"):
        if name.endswith(suffix):
            name = name[: -len(suffix)]
    return name or "dataset"


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(x) if isinstance(x, float) else x for x in r])
    return buf.getvalue()


def _snapshot(opts: dict, keys) -> dict:
    return {k: opts[k] for k in keys}


def cmd_analyze(g: Graph, opts: dict) -> tuple[dict[str, str], dict]:
    threads = opts["threads"]
    cc = closeness_all(g, threads)
    bc = betweenness_all(g, opts["betweenness"], threads)
    hc = union_high_centrality(top_k(bc, opts["k"]), top_k(cc, opts["k"]))
    cs = build_clusters(g, hc)
    rep = scatteredness(cs)
    dec = core_decompose(g)
    report = cluster_report(g, cs, rep)
    name = opts["dataset"]
    table_row = {
        "dataset": name,
        "clusters": cs.K,
        "distribution": list(cs.hc_per_cluster),
        "hc_nodes": len(hc),
        "scatteredness": rep.value,
        "betweenness_variant": opts["betweenness"],
        "k": opts["k"],
    }
    hc_json = {
        "k": opts["k"],
        "vertices": [
            {"label": g.labels[v], "source": tag, "core_number": int(dec.core_number[v])}
            for v, tag in hc.sources.items()
        ],
    }
    files = {
        "closeness.csv": scores_csv(g, cc),
        "betweenness.csv": scores_csv(g, bc),
        "cores.csv": core_histogram_csv(dec),
        "high_centrality.json": _json(hc_json),
        "clusters.json": _json(report),
        "scatteredness.json": _json(table_row),
        "table2.csv": _csv(
            ["dataset", "clusters", "distribution", "hc_nodes", "scatteredness"],
            [[name, cs.K, " ".join(map(str, cs.hc_per_cluster)), len(hc), rep.value]],
        ),
        "graph.json": _json({"n": g.n, "m": g.m, "delta_max": dec.delta_max}),
    }
    return files, _snapshot(opts, ["k", "betweenness", "threads"])


def cmd_sample(g: Graph, opts: dict) -> tuple[dict[str, str], dict]:
    if g.n < 10:
        raise CommandError(f"n >= 10 required for sampling (got n={g.n})")
    cfg = SamplerConfig(
        sample_fraction=opts["sample_fraction"],
        max_runs=opts["max_runs"],
        seed_strategy=opts["seed_strategy"],
        rng_seed=opts["rng_seed"],
        prediction_size=opts["prediction_size"],
    )
    threads = opts["threads"]
    truth = union_high_centrality(
        top_k(betweenness_all(g, opts["betweenness"], threads), opts["k"]),
        top_k(closeness_all(g, threads), opts["k"]),
    )
    res = predict_high_centrality(g, cfg, truth)
    files = {
        "prediction.json": _json(res.to_dict(g, truth)),
        "table3.csv": _csv(
            ["dataset", "hcn", "seed_strategy", "clusters_found", "precision", "recall"],
            [[opts["dataset"], len(truth), cfg.seed_strategy, res.clusters_found, res.precision, res.recall]],
        ),
    }
    keys = ["k", "betweenness", "seed_strategy", "rng_seed", "sample_fraction", "max_runs", "prediction_size", "threads"]
    return files, _snapshot(opts, keys)


def cmd_attack(g: Graph, opts: dict) -> tuple[dict[str, str], dict]:
    cfg = AttackConfig(
        criterion=opts["criterion"],
        percentages=tuple(opts["percentages"]),
        trials=opts["trials"],
        seed_strategy=opts["seed_strategy"],
        sample_fraction=opts["sample_fraction"],
        rng_seed=opts["rng_seed"],
        k=opts["k"],
        betweenness_variant=opts["betweenness"],
    )
    report = run_attack(g, cfg, threads=opts["threads"], dataset=opts["dataset"])
    files = {
        "attack.json": _json(report.to_dict(g)),
        "attack_long.csv": long_csv(report),
        "attack_summary.csv": summary_csv(report),
    }
    keys = ["k", "betweenness", "criterion", "percentages", "trials", "seed_strategy", "rng_seed", "sample_fraction", "threads"]
    return files, _snapshot(opts, keys)


COMMANDS = {"analyze": cmd_analyze, "sample": cmd_sample, "attack": cmd_attack}


def run_command(command: str, opts: dict) -> Path:
    """Run one analysis command and return the directory holding its outputs."""
    t0 = time.perf_counter()
    path = Path(opts["input"])
    try:
        g = read_edge_list(path)
    except ParseError:
        raise
    except OSError as exc:
        raise CommandError(f"{path}: {exc.strerror or exc}") from None
    opts = dict(opts, dataset=dataset_name(path))
    files, snapshot = COMMANDS[command](g, opts)
    manifest = {
        "command": command,
        "dataset": opts["dataset"],
        "input": str(path),
        "input_sha256": _sha256(path),
        "n": g.n,
        "m": g.m,
        "config": snapshot,
        "rng_seed": opts["rng_seed"],
        "version": __version__,
        "duration_seconds": round(time.perf_counter() - t0, 3),
        "files": sorted(files),
    }
    base = Path(opts["out"]) / opts["dataset"] / command
    stamp = time.strftime("%Y%m%dT%H%M%S")
    final = base / stamp
    suffix = 1
    while final.exists():
        final = base / f"{stamp}-{suffix}"
        suffix += 1
    base.mkdir(parents=True, exist_ok=True)
    staging = Path(tempfile.mkdtemp(prefix=".staging-", dir=base))
    try:
        for name, content in files.items():
            (staging / name).write_text(content, encoding="utf-8")
        (staging / "manifest.json").write_text(_json(manifest), encoding="utf-8")
        staging.rename(final)
    except BaseException:
        shutil.rmtree(staging, ignore_errors=True)
        raise
    return final


def _extract_edges(raw: bytes, url: str) -> str:
    """Normalize a downloaded file to a plain two-column edge list.

    Matrix Market files lose their size header line; extra columns such as
    weights or timestamps are dropped.
    """
    member = url
    if url.endswith(".gz"):
        text = gzip.decompress(raw).decode("utf-8", errors="replace")
    elif url.endswith(".zip"):
        with zipfile.ZipFile(io.BytesIO(raw)) as zf:
            names = [n for n in zf.namelist() if n.endswith((".mtx", ".edges", ".txt"))]
            if not names:
                raise CommandError(f"{url}: archive holds no edge file")
            member = names[0]
            text = zf.read(member).decode("utf-8", errors="replace")
    else:
        text = raw.decode("utf-8", errors="replace")
    skip_header = member.endswith(".mtx")
    out = []
    for line in text.splitlines():
        s = line.strip()
        if not s:
            continue
        if s.startswith(("#", "%")):
            out.append(s)
            continue
        if skip_header:
            skip_header = False
            continue
        out.append(" ".join(s.replace(",", " ").split()[:2]))
    return "\n".join(out) + "\n"


def cmd_fetch(args) -> Path:
    name = args.name.lower()
    if name not in DATASETS:
        raise CommandError(f"unknown dataset {args.name!r}; known: {', '.join(sorted(DATASETS))}")
    if not args.yes:
        raise CommandError("fetch downloads from the network; rerun with --yes to consent")
    cache = Path(args.cache) if args.cache else default_cache()
    cache.mkdir(parents=True, exist_ok=True)
    target = cache / f"{name}.txt"
    if target.exists() and not args.force:
        return target
    url = DATASETS[name]
    try:
        with urllib.request.urlopen(url, timeout=120) as resp:
            raw = resp.read()
    except OSError as exc:
        raise CommandError(f"download failed for {url}: {exc}") from None
    text = _extract_edges(raw, url)
    tmp = target.with_suffix(".part")
    tmp.write_text(text, encoding="utf-8")
    tmp.replace(target)
    return target


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scatterclub", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def shared(p):
        p.add_argument("--input", help="edge-list file (.txt or .gz)")
        p.add_argument("--config", help="flat key=value file; flags override it")
        p.add_argument("--k", type=int, help="top-k size (default 20)")
        p.add_argument("--seed-strategy", dest="seed_strategy", choices=["random", "hd-hcc"])
        p.add_argument("--rng-seed", dest="rng_seed", type=int)
        p.add_argument("--sample-fraction", dest="sample_fraction", type=float, help="default 0.10")
        p.add_argument("--max-runs", dest="max_runs", type=int, help="default 40")
        p.add_argument("--prediction-size", dest="prediction_size", type=int, help="default 40")
        p.add_argument("--criterion", choices=["1", "2"])
        p.add_argument("--percentages", help="comma list of percents (default 2,4,6,8)")
        p.add_argument("--trials", type=int, help="default 5")
        p.add_argument("--betweenness", choices=["per-pair", "paper-literal"])
        p.add_argument("--out", help="output root (default ./runs)")
        p.add_argument("--threads", type=int, help="worker threads; 1 is bit-reproducible")

    for name, help_ in [
        ("analyze", "centralities, cores, clusters and scatteredness"),
        ("sample", "predict high-centrality vertices by snowball sampling"),
        ("attack", "sampling-based edge-removal attack"),
    ]:
        shared(sub.add_parser(name, help=help_))

    fetch = sub.add_parser("fetch", help="download a named dataset into the cache")
    fetch.add_argument("name", help=f"one of: {', '.join(sorted(DATASETS))}")
    fetch.add_argument("--cache", help=f"cache directory (default {default_cache()})")
    fetch.add_argument("--yes", action="store_true", help="consent to network access")
    fetch.add_argument("--force", action="store_true", help="re-download even if cached")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "fetch":
            print(cmd_fetch(args))
        else:
            print(run_command(args.command, resolve_options(args)))
    except (CommandError, ParseError, ValueError, OSError) as exc:
        msg = " ".join(str(exc).split())
        print(f"scatterclub {args.command}: error: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
