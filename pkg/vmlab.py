"""vmlab command line: experiments and one-off queries."""

import functools
import json
import logging

import click

import config
from errors import BudgetExceeded, LabelError, VmlabError
from experiments import ExperimentConfig, experiment_from_config
from graphs import from_graph6, generator, to_graph6
from matroids import BinaryMatroid, count_bases, is_minor, random_matroid
from minors import Verdict, is_k_vm_universal, is_vertex_minor
from ramsey import piv_ramsey_search, vm_ramsey_search
from records import save_record
from reorder import reorder_sequence
from walks import (BPIV, COM, PIV, bipartite_mixing_bound, linf_distance_to_uniform,
                   mixing_bound, point_mass, run_recipe)

EXIT_ERROR = 1
EXIT_BUDGET = 2


def reports_errors(command):
    """Map library errors onto exit codes: 2 for budget, 1 for the rest."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return command(*args, **kwargs)
        except BudgetExceeded as exc:
            click.echo(f"budget exceeded: {exc.message}", err=True)
            ctx.exit(EXIT_BUDGET)
        except VmlabError as exc:
            click.echo(f"error [{exc.code}]: {exc.message}", err=True)
            ctx.exit(EXIT_ERROR)

    return wrapper


def read_graph6(path):
    with open(path) as graph_file:
        return from_graph6(graph_file.readline())


def parse_labels(text):
    return [int(x) for x in text.split(",") if x.strip()] if text else []


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Log progress at INFO level.")
def cli(verbose):
    """Vertex-minor, pivot-minor and binary matroid experiments."""

    logging.basicConfig(level=logging.INFO if verbose else config.LOG_LEVEL,
                        format="%(asctime)s %(name)s %(levelname)s %(message)s")


##############################################################################
# Experiments


@cli.group()
def experiment():
    """Seeded campaigns described by a JSON config."""


@experiment.command("run")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--seed", type=int, default=None, help="Override the config's seed.")
@click.option("--jobs", type=int, default=config.JOBS, show_default=True)
@click.option("--output", default=None, help="Output stem; writes STEM.json and STEM.csv.")
@reports_errors
def experiment_run(config_path, seed, jobs, output):
    cfg = ExperimentConfig.from_json(config_path)
    if seed is not None:
        cfg = ExperimentConfig(cfg.experiment, cfg.params, seed, cfg.output)
    record = experiment_from_config(cfg, jobs)
    output = output or cfg.output
    if output:
        json_path, csv_path = save_record(record, output)
        click.echo(f"wrote {json_path} and {csv_path}")
    click.echo(json.dumps(record.aggregates, indent=2, sort_keys=True))


##############################################################################
# Vertex-minors


@cli.group()
def vm():
    """Vertex-minor queries on graph6 files."""


@vm.command("check")
@click.argument("g_path", type=click.Path(exists=True))
@click.argument("h_path", type=click.Path(exists=True))
@click.option("--labels", default=None, help="Labels of G carrying H's vertices, in order.")
@click.option("--budget", type=int, default=config.MINOR_BUDGET, show_default=True)
@reports_errors
def vm_check(g_path, h_path, labels, budget):
    """Is H a vertex-minor of G?"""

    G, H = read_graph6(g_path), read_graph6(h_path)
    if labels:
        targets = parse_labels(labels)
        if len(targets) != len(H) or len(set(targets)) != len(targets):
            raise LabelError(f"--labels needs {len(H)} distinct labels, got {targets}")
        missing = set(targets) - set(G.labels())
        if missing:
            raise LabelError(f"labels {sorted(missing)} are not vertices of G")
        H = H.relabel(dict(enumerate(targets)), n=G.n)
    witness = is_vertex_minor(G, H, budget)
    if witness is None:
        click.echo("not a vertex-minor")
    else:
        click.echo("vertex-minor")
        click.echo(witness.to_json())


@vm.command("universal")
@click.argument("g_path", type=click.Path(exists=True))
@click.option("--k", type=int, required=True)
@click.option("--budget", type=int, default=config.MINOR_BUDGET, show_default=True)
@reports_errors
def vm_universal(g_path, k, budget):
    """Is G k-vertex-minor universal?"""

    result = is_k_vm_universal(read_graph6(g_path), k, budget)
    click.echo(f"{result.verdict.value} after {result.nodes} nodes")
    if result.verdict is Verdict.NOT_UNIVERSAL:
        U, H = result.witness
        click.echo(f"missing on {list(U)}: {to_graph6(H)}")
    elif result.verdict is Verdict.BUDGET_EXCEEDED:
        click.get_current_context().exit(EXIT_BUDGET)


##############################################################################
# Walks


@cli.group()
def walk():
    """Exact random walks on labeled graphs."""


@walk.command("mix")
@click.option("--k", type=int, default=None, help="Walk on graphs with vertex set [k].")
@click.option("--bipartite", nargs=2, type=int, default=None,
              help="Walk on ordered bipartite graphs with parts of these sizes.")
@click.option("--steps", required=True, help="Comma-separated com, piv or bpiv.")
@reports_errors
def walk_mix(k, bipartite, steps):
    """Print the exact L-infinity distance to uniform after every step."""

    kinds = [s.strip() for s in steps.split(",") if s.strip()]
    if bool(k) == bool(bipartite):
        raise click.UsageError("give exactly one of --k and --bipartite")
    shape = (k,) if k else tuple(bipartite)
    m1 = m2 = 0
    for t, dist in enumerate(run_recipe(point_mass(shape), kinds)[1:], start=1):
        kind = kinds[t - 1]
        m1 += kind == COM
        m2 += kind == PIV
        if kind == BPIV:
            bound = bipartite_mixing_bound(t)
        else:
            bound = mixing_bound(k, m1, m2)
        click.echo(f"{t}\t{kind}\t{linf_distance_to_uniform(dist)}\t{bound}")


##############################################################################
# Ramsey


@cli.group()
def ramsey():
    """Exhaustive vertex-minor and pivot-minor Ramsey numbers."""


def _print_ramsey(name, result):
    click.echo(f"{name}({result.k}) = {result.value}")
    for g in result.certificates:
        click.echo(to_graph6(g))


@ramsey.command("vm")
@click.option("--k", type=int, required=True)
@reports_errors
def ramsey_vm(k):
    _print_ramsey("R_vm", vm_ramsey_search(k))


@ramsey.command("piv")
@click.option("--k", type=int, required=True)
@reports_errors
def ramsey_piv(k):
    _print_ramsey("R_piv", piv_ramsey_search(k))


##############################################################################
# Matroids


@cli.group()
def matroid():
    """Binary matroids stored as JSON."""


def read_matroid(path):
    with open(path) as matroid_file:
        return BinaryMatroid.from_json(matroid_file.read())


@matroid.command("minor")
@click.argument("m_path", type=click.Path(exists=True))
@click.argument("n_path", type=click.Path(exists=True))
@reports_errors
def matroid_minor(m_path, n_path):
    """Is N a minor of M?"""

    click.echo("minor" if is_minor(read_matroid(m_path), read_matroid(n_path)) else "not a minor")


@matroid.command("sample")
@click.option("--r", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--seed", type=int, default=0)
@reports_errors
def matroid_sample(r, n, seed):
    """Uniform rank-r binary matroid on [n]."""

    click.echo(random_matroid(r, n, generator(seed)).to_json())


@matroid.command("bases")
@click.argument("m_path", type=click.Path(exists=True))
@reports_errors
def matroid_bases(m_path):
    click.echo(count_bases(read_matroid(m_path)))


##############################################################################
# Reordering


@cli.group()
def reorder():
    """Rewrite complementation sequences as disjoint steps."""


@reorder.command("run")
@click.argument("g_path", type=click.Path(exists=True))
@click.option("--vhat", required=True, help="Comma-separated labels of the block.")
@click.option("--seq", "seq_text", default="", help="Comma-separated complementation order.")
@reports_errors
def reorder_run(g_path, vhat, seq_text):
    ops = reorder_sequence(read_graph6(g_path), parse_labels(vhat), parse_labels(seq_text))
    click.echo(ops.to_json())


if __name__ == '__main__':
    cli()
