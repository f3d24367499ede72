"""Workload synthesis, complexity profiling, cloning and core co-design.

Graphs, profiles and plans are plain dicts in the same JSON layout the
``forge`` command line tool reads and writes.
"""

import json

from . import _forge
from ._forge import ForgeError

__all__ = [
    "ForgeError",
    "builtin_bank",
    "cef_in",
    "cef_out",
    "control_complexity",
    "depth_index",
    "eval_cost",
    "extract_profile",
    "generate",
    "generate_trace",
    "partition_matrix",
    "profile",
    "resolve_path",
    "reuse_distance_histogram",
    "run_cli",
    "run_codesign",
    "sample_control_vector",
    "scan_program",
    "size_mesh",
    "structure_hash",
    "synthesize_clone",
]

ForgeError.kind = property(lambda self: self.args[0])
ForgeError.__str__ = lambda self: f"{self.args[0]}: {self.args[1]}" if len(self.args) == 2 else str(self.args)


def _dump(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def _bank(bank):
    return None if bank is None else _dump(bank)


def builtin_bank():
    return json.loads(_forge.builtin_bank())


def eval_cost(algo, n, bank=None):
    return _forge.eval_cost(algo, n, _bank(bank))


def generate(spec, seed=None, bank=None):
    return json.loads(_forge.generate(_dump(spec), seed, _bank(bank)))


def profile(graph, bank=None):
    return json.loads(_forge.profile(_dump(graph), _bank(bank)))


def extract_profile(graph, bank=None):
    return json.loads(_forge.extract_profile(_dump(graph), _bank(bank)))


def scan_program(text, bank=None):
    return json.loads(_forge.scan_program(text, _bank(bank)))


def synthesize_clone(profile, seed=0, tol=0.05, sources=(), bank=None):
    return json.loads(_forge.synthesize_clone(_dump(profile), seed, tol, [_dump(s) for s in sources], _bank(bank)))


def structure_hash(graph):
    return _forge.structure_hash(_dump(graph))


def cef_in(graph, vertex):
    return _forge.cef_in(_dump(graph), vertex)


def cef_out(graph, vertex):
    return _forge.cef_out(_dump(graph), vertex)


def depth_index(graph, src, dst):
    return _forge.depth_index(_dump(graph), src, dst)


def control_complexity(graph):
    return _forge.control_complexity(_dump(graph))


def resolve_path(probs):
    return _forge.resolve_path(list(probs))


def sample_control_vector(n, dist, seed, stream="control"):
    return _forge.sample_control_vector(n, _dump(dist), seed, stream)


def run_codesign(graph, k_max=10, seed=0, density=1.5, switch_bytes=64, k=None):
    return json.loads(_forge.run_codesign(_dump(graph), k_max, seed, density, switch_bytes, k))


def partition_matrix(rows, density_thresh=1.5):
    return _forge.partition_matrix(rows, density_thresh)


def size_mesh(partitions, rows, switch_bytes):
    keys = ("bytes", "switches", "rows", "cols")
    return [dict(zip(keys, p)) for p in _forge.size_mesh(partitions, rows, switch_bytes)]


def generate_trace(model, seed=0):
    return _forge.generate_trace(_dump(model), seed)


def reuse_distance_histogram(trace, block_words=1):
    return json.loads(_forge.reuse_distance_histogram(list(trace), block_words))


def run_cli(args, algobank=None):
    """Runs one ``forge`` invocation in-process; returns (exit_code, stdout, stderr)."""
    return _forge.run_cli(list(args), algobank)
