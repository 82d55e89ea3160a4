"""Compare the compiled fixpoint kernels against the pure-Python twins.

Usage:
    python3 benchmarks/bench_backends.py [--sizes 200,800,3200] [--repeats 5]

Builds a family of two-agent structures (four joint actions per state,
pseudo-random targets plus one forward edge so goals stay reachable) and
times two layers per backend:

  kernel      raw until/globally fixpoint calls on prebuilt index tables,
              which is where the backends actually differ
  end-to-end  evaluate() including desugaring and table construction,
              the cost a caller sees on a cold model

The satisfaction sets of both backends are compared on every instance, so
the benchmark doubles as a large-model agreement check.
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from agentmc.checkers import available_backends, evaluate
from agentmc.checkers.backend import get_impl
from agentmc.checkers.compile import CompiledModel
from agentmc.logics import parse_formula
from agentmc.models.structures import ConcurrentGameStructure


def build_model(n_states: int, seed: int = 1) -> ConcurrentGameStructure:
    rng = random.Random(seed)
    states = ["S%d" % i for i in range(n_states)]
    transitions = {}
    for i, s in enumerate(states):
        for vec in (("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")):
            if vec == ("a", "a"):
                target = states[(i + 1) % n_states]
            else:
                target = states[rng.randrange(n_states)]
            transitions[(s, vec)] = target
    label = {s: ("p",) if rng.random() < 0.7 else () for s in states}
    label[states[-1]] = ("p", "goal")
    return ConcurrentGameStructure.build(
        agents=("A0", "A1"),
        states=states,
        initial=(states[0],),
        atoms=("p", "goal"),
        label=label,
        actions={"A0": ("a", "b"), "A1": ("a", "b")},
        transitions=transitions,
    )


def best_time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - started)
    return best


def bench_kernels(g, repeats):
    """Raw fixpoint timings per backend on prebuilt tables."""
    cm = CompiledModel(g)
    view = cm.coalition_view(("A0",))
    phi = cm.atom_mask("p")
    psi = cm.atom_mask("goal")
    true_mask = np.ones(cm.n, dtype=np.uint8)
    out = {}
    for name in available_backends():
        impl = get_impl(name)

        def run_until():
            rank = np.empty(cm.n, dtype=np.int32)
            impl.until_fixpoint(
                view.group_ptr, view.group_state, view.group_target,
                cm.n, true_mask, psi, rank, 0,
            )

        def run_globally():
            z = np.empty(cm.n, dtype=np.uint8)
            impl.globally_fixpoint(
                view.group_ptr, view.group_state, view.group_target,
                cm.n, phi, z,
            )

        out[name] = (
            best_time(run_until, repeats),
            best_time(run_globally, repeats),
        )
    return out


FORMULAS = (
    "<A0> F goal",
    "<A0, A1> G p",
    "[A1] (p U goal)",
)


def bench_end_to_end(g, repeats):
    out = {}
    for name in available_backends():
        sets = []
        total = 0.0
        for text in FORMULAS:
            f = parse_formula(text)
            total += best_time(lambda: evaluate(g, f, backend=name), repeats)
            sets.append(evaluate(g, f, backend=name).sat)
        out[name] = (total, tuple(sets))
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="200,800,3200")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args(argv)
    sizes = [int(x) for x in args.sizes.split(",") if x]

    backends = available_backends()
    if "cython" not in backends:
        print("note: compiled extension not built; timing python only")

    header = "%8s  %-24s" % ("states", "measure")
    for name in backends:
        header += "  %12s" % name
    if len(backends) == 2:
        header += "  %8s" % "speedup"
    print(header)

    def row(n, measure, timings):
        line = "%8d  %-24s" % (n, measure)
        for name in backends:
            line += "  %10.2f ms" % (timings[name] * 1e3)
        if len(backends) == 2:
            cy = timings.get("cython", 0.0)
            line += "  %7.1fx" % (timings["python"] / cy if cy else float("inf"))
        print(line)

    for n in sizes:
        g = build_model(n)
        kern = bench_kernels(g, args.repeats)
        row(n, "kernel: until lfp", {b: kern[b][0] for b in backends})
        row(n, "kernel: globally gfp", {b: kern[b][1] for b in backends})
        ete = bench_end_to_end(g, args.repeats)
        for a in backends:
            for b in backends:
                if ete[a][1] != ete[b][1]:
                    raise SystemExit("backends disagree at %d states" % n)
        row(n, "evaluate(), 3 formulas", {b: ete[b][0] for b in backends})
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
