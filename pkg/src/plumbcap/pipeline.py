"""End-to-end obstruction pipeline.

Validates a plumbing graph, builds the dual configuration at one or more
roots, and runs the diagonal-lattice embedding search at the dual rank.
A completed search with no embedding obstructs a rational homology disk
filling; an embedding found means the test is silent (it never certifies
existence); an exhausted budget leaves the question undecided.

When the intersection form has odd determinant the report also carries
the unique Wu class and the mu-bar invariant, which gives the fastest way
to cross-check a run against independently known values.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .dualcap import admissible_roots, build_dual, choose_root
from .embedder import Budget, EmbeddingOutcome, embed_diagonal
from .intlin import determinant, mu_bar, wu_classes
from .plumbing import PlumbingGraph, ValidationFailure, ValidationReport, gram_matrix, validate

OBSTRUCTED = "obstructed"
INCONCLUSIVE = "inconclusive"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class RootResult:
    """Embedding verdict for the dual configuration built at one root."""

    root: int
    verdict: str
    outcome: EmbeddingOutcome

    def to_json_dict(self, include_timings: bool = True) -> dict:
        return {
            "root": self.root,
            "verdict": self.verdict,
            "outcome": self.outcome.to_json_dict(include_timings),
        }


@dataclass(frozen=True)
class ObstructionReport:
    """Everything the obstruction run established about one graph."""

    vertex_count: int
    edge_count: int
    framings: tuple[tuple[int, int], ...]
    validation: ValidationReport
    det_gram: int
    dual_rank: int
    results: tuple[RootResult, ...]
    verdict: str
    wu_support: tuple[int, ...] | None
    mu_bar: int | None
    total_millis: int

    def to_json_dict(self, include_timings: bool = True) -> dict:
        doc: dict = {
            "graph": {
                "vertices": self.vertex_count,
                "edges": self.edge_count,
                "framings": [[v, f] for v, f in self.framings],
            },
            "validation": self.validation.to_json_dict(),
            "gram_determinant": self.det_gram,
            "dual_rank": self.dual_rank,
            "roots": [r.to_json_dict(include_timings) for r in self.results],
            "verdict": self.verdict,
        }
        if self.wu_support is not None:
            doc["wu_support"] = list(self.wu_support)
        if self.mu_bar is not None:
            doc["mu_bar"] = self.mu_bar
        if include_timings:
            doc["total_millis"] = self.total_millis
        return doc


def _root_verdict(outcome: EmbeddingOutcome) -> str:
    if not outcome.completed:
        return UNDECIDED
    return INCONCLUSIVE if outcome.embeddable else OBSTRUCTED


def _combine(verdicts: list[str]) -> str:
    if OBSTRUCTED in verdicts:
        return OBSTRUCTED
    if UNDECIDED in verdicts:
        return UNDECIDED
    return INCONCLUSIVE


def qhd_obstruction(
    graph: PlumbingGraph,
    root: int | None = None,
    all_roots: bool = False,
    budget: Budget | int | None = None,
) -> ObstructionReport:
    """Run the full obstruction test on a validated plumbing graph.

    By default only the canonical root (most strings, lowest id on ties)
    is tried; one failed embedding at any root already obstructs, so
    all_roots mostly serves cross-checking.  Raises ValidationFailure if
    the graph is not a negative definite tree with reduced fundamental
    cycle; the failure carries the validation report.
    """
    report = validate(graph)
    if not report.all_ok:
        raise ValidationFailure(report)
    started = time.monotonic()
    if root is not None:
        roots = [root]
    elif all_roots:
        roots = list(admissible_roots(graph))
    else:
        roots = [choose_root(graph)]

    results = []
    dual_rank = 0
    for r in roots:
        dual = build_dual(graph, r)
        dual_rank = dual.gram.rank
        outcome = embed_diagonal(dual.gram, dual.gram.rank, budget)
        results.append(RootResult(r, _root_verdict(outcome), outcome))

    q = gram_matrix(graph)
    det = determinant(q)
    wu_support = None
    mu = None
    if det % 2 != 0:
        unique = wu_classes(q)[0]
        wu_support = tuple(int(label) for label in unique.support_labels(q))
        mu = mu_bar(q)
    total_millis = int((time.monotonic() - started) * 1000)
    return ObstructionReport(
        vertex_count=len(graph.vertices),
        edge_count=len(graph.edges),
        framings=tuple((v, f) for v, f in graph.vertices),
        validation=report,
        det_gram=det,
        dual_rank=dual_rank,
        results=tuple(results),
        verdict=_combine([r.verdict for r in results]),
        wu_support=wu_support,
        mu_bar=mu,
        total_millis=total_millis,
    )


def render_report(report: ObstructionReport, include_timings: bool = True) -> str:
    """Plain-text rendering of an obstruction report."""
    lines = [
        "graph: %d vertices, %d edges" % (report.vertex_count, report.edge_count),
        "validation: %s" % report.validation.describe(),
        "intersection form determinant: %d" % report.det_gram,
        "dual configuration rank: %d" % report.dual_rank,
    ]
    for result in report.results:
        timing = ""
        if include_timings:
            timing = ", %d ms" % result.outcome.millis
        if result.verdict == OBSTRUCTED:
            text = "no embedding into <-1>^%d (%d nodes%s)" % (
                report.dual_rank, result.outcome.nodes, timing)
        elif result.verdict == INCONCLUSIVE:
            text = "embeds into <-1>^%d (%d nodes%s)" % (
                report.dual_rank, result.outcome.nodes, timing)
        else:
            text = "search budget exhausted (%d nodes%s)" % (
                result.outcome.nodes, timing)
        lines.append("root %d: %s" % (result.root, text))
    if report.verdict == OBSTRUCTED:
        lines.append("verdict: obstructed; no rational homology disk filling exists")
    elif report.verdict == INCONCLUSIVE:
        lines.append("verdict: inconclusive; the embedding test does not obstruct")
    else:
        lines.append("verdict: undecided; raise the search budget")
    if report.wu_support is not None:
        lines.append("wu class support: %s"
                     % (" ".join(str(v) for v in report.wu_support) or "(empty)"))
    if report.mu_bar is not None:
        lines.append("mu-bar: %d" % report.mu_bar)
    return "\n".join(lines)
